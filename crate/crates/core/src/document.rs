//! JSON documents for theories, SAFs and structured incomplete frameworks.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::af::ArgumentId;
use crate::aspic::{Formula, Rule, RuleKind, Saf, Theory};
use crate::isaf::{PremIsaf, RulIsaf};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    #[default]
    Fixed,
    Uncertain,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleDoc {
    #[serde(default)]
    pub body: Vec<Formula>,
    pub head: Formula,
    pub kind: RuleKind,
    #[serde(default)]
    pub status: Status,
    #[serde(default)]
    pub name: Option<Formula>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KbDoc {
    #[serde(default)]
    pub axioms_fixed: Vec<Formula>,
    #[serde(default)]
    pub axioms_uncertain: Vec<Formula>,
    #[serde(default)]
    pub premises_fixed: Vec<Formula>,
    #[serde(default)]
    pub premises_uncertain: Vec<Formula>,
}

/// A theory with preferences and optional uncertainty markers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoryDoc {
    #[serde(default)]
    pub formulas: Vec<Formula>,
    #[serde(default)]
    pub contraries: Vec<(Formula, Formula)>,
    #[serde(default)]
    pub close_negation: bool,
    #[serde(default)]
    pub rules: Vec<RuleDoc>,
    #[serde(default)]
    pub kb: KbDoc,
    #[serde(default)]
    pub preferences: Vec<(ArgumentId, ArgumentId)>,
}

/// A parsed document, classified by the uncertainty it declares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structured {
    Saf(Saf),
    Rul(RulIsaf),
    Prem(PremIsaf),
}

impl TheoryDoc {
    pub fn parse(text: &str) -> Result<TheoryDoc> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes") + "\n"
    }

    fn uncertain_rules(&self) -> Vec<Rule> {
        self.rules
            .iter()
            .filter(|r| r.status == Status::Uncertain)
            .map(RuleDoc::rule)
            .collect()
    }

    fn uncertain_formulas(&self) -> Vec<Formula> {
        self.kb
            .axioms_uncertain
            .iter()
            .chain(&self.kb.premises_uncertain)
            .cloned()
            .collect()
    }

    /// The maximal SAF: every uncertain element included.
    pub fn saf(&self) -> Result<Saf> {
        let mut b = Theory::builder();
        if self.close_negation {
            b = b.close_negation();
        }
        for phi in &self.formulas {
            b = b.formula(phi.clone());
        }
        for (phi, psi) in &self.contraries {
            b = b.contrary(phi.clone(), psi.clone());
        }
        for r in &self.rules {
            let rule = r.rule();
            b = b.rule(rule.clone());
            if let Some(n) = &r.name {
                b = b.name(rule, n.clone());
            }
        }
        for phi in self.kb.axioms_fixed.iter().chain(&self.kb.axioms_uncertain) {
            b = b.axiom(phi.clone());
        }
        for phi in self.kb.premises_fixed.iter().chain(&self.kb.premises_uncertain) {
            b = b.premise(phi.clone());
        }
        Ok(Saf::new(b.build()?, self.preferences.iter().cloned()))
    }

    /// Classifies the document; rule and premise uncertainty may not be mixed.
    pub fn structured(&self) -> Result<Structured> {
        let rules = self.uncertain_rules();
        let formulas = self.uncertain_formulas();
        let saf = self.saf()?;
        match (rules.is_empty(), formulas.is_empty()) {
            (false, false) => Err(Error::MixedUncertainty),
            (false, true) => Ok(Structured::Rul(RulIsaf::new(saf, rules)?)),
            (true, false) => Ok(Structured::Prem(PremIsaf::new(saf, formulas)?)),
            (true, true) => Ok(Structured::Saf(saf)),
        }
    }

    pub fn rul_isaf(&self) -> Result<RulIsaf> {
        if !self.uncertain_formulas().is_empty() {
            return Err(Error::MixedUncertainty);
        }
        RulIsaf::new(self.saf()?, self.uncertain_rules())
    }

    pub fn prem_isaf(&self) -> Result<PremIsaf> {
        if !self.uncertain_rules().is_empty() {
            return Err(Error::MixedUncertainty);
        }
        PremIsaf::new(self.saf()?, self.uncertain_formulas())
    }

    fn from_saf(saf: &Saf, uncertain_rules: &BTreeSet<Rule>, uncertain_kb: &BTreeSet<Formula>) -> TheoryDoc {
        let t = saf.theory();
        let split = |set: &BTreeSet<Formula>, uncertain: bool| -> Vec<Formula> {
            set.iter()
                .filter(|phi| uncertain_kb.contains(*phi) == uncertain)
                .cloned()
                .collect()
        };
        TheoryDoc {
            formulas: t.formulas().iter().cloned().collect(),
            contraries: t.contraries().iter().cloned().collect(),
            close_negation: false,
            rules: t
                .rules()
                .iter()
                .map(|r| RuleDoc {
                    body: r.body().iter().cloned().collect(),
                    head: r.head().clone(),
                    kind: r.kind(),
                    status: if uncertain_rules.contains(r) {
                        Status::Uncertain
                    } else {
                        Status::Fixed
                    },
                    name: t.naming().get(r).cloned(),
                })
                .collect(),
            kb: KbDoc {
                axioms_fixed: split(t.axioms(), false),
                axioms_uncertain: split(t.axioms(), true),
                premises_fixed: split(t.premises(), false),
                premises_uncertain: split(t.premises(), true),
            },
            preferences: saf.preference().iter().cloned().collect(),
        }
    }

    pub fn of_saf(saf: &Saf) -> TheoryDoc {
        TheoryDoc::from_saf(saf, &BTreeSet::new(), &BTreeSet::new())
    }

    pub fn of_rul_isaf(r: &RulIsaf) -> TheoryDoc {
        TheoryDoc::from_saf(r.saf(), r.uncertain_rules(), &BTreeSet::new())
    }

    pub fn of_prem_isaf(p: &PremIsaf) -> TheoryDoc {
        TheoryDoc::from_saf(p.saf(), &BTreeSet::new(), p.uncertain_formulas())
    }
}

impl RuleDoc {
    pub fn rule(&self) -> Rule {
        Rule::new(self.body.iter().cloned(), self.head.clone(), self.kind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trips() {
        let r = fixtures::example4();
        let doc = TheoryDoc::of_rul_isaf(&r);
        let back = TheoryDoc::parse(&doc.to_json()).unwrap();
        assert_eq!(back.rul_isaf().unwrap(), r);
        assert_eq!(back.structured().unwrap(), Structured::Rul(r));

        let p = fixtures::example5();
        let back = TheoryDoc::parse(&TheoryDoc::of_prem_isaf(&p).to_json()).unwrap();
        assert_eq!(back.prem_isaf().unwrap(), p);

        let s = fixtures::example3();
        let back = TheoryDoc::parse(&TheoryDoc::of_saf(&s).to_json()).unwrap();
        assert_eq!(back.structured().unwrap(), Structured::Saf(s));
    }

    #[test]
    fn minimal_document() {
        let doc = TheoryDoc::parse(
            r#"{"close_negation": true,
                "rules": [{"body": ["p"], "head": "q", "kind": "defeasible", "status": "uncertain"}],
                "kb": {"premises_fixed": ["p"]}}"#,
        )
        .unwrap();
        let r = doc.rul_isaf().unwrap();
        assert_eq!(r.uncertain_rules().len(), 1);
        assert!(doc.prem_isaf().is_err());
    }

    #[test]
    fn mixed_uncertainty_rejected() {
        let doc = TheoryDoc::parse(
            r#"{"close_negation": true,
                "rules": [{"head": "q", "kind": "strict", "status": "uncertain"}],
                "kb": {"premises_uncertain": ["p"]}}"#,
        )
        .unwrap();
        assert_eq!(doc.structured().unwrap_err().code(), "MIXED_UNCERTAINTY");
    }

    #[test]
    fn malformed_documents() {
        let err = TheoryDoc::parse("{\"rules\": [{\"head\": \"q\"}]}").unwrap_err();
        assert_eq!(err.code(), "PARSE_ERROR");
        assert!(TheoryDoc::parse(r#"{"bogus": 1}"#).is_err());
        let bad = TheoryDoc::parse(r#"{"formulas": ["a b"]}"#).unwrap_err();
        assert_eq!(bad.code(), "PARSE_ERROR");
        let open = TheoryDoc::parse(r#"{"formulas": ["a"]}"#).unwrap();
        assert_eq!(open.saf().unwrap_err().code(), "INVALID_THEORY");
    }
}
