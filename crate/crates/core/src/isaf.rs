//! Rule-incomplete and premise-incomplete structured frameworks.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::aspic::{Argument, Evaluation, Formula, Rule, RuleKind, Saf, Theory};
use crate::config::Bounds;
use crate::incomplete::{subset_from_mask, CompletionSet};
use crate::{Error, Result};

/// An element whose presence is uncertain: a rule or a knowledge-base formula.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Uncertain {
    Rule(Rule),
    Premise(Formula),
}

/// Behaviour shared by rule- and premise-incomplete frameworks.
pub trait Isaf {
    /// The maximal completion, which is the framework itself.
    fn saf_max(&self) -> &Saf;

    /// The uncertain elements in canonical order.
    fn uncertain_elements(&self) -> Vec<Uncertain>;

    /// The theory of the completion keeping exactly `kept` uncertain elements.
    fn completion_theory(&self, kept: &BTreeSet<Uncertain>) -> Theory;

    /// The uncertain elements an argument depends on.
    fn uncertain_of(&self, arg: &Argument) -> BTreeSet<Uncertain>;

    /// Lifts [`Isaf::uncertain_of`] to sets by union.
    fn uncertain_of_set<'a>(&self, args: impl IntoIterator<Item = &'a Argument>) -> BTreeSet<Uncertain>
    where
        Self: Sized,
    {
        args.into_iter().flat_map(|a| self.uncertain_of(a)).collect()
    }
}

/// A rul-ISAF: a SAF whose rules are split into certain and uncertain ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RulIsaf {
    saf: Saf,
    uncertain: BTreeSet<Rule>,
}

impl RulIsaf {
    pub fn new(saf: Saf, uncertain: impl IntoIterator<Item = Rule>) -> Result<Self> {
        let uncertain: BTreeSet<Rule> = uncertain.into_iter().collect();
        if let Some(r) = uncertain.iter().find(|r| !saf.theory().rules().contains(*r)) {
            return Err(Error::InvalidTheory(format!(
                "uncertain rule {r} is not a rule of the theory"
            )));
        }
        Ok(RulIsaf { saf, uncertain })
    }

    pub fn saf(&self) -> &Saf {
        &self.saf
    }

    pub fn uncertain_rules(&self) -> &BTreeSet<Rule> {
        &self.uncertain
    }

    pub fn fixed_rules(&self) -> BTreeSet<Rule> {
        self.saf
            .theory()
            .rules()
            .difference(&self.uncertain)
            .cloned()
            .collect()
    }

    fn select(&self, uncertain: bool, kind: RuleKind) -> BTreeSet<Rule> {
        self.saf
            .theory()
            .rules()
            .iter()
            .filter(|r| r.kind() == kind && self.uncertain.contains(*r) == uncertain)
            .cloned()
            .collect()
    }

    /// `R_s^F`.
    pub fn strict_fixed(&self) -> BTreeSet<Rule> {
        self.select(false, RuleKind::Strict)
    }

    /// `R_s^?`.
    pub fn strict_uncertain(&self) -> BTreeSet<Rule> {
        self.select(true, RuleKind::Strict)
    }

    /// `R_d^F`.
    pub fn defeasible_fixed(&self) -> BTreeSet<Rule> {
        self.select(false, RuleKind::Defeasible)
    }

    /// `R_d^?`.
    pub fn defeasible_uncertain(&self) -> BTreeSet<Rule> {
        self.select(true, RuleKind::Defeasible)
    }

    /// `SAF^F`: the completion with only the certain rules.
    pub fn saf_fixed(&self, bounds: &Bounds) -> Result<Saf> {
        Ok(self.saf.restricted(self.completion_theory(&BTreeSet::new()), bounds)?.0)
    }
}

impl Isaf for RulIsaf {
    fn saf_max(&self) -> &Saf {
        &self.saf
    }

    fn uncertain_elements(&self) -> Vec<Uncertain> {
        self.uncertain.iter().cloned().map(Uncertain::Rule).collect()
    }

    fn completion_theory(&self, kept: &BTreeSet<Uncertain>) -> Theory {
        let rules = self
            .saf
            .theory()
            .rules()
            .iter()
            .filter(|r| {
                !self.uncertain.contains(*r) || kept.contains(&Uncertain::Rule((*r).clone()))
            })
            .cloned()
            .collect();
        self.saf.theory().with_rules(rules)
    }

    fn uncertain_of(&self, arg: &Argument) -> BTreeSet<Uncertain> {
        arg.rules()
            .intersection(&self.uncertain)
            .cloned()
            .map(Uncertain::Rule)
            .collect()
    }
}

/// A prem-ISAF: a SAF whose knowledge base is split into certain and
/// uncertain formulas. Axiom or premise status is fixed per formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PremIsaf {
    saf: Saf,
    uncertain: BTreeSet<Formula>,
}

impl PremIsaf {
    pub fn new(saf: Saf, uncertain: impl IntoIterator<Item = Formula>) -> Result<Self> {
        let uncertain: BTreeSet<Formula> = uncertain.into_iter().collect();
        if let Some(phi) = uncertain
            .iter()
            .find(|phi| !saf.theory().in_knowledge_base(phi))
        {
            return Err(Error::InvalidTheory(format!(
                "uncertain formula `{phi}` is not in the knowledge base"
            )));
        }
        Ok(PremIsaf { saf, uncertain })
    }

    pub fn saf(&self) -> &Saf {
        &self.saf
    }

    /// `K^?`.
    pub fn uncertain_formulas(&self) -> &BTreeSet<Formula> {
        &self.uncertain
    }

    fn split(&self, set: &BTreeSet<Formula>, uncertain: bool) -> BTreeSet<Formula> {
        set.iter()
            .filter(|phi| self.uncertain.contains(*phi) == uncertain)
            .cloned()
            .collect()
    }

    /// `K_a^F`.
    pub fn axioms_fixed(&self) -> BTreeSet<Formula> {
        self.split(self.saf.theory().axioms(), false)
    }

    /// `K_a^?`.
    pub fn axioms_uncertain(&self) -> BTreeSet<Formula> {
        self.split(self.saf.theory().axioms(), true)
    }

    /// `K_p^F`.
    pub fn premises_fixed(&self) -> BTreeSet<Formula> {
        self.split(self.saf.theory().premises(), false)
    }

    /// `K_p^?`.
    pub fn premises_uncertain(&self) -> BTreeSet<Formula> {
        self.split(self.saf.theory().premises(), true)
    }

    /// `K^F`.
    pub fn fixed_formulas(&self) -> BTreeSet<Formula> {
        self.saf
            .theory()
            .knowledge_base()
            .difference(&self.uncertain)
            .cloned()
            .collect()
    }

    /// `SAF^F`: the completion with only the certain formulas.
    pub fn saf_fixed(&self, bounds: &Bounds) -> Result<Saf> {
        Ok(self.saf.restricted(self.completion_theory(&BTreeSet::new()), bounds)?.0)
    }

    /// Formulas that are both in the knowledge base and heads of premiseless
    /// rules.
    pub fn repetitions(&self) -> BTreeSet<Formula> {
        let theory = self.saf.theory();
        theory
            .rules()
            .iter()
            .filter(|r| r.is_premiseless() && theory.in_knowledge_base(r.head()))
            .map(|r| r.head().clone())
            .collect()
    }

    pub fn is_tidy(&self) -> bool {
        self.repetitions().is_empty()
    }
}

impl Isaf for PremIsaf {
    fn saf_max(&self) -> &Saf {
        &self.saf
    }

    fn uncertain_elements(&self) -> Vec<Uncertain> {
        self.uncertain
            .iter()
            .cloned()
            .map(Uncertain::Premise)
            .collect()
    }

    fn completion_theory(&self, kept: &BTreeSet<Uncertain>) -> Theory {
        let keep = |phi: &&Formula| {
            !self.uncertain.contains(*phi) || kept.contains(&Uncertain::Premise((*phi).clone()))
        };
        let theory = self.saf.theory();
        theory.with_knowledge_base(
            theory.axioms().iter().filter(keep).cloned().collect(),
            theory.premises().iter().filter(keep).cloned().collect(),
        )
    }

    fn uncertain_of(&self, arg: &Argument) -> BTreeSet<Uncertain> {
        arg.premises()
            .intersection(&self.uncertain)
            .cloned()
            .map(Uncertain::Premise)
            .collect()
    }
}

/// Every structured completion, one per subset of the uncertain elements,
/// in mask order, with its evaluation.
pub fn structured_completions<I: Isaf + Sync>(
    x: &I,
    bounds: &Bounds,
) -> Result<Vec<(Saf, Evaluation)>> {
    let elements = x.uncertain_elements();
    bounds.check_uncertain(elements.len())?;
    x.saf_max().evaluate(bounds)?;
    (0..1u64 << elements.len())
        .into_par_iter()
        .map(|mask| {
            let kept = subset_from_mask(&elements, mask);
            x.saf_max().restricted(x.completion_theory(&kept), bounds)
        })
        .collect()
}

/// The abstract completions: associated AFs of all structured completions,
/// deduplicated.
pub fn completions<I: Isaf + Sync>(x: &I, bounds: &Bounds) -> Result<CompletionSet> {
    Ok(structured_completions(x, bounds)?
        .into_iter()
        .map(|(_, eval)| eval.af())
        .collect())
}

/// Rule-completions of a rul-ISAF as SAFs.
pub fn rule_completions(r: &RulIsaf, bounds: &Bounds) -> Result<Vec<Saf>> {
    Ok(structured_completions(r, bounds)?
        .into_iter()
        .map(|(saf, _)| saf)
        .collect())
}

pub fn completions_rul(r: &RulIsaf, bounds: &Bounds) -> Result<CompletionSet> {
    completions(r, bounds)
}

/// Premise-completions of a prem-ISAF as SAFs.
pub fn premise_completions(p: &PremIsaf, bounds: &Bounds) -> Result<Vec<Saf>> {
    Ok(structured_completions(p, bounds)?
        .into_iter()
        .map(|(saf, _)| saf)
        .collect())
}

pub fn completions_prem(p: &PremIsaf, bounds: &Bounds) -> Result<CompletionSet> {
    completions(p, bounds)
}

fn check_member<I: Isaf>(x: &I, args: &[&Argument]) -> Result<()> {
    let theory = x.saf_max().theory();
    match args.iter().find(|a| !theory.admits(a)) {
        Some(a) => Err(Error::ArgumentNotOfTheory(a.id().to_string())),
        None => Ok(()),
    }
}

/// `R^?(Γ)`: the uncertain rules used by any argument of `args`.
pub fn uncertain_rules_of<'a>(
    r: &RulIsaf,
    args: impl IntoIterator<Item = &'a Argument>,
) -> Result<BTreeSet<Rule>> {
    let args: Vec<&Argument> = args.into_iter().collect();
    check_member(r, &args)?;
    Ok(args
        .iter()
        .flat_map(|a| a.rules().intersection(&r.uncertain).cloned())
        .collect())
}

/// `Prem^?(Γ)`: the uncertain formulas among the premises of `args`.
pub fn uncertain_premises_of<'a>(
    p: &PremIsaf,
    args: impl IntoIterator<Item = &'a Argument>,
) -> Result<BTreeSet<Formula>> {
    let args: Vec<&Argument> = args.into_iter().collect();
    check_member(p, &args)?;
    Ok(args
        .iter()
        .flat_map(|a| a.premises().intersection(&p.uncertain).cloned())
        .collect())
}

/// True iff any two completions agree on the defeats between the arguments
/// they share.
///
/// Checked as: every completion's defeats equal the union of all completions'
/// defeats restricted to its arguments.
pub fn defeat_coherence_check<I: Isaf + Sync>(x: &I, bounds: &Bounds) -> Result<bool> {
    let coms = completions(x, bounds)?;
    let union: BTreeSet<_> = coms
        .iter()
        .flat_map(|af| af.defeats().iter().cloned())
        .collect();
    let coherent = coms.iter().all(|af| {
        union
            .iter()
            .filter(|(a, b)| af.contains(a) && af.contains(b))
            .all(|d| af.defeats().contains(d))
    });
    Ok(coherent)
}
