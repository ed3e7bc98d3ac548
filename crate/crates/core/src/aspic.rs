//! ASPIC+ argumentation theories, structured arguments, attacks and defeats.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::af::{AbstractAF, ArgumentId, Defeat};
use crate::config::Bounds;
use crate::{Error, Result};

/// An opaque formula token. A leading `~` is read as classical negation by
/// [`Formula::negation`] and by negation closure.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Formula(Arc<str>);

impl Formula {
    pub fn new(text: impl AsRef<str>) -> Result<Self> {
        let text = text.as_ref();
        let bad = |c: char| {
            c.is_whitespace()
                || c.is_control()
                || matches!(c, '(' | ')' | ',' | '.' | '"' | '\\' | '[' | ']' | '%')
        };
        if text.is_empty() || text.chars().any(bad) {
            return Err(Error::InvalidIdentifier(text.to_string()));
        }
        Ok(Formula(Arc::from(text)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// `~φ` for `φ`, and `φ` for `~φ`.
    pub fn negation(&self) -> Formula {
        match self.0.strip_prefix('~') {
            Some(rest) if !rest.is_empty() => Formula(Arc::from(rest)),
            _ => Formula(Arc::from(format!("~{}", self.0))),
        }
    }

    /// The fresh copy `φ'`.
    pub fn primed(&self) -> Formula {
        Formula(Arc::from(format!("{}'", self.0)))
    }

    pub fn is_primed(&self) -> bool {
        self.0.contains('\'')
    }

    /// The id of the premise argument consisting of this formula alone.
    pub fn argument_id(&self) -> ArgumentId {
        ArgumentId::new(&*self.0).expect("formula tokens are valid argument ids")
    }
}

/// Panicking constructor for literals in tests and fixtures.
pub fn formula(text: &str) -> Formula {
    Formula::new(text).expect("valid formula literal")
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Formula::new(s).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleKind {
    Strict,
    Defeasible,
}

impl RuleKind {
    fn arrow(self) -> &'static str {
        match self {
            RuleKind::Strict => "=s>",
            RuleKind::Defeasible => "=d>",
        }
    }
}

/// An inference rule `⟨body, head⟩`, strict or defeasible.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    body: BTreeSet<Formula>,
    head: Formula,
    kind: RuleKind,
}

impl Rule {
    pub fn new(body: impl IntoIterator<Item = Formula>, head: Formula, kind: RuleKind) -> Self {
        Rule {
            body: body.into_iter().collect(),
            head,
            kind,
        }
    }

    pub fn strict(body: &[&str], head: &str) -> Self {
        Rule::new(body.iter().map(|b| formula(b)), formula(head), RuleKind::Strict)
    }

    pub fn defeasible(body: &[&str], head: &str) -> Self {
        Rule::new(
            body.iter().map(|b| formula(b)),
            formula(head),
            RuleKind::Defeasible,
        )
    }

    pub fn body(&self) -> &BTreeSet<Formula> {
        &self.body
    }

    pub fn head(&self) -> &Formula {
        &self.head
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn is_defeasible(&self) -> bool {
        self.kind == RuleKind::Defeasible
    }

    pub fn is_premiseless(&self) -> bool {
        self.body.is_empty()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<&str> = self.body.iter().map(Formula::as_str).collect();
        write!(f, "[{}]{}{}", body.join(","), self.kind.arrow(), self.head)
    }
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An argumentation theory `⟨L, ¯, R, 𝔫, K⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    formulas: BTreeSet<Formula>,
    contraries: BTreeSet<(Formula, Formula)>,
    rules: BTreeSet<Rule>,
    naming: BTreeMap<Rule, Formula>,
    axioms: BTreeSet<Formula>,
    premises: BTreeSet<Formula>,
}

/// Collects the parts of a [`Theory`]; [`TheoryBuilder::build`] validates.
#[derive(Debug, Clone, Default)]
pub struct TheoryBuilder {
    formulas: BTreeSet<Formula>,
    contraries: BTreeSet<(Formula, Formula)>,
    close_negation: bool,
    rules: BTreeSet<Rule>,
    naming: BTreeMap<Rule, Formula>,
    axioms: BTreeSet<Formula>,
    premises: BTreeSet<Formula>,
}

impl TheoryBuilder {
    pub fn formula(mut self, phi: Formula) -> Self {
        self.formulas.insert(phi);
        self
    }

    /// Declares `phi ∈ contrary(psi)`.
    pub fn contrary(mut self, phi: Formula, psi: Formula) -> Self {
        self.contraries.insert((phi, psi));
        self
    }

    /// Adds `(φ, ~φ)` and `(~φ, φ)` for every formula of the finished language.
    pub fn close_negation(mut self) -> Self {
        self.close_negation = true;
        self
    }

    pub fn rule(mut self, rule: Rule) -> Self {
        self.rules.insert(rule);
        self
    }

    pub fn name(mut self, rule: Rule, name: Formula) -> Self {
        self.naming.insert(rule, name);
        self
    }

    pub fn axiom(mut self, phi: Formula) -> Self {
        self.axioms.insert(phi);
        self
    }

    pub fn premise(mut self, phi: Formula) -> Self {
        self.premises.insert(phi);
        self
    }

    pub fn build(self) -> Result<Theory> {
        let TheoryBuilder {
            mut formulas,
            mut contraries,
            close_negation,
            rules,
            naming,
            axioms,
            premises,
        } = self;
        if let Some(phi) = axioms.intersection(&premises).next() {
            return Err(Error::InvalidTheory(format!(
                "`{phi}` is both an axiom and an ordinary premise"
            )));
        }
        for (rule, _) in &naming {
            if !rules.contains(rule) {
                return Err(Error::InvalidTheory(format!("named rule {rule} is not a rule")));
            }
            if !rule.is_defeasible() {
                return Err(Error::InvalidTheory(format!(
                    "naming is only defined on defeasible rules, not {rule}"
                )));
            }
        }
        for rule in &rules {
            let mirror = Rule {
                kind: match rule.kind {
                    RuleKind::Strict => RuleKind::Defeasible,
                    RuleKind::Defeasible => RuleKind::Strict,
                },
                ..rule.clone()
            };
            if rules.contains(&mirror) {
                return Err(Error::InvalidTheory(format!(
                    "{} is declared both strict and defeasible",
                    mirror
                )));
            }
            formulas.extend(rule.body.iter().cloned());
            formulas.insert(rule.head.clone());
        }
        formulas.extend(naming.values().cloned());
        formulas.extend(axioms.iter().cloned());
        formulas.extend(premises.iter().cloned());
        for (phi, psi) in &contraries {
            formulas.insert(phi.clone());
            formulas.insert(psi.clone());
        }
        if close_negation {
            let negations: Vec<Formula> = formulas.iter().map(Formula::negation).collect();
            for (phi, neg) in formulas.iter().zip(&negations) {
                contraries.insert((phi.clone(), neg.clone()));
                contraries.insert((neg.clone(), phi.clone()));
            }
            formulas.extend(negations);
        }
        for phi in &formulas {
            let has_contradictory = contraries
                .range((phi.clone(), min_formula())..)
                .take_while(|(x, _)| x == phi)
                .any(|(_, psi)| contraries.contains(&(psi.clone(), phi.clone())));
            if !has_contradictory {
                return Err(Error::InvalidTheory(format!(
                    "formula `{phi}` has no contradictory"
                )));
            }
        }
        Ok(Theory {
            formulas,
            contraries,
            rules,
            naming,
            axioms,
            premises,
        })
    }
}

fn min_formula() -> Formula {
    Formula(Arc::from(""))
}

impl Theory {
    pub fn builder() -> TheoryBuilder {
        TheoryBuilder::default()
    }

    pub fn formulas(&self) -> &BTreeSet<Formula> {
        &self.formulas
    }

    pub fn contraries(&self) -> &BTreeSet<(Formula, Formula)> {
        &self.contraries
    }

    /// True iff `phi ∈ contrary(psi)`.
    pub fn is_contrary(&self, phi: &Formula, psi: &Formula) -> bool {
        self.contraries.contains(&(phi.clone(), psi.clone()))
    }

    pub fn rules(&self) -> &BTreeSet<Rule> {
        &self.rules
    }

    pub fn naming(&self) -> &BTreeMap<Rule, Formula> {
        &self.naming
    }

    pub fn axioms(&self) -> &BTreeSet<Formula> {
        &self.axioms
    }

    pub fn premises(&self) -> &BTreeSet<Formula> {
        &self.premises
    }

    pub fn knowledge_base(&self) -> BTreeSet<Formula> {
        self.axioms.union(&self.premises).cloned().collect()
    }

    pub fn in_knowledge_base(&self, phi: &Formula) -> bool {
        self.axioms.contains(phi) || self.premises.contains(phi)
    }

    /// The same language and contraries with a different rule set; naming is
    /// restricted to the surviving rules.
    pub(crate) fn with_rules(&self, rules: BTreeSet<Rule>) -> Theory {
        let naming = self
            .naming
            .iter()
            .filter(|(r, _)| rules.contains(*r))
            .map(|(r, n)| (r.clone(), n.clone()))
            .collect();
        Theory {
            rules,
            naming,
            ..self.clone()
        }
    }

    /// The same theory over a different knowledge base.
    pub(crate) fn with_knowledge_base(
        &self,
        axioms: BTreeSet<Formula>,
        premises: BTreeSet<Formula>,
    ) -> Theory {
        Theory {
            axioms,
            premises,
            ..self.clone()
        }
    }

    /// Unchecked assembly for constructions whose output is valid by design.
    pub(crate) fn from_parts(
        formulas: BTreeSet<Formula>,
        contraries: BTreeSet<(Formula, Formula)>,
        rules: BTreeSet<Rule>,
        naming: BTreeMap<Rule, Formula>,
        axioms: BTreeSet<Formula>,
        premises: BTreeSet<Formula>,
    ) -> Theory {
        Theory {
            formulas,
            contraries,
            rules,
            naming,
            axioms,
            premises,
        }
    }

    /// Whether `arg` can be built in this theory.
    pub fn admits(&self, arg: &Argument) -> bool {
        match &arg.0.top {
            None => self.in_knowledge_base(&arg.0.conc),
            Some(rule) => self.rules.contains(rule) && arg.0.subs.iter().all(|s| self.admits(s)),
        }
    }
}

struct Node {
    id: ArgumentId,
    conc: Formula,
    top: Option<Rule>,
    subs: Vec<Argument>,
    prem: BTreeSet<Formula>,
    rules: BTreeSet<Rule>,
    depth: usize,
}

/// A finite structured argument: a premise, or an inference from one
/// sub-argument per body formula of its top rule.
///
/// Identity, ordering and hashing go by the canonical serialization: a
/// premise is its formula, an inference is `(` sorted sub-argument ids `)`
/// followed by `=s>` or `=d>` and the head.
#[derive(Clone)]
pub struct Argument(Arc<Node>);

impl Argument {
    pub fn premise(phi: Formula) -> Argument {
        Argument(Arc::new(Node {
            id: phi.argument_id(),
            prem: BTreeSet::from([phi.clone()]),
            conc: phi,
            top: None,
            subs: Vec::new(),
            rules: BTreeSet::new(),
            depth: 0,
        }))
    }

    /// Applies `rule` to sub-arguments concluding exactly its body.
    pub fn inference(rule: Rule, mut subs: Vec<Argument>) -> Result<Argument> {
        subs.sort();
        subs.dedup();
        let concs: BTreeSet<Formula> = subs.iter().map(|s| s.0.conc.clone()).collect();
        if concs != rule.body || subs.len() != rule.body.len() {
            return Err(Error::InvalidTheory(format!(
                "sub-arguments do not match the body of {rule}"
            )));
        }
        let mut key = String::from("(");
        for (i, s) in subs.iter().enumerate() {
            if i > 0 {
                key.push(',');
            }
            key.push_str(s.0.id.as_str());
        }
        key.push(')');
        key.push_str(rule.kind.arrow());
        key.push_str(rule.head.as_str());
        let mut prem = BTreeSet::new();
        let mut rules = BTreeSet::from([rule.clone()]);
        let mut depth = 0;
        for s in &subs {
            prem.extend(s.0.prem.iter().cloned());
            rules.extend(s.0.rules.iter().cloned());
            depth = depth.max(s.0.depth);
        }
        Ok(Argument(Arc::new(Node {
            id: ArgumentId::new(key).expect("serializations are valid ids"),
            conc: rule.head.clone(),
            top: Some(rule),
            subs,
            prem,
            rules,
            depth: depth + 1,
        })))
    }

    pub fn id(&self) -> &ArgumentId {
        &self.0.id
    }

    pub fn conclusion(&self) -> &Formula {
        &self.0.conc
    }

    pub fn top_rule(&self) -> Option<&Rule> {
        self.0.top.as_ref()
    }

    /// Immediate sub-arguments, sorted by id.
    pub fn direct_subs(&self) -> &[Argument] {
        &self.0.subs
    }

    pub fn premises(&self) -> &BTreeSet<Formula> {
        &self.0.prem
    }

    /// `R(A)`: top rules of all sub-arguments.
    pub fn rules(&self) -> &BTreeSet<Rule> {
        &self.0.rules
    }

    pub fn depth(&self) -> usize {
        self.0.depth
    }

    /// `Sub(A)`, including `A` itself.
    pub fn sub_arguments(&self) -> BTreeSet<Argument> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(a) = stack.pop() {
            stack.extend(a.0.subs.iter().cloned());
            out.insert(a);
        }
        out
    }

    pub fn is_premiseless(&self) -> bool {
        self.0.prem.is_empty()
    }

    pub fn is_simple(&self) -> bool {
        self.0.subs.is_empty()
    }

    /// Rebuilds the argument bottom-up, mapping premise leaves through
    /// `leaf` and every top rule through `rule`.
    pub(crate) fn transform(
        &self,
        leaf: &dyn Fn(&Formula) -> Argument,
        rule: &dyn Fn(&Rule, &[Argument]) -> Rule,
    ) -> Argument {
        match &self.0.top {
            None => leaf(&self.0.conc),
            Some(top) => {
                let subs: Vec<Argument> = self
                    .0
                    .subs
                    .iter()
                    .map(|s| s.transform(leaf, rule))
                    .collect();
                let r = rule(top, &subs);
                Argument::inference(r, subs).expect("transform preserves rule bodies")
            }
        }
    }
}

impl PartialEq for Argument {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for Argument {}

impl PartialOrd for Argument {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Argument {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.id.cmp(&other.0.id)
    }
}

impl std::hash::Hash for Argument {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.id.hash(state)
    }
}

impl fmt::Debug for Argument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.id)
    }
}

impl fmt::Display for Argument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.id)
    }
}

/// Generated arguments keyed by canonical id.
pub type ArgumentMap = BTreeMap<ArgumentId, Argument>;

/// The least set of arguments closed under the formation clauses.
///
/// Generation is semi-naive: each round only combines rules with at least one
/// sub-argument produced in the previous round.
pub fn generate_arguments(theory: &Theory, bounds: &Bounds) -> Result<ArgumentMap> {
    let mut all = ArgumentMap::new();
    let mut by_conc: HashMap<Formula, Vec<Argument>> = HashMap::new();
    let mut frontier: Vec<Argument> = theory
        .knowledge_base()
        .into_iter()
        .map(Argument::premise)
        .collect();
    for rule in theory.rules.iter().filter(|r| r.is_premiseless()) {
        frontier.push(Argument::inference(rule.clone(), Vec::new())?);
    }
    let with_body: Vec<&Rule> = theory.rules.iter().filter(|r| !r.is_premiseless()).collect();

    while !frontier.is_empty() {
        let old_len: HashMap<Formula, usize> =
            by_conc.iter().map(|(f, v)| (f.clone(), v.len())).collect();
        for a in frontier.drain(..) {
            if all.len() >= bounds.max_arguments {
                return Err(Error::GenerationLimitExceeded {
                    limit: "max_arguments",
                    detail: format!("more than {} arguments", bounds.max_arguments),
                });
            }
            by_conc.entry(a.0.conc.clone()).or_default().push(a.clone());
            all.insert(a.0.id.clone(), a);
        }
        let empty = Vec::new();
        let split = |phi: &Formula| -> (&[Argument], &[Argument], &[Argument]) {
            let v = by_conc.get(phi).unwrap_or(&empty);
            let k = old_len.get(phi).copied().unwrap_or(0);
            (&v[..k], &v[k..], &v[..])
        };
        let mut next: BTreeMap<ArgumentId, Argument> = BTreeMap::new();
        for rule in &with_body {
            let body: Vec<&Formula> = rule.body.iter().collect();
            for pivot in 0..body.len() {
                if split(body[pivot]).1.is_empty() {
                    continue;
                }
                let choices: Vec<&[Argument]> = body
                    .iter()
                    .enumerate()
                    .map(|(j, phi)| {
                        let (old, new, every) = split(phi);
                        match j.cmp(&pivot) {
                            std::cmp::Ordering::Less => old,
                            std::cmp::Ordering::Equal => new,
                            std::cmp::Ordering::Greater => every,
                        }
                    })
                    .collect();
                if choices.iter().any(|c| c.is_empty()) {
                    continue;
                }
                let mut idx = vec![0usize; choices.len()];
                loop {
                    let subs: Vec<Argument> =
                        idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
                    let arg = Argument::inference((*rule).clone(), subs)?;
                    if arg.depth() > bounds.max_depth {
                        return Err(Error::GenerationLimitExceeded {
                            limit: "max_depth",
                            detail: format!("argument deeper than {}", bounds.max_depth),
                        });
                    }
                    if !all.contains_key(arg.id()) {
                        next.insert(arg.id().clone(), arg);
                        if all.len() + next.len() > bounds.max_arguments {
                            return Err(Error::GenerationLimitExceeded {
                                limit: "max_arguments",
                                detail: format!("more than {} arguments", bounds.max_arguments),
                            });
                        }
                    }
                    let mut pos = 0;
                    loop {
                        if pos == idx.len() {
                            break;
                        }
                        idx[pos] += 1;
                        if idx[pos] < choices[pos].len() {
                            break;
                        }
                        idx[pos] = 0;
                        pos += 1;
                    }
                    if pos == idx.len() {
                        break;
                    }
                }
            }
        }
        frontier = next.into_values().collect();
    }
    Ok(all)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AttackKind {
    Undermine,
    Rebut,
    Undercut,
}

/// One way in which `attacker` attacks `attacked` on the sub-argument `locus`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Attack {
    pub attacker: ArgumentId,
    pub attacked: ArgumentId,
    pub kind: AttackKind,
    pub locus: ArgumentId,
}

/// Attack targets of `b`: the kind, the locus and the formula whose
/// contraries attack it.
fn targets(theory: &Theory, b: &Argument) -> Vec<(AttackKind, ArgumentId, Formula)> {
    let mut out = Vec::new();
    for phi in b.premises().intersection(&theory.premises) {
        out.push((AttackKind::Undermine, phi.argument_id(), phi.clone()));
    }
    for sub in b.sub_arguments() {
        if let Some(rule) = sub.top_rule().filter(|r| r.is_defeasible()) {
            out.push((AttackKind::Rebut, sub.id().clone(), sub.conclusion().clone()));
            if let Some(name) = theory.naming.get(rule) {
                out.push((AttackKind::Undercut, sub.id().clone(), name.clone()));
            }
        }
    }
    out
}

/// All attacks of `a` on `b`.
pub fn attacks(theory: &Theory, a: &Argument, b: &Argument) -> Result<BTreeSet<Attack>> {
    for x in [a, b] {
        if !theory.admits(x) {
            return Err(Error::ArgumentNotOfTheory(x.id().to_string()));
        }
    }
    Ok(targets(theory, b)
        .into_iter()
        .filter(|(_, _, psi)| theory.is_contrary(a.conclusion(), psi))
        .map(|(kind, locus, _)| Attack {
            attacker: a.id().clone(),
            attacked: b.id().clone(),
            kind,
            locus,
        })
        .collect())
}

fn all_attacks(theory: &Theory, args: &ArgumentMap) -> BTreeSet<Attack> {
    let mut contrary_of: HashMap<&Formula, Vec<&Formula>> = HashMap::new();
    for (phi, psi) in &theory.contraries {
        contrary_of.entry(psi).or_default().push(phi);
    }
    let mut by_conc: HashMap<&Formula, Vec<&ArgumentId>> = HashMap::new();
    for a in args.values() {
        by_conc.entry(a.conclusion()).or_default().push(a.id());
    }
    args.values()
        .collect::<Vec<_>>()
        .par_iter()
        .flat_map_iter(|b| {
            let mut found = Vec::new();
            for (kind, locus, psi) in targets(theory, b) {
                for phi in contrary_of.get(&psi).into_iter().flatten() {
                    for attacker in by_conc.get(phi).into_iter().flatten() {
                        found.push(Attack {
                            attacker: (*attacker).clone(),
                            attacked: b.id().clone(),
                            kind,
                            locus: locus.clone(),
                        });
                    }
                }
            }
            found
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// A structured argumentation framework: a theory plus a preference relation
/// `⪯` given on argument ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Saf {
    theory: Theory,
    preference: BTreeSet<(ArgumentId, ArgumentId)>,
}

/// Arguments, attacks and defeats of a SAF.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub arguments: ArgumentMap,
    pub attacks: BTreeSet<Attack>,
    pub defeats: BTreeSet<Defeat>,
}

impl Evaluation {
    pub fn af(&self) -> AbstractAF {
        AbstractAF::from_parts_unchecked(
            self.arguments.keys().cloned().collect(),
            self.defeats.clone(),
        )
    }
}

impl Saf {
    pub fn new(
        theory: Theory,
        preference: impl IntoIterator<Item = (ArgumentId, ArgumentId)>,
    ) -> Self {
        Saf {
            theory,
            preference: preference.into_iter().collect(),
        }
    }

    pub fn theory(&self) -> &Theory {
        &self.theory
    }

    pub fn preference(&self) -> &BTreeSet<(ArgumentId, ArgumentId)> {
        &self.preference
    }

    /// `x ≺ y`.
    pub fn strictly_prefers(&self, x: &ArgumentId, y: &ArgumentId) -> bool {
        self.preference.contains(&(x.clone(), y.clone()))
            && !self.preference.contains(&(y.clone(), x.clone()))
    }

    /// Generates arguments, attacks and defeats. Preferences naming arguments
    /// that cannot be built are an error.
    pub fn evaluate(&self, bounds: &Bounds) -> Result<Evaluation> {
        let arguments = generate_arguments(&self.theory, bounds)?;
        for (x, y) in &self.preference {
            for end in [x, y] {
                if !arguments.contains_key(end) {
                    return Err(Error::PreferenceRefersToUnknownArgument(end.to_string()));
                }
            }
        }
        Ok(self.evaluate_generated(arguments))
    }

    fn evaluate_generated(&self, arguments: ArgumentMap) -> Evaluation {
        let attacks = all_attacks(&self.theory, &arguments);
        let defeats = attacks
            .iter()
            .filter(|at| {
                at.kind == AttackKind::Undercut || !self.strictly_prefers(&at.attacker, &at.locus)
            })
            .map(|at| (at.attacker.clone(), at.attacked.clone()))
            .collect();
        Evaluation {
            arguments,
            attacks,
            defeats,
        }
    }

    /// The SAF over `theory` whose preference is this one restricted to the
    /// arguments `theory` generates, with its evaluation.
    pub(crate) fn restricted(&self, theory: Theory, bounds: &Bounds) -> Result<(Saf, Evaluation)> {
        let arguments = generate_arguments(&theory, bounds)?;
        let preference = self
            .preference
            .iter()
            .filter(|(x, y)| arguments.contains_key(x) && arguments.contains_key(y))
            .cloned()
            .collect();
        let saf = Saf { theory, preference };
        let eval = saf.evaluate_generated(arguments);
        Ok((saf, eval))
    }

    pub fn defeats(&self, bounds: &Bounds) -> Result<BTreeSet<Defeat>> {
        Ok(self.evaluate(bounds)?.defeats)
    }

    /// `AF(SAF)`: nodes are canonical argument ids, edges are defeats.
    pub fn associated_af(&self, bounds: &Bounds) -> Result<AbstractAF> {
        Ok(self.evaluate(bounds)?.af())
    }
}

/// Convenience for `id` values that are argument serializations.
pub fn arg_id(serialization: &str) -> ArgumentId {
    ArgumentId::new(serialization).expect("valid argument serialization")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        formula(s)
    }

    fn example3_theory() -> Theory {
        Theory::builder()
            .close_negation()
            .rule(Rule::strict(&["u"], "~s"))
            .rule(Rule::defeasible(&["p"], "q"))
            .rule(Rule::defeasible(&["w"], "r"))
            .rule(Rule::defeasible(&["s"], "~r"))
            .name(Rule::defeasible(&["p"], "q"), f("r"))
            .axiom(f("p"))
            .axiom(f("u"))
            .premise(f("s"))
            .premise(f("w"))
            .build()
            .unwrap()
    }

    fn example3() -> Saf {
        Saf::new(example3_theory(), [(arg_id("(s)=d>~r"), arg_id("(w)=d>r"))])
    }

    fn ids(names: &[&str]) -> BTreeSet<ArgumentId> {
        names.iter().map(|n| arg_id(n)).collect()
    }

    #[test]
    fn example3_arguments() {
        let args = generate_arguments(&example3_theory(), &Bounds::default()).unwrap();
        let got: BTreeSet<ArgumentId> = args.keys().cloned().collect();
        assert_eq!(
            got,
            ids(&["p", "u", "s", "w", "(u)=s>~s", "(s)=d>~r", "(w)=d>r", "(p)=d>q"])
        );
    }

    #[test]
    fn example3_defeats() {
        let d = example3().defeats(&Bounds::default()).unwrap();
        let expected: BTreeSet<Defeat> = [
            ("(u)=s>~s", "s"),
            ("(u)=s>~s", "(s)=d>~r"),
            ("(w)=d>r", "(s)=d>~r"),
            ("(s)=d>~r", "(p)=d>q"),
        ]
        .iter()
        .map(|(a, b)| (arg_id(a), arg_id(b)))
        .collect();
        assert_eq!(d, expected);
        assert!(!d.contains(&(arg_id("(s)=d>~r"), arg_id("(w)=d>r"))));
    }

    #[test]
    fn example3_attack_kinds() {
        let theory = example3_theory();
        let args = generate_arguments(&theory, &Bounds::default()).unwrap();
        let uns = &args[&arg_id("(u)=s>~s")];
        let snr = &args[&arg_id("(s)=d>~r")];
        let pq = &args[&arg_id("(p)=d>q")];
        let wr = &args[&arg_id("(w)=d>r")];
        let on = attacks(&theory, uns, snr).unwrap();
        assert_eq!(on.len(), 1);
        let only = on.iter().next().unwrap();
        assert_eq!(only.kind, AttackKind::Undermine);
        assert_eq!(only.locus, arg_id("s"));
        let cut = attacks(&theory, snr, pq).unwrap();
        assert_eq!(
            cut.iter().map(|a| a.kind).collect::<Vec<_>>(),
            vec![AttackKind::Undercut]
        );
        let rebut = attacks(&theory, snr, wr).unwrap();
        assert_eq!(
            rebut.iter().map(|a| a.kind).collect::<Vec<_>>(),
            vec![AttackKind::Rebut]
        );
    }

    #[test]
    fn axioms_are_not_underminable() {
        let theory = Theory::builder()
            .close_negation()
            .axiom(f("p"))
            .premise(f("~p"))
            .build()
            .unwrap();
        let p = Argument::premise(f("p"));
        let np = Argument::premise(f("~p"));
        assert!(attacks(&theory, &np, &p).unwrap().is_empty());
        assert_eq!(attacks(&theory, &p, &np).unwrap().len(), 1);
    }

    #[test]
    fn symmetric_premises_defeat_each_other() {
        let theory = Theory::builder()
            .close_negation()
            .premise(f("p"))
            .premise(f("~p"))
            .build()
            .unwrap();
        let d = Saf::new(theory, []).defeats(&Bounds::default()).unwrap();
        assert_eq!(
            d,
            BTreeSet::from([
                (arg_id("p"), arg_id("~p")),
                (arg_id("~p"), arg_id("p"))
            ])
        );
    }

    #[test]
    fn empty_theory_has_no_arguments() {
        let theory = Theory::builder()
            .close_negation()
            .rule(Rule::defeasible(&["a"], "b"))
            .build()
            .unwrap();
        assert!(generate_arguments(&theory, &Bounds::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn chained_rules() {
        let theory = Theory::builder()
            .close_negation()
            .premise(f("p"))
            .rule(Rule::defeasible(&["p"], "q"))
            .rule(Rule::defeasible(&["q"], "r"))
            .build()
            .unwrap();
        let af = Saf::new(theory, []).associated_af(&Bounds::default()).unwrap();
        assert_eq!(af.args(), &ids(&["p", "(p)=d>q", "((p)=d>q)=d>r"]));
        assert!(af.defeats().is_empty());
    }

    #[test]
    fn lone_axiom() {
        let theory = Theory::builder().close_negation().axiom(f("p")).build().unwrap();
        let af = Saf::new(theory, []).associated_af(&Bounds::default()).unwrap();
        assert_eq!(af, AbstractAF::from_strs(&["p"], &[]));
    }

    #[test]
    fn cyclic_rules_hit_a_limit() {
        let theory = Theory::builder()
            .close_negation()
            .premise(f("p"))
            .rule(Rule::defeasible(&["p"], "p"))
            .build()
            .unwrap();
        let err = generate_arguments(&theory, &Bounds::default()).unwrap_err();
        assert_eq!(err.code(), "GENERATION_LIMIT_EXCEEDED");
        let small = Bounds {
            max_arguments: 3,
            ..Bounds::default()
        };
        let err = generate_arguments(&theory, &small).unwrap_err();
        assert!(matches!(
            err,
            Error::GenerationLimitExceeded {
                limit: "max_arguments",
                ..
            }
        ));
    }

    #[test]
    fn multi_premise_combinations() {
        let theory = Theory::builder()
            .close_negation()
            .premise(f("a"))
            .rule(Rule::defeasible(&[], "a"))
            .premise(f("b"))
            .rule(Rule::strict(&["a", "b"], "c"))
            .build()
            .unwrap();
        let args = generate_arguments(&theory, &Bounds::default()).unwrap();
        let got: BTreeSet<ArgumentId> = args.keys().cloned().collect();
        assert_eq!(
            got,
            ids(&["a", "b", "()=d>a", "(a,b)=s>c", "(()=d>a,b)=s>c"])
        );
        let c = &args[&arg_id("(()=d>a,b)=s>c")];
        assert_eq!(c.premises(), &BTreeSet::from([f("b")]));
        assert_eq!(c.rules().len(), 2);
        assert_eq!(c.sub_arguments().len(), 3);
    }

    #[test]
    fn premiseless_and_simple() {
        let theory = Theory::builder()
            .close_negation()
            .rule(Rule::strict(&[], "phi"))
            .rule(Rule::defeasible(&[], "psi"))
            .rule(Rule::defeasible(&["phi", "psi"], "delta"))
            .premise(f("k"))
            .build()
            .unwrap();
        let args = generate_arguments(&theory, &Bounds::default()).unwrap();
        let px = &args[&arg_id("()=d>psi")];
        assert!(px.is_premiseless() && px.is_simple());
        let k = &args[&arg_id("k")];
        assert!(!k.is_premiseless() && k.is_simple());
        let delta = &args[&arg_id("(()=d>psi,()=s>phi)=d>delta")];
        assert!(delta.is_premiseless() && !delta.is_simple());
    }

    #[test]
    fn preferences_must_name_arguments() {
        let saf = Saf::new(example3_theory(), [(arg_id("zz"), arg_id("p"))]);
        let err = saf.evaluate(&Bounds::default()).unwrap_err();
        assert_eq!(err.code(), "PREFERENCE_REFERS_TO_UNKNOWN_ARGUMENT");
    }

    #[test]
    fn foreign_arguments_rejected() {
        let theory = example3_theory();
        let stranger = Argument::premise(f("zz"));
        let p = Argument::premise(f("p"));
        let err = attacks(&theory, &stranger, &p).unwrap_err();
        assert_eq!(err.code(), "ARGUMENT_NOT_OF_THEORY");
    }

    #[test]
    fn theory_validation() {
        assert!(Theory::builder().premise(f("p")).build().is_err());
        assert!(Theory::builder()
            .close_negation()
            .premise(f("p"))
            .axiom(f("p"))
            .build()
            .is_err());
        assert!(Theory::builder()
            .close_negation()
            .rule(Rule::strict(&["a"], "b"))
            .name(Rule::strict(&["a"], "b"), f("n"))
            .build()
            .is_err());
        assert!(Theory::builder()
            .close_negation()
            .rule(Rule::strict(&["a"], "b"))
            .rule(Rule::defeasible(&["a"], "b"))
            .build()
            .is_err());
        assert!(Formula::new("a b").is_err());
        assert!(Formula::new("f(x)").is_err());
        assert_eq!(f("~p").negation(), f("p"));
        assert_eq!(f("p").negation(), f("~p"));
    }
}
