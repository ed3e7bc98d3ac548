//! Constructive translations between formalisms, each with the bijection on
//! arguments that certifies equivalence of the completion sets.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::af::{AbstractAF, ArgumentId};
use crate::aspic::{generate_arguments, Argument, Formula, Rule, RuleKind, Saf, Theory};
use crate::config::Bounds;
use crate::incomplete::{subset_from_mask, ArgIAF, CompletionSet, DepArgIAF, Dependency};
use crate::isaf::{Isaf, PremIsaf, RulIsaf, Uncertain};
use crate::{Error, Result};

/// An explicit bijection from source arguments to target arguments.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Witness {
    map: BTreeMap<ArgumentId, ArgumentId>,
}

#[derive(Serialize, Deserialize)]
struct WitnessDoc {
    map: Vec<(ArgumentId, ArgumentId)>,
}

impl Witness {
    /// Builds a witness, rejecting repeated sources or targets.
    pub fn new(pairs: impl IntoIterator<Item = (ArgumentId, ArgumentId)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut seen = BTreeSet::new();
        for (src, dst) in pairs {
            if !seen.insert(dst.clone()) {
                return Err(Error::InvalidWitness(format!("`{dst}` is hit twice")));
            }
            if map.insert(src.clone(), dst).is_some() {
                return Err(Error::InvalidWitness(format!("`{src}` is mapped twice")));
            }
        }
        Ok(Witness { map })
    }

    pub fn identity(args: impl IntoIterator<Item = ArgumentId>) -> Self {
        Witness {
            map: args.into_iter().map(|a| (a.clone(), a)).collect(),
        }
    }

    pub fn get(&self, x: &ArgumentId) -> Option<&ArgumentId> {
        self.map.get(x)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&ArgumentId, &ArgumentId)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn domain(&self) -> BTreeSet<ArgumentId> {
        self.map.keys().cloned().collect()
    }

    pub fn codomain(&self) -> BTreeSet<ArgumentId> {
        self.map.values().cloned().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(a, b)| a == b)
    }

    pub fn inverse(&self) -> Witness {
        Witness {
            map: self.map.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }

    /// `then ∘ self`: first this map, then `then`.
    pub fn compose(&self, then: &Witness) -> Result<Witness> {
        if self.codomain() != then.domain() {
            return Err(Error::DomainMismatch(
                "codomain of the first map differs from the domain of the second".into(),
            ));
        }
        Ok(Witness {
            map: self
                .map
                .iter()
                .map(|(a, b)| (a.clone(), then.map[b].clone()))
                .collect(),
        })
    }

    /// The image of a framework, or `None` if some argument is unmapped.
    pub fn map_af(&self, af: &AbstractAF) -> Option<AbstractAF> {
        let args = af
            .args()
            .iter()
            .map(|a| self.map.get(a).cloned())
            .collect::<Option<BTreeSet<_>>>()?;
        let defeats = af
            .defeats()
            .iter()
            .map(|(a, b)| Some((self.map.get(a)?.clone(), self.map.get(b)?.clone())))
            .collect::<Option<BTreeSet<_>>>()?;
        Some(AbstractAF::from_parts_unchecked(args, defeats))
    }

    pub fn map_set(&self, set: &CompletionSet) -> Option<CompletionSet> {
        set.iter().map(|af| self.map_af(af)).collect()
    }

    pub fn to_json(&self) -> String {
        let doc = WitnessDoc {
            map: self
                .map
                .iter()
                .map(|(a, b)| (a.clone(), b.clone()))
                .collect(),
        };
        serde_json::to_string(&doc).expect("witness serializes")
    }

    pub fn from_json(text: &str) -> Result<Witness> {
        let doc: WitnessDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Witness::new(doc.map)
    }
}

fn atom_for(x: &ArgumentId) -> Result<Formula> {
    Formula::new(format!("p_{x}")).map_err(|_| {
        Error::InvalidTheory(format!(
            "argument `{x}` cannot be encoded as a formula token"
        ))
    })
}

/// Language `{p_x, ~p_x}` with contraries (C1) negation and (C2)
/// `p_x ∈ contrary(p_y)` for every defeat `(x, y)`.
fn encoding_theory(iaf: &ArgIAF) -> Result<(BTreeMap<ArgumentId, Formula>, crate::aspic::TheoryBuilder)> {
    let atoms: BTreeMap<ArgumentId, Formula> = iaf
        .all_args()
        .into_iter()
        .map(|x| atom_for(&x).map(|p| (x, p)))
        .collect::<Result<_>>()?;
    let mut b = Theory::builder().close_negation();
    for p in atoms.values() {
        b = b.formula(p.clone());
    }
    for (x, y) in iaf.defeats() {
        b = b.contrary(atoms[x].clone(), atoms[y].clone());
    }
    Ok((atoms, b))
}

/// arg-IAF to rul-ISAF: certain `x` becomes the ordinary premise `p_x`,
/// uncertain `x` the uncertain defeasible rule `⇒ p_x`.
pub fn arg_iaf_to_rul_isaf(iaf: &ArgIAF) -> Result<(RulIsaf, Witness)> {
    let (atoms, mut b) = encoding_theory(iaf)?;
    let mut uncertain = Vec::new();
    let mut pairs = Vec::new();
    for x in iaf.fixed_args() {
        b = b.premise(atoms[x].clone());
        pairs.push((x.clone(), atoms[x].argument_id()));
    }
    for x in iaf.uncertain_args() {
        let rule = Rule::new([], atoms[x].clone(), RuleKind::Defeasible);
        let arg = Argument::inference(rule.clone(), Vec::new())?;
        b = b.rule(rule.clone());
        uncertain.push(rule);
        pairs.push((x.clone(), arg.id().clone()));
    }
    let isaf = RulIsaf::new(Saf::new(b.build()?, []), uncertain)?;
    Ok((isaf, Witness::new(pairs)?))
}

/// arg-IAF to prem-ISAF: every `x` becomes the ordinary premise `p_x`,
/// uncertain exactly when `x` is.
pub fn arg_iaf_to_prem_isaf(iaf: &ArgIAF) -> Result<(PremIsaf, Witness)> {
    let (atoms, mut b) = encoding_theory(iaf)?;
    for p in atoms.values() {
        b = b.premise(p.clone());
    }
    let uncertain = iaf.uncertain_args().iter().map(|x| atoms[x].clone());
    let isaf = PremIsaf::new(Saf::new(b.build()?, []), uncertain)?;
    let pairs = atoms.iter().map(|(x, p)| (x.clone(), p.argument_id()));
    Ok((isaf, Witness::new(pairs)?))
}

/// Which implicative dependencies to emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeltaMode {
    /// `IMPLY(Γ, X)` only for ⊆-minimal `Γ`.
    #[default]
    Minimal,
    /// `IMPLY(Γ, X)` for every non-empty `Γ ⊆ A^?` with the coverage property.
    Full,
}

/// Structured incompleteness to imp-arg-IAF: `A^F` are the arguments of the
/// minimal completion, `A^?` the remaining arguments of the maximal one,
/// defeats those of the maximal completion, and `IMPLY(Γ, X)` whenever the
/// uncertain elements of `X` are among those of `Γ`.
pub fn isaf_to_imp_arg_iaf<I: Isaf + Sync>(
    x: &I,
    mode: DeltaMode,
    bounds: &Bounds,
) -> Result<(DepArgIAF, Witness)> {
    let max = x.saf_max().evaluate(bounds)?;
    let fixed = generate_arguments(&x.completion_theory(&BTreeSet::new()), bounds)?;
    let uncertain: Vec<&Argument> = max
        .arguments
        .values()
        .filter(|a| !fixed.contains_key(a.id()))
        .collect();
    let needs: Vec<BTreeSet<Uncertain>> = uncertain.iter().map(|a| x.uncertain_of(a)).collect();
    let mut deps = BTreeSet::new();
    match mode {
        DeltaMode::Minimal => {
            for (i, target) in needs.iter().enumerate() {
                for gamma in minimal_covers(i, &needs) {
                    deps.insert(Dependency::imply(
                        gamma.iter().map(|&j| uncertain[j].id().clone()),
                        uncertain[i].id().clone(),
                    ));
                }
                debug_assert!(!target.is_empty());
            }
        }
        DeltaMode::Full => {
            bounds.check_uncertain(uncertain.len())?;
            let indices: Vec<usize> = (0..uncertain.len()).collect();
            for mask in 1..1u64 << uncertain.len() {
                let gamma = subset_from_mask(&indices, mask);
                let covered: BTreeSet<&Uncertain> =
                    gamma.iter().flat_map(|&j| needs[j].iter()).collect();
                for (i, need) in needs.iter().enumerate() {
                    if gamma.len() == 1 && gamma.contains(&i) {
                        continue;
                    }
                    if need.iter().all(|u| covered.contains(u)) {
                        deps.insert(Dependency::imply(
                            gamma.iter().map(|&j| uncertain[j].id().clone()),
                            uncertain[i].id().clone(),
                        ));
                    }
                }
            }
        }
    }
    let base = ArgIAF::new(
        fixed.keys().cloned(),
        uncertain.iter().map(|a| a.id().clone()),
        max.defeats.iter().cloned(),
    )?;
    let witness = Witness::identity(max.arguments.keys().cloned());
    Ok((DepArgIAF::new(base, deps)?, witness))
}

/// ⊆-minimal sets of indices other than `target` whose needs jointly cover
/// `needs[target]`.
fn minimal_covers(target: usize, needs: &[BTreeSet<Uncertain>]) -> BTreeSet<BTreeSet<usize>> {
    let goal = &needs[target];
    let parts: Vec<(usize, BTreeSet<&Uncertain>)> = needs
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != target)
        .map(|(j, n)| (j, n.intersection(goal).collect::<BTreeSet<_>>()))
        .filter(|(_, c)| !c.is_empty())
        .collect();
    let mut found = BTreeSet::new();
    let mut chosen = Vec::new();
    extend_cover(goal, &parts, &mut chosen, &mut found);
    found
        .into_iter()
        .filter(|gamma: &BTreeSet<usize>| {
            gamma.iter().all(|&drop| {
                let rest: BTreeSet<&Uncertain> = parts
                    .iter()
                    .filter(|(j, _)| *j != drop && gamma.contains(j))
                    .flat_map(|(_, c)| c.iter().copied())
                    .collect();
                rest.len() < goal.len()
            })
        })
        .collect()
}

fn extend_cover(
    goal: &BTreeSet<Uncertain>,
    parts: &[(usize, BTreeSet<&Uncertain>)],
    chosen: &mut Vec<usize>,
    found: &mut BTreeSet<BTreeSet<usize>>,
) {
    let covered: BTreeSet<&Uncertain> = parts
        .iter()
        .filter(|(j, _)| chosen.contains(j))
        .flat_map(|(_, c)| c.iter().copied())
        .collect();
    let Some(missing) = goal.iter().find(|u| !covered.contains(u)) else {
        found.insert(chosen.iter().copied().collect());
        return;
    };
    for (j, c) in parts {
        if c.contains(missing) && !chosen.contains(j) {
            chosen.push(*j);
            extend_cover(goal, parts, chosen, found);
            chosen.pop();
        }
    }
}

pub fn rul_isaf_to_imp_arg_iaf(
    r: &RulIsaf,
    mode: DeltaMode,
    bounds: &Bounds,
) -> Result<(DepArgIAF, Witness)> {
    isaf_to_imp_arg_iaf(r, mode, bounds)
}

pub fn prem_isaf_to_imp_arg_iaf(
    p: &PremIsaf,
    mode: DeltaMode,
    bounds: &Bounds,
) -> Result<(DepArgIAF, Witness)> {
    isaf_to_imp_arg_iaf(p, mode, bounds)
}

/// Maps every generated argument of `saf` through `tau` and transports the
/// preference along it.
fn transport(
    saf: &Saf,
    tau: impl Fn(&Argument) -> Argument,
    bounds: &Bounds,
) -> Result<(Witness, BTreeSet<(ArgumentId, ArgumentId)>)> {
    let args = saf.evaluate(bounds)?.arguments;
    let image: BTreeMap<ArgumentId, ArgumentId> = args
        .iter()
        .map(|(id, a)| (id.clone(), tau(a).id().clone()))
        .collect();
    let preference = saf
        .preference()
        .iter()
        .map(|(a, b)| (image[a].clone(), image[b].clone()))
        .collect();
    Ok((Witness::new(image)?, preference))
}

/// Makes a prem-ISAF tidy by renaming the heads of premiseless rules that are
/// also in the knowledge base to fresh primed copies.
///
/// A rule whose body mentions such a formula is kept and joined by one
/// variant for every non-empty subset of those body formulas primed, so
/// that it still applies to any mix of premise and premiseless
/// sub-arguments. Variants inherit the name of their rule.
pub fn tidy(p: &PremIsaf, bounds: &Bounds) -> Result<(PremIsaf, Witness)> {
    let rep = p.repetitions();
    let saf = p.saf_max();
    if rep.is_empty() {
        let args = saf.evaluate(bounds)?.arguments;
        return Ok((p.clone(), Witness::identity(args.into_keys())));
    }
    let theory = saf.theory();
    if let Some(phi) = theory.formulas().iter().find(|f| f.is_primed()) {
        return Err(Error::InvalidTheory(format!(
            "formula `{phi}` already uses the reserved prime suffix"
        )));
    }
    let tau_f = |phi: &Formula| {
        if rep.contains(phi) {
            phi.primed()
        } else {
            phi.clone()
        }
    };

    let mut formulas = theory.formulas().clone();
    formulas.extend(rep.iter().map(Formula::primed));
    let mut contraries = theory.contraries().clone();
    for (phi, psi) in theory.contraries() {
        contraries.insert((tau_f(phi), psi.clone()));
        contraries.insert((phi.clone(), tau_f(psi)));
        contraries.insert((tau_f(phi), tau_f(psi)));
    }
    let mut rules = BTreeSet::new();
    let mut naming = BTreeMap::new();
    for rule in theory.rules() {
        let name = theory.naming().get(rule);
        let variants: Vec<Rule> = if rule.is_premiseless() {
            vec![Rule::new([], tau_f(rule.head()), rule.kind())]
        } else {
            let primable: Vec<&Formula> = rule.body().intersection(&rep).collect();
            (0..1u64 << primable.len())
                .map(|mask| {
                    let primed = subset_from_mask(&primable, mask);
                    let body = rule.body().iter().map(|b| {
                        if primed.contains(&b) {
                            b.primed()
                        } else {
                            b.clone()
                        }
                    });
                    Rule::new(body, rule.head().clone(), rule.kind())
                })
                .collect()
        };
        for v in variants {
            if let Some(n) = name {
                naming.insert(v.clone(), n.clone());
            }
            rules.insert(v);
        }
    }
    let tidy_theory = Theory::from_parts(
        formulas,
        contraries,
        rules,
        naming,
        theory.axioms().clone(),
        theory.premises().clone(),
    );

    let tau = |a: &Argument| {
        a.transform(&|phi| Argument::premise(phi.clone()), &|rule, subs| {
            let head = if rule.is_premiseless() {
                tau_f(rule.head())
            } else {
                rule.head().clone()
            };
            Rule::new(subs.iter().map(|s| s.conclusion().clone()), head, rule.kind())
        })
    };
    let (witness, preference) = transport(saf, tau, bounds)?;
    let out = PremIsaf::new(
        Saf::new(tidy_theory, preference),
        p.uncertain_formulas().iter().cloned(),
    )?;
    Ok((out, witness))
}

/// prem-ISAF to rul-ISAF: after tidying, every uncertain axiom `φ` becomes
/// the uncertain strict rule `↠ φ` and every uncertain ordinary premise the
/// uncertain defeasible rule `⇒ φ`.
pub fn prem_isaf_to_rul_isaf(p: &PremIsaf, bounds: &Bounds) -> Result<(RulIsaf, Witness)> {
    let (t, tidy_witness) = tidy(p, bounds)?;
    let theory = t.saf_max().theory();
    let axioms_u = t.axioms_uncertain();
    let premises_u = t.premises_uncertain();
    let mut rules = theory.rules().clone();
    let mut uncertain = Vec::new();
    for (set, kind) in [(&axioms_u, RuleKind::Strict), (&premises_u, RuleKind::Defeasible)] {
        for phi in set {
            let rule = Rule::new([], phi.clone(), kind);
            rules.insert(rule.clone());
            uncertain.push(rule);
        }
    }
    let rul_theory = Theory::from_parts(
        theory.formulas().clone(),
        theory.contraries().clone(),
        rules,
        theory.naming().clone(),
        t.axioms_fixed(),
        t.premises_fixed(),
    );
    let leaf = |phi: &Formula| {
        let kind = if axioms_u.contains(phi) {
            RuleKind::Strict
        } else if premises_u.contains(phi) {
            RuleKind::Defeasible
        } else {
            return Argument::premise(phi.clone());
        };
        Argument::inference(Rule::new([], phi.clone(), kind), Vec::new())
            .expect("premiseless rule application")
    };
    let tau = |a: &Argument| a.transform(&leaf, &|rule, _| rule.clone());
    let (witness, preference) = transport(t.saf_max(), tau, bounds)?;
    let out = RulIsaf::new(Saf::new(rul_theory, preference), uncertain)?;
    Ok((out, tidy_witness.compose(&witness)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::af::id;
    use crate::aspic::{arg_id, formula as f};
    use crate::incomplete::{completions_arg_iaf, completions_dep, is_implicative};
    use crate::isaf::{completions_prem, completions_rul};

    fn example1() -> ArgIAF {
        ArgIAF::from_strs(&["a"], &["b", "c"], &[("b", "a"), ("c", "a")])
    }

    fn certifies(source: &CompletionSet, target: &CompletionSet, w: &Witness) {
        assert_eq!(w.domain(), source.argument_union());
        assert_eq!(w.codomain(), target.argument_union());
        assert_eq!(&w.map_set(source).unwrap(), target);
    }

    #[test]
    fn example1_to_rul() {
        let b = Bounds::default();
        let (r, w) = arg_iaf_to_rul_isaf(&example1()).unwrap();
        let theory = r.saf_max().theory();
        assert_eq!(theory.premises(), &BTreeSet::from([f("p_a")]));
        assert_eq!(
            r.defeasible_uncertain(),
            BTreeSet::from([Rule::defeasible(&[], "p_b"), Rule::defeasible(&[], "p_c")])
        );
        assert!(theory.is_contrary(&f("p_b"), &f("p_a")));
        assert!(theory.is_contrary(&f("p_c"), &f("p_a")));
        assert!(!theory.is_contrary(&f("p_a"), &f("p_b")));
        assert_eq!(w.get(&id("b")), Some(&arg_id("()=d>p_b")));
        let source = completions_arg_iaf(&example1(), &b).unwrap();
        certifies(&source, &completions_rul(&r, &b).unwrap(), &w);
    }

    #[test]
    fn example1_to_prem() {
        let b = Bounds::default();
        let (p, w) = arg_iaf_to_prem_isaf(&example1()).unwrap();
        assert_eq!(p.premises_fixed(), BTreeSet::from([f("p_a")]));
        assert_eq!(p.premises_uncertain(), BTreeSet::from([f("p_b"), f("p_c")]));
        let source = completions_arg_iaf(&example1(), &b).unwrap();
        certifies(&source, &completions_prem(&p, &b).unwrap(), &w);
    }

    #[test]
    fn empty_arg_iaf_translations() {
        let b = Bounds::default();
        let empty = ArgIAF::from_strs(&[], &[], &[]);
        let (p, w) = arg_iaf_to_prem_isaf(&empty).unwrap();
        assert!(w.is_empty());
        assert_eq!(
            completions_prem(&p, &b).unwrap(),
            CompletionSet::from_iter([AbstractAF::empty()])
        );
        let fixed_only = ArgIAF::from_strs(&["a"], &[], &[("a", "a")]);
        let (r, _) = arg_iaf_to_rul_isaf(&fixed_only).unwrap();
        assert!(r.uncertain_rules().is_empty());
        assert_eq!(completions_rul(&r, &b).unwrap().len(), 1);
    }

    #[test]
    fn unencodable_ids_are_rejected() {
        let iaf = ArgIAF::from_strs(&["(x)"], &[], &[]);
        assert_eq!(arg_iaf_to_rul_isaf(&iaf).unwrap_err().code(), "INVALID_THEORY");
    }

    fn thm3() -> RulIsaf {
        let theory = Theory::builder()
            .close_negation()
            .premise(f("p"))
            .rule(Rule::defeasible(&["q"], "r"))
            .rule(Rule::defeasible(&["p"], "q"))
            .build()
            .unwrap();
        RulIsaf::new(Saf::new(theory, []), [Rule::defeasible(&["p"], "q")]).unwrap()
    }

    fn thm7() -> PremIsaf {
        let theory = Theory::builder()
            .close_negation()
            .premise(f("p"))
            .premise(f("q"))
            .rule(Rule::defeasible(&["q"], "r"))
            .build()
            .unwrap();
        PremIsaf::new(Saf::new(theory, []), [f("q")]).unwrap()
    }

    #[test]
    fn thm3_to_imp() {
        let b = Bounds::default();
        let (d, w) = rul_isaf_to_imp_arg_iaf(&thm3(), DeltaMode::Minimal, &b).unwrap();
        assert!(w.is_identity());
        assert!(is_implicative(&d));
        assert_eq!(d.base().fixed_args(), &BTreeSet::from([arg_id("p")]));
        assert_eq!(
            d.base().uncertain_args(),
            &BTreeSet::from([arg_id("(p)=d>q"), arg_id("((p)=d>q)=d>r")])
        );
        assert!(d.base().defeats().is_empty());
        assert_eq!(
            d.dependencies(),
            &BTreeSet::from([
                Dependency::imply([arg_id("(p)=d>q")], arg_id("((p)=d>q)=d>r")),
                Dependency::imply([arg_id("((p)=d>q)=d>r")], arg_id("(p)=d>q")),
            ])
        );
        certifies(
            &completions_rul(&thm3(), &b).unwrap(),
            &completions_dep(&d, &b).unwrap(),
            &w,
        );
    }

    #[test]
    fn thm7_to_imp() {
        let b = Bounds::default();
        let (d, w) = prem_isaf_to_imp_arg_iaf(&thm7(), DeltaMode::Minimal, &b).unwrap();
        assert_eq!(
            d.dependencies(),
            &BTreeSet::from([
                Dependency::imply([arg_id("q")], arg_id("(q)=d>r")),
                Dependency::imply([arg_id("(q)=d>r")], arg_id("q")),
            ])
        );
        certifies(
            &completions_prem(&thm7(), &b).unwrap(),
            &completions_dep(&d, &b).unwrap(),
            &w,
        );
    }

    #[test]
    fn full_delta_agrees() {
        let b = Bounds::default();
        let (min, _) = rul_isaf_to_imp_arg_iaf(&thm3(), DeltaMode::Minimal, &b).unwrap();
        let (full, _) = rul_isaf_to_imp_arg_iaf(&thm3(), DeltaMode::Full, &b).unwrap();
        assert!(full.dependencies().is_superset(min.dependencies()));
        assert_eq!(
            completions_dep(&min, &b).unwrap(),
            completions_dep(&full, &b).unwrap()
        );
    }

    #[test]
    fn no_uncertain_rules_means_no_dependencies() {
        let b = Bounds::default();
        let r = RulIsaf::new(thm3().saf().clone(), []).unwrap();
        let (d, _) = rul_isaf_to_imp_arg_iaf(&r, DeltaMode::Minimal, &b).unwrap();
        assert!(d.base().uncertain_args().is_empty());
        assert!(d.dependencies().is_empty());
    }

    fn non_tidy() -> PremIsaf {
        let theory = Theory::builder()
            .close_negation()
            .premise(f("p"))
            .rule(Rule::defeasible(&[], "p"))
            .build()
            .unwrap();
        PremIsaf::new(Saf::new(theory, []), []).unwrap()
    }

    #[test]
    fn tidy_small_instance() {
        let b = Bounds::default();
        let (t, w) = tidy(&non_tidy(), &b).unwrap();
        assert!(t.is_tidy());
        assert_eq!(t.saf_max().theory().knowledge_base(), BTreeSet::from([f("p")]));
        assert_eq!(
            t.saf_max().theory().rules(),
            &BTreeSet::from([Rule::defeasible(&[], "p'")])
        );
        assert_eq!(w.get(&arg_id("()=d>p")), Some(&arg_id("()=d>p'")));
        assert_eq!(w.get(&arg_id("p")), Some(&arg_id("p")));
        certifies(
            &completions_prem(&non_tidy(), &b).unwrap(),
            &completions_prem(&t, &b).unwrap(),
            &w,
        );
        let (again, w2) = tidy(&t, &b).unwrap();
        assert_eq!(again, t);
        assert!(w2.is_identity());
    }

    #[test]
    fn tidy_keeps_mixed_applications() {
        let b = Bounds::default();
        let theory = Theory::builder()
            .close_negation()
            .premise(f("a"))
            .premise(f("b"))
            .rule(Rule::defeasible(&[], "a"))
            .rule(Rule::strict(&[], "b"))
            .rule(Rule::defeasible(&["a", "b"], "c"))
            .name(Rule::defeasible(&["a", "b"], "c"), f("n"))
            .premise(f("~n"))
            .build()
            .unwrap();
        let p = PremIsaf::new(Saf::new(theory, []), [f("a"), f("~n")]).unwrap();
        let source = completions_prem(&p, &b).unwrap();
        let (t, w) = tidy(&p, &b).unwrap();
        assert!(t.is_tidy());
        certifies(&source, &completions_prem(&t, &b).unwrap(), &w);
        let (r, w) = prem_isaf_to_rul_isaf(&p, &b).unwrap();
        certifies(&source, &completions_rul(&r, &b).unwrap(), &w);
    }

    #[test]
    fn primed_input_is_rejected_when_tidying() {
        let theory = Theory::builder()
            .close_negation()
            .premise(f("p"))
            .premise(f("x'"))
            .rule(Rule::defeasible(&[], "p"))
            .build()
            .unwrap();
        let p = PremIsaf::new(Saf::new(theory, []), []).unwrap();
        assert_eq!(tidy(&p, &Bounds::default()).unwrap_err().code(), "INVALID_THEORY");
    }

    #[test]
    fn thm7_to_rul() {
        let b = Bounds::default();
        let (r, w) = prem_isaf_to_rul_isaf(&thm7(), &b).unwrap();
        let theory = r.saf_max().theory();
        assert_eq!(theory.knowledge_base(), BTreeSet::from([f("p")]));
        assert_eq!(r.defeasible_fixed(), BTreeSet::from([Rule::defeasible(&["q"], "r")]));
        assert_eq!(r.defeasible_uncertain(), BTreeSet::from([Rule::defeasible(&[], "q")]));
        let target = completions_rul(&r, &b).unwrap();
        assert_eq!(
            target,
            CompletionSet::from_iter([
                AbstractAF::from_strs(&["p"], &[]),
                AbstractAF::from_strs(&["p", "()=d>q", "(()=d>q)=d>r"], &[]),
            ])
        );
        certifies(&completions_prem(&thm7(), &b).unwrap(), &target, &w);
    }

    #[test]
    fn prem_without_uncertainty_keeps_rules() {
        let b = Bounds::default();
        let p = PremIsaf::new(thm7().saf().clone(), []).unwrap();
        let (r, w) = prem_isaf_to_rul_isaf(&p, &b).unwrap();
        assert_eq!(r.saf_max().theory().rules(), p.saf_max().theory().rules());
        assert!(r.uncertain_rules().is_empty());
        assert!(w.is_identity());
    }

    #[test]
    fn witness_algebra() {
        let w = Witness::new([(id("a"), id("x")), (id("b"), id("y"))]).unwrap();
        assert_eq!(w.inverse().compose(&w).unwrap(), Witness::identity([id("x"), id("y")]));
        assert!(Witness::new([(id("a"), id("x")), (id("b"), id("x"))]).is_err());
        let round = Witness::from_json(&w.to_json()).unwrap();
        assert_eq!(round, w);
        assert_eq!(w.to_json(), r#"{"map":[["a","x"],["b","y"]]}"#);
        assert!(w.compose(&w).is_err());
    }
}
