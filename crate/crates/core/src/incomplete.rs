//! Argument-incomplete frameworks, dependencies and completion sets.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::af::{AbstractAF, ArgumentId, Defeat};
use crate::config::Bounds;
use crate::{Error, Result};

/// A canonical, deduplicated set of frameworks.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompletionSet(BTreeSet<AbstractAF>);

impl CompletionSet {
    pub fn new() -> Self {
        CompletionSet::default()
    }

    pub fn insert(&mut self, af: AbstractAF) -> bool {
        self.0.insert(af)
    }

    pub fn contains(&self, af: &AbstractAF) -> bool {
        self.0.contains(af)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &AbstractAF> {
        self.0.iter()
    }

    pub fn members(&self) -> &BTreeSet<AbstractAF> {
        &self.0
    }

    pub fn is_subset(&self, other: &CompletionSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Union of the argument sets of all members.
    pub fn argument_union(&self) -> BTreeSet<ArgumentId> {
        self.0.iter().flat_map(|af| af.args().iter().cloned()).collect()
    }

    pub fn rename(&self, f: impl Fn(&ArgumentId) -> ArgumentId) -> CompletionSet {
        self.0.iter().map(|af| af.rename(&f)).collect()
    }
}

impl FromIterator<AbstractAF> for CompletionSet {
    fn from_iter<I: IntoIterator<Item = AbstractAF>>(iter: I) -> Self {
        CompletionSet(iter.into_iter().collect())
    }
}

impl IntoIterator for CompletionSet {
    type Item = AbstractAF;
    type IntoIter = std::collections::btree_set::IntoIter<AbstractAF>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a CompletionSet {
    type Item = &'a AbstractAF;
    type IntoIter = std::collections::btree_set::Iter<'a, AbstractAF>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// An argument-incomplete framework `⟨A^F, A^?, D⟩`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArgIAF {
    fixed: BTreeSet<ArgumentId>,
    uncertain: BTreeSet<ArgumentId>,
    defeats: BTreeSet<Defeat>,
}

impl ArgIAF {
    pub fn new(
        fixed: impl IntoIterator<Item = ArgumentId>,
        uncertain: impl IntoIterator<Item = ArgumentId>,
        defeats: impl IntoIterator<Item = Defeat>,
    ) -> Result<Self> {
        let fixed: BTreeSet<_> = fixed.into_iter().collect();
        let uncertain: BTreeSet<_> = uncertain.into_iter().collect();
        let defeats: BTreeSet<_> = defeats.into_iter().collect();
        if let Some(both) = fixed.intersection(&uncertain).next() {
            return Err(Error::InvalidFramework(format!(
                "`{both}` is declared both certain and uncertain"
            )));
        }
        for (x, y) in &defeats {
            for end in [x, y] {
                if !fixed.contains(end) && !uncertain.contains(end) {
                    return Err(Error::UndeclaredArgument(end.to_string()));
                }
            }
        }
        Ok(ArgIAF {
            fixed,
            uncertain,
            defeats,
        })
    }

    /// Literal constructor for tests and fixtures. Panics on invalid input.
    pub fn from_strs(fixed: &[&str], uncertain: &[&str], defeats: &[(&str, &str)]) -> Self {
        use crate::af::id;
        ArgIAF::new(
            fixed.iter().map(|a| id(a)),
            uncertain.iter().map(|a| id(a)),
            defeats.iter().map(|(x, y)| (id(x), id(y))),
        )
        .expect("well-formed arg-IAF")
    }

    pub fn fixed_args(&self) -> &BTreeSet<ArgumentId> {
        &self.fixed
    }

    pub fn uncertain_args(&self) -> &BTreeSet<ArgumentId> {
        &self.uncertain
    }

    pub fn defeats(&self) -> &BTreeSet<Defeat> {
        &self.defeats
    }

    pub fn all_args(&self) -> BTreeSet<ArgumentId> {
        self.fixed.union(&self.uncertain).cloned().collect()
    }

    /// The framework with every uncertain argument present.
    pub fn max_af(&self) -> AbstractAF {
        AbstractAF::from_parts_unchecked(self.all_args(), self.defeats.clone())
    }

    /// The completion that keeps exactly the uncertain arguments in `chosen`.
    pub fn completion_for(&self, chosen: &BTreeSet<ArgumentId>) -> AbstractAF {
        let keep: BTreeSet<ArgumentId> = self
            .fixed
            .iter()
            .chain(chosen.iter().filter(|a| self.uncertain.contains(*a)))
            .cloned()
            .collect();
        self.max_af().restrict(&keep)
    }
}

/// Decodes bit `i` of `mask` as membership of the i-th element of `items`.
pub(crate) fn subset_from_mask<T: Clone + Ord>(items: &[T], mask: u64) -> BTreeSet<T> {
    items
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, x)| x.clone())
        .collect()
}

/// All completions of an arg-IAF: one per subset of `A^?`.
pub fn completions_arg_iaf(iaf: &ArgIAF, bounds: &Bounds) -> Result<CompletionSet> {
    completions_filtered(iaf, bounds, |_| true)
}

fn completions_filtered(
    iaf: &ArgIAF,
    bounds: &Bounds,
    keep: impl Fn(&BTreeSet<ArgumentId>) -> bool + Sync,
) -> Result<CompletionSet> {
    let uncertain: Vec<ArgumentId> = iaf.uncertain.iter().cloned().collect();
    bounds.check_uncertain(uncertain.len())?;
    let max = iaf.max_af();
    let afs: Vec<AbstractAF> = (0..1u64 << uncertain.len())
        .into_par_iter()
        .filter_map(|mask| {
            let chosen = subset_from_mask(&uncertain, mask);
            if !keep(&chosen) {
                return None;
            }
            let present: BTreeSet<ArgumentId> = iaf.fixed.iter().cloned().chain(chosen).collect();
            Some(max.restrict(&present))
        })
        .collect();
    Ok(CompletionSet::from_iter(afs))
}

/// A constraint on which uncertain arguments may appear together.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dependency {
    /// All of `premises` present implies some of `conclusions` present.
    ImplyDisj {
        premises: BTreeSet<ArgumentId>,
        conclusions: BTreeSet<ArgumentId>,
    },
    /// At least one member present.
    Or(BTreeSet<ArgumentId>),
    /// Not all members present.
    Nand(BTreeSet<ArgumentId>),
}

impl Dependency {
    /// `IMPLY(premises, conclusion)` with a single consequent.
    pub fn imply(
        premises: impl IntoIterator<Item = ArgumentId>,
        conclusion: ArgumentId,
    ) -> Dependency {
        Dependency::ImplyDisj {
            premises: premises.into_iter().collect(),
            conclusions: BTreeSet::from([conclusion]),
        }
    }

    fn member_sets(&self) -> Vec<&BTreeSet<ArgumentId>> {
        match self {
            Dependency::ImplyDisj {
                premises,
                conclusions,
            } => vec![premises, conclusions],
            Dependency::Or(xs) | Dependency::Nand(xs) => vec![xs],
        }
    }

    pub fn is_implicative(&self) -> bool {
        matches!(self, Dependency::ImplyDisj { conclusions, .. } if conclusions.len() == 1)
    }

    fn validate(&self, uncertain: &BTreeSet<ArgumentId>) -> Result<()> {
        for set in self.member_sets() {
            if set.is_empty() {
                return Err(Error::InvalidDependency(format!(
                    "{self:?} has an empty argument set"
                )));
            }
            if let Some(bad) = set.iter().find(|a| !uncertain.contains(*a)) {
                return Err(Error::InvalidDependency(format!(
                    "`{bad}` is not an uncertain argument"
                )));
            }
        }
        Ok(())
    }
}

/// Whether a completion with argument set `present` satisfies `dep`.
pub fn satisfies(present: &BTreeSet<ArgumentId>, dep: &Dependency) -> bool {
    match dep {
        Dependency::ImplyDisj {
            premises,
            conclusions,
        } => !premises.is_subset(present) || !conclusions.is_disjoint(present),
        Dependency::Or(xs) => !xs.is_disjoint(present),
        Dependency::Nand(xs) => !xs.is_subset(present),
    }
}

/// An arg-IAF together with a set of dependencies.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DepArgIAF {
    base: ArgIAF,
    deps: BTreeSet<Dependency>,
}

impl DepArgIAF {
    pub fn new(base: ArgIAF, deps: impl IntoIterator<Item = Dependency>) -> Result<Self> {
        let deps: BTreeSet<Dependency> = deps.into_iter().collect();
        for d in &deps {
            d.validate(&base.uncertain)?;
        }
        Ok(DepArgIAF { base, deps })
    }

    pub fn without_dependencies(base: ArgIAF) -> Self {
        DepArgIAF {
            base,
            deps: BTreeSet::new(),
        }
    }

    pub fn base(&self) -> &ArgIAF {
        &self.base
    }

    pub fn into_base(self) -> ArgIAF {
        self.base
    }

    pub fn dependencies(&self) -> &BTreeSet<Dependency> {
        &self.deps
    }

    pub fn admits(&self, present: &BTreeSet<ArgumentId>) -> bool {
        self.deps.iter().all(|d| satisfies(present, d))
    }
}

/// Completions of the base framework whose arguments satisfy every dependency.
///
/// Valuations are enumerated by backtracking with unit propagation over the
/// clause form of the dependencies, so only admitted valuations are visited.
/// The number of admitted valuations is bounded by `2^max_uncertain`.
pub fn completions_dep(diaf: &DepArgIAF, bounds: &Bounds) -> Result<CompletionSet> {
    let vars: Vec<ArgumentId> = diaf.base.uncertain.iter().cloned().collect();
    let index: BTreeMap<&ArgumentId, usize> = vars.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let clauses: Vec<Vec<(usize, bool)>> = diaf
        .deps
        .iter()
        .map(|d| match d {
            Dependency::ImplyDisj {
                premises,
                conclusions,
            } => premises
                .iter()
                .map(|a| (index[a], false))
                .chain(conclusions.iter().map(|a| (index[a], true)))
                .collect(),
            Dependency::Or(xs) => xs.iter().map(|a| (index[a], true)).collect(),
            Dependency::Nand(xs) => xs.iter().map(|a| (index[a], false)).collect(),
        })
        .collect();
    let limit = 1u128 << bounds.max_uncertain.min(127);
    let mut search = Models {
        clauses: &clauses,
        value: vec![None; vars.len()],
        found: Vec::new(),
        limit,
    };
    if !search.run() {
        return Err(Error::UncertaintyBoundExceeded {
            actual: vars.len(),
            bound: bounds.max_uncertain,
        });
    }
    let max = diaf.base.max_af();
    let afs: Vec<AbstractAF> = search
        .found
        .into_par_iter()
        .map(|model| {
            let present: BTreeSet<ArgumentId> = diaf
                .base
                .fixed
                .iter()
                .cloned()
                .chain(vars.iter().zip(&model).filter(|(_, v)| **v).map(|(a, _)| a.clone()))
                .collect();
            max.restrict(&present)
        })
        .collect();
    Ok(CompletionSet::from_iter(afs))
}

struct Models<'a> {
    clauses: &'a [Vec<(usize, bool)>],
    value: Vec<Option<bool>>,
    found: Vec<Vec<bool>>,
    limit: u128,
}

impl Models<'_> {
    /// Returns false once more than `limit` models are found.
    fn run(&mut self) -> bool {
        let mut trail = Vec::new();
        let ok = self.propagate(&mut trail);
        let within = !ok || self.branch();
        for v in trail {
            self.value[v] = None;
        }
        within
    }

    fn branch(&mut self) -> bool {
        let Some(v) = self.value.iter().position(Option::is_none) else {
            self.found.push(self.value.iter().map(|x| x.unwrap()).collect());
            return self.found.len() as u128 <= self.limit;
        };
        for choice in [false, true] {
            self.value[v] = Some(choice);
            let within = self.run();
            self.value[v] = None;
            if !within {
                return false;
            }
        }
        true
    }

    /// Assigns forced literals; false on a falsified clause.
    fn propagate(&mut self, trail: &mut Vec<usize>) -> bool {
        loop {
            let mut changed = false;
            for clause in self.clauses {
                let mut open = None;
                let mut open_count = 0;
                let mut satisfied = false;
                for &(v, pos) in clause {
                    match self.value[v] {
                        Some(x) if x == pos => {
                            satisfied = true;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            open_count += 1;
                            open = Some((v, pos));
                        }
                    }
                }
                if satisfied {
                    continue;
                }
                match (open_count, open) {
                    (0, _) => return false,
                    (1, Some((v, pos))) => {
                        self.value[v] = Some(pos);
                        trail.push(v);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }
}

/// True iff every dependency is `IMPLY(X, {y})`.
pub fn is_implicative(diaf: &DepArgIAF) -> bool {
    diaf.deps.iter().all(Dependency::is_implicative)
}

/// Builds dependencies whose completion set is exactly `target`.
///
/// Every excluded valuation of `A^?` contributes the clause negating it:
/// all-positive clauses become `OR`, all-negative ones `NAND` and mixed ones
/// `IMPLY∨(negated, positive)`.
pub fn synthesize_dependencies(
    iaf: &ArgIAF,
    target: &CompletionSet,
    bounds: &Bounds,
) -> Result<BTreeSet<Dependency>> {
    let all = completions_arg_iaf(iaf, bounds)?;
    if let Some(stray) = target.iter().find(|af| !all.contains(af)) {
        return Err(Error::TargetNotSubset(crate::text::serialize_af(stray)));
    }
    let uncertain: Vec<ArgumentId> = iaf.uncertain.iter().cloned().collect();
    let wanted: BTreeSet<BTreeSet<ArgumentId>> = target
        .iter()
        .map(|af| af.args().intersection(&iaf.uncertain).cloned().collect())
        .collect();
    let mut deps = BTreeSet::new();
    for mask in 0..1u64 << uncertain.len() {
        let present = subset_from_mask(&uncertain, mask);
        if wanted.contains(&present) {
            continue;
        }
        let absent: BTreeSet<ArgumentId> = iaf.uncertain.difference(&present).cloned().collect();
        let dep = match (present.is_empty(), absent.is_empty()) {
            (true, true) => return Err(Error::TargetNotExpressible),
            (true, false) => Dependency::Or(absent),
            (false, true) => Dependency::Nand(present),
            (false, false) => Dependency::ImplyDisj {
                premises: present,
                conclusions: absent,
            },
        };
        deps.insert(dep);
    }
    Ok(deps)
}

/// Greedily simplifies dependencies while keeping the completion set.
///
/// Each clause in turn has single arguments removed from it where possible,
/// then clauses that have become redundant are dropped.
pub fn minimize_dependencies(
    iaf: &ArgIAF,
    deps: &BTreeSet<Dependency>,
    bounds: &Bounds,
) -> Result<BTreeSet<Dependency>> {
    let admitted = |set: &BTreeSet<Dependency>| -> Result<CompletionSet> {
        completions_dep(&DepArgIAF::new(iaf.clone(), set.iter().cloned())?, bounds)
    };
    let target = admitted(deps)?;
    let mut kept = deps.clone();
    for d in deps {
        let mut current = d.clone();
        loop {
            let shorter = weakenings(&current).into_iter().find_map(|w| {
                let mut trial = kept.clone();
                trial.remove(&current);
                trial.insert(w.clone());
                match admitted(&trial) {
                    Ok(c) if c == target => Some(Ok((w, trial))),
                    Ok(_) => None,
                    Err(e) => Some(Err(e)),
                }
            });
            match shorter.transpose()? {
                Some((w, trial)) => {
                    kept = trial;
                    current = w;
                }
                None => break,
            }
        }
    }
    for d in kept.clone() {
        let mut trial = kept.clone();
        trial.remove(&d);
        if admitted(&trial)? == target {
            kept = trial;
        }
    }
    Ok(kept)
}

/// Clauses obtained from `dep` by removing one argument.
fn weakenings(dep: &Dependency) -> Vec<Dependency> {
    let without = |set: &BTreeSet<ArgumentId>, x: &ArgumentId| -> BTreeSet<ArgumentId> {
        set.iter().filter(|y| *y != x).cloned().collect()
    };
    let mut out = Vec::new();
    match dep {
        Dependency::ImplyDisj {
            premises,
            conclusions,
        } => {
            for x in premises {
                let rest = without(premises, x);
                out.push(if rest.is_empty() {
                    Dependency::Or(conclusions.clone())
                } else {
                    Dependency::ImplyDisj {
                        premises: rest,
                        conclusions: conclusions.clone(),
                    }
                });
            }
            for x in conclusions {
                let rest = without(conclusions, x);
                out.push(if rest.is_empty() {
                    Dependency::Nand(premises.clone())
                } else {
                    Dependency::ImplyDisj {
                        premises: premises.clone(),
                        conclusions: rest,
                    }
                });
            }
        }
        Dependency::Or(xs) if xs.len() > 1 => {
            out.extend(xs.iter().map(|x| Dependency::Or(without(xs, x))));
        }
        Dependency::Nand(xs) if xs.len() > 1 => {
            out.extend(xs.iter().map(|x| Dependency::Nand(without(xs, x))));
        }
        _ => {}
    }
    out
}
