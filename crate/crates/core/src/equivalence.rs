//! Completion-set equivalence: one global bijection on arguments mapping one
//! set of frameworks exactly onto another.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::af::{AbstractAF, ArgumentId};
use crate::config::Bounds;
use crate::incomplete::{completions_arg_iaf, ArgIAF, CompletionSet};
use crate::translate::Witness;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equivalent,
    NotEquivalent,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub prunes: u64,
}

impl SearchStats {
    fn add(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        self.prunes += other.prunes;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceResult {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub stats: SearchStats,
}

impl EquivalenceResult {
    pub fn is_equivalent(&self) -> bool {
        self.verdict == Verdict::Equivalent
    }

    fn negative(stats: SearchStats) -> Self {
        EquivalenceResult {
            verdict: Verdict::NotEquivalent,
            witness: None,
            stats,
        }
    }

    pub fn to_json(&self) -> String {
        let witness = self.witness.as_ref().map(|w| {
            serde_json::from_str::<serde_json::Value>(&w.to_json()).expect("witness json")
        });
        serde_json::json!({
            "verdict": self.verdict,
            "witness": witness,
            "search_stats": self.stats,
        })
        .to_string()
    }
}

/// How [`equivalent_with`] searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Only the identity map is considered.
    pub identity_only: bool,
    /// Explore top-level branches in parallel.
    pub parallel: bool,
    /// Disable signature and partial-projection pruning.
    pub unpruned: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            identity_only: false,
            parallel: true,
            unpruned: false,
        }
    }
}

/// Whether `w` maps `s` exactly onto `t`.
pub fn check_witness(s: &CompletionSet, t: &CompletionSet, w: &Witness) -> Result<bool> {
    if w.domain() != s.argument_union() {
        return Err(Error::DomainMismatch(
            "witness domain differs from the arguments of the source set".into(),
        ));
    }
    if w.codomain() != t.argument_union() {
        return Err(Error::DomainMismatch(
            "witness codomain differs from the arguments of the target set".into(),
        ));
    }
    Ok(w.map_set(s).as_ref() == Some(t))
}

pub fn equivalent(s: &CompletionSet, t: &CompletionSet, bounds: &Bounds) -> Result<EquivalenceResult> {
    equivalent_with(s, t, bounds, SearchOptions::default())
}

/// Searches for a bijection mapping `s` onto `t`.
///
/// The first witness in the order of candidate targets (by signature, then
/// id) is returned regardless of parallelism.
pub fn equivalent_with(
    s: &CompletionSet,
    t: &CompletionSet,
    bounds: &Bounds,
    options: SearchOptions,
) -> Result<EquivalenceResult> {
    let mut stats = SearchStats::default();
    let (su, tu) = (s.argument_union(), t.argument_union());
    if s.len() != t.len() || su.len() != tu.len() {
        stats.prunes += 1;
        return Ok(EquivalenceResult::negative(stats));
    }
    if options.identity_only {
        stats.nodes += 1;
        return Ok(if s == t {
            EquivalenceResult {
                verdict: Verdict::Equivalent,
                witness: Some(Witness::identity(su)),
                stats,
            }
        } else {
            EquivalenceResult::negative(stats)
        });
    }
    let bound = bounds.max_search_args.min(64);
    if su.len() > bound {
        return Err(Error::SearchBoundExceeded {
            actual: su.len(),
            bound,
        });
    }

    let left = Indexed::new(s, su);
    let right = Indexed::new(t, tu);
    let (lsig, rsig) = (left.signatures(), right.signatures());
    let classes = |sig: &[Signature]| {
        let mut v = sig.to_vec();
        v.sort();
        v
    };
    if !options.unpruned && classes(&lsig) != classes(&rsig) {
        stats.prunes += 1;
        return Ok(EquivalenceResult::negative(stats));
    }

    let n = left.names.len();
    let class_size = |x: usize| rsig.iter().filter(|s| **s == lsig[x]).count();
    let mut order: Vec<usize> = (0..n).collect();
    if !options.unpruned {
        order.sort_by_key(|&x| (class_size(x), x));
    }
    let mut candidates: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            (0..n)
                .filter(|&y| options.unpruned || rsig[y] == lsig[x])
                .collect()
        })
        .collect();
    for c in &mut candidates {
        c.sort_by(|&a, &b| rsig[a].cmp(&rsig[b]).then(a.cmp(&b)));
    }
    let search = Search {
        left: &left,
        right: &right,
        order: &order,
        candidates: &candidates,
        prune: !options.unpruned,
    };

    let found = if n == 0 {
        stats.nodes += 1;
        Some(Vec::new())
    } else {
        let first = order[0];
        let run = |y: usize| {
            let mut st = SearchStats::default();
            let mut map = vec![None; n];
            let mut used = vec![false; n];
            let hit = search.assign(first, y, &mut map, &mut used, 0, &mut st);
            (hit, st)
        };
        let branches: Vec<(Option<Vec<usize>>, SearchStats)> = if options.parallel {
            candidates[first].par_iter().map(|&y| run(y)).collect()
        } else {
            let mut out = Vec::new();
            for &y in &candidates[first] {
                let r = run(y);
                let done = r.0.is_some();
                out.push(r);
                if done {
                    break;
                }
            }
            out
        };
        let mut hit = None;
        for (h, st) in branches {
            stats.add(st);
            if hit.is_none() {
                hit = h;
            }
        }
        hit
    };
    Ok(match found {
        Some(map) => {
            let witness = Witness::new(
                map.iter()
                    .enumerate()
                    .map(|(x, &y)| (left.names[x].clone(), right.names[y].clone())),
            )?;
            debug_assert!(check_witness(s, t, &witness)?);
            EquivalenceResult {
                verdict: Verdict::Equivalent,
                witness: Some(witness),
                stats,
            }
        }
        None => EquivalenceResult::negative(stats),
    })
}

/// Per-completion view of one argument: (|A|, |D|, out-degree, in-degree, self-defeat).
type Occurrence = (usize, usize, usize, usize, bool);
type Signature = Vec<Occurrence>;

/// A completion set over argument indices.
struct Indexed {
    names: Vec<ArgumentId>,
    afs: Vec<(u64, Vec<(usize, usize)>)>,
}

impl Indexed {
    fn new(set: &CompletionSet, union: BTreeSet<ArgumentId>) -> Self {
        let names: Vec<ArgumentId> = union.into_iter().collect();
        let index: BTreeMap<&ArgumentId, usize> =
            names.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let afs = set
            .iter()
            .map(|af| {
                let mask = af.args().iter().fold(0u64, |m, a| m | 1 << index[a]);
                let edges = af
                    .defeats()
                    .iter()
                    .map(|(a, b)| (index[a], index[b]))
                    .collect();
                (mask, edges)
            })
            .collect();
        Indexed { names, afs }
    }

    fn signatures(&self) -> Vec<Signature> {
        (0..self.names.len())
            .map(|x| {
                let mut sig: Signature = self
                    .afs
                    .iter()
                    .filter(|(mask, _)| mask >> x & 1 == 1)
                    .map(|(mask, edges)| {
                        (
                            mask.count_ones() as usize,
                            edges.len(),
                            edges.iter().filter(|e| e.0 == x).count(),
                            edges.iter().filter(|e| e.1 == x).count(),
                            edges.contains(&(x, x)),
                        )
                    })
                    .collect();
                sig.sort();
                sig
            })
            .collect()
    }
}

struct Search<'a> {
    left: &'a Indexed,
    right: &'a Indexed,
    order: &'a [usize],
    candidates: &'a [Vec<usize>],
    prune: bool,
}

type Projection = (u64, Vec<(usize, usize)>);

impl Search<'_> {
    fn assign(
        &self,
        x: usize,
        y: usize,
        map: &mut [Option<usize>],
        used: &mut [bool],
        depth: usize,
        stats: &mut SearchStats,
    ) -> Option<Vec<usize>> {
        stats.nodes += 1;
        map[x] = Some(y);
        used[y] = true;
        let complete = depth + 1 == self.order.len();
        let result = if (self.prune || complete) && !self.consistent(map, used) {
            stats.prunes += 1;
            None
        } else if complete {
            Some(map.iter().map(|m| m.unwrap()).collect())
        } else {
            let next = self.order[depth + 1];
            let mut hit = None;
            for &c in &self.candidates[next] {
                if !used[c] {
                    hit = self.assign(next, c, map, used, depth + 1, stats);
                    if hit.is_some() {
                        break;
                    }
                }
            }
            hit
        };
        map[x] = None;
        used[y] = false;
        result
    }

    /// Whether both sets, projected onto the assigned arguments, agree as multisets.
    fn consistent(&self, map: &[Option<usize>], used: &[bool]) -> bool {
        let image = used
            .iter()
            .enumerate()
            .filter(|(_, u)| **u)
            .fold(0u64, |m, (i, _)| m | 1 << i);
        let mut l: Vec<Projection> = self
            .left
            .afs
            .iter()
            .map(|(mask, edges)| {
                let args = (0..map.len())
                    .filter(|&a| mask >> a & 1 == 1)
                    .filter_map(|a| map[a])
                    .fold(0u64, |m, b| m | 1 << b);
                let mut e: Vec<(usize, usize)> = edges
                    .iter()
                    .filter_map(|&(a, b)| Some((map[a]?, map[b]?)))
                    .collect();
                e.sort_unstable();
                (args, e)
            })
            .collect();
        let mut r: Vec<Projection> = self
            .right
            .afs
            .iter()
            .map(|(mask, edges)| {
                let e: Vec<(usize, usize)> = edges
                    .iter()
                    .copied()
                    .filter(|&(a, b)| image >> a & 1 == 1 && image >> b & 1 == 1)
                    .collect();
                (mask & image, e)
            })
            .collect();
        l.sort_unstable();
        r.sort_unstable();
        l == r
    }
}

/// True iff no arg-IAF over at most `max_args` arguments has a completion
/// set equivalent to `t`.
///
/// Every candidate is isomorphic to one over the arguments of `t` whose
/// fixed part is the intersection of the members of `t` and whose defeats
/// are those of its maximal member, so one candidate per isomorphism class
/// is checked.
pub fn no_equivalent_arg_iaf(t: &CompletionSet, max_args: usize, bounds: &Bounds) -> Result<bool> {
    if max_args > bounds.max_iaf_args {
        return Err(Error::SearchBoundExceeded {
            actual: max_args,
            bound: bounds.max_iaf_args,
        });
    }
    Ok(canonical_arg_iaf(t, max_args, bounds)?.is_none())
}

/// The arg-IAF over the arguments of `t` whose completions are exactly `t`,
/// if one exists within `max_args` arguments.
pub fn canonical_arg_iaf(t: &CompletionSet, max_args: usize, bounds: &Bounds) -> Result<Option<ArgIAF>> {
    let union = t.argument_union();
    if t.is_empty() || union.len() > max_args {
        return Ok(None);
    }
    let Some(max) = t.iter().find(|af| af.args() == &union) else {
        return Ok(None);
    };
    let fixed: BTreeSet<ArgumentId> = t
        .iter()
        .map(|af| af.args().clone())
        .reduce(|a, b| &a & &b)
        .unwrap_or_default();
    let uncertain: BTreeSet<ArgumentId> = &union - &fixed;
    if t.len() as u128 != 1u128 << uncertain.len() {
        return Ok(None);
    }
    let iaf = ArgIAF::new(fixed, uncertain, max.defeats().iter().cloned())?;
    Ok((completions_arg_iaf(&iaf, bounds)? == *t).then_some(iaf))
}

/// Reflexivity, symmetry with the inverse witness and transitivity with the
/// composed witness on three sets.
pub fn equivalence_properties_check(
    s: &CompletionSet,
    t: &CompletionSet,
    u: &CompletionSet,
    bounds: &Bounds,
) -> Result<bool> {
    for x in [s, t, u] {
        let r = equivalent(x, x, bounds)?;
        match &r.witness {
            Some(w) if check_witness(x, x, w)? => {}
            _ => return Ok(false),
        }
    }
    let st = equivalent(s, t, bounds)?;
    let tu = equivalent(t, u, bounds)?;
    if let Some(w) = &st.witness {
        if !check_witness(t, s, &w.inverse())? || !equivalent(t, s, bounds)?.is_equivalent() {
            return Ok(false);
        }
    }
    if let (Some(w1), Some(w2)) = (&st.witness, &tu.witness) {
        if !check_witness(s, u, &w1.compose(w2)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The completion set of `af` alone, for convenience.
pub fn singleton(af: AbstractAF) -> CompletionSet {
    CompletionSet::from_iter([af])
}
