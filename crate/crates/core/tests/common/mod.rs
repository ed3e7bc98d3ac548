//! Seeded generators of small random instances.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use uarg_core::af::{id, AbstractAF, ArgumentId};
use uarg_core::aspic::{formula, generate_arguments, Formula, Rule, RuleKind, Saf, Theory};
use uarg_core::incomplete::ArgIAF;
use uarg_core::isaf::{PremIsaf, RulIsaf};
use uarg_core::Bounds;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn names(n: usize) -> Vec<ArgumentId> {
    (0..n).map(|i| id(&format!("a{i}"))).collect()
}

/// The framework over `a0..` whose defeats are the set bits of `mask`, bit
/// `i * n + j` standing for `(a_i, a_j)`.
pub fn af_from_mask(n: usize, mask: u64) -> AbstractAF {
    let names = names(n);
    let defeats = (0..n * n)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| (names[b / n].clone(), names[b % n].clone()));
    AbstractAF::new(names.clone(), defeats).unwrap()
}

pub fn random_af(rng: &mut ChaCha8Rng, max_args: usize) -> AbstractAF {
    let n = rng.gen_range(0..=max_args);
    let mask = rng.gen::<u64>() & ((1u64 << (n * n)) - 1);
    af_from_mask(n, mask)
}

/// Fixed arguments `a0..a{f-1}`, uncertain ones after.
pub fn arg_iaf_from_mask(n: usize, fixed: usize, mask: u64) -> ArgIAF {
    let names = names(n);
    let af = af_from_mask(n, mask);
    ArgIAF::new(
        names[..fixed].iter().cloned(),
        names[fixed..].iter().cloned(),
        af.defeats().iter().cloned(),
    )
    .unwrap()
}

/// Defeat masks over `n` arguments that are least among their relabellings
/// by permutations keeping the first `fixed` arguments in place as a block.
pub fn canonical_masks(n: usize, fixed: usize) -> Vec<u64> {
    let perms = block_permutations(n, fixed);
    (0..1u64 << (n * n))
        .filter(|&mask| {
            perms
                .iter()
                .all(|p| permute_mask(n, mask, p) >= mask)
        })
        .collect()
}

fn permute_mask(n: usize, mask: u64, p: &[usize]) -> u64 {
    (0..n * n)
        .filter(|b| mask >> b & 1 == 1)
        .fold(0, |m, b| m | 1 << (p[b / n] * n + p[b % n]))
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn block_permutations(n: usize, fixed: usize) -> Vec<Vec<usize>> {
    let left: Vec<usize> = (0..fixed).collect();
    let right: Vec<usize> = (fixed..n).collect();
    let mut out = Vec::new();
    for a in permutations(&left) {
        for b in permutations(&right) {
            out.push(a.iter().chain(&b).copied().collect());
        }
    }
    out
}

/// Small bounds that keep random theories cheap.
pub fn small_bounds() -> Bounds {
    Bounds {
        max_arguments: 200,
        max_depth: 10,
        ..Bounds::default()
    }
}

/// Shape of a random theory.
#[derive(Debug, Clone, Copy)]
pub struct TheoryShape {
    pub atoms: usize,
    pub rules: usize,
    pub kb: usize,
    pub max_arguments: usize,
}

impl Default for TheoryShape {
    fn default() -> Self {
        TheoryShape {
            atoms: 4,
            rules: 5,
            kb: 3,
            max_arguments: 30,
        }
    }
}

fn literal(rng: &mut ChaCha8Rng, atom: usize) -> Formula {
    let base = format!("x{atom}");
    if rng.gen_bool(0.3) {
        formula(&format!("~{base}"))
    } else {
        formula(&base)
    }
}

/// A random SAF whose rules only lead from lower to higher atoms, so that
/// argument generation terminates.
///
/// With `repeat` set, some knowledge-base formulas are also heads of
/// premiseless rules.
pub fn random_saf(rng: &mut ChaCha8Rng, shape: TheoryShape, repeat: bool) -> Option<Saf> {
    let mut b = Theory::builder().close_negation();
    for a in 0..shape.atoms {
        b = b.formula(formula(&format!("x{a}")));
    }
    for _ in 0..rng.gen_range(0..=2) {
        let (i, j) = (rng.gen_range(0..shape.atoms), rng.gen_range(0..shape.atoms));
        let x = literal(rng, i);
        let y = literal(rng, j);
        b = b.contrary(x, y);
    }
    let mut seen = BTreeSet::new();
    let mut rules = Vec::new();
    for _ in 0..shape.rules {
        let head_atom = rng.gen_range(0..shape.atoms);
        let body_len = if head_atom == 0 { 0 } else { rng.gen_range(0..=2.min(head_atom)) };
        let mut lower: Vec<usize> = (0..head_atom).collect();
        lower.shuffle(rng);
        let body: Vec<Formula> = lower[..body_len].iter().map(|&a| literal(rng, a)).collect();
        let head = literal(rng, head_atom);
        let key = (body.iter().cloned().collect::<BTreeSet<_>>(), head.clone());
        if !seen.insert(key) {
            continue;
        }
        let kind = if rng.gen_bool(0.3) { RuleKind::Strict } else { RuleKind::Defeasible };
        rules.push(Rule::new(body, head, kind));
    }
    let mut kb = BTreeSet::new();
    for _ in 0..shape.kb {
        let atom = rng.gen_range(0..shape.atoms);
        kb.insert(literal(rng, atom));
    }
    if repeat {
        let heads: Vec<Formula> = rules
            .iter()
            .filter(|r| r.is_premiseless())
            .map(|r| r.head().clone())
            .collect();
        if let Some(h) = heads.choose(rng) {
            kb.insert(h.clone());
        } else if let Some(phi) = kb.iter().next().cloned() {
            let kind = if rng.gen_bool(0.5) { RuleKind::Strict } else { RuleKind::Defeasible };
            let rule = Rule::new([], phi.clone(), kind);
            if !rules.iter().any(|r| r.body().is_empty() && r.head() == &phi) {
                rules.push(rule);
            }
        }
    }
    for r in &rules {
        b = b.rule(r.clone());
        if r.is_defeasible() && rng.gen_bool(0.25) {
            let atom = rng.gen_range(0..shape.atoms);
            b = b.name(r.clone(), literal(rng, atom));
        }
    }
    for phi in kb {
        b = if rng.gen_bool(0.25) { b.axiom(phi) } else { b.premise(phi) };
    }
    let theory = b.build().ok()?;
    let args = generate_arguments(&theory, &small_bounds()).ok()?;
    if args.len() > shape.max_arguments {
        return None;
    }
    let ids: Vec<ArgumentId> = args.keys().cloned().collect();
    let mut preference = Vec::new();
    if !ids.is_empty() {
        for _ in 0..rng.gen_range(0..=4) {
            let x = ids.choose(rng).unwrap().clone();
            let y = ids.choose(rng).unwrap().clone();
            preference.push((x, y));
        }
    }
    Some(Saf::new(theory, preference))
}

fn pick<T: Clone>(rng: &mut ChaCha8Rng, items: &[T], max: usize) -> Vec<T> {
    let k = rng.gen_range(0..=max.min(items.len()));
    items.choose_multiple(rng, k).cloned().collect()
}

pub fn random_rul_isaf(rng: &mut ChaCha8Rng, shape: TheoryShape, max_uncertain: usize) -> RulIsaf {
    loop {
        let Some(saf) = random_saf(rng, shape, false) else {
            continue;
        };
        let rules: Vec<Rule> = saf.theory().rules().iter().cloned().collect();
        let uncertain = pick(rng, &rules, max_uncertain);
        return RulIsaf::new(saf, uncertain).unwrap();
    }
}

pub fn random_prem_isaf(
    rng: &mut ChaCha8Rng,
    shape: TheoryShape,
    max_uncertain: usize,
    repeat: bool,
) -> PremIsaf {
    loop {
        let Some(saf) = random_saf(rng, shape, repeat) else {
            continue;
        };
        let kb: Vec<Formula> = saf.theory().knowledge_base().into_iter().collect();
        let uncertain = pick(rng, &kb, max_uncertain);
        let p = PremIsaf::new(saf, uncertain).unwrap();
        if repeat && p.repetitions().is_empty() {
            continue;
        }
        return p;
    }
}
