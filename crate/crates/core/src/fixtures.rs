//! Named instances from the literature on incomplete argumentation.

use crate::af::{id, AbstractAF};
use crate::aspic::{arg_id, formula as f, Rule, Saf, Theory};
use crate::incomplete::{ArgIAF, CompletionSet, DepArgIAF, Dependency};
use crate::isaf::{PremIsaf, RulIsaf};
use crate::{Error, Result};

/// A fixture instance of any supported kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fixture {
    ArgIaf(ArgIAF),
    DepArgIaf(DepArgIAF),
    Saf(Saf),
    RulIsaf(RulIsaf),
    PremIsaf(PremIsaf),
    /// Two completion sets to compare.
    SetPair(CompletionSet, CompletionSet),
}

impl Fixture {
    pub fn kind(&self) -> &'static str {
        match self {
            Fixture::ArgIaf(_) => "arg-iaf",
            Fixture::DepArgIaf(_) => "dep-arg-iaf",
            Fixture::Saf(_) => "saf",
            Fixture::RulIsaf(_) => "rul-isaf",
            Fixture::PremIsaf(_) => "prem-isaf",
            Fixture::SetPair(..) => "completion-sets",
        }
    }
}

pub const NAMES: &[&str] = &[
    "example1",
    "example2_imply",
    "example2_or",
    "example3",
    "example4",
    "example5",
    "thm3_rul",
    "thm5_imp",
    "thm7_prem",
    "thm9_imp",
    "thm10_rul",
    "remark_weak_equiv",
];

pub fn fixture(name: &str) -> Result<Fixture> {
    Ok(match name {
        "example1" => Fixture::ArgIaf(example1()),
        "example2_imply" => Fixture::DepArgIaf(example2_imply()),
        "example2_or" => Fixture::DepArgIaf(example2_or()),
        "example3" => Fixture::Saf(example3()),
        "example4" => Fixture::RulIsaf(example4()),
        "example5" => Fixture::PremIsaf(example5()),
        "thm3_rul" => Fixture::RulIsaf(thm3_rul()),
        "thm5_imp" => Fixture::DepArgIaf(thm5_imp()),
        "thm7_prem" => Fixture::PremIsaf(thm7_prem()),
        "thm9_imp" => Fixture::DepArgIaf(thm9_imp()),
        "thm10_rul" => Fixture::RulIsaf(thm10_rul()),
        "remark_weak_equiv" => {
            let (s, t) = remark_weak_equiv();
            Fixture::SetPair(s, t)
        }
        _ => return Err(Error::UnknownFixture(name.to_string())),
    })
}

/// `a` certain, `b` and `c` uncertain, both defeating `a`.
pub fn example1() -> ArgIAF {
    ArgIAF::from_strs(&["a"], &["b", "c"], &[("b", "a"), ("c", "a")])
}

/// Example 1 with `IMPLY({b}, c)`.
pub fn example2_imply() -> DepArgIAF {
    DepArgIAF::new(example1(), [Dependency::imply([id("b")], id("c"))]).expect("valid fixture")
}

/// Example 1 with `OR({b, c})`.
pub fn example2_or() -> DepArgIAF {
    DepArgIAF::new(example1(), [Dependency::Or([id("b"), id("c")].into())]).expect("valid fixture")
}

pub fn example3_theory() -> Theory {
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
        .expect("valid fixture")
}

/// The running structured example, with `s ⇒ ~r` strictly below `w ⇒ r`.
pub fn example3() -> Saf {
    Saf::new(
        example3_theory(),
        [(arg_id("(s)=d>~r"), arg_id("(w)=d>r"))],
    )
}

/// Example 3 with `u ↠ ~s` and `p ⇒ q` uncertain.
pub fn example4() -> RulIsaf {
    RulIsaf::new(
        example3(),
        [Rule::strict(&["u"], "~s"), Rule::defeasible(&["p"], "q")],
    )
    .expect("valid fixture")
}

/// Example 3 with the premise `w` uncertain.
pub fn example5() -> PremIsaf {
    PremIsaf::new(example3(), [f("w")]).expect("valid fixture")
}

/// Premise `p`, rules `p ⇒ q` (uncertain) and `q ⇒ r`.
pub fn thm3_rul() -> RulIsaf {
    let theory = Theory::builder()
        .close_negation()
        .premise(f("p"))
        .rule(Rule::defeasible(&["p"], "q"))
        .rule(Rule::defeasible(&["q"], "r"))
        .build()
        .expect("valid fixture");
    RulIsaf::new(Saf::new(theory, []), [Rule::defeasible(&["p"], "q")]).expect("valid fixture")
}

/// Three uncertain arguments with `IMPLY({a, b}, c)`.
pub fn thm5_imp() -> DepArgIAF {
    let base = ArgIAF::from_strs(&[], &["a", "b", "c"], &[]);
    DepArgIAF::new(base, [Dependency::imply([id("a"), id("b")], id("c"))]).expect("valid fixture")
}

/// Premises `p` and `q` (uncertain), rule `q ⇒ r`.
pub fn thm7_prem() -> PremIsaf {
    let theory = Theory::builder()
        .close_negation()
        .premise(f("p"))
        .premise(f("q"))
        .rule(Rule::defeasible(&["q"], "r"))
        .build()
        .expect("valid fixture");
    PremIsaf::new(Saf::new(theory, []), [f("q")]).expect("valid fixture")
}

/// Three uncertain arguments with `IMPLY({a}, b)` and `IMPLY({c}, b)`.
pub fn thm9_imp() -> DepArgIAF {
    let base = ArgIAF::from_strs(&[], &["a", "b", "c"], &[]);
    DepArgIAF::new(
        base,
        [
            Dependency::imply([id("a")], id("b")),
            Dependency::imply([id("c")], id("b")),
        ],
    )
    .expect("valid fixture")
}

/// Uncertain rules `⇒ p_b`, `p_b ⇒ p_a` and `p_b ⇒ p_c`.
pub fn thm10_rul() -> RulIsaf {
    let rules = [
        Rule::defeasible(&[], "p_b"),
        Rule::defeasible(&["p_b"], "p_a"),
        Rule::defeasible(&["p_b"], "p_c"),
    ];
    let mut b = Theory::builder().close_negation();
    for r in &rules {
        b = b.rule(r.clone());
    }
    let theory = b.build().expect("valid fixture");
    RulIsaf::new(Saf::new(theory, []), rules).expect("valid fixture")
}

/// Two sets that agree only under the rejected per-completion notion.
pub fn remark_weak_equiv() -> (CompletionSet, CompletionSet) {
    let s = CompletionSet::from_iter([AbstractAF::from_strs(
        &["a", "b"],
        &[("a", "b"), ("b", "a")],
    )]);
    let t = CompletionSet::from_iter([
        AbstractAF::from_strs(&["a", "b"], &[("a", "b")]),
        AbstractAF::from_strs(&["c", "d"], &[("d", "c")]),
    ]);
    (s, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_complete() {
        for name in NAMES {
            assert!(fixture(name).is_ok(), "{name}");
        }
        assert_eq!(fixture("nope").unwrap_err().code(), "UNKNOWN_FIXTURE");
    }
}
