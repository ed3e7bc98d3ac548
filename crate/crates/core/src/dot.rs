//! Graphviz export; uncertain arguments are drawn as dashed nodes.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::af::{AbstractAF, ArgumentId, Defeat};
use crate::incomplete::{ArgIAF, DepArgIAF};

fn render<'a>(
    args: impl Iterator<Item = &'a ArgumentId>,
    uncertain: &BTreeSet<ArgumentId>,
    defeats: &BTreeSet<Defeat>,
) -> String {
    let mut out = String::from("digraph {\n");
    for a in args {
        if uncertain.contains(a) {
            writeln!(out, "  \"{a}\" [style=dashed];").unwrap();
        } else {
            writeln!(out, "  \"{a}\";").unwrap();
        }
    }
    for (a, b) in defeats {
        writeln!(out, "  \"{a}\" -> \"{b}\";").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn af_to_dot(af: &AbstractAF) -> String {
    render(af.args().iter(), &BTreeSet::new(), af.defeats())
}

pub fn arg_iaf_to_dot(iaf: &ArgIAF) -> String {
    render(iaf.all_args().iter(), iaf.uncertain_args(), iaf.defeats())
}

/// Dependencies are not drawn.
pub fn dep_arg_iaf_to_dot(diaf: &DepArgIAF) -> String {
    arg_iaf_to_dot(diaf.base())
}
