//! Reading frameworks and completion sets from files, stdin or fixtures.

use std::io::Read;
use std::path::Path;

use clap::ValueEnum;
use uarg_core::af::AbstractAF;
use uarg_core::aspic::Saf;
use uarg_core::document::{Structured, TheoryDoc};
use uarg_core::fixtures::{self, Fixture};
use uarg_core::incomplete::{
    completions_arg_iaf, completions_dep, is_implicative, ArgIAF, CompletionSet, DepArgIAF,
};
use uarg_core::isaf::{completions_prem, completions_rul, PremIsaf, RulIsaf};
use uarg_core::text::{parse_af, parse_arg_iaf, parse_completion_set, parse_dep_arg_iaf};
use uarg_core::{Bounds, Error};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Af,
    ArgIaf,
    DepArgIaf,
    ImpArgIaf,
    Saf,
    RulIsaf,
    PremIsaf,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Af => "af",
            Kind::ArgIaf => "arg-iaf",
            Kind::DepArgIaf => "dep-arg-iaf",
            Kind::ImpArgIaf => "imp-arg-iaf",
            Kind::Saf => "saf",
            Kind::RulIsaf => "rul-isaf",
            Kind::PremIsaf => "prem-isaf",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Framework {
    Af(AbstractAF),
    ArgIaf(ArgIAF),
    DepArgIaf(DepArgIAF),
    Saf(Saf),
    Rul(RulIsaf),
    Prem(PremIsaf),
    Sets(CompletionSet, CompletionSet),
}

impl Framework {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Framework::Af(_) => "af",
            Framework::ArgIaf(_) => "arg-iaf",
            Framework::DepArgIaf(_) => "dep-arg-iaf",
            Framework::Saf(_) => "saf",
            Framework::Rul(_) => "rul-isaf",
            Framework::Prem(_) => "prem-isaf",
            Framework::Sets(..) => "completion-sets",
        }
    }

    pub fn completions(&self, bounds: &Bounds) -> Result<CompletionSet, CliError> {
        Ok(match self {
            Framework::Af(af) => CompletionSet::from_iter([af.clone()]),
            Framework::ArgIaf(iaf) => completions_arg_iaf(iaf, bounds)?,
            Framework::DepArgIaf(d) => completions_dep(d, bounds)?,
            Framework::Saf(s) => CompletionSet::from_iter([s.associated_af(bounds)?]),
            Framework::Rul(r) => completions_rul(r, bounds)?,
            Framework::Prem(p) => completions_prem(p, bounds)?,
            Framework::Sets(..) => {
                return Err(CliError::Usage(
                    "this fixture is a pair of completion sets, not a framework".into(),
                ))
            }
        })
    }
}

impl From<Fixture> for Framework {
    fn from(f: Fixture) -> Self {
        match f {
            Fixture::ArgIaf(x) => Framework::ArgIaf(x),
            Fixture::DepArgIaf(x) => Framework::DepArgIaf(x),
            Fixture::Saf(x) => Framework::Saf(x),
            Fixture::RulIsaf(x) => Framework::Rul(x),
            Fixture::PremIsaf(x) => Framework::Prem(x),
            Fixture::SetPair(s, t) => Framework::Sets(s, t),
        }
    }
}

/// A `fixture:NAME` reference, or `None` for a path.
fn fixture_name(spec: &str) -> Option<&str> {
    spec.strip_prefix("fixture:")
}

pub fn read_text(spec: &str) -> Result<String, CliError> {
    if spec == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Io("<stdin>".into(), e))?;
        return Ok(text);
    }
    std::fs::read_to_string(spec).map_err(|e| CliError::Io(spec.to_string(), e))
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

/// Loads a framework; without `kind` the kind is inferred from the content.
pub fn load(spec: &str, kind: Option<Kind>) -> Result<Framework, CliError> {
    let fw = match fixture_name(spec) {
        Some(name) => Framework::from(fixtures::fixture(name)?),
        None => {
            let text = read_text(spec)?;
            match kind {
                Some(k) => parse_as(&text, k)?,
                None => infer(&text)?,
            }
        }
    };
    match kind {
        Some(k) => coerce(fw, k),
        None => Ok(fw),
    }
}

fn parse_as(text: &str, kind: Kind) -> Result<Framework, CliError> {
    Ok(match kind {
        Kind::Af => Framework::Af(parse_af(text)?),
        Kind::ArgIaf => Framework::ArgIaf(parse_arg_iaf(text)?),
        Kind::DepArgIaf | Kind::ImpArgIaf => Framework::DepArgIaf(parse_dep_arg_iaf(text)?),
        Kind::Saf => Framework::Saf(TheoryDoc::parse(text)?.saf()?),
        Kind::RulIsaf => Framework::Rul(TheoryDoc::parse(text)?.rul_isaf()?),
        Kind::PremIsaf => Framework::Prem(TheoryDoc::parse(text)?.prem_isaf()?),
    })
}

fn infer(text: &str) -> Result<Framework, CliError> {
    if looks_like_json(text) {
        return Ok(match TheoryDoc::parse(text)?.structured()? {
            Structured::Saf(s) => Framework::Saf(s),
            Structured::Rul(r) => Framework::Rul(r),
            Structured::Prem(p) => Framework::Prem(p),
        });
    }
    let d = parse_dep_arg_iaf(text)?;
    Ok(if !d.dependencies().is_empty() {
        Framework::DepArgIaf(d)
    } else if !d.base().uncertain_args().is_empty() {
        Framework::ArgIaf(d.into_base())
    } else {
        Framework::Af(parse_af(text)?)
    })
}

/// Checks a loaded framework against the requested kind, widening where
/// the requested kind is more general.
fn coerce(fw: Framework, kind: Kind) -> Result<Framework, CliError> {
    let mismatch = |fw: &Framework| {
        CliError::Usage(format!("input is a {}, not a {}", fw.kind_name(), kind.name()))
    };
    Ok(match (fw, kind) {
        (fw @ Framework::Af(_), Kind::Af)
        | (fw @ Framework::ArgIaf(_), Kind::ArgIaf)
        | (fw @ Framework::DepArgIaf(_), Kind::DepArgIaf)
        | (fw @ Framework::Saf(_), Kind::Saf)
        | (fw @ Framework::Rul(_), Kind::RulIsaf)
        | (fw @ Framework::Prem(_), Kind::PremIsaf) => fw,
        (Framework::ArgIaf(iaf), Kind::DepArgIaf | Kind::ImpArgIaf) => {
            Framework::DepArgIaf(DepArgIAF::without_dependencies(iaf))
        }
        (Framework::DepArgIaf(d), Kind::ImpArgIaf) => {
            if !is_implicative(&d) {
                return Err(Error::InvalidDependency(
                    "an imp-arg-IAF only allows IMPLY dependencies with one consequent".into(),
                )
                .into());
            }
            Framework::DepArgIaf(d)
        }
        (fw, _) => return Err(mismatch(&fw)),
    })
}

/// A completion-set document, a directory of `.apx` files (one AF each),
/// or the completions of a framework given as `fixture:NAME`. The second
/// set of a fixture pair is addressed as `fixture:NAME:2`.
pub fn load_completion_set(spec: &str, bounds: &Bounds) -> Result<CompletionSet, CliError> {
    if let Some(rest) = fixture_name(spec) {
        let (name, second) = match rest.strip_suffix(":2") {
            Some(name) => (name, true),
            None => (rest.strip_suffix(":1").unwrap_or(rest), false),
        };
        return match Framework::from(fixtures::fixture(name)?) {
            Framework::Sets(s, t) => Ok(if second { t } else { s }),
            fw => fw.completions(bounds),
        };
    }
    let path = Path::new(spec);
    if path.is_dir() {
        let mut files: Vec<_> = std::fs::read_dir(path)
            .map_err(|e| CliError::Io(spec.to_string(), e))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "apx"))
            .collect();
        files.sort();
        let mut set = CompletionSet::new();
        for f in files {
            let name = f.display().to_string();
            set.insert(parse_af(&read_text(&name)?)?);
        }
        return Ok(set);
    }
    Ok(parse_completion_set(&read_text(spec)?)?)
}
