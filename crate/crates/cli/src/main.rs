use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use uarg_core::af::Semantics;
use uarg_core::document::TheoryDoc;
use uarg_core::dot::{af_to_dot, arg_iaf_to_dot, dep_arg_iaf_to_dot};
use uarg_core::equivalence::{check_witness, equivalent_with, SearchOptions};
use uarg_core::fixtures::{self, Fixture};
use uarg_core::incomplete::{minimize_dependencies, synthesize_dependencies, DepArgIAF};
use uarg_core::text::{
    serialize_arg_iaf, serialize_completion_set, serialize_dep_arg_iaf, serialize_extension,
};
use uarg_core::translate::{
    arg_iaf_to_prem_isaf, arg_iaf_to_rul_isaf, prem_isaf_to_imp_arg_iaf, prem_isaf_to_rul_isaf,
    rul_isaf_to_imp_arg_iaf, tidy, DeltaMode, Witness,
};
use uarg_core::Bounds;

mod config;
mod input;

use config::{Layer, Settings};
use input::{load, load_completion_set, Framework, Kind};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] uarg_core::Error),
    #[error("cannot read {0}: {1}")]
    Io(String, std::io::Error),
    #[error("configuration: {0}")]
    Config(String),
    #[error("{0}")]
    Usage(String),
    /// A well-formed negative answer.
    #[error("{0}")]
    Negative(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Negative(_) => 1,
            CliError::Core(e) if e.is_resource_bound() => 3,
            _ => 2,
        }
    }

    fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Io(..) => "IO_ERROR",
            CliError::Config(_) => "CONFIG_ERROR",
            CliError::Usage(_) => "USAGE_ERROR",
            CliError::Negative(_) => "NEGATIVE",
        }
    }
}

#[derive(Parser)]
#[command(name = "uarg", version, about = "Completions, translations and equivalence for incomplete argumentation frameworks")]
struct Cli {
    /// TOML file with bound settings.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(flatten)]
    bounds: Layer,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the abstract completions of a framework.
    Completions {
        /// Input path, `-` for stdin, or `fixture:NAME`.
        input: String,
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        /// Print only the number of completions.
        #[arg(long)]
        count: bool,
    },
    /// Translate a framework into another formalism.
    Translate {
        input: String,
        #[arg(long, value_enum)]
        from: Kind,
        #[arg(long, value_enum)]
        to: Kind,
        /// Emit a dependency for every covering set, not only minimal ones.
        #[arg(long)]
        full_delta: bool,
        /// Check that the witness maps the completions onto each other.
        #[arg(long)]
        verify: bool,
        /// Write the witness here instead of to stderr.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Decide whether two completion sets are equivalent.
    Equiv {
        left: String,
        right: String,
        /// Only consider the identity map.
        #[arg(long)]
        identity_only: bool,
        /// Check this witness instead of searching.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// List the extensions of an AF under a semantics.
    Semantics {
        input: String,
        #[arg(long, default_value = "grounded")]
        sigma: Semantics,
    },
    /// Synthesize dependencies whose completions are exactly a target set.
    SynthDeps {
        /// An arg-IAF document.
        iaf: String,
        /// A completion-set document.
        target: String,
        /// Drop redundant literals and clauses.
        #[arg(long)]
        minimize: bool,
    },
    /// List or print the built-in instances.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
    /// Graphviz rendering; uncertain arguments are dashed.
    ExportDot {
        input: String,
        #[arg(long, value_enum)]
        kind: Option<Kind>,
    },
}

#[derive(Subcommand)]
enum FixtureAction {
    List,
    Emit {
        name: String,
        /// For fixture pairs, print the second completion set.
        #[arg(long)]
        second: bool,
    },
}

fn structured_doc(fw: &Framework) -> Option<String> {
    match fw {
        Framework::Saf(s) => Some(TheoryDoc::of_saf(s).to_json()),
        Framework::Rul(r) => Some(TheoryDoc::of_rul_isaf(r).to_json()),
        Framework::Prem(p) => Some(TheoryDoc::of_prem_isaf(p).to_json()),
        _ => None,
    }
}

fn document(fw: &Framework) -> String {
    match fw {
        Framework::Af(af) => uarg_core::text::serialize_af(af),
        Framework::ArgIaf(iaf) => serialize_arg_iaf(iaf),
        Framework::DepArgIaf(d) => serialize_dep_arg_iaf(d),
        Framework::Sets(s, _) => serialize_completion_set(s),
        other => structured_doc(other).expect("structured framework"),
    }
}

fn translate(
    fw: &Framework,
    from: Kind,
    to: Kind,
    mode: DeltaMode,
    bounds: &Bounds,
) -> Result<(Framework, Witness), CliError> {
    use Kind::*;
    Ok(match (fw, to) {
        (Framework::ArgIaf(iaf), RulIsaf) => {
            let (r, w) = arg_iaf_to_rul_isaf(iaf)?;
            (Framework::Rul(r), w)
        }
        (Framework::ArgIaf(iaf), PremIsaf) => {
            let (p, w) = arg_iaf_to_prem_isaf(iaf)?;
            (Framework::Prem(p), w)
        }
        (Framework::Rul(r), ImpArgIaf | DepArgIaf) => {
            let (d, w) = rul_isaf_to_imp_arg_iaf(r, mode, bounds)?;
            (Framework::DepArgIaf(d), w)
        }
        (Framework::Prem(p), ImpArgIaf | DepArgIaf) => {
            let (d, w) = prem_isaf_to_imp_arg_iaf(p, mode, bounds)?;
            (Framework::DepArgIaf(d), w)
        }
        (Framework::Prem(p), PremIsaf) => {
            let (t, w) = tidy(p, bounds)?;
            (Framework::Prem(t), w)
        }
        (Framework::Prem(p), RulIsaf) => {
            let (r, w) = prem_isaf_to_rul_isaf(p, bounds)?;
            (Framework::Rul(r), w)
        }
        _ => {
            return Err(uarg_core::Error::UnsupportedDirection {
                from: from.name().into(),
                to: to.name().into(),
            }
            .into())
        }
    })
}

fn supported(from: Kind, to: Kind) -> bool {
    use Kind::*;
    matches!(
        (from, to),
        (ArgIaf, RulIsaf | PremIsaf)
            | (RulIsaf, ImpArgIaf | DepArgIaf)
            | (PremIsaf, ImpArgIaf | DepArgIaf | PremIsaf | RulIsaf)
    )
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e))
}

fn run(cli: Cli) -> Result<String, CliError> {
    let file = cli.config.as_deref().map(Layer::from_file).transpose()?;
    let env = Layer::from_env(|k| std::env::var(k).ok())?;
    let settings = Settings::resolve(file, cli.bounds, env);
    // A second initialization only happens in tests and is harmless.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(settings.threads)
        .build_global();
    let b = &settings.bounds;

    match cli.command {
        Command::Completions { input, kind, count } => {
            let set = load(&input, kind)?.completions(b)?;
            Ok(if count {
                format!("{}\n", set.len())
            } else {
                serialize_completion_set(&set)
            })
        }
        Command::Translate {
            input,
            from,
            to,
            full_delta,
            verify,
            witness,
        } => {
            if !supported(from, to) {
                return Err(uarg_core::Error::UnsupportedDirection {
                    from: from.name().into(),
                    to: to.name().into(),
                }
                .into());
            }
            let source = load(&input, Some(from))?;
            let mode = if full_delta { DeltaMode::Full } else { DeltaMode::Minimal };
            let (target, w) = translate(&source, from, to, mode, b)?;
            if verify {
                let ok = check_witness(&source.completions(b)?, &target.completions(b)?, &w)?;
                if !ok {
                    return Err(CliError::Negative(
                        "verification failed: the witness does not map the completions onto each other".into(),
                    ));
                }
            }
            let json = w.to_json() + "\n";
            match witness {
                Some(path) => write_file(&path, &json)?,
                None => eprint!("{json}"),
            }
            Ok(document(&target))
        }
        Command::Equiv {
            left,
            right,
            identity_only,
            witness,
        } => {
            let s = load_completion_set(&left, b)?;
            let t = load_completion_set(&right, b)?;
            if let Some(path) = witness {
                let w = Witness::from_json(&input::read_text(&path.display().to_string())?)?;
                return if check_witness(&s, &t, &w)? {
                    Ok("{\"verdict\":\"equivalent\"}\n".into())
                } else {
                    Err(CliError::Negative("{\"verdict\":\"not_equivalent\"}".into()))
                };
            }
            let options = SearchOptions {
                identity_only,
                ..SearchOptions::default()
            };
            let r = equivalent_with(&s, &t, b, options)?;
            if r.is_equivalent() {
                Ok(r.to_json() + "\n")
            } else {
                Err(CliError::Negative(r.to_json()))
            }
        }
        Command::Semantics { input, sigma } => {
            let Framework::Af(af) = load(&input, Some(Kind::Af))? else {
                unreachable!("kind is checked on load")
            };
            let mut out = String::new();
            for ext in af.extensions(sigma)? {
                out.push_str(&serialize_extension(&ext));
                out.push('\n');
            }
            Ok(out)
        }
        Command::SynthDeps {
            iaf,
            target,
            minimize,
        } => {
            let Framework::ArgIaf(iaf) = load(&iaf, Some(Kind::ArgIaf))? else {
                unreachable!("kind is checked on load")
            };
            let target = load_completion_set(&target, b)?;
            let deps = match synthesize_dependencies(&iaf, &target, b) {
                Err(e @ uarg_core::Error::TargetNotExpressible) => {
                    return Err(CliError::Negative(e.to_string()))
                }
                other => other?,
            };
            let deps = if minimize {
                minimize_dependencies(&iaf, &deps, b)?
            } else {
                deps
            };
            Ok(serialize_dep_arg_iaf(&DepArgIAF::new(iaf, deps)?))
        }
        Command::Fixtures { action } => match action {
            FixtureAction::List => {
                let mut out = String::new();
                for name in fixtures::NAMES {
                    let kind = fixtures::fixture(name)?.kind();
                    out.push_str(&format!("{name}\t{kind}\n"));
                }
                Ok(out)
            }
            FixtureAction::Emit { name, second } => Ok(match fixtures::fixture(&name)? {
                Fixture::SetPair(s, t) => serialize_completion_set(if second { &t } else { &s }),
                f => document(&Framework::from(f)),
            }),
        },
        Command::ExportDot { input, kind } => Ok(match load(&input, kind)? {
            Framework::Af(af) => af_to_dot(&af),
            Framework::ArgIaf(iaf) => arg_iaf_to_dot(&iaf),
            Framework::DepArgIaf(d) => dep_arg_iaf_to_dot(&d),
            Framework::Saf(s) => af_to_dot(&s.associated_af(b)?),
            Framework::Rul(r) => dep_arg_iaf_to_dot(&rul_isaf_to_imp_arg_iaf(&r, DeltaMode::Minimal, b)?.0),
            Framework::Prem(p) => dep_arg_iaf_to_dot(&prem_isaf_to_imp_arg_iaf(&p, DeltaMode::Minimal, b)?.0),
            Framework::Sets(..) => {
                return Err(CliError::Usage("a pair of completion sets has no graph".into()))
            }
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Negative(msg)) => {
            println!("{msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(e.exit_code())
        }
    }
}
