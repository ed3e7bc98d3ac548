//! Bounds and thread settings from a TOML file, flags and `UARG_*` variables.
//!
//! Later layers win: file, then flags, then environment.

use std::path::Path;

use clap::Args;
use serde::Deserialize;
use uarg_core::Bounds;

use crate::CliError;

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct Layer {
    /// Maximum number of uncertain elements enumerated.
    #[arg(long, global = true)]
    pub max_uncertain: Option<usize>,
    /// Maximum number of structured arguments per theory.
    #[arg(long, global = true)]
    pub max_arguments: Option<usize>,
    /// Maximum inference depth of structured arguments.
    #[arg(long, global = true)]
    pub max_depth: Option<usize>,
    /// Maximum argument count for the bijection search.
    #[arg(long, global = true)]
    pub max_search_args: Option<usize>,
    /// Maximum framework size for the arg-IAF non-existence search.
    #[arg(long, global = true)]
    pub max_iaf_args: Option<usize>,
    /// Worker threads; 0 picks the number of CPUs.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

const KEYS: [&str; 6] = [
    "max_uncertain",
    "max_arguments",
    "max_depth",
    "max_search_args",
    "max_iaf_args",
    "threads",
];

impl Layer {
    fn slots(&mut self) -> [&mut Option<usize>; 6] {
        [
            &mut self.max_uncertain,
            &mut self.max_arguments,
            &mut self.max_depth,
            &mut self.max_search_args,
            &mut self.max_iaf_args,
            &mut self.threads,
        ]
    }

    fn over(mut self, mut top: Layer) -> Layer {
        for (mine, theirs) in self.slots().into_iter().zip(top.slots()) {
            if theirs.is_some() {
                *mine = *theirs;
            }
        }
        self
    }

    pub fn from_file(path: &Path) -> Result<Layer, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {}", path.display(), e.message())))
    }

    pub fn from_env(var: impl Fn(&str) -> Option<String>) -> Result<Layer, CliError> {
        let mut layer = Layer::default();
        for (key, slot) in KEYS.iter().zip(layer.slots()) {
            let name = format!("UARG_{}", key.to_uppercase());
            if let Some(value) = var(&name) {
                let n = value
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Config(format!("{name}={value:?} is not a count")))?;
                *slot = Some(n);
            }
        }
        Ok(layer)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    pub bounds: Bounds,
    pub threads: usize,
}

impl Settings {
    pub fn resolve(file: Option<Layer>, flags: Layer, env: Layer) -> Settings {
        let merged = file.unwrap_or_default().over(flags).over(env);
        let d = Bounds::default();
        Settings {
            bounds: Bounds {
                max_uncertain: merged.max_uncertain.unwrap_or(d.max_uncertain),
                max_arguments: merged.max_arguments.unwrap_or(d.max_arguments),
                max_depth: merged.max_depth.unwrap_or(d.max_depth),
                max_search_args: merged.max_search_args.unwrap_or(d.max_search_args),
                max_iaf_args: merged.max_iaf_args.unwrap_or(d.max_iaf_args),
            },
            threads: merged.threads.unwrap_or(0),
        }
    }
}
