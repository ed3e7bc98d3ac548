//! Python bindings. Frameworks are built from and written to the same text
//! and JSON documents the command line uses.

use std::collections::BTreeSet;

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use uarg_core::af::{AbstractAF, Semantics};
use uarg_core::aspic::Saf;
use uarg_core::document::{Structured, TheoryDoc};
use uarg_core::dot::{af_to_dot, arg_iaf_to_dot, dep_arg_iaf_to_dot};
use uarg_core::equivalence::{self as eq, SearchOptions};
use uarg_core::fixtures::{self as fx, Fixture};
use uarg_core::incomplete::{self as inc, ArgIAF as CoreArgIaf, CompletionSet as CoreSet, DepArgIAF};
use uarg_core::isaf::{completions_prem, completions_rul, PremIsaf as CorePrem, RulIsaf as CoreRul};
use uarg_core::text;
use uarg_core::translate::{self as tr, DeltaMode, Witness as CoreWitness};

create_exception!(uarg, UargError, PyException, "Raised for every library error; `code` holds the stable error code.");

fn err(e: uarg_core::Error) -> PyErr {
    let py_err = UargError::new_err(format!("{}: {}", e.code(), e));
    Python::attach(|py| {
        let _ = py_err.value(py).setattr("code", e.code());
    });
    py_err
}

type R<T> = PyResult<T>;

fn names<'a>(ids: impl IntoIterator<Item = &'a uarg_core::af::ArgumentId>) -> Vec<String> {
    ids.into_iter().map(|a| a.as_str().to_string()).collect()
}

/// Resource bounds; every limit is reported as an error, never a truncation.
#[pyclass(module = "uarg", get_all, set_all, skip_from_py_object)]
#[derive(Clone)]
struct Bounds {
    max_uncertain: usize,
    max_arguments: usize,
    max_depth: usize,
    max_search_args: usize,
    max_iaf_args: usize,
}

#[pymethods]
impl Bounds {
    #[new]
    #[pyo3(signature = (max_uncertain=None, max_arguments=None, max_depth=None, max_search_args=None, max_iaf_args=None))]
    fn new(
        max_uncertain: Option<usize>,
        max_arguments: Option<usize>,
        max_depth: Option<usize>,
        max_search_args: Option<usize>,
        max_iaf_args: Option<usize>,
    ) -> Self {
        let d = uarg_core::Bounds::default();
        Bounds {
            max_uncertain: max_uncertain.unwrap_or(d.max_uncertain),
            max_arguments: max_arguments.unwrap_or(d.max_arguments),
            max_depth: max_depth.unwrap_or(d.max_depth),
            max_search_args: max_search_args.unwrap_or(d.max_search_args),
            max_iaf_args: max_iaf_args.unwrap_or(d.max_iaf_args),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Bounds(max_uncertain={}, max_arguments={}, max_depth={}, max_search_args={}, max_iaf_args={})",
            self.max_uncertain, self.max_arguments, self.max_depth, self.max_search_args, self.max_iaf_args
        )
    }
}

fn core_bounds(b: Option<&Bounds>) -> uarg_core::Bounds {
    match b {
        None => uarg_core::Bounds::default(),
        Some(b) => uarg_core::Bounds {
            max_uncertain: b.max_uncertain,
            max_arguments: b.max_arguments,
            max_depth: b.max_depth,
            max_search_args: b.max_search_args,
            max_iaf_args: b.max_iaf_args,
        },
    }
}

/// An abstract argumentation framework.
#[pyclass(module = "uarg", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct AF(AbstractAF);

#[pymethods]
impl AF {
    #[new]
    #[pyo3(signature = (args, defeats=Vec::new()))]
    fn new(args: Vec<String>, defeats: Vec<(String, String)>) -> R<Self> {
        let id = |s: &str| uarg_core::af::ArgumentId::new(s).map_err(err);
        let args = args.iter().map(|a| id(a)).collect::<R<BTreeSet<_>>>()?;
        let defeats = defeats
            .iter()
            .map(|(x, y)| Ok((id(x)?, id(y)?)))
            .collect::<R<BTreeSet<_>>>()?;
        AbstractAF::new(args, defeats).map(AF).map_err(err)
    }

    #[staticmethod]
    fn parse(text: &str) -> R<Self> {
        text::parse_af(text).map(AF).map_err(err)
    }

    fn to_text(&self) -> String {
        text::serialize_af(&self.0)
    }

    fn to_dot(&self) -> String {
        af_to_dot(&self.0)
    }

    #[getter]
    fn args(&self) -> Vec<String> {
        names(self.0.args())
    }

    #[getter]
    fn defeats(&self) -> Vec<(String, String)> {
        self.0
            .defeats()
            .iter()
            .map(|(x, y)| (x.as_str().to_string(), y.as_str().to_string()))
            .collect()
    }

    /// Extensions under `sigma`, each a sorted list of argument names.
    #[pyo3(signature = (sigma="grounded"))]
    fn extensions(&self, sigma: &str) -> R<Vec<Vec<String>>> {
        let sigma: Semantics = sigma.parse().map_err(err)?;
        Ok(self.0.extensions(sigma).map_err(err)?.iter().map(names).collect())
    }

    fn __repr__(&self) -> String {
        format!("AF(args={:?}, defeats={:?})", self.args(), self.defeats())
    }
}

/// A set of abstract frameworks, as produced by completion enumeration.
#[pyclass(module = "uarg", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
struct CompletionSet(CoreSet);

#[pymethods]
impl CompletionSet {
    #[new]
    #[pyo3(signature = (afs=Vec::new()))]
    fn new(afs: Vec<AF>) -> Self {
        CompletionSet(afs.into_iter().map(|a| a.0).collect())
    }

    #[staticmethod]
    fn parse(text: &str) -> R<Self> {
        text::parse_completion_set(text).map(CompletionSet).map_err(err)
    }

    fn to_text(&self) -> String {
        text::serialize_completion_set(&self.0)
    }

    fn afs(&self) -> Vec<AF> {
        self.0.iter().cloned().map(AF).collect()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __contains__(&self, af: &AF) -> bool {
        self.0.contains(&af.0)
    }

    fn __repr__(&self) -> String {
        format!("CompletionSet(<{} frameworks>)", self.0.len())
    }
}

/// A bijection between argument names.
#[pyclass(module = "uarg", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
struct Witness(CoreWitness);

#[pymethods]
impl Witness {
    #[new]
    fn new(pairs: Vec<(String, String)>) -> R<Self> {
        let id = |s: &str| uarg_core::af::ArgumentId::new(s).map_err(err);
        let pairs = pairs
            .iter()
            .map(|(x, y)| Ok((id(x)?, id(y)?)))
            .collect::<R<Vec<_>>>()?;
        CoreWitness::new(pairs).map(Witness).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> R<Self> {
        CoreWitness::from_json(text).map(Witness).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn pairs(&self) -> Vec<(String, String)> {
        self.0
            .pairs()
            .map(|(x, y)| (x.as_str().to_string(), y.as_str().to_string()))
            .collect()
    }

    fn inverse(&self) -> Self {
        Witness(self.0.inverse())
    }

    fn compose(&self, then: &Witness) -> R<Self> {
        self.0.compose(&then.0).map(Witness).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Witness({})", self.0.to_json())
    }
}

/// An argument-incomplete framework, optionally with dependencies.
#[pyclass(module = "uarg", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
struct ArgIAF(DepArgIAF);

#[pymethods]
impl ArgIAF {
    #[staticmethod]
    fn parse(text: &str) -> R<Self> {
        text::parse_dep_arg_iaf(text).map(ArgIAF).map_err(err)
    }

    fn to_text(&self) -> String {
        text::serialize_dep_arg_iaf(&self.0)
    }

    fn to_dot(&self) -> String {
        if self.0.dependencies().is_empty() {
            arg_iaf_to_dot(self.0.base())
        } else {
            dep_arg_iaf_to_dot(&self.0)
        }
    }

    #[getter]
    fn fixed_args(&self) -> Vec<String> {
        names(self.0.base().fixed_args())
    }

    #[getter]
    fn uncertain_args(&self) -> Vec<String> {
        names(self.0.base().uncertain_args())
    }

    #[getter]
    fn has_dependencies(&self) -> bool {
        !self.0.dependencies().is_empty()
    }

    #[getter]
    fn is_implicative(&self) -> bool {
        inc::is_implicative(&self.0)
    }

    #[pyo3(signature = (bounds=None))]
    fn completions(&self, bounds: Option<&Bounds>) -> R<CompletionSet> {
        inc::completions_dep(&self.0, &core_bounds(bounds))
            .map(CompletionSet)
            .map_err(err)
    }

    /// Translates a dependency-free framework into a rule-uncertain theory.
    fn to_rul_isaf(&self) -> R<(RulIsaf, Witness)> {
        let (r, w) = tr::arg_iaf_to_rul_isaf(self.plain()?).map_err(err)?;
        Ok((RulIsaf(r), Witness(w)))
    }

    /// Translates a dependency-free framework into a premise-uncertain theory.
    fn to_prem_isaf(&self) -> R<(PremIsaf, Witness)> {
        let (p, w) = tr::arg_iaf_to_prem_isaf(self.plain()?).map_err(err)?;
        Ok((PremIsaf(p), Witness(w)))
    }

    /// Dependencies over this framework's arguments whose completions are
    /// exactly `target`.
    #[pyo3(signature = (target, minimize=false, bounds=None))]
    fn synthesize_dependencies(&self, target: &CompletionSet, minimize: bool, bounds: Option<&Bounds>) -> R<ArgIAF> {
        let b = core_bounds(bounds);
        let base = self.plain()?;
        let mut deps = inc::synthesize_dependencies(base, &target.0, &b).map_err(err)?;
        if minimize {
            deps = inc::minimize_dependencies(base, &deps, &b).map_err(err)?;
        }
        DepArgIAF::new(base.clone(), deps).map(ArgIAF).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "ArgIAF(fixed={:?}, uncertain={:?}, dependencies={})",
            self.fixed_args(),
            self.uncertain_args(),
            self.0.dependencies().len()
        )
    }
}

impl ArgIAF {
    fn plain(&self) -> R<&CoreArgIaf> {
        if !self.0.dependencies().is_empty() {
            return Err(err(uarg_core::Error::InvalidFramework(
                "this operation takes a framework without dependencies".into(),
            )));
        }
        Ok(self.0.base())
    }
}

fn delta(full: bool) -> DeltaMode {
    if full {
        DeltaMode::Full
    } else {
        DeltaMode::Minimal
    }
}

/// A structured theory without uncertainty.
#[pyclass(module = "uarg", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Theory(Saf);

#[pymethods]
impl Theory {
    fn to_json(&self) -> String {
        TheoryDoc::of_saf(&self.0).to_json()
    }

    #[pyo3(signature = (bounds=None))]
    fn associated_af(&self, bounds: Option<&Bounds>) -> R<AF> {
        self.0.associated_af(&core_bounds(bounds)).map(AF).map_err(err)
    }
}

/// A structured theory with uncertain rules.
#[pyclass(module = "uarg", frozen, skip_from_py_object)]
#[derive(Clone)]
struct RulIsaf(CoreRul);

#[pymethods]
impl RulIsaf {
    #[staticmethod]
    fn from_json(text: &str) -> R<Self> {
        TheoryDoc::parse(text)
            .and_then(|d| d.rul_isaf())
            .map(RulIsaf)
            .map_err(err)
    }

    fn to_json(&self) -> String {
        TheoryDoc::of_rul_isaf(&self.0).to_json()
    }

    #[pyo3(signature = (bounds=None))]
    fn completions(&self, bounds: Option<&Bounds>) -> R<CompletionSet> {
        completions_rul(&self.0, &core_bounds(bounds))
            .map(CompletionSet)
            .map_err(err)
    }

    #[pyo3(signature = (full_delta=false, bounds=None))]
    fn to_imp_arg_iaf(&self, full_delta: bool, bounds: Option<&Bounds>) -> R<(ArgIAF, Witness)> {
        let (d, w) = tr::rul_isaf_to_imp_arg_iaf(&self.0, delta(full_delta), &core_bounds(bounds)).map_err(err)?;
        Ok((ArgIAF(d), Witness(w)))
    }
}

/// A structured theory with uncertain axioms or premises.
#[pyclass(module = "uarg", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PremIsaf(CorePrem);

#[pymethods]
impl PremIsaf {
    #[staticmethod]
    fn from_json(text: &str) -> R<Self> {
        TheoryDoc::parse(text)
            .and_then(|d| d.prem_isaf())
            .map(PremIsaf)
            .map_err(err)
    }

    fn to_json(&self) -> String {
        TheoryDoc::of_prem_isaf(&self.0).to_json()
    }

    #[getter]
    fn is_tidy(&self) -> bool {
        self.0.is_tidy()
    }

    #[pyo3(signature = (bounds=None))]
    fn completions(&self, bounds: Option<&Bounds>) -> R<CompletionSet> {
        completions_prem(&self.0, &core_bounds(bounds))
            .map(CompletionSet)
            .map_err(err)
    }

    #[pyo3(signature = (full_delta=false, bounds=None))]
    fn to_imp_arg_iaf(&self, full_delta: bool, bounds: Option<&Bounds>) -> R<(ArgIAF, Witness)> {
        let (d, w) = tr::prem_isaf_to_imp_arg_iaf(&self.0, delta(full_delta), &core_bounds(bounds)).map_err(err)?;
        Ok((ArgIAF(d), Witness(w)))
    }

    #[pyo3(signature = (bounds=None))]
    fn tidy(&self, bounds: Option<&Bounds>) -> R<(PremIsaf, Witness)> {
        let (p, w) = tr::tidy(&self.0, &core_bounds(bounds)).map_err(err)?;
        Ok((PremIsaf(p), Witness(w)))
    }

    #[pyo3(signature = (bounds=None))]
    fn to_rul_isaf(&self, bounds: Option<&Bounds>) -> R<(RulIsaf, Witness)> {
        let (r, w) = tr::prem_isaf_to_rul_isaf(&self.0, &core_bounds(bounds)).map_err(err)?;
        Ok((RulIsaf(r), Witness(w)))
    }
}

/// Loads a structured theory document as whichever kind it describes.
#[pyfunction]
fn load_theory(py: Python<'_>, text: &str) -> R<Py<PyAny>> {
    let s = TheoryDoc::parse(text).and_then(|d| d.structured()).map_err(err)?;
    Ok(match s {
        Structured::Saf(s) => Theory(s).into_pyobject(py)?.into_any().unbind(),
        Structured::Rul(r) => RulIsaf(r).into_pyobject(py)?.into_any().unbind(),
        Structured::Prem(p) => PremIsaf(p).into_pyobject(py)?.into_any().unbind(),
    })
}

/// Searches for a witness of equivalence; returns `(equivalent, witness)`.
#[pyfunction]
#[pyo3(signature = (left, right, identity_only=false, bounds=None))]
fn equivalent(
    py: Python<'_>,
    left: &CompletionSet,
    right: &CompletionSet,
    identity_only: bool,
    bounds: Option<&Bounds>,
) -> R<(bool, Option<Witness>)> {
    let b = core_bounds(bounds);
    let opts = SearchOptions {
        identity_only,
        ..SearchOptions::default()
    };
    let r = py
        .detach(|| eq::equivalent_with(&left.0, &right.0, &b, opts))
        .map_err(err)?;
    Ok((r.is_equivalent(), r.witness.map(Witness)))
}

/// Whether `witness` maps `left` onto `right`.
#[pyfunction]
fn check_witness(left: &CompletionSet, right: &CompletionSet, witness: &Witness) -> R<bool> {
    eq::check_witness(&left.0, &right.0, &witness.0).map_err(err)
}

/// Whether no arg-IAF on at most `max_args` arguments has completions
/// equivalent to `target`.
#[pyfunction]
#[pyo3(signature = (target, max_args, bounds=None))]
fn no_equivalent_arg_iaf(py: Python<'_>, target: &CompletionSet, max_args: usize, bounds: Option<&Bounds>) -> R<bool> {
    let b = core_bounds(bounds);
    py.detach(|| eq::no_equivalent_arg_iaf(&target.0, max_args, &b))
        .map_err(err)
}

#[pyfunction]
fn fixture_names() -> Vec<&'static str> {
    fx::NAMES.to_vec()
}

/// A built-in instance. Completion-set pairs come back as a tuple.
#[pyfunction]
fn fixture(py: Python<'_>, name: &str) -> R<Py<PyAny>> {
    Ok(match fx::fixture(name).map_err(err)? {
        Fixture::ArgIaf(x) => ArgIAF(DepArgIAF::without_dependencies(x)).into_pyobject(py)?.into_any().unbind(),
        Fixture::DepArgIaf(x) => ArgIAF(x).into_pyobject(py)?.into_any().unbind(),
        Fixture::Saf(x) => Theory(x).into_pyobject(py)?.into_any().unbind(),
        Fixture::RulIsaf(x) => RulIsaf(x).into_pyobject(py)?.into_any().unbind(),
        Fixture::PremIsaf(x) => PremIsaf(x).into_pyobject(py)?.into_any().unbind(),
        Fixture::SetPair(s, t) => (CompletionSet(s), CompletionSet(t)).into_pyobject(py)?.into_any().unbind(),
    })
}

#[pymodule]
fn uarg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("UargError", m.py().get_type::<UargError>())?;
    m.add_class::<Bounds>()?;
    m.add_class::<AF>()?;
    m.add_class::<CompletionSet>()?;
    m.add_class::<Witness>()?;
    m.add_class::<ArgIAF>()?;
    m.add_class::<Theory>()?;
    m.add_class::<RulIsaf>()?;
    m.add_class::<PremIsaf>()?;
    m.add_function(wrap_pyfunction!(load_theory, m)?)?;
    m.add_function(wrap_pyfunction!(equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(check_witness, m)?)?;
    m.add_function(wrap_pyfunction!(no_equivalent_arg_iaf, m)?)?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    m.add_function(wrap_pyfunction!(fixture, m)?)?;
    Ok(())
}
