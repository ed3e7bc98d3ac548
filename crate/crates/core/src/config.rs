/// Resource bounds shared by the enumeration and search routines.
///
/// Hitting any of these is reported as an error; results are never silently
/// truncated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Maximum number of uncertain elements (arguments, rules or premises)
    /// whose subsets are enumerated.
    pub max_uncertain: usize,
    /// Maximum number of structured arguments generated per theory.
    pub max_arguments: usize,
    /// Maximum inference depth of a structured argument.
    pub max_depth: usize,
    /// Maximum size of the argument union handled by the bijection search.
    pub max_search_args: usize,
    /// Maximum framework size for the bounded arg-IAF non-existence search.
    pub max_iaf_args: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_uncertain: 20,
            max_arguments: 10_000,
            max_depth: 50,
            max_search_args: 16,
            max_iaf_args: 6,
        }
    }
}

impl Bounds {
    pub(crate) fn check_uncertain(&self, actual: usize) -> crate::Result<()> {
        if actual > self.max_uncertain || actual >= 64 {
            return Err(crate::Error::UncertaintyBoundExceeded {
                actual,
                bound: self.max_uncertain.min(63),
            });
        }
        Ok(())
    }
}
