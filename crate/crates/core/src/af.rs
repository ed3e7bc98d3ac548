//! Abstract argumentation frameworks and Dung-style semantics.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Opaque argument name.
///
/// Identity is exact string equality and the order is lexicographic. Names may
/// contain punctuation (structured arguments are named by their canonical
/// serialization) but never whitespace, control characters, quotes or
/// backslashes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArgumentId(Arc<str>);

impl ArgumentId {
    pub fn new(name: impl AsRef<str>) -> Result<Self> {
        let name = name.as_ref();
        if name.is_empty()
            || name
                .chars()
                .any(|c| c.is_whitespace() || c.is_control() || c == '"' || c == '\\')
        {
            return Err(Error::InvalidIdentifier(name.to_string()));
        }
        Ok(ArgumentId(Arc::from(name)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for ArgumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for ArgumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for ArgumentId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ArgumentId::new(s)
    }
}

impl Serialize for ArgumentId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for ArgumentId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        ArgumentId::new(s).map_err(serde::de::Error::custom)
    }
}

/// Builds an id from a literal known to be valid. Panics otherwise.
pub fn id(name: &str) -> ArgumentId {
    ArgumentId::new(name).expect("valid argument id")
}

pub type Defeat = (ArgumentId, ArgumentId);

/// A set of jointly accepted arguments.
pub type Extension = BTreeSet<ArgumentId>;

/// A finite directed graph of arguments and defeats, stored canonically.
///
/// Both components are ordered sets, so structural equality, ordering and
/// hashing coincide with set semantics.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbstractAF {
    args: BTreeSet<ArgumentId>,
    defeats: BTreeSet<Defeat>,
}

impl AbstractAF {
    pub fn new(
        args: impl IntoIterator<Item = ArgumentId>,
        defeats: impl IntoIterator<Item = Defeat>,
    ) -> Result<Self> {
        let args: BTreeSet<_> = args.into_iter().collect();
        let defeats: BTreeSet<_> = defeats.into_iter().collect();
        for (x, y) in &defeats {
            for end in [x, y] {
                if !args.contains(end) {
                    return Err(Error::UndeclaredArgument(end.to_string()));
                }
            }
        }
        Ok(AbstractAF { args, defeats })
    }

    /// Convenience constructor from string literals. Panics on invalid input.
    pub fn from_strs(args: &[&str], defeats: &[(&str, &str)]) -> Self {
        AbstractAF::new(
            args.iter().map(|a| id(a)),
            defeats.iter().map(|(x, y)| (id(x), id(y))),
        )
        .expect("well-formed framework")
    }

    pub(crate) fn from_parts_unchecked(
        args: BTreeSet<ArgumentId>,
        defeats: BTreeSet<Defeat>,
    ) -> Self {
        debug_assert!(defeats
            .iter()
            .all(|(x, y)| args.contains(x) && args.contains(y)));
        AbstractAF { args, defeats }
    }

    pub fn empty() -> Self {
        AbstractAF::default()
    }

    pub fn args(&self) -> &BTreeSet<ArgumentId> {
        &self.args
    }

    pub fn defeats(&self) -> &BTreeSet<Defeat> {
        &self.defeats
    }

    pub fn contains(&self, arg: &ArgumentId) -> bool {
        self.args.contains(arg)
    }

    pub fn defeats_pair(&self, x: &ArgumentId, y: &ArgumentId) -> bool {
        self.defeats.contains(&(x.clone(), y.clone()))
    }

    /// `⟨args ∩ keep, defeats ∩ (keep × keep)⟩`. Ids in `keep` that are not
    /// arguments of `self` are ignored.
    pub fn restrict(&self, keep: &BTreeSet<ArgumentId>) -> AbstractAF {
        let args = self.args.intersection(keep).cloned().collect();
        let defeats = self
            .defeats
            .iter()
            .filter(|(x, y)| keep.contains(x) && keep.contains(y))
            .cloned()
            .collect();
        AbstractAF { args, defeats }
    }

    fn check_members(&self, ext: &Extension) -> Result<()> {
        match ext.iter().find(|a| !self.args.contains(*a)) {
            Some(a) => Err(Error::MemberNotInAf(a.to_string())),
            None => Ok(()),
        }
    }

    pub fn is_conflict_free(&self, ext: &Extension) -> Result<bool> {
        self.check_members(ext)?;
        Ok(!self
            .defeats
            .iter()
            .any(|(x, y)| ext.contains(x) && ext.contains(y)))
    }

    pub fn is_admissible(&self, ext: &Extension) -> Result<bool> {
        if !self.is_conflict_free(ext)? {
            return Ok(false);
        }
        let defended = self
            .defeats
            .iter()
            .filter(|(_, target)| ext.contains(target))
            .all(|(attacker, _)| {
                self.defeats
                    .iter()
                    .any(|(z, a)| a == attacker && ext.contains(z))
            });
        Ok(defended)
    }

    /// All σ-extensions, in canonical order.
    ///
    /// Grounded works at any size; the other semantics enumerate conflict-free
    /// subsets and are limited to 64 arguments.
    pub fn extensions(&self, sigma: Semantics) -> Result<BTreeSet<Extension>> {
        if sigma == Semantics::Grounded {
            return Ok(BTreeSet::from([self.grounded_extension()]));
        }
        let index = Indexed::new(self)?;
        let masks = index.extensions(sigma);
        Ok(masks.into_iter().map(|m| index.members(m)).collect())
    }

    /// Least fixpoint of the characteristic function.
    pub fn grounded_extension(&self) -> Extension {
        let mut ext = Extension::new();
        loop {
            let attacked: BTreeSet<&ArgumentId> = self
                .defeats
                .iter()
                .filter(|(x, _)| ext.contains(x))
                .map(|(_, y)| y)
                .collect();
            let next: Extension = self
                .args
                .iter()
                .filter(|a| {
                    self.defeats
                        .iter()
                        .filter(|(_, y)| y == *a)
                        .all(|(x, _)| attacked.contains(x))
                })
                .cloned()
                .collect();
            if next == ext {
                return ext;
            }
            ext = next;
        }
    }

    /// Applies an id renaming to every argument and defeat.
    pub fn rename(&self, f: impl Fn(&ArgumentId) -> ArgumentId) -> AbstractAF {
        AbstractAF {
            args: self.args.iter().map(&f).collect(),
            defeats: self.defeats.iter().map(|(x, y)| (f(x), f(y))).collect(),
        }
    }
}

/// Set equality of arguments and defeats.
pub fn af_equal(x: &AbstractAF, y: &AbstractAF) -> bool {
    x == y
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Semantics {
    Admissible,
    Complete,
    Grounded,
    Preferred,
    Stable,
}

impl Semantics {
    pub const ALL: [Semantics; 5] = [
        Semantics::Admissible,
        Semantics::Complete,
        Semantics::Grounded,
        Semantics::Preferred,
        Semantics::Stable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Semantics::Admissible => "admissible",
            Semantics::Complete => "complete",
            Semantics::Grounded => "grounded",
            Semantics::Preferred => "preferred",
            Semantics::Stable => "stable",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Semantics::ALL
            .into_iter()
            .find(|sem| sem.name().eq_ignore_ascii_case(s) || s.eq_ignore_ascii_case(&sem.name()[..2]))
            .ok_or_else(|| Error::InvalidFramework(format!("unknown semantics `{s}`")))
    }
}

/// Bitmask view of a framework with at most 64 arguments.
struct Indexed<'a> {
    ids: Vec<&'a ArgumentId>,
    /// `attackers[i]` has bit j set iff j defeats i.
    attackers: Vec<u64>,
    /// `targets[i]` has bit j set iff i defeats j.
    targets: Vec<u64>,
}

impl<'a> Indexed<'a> {
    fn new(af: &'a AbstractAF) -> Result<Self> {
        let ids: Vec<&ArgumentId> = af.args.iter().collect();
        if ids.len() > 64 {
            return Err(Error::InvalidFramework(format!(
                "semantics enumeration supports at most 64 arguments, got {}",
                ids.len()
            )));
        }
        let pos = |a: &ArgumentId| ids.binary_search(&a).expect("defeat endpoint is an argument");
        let mut attackers = vec![0u64; ids.len()];
        let mut targets = vec![0u64; ids.len()];
        for (x, y) in &af.defeats {
            let (i, j) = (pos(x), pos(y));
            attackers[j] |= 1 << i;
            targets[i] |= 1 << j;
        }
        Ok(Indexed {
            ids,
            attackers,
            targets,
        })
    }

    fn members(&self, mask: u64) -> Extension {
        (0..self.ids.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.ids[i].clone())
            .collect()
    }

    fn all(&self) -> u64 {
        if self.ids.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.ids.len()) - 1
        }
    }

    fn conflict_free_sets(&self) -> Vec<u64> {
        let mut out = Vec::new();
        self.extend_conflict_free(0, 0, &mut out);
        out
    }

    fn extend_conflict_free(&self, i: usize, cur: u64, out: &mut Vec<u64>) {
        if i == self.ids.len() {
            out.push(cur);
            return;
        }
        self.extend_conflict_free(i + 1, cur, out);
        let bit = 1u64 << i;
        let clash = (self.attackers[i] | self.targets[i]) & (cur | bit);
        if clash == 0 {
            self.extend_conflict_free(i + 1, cur | bit, out);
        }
    }

    fn attacked_by(&self, set: u64) -> u64 {
        (0..self.ids.len())
            .filter(|i| set >> i & 1 == 1)
            .fold(0, |acc, i| acc | self.targets[i])
    }

    fn defended_by(&self, set: u64) -> u64 {
        let attacked = self.attacked_by(set);
        (0..self.ids.len())
            .filter(|&i| self.attackers[i] & !attacked == 0)
            .fold(0, |acc, i| acc | 1 << i)
    }

    fn is_admissible(&self, set: u64) -> bool {
        set & !self.defended_by(set) == 0
    }

    fn extensions(&self, sigma: Semantics) -> Vec<u64> {
        let cf = self.conflict_free_sets();
        match sigma {
            Semantics::Admissible => cf.into_iter().filter(|&s| self.is_admissible(s)).collect(),
            Semantics::Complete => cf
                .into_iter()
                .filter(|&s| self.defended_by(s) == s)
                .collect(),
            Semantics::Stable => cf
                .into_iter()
                .filter(|&s| (s | self.attacked_by(s)) == self.all())
                .collect(),
            Semantics::Preferred => {
                let mut adm: Vec<u64> =
                    cf.into_iter().filter(|&s| self.is_admissible(s)).collect();
                adm.sort_by_key(|s| std::cmp::Reverse(s.count_ones()));
                let mut maximal: Vec<u64> = Vec::new();
                for s in adm {
                    if !maximal.iter().any(|&m| s & m == s) {
                        maximal.push(s);
                    }
                }
                maximal
            }
            Semantics::Grounded => {
                let mut ext = 0u64;
                loop {
                    let next = self.defended_by(ext);
                    if next == ext {
                        return vec![ext];
                    }
                    ext = next;
                }
            }
        }
    }
}
