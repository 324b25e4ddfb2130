use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// One `generator^exponent` block of a normal form. Generators are 0-based
/// internally and printed 1-based (`a1`, `a2`, ...).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub generator: u32,
    pub exponent: i32,
}

/// A single letter of the canonical geodesic word.
///
/// For free groups the exponent is `+1` or `-1`; for free products of cyclic
/// groups every non-identity element of a factor is a letter, so the exponent
/// lies in `1..m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: u32,
    pub exponent: i32,
}

/// A group element stored as its reduced syllable normal form.
///
/// Elements are only meaningful relative to a [`GroupModel`](super::GroupModel),
/// which checks and produces canonical forms. Equality is equality of normal
/// forms. The derived ordering is lexicographic on syllables and is only used
/// for deterministic map iteration; enumeration order is short-lex and comes
/// from the model.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    syllables: Vec<Syllable>,
}

impl GroupElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Wraps syllables without checking that they are reduced. Use
    /// [`GroupModel::validate`](super::GroupModel::validate) or
    /// [`GroupModel::word`](super::GroupModel::word) for untrusted input.
    pub fn from_syllables_unchecked(syllables: Vec<Syllable>) -> Self {
        Self { syllables }
    }

    pub(crate) fn syllables_mut(&mut self) -> &mut Vec<Syllable> {
        &mut self.syllables
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("e");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "a{}^{}", s.generator + 1, s.exponent)?;
        }
        Ok(())
    }
}

/// Syntactic parse of `a1^1.a2^-1` (or `e`). The result still has to be
/// validated against a group model.
impl FromStr for GroupElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(Self::identity());
        }
        let mut syllables = Vec::new();
        for part in s.split('.') {
            let bad = || Error::InvalidElement(format!("malformed syllable `{part}` in `{s}`"));
            let rest = part.strip_prefix('a').ok_or_else(bad)?;
            let (gen, exp) = match rest.split_once('^') {
                Some((g, e)) => (g, e.parse::<i32>().map_err(|_| bad())?),
                None => (rest, 1),
            };
            let gen: u32 = gen.parse().map_err(|_| bad())?;
            if gen == 0 {
                return Err(bad());
            }
            syllables.push(Syllable {
                generator: gen - 1,
                exponent: exp,
            });
        }
        Ok(Self { syllables })
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
