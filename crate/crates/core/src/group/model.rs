use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::element::{GroupElement, Letter, Syllable};

/// Default limit on the number of elements a single sphere or ball
/// enumeration may produce.
pub const DEFAULT_ENUMERATION_CAP: usize = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// Free group on `rank` generators with the standard symmetric generating
    /// set `a_i^{±1}`.
    Free { rank: u32 },
    /// Free product `Z/m_1 * ... * Z/m_r`, generated by every non-identity
    /// element of every factor, so word length is the syllable count.
    CyclicFreeProduct { orders: Vec<u32> },
}

/// A finitely generated group with computable normal forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupModel {
    kind: GroupKind,
    cap: usize,
}

impl GroupModel {
    pub fn free(rank: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidGroup("free group rank must be at least 1".into()));
        }
        Ok(Self {
            kind: GroupKind::Free { rank },
            cap: DEFAULT_ENUMERATION_CAP,
        })
    }

    pub fn cyclic_free_product(orders: Vec<u32>) -> Result<Self> {
        if orders.len() < 2 {
            return Err(Error::InvalidGroup(
                "a free product needs at least two cyclic factors".into(),
            ));
        }
        if let Some(m) = orders.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidGroup(format!("cyclic factor order {m} is below 2")));
        }
        Ok(Self {
            kind: GroupKind::CyclicFreeProduct { orders },
            cap: DEFAULT_ENUMERATION_CAP,
        })
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn is_free(&self) -> bool {
        matches!(self.kind, GroupKind::Free { .. })
    }

    pub fn generator_count(&self) -> u32 {
        match &self.kind {
            GroupKind::Free { rank } => *rank,
            GroupKind::CyclicFreeProduct { orders } => orders.len() as u32,
        }
    }

    /// The letters of the symmetric generating set in canonical order:
    /// `a1 < a1^-1 < a2 < ...` for free groups, factor-then-exponent for
    /// free products.
    pub fn alphabet(&self) -> Vec<Letter> {
        match &self.kind {
            GroupKind::Free { rank } => (0..*rank)
                .flat_map(|g| {
                    [1, -1].map(|exponent| Letter {
                        generator: g,
                        exponent,
                    })
                })
                .collect(),
            GroupKind::CyclicFreeProduct { orders } => orders
                .iter()
                .enumerate()
                .flat_map(|(g, &m)| {
                    (1..m as i32).map(move |exponent| Letter {
                        generator: g as u32,
                        exponent,
                    })
                })
                .collect(),
        }
    }

    fn letter_rank(&self, l: Letter) -> (u32, i32) {
        match self.kind {
            GroupKind::Free { .. } => (l.generator, if l.exponent > 0 { 0 } else { 1 }),
            GroupKind::CyclicFreeProduct { .. } => (l.generator, l.exponent),
        }
    }

    /// Short-lex comparison of canonical geodesic words.
    pub fn shortlex_cmp(&self, x: &GroupElement, y: &GroupElement) -> Ordering {
        let (lx, ly) = (self.letters(x), self.letters(y));
        lx.len().cmp(&ly.len()).then_with(|| {
            lx.iter()
                .map(|&l| self.letter_rank(l))
                .cmp(ly.iter().map(|&l| self.letter_rank(l)))
        })
    }

    fn order(&self, generator: u32) -> Option<i32> {
        match &self.kind {
            GroupKind::Free { .. } => None,
            GroupKind::CyclicFreeProduct { orders } => Some(orders[generator as usize] as i32),
        }
    }

    fn normalize_exponent(&self, generator: u32, exponent: i32) -> i32 {
        match self.order(generator) {
            None => exponent,
            Some(m) => exponent.rem_euclid(m),
        }
    }

    /// Checks that `x` is a canonical normal form for this group.
    pub fn validate(&self, x: &GroupElement) -> Result<()> {
        let mut prev: Option<u32> = None;
        for s in x.syllables() {
            if s.generator >= self.generator_count() {
                return Err(Error::InvalidElement(format!(
                    "generator a{} out of range for {self}",
                    s.generator + 1
                )));
            }
            let ok = match self.order(s.generator) {
                None => s.exponent != 0,
                Some(m) => (1..m).contains(&s.exponent),
            };
            if !ok {
                return Err(Error::InvalidElement(format!(
                    "exponent {} of a{} is not canonical in {self}",
                    s.exponent,
                    s.generator + 1
                )));
            }
            if prev == Some(s.generator) {
                return Err(Error::InvalidElement(format!(
                    "adjacent syllables share generator a{} in `{x}`",
                    s.generator + 1
                )));
            }
            prev = Some(s.generator);
        }
        Ok(())
    }

    /// Parses an element string and checks it is in normal form.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        let x: GroupElement = s.parse()?;
        self.validate(&x)?;
        Ok(x)
    }

    /// Reduces an arbitrary word of `(generator, exponent)` pairs
    /// (0-based generators) to its normal form.
    pub fn word(&self, word: &[(u32, i32)]) -> Result<GroupElement> {
        let mut out = GroupElement::identity();
        for &(generator, exponent) in word {
            if generator >= self.generator_count() {
                return Err(Error::InvalidElement(format!(
                    "generator a{} out of range for {self}",
                    generator + 1
                )));
            }
            self.push_syllable(&mut out, Syllable { generator, exponent });
        }
        Ok(out)
    }

    /// The `i`-th generator (0-based) as a group element.
    pub fn generator(&self, i: u32) -> Result<GroupElement> {
        self.word(&[(i, 1)])
    }

    fn push_syllable(&self, out: &mut GroupElement, s: Syllable) {
        let exponent = self.normalize_exponent(s.generator, s.exponent);
        if exponent == 0 {
            return;
        }
        let syl = out.syllables_mut();
        match syl.last_mut() {
            Some(last) if last.generator == s.generator => {
                let merged = self.normalize_exponent(s.generator, last.exponent + exponent);
                if merged == 0 {
                    syl.pop();
                } else {
                    last.exponent = merged;
                }
            }
            _ => syl.push(Syllable {
                generator: s.generator,
                exponent,
            }),
        }
    }

    /// Word length of a normal form, without validation.
    pub fn length(&self, x: &GroupElement) -> usize {
        match self.kind {
            GroupKind::Free { .. } => x
                .syllables()
                .iter()
                .map(|s| s.exponent.unsigned_abs() as usize)
                .sum(),
            GroupKind::CyclicFreeProduct { .. } => x.syllables().len(),
        }
    }

    /// Word length `ℓ(x)` with respect to the symmetric generating set.
    pub fn word_length(&self, x: &GroupElement) -> Result<usize> {
        self.validate(x)?;
        Ok(self.length(x))
    }

    /// Product of two normal forms, without validation.
    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let mut out = x.clone();
        for &s in y.syllables() {
            self.push_syllable(&mut out, s);
        }
        out
    }

    /// `x · y` in canonical normal form.
    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.validate(x)?;
        self.validate(y)?;
        Ok(self.mul(x, y))
    }

    pub fn inverse(&self, x: &GroupElement) -> GroupElement {
        let syllables = x
            .syllables()
            .iter()
            .rev()
            .map(|s| Syllable {
                generator: s.generator,
                exponent: self.normalize_exponent(s.generator, -s.exponent),
            })
            .collect();
        GroupElement::from_syllables_unchecked(syllables)
    }

    /// Length of `x⁻¹ · y` without materialising the inverse.
    pub fn quotient_length(&self, x: &GroupElement, y: &GroupElement) -> usize {
        self.length(&self.mul(&self.inverse(x), y))
    }

    /// The canonical geodesic word of `x`, letter by letter.
    pub fn letters(&self, x: &GroupElement) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.length(x));
        for s in x.syllables() {
            match self.kind {
                GroupKind::Free { .. } => {
                    let sign = s.exponent.signum();
                    out.extend((0..s.exponent.abs()).map(|_| Letter {
                        generator: s.generator,
                        exponent: sign,
                    }));
                }
                GroupKind::CyclicFreeProduct { .. } => out.push(Letter {
                    generator: s.generator,
                    exponent: s.exponent,
                }),
            }
        }
        out
    }

    pub fn last_letter(&self, x: &GroupElement) -> Option<Letter> {
        x.syllables().last().map(|s| match self.kind {
            GroupKind::Free { .. } => Letter {
                generator: s.generator,
                exponent: s.exponent.signum(),
            },
            GroupKind::CyclicFreeProduct { .. } => Letter {
                generator: s.generator,
                exponent: s.exponent,
            },
        })
    }

    /// Whether `next` may follow `prev` in a geodesic word.
    pub fn can_follow(&self, prev: Letter, next: Letter) -> bool {
        match self.kind {
            GroupKind::Free { .. } => {
                prev.generator != next.generator || prev.exponent == next.exponent
            }
            GroupKind::CyclicFreeProduct { .. } => prev.generator != next.generator,
        }
    }

    /// Appends a letter that is allowed to follow the last letter of `x`,
    /// so the result is one longer.
    pub(crate) fn append_letter(&self, x: &GroupElement, letter: Letter) -> GroupElement {
        let mut out = x.clone();
        let syl = out.syllables_mut();
        match (self.is_free(), syl.last_mut()) {
            (true, Some(last)) if last.generator == letter.generator => {
                last.exponent += letter.exponent;
            }
            _ => syl.push(Syllable {
                generator: letter.generator,
                exponent: letter.exponent,
            }),
        }
        out
    }

    /// Rebuilds an element from a reduced letter sequence.
    pub fn from_letters(&self, letters: &[Letter]) -> GroupElement {
        let mut out = GroupElement::identity();
        for &l in letters {
            self.push_syllable(
                &mut out,
                Syllable {
                    generator: l.generator,
                    exponent: l.exponent,
                },
            );
        }
        out
    }

    /// `#S_k`, computed by counting rather than enumeration. Saturates at
    /// `u128::MAX`.
    pub fn sphere_size(&self, k: usize) -> u128 {
        if k == 0 {
            return 1;
        }
        match &self.kind {
            GroupKind::Free { rank } => {
                let r = *rank as u128;
                let mut n = 2 * r;
                for _ in 1..k {
                    n = n.saturating_mul(2 * r - 1);
                }
                n
            }
            GroupKind::CyclicFreeProduct { orders } => {
                // ending[g] = number of length-t words whose last syllable lies in factor g
                let mut ending: Vec<u128> = orders.iter().map(|&m| (m - 1) as u128).collect();
                for _ in 1..k {
                    let total: u128 = ending.iter().fold(0, |a, &b| a.saturating_add(b));
                    ending = orders
                        .iter()
                        .zip(&ending)
                        .map(|(&m, &e)| ((m - 1) as u128).saturating_mul(total - e))
                        .collect();
                }
                ending.iter().fold(0, |a, &b| a.saturating_add(b))
            }
        }
    }

    /// `#B_s = Σ_{k ≤ s} #S_k`.
    pub fn ball_size(&self, s: usize) -> u128 {
        (0..=s).fold(0u128, |acc, k| acc.saturating_add(self.sphere_size(k)))
    }

    pub(crate) fn check_cap(&self, what: impl FnOnce() -> String, requested: u128) -> Result<()> {
        if requested > self.cap as u128 {
            return Err(Error::ResourceLimit {
                what: what(),
                requested,
                cap: self.cap,
            });
        }
        Ok(())
    }
}

impl fmt::Display for GroupModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GroupKind::Free { rank } => write!(f, "free:{rank}"),
            GroupKind::CyclicFreeProduct { orders } => {
                let orders: Vec<String> = orders.iter().map(u32::to_string).collect();
                write!(f, "zfp:{}", orders.join(","))
            }
        }
    }
}

/// Parses `free:R` or `zfp:M1,M2,...`.
impl FromStr for GroupModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidGroup(s.to_string());
        let (kind, args) = s.trim().split_once(':').ok_or_else(bad)?;
        match kind {
            "free" => {
                let rank: u32 = args.trim().parse().map_err(|_| bad())?;
                Self::free(rank)
            }
            "zfp" => {
                let orders = args
                    .split(',')
                    .map(|m| m.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                Self::cyclic_free_product(orders)
            }
            _ => Err(bad()),
        }
    }
}
