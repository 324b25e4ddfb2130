use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupModel};
use crate::spectral::{rng, ComplexMatrix};

/// An element of `E_k(G) ⊗ M_d(C)`: a finitely supported map from the sphere
/// `S_k` to `d × d` complex matrices. Scalar functions are the `d = 1` case.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereFunction {
    group: GroupModel,
    k: usize,
    dim: usize,
    support: BTreeMap<GroupElement, ComplexMatrix>,
}

impl SphereFunction {
    pub fn zero(group: GroupModel, k: usize, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("coefficient dimension must be positive".into()));
        }
        Ok(Self {
            group,
            k,
            dim,
            support: BTreeMap::new(),
        })
    }

    pub fn from_entries(
        group: GroupModel,
        k: usize,
        dim: usize,
        entries: impl IntoIterator<Item = (GroupElement, ComplexMatrix)>,
    ) -> Result<Self> {
        let mut f = Self::zero(group, k, dim)?;
        for (x, c) in entries {
            f.insert(x, c)?;
        }
        Ok(f)
    }

    pub fn scalar(
        group: GroupModel,
        k: usize,
        entries: impl IntoIterator<Item = (GroupElement, Complex64)>,
    ) -> Result<Self> {
        Self::from_entries(
            group,
            k,
            1,
            entries.into_iter().map(|(x, c)| {
                (x, ComplexMatrix::from_dense(1, 1, &[c]).expect("1x1"))
            }),
        )
    }

    /// `δ_x`, supported on the sphere of radius `ℓ(x)`.
    pub fn delta(group: GroupModel, x: GroupElement) -> Result<Self> {
        let k = group.word_length(&x)?;
        Self::scalar(group, k, [(x, Complex64::new(1.0, 0.0))])
    }

    /// `χ_{S_k}`.
    pub fn sphere_indicator(group: GroupModel, k: usize) -> Result<Self> {
        let sphere = group.enumerate_sphere(k)?;
        Self::scalar(
            group,
            k,
            sphere.iter().map(|x| (x.clone(), Complex64::new(1.0, 0.0))),
        )
    }

    /// Keeps each `x ∈ S_k` with probability `density` and gives it i.i.d.
    /// standard complex Gaussian coefficients. Deterministic in its arguments.
    pub fn random(group: GroupModel, k: usize, dim: usize, density: f64, seed: u64) -> Result<Self> {
        if !(density > 0.0 && density <= 1.0) {
            return Err(Error::InvalidInput(format!("density {density} not in (0, 1]")));
        }
        let sphere = group.enumerate_sphere(k)?;
        let mut g = rng::seeded(seed);
        let mut f = Self::zero(group, k, dim)?;
        for x in sphere.iter() {
            if density < 1.0 && g.random::<f64>() >= density {
                continue;
            }
            let data: Vec<Complex64> = (0..dim * dim).map(|_| rng::complex_gaussian(&mut g)).collect();
            f.support
                .insert(x.clone(), ComplexMatrix::from_dense(dim, dim, &data)?);
        }
        Ok(f)
    }

    /// Sets `f(x)`; `x` must lie on `S_k` and the coefficient must be `d × d`.
    pub fn insert(&mut self, x: GroupElement, coeff: ComplexMatrix) -> Result<()> {
        let len = self.group.word_length(&x)?;
        if len != self.k {
            return Err(Error::InvalidInput(format!(
                "`{x}` has length {len}, not {}",
                self.k
            )));
        }
        if coeff.shape() != (self.dim, self.dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: if coeff.rows() != self.dim { coeff.rows() } else { coeff.cols() },
            });
        }
        self.support.insert(x, coeff);
        Ok(())
    }

    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_scalar(&self) -> bool {
        self.dim == 1
    }

    pub fn support(&self) -> &BTreeMap<GroupElement, ComplexMatrix> {
        &self.support
    }

    pub fn coeff(&self, x: &GroupElement) -> Option<&ComplexMatrix> {
        self.support.get(x)
    }

    /// Scalar values, if `d = 1`.
    pub fn scalar_values(&self) -> Result<BTreeMap<GroupElement, Complex64>> {
        if !self.is_scalar() {
            return Err(Error::InvalidInput(format!(
                "expected a scalar function, found dimension {}",
                self.dim
            )));
        }
        Ok(self
            .support
            .iter()
            .map(|(x, c)| (x.clone(), c.get(0, 0)))
            .collect())
    }

    /// `(Σ_x ‖f(x)‖_HS²)^{1/2}`; the ℓ² norm for scalar functions.
    pub fn l2_norm(&self) -> f64 {
        self.support
            .values()
            .flat_map(|c| c.triplets().map(|(_, _, v)| v.norm_sqr()))
            .sum::<f64>()
            .sqrt()
    }

    /// `f*(y) = f(y⁻¹)*`.
    pub fn adjoint(&self) -> Self {
        let support = self
            .support
            .iter()
            .map(|(x, c)| (self.group.inverse(x), c.adjoint()))
            .collect();
        Self {
            group: self.group.clone(),
            k: self.k,
            dim: self.dim,
            support,
        }
    }

    /// `(f + f*) / 2`, which is self-adjoint.
    pub fn hermitian_part(&self) -> Self {
        let star = self.adjoint();
        let half = Complex64::new(0.5, 0.0);
        let mut support = BTreeMap::new();
        let keys: std::collections::BTreeSet<&GroupElement> =
            self.support.keys().chain(star.support.keys()).collect();
        for x in keys {
            let sum = match (self.support.get(x), star.support.get(x)) {
                (Some(a), Some(b)) => ComplexMatrix::from_triplets(
                    self.dim,
                    self.dim,
                    a.triplets().chain(b.triplets()),
                )
                .expect("same shape"),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            };
            support.insert(x.clone(), sum.scale(half));
        }
        Self {
            group: self.group.clone(),
            k: self.k,
            dim: self.dim,
            support,
        }
    }

    /// New function with each coefficient replaced by `map(x, f(x))`.
    pub fn map_coefficients(&self, mut map: impl FnMut(&GroupElement, &ComplexMatrix) -> ComplexMatrix) -> Self {
        let support = self
            .support
            .iter()
            .map(|(x, c)| (x.clone(), map(x, c)))
            .collect();
        Self {
            group: self.group.clone(),
            k: self.k,
            dim: self.dim,
            support,
        }
    }

    pub fn to_json(&self) -> String {
        let entries = self
            .support
            .iter()
            .map(|(x, c)| JsonEntry {
                x: x.to_string(),
                coeff: (0..self.dim)
                    .flat_map(|i| (0..self.dim).map(move |j| (i, j)))
                    .map(|(i, j)| {
                        let v = c.get(i, j);
                        (v.re, v.im)
                    })
                    .collect(),
            })
            .collect();
        serde_json::to_string(&JsonFunction {
            group: self.group.to_string(),
            k: self.k,
            dim: self.dim,
            entries,
        })
        .expect("function serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: JsonFunction = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let group: GroupModel = raw.group.parse()?;
        let mut f = Self::zero(group, raw.k, raw.dim)?;
        for e in raw.entries {
            let x = f.group.parse_element(&e.x)?;
            let data: Vec<Complex64> = e.coeff.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
            f.insert(x, ComplexMatrix::from_dense(raw.dim, raw.dim, &data)?)?;
        }
        Ok(f)
    }
}

/// `{"group":"free:2","k":2,"dim":1,"entries":[{"x":"a1^1.a2^1","coeff":[[re,im],...]}]}`,
/// coefficients row-major.
#[derive(Serialize, Deserialize)]
struct JsonFunction {
    group: String,
    k: usize,
    dim: usize,
    entries: Vec<JsonEntry>,
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    x: String,
    coeff: Vec<(f64, f64)>,
}
