use crate::error::{Error, Result};

use super::element::GroupElement;
use super::model::GroupModel;

impl GroupModel {
    /// Splits `x = x₁x₂` after the first `a` letters of its canonical geodesic
    /// word, so `ℓ(x₁) = a` and `ℓ(x₂) = b`.
    pub fn geodesic_split(
        &self,
        x: &GroupElement,
        a: usize,
        b: usize,
    ) -> Result<(GroupElement, GroupElement)> {
        self.validate(x)?;
        let letters = self.letters(x);
        if a + b != letters.len() {
            return Err(Error::InvalidSplit {
                requested: a + b,
                length: letters.len(),
            });
        }
        let (head, tail) = letters.split_at(a);
        Ok((self.from_letters(head), self.from_letters(tail)))
    }

    /// `d_{i,j}(y) = #{(y₁, y₂) ∈ S_i × S_j : y = y₁y₂}`.
    pub fn decomposition_multiplicity(&self, y: &GroupElement, i: usize, j: usize) -> Result<u64> {
        self.validate(y)?;
        let len = self.length(y);
        // triangle inequality: no factorisation exists outside this window
        if j + i < len || len + i < j || len + j < i {
            return Ok(0);
        }
        let sphere = self.enumerate_sphere(i)?;
        Ok(sphere
            .iter()
            .filter(|y1| self.quotient_length(y1, y) == j)
            .count() as u64)
    }

    /// [`decomposition_multiplicity`](Self::decomposition_multiplicity) for
    /// many elements, enumerating `S_i` once.
    pub fn decomposition_multiplicities(
        &self,
        ys: &[GroupElement],
        i: usize,
        j: usize,
    ) -> Result<Vec<u64>> {
        let sphere = self.enumerate_sphere(i)?;
        ys.iter()
            .map(|y| {
                self.validate(y)?;
                Ok(sphere
                    .iter()
                    .filter(|y1| self.quotient_length(y1, y) == j)
                    .count() as u64)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_examples() {
        let g: GroupModel = "free:2".parse().unwrap();
        let x = g.word(&[(0, 1), (1, 1), (0, -1)]).unwrap();
        let (x1, x2) = g.geodesic_split(&x, 1, 2).unwrap();
        assert_eq!(x1, g.generator(0).unwrap());
        assert_eq!(x2, g.word(&[(1, 1), (0, -1)]).unwrap());

        let (x1, x2) = g.geodesic_split(&x, 3, 0).unwrap();
        assert_eq!(x1, x);
        assert!(x2.is_identity());

        let h: GroupModel = "zfp:3,3".parse().unwrap();
        let y = h.word(&[(0, 2), (1, 2)]).unwrap();
        let (y1, y2) = h.geodesic_split(&y, 1, 1).unwrap();
        assert_eq!(y1, h.word(&[(0, 2)]).unwrap());
        assert_eq!(y2, h.word(&[(1, 2)]).unwrap());
    }

    #[test]
    fn split_inside_a_syllable() {
        let g: GroupModel = "free:2".parse().unwrap();
        let x = g.word(&[(0, 3)]).unwrap();
        let (x1, x2) = g.geodesic_split(&x, 1, 2).unwrap();
        assert_eq!(x1, g.word(&[(0, 1)]).unwrap());
        assert_eq!(x2, g.word(&[(0, 2)]).unwrap());
    }

    #[test]
    fn bad_split_lengths() {
        let g: GroupModel = "free:2".parse().unwrap();
        let x = g.word(&[(0, 1), (1, 1)]).unwrap();
        assert_eq!(
            g.geodesic_split(&x, 1, 2),
            Err(Error::InvalidSplit { requested: 3, length: 2 })
        );
    }

    #[test]
    fn multiplicity_examples() {
        let g: GroupModel = "free:2".parse().unwrap();
        let ab = g.word(&[(0, 1), (1, 1)]).unwrap();
        assert_eq!(g.decomposition_multiplicity(&ab, 2, 0).unwrap(), 1);
        assert_eq!(g.decomposition_multiplicity(&ab, 1, 1).unwrap(), 1);

        // brute force over S_2 × S_2
        let s2 = g.enumerate_sphere(2).unwrap();
        let brute = s2
            .iter()
            .flat_map(|y1| s2.iter().map(move |y2| (y1, y2)))
            .filter(|(y1, y2)| g.mul(y1, y2) == ab)
            .count() as u64;
        assert_eq!(brute, 2);
        assert_eq!(g.decomposition_multiplicity(&ab, 2, 2).unwrap(), brute);

        assert_eq!(g.decomposition_multiplicity(&ab, 5, 1).unwrap(), 0);
    }

    #[test]
    fn zfp_multiplicity_can_exceed_one() {
        let h: GroupModel = "zfp:3,3".parse().unwrap();
        let a = h.generator(0).unwrap();
        // a = a²·a² is the only S_1 × S_1 factorisation
        assert_eq!(h.decomposition_multiplicity(&a, 1, 1).unwrap(), 1);
        // a·b ∈ S_2 splits into S_2 × S_1 as (a·b·c, c⁻¹) for c ∈ {a, a²}
        let ab = h.word(&[(0, 1), (1, 1)]).unwrap();
        assert_eq!(h.decomposition_multiplicity(&ab, 3, 1).unwrap(), 2);
    }
}
