use std::collections::HashMap;

use crate::error::Result;

use super::element::GroupElement;
use super::model::GroupModel;

/// The sphere `S_k` as a short-lex ordered list with a reverse lookup.
#[derive(Debug, Clone)]
pub struct SphereIndex {
    radius: usize,
    elements: Vec<GroupElement>,
    position: HashMap<GroupElement, usize>,
}

impl SphereIndex {
    fn new(radius: usize, elements: Vec<GroupElement>) -> Self {
        let position = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i))
            .collect();
        Self {
            radius,
            elements,
            position,
        }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> Option<&GroupElement> {
        self.elements.get(i)
    }

    pub fn index_of(&self, x: &GroupElement) -> Option<usize> {
        self.position.get(x).copied()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GroupElement> {
        self.elements.iter()
    }
}

/// The ball `B_s`, stored as the concatenation of the spheres `S_0, ..., S_s`.
#[derive(Debug, Clone)]
pub struct BallIndex {
    radius: usize,
    elements: Vec<GroupElement>,
    position: HashMap<GroupElement, usize>,
    sphere_offsets: Vec<usize>,
}

impl BallIndex {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn index_of(&self, x: &GroupElement) -> Option<usize> {
        self.position.get(x).copied()
    }

    /// Index range of `S_k` inside the ball.
    pub fn sphere_range(&self, k: usize) -> std::ops::Range<usize> {
        self.sphere_offsets[k]..self.sphere_offsets[k + 1]
    }
}

impl GroupModel {
    /// Enumerates `S_k` in short-lex order.
    pub fn enumerate_sphere(&self, k: usize) -> Result<SphereIndex> {
        self.check_cap(|| format!("sphere S_{k} of {self}"), self.sphere_size(k))?;
        let last = self.grow_spheres(k).pop().unwrap_or_default();
        Ok(SphereIndex::new(k, last))
    }

    /// Enumerates `S_0, ..., S_s`.
    pub fn enumerate_spheres(&self, s: usize) -> Result<Vec<SphereIndex>> {
        self.check_cap(|| format!("ball B_{s} of {self}"), self.ball_size(s))?;
        Ok(self
            .grow_spheres(s)
            .into_iter()
            .enumerate()
            .map(|(k, elems)| SphereIndex::new(k, elems))
            .collect())
    }

    /// Enumerates `B_s` as the concatenation of spheres `0..=s`.
    pub fn enumerate_ball(&self, s: usize) -> Result<BallIndex> {
        self.check_cap(|| format!("ball B_{s} of {self}"), self.ball_size(s))?;
        let spheres = self.grow_spheres(s);
        let mut sphere_offsets = vec![0];
        let mut elements = Vec::new();
        for sphere in spheres {
            elements.extend(sphere);
            sphere_offsets.push(elements.len());
        }
        let position = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i))
            .collect();
        Ok(BallIndex {
            radius: s,
            elements,
            position,
            sphere_offsets,
        })
    }

    // Extending each word of S_{t-1} (in short-lex order) by each admissible
    // letter (in alphabet order) yields S_t in short-lex order.
    fn grow_spheres(&self, s: usize) -> Vec<Vec<GroupElement>> {
        let alphabet = self.alphabet();
        let mut spheres = vec![vec![GroupElement::identity()]];
        for t in 1..=s {
            let prev = &spheres[t - 1];
            let mut next = Vec::with_capacity(self.sphere_size(t).min(self.cap() as u128) as usize);
            for x in prev {
                let last = self.last_letter(x);
                for &letter in &alphabet {
                    if last.is_none_or(|l| self.can_follow(l, letter)) {
                        next.push(self.append_letter(x, letter));
                    }
                }
            }
            spheres.push(next);
        }
        spheres
    }
}
