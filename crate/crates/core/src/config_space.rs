//! The state space: finite point configurations in a hyperrectangle `P`.
//!
//! A [`Configuration`] stores its points newest-first, so `eta.point(0)` is
//! the most recently added point. The graveyard tail that pads every
//! configuration to infinite length is implicit.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Axis-aligned box `[lower, upper]` in `R^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Domain {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(invalid("domain bounds must be non-empty and of equal length"));
        }
        if lower.iter().zip(&upper).any(|(l, u)| !(l < u) || !l.is_finite() || !u.is_finite()) {
            return Err(invalid("domain requires finite lower_i < upper_i"));
        }
        Ok(Self { lower, upper })
    }

    /// The interval `[a, b]`.
    pub fn interval(a: f64, b: f64) -> Result<Self> {
        Self::new(vec![a], vec![b])
    }

    pub fn unit_square() -> Self {
        Self::new(vec![0.0, 0.0], vec![1.0, 1.0]).expect("valid bounds")
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Euclidean length of the main diagonal.
    pub fn diameter(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| (u - l) * (u - l))
            .sum::<f64>()
            .sqrt()
    }

    pub fn volume(&self) -> f64 {
        self.lower.iter().zip(&self.upper).map(|(l, u)| u - l).product()
    }

    /// Componentwise inclusive containment.
    pub fn contains(&self, y: &[f64]) -> bool {
        y.len() == self.dim()
            && y
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (l, u))| *l <= *v && *v <= *u)
    }

    pub fn contains_interior(&self, y: &[f64]) -> bool {
        y.len() == self.dim()
            && y
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (l, u))| *l < *v && *v < *u)
    }

    /// Endpoints `(a, b)` of a one-dimensional domain.
    pub fn bounds_1d(&self) -> Result<(f64, f64)> {
        if self.dim() != 1 {
            return Err(Error::UnsupportedDimension { expected: 1, got: self.dim() });
        }
        Ok((self.lower[0], self.upper[0]))
    }

    pub(crate) fn check(&self, y: &[f64]) -> Result<()> {
        if self.contains(y) {
            Ok(())
        } else {
            Err(Error::DomainViolation { point: y.to_vec() })
        }
    }
}

/// A finite ordered sequence of points, newest first.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    dim: usize,
    coords: Vec<f64>,
}

impl Configuration {
    pub fn empty(dim: usize) -> Self {
        Self { dim, coords: Vec::new() }
    }

    /// Builds `(points[0], points[1], ...)`; every point must lie in `domain`.
    pub fn from_points<P: AsRef<[f64]>>(points: &[P], domain: &Domain) -> Result<Self> {
        let dim = domain.dim();
        let mut coords = Vec::with_capacity(points.len() * dim);
        for p in points {
            let p = p.as_ref();
            domain.check(p)?;
            coords.extend_from_slice(p);
        }
        Ok(Self { dim, coords })
    }

    /// One-dimensional shorthand for [`Configuration::from_points`].
    pub fn from_scalars(points: &[f64], domain: &Domain) -> Result<Self> {
        if domain.dim() != 1 {
            return Err(Error::UnsupportedDimension { expected: 1, got: domain.dim() });
        }
        for &p in points {
            domain.check(&[p])?;
        }
        Ok(Self { dim: 1, coords: points.to_vec() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of non-graveyard entries.
    pub fn count(&self) -> usize {
        self.coords.len().checked_div(self.dim).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// The `i`-th point (0-based; index 0 is the newest).
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim.max(1))
    }

    /// Coordinates of a one-dimensional configuration, newest first.
    pub fn scalars(&self) -> &[f64] {
        debug_assert_eq!(self.dim, 1);
        &self.coords
    }

    /// `eta ⊕ y`: a new configuration with `y` prepended.
    pub fn oplus(&self, y: &[f64], domain: &Domain) -> Result<Self> {
        if y.len() != self.dim {
            return Err(Error::UnsupportedDimension { expected: self.dim, got: y.len() });
        }
        domain.check(y)?;
        let mut coords = Vec::with_capacity(self.coords.len() + self.dim);
        coords.extend_from_slice(y);
        coords.extend_from_slice(&self.coords);
        Ok(Self { dim: self.dim, coords })
    }

    /// The order mapping: points sorted ascending, stable on ties.
    pub fn order(&self) -> Result<Self> {
        if self.dim != 1 {
            return Err(Error::UnsupportedDimension { expected: 1, got: self.dim });
        }
        let mut coords = self.coords.clone();
        coords.sort_by(f64::total_cmp);
        Ok(Self { dim: 1, coords })
    }

    /// Permutation applied by [`Configuration::order`]: `perm[i]` is the
    /// original index of the `i`-th smallest point.
    pub fn order_permutation(&self) -> Result<Vec<usize>> {
        if self.dim != 1 {
            return Err(Error::UnsupportedDimension { expected: 1, got: self.dim });
        }
        let mut idx: Vec<usize> = (0..self.coords.len()).collect();
        idx.sort_by(|&i, &j| self.coords[i].total_cmp(&self.coords[j]));
        Ok(idx)
    }
}

fn euclid(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

/// Weighted sequence distance `sum_i 2^{-i} dbar(eta_i, sigma_i)`.
///
/// `dbar` is the Euclidean distance between two points, `diam(P)` between a
/// point and the graveyard, and zero between two graveyard entries.
pub fn metric(eta: &Configuration, sigma: &Configuration, domain: &Domain) -> f64 {
    let n = eta.count().max(sigma.count());
    let diam = domain.diameter();
    let mut weight = 1.0;
    let mut total = 0.0;
    for i in 0..n {
        weight *= 0.5;
        let d = match (i < eta.count(), i < sigma.count()) {
            (true, true) => euclid(eta.point(i), sigma.point(i)),
            (true, false) | (false, true) => diam,
            (false, false) => 0.0,
        };
        total += weight * d;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Domain {
        Domain::interval(0.0, 1.0).unwrap()
    }

    #[test]
    fn oplus_prepends() {
        let d = unit();
        let eta = Configuration::from_scalars(&[0.5], &d).unwrap();
        assert_eq!(eta.oplus(&[0.2], &d).unwrap().scalars(), &[0.2, 0.5]);
        assert_eq!(eta.scalars(), &[0.5]);

        let empty = Configuration::empty(1);
        assert_eq!(empty.oplus(&[0.7], &d).unwrap().scalars(), &[0.7]);

        let two = Configuration::from_scalars(&[0.2, 0.5], &d).unwrap();
        assert_eq!(two.oplus(&[0.9], &d).unwrap().scalars(), &[0.9, 0.2, 0.5]);
    }

    #[test]
    fn oplus_rejects_outside_points() {
        let d = unit();
        let err = Configuration::empty(1).oplus(&[1.5], &d).unwrap_err();
        assert!(matches!(err, Error::DomainViolation { .. }));
    }

    #[test]
    fn count_tracks_length() {
        let d = unit();
        assert_eq!(Configuration::empty(1).count(), 0);
        let eta = Configuration::from_scalars(&[0.5], &d).unwrap();
        assert_eq!(eta.count(), 1);
        assert_eq!(eta.oplus(&[0.1], &d).unwrap().count(), 2);
    }

    #[test]
    fn metric_examples() {
        let d = unit();
        let a = Configuration::from_scalars(&[0.5], &d).unwrap();
        assert_eq!(metric(&a, &a, &d), 0.0);
        assert_eq!(metric(&a, &Configuration::empty(1), &d), 0.5);
        let z = Configuration::from_scalars(&[0.0], &d).unwrap();
        let o = Configuration::from_scalars(&[1.0], &d).unwrap();
        assert_eq!(metric(&z, &o, &d), 0.5);
    }

    #[test]
    fn order_sorts_stably() {
        let d = unit();
        let eta = Configuration::from_scalars(&[0.7, 0.2, 0.9], &d).unwrap();
        let s = eta.order().unwrap();
        assert_eq!(s.scalars(), &[0.2, 0.7, 0.9]);
        assert_eq!(s.order().unwrap(), s);
        let single = Configuration::from_scalars(&[0.5], &d).unwrap();
        assert_eq!(single.order().unwrap(), single);
        let dup = Configuration::from_scalars(&[0.3, 0.1, 0.3], &d).unwrap();
        assert_eq!(dup.order_permutation().unwrap(), vec![1, 0, 2]);
    }

    #[test]
    fn order_rejects_2d() {
        let sq = Domain::unit_square();
        let eta = Configuration::from_points(&[[0.1, 0.2]], &sq).unwrap();
        assert!(matches!(eta.order(), Err(Error::UnsupportedDimension { .. })));
    }

    #[test]
    fn domain_validation() {
        assert!(Domain::interval(1.0, 1.0).is_err());
        assert!(Domain::new(vec![0.0], vec![1.0, 2.0]).is_err());
        assert!((Domain::unit_square().diameter() - 2f64.sqrt()).abs() < 1e-15);
    }
}
