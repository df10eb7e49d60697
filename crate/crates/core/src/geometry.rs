//! Convex polytopes in one and two dimensions, facet linking, and the
//! evolving polytope division used by R-PDM.
//!
//! Intervals are stored as two vertices `[lo, hi]`; polygons as a convex
//! counter-clockwise vertex loop. Facets are the endpoints of an interval or
//! the consecutive vertex pairs of a polygon.

use rand::Rng;

use crate::config_space::{Configuration, Domain};
use crate::error::{Error, Result};

/// Relative tolerance for the strict-interior test in two dimensions.
const INTERIOR_RTOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<f64>,
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn shoelace(v: &[[f64; 2]]) -> f64 {
    let n = v.len();
    (0..n)
        .map(|i| {
            let (p, q) = (v[i], v[(i + 1) % n]);
            p[0] * q[1] - q[0] * p[1]
        })
        .sum::<f64>()
        * 0.5
}

impl Polytope {
    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        if !(hi > lo) {
            return Err(Error::Degenerate { volume: hi - lo });
        }
        Ok(Self { dim: 1, vertices: vec![lo, hi] })
    }

    /// Convex polygon from a counter-clockwise vertex loop.
    pub fn polygon(vertices: &[[f64; 2]]) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::Degenerate { volume: 0.0 });
        }
        let area = shoelace(vertices);
        if !(area > 0.0) {
            return Err(Error::Degenerate { volume: area });
        }
        let n = vertices.len();
        for i in 0..n {
            let turn = cross(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
            if turn < 0.0 {
                return Err(crate::error::invalid("polygon vertices must be convex and counter-clockwise"));
            }
        }
        Ok(Self { dim: 2, vertices: vertices.iter().flatten().copied().collect() })
    }

    pub fn triangle(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> Result<Self> {
        Self::polygon(&[a, b, c])
    }

    /// The parameter box itself, as a polytope.
    pub fn from_domain(domain: &Domain) -> Result<Self> {
        let (lo, hi) = (domain.lower(), domain.upper());
        match domain.dim() {
            1 => Self::interval(lo[0], hi[0]),
            2 => Self::polygon(&[[lo[0], lo[1]], [hi[0], lo[1]], [hi[0], hi[1]], [lo[0], hi[1]]]),
            d => Err(Error::UnsupportedDimension { expected: 2, got: d }),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len() / self.dim
    }

    pub fn vertex(&self, i: usize) -> &[f64] {
        &self.vertices[i * self.dim..(i + 1) * self.dim]
    }

    fn v2(&self, i: usize) -> [f64; 2] {
        let n = self.num_vertices();
        let k = i % n;
        [self.vertices[2 * k], self.vertices[2 * k + 1]]
    }

    fn loop2(&self) -> Vec<[f64; 2]> {
        (0..self.num_vertices()).map(|i| self.v2(i)).collect()
    }

    /// Vertex-index sets of the `(d-1)`-faces.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        match self.dim {
            1 => vec![vec![0], vec![1]],
            _ => {
                let n = self.num_vertices();
                (0..n).map(|i| vec![i, (i + 1) % n]).collect()
            }
        }
    }

    /// Length (d = 1) or area (d = 2).
    pub fn volume(&self) -> f64 {
        match self.dim {
            1 => self.vertices[1] - self.vertices[0],
            _ => shoelace(&self.loop2()),
        }
    }

    /// Centroid of the region (area centroid for polygons).
    pub fn barycenter(&self) -> Vec<f64> {
        match self.dim {
            1 => vec![0.5 * (self.vertices[0] + self.vertices[1])],
            _ => {
                // Fan from the vertex average keeps the cross terms well scaled.
                let v = self.loop2();
                let n = v.len() as f64;
                let o = v.iter().fold([0.0, 0.0], |acc, p| [acc[0] + p[0] / n, acc[1] + p[1] / n]);
                let (mut cx, mut cy, mut area) = (0.0, 0.0, 0.0);
                for i in 0..v.len() {
                    let (p, q) = (v[i], v[(i + 1) % v.len()]);
                    let a = 0.5 * cross(o, p, q);
                    cx += a * (o[0] + p[0] + q[0]) / 3.0;
                    cy += a * (o[1] + p[1] + q[1]) / 3.0;
                    area += a;
                }
                vec![cx / area, cy / area]
            }
        }
    }

    /// Closed containment.
    pub fn contains(&self, y: &[f64]) -> bool {
        match self.dim {
            1 => self.vertices[0] <= y[0] && y[0] <= self.vertices[1],
            _ => {
                let p = [y[0], y[1]];
                let tol = INTERIOR_RTOL * self.volume();
                (0..self.num_vertices()).all(|i| cross(self.v2(i), self.v2(i + 1), p) >= -tol)
            }
        }
    }

    /// Open containment: `y` is inside and on no facet.
    pub fn contains_strictly(&self, y: &[f64]) -> bool {
        match self.dim {
            1 => self.vertices[0] < y[0] && y[0] < self.vertices[1],
            _ => {
                let p = [y[0], y[1]];
                let tol = INTERIOR_RTOL * self.volume();
                (0..self.num_vertices()).all(|i| cross(self.v2(i), self.v2(i + 1), p) > tol)
            }
        }
    }

    /// A uniformly distributed point of the polytope.
    ///
    /// Polygons are fan-triangulated from the centroid; a triangle is picked
    /// with probability proportional to its area and sampled by reflecting
    /// the unit square onto the simplex.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        match self.dim {
            1 => {
                let (lo, hi) = (self.vertices[0], self.vertices[1]);
                vec![lo + rng.random::<f64>() * (hi - lo)]
            }
            _ => {
                let c = self.barycenter();
                let c = [c[0], c[1]];
                let n = self.num_vertices();
                let areas: Vec<f64> = (0..n).map(|i| 0.5 * cross(c, self.v2(i), self.v2(i + 1))).collect();
                let total: f64 = areas.iter().sum();
                let mut pick = rng.random::<f64>() * total;
                let mut k = n - 1;
                for (i, a) in areas.iter().enumerate() {
                    if pick < *a {
                        k = i;
                        break;
                    }
                    pick -= a;
                }
                let (a, b) = (self.v2(k), self.v2(k + 1));
                let (mut u, mut v): (f64, f64) = (rng.random(), rng.random());
                if u + v > 1.0 {
                    u = 1.0 - u;
                    v = 1.0 - v;
                }
                vec![
                    c[0] + u * (a[0] - c[0]) + v * (b[0] - c[0]),
                    c[1] + u * (a[1] - c[1]) + v * (b[1] - c[1]),
                ]
            }
        }
    }
}

/// Facet linking: `{ Conv(p ∪ F) : F a facet of P }`, one child per facet.
pub fn facet_linking(p: &[f64], polytope: &Polytope) -> Result<Vec<Polytope>> {
    if p.len() != polytope.dim() || !polytope.contains_strictly(p) {
        return Err(Error::InvalidSplit { point: p.to_vec() });
    }
    match polytope.dim() {
        1 => Ok(vec![
            Polytope::interval(polytope.vertices[0], p[0])?,
            Polytope::interval(p[0], polytope.vertices[1])?,
        ]),
        _ => {
            let q = [p[0], p[1]];
            (0..polytope.num_vertices())
                .map(|i| Polytope::triangle(polytope.v2(i), polytope.v2(i + 1), q))
                .collect()
        }
    }
}

/// One element of a polytope division.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub polytope: Polytope,
    /// Point at which the local error of this cell is probed.
    pub probe: Vec<f64>,
    /// Last evaluated local error at `probe`, if any.
    pub error: Option<f64>,
    /// Whether `probe` is still the barycenter of `polytope`.
    pub probe_is_barycenter: bool,
}

impl Cell {
    pub fn new(polytope: Polytope) -> Self {
        let probe = polytope.barycenter();
        Self { polytope, probe, error: None, probe_is_barycenter: true }
    }
}

/// A set of polytopes partitioning the parameter box.
#[derive(Debug, Clone, PartialEq)]
pub struct PolytopeDivision {
    cells: Vec<Cell>,
}

impl PolytopeDivision {
    /// A division consisting of the single cell `polytope`.
    pub fn single(polytope: Polytope) -> Self {
        Self { cells: vec![Cell::new(polytope)] }
    }

    /// `FL(p, polytope)` with barycenter probes.
    pub fn initial(p: &[f64], polytope: &Polytope) -> Result<Self> {
        let cells = facet_linking(p, polytope)?.into_iter().map(Cell::new).collect();
        Ok(Self { cells })
    }

    /// The division a one-dimensional R-PDM run reaches at `eta`: the gaps of
    /// the sorted nodes together with the domain endpoints.
    pub fn from_nodes_1d(domain: &Domain, eta: &Configuration) -> Result<Self> {
        let (a, b) = domain.bounds_1d()?;
        let sorted = eta.order()?;
        let mut knots = Vec::with_capacity(eta.count() + 2);
        knots.push(a);
        knots.extend(sorted.scalars().iter().copied().filter(|&x| x > a && x < b));
        knots.push(b);
        knots.dedup();
        let cells = knots
            .windows(2)
            .map(|w| Polytope::interval(w[0], w[1]).map(Cell::new))
            .collect::<Result<_>>()?;
        Ok(Self { cells })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cells_mut(&mut self) -> &mut [Cell] {
        &mut self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn total_volume(&self) -> f64 {
        self.cells.iter().map(|c| c.polytope.volume()).sum()
    }

    /// Index of the first cell containing `y` (closed cells, lowest index wins).
    pub fn locate(&self, y: &[f64]) -> Result<usize> {
        self.cells
            .iter()
            .position(|c| c.polytope.contains(y))
            .ok_or_else(|| Error::PartitionCorruption { point: y.to_vec() })
    }

    /// Replaces `cell` by `FL(y, cell)`; the children get barycenter probes
    /// and take the parent's position in the cell list.
    pub fn split(&mut self, cell: usize, y: &[f64]) -> Result<()> {
        let children = facet_linking(y, &self.cells[cell].polytope)?;
        self.cells.splice(cell..=cell, children.into_iter().map(Cell::new));
        Ok(())
    }
}
