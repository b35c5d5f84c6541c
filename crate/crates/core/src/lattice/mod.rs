//! Lattices, lattice-point enumeration and the translative packing criterion.
//!
//! Translates `K + L` form a packing iff no nonzero lattice point lies in the
//! interior of `K − K`. Points on the boundary are contact and are allowed.

mod arrangement;
mod lll;

use serde::Serialize;

use crate::geom::{ConvexBody, GeomError, Matrix, Vector, EPS};

pub use arrangement::{admissible_motif, motif_is_admissible, Motif, MotifCertificate, PeriodicArrangement, Placement};
pub use lll::lll_reduce;

/// Smallest accepted |det|.
pub const MIN_DET: f64 = 1e-12;
/// Enumeration refuses boxes with more coefficient vectors than this.
pub const MAX_ENUMERATION: usize = 20_000_000;
/// Extra radius added to every enumeration bound.
pub const RADIUS_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LatticeError {
    #[error("basis is singular (|det| = {0:e})")]
    Singular(f64),
    #[error("enumeration box too large ({0} coefficient vectors)")]
    NearSingular(f64),
    #[error("lattice is not admissible: {0:?} lies inside the difference set")]
    Inadmissible(Vector),
    #[error("expected {expected} basis vectors, got {got}")]
    BasisSize { expected: usize, got: usize },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// A lattice in the plane or in space, stored as the columns of a 3×3 matrix.
/// Planar lattices carry `e₃` as their third column.
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    dim: usize,
    basis: Matrix,
    det: f64,
}

impl Lattice {
    pub fn new(dim: usize, vectors: &[Vector]) -> Result<Self, LatticeError> {
        if vectors.len() != dim || !(dim == 2 || dim == 3) {
            return Err(LatticeError::BasisSize { expected: dim, got: vectors.len() });
        }
        let cols = if dim == 2 {
            [Vector::planar(vectors[0].x(), vectors[0].y()), Vector::planar(vectors[1].x(), vectors[1].y()), Vector::axis(2)]
        } else {
            [vectors[0], vectors[1], vectors[2]]
        };
        Self::from_matrix(dim, Matrix::from_columns(cols))
    }

    pub fn from_matrix(dim: usize, basis: Matrix) -> Result<Self, LatticeError> {
        if !basis.is_finite() {
            return Err(LatticeError::Geom(GeomError::NonFinite));
        }
        let det = basis.det().abs();
        if !(det > MIN_DET) {
            return Err(LatticeError::Singular(det));
        }
        Ok(Lattice { dim, basis, det })
    }

    /// `Z^d` scaled by `s`.
    pub fn cubic(dim: usize, s: f64) -> Result<Self, LatticeError> {
        let v: Vec<Vector> = (0..dim).map(|i| Vector::axis(i) * s).collect();
        Self::new(dim, &v)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vector> {
        (0..self.dim).map(|j| self.basis.column(j)).collect()
    }

    /// Covolume: area or volume of a fundamental cell.
    pub fn det(&self) -> f64 {
        self.det
    }

    pub fn point(&self, z: [i64; 3]) -> Vector {
        let z = [z[0] as f64, z[1] as f64, if self.dim == 2 { 0.0 } else { z[2] as f64 }];
        self.basis.apply(&Vector(z))
    }

    /// Image under a linear map.
    pub fn transformed(&self, m: &Matrix) -> Result<Self, LatticeError> {
        Self::from_matrix(self.dim, *m * self.basis)
    }

    pub fn scaled(&self, s: f64) -> Result<Self, LatticeError> {
        let mut b = self.basis;
        for i in 0..3 {
            for j in 0..self.dim {
                b.0[i][j] *= s;
            }
        }
        Self::from_matrix(self.dim, b)
    }

    /// Same lattice with an LLL-reduced basis.
    pub fn reduced(&self) -> Self {
        let mut v = self.vectors();
        lll_reduce(&mut v);
        Self::new(self.dim, &v).unwrap_or_else(|_| self.clone())
    }

    /// Coordinates of `x` in the basis.
    pub fn coordinates(&self, x: &Vector) -> Vector {
        self.basis.inverse().expect("nonsingular basis").apply(x)
    }

    /// Reduces `x` into the fundamental cell `B·[0,1)^d`.
    pub fn reduce_to_cell(&self, x: &Vector) -> Vector {
        let mut c = self.coordinates(x);
        for i in 0..self.dim {
            c.0[i] -= c.0[i].floor();
        }
        if self.dim == 2 {
            c.0[2] = x.z();
        }
        self.basis.apply(&c)
    }

    /// Per-coefficient bounds `|z_i| <= r·‖row_i(B⁻¹)‖` for points of norm at most `r`.
    pub fn coefficient_bounds(&self, radius: f64) -> Result<[i64; 3], LatticeError> {
        let inv = self.basis.inverse().ok_or(LatticeError::Singular(self.det))?;
        let mut m = [0i64; 3];
        let mut count = 1.0f64;
        for (i, slot) in m.iter_mut().enumerate().take(self.dim) {
            let b = (radius * inv.row(i).norm()).floor();
            count *= 2.0 * b + 1.0;
            if !(count <= MAX_ENUMERATION as f64) {
                return Err(LatticeError::NearSingular(count));
            }
            *slot = b as i64;
        }
        Ok(m)
    }

    /// Calls `f(z, Bz)` for every nonzero lattice point with `|Bz| <= radius`.
    pub fn for_each_point(&self, radius: f64, mut f: impl FnMut([i64; 3], Vector)) -> Result<(), LatticeError> {
        let m = self.coefficient_bounds(radius)?;
        let r2 = radius * radius;
        let (c0, c1, c2) = (self.basis.column(0), self.basis.column(1), self.basis.column(2));
        for a in -m[0]..=m[0] {
            let pa = c0 * a as f64;
            for b in -m[1]..=m[1] {
                let pb = pa + c1 * b as f64;
                for c in -m[2]..=m[2] {
                    if a == 0 && b == 0 && c == 0 {
                        continue;
                    }
                    let p = pb + c2 * c as f64;
                    if p.norm_squared() <= r2 {
                        f([a, b, c], p);
                    }
                }
            }
        }
        Ok(())
    }

    /// All nonzero lattice points of norm at most `radius`.
    pub fn enumerate(&self, radius: f64) -> Result<Vec<Vector>, LatticeError> {
        let mut out = Vec::new();
        self.reduced().for_each_point(radius, |_, p| out.push(p))?;
        out.sort_by(|a, b| a.norm_squared().total_cmp(&b.norm_squared()).then(a.lex_cmp(b)));
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdmissibilityCertificate {
    pub admissible: bool,
    /// A nonzero lattice point interior to `K − K`, when one exists.
    pub violation: Option<Vector>,
    /// Smallest gauge of `K − K` over the checked points (≥ 1 iff admissible, up to tolerance).
    pub min_gauge: f64,
    pub checked: usize,
    pub radius: f64,
}

/// Decides whether `K + L` is a packing, allowing contact within `tol`.
pub fn admissibility_certificate(k: &ConvexBody, l: &Lattice, tol: f64) -> Result<AdmissibilityCertificate, LatticeError> {
    let d = k.difference_set();
    let radius = d.circumradius() + RADIUS_MARGIN;
    let mut cert = AdmissibilityCertificate {
        admissible: true,
        violation: None,
        min_gauge: f64::INFINITY,
        checked: 0,
        radius,
    };
    l.reduced().for_each_point(radius, |_, p| {
        cert.checked += 1;
        cert.min_gauge = cert.min_gauge.min(d.gauge(&p));
        if cert.violation.is_none() && d.depth(&p) > tol {
            cert.violation = Some(p);
            cert.admissible = false;
        }
    })?;
    Ok(cert)
}

pub fn admissible_translative(k: &ConvexBody, l: &Lattice) -> bool {
    admissibility_certificate(k, l, EPS).map(|c| c.admissible).unwrap_or(false)
}

/// `Vol(K) / det(L)`, refused when `K + L` is not a packing.
pub fn lattice_density(k: &ConvexBody, l: &Lattice) -> Result<f64, LatticeError> {
    let cert = admissibility_certificate(k, l, EPS)?;
    match cert.violation {
        Some(p) => Err(LatticeError::Inadmissible(p)),
        None => Ok(k.volume() / l.det()),
    }
}

/// `Vol(K) / Vol(DK)`, an upper bound on every translative packing density of `K`.
pub fn translative_upper_bound(k: &ConvexBody) -> f64 {
    k.volume() / k.difference_body().volume()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_enumeration_counts() {
        let z = Lattice::cubic(3, 1.0).unwrap();
        assert_eq!(z.enumerate(1.5).unwrap().len(), 18);
        assert_eq!(Lattice::cubic(3, 2.0).unwrap().enumerate(1.5).unwrap().len(), 0);
    }

    #[test]
    fn planar_enumeration() {
        let z = Lattice::cubic(2, 1.0).unwrap();
        assert_eq!(z.enumerate(1.0).unwrap().len(), 4);
    }

    #[test]
    fn singular_basis_rejected() {
        let v = [Vector::axis(0), Vector::axis(0), Vector::axis(2)];
        assert!(matches!(Lattice::new(3, &v), Err(LatticeError::Singular(_))));
    }

    #[test]
    fn reduce_to_cell_stays_in_cell() {
        let l = Lattice::new(2, &[Vector::planar(1.0, 0.5), Vector::planar(-0.5, 1.0)]).unwrap();
        let x = l.reduce_to_cell(&Vector::planar(7.3, -4.1));
        let c = l.coordinates(&x);
        assert!((0.0..1.0).contains(&c.x()) && (0.0..1.0).contains(&c.y()));
    }
}
