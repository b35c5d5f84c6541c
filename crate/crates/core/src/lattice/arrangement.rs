use serde::Serialize;

use super::{Lattice, LatticeError, RADIUS_MARGIN};
use crate::geom::{ConvexBody, GeomError, Isometry, Vector, EPS};

#[derive(Clone, Debug, PartialEq)]
pub struct Placement {
    pub body: usize,
    pub iso: Isometry,
}

impl Placement {
    pub fn translate(body: usize, t: Vector) -> Self {
        Placement { body, iso: Isometry::translation(t) }
    }
}

/// The repeating unit: a list of bodies and where each copy sits.
#[derive(Clone, Debug, PartialEq)]
pub struct Motif {
    pub bodies: Vec<ConvexBody>,
    pub placements: Vec<Placement>,
}

impl Motif {
    pub fn single(body: ConvexBody) -> Self {
        Motif { bodies: vec![body], placements: vec![Placement::translate(0, Vector::ZERO)] }
    }

    /// `{K, v − K}`: the body at the origin and its point reflection translated by `v`.
    pub fn pair_with_reflection(body: ConvexBody, v: Vector) -> Self {
        let dim = body.dim();
        Motif {
            bodies: vec![body],
            placements: vec![Placement::translate(0, Vector::ZERO), Placement { body: 0, iso: Isometry::reflection(dim, v) }],
        }
    }

    pub fn placed(&self, i: usize) -> ConvexBody {
        let p = &self.placements[i];
        self.bodies[p.body].transformed(&p.iso)
    }

    pub fn placed_all(&self) -> Vec<ConvexBody> {
        (0..self.placements.len()).map(|i| self.placed(i)).collect()
    }

    pub fn volume(&self) -> f64 {
        self.placements.iter().map(|p| self.bodies[p.body].volume()).sum()
    }

    /// True when every linear part is `+I`.
    pub fn is_translative(&self) -> bool {
        self.placements.iter().all(|p| p.iso.is_translation())
    }

    /// True when every linear part is `±I`.
    pub fn is_translative_with_reflections(&self, dim: usize) -> bool {
        self.placements.iter().all(|p| p.iso.is_translation() || p.iso.is_point_reflection(dim))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicArrangement {
    pub lattice: Lattice,
    pub motif: Motif,
}

impl PeriodicArrangement {
    pub fn new(lattice: Lattice, motif: Motif) -> Result<Self, LatticeError> {
        if motif.placements.is_empty() && !motif.bodies.is_empty() {
            return Err(GeomError::Degenerate("motif has bodies but no placements".into()).into());
        }
        for p in &motif.placements {
            let Some(b) = motif.bodies.get(p.body) else {
                return Err(GeomError::Degenerate(format!("placement refers to missing body {}", p.body)).into());
            };
            if b.dim() != lattice.dim() {
                return Err(GeomError::DimensionMismatch(b.dim(), lattice.dim()).into());
            }
            if p.iso.linear.orthogonality_defect() > Isometry::ORTHO_TOL {
                return Err(GeomError::NotOrthogonal.into());
            }
        }
        Ok(PeriodicArrangement { lattice, motif })
    }

    pub fn lattice_packing(body: ConvexBody, lattice: Lattice) -> Result<Self, LatticeError> {
        Self::new(lattice, Motif::single(body))
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    /// Motif volume over covolume.
    pub fn density(&self) -> f64 {
        self.motif.volume() / self.lattice.det()
    }

    /// Largest distance from the origin to a point of any placed body.
    pub fn motif_radius(&self) -> f64 {
        self.motif.placed_all().iter().map(|b| b.circumradius()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MotifCertificate {
    pub admissible: bool,
    /// `(i, j, w)`: placement `i` overlaps placement `j` translated by `w`.
    pub violation: Option<(usize, usize, Vector)>,
    /// Largest interior depth of a lattice vector in any pairwise difference set.
    pub max_depth: f64,
    pub pairs_checked: usize,
}

/// Decides whether every pair `(P_i, P_j + w)` with `w ∈ L` (excluding `i = j, w = 0`)
/// has disjoint interiors, via `w ∉ int(P_i − P_j)`.
pub fn admissible_motif(a: &PeriodicArrangement, tol: f64) -> Result<MotifCertificate, LatticeError> {
    let placed = a.motif.placed_all();
    let lattice = a.lattice.reduced();
    let mut cert = MotifCertificate { admissible: true, violation: None, max_depth: f64::NEG_INFINITY, pairs_checked: 0 };
    for i in 0..placed.len() {
        for j in i..placed.len() {
            let diff = if i == j { placed[i].difference_set() } else { placed[i].minkowski_sum(&placed[j].reflected())? };
            let radius = diff.circumradius() + RADIUS_MARGIN;
            let mut visit = |w: Vector| {
                cert.pairs_checked += 1;
                let depth = diff.depth(&w);
                cert.max_depth = cert.max_depth.max(depth);
                if depth > tol && cert.violation.is_none() {
                    cert.admissible = false;
                    cert.violation = Some((i, j, w));
                }
            };
            if i != j {
                visit(Vector::ZERO);
            }
            lattice.for_each_point(radius, |_, w| visit(w))?;
        }
    }
    Ok(cert)
}

/// [`admissible_motif`] at the default contact tolerance.
pub fn motif_is_admissible(a: &PeriodicArrangement) -> bool {
    admissible_motif(a, EPS).map(|c| c.admissible).unwrap_or(false)
}
