//! Independent certification of periodic arrangements and density measurement.
//!
//! Nothing here relies on the difference-set criterion used by the lattice
//! module: pairs of placed copies are tested directly with separating axes.

mod montecarlo;
mod separation;

use num_rational::BigRational;
use serde::Serialize;

use crate::exec::{map_range, Exec};
use crate::geom::{exact, ConvexBody, GeomError, Vector};
use crate::lattice::{admissible_motif, LatticeError, PeriodicArrangement};

pub use montecarlo::{monte_carlo_density, MonteCarloEstimate, MIN_SAMPLES};
pub use separation::{deepest_common_point, separation, Separation, CONTACT_TOL};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error("window radius {radius} is smaller than the motif radius {required}")]
    WindowTooSmall { radius: f64, required: f64 },
    #[error("arrangement is not a packing")]
    Uncertified,
    #[error("invalid sampling parameters: {0}")]
    Sampling(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// A placed copy: motif placement `placement` shifted by the lattice vector with coefficients `coeffs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CopyId {
    pub placement: usize,
    pub coeffs: [i64; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub first: CopyId,
    pub second: CopyId,
    pub witness: Vector,
    pub depth: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub window_radius: f64,
    /// Copies whose bounding sphere meets the window ball.
    pub copies: usize,
    /// Unordered pairs of copies considered.
    pub pairs: usize,
    /// Pairs whose bounding spheres intersect, decided by separating axes.
    pub pairs_tested: usize,
    pub violations: Vec<Violation>,
    pub passed: bool,
}

struct Copy {
    id: CopyId,
    body: ConvexBody,
    center: Vector,
    radius: f64,
}

/// Radius a window must have so that every copy touching a motif copy is inside it.
pub fn required_window(a: &PeriodicArrangement) -> f64 {
    a.motif
        .placed_all()
        .iter()
        .map(|b| {
            let c = b.vertex_mean();
            c.norm() + b.radius_about(&c)
        })
        .fold(0.0, f64::max)
}

/// Tests every pair of copies meeting the ball of the given radius about the origin.
///
/// Any copy that touches a motif copy is in the window once the radius is at
/// least [`required_window`], so a pass then certifies the whole periodic
/// arrangement; smaller windows are rejected.
pub fn check_arrangement(a: &PeriodicArrangement, window_radius: f64, exec: Exec) -> Result<VerificationReport, VerifyError> {
    let required = required_window(a);
    if !(window_radius >= required - 1e-12) {
        return Err(VerifyError::WindowTooSmall { radius: window_radius, required });
    }
    let placed = a.motif.placed_all();
    let spheres: Vec<(Vector, f64)> = placed
        .iter()
        .map(|b| {
            let c = b.vertex_mean();
            (c, b.radius_about(&c))
        })
        .collect();
    let reach = spheres.iter().map(|(c, r)| c.norm() + r).fold(0.0, f64::max);
    let mut copies: Vec<Copy> = Vec::new();
    let mut add = |z: [i64; 3], w: Vector| {
        for (i, (c, r)) in spheres.iter().enumerate() {
            if (*c + w).norm() <= window_radius + r {
                copies.push(Copy { id: CopyId { placement: i, coeffs: z }, body: placed[i].translate(w), center: *c + w, radius: *r });
            }
        }
    };
    add([0; 3], Vector::ZERO);
    a.lattice.for_each_point(window_radius + reach, &mut add)?;
    copies.sort_by(|x, y| x.id.cmp(&y.id));
    let n = copies.len();
    let rows = map_range(n, exec, |i| {
        let mut tested = 0usize;
        let mut found = Vec::new();
        for j in i + 1..n {
            let (p, q) = (&copies[i], &copies[j]);
            if p.center.distance(&q.center) >= p.radius + q.radius {
                continue;
            }
            tested += 1;
            if let Ok(Separation::Overlap { witness, depth }) = separation(&p.body, &q.body) {
                found.push(Violation { first: p.id, second: q.id, witness, depth });
            }
        }
        (tested, found)
    });
    let mut violations = Vec::new();
    let mut pairs_tested = 0;
    for (t, v) in rows {
        pairs_tested += t;
        violations.extend(v);
    }
    Ok(VerificationReport {
        window_radius,
        copies: n,
        pairs: n * n.saturating_sub(1) / 2,
        pairs_tested,
        passed: violations.is_empty(),
        violations,
    })
}

fn certify(a: &PeriodicArrangement) -> Result<(), VerifyError> {
    if a.motif.placements.is_empty() {
        return Ok(());
    }
    let cert = admissible_motif(a, CONTACT_TOL)?;
    if cert.admissible {
        Ok(())
    } else {
        Err(VerifyError::Uncertified)
    }
}

/// Motif volume over covolume, refused for arrangements that are not packings.
pub fn periodic_density(a: &PeriodicArrangement) -> Result<f64, VerifyError> {
    certify(a)?;
    Ok(a.density())
}

/// [`periodic_density`] in exact arithmetic, taking every stored coordinate at
/// its exact binary value. Volumes are computed on the unplaced bodies, which
/// the isometries preserve.
pub fn periodic_density_exact(a: &PeriodicArrangement) -> Result<BigRational, VerifyError> {
    certify(a)?;
    let mut vol = exact::ratio(0, 1);
    for p in &a.motif.placements {
        vol += exact::volume(&a.motif.bodies[p.body]);
    }
    let b = a.lattice.basis();
    let cols: Vec<exact::Point> = (0..3).map(|j| exact::point(&b.column(j))).collect();
    let det = exact::det3(&cols[0], &cols[1], &cols[2]);
    use num_traits::Signed;
    Ok(vol / det.abs())
}
