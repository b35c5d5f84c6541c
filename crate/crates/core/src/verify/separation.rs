use serde::Serialize;

use crate::geom::{ConvexBody, GeomError, Vector};

/// Gaps down to this value count as boundary contact.
pub const CONTACT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Separation {
    /// `A ⊂ {n·x ≤ offset}` and `B ⊂ {n·x ≥ offset + gap}`.
    Disjoint { normal: Vector, offset: f64, gap: f64 },
    /// `witness` is interior to both bodies; `depth` is the smallest overlap over all tested axes.
    Overlap { witness: Vector, depth: f64 },
}

impl Separation {
    pub fn is_disjoint(&self) -> bool {
        matches!(self, Separation::Disjoint { .. })
    }
}

fn gap(a: &ConvexBody, b: &ConvexBody, n: &Vector) -> f64 {
    -b.support(&-*n) - a.support(n)
}

fn edge_directions(k: &ConvexBody) -> Vec<Vector> {
    let mut dirs: Vec<Vector> = Vec::new();
    for (i, j) in k.edges() {
        let Some(d) = (k.vertices()[j] - k.vertices()[i]).normalized() else { continue };
        if !dirs.iter().any(|e| e.cross(&d).norm() < 1e-12) {
            dirs.push(d);
        }
    }
    dirs
}

/// Separating-axis decision for two polytopes of the same dimension.
///
/// The candidate axes are the facet normals of both bodies and, in space, the
/// cross products of their edge directions; for polytopes this set is complete.
pub fn separation(a: &ConvexBody, b: &ConvexBody) -> Result<Separation, GeomError> {
    if a.dim() != b.dim() {
        return Err(GeomError::DimensionMismatch(a.dim(), b.dim()));
    }
    let mut best = (f64::NEG_INFINITY, Vector::ZERO);
    let mut consider = |n: Vector| -> bool {
        let g = gap(a, b, &n);
        if g > best.0 {
            best = (g, n);
        }
        g >= -CONTACT_TOL
    };
    let facet_axes = a.facets().iter().map(|f| f.normal).chain(b.facets().iter().map(|f| -f.normal));
    let mut found = false;
    for n in facet_axes {
        if consider(n) {
            found = true;
            break;
        }
    }
    if !found && a.dim() == 3 {
        let (ea, eb) = (edge_directions(a), edge_directions(b));
        'outer: for u in &ea {
            for v in &eb {
                if let Some(n) = u.cross(v).normalized() {
                    if consider(n) || consider(-n) {
                        found = true;
                        break 'outer;
                    }
                }
            }
        }
    }
    let (g, n) = best;
    if found {
        return Ok(Separation::Disjoint { normal: n, offset: a.support(&n), gap: g });
    }
    Ok(Separation::Overlap { witness: deepest_common_point(a, b), depth: -g })
}

/// Centre of the largest ball inside `A ∩ B`, from a small linear program.
pub fn deepest_common_point(a: &ConvexBody, b: &ConvexBody) -> Vector {
    use microlp::{ComparisonOp, OptimizationDirection, Problem};
    let dim = a.dim();
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let xs: Vec<_> = (0..dim).map(|_| lp.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY))).collect();
    let t = lp.add_var(1.0, (f64::NEG_INFINITY, f64::INFINITY));
    for f in a.facets().iter().chain(b.facets()) {
        let mut terms: Vec<_> = (0..dim).map(|i| (xs[i], f.normal[i])).collect();
        terms.push((t, 1.0));
        lp.add_constraint(terms.as_slice(), ComparisonOp::Le, f.offset);
    }
    match lp.solve() {
        Ok(microlp::SolveOutcome::Solution(sol)) => {
            let mut p = Vector::ZERO;
            for i in 0..dim {
                p.0[i] = sol[xs[i]];
            }
            p
        }
        _ => (a.vertex_mean() + b.vertex_mean()) * 0.5,
    }
}
