//! Minkowski functionals and lattice minima used as optimisation objectives.

use crate::geom::{ConvexBody, Matrix, Vector, EPS};

/// Gauge `g(x) = max_j a_j·x` of a polytope containing the origin in its interior.
#[derive(Clone, Debug)]
pub struct Gauge {
    rows: Vec<Vector>,
    /// Rows come in `±` pairs and only one of each is stored.
    symmetric: bool,
    /// Largest vertex norm; `g(x) >= |x| / outer`.
    pub outer: f64,
}

impl Gauge {
    pub fn new(body: &ConvexBody) -> Self {
        assert!(body.origin_is_interior(), "gauge needs the origin inside the body");
        let symmetric = body.symmetry_center(EPS).is_some_and(|c| c.norm() <= EPS);
        let mut rows: Vec<Vector> = Vec::new();
        let mut kept_normals: Vec<Vector> = Vec::new();
        for f in body.facets() {
            if symmetric && kept_normals.iter().any(|n| (*n + f.normal).norm() < 1e-6) {
                continue;
            }
            kept_normals.push(f.normal);
            rows.push(f.normal * (1.0 / f.offset));
        }
        Gauge { rows, symmetric, outer: body.circumradius() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    #[inline]
    pub fn eval(&self, x: &Vector) -> f64 {
        self.eval_capped(x, f64::INFINITY)
    }

    /// The row `a` with `a·x = g(x)`.
    pub fn argmax_row(&self, x: &Vector) -> Vector {
        let mut best = (f64::NEG_INFINITY, Vector::ZERO);
        for r in &self.rows {
            let d = r.dot(x);
            if d > best.0 {
                best = (d, *r);
            }
            if self.symmetric && -d > best.0 {
                best = (-d, -*r);
            }
        }
        best.1
    }

    /// Exact gauge when it is below `cap`, otherwise some value `>= cap`.
    #[inline]
    pub fn eval_capped(&self, x: &Vector, cap: f64) -> f64 {
        let mut m = 0.0f64;
        if self.symmetric {
            for r in &self.rows {
                m = m.max(r.dot(x).abs());
                if m >= cap {
                    return m;
                }
            }
        } else {
            for r in &self.rows {
                m = m.max(r.dot(x));
                if m >= cap {
                    return m;
                }
            }
        }
        m
    }
}

/// Refuses evaluations that would need more coefficient vectors than this.
const MAX_BOX: f64 = 200_000.0;

/// `min g(Bz)` over nonzero integer `z` (first `dim` coordinates), or `None`
/// when the basis is too degenerate to enumerate cheaply. Values above `cap`
/// are reported as `cap`; the search stops early once the minimum is known
/// to be at most `floor`.
pub fn lattice_minimum(b: &Matrix, dim: usize, g: &Gauge, cap: f64, floor: f64) -> Option<f64> {
    let cols = [b.column(0), b.column(1), b.column(2)];
    let mut best = cap;
    for c in cols.iter().take(dim) {
        best = best.min(g.eval(c));
    }
    if best <= floor {
        return Some(best);
    }
    let inv = b.inverse()?;
    let radius = best * g.outer;
    let mut m = [0i64; 3];
    let mut count = 1.0;
    for i in 0..dim {
        m[i] = (radius * inv.row(i).norm()).floor() as i64;
        count *= 2.0 * m[i] as f64 + 1.0;
    }
    if !(count <= MAX_BOX) {
        return None;
    }
    let sym = g.is_symmetric();
    // With a symmetric gauge only half of the points need visiting.
    let a_lo = if sym { 0 } else { -m[0] };
    for a in a_lo..=m[0] {
        let pa = cols[0] * a as f64;
        let b_lo = if sym && a == 0 { 0 } else { -m[1] };
        for bb in b_lo..=m[1] {
            let pb = pa + cols[1] * bb as f64;
            let c_lo = if sym && a == 0 && bb == 0 { 1 } else { -m[2] };
            for c in c_lo..=m[2] {
                if a == 0 && bb == 0 && c == 0 {
                    continue;
                }
                let x = pb + cols[2] * c as f64;
                let lim = best * g.outer;
                if x.norm_squared() >= lim * lim {
                    continue;
                }
                best = best.min(g.eval_capped(&x, best));
                if best <= floor {
                    return Some(best);
                }
            }
        }
    }
    Some(best)
}

/// `min g(B(w + s))` over all integer `w`, i.e. the gauge distance from the
/// origin to the coset `Bs + L`.
pub fn coset_minimum(b: &Matrix, dim: usize, s: &Vector, g: &Gauge, cap: f64, floor: f64) -> Option<f64> {
    let cols = [b.column(0), b.column(1), b.column(2)];
    let v = (0..dim).fold(Vector::ZERO, |acc, i| acc + cols[i] * s[i]);
    let mut best = cap.min(g.eval(&v));
    if best <= floor {
        return Some(best);
    }
    let inv = b.inverse()?;
    let radius = best * g.outer;
    let mut lo = [0i64; 3];
    let mut hi = [0i64; 3];
    let mut count = 1.0;
    for i in 0..dim {
        let r = radius * inv.row(i).norm();
        lo[i] = (-s[i] - r).ceil() as i64;
        hi[i] = (-s[i] + r).floor() as i64;
        count *= (hi[i] - lo[i] + 1).max(0) as f64;
    }
    if !(count <= MAX_BOX) {
        return None;
    }
    for a in lo[0]..=hi[0] {
        let pa = v + cols[0] * a as f64;
        for bb in lo[1]..=hi[1] {
            let pb = pa + cols[1] * bb as f64;
            for c in lo[2]..=hi[2] {
                let x = pb + cols[2] * c as f64;
                let lim = best * g.outer;
                if x.norm_squared() >= lim * lim {
                    continue;
                }
                best = best.min(g.eval_capped(&x, best));
                if best <= floor {
                    return Some(best);
                }
            }
        }
    }
    Some(best)
}

/// Integer `z ≠ 0` with `g(Bz) <= bound` (one of `±z` when the gauge is symmetric).
pub fn near_lattice_points(b: &Matrix, dim: usize, g: &Gauge, bound: f64) -> Vec<Vector> {
    let mut out = Vec::new();
    let Some(inv) = b.inverse() else { return out };
    let radius = bound * g.outer;
    let mut m = [0i64; 3];
    for i in 0..dim {
        m[i] = (radius * inv.row(i).norm()).floor().min(1e4) as i64;
    }
    let sym = g.is_symmetric();
    for a in if sym { 0 } else { -m[0] }..=m[0] {
        for bb in if sym && a == 0 { 0 } else { -m[1] }..=m[1] {
            for c in if sym && a == 0 && bb == 0 { 1 } else { -m[2] }..=m[2] {
                if a == 0 && bb == 0 && c == 0 {
                    continue;
                }
                let z = Vector::new(a as f64, bb as f64, c as f64);
                if g.eval(&b.apply(&z)) <= bound {
                    out.push(z);
                }
            }
        }
    }
    out
}

/// Integer `w` with `g(B(w + s)) <= bound`.
pub fn near_coset_points(b: &Matrix, dim: usize, s: &Vector, g: &Gauge, bound: f64) -> Vec<Vector> {
    let mut out = Vec::new();
    let Some(inv) = b.inverse() else { return out };
    let radius = bound * g.outer;
    let mut lo = [0i64; 3];
    let mut hi = [0i64; 3];
    for i in 0..dim {
        let r = (radius * inv.row(i).norm()).min(1e4);
        lo[i] = (-s[i] - r).ceil() as i64;
        hi[i] = (-s[i] + r).floor() as i64;
    }
    for a in lo[0]..=hi[0] {
        for bb in lo[1]..=hi[1] {
            for c in lo[2]..=hi[2] {
                let w = Vector::new(a as f64, bb as f64, c as f64);
                if g.eval(&b.apply(&(w + *s))) <= bound {
                    out.push(w);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn centered_cube() -> ConvexBody {
        let pts: Vec<Vector> = (0..8)
            .map(|i| Vector::new(((i & 1) * 2) as f64 - 1.0, (i & 2) as f64 - 1.0, ((i & 4) / 2) as f64 - 1.0))
            .collect();
        ConvexBody::from_points(&pts, 3).unwrap()
    }

    #[test]
    fn cube_gauge_is_sup_norm() {
        let g = Gauge::new(&centered_cube());
        assert!(g.is_symmetric());
        assert!((g.eval(&Vector::new(0.3, -0.7, 0.1)) - 0.7).abs() < 1e-15);
    }

    #[test]
    fn integer_lattice_minimum() {
        let g = Gauge::new(&centered_cube());
        let m = lattice_minimum(&Matrix::scalar(2.0), 3, &g, f64::INFINITY, 0.0).unwrap();
        assert!((m - 2.0).abs() < 1e-15);
    }

    #[test]
    fn coset_minimum_of_half_shift() {
        let g = Gauge::new(&centered_cube());
        let s = Vector::new(0.5, 0.5, 0.5);
        let m = coset_minimum(&Matrix::scalar(2.0), 3, &s, &g, f64::INFINITY, 0.0).unwrap();
        assert!((m - 1.0).abs() < 1e-15);
    }
}
