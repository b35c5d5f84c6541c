//! Critical lattices of planar symmetric disks.
//!
//! A critical lattice of a symmetric convex disk `D` has a basis `p, q` with
//! `p`, `q` and `q − p` all on the boundary of `D`. Sweeping `p` around the
//! boundary and solving for `q` reduces the search to one angle.

use std::f64::consts::PI;

use super::gauge::Gauge;
use crate::geom::Vector;

fn boundary_point(g: &Gauge, theta: f64) -> Vector {
    let u = Vector::planar(theta.cos(), theta.sin());
    u * (1.0 / g.eval(&u))
}

/// The boundary point `q` counter-clockwise from `p` with `q − p` also on the boundary.
fn partner(g: &Gauge, theta: f64, p: &Vector) -> Vector {
    let (mut lo, mut hi) = (theta, theta + PI);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        let q = boundary_point(g, mid);
        if g.eval(&(q - *p)) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    boundary_point(g, 0.5 * (lo + hi))
}

fn cell_area(g: &Gauge, theta: f64) -> (f64, Vector, Vector) {
    let p = boundary_point(g, theta);
    let q = partner(g, theta, &p);
    (p.cross2(&q).abs(), p, q)
}

/// Basis of the lattice of smallest covolume among the one-parameter family,
/// found by a dense angular scan refined with golden-section search.
pub fn critical_basis(g: &Gauge, samples: usize) -> (Vector, Vector) {
    let h = PI / samples as f64;
    let scan: Vec<f64> = (0..samples).map(|k| cell_area(g, k as f64 * h).0).collect();
    let mut order: Vec<usize> = (0..samples).collect();
    order.sort_by(|&a, &b| scan[a].total_cmp(&scan[b]).then(a.cmp(&b)));
    let mut best = (f64::INFINITY, Vector::ZERO, Vector::ZERO);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    for &k in order.iter().take(4) {
        let (mut a, mut b) = ((k as f64 - 1.0) * h, (k as f64 + 1.0) * h);
        let mut c = b - phi * (b - a);
        let mut d = a + phi * (b - a);
        let (mut fc, mut fd) = (cell_area(g, c).0, cell_area(g, d).0);
        for _ in 0..200 {
            if b - a < 1e-14 {
                break;
            }
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - phi * (b - a);
                fc = cell_area(g, c).0;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + phi * (b - a);
                fd = cell_area(g, d).0;
            }
        }
        for t in [a, 0.5 * (a + b), b, k as f64 * h] {
            let cand = cell_area(g, t);
            if cand.0 < best.0 {
                best = cand;
            }
        }
    }
    (best.1, best.2)
}
