#![allow(dead_code)]

use packd::geom::{ConvexBody, Vector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Hull of `k` random points and their negatives, retried until full-dimensional.
pub fn random_symmetric_polygon(rng: &mut impl Rng, k: usize) -> ConvexBody {
    loop {
        let mut pts = Vec::new();
        for _ in 0..k {
            let p = Vector::planar(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            pts.push(p);
            pts.push(-p);
        }
        if let Ok(b) = ConvexBody::from_points(&pts, 2) {
            if b.volume() > 1e-3 {
                return b;
            }
        }
    }
}

/// Hull of `n` random points in the unit box.
pub fn random_polytope(rng: &mut impl Rng, dim: usize, n: usize) -> ConvexBody {
    loop {
        let pts: Vec<Vector> = (0..n)
            .map(|_| {
                let mut c = [0.0; 3];
                for x in c.iter_mut().take(dim) {
                    *x = rng.random_range(-1.0..1.0);
                }
                Vector(c)
            })
            .collect();
        if let Ok(b) = ConvexBody::from_points(&pts, dim) {
            if b.volume() > 1e-2 {
                return b;
            }
        }
    }
}

/// Vertices of a planar body in counter-clockwise order about their mean.
pub fn ccw_vertices(k: &ConvexBody) -> Vec<Vector> {
    let c = k.vertex_mean();
    let mut v = k.vertices().to_vec();
    v.sort_by(|a, b| {
        let ta = (a.y() - c.y()).atan2(a.x() - c.x());
        let tb = (b.y() - c.y()).atan2(b.x() - c.x());
        ta.total_cmp(&tb)
    });
    v
}

/// Smallest parallelogram with sides along two polygon edges, from coordinates in the edge frame.
pub fn parallelogram_oracle(k: &ConvexBody) -> f64 {
    let v = ccw_vertices(k);
    let n = v.len();
    let edges: Vec<Vector> = (0..n).map(|i| v[(i + 1) % n] - v[i]).collect();
    let mut best = f64::INFINITY;
    for i in 0..n {
        for j in 0..n {
            let (d1, d2) = (edges[i], edges[j]);
            let det = d1.cross2(&d2);
            if det.abs() < 1e-9 * d1.norm() * d2.norm() {
                continue;
            }
            let (mut s0, mut s1, mut t0, mut t1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
            for p in &v {
                let s = p.cross2(&d2) / det;
                let t = d1.cross2(p) / det;
                s0 = s0.min(s);
                s1 = s1.max(s);
                t0 = t0.min(t);
                t1 = t1.max(t);
            }
            best = best.min((s1 - s0) * (t1 - t0) * det.abs());
        }
    }
    best
}

/// Shoelace area of a planar vertex loop.
pub fn shoelace(v: &[Vector]) -> f64 {
    let n = v.len();
    0.5 * (0..n).map(|i| v[i].cross2(&v[(i + 1) % n])).sum::<f64>().abs()
}

/// A random body with a random lattice scaled to a density drawn from `[0.02, 0.35)`.
pub fn random_instance(rng: &mut impl Rng, dim: usize) -> (ConvexBody, packd::lattice::Lattice) {
    let n = rng.random_range(dim + 1..dim + 6);
    let k = random_polytope(rng, dim, n);
    loop {
        let cols: Vec<Vector> = (0..dim)
            .map(|_| {
                let mut c = [0.0; 3];
                for x in c.iter_mut().take(dim) {
                    *x = rng.random_range(-1.0..1.0);
                }
                Vector(c)
            })
            .collect();
        let Ok(l) = packd::lattice::Lattice::new(dim, &cols) else { continue };
        if l.det() < 0.05 {
            continue;
        }
        let target = k.volume() / rng.random_range(0.02..0.35);
        let s = (target / l.det()).powf(1.0 / dim as f64);
        return (k, l.scaled(s).unwrap());
    }
}
