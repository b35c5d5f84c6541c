use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, UnitBall, UnitDisc};
use serde::Serialize;

use super::VerifyError;
use crate::exec::{map_range, Exec};
use crate::geom::{Vector, EPS};
use crate::lattice::PeriodicArrangement;

pub const MIN_SAMPLES: usize = 10_000;
const BATCH: usize = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: usize,
    pub hits: usize,
}

/// Facet inequalities of one copy that may meet the fundamental cell.
struct Candidate {
    normals: Vec<(Vector, f64)>,
}

impl Candidate {
    fn contains(&self, p: &Vector) -> bool {
        self.normals.iter().all(|(n, h)| n.dot(p) <= *h)
    }
}

/// Fraction of uniform samples from the ball of radius `r` covered by the arrangement.
///
/// Each sample is reduced into the fundamental cell of the lattice and tested
/// against the few copies that can reach the cell. Batches use independent
/// ChaCha streams derived from `seed`, so the result does not depend on the
/// execution policy.
pub fn monte_carlo_density(a: &PeriodicArrangement, r: f64, samples: usize, seed: u64, exec: Exec) -> Result<MonteCarloEstimate, VerifyError> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(VerifyError::Sampling(format!("radius must be positive, got {r}")));
    }
    if samples < MIN_SAMPLES {
        return Err(VerifyError::Sampling(format!("at least {MIN_SAMPLES} samples required, got {samples}")));
    }
    let dim = a.dim();
    let lattice = a.lattice.reduced();
    let b = *lattice.basis();
    let half: Vector = (0..dim).map(|j| b.column(j) * 0.5).sum();
    let cell_radius = (0..1usize << dim)
        .map(|m| {
            let corner: Vector = (0..dim).filter(|j| m >> j & 1 == 1).map(|j| b.column(j)).sum();
            corner.distance(&half)
        })
        .fold(0.0, f64::max);
    let mut candidates = Vec::new();
    for body in a.motif.placed_all() {
        let c = body.vertex_mean();
        let reach = body.radius_about(&c) + cell_radius + EPS;
        let mut add = |_, w: Vector| {
            if (c + w).distance(&half) <= reach {
                let normals = body.facets().iter().map(|f| (f.normal, f.offset + f.normal.dot(&w))).collect();
                candidates.push(Candidate { normals });
            }
        };
        add([0; 3], Vector::ZERO);
        lattice.for_each_point(reach + c.distance(&half), &mut add)?;
    }
    let batches = samples.div_ceil(BATCH);
    let counts = map_range(batches, exec, |k| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let n = BATCH.min(samples - k * BATCH);
        let mut hits = 0usize;
        for _ in 0..n {
            let x = if dim == 2 {
                let [u, v]: [f64; 2] = UnitDisc.sample(&mut rng);
                Vector::planar(u * r, v * r)
            } else {
                let [u, v, w]: [f64; 3] = UnitBall.sample(&mut rng);
                Vector::new(u * r, v * r, w * r)
            };
            let y = lattice.reduce_to_cell(&x);
            if candidates.iter().any(|c| c.contains(&y)) {
                hits += 1;
            }
        }
        hits
    });
    let hits: usize = counts.iter().sum();
    let p = hits as f64 / samples as f64;
    Ok(MonteCarloEstimate { estimate: p, stderr: (p * (1.0 - p) / samples as f64).sqrt(), samples, hits })
}
