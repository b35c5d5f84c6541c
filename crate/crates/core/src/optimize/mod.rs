//! Numerical maximisation of lattice packing densities.
//!
//! Every candidate basis is rescaled to the exact feasibility boundary before
//! it is scored, so the search never needs a separate repair step and every
//! intermediate value is the density of an actual packing. Restarts run in
//! parallel with private random streams and are reduced deterministically.

pub mod gauge;
mod planar;
pub mod search;

use serde::{Deserialize, Serialize};

use crate::exec::Exec;
use crate::geom::{ConvexBody, GeomError, Matrix, Vector, EPS};
use crate::lattice::{admissibility_certificate, admissible_motif, Lattice, LatticeError, Motif, PeriodicArrangement};
use gauge::Gauge;
pub use planar::critical_basis;
pub use search::{Objective, Paired, State, Translative};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OptimizeError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("expected a body of dimension {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("no restart produced a usable lattice")]
    NoResult,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub seed: u64,
    /// Step sizes of the successive stages; strictly decreasing in (0, 1).
    pub schedule: Vec<f64>,
    /// Multiplies every step of the schedule.
    pub perturbation_scale: f64,
    /// Iteration cap per restart.
    pub max_iterations: usize,
    /// Consecutive rejected proposals before moving to the next stage.
    pub patience: usize,
    /// Basis reduction period in iterations.
    pub reduce_every: usize,
    /// Contact tolerance of the final admissibility certificate.
    pub tolerance: f64,
    #[serde(skip)]
    pub exec: Exec,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            restarts: 64,
            seed: 0,
            schedule: vec![
                0.2, 0.1, 0.05, 0.02, 0.01, 5e-3, 2e-3, 1e-3, 5e-4, 2e-4, 1e-4, 5e-5, 2e-5, 1e-5, 5e-6, 2e-6, 1e-6,
                1e-7, 1e-8,
            ],
            perturbation_scale: 1.0,
            max_iterations: 2000,
            patience: 40,
            reduce_every: 25,
            tolerance: EPS,
            exec: Exec::Parallel,
        }
    }
}

impl OptimizerConfig {
    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_iterations(mut self, max_iterations: usize) -> Self {
        self.max_iterations = max_iterations;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn validate(&self) -> Result<(), OptimizeError> {
        let bad = |m: &str| Err(OptimizeError::Config(m.to_string()));
        if self.restarts == 0 {
            return bad("restarts must be positive");
        }
        if self.schedule.is_empty() {
            return bad("schedule is empty");
        }
        if self.schedule.iter().any(|s| !(*s > 0.0 && *s < 1.0)) {
            return bad("schedule entries must lie in (0, 1)");
        }
        if self.schedule.windows(2).any(|w| w[1] >= w[0]) {
            return bad("schedule must be strictly decreasing");
        }
        if !(self.perturbation_scale > 0.0 && self.perturbation_scale.is_finite()) {
            return bad("perturbation scale must be positive");
        }
        if self.max_iterations == 0 || self.patience == 0 || self.reduce_every == 0 {
            return bad("iteration counts must be positive");
        }
        if !(self.tolerance > 0.0) {
            return bad("tolerance must be positive");
        }
        Ok(())
    }

    /// A cheaper configuration used for auxiliary seed searches.
    fn auxiliary(&self) -> Self {
        let mut c = self.clone();
        c.restarts = (self.restarts / 8).max(4);
        c
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PackingMode {
    /// Lattice translates of `K`.
    Lattice,
    /// Lattice translates of the pair `{K, v − K}`.
    PairedLattice,
}

#[derive(Clone, Debug)]
pub struct OptimizationResult {
    pub mode: PackingMode,
    pub lattice: Lattice,
    /// `v` of the reflected copy `v − K` in paired mode.
    pub shift: Option<Vector>,
    /// Motif volume over covolume of the returned lattice.
    pub density: f64,
    /// Outcome of the admissibility re-check at a tenth of the configured tolerance.
    pub certified: bool,
    /// Final density of every restart, in restart order.
    pub trace: Vec<f64>,
    pub best_restart: usize,
    pub evaluations: u64,
}

impl OptimizationResult {
    pub fn arrangement(&self, body: &ConvexBody) -> PeriodicArrangement {
        let motif = match self.shift {
            Some(v) => Motif::pair_with_reflection(body.clone(), v),
            None => Motif::single(body.clone()),
        };
        PeriodicArrangement::new(self.lattice.clone(), motif).expect("consistent optimiser output")
    }
}

/// Starting point for a paired search: a basis and the shift `v` of `v − K`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairSeed {
    pub basis: Matrix,
    pub shift: Vector,
}

fn scale_columns(b: &Matrix, dim: usize, f: f64) -> Matrix {
    let mut out = *b;
    for row in out.0.iter_mut() {
        for v in row.iter_mut().take(dim) {
            *v *= f;
        }
    }
    out
}

/// Relative slack added when scaling to the feasibility boundary, so that
/// rounding can only move the lattice outward.
const FINAL_SLACK: f64 = 1e-12;

fn structured_seeds(dim: usize) -> Vec<State> {
    let s = Vector::ZERO;
    let h = 3f64.sqrt() / 2.0;
    if dim == 2 {
        vec![
            State { b: Matrix::IDENTITY, s },
            State { b: Matrix::planar([[1.0, 0.5], [0.0, h]]), s },
            State { b: Matrix::planar([[h, h], [0.5, -0.5]]), s },
        ]
    } else {
        vec![
            State { b: Matrix::IDENTITY, s },
            State { b: Matrix([[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]]), s },
            State { b: Matrix([[-1.0, 1.0, 1.0], [1.0, -1.0, 1.0], [1.0, 1.0, -1.0]]), s },
        ]
    }
}

fn translative_objective(k: &ConvexBody) -> Translative {
    Translative { dim: k.dim(), volume: k.volume(), diff: Gauge::new(&k.difference_set()) }
}

fn run_translative(k: &ConvexBody, cfg: &OptimizerConfig, seeds: Vec<State>) -> Result<OptimizationResult, OptimizeError> {
    cfg.validate()?;
    let dim = k.dim();
    let obj = translative_objective(k);
    let (best, outcomes) = search::search(&obj, cfg, &seeds);
    let st = &outcomes[best].state;
    let m = obj.minimum(st, 0.0).ok_or(OptimizeError::NoResult)?;
    let lattice = Lattice::from_matrix(dim, scale_columns(&st.b, dim, (1.0 + FINAL_SLACK) / m))?;
    let cert = admissibility_certificate(k, &lattice, cfg.tolerance / 10.0)?;
    Ok(OptimizationResult {
        mode: PackingMode::Lattice,
        density: k.volume() / lattice.det(),
        lattice,
        shift: None,
        certified: cert.admissible,
        trace: outcomes.iter().map(|o| o.value).collect(),
        best_restart: best,
        evaluations: outcomes.iter().map(|o| o.evaluations).sum(),
    })
}

/// Densest lattice packing of translates of a body found by the restart search.
/// Planar bodies are delegated to [`optimize_lattice_2d`].
pub fn optimize_lattice(k: &ConvexBody, cfg: &OptimizerConfig) -> Result<OptimizationResult, OptimizeError> {
    if k.dim() == 2 {
        return optimize_lattice_2d(k, cfg);
    }
    run_translative(k, cfg, structured_seeds(3))
}

/// Translative search started from the given bases before the structured and random restarts.
pub fn optimize_lattice_seeded(k: &ConvexBody, cfg: &OptimizerConfig, bases: &[Matrix]) -> Result<OptimizationResult, OptimizeError> {
    let mut seeds: Vec<State> = bases.iter().map(|b| State { b: *b, s: Vector::ZERO }).collect();
    seeds.extend(structured_seeds(k.dim()));
    run_translative(k, cfg, seeds)
}

/// Planar version: the one-angle critical-lattice sweep seeds the restart search.
pub fn optimize_lattice_2d(k: &ConvexBody, cfg: &OptimizerConfig) -> Result<OptimizationResult, OptimizeError> {
    if k.dim() != 2 {
        return Err(OptimizeError::Dimension { expected: 2, got: k.dim() });
    }
    let g = Gauge::new(&k.difference_set());
    let (p, q) = critical_basis(&g, 720);
    let mut seeds = vec![State { b: Matrix::from_columns([p, q, Vector::axis(2)]), s: Vector::ZERO }];
    seeds.extend(structured_seeds(2));
    run_translative(k, cfg, seeds)
}

/// Shift `v` such that `v − K` is glued to `K` along a centrally symmetric base facet,
/// when `K` is a cone over such a base.
pub fn base_to_base_shift(k: &ConvexBody) -> Option<Vector> {
    if k.dim() != 3 {
        return None;
    }
    for f in k.facets() {
        if f.verts.len() + 1 != k.vertices().len() {
            continue;
        }
        let pts: Vec<Vector> = f.verts.iter().map(|&i| k.vertices()[i]).collect();
        let c = pts.iter().copied().sum::<Vector>() * (1.0 / pts.len() as f64);
        let symmetric = pts.iter().all(|p| pts.iter().any(|q| (c * 2.0 - *p).distance(q) <= 1e-9));
        if symmetric {
            return Some(c * 2.0);
        }
    }
    None
}

/// The paired motif `{K, b₁ + 2c − K}` on `(2b₁, b₂, b₃)`; for a body symmetric about `c` this is the
/// lattice packing itself.
pub fn pairing_seed(r: &OptimizationResult, k: &ConvexBody) -> PairSeed {
    let b = r.lattice.basis();
    let mut cols = [b.column(0), b.column(1), b.column(2)];
    let b1 = cols[0];
    cols[0] = b1 * 2.0;
    let center = k.symmetry_center(1e-9).unwrap_or_else(|| k.centroid());
    PairSeed { basis: Matrix::from_columns(cols), shift: b1 + center * 2.0 }
}

/// Densest lattice packing of pairs `{K, v − K}`, seeded from the translative
/// optimum and, for cones over symmetric bases, the base-to-base union.
pub fn optimize_lstar(k: &ConvexBody, cfg: &OptimizerConfig) -> Result<OptimizationResult, OptimizeError> {
    cfg.validate()?;
    let aux = cfg.auxiliary();
    let translative = optimize_lattice(k, &aux)?;
    let mut seeds = vec![pairing_seed(&translative, k)];
    if let Some(v) = base_to_base_shift(k) {
        let mut pts = k.vertices().to_vec();
        pts.extend(k.vertices().iter().map(|p| v - *p));
        let union = ConvexBody::from_points(&pts, 3)?;
        let r = optimize_lattice(&union, &aux)?;
        seeds.push(PairSeed { basis: *r.lattice.basis(), shift: v });
    }
    optimize_lstar_seeded(k, cfg, &seeds)
}

/// Paired search from explicit seeds, followed by structured and random restarts.
pub fn optimize_lstar_seeded(k: &ConvexBody, cfg: &OptimizerConfig, seeds: &[PairSeed]) -> Result<OptimizationResult, OptimizeError> {
    cfg.validate()?;
    let dim = k.dim();
    let c = k.centroid();
    let centred = k.translate(-c);
    let obj = Paired {
        dim,
        volume: k.volume(),
        diff: Gauge::new(&k.difference_set()),
        doubled: Gauge::new(&centred.scaled(2.0)?),
    };
    let mut states: Vec<State> = Vec::new();
    for seed in seeds {
        if let Some(inv) = seed.basis.inverse() {
            states.push(State { b: seed.basis, s: inv.apply(&(seed.shift - c * 2.0)) });
        }
    }
    for mut st in structured_seeds(dim) {
        for i in 0..dim {
            st.s.0[i] = 0.5;
        }
        states.push(st);
    }
    let (best, outcomes) = search::search(&obj, cfg, &states);
    let st = &outcomes[best].state;
    let m = obj.minimum(st, 0.0).ok_or(OptimizeError::NoResult)?;
    let f = (1.0 + FINAL_SLACK) / m;
    let basis = scale_columns(&st.b, dim, f);
    let lattice = Lattice::from_matrix(dim, basis)?;
    let shift = basis.apply(&st.s) + c * 2.0;
    let arrangement = PeriodicArrangement::new(lattice.clone(), Motif::pair_with_reflection(k.clone(), shift))?;
    let cert = admissible_motif(&arrangement, cfg.tolerance / 10.0)?;
    Ok(OptimizationResult {
        mode: PackingMode::PairedLattice,
        density: 2.0 * k.volume() / lattice.det(),
        lattice,
        shift: Some(shift),
        certified: cert.admissible,
        trace: outcomes.iter().map(|o| o.value).collect(),
        best_restart: best,
        evaluations: outcomes.iter().map(|o| o.evaluations).sum(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_base, make_body, BaseSpec, BodySpec};

    fn quick() -> OptimizerConfig {
        OptimizerConfig::default().with_restarts(4).with_iterations(300).with_exec(Exec::Sequential)
    }

    #[test]
    fn cube_tiles() {
        let r = optimize_lattice(&make_body(&BodySpec::Cube).unwrap(), &quick()).unwrap();
        assert!(r.certified);
        assert!((r.density - 1.0).abs() < 1e-9);
    }

    #[test]
    fn square_tiles_in_the_plane() {
        let r = optimize_lattice_2d(&make_base(&BaseSpec::Square).unwrap(), &quick()).unwrap();
        assert!(r.certified);
        assert!((r.density - 1.0).abs() < 1e-9);
    }

    #[test]
    fn schedule_must_decrease() {
        let mut cfg = quick();
        cfg.schedule = vec![0.1, 0.2];
        assert!(matches!(cfg.validate(), Err(OptimizeError::Config(_))));
    }
}
