//! Random-restart step-schedule search over lattice bases (and a coset shift).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::gauge::{coset_minimum, lattice_minimum, near_coset_points, near_lattice_points, Gauge};
use super::OptimizerConfig;
use crate::exec::map_range;
use crate::geom::{Matrix, Vector};
use crate::lattice::lll_reduce;

/// A basis (columns) and, for paired motifs, the shift in lattice coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct State {
    pub b: Matrix,
    pub s: Vector,
}

/// Scale-invariant packing objective: `volume · m(B)^d / |det B|`, where
/// `m(B)` is the factor that makes `B / m` exactly feasible.
pub trait Objective: Sync {
    fn dim(&self) -> usize;
    fn shifted(&self) -> bool;
    fn volume(&self) -> f64;
    /// Feasibility factor, or a value `<= floor` if it is not above `floor`.
    fn minimum(&self, st: &State, floor: f64) -> Option<f64>;

    fn value_from(&self, st: &State, m: f64) -> f64 {
        self.volume() * m.powi(self.dim() as i32) / st.b.det().abs()
    }

    fn value(&self, st: &State) -> f64 {
        self.minimum(st, 0.0).map_or(0.0, |m| self.value_from(st, m))
    }

    /// Constraints with gauge at most `bound`, for a state scaled to `m = 1`.
    fn contacts(&self, st: &State, bound: f64) -> Vec<Contact>;
}

/// Linear feasibility constraint `a·((B+Δ)z + [coset](v+δv)) >= 1`.
#[derive(Clone, Debug)]
pub struct Contact {
    pub a: Vector,
    pub z: Vector,
    pub coset: bool,
}

fn lattice_contacts(st: &State, dim: usize, g: &Gauge, bound: f64) -> Vec<Contact> {
    near_lattice_points(&st.b, dim, g, bound)
        .into_iter()
        .map(|z| Contact { a: g.argmax_row(&st.b.apply(&z)), z, coset: false })
        .collect()
}

/// Translates of `K`: `m` is the lattice minimum of the gauge of `K − K`.
pub struct Translative {
    pub dim: usize,
    pub volume: f64,
    pub diff: Gauge,
}

impl Objective for Translative {
    fn dim(&self) -> usize {
        self.dim
    }
    fn shifted(&self) -> bool {
        false
    }
    fn volume(&self) -> f64 {
        self.volume
    }
    fn minimum(&self, st: &State, floor: f64) -> Option<f64> {
        lattice_minimum(&st.b, self.dim, &self.diff, f64::INFINITY, floor)
    }
    fn contacts(&self, st: &State, bound: f64) -> Vec<Contact> {
        lattice_contacts(st, self.dim, &self.diff, bound)
    }
}

/// Lattice translates of the pair `{K_c, v − K_c}` with `K_c` centred at its centroid:
/// the lattice must avoid `int(K_c − K_c)` and the coset `v + L` must avoid `int(2K_c)`.
pub struct Paired {
    pub dim: usize,
    pub volume: f64,
    pub diff: Gauge,
    pub doubled: Gauge,
}

impl Objective for Paired {
    fn dim(&self) -> usize {
        self.dim
    }
    fn shifted(&self) -> bool {
        true
    }
    fn volume(&self) -> f64 {
        2.0 * self.volume
    }
    fn minimum(&self, st: &State, floor: f64) -> Option<f64> {
        let m1 = lattice_minimum(&st.b, self.dim, &self.diff, f64::INFINITY, floor)?;
        if m1 <= floor {
            return Some(m1);
        }
        coset_minimum(&st.b, self.dim, &st.s, &self.doubled, m1, floor)
    }
    fn contacts(&self, st: &State, bound: f64) -> Vec<Contact> {
        let mut out = lattice_contacts(st, self.dim, &self.diff, bound);
        for w in near_coset_points(&st.b, self.dim, &st.s, &self.doubled, bound) {
            let a = self.doubled.argmax_row(&st.b.apply(&(w + st.s)));
            out.push(Contact { a, z: w, coset: true });
        }
        out
    }
}

/// Sequential linear programming on the active contacts: each step minimises the
/// linearised determinant subject to the linearised contacts inside a trust box,
/// and is kept only if the exactly re-evaluated density improves.
pub fn polish<O: Objective>(obj: &O, start: &State, evaluations: &mut u64) -> State {
    use microlp::{ComparisonOp, OptimizationDirection, Problem};
    let dim = obj.dim();
    let shifted = obj.shifted();
    let Some(mut st) = normalize(start, dim) else { return start.clone() };
    let mut f = obj.value(&st);
    let mut r: f64 = 0.02;
    for _ in 0..300 {
        if r < 1e-10 {
            break;
        }
        let Some(m) = obj.minimum(&st, 0.0) else { break };
        let b = scale_columns(&st.b, dim, 1.0 / m);
        let cur = State { b, s: st.s };
        let contacts = obj.contacts(&cur, 1.0 + (20.0 * r).clamp(0.02, 0.3));
        let Some(inv) = b.inverse() else { break };
        let det = b.det();
        let beta = (0..dim).map(|j| b.column(j).norm()).fold(0.0, f64::max);
        let mut lp = Problem::new(OptimizationDirection::Minimize);
        let mut delta = [[None; 3]; 3];
        for i in 0..dim {
            for j in 0..dim {
                // d det / d B_ij = det · (B⁻¹)_ji
                delta[i][j] = Some(lp.add_var(det * inv.0[j][i], (-r * beta, r * beta)));
            }
        }
        let dv: Vec<_> = if shifted { (0..dim).map(|_| lp.add_var(0.0, (-r * beta, r * beta))).collect() } else { Vec::new() };
        let v = b.apply(&cur.s);
        for c in &contacts {
            let mut terms = Vec::with_capacity(dim * dim + dim);
            for i in 0..dim {
                for j in 0..dim {
                    let coef = c.a[i] * c.z[j];
                    if coef != 0.0 {
                        terms.push((delta[i][j].unwrap(), coef));
                    }
                }
            }
            let mut x = b.apply(&c.z);
            if c.coset {
                x += v;
                for i in 0..dim {
                    if c.a[i] != 0.0 {
                        terms.push((dv[i], c.a[i]));
                    }
                }
            }
            let rhs = 1.0 - 1e-12 - c.a.dot(&x);
            if terms.is_empty() {
                continue;
            }
            lp.add_constraint(terms.as_slice(), ComparisonOp::Ge, rhs);
        }
        let Ok(microlp::SolveOutcome::Solution(sol)) = lp.solve() else {
            r *= 0.5;
            continue;
        };
        let mut nb = b;
        for i in 0..dim {
            for j in 0..dim {
                nb.0[i][j] += sol[delta[i][j].unwrap()];
            }
        }
        let mut nv = v;
        for i in 0..dv.len() {
            nv.0[i] += sol[dv[i]];
        }
        let Some(ninv) = nb.inverse() else {
            r *= 0.5;
            continue;
        };
        let mut ns = ninv.apply(&nv);
        if dim == 2 {
            ns.0[2] = 0.0;
        }
        let cand = State { b: nb, s: ns };
        *evaluations += 1;
        let value = obj.value(&cand);
        if value > f {
            f = value;
            st = normalize(&cand, dim).unwrap_or(cand);
            r = (r * 2.0).min(0.05);
        } else {
            r *= 0.5;
        }
    }
    st
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

fn columns(b: &Matrix, dim: usize) -> Vec<Vector> {
    (0..dim).map(|j| b.column(j)).collect()
}

fn from_columns(v: &[Vector], dim: usize) -> Matrix {
    if dim == 2 {
        Matrix::from_columns([v[0], v[1], Vector::axis(2)])
    } else {
        Matrix::from_columns([v[0], v[1], v[2]])
    }
}

/// LLL-reduces the basis, re-expresses the shift, and scales to `|det| = 1`.
pub fn normalize(st: &State, dim: usize) -> Option<State> {
    let v = st.b.apply(&st.s);
    let mut cols = columns(&st.b, dim);
    lll_reduce(&mut cols);
    let b = from_columns(&cols, dim);
    let d = b.det().abs();
    if !(d > 0.0 && d.is_finite()) {
        return None;
    }
    let scale = d.powf(-1.0 / dim as f64);
    let cols: Vec<Vector> = cols.iter().map(|c| *c * scale).collect();
    let b = from_columns(&cols, dim);
    let mut s = b.inverse()?.apply(&(v * scale));
    for i in 0..3 {
        s.0[i] = if i < dim { s.0[i] - s.0[i].floor() } else { 0.0 };
    }
    Some(State { b, s })
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

fn perturb(st: &State, dim: usize, shifted: bool, step: f64, rng: &mut ChaCha8Rng, full: bool) -> State {
    let mut e = Matrix::IDENTITY;
    let mut s = st.s;
    if full {
        let norm = (dim as f64).sqrt();
        for i in 0..dim {
            for j in 0..dim {
                e.0[i][j] += step * gaussian(rng) / norm;
            }
        }
        if shifted {
            for i in 0..dim {
                s.0[i] += step * gaussian(rng) / norm;
            }
        }
    } else {
        let slots = dim * dim + if shifted { dim } else { 0 };
        let k = rng.random_range(0..slots);
        let delta = if rng.random::<bool>() { step } else { -step };
        if k < dim * dim {
            e.0[k / dim][k % dim] += delta;
        } else {
            s.0[k - dim * dim] += delta;
        }
    }
    State { b: e * st.b, s }
}

fn random_state(dim: usize, shifted: bool, rng: &mut ChaCha8Rng) -> State {
    let mut b = Matrix::IDENTITY;
    for i in 0..dim {
        for j in 0..dim {
            b.0[i][j] = gaussian(rng);
        }
    }
    let mut s = Vector::ZERO;
    if shifted {
        for i in 0..dim {
            s.0[i] = rng.random::<f64>();
        }
    }
    State { b, s }
}

#[derive(Clone, Debug)]
pub struct RestartOutcome {
    pub value: f64,
    pub state: State,
    pub evaluations: u64,
}

pub fn run_restart<O: Objective>(obj: &O, cfg: &OptimizerConfig, k: usize, seeds: &[State]) -> RestartOutcome {
    let dim = obj.dim();
    let shifted = obj.shifted();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(k as u64);
    let mut evaluations = 0u64;
    let seeded = seeds.get(k).and_then(|s| normalize(s, dim));
    let mut st = match seeded {
        Some(st) => st,
        None => loop {
            if let Some(n) = normalize(&random_state(dim, shifted, &mut rng), dim) {
                break n;
            }
        },
    };
    let mut f = obj.value(&st);
    evaluations += 1;
    let mut iter = 0usize;
    'stages: for &step in &cfg.schedule {
        let step = step * cfg.perturbation_scale;
        let mut fails = 0usize;
        while fails < cfg.patience {
            if iter >= cfg.max_iterations {
                break 'stages;
            }
            iter += 1;
            let cand = perturb(&st, dim, shifted, step, &mut rng, iter % 2 == 0);
            let d = cand.b.det().abs();
            evaluations += 1;
            // Any improvement needs m > floor.
            let floor = (f * d / obj.volume()).powf(1.0 / dim as f64);
            match obj.minimum(&cand, floor) {
                Some(m) if m > floor && m.is_finite() => {
                    let value = obj.value_from(&cand, m);
                    if value > f {
                        f = value;
                        st = cand;
                        fails = 0;
                    } else {
                        fails += 1;
                    }
                }
                _ => fails += 1,
            }
            if iter % cfg.reduce_every == 0 {
                if let Some(n) = normalize(&st, dim) {
                    st = n;
                }
            }
        }
    }
    let st = polish(obj, &st, &mut evaluations);
    RestartOutcome { value: obj.value(&st), state: st, evaluations }
}

fn lex_key(st: &State) -> Vec<f64> {
    st.b.0.iter().flatten().chain(st.s.0.iter()).copied().collect()
}

/// `true` when `a` beats `b`: higher value, ties broken by the smaller basis in lexicographic order.
pub fn better(a: &RestartOutcome, b: &RestartOutcome) -> bool {
    match a.value.total_cmp(&b.value) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => {
            let (ka, kb) = (lex_key(&a.state), lex_key(&b.state));
            for (x, y) in ka.iter().zip(&kb) {
                match x.total_cmp(y) {
                    std::cmp::Ordering::Less => return true,
                    std::cmp::Ordering::Greater => return false,
                    _ => {}
                }
            }
            false
        }
    }
}

/// Runs all restarts and reduces deterministically. Returns the winner index and all outcomes.
pub fn search<O: Objective>(obj: &O, cfg: &OptimizerConfig, seeds: &[State]) -> (usize, Vec<RestartOutcome>) {
    let n = cfg.restarts.max(seeds.len());
    let outcomes = map_range(n, cfg.exec, |k| run_restart(obj, cfg, k, seeds));
    let mut best = 0;
    for k in 1..outcomes.len() {
        if better(&outcomes[k], &outcomes[best]) {
            best = k;
        }
    }
    (best, outcomes)
}
