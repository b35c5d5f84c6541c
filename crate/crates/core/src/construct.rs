//! Explicit periodic packings with exact densities, each certified by the verifier.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::catalog::{make_body, BodySpec};
use crate::exec::Exec;
use crate::geom::exact::{self, ratio, rational, Point};
use crate::geom::{min_enclosing_parallelogram, ConvexBody, GeomError, Isometry, Matrix, Vector};
use crate::lattice::{Lattice, LatticeError, Motif, PeriodicArrangement, Placement};
use crate::optimize::{optimize_lattice_seeded, OptimizeError, OptimizerConfig};
use crate::verify::{check_arrangement, periodic_density, VerificationReport, VerifyError};

/// Window radius used for certification unless the motif needs more.
pub const CERTIFY_WINDOW: f64 = 3.0;
/// Largest allowed gap between the exact and the floating-point density.
pub const DENSITY_AGREEMENT: f64 = 1e-12;

/// A densest lattice of the octahedron `|x| + |y| + |z| ≤ 1` (columns), determinant 38/27.
pub const OCTAHEDRON_LATTICE: [[(i64, i64); 3]; 3] = [
    [(-2, 3), (2, 3), (2, 3)],
    [(-2, 3), (-1, 1), (-1, 3)],
    [(-1, 3), (-2, 3), (1, 1)],
];

/// Rotation by a quarter turn about the z-axis, written out to keep it exact.
pub const QUARTER_TURN_Z: Matrix = Matrix([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConstructError {
    #[error("parameter {name} = {value} outside {range}")]
    OutOfRange { name: &'static str, value: f64, range: &'static str },
    #[error("base must be centrally symmetric")]
    NotSymmetric,
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Optimize(#[from] OptimizeError),
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructionReport {
    pub name: String,
    #[serde(skip)]
    pub arrangement: PeriodicArrangement,
    /// Motif volume over covolume in floating point.
    pub density: f64,
    /// The same quantity in exact arithmetic, when every input is rational.
    #[serde(serialize_with = "ser_opt_ratio")]
    pub exact_density: Option<BigRational>,
    /// Density of the copies of the first motif body alone, for mixed motifs.
    #[serde(serialize_with = "ser_opt_ratio")]
    pub primary_density: Option<BigRational>,
    pub claimed_bound: f64,
    pub verification: VerificationReport,
    pub verified: bool,
    /// Derived constants, one `key = value` per line.
    pub notes: Vec<String>,
}

fn ser_opt_ratio<S: serde::Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_some(&q.to_string()),
        None => s.serialize_none(),
    }
}

impl ConstructionReport {
    /// Density of the first motif body as a float (equals `density` for single-body motifs).
    pub fn primary_value(&self) -> f64 {
        self.primary_density.as_ref().and_then(|q| q.to_f64()).unwrap_or(self.density)
    }
}

type QMatrix = [Point; 3];

fn q_columns(cols: &QMatrix) -> Matrix {
    Matrix::from_columns([0, 1, 2].map(|j| Vector::new(exact::to_f64(&cols[j][0]), exact::to_f64(&cols[j][1]), exact::to_f64(&cols[j][2]))))
}

fn q_det(cols: &QMatrix) -> BigRational {
    exact::det3(&cols[0], &cols[1], &cols[2]).abs()
}

fn q_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    // columns: (AB)_j = A·b_j
    std::array::from_fn(|j| std::array::from_fn(|i| (0..3).fold(BigRational::zero(), |acc, k| acc + &a[k][i] * &b[j][k])))
}

fn octahedron_lattice_q() -> QMatrix {
    OCTAHEDRON_LATTICE.map(|col| col.map(|(n, d)| ratio(n, d)))
}

fn finish(
    name: &str,
    arrangement: PeriodicArrangement,
    exact_density: Option<BigRational>,
    primary_density: Option<BigRational>,
    claimed_bound: f64,
    notes: Vec<String>,
    exec: Exec,
) -> Result<ConstructionReport, ConstructError> {
    let window = CERTIFY_WINDOW.max(crate::verify::required_window(&arrangement));
    let verification = check_arrangement(&arrangement, window, exec)?;
    let density = arrangement.density();
    let agrees = exact_density.as_ref().is_none_or(|q| (exact::to_f64(q) - density).abs() <= DENSITY_AGREEMENT);
    let certified = periodic_density(&arrangement).is_ok();
    Ok(ConstructionReport {
        name: name.to_string(),
        density,
        verified: verification.passed && agrees && certified,
        arrangement,
        exact_density,
        primary_density,
        claimed_bound,
        verification,
        notes,
    })
}

fn check_range(name: &'static str, value: f64, ok: bool, range: &'static str) -> Result<(), ConstructError> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(ConstructError::OutOfRange { name, value, range })
    }
}

/// Square pyramids of height 1 on the unit square, density 8/15.
pub fn square_pyramid_packing() -> Result<ConstructionReport, ConstructError> {
    square_pyramid_packing_with_height(1.0, Exec::Parallel)
}

/// Two-layer lattice packing of the pyramid over `[0,1]²` with apex `(½, ½, h)`.
///
/// The bases tile a layer with unit squares on the lattice spanned by `(1, ½)`
/// and `(−½, 1)`, leaving square holes of side ½. The third vector lifts the
/// next layer by `h/2` and moves its bases so that the upper halves of the
/// pyramids below sit in its holes.
pub fn square_pyramid_packing_with_height(h: f64, exec: Exec) -> Result<ConstructionReport, ConstructError> {
    check_range("height", h, h > 0.0, "> 0")?;
    let body = make_body(&BodySpec::SquarePyramid { height: h }).map_err(|e| GeomError::Degenerate(e.to_string()))?;
    let hq = rational(h);
    let cols: QMatrix = [
        [ratio(1, 1), ratio(1, 2), ratio(0, 1)],
        [ratio(-1, 2), ratio(1, 1), ratio(0, 1)],
        [ratio(-3, 4), ratio(1, 4), &hq / ratio(2, 1)],
    ];
    let lattice = Lattice::from_matrix(3, q_columns(&cols))?;
    let exact_density = exact::volume(&body) / q_det(&cols);
    let notes = vec!["basis = (1, 1/2, 0), (-1/2, 1, 0), (-3/4, 1/4, h/2)".to_string(), "layer area = 5/4".to_string()];
    let arrangement = PeriodicArrangement::lattice_packing(body, lattice)?;
    finish("square_pyramid", arrangement, Some(exact_density), None, 8.0 / 15.0, notes, exec)
}

/// The hexagon `[0,1]²` minus the corner triangles at `(0,0)` and `(1,1)` with legs `a` along x and `b` along y.
pub fn normal_form_hexagon(a: f64, b: f64) -> Result<ConvexBody, ConstructError> {
    check_range("a", a, (0.0..=0.5).contains(&a), "0 <= a <= 1/2")?;
    check_range("b", b, (0.0..=0.5).contains(&b), "0 <= b <= 1/2")?;
    let pts = [(a, 0.0), (1.0, 0.0), (1.0, 1.0 - b), (1.0 - a, 1.0), (0.0, 1.0), (0.0, b)].map(|(x, y)| Vector::planar(x, y));
    Ok(ConvexBody::from_points(&pts, 2)?)
}

/// Planar lattice data for the hexagon pair: basis `u, w` and the offset `p`
/// of the half-size copy, relative to the centre of `H`.
#[derive(Clone, Debug, PartialEq)]
pub struct HexagonPairLattice {
    pub u: [BigRational; 2],
    pub w: [BigRational; 2],
    pub p: [BigRational; 2],
    /// Area of the fundamental cell.
    pub det: BigRational,
}

/// Lattice with holes for `½H` next to every `H`.
///
/// Starting from the square case (cell area 5/4), cutting the corners lets two
/// neighbouring rows slide together by `2t` with
/// `t = max(0, a − a/(4b), b − b/(4a))`, giving cell area `5/4 − t`.
pub fn hexagon_pair_lattice(a: f64, b: f64) -> HexagonPairLattice {
    let (qa, qb) = (rational(a), rational(b));
    let quarter = ratio(1, 4);
    let slide = |s: &BigRational, l: &BigRational| if l.is_zero() { None } else { Some(s - s * &quarter / l) };
    let ta = slide(&qa, &qb);
    let tb = slide(&qb, &qa);
    let zero = BigRational::zero();
    let best = |x: Option<BigRational>| x.filter(|v| v > &zero);
    let (t, transposed) = match (best(ta), best(tb)) {
        (Some(x), Some(y)) if y > x => (y, true),
        (Some(x), _) => (x, false),
        (None, Some(y)) => (y, true),
        (None, None) => (zero.clone(), false),
    };
    let one = ratio(1, 1);
    let x = &one - ratio(2, 1) * &t;
    let (u, w, p) = (
        [x.clone(), ratio(1, 2)],
        [&x - ratio(3, 2), one.clone()],
        [&x - ratio(3, 4), ratio(3, 4)],
    );
    let swap = |v: [BigRational; 2]| if transposed { [v[1].clone(), v[0].clone()] } else { v };
    HexagonPairLattice { u: swap(u), w: swap(w), p: swap(p), det: ratio(5, 4) - t }
}

fn planar(v: &[BigRational; 2]) -> Vector {
    Vector::planar(exact::to_f64(&v[0]), exact::to_f64(&v[1]))
}

/// Lattice packing of the pair `{H, ½H + p}` in the plane.
pub fn hexagon_pair_tiling(a: f64, b: f64) -> Result<ConstructionReport, ConstructError> {
    let h = normal_form_hexagon(a, b)?;
    let c = Vector::planar(0.5, 0.5);
    let small = h.translate(-c).scaled(0.5)?.translate(c);
    let data = hexagon_pair_lattice(a, b);
    let lattice = Lattice::new(2, &[planar(&data.u), planar(&data.w)])?;
    let motif = Motif { bodies: vec![h.clone(), small.clone()], placements: vec![Placement::translate(0, Vector::ZERO), Placement::translate(1, planar(&data.p))] };
    let area = exact::volume(&h);
    let exact_density = (&area + exact::volume(&small)) / &data.det;
    let primary = &area / &data.det;
    let notes = vec![
        format!("u = ({}, {})", data.u[0], data.u[1]),
        format!("w = ({}, {})", data.w[0], data.w[1]),
        format!("p = ({}, {})", data.p[0], data.p[1]),
        format!("cell area = {}", data.det),
    ];
    let arrangement = PeriodicArrangement::new(lattice, motif)?;
    finish("hexagon_pair", arrangement, Some(exact_density), Some(primary), 0.75, notes, Exec::Parallel)
}

/// Cones over the normal-form hexagon, apex above its centre at height 1.
pub fn cone_over_hexagon_packing(a: f64, b: f64) -> Result<ConstructionReport, ConstructError> {
    cone_over_hexagon_packing_with_height(a, b, 1.0, Exec::Parallel)
}

/// Layers of cones on the hexagon-pair lattice, each layer lifted by `h/2` and
/// shifted by `−p` so that the apices below poke into its `½H` holes.
pub fn cone_over_hexagon_packing_with_height(a: f64, b: f64, h: f64, exec: Exec) -> Result<ConstructionReport, ConstructError> {
    check_range("height", h, h > 0.0, "> 0")?;
    let base = normal_form_hexagon(a, b)?;
    let cone = ConvexBody::cone_over(&base, Vector::new(0.5, 0.5, h))?;
    let data = hexagon_pair_lattice(a, b);
    let z = ratio(0, 1);
    let cols: QMatrix = [
        [data.u[0].clone(), data.u[1].clone(), z.clone()],
        [data.w[0].clone(), data.w[1].clone(), z],
        [-&data.p[0], -&data.p[1], rational(h) / ratio(2, 1)],
    ];
    let lattice = Lattice::from_matrix(3, q_columns(&cols))?;
    let exact_density = exact::volume(&cone) / q_det(&cols);
    let notes = vec![
        format!("u = ({}, {}, 0)", data.u[0], data.u[1]),
        format!("w = ({}, {}, 0)", data.w[0], data.w[1]),
        format!("t = ({}, {}, h/2)", -&data.p[0], -&data.p[1]),
    ];
    let arrangement = PeriodicArrangement::lattice_packing(cone, lattice)?;
    finish("cone_over_hexagon", arrangement, Some(exact_density), None, 0.5, notes, exec)
}

/// The pair `{C, −C}` glued base to base inside the affine octahedron over the
/// smallest parallelogram containing the base, packed on the image of
/// [`OCTAHEDRON_LATTICE`].
pub fn octahedron_enclosure_packing(base: &ConvexBody) -> Result<ConstructionReport, ConstructError> {
    octahedron_enclosure_packing_with(base, Exec::Parallel)
}

pub fn octahedron_enclosure_packing_with(base: &ConvexBody, exec: Exec) -> Result<ConstructionReport, ConstructError> {
    if base.dim() != 2 {
        return Err(GeomError::DimensionMismatch(base.dim(), 2).into());
    }
    let par = match min_enclosing_parallelogram(base) {
        Err(GeomError::NotSymmetric) => return Err(ConstructError::NotSymmetric),
        r => r?,
    };
    let q = &par.corners;
    let center = (q[0] + q[1] + q[2] + q[3]) * 0.25;
    let e1 = (q[0] - q[1]) * 0.5;
    let e2 = (q[1] - q[2]) * 0.5;
    let apex = center + Vector::axis(2);
    let cone = ConvexBody::cone_over(base, apex)?;
    // square (±1, ±1, 0), (0, 0, ±1) onto the enclosing octahedron, then the regular octahedron onto the square one
    let frame = Matrix::from_columns([e1, e2, Vector::axis(2)]);
    let square = Matrix::from_columns([Vector::new(1.0, 1.0, 0.0), Vector::new(1.0, -1.0, 0.0), Vector::axis(2)]);
    let basis = frame * square * q_columns(&octahedron_lattice_q());
    let lattice = Lattice::from_matrix(3, basis)?;
    let motif = Motif::pair_with_reflection(cone.clone(), center * 2.0);
    let ratio_value = par.ratio;
    let exact_density = exact_enclosure_density(&cone, e1, e2);
    let notes = vec![
        format!("parallelogram area ratio = {ratio_value}"),
        format!("e1 = {:?}", e1.to_vec(2)),
        format!("e2 = {:?}", e2.to_vec(2)),
    ];
    let arrangement = PeriodicArrangement::new(lattice, motif)?;
    finish("octahedron_enclosure", arrangement, exact_density, None, 27.0 / 38.0, notes, exec)
}

fn exact_enclosure_density(cone: &ConvexBody, e1: Vector, e2: Vector) -> Option<BigRational> {
    let r = |x: f64| exact::rationalize(x, 1 << 20);
    let (z, one) = (ratio(0, 1), ratio(1, 1));
    let frame: QMatrix = [[r(e1.x())?, r(e1.y())?, z.clone()], [r(e2.x())?, r(e2.y())?, z.clone()], [z.clone(), z.clone(), one.clone()]];
    let square: QMatrix = [[one.clone(), one.clone(), z.clone()], [one.clone(), -one.clone(), z.clone()], [z.clone(), z, one]];
    let cols = q_mul(&q_mul(&frame, &square), &octahedron_lattice_q());
    let verts: Option<Vec<Point>> = cone.vertices().iter().map(|v| Some([r(v.x())?, r(v.y())?, r(v.z())?])).collect();
    Some(ratio(2, 1) * exact::volume_with(cone, &verts?) / q_det(&cols))
}

/// Two regular tetrahedra, the second turned a quarter about z and shifted by
/// `(1, 1, 0)`, repeated on `2Z³`. Density 2/3.
pub fn conway_torquato_packing() -> Result<ConstructionReport, ConstructError> {
    conway_torquato_packing_with(Exec::Parallel)
}

pub fn conway_torquato_packing_with(exec: Exec) -> Result<ConstructionReport, ConstructError> {
    let t = make_body(&BodySpec::Tetrahedron).map_err(|e| GeomError::Degenerate(e.to_string()))?;
    let half = Vector::new(0.5, 0.5, 0.0);
    let motif = Motif {
        bodies: vec![t.clone()],
        placements: vec![Placement::translate(0, -half), Placement { body: 0, iso: Isometry::new(QUARTER_TURN_Z, half)? }],
    };
    let lattice = Lattice::cubic(3, 2.0)?;
    let exact_density = ratio(2, 1) * exact::volume(&t) / ratio(8, 1);
    let notes = vec![
        "tetrahedron = conv{(1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1)}".to_string(),
        "placements: translate (-1/2, -1/2, 0); quarter turn about z then translate (1/2, 1/2, 0)".to_string(),
        "lattice = 2Z^3".to_string(),
    ];
    let arrangement = PeriodicArrangement::new(lattice, motif)?;
    finish("conway_torquato", arrangement, Some(exact_density), None, 2.0 / 3.0, notes, exec)
}

/// `(2 + √2)π/24`.
pub fn circular_cone_lower_bound() -> f64 {
    (2.0 + 2f64.sqrt()) * std::f64::consts::PI / 24.0
}

/// Lattice packing of the cone over a regular `n`-gon inscribed in the unit
/// circle, found by the optimizer started from the two-layer pyramid pattern
/// of the circumscribed square.
pub fn circular_cone_packing(n: usize, cfg: &OptimizerConfig) -> Result<ConstructionReport, ConstructError> {
    check_range("n", n as f64, n >= 16, ">= 16")?;
    let cone = make_body(&BodySpec::CircularCone { sides: n, height: 1.0 }).map_err(|e| GeomError::Degenerate(e.to_string()))?;
    let seed = Matrix::from_columns([Vector::new(2.0, 1.0, 0.0), Vector::new(-1.0, 2.0, 0.0), Vector::new(-1.5, 0.5, 0.5)]);
    let result = optimize_lattice_seeded(&cone, cfg, &[seed])?;
    let notes = vec![format!("seed = {}, restarts = {}", cfg.seed, cfg.restarts), format!("best restart = {}", result.best_restart)];
    let arrangement = PeriodicArrangement::lattice_packing(cone, result.lattice)?;
    finish("circular_cone", arrangement, None, None, circular_cone_lower_bound(), notes, cfg.exec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octahedron_lattice_has_the_right_determinant() {
        assert_eq!(q_det(&octahedron_lattice_q()), ratio(38, 27));
    }

    #[test]
    fn square_case_has_cell_area_five_quarters() {
        assert_eq!(hexagon_pair_lattice(0.0, 0.0).det, ratio(5, 4));
        assert_eq!(hexagon_pair_lattice(0.5, 0.5).det, ratio(1, 1));
        assert_eq!(hexagon_pair_lattice(0.25, 0.5).det, hexagon_pair_lattice(0.5, 0.25).det);
    }

    #[test]
    fn leg_limits_enforced() {
        assert!(matches!(hexagon_pair_tiling(0.6, 0.1), Err(ConstructError::OutOfRange { .. })));
    }
}
