mod common;

use packd::catalog::{make_body, BodySpec};
use packd::construct::square_pyramid_packing;
use packd::exec::Exec;
use packd::geom::{ConvexBody, Vector};
use packd::lattice::{Lattice, Motif, PeriodicArrangement};
use packd::verify::{check_arrangement, monte_carlo_density, periodic_density, periodic_density_exact, separation, Separation, VerifyError};
use proptest::prelude::*;

fn unit_cube() -> ConvexBody {
    let mut pts = Vec::new();
    for i in 0..8 {
        pts.push(Vector::new((i & 1) as f64, (i >> 1 & 1) as f64, (i >> 2 & 1) as f64));
    }
    ConvexBody::from_points(&pts, 3).unwrap()
}

fn cube_on(s: f64) -> PeriodicArrangement {
    PeriodicArrangement::lattice_packing(unit_cube(), Lattice::cubic(3, s).unwrap()).unwrap()
}

fn fcc_balls() -> PeriodicArrangement {
    let s = 2f64.sqrt();
    let l = Lattice::new(3, &[Vector::new(s, s, 0.0), Vector::new(s, 0.0, s), Vector::new(0.0, s, s)]).unwrap();
    PeriodicArrangement::lattice_packing(make_body(&BodySpec::Ball { level: 3 }).unwrap(), l).unwrap()
}

#[test]
fn cube_tiling_passes() {
    let r = check_arrangement(&cube_on(1.0), 3.0, Exec::Parallel).unwrap();
    assert!(r.passed);
    assert!(r.violations.is_empty());
    assert!(r.pairs_tested > 0);
    assert_eq!(periodic_density(&cube_on(1.0)).unwrap(), 1.0);
    assert_eq!(periodic_density_exact(&cube_on(1.0)).unwrap(), packd::geom::exact::ratio(1, 1));
}

#[test]
fn shrunken_cube_lattice_fails_with_witnesses() {
    let a = cube_on(0.9);
    let r = check_arrangement(&a, 3.0, Exec::Parallel).unwrap();
    assert!(!r.passed);
    let placed = a.motif.placed(0);
    for v in &r.violations {
        let p = placed.translate(a.lattice.point(v.first.coeffs));
        let q = placed.translate(a.lattice.point(v.second.coeffs));
        assert!(p.contains_interior(&v.witness, 1e-9) && q.contains_interior(&v.witness, 1e-9));
        assert!(v.depth > 1e-9);
    }
    assert!(matches!(periodic_density(&a), Err(VerifyError::Uncertified)));
}

#[test]
fn a_window_below_the_required_radius_is_refused() {
    let a = cube_on(1.0);
    assert!(matches!(check_arrangement(&a, 0.5, Exec::Sequential), Err(VerifyError::WindowTooSmall { .. })));
}

#[test]
fn sequential_and_parallel_reports_agree() {
    let a = cube_on(0.95);
    let p = check_arrangement(&a, 3.0, Exec::Parallel).unwrap();
    let s = check_arrangement(&a, 3.0, Exec::Sequential).unwrap();
    assert_eq!(p, s);
}

#[test]
fn square_pyramid_construction_is_certified() {
    let r = square_pyramid_packing().unwrap();
    let report = check_arrangement(&r.arrangement, 3.0, Exec::Parallel).unwrap();
    assert!(report.passed);
    assert_eq!(periodic_density_exact(&r.arrangement).unwrap(), packd::geom::exact::ratio(8, 15));
}

#[test]
fn cube_tiling_is_fully_covered() {
    let e = monte_carlo_density(&cube_on(1.0), 10.0, 1_000_000, 1, Exec::Parallel).unwrap();
    assert!((e.estimate - 1.0).abs() <= 1e-3);
    assert_eq!(e.samples, 1_000_000);
}

#[test]
fn fcc_icosphere_packing_matches_the_ball_density() {
    let a = fcc_balls();
    assert!(check_arrangement(&a, 4.0, Exec::Parallel).unwrap().passed);
    let ball = 4.0 / 3.0 * std::f64::consts::PI;
    let target = std::f64::consts::PI / 18f64.sqrt() * a.motif.volume() / ball;
    let e = monte_carlo_density(&a, 10.0, 1_000_000, 2, Exec::Parallel).unwrap();
    assert!((e.estimate - target).abs() <= 0.01, "{} vs {target}", e.estimate);
    assert!((periodic_density(&a).unwrap() - target).abs() <= 1e-12);
}

#[test]
fn empty_arrangement_has_zero_density() {
    let a = PeriodicArrangement::new(Lattice::cubic(3, 1.0).unwrap(), Motif { bodies: vec![], placements: vec![] }).unwrap();
    let e = monte_carlo_density(&a, 10.0, 10_000, 3, Exec::Sequential).unwrap();
    assert_eq!(e.estimate, 0.0);
    assert_eq!(e.hits, 0);
}

#[test]
fn sampling_rejects_bad_arguments() {
    let a = cube_on(1.0);
    assert!(monte_carlo_density(&a, 10.0, 100, 0, Exec::Sequential).is_err());
    assert!(monte_carlo_density(&a, -1.0, 10_000, 0, Exec::Sequential).is_err());
}

#[test]
fn sampling_does_not_depend_on_the_execution_policy() {
    let a = square_pyramid_packing().unwrap().arrangement;
    let p = monte_carlo_density(&a, 10.0, 100_000, 9, Exec::Parallel).unwrap();
    let s = monte_carlo_density(&a, 10.0, 100_000, 9, Exec::Sequential).unwrap();
    assert_eq!(p, s);
}

/// Root-mean-square error over independent seeds falls like `n^(-1/2)`.
#[test]
fn sampling_error_shrinks_at_the_square_root_rate() {
    let a = square_pyramid_packing().unwrap().arrangement;
    let truth = periodic_density(&a).unwrap();
    let seeds = 24u64;
    let mut pts = Vec::new();
    for k in 0..5 {
        let n = 10_000usize << k;
        let mse: f64 = (0..seeds)
            .map(|s| {
                let e = monte_carlo_density(&a, 1000.0, n, 100 * k + s, Exec::Parallel).unwrap();
                (e.estimate - truth).powi(2)
            })
            .sum::<f64>()
            / seeds as f64;
        pts.push(((n as f64).ln(), 0.5 * mse.ln()));
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    assert!((-0.75..=-0.25).contains(&slope), "slope {slope}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn separation_is_symmetric(seed in any::<u64>(), t in prop::array::uniform3(-1.5..1.5f64), planar in any::<bool>()) {
        let mut rng = common::rng(seed);
        let dim = if planar { 2 } else { 3 };
        let a = common::random_polytope(&mut rng, dim, 7);
        let mut t = Vector(t);
        if planar {
            t.0[2] = 0.0;
        }
        let b = common::random_polytope(&mut rng, dim, 7).translate(t);
        let ab = separation(&a, &b).unwrap();
        let ba = separation(&b, &a).unwrap();
        prop_assert_eq!(ab.is_disjoint(), ba.is_disjoint());
        match (ab, ba) {
            (Separation::Overlap { witness: w1, depth: d1 }, Separation::Overlap { witness: w2, depth: d2 }) => {
                prop_assert!((d1 - d2).abs() <= 1e-7);
                for w in [w1, w2] {
                    prop_assert!(a.contains(&w, 1e-9) && b.contains(&w, 1e-9));
                }
            }
            (Separation::Disjoint { normal, offset, .. }, _) => {
                prop_assert!(a.support(&normal) <= offset + 1e-9);
                prop_assert!(-b.support(&-normal) >= offset - 1e-9);
            }
            _ => {}
        }
    }
}
