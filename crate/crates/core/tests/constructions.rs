mod common;

use packd::catalog::{affine_regular_hexagon, make_base, BaseSpec};
use packd::construct::{self, ConstructionReport, OCTAHEDRON_LATTICE};
use packd::exec::Exec;
use packd::geom::{exact, ConvexBody, Matrix, Vector};
use packd::lattice::{Lattice, Motif, PeriodicArrangement, Placement};
use packd::verify::{check_arrangement, periodic_density, periodic_density_exact, required_window};
use rand::Rng;

fn assert_consistent(r: &ConstructionReport) {
    assert!(r.verified, "{}", r.name);
    assert!(r.verification.passed && r.verification.window_radius >= 3.0, "{}", r.name);
    assert!((periodic_density(&r.arrangement).unwrap() - r.density).abs() <= 1e-12, "{}", r.name);
    if let Some(q) = &r.exact_density {
        assert!((exact::to_f64(q) - r.density).abs() <= 1e-12, "{}", r.name);
    }
}

#[test]
fn exact_densities() {
    let cases = [
        (construct::square_pyramid_packing().unwrap(), exact::ratio(8, 15)),
        (construct::conway_torquato_packing().unwrap(), exact::ratio(2, 3)),
        (construct::cone_over_hexagon_packing(0.5, 0.5).unwrap(), exact::ratio(1, 2)),
        (construct::octahedron_enclosure_packing(&affine_regular_hexagon()).unwrap(), exact::ratio(27, 38)),
        (construct::octahedron_enclosure_packing(&make_base(&BaseSpec::Square).unwrap()).unwrap(), exact::ratio(18, 19)),
    ];
    for (r, q) in cases {
        assert_consistent(&r);
        assert_eq!(r.exact_density.as_ref(), Some(&q), "{}", r.name);
        let from_floats = periodic_density_exact(&r.arrangement).unwrap();
        assert!((exact::to_f64(&from_floats) - exact::to_f64(&q)).abs() <= 1e-12, "{}", r.name);
    }
}

#[test]
fn hexagon_pair_reaches_three_quarters() {
    let r = construct::hexagon_pair_tiling(0.5, 0.5).unwrap();
    assert_consistent(&r);
    assert_eq!(r.primary_density, Some(exact::ratio(3, 4)));
    assert_eq!(r.exact_density, Some(exact::ratio(15, 16)));
}

/// Primary density `(1 − ab)/(5/4 − t)` recomputed in floating point, and the
/// packing re-verified, over a grid of legs.
#[test]
fn hexagon_pair_grid() {
    for i in 0..=10 {
        for j in 0..=10 {
            let (a, b) = (i as f64 / 20.0, j as f64 / 20.0);
            let r = construct::hexagon_pair_tiling(a, b).unwrap();
            assert_consistent(&r);
            let mut t: f64 = 0.0;
            if b > 0.0 {
                t = t.max(a - a / (4.0 * b));
            }
            if a > 0.0 {
                t = t.max(b - b / (4.0 * a));
            }
            let expected = (1.0 - a * b) / (1.25 - t);
            assert!((r.primary_value() - expected).abs() <= 1e-12, "a={a} b={b}");
            assert!(r.primary_value() >= 0.75 - 1e-12);
        }
    }
}

#[test]
fn hexagon_legs_are_range_checked() {
    assert!(construct::normal_form_hexagon(0.6, 0.1).is_err());
    assert!(construct::hexagon_pair_tiling(0.2, -0.1).is_err());
    assert!(construct::cone_over_hexagon_packing(f64::NAN, 0.2).is_err());
}

#[test]
fn cone_over_hexagon_is_smallest_for_the_affine_regular_hexagon() {
    let at_half = construct::cone_over_hexagon_packing(0.5, 0.5).unwrap().density;
    let mut min = f64::INFINITY;
    for i in 1..=10 {
        for j in 1..=10 {
            let r = construct::cone_over_hexagon_packing(i as f64 / 20.0, j as f64 / 20.0).unwrap();
            assert_consistent(&r);
            min = min.min(r.density);
        }
    }
    assert!((min - at_half).abs() <= 1e-12, "{min} vs {at_half}");
}

#[test]
fn densities_do_not_depend_on_cone_height() {
    for h in [0.3, 1.0, 2.5, 7.0] {
        let r = construct::square_pyramid_packing_with_height(h, Exec::Parallel).unwrap();
        assert_consistent(&r);
        assert_eq!(r.exact_density, Some(exact::ratio(8, 15)), "h={h}");
        let c = construct::cone_over_hexagon_packing_with_height(0.5, 0.5, h, Exec::Parallel).unwrap();
        assert_consistent(&c);
        assert!((c.density - 0.5).abs() <= 1e-12, "h={h}");
    }
}

fn stretched(a: &PeriodicArrangement, m: &Matrix) -> PeriodicArrangement {
    let bodies: Vec<ConvexBody> = a.motif.placed_all().iter().map(|b| b.affine_image(m, Vector::ZERO).unwrap()).collect();
    let placements = (0..bodies.len()).map(|i| Placement::translate(i, Vector::ZERO)).collect();
    PeriodicArrangement::new(a.lattice.transformed(m).unwrap(), Motif { bodies, placements }).unwrap()
}

#[test]
fn constructions_survive_a_stretch() {
    let m = Matrix::diag([2.0, 1.0, 1.0]);
    for r in [
        construct::square_pyramid_packing().unwrap(),
        construct::conway_torquato_packing().unwrap(),
        construct::octahedron_enclosure_packing(&affine_regular_hexagon()).unwrap(),
    ] {
        let s = stretched(&r.arrangement, &m);
        assert!(check_arrangement(&s, required_window(&s).max(3.0), Exec::Parallel).unwrap().passed, "{}", r.name);
        assert!((s.density() - r.density).abs() <= 1e-9, "{}", r.name);
    }
}

fn random_hexagon(rng: &mut impl Rng) -> ConvexBody {
    loop {
        let mut angles: Vec<f64> = (0..3).map(|_| rng.random_range(0.0..std::f64::consts::PI)).collect();
        angles.sort_by(f64::total_cmp);
        let pts: Vec<Vector> = angles
            .iter()
            .flat_map(|t| {
                let r = rng.random_range(0.3..1.5);
                let p = Vector::planar(r * t.cos(), r * t.sin());
                [p, -p]
            })
            .collect();
        if let Ok(h) = ConvexBody::from_points(&pts, 2) {
            if h.vertices().len() == 6 {
                return h;
            }
        }
    }
}

#[test]
fn octahedron_enclosure_beats_27_38_on_random_hexagons() {
    let mut rng = common::rng(27);
    for _ in 0..100 {
        let h = random_hexagon(&mut rng);
        let r = construct::octahedron_enclosure_packing(&h).unwrap();
        assert_consistent(&r);
        assert!(r.density >= 27.0 / 38.0 - 1e-9, "{}", r.density);
    }
}

#[test]
fn octahedron_lattice_is_critical() {
    let cols: Vec<[f64; 3]> = OCTAHEDRON_LATTICE.iter().map(|c| c.map(|(n, d)| n as f64 / d as f64)).collect();
    let l = Lattice::new(3, &cols.iter().map(|c| Vector(*c)).collect::<Vec<_>>()).unwrap();
    assert!((l.det() - 38.0 / 27.0).abs() <= 1e-12);
    let mut min = f64::INFINITY;
    for a in -6i64..=6 {
        for b in -6i64..=6 {
            for c in -6i64..=6 {
                if (a, b, c) == (0, 0, 0) {
                    continue;
                }
                let p = l.point([a, b, c]);
                min = min.min(p.0.iter().map(|x| x.abs()).sum());
            }
        }
    }
    assert!((min - 2.0).abs() <= 1e-12);
}

#[test]
fn circular_cone_between_known_bounds() {
    let r = construct::circular_cone_packing(64, &packd::optimize::OptimizerConfig::default().with_seed(7)).unwrap();
    assert!(r.verified);
    let lower = (2.0 + 2f64.sqrt()) * std::f64::consts::PI / 24.0;
    assert!((construct::circular_cone_lower_bound() - lower).abs() <= 1e-15);
    assert!(r.density >= 0.44);
    assert!(r.density <= 2f64.sqrt() * std::f64::consts::PI / 9.0);
    assert!(construct::circular_cone_packing(8, &Default::default()).is_err());
}
