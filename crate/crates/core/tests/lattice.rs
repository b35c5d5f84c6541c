mod common;

use packd::catalog::{make_body, BodySpec};
use packd::exec::Exec;
use packd::geom::{Matrix, Vector};
use packd::lattice::{admissibility_certificate, admissible_translative, lattice_density, Lattice, PeriodicArrangement};
use packd::verify::{check_arrangement, required_window};
use proptest::prelude::*;

/// Products of elementary shears.
fn unimodular() -> impl Strategy<Value = Matrix> {
    prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 1..8).prop_map(|ops| {
        let mut m = Matrix::IDENTITY;
        for (i, j, k) in ops {
            if i != j {
                for c in 0..3 {
                    m.0[j][c] += k as f64 * m.0[i][c];
                }
            }
        }
        m
    })
}

#[test]
fn cubic_lattice_packs_the_cube_exactly() {
    let cube = make_body(&BodySpec::Cube).unwrap();
    let l = Lattice::cubic(3, 2.0).unwrap();
    assert!(admissible_translative(&cube, &l));
    assert_eq!(lattice_density(&cube, &l).unwrap(), 1.0);
    assert!(!admissible_translative(&cube, &Lattice::cubic(3, 1.99).unwrap()));
}

#[test]
fn enumeration_matches_brute_force() {
    let mut rng = common::rng(5);
    for _ in 0..20 {
        let (_, l) = common::random_instance(&mut rng, 3);
        let r = 2.5 * l.det().cbrt();
        let fast = l.enumerate(r).unwrap();
        let mut slow = Vec::new();
        for a in -30i64..=30 {
            for b in -30i64..=30 {
                for c in -30i64..=30 {
                    let p = l.point([a, b, c]);
                    if (a, b, c) != (0, 0, 0) && p.norm() <= r {
                        slow.push(p);
                    }
                }
            }
        }
        assert_eq!(fast.len(), slow.len());
        for p in &slow {
            assert!(fast.iter().any(|q| q.distance(p) <= 1e-9));
        }
    }
}

#[test]
fn reduction_keeps_the_lattice() {
    let l = Lattice::new(3, &[Vector::new(1.0, 0.0, 0.0), Vector::new(7.0, 1.0, 0.0), Vector::new(-5.0, 13.0, 1.0)]).unwrap();
    let r = l.reduced();
    assert!((r.det() - l.det()).abs() <= 1e-9);
    for v in r.vectors() {
        let c = l.coordinates(&v);
        for x in c.0 {
            assert!((x - x.round()).abs() <= 1e-9);
        }
        assert!(v.norm() <= 1.0 + 1e-9);
    }
}

#[test]
fn certificate_reports_a_violating_point() {
    let oct = make_body(&BodySpec::Octahedron).unwrap();
    let l = Lattice::cubic(3, 1.0).unwrap();
    let c = admissibility_certificate(&oct, &l, 1e-9).unwrap();
    assert!(!c.admissible);
    let p = c.violation.unwrap();
    assert!(oct.difference_set().contains_interior(&p, 1e-9));
    assert!(c.min_gauge < 1.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scaling_up_preserves_admissibility(seed in any::<u64>(), c in 1.0..3.0f64) {
        let mut rng = common::rng(seed);
        let (k, l) = common::random_instance(&mut rng, 3);
        if admissible_translative(&k, &l) {
            prop_assert!(admissible_translative(&k, &l.scaled(c).unwrap()));
        }
    }

    #[test]
    fn admissibility_is_affine_invariant(seed in any::<u64>(), m in prop::array::uniform9(-2.0..2.0f64)) {
        let mut rng = common::rng(seed);
        let (k, l) = common::random_instance(&mut rng, 3);
        let m = Matrix([[m[0], m[1], m[2]], [m[3], m[4], m[5]], [m[6], m[7], m[8]]]);
        prop_assume!(m.det().abs() > 0.2);
        let mk = k.affine_image(&m, Vector::new(0.3, -0.1, 2.0)).unwrap();
        let ml = l.transformed(&m).unwrap();
        let gap = admissibility_certificate(&k, &l, 1e-9).unwrap().min_gauge;
        prop_assume!((gap - 1.0).abs() > 1e-6);
        prop_assert_eq!(admissible_translative(&k, &l), admissible_translative(&mk, &ml));
        if let (Ok(a), Ok(b)) = (lattice_density(&k, &l), lattice_density(&mk, &ml)) {
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }

    #[test]
    fn basis_change_does_not_matter(seed in any::<u64>(), um in unimodular()) {
        let mut rng = common::rng(seed);
        let (k, l) = common::random_instance(&mut rng, 3);
        let other = Lattice::from_matrix(3, *l.basis() * um).unwrap();
        prop_assert_eq!(admissible_translative(&k, &l), admissible_translative(&k, &other));
    }

    #[test]
    fn verifier_agrees_with_difference_body_criterion(seed in any::<u64>(), planar in any::<bool>()) {
        let mut rng = common::rng(seed);
        let dim = if planar { 2 } else { 3 };
        let (k, l) = common::random_instance(&mut rng, dim);
        let a = PeriodicArrangement::lattice_packing(k.clone(), l.clone()).unwrap();
        let report = check_arrangement(&a, required_window(&a), Exec::Sequential).unwrap();
        prop_assert_eq!(report.passed, admissible_translative(&k, &l));
    }
}
