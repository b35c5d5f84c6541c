use packd::catalog::{make_body, BodySpec};
use packd::formulas::*;
use packd::optimize::{optimize_lattice, OptimizerConfig};
use proptest::prelude::*;

#[test]
fn decimals_match_their_expressions() {
    for v in all_values() {
        assert!((v.decimal_value() - v.value()).abs() <= 1e-12, "{}: {} vs {}", v.name, v.decimal, v.value());
    }
}

#[test]
fn bound_orderings() {
    let b = |n: &str| known_bound(n).unwrap().value();
    assert!(b("cone_T_max_lower") < b("cone_T_max_upper"));
    assert!(b("circular_cone_lattice_lower") < b("circular_cone_lattice_upper"));
    assert!(b("cone_Tstar_lower") < b("cone_symmetric_Tstar_lower"));
    assert_eq!(b("cone_T_max_lower"), 64.0 / 117.0);
    assert!((b("cone_T_max_lower") - 4.0 / 7.0 * b("square_pyramid_difference_body")).abs() <= 1e-15);
    assert!((b("cone_symmetric_T_min_lower") - 0.5 * b("tammela_hexagon_ratio")).abs() <= 1e-15);
}

#[test]
fn lookups() {
    assert_eq!(known_density("octahedron").unwrap().source, "Minkowski");
    assert!(known_bound("octahedron").is_err());
    assert!(matches!(known_density("nope"), Err(FormulaError::UnknownName(_))));
    let ball = known_density("ball").unwrap().value();
    assert!((known_density("ball_rhombic_dodecahedron").unwrap().value() - ball).abs() <= 1e-15);
}

#[test]
fn ledger_csv_is_well_formed() {
    let text = ledger_csv();
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
    assert_eq!(rows.len(), all_values().count());
    assert!(rows.iter().all(|row| row.len() == 7));
}

#[test]
fn chalk_slab_decreases() {
    let values: Vec<f64> = (1..=1000).map(|i| chalk_slab_density(i as f64 / 1000.0).unwrap()).collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]));
    assert!((values[999] - std::f64::consts::PI * 2f64.sqrt() / 6.0).abs() <= 1e-15);
    assert!(chalk_slab_density(0.0).is_err());
    assert!(chalk_slab_density(1.5).is_err());
}

#[test]
fn whitworth_branches_disagree_at_one() {
    let w = whitworth_slab_density(1.0).unwrap();
    assert!(!w.continuous);
    assert_eq!(w.branch, WhitworthBranch::Middle);
    assert!((w.value - 2.0 / 19.0).abs() <= 1e-15);
    assert!((whitworth_branch(WhitworthBranch::Thick, 1.0) - 18.0 / 19.0).abs() <= 1e-15);
    let half = whitworth_slab_density(0.5).unwrap();
    assert_eq!(half.branch, WhitworthBranch::Thin);
    assert!(!half.continuous);
    let thick = whitworth_slab_density(2.0).unwrap();
    assert!(thick.range_anomaly && thick.continuous);
    assert!(whitworth_slab_density(0.0).is_err());
    assert!(whitworth_slab_density(3.5).is_err());
}

/// Optimizer values for the cube slab: the outer branches agree as printed,
/// the middle one only after a factor of 9.
#[test]
fn whitworth_against_the_optimizer() {
    let cfg = OptimizerConfig::default().with_seed(3);
    let run = |l: f64| optimize_lattice(&make_body(&BodySpec::CubeSlab { lambda: l }).unwrap(), &cfg).unwrap().density;
    for l in [0.25, 0.4] {
        assert!((run(l) - whitworth_branch(WhitworthBranch::Thin, l)).abs() <= 1e-6, "{l}");
    }
    for l in [1.5, 2.0, 2.5] {
        assert!((run(l) - whitworth_branch(WhitworthBranch::Thick, l)).abs() <= 1e-6, "{l}");
    }
    for l in [0.75, 1.0] {
        let printed = whitworth_branch(WhitworthBranch::Middle, l);
        let found = run(l);
        assert!((found - printed).abs() > 0.5);
        assert!((found - 9.0 * printed).abs() <= 1e-6, "{l}");
    }
}

#[test]
fn chalk_against_the_optimizer() {
    let cfg = OptimizerConfig::default().with_seed(3);
    let l = 0.5;
    let k = make_body(&BodySpec::BallSlab { lambda: l, level: 3, sides: 64 }).unwrap();
    let found = optimize_lattice(&k, &cfg).unwrap().density;
    assert!((found - chalk_slab_density(l).unwrap()).abs() <= 0.015 * found);
}

proptest! {
    #[test]
    fn thin_branch_decreases(a in 0.001..0.5f64, b in 0.001..0.5f64) {
        prop_assume!(a < b);
        prop_assert!(whitworth_slab_density(a).unwrap().value > whitworth_slab_density(b).unwrap().value);
    }

    #[test]
    fn thick_branch_increases(a in 1.001..3.0f64, b in 1.001..3.0f64) {
        prop_assume!(a < b);
        prop_assert!(whitworth_slab_density(a).unwrap().value < whitworth_slab_density(b).unwrap().value);
    }
}
