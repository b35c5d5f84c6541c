mod common;

use packd::catalog::{make_base, make_body, BaseSpec, BodySpec, BODIES, BASES};
use packd::geom::{exact, ConvexBody, Vector};
use rand::Rng;

fn every_body() -> Vec<(String, ConvexBody)> {
    BODIES
        .iter()
        .map(|e| {
            let spec: BodySpec = e.name.parse().unwrap();
            (e.name.to_string(), make_body(&spec).unwrap())
        })
        .collect()
}

#[test]
fn catalog_bodies_are_valid_polytopes() {
    for (name, k) in every_body() {
        assert_eq!(k.dim(), 3, "{name}");
        assert!(k.volume() > 0.0, "{name}");
        assert!(k.representation_defect() <= 1e-9, "{name}: {}", k.representation_defect());
        for f in k.facets() {
            assert!((f.normal.norm() - 1.0).abs() <= 1e-12, "{name}");
            for v in k.vertices() {
                assert!(f.normal.dot(v) <= f.offset + 1e-9, "{name}");
            }
        }
    }
}

#[test]
fn bases_are_valid_polygons() {
    for e in BASES {
        let b = make_base(&e.name.parse::<BaseSpec>().unwrap()).unwrap();
        assert_eq!(b.dim(), 2);
        assert!(b.volume() > 0.0, "{}", e.name);
    }
}

#[test]
fn specs_round_trip_through_text() {
    for e in BODIES {
        let spec: BodySpec = e.name.parse().unwrap();
        assert_eq!(spec.to_string().parse::<BodySpec>().unwrap(), spec);
    }
    assert!("dodecahedron".parse::<BodySpec>().is_err());
    assert!(make_body(&BodySpec::CubeSlab { lambda: 0.0 }).is_err());
    assert!(make_body(&BodySpec::BallSlab { lambda: 1.5, level: 3, sides: 64 }).is_err());
}

#[test]
fn known_volumes() {
    let cube = make_body(&BodySpec::Cube).unwrap();
    assert_eq!(exact::volume(&cube), exact::ratio(8, 1));
    let oct = make_body(&BodySpec::Octahedron).unwrap();
    assert_eq!(exact::volume(&oct), exact::ratio(4, 3));
    let tet = make_body(&BodySpec::Tetrahedron).unwrap();
    assert_eq!(exact::volume(&tet), exact::ratio(8, 3));
    let pyr = make_body(&BodySpec::SquarePyramid { height: 1.0 }).unwrap();
    assert_eq!(exact::volume(&pyr), exact::ratio(1, 3));
    let rd = make_body(&BodySpec::RhombicDodecahedron).unwrap();
    assert_eq!(exact::volume(&rd), exact::ratio(16, 1));
    let ball = make_body(&BodySpec::Ball { level: 3 }).unwrap();
    let full = 4.0 / 3.0 * std::f64::consts::PI;
    assert!(ball.volume() < full && ball.volume() > 0.98 * full);
}

#[test]
fn cube_slabs_grow_with_lambda() {
    let bodies: Vec<ConvexBody> = (1..=12).map(|i| make_body(&BodySpec::CubeSlab { lambda: i as f64 / 4.0 }).unwrap()).collect();
    for w in bodies.windows(2) {
        assert!(w[0].volume() < w[1].volume());
        for v in w[0].vertices() {
            assert!(w[1].contains(v, 1e-9));
        }
    }
}

/// Inscribed approximations of nested smooth slabs need not nest, so containment
/// is checked against the smooth body.
#[test]
fn ball_slabs_grow_with_lambda() {
    let lambdas: Vec<f64> = (1..=10).map(|i| i as f64 / 10.0).collect();
    let bodies: Vec<ConvexBody> =
        lambdas.iter().map(|&l| make_body(&BodySpec::BallSlab { lambda: l, level: 3, sides: 64 }).unwrap()).collect();
    for i in 1..bodies.len() {
        assert!(bodies[i - 1].volume() < bodies[i].volume());
        for v in bodies[i - 1].vertices() {
            assert!(v.norm() <= 1.0 + 1e-12 && v.z().abs() <= lambdas[i]);
        }
    }
}

#[test]
fn symmetric_bodies_are_their_own_difference_body() {
    let specs = [
        BodySpec::Octahedron,
        BodySpec::Cube,
        BodySpec::CubeSlab { lambda: 0.7 },
        BodySpec::BallSlab { lambda: 0.5, level: 3, sides: 64 },
        BodySpec::DoubleCone { sides: 64 },
        BodySpec::AffineOctahedron,
        BodySpec::RhombicDodecahedron,
    ];
    for s in specs {
        let k = make_body(&s).unwrap();
        assert!(k.is_centrally_symmetric(), "{s}");
        let r = k.volume() / k.difference_body().volume();
        assert!((r - 1.0).abs() <= 1e-9, "{s}: {r}");
    }
}

#[test]
fn pyramids_have_ratio_four_sevenths_exactly() {
    for s in [BodySpec::SquarePyramid { height: 1.0 }, BodySpec::HexagonalPyramid { height: 1.0 }] {
        let k = make_body(&s).unwrap();
        assert_eq!(exact::volume(&k) / exact::volume(&k.difference_body()), exact::ratio(4, 7), "{s}");
    }
}

/// Containment against planes rebuilt from boundary triangles, away from the boundary.
#[test]
fn containment_agrees_with_triangle_planes() {
    let mut rng = common::rng(11);
    for (name, k) in every_body() {
        let v = k.vertices();
        let c = k.vertex_mean();
        let planes: Vec<(Vector, f64)> = k
            .triangles()
            .iter()
            .map(|t| {
                let mut n = (v[t[1]] - v[t[0]]).cross(&(v[t[2]] - v[t[0]])).normalized().unwrap();
                if n.dot(&(c - v[t[0]])) > 0.0 {
                    n = -n;
                }
                (n, n.dot(&v[t[0]]))
            })
            .collect();
        let r = k.radius_about(&Vector::ZERO) * 1.2;
        let mut inside = 0;
        for _ in 0..100_000 {
            let p = Vector::new(rng.random_range(-r..r), rng.random_range(-r..r), rng.random_range(-r..r));
            let slack = planes.iter().map(|(n, h)| h - n.dot(&p)).fold(f64::INFINITY, f64::min);
            if slack.abs() < 1e-7 {
                continue;
            }
            assert_eq!(k.contains(&p, 1e-9), slack > 0.0, "{name} at {p:?}");
            inside += usize::from(slack > 0.0);
        }
        assert!(inside > 0, "{name}");
    }
}
