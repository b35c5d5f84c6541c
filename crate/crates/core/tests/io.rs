use packd::catalog::{make_body, BodySpec};
use packd::construct;
use packd::io::{arrangement_from_json, arrangement_to_obj, body_from_json, body_to_json, ArrangementFile};

#[test]
fn bodies_round_trip() {
    for spec in [BodySpec::Tetrahedron, BodySpec::DoubleCone { sides: 16 }] {
        let k = make_body(&spec).unwrap();
        let back = body_from_json(&body_to_json(&k)).unwrap();
        assert_eq!(back.vertices().len(), k.vertices().len());
        assert!((back.volume() - k.volume()).abs() <= 1e-12);
    }
}

#[test]
fn arrangements_round_trip() {
    for r in [construct::conway_torquato_packing().unwrap(), construct::hexagon_pair_tiling(0.3, 0.4).unwrap()] {
        let text = serde_json::to_string(&ArrangementFile::from_arrangement(&r.arrangement)).unwrap();
        let back = arrangement_from_json(&text).unwrap();
        assert_eq!(back.dim(), r.arrangement.dim());
        assert!((back.density() - r.density).abs() <= 1e-12);
        assert_eq!(back.motif.placements.len(), r.arrangement.motif.placements.len());
    }
}

#[test]
fn malformed_input_is_an_error() {
    assert!(arrangement_from_json("{\"dim\": 3, \"lattice\": [[1,0,0]").is_err());
    assert!(arrangement_from_json("{\"dim\": 3, \"lattice\": [[1,0,0],[0,1,0],[0,0,1]], \"bodies\": [], \"placements\": []}").is_ok());
    assert!(body_from_json("{\"dim\": 3, \"vertices\": [[0,0,0],[1,0,0],[0,1,0]]}").is_err());
}

#[test]
fn obj_export_has_every_copy() {
    let r = construct::square_pyramid_packing().unwrap();
    let obj = arrangement_to_obj(&r.arrangement, 1);
    let copies = 27 * r.arrangement.motif.placements.len();
    assert_eq!(obj.lines().filter(|l| l.starts_with("o ")).count(), copies);
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), copies * 5);
}
