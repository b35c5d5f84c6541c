use packd::catalog::{affine_regular_hexagon, make_body, BodySpec};
use packd::construct::{self, ConstructionReport};
use packd::formulas::{all_values, chalk_slab_density, known_bound, known_density, whitworth_branch, whitworth_slab_density, WhitworthBranch};
use packd::optimize::{optimize_lattice, OptimizerConfig};

#[derive(Clone, Debug)]
pub struct Row {
    pub name: String,
    pub reference: f64,
    pub computed: f64,
    pub exact: String,
    pub pass: bool,
}

impl Row {
    fn new(name: &str, reference: f64, computed: f64, pass: bool) -> Self {
        Row { name: name.to_string(), reference, computed, exact: String::new(), pass }
    }

    pub fn rel_error(&self) -> f64 {
        if self.reference == 0.0 {
            self.computed.abs()
        } else {
            (self.computed - self.reference).abs() / self.reference.abs()
        }
    }
}

pub enum Check {
    Abs(f64),
    Rel(f64),
    /// `reference − below ≤ value ≤ reference + above`.
    Window { below: f64, above: f64 },
}

impl Check {
    pub fn accepts(&self, reference: f64, value: f64) -> bool {
        match *self {
            Check::Abs(t) => (value - reference).abs() <= t,
            Check::Rel(t) => (value - reference).abs() <= t * reference,
            Check::Window { below, above } => value >= reference - below && value <= reference + above,
        }
    }
}

/// Bodies with known lattice packing densities and the accepted deviation of the search.
pub fn table1_cases() -> Vec<(&'static str, BodySpec, f64, Check)> {
    let d = |n: &str| known_density(n).expect("stored density").value();
    vec![
        ("cube", BodySpec::Cube, 1.0, Check::Abs(1e-6)),
        ("octahedron", BodySpec::Octahedron, d("octahedron"), Check::Window { below: 0.005, above: 1e-6 }),
        ("tetrahedron", BodySpec::Tetrahedron, d("tetrahedron"), Check::Window { below: 0.005, above: 1e-6 }),
        ("double_cone", BodySpec::DoubleCone { sides: 64 }, d("double_cone"), Check::Rel(0.015)),
        ("ball", BodySpec::Ball { level: 3 }, d("ball"), Check::Rel(0.02)),
        (
            "ball_slab_half",
            BodySpec::BallSlab { lambda: 0.5, level: 3, sides: 64 },
            chalk_slab_density(0.5).expect("in range"),
            Check::Rel(0.015),
        ),
    ]
}

pub fn table1(cfg: &OptimizerConfig) -> Result<Vec<Row>, String> {
    let mut rows = Vec::new();
    for (name, spec, reference, check) in table1_cases() {
        let body = make_body(&spec).map_err(|e| e.to_string())?;
        let r = optimize_lattice(&body, cfg).map_err(|e| e.to_string())?;
        rows.push(Row::new(name, reference, r.density, r.certified && check.accepts(reference, r.density)));
    }
    Ok(rows)
}

pub fn bounds() -> Vec<Row> {
    let mut rows: Vec<Row> = all_values()
        .map(|v| {
            let mut row = Row::new(v.name, v.decimal_value(), v.value(), (v.decimal_value() - v.value()).abs() <= 1e-12);
            row.exact = v.expression.to_string();
            row
        })
        .collect();
    let b = |n: &str| known_bound(n).expect("stored bound").value();
    for (lo, hi) in [
        ("cone_T_max_lower", "cone_T_max_upper"),
        ("circular_cone_lattice_lower", "circular_cone_lattice_upper"),
        ("cone_Tstar_lower", "cone_symmetric_Tstar_lower"),
    ] {
        rows.push(Row::new(&format!("{lo} < {hi}"), b(hi), b(lo), b(lo) < b(hi)));
    }
    let w = whitworth_slab_density(1.0).expect("in range");
    let thick = whitworth_branch(WhitworthBranch::Thick, 1.0);
    rows.push(Row::new("whitworth_branches_disagree_at_1", thick, w.value, !w.continuous));
    rows
}

fn construction_row(name: &str, reference: f64, r: &ConstructionReport, value: f64, ok: bool) -> Row {
    let mut row = Row::new(name, reference, value, r.verified && ok);
    row.exact = r.primary_density.as_ref().or(r.exact_density.as_ref()).map(|q| q.to_string()).unwrap_or_default();
    row
}

pub fn constructions(cfg: &OptimizerConfig) -> Result<Vec<Row>, String> {
    let e = |e: construct::ConstructError| e.to_string();
    let exactly = |r: &ConstructionReport, reference: f64| (r.primary_value() - reference).abs() <= 1e-12;
    let mut rows = Vec::new();
    let r = construct::square_pyramid_packing().map_err(e)?;
    rows.push(construction_row("square_pyramid", 8.0 / 15.0, &r, r.density, exactly(&r, 8.0 / 15.0)));
    let r = construct::conway_torquato_packing().map_err(e)?;
    rows.push(construction_row("conway_torquato", 2.0 / 3.0, &r, r.density, exactly(&r, 2.0 / 3.0)));
    let r = construct::hexagon_pair_tiling(0.5, 0.5).map_err(e)?;
    rows.push(construction_row("hexagon_pair_affine_regular", 0.75, &r, r.primary_value(), exactly(&r, 0.75)));
    let r = construct::cone_over_hexagon_packing(0.5, 0.5).map_err(e)?;
    rows.push(construction_row("cone_over_hexagon_affine_regular", 0.5, &r, r.density, exactly(&r, 0.5)));
    let r = construct::octahedron_enclosure_packing(&affine_regular_hexagon()).map_err(e)?;
    rows.push(construction_row("octahedron_enclosure_hexagon", 27.0 / 38.0, &r, r.density, exactly(&r, 27.0 / 38.0)));
    let r = construct::circular_cone_packing(64, cfg).map_err(e)?;
    let upper = known_bound("circular_cone_lattice_upper").expect("stored").value();
    let lower = construct::circular_cone_lower_bound();
    rows.push(construction_row("circular_cone_64", lower, &r, r.density, r.density >= 0.44 && r.density <= upper + 1e-3));
    Ok(rows)
}

pub fn to_csv(rows: &[Row]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "reference", "computed", "exact", "rel_error", "status"]).expect("in-memory write");
    for r in rows {
        w.write_record([
            r.name.clone(),
            format!("{:.12}", r.reference),
            format!("{:.12}", r.computed),
            r.exact.clone(),
            format!("{:.3e}", r.rel_error()),
            if r.pass { "pass" } else { "fail" }.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}
