//! Closed-form densities and bounds, with their decimal expansions.

use std::f64::consts::PI;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormulaError {
    #[error("unknown constant '{0}'")]
    UnknownName(String),
    #[error("{name} = {value} outside {range}")]
    OutOfRange { name: &'static str, value: f64, range: &'static str },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Density,
    Bound,
    Constant,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct KnownValue {
    pub name: &'static str,
    /// Exact expression in plain notation.
    pub expression: &'static str,
    /// Decimal expansion, computed independently at high precision.
    pub decimal: &'static str,
    pub kind: Kind,
    /// Who established the value.
    pub source: &'static str,
    pub note: &'static str,
    #[serde(skip)]
    eval: fn() -> f64,
}

impl KnownValue {
    /// Value of the exact expression in double precision.
    pub fn value(&self) -> f64 {
        (self.eval)()
    }

    pub fn decimal_value(&self) -> f64 {
        self.decimal.parse().expect("decimal literal")
    }
}

const fn kv(
    name: &'static str,
    expression: &'static str,
    decimal: &'static str,
    kind: Kind,
    source: &'static str,
    note: &'static str,
    eval: fn() -> f64,
) -> KnownValue {
    KnownValue { name, expression, decimal, kind, source, note, eval }
}

use Kind::*;

pub const DENSITIES: &[KnownValue] = &[
    kv("ball", "pi/sqrt(18)", "0.74048048969306104", Density, "Gauss", "", || PI / 18f64.sqrt()),
    kv("octahedron", "18/19", "0.94736842105263158", Density, "Minkowski", "", || 18.0 / 19.0),
    kv("double_cone", "pi*sqrt(6)/9", "0.8550332201079094", Density, "Whitworth", "", || PI * 6f64.sqrt() / 9.0),
    kv("tetrahedron", "18/49", "0.3673469387755102", Density, "Hoylman", "lower bound by Groemer", || 18.0 / 49.0),
    kv("cube", "1", "1", Density, "", "tiles", || 1.0),
    kv(
        "ball_rhombic_dodecahedron",
        "vol(B3)/vol(RhD) = (4*pi/3)/(4*sqrt(2))",
        "0.74048048969306104",
        Density,
        "Hales",
        "any K with B3 in K in RhD has density vol(K)/vol(RhD)",
        || (4.0 * PI / 3.0) / (4.0 * 2f64.sqrt()),
    ),
    kv("infinite_cylinder", "pi/sqrt(12)", "0.90689968211710893", Density, "Bezdek, Kuperberg", "all isometries", || PI / 12f64.sqrt()),
    kv("circle", "pi/sqrt(12)", "0.90689968211710893", Density, "Thue, Fejes Toth", "planar", || PI / 12f64.sqrt()),
    kv("square", "1", "1", Density, "", "planar; tiles", || 1.0),
    kv("hexagon", "1", "1", Density, "", "planar; tiles", || 1.0),
    kv("triangle", "2/3", "0.66666666666666667", Density, "Fejes Toth", "planar lattice", || 2.0 / 3.0),
];

pub const BOUNDS: &[KnownValue] = &[
    kv("cone_T_max_lower", "448/819", "0.54700854700854701", Bound, "Betke, Henk", "square pyramid, 4/7 of 112/117", || 448.0 / 819.0),
    kv("cone_T_max_upper", "4/7", "0.57142857142857143", Bound, "volume ratio", "strict", || 4.0 / 7.0),
    kv("square_pyramid_difference_body", "112/117", "0.95726495726495726", Bound, "Betke, Henk", "lattice density of the difference body", || 112.0 / 117.0),
    kv("square_pyramid_lattice_lower", "448/819", "0.54700854700854701", Bound, "Betke, Henk", "", || 448.0 / 819.0),
    kv("square_pyramid_construction", "8/15", "0.53333333333333333", Bound, "two-layer construction", "", || 8.0 / 15.0),
    kv("circular_cone_lattice_lower", "(2+sqrt(2))*pi/24", "0.4469195102224147", Bound, "two-layer construction", "", || (2.0 + 2f64.sqrt()) * PI / 24.0),
    kv("circular_cone_lattice_upper", "sqrt(2)*pi/9", "0.49365365979537403", Bound, "volume ratio", "", || 2f64.sqrt() * PI / 9.0),
    kv(
        "tammela_hexagon_ratio",
        "3.570624/4",
        "0.892656",
        Constant,
        "Tammela",
        "area ratio between a symmetric disk and a hexagon; direction of containment as stated is inconsistent with the ratio",
        || 3.570624 / 4.0,
    ),
    kv("cone_symmetric_T_min_lower", "(1/2)*3.570624/4", "0.446328", Bound, "Tammela hexagons", "", || 3.570624 / 8.0),
    kv("petty_parallelogram", "4/3", "1.3333333333333333", Constant, "Petty", "sharp for affine regular hexagons", || 4.0 / 3.0),
    kv("hexagon_pair_lower", "3/4", "0.75", Bound, "hexagon pair construction", "", || 0.75),
    kv("cone_hexagon_lower", "1/2", "0.5", Bound, "hexagon pair construction", "", || 0.5),
    kv("cone_symmetric_Tstar_lower", "27/38", "0.71052631578947368", Bound, "octahedron enclosure", "", || 27.0 / 38.0),
    kv("cone_Tstar_lower", "9/19", "0.47368421052631579", Bound, "octahedron enclosure", "", || 9.0 / 19.0),
    kv("keg_tetrahedron_Tstar", "(139+40*sqrt(10))/369", "0.71948809324318475", Bound, "Kallus, Elser, Gravel", "", || (139.0 + 40.0 * 10f64.sqrt()) / 369.0),
    kv("conway_torquato_uniform", "2/3", "0.66666666666666667", Bound, "Conway, Torquato", "", || 2.0 / 3.0),
    kv(
        "smith_symmetric_lower",
        "0.53835",
        "0.53835",
        Bound,
        "E. H. Smith",
        "source statement is truncated; scope taken as centrally symmetric bodies",
        || 0.53835,
    ),
    kv("planar_disk_lower", "sqrt(3)/2", "0.86602540378443865", Bound, "Kuperberg, Kuperberg", "planar convex disks", || 3f64.sqrt() / 2.0),
    kv("convex_body_lower", "sqrt(3)/6", "0.28867513459481288", Bound, "from the planar bound", "", || 3f64.sqrt() / 6.0),
    kv("cone_symmetric_volume_ratio", "4/7", "0.57142857142857143", Constant, "volume ratio", "vol(CK)/vol(D CK), symmetric base", || 4.0 / 7.0),
    kv("tetrahedron_volume_ratio", "2/5", "0.4", Constant, "volume ratio", "vol(T)/vol(DT)", || 0.4),
];

fn lookup(table: &[KnownValue], name: &str) -> Result<KnownValue, FormulaError> {
    table.iter().find(|v| v.name == name).copied().ok_or_else(|| FormulaError::UnknownName(name.to_string()))
}

pub fn known_density(name: &str) -> Result<KnownValue, FormulaError> {
    lookup(DENSITIES, name)
}

pub fn known_bound(name: &str) -> Result<KnownValue, FormulaError> {
    lookup(BOUNDS, name)
}

/// Every stored value, densities first.
pub fn all_values() -> impl Iterator<Item = &'static KnownValue> {
    DENSITIES.iter().chain(BOUNDS)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WhitworthBranch {
    /// `(9 − λ²)/9` on `(0, ½]`.
    Thin,
    /// `¼λ(9 − λ²)/(−λ³ − 3λ² + 24λ − 1)` on `[½, 1]`.
    Middle,
    /// `(9/8)(λ³ − 9λ² + 27λ − 3)/(λ(λ² − 9λ + 27))`, stated for `1 ≤ λ ≤ 1`, evaluated on `[1, 3]`.
    Thick,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WhitworthValue {
    pub value: f64,
    pub branch: WhitworthBranch,
    /// False when `λ` is a shared endpoint at which the neighbouring branches disagree by more than 1e-9.
    pub continuous: bool,
    /// True on the thick branch, whose stated range is degenerate.
    pub range_anomaly: bool,
}

const BRANCH_TOL: f64 = 1e-9;

/// One branch of the cube-slab formula, evaluated as written.
pub fn whitworth_branch(branch: WhitworthBranch, l: f64) -> f64 {
    let l2 = l * l;
    match branch {
        WhitworthBranch::Thin => (9.0 - l2) / 9.0,
        WhitworthBranch::Middle => 0.25 * l * (9.0 - l2) / (-l2 * l - 3.0 * l2 + 24.0 * l - 1.0),
        WhitworthBranch::Thick => 9.0 / 8.0 * (l2 * l - 9.0 * l2 + 27.0 * l - 3.0) / (l * (l2 - 9.0 * l + 27.0)),
    }
}

/// Lattice density of `{|xᵢ| ≤ 1, |x₁ + x₂ + x₃| ≤ λ}` by the three-branch formula.
///
/// At a shared endpoint the first listed branch is used and the continuity
/// flag reports whether its neighbour agrees.
pub fn whitworth_slab_density(l: f64) -> Result<WhitworthValue, FormulaError> {
    if !(l > 0.0 && l <= 3.0) {
        return Err(FormulaError::OutOfRange { name: "lambda", value: l, range: "0 < lambda <= 3" });
    }
    use WhitworthBranch::*;
    let branch = if l <= 0.5 { Thin } else if l <= 1.0 { Middle } else { Thick };
    let value = whitworth_branch(branch, l);
    let neighbour = if l == 0.5 { Some(Middle) } else if l == 1.0 { Some(Thick) } else { None };
    let continuous = neighbour.is_none_or(|n| (whitworth_branch(n, l) - value).abs() <= BRANCH_TOL);
    Ok(WhitworthValue { value, branch, continuous, range_anomaly: branch == Thick })
}

/// Lattice density of `{|x| ≤ 1, |x₃| ≤ λ}`: `(π/6)√(3 − λ²)`.
pub fn chalk_slab_density(l: f64) -> Result<f64, FormulaError> {
    if !(l > 0.0 && l <= 1.0) {
        return Err(FormulaError::OutOfRange { name: "lambda", value: l, range: "0 < lambda <= 1" });
    }
    Ok(PI / 6.0 * (3.0 - l * l).sqrt())
}

/// The whole table as CSV.
pub fn ledger_csv() -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "kind", "expression", "decimal", "value", "source", "note"]).expect("in-memory write");
    for v in all_values() {
        let kind = match v.kind {
            Density => "density",
            Bound => "bound",
            Constant => "constant",
        };
        w.write_record([v.name, kind, v.expression, v.decimal, &format!("{:.16}", v.value()), v.source, v.note]).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = all_values().map(|v| v.name).collect();
        names.sort();
        let n = names.len();
        names.dedup();
        assert_eq!(n, names.len());
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(known_density("dodecahedron"), Err(FormulaError::UnknownName(_))));
    }

    #[test]
    fn csv_has_a_row_per_value() {
        assert_eq!(ledger_csv().lines().count(), all_values().count() + 1);
    }
}
