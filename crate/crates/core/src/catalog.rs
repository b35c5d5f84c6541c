//! Named bodies and planar bases.
//!
//! Bodies are built at their natural coordinates (unit constraints), not
//! normalised to unit volume. Curved bodies are inscribed polytopes.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::geom::{ConvexBody, GeomError, Vector};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown body `{0}`")]
    UnknownName(String),
    #[error("parameter `{name}` = {value} out of range ({range})")]
    OutOfRange { name: &'static str, value: f64, range: &'static str },
    #[error("malformed parameter `{0}`")]
    BadParameter(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

pub const DEFAULT_ICOSPHERE_LEVEL: u32 = 3;
pub const DEFAULT_CIRCLE_SIDES: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub enum BodySpec {
    /// Icosphere inscribed in the unit ball.
    Ball { level: u32 },
    /// `|x| + |y| + |z| <= 1`.
    Octahedron,
    /// Alternate corners of `[-1, 1]^3`.
    Tetrahedron,
    /// `[-1, 1]^3`.
    Cube,
    /// `|x_i| <= 1, |x_1 + x_2 + x_3| <= λ`, `0 < λ <= 3`.
    CubeSlab { lambda: f64 },
    /// Unit ball cut by `|z| <= λ`, `0 < λ <= 1`.
    BallSlab { lambda: f64, level: u32, sides: usize },
    /// `sqrt(x^2 + y^2) + |z| <= 1`.
    DoubleCone { sides: usize },
    /// Unit square base, apex above its centre.
    SquarePyramid { height: f64 },
    /// Affine-regular hexagon base, apex above its centre.
    HexagonalPyramid { height: f64 },
    /// Inscribed polygon of the unit circle as base, apex above the centre.
    CircularCone { sides: usize, height: f64 },
    /// Vertices `(±1, ±1, 0), (0, 0, ±1)`.
    AffineOctahedron,
    /// Voronoi cell of the face-centred cubic lattice; insphere radius `√2`.
    RhombicDodecahedron,
}

#[derive(Clone, Debug, PartialEq)]
pub enum BaseSpec {
    /// `[0, 1]^2`.
    Square,
    /// `(0,0), (1,0), (0,1)`.
    Triangle,
    /// Regular `k`-gon inscribed in the unit circle.
    RegularPolygon { k: usize },
    /// Inscribed `n`-gon of the unit circle.
    Circle { sides: usize },
    /// Unit square minus corner triangles with legs `(a, b)` at `(0,0)` and `(1,1)`.
    SymmetricHexagon { a: f64, b: f64 },
}

pub struct CatalogEntry {
    pub name: &'static str,
    pub params: &'static str,
    pub description: &'static str,
}

pub const BODIES: &[CatalogEntry] = &[
    CatalogEntry { name: "ball", params: "level=3", description: "icosphere inscribed in the unit ball" },
    CatalogEntry { name: "octahedron", params: "", description: "regular octahedron |x|+|y|+|z| <= 1" },
    CatalogEntry { name: "tetrahedron", params: "", description: "regular tetrahedron on alternate corners of [-1,1]^3" },
    CatalogEntry { name: "cube", params: "", description: "cube [-1,1]^3" },
    CatalogEntry { name: "cube_slab", params: "lambda (0,3]", description: "cube cut by |x1+x2+x3| <= lambda" },
    CatalogEntry { name: "ball_slab", params: "lambda (0,1], level=3, sides=64", description: "unit ball cut by |z| <= lambda" },
    CatalogEntry { name: "double_cone", params: "sides=64", description: "sqrt(x^2+y^2)+|z| <= 1" },
    CatalogEntry { name: "square_pyramid", params: "height=1", description: "cone over the unit square" },
    CatalogEntry { name: "hexagonal_pyramid", params: "height=1", description: "cone over the affine-regular hexagon" },
    CatalogEntry { name: "circular_cone", params: "sides=64, height=1", description: "cone over an inscribed circle polygon" },
    CatalogEntry { name: "affine_octahedron", params: "", description: "vertices (+-1,+-1,0), (0,0,+-1)" },
    CatalogEntry { name: "rhombic_dodecahedron", params: "", description: "Voronoi cell of the fcc lattice" },
];

pub const BASES: &[CatalogEntry] = &[
    CatalogEntry { name: "square", params: "", description: "unit square" },
    CatalogEntry { name: "triangle", params: "", description: "right triangle (0,0),(1,0),(0,1)" },
    CatalogEntry { name: "polygon", params: "k >= 3", description: "regular k-gon in the unit circle" },
    CatalogEntry { name: "circle", params: "sides=96", description: "inscribed polygon of the unit circle" },
    CatalogEntry { name: "hexagon", params: "a=0.5, b=0.5 in (0,1/2]", description: "unit square minus two opposite corner triangles" },
];

fn parse_params(s: &str) -> Result<(String, HashMap<String, f64>), CatalogError> {
    let (name, rest) = s.split_once(':').unwrap_or((s, ""));
    let mut map = HashMap::new();
    for kv in rest.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = kv.split_once('=').ok_or_else(|| CatalogError::BadParameter(kv.to_string()))?;
        let v: f64 = v.trim().parse().map_err(|_| CatalogError::BadParameter(kv.to_string()))?;
        map.insert(k.trim().to_string(), v);
    }
    Ok((name.trim().to_ascii_lowercase(), map))
}

fn take(map: &HashMap<String, f64>, key: &str, default: f64) -> f64 {
    map.get(key).copied().unwrap_or(default)
}

/// Parses `name` or `name:key=value,...`.
impl FromStr for BodySpec {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, p) = parse_params(s)?;
        let level = take(&p, "level", DEFAULT_ICOSPHERE_LEVEL as f64) as u32;
        let sides = take(&p, "sides", DEFAULT_CIRCLE_SIDES as f64) as usize;
        let height = take(&p, "height", 1.0);
        Ok(match name.as_str() {
            "ball" => BodySpec::Ball { level },
            "octahedron" => BodySpec::Octahedron,
            "tetrahedron" => BodySpec::Tetrahedron,
            "cube" => BodySpec::Cube,
            "cube_slab" => BodySpec::CubeSlab { lambda: take(&p, "lambda", 1.0) },
            "ball_slab" => BodySpec::BallSlab { lambda: take(&p, "lambda", 0.5), level, sides },
            "double_cone" => BodySpec::DoubleCone { sides },
            "square_pyramid" => BodySpec::SquarePyramid { height },
            "hexagonal_pyramid" => BodySpec::HexagonalPyramid { height },
            "circular_cone" => BodySpec::CircularCone { sides, height },
            "affine_octahedron" => BodySpec::AffineOctahedron,
            "rhombic_dodecahedron" => BodySpec::RhombicDodecahedron,
            _ => return Err(CatalogError::UnknownName(s.to_string())),
        })
    }
}

impl fmt::Display for BodySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BodySpec::Ball { level } => write!(f, "ball:level={level}"),
            BodySpec::Octahedron => write!(f, "octahedron"),
            BodySpec::Tetrahedron => write!(f, "tetrahedron"),
            BodySpec::Cube => write!(f, "cube"),
            BodySpec::CubeSlab { lambda } => write!(f, "cube_slab:lambda={lambda}"),
            BodySpec::BallSlab { lambda, level, sides } => {
                write!(f, "ball_slab:lambda={lambda},level={level},sides={sides}")
            }
            BodySpec::DoubleCone { sides } => write!(f, "double_cone:sides={sides}"),
            BodySpec::SquarePyramid { height } => write!(f, "square_pyramid:height={height}"),
            BodySpec::HexagonalPyramid { height } => write!(f, "hexagonal_pyramid:height={height}"),
            BodySpec::CircularCone { sides, height } => write!(f, "circular_cone:sides={sides},height={height}"),
            BodySpec::AffineOctahedron => write!(f, "affine_octahedron"),
            BodySpec::RhombicDodecahedron => write!(f, "rhombic_dodecahedron"),
        }
    }
}

impl FromStr for BaseSpec {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, p) = parse_params(s)?;
        Ok(match name.as_str() {
            "square" => BaseSpec::Square,
            "triangle" => BaseSpec::Triangle,
            "polygon" => BaseSpec::RegularPolygon { k: take(&p, "k", 6.0) as usize },
            "circle" => BaseSpec::Circle { sides: take(&p, "sides", 96.0) as usize },
            "hexagon" => BaseSpec::SymmetricHexagon { a: take(&p, "a", 0.5), b: take(&p, "b", 0.5) },
            _ => return Err(CatalogError::UnknownName(s.to_string())),
        })
    }
}

fn check(name: &'static str, value: f64, ok: bool, range: &'static str) -> Result<(), CatalogError> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(CatalogError::OutOfRange { name, value, range })
    }
}

/// Vertices of the inscribed regular `n`-gon of radius `r`, first vertex on the x-axis.
pub fn circle_points(n: usize, r: f64, z: f64) -> Vec<Vector> {
    (0..n)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / n as f64;
            Vector::new(r * t.cos(), r * t.sin(), z)
        })
        .collect()
}

/// Unit-sphere vertices of a subdivided icosahedron (`10·4^level + 2` points).
pub fn icosphere_points(level: u32) -> Vec<Vector> {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let mut verts: Vec<Vector> = [
        (-1.0, t, 0.0), (1.0, t, 0.0), (-1.0, -t, 0.0), (1.0, -t, 0.0),
        (0.0, -1.0, t), (0.0, 1.0, t), (0.0, -1.0, -t), (0.0, 1.0, -t),
        (t, 0.0, -1.0), (t, 0.0, 1.0), (-t, 0.0, -1.0), (-t, 0.0, 1.0),
    ]
    .iter()
    .map(|&(x, y, z)| Vector::new(x, y, z).normalized().unwrap())
    .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
        [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
        [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
        [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
    ];
    for _ in 0..level {
        let mut mid: HashMap<(usize, usize), usize> = HashMap::new();
        let mut next = Vec::with_capacity(faces.len() * 4);
        let mut midpoint = |a: usize, b: usize, verts: &mut Vec<Vector>| {
            *mid.entry((a.min(b), a.max(b))).or_insert_with(|| {
                verts.push(((verts[a] + verts[b]) * 0.5).normalized().unwrap());
                verts.len() - 1
            })
        };
        for [a, b, c] in faces {
            let ab = midpoint(a, b, &mut verts);
            let bc = midpoint(b, c, &mut verts);
            let ca = midpoint(c, a, &mut verts);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    verts
}

fn cube_slab_points(lambda: f64) -> Vec<Vector> {
    let mut pts = Vec::new();
    for i in 0..8 {
        let v = Vector::new(
            if i & 1 == 0 { -1.0 } else { 1.0 },
            if i & 2 == 0 { -1.0 } else { 1.0 },
            if i & 4 == 0 { -1.0 } else { 1.0 },
        );
        if (v.x() + v.y() + v.z()).abs() <= lambda {
            pts.push(v);
        }
    }
    // Cube edges cut by the planes x1 + x2 + x3 = ±λ.
    for axis in 0..3 {
        for s1 in [-1.0, 1.0] {
            for s2 in [-1.0, 1.0] {
                for target in [-lambda, lambda] {
                    let t = target - s1 - s2;
                    if t.abs() <= 1.0 {
                        let mut c = [0.0; 3];
                        c[axis] = t;
                        c[(axis + 1) % 3] = s1;
                        c[(axis + 2) % 3] = s2;
                        pts.push(Vector(c));
                    }
                }
            }
        }
    }
    pts
}

pub fn make_body(spec: &BodySpec) -> Result<ConvexBody, CatalogError> {
    let body = match *spec {
        BodySpec::Ball { level } => {
            check("level", level as f64, level <= 5, "0..=5")?;
            ConvexBody::from_points(&icosphere_points(level), 3)?
        }
        BodySpec::Octahedron => {
            let pts: Vec<Vector> = (0..3).flat_map(|i| [Vector::axis(i), -Vector::axis(i)]).collect();
            ConvexBody::from_points(&pts, 3)?
        }
        BodySpec::Tetrahedron => ConvexBody::from_points(
            &[
                Vector::new(1.0, 1.0, 1.0),
                Vector::new(1.0, -1.0, -1.0),
                Vector::new(-1.0, 1.0, -1.0),
                Vector::new(-1.0, -1.0, 1.0),
            ],
            3,
        )?,
        BodySpec::Cube => ConvexBody::from_points(&cube_slab_points(3.0), 3)?,
        BodySpec::CubeSlab { lambda } => {
            check("lambda", lambda, lambda > 0.0 && lambda <= 3.0, "0 < lambda <= 3")?;
            ConvexBody::from_points(&cube_slab_points(lambda), 3)?
        }
        BodySpec::BallSlab { lambda, level, sides } => {
            check("lambda", lambda, lambda > 0.0 && lambda <= 1.0, "0 < lambda <= 1")?;
            check("level", level as f64, level <= 5, "0..=5")?;
            check("sides", sides as f64, sides >= 3, ">= 3")?;
            let mut pts: Vec<Vector> =
                icosphere_points(level).into_iter().filter(|p| p.z().abs() <= lambda).collect();
            if lambda < 1.0 {
                let r = (1.0 - lambda * lambda).sqrt();
                pts.extend(circle_points(sides, r, lambda));
                pts.extend(circle_points(sides, r, -lambda));
            }
            ConvexBody::from_points(&pts, 3)?
        }
        BodySpec::DoubleCone { sides } => {
            check("sides", sides as f64, sides >= 3, ">= 3")?;
            let mut pts = circle_points(sides, 1.0, 0.0);
            pts.push(Vector::axis(2));
            pts.push(-Vector::axis(2));
            ConvexBody::from_points(&pts, 3)?
        }
        BodySpec::SquarePyramid { height } => {
            check("height", height, height > 0.0, "> 0")?;
            ConvexBody::cone_over(&make_base(&BaseSpec::Square)?, Vector::new(0.5, 0.5, height))?
        }
        BodySpec::HexagonalPyramid { height } => {
            check("height", height, height > 0.0, "> 0")?;
            ConvexBody::cone_over(&affine_regular_hexagon(), Vector::new(0.0, 0.0, height))?
        }
        BodySpec::CircularCone { sides, height } => {
            check("height", height, height > 0.0, "> 0")?;
            check("sides", sides as f64, sides >= 3, ">= 3")?;
            ConvexBody::cone_over(&make_base(&BaseSpec::Circle { sides })?, Vector::new(0.0, 0.0, height))?
        }
        BodySpec::AffineOctahedron => {
            let mut pts = vec![Vector::axis(2), -Vector::axis(2)];
            for (x, y) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                pts.push(Vector::new(x, y, 0.0));
            }
            ConvexBody::from_points(&pts, 3)?
        }
        BodySpec::RhombicDodecahedron => {
            let mut pts = cube_slab_points(3.0);
            for i in 0..3 {
                pts.push(Vector::axis(i) * 2.0);
                pts.push(Vector::axis(i) * -2.0);
            }
            ConvexBody::from_points(&pts, 3)?
        }
    };
    Ok(body)
}

/// The integer hexagon `(1,0),(1,1),(0,1),(-1,0),(-1,-1),(0,-1)`, an affine image of the regular hexagon.
pub fn affine_regular_hexagon() -> ConvexBody {
    let pts = [(1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (-1.0, 0.0), (-1.0, -1.0), (0.0, -1.0)]
        .map(|(x, y)| Vector::planar(x, y));
    ConvexBody::from_points(&pts, 2).expect("valid hexagon")
}

pub fn make_base(spec: &BaseSpec) -> Result<ConvexBody, CatalogError> {
    let body = match *spec {
        BaseSpec::Square => ConvexBody::from_coords(2, &[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]])?,
        BaseSpec::Triangle => ConvexBody::from_coords(2, &[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]])?,
        BaseSpec::RegularPolygon { k } => {
            check("k", k as f64, k >= 3, ">= 3")?;
            ConvexBody::from_points(&circle_points(k, 1.0, 0.0), 2)?
        }
        BaseSpec::Circle { sides } => {
            check("sides", sides as f64, sides >= 3, ">= 3")?;
            ConvexBody::from_points(&circle_points(sides, 1.0, 0.0), 2)?
        }
        BaseSpec::SymmetricHexagon { a, b } => {
            check("a", a, a > 0.0 && a <= 0.5, "0 < a <= 1/2")?;
            check("b", b, b > 0.0 && b <= 0.5, "0 < b <= 1/2")?;
            ConvexBody::from_coords(
                2,
                &[&[a, 0.0], &[1.0, 0.0], &[1.0, 1.0 - b], &[1.0 - a, 1.0], &[0.0, 1.0], &[0.0, b]],
            )?
        }
    };
    Ok(body)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn icosphere_vertex_count() {
        assert_eq!(icosphere_points(3).len(), 642);
    }

    #[test]
    fn rhombic_dodecahedron_volume() {
        let r = make_body(&BodySpec::RhombicDodecahedron).unwrap();
        assert_eq!(r.vertices().len(), 14);
        assert_eq!(r.facets().len(), 12);
        assert!((r.volume() - 16.0).abs() < 1e-12);
    }

    #[test]
    fn names_roundtrip() {
        for e in BODIES {
            let spec: BodySpec = e.name.parse().unwrap();
            let again: BodySpec = spec.to_string().parse().unwrap();
            assert_eq!(spec, again);
        }
    }

    #[test]
    fn slab_out_of_range() {
        assert!(make_body(&BodySpec::CubeSlab { lambda: 3.5 }).is_err());
        assert!(make_body(&BodySpec::BallSlab { lambda: 0.0, level: 1, sides: 8 }).is_err());
    }
}
