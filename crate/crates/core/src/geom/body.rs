use serde::{Deserialize, Serialize};

use super::{convex_hull, GeomError, Isometry, Matrix, Vector, EPS};

/// One facet: outward unit normal, support offset, and vertex indices
/// (two for an edge of a polygon, a counter-clockwise ring in space).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vector,
    pub offset: f64,
    pub verts: Vec<usize>,
}

/// A full-dimensional convex polytope in the plane (`dim == 2`, z = 0) or in space.
///
/// Vertices are exactly the extreme points, stored in lexicographic order so
/// that equal bodies have equal representations.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexBody {
    dim: usize,
    vertices: Vec<Vector>,
    facets: Vec<Facet>,
    volume: f64,
}

impl ConvexBody {
    pub fn from_points(points: &[Vector], dim: usize) -> Result<Self, GeomError> {
        if dim == 2 && points.iter().any(|p| p.z() != 0.0) {
            return Err(GeomError::Degenerate("planar points must have z = 0".into()));
        }
        let hull = convex_hull(points, dim)?;
        let mut order = hull.vertices.clone();
        order.sort_by(|&a, &b| points[a].lex_cmp(&points[b]));
        let mut slot = vec![usize::MAX; points.len()];
        for (k, &i) in order.iter().enumerate() {
            slot[i] = k;
        }
        let vertices: Vec<Vector> = order.iter().map(|&i| points[i]).collect();
        let facets: Vec<Facet> = hull
            .facets
            .iter()
            .map(|f| Facet { normal: f.normal, offset: f.offset, verts: f.verts.iter().map(|&i| slot[i]).collect() })
            .collect();
        let mut body = ConvexBody { dim, vertices, facets, volume: 0.0 };
        body.volume = body.signed_volume();
        if !(body.volume > 0.0) {
            return Err(GeomError::Degenerate("zero volume".into()));
        }
        Ok(body)
    }

    /// Convenience constructor from coordinate slices (`[x, y]` or `[x, y, z]`).
    pub fn from_coords(dim: usize, coords: &[&[f64]]) -> Result<Self, GeomError> {
        let pts: Vec<Vector> = coords.iter().map(|c| Vector::from_slice(c)).collect();
        Self::from_points(&pts, dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Volume (area in the plane).
    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn vertex_mean(&self) -> Vector {
        self.vertices.iter().copied().sum::<Vector>() * (1.0 / self.vertices.len() as f64)
    }

    fn simplices(&self) -> impl Iterator<Item = Vec<Vector>> + '_ {
        self.facets.iter().flat_map(move |f| {
            let ring = &f.verts;
            let count = if self.dim == 2 { 1 } else { ring.len() - 2 };
            (0..count).map(move |k| {
                if self.dim == 2 {
                    vec![self.vertices[ring[0]], self.vertices[ring[1]]]
                } else {
                    vec![self.vertices[ring[0]], self.vertices[ring[k + 1]], self.vertices[ring[k + 2]]]
                }
            })
        })
    }

    fn simplex_volume(&self, c: Vector, s: &[Vector]) -> f64 {
        if self.dim == 2 {
            (s[0] - c).cross2(&(s[1] - c)) / 2.0
        } else {
            (s[0] - c).dot(&(s[1] - c).cross(&(s[2] - c))) / 6.0
        }
    }

    fn signed_volume(&self) -> f64 {
        let c = self.vertex_mean();
        self.simplices().map(|s| self.simplex_volume(c, &s)).sum()
    }

    /// Centre of mass.
    pub fn centroid(&self) -> Vector {
        let c = self.vertex_mean();
        let k = (self.dim + 1) as f64;
        let mut acc = Vector::ZERO;
        let mut total = 0.0;
        for s in self.simplices() {
            let v = self.simplex_volume(c, &s);
            let mid = (c + s.iter().copied().sum::<Vector>()) * (1.0 / k);
            acc += mid * v;
            total += v;
        }
        acc * (1.0 / total)
    }

    /// Smallest slack `offset − n·p` over all facets: positive inside, negative outside.
    pub fn depth(&self, p: &Vector) -> f64 {
        self.facets.iter().map(|f| f.offset - f.normal.dot(p)).fold(f64::INFINITY, f64::min)
    }

    /// Closed-set membership with tolerance.
    pub fn contains(&self, p: &Vector, tol: f64) -> bool {
        self.facets.iter().all(|f| f.normal.dot(p) <= f.offset + tol)
    }

    /// Strict interior membership: every facet inequality holds with margin `tol`.
    pub fn contains_interior(&self, p: &Vector, tol: f64) -> bool {
        self.facets.iter().all(|f| f.normal.dot(p) < f.offset - tol)
    }

    pub fn support(&self, dir: &Vector) -> f64 {
        self.vertices.iter().map(|v| v.dot(dir)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Minkowski functional with respect to the origin, which must be interior.
    /// Values below 1 are interior points.
    pub fn gauge(&self, x: &Vector) -> f64 {
        self.facets.iter().map(|f| f.normal.dot(x) / f.offset).fold(0.0, f64::max)
    }

    pub fn origin_is_interior(&self) -> bool {
        self.facets.iter().all(|f| f.offset > EPS)
    }

    /// Largest distance from `c` to a vertex.
    pub fn radius_about(&self, c: &Vector) -> f64 {
        self.vertices.iter().map(|v| v.distance(c)).fold(0.0, f64::max)
    }

    pub fn circumradius(&self) -> f64 {
        self.radius_about(&Vector::ZERO)
    }

    pub fn diameter(&self) -> f64 {
        let mut d = 0.0f64;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max(a.distance(b));
            }
        }
        d
    }

    /// Unique undirected edges as vertex index pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for f in &self.facets {
            let n = f.verts.len();
            let m = if self.dim == 2 { 1 } else { n };
            for k in 0..m {
                let (a, b) = (f.verts[k], f.verts[(k + 1) % n]);
                out.push((a.min(b), a.max(b)));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Outward-oriented boundary triangles (3D only).
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        if self.dim == 3 {
            for f in &self.facets {
                for k in 1..f.verts.len() - 1 {
                    out.push([f.verts[0], f.verts[k], f.verts[k + 1]]);
                }
            }
        }
        out
    }

    fn map_vertices(&self, f: impl Fn(&Vector) -> Vector) -> Result<Self, GeomError> {
        let pts: Vec<Vector> = self.vertices.iter().map(f).collect();
        Self::from_points(&pts, self.dim)
    }

    pub fn translate(&self, t: Vector) -> Self {
        let mut out = self.clone();
        for v in &mut out.vertices {
            *v += t;
        }
        for f in &mut out.facets {
            f.offset += f.normal.dot(&t);
        }
        out
    }

    /// Image under `x ↦ M x + t`. For planar bodies only the upper-left 2×2 block of `M` is used.
    pub fn affine_image(&self, m: &Matrix, t: Vector) -> Result<Self, GeomError> {
        let m = if self.dim == 2 {
            Matrix::planar([[m.0[0][0], m.0[0][1]], [m.0[1][0], m.0[1][1]]])
        } else {
            *m
        };
        if m.det() == 0.0 || !m.is_finite() {
            return Err(GeomError::Singular);
        }
        let t = if self.dim == 2 { Vector::planar(t.x(), t.y()) } else { t };
        self.map_vertices(|v| m.apply(v) + t)
    }

    pub fn scaled(&self, s: f64) -> Result<Self, GeomError> {
        self.affine_image(&Matrix::scalar(s), Vector::ZERO)
    }

    /// `−K`.
    pub fn reflected(&self) -> Self {
        let mut out = self.map_vertices(|v| -*v).expect("reflection preserves validity");
        out.volume = self.volume;
        out
    }

    pub fn transformed(&self, iso: &Isometry) -> Self {
        self.map_vertices(|v| iso.apply(v)).expect("isometry preserves validity")
    }

    pub fn minkowski_sum(&self, other: &ConvexBody) -> Result<Self, GeomError> {
        if self.dim != other.dim {
            return Err(GeomError::DimensionMismatch(self.dim, other.dim));
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(*a + *b);
            }
        }
        Self::from_points(&pts, self.dim)
    }

    /// Centre of symmetry if the vertex set is centrally symmetric within `tol`.
    pub fn symmetry_center(&self, tol: f64) -> Option<Vector> {
        let c = self.vertex_mean();
        let ok = self
            .vertices
            .iter()
            .all(|v| self.vertices.iter().any(|w| (c * 2.0 - *v).distance(w) <= tol));
        ok.then_some(c)
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        self.symmetry_center(EPS * (1.0 + self.radius_about(&self.vertex_mean()))).is_some()
    }

    /// `K − K`.
    pub fn difference_set(&self) -> Self {
        if let Some(c) = self.symmetry_center(EPS * (1.0 + self.radius_about(&self.vertex_mean()))) {
            return self.translate(-c).scaled(2.0).expect("scaling by 2");
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * self.vertices.len());
        for a in &self.vertices {
            for b in &self.vertices {
                pts.push(*a - *b);
            }
        }
        Self::from_points(&pts, self.dim).expect("difference set of a full-dimensional body")
    }

    /// `DK = ½(K − K)`, centred at the origin.
    pub fn difference_body(&self) -> Self {
        if let Some(c) = self.symmetry_center(EPS * (1.0 + self.radius_about(&self.vertex_mean()))) {
            return self.translate(-c);
        }
        self.difference_set().scaled(0.5).expect("scaling by 1/2")
    }

    /// Cone over a planar base (z = 0 plane) with the given apex.
    pub fn cone_over(base: &ConvexBody, apex: Vector) -> Result<Self, GeomError> {
        if base.dim != 2 {
            return Err(GeomError::DimensionMismatch(base.dim, 2));
        }
        if apex.z().abs() <= EPS {
            return Err(GeomError::ApexInBasePlane);
        }
        let mut pts = base.vertices.clone();
        pts.push(apex);
        Self::from_points(&pts, 3)
    }

    /// Prism `base + [0, s]` over a planar base in the z = 0 plane.
    pub fn cylinder_over(base: &ConvexBody, segment: Vector) -> Result<Self, GeomError> {
        if base.dim != 2 {
            return Err(GeomError::DimensionMismatch(base.dim, 2));
        }
        if segment.z().abs() <= EPS {
            return Err(GeomError::SegmentParallel);
        }
        let mut pts = base.vertices.clone();
        pts.extend(base.vertices.iter().map(|v| *v + segment));
        Self::from_points(&pts, 3)
    }

    /// Largest facet-inequality violation over the vertices; zero for a consistent body.
    pub fn representation_defect(&self) -> f64 {
        self.vertices
            .iter()
            .map(|v| -self.depth(v))
            .fold(0.0, f64::max)
    }
}
