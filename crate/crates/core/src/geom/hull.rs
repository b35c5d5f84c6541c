//! Convex hulls in the plane (monotone chain) and in space (incremental).
//!
//! Both routines return indices into the input slice so callers can carry
//! auxiliary per-point data (exact coordinates, labels) through the hull.

use std::collections::{HashMap, HashSet};

use super::{GeomError, Vector};

/// Relative predicate tolerance; multiplied by the point-set extent.
pub const HULL_REL_EPS: f64 = 1e-9;

/// Normals closer than this angle (radians) are treated as one facet plane.
pub const FACET_MERGE_ANGLE: f64 = 1e-7;

#[derive(Clone, Debug)]
pub struct HullFacet {
    /// Unit outward normal.
    pub normal: Vector,
    /// Support value: every hull point satisfies `normal · p <= offset`.
    pub offset: f64,
    /// Input indices of the facet's vertices, counter-clockwise seen from outside.
    pub verts: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Hull {
    pub dim: usize,
    /// Input indices of the extreme points, sorted ascending.
    pub vertices: Vec<usize>,
    pub facets: Vec<HullFacet>,
}

impl Hull {
    /// Boundary simplices oriented outward: edges in 2D, fan triangles in 3D.
    pub fn boundary_simplices(&self) -> Vec<Vec<usize>> {
        match self.dim {
            2 => self.facets.iter().map(|f| f.verts.clone()).collect(),
            _ => {
                let mut out = Vec::new();
                for f in &self.facets {
                    for k in 1..f.verts.len() - 1 {
                        out.push(vec![f.verts[0], f.verts[k], f.verts[k + 1]]);
                    }
                }
                out
            }
        }
    }
}

fn extent(points: &[Vector]) -> f64 {
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for p in points {
        for i in 0..3 {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    (0..3).map(|i| (hi[i] - lo[i]).powi(2)).sum::<f64>().sqrt()
}

pub fn convex_hull(points: &[Vector], dim: usize) -> Result<Hull, GeomError> {
    if points.iter().any(|p| !p.is_finite()) {
        return Err(GeomError::NonFinite);
    }
    match dim {
        2 => hull2(points),
        3 => hull3(points),
        d => Err(GeomError::UnsupportedDimension(d)),
    }
}

fn hull2(points: &[Vector]) -> Result<Hull, GeomError> {
    if points.len() < 3 {
        return Err(GeomError::Degenerate("fewer than 3 points".into()));
    }
    let scale = extent(points);
    let eps = HULL_REL_EPS * scale;
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| {
        points[a][0]
            .total_cmp(&points[b][0])
            .then(points[a][1].total_cmp(&points[b][1]))
    });
    idx.dedup_by(|a, b| points[*a].distance(&points[*b]) <= eps);
    // Signed distance of c from line (a, b), positive on the left.
    let turn = |a: usize, b: usize, c: usize| -> f64 {
        let ab = points[b] - points[a];
        let len = ab.norm();
        if len == 0.0 {
            return 0.0;
        }
        ab.cross2(&(points[c] - points[a])) / len
    };
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], i) <= eps {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], i) <= eps {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    let ring = lower;
    if ring.len() < 3 {
        return Err(GeomError::Degenerate("points are collinear".into()));
    }
    let mut facets = Vec::with_capacity(ring.len());
    for k in 0..ring.len() {
        let a = ring[k];
        let b = ring[(k + 1) % ring.len()];
        let e = points[b] - points[a];
        let normal = Vector::planar(e.y(), -e.x())
            .normalized()
            .ok_or_else(|| GeomError::Degenerate("zero-length edge".into()))?;
        facets.push(HullFacet { normal, offset: normal.dot(&points[a]), verts: vec![a, b] });
    }
    let mut vertices = ring;
    vertices.sort_unstable();
    Ok(Hull { dim: 2, vertices, facets })
}

#[derive(Clone)]
struct Tri {
    v: [usize; 3],
    n: Vector,
    off: f64,
    alive: bool,
}

fn make_tri(points: &[Vector], v: [usize; 3]) -> Option<Tri> {
    let [a, b, c] = v;
    let raw = (points[b] - points[a]).cross(&(points[c] - points[a]));
    let n = raw.normalized()?;
    // Offset from the triangle's centroid reduces cancellation.
    let centroid = (points[a] + points[b] + points[c]) * (1.0 / 3.0);
    Some(Tri { v, n, off: n.dot(&centroid), alive: true })
}

/// Incremental 3D hull over all input points; may leave non-extreme boundary points.
fn raw_hull3(points: &[Vector], eps: f64) -> Result<Vec<Tri>, GeomError> {
    let n = points.len();
    if n < 4 {
        return Err(GeomError::Degenerate("fewer than 4 points".into()));
    }
    // Initial tetrahedron from extreme points.
    let i0 = (0..n).min_by(|&a, &b| points[a].lex_cmp(&points[b])).unwrap();
    let i1 = (0..n)
        .max_by(|&a, &b| points[a].distance(&points[i0]).total_cmp(&points[b].distance(&points[i0])))
        .unwrap();
    let d01 = points[i1] - points[i0];
    if d01.norm() <= eps {
        return Err(GeomError::Degenerate("all points coincide".into()));
    }
    let line_dist = |p: &Vector| (*p - points[i0]).cross(&d01).norm() / d01.norm();
    let i2 = (0..n).max_by(|&a, &b| line_dist(&points[a]).total_cmp(&line_dist(&points[b]))).unwrap();
    if line_dist(&points[i2]) <= eps {
        return Err(GeomError::Degenerate("points are collinear".into()));
    }
    let pn = d01.cross(&(points[i2] - points[i0])).normalized().unwrap();
    let plane_dist = |p: &Vector| pn.dot(&(*p - points[i0]));
    let i3 = (0..n)
        .max_by(|&a, &b| plane_dist(&points[a]).abs().total_cmp(&plane_dist(&points[b]).abs()))
        .unwrap();
    if plane_dist(&points[i3]).abs() <= eps {
        return Err(GeomError::Degenerate("points are coplanar".into()));
    }
    let base = if plane_dist(&points[i3]) > 0.0 { [i0, i2, i1] } else { [i0, i1, i2] };
    let mut tris: Vec<Tri> = Vec::new();
    for v in [base, [base[0], base[1], i3], [base[1], base[2], i3], [base[2], base[0], i3]] {
        // The apex faces are built with the base edges reversed.
        let v = if v[2] == i3 { [v[1], v[0], v[2]] } else { v };
        tris.push(make_tri(points, v).ok_or_else(|| GeomError::Degenerate("initial simplex".into()))?);
    }
    let interior = (points[i0] + points[i1] + points[i2] + points[i3]) * 0.25;
    for t in &mut tris {
        if t.n.dot(&interior) > t.off {
            t.v.swap(0, 1);
            t.n = -t.n;
            t.off = -t.off;
        }
    }

    // Farthest-first processing keeps most non-extreme points off the boundary.
    let mut order: Vec<usize> = (0..n).filter(|&i| i != i0 && i != i1 && i != i2 && i != i3).collect();
    order.sort_by(|&a, &b| {
        points[b]
            .distance(&interior)
            .total_cmp(&points[a].distance(&interior))
            .then(a.cmp(&b))
    });

    let mut pending = order;
    let mut live = tris.len();
    for _pass in 0..4 {
        let mut deferred = Vec::new();
        for &pi in &pending {
            let p = points[pi];
            let visible: Vec<usize> = tris
                .iter()
                .enumerate()
                .filter(|(_, t)| t.alive && t.n.dot(&p) - t.off > eps)
                .map(|(k, _)| k)
                .collect();
            if visible.is_empty() {
                continue;
            }
            let mut edges = HashSet::with_capacity(visible.len() * 3);
            for &k in &visible {
                let v = tris[k].v;
                for e in 0..3 {
                    edges.insert((v[e], v[(e + 1) % 3]));
                }
            }
            let mut horizon: Vec<(usize, usize)> =
                edges.iter().filter(|(a, b)| !edges.contains(&(*b, *a))).copied().collect();
            horizon.sort_unstable();
            let new: Option<Vec<Tri>> = horizon.iter().map(|&(a, b)| make_tri(points, [a, b, pi])).collect();
            match new {
                Some(new) => {
                    for &k in &visible {
                        tris[k].alive = false;
                    }
                    live = live + new.len() - visible.len();
                    tris.extend(new);
                    if tris.len() > 4 * live {
                        tris.retain(|t| t.alive);
                    }
                }
                None => deferred.push(pi),
            }
        }
        if deferred.is_empty() {
            break;
        }
        pending = deferred;
        tris.retain(|t| t.alive);
    }
    tris.retain(|t| t.alive);
    // Closed 2-manifold check.
    let mut directed = HashSet::with_capacity(tris.len() * 3);
    for t in &tris {
        for e in 0..3 {
            if !directed.insert((t.v[e], t.v[(e + 1) % 3])) {
                return Err(GeomError::Degenerate("hull is not a closed surface".into()));
            }
        }
    }
    for &(a, b) in &directed {
        if !directed.contains(&(b, a)) {
            return Err(GeomError::Degenerate("hull is not a closed surface".into()));
        }
    }
    Ok(tris)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn merge_facets(points: &[Vector], tris: &[Tri], eps: f64) -> Vec<HullFacet> {
    let mut edge_owner: HashMap<(usize, usize), usize> = HashMap::with_capacity(tris.len() * 3);
    for (k, t) in tris.iter().enumerate() {
        for e in 0..3 {
            edge_owner.insert((t.v[e], t.v[(e + 1) % 3]), k);
        }
    }
    let cos_tol = FACET_MERGE_ANGLE.cos();
    let mut uf = UnionFind((0..tris.len()).collect());
    for (k, t) in tris.iter().enumerate() {
        for e in 0..3 {
            let (a, b) = (t.v[e], t.v[(e + 1) % 3]);
            let Some(&g) = edge_owner.get(&(b, a)) else { continue };
            if g <= k {
                continue;
            }
            let other = tris[g].v.iter().copied().find(|&v| v != a && v != b).unwrap();
            let coplanar = t.n.dot(&tris[g].n) >= cos_tol || (t.n.dot(&points[other]) - t.off).abs() <= eps;
            if coplanar {
                uf.union(k, g);
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for k in 0..tris.len() {
        let r = uf.find(k);
        groups.entry(r).or_default().push(k);
    }
    let mut roots: Vec<usize> = groups.keys().copied().collect();
    roots.sort_unstable();
    let mut facets = Vec::with_capacity(roots.len());
    for r in roots {
        let members = &groups[&r];
        let mut acc = Vector::ZERO;
        let mut verts: Vec<usize> = Vec::new();
        for &k in members {
            let [a, b, c] = tris[k].v;
            acc += (points[b] - points[a]).cross(&(points[c] - points[a]));
            verts.extend_from_slice(&tris[k].v);
        }
        verts.sort_unstable();
        verts.dedup();
        let normal = acc.normalized().unwrap_or(tris[members[0]].n);
        let offset = verts.iter().map(|&v| normal.dot(&points[v])).fold(f64::NEG_INFINITY, f64::max);
        facets.push(HullFacet { normal, offset, verts });
    }
    facets
}

fn normals_rank(normals: &[Vector]) -> usize {
    const TOL: f64 = 1e-9;
    if normals.is_empty() {
        return 0;
    }
    let a = normals[0];
    let Some(b) = normals.iter().find(|n| a.cross(n).norm() > TOL) else { return 1 };
    let ab = a.cross(b);
    if normals.iter().any(|n| ab.dot(n).abs() > TOL) {
        3
    } else {
        2
    }
}

fn order_facet_ring(points: &[Vector], f: &mut HullFacet) {
    let c: Vector = f.verts.iter().map(|&v| points[v]).sum::<Vector>() * (1.0 / f.verts.len() as f64);
    let helper = if f.normal.x().abs() < 0.9 { Vector::axis(0) } else { Vector::axis(1) };
    let u = f.normal.cross(&helper).normalized().unwrap();
    let w = f.normal.cross(&u);
    let angle = |v: usize| {
        let d = points[v] - c;
        d.dot(&w).atan2(d.dot(&u))
    };
    f.verts.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)).then(a.cmp(&b)));
}

fn hull3(points: &[Vector]) -> Result<Hull, GeomError> {
    let scale = extent(points);
    let eps = HULL_REL_EPS * scale;
    let mut subset: Vec<usize> = (0..points.len()).collect();
    for _round in 0..3 {
        let local: Vec<Vector> = subset.iter().map(|&i| points[i]).collect();
        let tris = raw_hull3(&local, eps)?;
        let facets = merge_facets(&local, &tris, eps);
        let mut incident: HashMap<usize, Vec<Vector>> = HashMap::new();
        for f in &facets {
            for &v in &f.verts {
                incident.entry(v).or_default().push(f.normal);
            }
        }
        let mut extreme: Vec<usize> =
            incident.iter().filter(|(_, ns)| normals_rank(ns) == 3).map(|(&v, _)| v).collect();
        extreme.sort_unstable();
        if extreme.len() == incident.len() {
            let mut facets: Vec<HullFacet> = facets
                .into_iter()
                .map(|mut f| {
                    order_facet_ring(&local, &mut f);
                    f.verts = f.verts.iter().map(|&v| subset[v]).collect();
                    f
                })
                .collect();
            facets.retain(|f| f.verts.len() >= 3);
            let vertices: Vec<usize> = extreme.iter().map(|&v| subset[v]).collect();
            return Ok(Hull { dim: 3, vertices, facets });
        }
        subset = extreme.iter().map(|&v| subset[v]).collect();
    }
    Err(GeomError::Degenerate("vertex extraction did not stabilise".into()))
}
