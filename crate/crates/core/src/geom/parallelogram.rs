//! Minimum-area enclosing parallelogram of a centrally symmetric polygon.
//!
//! For a symmetric polygon an optimal parallelogram has both side
//! directions parallel to polygon edges, so it suffices to compare the
//! strip intersections over all pairs of edge normals.

use super::{ConvexBody, GeomError, Vector, EPS};

#[derive(Clone, Debug)]
pub struct EnclosingParallelogram {
    pub body: ConvexBody,
    /// Corners in counter-clockwise order.
    pub corners: [Vector; 4],
    pub area: f64,
    /// `area / area(K)`.
    pub ratio: f64,
    /// Facet indices of `K` whose directions the sides follow.
    pub edge_pair: (usize, usize),
}

fn line_intersection(n1: Vector, h1: f64, n2: Vector, h2: f64) -> Vector {
    let det = n1.cross2(&n2);
    Vector::planar((h1 * n2.y() - h2 * n1.y()) / det, (n1.x() * h2 - n2.x() * h1) / det)
}

pub fn min_enclosing_parallelogram(k: &ConvexBody) -> Result<EnclosingParallelogram, GeomError> {
    if k.dim() != 2 {
        return Err(GeomError::DimensionMismatch(k.dim(), 2));
    }
    if !k.is_centrally_symmetric() {
        return Err(GeomError::NotSymmetric);
    }
    let normals: Vec<Vector> = k.facets().iter().map(|f| f.normal).collect();
    let widths: Vec<f64> = normals.iter().map(|n| k.support(n) + k.support(&-*n)).collect();
    let mut best: Option<(f64, usize, usize)> = None;
    for i in 0..normals.len() {
        for j in i + 1..normals.len() {
            let s = normals[i].cross2(&normals[j]).abs();
            if s <= EPS {
                continue;
            }
            let area = widths[i] * widths[j] / s;
            if best.is_none_or(|(b, _, _)| area < b) {
                best = Some((area, i, j));
            }
        }
    }
    let (area, i, j) = best.ok_or_else(|| GeomError::Degenerate("no independent edge pair".into()))?;
    let (ni, nj) = (normals[i], normals[j]);
    let (hi_p, hi_m) = (k.support(&ni), -k.support(&-ni));
    let (hj_p, hj_m) = (k.support(&nj), -k.support(&-nj));
    let mut corners = [
        line_intersection(ni, hi_p, nj, hj_p),
        line_intersection(ni, hi_m, nj, hj_p),
        line_intersection(ni, hi_m, nj, hj_m),
        line_intersection(ni, hi_p, nj, hj_m),
    ];
    if (corners[1] - corners[0]).cross2(&(corners[2] - corners[0])) < 0.0 {
        corners.reverse();
    }
    let body = ConvexBody::from_points(&corners, 2)?;
    Ok(EnclosingParallelogram { ratio: area / k.volume(), area, body, corners, edge_pair: (i, j) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_is_its_own_parallelogram() {
        let sq = ConvexBody::from_coords(2, &[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        let p = min_enclosing_parallelogram(&sq).unwrap();
        assert!((p.ratio - 1.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_rejected() {
        let t = ConvexBody::from_coords(2, &[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(min_enclosing_parallelogram(&t), Err(GeomError::NotSymmetric)));
    }
}
