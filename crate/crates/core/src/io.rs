//! JSON file formats for bodies and arrangements.
//!
//! Bodies are stored by their vertices (sorted, so equal bodies serialise
//! identically); facets are recomputed on load. Planar data uses two
//! coordinates per point.

use serde::{Deserialize, Serialize};

use crate::geom::{ConvexBody, GeomError, Isometry, Matrix, Vector};
use crate::lattice::{Lattice, LatticeError, Motif, PeriodicArrangement, Placement};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("expected {expected} coordinates, got {got}")]
    Coordinates { expected: usize, got: usize },
    #[error("unsupported dimension {0}")]
    Dimension(usize),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BodyFile {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlacementFile {
    pub body: usize,
    /// Row-major orthogonal matrix; identity when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linear: Option<[[f64; 3]; 3]>,
    pub translation: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArrangementFile {
    pub dim: usize,
    /// Lattice basis vectors.
    pub lattice: Vec<Vec<f64>>,
    pub bodies: Vec<BodyFile>,
    pub placements: Vec<PlacementFile>,
    /// Free-form provenance of the run that wrote the file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest: Option<serde_json::Value>,
}

fn check_dim(dim: usize) -> Result<(), IoError> {
    if dim == 2 || dim == 3 {
        Ok(())
    } else {
        Err(IoError::Dimension(dim))
    }
}

fn to_vector(dim: usize, c: &[f64]) -> Result<Vector, IoError> {
    if c.len() != dim {
        return Err(IoError::Coordinates { expected: dim, got: c.len() });
    }
    if c.iter().any(|x| !x.is_finite()) {
        return Err(GeomError::NonFinite.into());
    }
    Ok(Vector::from_slice(c))
}

impl BodyFile {
    pub fn from_body(k: &ConvexBody) -> Self {
        BodyFile { dim: k.dim(), vertices: k.vertices().iter().map(|v| v.to_vec(k.dim())).collect() }
    }

    pub fn to_body(&self) -> Result<ConvexBody, IoError> {
        check_dim(self.dim)?;
        let pts = self.vertices.iter().map(|c| to_vector(self.dim, c)).collect::<Result<Vec<_>, _>>()?;
        Ok(ConvexBody::from_points(&pts, self.dim)?)
    }
}

impl ArrangementFile {
    pub fn from_arrangement(a: &PeriodicArrangement) -> Self {
        let dim = a.dim();
        ArrangementFile {
            dim,
            lattice: a.lattice.vectors().iter().map(|v| v.to_vec(dim)).collect(),
            bodies: a.motif.bodies.iter().map(BodyFile::from_body).collect(),
            placements: a
                .motif
                .placements
                .iter()
                .map(|p| PlacementFile {
                    body: p.body,
                    linear: (!p.iso.is_translation()).then_some(p.iso.linear.0),
                    translation: p.iso.translation.to_vec(dim),
                })
                .collect(),
            manifest: None,
        }
    }

    pub fn to_arrangement(&self) -> Result<PeriodicArrangement, IoError> {
        check_dim(self.dim)?;
        let vectors = self.lattice.iter().map(|c| to_vector(self.dim, c)).collect::<Result<Vec<_>, _>>()?;
        let lattice = Lattice::new(self.dim, &vectors)?;
        let bodies = self.bodies.iter().map(|b| b.to_body()).collect::<Result<Vec<_>, _>>()?;
        let mut placements = Vec::new();
        for p in &self.placements {
            let t = to_vector(self.dim, &p.translation)?;
            let linear = p.linear.map(Matrix).unwrap_or(Matrix::IDENTITY);
            placements.push(Placement { body: p.body, iso: Isometry::new(linear, t)? });
        }
        Ok(PeriodicArrangement::new(lattice, Motif { bodies, placements })?)
    }
}

pub fn body_to_json(k: &ConvexBody) -> String {
    serde_json::to_string_pretty(&BodyFile::from_body(k)).expect("serialisable")
}

pub fn body_from_json(s: &str) -> Result<ConvexBody, IoError> {
    serde_json::from_str::<BodyFile>(s)?.to_body()
}

pub fn arrangement_from_json(s: &str) -> Result<PeriodicArrangement, IoError> {
    serde_json::from_str::<ArrangementFile>(s)?.to_arrangement()
}

/// Wavefront OBJ of every copy whose lattice coefficients lie in `-n..=n`.
pub fn arrangement_to_obj(a: &PeriodicArrangement, n: i64) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let mut base = 1usize;
    let placed = a.motif.placed_all();
    let range = |d: usize| if d < a.dim() { -n..=n } else { 0..=0 };
    for i in range(0) {
        for j in range(1) {
            for k in range(2) {
                let w = a.lattice.point([i, j, k]);
                for (p, body) in placed.iter().enumerate() {
                    let _ = writeln!(out, "o copy_{p}_{i}_{j}_{k}");
                    for v in body.vertices() {
                        let v = *v + w;
                        let _ = writeln!(out, "v {} {} {}", v.x(), v.y(), v.z());
                    }
                    if body.dim() == 3 {
                        for t in body.triangles() {
                            let _ = writeln!(out, "f {} {} {}", base + t[0], base + t[1], base + t[2]);
                        }
                    } else {
                        let ring: Vec<String> = polygon_ring(body).iter().map(|&v| (base + v).to_string()).collect();
                        let _ = writeln!(out, "f {}", ring.join(" "));
                    }
                    base += body.vertices().len();
                }
            }
        }
    }
    out
}

fn polygon_ring(k: &ConvexBody) -> Vec<usize> {
    let mut next = vec![usize::MAX; k.vertices().len()];
    for f in k.facets() {
        next[f.verts[0]] = f.verts[1];
    }
    let mut ring = vec![k.facets()[0].verts[0]];
    while ring.len() < k.vertices().len() {
        ring.push(next[*ring.last().expect("non-empty")]);
    }
    ring
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_json_is_an_error() {
        assert!(matches!(arrangement_from_json("{\"dim\": 3, \"lattice\": ["), Err(IoError::Json(_))));
    }

    #[test]
    fn wrong_coordinate_count() {
        let s = r#"{"dim": 2, "vertices": [[0, 0], [1, 0, 0], [0, 1]]}"#;
        assert!(matches!(body_from_json(s), Err(IoError::Coordinates { .. })));
    }
}
