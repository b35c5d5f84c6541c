use serde::{Deserialize, Serialize};

use super::{GeomError, Matrix, Vector};

/// `x ↦ linear·x + translation` with an orthogonal linear part.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Isometry {
    pub linear: Matrix,
    pub translation: Vector,
}

impl Isometry {
    pub const ORTHO_TOL: f64 = 1e-9;

    pub fn new(linear: Matrix, translation: Vector) -> Result<Self, GeomError> {
        if linear.orthogonality_defect() > Self::ORTHO_TOL {
            return Err(GeomError::NotOrthogonal);
        }
        Ok(Isometry { linear, translation })
    }

    pub fn translation(t: Vector) -> Self {
        Isometry { linear: Matrix::IDENTITY, translation: t }
    }

    /// Point reflection `x ↦ −x + t`. In the plane only the first two axes flip.
    pub fn reflection(dim: usize, t: Vector) -> Self {
        let linear = if dim == 2 { Matrix::diag([-1.0, -1.0, 1.0]) } else { Matrix::scalar(-1.0) };
        Isometry { linear, translation: t }
    }

    pub fn apply(&self, p: &Vector) -> Vector {
        self.linear.apply(p) + self.translation
    }

    pub fn is_translation(&self) -> bool {
        self.linear == Matrix::IDENTITY
    }

    /// True when the linear part is the point reflection of the given dimension.
    pub fn is_point_reflection(&self, dim: usize) -> bool {
        self.linear == Isometry::reflection(dim, Vector::ZERO).linear
    }

    pub fn is_proper(&self) -> bool {
        self.linear.det() > 0.0
    }
}
