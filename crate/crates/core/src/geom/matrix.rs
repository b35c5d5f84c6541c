use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::Vector;

/// Row-major 3×3 real matrix. Planar maps are stored as `diag(M₂, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Matrix(pub [[f64; 3]; 3]);

impl Default for Matrix {
    fn default() -> Self {
        Matrix::IDENTITY
    }
}

impl Matrix {
    pub const IDENTITY: Matrix = Matrix([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn diag(d: [f64; 3]) -> Matrix {
        let mut m = Matrix([[0.0; 3]; 3]);
        for i in 0..3 {
            m.0[i][i] = d[i];
        }
        m
    }

    pub fn scalar(s: f64) -> Matrix {
        Matrix::diag([s, s, s])
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(c: [Vector; 3]) -> Matrix {
        let mut m = Matrix([[0.0; 3]; 3]);
        for (j, col) in c.iter().enumerate() {
            for i in 0..3 {
                m.0[i][j] = col[i];
            }
        }
        m
    }

    /// Planar matrix `diag(M₂, 1)` from a 2×2 row-major block.
    pub fn planar(m: [[f64; 2]; 2]) -> Matrix {
        Matrix([[m[0][0], m[0][1], 0.0], [m[1][0], m[1][1], 0.0], [0.0, 0.0, 1.0]])
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector([self.0[0][j], self.0[1][j], self.0[2][j]])
    }

    pub fn row(&self, i: usize) -> Vector {
        Vector(self.0[i])
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix([[0.0; 3]; 3]);
        for i in 0..3 {
            for j in 0..3 {
                t.0[i][j] = self.0[j][i];
            }
        }
        t
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn inverse(&self) -> Option<Matrix> {
        let d = self.det();
        if d == 0.0 || !d.is_finite() {
            return None;
        }
        let m = &self.0;
        let mut inv = [[0.0; 3]; 3];
        inv[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
        inv[0][1] = m[0][2] * m[2][1] - m[0][1] * m[2][2];
        inv[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
        inv[1][0] = m[1][2] * m[2][0] - m[1][0] * m[2][2];
        inv[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
        inv[1][2] = m[0][2] * m[1][0] - m[0][0] * m[1][2];
        inv[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
        inv[2][1] = m[0][1] * m[2][0] - m[0][0] * m[2][1];
        inv[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        for row in inv.iter_mut() {
            for v in row.iter_mut() {
                *v /= d;
            }
        }
        Some(Matrix(inv))
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        Vector([self.row(0).dot(v), self.row(1).dot(v), self.row(2).dot(v)])
    }

    /// Largest entry of `MᵀM − I`, a cheap orthogonality measure.
    pub fn orthogonality_defect(&self) -> f64 {
        let g = self.transpose() * *self;
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g.0[i][j] - e).abs());
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|v| v.is_finite())
    }

    /// Rotation by `angle` about the unit axis `axis` (Rodrigues).
    pub fn rotation(axis: Vector, angle: f64) -> Matrix {
        let k = axis.normalized().unwrap_or(Vector::axis(2));
        let (s, c) = angle.sin_cos();
        let t = 1.0 - c;
        let [x, y, z] = k.0;
        Matrix([
            [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
            [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
            [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
        ])
    }
}

impl Mul for Matrix {
    type Output = Matrix;
    fn mul(self, o: Matrix) -> Matrix {
        let mut r = [[0.0; 3]; 3];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| self.0[i][k] * o.0[k][j]).sum();
            }
        }
        Matrix(r)
    }
}

impl Mul<Vector> for Matrix {
    type Output = Vector;
    fn mul(self, v: Vector) -> Vector {
        self.apply(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix([[2.0, 1.0, 0.5], [0.0, 1.5, -1.0], [0.3, 0.2, 1.0]]);
        let p = m * m.inverse().unwrap();
        assert!((p.0[0][0] - 1.0).abs() < 1e-14);
        assert!(p.0[1][2].abs() < 1e-14);
    }

    #[test]
    fn rotation_is_orthogonal() {
        let r = Matrix::rotation(Vector::new(1.0, 2.0, 3.0), 0.7);
        assert!(r.orthogonality_defect() < 1e-14);
        assert!((r.det() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = Matrix([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 0.0, 1.0]]);
        assert!(m.inverse().is_none());
    }
}
