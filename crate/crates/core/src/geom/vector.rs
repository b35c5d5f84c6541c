use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// A point or direction in the plane or in space.
///
/// Planar data lives in the first two coordinates with the third held at
/// zero, so every kernel routine can share one fixed-size representation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vector(pub [f64; 3]);

impl Vector {
    pub const ZERO: Vector = Vector([0.0; 3]);

    #[inline]
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vector([x, y, z])
    }

    #[inline]
    pub const fn planar(x: f64, y: f64) -> Self {
        Vector([x, y, 0.0])
    }

    /// Unit vector along axis `i`.
    #[inline]
    pub fn axis(i: usize) -> Self {
        let mut c = [0.0; 3];
        c[i] = 1.0;
        Vector(c)
    }

    /// Builds a vector from the first `dim` entries of a slice; missing entries are zero.
    pub fn from_slice(s: &[f64]) -> Self {
        let mut c = [0.0; 3];
        for (dst, src) in c.iter_mut().zip(s) {
            *dst = *src;
        }
        Vector(c)
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.0[0]
    }
    #[inline]
    pub fn y(&self) -> f64 {
        self.0[1]
    }
    #[inline]
    pub fn z(&self) -> f64 {
        self.0[2]
    }

    #[inline]
    pub fn dot(&self, o: &Vector) -> f64 {
        self.0[0] * o.0[0] + self.0[1] * o.0[1] + self.0[2] * o.0[2]
    }

    #[inline]
    pub fn cross(&self, o: &Vector) -> Vector {
        let [a, b, c] = self.0;
        let [d, e, f] = o.0;
        Vector([b * f - c * e, c * d - a * f, a * e - b * d])
    }

    /// z-component of the planar cross product.
    #[inline]
    pub fn cross2(&self, o: &Vector) -> f64 {
        self.0[0] * o.0[1] - self.0[1] * o.0[0]
    }

    #[inline]
    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn normalized(&self) -> Option<Vector> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Some(*self * (1.0 / n))
        } else {
            None
        }
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    /// The first `dim` coordinates.
    pub fn to_vec(&self, dim: usize) -> Vec<f64> {
        self.0[..dim].to_vec()
    }

    /// Total order used for deterministic output: lexicographic on coordinates.
    pub fn lex_cmp(&self, o: &Vector) -> std::cmp::Ordering {
        for i in 0..3 {
            match self.0[i].total_cmp(&o.0[i]) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    }

    pub fn distance(&self, o: &Vector) -> f64 {
        (*self - *o).norm()
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    #[inline]
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for Vector {
    type Output = Vector;
    #[inline]
    fn add(self, o: Vector) -> Vector {
        Vector([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl AddAssign for Vector {
    #[inline]
    fn add_assign(&mut self, o: Vector) {
        *self = *self + o;
    }
}

impl Sub for Vector {
    type Output = Vector;
    #[inline]
    fn sub(self, o: Vector) -> Vector {
        Vector([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl SubAssign for Vector {
    #[inline]
    fn sub_assign(&mut self, o: Vector) {
        *self = *self - o;
    }
}

impl Neg for Vector {
    type Output = Vector;
    #[inline]
    fn neg(self) -> Vector {
        Vector([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mul<f64> for Vector {
    type Output = Vector;
    #[inline]
    fn mul(self, s: f64) -> Vector {
        Vector([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }
}

impl Mul<Vector> for f64 {
    type Output = Vector;
    #[inline]
    fn mul(self, v: Vector) -> Vector {
        v * self
    }
}

impl std::iter::Sum for Vector {
    fn sum<I: Iterator<Item = Vector>>(iter: I) -> Vector {
        iter.fold(Vector::ZERO, |a, b| a + b)
    }
}
