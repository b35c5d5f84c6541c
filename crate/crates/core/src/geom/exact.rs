//! Exact rational arithmetic for volumes of polytopes with dyadic or rational vertices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{ConvexBody, Vector};

pub type Point = [BigRational; 3];

/// Exact value of a finite `f64`.
pub fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite coordinate")
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn point(v: &Vector) -> Point {
    [rational(v[0]), rational(v[1]), rational(v[2])]
}

pub fn to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

fn sub(a: &Point, b: &Point) -> Point {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

pub fn det3(a: &Point, b: &Point, c: &Point) -> BigRational {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

pub fn det2(a: &Point, b: &Point) -> BigRational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// The simplest fraction with denominator at most `max_den` within `1e-12·max(1, |x|)` of `x`,
/// found from the continued-fraction convergents.
pub fn rationalize(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let tol = 1e-12 * x.abs().max(1.0);
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let ai = a as i128;
        (p0, q0, p1, q1) = (p1, q1, ai * p1 + p0, ai * q1 + q0);
        if q1 > max_den as i128 {
            return None;
        }
        if (p1 as f64 / q1 as f64 - x).abs() <= tol {
            return Some(BigRational::new(BigInt::from(p1), BigInt::from(q1)));
        }
        let frac = r - a;
        if frac == 0.0 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

/// Volume of the body from the given exact vertex coordinates, using the
/// float body's facet structure. `verts[i]` must be the exact value of
/// `body.vertices()[i]`.
pub fn volume_with(body: &ConvexBody, verts: &[Point]) -> BigRational {
    assert_eq!(verts.len(), body.vertices().len());
    let r = &verts[0];
    let mut acc = BigRational::zero();
    match body.dim() {
        2 => {
            for f in body.facets() {
                let a = sub(&verts[f.verts[0]], r);
                let b = sub(&verts[f.verts[1]], r);
                acc += det2(&a, &b);
            }
            acc.abs() / ratio(2, 1)
        }
        _ => {
            for f in body.facets() {
                let a = sub(&verts[f.verts[0]], r);
                for k in 1..f.verts.len() - 1 {
                    let b = sub(&verts[f.verts[k]], r);
                    let c = sub(&verts[f.verts[k + 1]], r);
                    acc += det3(&a, &b, &c);
                }
            }
            acc.abs() / ratio(6, 1)
        }
    }
}

/// Exact volume taking the float vertices at face value.
pub fn volume(body: &ConvexBody) -> BigRational {
    let verts: Vec<Point> = body.vertices().iter().map(point).collect();
    volume_with(body, &verts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationalize_recovers_small_fractions() {
        assert_eq!(rationalize(2.0 / 3.0, 1000), Some(ratio(2, 3)));
        assert_eq!(rationalize(-0.1 + 1e-15, 1000), Some(ratio(-1, 10)));
        assert_eq!(rationalize(std::f64::consts::PI, 1000), None);
    }

    #[test]
    fn unit_tetrahedron_is_one_sixth() {
        let pts = [Vector::ZERO, Vector::axis(0), Vector::axis(1), Vector::axis(2)];
        let body = ConvexBody::from_points(&pts, 3).unwrap();
        assert_eq!(volume(&body), ratio(1, 6));
    }
}
