//! Helpers for coefficient vectors.

use num_traits::Zero;

use super::scalar::Scalar;

pub fn zeros(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| -x).collect()
}

pub fn scale(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    if c.is_zero() {
        return zeros(a.len());
    }
    a.iter().map(|x| c * x).collect()
}

/// `y += c * x`
pub fn axpy(y: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
    debug_assert_eq!(x.len(), y.len());
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += c * xi;
        }
    }
}

/// Linear combination of basis vectors with the given coefficients.
pub fn combine(coeffs: &[Scalar], basis: &[Vec<Scalar>], n: usize) -> Vec<Scalar> {
    let mut out = zeros(n);
    for (c, b) in coeffs.iter().zip(basis) {
        axpy(&mut out, c, b);
    }
    out
}
