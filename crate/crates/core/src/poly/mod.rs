//! Univariate, multivariate and binary polynomials with exact coefficients.

mod binary;
pub mod factor;
mod multi;
pub mod parse;
mod uni;

pub use binary::{BinaryForm, P1};
pub use multi::{det_poly, sylvester_formal, Monomial, MultiPoly, MAX_VARS};
pub use uni::UniPoly;

use crate::error::{Error, Result};
use crate::field::Field;

/// Determinant of the 3×3 matrix of second partials in the given variables.
/// Other variables act as parameters.
pub fn hessian_determinant<F: Field>(c: &MultiPoly<F>, vars: [usize; 3]) -> Result<MultiPoly<F>> {
    if c.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !c.is_homogeneous_in(&vars) || c.degree_in_vars(&vars) != Some(3) {
        return Err(Error::NotHomogeneous);
    }
    let first: Vec<MultiPoly<F>> = vars.iter().map(|&v| c.derivative(v)).collect();
    let m: Vec<Vec<MultiPoly<F>>> = first
        .iter()
        .map(|d| vars.iter().map(|&v| d.derivative(v)).collect())
        .collect();
    Ok(det3(&m))
}

/// Cofactor expansion of a 3×3 polynomial determinant.
pub fn det3<F: Field>(m: &[Vec<MultiPoly<F>>]) -> MultiPoly<F> {
    let t0 = m[0][0].mul(&m[1][1].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][1])));
    let t1 = m[0][1].mul(&m[1][0].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][0])));
    let t2 = m[0][2].mul(&m[1][0].mul(&m[2][1]).sub(&m[1][1].mul(&m[2][0])));
    t0.sub(&t1).add(&t2)
}

#[cfg(test)]
mod tests;
