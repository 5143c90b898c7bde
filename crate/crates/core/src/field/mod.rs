//! Exact scalar fields: the rationals and finite fields F_{p^k}.

mod finite;
mod rational;

pub use finite::{find_irreducible, is_prime, Embedding, FiniteField};
pub use rational::Rationals;

use std::fmt;
use std::hash::Hash;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::UniPoly;

/// An exact field. Elements are plain values; all arithmetic goes through the field.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Ord + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Fails when the denominator vanishes in the field.
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, r: &BigRational) -> Result<Self::Elem>;
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;
    /// All elements in a fixed order, `None` when infinite.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    /// Distinct roots of a nonzero polynomial lying in this field.
    /// Over the rationals only rational roots exist, so that is what is returned.
    fn find_roots(&self, f: &UniPoly<Self>) -> Result<Vec<Self::Elem>>;
    fn fmt_elem(&self, a: &Self::Elem) -> String;
    fn spec(&self) -> FieldSpec;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Scalar that brings a coefficient list into canonical form: over a finite field the
    /// inverse of the first coefficient, over ℚ the factor making it a primitive integer vector.
    fn normalizer(&self, coeffs: &[&Self::Elem]) -> Self::Elem {
        coeffs
            .iter()
            .find(|c| !self.is_zero(c))
            .and_then(|c| self.inv(c))
            .unwrap_or_else(|| self.one())
    }

    fn same_field(&self, other: &Self) -> bool {
        self.spec() == other.spec()
    }
}

/// Serializable description of a field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Rationals,
    Finite { p: u64, k: u32 },
}

impl FieldSpec {
    /// Parses `Q`, `F p` or `F p k` (also accepts `F_p`, `GF(p^k)` is not supported).
    pub fn parse(s: &str) -> Result<FieldSpec> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        match toks.as_slice() {
            ["Q"] | ["q"] => Ok(FieldSpec::Rationals),
            ["F", p] => Ok(FieldSpec::Finite { p: parse_u64(p)?, k: 1 }),
            ["F", p, k] => Ok(FieldSpec::Finite {
                p: parse_u64(p)?,
                k: parse_u64(k)? as u32,
            }),
            _ => Err(Error::InvalidField(format!("cannot parse field spec {s:?}"))),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Finite { p, .. } => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Finite { p, k: 1 } => write!(f, "F_{p}"),
            FieldSpec::Finite { p, k } => write!(f, "F_{p}^{k}"),
        }
    }
}

fn parse_u64(s: &str) -> Result<u64> {
    s.parse()
        .map_err(|_| Error::InvalidField(format!("not a number: {s:?}")))
}

/// The analyses of pencils and flecnodal points assume characteristic 0 or p >= 5.
pub fn require_good_characteristic<F: Field>(field: &F) -> Result<()> {
    let p = field.characteristic();
    if p == 2 || p == 3 {
        return Err(Error::Unsupported(format!(
            "characteristic {p}; this analysis needs characteristic 0 or p >= 5"
        )));
    }
    Ok(())
}
