use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Field, FieldSpec, FiniteField};
use crate::error::Result;
use crate::poly::UniPoly;

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_rational(&self, r: &BigRational) -> Result<BigRational> {
        Ok(r.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
    fn find_roots(&self, f: &UniPoly<Self>) -> Result<Vec<BigRational>> {
        Ok(rational_roots(f))
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn normalizer(&self, coeffs: &[&BigRational]) -> BigRational {
        let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let g = coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
        if g.is_zero() {
            return BigRational::one();
        }
        let lead_neg = coeffs.first().is_some_and(|c| c.is_negative());
        let r = BigRational::new(lcm, g);
        if lead_neg {
            -r
        } else {
            r
        }
    }
}

/// Integer coefficients of a rational polynomial with content removed, low to high.
pub(crate) fn primitive_integer_coeffs(f: &UniPoly<Rationals>) -> Vec<BigInt> {
    let lcm = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

fn eval_int(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    c.iter()
        .rev()
        .fold(BigInt::zero(), |acc, a| (acc * x + a).mod_floor(m))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Smallest-remainder rational reconstruction of `r` mod `m`.
fn reconstruct(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let qt = &r0 / &r1;
        let r2 = &r0 - &qt * &r1;
        let t2 = &t0 - &qt * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Rational roots by p-adic Newton lifting of the roots modulo a good prime.
fn rational_roots(f: &UniPoly<Rationals>) -> Vec<BigRational> {
    let mut out = Vec::new();
    if f.deg().unwrap_or(0) == 0 {
        return out;
    }
    let sqf = f.squarefree_part();
    let mut coeffs = primitive_integer_coeffs(&sqf);
    if coeffs[0].is_zero() {
        out.push(BigRational::zero());
        coeffs.remove(0);
        while coeffs.len() > 1 && coeffs[0].is_zero() {
            coeffs.remove(0);
        }
    }
    if coeffs.len() < 2 {
        return out;
    }
    let lc = coeffs.last().unwrap().clone();
    let c0 = coeffs[0].clone();
    let deriv: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let mut p = 5u64;
    let (fp, roots) = loop {
        p += 2;
        if !super::is_prime(p) {
            continue;
        }
        let bp = BigInt::from(p);
        if lc.mod_floor(&bp).is_zero() {
            continue;
        }
        let fp = FiniteField::new(p, 1).expect("prime");
        let red: Vec<u64> = coeffs
            .iter()
            .map(|c| c.mod_floor(&bp).to_u64().unwrap())
            .collect();
        let g = UniPoly::new(&fp, red);
        if g.gcd(&g.derivative()).deg() != Some(0) {
            continue;
        }
        let roots = fp.find_roots(&g).unwrap_or_default();
        break (fp, roots);
    };
    let _ = fp;
    let b = if lc.abs() > c0.abs() { lc.abs() } else { c0.abs() };
    let need = BigInt::from(2) * &b * &b;
    let bp = BigInt::from(p);
    for r in roots {
        let mut m = bp.clone();
        let mut x = BigInt::from(r);
        while m <= need {
            m = &m * &m;
            let fx = eval_int(&coeffs, &x, &m);
            let dfx = eval_int(&deriv, &x, &m);
            let Some(inv) = mod_inverse(&dfx, &m) else { break };
            x = (x - fx * inv).mod_floor(&m);
        }
        if let Some(cand) = reconstruct(&x, &m) {
            if sqf.eval(&cand).is_zero() {
                out.push(cand);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn finds_rational_roots() {
        // (3x + 2)(x - 5)(x^2 + 1)
        let f = UniPoly::from_roots(&Rationals, &[q(-2, 3), q(5, 1)])
            .mul(&UniPoly::new(&Rationals, vec![q(1, 1), q(0, 1), q(1, 1)]));
        assert_eq!(Rationals.find_roots(&f).unwrap(), vec![q(-2, 3), q(5, 1)]);
    }

    #[test]
    fn repeated_and_zero_roots() {
        let f = UniPoly::from_roots(&Rationals, &[q(0, 1), q(0, 1), q(-16, 27), q(-16, 27)]);
        let r = f.roots_with_multiplicity().unwrap();
        assert_eq!(r, vec![(q(-16, 27), 2), (q(0, 1), 2)]);
    }

    #[test]
    fn large_coefficients() {
        let f = UniPoly::from_roots(&Rationals, &[q(123456789, 1000003), q(-7, 2)]);
        assert_eq!(
            Rationals.find_roots(&f).unwrap(),
            vec![q(-7, 2), q(123456789, 1000003)]
        );
    }
}
