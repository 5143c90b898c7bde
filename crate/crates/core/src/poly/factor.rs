//! Factorization over finite fields: distinct-degree and equal-degree splitting, roots.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::UniPoly;
use crate::error::{Error, Result};
use crate::field::{Field, FiniteField};

const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

fn x_poly(f: &FiniteField) -> UniPoly<FiniteField> {
    UniPoly::x(f)
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &UniPoly<FiniteField>) -> bool {
    let n = match f.deg() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let fld = f.field();
    let q = fld.q() as u128;
    let m = f.monic();
    let x = x_poly(fld);
    // frob[i] = x^{q^i} mod m
    let mut frob = vec![x.rem(&m)];
    for i in 1..=n {
        let next = frob[i - 1].pow_mod(q, &m);
        frob.push(next);
    }
    if frob[n] != x.rem(&m) {
        return false;
    }
    let mut r = 2;
    let mut nn = n;
    while nn > 1 {
        if nn % r == 0 {
            let g = frob[n / r].sub(&x).gcd(&m);
            if g.deg() != Some(0) {
                return false;
            }
            while nn % r == 0 {
                nn /= r;
            }
        }
        r += 1;
    }
    true
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs (product of all irreducible factors of degree d, d).
pub fn distinct_degree(f: &UniPoly<FiniteField>) -> Vec<(UniPoly<FiniteField>, usize)> {
    let fld = f.field();
    let q = fld.q() as u128;
    let x = x_poly(fld);
    let mut rest = f.monic();
    let mut out = Vec::new();
    let mut h = x.clone();
    let mut d = 0;
    while rest.deg().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(q, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.deg().unwrap_or(0) > 0 {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if let Some(dr) = rest.deg() {
        if dr > 0 {
            out.push((rest, dr));
        }
    }
    out
}

/// Splits a monic product of irreducibles of common degree `d` (odd q).
pub fn equal_degree(f: &UniPoly<FiniteField>, d: usize, seed: u64) -> Vec<UniPoly<FiniteField>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut stack = vec![f.monic()];
    while let Some(g) = stack.pop() {
        let n = g.deg().unwrap_or(0);
        if n == 0 {
            continue;
        }
        if n == d {
            out.push(g);
            continue;
        }
        loop {
            let s = split_once(&g, d, &mut rng);
            if let Some(h) = s {
                let other = g.div_exact(&h).expect("factor divides");
                stack.push(h);
                stack.push(other);
                break;
            }
        }
    }
    out.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    out
}

fn split_once(
    g: &UniPoly<FiniteField>,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Option<UniPoly<FiniteField>> {
    let fld = g.field();
    let q = fld.q();
    let n = g.deg().unwrap();
    let a = UniPoly::new(fld, (0..n).map(|_| rng.gen_range(0..q)).collect());
    if a.deg().unwrap_or(0) == 0 {
        return None;
    }
    let c = a.gcd(g);
    if c.deg().unwrap_or(0) > 0 {
        return Some(c);
    }
    // a^{(q^d - 1)/2} = (a * a^q * ... * a^{q^{d-1}})^{(q-1)/2}
    let mut t = a.rem(g);
    let mut cur = t.clone();
    for _ in 1..d {
        cur = cur.pow_mod(q as u128, g);
        t = t.mul(&cur).rem(g);
    }
    let b = t.pow_mod(((q - 1) / 2) as u128, g);
    let c = b.sub(&UniPoly::one(fld)).gcd(g);
    let cd = c.deg().unwrap_or(0);
    (cd > 0 && cd < n).then_some(c)
}

/// Complete factorization into monic irreducibles with multiplicity, sorted.
pub fn factor(f: &UniPoly<FiniteField>) -> Result<Vec<(UniPoly<FiniteField>, usize)>> {
    let mut out = Vec::new();
    for (s, m) in f.squarefree_decomposition()? {
        for (block, d) in distinct_degree(&s) {
            for irr in equal_degree(&block, d, 0x5eed_0000 + d as u64) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by(|a, b| (a.0.deg(), a.0.coeffs(), a.1).cmp(&(b.0.deg(), b.0.coeffs(), b.1)));
    Ok(out)
}

/// Distinct roots in F_q of a nonzero polynomial, sorted by code.
pub fn finite_roots(f: &UniPoly<FiniteField>) -> Result<Vec<u64>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fld = f.field();
    let g = f.monic();
    if g.deg() == Some(0) {
        return Ok(Vec::new());
    }
    let q = fld.q();
    let x = x_poly(fld);
    let xq = x.pow_mod(q as u128, &g);
    let h = xq.sub(&x).gcd(&g);
    let h = if h.is_zero() { g.clone() } else { h };
    let mut roots = match h.deg() {
        Some(0) | None => Vec::new(),
        Some(1) => vec![fld.neg(&h.coeff(0))],
        Some(_) if q <= EXHAUSTIVE_LIMIT => (0..q)
            .filter(|c| fld.is_zero(&h.eval(c)))
            .collect(),
        Some(_) => equal_degree(&h, 1, 0x5eed)
            .iter()
            .map(|l| fld.neg(&l.coeff(0)))
            .collect(),
    };
    roots.sort_unstable();
    Ok(roots)
}
