use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{Field, FieldSpec};
use crate::error::{Error, Result};
use crate::poly::{factor, UniPoly};

const MAX_K: usize = 64;
const TABLE_LIMIT: u64 = 1 << 20;
const NO_LOG: u32 = u32::MAX;

/// The finite field F_{p^k}.
///
/// Elements are `u64` codes: the residue `c_0 + c_1 a + ... + c_{k-1} a^{k-1}`
/// (with `a` a root of the modulus) is stored as `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`.
/// So `0` is zero, `1` is one and `0..p` is the prime field.
#[derive(Clone)]
pub struct FiniteField(Arc<Inner>);

struct Inner {
    p: u64,
    k: u32,
    q: u64,
    /// monic, low to high, length k+1
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteField({}^{})", self.0.p, self.0.k)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k
    }
}
impl Eq for FiniteField {}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Lexicographically smallest monic irreducible polynomial of degree `k` over F_p,
/// scanning the coefficient vector `(c_{k-1}, ..., c_0)` in increasing order.
pub fn find_irreducible(p: u64, k: u32) -> Result<UniPoly<FiniteField>> {
    if k < 1 {
        return Err(Error::Degree("extension degree must be at least 1".into()));
    }
    let fp = FiniteField::new(p, 1)?;
    if k == 1 {
        return Ok(UniPoly::new(&fp, vec![0, 1]));
    }
    let count = p
        .checked_pow(k)
        .ok_or_else(|| Error::InvalidField(format!("{p}^{k} too large")))?;
    for code in 0..count {
        let mut coeffs = Vec::with_capacity(k as usize + 1);
        let mut c = code;
        for _ in 0..k {
            coeffs.push(c % p);
            c /= p;
        }
        coeffs.push(1);
        let f = UniPoly::new(&fp, coeffs);
        if factor::is_irreducible(&f) {
            return Ok(f);
        }
    }
    unreachable!("irreducible polynomials of every degree exist")
}

impl FiniteField {
    /// F_{p^k}; requires p an odd prime, `p^k < 2^62`.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) || p == 2 {
            return Err(Error::InvalidField(format!("{p} is not an odd prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidField(format!("prime {p} too large")));
        }
        if k == 0 {
            return Err(Error::InvalidField("extension degree 0".into()));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q < 1 << 62)
            .ok_or_else(|| Error::InvalidField(format!("{p}^{k} exceeds 2^62")))?;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            find_irreducible(p, k)?.coeffs().to_vec()
        };
        let mut inner = Inner { p, k, q, modulus, tables: None };
        if q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(FiniteField(Arc::new(inner)))
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        match spec {
            FieldSpec::Finite { p, k } => FiniteField::new(*p, *k),
            FieldSpec::Rationals => Err(Error::InvalidField("expected a finite field".into())),
        }
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn k(&self) -> u32 {
        self.0.k
    }
    pub fn q(&self) -> u64 {
        self.0.q
    }
    /// The defining polynomial over F_p, low to high.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// The class of the indeterminate (`p` as a code) or 1 for a prime field.
    pub fn gen(&self) -> u64 {
        if self.0.k == 1 {
            1
        } else {
            self.0.p
        }
    }

    /// a ↦ a^(p^times).
    pub fn frobenius(&self, a: u64, times: u32) -> u64 {
        let mut x = a;
        for _ in 0..times {
            x = self.pow(&x, self.0.p);
        }
        x
    }

    /// True when `a` lies in the subfield F_{p^d}.
    pub fn in_subfield(&self, a: u64, d: u32) -> bool {
        self.frobenius(a, d) == a
    }

    /// Primitive cube root of unity, if the field has one.
    pub fn cube_root_of_unity(&self) -> Option<u64> {
        let q = self.0.q;
        if !(q - 1).is_multiple_of(3) {
            return None;
        }
        (2..q).map(|c| self.pow(&c, (q - 1) / 3)).find(|&z| z != 1)
    }

    fn digits(&self, mut a: u64, out: &mut [u64; MAX_K]) {
        let p = self.0.p;
        for d in out.iter_mut().take(self.0.k as usize) {
            *d = a % p;
            a /= p;
        }
    }

    fn encode(&self, d: &[u64]) -> u64 {
        let p = self.0.p;
        d.iter().rev().fold(0u64, |acc, &c| acc * p + c)
    }

    fn add_slow(&self, a: u64, b: u64) -> u64 {
        let (p, k) = (self.0.p, self.0.k);
        if k == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut x, mut y) = (a, b);
        let mut out = 0u64;
        let mut scale = 1u64;
        for _ in 0..k {
            let s = (x % p + y % p) % p;
            out += s * scale;
            scale = scale.wrapping_mul(p);
            x /= p;
            y /= p;
        }
        out
    }

    fn neg_slow(&self, a: u64) -> u64 {
        let (p, k) = (self.0.p, self.0.k);
        if k == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let mut x = a;
        let mut out = 0u64;
        let mut scale = 1u64;
        for _ in 0..k {
            let c = x % p;
            out += ((p - c) % p) * scale;
            scale = scale.wrapping_mul(p);
            x /= p;
        }
        out
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let (p, k) = (self.0.p, self.0.k as usize);
        if k == 1 {
            return ((a as u128 * b as u128) % p as u128) as u64;
        }
        let mut da = [0u64; MAX_K];
        let mut db = [0u64; MAX_K];
        self.digits(a, &mut da);
        self.digits(b, &mut db);
        let mut prod = [0u64; 2 * MAX_K];
        for i in 0..k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        let m = &self.0.modulus;
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..k {
                let t = prod[i - k + j] + (p - c) * m[j] % p;
                prod[i - k + j] = t % p;
            }
        }
        self.encode(&prod[..k])
    }

    /// The field as a subfield-compatible embedding target: returns the map
    /// F_{p^k} → F_{p^K} sending the generator to the smallest root of this modulus.
    pub fn embed_into(&self, big: &FiniteField) -> Result<Embedding> {
        if self.0.p != big.0.p || !big.0.k.is_multiple_of(self.0.k) {
            return Err(Error::FieldMismatch(format!("{self:?} does not embed in {big:?}")));
        }
        let k = self.0.k as usize;
        let image_of_gen = if k == 1 {
            1
        } else {
            let m = UniPoly::new(big, self.0.modulus.clone());
            let mut roots = big.find_roots(&m)?;
            roots.sort_unstable();
            *roots
                .first()
                .ok_or_else(|| Error::Inconsistent("modulus has no root in extension".into()))?
        };
        let mut powers = Vec::with_capacity(k);
        let mut acc = 1u64;
        for _ in 0..k {
            powers.push(acc);
            acc = big.mul(&acc, &image_of_gen);
        }
        Ok(Embedding {
            small: self.clone(),
            big: big.clone(),
            powers,
        })
    }
}

fn build_tables(inner: &Inner) -> Tables {
    let tmp = FiniteField(Arc::new(Inner {
        p: inner.p,
        k: inner.k,
        q: inner.q,
        modulus: inner.modulus.clone(),
        tables: None,
    }));
    let q = inner.q;
    let n = q - 1;
    let factors = prime_factors(n);
    let powslow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = tmp.mul_slow(r, b);
            }
            b = tmp.mul_slow(b, b);
            e >>= 1;
        }
        r
    };
    let g = (2..q)
        .find(|&g| factors.iter().all(|&r| powslow(g, n / r) != 1))
        .unwrap_or(1);
    let mut exp = vec![0u32; 2 * n as usize];
    let mut log = vec![NO_LOG; q as usize];
    let mut x = 1u64;
    for i in 0..n as usize {
        exp[i] = x as u32;
        exp[i + n as usize] = x as u32;
        log[x as usize] = i as u32;
        x = tmp.mul_slow(x, g);
    }
    let mut zech = vec![NO_LOG; n as usize];
    for (i, z) in zech.iter_mut().enumerate() {
        let y = tmp.add_slow(exp[i] as u64, 1);
        if y != 0 {
            *z = log[y as usize];
        }
    }
    Tables { exp, log, zech }
}

impl Field for FiniteField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let (a, b) = (*a, *b);
        if self.0.k == 1 {
            let s = a + b;
            return if s >= self.0.p { s - self.0.p } else { s };
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        match &self.0.tables {
            Some(t) => {
                let (la, lb) = (t.log[a as usize], t.log[b as usize]);
                let (lo, hi) = if la <= lb { (la, lb) } else { (lb, la) };
                let z = t.zech[(hi - lo) as usize];
                if z == NO_LOG {
                    0
                } else {
                    t.exp[(lo + z) as usize] as u64
                }
            }
            None => self.add_slow(a, b),
        }
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        self.neg_slow(*a)
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if self.0.k == 1 {
            let (a, b) = (*a, *b);
            return if a >= b { a - b } else { a + self.0.p - b };
        }
        self.add(a, &self.neg_slow(*b))
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        let (a, b) = (*a, *b);
        if a == 0 || b == 0 {
            return 0;
        }
        if self.0.k == 1 {
            return ((a as u128 * b as u128) % self.0.p as u128) as u64;
        }
        match &self.0.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize] as u64,
            None => self.mul_slow(a, b),
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        match &self.0.tables {
            Some(t) => {
                let n = (self.0.q - 1) as u32;
                let l = t.log[*a as usize];
                Some(t.exp[((n - l) % n) as usize] as u64)
            }
            None => Some(self.pow(a, self.0.q - 2)),
        }
    }

    fn from_i64(&self, n: i64) -> u64 {
        let p = self.0.p as i64;
        n.rem_euclid(p) as u64
    }

    fn from_rational(&self, r: &BigRational) -> Result<u64> {
        let p = BigInt::from(self.0.p);
        let red = |x: &BigInt| -> u64 { x.mod_floor(&p).to_u64().unwrap_or(0) };
        let num = red(r.numer());
        let den = red(r.denom());
        if den == 0 {
            return Err(Error::InvalidField(format!(
                "denominator of {r} vanishes mod {}",
                self.0.p
            )));
        }
        Ok(self.mul(&num, &self.inv(&den).expect("nonzero")))
    }

    fn characteristic(&self) -> u64 {
        self.0.p
    }

    fn order(&self) -> Option<u64> {
        Some(self.0.q)
    }

    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.0.q).collect())
    }

    fn find_roots(&self, f: &UniPoly<Self>) -> Result<Vec<u64>> {
        factor::finite_roots(f)
    }

    fn fmt_elem(&self, a: &u64) -> String {
        if self.0.k == 1 {
            return a.to_string();
        }
        let mut d = [0u64; MAX_K];
        self.digits(*a, &mut d);
        let mut parts = Vec::new();
        for i in (0..self.0.k as usize).rev() {
            let c = d[i];
            if c == 0 {
                continue;
            }
            parts.push(match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "a".to_string(),
                (1, c) => format!("{c}*a"),
                (i, 1) => format!("a^{i}"),
                (i, c) => format!("{c}*a^{i}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Finite {
            p: self.0.p,
            k: self.0.k,
        }
    }

    fn pow(&self, a: &u64, e: u64) -> u64 {
        if let Some(t) = &self.0.tables {
            if *a == 0 {
                return if e == 0 { 1 } else { 0 };
            }
            let n = self.0.q - 1;
            let l = t.log[*a as usize] as u128;
            return t.exp[((l * e as u128) % n as u128) as usize] as u64;
        }
        let mut base = *a;
        let mut acc = 1u64;
        let mut e = e;
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
}

/// Field embedding F_{p^k} → F_{p^K}.
#[derive(Clone, Debug)]
pub struct Embedding {
    small: FiniteField,
    big: FiniteField,
    powers: Vec<u64>,
}

impl Embedding {
    pub fn source(&self) -> &FiniteField {
        &self.small
    }
    pub fn target(&self) -> &FiniteField {
        &self.big
    }

    pub fn apply(&self, a: u64) -> u64 {
        let p = self.small.p();
        let mut x = a;
        let mut acc = 0u64;
        for pw in &self.powers {
            let c = x % p;
            x /= p;
            if c != 0 {
                acc = self.big.add(&acc, &self.big.mul(&c, pw));
            }
        }
        acc
    }

    pub fn apply_poly(&self, f: &UniPoly<FiniteField>) -> UniPoly<FiniteField> {
        UniPoly::new(&self.big, f.coeffs().iter().map(|&c| self.apply(c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_irreducible_quadratic_mod_5() {
        let f = find_irreducible(5, 2).unwrap();
        assert_eq!(f.coeffs(), &[2, 0, 1]);
    }

    #[test]
    fn irreducible_is_deterministic() {
        let a = find_irreducible(13, 3).unwrap();
        let b = find_irreducible(13, 3).unwrap();
        assert_eq!(a, b);
        assert!(factor::is_irreducible(&a));
    }

    #[test]
    fn table_arithmetic_matches_polynomial_arithmetic() {
        for (p, k) in [(3, 2), (5, 2), (7, 3), (13, 2)] {
            let f = FiniteField::new(p, k).unwrap();
            let q = f.q();
            for a in (0..q).step_by(7) {
                for b in (0..q).step_by(5) {
                    assert_eq!(f.mul(&a, &b), f.mul_slow(a, b));
                    assert_eq!(f.add(&a, &b), f.add_slow(a, b));
                    assert_eq!(f.sub(&f.add(&a, &b), &b), a);
                }
                if a != 0 {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
                }
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        let f = FiniteField::new(101, 4).unwrap();
        assert!(f.0.tables.is_none());
        let a = 12345u64;
        let inv = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &inv), 1);
        assert_eq!(f.pow(&a, f.q() - 1), 1);
    }

    #[test]
    fn subfield_membership() {
        let f = FiniteField::new(5, 4).unwrap();
        let sub: Vec<u64> = (0..f.q()).filter(|&a| f.in_subfield(a, 2)).collect();
        assert_eq!(sub.len(), 25);
        assert!((0..5).all(|a| f.in_subfield(a, 1)));
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let small = FiniteField::new(7, 2).unwrap();
        let big = FiniteField::new(7, 4).unwrap();
        let e = small.embed_into(&big).unwrap();
        for a in 0..small.q() {
            for b in [3u64, 10, 48] {
                assert_eq!(e.apply(small.mul(&a, &b)), big.mul(&e.apply(a), &e.apply(b)));
                assert_eq!(e.apply(small.add(&a, &b)), big.add(&e.apply(a), &e.apply(b)));
            }
        }
    }

    #[test]
    fn rejects_bad_primes() {
        assert!(FiniteField::new(2, 1).is_err());
        assert!(FiniteField::new(9, 1).is_err());
        assert!(FiniteField::new(5, 0).is_err());
    }

    #[test]
    fn miller_rabin() {
        let primes: Vec<u64> = (0..100).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes.len(), 25);
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
    }
}
