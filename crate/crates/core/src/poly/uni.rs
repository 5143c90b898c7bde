use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;

/// Dense univariate polynomial, coefficients low to high, no trailing zeros.
#[derive(Clone)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for UniPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}
impl<F: Field> Eq for UniPoly<F> {}

impl<F: Field> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &F) -> Self {
        UniPoly::new(field, Vec::new())
    }

    pub fn one(field: &F) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        UniPoly::new(field, vec![c])
    }

    /// The polynomial x.
    pub fn x(field: &F) -> Self {
        UniPoly::new(field, vec![field.zero(), field.one()])
    }

    pub fn monomial(field: &F, c: F::Elem, n: usize) -> Self {
        let mut v = vec![field.zero(); n + 1];
        v[n] = c;
        UniPoly::new(field, v)
    }

    /// Product of (x - r) over the given roots.
    pub fn from_roots(field: &F, roots: &[F::Elem]) -> Self {
        roots.iter().fold(Self::one(field), |acc, r| {
            acc.mul(&UniPoly::new(field, vec![field.neg(r), field.one()]))
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> F::Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    fn check(&self, other: &Self) {
        debug_assert!(self.field.same_field(&other.field), "field mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| f.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        UniPoly::new(f, v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| f.sub(&self.coeff(i), &other.coeff(i)))
            .collect();
        UniPoly::new(f, v)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        UniPoly::new(f, self.coeffs.iter().map(|c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        UniPoly::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut v = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(&v[i + j], &f.mul(a, b));
            }
        }
        UniPoly::new(f, v)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(&self.field), |acc, _| acc.mul(self))
    }

    /// Division with remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        self.check(d);
        let f = &self.field;
        let dd = d.deg().expect("division by zero polynomial");
        let inv = f.inv(&d.lc()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let mut qv = vec![f.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(&r[i], &inv);
            if f.is_zero(&c) {
                continue;
            }
            for j in 0..=dd {
                r[i - dd + j] = f.sub(&r[i - dd + j], &f.mul(&c, &d.coeffs[j]));
            }
            qv[i - dd] = c;
        }
        r.truncate(dd);
        (UniPoly::new(f, qv), UniPoly::new(f, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient; `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(&self.lc()).expect("nonzero");
        self.scale(&inv)
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        UniPoly::new(f, v)
    }

    /// self^e mod m.
    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// self(g(x)).
    pub fn compose(&self, g: &Self) -> Self {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Self::zero(f), |acc, c| {
            acc.mul(g).add(&Self::constant(f, c.clone()))
        })
    }

    /// Sylvester matrix of (a, b): deg b rows of a's coefficients, then deg a rows of b's,
    /// highest power first.
    pub fn sylvester_matrix(a: &Self, b: &Self) -> Vec<Vec<F::Elem>> {
        Self::sylvester_matrix_formal(a, b, a.deg().unwrap_or(0), b.deg().unwrap_or(0))
    }

    /// Sylvester matrix with formal degrees `m >= deg a`, `n >= deg b`.
    pub fn sylvester_matrix_formal(a: &Self, b: &Self, m: usize, n: usize) -> Vec<Vec<F::Elem>> {
        let f = &a.field;
        let size = m + n;
        let mut rows = Vec::with_capacity(size);
        for (poly, count, d) in [(a, n, m), (b, m, n)] {
            for i in 0..count {
                let mut row = vec![f.zero(); size];
                for j in 0..=d {
                    row[i + j] = poly.coeff(d - j);
                }
                rows.push(row);
            }
        }
        rows
    }

    /// Resultant, equal to the determinant of [`Self::sylvester_matrix`].
    pub fn resultant(&self, other: &Self) -> Result<F::Elem> {
        if !self.field.same_field(&other.field) {
            return Err(Error::FieldMismatch("resultant operands".into()));
        }
        let f = &self.field;
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(f.zero());
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = f.one();
        loop {
            let m = a.deg().unwrap();
            let n = b.deg().unwrap();
            if n == 0 {
                return Ok(f.mul(&acc, &f.pow(&b.lc(), m as u64)));
            }
            if m == 0 {
                return Ok(f.mul(&acc, &f.pow(&a.lc(), n as u64)));
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return Ok(f.zero());
            }
            let k = r.deg().unwrap();
            if m % 2 == 1 && n % 2 == 1 {
                acc = f.neg(&acc);
            }
            acc = f.mul(&acc, &f.pow(&b.lc(), (m - k) as u64));
            a = b;
            b = r;
        }
    }

    /// Discriminant (-1)^{n(n-1)/2} Res(a, a') / lc(a).
    pub fn discriminant(&self) -> Result<F::Elem> {
        let f = &self.field;
        let n = self.deg().ok_or(Error::ZeroPolynomial)?;
        if n < 2 {
            return Err(Error::Degree("discriminant needs degree >= 2".into()));
        }
        let d = self.derivative();
        let r = if d.is_zero() {
            f.zero()
        } else if d.deg() == Some(n - 1) {
            self.resultant(&d)?
        } else {
            // p divides n: use the Sylvester determinant with formal degree n-1
            linalg::det(f, Self::sylvester_matrix_formal(self, &d, n, n - 1))
        };
        let sign = if (n * (n - 1) / 2) % 2 == 1 {
            f.neg(&f.one())
        } else {
            f.one()
        };
        Ok(f.mul(&sign, &f.div(&r, &self.lc()).expect("nonzero lc")))
    }

    /// Squarefree decomposition: monic pairwise coprime squarefree factors with multiplicities.
    /// Handles p-th powers in positive characteristic.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Self, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        sqf_rec(&self.monic(), 1, &mut out);
        out.sort_by_key(|(_, m)| *m);
        let mut merged: Vec<(Self, usize)> = Vec::new();
        for (p, m) in out {
            match merged.iter_mut().find(|(_, mm)| *mm == m) {
                Some(e) => e.0 = e.0.mul(&p),
                None => merged.push((p, m)),
            }
        }
        Ok(merged)
    }

    /// Product of the distinct irreducible factors (monic).
    pub fn squarefree_part(&self) -> Self {
        match self.squarefree_decomposition() {
            Ok(v) => v
                .iter()
                .fold(Self::one(&self.field), |acc, (p, _)| acc.mul(p)),
            Err(_) => self.clone(),
        }
    }

    /// Roots in the field with multiplicities, sorted by element.
    pub fn roots_with_multiplicity(&self) -> Result<Vec<(F::Elem, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        for (p, m) in self.squarefree_decomposition()? {
            for r in self.field.find_roots(&p)? {
                out.push((r, m));
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn display(&self, var: &str) -> String {
        let f = &self.field;
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let cs = f.fmt_elem(c);
            parts.push(match i {
                0 => cs,
                1 => format!("({cs})*{var}"),
                _ => format!("({cs})*{var}^{i}"),
            });
        }
        parts.join(" + ")
    }
}

fn sqf_rec<F: Field>(f: &UniPoly<F>, mult: usize, out: &mut Vec<(UniPoly<F>, usize)>) {
    if f.deg().unwrap_or(0) == 0 {
        return;
    }
    let fld = f.field().clone();
    let d = f.derivative();
    if d.is_zero() {
        // f = g(x^p)
        let p = fld.characteristic() as usize;
        let root = pth_root(f, p);
        sqf_rec(&root, mult * p, out);
        return;
    }
    let mut g = f.gcd(&d);
    let mut w = f.div_exact(&g).expect("gcd divides");
    let mut i = 1;
    while w.deg().unwrap_or(0) > 0 {
        let y = w.gcd(&g);
        let z = w.div_exact(&y).expect("gcd divides");
        if z.deg().unwrap_or(0) > 0 {
            out.push((z.monic(), i * mult));
        }
        i += 1;
        g = g.div_exact(&y).expect("gcd divides");
        w = y;
    }
    if g.deg().unwrap_or(0) > 0 {
        let p = fld.characteristic() as usize;
        let root = pth_root(&g, p);
        sqf_rec(&root, mult * p, out);
    }
}

/// For f = sum c_{ip} x^{ip} over a perfect field of characteristic p,
/// the polynomial sum c_{ip}^{1/p} x^i.
fn pth_root<F: Field>(f: &UniPoly<F>, p: usize) -> UniPoly<F> {
    let fld = f.field();
    let q = fld.order().expect("p-th powers only arise over finite fields");
    let e = q / p as u64;
    let v = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|c| fld.pow(c, e))
        .collect();
    UniPoly::new(fld, v)
}
