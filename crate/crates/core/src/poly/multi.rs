use std::collections::hash_map::Entry;
use std::fmt;

use rustc_hash::FxHashMap;

use super::UniPoly;
use crate::error::{Error, Result};
use crate::field::Field;

/// Maximum number of variables of a [`MultiPoly`].
pub const MAX_VARS: usize = 8;
const BITS: usize = 16;
const MASK: u128 = 0xffff;

/// Exponent vector packed into a `u128`, variable 0 in the most significant slot,
/// so integer order is lexicographic order with x0 > x1 > ...
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(u128);

impl Monomial {
    #[inline]
    fn shift(i: usize) -> usize {
        (MAX_VARS - 1 - i) * BITS
    }

    pub fn one() -> Self {
        Monomial(0)
    }

    pub fn var(i: usize, e: u32) -> Self {
        Monomial((e as u128) << Self::shift(i))
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        exps.iter()
            .enumerate()
            .fold(Monomial(0), |m, (i, &e)| Monomial(m.0 | ((e as u128) << Self::shift(i))))
    }

    #[inline]
    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> Self::shift(i)) & MASK) as u32
    }

    pub fn exps(self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.exp(i)).collect()
    }

    pub fn with_exp(self, i: usize, e: u32) -> Self {
        let s = Self::shift(i);
        Monomial((self.0 & !(MASK << s)) | ((e as u128) << s))
    }

    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, o: Self) -> Self {
        Monomial(self.0 + o.0)
    }

    pub fn divides(self, o: Self) -> bool {
        (0..MAX_VARS).all(|i| self.exp(i) <= o.exp(i))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(self, o: Self) -> Self {
        Monomial(self.0 - o.0)
    }

    pub fn degree(self) -> u32 {
        (0..MAX_VARS).map(|i| self.exp(i)).sum()
    }
}

/// Sparse multivariate polynomial; terms sorted by decreasing monomial, no zero coefficients.
#[derive(Clone)]
pub struct MultiPoly<F: Field> {
    field: F,
    nvars: usize,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for MultiPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}
impl<F: Field> Eq for MultiPoly<F> {}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.display(&refs))
    }
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(field: &F, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        MultiPoly {
            field: field.clone(),
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        let mut p = Self::zero(field, nvars);
        if !field.is_zero(&c) {
            p.terms.push((Monomial::one(), c));
        }
        p
    }

    pub fn one(field: &F, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: &F, nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        Self::from_terms(field, nvars, vec![(Monomial::var(i, 1), field.one())])
    }

    pub fn monomial(field: &F, nvars: usize, exps: &[u32], c: F::Elem) -> Self {
        Self::from_terms(field, nvars, vec![(Monomial::from_exps(exps), c)])
    }

    /// Builds from arbitrary terms (merges duplicates, drops zeros, sorts).
    pub fn from_terms(field: &F, nvars: usize, terms: Vec<(Monomial, F::Elem)>) -> Self {
        let mut map: FxHashMap<Monomial, F::Elem> = FxHashMap::default();
        for (m, c) in terms {
            match map.entry(m) {
                Entry::Occupied(mut e) => {
                    let s = field.add(e.get(), &c);
                    *e.get_mut() = s;
                }
                Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        Self::from_map(field, nvars, map)
    }

    fn from_map(field: &F, nvars: usize, map: FxHashMap<Monomial, F::Elem>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        MultiPoly {
            field: field.clone(),
            nvars,
            terms,
        }
    }

    pub fn from_uni(p: &UniPoly<F>, nvars: usize, var: usize) -> Self {
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| (Monomial::var(var, i as u32), c.clone()))
            .collect();
        Self::from_terms(p.field(), nvars, terms)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }
    pub fn nterms(&self) -> usize {
        self.terms.len()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Monomial::one())
    }

    pub fn constant_value(&self) -> Option<F::Elem> {
        if self.is_zero() {
            Some(self.field.zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, m: Monomial) -> F::Elem {
        match self.terms.binary_search_by(|t| m.cmp(&t.0)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    /// Same polynomial viewed with a different number of variables (must not drop used ones).
    pub fn with_nvars(&self, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        debug_assert!(self
            .terms
            .iter()
            .all(|(m, _)| (nvars..MAX_VARS).all(|i| m.exp(i) == 0)));
        MultiPoly {
            field: self.field.clone(),
            nvars,
            terms: self.terms.clone(),
        }
    }

    fn check(&self, o: &Self) {
        debug_assert!(self.field.same_field(&o.field), "field mismatch");
        debug_assert_eq!(self.nvars, o.nvars, "variable count mismatch");
    }

    fn merge(&self, o: &Self, negate: bool) -> Self {
        self.check(o);
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 > b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 > a[i].0 {
                let c = if negate { f.neg(&b[j].1) } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate {
                    f.sub(&a[i].1, &b[j].1)
                } else {
                    f.add(&a[i].1, &b[j].1)
                };
                if !f.is_zero(&c) {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        MultiPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.merge(o, true)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        MultiPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(f, self.nvars);
        }
        MultiPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (*m, f.mul(a, c))).collect(),
        }
    }

    /// Multiply by the single term c·m.
    pub fn mul_term(&self, m: Monomial, c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(f, self.nvars);
        }
        MultiPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(a, x)| (a.mul(m), f.mul(x, c)))
                .collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let f = &self.field;
        if self.is_zero() || o.is_zero() {
            return Self::zero(f, self.nvars);
        }
        if o.terms.len() == 1 {
            return self.mul_term(o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_term(self.terms[0].0, &self.terms[0].1);
        }
        let mut map: FxHashMap<Monomial, F::Elem> =
            FxHashMap::with_capacity_and_hasher(self.terms.len() * 2, Default::default());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let p = f.mul(ca, cb);
                match map.entry(ma.mul(*mb)) {
                    Entry::Occupied(mut e) => {
                        let s = f.add(e.get(), &p);
                        *e.get_mut() = s;
                    }
                    Entry::Vacant(e) => {
                        e.insert(p);
                    }
                }
            }
        }
        Self::from_map(f, self.nvars, map)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.field, self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Degree in one variable (`None` for the zero polynomial).
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exp(var)).max()
    }

    /// Degree in a set of variables.
    pub fn degree_in_vars(&self, vars: &[usize]) -> Option<u32> {
        self.terms
            .iter()
            .map(|(m, _)| vars.iter().map(|&v| m.exp(v)).sum())
            .max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let vars: Vec<usize> = (0..self.nvars).collect();
        self.is_homogeneous_in(&vars)
    }

    pub fn is_homogeneous_in(&self, vars: &[usize]) -> bool {
        let mut it = self
            .terms
            .iter()
            .map(|(m, _)| vars.iter().map(|&v| m.exp(v)).sum::<u32>());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// True if the variable occurs.
    pub fn has_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(var) > 0)
    }

    pub fn eval(&self, point: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let maxdeg: Vec<u32> = (0..self.nvars)
            .map(|i| self.degree_in(i).unwrap_or(0))
            .collect();
        let powers: Vec<Vec<F::Elem>> = (0..self.nvars)
            .map(|i| {
                let mut v = vec![f.one()];
                for k in 1..=maxdeg[i] as usize {
                    let next = f.mul(&v[k - 1], &point[i]);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, pw) in powers.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    t = f.mul(&t, &pw[e]);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Substitute a constant for one variable.
    pub fn eval_var(&self, var: usize, val: &F::Elem) -> Self {
        let f = &self.field;
        let maxd = self.degree_in(var).unwrap_or(0) as usize;
        let mut pw = vec![f.one()];
        for k in 1..=maxd {
            let next = f.mul(&pw[k - 1], val);
            pw.push(next);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.with_exp(var, 0), f.mul(c, &pw[m.exp(var) as usize])))
            .collect();
        Self::from_terms(f, self.nvars, terms)
    }

    /// Coefficients with respect to `var`, index = exponent; `var` removed from them.
    pub fn coefficients_in(&self, var: usize) -> Vec<Self> {
        let d = match self.degree_in(var) {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let mut buckets: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(var) as usize].push((m.with_exp(var, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|terms| MultiPoly {
                field: self.field.clone(),
                nvars: self.nvars,
                terms,
            })
            .collect()
    }

    pub fn from_coefficients_in(field: &F, nvars: usize, var: usize, coeffs: &[Self]) -> Self {
        let mut terms = Vec::new();
        for (e, c) in coeffs.iter().enumerate() {
            for (m, x) in &c.terms {
                terms.push((m.with_exp(var, m.exp(var) + e as u32), x.clone()));
            }
        }
        Self::from_terms(field, nvars, terms)
    }

    /// Univariate view if only `var` occurs.
    pub fn to_uni(&self, var: usize) -> Option<UniPoly<F>> {
        let f = &self.field;
        let d = self.degree_in(var).unwrap_or(0) as usize;
        let mut v = vec![f.zero(); d + 1];
        for (m, c) in &self.terms {
            if m.with_exp(var, 0) != Monomial::one() {
                return None;
            }
            v[m.exp(var) as usize] = c.clone();
        }
        Some(UniPoly::new(f, v))
    }

    pub fn derivative(&self, var: usize) -> Self {
        let f = &self.field;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(var) > 0)
            .map(|(m, c)| {
                let e = m.exp(var);
                (m.with_exp(var, e - 1), f.mul(c, &f.from_i64(e as i64)))
            })
            .collect();
        Self::from_terms(f, self.nvars, terms)
    }

    /// Substitute `val` for `var`.
    pub fn substitute(&self, var: usize, val: &Self) -> Self {
        let coeffs = self.coefficients_in(var);
        let mut acc = Self::zero(&self.field, self.nvars);
        for c in coeffs.iter().rev() {
            acc = acc.mul(val).add(c);
        }
        acc
    }

    /// Simultaneous substitution x_i ↦ images[i]; the result lives in the images' ring.
    pub fn compose(&self, images: &[Self]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let f = &self.field;
        let target = images.first().map_or(self.nvars, |p| p.nvars);
        let mut cache: Vec<Vec<Self>> = images
            .iter()
            .map(|p| vec![Self::one(f, target), p.clone()])
            .collect();
        let mut map: FxHashMap<Monomial, F::Elem> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut t = Self::constant(f, target, c.clone());
            for (i, pw) in cache.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                while pw.len() <= e {
                    let next = pw[pw.len() - 1].mul(&images[i]);
                    pw.push(next);
                }
                if e > 0 {
                    t = t.mul(&pw[e]);
                }
            }
            for (mm, cc) in t.terms {
                match map.entry(mm) {
                    Entry::Occupied(mut e) => {
                        let s = f.add(e.get(), &cc);
                        *e.get_mut() = s;
                    }
                    Entry::Vacant(e) => {
                        e.insert(cc);
                    }
                }
            }
        }
        Self::from_map(f, target, map)
    }

    /// Rename/reindex variables: variable i goes to `map[i]` in a ring with `nvars` variables.
    pub fn remap_vars(&self, map: &[usize], nvars: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut nm = Monomial::one();
                for (i, &t) in map.iter().enumerate().take(self.nvars) {
                    let e = m.exp(i);
                    if e > 0 {
                        nm = nm.with_exp(t, nm.exp(t) + e);
                    }
                }
                (nm, c.clone())
            })
            .collect();
        Self::from_terms(&self.field, nvars, terms)
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        self.check(d);
        let f = &self.field;
        let (dm, dc) = d.terms.first().expect("division by zero polynomial").clone();
        let dinv = f.inv(&dc).expect("nonzero");
        if d.terms.len() == 1 {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !dm.divides(*m) {
                    return None;
                }
                terms.push((m.div(dm), f.mul(c, &dinv)));
            }
            return Some(MultiPoly {
                field: f.clone(),
                nvars: self.nvars,
                terms,
            });
        }
        let mut q = Vec::new();
        let mut r = self.clone();
        while let Some((rm, rc)) = r.terms.first().cloned() {
            if !dm.divides(rm) {
                return None;
            }
            let tm = rm.div(dm);
            let tc = f.mul(&rc, &dinv);
            r = r.sub(&d.mul_term(tm, &tc));
            q.push((tm, tc));
        }
        Some(MultiPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: q,
        })
    }

    /// Scale so the leading coefficient is the field's canonical representative.
    pub fn normalized(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field.inv(c).expect("nonzero")),
        }
    }

    /// Canonical scalar multiple: monic over finite fields, primitive integral over ℚ.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let cs: Vec<&F::Elem> = self.terms.iter().map(|(_, c)| c).collect();
        self.scale(&self.field.normalizer(&cs))
    }

    /// Map coefficients into another field.
    pub fn map_coeffs<G: Field>(
        &self,
        g: &G,
        mut map: impl FnMut(&F::Elem) -> Result<G::Elem>,
    ) -> Result<MultiPoly<G>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((*m, map(c)?));
        }
        Ok(MultiPoly::from_terms(g, self.nvars, terms))
    }

    pub fn display(&self, names: &[&str]) -> String {
        let f = &self.field;
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let cs = f.fmt_elem(c);
            let (neg, cs) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, cs),
            };
            let cs = if cs.contains(['+', '-']) {
                format!("({cs})")
            } else {
                cs
            };
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let mut factors = Vec::new();
            for (i, name) in names.iter().enumerate().take(self.nvars) {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                out.push_str(&cs);
            } else if cs == "1" {
                out.push_str(&factors.join("*"));
            } else {
                out.push_str(&cs);
                out.push('*');
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    /// Resultant with respect to `var` by the subresultant pseudo-remainder sequence;
    /// equals the Sylvester determinant in the row order of [`UniPoly::sylvester_matrix`].
    pub fn resultant_in(&self, other: &Self, var: usize) -> Result<Self> {
        if !self.field.same_field(&other.field) {
            return Err(Error::FieldMismatch("resultant operands".into()));
        }
        self.check(other);
        if !self.has_var(var) && !other.has_var(var) {
            return Err(Error::MissingVariable(format!("x{}", var + 1)));
        }
        let f = &self.field;
        let n = self.nvars;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(f, n));
        }
        let mut a = self.coefficients_in(var);
        let mut b = other.coefficients_in(var);
        let mut sign = false;
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
            if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
                sign = !sign;
            }
        }
        let one = Self::one(f, n);
        if b.len() == 1 {
            let r = b[0].pow((a.len() - 1) as u32);
            return Ok(if sign { r.neg() } else { r });
        }
        let mut g = one.clone();
        let mut h = one.clone();
        loop {
            let (da, db) = (a.len() - 1, b.len() - 1);
            let delta = da - db;
            if da % 2 == 1 && db % 2 == 1 {
                sign = !sign;
            }
            let r = prem(&a, &b);
            if r.is_empty() {
                return Ok(Self::zero(f, n));
            }
            let divisor = g.mul(&h.pow(delta as u32));
            let r: Vec<Self> = r
                .iter()
                .map(|c| c.div_exact(&divisor).expect("subresultant division is exact"))
                .collect();
            a = std::mem::replace(&mut b, r);
            g = a.last().unwrap().clone();
            h = match delta {
                0 => h,
                1 => g.clone(),
                _ => g
                    .pow(delta as u32)
                    .div_exact(&h.pow(delta as u32 - 1))
                    .expect("exact"),
            };
            if b.len() == 1 {
                break;
            }
        }
        let da = (a.len() - 1) as u32;
        let lb = b.last().unwrap();
        let res = if da == 1 {
            lb.clone()
        } else {
            lb.pow(da).div_exact(&h.pow(da - 1)).expect("exact")
        };
        Ok(if sign { res.neg() } else { res })
    }

    /// Discriminant in `var`: (-1)^{n(n-1)/2} Res(a, ∂a) / lc(a), with formal degree n - 1
    /// for the derivative.
    pub fn discriminant_in(&self, var: usize) -> Result<Self> {
        let n = self.degree_in(var).ok_or(Error::ZeroPolynomial)?;
        if n < 2 {
            return Err(Error::Degree("discriminant needs degree >= 2".into()));
        }
        let coeffs = self.coefficients_in(var);
        let d = self.derivative(var);
        let mat = sylvester_formal(&coeffs, &d.coefficients_in(var), n as usize, n as usize - 1, &self.field, self.nvars);
        let r = det_poly(&mat);
        let q = r
            .div_exact(coeffs.last().unwrap())
            .ok_or_else(|| Error::Inconsistent("leading coefficient does not divide".into()))?;
        Ok(if (n * (n - 1) / 2) % 2 == 1 { q.neg() } else { q })
    }
}

fn trim<F: Field>(v: &mut Vec<MultiPoly<F>>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Pseudo-remainder lc(b)^{deg a - deg b + 1} a mod b on coefficient vectors.
fn prem<F: Field>(a: &[MultiPoly<F>], b: &[MultiPoly<F>]) -> Vec<MultiPoly<F>> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    trim(&mut r);
    let mut e = (a.len() - 1 - db + 1) as u32;
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].sub(&bc.mul(&lr));
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let s = lb.pow(e);
        for c in r.iter_mut() {
            *c = c.mul(&s);
        }
    }
    trim(&mut r);
    r
}

/// Sylvester matrix with entries in a polynomial ring and formal degrees.
pub fn sylvester_formal<F: Field>(
    a: &[MultiPoly<F>],
    b: &[MultiPoly<F>],
    m: usize,
    n: usize,
    field: &F,
    nvars: usize,
) -> Vec<Vec<MultiPoly<F>>> {
    let zero = MultiPoly::zero(field, nvars);
    let get = |v: &[MultiPoly<F>], i: usize| v.get(i).cloned().unwrap_or_else(|| zero.clone());
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (poly, count, d) in [(a, n, m), (b, m, n)] {
        for i in 0..count {
            let mut row = vec![zero.clone(); size];
            for j in 0..=d {
                row[i + j] = get(poly, d - j);
            }
            rows.push(row);
        }
    }
    rows
}

/// Determinant of a square matrix of polynomials by Laplace expansion with memoized minors.
pub fn det_poly<F: Field>(m: &[Vec<MultiPoly<F>>]) -> MultiPoly<F> {
    let n = m.len();
    assert!(n <= 16, "matrix too large for minor expansion");
    let mut memo: FxHashMap<u32, MultiPoly<F>> = FxHashMap::default();
    let field = m[0][0].field().clone();
    let nv = m[0][0].nvars();
    fn rec<F: Field>(
        m: &[Vec<MultiPoly<F>>],
        row: usize,
        cols: u32,
        memo: &mut FxHashMap<u32, MultiPoly<F>>,
        field: &F,
        nv: usize,
    ) -> MultiPoly<F> {
        let n = m.len();
        if row == n {
            return MultiPoly::one(field, nv);
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = MultiPoly::zero(field, nv);
        let mut k = 0;
        for c in 0..n {
            if cols & (1 << c) != 0 {
                continue;
            }
            if !m[row][c].is_zero() {
                let sub = rec(m, row + 1, cols | (1 << c), memo, field, nv);
                let t = m[row][c].mul(&sub);
                acc = if k % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            k += 1;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    rec(m, 0, 0, &mut memo, &field, nv)
}
