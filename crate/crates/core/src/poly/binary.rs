use serde::{Deserialize, Serialize};

use super::{MultiPoly, UniPoly};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;

/// A point of P¹: `Finite(a)` is (a : 1), `Infinity` is (1 : 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum P1<E> {
    Finite(E),
    Infinity,
}

impl<E: Clone> P1<E> {
    /// Homogeneous coordinates (x, y).
    pub fn coords<F: Field<Elem = E>>(&self, f: &F) -> (E, E) {
        match self {
            P1::Finite(a) => (a.clone(), f.one()),
            P1::Infinity => (f.one(), f.zero()),
        }
    }

    pub fn from_coords<F: Field<Elem = E>>(f: &F, x: &E, y: &E) -> Option<Self> {
        if f.is_zero(y) {
            if f.is_zero(x) {
                None
            } else {
                Some(P1::Infinity)
            }
        } else {
            Some(P1::Finite(f.div(x, y).expect("nonzero")))
        }
    }
}

/// Binary form of degree d; `coeffs[i]` is the coefficient of x^i y^(d-i).
#[derive(Clone, Debug)]
pub struct BinaryForm<F: Field> {
    field: F,
    degree: usize,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for BinaryForm<F> {
    fn eq(&self, o: &Self) -> bool {
        self.degree == o.degree && self.coeffs == o.coeffs
    }
}

impl<F: Field> BinaryForm<F> {
    pub fn new(field: &F, degree: usize, mut coeffs: Vec<F::Elem>) -> Self {
        coeffs.resize(degree + 1, field.zero());
        BinaryForm {
            field: field.clone(),
            degree,
            coeffs,
        }
    }

    /// From a polynomial homogeneous in `(x, y)` of the given degree, with no other variables.
    pub fn from_multi(p: &MultiPoly<F>, x: usize, y: usize, degree: usize) -> Result<Self> {
        let f = p.field();
        let mut coeffs = vec![f.zero(); degree + 1];
        for (m, c) in p.terms() {
            let (ex, ey) = (m.exp(x) as usize, m.exp(y) as usize);
            if ex + ey != degree || m.degree() as usize != degree {
                return Err(Error::NotHomogeneous);
            }
            coeffs[ex] = c.clone();
        }
        Ok(BinaryForm::new(f, degree, coeffs))
    }

    pub fn to_multi(&self, nvars: usize, x: usize, y: usize) -> MultiPoly<F> {
        let mut p = MultiPoly::zero(&self.field, nvars);
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut e = vec![0u32; nvars];
            e[x] += i as u32;
            e[y] += (self.degree - i) as u32;
            p = p.add(&MultiPoly::monomial(&self.field, nvars, &e, c.clone()));
        }
        p
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    pub fn eval(&self, x: &F::Elem, y: &F::Elem) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let t = f.mul(c, &f.mul(&f.pow(x, i as u64), &f.pow(y, (self.degree - i) as u64)));
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Dehomogenization y = 1.
    pub fn dehomogenize(&self) -> UniPoly<F> {
        UniPoly::new(&self.field, self.coeffs.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let f = &self.field;
        let p = self.dehomogenize().mul(&o.dehomogenize());
        BinaryForm::new(f, self.degree + o.degree, p.coeffs().to_vec())
    }

    /// Multiplicity of (1:0), i.e. the number of trailing zero coefficients from the top.
    pub fn mult_at_infinity(&self) -> usize {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .take_while(|c| f.is_zero(c))
            .count()
    }

    /// Roots on P¹ over the field with multiplicities; requires a nonzero form.
    pub fn roots(&self) -> Result<Vec<(P1<F::Elem>, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out: Vec<(P1<F::Elem>, usize)> = self
            .dehomogenize()
            .roots_with_multiplicity()?
            .into_iter()
            .map(|(r, m)| (P1::Finite(r), m))
            .collect();
        let mi = self.mult_at_infinity();
        if mi > 0 {
            out.push((P1::Infinity, mi));
        }
        Ok(out)
    }

    /// Multiplicity of a given point as a root.
    pub fn multiplicity_at(&self, t: &P1<F::Elem>) -> usize {
        match t {
            P1::Infinity => self.mult_at_infinity(),
            P1::Finite(a) => {
                let f = &self.field;
                let mut p = self.dehomogenize();
                let lin = UniPoly::new(f, vec![f.neg(a), f.one()]);
                let mut m = 0;
                while !p.is_zero() {
                    match p.div_exact(&lin) {
                        Some(q) => {
                            p = q;
                            m += 1;
                        }
                        None => break,
                    }
                }
                m
            }
        }
    }

    /// Resultant of binary forms (Sylvester matrix with the formal degrees).
    pub fn resultant(&self, o: &Self) -> F::Elem {
        let a = self.dehomogenize();
        let b = o.dehomogenize();
        let mat = UniPoly::sylvester_matrix_formal(&a, &b, self.degree, o.degree);
        if mat.is_empty() {
            return self.field.one();
        }
        linalg::det(&self.field, mat)
    }

    /// Discriminant with the formal-degree convention.
    pub fn discriminant(&self) -> Result<F::Elem> {
        let f = &self.field;
        let n = self.degree;
        if n < 2 {
            return Err(Error::Degree("discriminant needs degree >= 2".into()));
        }
        let lc = &self.coeffs[n];
        if f.is_zero(lc) {
            // use the other chart: swap roles of x and y
            let mut rev = self.coeffs.clone();
            rev.reverse();
            let sw = BinaryForm::new(f, n, rev);
            if f.is_zero(&sw.coeffs[n]) {
                return Ok(f.zero());
            }
            return sw.discriminant();
        }
        let a = self.dehomogenize();
        let d = a.derivative();
        let mat = UniPoly::sylvester_matrix_formal(&a, &d, n, n - 1);
        let r = linalg::det(f, mat);
        let sign = if (n * (n - 1) / 2) % 2 == 1 {
            f.neg(&f.one())
        } else {
            f.one()
        };
        Ok(f.mul(&sign, &f.div(&r, lc).expect("nonzero")))
    }

    /// Squarefree as a form: no repeated root on P¹.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.mult_at_infinity() >= 2 {
            return false;
        }
        let p = self.dehomogenize();
        p.deg().unwrap_or(0) == 0 || p.gcd(&p.derivative()).deg() == Some(0)
    }
}
