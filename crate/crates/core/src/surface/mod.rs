//! Quartic surfaces, points and lines of P³, and the pencil of planes through a line.

mod frame;
pub mod io;
mod smooth;

pub use frame::{pencil_coords, LineFrame, PencilPlane};
pub use smooth::{scan_common_zeros, Smoothness};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FiniteField, Rationals};
use crate::linalg;
use crate::poly::{MultiPoly, P1};

/// A point of P³ with first nonzero coordinate 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint<E>(pub Vec<E>);

impl<E: Clone> ProjPoint<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, coords: &[E]) -> Option<Self> {
        linalg::normalize(f, coords).map(ProjPoint)
    }

    pub fn coords(&self) -> &[E] {
        &self.0
    }
}

/// Pivot pairs of the six Schubert cells of G(2,4), in scan order.
pub const CHARTS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Plücker index pairs in the order p12, p13, p14, p23, p24, p34.
pub const PLUECKER_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// A line of P³: reduced row echelon basis, normalized Plücker vector and the Schubert
/// cell (chart) it belongs to.
#[derive(Clone, Debug)]
pub struct ProjLine<E> {
    basis: [Vec<E>; 2],
    pluecker: Vec<E>,
    chart: usize,
}

impl<E: PartialEq> PartialEq for ProjLine<E> {
    fn eq(&self, o: &Self) -> bool {
        self.pluecker == o.pluecker
    }
}
impl<E: Eq> Eq for ProjLine<E> {}

impl<E: Ord> PartialOrd for ProjLine<E> {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl<E: Ord> Ord for ProjLine<E> {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.pluecker.cmp(&o.pluecker)
    }
}

impl<E: Clone + PartialEq> ProjLine<E> {
    /// The line through two points; `None` if they are dependent.
    pub fn from_points<F: Field<Elem = E>>(f: &F, p: &[E], q: &[E]) -> Option<Self> {
        let mut m = vec![p.to_vec(), q.to_vec()];
        let piv = linalg::rref(f, &mut m);
        if piv.len() != 2 {
            return None;
        }
        let chart = CHARTS.iter().position(|&c| c == (piv[0], piv[1])).unwrap();
        let raw: Vec<E> = PLUECKER_PAIRS
            .iter()
            .map(|&(i, j)| f.sub(&f.mul(&m[0][i], &m[1][j]), &f.mul(&m[0][j], &m[1][i])))
            .collect();
        let pluecker = linalg::normalize(f, &raw).expect("independent rows");
        let rel = f.add(
            &f.sub(
                &f.mul(&pluecker[0], &pluecker[5]),
                &f.mul(&pluecker[1], &pluecker[4]),
            ),
            &f.mul(&pluecker[2], &pluecker[3]),
        );
        assert!(f.is_zero(&rel), "Pluecker relation violated");
        let [a, b]: [Vec<E>; 2] = m.try_into().ok().unwrap();
        Some(ProjLine {
            basis: [a, b],
            pluecker,
            chart,
        })
    }

    /// The line {x : l1(x) = l2(x) = 0} for two independent linear forms.
    pub fn from_equations<F: Field<Elem = E>>(f: &F, l1: &[E], l2: &[E]) -> Option<Self> {
        let ker = linalg::kernel(f, &vec![l1.to_vec(), l2.to_vec()], 4);
        if ker.len() != 2 {
            return None;
        }
        Self::from_points(f, &ker[0], &ker[1])
    }

    pub fn basis(&self) -> &[Vec<E>; 2] {
        &self.basis
    }
    pub fn pluecker(&self) -> &[E] {
        &self.pluecker
    }
    pub fn chart(&self) -> usize {
        self.chart
    }

    /// The point a·P + b·Q.
    pub fn point<F: Field<Elem = E>>(&self, f: &F, a: &E, b: &E) -> Vec<E> {
        (0..4)
            .map(|i| f.add(&f.mul(a, &self.basis[0][i]), &f.mul(b, &self.basis[1][i])))
            .collect()
    }

    pub fn contains_point<F: Field<Elem = E>>(&self, f: &F, x: &[E]) -> bool {
        let m = vec![self.basis[0].clone(), self.basis[1].clone(), x.to_vec()];
        linalg::rank(f, &m) == 2
    }

    /// Image under a linear map x ↦ A x.
    pub fn transform<F: Field<Elem = E>>(&self, f: &F, a: &linalg::Matrix<E>) -> Option<Self> {
        let p = linalg::mat_vec(f, a, &self.basis[0]);
        let q = linalg::mat_vec(f, a, &self.basis[1]);
        Self::from_points(f, &p, &q)
    }

    pub fn fmt_with<F: Field<Elem = E>>(&self, f: &F) -> String {
        let pt = |v: &Vec<E>| {
            let s: Vec<String> = v.iter().map(|c| f.fmt_elem(c)).collect();
            format!("({})", s.join(":"))
        };
        format!("<{}, {}>", pt(&self.basis[0]), pt(&self.basis[1]))
    }
}

/// Relative position of two lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Meet<E> {
    Disjoint,
    Point(ProjPoint<E>),
    Equal,
}

pub fn lines_meet<F: Field>(f: &F, a: &ProjLine<F::Elem>, b: &ProjLine<F::Elem>) -> Meet<F::Elem> {
    let m = vec![
        a.basis[0].clone(),
        a.basis[1].clone(),
        b.basis[0].clone(),
        b.basis[1].clone(),
    ];
    match linalg::rank(f, &m) {
        4 => Meet::Disjoint,
        2 => Meet::Equal,
        _ => {
            // columns P1 Q1 P2 Q2: kernel (a, b, c, d) with aP1 + bQ1 + cP2 + dQ2 = 0
            let cols: linalg::Matrix<F::Elem> = (0..4)
                .map(|i| (0..4).map(|j| m[j][i].clone()).collect())
                .collect();
            let ker = linalg::kernel(f, &cols, 4);
            let k = &ker[0];
            let pt = a.point(f, &k[0], &k[1]);
            Meet::Point(ProjPoint::new(f, &pt).expect("nonzero intersection"))
        }
    }
}

/// A quartic surface f = 0 in P³ together with its smoothness status.
#[derive(Clone, Debug)]
pub struct QuarticSurface<F: Field> {
    f: MultiPoly<F>,
    smoothness: Smoothness,
}

impl<F: Field> QuarticSurface<F> {
    pub fn new(f: MultiPoly<F>) -> Result<Self> {
        if f.nvars() != 4 {
            return Err(Error::Degree("a quartic surface needs 4 variables".into()));
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !f.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        if f.total_degree() != Some(4) {
            return Err(Error::Degree(format!(
                "expected degree 4, found {}",
                f.total_degree().unwrap_or(0)
            )));
        }
        Ok(QuarticSurface {
            f,
            smoothness: Smoothness::Unverified,
        })
    }

    pub fn poly(&self) -> &MultiPoly<F> {
        &self.f
    }
    pub fn field(&self) -> &F {
        self.f.field()
    }
    pub fn smoothness(&self) -> &Smoothness {
        &self.smoothness
    }
    pub fn set_smoothness(&mut self, s: Smoothness) {
        self.smoothness = s;
    }

    pub fn eval(&self, x: &[F::Elem]) -> F::Elem {
        self.f.eval(x)
    }

    pub fn contains_point(&self, x: &[F::Elem]) -> bool {
        self.field().is_zero(&self.eval(x))
    }

    pub fn gradient(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        (0..4).map(|i| self.f.derivative(i).eval(x)).collect()
    }

    /// The binary quartic f(s·P + t·Q) in variables (s, t).
    pub fn restrict_to_line(&self, l: &ProjLine<F::Elem>) -> MultiPoly<F> {
        let f = self.field();
        let s = MultiPoly::var(f, 2, 0);
        let t = MultiPoly::var(f, 2, 1);
        let images: Vec<MultiPoly<F>> = (0..4)
            .map(|i| {
                s.scale(&l.basis[0][i])
                    .add(&t.scale(&l.basis[1][i]))
            })
            .collect();
        self.f.compose(&images)
    }

    /// True iff all five coefficients of f(s·P + t·Q) vanish.
    pub fn contains_line(&self, l: &ProjLine<F::Elem>) -> bool {
        self.restrict_to_line(l).is_zero()
    }

    /// Substitute x ↦ A y.
    pub fn transform(&self, a: &linalg::Matrix<F::Elem>) -> Result<Self> {
        let f = self.field();
        let images: Vec<MultiPoly<F>> = (0..4)
            .map(|i| {
                (0..4).fold(MultiPoly::zero(f, 4), |acc, j| {
                    acc.add(&MultiPoly::var(f, 4, j).scale(&a[i][j]))
                })
            })
            .collect();
        QuarticSurface::new(self.f.compose(&images))
    }

    /// Residual cubic of the plane H_t through `l`; see [`LineFrame::residual_cubic`].
    pub fn residual_cubic(&self, l: &ProjLine<F::Elem>, t: &P1<F::Elem>) -> Result<MultiPoly<F>> {
        LineFrame::new(self, l)?.residual_cubic(t)
    }
}

impl QuarticSurface<FiniteField> {
    /// Reduction of a rational quartic into a finite field.
    pub fn from_rational(f: &MultiPoly<Rationals>, field: &FiniteField) -> Result<Self> {
        let g = f.map_coeffs(field, |c| field.from_rational(c))?;
        if g.is_zero() && !f.is_zero() {
            return Err(Error::InvalidField(format!(
                "the quartic vanishes identically over {}",
                field.spec()
            )));
        }
        QuarticSurface::new(g)
    }

    /// Base change along the embedding of this field into a larger one.
    pub fn base_change(&self, big: &FiniteField) -> Result<Self> {
        let e = self.field().embed_into(big)?;
        let g = self.f.map_coeffs(big, |c| Ok(e.apply(*c)))?;
        let mut s = QuarticSurface::new(g)?;
        s.smoothness = self.smoothness.clone();
        Ok(s)
    }

    /// Scan P³ over F_{p^{km}} for singular points, m running through the divisor chain
    /// 1, 2, 4, ... up to `tower`.
    pub fn smoothness_check(&self, tower: u32) -> Result<Smoothness> {
        smooth::check(self, tower)
    }
}

/// Serializable form of a line.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LineRecord {
    pub pluecker: Vec<String>,
    pub basis: [Vec<String>; 2],
}

impl LineRecord {
    pub fn new<F: Field>(f: &F, l: &ProjLine<F::Elem>) -> Self {
        let s = |v: &[F::Elem]| v.iter().map(|c| f.fmt_elem(c)).collect::<Vec<_>>();
        LineRecord {
            pluecker: s(l.pluecker()),
            basis: [s(&l.basis()[0]), s(&l.basis()[1])],
        }
    }
}

#[cfg(test)]
mod tests;
