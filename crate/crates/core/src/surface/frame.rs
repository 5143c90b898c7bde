use super::{ProjLine, QuarticSurface};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Matrix};
use crate::poly::{MultiPoly, P1};

/// Pencil coordinates (t3, t4) of a parameter λ: `Finite(λ)` is (1, λ), `Infinity` is (0, 1).
/// The plane H_t is t4·y3 = t3·y4 in frame coordinates, so λ = 0 is y4 = 0 and λ = ∞ is y3 = 0.
pub fn pencil_coords<F: Field>(f: &F, t: &P1<F::Elem>) -> (F::Elem, F::Elem) {
    match t {
        P1::Finite(l) => (f.one(), l.clone()),
        P1::Infinity => (f.zero(), f.one()),
    }
}

/// Coordinates adapted to a line: columns P, Q of the line's basis and the first two
/// standard basis vectors completing them. In frame coordinates y the line is y3 = y4 = 0.
#[derive(Clone, Debug)]
pub struct LineFrame<F: Field> {
    line: ProjLine<F::Elem>,
    m: Matrix<F::Elem>,
    m_inv: Matrix<F::Elem>,
    fy: MultiPoly<F>,
}

/// A plane of the pencil through a line, as a linear form in the original coordinates.
#[derive(Clone, Debug)]
pub struct PencilPlane<E> {
    pub t: P1<E>,
    pub form: Vec<E>,
}

impl<F: Field> LineFrame<F> {
    pub fn new(s: &QuarticSurface<F>, l: &ProjLine<F::Elem>) -> Result<Self> {
        let f = s.field();
        let mut cols = vec![l.basis()[0].clone(), l.basis()[1].clone()];
        for i in 0..4 {
            if cols.len() == 4 {
                break;
            }
            let mut e = vec![f.zero(); 4];
            e[i] = f.one();
            let mut trial = cols.clone();
            trial.push(e.clone());
            if linalg::rank(f, &trial) == trial.len() {
                cols.push(e);
            }
        }
        Self::with_columns(s, l, cols)
    }

    /// Frame with explicitly chosen columns (the first two must span `l`).
    pub fn with_columns(
        s: &QuarticSurface<F>,
        l: &ProjLine<F::Elem>,
        cols: Vec<Vec<F::Elem>>,
    ) -> Result<Self> {
        let f = s.field();
        let m: Matrix<F::Elem> = (0..4)
            .map(|i| (0..4).map(|j| cols[j][i].clone()).collect())
            .collect();
        let m_inv = linalg::inverse(f, &m)
            .ok_or_else(|| Error::Inconsistent("frame columns are dependent".into()))?;
        let fy = s.transform(&m)?.poly().clone();
        // the line is y3 = y4 = 0: no monomial free of y3, y4
        if fy
            .terms()
            .iter()
            .any(|(mono, _)| mono.exp(2) == 0 && mono.exp(3) == 0)
        {
            return Err(Error::LineNotOnSurface);
        }
        Ok(LineFrame {
            line: l.clone(),
            m,
            m_inv,
            fy,
        })
    }

    pub fn line(&self) -> &ProjLine<F::Elem> {
        &self.line
    }
    pub fn field(&self) -> &F {
        self.fy.field()
    }
    /// x = M y.
    pub fn matrix(&self) -> &Matrix<F::Elem> {
        &self.m
    }
    pub fn inverse(&self) -> &Matrix<F::Elem> {
        &self.m_inv
    }
    /// The quartic in frame coordinates.
    pub fn transformed(&self) -> &MultiPoly<F> {
        &self.fy
    }

    /// α_{ij}(y1, y2): coefficient of y3^i y4^j in the transformed quartic (4-variable ring).
    pub fn alpha(&self, i: u32, j: u32) -> MultiPoly<F> {
        let f = self.field();
        let terms = self
            .fy
            .terms()
            .iter()
            .filter(|(m, _)| m.exp(2) == i && m.exp(3) == j)
            .map(|(m, c)| (m.with_exp(2, 0).with_exp(3, 0), c.clone()))
            .collect();
        MultiPoly::from_terms(f, 4, terms)
    }

    pub fn to_original(&self, y: &[F::Elem]) -> Vec<F::Elem> {
        linalg::mat_vec(self.field(), &self.m, y)
    }

    pub fn to_frame(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        linalg::mat_vec(self.field(), &self.m_inv, x)
    }

    /// Point of P³ with plane coordinates (u, v, σ) on H_t.
    pub fn plane_point(&self, t: &P1<F::Elem>, uvs: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let (t3, t4) = pencil_coords(f, t);
        let y = vec![
            uvs[0].clone(),
            uvs[1].clone(),
            f.mul(&uvs[2], &t3),
            f.mul(&uvs[2], &t4),
        ];
        self.to_original(&y)
    }

    /// The plane H_t as a linear form in original coordinates.
    pub fn plane(&self, t: &P1<F::Elem>) -> PencilPlane<F::Elem> {
        let f = self.field();
        let (t3, t4) = pencil_coords(f, t);
        let form = (0..4)
            .map(|k| f.sub(&f.mul(&t4, &self.m_inv[2][k]), &f.mul(&t3, &self.m_inv[3][k])))
            .collect();
        PencilPlane { t: t.clone(), form }
    }

    /// Γ_t(u, v, σ) = F(u, v, σ t3, σ t4) / σ: the plane section minus the line.
    pub fn residual_cubic(&self, t: &P1<F::Elem>) -> Result<MultiPoly<F>> {
        let f = self.field();
        let (t3, t4) = pencil_coords(f, t);
        let u = MultiPoly::var(f, 3, 0);
        let v = MultiPoly::var(f, 3, 1);
        let s = MultiPoly::var(f, 3, 2);
        let restricted = self.fy.compose(&[u, v, s.scale(&t3), s.scale(&t4)]);
        restricted.div_exact(&s).ok_or(Error::LineNotOnSurface)
    }

    /// The whole pencil Γ(u, v, σ; t3, t4) in 5 variables.
    pub fn pencil_cubic(&self) -> MultiPoly<F> {
        let f = self.field();
        let v = |i| MultiPoly::var(f, 5, i);
        let restricted = self.fy.with_nvars(5).compose(&[
            v(0),
            v(1),
            v(2).mul(&v(3)),
            v(2).mul(&v(4)),
            v(4),
        ]);
        restricted.div_exact(&v(2)).expect("line lies on the surface")
    }
}
