//! Line kind via the resultant r(λ) of g_λ and the restricted Hessian h_λ.

use serde::Serialize;

use crate::error::Result;
use crate::field::Field;
use crate::poly::{det3, det_poly, sylvester_formal, BinaryForm, MultiPoly};
use crate::surface::LineFrame;

// Ring for this module: y1, y2, t3, t4.
const Y1: usize = 0;
const Y2: usize = 1;
const T3: usize = 2;
const T4: usize = 3;

/// g(y; t) = t3·α10 + t4·α01 and the bordered Hessian h(y; t), both cubic in y.
///
/// With Γ_t = g + σ·P2 + σ²·P3 + ..., where P2 = Σ_{i+j=2} t3^i t4^j α_ij and
/// P3 = Σ_{i+j=3} t3^i t4^j α_ij, h is the Hessian determinant of Γ_t restricted to σ = 0:
/// det [[g11, g12, ∂1P2], [g12, g22, ∂2P2], [∂1P2, ∂2P2, 2·P3]].
pub fn g_and_h<F: Field>(frame: &LineFrame<F>) -> (MultiPoly<F>, MultiPoly<F>) {
    let f = frame.field();
    let t3 = MultiPoly::var(f, 4, T3);
    let t4 = MultiPoly::var(f, 4, T4);
    let layer = |d: u32| {
        (0..=d).fold(MultiPoly::zero(f, 4), |acc, j| {
            acc.add(&frame.alpha(d - j, j).mul(&t3.pow(d - j)).mul(&t4.pow(j)))
        })
    };
    let g = layer(1);
    let p2 = layer(2);
    let p3 = layer(3);
    let d = |p: &MultiPoly<F>, v: usize| p.derivative(v);
    let two = f.from_i64(2);
    let m = vec![
        vec![d(&d(&g, Y1), Y1), d(&d(&g, Y1), Y2), d(&p2, Y1)],
        vec![d(&d(&g, Y1), Y2), d(&d(&g, Y2), Y2), d(&p2, Y2)],
        vec![d(&p2, Y1), d(&p2, Y2), p3.scale(&two)],
    ];
    (g, det3(&m))
}

/// r(t3, t4) = Res_y(g, h) as binary forms in y, of degree 18 in t (x = t4, y = t3).
pub fn segre_resultant<F: Field>(frame: &LineFrame<F>) -> BinaryForm<F> {
    let f = frame.field();
    let (g, h) = g_and_h(frame);
    let one = f.one();
    let gc = g.eval_var(Y2, &one).coefficients_in(Y1);
    let hc = h.eval_var(Y2, &one).coefficients_in(Y1);
    let m = sylvester_formal(&gc, &hc, 3, 3, f, 4);
    let r = det_poly(&m);
    BinaryForm::from_multi(&r, T4, T3, 18).expect("homogeneous of degree 18")
}

#[derive(Clone, Debug)]
pub enum LineKind<F: Field> {
    First {
        r: BinaryForm<F>,
        /// Degree of r(λ) = r(1, λ).
        degree: usize,
    },
    Second,
}

impl<F: Field> LineKind<F> {
    pub fn is_second(&self) -> bool {
        matches!(self, LineKind::Second)
    }
    pub fn record(&self) -> LineKindRecord {
        match self {
            LineKind::Second => LineKindRecord {
                kind: "second",
                segre_degree: None,
                r: None,
            },
            LineKind::First { r, degree } => LineKindRecord {
                kind: "first",
                segre_degree: Some(*degree),
                r: Some(r.dehomogenize().display("l")),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LineKindRecord {
    pub kind: &'static str,
    pub segre_degree: Option<usize>,
    pub r: Option<String>,
}

/// Second kind iff r vanishes identically.
pub fn line_kind<F: Field>(frame: &LineFrame<F>) -> Result<LineKind<F>> {
    let r = segre_resultant(frame);
    if r.is_zero() {
        return Ok(LineKind::Second);
    }
    let degree = r.dehomogenize().deg().unwrap_or(0);
    debug_assert!(degree <= 18);
    Ok(LineKind::First { r, degree })
}
