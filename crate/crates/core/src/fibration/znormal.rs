//! Normal form x3·x1³ + x4·x2³ + x1·x2·q(x3, x4) + g(x3, x4) for a second-kind line with two
//! total ramification points.

use serde::Serialize;

use super::ramification::{binary_cubic_disc, g_coefficients};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Matrix};
use crate::poly::{BinaryForm, Monomial, MultiPoly, P1};
use crate::surface::{pencil_coords, LineFrame, ProjLine, QuarticSurface};

#[derive(Clone, Debug)]
pub struct ZNormalForm<F: Field> {
    /// Quadratic form q in (x3, x4), in the 4-variable ring.
    pub q: MultiPoly<F>,
    /// Quartic form g in (x3, x4).
    pub g: MultiPoly<F>,
    /// x = A w, with the surface in normal form in w.
    pub transform: Matrix<F::Elem>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZNormalFormRecord {
    pub q: String,
    pub g: String,
    pub transform: Vec<Vec<String>>,
}

const NAMES: [&str; 4] = ["x1", "x2", "x3", "x4"];

impl<F: Field> ZNormalForm<F> {
    pub fn record(&self) -> ZNormalFormRecord {
        let f = self.q.field();
        ZNormalFormRecord {
            q: self.q.display(&NAMES),
            g: self.g.display(&NAMES),
            transform: self
                .transform
                .iter()
                .map(|r| r.iter().map(|c| f.fmt_elem(c)).collect())
                .collect(),
        }
    }

    /// The normal-form quartic x3x1³ + x4x2³ + x1x2q + g.
    pub fn quartic(&self) -> MultiPoly<F> {
        let f = self.q.field();
        let x = |i| MultiPoly::var(f, 4, i);
        x(2).mul(&x(0).pow(3))
            .add(&x(3).mul(&x(1).pow(3)))
            .add(&x(0).mul(&x(1)).mul(&self.q))
            .add(&self.g)
    }
}

/// Binary cubic c[0..4] (coefficient of y1^i y2^(3-i)) as c·M³: returns (M as (m1, m2), c),
/// with M = m1 y1 + m2 y2.
fn cube_root<F: Field>(f: &F, c: &[F::Elem]) -> Result<([F::Elem; 2], F::Elem)> {
    let b = BinaryForm::new(f, 3, c.to_vec());
    let roots = b.roots()?;
    let [(r, 3)] = roots.as_slice() else {
        return Err(Error::NotInZ("ramified member is not a cube over the field".into()));
    };
    let (r1, r2) = r.coords(f);
    // M vanishes at (r1 : r2), scaled so its first nonzero coefficient is 1
    let m = linalg::normalize(f, &[r2.clone(), f.neg(&r1)]).expect("nonzero");
    let m = [m[0].clone(), m[1].clone()];
    let mc = BinaryForm::new(f, 1, vec![m[1].clone(), m[0].clone()]);
    let cube = mc.mul(&mc).mul(&mc);
    let i = (0..4).find(|&i| !f.is_zero(&cube.coeffs()[i])).unwrap();
    let scale = f.div(&c[i], &cube.coeffs()[i]).expect("nonzero");
    Ok((m, scale))
}

/// Coordinates putting S in the normal form with ℓ = {x3 = x4 = 0}, following the
/// normalization: send the two total ramification points to λ = 0 and λ = ∞, take the cube
/// roots of g there as x1 and x2, then remove x1², x2² terms by adding multiples of x3, x4 to
/// x1, x2. Both ramification points must be rational over the field.
pub fn z_normal_form<F: Field>(
    s: &QuarticSurface<F>,
    l: &ProjLine<F::Elem>,
) -> Result<ZNormalForm<F>> {
    let f = s.field();
    let frame = LineFrame::new(s, l)?;
    if !super::segre::line_kind(&frame)?.is_second() {
        return Err(Error::NotInZ("line of the first kind".into()));
    }
    let coeffs = g_coefficients(&frame);
    let disc = binary_cubic_disc(&coeffs);
    if disc.is_zero() {
        return Err(Error::NotInZ("degenerate ramification".into()));
    }
    let form = BinaryForm::from_multi(&disc, 3, 2, 4)?;
    let eval_g = |t: &P1<F::Elem>| -> Vec<F::Elem> {
        let (t3, t4) = pencil_coords(f, t);
        coeffs
            .iter()
            .map(|c| c.eval(&[f.zero(), f.zero(), t3.clone(), t4.clone()]))
            .collect()
    };
    let mut total: Vec<P1<F::Elem>> = form
        .roots()?
        .into_iter()
        .filter(|(_, m)| *m >= 2)
        .map(|(t, _)| t)
        .filter(|t| cube_root(f, &eval_g(t)).is_ok())
        .collect();
    if form.roots()?.iter().map(|(_, m)| m).sum::<usize>() != 4 {
        return Err(Error::NotInZ(
            "ramification points are not all rational over the field".into(),
        ));
    }
    if total.len() != 2 {
        return Err(Error::NotInZ(format!(
            "{} total ramification points, R = 2^2 needs 2",
            total.len()
        )));
    }
    // λ = 0 first, λ = ∞ last
    total.sort_by_key(|t| match t {
        P1::Finite(a) if f.is_zero(a) => 0,
        P1::Finite(_) => 1,
        P1::Infinity => 2,
    });
    let (ma, ca) = cube_root(f, &eval_g(&total[0]))?;
    let (mb, cb) = cube_root(f, &eval_g(&total[1]))?;
    let (a3, a4) = pencil_coords(f, &total[0]);
    let (b3, b4) = pencil_coords(f, &total[1]);
    let ia = f.inv(&ca).expect("nonzero");
    let ib = f.inv(&cb).expect("nonzero");
    // y = B z: (y1, y2) = L^{-1} (z1, z2), (y3, y4) = N (z3, z4)
    let lmat = vec![ma.to_vec(), mb.to_vec()];
    let linv = linalg::inverse(f, &lmat)
        .ok_or_else(|| Error::NotInZ("ramified points share their cube root".into()))?;
    let z = f.zero();
    let b: Matrix<F::Elem> = vec![
        vec![linv[0][0].clone(), linv[0][1].clone(), z.clone(), z.clone()],
        vec![linv[1][0].clone(), linv[1][1].clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), f.mul(&a3, &ia), f.mul(&b3, &ib)],
        vec![z.clone(), z.clone(), f.mul(&a4, &ia), f.mul(&b4, &ib)],
    ];
    let gz = QuarticSurface::new(frame.transformed().clone())?.transform(&b)?;
    let coef = |p: &MultiPoly<F>, e: [u32; 4]| p.coeff(Monomial::from_exps(&e));
    let g0 = gz.poly();
    let third = f.inv(&f.from_i64(3)).expect("characteristic is not 3");
    let shift = |e: [u32; 4]| f.neg(&f.mul(&coef(g0, e), &third));
    // z1 -> z1 + a z3 + b z4 kills z1² z3², z1² z3 z4; z2 -> z2 + c z3 + d z4 likewise
    let (sa, sb) = (shift([2, 0, 2, 0]), shift([2, 0, 1, 1]));
    let (sc, sd) = (shift([0, 2, 1, 1]), shift([0, 2, 0, 2]));
    let one = f.one();
    let c: Matrix<F::Elem> = vec![
        vec![one.clone(), z.clone(), sa, sb],
        vec![z.clone(), one.clone(), sc, sd],
        vec![z.clone(), z.clone(), one.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), one.clone()],
    ];
    let w = gz.transform(&c)?;
    let wp = w.poly();
    // classify the terms by degree in (w3, w4)
    let mut q_terms = Vec::new();
    let mut g_terms = Vec::new();
    for (m, cf) in wp.terms() {
        let e = m.exps(4);
        let dz = e[2] + e[3];
        match dz {
            1 if e == [3, 0, 1, 0] || e == [0, 3, 0, 1] => {
                if !f.is_one(cf) {
                    return Err(Error::Inconsistent("normalization scaling failed".into()));
                }
            }
            2 if e[0] == 1 && e[1] == 1 => q_terms.push((m.with_exp(0, 0).with_exp(1, 0), cf.clone())),
            4 => g_terms.push((*m, cf.clone())),
            _ => {
                return Err(Error::NotInZ(format!(
                    "term {} survives the normalization",
                    MultiPoly::from_terms(f, 4, vec![(*m, cf.clone())]).display(&NAMES)
                )))
            }
        }
    }
    let frame_m = frame.matrix();
    let bc: Matrix<F::Elem> = (0..4)
        .map(|i| (0..4).map(|j| linalg::dot(f, &b[i], &(0..4).map(|k| c[k][j].clone()).collect::<Vec<_>>())).collect())
        .collect();
    let transform: Matrix<F::Elem> = (0..4)
        .map(|i| (0..4).map(|j| linalg::dot(f, &frame_m[i], &(0..4).map(|k| bc[k][j].clone()).collect::<Vec<_>>())).collect())
        .collect();
    Ok(ZNormalForm {
        q: MultiPoly::from_terms(f, 4, q_terms),
        g: MultiPoly::from_terms(f, 4, g_terms),
        transform,
    })
}
