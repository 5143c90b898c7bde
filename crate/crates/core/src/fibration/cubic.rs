//! Plane cubics: discriminant and Kodaira classification of a residual cubic.

use serde::Serialize;

use super::kodaira::Kodaira;
use crate::census::solve::solve_system;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;
use crate::poly::{hessian_determinant, BinaryForm, Monomial, MultiPoly};

const QUAD: [[u32; 3]; 6] = [[2, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [1, 0, 1], [0, 1, 1]];

/// Coefficient of a monomial in `vars`, as a polynomial in the remaining variables.
fn coeff_in<F: Field>(p: &MultiPoly<F>, vars: [usize; 3], e: &[u32; 3]) -> MultiPoly<F> {
    let terms = p
        .terms()
        .iter()
        .filter(|(m, _)| (0..3).all(|k| m.exp(vars[k]) == e[k]))
        .map(|(m, c)| {
            let stripped = vars.iter().fold(*m, |m, &v| m.with_exp(v, 0));
            (stripped, c.clone())
        })
        .collect();
    MultiPoly::from_terms(p.field(), p.nvars(), terms)
}

/// The 6×6 matrix whose determinant is −2⁹·3³ times the discriminant of a ternary cubic:
/// coefficient rows of the three first partials and of the three partials of their Jacobian
/// (the Hessian), in the quadratic monomials of `vars`. Other variables are parameters.
pub fn discriminant_matrix<F: Field>(c: &MultiPoly<F>, vars: [usize; 3]) -> Vec<Vec<MultiPoly<F>>> {
    let partials: Vec<MultiPoly<F>> = vars.iter().map(|&v| c.derivative(v)).collect();
    let jac: Vec<Vec<MultiPoly<F>>> = partials
        .iter()
        .map(|q| vars.iter().map(|&v| q.derivative(v)).collect())
        .collect();
    let j = crate::poly::det3(&jac);
    let rows: Vec<MultiPoly<F>> = partials
        .into_iter()
        .chain(vars.iter().map(|&v| j.derivative(v)))
        .collect();
    rows.iter()
        .map(|r| QUAD.iter().map(|e| coeff_in(r, vars, e)).collect())
        .collect()
}

/// Discriminant of a ternary cubic (up to the fixed nonzero constant −2⁹·3³).
pub fn cubic_discriminant<F: Field>(c: &MultiPoly<F>) -> F::Elem {
    let f = c.field();
    let m: linalg::Matrix<F::Elem> = discriminant_matrix(c, [0, 1, 2])
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| e.constant_value().unwrap_or_else(|| f.zero()))
                .collect()
        })
        .collect();
    linalg::det(f, m)
}

/// Classification of a plane cubic with what could be read off over its field.
#[derive(Clone, Debug)]
pub struct CubicClass<E> {
    pub kind: Kodaira,
    /// Singular points rational over the field.
    pub singular_points: Vec<Vec<E>>,
    /// Line components rational over the field, as linear forms.
    pub lines: Vec<Vec<E>>,
    /// True when every line component is rational over the field (and listed).
    pub lines_complete: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CubicClassRecord {
    pub kind: Kodaira,
    pub singular_points: Vec<Vec<String>>,
    pub lines: Vec<Vec<String>>,
    pub lines_complete: bool,
}

impl<E: Clone> CubicClass<E> {
    pub fn record<F: Field<Elem = E>>(&self, f: &F) -> CubicClassRecord {
        let s = |v: &Vec<E>| v.iter().map(|c| f.fmt_elem(c)).collect();
        CubicClassRecord {
            kind: self.kind.clone(),
            singular_points: self.singular_points.iter().map(s).collect(),
            lines: self.lines.iter().map(s).collect(),
            lines_complete: self.lines_complete,
        }
    }
}

fn cross<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let c = |i: usize, j: usize| f.sub(&f.mul(&a[i], &b[j]), &f.mul(&a[j], &b[i]));
    linalg::normalize(f, &[c(1, 2), c(2, 0), c(0, 1)]).expect("distinct points")
}

/// Points of P² over the field where all the given forms in variables 0, 1, 2 vanish.
pub fn common_zeros_p2<F: Field>(polys: &[MultiPoly<F>]) -> Result<Vec<Vec<F::Elem>>> {
    let f = polys[0].field().clone();
    let mut out = Vec::new();
    // chart z = 1
    let aff: Vec<MultiPoly<F>> = polys.iter().map(|p| p.eval_var(2, &f.one())).collect();
    for s in solve_system(&f, &aff, &[0, 1]).map_err(|_| Error::NonIsolated)? {
        out.push(vec![s[0].clone(), s[1].clone(), f.one()]);
    }
    // z = 0, y = 1
    let aff: Vec<MultiPoly<F>> = polys
        .iter()
        .map(|p| p.eval_var(2, &f.zero()).eval_var(1, &f.one()))
        .collect();
    for s in solve_system(&f, &aff, &[0]).map_err(|_| Error::NonIsolated)? {
        out.push(vec![s[0].clone(), f.one(), f.zero()]);
    }
    let pt = vec![f.one(), f.zero(), f.zero()];
    if polys.iter().all(|p| f.is_zero(&p.eval(&pt))) {
        out.push(pt);
    }
    Ok(out)
}

fn hessian_matrix_at<F: Field>(c: &MultiPoly<F>, x: &[F::Elem]) -> linalg::Matrix<F::Elem> {
    (0..3)
        .map(|i| (0..3).map(|j| c.derivative(i).derivative(j).eval(x)).collect())
        .collect()
}

fn vanishes_on_line<F: Field>(c: &MultiPoly<F>, form: &[F::Elem]) -> bool {
    let f = c.field();
    let ker = linalg::kernel(f, &vec![form.to_vec()], 3);
    let s = MultiPoly::var(f, 2, 0);
    let t = MultiPoly::var(f, 2, 1);
    let images: Vec<MultiPoly<F>> = (0..3)
        .map(|i| s.scale(&ker[0][i]).add(&t.scale(&ker[1][i])))
        .collect();
    c.with_nvars(3).compose(&images).is_zero()
}

/// Kodaira type of the fibre given by a plane cubic in variables 0, 1, 2.
///
/// Order of tests: vanishing Hessian (a cone: three concurrent lines, or non-reduced),
/// nonzero discriminant, Hessian proportional to the cubic (triangle), then the rational
/// singular points and the rank of the Hessian matrix there.
pub fn classify_plane_cubic<F: Field>(c: &MultiPoly<F>) -> Result<CubicClass<F::Elem>> {
    let f = c.field();
    if c.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !c.is_homogeneous() || c.total_degree() != Some(3) || c.nvars() != 3 {
        return Err(Error::Degree("expected a ternary cubic".into()));
    }
    let h = hessian_determinant(c, [0, 1, 2])?;
    let class = |kind, singular_points, lines, lines_complete| CubicClass {
        kind,
        singular_points,
        lines,
        lines_complete,
    };
    if h.is_zero() {
        return Ok(classify_cone(c));
    }
    if !f.is_zero(&cubic_discriminant(c)) {
        return Ok(class(Kodaira::Smooth, vec![], vec![], true));
    }
    let partials: Vec<MultiPoly<F>> = (0..3).map(|i| c.derivative(i)).collect();
    let sing = common_zeros_p2(&partials)?;
    let (m, lc) = c.leading().expect("nonzero");
    let ratio = f.div(&h.coeff(*m), lc).expect("nonzero");
    if !f.is_zero(&ratio) && c.scale(&ratio) == h {
        let complete = sing.len() == 3;
        let lines = if complete {
            vec![
                cross(f, &sing[0], &sing[1]),
                cross(f, &sing[0], &sing[2]),
                cross(f, &sing[1], &sing[2]),
            ]
        } else {
            Vec::new()
        };
        return Ok(class(Kodaira::I(3), sing, lines, complete));
    }
    match sing.len() {
        0 => Ok(class(Kodaira::I(2), sing, vec![], false)),
        1 => {
            let hm = hessian_matrix_at(c, &sing[0]);
            match linalg::rank(f, &hm) {
                2 => Ok(class(Kodaira::I(1), sing, vec![], true)),
                1 => {
                    let row = hm
                        .iter()
                        .find(|r| r.iter().any(|e| !f.is_zero(e)))
                        .expect("rank one");
                    let form = linalg::normalize(f, row).expect("nonzero row");
                    if vanishes_on_line(c, &form) {
                        Ok(class(Kodaira::III, sing, vec![form], true))
                    } else {
                        Ok(class(Kodaira::II, sing, vec![], true))
                    }
                }
                _ => Ok(class(
                    Kodaira::Pathological("triple point on a non-conical cubic".into()),
                    sing,
                    vec![],
                    false,
                )),
            }
        }
        2 => {
            let line = cross(f, &sing[0], &sing[1]);
            Ok(class(Kodaira::I(2), sing, vec![line], true))
        }
        n => Ok(class(
            Kodaira::Pathological(format!("{n} singular points")),
            sing,
            vec![],
            false,
        )),
    }
}

fn classify_cone<F: Field>(c: &MultiPoly<F>) -> CubicClass<F::Elem> {
    let f = c.field();
    // vertex v: Σ v_i ∂_i c ≡ 0
    let partials: Vec<MultiPoly<F>> = (0..3).map(|i| c.derivative(i)).collect();
    let m: linalg::Matrix<F::Elem> = QUAD
        .iter()
        .map(|e| {
            partials
                .iter()
                .map(|p| p.coeff(Monomial::from_exps(e)))
                .collect()
        })
        .collect();
    let ker = linalg::kernel(f, &m, 3);
    if ker.len() != 1 {
        return CubicClass {
            kind: Kodaira::Pathological("triple line".into()),
            singular_points: vec![],
            lines: vec![],
            lines_complete: false,
        };
    }
    let v = linalg::normalize(f, &ker[0]).expect("nonzero");
    let mut basis = vec![v.clone()];
    for i in 0..3 {
        let mut e = vec![f.zero(); 3];
        e[i] = f.one();
        let mut trial = basis.clone();
        trial.push(e.clone());
        if basis.len() < 3 && linalg::rank(f, &trial) == trial.len() {
            basis.push(e);
        }
    }
    let s = MultiPoly::var(f, 2, 0);
    let t = MultiPoly::var(f, 2, 1);
    let images: Vec<MultiPoly<F>> = (0..3)
        .map(|i| s.scale(&basis[1][i]).add(&t.scale(&basis[2][i])))
        .collect();
    let b = BinaryForm::from_multi(&c.with_nvars(3).compose(&images).with_nvars(2), 0, 1, 3)
        .expect("binary cubic");
    if !b.is_squarefree() {
        return CubicClass {
            kind: Kodaira::Pathological("non-reduced fibre".into()),
            singular_points: vec![v],
            lines: vec![],
            lines_complete: false,
        };
    }
    let roots = b.roots().unwrap_or_default();
    let lines: Vec<Vec<F::Elem>> = roots
        .iter()
        .map(|(r, _)| {
            let (x, y) = r.coords(f);
            let pt: Vec<F::Elem> = (0..3)
                .map(|i| f.add(&f.mul(&x, &basis[1][i]), &f.mul(&y, &basis[2][i])))
                .collect();
            cross(f, &v, &pt)
        })
        .collect();
    CubicClass {
        kind: Kodaira::IV,
        singular_points: vec![v],
        lines_complete: lines.len() == 3,
        lines,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Rationals};
    use crate::poly::parse::{parse_poly, Bindings};

    fn cubic(s: &str) -> MultiPoly<Rationals> {
        parse_poly(s, &Bindings::new()).unwrap().with_nvars(3)
    }

    fn kind(s: &str) -> Kodaira {
        classify_plane_cubic(&cubic(s)).unwrap().kind
    }

    #[test]
    fn table_one_examples() {
        assert_eq!(kind("x*y*z"), Kodaira::I(3));
        assert_eq!(kind("x*y*(x+y)"), Kodaira::IV);
        assert_eq!(kind("y^2*z - x^3"), Kodaira::II);
        assert_eq!(kind("y^2*z - x^3 - x^2*z"), Kodaira::I(1));
        assert_eq!(kind("x^3 + y^3 + z^3"), Kodaira::Smooth);
        // conic + secant line, conic + tangent line
        assert_eq!(kind("(x*z - y^2)*x"), Kodaira::III);
        assert_eq!(kind("(x*z - y^2)*(x - z)"), Kodaira::I(2));
        assert!(matches!(kind("x^2*y"), Kodaira::Pathological(_)));
        assert!(matches!(kind("x^3"), Kodaira::Pathological(_)));
    }

    #[test]
    fn triangle_lines_are_found() {
        let c = classify_plane_cubic(&cubic("x*y*(x + y + z)")).unwrap();
        assert_eq!(c.kind, Kodaira::I(3));
        assert!(c.lines_complete);
        assert_eq!(c.lines.len(), 3);
    }

    #[test]
    fn conjugate_nodes_still_give_i2() {
        // conic x^2 + y^2 - z^2 (times the line y - 2z, meeting it where x^2 = -3) over F_7
        let f = FiniteField::new(7, 1).unwrap();
        let c = cubic("(x^2 + y^2 - z^2)*(y - 3*z)")
            .map_coeffs(&f, |c| f.from_rational(c))
            .unwrap();
        let cl = classify_plane_cubic(&c).unwrap();
        assert_eq!(cl.kind, Kodaira::I(2));
        assert!(cl.singular_points.is_empty());
    }

    #[test]
    fn hesse_pencil_discriminant() {
        assert!(!Rationals.is_zero(&cubic_discriminant(&cubic("x^3 + y^3 + z^3"))));
        assert!(Rationals.is_zero(&cubic_discriminant(&cubic("x^3 + y^3 + z^3 - 3*x*y*z"))));
    }
}
