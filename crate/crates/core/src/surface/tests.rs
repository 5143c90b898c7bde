use super::*;
use crate::field::FiniteField;
use crate::poly::parse::Bindings;

fn surface(text: &str, p: u64) -> QuarticSurface<FiniteField> {
    let f = FiniteField::new(p, 1).unwrap();
    let poly = io::parse_quartic(text, &Bindings::new()).unwrap();
    QuarticSurface::from_rational(&poly, &f).unwrap()
}

const SCHUR: &str = "x1^4 - x1*x2^3 - x3^4 + x3*x4^3";

#[test]
fn schur_contains_diagonal_line() {
    let s = surface(SCHUR, 13);
    let f = s.field().clone();
    let l = ProjLine::from_points(&f, &[1, 1, 0, 0], &[0, 0, 1, 1]).unwrap();
    assert!(s.contains_line(&l));
    let off = ProjLine::from_points(&f, &[1, 0, 0, 0], &[0, 0, 1, 1]).unwrap();
    assert!(!s.contains_line(&off));
}

#[test]
fn z_member_contains_base_line() {
    let s = surface("x3*x1^3 + x4*x2^3 + x1*x2*(x3^2 + 2*x4^2) + x3*x4*(x3^2 - x4^2)", 31);
    let f = s.field().clone();
    let l = ProjLine::from_equations(&f, &[0, 0, 1, 0], &[0, 0, 0, 1]).unwrap();
    assert!(s.contains_line(&l));
    let c = s.residual_cubic(&l, &P1::Infinity).unwrap();
    // plane y3 = 0: the σ-free part of the residual cubic is x2^3
    let free: Vec<_> = c.terms().iter().filter(|(m, _)| m.exp(2) == 0).collect();
    assert_eq!(free.len(), 1);
    assert_eq!(free[0].0.exps(3), vec![0, 3, 0]);
}

#[test]
fn residual_cubic_times_line_form_is_the_section() {
    let s = surface(SCHUR, 13);
    let f = s.field().clone();
    let l = ProjLine::from_points(&f, &[1, 1, 0, 0], &[0, 0, 1, 1]).unwrap();
    let frame = LineFrame::new(&s, &l).unwrap();
    for lam in 0..13u64 {
        let t = P1::Finite(lam);
        let c = frame.residual_cubic(&t).unwrap();
        assert_eq!(c.total_degree(), Some(3));
        assert!(c.is_homogeneous());
        // check σ·Γ_t = f on random plane points
        for (u, v, sg) in [(1u64, 2u64, 3u64), (5, 0, 7), (0, 1, 1)] {
            let x = frame.plane_point(&t, &[u, v, sg]);
            assert_eq!(s.eval(&x), f.mul(&sg, &c.eval(&[u, v, sg])));
            let plane = frame.plane(&t);
            assert_eq!(linalg::dot(&f, &plane.form, &x), 0);
        }
    }
}

#[test]
fn residual_cubic_rejects_foreign_line() {
    let s = surface(SCHUR, 13);
    let f = s.field().clone();
    let off = ProjLine::from_points(&f, &[1, 0, 0, 0], &[0, 0, 1, 1]).unwrap();
    assert!(matches!(
        s.residual_cubic(&off, &P1::Finite(0)),
        Err(Error::LineNotOnSurface)
    ));
}

#[test]
fn meeting_lines() {
    let f = FiniteField::new(7, 1).unwrap();
    let a = ProjLine::from_points(&f, &[1, 0, 0, 0], &[0, 1, 0, 0]).unwrap();
    let b = ProjLine::from_points(&f, &[1, 0, 0, 0], &[0, 0, 1, 0]).unwrap();
    let c = ProjLine::from_points(&f, &[0, 0, 1, 0], &[0, 0, 0, 1]).unwrap();
    assert_eq!(lines_meet(&f, &a, &b), Meet::Point(ProjPoint(vec![1, 0, 0, 0])));
    assert_eq!(lines_meet(&f, &a, &c), Meet::Disjoint);
    let a2 = ProjLine::from_points(&f, &[1, 1, 0, 0], &[2, 3, 0, 0]).unwrap();
    assert_eq!(lines_meet(&f, &a, &a2), Meet::Equal);
    assert_eq!(a, a2);
}

#[test]
fn smoothness_examples() {
    let fermat = surface("x1^4 + x2^4 + x3^4 + x4^4", 5);
    assert!(fermat.smoothness_check(2).unwrap().is_smooth());
    let cone = surface("x1^4 + x2^4 + x3^4", 5);
    match cone.smoothness_check(2).unwrap() {
        Smoothness::Singular { witness, .. } => assert_eq!(witness, vec!["0", "0", "0", "1"]),
        other => panic!("{other:?}"),
    }
    // g with a double root at x4 = 0 (x3 = 1): singular at (0:0:1:0)
    let z = surface("x3*x1^3 + x4*x2^3 + x1*x2*(x3^2 + x4^2) + x4^2*(x3^2 + x4^2)", 31);
    assert!(!z.smoothness_check(1).unwrap().is_smooth());
}

#[test]
fn parse_errors_carry_positions() {
    let b = Bindings::new();
    match io::parse_quartic("x1^4 + x2^3", &b) {
        Err(Error::Parse { pos, .. }) => assert_eq!(pos, 7),
        other => panic!("{other:?}"),
    }
    assert!(io::parse_quartic("x1^3", &b).is_err());
    let file = "# test\nfield F 19\nlet r = -16/27\nx1^3*x3 + x1*x2*x3^2 + x2^3*x4 + r*x3^3*x4\n - x1*x2*x4^2 - r*x3*x4^3\n";
    let sf = io::parse_surface_file(file, &b).unwrap();
    assert_eq!(sf.field, Some(crate::field::FieldSpec::Finite { p: 19, k: 1 }));
    assert_eq!(sf.poly.nterms(), 6);
    match io::parse_surface_file("field Q\nx1^4 + x2^2*x3\n", &b) {
        Err(Error::Parse { pos, .. }) => assert_eq!(pos, 8 + 7),
        other => panic!("{other:?}"),
    }
}

proptest::proptest! {
    #[test]
    fn meet_is_symmetric_and_matches_determinant(v in proptest::collection::vec(0u64..5, 16)) {
        let f = FiniteField::new(5, 1).unwrap();
        let a = ProjLine::from_points(&f, &v[0..4], &v[4..8]);
        let b = ProjLine::from_points(&f, &v[8..12], &v[12..16]);
        if let (Some(a), Some(b)) = (a, b) {
            let ab = lines_meet(&f, &a, &b);
            let ba = lines_meet(&f, &b, &a);
            proptest::prop_assert_eq!(ab == Meet::Disjoint, ba == Meet::Disjoint);
            let m = vec![a.basis()[0].clone(), a.basis()[1].clone(), b.basis()[0].clone(), b.basis()[1].clone()];
            proptest::prop_assert_eq!(ab == Meet::Disjoint, linalg::det(&f, m) != 0);
            if let Meet::Point(p) = ab {
                proptest::prop_assert!(a.contains_point(&f, &p.0) && b.contains_point(&f, &p.0));
            }
        }
    }
}
