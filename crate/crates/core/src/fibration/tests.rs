use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::poly::parse::Bindings;
use crate::poly::{Monomial, MultiPoly};
use crate::surface::{io, pencil_coords};

fn surface(text: &str, p: u64, k: u32) -> QuarticSurface<FiniteField> {
    let f = FiniteField::new(p, k).unwrap();
    let poly = io::parse_quartic(text, &Bindings::new()).unwrap();
    QuarticSurface::from_rational(&poly, &f).unwrap()
}

fn base_line(f: &FiniteField) -> ProjLine<u64> {
    ProjLine::from_equations(f, &[0, 0, 1, 0], &[0, 0, 0, 1]).unwrap()
}

fn binary(f: &FiniteField, c: &[u64]) -> MultiPoly<FiniteField> {
    let d = c.len() as u32 - 1;
    let terms = c
        .iter()
        .enumerate()
        .map(|(i, v)| (Monomial::from_exps(&[0, 0, d - i as u32, i as u32]), *v))
        .collect();
    MultiPoly::from_terms(f, 4, terms)
}

fn z_member(q: &MultiPoly<FiniteField>, g: &MultiPoly<FiniteField>) -> QuarticSurface<FiniteField> {
    let f = q.field();
    let x = |i| MultiPoly::var(f, 4, i);
    let p = x(2)
        .mul(&x(0).pow(3))
        .add(&x(3).mul(&x(1).pow(3)))
        .add(&x(0).mul(&x(1)).mul(q))
        .add(g);
    QuarticSurface::new(p).unwrap()
}

/// Value of a form in (x3, x4) at the fibre over a place, in its residue field.
fn vanishes_at(p: &MultiPoly<FiniteField>, place: &Place, tower: &Tower) -> bool {
    let (big, emb) = tower.level(place.degree).unwrap();
    let pb = p.map_coeffs(&big, |c| Ok(emb.apply(*c))).unwrap();
    let (t3, t4) = pencil_coords(&big, &place.residue().unwrap().rep);
    big.is_zero(&pb.eval(&[0, 0, t3, t4]))
}

/// A random 𝒵-member whose relevant binary forms are squarefree and coprime, and which is smooth.
fn generic_z_member(
    f: &FiniteField,
    rng: &mut ChaCha8Rng,
    strict: bool,
    shape: impl Fn(&mut ChaCha8Rng) -> (Vec<u64>, Vec<u64>),
) -> (MultiPoly<FiniteField>, MultiPoly<FiniteField>, QuarticSurface<FiniteField>) {
    loop {
        let (qc, gc) = shape(rng);
        let q = binary(f, &qc);
        let g = binary(f, &gc);
        let x3x4 = MultiPoly::var(f, 4, 2).mul(&MultiPoly::var(f, 4, 3));
        let i3 = q.pow(3).add(&x3x4.mul(&g).scale(&f.from_i64(27)));
        let all = i3.mul(&g);
        let Ok(form) = crate::poly::BinaryForm::from_multi(&all, 3, 2, 10) else {
            continue;
        };
        if strict && (!form.is_squarefree() || i3.eval(&[0, 0, 1, 0]) == 0 || i3.eval(&[0, 0, 0, 1]) == 0) {
            continue;
        }
        let mut s = z_member(&q, &g);
        let sm = s.smoothness_check(1).unwrap();
        if !sm.is_smooth() {
            continue;
        }
        s.set_smoothness(sm);
        return (q, g, s);
    }
}

fn random_coeffs(rng: &mut ChaCha8Rng, q: u64, n: usize) -> Vec<u64> {
    (0..n).map(|_| rng.gen_range(0..q)).collect()
}

#[test]
fn generic_z_members_have_the_expected_inventory() {
    let f = FiniteField::new(31, 1).unwrap();
    let tower = Tower::new(&f);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..4 {
        let (q, g, s) = generic_z_member(&f, &mut rng, true, |r| {
            (random_coeffs(r, 31, 3), random_coeffs(r, 31, 5))
        });
        let rep = analyze_line(&s, &base_line(&f), &tower).unwrap();
        assert!(rep.kind.is_second());
        assert_eq!(rep.ramification.r, RType::R22);
        assert_eq!(rep.ramification.hurwitz_sum, 4);
        assert_eq!(rep.euler_total, 24);
        assert_eq!(rep.n, 18);
        assert!(rep.checks.all_pass(), "{:?}", rep.checks);
        let x3x4 = MultiPoly::var(&f, 4, 2).mul(&MultiPoly::var(&f, 4, 3));
        let i3 = q.pow(3).add(&x3x4.mul(&g).scale(&27));
        let i1 = x3x4.mul(&g);
        assert_eq!(rep.count(&Kodaira::I(3)), 6);
        assert_eq!(rep.count(&Kodaira::I(1)), 6);
        for fib in &rep.fibers {
            match fib.kind() {
                Kodaira::I(3) => assert!(vanishes_at(&i3, &fib.place, &tower)),
                Kodaira::I(1) => assert!(vanishes_at(&i1, &fib.place, &tower)),
                k => panic!("unexpected fibre {k}"),
            }
        }
    }
}

#[test]
fn x4_dividing_g_gives_an_i2_fibre() {
    let f = FiniteField::new(31, 1).unwrap();
    let tower = Tower::new(&f);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (cut, i2, n) in [(1, 1, 19), (2, 2, 20)] {
        // g = x4·(cubic), then also x3 | g
        let (_, _, s) = generic_z_member(&f, &mut rng, false, |r| {
            let mut g = random_coeffs(r, 31, 5);
            g[0] = 0;
            if cut == 2 {
                g[4] = 0;
            }
            (random_coeffs(r, 31, 3), g)
        });
        let rep = analyze_line(&s, &base_line(&f), &tower).unwrap();
        assert_eq!(rep.count(&Kodaira::I(2)), i2);
        assert_eq!(rep.n, n);
        assert_eq!(rep.ramification.r, RType::R22);
        assert!(rep.checks.all_pass(), "{:?}", rep.checks);
        for fb in rep.fibers.iter().filter(|fb| *fb.kind() == Kodaira::I(2)) {
            assert!(rep.ramification.at(&fb.place).is_some());
        }
    }
}

#[test]
fn x3_dividing_q_gives_a_ramified_iv_fibre() {
    let f = FiniteField::new(31, 1).unwrap();
    let tower = Tower::new(&f);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let (_, _, s) = generic_z_member(&f, &mut rng, false, |r| {
        // x3 | q: no x4^2 term
        let mut q = random_coeffs(r, 31, 3);
        q[2] = 0;
        (q, random_coeffs(r, 31, 5))
    });
    let rep = analyze_line(&s, &base_line(&f), &tower).unwrap();
    let iv: Vec<_> = rep.fibers.iter().filter(|f| *f.kind() == Kodaira::IV).collect();
    assert!(!iv.is_empty(), "{:?}", rep.record().fibers);
    assert!(iv.iter().all(|f| rep.ramification.at(&f.place).is_some()));
    assert!(rep.checks.all_pass(), "{:?}", rep.checks);
}

#[test]
fn pencil_discriminant_has_degree_24() {
    let s = surface("x1^4 - x1*x2^3 - x3^4 + x3*x4^3", 13, 1);
    let l = crate::census::enumerate_bruteforce(&s)[0].clone();
    let frame = LineFrame::new(&s, &l).unwrap();
    assert_eq!(pencil_discriminant(&frame).unwrap().degree(), 24);
}

#[test]
fn schur_lines_split_into_48_first_and_16_second_kind() {
    let s = surface("x1^4 - x1*x2^3 - x3^4 + x3*x4^3", 13, 1);
    let tower = Tower::new(s.field());
    let lines = crate::census::enumerate_bruteforce(&s);
    let mut second = 0;
    for l in &lines {
        let rep = analyze_line(&s, l, &tower).unwrap();
        match &rep.kind {
            LineKind::First { degree, .. } => assert!(*degree <= 18),
            LineKind::Second => {
                second += 1;
                assert_eq!(rep.ramification.r, RType::R22);
                assert_eq!(rep.count(&Kodaira::IV), 6);
            }
        }
        assert_eq!(rep.n, 18);
        assert_eq!(rep.euler_total, 24);
        assert!(rep.checks.all_pass(), "{:?}", rep.checks);
    }
    assert_eq!(second, 16);
}

#[test]
fn three_line_fibres_are_triple_roots_of_r() {
    // x3·L1L2L3 + x4·C: the plane x4 = 0 (λ = 0) cuts ℓ plus three lines
    let f = FiniteField::new(17, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = |i| MultiPoly::var(&f, 4, i);
    let mut done = [0, 0];
    while done.iter().any(|&d| d < 3) {
        let star = done[0] >= 3;
        let lin = |r: &mut ChaCha8Rng, through_origin: bool| {
            let c: Vec<u64> = (0..3).map(|_| r.gen_range(0..17)).collect();
            x(0).scale(&c[0])
                .add(&x(1).scale(&c[1]))
                .add(&x(2).scale(&if through_origin { 0 } else { c[2] }))
        };
        let mut lines = MultiPoly::one(&f, 4);
        for _ in 0..3 {
            lines = lines.mul(&lin(&mut rng, star));
        }
        let mut cubic = MultiPoly::zero(&f, 4);
        for a in 0..=3u32 {
            for b in 0..=3 - a {
                for c in 0..=3 - a - b {
                    let e = [a, b, c, 3 - a - b - c];
                    cubic = cubic.add(&MultiPoly::monomial(&f, 4, &e, rng.gen_range(0..17)));
                }
            }
        }
        let Ok(s) = QuarticSurface::new(x(2).mul(&lines).add(&x(3).mul(&cubic))) else {
            continue;
        };
        if !s.smoothness_check(1).unwrap().is_smooth() {
            continue;
        }
        let l = base_line(&f);
        let frame = LineFrame::new(&s, &l).unwrap();
        let LineKind::First { r, .. } = line_kind(&frame).unwrap() else {
            continue;
        };
        let at0 = classify_plane_cubic(&frame.residual_cubic(&crate::poly::P1::Finite(0)).unwrap()).unwrap();
        let want = if star { Kodaira::IV } else { Kodaira::I(3) };
        if at0.kind != want {
            continue;
        }
        assert!(r.multiplicity_at(&crate::poly::P1::Finite(0)) >= 3);
        done[star as usize] += 1;
    }
}

#[test]
fn z_normal_form_of_a_member_is_the_identity() {
    let text = "x1^3*x3 + x1*x2*x3^2 + x2^3*x4 + 5*x3^3*x4 - x1*x2*x4^2 - 5*x3*x4^3";
    let s = surface(text, 19, 1);
    let f = s.field().clone();
    let nf = z_normal_form(&s, &base_line(&f)).unwrap();
    let id: Vec<Vec<u64>> = (0..4)
        .map(|i| (0..4).map(|j| u64::from(i == j)).collect())
        .collect();
    assert_eq!(nf.transform, id);
    assert_eq!(nf.quartic(), *s.poly());
}

#[test]
fn z_normal_form_recovers_a_transformed_member() {
    let f = FiniteField::new(31, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (_, _, s) = generic_z_member(&f, &mut rng, true, |r| {
        (random_coeffs(r, 31, 3), random_coeffs(r, 31, 5))
    });
    // mix x1, x2 with x3, x4 and rescale: ℓ is preserved
    let a: Vec<Vec<u64>> = vec![
        vec![2, 1, 3, 4],
        vec![1, 1, 5, 0],
        vec![0, 0, 1, 2],
        vec![0, 0, 3, 1],
    ];
    let t = s.transform(&a).unwrap();
    let nf = z_normal_form(&t, &base_line(&f)).unwrap();
    let back = t.transform(&nf.transform).unwrap();
    assert_eq!(*back.poly(), nf.quartic());
}

#[test]
fn only_second_kind_schur_lines_normalize() {
    let s = surface("x1^4 - x1*x2^3 - x3^4 + x3*x4^3", 13, 1);
    for l in crate::census::enumerate_bruteforce(&s) {
        let second = line_kind(&LineFrame::new(&s, &l).unwrap()).unwrap().is_second();
        match z_normal_form(&s, &l) {
            Err(Error::NotInZ(_)) => assert!(!second),
            Ok(nf) => {
                assert!(second);
                let back = s.transform(&nf.transform).unwrap();
                assert_eq!(back.poly().primitive(), nf.quartic().primitive());
            }
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn audits_reject_impossible_inventories() {
    assert!(check_g_r(RType::R1111, 12).pass);
    assert!(!check_g_r(RType::R22, 17).pass);
    assert!(check_g_r(RType::R211, 16).pass);
}


