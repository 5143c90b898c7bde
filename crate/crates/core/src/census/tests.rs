use std::time::Instant;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::poly::parse::Bindings;
use crate::surface::io;

fn surface(text: &str, p: u64, k: u32) -> QuarticSurface<FiniteField> {
    let f = FiniteField::new(p, k).unwrap();
    let poly = io::parse_quartic(text, &Bindings::new()).unwrap();
    QuarticSurface::from_rational(&poly, &f).unwrap()
}

pub(crate) fn random_quartic(f: &FiniteField, rng: &mut ChaCha8Rng, density: f64) -> QuarticSurface<FiniteField> {
    loop {
        let mut terms = Vec::new();
        for a in 0..=4u32 {
            for b in 0..=4 - a {
                for c in 0..=4 - a - b {
                    if rng.gen_bool(density) {
                        let e = [a, b, c, 4 - a - b - c];
                        terms.push((crate::poly::Monomial::from_exps(&e), rng.gen_range(0..f.q())));
                    }
                }
            }
        }
        if let Ok(s) = QuarticSurface::new(MultiPoly::from_terms(f, 4, terms)) {
            return s;
        }
    }
}

const SCHUR: &str = "x1^4 - x1*x2^3 - x3^4 + x3*x4^3";
const FERMAT: &str = "x1^4 + x2^4 + x3^4 + x4^4";

#[test]
fn fermat_char3_has_112_lines_over_f9() {
    let s = surface(FERMAT, 3, 2);
    assert_eq!(enumerate_bruteforce(&s).len(), 112);
}

#[test]
fn schur_64_lines_over_f13() {
    let s = surface(SCHUR, 13, 1);
    let t = Instant::now();
    let b = enumerate_bruteforce(&s);
    eprintln!("brute {:?}", t.elapsed());
    assert_eq!(b.len(), 64);
    let t = Instant::now();
    let e = enumerate_elimination(&s, 1).unwrap();
    eprintln!("elim {:?}", t.elapsed());
    assert_eq!(b, e);
}

#[test]
fn schur_tower_stabilizes_at_64() {
    let s = surface(SCHUR, 13, 1);
    let c = stabilized_count(&s, 4, Method::Auto, 0, &Exec::default()).unwrap();
    assert!(c.stabilized);
    assert_eq!(c.count(), 64);
    assert_eq!(c.levels.len(), 2);
    assert!(c.lines.iter().all(|l| l.def_degree == 1));
}

#[test]
fn schur_graph_degrees_are_18() {
    let s = surface(SCHUR, 13, 1);
    let lines = enumerate_bruteforce(&s);
    let g = incidence_graph(s.field(), &lines);
    assert!(g.degrees.iter().all(|&d| d == 18));
    // every pivot has at least one coplanar triple
    assert!((0..64).all(|v| g.triples_at(v).count() >= 4));
}

#[test]
fn tower_chain_is_divisor_chain() {
    assert_eq!(tower_chain(4), vec![1, 2, 4]);
    assert_eq!(tower_chain(5), vec![1, 2, 4]);
    assert_eq!(tower_chain(1), vec![1]);
}

#[test]
fn disjoint_lines_have_no_edges() {
    let f = FiniteField::new(7, 1).unwrap();
    let a = ProjLine::from_equations(&f, &[1, 0, 0, 0], &[0, 1, 0, 0]).unwrap();
    let b = ProjLine::from_equations(&f, &[0, 0, 1, 0], &[0, 0, 0, 1]).unwrap();
    let g = incidence_graph(&f, &[a, b]);
    assert!(g.edges.is_empty());
}

#[test]
fn sigma_orbits_on_z_member() {
    let f = FiniteField::new(13, 1).unwrap();
    let s = surface("x3*x1^3 + x4*x2^3 + x1*x2*(x3^2 + 2*x4^2) + x3*x4*(x3^2 - x4^2)", 13, 2);
    let big = s.field().clone();
    let rho = big.cube_root_of_unity().unwrap();
    let lines = enumerate_bruteforce(&s);
    let o = sigma_orbits(&s, &lines, &rho).unwrap();
    let fixed = o.fixed.len();
    assert_eq!(o.triples() * 3 + fixed, lines.len());
    let l0 = ProjLine::from_equations(&big, &[0, 0, 1, 0], &[0, 0, 0, 1]).unwrap();
    let i0 = lines.iter().position(|l| *l == l0).unwrap();
    assert!(o.fixed.contains(&i0));
    let _ = f;
}

#[test]
fn sigma_rejects_non_invariant_surface() {
    let s = surface("x1^3*x3 + x2^3*x4 + x3^4 + x4^4", 13, 1);
    let rho = s.field().cube_root_of_unity().unwrap();
    assert!(sigma_orbits(&s, &[], &rho).is_ok());
    let s = surface(FERMAT, 13, 1);
    assert!(matches!(sigma_orbits(&s, &[], &rho), Err(Error::NotSigmaInvariant)));
    let s = surface("x1^4 + x1*x2^3 + x3^4 + x4^4 + x1^2*x3*x4", 13, 1);
    assert!(matches!(sigma_orbits(&s, &[], &rho), Err(Error::NotSigmaInvariant)));
}

#[test]
fn elimination_matches_bruteforce_on_random_quartics() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (p, k) in [(5, 1), (7, 1), (3, 2), (11, 1), (13, 1)] {
        let f = FiniteField::new(p, k).unwrap();
        for i in 0..4 {
            let s = random_quartic(&f, &mut rng, if i % 2 == 0 { 0.3 } else { 0.8 });
            let t = Instant::now();
            let b = enumerate_bruteforce(&s);
            let e = enumerate_elimination(&s, i).unwrap();
            eprintln!("q={} lines={} {:?}", f.q(), b.len(), t.elapsed());
            assert_eq!(b, e, "{}", s.poly().display(&["x1", "x2", "x3", "x4"]));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn census_counts_monotone_in_tower(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = FiniteField::new(5, 1).unwrap();
        let s = random_quartic(&f, &mut rng, 0.4);
        let c = stabilized_count(&s, 4, Method::BruteForce, 0, &Exec::default());
        if let Ok(c) = c {
            for w in c.levels.windows(2) {
                prop_assert!(w[0].count <= w[1].count);
            }
            let mut keys: Vec<_> = c.lines.iter().map(|l| l.line.pluecker().to_vec()).collect();
            keys.dedup();
            prop_assert_eq!(keys.len(), c.lines.len());
        }
    }
}

#[test]
fn example_with_sixty_lines_over_f19() {
    let text = "x1^3*x3 + x1*x2*x3^2 + x2^3*x4 + r*x3^3*x4 - x1*x2*x4^2 - r*x3*x4^3";
    let mut b = Bindings::new();
    b.insert("r".into(), crate::poly::parse::parse_rational("-16/27").unwrap());
    let poly = io::parse_quartic(text, &b).unwrap();
    let f = FiniteField::new(19, 1).unwrap();
    let s = QuarticSurface::from_rational(&poly, &f).unwrap();
    let c = stabilized_count(&s, 4, Method::Auto, 0, &Exec::default()).unwrap();
    assert!(c.stabilized);
    assert_eq!(c.count(), 60);
    let l0 = ProjLine::from_equations(&c.field, &[0, 0, 1, 0], &[0, 0, 0, 1]).unwrap();
    let lines = c.plain_lines();
    let i0 = lines.iter().position(|l| *l == l0).unwrap();
    assert_eq!(incidence_graph(&c.field, &lines).degrees[i0], 20);
}
