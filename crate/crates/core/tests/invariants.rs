use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quartic_lines::census::{enumerate_bruteforce, incidence_graph, CensusResult};
use quartic_lines::family::{base_line, random_quartic, random_z_member, ZShape};
use quartic_lines::fibration::{analyze_line, LineKind, RType, Tower};
use quartic_lines::field::{Field, FiniteField};
use quartic_lines::linalg;
use quartic_lines::report::CensusReport;
use quartic_lines::surface::lines_meet;

fn invertible(f: &FiniteField, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    loop {
        let m: Vec<Vec<u64>> = (0..4)
            .map(|_| (0..4).map(|_| rng.gen_range(0..f.q())).collect())
            .collect();
        if !f.is_zero(&linalg::det(f, m.clone())) {
            return m;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // S'(y) = S(Ay) contains A^{-1} l exactly when S contains l.
    #[test]
    fn lines_follow_coordinate_changes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = FiniteField::new(7, 1).unwrap();
        let s = random_quartic(&f, &mut rng, 0.5);
        let a = invertible(&f, &mut rng);
        let a_inv = linalg::inverse(&f, &a).unwrap();
        let t = s.transform(&a).unwrap();
        let mut moved: Vec<_> = enumerate_bruteforce(&s)
            .iter()
            .map(|l| l.transform(&f, &a_inv).unwrap())
            .collect();
        let mut direct = enumerate_bruteforce(&t);
        moved.sort_by(|x, y| x.pluecker().cmp(y.pluecker()));
        direct.sort_by(|x, y| x.pluecker().cmp(y.pluecker()));
        prop_assert_eq!(moved, direct);
    }

    #[test]
    fn incidence_graph_is_consistent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = FiniteField::new(5, 1).unwrap();
        let s = random_quartic(&f, &mut rng, 0.3);
        let lines = enumerate_bruteforce(&s);
        let g = incidence_graph(&f, &lines);
        prop_assert_eq!(g.degrees.len(), lines.len());
        prop_assert_eq!(g.degrees.iter().sum::<usize>(), 2 * g.edges.len());
        for (v, d) in g.degrees.iter().enumerate() {
            prop_assert_eq!(g.neighbours(v).len(), *d);
            prop_assert_eq!(g.plane_groups[v].iter().sum::<usize>(), *d);
        }
        for t in &g.triples {
            for &i in &t.lines {
                prop_assert!(lines_meet(&f, &lines[t.pivot], &lines[i]) != quartic_lines::surface::Meet::Disjoint);
            }
        }
    }

    #[test]
    fn census_json_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = FiniteField::new(5, 1).unwrap();
        let s = random_quartic(&f, &mut rng, 0.3);
        let c = CensusResult::single(&f, enumerate_bruteforce(&s));
        let r = CensusReport::new(s.poly().display(&["x1", "x2", "x3", "x4"]).to_string(), &c);
        let text = serde_json::to_string(&r).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(v["count"].as_u64().unwrap() as usize, c.count());
        prop_assert_eq!(v["lines"].as_array().unwrap().len(), c.count());
        prop_assert_eq!(serde_json::to_string(&v).unwrap(), serde_json::to_string(&serde_json::to_value(&r).unwrap()).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn z_members_pass_fibration_checks(seed in any::<u64>(), shape in 0usize..4) {
        let shape = [ZShape::Generic, ZShape::X4DividesG, ZShape::X3X4DividesG, ZShape::X3DividesQ][shape];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = FiniteField::new(31, 1).unwrap();
        let m = random_z_member(&f, &mut rng, shape);
        let rep = analyze_line(&m.surface, &base_line(&f), &Tower::new(&f)).unwrap();
        prop_assert!(matches!(rep.kind, LineKind::Second));
        prop_assert_eq!(rep.ramification.r, RType::R22);
        prop_assert_eq!(rep.euler_total, 24);
        prop_assert!(rep.checks.all_pass());
    }
}
