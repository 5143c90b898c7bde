//! Exhaustive line search over a finite field, cell by cell of the Grassmannian.

use rayon::prelude::*;

use crate::field::{Field, FiniteField};
use crate::surface::{ProjLine, QuarticSurface, CHARTS};

/// The quartic as a flat term list for fast evaluation at field points.
struct Compiled {
    field: FiniteField,
    terms: Vec<([usize; 4], u64)>,
}

impl Compiled {
    fn new(s: &QuarticSurface<FiniteField>) -> Self {
        let f = s.poly();
        let terms = f
            .terms()
            .iter()
            .map(|(m, c)| {
                let e = m.exps(4);
                ([e[0] as usize, e[1] as usize, e[2] as usize, e[3] as usize], *c)
            })
            .collect();
        Compiled {
            field: s.field().clone(),
            terms,
        }
    }

    fn eval(&self, x: &[u64; 4]) -> u64 {
        let f = &self.field;
        let mut pw = [[1u64; 5]; 4];
        for i in 0..4 {
            for e in 1..5 {
                pw[i][e] = f.mul(&pw[i][e - 1], &x[i]);
            }
        }
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let mut t = *c;
            for i in 0..4 {
                if e[i] > 0 {
                    t = f.mul(&t, &pw[i][e[i]]);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }
}

/// Points e_pivot + Σ_{k ∈ free} c_k e_k on the surface.
fn cell_points(c: &Compiled, pivot: usize, free: &[usize]) -> Vec<[u64; 4]> {
    let q = c.field.q();
    let count = q.pow(free.len() as u32);
    (0..count)
        .into_par_iter()
        .filter_map(|code| {
            let mut x = [0u64; 4];
            x[pivot] = 1;
            let mut r = code;
            for &k in free {
                x[k] = r % q;
                r /= q;
            }
            (c.eval(&x) == 0).then_some(x)
        })
        .collect()
}

/// All lines of P³(F_q) contained in the surface, sorted by Plücker key.
///
/// A line in cell (i, j) is spanned by P = e_i + Σ_{k>i, k≠j} a_k e_k and
/// Q = e_j + Σ_{k>j} b_k e_k, both on S. The pair spans a line on S iff f(P + cQ) = 0 for three
/// distinct nonzero c, since f(sP + tQ) is then st times a binary quadric with three zeros.
pub fn enumerate_bruteforce(s: &QuarticSurface<FiniteField>) -> Vec<ProjLine<u64>> {
    let c = Compiled::new(s);
    let f = &c.field;
    let few = f.q() < 4;
    let mut out: Vec<ProjLine<u64>> = CHARTS
        .iter()
        .flat_map(|&(i, j)| {
            let pfree: Vec<usize> = (i + 1..4).filter(|&k| k != j).collect();
            let qfree: Vec<usize> = (j + 1..4).collect();
            let ps = cell_points(&c, i, &pfree);
            let qs = cell_points(&c, j, &qfree);
            ps.par_iter()
                .flat_map_iter(|p| {
                    let c = &c;
                    qs.iter().filter_map(move |q| {
                        let on = if few {
                            let l = ProjLine::from_points(f, p, q).expect("independent");
                            s.contains_line(&l)
                        } else {
                            (1..4u64).all(|t| {
                                let x: [u64; 4] =
                                    std::array::from_fn(|k| f.add(&p[k], &f.mul(&t, &q[k])));
                                c.eval(&x) == 0
                            })
                        };
                        if on {
                            ProjLine::from_points(f, p, q)
                        } else {
                            None
                        }
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort();
    out.dedup();
    out
}
