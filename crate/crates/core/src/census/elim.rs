//! Line enumeration by elimination: per cell, the five containment equations in the cell
//! coordinates are reduced to a univariate eliminant by iterated resultants.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::solve::solve_system;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Matrix};
use crate::poly::MultiPoly;
use crate::surface::{ProjLine, QuarticSurface, CHARTS};

const RETRIES: usize = 8;

/// Containment equations of the cell (i, j). Variables 0..np are the free coordinates of P,
/// np..np+nq those of Q. Returns the equations and the two lists of free positions.
pub(crate) fn cell_equations<F: Field>(
    s: &QuarticSurface<F>,
    (i, j): (usize, usize),
) -> (Vec<MultiPoly<F>>, Vec<usize>, Vec<usize>) {
    let f = s.field();
    let pfree: Vec<usize> = (i + 1..4).filter(|&k| k != j).collect();
    let qfree: Vec<usize> = (j + 1..4).collect();
    let n = pfree.len() + qfree.len();
    let (sv, tv) = (n, n + 1);
    let nv = n + 2;
    let coord = |pivot: usize, free: &[usize], off: usize, k: usize| {
        if k == pivot {
            MultiPoly::one(f, nv)
        } else if let Some(pos) = free.iter().position(|&x| x == k) {
            MultiPoly::var(f, nv, off + pos)
        } else {
            MultiPoly::zero(f, nv)
        }
    };
    let images: Vec<MultiPoly<F>> = (0..4)
        .map(|k| {
            let p = coord(i, &pfree, 0, k);
            let q = coord(j, &qfree, pfree.len(), k);
            p.mul(&MultiPoly::var(f, nv, sv))
                .add(&q.mul(&MultiPoly::var(f, nv, tv)))
        })
        .collect();
    let g = s.poly().compose(&images);
    let eqs = (0..=4u32)
        .map(|e| {
            let terms = g
                .terms()
                .iter()
                .filter(|(m, _)| m.exp(tv) == e)
                .map(|(m, c)| (m.with_exp(sv, 0).with_exp(tv, 0), c.clone()))
                .collect();
            MultiPoly::from_terms(f, nv, terms)
        })
        .collect();
    (eqs, pfree, qfree)
}

fn cell_lines<F: Field>(
    s: &QuarticSurface<F>,
    chart: (usize, usize),
) -> Option<Vec<ProjLine<F::Elem>>> {
    let f = s.field();
    let (eqs, pfree, qfree) = cell_equations(s, chart);
    let vars: Vec<usize> = (0..pfree.len() + qfree.len()).collect();
    let sols = solve_system(f, &eqs, &vars).ok()?;
    let mut out = Vec::new();
    for sol in sols {
        let mut p = vec![f.zero(); 4];
        let mut q = vec![f.zero(); 4];
        p[chart.0] = f.one();
        q[chart.1] = f.one();
        for (k, &pos) in pfree.iter().enumerate() {
            p[pos] = sol[k].clone();
        }
        for (k, &pos) in qfree.iter().enumerate() {
            q[pos] = sol[pfree.len() + k].clone();
        }
        let l = ProjLine::from_points(f, &p, &q)?;
        if s.contains_line(&l) {
            out.push(l);
        }
    }
    Some(out)
}

fn lines_direct<F: Field>(s: &QuarticSurface<F>) -> Option<Vec<ProjLine<F::Elem>>> {
    let per: Vec<Option<Vec<ProjLine<F::Elem>>>> =
        CHARTS.par_iter().map(|&c| cell_lines(s, c)).collect();
    let mut out = Vec::new();
    for p in per {
        out.extend(p?);
    }
    Some(out)
}

fn random_invertible<F: Field>(f: &F, rng: &mut ChaCha8Rng) -> Matrix<F::Elem> {
    loop {
        let m: Matrix<F::Elem> = (0..4)
            .map(|_| (0..4).map(|_| f.from_i64(rng.gen_range(-9..=9))).collect())
            .collect();
        if linalg::inverse(f, &m).is_some() {
            return m;
        }
    }
}

/// All lines on S defined over the base field, sorted by Plücker key.
///
/// When elimination degenerates in some cell (a zero eliminant over an infinite field), the
/// computation is repeated in random coordinates; if every attempt degenerates the lines are
/// reported as non-isolated. Over F_q exponents are reduced with x^q = x and a vanishing
/// eliminant falls back to trying every value of that coordinate.
pub fn enumerate_elimination<F: Field>(
    s: &QuarticSurface<F>,
    seed: u64,
) -> Result<Vec<ProjLine<F::Elem>>> {
    let f = s.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..RETRIES {
        let found = if attempt == 0 {
            lines_direct(s)
        } else {
            let a = random_invertible(f, &mut rng);
            let t = s.transform(&a)?;
            lines_direct(&t).map(|ls| {
                ls.iter()
                    .map(|l| l.transform(f, &a).expect("invertible"))
                    .collect()
            })
        };
        if let Some(mut ls) = found {
            ls.sort();
            ls.dedup();
            debug_assert!(ls.iter().all(|l| s.contains_line(l)));
            return Ok(ls);
        }
    }
    Err(Error::NonIsolated)
}
