//! Zero-dimensional polynomial systems by iterated resultants and back-substitution.

use crate::field::Field;
use crate::poly::MultiPoly;

#[derive(Debug)]
pub(crate) enum SolveError {
    /// Elimination produced no nonzero univariate eliminant.
    Degenerate,
    /// A variable is free over an infinite field.
    Infinite,
}

/// All common zeros over the base field of `polys`, whose variables must lie in `vars`.
/// Solutions list values in the order of `vars`. Variables are eliminated last to first.
pub(crate) fn solve_system<F: Field>(
    field: &F,
    polys: &[MultiPoly<F>],
    vars: &[usize],
) -> Result<Vec<Vec<F::Elem>>, SolveError> {
    let mut out = solve(field, polys.to_vec(), vars)?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Over F_q only rational solutions are wanted, so exponents are reduced with x^q = x.
fn reduce_frobenius<F: Field>(p: MultiPoly<F>) -> MultiPoly<F> {
    let Some(q) = p.field().order() else {
        return p;
    };
    if q > u32::MAX as u64 || p.terms().iter().all(|(m, _)| m.exps(p.nvars()).iter().all(|&e| (e as u64) < q)) {
        return p;
    }
    let q = q as u32;
    let n = p.nvars();
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let e: Vec<u32> = m
                .exps(n)
                .into_iter()
                .map(|e| if e >= q { (e - 1) % (q - 1) + 1 } else { e })
                .collect();
            (crate::poly::Monomial::from_exps(&e), c.clone())
        })
        .collect();
    MultiPoly::from_terms(p.field(), n, terms)
}

fn clean<F: Field>(polys: Vec<MultiPoly<F>>) -> Option<Vec<MultiPoly<F>>> {
    let mut v: Vec<MultiPoly<F>> = Vec::new();
    for p in polys {
        let p = reduce_frobenius(p);
        if p.is_zero() {
            continue;
        }
        if p.is_constant() {
            return None;
        }
        let p = p.primitive();
        if !v.contains(&p) {
            v.push(p);
        }
    }
    Some(v)
}

fn values_for<F: Field>(
    field: &F,
    univariate: Vec<MultiPoly<F>>,
    v: usize,
) -> Result<Vec<F::Elem>, SolveError> {
    let mut g = None;
    for p in univariate {
        if p.is_zero() {
            continue;
        }
        let u = p.to_uni(v).expect("univariate after substitution");
        g = Some(match g {
            None => u,
            Some(prev) => u.gcd(&prev),
        });
    }
    match g {
        None => field.elements().ok_or(SolveError::Infinite),
        Some(g) if g.deg() == Some(0) => Ok(Vec::new()),
        Some(g) => field.find_roots(&g).map_err(|_| SolveError::Degenerate),
    }
}

fn solve<F: Field>(
    field: &F,
    polys: Vec<MultiPoly<F>>,
    vars: &[usize],
) -> Result<Vec<Vec<F::Elem>>, SolveError> {
    let Some(polys) = clean(polys) else {
        return Ok(Vec::new());
    };
    let Some((&v, rest)) = vars.split_last() else {
        return Ok(vec![Vec::new()]);
    };
    let (with, without): (Vec<_>, Vec<_>) = polys.into_iter().partition(|p| p.has_var(v));
    if rest.is_empty() {
        if with.is_empty() && field.order().is_none() {
            return Err(SolveError::Degenerate);
        }
        return Ok(values_for(field, with, v)?
            .into_iter()
            .map(|r| vec![r])
            .collect());
    }
    let mut reduced = without;
    if with.len() > 1 {
        let pivot = (0..with.len())
            .min_by_key(|&i| (with[i].degree_in(v), with[i].nterms()))
            .unwrap();
        for (i, other) in with.iter().enumerate() {
            if i == pivot {
                continue;
            }
            let r = with[pivot]
                .resultant_in(other, v)
                .expect("variable present");
            reduced.push(r);
        }
    }
    let partial = solve(field, reduced, rest)?;
    let mut out = Vec::new();
    for sol in partial {
        let univariate: Vec<MultiPoly<F>> = with
            .iter()
            .map(|p| {
                rest.iter()
                    .zip(&sol)
                    .fold(p.clone(), |acc, (&var, val)| acc.eval_var(var, val))
            })
            .collect();
        if univariate.iter().any(|p| p.is_constant() && !p.is_zero()) {
            continue;
        }
        for r in values_for(field, univariate, v)? {
            let mut full = sol.clone();
            full.push(r);
            out.push(full);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Rationals};
    use num_rational::BigRational;

    #[test]
    fn circle_and_line_over_f7() {
        let f = FiniteField::new(7, 1).unwrap();
        let x = MultiPoly::var(&f, 2, 0);
        let y = MultiPoly::var(&f, 2, 1);
        // x^2 + y^2 - 1 = 0, x - y = 0  ->  2x^2 = 1, x^2 = 4, x = 2, 5
        let c = x.mul(&x).add(&y.mul(&y)).sub(&MultiPoly::one(&f, 2));
        let l = x.sub(&y);
        let sols = solve_system(&f, &[c, l], &[0, 1]).unwrap();
        assert_eq!(sols, vec![vec![2, 2], vec![5, 5]]);
    }

    #[test]
    fn rational_intersection() {
        let f = Rationals;
        let x = MultiPoly::var(&f, 2, 0);
        let y = MultiPoly::var(&f, 2, 1);
        let one = MultiPoly::one(&f, 2);
        // y = x^2, y = 2x - 1 + 0  ->  (1, 1) double
        let a = y.sub(&x.mul(&x));
        let b = y.sub(&x.scale(&BigRational::from_integer(2.into()))).add(&one);
        let sols = solve_system(&f, &[a, b], &[0, 1]).unwrap();
        let one_q = BigRational::from_integer(1.into());
        assert_eq!(sols, vec![vec![one_q.clone(), one_q]]);
    }

    #[test]
    fn underdetermined_over_q_is_reported() {
        let f = Rationals;
        let x = MultiPoly::var(&f, 2, 0);
        let y = MultiPoly::var(&f, 2, 1);
        assert!(solve_system(&f, &[x.mul(&y)], &[0, 1]).is_err());
    }

    #[test]
    fn underdetermined_over_finite_field_enumerates() {
        let f = FiniteField::new(5, 1).unwrap();
        let x = MultiPoly::var(&f, 2, 0);
        let y = MultiPoly::var(&f, 2, 1);
        // xy = 0 has 9 rational points
        assert_eq!(solve_system(&f, &[x.mul(&y)], &[0, 1]).unwrap().len(), 9);
    }

    #[test]
    fn frobenius_reduction_keeps_rational_points() {
        let f = FiniteField::new(5, 1).unwrap();
        let x = MultiPoly::var(&f, 1, 0);
        // x^5 - x vanishes on F_5
        let p = x.pow(5).sub(&x);
        assert!(reduce_frobenius(p).is_zero());
    }
}
