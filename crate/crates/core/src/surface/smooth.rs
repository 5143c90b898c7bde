use rayon::prelude::*;
use serde::Serialize;

use super::QuarticSurface;
use crate::error::Result;
use crate::field::{Field, FieldSpec, FiniteField};
use crate::poly::{MultiPoly, UniPoly};

/// Smoothness status of a surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Smoothness {
    Unverified,
    /// No singular point over any field of the scanned tower, up to the given field.
    SmoothUpTo { field: FieldSpec },
    Singular { field: FieldSpec, witness: Vec<String> },
}

impl Smoothness {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Smoothness::SmoothUpTo { .. })
    }
}

/// First common zero in P³(F_q), in chart order, of homogeneous polynomials in 4 variables.
///
/// Chart j has x_j = 1 and x_i = 0 for i > j; the coordinates x_0..x_{j-2} are enumerated and
/// x_{j-1} is found as a root of the gcd of the specialised polynomials.
pub fn scan_common_zeros(polys: &[MultiPoly<FiniteField>]) -> Option<Vec<u64>> {
    let f = polys[0].field().clone();
    let q = f.q();
    for j in (0..4).rev() {
        // specialise x_j = 1, x_{>j} = 0
        let spec: Vec<MultiPoly<FiniteField>> = polys
            .iter()
            .map(|p| {
                let mut s = p.eval_var(j, &1);
                for i in j + 1..4 {
                    s = s.eval_var(i, &0);
                }
                s
            })
            .collect();
        if j == 0 {
            let mut x = vec![0u64; 4];
            x[0] = 1;
            if spec.iter().all(|p| p.is_zero()) {
                return Some(x);
            }
            continue;
        }
        let solve = j - 1;
        let coeffs: Vec<Vec<MultiPoly<FiniteField>>> =
            spec.iter().map(|p| p.coefficients_in(solve)).collect();
        let nfree = solve;
        let count = q.pow(nfree as u32);
        let found = (0..count).into_par_iter().find_map_first(|code| {
            let mut x = vec![0u64; 4];
            let mut c = code;
            for x_i in x.iter_mut().take(nfree) {
                *x_i = c % q;
                c /= q;
            }
            x[j] = 1;
            let mut g: Option<UniPoly<FiniteField>> = None;
            for cs in &coeffs {
                let u = UniPoly::new(&f, cs.iter().map(|c| c.eval(&x)).collect());
                g = Some(match g {
                    None => u,
                    Some(prev) => prev.gcd(&u),
                });
                if g.as_ref().is_some_and(|g| g.deg() == Some(0)) {
                    return None;
                }
            }
            let g = g?;
            let roots = if g.is_zero() {
                vec![0]
            } else {
                f.find_roots(&g).ok()?
            };
            roots.first().map(|&r| {
                x[solve] = r;
                x
            })
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

pub(super) fn check(s: &QuarticSurface<FiniteField>, tower: u32) -> Result<Smoothness> {
    let base = s.field();
    let mut m = 1;
    let mut last = base.spec();
    while m <= tower.max(1) {
        let level = if m == 1 {
            base.clone()
        } else {
            FiniteField::new(base.p(), base.k() * m)?
        };
        let sl = if m == 1 { s.clone() } else { s.base_change(&level)? };
        let partials: Vec<MultiPoly<FiniteField>> =
            (0..4).map(|i| sl.poly().derivative(i)).collect();
        let mut system = partials;
        system.push(sl.poly().clone());
        if let Some(w) = scan_common_zeros(&system) {
            return Ok(Smoothness::Singular {
                field: level.spec(),
                witness: w.iter().map(|c| level.fmt_elem(c)).collect(),
            });
        }
        last = level.spec();
        m *= 2;
    }
    Ok(Smoothness::SmoothUpTo { field: last })
}
