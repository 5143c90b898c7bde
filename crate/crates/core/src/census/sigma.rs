//! Orbits of σ = diag(ρ, ρ², 1, 1), ρ a primitive cube root of unity.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::surface::{ProjLine, QuarticSurface};

#[derive(Clone, Debug, Serialize)]
pub struct SigmaOrbits {
    /// Orbits as sorted index lists, ordered by smallest member.
    pub orbits: Vec<Vec<usize>>,
    pub fixed: Vec<usize>,
}

impl SigmaOrbits {
    pub fn triples(&self) -> usize {
        self.orbits.iter().filter(|o| o.len() == 3).count()
    }
}

pub fn sigma_matrix<F: Field>(f: &F, rho: &F::Elem) -> Matrix<F::Elem> {
    let d = [rho.clone(), f.mul(rho, rho), f.one(), f.one()];
    (0..4)
        .map(|i| (0..4).map(|j| if i == j { d[i].clone() } else { f.zero() }).collect())
        .collect()
}

/// True iff f∘σ is a scalar multiple of f.
pub fn is_sigma_invariant<F: Field>(s: &QuarticSurface<F>, rho: &F::Elem) -> Result<bool> {
    let f = s.field();
    let t = s.transform(&sigma_matrix(f, rho))?;
    let (a, b) = (s.poly(), t.poly());
    let (m, c) = a.leading().expect("nonzero");
    let ratio = f.div(&b.coeff(*m), c).expect("nonzero");
    Ok(a.scale(&ratio) == *b)
}

/// Partition of `lines` (all on S) into σ-orbits. Errors if S is not σ-invariant, if ρ is not a
/// primitive cube root of unity, or if the image of a line is missing from the list.
pub fn sigma_orbits<F: Field>(
    s: &QuarticSurface<F>,
    lines: &[ProjLine<F::Elem>],
    rho: &F::Elem,
) -> Result<SigmaOrbits> {
    let f = s.field();
    if f.is_one(rho) || !f.is_one(&f.pow(rho, 3)) {
        return Err(Error::InvalidField("not a primitive cube root of unity".into()));
    }
    if !is_sigma_invariant(s, rho)? {
        return Err(Error::NotSigmaInvariant);
    }
    let sig = sigma_matrix(f, rho);
    let image: Vec<usize> = lines
        .iter()
        .map(|l| {
            let m = l.transform(f, &sig).expect("invertible");
            lines
                .iter()
                .position(|x| *x == m)
                .ok_or_else(|| Error::Inconsistent("line list is not closed under sigma".into()))
        })
        .collect::<Result<_>>()?;
    let mut seen = vec![false; lines.len()];
    let mut orbits = Vec::new();
    for start in 0..lines.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut cur = image[start];
        while cur != start {
            seen[cur] = true;
            orbit.push(cur);
            cur = image[cur];
        }
        orbit.sort_unstable();
        if 3 % orbit.len() != 0 {
            return Err(Error::Inconsistent(format!("orbit of size {}", orbit.len())));
        }
        orbits.push(orbit);
    }
    let fixed = orbits
        .iter()
        .filter(|o| o.len() == 1)
        .map(|o| o[0])
        .collect();
    Ok(SigmaOrbits { orbits, fixed })
}
