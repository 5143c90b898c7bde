//! Line census: enumeration over finite fields, tower stabilization, incidence graph and
//! orbits of the order-3 automorphism.

mod brute;
mod elim;
pub mod graph;
pub mod sigma;
pub(crate) mod solve;

pub use brute::enumerate_bruteforce;
pub use elim::enumerate_elimination;
pub use graph::{incidence_graph, IncidenceGraph, Triple, TripleKind};
pub use sigma::{sigma_orbits, SigmaOrbits};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::field::{Field, FieldSpec, FiniteField, Rationals};
use crate::poly::MultiPoly;
use crate::surface::{LineRecord, ProjLine, QuarticSurface};

/// Lines above this count contradict the flecnodal budget (characteristic ≥ 5).
pub const LINE_BUDGET: usize = 80;
/// Largest field size for which [`Method::Auto`] picks the exhaustive search.
pub const BRUTE_FORCE_LIMIT: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Auto,
    BruteForce,
    Elimination,
}

/// Lines over F_q by the chosen method.
pub fn enumerate(
    s: &QuarticSurface<FiniteField>,
    method: Method,
    seed: u64,
) -> Result<Vec<ProjLine<u64>>> {
    match method {
        Method::BruteForce => Ok(enumerate_bruteforce(s)),
        Method::Elimination => enumerate_elimination(s, seed),
        Method::Auto if s.field().q() <= BRUTE_FORCE_LIMIT => Ok(enumerate_bruteforce(s)),
        Method::Auto => enumerate_elimination(s, seed),
    }
}

/// The extension degrees m = 1, 2, 4, ... up to `tower`: each field contains the previous one.
pub fn tower_chain(tower: u32) -> Vec<u32> {
    let mut out = vec![1];
    while out.last().unwrap() * 2 <= tower.max(1) {
        let m = out.last().unwrap() * 2;
        out.push(m);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusLevel {
    pub field: FieldSpec,
    pub count: usize,
}

#[derive(Clone, Debug)]
pub struct CensusLine {
    pub line: ProjLine<u64>,
    /// Smallest d with all Plücker coordinates in F_{p^d}.
    pub def_degree: u32,
}

/// Outcome of a tower census over F_{p^k}, F_{p^{2k}}, ...
#[derive(Clone, Debug)]
pub struct CensusResult {
    pub field: FiniteField,
    pub levels: Vec<CensusLevel>,
    pub lines: Vec<CensusLine>,
    pub stabilized: bool,
    /// Mathematically surprising observations (never silently dropped).
    pub findings: Vec<String>,
}

impl CensusResult {
    pub fn count(&self) -> usize {
        self.lines.len()
    }

    pub fn plain_lines(&self) -> Vec<ProjLine<u64>> {
        self.lines.iter().map(|l| l.line.clone()).collect()
    }

    /// A census over a single field, no tower.
    pub fn single(field: &FiniteField, lines: Vec<ProjLine<u64>>) -> Self {
        let lines = with_def_degrees(field, lines);
        CensusResult {
            field: field.clone(),
            levels: vec![CensusLevel {
                field: field.spec(),
                count: lines.len(),
            }],
            lines,
            stabilized: false,
            findings: Vec::new(),
        }
    }
}

fn with_def_degrees(field: &FiniteField, lines: Vec<ProjLine<u64>>) -> Vec<CensusLine> {
    let k = field.k();
    lines
        .into_iter()
        .map(|line| {
            let def_degree = (1..=k)
                .filter(|d| k.is_multiple_of(*d))
                .find(|&d| line.pluecker().iter().all(|&c| field.in_subfield(c, d)))
                .unwrap_or(k);
            CensusLine { line, def_degree }
        })
        .collect()
}

/// Census over the divisor chain of extensions of the surface's field, stopping when two
/// consecutive levels agree.
///
/// More than [`LINE_BUDGET`] lines in characteristic ≥ 5 is an error. More than 64 on a surface
/// verified smooth is recorded as a finding.
pub fn stabilized_count(
    s: &QuarticSurface<FiniteField>,
    tower: u32,
    method: Method,
    seed: u64,
    exec: &Exec,
) -> Result<CensusResult> {
    let base = s.field().clone();
    let p = base.p();
    let mut levels: Vec<CensusLevel> = Vec::new();
    let mut last: Option<(FiniteField, Vec<ProjLine<u64>>)> = None;
    let mut stabilized = false;
    for m in tower_chain(tower) {
        let field = FiniteField::new(p, base.k() * m)?;
        let sm = if m == 1 { s.clone() } else { s.base_change(&field)? };
        let lines = exec.install(|| enumerate(&sm, method, seed))?;
        if p >= 5 && lines.len() > LINE_BUDGET {
            return Err(Error::BudgetViolated(lines.len()));
        }
        let count = lines.len();
        let agree = levels.last().is_some_and(|l| l.count == count);
        if let Some(prev) = levels.last() {
            if count < prev.count {
                return Err(Error::Inconsistent("line count decreased along the tower".into()));
            }
        }
        levels.push(CensusLevel {
            field: field.spec(),
            count,
        });
        last = Some((field, lines));
        if agree {
            stabilized = true;
            break;
        }
    }
    let (field, lines) = last.expect("at least one level");
    let mut findings = Vec::new();
    if p >= 5 && s.smoothness().is_smooth() && lines.len() > 64 {
        findings.push(format!(
            "{} lines on a surface verified smooth, more than 64",
            lines.len()
        ));
    }
    Ok(CensusResult {
        lines: with_def_degrees(&field, lines),
        field,
        levels,
        stabilized,
        findings,
    })
}

/// Stabilized counts of a rational quartic at several good primes.
#[derive(Clone, Debug, Serialize)]
pub struct RationalCensus {
    pub per_prime: Vec<(u64, usize, bool)>,
    /// The common count when all stabilized counts agree.
    pub count: Option<usize>,
}

/// Reduces modulo the first `nprimes` primes ≥ 7 with a smooth reduction over F_p and runs
/// [`stabilized_count`] at each. Disagreement leaves `count` empty (bad reduction suspected).
pub fn rational_census(
    f: &MultiPoly<Rationals>,
    nprimes: usize,
    tower: u32,
    seed: u64,
    exec: &Exec,
) -> Result<RationalCensus> {
    let mut per_prime = Vec::new();
    let mut p = 7u64;
    while per_prime.len() < nprimes {
        if crate::field::is_prime(p) {
            let field = FiniteField::new(p, 1)?;
            if let Ok(mut s) = QuarticSurface::from_rational(f, &field) {
                let sm = s.smoothness_check(1)?;
                if sm.is_smooth() {
                    s.set_smoothness(sm);
                    let c = stabilized_count(&s, tower, Method::Auto, seed, exec)?;
                    per_prime.push((p, c.count(), c.stabilized));
                }
            }
        }
        p += 2;
        if p > 1000 {
            return Err(Error::Unsupported("no good primes below 1000".into()));
        }
    }
    let first = per_prime[0].1;
    let count = per_prime
        .iter()
        .all(|&(_, c, st)| st && c == first)
        .then_some(first);
    Ok(RationalCensus { per_prime, count })
}

/// Serializable census line.
#[derive(Clone, Debug, Serialize)]
pub struct CensusLineRecord {
    #[serde(flatten)]
    pub line: LineRecord,
    pub def_degree: u32,
}

impl CensusLineRecord {
    pub fn new(f: &FiniteField, l: &CensusLine) -> Self {
        CensusLineRecord {
            line: LineRecord::new(f, &l.line),
            def_degree: l.def_degree,
        }
    }
}

#[cfg(test)]
mod tests;
