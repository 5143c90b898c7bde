//! Points of S admitting a line with contact order at least four, and the line budgets that
//! follow from the degree-20 flecnodal divisor.

use rayon::prelude::*;
use serde::Serialize;

use crate::census::graph::IncidenceGraph;
use crate::census::CensusResult;
use crate::error::{Error, Result};
use crate::fibration::{classify_plane_cubic, Kodaira};
use crate::field::{Field, FiniteField};
use crate::linalg;
use crate::poly::{det_poly, sylvester_formal, BinaryForm, MultiPoly, UniPoly, P1};
use crate::surface::{lines_meet, LineFrame, Meet, ProjLine, QuarticSurface};

/// Number of points sampled on each line for the membership check.
pub const LINE_SAMPLES: usize = 5;
/// A curve of degree c not in the flecnodal support meets it in at most 20c points; one more
/// sample than that certifies a conic.
pub const CONIC_SAMPLES: usize = 41;

#[derive(Clone, Debug)]
pub struct FlecnodalSample<F: Field> {
    pub point: Vec<F::Elem>,
    /// Coefficient of u² in f(P + u·v), v = s·v1 + t·v2.
    pub a: BinaryForm<F>,
    /// Coefficient of u³.
    pub b: BinaryForm<F>,
    pub res: F::Elem,
    pub member: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlecnodalRecord {
    pub point: Vec<String>,
    pub member: bool,
    pub res_value: String,
}

impl<F: Field> FlecnodalSample<F> {
    pub fn record(&self, f: &F) -> FlecnodalRecord {
        FlecnodalRecord {
            point: self.point.iter().map(|c| f.fmt_elem(c)).collect(),
            member: self.member,
            res_value: f.fmt_elem(&self.res),
        }
    }
}

/// w_j = n_i e_j − n_j e_i: tangent vectors at a point with gradient n, for the pivot i.
fn tangent_vector<E: Clone, F: Field<Elem = E>>(f: &F, n: &[E], pivot: usize, j: usize) -> Vec<E> {
    let mut w = vec![f.zero(); 4];
    w[j] = n[pivot].clone();
    w[pivot] = f.neg(&n[j]);
    w
}

/// Binary forms of degrees 2 and 3 in (s, t): the u² and u³ coefficients of f(P + u(s v1 + t v2)).
fn contact_forms<F: Field>(
    s: &QuarticSurface<F>,
    p: &[F::Elem],
    v1: &[F::Elem],
    v2: &[F::Elem],
) -> Result<(BinaryForm<F>, BinaryForm<F>)> {
    let f = s.field();
    let var = |i| MultiPoly::var(f, 3, i);
    let images: Vec<MultiPoly<F>> = (0..4)
        .map(|i| {
            MultiPoly::constant(f, 3, p[i].clone())
                .add(&var(2).mul(&var(0).scale(&v1[i]).add(&var(1).scale(&v2[i]))))
        })
        .collect();
    let g = s.poly().compose(&images);
    let by_u = g.coefficients_in(2);
    let layer = |k: usize| by_u.get(k).cloned().unwrap_or_else(|| MultiPoly::zero(f, 3));
    // the s^i t^(d-i) coefficients, with s = var 0 and t = var 1
    let a = BinaryForm::from_multi(&layer(2), 0, 1, 2)?;
    let b = BinaryForm::from_multi(&layer(3), 0, 1, 3)?;
    Ok((a, b))
}

/// Membership of P in supp 𝓕_S with the tangent directions spanned from the given pivot
/// coordinate; any pivot with nonzero gradient entry gives the same verdict.
pub fn flecnodal_member_with<F: Field>(
    s: &QuarticSurface<F>,
    p: &[F::Elem],
    pivot: usize,
) -> Result<FlecnodalSample<F>> {
    let f = s.field();
    if !s.contains_point(p) {
        return Err(Error::PointNotOnSurface);
    }
    let n = s.gradient(p);
    if n.iter().all(|c| f.is_zero(c)) {
        return Err(Error::SingularPoint(
            p.iter().map(|c| f.fmt_elem(c)).collect::<Vec<_>>().join(":"),
        ));
    }
    if f.is_zero(&n[pivot]) {
        return Err(Error::Inconsistent(format!("gradient vanishes at pivot {pivot}")));
    }
    let others: Vec<usize> = (0..4).filter(|&j| j != pivot).collect();
    let pair = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .map(|(a, b)| {
            (
                tangent_vector(f, &n, pivot, others[a]),
                tangent_vector(f, &n, pivot, others[b]),
            )
        })
        .find(|(v1, v2)| linalg::rank(f, &vec![p.to_vec(), v1.clone(), v2.clone()]) == 3)
        .expect("tangent plane has dimension 3");
    let (a, b) = contact_forms(s, p, &pair.0, &pair.1)?;
    let res = a.resultant(&b);
    Ok(FlecnodalSample {
        point: p.to_vec(),
        member: f.is_zero(&res),
        a,
        b,
        res,
    })
}

/// Pointwise flecnodal test: P has a tangent line with contact order ≥ 4 iff Res(A, B) = 0.
/// The pivot is the first coordinate where the gradient is nonzero.
pub fn flecnodal_member<F: Field>(s: &QuarticSurface<F>, p: &[F::Elem]) -> Result<FlecnodalSample<F>> {
    let n = s.gradient(p);
    let pivot = (0..4).find(|&i| !s.field().is_zero(&n[i])).unwrap_or(0);
    flecnodal_member_with(s, p, pivot)
}

/// `count` distinct points of a line over its field: (1:0), (0:1), (1:1), (1:2), ...
pub fn line_samples(f: &FiniteField, l: &ProjLine<u64>, count: usize) -> Vec<Vec<u64>> {
    let mut params = vec![(f.one(), f.zero()), (f.zero(), f.one())];
    params.extend((1..f.q()).map(|c| (f.one(), c)));
    params
        .into_iter()
        .take(count)
        .map(|(a, b)| l.point(f, &a, &b))
        .collect()
}

/// True when every sampled point of the line is flecnodal.
pub fn line_is_flecnodal(s: &QuarticSurface<FiniteField>, l: &ProjLine<u64>) -> Result<bool> {
    for p in line_samples(s.field(), l, LINE_SAMPLES) {
        if !flecnodal_member(s, &p)?.member {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A conic on S with a rational parametrization: four binary quadratic forms in (τ, ρ),
/// given as polynomials in a 2-variable ring.
#[derive(Clone, Debug)]
pub struct RationalConic<F: Field> {
    pub coords: Vec<MultiPoly<F>>,
}

impl<F: Field> RationalConic<F> {
    pub fn point(&self, tau: &P1<F::Elem>) -> Vec<F::Elem> {
        let f = self.coords[0].field();
        let (x, y) = tau.coords(f);
        self.coords.iter().map(|c| c.eval(&[x.clone(), y.clone()])).collect()
    }

    /// Parametrizes the plane conic C(u, v, σ) = 0 through a rational point `p0` by the lines
    /// through `p0`, then maps plane coordinates to P³ with `embed`.
    pub fn from_plane_conic(
        c: &MultiPoly<F>,
        p0: &[F::Elem],
        embed: impl Fn(&[MultiPoly<F>]) -> Vec<MultiPoly<F>>,
    ) -> Result<Self> {
        let f = c.field();
        // directions d(τ, ρ) = τ·d1 + ρ·d2 complementing p0
        let basis = linalg::kernel(f, &vec![p0.to_vec()], 3);
        let (d1, d2) = (&basis[0], &basis[1]);
        let tau = MultiPoly::var(f, 2, 0);
        let rho = MultiPoly::var(f, 2, 1);
        let d: Vec<MultiPoly<F>> = (0..3)
            .map(|i| tau.scale(&d1[i]).add(&rho.scale(&d2[i])))
            .collect();
        // second intersection of p0 + μ d: point = C(d)·p0 − (∇C(p0)·d)·d
        let grad: Vec<F::Elem> = (0..3).map(|i| c.derivative(i).eval(p0)).collect();
        let cd = c.compose(&d);
        let gd = (0..3).fold(MultiPoly::zero(f, 2), |acc, i| acc.add(&d[i].scale(&grad[i])));
        let plane: Vec<MultiPoly<F>> = (0..3)
            .map(|i| cd.scale(&p0[i]).sub(&gd.mul(&d[i])))
            .collect();
        if plane.iter().all(MultiPoly::is_zero) {
            return Err(Error::Inconsistent("conic is degenerate".into()));
        }
        Ok(RationalConic {
            coords: embed(&plane),
        })
    }
}

/// The residual conic of a line + conic fibre of the pencil through `l`, at a rational place,
/// parametrized from one of the fibre's nodes.
pub fn residual_conic<F: Field>(
    s: &QuarticSurface<F>,
    l: &ProjLine<F::Elem>,
    t: &P1<F::Elem>,
) -> Result<RationalConic<F>> {
    let frame = LineFrame::new(s, l)?;
    let cubic = frame.residual_cubic(t)?;
    let class = classify_plane_cubic(&cubic)?;
    if !matches!(class.kind, Kodaira::I(2) | Kodaira::III) || class.lines.len() != 1 {
        return Err(Error::Unsupported(format!(
            "fibre of type {} has no rational residual conic",
            class.kind
        )));
    }
    let f = s.field();
    let lf = &class.lines[0];
    let linear = (0..3).fold(MultiPoly::zero(f, 3), |acc, i| {
        acc.add(&MultiPoly::var(f, 3, i).scale(&lf[i]))
    });
    let conic = cubic
        .div_exact(&linear)
        .ok_or_else(|| Error::Inconsistent("line component does not divide the fibre".into()))?;
    let p0 = class
        .singular_points
        .first()
        .ok_or_else(|| Error::Inconsistent("fibre without a rational singular point".into()))?;
    let (t3, t4) = crate::surface::pencil_coords(f, t);
    let m = frame.matrix().clone();
    RationalConic::from_plane_conic(&conic, p0, |uvs| {
        // y = (u, v, σ t3, σ t4), x = M y
        let y = [
            uvs[0].clone(),
            uvs[1].clone(),
            uvs[2].scale(&t3),
            uvs[2].scale(&t4),
        ];
        (0..4)
            .map(|i| (0..4).fold(MultiPoly::zero(f, 2), |acc, j| acc.add(&y[j].scale(&m[i][j]))))
            .collect()
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConicCertificate {
    pub samples: usize,
    pub members: usize,
    /// A sampled point that is not flecnodal.
    pub witness: Option<Vec<String>>,
    /// True when the conic is certified not to be a component of supp 𝓕_S.
    pub not_component: bool,
}

/// Samples 41 distinct points of the conic. A non-member certifies that the conic is not a
/// component of the flecnodal support; 41 members certify that it is one.
pub fn conic_nonmembership(
    s: &QuarticSurface<FiniteField>,
    conic: &RationalConic<FiniteField>,
) -> Result<ConicCertificate> {
    let f = s.field();
    for c in &conic.coords {
        if c.total_degree().is_some_and(|d| d != 2) {
            return Err(Error::Degree("conic parametrization must be quadratic".into()));
        }
    }
    if f.q() + 1 < CONIC_SAMPLES as u64 {
        return Err(Error::EnlargeField(format!(
            "{} has fewer than {CONIC_SAMPLES} points on a conic",
            f.spec()
        )));
    }
    let mut points: Vec<Vec<u64>> = Vec::new();
    let params = std::iter::once(P1::Infinity).chain((0..f.q()).map(P1::Finite));
    for t in params {
        let p = conic.point(&t);
        let Some(p) = linalg::normalize(f, &p) else { continue };
        if !s.contains_point(&p) {
            return Err(Error::PointNotOnSurface);
        }
        if !points.contains(&p) {
            points.push(p);
        }
        if points.len() == CONIC_SAMPLES {
            break;
        }
    }
    if points.len() < CONIC_SAMPLES {
        return Err(Error::EnlargeField("conic has too few rational points".into()));
    }
    let samples: Vec<FlecnodalSample<FiniteField>> = points
        .par_iter()
        .map(|p| flecnodal_member(s, p))
        .collect::<Result<_>>()?;
    let members = samples.iter().filter(|x| x.member).count();
    let witness = samples
        .iter()
        .find(|x| !x.member)
        .map(|x| x.point.iter().map(|c| f.fmt_elem(c)).collect());
    Ok(ConicCertificate {
        samples: samples.len(),
        members,
        not_component: witness.is_some(),
        witness,
    })
}

/// Res(A, B) along a rational curve x = P(τ, 1), with tangent vectors from the given pivot and
/// the two other coordinates `pair`. Extraneous factors depend on the choice; the flecnodal
/// part does not.
fn resultant_along<F: Field>(
    s: &QuarticSurface<F>,
    curve: &[MultiPoly<F>],
    pivot: usize,
    pair: [usize; 2],
) -> UniPoly<F> {
    let f = s.field();
    // ring: s, t, u, τ
    let tau_ring: Vec<MultiPoly<F>> = curve
        .iter()
        .map(|c| c.eval_var(1, &f.one()).remap_vars(&[3, 0], 4))
        .collect();
    let n: Vec<MultiPoly<F>> = (0..4)
        .map(|i| s.poly().derivative(i).with_nvars(4).compose(&tau_ring))
        .collect();
    let w = |j: usize| -> Vec<MultiPoly<F>> {
        (0..4)
            .map(|k| {
                if k == j {
                    n[pivot].clone()
                } else if k == pivot {
                    n[j].neg()
                } else {
                    MultiPoly::zero(f, 4)
                }
            })
            .collect()
    };
    let (v1, v2) = (w(pair[0]), w(pair[1]));
    let var = |i| MultiPoly::var(f, 4, i);
    let images: Vec<MultiPoly<F>> = (0..4)
        .map(|i| {
            tau_ring[i].add(&var(2).mul(&var(0).mul(&v1[i]).add(&var(1).mul(&v2[i]))))
        })
        .collect();
    let g = s.poly().with_nvars(4).compose(&images);
    let by_u = g.coefficients_in(2);
    let layer = |k: usize| {
        by_u.get(k)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(f, 4))
            .eval_var(1, &f.one())
            .coefficients_in(0)
    };
    let m = sylvester_formal(&layer(2), &layer(3), 2, 3, f, 4);
    det_poly(&m).to_uni(3).expect("only τ remains")
}

/// Degree of the flecnodal divisor cut on a rational curve of degree e (expected 20·e):
/// the degree of the common part of Res(A, B) over several tangent-basis choices, counting
/// the point τ = ∞ through the formal degree 44·e.
pub fn flecnodal_degree_on_curve<F: Field>(s: &QuarticSurface<F>, curve: &[MultiPoly<F>]) -> Result<usize> {
    let e = curve[0].total_degree().unwrap_or(0) as usize;
    let formal = 44 * e;
    let mut common: Option<UniPoly<F>> = None;
    let mut at_infinity = usize::MAX;
    for pivot in 0..4 {
        let others: Vec<usize> = (0..4).filter(|&j| j != pivot).collect();
        for pair in [[others[0], others[1]], [others[0], others[2]], [others[1], others[2]]] {
            let r = resultant_along(s, curve, pivot, pair);
            if r.is_zero() {
                continue;
            }
            at_infinity = at_infinity.min(formal - r.deg().unwrap_or(0));
            common = Some(match common {
                None => r,
                Some(c) => c.gcd(&r),
            });
        }
    }
    let common = common.ok_or_else(|| {
        Error::Inconsistent("curve lies in the flecnodal support for every basis".into())
    })?;
    Ok(common.deg().unwrap_or(0) + at_infinity)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConicBudget {
    pub line: usize,
    pub partner: usize,
    /// Lines of the census meeting the residual conic.
    pub incident: usize,
    pub within_bound: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BudgetReport {
    pub count: usize,
    pub count_ok: bool,
    pub max_degree: usize,
    /// Lines meeting more than 20 others, with their degree.
    pub degree_violations: Vec<(usize, usize)>,
    /// Lines failing pointwise flecnodal membership at a sample.
    pub membership_failures: Vec<usize>,
    pub conics: Vec<ConicBudget>,
    pub findings: Vec<String>,
}

impl BudgetReport {
    pub fn pass(&self) -> bool {
        self.findings.is_empty()
    }
}

/// The plane conic residual to two meeting lines a, b ⊂ S in their common plane.
struct ResidualConic {
    plane: Vec<u64>,
    /// x = basis · w for points of the plane; `back` recovers w from x.
    back: linalg::Matrix<u64>,
    conic: MultiPoly<FiniteField>,
}

impl ResidualConic {
    fn new(s: &QuarticSurface<FiniteField>, a: &ProjLine<u64>, b: &ProjLine<u64>) -> Option<Self> {
        let f = s.field();
        let x = if a.contains_point(f, &b.basis()[0]) { &b.basis()[1] } else { &b.basis()[0] };
        let m = vec![a.basis()[0].clone(), a.basis()[1].clone(), x.clone()];
        let plane = linalg::normalize(f, &linalg::kernel(f, &m, 4)[0])?;
        let pivot = (0..4).find(|&i| plane[i] != 0)?;
        let mut full = linalg::kernel(f, &vec![plane.clone()], 4);
        let mut e = vec![0; 4];
        e[pivot] = 1;
        full.push(e);
        // columns of B are the plane basis and a complement
        let bmat: linalg::Matrix<u64> = (0..4).map(|i| (0..4).map(|j| full[j][i]).collect()).collect();
        let back = linalg::inverse(f, &bmat)?;
        let w = |i| MultiPoly::var(f, 3, i);
        let images: Vec<MultiPoly<FiniteField>> = (0..4)
            .map(|i| (0..3).fold(MultiPoly::zero(f, 3), |acc, j| acc.add(&w(j).scale(&bmat[i][j]))))
            .collect();
        let restricted = s.poly().compose(&images);
        let coords = |x: &[u64]| linalg::mat_vec(f, &back, x)[..3].to_vec();
        let linear = |l: &ProjLine<u64>| {
            let (p, q) = (coords(&l.basis()[0]), coords(&l.basis()[1]));
            let c = |i: usize, j: usize| f.sub(&f.mul(&p[i], &q[j]), &f.mul(&p[j], &q[i]));
            let form = [c(1, 2), c(2, 0), c(0, 1)];
            (0..3).fold(MultiPoly::zero(f, 3), |acc, i| acc.add(&w(i).scale(&form[i])))
        };
        let conic = restricted.div_exact(&linear(a))?.div_exact(&linear(b))?;
        Some(ResidualConic { plane, back, conic })
    }

    fn contains_line(&self, f: &FiniteField, m: &ProjLine<u64>) -> bool {
        m.basis().iter().all(|p| linalg::dot(f, &self.plane, p) == 0)
    }

    /// Whether a line not in the plane meets the conic.
    fn meets(&self, f: &FiniteField, m: &ProjLine<u64>) -> bool {
        let (p, q) = (&m.basis()[0], &m.basis()[1]);
        let (hp, hq) = (linalg::dot(f, &self.plane, p), linalg::dot(f, &self.plane, q));
        let x: Vec<u64> = (0..4)
            .map(|i| f.sub(&f.mul(&hq, &p[i]), &f.mul(&hp, &q[i])))
            .collect();
        let w = linalg::mat_vec(f, &self.back, &x);
        f.is_zero(&self.conic.eval(&w[..3]))
    }
}

/// Line budgets: at most 80 lines, each meeting at most 20 others, every line flecnodal at
/// sampled points, and residual conics of line + conic plane sections met by at most 40 lines.
pub fn line_budget_audit(
    s: &QuarticSurface<FiniteField>,
    census: &CensusResult,
    graph: &IncidenceGraph,
) -> Result<BudgetReport> {
    let f = s.field();
    let lines = census.plain_lines();
    let mut findings = Vec::new();
    let count = lines.len();
    let count_ok = count <= crate::census::LINE_BUDGET;
    if !count_ok {
        findings.push(format!("{count} lines exceed the budget of 80"));
    }
    let degree_violations: Vec<(usize, usize)> = graph
        .degrees
        .iter()
        .enumerate()
        .filter(|(_, &d)| d > 20)
        .map(|(i, &d)| (i, d))
        .collect();
    for (i, d) in &degree_violations {
        findings.push(format!("line {i} meets {d} > 20 lines"));
    }
    let membership: Vec<bool> = lines
        .par_iter()
        .map(|l| line_is_flecnodal(s, l))
        .collect::<Result<_>>()?;
    let membership_failures: Vec<usize> = membership
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i)
        .collect();
    for i in &membership_failures {
        findings.push(format!("line {i} is not flecnodal at a sampled point"));
    }
    let mut conics = Vec::new();
    for (a, b) in graph.edges.iter().copied() {
        let Some(c) = ResidualConic::new(s, &lines[a], &lines[b]) else {
            continue;
        };
        let rest: Vec<usize> = (0..count).filter(|&m| m != a && m != b).collect();
        if rest.iter().any(|&m| c.contains_line(f, &lines[m])) {
            continue;
        }
        let incident = 2 + rest.iter().filter(|&&m| c.meets(f, &lines[m])).count();
        let within_bound = incident <= 40;
        if !within_bound {
            findings.push(format!("conic residual to lines {a}, {b} meets {incident} > 40 lines"));
        }
        conics.push(ConicBudget {
            line: a,
            partner: b,
            incident,
            within_bound,
        });
    }
    Ok(BudgetReport {
        count,
        count_ok,
        max_degree: graph.max_degree(),
        degree_violations,
        membership_failures,
        conics,
        findings,
    })
}

/// Whether two lines of a list meet, for callers without a graph.
pub fn meets(f: &FiniteField, a: &ProjLine<u64>, b: &ProjLine<u64>) -> bool {
    matches!(lines_meet(f, a, b), Meet::Point(_))
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::census::{enumerate_bruteforce, graph::incidence_graph};
    use crate::poly::parse::Bindings;
    use crate::surface::io;

    fn surface(text: &str, p: u64) -> QuarticSurface<FiniteField> {
        let f = FiniteField::new(p, 1).unwrap();
        let poly = io::parse_quartic(text, &Bindings::new()).unwrap();
        QuarticSurface::from_rational(&poly, &f).unwrap()
    }

    /// A 𝒵-member with x3·x4 | g: q = x3² + 3x3x4 − 2x4², g = x3x4(x3² − 5x3x4 + 7x4²).
    const Z20: &str = "x3*x1^3 + x4*x2^3 + x1*x2*(x3^2 + 3*x3*x4 - 2*x4^2) + x3*x4*(x3^2 - 5*x3*x4 + 7*x4^2)";

    fn base_line(f: &FiniteField) -> ProjLine<u64> {
        ProjLine::from_equations(f, &[0, 0, 1, 0], &[0, 0, 0, 1]).unwrap()
    }

    fn surface_points(s: &QuarticSurface<FiniteField>, rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<u64>> {
        let f = s.field();
        let mut out = Vec::new();
        while out.len() < n {
            let (a, b, c) = (rng.gen_range(0..f.q()), rng.gen_range(0..f.q()), rng.gen_range(0..f.q()));
            let x1 = MultiPoly::var(f, 1, 0);
            let uni = s
                .poly()
                .compose(&[x1, MultiPoly::constant(f, 1, a), MultiPoly::constant(f, 1, b), MultiPoly::constant(f, 1, c)]);
            let Some(u) = uni.to_uni(0) else { continue };
            if u.is_zero() {
                continue;
            }
            for r in f.find_roots(&u).unwrap() {
                let p = vec![r, a, b, c];
                if s.gradient(&p).iter().any(|g| *g != 0) {
                    out.push(p);
                }
            }
        }
        out.truncate(n);
        out
    }

    #[test]
    fn points_of_lines_are_flecnodal() {
        let s = surface("x1^4 - x1*x2^3 - x3^4 + x3*x4^3", 13);
        for l in enumerate_bruteforce(&s) {
            assert!(line_is_flecnodal(&s, &l).unwrap());
        }
    }

    #[test]
    fn random_points_are_mostly_not_flecnodal() {
        let s = surface("x1^4 + 2*x2^4 - x3^4 + 5*x4^4 + x1*x2*x3*x4 + 3*x1^2*x3^2", 31);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let pts = surface_points(&s, &mut rng, 30);
        let members = pts.iter().filter(|p| flecnodal_member(&s, p).unwrap().member).count();
        assert!(members < 10, "{members} of 30 sampled points are flecnodal");
    }

    #[test]
    fn verdict_does_not_depend_on_the_pivot() {
        let s = surface("x1^4 + 2*x2^4 - x3^4 + 5*x4^4 + x1*x2*x3*x4 + 3*x1^2*x3^2", 31);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut pts = surface_points(&s, &mut rng, 40);
        // include flecnodal points too: points of a surface line
        let z = surface(Z20, 31);
        for p in &mut pts {
            let n = s.gradient(p);
            let verdicts: Vec<bool> = (0..4)
                .filter(|&i| n[i] != 0)
                .map(|i| flecnodal_member_with(&s, p, i).unwrap().member)
                .collect();
            assert!(verdicts.windows(2).all(|w| w[0] == w[1]));
        }
        for p in line_samples(z.field(), &base_line(z.field()), 10) {
            let n = z.gradient(&p);
            for i in (0..4).filter(|&i| n[i] != 0) {
                assert!(flecnodal_member_with(&z, &p, i).unwrap().member);
            }
        }
    }

    #[test]
    fn off_surface_point_is_rejected() {
        let s = surface("x1^4 + x2^4 + x3^4 + x4^4", 13);
        assert!(matches!(flecnodal_member(&s, &[1, 0, 0, 0]), Err(Error::PointNotOnSurface)));
    }

    #[test]
    fn residual_conic_of_the_i2_fibre_is_not_flecnodal() {
        let s = surface(Z20, 43);
        let conic = residual_conic(&s, &base_line(s.field()), &P1::Finite(0)).unwrap();
        let cert = conic_nonmembership(&s, &conic).unwrap();
        assert_eq!(cert.samples, 41);
        assert!(cert.not_component);
        assert!(cert.members <= 40);
    }

    #[test]
    fn conic_sampling_needs_a_large_enough_field() {
        let s = surface(Z20, 31);
        let conic = residual_conic(&s, &base_line(s.field()), &P1::Finite(0)).unwrap();
        assert!(matches!(conic_nonmembership(&s, &conic), Err(Error::EnlargeField(_))));
    }

    #[test]
    fn flecnodal_divisor_has_degree_20() {
        let s = surface(Z20, 43);
        let conic = residual_conic(&s, &base_line(s.field()), &P1::Finite(0)).unwrap();
        assert_eq!(flecnodal_degree_on_curve(&s, &conic.coords).unwrap(), 40);
    }

    #[test]
    fn schur_budget_passes() {
        let s = surface("x1^4 - x1*x2^3 - x3^4 + x3*x4^3", 13);
        let lines = enumerate_bruteforce(&s);
        let census = CensusResult::single(s.field(), lines.clone());
        let g = incidence_graph(s.field(), &lines);
        let rep = line_budget_audit(&s, &census, &g).unwrap();
        assert!(rep.pass(), "{:?}", rep.findings);
        assert_eq!(rep.count, 64);
        assert_eq!(rep.max_degree, 18);
        assert!(rep.conics.iter().all(|c| c.incident <= 40));
    }

    #[test]
    fn empty_census_passes_vacuously() {
        let s = surface("x1^4 + 2*x2^4 - x3^4 + 5*x4^4 + x1*x2*x3*x4 + 3*x1^2*x3^2", 31);
        let census = CensusResult::single(s.field(), Vec::new());
        let g = incidence_graph(s.field(), &[]);
        let rep = line_budget_audit(&s, &census, &g).unwrap();
        assert!(rep.pass());
        assert_eq!(rep.count, 0);
    }
}
