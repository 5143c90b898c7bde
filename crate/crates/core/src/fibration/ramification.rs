//! Ramification of the degree-3 map ℓ → P¹ and the constraints it puts on fibre types.

use std::fmt;

use serde::{Serialize, Serializer};

use super::kodaira::Kodaira;
use super::pencil::FiberRecord;
use super::places::{places_of, Place, PlaceRecord, Tower};
use crate::error::{Error, Result};
use crate::field::{Field, FiniteField};
use crate::poly::{BinaryForm, MultiPoly};
use crate::surface::LineFrame;

/// Coefficients (in t3, t4) of the binary cubic g_t = t3·α10 + t4·α01 in (y1, y2);
/// entry i is the coefficient of y1^i y2^(3-i). Ring: y1, y2, t3, t4.
pub fn g_coefficients<F: Field>(frame: &LineFrame<F>) -> Vec<MultiPoly<F>> {
    let (g, _) = super::segre::g_and_h(frame);
    let one = g.field().one();
    let mut c = g.eval_var(1, &one).coefficients_in(0);
    c.resize(4, MultiPoly::zero(g.field(), 4));
    c
}

/// Discriminant b²c² − 4ac³ − 4b³d − 27a²d² + 18abcd of a y1³ + b y1²y2 + c y1y2² + d y2³.
pub fn binary_cubic_disc<F: Field>(c: &[MultiPoly<F>]) -> MultiPoly<F> {
    let f = c[0].field();
    let (d, cc, b, a) = (&c[0], &c[1], &c[2], &c[3]);
    let k = |n: i64| f.from_i64(n);
    b.pow(2)
        .mul(&cc.pow(2))
        .sub(&a.mul(&cc.pow(3)).scale(&k(4)))
        .sub(&b.pow(3).mul(d).scale(&k(4)))
        .sub(&a.pow(2).mul(&d.pow(2)).scale(&k(27)))
        .add(&a.mul(b).mul(cc).mul(d).scale(&k(18)))
}

/// Hessian covariant of a binary cubic; it vanishes iff the cubic is a cube.
fn is_cube<F: Field>(f: &F, c: &[F::Elem]) -> bool {
    let (d, cc, b, a) = (&c[0], &c[1], &c[2], &c[3]);
    let m = |x: &F::Elem, y: &F::Elem| f.mul(x, y);
    let k = |n: i64| f.from_i64(n);
    let h0 = f.sub(&m(&k(3), &m(a, cc)), &m(b, b));
    let h1 = f.sub(&m(&k(9), &m(a, d)), &m(b, cc));
    let h2 = f.sub(&m(&k(3), &m(b, d)), &m(cc, cc));
    f.is_zero(&h0) && f.is_zero(&h1) && f.is_zero(&h2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RType {
    /// Four simple ramification points.
    R1111,
    /// One total and two simple.
    R211,
    /// Two total ramification points.
    R22,
}

impl fmt::Display for RType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RType::R1111 => "1^4",
            RType::R211 => "2,1^2",
            RType::R22 => "2^2",
        })
    }
}

impl Serialize for RType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl RType {
    /// The set G_R of possible numbers of lines meeting a second-kind line.
    pub fn g_set(self) -> &'static [usize] {
        match self {
            RType::R1111 => &[12],
            RType::R211 => &[15, 16],
            RType::R22 => &[18, 19, 20],
        }
    }
}

#[derive(Clone, Debug)]
pub struct RamifiedPoint {
    pub place: Place,
    /// Local ramification indices over one geometric point: [3] or [2, 1].
    pub indices: Vec<usize>,
}

impl RamifiedPoint {
    /// Ramification type: 1 for two preimages, 2 for a single (cyclic) preimage.
    pub fn rtype(&self) -> usize {
        self.indices.iter().map(|e| e - 1).sum()
    }
}

#[derive(Clone, Debug)]
pub struct RamificationProfile {
    pub points: Vec<RamifiedPoint>,
    /// Σ (e − 1) over all geometric ramification points.
    pub hurwitz_sum: usize,
    pub r: RType,
}

#[derive(Clone, Debug, Serialize)]
pub struct RamificationRecord {
    #[serde(rename = "R")]
    pub r: RType,
    pub hurwitz_sum: usize,
    pub points: Vec<RamifiedPointRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RamifiedPointRecord {
    #[serde(flatten)]
    pub place: PlaceRecord,
    pub indices: Vec<usize>,
}

impl RamificationProfile {
    pub fn record(&self) -> RamificationRecord {
        RamificationRecord {
            r: self.r,
            hurwitz_sum: self.hurwitz_sum,
            points: self
                .points
                .iter()
                .map(|p| RamifiedPointRecord {
                    place: p.place.record(),
                    indices: p.indices.clone(),
                })
                .collect(),
        }
    }

    pub fn at(&self, place: &Place) -> Option<&RamifiedPoint> {
        self.points.iter().find(|p| p.place.same(place))
    }
}

/// Ramification of ℓ → P¹, t ↦ the fibre through the point, from the multiple roots of g_t.
/// Fails if Riemann–Hurwitz (Σ(e − 1) = 4) does not hold.
pub fn ramification_profile(
    frame: &LineFrame<FiniteField>,
    tower: &Tower,
) -> Result<RamificationProfile> {
    let coeffs = g_coefficients(frame);
    let disc = binary_cubic_disc(&coeffs);
    if disc.is_zero() {
        return Err(Error::RamificationContradiction(
            "g_t has a repeated root for every t".into(),
        ));
    }
    let form = BinaryForm::from_multi(&disc, 3, 2, 4)?;
    let mut points = Vec::new();
    for (place, _) in places_of(&form, tower)? {
        let (big, emb) = tower.level(place.degree)?;
        let (t3, t4) = crate::surface::pencil_coords(&big, &place.residue()?.rep);
        let vals: Vec<u64> = coeffs
            .iter()
            .map(|c| {
                let c = c.map_coeffs(&big, |x| Ok(emb.apply(*x))).expect("embedding");
                c.eval(&[big.zero(), big.zero(), t3, t4])
            })
            .collect();
        let indices = if is_cube(&big, &vals) { vec![3] } else { vec![2, 1] };
        points.push(RamifiedPoint { place, indices });
    }
    let hurwitz_sum: usize = points
        .iter()
        .map(|p| p.place.degree as usize * p.rtype())
        .sum();
    let mut contributions: Vec<usize> = points
        .iter()
        .flat_map(|p| std::iter::repeat_n(p.rtype(), p.place.degree as usize))
        .collect();
    contributions.sort_unstable_by(|a, b| b.cmp(a));
    let r = match contributions.as_slice() {
        [1, 1, 1, 1] => RType::R1111,
        [2, 1, 1] => RType::R211,
        [2, 2] => RType::R22,
        other => {
            return Err(Error::RamificationContradiction(format!(
                "ramification contributions {other:?} violate Riemann-Hurwitz"
            )))
        }
    };
    Ok(RamificationProfile {
        points,
        hurwitz_sum,
        r,
    })
}

/// For a second-kind line: unramified singular fibres are I1, I3 or IV; ramified fibres are II
/// (type 1) or I1, I2, IV (type 2). Returns the list of violations.
pub fn fiber_type_constraints(
    profile: &RamificationProfile,
    fibres: &[FiberRecord],
) -> Vec<String> {
    let mut bad = Vec::new();
    for fib in fibres {
        let k = fib.kind();
        let loc = fib.place.record().t;
        match profile.at(&fib.place) {
            None => {
                if !matches!(k, Kodaira::I(1) | Kodaira::I(3) | Kodaira::IV) {
                    bad.push(format!("unramified fibre of type {k} at t = {loc}"));
                }
            }
            Some(r) => {
                let ok = match r.rtype() {
                    1 => matches!(k, Kodaira::II),
                    _ => matches!(k, Kodaira::I(1) | Kodaira::I(2) | Kodaira::IV),
                };
                if !ok {
                    bad.push(format!(
                        "ramified fibre (type {}) of type {k} at t = {loc}",
                        r.rtype()
                    ));
                }
            }
        }
    }
    for r in &profile.points {
        if !fibres.iter().any(|f| f.place.same(&r.place)) {
            bad.push(format!("ramified fibre at t = {} is smooth", r.place.record().t));
        }
    }
    bad
}
