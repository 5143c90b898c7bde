//! The genus-one pencil cut out by the planes through a line: singular fibres, ramification of
//! the line over the base, first/second kind, and the bookkeeping identities they satisfy.

pub mod cubic;
pub mod kodaira;
pub mod pencil;
pub mod places;
pub mod ramification;
pub mod segre;
pub mod znormal;

#[cfg(test)]
mod tests;

use serde::Serialize;

pub use cubic::{classify_plane_cubic, CubicClass};
pub use kodaira::{base_change_type, flex_support, FlexSupport, Kodaira};
pub use pencil::{incident_lines, pencil_discriminant, singular_fibers, FiberRecord, FiberReport};
pub use places::{Place, Residue, Tower};
pub use ramification::{ramification_profile, RType, RamificationProfile, RamificationRecord};
pub use segre::{line_kind, segre_resultant, LineKind, LineKindRecord};
pub use znormal::{z_normal_form, ZNormalForm};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, FiniteField};
use crate::poly::BinaryForm;
use crate::surface::{LineFrame, LineRecord, ProjLine, QuarticSurface};

/// Outcome of one audit.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub pass: bool,
    pub detail: Vec<String>,
}

impl Check {
    fn from_violations(detail: Vec<String>) -> Self {
        Check {
            pass: detail.is_empty(),
            detail,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Checks {
    pub euler: Check,
    /// N ∈ G_R; second-kind lines only.
    #[serde(rename = "G_R", skip_serializing_if = "Option::is_none")]
    pub g_r: Option<Check>,
    /// #I3 = #I1 + 2·#I2 among semistable fibres; second-kind lines only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairing: Option<Check>,
    /// Allowed fibre types over ramified and unramified points; second-kind lines only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber_types: Option<Check>,
    pub flex_support: Check,
    /// deg r ≤ 18, N ≤ 18, triple roots at three-line fibres; first-kind lines only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub segre: Option<Check>,
}

impl Checks {
    pub fn all_pass(&self) -> bool {
        [
            Some(&self.euler),
            self.g_r.as_ref(),
            self.pairing.as_ref(),
            self.fiber_types.as_ref(),
            Some(&self.flex_support),
            self.segre.as_ref(),
        ]
        .into_iter()
        .flatten()
        .all(|c| c.pass)
    }
}

/// Full analysis of the fibration induced by one line.
#[derive(Clone, Debug)]
pub struct FibrationReport {
    pub field: FiniteField,
    pub line: ProjLine<u64>,
    pub kind: LineKind<FiniteField>,
    pub ramification: RamificationProfile,
    /// Singular fibres ordered by place.
    pub fibers: Vec<FiberRecord>,
    pub n: usize,
    pub euler_total: u32,
    pub checks: Checks,
}

#[derive(Clone, Debug, Serialize)]
pub struct FibrationRecord {
    pub field: FieldSpec,
    pub line: LineRecord,
    pub kind: LineKindRecord,
    #[serde(rename = "R")]
    pub r: RType,
    pub ramification: RamificationRecord,
    pub fibers: Vec<FiberReport>,
    #[serde(rename = "N")]
    pub n: usize,
    pub euler: u32,
    pub checks: Checks,
}

impl FibrationReport {
    pub fn record(&self) -> FibrationRecord {
        FibrationRecord {
            field: self.field.spec(),
            line: LineRecord::new(&self.field, &self.line),
            kind: self.kind.record(),
            r: self.ramification.r,
            ramification: self.ramification.record(),
            fibers: self.fibers.iter().map(FiberRecord::record).collect(),
            n: self.n,
            euler: self.euler_total,
            checks: self.checks.clone(),
        }
    }

    /// Geometric number of fibres of the given type.
    pub fn count(&self, k: &Kodaira) -> usize {
        count_type(&self.fibers, k)
    }
}

fn count_type(fibres: &[FiberRecord], k: &Kodaira) -> usize {
    fibres
        .iter()
        .filter(|f| f.kind() == k)
        .map(FiberRecord::orbit)
        .sum()
}

/// Σ e(F) = 24; at most 12 reducible fibres; more than 12 incident lines forces a fibre
/// consisting of three lines.
pub fn euler_audit(fibres: &[FiberRecord]) -> Check {
    let mut bad = Vec::new();
    let total: u32 = fibres
        .iter()
        .map(|f| f.orbit() as u32 * f.kind().euler())
        .sum();
    if total != 24 {
        bad.push(format!("Euler sum {total} != 24"));
    }
    let reducible: usize = fibres
        .iter()
        .filter(|f| f.kind().is_reducible())
        .map(FiberRecord::orbit)
        .sum();
    if reducible > 12 {
        bad.push(format!("{reducible} reducible fibres, more than 12"));
    }
    let n = incident_lines(fibres);
    let triples = fibres.iter().any(|f| f.kind().line_components() == 3);
    if n > 12 && !triples {
        bad.push(format!("N = {n} > 12 without a fibre of three lines"));
    }
    Check::from_violations(bad)
}

/// N ∈ G_R.
pub fn check_g_r(r: RType, n: usize) -> Check {
    let mut bad = Vec::new();
    if !r.g_set().contains(&n) {
        bad.push(format!("N = {n} not in G_{r} = {:?}", r.g_set()));
    }
    Check::from_violations(bad)
}

/// Semistable fibres of a second-kind line come in pairs (I1, I3) and triples (I2, I3, I3).
pub fn pairing_audit(fibres: &[FiberRecord]) -> Check {
    let i1 = count_type(fibres, &Kodaira::I(1));
    let i2 = count_type(fibres, &Kodaira::I(2));
    let i3 = count_type(fibres, &Kodaira::I(3));
    let mut bad = Vec::new();
    if i3 != i1 + 2 * i2 {
        bad.push(format!("#I3 = {i3}, #I1 = {i1}, #I2 = {i2}"));
    }
    let other: Vec<String> = fibres
        .iter()
        .filter(|f| matches!(f.kind(), Kodaira::I(n) if *n > 3))
        .map(|f| format!("{} at t = {}", f.kind(), f.place.record().t))
        .collect();
    bad.extend(other);
    Check::from_violations(bad)
}

/// Every fibre type has a flex-support entry; for a second-kind line, the line avoids the
/// singular points of I3 fibres, which carry none of the flex locus.
pub fn flex_support_audit(fibres: &[FiberRecord], second: bool) -> Check {
    let mut bad = Vec::new();
    for f in fibres {
        let loc = f.place.record().t;
        if let Err(e) = flex_support(f.kind()) {
            bad.push(format!("t = {loc}: {e}"));
            continue;
        }
        if second && *f.kind() == Kodaira::I(3) && f.base_line_singular_hits > 0 {
            bad.push(format!("line passes through a node of the I3 fibre at t = {loc}"));
        }
    }
    Check::from_violations(bad)
}

/// deg r ≤ 18 and N ≤ 18; a fibre of three lines at λ0 is a root of r of multiplicity ≥ 3.
pub fn segre_audit(r: &BinaryForm<FiniteField>, fibres: &[FiberRecord], tower: &Tower) -> Check {
    let mut bad = Vec::new();
    let deg = r.dehomogenize().deg().unwrap_or(0);
    if deg > 18 {
        bad.push(format!("deg r = {deg} > 18"));
    }
    let n = incident_lines(fibres);
    if n > 18 {
        bad.push(format!("first-kind line meets {n} > 18 lines"));
    }
    for f in fibres.iter().filter(|f| f.kind().line_components() == 3) {
        let loc = f.place.record().t;
        let m = match tower.level(f.place.degree).and_then(|l| Ok((l, f.place.residue()?.rep.clone()))) {
            Ok(((big, emb), rep)) => {
                let coeffs = r.coeffs().iter().map(|c| emb.apply(*c)).collect();
                BinaryForm::new(&big, r.degree(), coeffs).multiplicity_at(&rep)
            }
            Err(e) => {
                bad.push(format!("t = {loc}: {e}"));
                continue;
            }
        };
        if m < 3 {
            bad.push(format!("{} fibre at t = {loc}: r vanishes to order {m} < 3", f.kind()));
        }
    }
    Check::from_violations(bad)
}

/// Runs the complete analysis of the pencil through `l`, which must be defined over the field
/// of `s`. A non-reduced fibre is an error: it cannot occur on a smooth quartic.
pub fn analyze_line(
    s: &QuarticSurface<FiniteField>,
    l: &ProjLine<u64>,
    tower: &Tower,
) -> Result<FibrationReport> {
    let f = s.field();
    if f.p() < 5 {
        return Err(Error::Unsupported(
            "fibration analysis needs characteristic at least 5".into(),
        ));
    }
    let frame = LineFrame::new(s, l)?;
    let kind = line_kind(&frame)?;
    let ramification = ramification_profile(&frame, tower)?;
    let fibers = singular_fibers(s, l, tower)?;
    if let Some(bad) = fibers
        .iter()
        .find(|f| matches!(f.kind(), Kodaira::Pathological(_)))
    {
        return Err(Error::Pathological(format!(
            "t = {} ({})",
            bad.place.record().t,
            bad.kind()
        )));
    }
    let n = incident_lines(&fibers);
    let euler_total = fibers
        .iter()
        .map(|f| f.orbit() as u32 * f.kind().euler())
        .sum();
    let second = kind.is_second();
    let checks = Checks {
        euler: euler_audit(&fibers),
        g_r: second.then(|| check_g_r(ramification.r, n)),
        pairing: second.then(|| pairing_audit(&fibers)),
        fiber_types: second.then(|| {
            Check::from_violations(ramification::fiber_type_constraints(&ramification, &fibers))
        }),
        flex_support: flex_support_audit(&fibers, second),
        segre: match &kind {
            LineKind::First { r, .. } => Some(segre_audit(r, &fibers, tower)),
            LineKind::Second => None,
        },
    };
    Ok(FibrationReport {
        field: f.clone(),
        line: l.clone(),
        kind,
        ramification,
        fibers,
        n,
        euler_total,
        checks,
    })
}
