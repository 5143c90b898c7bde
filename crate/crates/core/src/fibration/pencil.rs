//! Singular fibres of the pencil of residual cubics through a line.

use rayon::prelude::*;
use serde::Serialize;

use super::cubic::{classify_plane_cubic, discriminant_matrix, CubicClass, CubicClassRecord};
use super::kodaira::Kodaira;
use super::places::{places_of, Place, PlaceRecord, Tower};
use crate::error::{Error, Result};
use crate::field::{Field, FiniteField};
use crate::linalg;
use crate::poly::{det_poly, BinaryForm};
use crate::surface::{LineFrame, LineRecord, ProjLine, QuarticSurface};

/// Δ(t3, t4): discriminant of the residual cubic over the pencil, a binary form of degree 24
/// in x = t4, y = t3 (so its roots are the λ = t4/t3 of singular fibres).
pub fn pencil_discriminant<F: Field>(frame: &LineFrame<F>) -> Result<BinaryForm<F>> {
    let gamma = frame.pencil_cubic();
    let m = discriminant_matrix(&gamma, [0, 1, 2]);
    let d = det_poly(&m);
    if d.is_zero() {
        return Err(Error::Inconsistent(
            "every residual cubic is singular; the surface is singular".into(),
        ));
    }
    let deg = d.total_degree().unwrap() as usize;
    if deg != 24 {
        return Err(Error::Inconsistent(format!("discriminant of degree {deg}, not 24")));
    }
    BinaryForm::from_multi(&d, 4, 3, deg)
}

/// A singular fibre: its place, the multiplicity of Δ there, its type and line components.
#[derive(Clone, Debug)]
pub struct FiberRecord {
    pub place: Place,
    pub delta_multiplicity: usize,
    pub class: CubicClass<u64>,
    /// Line components in P³ over the residue field, when rational there.
    pub lines: Vec<ProjLine<u64>>,
    /// Points of the base line ∩ fibre that are singular points of the fibre.
    pub base_line_singular_hits: usize,
}

impl FiberRecord {
    pub fn kind(&self) -> &Kodaira {
        &self.class.kind
    }
    /// Number of geometric fibres in the Frobenius orbit.
    pub fn orbit(&self) -> usize {
        self.place.degree as usize
    }
    pub fn record(&self) -> FiberReport {
        let cubic = match &self.place.residue {
            Some(r) => self.class.record(&r.field),
            None => CubicClassRecord {
                kind: self.class.kind.clone(),
                singular_points: Vec::new(),
                lines: Vec::new(),
                lines_complete: self.class.lines_complete,
            },
        };
        FiberReport {
            place: self.place.record(),
            kind: self.class.kind.clone(),
            delta_multiplicity: self.delta_multiplicity,
            cubic,
            lines: match &self.place.residue {
                Some(r) => self.lines.iter().map(|l| LineRecord::new(&r.field, l)).collect(),
                None => Vec::new(),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    #[serde(flatten)]
    pub place: PlaceRecord,
    #[serde(rename = "type")]
    pub kind: Kodaira,
    pub delta_multiplicity: usize,
    pub cubic: CubicClassRecord,
    pub lines: Vec<LineRecord>,
}

/// The frame of a line after base change to an extension.
pub(crate) fn frame_over(
    s: &QuarticSurface<FiniteField>,
    l: &ProjLine<u64>,
    tower: &Tower,
    d: u32,
) -> Result<LineFrame<FiniteField>> {
    if d == 1 {
        return LineFrame::new(s, l);
    }
    let (big, emb) = tower.level(d)?;
    let sb = s.base_change(&big)?;
    let map = |v: &Vec<u64>| v.iter().map(|&c| emb.apply(c)).collect::<Vec<u64>>();
    let lb = ProjLine::from_points(&big, &map(&l.basis()[0]), &map(&l.basis()[1]))
        .expect("independent");
    LineFrame::new(&sb, &lb)
}

fn fibre_lines(frame: &LineFrame<FiniteField>, t: &crate::poly::P1<u64>, forms: &[Vec<u64>]) -> Vec<ProjLine<u64>> {
    let f = frame.field();
    let mut out: Vec<ProjLine<u64>> = forms
        .iter()
        .filter_map(|w| {
            let ker = linalg::kernel(f, &vec![w.clone()], 3);
            let a = frame.plane_point(t, &ker[0]);
            let b = frame.plane_point(t, &ker[1]);
            ProjLine::from_points(f, &a, &b)
        })
        .collect();
    out.sort();
    out
}

/// All singular fibres of the pencil through `l`, one record per closed point of P¹.
pub fn singular_fibers(
    s: &QuarticSurface<FiniteField>,
    l: &ProjLine<u64>,
    tower: &Tower,
) -> Result<Vec<FiberRecord>> {
    let frame = LineFrame::new(s, l)?;
    let delta = pencil_discriminant(&frame)?;
    let places = places_of(&delta, tower)?;
    places
        .into_par_iter()
        .map(|(place, mult)| {
            if place.residue.is_none() && mult == 1 {
                // ord Δ = e(F) in characteristic ≥ 5, so a simple zero is a nodal fibre
                return Ok(FiberRecord {
                    place,
                    delta_multiplicity: mult,
                    class: CubicClass {
                        kind: Kodaira::I(1),
                        singular_points: Vec::new(),
                        lines: Vec::new(),
                        lines_complete: true,
                    },
                    lines: Vec::new(),
                    base_line_singular_hits: 0,
                });
            }
            let rep = place.residue()?.rep.clone();
            let fr = frame_over(s, l, tower, place.degree)?;
            let cubic = fr.residual_cubic(&rep)?;
            let class = classify_plane_cubic(&cubic)?;
            let lines = fibre_lines(&fr, &rep, &class.lines);
            let hits = class
                .singular_points
                .iter()
                .filter(|p| fr.field().is_zero(&p[2]))
                .count();
            Ok(FiberRecord {
                place,
                delta_multiplicity: mult,
                class,
                lines,
                base_line_singular_hits: hits,
            })
        })
        .collect()
}

/// N = Σ over singular fibres of (orbit size) × (number of line components).
pub fn incident_lines(fibres: &[FiberRecord]) -> usize {
    fibres
        .iter()
        .map(|f| f.orbit() * f.kind().line_components())
        .sum()
}

