//! Reports behind the command-line front end: each subcommand builds one serializable record,
//! rendered as JSON or as plain text.

use std::fmt::Write as _;

use serde::Serialize;

use crate::census::{
    incidence_graph, rational_census, stabilized_count, CensusLevel, CensusLineRecord,
    CensusResult, Method, Triple,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fibration::{
    analyze_line, line_kind, ramification_profile, z_normal_form, FibrationRecord, LineKindRecord,
    RType, Tower,
};
use crate::field::{is_prime, Field, FieldSpec, FiniteField, Rationals};
use crate::flecnodal::{self, BudgetReport, FlecnodalRecord};
use crate::poly::parse::{self, Bindings};
use crate::poly::MultiPoly;
use crate::surface::{LineFrame, LineRecord, ProjLine, QuarticSurface};

/// Output format of the command-line tool.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Settings shared by all subcommands.
#[derive(Clone, Debug)]
pub struct JobConfig {
    pub field: FieldSpec,
    pub tower: u32,
    pub threads: Option<usize>,
    pub format: Format,
    pub seed: u64,
}

impl Default for JobConfig {
    fn default() -> Self {
        JobConfig {
            field: FieldSpec::Rationals,
            tower: 4,
            threads: None,
            format: Format::Json,
            seed: 0,
        }
    }
}

impl JobConfig {
    pub fn exec(&self) -> Exec {
        Exec::new(self.threads)
    }
}

/// Something the CLI can print.
pub trait Report: Serialize {
    fn text(&self) -> String;
    /// A mathematically surprising outcome (exit code 2).
    fn finding(&self) -> bool {
        false
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("serializable report") + "\n",
            Format::Text => self.text(),
        }
    }
}

/// Parses `L1 = L2 = 0` with linear forms L1, L2 in x1..x4 into a line over `f`.
pub fn parse_line<F: Field>(f: &F, text: &str) -> Result<ProjLine<F::Elem>> {
    let parts: Vec<&str> = text.split('=').map(str::trim).collect();
    let bad = |msg: &str| Error::Parse {
        pos: 0,
        msg: format!("{msg} in line spec {text:?}"),
    };
    if parts.len() != 3 || parts[2] != "0" {
        return Err(bad("expected `L1 = L2 = 0`"));
    }
    let mut forms = Vec::new();
    for part in &parts[..2] {
        let p = parse::parse_poly(part, &Bindings::new())?;
        if !p.is_homogeneous() || p.total_degree() != Some(1) {
            return Err(bad("not a linear form"));
        }
        let row = (0..4)
            .map(|i| {
                let e: Vec<u32> = (0..4).map(|j| u32::from(i == j)).collect();
                f.from_rational(&p.coeff(crate::poly::Monomial::from_exps(&e)))
            })
            .collect::<Result<Vec<_>>>()?;
        forms.push(row);
    }
    ProjLine::from_equations(f, &forms[0], &forms[1]).ok_or_else(|| bad("dependent forms"))
}

/// The first prime p ≥ `from` at which the quartic reduces to a surface smooth over F_p.
pub fn good_prime(poly: &MultiPoly<Rationals>, from: u64) -> Result<QuarticSurface<FiniteField>> {
    let mut p = from.max(5);
    while p < 1000 {
        if is_prime(p) {
            let field = FiniteField::new(p, 1)?;
            if let Ok(mut s) = QuarticSurface::from_rational(poly, &field) {
                let sm = s.smoothness_check(1)?;
                if sm.is_smooth() {
                    s.set_smoothness(sm);
                    return Ok(s);
                }
            }
        }
        p += 1;
    }
    Err(Error::Unsupported("no prime of smooth reduction below 1000".into()))
}

/// The surface over the configured field; over Q, its reduction at the first good prime ≥ 7.
pub fn finite_surface(poly: &MultiPoly<Rationals>, cfg: &JobConfig) -> Result<QuarticSurface<FiniteField>> {
    match &cfg.field {
        FieldSpec::Rationals => good_prime(poly, 7),
        spec => {
            let field = FiniteField::from_spec(spec)?;
            QuarticSurface::from_rational(poly, &field)
        }
    }
}

fn display_poly(poly: &MultiPoly<Rationals>) -> String {
    poly.display(&["x1", "x2", "x3", "x4"])
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphSummary {
    pub degrees: Vec<usize>,
    pub triples: Vec<Triple>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub surface: String,
    pub field: FieldSpec,
    pub stabilized: bool,
    pub count: usize,
    pub levels: Vec<CensusLevel>,
    pub lines: Vec<CensusLineRecord>,
    pub graph: GraphSummary,
    pub findings: Vec<String>,
}

impl CensusReport {
    pub fn new(surface: String, c: &CensusResult) -> Self {
        let g = incidence_graph(&c.field, &c.plain_lines());
        CensusReport {
            surface,
            field: c.field.spec(),
            stabilized: c.stabilized,
            count: c.count(),
            levels: c.levels.clone(),
            lines: c.lines.iter().map(|l| CensusLineRecord::new(&c.field, l)).collect(),
            graph: GraphSummary {
                degrees: g.degrees,
                triples: g.triples,
            },
            findings: c.findings.clone(),
        }
    }
}

impl Report for CensusReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "surface: {}", self.surface);
        for l in &self.levels {
            let _ = writeln!(s, "  {}: {} lines", l.field, l.count);
        }
        let _ = writeln!(
            s,
            "count: {} ({})",
            self.count,
            if self.stabilized { "stabilized" } else { "not stabilized" }
        );
        for (i, l) in self.lines.iter().enumerate() {
            let _ = writeln!(
                s,
                "  [{i}] pluecker ({}) over degree {}, meets {}",
                l.line.pluecker.join(", "),
                l.def_degree,
                self.graph.degrees[i]
            );
        }
        for f in &self.findings {
            let _ = writeln!(s, "finding: {f}");
        }
        s
    }

    fn finding(&self) -> bool {
        !self.findings.is_empty()
    }
}

/// Census over Q through reductions at several good primes.
#[derive(Clone, Debug, Serialize)]
pub struct RationalCensusReport {
    pub surface: String,
    pub field: FieldSpec,
    /// (p, stabilized count, stabilized) per prime.
    pub per_prime: Vec<(u64, usize, bool)>,
    pub stabilized: bool,
    pub count: Option<usize>,
}

impl Report for RationalCensusReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "surface: {}", self.surface);
        for (p, c, st) in &self.per_prime {
            let _ = writeln!(s, "  p = {p}: {c} lines{}", if *st { "" } else { " (not stabilized)" });
        }
        match self.count {
            Some(c) => {
                let _ = writeln!(s, "count: {c}");
            }
            None => {
                let _ = writeln!(s, "count: primes disagree");
            }
        }
        s
    }
}

pub enum AnyCensus {
    Finite(CensusReport),
    Rational(RationalCensusReport),
}

pub fn census(poly: &MultiPoly<Rationals>, cfg: &JobConfig) -> Result<AnyCensus> {
    let exec = cfg.exec();
    match &cfg.field {
        FieldSpec::Rationals => {
            let r = rational_census(poly, 3, cfg.tower, cfg.seed, &exec)?;
            Ok(AnyCensus::Rational(RationalCensusReport {
                surface: display_poly(poly),
                field: FieldSpec::Rationals,
                stabilized: r.per_prime.iter().all(|x| x.2),
                per_prime: r.per_prime,
                count: r.count,
            }))
        }
        spec => {
            let field = FiniteField::from_spec(spec)?;
            let mut s = QuarticSurface::from_rational(poly, &field)?;
            if field.p() >= 5 {
                let sm = s.smoothness_check(1)?;
                s.set_smoothness(sm);
            }
            let c = stabilized_count(&s, cfg.tower, Method::Auto, cfg.seed, &exec)?;
            Ok(AnyCensus::Finite(CensusReport::new(display_poly(poly), &c)))
        }
    }
}

impl Report for FibrationRecord {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "line: pluecker ({}) over {}", self.line.pluecker.join(", "), self.field);
        let _ = writeln!(s, "kind: {}", kind_text(&self.kind));
        let _ = writeln!(s, "R: {} (sum of e-1 = {})", self.r, self.ramification.hurwitz_sum);
        let _ = writeln!(s, "singular fibres:");
        for f in &self.fibers {
            let _ = writeln!(
                s,
                "  t = {:<12} {:<5} orbit {} lines {}",
                f.place.t,
                f.kind.to_string(),
                f.place.degree,
                f.lines.len()
            );
        }
        let _ = writeln!(s, "N: {}", self.n);
        let _ = writeln!(s, "euler: {}", self.euler);
        let checks = serde_json::to_value(&self.checks).expect("serializable");
        if let Some(map) = checks.as_object() {
            for (name, c) in map {
                let pass = c["pass"].as_bool().unwrap_or(false);
                let _ = writeln!(s, "check {name}: {}", if pass { "pass" } else { "FAIL" });
                if let Some(d) = c["detail"].as_array() {
                    for line in d {
                        let _ = writeln!(s, "    {}", line.as_str().unwrap_or(""));
                    }
                }
            }
        }
        s
    }

    fn finding(&self) -> bool {
        !self.checks.all_pass()
    }
}

fn kind_text(k: &LineKindRecord) -> String {
    match k.segre_degree {
        Some(d) => format!("FIRST (deg r = {d})"),
        None => "SECOND".into(),
    }
}

pub fn fibration(poly: &MultiPoly<Rationals>, line: &str, cfg: &JobConfig) -> Result<FibrationRecord> {
    let s = finite_surface(poly, cfg)?;
    let l = parse_line(s.field(), line)?;
    let tower = Tower::new(s.field());
    Ok(analyze_line(&s, &l, &tower)?.record())
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub field: FieldSpec,
    pub line: LineRecord,
    pub kind: LineKindRecord,
    #[serde(rename = "R")]
    pub r: RType,
    /// Normal form in the family 𝒵, or why there is none.
    pub z_normal_form: std::result::Result<crate::fibration::znormal::ZNormalFormRecord, String>,
}

impl Report for ClassifyReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "line: pluecker ({}) over {}", self.line.pluecker.join(", "), self.field);
        let _ = writeln!(s, "kind: {}", kind_text(&self.kind));
        if let Some(r) = &self.kind.r {
            let _ = writeln!(s, "r(l) = {r}");
        }
        let _ = writeln!(s, "R: {}", self.r);
        match &self.z_normal_form {
            Ok(nf) => {
                let _ = writeln!(s, "normal form: q = {}, g = {}", nf.q, nf.g);
            }
            Err(e) => {
                let _ = writeln!(s, "normal form: none ({e})");
            }
        }
        s
    }
}

pub fn classify_line(poly: &MultiPoly<Rationals>, line: &str, cfg: &JobConfig) -> Result<ClassifyReport> {
    let s = finite_surface(poly, cfg)?;
    if s.field().p() < 5 {
        return Err(Error::Unsupported("line classification needs characteristic at least 5".into()));
    }
    let l = parse_line(s.field(), line)?;
    let frame = LineFrame::new(&s, &l)?;
    let kind = line_kind(&frame)?;
    let prof = ramification_profile(&frame, &Tower::new(s.field()))?;
    let z = match z_normal_form(&s, &l) {
        Ok(nf) => Ok(nf.record()),
        Err(e @ (Error::NotInZ(_) | Error::EnlargeField(_))) => Err(e.to_string()),
        Err(e) => return Err(e),
    };
    Ok(ClassifyReport {
        field: s.field().spec(),
        line: LineRecord::new(s.field(), &l),
        kind: kind.record(),
        r: prof.r,
        z_normal_form: z,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FlecnodalReport {
    pub field: FieldSpec,
    pub samples: Vec<FlecnodalRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<BudgetReport>,
}

impl Report for FlecnodalReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "field: {}", self.field);
        for r in &self.samples {
            let _ = writeln!(
                s,
                "  ({}) member {} res {}",
                r.point.join(", "),
                r.member,
                r.res_value
            );
        }
        if let Some(b) = &self.budget {
            let _ = writeln!(s, "lines: {} (budget {})", b.count, if b.count_ok { "ok" } else { "EXCEEDED" });
            let _ = writeln!(s, "max degree: {}", b.max_degree);
            let _ = writeln!(s, "residual conics audited: {}", b.conics.len());
            for f in &b.findings {
                let _ = writeln!(s, "finding: {f}");
            }
        }
        s
    }

    fn finding(&self) -> bool {
        self.budget.as_ref().is_some_and(|b| !b.pass())
    }
}

/// Membership of a point, of sample points of a line, or the line budget audit of the census.
pub fn flecnodal(
    poly: &MultiPoly<Rationals>,
    point: Option<&str>,
    line: Option<&str>,
    cfg: &JobConfig,
) -> Result<FlecnodalReport> {
    let s = finite_surface(poly, cfg)?;
    let f = s.field().clone();
    if f.p() < 5 {
        return Err(Error::Unsupported("flecnodal analysis needs characteristic at least 5".into()));
    }
    let points: Vec<Vec<u64>> = if let Some(p) = point {
        vec![parse_point(&f, p)?]
    } else if let Some(l) = line {
        let l = parse_line(&f, l)?;
        if !s.contains_line(&l) {
            return Err(Error::LineNotOnSurface);
        }
        flecnodal::line_samples(&f, &l, flecnodal::LINE_SAMPLES)
    } else {
        Vec::new()
    };
    let samples = points
        .iter()
        .map(|p| flecnodal::flecnodal_member(&s, p).map(|x| x.record(&f)))
        .collect::<Result<Vec<_>>>()?;
    let budget = if point.is_none() && line.is_none() {
        let c = stabilized_count(&s, 1, Method::Auto, cfg.seed, &cfg.exec())?;
        let g = incidence_graph(&f, &c.plain_lines());
        Some(flecnodal::line_budget_audit(&s, &c, &g)?)
    } else {
        None
    };
    Ok(FlecnodalReport {
        field: f.spec(),
        samples,
        budget,
    })
}

/// `a,b,c,d` with rational entries, reduced into `f`.
pub fn parse_point<F: Field>(f: &F, text: &str) -> Result<Vec<F::Elem>> {
    let v = text
        .split(',')
        .map(|t| parse::parse_rational(t.trim()).and_then(|r| f.from_rational(&r)))
        .collect::<Result<Vec<_>>>()?;
    if v.len() != 4 || v.iter().all(|c| f.is_zero(c)) {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("expected four coordinates, not all zero: {text:?}"),
        });
    }
    Ok(v)
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphReport {
    pub surface: String,
    pub field: FieldSpec,
    pub count: usize,
    pub degrees: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub triples: Vec<Triple>,
    /// Per line, the sizes of its neighbour groups by plane.
    pub plane_groups: Vec<Vec<usize>>,
    /// N from the singular fibres of each line's pencil (characteristic ≥ 5).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fibration_n: Option<Vec<usize>>,
    /// Lines whose N differs from their degree in the graph.
    pub n_mismatches: Vec<usize>,
}

impl Report for GraphReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "surface: {}", self.surface);
        let _ = writeln!(s, "field: {}  lines: {}  edges: {}", self.field, self.count, self.edges.len());
        for i in 0..self.count {
            let t = self.triples.iter().filter(|t| t.pivot == i).count();
            let n = self
                .fibration_n
                .as_ref()
                .map(|v| format!("  N {}", v[i]))
                .unwrap_or_default();
            let _ = writeln!(
                s,
                "  [{i}] degree {}  coplanar triples {t}  planes {:?}{n}",
                self.degrees[i], self.plane_groups[i]
            );
        }
        if !self.n_mismatches.is_empty() {
            let _ = writeln!(s, "finding: N differs from the degree for lines {:?}", self.n_mismatches);
        }
        s
    }

    fn finding(&self) -> bool {
        !self.n_mismatches.is_empty()
    }
}

/// Incidence graph of the stabilized census; with `fibrations`, N of every line is compared
/// with its degree.
pub fn graph(poly: &MultiPoly<Rationals>, cfg: &JobConfig, fibrations: bool) -> Result<GraphReport> {
    let s = finite_surface(poly, cfg)?;
    let c = stabilized_count(&s, cfg.tower, Method::Auto, cfg.seed, &cfg.exec())?;
    graph_of_census(display_poly(poly), &s, &c, fibrations, &cfg.exec())
}

pub fn graph_of_census(
    surface: String,
    s: &QuarticSurface<FiniteField>,
    c: &CensusResult,
    fibrations: bool,
    exec: &Exec,
) -> Result<GraphReport> {
    use rayon::prelude::*;
    let lines = c.plain_lines();
    let g = incidence_graph(&c.field, &lines);
    let fibration_n = if fibrations && c.field.p() >= 5 {
        let big = if c.field == *s.field() {
            s.clone()
        } else {
            s.base_change(&c.field)?
        };
        let tower = Tower::new(&c.field);
        let ns = exec.install(|| {
            lines
                .par_iter()
                .map(|l| analyze_line(&big, l, &tower).map(|r| r.n))
                .collect::<Result<Vec<_>>>()
        })?;
        Some(ns)
    } else {
        None
    };
    let n_mismatches = fibration_n
        .as_ref()
        .map(|ns| (0..lines.len()).filter(|&i| ns[i] != g.degrees[i]).collect())
        .unwrap_or_default();
    Ok(GraphReport {
        surface,
        field: c.field.spec(),
        count: lines.len(),
        degrees: g.degrees,
        edges: g.edges,
        triples: g.triples,
        plane_groups: g.plane_groups,
        fibration_n,
        n_mismatches,
    })
}
