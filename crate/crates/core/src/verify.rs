//! The built-in check suite: each claim is recomputed from scratch and reported pass/fail.

use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::census::{
    enumerate_bruteforce, enumerate_elimination, incidence_graph, stabilized_count, CensusResult,
    Method, TripleKind,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::family::{self, ZShape};
use crate::fibration::{
    analyze_line, base_change_type, flex_support, ramification_profile, Kodaira, LineKind, RType,
    Tower,
};
use crate::field::{Field, FiniteField};
use crate::flecnodal;
use crate::poly::parse::Bindings;
use crate::poly::{MultiPoly, UniPoly, P1};
use crate::report::{CensusReport, JobConfig, Report};
use crate::surface::io::{parse_surface_file, SurfaceFile};
use crate::surface::{LineFrame, ProjLine, QuarticSurface};

pub const EXAMPLE_NAMES: [&str; 5] = ["schur", "fermat", "example60", "z_member", "z_conic"];

fn builtin_text(name: &str) -> &'static str {
    match name {
        "schur" => include_str!("../data/schur.quartic"),
        "fermat" => include_str!("../data/fermat.quartic"),
        "example60" => include_str!("../data/example60.quartic"),
        "z_member" => include_str!("../data/z_member.quartic"),
        "z_conic" => include_str!("../data/z_conic.quartic"),
        _ => unreachable!("unknown example {name}"),
    }
}

/// The example surfaces the suite runs on.
#[derive(Clone, Debug)]
pub struct Bundle {
    pub schur: SurfaceFile,
    pub fermat: SurfaceFile,
    pub example60: SurfaceFile,
    pub z_member: SurfaceFile,
    pub z_conic: SurfaceFile,
}

impl Bundle {
    pub fn builtin() -> Result<Self> {
        Self::load(|name| Ok(builtin_text(name).to_string()))
    }

    /// Files `<name>.quartic` from `dir`, falling back to the built-in copy when absent.
    pub fn from_dir(dir: &Path) -> Result<Self> {
        Self::load(|name| {
            let p = dir.join(format!("{name}.quartic"));
            if p.exists() {
                Ok(std::fs::read_to_string(p)?)
            } else {
                Ok(builtin_text(name).to_string())
            }
        })
    }

    fn load(read: impl Fn(&str) -> Result<String>) -> Result<Self> {
        let get = |n: &str| parse_surface_file(&read(n)?, &Bindings::new());
        Ok(Bundle {
            schur: get("schur")?,
            fermat: get("fermat")?,
            example60: get("example60")?,
            z_member: get("z_member")?,
            z_conic: get("z_conic")?,
        })
    }

    pub fn named(&self) -> [(&'static str, &SurfaceFile); 5] {
        [
            ("schur", &self.schur),
            ("fermat", &self.fermat),
            ("example60", &self.example60),
            ("z_member", &self.z_member),
            ("z_conic", &self.z_conic),
        ]
    }
}

/// The surface of a bundled file over the field named in it.
pub fn surface_of(file: &SurfaceFile) -> Result<QuarticSurface<FiniteField>> {
    let spec = file
        .field
        .as_ref()
        .ok_or_else(|| Error::InvalidField("example file without a field line".into()))?;
    let field = FiniteField::from_spec(spec)?;
    QuarticSurface::from_rational(&file.poly, &field)
}

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub id: String,
    pub statement: String,
    pub pass: bool,
    pub detail: Vec<String>,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Ledger {
    pub claims: Vec<Claim>,
    pub passed: usize,
    pub failed: usize,
}

impl Report for Ledger {
    fn text(&self) -> String {
        let mut s = String::new();
        for c in &self.claims {
            let _ = writeln!(
                s,
                "{} {:<14} {} ({:.1}s)",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                c.statement,
                c.seconds
            );
            for d in &c.detail {
                let _ = writeln!(s, "       {d}");
            }
        }
        let _ = writeln!(s, "{} passed, {} failed", self.passed, self.failed);
        s
    }

    fn finding(&self) -> bool {
        self.failed > 0
    }
}

/// Accumulates pass/fail conditions with explanations.
#[derive(Default)]
struct Tally {
    ok: bool,
    detail: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            ok: true,
            detail: Vec::new(),
        }
    }
    fn check(&mut self, cond: bool, msg: impl Into<String>) {
        let msg = msg.into();
        if cond {
            self.detail.push(msg);
        } else {
            self.ok = false;
            self.detail.push(format!("FAILED: {msg}"));
        }
    }
    fn note(&mut self, msg: impl Into<String>) {
        self.detail.push(msg.into());
    }
}

fn run_claim(id: &str, statement: &str, body: impl FnOnce(&mut Tally) -> Result<()>) -> Claim {
    let start = Instant::now();
    let mut t = Tally::new();
    let outcome = catch_unwind(AssertUnwindSafe(|| body(&mut t)));
    match outcome {
        Ok(Ok(())) => {}
        Ok(Err(e)) => t.check(false, format!("error: {e}")),
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            t.check(false, format!("panic: {msg}"));
        }
    }
    Claim {
        id: id.into(),
        statement: statement.into(),
        pass: t.ok,
        detail: t.detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Statement of acceptance criterion n (1..=10).
pub fn criterion_statement(n: u32) -> &'static str {
    match n {
        1 => "elimination equals brute force on 50 random quartics and the examples, q in {5,7,9,11,13}",
        2 => "Schur quartic: 64 lines, all degrees 18, 6 coplanar triples per line",
        3 => "Fermat quartic in characteristic 3: 112 lines over F_9",
        4 => "example with r = -16/27: 60 lines, x3 = x4 = 0 meets 20",
        5 => "20 random Z-members: second kind, R = 2^2, 6 I3 + 6 I1 at the predicted places, N = 18",
        6 => "Z-members with x3*x4 | g have an I2 fibre and N = 20; x3 | q gives a ramified IV fibre",
        7 => "deg r <= 18 on 20+ first-kind lines; triple root of r at 5+ constructed three-line fibres",
        8 => "budgets: <= 80 lines, degrees <= 20, lines flecnodal, residual conic certified by 41 samples",
        9 => "base-change and flex-support tables",
        10 => "resultant multiplicativity, squarefree reconstruction, Riemann-Hurwitz on every profile",
        _ => "unknown criterion",
    }
}

/// Runs acceptance criterion n.
pub fn criterion(n: u32, bundle: &Bundle, cfg: &JobConfig) -> Claim {
    let id = format!("criterion-{n}");
    let st = criterion_statement(n);
    let exec = cfg.exec();
    let seed = cfg.seed;
    match n {
        1 => run_claim(&id, st, |t| oracle_equivalence(t, bundle, seed, &exec)),
        2 => run_claim(&id, st, |t| schur(t, bundle, cfg.tower, &exec)),
        3 => run_claim(&id, st, |t| fermat(t, bundle)),
        4 => run_claim(&id, st, |t| example60(t, bundle, cfg.tower, &exec)),
        5 => run_claim(&id, st, |t| z_family(t, seed)),
        6 => run_claim(&id, st, |t| degenerations(t, seed)),
        7 => run_claim(&id, st, |t| segre(t, bundle, seed)),
        8 => run_claim(&id, st, |t| budgets(t, bundle, cfg.tower, &exec)),
        9 => run_claim(&id, st, tables),
        10 => run_claim(&id, st, |t| properties(t, bundle, seed)),
        _ => run_claim(&id, st, |_| Err(Error::Unsupported(format!("no criterion {n}")))),
    }
}

/// All criteria and the extra claims about the examples.
pub fn run_ledger(bundle: &Bundle, cfg: &JobConfig) -> Ledger {
    run_selected(bundle, cfg, |_| true)
}

/// Identifiers of all claims, in ledger order.
pub fn claim_ids() -> Vec<String> {
    let mut ids: Vec<String> = (1..=10).map(|n| format!("criterion-{n}")).collect();
    ids.extend(["z-member", "n-equals-degree", "json-roundtrip"].map(String::from));
    ids
}

/// The claims whose identifier passes `keep`.
pub fn run_selected(bundle: &Bundle, cfg: &JobConfig, keep: impl Fn(&str) -> bool) -> Ledger {
    let exec = cfg.exec();
    let mut claims = Vec::new();
    for n in 1..=10 {
        if keep(&format!("criterion-{n}")) {
            claims.push(criterion(n, bundle, cfg));
        }
    }
    if keep("z-member") {
        claims.push(run_claim(
            "z-member",
            "bundled Z-member: x3 = x4 = 0 is second kind, R = 2^2, N = 18",
            |t| z_member_example(t, bundle),
        ));
    }
    if keep("n-equals-degree") {
        claims.push(run_claim(
            "n-equals-degree",
            "N from the singular fibres equals the graph degree for every line of every example",
            |t| n_equals_degree(t, bundle, cfg.tower, &exec),
        ));
    }
    if keep("json-roundtrip") {
        claims.push(run_claim(
            "json-roundtrip",
            "census JSON parses back to the same counts",
            |t| json_roundtrip(t, bundle, &exec),
        ));
    }
    let passed = claims.iter().filter(|c| c.pass).count();
    Ledger {
        failed: claims.len() - passed,
        passed,
        claims,
    }
}

fn sorted(mut v: Vec<ProjLine<u64>>) -> Vec<ProjLine<u64>> {
    v.sort();
    v
}

fn oracle_equivalence(t: &mut Tally, b: &Bundle, seed: u64, exec: &Exec) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x51);
    let mut cases = 0;
    let mut with_lines = 0;
    let mut mismatches = Vec::new();
    for (p, k) in [(5u64, 1u32), (7, 1), (3, 2), (11, 1), (13, 1)] {
        let f = FiniteField::new(p, k)?;
        let mut surfaces = Vec::new();
        for i in 0..10 {
            let s = if i % 2 == 0 {
                family::random_quartic(&f, &mut rng, 0.6)
            } else {
                quartic_through_base_line(&f, &mut rng)
            };
            surfaces.push((format!("random #{i}"), s));
        }
        for (name, file) in b.named() {
            match QuarticSurface::from_rational(&file.poly, &f) {
                Ok(s) => surfaces.push((name.to_string(), s)),
                Err(e) => t.note(format!("{name} skipped over {}: {e}", f.spec())),
            }
        }
        let results = exec.install(|| {
            use rayon::prelude::*;
            surfaces
                .par_iter()
                .map(|(name, s)| {
                    let brute = sorted(enumerate_bruteforce(s));
                    let elim = enumerate_elimination(s, seed).map(sorted);
                    (name.clone(), brute, elim)
                })
                .collect::<Vec<_>>()
        });
        for (name, brute, elim) in results {
            cases += 1;
            if !brute.is_empty() {
                with_lines += 1;
            }
            match elim {
                Ok(e) if e == brute => {}
                Ok(e) => mismatches.push(format!(
                    "{name} over {}: brute {} vs elimination {}",
                    f.spec(),
                    brute.len(),
                    e.len()
                )),
                Err(e) => mismatches.push(format!("{name} over {}: {e}", f.spec())),
            }
        }
    }
    t.check(cases >= 50 + 5, format!("{cases} surfaces compared, {with_lines} with lines"));
    t.check(mismatches.is_empty(), format!("{} mismatches", mismatches.len()));
    for m in mismatches {
        t.note(m);
    }
    Ok(())
}

/// x3·A + x4·B with random cubics A, B: contains ℓ₀ and usually further lines.
fn quartic_through_base_line(f: &FiniteField, rng: &mut ChaCha8Rng) -> QuarticSurface<FiniteField> {
    loop {
        let cubic = |rng: &mut ChaCha8Rng| {
            let mut c = MultiPoly::zero(f, 4);
            for a in 0..=3u32 {
                for b in 0..=3 - a {
                    for d in 0..=3 - a - b {
                        let e = [a, b, d, 3 - a - b - d];
                        c = c.add(&MultiPoly::monomial(f, 4, &e, rng.gen_range(0..f.q())));
                    }
                }
            }
            c
        };
        let x3 = MultiPoly::var(f, 4, 2);
        let x4 = MultiPoly::var(f, 4, 3);
        let p = x3.mul(&cubic(rng)).add(&x4.mul(&cubic(rng)));
        if let Ok(s) = QuarticSurface::new(p) {
            return s;
        }
    }
}

fn census_of(file: &SurfaceFile, tower: u32, exec: &Exec) -> Result<(QuarticSurface<FiniteField>, CensusResult)> {
    let mut s = surface_of(file)?;
    if s.field().p() >= 5 {
        let sm = s.smoothness_check(1)?;
        s.set_smoothness(sm);
    }
    let c = stabilized_count(&s, tower, Method::Auto, 0, exec)?;
    Ok((s, c))
}

/// The surface over the field of a census.
fn over_census_field(s: &QuarticSurface<FiniteField>, c: &CensusResult) -> Result<QuarticSurface<FiniteField>> {
    if *s.field() == c.field {
        Ok(s.clone())
    } else {
        s.base_change(&c.field)
    }
}

fn schur(t: &mut Tally, b: &Bundle, tower: u32, exec: &Exec) -> Result<()> {
    let (_, c) = census_of(&b.schur, tower.max(2), exec)?;
    t.check(c.stabilized, format!("tower {:?} stabilized", c.levels.iter().map(|l| l.count).collect::<Vec<_>>()));
    t.check(c.count() == 64, format!("{} lines", c.count()));
    let g = incidence_graph(&c.field, &c.plain_lines());
    t.check(g.degrees.iter().all(|&d| d == 18), format!("degrees {:?}", distinct(&g.degrees)));
    let per: Vec<usize> = (0..g.degrees.len()).map(|v| g.triples_at(v).count()).collect();
    let six = per.iter().filter(|&&n| n == 6).count();
    let tri = g.triples.iter().filter(|x| x.kind == TripleKind::Triangle).count();
    let star = g.triples.len() - tri;
    t.note(format!("coplanar triples: {tri} triangles, {star} stars (counted per pivot)"));
    t.check(
        six == per.len(),
        format!("{six} of {} lines have 6 coplanar triples; triple counts {:?}", per.len(), distinct(&per)),
    );
    Ok(())
}

fn distinct(v: &[usize]) -> Vec<(usize, usize)> {
    let mut m = std::collections::BTreeMap::new();
    for &x in v {
        *m.entry(x).or_insert(0) += 1;
    }
    m.into_iter().collect()
}

fn fermat(t: &mut Tally, b: &Bundle) -> Result<()> {
    let s = surface_of(&b.fermat)?;
    let n = enumerate_bruteforce(&s).len();
    t.check(n == 112, format!("{n} lines over {}", s.field().spec()));
    Ok(())
}

/// Index of ℓ₀ = {x3 = x4 = 0} in a census.
fn base_line_index(c: &CensusResult) -> Option<usize> {
    let l0 = family::base_line(&c.field);
    c.lines.iter().position(|l| l.line == l0)
}

fn example60(t: &mut Tally, b: &Bundle, tower: u32, exec: &Exec) -> Result<()> {
    let (s, c) = census_of(&b.example60, tower.max(2), exec)?;
    t.check(c.stabilized, format!("tower {:?} stabilized", c.levels.iter().map(|l| l.count).collect::<Vec<_>>()));
    t.check(c.count() == 60, format!("{} lines", c.count()));
    let g = incidence_graph(&c.field, &c.plain_lines());
    match base_line_index(&c) {
        Some(i) => t.check(g.degrees[i] == 20, format!("x3 = x4 = 0 meets {} lines", g.degrees[i])),
        None => t.check(false, "x3 = x4 = 0 not found in the census"),
    }
    let rep = analyze_line(&s, &family::base_line(s.field()), &Tower::new(s.field()))?;
    t.check(rep.n == 20, format!("N = {} from the singular fibres", rep.n));
    Ok(())
}

const Z_PRIME: u64 = 31;

fn z_family(t: &mut Tally, seed: u64) -> Result<()> {
    let f = FiniteField::new(Z_PRIME, 1)?;
    let tower = Tower::new(&f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x2a);
    let mut good = 0;
    for i in 0..20 {
        let m = family::random_z_member(&f, &mut rng, ZShape::Generic);
        let rep = analyze_line(&m.surface, &family::base_line(&f), &tower)?;
        let mut bad = Vec::new();
        if !rep.kind.is_second() {
            bad.push("not second kind".to_string());
        }
        if rep.ramification.r != RType::R22 {
            bad.push(format!("R = {}", rep.ramification.r));
        }
        if rep.count(&Kodaira::I(3)) != 6 || rep.count(&Kodaira::I(1)) != 6 || rep.fibers.iter().any(|x| !matches!(x.kind(), Kodaira::I(1) | Kodaira::I(3))) {
            bad.push(format!(
                "inventory {:?}",
                rep.fibers.iter().map(|x| x.kind().to_string()).collect::<Vec<_>>()
            ));
        }
        let (i3, i1) = (m.i3_form(), m.i1_form());
        for fib in &rep.fibers {
            let form = if *fib.kind() == Kodaira::I(3) { &i3 } else { &i1 };
            if !vanishes_at(form, &fib.place, &tower)? {
                bad.push(format!("{} at t = {} off its predicted place", fib.kind(), fib.place.record().t));
            }
        }
        let i1_at = |p: P1<u64>| {
            rep.fibers
                .iter()
                .any(|x| *x.kind() == Kodaira::I(1) && x.place.is_rational_at(&p))
        };
        if !i1_at(P1::Finite(0)) || !i1_at(P1::Infinity) {
            bad.push("missing I1 at 0 or infinity".into());
        }
        if rep.euler_total != 24 || !rep.checks.euler.pass {
            bad.push(format!("euler {}", rep.euler_total));
        }
        if rep.n != 18 || !rep.checks.g_r.as_ref().is_some_and(|c| c.pass) {
            bad.push(format!("N = {}", rep.n));
        }
        if !rep.checks.all_pass() {
            bad.push("audits fail".into());
        }
        if bad.is_empty() {
            good += 1;
        } else {
            t.note(format!("member {i}: {}", bad.join("; ")));
        }
    }
    t.check(good == 20, format!("{good}/20 members over F_{Z_PRIME} as predicted"));
    Ok(())
}

/// Whether a form in (x3, x4) vanishes at the fibre over a place.
fn vanishes_at(p: &MultiPoly<FiniteField>, place: &crate::fibration::Place, tower: &Tower) -> Result<bool> {
    let (big, emb) = tower.level(place.degree)?;
    let pb = p.map_coeffs(&big, |c| Ok(emb.apply(*c)))?;
    let (t3, t4) = crate::surface::pencil_coords(&big, &place.residue()?.rep);
    Ok(big.is_zero(&pb.eval(&[0, 0, t3, t4])))
}

fn degenerations(t: &mut Tally, seed: u64) -> Result<()> {
    let f = FiniteField::new(Z_PRIME, 1)?;
    let tower = Tower::new(&f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3b);
    let (mut i2_ok, mut iv_ok) = (0, 0);
    for _ in 0..5 {
        let m = family::random_z_member(&f, &mut rng, ZShape::X3X4DividesG);
        let rep = analyze_line(&m.surface, &family::base_line(&f), &tower)?;
        let i2 = rep.count(&Kodaira::I(2));
        if i2 >= 1 && rep.n == 20 && rep.checks.all_pass() {
            i2_ok += 1;
        } else {
            t.note(format!("x3*x4 | g: {i2} I2 fibres, N = {}", rep.n));
        }
        let m = family::random_z_member(&f, &mut rng, ZShape::X3DividesQ);
        let rep = analyze_line(&m.surface, &family::base_line(&f), &tower)?;
        let ramified_iv = rep
            .fibers
            .iter()
            .any(|x| *x.kind() == Kodaira::IV && rep.ramification.at(&x.place).is_some());
        if ramified_iv && rep.checks.all_pass() {
            iv_ok += 1;
        } else {
            t.note(format!("x3 | q: no ramified IV fibre, N = {}", rep.n));
        }
    }
    t.check(i2_ok == 5, format!("x3*x4 | g: {i2_ok}/5 with an I2 fibre and N = 20"));
    t.check(iv_ok == 5, format!("x3 | q: {iv_ok}/5 with a ramified IV fibre"));
    let m = family::random_z_member(&f, &mut rng, ZShape::X4DividesG);
    let rep = analyze_line(&m.surface, &family::base_line(&f), &tower)?;
    t.note(format!(
        "x4 | g alone: {} I2 fibre(s), N = {}",
        rep.count(&Kodaira::I(2)),
        rep.n
    ));
    Ok(())
}

fn segre(t: &mut Tally, b: &Bundle, seed: u64) -> Result<()> {
    let mut first = 0;
    let mut over = Vec::new();
    for file in [&b.schur, &b.example60] {
        let s = surface_of(file)?;
        if s.field().p() < 5 {
            continue;
        }
        for l in enumerate_bruteforce(&s) {
            if let LineKind::First { degree, .. } = crate::fibration::line_kind(&LineFrame::new(&s, &l)?)? {
                first += 1;
                if degree > 18 {
                    over.push(degree);
                }
            }
        }
    }
    t.check(first >= 20 && over.is_empty(), format!("{first} first-kind lines, degrees above 18: {over:?}"));
    let f = FiniteField::new(17, 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4c);
    let mut ok = 0;
    let total = 6;
    for i in 0..total {
        let star = i % 2 == 1;
        let s = family::three_line_fibre_quartic(&f, &mut rng, star);
        let frame = LineFrame::new(&s, &family::base_line(&f))?;
        let LineKind::First { r, .. } = crate::fibration::line_kind(&frame)? else {
            continue;
        };
        let m = r.multiplicity_at(&P1::Finite(0));
        if m >= 3 {
            ok += 1;
        } else {
            t.note(format!("{} fibre: r vanishes to order {m}", if star { "star" } else { "triangle" }));
        }
    }
    t.check(ok == total, format!("{ok}/{total} constructed triangle/star fibres are roots of r of order >= 3"));
    Ok(())
}

fn budgets(t: &mut Tally, b: &Bundle, tower: u32, exec: &Exec) -> Result<()> {
    for (name, file) in b.named() {
        let (s, c) = census_of(file, tower, exec)?;
        if c.field.p() < 5 {
            t.note(format!("{name}: {} lines in characteristic {}; budgets need p >= 5", c.count(), c.field.p()));
            continue;
        }
        let big = over_census_field(&s, &c)?;
        let g = incidence_graph(&c.field, &c.plain_lines());
        let audit = flecnodal::line_budget_audit(&big, &c, &g)?;
        t.check(
            audit.pass(),
            format!(
                "{name}: {} lines, max degree {}, {} conics audited{}",
                audit.count,
                audit.max_degree,
                audit.conics.len(),
                if audit.findings.is_empty() { String::new() } else { format!(", {:?}", audit.findings) }
            ),
        );
    }
    let s = surface_of(&b.z_conic)?;
    let conic = flecnodal::residual_conic(&s, &family::base_line(s.field()), &P1::Finite(0))?;
    let cert = flecnodal::conic_nonmembership(&s, &conic)?;
    t.check(
        cert.samples == flecnodal::CONIC_SAMPLES && cert.not_component,
        format!("residual conic: {} samples, {} flecnodal, certified {}", cert.samples, cert.members, cert.not_component),
    );
    Ok(())
}

fn tables(t: &mut Tally) -> Result<()> {
    use Kodaira::*;
    let base_change = [
        (I(1), [I(1), I(2), I(3)]),
        (I(2), [I(2), I(4), I(6)]),
        (I(3), [I(3), I(6), I(9)]),
        (II, [II, IV, I0Star]),
        (III, [III, I0Star, IIIStar]),
        (IV, [IV, IVStar, Smooth]),
    ];
    let mut entries = 0;
    for (k, row) in &base_change {
        for (d, want) in (1..=3).zip(row) {
            let got = base_change_type(k, d)?;
            t.check(got == *want, format!("{k} under degree {d}: {got}"));
            entries += 1;
        }
    }
    let flex = [
        (I(1), "3 smooth points", "the node"),
        (I(2), "3 smooth points of the line component", "both nodes"),
        (I(3), "3 smooth points on each component", "none"),
        (II, "1 smooth point", "the cusp"),
        (III, "1 smooth point of the line component", "the tacnode"),
        (IV, "1 smooth point on each component", "the triple point"),
    ];
    for (k, sm, sing) in flex {
        let e = flex_support(&k)?;
        t.check(
            e.smooth_points == sm && e.singular_points == sing,
            format!("flex {k}: {}; {}", e.smooth_points, e.singular_points),
        );
        entries += 1;
    }
    t.detail.retain(|d| d.starts_with("FAILED"));
    t.note(format!("{entries} table entries compared"));
    Ok(())
}

fn random_uni(f: &FiniteField, rng: &mut ChaCha8Rng, max_deg: usize) -> UniPoly<FiniteField> {
    let d = rng.gen_range(0..=max_deg);
    UniPoly::new(f, (0..=d).map(|_| rng.gen_range(0..f.q())).collect())
}

fn properties(t: &mut Tally, b: &Bundle, seed: u64) -> Result<()> {
    let f = FiniteField::new(13, 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5d);
    let mut bad = 0;
    for _ in 0..1000 {
        let (a, bb, c) = (random_uni(&f, &mut rng, 5), random_uni(&f, &mut rng, 5), random_uni(&f, &mut rng, 5));
        if a.is_zero() || bb.is_zero() || c.is_zero() {
            continue;
        }
        let lhs = a.mul(&bb).resultant(&c)?;
        let rhs = f.mul(&a.resultant(&c)?, &bb.resultant(&c)?);
        if lhs != rhs {
            bad += 1;
        }
    }
    t.check(bad == 0, format!("resultant multiplicativity: {bad} failures in 1000 cases"));
    let f7 = FiniteField::new(7, 1)?;
    let mut bad = 0;
    let mut cases = 0;
    while cases < 1000 {
        let a = random_uni(&f7, &mut rng, 12);
        if a.deg().unwrap_or(0) == 0 {
            continue;
        }
        cases += 1;
        let parts = a.squarefree_decomposition()?;
        let mut prod = UniPoly::one(&f7);
        let mut ok = true;
        for (i, (g, m)) in parts.iter().enumerate() {
            prod = prod.mul(&g.pow(*m));
            ok &= g.gcd(&g.derivative()).deg() == Some(0);
            for (h, _) in &parts[i + 1..] {
                ok &= g.gcd(h).deg() == Some(0);
            }
        }
        if !ok || prod != a.monic() {
            bad += 1;
        }
    }
    t.check(bad == 0, format!("squarefree reconstruction: {bad} failures in {cases} cases"));
    // Riemann-Hurwitz on every line of the Schur quartic and on random Z-members
    let mut profiles = 0;
    let mut rh_bad = 0;
    let mut check = |s: &QuarticSurface<FiniteField>, l: &ProjLine<u64>| -> Result<()> {
        profiles += 1;
        match ramification_profile(&LineFrame::new(s, l)?, &Tower::new(s.field())) {
            Ok(p) if p.hurwitz_sum == 4 => {}
            _ => rh_bad += 1,
        }
        Ok(())
    };
    let s = surface_of(&b.schur)?;
    for l in enumerate_bruteforce(&s) {
        check(&s, &l)?;
    }
    let fz = FiniteField::new(Z_PRIME, 1)?;
    for shape in [ZShape::Generic, ZShape::X4DividesG, ZShape::X3X4DividesG, ZShape::X3DividesQ] {
        for _ in 0..3 {
            let m = family::random_z_member(&fz, &mut rng, shape);
            check(&m.surface, &family::base_line(&fz))?;
        }
    }
    t.check(rh_bad == 0, format!("Riemann-Hurwitz: {rh_bad} failures among {profiles} profiles"));
    Ok(())
}

fn z_member_example(t: &mut Tally, b: &Bundle) -> Result<()> {
    let s = surface_of(&b.z_member)?;
    let rep = analyze_line(&s, &family::base_line(s.field()), &Tower::new(s.field()))?;
    t.check(rep.kind.is_second(), "second kind");
    t.check(rep.ramification.r == RType::R22, format!("R = {}", rep.ramification.r));
    t.check(rep.n == 18, format!("N = {}", rep.n));
    t.check(rep.checks.all_pass(), "all fibration audits pass");
    Ok(())
}

fn n_equals_degree(t: &mut Tally, b: &Bundle, tower: u32, exec: &Exec) -> Result<()> {
    // z_conic is a fixture for the conic certificate; its lines are not all defined over the
    // fields of the census tower, so degrees there undercount
    for (name, file) in b.named().into_iter().filter(|(n, _)| *n != "z_conic") {
        let (s, c) = census_of(file, tower, exec)?;
        if c.field.p() < 5 {
            t.note(format!("{name}: skipped in characteristic {}", c.field.p()));
            continue;
        }
        let g = crate::report::graph_of_census(name.into(), &s, &c, true, exec)?;
        t.check(
            g.n_mismatches.is_empty(),
            format!("{name}: {} lines over {}, mismatches {:?}", g.count, g.field, g.n_mismatches),
        );
    }
    Ok(())
}

fn json_roundtrip(t: &mut Tally, b: &Bundle, exec: &Exec) -> Result<()> {
    let (_, c) = census_of(&b.schur, 1, exec)?;
    let rep = CensusReport::new("schur".into(), &c);
    let text = serde_json::to_string(&rep)?;
    let v: serde_json::Value = serde_json::from_str(&text)?;
    let count = v["count"].as_u64().unwrap_or(u64::MAX) as usize;
    let lines = v["lines"].as_array().map_or(0, Vec::len);
    let degrees = v["graph"]["degrees"].as_array().map_or(0, Vec::len);
    t.check(
        count == c.count() && lines == count && degrees == count,
        format!("count {count}, lines {lines}, degrees {degrees}"),
    );
    let again: serde_json::Value = serde_json::from_str(&serde_json::to_string(&v)?)?;
    t.check(again == v, "second round trip is stable");
    Ok(())
}
