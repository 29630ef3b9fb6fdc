//! Configuration, orchestration, reports and rendering behind the binary.

pub mod config;
pub mod render;

use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use config::{paper_example, AlgebraSpec, Bounds, Config, Context, SubcatSpec, WindowSpec, PRESETS};

use crate::dercat::{DerCat, SInt, TriWitness};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::hearts::exact::{self, DualCheck, ExactAnalysis, ExactFlags, HeartData};
use crate::hearts::recheck_cover;
use crate::hearts::tri::{self, TriAnalysis, TriHeartData};
use crate::modcat::{Algebra, Interval};
use crate::pairs::{ExactCat, IdSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Analyze,
    Enumerate,
    Dual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Passed,
    Failed,
    Inconclusive,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Passed => 0,
            Outcome::Failed => 1,
            Outcome::Inconclusive => 3,
        }
    }
}

/// Exit code for an error that stopped a command.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) | Error::Unsupported(_) | Error::Json(_) | Error::Io(_) => 2,
        Error::Window(_) => 3,
        Error::Verification(_) | Error::Internal(_) => 1,
    }
}

/// One pair of an enumeration sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub u: Vec<Interval>,
    pub v: Vec<Interval>,
    pub flags: ExactFlags,
    pub enough_injectives: bool,
    pub dual_agree: bool,
    pub disagreements: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub pairs: Vec<SweepEntry>,
    pub positive: usize,
    pub negative: usize,
    pub consistent: bool,
    pub note: String,
}

/// Existence verdicts compared against the search with multiplied bounds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Audit {
    pub factor: usize,
    pub checked: usize,
    pub changed: Vec<String>,
    pub undecided: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: Command,
    pub config: Config,
    pub outcome: Outcome,
    pub summary: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ExactAnalysis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<DualCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derived: Option<TriAnalysis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<Enumeration>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub audit: Option<Audit>,
    pub caveats: Vec<String>,
    pub timing_ms: u64,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Input(format!("report: {e}")))
    }
}

fn module_setup(c: &Config) -> Result<(ExactCat, IdSet, IdSet)> {
    let alg = c.algebra.as_ref().ok_or_else(|| Error::Input("module context needs an algebra".into()))?.build()?;
    let e = ExactCat::new(alg.clone(), Exec::default())?;
    let u = e.ids_of(&c.u()?.intervals(&alg)?)?;
    let v = e.perp_ext_right(&u);
    Ok((e, u, v))
}

fn derived_setup(c: &Config) -> Result<(DerCat, crate::dercat::Class)> {
    let w = c.window.as_ref().ok_or_else(|| Error::Input("derived context needs a window".into()))?;
    let dc = DerCat::new(w.n, w.build()?)?;
    Ok((dc, c.u()?.class(w.n)?))
}

fn list<T: ToString>(xs: &[T]) -> String {
    format!("{{{}}}", xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

const FIELD_CAVEAT: &str = "density is certified over a small prime field; indecomposable counts are assumed field-independent for these directed algebras";

/// Executes `cmd` on `config`.
pub fn run(cmd: Command, config: &Config) -> Result<Report> {
    config.validate()?;
    let start = Instant::now();
    let mut report = Report {
        command: cmd,
        config: config.clone(),
        outcome: Outcome::Passed,
        summary: Vec::new(),
        module: None,
        dual: None,
        derived: None,
        enumeration: None,
        audit: None,
        caveats: Vec::new(),
        timing_ms: 0,
    };
    match (cmd, config.context) {
        (Command::Analyze, Context::Module) => {
            let (e, u, v) = module_setup(config)?;
            let a = exact::analyze(&e, &u, &v, &config.options())?;
            report.summary = module_summary(&e, &a);
            if !a.flags.consistent() {
                report.outcome = Outcome::Failed;
            }
            if a.equivalence.is_some() {
                report.caveats.push(FIELD_CAVEAT.into());
            }
            if config.bounds.audit_factor > 1 {
                let audit = module_audit(&e, &u, &v, &a, config.bounds.audit_factor)?;
                if !audit.changed.is_empty() {
                    report.outcome = Outcome::Failed;
                }
                report.audit = Some(audit);
            }
            report.module = Some(a);
        }
        (Command::Analyze, Context::Derived) => {
            let (dc, u) = derived_setup(config)?;
            let a = tri::analyze(&dc, &u, &config.options())?;
            report.summary = derived_summary(&a);
            report.caveats.extend(a.boundary.iter().map(|b| format!("inconclusive at boundary: {b}")));
            if a.equivalence.is_some() {
                report.caveats.push(FIELD_CAVEAT.into());
            }
            report.outcome = if !a.flags.consistent() || !a.disagreements.is_empty() {
                Outcome::Failed
            } else if !a.boundary.is_empty() {
                Outcome::Inconclusive
            } else {
                Outcome::Passed
            };
            if config.bounds.audit_factor > 1 {
                let audit = derived_audit(&dc, &u, config.bounds.audit_factor)?;
                if !audit.changed.is_empty() {
                    report.outcome = Outcome::Failed;
                }
                report.audit = Some(audit);
            }
            report.derived = Some(a);
        }
        (Command::Enumerate, Context::Module) => {
            let alg = config.algebra.as_ref().expect("validated").build()?;
            let en = enumerate(&alg, &config.options(), Exec::default())?;
            report.summary.push(format!("{} cotorsion pairs, flags consistent: {}", en.pairs.len(), en.consistent));
            report.summary.push(en.note.clone());
            if !en.consistent {
                report.outcome = Outcome::Failed;
            }
            report.enumeration = Some(en);
        }
        (Command::Dual, Context::Module) => {
            let (e, u, v) = module_setup(config)?;
            let op = ExactCat::new(e.cat().algebra().opposite(), Exec::default())?;
            let d = exact::verify_dual(&e, &op, &u, &v)?;
            report.summary.push(format!(
                "enough injectives: {}; (K,D) cotorsion: {}; opposite enough projectives: {}; agree: {}",
                d.enough_injectives, d.kd_cotorsion, d.opposite_enough_projectives, d.agree
            ));
            if !d.agree {
                report.outcome = Outcome::Failed;
            }
            report.dual = Some(d);
        }
        (_, Context::Derived) => return Err(Error::Unsupported("enumerate and dual need the module context".into())),
    }
    report.timing_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn module_summary(e: &ExactCat, a: &ExactAnalysis) -> Vec<String> {
    let mut s = vec![
        format!("indecomposables: {}", e.len()),
        format!("cotorsion pair: {}", a.pair.ok()),
        format!("coheart C: {}", list(&a.coheart)),
        format!("C/P: {}", list(&a.coheart_mod_p)),
        format!("heart: {}", list(&a.heart)),
        format!("kernel K: {}", list(&a.kernel_b)),
        format!("H(ΩC): {}", list(&a.gens)),
        format!("enough projectives: {}; (C,K) cotorsion: {}", a.flags.enough_projectives, a.flags.ck_cotorsion),
        format!("Γ: dim {}, {} vertices, {} arrows", a.gamma.dim, a.gamma.quiver.vertices.len(), a.gamma.quiver.arrows.len()),
    ];
    if let Some(q) = &a.equivalence {
        s.push(format!("equivalence: fully faithful {}, dense {}, counts {:?}", q.fully_faithful, q.dense, q.counts));
    }
    s.extend(a.disagreements.iter().map(|d| format!("disagreement: {d}")));
    s
}

fn derived_summary(a: &TriAnalysis) -> Vec<String> {
    let mut s = vec![
        format!("trust window: degrees {}..={}", a.window.t_min, a.window.t_max),
        format!("cotorsion pair: {}", a.pair.ok()),
        format!("coheart C: {}", list(&a.coheart)),
        format!("heart: {}", list(&a.heart)),
        format!("H(C): {}", list(&a.gens)),
        format!("enough projectives: {}; (C,K) torsion pair: {}", a.flags.enough_projectives, a.flags.torsion_pair),
        format!("Γ: dim {}, {} vertices, {} arrows", a.gamma.dim, a.gamma.quiver.vertices.len(), a.gamma.quiver.arrows.len()),
    ];
    if let Some(q) = &a.equivalence {
        s.push(format!("equivalence: fully faithful {}, dense {}, counts {:?}", q.fully_faithful, q.dense, q.counts));
    }
    s.extend(a.disagreements.iter().map(|d| format!("disagreement: {d}")));
    s
}

/// Every cotorsion pair of `mod alg` with its flags and the dual check.
pub fn enumerate(alg: &Algebra, opts: &exact::Options, exec: Exec) -> Result<Enumeration> {
    let e = ExactCat::new(alg.clone(), exec)?;
    let op = ExactCat::new(alg.opposite(), exec)?;
    let pairs = exact::enumerate_pairs(&e, exec)?;
    let entries = exec.map(pairs, |(u, v)| -> Result<SweepEntry> {
        let a = exact::analyze(&e, &u, &v, opts)?;
        let d = exact::verify_dual(&e, &op, &u, &v)?;
        Ok(SweepEntry {
            u: a.u.clone(),
            v: a.v.clone(),
            flags: a.flags.clone(),
            enough_injectives: d.enough_injectives,
            dual_agree: d.agree,
            disagreements: a.disagreements,
        })
    });
    let pairs: Vec<SweepEntry> = entries.into_iter().collect::<Result<_>>()?;
    let positive = pairs.iter().filter(|p| p.flags.enough_projectives).count();
    let negative = pairs.len() - positive;
    let consistent = pairs.iter().all(|p| p.flags.consistent() && p.dual_agree);
    let note = if negative == 0 {
        "no negative instance observed: every pair has enough projectives H(ΩC); the biconditional was checked by agreement of independent computations".into()
    } else {
        format!("{negative} negative instances observed")
    };
    Ok(Enumeration { pairs, positive, negative, consistent, note })
}

fn module_audit(e: &ExactCat, u: &IdSet, v: &IdSet, a: &ExactAnalysis, factor: usize) -> Result<Audit> {
    let d = HeartData::new(e, u, v);
    let w: IdSet = d.w.iter().copied().collect();
    let c = e.ids_of(&a.coheart)?;
    let k = e.ids_of(&a.kernel_b)?;
    let mut audit = Audit { factor, ..Audit::default() };
    for b in 0..e.len() {
        let checks: [(&str, bool, bool); 6] = [
            ("onto U, kernel V", e.onto(b, u, v).is_some(), e.onto_audit(b, u, v, factor)?),
            ("out of, V then U", e.out_of(b, v, u).is_some(), e.out_of_audit(b, v, u, factor)?),
            ("E+", e.onto(b, &w, v).is_some(), e.onto_audit(b, &w, v, factor)?),
            ("E-", e.out_of(b, &w, u).is_some(), e.out_of_audit(b, &w, u, factor)?),
            ("onto C, kernel K", e.onto(b, &c, &k).is_some(), e.onto_audit(b, &c, &k, factor)?),
            ("out of, K then C", e.out_of(b, &k, &c).is_some(), e.out_of_audit(b, &k, &c, factor)?),
        ];
        for (name, base, wide) in checks {
            audit.checked += 1;
            if base != wide {
                audit.changed.push(format!("{name} at {}: {base} -> {wide}", e.ind(b)));
            }
        }
    }
    Ok(audit)
}

fn derived_audit(dc: &DerCat, u: &crate::dercat::Class, factor: usize) -> Result<Audit> {
    let v = tri::right_perp(dc, u);
    let w = u.intersection(&v);
    let classes = [
        ("U then V[1]", u.clone(), v.shifted(1)),
        ("U[-1] then V", u.shifted(-1), v.clone()),
        ("T+", w.clone(), v.shifted(1)),
        ("T-", u.shifted(-1), w.clone()),
    ];
    let yes = |_: &TriWitness| Some(true);
    let mut audit = Audit { factor, ..Audit::default() };
    for t in dc.trusted() {
        for (name, x, y) in &classes {
            let base = dc.triangle_exists(t, x, y, false, &yes)?.verdict();
            let wide = dc.triangle_audit(t, x, y, factor)?.verdict();
            audit.checked += 1;
            match (base, wide) {
                (Some(a), Some(b)) if a != b => audit.changed.push(format!("{name} at {}: {a} -> {b}", dc.obj(t))),
                (Some(_), Some(_)) => {}
                _ => audit.undecided += 1,
            }
        }
    }
    Ok(audit)
}

/// Re-validates every witness in a report without repeating its searches.
pub fn recheck(report: &Report) -> Result<()> {
    let c = &report.config;
    if let Some(a) = &report.module {
        let (e, u, v) = module_setup(c)?;
        exact::recheck_pair(&e, &u, &v, &a.pair)?;
        let d = HeartData::new(&e, &u, &v);
        for h in &a.h_images {
            exact::recheck_h(&e, &d, h)?;
        }
        for w in &a.covers {
            recheck_cover(&d.lin, w)?;
        }
        if a.flags.enough_projectives && a.covers.len() != a.heart.len() {
            return Err(Error::Verification("enough projectives claimed without a cover for every heart object".into()));
        }
        let coheart = e.ids_of(&a.coheart)?;
        let kernel = e.ids_of(&a.kernel_b)?;
        if a.flags.ck_cotorsion {
            exact::recheck_pair(&e, &coheart, &kernel, &a.ck)?;
        }
        for w in &a.left_sequences {
            e.recheck_out_of(w)?;
            if !e.obj_in(&w.middle, &u) || !w.other.iter().all(|x| coheart.contains(&e.id_of(x))) {
                return Err(Error::Verification(format!("left sequence of {} leaves U or C", w.object)));
            }
        }
    }
    if let Some(a) = &report.derived {
        let (dc, u) = derived_setup(c)?;
        let v = tri::right_perp(&dc, &u);
        let trusted = |s: &SInt| dc.window().trusts(s.d);
        for w in a.pair.left.iter().chain(&a.pair.right) {
            dc.recheck_triangle(w)?;
        }
        if a.pair.left.len() != a.pair.right.len() || a.pair.left.iter().any(|w| !trusted(&w.object)) {
            return Err(Error::Verification("pair witnesses do not match the trust window".into()));
        }
        let vs = v.shifted(1);
        for w in &a.pair.left {
            if !w.x.iter().all(|s| u.contains(s) == Some(true)) || !w.y.iter().all(|s| vs.contains(s) == Some(true)) {
                return Err(Error::Verification(format!("left triangle of {} leaves (U, V[1])", w.object)));
            }
        }
        let d = TriHeartData::new(&dc, &u, &v)?;
        for h in &a.h_images {
            tri::recheck_h(&dc, &d, h)?;
        }
        for w in a.torsion.witnesses.iter().chain(&a.heart_triangles) {
            dc.recheck_triangle(w)?;
        }
        if a.flags.torsion_pair && a.torsion.witnesses.len() != dc.trusted().len() {
            return Err(Error::Verification("torsion pair claimed without a triangle for every trusted object".into()));
        }
        let lin = dc.quotient(&d.w_ids, &d.heart_ids);
        for w in &a.covers {
            recheck_cover(&lin, w)?;
        }
    }
    if let Some(en) = &report.enumeration {
        if en.consistent != en.pairs.iter().all(|p| p.flags.consistent() && p.dual_agree) {
            return Err(Error::Verification("enumeration summary disagrees with its entries".into()));
        }
    }
    Ok(())
}

/// The subcategory, coheart and heart of a report as AR grids.
pub fn render_ascii(report: &Report) -> Result<String> {
    let mut out = String::new();
    let legend = format!("legend: {} in U, {} coheart, {} heart, {} other\n", render::IN, render::COHEART, render::HEART, render::OUT);
    if let Some(a) = &report.module {
        let alg = report.config.algebra.as_ref().expect("module report").build()?;
        let all = alg.indecomposables();
        out.push_str("U\n");
        out.push_str(&render::render_module(&all, &[(&a.u, render::IN)]));
        out.push_str("heart\n");
        out.push_str(&render::render_module(&all, &[(&a.heart, render::IN)]));
        out.push_str("combined\n");
        out.push_str(&render::render_module(&all, &[(&a.u, render::IN), (&a.coheart, render::COHEART), (&a.heart, render::HEART)]));
        out.push_str(&legend);
    }
    if let Some(a) = &report.derived {
        let n = report.config.window.as_ref().expect("derived report").n;
        let ivs = Algebra::hereditary(n).indecomposables();
        let all: Vec<SInt> = (a.window.t_min..=a.window.t_max).flat_map(|d| ivs.iter().map(move |iv| SInt::new(*iv, d))).collect();
        out.push_str(&format!("degrees {}..={}\n", a.window.t_min, a.window.t_max));
        out.push_str(&render::render_derived(n, &all, &[(&a.u, render::IN), (&a.coheart, render::COHEART), (&a.heart, render::HEART)]));
        out.push_str(&legend);
    }
    if out.is_empty() {
        out.push_str("nothing to render\n");
    }
    Ok(out)
}
