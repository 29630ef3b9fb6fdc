//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines print in order; exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use coheart::cli::{self, paper_example, AlgebraSpec, Bounds, Command, Config, Context, Outcome, SubcatSpec};
use coheart::exec::Exec;
use coheart::funcat::{dedup_iso, enumerate_candidates, enumerate_indec_modules, is_indecomposable, FinAlgebra};
use coheart::hearts::exact::{check_pair, HeartData, Options};
use coheart::hearts::{lifts, projectives, sample_epis};
use coheart::modcat::{Algebra, Interval};
use coheart::pairs::{ExactCat, IdSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXAMPLE_LIMIT: Duration = Duration::from_secs(60);
const SWEEP_LIMIT: Duration = Duration::from_secs(300);
const RANDOM_INSTANCES: usize = 20;
const SAMPLES: usize = 50;
const SEED: u64 = 0x5eed;

type Verdict = Result<String, String>;
type Suite = Box<dyn Fn() -> Result<(), String>>;

fn ivs(items: &[&str]) -> Vec<Interval> {
    let mut v: Vec<Interval> = items.iter().map(|s| s.parse().unwrap()).collect();
    v.sort();
    v
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn err(e: coheart::Error) -> String {
    e.to_string()
}

fn nakayama() -> Verdict {
    let start = Instant::now();
    let config = paper_example("nakayama-a5").map_err(err)?;
    let report = cli::run(Command::Analyze, &config).map_err(err)?;
    let a = report.module.as_ref().ok_or("no module analysis")?;
    let alg = Algebra::uniform(5, 4).map_err(err)?;
    let e = ExactCat::new(alg.clone(), Exec::default()).map_err(err)?;
    ensure(e.len() == 14, format!("{} indecomposables", e.len()))?;
    let m = e.ids_of(&a.u).map_err(err)?;
    let v = e.perp_ext_right(&m);
    ensure(a.pair.ok() && e.perp_ext_left(&v) == m, "(M, M^perp) is not a cotorsion pair")?;
    let left = e.intervals(&e.perp_ext_left(&m));
    ensure(left.len() == 7 && left == a.coheart, format!("left perp {left:?} vs coheart {:?}", a.coheart))?;
    ensure(a.coheart_mod_p == ivs(&["[3,5]", "[4,5]"]), format!("C/P = {:?}", a.coheart_mod_p))?;
    ensure(a.heart == ivs(&["[2,2]", "[3,4]", "[2,4]"]), format!("heart = {:?}", a.heart))?;
    let q = &a.gamma.quiver;
    ensure(a.gamma.dim == 3 && q.vertices.len() == 2 && q.arrows.len() == 1 && q.relations.is_empty(), format!("Γ = {:?}", a.gamma))?;
    let eq = a.equivalence.as_ref().ok_or("no equivalence check")?;
    ensure(eq.fully_faithful && eq.dense && eq.counts == (3, 3), format!("equivalence {eq:?}"))?;
    ensure(report.outcome == Outcome::Passed, format!("outcome {:?}", report.outcome))?;
    let t = start.elapsed();
    ensure(t < EXAMPLE_LIMIT, format!("took {t:?}"))?;
    Ok(format!("14 indecomposables, coheart 7, heart {{S2,[3,4],[2,4]}}, Γ dim 3 on A_2, counts (3,3) in {t:.2?}"))
}

fn derived() -> Verdict {
    let start = Instant::now();
    let config = paper_example("derived-a4").map_err(err)?;
    let report = cli::run(Command::Analyze, &config).map_err(err)?;
    let a = report.derived.as_ref().ok_or("no derived analysis")?;
    ensure(a.coheart.len() == 1 && a.heart.len() == 1, format!("coheart {:?}, heart {:?}", a.coheart, a.heart))?;
    ensure(a.flags.torsion_pair, "torsion pair flag is false")?;
    ensure(a.gamma.dim == 1 && a.gamma.quiver.vertices.len() == 1, format!("Γ = {:?}", a.gamma))?;
    let eq = a.equivalence.as_ref().ok_or("no equivalence check")?;
    ensure(eq.fully_faithful && eq.dense && eq.counts == (1, 1), format!("equivalence {eq:?}"))?;
    ensure(a.boundary.is_empty(), format!("boundary caveats {:?}", a.boundary))?;
    ensure(report.outcome == Outcome::Passed, format!("outcome {:?}", report.outcome))?;
    let t = start.elapsed();
    ensure(t < EXAMPLE_LIMIT, format!("took {t:?}"))?;
    Ok(format!("coheart {}, heart {}, Γ ≅ k, counts (1,1) in {t:.2?}", a.coheart[0], a.heart[0]))
}

fn sweep_algebras() -> Vec<Algebra> {
    let mut v: Vec<Algebra> = (1..=4).map(Algebra::hereditary).collect();
    v.push(Algebra::uniform(5, 4).unwrap());
    v
}

fn sweep() -> (Verdict, Verdict) {
    let start = Instant::now();
    let mut total = 0;
    let mut dual_pairs = 0;
    let mut problems = Vec::new();
    let mut dual_problems = Vec::new();
    let mut notes = Vec::new();
    for alg in sweep_algebras() {
        let en = match cli::enumerate(&alg, &Options::default(), Exec::default()) {
            Ok(en) => en,
            Err(e) => return (Err(e.to_string()), Err("sweep failed".into())),
        };
        for p in &en.pairs {
            let f = &p.flags;
            if !(f.biconditional && f.c_is_perp_k && f.kernels_agree && f.consistent()) {
                problems.push(format!("{:?}: {:?}", p.u, p.disagreements));
            }
            if f.enough_projectives && f.ck_cotorsion && f.equivalence != Some(true) {
                problems.push(format!("{:?}: equivalence {:?}", p.u, f.equivalence));
            }
            if !p.dual_agree || p.enough_injectives != dual_enough(&alg, p) {
                dual_problems.push(format!("{:?}", p.u));
            }
            dual_pairs += 1;
        }
        total += en.pairs.len();
        notes.push(en.note.clone());
    }
    let t = start.elapsed();
    let negative = notes.iter().any(|n| !n.starts_with("no negative instance observed"));
    let c3 = if !problems.is_empty() {
        Err(format!("{} inconsistent pairs, first {}", problems.len(), problems[0]))
    } else if t >= SWEEP_LIMIT {
        Err(format!("took {t:?}"))
    } else if negative {
        Err("a negative instance was observed".into())
    } else {
        Ok(format!("{total} pairs over A_1..A_4 and the Nakayama algebra, no negative instance observed, in {t:.2?}"))
    };
    let c4 = if dual_problems.is_empty() {
        Ok(format!("enough injectives matches the opposite side on all {dual_pairs} pairs"))
    } else {
        Err(format!("{} pairs disagree, first {}", dual_problems.len(), dual_problems[0]))
    };
    (c3, c4)
}

/// Enough projectives for the transported pair, computed from scratch over
/// the opposite algebra.
fn dual_enough(alg: &Algebra, p: &cli::SweepEntry) -> bool {
    let op = alg.opposite();
    let e = ExactCat::new(op.clone(), Exec::default()).unwrap();
    let dv: Vec<Interval> = p.v.iter().map(|iv| alg.dual_interval(iv)).collect();
    let du: Vec<Interval> = p.u.iter().map(|iv| alg.dual_interval(iv)).collect();
    let (u, v) = (e.ids_of(&dv).unwrap(), e.ids_of(&du).unwrap());
    let opts = Options { equivalence: false, ..Options::default() };
    coheart::hearts::exact::analyze(&e, &u, &v, &opts).map(|a| a.flags.enough_projectives).unwrap_or(false)
}

fn properties() -> Verdict {
    use common::*;
    let start = Instant::now();
    let suites: [(&str, Suite); 7] = [
        ("hom closed form", Box::new(|| run(algebra_with_objects(), check_hom_closed_form))),
        ("barcode round trip", Box::new(|| run(barcode_input(), check_barcode_round_trip))),
        ("conflation recheck", Box::new(|| run(conflation_input(), check_conflation_recheck))),
        ("quotient composition", Box::new(|| run(quotient_input(), check_quotient_composition))),
        ("dimension identities", Box::new(|| run(pair_input(), check_dimension_identities))),
        ("H witness independence", Box::new(|| run(h_input(), check_h_independence))),
        ("cokernel vs H(cone)", Box::new(|| run(cone_input(), check_cone_cokernel))),
    ];
    for (name, suite) in &suites {
        suite().map_err(|e| format!("{name}: {e}"))?;
    }
    let (h, c) = (h_samples().lock().unwrap().len(), cone_samples().lock().unwrap().len());
    ensure(h >= SAMPLES, format!("only {h} distinct objects for H"))?;
    ensure(c >= SAMPLES, format!("only {c} distinct morphisms for H(cone)"))?;
    Ok(format!("7 suites x {CASES} cases, {h} objects for H, {c} morphisms for H(cone), in {:.2?}", start.elapsed()))
}

fn projectives_of_heart() -> Verdict {
    let alg = Algebra::uniform(5, 4).map_err(err)?;
    let e = ExactCat::new(alg, Exec::default()).map_err(err)?;
    let config = paper_example("nakayama-a5").map_err(err)?;
    let report = cli::run(Command::Analyze, &config).map_err(err)?;
    let a = report.module.as_ref().ok_or("no module analysis")?;
    let u = e.ids_of(&a.u).map_err(err)?;
    let d = HeartData::new(&e, &u, &e.perp_ext_right(&u));
    let gens: Vec<usize> = e.ids_of(&a.gens).map_err(err)?.iter().map(|&g| d.local(g).expect("heart object")).collect();
    let epis = sample_epis(&d.lin);
    let lifting = gens.iter().all(|&x| epis.iter().all(|g| lifts(&d.lin, x, g)));
    let projs = projectives(&d.lin);
    ensure(lifting && a.flags.lifting, "H(ΩC) does not lift against every epimorphism")?;
    ensure(projs.iter().all(|p| gens.contains(p)) && a.flags.projectives_in_gens, "a heart projective is missing from H(ΩC)")?;
    Ok(format!("H(ΩC) = {:?} lifts against {} epimorphisms and contains all {} heart projectives", a.gens, epis.len(), projs.len()))
}

fn random_config(rng: &mut ChaCha8Rng) -> Option<Config> {
    let n = rng.gen_range(2..=5);
    let mut caps = vec![1];
    for b in 1..n {
        let c = rng.gen_range(2..=caps[b - 1] + 1);
        caps.push(c);
    }
    let alg = Algebra::new(n, caps.clone()).ok()?;
    let e = ExactCat::new(alg, Exec::default()).ok()?;
    let s: IdSet = (0..e.len()).filter(|_| rng.gen_bool(0.3)).collect();
    let v = e.perp_ext_right(&s);
    let u = e.perp_ext_left(&v);
    if !check_pair(&e, &u, &v).ok() {
        return None;
    }
    Some(Config {
        context: Context::Module,
        algebra: Some(AlgebraSpec { n, caps: Some(caps), cap: None }),
        window: None,
        u: Some(SubcatSpec::Items { items: e.intervals(&u).iter().map(ToString::to_string).collect() }),
        bounds: Bounds { audit_factor: 2, ..Bounds::default() },
    })
}

fn audit() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut instances, mut checked) = (0, 0);
    while instances < RANDOM_INSTANCES {
        let Some(config) = random_config(&mut rng) else { continue };
        let wide = cli::run(Command::Analyze, &config).map_err(err)?;
        let base = cli::run(Command::Analyze, &Config { bounds: Bounds::default(), ..config.clone() }).map_err(err)?;
        let audit = wide.audit.as_ref().ok_or("no audit")?;
        ensure(audit.changed.is_empty(), format!("{:?}: {:?}", config.u, audit.changed))?;
        ensure(wide.outcome == base.outcome, format!("{:?}: outcome {:?} -> {:?}", config.u, base.outcome, wide.outcome))?;
        checked += audit.checked;
        instances += 1;
    }
    Ok(format!("{instances} instances, {checked} existence verdicts unchanged at factor 2"))
}

fn enumeration() -> Verdict {
    let cases = [
        ("k", FinAlgebra::product_of_fields(1), 2, 1),
        ("k×k", FinAlgebra::product_of_fields(2), 2, 2),
        ("kA_2", FinAlgebra::linear_path(2), 2, 3),
        ("kA_3", FinAlgebra::linear_path(3), 3, 6),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut found = Vec::new();
    for (name, g, bound, want) in cases {
        let got = enumerate_indec_modules::<2>(&g, bound).map_err(err)?.len();
        ensure(got == want, format!("{name}: {got} modules, expected {want}"))?;
        let mut indecs = Vec::new();
        for m in enumerate_candidates::<2>(&g, bound).map_err(err)? {
            if is_indecomposable(&g, &m).map_err(err)? {
                indecs.push(m);
            }
        }
        for _ in 0..5 {
            indecs.shuffle(&mut rng);
            let n = dedup_iso(&g, indecs.clone()).map_err(err)?.len();
            ensure(n == want, format!("{name}: {n} modules after a permutation"))?;
        }
        found.push(got.to_string());
    }
    Ok(format!("{} modules for k, k×k, kA_2, kA_3; dedup stable under 5 permutations each", found.join(", ")))
}

fn main() {
    let (c3, c4) = sweep();
    let results: [(&str, Verdict); 8] = [
        ("nakayama-a5 example", nakayama()),
        ("derived-a4 example", derived()),
        ("exhaustive sweep", c3),
        ("dual enough injectives", c4),
        ("property suites", properties()),
        ("heart projectives", projectives_of_heart()),
        ("audit bounds", audit()),
        ("module enumeration", enumeration()),
    ];
    let mut failed = 0;
    for (i, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1)
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
