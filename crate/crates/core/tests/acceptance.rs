//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use palcomplex::cli::ExperimentConfig;
use palcomplex::complexity::{factor_complexity, naive_oracles, palindromic_complexity, ComplexityProfile};
use palcomplex::generators::{beta_substitution, renyi_expansion, reversal_condition_beta, BetaSpec, FamilySpec};
use palcomplex::rauzy::{audit_bound, build_rauzy, reduce, reversal_involution, special_factors, RauzyError};
use palcomplex::realnum::parse_expr;
use palcomplex::verify::{analyze_window, check_vanishing, Analysis, Status};
use palcomplex::wordcore::{collect_factors, WordWindow};

type Outcome = Result<String, String>;

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

struct Run {
    analysis: Analysis,
    elapsed: Duration,
}

fn run_config(name: &str) -> Result<Run, String> {
    let path = configs_dir().join(format!("{name}.json"));
    let text = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let cfg: ExperimentConfig = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let spec: FamilySpec =
        serde_json::from_value(cfg.family.ok_or("config without family")?).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let family = spec.resolve().map_err(|e| e.to_string())?;
    let window = family.generate(cfg.length.ok_or("config without length")?).map_err(|e| e.to_string())?;
    let analysis = analyze_window(window, cfg.n_max.ok_or("config without n_max")?).map_err(|e| e.to_string())?;
    Ok(Run { analysis, elapsed: start.elapsed() })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Exact laws on every `n` in `lo..=hi`; each level must be stable.
fn laws(
    profile: &ComplexityProfile,
    lo: usize,
    hi: usize,
    c: impl Fn(usize) -> usize,
    p: impl Fn(usize) -> usize,
    psum: Option<usize>,
) -> Result<(), String> {
    for n in lo..=hi {
        let r = profile.row(n).ok_or(format!("level {n} not computed"))?;
        ensure(r.stable, || format!("level {n} unstable"))?;
        ensure(r.c == c(n), || format!("C({n}) = {}, expected {}", r.c, c(n)))?;
        ensure(r.p == p(n), || format!("P({n}) = {}, expected {}", r.p, p(n)))?;
        if let Some(s) = psum {
            ensure(r.psum == s && r.bound == s as i64, || {
                format!("n={n}: psum {} bound {}, expected both {s}", r.psum, r.bound)
            })?;
        }
    }
    Ok(())
}

fn parity(even: usize, odd: usize) -> impl Fn(usize) -> usize {
    move |n| if n % 2 == 0 { even } else { odd }
}

fn timed(run: &Run, limit: Option<u64>) -> Result<String, String> {
    let secs = run.elapsed.as_secs_f64();
    if let Some(l) = limit {
        ensure(secs < l as f64, || format!("took {secs:.2}s, limit {l}s"))?;
    }
    Ok(format!("{secs:.2}s"))
}

fn criterion_1(runs: &BTreeMap<&str, Run>) -> Outcome {
    let r = &runs["sturmian"];
    laws(&r.analysis.profile, 1, 200, |n| n + 1, parity(1, 2), Some(3))?;
    timed(r, Some(5))
}

fn criterion_2(runs: &BTreeMap<&str, Run>) -> Outcome {
    let r = &runs["tribonacci"];
    laws(&r.analysis.profile, 1, 200, |n| 2 * n + 1, parity(1, 3), Some(4))?;
    timed(r, Some(10))
}

fn criterion_3(runs: &BTreeMap<&str, Run>) -> Outcome {
    let r = &runs["rote"];
    laws(&r.analysis.profile, 1, 150, |n| 2 * n, |_| 2, Some(4))?;
    timed(r, None)
}

fn criterion_4(runs: &BTreeMap<&str, Run>) -> Outcome {
    let golden = renyi_expansion(&parse_expr("(1+sqrt(5))/2").unwrap(), 64).map_err(|e| e.to_string())?;
    ensure(golden == BetaSpec::Simple { t: vec![1, 1] }, || format!("golden ratio expands to {golden:?}"))?;
    ensure(beta_substitution(&golden).images() == [vec![0, 1], vec![0]], || "not the Fibonacci substitution".into())?;
    let fib = &runs["beta_golden"].analysis.profile;
    let sturm = &runs["sturmian"].analysis.profile;
    laws(fib, 1, 200, |n| n + 1, parity(1, 2), Some(3))?;
    for n in 0..=200 {
        let (a, b) = (&fib.rows[n], &sturm.rows[n]);
        ensure((a.c, a.p, a.psum, a.bound) == (b.c, b.p, b.psum, b.bound), || {
            format!("level {n} differs from the mechanical word")
        })?;
    }

    let square = renyi_expansion(&parse_expr("(3+sqrt(5))/2").unwrap(), 64).map_err(|e| e.to_string())?;
    ensure(square == BetaSpec::NonSimple { preperiod: vec![2], period: vec![1] }, || {
        format!("golden square expands to {square:?}")
    })?;
    ensure(square.m() == 1 && square.p() == 1, || "m, p != 1".into())?;
    ensure(reversal_condition_beta(&square), || "criterion says not closed".into())?;
    let prof = &runs["beta_golden_square"].analysis.profile;
    ensure(prof.is_reversal_closed(), || "language not closed under reversal".into())?;
    for n in 1..=100 {
        let r = &prof.rows[n];
        ensure(r.stable, || format!("level {n} unstable"))?;
        ensure(r.slack == 0, || format!("n={n}: psum {} != dC+2 = {}", r.psum, r.bound))?;
    }
    Ok("(1,1) and (2;1) both exact".into())
}

fn criterion_5(runs: &BTreeMap<&str, Run>) -> Outcome {
    let r = &runs["iet3_reversal"];
    laws(&r.analysis.profile, 1, 60, |n| 2 * n + 1, parity(1, 3), None)?;
    timed(r, Some(60))
}

fn criterion_6(runs: &BTreeMap<&str, Run>) -> Outcome {
    let r = &runs["iet4_reversal"];
    laws(&r.analysis.profile, 1, 40, |n| 3 * n + 1, parity(1, 4), None)?;
    timed(r, None)
}

fn criterion_7(runs: &BTreeMap<&str, Run>) -> Outcome {
    let prof = &runs["iet3_cyclic"].analysis.profile;
    let open = prof.first_non_closed_level().ok_or("language closed under reversal on every stable level")?;
    let check = check_vanishing(prof);
    ensure(check.status == Status::Pass, || format!("vanishing check: {check:?}"))?;
    let n0 = check.n0.ok_or("no n0 reported")?;
    ensure(n0 <= 30, || format!("n0 = {n0} > 30"))?;
    for r in prof.stable_rows().filter(|r| r.n >= n0) {
        ensure(r.p == 0, || format!("P({}) = {}", r.n, r.p))?;
    }
    Ok(format!("not closed from level {open}, n0 = {n0}"))
}

fn audit_levels(a: &Analysis, top: usize) -> Result<usize, String> {
    let mut audited = 0;
    for n in 1..=top.min(a.profile.n_max) {
        ensure(a.profile.rows[n].stable, || format!("level {n} unstable"))?;
        let g = build_rauzy(&a.table, n).map_err(|e| e.to_string())?;
        special_factors(&g).map_err(|e| e.to_string())?;
        ensure(g.is_strongly_connected(), || format!("level {n} not strongly connected"))?;
        let rho = match reversal_involution(&g) {
            Ok(rho) => rho,
            Err(RauzyError::NotClosedUnderReversal { .. }) => continue,
            Err(e) => return Err(e.to_string()),
        };
        ensure(rho.is_involution(), || format!("level {n}: rho^2 != id"))?;
        let rg = reduce(&g, &rho).map_err(|e| e.to_string())?;
        let rec = audit_bound(&rg, &a.profile, n).map_err(|e| e.to_string())?;
        ensure(rec.psum <= rec.invariant_paths && rec.invariant_paths as i64 <= rec.delta_bound, || {
            format!("level {n}: {rec:?}")
        })?;
        rec.ensure().map_err(|e| e.to_string())?;
        audited += 1;
    }
    Ok(audited)
}

fn criterion_8(runs: &BTreeMap<&str, Run>) -> Outcome {
    let mut audited = 0;
    for (name, r) in runs {
        audited += audit_levels(&r.analysis, 100).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} families, {audited} mirror audits", runs.len()))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_901);
    let mut mismatches = 0;
    for _ in 0..1000 {
        let k = rng.gen_range(1..=4usize);
        let len = rng.gen_range(0..=200usize);
        let w: Vec<u8> = (0..len).map(|_| rng.gen_range(0..k as u8)).collect();
        let win = WordWindow::full_word(w, k).map_err(|e| e.to_string())?;
        let (c, p) = naive_oracles(&win, len).map_err(|e| e.to_string())?;
        let table = collect_factors(&win, len).map_err(|e| e.to_string())?;
        let pal = palindromic_complexity(&win, len).map_err(|e| e.to_string())?;
        if factor_complexity(&table).values != c || pal.values != p {
            mismatches += 1;
        }
    }
    ensure(mismatches == 0, || format!("{mismatches} mismatching words"))?;
    Ok("1000 words, 0 mismatches".into())
}

fn criterion_10(runs: &BTreeMap<&str, Run>) -> Outcome {
    let mut levels = 0;
    for (name, r) in runs {
        let prof = &r.analysis.profile;
        for row in prof.rows.iter().filter(|row| row.n >= 1) {
            let Some(&c) = prof.c_ext.values.get(row.n + row.n / 4) else { continue };
            ensure(row.n * row.p <= 16 * c, || format!("{name}: n={} P={} C={c}", row.n, row.p))?;
            levels += 1;
        }
    }
    Ok(format!("{levels} levels"))
}

fn run_cli(args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_palcomplex")).args(args).output().map_err(|e| e.to_string())?;
    ensure(out.status.code().is_some_and(|c| c <= 1), || format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)))
}

fn dir_contents(dir: &Path) -> Result<BTreeMap<String, Vec<u8>>, String> {
    let mut files = BTreeMap::new();
    for entry in fs::read_dir(dir).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let bytes = fs::read(&path).map_err(|e| e.to_string())?;
        files.insert(path.file_name().unwrap().to_string_lossy().into_owned(), bytes);
    }
    Ok(files)
}

fn criterion_11() -> Outcome {
    let mut configs: Vec<PathBuf> = fs::read_dir(configs_dir())
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    configs.sort();
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut compared = 0;
    for cfg in &configs {
        let stem = cfg.file_stem().unwrap().to_string_lossy().into_owned();
        let mut snapshots = Vec::new();
        for round in 0..2 {
            let dir = tmp.path().join(format!("{stem}_{round}"));
            let (c, d) = (cfg.to_str().unwrap(), dir.to_str().unwrap());
            for sub in ["analyze", "verify", "generate"] {
                run_cli(&[sub, "--config", c, "--out", d])?;
            }
            run_cli(&["rauzy", "--config", c, "--out", d, "--n", "1,2,7"])?;
            snapshots.push(dir_contents(&dir)?);
        }
        ensure(snapshots[0] == snapshots[1], || format!("{stem}: outputs differ between runs"))?;
        compared += snapshots[0].len();
    }
    Ok(format!("{} configs, {compared} files identical", configs.len()))
}

fn main() {
    let names = [
        "sturmian",
        "tribonacci",
        "rote",
        "beta_golden",
        "beta_golden_square",
        "iet3_reversal",
        "iet4_reversal",
        "iet3_cyclic",
    ];
    let mut runs = BTreeMap::new();
    let mut load_error = None;
    for name in names {
        match run_config(name) {
            Ok(r) => {
                runs.insert(name, r);
            }
            Err(e) => load_error = Some(format!("{name}: {e}")),
        }
    }
    let with_runs = |f: fn(&BTreeMap<&str, Run>) -> Outcome| -> Outcome {
        match &load_error {
            Some(e) => Err(e.clone()),
            None => f(&runs),
        }
    };
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "Sturmian C, P and equality, n <= 200", with_runs(criterion_1)),
        (2, "Arnoux-Rauzy r=3 C, P and equality, n <= 200", with_runs(criterion_2)),
        (3, "Rote C = 2n, P = 2, equality, n <= 150", with_runs(criterion_3)),
        (4, "beta expansions and their fixed points", with_runs(criterion_4)),
        (5, "reversal IET r=3, n <= 60", with_runs(criterion_5)),
        (6, "reversal IET r=4, n <= 40", with_runs(criterion_6)),
        (7, "non-reversal IET palindromes vanish", with_runs(criterion_7)),
        (8, "structural audit, n <= 100", with_runs(criterion_8)),
        (9, "oracle equivalence on random words", criterion_9()),
        (10, "P(n) <= 16/n C(n + n/4)", with_runs(criterion_10)),
        (11, "byte-identical reruns", criterion_11()),
    ];
    let mut failed = 0;
    for (id, title, outcome) in &results {
        match outcome {
            Ok(msg) => println!("criterion {id:>2} PASS  {title} ({msg})"),
            Err(msg) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {title}: {msg}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
