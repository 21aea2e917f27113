//! Checks that turn complexity profiles and graph audits into reports.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::complexity::{build_profile_from_table, extended_level, ComplexityError, ComplexityProfile};
use crate::generators::{check_iet_conditions, BetaSpec, Family, FamilySpec, GenError};
use crate::rauzy::{audit_bound, build_rauzy, reduce, reversal_involution, special_factors, RauzyError};
use crate::wordcore::{collect_factors, LanguageTable, WordError, WordWindow};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Complexity(#[from] ComplexityError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("no known complexity law for {0}")]
    UnknownFamilyLaw(String),
}

impl VerifyError {
    pub fn is_precision(&self) -> bool {
        matches!(self, VerifyError::Gen(g) if g.is_precision())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    /// Smallest and largest level tested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub range: Option<(usize, usize)>,
    /// First failing level.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equality_levels: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n0: Option<usize>,
}

impl CheckResult {
    fn new(name: &str, status: Status) -> Self {
        CheckResult {
            name: name.to_string(),
            status,
            range: None,
            counterexample: None,
            detail: None,
            equality_levels: None,
            n0: None,
        }
    }

    fn skipped(name: &str, why: impl Into<String>) -> Self {
        CheckResult { detail: Some(why.into()), ..CheckResult::new(name, Status::Skipped) }
    }

    /// Pass unless `first_bad` is set; `tested` must be increasing.
    fn over(name: &str, tested: &[usize], first_bad: Option<(usize, String)>) -> Self {
        if tested.is_empty() {
            return CheckResult::skipped(name, "no stable level to test");
        }
        let mut r = CheckResult::new(name, if first_bad.is_some() { Status::Fail } else { Status::Pass });
        r.range = Some((tested[0], *tested.last().unwrap()));
        if let Some((n, why)) = first_bad {
            r.counterexample = Some(n);
            r.detail = Some(why);
        }
        r
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowMeta {
    pub length: usize,
    pub origin_index: i64,
    pub guard: usize,
    pub n_max: usize,
    /// Every level up to this one is stable.
    pub stable_through: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<Value>,
    pub window: WindowMeta,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// `P(n) + P(n+1) <= ΔC(n) + 2` on every stable `n >= 1`.
pub fn check_main_bound(profile: &ComplexityProfile) -> CheckResult {
    const NAME: &str = "main_bound";
    if let Some(n) = profile.first_non_closed_level() {
        return CheckResult::skipped(NAME, format!("not closed under reversal at level {n}"));
    }
    if profile.periodic {
        return CheckResult::skipped(NAME, "periodic input");
    }
    let rows: Vec<_> = profile.stable_rows().filter(|r| r.n >= 1).collect();
    let tested: Vec<usize> = rows.iter().map(|r| r.n).collect();
    let bad =
        rows.iter().find(|r| r.slack < 0).map(|r| (r.n, format!("P(n)+P(n+1) = {} > {} = dC(n)+2", r.psum, r.bound)));
    let mut res = CheckResult::over(NAME, &tested, bad);
    if res.status != Status::Skipped {
        res.equality_levels = Some(rows.iter().filter(|r| r.slack == 0).map(|r| r.n).collect());
    }
    res
}

/// `n P(n) <= 16 C(n + floor(n/4))` wherever both sides are stable.
pub fn check_abcd_bound(profile: &ComplexityProfile) -> CheckResult {
    // only meaningful for aperiodic words: with C bounded, n * P(n) outgrows any constant
    if profile.periodic {
        return CheckResult::skipped("abcd_bound", "periodic input");
    }
    let mut tested = Vec::new();
    let mut bad = None;
    for r in profile.stable_rows().filter(|r| r.n >= 1) {
        let Some(c) = profile.stable_c(r.n + r.n / 4) else { continue };
        tested.push(r.n);
        if bad.is_none() && (r.n * r.p) as u128 > 16 * c as u128 {
            bad = Some((r.n, format!("P(n) = {} > 16/n * C(n + n/4) = 16/{} * {c}", r.p, r.n)));
        }
    }
    CheckResult::over("abcd_bound", &tested, bad)
}

/// Exact `C(n)` and `P(n)` laws of the families with a known formula.
pub fn check_family_formulas(profile: &ComplexityProfile, family: &Family) -> Result<CheckResult, VerifyError> {
    const NAME: &str = "family_formulas";
    type Law = Box<dyn Fn(usize) -> (usize, Option<usize>)>;
    let by_parity = |even: usize, odd: usize| move |n: usize| if n.is_multiple_of(2) { even } else { odd };
    let law: Law = match family {
        Family::Sturmian(_) => Box::new(move |n| (n + 1, Some(by_parity(1, 2)(n)))),
        Family::ArnouxRauzy(d) => {
            let r = d.alphabet_size();
            Box::new(move |n| ((r - 1) * n + 1, Some(by_parity(1, r)(n))))
        }
        Family::Rote(_) => Box::new(|n| (2 * n, Some(2))),
        Family::Iet { spec, .. } => {
            let cond = check_iet_conditions(spec)?;
            if !cond.all_hold() {
                return Err(VerifyError::UnknownFamilyLaw(
                    "interval exchange failing independence or irreducibility".into(),
                ));
            }
            let r = spec.r();
            let reversal = cond.reversal;
            Box::new(move |n| ((r - 1) * n + 1, reversal.then(|| by_parity(1, r)(n))))
        }
        Family::Beta(b) if *b == BetaSpec::Simple { t: vec![1, 1] } => {
            Box::new(move |n| (n + 1, Some(by_parity(1, 2)(n))))
        }
        Family::Beta(b) if crate::generators::reversal_condition_beta(b) => return Ok(check_beta_laws(profile)),
        other => return Err(VerifyError::UnknownFamilyLaw(other.label().to_string())),
    };
    let rows: Vec<_> = profile.stable_rows().filter(|r| r.n >= 1).collect();
    let tested: Vec<usize> = rows.iter().map(|r| r.n).collect();
    let bad = rows.iter().find_map(|r| {
        let (c, p) = law(r.n);
        if r.c != c {
            Some((r.n, format!("C(n) = {}, expected {c}", r.c)))
        } else if p.is_some_and(|p| p != r.p) {
            Some((r.n, format!("P(n) = {}, expected {}", r.p, p.unwrap())))
        } else {
            None
        }
    });
    Ok(CheckResult::over(NAME, &tested, bad))
}

/// Reversal-closed beta words: equality in the main bound and
/// `P(n+2) - P(n) = ΔC(n+1) - ΔC(n)`.
fn check_beta_laws(profile: &ComplexityProfile) -> CheckResult {
    let rows = &profile.rows;
    let mut tested = Vec::new();
    let mut bad = None;
    for r in profile.stable_rows().filter(|r| r.n >= 1) {
        tested.push(r.n);
        if bad.is_some() {
            continue;
        }
        if r.slack != 0 {
            bad = Some((r.n, format!("P(n)+P(n+1) = {} != {} = dC(n)+2", r.psum, r.bound)));
        } else if let (Some(r1), Some(r2)) = (rows.get(r.n + 1), rows.get(r.n + 2)) {
            if r1.stable && r2.stable && r2.p as i64 - r.p as i64 != r1.dc - r.dc {
                bad = Some((
                    r.n,
                    format!("P(n+2)-P(n) = {} != {} = dC(n+1)-dC(n)", r2.p as i64 - r.p as i64, r1.dc - r.dc),
                ));
            }
        }
    }
    CheckResult::over("family_formulas", &tested, bad)
}

/// For inputs not closed under reversal: the first stable level from which
/// `P` stays zero up to the horizon. Passes when that level lies in the
/// lower half of the stable range.
pub fn check_vanishing(profile: &ComplexityProfile) -> CheckResult {
    const NAME: &str = "vanishing";
    let Some(open) = profile.first_non_closed_level() else {
        return CheckResult::skipped(NAME, "closed under reversal on all stable levels");
    };
    let rows: Vec<_> = profile.stable_rows().filter(|r| r.n >= 1).collect();
    let tested: Vec<usize> = rows.iter().map(|r| r.n).collect();
    let Some(&horizon) = tested.last() else {
        return CheckResult::skipped(NAME, "no stable level to test");
    };
    let mut n0 = None;
    for r in rows.iter().rev() {
        if r.p != 0 {
            break;
        }
        n0 = Some(r.n);
    }
    let bad = match n0 {
        None => Some((horizon, format!("palindromes persist to the horizon (P = {})", rows.last().unwrap().p))),
        Some(n0) if n0 > horizon / 2 => Some((n0 - 1, format!("P(n) = 0 only from n0 = {n0}, past half of {horizon}"))),
        _ => None,
    };
    let mut res = CheckResult::over(NAME, &tested, bad);
    res.n0 = n0;
    res.detail.get_or_insert_with(|| format!("first level without reversal closure: {open}"));
    res
}

/// Graph-side checks on every stable level `1..=n_max`: the degree identity,
/// strong connectivity and, where the level is closed under reversal, the
/// mirror involution and the audit chain.
pub fn check_structure(table: &LanguageTable, profile: &ComplexityProfile) -> CheckResult {
    let mut tested = Vec::new();
    let mut bad = None;
    for r in profile.stable_rows().filter(|r| r.n >= 1) {
        tested.push(r.n);
        if bad.is_none() {
            if let Err(e) = audit_one(table, profile, r.n) {
                bad = Some((r.n, e.to_string()));
            }
        }
    }
    CheckResult::over("rauzy_audit", &tested, bad)
}

fn audit_one(table: &LanguageTable, profile: &ComplexityProfile, n: usize) -> Result<(), RauzyError> {
    let g = build_rauzy(table, n)?;
    special_factors(&g)?;
    if !g.is_strongly_connected() {
        return Err(RauzyError::NotStronglyConnected { n });
    }
    let rho = match reversal_involution(&g) {
        Ok(rho) => rho,
        Err(RauzyError::NotClosedUnderReversal { .. }) => return Ok(()),
        Err(e) => return Err(e),
    };
    if !rho.is_involution() {
        return Err(RauzyError::AuditViolation { n, check: "involution".into(), detail: "rho^2 != id".into() });
    }
    match reduce(&g, &rho) {
        Ok(rg) => audit_bound(&rg, profile, n)?.ensure(),
        Err(RauzyError::PeriodicLanguage { .. }) if profile.periodic => Ok(()),
        Err(e) => Err(e),
    }
}

/// Generated window, language table and profile of one family.
pub struct Analysis {
    pub window: WordWindow,
    pub table: LanguageTable,
    pub profile: ComplexityProfile,
}

pub fn analyze_window(window: WordWindow, n_max: usize) -> Result<Analysis, VerifyError> {
    let table = collect_factors(&window, extended_level(&window, n_max))?;
    let profile = build_profile_from_table(&window, &table, n_max)?;
    Ok(Analysis { window, table, profile })
}

/// Generates `length` letters of `spec` and runs every check.
pub fn verify_spec(spec: &FamilySpec, length: usize, n_max: usize) -> Result<VerificationReport, VerifyError> {
    let family = spec.resolve()?;
    let analysis = analyze_window(family.generate(length)?, n_max)?;
    let mut report = verify_analysis(&analysis, Some(&family));
    report.spec = Some(serde_json::to_value(spec).expect("spec serializes"));
    Ok(report)
}

pub fn verify_analysis(analysis: &Analysis, family: Option<&Family>) -> VerificationReport {
    let profile = &analysis.profile;
    let formulas = match family.map(|f| check_family_formulas(profile, f)) {
        Some(Ok(c)) => c,
        Some(Err(e)) => CheckResult::skipped("family_formulas", e.to_string()),
        None => CheckResult::skipped("family_formulas", "no family given"),
    };
    let mut checks = vec![
        check_main_bound(profile),
        check_abcd_bound(profile),
        formulas,
        check_vanishing(profile),
        check_structure(&analysis.table, profile),
    ];
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let w = &analysis.window;
    VerificationReport {
        family: family.map_or_else(|| w.family_label().to_string(), |f| f.label().to_string()),
        spec: None,
        window: WindowMeta {
            length: w.len(),
            origin_index: w.origin_index(),
            guard: w.guard(),
            n_max: profile.n_max,
            stable_through: profile.rows.iter().take_while(|r| r.stable).last().map(|r| r.n),
        },
        checks,
    }
}

/// Serialized reports and the exit code: 0 when nothing failed, 1 otherwise.
pub struct Emitted {
    pub json: String,
    pub table: String,
    pub exit_code: i32,
}

pub fn emit_report(reports: &[VerificationReport]) -> Emitted {
    // serde_json's default map is ordered by key
    let value = serde_json::to_value(serde_json::json!({ "reports": reports })).expect("reports serialize");
    let mut json = serde_json::to_string_pretty(&value).expect("value serializes");
    json.push('\n');
    let mut table = format!("{:<14} {:<16} {:<8} {:<11} {}\n", "family", "check", "status", "range", "detail");
    for r in reports {
        for c in &r.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            };
            let range = c.range.map_or("-".to_string(), |(a, b)| format!("{a}..{b}"));
            let mut detail = c.detail.clone().unwrap_or_default();
            if let Some(n) = c.counterexample {
                detail = format!("n={n}: {detail}");
            }
            if let Some(n0) = c.n0 {
                detail = format!("n0={n0} {detail}");
            }
            writeln!(table, "{:<14} {:<16} {:<8} {:<11} {}", r.family, c.name, status, range, detail.trim_end())
                .unwrap();
        }
    }
    let exit_code = i32::from(reports.iter().any(VerificationReport::failed));
    Emitted { json, table, exit_code }
}
