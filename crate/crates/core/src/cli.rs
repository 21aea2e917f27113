//! Command-line front end: `generate`, `analyze`, `rauzy` and `verify`.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::complexity::ComplexityError;
use crate::generators::{Family, FamilySpec, GenError};
use crate::rauzy::{
    audit_bound, build_rauzy, reduce, reduced_to_dot, reversal_involution, special_factors, to_dot, RauzyError,
};
use crate::realnum::{set_precision_cap, RealError};
use crate::verify::{analyze_window, emit_report, verify_analysis, Analysis, VerifyError};
use crate::wordcore::{parse_word_file, write_word_file, WordError, WordWindow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;

const DEFAULT_LENGTH: usize = 100_000;
const DEFAULT_NMAX: usize = 100;

#[derive(Parser, Debug)]
#[command(name = "palcomplex", version, about = "Factor and palindromic complexity of infinite words")]
#[command(args_conflicts_with_subcommands = true, subcommand_required = false)]
pub struct Cli {
    /// Print a template experiment config for FAMILY and exit.
    #[arg(long, value_name = "FAMILY", num_args = 0..=1, default_missing_value = "sturmian")]
    pub seed_config: Option<String>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a window of a word family to a word file.
    Generate(CommonArgs),
    /// Write the complexity profile (CSV and JSON).
    Analyze(CommonArgs),
    /// Write Rauzy graphs (DOT) and audit records for chosen levels.
    Rauzy {
        #[command(flatten)]
        common: CommonArgs,
        /// Levels to export, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Path of the DOT file (single level only).
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run all checks and write a verification report.
    Verify(CommonArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct CommonArgs {
    /// JSON experiment config; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Analyse a word file instead of generating.
    #[arg(long, conflicts_with = "family")]
    pub word: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_name = "BITS")]
    pub precision_cap: Option<u32>,
    /// Print JSON on stdout instead of a table.
    #[arg(long)]
    pub json: bool,
    /// Window length (interval exchanges: indices -length/2..=length/2).
    #[arg(long)]
    pub length: Option<usize>,
    #[arg(long)]
    pub nmax: Option<usize>,
    #[command(flatten)]
    pub family: FamilyArgs,
}

#[derive(Args, Debug, Clone, Default)]
pub struct FamilyArgs {
    /// sturmian | arnoux_rauzy | rote | beta | substitution | iet
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<String>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub preperiod: Option<Vec<u8>>,
    #[arg(long, value_delimiter = ',')]
    pub period: Option<Vec<u8>>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, value_delimiter = ',')]
    pub t: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',')]
    pub t_period: Option<Vec<u32>>,
    #[arg(long)]
    pub budget: Option<usize>,
    /// Letter images as digit strings, e.g. `01,0`.
    #[arg(long, value_delimiter = ',')]
    pub images: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alphas: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',')]
    pub pi: Option<Vec<usize>>,
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
    #[arg(long)]
    pub allow_degenerate: bool,
}

/// Contents of a `--config` file.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    /// Names of the checks to keep in `verify` reports (all when absent).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision_cap: Option<u32>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn invalid(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INVALID, message: message.into() }
    }
}

fn precision_or_invalid(precision: bool, message: String) -> CliError {
    CliError { code: if precision { EXIT_PRECISION } else { EXIT_INVALID }, message }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        precision_or_invalid(e.is_precision(), e.to_string())
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        precision_or_invalid(e.is_precision(), e.to_string())
    }
}

impl From<RealError> for CliError {
    fn from(e: RealError) -> Self {
        precision_or_invalid(matches!(e, RealError::PrecisionExhausted { .. }), e.to_string())
    }
}

macro_rules! invalid_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::invalid(e.to_string())
            }
        }
    )*};
}

invalid_from!(WordError, ComplexityError, RauzyError, serde_json::Error);

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::invalid(format!("{}: {e}", path.display()))
}

/// Fully resolved inputs of one invocation.
struct Experiment {
    spec: Option<FamilySpec>,
    family: Option<Family>,
    word: Option<WordWindow>,
    length: usize,
    n_max: usize,
    checks: Option<Vec<String>>,
    out: PathBuf,
    json: bool,
}

fn load_config(path: &Path) -> Result<ExperimentConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
}

/// Family flags merged over the config's family object.
fn family_value(base: Option<Value>, f: &FamilyArgs) -> Result<Option<Value>, CliError> {
    let mut map = match base {
        Some(Value::Object(m)) => m,
        Some(_) => return Err(CliError::invalid("config `family` must be an object")),
        None => Map::new(),
    };
    if let Some(name) = &f.family {
        if map.get("family").and_then(Value::as_str) != Some(name.as_str()) {
            map.clear();
        }
        map.insert("family".into(), json!(name));
    }
    let mut set = |key: &str, v: Value| {
        map.insert(key.to_string(), v);
    };
    if let Some(v) = &f.alpha {
        set("alpha", json!(v));
    }
    if let Some(v) = &f.rho {
        set("rho", json!(v));
    }
    if let Some(v) = f.r {
        set("r", json!(v));
    }
    if let Some(v) = &f.preperiod {
        set("preperiod", json!(v));
    }
    if let Some(v) = &f.period {
        set("period", json!(v));
    }
    if let Some(v) = &f.beta {
        set("beta", json!(v));
    }
    if let Some(v) = &f.t {
        set("t", json!(v));
    }
    if let Some(v) = &f.t_period {
        set("t_period", json!(v));
    }
    if let Some(v) = f.budget {
        set("budget", json!(v));
    }
    if let Some(imgs) = &f.images {
        let parsed = imgs
            .iter()
            .map(|s| {
                s.chars()
                    .map(|c| {
                        c.to_digit(10).map(|d| d as u8).ok_or_else(|| CliError::invalid(format!("bad image `{s}`")))
                    })
                    .collect::<Result<Vec<u8>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        set("images", json!(parsed));
    }
    if let Some(v) = &f.alphas {
        set("alphas", json!(v));
    }
    if let Some(v) = &f.pi {
        set("pi", json!(v));
    }
    if let Some(v) = &f.x0 {
        set("x0", json!(v));
    }
    if f.allow_degenerate {
        set("allow_degenerate", json!(true));
    }
    Ok(if map.is_empty() { None } else { Some(Value::Object(map)) })
}

fn resolve(args: &CommonArgs) -> Result<Experiment, CliError> {
    let cfg = match &args.config {
        Some(p) => load_config(p)?,
        None => ExperimentConfig::default(),
    };
    if let Some(bits) = args.precision_cap.or(cfg.precision_cap) {
        set_precision_cap(bits);
    }
    let length = args.length.or(cfg.length).unwrap_or(DEFAULT_LENGTH);
    let n_max = args.nmax.or(cfg.n_max).unwrap_or(DEFAULT_NMAX);
    let out = args.out.clone().or(cfg.out).unwrap_or_else(|| PathBuf::from("."));
    let (spec, family, word) = if let Some(path) = &args.word {
        let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
        let mut windows = parse_word_file(&text)?;
        if windows.len() != 1 {
            return Err(CliError::invalid(format!("{}: expected one window, found {}", path.display(), windows.len())));
        }
        (None, None, windows.pop())
    } else {
        let value = family_value(cfg.family, &args.family)?
            .ok_or_else(|| CliError::invalid("no family given (use --family, --config or --word)"))?;
        let spec: FamilySpec =
            serde_json::from_value(value).map_err(|e| CliError::invalid(format!("family spec: {e}")))?;
        let family = spec.resolve()?;
        (Some(spec), Some(family), None)
    };
    Ok(Experiment { spec, family, word, length, n_max, checks: cfg.checks, out, json: args.json })
}

impl Experiment {
    fn window(&self) -> Result<WordWindow, CliError> {
        match (&self.word, &self.family) {
            (Some(w), _) => Ok(w.clone()),
            (None, Some(f)) => Ok(f.generate(self.length)?),
            (None, None) => unreachable!("resolve sets one of them"),
        }
    }

    fn analysis(&self, n_max: usize) -> Result<Analysis, CliError> {
        Ok(analyze_window(self.window()?, n_max)?)
    }

    fn label(&self) -> String {
        match &self.family {
            Some(f) => f.label().to_string(),
            None => self.word.as_ref().map_or("word", |w| w.family_label()).to_string(),
        }
    }
}

/// Pretty JSON with keys in sorted order.
fn to_json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let value = serde_json::to_value(v)?;
    let mut s = serde_json::to_string_pretty(&value)?;
    s.push('\n');
    Ok(s)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| io_err(path, e))
}

fn cmd_generate(args: &CommonArgs) -> Result<i32, CliError> {
    let exp = resolve(args)?;
    let w = exp.window()?;
    let path = exp.out.join(format!("{}.word", exp.label()));
    write_file(&path, &write_word_file(&w))?;
    if exp.json {
        print!(
            "{}",
            to_json(&json!({
                "family": exp.label(),
                "length": w.len(),
                "origin_index": w.origin_index(),
                "alphabet_size": w.alphabet_size(),
                "path": path.display().to_string(),
            }))?
        );
    } else {
        println!("wrote {} letters to {}", w.len(), path.display());
    }
    Ok(EXIT_OK)
}

fn cmd_analyze(args: &CommonArgs) -> Result<i32, CliError> {
    let exp = resolve(args)?;
    let a = exp.analysis(exp.n_max)?;
    let csv = a.profile.to_csv();
    let json = to_json(&json!({ "spec": exp.spec, "profile": a.profile }))?;
    write_file(&exp.out.join("profile.csv"), &csv)?;
    write_file(&exp.out.join("profile.json"), &json)?;
    if exp.json {
        print!("{json}");
    } else {
        print!("{csv}");
    }
    Ok(EXIT_OK)
}

fn cmd_rauzy(args: &CommonArgs, levels: &[usize], dot: Option<&Path>) -> Result<i32, CliError> {
    let exp = resolve(args)?;
    if dot.is_some() && levels.len() != 1 {
        return Err(CliError::invalid("--dot needs exactly one level"));
    }
    let top = *levels.iter().max().expect("clap requires a level");
    let a = exp.analysis(top.max(1))?;
    let mut records = Vec::new();
    for &n in levels {
        let g = build_rauzy(&a.table, n)?;
        let specials = special_factors(&g)?;
        let rho = reversal_involution(&g).ok();
        let mut record = json!({
            "n": n,
            "vertices": g.vertices().len(),
            "edges": g.edges().len(),
            "right_special": specials.right.iter().map(|&(v, d)| json!([g.render(&g.vertices()[v]), d])).collect::<Vec<_>>(),
            "left_special": specials.left.iter().map(|&(v, d)| json!([g.render(&g.vertices()[v]), d])).collect::<Vec<_>>(),
            "strongly_connected": g.is_strongly_connected(),
        });
        let reduced = match &rho {
            None => {
                record["audit"] = json!({ "skipped": "not closed under reversal" });
                None
            }
            Some(rho) => match reduce(&g, rho) {
                Ok(rg) => {
                    record["audit"] = serde_json::to_value(audit_bound(&rg, &a.profile, n)?)?;
                    Some(rg)
                }
                Err(e) => {
                    record["audit"] = json!({ "skipped": e.to_string() });
                    None
                }
            },
        };
        let dot_text = to_dot(&g, rho.as_ref());
        match dot {
            Some(p) => write_file(p, &dot_text)?,
            None => write_file(&exp.out.join(format!("rauzy_{n}.dot")), &dot_text)?,
        }
        if let Some(rg) = &reduced {
            write_file(&exp.out.join(format!("reduced_{n}.dot")), &reduced_to_dot(&g, rg))?;
        }
        records.push(record);
    }
    let json = to_json(&json!({ "family": exp.label(), "levels": records }))?;
    write_file(&exp.out.join("audit.json"), &json)?;
    if exp.json {
        print!("{json}");
    } else {
        for r in &records {
            let audit = &r["audit"];
            let status = match audit.get("pass").and_then(Value::as_bool) {
                Some(true) => "pass".to_string(),
                Some(false) => format!("FAIL ({})", audit["violation"].as_str().unwrap_or("")),
                None => format!("skipped ({})", audit["skipped"].as_str().unwrap_or("")),
            };
            println!("n={} vertices={} edges={} audit: {status}", r["n"], r["vertices"], r["edges"]);
        }
    }
    let failed = records.iter().any(|r| r["audit"].get("pass") == Some(&json!(false)));
    Ok(if failed { EXIT_CHECK_FAILED } else { EXIT_OK })
}

fn cmd_verify(args: &CommonArgs) -> Result<i32, CliError> {
    let exp = resolve(args)?;
    let a = exp.analysis(exp.n_max)?;
    let mut report = verify_analysis(&a, exp.family.as_ref());
    if let Some(spec) = &exp.spec {
        report.spec = Some(serde_json::to_value(spec)?);
    }
    if let Some(keep) = &exp.checks {
        report.checks.retain(|c| keep.contains(&c.name));
    }
    let emitted = emit_report(&[report]);
    write_file(&exp.out.join("report.json"), &emitted.json)?;
    if exp.json {
        print!("{}", emitted.json);
    } else {
        print!("{}", emitted.table);
    }
    Ok(emitted.exit_code)
}

/// Template config for one family with the parameters used in the examples.
pub fn seed_config(family: &str) -> Result<ExperimentConfig, CliError> {
    let (family, length, n_max) = match family {
        "sturmian" => (json!({"family": "sturmian", "alpha": "(sqrt(5)-1)/2", "rho": "0"}), 100_000, 200),
        "rote" => (json!({"family": "rote", "alpha": "(sqrt(5)-1)/2", "rho": "0"}), 100_000, 150),
        "arnoux_rauzy" => (json!({"family": "arnoux_rauzy", "r": 3}), 200_000, 200),
        "beta" => (json!({"family": "beta", "beta": "(1+sqrt(5))/2"}), 100_000, 100),
        "substitution" => (json!({"family": "substitution", "images": [[0, 1], [0]]}), 100_000, 100),
        "iet" => (
            json!({"family": "iet", "alphas": ["sqrt(2)-1", "sqrt(3)-sqrt(2)", "2-sqrt(3)"], "pi": [3, 2, 1], "x0": "0"}),
            200_001,
            60,
        ),
        other => return Err(CliError::invalid(format!("unknown family `{other}`"))),
    };
    Ok(ExperimentConfig {
        family: Some(family),
        length: Some(length),
        n_max: Some(n_max),
        checks: Some(
            ["abcd_bound", "family_formulas", "main_bound", "rauzy_audit", "vanishing"].map(String::from).to_vec(),
        ),
        out: Some(PathBuf::from("out")),
        precision_cap: Some(crate::realnum::DEFAULT_PRECISION_CAP),
    })
}

pub fn run(cli: Cli) -> Result<i32, CliError> {
    if let Some(family) = &cli.seed_config {
        print!("{}", to_json(&seed_config(family)?)?);
        return Ok(EXIT_OK);
    }
    match &cli.command {
        None => Err(CliError::invalid("no subcommand given (see --help)")),
        Some(Command::Generate(a)) => cmd_generate(a),
        Some(Command::Analyze(a)) => cmd_analyze(a),
        Some(Command::Rauzy { common, n, dot }) => cmd_rauzy(common, n, dot.as_deref()),
        Some(Command::Verify(a)) => cmd_verify(a),
    }
}

/// Parses `args`, runs, prints errors and returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
