//! Command-line front end. [`run`] parses arguments, dispatches one verb and
//! returns the exit code: 0 on success, 1 when a check or verification
//! fails, 2 for malformed input.

pub mod worked;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::ergodic::{
    self, cauchy_probe, config, gowers_norm, report, vdc_check, FolnerBoxes, FolnerShape, ProductFunction, System,
};
use crate::family::{io, normalize_to_ed, PolyFamily};
use crate::pet::{
    self, k_bound, reduce_partial, specialization_oracle, standardize_family, PetError, ReduceOptions, ShiftMode,
    DEFAULT_STEP_BUDGET,
};

/// Environment variable overriding the reduction step budget.
pub const STEP_BUDGET_VAR: &str = "PET_STEP_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "petlab",
    version,
    about = "PET induction for polynomial families and a lab for multiple ergodic averages"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report whether a family is an ED-set and list violated conditions.
    Check { family: PathBuf },
    /// Strip constant terms, drop zero rows and merge duplicates.
    Normalize {
        family: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the column degree, the subweights of every subfamily and the weight.
    Weight { family: PathBuf },
    /// Reduce a standard family to a linear one and write the trace as JSON.
    Reduce {
        family: PathBuf,
        /// Include the bar and output family of every step.
        #[arg(long)]
        full: bool,
        /// Integer shifts `v,w` used in every coordinate of every step.
        #[arg(long, value_name = "V,W", allow_hyphen_values = true, value_parser = parse_pair)]
        shifts: Option<(i64, i64)>,
        /// Check each formal step against integer shifts drawn with this seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Integer shift pairs per step for --seed.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Lift an ED-set to a standard family of degree b.
    Standardize {
        family: PathBuf,
        #[arg(long)]
        b: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the seminorm index k obtained from the reduction.
    Kbound {
        family: PathBuf,
        /// Stop once a step produces more rows than this.
        #[arg(long)]
        row_cap: Option<usize>,
    },
    /// Seminorm of each observable of a cyclic system.
    Gowers {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        shift: i64,
    },
    /// Norms of the multiple average along a Følner sequence, as CSV.
    Average {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        system: PathBuf,
        /// box, symmetric, or shifted:r1,..,rd
        #[arg(long, default_value = "box")]
        folner: String,
        /// Increasing box indices, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        indices: Vec<usize>,
        /// Order of the seminorm column (cyclic systems; default r + 1).
        #[arg(long)]
        k: Option<u32>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Both sides of the van der Corput inequality for the product functions
    /// of a family, as CSV.
    Vdc {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        system: PathBuf,
        /// Finite set F: points separated by `;`, coordinates by `,`.
        #[arg(long, default_value = "0;1;2;3;4", allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value = "box")]
        folner: String,
        #[arg(long, value_delimiter = ',', required = true)]
        indices: Vec<usize>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the built-in worked example and compare with its stated values.
    PaperExample,
}

/// A failed command and its exit code.
#[derive(Debug)]
enum Failure {
    /// Exit 2.
    Input(String),
    /// Exit 1.
    Check(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(format!("i/o error: {e}"))
    }
}

impl From<PetError> for Failure {
    fn from(e: PetError) -> Self {
        Failure::Check(e.to_string())
    }
}

impl From<ergodic::ErgodicError> for Failure {
    fn from(e: ergodic::ErgodicError) -> Self {
        match e {
            ergodic::ErgodicError::Dimension { .. } | ergodic::ErgodicError::NotSpecialized { .. } => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Check(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `v,w`, got `{s}`"))?;
    let a = a.trim().parse().map_err(|_| format!("bad integer `{a}`"))?;
    let b = b.trim().parse().map_err(|_| format!("bad integer `{b}`"))?;
    Ok((a, b))
}

/// Reads the step budget override; `None` means the default.
pub fn step_budget_from(value: Option<&str>) -> Result<usize, String> {
    match value {
        None => Ok(DEFAULT_STEP_BUDGET),
        Some(s) => s
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| format!("{STEP_BUDGET_VAR} must be a positive integer, got `{s}`")),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_family(path: &Path) -> Result<PolyFamily, Failure> {
    io::from_str(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_system(path: &Path) -> Result<config::SystemSpec, Failure> {
    config::from_str(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_folner(s: &str, dim: usize) -> Result<FolnerBoxes, Failure> {
    let shape = match s {
        "box" => FolnerShape::Box,
        "symmetric" => FolnerShape::Symmetric,
        _ => {
            let rates =
                s.strip_prefix("shifted:").ok_or_else(|| Failure::Input(format!("unknown Følner shape `{s}`")))?;
            let rate = rates
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Failure::Input(format!("bad offset rate in `{s}`")))?;
            if rate.len() != dim {
                return Err(Failure::Input(format!(
                    "offset rate has {} entries, family dimension is {dim}",
                    rate.len()
                )));
            }
            FolnerShape::Shifted { rate }
        }
    };
    Ok(FolnerBoxes::new(shape, dim))
}

fn parse_window(s: &str, dim: usize) -> Result<Vec<Vec<i64>>, Failure> {
    s.split(';')
        .map(|pt| {
            let v = pt
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Failure::Input(format!("bad point `{pt}` in window")))?;
            if v.len() != dim {
                return Err(Failure::Input(format!("window point `{pt}` has {} coordinates, expected {dim}", v.len())));
            }
            Ok(v)
        })
        .collect()
}

fn emit(out: &mut dyn Write, path: &Option<PathBuf>, text: &str) -> CmdResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn check(out: &mut dyn Write, path: &Path) -> CmdResult {
    let fam = load_family(path)?;
    let violations = fam.ed_violations();
    writeln!(out, "rows: {}, columns: {}, degree: {}", fam.num_rows(), fam.num_cols(), fam.degree())?;
    if violations.is_empty() {
        writeln!(out, "ED-set: yes")?;
        writeln!(out, "standard: {}", if fam.is_standard() { "yes" } else { "no" })?;
        return Ok(());
    }
    writeln!(out, "ED-set: no")?;
    for v in &violations {
        writeln!(out, "  {v}")?;
    }
    Err(Failure::Check(format!("{} violated condition(s)", violations.len())))
}

fn normalize(out: &mut dyn Write, path: &Path, output: &Option<PathBuf>) -> CmdResult {
    let fam = load_family(path)?;
    let (norm, rep) = normalize_to_ed(&fam).map_err(|e| Failure::Input(e.to_string()))?;
    emit(out, output, &pretty(&io::to_json(&norm)))?;
    if output.is_some() {
        writeln!(
            out,
            "kept {} of {} rows, dropped {:?}, merged {:?}",
            norm.num_rows(),
            fam.num_rows(),
            rep.dropped_rows.iter().map(|i| i + 1).collect::<Vec<_>>(),
            rep.merged_groups
                .iter()
                .filter(|g| g.len() > 1)
                .map(|g| g.iter().map(|i| i + 1).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        )?;
    }
    Ok(())
}

fn weight(out: &mut dyn Write, path: &Path) -> CmdResult {
    let fam = load_family(path)?;
    let err = |e: crate::family::FamilyError| Failure::Check(e.to_string());
    writeln!(out, "C(P) = {}", fam.column_degree().map_err(err)?)?;
    let w = fam.weight().map_err(err)?;
    for (a, m) in w.matrices().iter().enumerate() {
        writeln!(out, "w(P^{}) = {}", a + 1, m)?;
    }
    writeln!(out, "W(P) = {w}")?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn reduce(
    out: &mut dyn Write,
    err: &mut dyn Write,
    path: &Path,
    full: bool,
    shifts: Option<(i64, i64)>,
    seed: Option<u64>,
    samples: usize,
    output: &Option<PathBuf>,
    budget: usize,
) -> CmdResult {
    if shifts.is_some() && seed.is_some() {
        return Err(Failure::Input("--seed checks formal steps and cannot be combined with --shifts".into()));
    }
    let fam = load_family(path)?;
    let opts = ReduceOptions {
        shifts: match shifts {
            Some((v, w)) => ShiftMode::Concrete { v, w },
            None => ShiftMode::Formal,
        },
        step_budget: budget,
        row_cap: None,
    };
    let (trace, stopped) = reduce_partial(&fam, &opts)?;
    if let Some(PetError::CheckFailed { step, checks, dump }) = &stopped {
        let failed: Vec<&str> = checks.named().iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
        writeln!(err, "step {step} failed: {}", failed.join(", "))?;
        writeln!(err, "{}", pretty(&pet::trace::step_json(step - 1, dump, true)))?;
    }
    emit(out, output, &pretty(&pet::trace::partial_to_json(&trace, full, stopped.as_ref())))?;
    if let Some(e) = stopped {
        let done = trace.steps.len();
        return Err(Failure::Check(format!("reduction stopped after {done} completed step(s): {e}")));
    }
    let Some(seed) = seed else { return Ok(()) };
    let notes: &mut dyn Write = if output.is_some() { out } else { err };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for (i, step) in trace.steps.iter().enumerate() {
        let o = specialization_oracle(step, samples, 1000, &mut rng)?;
        writeln!(
            notes,
            "step {}: {} shift pairs compared, {} matched, {} degenerate skipped",
            i + 1,
            o.compared,
            o.matched,
            o.degenerate
        )?;
        if !o.passed() {
            bad += 1;
        }
    }
    if bad > 0 {
        return Err(Failure::Check(format!("specialization mismatch in {bad} step(s)")));
    }
    Ok(())
}

fn standardize(out: &mut dyn Write, path: &Path, b: u32, output: &Option<PathBuf>) -> CmdResult {
    let fam = load_family(path)?;
    let std = standardize_family(&fam, b)?;
    emit(out, output, &pretty(&io::to_json(&std)))
}

fn kbound(out: &mut dyn Write, path: &Path, row_cap: Option<usize>, budget: usize) -> CmdResult {
    let fam = load_family(path)?;
    let opts = ReduceOptions { step_budget: budget, row_cap, ..Default::default() };
    let kb = k_bound(&fam, &opts)?;
    writeln!(out, "k = {}", kb.k)?;
    writeln!(
        out,
        "standardized: {}, steps: {}, terminal rows: {}",
        if kb.standardized { "yes" } else { "no" },
        kb.steps,
        kb.terminal_rows
    )?;
    Ok(())
}

fn gowers(out: &mut dyn Write, path: &Path, k: u32, shift: i64) -> CmdResult {
    let spec = load_system(path)?;
    if !matches!(spec.system, System::Cyclic(_)) {
        return Err(Failure::Input("gowers needs a cyclic system".into()));
    }
    for (i, f) in spec.observables.iter().enumerate() {
        let dense = f.as_dense().expect("cyclic observables are dense");
        writeln!(out, "f{}: U^{k} = {}", i + 1, report::fmt_float(gowers_norm(dense, shift, k)?))?;
    }
    Ok(())
}

fn average(
    out: &mut dyn Write,
    family: &Path,
    system: &Path,
    folner: &str,
    indices: &[usize],
    k: Option<u32>,
    output: &Option<PathBuf>,
) -> CmdResult {
    let fam = load_family(family)?;
    let spec = load_system(system)?;
    let boxes = parse_folner(folner, fam.context().dim())?;
    let rows = cauchy_probe(&spec.system, &fam, &spec.observables, &boxes, indices)?;
    let seminorm = match &spec.system {
        System::Cyclic(_) => {
            let order = k.unwrap_or(spec.observables.len() as u32 + 1);
            let mut min = f64::INFINITY;
            for f in &spec.observables {
                min = min.min(gowers_norm(f.as_dense().expect("dense"), 1, order)?);
            }
            Some(min)
        }
        System::Torus(_) => None,
    };
    emit(out, output, &report::average_csv(&rows, seminorm))
}

#[allow(clippy::too_many_arguments)]
fn vdc(
    out: &mut dyn Write,
    family: &Path,
    system: &Path,
    window: &str,
    folner: &str,
    indices: &[usize],
    tol: f64,
    output: &Option<PathBuf>,
) -> CmdResult {
    let fam = load_family(family)?;
    let spec = load_system(system)?;
    let dim = fam.context().dim();
    let boxes = parse_folner(folner, dim)?;
    let f_set = parse_window(window, dim)?;
    let g = ProductFunction::new(&spec.system, &fam, &spec.observables)?;
    // evaluate once up front so that overflow is reported as an error
    for n in indices {
        for u in boxes.points(*n) {
            g.at(&u)?;
        }
    }
    let rep = vdc_check(|u| g.at(u).expect("checked above"), &f_set, &boxes, indices)?;
    emit(out, output, &report::vdc_csv(&rep))?;
    if rep.holds(tol) {
        Ok(())
    } else {
        let r = rep.last();
        Err(Failure::Check(format!("inequality fails at N = {}: lhs {} > rhs {}", r.index, r.lhs, r.rhs)))
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write, budget: Option<String>) -> CmdResult {
    let budget = || step_budget_from(budget.as_deref()).map_err(Failure::Input);
    match cli.command {
        Command::Check { family } => check(out, &family),
        Command::Normalize { family, output } => normalize(out, &family, &output),
        Command::Weight { family } => weight(out, &family),
        Command::Reduce { family, full, shifts, seed, samples, output } => {
            reduce(out, err, &family, full, shifts, seed, samples, &output, budget()?)
        }
        Command::Standardize { family, b, output } => standardize(out, &family, b, &output),
        Command::Kbound { family, row_cap } => kbound(out, &family, row_cap, budget()?),
        Command::Gowers { system, k, shift } => gowers(out, &system, k, shift),
        Command::Average { family, system, folner, indices, k, output } => {
            average(out, &family, &system, &folner, &indices, k, &output)
        }
        Command::Vdc { family, system, window, folner, indices, tol, output } => {
            vdc(out, &family, &system, &window, &folner, &indices, tol, &output)
        }
        Command::PaperExample => match worked::run(out)? {
            Ok(true) => Ok(()),
            Ok(false) => Err(Failure::Check("worked example values differ".into())),
            Err(e) => Err(Failure::Check(e)),
        },
    }
}

/// Runs one command line. `budget` is the raw value of the step budget
/// variable, if set.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, budget: Option<String>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                2
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    match dispatch(cli, out, err, budget) {
        Ok(()) => 0,
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

/// [`run_with`] reading the step budget from the environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, out, err, std::env::var(STEP_BUDGET_VAR).ok())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(std::iter::once("petlab").chain(args.iter().copied()), &mut out, &mut err, None);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn worked_example_verb_passes() {
        let (code, out, _) = call(&["paper-example"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("P_{-1,1}=Q   MATCH"));
        assert!(out.contains("{2,3}"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["check"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn missing_file_exits_two() {
        let (code, _, err) = call(&["check", "/nonexistent/family.json"]);
        assert_eq!(code, 2);
        assert!(err.contains("nonexistent"));
    }

    #[test]
    fn step_budget_parsing() {
        assert_eq!(step_budget_from(None), Ok(DEFAULT_STEP_BUDGET));
        assert_eq!(step_budget_from(Some("12")), Ok(12));
        assert!(step_budget_from(Some("0")).is_err());
        assert!(step_budget_from(Some("many")).is_err());
    }

    #[test]
    fn shift_pairs_parse() {
        assert_eq!(parse_pair("-1,1"), Ok((-1, 1)));
        assert!(parse_pair("3").is_err());
    }

    #[test]
    fn windows_and_shapes_parse() {
        assert_eq!(parse_window("0;1;2", 1).unwrap(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(parse_window("0,0;1,-1", 2).unwrap(), vec![vec![0, 0], vec![1, -1]]);
        assert!(parse_window("0,0", 1).is_err());
        assert_eq!(parse_folner("shifted:2", 1).unwrap().shape, FolnerShape::Shifted { rate: vec![2] });
        assert!(parse_folner("disc", 1).is_err());
    }
}
