//! Command-line front end: load inputs, run suites, print reports.

pub mod input;
pub mod report;
pub mod suites;

use crate::checks::Tolerances;
use crate::cocycles::{enumerate_bicharacters, DualCocycle};
use clap::{Args, Parser, Subcommand};
use input::{InputError, SystemFile};
use report::VerificationReport;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use suites::{Inputs, Options, Pair};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "qdeform", version, about = "Verify cocycle deformations of finite quantum group actions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a verification suite: pentagon, duality, cocycle, twisted, deform,
    /// theorems, stages, cohomology, kahlerian or all.
    Run(RunArgs),
    /// List every bicharacter of an abelian group as cocycle file sections.
    #[command(name = "enumerate_cocycles", alias = "enumerate-cocycles")]
    EnumerateCocycles(EnumerateArgs),
}

#[derive(Args, Debug)]
pub struct RunArgs {
    pub suite: String,
    /// Group file; without any input file the shipped inputs are used.
    #[arg(long)]
    pub group: Option<PathBuf>,
    /// Cocycle file, verified on load.
    #[arg(long)]
    pub cocycle: Option<PathBuf>,
    /// System file naming a group, an algebra preset, a cocycle and verifiers.
    #[arg(long)]
    pub system: Option<PathBuf>,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = crate::tensorkit::TOL_IDENTITY)]
    pub tol_identity: f64,
    #[arg(long, default_value_t = crate::tensorkit::TOL_SPAN)]
    pub tol_span: f64,
    /// Treat skipped verifiers as failures.
    #[arg(long)]
    pub strict: bool,
    /// JSON report on standard output (the default).
    #[arg(long, conflicts_with = "table")]
    pub json: bool,
    /// Human-readable table instead of JSON.
    #[arg(long)]
    pub table: bool,
    /// Load cocycles even when they fail verification.
    #[arg(long)]
    pub force_unverified: bool,
    /// Random coboundaries per pair in the cohomology suite.
    #[arg(long, default_value_t = 100)]
    pub coboundaries: usize,
    /// Half-dimension of the j-group; both 0 and 1 when absent.
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, default_value_t = 2.0)]
    pub theta: f64,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Sampling box half-width for the j-group coordinates.
    #[arg(long, default_value_t = 2.0)]
    pub half_width: f64,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub group: PathBuf,
    /// Only bicharacters are supported.
    #[arg(long, default_value = "bicharacter")]
    pub kind: String,
    /// Also write one cocycle file per bicharacter into this directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parse arguments, run, and return the process exit code. Reports go to
/// `out`, diagnostics to `err`.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let result = match cli.command {
        Command::Run(a) => run(&a, out),
        Command::EnumerateCocycles(a) => enumerate(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn options(a: &RunArgs) -> Result<Options, InputError> {
    let bad = |m: &str| InputError::Invalid(m.to_string());
    if !(a.tol_identity >= 0.0 && a.tol_span >= 0.0) {
        return Err(bad("tolerances must be non-negative numbers"));
    }
    if a.theta == 0.0 || !a.theta.is_finite() {
        return Err(bad("--theta must be finite and nonzero"));
    }
    if !(a.half_width > 0.0 && a.half_width.is_finite()) {
        return Err(bad("--half-width must be positive"));
    }
    Ok(Options {
        seed: a.seed,
        tolerances: Tolerances {
            identity: a.tol_identity,
            span: a.tol_span,
            ..Tolerances::default()
        },
        coboundaries: a.coboundaries,
        kahlerian_d: a.d.map(|d| vec![d]).unwrap_or_else(|| vec![0, 1]),
        theta: a.theta,
        samples: a.samples,
        half_width: a.half_width,
    })
}

/// Inputs from files. Cocycles default to every bicharacter for the
/// cocycle-level suites and to the first nontrivial one for deformations;
/// algebras default to every preset.
pub fn resolve_inputs(a: &RunArgs) -> Result<Inputs, InputError> {
    if a.group.is_none() && a.cocycle.is_none() && a.system.is_none() {
        return Ok(suites::shipped());
    }
    let sys = match &a.system {
        Some(p) => input::load_system(p)?,
        None => SystemFile::default(),
    };
    for v in &sys.verify {
        if !suites::VERIFIERS.iter().any(|(n, _)| n == v) {
            let names: Vec<&str> = suites::VERIFIERS.iter().map(|(n, _)| *n).collect();
            return Err(InputError::Invalid(format!(
                "unknown verifier `{v}`; expected one of {}",
                names.join(", ")
            )));
        }
    }
    if let Some(alg) = &sys.algebra {
        if !suites::ALGEBRAS.contains(&alg.as_str()) {
            return Err(InputError::Invalid(format!(
                "unknown algebra preset `{alg}`; expected one of {}",
                suites::ALGEBRAS.join(", ")
            )));
        }
    }
    let group_path = a
        .group
        .clone()
        .or(sys.group.clone())
        .ok_or_else(|| InputError::Invalid("a group file is required (--group or in the system file)".into()))?;
    let g = input::load_group(&group_path)?;
    let q = input::ambient(&g, sys.quantum.clone());
    let loaded = match a.cocycle.clone().or(sys.cocycle.clone()) {
        Some(p) => Some(input::load_cocycles(&p, &q, a.force_unverified)?),
        None => None,
    };
    let enumerated = || -> Vec<DualCocycle> {
        if g.factors.is_some() && q.kind == crate::fqg::Kind::GroupAlgebra {
            suites::all_bicharacter_cocycles(&g)
        } else {
            vec![DualCocycle::trivial(&q)]
        }
    };
    let cocycles = loaded.clone().unwrap_or_else(enumerated);
    let pair_cocycles = loaded.unwrap_or_else(|| {
        let all = enumerated();
        let nontrivial = all.iter().find(|c| !suites::is_trivial(c)).cloned();
        vec![nontrivial.unwrap_or_else(|| all[0].clone())]
    });
    let algebras: Vec<String> = match &sys.algebra {
        Some(a) => vec![a.clone()],
        None => suites::ALGEBRAS.iter().map(|s| s.to_string()).collect(),
    };
    let mut pairs = Vec::new();
    for c in &pair_cocycles {
        for alg in &algebras {
            pairs.push(Pair {
                algebra: alg.clone(),
                cocycle: c.clone(),
                verify: sys.verify.clone(),
            });
        }
    }
    Ok(Inputs {
        groups: vec![q],
        cocycles,
        pairs,
        dual_cases: Vec::new(),
    })
}

fn run(a: &RunArgs, out: &mut dyn Write) -> Result<i32, InputError> {
    if !suites::SUITES.contains(&a.suite.as_str()) {
        return Err(InputError::Invalid(format!(
            "unknown suite `{}`; expected one of {}",
            a.suite,
            suites::SUITES.join(", ")
        )));
    }
    let opts = options(a)?;
    let inputs = resolve_inputs(a)?;
    let report = suites::run_suite(&a.suite, &inputs, &opts).map_err(InputError::Invalid)?;
    emit(&report, a.table, out)?;
    Ok(exit_code(&report, a.strict))
}

pub fn exit_code(report: &VerificationReport, strict: bool) -> i32 {
    if !report.pass() || (strict && !report.skipped.is_empty()) {
        EXIT_FAIL
    } else {
        EXIT_PASS
    }
}

fn emit(report: &VerificationReport, table: bool, out: &mut dyn Write) -> Result<(), InputError> {
    let text = if table {
        report.to_table()
    } else {
        report.to_json()
    };
    out.write_all(text.as_bytes()).map_err(|source| InputError::Io {
        path: "<stdout>".into(),
        source,
    })
}

fn enumerate(a: &EnumerateArgs, out: &mut dyn Write) -> Result<i32, InputError> {
    if a.kind != "bicharacter" {
        return Err(InputError::Invalid(format!(
            "unsupported cocycle kind `{}`; only `bicharacter` is available",
            a.kind
        )));
    }
    let g = input::load_group(&a.group)?;
    if !g.is_abelian() {
        return Err(InputError::Invalid(format!("group `{}` is not abelian", g.name)));
    }
    if g.factors.is_none() && g.order() > 1 {
        return Err(InputError::Invalid(
            "give abelian groups by invariant factors (`abelian n1 n2 ..`) to enumerate".into(),
        ));
    }
    let bs = enumerate_bicharacters(&g).map_err(|e| InputError::Invalid(e.to_string()))?;
    let io = |source| InputError::Io {
        path: "<stdout>".into(),
        source,
    };
    let antisym = bs.iter().filter(|b| b.is_antisymmetric_nontrivial()).count();
    writeln!(
        out,
        "# {} bicharacters on {}, {antisym} with nontrivial antisymmetrization listed first",
        bs.len(),
        g.name
    )
    .map_err(io)?;
    if let Some(dir) = &a.out {
        std::fs::create_dir_all(dir).map_err(|source| InputError::Io {
            path: dir.display().to_string(),
            source,
        })?;
    }
    for (i, b) in bs.iter().enumerate() {
        let label = suites::bicharacter_label(b);
        let text = input::bicharacter_file(b, &label);
        out.write_all(text.as_bytes()).map_err(io)?;
        if let Some(dir) = &a.out {
            let path = dir.join(format!("b{i:03}.coc"));
            std::fs::write(&path, &text).map_err(|source| InputError::Io {
                path: path.display().to_string(),
                source,
            })?;
        }
    }
    Ok(EXIT_PASS)
}
