//! Command-line front end: ingest quadruple files or catalog names, build
//! the graded algebras, run the verification suites, and export structure
//! constants and reports.
//!
//! Exit status: 0 when every check passes, 1 with the first failing check
//! named, 2 on malformed input (with a parse location where available).

use clap::{Args, Parser, Subcommand, ValueEnum};
use rootgrade::bee::EllParam;
use rootgrade::coords::{
    catalog, quadruple_from_json, quadruple_to_json, validate_quadruple, CoordinateQuadruple,
};
use rootgrade::extensions::{center_dim, universal_extension};
use rootgrade::graded::{assemble, check_graded, GradedAlgebra};
use rootgrade::homology::{BbAlgebra, UniformOutcome};
use rootgrade::linalg::{span, QVec, Subspace, Q};
use rootgrade::symplectic::IndexData;
use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "rootgrade",
    about = "Exact construction and verification of BC-graded Lie algebras and their central extensions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Args)]
struct CommonArgs {
    /// Catalog name or path to a quadruple JSON file (a file wins on collision)
    #[arg(long)]
    quadruple: String,
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct RankArgs {
    /// Rank (size of the index set I)
    #[arg(long)]
    n: usize,
    /// Size of the distinguished subset I_0 (at least 4 for graded commands)
    #[arg(long)]
    ell: usize,
    /// The central subspace K: "zero", "hf", or a path to a basis file
    #[arg(long = "K", default_value = "zero")]
    k_spec: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check every per-kind axiom of a coordinate quadruple
    Validate(CommonArgs),
    /// Report the dimensions of b(x)b, K, {b,b}, HF(b) and check the
    /// uniform property of the chosen subspace
    Hf {
        #[command(flatten)]
        common: CommonArgs,
        /// Derivation scaling parameter (any positive integer here)
        #[arg(long)]
        ell: u32,
        /// The subspace to test: "zero", "hf", or a basis file
        #[arg(long = "K", default_value = "zero")]
        k_spec: String,
    },
    /// Assemble L(q, K) and print the summand dimensions
    Build {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        rank: RankArgs,
        /// Also print the weight-space table of the assembled algebra
        #[arg(long)]
        roots: bool,
    },
    /// Assemble L(q, K) and run the full graded-axiom verification
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        rank: RankArgs,
    },
    /// Build the universal central extension L(q, {0}) -> L(q, K) and its
    /// certificates
    Ucex {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        rank: RankArgs,
    },
    /// Export the quadruple in the documented JSON format, or the full
    /// structure constants of an assembled algebra
    Export {
        #[command(flatten)]
        common: CommonArgs,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<String>,
        /// Dump structure constants of L(q, K) instead of the quadruple
        #[arg(long)]
        constants: bool,
        /// Dump structure constants of {b,b} instead of the quadruple
        #[arg(long, conflicts_with = "constants")]
        bb_constants: bool,
        #[arg(long, required_if_eq("constants", "true"))]
        n: Option<usize>,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long = "K", default_value = "zero")]
        k_spec: String,
    },
}

/// A report is an ordered list of key-value lines, printed either aligned
/// (text) or as `key=value` (machine). Rendering is deterministic.
struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    fn new() -> Self {
        Report { lines: Vec::new() }
    }

    fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.lines.push((key.into(), value.to_string()));
    }

    fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Machine => {
                for (k, v) in &self.lines {
                    writeln!(out, "{k}={v}").unwrap();
                }
            }
            Format::Text => {
                let width = self.lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.lines {
                    writeln!(out, "{k:width$}  {v}").unwrap();
                }
            }
        }
        out
    }
}

enum CliError {
    /// Malformed input: exit 2.
    Parse(String),
    /// A named check failed: exit 1.
    Check(String),
}

fn load_quadruple(spec: &str) -> Result<CoordinateQuadruple, CliError> {
    if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec)
            .map_err(|e| CliError::Parse(format!("cannot read {spec}: {e}")))?;
        return quadruple_from_json(&text).map_err(|e| CliError::Parse(e.to_string()));
    }
    catalog(spec).map_err(|e| CliError::Parse(e.to_string()))
}

fn load_k_subspace(spec: &str, bb: &BbAlgebra) -> Result<(String, Subspace), CliError> {
    match spec {
        "zero" => Ok(("zero".into(), Subspace::zero(bb.dim_bb()))),
        "hf" => Ok(("hf".into(), bb.compute_hf())),
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Parse(format!("cannot read {path}: {e}")))?;
            let rows: Vec<Vec<String>> = serde_json::from_str(&text).map_err(|e| {
                CliError::Parse(format!("{path}: line {}, column {}: {e}", e.line(), e.column()))
            })?;
            let mut vecs = Vec::new();
            for (i, row) in rows.iter().enumerate() {
                if row.len() != bb.dim_bb() {
                    return Err(CliError::Parse(format!(
                        "{path}: row {i} has {} coordinates, expected {}",
                        row.len(),
                        bb.dim_bb()
                    )));
                }
                let coords: Result<Vec<Q>, _> = row.iter().map(|s| Q::from_str(s)).collect();
                let coords =
                    coords.map_err(|e| CliError::Parse(format!("{path}: row {i}: {e}")))?;
                vecs.push(QVec::from_dense(&coords));
            }
            Ok(("file".into(), span(&vecs, bb.dim_bb())))
        }
    }
}

fn quadruple_header(report: &mut Report, q: &CoordinateQuadruple) {
    report.push("quadruple.kind", q.kind);
    report.push("quadruple.dim_a", q.a.dim);
    report.push("quadruple.dim_c", q.c.dim);
}

fn run_validate(common: &CommonArgs) -> Result<(Report, bool), CliError> {
    let q = load_quadruple(&common.quadruple)?;
    let mut report = Report::new();
    report.push("command", "validate");
    quadruple_header(&mut report, &q);
    let violations = validate_quadruple(&q);
    report.push("violations.count", violations.len());
    for (i, v) in violations.iter().enumerate() {
        report.push(format!("violation.{i}"), format!("{}@{}", v.axiom, v.witness));
    }
    let pass = violations.is_empty();
    report.push("result", if pass { "pass" } else { "fail" });
    Ok((report, pass))
}

fn run_hf(common: &CommonArgs, ell: u32, k_spec: &str) -> Result<(Report, bool), CliError> {
    let q = load_quadruple(&common.quadruple)?;
    if !validate_quadruple(&q).is_empty() {
        return Err(CliError::Check("quadruple_axioms".into()));
    }
    let bb = BbAlgebra::new(&q, EllParam::new(ell))
        .map_err(|e| CliError::Check(format!("star_involution ({e})")))?;
    let mut report = Report::new();
    report.push("command", "hf");
    quadruple_header(&mut report, &q);
    report.push("ell", ell);
    report.push("dim.b", bb.dim_b());
    report.push("dim.b_tensor_b", bb.dim_tensor());
    report.push("dim.K", bb.kk.rank());
    report.push("dim.bb", bb.dim_bb());
    let hf = bb.compute_hf();
    report.push("dim.HF", hf.rank());
    let (k_name, k_sub) = load_k_subspace(k_spec, &bb)?;
    report.push("K.spec", k_name);
    report.push("K.dim", k_sub.rank());
    let (uniform_line, pass) = match bb.check_uniform(&k_sub) {
        Ok(UniformOutcome::Uniform) => ("pass".to_string(), true),
        Ok(UniformOutcome::NotUniform { witness, .. }) => {
            (format!("FAIL (witness {witness:?})"), false)
        }
        Err(e) => (format!("FAIL ({e})"), false),
    };
    report.push("check.uniform", uniform_line);
    report.push("result", if pass { "pass" } else { "fail" });
    Ok((report, pass))
}

fn assemble_from_args(
    common: &CommonArgs,
    rank: &RankArgs,
) -> Result<(CoordinateQuadruple, GradedAlgebra, String), CliError> {
    if rank.ell < 4 || rank.n < rank.ell {
        return Err(CliError::Parse(format!(
            "need n >= ell >= 4, got n = {}, ell = {}",
            rank.n, rank.ell
        )));
    }
    let q = load_quadruple(&common.quadruple)?;
    if !validate_quadruple(&q).is_empty() {
        return Err(CliError::Check("quadruple_axioms".into()));
    }
    let bb = BbAlgebra::new(&q, EllParam::new(rank.ell as u32))
        .map_err(|e| CliError::Check(format!("star_involution ({e})")))?;
    let (k_name, k_sub) = load_k_subspace(&rank.k_spec, &bb)?;
    let alg = assemble(&q, IndexData::new(rank.n, rank.ell), &k_sub)
        .map_err(|e| CliError::Check(format!("assemble ({e})")))?;
    Ok((q, alg, k_name))
}

fn algebra_header(report: &mut Report, alg: &GradedAlgebra, k_name: &str) {
    let dims = alg.summand_dims();
    report.push("n", alg.idx.n);
    report.push("ell", alg.idx.ell);
    report.push("K.spec", k_name);
    report.push("K.dim", alg.dd.k_sub.rank());
    report.push("dim.G_tensor_A", dims[0]);
    report.push("dim.S_tensor_B", dims[1]);
    report.push("dim.V_tensor_C", dims[2]);
    report.push("dim.bb_mod_K", dims[3]);
    report.push("dim.L", alg.dim());
}

fn run_build(common: &CommonArgs, rank: &RankArgs, roots: bool) -> Result<(Report, bool), CliError> {
    let (q, alg, k_name) = assemble_from_args(common, rank)?;
    let mut report = Report::new();
    report.push("command", "build");
    quadruple_header(&mut report, &q);
    algebra_header(&mut report, &alg, &k_name);
    if roots {
        let grading = alg
            .grade()
            .map_err(|e| CliError::Check(format!("grading ({e})")))?;
        report.push("weights.count", grading.len());
        for (w, space) in &grading {
            let label: Vec<String> = w.iter().map(|c| c.to_string()).collect();
            report.push(format!("weight.{}", label.join(",")), space.rank());
        }
    }
    report.push("result", "pass");
    Ok((report, true))
}

fn run_verify(common: &CommonArgs, rank: &RankArgs) -> Result<(Report, bool), CliError> {
    let (q, alg, k_name) = assemble_from_args(common, rank)?;
    let mut report = Report::new();
    report.push("command", "verify");
    quadruple_header(&mut report, &q);
    algebra_header(&mut report, &alg, &k_name);
    let grading = alg.grade();
    report.push(
        "check.grading",
        match &grading {
            Ok(map) => format!("pass ({} weights)", map.len()),
            Err(e) => format!("FAIL ({e})"),
        },
    );
    let graded_report = check_graded(&alg);
    for (name, status) in graded_report.checks() {
        report.push(format!("check.{name}"), status);
    }
    let pass = grading.is_ok() && graded_report.all_passed();
    report.push("result", if pass { "pass" } else { "fail" });
    Ok((report, pass))
}

fn run_ucex(common: &CommonArgs, rank: &RankArgs) -> Result<(Report, bool), CliError> {
    let (q, alg, k_name) = assemble_from_args(common, rank)?;
    let mut report = Report::new();
    report.push("command", "ucex");
    quadruple_header(&mut report, &q);
    algebra_header(&mut report, &alg, &k_name);
    let (_a_alg, ucex) = universal_extension(&alg)
        .map_err(|e| CliError::Check(format!("universal_extension ({e})")))?;
    report.push("dim.A", ucex.a_dim);
    report.push("dim.kernel", ucex.kernel_dim);
    report.push("dim.center_A", ucex.center_dim);
    report.push("dim.center_L", center_dim(&alg));
    for (name, status) in ucex.checks() {
        report.push(format!("check.{name}"), status);
    }
    let pass = ucex.all_passed();
    report.push("result", if pass { "pass" } else { "fail" });
    Ok((report, pass))
}

fn format_constants(alg: &GradedAlgebra) -> String {
    let mut out = String::new();
    let dims = alg.summand_dims();
    writeln!(out, "dim.L={}", alg.dim()).unwrap();
    writeln!(
        out,
        "blocks=G_tensor_A:{}+S_tensor_B:{}+V_tensor_C:{}+bb_mod_K:{}",
        dims[0], dims[1], dims[2], dims[3]
    )
    .unwrap();
    for i in 0..alg.dim() {
        for j in (i + 1)..alg.dim() {
            let v = &alg.sc[i][j];
            if v.is_zero() {
                continue;
            }
            let terms: Vec<String> = v.iter().map(|(k, c)| format!("{c}*{k}")).collect();
            writeln!(out, "bracket[{i}][{j}]={}", terms.join("+")).unwrap();
        }
    }
    out
}

fn format_bb_constants(bb: &BbAlgebra) -> String {
    let mut out = String::new();
    writeln!(out, "dim.bb={}", bb.dim_bb()).unwrap();
    let n = bb.dim_bb();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = bb.bracket_bb(&QVec::unit(n, i), &QVec::unit(n, j));
            if v.is_zero() {
                continue;
            }
            let terms: Vec<String> = v.iter().map(|(k, c)| format!("{c}*{k}")).collect();
            writeln!(out, "bracket[{i}][{j}]={}", terms.join("+")).unwrap();
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn run_export(
    common: &CommonArgs,
    out_path: &Option<String>,
    constants: bool,
    bb_constants: bool,
    n: Option<usize>,
    ell: Option<usize>,
    k_spec: &str,
) -> Result<(String, bool), CliError> {
    let payload = if constants {
        let rank = RankArgs { n: n.unwrap(), ell: ell.unwrap(), k_spec: k_spec.to_string() };
        let (_, alg, _) = assemble_from_args(common, &rank)?;
        format_constants(&alg)
    } else if bb_constants {
        let ell = ell
            .ok_or_else(|| CliError::Parse("--bb-constants requires --ell".into()))?;
        if ell < 1 {
            return Err(CliError::Parse("ell must be positive".into()));
        }
        let q = load_quadruple(&common.quadruple)?;
        let bb = BbAlgebra::new(&q, EllParam::new(ell as u32))
            .map_err(|e| CliError::Check(format!("star_involution ({e})")))?;
        format_bb_constants(&bb)
    } else {
        let q = load_quadruple(&common.quadruple)?;
        quadruple_to_json(&q)
    };
    match out_path {
        Some(p) => {
            std::fs::write(p, &payload)
                .map_err(|e| CliError::Parse(format!("cannot write {p}: {e}")))?;
            Ok((format!("wrote {p}\n"), true))
        }
        None => Ok((payload, true)),
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("ROOTGRADE_THREADS") {
        if let Ok(k) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
        }
    }
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Validate(common) => {
            run_validate(common).map(|(r, pass)| (r.render(common.format), pass))
        }
        Command::Hf { common, ell, k_spec } => {
            run_hf(common, *ell, k_spec).map(|(r, pass)| (r.render(common.format), pass))
        }
        Command::Build { common, rank, roots } => {
            run_build(common, rank, *roots).map(|(r, pass)| (r.render(common.format), pass))
        }
        Command::Verify { common, rank } => {
            run_verify(common, rank).map(|(r, pass)| (r.render(common.format), pass))
        }
        Command::Ucex { common, rank } => {
            run_ucex(common, rank).map(|(r, pass)| (r.render(common.format), pass))
        }
        Command::Export { common, out, constants, bb_constants, n, ell, k_spec } => {
            run_export(common, out, *constants, *bb_constants, *n, *ell, k_spec)
        }
    };
    match outcome {
        Ok((text, pass)) => {
            print!("{text}");
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Check(name)) => {
            eprintln!("failed check: {name}");
            ExitCode::from(1)
        }
        Err(CliError::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
