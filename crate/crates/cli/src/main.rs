//! `jordan3`: classify, compare, reduce and verify 3x3 hermitian matrices
//! over composition algebras.
//!
//! Exit codes: 0 success, 1 input or domain error, 2 a verification or
//! reduction check failed.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use jordan3::autgroup::word_json;
use jordan3::cdalgebra::AlgebraId;
use jordan3::classify::{classify_report, orbit_invariants, same_orbit};
use jordan3::jordan::{HMat3, RawMat};
use jordan3::reduce::{reduce_to_canonical, ReductionTrace, DRIFT_TOL, RESIDUAL_TOL};
use jordan3::scalar::{Field, Gaussian, Scalar, C64, Q};
use jordan3::suites::{Config, Suite};
use jordan3::Error;

#[derive(Parser, Debug)]
#[command(name = "jordan3", version, about = "Orbit classification for 3x3 hermitian matrices over composition algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Residual tolerance for reductions and the round-trip suite.
    #[arg(long, global = true, value_parser = positive)]
    tol: Option<f64>,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sample count override for verification suites.
    #[arg(long, global = true)]
    samples: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(clap::Args, Debug)]
struct MatrixArgs {
    /// Inline matrix JSON.
    #[arg(long, conflicts_with = "file")]
    matrix: Option<String>,
    /// File holding matrix JSON.
    #[arg(long)]
    file: Option<String>,
    /// Algebra tag, when the JSON does not carry one.
    #[arg(long)]
    algebra: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orbit invariants, family and canonical representative.
    Classify(MatrixArgs),
    /// Whether two matrices (files or inline JSON) lie in one orbit.
    SameOrbit {
        left: String,
        right: String,
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Numeric word carrying the matrix to its canonical form.
    Reduce {
        #[command(flatten)]
        input: MatrixArgs,
        /// Include the per-step log.
        #[arg(long)]
        log: bool,
    },
    /// Run property suites.
    Verify {
        /// Suite name, or "all".
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Basis multiplication table and Jordan cross-product table.
    Tables {
        #[arg(long)]
        algebra: String,
    },
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

enum Failure {
    Input(Error),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type Run = Result<(), Failure>;

enum Mat {
    Rational(HMat3<Q>),
    Gaussian(HMat3<Gaussian>),
    Float(HMat3<C64>),
}

macro_rules! with_mat {
    ($m:expr, $x:ident => $body:expr) => {
        match $m {
            Mat::Rational($x) => $body,
            Mat::Gaussian($x) => $body,
            Mat::Float($x) => $body,
        }
    };
}

fn algebra_flag(tag: &Option<String>) -> Result<Option<AlgebraId>, Error> {
    tag.as_deref().map(AlgebraId::from_tag).transpose()
}

/// Inline JSON when the text starts with `{`, otherwise a file path.
fn load(text_or_path: &str) -> Result<String, Error> {
    if text_or_path.trim_start().starts_with('{') {
        Ok(text_or_path.to_string())
    } else {
        fs::read_to_string(text_or_path).map_err(|e| Error::Parse(format!("{text_or_path}: {e}")))
    }
}

fn parse_matrix(text: &str, alg: Option<AlgebraId>) -> Result<Mat, Error> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let raw = RawMat::from_json(&v, alg)?;
    if raw.scalars().any(|s| !s.is_exact()) {
        Ok(Mat::Float(HMat3::from_raw(&raw)?))
    } else if raw.alg.is_complexified() || raw.scalars().any(|s| matches!(s, Scalar::Gaussian(_))) {
        Ok(Mat::Gaussian(HMat3::from_raw(&raw)?))
    } else {
        Ok(Mat::Rational(HMat3::from_raw(&raw)?))
    }
}

fn matrix_input(args: &MatrixArgs) -> Result<Mat, Error> {
    let text = match (&args.matrix, &args.file) {
        (Some(m), _) => m.clone(),
        (None, Some(f)) => fs::read_to_string(f).map_err(|e| Error::Parse(format!("{f}: {e}")))?,
        (None, None) => return Err(Error::Parse("pass --matrix or --file".into())),
    };
    parse_matrix(&text, algebra_flag(&args.algebra)?)
}

/// Write errors (a closed pipe) are ignored.
fn emit(format: Format, json: &Value, text: impl FnOnce() -> String) {
    let out = match format {
        Format::Json => serde_json::to_string_pretty(json).expect("serializable") + "\n",
        Format::Text => text(),
    };
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn label_text(v: &Value) -> String {
    let get = |k: &str| match v.get(k) {
        Some(Value::String(s)) => s.clone(),
        Some(x) => x.to_string(),
        None => String::new(),
    };
    format!(
        "algebra {}\nfamily {}\ncharacteristic (tr, tr X^x2, det) {}\nmultiplicity {}, v {}\norbit key {}\n",
        get("algebra"),
        get("family"),
        get("char_poly"),
        get("multiplicity"),
        get("v"),
        get("orbit_key")
    )
}

fn classify<F: Field>(x: &HMat3<F>, format: Format) -> Run {
    let report = classify_report(x)?;
    let v = report.to_json();
    emit(format, &v, || {
        let mut s = label_text(&v["label"]);
        s += &format!("canonical {}\n", v["canonical"]);
        for n in &report.notes {
            s += &format!("note: {n}\n");
        }
        s
    });
    Ok(())
}

fn compare<F: Field>(x: &HMat3<F>, y: &HMat3<F>, format: Format) -> Run {
    let same = same_orbit(x, y)?;
    let v = json!({
        "same_orbit": same,
        "left": orbit_invariants(x)?.to_json(),
        "right": orbit_invariants(y)?.to_json(),
    });
    emit(format, &v, || format!("{same}\n"));
    Ok(())
}

fn reduce<F: Field>(x: &HMat3<F>, format: Format, tol: f64, log: bool) -> Run {
    let tr: ReductionTrace = reduce_to_canonical(x)?;
    let passed = tr.residual < tol && tr.invariant_drift < DRIFT_TOL;
    let mut v = tr.to_json(log);
    v["passed"] = json!(passed);
    v["tolerance"] = json!(tol);
    emit(format, &v, || {
        let mut s = format!(
            "family {}\nword {}\nresidual {:.3e}\ninvariant drift {:.3e}\npassed {passed}\n",
            tr.family.map(|f| f.tag()).unwrap_or("-"),
            word_json(&tr.word),
            tr.residual,
            tr.invariant_drift
        );
        if log {
            for line in &tr.log {
                s += &format!("log: {line}\n");
            }
        }
        s
    });
    if passed {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn verify(cli: &Cli, suite: &str) -> Run {
    let suites = if suite == "all" { Suite::ALL.to_vec() } else { vec![Suite::from_tag(suite)?] };
    let cfg = Config { seed: cli.seed, samples: cli.samples, residual_tol: cli.tol.unwrap_or(RESIDUAL_TOL) };
    let outcomes: Vec<_> = suites.iter().map(|s| s.run(&cfg)).collect();
    let all = outcomes.iter().all(|o| o.passed());
    let v = json!({
        "seed": cli.seed,
        "passed": all,
        "suites": outcomes.iter().map(|o| o.to_json()).collect::<Vec<_>>(),
    });
    emit(cli.format, &v, || {
        let mut s = String::new();
        for o in &outcomes {
            let verdict = if o.passed() { "PASS" } else { "FAIL" };
            s += &format!("{}: {verdict}, {} checks, {} failed\n", o.suite, o.checked, o.failed);
            if let Some(f) = &o.first_failure {
                s += &format!("  first failure: {f}\n");
            }
        }
        s
    });
    if all {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn term(c: &Gaussian, name: &str) -> String {
    if *c == Gaussian::one() {
        name.to_string()
    } else if *c == -Gaussian::one() {
        format!("-{name}")
    } else {
        format!("{c} {name}")
    }
}

fn tables(tag: &str, format: Format) -> Run {
    let alg = AlgebraId::from_tag(tag)?;
    let d = alg.dim();
    let names: Vec<String> = (0..d).map(|k| alg.basis_name(k)).collect();
    let desc = alg.descriptor();
    let product: Vec<Vec<String>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let e = desc.product(i, j);
                    let sign = if e.sign < 0 { "-" } else { "" };
                    format!("{sign}{}", names[e.index])
                })
                .collect()
        })
        .collect();
    let n = HMat3::<Gaussian>::coord_len(alg);
    let jnames: Vec<String> = (0..n)
        .map(|k| if k < 3 { format!("E{}", k + 1) } else { format!("F{}({})", (k - 3) / d + 1, names[(k - 3) % d]) })
        .collect();
    let cross: Vec<Vec<String>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = HMat3::<Gaussian>::basis(alg, i).cross(&HMat3::basis(alg, j)).to_coords();
                    let terms: Vec<String> =
                        c.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(k, v)| term(v, &jnames[k])).collect();
                    if terms.is_empty() {
                        "0".into()
                    } else {
                        terms.join(" + ")
                    }
                })
                .collect()
        })
        .collect();
    let v = json!({
        "algebra": alg.tag(),
        "basis": names,
        "product": product,
        "jordan_basis": jnames,
        "cross": cross,
    });
    emit(format, &v, || {
        let w = product.iter().flatten().map(String::len).max().unwrap_or(1).max(4);
        let mut s = format!("{alg} multiplication, row * column\n{:>w$}", "");
        for nm in &names {
            s += &format!(" {nm:>w$}");
        }
        s.push('\n');
        for (nm, row) in names.iter().zip(&product) {
            s += &format!("{nm:>w$}");
            for e in row {
                s += &format!(" {e:>w$}");
            }
            s.push('\n');
        }
        s += "\ncross products of the Jordan basis (nonzero)\n";
        for i in 0..n {
            for j in i..n {
                if cross[i][j] != "0" {
                    s += &format!("{} x {} = {}\n", jnames[i], jnames[j], cross[i][j]);
                }
            }
        }
        s
    });
    Ok(())
}

fn run(cli: &Cli) -> Run {
    let tol = cli.tol.unwrap_or(RESIDUAL_TOL);
    match &cli.command {
        Command::Classify(args) => with_mat!(matrix_input(args)?, x => classify(&x, cli.format)),
        Command::SameOrbit { left, right, algebra } => {
            let alg = algebra_flag(algebra)?;
            let (a, b) = (parse_matrix(&load(left)?, alg)?, parse_matrix(&load(right)?, alg)?);
            match (a, b) {
                (Mat::Rational(x), Mat::Rational(y)) => compare(&x, &y, cli.format),
                (Mat::Gaussian(x), Mat::Gaussian(y)) => compare(&x, &y, cli.format),
                (Mat::Rational(x), Mat::Gaussian(y)) => compare(&x.map(Gaussian::from_q), &y, cli.format),
                (Mat::Gaussian(x), Mat::Rational(y)) => compare(&x, &y.map(Gaussian::from_q), cli.format),
                _ => Err(Error::Precision("orbit comparison needs exact entries".into()).into()),
            }
        }
        Command::Reduce { input, log } => with_mat!(matrix_input(input)?, x => reduce(&x, cli.format, tol, *log)),
        Command::Verify { suite } => verify(cli, suite),
        Command::Tables { algebra } => tables(algebra, cli.format),
    }
}

fn main() -> ExitCode {
    // usage errors share exit code 1 with bad input; 2 is reserved for
    // failed checks
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(2),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
