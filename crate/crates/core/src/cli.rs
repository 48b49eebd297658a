//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::config::{parse_vector, RunConfig, SpaceConfig, TOL_EQ_ENV};
use crate::error::{Error, Result};
use crate::hyperboloid;
use crate::minkowski::GeneralizedMinkowskiSpace;
use crate::ortho::{self, OrthoRelation};
use crate::suites::{self, format_real, format_vector};
use crate::Seed;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sipmink", version, about = "Semi-inner-product and generalized Minkowski space toolkit")]
pub struct Cli {
    /// Run configuration (`key = value` lines).
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Overrides the configured seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// CSV output path.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Overrides per-suite sample counts.
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Path segments for geodesics.
    #[arg(long, global = true)]
    pub nodes: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify vectors as space-, time- or light-like.
    Classify {
        #[arg(required = true, allow_hyphen_values = true, value_name = "VECTOR")]
        vectors: Vec<String>,
    },
    /// Evaluate the products of two vectors.
    Product {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Test an orthogonality relation `y ⟂ x` in the normed block.
    Ortho {
        /// roberts, birkhoff, isosceles, pythagorean, singer or sip.
        relation: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Compute an Auerbach basis.
    Auerbach,
    /// Tangent frame and semi-metric at the lift of an S-point.
    Tangent {
        #[arg(allow_hyphen_values = true)]
        s: String,
    },
    /// Geodesic distance between the lifts of two S-points.
    Distance {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Run a verification suite (or `all`).
    Verify { suite: String },
    /// Reproduce the known counterexamples.
    Counterexample,
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Config { .. } | Error::InvalidNorm(_) | Error::Dimension { .. } => EXIT_USAGE,
        Error::Convergence { .. } => EXIT_NO_CONVERGENCE,
        _ => EXIT_FAILURE,
    }
}

fn load_config(cli: &Cli, env_tol: Option<&str>) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Usage(format!("cannot read config {}: {e}", path.display())))?;
            RunConfig::parse(&text)?
        }
        None => RunConfig::default(),
    };
    cfg.apply_env(env_tol)?;
    if let Some(s) = cli.seed {
        cfg.seed = Seed(s);
    }
    if let Some(t) = cli.trials {
        if t == 0 {
            return Err(Error::Usage("--trials must be positive".into()));
        }
        cfg.trials = Some(t);
    }
    if let Some(m) = cli.nodes {
        if m < 2 {
            return Err(Error::Usage("--nodes must be at least 2".into()));
        }
        cfg.nodes = m;
    }
    if cli.out.is_some() {
        cfg.output = cli.out.clone();
    }
    Ok(cfg)
}

fn minkowski(cfg: &RunConfig) -> Result<&GeneralizedMinkowskiSpace> {
    cfg.space
        .minkowski()
        .ok_or_else(|| Error::Usage("this command needs a space with a T block (space.t.*)".into()))
}

fn write_file(path: &PathBuf, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))
}

fn io(e: std::io::Error) -> Error {
    Error::Numerical(format!("output failed: {e}"))
}

/// Executes one command, writing its report to `out`; returns the exit code.
fn execute(cli: &Cli, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Classify { vectors } => {
            let m = minkowski(cfg)?;
            writeln!(out, "vector,square_plus,class,cone_part").map_err(io)?;
            for text in vectors {
                let v = parse_vector(text)?;
                let q = m.product_plus(&v, &v)?;
                let class = m.classify(&v, cfg.tol.class_tol)?;
                let part = if m.is_space_time() { format!("{:?}", m.cone_part(&v, cfg.tol.class_tol)?) } else { "-".into() };
                writeln!(out, "{},{},{class:?},{part}", format_vector(&v), format_real(q)).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Product { u, v } => {
            let (u, v) = (parse_vector(u)?, parse_vector(v)?);
            match &cfg.space {
                SpaceConfig::Minkowski(m) => {
                    writeln!(out, "product_plus,{}", format_real(m.product_plus(&u, &v)?)).map_err(io)?;
                    writeln!(out, "product_minus,{}", format_real(m.product_minus(&u, &v)?)).map_err(io)?;
                }
                SpaceConfig::Normed(s) => {
                    writeln!(out, "sip,{}", format_real(s.sip(&u, &v)?)).map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Ortho { relation, x, y } => {
            let rel: OrthoRelation = relation.parse()?;
            let (x, y) = (parse_vector(x)?, parse_vector(y)?);
            let tol = match rel {
                OrthoRelation::Birkhoff => 10.0 * cfg.tol.opt_tol,
                _ => cfg.tol.eq_tol,
            };
            let o = ortho::orthogonality(cfg.space.normed(), rel, &x, &y, tol, cfg.tol.opt_tol)?;
            writeln!(out, "relation,{rel}").map_err(io)?;
            writeln!(out, "orthogonal,{}", o.holds).map_err(io)?;
            writeln!(out, "residual,{}", format_real(o.residual)).map_err(io)?;
            if let Some(l) = o.lambda {
                writeln!(out, "lambda,{}", format_real(l)).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Auerbach => {
            match &cfg.space {
                SpaceConfig::Minkowski(m) => {
                    let basis = ortho::minkowski_auerbach(m, cfg.tol.eq_tol)?;
                    for b in &basis {
                        writeln!(out, "basis,{}", format_vector(b)).map_err(io)?;
                    }
                    let r = ortho::auerbach_residual(&m.plus(), &basis, cfg.seed, cfg.trials.unwrap_or(100))?;
                    writeln!(out, "residual,{}", format_real(r)).map_err(io)?;
                }
                SpaceConfig::Normed(s) => {
                    let (u, v) = ortho::auerbach_basis_2d(&s.norm, cfg.tol.opt_tol)?;
                    writeln!(out, "basis,{}", format_vector(&u)).map_err(io)?;
                    writeln!(out, "basis,{}", format_vector(&v)).map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Tangent { s } => {
            let m = minkowski(cfg)?;
            let v = hyperboloid::lift(m, &parse_vector(s)?)?;
            let frame = hyperboloid::tangent_frame(m, &v, cfg.tol.eq_tol)?;
            writeln!(out, "point,{}", format_vector(&v.coords())).map_err(io)?;
            for u in &frame.vectors {
                writeln!(out, "tangent,{}", format_vector(u)).map_err(io)?;
            }
            for u1 in &frame.vectors {
                let row = frame
                    .vectors
                    .iter()
                    .map(|u2| hyperboloid::ds2(m, &v, u1, u2, &cfg.tol))
                    .collect::<Result<Vec<f64>>>()?;
                writeln!(out, "ds2,{}", format_vector(&row)).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Distance { a, b } => {
            let m = minkowski(cfg)?;
            let a = hyperboloid::lift(m, &parse_vector(a)?)?;
            let b = hyperboloid::lift(m, &parse_vector(b)?)?;
            let g = hyperboloid::geodesic(m, &a, &b, cfg.nodes, cfg.tol.opt_tol)?;
            let q = m.product_plus(&a.coords(), &b.coords())?;
            let residual = (q + g.distance.cosh()).abs();
            let label = if m.s_space().norm.is_euclidean() { "cosh_residual" } else { "cosh_residual (exploratory)" };
            writeln!(out, "distance,{}", format_real(g.distance)).map_err(io)?;
            writeln!(out, "product_plus,{}", format_real(q)).map_err(io)?;
            writeln!(out, "{label},{}", format_real(residual)).map_err(io)?;
            writeln!(out, "nodes,{}", cfg.nodes).map_err(io)?;
            writeln!(out, "status,converged in {} iterations", g.iterations).map_err(io)?;
            if let Some(path) = &cfg.output {
                let k = m.k();
                let mut csv = String::from("t");
                for i in 1..=k {
                    csv.push_str(&format!(",s{i}"));
                }
                csv.push_str(",tau\n");
                for row in g.path.rows(m) {
                    csv.push_str(&row.iter().map(|x| format_real(*x)).collect::<Vec<_>>().join(","));
                    csv.push('\n');
                }
                write_file(path, &csv)?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify { suite } => {
            let list = suites::parse_suites(suite)?;
            let results = suites::run(cfg, &list)?;
            for r in &results {
                writeln!(
                    out,
                    "{:<16} {:<34} {:<11} {:>12.3e} (tol {:.1e}) {:>8.3}s {}",
                    r.suite.name(),
                    r.check,
                    r.status.label(),
                    r.worst_residual,
                    r.tolerance,
                    r.duration.as_secs_f64(),
                    r.detail
                )
                .map_err(io)?;
            }
            if let Some(path) = &cfg.output {
                write_file(path, &suites::to_csv(&results))?;
            }
            Ok(if suites::all_pass(&results) { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Counterexample => {
            let results = suites::counterexamples(cfg.seed, cfg.trials.unwrap_or(2000))?;
            for r in &results {
                writeln!(out, "{},{},{}", r.check, r.status.label(), r.detail).map_err(io)?;
                for w in &r.witness {
                    writeln!(out, "  witness,{}", format_vector(w)).map_err(io)?;
                }
            }
            if let Some(path) = &cfg.output {
                write_file(path, &suites::to_csv(&results))?;
            }
            Ok(if suites::all_pass(&results) { EXIT_OK } else { EXIT_FAILURE })
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
/// `env_tol` is the value of `SIPMINK_TOL_EQ`, if set.
pub fn run<I, T>(args: I, env_tol: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let result = load_config(&cli, env_tol).and_then(|cfg| execute(&cli, &cfg, out));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let Error::Convergence { best_point, .. } = &e {
                let _ = writeln!(err, "best point: {}", format_vector(best_point));
            }
            exit_code(&e)
        }
    }
}

/// Entry point used by the binary.
pub fn main_with_env() -> i32 {
    let env_tol = std::env::var(TOL_EQ_ENV).ok();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), env_tol.as_deref(), &mut stdout.lock(), &mut stderr.lock())
}
