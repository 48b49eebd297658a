//! Run configuration: a flat `key = value` text format.
//!
//! ```text
//! # S block: 2-dimensional l3, T block: the real line
//! space.s.norm = "pnorm"
//! space.s.p = 3
//! space.s.dim = 2
//! space.t.dim = 1
//! seed = 42
//! tol.eq = 1e-9
//! ```
//!
//! Without any `space.t.*` key the space is the normed space `S` alone.
//! `space.preset = "remark1"` selects `(ℝ², ℓ_∞) ⊕ ℝ`.

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::minkowski::GeneralizedMinkowskiSpace;
use crate::norms::{NormSpec, SipMode, SipSpace};
use crate::numerics::{Seed, Tolerances};

pub const TOL_EQ_ENV: &str = "SIPMINK_TOL_EQ";

const KEYS: &[&str] = &[
    "space.preset",
    "space.s.norm",
    "space.s.p",
    "space.s.dim",
    "space.s.mode",
    "space.t.norm",
    "space.t.p",
    "space.t.dim",
    "space.t.mode",
    "seed",
    "tol.eq",
    "tol.fd",
    "tol.opt",
    "tol.class",
    "trials",
    "nodes",
    "output",
];

/// The configured space: a normed space or a generalized Minkowski space.
#[derive(Debug, Clone)]
pub enum SpaceConfig {
    Normed(SipSpace),
    Minkowski(GeneralizedMinkowskiSpace),
}

impl SpaceConfig {
    /// The normed block: `S` itself, or the `S` block of `S ⊕ T`.
    pub fn normed(&self) -> &SipSpace {
        match self {
            SpaceConfig::Normed(s) => s,
            SpaceConfig::Minkowski(m) => m.s_space(),
        }
    }

    pub fn minkowski(&self) -> Option<&GeneralizedMinkowskiSpace> {
        match self {
            SpaceConfig::Normed(_) => None,
            SpaceConfig::Minkowski(m) => Some(m),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub space: SpaceConfig,
    pub tol: Tolerances,
    pub seed: Seed,
    /// Overrides the per-suite sample counts.
    pub trials: Option<usize>,
    /// Path segments for geodesic computations.
    pub nodes: usize,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    /// `ℝ² ⊕ ℝ` with signature `(+, +, −)`, seed 42.
    fn default() -> Self {
        Self {
            space: SpaceConfig::Minkowski(GeneralizedMinkowskiSpace::pseudo_euclidean(2, 1).expect("positive dims")),
            tol: Tolerances::default(),
            seed: Seed(42),
            trials: None,
            nodes: 32,
            output: None,
        }
    }
}

/// A value with the position (1-based line and column) it was read from.
#[derive(Debug, Clone)]
struct Entry {
    value: String,
    line: usize,
    column: usize,
}

fn config_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Config { line, column, message: message.into() }
}

/// Index of the first `#` outside double quotes.
fn comment_start(line: &str) -> Option<usize> {
    let mut quoted = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => quoted = !quoted,
            '#' if !quoted => return Some(i),
            _ => {}
        }
    }
    None
}

fn column_of(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

fn parse_entries(text: &str) -> Result<BTreeMap<String, Entry>> {
    let mut out = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let body = &raw[..comment_start(raw).unwrap_or(raw.len())];
        if body.trim().is_empty() {
            continue;
        }
        let key_start = body.len() - body.trim_start().len();
        let Some(eq) = body.find('=') else {
            return Err(config_error(line_no, column_of(raw, key_start), "expected `key = value`"));
        };
        let key = body[..eq].trim();
        if key.is_empty() {
            return Err(config_error(line_no, column_of(raw, key_start), "missing key"));
        }
        if !KEYS.contains(&key) {
            return Err(config_error(line_no, column_of(raw, key_start), format!("unknown key `{key}`")));
        }
        let rest = &body[eq + 1..];
        let value_start = eq + 1 + (rest.len() - rest.trim_start().len());
        let mut value = rest.trim().to_string();
        if value.starts_with('"') {
            if value.len() < 2 || !value.ends_with('"') {
                return Err(config_error(line_no, column_of(raw, value_start), "unterminated string"));
            }
            value = value[1..value.len() - 1].to_string();
        }
        if value.is_empty() {
            return Err(config_error(line_no, column_of(raw, value_start), format!("empty value for `{key}`")));
        }
        let entry = Entry { value, line: line_no, column: column_of(raw, value_start) };
        if out.insert(key.to_string(), entry).is_some() {
            return Err(config_error(line_no, column_of(raw, key_start), format!("duplicate key `{key}`")));
        }
    }
    Ok(out)
}

fn parse_value<T: std::str::FromStr>(e: &Entry, what: &str) -> Result<T> {
    e.value
        .parse()
        .map_err(|_| config_error(e.line, e.column, format!("expected {what}, found `{}`", e.value)))
}

fn block(entries: &BTreeMap<String, Entry>, prefix: &str, default_dim: usize) -> Result<SipSpace> {
    let get = |k: &str| entries.get(&format!("{prefix}.{k}"));
    let dim = match get("dim") {
        Some(e) => parse_value::<usize>(e, "a positive integer")?,
        None => default_dim,
    };
    let at = |k: &str| get(k).or(get("dim")).map_or((0, 0), |e| (e.line, e.column));
    let wrap = |k: &str, err: Error| {
        let (l, c) = at(k);
        match err {
            Error::Config { .. } => err,
            other => config_error(l, c, other.to_string()),
        }
    };
    let norm_name = get("norm").map_or("euclidean", |e| e.value.as_str());
    let norm = match norm_name.to_ascii_lowercase().as_str() {
        "euclidean" | "l2" => NormSpec::euclidean(dim),
        "max" | "maxnorm" | "linf" => NormSpec::max_norm(dim),
        "pnorm" | "lp" => {
            let p = get("p").ok_or_else(|| wrap("norm", Error::InvalidNorm(format!("`{prefix}.p` is required for pnorm"))))?;
            NormSpec::pnorm(parse_value(p, "a real exponent")?, dim)
        }
        other => Err(Error::InvalidNorm(format!("unknown norm `{other}`"))),
    }
    .map_err(|e| wrap("norm", e))?;
    if get("p").is_some() && !matches!(norm_name, "pnorm" | "lp") {
        let e = get("p").expect("checked");
        return Err(config_error(e.line, e.column, format!("`{prefix}.p` only applies to pnorm")));
    }
    let mode = match get("mode").map(|e| (e, e.value.to_ascii_lowercase())) {
        None => SipMode::ClosedForm,
        Some((_, m)) if m == "closed-form" || m == "closed" => SipMode::ClosedForm,
        Some((_, m)) if m == "norm-derivative" || m == "derivative" => SipMode::NormDerivative,
        Some((e, _)) => return Err(config_error(e.line, e.column, format!("unknown mode `{}`", e.value))),
    };
    Ok(SipSpace::with_mode(norm, mode))
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let entries = parse_entries(text)?;
        let mut cfg = RunConfig::default();

        let has_s = entries.keys().any(|k| k.starts_with("space.s."));
        let has_t = entries.keys().any(|k| k.starts_with("space.t."));
        if let Some(p) = entries.get("space.preset") {
            if has_s || has_t {
                return Err(config_error(p.line, p.column, "space.preset cannot be combined with space.s/space.t keys"));
            }
            cfg.space = match p.value.to_ascii_lowercase().as_str() {
                "remark1" => SpaceConfig::Minkowski(GeneralizedMinkowskiSpace::remark1_space()),
                "pseudo-euclidean" => cfg.space,
                other => return Err(config_error(p.line, p.column, format!("unknown preset `{other}`"))),
            };
        } else if has_s || has_t {
            let s = block(&entries, "space.s", 2)?;
            cfg.space = if has_t {
                SpaceConfig::Minkowski(GeneralizedMinkowskiSpace::new(s, block(&entries, "space.t", 1)?))
            } else {
                SpaceConfig::Normed(s)
            };
        }

        if let Some(e) = entries.get("seed") {
            cfg.seed = Seed(parse_value(e, "an unsigned integer")?);
        }
        for (key, slot) in [
            ("tol.eq", &mut cfg.tol.eq_tol),
            ("tol.fd", &mut cfg.tol.fd_tol),
            ("tol.opt", &mut cfg.tol.opt_tol),
            ("tol.class", &mut cfg.tol.class_tol),
        ] {
            if let Some(e) = entries.get(key) {
                *slot = parse_value(e, "a positive real")?;
            }
        }
        if let Err(err) = cfg.tol.validate() {
            let e = ["tol.eq", "tol.fd", "tol.opt", "tol.class"].iter().find_map(|k| entries.get(*k));
            let (l, c) = e.map_or((0, 0), |e| (e.line, e.column));
            return Err(config_error(l, c, err.to_string()));
        }
        if let Some(e) = entries.get("trials") {
            let t: usize = parse_value(e, "a positive integer")?;
            if t == 0 {
                return Err(config_error(e.line, e.column, "trials must be positive"));
            }
            cfg.trials = Some(t);
        }
        if let Some(e) = entries.get("nodes") {
            let m: usize = parse_value(e, "an integer ≥ 2")?;
            if m < 2 {
                return Err(config_error(e.line, e.column, "nodes must be at least 2"));
            }
            cfg.nodes = m;
        }
        if let Some(e) = entries.get("output") {
            cfg.output = Some(PathBuf::from(&e.value));
        }
        Ok(cfg)
    }

    /// Applies `SIPMINK_TOL_EQ` when set.
    pub fn apply_env(&mut self, value: Option<&str>) -> Result<()> {
        if let Some(v) = value {
            let eq: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Usage(format!("{TOL_EQ_ENV} must be a real number, got `{v}`")))?;
            let mut tol = self.tol;
            tol.eq_tol = eq;
            tol.validate().map_err(|e| Error::Usage(format!("{TOL_EQ_ENV}: {e}")))?;
            self.tol = tol;
        }
        Ok(())
    }
}

/// Comma-separated reals, e.g. `1,-0.5,2e-3`.
pub fn parse_vector(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Usage(format!("`{t}` is not a finite real in vector `{text}`")))
        })
        .collect()
}
