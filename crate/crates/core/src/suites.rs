//! Seeded property suites over a configured space, with CSV reporting.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::Rng;

use crate::config::{RunConfig, SpaceConfig};
use crate::error::{Error, Result};
use crate::hyperboloid;
use crate::isometry::{self, LinearMap};
use crate::linalg;
use crate::minkowski::GeneralizedMinkowskiSpace;
use crate::norms::{sip_axiom_report, NormKind, SipMode, SipSpace};
use crate::numerics::{self, Seed};
use crate::ortho::{self, OrthoRelation};
use crate::report::AxiomReport;
use crate::siip::{self, SiipSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    SipAxioms,
    SiipAxioms,
    NormCurvature,
    MinusProduct,
    Cone,
    Tangent,
    LiftDerivative,
    SemiMetric,
    TangentTimeLike,
    GeodesicCosh,
    Isometry,
    Orthogonality,
    Counterexamples,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::SipAxioms,
        Suite::SiipAxioms,
        Suite::NormCurvature,
        Suite::MinusProduct,
        Suite::Cone,
        Suite::Tangent,
        Suite::LiftDerivative,
        Suite::SemiMetric,
        Suite::TangentTimeLike,
        Suite::GeodesicCosh,
        Suite::Isometry,
        Suite::Orthogonality,
        Suite::Counterexamples,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SipAxioms => "sip-axioms",
            Suite::SiipAxioms => "siip-axioms",
            Suite::NormCurvature => "theorem2",
            Suite::MinusProduct => "lemma2",
            Suite::Cone => "cone",
            Suite::Tangent => "tangent",
            Suite::LiftDerivative => "lemma3",
            Suite::SemiMetric => "lemma4",
            Suite::TangentTimeLike => "theorem10",
            Suite::GeodesicCosh => "geodesic-cosh",
            Suite::Isometry => "isometry",
            Suite::Orthogonality => "orthogonality",
            Suite::Counterexamples => "counterexamples",
        }
    }

    /// Stream tag so each suite draws from its own seeded stream.
    fn tag(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses a suite name; `all` yields every suite.
pub fn parse_suites(name: &str) -> Result<Vec<Suite>> {
    if name == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    Ok(vec![name.parse()?])
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::Usage(format!("unknown suite `{s}`; expected one of {} or all", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
    /// Reported without an assertion.
    Exploratory,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
            Status::Exploratory => "EXPLORATORY",
        }
    }
}

/// One checked property of a suite.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub suite: Suite,
    pub check: String,
    pub status: Status,
    pub worst_residual: f64,
    pub tolerance: f64,
    pub witness: Vec<Vec<f64>>,
    pub detail: String,
    pub duration: Duration,
}

impl SuiteResult {
    fn new(suite: Suite, check: &str, residual: f64, tolerance: f64, witness: Vec<Vec<f64>>) -> Self {
        let pass = residual.is_finite() && residual <= tolerance;
        Self {
            suite,
            check: check.to_string(),
            status: if pass { Status::Pass } else { Status::Fail },
            worst_residual: residual,
            tolerance,
            witness,
            detail: String::new(),
            duration: Duration::ZERO,
        }
    }

    fn skip(suite: Suite, check: &str, why: &str) -> Self {
        let mut r = Self::new(suite, check, 0.0, 0.0, Vec::new());
        r.status = Status::Skip;
        r.detail = why.to_string();
        r
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    fn exploratory(mut self, why: &str) -> Self {
        self.status = Status::Exploratory;
        self.detail = why.to_string();
        self
    }
}

fn from_report(suite: Suite, prefix: &str, report: &AxiomReport) -> Vec<SuiteResult> {
    report
        .checks
        .iter()
        .map(|c| SuiteResult::new(suite, &format!("{prefix}{}", c.name), c.max_residual, report.tol, c.witness.clone()))
        .collect()
}

fn need_minkowski(cfg: &RunConfig) -> Option<&GeneralizedMinkowskiSpace> {
    cfg.space.minkowski()
}

fn need_space_time(cfg: &RunConfig) -> Option<&GeneralizedMinkowskiSpace> {
    cfg.space.minkowski().filter(|m| m.is_space_time())
}

fn closed_form(space: &SipSpace) -> bool {
    space.mode == SipMode::ClosedForm && !matches!(space.norm.kind(), NormKind::CustomGauge { .. })
}

fn exact_tol(cfg: &RunConfig, blocks: &[&SipSpace]) -> f64 {
    if blocks.iter().all(|b| closed_form(b)) {
        cfg.tol.eq_tol
    } else {
        cfg.tol.fd_tol
    }
}

const NON_EUCLIDEAN_NOTE: &str = "non-Euclidean S: reported only";
const CURVATURE_TOL: f64 = 1e-3;
const GEODESIC_TOL: f64 = 5e-3;
const COSH_INSTANCE_TOL: f64 = 1e-3;
const GEODESIC_PAIRS: usize = 10;

fn sip_axioms(cfg: &RunConfig, seed: Seed) -> Vec<SuiteResult> {
    let suite = Suite::SipAxioms;
    let trials = cfg.trials.unwrap_or(500);
    let mut blocks: Vec<(&str, &SipSpace)> = vec![("s.", cfg.space.normed())];
    if let SpaceConfig::Minkowski(m) = &cfg.space {
        blocks.push(("t.", m.t_space()));
    }
    let mut out = Vec::new();
    for (i, (prefix, b)) in blocks.into_iter().enumerate() {
        let report = sip_axiom_report(b, seed.derive(i as u64), trials, exact_tol(cfg, &[b]));
        out.extend(from_report(suite, prefix, &report));
        let name = format!("{prefix}norm_derivative");
        if !b.norm.is_smooth() {
            out.push(SuiteResult::skip(suite, &name, "norm is not smooth"));
            continue;
        }
        let mut rng = seed.derive(100 + i as u64).rng();
        let (mut worst, mut witness) = (0.0, Vec::new());
        for _ in 0..cfg.trials.unwrap_or(200) {
            let x = numerics::sample_nonzero(&mut rng, b.dim(), 1.0);
            let y = numerics::sample_nonzero(&mut rng, b.dim(), 1.0);
            let r = match b.norm_first_derivative(&x, &y) {
                Ok(d) => (b.sip_unchecked(&x, &y) - b.norm.eval(&y) * d).abs(),
                Err(_) => f64::INFINITY,
            };
            if r > worst || witness.is_empty() {
                worst = r;
                witness = vec![x, y];
            }
        }
        out.push(SuiteResult::new(suite, &name, worst, cfg.tol.fd_tol, witness));
    }
    out
}

fn siip_axioms(cfg: &RunConfig, seed: Seed) -> Vec<SuiteResult> {
    let suite = Suite::SiipAxioms;
    let trials = cfg.trials.unwrap_or(500);
    match &cfg.space {
        SpaceConfig::Minkowski(m) => {
            let tol = exact_tol(cfg, &[m.s_space(), m.t_space()]);
            from_report(suite, "plus.", &siip::siip_axiom_report(&m.plus(), seed, trials, tol))
        }
        SpaceConfig::Normed(s) => from_report(suite, "", &siip::siip_axiom_report(s, seed, trials, exact_tol(cfg, &[s]))),
    }
}

fn norm_curvature(cfg: &RunConfig, seed: Seed) -> Vec<SuiteResult> {
    let suite = Suite::NormCurvature;
    let s = cfg.space.normed();
    if !s.norm.is_twice_smooth() {
        return vec![SuiteResult::skip(suite, "second_derivative_identity", "norm is not twice differentiable")];
    }
    let mut rng = seed.rng();
    let (mut worst, mut witness) = (0.0, Vec::new());
    for _ in 0..cfg.trials.unwrap_or(100) {
        let x = numerics::sample_nonzero(&mut rng, s.dim(), 1.0);
        let z = numerics::sample_nonzero(&mut rng, s.dim(), 1.0);
        let y0 = numerics::sample_nonzero(&mut rng, s.dim(), 1.0);
        let target: f64 = rng.gen_range(0.5..=2.0);
        let y = linalg::scale(&y0, target / s.norm.eval(&y0));
        let r = s.theorem2_residual(&x, &y, &z).unwrap_or(f64::INFINITY);
        if r > worst || witness.is_empty() {
            worst = r;
            witness = vec![x, y, z];
        }
    }
    vec![SuiteResult::new(suite, "second_derivative_identity", worst, CURVATURE_TOL, witness)]
}

fn minus_product(cfg: &RunConfig, seed: Seed) -> Vec<SuiteResult> {
    let suite = Suite::MinusProduct;
    let Some(m) = need_minkowski(cfg) else {
        return vec![SuiteResult::skip(suite, "minus", "needs S ⊕ T")];
    };
    let tol = if m.is_pseudo_euclidean() && closed_form(m.s_space()) && closed_form(m.t_space()) {
        cfg.tol.eq_tol
    } else {
        cfg.tol.fd_tol
    };
    from_report(suite, "minus.", &sip_axiom_report(&m.minus(), seed, cfg.trials.unwrap_or(500), tol))
}

fn cone(cfg: &RunConfig, seed: Seed) -> Result<Vec<SuiteResult>> {
    let suite = Suite::Cone;
    let Some(m) = need_space_time(cfg) else {
        return Ok(vec![SuiteResult::skip(suite, "convexity", "needs a space-time model")]);
    };
    let r = m.cone_convexity_check(seed, cfg.trials.unwrap_or(500), cfg.tol.class_tol)?;
    let witness = r.witness.clone().unwrap_or_default();
    Ok(vec![
        SuiteResult::new(suite, "tplus_convexity", r.convexity_violations as f64, 0.0, witness.clone())
            .with_detail(format!("{} trials", r.convexity_trials)),
        SuiteResult::new(suite, "scaling_invariance", r.scaling_violations as f64, 0.0, witness)
            .with_detail(format!("{} trials", r.scaling_trials)),
    ])
}

fn tangent_family(cfg: &RunConfig, suite: Suite, seed: Seed) -> Result<Vec<SuiteResult>> {
    let Some(m) = need_space_time(cfg) else {
        return Ok(vec![SuiteResult::skip(suite, "tangent", "needs a space-time model")]);
    };
    let r = hyperboloid::tangent_check(m, seed, cfg.trials.unwrap_or(100), &cfg.tol)?;
    let note = if r.ties_perturbed > 0 { format!("{} max-norm ties perturbed", r.ties_perturbed) } else { String::new() };
    let mut out = Vec::new();
    if matches!(suite, Suite::Tangent | Suite::LiftDerivative) {
        out.push(SuiteResult::new(suite, "directional_derivative", r.derivative, cfg.tol.fd_tol, r.witness.clone()).with_detail(note));
    }
    if matches!(suite, Suite::Tangent | Suite::SemiMetric) {
        let tol = 10.0 * cfg.tol.eq_tol;
        out.push(SuiteResult::new(suite, "frame_orthogonality", r.orthogonality, tol, r.witness.clone()));
        out.push(SuiteResult::new(suite, "companion_in_frame_span", r.companion_span, tol, r.witness.clone()));
    }
    if matches!(suite, Suite::Tangent | Suite::TangentTimeLike) {
        out.push(SuiteResult::new(suite, "not_space_like", r.not_space_like as f64, 0.0, r.witness.clone()));
        let positivity = if r.min_square_ratio > 0.0 { 0.0 } else { 1.0 };
        out.push(
            SuiteResult::new(suite, "tangent_positivity", positivity, 0.0, r.witness.clone())
                .with_detail(format!("min [w;w]+/[w;w]- = {:.16e}", r.min_square_ratio)),
        );
    }
    Ok(out)
}

fn geodesic_cosh(cfg: &RunConfig, seed: Seed) -> Result<Vec<SuiteResult>> {
    let suite = Suite::GeodesicCosh;
    let Some(m) = need_space_time(cfg) else {
        return Ok(vec![SuiteResult::skip(suite, "cosh_law", "needs a space-time model")]);
    };
    let exploratory = !m.s_space().norm.is_euclidean();
    let a = hyperboloid::lift(m, &vec![0.0; m.k()])?;
    let mut s = vec![0.0; m.k()];
    s[0] = 1f64.sinh();
    let b = hyperboloid::lift(m, &s)?;
    let r = hyperboloid::cosh_residual(m, &a, &b, cfg.nodes, cfg.tol.opt_tol)?;
    let mut instance = SuiteResult::new(suite, "unit_instance", r, COSH_INSTANCE_TOL, vec![a.coords(), b.coords()]);

    let mut rng = seed.rng();
    let (mut worst, mut witness) = (0.0, Vec::new());
    for _ in 0..GEODESIC_PAIRS {
        let (a, b) = hyperboloid::sample_pair(m, &mut rng, 3.0)?;
        let d = hyperboloid::geodesic_distance(m, &a, &b, cfg.nodes, cfg.tol.opt_tol)?;
        let r = (d - hyperboloid::hyperbolic_distance(m, &a, &b)?).abs();
        if r > worst || witness.is_empty() {
            worst = r;
            witness = vec![a.coords(), b.coords()];
        }
    }
    let mut law = SuiteResult::new(suite, "distance_vs_arccosh", worst, GEODESIC_TOL, witness)
        .with_detail(format!("{GEODESIC_PAIRS} pairs; {} segments", cfg.nodes));
    if exploratory {
        instance = instance.exploratory(NON_EUCLIDEAN_NOTE);
        law = law.exploratory(NON_EUCLIDEAN_NOTE);
    }
    Ok(vec![instance, law])
}

fn isometry_suite(cfg: &RunConfig, seed: Seed) -> Result<Vec<SuiteResult>> {
    let suite = Suite::Isometry;
    let Some(m) = need_space_time(cfg) else {
        return Ok(vec![SuiteResult::skip(suite, "boost", "needs a space-time model")]);
    };
    let trials = cfg.trials.unwrap_or(200);
    let n = m.n();
    if !m.is_pseudo_euclidean() {
        let r = isometry::isometry_report(m, &LinearMap::identity(n), seed, trials, cfg.tol.eq_tol)?;
        let mut row = SuiteResult::new(suite, "identity", r.product.max(r.adjoint).max(r.apex), cfg.tol.eq_tol, r.witness);
        if !r.within_hypotheses {
            row = row.exploratory("outside the smooth strictly convex hypotheses");
        }
        return Ok(vec![row, SuiteResult::skip(suite, "boost", "boosts need Euclidean S")]);
    }
    let mut out = Vec::new();
    for (i, rapidity) in [0.3, 1.2].into_iter().enumerate() {
        let boost = isometry::lorentz_boost(m, 0, rapidity)?;
        let r = isometry::isometry_report(m, &boost, seed.derive(i as u64), trials, cfg.tol.eq_tol)?;
        let residual = r.product.max(r.adjoint).max(r.apex).max(if r.apex_upper { 0.0 } else { f64::INFINITY });
        out.push(SuiteResult::new(suite, &format!("boost_{rapidity}_products"), residual, cfg.tol.eq_tol, r.witness));
        let d = isometry::distance_preservation_check(m, &boost, seed.derive(10 + i as u64), GEODESIC_PAIRS, cfg.nodes, cfg.tol.opt_tol)?;
        out.push(SuiteResult::new(suite, &format!("boost_{rapidity}_distances"), d.max_residual, GEODESIC_TOL, d.witness));
    }
    let mut flip = LinearMap::identity(n).rows().to_vec();
    flip[n - 1][n - 1] = -1.0;
    let r = isometry::isometry_report(m, &LinearMap::new(flip)?, seed.derive(20), trials, cfg.tol.eq_tol)?;
    let expected = r.preserves_product(cfg.tol.eq_tol) && !r.preserves_sheet(cfg.tol.eq_tol);
    out.push(
        SuiteResult::new(suite, "time_reflection_leaves_sheet", if expected { 0.0 } else { 1.0 }, 0.0, vec![linalg::unit(n, n - 1)])
            .with_detail("products preserved; image of e_n on the lower sheet"),
    );
    Ok(out)
}

fn leading_minors_ok<P: crate::product::Product>(p: &P, vs: &[Vec<f64>], floor: f64) -> Result<bool> {
    for k in 1..=vs.len() {
        if ortho::gram_determinant(p, &vs[..k])?.abs() <= floor {
            return Ok(false);
        }
    }
    Ok(true)
}

fn orthogonality_suite(cfg: &RunConfig, seed: Seed) -> Result<Vec<SuiteResult>> {
    let suite = Suite::Orthogonality;
    let eq = cfg.tol.eq_tol;
    let mut out = Vec::new();
    let mut rng = seed.rng();
    match &cfg.space {
        SpaceConfig::Minkowski(m) => {
            let n = m.n();
            let plus = m.plus();
            let (mut worst, mut witness) = (0.0, Vec::new());
            for _ in 0..cfg.trials.unwrap_or(100) {
                let u = numerics::sample_nonzero(&mut rng, n, 1.0);
                for w in ortho::orthogonal_companion_basis(&plus, &u, eq)? {
                    let r = m.product_plus(&w, &u)?.abs();
                    if r > worst || witness.is_empty() {
                        worst = r;
                        witness = vec![w.clone(), u.clone()];
                    }
                }
            }
            out.push(SuiteResult::new(suite, "companion", worst, eq, witness));

            if m.is_pseudo_euclidean() && n <= 6 {
                let signature = SiipSpace::diagonal(
                    &(0..n).map(|i| if i < m.k() { 1.0 } else { -1.0 }).collect::<Vec<_>>(),
                )?;
                let (mut pair, mut span, mut witness) = (0.0f64, 0.0f64, Vec::new());
                let mut done = 0;
                while done < cfg.trials.unwrap_or(50) {
                    let vs = numerics::sample_vectors_from(&mut rng, n, n, 1.0);
                    if linalg::rank(&vs, 1e-9) < n || !leading_minors_ok(&signature, &vs, 1e-2)? {
                        continue;
                    }
                    done += 1;
                    let ws = ortho::regular_orthogonalization(&signature, &vs, eq)?;
                    let mut p = 0.0f64;
                    for i in 0..n {
                        for j in 0..n {
                            if i != j {
                                p = p.max(m.product_plus(&ws[i], &ws[j])?.abs());
                            }
                        }
                    }
                    let s = (0..n).map(|k| linalg::span_residual(&ws[..=k], &vs[k])).fold(0.0, f64::max);
                    if p.max(s) > pair.max(span) || witness.is_empty() {
                        witness = vs.clone();
                    }
                    pair = pair.max(p);
                    span = span.max(s);
                }
                out.push(SuiteResult::new(suite, "regular_pairwise", pair, eq, witness.clone()));
                out.push(SuiteResult::new(suite, "regular_span", span, eq, witness));
                let mut neutral = vec![linalg::unit(n, 0)];
                neutral[0][n - 1] = 1.0;
                neutral.extend((1..n).map(|i| linalg::unit(n, i)));
                let raised = matches!(
                    ortho::regular_orthogonalization(&signature, &neutral, eq),
                    Err(Error::NeutralPivot { index: 1 })
                );
                out.push(SuiteResult::new(suite, "neutral_start_rejected", if raised { 0.0 } else { 1.0 }, 0.0, neutral));
            } else {
                out.push(SuiteResult::skip(suite, "regular", "needs a pseudo-Euclidean space of dimension ≤ 6"));
            }

            match ortho::minkowski_auerbach(m, eq) {
                Ok(basis) => {
                    let r = ortho::auerbach_residual(&plus, &basis, seed.derive(1), 100)?;
                    out.push(SuiteResult::new(suite, "auerbach", r, eq, basis));
                }
                Err(Error::Unsupported(why)) => out.push(SuiteResult::skip(suite, "auerbach", &why)),
                Err(e) => return Err(e),
            }
        }
        SpaceConfig::Normed(s) => {
            let n = s.dim();
            let (mut worst, mut witness) = (0.0, Vec::new());
            for _ in 0..cfg.trials.unwrap_or(50) {
                let x = numerics::sample_nonzero(&mut rng, n, 1.0);
                let y0 = numerics::sample_nonzero(&mut rng, n, 1.0);
                let y = linalg::axpy(&y0, -s.sip_unchecked(&y0, &x) / s.sip_unchecked(&x, &x), &x);
                let o = ortho::orthogonality(s, OrthoRelation::Birkhoff, &x, &y, 10.0 * cfg.tol.opt_tol, cfg.tol.opt_tol)?;
                if o.residual > worst || witness.is_empty() {
                    worst = o.residual;
                    witness = vec![x, y];
                }
            }
            out.push(SuiteResult::new(suite, "sip_implies_birkhoff", worst, 10.0 * cfg.tol.opt_tol, witness));
            if n == 2 {
                let (u, v) = ortho::auerbach_basis_2d(&s.norm, cfg.tol.opt_tol)?;
                let a = ortho::orthogonality(s, OrthoRelation::Birkhoff, &u, &v, cfg.tol.fd_tol, cfg.tol.opt_tol)?;
                let b = ortho::orthogonality(s, OrthoRelation::Birkhoff, &v, &u, cfg.tol.fd_tol, cfg.tol.opt_tol)?;
                out.push(SuiteResult::new(suite, "auerbach_birkhoff", a.residual.max(b.residual), cfg.tol.fd_tol, vec![u, v]));
            } else {
                out.push(SuiteResult::skip(suite, "auerbach_birkhoff", "planes only"));
            }
        }
    }
    Ok(out)
}

/// Known violations that must be reproduced: each check passes when its
/// violation is found.
pub fn counterexamples(seed: Seed, trials: usize) -> Result<Vec<SuiteResult>> {
    let suite = Suite::Counterexamples;
    let mut out = Vec::new();

    let e4 = SiipSpace::example4();
    let (u, v) = ([1.0, 2.0], [1.0, 1.0]);
    let uv = e4.siip(&u, &v)?;
    let margin = uv * uv - e4.siip(&u, &u)? * e4.siip(&v, &v)?;
    let off = (uv - 10.0 / 3.0).abs().max((margin - 10.0 / 9.0).abs());
    out.push(
        SuiteResult::new(suite, "example4_cauchy_schwarz", off, 1e-9, vec![u.to_vec(), v.to_vec()])
            .with_detail(format!("violation margin {margin:.16e}")),
    );

    let r1 = GeneralizedMinkowskiSpace::remark1_space();
    let basis = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.5]];
    let found = siip::cauchy_schwarz_witness(&r1.plus(), &basis, seed, trials, 1e-12)?;
    out.push(match found {
        Some(w) => SuiteResult::new(suite, "remark1_cauchy_schwarz", 0.0, 0.0, vec![w.u, w.v])
            .with_detail(format!("violation margin {:.16e}", w.margin)),
        None => SuiteResult::new(suite, "remark1_cauchy_schwarz", 1.0, 0.0, basis).with_detail("no violation found"),
    });

    let max = SipSpace::max_norm(2)?;
    out.push(match isometry::strict_convexity_witness(&max, seed.derive(1), trials) {
        Some((x, y)) => SuiteResult::new(suite, "max_norm_strict_convexity", 0.0, 0.0, vec![x, y])
            .with_detail("equality [x;y] = |x||y| for non-parallel x; y"),
        None => SuiteResult::new(suite, "max_norm_strict_convexity", 1.0, 0.0, Vec::new()).with_detail("no witness found"),
    });
    Ok(out)
}

/// Runs `suites` in order. Non-convergence aborts the run; other numerical
/// errors become failing rows.
pub fn run(cfg: &RunConfig, suites: &[Suite]) -> Result<Vec<SuiteResult>> {
    let mut out = Vec::new();
    for &suite in suites {
        let seed = cfg.seed.derive(suite.tag());
        let start = Instant::now();
        let rows = match suite {
            Suite::SipAxioms => Ok(sip_axioms(cfg, seed)),
            Suite::SiipAxioms => Ok(siip_axioms(cfg, seed)),
            Suite::NormCurvature => Ok(norm_curvature(cfg, seed)),
            Suite::MinusProduct => Ok(minus_product(cfg, seed)),
            Suite::Cone => cone(cfg, seed),
            Suite::Tangent | Suite::LiftDerivative | Suite::SemiMetric | Suite::TangentTimeLike => tangent_family(cfg, suite, seed),
            Suite::GeodesicCosh => geodesic_cosh(cfg, seed),
            Suite::Isometry => isometry_suite(cfg, seed),
            Suite::Orthogonality => orthogonality_suite(cfg, seed),
            Suite::Counterexamples => counterexamples(seed, cfg.trials.unwrap_or(2000)),
        };
        let mut rows = match rows {
            Ok(rows) => rows,
            Err(e @ Error::Convergence { .. }) => return Err(e),
            Err(e) => vec![SuiteResult::new(suite, "error", f64::INFINITY, 0.0, Vec::new()).with_detail(e.to_string())],
        };
        let elapsed = start.elapsed();
        for r in &mut rows {
            r.duration = elapsed;
            if r.status == Status::Fail && r.witness.is_empty() && r.detail.is_empty() {
                r.detail = "no witness recorded".into();
            }
        }
        out.extend(rows);
    }
    Ok(out)
}

pub fn all_pass(results: &[SuiteResult]) -> bool {
    results.iter().all(|r| r.status != Status::Fail)
}

fn csv_field(s: &str) -> String {
    s.replace([',', '\n', '\r'], ";")
}

pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn format_vector(v: &[f64]) -> String {
    v.iter().map(|x| format_real(*x)).collect::<Vec<_>>().join(";")
}

/// CSV report; wall-clock durations are left out so that reruns with the
/// same seed produce identical bytes.
pub fn to_csv(results: &[SuiteResult]) -> String {
    let mut s = String::from("suite,check,status,worst_residual,tolerance,witness,detail\n");
    for r in results {
        let witness: Vec<String> = r.witness.iter().map(|w| format!("({})", format_vector(w))).collect();
        s.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.suite,
            csv_field(&r.check),
            r.status.label(),
            format_real(r.worst_residual),
            format_real(r.tolerance),
            csv_field(&witness.join(" ")),
            csv_field(&r.detail),
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> RunConfig {
        RunConfig::parse(text).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(parse_suites("all").unwrap().len(), 13);
        assert!(matches!(parse_suites("lemma9"), Err(Error::Usage(_))));
    }

    #[test]
    fn default_space_passes_fast_suites() {
        let c = cfg("");
        let fast = [Suite::SipAxioms, Suite::SiipAxioms, Suite::NormCurvature, Suite::MinusProduct, Suite::Cone, Suite::Tangent, Suite::Orthogonality];
        let rows = run(&c, &fast).unwrap();
        for r in &rows {
            assert_ne!(r.status, Status::Fail, "{r:?}");
        }
    }

    #[test]
    fn curvature_identity_on_l3() {
        let rows = run(&cfg("space.s.norm = pnorm\nspace.s.p = 3\nspace.s.dim = 3"), &[Suite::NormCurvature]).unwrap();
        assert_eq!(rows[0].status, Status::Pass);
        assert!(rows[0].worst_residual <= 1e-3);
    }

    #[test]
    fn counterexamples_are_reproduced() {
        let rows = counterexamples(Seed(42), 2000).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.status == Status::Pass), "{rows:?}");
    }

    #[test]
    fn max_norm_space_fails_cauchy_schwarz_and_skips_boosts() {
        let c = cfg("space.preset = remark1");
        let rows = run(&c, &[Suite::SiipAxioms, Suite::Isometry]).unwrap();
        let cs = rows.iter().find(|r| r.check == "plus.cauchy_schwarz_definite").unwrap();
        assert_eq!(cs.status, Status::Fail);
        assert!(!cs.witness.is_empty());
        let boost = rows.iter().find(|r| r.check == "boost").unwrap();
        assert_eq!(boost.status, Status::Skip);
        let id = rows.iter().find(|r| r.check == "identity").unwrap();
        assert_eq!(id.status, Status::Exploratory);
    }

    #[test]
    fn geodesic_rows_are_exploratory_off_euclidean() {
        let c = cfg("space.s.norm = max\nspace.s.dim = 2\nspace.t.dim = 1\nnodes = 8");
        let rows = run(&c, &[Suite::GeodesicCosh]).unwrap();
        assert!(rows.iter().all(|r| r.status == Status::Exploratory), "{rows:?}");
    }

    #[test]
    fn csv_is_deterministic() {
        let c = cfg("");
        let a = to_csv(&run(&c, &[Suite::Cone, Suite::Counterexamples]).unwrap());
        let b = to_csv(&run(&c, &[Suite::Cone, Suite::Counterexamples]).unwrap());
        assert_eq!(a, b);
        assert!(a.starts_with("suite,check,status,worst_residual,tolerance,witness,detail\n"));
        assert!(a.contains("cone,tplus_convexity,PASS,0.0000000000000000e0"));
    }
}
