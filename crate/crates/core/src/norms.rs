//! Norm families and the semi-inner-products that represent them.
//!
//! A semi-inner-product `[x, y]` is linear in `x`, homogeneous in `y`,
//! positive definite and satisfies Cauchy–Schwarz; it generates its norm via
//! `|x| = sqrt([x, x])`. For a norm that is differentiable away from the
//! origin the representing product is unique and equals
//! `|y| * d/dλ |y + λx|` at `λ = 0`; the `ℓ_p` family also has a closed form.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{check_dim, Error, Result};
use crate::linalg;
use crate::numerics::{self, central_diff, central_diff_try, fd2_step, fd_step, Seed};
use crate::product::Product;
use crate::report::AxiomReport;

/// Positive-homogeneous gauge supplied by the caller.
pub type GaugeFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum NormKind {
    /// `(Σ|x_i|^p)^(1/p)` with `1 < p < ∞`.
    PNorm(f64),
    MaxNorm,
    Euclidean,
    CustomGauge { name: String, gauge: GaugeFn },
}

impl fmt::Debug for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormKind::PNorm(p) => write!(f, "PNorm({p})"),
            NormKind::MaxNorm => write!(f, "MaxNorm"),
            NormKind::Euclidean => write!(f, "Euclidean"),
            NormKind::CustomGauge { name, .. } => write!(f, "CustomGauge({name})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct NormSpec {
    kind: NormKind,
    dim: usize,
}

impl NormSpec {
    pub fn euclidean(dim: usize) -> Result<Self> {
        Self::checked(NormKind::Euclidean, dim)
    }

    pub fn max_norm(dim: usize) -> Result<Self> {
        Self::checked(NormKind::MaxNorm, dim)
    }

    pub fn pnorm(p: f64, dim: usize) -> Result<Self> {
        if !(p.is_finite() && p > 1.0) {
            return Err(Error::InvalidNorm(format!("p-norm requires 1 < p < inf, got {p}")));
        }
        Self::checked(NormKind::PNorm(p), dim)
    }

    /// Register a custom gauge. Homogeneity `g(λx) = |λ| g(x)` and positivity
    /// are spot-checked on a fixed sample before the gauge is accepted.
    pub fn custom<F>(dim: usize, name: &str, gauge: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        let mut rng = Seed(0x6761_7567_6500).rng();
        for _ in 0..32 {
            let x = numerics::sample_nonzero(&mut rng, dim.max(1), 2.0);
            let lambda: f64 = rng.gen_range(-4.0..4.0);
            let gx = gauge(&x);
            if !(gx.is_finite() && gx > 0.0) {
                return Err(Error::InvalidNorm(format!("gauge not positive at {x:?}")));
            }
            let scaled: Vec<f64> = x.iter().map(|v| v * lambda).collect();
            let lhs = gauge(&scaled);
            if (lhs - lambda.abs() * gx).abs() > 1e-9 * (1.0 + lambda.abs() * gx) {
                return Err(Error::InvalidNorm(format!(
                    "gauge is not positively homogeneous at {x:?}, lambda = {lambda}"
                )));
            }
        }
        Self::checked(
            NormKind::CustomGauge { name: name.to_string(), gauge: Arc::new(gauge) },
            dim,
        )
    }

    fn checked(kind: NormKind, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidNorm("dimension must be positive".into()));
        }
        Ok(Self { kind, dim })
    }

    pub fn kind(&self) -> &NormKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Differentiable away from the origin.
    pub fn is_smooth(&self) -> bool {
        !matches!(self.kind, NormKind::MaxNorm)
    }

    /// Twice differentiable away from the origin.
    pub fn is_twice_smooth(&self) -> bool {
        match self.kind {
            NormKind::PNorm(p) => p >= 2.0,
            NormKind::MaxNorm => false,
            NormKind::Euclidean | NormKind::CustomGauge { .. } => true,
        }
    }

    pub fn is_euclidean(&self) -> bool {
        match self.kind {
            NormKind::Euclidean => true,
            NormKind::PNorm(p) => p == 2.0,
            _ => false,
        }
    }

    /// Evaluates the norm without a dimension check.
    pub(crate) fn eval(&self, x: &[f64]) -> f64 {
        match &self.kind {
            NormKind::PNorm(p) => {
                let s = linalg::norm_inf(x);
                if s == 0.0 {
                    return 0.0;
                }
                // scaled to avoid overflow for large p
                s * x.iter().map(|v| (v.abs() / s).powf(*p)).sum::<f64>().powf(1.0 / p)
            }
            NormKind::MaxNorm => linalg::norm_inf(x),
            NormKind::Euclidean => linalg::norm2(x),
            NormKind::CustomGauge { gauge, .. } => gauge(x),
        }
    }

    pub fn norm(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.dim, x.len())?;
        Ok(self.eval(x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SipMode {
    /// Closed form where one exists (ℓ_p, Euclidean, ℓ_∞); custom gauges
    /// always go through the norm derivative.
    ClosedForm,
    /// `|y| * d/dλ |y + λx|` by central differences for every family.
    NormDerivative,
}

/// A normed coordinate space together with its semi-inner-product.
#[derive(Debug, Clone)]
pub struct SipSpace {
    pub norm: NormSpec,
    pub mode: SipMode,
}

impl SipSpace {
    pub fn new(norm: NormSpec) -> Self {
        Self { norm, mode: SipMode::ClosedForm }
    }

    pub fn with_mode(norm: NormSpec, mode: SipMode) -> Self {
        Self { norm, mode }
    }

    pub fn euclidean(dim: usize) -> Result<Self> {
        Ok(Self::new(NormSpec::euclidean(dim)?))
    }

    pub fn pnorm(p: f64, dim: usize) -> Result<Self> {
        Ok(Self::new(NormSpec::pnorm(p, dim)?))
    }

    pub fn max_norm(dim: usize) -> Result<Self> {
        Ok(Self::new(NormSpec::max_norm(dim)?))
    }

    pub fn dim(&self) -> usize {
        self.norm.dim
    }

    pub fn norm(&self, x: &[f64]) -> Result<f64> {
        self.norm.norm(x)
    }

    pub fn sip(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        check_dim(self.dim(), x.len())?;
        check_dim(self.dim(), y.len())?;
        Ok(self.sip_unchecked(x, y))
    }

    pub(crate) fn sip_unchecked(&self, x: &[f64], y: &[f64]) -> f64 {
        if linalg::is_zero(y) {
            return 0.0;
        }
        match (&self.norm.kind, self.mode) {
            (NormKind::Euclidean, SipMode::ClosedForm) => linalg::dot(x, y),
            (NormKind::PNorm(p), SipMode::ClosedForm) => lp_sip(*p, x, y),
            (NormKind::MaxNorm, SipMode::ClosedForm) => {
                let j = max_index(y);
                x[j] * y[j]
            }
            _ => self.sip_by_derivative(x, y),
        }
    }

    fn sip_by_derivative(&self, x: &[f64], y: &[f64]) -> f64 {
        let ny = self.norm.eval(y);
        let h = fd_step(ny);
        let d = central_diff(|l| self.norm.eval(&linalg::axpy(y, l, x)), 0.0, h);
        d.map_or(f64::NAN, |d| ny * d)
    }

    /// Gâteaux derivative of the norm at `y` in direction `x`.
    pub fn norm_first_derivative(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        check_dim(self.dim(), x.len())?;
        check_dim(self.dim(), y.len())?;
        if linalg::is_zero(y) {
            return Err(Error::Domain("norm derivative is undefined at y = 0".into()));
        }
        let h = fd_step(self.norm.eval(y));
        central_diff(|l| self.norm.eval(&linalg::axpy(y, l, x)), 0.0, h)
    }

    /// Second Gâteaux derivative `|.|''_{x,z}(y)`: the derivative in
    /// direction `z` of `y ↦ |.|'_x(y)`.
    pub fn norm_second_derivative(&self, x: &[f64], z: &[f64], y: &[f64]) -> Result<f64> {
        let h = fd2_step(self.norm(y)?);
        self.norm_second_derivative_with_step(x, z, y, h)
    }

    pub fn norm_second_derivative_with_step(
        &self,
        x: &[f64],
        z: &[f64],
        y: &[f64],
        h: f64,
    ) -> Result<f64> {
        check_dim(self.dim(), z.len())?;
        if linalg::is_zero(y) {
            return Err(Error::Domain("norm derivative is undefined at y = 0".into()));
        }
        central_diff_try(|l| self.norm_first_derivative(x, &linalg::axpy(y, l, z)), 0.0, h)
    }

    /// Derivative of `y ↦ [x, y]` at `y` in direction `z`.
    pub fn sip_second_arg_derivative(&self, x: &[f64], y: &[f64], z: &[f64]) -> Result<f64> {
        check_dim(self.dim(), x.len())?;
        check_dim(self.dim(), y.len())?;
        check_dim(self.dim(), z.len())?;
        if linalg::is_zero(y) {
            return Err(Error::Domain("second-argument derivative is undefined at y = 0".into()));
        }
        if linalg::is_zero(z) {
            return Ok(0.0);
        }
        let h = fd_step(self.norm.eval(y));
        central_diff(|l| self.sip_unchecked(x, &linalg::axpy(y, l, z)), 0.0, h)
    }

    /// Residual of the identity linking the second norm derivative with the
    /// derivative of the product in its second argument:
    /// `|y| |.|''_{x,z}(y) = [x,.]'_z(y) - [x,y][z,y] / |y|^2`.
    pub fn theorem2_residual(&self, x: &[f64], y: &[f64], z: &[f64]) -> Result<f64> {
        let ny = self.norm(y)?;
        let lhs = ny * self.norm_second_derivative(x, z, y)?;
        let d = self.sip_second_arg_derivative(x, y, z)?;
        let rhs = d - self.sip(x, y)? * self.sip(z, y)? / (ny * ny);
        Ok((lhs - rhs).abs())
    }

    /// Generalized product `[y,y]^((p-2)/p) [x,y]`. In `y` it scales as
    /// `λ |λ|^(2(p-2)/p)`.
    pub fn nath_transform(&self, p: f64, x: &[f64], y: &[f64]) -> Result<f64> {
        if !(p >= 1.0) {
            return Err(Error::Domain(format!("transform exponent requires p >= 1, got {p}")));
        }
        check_dim(self.dim(), x.len())?;
        check_dim(self.dim(), y.len())?;
        if linalg::is_zero(y) {
            return Ok(0.0);
        }
        let yy = self.sip_unchecked(y, y);
        Ok(yy.powf((p - 2.0) / p) * self.sip_unchecked(x, y))
    }

    /// Sampled residuals of the semi-inner-product axioms.
    pub fn sip_axiom_report(&self, seed: Seed, trials: usize, tol: f64) -> AxiomReport {
        sip_axiom_report(self, seed, trials, tol)
    }
}

impl Product for SipSpace {
    fn dim(&self) -> usize {
        self.dim()
    }

    fn product(&self, u: &[f64], v: &[f64]) -> Result<f64> {
        self.sip(u, v)
    }

    fn is_symmetric_bilinear(&self) -> bool {
        self.norm.is_euclidean() && self.mode == SipMode::ClosedForm
    }
}

/// `|y|_p^(2-p) Σ x_i |y_i|^(p-1) sgn(y_i)`
fn lp_sip(p: f64, x: &[f64], y: &[f64]) -> f64 {
    let s = linalg::norm_inf(y);
    // factor out s for stability: [x, y] = s * |y/s|^(2-p) Σ x_i |y_i/s|^(p-1) sgn
    let ny = x
        .iter()
        .zip(y)
        .map(|(_, b)| (b.abs() / s).powf(p))
        .sum::<f64>()
        .powf(1.0 / p);
    let sum: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| a * (b.abs() / s).powf(p - 1.0) * b.signum())
        .sum();
    s * ny.powf(2.0 - p) * sum
}

/// Smallest index attaining `max |y_i|`.
pub(crate) fn max_index(y: &[f64]) -> usize {
    let mut j = 0;
    for (i, v) in y.iter().enumerate() {
        if v.abs() > y[j].abs() {
            j = i;
        }
    }
    j
}

/// Generic sampled axiom report for any product claimed to be a
/// semi-inner-product: additivity and homogeneity in the first argument,
/// homogeneity in the second, positivity and Cauchy–Schwarz.
pub fn sip_axiom_report<P: Product>(space: &P, seed: Seed, trials: usize, tol: f64) -> AxiomReport {
    let n = space.dim();
    let mut rng = seed.rng();
    let mut report = AxiomReport::new(tol);
    for _ in 0..trials.max(1) {
        let x = numerics::sample_nonzero(&mut rng, n, 1.0);
        let y = numerics::sample_nonzero(&mut rng, n, 1.0);
        let z = numerics::sample_nonzero(&mut rng, n, 1.0);
        let lambda: f64 = rng.gen_range(-3.0..3.0);
        let p = |a: &[f64], b: &[f64]| space.product(a, b).unwrap_or(f64::NAN);

        let xy = p(&x, &y);
        let zy = p(&z, &y);
        report.record(
            "additivity_first",
            (p(&linalg::add(&x, &z), &y) - xy - zy).abs(),
            &[&x, &z, &y],
        );
        report.record(
            "homogeneity_first",
            (p(&linalg::scale(&x, lambda), &y) - lambda * xy).abs(),
            &[&x, &y, &[lambda]],
        );
        report.record(
            "homogeneity_second",
            (p(&x, &linalg::scale(&y, lambda)) - lambda * xy).abs(),
            &[&x, &y, &[lambda]],
        );
        let xx = p(&x, &x);
        let positivity = if xx > 0.0 { 0.0 } else { xx.abs().max(f64::MIN_POSITIVE) };
        report.record("positivity", positivity, &[&x]);
        let yy = p(&y, &y);
        report.record("cauchy_schwarz", xy * xy - xx * yy, &[&x, &y]);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn norm_examples() {
        let p2 = SipSpace::pnorm(2.0, 2).unwrap();
        assert!(close(p2.norm(&[3.0, 4.0]).unwrap(), 5.0, 1e-14));
        let m = SipSpace::max_norm(2).unwrap();
        assert_eq!(m.norm(&[-2.0, 1.0]).unwrap(), 2.0);
        let p3 = SipSpace::pnorm(3.0, 2).unwrap();
        assert!(close(p3.norm(&[1.0, 1.0]).unwrap(), 2f64.powf(1.0 / 3.0), 1e-12));
        assert!(matches!(p3.norm(&[1.0]), Err(Error::Dimension { .. })));
    }

    #[test]
    fn invalid_norms_rejected() {
        assert!(NormSpec::pnorm(1.0, 2).is_err());
        assert!(NormSpec::pnorm(f64::INFINITY, 2).is_err());
        assert!(NormSpec::euclidean(0).is_err());
        assert!(NormSpec::custom(2, "sq", |x: &[f64]| x.iter().map(|v| v * v).sum()).is_err());
        assert!(NormSpec::custom(2, "l1", |x: &[f64]| x.iter().map(|v| v.abs()).sum()).is_ok());
    }

    #[test]
    fn sip_examples() {
        let e = SipSpace::euclidean(2).unwrap();
        assert_eq!(e.sip(&[1.0, 2.0], &[3.0, 4.0]).unwrap(), 11.0);

        let m = SipSpace::max_norm(2).unwrap();
        let x = [3.0, 5.0];
        let y = [2.0, 1.0];
        assert_eq!(m.sip(&x, &y).unwrap(), 6.0);
        // oracle: |y| times the finite-difference derivative of the max norm
        let fd = 2.0
            * central_diff(|l| linalg::norm_inf(&linalg::axpy(&y, l, &x)), 0.0, 1e-6).unwrap();
        assert!(close(fd, 6.0, 1e-6));

        let p4 = SipSpace::pnorm(4.0, 2).unwrap();
        let v = p4.sip(&[1.0, 0.0], &[1.0, 1.0]).unwrap();
        assert!(close(v, 2f64.powf(-0.5), 1e-9));
        let fd = p4.norm(&[1.0, 1.0]).unwrap() * p4.norm_first_derivative(&[1.0, 0.0], &[1.0, 1.0]).unwrap();
        assert!(close(fd, v, 1e-8));
    }

    #[test]
    fn sip_at_zero_is_zero() {
        for s in [
            SipSpace::euclidean(2).unwrap(),
            SipSpace::pnorm(3.0, 2).unwrap(),
            SipSpace::max_norm(2).unwrap(),
        ] {
            assert_eq!(s.sip(&[1.0, 2.0], &[0.0, 0.0]).unwrap(), 0.0);
        }
    }

    #[test]
    fn max_norm_tie_uses_smallest_index() {
        let m = SipSpace::max_norm(3).unwrap();
        assert_eq!(m.sip(&[2.0, 7.0, 9.0], &[1.0, -1.0, 1.0]).unwrap(), 2.0);
        assert_eq!(max_index(&[0.5, -3.0, 3.0]), 1);
    }

    #[test]
    fn closed_form_and_derivative_modes_agree() {
        for norm in [NormSpec::euclidean(3).unwrap(), NormSpec::pnorm(3.0, 3).unwrap(), NormSpec::pnorm(1.5, 3).unwrap()] {
            let closed = SipSpace::with_mode(norm.clone(), SipMode::ClosedForm);
            let deriv = SipSpace::with_mode(norm, SipMode::NormDerivative);
            let xs = numerics::sample_vectors(Seed(3), 3, 50, 1.0);
            for w in xs.windows(2) {
                let a = closed.sip(&w[0], &w[1]).unwrap();
                let b = deriv.sip(&w[0], &w[1]).unwrap();
                assert!(close(a, b, 1e-5), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn axiom_reports() {
        let e = SipSpace::euclidean(3).unwrap().sip_axiom_report(Seed(1), 200, 1e-12);
        assert!(e.all_pass(), "{e}");
        let p3 = SipSpace::pnorm(3.0, 3).unwrap().sip_axiom_report(Seed(7), 200, 1e-5);
        assert!(p3.all_pass(), "{p3}");
        let m = SipSpace::max_norm(3).unwrap().sip_axiom_report(Seed(7), 200, 1e-12);
        assert!(m.all_pass(), "{m}");
    }

    #[test]
    fn first_derivative_examples() {
        let e = SipSpace::euclidean(2).unwrap();
        assert!(close(e.norm_first_derivative(&[1.0, 0.0], &[1.0, 0.0]).unwrap(), 1.0, 1e-9));
        assert!(close(e.norm_first_derivative(&[0.0, 1.0], &[1.0, 0.0]).unwrap(), 0.0, 1e-9));
        let p3 = SipSpace::pnorm(3.0, 2).unwrap();
        let d = p3.norm_first_derivative(&[1.0, 1.0], &[1.0, 0.0]).unwrap();
        assert!(close(d, p3.sip(&[1.0, 1.0], &[1.0, 0.0]).unwrap(), 1e-6));
        assert!(close(d, 1.0, 1e-6));
        assert!(matches!(e.norm_first_derivative(&[1.0, 0.0], &[0.0, 0.0]), Err(Error::Domain(_))));
    }

    #[test]
    fn second_derivative_examples() {
        let e = SipSpace::euclidean(2).unwrap();
        let v = e.norm_second_derivative(&[0.0, 1.0], &[0.0, 1.0], &[1.0, 0.0]).unwrap();
        assert!(close(v, 1.0, 1e-4));

        let y = [0.6, -1.3];
        let ny = linalg::norm2(&y);
        let r = linalg::scale(&y, 1.0 / ny);
        for s in [e.clone(), SipSpace::pnorm(3.0, 2).unwrap(), SipSpace::max_norm(2).unwrap()] {
            assert!(s.norm_second_derivative(&r, &r, &y).unwrap().abs() <= 1e-4);
        }

        let p4 = SipSpace::pnorm(4.0, 2).unwrap();
        let (x, y) = ([0.0, 1.0], [1.0, 0.0]);
        let h = fd2_step(1.0);
        let a = p4.norm_second_derivative_with_step(&x, &x, &y, h).unwrap();
        let b = p4.norm_second_derivative_with_step(&x, &x, &y, h / 2.0).unwrap();
        assert!((a - b).abs() <= 1e-3);
        assert!(e.norm_second_derivative(&x, &x, &[0.0, 0.0]).is_err());
    }

    #[test]
    fn second_arg_derivative_examples() {
        let e = SipSpace::euclidean(3).unwrap();
        let (x, y, z) = ([1.0, -2.0, 0.5], [0.3, 0.1, 2.0], [0.7, 0.2, -1.0]);
        let d = e.sip_second_arg_derivative(&x, &y, &z).unwrap();
        assert!(close(d, linalg::dot(&x, &z), 1e-6));
        assert_eq!(e.sip_second_arg_derivative(&x, &y, &[0.0; 3]).unwrap(), 0.0);
        let p3 = SipSpace::pnorm(3.0, 2).unwrap();
        let one = [1.0, 0.0];
        assert!(p3.theorem2_residual(&one, &one, &one).unwrap() <= 1e-4);
    }

    #[test]
    fn curvature_identity_examples() {
        let e = SipSpace::euclidean(2).unwrap();
        assert!(e.theorem2_residual(&[1.0, 2.0], &[1.0, 0.0], &[0.0, 1.0]).unwrap() <= 1e-4);
        for s in [e, SipSpace::pnorm(4.0, 2).unwrap()] {
            let y = [0.8, -0.4];
            assert!(s.theorem2_residual(&y, &y, &[0.3, 0.9]).unwrap() <= 1e-4);
        }
    }

    #[test]
    fn nath_transform_examples() {
        let e = SipSpace::euclidean(2).unwrap();
        let (x, y) = ([0.3, -1.2], [2.0, 0.5]);
        assert_eq!(e.nath_transform(2.0, &x, &y).unwrap(), e.sip(&x, &y).unwrap());
        assert!(close(e.nath_transform(4.0, &[2.0, 0.0], &[2.0, 0.0]).unwrap(), 8.0, 1e-12));
        assert_eq!(e.nath_transform(3.0, &x, &[0.0, 0.0]).unwrap(), 0.0);
        assert!(e.nath_transform(0.5, &x, &y).is_err());

        let p3 = SipSpace::pnorm(3.0, 2).unwrap();
        for p in [1.5, 3.0, 4.0] {
            for lambda in [-2.5, -0.3, 0.7, 3.0] {
                let lhs = p3.nath_transform(p, &x, &linalg::scale(&y, lambda)).unwrap();
                let degree = 2.0 * (p - 2.0) / p;
                let rhs = lambda * f64::abs(lambda).powf(degree) * p3.nath_transform(p, &x, &y).unwrap();
                assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
            }
        }
    }

    #[test]
    fn custom_gauge_goes_through_derivative() {
        let g = NormSpec::custom(2, "ellipse", |x: &[f64]| (x[0] * x[0] + 4.0 * x[1] * x[1]).sqrt()).unwrap();
        let s = SipSpace::new(g);
        // [x,y] = x^T A y for the ellipse norm with A = diag(1, 4)
        let v = s.sip(&[1.0, 2.0], &[0.5, -0.7]).unwrap();
        assert!(close(v, 0.5 - 8.0 * 0.7, 1e-8));
    }

    #[test]
    fn p_near_two_matches_dot() {
        let p = SipSpace::pnorm(2.0 + 1e-9, 2).unwrap();
        for w in numerics::sample_vectors(Seed(9), 2, 40, 0.7).windows(2) {
            assert!((p.sip(&w[0], &w[1]).unwrap() - linalg::dot(&w[0], &w[1])).abs() <= 1e-6);
        }
    }
}
