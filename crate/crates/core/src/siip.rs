//! Semi-indefinite-inner-products: products linear in the first argument,
//! homogeneous in the second, nondegenerate, with Cauchy–Schwarz required
//! only on definite subspaces.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{check_dim, Error, Result};
use crate::linalg;
use crate::norms::NormSpec;
use crate::numerics::{self, fd2_step, fd_step, Seed};
use crate::product::Product;
use crate::report::AxiomReport;

pub type ScalarFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Relative threshold deciding which coordinates belong to a support.
pub const SUPPORT_TOL: f64 = 1e-9;

#[derive(Clone)]
pub enum SiipKind {
    /// `[u, v] = v*(u)` with `v*` the canonical functional of the
    /// cross-polytope face containing `v / |v|_1`.
    CrossPolytope,
    /// `[u, v] = ε(v̂) |v| ℓ_v̂(u)` where `ℓ_v̂` supports the unit ball of a
    /// smooth norm at `v̂ = v / |v|` and `ε` is a sign function on the sphere.
    SignFunction { norm: NormSpec, sign: ScalarFn },
    /// `[u, v] = ½ uᵀ D²G(v) v` for a degree-2 homogeneous `G`.
    NormsquareHessian { name: String, g: ScalarFn },
    /// `Σ s_i u_i v_i` with signature entries `±1`.
    DiagonalIip(Vec<f64>),
    /// Planar product associated with the Euclidean norm that violates
    /// Cauchy–Schwarz.
    Example4,
}

impl fmt::Debug for SiipKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SiipKind::CrossPolytope => write!(f, "CrossPolytope"),
            SiipKind::SignFunction { norm, .. } => write!(f, "SignFunction({:?})", norm.kind()),
            SiipKind::NormsquareHessian { name, .. } => write!(f, "NormsquareHessian({name})"),
            SiipKind::DiagonalIip(s) => write!(f, "DiagonalIip({s:?})"),
            SiipKind::Example4 => write!(f, "planar-counterexample"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SiipSpace {
    kind: SiipKind,
    dim: usize,
}

impl SiipSpace {
    pub fn cross_polytope(dim: usize) -> Result<Self> {
        Self::checked(SiipKind::CrossPolytope, dim)
    }

    pub fn sign_function<F>(norm: NormSpec, sign: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        if !norm.is_smooth() {
            return Err(Error::Unsupported(
                "sign-function construction needs a smooth norm (unique supporting functional)".into(),
            ));
        }
        let dim = norm.dim();
        Self::checked(SiipKind::SignFunction { norm, sign: Arc::new(sign) }, dim)
    }

    pub fn normsquare_hessian<F>(dim: usize, name: &str, g: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self::checked(SiipKind::NormsquareHessian { name: name.to_string(), g: Arc::new(g) }, dim)
    }

    pub fn diagonal(signature: &[f64]) -> Result<Self> {
        if signature.iter().any(|s| *s != 1.0 && *s != -1.0) {
            return Err(Error::Domain(format!("signature entries must be +1 or -1: {signature:?}")));
        }
        Self::checked(SiipKind::DiagonalIip(signature.to_vec()), signature.len())
    }

    pub fn example4() -> Self {
        Self { kind: SiipKind::Example4, dim: 2 }
    }

    fn checked(kind: SiipKind, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("dimension must be positive".into()));
        }
        Ok(Self { kind, dim })
    }

    pub fn kind(&self) -> &SiipKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn siip(&self, u: &[f64], v: &[f64]) -> Result<f64> {
        check_dim(self.dim, u.len())?;
        check_dim(self.dim, v.len())?;
        let zero_v = linalg::is_zero(v);
        match &self.kind {
            SiipKind::CrossPolytope => Ok(if zero_v { 0.0 } else { cross_polytope(u, v) }),
            SiipKind::SignFunction { norm, sign } => {
                if zero_v {
                    return Err(Error::Domain("sign-function product is undefined at v = 0".into()));
                }
                let nv = norm.norm(v)?;
                let vhat = linalg::scale(v, 1.0 / nv);
                let eps = if sign(&vhat) < 0.0 { -1.0 } else { 1.0 };
                let ell = supporting_functional(norm, &vhat)?;
                Ok(eps * nv * linalg::dot(&ell, u))
            }
            SiipKind::NormsquareHessian { g, .. } => {
                if zero_v {
                    return Err(Error::Domain("Hessian product is undefined at v = 0".into()));
                }
                hessian_form(g.as_ref(), u, v)
            }
            SiipKind::DiagonalIip(s) => {
                Ok(s.iter().zip(u).zip(v).map(|((s, a), b)| s * a * b).sum())
            }
            SiipKind::Example4 => {
                if zero_v {
                    return Ok(0.0);
                }
                let (x1, y1, x2, y2) = (u[0], u[1], v[0], v[1]);
                Ok((x1 * x2 + 2.0 * y1 * y2) * (x2 * x2 + y2 * y2) / (x2 * x2 + 2.0 * y2 * y2))
            }
        }
    }

    pub fn axiom_report(&self, seed: Seed, trials: usize, tol: f64) -> AxiomReport {
        siip_axiom_report(self, seed, trials, tol)
    }
}

impl Product for SiipSpace {
    fn dim(&self) -> usize {
        self.dim
    }

    fn product(&self, u: &[f64], v: &[f64]) -> Result<f64> {
        self.siip(u, v)
    }

    fn is_symmetric_bilinear(&self) -> bool {
        matches!(self.kind, SiipKind::DiagonalIip(_))
    }
}

fn cross_polytope(u: &[f64], v: &[f64]) -> f64 {
    let cutoff = SUPPORT_TOL * linalg::norm_inf(v);
    let mut l1 = 0.0;
    let mut size = 0usize;
    let mut functional = 0.0;
    for (a, b) in u.iter().zip(v) {
        if b.abs() > cutoff {
            size += 1;
            l1 += b.abs();
            functional += b.signum() * a;
        }
    }
    let parity = if (size - 1) % 2 == 0 { 1.0 } else { -1.0 };
    parity * l1 * functional
}

/// Finite-difference gradient of the norm at a unit vector, rescaled so the
/// functional takes the value 1 at that vector.
pub fn supporting_functional(norm: &NormSpec, vhat: &[f64]) -> Result<Vec<f64>> {
    let h = fd_step(1.0);
    let n = vhat.len();
    let mut grad = Vec::with_capacity(n);
    for i in 0..n {
        let e = linalg::unit(n, i);
        let d = numerics::central_diff(|l| norm.norm(&linalg::axpy(vhat, l, &e)).unwrap_or(f64::NAN), 0.0, h)?;
        grad.push(d);
    }
    let at = linalg::dot(&grad, vhat);
    if !(at.abs() > 0.0) {
        return Err(Error::Numerical("supporting functional vanishes on its base point".into()));
    }
    Ok(linalg::scale(&grad, 1.0 / at))
}

/// `½ uᵀ D²G(v) v` via a four-point mixed central difference along the
/// normalized directions of `u` and `v`.
fn hessian_form(g: &(dyn Fn(&[f64]) -> f64 + Send + Sync), u: &[f64], v: &[f64]) -> Result<f64> {
    let nu = linalg::norm2(u);
    if nu == 0.0 {
        return Ok(0.0);
    }
    let nv = linalg::norm2(v);
    let uh = linalg::scale(u, 1.0 / nu);
    let vh = linalg::scale(v, 1.0 / nv);
    let h = fd2_step(nv);
    let at = |a: f64, b: f64| -> Result<f64> {
        let p: Vec<f64> = v
            .iter()
            .zip(&uh)
            .zip(&vh)
            .map(|((v, x), y)| v + a * x + b * y)
            .collect();
        let val = g(&p);
        if val.is_finite() {
            Ok(val)
        } else {
            Err(Error::Numerical(format!("G({p:?}) = {val}")))
        }
    };
    let mixed = (at(h, h)? - at(h, -h)? - at(-h, h)? + at(-h, -h)?) / (4.0 * h * h);
    Ok(0.5 * mixed * nu * nv)
}

/// Sampled residuals of the s.i.i.p. properties: additivity and homogeneity
/// in the first argument, homogeneity in the second, real-valued squares,
/// nondegeneracy and Cauchy–Schwarz on sampled definite planes.
pub fn siip_axiom_report<P: Product>(space: &P, seed: Seed, trials: usize, tol: f64) -> AxiomReport {
    let n = space.dim();
    let mut rng = seed.rng();
    let mut report = AxiomReport::new(tol);
    let basis: Vec<Vec<f64>> = (0..n).map(|i| linalg::unit(n, i)).collect();
    let p = |a: &[f64], b: &[f64]| space.product(a, b).unwrap_or(f64::NAN);
    for _ in 0..trials.max(1) {
        let x = numerics::sample_nonzero(&mut rng, n, 1.0);
        let y = numerics::sample_nonzero(&mut rng, n, 1.0);
        let z = numerics::sample_nonzero(&mut rng, n, 1.0);
        let lambda: f64 = rng.gen_range(-3.0..3.0);

        let xy = p(&x, &y);
        report.record(
            "additivity_first",
            (p(&linalg::add(&x, &z), &y) - xy - p(&z, &y)).abs(),
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
        let yy = p(&y, &y);
        report.record("real_square", if yy.is_finite() { 0.0 } else { f64::INFINITY }, &[&y]);

        let degenerate = yy.abs() <= tol && basis.iter().all(|b| p(b, &y).abs() <= tol);
        report.record("nondegeneracy", if degenerate { 1.0 } else { 0.0 }, &[&y]);

        if definite_sign(&|v: &[f64]| p(v, v), &[x.clone(), y.clone()], &mut rng, tol).is_some() {
            let xx = p(&x, &x);
            report.record("cauchy_schwarz_definite", xy * xy - xx * yy, &[&x, &y]);
        } else {
            report.record("cauchy_schwarz_definite", 0.0, &[]);
        }
    }
    report
}

/// Sign of `[v, v]` on the span of `basis` if it is constant on a sample of
/// the span, `None` when both signs (or zero) occur.
fn definite_sign<F, R>(square: &F, basis: &[Vec<f64>], rng: &mut R, tol: f64) -> Option<f64>
where
    F: Fn(&[f64]) -> f64,
    R: Rng,
{
    let mut sign = 0.0;
    for i in 0..48 {
        let coeffs: Vec<f64> = if basis.len() == 2 {
            let theta = std::f64::consts::PI * i as f64 / 48.0;
            vec![theta.cos(), theta.sin()]
        } else {
            numerics::sample_nonzero(rng, basis.len(), 1.0)
        };
        let v = linalg::combine(&coeffs, basis);
        let q = square(&v);
        if q.abs() <= tol || !q.is_finite() {
            return None;
        }
        if sign == 0.0 {
            sign = q.signum();
        } else if q.signum() != sign {
            return None;
        }
    }
    Some(sign)
}

/// A pair violating Cauchy–Schwarz together with its excess.
#[derive(Debug, Clone, PartialEq)]
pub struct CsWitness {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub margin: f64,
}

/// Sampled search in `span(basis)` for the worst pair with
/// `[u,v]² > [u,u][v,v] + tol`.
///
/// Fails with [`Error::ConstantSign`] if the sampled squares on the span are
/// not all of one sign, since Cauchy–Schwarz is only claimed on definite
/// subspaces.
pub fn cauchy_schwarz_witness<P: Product>(
    product: &P,
    basis: &[Vec<f64>],
    seed: Seed,
    trials: usize,
    tol: f64,
) -> Result<Option<CsWitness>> {
    for b in basis {
        check_dim(product.dim(), b.len())?;
    }
    if basis.is_empty() {
        return Ok(None);
    }
    let mut rng = seed.rng();
    let p = |a: &[f64], b: &[f64]| product.product(a, b);
    let sign = {
        let square = |v: &[f64]| p(v, v).unwrap_or(f64::NAN);
        definite_sign(&square, basis, &mut rng, tol).ok_or(Error::ConstantSign)?
    };
    let mut best: Option<CsWitness> = None;
    for _ in 0..trials {
        let cu = numerics::sample_nonzero(&mut rng, basis.len(), 2.0);
        let cv = numerics::sample_nonzero(&mut rng, basis.len(), 2.0);
        let u = linalg::combine(&cu, basis);
        let v = linalg::combine(&cv, basis);
        let uu = p(&u, &u)?;
        let vv = p(&v, &v)?;
        if uu.signum() != sign || vv.signum() != sign {
            return Err(Error::ConstantSign);
        }
        let uv = p(&u, &v)?;
        let margin = uv * uv - uu * vv;
        if margin > tol && best.as_ref().map_or(true, |b| margin > b.margin) {
            best = Some(CsWitness { u, v, margin });
        }
    }
    Ok(best)
}

/// Sampled check of the normsquare axioms of `G`.
///
/// `pn1` is `G(λx) = λ² G(x)`; `pn2` is subadditivity of `sqrt(|G|)` on
/// sampled planes where `G` has constant sign.
pub fn normsquare_check<F>(g: F, dim: usize, seed: Seed, trials: usize, tol: f64) -> AxiomReport
where
    F: Fn(&[f64]) -> f64,
{
    let mut rng = seed.rng();
    let mut report = AxiomReport::new(tol);
    report.record("pn1_homogeneity", 0.0, &[]);
    report.record("pn2_convexity", 0.0, &[]);
    for _ in 0..trials.max(1) {
        let x = numerics::sample_nonzero(&mut rng, dim, 1.0);
        let lambda: f64 = rng.gen_range(-3.0..3.0);
        let gx = g(&x);
        report.record(
            "pn1_homogeneity",
            (g(&linalg::scale(&x, lambda)) - lambda * lambda * gx).abs(),
            &[&x, &[lambda]],
        );

        let y = numerics::sample_nonzero(&mut rng, dim, 1.0);
        let plane = [x.clone(), y.clone()];
        if let Some(sign) = definite_sign(&g, &plane, &mut rng, 0.0) {
            let root = |v: &[f64]| (sign * g(v)).max(0.0).sqrt();
            let a = numerics::sample_nonzero(&mut rng, 2, 1.0);
            let b = numerics::sample_nonzero(&mut rng, 2, 1.0);
            let va = linalg::combine(&a, &plane);
            let vb = linalg::combine(&b, &plane);
            let excess = root(&linalg::add(&va, &vb)) - root(&va) - root(&vb);
            report.record("pn2_convexity", excess, &[&va, &vb]);
        }
    }
    report
}

/// Neutrality of `span(basis)` for a symmetric bilinear product: every
/// sampled vector of the span is null, equivalently all pairwise products
/// vanish.
pub fn polarization_neutral_check<P: Product>(
    product: &P,
    basis: &[Vec<f64>],
    seed: Seed,
    tol: f64,
) -> Result<bool> {
    if !product.is_symmetric_bilinear() {
        return Err(Error::Unsupported(
            "neutrality via polarization needs a symmetric bilinear product".into(),
        ));
    }
    for b in basis {
        check_dim(product.dim(), b.len())?;
    }
    let mut pairwise = true;
    for bi in basis {
        for bj in basis {
            if product.product(bi, bj)?.abs() > tol {
                pairwise = false;
            }
        }
    }
    let mut rng = seed.rng();
    let mut sampled = true;
    for _ in 0..64 {
        if basis.is_empty() {
            break;
        }
        let c = numerics::sample_nonzero(&mut rng, basis.len(), 1.0);
        let v = linalg::combine(&c, basis);
        if product.product(&v, &v)?.abs() > tol {
            sampled = false;
        }
    }
    Ok(pairwise && sampled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::SipSpace;

    #[test]
    fn cross_polytope_examples() {
        let c3 = SiipSpace::cross_polytope(3).unwrap();
        let e1 = [1.0, 0.0, 0.0];
        assert_eq!(c3.siip(&e1, &e1).unwrap(), 1.0);
        let c2 = SiipSpace::cross_polytope(2).unwrap();
        assert_eq!(c2.siip(&[0.5, 0.5], &[0.5, 0.5]).unwrap(), -1.0);
    }

    #[test]
    fn cross_polytope_square_and_sign_flip() {
        let c = SiipSpace::cross_polytope(4).unwrap();
        let mut rng = Seed(21).rng();
        for _ in 0..200 {
            let mut v = numerics::sample_nonzero(&mut rng, 4, 1.0);
            let drop = rng.gen_range(0..4);
            v[drop] = 0.0;
            if linalg::is_zero(&v) {
                continue;
            }
            let support = v.iter().filter(|x| **x != 0.0).count();
            let l1: f64 = v.iter().map(|x| x.abs()).sum();
            let expect = if support % 2 == 1 { l1 * l1 } else { -l1 * l1 };
            assert!((c.siip(&v, &v).unwrap() - expect).abs() <= 1e-12);

            let u = numerics::sample_nonzero(&mut rng, 4, 1.0);
            let lambda = -rng.gen_range(0.1..3.0);
            let lhs = c.siip(&u, &linalg::scale(&v, lambda)).unwrap();
            assert!((lhs - lambda * c.siip(&u, &v).unwrap()).abs() <= 1e-9);
        }
    }

    #[test]
    fn planar_counterexample_values() {
        let e4 = SiipSpace::example4();
        let uv = e4.siip(&[1.0, 2.0], &[1.0, 1.0]).unwrap();
        assert!((uv - 10.0 / 3.0).abs() <= 1e-12);
        assert!((e4.siip(&[1.0, 2.0], &[1.0, 2.0]).unwrap() - 5.0).abs() <= 1e-12);
        assert!((e4.siip(&[1.0, 1.0], &[1.0, 1.0]).unwrap() - 2.0).abs() <= 1e-12);
        for v in numerics::sample_vectors(Seed(4), 2, 100, 3.0) {
            let vv = e4.siip(&v, &v).unwrap();
            assert!((vv - linalg::dot(&v, &v)).abs() <= 1e-12 * (1.0 + vv));
        }
    }

    #[test]
    fn diagonal_and_errors() {
        let d = SiipSpace::diagonal(&[1.0, 1.0, -1.0]).unwrap();
        assert_eq!(d.siip(&[0.0, 0.0, 1.0], &[0.0, 0.0, 1.0]).unwrap(), -1.0);
        assert!(SiipSpace::diagonal(&[1.0, 0.5]).is_err());
        assert!(matches!(d.siip(&[1.0], &[1.0, 0.0, 0.0]), Err(Error::Dimension { .. })));
        let h = SiipSpace::normsquare_hessian(2, "sq", |x: &[f64]| x[0] * x[0] + x[1] * x[1]).unwrap();
        assert!(matches!(h.siip(&[1.0, 0.0], &[0.0, 0.0]), Err(Error::Domain(_))));
        assert!(SiipSpace::sign_function(NormSpec::max_norm(2).unwrap(), |_: &[f64]| 1.0).is_err());
    }

    #[test]
    fn sign_function_with_unit_sign_is_euclidean() {
        let s = SiipSpace::sign_function(NormSpec::euclidean(3).unwrap(), |_: &[f64]| 1.0).unwrap();
        let xs = numerics::sample_vectors(Seed(8), 3, 40, 2.0);
        for w in xs.windows(2) {
            let a = s.siip(&w[0], &w[1]).unwrap();
            assert!((a - linalg::dot(&w[0], &w[1])).abs() <= 1e-5);
        }
    }

    #[test]
    fn sign_function_square_carries_sign() {
        let norm = NormSpec::pnorm(3.0, 2).unwrap();
        let s = SiipSpace::sign_function(norm.clone(), |v: &[f64]| if v[1] > 0.5 { -1.0 } else { 1.0 }).unwrap();
        let v = [0.1, 2.0];
        let nv = norm.norm(&v).unwrap();
        assert!((s.siip(&v, &v).unwrap() + nv * nv).abs() <= 1e-6);
        // the functional at v̂ has dual norm 1: it matches the ℓ_3 s.i.p.
        let sip = SipSpace::new(norm);
        let u = [0.7, -0.3];
        let w = [1.0, 0.2];
        assert!((s.siip(&u, &w).unwrap() - sip.sip(&u, &w).unwrap()).abs() <= 1e-6);
    }

    #[test]
    fn hessian_of_quadratic_matches_diagonal() {
        let sig = [1.0, -1.0, 1.0];
        let h = SiipSpace::normsquare_hessian(3, "quad", move |x: &[f64]| {
            x.iter().zip(&sig).map(|(v, s)| s * v * v).sum()
        })
        .unwrap();
        let d = SiipSpace::diagonal(&sig).unwrap();
        let xs = numerics::sample_vectors(Seed(12), 3, 60, 2.0);
        for w in xs.windows(2) {
            let a = h.siip(&w[0], &w[1]).unwrap();
            let b = d.siip(&w[0], &w[1]).unwrap();
            assert!((a - b).abs() <= 1e-6, "{a} vs {b}");
        }
    }

    #[test]
    fn axiom_reports() {
        let d = SiipSpace::diagonal(&[1.0, -1.0, 1.0]).unwrap().axiom_report(Seed(2), 300, 1e-12);
        assert!(d.all_pass(), "{d}");

        let c = SiipSpace::cross_polytope(3).unwrap().axiom_report(Seed(5), 500, 1e-12);
        for name in ["additivity_first", "homogeneity_first", "homogeneity_second", "real_square", "nondegeneracy"] {
            assert!(c.residual(name) <= 1e-12, "{name}: {c}");
        }

        let e4 = SiipSpace::example4().axiom_report(Seed(3), 300, 1e-12);
        for name in ["additivity_first", "homogeneity_first", "homogeneity_second"] {
            assert!(e4.residual(name) <= 1e-12, "{name}: {e4}");
        }
        assert!(e4.residual("cauchy_schwarz_definite") > 0.0);
        assert!(!e4.get("cauchy_schwarz_definite").unwrap().pass);
    }

    #[test]
    fn cs_witness_searches() {
        let e = SipSpace::euclidean(3).unwrap();
        let basis = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 1.0]];
        assert_eq!(cauchy_schwarz_witness(&e, &basis, Seed(1), 500, 1e-9).unwrap(), None);

        let e4 = SiipSpace::example4();
        let basis = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let w = cauchy_schwarz_witness(&e4, &basis, Seed(3), 2000, 1e-9).unwrap().unwrap();
        assert!(w.margin >= 10.0 / 9.0, "{w:?}");

        let d = SiipSpace::diagonal(&[1.0, -1.0]).unwrap();
        assert_eq!(
            cauchy_schwarz_witness(&d, &basis, Seed(1), 10, 1e-9),
            Err(Error::ConstantSign)
        );
    }

    #[test]
    fn normsquare_checks() {
        let r = normsquare_check(|x: &[f64]| linalg::dot(x, x), 3, Seed(1), 200, 1e-12);
        assert!(r.all_pass(), "{r}");
        let r = normsquare_check(|x: &[f64]| x[0] * x[0] - x[1] * x[1], 2, Seed(1), 200, 1e-12);
        assert!(r.residual("pn1_homogeneity") <= 1e-12);
        let l4 = NormSpec::pnorm(4.0, 3).unwrap();
        let r = normsquare_check(move |x: &[f64]| l4.norm(x).unwrap().powi(2), 3, Seed(1), 200, 1e-12);
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn neutral_subspaces() {
        let d = SiipSpace::diagonal(&[1.0, -1.0]).unwrap();
        assert!(polarization_neutral_check(&d, &[vec![1.0, 1.0]], Seed(1), 1e-9).unwrap());
        assert!(!polarization_neutral_check(&d, &[vec![1.0, 0.0]], Seed(1), 1e-9).unwrap());
        let d3 = SiipSpace::diagonal(&[1.0, 1.0, -1.0]).unwrap();
        // (1,0,1) and (0,1,1) are each null but not mutually orthogonal
        let basis = vec![vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 1.0]];
        assert!(!polarization_neutral_check(&d3, &basis, Seed(1), 1e-9).unwrap());
        assert!(polarization_neutral_check(&d3, &basis[..1], Seed(1), 1e-9).unwrap());
        assert!(matches!(
            polarization_neutral_check(&SiipSpace::example4(), &[vec![1.0, 0.0]], Seed(1), 1e-9),
            Err(Error::Unsupported(_))
        ));
    }
}
