//! Orthogonality in normed and semi-indefinite spaces.
//!
//! Argument order follows the convention "`y` is orthogonal to `x`": every
//! predicate takes `(x, y)` and, for product-based relations, tests `[y, x]`.

use std::fmt;
use std::str::FromStr;

use crate::error::{check_dim, Error, Result};
use crate::linalg;
use crate::minkowski::GeneralizedMinkowskiSpace;
use crate::norms::{NormSpec, SipSpace};
use crate::numerics::{self, minimize_scalar_bracketed, Seed};
use crate::product::Product;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrthoRelation {
    /// `|x + λy| = |x − λy|` for all λ.
    Roberts,
    /// `|x| ≤ |x + λy|` for all λ (Birkhoff–James).
    Birkhoff,
    /// `|x + y| = |x − y|`.
    Isosceles,
    /// `|x|² + |y|² = |x − y|²`.
    Pythagorean,
    /// Isosceles on the normalized vectors.
    Singer,
    /// `[y, x] = 0`.
    SipOrtho,
}

impl OrthoRelation {
    pub const ALL: [OrthoRelation; 6] = [
        OrthoRelation::Roberts,
        OrthoRelation::Birkhoff,
        OrthoRelation::Isosceles,
        OrthoRelation::Pythagorean,
        OrthoRelation::Singer,
        OrthoRelation::SipOrtho,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OrthoRelation::Roberts => "roberts",
            OrthoRelation::Birkhoff => "birkhoff",
            OrthoRelation::Isosceles => "isosceles",
            OrthoRelation::Pythagorean => "pythagorean",
            OrthoRelation::Singer => "singer",
            OrthoRelation::SipOrtho => "sip",
        }
    }
}

impl fmt::Display for OrthoRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrthoRelation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "roberts" | "r" => Ok(OrthoRelation::Roberts),
            "birkhoff" | "b" | "bj" | "birkhoff-james" => Ok(OrthoRelation::Birkhoff),
            "isosceles" | "i" => Ok(OrthoRelation::Isosceles),
            "pythagorean" | "p" => Ok(OrthoRelation::Pythagorean),
            "singer" | "s" => Ok(OrthoRelation::Singer),
            "sip" | "sip-ortho" => Ok(OrthoRelation::SipOrtho),
            other => Err(Error::Usage(format!("unknown orthogonality relation '{other}'"))),
        }
    }
}

/// Result of testing one orthogonality relation.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoOutcome {
    pub holds: bool,
    pub residual: f64,
    /// Minimizing λ for Birkhoff orthogonality.
    pub lambda: Option<f64>,
}

/// Dyadic grid `±2⁻⁵ … ±2³` used for the Roberts predicate.
fn roberts_grid() -> impl Iterator<Item = f64> {
    (-5..=3).flat_map(|e| {
        let l = 2f64.powi(e);
        [l, -l]
    })
}

pub fn orthogonality(
    space: &SipSpace,
    rel: OrthoRelation,
    x: &[f64],
    y: &[f64],
    tol: f64,
    opt_tol: f64,
) -> Result<OrthoOutcome> {
    check_dim(space.dim(), x.len())?;
    check_dim(space.dim(), y.len())?;
    let norm = |v: &[f64]| space.norm.eval(v);
    let outcome = |residual: f64| OrthoOutcome { holds: residual <= tol, residual, lambda: None };
    Ok(match rel {
        OrthoRelation::Roberts => {
            let r = roberts_grid()
                .map(|l| (norm(&linalg::axpy(x, l, y)) - norm(&linalg::axpy(x, -l, y))).abs())
                .fold(0.0, f64::max);
            outcome(r)
        }
        OrthoRelation::Birkhoff => {
            let (nx, ny) = (norm(x), norm(y));
            if nx == 0.0 || ny == 0.0 {
                return Ok(OrthoOutcome { holds: true, residual: 0.0, lambda: Some(0.0) });
            }
            let xh = linalg::scale(x, 1.0 / nx);
            let yh = linalg::scale(y, 1.0 / ny);
            let (l, m) = minimize_scalar_bracketed(|l| norm(&linalg::axpy(&xh, l, &yh)), -8.0, 8.0, 33, opt_tol)?;
            let residual = (1.0 - m).max(0.0) * nx;
            OrthoOutcome { holds: residual <= tol, residual, lambda: Some(l * nx / ny) }
        }
        OrthoRelation::Isosceles => outcome((norm(&linalg::add(x, y)) - norm(&linalg::sub(x, y))).abs()),
        OrthoRelation::Pythagorean => {
            let (a, b, c) = (norm(x), norm(y), norm(&linalg::sub(x, y)));
            outcome((a * a + b * b - c * c).abs())
        }
        OrthoRelation::Singer => {
            let (nx, ny) = (norm(x), norm(y));
            if nx == 0.0 || ny == 0.0 {
                return Ok(outcome(0.0));
            }
            let xh = linalg::scale(x, 1.0 / nx);
            let yh = linalg::scale(y, 1.0 / ny);
            outcome((norm(&linalg::add(&xh, &yh)) - norm(&linalg::sub(&xh, &yh))).abs())
        }
        OrthoRelation::SipOrtho => outcome(space.sip_unchecked(y, x).abs()),
    })
}

pub fn is_orthogonal(space: &SipSpace, rel: OrthoRelation, x: &[f64], y: &[f64], tol: f64) -> Result<bool> {
    Ok(orthogonality(space, rel, x, y, tol, 1e-7)?.holds)
}

/// Basis of the orthogonal companion `{w : [w, u] = 0}` of `u`.
///
/// The functional `w ↦ [w, u]` is linear; with row `r` its values on the
/// standard basis and `m` the (lowest) index of its largest entry, the
/// companion is spanned by `e_j − (r_j / r_m) e_m` for `j ≠ m`.
pub fn orthogonal_companion_basis<P: Product>(product: &P, u: &[f64], tol: f64) -> Result<Vec<Vec<f64>>> {
    let n = product.dim();
    check_dim(n, u.len())?;
    if linalg::is_zero(u) {
        return Err(Error::Domain("companion of the zero vector is the whole space".into()));
    }
    let r = (0..n)
        .map(|i| product.product(&linalg::unit(n, i), u))
        .collect::<Result<Vec<f64>>>()?;
    let m = r
        .iter()
        .enumerate()
        .fold(0, |best, (i, v)| if v.abs() > r[best].abs() { i } else { best });
    if r[m].abs() <= tol {
        return Err(Error::Degenerate);
    }
    Ok((0..n)
        .filter(|&j| j != m)
        .map(|j| {
            let mut w = linalg::unit(n, j);
            w[m] = -r[j] / r[m];
            w
        })
        .collect())
}

/// Gram–Schmidt with an indefinite symmetric product.
///
/// Fails with [`Error::NeutralPivot`] (1-based index) as soon as an
/// intermediate vector is neutral, which happens exactly when a leading
/// principal Gram determinant vanishes.
pub fn regular_orthogonalization<P: Product>(product: &P, vectors: &[Vec<f64>], tol: f64) -> Result<Vec<Vec<f64>>> {
    if !product.is_symmetric_bilinear() {
        return Err(Error::Unsupported("regular orthogonalization needs a symmetric bilinear product".into()));
    }
    for v in vectors {
        check_dim(product.dim(), v.len())?;
    }
    if linalg::rank(vectors, 1e-12) < vectors.len() {
        return Err(Error::Domain("input vectors are linearly dependent".into()));
    }
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(vectors.len());
    let mut squares: Vec<f64> = Vec::with_capacity(vectors.len());
    for (k, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        for (ui, sq) in out.iter().zip(&squares) {
            let c = product.product(v, ui)? / sq;
            w = linalg::axpy(&w, -c, ui);
        }
        let sq = product.product(&w, &w)?;
        if sq.abs() <= tol * linalg::dot(&w, &w).max(1.0) {
            return Err(Error::NeutralPivot { index: k + 1 });
        }
        out.push(w);
        squares.push(sq);
    }
    Ok(out)
}

pub fn gram_matrix<P: Product>(product: &P, vectors: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    vectors
        .iter()
        .map(|a| vectors.iter().map(|b| product.product(a, b)).collect())
        .collect()
}

/// Determinant of the Gram matrix by cofactor expansion (at most 6 vectors).
pub fn gram_determinant<P: Product>(product: &P, vectors: &[Vec<f64>]) -> Result<f64> {
    if vectors.len() > 6 {
        return Err(Error::Unsupported("gram_determinant expands directly; at most 6 vectors".into()));
    }
    let g = gram_matrix(product, vectors)?;
    Ok(cofactor_det(&g))
}

fn cofactor_det(m: &[Vec<f64>]) -> f64 {
    match m.len() {
        0 => 1.0,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<f64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                sign * m[0][j] * cofactor_det(&minor)
            })
            .sum(),
    }
}

/// Unit vector of `norm` in direction `theta`.
fn unit_at(norm: &NormSpec, theta: f64) -> Vec<f64> {
    let d = [theta.cos(), theta.sin()];
    let nd = norm.eval(&d);
    vec![d[0] / nd, d[1] / nd]
}

const AUERBACH_GRID: usize = 720;

/// Auerbach pair of a normed plane from the inscribed cross-polytope of
/// maximal area: maximize `|det[u v]|` over unit vectors, by a 720×720
/// angle grid followed by simplex refinement.
pub fn auerbach_basis_2d(norm: &NormSpec, opt_tol: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if norm.dim() != 2 {
        return Err(Error::Unsupported("auerbach_basis_2d needs a plane".into()));
    }
    let step = std::f64::consts::PI / AUERBACH_GRID as f64;
    let units: Vec<Vec<f64>> = (0..AUERBACH_GRID).map(|i| unit_at(norm, i as f64 * step)).collect();
    let det = |u: &[f64], v: &[f64]| (u[0] * v[1] - u[1] * v[0]).abs();
    let mut best = (0, 0, -1.0);
    for (i, u) in units.iter().enumerate() {
        for (j, v) in units.iter().enumerate().skip(i + 1) {
            let d = det(u, v);
            if d > best.2 {
                best = (i, j, d);
            }
        }
    }
    let start = [best.0 as f64 * step, best.1 as f64 * step];
    let refined = numerics::minimize_with_edge(
        |a| -det(&unit_at(norm, a[0]), &unit_at(norm, a[1])),
        &start,
        step,
        opt_tol,
        20_000,
    )?;
    let (a, b) = if -refined.value > best.2 {
        (refined.point[0], refined.point[1])
    } else {
        (start[0], start[1])
    };
    let u = unit_at(norm, a);
    let v = unit_at(norm, b);

    let space = SipSpace::new(norm.clone());
    let check_tol = 10.0 * opt_tol;
    let uv = orthogonality(&space, OrthoRelation::Birkhoff, &u, &v, check_tol, opt_tol)?;
    let vu = orthogonality(&space, OrthoRelation::Birkhoff, &v, &u, check_tol, opt_tol)?;
    if !(uv.holds && vu.holds) {
        return Err(Error::Convergence {
            iterations: refined.iterations,
            best_point: vec![a, b],
            best_value: uv.residual.max(vu.residual),
        });
    }
    Ok((u, v))
}

/// Pair of unit vectors of a normed plane orthogonal to each other in the
/// semi-inner-product sense: `[v, u] = 0` and `[u, v] = 0`.
///
/// For each direction `u(θ)` the companion `v(θ)` spans `ker [·, u]`; a root
/// of `θ ↦ [u, v]` is located on a 720-point grid (lowest index first) and
/// refined by bisection.
pub fn sip_conjugate_pair_2d(space: &SipSpace, tol: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if space.dim() != 2 {
        return Err(Error::Unsupported("conjugate pair search needs a plane".into()));
    }
    let norm = &space.norm;
    let pair = |theta: f64| -> (Vec<f64>, Vec<f64>, f64) {
        let u = unit_at(norm, theta);
        let r = [space.sip_unchecked(&[1.0, 0.0], &u), space.sip_unchecked(&[0.0, 1.0], &u)];
        let d = [-r[1], r[0]];
        let nd = norm.eval(&d);
        let v = vec![d[0] / nd, d[1] / nd];
        let g = space.sip_unchecked(&u, &v);
        (u, v, g)
    };
    let step = std::f64::consts::PI / AUERBACH_GRID as f64;
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=AUERBACH_GRID {
        let theta = i as f64 * step;
        let (u, v, g) = pair(theta);
        if g.abs() <= tol {
            return Ok((u, v));
        }
        if let Some((t0, g0)) = prev {
            if g0.signum() != g.signum() {
                let (mut lo, mut hi, mut glo) = (t0, theta, g0);
                for _ in 0..100 {
                    let mid = 0.5 * (lo + hi);
                    let (_, _, gm) = pair(mid);
                    if gm.signum() == glo.signum() {
                        lo = mid;
                        glo = gm;
                    } else {
                        hi = mid;
                    }
                }
                let (u, v, g) = pair(0.5 * (lo + hi));
                if g.abs() <= tol {
                    return Ok((u, v));
                }
            }
        }
        prev = Some((theta, g));
    }
    Err(Error::Convergence { iterations: AUERBACH_GRID, best_point: vec![], best_value: f64::NAN })
}

fn block_basis(space: &SipSpace, tol: f64) -> Result<Vec<Vec<f64>>> {
    match space.dim() {
        1 => {
            let n1 = space.norm.eval(&[1.0]);
            Ok(vec![vec![1.0 / n1]])
        }
        2 => {
            let (u, v) = sip_conjugate_pair_2d(space, tol)?;
            Ok(vec![u, v])
        }
        d => Err(Error::Unsupported(format!("Auerbach search handles blocks of dimension 1 or 2, got {d}"))),
    }
}

/// Auerbach basis of a generalized Minkowski space: an `S`-block basis
/// followed by a `T`-block basis, embedded in `V`.
pub fn minkowski_auerbach(space: &GeneralizedMinkowskiSpace, tol: f64) -> Result<Vec<Vec<f64>>> {
    let s_basis = block_basis(space.s_space(), tol)?;
    let t_basis = block_basis(space.t_space(), tol)?;
    let zs = vec![0.0; space.k()];
    let zt = vec![0.0; space.n() - space.k()];
    let mut out = Vec::with_capacity(space.n());
    for s in &s_basis {
        out.push(space.join(s, &zt)?);
    }
    for t in &t_basis {
        out.push(space.join(&zs, t)?);
    }
    Ok(out)
}

/// Largest `|[w, e_i]|` over sampled `w` in the span of the other basis
/// vectors (unit-bounded coefficients).
pub fn auerbach_residual<P: Product>(product: &P, basis: &[Vec<f64>], seed: Seed, samples: usize) -> Result<f64> {
    let mut rng = seed.rng();
    let mut worst: f64 = 0.0;
    for (i, e) in basis.iter().enumerate() {
        let others: Vec<Vec<f64>> = basis
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, b)| b.clone())
            .collect();
        if others.is_empty() {
            continue;
        }
        for _ in 0..samples {
            let c = numerics::sample_nonzero(&mut rng, others.len(), 1.0);
            let w = linalg::combine(&c, &others);
            worst = worst.max(product.product(&w, e)?.abs());
        }
    }
    Ok(worst)
}

/// Scan pairs of directions of a normed plane for mutual Pythagorean
/// orthogonality of the lines they span. Returns the first pair (lowest
/// indices) whose residual over a `(λ, μ)` grid is at most `1e-6`.
pub fn pythagorean_subspace_scan(norm: &NormSpec, resolution: usize) -> Result<Option<(Vec<f64>, Vec<f64>)>> {
    if norm.dim() != 2 {
        return Err(Error::Unsupported("pythagorean scan needs a plane".into()));
    }
    if resolution < 90 {
        return Err(Error::Domain(format!("resolution must be at least 90, got {resolution}")));
    }
    const GRID: [f64; 8] = [-2.0, -1.0, -0.5, -0.25, 0.25, 0.5, 1.0, 2.0];
    let step = std::f64::consts::PI / resolution as f64;
    let units: Vec<Vec<f64>> = (0..resolution).map(|i| unit_at(norm, i as f64 * step)).collect();
    for (i, u) in units.iter().enumerate() {
        'pair: for v in units.iter().skip(i + 1) {
            for &l in &GRID {
                for &m in &GRID {
                    let d: Vec<f64> = u.iter().zip(v).map(|(a, b)| l * a - m * b).collect();
                    let nd = norm.eval(&d);
                    if (l * l + m * m - nd * nd).abs() > 1e-6 {
                        continue 'pair;
                    }
                }
            }
            return Ok(Some((u.clone(), v.clone())));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::siip::SiipSpace;
    use rand::Rng;

    const TOL: f64 = 1e-9;

    #[test]
    fn relation_names_round_trip() {
        for r in OrthoRelation::ALL {
            assert_eq!(r.name().parse::<OrthoRelation>().unwrap(), r);
        }
        assert!("diminnie".parse::<OrthoRelation>().is_err());
    }

    #[test]
    fn euclidean_axes_are_orthogonal_for_every_relation() {
        let e = SipSpace::euclidean(2).unwrap();
        for r in OrthoRelation::ALL {
            assert!(is_orthogonal(&e, r, &[1.0, 0.0], &[0.0, 1.0], TOL).unwrap(), "{r}");
        }
        let p = orthogonality(&e, OrthoRelation::Pythagorean, &[3.0, 0.0], &[0.0, 4.0], TOL, 1e-7).unwrap();
        assert!(p.holds && p.residual == 0.0);
        assert!(!is_orthogonal(&e, OrthoRelation::SipOrtho, &[1.0, 0.0], &[1.0, 1.0], TOL).unwrap());
    }

    #[test]
    fn max_norm_axes_are_birkhoff_both_ways() {
        let m = SipSpace::max_norm(2).unwrap();
        // oracle: min over λ of max(1, |λ|) on a fine grid
        let oracle = (0..=16_000).map(|i| -8.0 + i as f64 * 1e-3).map(|l: f64| l.abs().max(1.0)).fold(f64::INFINITY, f64::min);
        assert_eq!(oracle, 1.0);
        assert!(is_orthogonal(&m, OrthoRelation::Birkhoff, &[1.0, 0.0], &[0.0, 1.0], 1e-6).unwrap());
        assert!(is_orthogonal(&m, OrthoRelation::Birkhoff, &[0.0, 1.0], &[1.0, 0.0], 1e-6).unwrap());
        assert!(!is_orthogonal(&m, OrthoRelation::Birkhoff, &[1.0, 0.0], &[1.0, 1.0], 1e-6).unwrap());
    }

    #[test]
    fn relations_agree_on_euclidean_samples() {
        let e = SipSpace::euclidean(3).unwrap();
        let mut rng = Seed(4).rng();
        for _ in 0..100 {
            let x = numerics::sample_nonzero(&mut rng, 3, 1.0);
            let mut y = numerics::sample_nonzero(&mut rng, 3, 1.0);
            if rng.gen::<bool>() {
                // project y onto x⊥ so both outcomes occur
                let c = linalg::dot(&x, &y) / linalg::dot(&x, &x);
                y = linalg::axpy(&y, -c, &x);
            }
            let sip = is_orthogonal(&e, OrthoRelation::SipOrtho, &x, &y, TOL).unwrap();
            for r in [OrthoRelation::Roberts, OrthoRelation::Isosceles, OrthoRelation::Pythagorean] {
                assert_eq!(is_orthogonal(&e, r, &x, &y, 1e-8).unwrap(), sip, "{r}");
            }
            assert_eq!(is_orthogonal(&e, OrthoRelation::Birkhoff, &x, &y, 1e-6).unwrap(), sip);
        }
    }

    #[test]
    fn sip_orthogonality_implies_birkhoff() {
        let s = SipSpace::pnorm(3.0, 3).unwrap();
        let mut rng = Seed(10).rng();
        for _ in 0..50 {
            let x = numerics::sample_nonzero(&mut rng, 3, 1.0);
            let y0 = numerics::sample_nonzero(&mut rng, 3, 1.0);
            // remove the component of y0 seen by [·, x]
            let c = s.sip(&y0, &x).unwrap() / s.sip(&x, &x).unwrap();
            let y = linalg::axpy(&y0, -c, &x);
            assert!(s.sip(&y, &x).unwrap().abs() <= TOL);
            let out = orthogonality(&s, OrthoRelation::Birkhoff, &x, &y, 10.0 * 1e-7, 1e-7).unwrap();
            assert!(out.holds, "{out:?}");
        }
    }

    #[test]
    fn sip_and_singer_are_homogeneous() {
        let s = SipSpace::pnorm(4.0, 2).unwrap();
        let x = [1.0, 0.0];
        let y = [0.0, 1.0];
        for (l, m) in [(2.0, -0.5), (-3.0, 4.0)] {
            let (lx, my) = (linalg::scale(&x, l), linalg::scale(&y, m));
            assert!(is_orthogonal(&s, OrthoRelation::SipOrtho, &lx, &my, TOL).unwrap());
            assert!(is_orthogonal(&s, OrthoRelation::Singer, &lx, &my, TOL).unwrap());
        }
        assert!(is_orthogonal(&s, OrthoRelation::Singer, &[0.0, 0.0], &y, TOL).unwrap());
    }

    #[test]
    fn companion_examples() {
        let e = SipSpace::euclidean(3).unwrap();
        let c = orthogonal_companion_basis(&e, &[0.0, 0.0, 1.0], TOL).unwrap();
        assert_eq!(c, vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]);

        let d = SiipSpace::diagonal(&[1.0, -1.0]).unwrap();
        let u = [1.0, 1.0];
        let c = orthogonal_companion_basis(&d, &u, TOL).unwrap();
        assert_eq!(c.len(), 1);
        assert!(linalg::span_residual(&c, &u) <= TOL);

        let r1 = GeneralizedMinkowskiSpace::remark1_space();
        let c = orthogonal_companion_basis(&r1.plus(), &[0.0, 0.0, 1.0], TOL).unwrap();
        assert_eq!(c, vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]);

        assert!(matches!(orthogonal_companion_basis(&d, &[0.0, 0.0], TOL), Err(Error::Domain(_))));
    }

    #[test]
    fn companion_vectors_are_orthogonal_and_independent() {
        let sp = GeneralizedMinkowskiSpace::new(SipSpace::pnorm(3.0, 2).unwrap(), SipSpace::euclidean(1).unwrap());
        for u in numerics::sample_vectors(Seed(3), 3, 50, 1.0) {
            let c = orthogonal_companion_basis(&sp.plus(), &u, TOL).unwrap();
            assert_eq!(c.len(), 2);
            assert_eq!(linalg::rank(&c, 1e-12), 2);
            for w in &c {
                assert!(sp.product_plus(w, &u).unwrap().abs() <= TOL);
            }
        }
    }

    #[test]
    fn orthogonalization_examples() {
        let e = SiipSpace::diagonal(&[1.0, 1.0]).unwrap();
        let std = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert_eq!(regular_orthogonalization(&e, &std, TOL).unwrap(), std);

        let d = SiipSpace::diagonal(&[1.0, -1.0]).unwrap();
        let out = regular_orthogonalization(&d, &[vec![1.0, 0.0], vec![1.0, 1.0]], TOL).unwrap();
        assert_eq!(out, vec![vec![1.0, 0.0], vec![0.0, 1.0]]);

        assert_eq!(
            regular_orthogonalization(&d, &[vec![1.0, 1.0]], TOL),
            Err(Error::NeutralPivot { index: 1 })
        );
        assert!(matches!(
            regular_orthogonalization(&d, &[vec![1.0, 0.0], vec![2.0, 0.0]], TOL),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            regular_orthogonalization(&SiipSpace::example4(), &std, TOL),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn gram_determinant_examples() {
        let e = SipSpace::euclidean(2).unwrap();
        let g = gram_determinant(&e, &[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(g, 1.0);
        let d = SiipSpace::diagonal(&[1.0, -1.0]).unwrap();
        assert_eq!(gram_determinant(&d, &[vec![1.0, 1.0]]).unwrap(), 0.0);
        let d3 = SiipSpace::diagonal(&[1.0, 1.0, -1.0]).unwrap();
        assert_eq!(gram_determinant(&d3, &[vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]]).unwrap(), -1.0);
        // cofactor expansion agrees with LU
        let vs = numerics::sample_vectors(Seed(2), 3, 3, 1.0);
        let g = gram_matrix(&d3, &vs).unwrap();
        assert!((gram_determinant(&d3, &vs).unwrap() - linalg::det(&g)).abs() < 1e-12);
        assert!(gram_determinant(&e, &vec![vec![1.0, 0.0]; 7]).is_err());
    }

    #[test]
    fn auerbach_pairs() {
        let (u, v) = auerbach_basis_2d(&NormSpec::euclidean(2).unwrap(), 1e-7).unwrap();
        assert!(((u[0] * v[1] - u[1] * v[0]).abs() - 1.0).abs() < 1e-9);
        assert!(linalg::dot(&u, &v).abs() < 1e-6);

        let max = NormSpec::max_norm(2).unwrap();
        let (u, v) = auerbach_basis_2d(&max, 1e-7).unwrap();
        // the largest inscribed cross-polytope of the square has its corners as vertices
        assert!(((u[0] * v[1] - u[1] * v[0]).abs() - 2.0).abs() < 1e-5);

        let space = SipSpace::pnorm(3.0, 2).unwrap();
        let (u, v) = auerbach_basis_2d(&space.norm, 1e-7).unwrap();
        for (a, b) in [(&u, &v), (&v, &u)] {
            let o = orthogonality(&space, OrthoRelation::Birkhoff, a, b, 1e-5, 1e-7).unwrap();
            assert!(o.holds, "{o:?}");
        }
    }

    #[test]
    fn minkowski_auerbach_examples() {
        let pe = GeneralizedMinkowskiSpace::pseudo_euclidean(2, 1).unwrap();
        let b = minkowski_auerbach(&pe, TOL).unwrap();
        assert_eq!(b, vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]);

        let r1 = GeneralizedMinkowskiSpace::remark1_space();
        let b = minkowski_auerbach(&r1, TOL).unwrap();
        assert_eq!(b, vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]);
        assert!(auerbach_residual(&r1.plus(), &b, Seed(1), 100).unwrap() <= TOL);
        assert!(auerbach_residual(&r1.minus(), &b, Seed(1), 100).unwrap() <= TOL);

        let big = GeneralizedMinkowskiSpace::pseudo_euclidean(3, 1).unwrap();
        assert!(matches!(minkowski_auerbach(&big, TOL), Err(Error::Unsupported(_))));
    }

    #[test]
    fn pythagorean_scan() {
        let found = pythagorean_subspace_scan(&NormSpec::euclidean(2).unwrap(), 360).unwrap();
        let (u, v) = found.expect("Euclidean plane has perpendicular directions");
        assert!(linalg::dot(&u, &v).abs() < 1e-9);
        assert_eq!(pythagorean_subspace_scan(&NormSpec::max_norm(2).unwrap(), 360).unwrap(), None);
        assert_eq!(pythagorean_subspace_scan(&NormSpec::pnorm(4.0, 2).unwrap(), 360).unwrap(), None);
        assert!(pythagorean_subspace_scan(&NormSpec::euclidean(2).unwrap(), 10).is_err());
    }
}
