//! The upper sheet `H⁺ = {v : [v, v]⁺ = −1, v_n > 0}` of a generalized
//! space-time model, its tangent spaces, the induced Finsler semi-metric and
//! the distance it defines.
//!
//! Points are parametrized by their `S`-coordinates: `s ↦ (s, τ(s))` with
//! `c²τ² = 1 + [s, s]_S`, where `c² = [1, 1]_T` (`c = 1` for the usual
//! Euclidean time axis).

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg;
use crate::minkowski::{GeneralizedMinkowskiSpace, VectorClass};
use crate::norms::NormKind;
use crate::numerics::{self, Seed, Tolerances};
use crate::ortho;

/// A point of `H⁺` given by its `S`-coordinates and last coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct HPoint {
    pub s: Vec<f64>,
    pub tau: f64,
}

impl HPoint {
    /// Full coordinates in `V`.
    pub fn coords(&self) -> Vec<f64> {
        let mut v = self.s.clone();
        v.push(self.tau);
        v
    }
}

/// Tangent vectors at `base`, one per `S`-axis.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentFrame {
    pub base: HPoint,
    pub vectors: Vec<Vec<f64>>,
}

/// Directional derivative of `s ↦ τ(s)` with its finite-difference oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Directional {
    pub value: f64,
    pub finite_difference: f64,
    /// Set when `s` had a max-norm coordinate tie and was nudged.
    pub tie_perturbed: bool,
}

impl Directional {
    pub fn residual(&self) -> f64 {
        (self.value - self.finite_difference).abs()
    }
}

fn require_space_time(space: &GeneralizedMinkowskiSpace) -> Result<()> {
    if space.is_space_time() {
        Ok(())
    } else {
        Err(Error::Unsupported("the hyperboloid needs a space-time model (dim T = 1)".into()))
    }
}

/// `[1, 1]_T`.
fn time_scale(space: &GeneralizedMinkowskiSpace) -> f64 {
    space.t_space().sip_unchecked(&[1.0], &[1.0])
}

fn tau_of(space: &GeneralizedMinkowskiSpace, s: &[f64]) -> f64 {
    ((1.0 + space.s_space().sip_unchecked(s, s)) / time_scale(space)).sqrt()
}

pub fn lift(space: &GeneralizedMinkowskiSpace, s: &[f64]) -> Result<HPoint> {
    require_space_time(space)?;
    crate::error::check_dim(space.k(), s.len())?;
    Ok(HPoint { s: s.to_vec(), tau: tau_of(space, s) })
}

/// Nudge `s` off a max-norm coordinate tie by `class_tol`; reports whether a
/// tie was present.
pub fn break_max_norm_tie(space: &GeneralizedMinkowskiSpace, s: &[f64], class_tol: f64) -> (Vec<f64>, bool) {
    if !matches!(space.s_space().norm.kind(), NormKind::MaxNorm) {
        return (s.to_vec(), false);
    }
    let top = linalg::norm_inf(s);
    let nudge = class_tol * top.max(1.0);
    let tied: Vec<usize> = (0..s.len()).filter(|&i| top - s[i].abs() <= nudge).collect();
    if tied.len() < 2 {
        return (s.to_vec(), false);
    }
    let mut out = s.to_vec();
    for &i in &tied[1..] {
        out[i] -= s[i].signum() * nudge;
    }
    (out, true)
}

/// `d/dλ τ(s + λe)` at `λ = 0` for a unit `e`, by the closed form
/// `[e, s]_S / (c² τ)` and by central differences.
pub fn f_directional(space: &GeneralizedMinkowskiSpace, s: &[f64], e: &[f64], tol: &Tolerances) -> Result<Directional> {
    require_space_time(space)?;
    crate::error::check_dim(space.k(), s.len())?;
    crate::error::check_dim(space.k(), e.len())?;
    let ne = space.s_space().norm.eval(e);
    if (ne - 1.0).abs() > tol.eq_tol {
        return Err(Error::Domain(format!("direction must be a unit vector, has norm {ne}")));
    }
    let (s, tie_perturbed) = break_max_norm_tie(space, s, tol.class_tol);
    let sip = space.s_space().sip_unchecked(e, &s);
    let value = sip / (time_scale(space) * tau_of(space, &s));
    let h = numerics::fd_step(linalg::norm_inf(&s));
    let finite_difference = numerics::central_diff(|l| tau_of(space, &linalg::axpy(&s, l, e)), 0.0, h)?;
    Ok(Directional { value, finite_difference, tie_perturbed })
}

/// Tangent vector at `v` over the `S`-direction `d`.
fn tangent_over(space: &GeneralizedMinkowskiSpace, v: &HPoint, d: &[f64]) -> Vec<f64> {
    let rise = space.s_space().sip_unchecked(d, &v.s) / (time_scale(space) * v.tau);
    let mut u = d.to_vec();
    u.push(rise);
    u
}

pub fn tangent_frame(space: &GeneralizedMinkowskiSpace, v: &HPoint, eq_tol: f64) -> Result<TangentFrame> {
    require_space_time(space)?;
    let vc = v.coords();
    let vectors: Vec<Vec<f64>> = (0..space.k())
        .map(|j| tangent_over(space, v, &linalg::unit(space.k(), j)))
        .collect();
    for u in &vectors {
        let residual = space.product_plus(u, &vc)?.abs();
        if residual > 10.0 * eq_tol {
            return Err(Error::Tangent { residual });
        }
    }
    Ok(TangentFrame { base: v.clone(), vectors })
}

/// The Finsler semi-metric `[u₁, u₂]⁺` on the tangent space at `v`.
///
/// Evaluated both directly and through the `S`-coordinate expression
/// `[s₁, s₂] − [s₁, s_v][s₂, s_v] / (1 + [s_v, s_v])`; the two must agree.
pub fn ds2(space: &GeneralizedMinkowskiSpace, v: &HPoint, u1: &[f64], u2: &[f64], tol: &Tolerances) -> Result<f64> {
    require_space_time(space)?;
    let vc = v.coords();
    for u in [u1, u2] {
        let residual = space.product_plus(u, &vc)?.abs();
        if residual > 10.0 * tol.eq_tol * linalg::norm_inf(u).max(1.0) {
            return Err(Error::Tangent { residual });
        }
    }
    let direct = space.product_plus(u1, u2)?;
    let sp = space.s_space();
    let k = space.k();
    let (s1, s2) = (&u1[..k], &u2[..k]);
    let q = 1.0 + sp.sip_unchecked(&v.s, &v.s);
    let formula = sp.sip_unchecked(s1, s2) - sp.sip_unchecked(s1, &v.s) * sp.sip_unchecked(s2, &v.s) / q;
    if (direct - formula).abs() > tol.fd_tol * direct.abs().max(1.0) {
        return Err(Error::Numerical(format!(
            "semi-metric forms disagree: direct {direct}, formula {formula}"
        )));
    }
    Ok(direct)
}

/// A curve on `H⁺` through lifted nodes, linear in `S`-coordinates between
/// consecutive nodes, over the uniform parameter grid `t_i = i / m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    nodes: Vec<Vec<f64>>,
}

impl Path {
    /// Path through the given `S`-coordinates; needs at least three nodes.
    pub fn new(space: &GeneralizedMinkowskiSpace, nodes: Vec<Vec<f64>>) -> Result<Self> {
        require_space_time(space)?;
        if nodes.len() < 3 {
            return Err(Error::Domain(format!("a path needs at least 3 nodes, got {}", nodes.len())));
        }
        for n in &nodes {
            crate::error::check_dim(space.k(), n.len())?;
            if n.iter().any(|x| !x.is_finite()) {
                return Err(Error::Numerical(format!("non-finite path node {n:?}")));
            }
        }
        Ok(Self { nodes })
    }

    pub fn from_points(space: &GeneralizedMinkowskiSpace, points: &[HPoint]) -> Result<Self> {
        Self::new(space, points.iter().map(|p| p.s.clone()).collect())
    }

    /// `m` segments with nodes `curve(i / m)`.
    pub fn sample<F: Fn(f64) -> Vec<f64>>(space: &GeneralizedMinkowskiSpace, curve: F, m: usize) -> Result<Self> {
        Self::new(space, (0..=m).map(|i| curve(i as f64 / m as f64)).collect())
    }

    /// Linear interpolation in `S`-coordinates with `m` segments.
    pub fn straight(space: &GeneralizedMinkowskiSpace, a: &HPoint, b: &HPoint, m: usize) -> Result<Self> {
        let d = linalg::sub(&b.s, &a.s);
        Self::sample(space, |t| linalg::axpy(&a.s, t, &d), m)
    }

    pub fn nodes(&self) -> &[Vec<f64>] {
        &self.nodes
    }

    pub fn segments(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Rows `(t, s…, τ)` of the lifted nodes.
    pub fn rows(&self, space: &GeneralizedMinkowskiSpace) -> Vec<Vec<f64>> {
        let m = self.segments() as f64;
        self.nodes
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mut row = vec![i as f64 / m];
                row.extend_from_slice(s);
                row.push(tau_of(space, s));
                row
            })
            .collect()
    }
}

/// Length of the lifted segment `u ↦ (a + uΔ, τ(a + uΔ))`, `u ∈ [0, 1]`.
fn segment_length(space: &GeneralizedMinkowskiSpace, a: &[f64], b: &[f64], quad_m: usize, index: usize, m: usize) -> Result<f64> {
    let d = linalg::sub(b, a);
    let sp = space.s_space();
    let dd = sp.sip_unchecked(&d, &d);
    if dd == 0.0 {
        return Ok(0.0);
    }
    let c2 = time_scale(space);
    let h = numerics::fd_step(linalg::norm_inf(a).max(linalg::norm_inf(b)));
    let floor = 1e-9 * dd.max(1.0);
    numerics::integrate_try(
        |u| {
            let rise = numerics::central_diff(|w| tau_of(space, &linalg::axpy(a, w, &d)), u, h)?;
            let radicand = dd - c2 * rise * rise;
            if radicand < -floor {
                return Err(Error::Path { radicand, t: (index as f64 + u) / m as f64 });
            }
            Ok(radicand.max(0.0).sqrt())
        },
        0.0,
        1.0,
        quad_m,
    )
}

/// Segment length with the slope of `τ` in closed form, `[Δ, s]_S / (c² τ)`,
/// and Gauss–Legendre quadrature; smooth in the endpoints, for use inside
/// the optimizer.
fn segment_energy_length(space: &GeneralizedMinkowskiSpace, a: &[f64], b: &[f64]) -> f64 {
    const NODES: [(f64, f64); 3] = [
        (0.112_701_665_379_258_3, 5.0 / 18.0),
        (0.5, 8.0 / 18.0),
        (0.887_298_334_620_741_7, 5.0 / 18.0),
    ];
    let d = linalg::sub(b, a);
    let sp = space.s_space();
    let dd = sp.sip_unchecked(&d, &d);
    let c2 = time_scale(space);
    NODES
        .iter()
        .map(|&(u, w)| {
            let s = linalg::axpy(a, u, &d);
            let rise = sp.sip_unchecked(&d, &s) / (c2 * tau_of(space, &s));
            w * (dd - c2 * rise * rise).max(0.0).sqrt()
        })
        .sum()
}

/// `∫ √[ċ, ċ]⁺ dt`, Simpson with `quad_m` panels on each segment.
pub fn path_length(space: &GeneralizedMinkowskiSpace, path: &Path, quad_m: usize) -> Result<f64> {
    let m = path.segments();
    path.nodes
        .windows(2)
        .enumerate()
        .map(|(i, w)| segment_length(space, &w[0], &w[1], quad_m, i, m))
        .sum()
}

const LENGTH_QUAD: usize = 16;

/// Outcome of a geodesic computation.
#[derive(Debug, Clone, PartialEq)]
pub struct Geodesic {
    pub distance: f64,
    pub path: Path,
    pub iterations: usize,
}

/// Minkowski–Finsler distance between two points of `H⁺`, as the length of
/// the discrete path with `m` segments minimizing `Σ Lᵢ²` over the interior
/// nodes, starting from linear interpolation in `S`.
///
/// Minimizers of `Σ Lᵢ²` are length minimizers with equally long segments,
/// which removes the reparametrization freedom of the length functional.
pub fn geodesic(space: &GeneralizedMinkowskiSpace, a: &HPoint, b: &HPoint, m: usize, opt_tol: f64) -> Result<Geodesic> {
    require_space_time(space)?;
    if m < 2 {
        return Err(Error::Domain(format!("need at least 2 segments, got {m}")));
    }
    // a fixed endpoint order makes the result exactly symmetric
    let swapped = a.s.iter().zip(&b.s).find(|(x, y)| x != y).is_some_and(|(x, y)| x > y);
    let (a, b) = if swapped { (b, a) } else { (a, b) };
    let k = space.k();
    let start = Path::straight(space, a, b, m)?;
    if a.s == b.s {
        return Ok(Geodesic { distance: 0.0, path: start, iterations: 0 });
    }
    let x0: Vec<f64> = start.nodes[1..m].concat();

    let node = |x: &[f64], i: usize| -> Vec<f64> {
        if i == 0 {
            a.s.clone()
        } else if i == m {
            b.s.clone()
        } else {
            x[(i - 1) * k..i * k].to_vec()
        }
    };
    let seg2 = |x: &[f64], i: usize| -> Result<f64> {
        let l = segment_energy_length(space, &node(x, i), &node(x, i + 1));
        Ok(l * l)
    };
    let energy = |x: &[f64]| -> Result<f64> { (0..m).map(|i| seg2(x, i)).sum::<Result<f64>>().map(|e| e * m as f64) };
    let gradient = |x: &[f64]| -> Result<Vec<f64>> {
        let mut g = vec![0.0; x.len()];
        let mut probe = x.to_vec();
        for (j, gj) in g.iter_mut().enumerate() {
            let i = j / k + 1;
            let h = numerics::fd_step(x[j].abs());
            let local = |p: &[f64]| -> Result<f64> { Ok(seg2(p, i - 1)? + seg2(p, i)?) };
            probe[j] = x[j] + h;
            let up = local(&probe)?;
            probe[j] = x[j] - h;
            let down = local(&probe)?;
            probe[j] = x[j];
            *gj = m as f64 * (up - down) / (2.0 * h);
        }
        Ok(g)
    };
    let best = numerics::minimize_smooth(energy, gradient, &x0, opt_tol, 5_000)?;
    let mut nodes = vec![a.s.clone()];
    nodes.extend(best.point.chunks(k).map(|c| c.to_vec()));
    nodes.push(b.s.clone());
    if swapped {
        nodes.reverse();
    }
    let path = Path::new(space, nodes)?;
    let distance = path_length(space, &path, LENGTH_QUAD)?;
    Ok(Geodesic { distance, path, iterations: best.iterations })
}

pub fn geodesic_distance(space: &GeneralizedMinkowskiSpace, a: &HPoint, b: &HPoint, m: usize, opt_tol: f64) -> Result<f64> {
    Ok(geodesic(space, a, b, m, opt_tol)?.distance)
}

/// `|[a, b]⁺ + cosh d(a, b)|`.
pub fn cosh_residual(space: &GeneralizedMinkowskiSpace, a: &HPoint, b: &HPoint, m: usize, opt_tol: f64) -> Result<f64> {
    let d = geodesic_distance(space, a, b, m, opt_tol)?;
    Ok((space.product_plus(&a.coords(), &b.coords())? + d.cosh()).abs())
}

/// `arccosh(−[a, b]⁺)`, the hyperbolic distance in the pseudo-Euclidean case.
pub fn hyperbolic_distance(space: &GeneralizedMinkowskiSpace, a: &HPoint, b: &HPoint) -> Result<f64> {
    let c = -space.product_plus(&a.coords(), &b.coords())?;
    Ok(c.max(1.0).acosh())
}

/// Seeded pair of points of `H⁺` whose hyperbolic distance is at most
/// `max_distance`.
pub fn sample_pair<R: Rng>(space: &GeneralizedMinkowskiSpace, rng: &mut R, max_distance: f64) -> Result<(HPoint, HPoint)> {
    let radius = max_distance.sinh() / (space.k() as f64).sqrt();
    loop {
        let a = lift(space, &numerics::sample_vectors_from(rng, space.k(), 1, radius)[0])?;
        let b = lift(space, &numerics::sample_vectors_from(rng, space.k(), 1, radius)[0])?;
        if hyperbolic_distance(space, &a, &b)? <= max_distance {
            return Ok((a, b));
        }
    }
}

/// Worst residuals of the tangent-space checks over sampled points.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TangentReport {
    pub points: usize,
    /// Closed-form directional derivative against its finite difference.
    pub derivative: f64,
    /// `|[u, v]⁺|` over frame vectors.
    pub orthogonality: f64,
    /// Least-squares distance of companion vectors from the frame's span.
    pub companion_span: f64,
    /// Frame or companion vectors not classified space-like.
    pub not_space_like: usize,
    /// Smallest `[w, w]⁺ / [w, w]⁻` over companion vectors.
    pub min_square_ratio: f64,
    pub ties_perturbed: usize,
    pub witness: Vec<Vec<f64>>,
}

/// Directional derivatives, tangent frames and positivity of tangent
/// spaces at `points` seeded points of `H⁺`.
pub fn tangent_check(space: &GeneralizedMinkowskiSpace, seed: Seed, points: usize, tol: &Tolerances) -> Result<TangentReport> {
    require_space_time(space)?;
    let mut rng = seed.rng();
    let k = space.k();
    let mut rep = TangentReport { points, min_square_ratio: f64::INFINITY, ..Default::default() };
    let is_max = matches!(space.s_space().norm.kind(), NormKind::MaxNorm);
    for _ in 0..points {
        let mut s = numerics::sample_nonzero(&mut rng, k, 2.0);
        if is_max {
            // keep the maximal coordinate clear of the kink for the difference quotient
            let j = crate::norms::max_index(&s);
            let second = (0..k).filter(|&i| i != j).map(|i| s[i].abs()).fold(0.0, f64::max);
            if s[j].abs() - second < 1e-3 {
                s[j] += s[j].signum() * 1e-2;
            }
        }
        let mut e = numerics::sample_nonzero(&mut rng, k, 1.0);
        let ne = space.s_space().norm.eval(&e);
        e = linalg::scale(&e, 1.0 / ne);
        let d = f_directional(space, &s, &e, tol)?;
        if d.tie_perturbed {
            rep.ties_perturbed += 1;
        }
        if d.residual() > rep.derivative {
            rep.derivative = d.residual();
            rep.witness = vec![s.clone(), e.clone()];
        }

        let v = lift(space, &s)?;
        let vc = v.coords();
        let frame = tangent_frame(space, &v, tol.eq_tol)?;
        for u in &frame.vectors {
            rep.orthogonality = rep.orthogonality.max(space.product_plus(u, &vc)?.abs());
            if space.classify(u, tol.class_tol)? != VectorClass::SpaceLike {
                rep.not_space_like += 1;
            }
        }
        let companion = ortho::orthogonal_companion_basis(&space.plus(), &vc, tol.eq_tol)?;
        for _ in 0..4 {
            let c = numerics::sample_nonzero(&mut rng, companion.len(), 1.0);
            let w = linalg::combine(&c, &companion);
            rep.companion_span = rep.companion_span.max(linalg::span_residual(&frame.vectors, &w));
            let ratio = space.product_plus(&w, &w)? / space.product_minus(&w, &w)?;
            rep.min_square_ratio = rep.min_square_ratio.min(ratio);
            if space.classify(&w, tol.class_tol)? != VectorClass::SpaceLike {
                rep.not_space_like += 1;
            }
        }
    }
    Ok(rep)
}
