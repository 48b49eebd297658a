//! Finite differences, Simpson quadrature, simplex descent and seeded sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg;

/// Tolerance bundle threaded through checks and solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Equality residuals.
    pub eq_tol: f64,
    /// Finite-difference cross-checks.
    pub fd_tol: f64,
    /// Minimizer convergence (simplex diameter).
    pub opt_tol: f64,
    /// Light-like classification.
    pub class_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eq_tol: 1e-9,
            fd_tol: 1e-5,
            opt_tol: 1e-7,
            class_tol: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let all = [self.eq_tol, self.fd_tol, self.opt_tol, self.class_tol];
        if all.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(Error::Domain("tolerances must be finite and positive".into()));
        }
        if self.fd_tol <= self.eq_tol {
            return Err(Error::Domain("fd_tol must exceed eq_tol".into()));
        }
        Ok(())
    }
}

/// Seed for every pseudo-random stream in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seed(pub u64);

impl Seed {
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Independent stream keyed by `tag`, so that suites sharing one seed do
    /// not consume each other's samples.
    pub fn derive(self, tag: u64) -> Seed {
        // splitmix64 finalizer
        let mut z = self.0 ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        Seed(z ^ (z >> 31))
    }
}

/// First-difference step `max(1, scale) * eps^(1/3)`.
pub fn fd_step(scale: f64) -> f64 {
    scale.max(1.0) * f64::EPSILON.cbrt()
}

/// Second-difference step `max(1, scale) * eps^(1/4)`.
pub fn fd2_step(scale: f64) -> f64 {
    scale.max(1.0) * f64::EPSILON.powf(0.25)
}

fn finite(v: f64, at: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Numerical(format!("f({at}) = {v}")))
    }
}

pub fn central_diff<F: Fn(f64) -> f64>(f: F, t: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::Domain(format!("step must be positive, got {h}")));
    }
    let fp = finite(f(t + h), t + h)?;
    let fm = finite(f(t - h), t - h)?;
    Ok((fp - fm) / (2.0 * h))
}

/// Fallible variant of [`central_diff`] for nested differences.
pub fn central_diff_try<F: Fn(f64) -> Result<f64>>(f: F, t: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::Domain(format!("step must be positive, got {h}")));
    }
    let fp = finite(f(t + h)?, t + h)?;
    let fm = finite(f(t - h)?, t - h)?;
    Ok((fp - fm) / (2.0 * h))
}

pub fn second_diff<F: Fn(f64) -> f64>(f: F, t: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::Domain(format!("step must be positive, got {h}")));
    }
    let fp = finite(f(t + h), t + h)?;
    let f0 = finite(f(t), t)?;
    let fm = finite(f(t - h), t - h)?;
    Ok((fp - 2.0 * f0 + fm) / (h * h))
}

/// Composite Simpson rule on `m` (even) uniform panels.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, m: usize) -> Result<f64> {
    integrate_try(|t| Ok(f(t)), a, b, m)
}

pub fn integrate_try<F: Fn(f64) -> Result<f64>>(f: F, a: f64, b: f64, m: usize) -> Result<f64> {
    if m < 2 || m % 2 != 0 {
        return Err(Error::Domain(format!("Simpson panel count must be even and >= 2, got {m}")));
    }
    let h = (b - a) / m as f64;
    let mut acc = 0.0;
    for i in 0..=m {
        let t = if i == m { b } else { a + i as f64 * h };
        let w = if i == 0 || i == m {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc += w * finite(f(t)?, t)?;
    }
    Ok(acc * h / 3.0)
}

/// Outcome of [`minimize`].
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub point: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// Deterministic Nelder–Mead simplex descent.
///
/// Terminates once the simplex diameter (max distance from the best vertex)
/// drops below `opt_tol`. The initial simplex has edge `0.1 * max(1, |x0|)`
/// along each coordinate axis.
pub fn minimize<F: Fn(&[f64]) -> f64>(
    f: F,
    x0: &[f64],
    opt_tol: f64,
    max_iter: usize,
) -> Result<Minimum> {
    let edge = 0.1 * linalg::norm2(x0).max(1.0);
    minimize_with_edge(f, x0, edge, opt_tol, max_iter)
}

pub fn minimize_with_edge<F: Fn(&[f64]) -> f64>(
    f: F,
    x0: &[f64],
    edge: f64,
    opt_tol: f64,
    max_iter: usize,
) -> Result<Minimum> {
    let d = x0.len();
    if d == 0 {
        return Err(Error::Domain("cannot minimize over a zero-dimensional domain".into()));
    }
    let eval = |x: &[f64]| -> Result<f64> {
        let v = f(x);
        if v.is_nan() {
            Err(Error::Numerical(format!("objective is NaN at {x:?}")))
        } else {
            Ok(v)
        }
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    simplex.push((x0.to_vec(), eval(x0)?));
    for i in 0..d {
        let mut x = x0.to_vec();
        x[i] += edge;
        let v = eval(&x)?;
        simplex.push((x, v));
    }

    let diameter = |s: &[(Vec<f64>, f64)]| {
        s[1..]
            .iter()
            .map(|(x, _)| linalg::norm2(&linalg::sub(x, &s[0].0)))
            .fold(0.0, f64::max)
    };

    for iter in 0..max_iter {
        // stable sort keeps the lower index first on ties
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if diameter(&simplex) < opt_tol {
            let (point, value) = simplex.swap_remove(0);
            return Ok(Minimum { point, value, iterations: iter });
        }

        let worst = d;
        let mut centroid = vec![0.0; d];
        for (x, _) in &simplex[..worst] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / d as f64;
            }
        }
        let toward = |coef: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[worst].0)
                .map(|(c, w)| c + coef * (c - w))
                .collect()
        };

        let xr = toward(REFLECT);
        let fr = eval(&xr)?;
        let f_best = simplex[0].1;
        let f_second = simplex[worst - 1].1;
        let f_worst = simplex[worst].1;

        if fr < f_best {
            let xe = toward(EXPAND);
            let fe = eval(&xe)?;
            simplex[worst] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < f_second {
            simplex[worst] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < f_worst {
            let xc = toward(CONTRACT * REFLECT);
            let fc = eval(&xc)?;
            (xc, fc)
        } else {
            let xc = toward(-CONTRACT);
            let fc = eval(&xc)?;
            (xc, fc)
        };
        if fc <= fr.min(f_worst) {
            simplex[worst] = (xc, fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = best
                .iter()
                .zip(&vertex.0)
                .map(|(b, v)| b + SHRINK * (v - b))
                .collect();
            let v = eval(&x)?;
            *vertex = (x, v);
        }
    }

    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (best_point, best_value) = simplex.swap_remove(0);
    Err(Error::Convergence {
        iterations: max_iter,
        best_point,
        best_value,
    })
}

/// Limited-memory BFGS with Armijo backtracking, for smooth objectives with
/// a caller-supplied gradient.
///
/// Stops when the largest gradient component is at most `grad_tol`, when the
/// objective stalls at rounding level for several consecutive steps, or when
/// no descent step exists even along the steepest direction. Exhausting
/// `max_iter` is an error.
pub fn minimize_smooth<F, G>(f: F, grad: G, x0: &[f64], grad_tol: f64, max_iter: usize) -> Result<Minimum>
where
    F: Fn(&[f64]) -> Result<f64>,
    G: Fn(&[f64]) -> Result<Vec<f64>>,
{
    const MEMORY: usize = 8;
    const ARMIJO: f64 = 1e-4;
    let mut x = x0.to_vec();
    let mut fx = f(&x)?;
    let mut g = grad(&x)?;
    let mut history: std::collections::VecDeque<(Vec<f64>, Vec<f64>, f64)> = Default::default();
    let mut stalled = 0;
    for iter in 0..max_iter {
        if stalled >= 3 {
            return Ok(Minimum { point: x, value: fx, iterations: iter });
        }
        if linalg::norm_inf(&g) <= grad_tol {
            return Ok(Minimum { point: x, value: fx, iterations: iter });
        }
        let mut q = g.clone();
        let mut alphas = Vec::with_capacity(history.len());
        for (s, y, rho) in history.iter().rev() {
            let a = rho * linalg::dot(s, &q);
            q = linalg::axpy(&q, -a, y);
            alphas.push(a);
        }
        if let Some((s, y, _)) = history.back() {
            q = linalg::scale(&q, linalg::dot(s, y) / linalg::dot(y, y));
        } else {
            q = linalg::scale(&q, 1.0 / linalg::norm2(&g).max(1.0));
        }
        for ((s, y, rho), a) in history.iter().zip(alphas.iter().rev()) {
            let b = rho * linalg::dot(y, &q);
            q = linalg::axpy(&q, a - b, s);
        }
        let mut dir = linalg::scale(&q, -1.0);
        let mut slope = linalg::dot(&dir, &g);
        if slope >= 0.0 {
            history.clear();
            dir = linalg::scale(&g, -1.0 / linalg::norm2(&g).max(1.0));
            slope = linalg::dot(&dir, &g);
        }

        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let xn = linalg::axpy(&x, step, &dir);
            let fxn = f(&xn)?;
            if fxn <= fx + ARMIJO * step * slope {
                accepted = Some((xn, fxn));
                break;
            }
            step *= 0.5;
        }
        let Some((xn, fxn)) = accepted else {
            if history.is_empty() {
                return Ok(Minimum { point: x, value: fx, iterations: iter });
            }
            history.clear();
            continue;
        };
        let gn = grad(&xn)?;
        let s = linalg::sub(&xn, &x);
        let y = linalg::sub(&gn, &g);
        let sy = linalg::dot(&s, &y);
        if sy > 1e-12 * linalg::norm2(&s) * linalg::norm2(&y) {
            if history.len() == MEMORY {
                history.pop_front();
            }
            history.push_back((s, y, 1.0 / sy));
        }
        stalled = if fx - fxn <= 4.0 * f64::EPSILON * fx.abs().max(1.0) { stalled + 1 } else { 0 };
        x = xn;
        fx = fxn;
        g = gn;
    }
    Err(Error::Convergence { iterations: max_iter, best_point: x, best_value: fx })
}

/// Minimize a convex function of one variable on `[lo, hi]`: grid scan, then
/// simplex refinement from the best grid node. Returns `(argmin, min)`.
pub fn minimize_scalar_bracketed<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    grid: usize,
    opt_tol: f64,
) -> Result<(f64, f64)> {
    let grid = grid.max(2);
    let step = (hi - lo) / (grid - 1) as f64;
    let mut best = (lo, f(lo));
    for i in 1..grid {
        let t = lo + i as f64 * step;
        let v = f(t);
        if v < best.1 {
            best = (t, v);
        }
    }
    let refined = minimize_with_edge(|x| f(x[0]), &[best.0], step, opt_tol, 10_000)?;
    if refined.value < best.1 {
        Ok((refined.point[0], refined.value))
    } else {
        Ok(best)
    }
}

/// Deterministic vectors with coordinates uniform in `[-radius, radius]`;
/// the zero vector is never returned.
pub fn sample_vectors(seed: Seed, n: usize, count: usize, radius: f64) -> Vec<Vec<f64>> {
    let mut rng = seed.rng();
    sample_vectors_from(&mut rng, n, count, radius)
}

pub fn sample_vectors_from<R: Rng>(rng: &mut R, n: usize, count: usize, radius: f64) -> Vec<Vec<f64>> {
    (0..count).map(|_| sample_nonzero(rng, n, radius)).collect()
}

pub fn sample_nonzero<R: Rng>(rng: &mut R, n: usize, radius: f64) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-radius..=radius)).collect();
        if !linalg::is_zero(&v) {
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn central_diff_examples() {
        assert!((central_diff(|t| t * t, 1.0, 1e-5).unwrap() - 2.0).abs() <= 1e-9);
        assert_eq!(central_diff(f64::abs, 0.0, 1e-5).unwrap(), 0.0);
        assert!((central_diff(f64::exp, 0.0, 1e-5).unwrap() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn central_diff_rejects_non_finite() {
        let r = central_diff(|t| 1.0 / t, 1e-6, 1e-6);
        assert!(matches!(r, Err(Error::Numerical(_))));
        assert!(central_diff(|t| t, 0.0, 0.0).is_err());
    }

    #[test]
    fn second_diff_examples() {
        assert!((second_diff(|t| t * t, 0.0, 1e-4).unwrap() - 2.0).abs() <= 1e-6);
        assert!(second_diff(|t| t, 3.7, 1e-4).unwrap().abs() <= 1e-9);
        assert!((second_diff(|t| t.powi(4), 1.0, 1e-4).unwrap() - 12.0).abs() <= 1e-4);
    }

    #[test]
    fn simpson_examples() {
        assert_eq!(integrate(|_| 1.0, 0.0, 1.0, 4).unwrap(), 1.0);
        assert!((integrate(|t| t * t, 0.0, 1.0, 8).unwrap() - 1.0 / 3.0).abs() <= 1e-12);
        let sinh1 = 1f64.sinh();
        assert!((integrate(f64::cosh, 0.0, 1.0, 64).unwrap() - sinh1).abs() <= 1e-8);
    }

    #[test]
    fn simpson_rejects_odd_panels() {
        assert!(integrate(|t| t, 0.0, 1.0, 3).is_err());
        assert!(integrate(|t| t, 0.0, 1.0, 0).is_err());
        assert!(integrate(|t| 1.0 / t, 0.0, 1.0, 4).is_err());
    }

    #[test]
    fn minimize_examples() {
        let m = minimize(|x| x[0] * x[0] + x[1] * x[1], &[1.0, 1.0], 1e-7, 10_000).unwrap();
        assert!(m.value.abs() <= 1e-10);

        let m = minimize(
            |x| (x[0] - 3.0).powi(2) + (x[1] + 2.0).powi(2),
            &[0.0, 0.0],
            1e-7,
            10_000,
        )
        .unwrap();
        assert!((m.point[0] - 3.0).abs() <= 1e-5 && (m.point[1] + 2.0).abs() <= 1e-5);
    }

    #[test]
    fn minimize_smooth_on_rosenbrock() {
        let f = |x: &[f64]| Ok((1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2));
        let g = |x: &[f64]| {
            Ok(vec![
                -2.0 * (1.0 - x[0]) - 400.0 * x[0] * (x[1] - x[0] * x[0]),
                200.0 * (x[1] - x[0] * x[0]),
            ])
        };
        let m = minimize_smooth(f, g, &[-1.2, 1.0], 1e-10, 1000).unwrap();
        assert!((m.point[0] - 1.0).abs() < 1e-8 && (m.point[1] - 1.0).abs() < 1e-8);
        let capped = minimize_smooth(f, g, &[-1.2, 1.0], 1e-10, 3);
        assert!(matches!(capped, Err(Error::Convergence { iterations: 3, .. })));
    }

    #[test]
    fn minimize_max_norm_line_against_grid() {
        let f = |l: f64| (1.0 + l).abs().max(l.abs());
        // exhaustive grid oracle over [-2, 2]
        let (mut arg, mut val) = (0.0, f64::INFINITY);
        for i in 0..=400_000 {
            let l = -2.0 + i as f64 * 1e-5;
            if f(l) < val {
                val = f(l);
                arg = l;
            }
        }
        assert!((val - 0.5).abs() < 1e-9 && (arg + 0.5).abs() < 1e-5);

        let m = minimize(|x| f(x[0]), &[0.0], 1e-7, 10_000).unwrap();
        assert!((m.value - val).abs() <= 1e-7);
        assert!((m.point[0] - arg).abs() <= 1e-5);
    }

    #[test]
    fn minimize_reports_best_point_on_iteration_cap() {
        match minimize(|x| (x[0] - 5.0).powi(2), &[0.0], 1e-12, 3) {
            Err(Error::Convergence { best_point, iterations, .. }) => {
                assert_eq!(iterations, 3);
                assert_eq!(best_point.len(), 1);
            }
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn sampling_is_deterministic_and_bounded() {
        let a = sample_vectors(Seed(1), 2, 3, 1.0);
        let b = sample_vectors(Seed(1), 2, 3, 1.0);
        assert_eq!(a, b);
        assert!(a.iter().all(|v| linalg::norm_inf(v) <= 1.0 && !linalg::is_zero(v)));
        let c = sample_vectors(Seed(2), 2, 3, 1.0);
        assert_ne!(a, c);
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerances::default().validate().is_ok());
        let bad = Tolerances { fd_tol: 1e-12, ..Tolerances::default() };
        assert!(bad.validate().is_err());
        let neg = Tolerances { eq_tol: -1.0, ..Tolerances::default() };
        assert!(neg.validate().is_err());
    }
}
