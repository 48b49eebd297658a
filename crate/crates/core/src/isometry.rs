//! Linear maps of generalized Minkowski spaces: sampled isometry checks,
//! Lorentz boosts and distance preservation on `H⁺`.

use crate::error::{check_dim, Error, Result};
use crate::hyperboloid::{self, HPoint};
use crate::linalg;
use crate::minkowski::{GeneralizedMinkowskiSpace, VectorClass};
use crate::norms::{NormKind, SipSpace};
use crate::numerics::{self, Seed};

/// Square matrix acting on column vectors; `rows[i][j]` is entry `(i, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    rows: Vec<Vec<f64>>,
}

impl LinearMap {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Domain("empty matrix".into()));
        }
        for r in &rows {
            check_dim(n, r.len())?;
            if r.iter().any(|x| !x.is_finite()) {
                return Err(Error::Numerical("matrix has non-finite entries".into()));
            }
        }
        Ok(Self { rows })
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: (0..n).map(|i| linalg::unit(n, i)).collect() }
    }

    /// Rotation by `angle` in the coordinate plane `(i, j)`.
    pub fn rotation(n: usize, i: usize, j: usize, angle: f64) -> Result<Self> {
        if i >= n || j >= n || i == j {
            return Err(Error::Domain(format!("invalid rotation plane ({i}, {j}) in dimension {n}")));
        }
        let mut m = Self::identity(n);
        let (s, c) = angle.sin_cos();
        m.rows[i][i] = c;
        m.rows[i][j] = -s;
        m.rows[j][i] = s;
        m.rows[j][j] = c;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim(), v.len())?;
        Ok(self.rows.iter().map(|r| linalg::dot(r, v)).collect())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        check_dim(self.dim(), other.dim())?;
        let n = self.dim();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.rows[i][k] * other.rows[k][j]).sum()).collect())
            .collect();
        Ok(LinearMap { rows })
    }

    pub fn transpose(&self) -> LinearMap {
        let n = self.dim();
        LinearMap { rows: (0..n).map(|j| (0..n).map(|i| self.rows[i][j]).collect()).collect() }
    }

    pub fn det(&self) -> f64 {
        linalg::det(&self.rows)
    }

    /// Largest entrywise difference.
    pub fn distance(&self, other: &LinearMap) -> f64 {
        self.rows
            .iter()
            .flatten()
            .zip(other.rows.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Sampled isometry residuals of a linear map.
#[derive(Debug, Clone, PartialEq)]
pub struct IsometryReport {
    /// `max |[Fv, Fw]⁺ − [v, w]⁺|`.
    pub product: f64,
    /// `max |[Fv, JFw]⁻ − [v, Jw]⁻|`.
    pub adjoint: f64,
    /// `|[Fe_n, Fe_n]⁺ + 1|`.
    pub apex: f64,
    /// `Fe_n` is time-like with positive last coordinate.
    pub apex_upper: bool,
    /// Both blocks smooth and strictly convex.
    pub within_hypotheses: bool,
    pub witness: Vec<Vec<f64>>,
}

impl IsometryReport {
    pub fn preserves_product(&self, tol: f64) -> bool {
        self.product <= tol && self.adjoint <= tol
    }

    pub fn preserves_sheet(&self, tol: f64) -> bool {
        self.apex_upper && self.apex <= tol
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.preserves_product(tol) && self.preserves_sheet(tol)
    }
}

fn smooth_and_strictly_convex(space: &SipSpace) -> bool {
    matches!(space.norm.kind(), NormKind::Euclidean | NormKind::PNorm(_))
}

pub fn isometry_report(
    space: &GeneralizedMinkowskiSpace,
    map: &LinearMap,
    seed: Seed,
    trials: usize,
    eq_tol: f64,
) -> Result<IsometryReport> {
    if !space.is_space_time() {
        return Err(Error::Unsupported("isometries of H⁺ need a space-time model (dim T = 1)".into()));
    }
    check_dim(space.n(), map.dim())?;
    let det = map.det();
    if det.abs() <= eq_tol {
        return Err(Error::SingularMap { det });
    }
    let n = space.n();
    let mut rng = seed.rng();
    let mut rep = IsometryReport {
        product: 0.0,
        adjoint: 0.0,
        apex: 0.0,
        apex_upper: false,
        within_hypotheses: smooth_and_strictly_convex(space.s_space()) && smooth_and_strictly_convex(space.t_space()),
        witness: Vec::new(),
    };
    for _ in 0..trials {
        let v = numerics::sample_nonzero(&mut rng, n, 1.0);
        let w = numerics::sample_nonzero(&mut rng, n, 1.0);
        let (fv, fw) = (map.apply(&v)?, map.apply(&w)?);
        let a = (space.product_plus(&fv, &fw)? - space.product_plus(&v, &w)?).abs();
        let b = (space.product_minus(&fv, &space.j_operator(&fw)?)? - space.product_minus(&v, &space.j_operator(&w)?)?).abs();
        if a.max(b) > rep.product.max(rep.adjoint) || rep.witness.is_empty() {
            rep.witness = vec![v, w];
        }
        rep.product = rep.product.max(a);
        rep.adjoint = rep.adjoint.max(b);
    }
    let apex = map.apply(&linalg::unit(n, n - 1))?;
    rep.apex = (space.product_plus(&apex, &apex)? + 1.0).abs();
    rep.apex_upper = apex[n - 1] > 0.0 && space.classify(&apex, eq_tol)? == VectorClass::TimeLike;
    Ok(rep)
}

/// Boost mixing the `S`-axis `axis` (0-based) with the time axis.
pub fn lorentz_boost(space: &GeneralizedMinkowskiSpace, axis: usize, rapidity: f64) -> Result<LinearMap> {
    if !(space.is_space_time() && space.is_pseudo_euclidean()) {
        return Err(Error::Unsupported("boosts need Euclidean S and a one-dimensional T".into()));
    }
    if axis >= space.k() {
        return Err(Error::Domain(format!("boost axis {axis} out of range 0..{}", space.k())));
    }
    let n = space.n();
    let mut m = LinearMap::identity(n);
    let (c, s) = (rapidity.cosh(), rapidity.sinh());
    m.rows[axis][axis] = c;
    m.rows[axis][n - 1] = s;
    m.rows[n - 1][axis] = s;
    m.rows[n - 1][n - 1] = c;
    Ok(m)
}

/// Image of a point of `H⁺`, re-lifted from its `S`-coordinates.
pub fn map_point(space: &GeneralizedMinkowskiSpace, map: &LinearMap, p: &HPoint) -> Result<HPoint> {
    let image = map.apply(&p.coords())?;
    hyperboloid::lift(space, &image[..space.k()])
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceReport {
    pub pairs: usize,
    /// `max |d(Fa, Fb) − d(a, b)|`.
    pub max_residual: f64,
    pub witness: Vec<Vec<f64>>,
}

/// Geodesic distances before and after `map` on seeded pairs at distance
/// at most 3.
pub fn distance_preservation_check(
    space: &GeneralizedMinkowskiSpace,
    map: &LinearMap,
    seed: Seed,
    pairs: usize,
    m: usize,
    opt_tol: f64,
) -> Result<DistanceReport> {
    let mut rng = seed.rng();
    let mut rep = DistanceReport { pairs, max_residual: 0.0, witness: Vec::new() };
    for _ in 0..pairs {
        let (a, b) = hyperboloid::sample_pair(space, &mut rng, 3.0)?;
        let before = hyperboloid::geodesic_distance(space, &a, &b, m, opt_tol)?;
        let (fa, fb) = (map_point(space, map, &a)?, map_point(space, map, &b)?);
        let after = hyperboloid::geodesic_distance(space, &fa, &fb, m, opt_tol)?;
        let r = (after - before).abs();
        if r > rep.max_residual || rep.witness.is_empty() {
            rep.max_residual = r;
            rep.witness = vec![a.coords(), b.coords()];
        }
    }
    Ok(rep)
}

/// Residuals of a map on a normed space: how far it is from preserving the
/// semi-inner-product and the norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SipMapReport {
    pub sip: f64,
    pub norm: f64,
}

pub fn sip_map_report(space: &SipSpace, map: &LinearMap, seed: Seed, trials: usize) -> Result<SipMapReport> {
    check_dim(space.dim(), map.dim())?;
    let mut rng = seed.rng();
    let mut rep = SipMapReport { sip: 0.0, norm: 0.0 };
    for _ in 0..trials {
        let x = numerics::sample_nonzero(&mut rng, space.dim(), 1.0);
        let y = numerics::sample_nonzero(&mut rng, space.dim(), 1.0);
        let (fx, fy) = (map.apply(&x)?, map.apply(&y)?);
        rep.sip = rep.sip.max((space.sip_unchecked(&fx, &fy) - space.sip_unchecked(&x, &y)).abs());
        rep.norm = rep.norm.max((space.norm.eval(&fx) - space.norm.eval(&x)).abs());
    }
    Ok(rep)
}

const EQUALITY_TOL: f64 = 1e-9;

fn equality_witness(space: &SipSpace, x: &[f64], y: &[f64]) -> bool {
    let gap = (space.sip_unchecked(x, y) - space.norm.eval(x) * space.norm.eval(y)).abs();
    gap <= EQUALITY_TOL && linalg::rank(&[x.to_vec(), y.to_vec()], 1e-9) == 2
}

/// A non-parallel pair with `[x, y] = ‖x‖‖y‖`, which exists exactly when the
/// norm is not strictly convex.
///
/// Coordinate planes are scanned first with `x = e_i + a e_j`,
/// `y = e_i + b e_j`, widest pairs first; `trials` random pairs follow.
pub fn strict_convexity_witness(space: &SipSpace, seed: Seed, trials: usize) -> Option<(Vec<f64>, Vec<f64>)> {
    let n = space.dim();
    const OFFSETS: [f64; 4] = [0.2, 0.4, 0.6, 0.8];
    let mut pairs: Vec<(f64, f64)> = OFFSETS
        .iter()
        .flat_map(|&a| OFFSETS.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
        .collect();
    pairs.sort_by(|p, q| (q.1 - q.0).total_cmp(&(p.1 - p.0)).then(p.0.total_cmp(&q.0)));
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            for &(a, b) in &pairs {
                let mut x = linalg::unit(n, i);
                let mut y = linalg::unit(n, i);
                x[j] = a;
                y[j] = b;
                if equality_witness(space, &x, &y) {
                    return Some((x, y));
                }
            }
        }
    }
    let mut rng = seed.rng();
    for _ in 0..trials {
        let x = numerics::sample_nonzero(&mut rng, n, 1.0);
        let y = numerics::sample_nonzero(&mut rng, n, 1.0);
        if equality_witness(space, &x, &y) {
            return Some((x, y));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pe(k: usize) -> GeneralizedMinkowskiSpace {
        GeneralizedMinkowskiSpace::pseudo_euclidean(k, 1).unwrap()
    }

    fn reflection(n: usize) -> LinearMap {
        let mut rows: Vec<Vec<f64>> = (0..n).map(|i| linalg::unit(n, i)).collect();
        rows[n - 1][n - 1] = -1.0;
        LinearMap::new(rows).unwrap()
    }

    #[test]
    fn identity_report() {
        let sp = pe(2);
        let r = isometry_report(&sp, &LinearMap::identity(3), Seed(1), 100, 1e-9).unwrap();
        assert_eq!((r.product, r.adjoint, r.apex), (0.0, 0.0, 0.0));
        assert!(r.apex_upper && r.within_hypotheses);
    }

    #[test]
    fn boost_report() {
        let sp = pe(1);
        let b = lorentz_boost(&sp, 0, 0.5).unwrap();
        let r = isometry_report(&sp, &b, Seed(1), 200, 1e-9).unwrap();
        assert!(r.passes(1e-12), "{r:?}");
        let image = b.apply(&[0.0, 1.0]).unwrap();
        assert!((image[0] - 0.5f64.sinh()).abs() < 1e-15 && (image[1] - 0.5f64.cosh()).abs() < 1e-15);

        let sp = pe(3);
        let r = isometry_report(&sp, &lorentz_boost(&sp, 1, 1.2).unwrap(), Seed(2), 200, 1e-9).unwrap();
        assert!(r.passes(1e-10));
    }

    #[test]
    fn reflection_fails_only_the_sheet_condition() {
        let sp = pe(2);
        let r = isometry_report(&sp, &reflection(3), Seed(1), 100, 1e-9).unwrap();
        assert!(r.preserves_product(1e-12));
        assert!(!r.preserves_sheet(1e-12));
    }

    #[test]
    fn singular_and_unsupported() {
        let sp = pe(1);
        let zero = LinearMap::new(vec![vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert!(matches!(isometry_report(&sp, &zero, Seed(1), 10, 1e-9), Err(Error::SingularMap { .. })));
        let r1 = GeneralizedMinkowskiSpace::remark1_space();
        assert!(matches!(lorentz_boost(&r1, 0, 0.3), Err(Error::Unsupported(_))));
        assert!(!isometry_report(&r1, &LinearMap::identity(3), Seed(1), 10, 1e-9).unwrap().within_hypotheses);
    }

    #[test]
    fn boost_algebra() {
        let sp = pe(2);
        assert_eq!(lorentz_boost(&sp, 0, 0.0).unwrap(), LinearMap::identity(3));
        let ab = lorentz_boost(&sp, 0, 0.3).unwrap().compose(&lorentz_boost(&sp, 0, 0.9).unwrap()).unwrap();
        assert!(ab.distance(&lorentz_boost(&sp, 0, 1.2).unwrap()) <= 1e-12);
    }

    #[test]
    fn adjoint_identity_for_passing_maps() {
        let sp = pe(2);
        let mut j = LinearMap::identity(3);
        j.rows[2][2] = -1.0;
        let f = LinearMap::rotation(3, 0, 1, 0.7).unwrap().compose(&lorentz_boost(&sp, 1, 0.8).unwrap()).unwrap();
        assert!(isometry_report(&sp, &f, Seed(4), 100, 1e-9).unwrap().passes(1e-9));
        let product = j.compose(&f.transpose()).unwrap().compose(&j).unwrap().compose(&f).unwrap();
        assert!(product.distance(&LinearMap::identity(3)) <= 1e-8);
    }

    #[test]
    fn boosts_preserve_classification() {
        let sp = pe(2);
        let b = lorentz_boost(&sp, 0, 1.2).unwrap();
        for v in numerics::sample_vectors(Seed(6), 3, 200, 1.0) {
            assert_eq!(sp.classify(&b.apply(&v).unwrap(), 1e-9).unwrap(), sp.classify(&v, 1e-9).unwrap());
        }
    }

    #[test]
    fn product_residual_is_invariant_under_rotations() {
        let sp = pe(2);
        let b = lorentz_boost(&sp, 0, 0.6).unwrap();
        let base = isometry_report(&sp, &b, Seed(3), 100, 1e-9).unwrap().product;
        for angle in [0.4, 2.0, -1.1] {
            let f = b.compose(&LinearMap::rotation(3, 0, 1, angle).unwrap()).unwrap();
            let r = isometry_report(&sp, &f, Seed(3), 100, 1e-9).unwrap().product;
            assert!((r - base).abs() <= 1e-12);
        }
    }

    #[test]
    fn distances_are_preserved() {
        let sp = pe(2);
        let id = distance_preservation_check(&sp, &LinearMap::identity(3), Seed(1), 2, 16, 1e-7).unwrap();
        assert_eq!(id.max_residual, 0.0);
        let b = lorentz_boost(&sp, 0, 0.3).unwrap();
        let r = distance_preservation_check(&sp, &b, Seed(1), 3, 32, 1e-7).unwrap();
        assert!(r.max_residual <= 5e-3, "{r:?}");
    }

    #[test]
    fn sip_preserving_maps_preserve_norms() {
        let rot = LinearMap::rotation(2, 0, 1, 0.5).unwrap();
        let e = sip_map_report(&SipSpace::euclidean(2).unwrap(), &rot, Seed(1), 100).unwrap();
        assert!(e.sip <= 1e-12 && e.norm <= 1e-12);
        let p = sip_map_report(&SipSpace::pnorm(3.0, 2).unwrap(), &rot, Seed(1), 100).unwrap();
        assert!(p.sip > 1e-3 && p.norm > 1e-3);
    }

    #[test]
    fn strict_convexity_witnesses() {
        assert_eq!(strict_convexity_witness(&SipSpace::euclidean(2).unwrap(), Seed(1), 500), None);
        let w = strict_convexity_witness(&SipSpace::max_norm(2).unwrap(), Seed(1), 10);
        assert_eq!(w, Some((vec![1.0, 0.2], vec![1.0, 0.8])));
        assert_eq!(strict_convexity_witness(&SipSpace::pnorm(3.0, 2).unwrap(), Seed(1), 2000), None);
    }
}
