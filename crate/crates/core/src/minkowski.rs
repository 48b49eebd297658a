//! Generalized Minkowski spaces `V = S ⊕ T`.
//!
//! `S` (coordinates `0..k`) and `T` (coordinates `k..n`) each carry a norm
//! with its semi-inner-product. Two products live on `V`:
//!
//! * `[u, v]⁻ = [s₁, s₂]_S + [t₁, t₂]_T`, a genuine semi-inner-product;
//! * `[u, v]⁺ = [s₁, s₂]_S − [t₁, t₂]_T`, the Minkowski product.
//!
//! With `dim T = 1` this is a generalized space-time model.

use rand::Rng;

use crate::error::{check_dim, Error, Result};
use crate::linalg;
use crate::norms::{NormSpec, SipSpace};
use crate::numerics::{self, Seed};
use crate::product::Product;

#[derive(Debug, Clone)]
pub struct GeneralizedMinkowskiSpace {
    s: SipSpace,
    t: SipSpace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VectorClass {
    SpaceLike,
    TimeLike,
    LightLike,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConePart {
    TPlus,
    TMinus,
    NotTimeLike,
}

impl GeneralizedMinkowskiSpace {
    pub fn new(s: SipSpace, t: SipSpace) -> Self {
        Self { s, t }
    }

    /// `ℝᵏ ⊕ ℝᵐ` with Euclidean blocks: signature `(k, m)`.
    pub fn pseudo_euclidean(k: usize, m: usize) -> Result<Self> {
        Ok(Self::new(SipSpace::euclidean(k)?, SipSpace::euclidean(m)?))
    }

    /// `S = (ℝ², ℓ_∞)`, `T = ℝ`: a space-time model whose Minkowski
    /// product fails Cauchy–Schwarz on positive planes.
    pub fn remark1_space() -> Self {
        Self::new(
            SipSpace::new(NormSpec::max_norm(2).expect("dim 2")),
            SipSpace::new(NormSpec::euclidean(1).expect("dim 1")),
        )
    }

    pub fn s_space(&self) -> &SipSpace {
        &self.s
    }

    pub fn t_space(&self) -> &SipSpace {
        &self.t
    }

    /// `dim S`.
    pub fn k(&self) -> usize {
        self.s.dim()
    }

    pub fn n(&self) -> usize {
        self.s.dim() + self.t.dim()
    }

    pub fn is_space_time(&self) -> bool {
        self.t.dim() == 1
    }

    /// Both blocks Euclidean: the classical pseudo-Euclidean space.
    pub fn is_pseudo_euclidean(&self) -> bool {
        self.s.norm.is_euclidean() && self.t.norm.is_euclidean()
    }

    pub fn split<'a>(&self, v: &'a [f64]) -> Result<(&'a [f64], &'a [f64])> {
        check_dim(self.n(), v.len())?;
        Ok(v.split_at(self.k()))
    }

    pub fn join(&self, s: &[f64], t: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.k(), s.len())?;
        check_dim(self.t.dim(), t.len())?;
        Ok([s, t].concat())
    }

    pub fn product_minus(&self, u: &[f64], v: &[f64]) -> Result<f64> {
        let (s1, t1) = self.split(u)?;
        let (s2, t2) = self.split(v)?;
        Ok(self.s.sip_unchecked(s1, s2) + self.t.sip_unchecked(t1, t2))
    }

    pub fn product_plus(&self, u: &[f64], v: &[f64]) -> Result<f64> {
        let (s1, t1) = self.split(u)?;
        let (s2, t2) = self.split(v)?;
        Ok(self.s.sip_unchecked(s1, s2) - self.t.sip_unchecked(t1, t2))
    }

    /// Identity on `S`, negation on `T`.
    pub fn j_operator(&self, v: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.n(), v.len())?;
        let k = self.k();
        Ok(v.iter().enumerate().map(|(i, x)| if i < k { *x } else { -x }).collect())
    }

    pub fn classify(&self, v: &[f64], class_tol: f64) -> Result<VectorClass> {
        let q = self.product_plus(v, v)?;
        let scale = self.product_minus(v, v)?.max(1.0);
        Ok(if q.abs() <= class_tol * scale {
            VectorClass::LightLike
        } else if q > 0.0 {
            VectorClass::SpaceLike
        } else {
            VectorClass::TimeLike
        })
    }

    pub fn cone_part(&self, v: &[f64], class_tol: f64) -> Result<ConePart> {
        if !self.is_space_time() {
            return Err(Error::Unsupported("cone parts need a space-time model (dim T = 1)".into()));
        }
        if self.classify(v, class_tol)? != VectorClass::TimeLike {
            return Ok(ConePart::NotTimeLike);
        }
        Ok(if v[self.n() - 1] > 0.0 { ConePart::TPlus } else { ConePart::TMinus })
    }

    /// Sampled check that `T⁺` is a convex cone and that classification is
    /// invariant under nonzero scaling.
    pub fn cone_convexity_check(&self, seed: Seed, trials: usize, class_tol: f64) -> Result<ConeReport> {
        if !self.is_space_time() {
            return Err(Error::Unsupported("cone convexity needs a space-time model (dim T = 1)".into()));
        }
        let n = self.n();
        let mut rng = seed.rng();
        let mut report = ConeReport::default();
        let sample_tplus = |rng: &mut rand_chacha::ChaCha8Rng| -> Result<Vec<f64>> {
            loop {
                let v = numerics::sample_nonzero(rng, n, 1.0);
                if self.cone_part(&v, class_tol)? == ConePart::TPlus {
                    return Ok(v);
                }
            }
        };
        for _ in 0..trials {
            let a = sample_tplus(&mut rng)?;
            let b = sample_tplus(&mut rng)?;
            let mu: f64 = rng.gen_range(0.0..1.0);
            let c: Vec<f64> = a.iter().zip(&b).map(|(x, y)| mu * x + (1.0 - mu) * y).collect();
            report.convexity_trials += 1;
            if self.cone_part(&c, class_tol)? != ConePart::TPlus {
                report.convexity_violations += 1;
                report.witness.get_or_insert_with(|| vec![a.clone(), b.clone(), vec![mu]]);
            }

            let v = numerics::sample_nonzero(&mut rng, n, 1.0);
            let magnitude: f64 = rng.gen_range(0.1..5.0);
            let lambda = if rng.gen::<bool>() { magnitude } else { -magnitude };
            report.scaling_trials += 1;
            if self.classify(&v, class_tol)? != self.classify(&linalg::scale(&v, lambda), class_tol)? {
                report.scaling_violations += 1;
                report.witness.get_or_insert_with(|| vec![v.clone(), vec![lambda]]);
            }
        }
        Ok(report)
    }

    pub fn plus(&self) -> PlusProduct<'_> {
        PlusProduct(self)
    }

    pub fn minus(&self) -> MinusProduct<'_> {
        MinusProduct(self)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConeReport {
    pub convexity_trials: usize,
    pub convexity_violations: usize,
    pub scaling_trials: usize,
    pub scaling_violations: usize,
    pub witness: Option<Vec<Vec<f64>>>,
}

impl ConeReport {
    pub fn violations(&self) -> usize {
        self.convexity_violations + self.scaling_violations
    }
}

/// `[·,·]⁺` as a [`Product`].
#[derive(Debug, Clone, Copy)]
pub struct PlusProduct<'a>(pub &'a GeneralizedMinkowskiSpace);

/// `[·,·]⁻` as a [`Product`].
#[derive(Debug, Clone, Copy)]
pub struct MinusProduct<'a>(pub &'a GeneralizedMinkowskiSpace);

impl Product for PlusProduct<'_> {
    fn dim(&self) -> usize {
        self.0.n()
    }

    fn product(&self, u: &[f64], v: &[f64]) -> Result<f64> {
        self.0.product_plus(u, v)
    }

    fn is_symmetric_bilinear(&self) -> bool {
        self.0.is_pseudo_euclidean()
    }
}

impl Product for MinusProduct<'_> {
    fn dim(&self) -> usize {
        self.0.n()
    }

    fn product(&self, u: &[f64], v: &[f64]) -> Result<f64> {
        self.0.product_minus(u, v)
    }

    fn is_symmetric_bilinear(&self) -> bool {
        self.0.is_pseudo_euclidean()
    }
}
