use crate::error::Result;

/// A real product `[u, v]` on coordinate space, linear in its first argument.
///
/// Implemented by semi-inner-products, semi-indefinite-inner-products and
/// the two products of a generalized Minkowski space. Argument order matters:
/// most of these products are not symmetric.
pub trait Product {
    fn dim(&self) -> usize;

    fn product(&self, u: &[f64], v: &[f64]) -> Result<f64>;

    /// True when the product is known to be symmetric and bilinear
    /// (an indefinite inner product).
    fn is_symmetric_bilinear(&self) -> bool {
        false
    }
}

impl<P: Product + ?Sized> Product for &P {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn product(&self, u: &[f64], v: &[f64]) -> Result<f64> {
        (**self).product(u, v)
    }

    fn is_symmetric_bilinear(&self) -> bool {
        (**self).is_symmetric_bilinear()
    }
}
