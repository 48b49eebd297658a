//! Semi-inner-product spaces, semi-indefinite-inner-products and generalized
//! Minkowski spaces over the reals, with the hyperboloid geometry they carry.

pub mod cli;
pub mod config;
pub mod error;
pub mod hyperboloid;
pub mod isometry;
pub mod linalg;
pub mod minkowski;
pub mod norms;
pub mod numerics;
pub mod ortho;
pub mod product;
pub mod report;
pub mod siip;
pub mod suites;

pub use error::{Error, Result};
pub use norms::{NormKind, NormSpec, SipMode, SipSpace};
pub use numerics::{Seed, Tolerances};
pub use product::Product;
pub use report::AxiomReport;
pub use siip::{SiipKind, SiipSpace};
pub use minkowski::{ConePart, GeneralizedMinkowskiSpace, VectorClass};
