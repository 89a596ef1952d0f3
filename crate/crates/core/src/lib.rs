//! Numerical verification of Bernstein and Zygmund type inequalities for the
//! polar derivative of complex polynomials with restricted zeros.
//!
//! The crate is organised bottom-up:
//!
//! * [`poly`]: polynomials, the polar derivative, conjugate reciprocals, roots.
//! * [`quad`]: trapezoid quadrature on the unit circle, L^p and sup norms, `C_p`.
//! * [`families`]: certified random samplers for the constrained polynomial classes.
//! * [`inequalities`]: one check per inequality, each emitting an [`InequalityReport`].
//! * [`explorer`]: grid scans, randomized campaigns and Nelder-Mead sharpness search.

pub mod error;
pub mod explorer;
pub mod families;
pub mod inequalities;
pub mod poly;
pub mod quad;

pub use error::{Error, Result};
pub use explorer::{ExtremalRecord, ScanGrid, SearchConfig};
pub use families::{FamilySpec, SampleBatch, Side};
pub use inequalities::{CheckName, InequalityParams, InequalityReport};
pub use num_complex::Complex64;
pub use poly::{LacunaryShape, Polynomial, RootMultiset};
pub use quad::{NormConvention, PExponent, QuadratureResult, QuadratureSpec};
