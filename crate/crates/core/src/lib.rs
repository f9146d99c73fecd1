//! Certified positivity for trigonometric and orthogonal-polynomial sums.
//!
//! The crate is split the way the numerics are used:
//!
//! * [`seqkit`] builds coefficient families and checks the coefficient-side
//!   conditions (Vietoris, Belov and the weighted chain conditions).
//! * [`trigeval`] evaluates sums with a backward recurrence.
//! * [`certify`] turns grid samples plus derivative bounds into a positivity
//!   verdict, and brackets zeros.
//! * [`specfun`] holds Γ, ₂F₃, Bessel J, tanh-sinh quadrature and the named
//!   constants α₀, α₀′, β₀, β₁ and λ′.
//! * [`orthosum`] covers Chebyshev, Gegenbauer and Jacobi sums and the OPUC
//!   coefficient positivity.
//! * [`sums`] assembles the concrete trigonometric polynomials.

pub mod certify;
pub mod error;
pub mod orthosum;
pub mod seqkit;
pub mod specfun;
pub mod sums;
pub mod trigeval;

pub use certify::{
    bracket_zeros, certify_positive, find_min, lipschitz_bound, CertifyOptions, PositivityReport,
    Verdict, ZeroBracketList, ZeroKind,
};
pub use error::{Error, Result};
pub use seqkit::{CoefficientSequence, CriterionReport, Family};
pub use specfun::constants::SpecialConstant;
pub use trigeval::{TrigKind, TrigPolynomial};
