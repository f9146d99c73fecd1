//! Special functions and the named constants built on them.

pub mod bessel;
pub mod constants;
pub mod gamma;
pub mod hyper;
pub mod quad;
pub mod roots;

pub use bessel::{bessel_j, bessel_j_scaled, bessel_zero};
pub use constants::{
    alpha0, alpha0_prime, alpha0_prime_hyp2f3, alpha0_hyp2f3, expansion_fit, h_corr, k_closed,
    lambda_prime, p_closed, ExpansionFit, SpecialConstant,
};
pub use gamma::{gamma_fn, ln_gamma, recip_gamma};
pub use hyper::hyp2f3;
pub use quad::{quad_singular, Quadrature};
pub use roots::{brent_root, golden_min};

/// Neumaier compensated accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}
