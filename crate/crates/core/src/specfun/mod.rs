//! Special functions used across the crate.

mod bessel;
mod beta;
mod conical;
mod dispersion;
mod gamma;
mod hyp2f1;

pub use num_complex::Complex64 as Complex;

pub use bessel::bessel_j0;
pub use beta::{incomplete_beta, phase_integral, phase_integral_total};
pub use conical::{conical_legendre, ConicalTable};
pub use dispersion::{
    big_g, big_g_derivative, big_g_inverse, big_g_inverse_leading, g_dispersion, lipatov_excess,
    lipatov_kappa,
};
pub use gamma::{digamma, ln_beta, ln_gamma, ln_gamma_real, trigamma};
pub use hyp2f1::hyp2f1_conical;

pub(crate) use conical::{acosh_stable, conical_legendre_on};
#[cfg(test)]
pub(crate) use conical::mehler_average;

/// Mathematical constants.
pub mod consts {
    pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
    pub const ZETA3: f64 = 1.202_056_903_159_594_3;
    pub const ZETA5: f64 = 1.036_927_755_143_369_9;
    pub const ZETA7: f64 = 1.008_349_277_381_922_8;
    pub const LN_2: f64 = std::f64::consts::LN_2;
}
