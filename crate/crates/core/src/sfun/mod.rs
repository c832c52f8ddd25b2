//! Real special functions: Airy Ai/Bi, Kummer ₁F₁ (plain and regularized),
//! Tricomi U, and Γ.
//!
//! Everything here is a pure function of its arguments and safe to call
//! concurrently.

mod airy;
mod bessel;
pub(crate) mod dd;
mod gamma;
mod kummer;

pub use airy::{
    airy, airy_ai, airy_bi, airy_with_constants, AiryConstants, AiryPair, AiryValues,
    AI_PRIME_ZERO, AI_ZERO,
};
pub use gamma::{gamma, ln_gamma_abs, rgamma, sin_pi};
pub use kummer::{
    kummer_m, kummer_m_regularized, tricomi_u, tricomi_u_connection, KummerParams,
    ACCURACY_LIMIT, MAX_ARGUMENT, MAX_TERMS,
};

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SpecialFunctionError {
    #[error("{function}: argument {argument} outside the domain")]
    Domain {
        function: &'static str,
        argument: f64,
    },
    #[error("{function}(b = {b}, c = {c}, z = {z}): estimated relative error {estimate:e} exceeds the accuracy envelope")]
    Accuracy {
        function: &'static str,
        b: f64,
        c: f64,
        z: f64,
        estimate: f64,
    },
}
