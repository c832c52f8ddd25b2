//! Independent verification by brute force: fixed-step RK4 integration of
//! φ″ + H·m(x)·(E − V(x))·φ = 0, finite-difference ODE residuals, and a
//! transmission computed by integrating across the barrier instead of
//! using closed forms.
//!
//! The integration itself never calls into [`crate::sfun`]; the Airy values needed at the
//! matching points come from integrating the Airy equation itself
//! ([`airy`]), started from elementary asymptotics and two literal
//! constants. Only the comparison helper [`region_ii_agreement`] reads the
//! closed-form solution it checks.

pub mod airy;
pub mod integrate;
pub mod matched;
pub mod residual;

pub use integrate::{
    integrate, integrate_equation, Equation, IntegrationResult, IntegrationSpec, Method,
    CONVERGENCE_GATE, DEFAULT_STEP,
};
pub use matched::{matched_transmission, matched_transmission_with_step, region_ii_agreement, OracleTransmission};
pub use residual::{ode_residual, LinearOde, ResidualReport, Sampled};

use thiserror::Error;

use crate::model::ModelError;
use crate::scatter::ScatterError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Model(#[from] ModelError),
    /// The closed-form side of a comparison failed.
    #[error(transparent)]
    Scatter(#[from] ScatterError),
    #[error("invalid integration spec: {0}")]
    Spec(String),
    #[error("step halving changed the endpoint by {relative_change:e} (coarse {coarse:?}, fine {fine:?})")]
    Convergence {
        coarse: (f64, f64),
        fine: (f64, f64),
        relative_change: f64,
    },
}
