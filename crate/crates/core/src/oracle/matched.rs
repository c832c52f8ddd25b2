//! Transmission by integration across the barrier.
//!
//! Start at x = a with the transmitted wave b5·Ai(y3) (b5 = 1), integrate
//! the reduced equation back to x = 0, and project onto the incident
//! basis with the Airy Wronskian W{Ai, Bi} = 1/π:
//!
//! b1 = π·(φ·Bi′(y1) − φ_y·Bi(y1)),  b2 = −π·(φ·Ai′(y1) − φ_y·Ai(y1)),
//!
//! with φ_y = φ′/k. Then T = (b5/b1)², the same convention as the closed-form
//! path.

use std::f64::consts::PI;

use crate::model::{barrier_coefficients, MassParams, ModelError, PotentialProfile, UnitSystem};
use crate::scatter::{region_ii_wave, transmission};

use super::airy::{ai, bi};
use super::integrate::{integrate, Equation, IntegrationSpec, DEFAULT_STEP};
use super::OracleError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleTransmission {
    pub t: f64,
    pub b1: f64,
    pub b2: f64,
    /// (φ, φ′) at x = 0 from the integration.
    pub at_origin: (f64, f64),
    pub halving_change: f64,
}

fn require(ok: bool, quantity: &'static str, value: f64, requirement: &'static str) -> Result<(), OracleError> {
    if ok {
        Ok(())
    } else {
        Err(ModelError::Domain {
            quantity,
            value,
            requirement,
        }
        .into())
    }
}

pub fn matched_transmission(
    e: f64,
    mp: &MassParams,
    pp: &PotentialProfile,
    u: &UnitSystem,
) -> Result<OracleTransmission, OracleError> {
    matched_transmission_with_step(e, mp, pp, u, DEFAULT_STEP)
}

pub fn matched_transmission_with_step(
    e: f64,
    mp: &MassParams,
    pp: &PotentialProfile,
    u: &UnitSystem,
    step: f64,
) -> Result<OracleTransmission, OracleError> {
    require(e > 0.0 && e.is_finite(), "E", e, "E > 0")?;
    require(mp.m1 > 0.0, "M1", mp.m1, "M1 > 0")?;
    let k = (u.h_per_m0 * e * mp.m1).cbrt();
    let shift = u.h_per_m0 * e * mp.m0 / (k * k);
    let (y1, y3) = (-shift, k * pp.a - shift);
    let (a3, ap3) = ai(y3);
    let spec = IntegrationSpec::covering(pp.a, 0.0, step, (a3, k * ap3))?;
    let r = integrate(&spec, Equation::Reduced, e, mp, pp, u)?;
    let (phi, dphi) = r.end;
    let phi_y = dphi / k;
    let (a1, ap1) = ai(y1);
    let (b1v, bp1) = bi(y1);
    let b1 = PI * (phi * bp1 - phi_y * b1v);
    let b2 = -PI * (phi * ap1 - phi_y * a1);
    Ok(OracleTransmission {
        t: 1.0 / (b1 * b1),
        b1,
        b2,
        at_origin: (phi, dphi),
        halving_change: r.halving_change,
    })
}

/// Largest deviation of the integrated region-II solution from the closed
/// form, sup|φ_rk4 − φ_II| / sup|φ_II| over every `stride`-th step.
///
/// The closed-form amplitudes b3, b4 come from the continuity solve;
/// integration starts at x = a from φ_II(a) and runs back to x = 0.
pub fn region_ii_agreement(
    e: f64,
    mp: &MassParams,
    pp: &PotentialProfile,
    u: &UnitSystem,
    stride: usize,
) -> Result<f64, OracleError> {
    let result = transmission(e, mp, pp, u)?;
    let coeffs = barrier_coefficients(e, mp, pp, u)?;
    let amps = (result.amplitudes[2], result.amplitudes[3]);
    let start = region_ii_wave(pp.a, &coeffs, amps)?;
    let spec = IntegrationSpec::covering(pp.a, 0.0, DEFAULT_STEP, (start.value, start.derivative))?;
    let r = integrate(&spec, Equation::Reduced, e, mp, pp, u)?;
    let (mut worst, mut scale) = (0.0f64, 0.0f64);
    let last = r.trajectory.len() - 1;
    for (i, p) in r.trajectory.iter().enumerate() {
        if i % stride.max(1) != 0 && i != last {
            continue;
        }
        // stay inside the open interval where the closed form applies
        let x = p[0].clamp(1e-12, pp.a - 1e-12);
        let w = region_ii_wave(x, &coeffs, amps)?;
        worst = worst.max((p[1] - w.value).abs());
        scale = scale.max(w.value.abs());
    }
    Ok(worst / scale.max(f64::MIN_POSITIVE))
}
