//! Wavefunctions of the three regions.
//!
//! Regions I (x < 0) and III (x > a) solve φ″ + H·E·m(x)·φ = 0, which the
//! Airy argument y(x) = k·x − H·E·M0/k², k = (H·E·M1)^{1/3}, turns into
//! φ_yy = y·φ. Region II solves φ″ = (a1·ξ² + λ)·φ in the shifted
//! coordinate ξ = x + a2/(2·a1); with s = a1^{1/4}·ξ and z = s² the
//! solutions are e^{−z/2}·f(z), f a solution of Kummer's equation with
//! b = (1 + λ/√a1)/4, c = 1/2.
//!
//! # Second basis function
//!
//! Tricomi U(b; ½; s²) has a kink at s = 0 as a function of s (its
//! expansion contains |s|), and s = 0 lies inside (0, a) whenever the
//! shift −a2/(2·a1) does. The connection formula written with the signed
//! variable,
//!
//! Ũ(s) = π[M̄(b; ½; s²)/Γ(b + ½) − s·M̄(b + ½; 3/2; s²)/Γ(b)],
//!
//! is the analytic continuation: Ũ = U for s > 0 and e^{−s²/2}·Ũ(s) solves
//! the region-II equation on the whole real line. For large |s| the
//! connection form cancels, so Ũ is evaluated through U itself when s > 0
//! and through 2π·M̄(b; ½; s²)/Γ(b + ½) − U when that is better conditioned.

use std::f64::consts::PI;

use crate::model::{airy_scale, MassParams, RegionCoefficients, UnitSystem};
use crate::sfun::{airy, kummer_m, rgamma, tricomi_u, KummerParams, SpecialFunctionError};

use super::ScatterError;

/// A wavefunction value and its x-derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavePoint {
    pub value: f64,
    pub derivative: f64,
}

impl WavePoint {
    pub const ZERO: Self = Self {
        value: 0.0,
        derivative: 0.0,
    };

    fn combine(a: f64, p: WavePoint, b: f64, q: WavePoint) -> Self {
        Self {
            value: a * p.value + b * q.value,
            derivative: a * p.derivative + b * q.derivative,
        }
    }
}

/// φ_I = b1·Ai(y(x)) + b2·Bi(y(x)) and its x-derivative (chain factor k).
pub fn region_i_wave(
    x: f64,
    e: f64,
    mp: &MassParams,
    u: &UnitSystem,
    amplitudes: (f64, f64),
) -> Result<WavePoint, ScatterError> {
    let k = airy_scale(e, mp, u)?;
    let y = k * x - u.h_per_m0 * e * mp.m0 / (k * k);
    let v = airy(y)?;
    let (b1, b2) = amplitudes;
    Ok(WavePoint {
        value: b1 * v.ai.value + b2 * v.bi.value,
        derivative: k * (b1 * v.ai.derivative + b2 * v.bi.derivative),
    })
}

/// Region-III wave b5·Ai(y(x)).
pub fn region_iii_wave(
    x: f64,
    e: f64,
    mp: &MassParams,
    u: &UnitSystem,
    b5: f64,
) -> Result<WavePoint, ScatterError> {
    region_i_wave(x, e, mp, u, (b5, 0.0))
}

/// The two region-II basis functions at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisPoint {
    /// e^{−z/2}·M(b; ½; z).
    pub m: WavePoint,
    /// e^{−z/2}·Ũ(s).
    pub u: WavePoint,
}

/// Region-II basis: Kummer parameter and the map x ↦ s ↦ z = s².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionIIBasis {
    /// b = (1 + λ/√a1)/4.
    pub b_param: f64,
    /// a1^{1/4}.
    pub s_scale: f64,
    /// a2/(2·a1): z(x) = √a1·(x + shift)².
    pub shift: f64,
}

fn m(b: f64, c: f64, z: f64) -> Result<f64, SpecialFunctionError> {
    kummer_m(KummerParams::new(b, c, z))
}

fn u(b: f64, c: f64, z: f64) -> Result<f64, SpecialFunctionError> {
    tricomi_u(KummerParams::new(b, c, z))
}

impl RegionIIBasis {
    pub fn new(c: &RegionCoefficients) -> Self {
        Self {
            b_param: c.b_param(),
            s_scale: c.s_scale(),
            shift: c.y2,
        }
    }

    pub fn s_of_x(&self, x: f64) -> f64 {
        self.s_scale * (x + self.shift)
    }

    pub fn z_of_x(&self, x: f64) -> f64 {
        let s = self.s_of_x(x);
        s * s
    }

    /// Ũ(s) and dŨ/ds.
    fn continued_u(&self, s: f64) -> Result<(f64, f64), SpecialFunctionError> {
        let b = self.b_param;
        let z = s * s;
        let rg_half = rgamma(0.5);
        let rg_3_2 = rgamma(1.5);
        // connection-form pieces: Ũ = π(A − s·B), dA/dz = A′, dB/dz = B′
        let a = m(b, 0.5, z)? * rg_half * rgamma(b + 0.5);
        let a_p = 2.0 * b * m(b + 1.0, 1.5, z)? * rg_half * rgamma(b + 0.5);
        if s > 0.0 {
            let value = u(b, 0.5, z)?;
            let slope = -2.0 * s * b * u(b + 1.0, 1.5, z)?;
            return Ok((value, slope));
        }
        let bb = m(b + 0.5, 1.5, z)? * rg_3_2 * rgamma(b);
        let bb_p = (b + 0.5) / 1.5 * m(b + 1.5, 2.5, z)? * rg_3_2 * rgamma(b);
        let direct = PI * (a - s * bb);
        let direct_slope = PI * (2.0 * s * a_p - bb - 2.0 * s * s * bb_p);
        if s == 0.0 {
            return Ok((direct, direct_slope));
        }
        // reflected form 2πA − U(b; ½; z); pick the better conditioned one
        let uu = u(b, 0.5, z)?;
        let u_next = u(b + 1.0, 1.5, z)?;
        let reflected = 2.0 * PI * a - uu;
        let reflected_slope = 2.0 * s * (2.0 * PI * a_p + b * u_next);
        let cond_direct = PI * (a.abs() + (s * bb).abs()) / direct.abs();
        let cond_reflected = (2.0 * PI * a.abs() + uu.abs()) / reflected.abs();
        if cond_reflected < cond_direct {
            Ok((reflected, reflected_slope))
        } else {
            Ok((direct, direct_slope))
        }
    }

    /// Both basis functions with x-derivatives at x.
    pub fn eval(&self, x: f64) -> Result<BasisPoint, SpecialFunctionError> {
        let b = self.b_param;
        let s = self.s_of_x(x);
        let z = s * s;
        let r = self.s_scale;
        let damp = (-0.5 * z).exp();
        let m0 = m(b, 0.5, z)?;
        let m1 = m(b + 1.0, 1.5, z)?;
        let w1 = damp * m0;
        let w1_s = s * damp * (4.0 * b * m1 - m0);
        let (ut, ut_s) = self.continued_u(s)?;
        let w2 = damp * ut;
        let w2_s = damp * (ut_s - s * ut);
        Ok(BasisPoint {
            m: WavePoint {
                value: w1,
                derivative: r * w1_s,
            },
            u: WavePoint {
                value: w2,
                derivative: r * w2_s,
            },
        })
    }
}

/// φ_II = b3·e^{−z/2}M + b4·e^{−z/2}Ũ and its x-derivative.
pub fn region_ii_wave(
    x: f64,
    coeffs: &RegionCoefficients,
    amplitudes: (f64, f64),
) -> Result<WavePoint, ScatterError> {
    let p = RegionIIBasis::new(coeffs).eval(x)?;
    Ok(WavePoint::combine(amplitudes.0, p.m, amplitudes.1, p.u))
}
