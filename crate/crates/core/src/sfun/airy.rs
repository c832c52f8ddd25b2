//! Airy functions Ai, Bi and their derivatives on the real line.
//!
//! |y| < 1: Maclaurin series of the two fundamental solutions of
//! w'' = y w. Elsewhere through Bessel functions of order 1/3 and 2/3
//! with ζ = (2/3)|y|^{3/2}:
//!
//! * y > 0: Ai = √(y/3) K_{1/3}(ζ)/π, Bi = √(y/3) (2 I_{1/3}(ζ)/√3 + K_{1/3}(ζ)/π)
//! * y < 0: Ai = √|y| (J_{1/3} − Y_{1/3}/√3)/2, Bi = −√|y| (Y_{1/3} + J_{1/3}/√3)/2
//!
//! and the analogous order-2/3 expressions for the derivatives.

use super::bessel::{bessel_ik, bessel_jy};
use super::SpecialFunctionError;

const FRAC_1_SQRT_3: f64 = 0.577_350_269_189_625_8;
const SQRT_3: f64 = 1.732_050_807_568_877_2;
const SERIES_RADIUS: f64 = 1.0;

/// Ai(0) = 3^{-2/3}/Γ(2/3).
pub const AI_ZERO: f64 = 0.355_028_053_887_817_24;
/// Ai'(0) = −3^{-1/3}/Γ(1/3).
pub const AI_PRIME_ZERO: f64 = -0.258_819_403_792_806_8;

/// A function value together with its first derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryPair {
    pub value: f64,
    pub derivative: f64,
}

/// Both Airy functions at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryValues {
    pub ai: AiryPair,
    pub bi: AiryPair,
}

impl AiryValues {
    /// Ai·Bi′ − Ai′·Bi; equals 1/π.
    pub fn wronskian(&self) -> f64 {
        self.ai.value * self.bi.derivative - self.ai.derivative * self.bi.value
    }
}

/// Initial data at the origin used by the Maclaurin branch.
///
/// Exposed so validation can run a negative control with perturbed
/// constants; production code uses [`AiryConstants::EXACT`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryConstants {
    pub ai_zero: f64,
    pub ai_prime_zero: f64,
}

impl AiryConstants {
    pub const EXACT: Self = Self {
        ai_zero: AI_ZERO,
        ai_prime_zero: AI_PRIME_ZERO,
    };
}

fn maclaurin(y: f64, consts: &AiryConstants) -> AiryValues {
    // even/odd fundamental solutions f (f(0)=1, f'(0)=0) and g (g(0)=0, g'(0)=1)
    // from a_{n+3} = a_n / ((n+2)(n+3)).
    let y3 = y * y * y;
    let (mut f, mut fp) = (1.0, 0.0);
    let (mut g, mut gp) = (y, 1.0);
    let mut tf = 1.0;
    let mut tg = y;
    let mut k = 0.0;
    loop {
        k += 1.0;
        let n_f = 3.0 * k;
        tf *= y3 / ((n_f - 1.0) * n_f);
        tg *= y3 / (n_f * (n_f + 1.0));
        f += tf;
        fp += tf * n_f / y;
        g += tg;
        gp += tg * (n_f + 1.0) / y;
        if tf.abs() < 1e-18 * f.abs() && tg.abs() < 1e-18 * g.abs().max(1e-300) {
            break;
        }
        if k > 60.0 {
            break;
        }
    }
    if y == 0.0 {
        fp = 0.0;
        gp = 1.0;
    }
    let c1 = consts.ai_zero;
    let c2 = -consts.ai_prime_zero;
    AiryValues {
        ai: AiryPair {
            value: c1 * f - c2 * g,
            derivative: c1 * fp - c2 * gp,
        },
        bi: AiryPair {
            value: SQRT_3 * (c1 * f + c2 * g),
            derivative: SQRT_3 * (c1 * fp + c2 * gp),
        },
    }
}

fn via_bessel(y: f64) -> AiryValues {
    let absy = y.abs();
    let root = absy.sqrt();
    let zeta = 2.0 / 3.0 * absy * root;
    let pi = std::f64::consts::PI;
    if y > 0.0 {
        let third = bessel_ik(zeta, 1.0 / 3.0);
        let two_thirds = bessel_ik(zeta, 2.0 / 3.0);
        AiryValues {
            ai: AiryPair {
                value: root * FRAC_1_SQRT_3 * third.k / pi,
                derivative: -y * FRAC_1_SQRT_3 * two_thirds.k / pi,
            },
            bi: AiryPair {
                value: root * (third.k / pi + 2.0 * FRAC_1_SQRT_3 * third.i),
                derivative: y * (two_thirds.k / pi + 2.0 * FRAC_1_SQRT_3 * two_thirds.i),
            },
        }
    } else {
        let third = bessel_jy(zeta, 1.0 / 3.0);
        let two_thirds = bessel_jy(zeta, 2.0 / 3.0);
        AiryValues {
            ai: AiryPair {
                value: 0.5 * root * (third.j - FRAC_1_SQRT_3 * third.y),
                derivative: 0.5 * absy * (FRAC_1_SQRT_3 * two_thirds.y + two_thirds.j),
            },
            bi: AiryPair {
                value: -0.5 * root * (third.y + FRAC_1_SQRT_3 * third.j),
                derivative: 0.5 * absy * (FRAC_1_SQRT_3 * two_thirds.j - two_thirds.y),
            },
        }
    }
}

/// Evaluates Ai, Ai′, Bi, Bi′ at `y` using the given origin constants for the
/// Maclaurin branch.
pub fn airy_with_constants(
    y: f64,
    consts: &AiryConstants,
) -> Result<AiryValues, SpecialFunctionError> {
    if !y.is_finite() {
        return Err(SpecialFunctionError::Domain {
            function: "airy",
            argument: y,
        });
    }
    if y.abs() < SERIES_RADIUS {
        Ok(maclaurin(y, consts))
    } else {
        Ok(via_bessel(y))
    }
}

/// Evaluates Ai, Ai′, Bi, Bi′ at `y`.
pub fn airy(y: f64) -> Result<AiryValues, SpecialFunctionError> {
    airy_with_constants(y, &AiryConstants::EXACT)
}

/// (Ai(y), Ai′(y)).
pub fn airy_ai(y: f64) -> Result<AiryPair, SpecialFunctionError> {
    airy(y).map(|v| v.ai)
}

/// (Bi(y), Bi′(y)).
pub fn airy_bi(y: f64) -> Result<AiryPair, SpecialFunctionError> {
    airy(y).map(|v| v.bi)
}
