//! Real Gamma function, its reciprocal and logarithm.
//!
//! Lanczos approximation (g = 7, nine terms) on `x >= 1/2`, reflection
//! below. The reciprocal is the primitive: at the poles `0, -1, -2, ...`
//! it returns an exact zero.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `sin(pi x)` with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    if x.fract() == 0.0 {
        return 0.0;
    }
    // reduce to [-1, 1)
    let mut r = x % 2.0;
    if r >= 1.0 {
        r -= 2.0;
    } else if r < -1.0 {
        r += 2.0;
    }
    if r == 0.5 {
        1.0
    } else if r == -0.5 {
        -1.0
    } else if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// ln Γ(x) and sign of Γ(x) for x >= 1/2.
fn ln_gamma_lanczos(x: f64) -> f64 {
    let xm = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (xm + i as f64);
    }
    let t = xm + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (xm + 0.5) * t.ln() - t + acc.ln()
}

fn gamma_lanczos(x: f64) -> f64 {
    if x > 171.7 {
        return f64::INFINITY;
    }
    let xm = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (xm + i as f64);
    }
    let t = xm + LANCZOS_G + 0.5;
    // split the power so t^(xm+1/2) does not overflow before e^-t is applied
    let half = t.powf(0.5 * (xm + 0.5));
    (2.0 * PI).sqrt() * half * ((-t).exp() * half) * acc
}

/// Γ(x). Poles return `f64::NAN`.
pub fn gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if is_nonpositive_integer(x) {
        return f64::NAN;
    }
    if x < 0.5 {
        PI / (sin_pi(x) * gamma_lanczos(1.0 - x))
    } else {
        gamma_lanczos(x)
    }
}

/// 1/Γ(x), exactly zero at the poles of Γ.
pub fn rgamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x < 0.5 {
        let one_minus = 1.0 - x;
        if one_minus > 171.0 {
            let s = sin_pi(x);
            return s.signum() * (s.abs().ln() + ln_gamma_lanczos(one_minus) - PI.ln()).exp();
        }
        sin_pi(x) * gamma_lanczos(one_minus) / PI
    } else if x > 171.0 {
        (-ln_gamma_lanczos(x)).exp()
    } else {
        1.0 / gamma_lanczos(x)
    }
}

/// ln|Γ(x)|.
pub fn ln_gamma_abs(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return f64::INFINITY;
    }
    if x < 0.5 {
        PI.ln() - sin_pi(x).abs().ln() - ln_gamma_lanczos(1.0 - x)
    } else {
        ln_gamma_lanczos(x)
    }
}
