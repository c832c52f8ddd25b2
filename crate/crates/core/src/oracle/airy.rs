//! Airy functions by direct integration of w″ = y·w, for the oracle.
//!
//! * Ai: the asymptotic expansion Ai(y) ~ e^{−ζ}/(2√π·y^{1/4})·Σ(−1)^k u_k/ζ^k,
//!   ζ = (2/3)·y^{3/2}, supplies (Ai, Ai′) at Y0 = max(y + 4, 12), where it is
//!   accurate to rounding; integrating down to y is stable because Ai is
//!   recessive towards +∞.
//! * Bi: started at 0 from Bi(0) = 1/(3^{1/6}·Γ(2/3)), Bi′(0) = 3^{1/6}/Γ(1/3)
//!   with literal Γ(1/3), Γ(2/3), and integrated towards y (Bi is dominant
//!   towards +∞, oscillatory towards −∞).

use std::f64::consts::PI;

/// Γ(1/3) and Γ(2/3), literal.
const GAMMA_ONE_THIRD: f64 = 2.678_938_534_707_747_6;
const GAMMA_TWO_THIRDS: f64 = 1.354_117_939_426_400_4;
/// Step in y.
const Y_STEP: f64 = 1e-3;
const START_MIN: f64 = 12.0;

fn rk4_airy(y0: f64, y1: f64, init: (f64, f64)) -> (f64, f64) {
    if y0 == y1 {
        return init;
    }
    let n = ((y1 - y0).abs() / Y_STEP).ceil().max(1.0) as usize;
    let h = (y1 - y0) / n as f64;
    let (mut w, mut v) = init;
    for i in 0..n {
        let y = y0 + h * i as f64;
        let k1w = v;
        let k1v = y * w;
        let k2w = v + 0.5 * h * k1v;
        let k2v = (y + 0.5 * h) * (w + 0.5 * h * k1w);
        let k3w = v + 0.5 * h * k2v;
        let k3v = (y + 0.5 * h) * (w + 0.5 * h * k2w);
        let k4w = v + h * k3v;
        let k4v = (y + h) * (w + h * k3w);
        w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    (w, v)
}

/// (Ai, Ai′) from the large-y asymptotic series; needs y ≳ 10.
fn ai_asymptotic(y: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * y * y.sqrt();
    let mut u = 1.0;
    let (mut su, mut sv) = (1.0, 1.0);
    for k in 1..40 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let zk = zeta.powi(k);
        su += sign * u / zk;
        sv += sign * v / zk;
        if u / zk < 1e-17 {
            break;
        }
    }
    let pre = (-zeta).exp() / (2.0 * PI.sqrt());
    let q = y.sqrt().sqrt();
    (pre / q * su, -pre * q * sv)
}

/// (Ai(y), Ai′(y)).
pub fn ai(y: f64) -> (f64, f64) {
    let start = (y + 4.0).max(START_MIN);
    rk4_airy(start, y, ai_asymptotic(start))
}

/// (Bi(y), Bi′(y)).
pub fn bi(y: f64) -> (f64, f64) {
    let cube_sixth = 3f64.powf(1.0 / 6.0);
    let init = (1.0 / (cube_sixth * GAMMA_TWO_THIRDS), cube_sixth / GAMMA_ONE_THIRD);
    rk4_airy(0.0, y, init)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sfun;

    #[test]
    fn agrees_with_special_function_evaluation() {
        for k in 0..=60 {
            let y = -8.0 + 0.25 * k as f64;
            let (a, ap) = ai(y);
            let (b, bp) = bi(y);
            let want = sfun::airy(y).unwrap();
            let env = (1.0 + y.abs()).powf(0.25);
            assert!((a - want.ai.value).abs() < 1e-10 * env.max(want.ai.value.abs()), "Ai {y}");
            assert!((ap - want.ai.derivative).abs() < 1e-10 * env.max(want.ai.derivative.abs()));
            assert!((b - want.bi.value).abs() < 1e-10 * want.bi.value.abs().max(1.0), "Bi {y}");
            assert!((bp - want.bi.derivative).abs() < 1e-10 * want.bi.derivative.abs().max(1.0));
        }
    }

    #[test]
    fn wronskian() {
        for &y in &[-5.0, -0.3, 0.0, 2.5, 6.0] {
            let (a, ap) = ai(y);
            let (b, bp) = bi(y);
            assert!((a * bp - ap * b - 1.0 / PI).abs() < 1e-11, "y = {y}");
        }
    }
}
