//! Fixed-step classical RK4 for second-order linear equations
//! φ″ = −p(x)·φ′ − q(x)·φ, with a step-halving convergence gate.

use crate::model::{MassParams, PotentialProfile, UnitSystem};

use super::OracleError;

/// Default step in nm.
pub const DEFAULT_STEP: f64 = 1e-4;
/// Largest relative endpoint change tolerated when the step is halved.
pub const CONVERGENCE_GATE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Classical fourth-order Runge–Kutta on (φ, φ′).
    #[default]
    Rk4,
}

/// Which equation to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Equation {
    /// φ″ + H·m·(E − V)·φ = 0 (mass-derivative term dropped).
    #[default]
    Reduced,
    /// φ″ − (m′/m)·φ′ + H·m·(E − V)·φ = 0 with m′ = −M1. Integration stops
    /// 10 steps short of the mass zero x* = M0/M1 if the interval reaches it.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationSpec {
    pub x_start: f64,
    pub x_end: f64,
    /// Step magnitude; (x_end − x_start)/step is an integer.
    pub step: f64,
    /// (φ, φ′) at x_start.
    pub initial: (f64, f64),
    pub method: Method,
}

impl IntegrationSpec {
    pub fn new(
        x_start: f64,
        x_end: f64,
        step: f64,
        initial: (f64, f64),
    ) -> Result<Self, OracleError> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(OracleError::Spec(format!("step must be positive, got {step}")));
        }
        if !(x_start.is_finite() && x_end.is_finite()) || x_start == x_end {
            return Err(OracleError::Spec("empty or non-finite interval".into()));
        }
        let n = (x_end - x_start).abs() / step;
        if (n - n.round()).abs() > 1e-6 * n.max(1.0) {
            return Err(OracleError::Spec(format!(
                "interval length is not a multiple of the step ({n} steps)"
            )));
        }
        Ok(Self {
            x_start,
            x_end,
            step,
            initial,
            method: Method::Rk4,
        })
    }

    /// Spec whose step is the largest divisor of the interval not above
    /// `max_step`.
    pub fn covering(
        x_start: f64,
        x_end: f64,
        max_step: f64,
        initial: (f64, f64),
    ) -> Result<Self, OracleError> {
        let n = ((x_end - x_start).abs() / max_step).ceil().max(1.0);
        Self::new(x_start, x_end, (x_end - x_start).abs() / n, initial)
    }

    pub fn steps(&self) -> usize {
        ((self.x_end - self.x_start).abs() / self.step).round() as usize
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegrationResult {
    /// (φ, φ′) at the end point actually reached.
    pub end: (f64, f64),
    /// End point reached (differs from x_end only when truncated).
    pub x_reached: f64,
    /// (x, φ, φ′) at every step, starting with the initial state.
    pub trajectory: Vec<[f64; 3]>,
    /// Relative endpoint change against the half-step run.
    pub halving_change: f64,
    /// Set when the full equation stopped short of the mass zero.
    pub truncated_at: Option<f64>,
}

/// RK4 from x0 over n steps of signed size h.
fn rk4<F>(f: &F, x0: f64, h: f64, n: usize, init: (f64, f64), keep: bool) -> (Vec<[f64; 3]>, (f64, f64))
where
    F: Fn(f64) -> (f64, f64),
{
    let accel = |x: f64, y: f64, v: f64| {
        let (p, q) = f(x);
        -p * v - q * y
    };
    let (mut y, mut v) = init;
    let mut traj = Vec::with_capacity(if keep { n + 1 } else { 0 });
    if keep {
        traj.push([x0, y, v]);
    }
    for i in 0..n {
        let x = x0 + h * i as f64;
        let k1y = v;
        let k1v = accel(x, y, v);
        let k2y = v + 0.5 * h * k1v;
        let k2v = accel(x + 0.5 * h, y + 0.5 * h * k1y, k2y);
        let k3y = v + 0.5 * h * k2v;
        let k3v = accel(x + 0.5 * h, y + 0.5 * h * k2y, k3y);
        let k4y = v + h * k3v;
        let k4v = accel(x + h, y + h * k3y, k4y);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if keep {
            traj.push([x0 + h * (i + 1) as f64, y, v]);
        }
    }
    (traj, (y, v))
}

/// Integrates φ″ = −p(x)·φ′ − q(x)·φ per `spec`, gated by step halving.
pub fn integrate_equation<F>(spec: &IntegrationSpec, coefficients: F) -> Result<IntegrationResult, OracleError>
where
    F: Fn(f64) -> (f64, f64),
{
    let n = spec.steps();
    let h = (spec.x_end - spec.x_start).signum() * spec.step;
    let (trajectory, end) = rk4(&coefficients, spec.x_start, h, n, spec.initial, true);
    let (_, fine) = rk4(&coefficients, spec.x_start, 0.5 * h, 2 * n, spec.initial, false);
    let norm = end.0.hypot(end.1).max(f64::MIN_POSITIVE);
    let halving_change = (end.0 - fine.0).hypot(end.1 - fine.1) / norm;
    if !(halving_change <= CONVERGENCE_GATE) {
        return Err(OracleError::Convergence {
            coarse: end,
            fine,
            relative_change: halving_change,
        });
    }
    Ok(IntegrationResult {
        end,
        x_reached: spec.x_end,
        trajectory,
        halving_change,
        truncated_at: None,
    })
}

/// H·m(x)·(E − V(x)) with V taken from the single piece (left, inside,
/// right of the barrier) that contains `mid`. Evaluating one piece per
/// segment keeps rounding in x = x0 + i·h from sampling the other side of a
/// jump at 0 or a.
fn piece_q(
    mid: f64,
    e: f64,
    mp: &MassParams,
    pp: &PotentialProfile,
    u: &UnitSystem,
) -> impl Fn(f64) -> f64 {
    let inside = mid > 0.0 && mid < pp.a;
    let (offset, alpha, h) = (pp.offset(), pp.alpha, u.h_per_m0);
    let mp = *mp;
    move |x: f64| {
        let v = if inside { offset - alpha * x } else { 0.0 };
        h * mp.mass_at(x) * (e - v)
    }
}

/// Runs `integrate_equation` segment by segment, splitting at the region
/// boundaries 0 and a inside the interval.
fn integrate_segments<C>(
    spec: &IntegrationSpec,
    pp: &PotentialProfile,
    coefficients: C,
) -> Result<IntegrationResult, OracleError>
where
    C: Fn(f64, f64) -> (f64, f64),
{
    let dir = (spec.x_end - spec.x_start).signum();
    let mut cuts: Vec<f64> = [0.0, pp.a]
        .into_iter()
        .filter(|&c| (c - spec.x_start) * dir > 0.0 && (spec.x_end - c) * dir > 0.0)
        .collect();
    cuts.sort_by(|a, b| (a * dir).total_cmp(&(b * dir)));
    let mut bounds = vec![spec.x_start];
    bounds.extend(cuts);
    bounds.push(spec.x_end);

    let mut state = spec.initial;
    let mut trajectory: Vec<[f64; 3]> = Vec::new();
    let mut halving_change = 0.0f64;
    for w in bounds.windows(2) {
        let seg = if bounds.len() == 2 {
            *spec
        } else {
            IntegrationSpec::covering(w[0], w[1], spec.step, state)?
        };
        let seg = IntegrationSpec { initial: state, ..seg };
        let mid = 0.5 * (w[0] + w[1]);
        let r = integrate_equation(&seg, |x| coefficients(mid, x))?;
        let skip = usize::from(!trajectory.is_empty());
        trajectory.extend_from_slice(&r.trajectory[skip..]);
        halving_change = halving_change.max(r.halving_change);
        state = r.end;
    }
    Ok(IntegrationResult {
        end: state,
        x_reached: spec.x_end,
        trajectory,
        halving_change,
        truncated_at: None,
    })
}

/// Integrates the Schrödinger equation of the given profile (V linear on
/// (0, a), zero outside). Intervals crossing 0 or a are split there.
pub fn integrate(
    spec: &IntegrationSpec,
    equation: Equation,
    e: f64,
    mp: &MassParams,
    pp: &PotentialProfile,
    u: &UnitSystem,
) -> Result<IntegrationResult, OracleError> {
    match equation {
        Equation::Reduced => integrate_segments(spec, pp, |mid, x| (0.0, piece_q(mid, e, mp, pp, u)(x))),
        Equation::Full => {
            let mut spec = *spec;
            let mut truncated_at = None;
            if let Some(xs) = mp.mass_zero() {
                let (lo, hi) = if spec.x_start < spec.x_end {
                    (spec.x_start, spec.x_end)
                } else {
                    (spec.x_end, spec.x_start)
                };
                if xs > lo && xs < hi || xs == hi {
                    let dir = (spec.x_end - spec.x_start).signum();
                    let stop = xs - dir * 10.0 * spec.step;
                    if (stop - spec.x_start) * dir <= 0.0 {
                        return Err(OracleError::Spec(
                            "mass zero lies within 10 steps of the start".into(),
                        ));
                    }
                    spec = IntegrationSpec::covering(spec.x_start, stop, spec.step, spec.initial)?;
                    truncated_at = Some(stop);
                }
            }
            let m1 = mp.m1;
            let mut r = integrate_segments(&spec, pp, |mid, x| {
                (m1 / mp.mass_at(x), piece_q(mid, e, mp, pp, u)(x))
            })?;
            r.x_reached = spec.x_end;
            r.truncated_at = truncated_at;
            Ok(r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{default_barrier, make_units, ProfileKind};

    #[test]
    fn free_constant_mass_is_harmonic() {
        // M1 = 0 and V = 0 on the integration interval (x < 0)
        let u = make_units();
        let mp = MassParams::new(0.067, 0.0).unwrap();
        let pp = PotentialProfile::new(0.45, 0.1, 7.0, ProfileKind::Barrier).unwrap();
        let e = 0.2;
        let k = (u.h_per_m0 * mp.m0 * e).sqrt();
        let spec = IntegrationSpec::new(-6.0, 0.0, DEFAULT_STEP, (0.0, k)).unwrap();
        let r = integrate(&spec, Equation::Reduced, e, &mp, &pp, &u).unwrap();
        // φ = sin(k(x + 6))
        for p in r.trajectory.iter().step_by(997) {
            let want = (k * (p[0] + 6.0)).sin();
            assert!((p[1] - want).abs() < 1e-8, "x = {}", p[0]);
        }
        let want = ((k * 6.0).sin(), k * (k * 6.0).cos());
        assert!((r.end.0 - want.0).abs() < 1e-8 && (r.end.1 - want.1).abs() < 1e-8);
    }

    #[test]
    fn fourth_order_convergence() {
        // y″ = −y on [0, 2]: error ratio for halved steps ≈ 16
        let err = |h: f64| {
            let spec = IntegrationSpec::new(0.0, 2.0, h, (0.0, 1.0)).unwrap();
            let (_, end) = rk4(&|_x| (0.0, 1.0), 0.0, h, spec.steps(), (0.0, 1.0), false);
            (end.0 - 2f64.sin()).abs()
        };
        let order = (err(0.02) / err(0.01)).log2();
        assert!(order > 3.8, "measured order {order}");
    }

    #[test]
    fn spec_validation() {
        assert!(IntegrationSpec::new(0.0, 1.0, 0.3, (1.0, 0.0)).is_err());
        assert!(IntegrationSpec::new(0.0, 1.0, -0.1, (1.0, 0.0)).is_err());
        let s = IntegrationSpec::covering(0.0, 7.0, 3e-4, (1.0, 0.0)).unwrap();
        assert!(s.step <= 3e-4 && s.steps() > 0);
    }

    #[test]
    fn gate_rejects_under_resolved_runs() {
        let spec = IntegrationSpec::new(0.0, 10.0, 0.5, (1.0, 0.0)).unwrap();
        let err = integrate_equation(&spec, |_x| (0.0, 25.0)).unwrap_err();
        assert!(matches!(err, OracleError::Convergence { .. }));
    }

    #[test]
    fn full_equation_stops_before_mass_zero() {
        let u = make_units();
        let spec = IntegrationSpec::new(0.0, 7.0, DEFAULT_STEP, (1.0, 0.0)).unwrap();
        let r = integrate(&spec, Equation::Full, 0.1, &MassParams::GAAS, &default_barrier(), &u)
            .unwrap();
        let stop = r.truncated_at.unwrap();
        assert!((stop - (1.0 - 10.0 * DEFAULT_STEP)).abs() < 1e-12);
        assert_eq!(r.x_reached, stop);
    }
}
