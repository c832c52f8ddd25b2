//! Central-difference residuals of second-order linear ODEs
//! A(x)·f″ + B(x)·f′ + C(x)·f = 0 on uniformly sampled functions.

/// A function sampled on x_k = x0 + k·step.
#[derive(Debug, Clone, PartialEq)]
pub struct Sampled {
    pub x0: f64,
    pub step: f64,
    pub values: Vec<f64>,
}

impl Sampled {
    pub fn from_fn(x0: f64, step: f64, points: usize, f: impl Fn(f64) -> f64) -> Self {
        Self {
            x0,
            step,
            values: (0..points).map(|k| f(x0 + step * k as f64)).collect(),
        }
    }

    pub fn x(&self, k: usize) -> f64 {
        self.x0 + self.step * k as f64
    }
}

/// Coefficients (A, B, C) of A·f″ + B·f′ + C·f = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LinearOde {
    /// f″ − x·f = 0.
    Airy,
    /// z·f″ + (c − z)·f′ − b·f = 0.
    Kummer { b: f64, c: f64 },
    /// f″ − (a1·(x + shift)² + λ)·f = 0.
    ShiftedOscillator { a1: f64, shift: f64, lambda: f64 },
    /// f″ + q·f = 0 with q = H·m(x)·(E − V(x)) given as the quadratic
    /// −(a1·x² + a2·x + a3).
    Quadratic { a1: f64, a2: f64, a3: f64 },
}

impl LinearOde {
    pub fn coefficients(&self, x: f64) -> (f64, f64, f64) {
        match *self {
            LinearOde::Airy => (1.0, 0.0, -x),
            LinearOde::Kummer { b, c } => (x, c - x, -b),
            LinearOde::ShiftedOscillator { a1, shift, lambda } => {
                let xi = x + shift;
                (1.0, 0.0, -(a1 * xi * xi + lambda))
            }
            LinearOde::Quadratic { a1, a2, a3 } => (1.0, 0.0, -((a1 * x + a2) * x + a3)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    /// max over interior points of |A·f″ + B·f′ + C·f| / scale.
    pub max_residual: f64,
    /// max(1, max|f| · max coefficient magnitude).
    pub scale: f64,
    /// Truncation estimate (step²/12)·max|A|·max|f⁗| / scale.
    pub truncation_estimate: f64,
    /// The truncation estimate exceeds the tolerance budget.
    pub inconclusive: bool,
}

impl ResidualReport {
    /// Residual within tolerance and the grid fine enough to tell.
    pub fn passes(&self, tolerance: f64) -> bool {
        !self.inconclusive && self.max_residual <= tolerance
    }
}

/// Scaled central-difference residual; `budget` is the tolerance the
/// caller intends to test against. Requires at least 5 samples.
pub fn ode_residual(f: &Sampled, equation: &LinearOde, budget: f64) -> Option<ResidualReport> {
    let v = &f.values;
    let n = v.len();
    if n < 5 || !(f.step > 0.0) {
        return None;
    }
    let h = f.step;
    let max_f = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut max_coef = 0.0f64;
    let mut max_a = 0.0f64;
    for k in 0..n {
        let (a, b, c) = equation.coefficients(f.x(k));
        max_coef = max_coef.max(a.abs()).max(b.abs()).max(c.abs());
        max_a = max_a.max(a.abs());
    }
    let scale = (max_f * max_coef).max(1.0);
    let mut worst = 0.0f64;
    for k in 1..n - 1 {
        let (a, b, c) = equation.coefficients(f.x(k));
        let d2 = (v[k + 1] - 2.0 * v[k] + v[k - 1]) / (h * h);
        let d1 = (v[k + 1] - v[k - 1]) / (2.0 * h);
        worst = worst.max((a * d2 + b * d1 + c * v[k]).abs() / scale);
    }
    let mut max_d4 = 0.0f64;
    for k in 2..n - 2 {
        let d4 = (v[k + 2] - 4.0 * v[k + 1] + 6.0 * v[k] - 4.0 * v[k - 1] + v[k - 2]) / h.powi(4);
        max_d4 = max_d4.max(d4.abs());
    }
    let truncation_estimate = h * h / 12.0 * max_a * max_d4 / scale;
    Some(ResidualReport {
        max_residual: worst,
        scale,
        truncation_estimate,
        inconclusive: truncation_estimate > budget,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sfun;

    #[test]
    fn zero_function() {
        let f = Sampled::from_fn(0.0, 0.1, 10, |_| 0.0);
        let r = ode_residual(&f, &LinearOde::Airy, 1e-6).unwrap();
        assert_eq!(r.max_residual, 0.0);
        assert!(r.passes(1e-6));
    }

    #[test]
    fn airy_sample_passes() {
        let f = Sampled::from_fn(-5.0, 1e-3, 7001, |y| sfun::airy_ai(y).unwrap().value);
        let r = ode_residual(&f, &LinearOde::Airy, 1e-6).unwrap();
        assert!(r.passes(1e-6), "{r:?}");
    }

    #[test]
    fn wrong_equation_fails() {
        let f = Sampled::from_fn(-5.0, 1e-3, 7001, |y| sfun::airy_bi(y).unwrap().value);
        let r = ode_residual(&f, &LinearOde::Kummer { b: 0.3, c: 0.5 }, 1e-6).unwrap();
        assert!(!r.passes(1e-6));
    }

    #[test]
    fn coarse_grid_is_inconclusive() {
        let f = Sampled::from_fn(0.0, 0.5, 20, |x| (5.0 * x).sin());
        let r = ode_residual(&f, &LinearOde::ShiftedOscillator { a1: 0.0, shift: 0.0, lambda: -25.0 }, 1e-6)
            .unwrap();
        assert!(r.inconclusive);
        assert!(ode_residual(&Sampled::from_fn(0.0, 0.1, 4, |x| x), &LinearOde::Airy, 1e-6).is_none());
    }
}
