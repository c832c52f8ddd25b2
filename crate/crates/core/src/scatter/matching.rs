//! The continuity system at x = 0 and x = a.
//!
//! Unknowns (b1, b2, b3, b4) with the transmitted amplitude b5 given:
//!
//! ```text
//! Ai(y1)·b1   + Bi(y1)·b2   − M(0)·b3  − U(0)·b4  = 0
//! k·Ai′(y1)·b1 + k·Bi′(y1)·b2 − M′(0)·b3 − U′(0)·b4 = 0
//!                              M(a)·b3  + U(a)·b4  = b5·Ai(y3)
//!                              M′(a)·b3 + U′(a)·b4 = b5·k·Ai′(y3)
//! ```
//!
//! where M, U denote the region-II basis functions (with the Gaussian
//! factor) and primes are x-derivatives. Columns differ in magnitude by up
//! to e^{z}, so the solve equilibrates columns before LU with partial
//! pivoting; the 1-norm condition number of the equilibrated matrix is
//! reported.

use nalgebra::{Matrix4, Vector4};

use crate::model::{
    airy_scale, barrier_coefficients_with, MassParams, PotentialProfile, RegionCoefficients,
    SignConvention, UnitSystem,
};
use crate::sfun::{airy, AiryValues};

use super::region::{BasisPoint, RegionIIBasis};
use super::ScatterError;

/// Resonance threshold: |b1| below this fraction of the largest amplitude.
pub const RESONANCE_THRESHOLD: f64 = 1e-12;

/// Everything evaluated to build the system; reused by the fidelity path.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchingSystem {
    pub energy: f64,
    pub coeffs: RegionCoefficients,
    /// (H·E·M1)^{1/3}.
    pub k: f64,
    pub airy_y1: AiryValues,
    pub airy_y3: AiryValues,
    pub basis_at_0: BasisPoint,
    pub basis_at_a: BasisPoint,
    pub b5: f64,
    pub matrix: Matrix4<f64>,
    pub rhs: Vector4<f64>,
}

/// Solved amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchSolution {
    /// b1 … b5.
    pub amplitudes: [f64; 5],
    /// 1-norm condition number of the column-equilibrated matrix.
    pub condition_estimate: f64,
    /// Largest continuity mismatch, each row scaled by max(1, |terms|).
    pub residual: f64,
    /// |b1| below [`RESONANCE_THRESHOLD`] relative to the amplitudes.
    pub resonance: bool,
}

/// Builds the continuity system at energy E with b5 = 1.
pub fn assemble_matching(
    e: f64,
    mp: &MassParams,
    pp: &PotentialProfile,
    u: &UnitSystem,
) -> Result<MatchingSystem, ScatterError> {
    MatchingSystem::assemble(e, mp, pp, u, SignConvention::Expanded, 1.0)
}

impl MatchingSystem {
    pub fn assemble(
        e: f64,
        mp: &MassParams,
        pp: &PotentialProfile,
        u: &UnitSystem,
        signs: SignConvention,
        b5: f64,
    ) -> Result<Self, ScatterError> {
        let coeffs = barrier_coefficients_with(e, mp, pp, u, signs)?;
        let k = airy_scale(e, mp, u)?;
        let (y1, y3) = (
            coeffs.y1.expect("barrier has y1"),
            coeffs.y3.expect("barrier has y3"),
        );
        let airy_y1 = airy(y1)?;
        let airy_y3 = airy(y3)?;
        let basis = RegionIIBasis::new(&coeffs);
        let basis_at_0 = basis.eval(0.0)?;
        let basis_at_a = basis.eval(pp.a)?;
        let (m0, u0, ma, ua) = (
            basis_at_0.m,
            basis_at_0.u,
            basis_at_a.m,
            basis_at_a.u,
        );
        #[rustfmt::skip]
        let matrix = Matrix4::new(
            airy_y1.ai.value,          airy_y1.bi.value,          -m0.value,      -u0.value,
            k * airy_y1.ai.derivative, k * airy_y1.bi.derivative, -m0.derivative, -u0.derivative,
            0.0,                       0.0,                       ma.value,       ua.value,
            0.0,                       0.0,                       ma.derivative,  ua.derivative,
        );
        let rhs = Vector4::new(
            0.0,
            0.0,
            b5 * airy_y3.ai.value,
            b5 * k * airy_y3.ai.derivative,
        );
        Ok(Self {
            energy: e,
            coeffs,
            k,
            airy_y1,
            airy_y3,
            basis_at_0,
            basis_at_a,
            b5,
            matrix,
            rhs,
        })
    }

    /// Row-wise continuity mismatch of candidate amplitudes (b1 … b4).
    pub fn residual(&self, x: &Vector4<f64>) -> f64 {
        (0..4)
            .map(|i| {
                let mut scale = self.rhs[i].abs().max(1.0);
                let mut acc = -self.rhs[i];
                for j in 0..4 {
                    let term = self.matrix[(i, j)] * x[j];
                    scale = scale.max(term.abs());
                    acc += term;
                }
                acc.abs() / scale
            })
            .fold(0.0, f64::max)
    }
}

fn one_norm(m: &Matrix4<f64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Solves the system for (b1, b2, b3, b4).
pub fn solve_matching(sys: &MatchingSystem) -> Result<MatchSolution, ScatterError> {
    let singular = || ScatterError::Singular { energy: sys.energy };
    let mut scales = [1.0; 4];
    let mut scaled = sys.matrix;
    for j in 0..4 {
        let big = sys.matrix.column(j).amax();
        if !(big > 0.0 && big.is_finite()) {
            return Err(singular());
        }
        scales[j] = 1.0 / big;
        scaled.column_mut(j).scale_mut(scales[j]);
    }
    let lu = scaled.lu();
    let y = lu.solve(&sys.rhs).ok_or_else(singular)?;
    let inverse = lu.try_inverse().ok_or_else(singular)?;
    let condition_estimate = one_norm(&scaled) * one_norm(&inverse);
    let x = Vector4::from_fn(|i, _| y[i] * scales[i]);
    if x.iter().any(|v| !v.is_finite()) || !condition_estimate.is_finite() {
        return Err(singular());
    }
    let biggest = x.amax().max(sys.b5.abs());
    Ok(MatchSolution {
        amplitudes: [x[0], x[1], x[2], x[3], sys.b5],
        condition_estimate,
        residual: sys.residual(&x),
        resonance: x[0].abs() < RESONANCE_THRESHOLD * biggest,
    })
}
