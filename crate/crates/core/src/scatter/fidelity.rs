//! Verbatim closed-form transmission built from the f/g abbreviation set,
//! kept for comparison against the canonical linear solve.
//!
//! With q = √a1, κ = λ/q, Y the region-II coordinate at the matching
//! point (y2 at x = 0, y4 at x = a), Z = q·Y² and P = q·Y·e^{−Z/2}:
//!
//! ```text
//! f1 = P·M((1+κ)/4; ½; Z)              f2 = P·M((5+κ)/4; 3/2; Z)
//! f3 = π·P·M̄((1+κ)/4; ½; Z)/Γ(¾ + κ/4)
//! f4 = π·P·(1+κ)·M̄((5+κ)/4; 3/2; Z)/(2·Γ(¾ + κ/4))
//! f5 = π·P·M̄((3+κ)/4; 3/2; Z)/Γ(¼ + κ/4)
//! f6 = π·P·(3+κ)·M̄((7+κ)/4; 5/2; Z)/(2·Γ(¼ + κ))
//! f1′ = f1/(q·Y)   f3′ = f3/(q·Y)   f5′ = f5/(a1^{1/4}·Y)
//! f7 = f3′ − f5′   f8 = f2 − f1     f9 = f4 + f5 − f3 − f6
//! ```
//!
//! (csc(π/2) = 1 is dropped.) The g's are the same expressions at y4, and
//!
//! ```text
//! t1 = k·(g1′·g9 − g8·g7)/π
//! t2 = [g9·Ai(y3) − k·g7·Ai′(y3)]·[k·f1′·Bi′(y1) − f8·Bi(y1)]
//!    · [k·g1′·Ai′(y3) − g8·Ai(y3)]·[k·f7·Bi′(y1) − f9·Bi(y1)]
//! T_paper = (t1/t2)²
//! ```
//!
//! Only f1′ coincides with the corresponding entry of the continuity
//! matrix in general; f8 lacks the factor 4b of the chain-rule derivative,
//! and the f7/f9 column differs as well. t2 has degree four in the
//! basis functions against degree two in t1, and the region-III factors
//! appear twice, so T_paper scales as b5⁻⁴ when the transmitted amplitude
//! b5 multiplying Ai(y3), Ai′(y3) is rescaled. [`AbbreviationGaps`]
//! quantifies these discrepancies.

use std::f64::consts::PI;

use crate::model::RegionCoefficients;
use crate::sfun::{kummer_m, kummer_m_regularized, rgamma, KummerParams, SpecialFunctionError};

use super::matching::MatchingSystem;

/// f1 … f9 with f1′, f3′, f5′ at one matching point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abbreviations {
    /// f1 … f9 (index 0 ↔ f1).
    pub f: [f64; 9],
    pub f1p: f64,
    pub f3p: f64,
    pub f5p: f64,
}

/// The f-set at y2 and the g-set at y4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbbreviationSet {
    pub f: Abbreviations,
    pub g: Abbreviations,
}

fn mk(b: f64, c: f64, z: f64) -> Result<f64, SpecialFunctionError> {
    kummer_m(KummerParams::new(b, c, z))
}

fn mr(b: f64, c: f64, z: f64) -> Result<f64, SpecialFunctionError> {
    kummer_m_regularized(KummerParams::new(b, c, z))
}

impl Abbreviations {
    pub fn at(coeffs: &RegionCoefficients, y: f64) -> Result<Self, SpecialFunctionError> {
        let q = coeffs.a1.sqrt();
        let kappa = coeffs.lambda / q;
        let z = q * y * y;
        let p = q * y * (-0.5 * z).exp();
        let f1 = p * mk(0.25 * (1.0 + kappa), 0.5, z)?;
        let f2 = p * mk(0.25 * (5.0 + kappa), 1.5, z)?;
        let f3 = PI * p * mr(0.25 * (1.0 + kappa), 0.5, z)? * rgamma(0.75 + 0.25 * kappa);
        let f4 = PI * p * (1.0 + kappa) * mr(0.25 * (5.0 + kappa), 1.5, z)?
            * rgamma(0.75 + 0.25 * kappa)
            / 2.0;
        let f5 = PI * p * mr(0.25 * (3.0 + kappa), 1.5, z)? * rgamma(0.25 + 0.25 * kappa);
        let f6 = PI * p * (3.0 + kappa) * mr(0.25 * (7.0 + kappa), 2.5, z)? * rgamma(0.25 + kappa)
            / 2.0;
        let f1p = f1 / (q * y);
        let f3p = f3 / (q * y);
        let f5p = f5 / (coeffs.a1.sqrt().sqrt() * y);
        let f7 = f3p - f5p;
        let f8 = f2 - f1;
        let f9 = f4 + f5 - f3 - f6;
        Ok(Self {
            f: [f1, f2, f3, f4, f5, f6, f7, f8, f9],
            f1p,
            f3p,
            f5p,
        })
    }

    pub fn f7(&self) -> f64 {
        self.f[6]
    }
    pub fn f8(&self) -> f64 {
        self.f[7]
    }
    pub fn f9(&self) -> f64 {
        self.f[8]
    }
}

impl AbbreviationSet {
    pub fn new(coeffs: &RegionCoefficients) -> Result<Self, SpecialFunctionError> {
        Ok(Self {
            f: Abbreviations::at(coeffs, coeffs.y2)?,
            g: Abbreviations::at(coeffs, coeffs.y4)?,
        })
    }
}

/// The closed-form pieces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PaperT {
    pub t1: f64,
    pub t2: f64,
    /// (t1/t2)².
    pub t: f64,
}

/// Evaluates t1, t2 with the region-III amplitude b5 multiplying Ai(y3)
/// and Ai′(y3), as it does in the continuity equations.
pub fn paper_t(set: &AbbreviationSet, sys: &MatchingSystem, b5: f64) -> PaperT {
    let k = sys.k;
    let (f, g) = (&set.f, &set.g);
    let ai3 = b5 * sys.airy_y3.ai.value;
    let aip3 = b5 * sys.airy_y3.ai.derivative;
    let bi1 = sys.airy_y1.bi.value;
    let bip1 = sys.airy_y1.bi.derivative;
    let t1 = k * (g.f1p * g.f9() - g.f8() * g.f7()) / PI;
    let t2 = (g.f9() * ai3 - k * g.f7() * aip3)
        * (k * f.f1p * bip1 - f.f8() * bi1)
        * (k * g.f1p * aip3 - g.f8() * ai3)
        * (k * f.f7() * bip1 - f.f9() * bi1);
    let ratio = t1 / t2;
    PaperT {
        t1,
        t2,
        t: ratio * ratio,
    }
}

/// Relative mismatch between abbreviations and the continuity-matrix
/// entries they are meant to represent (0 means identical).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbbreviationGaps {
    /// f1′ vs the M column value at x = 0.
    pub f1p: f64,
    /// f8 vs the M column derivative at x = 0.
    pub f8: f64,
    /// f7 vs the U column value at x = 0.
    pub f7: f64,
    /// f9 vs the U column derivative at x = 0.
    pub f9: f64,
    /// The Kummer parameter with λ/(4·a1) in place of λ/√a1, minus b.
    pub b_param_shift: f64,
}

fn gap(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

impl AbbreviationGaps {
    pub fn new(set: &AbbreviationSet, sys: &MatchingSystem) -> Self {
        let m = sys.basis_at_0.m;
        let u = sys.basis_at_0.u;
        Self {
            f1p: gap(set.f.f1p, m.value),
            f8: gap(set.f.f8(), m.derivative),
            f7: gap(set.f.f7(), u.value),
            f9: gap(set.f.f9(), u.derivative),
            b_param_shift: sys.coeffs.b_param_4a1() - sys.coeffs.b_param(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{default_barrier, make_units, MassParams, SignConvention};

    fn system(e: f64) -> MatchingSystem {
        MatchingSystem::assemble(
            e,
            &MassParams::GAAS,
            &default_barrier(),
            &make_units(),
            SignConvention::Expanded,
            1.0,
        )
        .unwrap()
    }

    #[test]
    fn abbreviation_identities_hold_by_construction() {
        let sys = system(0.1);
        let set = AbbreviationSet::new(&sys.coeffs).unwrap();
        for a in [set.f, set.g] {
            assert_eq!(a.f7(), a.f3p - a.f5p);
            assert_eq!(a.f8(), a.f[1] - a.f[0]);
            assert_eq!(a.f9(), a.f[3] + a.f[4] - a.f[2] - a.f[5]);
        }
    }

    #[test]
    fn f1_prime_equals_matrix_entry() {
        for &e in &[0.05, 0.1, 0.6] {
            let sys = system(e);
            let set = AbbreviationSet::new(&sys.coeffs).unwrap();
            let gaps = AbbreviationGaps::new(&set, &sys);
            assert!(gaps.f1p < 1e-14, "E = {e}: {}", gaps.f1p);
            // g1′ likewise at x = a
            assert!(gap(set.g.f1p, sys.basis_at_a.m.value) < 1e-14);
        }
    }

    #[test]
    fn f8_matches_only_when_4b_is_one() {
        // λ = 0 ⇒ b = 1/4 ⇒ the chain-rule derivative equals f8
        let c = RegionCoefficients {
            a1: 0.3,
            a2: -0.4,
            a3: 0.4 * 0.4 / (4.0 * 0.3),
            lambda: 0.0,
            y1: None,
            y2: -0.4 / 0.6,
            y3: None,
            y4: 5.0 - 0.4 / 0.6,
        };
        let set = AbbreviationSet::new(&c).unwrap();
        let basis = crate::scatter::RegionIIBasis::new(&c).eval(0.0).unwrap();
        assert!(gap(set.f.f8(), basis.m.derivative) < 1e-13);
        let sys = system(0.1);
        let set = AbbreviationSet::new(&sys.coeffs).unwrap();
        let gaps = AbbreviationGaps::new(&set, &sys);
        assert!(gaps.f8 > 1e-3);
    }

    #[test]
    fn paper_t_scales_as_inverse_fourth_power_of_b5() {
        let sys = system(0.1);
        let set = AbbreviationSet::new(&sys.coeffs).unwrap();
        let one = paper_t(&set, &sys, 1.0);
        let two = paper_t(&set, &sys, 2.0);
        assert!((one.t / two.t - 16.0).abs() < 1e-10);
    }
}
