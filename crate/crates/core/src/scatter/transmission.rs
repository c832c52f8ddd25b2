//! Transmission coefficient of the barrier.
//!
//! T_solve = (b5/b1)²: the squared ratio of transmitted to incident Ai
//! amplitudes from the continuity solve, with no flux prefactor (the
//! exterior solutions are real Airy functions, so no current-based
//! normalisation is defined). T_paper is the verbatim closed form of
//! [`super::fidelity`], recorded next to it.

use std::fmt;

use crate::model::{MassParams, PotentialProfile, SignConvention, UnitSystem};

use super::fidelity::{paper_t, AbbreviationSet};
use super::matching::{solve_matching, MatchingSystem};
use super::ScatterError;

/// Condition estimates above this mark a row as ill-conditioned.
pub const ILL_CONDITIONED: f64 = 1e12;
/// Relative T_paper/T_solve mismatch above this marks a row.
pub const PAPER_GAP: f64 = 1e-3;

/// Per-row diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Flags {
    /// |b1| vanished; T_solve is reported as +∞.
    pub resonance: bool,
    pub ill_conditioned: bool,
    /// Coefficients use the printed sign of a3.
    pub printed_signs: bool,
    /// The closed form could not be evaluated (T_paper is NaN).
    pub paper_failed: bool,
    /// T_paper differs from T_solve by more than [`PAPER_GAP`].
    pub paper_gap: bool,
}

impl fmt::Display for Flags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = [
            (self.resonance, "resonance"),
            (self.ill_conditioned, "ill_conditioned"),
            (self.printed_signs, "printed_signs"),
            (self.paper_failed, "paper_failed"),
            (self.paper_gap, "paper_gap"),
        ];
        let set: Vec<&str> = names.iter().filter(|(on, _)| *on).map(|(_, n)| *n).collect();
        if set.is_empty() {
            f.write_str("ok")
        } else {
            f.write_str(&set.join("|"))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmissionOptions {
    pub signs: SignConvention,
    /// Transmitted amplitude; T_solve does not depend on it.
    pub b5: f64,
}

impl Default for TransmissionOptions {
    fn default() -> Self {
        Self {
            signs: SignConvention::Expanded,
            b5: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmissionResult {
    pub energy: f64,
    pub t_solve: f64,
    pub t_paper: f64,
    pub t1: f64,
    pub t2: f64,
    /// b1 … b5.
    pub amplitudes: [f64; 5],
    pub residual: f64,
    pub condition_estimate: f64,
    pub flags: Flags,
}

impl TransmissionResult {
    /// |T_paper − T_solve| / T_solve.
    pub fn paper_discrepancy(&self) -> f64 {
        ((self.t_paper - self.t_solve) / self.t_solve).abs()
    }
}

/// Transmission at energy E > 0 with the expanded signs and b5 = 1.
pub fn transmission(
    e: f64,
    mp: &MassParams,
    pp: &PotentialProfile,
    u: &UnitSystem,
) -> Result<TransmissionResult, ScatterError> {
    transmission_with(e, mp, pp, u, TransmissionOptions::default())
}

pub fn transmission_with(
    e: f64,
    mp: &MassParams,
    pp: &PotentialProfile,
    u: &UnitSystem,
    opts: TransmissionOptions,
) -> Result<TransmissionResult, ScatterError> {
    let sys = MatchingSystem::assemble(e, mp, pp, u, opts.signs, opts.b5)?;
    let sol = solve_matching(&sys)?;
    let [b1, .., b5] = sol.amplitudes;
    let t_solve = if sol.resonance {
        f64::INFINITY
    } else {
        let r = b5 / b1;
        r * r
    };
    let mut flags = Flags {
        resonance: sol.resonance,
        ill_conditioned: sol.condition_estimate > ILL_CONDITIONED,
        printed_signs: opts.signs == SignConvention::Printed,
        ..Flags::default()
    };
    let (t_paper, t1, t2) = match AbbreviationSet::new(&sys.coeffs) {
        Ok(set) => {
            let p = paper_t(&set, &sys, opts.b5);
            (p.t, p.t1, p.t2)
        }
        Err(_) => (f64::NAN, f64::NAN, f64::NAN),
    };
    flags.paper_failed = !t_paper.is_finite();
    flags.paper_gap = !(((t_paper - t_solve) / t_solve).abs() <= PAPER_GAP);
    Ok(TransmissionResult {
        energy: e,
        t_solve,
        t_paper,
        t1,
        t2,
        amplitudes: sol.amplitudes,
        residual: sol.residual,
        condition_estimate: sol.condition_estimate,
        flags,
    })
}

/// T_solve and T_paper at b5 = 1 and b5 = `scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RescalingEvidence {
    pub energy: f64,
    pub scale: f64,
    pub t_solve: (f64, f64),
    pub t_paper: (f64, f64),
}

impl RescalingEvidence {
    /// Relative change of T_solve under the rescaling.
    pub fn solve_change(&self) -> f64 {
        ((self.t_solve.1 - self.t_solve.0) / self.t_solve.0).abs()
    }

    /// T_paper(b5 = 1) / T_paper(b5 = scale); scale⁴ for the printed form.
    pub fn paper_ratio(&self) -> f64 {
        self.t_paper.0 / self.t_paper.1
    }
}

pub fn rescaling_evidence(
    e: f64,
    mp: &MassParams,
    pp: &PotentialProfile,
    u: &UnitSystem,
    scale: f64,
) -> Result<RescalingEvidence, ScatterError> {
    let base = transmission_with(e, mp, pp, u, TransmissionOptions::default())?;
    let scaled = transmission_with(
        e,
        mp,
        pp,
        u,
        TransmissionOptions {
            b5: scale,
            ..TransmissionOptions::default()
        },
    )?;
    Ok(RescalingEvidence {
        energy: e,
        scale,
        t_solve: (base.t_solve, scaled.t_solve),
        t_paper: (base.t_paper, scaled.t_paper),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{default_barrier, make_units};

    #[test]
    fn high_energy_tends_to_one() {
        let u = make_units();
        let pp = default_barrier();
        let r = transmission(5.0 * pp.v0, &MassParams::GAAS, &pp, &u).unwrap();
        assert!(r.t_solve > 0.0 && r.t_solve.is_finite());
        assert!(r.residual < 1e-9);
        assert_eq!(r.amplitudes[4], 1.0);
    }

    #[test]
    fn t_solve_is_invariant_under_b5() {
        let u = make_units();
        let ev = rescaling_evidence(0.1, &MassParams::GAAS, &default_barrier(), &u, 2.0).unwrap();
        assert!(ev.solve_change() < 1e-12);
        assert!((ev.paper_ratio() - 16.0).abs() < 1e-9);
    }

    #[test]
    fn printed_signs_are_flagged() {
        let u = make_units();
        let opts = TransmissionOptions {
            signs: SignConvention::Printed,
            b5: 1.0,
        };
        let r = transmission_with(0.1, &MassParams::GAAS, &default_barrier(), &u, opts).unwrap();
        assert!(r.flags.printed_signs);
        assert!(r.flags.to_string().contains("printed_signs"));
    }

    #[test]
    fn flags_render() {
        assert_eq!(Flags::default().to_string(), "ok");
        let f = Flags {
            resonance: true,
            paper_gap: true,
            ..Flags::default()
        };
        assert_eq!(f.to_string(), "resonance|paper_gap");
    }
}
