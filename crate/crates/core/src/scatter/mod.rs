//! Scattering off the triangular barrier: region waves, the four
//! continuity equations at x = 0 and x = a, the transmission coefficient
//! and parameter sweeps.
//!
//! The canonical transmission is T = (b5/b1)² from a direct solve of the
//! continuity system with the transmitted amplitude b5 fixed. A verbatim
//! implementation of the commonly printed closed form (built from the
//! f/g abbreviation set) runs alongside for comparison, see [`fidelity`].

pub mod fidelity;
pub mod matching;
pub mod region;
pub mod sweep;
pub mod transmission;

pub use fidelity::{AbbreviationGaps, AbbreviationSet, PaperT};
pub use matching::{assemble_matching, solve_matching, MatchSolution, MatchingSystem};
pub use region::{
    region_i_wave, region_ii_wave, region_iii_wave, BasisPoint, RegionIIBasis, WavePoint,
};
pub use sweep::{linspace, sweep, Axis, SweepRow, SweepSpec};
pub use transmission::{
    rescaling_evidence, transmission, transmission_with, Flags, RescalingEvidence,
    TransmissionOptions, TransmissionResult, ILL_CONDITIONED, PAPER_GAP,
};

use thiserror::Error;

use crate::model::ModelError;
use crate::sfun::SpecialFunctionError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScatterError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    SpecialFunction(#[from] SpecialFunctionError),
    #[error("continuity system is singular at E = {energy} eV")]
    Singular { energy: f64 },
    #[error("invalid sweep grid: {0}")]
    Grid(String),
}
