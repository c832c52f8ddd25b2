//! Parameter sweeps of the transmission over E, V0 or a.
//!
//! Grid points are independent and evaluated in parallel; rows come back
//! in grid order, and a failing point is recorded in its row without
//! affecting the others.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::model::{MassParams, PotentialProfile, ProfileKind, UnitSystem};

use super::transmission::{transmission_with, TransmissionOptions, TransmissionResult};
use super::ScatterError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    /// Energy in eV.
    E,
    /// Barrier height in eV.
    V0,
    /// Barrier width in nm.
    A,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::E => "E",
            Axis::V0 => "V0",
            Axis::A => "a",
        })
    }
}

impl FromStr for Axis {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "E" => Ok(Axis::E),
            "V0" => Ok(Axis::V0),
            "a" => Ok(Axis::A),
            other => Err(format!("unknown axis '{other}' (E|V0|a)")),
        }
    }
}

/// `points` evenly spaced values from `min` to `max` inclusive.
pub fn linspace(min: f64, max: f64, points: usize) -> Result<Vec<f64>, ScatterError> {
    if points == 0 {
        return Err(ScatterError::Grid("points must be >= 1".into()));
    }
    if !(min.is_finite() && max.is_finite()) {
        return Err(ScatterError::Grid("bounds must be finite".into()));
    }
    if points == 1 {
        return Ok(vec![min]);
    }
    if min >= max {
        return Err(ScatterError::Grid(format!(
            "min ({min}) must be below max ({max})"
        )));
    }
    let step = (max - min) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| if i + 1 == points { max } else { min + step * i as f64 })
        .collect())
}

/// A sweep over one axis with the other parameters fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis: Axis,
    pub grid: Vec<f64>,
    /// Energy when the axis is not E.
    pub energy: f64,
    pub mass: MassParams,
    pub v0: f64,
    pub a: f64,
    /// Fixed slope; `None` uses α = V0/a at every grid point.
    pub alpha: Option<f64>,
    pub options: TransmissionOptions,
}

impl SweepSpec {
    /// (E, profile) for one grid value.
    pub fn point(&self, value: f64) -> Result<(f64, PotentialProfile), ScatterError> {
        let (e, v0, a) = match self.axis {
            Axis::E => (value, self.v0, self.a),
            Axis::V0 => (self.energy, value, self.a),
            Axis::A => (self.energy, self.v0, value),
        };
        let alpha = self.alpha.unwrap_or(v0 / a);
        Ok((e, PotentialProfile::new(v0, alpha, a, ProfileKind::Barrier)?))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub index: usize,
    pub axis_value: f64,
    pub result: Result<TransmissionResult, ScatterError>,
}

/// Evaluates every grid point; never aborts on per-point failures.
pub fn sweep(spec: &SweepSpec, u: &UnitSystem) -> Vec<SweepRow> {
    spec.grid
        .par_iter()
        .enumerate()
        .map(|(index, &axis_value)| SweepRow {
            index,
            axis_value,
            result: spec
                .point(axis_value)
                .and_then(|(e, pp)| transmission_with(e, &spec.mass, &pp, u, spec.options)),
        })
        .collect()
}
