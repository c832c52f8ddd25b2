//! Flat `key = value` run configuration.
//!
//! Lines are `key = value`; `#` starts a comment; blank lines are ignored.
//! Files and `--key value` flags are applied in that order onto the
//! command's defaults, so flags win. [`RunConfig::render`] writes every key
//! in a fixed order and [`RunConfig::parse`] reads it back exactly.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::model::{MassParams, PotentialProfile, ProfileKind, SignConvention};
use crate::scatter::{linspace, Axis, SweepSpec, TransmissionOptions};

use super::CliError;

/// Slope of the profile: a fixed value or derived from the other fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Alpha {
    /// V0/a for barriers (re-derived at every sweep point), 0.01·V0 for
    /// the bound-state parameter set.
    Auto,
    Value(f64),
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Auto => f.write_str("auto"),
            Alpha::Value(v) => write!(f, "{v:?}"),
        }
    }
}

/// Which verbatim closed-form variants to exercise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fidelity {
    #[default]
    None,
    /// Solve with the printed sign of a3.
    Signs,
    /// Report the b5-rescaling behaviour of the closed form.
    T2,
    All,
}

impl Fidelity {
    pub fn printed_signs(self) -> bool {
        matches!(self, Fidelity::Signs | Fidelity::All)
    }

    pub fn rescaling_report(self) -> bool {
        matches!(self, Fidelity::T2 | Fidelity::All)
    }
}

impl fmt::Display for Fidelity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fidelity::None => "none",
            Fidelity::Signs => "signs",
            Fidelity::T2 => "t2",
            Fidelity::All => "all",
        })
    }
}

impl FromStr for Fidelity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Fidelity::None),
            "signs" => Ok(Fidelity::Signs),
            "t2" => Ok(Fidelity::T2),
            "all" => Ok(Fidelity::All),
            other => Err(format!("unknown fidelity mode '{other}' (signs|t2|all|none)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub v0: f64,
    pub alpha: Alpha,
    pub a: f64,
    pub kind: ProfileKind,
    pub m0: f64,
    pub m1: f64,
    /// Energy for V0 and a sweeps, in eV.
    pub energy: f64,
    pub axis: Axis,
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub out: Option<PathBuf>,
    pub fidelity: Fidelity,
}

/// Keys in render order.
pub const KEYS: [&str; 13] = [
    "V0_eV",
    "alpha_eV_per_nm",
    "a_nm",
    "kind",
    "M0_m0",
    "M1_m0_per_nm",
    "E_eV",
    "axis",
    "min",
    "max",
    "points",
    "out",
    "paper_fidelity",
];

impl Default for RunConfig {
    /// Barrier defaults: V0 = 0.45 eV, a = 7 nm, M0 = M1 = 0.067, E sweep
    /// 0.02 → 1.0 eV over 200 points.
    fn default() -> Self {
        Self {
            v0: 0.45,
            alpha: Alpha::Auto,
            a: 7.0,
            kind: ProfileKind::Barrier,
            m0: MassParams::GAAS.m0,
            m1: MassParams::GAAS.m1,
            energy: 0.1,
            axis: Axis::E,
            min: 0.02,
            max: 1.0,
            points: 200,
            out: None,
            fidelity: Fidelity::None,
        }
    }
}

fn number(key: &str, value: &str) -> Result<f64, CliError> {
    value
        .parse::<f64>()
        .map_err(|_| CliError::Config(format!("{key}: '{value}' is not a number")))
}

impl RunConfig {
    /// Defaults of the bound-state command (a well).
    pub fn bound_defaults() -> Self {
        Self {
            kind: ProfileKind::Well,
            ..Self::default()
        }
    }

    /// Sets one key from its text form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let value = value.trim();
        match key {
            "V0_eV" => self.v0 = number(key, value)?,
            "alpha_eV_per_nm" => {
                self.alpha = if value == "auto" {
                    Alpha::Auto
                } else {
                    Alpha::Value(number(key, value)?)
                }
            }
            "a_nm" => self.a = number(key, value)?,
            "kind" => self.kind = value.parse().map_err(|e| CliError::Config(format!("kind: {e}")))?,
            "M0_m0" => self.m0 = number(key, value)?,
            "M1_m0_per_nm" => self.m1 = number(key, value)?,
            "E_eV" => self.energy = number(key, value)?,
            "axis" => self.axis = value.parse().map_err(CliError::Config)?,
            "min" => self.min = number(key, value)?,
            "max" => self.max = number(key, value)?,
            "points" => {
                self.points = value
                    .parse()
                    .map_err(|_| CliError::Config(format!("points: '{value}' is not a count")))?
            }
            "out" => self.out = (!value.is_empty()).then(|| PathBuf::from(value)),
            "paper_fidelity" => self.fidelity = value.parse().map_err(CliError::Config)?,
            other => return Err(CliError::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Applies a `key = value` text onto `self`.
    pub fn apply_text(&mut self, text: &str) -> Result<(), CliError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected 'key = value'", i + 1)))?;
            self.set(key.trim(), value)
                .map_err(|e| CliError::Config(format!("line {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    /// Parses a full configuration text over the barrier defaults.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut c = Self::default();
        c.apply_text(text)?;
        Ok(c)
    }

    /// Every key in [`KEYS`] order, floats in shortest round-trip form.
    pub fn render(&self) -> String {
        let out = self
            .out
            .as_ref()
            .map(|p| p.display().to_string())
            .unwrap_or_default();
        let values = [
            format!("{:?}", self.v0),
            self.alpha.to_string(),
            format!("{:?}", self.a),
            self.kind.to_string(),
            format!("{:?}", self.m0),
            format!("{:?}", self.m1),
            format!("{:?}", self.energy),
            self.axis.to_string(),
            format!("{:?}", self.min),
            format!("{:?}", self.max),
            self.points.to_string(),
            out,
            self.fidelity.to_string(),
        ];
        KEYS.iter()
            .zip(values)
            .map(|(k, v)| format!("{} = {}", k, v).trim_end().to_string() + "\n")
            .collect()
    }

    /// Checks the invariants: positive physical fields, points ≥ 1 and
    /// min < max when points > 1.
    pub fn validate(&self) -> Result<(), CliError> {
        let positive = [
            ("V0_eV", self.v0),
            ("a_nm", self.a),
            ("M0_m0", self.m0),
            ("M1_m0_per_nm", self.m1),
            ("E_eV", self.energy),
        ];
        for (key, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Config(format!("{key} must be positive, got {v}")));
            }
        }
        if let Alpha::Value(v) = self.alpha {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Config(format!("alpha_eV_per_nm must be positive, got {v}")));
            }
        }
        if self.points == 0 {
            return Err(CliError::Config("points must be >= 1".into()));
        }
        if self.points > 1 && !(self.min < self.max) {
            return Err(CliError::Config(format!(
                "min ({}) must be below max ({}) when points > 1",
                self.min, self.max
            )));
        }
        Ok(())
    }

    pub fn mass(&self) -> MassParams {
        MassParams {
            m0: self.m0,
            m1: self.m1,
        }
    }

    /// Slope at the base parameters: V0/a for `auto` (barrier sweeps).
    pub fn resolved_alpha(&self) -> f64 {
        match self.alpha {
            Alpha::Auto => self.v0 / self.a,
            Alpha::Value(v) => v,
        }
    }

    /// Slope of the bound-state parameter set: 0.01·V0 for `auto`.
    pub fn resolved_well_alpha(&self) -> f64 {
        match self.alpha {
            Alpha::Auto => 0.01 * self.v0,
            Alpha::Value(v) => v,
        }
    }

    pub fn well_profile(&self) -> Result<PotentialProfile, CliError> {
        Ok(PotentialProfile::new(
            self.v0,
            self.resolved_well_alpha(),
            self.a,
            ProfileKind::Well,
        )?)
    }

    pub fn transmission_options(&self) -> TransmissionOptions {
        TransmissionOptions {
            signs: if self.fidelity.printed_signs() {
                SignConvention::Printed
            } else {
                SignConvention::Expanded
            },
            b5: 1.0,
        }
    }

    /// Sweep over [min, max] along the configured axis.
    pub fn sweep_spec(&self) -> Result<SweepSpec, CliError> {
        Ok(SweepSpec {
            axis: self.axis,
            grid: linspace(self.min, self.max, self.points)?,
            energy: self.energy,
            mass: self.mass(),
            v0: self.v0,
            a: self.a,
            alpha: match self.alpha {
                Alpha::Auto => None,
                Alpha::Value(v) => Some(v),
            },
            options: self.transmission_options(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn defaults_render_and_parse_back() {
        let c = RunConfig::default();
        assert_eq!(RunConfig::parse(&c.render()).unwrap(), c);
        let text = c.render();
        assert!(text.starts_with("V0_eV = 0.45\nalpha_eV_per_nm = auto\n"));
    }

    #[test]
    fn comments_blank_lines_and_later_values_win() {
        let c = RunConfig::parse("# header\n\nV0_eV = 0.3 # trailing\nV0_eV=0.2\naxis = V0\n").unwrap();
        assert_eq!(c.v0, 0.2);
        assert_eq!(c.axis, Axis::V0);
    }

    #[test]
    fn errors_name_the_line() {
        let e = RunConfig::parse("a_nm = 7\nbogus = 1\n").unwrap_err().to_string();
        assert!(e.contains("line 2") && e.contains("bogus"), "{e}");
        assert!(RunConfig::parse("a_nm 7").is_err());
        assert!(RunConfig::parse("points = -1").is_err());
        assert!(RunConfig::parse("paper_fidelity = some").is_err());
    }

    #[test]
    fn invariants() {
        let mut c = RunConfig::default();
        assert!(c.validate().is_ok());
        c.points = 1;
        c.min = 2.0;
        assert!(c.validate().is_ok());
        c.points = 3;
        assert!(c.validate().is_err());
        let c = RunConfig { v0: -1.0, ..RunConfig::default() };
        assert!(c.validate().is_err());
        let c = RunConfig { alpha: Alpha::Value(0.0), ..RunConfig::default() };
        assert!(c.validate().is_err());
    }

    #[test]
    fn alpha_resolution() {
        let c = RunConfig::default();
        assert_eq!(c.resolved_alpha(), 0.45 / 7.0);
        assert_eq!(c.resolved_well_alpha(), 0.01 * 0.45);
        let c = RunConfig { alpha: Alpha::Value(0.2), ..c };
        assert_eq!((c.resolved_alpha(), c.resolved_well_alpha()), (0.2, 0.2));
    }

    fn arb_config() -> impl Strategy<Value = RunConfig> {
        let axis = prop_oneof![Just(Axis::E), Just(Axis::V0), Just(Axis::A)];
        let fidelity = prop_oneof![
            Just(Fidelity::None),
            Just(Fidelity::Signs),
            Just(Fidelity::T2),
            Just(Fidelity::All)
        ];
        let kind = prop_oneof![Just(ProfileKind::Barrier), Just(ProfileKind::Well)];
        let alpha = prop_oneof![Just(Alpha::Auto), (1e-6f64..1e3).prop_map(Alpha::Value)];
        (
            (1e-6f64..10.0, alpha, 1e-6f64..100.0, kind, 1e-4f64..1.0, 0.0f64..1.0),
            (1e-6f64..10.0, axis, -10.0f64..10.0, -10.0f64..10.0, 1usize..10_000),
            (proptest::option::of("[a-z][a-z0-9_./]{0,12}"), fidelity),
        )
            .prop_map(|((v0, alpha, a, kind, m0, m1), (energy, axis, min, max, points), (out, fidelity))| {
                RunConfig {
                    v0,
                    alpha,
                    a,
                    kind,
                    m0,
                    m1,
                    energy,
                    axis,
                    min,
                    max,
                    points,
                    out: out.map(PathBuf::from),
                    fidelity,
                }
            })
    }

    proptest! {
        #[test]
        fn render_round_trips(c in arb_config()) {
            prop_assert_eq!(RunConfig::parse(&c.render()).unwrap(), c);
        }
    }
}
