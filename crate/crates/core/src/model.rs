//! Units, mass and potential profiles, and the coefficient bookkeeping of
//! the triangular barrier and well.
//!
//! Internal units are eV, nm and the free-electron mass m₀. The implemented
//! equation is φ″ + H·m(x)·(E − V(x))·φ = 0 with H = 2m₀/ħ² expressed in
//! (eV·nm²)⁻¹ per m₀, m(x) = M0 − M1·x, and on 0 < x < a
//!
//! * barrier: V(x) = V0 − α·x,
//! * well:    V(x) = −V0 − α·x,
//!
//! with V = 0 outside. Inside the profile H·m(x)·(E − V(x)) is the quadratic
//! −(a1·x² + a2·x + a3); completing the square with the shift
//! y = x + a2/(2·a1) gives −(a1·y² + λ), λ = (4·a1·a3 − a2²)/(4·a1).

use thiserror::Error;

/// ħ in J·s.
pub const HBAR_J_S: f64 = 1.05e-34;
/// Free-electron mass in kg.
pub const ELECTRON_MASS_KG: f64 = 9.1e-31;
/// One electronvolt in J.
pub const EV_J: f64 = 1.602e-19;
/// One nanometre in m.
pub const NM_M: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ModelError {
    #[error("{quantity} = {value} is outside its domain ({requirement})")]
    Domain {
        quantity: &'static str,
        value: f64,
        requirement: &'static str,
    },
    #[error("profile kind is {found:?}, expected {expected:?}")]
    KindMismatch {
        expected: ProfileKind,
        found: ProfileKind,
    },
}

fn require(
    ok: bool,
    quantity: &'static str,
    value: f64,
    requirement: &'static str,
) -> Result<(), ModelError> {
    if ok {
        Ok(())
    } else {
        Err(ModelError::Domain {
            quantity,
            value,
            requirement,
        })
    }
}

/// The fixed (eV, nm, m₀) unit convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    /// ħ²/(2m₀) in eV·nm².
    pub hbar2_over_2m0: f64,
    /// H = 2m₀/ħ² in (eV·nm²)⁻¹, to be multiplied by a mass in m₀.
    pub h_per_m0: f64,
}

/// Unit constants from ħ = 1.05e−34 J·s, m₀ = 9.1e−31 kg, 1 eV = 1.602e−19 J.
pub fn make_units() -> UnitSystem {
    let joule_m2 = HBAR_J_S * HBAR_J_S / (2.0 * ELECTRON_MASS_KG);
    let hbar2_over_2m0 = joule_m2 / EV_J / (NM_M * NM_M);
    UnitSystem {
        hbar2_over_2m0,
        h_per_m0: 1.0 / hbar2_over_2m0,
    }
}

impl Default for UnitSystem {
    fn default() -> Self {
        make_units()
    }
}

/// Linear effective mass m(x) = M0 − M1·x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassParams {
    /// Mass at x = 0, in m₀.
    pub m0: f64,
    /// Mass gradient, in m₀/nm.
    pub m1: f64,
}

impl MassParams {
    pub const GAAS: Self = Self {
        m0: 0.067,
        m1: 0.067,
    };

    pub fn new(m0: f64, m1: f64) -> Result<Self, ModelError> {
        require(m0 > 0.0 && m0.is_finite(), "M0", m0, "M0 > 0")?;
        require(m1 >= 0.0 && m1.is_finite(), "M1", m1, "M1 >= 0")?;
        Ok(Self { m0, m1 })
    }

    pub fn mass_at(&self, x: f64) -> f64 {
        self.m0 - self.m1 * x
    }

    /// x* = M0/M1 where the mass vanishes; `None` for constant mass.
    pub fn mass_zero(&self) -> Option<f64> {
        (self.m1 > 0.0).then(|| self.m0 / self.m1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileKind {
    Barrier,
    Well,
}

impl std::fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ProfileKind::Barrier => "barrier",
            ProfileKind::Well => "well",
        })
    }
}

impl std::str::FromStr for ProfileKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "barrier" => Ok(ProfileKind::Barrier),
            "well" => Ok(ProfileKind::Well),
            other => Err(format!("unknown profile kind '{other}' (barrier|well)")),
        }
    }
}

/// Triangular profile on 0 < x < a, zero outside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialProfile {
    /// Height (barrier) or depth (well) at x = 0, eV.
    pub v0: f64,
    /// Slope, eV/nm.
    pub alpha: f64,
    /// Width, nm.
    pub a: f64,
    pub kind: ProfileKind,
}

impl PotentialProfile {
    pub fn new(v0: f64, alpha: f64, a: f64, kind: ProfileKind) -> Result<Self, ModelError> {
        require(v0 > 0.0 && v0.is_finite(), "V0", v0, "V0 > 0")?;
        require(alpha > 0.0 && alpha.is_finite(), "alpha", alpha, "alpha > 0")?;
        require(a > 0.0 && a.is_finite(), "a", a, "a > 0")?;
        Ok(Self { v0, alpha, a, kind })
    }

    /// Barrier whose slope makes it vanish at x = a (α = V0/a).
    pub fn touching_barrier(v0: f64, a: f64) -> Result<Self, ModelError> {
        Self::new(v0, v0 / a, a, ProfileKind::Barrier)
    }

    /// Signed offset of V at x = 0: +V0 for the barrier, −V0 for the well.
    pub fn offset(&self) -> f64 {
        match self.kind {
            ProfileKind::Barrier => self.v0,
            ProfileKind::Well => -self.v0,
        }
    }

    /// V(x), piecewise: the linear profile on (0, a), zero outside.
    pub fn potential_at(&self, x: f64) -> f64 {
        if x > 0.0 && x < self.a {
            self.offset() - self.alpha * x
        } else {
            0.0
        }
    }
}

/// Sign convention for the constant coefficient a3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignConvention {
    /// a3 from direct expansion of H·m(x)·(E − V(x)).
    #[default]
    Expanded,
    /// a3 with the opposite sign, as in the commonly printed closed form;
    /// for comparison runs only.
    Printed,
}

/// Quadratic coefficients of region II and the matching arguments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionCoefficients {
    /// H·M1·α.
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    /// (4·a1·a3 − a2²)/(4·a1).
    pub lambda: f64,
    /// Airy argument at x = 0 (`None` for the well, where E < 0).
    pub y1: Option<f64>,
    /// Shift a2/(2·a1) in nm, the region-II coordinate at x = 0.
    pub y2: f64,
    /// Airy argument at x = a (`None` for the well).
    pub y3: Option<f64>,
    /// a + a2/(2·a1) in nm, the region-II coordinate at x = a.
    pub y4: f64,
}

impl RegionCoefficients {
    /// First Kummer parameter b = (1 + λ/√a1)/4.
    pub fn b_param(&self) -> f64 {
        0.25 * (1.0 + self.lambda / self.a1.sqrt())
    }

    /// The same parameter with 4·a1 in place of √a1 (dimensionally
    /// inconsistent; reported for comparison only).
    pub fn b_param_4a1(&self) -> f64 {
        0.25 * (1.0 + self.lambda / (4.0 * self.a1))
    }

    /// a1^{1/4}: the factor mapping x-shifts to the Kummer variable s, z = s².
    pub fn s_scale(&self) -> f64 {
        self.a1.sqrt().sqrt()
    }

    /// −(a1·x² + a2·x + a3).
    pub fn quadratic(&self, x: f64) -> f64 {
        -((self.a1 * x + self.a2) * x + self.a3)
    }
}

fn quadratic_coefficients(
    e: f64,
    offset: f64,
    mp: &MassParams,
    pp: &PotentialProfile,
    u: &UnitSystem,
    signs: SignConvention,
) -> (f64, f64, f64, f64) {
    let h = u.h_per_m0;
    let a1 = h * mp.m1 * pp.alpha;
    let a2 = -h * (mp.m0 * pp.alpha + mp.m1 * (offset - e));
    let a3 = match signs {
        SignConvention::Expanded => h * mp.m0 * (offset - e),
        SignConvention::Printed => -h * mp.m0 * (offset - e),
    };
    let lambda = (4.0 * a1 * a3 - a2 * a2) / (4.0 * a1);
    (a1, a2, a3, lambda)
}

/// (H·E·M1)^{1/3}, the chain factor between x and the Airy argument.
pub fn airy_scale(e: f64, mp: &MassParams, u: &UnitSystem) -> Result<f64, ModelError> {
    require(e > 0.0 && e.is_finite(), "E", e, "E > 0")?;
    require(mp.m1 > 0.0, "M1", mp.m1, "M1 > 0")?;
    Ok((u.h_per_m0 * e * mp.m1).cbrt())
}

/// y(x) = (H·E·M1)^{1/3}·x − H·E·M0/(H·E·M1)^{2/3}, the exterior Airy argument.
pub fn airy_argument(x: f64, e: f64, mp: &MassParams, u: &UnitSystem) -> Result<f64, ModelError> {
    let k = airy_scale(e, mp, u)?;
    Ok(k * x - u.h_per_m0 * e * mp.m0 / (k * k))
}

/// Region coefficients of the barrier at energy E > 0.
pub fn barrier_coefficients(
    e: f64,
    mp: &MassParams,
    pp: &PotentialProfile,
    u: &UnitSystem,
) -> Result<RegionCoefficients, ModelError> {
    barrier_coefficients_with(e, mp, pp, u, SignConvention::Expanded)
}

pub fn barrier_coefficients_with(
    e: f64,
    mp: &MassParams,
    pp: &PotentialProfile,
    u: &UnitSystem,
    signs: SignConvention,
) -> Result<RegionCoefficients, ModelError> {
    if pp.kind != ProfileKind::Barrier {
        return Err(ModelError::KindMismatch {
            expected: ProfileKind::Barrier,
            found: pp.kind,
        });
    }
    require(pp.alpha > 0.0, "alpha", pp.alpha, "alpha > 0")?;
    require(e > 0.0 && e.is_finite(), "E", e, "E > 0")?;
    require(mp.m1 > 0.0, "M1", mp.m1, "M1 > 0")?;
    let (a1, a2, a3, lambda) = quadratic_coefficients(e, pp.v0, mp, pp, u, signs);
    let y2 = a2 / (2.0 * a1);
    Ok(RegionCoefficients {
        a1,
        a2,
        a3,
        lambda,
        y1: Some(airy_argument(0.0, e, mp, u)?),
        y2,
        y3: Some(airy_argument(pp.a, e, mp, u)?),
        y4: pp.a + y2,
    })
}

/// Region coefficients of the well; E is nominally in (−V0 − α·a, 0).
pub fn well_coefficients(
    e: f64,
    mp: &MassParams,
    pp: &PotentialProfile,
    u: &UnitSystem,
) -> Result<RegionCoefficients, ModelError> {
    well_coefficients_with(e, mp, pp, u, SignConvention::Expanded)
}

pub fn well_coefficients_with(
    e: f64,
    mp: &MassParams,
    pp: &PotentialProfile,
    u: &UnitSystem,
    signs: SignConvention,
) -> Result<RegionCoefficients, ModelError> {
    if pp.kind != ProfileKind::Well {
        return Err(ModelError::KindMismatch {
            expected: ProfileKind::Well,
            found: pp.kind,
        });
    }
    require(pp.alpha > 0.0, "alpha", pp.alpha, "alpha > 0")?;
    require(e.is_finite(), "E", e, "finite")?;
    require(mp.m1 > 0.0, "M1", mp.m1, "M1 > 0")?;
    let (a1, a2, a3, lambda) = quadratic_coefficients(e, -pp.v0, mp, pp, u, signs);
    let y2 = a2 / (2.0 * a1);
    Ok(RegionCoefficients {
        a1,
        a2,
        a3,
        lambda,
        y1: None,
        y2,
        y3: None,
        y4: pp.a + y2,
    })
}

/// Defaults of the barrier studies: V0 = 0.45 eV, a = 7 nm, α = V0/a.
pub fn default_barrier() -> PotentialProfile {
    PotentialProfile {
        v0: 0.45,
        alpha: 0.45 / 7.0,
        a: 7.0,
        kind: ProfileKind::Barrier,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn unit_constants() {
        let u = make_units();
        assert!(rel(u.hbar2_over_2m0, 0.037_813_310_285_220_4) < 1e-14);
        assert!(rel(u.h_per_m0, 26.445_714_285_714_285) < 1e-12);
        assert!((u.h_per_m0 * u.hbar2_over_2m0 - 1.0).abs() <= f64::EPSILON);
    }

    #[test]
    fn default_a1_plug_in() {
        let u = make_units();
        let c = barrier_coefficients(0.1, &MassParams::GAAS, &default_barrier(), &u).unwrap();
        assert!(rel(c.a1, u.h_per_m0 * 0.067 * (0.45 / 7.0)) < 1e-15);
        assert!((c.y4 - c.y2 - 7.0).abs() < 1e-12);
    }

    #[test]
    fn expansion_matches_equation() {
        let u = make_units();
        let mp = MassParams::GAAS;
        for pp in [
            default_barrier(),
            PotentialProfile::new(0.45, 0.0045, 7.0, ProfileKind::Well).unwrap(),
        ] {
            for &e in &[0.05, 0.1, 0.7] {
                let e = if pp.kind == ProfileKind::Well { -e } else { e };
                let c = match pp.kind {
                    ProfileKind::Barrier => barrier_coefficients(e, &mp, &pp, &u),
                    ProfileKind::Well => well_coefficients(e, &mp, &pp, &u),
                }
                .unwrap();
                for &x in &[0.3, 1.7, 2.9, 4.4, 6.6] {
                    let direct = u.h_per_m0 * mp.mass_at(x) * (e - pp.potential_at(x));
                    assert!((c.quadratic(x) - direct).abs() <= 1e-12 * direct.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn printed_signs_break_the_expansion() {
        let u = make_units();
        let mp = MassParams::GAAS;
        let pp = default_barrier();
        let c = barrier_coefficients_with(0.1, &mp, &pp, &u, SignConvention::Printed).unwrap();
        let direct = u.h_per_m0 * mp.mass_at(2.0) * (0.1 - pp.potential_at(2.0));
        assert!((c.quadratic(2.0) - direct).abs() > 0.1);
    }

    #[test]
    fn a2_zero_gives_lambda_a3() {
        // a2 = 0 when M0·α = −M1·(V0 − E), i.e. E = V0 + M0·α/M1
        let u = make_units();
        let mp = MassParams::GAAS;
        let pp = default_barrier();
        let e = pp.v0 + mp.m0 * pp.alpha / mp.m1;
        let c = barrier_coefficients(e, &mp, &pp, &u).unwrap();
        assert!(c.a2.abs() < 1e-12);
        assert!((c.lambda - c.a3).abs() < 1e-12);
        let w = PotentialProfile::new(0.45, 0.0045, 7.0, ProfileKind::Well).unwrap();
        let e = -w.v0 + mp.m0 * w.alpha / mp.m1;
        let c = well_coefficients(e, &mp, &w, &u).unwrap();
        assert!(c.a2.abs() < 1e-12);
        assert!((c.lambda - c.a3).abs() < 1e-12);
    }

    #[test]
    fn well_equals_barrier_with_negated_offset() {
        let u = make_units();
        let mp = MassParams::GAAS;
        let w = PotentialProfile::new(0.45, 0.3, 5.0, ProfileKind::Well).unwrap();
        let e = -0.2;
        let cw = well_coefficients(e, &mp, &w, &u).unwrap();
        let (a1, a2, a3, lambda) = quadratic_coefficients(e, -w.v0, &mp, &w, &u, SignConvention::Expanded);
        assert_eq!((cw.a1, cw.a2, cw.a3, cw.lambda), (a1, a2, a3, lambda));
        let b = PotentialProfile { kind: ProfileKind::Barrier, ..w };
        let cb = barrier_coefficients(0.2, &mp, &b, &u).unwrap();
        assert_eq!(cw.a1, cb.a1);
    }

    #[test]
    fn airy_argument_landmarks() {
        let u = make_units();
        let mp = MassParams::GAAS;
        let c = barrier_coefficients(0.1, &mp, &default_barrier(), &u).unwrap();
        assert_eq!(airy_argument(0.0, 0.1, &mp, &u).unwrap(), c.y1.unwrap());
        assert_eq!(airy_argument(7.0, 0.1, &mp, &u).unwrap(), c.y3.unwrap());
        let at_zero = airy_argument(mp.mass_zero().unwrap(), 0.1, &mp, &u).unwrap();
        assert!(at_zero.abs() < 1e-14);
    }

    #[test]
    fn si_round_trip() {
        // a1 = (2 m0 M1/ħ²)·α re-derived in SI, converted to nm⁻⁴
        let u = make_units();
        let mp = MassParams::GAAS;
        let pp = default_barrier();
        let c = barrier_coefficients(0.1, &mp, &pp, &u).unwrap();
        let m1_si = mp.m1 * ELECTRON_MASS_KG / NM_M;
        let alpha_si = pp.alpha * EV_J / NM_M;
        let a1_si = 2.0 * m1_si * alpha_si / (HBAR_J_S * HBAR_J_S);
        assert!(rel(a1_si * NM_M.powi(4), c.a1) < 1e-12);
        let a3_si = 2.0 * mp.m0 * ELECTRON_MASS_KG * (pp.v0 - 0.1) * EV_J / (HBAR_J_S * HBAR_J_S);
        assert!(rel(a3_si * NM_M.powi(2), c.a3) < 1e-12);
    }

    #[test]
    fn rejects_invalid_inputs() {
        let u = make_units();
        assert!(PotentialProfile::new(0.45, 0.0, 7.0, ProfileKind::Barrier).is_err());
        assert!(MassParams::new(0.0, 0.1).is_err());
        let flat = MassParams::new(0.067, 0.0).unwrap();
        assert!(airy_argument(1.0, 0.1, &flat, &u).is_err());
        assert!(barrier_coefficients(-0.1, &MassParams::GAAS, &default_barrier(), &u).is_err());
    }
}
