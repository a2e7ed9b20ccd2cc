//! Solar gravity-wave frequency band and energy flux at an orbiting body.

use std::f64::consts::PI;

use serde::Serialize;

use crate::constants::ConstantsTable;
use crate::error::{Error, Result};
use crate::quantity::{check_equation_dims, natural, parse_unit_expr, ConsistencyReport, Dimension};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitalBody {
    pub mass: f64,
    pub radius: f64,
    pub orbit_radius: f64,
    pub period: f64,
}

impl OrbitalBody {
    /// Mass may be zero; all lengths and the period must be positive.
    pub fn new(mass: f64, radius: f64, orbit_radius: f64, period: f64) -> Result<Self> {
        if !(mass.is_finite() && mass >= 0.0) {
            return Err(Error::Domain(format!("mass must be non-negative, got {mass:e}")));
        }
        for (name, v) in [("radius", radius), ("orbit", orbit_radius), ("period", period)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!("{name} must be positive, got {v:e}")));
            }
        }
        if radius >= orbit_radius {
            return Err(Error::Domain(format!(
                "body radius {radius:e} m must be smaller than the orbit radius {orbit_radius:e} m"
            )));
        }
        Ok(OrbitalBody {
            mass,
            radius,
            orbit_radius,
            period,
        })
    }

    pub fn earth(constants: &ConstantsTable) -> Result<Self> {
        Self::new(
            constants.earth_mass(),
            constants.earth_radius(),
            constants.earth_orbit_radius(),
            constants.earth_orbit_period(),
        )
    }

    /// ρ = 3M/(4πR³)
    pub fn mean_density(&self) -> f64 {
        3.0 * self.mass / (4.0 * PI * self.radius.powi(3))
    }

    /// ω = 2π/τ
    pub fn angular_frequency(&self) -> f64 {
        2.0 * PI / self.period
    }

    /// 3 M R_orbit/(4 R³ τ²), which equals G_S/4π.
    pub fn combination(&self) -> f64 {
        3.0 * self.mass * self.orbit_radius / (4.0 * self.radius.powi(3) * self.period.powi(2))
    }
}

pub const DEFAULT_FREQUENCY_RATIO: f64 = 1e-11;
/// Order-of-magnitude band the estimate is reported against, Hz.
pub const REPORTED_BAND_HZ: (f64, f64) = (1e3, 1e5);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrequencyBand {
    pub nu_g: f64,
    pub low: f64,
    pub high: f64,
    pub in_band: bool,
}

/// ν_G = ratio · ν_E
pub fn gravity_frequency_band(nu_e: f64, ratio: f64) -> Result<FrequencyBand> {
    if !(nu_e.is_finite() && nu_e > 0.0) {
        return Err(Error::Domain(format!("frequency must be positive, got {nu_e:e}")));
    }
    if !(ratio.is_finite() && ratio >= 0.0) {
        return Err(Error::Domain(format!("ratio must be non-negative, got {ratio:e}")));
    }
    let nu_g = ratio * nu_e;
    Ok(FrequencyBand {
        nu_g,
        low: REPORTED_BAND_HZ.0,
        high: REPORTED_BAND_HZ.1,
        in_band: (REPORTED_BAND_HZ.0..=REPORTED_BAND_HZ.1).contains(&nu_g),
    })
}

/// G_S = ρ · ω² R_orbit, kg m⁻² s⁻².
pub fn gravity_field_amplitude(body: &OrbitalBody) -> f64 {
    body.mean_density() * body.angular_frequency().powi(2) * body.orbit_radius
}

/// φ_G = (ħ/2)(G_S/4π)²
pub fn gravity_energy_density(body: &OrbitalBody, hbar: f64) -> f64 {
    0.5 * hbar * body.combination().powi(2)
}

/// J_G = φ_G · N_A · c, W/m².
pub fn gravity_flux(body: &OrbitalBody, hbar: f64, avogadro: f64, c: f64) -> f64 {
    gravity_energy_density(body, hbar) * avogadro * c
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GravityEstimate {
    pub body: OrbitalBody,
    pub band: FrequencyBand,
    pub field_amplitude: f64,
    pub energy_density: f64,
    pub flux: f64,
}

pub fn estimate(
    body: &OrbitalBody,
    constants: &ConstantsTable,
    hbar: f64,
    ratio: f64,
) -> Result<GravityEstimate> {
    if !(hbar.is_finite() && hbar > 0.0) {
        return Err(Error::Domain(format!("hbar must be positive, got {hbar:e}")));
    }
    Ok(GravityEstimate {
        body: *body,
        band: gravity_frequency_band(constants.hydrogen_frequency(), ratio)?,
        field_amplitude: gravity_field_amplitude(body),
        energy_density: gravity_energy_density(body, hbar),
        flux: gravity_flux(body, hbar, constants.avogadro(), constants.speed_of_light()),
    })
}

/// Dimension checks of G_S, φ_G and J_G as assembled from their factors
/// under the natural assignments: ħ is the inverse of the coupling and N_A
/// is a pure number.
pub fn dimensional_audit() -> Result<[ConsistencyReport; 3]> {
    let hbar = natural::coupling().recip();
    let g = parse_unit_expr("kg m^-2 s^-2")?.dim;
    let combination = parse_unit_expr("kg m s^-2")?.dim / parse_unit_expr("m^3")?.dim;
    let phi = hbar * g.powi(2);
    let flux = phi * Dimension::dimensionless() * natural::velocity();
    Ok([
        check_equation_dims(g, &[combination])?,
        check_equation_dims(natural::energy_density(), &[phi])?,
        check_equation_dims(parse_unit_expr("W m^-2")?.dim, &[flux])?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn earth() -> OrbitalBody {
        OrbitalBody::earth(&ConstantsTable::default()).unwrap()
    }

    const HBAR: f64 = 1.054571817e-34;

    #[test]
    fn band() {
        let b = gravity_frequency_band(6.57e15, DEFAULT_FREQUENCY_RATIO).unwrap();
        assert!((b.nu_g - 65.7e3).abs() < 1e-6);
        assert!(b.in_band);
        assert_eq!(gravity_frequency_band(6.57e15, 0.0).unwrap().nu_g, 0.0);
        let a = gravity_frequency_band(1e15, 1e-11).unwrap().nu_g;
        let c = gravity_frequency_band(3e15, 1e-11).unwrap().nu_g;
        assert!((c / a - 3.0).abs() < 1e-15);
        assert!(gravity_frequency_band(0.0, 1e-11).is_err());
    }

    #[test]
    fn field_amplitude() {
        let e = earth();
        let g = gravity_field_amplitude(&e);
        assert!((g / (4.0 * PI) / 2.602 - 1.0).abs() < 1e-3, "{}", g / (4.0 * PI));
        assert!((g / (4.0 * PI) / e.combination() - 1.0).abs() < 1e-14);
        let zero = OrbitalBody::new(0.0, e.radius, e.orbit_radius, e.period).unwrap();
        assert_eq!(gravity_field_amplitude(&zero), 0.0);
        let slow = OrbitalBody::new(e.mass, e.radius, e.orbit_radius, 4.0 * e.period).unwrap();
        assert!((gravity_field_amplitude(&slow) * 16.0 / g - 1.0).abs() < 1e-14);
    }

    #[test]
    fn energy_density_and_flux() {
        let c = ConstantsTable::default();
        let e = earth();
        let phi = gravity_energy_density(&e, HBAR);
        assert!((phi / 3.570e-34 - 1.0).abs() < 1e-3, "{phi}");
        let j = gravity_flux(&e, HBAR, c.avogadro(), c.speed_of_light());
        assert!((j / 0.06446 - 1.0).abs() < 1e-3, "{j}");
        assert!((j - 0.070).abs() / 0.070 < 0.15);
        let heavy = OrbitalBody::new(e.mass * 10f64.sqrt(), e.radius, e.orbit_radius, e.period).unwrap();
        let jh = gravity_flux(&heavy, HBAR, c.avogadro(), c.speed_of_light());
        assert!((jh / j - 10.0).abs() < 1e-12);
        let twice = OrbitalBody::new(2.0 * e.mass, e.radius, e.orbit_radius, e.period).unwrap();
        assert!((gravity_energy_density(&twice, HBAR) / phi - 4.0).abs() < 1e-12);
        let zero = OrbitalBody::new(0.0, e.radius, e.orbit_radius, e.period).unwrap();
        assert_eq!(gravity_flux(&zero, HBAR, c.avogadro(), c.speed_of_light()), 0.0);
    }

    #[test]
    fn constant_density_scaling() {
        let c = ConstantsTable::default();
        let e = earth();
        let j = gravity_flux(&e, HBAR, c.avogadro(), c.speed_of_light());
        // λ = 8 keeps M/R³ bit-identical: 8M/(2R)³ involves only exponent shifts
        let scaled = OrbitalBody::new(8.0 * e.mass, 2.0 * e.radius, e.orbit_radius, e.period).unwrap();
        assert_eq!(gravity_flux(&scaled, HBAR, c.avogadro(), c.speed_of_light()), j);
        let lambda: f64 = 5.0;
        let scaled = OrbitalBody::new(lambda * e.mass, lambda.cbrt() * e.radius, e.orbit_radius, e.period)
            .unwrap();
        let js = gravity_flux(&scaled, HBAR, c.avogadro(), c.speed_of_light());
        assert!((js / j - 1.0).abs() < 1e-14);
    }

    #[test]
    fn validation() {
        assert!(OrbitalBody::new(-1.0, 1.0, 2.0, 1.0).is_err());
        assert!(OrbitalBody::new(1.0, 2.0, 1.0, 1.0).is_err());
        assert!(OrbitalBody::new(1.0, 1.0, 2.0, 0.0).is_err());
    }

    #[test]
    fn audit_is_consistent() {
        let reports = dimensional_audit().unwrap();
        assert!(reports.iter().all(|r| r.consistent), "{reports:?}");
    }
}
