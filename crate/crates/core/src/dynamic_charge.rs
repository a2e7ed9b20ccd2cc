//! Radially oscillating proton: radius, mass density and the dynamic charge
//! that its density oscillation sources in the modified Poisson equation
//! `Δφ = −σ − β ∂²ρ/∂t²`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poisson::RadialGrid;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProtonOscillation {
    /// Rest radius R_p (m).
    pub radius: f64,
    /// Oscillation amplitude d (m), `0 ≤ d < R_p`.
    pub amplitude: f64,
    /// Angular frequency ω_H (rad/s).
    pub omega: f64,
    /// Proton mass (kg).
    pub mass: f64,
    /// Momentum–field coupling β; 1 in natural units.
    pub beta: f64,
}

impl ProtonOscillation {
    pub fn new(radius: f64, amplitude: f64, omega: f64, mass: f64, beta: f64) -> Result<Self> {
        for (name, v) in [("radius", radius), ("omega", omega), ("mass", mass)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        if !(amplitude.is_finite() && (0.0..radius).contains(&amplitude)) {
            return Err(Error::Domain(format!(
                "amplitude must satisfy 0 <= d < R_p, got d = {amplitude:e}, R_p = {radius:e}"
            )));
        }
        if !beta.is_finite() {
            return Err(Error::Domain("beta must be finite".into()));
        }
        Ok(ProtonOscillation {
            radius,
            amplitude,
            omega,
            mass,
            beta,
        })
    }

    /// Builds the oscillation from the relative amplitude x = 3d/R_p.
    pub fn from_relative_amplitude(radius: f64, x: f64, omega: f64, mass: f64) -> Result<Self> {
        Self::new(radius, x * radius / 3.0, omega, mass, 1.0)
    }

    /// x = 3d/R_p
    pub fn x(&self) -> f64 {
        3.0 * self.amplitude / self.radius
    }

    pub fn period(&self) -> f64 {
        2.0 * PI / self.omega
    }

    /// Rest density ρ0 = 3M_p/(4πR_p³).
    pub fn rest_density(&self) -> f64 {
        3.0 * self.mass / (4.0 * PI * self.radius.powi(3))
    }

    pub fn radius_at(&self, t: f64) -> f64 {
        self.radius + self.amplitude * (self.omega * t).sin()
    }

    pub fn density_exact(&self, t: f64) -> f64 {
        3.0 * self.mass / (4.0 * PI * self.radius_at(t).powi(3))
    }

    pub fn density_first_order(&self, t: f64) -> f64 {
        self.rest_density() * (1.0 - self.x() * (self.omega * t).sin())
    }

    /// Time-varying part of the first-order density, ρ(t) − ρ0.
    pub fn density_variation(&self, t: f64) -> f64 {
        -self.rest_density() * self.x() * (self.omega * t).sin()
    }

    /// ∂²ρ/∂t² of the first-order density.
    pub fn density_second_derivative(&self, t: f64) -> f64 {
        self.rest_density() * self.x() * self.omega * self.omega * (self.omega * t).sin()
    }

    /// q_D(t) = β x M_p ω² sin ωt
    pub fn dynamic_charge(&self, t: f64) -> f64 {
        self.charge_amplitude() * (self.omega * t).sin()
    }

    pub fn charge_amplitude(&self) -> f64 {
        self.beta * self.x() * self.mass * self.omega * self.omega
    }

    /// Dynamic source density β ∂²ρ/∂t², uniform for r ≤ R_p and zero
    /// outside.
    pub fn dynamic_density(&self, t: f64, r: f64) -> f64 {
        if r <= self.radius {
            self.beta * self.density_second_derivative(t)
        } else {
            0.0
        }
    }
}

/// Free-function form of [`ProtonOscillation::dynamic_charge`].
pub fn dynamic_charge_q(p: &ProtonOscillation, t: f64) -> f64 {
    p.dynamic_charge(t)
}

/// Total Poisson source `σ + β ∂²ρ/∂t²` sampled on the grid nodes. The
/// solver takes it with the sign convention `Δφ = −4π k1 · source`.
pub fn poisson_source(
    p: &ProtonOscillation,
    t: f64,
    grid: &RadialGrid,
    static_sigma: &[f64],
) -> Result<Vec<f64>> {
    if static_sigma.len() != grid.len() {
        return Err(Error::GridMismatch {
            expected: grid.len(),
            found: static_sigma.len(),
        });
    }
    Ok(grid
        .nodes()
        .iter()
        .zip(static_sigma)
        .map(|(&r, &s)| s + p.dynamic_density(t, r))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::Spacing;
    use crate::quadrature::{integrate, Tolerance};

    fn proton(d_over_r: f64) -> ProtonOscillation {
        let r = 1.368e-15;
        ProtonOscillation::new(r, d_over_r * r, 2.0 * PI * 6.57e15, 1.67262192369e-27, 1.0).unwrap()
    }

    #[test]
    fn radius_examples() {
        let p = proton(1e-3);
        assert_eq!(p.radius_at(0.0), p.radius);
        let peak = p.radius_at(PI / (2.0 * p.omega));
        assert!((peak - (p.radius + p.amplitude)).abs() <= 1e-12 * p.radius);
        for t in [0.1, 0.37, 2.5].map(|k| k * p.period()) {
            let a = p.radius_at(t);
            let b = p.radius_at(t + p.period());
            assert!(((a - b) / a).abs() < 1e-12);
        }
    }

    #[test]
    fn static_sphere() {
        let p = proton(0.0);
        for t in [0.0, 1e-17, 3e-16] {
            assert_eq!(p.density_exact(t), p.rest_density());
            assert_eq!(p.density_first_order(t), p.rest_density());
        }
        assert_eq!(p.x(), 0.0);
    }

    #[test]
    fn exact_density_conserves_mass() {
        let p = proton(0.05);
        for k in 0..16 {
            let t = k as f64 * p.period() / 16.0;
            let m = p.density_exact(t) * 4.0 / 3.0 * PI * p.radius_at(t).powi(3);
            assert!((m / p.mass - 1.0).abs() < 1e-14);
        }
        assert_eq!(p.density_exact(0.0), p.rest_density());
    }

    #[test]
    fn first_order_at_half_period() {
        let p = proton(1e-3);
        let v = p.density_first_order(PI / p.omega);
        assert!((v / p.rest_density() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn charge_zero_at_origin_and_odd() {
        let p = proton(1e-4);
        assert_eq!(p.dynamic_charge(0.0), 0.0);
        for t in [1e-17, 5e-17, 1.1e-16] {
            assert!((p.dynamic_charge(-t) + p.dynamic_charge(t)).abs() <= 1e-15 * p.charge_amplitude());
        }
    }

    #[test]
    fn large_amplitude_fd_on_full_density() {
        let p = proton(0.1);
        let t = p.period() / 8.0;
        let h = p.period() / 1e4;
        let fd = (p.density_first_order(t + h) - 2.0 * p.density_first_order(t)
            + p.density_first_order(t - h))
            / (h * h);
        let exact = p.density_second_derivative(t);
        assert!((fd / exact - 1.0).abs() < 1e-6, "{}", fd / exact - 1.0);
    }

    #[test]
    fn source_static_limit_and_grid_check() {
        let grid = RadialGrid::new(1e-16, 5e-15, 32, Spacing::Uniform).unwrap();
        let sigma: Vec<f64> = (0..32).map(|i| i as f64).collect();
        let p = proton(0.0);
        assert_eq!(poisson_source(&p, 1e-17, &grid, &sigma).unwrap(), sigma);
        let p = proton(1e-3);
        let zeros = vec![0.0; 32];
        assert!(poisson_source(&p, 0.0, &grid, &zeros).unwrap().iter().all(|v| *v == 0.0));
        assert_eq!(
            poisson_source(&p, 0.0, &grid, &zeros[..10]).unwrap_err(),
            Error::GridMismatch { expected: 32, found: 10 }
        );
    }

    #[test]
    fn dynamic_source_integrates_to_charge() {
        let p = proton(1e-5);
        let t = 0.3 * p.period();
        let q = integrate(
            |r| 4.0 * PI * r * r * p.dynamic_density(t, r),
            0.0,
            p.radius,
            &[],
            Tolerance::new(0.0, 1e-13),
        )
        .unwrap();
        assert!((q.value / p.dynamic_charge(t) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn invalid_parameters() {
        assert!(ProtonOscillation::new(1.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(ProtonOscillation::new(1.0, -0.1, 1.0, 1.0, 1.0).is_err());
        assert!(ProtonOscillation::new(0.0, 0.0, 1.0, 1.0, 1.0).is_err());
        assert!(ProtonOscillation::new(1.0, 0.1, 1.0, 1.0, f64::NAN).is_err());
    }
}
