//! Hydrogen model: electron velocity and density, the electron and proton
//! fields, the energy budget and the coupling η with its ħ candidate.

use std::f64::consts::{E, PI};

use serde::Serialize;

use crate::constants::ConstantsTable;
use crate::error::{Error, Result};
use crate::quadrature::{bisect, integrate, Tolerance};
use crate::quantity::{natural, Quantity, VectorQuantity};
use crate::unit_systems::{radiation_energy_density, EtaCoupling};

/// Binding energy used by [`RadiusConvention::IonizationEnergy`], in eV.
pub const IONIZATION_ENERGY_EV: f64 = 13.6;

/// How the atomic radius R_H is fixed when not given explicitly. In both
/// cases R_H = u_1/ν_H.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusConvention {
    /// u_1 from M_e u_1² = h ν_H, so the free-electron energy is exactly ħω_H.
    FreeEnergy,
    /// u_1 from ½ M_e u_1² = 13.6 eV.
    IonizationEnergy,
    /// R_H given directly, in meters.
    Explicit(f64),
}

/// Time averages over a period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeAveraging {
    /// ⟨sin²⟩ = ⟨cos²⟩ = ½.
    Exact,
    /// Adaptive quadrature over one period.
    Numerical,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HydrogenModel {
    pub n: u32,
    pub nu_h: f64,
    pub r_h: f64,
    pub r_p: f64,
    pub convention: RadiusConvention,
    #[serde(skip)]
    pub constants: ConstantsTable,
}

/// Normalization applied to the electron-energy volume integral so that it
/// yields ½ M_e u_1².
pub const ENERGY_NORMALIZATION: f64 = 0.5;

impl HydrogenModel {
    pub fn new(constants: &ConstantsTable, n: u32, r_p: f64) -> Result<Self> {
        Self::with_convention(constants, n, r_p, RadiusConvention::FreeEnergy)
    }

    pub fn with_convention(
        constants: &ConstantsTable,
        n: u32,
        r_p: f64,
        convention: RadiusConvention,
    ) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain("principal quantum number must be >= 1".into()));
        }
        if !(r_p.is_finite() && r_p > 0.0) {
            return Err(Error::Domain(format!("proton radius must be positive, got {r_p:e}")));
        }
        let nu_h = constants.hydrogen_frequency();
        let m_e = constants.electron_mass();
        let r_h = match convention {
            RadiusConvention::FreeEnergy => (constants.planck() * nu_h / m_e).sqrt() / nu_h,
            RadiusConvention::IonizationEnergy => {
                (2.0 * IONIZATION_ENERGY_EV * constants.electron_volt() / m_e).sqrt() / nu_h
            }
            RadiusConvention::Explicit(r) => r,
        };
        if !(r_h.is_finite() && r_h > 0.0) {
            return Err(Error::Domain(format!("atom radius must be positive, got {r_h:e}")));
        }
        if r_p >= r_h / 100.0 {
            return Err(Error::Domain(format!(
                "proton radius {r_p:e} m must be below R_H/100 = {:e} m",
                r_h / 100.0
            )));
        }
        Ok(HydrogenModel {
            n,
            nu_h,
            r_h,
            r_p,
            convention,
            constants: constants.clone(),
        })
    }

    pub fn omega_h(&self) -> f64 {
        2.0 * PI * self.nu_h
    }

    pub fn period(&self) -> f64 {
        1.0 / self.nu_h
    }

    /// u_n = ω_H R_H/(2πn)
    pub fn u_n(&self, n: u32) -> Result<f64> {
        if n < 1 {
            return Err(Error::Domain("principal quantum number must be >= 1".into()));
        }
        Ok(self.nu_h * self.r_h / n as f64)
    }

    pub fn u1(&self) -> f64 {
        self.nu_h * self.r_h
    }

    fn u_model(&self) -> f64 {
        self.u1() / self.n as f64
    }

    /// ρ0 = M_e/(2πR_H), kg/m.
    pub fn rho0(&self) -> f64 {
        self.constants.electron_mass() / (2.0 * PI * self.r_h)
    }

    /// Radial component of the momentum density, (ρ0 u_n/r²) cos ω_H t.
    pub fn momentum_density(&self, r: f64, t: f64) -> Result<f64> {
        check_radius(r)?;
        Ok(self.rho0() * self.u_model() / (r * r) * (self.omega_h() * t).cos())
    }

    /// E_0 = ∂p/∂t = −(ρ0 u_n/r²) ω_H sin ω_H t.
    pub fn electron_field_e0(&self, r: f64, t: f64) -> Result<f64> {
        check_radius(r)?;
        Ok(-self.electron_field_amplitude(r) * (self.omega_h() * t).sin())
    }

    fn electron_field_amplitude(&self, r: f64) -> f64 {
        self.rho0() * self.u_model() * self.omega_h() / (r * r)
    }

    /// E_p = (M_p ω_H² x/r²) sin ω_H t with x for the model's n.
    pub fn proton_field_e0(&self, r: f64, t: f64) -> Result<f64> {
        check_radius(r)?;
        let x = self.oscillation_amplitude_x(self.n)?;
        Ok(self.proton_field_amplitude(x, r) * (self.omega_h() * t).sin())
    }

    fn proton_field_amplitude(&self, x: f64, r: f64) -> f64 {
        self.constants.proton_mass() * self.omega_h().powi(2) * x / (r * r)
    }

    /// x = M_e/((2π)² M_p n)
    pub fn oscillation_amplitude_x(&self, n: u32) -> Result<f64> {
        if n < 1 {
            return Err(Error::Domain("principal quantum number must be >= 1".into()));
        }
        Ok(self.constants.electron_mass()
            / ((2.0 * PI).powi(2) * self.constants.proton_mass() * n as f64))
    }

    /// Solves |E_p amplitude|(x) = |E_0 amplitude| at radius r for x.
    pub fn amplitude_matching_x(&self, r: f64) -> Result<f64> {
        check_radius(r)?;
        let target = self.electron_field_amplitude(r);
        let scale = self.proton_field_amplitude(1.0, r);
        bisect(|x| (self.proton_field_amplitude(x, r) - target) / scale, 0.0, 1.0, 1e-18)
    }

    /// k_1 = 2πn/R_H
    pub fn wavevector(&self) -> f64 {
        2.0 * PI * self.n as f64 / self.r_h
    }

    /// Kinetic and field energy densities (φ_K, φ_EM), J/m³.
    pub fn energy_densities(&self, r: f64, t: f64) -> Result<(f64, f64)> {
        check_radius(r)?;
        let base = self.rho0() * self.u1().powi(2) / (r * r) * (self.omega_h() * t).cos().powi(2);
        let kr = self.wavevector() * r;
        Ok((base * kr.sin().powi(2), base * kr.cos().powi(2)))
    }

    /// ½ M_e u_1²
    pub fn electron_energy_analytic(&self) -> f64 {
        0.5 * self.constants.electron_mass() * self.u1().powi(2)
    }

    /// Volume and period integral of φ_K + φ_EM over the atom, times
    /// [`ENERGY_NORMALIZATION`]. With s = r/R_H the 4πr² weight cancels
    /// the 1/r² of both densities.
    pub fn electron_energy_quadrature(&self, averaging: TimeAveraging) -> Result<f64> {
        let k = 2.0 * PI * self.n as f64;
        let tol = Tolerance::DEFAULT;
        let breaks: Vec<f64> = (1..4 * self.n).map(|j| j as f64 / (4 * self.n) as f64).collect();
        let kinetic = integrate(|s| (k * s).sin().powi(2), 0.0, 1.0, &breaks, tol)?.value;
        let field = integrate(|s| (k * s).cos().powi(2), 0.0, 1.0, &breaks, tol)?.value;
        let cos2 = time_average(|th| th.cos().powi(2), averaging, 0.5)?;
        let prefactor = 4.0 * PI * self.rho0() * self.u1().powi(2) * self.r_h;
        Ok(ENERGY_NORMALIZATION * prefactor * (kinetic + field) * cos2)
    }

    /// η = M_e² ν_H³/(2h R_p)
    pub fn eta_from_model(&self) -> Result<EtaCoupling> {
        eta_from_radius(&self.constants, self.r_p)
    }

    pub fn electron_energy(&self, averaging: TimeAveraging) -> Result<ElectronEnergy> {
        let analytic = self.electron_energy_analytic();
        let quadrature = self.electron_energy_quadrature(averaging)?;
        let rel = ((quadrature - analytic) / analytic).abs();
        if rel > 1e-6 {
            return Err(Error::Quadrature {
                achieved: rel,
                requested: 1e-6,
            });
        }
        let w_free = self.constants.hbar() * self.omega_h();
        Ok(ElectronEnergy {
            w_el: analytic,
            w_el_quadrature: quadrature,
            w_free,
            delta_w: w_free - analytic,
            normalization: ENERGY_NORMALIZATION,
        })
    }

    /// Radiation energy of the proton field between R_p and `r_outer`.
    pub fn radiation_energy_shell(
        &self,
        eta: &EtaCoupling,
        r_outer: f64,
        averaging: TimeAveraging,
    ) -> Result<RadiationEnergy> {
        if r_outer.is_nan() || r_outer <= self.r_p {
            return Err(Error::Domain("outer radius must exceed the proton radius".into()));
        }
        let x = self.oscillation_amplitude_x(self.n)?;
        let c = Quantity::new(self.constants.speed_of_light(), natural::velocity());
        let zero_b = VectorQuantity::zero(natural::magnetic_field());
        let failure = std::cell::RefCell::new(None);
        // r = R_p eʸ, dr = r dy; the density uses the field amplitude and the
        // sin² time dependence is averaged separately.
        let radial = integrate(
            |y| {
                let r = self.r_p * y.exp();
                let e = VectorQuantity::new(
                    [self.proton_field_amplitude(x, r), 0.0, 0.0],
                    natural::electric_field(),
                );
                match radiation_energy_density(&e, &zero_b, eta, c) {
                    Ok(phi) => 4.0 * PI * r.powi(3) * phi.magnitude,
                    Err(err) => {
                        failure.borrow_mut().get_or_insert(err);
                        f64::NAN
                    }
                }
            },
            0.0,
            (r_outer / self.r_p).ln(),
            &[],
            Tolerance::new(0.0, 1e-10),
        );
        if let Some(err) = failure.into_inner() {
            return Err(err);
        }
        let sin2 = time_average(|th| th.sin().powi(2), averaging, 0.5)?;
        let magnitude = radial?.value * sin2;
        let amp = self.constants.proton_mass() * self.omega_h().powi(2) * x;
        let closed_form = amp * amp / (4.0 * eta.value()) * (1.0 / self.r_p - 1.0 / r_outer);
        Ok(RadiationEnergy {
            magnitude,
            closed_form,
            leading_term: amp * amp / (4.0 * eta.value() * self.r_p),
            sign_convention: -1,
        })
    }

    pub fn radiation_energy(&self, eta: &EtaCoupling, averaging: TimeAveraging) -> Result<RadiationEnergy> {
        self.radiation_energy_shell(eta, self.r_h, averaging)
    }

    /// Full budget with η taken from the model.
    pub fn energy_budget(&self, averaging: TimeAveraging) -> Result<EnergyBudget> {
        let electron = self.electron_energy(averaging)?;
        let eta = self.eta_from_model()?;
        let rad = self.radiation_energy(&eta, averaging)?;
        Ok(EnergyBudget {
            w_el: electron.w_el,
            w_free: electron.w_free,
            delta_w: electron.delta_w,
            w_rad: rad.magnitude,
        })
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r.is_finite() && r > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("radius must be positive, got {r}")))
    }
}

fn time_average(f: impl Fn(f64) -> f64, averaging: TimeAveraging, exact: f64) -> Result<f64> {
    match averaging {
        TimeAveraging::Exact => Ok(exact),
        TimeAveraging::Numerical => Ok(integrate(f, 0.0, 2.0 * PI, &[], Tolerance::new(0.0, 1e-12))?.value
            / (2.0 * PI)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ElectronEnergy {
    pub w_el: f64,
    pub w_el_quadrature: f64,
    pub w_free: f64,
    pub delta_w: f64,
    pub normalization: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiationEnergy {
    /// |W_rad| from quadrature.
    pub magnitude: f64,
    /// A²/(4η)·(1/R_p − 1/R_H).
    pub closed_form: f64,
    /// A²/(4ηR_p), the thin-proton limit.
    pub leading_term: f64,
    /// Conventional sign of W_rad (negative); only the magnitude enters the
    /// energy balance.
    pub sign_convention: i8,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyBudget {
    pub w_el: f64,
    pub w_free: f64,
    pub delta_w: f64,
    pub w_rad: f64,
}

/// η = M_e² ν_H³/(2h R_p)
pub fn eta_from_radius(constants: &ConstantsTable, r_p: f64) -> Result<EtaCoupling> {
    if !(r_p.is_finite() && r_p > 0.0) {
        return Err(Error::Domain(format!("proton radius must be positive, got {r_p:e}")));
    }
    let m_e = constants.electron_mass();
    EtaCoupling::new(m_e * m_e * constants.hydrogen_frequency().powi(3) / (2.0 * constants.planck() * r_p))
}

pub const HBAR_WINDOW_FM: (f64, f64) = (0.5, 3.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HbarCandidate {
    pub r_p: f64,
    pub eta: f64,
    /// 4π/η, N⁻¹·m⁴.
    pub value: f64,
    /// Set when R_p lies outside [`HBAR_WINDOW_FM`].
    pub outside_window: bool,
}

pub fn hbar_candidate(constants: &ConstantsTable, r_p: f64) -> Result<HbarCandidate> {
    let eta = eta_from_radius(constants, r_p)?;
    let fm = r_p / 1e-15;
    Ok(HbarCandidate {
        r_p,
        eta: eta.value(),
        value: eta.hbar(),
        outside_window: !(HBAR_WINDOW_FM.0..=HBAR_WINDOW_FM.1).contains(&fm),
    })
}

/// Logistic proton density profile 1/(1 + exp((r − c)/a)), r in fm.
pub const PROFILE_CENTER_FM: f64 = 1.07;
pub const PROFILE_DIFFUSENESS_FM: f64 = 0.55;

pub fn proton_density_profile(r_fm: f64) -> f64 {
    1.0 / (1.0 + ((r_fm - PROFILE_CENTER_FM) / PROFILE_DIFFUSENESS_FM).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Threshold {
    InverseE,
    Half,
}

impl Threshold {
    pub fn level(self) -> f64 {
        match self {
            Threshold::InverseE => 1.0 / E,
            Threshold::Half => 0.5,
        }
    }
}

/// Radius (m) where the profile falls to `threshold`, by bisection on
/// [0, 5] fm to 1e-6 fm.
pub fn proton_radius_from_profile(threshold: Threshold) -> Result<f64> {
    proton_radius_at_level(threshold.level())
}

pub fn proton_radius_at_level(level: f64) -> Result<f64> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::Domain(format!("threshold must lie in (0, 1), got {level}")));
    }
    let r_fm = bisect(|r| proton_density_profile(r) - level, 0.0, 5.0, 1e-9)?;
    Ok(r_fm * 1e-15)
}

/// c + a·ln(1/level − 1), in meters.
pub fn proton_radius_closed_form(level: f64) -> f64 {
    (PROFILE_CENTER_FM + PROFILE_DIFFUSENESS_FM * (1.0 / level - 1.0).ln()) * 1e-15
}

/// Default proton radius: the 1/e point of the density profile.
pub fn default_proton_radius() -> f64 {
    proton_radius_closed_form(Threshold::InverseE.level())
}
