//! The electromagnetic unit systems and the natural-system force, angular
//! momentum and radiation formulas.
//!
//! Maxwell constants are kept symbolic as monomials `coeff · c^a ε^b μ^d π^e`
//! so relations between them can be checked exactly.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Div, Mul};

use num_rational::Rational64;
use num_traits::One;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quantity::{check_equation_dims, natural, Quantity, VectorQuantity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: Rational64,
    pub c: i32,
    pub eps: i32,
    pub mu: i32,
    pub pi: i32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            coeff: Rational64::one(),
            c: 0,
            eps: 0,
            mu: 0,
            pi: 0,
        }
    }

    pub fn c_pow(n: i32) -> Self {
        Monomial { c: n, ..Self::one() }
    }

    pub fn eps_pow(n: i32) -> Self {
        Monomial { eps: n, ..Self::one() }
    }

    pub fn mu_pow(n: i32) -> Self {
        Monomial { mu: n, ..Self::one() }
    }

    /// 1/(4π)
    pub fn inv_four_pi() -> Self {
        Monomial {
            coeff: Rational64::new(1, 4),
            pi: -1,
            ..Self::one()
        }
    }

    pub fn recip(&self) -> Self {
        Monomial {
            coeff: self.coeff.recip(),
            c: -self.c,
            eps: -self.eps,
            mu: -self.mu,
            pi: -self.pi,
        }
    }

    /// Rewrites every ε·μ pair as c⁻².
    pub fn eliminate_eps_mu(&self) -> Self {
        let pairs = if self.eps.signum() == self.mu.signum() {
            self.eps.abs().min(self.mu.abs()) * self.eps.signum()
        } else {
            0
        };
        Monomial {
            c: self.c - 2 * pairs,
            eps: self.eps - pairs,
            mu: self.mu - pairs,
            ..*self
        }
    }

    pub fn evaluate(&self, c: f64, eps: f64, mu: f64) -> f64 {
        (*self.coeff.numer() as f64 / *self.coeff.denom() as f64)
            * c.powi(self.c)
            * eps.powi(self.eps)
            * mu.powi(self.mu)
            * PI.powi(self.pi)
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, o: Monomial) -> Monomial {
        Monomial {
            coeff: self.coeff * o.coeff,
            c: self.c + o.c,
            eps: self.eps + o.eps,
            mu: self.mu + o.mu,
            pi: self.pi + o.pi,
        }
    }
}

impl Div for Monomial {
    type Output = Monomial;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Monomial) -> Monomial {
        self * o.recip()
    }
}

fn factor(name: &str, p: i32) -> Option<String> {
    match p {
        0 => None,
        1 => Some(name.to_string()),
        p => Some(format!("{name}^{p}")),
    }
}

impl fmt::Display for Monomial {
    /// `1`, `c^-2`, `1/(4π c^2)`, `μ/(4π)` style.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num: Vec<String> = Vec::new();
        let mut den: Vec<String> = Vec::new();
        if !self.coeff.numer().is_one() {
            num.push(self.coeff.numer().to_string());
        }
        let mut den_coeff = if self.coeff.denom().is_one() {
            String::new()
        } else {
            self.coeff.denom().to_string()
        };
        // π is written next to its numeric coefficient
        if self.pi < 0 {
            den_coeff.push_str(&factor("π", -self.pi).unwrap());
        } else if let Some(p) = factor("π", self.pi) {
            num.push(p);
        }
        if !den_coeff.is_empty() {
            den.push(den_coeff);
        }
        // with nothing in the denominator, negative powers stay inline
        let inline = self.pi >= 0 && self.coeff.denom().is_one();
        for (name, p) in [("c", self.c), ("ε", self.eps), ("μ", self.mu)] {
            if p > 0 || (inline && p < 0) {
                num.extend(factor(name, p));
            } else if p < 0 {
                den.extend(factor(name, -p));
            }
        }
        let num = if num.is_empty() { "1".to_string() } else { num.join(" ") };
        match den.len() {
            0 => f.write_str(&num),
            1 if !den[0].contains(' ') && !den[0].chars().any(|c| c.is_alphabetic() && c != 'π') => {
                write!(f, "{num}/{}", den[0])
            }
            _ => write!(f, "{num}/({})", den.join(" ")),
        }
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemName {
    Esu,
    Emu,
    Gaussian,
    HeavisideLorentz,
    Si,
    Natural,
}

impl SystemName {
    pub const ALL: [SystemName; 6] = [
        SystemName::Esu,
        SystemName::Emu,
        SystemName::Gaussian,
        SystemName::HeavisideLorentz,
        SystemName::Si,
        SystemName::Natural,
    ];

    pub fn label(self) -> &'static str {
        match self {
            SystemName::Esu => "Electrostatic (esu)",
            SystemName::Emu => "Electromagnetic (emu)",
            SystemName::Gaussian => "Gaussian",
            SystemName::HeavisideLorentz => "Heaviside-Lorentz",
            SystemName::Si => "SI",
            SystemName::Natural => "Natural system",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaxwellSet {
    pub name: SystemName,
    pub k1: Monomial,
    pub k2: Monomial,
    pub k3: Monomial,
    pub alpha: Monomial,
}

impl MaxwellSet {
    /// k1 / (k2 · k3 · α) with ε·μ rewritten as c⁻². Equals c² for every
    /// system in the table.
    pub fn wave_speed_squared(&self) -> Monomial {
        (self.k1 / (self.k2 * self.k3 * self.alpha)).eliminate_eps_mu()
    }
}

pub fn maxwell_constants(name: SystemName) -> MaxwellSet {
    let one = Monomial::one();
    let c = Monomial::c_pow;
    let q = Monomial::inv_four_pi();
    let (k1, k2, k3, alpha) = match name {
        SystemName::Esu => (one, c(-2), one, one),
        SystemName::Emu => (c(2), one, one, one),
        SystemName::Gaussian => (one, c(-2), c(1), c(-1)),
        SystemName::HeavisideLorentz => (q, q * c(-2), c(1), c(-1)),
        SystemName::Si => (q * Monomial::eps_pow(-1), Monomial::mu_pow(1) * q, one, one),
        SystemName::Natural => (q, c(-2), one, q),
    };
    MaxwellSet {
        name,
        k1,
        k2,
        k3,
        alpha,
    }
}

/// Coupling η between electromagnetic and mechanic variables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EtaCoupling {
    eta: Quantity,
}

impl EtaCoupling {
    /// η in N·m⁻⁴.
    pub fn new(value: f64) -> Result<Self> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::Domain(format!("eta must be positive and finite, got {value}")));
        }
        Ok(EtaCoupling {
            eta: Quantity::new(value, natural::coupling()),
        })
    }

    /// η = 4π/ħ, with ħ in N⁻¹·m⁴.
    pub fn from_hbar(hbar: f64) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::Domain(format!("hbar must be positive and finite, got {hbar}")));
        }
        Self::new(4.0 * PI / hbar)
    }

    pub fn value(&self) -> f64 {
        self.eta.magnitude
    }

    pub fn quantity(&self) -> Quantity {
        self.eta
    }

    /// 4π/η
    pub fn hbar(&self) -> f64 {
        4.0 * PI / self.eta.magnitude
    }
}

/// Natural-system field arguments shared by the force formulas.
#[derive(Debug, Clone, Copy)]
pub struct FieldState {
    pub charge: Quantity,
    pub e_field: VectorQuantity,
    pub velocity: VectorQuantity,
    pub b_field: VectorQuantity,
}

impl FieldState {
    fn validate(&self) -> Result<()> {
        self.charge.require(natural::charge(), "q")?;
        self.e_field.require(natural::electric_field(), "E")?;
        self.velocity.require(natural::velocity(), "u")?;
        self.b_field.require(natural::magnetic_field(), "B")
    }
}

/// F = (q/η)(E + u × B).
pub fn lorentz_force(state: &FieldState, eta: &EtaCoupling) -> Result<VectorQuantity> {
    state.validate()?;
    let coupling = state.charge / eta.quantity();
    let magnetic = state.velocity.cross(&state.b_field);
    let electric_term = state.e_field.scale(coupling);
    let magnetic_term = magnetic.scale(coupling);
    let report = check_equation_dims(natural::force(), &[electric_term.dim, magnetic_term.dim])?;
    if !report.consistent {
        return Err(Error::Dimension {
            argument: "Lorentz force".into(),
            expected: report.lhs.to_string(),
            found: report
                .terms
                .iter()
                .map(|t| t.dim.to_string())
                .collect::<Vec<_>>()
                .join(", "),
        });
    }
    let total = state.e_field.checked_add(&magnetic)?.scale(coupling);
    Ok(VectorQuantity::new(total.value, natural::force()))
}

/// The same force written with ħ: F = ħ q (E/4π + u × B/4π).
pub fn lorentz_force_hbar(state: &FieldState, hbar: f64) -> Result<VectorQuantity> {
    state.validate()?;
    let u_cross_b = state.velocity.cross(&state.b_field);
    let q = state.charge.magnitude;
    let mut value = [0.0; 3];
    for (k, v) in value.iter_mut().enumerate() {
        *v = hbar * q * (state.e_field.value[k] / (4.0 * PI) + u_cross_b.value[k] / (4.0 * PI));
    }
    Ok(VectorQuantity::new(value, natural::force()))
}

/// L = r × F.
pub fn angular_momentum(
    position: &VectorQuantity,
    state: &FieldState,
    eta: &EtaCoupling,
) -> Result<VectorQuantity> {
    position.require(natural::length(), "r")?;
    if position.value.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("position must be finite".into()));
    }
    let force = lorentz_force(state, eta)?;
    Ok(position.cross(&force))
}

/// φ_Rad = (E² + c²B²)/(8πη), in J·m⁻³.
pub fn radiation_energy_density(
    e_field: &VectorQuantity,
    b_field: &VectorQuantity,
    eta: &EtaCoupling,
    c: Quantity,
) -> Result<Quantity> {
    e_field.require(natural::electric_field(), "E")?;
    b_field.require(natural::magnetic_field(), "B")?;
    c.require(natural::velocity(), "c")?;
    let value = (e_field.norm_squared() + c.magnitude * c.magnitude * b_field.norm_squared())
        / (8.0 * PI * eta.value());
    Ok(Quantity::new(value, natural::energy_density()))
}

/// Published value the check compares against.
pub const FINE_STRUCTURE_REFERENCE: f64 = 7.297e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FineStructure {
    pub alpha: f64,
    /// True when α differs from the reference by more than 1e-3 relative.
    pub flagged: bool,
}

/// α = e²/(ħc) from Gaussian magnitudes (esu, erg·s, cm/s).
pub fn fine_structure_check(e: f64, hbar: f64, c: f64) -> FineStructure {
    let alpha = e * e / (hbar * c);
    FineStructure {
        alpha,
        flagged: ((alpha - FINE_STRUCTURE_REFERENCE) / FINE_STRUCTURE_REFERENCE).abs() > 1e-3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantity::Dimension;

    fn state(q: f64, e: [f64; 3], u: [f64; 3], b: [f64; 3]) -> FieldState {
        FieldState {
            charge: Quantity::new(q, natural::charge()),
            e_field: VectorQuantity::new(e, natural::electric_field()),
            velocity: VectorQuantity::new(u, natural::velocity()),
            b_field: VectorQuantity::new(b, natural::magnetic_field()),
        }
    }

    #[test]
    fn table_rows() {
        let g = maxwell_constants(SystemName::Gaussian);
        assert_eq!(
            (g.k1, g.k2, g.k3, g.alpha),
            (Monomial::one(), Monomial::c_pow(-2), Monomial::c_pow(1), Monomial::c_pow(-1))
        );
        let n = maxwell_constants(SystemName::Natural);
        assert_eq!(n.k1, Monomial::inv_four_pi());
        assert_eq!(n.alpha, Monomial::inv_four_pi());
        assert_eq!(n.k3, Monomial::one());
        let si = maxwell_constants(SystemName::Si);
        assert_eq!(si.k1.to_string(), "1/(4π ε)");
        assert_eq!(si.k2.to_string(), "μ/4π");
        assert_eq!(maxwell_constants(SystemName::HeavisideLorentz).k2.to_string(), "1/(4π c^2)");
        assert_eq!(Monomial::c_pow(-2).to_string(), "c^-2");
        assert_eq!(Monomial::inv_four_pi().to_string(), "1/4π");
    }

    #[test]
    fn every_system_has_wave_speed_c() {
        for name in SystemName::ALL {
            assert_eq!(
                maxwell_constants(name).wave_speed_squared(),
                Monomial::c_pow(2),
                "{name:?}"
            );
        }
    }

    #[test]
    fn si_numeric_evaluation() {
        let eps0: f64 = 8.8541878128e-12;
        let mu0 = 1.25663706212e-6;
        let c = 1.0 / (eps0 * mu0).sqrt();
        let si = maxwell_constants(SystemName::Si);
        assert!((si.k1.evaluate(c, eps0, mu0) / 8.9875517923e9 - 1.0).abs() < 1e-9);
        assert!((si.k2.evaluate(c, eps0, mu0) - 1e-7).abs() < 1e-15);
    }

    #[test]
    fn zero_fields_give_zero_force() {
        let eta = EtaCoupling::new(1.0).unwrap();
        let f = lorentz_force(&state(3.0, [0.0; 3], [1.0, 2.0, 3.0], [0.0; 3]), &eta).unwrap();
        assert_eq!(f.value, [0.0; 3]);
        let f = lorentz_force(&state(3.0, [0.0; 3], [1.0, 2.0, 3.0], [2.0, 4.0, 6.0]), &eta).unwrap();
        assert_eq!(f.value, [0.0; 3]);
    }

    #[test]
    fn unit_substitution() {
        let eta = EtaCoupling::new(1.0).unwrap();
        let f = lorentz_force(&state(1.0, [1.0, 0.0, 0.0], [0.0; 3], [0.0; 3]), &eta).unwrap();
        assert_eq!(f.value, [1.0, 0.0, 0.0]);
        assert_eq!(f.dim, natural::force());
    }

    #[test]
    fn wrong_dimension_is_named() {
        let eta = EtaCoupling::new(1.0).unwrap();
        let mut s = state(1.0, [1.0, 0.0, 0.0], [0.0; 3], [0.0; 3]);
        s.b_field.dim = natural::electric_field();
        match lorentz_force(&s, &eta).unwrap_err() {
            Error::Dimension { argument, .. } => assert_eq!(argument, "B"),
            e => panic!("{e}"),
        }
        let mut s = state(1.0, [1.0, 0.0, 0.0], [0.0; 3], [0.0; 3]);
        s.charge.dim = Dimension::from_ints(0, 0, 1, 1);
        // SI coulomb reduces to the natural charge dimension
        assert!(lorentz_force(&s, &eta).is_ok());
        s.charge.dim = natural::energy();
        assert!(lorentz_force(&s, &eta).is_err());
    }

    #[test]
    fn angular_momentum_right_hand_rule() {
        let eta = EtaCoupling::new(1.0).unwrap();
        let s = state(1.0, [1.0, 0.0, 0.0], [0.0; 3], [0.0; 3]);
        let r = VectorQuantity::new([0.0, 1.0, 0.0], natural::length());
        let l = angular_momentum(&r, &s, &eta).unwrap();
        assert_eq!(l.value, [0.0, 0.0, -1.0]);
        assert_eq!(l.dim, natural::energy());
        let r2 = VectorQuantity::new([0.0, 2.0, 0.0], natural::length());
        let l2 = angular_momentum(&r2, &s, &eta).unwrap();
        assert_eq!(l2.norm_squared(), 4.0 * l.norm_squared());
        let parallel = VectorQuantity::new([5.0, 0.0, 0.0], natural::length());
        assert_eq!(angular_momentum(&parallel, &s, &eta).unwrap().value, [0.0; 3]);
    }

    #[test]
    fn radiation_density_cases() {
        let eta = EtaCoupling::new(2.0).unwrap();
        let c = Quantity::new(3.0, natural::velocity());
        let zero_b = VectorQuantity::zero(natural::magnetic_field());
        let zero_e = VectorQuantity::zero(natural::electric_field());
        assert_eq!(radiation_energy_density(&zero_e, &zero_b, &eta, c).unwrap().magnitude, 0.0);
        let e = VectorQuantity::new([1.0, 2.0, 0.0], natural::electric_field());
        let phi = radiation_energy_density(&e, &zero_b, &eta, c).unwrap();
        assert!((phi.magnitude - 5.0 / (16.0 * PI)).abs() < 1e-15);
        assert_eq!(phi.dim, natural::energy_density());
        let e2 = VectorQuantity::new([2.0, 4.0, 0.0], natural::electric_field());
        let phi2 = radiation_energy_density(&e2, &zero_b, &eta, c).unwrap();
        assert!((phi2.magnitude / phi.magnitude - 4.0).abs() < 1e-14);
        let b = VectorQuantity::new([0.0, 0.0, 1.0], natural::magnetic_field());
        let phib = radiation_energy_density(&zero_e, &b, &eta, c).unwrap();
        assert!((phib.magnitude - 9.0 / (16.0 * PI)).abs() < 1e-15);
        assert!(radiation_energy_density(&b, &b, &eta, c).is_err());
    }

    #[test]
    fn fine_structure_cases() {
        let fs = fine_structure_check(4.8032e-10, 1.0546e-27, 2.9979e10);
        assert!((fs.alpha - 7.297e-3).abs() < 1e-5);
        assert!(!fs.flagged);
        let zero = fine_structure_check(0.0, 1.0546e-27, 2.9979e10);
        assert_eq!(zero.alpha, 0.0);
        assert!(zero.flagged);
        let doubled = fine_structure_check(2.0 * 4.8032e-10, 1.0546e-27, 2.9979e10);
        assert!((doubled.alpha / fs.alpha - 4.0).abs() < 1e-12);
    }

    #[test]
    fn eta_rejects_non_positive() {
        assert!(EtaCoupling::new(0.0).is_err());
        assert!(EtaCoupling::new(-1.0).is_err());
        assert!(EtaCoupling::from_hbar(0.0).is_err());
        let eta = EtaCoupling::from_hbar(1.0546e-34).unwrap();
        assert!((eta.hbar() / 1.0546e-34 - 1.0).abs() < 1e-15);
    }
}
