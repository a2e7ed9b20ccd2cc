//! Physical constants used throughout the toolkit.
//!
//! Defaults are CODATA 2018 for the atomic constants and IAU nominal values
//! for the Earth. A plain `key = value` file may override any entry; the
//! provenance of an overridden entry becomes the file path.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Keys accepted in an override file, in table order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Key {
    ElectronMass,
    ProtonMass,
    Planck,
    ReducedPlanck,
    SpeedOfLight,
    Avogadro,
    ElectronVolt,
    HydrogenFrequency,
    EarthMass,
    EarthRadius,
    EarthOrbitRadius,
    EarthOrbitPeriod,
}

impl Key {
    pub const ALL: [Key; 12] = [
        Key::ElectronMass,
        Key::ProtonMass,
        Key::Planck,
        Key::ReducedPlanck,
        Key::SpeedOfLight,
        Key::Avogadro,
        Key::ElectronVolt,
        Key::HydrogenFrequency,
        Key::EarthMass,
        Key::EarthRadius,
        Key::EarthOrbitRadius,
        Key::EarthOrbitPeriod,
    ];

    /// Name used in override files and reports.
    pub fn name(self) -> &'static str {
        match self {
            Key::ElectronMass => "M_e",
            Key::ProtonMass => "M_p",
            Key::Planck => "h",
            Key::ReducedPlanck => "hbar",
            Key::SpeedOfLight => "c",
            Key::Avogadro => "N_A",
            Key::ElectronVolt => "eV",
            Key::HydrogenFrequency => "nu_H",
            Key::EarthMass => "M_E",
            Key::EarthRadius => "R_E",
            Key::EarthOrbitRadius => "R_O",
            Key::EarthOrbitPeriod => "tau_E",
        }
    }

    pub fn units(self) -> &'static str {
        match self {
            Key::ElectronMass | Key::ProtonMass | Key::EarthMass => "kg",
            Key::Planck | Key::ReducedPlanck => "J s",
            Key::SpeedOfLight => "m s^-1",
            // N_A enters the toolkit only as a pure scale factor.
            Key::Avogadro => "1",
            Key::ElectronVolt => "J",
            Key::HydrogenFrequency => "Hz",
            Key::EarthRadius | Key::EarthOrbitRadius => "m",
            Key::EarthOrbitPeriod => "s",
        }
    }

    pub fn from_name(name: &str) -> Option<Key> {
        Key::ALL.into_iter().find(|k| k.name() == name)
    }

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub value: f64,
    pub provenance: String,
}

/// Immutable table of constants. Cheap to clone and safe to share.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantsTable {
    entries: [Entry; 12],
}

const CODATA: &str = "CODATA 2018";
const IAU: &str = "IAU 2015 nominal";

impl Default for ConstantsTable {
    fn default() -> Self {
        let e = |value: f64, provenance: &str| Entry {
            value,
            provenance: provenance.to_string(),
        };
        let h = 6.62607015e-34;
        ConstantsTable {
            entries: [
                e(9.1093837015e-31, CODATA),
                e(1.67262192369e-27, CODATA),
                e(h, CODATA),
                e(h / (2.0 * PI), "derived: h / 2pi"),
                e(2.99792458e8, CODATA),
                e(6.02214076e23, CODATA),
                e(1.602176634e-19, CODATA),
                e(6.57e15, "hydrogen model frequency"),
                e(5.9722e24, IAU),
                e(6.371e6, IAU),
                e(1.495978707e11, "IAU 2012 astronomical unit"),
                e(3.1557e7, "Julian year, rounded"),
            ],
        }
    }
}

impl ConstantsTable {
    pub fn get(&self, key: Key) -> f64 {
        self.entries[key.index()].value
    }

    pub fn entry(&self, key: Key) -> &Entry {
        &self.entries[key.index()]
    }

    pub fn electron_mass(&self) -> f64 {
        self.get(Key::ElectronMass)
    }
    pub fn proton_mass(&self) -> f64 {
        self.get(Key::ProtonMass)
    }
    pub fn planck(&self) -> f64 {
        self.get(Key::Planck)
    }
    pub fn hbar(&self) -> f64 {
        self.get(Key::ReducedPlanck)
    }
    pub fn speed_of_light(&self) -> f64 {
        self.get(Key::SpeedOfLight)
    }
    pub fn avogadro(&self) -> f64 {
        self.get(Key::Avogadro)
    }
    pub fn electron_volt(&self) -> f64 {
        self.get(Key::ElectronVolt)
    }
    pub fn hydrogen_frequency(&self) -> f64 {
        self.get(Key::HydrogenFrequency)
    }
    pub fn earth_mass(&self) -> f64 {
        self.get(Key::EarthMass)
    }
    pub fn earth_radius(&self) -> f64 {
        self.get(Key::EarthRadius)
    }
    pub fn earth_orbit_radius(&self) -> f64 {
        self.get(Key::EarthOrbitRadius)
    }
    pub fn earth_orbit_period(&self) -> f64 {
        self.get(Key::EarthOrbitPeriod)
    }

    /// Returns a copy with one entry replaced. Setting `h` or `hbar` keeps the
    /// other in step.
    pub fn with(&self, key: Key, value: f64, provenance: &str) -> Result<Self> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::Domain(format!(
                "constant {} must be finite and positive, got {value}",
                key.name()
            )));
        }
        let mut out = self.clone();
        let set = |t: &mut Self, k: Key, v: f64| {
            t.entries[k.index()] = Entry {
                value: v,
                provenance: provenance.to_string(),
            };
        };
        match key {
            Key::Planck => {
                set(&mut out, Key::Planck, value);
                set(&mut out, Key::ReducedPlanck, value / (2.0 * PI));
            }
            Key::ReducedPlanck => {
                set(&mut out, Key::Planck, value * 2.0 * PI);
                set(&mut out, Key::ReducedPlanck, value);
            }
            k => set(&mut out, k, value),
        }
        Ok(out)
    }

    /// Parses override text and merges it over `self`. `source_name` is used
    /// both in error messages and as the provenance of each override.
    pub fn merge_overrides(&self, text: &str, source_name: &str) -> Result<Self> {
        let mut seen: BTreeMap<Key, f64> = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::ConstantsParse {
                source_name: source_name.to_string(),
                line: lineno + 1,
                message,
            };
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| parse_err(format!("expected 'key = value', got '{line}'")))?;
            let (k, v) = (k.trim(), v.trim());
            let key = Key::from_name(k).ok_or_else(|| Error::UnknownConstant {
                key: k.to_string(),
                valid: Key::ALL.iter().map(|k| k.name().to_string()).collect(),
            })?;
            let value: f64 = v
                .parse()
                .map_err(|_| parse_err(format!("'{v}' is not a number")))?;
            if seen.insert(key, value).is_some() {
                return Err(parse_err(format!("duplicate key '{k}'")));
            }
        }

        let mut exact_hbar = None;
        if let (Some(&h), Some(&hbar)) = (seen.get(&Key::Planck), seen.get(&Key::ReducedPlanck)) {
            if ((h / (2.0 * PI)) / hbar - 1.0).abs() > 1e-12 {
                return Err(Error::Domain(format!(
                    "h = {h:e} and hbar = {hbar:e} are inconsistent; set only one"
                )));
            }
            exact_hbar = seen.remove(&Key::ReducedPlanck);
        }

        let mut out = self.clone();
        for (key, value) in seen {
            out = out.with(key, value, source_name)?;
        }
        // both given: keep hbar's own digits rather than h/2π
        if let Some(hbar) = exact_hbar {
            out.entries[Key::ReducedPlanck.index()] = Entry {
                value: hbar,
                provenance: source_name.to_string(),
            };
        }
        Ok(out)
    }

    /// Serializes to override-file syntax. Values use the shortest
    /// representation that parses back to the same `f64`.
    pub fn to_override_text(&self) -> String {
        let mut out = String::new();
        for key in Key::ALL {
            let e = self.entry(key);
            let _ = writeln!(out, "# {} [{}]", e.provenance, key.units());
            let _ = writeln!(out, "{} = {:e}", key.name(), e.value);
        }
        out
    }

    /// Hex SHA-256 of the values, independent of provenance strings.
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        for key in Key::ALL {
            hasher.update(key.name().as_bytes());
            hasher.update(self.get(key).to_bits().to_le_bytes());
        }
        hasher
            .finalize()
            .iter()
            .fold(String::with_capacity(64), |mut s, b| {
                let _ = write!(s, "{b:02x}");
                s
            })
    }
}

/// Defaults merged with the optional override file.
pub fn load_constants(override_path: Option<&Path>) -> Result<ConstantsTable> {
    let table = ConstantsTable::default();
    match override_path {
        None => Ok(table),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            table.merge_overrides(&text, &path.display().to_string())
        }
    }
}
