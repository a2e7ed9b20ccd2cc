//! Dimensional algebra with exact rational exponents over length, mass,
//! time and current, plus a small parser for unit expressions.
//!
//! Grammar accepted by [`parse_unit_expr`]:
//!
//! ```text
//! expr     := term ( ("·" | "*" | whitespace) term )* ( "/" term )*
//! term     := atom ( "^" exponent )?
//! atom     := unit | "1" | "(" expr ")"
//! exponent := ("+" | "-" | "−")? integer ( "/" integer )?
//! unit     := m | kg | s | A | N | J | W | C | Hz | eV | fm | nm
//! ```
//!
//! A `/` directly after an exponent's digits and followed by a digit belongs
//! to the exponent (`m^3/2`); otherwise it divides (`m^2/s`). Dividing by a
//! parenthesized group is rejected.

use std::fmt;
use std::ops::{Div, Mul};

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Exponent = Rational64;

const LENGTH: usize = 0;
const MASS: usize = 1;
const TIME: usize = 2;
const CURRENT: usize = 3;

/// Exponents over (length, mass, time, current). Rationals are kept in lowest
/// terms by `Ratio`, so derived equality is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dimension {
    exponents: [Exponent; 4],
}

fn int(n: i64) -> Exponent {
    Exponent::from_integer(n)
}

impl Dimension {
    pub const fn dimensionless() -> Self {
        Dimension {
            exponents: [Exponent::new_raw(0, 1); 4],
        }
    }

    pub fn new(length: Exponent, mass: Exponent, time: Exponent, current: Exponent) -> Self {
        Dimension {
            exponents: [length, mass, time, current],
        }
    }

    /// Integer exponents in (length, mass, time, current) order.
    pub fn from_ints(length: i64, mass: i64, time: i64, current: i64) -> Self {
        Self::new(int(length), int(mass), int(time), int(current))
    }

    pub fn length(&self) -> Exponent {
        self.exponents[LENGTH]
    }
    pub fn mass(&self) -> Exponent {
        self.exponents[MASS]
    }
    pub fn time(&self) -> Exponent {
        self.exponents[TIME]
    }
    pub fn current(&self) -> Exponent {
        self.exponents[CURRENT]
    }

    pub fn exponents(&self) -> [Exponent; 4] {
        self.exponents
    }

    pub fn is_dimensionless(&self) -> bool {
        self.exponents.iter().all(Zero::is_zero)
    }

    pub fn pow(&self, p: Exponent) -> Dimension {
        dim_pow(*self, p)
    }

    pub fn recip(&self) -> Dimension {
        dim_pow(*self, int(-1))
    }

    pub fn powi(&self, p: i64) -> Dimension {
        dim_pow(*self, int(p))
    }
}

impl Mul for Dimension {
    type Output = Dimension;
    fn mul(self, rhs: Dimension) -> Dimension {
        dim_mul(self, rhs)
    }
}

impl Div for Dimension {
    type Output = Dimension;
    fn div(self, rhs: Dimension) -> Dimension {
        dim_mul(self, rhs.recip())
    }
}

pub fn dim_mul(a: Dimension, b: Dimension) -> Dimension {
    let mut exponents = a.exponents;
    for (e, o) in exponents.iter_mut().zip(b.exponents) {
        *e += o;
    }
    Dimension { exponents }
}

pub fn dim_pow(a: Dimension, p: Exponent) -> Dimension {
    let mut exponents = a.exponents;
    for e in exponents.iter_mut() {
        *e *= p;
    }
    Dimension { exponents }
}

/// Eliminates current using the natural-system identity A = kg·s⁻³.
pub fn natural_reduce(d: Dimension) -> Dimension {
    let a = d.current();
    let mut exponents = d.exponents;
    exponents[MASS] += a;
    exponents[TIME] -= a * int(3);
    exponents[CURRENT] = Exponent::zero();
    Dimension { exponents }
}

impl fmt::Display for Dimension {
    /// Canonical form, e.g. `kg m^-3 s^-2`. Prints `1` when dimensionless.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = [(MASS, "kg"), (LENGTH, "m"), (TIME, "s"), (CURRENT, "A")];
        let mut first = true;
        for (idx, sym) in order {
            let e = self.exponents[idx];
            if e.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str(sym)?;
            if !e.is_one() {
                if e.is_integer() {
                    write!(f, "^{}", e.numer())?;
                } else {
                    write!(f, "^{}/{}", e.numer(), e.denom())?;
                }
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl Serialize for Dimension {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Dimensions of the electromagnetic quantities in the natural system, in
/// which charge is energy per unit area.
pub mod natural {
    use super::Dimension;

    pub fn force() -> Dimension {
        Dimension::from_ints(1, 1, -2, 0)
    }
    pub fn energy() -> Dimension {
        Dimension::from_ints(2, 1, -2, 0)
    }
    /// J m⁻²
    pub fn charge() -> Dimension {
        Dimension::from_ints(0, 1, -2, 0)
    }
    /// J m⁻² s⁻¹
    pub fn current() -> Dimension {
        Dimension::from_ints(0, 1, -3, 0)
    }
    /// N m⁻³
    pub fn electric_field() -> Dimension {
        Dimension::from_ints(-2, 1, -2, 0)
    }
    /// N s m⁻⁴
    pub fn magnetic_field() -> Dimension {
        Dimension::from_ints(-3, 1, -1, 0)
    }
    /// J m⁻³
    pub fn scalar_potential() -> Dimension {
        Dimension::from_ints(-1, 1, -2, 0)
    }
    /// N m⁻⁴, the dimension of η and of the dielectric constant.
    pub fn coupling() -> Dimension {
        Dimension::from_ints(-3, 1, -2, 0)
    }
    /// N⁻¹ m⁴, the dimension of 4π/η.
    pub fn action_like() -> Dimension {
        coupling().recip()
    }
    pub fn length() -> Dimension {
        Dimension::from_ints(1, 0, 0, 0)
    }
    pub fn velocity() -> Dimension {
        Dimension::from_ints(1, 0, -1, 0)
    }
    pub fn energy_density() -> Dimension {
        scalar_potential()
    }
}

/// Rows of the natural-units table: quantity, symbol, display units.
pub const NATURAL_UNITS_TABLE: [(&str, &str, &str); 8] = [
    ("Charge", "C", "J m^-2"),
    ("Ampere", "A", "J m^-2 s^-1"),
    ("Current density", "J", "J m^-2 s^-1 m^-2"),
    ("Electric field", "E", "N m^-3"),
    ("Magnetic field", "B", "N s m^-1 m^-3"),
    ("Scalar potential", "phi", "J m^-3"),
    ("Dielectric constant", "epsilon", "N m^-4"),
    ("Magnetic permeability", "mu", "(C m^-3)^-1 m^2 s^-2"),
];

/// A magnitude carrying a dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quantity {
    pub magnitude: f64,
    pub dim: Dimension,
}

impl Quantity {
    pub fn new(magnitude: f64, dim: Dimension) -> Self {
        Quantity { magnitude, dim }
    }

    pub fn dimensionless(magnitude: f64) -> Self {
        Quantity::new(magnitude, Dimension::dimensionless())
    }

    pub fn checked_add(&self, other: &Quantity) -> Result<Quantity> {
        self.require(other.dim, "right operand of addition")
            .map(|_| Quantity::new(self.magnitude + other.magnitude, self.dim))
    }

    pub fn checked_sub(&self, other: &Quantity) -> Result<Quantity> {
        self.require(other.dim, "right operand of subtraction")
            .map(|_| Quantity::new(self.magnitude - other.magnitude, self.dim))
    }

    pub fn powi(&self, p: i32) -> Quantity {
        Quantity::new(self.magnitude.powi(p), self.dim.powi(p as i64))
    }

    pub fn scale(&self, k: f64) -> Quantity {
        Quantity::new(self.magnitude * k, self.dim)
    }

    /// Errors unless `self` has dimension `expected` (compared after natural
    /// reduction).
    pub fn require(&self, expected: Dimension, argument: &str) -> Result<()> {
        if natural_reduce(self.dim) == natural_reduce(expected) {
            Ok(())
        } else {
            Err(Error::Dimension {
                argument: argument.to_string(),
                expected: natural_reduce(expected).to_string(),
                found: natural_reduce(self.dim).to_string(),
            })
        }
    }
}

impl Mul for Quantity {
    type Output = Quantity;
    fn mul(self, rhs: Quantity) -> Quantity {
        Quantity::new(self.magnitude * rhs.magnitude, self.dim * rhs.dim)
    }
}

impl Div for Quantity {
    type Output = Quantity;
    fn div(self, rhs: Quantity) -> Quantity {
        Quantity::new(self.magnitude / rhs.magnitude, self.dim / rhs.dim)
    }
}

/// Three-component vector sharing one dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VectorQuantity {
    pub value: [f64; 3],
    pub dim: Dimension,
}

impl VectorQuantity {
    pub fn new(value: [f64; 3], dim: Dimension) -> Self {
        VectorQuantity { value, dim }
    }

    pub fn zero(dim: Dimension) -> Self {
        VectorQuantity::new([0.0; 3], dim)
    }

    pub fn scale(&self, k: Quantity) -> VectorQuantity {
        VectorQuantity::new(self.value.map(|v| v * k.magnitude), self.dim * k.dim)
    }

    pub fn cross(&self, other: &VectorQuantity) -> VectorQuantity {
        let [a1, a2, a3] = self.value;
        let [b1, b2, b3] = other.value;
        VectorQuantity::new(
            [a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1],
            self.dim * other.dim,
        )
    }

    pub fn checked_add(&self, other: &VectorQuantity) -> Result<VectorQuantity> {
        if natural_reduce(self.dim) != natural_reduce(other.dim) {
            return Err(Error::Dimension {
                argument: "vector sum".into(),
                expected: natural_reduce(self.dim).to_string(),
                found: natural_reduce(other.dim).to_string(),
            });
        }
        let mut value = self.value;
        for (v, o) in value.iter_mut().zip(other.value) {
            *v += o;
        }
        Ok(VectorQuantity::new(value, self.dim))
    }

    pub fn norm_squared(&self) -> f64 {
        self.value.iter().map(|v| v * v).sum()
    }

    pub fn require(&self, expected: Dimension, argument: &str) -> Result<()> {
        Quantity::new(0.0, self.dim).require(expected, argument)
    }
}

// ---------------------------------------------------------------------------
// Parser

fn unit_token(name: &str) -> Option<Quantity> {
    let d = Dimension::from_ints;
    let (scale, dim) = match name {
        "m" => (1.0, d(1, 0, 0, 0)),
        "kg" => (1.0, d(0, 1, 0, 0)),
        "s" => (1.0, d(0, 0, 1, 0)),
        "A" => (1.0, d(0, 0, 0, 1)),
        "N" => (1.0, d(1, 1, -2, 0)),
        "J" => (1.0, d(2, 1, -2, 0)),
        "W" => (1.0, d(2, 1, -3, 0)),
        "C" => (1.0, d(0, 0, 1, 1)),
        "Hz" => (1.0, d(0, 0, -1, 0)),
        "eV" => (1.602176634e-19, d(2, 1, -2, 0)),
        "fm" => (1e-15, d(1, 0, 0, 0)),
        "nm" => (1e-9, d(1, 0, 0, 0)),
        _ => return None,
    };
    Some(Quantity::new(scale, dim))
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            chars: text.char_indices().collect(),
            pos: 0,
            text,
        }
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|(i, _)| *i)
            .unwrap_or(self.text.len())
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).map(|(_, c)| *c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
        self.pos > start
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::UnitParse {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn parse_expr(&mut self) -> Result<Quantity> {
        self.skip_ws();
        let mut acc = self.parse_term()?;
        loop {
            let had_ws = self.skip_ws();
            match self.peek() {
                Some('·') | Some('*') => {
                    self.bump();
                    self.skip_ws();
                    acc = acc * self.parse_term()?;
                }
                Some('/') => break,
                Some(c) if had_ws && (c.is_alphanumeric() || c == '(') => {
                    acc = acc * self.parse_term()?;
                }
                _ => return Ok(acc),
            }
        }
        while self.peek() == Some('/') {
            self.bump();
            self.skip_ws();
            if self.peek() == Some('(') {
                return Err(Error::UnsupportedGrammar {
                    position: self.offset(),
                    message: "division by a parenthesized group".into(),
                });
            }
            acc = acc / self.parse_term()?;
            self.skip_ws();
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Quantity> {
        let atom = self.parse_atom()?;
        if self.peek() != Some('^') {
            return Ok(atom);
        }
        self.bump();
        let p = self.parse_exponent()?;
        let magnitude = if p.is_integer() {
            atom.magnitude.powi(*p.numer() as i32)
        } else {
            atom.magnitude.powf(*p.numer() as f64 / *p.denom() as f64)
        };
        Ok(Quantity::new(magnitude, atom.dim.pow(p)))
    }

    fn parse_atom(&mut self) -> Result<Quantity> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.parse_expr()?;
                self.skip_ws();
                if self.bump() != Some(')') {
                    self.pos -= 1;
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some('1') if !self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) => {
                self.bump();
                Ok(Quantity::dimensionless(1.0))
            }
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                let start_offset = self.offset();
                while self.peek().is_some_and(char::is_alphabetic) {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().map(|(_, c)| c).collect();
                unit_token(&name).ok_or(Error::UnitParse {
                    position: start_offset,
                    message: format!("unknown unit '{name}'"),
                })
            }
            Some(c) => Err(self.error(format!("unexpected character '{c}'"))),
            None => Err(self.error("unexpected end of expression")),
        }
    }

    fn parse_integer(&mut self) -> Result<i64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("malformed exponent: expected digits"));
        }
        let digits: String = self.chars[start..self.pos].iter().map(|(_, c)| c).collect();
        digits
            .parse()
            .map_err(|_| self.error("malformed exponent: integer out of range"))
    }

    fn parse_exponent(&mut self) -> Result<Exponent> {
        let negative = match self.peek() {
            Some('-') | Some('−') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        let numer = self.parse_integer()?;
        let denom = if self.peek() == Some('/') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
            let d = self.parse_integer()?;
            if d == 0 {
                self.pos -= 1;
                return Err(self.error("malformed exponent: zero denominator"));
            }
            d
        } else {
            1
        };
        let value = Exponent::new(numer, denom);
        Ok(if negative { -value } else { value })
    }
}

/// Parses a unit expression into its scale factor and SI-base dimension.
/// Current is kept; apply [`natural_reduce`] for the natural-system form.
pub fn parse_unit_expr(text: &str) -> Result<Quantity> {
    let mut p = Parser::new(text);
    let q = p.parse_expr()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected character '{c}'")));
    }
    Ok(q)
}

/// Parses and natural-reduces in one step.
pub fn parse_natural(text: &str) -> Result<Quantity> {
    parse_unit_expr(text).map(|q| Quantity::new(q.magnitude, natural_reduce(q.dim)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermCheck {
    pub dim: Dimension,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub lhs: Dimension,
    pub terms: Vec<TermCheck>,
    pub consistent: bool,
}

impl fmt::Display for ConsistencyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lhs: {}", self.lhs)?;
        for (i, t) in self.terms.iter().enumerate() {
            writeln!(
                f,
                "rhs[{i}]: {} {}",
                t.dim,
                if t.consistent { "ok" } else { "MISMATCH" }
            )?;
        }
        write!(
            f,
            "verdict: {}",
            if self.consistent { "consistent" } else { "inconsistent" }
        )
    }
}

/// Compares every right-hand term against the left side after natural
/// reduction. An empty `rhs_terms` is a domain error.
pub fn check_equation_dims(lhs: Dimension, rhs_terms: &[Dimension]) -> Result<ConsistencyReport> {
    if rhs_terms.is_empty() {
        return Err(Error::Domain("at least one right-hand term is required".into()));
    }
    let lhs = natural_reduce(lhs);
    let terms: Vec<TermCheck> = rhs_terms
        .iter()
        .map(|d| {
            let dim = natural_reduce(*d);
            TermCheck {
                dim,
                consistent: dim == lhs,
            }
        })
        .collect();
    let consistent = terms.iter().all(|t| t.consistent);
    Ok(ConsistencyReport {
        lhs,
        terms,
        consistent,
    })
}

/// True when every exponent is an integer.
pub fn has_integer_exponents(d: &Dimension) -> bool {
    d.exponents().iter().all(|e| e.is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(text: &str) -> Dimension {
        parse_unit_expr(text).unwrap().dim
    }

    #[test]
    fn mul_examples() {
        assert_eq!(dim("m") * dim("m"), Dimension::from_ints(2, 0, 0, 0));
        assert_eq!(dim("J") * dim("m^-2"), dim("kg s^-2"));
        let d = dim("N s");
        assert_eq!(d * Dimension::dimensionless(), d);
    }

    #[test]
    fn pow_examples() {
        assert_eq!(dim("m^2").pow(Exponent::new(1, 2)), dim("m"));
        assert!(dim("kg s^-2").pow(Exponent::zero()).is_dimensionless());
        assert_eq!(
            dim("N m^-3").pow(int(2)),
            Dimension::from_ints(-4, 2, -4, 0)
        );
    }

    #[test]
    fn parse_charge_as_energy_per_area() {
        let q = parse_unit_expr("J m^-2").unwrap();
        assert_eq!(q.magnitude, 1.0);
        assert_eq!(q.dim, Dimension::from_ints(0, 1, -2, 0));
    }

    #[test]
    fn eta_units_agree_after_reduction() {
        let a = parse_natural("N m^-4").unwrap().dim;
        let b = parse_natural("C m^-3").unwrap().dim;
        assert_eq!(a, b);
        assert_ne!(dim("N m^-4"), dim("C m^-3"));
    }

    #[test]
    fn scaled_tokens() {
        let q = parse_unit_expr("fm").unwrap();
        assert_eq!(q.magnitude, 1e-15);
        assert_eq!(q.dim, natural::length());
        let q = parse_unit_expr("nm^2").unwrap();
        assert!((q.magnitude / 1e-18 - 1.0).abs() < 1e-15);
        let q = parse_unit_expr("eV").unwrap();
        assert_eq!(q.magnitude, 1.602176634e-19);
        assert_eq!(q.dim, natural::energy());
    }

    #[test]
    fn separators_and_division() {
        let a = dim("kg·m/s^2");
        assert_eq!(a, dim("kg * m * s^-2"));
        assert_eq!(a, dim("N"));
        assert_eq!(dim("J/s"), dim("W"));
        assert_eq!(dim("m^2/s"), Dimension::from_ints(2, 0, -1, 0));
        assert_eq!(dim("1/s"), dim("Hz"));
        assert_eq!(dim("kg^1/2 m^3/2 s^-1").length(), Exponent::new(3, 2));
        assert_eq!(dim("m^−2"), dim("m^-2"));
        assert_eq!(dim("m^+2"), dim("m^2"));
    }

    #[test]
    fn parenthesized_group_with_exponent() {
        let mu = dim("(C m^-3)^-1 m^2 s^-2");
        assert_eq!(mu, Dimension::from_ints(5, 0, -3, -1));
    }

    #[test]
    fn parse_errors_carry_position() {
        assert_eq!(
            parse_unit_expr("kg furlong").unwrap_err(),
            Error::UnitParse {
                position: 3,
                message: "unknown unit 'furlong'".into()
            }
        );
        assert!(matches!(
            parse_unit_expr("m^x").unwrap_err(),
            Error::UnitParse { position: 2, .. }
        ));
        assert!(matches!(
            parse_unit_expr("m^2/0").unwrap_err(),
            Error::UnitParse { position: 4, .. }
        ));
        assert!(matches!(
            parse_unit_expr("J/(m s)").unwrap_err(),
            Error::UnsupportedGrammar { position: 2, .. }
        ));
        assert!(matches!(
            parse_unit_expr("(m s").unwrap_err(),
            Error::UnitParse { .. }
        ));
        assert!(parse_unit_expr("").is_err());
        assert!(parse_unit_expr("m s)").is_err());
    }

    #[test]
    fn natural_reduce_examples() {
        assert_eq!(natural_reduce(dim("A")), dim("kg s^-3"));
        assert_eq!(natural_reduce(dim("A s")), dim("kg s^-2"));
        assert_eq!(natural_reduce(dim("C")), natural::charge());
        assert!(natural_reduce(Dimension::dimensionless()).is_dimensionless());
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(dim("N").to_string(), "kg m s^-2");
        assert_eq!(Dimension::dimensionless().to_string(), "1");
        assert_eq!(dim("m^1/2 A").to_string(), "m^1/2 A");
        assert_eq!(dim("s^-3/2").to_string(), "s^-3/2");
    }

    #[test]
    fn equation_checks() {
        let n = dim("N");
        let q = natural::charge();
        let e = natural::electric_field();
        let u = natural::velocity();
        let b = natural::magnetic_field();
        let eps = natural::coupling();
        // charge times field, dielectric included on the electric term only
        let report = check_equation_dims(n, &[q * e / eps, q * u * b]).unwrap();
        assert!(report.terms[0].consistent);
        assert!(!report.terms[1].consistent);
        assert_eq!(report.terms[1].dim, n * dim("N m^-4"));
        assert!(!report.consistent);

        let report = check_equation_dims(n, &[q / eps * e, q / eps * u * b]).unwrap();
        assert!(report.consistent);

        assert!(check_equation_dims(n, &[n]).unwrap().consistent);
        assert!(check_equation_dims(n, &[]).is_err());
    }

    #[test]
    fn natural_table_rows_have_no_current() {
        for (name, _, units) in NATURAL_UNITS_TABLE {
            let d = parse_natural(units).unwrap().dim;
            assert!(d.current().is_zero(), "{name}");
            assert!(has_integer_exponents(&d), "{name}");
        }
    }

    #[test]
    fn quantity_arithmetic() {
        let a = Quantity::new(2.0, natural::length());
        let b = Quantity::new(3.0, natural::length());
        assert_eq!(a.checked_add(&b).unwrap().magnitude, 5.0);
        assert_eq!(a.checked_sub(&b).unwrap().magnitude, -1.0);
        let t = Quantity::new(1.0, dim("s"));
        assert!(a.checked_add(&t).is_err());
        assert_eq!((a / t).dim, natural::velocity());
        assert_eq!(a.powi(2).magnitude, 4.0);
    }
}
