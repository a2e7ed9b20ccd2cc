//! Spherically symmetric finite-difference solver for
//!
//! ```text
//! (1/r²) d/dr (r² dφ/dr) = −4π k1 s(r)
//! ```
//!
//! With `k1 = 1` a point charge q has φ = q/r and E = q/r²; with
//! `k1 = 1/(4π)` the equation is `Δφ = −s` and the flux `4πr²E` equals the
//! enclosed source.
//!
//! The solver works with `u = rφ`, for which the operator becomes `u''/r`.
//! Harmonic solutions `a + b/r` are then linear in `u`, so the three-point
//! stencil reproduces them exactly. Each row is the control-volume balance
//! `(u[i+1]-u[i])/h₊ − (u[i]-u[i-1])/h₋ = load[i]`, solved with the Thomas
//! algorithm.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::dynamic_charge::ProtonOscillation;
use crate::error::{Error, Result};
use crate::quadrature::{integrate, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Uniform,
    Logarithmic,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialGrid {
    r_min: f64,
    r_max: f64,
    spacing: Spacing,
    nodes: Vec<f64>,
}

pub const MIN_POINTS: usize = 16;

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, n_points: usize, spacing: Spacing) -> Result<Self> {
        if !(r_min.is_finite() && r_max.is_finite() && r_min > 0.0 && r_min < r_max) {
            return Err(Error::Domain(format!(
                "grid requires 0 < r_min < r_max, got [{r_min:e}, {r_max:e}]"
            )));
        }
        if n_points < MIN_POINTS {
            return Err(Error::Domain(format!(
                "grid requires at least {MIN_POINTS} points, got {n_points}"
            )));
        }
        let last = (n_points - 1) as f64;
        let mut nodes: Vec<f64> = match spacing {
            Spacing::Uniform => (0..n_points)
                .map(|i| r_min + (r_max - r_min) * i as f64 / last)
                .collect(),
            Spacing::Logarithmic => {
                let ratio = (r_max / r_min).ln();
                (0..n_points)
                    .map(|i| r_min * (ratio * i as f64 / last).exp())
                    .collect()
            }
        };
        nodes[0] = r_min;
        nodes[n_points - 1] = r_max;
        if nodes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Domain("grid nodes are not strictly increasing".into()));
        }
        Ok(RadialGrid {
            r_min,
            r_max,
            spacing,
            nodes,
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }
}

/// Boundary condition. `Field` prescribes E = −dφ/dr.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    Value(f64),
    Field(f64),
}

/// Source density `s(r)` on the right-hand side.
#[derive(Clone, Copy)]
pub enum Source<'a> {
    /// One value per grid node.
    Nodal(&'a [f64]),
    /// A function of r, with radii where it may be discontinuous.
    Function {
        density: &'a (dyn Fn(f64) -> f64 + Sync),
        breakpoints: &'a [f64],
    },
}

/// How a function source is turned into row loads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Load {
    /// Point samples times the control-volume width: the plain second-order
    /// finite-difference discretization.
    Nodal,
    /// Hat-function-weighted integrals of the source. Exact charge and first
    /// moment even for discontinuous sources.
    Integrated,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub k1: f64,
    pub load: Load,
    pub tolerance: Tolerance,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            k1: 1.0,
            load: Load::Integrated,
            tolerance: Tolerance::new(0.0, 1e-12),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldSnapshot {
    pub grid: RadialGrid,
    /// Scalar potential at each node.
    pub phi: Vec<f64>,
    /// E = −dφ/dr at each node.
    pub e_field: Vec<f64>,
    pub t: f64,
    /// ‖A u − b‖ / ‖b‖ of the discrete system after the solve.
    pub residual: f64,
}

impl FieldSnapshot {
    /// 4π r² E at node `i`.
    pub fn flux(&self, i: usize) -> f64 {
        let r = self.grid.nodes()[i];
        4.0 * PI * r * r * self.e_field[i]
    }
}

struct Tridiagonal {
    lower: Vec<f64>,
    diag: Vec<f64>,
    upper: Vec<f64>,
}

impl Tridiagonal {
    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = x.len();
        (0..n)
            .map(|i| {
                let mut v = self.diag[i] * x[i];
                if i > 0 {
                    v += self.lower[i] * x[i - 1];
                }
                if i + 1 < n {
                    v += self.upper[i] * x[i + 1];
                }
                v
            })
            .collect()
    }

    /// Thomas algorithm. `lower[0]` and `upper[n-1]` are ignored.
    fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let n = rhs.len();
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        for i in 0..n {
            let l = if i > 0 { self.lower[i] } else { 0.0 };
            let denom = self.diag[i] - if i > 0 { l * c[i - 1] } else { 0.0 };
            let scale = self.diag[i].abs() + l.abs() + self.upper[i].abs();
            if !denom.is_finite() || denom.abs() <= 1e-13 * scale {
                return Err(Error::Singular { row: i });
            }
            c[i] = if i + 1 < n { self.upper[i] / denom } else { 0.0 };
            d[i] = (rhs[i] - if i > 0 { l * d[i - 1] } else { 0.0 }) / denom;
        }
        let mut x = d;
        for i in (0..n - 1).rev() {
            x[i] -= c[i] * x[i + 1];
        }
        Ok(x)
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn loads(grid: &RadialGrid, source: &Source<'_>, opts: &SolverOptions) -> Result<Vec<f64>> {
    let r = grid.nodes();
    let n = r.len();
    let scale = -4.0 * PI * opts.k1;
    let width = |i: usize| {
        let left = if i > 0 { r[i] - r[i - 1] } else { 0.0 };
        let right = if i + 1 < n { r[i + 1] - r[i] } else { 0.0 };
        0.5 * (left + right)
    };
    let nodal = |values: &dyn Fn(usize) -> f64| -> Result<Vec<f64>> {
        (0..n)
            .map(|i| {
                let s = values(i);
                if !s.is_finite() {
                    return Err(Error::Domain(format!("non-finite source at r = {:e}", r[i])));
                }
                Ok(scale * r[i] * s * width(i))
            })
            .collect()
    };
    match (source, opts.load) {
        (Source::Nodal(values), _) => {
            if values.len() != n {
                return Err(Error::GridMismatch {
                    expected: n,
                    found: values.len(),
                });
            }
            nodal(&|i| values[i])
        }
        (Source::Function { density, .. }, Load::Nodal) => nodal(&|i| density(r[i])),
        (Source::Function { density, breakpoints }, Load::Integrated) => {
            for &ri in r {
                if !density(ri).is_finite() {
                    return Err(Error::Domain(format!("non-finite source at r = {ri:e}")));
                }
            }
            let mut out = vec![0.0; n];
            for i in 0..n {
                let mut total = 0.0;
                if i > 0 {
                    let (a, b) = (r[i - 1], r[i]);
                    let h = b - a;
                    total += integrate(|x| x * density(x) * (x - a) / h, a, b, breakpoints, opts.tolerance)?
                        .value;
                }
                if i + 1 < n {
                    let (a, b) = (r[i], r[i + 1]);
                    let h = b - a;
                    total += integrate(|x| x * density(x) * (b - x) / h, a, b, breakpoints, opts.tolerance)?
                        .value;
                }
                out[i] = scale * total;
            }
            Ok(out)
        }
    }
}

/// Solves the radial problem on `grid`. At least one boundary must be a
/// `Value` condition.
pub fn solve_radial_poisson(
    grid: &RadialGrid,
    source: Source<'_>,
    inner: Boundary,
    outer: Boundary,
    opts: &SolverOptions,
) -> Result<FieldSnapshot> {
    if let (Boundary::Field(_), Boundary::Field(_)) = (inner, outer) {
        return Err(Error::WellPosedness(
            "field (flux) conditions at both boundaries leave the potential undetermined; \
             prescribe a value at one end"
                .into(),
        ));
    }
    for b in [inner, outer] {
        let (Boundary::Value(v) | Boundary::Field(v)) = b;
        if !v.is_finite() {
            return Err(Error::Domain("boundary values must be finite".into()));
        }
    }
    if !(opts.k1.is_finite() && opts.k1 > 0.0) {
        return Err(Error::Domain(format!("k1 must be positive, got {}", opts.k1)));
    }

    let r = grid.nodes();
    let n = r.len();
    let mut rhs = loads(grid, &source, opts)?;
    let mut m = Tridiagonal {
        lower: vec![0.0; n],
        diag: vec![0.0; n],
        upper: vec![0.0; n],
    };
    for i in 1..n - 1 {
        let hm = r[i] - r[i - 1];
        let hp = r[i + 1] - r[i];
        m.lower[i] = 1.0 / hm;
        m.diag[i] = -1.0 / hm - 1.0 / hp;
        m.upper[i] = 1.0 / hp;
    }

    // u'(r) = φ + rφ' = u/r − r E
    let h0 = r[1] - r[0];
    match inner {
        Boundary::Value(v) => {
            m.diag[0] = 1.0;
            m.upper[0] = 0.0;
            rhs[0] = r[0] * v;
        }
        Boundary::Field(e) => {
            m.diag[0] = -1.0 / h0 - 1.0 / r[0];
            m.upper[0] = 1.0 / h0;
            rhs[0] -= r[0] * e;
        }
    }
    let last = n - 1;
    let hn = r[last] - r[last - 1];
    match outer {
        Boundary::Value(v) => {
            m.diag[last] = 1.0;
            m.lower[last] = 0.0;
            rhs[last] = r[last] * v;
        }
        Boundary::Field(e) => {
            m.diag[last] = 1.0 / r[last] - 1.0 / hn;
            m.lower[last] = 1.0 / hn;
            rhs[last] += r[last] * e;
        }
    }

    let u = m.solve(&rhs)?;
    let au = m.apply(&u);
    let diff: Vec<f64> = au.iter().zip(&rhs).map(|(a, b)| a - b).collect();
    let denom = norm(&rhs);
    let residual = if denom > 0.0 { norm(&diff) / denom } else { norm(&diff) };

    let phi: Vec<f64> = u.iter().zip(r).map(|(u, r)| u / r).collect();
    let mut e_field = vec![0.0; n];
    for i in 0..n {
        let du = if i == 0 {
            let (h1, h2) = (r[1] - r[0], r[2] - r[1]);
            -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * u[0] + (h1 + h2) / (h1 * h2) * u[1]
                - h1 / (h2 * (h1 + h2)) * u[2]
        } else if i == last {
            let (h1, h2) = (r[i] - r[i - 1], r[i - 1] - r[i - 2]);
            (2.0 * h1 + h2) / (h1 * (h1 + h2)) * u[i] - (h1 + h2) / (h1 * h2) * u[i - 1]
                + h1 / (h2 * (h1 + h2)) * u[i - 2]
        } else {
            let (hm, hp) = (r[i] - r[i - 1], r[i + 1] - r[i]);
            (hm * hm * u[i + 1] - hp * hp * u[i - 1] + (hp * hp - hm * hm) * u[i])
                / (hm * hp * (hm + hp))
        };
        // E = −φ' = (φ − u')/r
        e_field[i] = (phi[i] - du) / r[i];
    }
    if let Boundary::Field(e) = inner {
        e_field[0] = e;
    }
    if let Boundary::Field(e) = outer {
        e_field[last] = e;
    }

    if phi.iter().chain(&e_field).any(|v| !v.is_finite()) {
        return Err(Error::Domain("solution contains non-finite values".into()));
    }
    Ok(FieldSnapshot {
        grid: grid.clone(),
        phi,
        e_field,
        t: 0.0,
        residual,
    })
}

/// φ = q/r for a point charge in the k1 = 1 convention.
pub fn analytic_monopole_phi(q: f64, r: f64) -> Result<f64> {
    if r.is_nan() || r <= 0.0 {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    Ok(q / r)
}

/// E = q/r² for a point charge in the k1 = 1 convention.
pub fn analytic_monopole_field(q: f64, r: f64) -> Result<f64> {
    analytic_monopole_phi(q, r).map(|phi| phi / r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    /// Dynamic source spread uniformly over the proton.
    UniformSphere,
    /// All charge inside the inner boundary.
    Point,
}

/// Solves for the field of an oscillating proton at time `t`. The outer
/// boundary matches the free-space potential k1·q/r.
pub fn solve_proton_field(
    p: &ProtonOscillation,
    t: f64,
    grid: &RadialGrid,
    profile: Profile,
    opts: &SolverOptions,
) -> Result<FieldSnapshot> {
    let q = p.dynamic_charge(t);
    let k1 = opts.k1;
    let (r0, rn) = (grid.r_min(), grid.r_max());
    let outer = Boundary::Value(k1 * q / rn);
    let mut snap = match profile {
        Profile::Point => {
            let zeros = vec![0.0; grid.len()];
            solve_radial_poisson(
                grid,
                Source::Nodal(&zeros),
                Boundary::Field(k1 * q / (r0 * r0)),
                outer,
                opts,
            )?
        }
        Profile::UniformSphere => {
            if rn < p.radius {
                return Err(Error::Domain("grid must extend beyond the proton radius".into()));
            }
            let density = |r: f64| p.dynamic_density(t, r);
            let enclosed = p.dynamic_density(t, 0.0) * 4.0 / 3.0 * PI * r0.min(p.radius).powi(3);
            solve_radial_poisson(
                grid,
                Source::Function {
                    density: &density,
                    breakpoints: &[p.radius],
                },
                Boundary::Field(k1 * enclosed / (r0 * r0)),
                outer,
                opts,
            )?
        }
    };
    snap.t = t;
    Ok(snap)
}

/// A problem with known solution used for convergence measurements.
pub struct Manufactured {
    pub r_min: f64,
    pub r_max: f64,
    pub k1: f64,
    pub phi: Box<dyn Fn(f64) -> f64 + Sync + Send>,
    pub field: Box<dyn Fn(f64) -> f64 + Sync + Send>,
    pub source: Box<dyn Fn(f64) -> f64 + Sync + Send>,
}

impl Manufactured {
    /// φ = sin(k r)/r on [0.1, 1], which satisfies Δφ = −k²φ.
    pub fn standing_wave() -> Self {
        const K: f64 = 3.0;
        Manufactured {
            r_min: 0.1,
            r_max: 1.0,
            k1: 1.0,
            phi: Box::new(|r| (K * r).sin() / r),
            field: Box::new(|r| -(K * (K * r).cos() / r - (K * r).sin() / (r * r))),
            source: Box::new(|r| K * K * (K * r).sin() / r / (4.0 * PI)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n_points: usize,
    pub spacing_max: f64,
    pub l2_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    /// Observed order between consecutive rows.
    pub orders: Vec<f64>,
    pub min_order: f64,
}

/// Runs the standing-wave problem on uniform grids of the given sizes.
pub fn convergence_study(sizes: &[usize]) -> Result<ConvergenceReport> {
    convergence_study_with(&Manufactured::standing_wave(), sizes, Spacing::Uniform)
}

pub fn convergence_study_with(
    problem: &Manufactured,
    sizes: &[usize],
    spacing: Spacing,
) -> Result<ConvergenceReport> {
    if sizes.len() < 3 {
        return Err(Error::Domain(format!(
            "convergence study needs at least 3 grid sizes, got {}",
            sizes.len()
        )));
    }
    if sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("grid sizes must be strictly increasing refinements".into()));
    }
    let opts = SolverOptions {
        k1: problem.k1,
        load: Load::Nodal,
        ..SolverOptions::default()
    };
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let grid = RadialGrid::new(problem.r_min, problem.r_max, n, spacing)?;
        let snap = solve_radial_poisson(
            &grid,
            Source::Function {
                density: &problem.source,
                breakpoints: &[],
            },
            Boundary::Field((problem.field)(problem.r_min)),
            Boundary::Value((problem.phi)(problem.r_max)),
            &opts,
        )?;
        let r = grid.nodes();
        let mut sum = 0.0;
        for i in 0..r.len() {
            let w = 0.5
                * (if i > 0 { r[i] - r[i - 1] } else { 0.0 }
                    + if i + 1 < r.len() { r[i + 1] - r[i] } else { 0.0 });
            let e = snap.phi[i] - (problem.phi)(r[i]);
            sum += w * e * e;
        }
        let spacing_max = r.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
        rows.push(ConvergenceRow {
            n_points: n,
            spacing_max,
            l2_error: sum.sqrt(),
        });
    }
    let orders: Vec<f64> = rows
        .windows(2)
        .map(|w| (w[0].l2_error / w[1].l2_error).ln() / (w[0].spacing_max / w[1].spacing_max).ln())
        .collect();
    let min_order = orders.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(ConvergenceReport {
        rows,
        orders,
        min_order,
    })
}
