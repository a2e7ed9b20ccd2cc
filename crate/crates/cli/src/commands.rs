use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;

use dyncharge_core::constants::ConstantsTable;
use dyncharge_core::dynamic_charge::ProtonOscillation;
use dyncharge_core::error::{Error, Result};
use dyncharge_core::gravity::{self, OrbitalBody};
use dyncharge_core::hydrogen::{
    default_proton_radius, hbar_candidate, HydrogenModel, RadiusConvention, TimeAveraging,
};
use dyncharge_core::poisson::{
    convergence_study, solve_proton_field, Load, Profile, RadialGrid, SolverOptions, Spacing,
};
use dyncharge_core::quantity::{check_equation_dims, natural, parse_natural, parse_unit_expr};
use dyncharge_core::report::{row, Output, RunReport, Source};
use dyncharge_core::unit_systems::{maxwell_constants, Monomial, SystemName};

use clap::ValueEnum;

use crate::{
    BodyArg, ConventionArg, Format, GravityArgs, HbarArgs, HydrogenArgs, PoissonArgs, ProfileArg,
    ProtonArgs, SpacingArg, SystemsCommand, UnitsCommand,
};

pub struct Context {
    pub constants: ConstantsTable,
    pub format: Option<Format>,
}

pub struct Rendered {
    pub text: String,
    /// False when a consistency check failed (exit code 2).
    pub consistent: bool,
}

impl Rendered {
    fn ok(text: String) -> Self {
        Rendered {
            text,
            consistent: true,
        }
    }
}

fn render(ctx: &Context, report: &RunReport) -> Result<String> {
    match ctx.format.unwrap_or(Format::Text) {
        Format::Text => Ok(report.to_text()),
        Format::Json => Ok(report.to_json()),
        Format::Csv => Err(Error::Domain(format!(
            "--format csv is only available for sampled series (proton q, poisson solve), not {}",
            report.command
        ))),
    }
}

/// Parses "1.3fm", "2e-15 m" or a bare number in `bare_unit`.
pub fn parse_length(flag: &str, text: &str, bare_unit: &str) -> Result<f64> {
    let text = text.trim();
    let split = (1..=text.len())
        .rev()
        .filter(|&i| text.is_char_boundary(i))
        .find(|&i| text[..i].trim_end().parse::<f64>().is_ok());
    let bad = || Error::Domain(format!("--{flag}: expected a length such as 1.3fm, got '{text}'"));
    let i = split.ok_or_else(bad)?;
    let value: f64 = text[..i].trim_end().parse().map_err(|_| bad())?;
    let unit = match text[i..].trim() {
        "" => bare_unit,
        u => u,
    };
    let scale = parse_unit_expr(unit).map_err(|e| Error::Domain(format!("--{flag}: {e}")))?;
    scale.require(natural::length(), &format!("--{flag}"))?;
    let meters = value * scale.magnitude;
    if !(meters.is_finite() && meters > 0.0) {
        return Err(Error::Domain(format!("--{flag}: length must be positive, got '{text}'")));
    }
    Ok(meters)
}

fn sci(v: f64) -> String {
    format!("{v:e}")
}

fn choice<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn proton_radius(flag_value: Option<&str>) -> Result<f64> {
    flag_value.map_or(Ok(default_proton_radius()), |v| parse_length("rp", v, "fm"))
}

fn oscillating_proton(c: &ConstantsTable, r_p: f64) -> Result<ProtonOscillation> {
    let model = HydrogenModel::new(c, 1, r_p)?;
    ProtonOscillation::from_relative_amplitude(
        r_p,
        model.oscillation_amplitude_x(1)?,
        model.omega_h(),
        c.proton_mass(),
    )
}

pub fn units(ctx: &Context, cmd: UnitsCommand) -> Result<Rendered> {
    match cmd {
        UnitsCommand::Reduce { expr } => {
            let q = parse_natural(&expr)?;
            let mut report = RunReport::new("units reduce", &ctx.constants);
            report.input("expr", &expr);
            report.text("natural", q.dim.to_string());
            report.number("magnitude", q.magnitude, "1", Source::Computed)?;
            let text = match ctx.format {
                Some(Format::Json) => report.to_json(),
                None | Some(Format::Text) => {
                    if q.magnitude == 1.0 {
                        format!("{}\n", q.dim)
                    } else {
                        format!("{:e} {}\n", q.magnitude, q.dim)
                    }
                }
                Some(Format::Csv) => render(ctx, &report)?,
            };
            Ok(Rendered::ok(text))
        }
        UnitsCommand::Check { lhs, rhs } => {
            let l = parse_natural(&lhs)?.dim;
            let terms = rhs.iter().map(|r| parse_natural(r).map(|q| q.dim)).collect::<Result<Vec<_>>>()?;
            let check = check_equation_dims(l, &terms)?;
            let mut report = RunReport::new("units check", &ctx.constants);
            report.input("lhs", &lhs);
            for (i, r) in rhs.iter().enumerate() {
                report.input(&format!("rhs_{i}"), r);
            }
            report.text("lhs", check.lhs.to_string());
            for (i, t) in check.terms.iter().enumerate() {
                report.text(&format!("rhs_{i}"), t.dim.to_string());
                report.flag(&format!("rhs_{i}_consistent"), t.consistent);
            }
            report.flag("consistent", check.consistent);
            let text = match ctx.format {
                Some(Format::Json) => report.to_json(),
                None | Some(Format::Text) => format!("{check}\n"),
                Some(Format::Csv) => render(ctx, &report)?,
            };
            Ok(Rendered {
                text,
                consistent: check.consistent,
            })
        }
    }
}

pub fn systems(ctx: &Context, cmd: SystemsCommand) -> Result<Rendered> {
    let SystemsCommand::Table = cmd;
    let sets: Vec<_> = SystemName::ALL.iter().map(|&n| maxwell_constants(n)).collect();
    let all_hold = sets.iter().all(|s| s.wave_speed_squared() == Monomial::c_pow(2));
    if ctx.format == Some(Format::Json) {
        let mut report = RunReport::new("systems table", &ctx.constants);
        let rows = sets
            .iter()
            .map(|s| {
                BTreeMap::from([
                    ("system".to_string(), Output::Text(s.name.label().to_string())),
                    ("k1".to_string(), Output::Text(s.k1.to_string())),
                    ("k2".to_string(), Output::Text(s.k2.to_string())),
                    ("k3".to_string(), Output::Text(s.k3.to_string())),
                    ("alpha".to_string(), Output::Text(s.alpha.to_string())),
                    ("k1/(k2 k3 alpha)".to_string(), Output::Text(s.wave_speed_squared().to_string())),
                ])
            })
            .collect();
        report.table("systems", rows);
        report.flag("relation_holds", all_hold);
        return Ok(Rendered {
            text: report.to_json(),
            consistent: all_hold,
        });
    }
    if ctx.format == Some(Format::Csv) {
        return Err(Error::Domain("--format csv is not available for systems table".into()));
    }
    let header = ["system", "k1", "k2", "k3", "alpha", "k1/(k2 k3 alpha)"];
    let cells: Vec<[String; 6]> = sets
        .iter()
        .map(|s| {
            [
                s.name.label().to_string(),
                s.k1.to_string(),
                s.k2.to_string(),
                s.k3.to_string(),
                s.alpha.to_string(),
                s.wave_speed_squared().to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(|h| h.chars().count());
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut text = String::new();
    let line = |cols: Vec<&str>, text: &mut String| {
        let padded: Vec<String> = cols
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        let _ = writeln!(text, "{}", padded.join("  ").trim_end());
    };
    line(header.to_vec(), &mut text);
    for row in &cells {
        line(row.iter().map(String::as_str).collect(), &mut text);
    }
    Ok(Rendered {
        text,
        consistent: all_hold,
    })
}

pub fn proton_q(ctx: &Context, args: ProtonArgs) -> Result<Rendered> {
    if args.samples == 0 {
        return Err(Error::Domain("--samples must be at least 1".into()));
    }
    if !args.t.is_finite() {
        return Err(Error::Domain("--t must be finite".into()));
    }
    let r_p = proton_radius(args.rp.as_deref())?;
    let p = oscillating_proton(&ctx.constants, r_p)?;
    let span = args.period.unwrap_or_else(|| p.period());
    if !(span.is_finite() && span > 0.0) {
        return Err(Error::Domain("--period must be positive".into()));
    }
    let times: Vec<f64> = (0..args.samples)
        .map(|k| args.t + span * k as f64 / args.samples as f64)
        .collect();
    match ctx.format {
        Some(Format::Json) => {
            let mut report = RunReport::new("proton q", &ctx.constants);
            report
                .input("t", sci(args.t))
                .input("samples", args.samples)
                .input("period", sci(span))
                .input("rp", sci(r_p));
            report.number("q_D_amplitude", p.charge_amplitude(), "kg s^-2", Source::Computed)?;
            report.number("x", p.x(), "1", Source::Computed)?;
            let rows = times
                .iter()
                .map(|&t| {
                    row(&[
                        ("t", t, "s", Source::Input),
                        ("q_D", p.dynamic_charge(t), "kg s^-2", Source::Computed),
                    ])
                })
                .collect::<Result<Vec<_>>>()?;
            report.table("samples", rows);
            Ok(Rendered::ok(report.to_json()))
        }
        _ => {
            let mut text = String::from("t,q_D\n");
            for t in times {
                let _ = writeln!(text, "{:e},{:e}", t, p.dynamic_charge(t));
            }
            Ok(Rendered::ok(text))
        }
    }
}

pub fn poisson_solve(ctx: &Context, args: PoissonArgs) -> Result<Rendered> {
    if !args.t.is_finite() {
        return Err(Error::Domain("--t must be finite".into()));
    }
    let r_p = proton_radius(args.rp.as_deref())?;
    let r_min = args.rmin.as_deref().map_or(Ok(r_p / 10.0), |v| parse_length("rmin", v, "m"))?;
    let r_max = args.rmax.as_deref().map_or(Ok(10.0 * r_p), |v| parse_length("rmax", v, "m"))?;
    let spacing = match args.spacing {
        SpacingArg::Uniform => Spacing::Uniform,
        SpacingArg::Logarithmic => Spacing::Logarithmic,
    };
    let profile = match args.profile {
        ProfileArg::UniformSphere => Profile::UniformSphere,
        ProfileArg::Point => Profile::Point,
    };
    let grid = RadialGrid::new(r_min, r_max, args.n, spacing)?;
    let p = oscillating_proton(&ctx.constants, r_p)?;
    let opts = SolverOptions {
        k1: args.k1,
        load: Load::Integrated,
        ..SolverOptions::default()
    };
    let snap = solve_proton_field(&p, args.t, &grid, profile, &opts)?;
    let r = grid.nodes();

    if !args.study {
        if ctx.format == Some(Format::Json) {
            return Err(Error::Domain("poisson solve emits CSV; use --study for the JSON report".into()));
        }
        let mut text = String::from("r,phi,E\n");
        for ((x, phi), e) in r.iter().zip(&snap.phi).zip(&snap.e_field) {
            let _ = writeln!(text, "{:e},{:e},{:e}", x, phi, e);
        }
        return Ok(Rendered::ok(text));
    }

    let q = p.dynamic_charge(args.t);
    let k1 = args.k1;
    let exterior: Vec<usize> = (0..r.len()).filter(|&i| r[i] > r_p).collect();
    let max_ref = exterior.iter().map(|&i| (k1 * q / r[i]).abs()).fold(0.0, f64::max);
    let max_diff = exterior
        .iter()
        .map(|&i| (snap.phi[i] - k1 * q / r[i]).abs())
        .fold(0.0, f64::max);
    let exterior_error = if max_ref > 0.0 { max_diff / max_ref } else { max_diff };
    // first node whose difference stencil lies wholly outside the source
    let gauss_node = (1..r.len()).find(|&i| r[i - 1] > r_p);
    let study = convergence_study(&args.sizes)?;

    let mut report = RunReport::new("poisson solve", &ctx.constants);
    report
        .input("rmin", sci(r_min))
        .input("rmax", sci(r_max))
        .input("n", args.n)
        .input("profile", choice(&args.profile))
        .input("spacing", choice(&args.spacing))
        .input("t", sci(args.t))
        .input("k1", sci(k1))
        .input("rp", sci(r_p));
    report.number("q_D", q, "kg s^-2", Source::Computed)?;
    report.number("residual", snap.residual, "1", Source::Computed)?;
    report.number("exterior_max_error", exterior_error, "1", Source::Computed)?;
    if let Some(i) = gauss_node {
        let expected = 4.0 * PI * k1 * q;
        let flux = snap.flux(i);
        let closure = if expected != 0.0 { ((flux - expected) / expected).abs() } else { flux.abs() };
        report.number("gauss_radius", r[i], "m", Source::Computed)?;
        report.number("gauss_flux_error", closure, "1", Source::Computed)?;
    }
    let rows = study
        .rows
        .iter()
        .map(|c| {
            row(&[
                ("n_points", c.n_points as f64, "1", Source::Input),
                ("spacing", c.spacing_max, "1", Source::Computed),
                ("l2_error", c.l2_error, "1", Source::Computed),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    report.table("convergence", rows);
    report.number("min_order", study.min_order, "1", Source::Computed)?;
    report.flag("second_order", study.min_order >= 1.9);
    let text = match ctx.format {
        None | Some(Format::Json) => report.to_json(),
        _ => render(ctx, &report)?,
    };
    Ok(Rendered::ok(text))
}

pub fn hydrogen_report(ctx: &Context, args: HydrogenArgs) -> Result<Rendered> {
    let c = &ctx.constants;
    let r_p = proton_radius(args.rp.as_deref())?;
    let convention = match (args.rh.as_deref(), args.convention) {
        (Some(v), _) => RadiusConvention::Explicit(parse_length("rh", v, "m")?),
        (None, ConventionArg::FreeEnergy) => RadiusConvention::FreeEnergy,
        (None, ConventionArg::Ionization) => RadiusConvention::IonizationEnergy,
    };
    let averaging = if args.numerical_average {
        TimeAveraging::Numerical
    } else {
        TimeAveraging::Exact
    };
    let m = HydrogenModel::with_convention(c, args.n, r_p, convention)?;
    let ev = c.electron_volt();
    let electron = m.electron_energy(averaging)?;
    let eta = m.eta_from_model()?;
    let rad = m.radiation_energy(&eta, averaging)?;
    let x = m.oscillation_amplitude_x(args.n)?;
    let half = 0.5 * c.hbar() * m.omega_h();
    let hb = hbar_candidate(c, r_p)?;

    let mut report = RunReport::new("hydrogen report", c);
    report
        .input("n", args.n)
        .input("rp", sci(r_p))
        .input(
            "convention",
            match convention {
                RadiusConvention::Explicit(r) => format!("explicit {r:e} m"),
                _ => choice(&args.convention),
            },
        )
        .input("averaging", if args.numerical_average { "numerical" } else { "exact" });
    let s = Source::Computed;
    report.number("nu_H", m.nu_h, "Hz", Source::Constant)?;
    report.number("omega_H", m.omega_h(), "Hz", s)?;
    report.number("R_H", m.r_h, "m", s)?;
    report.number("R_p", r_p, "m", Source::Input)?;
    report.number("u_n", m.u_n(args.n)?, "m s^-1", s)?;
    report.number("rho0", m.rho0(), "kg m^-1", s)?;
    report.number("x", x, "1", s)?;
    report.number("d", x * r_p / 3.0, "m", s)?;
    report.number("energy_normalization", electron.normalization, "1", Source::Input)?;
    report.number("W_el", electron.w_el, "J", s)?;
    report.number("W_el_eV", electron.w_el / ev, "eV", s)?;
    report.number("W_el_quadrature_eV", electron.w_el_quadrature / ev, "eV", s)?;
    report.number("W_free_eV", electron.w_free / ev, "eV", s)?;
    report.number("delta_W_eV", electron.delta_w / ev, "eV", s)?;
    report.number("W_rad_eV", rad.magnitude / ev, "eV", s)?;
    report.text("W_rad_sign_convention", if rad.sign_convention < 0 { "-" } else { "+" });
    report.number("half_hbar_omega_eV", half / ev, "eV", s)?;
    report.number(
        "closure_delta_W_vs_W_rad",
        ((electron.delta_w - rad.magnitude) / rad.magnitude).abs(),
        "1",
        s,
    )?;
    report.number("closure_W_rad_vs_half_hbar_omega", ((rad.magnitude - half) / half).abs(), "1", s)?;
    report.number("eta", eta.value(), "N m^-4", s)?;
    report.number("eta_R_p", eta.value() * r_p, "N m^-3", s)?;
    report.number("eta_R_p_reference", 1.78e20, "N m^-3", Source::Reference)?;
    report.number("hbar_candidate", hb.value, "N^-1 m^4", s)?;
    report.flag("hbar_candidate_outside_window", hb.outside_window);
    report.number("hbar", c.hbar(), "J s", Source::Constant)?;
    report.number("q_D_amplitude", c.proton_mass() * m.omega_h().powi(2) * x, "kg s^-2", s)?;
    Ok(Rendered::ok(render(ctx, &report)?))
}

pub fn hbar_derive(ctx: &Context, args: HbarArgs) -> Result<Rendered> {
    let c = &ctx.constants;
    let mut report = RunReport::new("hbar-derive", c);
    report.input("rp", args.rp.join(","));
    let mut rows = Vec::new();
    for v in &args.rp {
        let r_p = parse_length("rp", v, "fm")?;
        let h = hbar_candidate(c, r_p)?;
        let mut cells = row(&[
            ("R_p", r_p / 1e-15, "fm", Source::Input),
            ("eta", h.eta, "N m^-4", Source::Computed),
            ("hbar_candidate", h.value, "N^-1 m^4", Source::Computed),
            ("hbar_candidate_e34", (h.value / 1e-34 * 100.0).round() / 100.0, "1", Source::Computed),
            ("relative_to_hbar", h.value / c.hbar(), "1", Source::Computed),
        ])?;
        cells.insert("outside_window".into(), Output::Flag(h.outside_window));
        rows.push(cells);
    }
    report.table("candidates", rows);
    report.number("hbar", c.hbar(), "J s", Source::Constant)?;
    Ok(Rendered::ok(render(ctx, &report)?))
}

pub fn gravity_flux(ctx: &Context, args: GravityArgs) -> Result<Rendered> {
    let c = &ctx.constants;
    let body = match (args.body, args.mass) {
        (Some(BodyArg::Earth), _) | (None, None) => OrbitalBody::earth(c)?,
        (None, Some(mass)) => OrbitalBody::new(
            mass,
            parse_length("radius", args.radius.as_deref().unwrap_or_default(), "m")?,
            parse_length("orbit", args.orbit.as_deref().unwrap_or_default(), "m")?,
            args.period.unwrap_or_default(),
        )?,
    };
    let hbar = args.hbar.unwrap_or_else(|| c.hbar());
    let est = gravity::estimate(&body, c, hbar, args.ratio)?;
    let audit = gravity::dimensional_audit()?;
    let consistent = audit.iter().all(|a| a.consistent);

    let mut report = RunReport::new("gravity flux", c);
    report
        .input("mass", sci(body.mass))
        .input("radius", sci(body.radius))
        .input("orbit", sci(body.orbit_radius))
        .input("period", sci(body.period))
        .input("ratio", sci(args.ratio))
        .input("hbar", sci(hbar));
    let s = Source::Computed;
    report.number("nu_G", est.band.nu_g, "Hz", s)?;
    report.number("band_low", est.band.low, "Hz", Source::Reference)?;
    report.number("band_high", est.band.high, "Hz", Source::Reference)?;
    report.flag("nu_G_in_band", est.band.in_band);
    report.number("G_S", est.field_amplitude, "kg m^-2 s^-2", s)?;
    report.number("G_S_over_4pi", est.field_amplitude / (4.0 * PI), "kg m^-2 s^-2", s)?;
    report.number("phi_G", est.energy_density, "J m^-3", s)?;
    report.number("J_G", est.flux, "W m^-2", s)?;
    report.number("J_G_reference", 0.070, "W m^-2", Source::Reference)?;
    report.number("solar_radiation_context", 300.0, "W m^-2", Source::Reference)?;
    report.flag("dimensions_consistent", consistent);
    Ok(Rendered {
        text: render(ctx, &report)?,
        consistent,
    })
}
