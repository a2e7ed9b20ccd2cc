use std::f64::consts::PI;

use num_rational::Rational64;
use proptest::prelude::*;

use dyncharge_core::constants::{ConstantsTable, Key};
use dyncharge_core::dynamic_charge::ProtonOscillation;
use dyncharge_core::hydrogen::{eta_from_radius, hbar_candidate};
use dyncharge_core::poisson::{solve_radial_poisson, Boundary, Load, RadialGrid, SolverOptions, Source, Spacing};
use dyncharge_core::quantity::{
    dim_mul, dim_pow, natural, natural_reduce, parse_unit_expr, Dimension, Quantity, VectorQuantity,
};
use dyncharge_core::unit_systems::{lorentz_force, EtaCoupling, FieldState};

fn rational() -> impl Strategy<Value = Rational64> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Rational64::new(n, d))
}

fn dimension() -> impl Strategy<Value = Dimension> {
    (rational(), rational(), rational(), rational()).prop_map(|(l, m, t, i)| Dimension::new(l, m, t, i))
}

fn vector() -> impl Strategy<Value = [f64; 3]> {
    [-1e3..1e3f64, -1e3..1e3f64, -1e3..1e3f64]
}

proptest! {
    #[test]
    fn mul_is_commutative_and_associative(a in dimension(), b in dimension(), c in dimension()) {
        prop_assert_eq!(dim_mul(a, b), dim_mul(b, a));
        prop_assert_eq!(dim_mul(dim_mul(a, b), c), dim_mul(a, dim_mul(b, c)));
        prop_assert_eq!(dim_mul(a, Dimension::dimensionless()), a);
    }

    #[test]
    fn pow_distributes_over_mul(a in dimension(), b in dimension(), p in rational()) {
        prop_assert_eq!(dim_pow(dim_mul(a, b), p), dim_mul(dim_pow(a, p), dim_pow(b, p)));
    }

    #[test]
    fn print_parse_round_trip(d in dimension()) {
        let printed = d.to_string();
        let parsed = parse_unit_expr(&printed).unwrap();
        prop_assert_eq!(parsed.dim, d);
        prop_assert_eq!(parsed.magnitude, 1.0);
        prop_assert_eq!(parsed.dim.to_string(), printed);
    }

    #[test]
    fn natural_reduce_idempotent_and_multiplicative(a in dimension(), b in dimension()) {
        let ra = natural_reduce(a);
        prop_assert_eq!(natural_reduce(ra), ra);
        prop_assert_eq!(ra.current(), Rational64::from_integer(0));
        prop_assert_eq!(natural_reduce(dim_mul(a, b)), dim_mul(ra, natural_reduce(b)));
    }

    #[test]
    fn constants_override_round_trip(scale in 0.5..2.0f64, which in 0usize..Key::ALL.len()) {
        let key = Key::ALL[which];
        let base = ConstantsTable::default();
        let table = base.with(key, base.get(key) * scale, "test").unwrap();
        let back = ConstantsTable::default().merge_overrides(&table.to_override_text(), "round-trip").unwrap();
        for k in Key::ALL {
            prop_assert_eq!(back.get(k), table.get(k), "{}", k.name());
        }
        prop_assert_eq!(back.fingerprint(), table.fingerprint());
    }

    #[test]
    fn poisson_is_linear(a in -5.0..5.0f64, b in -5.0..5.0f64, f in 0.5..4.0f64, cut in 0.2..0.9f64) {
        let grid = RadialGrid::new(0.1, 1.0, 96, Spacing::Logarithmic).unwrap();
        let r = grid.nodes();
        let s1: Vec<f64> = r.iter().map(|x| (f * x).cos()).collect();
        let s2: Vec<f64> = r.iter().map(|&x| if x < cut { 1.0 } else { 0.0 }).collect();
        let combo: Vec<f64> = s1.iter().zip(&s2).map(|(x, y)| a * x + b * y).collect();
        let opts = SolverOptions { load: Load::Nodal, ..SolverOptions::default() };
        let solve = |s: &[f64]| {
            solve_radial_poisson(&grid, Source::Nodal(s), Boundary::Field(0.0), Boundary::Value(0.0), &opts)
                .unwrap()
                .phi
        };
        let (p1, p2, pc) = (solve(&s1), solve(&s2), solve(&combo));
        let scale = p1.iter().chain(&p2).map(|v| v.abs()).fold(0.0, f64::max) * (a.abs() + b.abs()).max(1e-3);
        for i in 0..r.len() {
            prop_assert!((pc[i] - (a * p1[i] + b * p2[i])).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn lorentz_force_is_linear_in_charge_and_field(
        q in -1e2..1e2f64, k in -10.0..10.0f64, e1 in vector(), e2 in vector(), u in vector(), b in vector()
    ) {
        let eta = EtaCoupling::new(1.3e35).unwrap();
        let state = |q: f64, e: [f64; 3]| FieldState {
            charge: Quantity::new(q, natural::charge()),
            e_field: VectorQuantity::new(e, natural::electric_field()),
            velocity: VectorQuantity::new(u, natural::velocity()),
            b_field: VectorQuantity::new(b, natural::magnetic_field()),
        };
        let f = lorentz_force(&state(q, e1), &eta).unwrap();
        let fk = lorentz_force(&state(k * q, e1), &eta).unwrap();
        let sum = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
        let zero_b = |e: [f64; 3]| FieldState { b_field: VectorQuantity::zero(natural::magnetic_field()), ..state(q, e) };
        let fa = lorentz_force(&zero_b(e1), &eta).unwrap();
        let fb = lorentz_force(&zero_b(e2), &eta).unwrap();
        let fs = lorentz_force(&zero_b(sum), &eta).unwrap();
        let tol = 1e-12 * (f.norm_squared().sqrt() + fs.norm_squared().sqrt() + 1e-300) * (1.0 + k.abs());
        for i in 0..3 {
            prop_assert!((fk.value[i] - k * f.value[i]).abs() <= tol);
            prop_assert!((fs.value[i] - fa.value[i] - fb.value[i]).abs() <= tol + 1e-12 * fs.norm_squared().sqrt());
        }
        prop_assert_eq!(f.dim, natural::force());
    }

    #[test]
    fn dynamic_charge_is_odd_and_periodic(t in -1e-15..1e-15f64, ratio in 1e-6..0.1f64) {
        let p = ProtonOscillation::new(1.37e-15, ratio * 1.37e-15, 2.0 * PI * 6.57e15, 1.67e-27, 1.0).unwrap();
        let amp = p.charge_amplitude();
        prop_assert!((p.dynamic_charge(-t) + p.dynamic_charge(t)).abs() <= 1e-12 * amp);
        prop_assert!((p.dynamic_charge(t + p.period()) - p.dynamic_charge(t)).abs() <= 1e-6 * amp);
        let m = p.density_exact(t) * 4.0 / 3.0 * PI * p.radius_at(t).powi(3);
        prop_assert!((m / p.mass - 1.0).abs() < 1e-13);
    }

    #[test]
    fn hbar_candidate_scales_with_radius(r_fm in 0.5..3.0f64, k in 0.5..2.0f64) {
        let c = ConstantsTable::default();
        let a = hbar_candidate(&c, r_fm * 1e-15).unwrap().value;
        let b = hbar_candidate(&c, k * r_fm * 1e-15).unwrap().value;
        prop_assert!((b / (k * a) - 1.0).abs() < 1e-14);
        let pa = eta_from_radius(&c, r_fm * 1e-15).unwrap().value() * r_fm * 1e-15;
        let pb = eta_from_radius(&c, k * r_fm * 1e-15).unwrap().value() * k * r_fm * 1e-15;
        prop_assert!((pa / pb - 1.0).abs() < 1e-14);
    }
}
