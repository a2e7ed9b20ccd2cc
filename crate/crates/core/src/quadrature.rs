//! Adaptive composite Simpson quadrature and bracketed root finding.

use crate::error::{Error, Result};

/// Absolute and relative error targets. An interval is accepted once its
/// Richardson error estimate is below `max(abs, rel * |estimate|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance {
        abs: 1e-10,
        rel: 1e-8,
    };

    pub fn new(abs: f64, rel: f64) -> Self {
        Tolerance { abs, rel }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::DEFAULT
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

const MAX_DEPTH: u32 = 48;
const INITIAL_PANELS: usize = 8;

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Integrates `f` over `[a, b]`. The interval is split at `breakpoints`
/// (points outside `(a, b)` are ignored) and each piece starts from a few
/// equal panels before adaptive bisection, so integrands with known jumps
/// or symmetric zeros at the midpoint are handled.
pub fn integrate<F>(f: F, a: f64, b: f64, breakpoints: &[f64], tol: Tolerance) -> Result<Integral>
where
    F: Fn(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!("integration limits must be finite: [{a}, {b}]")));
    }
    if a == b {
        return Ok(Integral {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        });
    }
    if a > b {
        return integrate(f, b, a, breakpoints, tol).map(|i| Integral {
            value: -i.value,
            ..i
        });
    }

    let mut cuts: Vec<f64> = std::iter::once(a)
        .chain(breakpoints.iter().copied().filter(|&p| p > a && p < b))
        .chain(std::iter::once(b))
        .collect();
    cuts.sort_by(|x, y| x.total_cmp(y));
    cuts.dedup();

    let mut evaluations = 0usize;
    let mut eval = |x: f64| {
        evaluations += 1;
        f(x)
    };

    // Coarse pass to fix the scale used by the relative tolerance.
    let mut panels = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let h = (hi - lo) / INITIAL_PANELS as f64;
        // one-sided values at interior breakpoints
        let mut fa = eval(if lo > a { lo.next_up() } else { lo });
        for k in 0..INITIAL_PANELS {
            let pa = lo + h * k as f64;
            let last = k + 1 == INITIAL_PANELS;
            let pb = if last { hi } else { lo + h * (k + 1) as f64 };
            let pm = 0.5 * (pa + pb);
            let fm = eval(pm);
            let fb = eval(if last && hi < b { hi.next_down() } else { pb });
            panels.push(Panel {
                a: pa,
                b: pb,
                fa,
                fm,
                fb,
                whole: simpson(pa, pb, fa, fm, fb),
            });
            fa = fb;
        }
    }
    let coarse: f64 = panels.iter().map(|p| p.whole).sum();
    let target = tol.abs.max(tol.rel * coarse.abs());
    let total_width = b - a;

    let mut value = 0.0;
    let mut error = 0.0;
    let mut worst_unconverged: Option<f64> = None;
    let mut stack: Vec<(Panel, u32)> = panels.into_iter().map(|p| (p, 0)).collect();
    while let Some((p, depth)) = stack.pop() {
        let m = 0.5 * (p.a + p.b);
        let lm = 0.5 * (p.a + m);
        let rm = 0.5 * (m + p.b);
        let flm = eval(lm);
        let frm = eval(rm);
        let left = simpson(p.a, m, p.fa, flm, p.fm);
        let right = simpson(m, p.b, p.fm, frm, p.fb);
        let diff = left + right - p.whole;
        let local_target = target * (p.b - p.a) / total_width;
        if diff.abs() <= 15.0 * local_target || depth >= MAX_DEPTH {
            if depth >= MAX_DEPTH && diff.abs() > 15.0 * local_target {
                let achieved = diff.abs() / 15.0;
                worst_unconverged = Some(worst_unconverged.map_or(achieved, |w: f64| w.max(achieved)));
            }
            value += left + right + diff / 15.0;
            error += diff.abs() / 15.0;
            continue;
        }
        stack.push((
            Panel {
                a: p.a,
                b: m,
                fa: p.fa,
                fm: flm,
                fb: p.fm,
                whole: left,
            },
            depth + 1,
        ));
        stack.push((
            Panel {
                a: m,
                b: p.b,
                fa: p.fm,
                fm: frm,
                fb: p.fb,
                whole: right,
            },
            depth + 1,
        ));
    }

    if !value.is_finite() {
        return Err(Error::Domain("integrand produced a non-finite value".into()));
    }
    if worst_unconverged.is_some() && error > target {
        return Err(Error::Quadrature {
            achieved: error,
            requested: target,
        });
    }
    Ok(Integral {
        value,
        error_estimate: error,
        evaluations,
    })
}

/// Bisection on a sign-changing bracket, to absolute tolerance `xtol` in x.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, xtol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || !flo.is_finite() || !fhi.is_finite() {
        return Err(Error::Domain(format!(
            "root is not bracketed by [{lo}, {hi}] (f = {flo:e}, {fhi:e})"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= xtol || mid == lo || mid == hi {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
