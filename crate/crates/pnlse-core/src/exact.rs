//! Numerically exact stationary NLSE solver by parity shooting, used as the
//! reference for every semiclassical result.
//!
//! The state integrated from the symmetry point is [psi, psi', N] with
//! N' = psi^2, so the half-line norm accumulates alongside the profile. The
//! boundary condition at the outer point is logarithmic-derivative matching
//! to the decaying tail, psi'/psi = -sqrt(-q^2), which is insensitive to the
//! exact choice of x_max.

use alloc::vec::Vec;
use libm::{fabs, pow, sqrt};

use crate::error::{Error, Result};
use crate::mapping::linspace;
use crate::ode::{self, DenseSolution, OdeOptions};
use crate::potentials::{self, Potential};
use crate::rootfind;
use crate::specfun;

#[derive(Debug, Clone)]
pub struct ExactEigenstate {
    pub n: usize,
    pub mu: f64,
    pub g: f64,
    pub x_grid: Vec<f64>,
    pub psi: Vec<f64>,
    pub decay_residual: f64,
    pub norm_error: f64,
}

/// Number of strict sign changes in a sampled profile; samples below the
/// 1e-9 amplitude threshold are ignored.
pub fn zero_count(psi: &[f64]) -> usize {
    let mut n = 0;
    let mut prev = 0.0f64;
    for &v in psi {
        if fabs(v) < 1e-9 {
            continue;
        }
        if prev != 0.0 && v.signum() != prev.signum() {
            n += 1;
        }
        prev = v;
    }
    n
}

const OUTPUT_DX: f64 = 0.01;
/// Forbidden-region action accumulated beyond the turning point before the
/// integration stops (8 decay lengths).
const TAIL_ACTION: f64 = 8.0;

fn forbidden_start(pot: &Potential, mu: f64) -> f64 {
    potentials::turning_point(pot, mu).unwrap_or(0.0)
}

/// Outer integration endpoint: the point where the forbidden-region action
/// reaches `TAIL_ACTION`.
fn outer_point(pot: &Potential, mu: f64) -> Result<f64> {
    let x0 = forbidden_start(pot, mu);
    let mut hi = x0 + 1.0;
    let mut action = potentials::action_integral(pot, mu, x0, hi)?;
    while action < TAIL_ACTION {
        hi += 1.0;
        action = potentials::action_integral(pot, mu, x0, hi)?;
        if hi > x0 + 200.0 {
            break;
        }
    }
    rootfind::brent(
        |x| {
            potentials::action_integral(pot, mu, x0, x).unwrap_or(f64::NAN) - TAIL_ACTION
        },
        x0 + 1e-6,
        hi,
        1e-10,
        0.0,
    )
}

struct Shot {
    dense: DenseSolution<3>,
    /// scaled decay residual at x_max
    s: f64,
    /// half-line norm integral including the analytic tail
    half_norm: f64,
}

fn shoot(
    pot: &Potential,
    mu: f64,
    g: f64,
    amplitude: f64,
    even: bool,
    x_max: f64,
    tol: f64,
) -> Result<Shot> {
    let rhs = move |x: f64, st: &[f64; 3]| {
        let q2 = 2.0 * (mu - pot.v(x));
        let psi = st[0];
        [st[1], -q2 * psi + 2.0 * g * psi * psi * psi, psi * psi]
    };
    let y0 = if even {
        [amplitude, 0.0, 0.0]
    } else {
        [0.0, amplitude, 0.0]
    };
    let opts = OdeOptions {
        rel_tol: tol,
        abs_tol: tol * 1e-2,
        h_max: 0.01,
        blow_up: Some(1e6),
        ..Default::default()
    };
    let dense = ode::integrate(rhs, 0.0, x_max, y0, &opts)?;
    let end = dense.y[dense.y.len() - 1];
    let q2_end = 2.0 * (mu - pot.v(x_max));
    let kappa = sqrt(fabs(q2_end));
    let raw = end[1] + kappa * end[0];
    let scale = fabs(end[1]) + kappa * fabs(end[0]) + 1e-300;
    let tail = end[0] * end[0] / (2.0 * kappa);
    Ok(Shot {
        s: raw / scale,
        half_norm: end[2] + tail,
        dense,
    })
}

/// Scaled decay residual, saturated at +-1 when the repulsive cubic term
/// drives a finite-x blow-up before the endpoint is reached.
fn residual(
    pot: &Potential,
    mu: f64,
    g: f64,
    a: f64,
    even: bool,
    x_max: f64,
    tol: f64,
) -> Result<f64> {
    match shoot(pot, mu, g, a, even, x_max, tol) {
        Ok(sh) => Ok(sh.s),
        Err(Error::BlowUp { phi, .. }) => Ok(phi.signum()),
        Err(e) => Err(e),
    }
}

fn interior_zero_count(shot: &Shot, x_limit: f64) -> usize {
    // nodes lie inside the classical turning point; past it the tail only
    // carries amplified integration error, so it is excluded
    let vals: Vec<f64> = shot
        .dense
        .t
        .iter()
        .zip(shot.dense.y.iter())
        .skip(1)
        .filter(|(t, _)| **t <= x_limit)
        .map(|(_, st)| st[0])
        .collect();
    // clip the deep tail where round-off flips signs
    let max = vals.iter().fold(0.0f64, |m, v| m.max(fabs(*v)));
    let clipped: Vec<f64> = vals
        .iter()
        .map(|&v| if fabs(v) < 1e-9 * max.max(1.0) { 0.0 } else { v })
        .collect();
    zero_count(&clipped)
}

/// Airy-based seed for the linear wedge spectrum: even states sit on zeros
/// of Ai', odd states on zeros of Ai.
fn wedge_linear_seed(n: usize, f_slope: f64) -> f64 {
    let s = n / 2 + 1;
    let prime = n % 2 == 0;
    let t = if prime {
        3.0 * core::f64::consts::PI * (4.0 * s as f64 - 3.0) / 8.0
    } else {
        3.0 * core::f64::consts::PI * (4.0 * s as f64 - 1.0) / 8.0
    };
    let guess = pow(t, 2.0 / 3.0);
    // refine to the actual zero of Ai or Ai'
    let f = |y: f64| {
        if prime {
            specfun::airy_ai_prime(-y)
        } else {
            specfun::airy_ai(-y)
        }
    };
    let zero = rootfind::brent(f, guess - 0.5, guess + 0.5, 1e-12, 0.0).unwrap_or(guess);
    // scale: eigenvalue mu = |zero| F^{2/3} / 2^{1/3}
    zero * pow(f_slope, 2.0 / 3.0) / pow(2.0, 1.0 / 3.0)
}

fn linear_seed(pot: &Potential, n: usize) -> Result<f64> {
    match *pot {
        Potential::Harmonic => Ok(n as f64 + 0.5),
        Potential::Wedge { f_slope } => Ok(wedge_linear_seed(n, f_slope)),
        _ => Err(Error::DomainError("eigenstate solver supports wedge and harmonic traps")),
    }
}

/// Linear (g = 0) eigenstate by 1D shooting in mu.
fn solve_linear(pot: &Potential, n: usize, tol: f64) -> Result<(f64, f64, f64)> {
    let even = n % 2 == 0;
    let seed = linear_seed(pot, n)?;
    let x_max = outer_point(pot, seed)?;
    let s_of = |mu: f64| residual(pot, mu, 0.0, 1.0, even, x_max, tol);
    // expand a bracket around the seed
    let mut delta = 0.02;
    let (mut lo, mut hi) = (seed, seed);
    let mut flo = s_of(seed)?;
    let mut fhi = flo;
    while delta < 1.0 {
        lo = seed - delta;
        hi = seed + delta;
        flo = s_of(lo)?;
        fhi = s_of(hi)?;
        if flo * fhi <= 0.0 {
            break;
        }
        delta *= 2.0;
    }
    if flo * fhi > 0.0 {
        return Err(Error::NoRoot("linear eigenvalue bracket"));
    }
    let mu = rootfind::brent(|m| s_of(m).unwrap_or(f64::NAN), lo, hi, 1e-12, 0.0)?;
    let shot = shoot(pot, mu, 0.0, 1.0, even, x_max, tol)?;
    let have = 2 * interior_zero_count(&shot, potentials::turning_point(pot, mu)?) + n % 2;
    if have != n {
        return Err(Error::WrongNodeCount { want: n, got: have });
    }
    let norm = 2.0 * shot.half_norm;
    Ok((mu, 1.0 / sqrt(norm), x_max))
}

/// Chemical potential matching the decaying tail at fixed amplitude, found
/// by bracketed root finding near the guess. The bracket is capped below the
/// same-parity level spacing so the fixed-node branch is not left.
fn match_mu(
    pot: &Potential,
    g: f64,
    a: f64,
    even: bool,
    mu_guess: f64,
    x_max: f64,
    tol: f64,
) -> Result<f64> {
    let s_of = |mu: f64| residual(pot, mu, g, a, even, x_max, tol);
    let mut delta = 0.01 * (1.0 + fabs(mu_guess));
    loop {
        let lo = mu_guess - delta;
        let hi = mu_guess + delta;
        let flo = s_of(lo)?;
        let fhi = s_of(hi)?;
        if flo * fhi <= 0.0 {
            return rootfind::brent(
                |m| s_of(m).unwrap_or(f64::NAN),
                lo,
                hi,
                1e-13 * (1.0 + fabs(mu_guess)),
                0.0,
            );
        }
        delta *= 2.0;
        if delta > 0.9 {
            return Err(Error::NoRoot("chemical potential bracket"));
        }
    }
}

/// Solve the coupled tail-matching and unit-norm conditions at fixed g by
/// nested bracketed root finds: mu inside, amplitude outside.
fn solve_at_g(
    pot: &Potential,
    g: f64,
    mu0: f64,
    a0: f64,
    even: bool,
    x_max: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    // track (mu, a, dmu/da) of the last successful match; the secant slope
    // extrapolates the guess so large-g amplitude steps stay inside the mu
    // bracket cap without jumping branches on weakly nonlinear states
    let last = core::cell::Cell::new((mu0, a0, 0.0f64));
    let match_at = |a: f64| -> Result<f64> {
        let (mu_last, a_last, slope) = last.get();
        let guess = mu_last + slope * (a - a_last);
        let mu = match_mu(pot, g, a, even, guess, x_max, tol)?;
        let slope = if fabs(a - a_last) > 1e-12 * (1.0 + fabs(a)) {
            (mu - mu_last) / (a - a_last)
        } else {
            slope
        };
        last.set((mu, a, slope));
        Ok(mu)
    };
    let norm_err = |a: f64| -> Result<f64> {
        let mu = match_at(a)?;
        match shoot(pot, mu, g, a, even, x_max, tol) {
            Ok(sh) => Ok(2.0 * sh.half_norm - 1.0),
            Err(Error::BlowUp { .. }) => Ok(1e6),
            Err(e) => Err(e),
        }
    };
    let mut lo = a0;
    let mut hi = a0;
    let mut flo = norm_err(a0)?;
    let mut fhi = flo;
    let mut iters = 0;
    while flo > 0.0 {
        lo *= 0.99;
        flo = norm_err(lo)?;
        iters += 1;
        if iters > 400 {
            return Err(Error::NoRoot("amplitude bracket (low side)"));
        }
    }
    while fhi < 0.0 {
        hi *= 1.01;
        fhi = norm_err(hi)?;
        iters += 1;
        if iters > 400 {
            return Err(Error::NoRoot("amplitude bracket (high side)"));
        }
    }
    let a = rootfind::brent(
        |v| norm_err(v).unwrap_or(f64::NAN),
        lo,
        hi,
        1e-13 * a0,
        1e-12,
    )?;
    let mu = match_at(a)?;
    Ok((mu, a))
}

/// Numerically exact eigenstate at interaction strength g, reached by
/// continuation from the linear state along the fixed-node branch.
pub fn solve_eigenstate_exact(
    pot: &Potential,
    g: f64,
    n: usize,
    tol: f64,
) -> Result<ExactEigenstate> {
    if !(matches!(pot, Potential::Harmonic | Potential::Wedge { .. })) {
        return Err(Error::DomainError("eigenstate solver supports wedge and harmonic traps"));
    }
    if fabs(g) > 50.0 || n > 30 {
        return Err(Error::DomainError("supported range: |g| <= 50, n <= 30"));
    }
    let even = n % 2 == 0;
    let (mut mu, mut a, _) = solve_linear(pot, n, tol)?;
    let mut g_cur = 0.0;
    let mut step = 2.0f64.min(fabs(g).max(1e-12));
    while fabs(g - g_cur) > 1e-14 && g != 0.0 {
        let remaining = g - g_cur;
        let dg = remaining.abs().min(step) * remaining.signum();
        let g_next = g_cur + dg;
        // margin covers the chemical-potential rise over this step
        let x_max = outer_point(pot, mu + 0.5 + 0.5 * fabs(dg))?;
        match solve_at_g(pot, g_next, mu, a, even, x_max, tol) {
            Ok((m, amp)) => {
                mu = m;
                a = amp;
                g_cur = g_next;
                if step < 2.0 {
                    step *= 2.0;
                }
            }
            Err(e) => {
                step *= 0.5;
                if step < 1e-3 {
                    return Err(e);
                }
            }
        }
    }
    // final profile on the output grid
    let x_max = outer_point(pot, mu)?;
    let shot = shoot(pot, mu, g, a, even, x_max, tol)?;
    let have = 2 * interior_zero_count(&shot, potentials::turning_point(pot, mu)?) + n % 2;
    if have != n {
        return Err(Error::WrongNodeCount { want: n, got: have });
    }
    let norm_error = fabs(2.0 * shot.half_norm - 1.0);
    let (x_grid, psi) = mirror_profile(&shot.dense, x_max, even);
    Ok(ExactEigenstate {
        n,
        mu,
        g,
        x_grid,
        psi,
        decay_residual: fabs(shot.s),
        norm_error,
    })
}

/// Sample the half-line solution on a uniform grid and mirror it by parity.
fn mirror_profile(dense: &DenseSolution<3>, x_max: f64, even: bool) -> (Vec<f64>, Vec<f64>) {
    let m = libm::floor(x_max / OUTPUT_DX) as usize;
    let right = linspace(0.0, m as f64 * OUTPUT_DX, m + 1);
    let mut x_grid = Vec::with_capacity(2 * m + 1);
    let mut psi = Vec::with_capacity(2 * m + 1);
    for i in (1..=m).rev() {
        let v = dense.eval(right[i]).map(|st| st[0]).unwrap_or(0.0);
        x_grid.push(-right[i]);
        psi.push(if even { v } else { -v });
    }
    for &x in &right {
        x_grid.push(x);
        psi.push(dense.eval(x).map(|st| st[0]).unwrap_or(0.0));
    }
    (x_grid, psi)
}

/// Bright soliton in the cosine lattice at fixed mu: shooting in the center
/// amplitude with a reference nonlinearity, then rescaled to unit norm. The
/// rescaling fixes the effective nonlinearity, g_eff = g_ref ||psi||^2.
pub fn solve_soliton_exact(w: f64, mu: f64, tol: f64) -> Result<(f64, Vec<f64>, Vec<f64>)> {
    if mu >= -fabs(w) {
        return Err(Error::ForbiddenWindow { mu, w });
    }
    let g_ref = -1.0;
    let pot = Potential::Cosine { w };
    let kappa_min = sqrt(-2.0 * (mu + fabs(w)));
    let x_max = 12.0 / kappa_min;
    let tol = tol.min(1e-12);
    let amp0 = sqrt(-2.0 * mu); // free-soliton amplitude at g = -1
    // The soliton sits on the separatrix in the center amplitude: below it
    // the profile stays positive, above it the profile crosses zero. Bisect
    // on that classification; a residual root find cannot separate the
    // soliton from nearby oscillatory solutions.
    // classify by the first departure event past the central peak: turning
    // negative means above the separatrix, turning back upward while still
    // positive means below. Scanning the whole window for a sign change
    // instead would also pick up multi-hump bound states in the lattice.
    let crosses = |a: f64| -> Result<bool> {
        match shoot(&pot, mu, g_ref, a, true, x_max, tol) {
            Ok(sh) => {
                for st in &sh.dense.y {
                    if st[0] < 0.0 {
                        return Ok(true);
                    }
                    if st[0] < 0.9 * a && st[1] > 0.0 {
                        return Ok(false);
                    }
                }
                Ok(sh.dense.y[sh.dense.y.len() - 1][1] > 0.0)
            }
            Err(Error::BlowUp { phi, .. }) => Ok(phi < 0.0),
            Err(e) => Err(e),
        }
    };
    let mut lo = 0.8 * amp0;
    let mut hi = 1.5 * amp0;
    if crosses(lo)? {
        return Err(Error::NoRoot("soliton bisection lower bound"));
    }
    if !crosses(hi)? {
        return Err(Error::NoRoot("soliton bisection upper bound"));
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if crosses(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let shot = shoot(&pot, mu, g_ref, lo, true, x_max, tol)?;
    let norm = 2.0 * shot.half_norm;
    let g_eff = g_ref * norm;
    // report the profile only out to 9 decay lengths; beyond that the tail
    // is dominated by amplified integration error
    let (x_grid, mut psi) = mirror_profile(&shot.dense, 0.75 * x_max, true);
    let scale = 1.0 / sqrt(norm);
    for v in &mut psi {
        *v *= scale;
    }
    Ok((g_eff, x_grid, psi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_count_basics() {
        assert_eq!(zero_count(&[1.0, -1.0, 1.0, -1.0]), 3);
        assert_eq!(zero_count(&[0.5, 0.2, 0.9]), 0);
        // sub-threshold wiggles ignored
        assert_eq!(zero_count(&[1.0, 1e-12, -1e-12, 1.0]), 0);
    }

    #[test]
    fn harmonic_linear_spectrum() {
        for n in [0usize, 3, 7] {
            let st = solve_eigenstate_exact(&Potential::Harmonic, 0.0, n, 1e-10).unwrap();
            assert!(
                (st.mu - (n as f64 + 0.5)).abs() < 1e-8,
                "n = {n}: mu = {}",
                st.mu
            );
            assert_eq!(zero_count(&st.psi), n);
            assert!(st.norm_error < 1e-8);
        }
    }

    #[test]
    fn wedge_linear_ground_state() {
        let pot = Potential::Wedge { f_slope: 1.0 };
        let st = solve_eigenstate_exact(&pot, 0.0, 0, 1e-10).unwrap();
        // even-state condition Ai'(-2^{1/3} mu) = 0 at the first Ai' zero
        let zero = rootfind::brent(
            |y| specfun::airy_ai_prime(-y),
            0.8,
            1.3,
            1e-12,
            0.0,
        )
        .unwrap();
        let want = zero / 2f64.powf(1.0 / 3.0);
        assert!((st.mu - want).abs() < 1e-7, "mu = {} want {want}", st.mu);
    }

    #[test]
    fn thomas_fermi_limit() {
        let st = solve_eigenstate_exact(&Potential::Harmonic, 10.0, 0, 1e-10).unwrap();
        let tf = 0.5 * (3.0 * 10.0 / 2.0f64).powf(2.0 / 3.0);
        assert!((st.mu - tf).abs() / tf < 0.05, "mu = {} tf = {tf}", st.mu);
    }

    #[test]
    fn pointwise_ode_residual() {
        let st = solve_eigenstate_exact(&Potential::Harmonic, 3.0, 4, 1e-10).unwrap();
        // re-difference the output profile
        let h = OUTPUT_DX;
        let mut worst = 0.0f64;
        for i in 2..st.x_grid.len() - 2 {
            let x = st.x_grid[i];
            let psi = st.psi[i];
            let second = (st.psi[i + 1] - 2.0 * psi + st.psi[i - 1]) / (h * h);
            let q2 = 2.0 * (st.mu - 0.5 * x * x);
            let res = second + q2 * psi - 2.0 * st.g * psi * psi * psi;
            // second-difference truncation ~ h^2 psi'''' / 12 dominates
            worst = worst.max(res.abs());
        }
        assert!(worst < 2e-2, "worst residual {worst}");
    }

    #[test]
    fn mu_increases_with_g() {
        let mut prev = f64::MIN;
        for g in [0.0, 1.0, 2.5, 5.0] {
            let st = solve_eigenstate_exact(&Potential::Harmonic, g, 6, 1e-10).unwrap();
            assert!(st.mu > prev);
            prev = st.mu;
        }
    }

    #[test]
    fn free_soliton_reference() {
        let (g_eff, x, psi) = solve_soliton_exact(0.0, -1.0, 1e-10).unwrap();
        assert!((g_eff + 8f64.sqrt()).abs() < 1e-6, "g_eff = {g_eff}");
        // compare against the normalized sech profile
        let amp = (2f64.sqrt() / 2.0).sqrt(); // sqrt(2 nu / g) with nu = -g^2/8
        for (xi, pi) in x.iter().zip(psi.iter()) {
            let want = amp / (2f64.sqrt() * xi).cosh();
            assert!((pi - want).abs() < 1e-6, "x = {xi} got {pi:.3e} want {want:.3e}");
        }
    }

    #[test]
    fn soliton_tail_decay_rate() {
        let (_, x, psi) = solve_soliton_exact(-0.2, -1.0, 1e-10).unwrap();
        // effective decay rate between x = 4 and x = 6 sits in the bracket
        // sqrt(-2 (mu + w)) ... sqrt(-2 (mu - w))
        let at = |target: f64| {
            let i = x.iter().position(|&v| (v - target).abs() < 5e-3).unwrap();
            psi[i]
        };
        let rate = (at(4.0) / at(6.0)).ln() / 2.0;
        let lo = (2.0 * 0.8f64).sqrt();
        let hi = (2.0 * 1.2f64).sqrt();
        assert!(rate > lo - 0.1 && rate < hi + 0.1, "rate = {rate}");
    }

    #[test]
    fn soliton_forbidden_window() {
        assert!(matches!(
            solve_soliton_exact(-0.2, -0.1, 1e-10),
            Err(Error::ForbiddenWindow { .. })
        ));
    }
}

