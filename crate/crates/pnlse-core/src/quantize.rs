//! Semiclassical quantization: the algebraic conditions fixing k_n at given
//! chemical potential, the nonlinearity g_n(mu) from normalization, the
//! inverse solve mu(g, n), and assembly of the semiclassical wavefunction.

use alloc::vec::Vec;
use core::f64::consts::PI;
use libm::{fabs, log, pow, sqrt};

use crate::error::{Error, Result};
use crate::mapping::{self, MappingFunction};
use crate::painleve::{self, PainleveSolution};
use crate::potentials::{self, Potential};
use crate::rootfind;
use crate::specfun;

const GRID_DX: f64 = 0.01;
const Y_MATCH: f64 = 8.0;
const ODE_TOL: f64 = 1e-10;
const K_RESIDUAL_TOL: f64 = 1e-10;
const OUTER_G_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
pub struct Diagnostics {
    /// mapped coordinate at the symmetry point, y(0) < 0
    pub y0: f64,
    pub quantization_residual: f64,
    pub norm_error: f64,
    /// |y(0)|; the oscillatory asymptote is unreliable below ~2
    pub asymptotic_validity: f64,
}

impl Diagnostics {
    /// True when |y(0)| is too small for the asymptotic phase condition.
    pub fn flagged(&self) -> bool {
        self.asymptotic_validity < 2.0
    }
}

#[derive(Debug, Clone)]
pub struct EigenstateResult {
    pub n: usize,
    pub mu: f64,
    pub g: f64,
    pub k: f64,
    pub sigma: i32,
    pub x_grid: Vec<f64>,
    pub psi: Vec<f64>,
    pub diagnostics: Diagnostics,
}

/// Quantization condition for the linear-ramp trap, closed form:
/// (2 mu)^{3/2} / (3F) - (3/4) sigma d^2 ln(2^{1/3} mu / F^{2/3}) - theta
/// minus (n + 1) pi / 2.
pub fn wedge_residual(mu: f64, k: f64, f_slope: f64, sigma: i32, n: usize) -> Result<f64> {
    let cc = specfun::connection_constants(k, sigma)?;
    let action = pow(2.0 * mu, 1.5) / (3.0 * f_slope);
    let y0_abs = pow(2.0, 1.0 / 3.0) * mu / pow(f_slope, 2.0 / 3.0);
    Ok(action - 0.75 * sigma as f64 * cc.d_squared * log(y0_abs) - cc.theta
        - (n as f64 + 1.0) * PI / 2.0)
}

/// Quantization condition through the turning-point map:
/// (2/3)|y(0)|^{3/2} - (3/4) sigma d^2 ln|y(0)| - theta - (n + 1) pi / 2,
/// where (2/3)|y(0)|^{3/2} equals the classically allowed action.
pub fn mapped_residual(mu: f64, k: f64, pot: &Potential, sigma: i32, n: usize) -> Result<f64> {
    let cc = specfun::connection_constants(k, sigma)?;
    let map = mapping::build_turning_point_map(pot, mu, &[0.0])?;
    let y0_abs = fabs(map.y[0]);
    let action = 2.0 / 3.0 * pow(y0_abs, 1.5);
    Ok(action - 0.75 * sigma as f64 * cc.d_squared * log(y0_abs) - cc.theta
        - (n as f64 + 1.0) * PI / 2.0)
}

fn residual(mu: f64, k: f64, pot: &Potential, sigma: i32, n: usize) -> Result<f64> {
    match *pot {
        Potential::Wedge { f_slope } => wedge_residual(mu, k, f_slope, sigma, n),
        _ => mapped_residual(mu, k, pot, sigma, n),
    }
}

/// Amplitude parameter k_n solving the quantization condition at fixed mu.
pub fn solve_k(mu: f64, pot: &Potential, sigma: i32, n: usize) -> Result<f64> {
    let f = |k: f64| residual(mu, k, pot, sigma, n);
    let lo = 1e-9;
    let flo = f(lo)?;
    let hi = if sigma == 1 {
        let hi = 1.0 - 1e-9;
        if flo * f(hi)? > 0.0 {
            return Err(Error::NoRoot("quantization condition in k"));
        }
        hi
    } else {
        // no a-priori upper limit for the attractive branch; expand until the
        // residual changes sign, giving up at k = 64
        let mut hi = 2.0;
        loop {
            if flo * f(hi)? <= 0.0 {
                break hi;
            }
            hi *= 2.0;
            if hi > 64.0 {
                return Err(Error::NoRoot("quantization condition in k"));
            }
        }
    };
    let k = rootfind::brent(|k| f(k).unwrap_or(f64::NAN), lo, hi, 1e-15, 0.0)?;
    let r = f(k)?;
    if fabs(r) > K_RESIDUAL_TOL {
        return Err(Error::NoConvergence("quantization residual above tolerance"));
    }
    Ok(k)
}

/// Half-line grid from the symmetry point out to where the mapped
/// coordinate reaches the matching point.
fn assembly_grid(pot: &Potential, mu: f64) -> Result<Vec<f64>> {
    let xt = potentials::turning_point(pot, mu)?;
    let target = 2.0 / 3.0 * pow(Y_MATCH, 1.5);
    let mut hi = xt + 1.0;
    while potentials::action_integral(pot, mu, xt, hi)? < target {
        hi += 1.0;
    }
    let x_end = rootfind::brent(
        |x| potentials::action_integral(pot, mu, xt, x).unwrap_or(f64::NAN) - target,
        xt + 1e-6,
        hi,
        1e-10,
        0.0,
    )?;
    let count = libm::ceil(x_end / GRID_DX) as usize + 1;
    Ok(mapping::linspace(0.0, x_end, count))
}

fn solve_phi(k: f64, sigma: i32, y0: f64) -> Result<PainleveSolution> {
    painleve::solve_transcendent(k, sigma, y0 - 0.5, Y_MATCH, ODE_TOL)
}

/// Nonlinearity reproducing the normalized state at this mu: solve for k_n,
/// then fix g from the normalization of the assembled wavefunction.
pub fn g_of_mu(mu: f64, pot: &Potential, sigma: i32, n: usize) -> Result<(f64, f64)> {
    let k = solve_k(mu, pot, sigma, n)?;
    match *pot {
        Potential::Wedge { f_slope } => {
            let y0 = -pow(2.0, 1.0 / 3.0) * mu / pow(f_slope, 2.0 / 3.0);
            let sol = solve_phi(k, sigma, y0)?;
            let norm = sol.tail_norm_integral(y0)?;
            let g_abs = pow(2.0 * f_slope, 1.0 / 3.0) * 2.0 * norm;
            Ok((sigma as f64 * g_abs, k))
        }
        Potential::Harmonic => {
            let grid = assembly_grid(pot, mu)?;
            let map = mapping::build_turning_point_map(pot, mu, &grid)?;
            let sol = solve_phi(k, sigma, map.y[0])?;
            let phi: Vec<f64> = map
                .y
                .iter()
                .map(|&y| sol.evaluate_extended(y))
                .collect::<Result<_>>()?;
            // half-line integral carries half the full-line norm by parity
            let fit = mapping::effective_coupling(&map, &phi, sigma as f64, 0.5)?;
            Ok((fit.g_eff, k))
        }
        _ => Err(Error::DomainError("supported traps: wedge, harmonic")),
    }
}

/// Semiclassical linear eigenvalue (k = 0 branch of the phase condition).
fn linear_mu(pot: &Potential, n: usize) -> Result<f64> {
    match *pot {
        Potential::Harmonic => Ok(n as f64 + 0.5),
        Potential::Wedge { f_slope } => {
            let rhs = (2.0 * n as f64 + 1.0) * PI / 4.0;
            Ok(0.5 * pow(3.0 * f_slope * rhs, 2.0 / 3.0))
        }
        _ => Err(Error::DomainError("supported traps: wedge, harmonic")),
    }
}

/// Sample a f(x) phi(y(x)) on the half-line map and mirror by parity.
fn sample_and_mirror(
    map: &MappingFunction,
    phi: &[f64],
    a: f64,
    n: usize,
) -> (Vec<f64>, Vec<f64>) {
    let m = map.x_grid.len();
    let parity = if n % 2 == 0 { 1.0 } else { -1.0 };
    let mut x_grid = Vec::with_capacity(2 * m - 1);
    let mut psi = Vec::with_capacity(2 * m - 1);
    for i in (1..m).rev() {
        x_grid.push(-map.x_grid[i]);
        psi.push(parity * a * map.f[i] * phi[i]);
    }
    for i in 0..m {
        x_grid.push(map.x_grid[i]);
        psi.push(a * map.f[i] * phi[i]);
    }
    if parity < 0.0 {
        // odd states vanish at the center; the sampled phi(y(0)) carries a
        // small asymptotic-phase residue there
        psi[m - 1] = 0.0;
    }
    (x_grid, psi)
}

/// Assemble the full-line wavefunction psi = a f(x) phi(y(x)) at the given
/// scaling constant. k = 0 selects the linear (Airy) branch.
pub fn assemble_wavefunction(
    mu: f64,
    k: f64,
    pot: &Potential,
    sigma: i32,
    a: f64,
    n: usize,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let grid = assembly_grid(pot, mu)?;
    let map = mapping::build_turning_point_map(pot, mu, &grid)?;
    let phi = phi_samples(&map, k, sigma)?;
    Ok(sample_and_mirror(&map, &phi, a, n))
}

fn phi_samples(map: &MappingFunction, k: f64, sigma: i32) -> Result<Vec<f64>> {
    if k == 0.0 {
        Ok(map.y.iter().map(|&y| specfun::airy_ai(y)).collect())
    } else {
        let sol = solve_phi(k, sigma, map.y[0])?;
        map.y
            .iter()
            .map(|&y| sol.evaluate_extended(y))
            .collect::<Result<_>>()
    }
}

/// Sign changes between successive lobes. The amplitude threshold is a few
/// percent of the peak: for odd n the transcendent does not vanish exactly
/// at y(0) (the phase condition is asymptotic), so mirroring produces
/// sub-envelope wiggles near x = 0 that must not count as nodes.
fn count_sign_changes(psi: &[f64]) -> usize {
    let max = psi.iter().fold(0.0f64, |m, v| m.max(fabs(*v)));
    let mut n = 0;
    let mut prev = 0.0f64;
    for &v in psi {
        if fabs(v) < 0.04 * max {
            continue;
        }
        if prev != 0.0 && v.signum() != prev.signum() {
            n += 1;
        }
        prev = v;
    }
    n
}

/// Chemical potential and wavefunction for quantum number n at the target
/// nonlinearity, from a bracketed solve of g_n(mu) = g seeded at the linear
/// eigenvalue.
pub fn solve_mu_for_g(g_target: f64, pot: &Potential, n: usize) -> Result<EigenstateResult> {
    if !matches!(pot, Potential::Wedge { .. } | Potential::Harmonic) {
        return Err(Error::DomainError("supported traps: wedge, harmonic"));
    }
    let mu_lin = linear_mu(pot, n)?;
    if g_target == 0.0 {
        return finish(mu_lin, 0.0, pot, 0, 0.0, n);
    }
    let sigma: i32 = if g_target > 0.0 { 1 } else { -1 };
    // below the linear eigenvalue the repulsive condition has no root (and
    // conversely); treat a failed k-solve as g = 0
    let g_at = |mu: f64| -> f64 {
        match g_of_mu(mu, pot, sigma, n) {
            Ok((g, _)) => g,
            Err(_) => 0.0,
        }
    };
    let h = |mu: f64| g_at(mu) - g_target;
    let (mut lo, mut hi);
    if sigma == 1 {
        lo = mu_lin;
        hi = mu_lin + 0.5;
        let mut steps = 0;
        while h(hi) < 0.0 {
            hi += 0.5 * libm::exp2(steps as f64);
            steps += 1;
            if steps > 12 {
                return Err(Error::NoConvergence("outer bracket in mu (repulsive)"));
            }
        }
    } else {
        hi = mu_lin;
        lo = (mu_lin - 0.25).max(0.02);
        let mut steps = 0;
        while h(lo) > 0.0 {
            if lo <= 0.02 {
                return Err(Error::NoConvergence("outer bracket in mu (attractive)"));
            }
            lo = (lo - 0.25 * libm::exp2(steps as f64)).max(0.02);
            steps += 1;
        }
    }
    let mu = rootfind::brent(h, lo, hi, 1e-12, OUTER_G_TOL)?;
    let (g, k) = g_of_mu(mu, pot, sigma, n)?;
    if fabs(g - g_target) > 1e-6 * (1.0 + fabs(g_target)) {
        return Err(Error::NoConvergence("outer solve in mu"));
    }
    finish(mu, k, pot, sigma, g, n)
}

/// Normalize, assemble, verify the node count and fill diagnostics.
fn finish(
    mu: f64,
    k: f64,
    pot: &Potential,
    sigma: i32,
    g: f64,
    n: usize,
) -> Result<EigenstateResult> {
    let grid = assembly_grid(pot, mu)?;
    let map = mapping::build_turning_point_map(pot, mu, &grid)?;
    let phi = phi_samples(&map, k, sigma)?;
    let weights: Vec<f64> = (0..grid.len())
        .map(|i| map.f[i] * map.f[i] * phi[i] * phi[i])
        .collect();
    let half_norm = mapping::integrate_samples(&grid, &weights);
    if half_norm <= 0.0 {
        return Err(Error::DegeneratePhi);
    }
    let a = sqrt(0.5 / half_norm);
    let (x_grid, psi) = sample_and_mirror(&map, &phi, a, n);
    let got = count_sign_changes(&psi);
    if got != n {
        return Err(Error::WrongNodeCount { want: n, got });
    }
    let sq: Vec<f64> = psi.iter().map(|p| p * p).collect();
    let norm_error = fabs(mapping::integrate_samples(&x_grid, &sq) - 1.0);
    let y0 = map.y[0];
    let quantization_residual = if k == 0.0 {
        0.0
    } else {
        fabs(residual(mu, k, pot, sigma, n)?)
    };
    Ok(EigenstateResult {
        n,
        mu,
        g,
        k,
        sigma,
        x_grid,
        psi,
        diagnostics: Diagnostics {
            y0,
            quantization_residual,
            norm_error,
            asymptotic_validity: fabs(y0),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_zero_limit_of_wedge_residual() {
        // d^2 -> 0 and theta -> -pi/4 as k -> 0
        for sigma in [1, -1] {
            for mu in [0.8853f64, 5.0] {
                let r = wedge_residual(mu, 1e-12, 1.0, sigma, 0).unwrap();
                let want = (2.0 * mu).powf(1.5) / 3.0 + PI / 4.0 - PI / 2.0;
                assert!((r - want).abs() < 1e-9, "sigma {sigma} mu {mu}");
            }
        }
    }

    #[test]
    fn linear_wedge_ground_state_value() {
        let mu = 0.5 * (3.0 * PI / 4.0f64).powf(2.0 / 3.0);
        let r = wedge_residual(mu, 1e-12, 1.0, 1, 0).unwrap();
        assert!(r.abs() < 1e-9);
    }

    #[test]
    fn wedge_and_mapped_residuals_agree() {
        let pot = Potential::Wedge { f_slope: 1.0 };
        for (mu, k, sigma, n) in [
            (5.0f64, 0.5, 1, 6usize),
            (2.0, 0.9, 1, 2),
            (3.0, 1.5, -1, 4),
        ] {
            let a = wedge_residual(mu, k, 1.0, sigma, n).unwrap();
            let b = mapped_residual(mu, k, &pot, sigma, n).unwrap();
            assert!((a - b).abs() < 1e-12, "mu {mu} k {k}: {a} vs {b}");
        }
    }

    #[test]
    fn harmonic_linear_condition() {
        // k -> 0 reduces to mu = n + 1/2
        for n in [0usize, 3, 10] {
            let r = mapped_residual(n as f64 + 0.5, 1e-12, &Potential::Harmonic, 1, n).unwrap();
            assert!(r.abs() < 1e-8, "n = {n}: {r}");
        }
    }

    #[test]
    fn k_grows_from_linear_point() {
        let mut prev = 0.0;
        for delta in [0.01f64, 0.05, 0.2] {
            let k = solve_k(10.5 + delta, &Potential::Harmonic, 1, 10).unwrap();
            assert!(k > prev && k < 1.0, "delta {delta}: k = {k}");
            prev = k;
        }
    }

    #[test]
    fn no_root_below_linear_eigenvalue() {
        assert!(matches!(
            solve_k(10.4, &Potential::Harmonic, 1, 10),
            Err(Error::NoRoot(_))
        ));
    }

    #[test]
    fn g_increases_with_mu_repulsive() {
        let pot = Potential::Wedge { f_slope: 1.0 };
        let mu_lin = linear_mu(&pot, 6).unwrap();
        let mut prev = 0.0;
        for delta in [0.05f64, 0.2, 0.5] {
            let (g, k) = g_of_mu(mu_lin + delta, &pot, 1, 6).unwrap();
            assert!(g > prev, "delta {delta}: g = {g} k = {k}");
            prev = g;
        }
    }

    #[test]
    fn linear_limit_exact_harmonic() {
        for n in [0usize, 7, 30] {
            let st = solve_mu_for_g(0.0, &Potential::Harmonic, n).unwrap();
            assert!((st.mu - (n as f64 + 0.5)).abs() < 1e-9);
            assert_eq!(count_sign_changes(&st.psi), n);
            assert!(st.diagnostics.norm_error < 1e-6);
        }
    }

    #[test]
    fn repulsive_harmonic_state_matches_exact() {
        let st = solve_mu_for_g(10.0, &Potential::Harmonic, 10).unwrap();
        let ex = crate::exact::solve_eigenstate_exact(&Potential::Harmonic, 10.0, 10, 1e-10)
            .unwrap();
        assert!(
            (st.mu - ex.mu).abs() < 0.02,
            "mu_sc = {} mu_ex = {}",
            st.mu,
            ex.mu
        );
        assert!(st.diagnostics.quantization_residual <= 1e-10);
        assert!(st.diagnostics.norm_error < 1e-6);
    }

    #[test]
    fn self_consistent_g_eff() {
        let st = solve_mu_for_g(10.0, &Potential::Harmonic, 10).unwrap();
        let (g, _) = g_of_mu(st.mu, &Potential::Harmonic, 1, 10).unwrap();
        assert!((g - 10.0).abs() < 1e-6, "g = {g}");
    }

    #[test]
    fn wedge_error_alternates_and_decreases() {
        let pot = Potential::Wedge { f_slope: 1.0 };
        let mut errs = Vec::new();
        for n in 2..=5usize {
            let st = solve_mu_for_g(5.0, &pot, n).unwrap();
            let ex = crate::exact::solve_eigenstate_exact(&pot, 5.0, n, 1e-10).unwrap();
            errs.push(st.mu - ex.mu);
        }
        // larger error magnitude for even n than the following odd n
        assert!(errs[0].abs() > errs[1].abs(), "errs = {errs:?}");
        assert!(errs[2].abs() > errs[3].abs(), "errs = {errs:?}");
        assert!(errs[0].abs() > errs[2].abs(), "errs = {errs:?}");
    }

    #[test]
    fn attractive_branch_lowers_mu() {
        let st = solve_mu_for_g(-2.0, &Potential::Harmonic, 6).unwrap();
        assert!(st.mu < 6.5, "mu = {}", st.mu);
        assert_eq!(st.sigma, -1);
        assert!(st.g < 0.0);
    }

    #[test]
    fn parity_of_assembled_state() {
        for n in [4usize, 5] {
            let st = solve_mu_for_g(3.0, &Potential::Harmonic, n).unwrap();
            let m = st.x_grid.len();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            for i in 0..m / 2 {
                let l = st.psi[i];
                let r = st.psi[m - 1 - i];
                assert!((l - sign * r).abs() < 1e-14, "n = {n} i = {i}");
            }
        }
    }

    #[test]
    fn low_n_states_are_flagged() {
        let st = solve_mu_for_g(0.5, &Potential::Harmonic, 0).unwrap();
        assert!(st.diagnostics.flagged());
        let st = solve_mu_for_g(0.5, &Potential::Harmonic, 8).unwrap();
        assert!(!st.diagnostics.flagged());
    }
}
