//! Closed-form solitons of the free cubic equation and the semiclassical
//! bright soliton in a shallow cosine lattice via the constant-potential map.

use alloc::vec::Vec;
use libm::{cosh, fabs, log, sqrt, tanh};

use crate::error::{Error, Result};
use crate::exact;
use crate::mapping::{self, linspace};
use crate::rootfind;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolitonKind {
    Bright,
    Dark,
}

#[derive(Debug, Clone, Copy)]
pub struct SolitonParams {
    /// free-equation chemical potential
    pub nu: f64,
    pub g: f64,
    /// center position
    pub y0: f64,
    pub kind: SolitonKind,
}

impl SolitonParams {
    /// Bright soliton with unit norm at the given nu < 0: g = -sqrt(-8 nu).
    pub fn bright_unit_norm(nu: f64) -> Result<SolitonParams> {
        if nu >= 0.0 {
            return Err(Error::DomainError("bright soliton requires nu < 0"));
        }
        Ok(SolitonParams {
            nu,
            g: -sqrt(-8.0 * nu),
            y0: 0.0,
            kind: SolitonKind::Bright,
        })
    }
}

/// phi(y) = sqrt(2 nu / g) sech(sqrt(-2 nu) (y - y0)), requiring nu < 0 and
/// g < 0.
pub fn bright_free(p: &SolitonParams, y: f64) -> Result<f64> {
    if p.kind != SolitonKind::Bright || p.nu >= 0.0 || p.g >= 0.0 {
        return Err(Error::DomainError("bright soliton requires nu < 0 and g < 0"));
    }
    let amp = sqrt(2.0 * p.nu / p.g);
    let kappa = sqrt(-2.0 * p.nu);
    Ok(amp / cosh(kappa * (y - p.y0)))
}

/// phi(y) = sqrt(nu / g) tanh(sqrt(nu) (y - y0)). The tanh profile solves
/// the free equation for nu > 0 and g > 0 (direct substitution), which is
/// the sign convention accepted here.
pub fn dark_free(p: &SolitonParams, y: f64) -> Result<f64> {
    if p.kind != SolitonKind::Dark || p.nu <= 0.0 || p.g <= 0.0 {
        return Err(Error::DomainError("dark soliton requires nu > 0 and g > 0"));
    }
    let amp = sqrt(p.nu / p.g);
    Ok(amp * tanh(sqrt(p.nu) * (y - p.y0)))
}

#[derive(Debug, Clone)]
pub struct LatticeSoliton {
    pub mu: f64,
    pub w: f64,
    pub g_eff: f64,
    pub a: f64,
    pub chi2: f64,
    pub x_grid: Vec<f64>,
    pub psi: Vec<f64>,
}

const GRID_DX: f64 = 0.01;

/// Semiclassical bright soliton in V(x) = w cos x at chemical potential mu:
/// constant map with nu = mu, base soliton normalized to 1, effective
/// nonlinearity from the least-squares scaling fit.
pub fn bright_in_lattice(mu: f64, w: f64) -> Result<LatticeSoliton> {
    if mu >= -fabs(w) {
        return Err(Error::ForbiddenWindow { mu, w });
    }
    let base = SolitonParams::bright_unit_norm(mu)?;
    let amp = sqrt(2.0 * base.nu / base.g);
    let kappa = sqrt(-2.0 * mu);
    // slowest possible decay of y(x) sets the grid extent for |phi| < 1e-8
    let s_min = sqrt((-mu - fabs(w)) / -mu);
    let x_half = log(2.0 * amp * 1e8) / (kappa * s_min);
    let m = libm::ceil(x_half / GRID_DX) as usize;
    let grid = linspace(-(m as f64) * GRID_DX, m as f64 * GRID_DX, 2 * m + 1);
    let map = mapping::build_constant_map(mu, w, mu, &grid)?;
    let phi: Vec<f64> = map
        .y
        .iter()
        .map(|&y| bright_free(&base, y))
        .collect::<Result<_>>()?;
    let fit = mapping::effective_coupling(&map, &phi, base.g, 1.0)?;
    let psi: Vec<f64> = (0..grid.len())
        .map(|i| fit.a * map.f[i] * phi[i])
        .collect();
    Ok(LatticeSoliton {
        mu,
        w,
        g_eff: fit.g_eff,
        a: fit.a,
        chi2: fit.chi2,
        x_grid: grid,
        psi,
    })
}

/// One row of the chemical-potential shift table: the swept parameter and
/// the two routes' results (None marks a failed point).
#[derive(Debug, Clone, Copy)]
pub struct MuShiftRow {
    pub param: f64,
    pub mu_sc: Option<f64>,
    pub mu_ex: Option<f64>,
}

fn solve_mu_for_geff<F>(g_target: f64, w: f64, geff_of_mu: F) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    // free relation mu = -g^2/8 seeds the bracket; the lattice weakens the
    // effective nonlinearity at fixed mu, so the root lies below the seed
    let seed = -g_target * g_target / 8.0;
    let hi = (-fabs(w) - 1e-3).min(seed * 0.95);
    let mut lo = seed * 2.0;
    let h = |mu: f64| geff_of_mu(mu).map(|g| g - g_target);
    if h(hi)? < 0.0 {
        return Err(Error::NoRoot("mu bracket upper end"));
    }
    let mut steps = 0;
    while h(lo)? > 0.0 {
        lo *= 2.0;
        steps += 1;
        if steps > 8 {
            return Err(Error::NoRoot("mu bracket lower end"));
        }
    }
    rootfind::brent(|mu| h(mu).unwrap_or(f64::NAN), lo, hi, 1e-11, 0.0)
}

/// Chemical potential against effective nonlinearity at fixed lattice depth,
/// semiclassical and exact routes side by side. The lattice enters through
/// |w| only (w > 0 is the same lattice shifted by half a period).
pub fn mu_vs_geff(w: f64, geff_targets: &[f64]) -> Vec<MuShiftRow> {
    let w = -fabs(w);
    geff_targets
        .iter()
        .map(|&g| MuShiftRow {
            param: g,
            mu_sc: solve_mu_for_geff(g, w, |mu| bright_in_lattice(mu, w).map(|s| s.g_eff))
                .ok(),
            mu_ex: solve_mu_for_geff(g, w, |mu| {
                exact::solve_soliton_exact(w, mu, 1e-10).map(|t| t.0)
            })
            .ok(),
        })
        .collect()
}

/// Chemical potential against lattice depth at fixed effective nonlinearity.
pub fn mu_vs_w(g_eff: f64, w_values: &[f64]) -> Vec<MuShiftRow> {
    w_values
        .iter()
        .map(|&w_raw| {
            let w = -fabs(w_raw);
            MuShiftRow {
                param: w_raw,
                mu_sc: solve_mu_for_geff(g_eff, w, |mu| {
                    bright_in_lattice(mu, w).map(|s| s.g_eff)
                })
                .ok(),
                mu_ex: solve_mu_for_geff(g_eff, w, |mu| {
                    exact::solve_soliton_exact(w, mu, 1e-10).map(|t| t.0)
                })
                .ok(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ode::{self, OdeOptions};
    use crate::quad;

    #[test]
    fn bright_peak_and_norm() {
        let p = SolitonParams {
            nu: -0.5,
            g: -2.0,
            y0: 0.3,
            kind: SolitonKind::Bright,
        };
        let peak = bright_free(&p, 0.3).unwrap();
        assert!((peak - (2.0 * 0.5 / 2.0f64).sqrt()).abs() < 1e-15);
        // integral of phi^2 is -2 sqrt(-2 nu) / g
        let num = quad::integrate(&|y| bright_free(&p, y).unwrap().powi(2), -40.0, 40.0, 1e-12);
        let want = -2.0 * (1.0f64).sqrt() / -2.0;
        assert!((num - want).abs() < 1e-10);
    }

    #[test]
    fn unit_norm_relation() {
        // nu = -g^2/8 gives unit norm
        for g in [-1.0f64, -2.828, -5.0] {
            let p = SolitonParams {
                nu: -g * g / 8.0,
                g,
                y0: 0.0,
                kind: SolitonKind::Bright,
            };
            let n = quad::integrate(&|y| bright_free(&p, y).unwrap().powi(2), -60.0, 60.0, 1e-12);
            assert!((n - 1.0).abs() < 1e-10, "g = {g}: norm {n}");
        }
    }

    #[test]
    fn dark_limits() {
        let p = SolitonParams {
            nu: 0.7,
            g: 1.3,
            y0: -0.2,
            kind: SolitonKind::Dark,
        };
        assert_eq!(dark_free(&p, -0.2).unwrap(), 0.0);
        let amp = (0.7f64 / 1.3).sqrt();
        assert!((dark_free(&p, 50.0).unwrap() - amp).abs() < 1e-12);
        assert!((dark_free(&p, -50.0).unwrap() + amp).abs() < 1e-12);
    }

    #[test]
    fn closed_forms_solve_free_equation() {
        // integrate phi'' = -2 nu phi + 2 g phi^3 from the closed-form
        // initial data and compare downstream
        let cases = [
            (SolitonParams { nu: -0.5, g: -1.0, y0: 0.0, kind: SolitonKind::Bright }, true),
            (SolitonParams { nu: 0.8, g: 1.5, y0: 0.0, kind: SolitonKind::Dark }, false),
        ];
        for (p, bright) in cases {
            let eval = |y: f64| {
                if bright {
                    bright_free(&p, y).unwrap()
                } else {
                    dark_free(&p, y).unwrap()
                }
            };
            let h = 1e-6;
            let d0 = (eval(h) - eval(-h)) / (2.0 * h);
            let rhs = move |_y: f64, st: &[f64; 2]| {
                [st[1], -2.0 * p.nu * st[0] + 2.0 * p.g * st[0] * st[0] * st[0]]
            };
            let opts = OdeOptions {
                rel_tol: 1e-12,
                abs_tol: 1e-14,
                h_max: 0.01,
                ..Default::default()
            };
            let sol = ode::integrate(rhs, 0.0, 3.0, [eval(0.0), d0], &opts).unwrap();
            for y in [0.5f64, 1.5, 3.0] {
                let got = sol.eval(y).unwrap()[0];
                assert!((got - eval(y)).abs() < 1e-9, "y = {y}: {got} vs {}", eval(y));
            }
        }
    }

    #[test]
    fn rejects_wrong_sign_regimes() {
        let p = SolitonParams { nu: 0.5, g: -1.0, y0: 0.0, kind: SolitonKind::Bright };
        assert!(bright_free(&p, 0.0).is_err());
        let p = SolitonParams { nu: -0.5, g: 1.0, y0: 0.0, kind: SolitonKind::Dark };
        assert!(dark_free(&p, 0.0).is_err());
    }

    #[test]
    fn free_lattice_is_identity() {
        let s = bright_in_lattice(-1.0, 0.0).unwrap();
        assert!((s.g_eff + 8f64.sqrt()).abs() < 1e-9, "g_eff = {}", s.g_eff);
        assert!((s.a - 1.0).abs() < 1e-9);
        assert!(s.chi2 < 1e-18);
        // psi equals the unit-norm free soliton
        let base = SolitonParams::bright_unit_norm(-1.0).unwrap();
        for (x, p) in s.x_grid.iter().zip(s.psi.iter()) {
            assert!((p - bright_free(&base, *x).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn lattice_soliton_matches_exact_profile() {
        let s = bright_in_lattice(-1.0, -0.2).unwrap();
        let (g_ex, x_ex, psi_ex) = exact::solve_soliton_exact(-0.2, -1.0, 1e-10).unwrap();
        assert!(
            (s.g_eff - g_ex).abs() < 0.05 * g_ex.abs(),
            "g_sc = {} g_ex = {g_ex}",
            s.g_eff
        );
        let peak = psi_ex.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut worst = 0.0f64;
        for (x, pe) in x_ex.iter().zip(psi_ex.iter()) {
            // both grids sample multiples of 0.01
            let i = ((x - s.x_grid[0]) / GRID_DX).round() as usize;
            if i >= s.x_grid.len() {
                continue;
            }
            worst = worst.max((s.psi[i] - pe).abs());
        }
        assert!(worst <= 0.02 * peak, "max deviation {worst} of peak {peak}");
    }

    #[test]
    fn forbidden_window_rejected() {
        assert!(matches!(
            bright_in_lattice(-0.15, -0.2),
            Err(Error::ForbiddenWindow { .. })
        ));
    }

    #[test]
    fn mu_curve_agreement() {
        let rows = mu_vs_geff(-0.2, &[-4.0]);
        let r = rows[0];
        let (sc, ex) = (r.mu_sc.unwrap(), r.mu_ex.unwrap());
        assert!((sc - ex).abs() <= 0.03, "mu_sc = {sc} mu_ex = {ex}");
    }

    #[test]
    fn w_zero_routes_coincide() {
        let rows = mu_vs_geff(0.0, &[-3.0]);
        let r = rows[0];
        let (sc, ex) = (r.mu_sc.unwrap(), r.mu_ex.unwrap());
        assert!((sc - ex).abs() < 1e-6, "mu_sc = {sc} mu_ex = {ex}");
        assert!((sc - (-9.0 / 8.0)).abs() < 1e-6);
    }

    #[test]
    fn lattice_depth_sign_symmetry() {
        let rows = mu_vs_w(-4.0, &[-0.2, 0.2]);
        let a = rows[0].mu_sc.unwrap();
        let b = rows[1].mu_sc.unwrap();
        assert!((a - b).abs() < 1e-12);
    }
}

