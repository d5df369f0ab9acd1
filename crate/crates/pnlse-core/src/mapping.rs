//! Coordinate maps y(x) carrying the physical equation onto the comparison
//! equation: the turning-point map (onto the Painleve-II variable) and the
//! constant-potential map (onto the free equation), together with the
//! amplitude factor f = (dy/dx)^{-1/2} and the least-squares scaling
//! constant that fixes the effective nonlinearity.

use alloc::vec::Vec;
use libm::{cos, fabs, pow, sqrt};

use crate::error::{Error, Result};
use crate::potentials::{self, Potential};
use crate::quad;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    TurningPoint,
    Constant,
}

#[derive(Debug, Clone)]
pub struct MappingFunction {
    pub x_grid: Vec<f64>,
    pub y: Vec<f64>,
    pub dydx: Vec<f64>,
    pub f: Vec<f64>,
    pub kind: MapKind,
}

impl MappingFunction {
    /// Diagnostic for the neglected d^2f/dx^2 term: max |f''/f| over the
    /// interior of the grid (second difference on the stored samples).
    pub fn max_curvature_ratio(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 1..self.x_grid.len() - 1 {
            let hl = self.x_grid[i] - self.x_grid[i - 1];
            let hr = self.x_grid[i + 1] - self.x_grid[i];
            if hl <= 0.0 || hr <= 0.0 {
                continue;
            }
            let fpp = 2.0
                * (hl * self.f[i + 1] - (hl + hr) * self.f[i] + hr * self.f[i - 1])
                / (hl * hr * (hl + hr));
            worst = worst.max(fabs(fpp / self.f[i]));
        }
        worst
    }
}

/// Turning-point map y(x) = sign(x - x_t) [ (3/2) |int sqrt(|q^2|)| ]^{2/3},
/// negative in the classically allowed region.
pub fn build_turning_point_map(
    pot: &Potential,
    mu: f64,
    x_grid: &[f64],
) -> Result<MappingFunction> {
    let xt = potentials::turning_point(pot, mu)?;
    // slope limit at a simple turning point: |d q^2/dx (x_t)|^{1/3}
    let q2_slope = match *pot {
        Potential::Wedge { f_slope } => -2.0 * f_slope,
        Potential::Harmonic => -2.0 * xt,
        _ => return Err(Error::NoTurningPoint),
    };
    let slope_limit = pow(fabs(q2_slope), 1.0 / 3.0);

    let n = x_grid.len();
    let mut y = Vec::with_capacity(n);
    let mut dydx = Vec::with_capacity(n);
    let mut f = Vec::with_capacity(n);
    for &x in x_grid {
        let (s, sign) = if x < xt {
            (potentials::action_integral(pot, mu, x, xt)?, -1.0)
        } else {
            (potentials::action_integral(pot, mu, xt, x)?, 1.0)
        };
        let yi = sign * pow(1.5 * s, 2.0 / 3.0);
        let slope = if fabs(yi) > 1e-4 {
            sqrt(fabs(potentials::q_squared(pot, mu, x)) / fabs(yi))
        } else {
            slope_limit
        };
        y.push(yi);
        dydx.push(slope);
        f.push(1.0 / sqrt(slope));
    }
    Ok(MappingFunction {
        x_grid: x_grid.to_vec(),
        y,
        dydx,
        f,
        kind: MapKind::TurningPoint,
    })
}

/// Constant-potential map: (dy/dx)^2 = (mu - w cos x) / nu with y(0) = 0.
pub fn build_constant_map(mu: f64, w: f64, nu: f64, x_grid: &[f64]) -> Result<MappingFunction> {
    let allowed = mu > fabs(w) && nu > 0.0;
    let forbidden = mu < -fabs(w) && nu < 0.0;
    if !(allowed || forbidden) {
        return Err(Error::ForbiddenWindow { mu, w });
    }
    let slope = |x: f64| sqrt((mu - w * cos(x)) / nu);
    let cum = quad::cumulative(&slope, x_grid);
    let offset = quad::integrate(&slope, 0.0, x_grid[0], 1e-12);
    let n = x_grid.len();
    let mut y = Vec::with_capacity(n);
    let mut dydx = Vec::with_capacity(n);
    let mut f = Vec::with_capacity(n);
    for i in 0..n {
        let s = slope(x_grid[i]);
        y.push(offset + cum[i]);
        dydx.push(s);
        f.push(1.0 / sqrt(s));
    }
    Ok(MappingFunction {
        x_grid: x_grid.to_vec(),
        y,
        dydx,
        f,
        kind: MapKind::Constant,
    })
}

/// Scaling constant and effective nonlinearity from the least-squares fit.
#[derive(Debug, Clone, Copy)]
pub struct EffectiveCoupling {
    pub a: f64,
    pub g_eff: f64,
    pub chi2: f64,
}

/// Minimize chi^2 = int [ c_lead (dy/dx)^2 - c (dy/dx)^{-1} ]^2 phi^4 dx over
/// the product c = g a^2 (closed-form weighted least squares), then fix `a`
/// from int a^2 f^2 phi^2 dx = norm_target and return g_eff = c / a^2.
///
/// The phi^4 weight projects the equation error onto phi itself, which makes
/// the fitted coupling agree with first-order perturbation theory in the
/// weak-nonlinearity limit (a phi^6 weight biases dmu/dg by several percent).
///
/// `c_lead` is sigma (+-1) for the turning-point route and the base-soliton
/// nonlinearity for the constant route.
pub fn effective_coupling(
    map: &MappingFunction,
    phi_samples: &[f64],
    c_lead: f64,
    norm_target: f64,
) -> Result<EffectiveCoupling> {
    let n = map.x_grid.len();
    if phi_samples.len() != n {
        return Err(Error::DomainError("phi samples must match the map grid"));
    }
    let mut ab_w = Vec::with_capacity(n);
    let mut bb_w = Vec::with_capacity(n);
    let mut norm_w = Vec::with_capacity(n);
    for i in 0..n {
        let phi = phi_samples[i];
        let phi2 = phi * phi;
        let w = phi2 * phi2;
        let a_term = c_lead * map.dydx[i] * map.dydx[i];
        let b_term = 1.0 / map.dydx[i];
        ab_w.push(a_term * b_term * w);
        bb_w.push(b_term * b_term * w);
        norm_w.push(map.f[i] * map.f[i] * phi2);
    }
    let num = integrate_samples(&map.x_grid, &ab_w);
    let den = integrate_samples(&map.x_grid, &bb_w);
    let norm_int = integrate_samples(&map.x_grid, &norm_w);
    let scale = ab_w.iter().fold(0.0f64, |m, v| m.max(fabs(*v)));
    if den.abs() <= 1e-14 * scale.max(1e-300) || norm_int <= 0.0 {
        return Err(Error::DegeneratePhi);
    }
    let c_star = num / den;
    let a2 = norm_target / norm_int;
    let mut chi_w = Vec::with_capacity(n);
    for i in 0..n {
        let phi = phi_samples[i];
        let phi2 = phi * phi;
        let w = phi2 * phi2;
        let r = c_lead * map.dydx[i] * map.dydx[i] - c_star / map.dydx[i];
        chi_w.push(r * r * w);
    }
    let chi2 = integrate_samples(&map.x_grid, &chi_w);
    Ok(EffectiveCoupling {
        a: sqrt(a2),
        g_eff: c_star / a2,
        chi2,
    })
}

/// chi^2 evaluated at an arbitrary product value c (for perturbation checks).
pub fn chi2_at(map: &MappingFunction, phi_samples: &[f64], c_lead: f64, c: f64) -> f64 {
    let n = map.x_grid.len();
    let mut w = Vec::with_capacity(n);
    for i in 0..n {
        let phi = phi_samples[i];
        let phi2 = phi * phi;
        let r = c_lead * map.dydx[i] * map.dydx[i] - c / map.dydx[i];
        w.push(r * r * phi2 * phi2);
    }
    integrate_samples(&map.x_grid, &w)
}

/// Simpson for uniform grids, trapezoid otherwise.
pub fn integrate_samples(x: &[f64], f: &[f64]) -> f64 {
    let n = x.len();
    if n < 2 {
        return 0.0;
    }
    let h = x[1] - x[0];
    let uniform = x
        .windows(2)
        .all(|w| fabs(w[1] - w[0] - h) < 1e-9 * (1.0 + fabs(h)));
    if uniform {
        quad::simpson_uniform(f, h)
    } else {
        let mut acc = 0.0;
        for i in 0..n - 1 {
            acc += 0.5 * (f[i] + f[i + 1]) * (x[i + 1] - x[i]);
        }
        acc
    }
}

/// Uniform grid helper: `count` points from a to b inclusive.
pub fn linspace(a: f64, b: f64, count: usize) -> Vec<f64> {
    let n = count.max(2);
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}
