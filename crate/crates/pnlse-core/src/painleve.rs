//! Numerical evaluation of the second Painleve transcendent phi_k(y),
//! defined by phi'' = 2 sigma phi^3 + y phi with phi ~ k Ai(y) as y -> +inf.
//!
//! The transcendent is obtained by integrating backward from a matching
//! point deep in the Airy-decay region (default y = 8, where Ai ~ 4e-8) down
//! to the oscillatory region. The divergent branch (sigma = +1, k >= 1) is
//! rejected; sigma = 0 is accepted as an internal test mode in which the
//! equation degenerates to the Airy equation.

use libm::{fabs, log, pow, sin};

use crate::error::{Error, Result};
use crate::ode::{self, DenseSolution, OdeOptions};
use crate::specfun::{self, ConnectionConstants};

pub const DEFAULT_Y_MATCH: f64 = 8.0;
pub const BLOW_UP_LIMIT: f64 = 1e6;

/// Sampled transcendent with its asymptotic parameters.
#[derive(Debug, Clone)]
pub struct PainleveSolution {
    pub k: f64,
    pub sigma: i32,
    pub y_match: f64,
    pub tol: f64,
    /// None only in the sigma = 0 (Airy) test mode.
    pub constants: Option<ConnectionConstants>,
    dense: DenseSolution<2>,
}

/// Integrate the transcendent from `y_match` down to `y_min`.
pub fn solve_transcendent(
    k: f64,
    sigma: i32,
    y_min: f64,
    y_match: f64,
    tol: f64,
) -> Result<PainleveSolution> {
    if k <= 0.0 {
        return Err(Error::DomainError("k must be positive"));
    }
    if !(sigma == -1 || sigma == 0 || sigma == 1) {
        return Err(Error::DomainError("sigma must be -1, 0 or +1"));
    }
    if sigma == 1 && k >= 1.0 {
        return Err(Error::DivergentRegime { k });
    }
    if !(y_min < 0.0 && y_match >= 5.0) {
        return Err(Error::DomainError("require y_min < 0 and y_match >= 5"));
    }
    if !(1e-12..=1e-6).contains(&tol) {
        return Err(Error::DomainError("tol must lie in [1e-12, 1e-6]"));
    }
    let constants = if sigma == 0 {
        None
    } else {
        Some(specfun::connection_constants(k, sigma)?)
    };
    let s = sigma as f64;
    let rhs = move |y: f64, state: &[f64; 2]| {
        let phi = state[0];
        [state[1], 2.0 * s * phi * phi * phi + y * phi]
    };
    let phi0 = k * specfun::airy_ai(y_match);
    let dphi0 = k * specfun::airy_ai_prime(y_match);
    let opts = OdeOptions {
        rel_tol: tol,
        abs_tol: tol * 1e-2,
        // keeps the cubic Hermite interpolation error below ~10 tol
        h_max: 0.004,
        blow_up: Some(BLOW_UP_LIMIT),
        ..Default::default()
    };
    let dense = ode::integrate(rhs, y_match, y_min, [phi0, dphi0], &opts)?;
    Ok(PainleveSolution {
        k,
        sigma,
        y_match,
        tol,
        constants,
        dense,
    })
}

impl PainleveSolution {
    pub fn y_min(&self) -> f64 {
        self.dense.t_min()
    }

    pub fn grid(&self) -> &[f64] {
        &self.dense.t
    }

    pub fn phi_at_node(&self, i: usize) -> f64 {
        self.dense.y[i][0]
    }

    pub fn dphi_at_node(&self, i: usize) -> f64 {
        self.dense.y[i][1]
    }

    /// Interpolated phi(y) within the stored grid.
    pub fn evaluate(&self, y: f64) -> Result<f64> {
        Ok(self.dense.eval(y)?[0])
    }

    /// Interpolated derivative phi'(y).
    pub fn evaluate_derivative(&self, y: f64) -> Result<f64> {
        Ok(self.dense.eval(y)?[1])
    }

    /// phi(y) extended by the Airy asymptote for y beyond the matching point.
    pub fn evaluate_extended(&self, y: f64) -> Result<f64> {
        if y > self.y_match {
            Ok(asymptotic_positive(y, self.k))
        } else {
            self.evaluate(y)
        }
    }

    /// Integral of phi^2 from y0 to +infinity: Simpson over the stored grid
    /// (midpoints from the Hermite interpolant) plus the closed-form Airy
    /// tail k^2 [Ai'(ym)^2 - ym Ai(ym)^2] beyond the matching point.
    pub fn tail_norm_integral(&self, y0: f64) -> Result<f64> {
        if y0 < self.y_min() - 1e-9 {
            return Err(Error::OutOfRange {
                value: y0,
                min: self.y_min(),
                max: self.y_match,
            });
        }
        let y0 = y0.max(self.y_min());
        let mut acc = 0.0;
        let t = &self.dense.t;
        let n = t.len();
        for i in 0..n - 1 {
            let (a, b) = (t[i], t[i + 1]);
            if b <= y0 {
                continue;
            }
            let lo = a.max(y0);
            let phi2 = |y: f64| -> Result<f64> {
                let p = self.dense.eval(y)?[0];
                Ok(p * p)
            };
            let mid = 0.5 * (lo + b);
            // Simpson on [lo, b]
            acc += (b - lo) / 6.0 * (phi2(lo)? + 4.0 * phi2(mid)? + phi2(b)?);
        }
        let ym = self.y_match;
        let (ai, aip) = specfun::airy_ai_pair(ym);
        let tail = self.k * self.k * (aip * aip - ym * ai * ai);
        Ok(acc + tail)
    }
}

/// Leading oscillatory asymptote for y < 0:
/// d |y|^{-1/4} sin( (2/3)|y|^{3/2} - (3/4) sigma d^2 ln|y| - theta ).
pub fn asymptotic_negative(y: f64, constants: &ConnectionConstants) -> Result<f64> {
    if y >= 0.0 || fabs(y) < 1.0 {
        return Err(Error::DomainError(
            "oscillatory asymptote requires y < 0 with |y| >= 1",
        ));
    }
    let z = fabs(y);
    let d = libm::sqrt(constants.d_squared);
    let s = constants.sigma as f64;
    let arg = 2.0 / 3.0 * pow(z, 1.5) - 0.75 * s * constants.d_squared * log(z) - constants.theta;
    Ok(d * pow(z, -0.25) * sin(arg))
}

/// Airy-decay asymptote for y > 0: k Ai(y).
pub fn asymptotic_positive(y: f64, k: f64) -> f64 {
    k * specfun::airy_ai(y)
}
