//! Trap potentials, the local wavenumber q^2(x) = 2 (mu - V(x)), classical
//! turning points, and action integrals of sqrt(|q^2|).
//!
//! Quadrature endpoints that coincide with a turning point are handled by the
//! substitution x = x_t -/+ u^2, which removes the square-root behaviour of
//! the integrand and restores spectral accuracy of the Gauss panels.

use libm::{cos, fabs, sqrt};

use crate::error::{Error, Result};
use crate::quad;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Potential {
    /// V(x) = F |x|
    Wedge { f_slope: f64 },
    /// V(x) = x^2 / 2
    Harmonic,
    /// V(x) = w cos(x)
    Cosine { w: f64 },
    /// V(x) = 0
    Free,
}

impl Potential {
    pub fn v(&self, x: f64) -> f64 {
        match *self {
            Potential::Wedge { f_slope } => f_slope * fabs(x),
            Potential::Harmonic => 0.5 * x * x,
            Potential::Cosine { w } => w * cos(x),
            Potential::Free => 0.0,
        }
    }
}

/// q^2(x) = 2 (mu - V(x)).
pub fn q_squared(pot: &Potential, mu: f64, x: f64) -> f64 {
    2.0 * (mu - pot.v(x))
}

/// Positive root of V(x) = mu for the single-turning-point traps.
pub fn turning_point(pot: &Potential, mu: f64) -> Result<f64> {
    if mu <= 0.0 {
        return Err(Error::NoTurningPoint);
    }
    match *pot {
        Potential::Wedge { f_slope } => Ok(mu / f_slope),
        Potential::Harmonic => Ok(sqrt(2.0 * mu)),
        _ => Err(Error::NoTurningPoint),
    }
}

const REL_TOL: f64 = 1e-12;

/// Integral of sqrt(|q^2|) over [x_a, x_b], which must lie on one side of the
/// turning point. An endpoint may equal the turning point itself.
pub fn action_integral(pot: &Potential, mu: f64, x_a: f64, x_b: f64) -> Result<f64> {
    if x_a == x_b {
        return Ok(0.0);
    }
    if x_a > x_b {
        return Err(Error::DomainError("action interval must have x_a < x_b"));
    }
    // interior sign-change scan
    let mid_sign = q_squared(pot, mu, 0.5 * (x_a + x_b)).signum();
    let samples = 64;
    for i in 1..samples {
        let x = x_a + (x_b - x_a) * i as f64 / samples as f64;
        let q2 = q_squared(pot, mu, x);
        if q2.signum() != mid_sign && q2.abs() > 1e-9 * (1.0 + mu.abs()) {
            return Err(Error::SignChange { x });
        }
    }

    let xt = turning_point(pot, mu).ok();
    let f = |x: f64| sqrt(fabs(q_squared(pot, mu, x)));
    let near = |x: f64| xt.map_or(false, |t| (x - t).abs() < 1e-9 * (1.0 + t.abs()));

    if near(x_b) {
        // allowed side ending at the turning point: x = x_t - u^2
        let t = xt.unwrap();
        let u_max = sqrt(t - x_a);
        let g = |u: f64| 2.0 * u * sqrt(fabs(q_squared(pot, mu, t - u * u)));
        Ok(quad::integrate(&g, 0.0, u_max, REL_TOL))
    } else if near(x_a) {
        // forbidden side starting at the turning point: x = x_t + u^2
        let t = xt.unwrap();
        let u_max = sqrt(x_b - t);
        let g = |u: f64| 2.0 * u * sqrt(fabs(q_squared(pot, mu, t + u * u)));
        Ok(quad::integrate(&g, 0.0, u_max, REL_TOL))
    } else {
        Ok(quad::integrate(&f, x_a, x_b, REL_TOL))
    }
}

/// Format used by CLI/config: `wedge:F=1`, `harmonic`, `cosine:w=-0.2`, `free`.
impl Potential {
    pub fn parse(spec: &str) -> core::result::Result<Potential, &'static str> {
        let mut parts = spec.splitn(2, ':');
        let name = parts.next().unwrap_or("");
        let arg = parts.next();
        match name {
            "harmonic" => Ok(Potential::Harmonic),
            "free" => Ok(Potential::Free),
            "wedge" => {
                let v = parse_param(arg, "F")?;
                if v <= 0.0 {
                    return Err("wedge slope F must be positive");
                }
                Ok(Potential::Wedge { f_slope: v })
            }
            "cosine" => Ok(Potential::Cosine {
                w: parse_param(arg, "w")?,
            }),
            _ => Err("unknown potential (expected wedge:F=..., harmonic, cosine:w=..., free)"),
        }
    }
}

fn parse_param(arg: Option<&str>, key: &str) -> core::result::Result<f64, &'static str> {
    let arg = arg.ok_or("missing potential parameter")?;
    let mut kv = arg.splitn(2, '=');
    let k = kv.next().unwrap_or("");
    let v = kv.next().ok_or("expected key=value parameter")?;
    if k != key {
        return Err("unexpected parameter name");
    }
    v.parse::<f64>().map_err(|_| "invalid numeric parameter")
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;
    use proptest::prelude::*;

    #[test]
    fn q_squared_substitutions() {
        assert_eq!(q_squared(&Potential::Harmonic, 0.5, 0.0), 1.0);
        let w = Potential::Wedge { f_slope: 1.0 };
        assert!(q_squared(&w, 2.0, 2.0).abs() < 1e-15);
        let c = Potential::Cosine { w: -0.2 };
        assert!((q_squared(&c, -1.0, 0.0) - (-1.6)).abs() < 1e-15);
    }

    #[test]
    fn turning_points() {
        let w = Potential::Wedge { f_slope: 1.0 };
        assert_eq!(turning_point(&w, 3.0).unwrap(), 3.0);
        let h = turning_point(&Potential::Harmonic, 10.5).unwrap();
        assert!((h - 21f64.sqrt()).abs() < 1e-14);
        assert!(matches!(
            turning_point(&Potential::Cosine { w: 0.1 }, 1.0),
            Err(Error::NoTurningPoint)
        ));
        assert!(matches!(
            turning_point(&Potential::Harmonic, -1.0),
            Err(Error::NoTurningPoint)
        ));
    }

    #[test]
    fn q_squared_vanishes_at_turning_point() {
        for mu in [0.7f64, 2.0, 17.5] {
            for pot in [Potential::Harmonic, Potential::Wedge { f_slope: 1.3 }] {
                let xt = turning_point(&pot, mu).unwrap();
                assert!(q_squared(&pot, mu, xt).abs() < 1e-12 * (1.0 + mu));
            }
        }
    }

    #[test]
    fn harmonic_quarter_ellipse() {
        // int_0^{sqrt(2 mu)} sqrt(2 mu - x^2) dx = mu pi / 2
        for mu in [0.5f64, 10.5, 42.0] {
            let xt = (2.0 * mu).sqrt();
            let s = action_integral(&Potential::Harmonic, mu, 0.0, xt).unwrap();
            assert!((s - mu * PI / 2.0).abs() < 1e-9 * mu, "mu = {mu}");
        }
    }

    #[test]
    fn wedge_closed_form() {
        // int_0^{mu} sqrt(2 (mu - x)) dx = (2 mu)^{3/2} / 3 for F = 1
        let pot = Potential::Wedge { f_slope: 1.0 };
        for mu in [1.0f64, 5.0, 20.0] {
            let s = action_integral(&pot, mu, 0.0, mu).unwrap();
            let want = (2.0 * mu).powf(1.5) / 3.0;
            assert!((s - want).abs() < 1e-9 * want);
        }
    }

    #[test]
    fn forbidden_side_matches_refinement() {
        let mu = 10.5f64;
        let xt = (2.0 * mu).sqrt();
        let s = action_integral(&Potential::Harmonic, mu, xt, xt + 2.0).unwrap();
        // independent fine Richardson-style check: substitution + very fine trapezoid
        let n = 400_000;
        let umax = 2f64.sqrt();
        let g = |u: f64| 2.0 * u * (q_squared(&Potential::Harmonic, mu, xt + u * u)).abs().sqrt();
        let h = umax / n as f64;
        let mut acc = 0.5 * (g(0.0) + g(umax));
        for i in 1..n {
            acc += g(i as f64 * h);
        }
        let brute = acc * h;
        assert!((s - brute).abs() < 1e-9 * brute.max(1.0));
    }

    #[test]
    fn sign_change_rejected() {
        let res = action_integral(&Potential::Harmonic, 2.0, 0.0, 5.0);
        assert!(matches!(res, Err(Error::SignChange { .. })));
    }

    #[test]
    fn parse_specs() {
        assert_eq!(
            Potential::parse("wedge:F=1").unwrap(),
            Potential::Wedge { f_slope: 1.0 }
        );
        assert_eq!(Potential::parse("harmonic").unwrap(), Potential::Harmonic);
        assert_eq!(
            Potential::parse("cosine:w=-0.2").unwrap(),
            Potential::Cosine { w: -0.2 }
        );
        assert!(Potential::parse("box").is_err());
        assert!(Potential::parse("wedge:G=1").is_err());
    }

    proptest! {
        #[test]
        fn closed_forms_randomized(mu in 0.5f64..50.0) {
            let s = action_integral(&Potential::Harmonic, mu, 0.0, (2.0*mu).sqrt()).unwrap();
            prop_assert!((s - mu * PI / 2.0).abs() < 1e-9 * mu);
            let pot = Potential::Wedge { f_slope: 1.0 };
            let w = action_integral(&pot, mu, 0.0, mu).unwrap();
            let want = (2.0 * mu).powf(1.5) / 3.0;
            prop_assert!((w - want).abs() < 1e-9 * want);
        }

        #[test]
        fn additivity(mu in 0.5f64..20.0, split in 0.1f64..0.9) {
            let xt = (2.0 * mu).sqrt();
            let xm = split * xt;
            let whole = action_integral(&Potential::Harmonic, mu, 0.0, xt).unwrap();
            let a = action_integral(&Potential::Harmonic, mu, 0.0, xm).unwrap();
            let b = action_integral(&Potential::Harmonic, mu, xm, xt).unwrap();
            prop_assert!((whole - (a + b)).abs() < 1e-9 * whole.max(1.0));
        }
    }
}
