//! Embedded Dormand-Prince 5(4) integrator with adaptive step control and
//! dense output. Accepted step nodes and derivatives are stored so solutions
//! can be re-evaluated anywhere by cubic Hermite interpolation; `h_max`
//! bounds the node spacing and with it the interpolation error.
//!
//! Step control is deterministic: identical inputs produce bitwise-identical
//! node sequences.

use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Upper bound on |h|; also the initial step size.
    pub h_max: f64,
    pub max_steps: usize,
    /// Abort with `BlowUp` when any state component exceeds this magnitude.
    pub blow_up: Option<f64>,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            h_max: 0.01,
            max_steps: 2_000_000,
            blow_up: None,
        }
    }
}

/// Sampled solution at the integrator's accepted nodes, stored in ascending
/// order of the independent variable regardless of integration direction.
#[derive(Debug, Clone)]
pub struct DenseSolution<const N: usize> {
    pub t: Vec<f64>,
    pub y: Vec<[f64; N]>,
    pub dy: Vec<[f64; N]>,
}

impl<const N: usize> DenseSolution<N> {
    pub fn t_min(&self) -> f64 {
        self.t[0]
    }

    pub fn t_max(&self) -> f64 {
        self.t[self.t.len() - 1]
    }

    /// Cubic Hermite interpolation using the stored derivatives.
    pub fn eval(&self, t: f64) -> Result<[f64; N]> {
        let (i, s, h) = self.locate(t)?;
        let (y0, y1) = (&self.y[i], &self.y[i + 1]);
        let (d0, d1) = (&self.dy[i], &self.dy[i + 1]);
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        let mut out = [0.0; N];
        for j in 0..N {
            out[j] = h00 * y0[j] + h10 * h * d0[j] + h01 * y1[j] + h11 * h * d1[j];
        }
        Ok(out)
    }

    /// Interpolated derivative of the Hermite form.
    pub fn eval_derivative(&self, t: f64) -> Result<[f64; N]> {
        let (i, s, h) = self.locate(t)?;
        let (y0, y1) = (&self.y[i], &self.y[i + 1]);
        let (d0, d1) = (&self.dy[i], &self.dy[i + 1]);
        let s2 = s * s;
        let dh00 = (6.0 * s2 - 6.0 * s) / h;
        let dh10 = 3.0 * s2 - 4.0 * s + 1.0;
        let dh01 = (-6.0 * s2 + 6.0 * s) / h;
        let dh11 = 3.0 * s2 - 2.0 * s;
        let mut out = [0.0; N];
        for j in 0..N {
            out[j] = dh00 * y0[j] + dh10 * d0[j] + dh01 * y1[j] + dh11 * d1[j];
        }
        Ok(out)
    }

    fn locate(&self, t: f64) -> Result<(usize, f64, f64)> {
        let (lo, hi) = (self.t_min(), self.t_max());
        if t < lo - 1e-12 || t > hi + 1e-12 {
            return Err(Error::OutOfRange {
                value: t,
                min: lo,
                max: hi,
            });
        }
        let t = t.clamp(lo, hi);
        // index of the interval containing t
        let mut i = match self
            .t
            .binary_search_by(|probe| probe.partial_cmp(&t).unwrap())
        {
            Ok(i) => i,
            Err(i) => i.saturating_sub(1),
        };
        if i >= self.t.len() - 1 {
            i = self.t.len() - 2;
        }
        let h = self.t[i + 1] - self.t[i];
        Ok((i, (t - self.t[i]) / h, h))
    }
}

// Dormand-Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 35.0 / 384.0 - 5179.0 / 57600.0;
const E3: f64 = 500.0 / 1113.0 - 7571.0 / 16695.0;
const E4: f64 = 125.0 / 192.0 - 393.0 / 640.0;
const E5: f64 = -2187.0 / 6784.0 + 92097.0 / 339200.0;
const E6: f64 = 11.0 / 84.0 - 187.0 / 2100.0;
const E7: f64 = -1.0 / 40.0;

/// Integrate `dy/dt = f(t, y)` from `t0` to `t_end` (either direction).
pub fn integrate<const N: usize, F>(
    f: F,
    t0: f64,
    t_end: f64,
    y0: [f64; N],
    opts: &OdeOptions,
) -> Result<DenseSolution<N>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let dir = if t_end >= t0 { 1.0 } else { -1.0 };
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    let mut h = dir * opts.h_max;

    let mut ts = Vec::new();
    let mut ys = Vec::new();
    let mut dys = Vec::new();
    ts.push(t);
    ys.push(y);
    dys.push(k1);

    let mut steps = 0usize;
    while (t_end - t) * dir > 1e-14 * (1.0 + t.abs()) {
        if steps >= opts.max_steps {
            return Err(Error::NoConvergence("ODE step limit exceeded"));
        }
        steps += 1;
        if (t + h - t_end) * dir > 0.0 {
            h = t_end - t;
        }

        let mut yt = [0.0; N];
        for j in 0..N {
            yt[j] = y[j] + h * A21 * k1[j];
        }
        let k2 = f(t + h / 5.0, &yt);
        for j in 0..N {
            yt[j] = y[j] + h * (A31 * k1[j] + A32 * k2[j]);
        }
        let k3 = f(t + 3.0 * h / 10.0, &yt);
        for j in 0..N {
            yt[j] = y[j] + h * (A41 * k1[j] + A42 * k2[j] + A43 * k3[j]);
        }
        let k4 = f(t + 4.0 * h / 5.0, &yt);
        for j in 0..N {
            yt[j] = y[j] + h * (A51 * k1[j] + A52 * k2[j] + A53 * k3[j] + A54 * k4[j]);
        }
        let k5 = f(t + 8.0 * h / 9.0, &yt);
        for j in 0..N {
            yt[j] = y[j]
                + h * (A61 * k1[j] + A62 * k2[j] + A63 * k3[j] + A64 * k4[j] + A65 * k5[j]);
        }
        let k6 = f(t + h, &yt);
        let mut y_new = [0.0; N];
        for j in 0..N {
            y_new[j] =
                y[j] + h * (B1 * k1[j] + B3 * k3[j] + B4 * k4[j] + B5 * k5[j] + B6 * k6[j]);
        }
        let k7 = f(t + h, &y_new);

        let mut err = 0.0f64;
        for j in 0..N {
            let e = h
                * (E1 * k1[j] + E3 * k3[j] + E4 * k4[j] + E5 * k5[j] + E6 * k6[j] + E7 * k7[j]);
            let sc = opts.abs_tol + opts.rel_tol * y[j].abs().max(y_new[j].abs());
            err += (e / sc) * (e / sc);
        }
        err = libm::sqrt(err / N as f64);

        if err <= 1.0 {
            t += h;
            y = y_new;
            k1 = k7; // FSAL
            ts.push(t);
            ys.push(y);
            dys.push(k1);
            if let Some(limit) = opts.blow_up {
                for v in &y {
                    if v.abs() > limit {
                        return Err(Error::BlowUp { y: t, phi: *v });
                    }
                }
            }
        }
        let factor = if err > 0.0 {
            (0.9 * libm::pow(err, -0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h = (h * factor).clamp(-opts.h_max, opts.h_max);
        if h.abs() < 1e-14 {
            return Err(Error::NoConvergence("ODE step size underflow"));
        }
    }

    if dir < 0.0 {
        ts.reverse();
        ys.reverse();
        dys.reverse();
    }
    Ok(DenseSolution {
        t: ts,
        y: ys,
        dy: dys,
    })
}
