//! Real Airy function Ai and its derivative, the argument of the gamma
//! function on the line 1 - i t (t >= 0), and the connection constants
//! d^2(k), theta(k) linking the two asymptotic regimes of the second
//! Painleve transcendent.
//!
//! Ai is evaluated from the Maclaurin series near the origin, from the
//! standard asymptotic expansions far out, and by Taylor-series marching of
//! the Airy ODE in between. Marching on the positive axis always proceeds
//! from large y downward, the direction in which Ai grows, so the growing
//! companion solution cannot contaminate the result.

use libm::{atan2, cos, exp, log, pow, sin, sqrt};

use crate::error::{Error, Result};

/// Ai(0) = 3^(-2/3) / Gamma(2/3)
pub const AIRY_AI_ZERO: f64 = 0.355_028_053_887_817_24;
/// Ai'(0) = -3^(-1/3) / Gamma(1/3)
pub const AIRY_AI_PRIME_ZERO: f64 = -0.258_819_403_792_806_8;

// The Maclaurin series loses ~e^{(4/3) y^{3/2}} digits to cancellation on the
// positive axis but only a bounded amount on the negative axis, hence the
// asymmetric cuts.
const SERIES_CUT_POS: f64 = 2.0;
const SERIES_CUT_NEG: f64 = -4.2;
const ASYMP_CUT: f64 = 12.0;
const MARCH_STEP: f64 = 0.25;

/// Airy function of the first kind, Ai(y).
pub fn airy_ai(y: f64) -> f64 {
    airy_ai_pair(y).0
}

/// Derivative Ai'(y).
pub fn airy_ai_prime(y: f64) -> f64 {
    airy_ai_pair(y).1
}

/// (Ai, Ai') evaluated together; the two always come from the same branch.
pub fn airy_ai_pair(y: f64) -> (f64, f64) {
    if (SERIES_CUT_NEG..=SERIES_CUT_POS).contains(&y) {
        maclaurin(y)
    } else if y >= ASYMP_CUT {
        asymp_positive(y)
    } else if y > 0.0 {
        // anchor in the asymptotic region, march down to y
        let (u, v) = asymp_positive(ASYMP_CUT);
        taylor_march(ASYMP_CUT, u, v, y)
    } else if y <= -ASYMP_CUT {
        asymp_negative(y)
    } else {
        let (u, v) = maclaurin(SERIES_CUT_NEG);
        taylor_march(SERIES_CUT_NEG, u, v, y)
    }
}

/// Maclaurin series; accurate to ~1e-13 relative for |y| <= 4.2.
fn maclaurin(y: f64) -> (f64, f64) {
    let y3 = y * y * y;
    // f = sum y^{3k} prod 1/((3j+2)(3j+3)),  g = sum y^{3k+1} prod 1/((3j+3)(3j+4))
    let mut tf = 1.0;
    let mut tg = y;
    let mut f = tf;
    let mut g = tg;
    // derivative series: f' terms b_k = 3k y^{3k-1}/C_k, g' terms a_k = (3k+1) y^{3k}/D_k
    let mut tfp = 0.5 * y * y; // k = 1 term of f'
    let mut tgp = 1.0; // k = 0 term of g'
    let mut fp = tfp;
    let mut gp = tgp;
    for k in 0..40u32 {
        let kf = k as f64;
        tf *= y3 / ((3.0 * kf + 2.0) * (3.0 * kf + 3.0));
        tg *= y3 / ((3.0 * kf + 3.0) * (3.0 * kf + 4.0));
        f += tf;
        g += tg;
        tgp *= y3 / ((3.0 * kf + 1.0) * (3.0 * kf + 3.0));
        gp += tgp;
        if k >= 1 {
            tfp *= y3 * (kf + 1.0) / (kf * (3.0 * kf + 2.0) * (3.0 * kf + 3.0));
            fp += tfp;
        }
        if tf.abs() < 1e-18 * f.abs() && tg.abs() < 1e-18 * g.abs().max(1e-30) {
            break;
        }
    }
    let c1 = AIRY_AI_ZERO;
    let c2 = -AIRY_AI_PRIME_ZERO;
    (c1 * f - c2 * g, c1 * fp - c2 * gp)
}

/// u_k coefficients of the asymptotic expansions, u_0 = 1,
/// u_k = u_{k-1} (6k-5)(6k-1) / (72 k); v_k = u_k (6k+1)/(1-6k).
fn asymp_positive(y: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * pow(y, 1.5);
    let mut u = 1.0;
    let mut sum_ai = 1.0;
    let mut sum_aip = 1.0;
    let mut sign = 1.0;
    let mut prev = 1.0;
    for k in 1..30u32 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 1.0) / (72.0 * kf);
        let term = u / pow(zeta, kf);
        if term.abs() > prev {
            break; // divergent tail reached
        }
        prev = term.abs();
        sign = -sign;
        let v = u * (6.0 * kf + 1.0) / (1.0 - 6.0 * kf);
        sum_ai += sign * term;
        sum_aip += sign * v / pow(zeta, kf);
        if term.abs() < 1e-18 {
            break;
        }
    }
    let pref = exp(-zeta) / (2.0 * sqrt(core::f64::consts::PI));
    let y14 = pow(y, 0.25);
    (pref / y14 * sum_ai, -pref * y14 * sum_aip)
}

fn asymp_negative(y: f64) -> (f64, f64) {
    let z = -y;
    let zeta = 2.0 / 3.0 * pow(z, 1.5);
    // split the u_k sequence into even/odd sub-sums
    let mut u = [0.0f64; 20];
    u[0] = 1.0;
    for k in 1..20usize {
        let kf = k as f64;
        u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 1.0) / (72.0 * kf);
    }
    let v: [f64; 20] = core::array::from_fn(|k| {
        let kf = k as f64;
        u[k] * (6.0 * kf + 1.0) / (1.0 - 6.0 * kf)
    });
    let mut ce = 0.0; // sum (-1)^k u_{2k} zeta^{-2k}
    let mut co = 0.0; // sum (-1)^k u_{2k+1} zeta^{-2k-1}
    let mut de = 0.0;
    let mut dor = 0.0;
    let mut sign = 1.0;
    for k in 0..10usize {
        let even = u[2 * k] / pow(zeta, 2.0 * k as f64);
        let odd = u[2 * k + 1] / pow(zeta, 2.0 * k as f64 + 1.0);
        if k > 0 && even > u[2 * k - 2] / pow(zeta, 2.0 * k as f64 - 2.0) {
            break;
        }
        ce += sign * even;
        co += sign * odd;
        de += sign * v[2 * k] / pow(zeta, 2.0 * k as f64);
        dor += sign * v[2 * k + 1] / pow(zeta, 2.0 * k as f64 + 1.0);
        sign = -sign;
    }
    let sp = sqrt(core::f64::consts::PI);
    let z14 = pow(z, 0.25);
    let (s, c) = (sin(zeta - core::f64::consts::FRAC_PI_4), cos(zeta - core::f64::consts::FRAC_PI_4));
    let ai = (c * ce + s * co) / (sp * z14);
    let aip = (s * de - c * dor) * z14 / sp;
    (ai, aip)
}

/// March the Airy ODE w'' = x w by Taylor steps from (a, u = Ai(a), v = Ai'(a))
/// to the target point b.
fn taylor_march(a: f64, u: f64, v: f64, b: f64) -> (f64, f64) {
    let dir = if b >= a { 1.0 } else { -1.0 };
    let mut t = a;
    let mut u = u;
    let mut v = v;
    while (b - t) * dir > 1e-14 {
        let h = dir * MARCH_STEP.min((b - t) * dir);
        let (nu, nv) = taylor_step(t, u, v, h);
        u = nu;
        v = nv;
        t += h;
    }
    (u, v)
}

fn taylor_step(a: f64, u: f64, v: f64, h: f64) -> (f64, f64) {
    // local coefficients: w'' = (a + s) w  =>
    // (n+2)(n+1) c_{n+2} = a c_n + c_{n-1}
    const N: usize = 28;
    let mut c = [0.0f64; N];
    c[0] = u;
    c[1] = v;
    c[2] = 0.5 * a * u;
    for n in 1..N - 2 {
        c[n + 2] = (a * c[n] + c[n - 1]) / (((n + 1) * (n + 2)) as f64);
    }
    let mut w = 0.0;
    let mut wp = 0.0;
    for n in (0..N).rev() {
        w = w * h + c[n];
        if n >= 1 {
            wp = wp * h + n as f64 * c[n];
        }
    }
    (w, wp)
}

// ---------------------------------------------------------------------------
// arg Gamma(1 - i t/2) via a Lanczos approximation of ln Gamma
// ---------------------------------------------------------------------------

#[derive(Clone, Copy)]
struct Cx {
    re: f64,
    im: f64,
}

impl Cx {
    fn new(re: f64, im: f64) -> Self {
        Cx { re, im }
    }
    fn add(self, o: Cx) -> Cx {
        Cx::new(self.re + o.re, self.im + o.im)
    }
    fn sub(self, o: Cx) -> Cx {
        Cx::new(self.re - o.re, self.im - o.im)
    }
    fn mul(self, o: Cx) -> Cx {
        Cx::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
    fn inv_scaled(num: f64, den: Cx) -> Cx {
        // num / den
        let d = den.re * den.re + den.im * den.im;
        Cx::new(num * den.re / d, -num * den.im / d)
    }
    fn ln(self) -> Cx {
        Cx::new(
            0.5 * log(self.re * self.re + self.im * self.im),
            atan2(self.im, self.re),
        )
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_C: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Imaginary part of ln Gamma(z) for Re z >= 0.5 (no reflection needed here).
fn arg_gamma(z: Cx) -> f64 {
    let zm1 = Cx::new(z.re - 1.0, z.im);
    let mut acc = Cx::new(LANCZOS_C[0], 0.0);
    for (i, &ci) in LANCZOS_C.iter().enumerate().skip(1) {
        acc = acc.add(Cx::inv_scaled(ci, Cx::new(zm1.re + i as f64, zm1.im)));
    }
    let t = Cx::new(zm1.re + LANCZOS_G + 0.5, zm1.im);
    // ln Gamma = (z - 1/2) ln t - t + ln(sqrt(2 pi) * acc)
    let half = Cx::new(zm1.re + 0.5, zm1.im);
    let res = half.mul(t.ln()).sub(t).add(acc.ln());
    res.im
}

/// arg Gamma(1 - i d2/2), normalized into (-pi, pi].
pub fn gamma_arg_one_minus_half_i(d2: f64) -> f64 {
    let mut a = arg_gamma(Cx::new(1.0, -0.5 * d2));
    let two_pi = 2.0 * core::f64::consts::PI;
    while a > core::f64::consts::PI {
        a -= two_pi;
    }
    while a <= -core::f64::consts::PI {
        a += two_pi;
    }
    a
}

// ---------------------------------------------------------------------------
// Connection constants of the second Painleve transcendent
// ---------------------------------------------------------------------------

/// Parameters of the oscillatory asymptote of phi_k: amplitude d, phase theta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionConstants {
    pub k: f64,
    pub sigma: i32,
    pub d_squared: f64,
    pub theta: f64,
}

/// d^2(k) = -(sigma/pi) ln(1 - sigma k^2),
/// theta(k) = (3/2) sigma d^2 ln 2 + sigma arg Gamma(1 - i d^2/2) - pi/4.
pub fn connection_constants(k: f64, sigma: i32) -> Result<ConnectionConstants> {
    if !(sigma == 1 || sigma == -1) {
        return Err(Error::DomainError("sigma must be +1 or -1"));
    }
    if k <= 0.0 {
        return Err(Error::DomainError("k must be positive"));
    }
    if sigma == 1 && k >= 1.0 {
        return Err(Error::DivergentRegime { k });
    }
    let s = sigma as f64;
    let d_squared = -(s / core::f64::consts::PI) * log(1.0 - s * k * k);
    let theta = 1.5 * s * d_squared * log(2.0) + s * gamma_arg_one_minus_half_i(d_squared)
        - core::f64::consts::FRAC_PI_4;
    Ok(ConnectionConstants {
        k,
        sigma,
        d_squared,
        theta,
    })
}
