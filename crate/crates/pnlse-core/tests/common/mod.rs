//! Independent oracles used by the integration tests. Everything here is
//! implemented from scratch (double-double Maclaurin series, product formula
//! for the gamma argument) so it shares no code with the library under test.

#![allow(dead_code)]

/// Double-double value: hi + lo with |lo| <= ulp(hi)/2.
#[derive(Debug, Clone, Copy)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn new(hi: f64, lo: f64) -> Dd {
        Dd { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn scale(self, x: f64) -> Dd {
        self.mul(Dd::from(x))
    }

    pub fn div_f64(self, x: f64) -> Dd {
        let q1 = self.hi / x;
        let r = self.add(Dd::from(q1).scale(-x));
        let q2 = (r.hi + r.lo) / x;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let v = s - a;
    (s, (a - (s - v)) + (b - v))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

// Ai(0) and Ai'(0) beyond double precision.
const AI0: Dd = Dd {
    hi: 0.3550280538878172,
    lo: 2.05233632436212e-17,
};
const AIP0: Dd = Dd {
    hi: -0.2588194037928068,
    lo: 2.522243111610832e-17,
};

/// Airy Ai by its Maclaurin series, accumulated in double-double arithmetic.
/// The series converges for all x; double-double absorbs the cancellation on
/// the oscillatory side out to |x| of about 10.
pub fn airy_ai_series(x: f64) -> f64 {
    airy_pair_series(x).0
}

pub fn airy_ai_prime_series(x: f64) -> f64 {
    airy_pair_series(x).1
}

fn airy_pair_series(x: f64) -> (f64, f64) {
    // independent solutions f = 1 + x^3/6 + ..., g = x + x^4/12 + ...
    // satisfying u'' = x u; Ai = Ai(0) f + Ai'(0) g
    if x == 0.0 {
        return (AI0.to_f64(), AIP0.to_f64());
    }
    let xd = Dd::from(x);
    let x3 = xd.mul(xd).mul(xd);
    let mut f_term = Dd::from(1.0);
    let mut g_term = xd;
    let mut f_sum = f_term;
    let mut g_sum = g_term;
    let mut fp_sum = Dd::from(0.0);
    let mut gp_sum = Dd::from(1.0);
    for k in 1..200usize {
        let k3 = 3.0 * k as f64;
        f_term = f_term.mul(x3).div_f64(k3 * (k3 - 1.0));
        g_term = g_term.mul(x3).div_f64(k3 * (k3 + 1.0));
        f_sum = f_sum.add(f_term);
        g_sum = g_sum.add(g_term);
        // term-wise derivatives: d/dx x^{3k}/c = 3k x^{3k-1}/c
        fp_sum = fp_sum.add(f_term.scale(k3 / x));
        gp_sum = gp_sum.add(g_term.scale((k3 + 1.0) / x));
        if f_term.hi.abs() < 1e-40 && g_term.hi.abs() < 1e-40 {
            break;
        }
    }
    let ai = AI0.mul(f_sum).add(AIP0.mul(g_sum));
    let aip = AI0.mul(fp_sum).add(AIP0.mul(gp_sum));
    (ai.to_f64(), aip.to_f64())
}

/// Zeros of Ai (deriv = false) or Ai' (deriv = true) from the series oracle,
/// smallest |zero| first, found by scan plus bisection on [-10, 0].
pub fn airy_zeros_series(deriv: bool, count: usize) -> Vec<f64> {
    let f = |x: f64| {
        if deriv {
            airy_ai_prime_series(x)
        } else {
            airy_ai_series(x)
        }
    };
    let mut zeros = Vec::new();
    let h = 1e-3;
    let mut x = -h;
    while zeros.len() < count && x > -10.0 {
        let (a, b) = (x, x - h);
        if f(a) * f(b) <= 0.0 {
            let (mut a, mut b) = (a, b);
            for _ in 0..80 {
                let m = 0.5 * (a + b);
                if f(a) * f(m) <= 0.0 {
                    b = m;
                } else {
                    a = m;
                }
            }
            zeros.push(0.5 * (a + b));
        }
        x -= h;
    }
    zeros
}

pub const EULER_GAMMA: f64 = 0.5772156649015329;

/// arg Gamma(1 + i y) by the Weierstrass product:
/// -gamma y + sum_k (y/k - atan(y/k)), with a cubic tail estimate.
pub fn arg_gamma_product(y: f64) -> f64 {
    let mut s = -EULER_GAMMA * y;
    let kmax = 200_000usize;
    for k in 1..=kmax {
        let t = y / k as f64;
        s += t - t.atan();
    }
    // remaining terms are y^3/(3 k^3) to leading order
    s + y.powi(3) / (6.0 * (kmax as f64).powi(2))
}

/// Trapezoid integral of tabulated samples on a possibly nonuniform grid.
pub fn trapezoid(x: &[f64], f: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..x.len() - 1 {
        acc += 0.5 * (f[i] + f[i + 1]) * (x[i + 1] - x[i]);
    }
    acc
}
