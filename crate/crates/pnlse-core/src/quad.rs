//! Quadrature helpers: Gauss-Legendre panels and uniform-grid Simpson rules.

use alloc::vec::Vec;

/// 7-point Gauss-Legendre nodes (on [-1, 1]) and weights.
const GL7_X: [f64; 7] = [
    -0.949107912342758524526189684047851,
    -0.741531185599394439863864773280788,
    -0.405845151377397166906606412076961,
    0.0,
    0.405845151377397166906606412076961,
    0.741531185599394439863864773280788,
    0.949107912342758524526189684047851,
];
const GL7_W: [f64; 7] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
];

/// Single 7-point Gauss-Legendre panel on [a, b].
pub fn gauss7<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut s = 0.0;
    for i in 0..7 {
        s += GL7_W[i] * f(c + h * GL7_X[i]);
    }
    s * h
}

fn composite_gauss7<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut s = 0.0;
    for i in 0..panels {
        let x0 = a + i as f64 * h;
        s += gauss7(f, x0, x0 + h);
    }
    s
}

/// Composite Gauss-Legendre with panel doubling until the relative change
/// drops below `rel_tol` (or 1024 panels are reached).
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let mut panels = 1;
    let mut prev = composite_gauss7(f, a, b, panels);
    loop {
        panels *= 2;
        let next = composite_gauss7(f, a, b, panels);
        let scale = next.abs().max(1e-300);
        if (next - prev).abs() <= rel_tol * scale || panels >= 1024 {
            return next;
        }
        prev = next;
    }
}

/// Integral of uniformly sampled values with spacing `h` (composite Simpson;
/// a 3/8 rule absorbs the final segment when the interval count is odd).
pub fn simpson_uniform(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    if n == 2 {
        return 0.5 * h * (values[0] + values[1]);
    }
    if n == 3 {
        return h / 3.0 * (values[0] + 4.0 * values[1] + values[2]);
    }
    let intervals = n - 1;
    if intervals % 2 == 0 {
        let mut s = values[0] + values[n - 1];
        for (i, &v) in values.iter().enumerate().skip(1).take(n - 2) {
            s += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
        }
        s * h / 3.0
    } else {
        // Simpson on the first n-4 intervals (even count), 3/8 on the last 3.
        let head = simpson_uniform(&values[..n - 3], h);
        let tail = 3.0 * h / 8.0
            * (values[n - 4] + 3.0 * values[n - 3] + 3.0 * values[n - 2] + values[n - 1]);
        head + tail
    }
}

/// Cumulative integral of a smooth function sampled on an arbitrary ascending
/// grid, one 7-point panel per grid interval. Returns the running integral
/// from `grid[0]`, same length as `grid`.
pub fn cumulative<F: Fn(f64) -> f64>(f: &F, grid: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(grid.len());
    let mut acc = 0.0;
    out.push(0.0);
    for w in grid.windows(2) {
        acc += gauss7(f, w[0], w[1]);
        out.push(acc);
    }
    out
}
