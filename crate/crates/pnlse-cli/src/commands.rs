//! The five subcommand implementations. Each returns a table plus a flag
//! marking whether any sweep point failed to converge.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use pnlse_core::painleve::{self, asymptotic_negative, asymptotic_positive};
use pnlse_core::potentials::Potential;
use pnlse_core::{exact, quantize, soliton};

use crate::config::Method;
use crate::table::{Cell, Table};

pub enum Failure {
    Config(String),
    Solver(String),
}

pub type CmdResult = Result<(Table, bool), Failure>;

fn solver_err<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Solver(e.to_string())
}

/// Evaluate `f` over `0..count` on up to `threads` workers; results keep
/// their index order, so the output is identical to a serial run.
fn par_map<T, F>(count: usize, threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let threads = threads.min(count).max(1);
    if threads == 1 {
        return (0..count).map(f).collect();
    }
    let slots: Vec<Mutex<Option<T>>> = (0..count).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= count {
                    break;
                }
                let v = f(i);
                *slots[i].lock().unwrap() = Some(v);
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.into_inner().unwrap().expect("worker filled slot"))
        .collect()
}

/// Linear interpolation of a uniformly gridded profile, None outside it.
fn sampler<'a>(x: &'a [f64], p: &'a [f64]) -> impl Fn(f64) -> Option<f64> + 'a {
    let h = (x[x.len() - 1] - x[0]) / (x.len() - 1) as f64;
    move |at: f64| {
        let t = (at - x[0]) / h;
        if t < 0.0 || t > (x.len() - 1) as f64 {
            return None;
        }
        let i = (t.floor() as usize).min(x.len() - 2);
        let s = t - i as f64;
        Some(p[i] * (1.0 - s) + p[i + 1] * s)
    }
}

/// Overall sign of a profile is arbitrary; flip `b` to match `a` where the
/// grids overlap so overlays line up.
fn aligned_sign(xa: &[f64], pa: &[f64], xb: &[f64], pb: &[f64]) -> f64 {
    let at = sampler(xb, pb);
    let mut dot = 0.0;
    for (i, &x) in xa.iter().enumerate() {
        if let Some(v) = at(x) {
            dot += pa[i] * v;
        }
    }
    if dot < 0.0 {
        -1.0
    } else {
        1.0
    }
}

pub fn cmd_painleve(k: f64, sigma: i32, y_min: f64, tol_ode: f64) -> CmdResult {
    let mut table = Table::new(&["y", "phi", "phi_asymptotic_neg", "k_Ai"]);
    let count = ((8.0 - y_min) / 0.05).round() as usize;
    if y_min >= 0.0 {
        return Err(Failure::Config(format!("y_min must be negative, got {y_min}")));
    }
    // sigma = 0 drops the nonlinear term, so phi integrates to exactly k Ai(y)
    let sol = painleve::solve_transcendent(k, sigma, y_min, 8.0, tol_ode).map_err(solver_err)?;
    for i in 0..=count {
        let y = y_min + 0.05 * i as f64;
        let phi = sol.evaluate(y).map_err(solver_err)?;
        let asym = sol
            .constants
            .as_ref()
            .and_then(|c| asymptotic_negative(y, c).ok())
            .map(Cell::Num)
            .unwrap_or(Cell::Missing);
        let airy = Cell::Num(asymptotic_positive(y, k));
        table.push(vec![Cell::Num(y), Cell::Num(phi), asym, airy]);
    }
    Ok((table, false))
}

pub fn cmd_eigenstate(pot: &Potential, g: f64, n: usize, method: Method, tol_root: f64) -> CmdResult {
    let sc = if method.wants_sc() {
        Some(quantize::solve_mu_for_g(g, pot, n).map_err(solver_err)?)
    } else {
        None
    };
    let ex = if method.wants_exact() {
        Some(exact::solve_eigenstate_exact(pot, g, n, tol_root).map_err(solver_err)?)
    } else {
        None
    };
    let mut table = match (&sc, &ex) {
        (Some(sc), Some(ex)) => {
            let mut t = Table::new(&["x", "psi_sc", "psi_ex"]);
            let flip = aligned_sign(&sc.x_grid, &sc.psi, &ex.x_grid, &ex.psi);
            let at = sampler(&ex.x_grid, &ex.psi);
            for (i, &x) in sc.x_grid.iter().enumerate() {
                let e = at(x).map(|v| Cell::Num(flip * v)).unwrap_or(Cell::Missing);
                t.push(vec![Cell::Num(x), Cell::Num(sc.psi[i]), e]);
            }
            t
        }
        (Some(sc), None) => {
            let mut t = Table::new(&["x", "psi_sc"]);
            for (i, &x) in sc.x_grid.iter().enumerate() {
                t.push(vec![Cell::Num(x), Cell::Num(sc.psi[i])]);
            }
            t
        }
        (None, Some(ex)) => {
            let mut t = Table::new(&["x", "psi_ex"]);
            for (i, &x) in ex.x_grid.iter().enumerate() {
                t.push(vec![Cell::Num(x), Cell::Num(ex.psi[i])]);
            }
            t
        }
        (None, None) => unreachable!(),
    };
    if let Some(sc) = &sc {
        table.summary.push(("mu_sc".into(), sc.mu));
        table.summary.push(("k".into(), sc.k));
    }
    if let Some(ex) = &ex {
        table.summary.push(("mu_ex".into(), ex.mu));
    }
    Ok((table, false))
}

pub fn cmd_mu_curve(
    pot: &Potential,
    n: usize,
    gs: &[f64],
    method: Method,
    tol_root: f64,
    threads: usize,
) -> CmdResult {
    let mut columns = vec!["g"];
    if method.wants_sc() {
        columns.push("mu_sc");
    }
    if method.wants_exact() {
        columns.push("mu_ex");
    }
    columns.push("status");
    let mut table = Table::new(&columns);

    let points = par_map(gs.len(), threads, |i| {
        let g = gs[i];
        let sc = method
            .wants_sc()
            .then(|| quantize::solve_mu_for_g(g, pot, n).map(|r| r.mu));
        let ex = method
            .wants_exact()
            .then(|| exact::solve_eigenstate_exact(pot, g, n, tol_root).map(|r| r.mu));
        (sc, ex)
    });

    let mut any_failed = false;
    for (i, (sc, ex)) in points.into_iter().enumerate() {
        let mut row = vec![Cell::Num(gs[i])];
        let mut status = "ok".to_string();
        for res in [sc, ex].into_iter().flatten() {
            match res {
                Ok(mu) => row.push(Cell::Num(mu)),
                Err(e) => {
                    row.push(Cell::Missing);
                    status = e.to_string();
                    any_failed = true;
                }
            }
        }
        row.push(Cell::Text(status));
        table.push(row);
    }
    Ok((table, any_failed))
}

pub fn cmd_error_vs_n(
    pot: &Potential,
    gs: &[f64],
    n_lo: usize,
    n_hi: usize,
    tol_root: f64,
    threads: usize,
) -> CmdResult {
    if n_hi < n_lo {
        return Err(Failure::Config(format!("empty n range {n_lo}..{n_hi}")));
    }
    let cases: Vec<(f64, usize)> = gs
        .iter()
        .flat_map(|&g| (n_lo..=n_hi).map(move |n| (g, n)))
        .collect();
    let points = par_map(cases.len(), threads, |i| {
        let (g, n) = cases[i];
        let sc = quantize::solve_mu_for_g(g, pot, n).map(|r| r.mu);
        let ex = exact::solve_eigenstate_exact(pot, g, n, tol_root).map(|r| r.mu);
        match (sc, ex) {
            (Ok(a), Ok(b)) => Ok(a - b),
            (Err(e), _) | (_, Err(e)) => Err(e),
        }
    });

    let mut table = Table::new(&["g", "n", "mu_sc-mu_ex", "status"]);
    let mut any_failed = false;
    for (i, res) in points.into_iter().enumerate() {
        let (g, n) = cases[i];
        let (err, status) = match res {
            Ok(v) => (Cell::Num(v), "ok".to_string()),
            Err(e) => {
                any_failed = true;
                (Cell::Missing, e.to_string())
            }
        };
        table.push(vec![Cell::Num(g), Cell::Int(n as i64), err, Cell::Text(status)]);
    }
    Ok((table, any_failed))
}

pub fn cmd_soliton_profile(w: f64, mu: f64, tol_root: f64) -> CmdResult {
    let sc = soliton::bright_in_lattice(mu, w).map_err(solver_err)?;
    let (g_ex, x_ex, psi_ex) = exact::solve_soliton_exact(w, mu, tol_root).map_err(solver_err)?;
    let mut table = Table::new(&["x", "psi_sc", "psi_ex"]);
    let flip = aligned_sign(&sc.x_grid, &sc.psi, &x_ex, &psi_ex);
    let at = sampler(&x_ex, &psi_ex);
    for (i, &x) in sc.x_grid.iter().enumerate() {
        let e = at(x).map(|v| Cell::Num(flip * v)).unwrap_or(Cell::Missing);
        table.push(vec![Cell::Num(x), Cell::Num(sc.psi[i]), e]);
    }
    table.summary.push(("mu".into(), mu));
    table.summary.push(("g_eff_sc".into(), sc.g_eff));
    table.summary.push(("g_eff_ex".into(), g_ex));
    Ok((table, false))
}

pub fn cmd_soliton_sweep(rows: &[soliton::MuShiftRow], param_name: &str) -> CmdResult {
    let mut table = Table::new(&[param_name, "mu_sc", "mu_ex", "status"]);
    let mut any_failed = false;
    for r in rows {
        let sc = r.mu_sc.map(Cell::Num).unwrap_or(Cell::Missing);
        let ex = r.mu_ex.map(Cell::Num).unwrap_or(Cell::Missing);
        let ok = r.mu_sc.is_some() && r.mu_ex.is_some();
        if !ok {
            any_failed = true;
        }
        let status = if ok { "ok" } else { "no-convergence" };
        table.push(vec![Cell::Num(r.param), sc, ex, Cell::Text(status.into())]);
    }
    Ok((table, any_failed))
}
