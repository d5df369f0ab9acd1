//! Command-line front end: semiclassical and exact solvers for stationary
//! states of the cubic nonlinear Schrödinger equation, with CSV/JSON tables
//! and optional SVG plots.

mod commands;
mod config;
mod plot;
mod table;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pnlse_core::potentials::Potential;

use commands::{CmdResult, Failure};
use config::{FileConfig, Format, Method};

#[derive(Parser)]
#[command(name = "pnlse", version, about = "Stationary states of the 1D cubic NLSE")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Default)]
struct Common {
    /// TOML config file; command-line flags take precedence over it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file (default: stdout)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format: csv or json
    #[arg(long, global = true)]
    format: Option<String>,
    /// Also write an SVG plot next to --out
    #[arg(long, global = true)]
    plot: bool,
    /// ODE integration tolerance
    #[arg(long, global = true)]
    tol_ode: Option<f64>,
    /// Root-finding / shooting tolerance
    #[arg(long, global = true)]
    tol_root: Option<f64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Second Painlevé transcendent against its asymptotic forms
    Painleve {
        #[command(flatten)]
        common: Common,
        /// Airy multiplier k of the transcendent
        #[arg(long)]
        k: Option<f64>,
        /// Sign of the nonlinearity: +1, -1, or 0 for the Airy test mode
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<i32>,
        /// Lower end of the y grid
        #[arg(long, allow_hyphen_values = true)]
        y_min: Option<f64>,
    },
    /// One eigenstate: wavefunction profile and chemical potential
    Eigenstate {
        #[command(flatten)]
        common: Common,
        /// wedge:F=1 | harmonic | cosine:w=-0.2 | free
        #[arg(long)]
        potential: Option<String>,
        /// Nonlinearity
        #[arg(long, allow_hyphen_values = true)]
        g: Option<f64>,
        /// Quantum number (node count)
        #[arg(long)]
        n: Option<usize>,
        /// sc | exact | both
        #[arg(long)]
        method: Option<String>,
    },
    /// Chemical potential against nonlinearity for one quantum number
    MuCurve {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        potential: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// g sweep as start:stop:count
        #[arg(long, allow_hyphen_values = true)]
        sweep: Option<String>,
        #[arg(long)]
        method: Option<String>,
    },
    /// Semiclassical error mu_sc - mu_ex against quantum number
    ErrorVsN {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        potential: Option<String>,
        /// One nonlinearity or a comma list, e.g. 1,10
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        /// n range as start:stop:count (integers)
        #[arg(long, allow_hyphen_values = true)]
        sweep: Option<String>,
    },
    /// Bright soliton in a cosine lattice: profile or parameter sweeps
    Soliton {
        #[command(flatten)]
        common: Common,
        /// Lattice strength
        #[arg(long, allow_hyphen_values = true)]
        w: Option<f64>,
        /// Chemical potential (profile mode)
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<f64>,
        /// Effective nonlinearity (w-sweep mode)
        #[arg(long, allow_hyphen_values = true)]
        g: Option<f64>,
        /// Sweep as start:stop:count over g_eff (default) or w (with --g)
        #[arg(long, allow_hyphen_values = true)]
        sweep: Option<String>,
    },
}

struct Resolved {
    out: Option<PathBuf>,
    format: Format,
    plot: bool,
    tol_ode: f64,
    tol_root: f64,
    file: FileConfig,
}

fn resolve_common(common: &Common) -> Result<Resolved, String> {
    let file = FileConfig::load(common.config.as_ref())?;
    let format = match common.format.as_deref().or(file.format.as_deref()) {
        Some(s) => Format::parse(s)?,
        None => Format::Csv,
    };
    let out = common.out.clone().or_else(|| file.out.clone());
    let plot = common.plot || file.plot.unwrap_or(false);
    if plot && out.is_none() {
        return Err("--plot needs --out to name the SVG file".into());
    }
    let tol_ode = config::check_tol("tol_ode", common.tol_ode.or(file.tol_ode).unwrap_or(1e-10))?;
    let tol_root =
        config::check_tol("tol_root", common.tol_root.or(file.tol_root).unwrap_or(1e-10))?;
    Ok(Resolved {
        out,
        format,
        plot,
        tol_ode,
        tol_root,
        file,
    })
}

fn resolve_potential(flag: &Option<String>, file: &FileConfig) -> Result<Potential, String> {
    let spec = flag
        .as_deref()
        .or(file.potential.as_deref())
        .unwrap_or("harmonic");
    Potential::parse(spec).map_err(|e| e.to_string())
}

fn resolve_method(flag: &Option<String>, file: &FileConfig) -> Result<Method, String> {
    match flag.as_deref().or(file.method.as_deref()) {
        Some(s) => Method::parse(s),
        None => Ok(Method::Both),
    }
}

fn run(cli: Cli) -> Result<(CmdResult, Resolved), Failure> {
    let result = match &cli.cmd {
        Cmd::Painleve { common, k, sigma, y_min } => {
            let r = resolve_common(common).map_err(Failure::Config)?;
            let k = k.or(r.file.k).unwrap_or(0.5);
            let sigma = sigma.or(r.file.sigma).unwrap_or(1);
            let y_min = y_min.or(r.file.y_min).unwrap_or(-12.0);
            (commands::cmd_painleve(k, sigma, y_min, r.tol_ode), r)
        }
        Cmd::Eigenstate { common, potential, g, n, method } => {
            let r = resolve_common(common).map_err(Failure::Config)?;
            let pot = resolve_potential(potential, &r.file).map_err(Failure::Config)?;
            let method = resolve_method(method, &r.file).map_err(Failure::Config)?;
            let g = g.or(r.file.g).unwrap_or(0.0);
            let n = n.or(r.file.n).unwrap_or(0);
            (commands::cmd_eigenstate(&pot, g, n, method, r.tol_root), r)
        }
        Cmd::MuCurve { common, potential, n, sweep, method } => {
            let r = resolve_common(common).map_err(Failure::Config)?;
            let pot = resolve_potential(potential, &r.file).map_err(Failure::Config)?;
            let method = resolve_method(method, &r.file).map_err(Failure::Config)?;
            let n = n.or(r.file.n).unwrap_or(0);
            let spec = sweep.as_deref().or(r.file.sweep.as_deref()).unwrap_or("-10:10:41");
            let (a, b, count) = config::parse_sweep(spec).map_err(Failure::Config)?;
            let gs = config::sweep_points(a, b, count);
            let threads = config::thread_cap().map_err(Failure::Config)?;
            (commands::cmd_mu_curve(&pot, n, &gs, method, r.tol_root, threads), r)
        }
        Cmd::ErrorVsN { common, potential, g, sweep } => {
            let r = resolve_common(common).map_err(Failure::Config)?;
            let pot = resolve_potential(potential, &r.file).map_err(Failure::Config)?;
            let gs = match g.as_deref() {
                Some(list) => config::parse_g_list(list).map_err(Failure::Config)?,
                None => r.file.g_list.clone().unwrap_or_else(|| vec![5.0]),
            };
            let spec = sweep.as_deref().or(r.file.sweep.as_deref()).unwrap_or("2:12:11");
            let (a, b, _) = config::parse_sweep(spec).map_err(Failure::Config)?;
            if a < 0.0 || b < a || a.fract() != 0.0 || b.fract() != 0.0 {
                return Err(Failure::Config(format!("bad n range {spec}")));
            }
            let threads = config::thread_cap().map_err(Failure::Config)?;
            (
                commands::cmd_error_vs_n(&pot, &gs, a as usize, b as usize, r.tol_root, threads),
                r,
            )
        }
        Cmd::Soliton { common, w, mu, g, sweep } => {
            let r = resolve_common(common).map_err(Failure::Config)?;
            let w = w.or(r.file.w).unwrap_or(-0.2);
            let mu = mu.or(r.file.mu);
            let g = g.or(r.file.g);
            let sweep = sweep.as_deref().or(r.file.sweep.as_deref()).map(str::to_owned);
            let result = match (mu, &sweep) {
                (Some(mu), None) => commands::cmd_soliton_profile(w, mu, r.tol_root),
                (None, Some(spec)) => {
                    let (a, b, count) = config::parse_sweep(spec).map_err(Failure::Config)?;
                    let pts = config::sweep_points(a, b, count);
                    match g {
                        // fixed g_eff, sweep the lattice strength
                        Some(g_eff) => {
                            let rows = pnlse_core::soliton::mu_vs_w(g_eff, &pts);
                            commands::cmd_soliton_sweep(&rows, "w")
                        }
                        // fixed lattice, sweep the effective nonlinearity
                        None => {
                            let rows = pnlse_core::soliton::mu_vs_geff(w, &pts);
                            commands::cmd_soliton_sweep(&rows, "g_eff")
                        }
                    }
                }
                (Some(_), Some(_)) => {
                    return Err(Failure::Config("--mu and --sweep are mutually exclusive".into()))
                }
                (None, None) => {
                    return Err(Failure::Config("soliton needs --mu (profile) or --sweep".into()))
                }
            };
            (result, r)
        }
    };
    Ok(result)
}

fn write_output(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, resolved) = match run(cli) {
        Ok(pair) => pair,
        Err(Failure::Config(msg)) => {
            eprintln!("config error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Solver(msg)) => {
            eprintln!("solver error: {msg}");
            return ExitCode::from(3);
        }
    };
    let (table, any_failed) = match result {
        Ok(pair) => pair,
        Err(Failure::Config(msg)) => {
            eprintln!("config error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Solver(msg)) => {
            eprintln!("solver error: {msg}");
            return ExitCode::from(3);
        }
    };
    let text = table.render(resolved.format);
    if let Err(msg) = write_output(&text, resolved.out.as_deref()) {
        eprintln!("io error: {msg}");
        return ExitCode::from(2);
    }
    if resolved.plot {
        let svg_path = resolved.out.as_ref().expect("checked").with_extension("svg");
        if let Err(msg) = write_output(&plot::render_svg(&table), Some(&svg_path)) {
            eprintln!("io error: {msg}");
            return ExitCode::from(2);
        }
    }
    for (key, value) in &table.summary {
        eprintln!("{key} = {}", table::fmt_num(*value));
    }
    if any_failed {
        // partial results were still written above
        eprintln!("warning: some sweep points did not converge");
        return ExitCode::from(3);
    }
    ExitCode::SUCCESS
}
