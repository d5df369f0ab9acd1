//! Config file handling and flag/file/default merging.

use std::path::PathBuf;

use serde::Deserialize;

/// Keys accepted in the TOML config file. Every command reads the subset it
/// understands; unknown keys are rejected on load.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub potential: Option<String>,
    pub g: Option<f64>,
    pub g_list: Option<Vec<f64>>,
    pub mu: Option<f64>,
    pub w: Option<f64>,
    pub k: Option<f64>,
    pub n: Option<usize>,
    pub sigma: Option<i32>,
    pub y_min: Option<f64>,
    pub method: Option<String>,
    pub sweep: Option<String>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub plot: Option<bool>,
    pub tol_ode: Option<f64>,
    pub tol_root: Option<f64>,
}

impl FileConfig {
    pub fn load(path: Option<&PathBuf>) -> Result<FileConfig, String> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Semiclassical,
    Exact,
    Both,
}

impl Method {
    pub fn parse(s: &str) -> Result<Method, String> {
        match s {
            "sc" | "semiclassical" => Ok(Method::Semiclassical),
            "exact" => Ok(Method::Exact),
            "both" => Ok(Method::Both),
            other => Err(format!("unknown method '{other}' (expected sc|exact|both)")),
        }
    }

    pub fn wants_sc(self) -> bool {
        self != Method::Exact
    }

    pub fn wants_exact(self) -> bool {
        self != Method::Semiclassical
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Format, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format '{other}' (expected csv|json)")),
        }
    }
}

/// `start:stop:count` with count >= 2.
pub fn parse_sweep(spec: &str) -> Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("bad sweep '{spec}' (expected start:stop:count)"));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| format!("bad sweep start '{}'", parts[0]))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|_| format!("bad sweep stop '{}'", parts[1]))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| format!("bad sweep count '{}'", parts[2]))?;
    if count < 2 {
        return Err("sweep count must be at least 2".into());
    }
    Ok((start, stop, count))
}

pub fn sweep_points(start: f64, stop: f64, count: usize) -> Vec<f64> {
    let h = (stop - start) / (count - 1) as f64;
    (0..count).map(|i| start + h * i as f64).collect()
}

/// Comma-separated list of reals, e.g. `1,10`.
pub fn parse_g_list(spec: &str) -> Result<Vec<f64>, String> {
    spec.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| format!("bad g value '{s}'")))
        .collect()
}

pub fn check_tol(name: &str, v: f64) -> Result<f64, String> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{name} must be positive, got {v}"))
    }
}

/// Sweep concurrency cap from PNLSE_THREADS (default: the machine).
pub fn thread_cap() -> Result<usize, String> {
    let hw = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    match std::env::var("PNLSE_THREADS") {
        Ok(s) => {
            let n: usize = s
                .parse()
                .map_err(|_| format!("bad PNLSE_THREADS '{s}'"))?;
            if n == 0 {
                return Err("PNLSE_THREADS must be at least 1".into());
            }
            Ok(n.min(hw))
        }
        Err(_) => Ok(hw),
    }
}
