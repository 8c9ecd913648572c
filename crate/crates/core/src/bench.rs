//! Scaling benchmark for the linear-time solver.
//!
//! Each row solves one random terrain with `solve_full` and records the guard
//! count, chain visits and wall time of the solve alone (generation is not
//! timed). Per size the report gives the median time, the worst visits per
//! vertex and the log-log slope of median time against the previous size.

use std::fmt::Write as _;
use std::time::Instant;

use crate::error::GenError;
use crate::generator::{generate_random, GenSpec};
use crate::solver::solve_full;

/// Per-vertex visit budget of one solver pass.
pub const VISIT_BOUND: f64 = 3.0;

pub const CSV_HEADER: &str = "n,seed,guards,visits,visits_per_n,micros";

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub seeds_per_size: u64,
    pub max_run: i64,
    pub max_rise: i64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: vec![1_000, 10_000, 100_000, 1_000_000],
            seeds_per_size: 10,
            max_run: 2,
            max_rise: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub seed: u64,
    pub guards: usize,
    pub visits: u64,
    pub micros: f64,
}

impl BenchRow {
    pub fn visits_per_n(&self) -> f64 {
        self.visits as f64 / self.n as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SizeSummary {
    pub n: usize,
    pub median_micros: f64,
    pub max_visits_per_n: f64,
    /// Slope of log(median time) over log(n) from the previous size.
    pub slope: Option<f64>,
}

#[derive(Clone, Debug, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub sizes: Vec<SizeSummary>,
}

/// Parses sizes such as `1e3`, `25000` or `2.5e4`.
pub fn parse_size(s: &str) -> Result<usize, String> {
    let s = s.trim();
    if let Ok(n) = s.parse::<usize>() {
        return Ok(n);
    }
    let f: f64 = s.parse().map_err(|_| format!("`{s}` is not a size"))?;
    if !(f.is_finite() && f >= 1.0 && f.fract() == 0.0 && f <= u32::MAX as f64) {
        return Err(format!("`{s}` is not a positive whole size"));
    }
    Ok(f as usize)
}

pub fn parse_sizes(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(parse_size)
        .collect()
}

pub fn median(xs: &mut [f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.sort_by(|a, b| a.total_cmp(b));
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2.0
    }
}

/// Least squares slope of `ln y` over `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    num / den
}

pub fn bench_spec(n: usize, seed: u64, cfg: &BenchConfig) -> GenSpec {
    GenSpec {
        seed,
        steps: n.div_ceil(2).max(1),
        max_run: cfg.max_run,
        max_rise: cfg.max_rise,
        pattern: None,
    }
}

pub fn run_one(n: usize, seed: u64, cfg: &BenchConfig) -> Result<BenchRow, GenError> {
    let t = generate_random(&bench_spec(n, seed, cfg))?;
    let start = Instant::now();
    let sol = solve_full(&t);
    let micros = start.elapsed().as_secs_f64() * 1e6;
    Ok(BenchRow {
        n: t.len(),
        seed,
        guards: sol.guards.len(),
        visits: sol.visits,
        micros,
    })
}

pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport, GenError> {
    let mut report = BenchReport::default();
    for &n in &cfg.sizes {
        let start = report.rows.len();
        for seed in 0..cfg.seeds_per_size {
            report.rows.push(run_one(n, seed, cfg)?);
        }
        let rows = &report.rows[start..];
        let mut times: Vec<f64> = rows.iter().map(|r| r.micros).collect();
        let med = median(&mut times);
        let vpn = rows.iter().map(BenchRow::visits_per_n).fold(0.0, f64::max);
        let slope = report
            .sizes
            .last()
            .map(|p: &SizeSummary| loglog_slope(&[(p.n as f64, p.median_micros), (n as f64, med)]));
        report.sizes.push(SizeSummary {
            n,
            median_micros: med,
            max_visits_per_n: vpn,
            slope,
        });
    }
    Ok(report)
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from(CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{:.4},{:.1}",
                r.n,
                r.seed,
                r.guards,
                r.visits,
                r.visits_per_n(),
                r.micros
            );
        }
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:>10} {:>14} {:>12} {:>8}",
            "n", "median_micros", "visits/n", "slope"
        );
        for z in &self.sizes {
            let slope = z.slope.map_or("-".to_string(), |x| format!("{x:.3}"));
            let _ = writeln!(
                s,
                "{:>10} {:>14.1} {:>12.4} {:>8}",
                z.n, z.median_micros, z.max_visits_per_n, slope
            );
        }
        let worst = self
            .sizes
            .iter()
            .map(|z| z.max_visits_per_n)
            .fold(0.0, f64::max);
        if worst > VISIT_BOUND {
            let _ = writeln!(
                s,
                "flag: visits/n peaks at {worst:.4} > {VISIT_BOUND} (solve_full sums a left and a right pass)"
            );
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_parse() {
        assert_eq!(parse_sizes("1e3,1e4, 250").unwrap(), vec![1000, 10000, 250]);
        assert_eq!(parse_size("2.5e3"), Ok(2500));
        assert!(parse_size("1.5").is_err());
        assert!(parse_size("-1e3").is_err());
        assert!(parse_size("x").is_err());
    }

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = [10.0f64, 100.0, 1000.0]
            .iter()
            .map(|&x| (x, 3.0 * x.powf(1.5)))
            .collect();
        assert!((loglog_slope(&pts) - 1.5).abs() < 1e-9);
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn small_run() {
        let cfg = BenchConfig {
            sizes: vec![100, 1000],
            seeds_per_size: 3,
            ..Default::default()
        };
        let r = run_bench(&cfg).unwrap();
        assert_eq!(r.rows.len(), 6);
        assert!(r.rows.iter().all(|x| x.n == 100 || x.n == 1000));
        assert!(r.sizes[0].slope.is_none() && r.sizes[1].slope.is_some());
        let csv = r.to_csv();
        assert!(csv.starts_with(CSV_HEADER));
        assert_eq!(csv.lines().count(), 7);
    }
}
