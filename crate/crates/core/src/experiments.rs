//! Random-graph ensembles: generate, minimize, classify connectivity,
//! repair, and tabulate.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::connector::{connect_by_two_switches, percent_difference};
use crate::error::{Error, Result};
use crate::generators::{erdos_renyi, geometric, scale_free, seeded_rng};
use crate::graph::{is_connected, randic_index_exact};
use crate::graphic::has_connected_realization;
use crate::randic_opt::minimize_randic;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "RANDIC_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphType {
    Er,
    Geo,
    Sf,
}

impl GraphType {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphType::Er => "er",
            GraphType::Geo => "geo",
            GraphType::Sf => "sf",
        }
    }
}

impl fmt::Display for GraphType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GraphType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "er" => Ok(GraphType::Er),
            "geo" => Ok(GraphType::Geo),
            "sf" => Ok(GraphType::Sf),
            other => Err(Error::InvalidParameter(format!("unknown graph type {other:?}; expected er, geo or sf"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Connected,
    Disconnected,
    NoConnectedRealization,
}

/// Generator parameters. Unset fields take the ensemble defaults:
/// `p = 4.25/n`, `r = sqrt(6/(πn))`, `min_degree = 2`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EnsembleParams {
    pub p: Option<f64>,
    pub r: Option<f64>,
    pub min_degree: Option<usize>,
}

impl EnsembleParams {
    pub fn er_p(&self, n: usize) -> f64 {
        self.p.unwrap_or(4.25 / n as f64)
    }

    pub fn geo_r(&self, n: usize) -> f64 {
        self.r.unwrap_or((6.0 / (std::f64::consts::PI * n as f64)).sqrt())
    }

    pub fn sf_min_degree(&self) -> usize {
        self.min_degree.unwrap_or(2)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct ExperimentRecord {
    pub graph_type: GraphType,
    pub n: usize,
    pub seed: u64,
    pub R_original: u64,
    pub R_min: Option<u64>,
    pub R_after_heuristic: Option<u64>,
    pub outcome: Outcome,
    pub pct_orig_vs_min: Option<f64>,
    pub pct_heur_vs_min: Option<f64>,
}

fn check_params(graph_type: GraphType, n: usize, params: &EnsembleParams) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n = {n}; ensembles need at least 2 nodes")));
    }
    match graph_type {
        GraphType::Er => {
            let p = params.er_p(n);
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParameter(format!("p = {p} outside [0, 1]")));
            }
        }
        GraphType::Geo => {
            let r = params.geo_r(n);
            if r.is_nan() || r < 0.0 {
                return Err(Error::InvalidParameter(format!("radius {r} must be non-negative")));
            }
        }
        GraphType::Sf => {
            let m = params.sf_min_degree();
            if m < 1 || n <= m {
                return Err(Error::InvalidParameter(format!("min_degree = {m} needs 1 <= min_degree < n = {n}")));
            }
        }
    }
    Ok(())
}

/// One trial, fully determined by `seed`.
pub fn run_trial(graph_type: GraphType, n: usize, seed: u64, params: &EnsembleParams) -> Result<ExperimentRecord> {
    check_params(graph_type, n, params)?;
    let mut rng = seeded_rng(seed);
    let g = match graph_type {
        GraphType::Er => erdos_renyi(n, params.er_p(n), &mut rng)?,
        GraphType::Geo => geometric(n, params.geo_r(n), &mut rng)?,
        GraphType::Sf => scale_free(n, params.sf_min_degree(), &mut rng)?,
    };
    let r_original = randic_index_exact(&g)?;
    let mut rec = ExperimentRecord {
        graph_type,
        n,
        seed,
        R_original: r_original,
        R_min: None,
        R_after_heuristic: None,
        outcome: Outcome::NoConnectedRealization,
        pct_orig_vs_min: None,
        pct_heur_vs_min: None,
    };
    let d = g.degree_sequence();
    if !has_connected_realization(&d) {
        return Ok(rec);
    }
    let opt = minimize_randic(&d)?;
    let r_min = opt.index_value;
    rec.R_min = Some(r_min);
    rec.pct_orig_vs_min = Some(percent_difference(r_original as f64, r_min as f64)?);
    if is_connected(&opt.realization) {
        rec.outcome = Outcome::Connected;
    } else {
        let rep = connect_by_two_switches(&opt.realization, &mut rng)?;
        rec.outcome = Outcome::Disconnected;
        rec.R_after_heuristic = Some(rep.r_after);
        rec.pct_heur_vs_min = Some(percent_difference(rep.r_after as f64, r_min as f64)?);
    }
    Ok(rec)
}

fn worker_count() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&t| t > 0)
}

/// Runs `trials` trials in parallel; trial `t` uses seed `seed + t`.
/// Records come back in trial order regardless of scheduling.
pub fn run_ensemble(
    graph_type: GraphType,
    n: usize,
    trials: usize,
    seed: u64,
    params: &EnsembleParams,
) -> Result<Vec<ExperimentRecord>> {
    check_params(graph_type, n, params)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = worker_count() {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    pool.install(|| {
        (0..trials as u64)
            .into_par_iter()
            .map(|t| run_trial(graph_type, n, seed.wrapping_add(t), params))
            .collect()
    })
}

/// Box-plot statistics; quartiles interpolate linearly between order statistics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoxStats {
    pub count: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
}

impl BoxStats {
    /// `None` for an empty sample.
    pub fn from_values(values: &[f64]) -> Option<BoxStats> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let q = |f: f64| {
            let pos = f * (v.len() - 1) as f64;
            let lo = pos.floor() as usize;
            let hi = pos.ceil() as usize;
            v[lo] + (v[hi] - v[lo]) * (pos - lo as f64)
        };
        Some(BoxStats {
            count: v.len(),
            min: v[0],
            q1: q(0.25),
            median: q(0.5),
            q3: q(0.75),
            max: v[v.len() - 1],
            mean: v.iter().sum::<f64>() / v.len() as f64,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub trials: usize,
    pub connected: usize,
    pub disconnected: usize,
    pub no_connected_realization: usize,
    /// Over every optimized trial.
    pub pct_orig_vs_min: Option<BoxStats>,
    /// Over disconnected trials only; `None` when no repair was needed.
    pub pct_heur_vs_min: Option<BoxStats>,
}

impl Summary {
    pub fn heuristic_note(&self) -> &'static str {
        match self.pct_heur_vs_min {
            Some(_) => "",
            None => "heuristic distribution empty: no disconnected optimum",
        }
    }
}

pub fn summarize(records: &[ExperimentRecord]) -> Result<Summary> {
    if records.is_empty() {
        return Err(Error::Precondition("no records to summarize".into()));
    }
    let count = |o: Outcome| records.iter().filter(|r| r.outcome == o).count();
    let orig: Vec<f64> = records.iter().filter_map(|r| r.pct_orig_vs_min).collect();
    let heur: Vec<f64> = records.iter().filter_map(|r| r.pct_heur_vs_min).collect();
    Ok(Summary {
        trials: records.len(),
        connected: count(Outcome::Connected),
        disconnected: count(Outcome::Disconnected),
        no_connected_realization: count(Outcome::NoConnectedRealization),
        pct_orig_vs_min: BoxStats::from_values(&orig),
        pct_heur_vs_min: BoxStats::from_values(&heur),
    })
}

pub fn write_records<W: Write>(w: W, records: &[ExperimentRecord]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in records {
        out.serialize(r)?;
    }
    if records.is_empty() {
        out.write_record([
            "graph_type",
            "n",
            "seed",
            "R_original",
            "R_min",
            "R_after_heuristic",
            "outcome",
            "pct_orig_vs_min",
            "pct_heur_vs_min",
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_records<R: std::io::Read>(r: R) -> Result<Vec<ExperimentRecord>> {
    let mut rdr = csv::Reader::from_reader(r);
    rdr.deserialize().map(|rec| rec.map_err(Error::from)).collect()
}

fn opt_f64(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_summary<W: Write>(w: W, graph_type: GraphType, n: usize, s: &Summary) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "graph_type",
        "n",
        "trials",
        "connected",
        "disconnected",
        "no_connected_realization",
        "mean_pct_orig_vs_min",
        "mean_pct_heur_vs_min",
        "note",
    ])?;
    out.write_record([
        graph_type.to_string(),
        n.to_string(),
        s.trials.to_string(),
        s.connected.to_string(),
        s.disconnected.to_string(),
        s.no_connected_realization.to_string(),
        opt_f64(s.pct_orig_vs_min.map(|b| b.mean)),
        opt_f64(s.pct_heur_vs_min.map(|b| b.mean)),
        s.heuristic_note().to_string(),
    ])?;
    out.flush()?;
    Ok(())
}

/// One row per percent-difference population; empty populations keep
/// `count = 0` and blank statistics.
pub fn write_boxplot<W: Write>(w: W, s: &Summary) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["population", "count", "min", "q1", "median", "q3", "max", "mean"])?;
    for (name, stats) in [("pct_orig_vs_min", s.pct_orig_vs_min), ("pct_heur_vs_min", s.pct_heur_vs_min)] {
        let mut row = vec![name.to_string(), stats.map_or(0, |b| b.count).to_string()];
        let fields: [fn(BoxStats) -> f64; 6] = [|b| b.min, |b| b.q1, |b| b.median, |b| b.q3, |b| b.max, |b| b.mean];
        for f in fields {
            row.push(opt_f64(stats.map(f)));
        }
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

pub const RECORDS_FILE: &str = "records.csv";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const BOXPLOT_FILE: &str = "boxplot.csv";

/// Writes the three CSV files into `dir`, creating it if needed.
pub fn write_outputs(dir: &Path, graph_type: GraphType, n: usize, records: &[ExperimentRecord]) -> Result<Summary> {
    let summary = summarize(records)?;
    std::fs::create_dir_all(dir)?;
    write_records(std::fs::File::create(dir.join(RECORDS_FILE))?, records)?;
    write_summary(std::fs::File::create(dir.join(SUMMARY_FILE))?, graph_type, n, &summary)?;
    write_boxplot(std::fs::File::create(dir.join(BOXPLOT_FILE))?, &summary)?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(outcome: Outcome, orig: Option<f64>, heur: Option<f64>) -> ExperimentRecord {
        ExperimentRecord {
            graph_type: GraphType::Er,
            n: 5,
            seed: 0,
            R_original: 10,
            R_min: orig.map(|_| 10),
            R_after_heuristic: heur.map(|_| 10),
            outcome,
            pct_orig_vs_min: orig,
            pct_heur_vs_min: heur,
        }
    }

    #[test]
    fn box_stats_arithmetic() {
        let b = BoxStats::from_values(&[20.0, 0.0, 10.0]).unwrap();
        assert_eq!((b.mean, b.median, b.q1, b.q3), (10.0, 10.0, 5.0, 15.0));
        assert_eq!(BoxStats::from_values(&[]), None);
        let one = BoxStats::from_values(&[3.5]).unwrap();
        assert_eq!((one.min, one.median, one.max), (3.5, 3.5, 3.5));
    }

    #[test]
    fn all_connected_has_empty_heuristic() {
        let recs = vec![record(Outcome::Connected, Some(1.0), None); 3];
        let s = summarize(&recs).unwrap();
        assert_eq!(s.connected, 3);
        assert!(s.pct_heur_vs_min.is_none());
        assert!(!s.heuristic_note().is_empty());
        assert!(summarize(&[]).is_err());
    }

    #[test]
    fn er_without_edges_is_never_realizable() {
        let params = EnsembleParams { p: Some(0.0), ..Default::default() };
        let recs = run_ensemble(GraphType::Er, 25, 10, 1, &params).unwrap();
        assert!(recs.iter().all(|r| r.outcome == Outcome::NoConnectedRealization && r.R_min.is_none()));
    }

    #[test]
    fn ensemble_invariants_and_determinism() {
        for ty in [GraphType::Er, GraphType::Geo, GraphType::Sf] {
            let a = run_ensemble(ty, 20, 12, 7, &EnsembleParams::default()).unwrap();
            let b = run_ensemble(ty, 20, 12, 7, &EnsembleParams::default()).unwrap();
            assert_eq!(a, b);
            for (t, r) in a.iter().enumerate() {
                assert_eq!(r.seed, 7 + t as u64);
                assert_eq!(run_trial(ty, 20, r.seed, &EnsembleParams::default()).unwrap(), *r);
                match r.outcome {
                    Outcome::NoConnectedRealization => assert!(r.R_min.is_none() && r.pct_orig_vs_min.is_none()),
                    Outcome::Connected => {
                        assert!(r.R_min.unwrap() <= r.R_original && r.R_after_heuristic.is_none())
                    }
                    Outcome::Disconnected => {
                        assert!(r.R_after_heuristic.unwrap() >= r.R_min.unwrap());
                        assert!(r.pct_heur_vs_min.unwrap() >= 0.0);
                    }
                }
                assert!(r.pct_orig_vs_min.unwrap_or(0.0) >= 0.0);
            }
        }
    }

    #[test]
    fn csv_round_trip() {
        let recs = run_ensemble(GraphType::Sf, 15, 5, 3, &EnsembleParams::default()).unwrap();
        let mut buf = Vec::new();
        write_records(&mut buf, &recs).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with(
            "graph_type,n,seed,R_original,R_min,R_after_heuristic,outcome,pct_orig_vs_min,pct_heur_vs_min\n"
        ));
        assert_eq!(read_records(buf.as_slice()).unwrap(), recs);
    }

    #[test]
    fn bad_parameters() {
        let bad_p = EnsembleParams { p: Some(2.0), ..Default::default() };
        assert!(run_ensemble(GraphType::Er, 10, 1, 0, &bad_p).is_err());
        let bad_m = EnsembleParams { min_degree: Some(10), ..Default::default() };
        assert!(run_ensemble(GraphType::Sf, 10, 1, 0, &bad_m).is_err());
        assert!("ba".parse::<GraphType>().is_err());
        assert_eq!("geo".parse::<GraphType>().unwrap(), GraphType::Geo);
    }
}
