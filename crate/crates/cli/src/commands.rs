use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{anyhow, Context};
use islandperf::analysis::{
    fit_model, kruskal_wallis, render_svg, significance_marker, speedup, write_fit_report, write_predictions,
    FitReportRow, ModelFamily, SampleSeries, SeriesKind,
};
use islandperf::harness::{
    self, read_aggregates, read_records, write_aggregates, ExperimentConfig, RecordWriter, SuiteEvent,
};
use islandperf::islands::{RunRecord, Schedule};
use islandperf::problems::PPeaksInstance;

use crate::{CmdResult, Failure, Kind};

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .with_context(|| format!("cannot write {}", path.display()))
        .map_err(Failure::usage)
}

fn open(path: &Path) -> Result<File, Failure> {
    File::open(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::usage)
}

fn create_dir(path: &Path) -> CmdResult {
    fs::create_dir_all(path)
        .with_context(|| format!("cannot create directory {}", path.display()))
        .map_err(Failure::usage)
}

pub fn generate(problem: &str, peaks: usize, bits: usize, seed: u64, out: &Path) -> CmdResult {
    let key = problem.to_ascii_lowercase().replace('-', "");
    if key != "ppeaks" {
        return Err(Failure::usage(anyhow!(
            "generate supports only ppeaks; CVRP instances are read from TSPLIB files"
        )));
    }
    let inst = PPeaksInstance::generate(peaks, bits, seed).map_err(Failure::usage)?;
    fs::write(out, inst.dump())
        .with_context(|| format!("cannot write {}", out.display()))
        .map_err(Failure::usage)
}

/// Worker-count cap from `ISLANDPERF_THREADS`, if set.
fn thread_cap() -> Result<Option<usize>, Failure> {
    match std::env::var("ISLANDPERF_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .map(Some)
            .ok_or_else(|| Failure::usage(anyhow!("ISLANDPERF_THREADS must be a positive integer, got '{v}'"))),
    }
}

pub fn run(config: &Path, out: &Path, deterministic: bool, seed: Option<u64>) -> CmdResult {
    let text = fs::read_to_string(config)
        .with_context(|| format!("cannot read config {}", config.display()))
        .map_err(Failure::usage)?;
    let base = config.parent().unwrap_or(Path::new("."));
    let mut cfg = ExperimentConfig::parse(&text, base)
        .with_context(|| format!("invalid config {}", config.display()))
        .map_err(Failure::usage)?;
    if deterministic {
        cfg.schedule = Schedule::Deterministic;
    }
    if let Some(s) = seed {
        cfg.base_seed = s;
    }
    if let Some(cap) = thread_cap()? {
        cfg.worker_counts.retain(|&w| w == 1 || w <= cap);
    }
    cfg.validate().map_err(Failure::usage)?;
    let problem = cfg
        .load_problem()
        .context("cannot load instance")
        .map_err(Failure::usage)?;

    let mut writer = RecordWriter::new(create(out)?);
    harness::run_suite(&cfg, &problem, |event| {
        match event {
            SuiteEvent::Completed(r) => writer.write(&r)?,
            SuiteEvent::Skipped(s) => eprintln!(
                "skipped gap {:?} workers {} rep {}: {}",
                s.gap, s.workers, s.rep, s.reason
            ),
        }
        Ok(())
    })
    .map_err(Failure::runtime)
}

fn load_records(path: &Path) -> Result<Vec<RunRecord>, Failure> {
    read_records(open(path)?)
        .with_context(|| format!("invalid records CSV {}", path.display()))
        .map_err(Failure::usage)
}

pub fn aggregate(records: &Path, out: &Path) -> CmdResult {
    let rows = harness::aggregate(&load_records(records)?).map_err(Failure::usage)?;
    write_aggregates(create(out)?, &rows).map_err(Failure::runtime)
}

fn slug(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '_' })
        .collect()
}

fn gap_label(gap: Option<u64>) -> String {
    gap.map_or_else(|| "none".to_string(), |g| g.to_string())
}

pub fn analyze(aggregate: &Path, kind: Kind, families: &[String], out: &Path) -> CmdResult {
    let families: Vec<ModelFamily> = if families.is_empty() {
        ModelFamily::ALL.to_vec()
    } else {
        families
            .iter()
            .map(|f| f.parse())
            .collect::<Result<_, _>>()
            .map_err(Failure::usage)?
    };
    let rows = read_aggregates(open(aggregate)?)
        .with_context(|| format!("invalid aggregate CSV {}", aggregate.display()))
        .map_err(Failure::usage)?;
    create_dir(out)?;

    let mut series: BTreeMap<(String, Option<u64>), Vec<(f64, f64)>> = BTreeMap::new();
    for r in rows {
        series
            .entry((r.problem, r.gap))
            .or_default()
            .push((r.workers as f64, r.median_wall_ms / 1e3));
    }

    let mut report = Vec::new();
    let mut row_errors = 0;
    for ((problem, gap), mut points) in series {
        let label = format!("{problem} gap {}", gap_label(gap));
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        let built = SampleSeries::new(points, SeriesKind::WallClock).and_then(|s| match kind {
            Kind::WallClock => Ok(s),
            Kind::Speedup => speedup(&s),
        });
        let s = match built {
            Ok(s) => s,
            Err(e) => {
                eprintln!("{label}: {e}");
                row_errors += 1;
                continue;
            }
        };
        let mut fits = Vec::new();
        for &family in &families {
            match fit_model(family, &s) {
                Ok(fit) => {
                    report.push(FitReportRow::new(&problem, s.kind(), gap, &fit));
                    fits.push(fit);
                }
                Err(e) => {
                    eprintln!("{label}: {family}: {e}");
                    row_errors += 1;
                }
            }
        }
        let stem = format!("{}_{}_gap{}", slug(&problem), slug(&s.kind().to_string()), gap_label(gap));
        write_predictions(create(&out.join(format!("predictions_{stem}.csv")))?, &s, &fits)
            .map_err(Failure::runtime)?;
        fs::write(out.join(format!("plot_{stem}.svg")), render_svg(&label, &s, &fits))
            .context("cannot write plot")
            .map_err(Failure::usage)?;
    }
    write_fit_report(create(&out.join("fit_report.csv"))?, &report).map_err(Failure::runtime)?;
    if row_errors > 0 {
        eprintln!("{row_errors} series/family combinations skipped");
    }
    Ok(())
}

#[derive(serde::Serialize)]
struct SignificanceRow {
    problem: String,
    /// `across-gaps` (fixed workers) or `across-workers` (fixed gap).
    scope: &'static str,
    gap: Option<u64>,
    workers: Option<usize>,
    metric: &'static str,
    groups: usize,
    h: Option<f64>,
    p: Option<f64>,
    marker: &'static str,
    note: String,
}

fn significance(
    problem: &str,
    scope: &'static str,
    gap: Option<u64>,
    workers: Option<usize>,
    groups: &[Vec<&RunRecord>],
) -> Vec<SignificanceRow> {
    let metrics: [(&'static str, fn(&RunRecord) -> f64); 2] =
        [("wall_ms", |r| r.wall_ms), ("evals", |r| r.evals as f64)];
    metrics
        .iter()
        .map(|&(metric, get)| {
            let values: Vec<Vec<f64>> = groups.iter().map(|g| g.iter().map(|r| get(r)).collect()).collect();
            let base = SignificanceRow {
                problem: problem.to_string(),
                scope,
                gap,
                workers,
                metric,
                groups: values.len(),
                h: None,
                p: None,
                marker: "NS",
                note: String::new(),
            };
            if values.len() < 2 {
                return SignificanceRow { note: "fewer than two groups".into(), ..base };
            }
            if let Some(small) = values.iter().map(Vec::len).min().filter(|&n| n < 2) {
                return SignificanceRow { note: format!("group size {small} < 2"), ..base };
            }
            match kruskal_wallis(&values) {
                Ok(kw) => SignificanceRow {
                    h: Some(kw.h),
                    p: Some(kw.p),
                    marker: significance_marker(kw.p),
                    ..base
                },
                Err(e) => SignificanceRow { note: e.to_string(), ..base },
            }
        })
        .collect()
}

pub fn report(records: &Path, out: &Path) -> CmdResult {
    let records = load_records(records)?;
    create_dir(out)?;
    let rows = harness::aggregate(&records).map_err(Failure::usage)?;
    write_aggregates(create(&out.join("aggregate.csv"))?, &rows).map_err(Failure::runtime)?;

    type Cells<'a> = BTreeMap<String, BTreeMap<(Option<u64>, usize), Vec<&'a RunRecord>>>;
    let mut cells: Cells = BTreeMap::new();
    for r in &records {
        cells
            .entry(r.problem.clone())
            .or_default()
            .entry((r.gap, r.workers))
            .or_default()
            .push(r);
    }

    let mut out_rows = Vec::new();
    for (problem, by_cell) in &cells {
        let mut by_workers: BTreeMap<usize, Vec<Vec<&RunRecord>>> = BTreeMap::new();
        let mut by_gap: BTreeMap<Option<u64>, Vec<Vec<&RunRecord>>> = BTreeMap::new();
        for (&(gap, workers), rs) in by_cell {
            by_workers.entry(workers).or_default().push(rs.clone());
            by_gap.entry(gap).or_default().push(rs.clone());
        }
        for (workers, groups) in &by_workers {
            out_rows.extend(significance(problem, "across-gaps", None, Some(*workers), groups));
        }
        for (gap, groups) in &by_gap {
            out_rows.extend(significance(problem, "across-workers", *gap, None, groups));
        }
    }
    let mut w = csv::Writer::from_writer(create(&out.join("significance.csv"))?);
    for r in &out_rows {
        w.serialize(r).map_err(Failure::runtime)?;
    }
    w.flush().map_err(Failure::runtime)?;
    let mut stdout = std::io::stdout().lock();
    for r in &out_rows {
        let at = match r.scope {
            "across-gaps" => format!("workers {}", r.workers.unwrap_or(0)),
            _ => format!("gap {}", gap_label(r.gap)),
        };
        let line = writeln!(
            stdout,
            "{} {} {at} {}: {}{}",
            r.problem,
            r.scope,
            r.metric,
            r.marker,
            r.p.map(|p| format!(" (p = {p:.4})")).unwrap_or_default()
        );
        match line {
            Ok(()) => {}
            // a closed pipe (e.g. `| head`) is not an error for a summary printout
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => break,
            Err(e) => return Err(Failure::runtime(e)),
        }
    }
    Ok(())
}
