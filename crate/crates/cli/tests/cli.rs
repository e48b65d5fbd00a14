use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use islandperf::analysis::{read_fit_report, SeriesKind};
use islandperf::harness::{read_records, write_aggregates, write_records, AggregateRow};
use islandperf::islands::RunRecord;

fn islandperf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_islandperf"))
        .args(args)
        .env_remove("ISLANDPERF_THREADS")
        .output()
        .expect("binary runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn generate_writes_header_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.pk"), dir.path().join("b.pk"));
    for out in [&a, &b] {
        let o = islandperf(&["generate", "--problem", "ppeaks", "-P", "20", "-N", "100", "--seed", "7", "-o", s(out)]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text.lines().next().unwrap(), "20 100 7");
    assert_eq!(text.lines().count(), 21);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn generate_validation_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.pk");
    let o = islandperf(&["generate", "-P", "0", "-N", "10", "-o", s(&out)]);
    assert_eq!(o.status.code(), Some(2));
    let o = islandperf(&["generate", "-P", "2", "-N", "10", "-o", "/nonexistent-dir/x.pk"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cannot write"));
}

const SMALL: &str = "problem = ppeaks\npeaks = 4\nbits = 24\nislands = 4\npop_size = 4\nrepetitions = 2\nworkers = 1,2\nseed = 11\n";

#[test]
fn run_default_gaps_produce_one_row_per_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.cfg");
    fs::write(&cfg, SMALL).unwrap();
    let out = dir.path().join("runs.csv");
    let o = islandperf(&["run", "-c", s(&cfg), "-o", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 21);
    assert!(text.starts_with("problem,gap,workers,rep,seed,wall_ms,evals,best_fitness,hit_target,oversubscribed"));
}

#[test]
fn deterministic_runs_replay() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.cfg");
    fs::write(&cfg, SMALL).unwrap();
    let evals = |name: &str| {
        let out = dir.path().join(name);
        let o = islandperf(&["run", "-c", s(&cfg), "-o", s(&out), "--deterministic"]);
        assert!(o.status.success(), "{}", stderr(&o));
        read_records(fs::File::open(out).unwrap())
            .unwrap()
            .iter()
            .map(|r| (r.gap, r.workers, r.seed, r.evals, r.best_fitness))
            .collect::<Vec<_>>()
    };
    assert_eq!(evals("a.csv"), evals("b.csv"));
}

#[test]
fn run_config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("runs.csv");

    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "problem = ppeaks\nmigration_topology = star\n").unwrap();
    let o = islandperf(&["run", "-c", s(&cfg), "-o", s(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("migration_topology"), "{}", stderr(&o));

    let cfg = dir.path().join("vrp.cfg");
    fs::write(&cfg, "problem = vrp1\ninstance = missing.vrp\n").unwrap();
    let o = islandperf(&["run", "-c", s(&cfg), "-o", s(&out)]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn thread_cap_env_limits_workers() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.cfg");
    fs::write(&cfg, SMALL.replace("workers = 1,2", "workers = 1,2,4") + "gaps = 16\n").unwrap();
    let out = dir.path().join("runs.csv");
    let o = Command::new(env!("CARGO_BIN_EXE_islandperf"))
        .args(["run", "-c", s(&cfg), "-o", s(&out), "--deterministic"])
        .env("ISLANDPERF_THREADS", "2")
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let recs = read_records(fs::File::open(out).unwrap()).unwrap();
    assert_eq!(recs.len(), 4);
    assert!(recs.iter().all(|r| r.workers <= 2));
}

fn write_agg(path: &Path, problem: &str, gap: u64, ys_seconds: &[f64]) {
    let rows: Vec<AggregateRow> = ys_seconds
        .iter()
        .enumerate()
        .map(|(i, &y)| AggregateRow {
            problem: problem.into(),
            gap: Some(gap),
            workers: 1 << i,
            median_wall_ms: y * 1e3,
            stdv_wall_ms: 0.0,
            median_evals: 1000.0,
            stdv_evals: 0.0,
            success_rate: 1.0,
        })
        .collect();
    write_aggregates(fs::File::create(path).unwrap(), &rows).unwrap();
}

#[test]
fn analyze_paper_medians() {
    let dir = tempfile::tempdir().unwrap();
    let agg = dir.path().join("agg.csv");
    write_agg(&agg, "ppeaks-20-100", 64, &[6.21, 3.05, 1.53, 0.79, 0.41, 0.21, 0.12]);
    let out = dir.path().join("fits");
    let o = islandperf(&["analyze", "-a", s(&agg), "-o", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report = read_fit_report(fs::File::open(out.join("fit_report.csv")).unwrap()).unwrap();
    assert_eq!(report.len(), 6);
    let r3 = report.iter().find(|r| r.family == "rational3").unwrap();
    assert!(r3.mae <= 0.02, "{}", r3.mae);
    assert_eq!(r3.kind, SeriesKind::WallClock.to_string());
    assert!(out.join("plot_ppeaks_20_100_wall_clock_gap64.svg").exists());
    assert!(out.join("predictions_ppeaks_20_100_wall_clock_gap64.csv").exists());
}

#[test]
fn analyze_single_family_exact_line() {
    let dir = tempfile::tempdir().unwrap();
    let agg = dir.path().join("agg.csv");
    let ys: Vec<f64> = (0..5).map(|i| 2.0 * (1u32 << i) as f64 + 1.0).collect();
    write_agg(&agg, "line", 16, &ys);
    let out = dir.path().join("fits");
    let o = islandperf(&["analyze", "-a", s(&agg), "--families", "linear", "-o", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report = read_fit_report(fs::File::open(out.join("fit_report.csv")).unwrap()).unwrap();
    assert_eq!(report.len(), 1);
    assert!((report[0].a - 2.0).abs() < 1e-9 && (report[0].b - 1.0).abs() < 1e-9);
}

#[test]
fn analyze_speedup_ideal_column_and_missing_baseline() {
    let dir = tempfile::tempdir().unwrap();
    let agg = dir.path().join("agg.csv");
    write_agg(&agg, "p", 64, &[6.21, 3.05, 1.53, 0.79, 0.41, 0.21, 0.12]);
    let out = dir.path().join("fits");
    let o = islandperf(&["analyze", "-a", s(&agg), "--kind", "speedup", "--families", "rational3", "-o", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let pred = fs::read_to_string(out.join("predictions_p_speed_up_gap64.csv")).unwrap();
    assert_eq!(pred.lines().next().unwrap(), "x,y_real,y_pred,family,y_ideal");
    for line in pred.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[0], cols[4]);
    }

    // a series without x = 1 is reported and skipped, others still analyzed
    let mut text = fs::read_to_string(&agg).unwrap();
    text.push_str("q,64,2,1000,0,10,0,1\nq,64,4,500,0,10,0,1\n");
    fs::write(&agg, text).unwrap();
    let o = islandperf(&["analyze", "-a", s(&agg), "--kind", "speedup", "-o", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("no single-core baseline"));
}

fn rec(gap: u64, workers: usize, rep: u32, wall: f64) -> RunRecord {
    RunRecord {
        problem: "p".into(),
        gap: Some(gap),
        workers,
        rep,
        seed: rep as u64,
        wall_ms: wall,
        evals: 1000,
        best_fitness: 0.0,
        hit_target: true,
        oversubscribed: false,
    }
}

#[test]
fn report_markers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("runs.csv");
    let mut records = Vec::new();
    for rep in 0..10 {
        // wall-clock strongly separated by worker count, flat across gaps
        for (gap, workers) in [(16, 1), (16, 2), (256, 1), (256, 2)] {
            let wall = if workers == 1 { 100.0 + rep as f64 } else { 10.0 + rep as f64 };
            records.push(rec(gap, workers, rep, wall));
        }
    }
    write_records(fs::File::create(&path).unwrap(), &records).unwrap();
    let out = dir.path().join("report");
    let o = islandperf(&["report", "-r", s(&path), "-o", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("p across-gaps workers 1 wall_ms: NS"), "{stdout}");
    assert!(stdout.contains("p across-workers gap 16 wall_ms: **"), "{stdout}");
    // identical evaluation counts everywhere
    assert!(stdout.contains("p across-workers gap 16 evals: NS"), "{stdout}");
    assert!(out.join("aggregate.csv").exists());
    let sig = fs::read_to_string(out.join("significance.csv")).unwrap();
    assert!(sig.starts_with("problem,scope,gap,workers,metric,groups,h,p,marker,note"));
}

#[test]
fn report_small_groups_are_ns_with_note() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("runs.csv");
    write_records(fs::File::create(&path).unwrap(), &[rec(16, 1, 0, 1.0), rec(32, 1, 0, 9.0)]).unwrap();
    let out = dir.path().join("report");
    let o = islandperf(&["report", "-r", s(&path), "-o", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let sig = fs::read_to_string(out.join("significance.csv")).unwrap();
    assert!(sig.contains("group size 1 < 2"), "{sig}");
}

#[test]
fn aggregate_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("runs.csv");
    write_records(fs::File::create(&path).unwrap(), &[rec(16, 1, 0, 1.0), rec(16, 1, 1, 3.0)]).unwrap();
    let out = dir.path().join("agg.csv");
    let o = islandperf(&["aggregate", "-r", s(&path), "-o", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(out).unwrap();
    assert_eq!(text.lines().nth(1).unwrap(), "p,16,1,2.0,1.0,1000.0,0.0,1.0");
}

#[test]
fn missing_records_file_exits_2() {
    let o = islandperf(&["aggregate", "-r", "/nonexistent/runs.csv", "-o", "/tmp/x.csv"]);
    assert_eq!(o.status.code(), Some(2));
}
