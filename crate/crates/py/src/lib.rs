//! Python bindings: instance generation, distributed runs and the analysis
//! toolkit, exposed as plain functions over lists, tuples and dicts.

use islandperf::analysis::{self, ModelFamily, SampleSeries, SeriesKind};
use islandperf::ga::Genome;
use islandperf::islands::{run_distributed, IslandConfig, Schedule};
use islandperf::problems::{self, CvrpInstance, PPeaksInstance, Problem};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: islandperf::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn series(xs: Vec<f64>, ys: Vec<f64>, kind: &str) -> PyResult<SampleSeries> {
    let kind: SeriesKind = kind.parse().map_err(err)?;
    SampleSeries::from_xy(&xs, &ys, kind).map_err(err)
}

/// P-PEAKS instance as `(peaks, dump_text)`.
#[pyfunction]
#[pyo3(signature = (peaks, bits, seed))]
fn ppeaks_generate(peaks: usize, bits: usize, seed: u64) -> PyResult<(Vec<Vec<u8>>, String)> {
    let inst = PPeaksInstance::generate(peaks, bits, seed).map_err(err)?;
    Ok((inst.peaks().to_vec(), inst.dump()))
}

/// Minimum Hamming distance of `x` to the instance described by `dump`.
#[pyfunction]
fn ppeaks_fitness(dump: &str, x: Vec<u8>) -> PyResult<f64> {
    PPeaksInstance::parse_dump(dump).map_err(err)?.fitness(&x).map_err(err)
}

/// Total route length of a customer permutation on a TSPLIB-style instance.
#[pyfunction]
fn cvrp_fitness(instance_text: &str, perm: Vec<u32>) -> PyResult<f64> {
    CvrpInstance::parse(instance_text).map_err(err)?.fitness(&perm).map_err(err)
}

/// Greedy capacity split of a permutation into routes.
#[pyfunction]
fn cvrp_decode(instance_text: &str, perm: Vec<u32>) -> PyResult<Vec<Vec<u32>>> {
    CvrpInstance::parse(instance_text).map_err(err)?.decode(&perm).map_err(err)
}

#[pyfunction]
fn termination_target(problem_id: &str) -> PyResult<f64> {
    problems::termination_target(problem_id).map_err(err)
}

/// Runs a P-PEAKS island experiment and returns a summary dict.
#[pyfunction]
#[pyo3(signature = (peaks, bits, instance_seed, seed, workers=1, islands=64, pop_size=16, gap=Some(16), max_evaluations=50_000_000, deterministic=true))]
#[allow(clippy::too_many_arguments)]
fn run_ppeaks<'py>(
    py: Python<'py>,
    peaks: usize,
    bits: usize,
    instance_seed: u64,
    seed: u64,
    workers: usize,
    islands: usize,
    pop_size: usize,
    gap: Option<u64>,
    max_evaluations: u64,
    deterministic: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let inst = PPeaksInstance::generate(peaks, bits, instance_seed).map_err(err)?;
    let cfg = IslandConfig {
        island_count: islands,
        pop_size,
        migration_gap: gap,
        operators: inst.default_operators(),
        termination_target: 0.0,
        max_evaluations,
        count_initial_evaluations: true,
    };
    let schedule = if deterministic { Schedule::Deterministic } else { Schedule::Threaded };
    let out = py
        .detach(|| run_distributed(&cfg, workers, &inst, seed, schedule))
        .map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("evaluations", out.total_evaluations)?;
    d.set_item("best_fitness", out.best.fitness)?;
    d.set_item("hit_target", out.hit_target)?;
    d.set_item("wall_seconds", out.wall_clock.as_secs_f64())?;
    d.set_item("migrants_sent", out.migrants_sent)?;
    if let Genome::Bits(b) = &out.best.genome {
        d.set_item("best_genome", b.clone())?;
    }
    Ok(d)
}

/// `T_1 / T_m` for a wall-clock series.
#[pyfunction]
fn speedup(xs: Vec<f64>, ys: Vec<f64>) -> PyResult<Vec<f64>> {
    Ok(analysis::speedup(&series(xs, ys, "wall-clock")?).map_err(err)?.ys())
}

/// Fits one model family; returns a dict with `a, b, c, sse, mae, limit`.
#[pyfunction]
#[pyo3(signature = (family, xs, ys, kind="wall-clock"))]
fn fit_model<'py>(py: Python<'py>, family: &str, xs: Vec<f64>, ys: Vec<f64>, kind: &str) -> PyResult<Bound<'py, PyDict>> {
    let fam: ModelFamily = family.parse().map_err(err)?;
    let s = series(xs, ys, kind)?;
    let fit = analysis::fit_model(fam, &s).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("family", fam.name())?;
    for (k, v) in ["a", "b", "c"].iter().zip(fit.params) {
        d.set_item(*k, v)?;
    }
    d.set_item("sse", fit.sse)?;
    d.set_item("mae", fit.mae)?;
    d.set_item("limit", fit.limit)?;
    let preds: Vec<f64> = s
        .xs()
        .iter()
        .map(|&x| analysis::eval_model(&fit, x))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    d.set_item("predictions", preds)?;
    Ok(d)
}

/// All six families ranked by ascending MAE as `[(family, mae), …]`.
#[pyfunction]
#[pyo3(signature = (xs, ys, kind="wall-clock"))]
fn rank_models(xs: Vec<f64>, ys: Vec<f64>, kind: &str) -> PyResult<Vec<(String, f64)>> {
    let r = analysis::rank_models(&series(xs, ys, kind)?, &ModelFamily::ALL).map_err(err)?;
    Ok(r.ranked.into_iter().map(|(f, m)| (f.name().to_string(), m)).collect())
}

/// `(H, df, p)` of the Kruskal–Wallis test.
#[pyfunction]
fn kruskal_wallis(groups: Vec<Vec<f64>>) -> PyResult<(f64, usize, f64)> {
    let r = analysis::kruskal_wallis(&groups).map_err(err)?;
    Ok((r.h, r.df, r.p))
}

#[pyfunction]
fn chi_square_sf(x: f64, df: usize) -> f64 {
    analysis::chi_square_sf(x, df)
}

#[pymodule]
fn islandperf_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(ppeaks_generate, m)?)?;
    m.add_function(wrap_pyfunction!(ppeaks_fitness, m)?)?;
    m.add_function(wrap_pyfunction!(cvrp_fitness, m)?)?;
    m.add_function(wrap_pyfunction!(cvrp_decode, m)?)?;
    m.add_function(wrap_pyfunction!(termination_target, m)?)?;
    m.add_function(wrap_pyfunction!(run_ppeaks, m)?)?;
    m.add_function(wrap_pyfunction!(speedup, m)?)?;
    m.add_function(wrap_pyfunction!(fit_model, m)?)?;
    m.add_function(wrap_pyfunction!(rank_models, m)?)?;
    m.add_function(wrap_pyfunction!(kruskal_wallis, m)?)?;
    m.add_function(wrap_pyfunction!(chi_square_sf, m)?)?;
    Ok(())
}
