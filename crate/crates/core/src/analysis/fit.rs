//! Least-squares fitting of the model families.
//!
//! Every family is linear in all but at most one parameter. Fits therefore
//! start from a variable-projection profile: the nonlinear parameter is
//! scanned on a log grid (both sides of the pole band for the rational
//! families), the linear ones are solved in closed form at each grid point,
//! and the best grid cell is refined by golden-section search. The result,
//! together with the textbook starting points, is then polished by
//! Levenberg–Marquardt with analytic Jacobians (Nelder–Mead if a step
//! system is singular). The lowest feasible SSE wins.

use super::models::{ModelFamily, ModelFit, POLE_EPS};
use super::SampleSeries;
use crate::{Error, Result};

const MAX_ITER: usize = 500;
const REL_TOL: f64 = 1e-12;
/// Grid over log10 of the scanned parameter offset.
const LOG_GRID: (f64, f64, usize) = (-6.0, 8.0, 701);
const EXP_LOG_GRID: (f64, f64, usize) = (-6.0, 2.0, 401);

struct Data<'a> {
    family: ModelFamily,
    xs: &'a [f64],
    ys: &'a [f64],
    lo: f64,
    hi: f64,
}

impl Data<'_> {
    fn feasible(&self, p: &[f64; 3]) -> bool {
        if !self.family.pole_free(p, self.lo, self.hi) {
            return false;
        }
        match self.family {
            // decay model: b ≥ 0, c ≥ 0
            ModelFamily::Exponential => p[1] >= 0.0 && p[2] >= 0.0,
            _ => true,
        }
    }

    fn sse(&self, p: &[f64; 3]) -> f64 {
        if !self.feasible(p) {
            return f64::INFINITY;
        }
        let s: f64 = self
            .xs
            .iter()
            .zip(self.ys)
            .map(|(&x, &y)| (self.family.value(x, p) - y).powi(2))
            .sum();
        if s.is_finite() {
            s
        } else {
            f64::INFINITY
        }
    }
}

/// Least squares `y ≈ p·f + q·g`; `None` if the 2×2 system is singular.
fn ls2(f: &[f64], g: &[f64], y: &[f64]) -> Option<(f64, f64)> {
    let dot = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
    let (ff, fg, gg) = (dot(f, f), dot(f, g), dot(g, g));
    let (fy, gy) = (dot(f, y), dot(g, y));
    let det = ff * gg - fg * fg;
    if !(det.abs() > 1e-13 * ff * gg) {
        return None;
    }
    Some(((fy * gg - gy * fg) / det, (gy * ff - fy * fg) / det))
}

/// Closed-form optimum of the linear parameters for a fixed nonlinear one.
fn inner(d: &Data, theta: f64) -> Option<[f64; 3]> {
    let xs = d.xs;
    match d.family {
        ModelFamily::Rational2 => {
            let g: Vec<f64> = xs.iter().map(|&x| x / (x + theta)).collect();
            let gg: f64 = g.iter().map(|v| v * v).sum();
            let gy: f64 = g.iter().zip(d.ys).map(|(a, b)| a * b).sum();
            (gg > 0.0).then(|| [gy / gg, theta, 0.0])
        }
        ModelFamily::Rational3 => {
            let f: Vec<f64> = xs.iter().map(|&x| x / (x + theta)).collect();
            let g: Vec<f64> = xs.iter().map(|&x| 1.0 / (x + theta)).collect();
            ls2(&f, &g, d.ys).map(|(a, b)| [a, b, theta])
        }
        ModelFamily::Exponential => {
            let one = vec![1.0; xs.len()];
            let e: Vec<f64> = xs.iter().map(|&x| (-theta * x).exp()).collect();
            let mean = d.ys.iter().sum::<f64>() / d.ys.len() as f64;
            match ls2(&one, &e, d.ys) {
                Some((a, b)) if b >= 0.0 => Some([a, b, theta]),
                _ => Some([mean, 0.0, theta]),
            }
        }
        _ => None,
    }
}

/// Maps a log-offset to the scanned parameter on the given branch.
fn theta_of(d: &Data, branch: i8, u: f64) -> f64 {
    let t = 10f64.powf(u);
    match (d.family, branch) {
        (ModelFamily::Exponential, _) => t,
        (_, 1) => -d.lo + POLE_EPS + t,
        _ => -d.hi - POLE_EPS - t,
    }
}

/// Profile scan plus golden-section refinement; returns the best point found.
fn profile(d: &Data) -> Option<[f64; 3]> {
    let (branches, (u0, u1, n)): (&[i8], _) = match d.family {
        ModelFamily::Exponential => (&[1], EXP_LOG_GRID),
        _ => (&[1, -1], LOG_GRID),
    };
    let eval = |branch: i8, u: f64| -> (f64, Option<[f64; 3]>) {
        match inner(d, theta_of(d, branch, u)) {
            Some(p) => (d.sse(&p), Some(p)),
            None => (f64::INFINITY, None),
        }
    };
    let step = (u1 - u0) / (n - 1) as f64;
    let mut best: (f64, Option<[f64; 3]>) = (f64::INFINITY, None);
    for &branch in branches {
        let values: Vec<f64> = (0..n).map(|i| eval(branch, u0 + step * i as f64).0).collect();
        let Some(i_min) = (0..n)
            .filter(|&i| values[i].is_finite())
            .min_by(|&i, &j| values[i].total_cmp(&values[j]))
        else {
            continue;
        };
        // golden section on the bracketing cells
        let (mut a, mut b) = (
            u0 + step * i_min.saturating_sub(1) as f64,
            u0 + step * (i_min + 1).min(n - 1) as f64,
        );
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        let mut c = b - phi * (b - a);
        let mut e = a + phi * (b - a);
        let (mut fc, mut fe) = (eval(branch, c).0, eval(branch, e).0);
        for _ in 0..200 {
            if (b - a).abs() < 1e-13 {
                break;
            }
            if fc <= fe {
                b = e;
                e = c;
                fe = fc;
                c = b - phi * (b - a);
                fc = eval(branch, c).0;
            } else {
                a = c;
                c = e;
                fc = fe;
                e = a + phi * (b - a);
                fe = eval(branch, e).0;
            }
        }
        for cand in [eval(branch, (a + b) / 2.0), eval(branch, u0 + step * i_min as f64)] {
            if cand.0 < best.0 {
                best = cand;
            }
        }
    }
    best.1
}

/// Solves the `n×n` system in place by Gaussian elimination with partial
/// pivoting; `None` if singular.
fn solve(mut m: [[f64; 3]; 3], mut v: [f64; 3], n: usize) -> Option<[f64; 3]> {
    let scale = (0..n).map(|i| m[i][i].abs()).fold(0.0, f64::max);
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if !(m[piv][col].abs() > 1e-15 * scale) {
            return None;
        }
        m.swap(col, piv);
        v.swap(col, piv);
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            for k in col..n {
                m[row][k] -= f * m[col][k];
            }
            v[row] -= f * v[col];
        }
    }
    let mut out = [0.0; 3];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| m[row][k] * out[k]).sum();
        out[row] = (v[row] - s) / m[row][row];
    }
    Some(out)
}

enum Polish {
    Done([f64; 3], f64),
    Singular,
}

fn levenberg_marquardt(d: &Data, start: [f64; 3]) -> Polish {
    let n = d.family.param_count();
    let mut p = start;
    let mut cur = d.sse(&p);
    if !cur.is_finite() {
        return Polish::Singular;
    }
    let mut lambda = 1e-3;
    for _ in 0..MAX_ITER {
        let mut jtj = [[0.0; 3]; 3];
        let mut jtr = [0.0; 3];
        for (&x, &y) in d.xs.iter().zip(d.ys) {
            let (v, g) = d.family.value_grad(x, &p);
            let r = v - y;
            for i in 0..n {
                jtr[i] += g[i] * r;
                for j in 0..n {
                    jtj[i][j] += g[i] * g[j];
                }
            }
        }
        let mut improved = false;
        while lambda < 1e20 {
            let mut a = jtj;
            for (i, row) in a.iter_mut().enumerate().take(n) {
                row[i] += lambda * jtj[i][i].max(1e-300);
            }
            let rhs = [-jtr[0], -jtr[1], -jtr[2]];
            let Some(delta) = solve(a, rhs, n) else {
                return Polish::Singular;
            };
            let mut trial = p;
            for i in 0..n {
                trial[i] += delta[i];
            }
            let s = d.sse(&trial);
            if s < cur {
                let rel = (cur - s) / cur.max(f64::MIN_POSITIVE);
                p = trial;
                cur = s;
                lambda = (lambda / 10.0).max(1e-12);
                improved = true;
                if rel < REL_TOL {
                    return Polish::Done(p, cur);
                }
                break;
            }
            lambda *= 10.0;
        }
        if !improved {
            break;
        }
    }
    Polish::Done(p, cur)
}

fn nelder_mead(d: &Data, start: [f64; 3]) -> ([f64; 3], f64) {
    let n = d.family.param_count();
    let f = |p: &[f64; 3]| d.sse(p);
    let mut simplex: Vec<([f64; 3], f64)> = vec![(start, f(&start))];
    for i in 0..n {
        let mut p = start;
        p[i] += if p[i].abs() > 1e-8 { 0.05 * p[i] } else { 1e-3 };
        simplex.push((p, f(&p)));
    }
    for _ in 0..MAX_ITER * 10 {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (best, worst) = (simplex[0].1, simplex[n].1);
        if worst.is_finite() && (worst - best).abs() <= REL_TOL * best.abs().max(1e-300) {
            break;
        }
        let mut centroid = [0.0; 3];
        for (p, _) in &simplex[..n] {
            for i in 0..n {
                centroid[i] += p[i] / n as f64;
            }
        }
        let along = |t: f64| {
            let mut q = centroid;
            for i in 0..n {
                q[i] = centroid[i] + t * (simplex[n].0[i] - centroid[i]);
            }
            q
        };
        let r = along(-1.0);
        let fr = f(&r);
        if fr < simplex[0].1 {
            let e = along(-2.0);
            let fe = f(&e);
            simplex[n] = if fe < fr { (e, fe) } else { (r, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (r, fr);
        } else {
            let k = along(0.5);
            let fk = f(&k);
            if fk < simplex[n].1 {
                simplex[n] = (k, fk);
            } else {
                let b = simplex[0].0;
                for (p, fp) in simplex.iter_mut().skip(1) {
                    for i in 0..n {
                        p[i] = b[i] + 0.5 * (p[i] - b[i]);
                    }
                    *fp = f(p);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex[0]
}

fn textbook_start(d: &Data) -> Option<[f64; 3]> {
    let (y1, yn) = (d.ys[0], *d.ys.last()?);
    match d.family {
        ModelFamily::Rational2 => {
            let ymax = d.ys.iter().copied().fold(f64::MIN, f64::max);
            let half = d
                .xs
                .iter()
                .zip(d.ys)
                .min_by(|a, b| (a.1 - ymax / 2.0).abs().total_cmp(&(b.1 - ymax / 2.0).abs()))
                .map(|p| *p.0)?;
            Some([1.2 * ymax, half, 0.0])
        }
        ModelFamily::Rational3 => {
            let c = 0.1;
            Some([yn, y1 * (1.0 + c) - yn, c])
        }
        ModelFamily::Exponential => Some([yn, y1 - yn, 0.5]),
        _ => None,
    }
}

/// Least-squares fit of `family` to `series` subject to the no-pole
/// constraint on `[min x, max x]` (and `b, c ≥ 0` for the exponential decay).
pub fn fit_model(family: ModelFamily, series: &SampleSeries) -> Result<ModelFit> {
    let k = family.param_count();
    if series.len() < k + 1 {
        return Err(Error::InvalidSeries(format!(
            "{family} needs at least {} points, got {}",
            k + 1,
            series.len()
        )));
    }
    let xs = series.xs();
    let ys = series.ys();
    let d = Data {
        family,
        xs: &xs,
        ys: &ys,
        lo: xs[0],
        hi: *xs.last().expect("non-empty"),
    };

    let closed = |f: Vec<f64>, g: Vec<f64>| {
        ls2(&f, &g, &ys).ok_or_else(|| Error::InvalidSeries(format!("{family}: singular normal equations")))
    };
    let params = match family {
        ModelFamily::Linear => {
            let (a, b) = closed(xs.clone(), vec![1.0; xs.len()])?;
            [a, b, 0.0]
        }
        ModelFamily::Rational1 => {
            let (a, b) = closed(vec![1.0; xs.len()], xs.iter().map(|x| 1.0 / x).collect())?;
            [a, b, 0.0]
        }
        ModelFamily::Logarithmic => {
            let (a, b) = closed(vec![1.0; xs.len()], xs.iter().map(|x| x.ln()).collect())?;
            [a, b, 0.0]
        }
        ModelFamily::Rational2 | ModelFamily::Rational3 | ModelFamily::Exponential => {
            let mut best: Option<([f64; 3], f64)> = None;
            let mut consider = |p: [f64; 3], s: f64| {
                if s.is_finite() && best.is_none_or(|(_, b)| s < b) {
                    best = Some((p, s));
                }
            };
            let starts: Vec<[f64; 3]> = profile(&d).into_iter().chain(textbook_start(&d)).collect();
            for start in starts {
                consider(start, d.sse(&start));
                match levenberg_marquardt(&d, start) {
                    Polish::Done(p, s) => consider(p, s),
                    Polish::Singular if d.sse(&start).is_finite() => {
                        let (p, s) = nelder_mead(&d, start);
                        consider(p, s);
                    }
                    Polish::Singular => {}
                }
            }
            match best {
                Some((mut p, _)) => {
                    if family == ModelFamily::Exponential && p[1] == 0.0 {
                        // flat model; c is unidentifiable, report the start value
                        p[2] = 0.5;
                    }
                    p
                }
                None => {
                    let fallback = textbook_start(&d).unwrap_or([0.0; 3]);
                    return Err(Error::NonConvergence {
                        family: family.name(),
                        best: Box::new(ModelFit::new(family, fallback).scored(series)),
                    });
                }
            }
        }
    };
    Ok(ModelFit::new(family, params).scored(series))
}
