mod common;

use common::*;
use islandperf::analysis::{
    eval_model, fit_model, kruskal_wallis, model_limit, rank_models, rational3_speedup, speedup, ModelFamily,
    ModelFit, SampleSeries, SeriesKind,
};

/// Five groups of 30 (one decimal, so with ties); reference values from
/// `scipy.stats.kruskal` on exactly these literals.
fn kw_groups() -> Vec<Vec<f64>> {
    vec![
        vec![9.6, 9.0, 10.3, 6.4, 10.6, 9.4, 8.5, 10.2, 6.1, 9.7, 8.5, 10.8, 10.9, 8.1, 8.1, 7.1, 8.4, 10.6, 11.7, 10.5, 10.1, 8.3, 10.4, 8.4, 10.5, 9.6, 11.7, 10.4, 12.7, 9.2],
        vec![12.0, 11.0, 13.9, 6.6, 12.2, 8.5, 8.8, 10.5, 7.5, 8.1, 9.5, 9.9, 6.7, 8.8, 10.2, 10.2, 9.2, 10.5, 9.5, 12.8, 8.9, 10.6, 9.5, 12.2, 8.6, 12.3, 8.1, 7.8, 9.4, 10.7],
        vec![8.0, 10.0, 11.0, 10.9, 12.8, 12.6, 11.7, 12.8, 12.9, 8.8, 15.4, 10.9, 9.8, 12.2, 10.0, 12.3, 8.6, 12.5, 8.5, 11.8, 10.6, 10.0, 11.3, 9.8, 9.5, 11.8, 14.9, 9.0, 13.3, 13.2],
        vec![8.0, 10.6, 11.2, 8.4, 12.4, 12.0, 13.6, 11.0, 12.1, 13.8, 10.6, 9.2, 7.3, 10.8, 7.7, 12.4, 10.5, 11.8, 10.5, 12.7, 9.3, 10.3, 13.0, 7.7, 10.6, 12.2, 8.1, 8.8, 7.7, 12.6],
        vec![11.6, 11.4, 9.2, 9.9, 13.9, 11.6, 11.2, 13.6, 10.2, 15.2, 11.3, 11.0, 11.5, 12.1, 13.4, 10.6, 10.4, 12.1, 12.7, 13.8, 11.0, 13.9, 10.0, 14.8, 9.8, 11.8, 12.4, 14.0, 14.9, 12.1],
    ]
}

#[test]
fn kruskal_wallis_matches_reference_implementation() {
    let groups = kw_groups();
    let r = kruskal_wallis(&groups).unwrap();
    assert!((r.h - 31.455213942189324).abs() < 1e-9, "{}", r.h);
    assert!((r.p - 2.4718430672256062e-06).abs() < 1e-9, "{}", r.p);
    assert_eq!(r.df, 4);
    assert!(r.tie_corrected);

    let r = kruskal_wallis(&groups[..2]).unwrap();
    assert!((r.h - 0.15953930896342788).abs() < 1e-9);
    assert!((r.p - 0.6895810183158033).abs() < 1e-9);
}

#[test]
fn appendix_speedup_from_rounded_medians() {
    let s = speedup(&wct_series(0)).unwrap();
    assert_eq!(s.points()[0].1, 1.0);
    assert!((s.points()[6].1 - 51.75).abs() < 0.005);
}

#[test]
fn linear_mae_on_wallclock_medians() {
    let fit = fit_model(ModelFamily::Linear, &wct_series(0)).unwrap();
    assert!((fit.mae - 1.37).abs() <= 0.05, "{}", fit.mae);
    let r3 = fit_model(ModelFamily::Rational3, &wct_series(0)).unwrap();
    assert!(r3.mae <= 0.02);
}

#[test]
fn speedup_of_fitted_rational3_is_rational3() {
    for i in 0..4 {
        let t = fit_model(ModelFamily::Rational3, &wct_series(i)).unwrap();
        let s = rational3_speedup(&t).unwrap();
        let t1 = eval_model(&t, 1.0).unwrap();
        for k in 0..100 {
            let x = 1.0 + 63.0 * k as f64 / 99.0;
            let direct = t1 / eval_model(&t, x).unwrap();
            let via = eval_model(&s, x).unwrap();
            assert!((direct - via).abs() <= 1e-9 * direct.abs(), "{} x={x}", PROBLEMS[i]);
        }
    }
}

#[test]
fn limit_examples_from_table() {
    let p100 = fit_model(ModelFamily::Rational3, &su_series(0, 3)).unwrap();
    assert!((model_limit(&p100) / 236.69 - 1.0).abs() <= 0.05, "{}", p100.limit);
    let vrp2 = fit_model(ModelFamily::Rational3, &su_series(3, 4)).unwrap();
    assert!((model_limit(&vrp2) / 50.27 - 1.0).abs() <= 0.05, "{}", vrp2.limit);
}

#[test]
fn fitted_sse_not_worse_than_published_parameters() {
    // The printed predictions are rounded, so recover a genuine rational3
    // curve through them first; the data fit must be at least as good.
    for i in 0..4 {
        let s = wct_series(i);
        let fit = fit_model(ModelFamily::Rational3, &s).unwrap();
        let pred = SampleSeries::from_xy(&CORES, &WCT_PRED[i], SeriesKind::WallClock).unwrap();
        let published = fit_model(ModelFamily::Rational3, &pred).unwrap();
        let published_sse = ModelFit::new(ModelFamily::Rational3, published.params).scored(&s).sse;
        assert!(fit.sse <= published_sse + 1e-12, "{}: {} > {published_sse}", PROBLEMS[i], fit.sse);
    }
}

#[test]
fn local_optimality_spot_checks() {
    for i in 0..4 {
        for g in 0..5 {
            let s = su_series(i, g);
            for family in ModelFamily::ALL {
                let fit = fit_model(family, &s).unwrap();
                for scale in [0.999, 1.001] {
                    for k in 0..family.param_count() {
                        let mut p = fit.params;
                        p[k] *= scale;
                        let other = ModelFit::new(family, p).scored(&s);
                        let pole_free = s.xs().iter().all(|&x| eval_model(&other, x).is_ok());
                        let feasible = family != ModelFamily::Exponential || (p[1] >= 0.0 && p[2] >= 0.0);
                        if pole_free && feasible {
                            assert!(fit.sse <= other.sse + 1e-9, "{family} {} gap {}", PROBLEMS[i], GAPS[g]);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn ranking_is_a_permutation_of_requested_families() {
    let requested = [ModelFamily::Exponential, ModelFamily::Linear, ModelFamily::Rational3];
    let r = rank_models(&su_series(2, 2), &requested).unwrap();
    let mut got = r.order();
    got.sort();
    let mut want = requested.to_vec();
    want.sort();
    assert_eq!(got, want);
    assert!(r.excluded.is_empty());
}

#[test]
fn wallclock_rational3_parameters_match_published_regime() {
    // the text reports limit wall-clock times of about 0.03 s, 0.06 s and 0.15 s
    // for P-PEAKS 20-100, VRP1 and VRP2
    for (i, want) in [(0, 0.03), (2, 0.06), (3, 0.15)] {
        let fit = fit_model(ModelFamily::Rational3, &wct_series(i)).unwrap();
        assert!((fit.a() - want).abs() <= 0.03, "{}: a = {}", PROBLEMS[i], fit.a());
        assert!(fit.c().abs() <= 0.15, "{}: c = {}", PROBLEMS[i], fit.c());
    }
}

#[test]
fn synthetic_rational3_on_non_doubling_grid() {
    let xs = [1.0, 3.0, 5.0, 7.0, 9.0, 12.0];
    let truth = [20.0, 5.0, 2.0];
    let ys: Vec<f64> = xs.iter().map(|x| (truth[0] * x + truth[1]) / (x + truth[2])).collect();
    let s = SampleSeries::from_xy(&xs, &ys, SeriesKind::SpeedUp).unwrap();
    let fit = fit_model(ModelFamily::Rational3, &s).unwrap();
    for (g, w) in fit.params.iter().zip(truth) {
        assert!((g - w).abs() < 1e-6, "{:?}", fit.params);
    }
}
