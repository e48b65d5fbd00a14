use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KwResult {
    pub h: f64,
    pub df: usize,
    pub p: f64,
    /// Whether ties were present and the tie correction applied.
    pub tie_corrected: bool,
}

/// Upper-tail chi-square probability `P(X > x)`.
pub fn chi_square_sf(x: f64, df: usize) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    // df >= 1 so the distribution is always constructible
    ChiSquared::new(df.max(1) as f64)
        .map(|d| d.sf(x))
        .unwrap_or(f64::NAN)
}

/// Kruskal–Wallis H test on average ranks with the tie correction.
pub fn kruskal_wallis(groups: &[Vec<f64>]) -> Result<KwResult> {
    if groups.len() < 2 {
        return Err(Error::Statistics("Kruskal-Wallis needs at least two groups".into()));
    }
    if groups.iter().any(Vec::is_empty) {
        return Err(Error::Statistics("Kruskal-Wallis groups must be non-empty".into()));
    }
    if groups.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::Statistics("non-finite observation".into()));
    }
    let df = groups.len() - 1;
    let mut pooled: Vec<(f64, usize)> = groups
        .iter()
        .enumerate()
        .flat_map(|(g, vs)| vs.iter().map(move |&v| (v, g)))
        .collect();
    pooled.sort_by(|a, b| a.0.total_cmp(&b.0));
    let n = pooled.len() as f64;

    let mut rank_sums = vec![0.0; groups.len()];
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < pooled.len() {
        let mut j = i;
        while j + 1 < pooled.len() && pooled[j + 1].0 == pooled[i].0 {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for item in &pooled[i..=j] {
            rank_sums[item.1] += avg;
        }
        let t = (j - i + 1) as f64;
        tie_term += t * t * t - t;
        i = j + 1;
    }

    let correction = 1.0 - tie_term / (n * n * n - n);
    if correction <= 0.0 {
        // every observation identical
        return Ok(KwResult { h: 0.0, df, p: 1.0, tie_corrected: true });
    }
    let raw: f64 = rank_sums
        .iter()
        .zip(groups)
        .map(|(r, g)| r * r / g.len() as f64)
        .sum::<f64>()
        * 12.0
        / (n * (n + 1.0))
        - 3.0 * (n + 1.0);
    let h = (raw / correction).max(0.0);
    Ok(KwResult {
        h,
        df,
        p: chi_square_sf(h, df).clamp(0.0, 1.0),
        tie_corrected: tie_term > 0.0,
    })
}

/// `**` for p < 0.01, `*` for p < 0.05, otherwise `NS`.
pub fn significance_marker(p: f64) -> &'static str {
    if p < 0.01 {
        "**"
    } else if p < 0.05 {
        "*"
    } else {
        "NS"
    }
}
