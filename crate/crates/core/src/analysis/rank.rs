use super::{fit_model, ModelFamily, SampleSeries};
use crate::{Error, Result};

/// Families ordered by ascending MAE; families whose fit failed are listed
/// separately with the reason.
#[derive(Debug, Clone, PartialEq)]
pub struct Ranking {
    pub ranked: Vec<(ModelFamily, f64)>,
    pub excluded: Vec<(ModelFamily, String)>,
}

impl Ranking {
    pub fn order(&self) -> Vec<ModelFamily> {
        self.ranked.iter().map(|r| r.0).collect()
    }

    fn sorted(mut ranked: Vec<(ModelFamily, f64)>, excluded: Vec<(ModelFamily, String)>) -> Self {
        // stable: equal MAEs keep the caller's family order
        ranked.sort_by(|a, b| a.1.total_cmp(&b.1));
        Self { ranked, excluded }
    }
}

pub fn rank_models(series: &SampleSeries, families: &[ModelFamily]) -> Result<Ranking> {
    rank_models_pooled(std::slice::from_ref(series), families)
}

/// Ranks by the mean of per-series MAEs. A family is excluded if its fit
/// fails on any series.
pub fn rank_models_pooled(series: &[SampleSeries], families: &[ModelFamily]) -> Result<Ranking> {
    if series.is_empty() {
        return Err(Error::InvalidSeries("nothing to rank".into()));
    }
    if let Some(s) = series.iter().find(|s| s.len() < 4) {
        return Err(Error::InvalidSeries(format!("ranking needs >= 4 points, got {}", s.len())));
    }
    let mut ranked = Vec::new();
    let mut excluded = Vec::new();
    'family: for &family in families {
        let mut total = 0.0;
        for s in series {
            match fit_model(family, s) {
                Ok(fit) => total += fit.mae,
                Err(e) => {
                    excluded.push((family, e.to_string()));
                    continue 'family;
                }
            }
        }
        ranked.push((family, total / series.len() as f64));
    }
    Ok(Ranking::sorted(ranked, excluded))
}
