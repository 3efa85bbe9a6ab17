//! Marginal feature screening: rank columns by their individual correlation with the label.

use serde::Serialize;

use crate::engine::Engine;
use crate::error::{CgcError, Result};
use crate::sample::{Alpha, LabeledSample};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScreenedFeature {
    pub feature: usize,
    /// `None` when the column is constant.
    pub rho: Option<f64>,
}

impl ScreenedFeature {
    pub fn is_degenerate(&self) -> bool {
        self.rho.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScreeningResult {
    /// Scored columns by decreasing rho (ties by column index), then degenerate columns by index.
    pub ranking: Vec<ScreenedFeature>,
    pub alpha: f64,
}

impl ScreeningResult {
    pub fn top(&self, k: usize) -> &[ScreenedFeature] {
        &self.ranking[..k.min(self.ranking.len())]
    }
}

impl Engine {
    pub fn screen_features(&self, sample: &LabeledSample, alpha: Alpha) -> Result<ScreeningResult> {
        sample.partition().require_min_size(2)?;
        let scores = self.map(sample.d(), |j| match self.cgc(&sample.select_column(j), alpha) {
            Ok(est) => Ok(Some(est.rho)),
            Err(CgcError::DegenerateSample(_)) => Ok(None),
            Err(e) => Err(e),
        });
        let mut ranking = scores
            .into_iter()
            .enumerate()
            .map(|(feature, rho)| rho.map(|rho| ScreenedFeature { feature, rho }))
            .collect::<Result<Vec<_>>>()?;
        ranking.sort_by(|a, b| match (a.rho, b.rho) {
            (Some(x), Some(y)) => y.total_cmp(&x).then(a.feature.cmp(&b.feature)),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => a.feature.cmp(&b.feature),
        });
        Ok(ScreeningResult {
            ranking,
            alpha: alpha.value(),
        })
    }
}

pub fn screen_features(sample: &LabeledSample, alpha: Alpha) -> Result<ScreeningResult> {
    Engine::default().screen_features(sample, alpha)
}
