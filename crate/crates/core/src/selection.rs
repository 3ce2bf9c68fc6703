//! Best-of-k selection by weighted sum, the alpha sweep, and the Pareto front.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::domain::ScoreCard;
use crate::num::Scalar;
use crate::svg::{Marker, Scatter, ScatterPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieBreak {
    #[default]
    LowestCandidateId,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct SelectionConfig<F> {
    pub alpha: F,
    pub beta: F,
    #[serde(default)]
    pub tie_break: TieBreak,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SelectionError {
    #[error("no valid candidates")]
    NoValidCandidates,
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("alphas must be strictly increasing and lie in [0, 1]")]
    BadAlphas,
}

impl<F: Scalar> SelectionConfig<F> {
    pub fn new(alpha: F, beta: F) -> Result<Self, SelectionError> {
        let c = Self { alpha, beta, tie_break: TieBreak::LowestCandidateId };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), SelectionError> {
        let ok = |w: F| w.is_finite() && w >= F::zero();
        if !ok(self.alpha) || !ok(self.beta) {
            return Err(SelectionError::InvalidWeights(format!("alpha={} beta={}", self.alpha, self.beta)));
        }
        if self.alpha == F::zero() && self.beta == F::zero() {
            return Err(SelectionError::InvalidWeights("alpha and beta are both zero".into()));
        }
        Ok(())
    }

    pub fn objective(&self, card: &ScoreCard<F>) -> F {
        self.alpha * card.grounding + self.beta * card.utility
    }
}

/// Ordering of two valid cards under `cfg`, greater is better. Exact ties in
/// the weighted sum fall back to (grounding, utility) so that a zero weight
/// never picks a dominated card, and then to the lowest candidate id.
fn preference<F: Scalar>(cfg: &SelectionConfig<F>, a: &ScoreCard<F>, b: &ScoreCard<F>) -> Ordering {
    cfg.objective(a)
        .partial_cmp(&cfg.objective(b))
        .unwrap_or(Ordering::Equal)
        .then_with(|| a.grounding.partial_cmp(&b.grounding).unwrap_or(Ordering::Equal))
        .then_with(|| a.utility.partial_cmp(&b.utility).unwrap_or(Ordering::Equal))
        .then_with(|| b.candidate_id.cmp(&a.candidate_id))
}

fn usable<F: Scalar>(card: &ScoreCard<F>) -> bool {
    card.is_valid() && card.grounding.is_finite() && card.utility.is_finite()
}

pub fn select_best<'a, F: Scalar>(
    cards: &'a [ScoreCard<F>],
    cfg: &SelectionConfig<F>,
) -> Result<&'a ScoreCard<F>, SelectionError> {
    cfg.validate()?;
    cards.iter().filter(|c| usable(c)).max_by(|a, b| preference(cfg, a, b)).ok_or(SelectionError::NoValidCandidates)
}

/// `{0, 0.05, ..., 1}`.
pub fn default_alphas<F: Scalar>() -> Vec<F> {
    (0..=20).map(|i| F::from_usize_lossy(i) / F::lit(20.0)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct SweepPoint<F> {
    pub alpha: F,
    pub beta: F,
    pub candidate_id: String,
    pub grounding: F,
    pub utility: F,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct SweepResult<F> {
    pub points: Vec<SweepPoint<F>>,
    /// Pareto-optimal candidate ids, grounding ascending.
    pub frontier: Vec<String>,
}

/// One selection per alpha with `beta = 1 - alpha`.
pub fn sweep<F: Scalar>(cards: &[ScoreCard<F>], alphas: &[F]) -> Result<SweepResult<F>, SelectionError> {
    let in_range = alphas.iter().all(|a| *a >= F::zero() && *a <= F::one());
    let increasing = alphas.windows(2).all(|w| w[0] < w[1]);
    if alphas.is_empty() || !in_range || !increasing {
        return Err(SelectionError::BadAlphas);
    }
    let points = alphas
        .iter()
        .map(|&alpha| {
            let cfg = SelectionConfig::new(alpha, F::one() - alpha)?;
            let best = select_best(cards, &cfg)?;
            Ok(SweepPoint {
                alpha,
                beta: cfg.beta,
                candidate_id: best.candidate_id.clone(),
                grounding: best.grounding,
                utility: best.utility,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SweepResult { points, frontier: pareto_front(cards)? })
}

fn front_indices<F: Scalar>(cards: &[ScoreCard<F>]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..cards.len()).filter(|&i| usable(&cards[i])).collect();
    // grounding descending, utility descending
    idx.sort_by(|&a, &b| {
        let (a, b) = (&cards[a], &cards[b]);
        b.grounding
            .partial_cmp(&a.grounding)
            .unwrap()
            .then(b.utility.partial_cmp(&a.utility).unwrap())
            .then(a.candidate_id.cmp(&b.candidate_id))
    });
    let mut front = Vec::new();
    let mut best_u = F::neg_infinity();
    let mut i = 0;
    while i < idx.len() {
        // group of equal grounding; its leader has the group's max utility
        let g = cards[idx[i]].grounding;
        let top_u = cards[idx[i]].utility;
        let mut j = i;
        while j < idx.len() && cards[idx[j]].grounding == g {
            if cards[idx[j]].utility == top_u && top_u > best_u {
                front.push(idx[j]);
            }
            j += 1;
        }
        best_u = best_u.max(top_u);
        i = j;
    }
    front.sort_by(|&a, &b| {
        cards[a]
            .grounding
            .partial_cmp(&cards[b].grounding)
            .unwrap()
            .then(cards[a].candidate_id.cmp(&cards[b].candidate_id))
    });
    front
}

/// Candidate ids of the valid cards no other valid card dominates, grounding ascending.
pub fn pareto_front<F: Scalar>(cards: &[ScoreCard<F>]) -> Result<Vec<String>, SelectionError> {
    let front = front_indices(cards);
    if front.is_empty() {
        return Err(SelectionError::NoValidCandidates);
    }
    Ok(front.into_iter().map(|i| cards[i].candidate_id.clone()).collect())
}

/// `alpha,beta,candidate_id,grounding,utility` with an optional leading `video_id` column.
pub fn write_sweep_csv<F: Scalar, W: Write>(w: W, rows: &[(String, SweepResult<F>)]) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["video_id", "alpha", "beta", "candidate_id", "grounding", "utility", "on_frontier"])?;
    for (video, result) in rows {
        for p in &result.points {
            let on = result.frontier.contains(&p.candidate_id);
            out.write_record([
                video.clone(),
                format!("{:.2}", p.alpha.to_f64_lossy()),
                format!("{:.2}", p.beta.to_f64_lossy()),
                p.candidate_id.clone(),
                p.grounding.to_string(),
                p.utility.to_string(),
                on.to_string(),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Grounding-vs-utility scatter of one video's cards with the frontier drawn
/// as a polyline. `tags` maps candidate ids to a display tag; `naive` and
/// `cot` get distinct markers.
pub fn sweep_svg<F: Scalar>(title: &str, cards: &[ScoreCard<F>], tags: &BTreeMap<String, String>) -> String {
    let front = front_indices(cards);
    let mut plot = Scatter::new(title, "grounding (nats)", "utility (nats)");
    for (i, c) in cards.iter().enumerate().filter(|(_, c)| usable(c)) {
        let tag = tags.get(&c.candidate_id).map(String::as_str);
        let marker = match tag {
            Some("naive") => Marker::Square,
            Some("cot") => Marker::Diamond,
            _ if front.contains(&i) => Marker::Filled,
            _ => Marker::Hollow,
        };
        plot.points.push(ScatterPoint {
            x: c.grounding.to_f64_lossy(),
            y: c.utility.to_f64_lossy(),
            marker,
            label: tag.map(str::to_owned),
        });
    }
    plot.polyline =
        front.iter().map(|&i| (cards[i].grounding.to_f64_lossy(), cards[i].utility.to_f64_lossy())).collect();
    plot.render()
}
