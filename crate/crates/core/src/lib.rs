//! Information-theoretic scoring and selection of video summaries.
//!
//! A summary is scored twice with teacher-forced log-probabilities from a
//! vision-language model:
//!
//! * **grounding**: how much the frames help reconstruct the summary from a
//!   keyword-masked copy of itself, `ln P(T | V, T_masked) - ln P(T | T_masked)`;
//! * **utility**: how much the summary helps predict the task answer when
//!   the frames are masked, `ln P(Y | T, V_masked) - ln P(Y | V_masked)`.
//!
//! Both are pointwise mutual information estimates in nats. Candidates are then
//! chosen by a weighted sum of the two ([`selection`]), and the human-study
//! statistics live in [`stats`].
//!
//! Numeric code is generic over [`num::Scalar`]; the aliases at the crate root
//! fix the scalar to `f64` (and `f32` where useful).

// `!(x > 0)` is used on purpose: it rejects NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod domain;
pub mod ingest;
pub mod jsonl;
pub mod masking;
pub mod num;
pub mod provider;
pub mod scoring;
pub mod selection;
pub mod stats;
pub mod svg;

pub use num::Scalar;

pub type ScoreCard = domain::ScoreCard<f64>;
pub type ScoreCardF32 = domain::ScoreCard<f32>;
pub type TokenLogProbs = domain::TokenLogProbs<f64>;
pub type TokenLedger = domain::TokenLedger<f64>;
pub type KeywordSet = masking::KeywordSet<f64>;
pub type TfidfConfig = masking::TfidfConfig<f64>;
pub type JointSpec = provider::mock::JointSpec<f64>;
pub type JointProvider = provider::mock::JointProvider<f64>;
pub type SweepResult = selection::SweepResult<f64>;
pub type ConditionSummary = stats::ConditionSummary<f64>;
pub type WelchTest = stats::WelchTest<f64>;
pub type WelchTestF32 = stats::WelchTest<f32>;
