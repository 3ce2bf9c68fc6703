//! Human-study analytics: per-participant accuracy, response time and inverse
//! efficiency, Welch t-tests with Cohen's d, Spearman correlations, and the
//! condition summary table.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::domain::{Condition, ResponseRecord};
use crate::num::{self, Scalar};
use crate::svg::{Marker, Scatter, ScatterPoint};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StatsError {
    #[error("no records")]
    Empty,
    #[error("participant {0} appears under more than one condition")]
    MixedConditions(String),
    #[error("each group needs at least 2 values")]
    TooFewValues,
    #[error("both groups have zero variance")]
    DegenerateVariance,
    #[error("inputs differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("undefined correlation")]
    UndefinedCorrelation,
    #[error("non-finite input")]
    NonFinite,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct ParticipantMetrics<F> {
    pub participant_id: String,
    pub condition: Condition,
    pub n: usize,
    /// Fraction correct in `[0, 1]`.
    pub accuracy: F,
    /// Summed response time, seconds.
    pub total_rt: F,
    /// `total_rt / accuracy`; `None` when accuracy is zero.
    pub ies: Option<F>,
}

/// Metrics over one participant's records.
pub fn participant_metrics<F: Scalar>(records: &[ResponseRecord]) -> Result<ParticipantMetrics<F>, StatsError> {
    let first = records.first().ok_or(StatsError::Empty)?;
    if records.iter().any(|r| r.participant_id != first.participant_id || r.condition != first.condition) {
        return Err(StatsError::MixedConditions(first.participant_id.clone()));
    }
    let correct = records.iter().filter(|r| r.correct).count();
    let accuracy = F::from_usize_lossy(correct) / F::from_usize_lossy(records.len());
    let rts: Vec<F> = records.iter().map(|r| F::lit(r.response_time_s)).collect();
    let total_rt = num::sum(&rts);
    let ies = (accuracy > F::zero()).then(|| total_rt / accuracy);
    Ok(ParticipantMetrics {
        participant_id: first.participant_id.clone(),
        condition: first.condition,
        n: records.len(),
        accuracy,
        total_rt,
        ies,
    })
}

/// Groups records by participant, in participant-id order.
pub fn all_participant_metrics<F: Scalar>(
    records: &[ResponseRecord],
) -> Result<Vec<ParticipantMetrics<F>>, StatsError> {
    let mut by: BTreeMap<&str, Vec<ResponseRecord>> = BTreeMap::new();
    for r in records {
        by.entry(r.participant_id.as_str()).or_default().push(r.clone());
    }
    by.values().map(|rs| participant_metrics(rs)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct WelchTest<F> {
    pub t: F,
    pub df: F,
    /// `P(T >= t)`: evidence that group a exceeds group b.
    pub p_one_tailed: F,
    pub cohens_d: F,
}

fn student_sf(t: f64, df: f64) -> f64 {
    if t.is_infinite() {
        return if t > 0.0 { 0.0 } else { 1.0 };
    }
    StudentsT::new(0.0, 1.0, df).expect("positive degrees of freedom").sf(t)
}

/// Unequal-variance two-sample t-test, Welch-Satterthwaite degrees of freedom.
pub fn welch_t_test<F: Scalar>(a: &[F], b: &[F]) -> Result<WelchTest<F>, StatsError> {
    if a.len() < 2 || b.len() < 2 {
        return Err(StatsError::TooFewValues);
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(StatsError::NonFinite);
    }
    let (na, nb) = (F::from_usize_lossy(a.len()), F::from_usize_lossy(b.len()));
    let (ma, mb) = (num::mean(a), num::mean(b));
    let (va, vb) = (num::sample_variance(a), num::sample_variance(b));
    if va == F::zero() && vb == F::zero() {
        return Err(StatsError::DegenerateVariance);
    }
    let (sa, sb) = (va / na, vb / nb);
    let se2 = sa + sb;
    let t = (ma - mb) / se2.sqrt();
    let df = se2 * se2 / (sa * sa / (na - F::one()) + sb * sb / (nb - F::one()));
    let pooled = (((na - F::one()) * va + (nb - F::one()) * vb) / (na + nb - F::lit(2.0))).sqrt();
    let p = student_sf(t.to_f64_lossy(), df.to_f64_lossy());
    Ok(WelchTest { t, df, p_one_tailed: F::lit(p), cohens_d: (ma - mb) / pooled })
}

/// 1-based ranks, ties get the mean of the ranks they span.
pub fn average_ranks<F: Scalar>(values: &[F]) -> Vec<F> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).expect("finite values"));
    let mut ranks = vec![F::zero(); values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        // ranks i+1 ..= j+1 averaged
        let r = F::from_usize_lossy(i + j + 2) / F::lit(2.0);
        for &k in &idx[i..=j] {
            ranks[k] = r;
        }
        i = j + 1;
    }
    ranks
}

fn pearson<F: Scalar>(x: &[F], y: &[F]) -> F {
    let (mx, my) = (num::mean(x), num::mean(y));
    let dx: Vec<F> = x.iter().map(|v| *v - mx).collect();
    let dy: Vec<F> = y.iter().map(|v| *v - my).collect();
    let sxy: Vec<F> = dx.iter().zip(&dy).map(|(a, b)| *a * *b).collect();
    let sxx: Vec<F> = dx.iter().map(|a| *a * *a).collect();
    let syy: Vec<F> = dy.iter().map(|b| *b * *b).collect();
    let r = num::sum(&sxy) / (num::sum(&sxx) * num::sum(&syy)).sqrt();
    r.max(-F::one()).min(F::one())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct Correlation<F> {
    pub r: F,
    /// Two-tailed, from the t approximation with n - 2 degrees of freedom.
    pub p: F,
    pub n: usize,
}

pub fn spearman<F: Scalar>(x: &[F], y: &[F]) -> Result<Correlation<F>, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 3 {
        return Err(StatsError::TooFewValues);
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(StatsError::NonFinite);
    }
    let constant = |v: &[F]| v.iter().all(|a| *a == v[0]);
    if constant(x) || constant(y) {
        return Err(StatsError::UndefinedCorrelation);
    }
    let r = pearson(&average_ranks(x), &average_ranks(y));
    let n = x.len();
    let rf = r.to_f64_lossy();
    let p = if rf.abs() >= 1.0 {
        0.0
    } else {
        let dof = (n - 2) as f64;
        let t = rf * (dof / (1.0 - rf * rf)).sqrt();
        (2.0 * student_sf(t.abs(), dof)).min(1.0)
    };
    Ok(Correlation { r, p: F::lit(p), n })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct ConditionSummary<F> {
    pub condition: Condition,
    pub n: usize,
    /// Percent.
    pub acc_mean: F,
    pub acc_sd: F,
    /// Seconds, per-participant totals.
    pub rt_mean: F,
    pub rt_sd: F,
    pub ies_mean: F,
    pub ies_sd: F,
    /// Participants left out of the IES columns for zero accuracy.
    pub ies_excluded: usize,
}

/// Per-condition means and sample SDs over per-participant metrics, in
/// condition order. Only conditions present in `records` appear.
pub fn condition_table<F: Scalar>(records: &[ResponseRecord]) -> Result<Vec<ConditionSummary<F>>, StatsError> {
    if records.is_empty() {
        return Err(StatsError::Empty);
    }
    let metrics = all_participant_metrics::<F>(records)?;
    Ok(Condition::ALL
        .iter()
        .filter_map(|&c| {
            let group: Vec<&ParticipantMetrics<F>> = metrics.iter().filter(|m| m.condition == c).collect();
            if group.is_empty() {
                return None;
            }
            let acc: Vec<F> = group.iter().map(|m| m.accuracy * F::lit(100.0)).collect();
            let rt: Vec<F> = group.iter().map(|m| m.total_rt).collect();
            let ies: Vec<F> = group.iter().filter_map(|m| m.ies).collect();
            let excluded = group.len() - ies.len();
            if excluded > 0 {
                log::info!("{c}: {excluded} participant(s) with zero accuracy left out of IES");
            }
            let (ies_mean, ies_sd) =
                if ies.is_empty() { (F::nan(), F::nan()) } else { (num::mean(&ies), num::sample_sd(&ies)) };
            Some(ConditionSummary {
                condition: c,
                n: group.len(),
                acc_mean: num::mean(&acc),
                acc_sd: num::sample_sd(&acc),
                rt_mean: num::mean(&rt),
                rt_sd: num::sample_sd(&rt),
                ies_mean,
                ies_sd,
                ies_excluded: excluded,
            })
        })
        .collect())
}

fn pm<F: Scalar>(mean: F, sd: F) -> String {
    format!("{:.2} ± {:.2}", mean.to_f64_lossy(), sd.to_f64_lossy())
}

/// Wide layout: one row per metric, one column per condition, `mean ± sd` cells.
pub fn write_table_csv<F: Scalar, W: Write>(w: W, rows: &[ConditionSummary<F>]) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec!["metric".to_string()];
    header.extend(rows.iter().map(|r| r.condition.to_string()));
    out.write_record(&header)?;
    let mut n = vec!["n".to_string()];
    n.extend(rows.iter().map(|r| r.n.to_string()));
    out.write_record(&n)?;
    for (name, f) in [
        ("Acc (%)", (|r: &ConditionSummary<F>| pm(r.acc_mean, r.acc_sd)) as fn(&ConditionSummary<F>) -> String),
        ("RT (s)", |r| pm(r.rt_mean, r.rt_sd)),
        ("IES", |r| pm(r.ies_mean, r.ies_sd)),
    ] {
        let mut rec = vec![name.to_string()];
        rec.extend(rows.iter().map(f));
        out.write_record(&rec)?;
    }
    out.flush()?;
    Ok(())
}

/// Long layout with full precision, one row per condition.
pub fn write_summary_csv<F: Scalar, W: Write>(w: W, rows: &[ConditionSummary<F>]) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "condition",
        "n",
        "acc_mean",
        "acc_sd",
        "rt_mean",
        "rt_sd",
        "ies_mean",
        "ies_sd",
        "ies_excluded",
    ])?;
    for r in rows {
        out.write_record([
            r.condition.to_string(),
            r.n.to_string(),
            r.acc_mean.to_string(),
            r.acc_sd.to_string(),
            r.rt_mean.to_string(),
            r.rt_sd.to_string(),
            r.ies_mean.to_string(),
            r.ies_sd.to_string(),
            r.ies_excluded.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Summary-level facts about one stimulus shown in a summary condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StimulusInfo {
    pub stimulus_id: String,
    pub grounding: f64,
    pub utility: f64,
    pub word_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct StimulusRow<F> {
    pub stimulus_id: String,
    pub grounding: F,
    pub utility: F,
    pub word_count: F,
    /// Fraction of participants answering correctly.
    pub accuracy: F,
    /// Mean response time per summary word, seconds.
    pub rt_per_word: F,
}

/// Joins stimulus facts with the responses that saw them. Stimuli without responses are skipped.
pub fn stimulus_rows<F: Scalar>(info: &[StimulusInfo], records: &[ResponseRecord]) -> Vec<StimulusRow<F>> {
    info.iter()
        .filter_map(|s| {
            let rs: Vec<&ResponseRecord> = records.iter().filter(|r| r.stimulus_id == s.stimulus_id).collect();
            if rs.is_empty() || s.word_count == 0 {
                return None;
            }
            let n = F::from_usize_lossy(rs.len());
            let correct = F::from_usize_lossy(rs.iter().filter(|r| r.correct).count());
            let rt: Vec<F> = rs.iter().map(|r| F::lit(r.response_time_s)).collect();
            let words = F::from_usize_lossy(s.word_count);
            Some(StimulusRow {
                stimulus_id: s.stimulus_id.clone(),
                grounding: F::lit(s.grounding),
                utility: F::lit(s.utility),
                word_count: words,
                accuracy: correct / n,
                rt_per_word: num::mean(&rt) / words,
            })
        })
        .collect()
}

pub const CORRELATION_PAIRS: [(&str, &str); 4] =
    [("utility", "accuracy"), ("grounding", "accuracy"), ("word_count", "rt_per_word"), ("word_count", "accuracy")];

fn column<F: Scalar>(rows: &[StimulusRow<F>], name: &str) -> Vec<F> {
    rows.iter()
        .map(|r| match name {
            "grounding" => r.grounding,
            "utility" => r.utility,
            "word_count" => r.word_count,
            "accuracy" => r.accuracy,
            "rt_per_word" => r.rt_per_word,
            _ => unreachable!("unknown column {name}"),
        })
        .collect()
}

/// `(x, y, correlation)`; undefined pairs carry the error.
pub type CorrelationEntry<F> = (String, String, Result<Correlation<F>, StatsError>);

/// Spearman correlation for each of [`CORRELATION_PAIRS`]; undefined pairs carry the error text.
pub fn correlation_table<F: Scalar>(rows: &[StimulusRow<F>]) -> Vec<CorrelationEntry<F>> {
    CORRELATION_PAIRS
        .iter()
        .map(|&(x, y)| (x.to_string(), y.to_string(), spearman(&column(rows, x), &column(rows, y))))
        .collect()
}

pub fn write_correlation_csv<F: Scalar, W: Write>(w: W, table: &[CorrelationEntry<F>]) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["x", "y", "n", "r_s", "p", "note"])?;
    for (x, y, c) in table {
        match c {
            Ok(c) => out.write_record([x, y, &c.n.to_string(), &c.r.to_string(), &c.p.to_string(), ""])?,
            Err(e) => out.write_record([x.as_str(), y.as_str(), "", "", "", &e.to_string()])?,
        }
    }
    out.flush()?;
    Ok(())
}

fn condition_marker(c: Condition) -> Marker {
    match c {
        Condition::VideoOnly => Marker::Square,
        Condition::Naive => Marker::Hollow,
        Condition::Cot => Marker::Diamond,
        Condition::MaxU | Condition::MaxG => Marker::Filled,
    }
}

/// Accuracy against inverse total response time, one point per participant.
pub fn participant_scatter_svg<F: Scalar>(title: &str, metrics: &[ParticipantMetrics<F>]) -> String {
    let mut plot = Scatter::new(title, "1 / response time (1/s)", "accuracy");
    for m in metrics {
        plot.points.push(ScatterPoint {
            x: 1.0 / m.total_rt.to_f64_lossy(),
            y: m.accuracy.to_f64_lossy(),
            marker: condition_marker(m.condition),
            label: None,
        });
    }
    plot.render()
}

/// Any two stimulus columns against each other.
pub fn stimulus_scatter_svg<F: Scalar>(title: &str, rows: &[StimulusRow<F>], x: &str, y: &str) -> String {
    let mut plot = Scatter::new(title, x, y);
    for (a, b) in column(rows, x).into_iter().zip(column(rows, y)) {
        plot.points.push(ScatterPoint {
            x: a.to_f64_lossy(),
            y: b.to_f64_lossy(),
            marker: Marker::Filled,
            label: None,
        });
    }
    plot.render()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(p: &str, c: Condition, s: usize, correct: bool, rt: f64) -> ResponseRecord {
        ResponseRecord {
            participant_id: p.into(),
            condition: c,
            stimulus_id: format!("s{s}"),
            correct,
            response_time_s: rt,
        }
    }

    #[test]
    fn metrics_examples() {
        let rs: Vec<_> = (0..10).map(|i| rec("p", Condition::Naive, i, i < 5, 10.0)).collect();
        let m = participant_metrics::<f64>(&rs).unwrap();
        assert_eq!((m.accuracy, m.total_rt, m.ies), (0.5, 100.0, Some(200.0)));
        let all: Vec<_> = (0..2).map(|i| rec("q", Condition::Naive, i, true, 5.0)).collect();
        assert_eq!(participant_metrics::<f64>(&all).unwrap().ies, Some(10.0));
        let none: Vec<_> = (0..2).map(|i| rec("z", Condition::Naive, i, false, 5.0)).collect();
        assert_eq!(participant_metrics::<f64>(&none).unwrap().ies, None);
    }

    #[test]
    fn welch_symmetry() {
        let a = [1.0f64, 2.0, 3.0, 4.0];
        let w = welch_t_test(&a, &a).unwrap();
        assert_eq!((w.t, w.cohens_d), (0.0, 0.0));
        assert!((w.p_one_tailed - 0.5).abs() < 1e-12);
        let b = [3.0, 4.0, 5.0, 6.5];
        let (ab, ba) = (welch_t_test(&a, &b).unwrap(), welch_t_test(&b, &a).unwrap());
        assert_eq!(ab.t, -ba.t);
        assert_eq!(ab.cohens_d, -ba.cohens_d);
        assert!((ab.p_one_tailed + ba.p_one_tailed - 1.0).abs() < 1e-12);
        assert_eq!(welch_t_test(&[1.0, 1.0], &[2.0, 2.0]).unwrap_err(), StatsError::DegenerateVariance);
    }

    #[test]
    fn reported_one_tailed_p() {
        // t(33) = 1.750 reads as p = 0.045 one-tailed
        let p = student_sf(1.750, 33.0);
        assert!((p - 0.045).abs() < 0.0005, "{p}");
    }

    #[test]
    fn spearman_monotone_and_constant() {
        let x = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(spearman(&x, &[2.0, 4.0, 8.0, 16.0, 32.0]).unwrap().r, 1.0);
        assert_eq!(spearman(&x, &[5.0, 4.0, 3.0, 2.0, 1.0]).unwrap().r, -1.0);
        assert_eq!(spearman(&x, &[1.0; 5]).unwrap_err().to_string(), "undefined correlation");
    }

    #[test]
    fn ranks_average_ties() {
        assert_eq!(average_ranks(&[10.0, 20.0, 10.0, 30.0]), [1.5, 3.0, 1.5, 4.0]);
    }

    #[test]
    fn table_single_participant_per_condition() {
        let rs = vec![
            rec("a", Condition::Naive, 0, true, 3.0),
            rec("a", Condition::Naive, 1, false, 5.0),
            rec("b", Condition::MaxU, 0, true, 2.0),
        ];
        let t = condition_table::<f64>(&rs).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!((t[0].condition, t[0].acc_mean, t[0].acc_sd, t[0].rt_mean), (Condition::Naive, 50.0, 0.0, 8.0));
        assert_eq!(t[0].ies_mean, 16.0);
        let mut buf = Vec::new();
        write_table_csv(&mut buf, &t).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("metric,naive,max_u\nn,1,1\nAcc (%),50.00 ± 0.00,100.00 ± 0.00\n"), "{s}");
    }

    #[test]
    fn unknown_condition_tag() {
        let line =
            r#"{"participant_id":"a","condition":"bogus","stimulus_id":"s","correct":true,"response_time_s":1.0}"#;
        let err = serde_json::from_str::<ResponseRecord>(line).unwrap_err();
        assert!(err.to_string().contains("unknown condition tag"));
    }
}
