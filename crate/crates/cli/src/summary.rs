//! Per-experiment campaign summaries.

use gurlab_core::report::ExperimentRecord;
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct SummaryRow {
    pub experiment_id: String,
    pub count: usize,
    pub passed: usize,
    pub pass_rate: f64,
    pub min_slack: f64,
    /// Seed and dim of the minimum-slack record, for failure reproduction.
    pub min_slack_seed: u64,
    pub min_slack_dim: usize,
}

pub fn summarize(records: &[ExperimentRecord]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<&str, Vec<&ExperimentRecord>> = BTreeMap::new();
    for r in records {
        groups.entry(&r.experiment_id).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|(id, rows)| {
            let count = rows.len();
            let passed = rows.iter().filter(|r| r.passed).count();
            let worst = rows
                .iter()
                .filter(|r| r.slack.is_finite())
                .min_by(|a, b| a.slack.partial_cmp(&b.slack).unwrap());
            let (min_slack, min_seed, min_dim) = match worst {
                Some(r) => (r.slack, r.seed, r.dim),
                None => (f64::NAN, 0, 0),
            };
            SummaryRow {
                experiment_id: id.to_string(),
                count,
                passed,
                pass_rate: passed as f64 / count as f64,
                min_slack,
                min_slack_seed: min_seed,
                min_slack_dim: min_dim,
            }
        })
        .collect()
}

pub fn render_table(rows: &[SummaryRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<20} {:>7} {:>7} {:>9} {:>14} {:>8} {:>20}\n",
        "experiment", "count", "passed", "pass_rate", "min_slack", "dim", "min_slack_seed"
    ));
    for r in rows {
        out.push_str(&format!(
            "{:<20} {:>7} {:>7} {:>9.4} {:>14.3e} {:>8} {:>20}\n",
            r.experiment_id, r.count, r.passed, r.pass_rate, r.min_slack, r.min_slack_dim,
            r.min_slack_seed
        ));
    }
    out
}
