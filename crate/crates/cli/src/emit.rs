//! Report emission: JSON-lines and CSV with full-precision floats, plus the
//! plot-data side files (slack histograms, convergence curves).
//!
//! Floats are printed with 17 significant digits, enough to round-trip every
//! f64 exactly, so `parse_jsonl(write_jsonl(records)) == records`.

use gurlab_core::report::ExperimentRecord;
use std::collections::BTreeSet;
use std::io::Write;

/// `%.16e` carries 17 significant digits.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// One record per line; keys exactly the record fields.
pub fn write_jsonl(records: &[ExperimentRecord], mut out: impl Write) -> std::io::Result<()> {
    for r in records {
        let flags: Vec<String> = r.flags.iter().map(|f| format!("\"{}\"", json_escape(f))).collect();
        let extra: Vec<String> = r
            .extra
            .iter()
            .map(|(k, v)| format!("\"{}\":{}", json_escape(k), fmt_f64(*v)))
            .collect();
        writeln!(
            out,
            "{{\"experiment_id\":\"{}\",\"model\":\"{}\",\"dim\":{},\"seed\":{},\"lhs\":{},\"rhs\":{},\"slack\":{},\"flags\":[{}],\"passed\":{},\"extra\":{{{}}}}}",
            json_escape(&r.experiment_id),
            json_escape(&r.model),
            r.dim,
            r.seed,
            fmt_f64(r.lhs),
            fmt_f64(r.rhs),
            fmt_f64(r.slack),
            flags.join(","),
            r.passed,
            extra.join(",")
        )?;
    }
    Ok(())
}

/// Parse records back from JSON lines (serde does the heavy lifting).
pub fn parse_jsonl(text: &str) -> Result<Vec<ExperimentRecord>, serde_json::Error> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(serde_json::from_str)
        .collect()
}

/// Header plus one row per record; the extra map is flattened into
/// `extra.<key>` columns (union over all records, sorted), flags joined by '|'.
pub fn write_csv(records: &[ExperimentRecord], mut out: impl Write) -> std::io::Result<()> {
    let mut extra_keys: BTreeSet<&str> = BTreeSet::new();
    for r in records {
        for k in r.extra.keys() {
            extra_keys.insert(k);
        }
    }
    let mut header = vec![
        "experiment_id".to_string(),
        "model".to_string(),
        "dim".to_string(),
        "seed".to_string(),
        "lhs".to_string(),
        "rhs".to_string(),
        "slack".to_string(),
        "flags".to_string(),
        "passed".to_string(),
    ];
    header.extend(extra_keys.iter().map(|k| format!("extra.{k}")));
    writeln!(out, "{}", header.join(","))?;

    for r in records {
        let flags: Vec<&str> = r.flags.iter().map(String::as_str).collect();
        let mut row = vec![
            r.experiment_id.clone(),
            r.model.clone(),
            r.dim.to_string(),
            r.seed.to_string(),
            fmt_f64(r.lhs),
            fmt_f64(r.rhs),
            fmt_f64(r.slack),
            flags.join("|"),
            r.passed.to_string(),
        ];
        for k in &extra_keys {
            row.push(match r.extra.get(*k) {
                Some(v) => fmt_f64(*v),
                None => String::new(),
            });
        }
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

/// Slack histogram per experiment, 30 uniform bins: plot data only.
pub fn write_slack_histogram(
    records: &[ExperimentRecord],
    mut out: impl Write,
) -> std::io::Result<()> {
    writeln!(out, "experiment_id,bin_lo,bin_hi,count")?;
    let ids: BTreeSet<&str> = records.iter().map(|r| r.experiment_id.as_str()).collect();
    for id in ids {
        let slacks: Vec<f64> = records
            .iter()
            .filter(|r| r.experiment_id == id && r.slack.is_finite())
            .map(|r| r.slack)
            .collect();
        if slacks.is_empty() {
            continue;
        }
        let lo = slacks.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = slacks.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let width = ((hi - lo) / 30.0).max(1e-300);
        let mut counts = [0usize; 30];
        for s in &slacks {
            let bin = (((s - lo) / width) as usize).min(29);
            counts[bin] += 1;
        }
        for (b, count) in counts.iter().enumerate() {
            if *count > 0 {
                let blo = lo + b as f64 * width;
                writeln!(out, "{id},{},{},{count}", fmt_f64(blo), fmt_f64(blo + width))?;
            }
        }
    }
    Ok(())
}

/// Long-format dump of sequence-style extras (refinement errors, per-level
/// products, step/error ladders) for convergence plots.
pub fn write_convergence_curves(
    records: &[ExperimentRecord],
    mut out: impl Write,
) -> std::io::Result<()> {
    writeln!(out, "experiment_id,dim,seed,key,value")?;
    const PREFIXES: [&str; 6] = ["q_error_n", "rhs_product_d", "rhs_limit_d", "err_", "s_", "sinc_d"];
    for r in records {
        for (k, v) in &r.extra {
            if PREFIXES.iter().any(|p| k.starts_with(p)) {
                writeln!(out, "{},{},{},{k},{}", r.experiment_id, r.dim, r.seed, fmt_f64(*v))?;
            }
        }
    }
    Ok(())
}
