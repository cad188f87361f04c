//! Campaign configuration: defaults, CLI overrides, and a flat key-value
//! config file with one section per experiment.
//!
//! File grammar (also documented in the README):
//!
//! ```text
//! # comment                       blank lines and '#' comments are skipped
//! seed = 42                       global keys before the first section
//! trials = 50
//! dims = 2,4,8..12                comma list; 'a..b' is an inclusive range
//! format = csv                    csv | jsonl
//! out = reports
//! jobs = 4
//! experiments = two_state, weyl      run list when no sections are given
//!
//! [weyl]                          a section enables one experiment
//! dims = 2..12                    and overrides the global values
//! trials = 200
//! tolerance = 1e-9                slack override for this experiment
//! ```

use std::path::{Path, PathBuf};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OutputFormat {
    JsonLines,
    Csv,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" | "jsonl" | "json_lines" => Some(Self::JsonLines),
            "csv" => Some(Self::Csv),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentPlan {
    pub name: String,
    /// Empty means the experiment's default dims.
    pub dims: Vec<usize>,
    pub trials: usize,
    /// Optional slack-tolerance override for pass judgment.
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub master_seed: u64,
    pub experiments: Vec<ExperimentPlan>,
    pub out_dir: Option<PathBuf>,
    pub format: OutputFormat,
    pub jobs: usize,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            master_seed: 42,
            experiments: Vec::new(),
            out_dir: None,
            format: OutputFormat::JsonLines,
            jobs: 1,
        }
    }
}

#[derive(Debug)]
pub struct ConfigError {
    pub line: usize,
    pub field: String,
    pub message: String,
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.line > 0 {
            write!(f, "line {}: {}: {}", self.line, self.field, self.message)
        } else {
            write!(f, "{}: {}", self.field, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

fn err(line: usize, field: &str, message: impl Into<String>) -> ConfigError {
    ConfigError {
        line,
        field: field.to_string(),
        message: message.into(),
    }
}

/// Parse `2,4,8..12` into an ascending dim list.
pub fn parse_dims(text: &str, line: usize) -> Result<Vec<usize>, ConfigError> {
    let mut dims = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: usize = lo
                .trim()
                .parse()
                .map_err(|_| err(line, "dims", format!("bad range start '{lo}'")))?;
            let hi: usize = hi
                .trim()
                .parse()
                .map_err(|_| err(line, "dims", format!("bad range end '{hi}'")))?;
            if hi < lo {
                return Err(err(line, "dims", format!("empty range {lo}..{hi}")));
            }
            dims.extend(lo..=hi);
        } else {
            dims.push(
                part.parse()
                    .map_err(|_| err(line, "dims", format!("bad dim '{part}'")))?,
            );
        }
    }
    Ok(dims)
}

#[derive(Debug, Default, Clone)]
struct SectionValues {
    dims: Option<Vec<usize>>,
    trials: Option<usize>,
    tolerance: Option<f64>,
}

/// Parse the config file text. Global defaults feed every section; sections
/// (or the `experiments` list) choose what runs.
pub fn parse_config(text: &str) -> Result<CampaignConfig, ConfigError> {
    let mut config = CampaignConfig::default();
    let mut global = SectionValues::default();
    let mut run_list: Option<Vec<String>> = None;
    let mut sections: Vec<(String, SectionValues, usize)> = Vec::new();
    let mut current: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| err(line_no, "section", "missing closing ']'"))?
                .trim()
                .to_string();
            if name.is_empty() {
                return Err(err(line_no, "section", "empty section name"));
            }
            sections.push((name, SectionValues::default(), line_no));
            current = Some(sections.len() - 1);
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(line_no, "syntax", format!("expected 'key = value', got '{line}'")))?;
        let key = key.trim();
        let value = value.trim();
        match current {
            None => match key {
                "seed" => {
                    config.master_seed = value
                        .parse()
                        .map_err(|_| err(line_no, "seed", format!("bad seed '{value}'")))?;
                }
                "trials" => {
                    global.trials = Some(parse_trials(value, line_no)?);
                }
                "dims" => {
                    global.dims = Some(parse_dims(value, line_no)?);
                }
                "tolerance" => {
                    global.tolerance = Some(parse_tolerance(value, line_no)?);
                }
                "format" => {
                    config.format = OutputFormat::parse(value)
                        .ok_or_else(|| err(line_no, "format", format!("unknown format '{value}'")))?;
                }
                "out" => {
                    config.out_dir = Some(PathBuf::from(value));
                }
                "jobs" => {
                    config.jobs = value
                        .parse()
                        .map_err(|_| err(line_no, "jobs", format!("bad jobs '{value}'")))?;
                    if config.jobs == 0 {
                        return Err(err(line_no, "jobs", "jobs must be ≥ 1"));
                    }
                }
                "experiments" => {
                    run_list = Some(
                        value
                            .split(',')
                            .map(|s| s.trim().to_string())
                            .filter(|s| !s.is_empty())
                            .collect(),
                    );
                }
                other => return Err(err(line_no, other, "unknown global key")),
            },
            Some(section_idx) => {
                let section = &mut sections[section_idx].1;
                match key {
                    "dims" => section.dims = Some(parse_dims(value, line_no)?),
                    "trials" => section.trials = Some(parse_trials(value, line_no)?),
                    "tolerance" => section.tolerance = Some(parse_tolerance(value, line_no)?),
                    other => return Err(err(line_no, other, "unknown section key")),
                }
            }
        }
    }

    let default_trials = global.trials.unwrap_or(25);
    if !sections.is_empty() {
        for (name, values, _line) in sections {
            config.experiments.push(ExperimentPlan {
                name,
                dims: values.dims.or_else(|| global.dims.clone()).unwrap_or_default(),
                trials: values.trials.unwrap_or(default_trials),
                tolerance: values.tolerance.or(global.tolerance),
            });
        }
    } else if let Some(names) = run_list {
        for name in names {
            config.experiments.push(ExperimentPlan {
                name,
                dims: global.dims.clone().unwrap_or_default(),
                trials: default_trials,
                tolerance: global.tolerance,
            });
        }
    } else {
        // No explicit selection: the caller fills in the full registry.
        config.experiments = all_experiments_plan(global.dims.clone(), default_trials, global.tolerance);
    }
    Ok(config)
}

fn parse_trials(value: &str, line: usize) -> Result<usize, ConfigError> {
    let trials: usize = value
        .parse()
        .map_err(|_| err(line, "trials", format!("bad trials '{value}'")))?;
    if trials == 0 {
        return Err(err(line, "trials", "trials must be ≥ 1"));
    }
    Ok(trials)
}

fn parse_tolerance(value: &str, line: usize) -> Result<f64, ConfigError> {
    let tol: f64 = value
        .parse()
        .map_err(|_| err(line, "tolerance", format!("bad tolerance '{value}'")))?;
    if tol <= 0.0 || tol.is_nan() {
        return Err(err(line, "tolerance", "tolerance must be positive"));
    }
    Ok(tol)
}

/// A plan covering the whole registry.
pub fn all_experiments_plan(
    dims: Option<Vec<usize>>,
    trials: usize,
    tolerance: Option<f64>,
) -> Vec<ExperimentPlan> {
    crate::experiments::registry()
        .iter()
        .map(|e| ExperimentPlan {
            name: e.name.to_string(),
            dims: dims.clone().unwrap_or_default(),
            trials,
            tolerance,
        })
        .collect()
}

pub fn load_config(path: &Path) -> Result<CampaignConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError {
        line: 0,
        field: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_config(&text)
}
