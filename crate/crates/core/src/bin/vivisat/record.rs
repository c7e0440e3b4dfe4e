//! Per-instance run records and their aggregation.
use serde::{Deserialize, Serialize};
use vivisat::{Answer, Report};

/// Outcome of one instance in a batch. `Error` covers unreadable input and crashed runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Sat,
    Unsat,
    Unknown,
    Error,
}

impl From<Answer> for Status {
    fn from(a: Answer) -> Self {
        match a {
            Answer::Sat => Status::Sat,
            Answer::Unsat => Status::Unsat,
            Answer::Unknown => Status::Unknown,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: String,
    pub answer: Status,
    pub wall_time_secs: f64,
    pub seed: u64,
    pub config: String,
    /// For satisfiable answers: whether the model was re-checked against the input file.
    pub model_verified: Option<bool>,
    pub metrics: Option<Report>,
    pub error: Option<String>,
}

impl RunRecord {
    pub fn failed(instance: String, seed: u64, config: String, error: String) -> RunRecord {
        RunRecord {
            instance,
            answer: Status::Error,
            wall_time_secs: 0.0,
            seed,
            config,
            model_verified: None,
            metrics: None,
            error: Some(error),
        }
    }

    pub fn solved(&self) -> bool {
        matches!(self.answer, Status::Sat | Status::Unsat)
    }
}

/// Aggregate over a batch. Percentages are macro averages: the mean over the runs for which the
/// value is defined.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub solved: usize,
    pub sat: usize,
    pub unsat: usize,
    pub unknown: usize,
    pub errors: usize,
    pub mean_time_solved_secs: f64,
    pub original_reduction_pct: f64,
    pub learnt_reduction_pct: f64,
    pub impact_pct: f64,
    pub cost_pct: f64,
    pub no_simp_pct: f64,
    pub rule_1_pct: f64,
    pub rule_2_pct: f64,
    pub rule_3_pct: f64,
    pub rule_12_pct: f64,
    pub rule_13_pct: f64,
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

impl Summary {
    pub fn of(records: &[RunRecord]) -> Summary {
        let count = |s: Status| records.iter().filter(|r| r.answer == s).count();
        let solved: Vec<&RunRecord> = records.iter().filter(|r| r.solved()).collect();
        let reports = || solved.iter().filter_map(|r| r.metrics.as_ref());
        let checked = || reports().filter(|m| m.clauses_checked > 0);
        Summary {
            instances: records.len(),
            solved: solved.len(),
            sat: count(Status::Sat),
            unsat: count(Status::Unsat),
            unknown: count(Status::Unknown),
            errors: count(Status::Error),
            mean_time_solved_secs: mean(solved.iter().map(|r| r.wall_time_secs)),
            original_reduction_pct: mean(
                reports()
                    .filter(|m| m.original_reduction_defined)
                    .map(|m| m.original_reduction_pct),
            ),
            learnt_reduction_pct: mean(
                reports()
                    .filter(|m| m.learnt_reduction_defined)
                    .map(|m| m.learnt_reduction_pct),
            ),
            impact_pct: mean(reports().filter(|m| m.impact_defined).map(|m| m.impact_pct)),
            cost_pct: mean(reports().map(|m| m.cost_pct)),
            no_simp_pct: mean(checked().map(|m| m.no_simp_pct)),
            rule_1_pct: mean(checked().map(|m| m.rule_1_pct)),
            rule_2_pct: mean(checked().map(|m| m.rule_2_pct)),
            rule_3_pct: mean(checked().map(|m| m.rule_3_pct)),
            rule_12_pct: mean(checked().map(|m| m.rule_12_pct)),
            rule_13_pct: mean(checked().map(|m| m.rule_13_pct)),
        }
    }

    fn fields(&self) -> Vec<(&'static str, String)> {
        vec![
            ("instances", self.instances.to_string()),
            ("solved", self.solved.to_string()),
            ("sat", self.sat.to_string()),
            ("unsat", self.unsat.to_string()),
            ("unknown", self.unknown.to_string()),
            ("errors", self.errors.to_string()),
            (
                "mean_time_solved_secs",
                format!("{:.3}", self.mean_time_solved_secs),
            ),
            (
                "original_reduction_pct",
                format!("{:.2}", self.original_reduction_pct),
            ),
            (
                "learnt_reduction_pct",
                format!("{:.2}", self.learnt_reduction_pct),
            ),
            ("impact_pct", format!("{:.2}", self.impact_pct)),
            ("cost_pct", format!("{:.2}", self.cost_pct)),
            ("no_simp_pct", format!("{:.2}", self.no_simp_pct)),
            ("rule_1_pct", format!("{:.2}", self.rule_1_pct)),
            ("rule_2_pct", format!("{:.2}", self.rule_2_pct)),
            ("rule_3_pct", format!("{:.2}", self.rule_3_pct)),
            ("rule_12_pct", format!("{:.2}", self.rule_12_pct)),
            ("rule_13_pct", format!("{:.2}", self.rule_13_pct)),
        ]
    }

    pub fn to_csv(&self) -> String {
        let (names, values): (Vec<_>, Vec<_>) = self.fields().into_iter().unzip();
        format!("{}\n{}\n", names.join(","), values.join(","))
    }

    pub fn to_table(&self) -> String {
        self.fields()
            .into_iter()
            .map(|(k, v)| format!("{k:<24} {v:>12}\n"))
            .collect()
    }
}
