//! Run instrumentation: vivification impact and cost, rule breakdown, clause-size reduction
//! per clause kind, the LBD distribution of learnt clauses, and core solver counters.
//!
//! Everything is stored as raw counters; percentages are derived only when a [`Report`] is built.
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::formula::ClauseKind;

/// Version tag of the JSON/CSV report layout.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Largest LBD for which the cumulative distribution is reported.
pub const LBD_CDF_POINTS: u32 = 100;

/// Simplification rules that removed at least one literal from a vivified clause.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleSet {
    /// A literal was already false under the propagated negations.
    pub rule1: bool,
    /// A literal became true; the clause was cut via implication-graph analysis.
    pub rule2: bool,
    /// Propagation reached a conflict; the clause was cut via implication-graph analysis.
    pub rule3: bool,
}

impl RuleSet {
    pub fn is_empty(&self) -> bool {
        !(self.rule1 || self.rule2 || self.rule3)
    }
}

/// The six categories of vivification outcomes. Every checked clause falls in exactly one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleCounts {
    pub no_simp: u64,
    pub rule_1: u64,
    pub rule_2: u64,
    pub rule_3: u64,
    pub rule_12: u64,
    pub rule_13: u64,
}

impl RuleCounts {
    pub fn total(&self) -> u64 {
        self.no_simp + self.rule_1 + self.rule_2 + self.rule_3 + self.rule_12 + self.rule_13
    }
}

/// Literal totals of vivified clauses of one kind.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KindTotals {
    /// Literals before vivification, summed over checked clauses.
    pub literals_before: u64,
    /// Literals after vivification, summed over checked clauses.
    pub literals_after: u64,
    pub clauses_checked: u64,
    pub clauses_shortened: u64,
    /// Clauses checked again after an earlier vivification.
    pub clauses_revivified: u64,
    /// Clauses whose LBD was recomputed during conflict analysis at least once.
    pub lbd_recomputed: u64,
    /// Clauses whose LBD decreased at least once.
    pub lbd_decreased: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MetricsAccumulator {
    pub original: KindTotals,
    pub learnt: KindTotals,
    pub rules: RuleCounts,
    pub vivify_propagations: u64,
    pub search_propagations: u64,
    pub preprocess_propagations: u64,
    pub preprocess_clauses_checked: u64,
    /// Propagations spent on the last clause preprocessing visited.
    pub preprocess_last_clause_propagations: u64,
    pub vivify_passes: u64,
    pub learnt_clauses_total: u64,
    /// `lbd_histogram[k]` = number of learnt clauses created with LBD `k`.
    pub lbd_histogram: Vec<u64>,
    pub conflicts: u64,
    pub decisions: u64,
    pub restarts: u64,
    pub reductions: u64,
    pub deleted_clauses: u64,
    pub preprocess_time_secs: f64,
    pub search_time_secs: f64,
}

impl MetricsAccumulator {
    pub fn new() -> MetricsAccumulator {
        MetricsAccumulator::default()
    }

    pub fn kind(&self, kind: ClauseKind) -> &KindTotals {
        match kind {
            ClauseKind::Original => &self.original,
            ClauseKind::Learnt => &self.learnt,
        }
    }

    pub fn kind_mut(&mut self, kind: ClauseKind) -> &mut KindTotals {
        match kind {
            ClauseKind::Original => &mut self.original,
            ClauseKind::Learnt => &mut self.learnt,
        }
    }

    /// Record the outcome of vivifying one clause.
    ///
    /// Panics if rules 2 and 3 are both reported, or if an unsimplified clause changed size.
    pub fn record_vivify(
        &mut self,
        kind: ClauseKind,
        size_before: usize,
        size_after: usize,
        rules: RuleSet,
    ) {
        assert!(
            !(rules.rule2 && rules.rule3),
            "rules 2 and 3 cannot both apply to one clause"
        );
        assert!(
            size_after <= size_before,
            "vivification never grows a clause"
        );
        if rules.is_empty() {
            assert_eq!(
                size_before, size_after,
                "no rule fired but the clause changed"
            );
        }
        let totals = self.kind_mut(kind);
        totals.literals_before += size_before as u64;
        totals.literals_after += size_after as u64;
        totals.clauses_checked += 1;
        if size_after < size_before {
            totals.clauses_shortened += 1;
        }
        let counter = match (rules.rule1, rules.rule2, rules.rule3) {
            (false, false, false) => &mut self.rules.no_simp,
            (true, false, false) => &mut self.rules.rule_1,
            (false, true, false) => &mut self.rules.rule_2,
            (false, false, true) => &mut self.rules.rule_3,
            (true, true, false) => &mut self.rules.rule_12,
            (true, false, true) => &mut self.rules.rule_13,
            _ => unreachable!(),
        };
        *counter += 1;
    }

    pub fn record_learnt_lbd(&mut self, lbd: u32) {
        let idx = lbd as usize;
        if self.lbd_histogram.len() <= idx {
            self.lbd_histogram.resize(idx + 1, 0);
        }
        self.lbd_histogram[idx] += 1;
        self.learnt_clauses_total += 1;
    }

    pub fn clauses_checked(&self) -> u64 {
        self.original.clauses_checked + self.learnt.clauses_checked
    }

    /// The six rule categories partition the checked clauses.
    pub fn partition_holds(&self) -> bool {
        self.rules.total() == self.clauses_checked()
    }

    /// `(a - b) / a * 100` for one clause kind; `None` when no literal was checked.
    pub fn reduction_ratio(&self, kind: ClauseKind) -> Option<f64> {
        let t = self.kind(kind);
        ratio(t.literals_before, t.literals_after)
    }

    /// Reduction ratio over both kinds.
    pub fn impact(&self) -> Option<f64> {
        ratio(
            self.original.literals_before + self.learnt.literals_before,
            self.original.literals_after + self.learnt.literals_after,
        )
    }

    /// Percentage of learnt clauses with LBD at most `x`.
    pub fn lbd_cdf(&self, x: u32) -> f64 {
        if self.learnt_clauses_total == 0 {
            return 0.0;
        }
        let upto = (x as usize + 1).min(self.lbd_histogram.len());
        let count: u64 = self.lbd_histogram[..upto].iter().sum();
        count as f64 * 100.0 / self.learnt_clauses_total as f64
    }

    pub fn max_lbd(&self) -> u32 {
        self.lbd_histogram.iter().rposition(|&c| c > 0).unwrap_or(0) as u32
    }

    pub fn report(&self) -> Report {
        let pct = |num: u64, den: u64| {
            if den == 0 {
                0.0
            } else {
                num as f64 * 100.0 / den as f64
            }
        };
        let checked = self.clauses_checked();
        let r = &self.rules;
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            conflicts: self.conflicts,
            decisions: self.decisions,
            restarts: self.restarts,
            reductions: self.reductions,
            deleted_clauses: self.deleted_clauses,
            vivify_passes: self.vivify_passes,
            learnt_clauses_total: self.learnt_clauses_total,
            clauses_checked: checked,
            clauses_shortened: self.original.clauses_shortened + self.learnt.clauses_shortened,
            original_clauses_checked: self.original.clauses_checked,
            learnt_clauses_checked: self.learnt.clauses_checked,
            preprocess_clauses_checked: self.preprocess_clauses_checked,
            search_propagations: self.search_propagations,
            vivify_propagations: self.vivify_propagations,
            preprocess_propagations: self.preprocess_propagations,
            impact_pct: self.impact().unwrap_or(0.0),
            impact_defined: self.impact().is_some(),
            cost_pct: pct(self.vivify_propagations, self.search_propagations),
            live_c_pct: pct(self.learnt.clauses_checked, self.learnt_clauses_total),
            original_reduction_pct: self.reduction_ratio(ClauseKind::Original).unwrap_or(0.0),
            original_reduction_defined: self.reduction_ratio(ClauseKind::Original).is_some(),
            learnt_reduction_pct: self.reduction_ratio(ClauseKind::Learnt).unwrap_or(0.0),
            learnt_reduction_defined: self.reduction_ratio(ClauseKind::Learnt).is_some(),
            original_literals_before: self.original.literals_before,
            original_literals_after: self.original.literals_after,
            learnt_literals_before: self.learnt.literals_before,
            learnt_literals_after: self.learnt.literals_after,
            no_simp: r.no_simp,
            rule_1: r.rule_1,
            rule_2: r.rule_2,
            rule_3: r.rule_3,
            rule_12: r.rule_12,
            rule_13: r.rule_13,
            no_simp_pct: pct(r.no_simp, checked),
            rule_1_pct: pct(r.rule_1, checked),
            rule_2_pct: pct(r.rule_2, checked),
            rule_3_pct: pct(r.rule_3, checked),
            rule_12_pct: pct(r.rule_12, checked),
            rule_13_pct: pct(r.rule_13, checked),
            original_lbd_decreased_pct: pct(
                self.original.lbd_decreased,
                self.original.lbd_recomputed,
            ),
            original_revivified: self.original.clauses_revivified,
            learnt_lbd_decreased_pct: pct(self.learnt.lbd_decreased, self.learnt.lbd_recomputed),
            learnt_revivified: self.learnt.clauses_revivified,
            lbd_cdf: (1..=LBD_CDF_POINTS).map(|x| (x, self.lbd_cdf(x))).collect(),
            preprocess_time_secs: self.preprocess_time_secs,
            search_time_secs: self.search_time_secs,
        }
    }
}

fn ratio(before: u64, after: u64) -> Option<f64> {
    if before == 0 {
        None
    } else {
        Some((before - after) as f64 * 100.0 / before as f64)
    }
}

/// Derived, schema-stable view of a [`MetricsAccumulator`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub conflicts: u64,
    pub decisions: u64,
    pub restarts: u64,
    pub reductions: u64,
    pub deleted_clauses: u64,
    pub vivify_passes: u64,
    pub learnt_clauses_total: u64,
    pub clauses_checked: u64,
    pub clauses_shortened: u64,
    pub original_clauses_checked: u64,
    pub learnt_clauses_checked: u64,
    pub preprocess_clauses_checked: u64,
    pub search_propagations: u64,
    pub vivify_propagations: u64,
    pub preprocess_propagations: u64,
    pub impact_pct: f64,
    pub impact_defined: bool,
    pub cost_pct: f64,
    pub live_c_pct: f64,
    pub original_reduction_pct: f64,
    pub original_reduction_defined: bool,
    pub learnt_reduction_pct: f64,
    pub learnt_reduction_defined: bool,
    pub original_literals_before: u64,
    pub original_literals_after: u64,
    pub learnt_literals_before: u64,
    pub learnt_literals_after: u64,
    pub no_simp: u64,
    pub rule_1: u64,
    pub rule_2: u64,
    pub rule_3: u64,
    pub rule_12: u64,
    pub rule_13: u64,
    pub no_simp_pct: f64,
    pub rule_1_pct: f64,
    pub rule_2_pct: f64,
    pub rule_3_pct: f64,
    pub rule_12_pct: f64,
    pub rule_13_pct: f64,
    pub original_lbd_decreased_pct: f64,
    pub original_revivified: u64,
    pub learnt_lbd_decreased_pct: f64,
    pub learnt_revivified: u64,
    /// `(x, y)`: `y` percent of learnt clauses have LBD at most `x`, for `x = 1..=100`.
    pub lbd_cdf: Vec<(u32, f64)>,
    pub preprocess_time_secs: f64,
    pub search_time_secs: f64,
}

/// Output format of [`Report::render`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Human,
    Json,
    Csv,
}

/// Columns of the CSV report, in output order. `lbd_cdf` expands to `lbd_cdf_1..=lbd_cdf_100`.
pub const CSV_COLUMNS: &[&str] = &[
    "schema_version",
    "conflicts",
    "decisions",
    "restarts",
    "reductions",
    "deleted_clauses",
    "vivify_passes",
    "learnt_clauses_total",
    "clauses_checked",
    "clauses_shortened",
    "original_clauses_checked",
    "learnt_clauses_checked",
    "preprocess_clauses_checked",
    "search_propagations",
    "vivify_propagations",
    "preprocess_propagations",
    "impact_pct",
    "impact_defined",
    "cost_pct",
    "live_c_pct",
    "original_reduction_pct",
    "original_reduction_defined",
    "learnt_reduction_pct",
    "learnt_reduction_defined",
    "original_literals_before",
    "original_literals_after",
    "learnt_literals_before",
    "learnt_literals_after",
    "no_simp",
    "rule_1",
    "rule_2",
    "rule_3",
    "rule_12",
    "rule_13",
    "no_simp_pct",
    "rule_1_pct",
    "rule_2_pct",
    "rule_3_pct",
    "rule_12_pct",
    "rule_13_pct",
    "original_lbd_decreased_pct",
    "original_revivified",
    "learnt_lbd_decreased_pct",
    "learnt_revivified",
    "lbd_cdf",
    "preprocess_time_secs",
    "search_time_secs",
];

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Header names of the CSV output.
    pub fn csv_header() -> Vec<String> {
        let mut cols = Vec::new();
        for &c in CSV_COLUMNS {
            if c == "lbd_cdf" {
                cols.extend((1..=LBD_CDF_POINTS).map(|x| format!("lbd_cdf_{x}")));
            } else {
                cols.push(c.to_string());
            }
        }
        cols
    }

    /// One CSV data row matching [`csv_header`](Self::csv_header).
    pub fn csv_row(&self) -> Vec<String> {
        let value = serde_json::to_value(self).expect("report serializes");
        let map = value.as_object().expect("report is an object");
        let mut row = Vec::new();
        for &c in CSV_COLUMNS {
            if c == "lbd_cdf" {
                row.extend(self.lbd_cdf.iter().map(|(_, y)| format!("{y:.4}")));
            } else {
                row.push(match &map[c] {
                    Value::Number(n) => match n.as_f64() {
                        Some(f) if n.is_f64() => format!("{f:.4}"),
                        _ => n.to_string(),
                    },
                    other => other.to_string(),
                });
            }
        }
        row
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{}\n{}\n",
            Report::csv_header().join(","),
            self.csv_row().join(",")
        )
    }

    pub fn to_human(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "conflicts            : {}", self.conflicts);
        let _ = writeln!(s, "decisions            : {}", self.decisions);
        let _ = writeln!(s, "restarts             : {}", self.restarts);
        let _ = writeln!(s, "reductions           : {}", self.reductions);
        let _ = writeln!(s, "vivification passes  : {}", self.vivify_passes);
        let _ = writeln!(
            s,
            "clauses checked      : {} ({} original, {} learnt, {} in preprocessing)",
            self.clauses_checked,
            self.original_clauses_checked,
            self.learnt_clauses_checked,
            self.preprocess_clauses_checked
        );
        let _ = writeln!(s, "impact               : {:.2}%", self.impact_pct);
        let _ = writeln!(s, "cost                 : {:.2}%", self.cost_pct);
        let _ = writeln!(s, "liveC                : {:.2}%", self.live_c_pct);
        let _ = writeln!(
            s,
            "reduction ratio      : original {:.2}%, learnt {:.2}%",
            self.original_reduction_pct, self.learnt_reduction_pct
        );
        let _ = writeln!(
            s,
            "rules                : noSimp {:.1}% r1 {:.1}% r2 {:.1}% r3 {:.1}% r12 {:.1}% r13 {:.1}%",
            self.no_simp_pct,
            self.rule_1_pct,
            self.rule_2_pct,
            self.rule_3_pct,
            self.rule_12_pct,
            self.rule_13_pct
        );
        let _ = writeln!(
            s,
            "time                 : preprocess {:.3}s, search {:.3}s",
            self.preprocess_time_secs, self.search_time_secs
        );
        s
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Human => self.to_human(),
            ReportFormat::Json => self.to_json(),
            ReportFormat::Csv => self.to_csv(),
        }
    }

    /// Copy with wall-time fields zeroed, for run-to-run comparison.
    pub fn without_times(&self) -> Report {
        Report {
            preprocess_time_secs: 0.0,
            search_time_secs: 0.0,
            ..self.clone()
        }
    }
}
