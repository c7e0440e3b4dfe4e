//! Single-instance solving with SAT-competition output.
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::Args;
use vivisat::{parse_dimacs, Answer, Formula, ReportFormat, SolveResult, Solver};

use crate::record::{RunRecord, Status};
use crate::{SolverFlags, EXIT_ERROR};

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// DIMACS CNF file, or `-` for standard input.
    pub input: PathBuf,
    #[command(flatten)]
    pub flags: SolverFlags,
    /// Write the metrics report as JSON to this file.
    #[arg(long, value_name = "PATH")]
    pub stats_json: Option<PathBuf>,
    /// Print only a JSON run record instead of the usual output (used by `batch`).
    #[arg(long, hide = true)]
    pub emit_record: bool,
}

fn read_input(path: &Path) -> Result<Vec<u8>> {
    if path == Path::new("-") {
        let mut buf = Vec::new();
        io::stdin()
            .read_to_end(&mut buf)
            .context("reading standard input")?;
        Ok(buf)
    } else {
        fs::read(path).with_context(|| format!("cannot read {}", path.display()))
    }
}

pub fn load(path: &Path) -> Result<Formula> {
    let bytes = read_input(path)?;
    parse_dimacs(&bytes).with_context(|| format!("cannot parse {}", path.display()))
}

fn exit_code(answer: Answer) -> ExitCode {
    ExitCode::from(match answer {
        Answer::Sat => 10,
        Answer::Unsat => 20,
        Answer::Unknown => 0,
    })
}

/// Model as `v` lines of at most ten literals each, terminated by `0`.
fn model_lines(model: &[bool]) -> String {
    let mut tokens: Vec<String> = model
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let v = i as i64 + 1;
            (if b { v } else { -v }).to_string()
        })
        .collect();
    tokens.push("0".into());
    tokens
        .chunks(10)
        .map(|c| format!("v {}\n", c.join(" ")))
        .collect()
}

fn comment(text: &str) -> String {
    text.lines().map(|l| format!("c {l}\n")).collect()
}

pub fn run(args: &SolveArgs) -> Result<ExitCode> {
    let config = args.flags.config();
    let instance = args.input.display().to_string();
    let formula = match load(&args.input) {
        Ok(f) => f,
        Err(e) if args.emit_record => {
            let rec = RunRecord::failed(
                instance,
                config.seed,
                config.fingerprint(),
                format!("{e:#}"),
            );
            println!("{}", serde_json::to_string(&rec)?);
            return Ok(ExitCode::from(EXIT_ERROR));
        }
        Err(e) => return Err(e),
    };

    let start = Instant::now();
    let mut solver = Solver::from_formula(&formula, config.clone());
    let result = solver.solve();
    let wall = start.elapsed().as_secs_f64();
    let report = solver.metrics().report();
    let model_verified = match &result {
        SolveResult::Sat(m) => Some(formula.is_satisfied_by(m)),
        _ => None,
    };
    if model_verified == Some(false) {
        anyhow::bail!("internal error: the model does not satisfy {instance}");
    }

    if let Some(path) = &args.stats_json {
        fs::write(path, report.to_json() + "\n")
            .with_context(|| format!("cannot write {}", path.display()))?;
    }

    if args.emit_record {
        let rec = RunRecord {
            instance,
            answer: Status::from(result.answer()),
            wall_time_secs: wall,
            seed: config.seed,
            config: config.fingerprint(),
            model_verified,
            metrics: Some(report),
            error: None,
        };
        println!("{}", serde_json::to_string(&rec)?);
        return Ok(exit_code(result.answer()));
    }

    let mut out = String::new();
    out += &comment(&format!("vivisat {}", env!("CARGO_PKG_VERSION")));
    out += &comment(&format!("instance {instance}"));
    out += &comment(&format!(
        "config {} seed={}",
        config.fingerprint(),
        config.seed
    ));
    out += &comment(&format!(
        "{} variables, {} clauses",
        formula.num_vars(),
        formula.clauses().len()
    ));
    out += &comment(&report.render(ReportFormat::Human));
    out += &comment(&format!("wall time {wall:.3} s"));
    out += &format!("s {}\n", result.answer());
    if let SolveResult::Sat(model) = &result {
        out += &model_lines(model);
    }
    let mut stdout = io::stdout().lock();
    stdout.write_all(out.as_bytes())?;
    stdout.flush()?;
    Ok(exit_code(result.answer()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_lines_wrap_and_terminate() {
        assert_eq!(model_lines(&[true]), "v 1 0\n");
        let m = vec![false; 12];
        assert_eq!(
            model_lines(&m),
            "v -1 -2 -3 -4 -5 -6 -7 -8 -9 -10\nv -11 -12 0\n"
        );
    }
}
