//! Batch harness: every `.cnf` file of a directory solved in its own process.
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use anyhow::{Context, Result};
use clap::Args;

use crate::record::{RunRecord, Summary};
use crate::SolverFlags;

#[derive(Args, Debug)]
pub struct BatchArgs {
    /// Directory holding the `.cnf` instances (not searched recursively).
    pub dir: PathBuf,
    #[command(flatten)]
    pub flags: SolverFlags,
    /// Number of instances solved concurrently.
    #[arg(long, value_name = "N", default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: u32,
    /// Also write the summary as CSV to this file.
    #[arg(long, value_name = "PATH")]
    pub summary_csv: Option<PathBuf>,
}

/// The `.cnf` files of `dir` in lexicographic order.
fn instances(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("cannot read directory {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "cnf"))
        .collect();
    files.sort();
    Ok(files)
}

/// Solve one instance in a child process and turn whatever it reports into a record.
fn run_child(exe: &Path, path: &Path, flags: &SolverFlags) -> RunRecord {
    let config = flags.config();
    let failed = |msg: String| {
        RunRecord::failed(
            path.display().to_string(),
            config.seed,
            config.fingerprint(),
            msg,
        )
    };
    let output = match Command::new(exe)
        .arg("solve")
        .arg(path)
        .args(flags.to_args())
        .arg("--emit-record")
        .output()
    {
        Ok(o) => o,
        Err(e) => return failed(format!("cannot start solver process: {e}")),
    };
    let stdout = String::from_utf8_lossy(&output.stdout);
    match stdout.lines().last().map(serde_json::from_str::<RunRecord>) {
        Some(Ok(rec)) => rec,
        _ => {
            let stderr = String::from_utf8_lossy(&output.stderr);
            let last = stderr
                .lines()
                .rev()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("");
            failed(format!("solver process failed ({}): {last}", output.status))
        }
    }
}

pub fn run(args: &BatchArgs) -> Result<ExitCode> {
    let files = instances(&args.dir)?;
    let exe = std::env::current_exe().context("cannot locate the solver executable")?;
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<RunRecord>>> = Mutex::new(vec![None; files.len()]);
    std::thread::scope(|scope| {
        for _ in 0..args.jobs.min(files.len().max(1) as u32) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(path) = files.get(i) else { break };
                let rec = run_child(&exe, path, &args.flags);
                slots
                    .lock()
                    .expect("no worker panics while holding the lock")[i] = Some(rec);
            });
        }
    });
    let records: Vec<RunRecord> = slots
        .into_inner()
        .expect("workers finished")
        .into_iter()
        .map(|r| r.expect("every instance was run"))
        .collect();

    let mut stdout = io::stdout().lock();
    for rec in &records {
        writeln!(stdout, "{}", serde_json::to_string(rec)?)?;
    }
    stdout.flush()?;

    let summary = Summary::of(&records);
    eprint!("{}", summary.to_table());
    if let Some(path) = &args.summary_csv {
        fs::write(path, summary.to_csv())
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}
