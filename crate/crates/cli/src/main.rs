use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use crossmod_cli::report::Status;
use crossmod_cli::{golden, run, Overrides};

/// Runs a problem bundle, or checks a directory of golden cases.
#[derive(Parser, Debug)]
#[command(name = "crossmod", version, about)]
struct Args {
    /// Bundle file to run; `-` reads standard input.
    #[arg(long, conflicts_with = "golden", required_unless_present = "golden")]
    bundle: Option<PathBuf>,
    /// Directory of `NAME.bundle.json` and `NAME.expected.json` pairs.
    #[arg(long)]
    golden: Option<PathBuf>,
    /// Rewrite the expected files of the golden directory.
    #[arg(long, requires = "golden")]
    bless: bool,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomized checks, overriding the bundle.
    #[arg(long)]
    seed: Option<u64>,
    /// Enumeration limit, overriding the bundle.
    #[arg(long)]
    budget: Option<u64>,
    /// No summary line on standard error.
    #[arg(long)]
    quiet: bool,
}

fn emit(args: &Args, text: &str) -> Result<(), String> {
    print!("{text}");
    if let Some(out) = &args.out {
        fs::write(out, text).map_err(|e| format!("cannot write {}: {e}", out.display()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    let start = Instant::now();
    let overrides = Overrides {
        seed: args.seed,
        budget: args.budget,
    };
    let (status, summary, text) = if let Some(dir) = &args.golden {
        if args.bless {
            match golden::bless(dir, overrides) {
                Ok(n) => (
                    Status::Ok,
                    format!("wrote {n} expected file(s)"),
                    String::new(),
                ),
                Err(e) => (
                    Status::InputError,
                    format!("cannot bless {}: {e}", dir.display()),
                    String::new(),
                ),
            }
        } else {
            let r = golden::check(dir, overrides);
            for case in r.cases.iter().filter(|c| !c.matches) {
                eprint!("{}", case.diff.as_deref().unwrap_or_default());
            }
            let summary = r
                .error
                .clone()
                .unwrap_or_else(|| format!("{} case(s), {} drifted", r.cases.len(), r.drifted()));
            (r.status, summary, r.render())
        }
    } else {
        let path = args.bundle.as_ref().expect("clap requires a bundle");
        let text = if path.as_os_str() == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        } else {
            fs::read_to_string(path)
        };
        match text {
            Ok(t) => {
                let r = run(&t, overrides);
                let summary = r
                    .summary
                    .clone()
                    .or_else(|| r.error.as_ref().map(|e| e.message.clone()))
                    .unwrap_or_default();
                (r.status, summary, r.render())
            }
            Err(e) => (
                Status::InputError,
                format!("cannot read {}: {e}", path.display()),
                String::new(),
            ),
        }
    };
    let status = match emit(&args, &text) {
        Ok(()) => status,
        Err(e) => {
            eprintln!("{e}");
            Status::InputError
        }
    };
    if !args.quiet {
        let status_name = serde_json::to_value(status).expect("statuses serialize");
        eprintln!(
            "{}: {summary} ({:.3}s)",
            status_name.as_str().unwrap_or_default(),
            start.elapsed().as_secs_f64()
        );
    }
    ExitCode::from(status.exit_code() as u8)
}
