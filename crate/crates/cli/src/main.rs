use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use knotwave_cli::config::{tolerance, Cli, Command};
use knotwave_cli::{commands, output, suite, CliError, CliResult};

fn run(cli: Cli) -> CliResult<()> {
    let tol = tolerance()?;
    match cli.command {
        Command::Build(args) => {
            for p in commands::cmd_build(&args)? {
                println!("wrote {}", p.display());
            }
        }
        Command::Wavelets(args) => {
            for p in commands::cmd_wavelets(&args, tol)? {
                println!("wrote {}", p.display());
            }
        }
        Command::Verify(args) => {
            let report = suite::run(&args, tol)?;
            print!("{}", report.render());
            if let Some(dir) = &args.job.output {
                let p = output::write_json(dir, "verify.json", &report)?;
                println!("wrote {}", p.display());
            }
            if !report.passed {
                return Err(CliError::Verification(format!(
                    "{} of {} checks failed",
                    report.checks.iter().filter(|c| !c.passed).count(),
                    report.checks.len()
                )));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let res = run(cli);
    eprintln!("runtime {:.3} s", start.elapsed().as_secs_f64());
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
