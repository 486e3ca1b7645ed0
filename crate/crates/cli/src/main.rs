use std::io::Write as _;
use std::process::ExitCode;

use clap::Parser;
use sparsef2_cli::{run, Cli, RunConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = RunConfig::from_cli(cli).and_then(|cfg| run(&cfg).map(|out| (cfg, out)));
    match result {
        Ok((cfg, out)) => {
            let report = out.report.render(cfg.opts.format);
            let mut stdout = std::io::stdout().lock();
            match (&cfg.opts.output, &out.emitted) {
                (None, Some(text)) => {
                    let _ = stdout.write_all(text.as_bytes());
                    eprint!("{report}");
                }
                _ => {
                    let _ = stdout.write_all(report.as_bytes());
                }
            }
            ExitCode::from(out.status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
