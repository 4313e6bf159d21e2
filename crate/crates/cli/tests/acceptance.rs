use std::process::ExitCode;

use reconf_cli::acceptance::{run_all, Settings};

fn main() -> ExitCode {
    let outcomes = run_all(&Settings::default());
    for o in &outcomes {
        println!("{}", o.line());
    }
    if outcomes.iter().all(|o| o.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
