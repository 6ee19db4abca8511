use std::process::ExitCode;

use geoconj::acceptance::{criteria, run, SEED};

fn main() -> ExitCode {
    println!("acceptance suite, seed {SEED:#x}");
    let mut failed = Vec::new();
    for (id, _, _, _) in criteria() {
        let outcome = run(id, SEED).expect("known criterion");
        println!("{outcome}");
        if !outcome.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("all {} criteria passed", criteria().len());
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
