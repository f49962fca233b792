//! One line per acceptance item. Exits nonzero on any unexpected failure;
//! items whose expectation is known to be unattainable print as red but
//! do not fail the run.

use std::path::PathBuf;
use std::process::ExitCode;

use tql_cli::repro::{run_item, Status};
use tql_cli::Context;
use tql_core::episearch::SearchConfig;

fn main() -> ExitCode {
    let ctx = Context {
        cfg: SearchConfig::default(),
        seed: 0,
        attempts: 64,
        cache: None,
        data_dir: PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data"),
    };
    let mut unexpected = 0;
    for id in 1..=11 {
        let r = match run_item(id, &ctx) {
            Ok(r) => r,
            Err(e) => {
                println!("acceptance {id:>2}: FAIL error {e}");
                unexpected += 1;
                continue;
            }
        };
        println!("acceptance {id:>2}: {} {} ({:.1}s) {}", r.status.label(), r.title, r.seconds, r.detail);
        if r.status == Status::Fail {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failures");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
