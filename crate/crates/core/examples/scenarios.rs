//! Runs every registered scenario and prints its report. Pass a name to run
//! just one, e.g. `cargo run --example scenarios -- d4-strip`.

use equisos::scenario::{list_scenarios, run_scenario, RunContext};

fn main() -> anyhow::Result<()> {
    let names: Vec<String> = match std::env::args().nth(1) {
        Some(n) => vec![n],
        None => list_scenarios().into_iter().map(String::from).collect(),
    };
    let ctx = RunContext::new(0);
    let mut all = true;
    for n in &names {
        let r = run_scenario(n, &ctx)?;
        all &= r.pass;
        print!("{}", r.to_text());
    }
    std::process::exit(if all { 0 } else { 1 });
}
