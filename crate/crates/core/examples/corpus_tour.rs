//! Runs every command on the built-in corpus and prints one line each.
//!
//! cargo run --release --example corpus_tour

use std::time::Instant;

use separatrix_core::cli::{run_command, Command};
use separatrix_core::corpus;

fn main() {
    for doc in corpus::foliations().iter().chain(corpus::curves().iter()) {
        for cmd in Command::ALL {
            let t = Instant::now();
            let summary = match run_command(doc, cmd) {
                Ok(r) => r
                    .text
                    .lines()
                    .filter(|l| ["d =", "separatrix:", "equal", "blow-ups", "depth 0"].iter().any(|k| l.contains(k)))
                    .collect::<Vec<_>>()
                    .join(" | "),
                Err(e) => format!("error: {e}"),
            };
            println!("{:15} {:12} {:6.2}s {summary}", doc.name.as_deref().unwrap_or("?"), cmd.name(), t.elapsed().as_secs_f64());
        }
    }
}
