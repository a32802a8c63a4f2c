//! Where a dataset sits on the maturity roadmap, and which waste
//! diagnostics fire.

use std::path::PathBuf;

use kvstream::config::Config;
use kvstream::io::load_dataset;
use kvstream::maturity::{assessment_history, phase_status, waste_diagnostics};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "four-areas".into());
    let data = load_dataset(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(&name))?;
    let config = Config::default();

    let history = assessment_history(&data, &config.bands())?;
    let status = phase_status(&data, &history, &config);
    println!("{name}: phase {}", status.current_phase);
    for r in &status.rules {
        let mark = if r.satisfied { "x" } else { " " };
        println!("  [{mark}] {:<22} {}", r.rule, r.evidence);
    }

    println!();
    for w in waste_diagnostics(&data, &config) {
        let mark = if w.triggered { "!" } else { " " };
        println!("  {mark} {:<20} {}", format!("{:?}", w.point), w.evidence);
    }
    Ok(())
}
