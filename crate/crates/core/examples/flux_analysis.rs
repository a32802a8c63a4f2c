//! Knowledge flux per area and whether it needs enhancing.

use std::path::PathBuf;

use kvstream::config::Config;
use kvstream::flux::{flux_assessment, knowledge_flux, FluxVerdict};
use kvstream::io::load_dataset;
use kvstream::model::DecisionRecord;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // 12 ties supporting 4 decisions
    println!("flux(12, 4) = {}", knowledge_flux(12, 4)?);

    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/four-areas");
    let data = load_dataset(dir)?;
    let config = Config::default();

    for area in data.area_ids() {
        let decisions: Vec<&DecisionRecord> = data.decisions_in(area).collect();
        let a = match flux_assessment(area, &data.flow_graph(area), &decisions, config.favorable_threshold) {
            Ok(a) => a,
            Err(e) => {
                println!("{area:<18} {e}");
                continue;
            }
        };
        let rate = a.favorable_rate.map_or("-".to_string(), |r| format!("{:.0}%", r * 100.0));
        println!("{area:<18} flux {:>5.2}  favorable {rate:>4}  {:?}", a.flux, a.verdict);
        if a.verdict == FluxVerdict::EnhanceFlux {
            println!("{:18} {}", "", a.recommendation);
        }
    }
    Ok(())
}
