//! Learning-cycle outcomes: the LC/duration tally, the weighted uncertainty
//! score and a one-dimensional PCA projection of the decision attributes.

use std::path::PathBuf;

use kvstream::flux::{lcc_distribution, project_decisions_1d, uncertainty_from_lcc, LccWeights};
use kvstream::io::load_dataset;
use kvstream::model::{Consequence, CycleDuration, DecisionRecord};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/clean");
    let data = load_dataset(dir)?;
    let weights = LccWeights::default();

    for area in data.area_ids() {
        let decisions: Vec<&DecisionRecord> = data.decisions_in(area).collect();
        let dist = lcc_distribution(area, decisions.iter().copied());
        println!("{area}: {} recorded, {} unrecorded", dist.recorded_total, dist.unrecorded_total);
        for c in [Consequence::LC1, Consequence::LC2, Consequence::LC3, Consequence::LC4] {
            let row: Vec<String> = [CycleDuration::Short, CycleDuration::Medium, CycleDuration::Long]
                .iter()
                .map(|d| dist.count(c, *d).to_string())
                .collect();
            println!("  {c}  {}", row.join("  "));
        }
        if let Ok(u) = uncertainty_from_lcc(decisions.iter().copied(), &weights) {
            println!("  uncertainty {u:.3}");
        }

        match project_decisions_1d(&decisions, &data.codebook) {
            Ok(p) => {
                let loadings: Vec<String> =
                    p.dims.iter().zip(&p.component.direction).map(|(d, w)| format!("{d}={w:+.3}")).collect();
                println!("  pc1 {}  (eigenvalue {:.3})", loadings.join(" "), p.component.eigenvalue);
                for pt in &p.points {
                    println!("    {:>7.3}  {}  {}", pt.coordinate, pt.consequence, pt.decision);
                }
            }
            Err(e) => println!("  no projection: {e}"),
        }
    }
    Ok(())
}
