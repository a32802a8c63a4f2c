//! Density, reciprocity, tacit share, cut points and cliques for every area
//! of a dataset directory.
//!
//! ```text
//! cargo run --example flow_metrics [DATA_DIR]
//! ```

use std::path::PathBuf;

use kvstream::flow::{flow_summary, FlowThresholds};
use kvstream::io::load_dataset;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/four-areas"));
    let data = load_dataset(&dir)?;
    let thresholds = FlowThresholds::default();

    for area in data.area_ids() {
        let graph = data.flow_graph(area);
        let s = match flow_summary(&graph, &thresholds, 3) {
            Ok(s) => s,
            Err(e) => {
                println!("{area}: {e}");
                continue;
            }
        };
        println!("{area}");
        println!("  density      {:.2}", s.density.unwrap_or(0.0));
        match s.reciprocity {
            Some(r) => println!("  reciprocity  {r:.0}%"),
            None => println!("  reciprocity  n/a"),
        }
        if let (Some(t), Some(e)) = (s.tacit_pct, s.explicit_pct) {
            println!("  tacit        {t:.0}% / explicit {e:.0}%");
        }
        println!("  quadrant     {:?}", s.quadrant);
        if !s.cut_points.is_empty() {
            println!("  cut points   {}", s.cut_points.iter().cloned().collect::<Vec<_>>().join(", "));
        }
        for c in &s.cliques {
            println!("  clique       {{{}}}", c.join(", "));
        }
        let top: Vec<String> = s.most_approached.iter().map(|a| format!("{} ({})", a.actor, a.in_degree)).collect();
        println!("  approached   {}", top.join(", "));
    }
    Ok(())
}
