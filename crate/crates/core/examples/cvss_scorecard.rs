//! Scoring a CVSS scorecard built in code, then the history from a dataset.

use std::path::PathBuf;

use kvstream::io::load_dataset;
use kvstream::maturity::{assessment_history, cvss_assessment, BandThresholds};
use kvstream::model::{Dimension, Rating, Scorecard, ScorecardItem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bands = BandThresholds::default();
    let item = |dimension, rating| ScorecardItem { dimension, statement: String::new(), rating };
    let card = Scorecard {
        team: "firmware".into(),
        timestamp: "2024-03-01T09:00:00Z".into(),
        items: vec![
            item(Dimension::Create, Rating::A),
            item(Dimension::Create, Rating::D),
            item(Dimension::Create, Rating::SA),
            item(Dimension::Create, Rating::D),
            item(Dimension::Share, Rating::SD),
            item(Dimension::Share, Rating::D),
        ],
    };
    let r = cvss_assessment(&card, &bands)?;
    for (dim, res) in r.assessed() {
        println!("{dim:<9} {:>6.2}  {:?}", res.score, res.band);
    }
    println!("overall   {:>6.2}\n", r.overall.unwrap_or(0.0));

    let data = load_dataset(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/clean"))?;
    for r in assessment_history(&data, &bands)? {
        let row: Vec<String> = r
            .dimensions
            .iter()
            .map(|(d, x)| x.map_or(format!("{d} -"), |x| format!("{d} {:.1}", x.score)))
            .collect();
        println!("{} {}  {}", r.timestamp, r.team, row.join("  "));
    }
    Ok(())
}
