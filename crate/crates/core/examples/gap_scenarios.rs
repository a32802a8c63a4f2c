//! Gap classification, UV scenarios, the perception/reality matrix and
//! comparisons on a partially ordered uncertainty scale.

use kvstream::model::GapAssessment;
use kvstream::scenario::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("d1", vec!["latency", "heat"], vec!["latency", "heat"]),
        ("d2", vec!["latency", "heat"], vec!["latency"]),
        ("d3", vec!["latency"], vec!["latency", "cost"]),
        ("d4", vec!["latency", "heat"], vec!["heat", "cost"]),
    ];
    for (id, actual, perceived) in cases {
        let g = classify_gap_scenario(&GapAssessment::new(id, actual, perceived));
        println!("{id}: {:?} (unknown {}, phantom {})", g.kind, g.unknown_unknowns, g.phantom_gaps);
    }

    println!();
    for (needs, solution) in [(false, false), (false, true), (true, true), (true, false)] {
        match classify_uv(needs, solution) {
            Ok(uv) => println!("needs uncertain={needs:<5} solution uncertain={solution:<5} -> {uv}, {:?}", recommend_approach(uv)),
            Err(e) => println!("needs uncertain={needs:<5} solution uncertain={solution:<5} -> {e}"),
        }
    }

    println!("\nperceived \\ actual");
    for row in perception_reality_matrix() {
        let cells: Vec<String> = row.iter().map(|c| format!("{:?}/{:?}", c.alignment, c.waste_kind)).collect();
        println!("{}  {}", row[0].perceived, cells.join("  "));
    }

    let scale = UncertaintyScale::new(
        &["Low", "Medium", "High", "Regulatory"],
        &[("Low", "Medium"), ("Medium", "High"), ("Low", "Regulatory")],
    )?;
    println!();
    for (a, b) in [("Low", "High"), ("High", "Medium"), ("High", "Regulatory")] {
        println!("{a} vs {b}: {:?}", poset_compare(&scale, a, b)?);
    }
    Ok(())
}
