//! The complete report, rendered as text to stdout and as JSON, CSV and SVG
//! into a scratch directory.

use std::path::PathBuf;

use kvstream::config::Config;
use kvstream::io::load_dataset;
use kvstream::report::{build_report, emit_svg_plots, now_timestamp, render_report, Format, Section};
use kvstream::validate::validate_dataset;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = load_dataset(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/four-areas"))?;
    let report = validate_dataset(&data);
    if !report.is_valid() {
        for v in &report.violations {
            eprintln!("{v}");
        }
        std::process::exit(1);
    }

    let bundle = build_report(&data, &Config::default(), &Section::ALL, now_timestamp());
    let text = render_report(&bundle, Format::Text)?.into_stream();
    print!("{}", String::from_utf8(text)?);

    let out = std::env::temp_dir().join("kvstream-full-report");
    std::fs::create_dir_all(&out)?;
    std::fs::write(out.join("report.json"), render_report(&bundle, Format::Json)?.into_stream())?;
    for (name, body) in render_report(&bundle, Format::Csv)?.files {
        std::fs::write(out.join(name), body)?;
    }
    for p in emit_svg_plots(&bundle, &out)? {
        println!("wrote {}", p.display());
    }
    println!("wrote {}", out.display());
    Ok(())
}
