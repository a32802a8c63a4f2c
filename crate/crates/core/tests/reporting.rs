mod common;

use common::fixture;
use kvstream::config::Config;
use kvstream::flow::{self, FlowThresholds};
use kvstream::flux::{self, FluxVerdict};
use kvstream::io::load_dataset;
use kvstream::model::*;
use kvstream::report::*;

fn four_areas() -> Dataset {
    load_dataset(fixture("four-areas")).unwrap()
}

fn bundle(d: &Dataset) -> ReportBundle {
    build_report(d, &Config::default(), &Section::ALL, "2024-06-01T00:00:00Z")
}

#[test]
fn health_thresholds_on_reference_rows() {
    let t = HealthThresholds::default();
    assert_eq!(health_of(0.28, 14.0, 72.0, &t), Health::RED);
    assert_eq!(health_of(0.81, 60.0, 64.0, &t), Health::GREEN);
    assert_eq!(health_of(0.32, 15.0, 32.0, &t), Health::YELLOW);
    assert_eq!(health_of(0.45, 31.0, 12.0, &t), Health::YELLOW);
}

#[test]
fn engineered_areas_get_expected_health() {
    let rows = build_flow_flux_report(&four_areas(), &Config::default());
    let by_area = |id: &str| rows.iter().find(|r| r.area == id).unwrap().health;
    let column = ["fpga", "graphics-drivers", "data-structures", "com-dcom"].map(by_area);
    assert_eq!(column, [Some(Health::RED), Some(Health::YELLOW), Some(Health::GREEN), Some(Health::YELLOW)]);
}

#[test]
fn rows_agree_with_standalone_operations() {
    let d = four_areas();
    let config = Config::default();
    for row in build_flow_flux_report(&d, &config) {
        let g = d.flow_graph(&row.area);
        let (tacit, explicit) = flow::tacit_explicit_split(&g).unwrap();
        assert_eq!(row.density, Some(flow::density(&g).unwrap()));
        assert_eq!(row.reciprocity, Some(flow::reciprocity(&g).unwrap()));
        assert_eq!((row.tacit_pct, row.explicit_pct), (Some(tacit), Some(explicit)));
        let decisions: Vec<&DecisionRecord> = d.decisions_in(&row.area).collect();
        let a = flux::flux_assessment(&row.area, &g, &decisions, config.favorable_threshold).unwrap();
        assert_eq!(row.flux, Some(a.flux));
        assert_eq!(row.name, d.area(&row.area).unwrap().name);
    }
}

fn triangle_dataset() -> Dataset {
    let mut d = Dataset::default();
    d.actors = ["a", "b", "c"].map(KnowledgeActor::person).to_vec();
    d.actors.push(KnowledgeActor::person("x"));
    d.actors.push(KnowledgeActor::person("y"));
    d.areas = vec![
        KnowledgeArea { id: "tri".into(), name: "Triangle".into() },
        KnowledgeArea { id: "quiet".into(), name: "Quiet".into() },
    ];
    for (s, t) in [("a", "b"), ("b", "a"), ("a", "c"), ("c", "a"), ("b", "c"), ("c", "b")] {
        d.ties.push(KnowledgeTie::new("tri", s, t));
    }
    d.products = vec![Product { id: "p".into(), name: "P".into() }];
    let mut q1 = DecisionRecord::new("q1", "p", "quiet");
    q1.actors.extend(["x".to_string(), "y".to_string()]);
    d.decisions.push(q1);
    d
}

#[test]
fn complete_triangle_row_and_insufficient_row() {
    let rows = build_flow_flux_report(&triangle_dataset(), &Config::default());
    let tri = rows.iter().find(|r| r.area == "tri").unwrap();
    assert_eq!(tri.density, Some(1.0));
    assert_eq!(tri.health, Some(Health::GREEN));
    assert!(tri.observations.iter().any(|o| o == OBS_CLIQUES));
    assert!(tri.insufficient_data.is_none());

    let quiet = rows.iter().find(|r| r.area == "quiet").unwrap();
    assert!(quiet.insufficient_data.is_some());
    assert_eq!(quiet.health, None);
}

#[test]
fn json_is_reproducible() {
    let d = four_areas();
    let a = render_report(&bundle(&d), Format::Json).unwrap().into_stream();
    let b = render_report(&bundle(&d.clone()), Format::Json).unwrap().into_stream();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["schema"], SCHEMA_VERSION);
    let validator = jsonschema::validator_for(&common::schema()).unwrap();
    assert!(validator.is_valid(&v));
}

#[test]
fn json_keys_are_sorted() {
    let text = String::from_utf8(render_report(&bundle(&four_areas()), Format::Json).unwrap().into_stream()).unwrap();
    let top: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \"") && !l.starts_with("   "))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = top.clone();
    sorted.sort();
    assert_eq!(top, sorted);
}

#[test]
fn csv_has_one_row_per_area() {
    let d = four_areas().restrict_to_areas(&["fpga", "com-dcom", "data-structures"]);
    let rendered = render_report(&bundle(&d), Format::Csv).unwrap();
    let flow_flux = String::from_utf8(rendered.file("flow_flux.csv").unwrap().to_vec()).unwrap();
    assert_eq!(flow_flux.lines().count(), 4);
    assert!(flow_flux.starts_with("area,"));
    for (name, body) in &rendered.files {
        assert!(name.ends_with(".csv"));
        assert!(!body.is_empty(), "{name} has no header");
    }
}

#[test]
fn text_table_uses_standard_headers() {
    assert_eq!(
        FLOW_FLUX_HEADERS,
        [
            "KNOWLEDGE AREA",
            "DENSITY",
            "RECIPROCITY",
            "TACIT::EXPLICIT",
            "KNOWLEDGE FLUX",
            "KEY OBSERVATIONS FROM NETWORK GRAPH",
            "HEALTH ASSESSMENT"
        ]
    );
    let text = String::from_utf8(render_report(&bundle(&four_areas()), Format::Text).unwrap().into_stream()).unwrap();
    let header = text.lines().find(|l| l.starts_with("KNOWLEDGE AREA")).unwrap();
    let cells: Vec<&str> = header.split('|').map(str::trim).collect();
    assert_eq!(cells, FLOW_FLUX_HEADERS);
}

#[test]
fn unknown_format_is_rejected() {
    assert!(matches!("xml".parse::<Format>(), Err(ReportError::UnsupportedFormat(f)) if f == "xml"));
}

#[test]
fn scatter_has_one_point_per_area() {
    let d = four_areas().restrict_to_areas(&["fpga", "com-dcom", "data-structures"]);
    let b = bundle(&d);
    let svg = density_reciprocity_svg(b.flow_flux.as_deref().unwrap(), &FlowThresholds::default());
    assert_eq!(svg.matches(r#"<circle class="point""#).count(), 3);
    assert!(svg.starts_with("<?xml"));
}

#[test]
fn empty_dataset_plots_axes_only() {
    let b = bundle(&Dataset::default());
    let dir = tempfile::tempdir().unwrap();
    let paths = emit_svg_plots(&b, dir.path()).unwrap();
    assert_eq!(paths.len(), 2);
    for p in paths {
        let svg = std::fs::read_to_string(p).unwrap();
        assert_eq!(svg.matches("<circle").count(), 0);
        assert_eq!(svg.matches(r#"class="bar""#).count(), 0);
        assert_eq!(svg.matches(r#"class="axis""#).count(), 2);
    }
}

fn attr<'a>(element: &'a str, name: &str) -> f64 {
    let key = format!(" {name}=\"");
    let start = element.find(&key).unwrap() + key.len();
    element[start..].split('"').next().unwrap().parse().unwrap()
}

#[test]
fn threshold_lines_sit_on_the_defaults() {
    let svg = density_reciprocity_svg(&[], &FlowThresholds::default());
    let frame = PlotFrame::default();
    let lines: Vec<&str> = svg.lines().filter(|l| l.contains(r#"class="threshold""#)).collect();
    assert_eq!(lines.len(), 2);
    let x = frame.left() + 0.5 * (frame.right() - frame.left());
    let y = frame.bottom() - 0.4 * (frame.bottom() - frame.top());
    assert_eq!((x, y), (400.0, 348.0));
    assert_eq!((attr(lines[0], "x1"), attr(lines[0], "x2")), (x, x));
    assert_eq!((attr(lines[1], "y1"), attr(lines[1], "y2")), (y, y));
}

#[test]
fn flux_chart_marks_areas_to_enhance() {
    let b = bundle(&four_areas());
    let flux = b.flux.as_deref().unwrap();
    let svg = flux_svg(flux);
    let enhance = flux.iter().filter(|a| a.assessment.as_ref().is_some_and(|x| x.verdict == FluxVerdict::EnhanceFlux)).count();
    assert_eq!(enhance, 2);
    assert_eq!(svg.matches(r#"class="arrow""#).count(), enhance);
    assert_eq!(svg.matches(r#"class="bar""#).count(), 4);
    assert_eq!(svg.matches(r#"class="favorable""#).count(), 4);
}

#[test]
fn building_is_pure() {
    let d = four_areas();
    assert_eq!(bundle(&d), bundle(&d));
    let config = Config::from_json(r#"{"density_hi": 0.3}"#).unwrap();
    let other = build_report(&d, &config, &Section::ALL, "2024-06-01T00:00:00Z");
    assert_ne!(other, bundle(&d));
}
