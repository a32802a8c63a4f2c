use std::fmt::Write as _;
use std::str::FromStr;

use super::{ReportBundle, ReportError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "text" | "txt" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(ReportError::UnsupportedFormat(other.to_string())),
        }
    }
}

/// Rendered output as named files. Text and JSON produce a single file; CSV
/// produces one file per report section, each with a header row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rendered {
    pub files: Vec<(String, Vec<u8>)>,
}

impl Rendered {
    /// Everything as one stream; multiple files are separated by `# name` lines.
    pub fn into_stream(self) -> Vec<u8> {
        if self.files.len() == 1 {
            return self.files.into_iter().next().map(|(_, b)| b).unwrap_or_default();
        }
        let mut out = Vec::new();
        for (i, (name, body)) in self.files.into_iter().enumerate() {
            if i > 0 {
                out.push(b'\n');
            }
            out.extend_from_slice(format!("# {name}\n").as_bytes());
            out.extend(body);
        }
        out
    }

    pub fn file(&self, name: &str) -> Option<&[u8]> {
        self.files.iter().find(|(n, _)| n == name).map(|(_, b)| b.as_slice())
    }
}

pub fn render_report(b: &ReportBundle, format: Format) -> Result<Rendered, ReportError> {
    Ok(Rendered {
        files: match format {
            Format::Json => vec![("report.json".to_string(), render_json(b)?)],
            Format::Text => vec![("report.txt".to_string(), render_text(b).into_bytes())],
            Format::Csv => render_csv(b),
        },
    })
}

fn render_json(b: &ReportBundle) -> Result<Vec<u8>, ReportError> {
    // serde_json::Value keeps object keys sorted
    let value = serde_json::to_value(b)?;
    let mut out = serde_json::to_vec_pretty(&value)?;
    out.push(b'\n');
    Ok(out)
}

fn opt(v: Option<f64>, digits: usize) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.digits$}"))
}

fn pct(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.0}%"))
}

pub const FLOW_FLUX_HEADERS: [&str; 7] = [
    "KNOWLEDGE AREA",
    "DENSITY",
    "RECIPROCITY",
    "TACIT::EXPLICIT",
    "KNOWLEDGE FLUX",
    "KEY OBSERVATIONS FROM NETWORK GRAPH",
    "HEALTH ASSESSMENT",
];

fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells.zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        parts.join(" | ").trim_end().to_string()
    };
    let mut out = String::new();
    out.push_str(&line(&mut headers.iter().copied()));
    out.push('\n');
    out.push_str(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-+-"));
    out.push('\n');
    for r in rows {
        out.push_str(&line(&mut r.iter().map(String::as_str)));
        out.push('\n');
    }
    out
}

fn render_text(b: &ReportBundle) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Knowledge value stream report ({}), generated {}", b.schema, b.generated_at);

    if let Some(rows) = &b.flow_flux {
        let _ = writeln!(out, "\nKnowledge flow - flux analysis\n");
        let cells: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                let split = match (r.tacit_pct, r.explicit_pct) {
                    (Some(t), Some(e)) => format!("{t:.0}%:{e:.0}%"),
                    _ => "-".to_string(),
                };
                let health = match (&r.health, &r.insufficient_data) {
                    (Some(h), _) => format!("{h:?}"),
                    (None, Some(_)) => "insufficient data".to_string(),
                    (None, None) => "-".to_string(),
                };
                vec![
                    r.name.clone(),
                    opt(r.density, 2),
                    pct(r.reciprocity),
                    split,
                    opt(r.flux, 2),
                    r.observations.join("; "),
                    health,
                ]
            })
            .collect();
        out.push_str(&table(&FLOW_FLUX_HEADERS, &cells));
    }

    if let Some(flow) = &b.flow {
        let _ = writeln!(out, "\nFlow measures\n");
        let cells: Vec<Vec<String>> = flow
            .iter()
            .map(|f| match &f.summary {
                Some(s) => vec![
                    f.area.clone(),
                    opt(s.density, 2),
                    pct(s.reciprocity),
                    pct(s.tacit_pct),
                    format!("{:?}", s.quadrant),
                    s.cut_points.iter().cloned().collect::<Vec<_>>().join(", "),
                    s.cliques.iter().map(|c| format!("{{{}}}", c.join(","))).collect::<Vec<_>>().join(" "),
                    s.most_approached.iter().map(|a| format!("{}({})", a.actor, a.in_degree)).collect::<Vec<_>>().join(", "),
                ],
                None => vec![f.area.clone(), f.error.clone().unwrap_or_default()],
            })
            .collect();
        out.push_str(&table(
            &["AREA", "DENSITY", "RECIPROCITY", "TACIT", "QUADRANT", "CUT POINTS", "CLIQUES", "MOST APPROACHED"],
            &cells,
        ));
    }

    if let Some(flux) = &b.flux {
        let _ = writeln!(out, "\nKnowledge flux\n");
        let cells: Vec<Vec<String>> = flux
            .iter()
            .map(|f| match &f.assessment {
                Some(a) => vec![
                    f.area.clone(),
                    format!("{}/{}", a.tie_count, a.decision_count),
                    format!("{:.2}", a.flux),
                    a.favorable_rate.map_or_else(|| "-".into(), |r| format!("{:.0}%", 100.0 * r)),
                    format!("{:?}", a.verdict),
                    a.recommendation.clone(),
                ],
                None => vec![f.area.clone(), f.error.clone().unwrap_or_default()],
            })
            .collect();
        out.push_str(&table(&["AREA", "TIES/DECISIONS", "FLUX", "FAVORABLE", "VERDICT", "RECOMMENDATION"], &cells));
    }

    if let Some(lcc) = &b.lcc {
        let _ = writeln!(out, "\nLearning cycle consequences\n");
        for a in lcc {
            let cells: Vec<String> =
                a.distribution.counts.iter().map(|c| format!("{}/{}={}", c.consequence, c.duration.as_str(), c.count)).collect();
            let _ = writeln!(
                out,
                "{}: recorded {}, unrecorded {}, uncertainty {}, cells [{}]",
                a.area,
                a.distribution.recorded_total,
                a.distribution.unrecorded_total,
                opt(a.uncertainty, 3),
                cells.join(" ")
            );
            match (&a.projection, &a.projection_error) {
                (Some(p), _) => {
                    let pts: Vec<String> =
                        p.points.iter().map(|pt| format!("{}@{:.3}:{}", pt.decision, pt.coordinate, pt.consequence)).collect();
                    let _ = writeln!(out, "  projection over [{}]: {}", p.dims.join(", "), pts.join(" "));
                }
                (None, Some(e)) => {
                    let _ = writeln!(out, "  projection unavailable: {e}");
                }
                _ => {}
            }
        }
    }

    if let Some(g) = &b.gaps {
        let _ = writeln!(out, "\nKnowledge gap scenarios\n");
        let tally: Vec<String> = g.tally.iter().map(|(k, n)| format!("{k:?}={n}")).collect();
        let _ = writeln!(out, "tally: {}", tally.join(", "));
        for s in &g.scenarios {
            let _ = writeln!(out, "  {}: {:?} (unknown unknowns {}, phantom gaps {})", s.decision, s.kind, s.unknown_unknowns, s.phantom_gaps);
        }
        if !g.perception.is_empty() {
            let tally: Vec<String> = g.perception_tally.iter().map(|(k, n)| format!("{k:?}={n}")).collect();
            let _ = writeln!(out, "perception vs reality: {}", tally.join(", "));
            for p in &g.perception {
                let c = &p.cell;
                let _ = writeln!(out, "  {}: perceived {} actual {} -> {:?}/{:?}", p.decision, c.perceived, c.actual, c.alignment, c.waste_kind);
            }
        }
    }

    if let Some(m) = &b.maturity {
        let _ = writeln!(out, "\nCVSS maturity\n");
        let cells: Vec<Vec<String>> = m
            .iter()
            .map(|r| {
                let mut row = vec![r.team.clone(), r.timestamp.clone()];
                row.extend(r.dimensions.values().map(|d| match d {
                    Some(d) => format!("{:.1}% {:?}", d.score, d.band),
                    None => "not assessed".to_string(),
                }));
                row.push(opt(r.overall, 1));
                row
            })
            .collect();
        out.push_str(&table(&["TEAM", "TIMESTAMP", "CREATE", "VALIDATE", "STORE", "SHARE", "USE", "OVERALL"], &cells));
    }

    if let Some(p) = &b.phase {
        let _ = writeln!(out, "\nDeployment phase: {}\n", p.current_phase);
        for r in &p.rules {
            let mark = if r.satisfied { "met" } else { "unmet" };
            let _ = writeln!(out, "  phase {} exit {:<20} {:<5} {}", r.exits_phase, r.rule, mark, r.evidence);
        }
    }

    if let Some(w) = &b.waste {
        let _ = writeln!(out, "\nWaste points\n");
        for f in w {
            let mark = if f.triggered { "TRIGGERED" } else { "ok" };
            let _ = writeln!(out, "  {:<18} {:<9} {}", format!("{:?}", f.point), mark, f.evidence);
        }
    }
    out
}

fn num(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

struct Csv(csv::Writer<Vec<u8>>);

impl Csv {
    fn new<const N: usize>(header: [&str; N]) -> Self {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header).expect("in-memory write");
        Csv(w)
    }

    fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.0.write_record(cells).expect("in-memory write");
    }

    fn finish(self) -> Vec<u8> {
        self.0.into_inner().expect("in-memory flush")
    }
}

fn render_csv(b: &ReportBundle) -> Vec<(String, Vec<u8>)> {
    let mut files = Vec::new();

    if let Some(rows) = &b.flow_flux {
        let mut w = Csv::new([
            "area",
            "name",
            "density",
            "reciprocity",
            "tacit_pct",
            "explicit_pct",
            "flux",
            "observations",
            "health",
            "insufficient_data",
        ]);
        for r in rows {
            w.row([
                r.area.clone(),
                r.name.clone(),
                num(r.density),
                num(r.reciprocity),
                num(r.tacit_pct),
                num(r.explicit_pct),
                num(r.flux),
                r.observations.join("; "),
                r.health.map(|h| format!("{h:?}")).unwrap_or_default(),
                r.insufficient_data.clone().unwrap_or_default(),
            ]);
        }
        files.push(("flow_flux.csv".to_string(), w.finish()));
    }

    if let Some(flow) = &b.flow {
        let mut w = Csv::new([
            "area",
            "density",
            "reciprocity",
            "tacit_pct",
            "explicit_pct",
            "quadrant",
            "cut_points",
            "cliques",
            "most_approached",
            "error",
        ]);
        for f in flow {
            match &f.summary {
                Some(s) => w.row([
                    f.area.clone(),
                    num(s.density),
                    num(s.reciprocity),
                    num(s.tacit_pct),
                    num(s.explicit_pct),
                    format!("{:?}", s.quadrant),
                    s.cut_points.iter().cloned().collect::<Vec<_>>().join(" "),
                    s.cliques.iter().map(|c| c.join(" ")).collect::<Vec<_>>().join("; "),
                    s.most_approached.iter().map(|a| format!("{}:{}:{}", a.actor, a.in_degree, a.weighted_in_degree)).collect::<Vec<_>>().join(" "),
                    String::new(),
                ]),
                None => {
                    let mut cells = vec![f.area.clone()];
                    cells.extend(std::iter::repeat_n(String::new(), 8));
                    cells.push(f.error.clone().unwrap_or_default());
                    w.row(cells)
                }
            }
        }
        files.push(("flow.csv".to_string(), w.finish()));
    }

    if let Some(flux) = &b.flux {
        let mut w =
            Csv::new(["area", "tie_count", "decision_count", "flux", "favorable_rate", "verdict", "recommendation", "error"]);
        for f in flux {
            match &f.assessment {
                Some(a) => w.row([
                    f.area.clone(),
                    a.tie_count.to_string(),
                    a.decision_count.to_string(),
                    a.flux.to_string(),
                    num(a.favorable_rate),
                    format!("{:?}", a.verdict),
                    a.recommendation.clone(),
                    String::new(),
                ]),
                None => {
                    let mut cells = vec![f.area.clone()];
                    cells.extend(std::iter::repeat_n(String::new(), 6));
                    cells.push(f.error.clone().unwrap_or_default());
                    w.row(cells)
                }
            }
        }
        files.push(("flux.csv".to_string(), w.finish()));
    }

    if let Some(lcc) = &b.lcc {
        let mut summary = Csv::new(["area", "recorded_total", "unrecorded_total", "uncertainty", "projection_error"]);
        let mut cells = Csv::new(["area", "consequence", "duration", "count"]);
        let mut points = Csv::new(["area", "decision", "coordinate", "consequence"]);
        for a in lcc {
            summary.row([
                a.area.clone(),
                a.distribution.recorded_total.to_string(),
                a.distribution.unrecorded_total.to_string(),
                num(a.uncertainty),
                a.projection_error.clone().unwrap_or_default(),
            ]);
            for c in &a.distribution.counts {
                cells.row([a.area.clone(), c.consequence.to_string(), c.duration.as_str().to_string(), c.count.to_string()]);
            }
            for p in a.projection.iter().flat_map(|p| &p.points) {
                points.row([a.area.clone(), p.decision.clone(), p.coordinate.to_string(), p.consequence.to_string()]);
            }
        }
        files.push(("lcc_summary.csv".to_string(), summary.finish()));
        files.push(("lcc_distribution.csv".to_string(), cells.finish()));
        files.push(("lcc_projection.csv".to_string(), points.finish()));
    }

    if let Some(g) = &b.gaps {
        let mut w = Csv::new(["decision", "kind", "unknown_unknowns", "phantom_gaps"]);
        for s in &g.scenarios {
            w.row([s.decision.clone(), format!("{:?}", s.kind), s.unknown_unknowns.to_string(), s.phantom_gaps.to_string()]);
        }
        files.push(("gaps.csv".to_string(), w.finish()));
        let mut w = Csv::new(["decision", "perceived", "actual", "alignment", "waste_kind"]);
        for p in &g.perception {
            let c = &p.cell;
            w.row([
                p.decision.clone(),
                c.perceived.to_string(),
                c.actual.to_string(),
                format!("{:?}", c.alignment),
                format!("{:?}", c.waste_kind),
            ]);
        }
        files.push(("perception.csv".to_string(), w.finish()));
    }

    if let Some(m) = &b.maturity {
        let mut w = Csv::new(["team", "timestamp", "dimension", "score", "band"]);
        for r in m {
            for (dim, res) in &r.dimensions {
                match res {
                    Some(d) => w.row([r.team.clone(), r.timestamp.clone(), dim.to_string(), d.score.to_string(), format!("{:?}", d.band)]),
                    None => w.row([r.team.clone(), r.timestamp.clone(), dim.to_string(), String::new(), "not assessed".to_string()]),
                }
            }
            w.row([r.team.clone(), r.timestamp.clone(), "overall".to_string(), num(r.overall), String::new()]);
        }
        files.push(("maturity.csv".to_string(), w.finish()));
    }

    if let Some(p) = &b.phase {
        let mut w = Csv::new(["current_phase", "rule", "exits_phase", "satisfied", "evidence"]);
        for r in &p.rules {
            w.row([
                p.current_phase.to_string(),
                r.rule.to_string(),
                r.exits_phase.to_string(),
                r.satisfied.to_string(),
                r.evidence.clone(),
            ]);
        }
        files.push(("phase.csv".to_string(), w.finish()));
    }

    if let Some(waste) = &b.waste {
        let mut w = Csv::new(["point", "triggered", "evidence"]);
        for f in waste {
            w.row([format!("{:?}", f.point), f.triggered.to_string(), f.evidence.clone()]);
        }
        files.push(("waste.csv".to_string(), w.finish()));
    }
    files
}
