//! Dataset invariant checks. Violations are data, not errors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::model::{ActorKind, Dataset};
use crate::scenario::{ScenarioError, UncertaintyScale};

/// Named dataset invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "&'static str")]
pub enum Rule {
    IdUnique,
    IdNonEmpty,
    TieEndpointResolves,
    AreaResolves,
    ProductResolves,
    ActorResolves,
    DecisionResolves,
    RepositoryNeverOriginates,
    NoSelfTie,
    TieUniquePerArea,
    AttributeNameNonEmpty,
    GapIdNonEmpty,
    UncertaintyLevelDeclared,
    OrderEndpointDeclared,
    OrderAcyclic,
    TimestampIso8601,
    ScorecardHasItems,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::IdUnique => "id unique",
            Rule::IdNonEmpty => "id non-empty",
            Rule::TieEndpointResolves => "tie endpoint resolves",
            Rule::AreaResolves => "area id resolves",
            Rule::ProductResolves => "product id resolves",
            Rule::ActorResolves => "actor id resolves",
            Rule::DecisionResolves => "decision id resolves",
            Rule::RepositoryNeverOriginates => "repository actors never originate ties",
            Rule::NoSelfTie => "source differs from target",
            Rule::TieUniquePerArea => "tie unique per (area, source, target)",
            Rule::AttributeNameNonEmpty => "attribute names non-empty",
            Rule::GapIdNonEmpty => "gap ids non-empty",
            Rule::UncertaintyLevelDeclared => "uncertainty level declared",
            Rule::OrderEndpointDeclared => "order endpoint declared",
            Rule::OrderAcyclic => "uncertainty order acyclic",
            Rule::TimestampIso8601 => "timestamp is ISO-8601",
            Rule::ScorecardHasItems => "scorecard has items",
        }
    }
}

impl From<Rule> for &'static str {
    fn from(r: Rule) -> Self {
        r.name()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    /// `kind:id` of the offending entity, e.g. `actor:A` or `tie:area/A->B`.
    pub entity: String,
    pub rule: Rule,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({})", self.entity, self.rule, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_rule(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

struct Collector(BTreeSet<Violation>);

impl Collector {
    fn push(&mut self, entity: String, rule: Rule, detail: impl Into<String>) {
        self.0.insert(Violation { entity, rule, detail: detail.into() });
    }
}

fn duplicates<'a>(ids: impl Iterator<Item = &'a str>) -> BTreeSet<&'a str> {
    let mut seen = BTreeSet::new();
    let mut dup = BTreeSet::new();
    for id in ids {
        if !seen.insert(id) {
            dup.insert(id);
        }
    }
    dup
}

/// Check every dataset invariant. The result is sorted and deduplicated, so
/// it does not depend on the order of input rows.
pub fn validate_dataset(d: &Dataset) -> ValidationReport {
    let mut out = Collector(BTreeSet::new());

    for (kind, ids) in [
        ("actor", d.actors.iter().map(|a| a.id.as_str()).collect::<Vec<_>>()),
        ("area", d.areas.iter().map(|a| a.id.as_str()).collect()),
        ("product", d.products.iter().map(|p| p.id.as_str()).collect()),
        ("decision", d.decisions.iter().map(|x| x.id.as_str()).collect()),
    ] {
        for id in duplicates(ids.iter().copied()) {
            out.push(format!("{kind}:{id}"), Rule::IdUnique, format!("{kind} id appears more than once"));
        }
        if ids.iter().any(|id| id.is_empty()) {
            out.push(format!("{kind}:"), Rule::IdNonEmpty, format!("{kind} with empty id"));
        }
    }

    // first occurrence wins for kind lookups; duplicates are reported above
    let mut kinds: BTreeMap<&str, ActorKind> = BTreeMap::new();
    for a in &d.actors {
        kinds.entry(a.id.as_str()).or_insert(a.kind);
    }
    let areas: BTreeSet<&str> = d.areas.iter().map(|a| a.id.as_str()).collect();
    let products: BTreeSet<&str> = d.products.iter().map(|p| p.id.as_str()).collect();
    let decisions: BTreeSet<&str> = d.decisions.iter().map(|x| x.id.as_str()).collect();

    let mut tie_keys = BTreeSet::new();
    for t in &d.ties {
        let entity = format!("tie:{}/{}->{}", t.area, t.source, t.target);
        if !areas.contains(t.area.as_str()) {
            out.push(entity.clone(), Rule::AreaResolves, format!("unknown area '{}'", t.area));
        }
        for end in [&t.source, &t.target] {
            if !kinds.contains_key(end.as_str()) {
                out.push(entity.clone(), Rule::TieEndpointResolves, format!("unknown actor '{end}'"));
            }
        }
        if kinds.get(t.source.as_str()) == Some(&ActorKind::Repository) {
            out.push(entity.clone(), Rule::RepositoryNeverOriginates, format!("'{}' is a repository", t.source));
        }
        if t.source == t.target {
            out.push(entity.clone(), Rule::NoSelfTie, "tie from an actor to itself");
        }
        if !tie_keys.insert((t.area.as_str(), t.source.as_str(), t.target.as_str())) {
            out.push(entity, Rule::TieUniquePerArea, "duplicate tie row");
        }
    }

    let scale = d.uncertainty.as_ref().map(|spec| {
        let declared: BTreeSet<&str> = spec.levels.iter().map(String::as_str).collect();
        for level in duplicates(spec.levels.iter().map(String::as_str)) {
            out.push(format!("uncertainty:{level}"), Rule::IdUnique, "level declared more than once");
        }
        let mut endpoints_ok = true;
        for (lo, hi) in &spec.order {
            for end in [lo, hi] {
                if !declared.contains(end.as_str()) {
                    endpoints_ok = false;
                    out.push(
                        format!("uncertainty:{lo}<{hi}"),
                        Rule::OrderEndpointDeclared,
                        format!("level '{end}' is not declared"),
                    );
                }
            }
        }
        if endpoints_ok {
            if let Err(ScenarioError::InvalidPoset(level)) = UncertaintyScale::from_spec(spec) {
                out.push(format!("uncertainty:{level}"), Rule::OrderAcyclic, "order contains a cycle");
            }
        }
        declared.into_iter().map(str::to_string).collect::<BTreeSet<String>>()
    });
    let levels = scale.unwrap_or_else(|| UncertaintyScale::low_medium_high().levels().cloned().collect());

    for dec in &d.decisions {
        let entity = format!("decision:{}", dec.id);
        if !areas.contains(dec.area.as_str()) {
            out.push(entity.clone(), Rule::AreaResolves, format!("unknown area '{}'", dec.area));
        }
        if !products.contains(dec.product.as_str()) {
            out.push(entity.clone(), Rule::ProductResolves, format!("unknown product '{}'", dec.product));
        }
        for actor in &dec.actors {
            if !kinds.contains_key(actor.as_str()) {
                out.push(entity.clone(), Rule::ActorResolves, format!("unknown actor '{actor}'"));
            }
        }
        if dec.attributes.keys().any(|k| k.trim().is_empty()) {
            out.push(entity.clone(), Rule::AttributeNameNonEmpty, "empty attribute name");
        }
        if let Some(level) = &dec.uncertainty {
            if !levels.contains(level) {
                out.push(entity, Rule::UncertaintyLevelDeclared, format!("unknown level '{level}'"));
            }
        }
    }

    for (i, g) in d.gaps.iter().enumerate() {
        let entity = format!("gaps:{}", g.decision);
        if !decisions.contains(g.decision.as_str()) {
            out.push(entity.clone(), Rule::DecisionResolves, format!("unknown decision (record {i})"));
        }
        if g.actual.iter().chain(&g.perceived).any(|id| id.is_empty()) {
            out.push(entity, Rule::GapIdNonEmpty, "empty gap id");
        }
    }

    for s in &d.scorecards {
        let entity = format!("scorecard:{}@{}", s.team, s.timestamp);
        if !is_iso8601(&s.timestamp) {
            out.push(entity.clone(), Rule::TimestampIso8601, format!("cannot parse '{}'", s.timestamp));
        }
        if s.items.is_empty() {
            out.push(entity, Rule::ScorecardHasItems, "no rated items");
        }
    }

    ValidationReport { violations: out.0.into_iter().collect() }
}

/// Accepts RFC 3339 date-times, naive date-times and plain dates.
pub fn is_iso8601(s: &str) -> bool {
    use chrono::{DateTime, NaiveDate, NaiveDateTime};
    DateTime::parse_from_rfc3339(s).is_ok()
        || NaiveDateTime::parse_from_str(s, "%Y-%m-%dT%H:%M:%S").is_ok()
        || NaiveDateTime::parse_from_str(s, "%Y-%m-%dT%H:%M").is_ok()
        || NaiveDate::parse_from_str(s, "%Y-%m-%d").is_ok()
}
