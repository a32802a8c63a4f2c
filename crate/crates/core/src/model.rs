//! Domain types shared by every analysis module.
//!
//! A [`Dataset`] is immutable after loading. Every analysis in this crate is
//! a pure function over it, so areas can be evaluated independently.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::flow::FlowGraph;

pub type ActorId = String;
pub type AreaId = String;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActorKind {
    /// Holds tacit knowledge.
    Person,
    /// Holds explicit knowledge (documents, databases, portals).
    Repository,
}

impl ActorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ActorKind::Person => "person",
            ActorKind::Repository => "repository",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnowledgeActor {
    pub id: ActorId,
    pub name: String,
    pub kind: ActorKind,
}

impl KnowledgeActor {
    pub fn person(id: impl Into<String>) -> Self {
        let id = id.into();
        Self { name: id.clone(), id, kind: ActorKind::Person }
    }

    pub fn repository(id: impl Into<String>) -> Self {
        let id = id.into();
        Self { name: id.clone(), id, kind: ActorKind::Repository }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnowledgeArea {
    pub id: AreaId,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Product {
    pub id: String,
    pub name: String,
}

/// A directed "who approaches whom" edge inside one knowledge area.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KnowledgeTie {
    pub area: AreaId,
    pub source: ActorId,
    pub target: ActorId,
    /// Preference weight, at least 1.
    pub weight: u32,
}

impl KnowledgeTie {
    pub fn new(area: impl Into<String>, source: impl Into<String>, target: impl Into<String>) -> Self {
        Self { area: area.into(), source: source.into(), target: target.into(), weight: 1 }
    }

    pub fn with_weight(mut self, weight: u32) -> Self {
        self.weight = weight;
        self
    }
}

/// Learning cycle consequence, from optimal (`LC1`) to significant rework (`LC4`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Consequence {
    LC1,
    LC2,
    LC3,
    LC4,
}

impl Consequence {
    pub const ALL: [Consequence; 4] = [Consequence::LC1, Consequence::LC2, Consequence::LC3, Consequence::LC4];

    /// LC1 and LC2 leave requirements intact.
    pub fn is_favorable(self) -> bool {
        matches!(self, Consequence::LC1 | Consequence::LC2)
    }
}

impl fmt::Display for Consequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CycleDuration {
    Short,
    Medium,
    Long,
}

impl CycleDuration {
    pub const ALL: [CycleDuration; 3] = [CycleDuration::Short, CycleDuration::Medium, CycleDuration::Long];

    pub fn as_str(self) -> &'static str {
        match self {
            CycleDuration::Short => "short",
            CycleDuration::Medium => "medium",
            CycleDuration::Long => "long",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LccOutcome {
    pub consequence: Consequence,
    pub duration: CycleDuration,
}

impl LccOutcome {
    pub fn new(consequence: Consequence, duration: CycleDuration) -> Self {
        Self { consequence, duration }
    }
}

/// A decision attribute: numeric values pass straight into the decision
/// matrix, categorical codes go through the codebook.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AttributeValue {
    Number(f64),
    Code(String),
}

impl From<f64> for AttributeValue {
    fn from(v: f64) -> Self {
        AttributeValue::Number(v)
    }
}

impl From<&str> for AttributeValue {
    fn from(v: &str) -> Self {
        AttributeValue::Code(v.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionRecord {
    pub id: String,
    pub product: String,
    pub area: AreaId,
    #[serde(default)]
    pub attributes: BTreeMap<String, AttributeValue>,
    #[serde(default)]
    pub actors: BTreeSet<ActorId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lcc: Option<LccOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uncertainty: Option<String>,
}

impl DecisionRecord {
    pub fn new(id: impl Into<String>, product: impl Into<String>, area: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            product: product.into(),
            area: area.into(),
            attributes: BTreeMap::new(),
            actors: BTreeSet::new(),
            lcc: None,
            uncertainty: None,
        }
    }

    pub fn with_lcc(mut self, consequence: Consequence, duration: CycleDuration) -> Self {
        self.lcc = Some(LccOutcome::new(consequence, duration));
        self
    }

    pub fn with_attribute(mut self, name: impl Into<String>, value: impl Into<AttributeValue>) -> Self {
        self.attributes.insert(name.into(), value.into());
        self
    }
}

/// Uncertainty-variability scenario. The derived ordering follows uncertainty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum UvScenario {
    /// Needs and solution both clear.
    UV1,
    /// Solution space uncertain.
    UV2,
    /// Needs and solution both uncertain.
    UV3,
}

impl UvScenario {
    pub const ALL: [UvScenario; 3] = [UvScenario::UV1, UvScenario::UV2, UvScenario::UV3];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for UvScenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Actual versus perceived knowledge gaps for one decision.
///
/// Gap ids are opaque; two gaps are the same gap iff their ids match.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapAssessment {
    pub decision: String,
    #[serde(default)]
    pub actual: BTreeSet<String>,
    #[serde(default)]
    pub perceived: BTreeSet<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perceived_uv: Option<UvScenario>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actual_uv: Option<UvScenario>,
}

impl GapAssessment {
    pub fn new<A, P, S>(decision: impl Into<String>, actual: A, perceived: P) -> Self
    where
        A: IntoIterator<Item = S>,
        P: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            decision: decision.into(),
            actual: actual.into_iter().map(Into::into).collect(),
            perceived: perceived.into_iter().map(Into::into).collect(),
            perceived_uv: None,
            actual_uv: None,
        }
    }
}

/// CVSS element of the knowledge value stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dimension {
    #[serde(alias = "CREATE", alias = "create")]
    Create,
    #[serde(alias = "VALIDATE", alias = "validate")]
    Validate,
    #[serde(alias = "STORE", alias = "store")]
    Store,
    #[serde(alias = "SHARE", alias = "share")]
    Share,
    #[serde(alias = "USE", alias = "use")]
    Use,
}

impl Dimension {
    pub const ALL: [Dimension; 5] =
        [Dimension::Create, Dimension::Validate, Dimension::Store, Dimension::Share, Dimension::Use];
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Four-level agreement rating used by scorecards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rating {
    SD,
    D,
    A,
    SA,
}

impl Rating {
    pub fn value(self) -> u32 {
        match self {
            Rating::SA => 9,
            Rating::A => 7,
            Rating::D => 3,
            Rating::SD => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScorecardItem {
    pub dimension: Dimension,
    pub statement: String,
    pub rating: Rating,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scorecard {
    pub team: String,
    /// ISO-8601, kept verbatim.
    pub timestamp: String,
    pub items: Vec<ScorecardItem>,
}

/// Uncertainty levels plus Hasse-diagram edges, as read from disk.
/// Turn it into a queryable [`crate::scenario::UncertaintyScale`] once validated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UncertaintySpec {
    pub levels: Vec<String>,
    #[serde(default)]
    pub order: Vec<(String, String)>,
}

/// attribute name -> category -> ordinal.
pub type Codebook = BTreeMap<String, BTreeMap<String, f64>>;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Dataset {
    pub actors: Vec<KnowledgeActor>,
    pub areas: Vec<KnowledgeArea>,
    pub products: Vec<Product>,
    pub ties: Vec<KnowledgeTie>,
    pub decisions: Vec<DecisionRecord>,
    pub gaps: Vec<GapAssessment>,
    pub scorecards: Vec<Scorecard>,
    pub uncertainty: Option<UncertaintySpec>,
    pub codebook: Codebook,
}

impl Dataset {
    pub fn actor(&self, id: &str) -> Option<&KnowledgeActor> {
        self.actors.iter().find(|a| a.id == id)
    }

    pub fn actor_kinds(&self) -> BTreeMap<&str, ActorKind> {
        self.actors.iter().map(|a| (a.id.as_str(), a.kind)).collect()
    }

    pub fn area(&self, id: &str) -> Option<&KnowledgeArea> {
        self.areas.iter().find(|a| a.id == id)
    }

    /// Area ids in sorted order.
    pub fn area_ids(&self) -> Vec<&str> {
        let ids: BTreeSet<&str> = self.areas.iter().map(|a| a.id.as_str()).collect();
        ids.into_iter().collect()
    }

    pub fn decision(&self, id: &str) -> Option<&DecisionRecord> {
        self.decisions.iter().find(|d| d.id == id)
    }

    pub fn decisions_in<'a>(&'a self, area: &'a str) -> impl Iterator<Item = &'a DecisionRecord> + 'a {
        self.decisions.iter().filter(move |d| d.area == area)
    }

    pub fn ties_in<'a>(&'a self, area: &'a str) -> impl Iterator<Item = &'a KnowledgeTie> + 'a {
        self.ties.iter().filter(move |t| t.area == area)
    }

    /// Knowledge-flow graph of one area.
    ///
    /// The area's actors are the endpoints of its ties together with the
    /// actors involved in its decisions. Ids that do not resolve to an actor
    /// are skipped, which a valid dataset never exercises.
    pub fn flow_graph(&self, area: &str) -> FlowGraph {
        let kinds = self.actor_kinds();
        let mut graph = FlowGraph::empty(area);
        let ties: Vec<&KnowledgeTie> = self.ties_in(area).collect();
        let members = ties
            .iter()
            .flat_map(|t| [t.source.as_str(), t.target.as_str()])
            .chain(self.decisions_in(area).flat_map(|d| d.actors.iter().map(String::as_str)));
        for id in members {
            if let Some(kind) = kinds.get(id) {
                graph.add_actor(id, *kind);
            }
        }
        for tie in ties {
            // endpoints were added above whenever they resolve
            let _ = graph.add_tie(tie.clone());
        }
        graph
    }

    /// Copy of the dataset restricted to the listed areas, keeping only the
    /// ties, decisions and gap assessments that belong to them.
    pub fn restrict_to_areas<S: AsRef<str>>(&self, keep: &[S]) -> Dataset {
        let keep: BTreeSet<&str> = keep.iter().map(AsRef::as_ref).collect();
        let decisions: Vec<DecisionRecord> =
            self.decisions.iter().filter(|d| keep.contains(d.area.as_str())).cloned().collect();
        let decision_ids: BTreeSet<&str> = decisions.iter().map(|d| d.id.as_str()).collect();
        Dataset {
            actors: self.actors.clone(),
            areas: self.areas.iter().filter(|a| keep.contains(a.id.as_str())).cloned().collect(),
            products: self.products.clone(),
            ties: self.ties.iter().filter(|t| keep.contains(t.area.as_str())).cloned().collect(),
            gaps: self.gaps.iter().filter(|g| decision_ids.contains(g.decision.as_str())).cloned().collect(),
            decisions,
            scorecards: self.scorecards.clone(),
            uncertainty: self.uncertainty.clone(),
            codebook: self.codebook.clone(),
        }
    }

    /// Learning-cycle outcome of a decision, or `None` when the cycle has not
    /// been experienced yet.
    pub fn lcc_of(&self, decision: &str) -> Option<LccOutcome> {
        self.decision(decision).and_then(|d| d.lcc)
    }
}
