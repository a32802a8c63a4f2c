//! Knowledge-flow graph measures: density, reciprocity, tacit/explicit
//! split, cut points, mutual cliques, most-approached actors, and the
//! density-reciprocity quadrant.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::model::{ActorKind, KnowledgeTie};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FlowError {
    #[error("need at least 2 person actors, found {persons}")]
    InsufficientActors { persons: usize },
    #[error("no person-to-person ties")]
    NoPersonTies,
    #[error("no ties")]
    NoTies,
    #[error("actor '{0}' is not part of the graph")]
    UnknownActor(String),
    #[error("invalid tie {from}->{to}: {reason}")]
    InvalidTie { from: String, to: String, reason: &'static str },
}

/// Directed, weighted who-approaches-whom graph for one knowledge area.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowGraph {
    area: String,
    actors: BTreeMap<String, ActorKind>,
    ties: Vec<KnowledgeTie>,
}

impl FlowGraph {
    pub fn empty(area: impl Into<String>) -> Self {
        Self { area: area.into(), actors: BTreeMap::new(), ties: Vec::new() }
    }

    /// Build a graph from `(id, kind)` actors and `(source, target, weight)` ties.
    pub fn from_parts<'a>(
        area: impl Into<String>,
        actors: impl IntoIterator<Item = (&'a str, ActorKind)>,
        ties: impl IntoIterator<Item = (&'a str, &'a str, u32)>,
    ) -> Result<Self, FlowError> {
        let mut g = Self::empty(area);
        for (id, kind) in actors {
            g.add_actor(id, kind);
        }
        for (s, t, w) in ties {
            let tie = KnowledgeTie::new(g.area.clone(), s, t).with_weight(w);
            g.add_tie(tie)?;
        }
        Ok(g)
    }

    /// Adds an actor. An id that is already present keeps its original kind.
    pub fn add_actor(&mut self, id: impl Into<String>, kind: ActorKind) -> bool {
        let id = id.into();
        if self.actors.contains_key(&id) {
            return false;
        }
        self.actors.insert(id, kind);
        true
    }

    pub fn add_tie(&mut self, tie: KnowledgeTie) -> Result<(), FlowError> {
        let invalid = |reason| FlowError::InvalidTie { from: tie.source.clone(), to: tie.target.clone(), reason };
        let source_kind = *self.actors.get(&tie.source).ok_or_else(|| FlowError::UnknownActor(tie.source.clone()))?;
        if !self.actors.contains_key(&tie.target) {
            return Err(FlowError::UnknownActor(tie.target.clone()));
        }
        if source_kind != ActorKind::Person {
            return Err(invalid("repositories never originate ties"));
        }
        if tie.source == tie.target {
            return Err(invalid("self tie"));
        }
        if tie.weight == 0 {
            return Err(invalid("weight must be >= 1"));
        }
        if self.ties.iter().any(|t| t.source == tie.source && t.target == tie.target) {
            return Err(invalid("duplicate tie"));
        }
        self.ties.push(KnowledgeTie { area: self.area.clone(), ..tie });
        Ok(())
    }

    pub fn area(&self) -> &str {
        &self.area
    }

    pub fn ties(&self) -> &[KnowledgeTie] {
        &self.ties
    }

    pub fn kind_of(&self, id: &str) -> Option<ActorKind> {
        self.actors.get(id).copied()
    }

    pub fn actors(&self) -> impl Iterator<Item = (&str, ActorKind)> {
        self.actors.iter().map(|(id, k)| (id.as_str(), *k))
    }

    pub fn actor_count(&self) -> usize {
        self.actors.len()
    }

    pub fn persons(&self) -> impl Iterator<Item = &str> {
        self.actors().filter(|(_, k)| *k == ActorKind::Person).map(|(id, _)| id)
    }

    pub fn person_count(&self) -> usize {
        self.persons().count()
    }

    fn is_person(&self, id: &str) -> bool {
        self.kind_of(id) == Some(ActorKind::Person)
    }

    /// Ties whose target is also a person (tacit flow).
    pub fn person_ties(&self) -> impl Iterator<Item = &KnowledgeTie> {
        self.ties.iter().filter(|t| self.is_person(&t.target))
    }

    /// Unordered person pairs tied in both directions, each as `(lo, hi)`.
    pub fn mutual_pairs(&self) -> BTreeSet<(&str, &str)> {
        let directed: BTreeSet<(&str, &str)> =
            self.person_ties().map(|t| (t.source.as_str(), t.target.as_str())).collect();
        directed.iter().filter(|(a, b)| a < b && directed.contains(&(*b, *a))).copied().collect()
    }

    /// Undirected adjacency over every actor (persons and repositories).
    pub fn undirected_adjacency(&self) -> BTreeMap<&str, BTreeSet<&str>> {
        let mut adj: BTreeMap<&str, BTreeSet<&str>> = self.actors.keys().map(|k| (k.as_str(), BTreeSet::new())).collect();
        for t in &self.ties {
            adj.entry(t.source.as_str()).or_default().insert(t.target.as_str());
            adj.entry(t.target.as_str()).or_default().insert(t.source.as_str());
        }
        adj
    }
}

/// Person-to-person ties over the `p(p-1)` ordered person pairs.
pub fn density(g: &FlowGraph) -> Result<f64, FlowError> {
    let p = g.person_count();
    if p < 2 {
        return Err(FlowError::InsufficientActors { persons: p });
    }
    Ok(g.person_ties().count() as f64 / (p * (p - 1)) as f64)
}

/// Percentage of person-to-person ties whose reverse tie also exists.
pub fn reciprocity(g: &FlowGraph) -> Result<f64, FlowError> {
    let directed: BTreeSet<(&str, &str)> = g.person_ties().map(|t| (t.source.as_str(), t.target.as_str())).collect();
    if directed.is_empty() {
        return Err(FlowError::NoPersonTies);
    }
    let reciprocated = directed.iter().filter(|(a, b)| directed.contains(&(*b, *a))).count();
    Ok(100.0 * reciprocated as f64 / directed.len() as f64)
}

/// `(tacit_pct, explicit_pct)`: shares of ties that reach a person versus a repository.
pub fn tacit_explicit_split(g: &FlowGraph) -> Result<(f64, f64), FlowError> {
    let total = g.ties().len();
    if total == 0 {
        return Err(FlowError::NoTies);
    }
    let tacit = 100.0 * g.person_ties().count() as f64 / total as f64;
    Ok((tacit, 100.0 - tacit))
}

/// Persons whose removal splits the undirected projection of the graph.
///
/// Components are counted among actors with at least one tie, so a person
/// connected only through a repository still counts as connected.
pub fn cut_points(g: &FlowGraph) -> BTreeSet<String> {
    if g.actor_count() < 3 {
        return BTreeSet::new();
    }
    let adj = g.undirected_adjacency();
    let nodes: Vec<&str> = adj.iter().filter(|(_, n)| !n.is_empty()).map(|(k, _)| *k).collect();
    let index: BTreeMap<&str, usize> = nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let neighbours: Vec<Vec<usize>> = nodes.iter().map(|n| adj[n].iter().map(|m| index[m]).collect()).collect();

    let articulation = articulation_points(&neighbours);
    articulation.into_iter().map(|i| nodes[i]).filter(|id| g.is_person(id)).map(str::to_string).collect()
}

/// Iterative Hopcroft-Tarjan low-link search.
fn articulation_points(adj: &[Vec<usize>]) -> BTreeSet<usize> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![usize::MAX; n];
    let mut found = BTreeSet::new();
    let mut clock = 0;

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        let mut root_children = 0;
        // (node, next neighbour index)
        let mut stack = vec![(root, 0usize)];
        disc[root] = clock;
        low[root] = clock;
        clock += 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&w) = adj[v].get(*next) {
                *next += 1;
                if disc[w] == usize::MAX {
                    parent[w] = v;
                    disc[w] = clock;
                    low[w] = clock;
                    clock += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, 0));
                } else if w != parent[v] {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                let p = parent[v];
                if p != usize::MAX {
                    low[p] = low[p].min(low[v]);
                    if p != root && low[v] >= disc[p] {
                        found.insert(p);
                    }
                }
            }
        }
        if root_children > 1 {
            found.insert(root);
        }
    }
    found
}

/// Maximal cliques (size >= 3) of the mutual person-tie graph, largest first,
/// then lexicographic. Members of each clique are sorted.
pub fn mutual_cliques(g: &FlowGraph) -> Vec<Vec<String>> {
    let mut adj: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for (a, b) in g.mutual_pairs() {
        adj.entry(a).or_default().insert(b);
        adj.entry(b).or_default().insert(a);
    }
    let mut cliques = Vec::new();
    let candidates: BTreeSet<&str> = adj.keys().copied().collect();
    bron_kerbosch(&adj, &mut Vec::new(), candidates, BTreeSet::new(), &mut cliques);

    let mut out: Vec<Vec<String>> = cliques
        .into_iter()
        .filter(|c| c.len() >= 3)
        .map(|mut c| {
            c.sort_unstable();
            c.into_iter().map(str::to_string).collect()
        })
        .collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    out
}

fn bron_kerbosch<'a>(
    adj: &BTreeMap<&'a str, BTreeSet<&'a str>>,
    current: &mut Vec<&'a str>,
    mut candidates: BTreeSet<&'a str>,
    mut excluded: BTreeSet<&'a str>,
    out: &mut Vec<Vec<&'a str>>,
) {
    if candidates.is_empty() {
        if excluded.is_empty() {
            out.push(current.clone());
        }
        return;
    }
    let pivot = candidates
        .iter()
        .chain(excluded.iter())
        .max_by_key(|u| adj[*u].intersection(&candidates).count())
        .copied()
        .expect("candidates is non-empty");
    let branch: Vec<&str> = candidates.difference(&adj[pivot]).copied().collect();
    for v in branch {
        let nv = &adj[v];
        current.push(v);
        bron_kerbosch(
            adj,
            current,
            candidates.intersection(nv).copied().collect(),
            excluded.intersection(nv).copied().collect(),
            out,
        );
        current.pop();
        candidates.remove(v);
        excluded.insert(v);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Approached {
    pub actor: String,
    pub in_degree: usize,
    pub weighted_in_degree: u64,
}

/// Top-`k` approached actors by in-degree, then summed weight, then id.
/// Actors nobody approaches are not listed.
pub fn most_approached(g: &FlowGraph, k: usize) -> Vec<Approached> {
    let mut tally: BTreeMap<&str, (usize, u64)> = BTreeMap::new();
    for t in g.ties() {
        let e = tally.entry(t.target.as_str()).or_default();
        e.0 += 1;
        e.1 += u64::from(t.weight);
    }
    let mut ranked: Vec<Approached> = tally
        .into_iter()
        .map(|(actor, (in_degree, weighted))| Approached {
            actor: actor.to_string(),
            in_degree,
            weighted_in_degree: weighted,
        })
        .collect();
    ranked.sort_by(|a, b| {
        b.in_degree
            .cmp(&a.in_degree)
            .then(b.weighted_in_degree.cmp(&a.weighted_in_degree))
            .then_with(|| a.actor.cmp(&b.actor))
    });
    ranked.truncate(k);
    ranked
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlowThresholds {
    pub density_hi: f64,
    /// Percentage.
    pub reciprocity_hi: f64,
}

impl Default for FlowThresholds {
    fn default() -> Self {
        Self { density_hi: 0.5, reciprocity_hi: 40.0 }
    }
}

/// Position on the density-reciprocity plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Quadrant {
    /// Dense and reciprocal: ready for a community of practice.
    CoPReady,
    /// Dense but one-directional: improving reciprocity pays off fastest.
    QuickWin,
    /// Reciprocal but sparse.
    ExpandNetwork,
    Foundational,
}

impl Quadrant {
    pub fn classify(density: Option<f64>, reciprocity: Option<f64>, t: &FlowThresholds) -> Self {
        let (Some(d), Some(r)) = (density, reciprocity) else {
            return Quadrant::Foundational;
        };
        match (d >= t.density_hi, r >= t.reciprocity_hi) {
            (true, true) => Quadrant::CoPReady,
            (true, false) => Quadrant::QuickWin,
            (false, true) => Quadrant::ExpandNetwork,
            (false, false) => Quadrant::Foundational,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowSummary {
    pub area: String,
    pub density: Option<f64>,
    pub reciprocity: Option<f64>,
    pub tacit_pct: Option<f64>,
    pub explicit_pct: Option<f64>,
    pub cut_points: BTreeSet<String>,
    pub cliques: Vec<Vec<String>>,
    pub most_approached: Vec<Approached>,
    pub quadrant: Quadrant,
}

/// All flow measures for one area.
///
/// Fails only when the area has fewer than two persons. Reciprocity or the
/// tacit split may still be undefined; the quadrant is then `Foundational`.
pub fn flow_summary(g: &FlowGraph, thresholds: &FlowThresholds, k: usize) -> Result<FlowSummary, FlowError> {
    let density = density(g)?;
    let reciprocity = reciprocity(g).ok();
    let split = tacit_explicit_split(g).ok();
    Ok(FlowSummary {
        area: g.area().to_string(),
        density: Some(density),
        reciprocity,
        tacit_pct: split.map(|s| s.0),
        explicit_pct: split.map(|s| s.1),
        cut_points: cut_points(g),
        cliques: mutual_cliques(g),
        most_approached: most_approached(g, k),
        quadrant: Quadrant::classify(Some(density), reciprocity, thresholds),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ActorKind::{Person, Repository};

    fn graph(persons: &[&'static str], repos: &[&'static str], ties: &[(&'static str, &'static str)]) -> FlowGraph {
        let actors = persons.iter().map(|p| (*p, Person)).chain(repos.iter().map(|r| (*r, Repository)));
        FlowGraph::from_parts("x", actors, ties.iter().map(|(s, t)| (*s, *t, 1))).unwrap()
    }

    #[test]
    fn density_examples() {
        let all = [("A", "B"), ("B", "A"), ("A", "C"), ("C", "A"), ("B", "C"), ("C", "B")];
        assert_eq!(density(&graph(&["A", "B", "C"], &[], &all)).unwrap(), 1.0);
        let g = graph(&["A", "B", "C", "D"], &[], &[("A", "B"), ("B", "A"), ("C", "A")]);
        assert_eq!(density(&g).unwrap(), 0.25);
        assert_eq!(density(&graph(&["A", "B", "C", "D"], &[], &[])).unwrap(), 0.0);
        assert_eq!(density(&graph(&["A"], &["R"], &[("A", "R")])), Err(FlowError::InsufficientActors { persons: 1 }));
    }

    #[test]
    fn repository_ties_do_not_change_density() {
        let g = graph(&["A", "B"], &["R"], &[("A", "B"), ("A", "R"), ("B", "R")]);
        assert_eq!(density(&g).unwrap(), 0.5);
    }

    #[test]
    fn reciprocity_examples() {
        let g = graph(&["A", "B", "C"], &[], &[("A", "B"), ("B", "A"), ("C", "A")]);
        assert!((reciprocity(&g).unwrap() - 200.0 / 3.0).abs() < 1e-12);
        let star = graph(&["A", "B", "C", "D"], &[], &[("A", "B"), ("A", "C"), ("A", "D")]);
        assert_eq!(reciprocity(&star).unwrap(), 0.0);
        let mutual = graph(&["A", "B"], &[], &[("A", "B"), ("B", "A")]);
        assert_eq!(reciprocity(&mutual).unwrap(), 100.0);
        assert_eq!(reciprocity(&graph(&["A"], &["R"], &[("A", "R")])), Err(FlowError::NoPersonTies));
    }

    #[test]
    fn split_examples() {
        let g = graph(&["A", "B", "C"], &["Repo"], &[("A", "B"), ("B", "A"), ("C", "A"), ("A", "Repo")]);
        assert_eq!(tacit_explicit_split(&g).unwrap(), (75.0, 25.0));
        let g = graph(&["A", "B"], &["R"], &[("A", "R"), ("B", "R")]);
        assert_eq!(tacit_explicit_split(&g).unwrap(), (0.0, 100.0));
        let g = graph(&["A", "B"], &[], &[("A", "B")]);
        assert_eq!(tacit_explicit_split(&g).unwrap(), (100.0, 0.0));
        assert_eq!(tacit_explicit_split(&graph(&["A"], &[], &[])), Err(FlowError::NoTies));
    }

    #[test]
    fn cut_point_examples() {
        let g = graph(&["P1", "P2", "P3"], &[], &[("P1", "P2"), ("P3", "P2")]);
        assert_eq!(cut_points(&g), BTreeSet::from(["P2".to_string()]));
        let tri = graph(&["A", "B", "C"], &[], &[("A", "B"), ("B", "C"), ("C", "A")]);
        assert!(cut_points(&tri).is_empty());
    }

    #[test]
    fn repository_bridge_is_not_reported() {
        // R joins two otherwise separate pairs but is not a person
        let g = graph(&["A", "B", "C", "D"], &["R"], &[("A", "B"), ("A", "R"), ("C", "R"), ("C", "D")]);
        assert_eq!(cut_points(&g), BTreeSet::from(["A".to_string(), "C".to_string()]));
    }

    #[test]
    fn person_reaching_only_a_repository_is_connected() {
        let g = graph(&["A", "B", "C"], &["R"], &[("A", "B"), ("B", "C"), ("C", "A"), ("A", "R"), ("B", "R")]);
        assert!(cut_points(&g).is_empty());
    }

    #[test]
    fn clique_examples() {
        let both = |a, b| [(a, b), (b, a)];
        let mut ties: Vec<_> = [both("A", "B"), both("B", "C"), both("A", "C")].concat();
        assert_eq!(mutual_cliques(&graph(&["A", "B", "C"], &[], &ties)), vec![vec!["A", "B", "C"]]);
        ties.extend([both("B", "D"), both("C", "D")].concat());
        assert_eq!(
            mutual_cliques(&graph(&["A", "B", "C", "D"], &[], &ties)),
            vec![vec!["A", "B", "C"], vec!["B", "C", "D"]]
        );
        let star = graph(&["A", "B", "C", "D"], &[], &[("A", "B"), ("A", "C"), ("A", "D")]);
        assert!(mutual_cliques(&star).is_empty());
    }

    #[test]
    fn most_approached_examples() {
        let g = graph(&["A", "B", "C"], &["R"], &[("A", "R"), ("B", "R"), ("C", "R"), ("A", "B")]);
        let top = most_approached(&g, 1);
        assert_eq!(top, vec![Approached { actor: "R".into(), in_degree: 3, weighted_in_degree: 3 }]);
        assert!(most_approached(&graph(&["A", "B"], &[], &[]), 3).is_empty());

        let g = FlowGraph::from_parts(
            "x",
            [("John", Person), ("Amy", Person), ("Portal", Repository), ("Wiki", Repository)],
            [("John", "Wiki", 1), ("John", "Portal", 5)],
        )
        .unwrap();
        let top = most_approached(&g, 2);
        assert_eq!(top[0].actor, "Portal");
        assert_eq!(top[1].actor, "Wiki");
    }

    #[test]
    fn quadrants() {
        let t = FlowThresholds::default();
        assert_eq!(Quadrant::classify(Some(0.81), Some(60.0), &t), Quadrant::CoPReady);
        assert_eq!(Quadrant::classify(Some(0.60), Some(20.0), &t), Quadrant::QuickWin);
        assert_eq!(Quadrant::classify(Some(0.20), Some(60.0), &t), Quadrant::ExpandNetwork);
        assert_eq!(Quadrant::classify(Some(0.20), Some(10.0), &t), Quadrant::Foundational);
        assert_eq!(Quadrant::classify(Some(0.90), None, &t), Quadrant::Foundational);
    }

    #[test]
    fn invalid_ties_are_rejected() {
        let mut g = graph(&["A", "B"], &["R"], &[("A", "B")]);
        assert!(matches!(g.add_tie(KnowledgeTie::new("x", "R", "A")), Err(FlowError::InvalidTie { .. })));
        assert!(matches!(g.add_tie(KnowledgeTie::new("x", "A", "A")), Err(FlowError::InvalidTie { .. })));
        assert!(matches!(g.add_tie(KnowledgeTie::new("x", "A", "B")), Err(FlowError::InvalidTie { .. })));
        assert_eq!(g.add_tie(KnowledgeTie::new("x", "A", "Z")), Err(FlowError::UnknownActor("Z".into())));
    }

    #[test]
    fn summary_without_person_ties_is_foundational() {
        let g = graph(&["A", "B"], &[], &[]);
        let s = flow_summary(&g, &FlowThresholds::default(), 3).unwrap();
        assert_eq!(s.density, Some(0.0));
        assert_eq!(s.reciprocity, None);
        assert_eq!(s.quadrant, Quadrant::Foundational);
    }
}
