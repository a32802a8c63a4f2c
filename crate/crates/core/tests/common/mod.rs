//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use kvstream::flow::FlowGraph;
use kvstream::model::ActorKind;
use proptest::prelude::*;
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn schema() -> serde_json::Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/kvstream_report_v1.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).expect("schema file")).expect("schema json")
}

/// Small directed graph over nodes `n0..n{k}` as an adjacency matrix.
#[derive(Debug, Clone)]
pub struct SmallGraph {
    pub kinds: Vec<ActorKind>,
    pub edges: BTreeSet<(usize, usize)>,
}

impl SmallGraph {
    pub fn id(i: usize) -> String {
        format!("n{i}")
    }

    pub fn n(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_person(&self, i: usize) -> bool {
        self.kinds[i] == ActorKind::Person
    }

    /// Keeps only edges a flow graph accepts: person sources, no loops.
    pub fn build(kinds: Vec<ActorKind>, candidate: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges = candidate
            .into_iter()
            .filter(|&(s, t)| s != t && s < kinds.len() && t < kinds.len() && kinds[s] == ActorKind::Person)
            .collect();
        Self { kinds, edges }
    }

    pub fn random(rng: &mut impl Rng, max_nodes: usize) -> Self {
        let n = rng.random_range(1..=max_nodes);
        let person_share = rng.random_range(0.3..1.0);
        let kinds: Vec<ActorKind> = (0..n)
            .map(|_| if rng.random_bool(person_share) { ActorKind::Person } else { ActorKind::Repository })
            .collect();
        let p_edge = rng.random_range(0.05..0.8);
        let mut pairs = Vec::new();
        for s in 0..n {
            for t in 0..n {
                if rng.random_bool(p_edge) {
                    pairs.push((s, t));
                }
            }
        }
        Self::build(kinds, pairs)
    }

    pub fn to_flow(&self) -> FlowGraph {
        let ids: Vec<String> = (0..self.n()).map(Self::id).collect();
        FlowGraph::from_parts(
            "area",
            ids.iter().zip(&self.kinds).map(|(id, k)| (id.as_str(), *k)),
            self.edges.iter().map(|&(s, t)| (ids[s].as_str(), ids[t].as_str(), 1)),
        )
        .expect("generated graph is valid")
    }

    fn has(&self, s: usize, t: usize) -> bool {
        self.edges.contains(&(s, t))
    }

    fn persons(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.is_person(i)).collect()
    }
}

pub fn arb_graph(max_nodes: usize) -> impl Strategy<Value = SmallGraph> {
    (1..=max_nodes)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(prop::bool::weighted(0.7), n),
                prop::collection::vec(prop::bool::ANY, n * n),
            )
        })
        .prop_map(|(person, bits)| {
            let n = person.len();
            let kinds = person.iter().map(|&p| if p { ActorKind::Person } else { ActorKind::Repository }).collect();
            let pairs = bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| (i / n, i % n)).collect::<Vec<_>>();
            SmallGraph::build(kinds, pairs)
        })
}

pub fn oracle_density(g: &SmallGraph) -> Option<f64> {
    let p = g.persons();
    if p.len() < 2 {
        return None;
    }
    let mut ties = 0usize;
    for &a in &p {
        for &b in &p {
            if a != b && g.has(a, b) {
                ties += 1;
            }
        }
    }
    Some(ties as f64 / (p.len() * (p.len() - 1)) as f64)
}

pub fn oracle_reciprocity(g: &SmallGraph) -> Option<f64> {
    let mut total = 0usize;
    let mut mutual = 0usize;
    for &(s, t) in &g.edges {
        if g.is_person(t) {
            total += 1;
            if g.has(t, s) {
                mutual += 1;
            }
        }
    }
    (total > 0).then(|| 100.0 * mutual as f64 / total as f64)
}

pub fn oracle_split(g: &SmallGraph) -> Option<(f64, f64)> {
    let total = g.edges.len();
    if total == 0 {
        return None;
    }
    let tacit = 100.0 * g.edges.iter().filter(|(_, t)| g.is_person(*t)).count() as f64 / total as f64;
    Some((tacit, 100.0 - tacit))
}

fn components(nodes: &BTreeSet<usize>, g: &SmallGraph) -> usize {
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for &start in nodes {
        if !seen.insert(start) {
            continue;
        }
        count += 1;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in nodes {
                if (g.has(u, v) || g.has(v, u)) && seen.insert(v) {
                    stack.push(v);
                }
            }
        }
    }
    count
}

/// Persons whose deletion raises the number of connected components among
/// actors that have at least one tie.
pub fn oracle_cut_points(g: &SmallGraph) -> BTreeSet<String> {
    let active: BTreeSet<usize> = (0..g.n()).filter(|&i| g.edges.iter().any(|&(s, t)| s == i || t == i)).collect();
    let base = components(&active, g);
    active
        .iter()
        .filter(|&&v| g.is_person(v))
        .filter(|&&v| {
            let mut rest = active.clone();
            rest.remove(&v);
            components(&rest, g) > base
        })
        .map(|&v| SmallGraph::id(v))
        .collect()
}

/// Every maximal set of three or more persons tied both ways pairwise.
pub fn oracle_cliques(g: &SmallGraph) -> Vec<Vec<String>> {
    let persons = g.persons();
    let mutual = |a: usize, b: usize| g.has(a, b) && g.has(b, a);
    let is_clique = |set: &[usize]| set.iter().all(|&a| set.iter().all(|&b| a == b || mutual(a, b)));
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..(1 << persons.len()) {
        let set: Vec<usize> = persons.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &p)| p).collect();
        if set.len() < 3 || !is_clique(&set) {
            continue;
        }
        let maximal = persons.iter().filter(|p| !set.contains(p)).all(|&p| {
            let mut bigger = set.clone();
            bigger.push(p);
            !is_clique(&bigger)
        });
        if maximal {
            cliques.push(set);
        }
    }
    let mut out: Vec<Vec<String>> = cliques
        .into_iter()
        .map(|c| {
            let mut ids: Vec<String> = c.into_iter().map(SmallGraph::id).collect();
            ids.sort();
            ids
        })
        .collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    out
}

/// Leading eigenpair of a symmetric 2x2 matrix, largest-magnitude entry
/// of the vector made positive.
pub fn closed_form_2x2(a: f64, b: f64, c: f64) -> (f64, [f64; 2]) {
    let mid = (a + c) / 2.0;
    let radius = (((a - c) / 2.0).powi(2) + b * b).sqrt();
    let lambda = mid + radius;
    let mut v = if b != 0.0 {
        [lambda - c, b]
    } else if a >= c {
        [1.0, 0.0]
    } else {
        [0.0, 1.0]
    };
    let norm = (v[0] * v[0] + v[1] * v[1]).sqrt();
    v = [v[0] / norm, v[1] / norm];
    let lead = if v[1].abs() > v[0].abs() { v[1] } else { v[0] };
    if lead < 0.0 {
        v = [-v[0], -v[1]];
    }
    (lambda, v)
}

pub fn sample_cov_2(rows: &[Vec<f64>]) -> (f64, f64, f64) {
    let n = rows.len() as f64;
    let mx = rows.iter().map(|r| r[0]).sum::<f64>() / n;
    let my = rows.iter().map(|r| r[1]).sum::<f64>() / n;
    let sxx = rows.iter().map(|r| (r[0] - mx) * (r[0] - mx)).sum::<f64>() / (n - 1.0);
    let sxy = rows.iter().map(|r| (r[0] - mx) * (r[1] - my)).sum::<f64>() / (n - 1.0);
    let syy = rows.iter().map(|r| (r[1] - my) * (r[1] - my)).sum::<f64>() / (n - 1.0);
    (sxx, sxy, syy)
}

/// Sample variance of the centred rows projected on `dir`.
pub fn projected_variance(rows: &[Vec<f64>], dir: &[f64]) -> f64 {
    let n = rows.len() as f64;
    let means: Vec<f64> = (0..dir.len()).map(|j| rows.iter().map(|r| r[j]).sum::<f64>() / n).collect();
    let proj: Vec<f64> = rows.iter().map(|r| r.iter().zip(&means).zip(dir).map(|((x, m), d)| (x - m) * d).sum()).collect();
    let pm = proj.iter().sum::<f64>() / n;
    proj.iter().map(|p| (p - pm).powi(2)).sum::<f64>() / (n - 1.0)
}

/// `reach[a]` holds every level reachable upwards from `a`, by Warshall.
pub fn transitive_closure(levels: &[&str], order: &[(&str, &str)]) -> BTreeMap<String, BTreeSet<String>> {
    let n = levels.len();
    let idx = |s: &str| levels.iter().position(|l| *l == s).expect("declared level");
    let mut m = vec![vec![false; n]; n];
    for (lo, hi) in order {
        m[idx(lo)][idx(hi)] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if m[i][k] && m[k][j] {
                    m[i][j] = true;
                }
            }
        }
    }
    (0..n)
        .map(|i| (levels[i].to_string(), (0..n).filter(|&j| m[i][j]).map(|j| levels[j].to_string()).collect()))
        .collect()
}
