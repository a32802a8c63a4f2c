mod common;

use std::collections::BTreeSet;

use common::transitive_closure;
use kvstream::model::{GapAssessment, UncertaintySpec, UvScenario};
use kvstream::scenario::*;
use proptest::prelude::*;

use UvScenario::*;

fn gaps(actual: &[&str], perceived: &[&str]) -> GapScenario {
    classify_gap_scenario(&GapAssessment::new("d", actual.iter().copied(), perceived.iter().copied()))
}

#[test]
fn gap_examples() {
    assert_eq!(gaps(&["g1", "g2"], &["g1", "g2"]).kind, GapKind::Efficient);
    let illusory = gaps(&["g1", "g2"], &["g1"]);
    assert_eq!((illusory.kind, illusory.unknown_unknowns), (GapKind::IllusoryProgress, 1));
    let excess = gaps(&["g1"], &["g1", "g2"]);
    assert_eq!((excess.kind, excess.phantom_gaps), (GapKind::ExcessWaste, 1));
    let mixed = gaps(&["g1", "g2"], &["g2", "g3"]);
    assert_eq!((mixed.kind, mixed.unknown_unknowns, mixed.phantom_gaps), (GapKind::Mixed, 1, 1));
}

#[test]
fn uv_examples() {
    assert_eq!(classify_uv(false, false), Ok(UV1));
    assert_eq!(classify_uv(false, true), Ok(UV2));
    assert_eq!(classify_uv(true, true), Ok(UV3));
    assert_eq!(classify_uv(true, false), Err(ScenarioError::UndefinedScenario));
}

#[test]
fn perception_examples() {
    let c = perception_reality_cell(UV1, UV1);
    assert_eq!((c.alignment, c.waste_kind), (Alignment::Aligned, WasteKind::None));
    let c = perception_reality_cell(UV1, UV3);
    assert_eq!((c.alignment, c.waste_kind), (Alignment::HighWaste, WasteKind::Illusory));
    let c = perception_reality_cell(UV3, UV1);
    assert_eq!((c.alignment, c.waste_kind), (Alignment::HighWaste, WasteKind::Excess));
    let c = perception_reality_cell(UV2, UV1);
    assert_eq!((c.alignment, c.waste_kind), (Alignment::ModerateWaste, WasteKind::Excess));
}

#[test]
fn approaches_and_stages() {
    assert_eq!(recommend_approach(UV1), DesignApproach::PointBased);
    assert_eq!(recommend_approach(UV2), DesignApproach::SetBased);
    assert_eq!(recommend_approach(UV3), DesignApproach::RapidLearningCycles);
    assert_eq!(expected_uv_for_stage(LifecycleStage::Infancy), UV3);
    assert_eq!(expected_uv_for_stage(LifecycleStage::Growth), UV2);
    assert_eq!(expected_uv_for_stage(LifecycleStage::Maturity), UV1);
}

#[test]
fn poset_examples() {
    let lmh = UncertaintyScale::low_medium_high();
    assert_eq!(poset_compare(&lmh, "Low", "High"), Ok(PosetOrdering::Less));
    assert_eq!(poset_compare(&lmh, "High", "Medium"), Ok(PosetOrdering::Greater));
    assert_eq!(poset_compare(&lmh, "Medium", "Medium"), Ok(PosetOrdering::Equal));
    assert_eq!(poset_compare(&lmh, "Low", "Huge"), Err(ScenarioError::UnknownLevel("Huge".into())));

    let branches = UncertaintyScale::new(&["root", "a", "b"], &[("root", "a"), ("root", "b")]).unwrap();
    assert_eq!(poset_compare(&branches, "a", "b"), Ok(PosetOrdering::Incomparable));
    assert_eq!(poset_compare(&branches, "root", "b"), Ok(PosetOrdering::Less));

    let pct = UncertaintyScale::percentage();
    assert_eq!(poset_compare(&pct, "15", "85"), Ok(PosetOrdering::Less));
    assert_eq!(pct.levels().count(), 101);

    let cyclic = UncertaintySpec {
        levels: vec!["a".into(), "b".into()],
        order: vec![("a".into(), "b".into()), ("b".into(), "a".into())],
    };
    assert!(matches!(UncertaintyScale::from_spec(&cyclic), Err(ScenarioError::InvalidPoset(_))));
}

const LEVELS: [&str; 6] = ["l0", "l1", "l2", "l3", "l4", "l5"];

/// Random DAG on up to six levels: edges only run from lower to higher index.
fn arb_poset() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=6).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let len = pairs.len();
        (Just(n), prop::collection::vec(any::<bool>(), len)).prop_map(move |(n, keep)| {
            (n, pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| *p).collect())
        })
    })
}

proptest! {
    #[test]
    fn gap_kind_depends_only_on_contents(
        actual in prop::collection::vec("g[0-5]", 0..6),
        perceived in prop::collection::vec("g[0-5]", 0..6),
    ) {
        let base = classify_gap_scenario(&GapAssessment::new("d", actual.clone(), perceived.clone()));
        let mut a2 = actual.clone();
        a2.reverse();
        a2.extend(actual.iter().cloned());
        let mut p2 = perceived.clone();
        p2.reverse();
        p2.extend(perceived.iter().cloned());
        let again = classify_gap_scenario(&GapAssessment::new("d", a2, p2));
        prop_assert_eq!(base, again);
    }

    #[test]
    fn poset_matches_closure((n, edges) in arb_poset(), relabel in any::<bool>()) {
        let levels: Vec<&str> = LEVELS[..n].to_vec();
        let levels: Vec<&str> = if relabel { levels.into_iter().rev().collect() } else { levels };
        let order: Vec<(&str, &str)> = edges.iter().map(|&(a, b)| (levels[a], levels[b])).collect();
        let scale = UncertaintyScale::new(&levels, &order).unwrap();
        let reach = transitive_closure(&levels, &order);
        for a in &levels {
            for b in &levels {
                let got = poset_compare(&scale, a, b).unwrap();
                let want = if a == b {
                    PosetOrdering::Equal
                } else if reach[*a].contains(*b) {
                    PosetOrdering::Less
                } else if reach[*b].contains(*a) {
                    PosetOrdering::Greater
                } else {
                    PosetOrdering::Incomparable
                };
                prop_assert_eq!(got, want, "{} vs {}", a, b);
                prop_assert!(!(reach[*a].contains(*b) && reach[*b].contains(*a)));
            }
        }
    }

    #[test]
    fn cycles_are_rejected((n, edges) in arb_poset()) {
        prop_assume!(!edges.is_empty());
        let levels: Vec<&str> = LEVELS[..n].to_vec();
        let mut order: Vec<(&str, &str)> = edges.iter().map(|&(a, b)| (levels[a], levels[b])).collect();
        let (lo, hi) = edges[0];
        order.push((levels[hi], levels[lo]));
        prop_assert!(matches!(UncertaintyScale::new(&levels, &order), Err(ScenarioError::InvalidPoset(_))));
    }
}

#[test]
fn gap_kinds_partition_all_subset_pairs() {
    let universe = ["a", "b", "c", "d"];
    let subsets: Vec<BTreeSet<&str>> =
        (0u32..16).map(|m| universe.iter().enumerate().filter(|(i, _)| m & (1 << i) != 0).map(|(_, s)| *s).collect()).collect();
    let mut seen = std::collections::BTreeMap::new();
    for a in &subsets {
        for p in &subsets {
            let kind = classify_gap_scenario(&GapAssessment::new("d", a.iter().copied(), p.iter().copied())).kind;
            *seen.entry(kind).or_insert(0) += 1;
        }
    }
    assert_eq!(seen.values().sum::<i32>(), 256);
    // 16 equal pairs; 3^4 - 16 strict inclusions each way
    assert_eq!(seen[&GapKind::Efficient], 16);
    assert_eq!(seen[&GapKind::IllusoryProgress], 65);
    assert_eq!(seen[&GapKind::ExcessWaste], 65);
    assert_eq!(seen[&GapKind::Mixed], 110);
}
