use std::collections::BTreeSet;

use dft_core::oracle::NaiveGraph;
use dft_core::BlockForest;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn compare(fast: &mut BlockForest<usize>, slow: &NaiveGraph) -> Result<(), String> {
    let n = slow.len();
    let arts: BTreeSet<usize> = fast.articulation_points().unwrap().into_iter().collect();
    if arts != slow.articulation_points() {
        return Err(format!(
            "articulation points {arts:?} vs {:?}",
            slow.articulation_points()
        ));
    }
    let bridges: BTreeSet<(usize, usize)> = fast
        .bridges()
        .unwrap()
        .into_iter()
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    if bridges != slow.bridges() {
        return Err(format!("bridges {bridges:?} vs {:?}", slow.bridges()));
    }
    if fast.block_partition().unwrap() != slow.blocks() {
        return Err("block partitions differ".into());
    }
    for v in 0..n {
        let (a, b) = (fast.impact(&v).unwrap(), slow.impact(v) as i64);
        if a != b {
            return Err(format!("impact({v}) {a} vs {b}"));
        }
        let (a, b) = (
            fast.component_size(&v).unwrap(),
            slow.component_size(v) as i64,
        );
        if a != b {
            return Err(format!("component_size({v}) {a} vs {b}"));
        }
    }
    Ok(())
}

fn stream(seed: u64, n: usize, m: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fast = BlockForest::new();
    let mut slow = NaiveGraph::new();
    for v in 0..n {
        fast.add_vertex(v).unwrap();
        slow.add_vertex();
    }
    for step in 0..m {
        let u = rng.gen_range(0..n);
        // Bias towards nearby ids so that long paths and cycles both appear.
        let v = if rng.gen_ratio(3, 4) {
            (u + rng.gen_range(1..4)) % n
        } else {
            rng.gen_range(0..n)
        };
        if u == v {
            continue;
        }
        fast.insert_edge(&u, &v).unwrap();
        slow.add_edge(u, v).unwrap();
        fast.audit()
            .unwrap_or_else(|e| panic!("seed {seed} step {step}: {e}"));
        compare(&mut fast, &slow)
            .unwrap_or_else(|e| panic!("seed {seed} step {step} edge {u}-{v}: {e}"));
        for _ in 0..4 {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let is_bridge = slow.has_edge(a, b) && slow.bridges().contains(&(a.min(b), a.max(b)));
            assert_eq!(
                fast.is_bridge(&a, &b).unwrap(),
                is_bridge,
                "seed {seed} bridge {a}-{b}"
            );
            assert_eq!(fast.connected(&a, &b).unwrap(), slow.connected(a, b));
        }
    }
}

#[test]
fn random_streams_match_static_recomputation() {
    for seed in 0..30 {
        stream(seed, 30, 60);
    }
}

#[test]
fn path_then_closing_edge() {
    let mut g = BlockForest::new();
    for v in 0..6 {
        g.add_vertex(v).unwrap();
    }
    for v in 0..5 {
        g.insert_edge(&v, &(v + 1)).unwrap();
    }
    assert_eq!(g.articulation_points().unwrap().len(), 4);
    g.insert_edge(&5, &0).unwrap();
    g.audit().unwrap();
    assert!(g.articulation_points().unwrap().is_empty());
    assert_eq!(g.blocks().unwrap().len(), 1);
}
