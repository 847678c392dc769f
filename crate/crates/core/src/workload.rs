//! Reproducible timing workloads.
//!
//! Each profile builds a forest of `n` vertices with a linear-time import,
//! then times `ops` operations drawn from a seeded generator. Only the
//! operation loop is timed.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::forest::{Forest, RootedTree, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Profile {
    /// Mostly navigation and subtree queries on a random tree, with some
    /// cut and relink pairs.
    QueryHeavy,
    /// Re-rooting a single path at random vertices.
    EvertHeavy,
    /// An even mix of structural updates and queries.
    Mixed,
}

impl Profile {
    pub const ALL: [Profile; 3] = [Profile::QueryHeavy, Profile::EvertHeavy, Profile::Mixed];
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::QueryHeavy => "query-heavy",
            Profile::EvertHeavy => "evert-heavy",
            Profile::Mixed => "mixed",
        })
    }
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Profile::ALL
            .into_iter()
            .find(|p| p.to_string() == s)
            .ok_or_else(|| {
                format!("unknown profile `{s}` (expected query-heavy, evert-heavy or mixed)")
            })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Report {
    pub profile: Profile,
    pub n: usize,
    pub ops: usize,
    pub elapsed: Duration,
}

impl Report {
    pub fn per_op_ns(&self) -> f64 {
        self.elapsed.as_nanos() as f64 / self.ops.max(1) as f64
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} n={} ops={} per_op_ns={:.1}",
            self.profile,
            self.n,
            self.ops,
            self.per_op_ns()
        )
    }
}

/// A random recursive tree: vertex `i` hangs below a uniform earlier vertex.
pub fn random_tree(n: usize, rng: &mut impl Rng) -> RootedTree {
    RootedTree {
        parent: (0..n)
            .map(|i| (i > 0).then(|| rng.gen_range(0..i)))
            .collect(),
        val: (0..n).map(|_| rng.gen_range(-100..=100)).collect(),
        weight: vec![1.0; n],
    }
}

/// The path `0 - 1 - ... - (n-1)` rooted at 0.
pub fn path_tree(n: usize) -> RootedTree {
    RootedTree {
        parent: (0..n).map(|i| i.checked_sub(1)).collect(),
        val: vec![1; n],
        weight: vec![1.0; n],
    }
}

fn pick(vs: &[Vertex], rng: &mut impl Rng) -> Vertex {
    vs[rng.gen_range(0..vs.len())]
}

/// Cuts `v` and relinks it below a random vertex outside its subtree.
fn move_subtree(f: &mut Forest, vs: &[Vertex], rng: &mut impl Rng) {
    let v = pick(vs, rng);
    let Some(p) = f.parent(v).unwrap() else {
        return;
    };
    f.cut(v).unwrap();
    let u = pick(vs, rng);
    let target = if f.same_tree(u, v).unwrap() { p } else { u };
    f.link(target, v).unwrap();
}

fn query(f: &mut Forest, vs: &[Vertex], rng: &mut impl Rng) -> i64 {
    let v = pick(vs, rng);
    match rng.gen_range(0..7) {
        0 => f.root(v).unwrap().index() as i64,
        1 => f.lca(v, pick(vs, rng)).unwrap().index() as i64,
        2 => f.subtree_sum(v).unwrap(),
        3 => f.depth(v).unwrap() as i64,
        4 => f.parent(v).unwrap().map_or(-1, |p| p.index() as i64),
        5 => f.maxsum_child(v).unwrap().unwrap_or(0),
        _ => f.effective_val(v).unwrap(),
    }
}

/// Runs `profile` on a fresh forest of `n` vertices.
pub fn run(profile: Profile, n: usize, ops: usize, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
    let mut f = Forest::new();
    let tree = match profile {
        Profile::EvertHeavy => path_tree(n),
        _ => random_tree(n, &mut rng),
    };
    let vs = f
        .import_tree(&tree)
        .expect("generated trees are well formed");
    let mut sink = 0i64;
    let start = Instant::now();
    for _ in 0..ops {
        match profile {
            Profile::QueryHeavy => {
                if rng.gen_ratio(1, 10) {
                    move_subtree(&mut f, &vs, &mut rng);
                } else {
                    sink = sink.wrapping_add(query(&mut f, &vs, &mut rng));
                }
            }
            Profile::EvertHeavy => f.evert(pick(&vs, &mut rng)).unwrap(),
            Profile::Mixed => match rng.gen_range(0..4) {
                0 => move_subtree(&mut f, &vs, &mut rng),
                1 => f.evert(pick(&vs, &mut rng)).unwrap(),
                2 => f.add_to_subtree(pick(&vs, &mut rng), 1).unwrap(),
                _ => sink = sink.wrapping_add(query(&mut f, &vs, &mut rng)),
            },
        }
    }
    let elapsed = start.elapsed();
    std::hint::black_box(sink);
    Report {
        profile,
        n,
        ops,
        elapsed,
    }
}

/// Mean of `time(2n) / time(n)` over consecutive reports.
pub fn mean_doubling_ratio(reports: &[Report]) -> f64 {
    let ratios: Vec<f64> = reports
        .windows(2)
        .map(|w| w[1].per_op_ns() / w[0].per_op_ns())
        .collect();
    ratios.iter().sum::<f64>() / ratios.len().max(1) as f64
}
