//! Runs a [`Forest`] and a [`NaiveForest`] side by side.
//!
//! Every operation is applied to both; queries are answered by both and must
//! agree exactly, errors included. Vertices are named by the oracle's dense
//! ids, which are never reused.

use std::collections::HashMap;
use std::fmt;

use rand::Rng;

use crate::centrality;
use crate::error::{Error, Result};
use crate::forest::{Forest, Op, Vertex};
use crate::oracle::NaiveForest;

/// A structural or value update, naming vertices by oracle id.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ForestOp {
    Add(i64),
    Link(usize, usize, f64),
    Cut(usize),
    Condense(usize),
    Erase(usize),
    Evert(usize),
    ChangeVal(usize, i64),
    AddToPath(usize, i64),
    AddToSubtree(usize, i64),
}

/// A query, naming vertices by oracle id.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Query {
    Root(usize),
    Parent(usize),
    Ancestor(usize, usize),
    Depth(usize),
    Degree(usize),
    Children(usize),
    Val(usize),
    EffectiveVal(usize),
    Combine(usize),
    ReduceChildren(usize, Op),
    ReduceChildSubtrees(usize, Op, Op),
    SubtreeSize(usize),
    SubtreeSum(usize),
    SubtreeMax(usize),
    MaxsumChild(usize),
    ChildrenMax(usize),
    SameTree(usize, usize),
    IsDescendant(usize, usize),
    Lca(usize, usize),
    Distance(usize, usize),
    WeightedDistance(usize, usize),
    Betweenness(usize),
    Farness(usize),
}

/// Answers rendered to a comparable form.
#[derive(Clone, Debug, PartialEq)]
pub enum Answer {
    Int(i64),
    Float(f64),
    Bool(bool),
    Vertex(Option<usize>),
    Vertices(Vec<usize>),
    Failed(&'static str),
}

/// The first disagreement between the two implementations.
#[derive(Clone, Debug, PartialEq)]
pub struct Divergence(pub String);

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Divergence {}

#[derive(Clone, Default)]
pub struct ForestLockstep {
    fast: Forest,
    slow: NaiveForest,
    map: Vec<Option<Vertex>>,
    ids: HashMap<Vertex, usize>,
    exact: bool,
}

fn code<T>(r: &Result<T>) -> Option<&'static str> {
    r.as_ref().err().map(Error::code)
}

impl ForestLockstep {
    pub fn new() -> Self {
        Self::default()
    }

    /// Compare float answers bit for bit instead of to a relative 1e-9.
    /// Sound whenever all edge weights are small integers.
    pub fn exact_floats(mut self) -> Self {
        self.exact = true;
        self
    }

    pub fn fast(&mut self) -> &mut Forest {
        &mut self.fast
    }

    pub fn slow(&self) -> &NaiveForest {
        &self.slow
    }

    /// Ids of live vertices.
    pub fn live(&self) -> Vec<usize> {
        self.slow.vertices()
    }

    fn vx(&self, id: usize) -> Result<Vertex> {
        self.map
            .get(id)
            .copied()
            .flatten()
            .ok_or(Error::InvalidHandle)
    }

    fn id_of(&self, v: Vertex) -> usize {
        self.ids[&v]
    }

    /// Applies `op` to both forests. Returns the new id for `Add`.
    pub fn apply(&mut self, op: ForestOp) -> std::result::Result<Option<usize>, Divergence> {
        let (fast, slow): (Result<()>, Result<()>) = match op {
            ForestOp::Add(val) => {
                let v = self.fast.add_vertex(val);
                let id = self.slow.add_vertex(val);
                debug_assert_eq!(id, self.map.len());
                self.map.push(Some(v));
                self.ids.insert(v, id);
                return Ok(Some(id));
            }
            ForestOp::Link(u, v, w) => (
                self.vx(u)
                    .and_then(|a| self.vx(v).and_then(|b| self.fast.link_weighted(a, b, w))),
                self.slow.link(u, v, w),
            ),
            ForestOp::Cut(v) => (self.vx(v).and_then(|a| self.fast.cut(a)), self.slow.cut(v)),
            ForestOp::Condense(v) => (
                self.vx(v).and_then(|a| self.fast.condense(a)),
                self.slow.condense(v),
            ),
            ForestOp::Erase(v) => (
                self.vx(v).and_then(|a| self.fast.erase(a)),
                self.slow.erase(v),
            ),
            ForestOp::Evert(v) => (
                self.vx(v).and_then(|a| self.fast.evert(a)),
                self.slow.evert(v),
            ),
            ForestOp::ChangeVal(v, x) => (
                self.vx(v).and_then(|a| self.fast.change_val(a, x)),
                self.slow.change_val(v, x),
            ),
            ForestOp::AddToPath(v, d) => (
                self.vx(v).and_then(|a| self.fast.add_to_path(a, d)),
                self.slow.add_to_path(v, d),
            ),
            ForestOp::AddToSubtree(v, d) => (
                self.vx(v).and_then(|a| self.fast.add_to_subtree(a, d)),
                self.slow.add_to_subtree(v, d),
            ),
        };
        if code(&fast) != code(&slow) {
            return Err(Divergence(format!(
                "{op:?}: fast {fast:?}, oracle {slow:?}"
            )));
        }
        if let (ForestOp::Condense(v) | ForestOp::Erase(v), Ok(())) = (op, &slow) {
            if let Some(x) = self.map[v].take() {
                self.ids.remove(&x);
            }
        }
        Ok(None)
    }

    fn fast_answer(&mut self, q: Query) -> Answer {
        let f = |r: Result<Answer>| r.unwrap_or_else(|e| Answer::Failed(e.code()));
        let one = |s: &Self, v: usize| s.vx(v);
        let vid = |s: &Self, r: Option<Vertex>| Answer::Vertex(r.map(|x| s.id_of(x)));
        match q {
            Query::Root(v) => f(one(self, v)
                .and_then(|a| self.fast.root(a))
                .map(|r| vid(self, Some(r)))),
            Query::Parent(v) => f(one(self, v)
                .and_then(|a| self.fast.parent(a))
                .map(|r| vid(self, r))),
            Query::Ancestor(v, k) => f(one(self, v)
                .and_then(|a| self.fast.ancestor(a, k as u32))
                .map(|r| vid(self, r))),
            Query::Depth(v) => f(one(self, v)
                .and_then(|a| self.fast.depth(a))
                .map(|d| Answer::Int(d as i64))),
            Query::Degree(v) => f(one(self, v)
                .and_then(|a| self.fast.degree(a))
                .map(|d| Answer::Int(d as i64))),
            Query::Children(v) => f(one(self, v)
                .and_then(|a| self.fast.children(a))
                .map(|cs| Answer::Vertices(cs.into_iter().map(|c| self.id_of(c)).collect()))),
            Query::Val(v) => f(one(self, v).and_then(|a| self.fast.val(a)).map(Answer::Int)),
            Query::EffectiveVal(v) => f(one(self, v)
                .and_then(|a| self.fast.effective_val(a))
                .map(Answer::Int)),
            Query::Combine(v) => f(one(self, v)
                .and_then(|a| self.fast.combine(a))
                .map(Answer::Int)),
            Query::ReduceChildren(v, op) => f(one(self, v)
                .and_then(|a| self.fast.reduce_children(a, op))
                .map(Answer::Int)),
            Query::ReduceChildSubtrees(v, p, t) => f(one(self, v)
                .and_then(|a| self.fast.reduce_child_subtrees(a, p, t))
                .map(Answer::Int)),
            Query::SubtreeSize(v) => f(one(self, v)
                .and_then(|a| self.fast.subtree_size(a))
                .map(Answer::Int)),
            Query::SubtreeSum(v) => f(one(self, v)
                .and_then(|a| self.fast.subtree_sum(a))
                .map(Answer::Int)),
            Query::SubtreeMax(v) => f(one(self, v)
                .and_then(|a| self.fast.subtree_max(a))
                .map(Answer::Int)),
            Query::MaxsumChild(v) => f(one(self, v)
                .and_then(|a| self.fast.maxsum_child(a))
                .map(|m| m.map_or(Answer::Vertex(None), Answer::Int))),
            Query::ChildrenMax(v) => f(one(self, v)
                .and_then(|a| self.fast.children_max(a))
                .map(|m| m.map_or(Answer::Vertex(None), Answer::Int))),
            Query::SameTree(u, v) => f(one(self, u)
                .and_then(|a| one(self, v).and_then(|b| self.fast.same_tree(a, b)))
                .map(Answer::Bool)),
            Query::IsDescendant(u, v) => f(one(self, u)
                .and_then(|a| one(self, v).and_then(|b| self.fast.is_descendant(a, b)))
                .map(Answer::Bool)),
            Query::Lca(u, v) => f(one(self, u)
                .and_then(|a| one(self, v).and_then(|b| self.fast.lca(a, b)))
                .map(|w| vid(self, Some(w)))),
            Query::Distance(u, v) => f(one(self, u)
                .and_then(|a| one(self, v).and_then(|b| self.fast.distance(a, b)))
                .map(|d| Answer::Int(d as i64))),
            Query::WeightedDistance(u, v) => f(one(self, u)
                .and_then(|a| one(self, v).and_then(|b| self.fast.weighted_distance(a, b)))
                .map(Answer::Float)),
            Query::Betweenness(v) => f(one(self, v)
                .and_then(|a| centrality::betweenness(&mut self.fast, a))
                .map(Answer::Int)),
            Query::Farness(v) => f(one(self, v)
                .and_then(|a| centrality::farness(&mut self.fast, a))
                .map(Answer::Float)),
        }
    }

    fn slow_answer(&self, q: Query) -> Answer {
        let s = &self.slow;
        let f = |r: Result<Answer>| r.unwrap_or_else(|e| Answer::Failed(e.code()));
        let int = |r: Result<usize>| r.map(|x| Answer::Int(x as i64));
        let opt = |r: Result<Option<i64>>| r.map(|m| m.map_or(Answer::Vertex(None), Answer::Int));
        let connected = |u: usize, v: usize| -> Result<()> {
            if s.same_tree(u, v)? {
                Ok(())
            } else {
                Err(Error::DifferentTrees)
            }
        };
        match q {
            Query::Root(v) => f(s.root(v).map(|r| Answer::Vertex(Some(r)))),
            Query::Parent(v) => f(s.parent(v).map(Answer::Vertex)),
            Query::Ancestor(v, k) => f(s.ancestor(v, k).map(Answer::Vertex)),
            Query::Depth(v) => f(int(s.depth(v))),
            Query::Degree(v) => f(int(s.degree(v))),
            Query::Children(v) => f(s.children(v).map(Answer::Vertices)),
            Query::Val(v) => f(s.val(v).map(Answer::Int)),
            Query::EffectiveVal(v) => f(s.effective_val(v).map(Answer::Int)),
            Query::Combine(v) => f(s.combine(v).map(Answer::Int)),
            Query::ReduceChildren(v, op) => f(s.reduce_children(v, op).map(Answer::Int)),
            Query::ReduceChildSubtrees(v, p, t) => {
                f(s.reduce_child_subtrees(v, p, t).map(Answer::Int))
            }
            Query::SubtreeSize(v) => f(int(s.subtree_size(v))),
            Query::SubtreeSum(v) => f(s.subtree_sum(v).map(Answer::Int)),
            Query::SubtreeMax(v) => f(s.subtree_max(v).map(Answer::Int)),
            Query::MaxsumChild(v) => f(opt(s.maxsum_child(v))),
            Query::ChildrenMax(v) => f(opt(s
                .children(v)
                .and_then(|cs| cs.iter().map(|&c| s.val(c)).collect::<Result<Vec<_>>>())
                .map(|vals| vals.into_iter().max()))),
            Query::SameTree(u, v) => f(s.same_tree(u, v).map(Answer::Bool)),
            Query::IsDescendant(u, v) => f(s.is_descendant(u, v).map(Answer::Bool)),
            Query::Lca(u, v) => f(connected(u, v)
                .and_then(|_| s.lca(u, v))
                .map(|w| Answer::Vertex(Some(w)))),
            Query::Distance(u, v) => f(int(connected(u, v).and_then(|_| s.distance(u, v)))),
            Query::WeightedDistance(u, v) => f(connected(u, v)
                .and_then(|_| s.weighted_distance(u, v))
                .map(Answer::Float)),
            Query::Betweenness(v) => f(s.betweenness(v).map(Answer::Int)),
            Query::Farness(v) => f(s.farness(v).map(Answer::Float)),
        }
    }

    /// Answers `q` on both sides; returns the shared answer.
    pub fn query(&mut self, q: Query) -> std::result::Result<Answer, Divergence> {
        let a = self.fast_answer(q);
        let b = self.slow_answer(q);
        let same = match (&a, &b) {
            (Answer::Float(x), Answer::Float(y)) if !self.exact => {
                (x - y).abs() <= 1e-9 * x.abs().max(y.abs()).max(1.0)
            }
            _ => a == b,
        };
        if same {
            Ok(b)
        } else {
            Err(Divergence(format!("{q:?}: fast {a:?}, oracle {b:?}")))
        }
    }

    /// Every single-vertex query on `v`.
    pub fn check_vertex(&mut self, v: usize) -> std::result::Result<(), Divergence> {
        let depth = self.slow.depth(v).unwrap_or(0);
        let mut qs = vec![
            Query::Root(v),
            Query::Parent(v),
            Query::Ancestor(v, 0),
            Query::Ancestor(v, depth),
            Query::Ancestor(v, depth + 1),
            Query::Depth(v),
            Query::Degree(v),
            Query::Children(v),
            Query::Val(v),
            Query::EffectiveVal(v),
            Query::Combine(v),
            Query::SubtreeSize(v),
            Query::SubtreeSum(v),
            Query::SubtreeMax(v),
            Query::MaxsumChild(v),
            Query::ChildrenMax(v),
            Query::Betweenness(v),
            Query::Farness(v),
        ];
        for op in [Op::Sum, Op::Max] {
            qs.push(Query::ReduceChildren(v, op));
            for t in [Op::Sum, Op::Max] {
                qs.push(Query::ReduceChildSubtrees(v, op, t));
            }
        }
        for q in qs {
            self.query(q)?;
        }
        Ok(())
    }

    /// Every two-vertex query on `(u, v)`.
    pub fn check_pair(&mut self, u: usize, v: usize) -> std::result::Result<(), Divergence> {
        for q in [
            Query::SameTree(u, v),
            Query::IsDescendant(u, v),
            Query::Lca(u, v),
            Query::Distance(u, v),
            Query::WeightedDistance(u, v),
        ] {
            self.query(q)?;
        }
        Ok(())
    }

    /// A uniformly chosen query over live vertices. The centrality queries
    /// cost the oracle quadratic time and are only drawn when asked for.
    pub fn random_query(&self, rng: &mut impl Rng, centrality: bool) -> Option<Query> {
        let live = self.live();
        if live.is_empty() {
            return None;
        }
        let v = live[rng.gen_range(0..live.len())];
        let u = live[rng.gen_range(0..live.len())];
        let op = if rng.gen() { Op::Sum } else { Op::Max };
        let t = if rng.gen() { Op::Sum } else { Op::Max };
        let kinds = if centrality { 23 } else { 21 };
        Some(match rng.gen_range(0..kinds) {
            0 => Query::Root(v),
            1 => Query::Parent(v),
            2 => Query::Ancestor(v, rng.gen_range(0..6)),
            3 => Query::Depth(v),
            4 => Query::Degree(v),
            5 => Query::Children(v),
            6 => Query::Val(v),
            7 => Query::EffectiveVal(v),
            8 => Query::Combine(v),
            9 => Query::ReduceChildren(v, op),
            10 => Query::ReduceChildSubtrees(v, op, t),
            11 => Query::SubtreeSize(v),
            12 => Query::SubtreeSum(v),
            13 => Query::SubtreeMax(v),
            14 => Query::MaxsumChild(v),
            15 => Query::ChildrenMax(v),
            16 => Query::SameTree(u, v),
            17 => Query::IsDescendant(u, v),
            18 => Query::Lca(u, v),
            19 => Query::Distance(u, v),
            20 => Query::WeightedDistance(u, v),
            21 => Query::Betweenness(v),
            _ => Query::Farness(v),
        })
    }

    /// A random update. Links mostly join a vertex to the root of another
    /// tree, and occasionally try an invalid pair to exercise the errors.
    pub fn random_op(&self, rng: &mut impl Rng, max_vertices: usize) -> ForestOp {
        let live = self.live();
        if live.len() < 2 || (live.len() < max_vertices && rng.gen_ratio(1, 8)) {
            return ForestOp::Add(rng.gen_range(-50..=50));
        }
        let pick = |rng: &mut _| live[Rng::gen_range(rng, 0..live.len())];
        let v = pick(rng);
        match rng.gen_range(0..100) {
            0..=34 => {
                let u = pick(rng);
                let target = if rng.gen_ratio(9, 10) {
                    self.slow.root(v).unwrap()
                } else {
                    v
                };
                ForestOp::Link(u, target, rng.gen_range(1..=5) as f64)
            }
            35..=49 => ForestOp::Cut(v),
            50..=54 => ForestOp::Condense(v),
            55..=59 => ForestOp::Erase(v),
            60..=74 => ForestOp::Evert(v),
            75..=81 => ForestOp::ChangeVal(v, rng.gen_range(-50..=50)),
            82..=90 => ForestOp::AddToPath(v, rng.gen_range(-10..=10)),
            _ => ForestOp::AddToSubtree(v, rng.gen_range(-10..=10)),
        }
    }
}
