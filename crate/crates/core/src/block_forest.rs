//! Incremental biconnectivity with a block forest.
//!
//! Each connected component of the graph is a tree alternating between
//! *square* vertices (graph vertices) and *round* vertices (biconnected
//! components). A round vertex is adjacent to exactly the graph vertices of
//! its block. Squares carry value 1 and rounds value 0, so subtree sums
//! count graph vertices.
//!
//! Inserting an edge between two trees links them through a fresh round
//! vertex, everting the smaller tree. Inserting an edge inside a tree closes
//! a cycle: every block on the tree path between the endpoints merges into
//! one, implemented by condensing the path's rounds into a single survivor.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Display;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::forest::{Forest, Vertex};

/// A streaming undirected graph answering biconnectivity queries.
#[derive(Clone)]
pub struct BlockForest<K> {
    forest: Forest,
    square: HashMap<K, Vertex>,
    key: HashMap<Vertex, K>,
    rounds: HashSet<Vertex>,
}

impl<K: Eq + Hash + Clone + Display> Default for BlockForest<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Eq + Hash + Clone + Display> BlockForest<K> {
    pub fn new() -> Self {
        BlockForest {
            forest: Forest::new(),
            square: HashMap::new(),
            key: HashMap::new(),
            rounds: HashSet::new(),
        }
    }

    /// Number of graph vertices.
    pub fn len(&self) -> usize {
        self.square.len()
    }

    pub fn is_empty(&self) -> bool {
        self.square.is_empty()
    }

    fn sq(&self, k: &K) -> Result<Vertex> {
        self.square
            .get(k)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(k.to_string()))
    }

    pub fn add_vertex(&mut self, k: K) -> Result<()> {
        if self.square.contains_key(&k) {
            return Err(Error::DuplicateVertex(k.to_string()));
        }
        let v = self.forest.add_vertex(1);
        self.square.insert(k.clone(), v);
        self.key.insert(v, k);
        Ok(())
    }

    pub fn insert_edge(&mut self, u: &K, v: &K) -> Result<()> {
        let (su, sv) = (self.sq(u)?, self.sq(v)?);
        if su == sv {
            return Err(Error::SelfLoop);
        }
        if !self.forest.same_tree(su, sv)? {
            return self.bridge_trees(su, sv);
        }
        if self.forest.distance(su, sv)? == 2 {
            return Ok(());
        }
        self.merge_path(su, sv)
    }

    /// Edge deletions are outside the incremental scope.
    pub fn delete_edge(&mut self, u: &K, v: &K) -> Result<()> {
        self.sq(u)?;
        self.sq(v)?;
        Err(Error::NotSupported("edge deletion"))
    }

    fn bridge_trees(&mut self, su: Vertex, sv: Vertex) -> Result<()> {
        let ru = self.forest.root(su)?;
        let rv = self.forest.root(sv)?;
        let (big, small) = if self.forest.subtree_sum(ru)? >= self.forest.subtree_sum(rv)? {
            (su, sv)
        } else {
            (sv, su)
        };
        self.forest.evert(small)?;
        let r = self.forest.add_vertex(0);
        self.rounds.insert(r);
        self.forest.link(r, small)?;
        self.forest.link(big, r)
    }

    /// Rounds on the tree path between `a` and its ancestor `top`, bottom up,
    /// excluding `top`.
    fn rounds_below(&mut self, a: Vertex, top: Vertex) -> Result<Vec<Vertex>> {
        let mut out = Vec::new();
        let mut cur = a;
        while cur != top {
            if self.rounds.contains(&cur) {
                out.push(cur);
            }
            cur = self.forest.parent(cur)?.expect("top is an ancestor");
        }
        Ok(out)
    }

    fn merge_path(&mut self, su: Vertex, sv: Vertex) -> Result<()> {
        let w = self.forest.lca(su, sv)?;
        let mut on_u = self.rounds_below(su, w)?;
        let mut on_v = self.rounds_below(sv, w)?;
        // The survivor is the path round nearest the root; when the lca is a
        // square both sides may offer one at equal depth and u's side wins.
        let survivor = if self.rounds.contains(&w) {
            w
        } else {
            on_u.pop()
                .or_else(|| on_v.pop())
                .expect("path leaves the lca")
        };
        for r in on_u.into_iter().chain(on_v) {
            self.forest.cut(r)?;
            self.forest.link(survivor, r)?;
            self.forest.condense(r)?;
            self.rounds.remove(&r);
        }
        Ok(())
    }

    pub fn connected(&mut self, u: &K, v: &K) -> Result<bool> {
        let (su, sv) = (self.sq(u)?, self.sq(v)?);
        self.forest.same_tree(su, sv)
    }

    /// Number of graph vertices in `u`'s component.
    pub fn component_size(&mut self, u: &K) -> Result<i64> {
        let su = self.sq(u)?;
        let r = self.forest.root(su)?;
        self.forest.subtree_sum(r)
    }

    /// Number of blocks containing `u`.
    fn block_count(&mut self, su: Vertex) -> Result<usize> {
        Ok(self.forest.degree(su)? + self.forest.parent(su)?.is_some() as usize)
    }

    pub fn is_articulation(&mut self, u: &K) -> Result<bool> {
        let su = self.sq(u)?;
        Ok(self.block_count(su)? >= 2)
    }

    /// The round shared by two distinct squares, if any.
    fn common_round(&mut self, su: Vertex, sv: Vertex) -> Result<Option<Vertex>> {
        if !self.forest.same_tree(su, sv)? || self.forest.distance(su, sv)? != 2 {
            return Ok(None);
        }
        let deeper = if self.forest.depth(su)? >= self.forest.depth(sv)? {
            su
        } else {
            sv
        };
        self.forest.parent(deeper)
    }

    /// Whether `{u, v}` is an edge whose removal disconnects the graph. Pairs
    /// that are not edges report `false`.
    pub fn is_bridge(&mut self, u: &K, v: &K) -> Result<bool> {
        let (su, sv) = (self.sq(u)?, self.sq(v)?);
        if su == sv {
            return Ok(false);
        }
        match self.common_round(su, sv)? {
            Some(r) => Ok(self.block_count(r)? == 2),
            None => Ok(false),
        }
    }

    /// Vertices of `u`'s component that lose contact with the largest piece
    /// left when `u` is removed.
    pub fn impact(&mut self, u: &K) -> Result<i64> {
        let su = self.sq(u)?;
        if self.block_count(su)? < 2 {
            return Ok(0);
        }
        let root = self.forest.root(su)?;
        let total = self.forest.subtree_sum(root)?;
        let above = total - self.forest.subtree_sum(su)?;
        let below = self.forest.maxsum_child(su)?.unwrap_or(0);
        Ok(total - 1 - above.max(below))
    }

    pub fn articulation_points(&mut self) -> Result<Vec<K>> {
        let keys: Vec<K> = self.square.keys().cloned().collect();
        let mut out = Vec::new();
        for k in keys {
            if self.is_articulation(&k)? {
                out.push(k);
            }
        }
        Ok(out)
    }

    /// Graph vertices of every block, one set per round vertex.
    pub fn blocks(&mut self) -> Result<Vec<Vec<K>>> {
        let rounds: Vec<Vertex> = self.rounds.iter().copied().collect();
        let mut out = Vec::with_capacity(rounds.len());
        for r in rounds {
            let mut members = self.forest.children(r)?;
            members.extend(self.forest.parent(r)?);
            out.push(members.into_iter().map(|s| self.key[&s].clone()).collect());
        }
        Ok(out)
    }

    /// Blocks with exactly two vertices, i.e. the bridges.
    pub fn bridges(&mut self) -> Result<Vec<(K, K)>> {
        Ok(self
            .blocks()?
            .into_iter()
            .filter(|b| b.len() == 2)
            .map(|b| (b[0].clone(), b[1].clone()))
            .collect())
    }

    /// Forest audit plus the square/round alternation and value tags.
    pub fn audit(&mut self) -> std::result::Result<(), String> {
        self.forest.audit()?;
        let all: Vec<Vertex> = self.forest.vertices();
        if all.len() != self.square.len() + self.rounds.len() {
            return Err("vertex bookkeeping out of sync".into());
        }
        let err = |e: Error| e.to_string();
        for v in all {
            let round = self.rounds.contains(&v);
            let expect = if round { 0 } else { 1 };
            if self.forest.val(v).map_err(err)? != expect {
                return Err(format!("vertex {} carries the wrong tag", v.index()));
            }
            if let Some(p) = self.forest.parent(v).map_err(err)? {
                if self.rounds.contains(&p) == round {
                    return Err(format!(
                        "edge {}-{} joins two of a kind",
                        v.index(),
                        p.index()
                    ));
                }
            }
            if round && self.block_count(v).map_err(err)? < 2 {
                return Err(format!("round {} has fewer than two members", v.index()));
            }
        }
        Ok(())
    }

    /// Blocks as a canonical set of sets, for comparisons.
    pub fn block_partition(&mut self) -> Result<BTreeSet<BTreeSet<K>>>
    where
        K: Ord,
    {
        Ok(self
            .blocks()?
            .into_iter()
            .map(|b| b.into_iter().collect())
            .collect())
    }
}
