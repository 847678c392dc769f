//! Slow reference implementations.
//!
//! Nothing here touches the sequence machinery: trees are parent pointers
//! plus ordered child lists, graphs are adjacency sets, and every query walks
//! the structure directly. The differential tests compare the fast modules
//! against these.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::forest::Op;

#[derive(Clone, Debug)]
struct NaiveNode {
    parent: Option<usize>,
    children: Vec<usize>,
    val: i64,
    eff: i64,
    weight: f64,
}

/// A forest stored as parent pointers and ordered child lists. Vertex ids are
/// assigned densely from 0 and never reused.
#[derive(Clone, Debug, Default)]
pub struct NaiveForest {
    nodes: Vec<Option<NaiveNode>>,
}

impl NaiveForest {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, val: i64) -> usize {
        self.nodes.push(Some(NaiveNode {
            parent: None,
            children: Vec::new(),
            val,
            eff: val,
            weight: 0.0,
        }));
        self.nodes.len() - 1
    }

    fn node(&self, v: usize) -> Result<&NaiveNode> {
        self.nodes
            .get(v)
            .and_then(Option::as_ref)
            .ok_or(Error::InvalidHandle)
    }

    fn node_mut(&mut self, v: usize) -> Result<&mut NaiveNode> {
        self.nodes
            .get_mut(v)
            .and_then(Option::as_mut)
            .ok_or(Error::InvalidHandle)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.node(v).is_ok()
    }

    /// Live vertex ids in increasing order.
    pub fn vertices(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&v| self.contains(v))
            .collect()
    }

    pub fn parent(&self, v: usize) -> Result<Option<usize>> {
        Ok(self.node(v)?.parent)
    }

    /// `v`, its parent, its grandparent, ..., the root.
    pub fn path_to_root(&self, v: usize) -> Result<Vec<usize>> {
        let mut out = vec![v];
        let mut cur = self.node(v)?.parent;
        while let Some(p) = cur {
            out.push(p);
            cur = self.node(p)?.parent;
        }
        Ok(out)
    }

    pub fn root(&self, v: usize) -> Result<usize> {
        Ok(*self.path_to_root(v)?.last().unwrap())
    }

    pub fn same_tree(&self, u: usize, v: usize) -> Result<bool> {
        Ok(self.root(u)? == self.root(v)?)
    }

    pub fn is_descendant(&self, u: usize, v: usize) -> Result<bool> {
        self.node(v)?;
        Ok(self.path_to_root(u)?.contains(&v))
    }

    pub fn ancestor(&self, v: usize, k: usize) -> Result<Option<usize>> {
        Ok(self.path_to_root(v)?.get(k).copied())
    }

    pub fn depth(&self, v: usize) -> Result<usize> {
        Ok(self.path_to_root(v)?.len() - 1)
    }

    pub fn lca(&self, u: usize, v: usize) -> Result<usize> {
        let pu = self.path_to_root(u)?;
        let pv: BTreeSet<usize> = self.path_to_root(v)?.into_iter().collect();
        pu.into_iter()
            .find(|x| pv.contains(x))
            .ok_or(Error::DifferentTrees)
    }

    pub fn children(&self, v: usize) -> Result<Vec<usize>> {
        Ok(self.node(v)?.children.clone())
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        Ok(self.node(v)?.children.len())
    }

    pub fn val(&self, v: usize) -> Result<i64> {
        Ok(self.node(v)?.val)
    }

    pub fn weight(&self, v: usize) -> Result<f64> {
        Ok(self.node(v)?.weight)
    }

    pub fn effective_val(&self, v: usize) -> Result<i64> {
        Ok(self.node(v)?.eff)
    }

    /// Vertices of the subtree of `v`, in preorder.
    pub fn subtree(&self, v: usize) -> Result<Vec<usize>> {
        self.node(v)?;
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            out.push(x);
            stack.extend(self.node(x)?.children.iter().rev().copied());
        }
        Ok(out)
    }

    pub fn change_val(&mut self, v: usize, x: i64) -> Result<()> {
        let n = self.node_mut(v)?;
        n.val = x;
        n.eff = x;
        Ok(())
    }

    pub fn add_to_path(&mut self, v: usize, d: i64) -> Result<()> {
        for x in self.path_to_root(v)? {
            self.node_mut(x)?.eff += d;
        }
        Ok(())
    }

    pub fn add_to_subtree(&mut self, v: usize, d: i64) -> Result<()> {
        for x in self.subtree(v)? {
            self.node_mut(x)?.eff += d;
        }
        Ok(())
    }

    pub fn combine(&self, v: usize) -> Result<i64> {
        self.path_to_root(v)?.into_iter().map(|x| self.val(x)).sum()
    }

    pub fn reduce_children(&self, v: usize, op: Op) -> Result<i64> {
        let mut acc = op.identity();
        for c in self.children(v)? {
            acc = op.apply(acc, self.val(c)?);
        }
        Ok(acc)
    }

    /// `plus`-fold of the values of the subtree of `v`.
    fn sigma(&self, v: usize, plus: Op) -> Result<i64> {
        let mut acc = plus.identity();
        for x in self.subtree(v)? {
            acc = plus.apply(acc, self.val(x)?);
        }
        Ok(acc)
    }

    pub fn reduce_child_subtrees(&self, v: usize, plus: Op, times: Op) -> Result<i64> {
        let mut acc = times.identity();
        for c in self.children(v)? {
            acc = times.apply(acc, self.sigma(c, plus)?);
        }
        Ok(acc)
    }

    pub fn subtree_sum(&self, v: usize) -> Result<i64> {
        self.sigma(v, Op::Sum)
    }

    pub fn subtree_max(&self, v: usize) -> Result<i64> {
        self.sigma(v, Op::Max)
    }

    pub fn subtree_size(&self, v: usize) -> Result<usize> {
        Ok(self.subtree(v)?.len())
    }

    pub fn maxsum_child(&self, v: usize) -> Result<Option<i64>> {
        let kids = self.children(v)?;
        kids.into_iter()
            .map(|c| self.subtree_sum(c))
            .collect::<Result<Vec<_>>>()
            .map(|s| s.into_iter().max())
    }

    /// Hop count along the tree path.
    pub fn distance(&self, u: usize, v: usize) -> Result<usize> {
        let w = self.lca(u, v)?;
        Ok(self.depth(u)? + self.depth(v)? - 2 * self.depth(w)?)
    }

    /// Sum of the edge weights along the tree path.
    pub fn weighted_distance(&self, u: usize, v: usize) -> Result<f64> {
        let w = self.lca(u, v)?;
        let mut total = 0.0;
        for end in [u, v] {
            let mut x = end;
            while x != w {
                total += self.weight(x)?;
                x = self.parent(x)?.unwrap();
            }
        }
        Ok(total)
    }

    /// Undirected neighbours of `v` with edge weights.
    fn neighbours(&self, v: usize) -> Result<Vec<(usize, f64)>> {
        let n = self.node(v)?;
        let mut out: Vec<(usize, f64)> = n
            .children
            .iter()
            .map(|&c| (c, self.nodes[c].as_ref().unwrap().weight))
            .collect();
        if let Some(p) = n.parent {
            out.push((p, n.weight));
        }
        Ok(out)
    }

    /// Weighted distances from `v` to every vertex of its tree.
    fn distances_from(&self, v: usize) -> Result<Vec<(usize, f64, usize)>> {
        let mut out = vec![(v, 0.0, 0)];
        let mut queue = VecDeque::from([(v, usize::MAX, 0.0, 0usize)]);
        while let Some((x, from, d, hops)) = queue.pop_front() {
            for (y, w) in self.neighbours(x)? {
                if y != from {
                    out.push((y, d + w, hops + 1));
                    queue.push_back((y, x, d + w, hops + 1));
                }
            }
        }
        Ok(out)
    }

    pub fn farness(&self, v: usize) -> Result<f64> {
        Ok(self.distances_from(v)?.iter().map(|&(_, d, _)| d).sum())
    }

    /// Unordered pairs `{s, t}`, both different from `v`, whose tree path
    /// passes through `v`.
    pub fn betweenness(&self, v: usize) -> Result<i64> {
        let from_v: std::collections::HashMap<usize, usize> = self
            .distances_from(v)?
            .into_iter()
            .map(|(x, _, h)| (x, h))
            .collect();
        let others: Vec<usize> = from_v.keys().copied().filter(|&x| x != v).collect();
        let mut count = 0;
        for &s in &others {
            for (t, _, h) in self.distances_from(s)? {
                if t > s && t != v && h == from_v[&s] + from_v[&t] {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    // ----- structural updates -----

    pub fn link(&mut self, u: usize, v: usize, w: f64) -> Result<()> {
        if self.same_tree(u, v)? {
            return Err(Error::Cycle);
        }
        if self.parent(v)?.is_some() {
            return Err(Error::NotRoot);
        }
        self.node_mut(u)?.children.insert(0, v);
        let n = self.node_mut(v)?;
        n.parent = Some(u);
        n.weight = w;
        Ok(())
    }

    pub fn cut(&mut self, v: usize) -> Result<()> {
        let Some(p) = self.parent(v)? else {
            return Ok(());
        };
        self.node_mut(p)?.children.retain(|&c| c != v);
        let n = self.node_mut(v)?;
        n.parent = None;
        n.weight = 0.0;
        Ok(())
    }

    pub fn condense(&mut self, v: usize) -> Result<()> {
        let n = self.node(v)?.clone();
        match n.parent {
            Some(p) => {
                let list = &mut self.node_mut(p)?.children;
                let at = list.iter().position(|&c| c == v).unwrap();
                list.splice(at..=at, n.children.iter().copied());
                for &c in &n.children {
                    self.node_mut(c)?.parent = Some(p);
                }
            }
            None => {
                for &c in &n.children {
                    let cn = self.node_mut(c)?;
                    cn.parent = None;
                    cn.weight = 0.0;
                }
            }
        }
        self.nodes[v] = None;
        Ok(())
    }

    pub fn erase(&mut self, v: usize) -> Result<()> {
        self.cut(v)?;
        self.condense(v)
    }

    /// Reverses the path from `v` to the root; every vertex on it gains its
    /// old parent as its first child.
    pub fn evert(&mut self, v: usize) -> Result<()> {
        let path = self.path_to_root(v)?;
        let weights: Vec<f64> = path
            .iter()
            .map(|&x| self.weight(x))
            .collect::<Result<_>>()?;
        for i in 0..path.len() - 1 {
            let (x, p) = (path[i], path[i + 1]);
            self.node_mut(p)?.children.retain(|&c| c != x);
        }
        for i in 0..path.len() - 1 {
            let (x, p) = (path[i], path[i + 1]);
            self.node_mut(x)?.children.insert(0, p);
            let pn = self.node_mut(p)?;
            pn.parent = Some(x);
            pn.weight = weights[i];
        }
        let n = self.node_mut(v)?;
        n.parent = None;
        n.weight = 0.0;
        Ok(())
    }
}

/// An undirected simple graph over vertices `0..n`.
#[derive(Clone, Debug, Default)]
pub struct NaiveGraph {
    adj: Vec<BTreeSet<usize>>,
}

impl NaiveGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(BTreeSet::new());
        self.adj.len() - 1
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.adj.len();
        if u >= n || v >= n {
            return Err(Error::UnknownVertex(format!("{}", u.max(v))));
        }
        if u == v {
            return Err(Error::SelfLoop);
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|s| s.contains(&v))
    }

    /// Vertices reachable from `s` without entering `banned`.
    fn reach(&self, s: usize, banned: Option<usize>) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if !seen[y] && Some(y) != banned {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    pub fn connected(&self, u: usize, v: usize) -> bool {
        self.reach(u, None)[v]
    }

    pub fn component_size(&self, u: usize) -> usize {
        self.reach(u, None).iter().filter(|&&b| b).count()
    }

    /// Discovery times and lowpoints of a DFS forest, plus the DFS parent.
    fn lowpoints(&self) -> (Vec<usize>, Vec<usize>, Vec<Option<usize>>) {
        let n = self.adj.len();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![usize::MAX; n];
        let mut parent = vec![None; n];
        let mut time = 0;
        for s in 0..n {
            if disc[s] != usize::MAX {
                continue;
            }
            disc[s] = time;
            low[s] = time;
            time += 1;
            let mut stack: Vec<(usize, Vec<usize>)> =
                vec![(s, self.adj[s].iter().copied().collect())];
            while let Some((x, pending)) = stack.last_mut() {
                let x = *x;
                if let Some(y) = pending.pop() {
                    if disc[y] == usize::MAX {
                        parent[y] = Some(x);
                        disc[y] = time;
                        low[y] = time;
                        time += 1;
                        stack.push((y, self.adj[y].iter().copied().collect()));
                    } else if parent[x] != Some(y) {
                        low[x] = low[x].min(disc[y]);
                    }
                } else {
                    stack.pop();
                    if let Some(p) = parent[x] {
                        low[p] = low[p].min(low[x]);
                    }
                }
            }
        }
        (disc, low, parent)
    }

    /// Articulation points, from DFS lowpoints.
    pub fn articulation_points(&self) -> BTreeSet<usize> {
        let (disc, low, parent) = self.lowpoints();
        let mut out = BTreeSet::new();
        for v in 0..self.adj.len() {
            let tree_kids = (0..self.adj.len()).filter(|&c| parent[c] == Some(v));
            match parent[v] {
                None => {
                    if tree_kids.count() >= 2 {
                        out.insert(v);
                    }
                }
                Some(_) => {
                    if tree_kids.into_iter().any(|c| low[c] >= disc[v]) {
                        out.insert(v);
                    }
                }
            }
        }
        out
    }

    /// Bridges as ordered pairs `(min, max)`.
    pub fn bridges(&self) -> BTreeSet<(usize, usize)> {
        let (disc, low, parent) = self.lowpoints();
        (0..self.adj.len())
            .filter_map(|c| {
                parent[c]
                    .filter(|_| low[c] > disc[parent[c].unwrap()])
                    .map(|p| (p.min(c), p.max(c)))
            })
            .collect()
    }

    /// Biconnected components with at least one edge, as vertex sets, via
    /// the edge-stack formulation.
    pub fn blocks(&self) -> BTreeSet<BTreeSet<usize>> {
        let n = self.adj.len();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![usize::MAX; n];
        let mut out = BTreeSet::new();
        let mut time = 0;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for s in 0..n {
            if disc[s] != usize::MAX {
                continue;
            }
            disc[s] = time;
            low[s] = time;
            time += 1;
            let mut stack: Vec<(usize, Option<usize>, Vec<usize>)> =
                vec![(s, None, self.adj[s].iter().copied().collect())];
            while let Some((x, px, pending)) = stack.last_mut() {
                let (x, px) = (*x, *px);
                if let Some(y) = pending.pop() {
                    if disc[y] == usize::MAX {
                        edges.push((x, y));
                        disc[y] = time;
                        low[y] = time;
                        time += 1;
                        stack.push((y, Some(x), self.adj[y].iter().copied().collect()));
                    } else if Some(y) != px && disc[y] < disc[x] {
                        edges.push((x, y));
                        low[x] = low[x].min(disc[y]);
                    }
                } else {
                    stack.pop();
                    if let Some(p) = px {
                        low[p] = low[p].min(low[x]);
                        if low[x] >= disc[p] {
                            let mut block = BTreeSet::new();
                            while let Some((a, b)) = edges.pop() {
                                block.insert(a);
                                block.insert(b);
                                if (a, b) == (p, x) {
                                    break;
                                }
                            }
                            out.insert(block);
                        }
                    }
                }
            }
        }
        out
    }

    /// Impact of every vertex from one DFS: removing `v` leaves one piece per
    /// DFS child `c` with `low[c] >= disc[v]`, plus whatever remains of its
    /// component.
    pub fn impacts(&self) -> Vec<usize> {
        let n = self.adj.len();
        let (disc, low, parent) = self.lowpoints();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(disc[v]));
        let mut sub = vec![1usize; n];
        for &v in &order {
            if let Some(p) = parent[v] {
                sub[p] += sub[v];
            }
        }
        let mut root_of = vec![0; n];
        for v in order.into_iter().rev() {
            root_of[v] = parent[v].map_or(v, |p| root_of[p]);
        }
        let mut out = vec![0; n];
        for v in 0..n {
            let total = sub[root_of[v]];
            let mut largest = 0;
            let mut separated = 0;
            for c in (0..n).filter(|&c| parent[c] == Some(v) && low[c] >= disc[v]) {
                largest = largest.max(sub[c]);
                separated += sub[c];
            }
            largest = largest.max(total - 1 - separated);
            out[v] = total - 1 - largest;
        }
        out
    }

    /// Vertices of `u`'s component cut off from the largest remaining piece
    /// when `u` is removed.
    pub fn impact(&self, u: usize) -> usize {
        let comp = self.reach(u, None);
        let total = comp.iter().filter(|&&b| b).count();
        let mut done = vec![false; self.adj.len()];
        let mut largest = 0;
        for &y in &self.adj[u] {
            if done[y] {
                continue;
            }
            let piece = self.reach(y, Some(u));
            let size = piece.iter().filter(|&&b| b).count();
            for (i, &b) in piece.iter().enumerate() {
                done[i] |= b;
            }
            largest = largest.max(size);
        }
        if total == 1 {
            0
        } else {
            total - 1 - largest
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> NaiveGraph {
        let mut g = NaiveGraph::new();
        for _ in 0..3 {
            g.add_vertex();
        }
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 2).unwrap();
        g
    }

    #[test]
    fn impact_on_a_path() {
        let g = path3();
        assert_eq!(g.impact(1), 1);
        assert_eq!(g.impact(0), 0);
        assert_eq!(g.impacts(), vec![0, 1, 0]);
        assert_eq!(g.articulation_points(), BTreeSet::from([1]));
        assert_eq!(g.bridges(), BTreeSet::from([(0, 1), (1, 2)]));
    }

    #[test]
    fn triangle_is_one_block() {
        let mut g = path3();
        g.add_edge(0, 2).unwrap();
        assert!(g.articulation_points().is_empty());
        assert_eq!(g.blocks(), BTreeSet::from([BTreeSet::from([0, 1, 2])]));
    }

    #[test]
    fn self_loops_are_rejected() {
        let mut g = path3();
        assert_eq!(g.add_edge(1, 1), Err(Error::SelfLoop));
    }

    #[test]
    fn lca_and_distance() {
        let mut f = NaiveForest::new();
        let r = f.add_vertex(0);
        let a = f.add_vertex(0);
        let b = f.add_vertex(0);
        f.link(r, a, 1.0).unwrap();
        f.link(r, b, 1.0).unwrap();
        assert_eq!(f.lca(a, b).unwrap(), r);
        assert_eq!(f.lca(a, a).unwrap(), a);
        assert_eq!(f.distance(a, b).unwrap(), 2);
        assert_eq!(f.betweenness(r).unwrap(), 1);
    }

    #[test]
    fn single_edge_farness() {
        let mut f = NaiveForest::new();
        let a = f.add_vertex(0);
        let b = f.add_vertex(0);
        f.link(a, b, 2.5).unwrap();
        assert_eq!((f.farness(a).unwrap(), f.farness(b).unwrap()), (2.5, 2.5));
    }

    #[test]
    fn evert_reverses_the_path() {
        let mut f = NaiveForest::new();
        let a = f.add_vertex(0);
        let b = f.add_vertex(0);
        let c = f.add_vertex(0);
        f.link(a, b, 1.0).unwrap();
        f.link(b, c, 2.0).unwrap();
        f.evert(c).unwrap();
        assert_eq!(f.parent(b).unwrap(), Some(c));
        assert_eq!(f.parent(a).unwrap(), Some(b));
        assert_eq!(f.weight(b).unwrap(), 2.0);
        assert_eq!(f.weight(a).unwrap(), 1.0);
    }

    #[test]
    fn both_impact_computations_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let n = rng.gen_range(1..25);
            let mut g = NaiveGraph::new();
            for _ in 0..n {
                g.add_vertex();
            }
            for _ in 0..rng.gen_range(0..2 * n) {
                let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if a != b {
                    g.add_edge(a, b).unwrap();
                }
            }
            let all = g.impacts();
            let arts = g.articulation_points();
            for (v, &imp) in all.iter().enumerate() {
                assert_eq!(imp, g.impact(v));
                assert!(
                    imp == 0 || arts.contains(&v),
                    "only articulation points have impact"
                );
            }
        }
    }
}
