//! The dynamic forest.
//!
//! Every tree is stored as its depth first tour in a [`ParenSeq`]. A tree's
//! tour is a contiguous range of one sequence; after a root is condensed,
//! the orphaned children keep sharing a sequence until a later operation
//! splits them apart. Prefix folds stay correct across such neighbours
//! because a complete tour contributes nothing to any path-style fold.
//!
//! Vertex values come in two flavours. The *reduction value* (`val`) feeds
//! the children and subtree reductions. The *effective value* additionally
//! sees the lazy path and subtree increments: it is
//!
//! ```text
//! eff(v) = self(v) + Σ_{u in subtree(v)} up(u) + Σ_{u on path(v → root)} down(u)
//! ```
//!
//! where `up` and `down` live in the sequence so that the two sums are one
//! range fold and one prefix fold.

use crate::error::{Error, Result};
use crate::parenseq::{Annotation, ParenSeq, NIL};
use crate::summary::{
    DepthSummary, LcaSummary, Max, Monoid, PairSum, Paren, RcSummary, RcsSummary, SizePair,
    SizeSquare, Sum,
};

/// A vertex of a [`Forest`]. Handles die when their vertex is erased.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    idx: u32,
    gen: u32,
}

impl Vertex {
    /// Slot index; unique among live vertices, reused after erasure.
    pub fn index(self) -> u32 {
        self.idx
    }
}

/// Binary operation selector for the fixed set of reductions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Sum,
    Max,
}

impl Op {
    /// The identity; for `Max` this is `i64::MIN`.
    pub fn identity(self) -> i64 {
        match self {
            Op::Sum => Sum::identity(),
            Op::Max => Max::identity(),
        }
    }

    pub fn apply(self, a: i64, b: i64) -> i64 {
        match self {
            Op::Sum => Sum::op(a, b),
            Op::Max => Max::op(a, b),
        }
    }
}

/// Payload shared by the two parentheses of a vertex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Item {
    pub vertex: u32,
    pub val: i64,
    /// Weight of the edge to the parent; zero for roots.
    pub weight: f64,
    pub d_up: i64,
    pub d_down: i64,
}

/// Everything a splay node caches about its range.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Agg {
    pub opens: i64,
    pub lca: LcaSummary<u32>,
    pub rc_sum: RcSummary<Sum>,
    pub rc_max: RcSummary<Max>,
    pub rc_count: RcSummary<Sum>,
    pub rcs_ss: RcsSummary<Sum, Sum>,
    pub rcs_mm: RcsSummary<Max, Max>,
    pub rcs_sm: RcsSummary<Sum, Max>,
    pub rcs_ms: RcsSummary<Max, Sum>,
    pub rcs_sq: RcsSummary<SizeSquare, PairSum>,
    /// `+val` on opens, `-val` on closes.
    pub path_val: i64,
    /// `+weight` on opens, `-weight` on closes.
    pub path_weight: f64,
    /// Sum over the opens in the range of their weighted depth, measured
    /// from the start of the range.
    pub swd: f64,
    pub sub_up: i64,
    pub path_down: i64,
}

impl Annotation for Agg {
    type Item = Item;

    fn identity() -> Self {
        Agg {
            opens: 0,
            lca: LcaSummary::empty(),
            rc_sum: RcSummary::empty(),
            rc_max: RcSummary::empty(),
            rc_count: RcSummary::empty(),
            rcs_ss: RcsSummary::empty(),
            rcs_mm: RcsSummary::empty(),
            rcs_sm: RcsSummary::empty(),
            rcs_ms: RcsSummary::empty(),
            rcs_sq: RcsSummary::empty(),
            path_val: 0,
            path_weight: 0.0,
            swd: 0.0,
            sub_up: 0,
            path_down: 0,
        }
    }

    fn from_item(kind: Paren, node: u32, it: &Item) -> Self {
        let open = kind == Paren::Open;
        let sign = if open { 1 } else { -1 };
        Agg {
            opens: open as i64,
            lca: LcaSummary::single(kind, node),
            rc_sum: RcSummary::single(kind, it.val),
            rc_max: RcSummary::single(kind, it.val),
            rc_count: RcSummary::single(kind, 1),
            rcs_ss: RcsSummary::single(kind, it.val),
            rcs_mm: RcsSummary::single(kind, it.val),
            rcs_sm: RcsSummary::single(kind, it.val),
            rcs_ms: RcsSummary::single(kind, it.val),
            rcs_sq: RcsSummary::single(kind, SizePair::UNIT),
            path_val: sign * it.val,
            path_weight: sign as f64 * it.weight,
            swd: if open { it.weight } else { 0.0 },
            sub_up: if open { it.d_up } else { 0 },
            path_down: sign * it.d_down,
        }
    }

    fn concat(&self, b: &Self) -> Self {
        Agg {
            opens: self.opens + b.opens,
            lca: self.lca.concat(b.lca),
            rc_sum: self.rc_sum.concat(&b.rc_sum),
            rc_max: self.rc_max.concat(&b.rc_max),
            rc_count: self.rc_count.concat(&b.rc_count),
            rcs_ss: self.rcs_ss.concat(&b.rcs_ss),
            rcs_mm: self.rcs_mm.concat(&b.rcs_mm),
            rcs_sm: self.rcs_sm.concat(&b.rcs_sm),
            rcs_ms: self.rcs_ms.concat(&b.rcs_ms),
            rcs_sq: self.rcs_sq.concat(&b.rcs_sq),
            path_val: self.path_val + b.path_val,
            path_weight: self.path_weight + b.path_weight,
            swd: self.swd + b.swd + b.opens as f64 * self.path_weight,
            sub_up: self.sub_up + b.sub_up,
            path_down: self.path_down + b.path_down,
        }
    }

    fn depth(&self) -> DepthSummary {
        self.lca.summary
    }
}

#[derive(Clone, Debug)]
struct Slot {
    open: u32,
    close: u32,
    gen: u32,
    alive: bool,
    d_self: i64,
}

/// A rooted tree in flat form: `parent[i]` indexes an earlier or later entry,
/// and exactly one entry has no parent. Children keep their relative order.
#[derive(Clone, Debug, PartialEq)]
pub struct RootedTree {
    pub parent: Vec<Option<usize>>,
    pub val: Vec<i64>,
    /// Weight of the edge to the parent (ignored for the root).
    pub weight: Vec<f64>,
}

impl RootedTree {
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Children lists in index order, plus the root. Rejects trees with
    /// zero or several roots, dangling indices and cycles.
    fn shape(&self) -> Result<(usize, Vec<Vec<usize>>)> {
        let n = self.parent.len();
        if self.val.len() != n || self.weight.len() != n {
            return Err(Error::MalformedTree("field lengths differ".into()));
        }
        let mut children = vec![Vec::new(); n];
        let mut root = None;
        for (i, p) in self.parent.iter().enumerate() {
            match *p {
                None if root.is_some() => return Err(Error::MalformedTree("several roots".into())),
                None => root = Some(i),
                Some(p) if p >= n || p == i => {
                    return Err(Error::MalformedTree(format!("bad parent of {i}")))
                }
                Some(p) => children[p].push(i),
            }
        }
        let root = root.ok_or_else(|| Error::MalformedTree("no root".into()))?;
        let mut seen = 0;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            seen += 1;
            stack.extend(children[x].iter().copied());
        }
        if seen != n {
            return Err(Error::MalformedTree("cycle".into()));
        }
        Ok((root, children))
    }
}

/// A forest of rooted, ordered trees with logarithmic updates and queries.
#[derive(Clone, Default)]
pub struct Forest {
    seq: ParenSeq<Agg>,
    slots: Vec<Slot>,
    free: Vec<u32>,
    live: usize,
}

impl Forest {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of live vertices.
    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.slots
            .get(v.idx as usize)
            .is_some_and(|s| s.alive && s.gen == v.gen)
    }

    /// Live vertices in slot order.
    pub fn vertices(&self) -> Vec<Vertex> {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, s)| s.alive)
            .map(|(i, s)| Vertex {
                idx: i as u32,
                gen: s.gen,
            })
            .collect()
    }

    fn check(&self, v: Vertex) -> Result<&Slot> {
        match self.slots.get(v.idx as usize) {
            Some(s) if s.alive && s.gen == v.gen => Ok(s),
            _ => Err(Error::InvalidHandle),
        }
    }

    fn nodes(&self, v: Vertex) -> Result<(u32, u32)> {
        self.check(v).map(|s| (s.open, s.close))
    }

    fn vertex_of(&self, node: u32) -> Vertex {
        let idx = self.seq.item(node).vertex;
        Vertex {
            idx,
            gen: self.slots[idx as usize].gen,
        }
    }

    fn new_slot(&mut self, open: u32, close: u32, d_self: i64) -> u32 {
        let slot = Slot {
            open,
            close,
            gen: 0,
            alive: true,
            d_self,
        };
        self.live += 1;
        match self.free.pop() {
            Some(i) => {
                let gen = self.slots[i as usize].gen;
                self.slots[i as usize] = Slot { gen, ..slot };
                i
            }
            None => {
                self.slots.push(slot);
                (self.slots.len() - 1) as u32
            }
        }
    }

    /// Creates a singleton tree whose reduction and effective values are `val`.
    pub fn add_vertex(&mut self, val: i64) -> Vertex {
        let idx = self.free.last().copied().unwrap_or(self.slots.len() as u32);
        let item = Item {
            vertex: idx,
            val,
            weight: 0.0,
            d_up: 0,
            d_down: 0,
        };
        let (o, c) = self.seq.new_pair(item);
        let got = self.new_slot(o, c, val);
        debug_assert_eq!(got, idx);
        Vertex {
            idx,
            gen: self.slots[idx as usize].gen,
        }
    }

    fn item_of(&self, v: Vertex) -> Result<Item> {
        let (o, _) = self.nodes(v)?;
        Ok(*self.seq.item(o))
    }

    fn update_item(&mut self, v: Vertex, f: impl FnOnce(&mut Item)) -> Result<()> {
        let (o, c) = self.nodes(v)?;
        let mut it = *self.seq.item(o);
        f(&mut it);
        self.seq.set_item(o, it);
        self.seq.set_item(c, it);
        Ok(())
    }

    // ----- navigation -----

    /// Root of `v`'s tree: the leftmost minimum of the suffix from `Close(v)`.
    pub fn root(&mut self, v: Vertex) -> Result<Vertex> {
        let (_, c) = self.nodes(v)?;
        let s = self.seq.fold_suffix(c);
        let m = s
            .lca
            .leftmost_min
            .expect("a close parenthesis reaches depth -1");
        Ok(self.vertex_of(m))
    }

    pub fn is_root(&mut self, v: Vertex) -> Result<bool> {
        Ok(self.parent(v)?.is_none())
    }

    pub fn same_tree(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        let (uo, _) = self.nodes(u)?;
        let (vo, _) = self.nodes(v)?;
        if !self.seq.same_seq(uo, vo) {
            return Ok(false);
        }
        Ok(self.root(u)? == self.root(v)?)
    }

    /// Whether `u` lies in the subtree of `v` (every vertex is its own
    /// descendant).
    pub fn is_descendant(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        let (uo, uc) = self.nodes(u)?;
        let (vo, vc) = self.nodes(v)?;
        if !self.seq.same_seq(uo, vo) {
            return Ok(false);
        }
        Ok(self.seq.precedes(vo, uo) && self.seq.precedes(uc, vc))
    }

    pub fn parent(&mut self, v: Vertex) -> Result<Option<Vertex>> {
        self.ancestor(v, 1)
    }

    /// The `k`-th ancestor; `ancestor(v, 0) == v`, absent past the root.
    pub fn ancestor(&mut self, v: Vertex, k: u32) -> Result<Option<Vertex>> {
        let (_, c) = self.nodes(v)?;
        if k == 0 {
            return Ok(Some(v));
        }
        let Some(next) = self.seq.successor(c) else {
            return Ok(None);
        };
        let k = i32::try_from(k).unwrap_or(i32::MAX);
        Ok(self
            .seq
            .search_prefix_depth(next, k)
            .map(|n| self.vertex_of(n)))
    }

    pub fn lca(&mut self, u: Vertex, v: Vertex) -> Result<Vertex> {
        if !self.same_tree(u, v)? {
            return Err(Error::DifferentTrees);
        }
        if self.is_descendant(u, v)? {
            return Ok(v);
        }
        if self.is_descendant(v, u)? {
            return Ok(u);
        }
        let (_, uc) = self.nodes(u)?;
        let (_, vc) = self.nodes(v)?;
        let (a, b) = if self.seq.precedes(uc, vc) {
            (uc, vc)
        } else {
            (vc, uc)
        };
        let f = self.seq.fold(a, b);
        let w = self.vertex_of(f.lca.leftmost_min.expect("range starts with a close"));
        Ok(self
            .parent(w)?
            .expect("the minimum lies strictly below the lca"))
    }

    fn interior(&mut self, v: Vertex) -> Result<Option<Agg>> {
        let (o, c) = self.nodes(v)?;
        Ok(self.seq.fold_between(o, c))
    }

    fn whole(&mut self, v: Vertex) -> Result<Agg> {
        let (o, c) = self.nodes(v)?;
        Ok(self.seq.fold(o, c))
    }

    pub fn degree(&mut self, v: Vertex) -> Result<usize> {
        Ok(self.interior(v)?.map_or(0, |a| a.rc_count.body as usize))
    }

    /// Children in tour order.
    pub fn children(&mut self, v: Vertex) -> Result<Vec<Vertex>> {
        let (o, c) = self.nodes(v)?;
        let mut out = Vec::new();
        let mut cur = self.seq.successor(o).expect("open precedes its close");
        while cur != c {
            out.push(self.vertex_of(cur));
            let close = self.seq.twin(cur);
            cur = self
                .seq
                .successor(close)
                .expect("child closes before its parent");
        }
        Ok(out)
    }

    // ----- values -----

    /// The value used by reductions.
    pub fn val(&self, v: Vertex) -> Result<i64> {
        Ok(self.item_of(v)?.val)
    }

    /// Weight of the edge from `v` to its parent; 0 for roots.
    pub fn weight(&self, v: Vertex) -> Result<f64> {
        Ok(self.item_of(v)?.weight)
    }

    pub fn effective_val(&mut self, v: Vertex) -> Result<i64> {
        let d_self = self.check(v)?.d_self;
        let (o, _) = self.nodes(v)?;
        let sub = self.whole(v)?.sub_up;
        let path = self.seq.fold_prefix(o).path_down;
        Ok(d_self + sub + path)
    }

    /// Sets both the reduction value and the effective value to `x`.
    pub fn change_val(&mut self, v: Vertex, x: i64) -> Result<()> {
        let eff = self.effective_val(v)?;
        self.slots[v.idx as usize].d_self += x - eff;
        self.update_item(v, |it| it.val = x)
    }

    /// Adds `delta` to the effective value of every vertex on the path from
    /// `v` to its root.
    pub fn add_to_path(&mut self, v: Vertex, delta: i64) -> Result<()> {
        self.update_item(v, |it| it.d_up += delta)
    }

    /// Adds `delta` to the effective value of every vertex in `v`'s subtree.
    pub fn add_to_subtree(&mut self, v: Vertex, delta: i64) -> Result<()> {
        self.update_item(v, |it| it.d_down += delta)
    }

    /// Sum of the reduction values on the path from `v` to its root.
    pub fn combine(&mut self, v: Vertex) -> Result<i64> {
        let (o, _) = self.nodes(v)?;
        Ok(self.seq.fold_prefix(o).path_val)
    }

    /// `val(c₁) op … op val(c_d)` over the children; the identity for leaves.
    pub fn reduce_children(&mut self, v: Vertex, op: Op) -> Result<i64> {
        let inner = self.interior(v)?;
        Ok(match (inner, op) {
            (None, _) => op.identity(),
            (Some(a), Op::Sum) => a.rc_sum.body,
            (Some(a), Op::Max) => a.rc_max.body,
        })
    }

    /// `Σ(c₁) times … times Σ(c_d)` where `Σ(c)` folds `plus` over the subtree of c.
    pub fn reduce_child_subtrees(&mut self, v: Vertex, plus: Op, times: Op) -> Result<i64> {
        let Some(a) = self.interior(v)? else {
            return Ok(times.identity());
        };
        Ok(match (plus, times) {
            (Op::Sum, Op::Sum) => a.rcs_ss.body_times,
            (Op::Max, Op::Max) => a.rcs_mm.body_times,
            (Op::Sum, Op::Max) => a.rcs_sm.body_times,
            (Op::Max, Op::Sum) => a.rcs_ms.body_times,
        })
    }

    pub fn children_sum(&mut self, v: Vertex) -> Result<i64> {
        self.reduce_children(v, Op::Sum)
    }

    /// Largest child value, absent for leaves.
    pub fn children_max(&mut self, v: Vertex) -> Result<Option<i64>> {
        let leaf = self.degree(v)? == 0;
        let m = self.reduce_children(v, Op::Max)?;
        Ok((!leaf).then_some(m))
    }

    pub fn subtree_sum(&mut self, v: Vertex) -> Result<i64> {
        Ok(self.val(v)? + self.reduce_child_subtrees(v, Op::Sum, Op::Sum)?)
    }

    pub fn subtree_max(&mut self, v: Vertex) -> Result<i64> {
        Ok(self
            .val(v)?
            .max(self.reduce_child_subtrees(v, Op::Max, Op::Max)?))
    }

    /// Number of vertices in the subtree of `v`.
    pub fn subtree_size(&mut self, v: Vertex) -> Result<i64> {
        Ok(self.whole(v)?.opens)
    }

    /// Largest subtree sum among the children, absent for leaves.
    pub fn maxsum_child(&mut self, v: Vertex) -> Result<Option<i64>> {
        let leaf = self.degree(v)? == 0;
        let m = self.reduce_child_subtrees(v, Op::Sum, Op::Max)?;
        Ok((!leaf).then_some(m))
    }

    /// `(Σ sᵢ, Σ sᵢ²)` over the sizes `sᵢ` of the child subtrees.
    pub fn child_size_squares(&mut self, v: Vertex) -> Result<SizePair> {
        Ok(self
            .interior(v)?
            .map_or(SizePair::default(), |a| a.rcs_sq.body_times))
    }

    /// Number of edges between `v` and its root.
    pub fn depth(&mut self, v: Vertex) -> Result<u32> {
        let (o, _) = self.nodes(v)?;
        Ok((self.seq.fold_prefix(o).lca.summary.total() - 1) as u32)
    }

    /// Sum of edge weights between `v` and its root.
    pub fn weighted_depth(&mut self, v: Vertex) -> Result<f64> {
        let (o, _) = self.nodes(v)?;
        Ok(self.seq.fold_prefix(o).path_weight)
    }

    pub fn distance(&mut self, u: Vertex, v: Vertex) -> Result<u32> {
        let w = self.lca(u, v)?;
        Ok(self.depth(u)? + self.depth(v)? - 2 * self.depth(w)?)
    }

    pub fn weighted_distance(&mut self, u: Vertex, v: Vertex) -> Result<f64> {
        let w = self.lca(u, v)?;
        Ok(self.weighted_depth(u)? + self.weighted_depth(v)? - 2.0 * self.weighted_depth(w)?)
    }

    /// Sum of weighted distances from `v` to the vertices of its subtree.
    pub fn down_dists(&mut self, v: Vertex) -> Result<f64> {
        Ok(self.interior(v)?.map_or(0.0, |a| a.swd))
    }

    // ----- structural updates -----

    /// Detaches the tour `[o, c]` into a sequence of its own.
    fn extract(&mut self, o: u32, c: u32) {
        let (left, _) = self.seq.split_before(o);
        let (_, right) = self.seq.split_after(c);
        self.seq.merge(left, right);
    }

    /// Makes `v`'s tree occupy a sequence of its own.
    pub fn splice(&mut self, v: Vertex) -> Result<()> {
        let r = self.root(v)?;
        let (o, c) = self.nodes(r)?;
        self.extract(o, c);
        Ok(())
    }

    /// Makes the root `v` a child of `u` with unit edge weight.
    pub fn link(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.link_weighted(u, v, 1.0)
    }

    /// Makes the root `v` the first child of `u`, through an edge of weight `w`.
    pub fn link_weighted(&mut self, u: Vertex, v: Vertex, w: f64) -> Result<()> {
        if self.same_tree(u, v)? {
            return Err(Error::Cycle);
        }
        if !self.is_root(v)? {
            return Err(Error::NotRoot);
        }
        let (uo, _) = self.nodes(u)?;
        let (vo, vc) = self.nodes(v)?;
        // Keep effective values: u's ancestors gain v's subtree and v's
        // subtree gains u's path.
        let sub = self.seq.fold(vo, vc).sub_up;
        let path = self.seq.fold_prefix(uo).path_down;
        self.update_item(u, |it| it.d_up -= sub)?;
        self.update_item(v, |it| {
            it.d_down -= path;
            it.weight = w;
        })?;
        self.extract(vo, vc);
        let (_, after) = self.seq.split_after(uo);
        let joined = self.seq.merge(uo, vo);
        self.seq.merge(joined, after);
        Ok(())
    }

    /// Detaches the subtree of `v` from its parent; no-op on roots.
    pub fn cut(&mut self, v: Vertex) -> Result<()> {
        let Some(p) = self.parent(v)? else {
            return Ok(());
        };
        let (vo, vc) = self.nodes(v)?;
        self.extract(vo, vc);
        let sub = self.seq.fold(vo, vc).sub_up;
        let (po, _) = self.nodes(p)?;
        let path = self.seq.fold_prefix(po).path_down;
        self.update_item(p, |it| it.d_up += sub)?;
        self.update_item(v, |it| {
            it.d_down += path;
            it.weight = 0.0;
        })
    }

    /// Deletes `v`; its children take its place under its parent, or become
    /// roots if `v` was a root.
    pub fn condense(&mut self, v: Vertex) -> Result<()> {
        let parent = self.parent(v)?;
        let kids = self.children(v)?;
        let it = self.item_of(v)?;
        for &c in &kids {
            if it.d_down != 0 || parent.is_none() {
                self.update_item(c, |ci| {
                    ci.d_down += it.d_down;
                    if parent.is_none() {
                        ci.weight = 0.0;
                    }
                })?;
            }
        }
        if let Some(p) = parent {
            if it.d_up != 0 {
                self.update_item(p, |pi| pi.d_up += it.d_up)?;
            }
        }
        let (o, c) = self.nodes(v)?;
        self.seq.erase(o);
        self.seq.erase(c);
        let slot = &mut self.slots[v.idx as usize];
        slot.alive = false;
        slot.gen = slot.gen.wrapping_add(1);
        self.free.push(v.idx);
        self.live -= 1;
        Ok(())
    }

    /// Deletes `v` together with its edges; children become roots.
    pub fn erase(&mut self, v: Vertex) -> Result<()> {
        self.cut(v)?;
        self.condense(v)
    }

    /// Re-roots `v`'s tree at `v` by cutting and relinking the path to the
    /// old root; `O(d log n)` for a vertex at depth `d`.
    pub fn evert(&mut self, v: Vertex) -> Result<()> {
        let mut path = vec![v];
        while let Some(p) = self.parent(*path.last().unwrap())? {
            path.push(p);
        }
        let weights: Vec<f64> = path
            .iter()
            .map(|&x| self.weight(x))
            .collect::<Result<_>>()?;
        for &x in &path[..path.len() - 1] {
            self.cut(x)?;
        }
        for i in (0..path.len() - 1).rev() {
            self.link_weighted(path[i], path[i + 1], weights[i])?;
        }
        Ok(())
    }

    /// Re-roots by exporting and rebuilding the whole tree in `O(n)`.
    ///
    /// Lazy increments are folded into the vertices' own values, so effective
    /// values are unchanged but the increments no longer reach vertices that
    /// are linked in later.
    pub fn evert_by_rebuild(&mut self, v: Vertex) -> Result<()> {
        self.splice(v)?;
        let r = self.root(v)?;
        let (ro, _) = self.nodes(r)?;
        let tour = self.seq.flatten(ro);

        // Materialize effective values from the tour.
        let verts: Vec<u32> = tour.iter().map(|&n| self.seq.item(n).vertex).collect();
        let mut eff = std::collections::HashMap::with_capacity(tour.len() / 2);
        let mut path_down = 0i64;
        let mut stack: Vec<(u32, i64, i64)> = Vec::new();
        for &n in &tour {
            let it = *self.seq.item(n);
            match self.seq.kind(n) {
                Paren::Open => {
                    path_down += it.d_down;
                    stack.push((it.vertex, path_down, it.d_up));
                }
                Paren::Close => {
                    let (x, pd, sub) = stack.pop().expect("balanced tour");
                    eff.insert(x, self.slots[x as usize].d_self + pd + sub);
                    if let Some(top) = stack.last_mut() {
                        top.2 += sub;
                    }
                    path_down -= it.d_down;
                }
            }
        }

        // Undirected adjacency with weights, then a DFS from v.
        let mut adj: std::collections::HashMap<u32, Vec<(u32, f64)>> = Default::default();
        let mut up: Vec<u32> = Vec::new();
        for (i, &n) in tour.iter().enumerate() {
            match self.seq.kind(n) {
                Paren::Open => {
                    if let Some(&p) = up.last() {
                        let w = self.seq.item(n).weight;
                        adj.entry(p).or_default().push((verts[i], w));
                        adj.entry(verts[i]).or_default().push((p, w));
                    }
                    up.push(verts[i]);
                }
                Paren::Close => {
                    up.pop();
                }
            }
        }
        let vals: std::collections::HashMap<u32, i64> = tour
            .iter()
            .map(|&n| (self.seq.item(n).vertex, self.seq.item(n).val))
            .collect();
        for &n in &tour {
            self.seq.erase(n);
        }

        let mut elems = Vec::with_capacity(tour.len());
        let mut open_pos: Vec<usize> = Vec::new();
        let mut stack = vec![(v.idx, u32::MAX, 0.0, false)];
        while let Some((x, from, w, done)) = stack.pop() {
            let item = Item {
                vertex: x,
                val: vals[&x],
                weight: w,
                d_up: 0,
                d_down: 0,
            };
            if done {
                let at = open_pos.pop().unwrap();
                let pos = elems.len();
                elems[at] = (Paren::Open, pos, item);
                elems.push((Paren::Close, at, item));
                continue;
            }
            open_pos.push(elems.len());
            elems.push((Paren::Open, 0, item));
            stack.push((x, from, w, true));
            if let Some(ns) = adj.get(&x) {
                for &(y, wy) in ns.iter().rev() {
                    if y != from {
                        stack.push((y, x, wy, false));
                    }
                }
            }
        }
        let ids = self.seq.build(elems);
        for (i, &n) in ids.iter().enumerate() {
            let x = self.seq.item(n).vertex as usize;
            match self.seq.kind(n) {
                Paren::Open => self.slots[x].open = ids[i],
                Paren::Close => self.slots[x].close = ids[i],
            }
        }
        // With the increments cleared, the effective value is the own part.
        for (x, e) in eff {
            self.slots[x as usize].d_self = e;
        }
        Ok(())
    }

    // ----- bulk import / export -----

    /// Creates the vertices of `tree` in one linear-time build. Returned
    /// handles are indexed like the input.
    pub fn import_tree(&mut self, tree: &RootedTree) -> Result<Vec<Vertex>> {
        let (root, children) = tree.shape()?;
        let n = tree.len();
        let mut idx = Vec::with_capacity(n);
        for _ in 0..n {
            let s = self.free.pop().unwrap_or_else(|| {
                self.slots.push(Slot {
                    open: NIL,
                    close: NIL,
                    gen: 0,
                    alive: false,
                    d_self: 0,
                });
                (self.slots.len() - 1) as u32
            });
            idx.push(s);
        }
        let mut elems: Vec<(Paren, usize, Item)> = Vec::with_capacity(2 * n);
        let mut open_at = vec![0usize; n];
        let mut stack = vec![(root, false)];
        while let Some((x, done)) = stack.pop() {
            let w = if x == root { 0.0 } else { tree.weight[x] };
            let item = Item {
                vertex: idx[x],
                val: tree.val[x],
                weight: w,
                d_up: 0,
                d_down: 0,
            };
            if done {
                let pos = elems.len();
                elems[open_at[x]].1 = pos;
                elems.push((Paren::Close, open_at[x], item));
            } else {
                open_at[x] = elems.len();
                elems.push((Paren::Open, 0, item));
                stack.push((x, true));
                for &c in children[x].iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        let ids = self.seq.build(elems);
        for &n in &ids {
            let x = self.seq.item(n).vertex as usize;
            match self.seq.kind(n) {
                Paren::Open => self.slots[x].open = n,
                Paren::Close => self.slots[x].close = n,
            }
        }
        for (i, &s) in idx.iter().enumerate() {
            let slot = &mut self.slots[s as usize];
            slot.alive = true;
            slot.d_self = tree.val[i];
        }
        self.live += n;
        Ok(idx
            .iter()
            .map(|&s| Vertex {
                idx: s,
                gen: self.slots[s as usize].gen,
            })
            .collect())
    }

    /// The tree containing `v` in flat form, listed in preorder, together
    /// with the handle of every entry. Values are reduction values.
    pub fn export_tree(&mut self, v: Vertex) -> Result<(RootedTree, Vec<Vertex>)> {
        let r = self.root(v)?;
        let (ro, rc) = self.nodes(r)?;
        self.extract(ro, rc);
        let tour = self.seq.flatten(ro);
        let mut tree = RootedTree {
            parent: Vec::new(),
            val: Vec::new(),
            weight: Vec::new(),
        };
        let mut handles = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        for n in tour {
            match self.seq.kind(n) {
                Paren::Open => {
                    let it = *self.seq.item(n);
                    tree.parent.push(stack.last().copied());
                    tree.val.push(it.val);
                    tree.weight.push(it.weight);
                    handles.push(self.vertex_of(n));
                    stack.push(tree.parent.len() - 1);
                }
                Paren::Close => {
                    stack.pop();
                }
            }
        }
        Ok((tree, handles))
    }

    /// Checks every cached annotation and the tour structure of every tree.
    pub fn audit(&self) -> std::result::Result<(), String> {
        self.seq.audit_with(|a, b| a == b)?;
        if self.seq.live_len() != 2 * self.live {
            return Err(format!(
                "{} parentheses for {} vertices",
                self.seq.live_len(),
                self.live
            ));
        }
        for (i, s) in self.slots.iter().enumerate() {
            if !s.alive {
                continue;
            }
            for (n, kind) in [(s.open, Paren::Open), (s.close, Paren::Close)] {
                if !self.seq.is_alive(n) || self.seq.kind(n) != kind {
                    return Err(format!("vertex {i}: bad {kind:?} node"));
                }
                if self.seq.item(n).vertex != i as u32 {
                    return Err(format!("vertex {i}: node points elsewhere"));
                }
            }
            if self.seq.twin(s.open) != s.close {
                return Err(format!("vertex {i}: open and close are not twins"));
            }
            if self.seq.item(s.open) != self.seq.item(s.close) {
                return Err(format!("vertex {i}: payloads differ"));
            }
        }
        for root in self.seq.sequence_roots() {
            let tour = self.seq.flatten(root);
            let mut depth = 0i64;
            for &n in &tour {
                depth += if self.seq.kind(n) == Paren::Open {
                    1
                } else {
                    -1
                };
                if depth < 0 {
                    return Err("sequence dips below depth 0".into());
                }
                if depth == 0 && self.seq.item(n).weight != 0.0 {
                    return Err("a root carries an edge weight".into());
                }
            }
            if depth != 0 {
                return Err("unbalanced sequence".into());
            }
        }
        Ok(())
    }
}
