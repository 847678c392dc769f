//! Betweenness and closeness centrality on dynamic forests.
//!
//! Betweenness of `v` counts unordered pairs `{s, t}`, both different from
//! `v`, whose tree path passes through `v`. With `sᵢ` the sizes of the child
//! subtrees, `S = Σ sᵢ`, `Q = Σ sᵢ²` and `A` the number of vertices outside
//! the subtree of `v`:
//!
//! ```text
//! bc(v) = A·S + (S² − Q) / 2
//! ```
//!
//! Farness is the sum of weighted distances to every vertex of the tree.
//! Writing `wd` for weighted depth and `n` for the tree size,
//!
//! ```text
//! farness(v) = n·wd(v) + Σ_y wd(y) − 2 Σ_{b on path(v), b ≠ root} w(b)·size(b)
//! ```
//!
//! because `Σ_y wd(lca(v, y))` charges each edge on `v`'s root path once per
//! vertex below it. `Σ_y wd(y)` is a single fold; the last sum walks the
//! root path, so farness costs `O(d log n)` at depth `d`.

use crate::error::{Error, Result};
use crate::forest::{Forest, Vertex};

/// Number of unordered vertex pairs whose path has `v` strictly inside.
pub fn betweenness(f: &mut Forest, v: Vertex) -> Result<i64> {
    let sq = f.child_size_squares(v)?;
    let root = f.root(v)?;
    let outside = f.subtree_size(root)? - f.subtree_size(v)?;
    let twice_inner = sq.size * sq.size - sq.squares;
    debug_assert!(twice_inner % 2 == 0);
    Ok(outside * sq.size + twice_inner / 2)
}

/// Sum of weighted distances from `v` to the vertices of its subtree.
pub fn down_dists(f: &mut Forest, v: Vertex) -> Result<f64> {
    f.down_dists(v)
}

/// Sum of weighted distances from `v` to the vertices outside its subtree.
pub fn up_dists(f: &mut Forest, v: Vertex) -> Result<f64> {
    Ok(farness(f, v)? - f.down_dists(v)?)
}

/// Sum of weighted distances from `v` to every vertex of its tree.
pub fn farness(f: &mut Forest, v: Vertex) -> Result<f64> {
    let root = f.root(v)?;
    let n = f.subtree_size(root)? as f64;
    let all_depths = f.down_dists(root)?;
    let mut shared = 0.0;
    let mut cur = v;
    while let Some(p) = f.parent(cur)? {
        shared += f.weight(cur)? * f.subtree_size(cur)? as f64;
        cur = p;
    }
    Ok(n * f.weighted_depth(v)? + all_depths - 2.0 * shared)
}

/// Reciprocal of farness; undefined for isolated vertices.
pub fn closeness(f: &mut Forest, v: Vertex) -> Result<f64> {
    let far = farness(f, v)?;
    if far == 0.0 {
        return Err(Error::Undefined("closeness of an isolated vertex"));
    }
    Ok(1.0 / far)
}

/// A forest restricted to the structural operations, with centrality queries.
///
/// Centralities are derived from the tour on demand, so there is no separate
/// state that raw updates could invalidate; the wrapper exists to offer the
/// weighted structural API in one place.
#[derive(Clone, Default)]
pub struct CentralityForest {
    forest: Forest,
}

impl CentralityForest {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.forest.add_vertex(0)
    }

    pub fn cc_link(&mut self, u: Vertex, v: Vertex, w: f64) -> Result<()> {
        self.forest.link_weighted(u, v, w)
    }

    pub fn cc_cut(&mut self, v: Vertex) -> Result<()> {
        self.forest.cut(v)
    }

    pub fn cc_condense(&mut self, v: Vertex) -> Result<()> {
        self.forest.condense(v)
    }

    pub fn cc_erase(&mut self, v: Vertex) -> Result<()> {
        self.forest.erase(v)
    }

    pub fn cc_evert(&mut self, v: Vertex) -> Result<()> {
        self.forest.evert(v)
    }

    pub fn betweenness(&mut self, v: Vertex) -> Result<i64> {
        betweenness(&mut self.forest, v)
    }

    pub fn farness(&mut self, v: Vertex) -> Result<f64> {
        farness(&mut self.forest, v)
    }

    pub fn closeness(&mut self, v: Vertex) -> Result<f64> {
        closeness(&mut self.forest, v)
    }

    pub fn up_dists(&mut self, v: Vertex) -> Result<f64> {
        up_dists(&mut self.forest, v)
    }

    pub fn down_dists(&mut self, v: Vertex) -> Result<f64> {
        down_dists(&mut self.forest, v)
    }

    pub fn root(&mut self, v: Vertex) -> Result<Vertex> {
        self.forest.root(v)
    }

    pub fn parent(&mut self, v: Vertex) -> Result<Option<Vertex>> {
        self.forest.parent(v)
    }

    pub fn same_tree(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        self.forest.same_tree(u, v)
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.forest.vertices()
    }

    pub fn audit(&self) -> std::result::Result<(), String> {
        self.forest.audit()
    }
}
