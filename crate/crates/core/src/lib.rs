//! Dynamic forests represented by depth first tours.
//!
//! A rooted tree is stored as its parenthesized depth-first tour: every
//! vertex contributes an opening parenthesis when the walk enters it and a
//! closing one when it leaves. The tour lives in a splay tree annotated with
//! range summaries, which turns link, cut, re-rooting and most queries into
//! a constant number of split, merge and fold operations.

pub mod block_forest;
pub mod centrality;
pub mod error;
pub mod forest;
pub mod lockstep;
pub mod oracle;
pub mod parenseq;
pub mod summary;
pub mod workload;

pub use block_forest::BlockForest;
pub use centrality::CentralityForest;
pub use error::{Error, Result};
pub use forest::{Forest, Op, RootedTree, Vertex};
pub use parenseq::{Annotation, NodeRef, ParenSeq};
pub use summary::{DepthSummary, LcaSummary, Monoid, Paren, RcSummary, RcsSummary};
