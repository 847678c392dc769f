//! Range summaries over parenthesis sequences.
//!
//! Every summary here is a monoid: an identity plus an associative
//! concatenation, so it can be folded over any range of a sequence and
//! cached in the nodes of a search tree over that sequence.
//!
//! A sequence decomposes uniquely into a *prefix*, a *body* and a *suffix*.
//! Reading depths at the boundaries between parentheses (starting from 0),
//! let `m` be the minimal boundary depth. The prefix runs up to the first
//! boundary at depth `m`, the body up to the last one, and the suffix is the
//! rest. The body is balanced and consists of whole subtrees.

use std::fmt::Debug;

/// An associative operation with an identity element.
pub trait Monoid {
    type Value: Copy + PartialEq + Debug;

    fn identity() -> Self::Value;

    fn op(a: Self::Value, b: Self::Value) -> Self::Value;
}

/// Integer addition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Sum;

impl Monoid for Sum {
    type Value = i64;

    fn identity() -> i64 {
        0
    }

    fn op(a: i64, b: i64) -> i64 {
        a + b
    }
}

/// Integer maximum. The identity is `i64::MIN`, which callers should read
/// as "no element".
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Max;

impl Monoid for Max {
    type Value = i64;

    fn identity() -> i64 {
        i64::MIN
    }

    fn op(a: i64, b: i64) -> i64 {
        a.max(b)
    }
}

/// A size together with a sum of squares.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SizePair {
    pub size: i64,
    pub squares: i64,
}

impl SizePair {
    pub const UNIT: SizePair = SizePair {
        size: 1,
        squares: 1,
    };
}

/// Merges pieces of one subtree: `(a, a²) ⊕ (b, b²) = (a+b, (a+b)²)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SizeSquare;

impl Monoid for SizeSquare {
    type Value = SizePair;

    fn identity() -> SizePair {
        SizePair::default()
    }

    fn op(a: SizePair, b: SizePair) -> SizePair {
        let size = a.size + b.size;
        SizePair {
            size,
            squares: size * size,
        }
    }
}

/// Componentwise sum of size pairs; collects `(Σ sᵢ, Σ sᵢ²)` over subtrees.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PairSum;

impl Monoid for PairSum {
    type Value = SizePair;

    fn identity() -> SizePair {
        SizePair::default()
    }

    fn op(a: SizePair, b: SizePair) -> SizePair {
        SizePair {
            size: a.size + b.size,
            squares: a.squares + b.squares,
        }
    }
}

/// Whether a parenthesis opens or closes a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Paren {
    Open,
    Close,
}

/// `(down, up)`: `down` is the minimum of 0 and every prefix depth of the
/// range, `up` is the final depth minus `down`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct DepthSummary {
    pub down: i32,
    pub up: i32,
}

impl DepthSummary {
    pub const EMPTY: DepthSummary = DepthSummary { down: 0, up: 0 };
    pub const OPEN: DepthSummary = DepthSummary { down: 0, up: 1 };
    pub const CLOSE: DepthSummary = DepthSummary { down: -1, up: 0 };

    pub fn of(kind: Paren) -> Self {
        match kind {
            Paren::Open => Self::OPEN,
            Paren::Close => Self::CLOSE,
        }
    }

    /// Depth at the end of the range, relative to its start.
    #[inline]
    pub fn total(self) -> i32 {
        self.down + self.up
    }

    #[inline]
    pub fn is_balanced(self) -> bool {
        self == Self::EMPTY
    }

    #[inline]
    pub fn concat(self, b: DepthSummary) -> DepthSummary {
        if self.up + b.down >= 0 {
            DepthSummary {
                down: self.down,
                up: self.up + b.down + b.up,
            }
        } else {
            DepthSummary {
                down: self.down + self.up + b.down,
                up: b.up,
            }
        }
    }
}

/// A depth summary plus the leftmost parenthesis whose depth equals
/// `summary.down`. The handle is absent exactly when every depth in the
/// range is strictly positive (which includes the empty range).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct LcaSummary<H> {
    pub summary: DepthSummary,
    pub leftmost_min: Option<H>,
}

impl<H: Copy> LcaSummary<H> {
    pub fn empty() -> Self {
        LcaSummary {
            summary: DepthSummary::EMPTY,
            leftmost_min: None,
        }
    }

    pub fn single(kind: Paren, handle: H) -> Self {
        match kind {
            Paren::Open => LcaSummary {
                summary: DepthSummary::OPEN,
                leftmost_min: None,
            },
            Paren::Close => LcaSummary {
                summary: DepthSummary::CLOSE,
                leftmost_min: Some(handle),
            },
        }
    }

    #[inline]
    pub fn concat(self, b: Self) -> Self {
        let summary = self.summary.concat(b.summary);
        let gap = self.summary.up + b.summary.down;
        // On a tie the minimum is reached in `self` if `self` reaches it at all.
        let leftmost_min = match gap {
            g if g > 0 => self.leftmost_min,
            0 => self.leftmost_min.or(b.leftmost_min),
            _ => b.leftmost_min,
        };
        LcaSummary {
            summary,
            leftmost_min,
        }
    }
}

/// Summary used to reduce the values of the roots of the body subtrees.
///
/// `suffix_info` is the value of the first vertex of the suffix, which is
/// the one vertex whose subtree a later closing parenthesis can complete.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RcSummary<M: Monoid> {
    pub prefix_depth: i32,
    pub body: M::Value,
    pub suffix_depth: i32,
    pub suffix_info: Option<M::Value>,
}

impl<M: Monoid> RcSummary<M> {
    pub fn empty() -> Self {
        RcSummary {
            prefix_depth: 0,
            body: M::identity(),
            suffix_depth: 0,
            suffix_info: None,
        }
    }

    pub fn open(val: M::Value) -> Self {
        RcSummary {
            prefix_depth: 0,
            body: M::identity(),
            suffix_depth: 1,
            suffix_info: Some(val),
        }
    }

    pub fn close() -> Self {
        RcSummary {
            prefix_depth: -1,
            body: M::identity(),
            suffix_depth: 0,
            suffix_info: None,
        }
    }

    pub fn single(kind: Paren, val: M::Value) -> Self {
        match kind {
            Paren::Open => Self::open(val),
            Paren::Close => Self::close(),
        }
    }

    pub fn concat(&self, b: &Self) -> Self {
        let gap = self.suffix_depth + b.prefix_depth;
        if gap > 0 {
            RcSummary {
                prefix_depth: self.prefix_depth,
                body: self.body,
                suffix_depth: gap + b.suffix_depth,
                suffix_info: self.suffix_info,
            }
        } else if gap < 0 {
            RcSummary {
                prefix_depth: self.prefix_depth + gap,
                body: b.body,
                suffix_depth: b.suffix_depth,
                suffix_info: b.suffix_info,
            }
        } else {
            // `b`'s prefix closes the subtree opened at the start of our suffix.
            let closed = match self.suffix_info {
                Some(v) if self.suffix_depth > 0 => M::op(self.body, v),
                _ => self.body,
            };
            RcSummary {
                prefix_depth: self.prefix_depth,
                body: M::op(closed, b.body),
                suffix_depth: b.suffix_depth,
                suffix_info: b.suffix_info,
            }
        }
    }
}

/// Summary used to reduce whole child subtrees: every vertex value is
/// ⊕-folded into the piece (prefix, body or suffix) holding its opening
/// parenthesis, and each complete subtree of the body contributes its
/// ⊕-fold `Σ` to a ⊗-fold.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RcsSummary<P: Monoid, T: Monoid<Value = P::Value>> {
    pub prefix_depth: i32,
    pub prefix_plus: P::Value,
    pub body_plus: P::Value,
    pub body_times: T::Value,
    pub suffix_plus: P::Value,
    pub suffix_depth: i32,
}

impl<P: Monoid, T: Monoid<Value = P::Value>> RcsSummary<P, T> {
    pub fn empty() -> Self {
        RcsSummary {
            prefix_depth: 0,
            prefix_plus: P::identity(),
            body_plus: P::identity(),
            body_times: T::identity(),
            suffix_plus: P::identity(),
            suffix_depth: 0,
        }
    }

    pub fn open(val: P::Value) -> Self {
        RcsSummary {
            suffix_plus: val,
            suffix_depth: 1,
            ..Self::empty()
        }
    }

    pub fn close() -> Self {
        RcsSummary {
            prefix_depth: -1,
            ..Self::empty()
        }
    }

    pub fn single(kind: Paren, val: P::Value) -> Self {
        match kind {
            Paren::Open => Self::open(val),
            Paren::Close => Self::close(),
        }
    }

    pub fn concat(&self, b: &Self) -> Self {
        let gap = self.suffix_depth + b.prefix_depth;
        if gap > 0 {
            let inner = P::op(P::op(b.prefix_plus, b.body_plus), b.suffix_plus);
            RcsSummary {
                prefix_depth: self.prefix_depth,
                prefix_plus: self.prefix_plus,
                body_plus: self.body_plus,
                body_times: self.body_times,
                suffix_plus: P::op(self.suffix_plus, inner),
                suffix_depth: gap + b.suffix_depth,
            }
        } else if gap < 0 {
            let all = P::op(P::op(self.prefix_plus, self.body_plus), self.suffix_plus);
            RcsSummary {
                prefix_depth: self.prefix_depth + gap,
                prefix_plus: P::op(all, b.prefix_plus),
                body_plus: b.body_plus,
                body_times: b.body_times,
                suffix_plus: b.suffix_plus,
                suffix_depth: b.suffix_depth,
            }
        } else {
            let (body_plus, body_times) = if self.suffix_depth > 0 {
                let sigma = P::op(self.suffix_plus, b.prefix_plus);
                (
                    P::op(P::op(self.body_plus, sigma), b.body_plus),
                    T::op(T::op(self.body_times, sigma), b.body_times),
                )
            } else {
                (
                    P::op(self.body_plus, b.body_plus),
                    T::op(self.body_times, b.body_times),
                )
            };
            RcsSummary {
                prefix_depth: self.prefix_depth,
                prefix_plus: self.prefix_plus,
                body_plus,
                body_times,
                suffix_plus: b.suffix_plus,
                suffix_depth: b.suffix_depth,
            }
        }
    }
}
