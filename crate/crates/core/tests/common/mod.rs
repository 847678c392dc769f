//! Brute-force oracles shared by the integration suites.

#![allow(dead_code)]

use dft_core::summary::{DepthSummary, LcaSummary, Monoid, Paren, RcSummary, RcsSummary};

/// Depth after each element, starting from 0 before the first.
fn boundary_depths(seq: &[(Paren, i64)]) -> Vec<i32> {
    let mut d = vec![0];
    for &(k, _) in seq {
        let last = *d.last().unwrap();
        d.push(if k == Paren::Open { last + 1 } else { last - 1 });
    }
    d
}

pub fn depth(seq: &[(Paren, i64)]) -> DepthSummary {
    let d = boundary_depths(seq);
    let m = *d.iter().min().unwrap();
    DepthSummary {
        down: m,
        up: d.last().unwrap() - m,
    }
}

/// Handles are element positions.
pub fn lca(seq: &[(Paren, i64)]) -> LcaSummary<usize> {
    lca_at(seq, 0)
}

/// Like [`lca`], with handles shifted by `offset`.
pub fn lca_at(seq: &[(Paren, i64)], offset: usize) -> LcaSummary<usize> {
    let d = boundary_depths(seq);
    let after = &d[1..];
    let leftmost_min = after
        .iter()
        .copied()
        .min()
        .filter(|&m| m <= 0)
        .map(|m| offset + after.iter().position(|&x| x == m).unwrap());
    LcaSummary {
        summary: depth(seq),
        leftmost_min,
    }
}

/// Prefix end and body end: the first and last boundaries at minimal depth.
fn split(seq: &[(Paren, i64)]) -> (usize, usize, i32) {
    let d = boundary_depths(seq);
    let m = *d.iter().min().unwrap();
    let first = d.iter().position(|&x| x == m).unwrap();
    let last = d.iter().rposition(|&x| x == m).unwrap();
    (first, last, m)
}

fn fold<M: Monoid<Value = i64>>(vals: impl Iterator<Item = i64>) -> i64 {
    vals.fold(M::identity(), M::op)
}

fn opens(seq: &[(Paren, i64)]) -> impl Iterator<Item = i64> + '_ {
    seq.iter().filter(|e| e.0 == Paren::Open).map(|e| e.1)
}

/// Top-level subtrees of a balanced range.
fn subtrees(body: &[(Paren, i64)]) -> Vec<&[(Paren, i64)]> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0, 0);
    for (i, &(k, _)) in body.iter().enumerate() {
        depth += if k == Paren::Open { 1 } else { -1 };
        if depth == 0 {
            out.push(&body[start..=i]);
            start = i + 1;
        }
    }
    out
}

pub fn rc<M: Monoid<Value = i64>>(seq: &[(Paren, i64)]) -> RcSummary<M> {
    let (p, b, m) = split(seq);
    let d = boundary_depths(seq);
    let body = fold::<M>(subtrees(&seq[p..b]).into_iter().map(|t| t[0].1));
    let suffix = &seq[b..];
    RcSummary {
        prefix_depth: m,
        body,
        suffix_depth: d.last().unwrap() - m,
        suffix_info: suffix.first().map(|e| e.1),
    }
}

pub fn rcs<P: Monoid<Value = i64>, T: Monoid<Value = i64>>(
    seq: &[(Paren, i64)],
) -> RcsSummary<P, T> {
    let (p, b, m) = split(seq);
    let d = boundary_depths(seq);
    RcsSummary {
        prefix_depth: m,
        prefix_plus: fold::<P>(opens(&seq[..p])),
        body_plus: fold::<P>(opens(&seq[p..b])),
        body_times: fold::<T>(
            subtrees(&seq[p..b])
                .into_iter()
                .map(|t| fold::<P>(opens(t))),
        ),
        suffix_plus: fold::<P>(opens(&seq[b..])),
        suffix_depth: d.last().unwrap() - m,
    }
}

/// Every parenthesis string of length `len`, values drawn from the position.
pub fn all_sequences(len: usize) -> impl Iterator<Item = Vec<(Paren, i64)>> {
    (0u32..1 << len).map(move |mask| {
        (0..len)
            .map(|i| {
                let k = if mask >> i & 1 == 1 {
                    Paren::Open
                } else {
                    Paren::Close
                };
                (k, (i as i64 * 7 + mask as i64) % 13 - 6)
            })
            .collect()
    })
}

/// Every parent array on `n` labelled vertices without cycles, i.e. every
/// rooted forest on `n` vertices.
pub fn all_forests(n: usize) -> Vec<Vec<Option<usize>>> {
    let mut out = Vec::new();
    let mut parent = vec![None; n];
    fn acyclic(parent: &[Option<usize>]) -> bool {
        (0..parent.len()).all(|v| {
            let mut cur = parent[v];
            let mut steps = 0;
            while let Some(p) = cur {
                if p == v || steps > parent.len() {
                    return false;
                }
                cur = parent[p];
                steps += 1;
            }
            true
        })
    }
    fn rec(i: usize, parent: &mut Vec<Option<usize>>, out: &mut Vec<Vec<Option<usize>>>) {
        let n = parent.len();
        if i == n {
            if acyclic(parent) {
                out.push(parent.clone());
            }
            return;
        }
        for choice in std::iter::once(None).chain((0..n).filter(|&p| p != i).map(Some)) {
            parent[i] = choice;
            rec(i + 1, parent, out);
        }
    }
    rec(0, &mut parent, &mut out);
    out
}
