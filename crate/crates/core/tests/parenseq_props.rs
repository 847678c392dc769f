use dft_core::summary::{DepthSummary, LcaSummary, Paren};
use dft_core::{Annotation, NodeRef, ParenSeq};
use proptest::prelude::*;

#[derive(Clone, Debug, PartialEq)]
struct Ann {
    lca: LcaSummary<u32>,
    sum: i64,
}

impl Annotation for Ann {
    type Item = i64;

    fn identity() -> Self {
        Ann {
            lca: LcaSummary::empty(),
            sum: 0,
        }
    }

    fn from_item(kind: Paren, node: u32, item: &i64) -> Self {
        Ann {
            lca: LcaSummary::single(kind, node),
            sum: *item,
        }
    }

    fn concat(&self, o: &Self) -> Self {
        Ann {
            lca: self.lca.concat(o.lca),
            sum: self.sum + o.sum,
        }
    }

    fn depth(&self) -> DepthSummary {
        self.lca.summary
    }
}

type Model = Vec<(NodeRef, Paren, i64)>;

/// One sequence holding an arbitrary parenthesis string, plus its model.
/// Pair halves are split apart and laid out in the order given by `perm`,
/// so the string need not be balanced.
fn build(vals: &[i64], perm: &[usize]) -> (ParenSeq<Ann>, Model) {
    let mut seq = ParenSeq::new();
    let mut elems = Vec::new();
    for &x in vals {
        let (o, c) = seq.insert_pair(x);
        seq.cut_after(o).unwrap();
        elems.extend([(o, Paren::Open, x), (c, Paren::Close, x)]);
    }
    let model: Model = perm.iter().map(|&i| elems[i]).collect();
    for w in model.windows(2) {
        seq.join(w[0].0, w[1].0).unwrap();
    }
    (seq, model)
}

fn linear(model: &[(NodeRef, Paren, i64)]) -> Ann {
    model.iter().fold(Ann::identity(), |a, &(n, k, x)| {
        a.concat(&Ann::from_item(k, n.index(), &x))
    })
}

fn layout() -> impl Strategy<Value = (Vec<i64>, Vec<usize>)> {
    prop::collection::vec(-50i64..50, 1..25).prop_flat_map(|vals| {
        let perm = Just((0..2 * vals.len()).collect::<Vec<_>>()).prop_shuffle();
        (Just(vals), perm)
    })
}

proptest! {
    #[test]
    fn range_folds_match_linear_refold(s in layout(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let (mut seq, model) = build(&s.0, &s.1);
        seq.audit_with(|x, y| x == y).unwrap();
        let (i, j) = (a.index(model.len()), b.index(model.len()));
        let (i, j) = (i.min(j), i.max(j));
        prop_assert_eq!(seq.range_fold(model[i].0, model[j].0).unwrap(), linear(&model[i..=j]));
        if i < j {
            prop_assert!(seq.range_fold(model[j].0, model[i].0).is_err());
        }
        prop_assert_eq!(seq.fold_all(model[j].0).unwrap(), linear(&model));
    }

    #[test]
    fn removing_a_pair_stales_both_handles(s in layout()) {
        let (mut seq, model) = build(&s.0, &s.1);
        let (n, _, _) = model[0];
        let twin = seq.twin_of(n).unwrap();
        seq.remove(n).unwrap();
        prop_assert!(seq.kind_of(n).is_err());
        prop_assert!(seq.kind_of(twin).is_err());
        seq.audit_with(|x, y| x == y).unwrap();
        prop_assert_eq!(seq.live_len(), model.len() - 2);
    }

    #[test]
    fn depth_search_matches_linear_scan(s in layout(), a in any::<prop::sample::Index>(), k in 1i32..6) {
        let (mut seq, model) = build(&s.0, &s.1);
        let i = a.index(model.len());
        let mut depth = 0;
        let expect = model[i..].iter().find(|&&(_, kind, _)| {
            depth += if kind == Paren::Open { 1 } else { -1 };
            depth <= -k
        }).map(|e| e.0);
        prop_assert_eq!(seq.first_reaching_depth(model[i].0, k).unwrap(), expect);
    }

    #[test]
    fn rotation_keeps_order_and_folds(s in layout(), a in any::<prop::sample::Index>()) {
        let (mut seq, mut model) = build(&s.0, &s.1);
        let i = a.index(model.len());
        if let Some(right) = seq.cut_after(model[i].0).unwrap() {
            let last = seq.seq_last(right).unwrap();
            seq.join(last, model[0].0).unwrap();
            model.rotate_left(i + 1);
        }
        seq.audit_with(|x, y| x == y).unwrap();
        let order: Vec<NodeRef> = model.iter().map(|e| e.0).collect();
        prop_assert_eq!(seq.to_vec(model[0].0).unwrap(), order);
        prop_assert_eq!(seq.fold_all(model[0].0).unwrap(), linear(&model));
        for w in model.windows(2) {
            prop_assert!(seq.is_before(w[0].0, w[1].0).unwrap());
            prop_assert_eq!(seq.next(w[0].0).unwrap(), Some(w[1].0));
        }
    }
}
