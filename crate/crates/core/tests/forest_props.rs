mod common;

use proptest::prelude::*;
use uf_explain::ufe_fast::awalk_verts_from_rep;
use uf_explain::{equiv_closure, CompressedForest, IntForest, UnionPolicy};

use common::{effective, unions_strategy};

fn log2_floor(x: usize) -> usize {
    (usize::BITS - 1 - x.leading_zeros()) as usize
}

proptest! {
    #[test]
    fn encoding_invariants_hold((n, unions) in unions_strategy(32, 48), sizes in any::<Vec<bool>>()) {
        let mut uf = IntForest::new(n);
        for (i, &(x, y)) in unions.iter().enumerate() {
            if sizes.get(i).copied().unwrap_or(false) {
                uf.union_size(x, y).unwrap();
            } else {
                uf.union(x, y).unwrap();
            }
            uf.validate().unwrap();
        }
        let total: u64 = uf.cells().iter().filter(|&&c| c < 0).map(|c| c.unsigned_abs()).sum();
        prop_assert_eq!(total, n as u64);
    }

    #[test]
    fn reps_match_closure((n, unions) in unions_strategy(32, 48)) {
        let mut uf = IntForest::new(n);
        for &(x, y) in &unions {
            uf.union(x, y).unwrap();
        }
        let closure = equiv_closure(&unions, n).unwrap();
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(uf.rep_of(x).unwrap() == uf.rep_of(y).unwrap(), closure.contains(x, y));
            }
            prop_assert_eq!(uf.size(x).unwrap(), uf.eq_class(x).unwrap().len());
            prop_assert!(uf.eq_class(x).unwrap().contains(&x));
        }
    }

    #[test]
    fn union_by_size_depth_bound((n, unions) in unions_strategy(64, 96)) {
        let mut uf = IntForest::new(n);
        for &(x, y) in &unions {
            uf.union_size(x, y).unwrap();
        }
        for x in 0..n {
            let walk = awalk_verts_from_rep(&uf, x).unwrap();
            prop_assert!(walk.len() <= log2_floor(uf.size(x).unwrap()) + 1);
        }
    }

    #[test]
    fn compression_agrees((n, unions) in unions_strategy(32, 48), queries in prop::collection::vec(any::<prop::sample::Index>(), 0..32)) {
        let mut uf = IntForest::new(n);
        let mut cf = CompressedForest::new(n);
        for (i, &(x, y)) in unions.iter().enumerate() {
            uf.union(x, y).unwrap();
            cf.union(x, y).unwrap();
            if let Some(q) = queries.get(i) {
                cf.find(q.index(n)).unwrap();
            }
            for x in 0..n {
                prop_assert_eq!(uf.rep_of(x).unwrap(), cf.rep_of(x).unwrap());
            }
        }
    }

    #[test]
    fn find_compress_points_path_at_root((n, unions) in unions_strategy(32, 48), q in any::<prop::sample::Index>()) {
        let mut cf = CompressedForest::new(n);
        for &(x, y) in &unions {
            cf.union(x, y).unwrap();
        }
        let before: Vec<_> = (0..n).map(|x| cf.rep_of(x).unwrap()).collect();
        let x = q.index(n);
        let mut path = vec![x];
        while cf.parents()[*path.last().unwrap()] != *path.last().unwrap() {
            path.push(cf.parents()[*path.last().unwrap()]);
        }
        let root = cf.find(x).unwrap();
        for v in path {
            prop_assert_eq!(cf.parents()[v], root);
        }
        let after: Vec<_> = (0..n).map(|x| cf.rep_of(x).unwrap()).collect();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn union_of_equivalent_is_noop((n, unions) in unions_strategy(16, 24), pick in any::<(prop::sample::Index, prop::sample::Index)>()) {
        let log = effective(n, UnionPolicy::Raw, &unions);
        let mut uf = IntForest::new(n);
        for &(x, y) in &log {
            uf.union(x, y).unwrap();
        }
        let x = pick.0.index(n);
        let class = uf.eq_class(x).unwrap();
        let y = class[pick.1.index(class.len())];
        let before = uf.clone();
        prop_assert_eq!(uf.union(x, y).unwrap(), None);
        prop_assert_eq!(uf.union_size(y, x).unwrap(), None);
        prop_assert_eq!(uf, before);
    }
}
