mod common;

use std::collections::BTreeSet;

use arcalg::combinatorics::{defect, enumerate_partitions};
use arcalg::dyck::{self, Move, StepKind};
use arcalg::{Catalogue, DyckPath};
use common::{contexts, ctx, part};
use proptest::prelude::*;

#[test]
fn removable_and_addable_match_strip_oracle() {
    for c in contexts(8) {
        for mu in enumerate_partitions(c) {
            let rem = dyck::removable_paths(c, &mu).unwrap();
            let got: BTreeSet<(i64, i64, Vec<usize>)> = rem
                .keys()
                .map(|p| (p.first, p.last, dyck::remove_path(c, &mu, p).unwrap().parts().to_vec()))
                .collect();
            let want: BTreeSet<(i64, i64, Vec<usize>)> =
                common::removable_strips(c, mu.parts()).into_iter().map(|(f, l, _, nu)| (f, l, nu)).collect();
            assert_eq!(got, want, "DRem({mu}) in {c}");

            let add = dyck::addable_paths(c, &mu).unwrap();
            let got: BTreeSet<(i64, i64)> = add.keys().map(|p| (p.first, p.last)).collect();
            let want: BTreeSet<(i64, i64)> =
                common::addable_strips(c, mu.parts()).into_iter().map(|(f, l, _, _)| (f, l)).collect();
            assert_eq!(got, want, "DAdd({mu}) in {c}");
            for p in add.keys() {
                let nu = dyck::add_path(c, &mu, p).unwrap();
                assert_eq!(dyck::remove_path(c, &nu, p).unwrap(), mu);
            }
        }
    }
}

#[test]
fn tilings_match_backtracking_oracle() {
    for c in contexts(6) {
        let ps = enumerate_partitions(c);
        for lam in &ps {
            for mu in &ps {
                let got = dyck::dyck_tiling(c, lam, mu);
                let want = common::tiling_oracle(c, lam.parts(), mu.parts());
                assert_eq!(got.is_some(), want.is_some(), "({lam}, {mu}) in {c}");
                if let (Some(t), Some(w)) = (got, want) {
                    let paths: BTreeSet<(i64, i64)> = t.paths.iter().map(|p| (p.path.first, p.path.last)).collect();
                    assert_eq!(paths, w);
                }
            }
        }
    }
}

#[test]
fn dyck_pairs_are_oriented_pairs() {
    for c in contexts(7) {
        let cat = Catalogue::new(c);
        for mu in 0..cat.len() {
            for lam in 0..cat.len() {
                let t = dyck::dyck_tiling(c, &cat.partitions[lam], &cat.partitions[mu]);
                assert_eq!(t.map(|t| t.degree()), cat.degree(mu, lam));
            }
        }
    }
}

#[test]
fn canonical_tableaux_are_valid() {
    for c in contexts(6) {
        let ps = enumerate_partitions(c);
        for lam in &ps {
            for mu in &ps {
                let Some(t) = dyck::dyck_tiling(c, lam, mu) else { continue };
                let steps = dyck::canonical_tableau(c, lam, mu).unwrap();
                assert_eq!(steps.len(), t.degree());
                let mut cur = mu.clone();
                let mut last = i64::MAX;
                for s in &steps {
                    assert_eq!(s.from, cur);
                    assert!(dyck::removable_paths(c, &cur).unwrap().contains_key(&s.path));
                    assert!(s.height <= last, "heights must not increase");
                    last = s.height;
                    if s.kind == Move::G1 {
                        assert!(defect(c, &s.to) < defect(c, &s.from));
                    }
                    cur = s.to.clone();
                }
                assert_eq!(&cur, lam);
            }
        }
    }
}

#[test]
fn tiling_heights_drop_below_support() {
    for c in contexts(6) {
        let ps = enumerate_partitions(c);
        for lam in &ps {
            for mu in &ps {
                let Some(t) = dyck::dyck_tiling(c, lam, mu) else { continue };
                for tp in &t.paths {
                    assert_eq!(dyck::tiling_height(c, lam, mu, &tp.path).unwrap(), tp.height);
                    let supp = dyck::support_set(c, lam, mu, &tp.path).unwrap();
                    assert!(supp.contains(&tp.path));
                    for q in supp.iter().filter(|q| **q != tp.path) {
                        if let Some(hq) = t.height_of(q) {
                            assert!(tp.height < hq, "support height");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn regularisation_example() {
    let c = ctx(8, 9);
    let (reg, paths) = dyck::regularise(c, &part("8,6,6,2,2,1,1")).unwrap();
    assert_eq!(reg, part("8,7,7,7,5,5,4,2"));
    let want: Vec<DyckPath> = [(1, 1), (0, 4), (-5, 7)].iter().map(|&(f, l)| DyckPath::new(f, l).unwrap()).collect();
    assert_eq!(paths, want);
    assert_eq!(defect(c, &part("8,6,6,2,2,1,1")), -3);
}

#[test]
fn regularisation_matches_oracle() {
    for c in contexts(8) {
        for alpha in enumerate_partitions(c) {
            let (reg, paths) = dyck::regularise(c, &alpha).unwrap();
            let (oreg, opaths) = common::regularise_oracle(c, alpha.parts());
            assert_eq!(reg.parts(), oreg.as_slice(), "reg({alpha}) in {c}");
            let got: Vec<(i64, i64)> = paths.iter().map(|p| (p.first, p.last)).collect();
            assert_eq!(got, opaths);
            assert_eq!(paths.len() as i64, -defect(c, &alpha));
            assert!(common::is_regular(c, reg.parts()));
            // (α, reg α) is a Dyck pair of degree -d(α)
            let t = dyck::dyck_tiling(c, &alpha, &reg).unwrap();
            assert_eq!(t.degree() as i64, -defect(c, &alpha));
        }
    }
}

#[test]
fn plan_example() {
    let c = ctx(8, 9);
    let plan = dyck::canonical_add_split(c, &part("8,6,6,2,2,1,1"), &part("8,8,8,7,6,6,6,4,2")).unwrap();
    assert_eq!(plan.phase(StepKind::Regularise).count(), 3);
    let splits = plan.by_height(StepKind::Split);
    let p = |f, l| DyckPath::new(f, l).unwrap();
    assert_eq!(splits.get(&-1), Some(&vec![p(3, 3)]));
    let mut zero = splits.get(&0).cloned().unwrap_or_default();
    zero.sort();
    assert_eq!(zero, vec![p(-4, -2), p(6, 6)]);
    assert_eq!(plan.by_height(StepKind::Add).get(&1), Some(&vec![p(-6, 8)]));
}

#[test]
fn plans_are_valid_sequences() {
    for c in contexts(6) {
        let cat = Catalogue::new(c);
        for a in 0..cat.len() {
            for mu in cat.regular_indices() {
                let Some(_) = dyck::dyck_tiling(c, &cat.partitions[a], &cat.partitions[mu]) else { continue };
                let plan = dyck::canonical_add_split(c, &cat.partitions[a], &cat.partitions[mu]).unwrap();
                let mut cur = cat.weights[a];
                for s in &plan.steps {
                    assert_eq!(s.from, cur);
                    match s.kind {
                        StepKind::Split => assert_eq!(dyck::remove_w(c, &s.from, &s.path), Some(s.to)),
                        _ => assert_eq!(dyck::add_w(c, &s.from, &s.path), Some(s.to)),
                    }
                    cur = s.to;
                }
                assert_eq!(cur, cat.weights[mu]);
            }
        }
    }
}

#[test]
fn split_of_covering_paths() {
    let q = DyckPath::new(-4, 4).unwrap();
    let p = DyckPath::new(-1, 1).unwrap();
    let (l, r) = dyck::split(&q, &p).unwrap();
    assert_eq!((l, r), (DyckPath::new(-4, -2).unwrap(), DyckPath::new(2, 4).unwrap()));
    assert!(dyck::split(&p, &q).is_err());
}

proptest! {
    #[test]
    fn path_relations_are_consistent(a in -6i64..6, b in 0i64..6, c in -6i64..6, d in 0i64..6) {
        let p = DyckPath::new(a, a + 2 * b).unwrap();
        let q = DyckPath::new(c, c + 2 * d).unwrap();
        prop_assert!(!(p.covers(&q) && q.covers(&p)));
        prop_assert_eq!(p.is_adjacent(&q), q.is_adjacent(&p));
        prop_assert_eq!(p.is_distant(&q), q.is_distant(&p));
        if p.covers(&q) {
            prop_assert!(p.breadth() > q.breadth());
        }
        prop_assert_eq!(p.breadth(), b + 1);
    }
}
