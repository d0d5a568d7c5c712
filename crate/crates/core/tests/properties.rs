use std::collections::BTreeSet;

use dedup_layout::coded::{
    coded_to_uncoded_2approx, coded_to_uncoded_matching, reduce_hk_canonical, HKCode, XorChainStore,
};
use dedup_layout::folding::{
    displacement_bound, folding_displacement, group_bound, layout_sham_report, validate_plan,
};
use dedup_layout::gf2::{rank, Basis, BitVec};
use dedup_layout::graph::{
    double_graph, enumerate_paths, split_unidirectional, FileGraph, Path, RootedTree, SparseHamiltonianGraph,
    Vertex,
};
use dedup_layout::jump_tree::{
    decomposition_from_store, indicator_runs, linearize_decomposition, max_unidirectional_jump,
    min_max_decomposition,
};
use dedup_layout::metrics::{can_reconstruct, evaluate, Evaluator, Rational, RecoverySet};
use dedup_layout::oracle::{exact_bandwidth, exact_min_max_uf, exact_stretch, OracleOptions};
use dedup_layout::store::{CodedStore, Store, UncodedStore};
use dedup_layout::zero_frag::{zero_frag_general, zero_frag_t2};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn graph(max_n: usize) -> impl Strategy<Value = FileGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(Vertex, Vertex)> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(e, _)| *e);
            FileGraph::new(n, edges).unwrap()
        })
    })
}

fn tree(min_n: usize, max_n: usize) -> impl Strategy<Value = RootedTree> {
    (min_n..=max_n).prop_flat_map(|n| {
        let parents = proptest::collection::vec(any::<proptest::sample::Index>(), n.saturating_sub(1));
        let labels = Just((1..=n).collect::<Vec<_>>()).prop_shuffle();
        (parents, labels).prop_map(move |(parents, labels)| {
            let edges: Vec<(Vertex, Vertex)> = parents
                .iter()
                .enumerate()
                .map(|(i, p)| (labels[i + 1], labels[p.index(i + 1)]))
                .collect();
            RootedTree::from_edges(n, &edges, 1).unwrap()
        })
    })
}

/// A permutation of `1..=n` followed by `extra` random copies, shuffled.
fn uncoded(n: usize, extra: usize) -> impl Strategy<Value = UncodedStore> {
    proptest::collection::vec(1..=n, 0..=extra).prop_flat_map(move |copies| {
        let mut seq: Vec<Vertex> = (1..=n).collect();
        seq.extend(copies);
        Just(seq)
            .prop_shuffle()
            .prop_map(move |s| UncodedStore::new(n, s).unwrap())
    })
}

fn coded(n: usize, extra: usize) -> impl Strategy<Value = CodedStore> {
    proptest::collection::vec(proptest::collection::vec(any::<bool>(), n), n..=n + extra).prop_filter_map(
        "rank deficient",
        move |cols| {
            let cols = cols
                .into_iter()
                .map(|bits| BitVec::from_indices(n, (0..n).filter(|&i| bits[i])))
                .collect();
            CodedStore::new(n, cols).ok()
        },
    )
}

fn graph_and_uncoded(max_n: usize, extra: usize) -> impl Strategy<Value = (FileGraph, UncodedStore)> {
    graph(max_n).prop_flat_map(move |g| {
        let n = g.n();
        (Just(g), uncoded(n, extra))
    })
}

fn sham(max_n: usize, max_k: usize) -> impl Strategy<Value = SparseHamiltonianGraph> {
    (4..=max_n, 0..=max_k).prop_flat_map(|(n, k)| {
        Just((1..=n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_filter_map("arc too short", move |v| {
                let k = k.min(n / 2);
                let arcs: Vec<(Vertex, Vertex)> = v.chunks(2).take(k).map(|c| (c[0], c[1])).collect();
                SparseHamiltonianGraph::new(n, arcs).ok()
            })
    })
}

fn xor_chain(max_n: usize) -> impl Strategy<Value = XorChainStore> {
    (2..=max_n).prop_flat_map(|n| {
        (Just((1..=n).collect::<Vec<_>>()).prop_shuffle(), 1..=n).prop_flat_map(move |(ids, nb)| {
            subsequence((1..=n + 1).collect::<Vec<_>>(), nb + 1)
                .prop_map(move |il| XorChainStore::new(ids[nb..].to_vec(), ids[..nb].to_vec(), il).unwrap())
        })
    })
}

fn tree_paths(t: &RootedTree) -> Vec<Path> {
    enumerate_paths(&t.to_file_graph(), t.n())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn paths_closed_under_subpaths(g in graph(7), t in 1usize..=4) {
        let paths = enumerate_paths(&g, t);
        let set: BTreeSet<Vec<Vertex>> = paths.iter().map(|p| p.vertices().to_vec()).collect();
        for p in &paths {
            prop_assert!(p.is_valid_in(&g));
            let v = p.vertices();
            prop_assert!(v.len() <= t && v[0] <= v[v.len() - 1]);
            for a in 0..v.len() {
                for b in a + 1..=v.len() {
                    let sub = Path::canonical(v[a..b].to_vec());
                    prop_assert!(set.contains(sub.vertices()), "{:?} missing", sub);
                }
            }
        }
    }

    #[test]
    fn tree_path_count(t in tree(1, 9)) {
        let n = t.n();
        prop_assert_eq!(tree_paths(&t).len(), n + n * (n - 1) / 2);
    }

    #[test]
    fn doubling_aligns_feet(g in sham(16, 4)) {
        let d = double_graph(&g);
        prop_assert_eq!(d.arc_count(), g.arc_count());
        let feet = d.feet();
        prop_assert!(feet.iter().all(|f| f % 2 == feet[0] % 2));
    }

    #[test]
    fn lca_split_reassembles(t in tree(1, 9)) {
        for p in tree_paths(&t) {
            let (left, right) = split_unidirectional(&t, p.vertices()).unwrap();
            prop_assert!(t.is_unidirectional(&left) && t.is_unidirectional(&right));
            let mut joined = left.clone();
            joined.extend(right.iter().rev().skip(1));
            prop_assert_eq!(&joined, p.vertices());
        }
    }

    #[test]
    fn gf2_rank_and_express(vs in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 6), 0..8),
                            target in proptest::collection::vec(any::<bool>(), 6)) {
        let vs: Vec<BitVec> = vs.iter().map(|b| BitVec::from_indices(6, (0..6).filter(|&i| b[i]))).collect();
        let target = BitVec::from_indices(6, (0..6).filter(|&i| target[i]));
        let r = rank(&vs);
        prop_assert!(r <= vs.len().min(6));
        let mut basis = Basis::new(6, vs.len().max(1));
        for (i, v) in vs.iter().enumerate() {
            basis.insert(v, i);
        }
        prop_assert_eq!(basis.rank(), r);
        if let Some(combo) = basis.express(&target) {
            let mut sum = BitVec::zeros(6);
            for i in combo.ones() {
                sum.xor_assign(&vs[i]);
            }
            prop_assert_eq!(sum, target);
        } else {
            let mut more = vs.clone();
            more.push(target);
            prop_assert_eq!(rank(&more), r + 1);
        }
    }

    #[test]
    fn per_file_bounds((g, s) in graph_and_uncoded(6, 2), t in 1usize..=3) {
        let rep = evaluate(&Store::Uncoded(s), &g, t).unwrap();
        let one = Rational::from_integer(1);
        for p in &rep.per_path {
            prop_assert!(p.stretch >= one);
            prop_assert!(p.jump >= 1 && p.jump <= p.path.len());
        }
        prop_assert_eq!(Some(rep.stretch_metric), rep.per_path.iter().map(|p| p.stretch).max());
        prop_assert_eq!(Some(rep.jump_metric), rep.per_path.iter().map(|p| p.jump).max());
    }

    #[test]
    fn permutation_stretch_below_adjacent_sum((g, s) in graph_and_uncoded(7, 0)) {
        let pos = s.occurrences();
        let rep = evaluate(&Store::Uncoded(s), &g, 4).unwrap();
        for p in &rep.per_path {
            let v = p.path.vertices();
            let sum: usize = v.windows(2).map(|w| pos[w[0]][0].abs_diff(pos[w[1]][0])).sum();
            prop_assert!(p.stretch <= Rational::new(1 + sum as u64, v.len() as u64));
        }
    }

    #[test]
    fn appending_a_copy_never_hurts((g, s) in graph_and_uncoded(6, 1), c in any::<proptest::sample::Index>(), t in 1usize..=3) {
        let mut seq = s.sequence().to_vec();
        seq.push(c.index(s.n()) + 1);
        let longer = UncodedStore::new(s.n(), seq).unwrap();
        let a = evaluate(&Store::Uncoded(s), &g, t).unwrap();
        let b = evaluate(&Store::Uncoded(longer), &g, t).unwrap();
        for (x, y) in a.per_path.iter().zip(&b.per_path) {
            prop_assert_eq!(&x.path, &y.path);
            prop_assert!(y.stretch <= x.stretch && y.jump <= x.jump);
        }
    }

    #[test]
    fn permutation_jump_is_run_count((g, s) in graph_and_uncoded(7, 0)) {
        let ev = Evaluator::new(&Store::Uncoded(s.clone())).unwrap();
        for p in enumerate_paths(&g, 4) {
            prop_assert_eq!(ev.min_jump(&p).unwrap().0, indicator_runs(&s, p.vertices()));
            prop_assert_eq!(ev.minimal_recovery_sets(p.vertices()).unwrap().len(), 1);
        }
    }

    #[test]
    fn reconstruction_is_monotone(c in (1usize..=5).prop_flat_map(|n| coded(n, 2)),
                                  picks in proptest::collection::vec(any::<bool>(), 7),
                                  more in proptest::collection::vec(any::<bool>(), 7)) {
        let m = c.m();
        let small: Vec<usize> = (1..=m).filter(|&j| picks[j - 1]).collect();
        let big: Vec<usize> = (1..=m).filter(|&j| picks[j - 1] || more[j - 1]).collect();
        if !small.is_empty() {
            for chunk in 1..=c.n() {
                if can_reconstruct(&c, &RecoverySet::new(small.clone()), chunk) {
                    prop_assert!(can_reconstruct(&c, &RecoverySet::new(big.clone()), chunk));
                }
            }
        }
        prop_assert!((1..=c.n()).all(|x| can_reconstruct(&c, &RecoverySet::window(1, m), x)));
    }

    #[test]
    fn sham_layout_invariants(g in sham(24, 4)) {
        let k = g.arc_count();
        let lay = layout_sham_report(&g).unwrap();
        let h = &lay.folding;
        prop_assert!(h.values().windows(2).all(|w| w[0].abs_diff(w[1]) == 1));
        prop_assert!(h.check_arcs(&lay.folded).is_ok());
        let thickest = (1..=h.n()).map(|y| h.level(y).len()).max().unwrap();
        prop_assert_eq!(h.thickness(), thickest);
        prop_assert_eq!(h.segments(), h.breakpoints().len() + 1);
        prop_assert!(folding_displacement(h, &lay.folded).unwrap() <= h.segments());
        if k > 0 {
            prop_assert!(lay.displacement <= displacement_bound(k));
            prop_assert!(lay.groups.len() <= group_bound(k));
        }
        prop_assert!(lay.store.is_permutation() && lay.store.n() == g.n());
        if let Some(plan) = &lay.plan {
            prop_assert!(validate_plan(&lay.folded, plan).is_ok());
        }
    }

    #[test]
    fn zero_frag_t2_is_contiguous(g in graph(7)) {
        let z = zero_frag_t2(&g).unwrap();
        let rep = evaluate(&Store::Uncoded(z.store.clone()), &g, 2).unwrap();
        prop_assert_eq!(rep.stretch_metric, Rational::from_integer(1));
        prop_assert_eq!(rep.jump_metric, 1);
        if g.is_connected() {
            prop_assert!(z.length <= z.formula_upper_bound);
        }
        for comp in g.components() {
            let odd = comp.iter().filter(|&&v| g.degree(v) % 2 == 1).count();
            prop_assert_eq!(odd % 2, 0);
        }
        let odd_total: usize = g.components().iter().map(|c| {
            let odd = c.iter().filter(|&&v| g.degree(v) % 2 == 1).count();
            (odd / 2).saturating_sub(1)
        }).sum();
        prop_assert_eq!(z.added_edges.len(), odd_total);
    }

    #[test]
    fn zero_frag_general_envelope(g in graph(5), t in 1usize..=3) {
        let z = zero_frag_general(&g, t).unwrap();
        let len = Rational::from_integer(z.store.m() as u64);
        prop_assert!(z.lower_bound <= len && z.store.m() <= z.upper_bound);
        let rep = evaluate(&Store::Uncoded(z.store), &g, t).unwrap();
        prop_assert_eq!(rep.stretch_metric, Rational::from_integer(1));
    }

    #[test]
    fn xor_chain_identities(x in xor_chain(10)) {
        prop_assert!(x.chain_identities_hold());
        let c = x.to_coded();
        prop_assert_eq!(c.m(), x.n() + 1);
        prop_assert_eq!(XorChainStore::from_coded(&c).unwrap(), x);
    }

    #[test]
    fn reduction_is_canonical_and_dominated(c in (1usize..=6).prop_flat_map(|n| coded(n, 1).prop_filter("m = n + 1", move |c| c.m() == n + 1))) {
        let red = reduce_hk_canonical(&HKCode::from_store(&c).unwrap()).unwrap();
        prop_assert!(red.dominated());
        prop_assert!(red.store.columns().iter().all(|col| col.count_ones() <= 2));
        prop_assert!(red.chain.chain_identities_hold());
    }

    #[test]
    fn two_approx_keeps_ratio_below_two(x in xor_chain(9), seed in graph(9)) {
        let n = x.n();
        let g = FileGraph::new(n, seed.edges().filter(|&(a, b)| a <= n && b <= n)).unwrap();
        let u = coded_to_uncoded_2approx(&x, &g, 2).unwrap();
        prop_assert!(u.is_permutation());
        let sc = evaluate(&Store::Coded(x.to_coded()), &g, 2).unwrap().stretch_metric;
        let su = evaluate(&Store::Uncoded(u), &g, 2).unwrap().stretch_metric;
        prop_assert!(su < sc * Rational::from_integer(2), "uncoded {} coded {}", su, sc);
    }

    #[test]
    fn matching_dominates_stretch(c in (1usize..=6).prop_flat_map(|n| coded(n, 0)), g in graph(6)) {
        let n = c.n();
        let g = FileGraph::new(n, g.edges().filter(|&(a, b)| a <= n && b <= n)).unwrap();
        let u = coded_to_uncoded_matching(&c).unwrap();
        prop_assert!(u.is_permutation());
        let rc = evaluate(&Store::Coded(c), &g, 3).unwrap();
        let ru = evaluate(&Store::Uncoded(u), &g, 3).unwrap();
        for (a, b) in rc.per_path.iter().zip(&ru.per_path) {
            prop_assert!(b.stretch <= a.stretch, "{:?}: {} > {}", a.path, b.stretch, a.stretch);
        }
    }

    #[test]
    fn lca_split_path_number_identity(t in tree(1, 12)) {
        let (d, _) = min_max_decomposition(&t);
        let n = t.n();
        for p in tree_paths(&t) {
            let (left, right) = split_unidirectional(&t, p.vertices()).unwrap();
            prop_assert_eq!(
                d.path_number(n, p.vertices()) + 1,
                d.path_number(n, &left) + d.path_number(n, &right)
            );
        }
    }

    #[test]
    fn linearization_jump_below_path_number(t in tree(1, 12)) {
        let (d, uf) = min_max_decomposition(&t);
        prop_assert_eq!(d.max_path_number(&t), uf);
        let s = linearize_decomposition(&d);
        for p in tree_paths(&t) {
            let j = indicator_runs(&s, p.vertices());
            prop_assert!(j <= d.path_number(t.n(), p.vertices()));
            prop_assert!(j <= 2 * uf);
        }
    }

    #[test]
    fn decomposition_from_store_factor_two(t in tree(1, 10), perm in any::<u64>()) {
        let mut seq: Vec<Vertex> = (1..=t.n()).collect();
        let mut state = perm;
        for i in (1..seq.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            seq.swap(i, (state >> 33) as usize % (i + 1));
        }
        let s = UncodedStore::new(t.n(), seq).unwrap();
        let d = decomposition_from_store(&t, &s).unwrap();
        prop_assert!(d.max_path_number(&t) <= 2 * max_unidirectional_jump(&t, &s));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn uf_matches_exhaustive_search(t in tree(1, 8)) {
        let (_, uf) = min_max_decomposition(&t);
        prop_assert_eq!(uf, exact_min_max_uf(&t, &OracleOptions::default()).unwrap());
    }

    #[test]
    fn stretch_is_half_bandwidth_plus_one(g in graph(7).prop_filter("needs an edge", |g| g.edge_count() > 0)) {
        let opts = OracleOptions::default();
        let b = exact_bandwidth(&g, &opts).unwrap() as u64;
        prop_assert_eq!(exact_stretch(&g, 2, g.n(), &opts).unwrap(), Rational::new(b + 1, 2));
    }
}
