//! Invariant checks over randomized and exhaustive small instances.

use proptest::prelude::*;

use contentmax_core::bounds::{balanced_exchange, path_bound_int, path_bound_real, star_bound_int};
use contentmax_core::copies::{
    content_sum, count_injective_homs, enumerate_copies, path_content_sum_via_matrix, CopyIncidence,
};
use contentmax_core::optimize::{find_uncovered_pair, optimize};
use contentmax_core::search::{
    enumerate_weighted_dags, max_ct_over_dags, max_elementary_symmetric_tuples,
};
use contentmax_core::{Label, LabeledDigraph, LabeledMatrix, Pattern};

fn label() -> impl Strategy<Value = Label> {
    (1u64..=12, 1u64..=6).prop_map(|(n, d)| Label::from_fraction(n, d).unwrap())
}

fn cells(v: usize, forward_only: bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..v {
        for j in 0..v {
            if forward_only && j <= i {
                continue;
            }
            out.push((i, j));
        }
    }
    out
}

fn graph_strategy(max_v: usize, forward_only: bool) -> impl Strategy<Value = LabeledDigraph> {
    (2..=max_v).prop_flat_map(move |v| {
        let cs = cells(v, forward_only);
        let m = cs.len();
        (
            proptest::collection::vec(any::<bool>(), m),
            proptest::collection::vec(label(), m),
        )
            .prop_map(move |(mask, labels)| {
                let edges = cs
                    .iter()
                    .zip(mask)
                    .zip(labels)
                    .filter(|((_, keep), _)| *keep)
                    .map(|((&(s, d), _), l)| (s, d, l));
                LabeledDigraph::from_numbered_edges(v, edges)
            })
    })
}

fn dag() -> impl Strategy<Value = LabeledDigraph> {
    graph_strategy(6, true)
}

fn digraph() -> impl Strategy<Value = LabeledDigraph> {
    graph_strategy(5, false)
}

fn matrix_strategy() -> impl Strategy<Value = LabeledMatrix> {
    (1usize..=4).prop_flat_map(|n| {
        proptest::collection::vec(proptest::option::of(label()), n * n).prop_map(move |entries| {
            let mut m = LabeledMatrix::zeros(n);
            for (idx, e) in entries.into_iter().enumerate() {
                if let Some(l) = e {
                    m.set(idx / n, idx % n, l);
                }
            }
            m
        })
    })
}

fn small_pattern() -> impl Strategy<Value = Pattern> {
    prop_oneof![
        Just(Pattern::path(1)),
        Just(Pattern::path(2)),
        Just(Pattern::path(3)),
        Just(Pattern::star(2)),
        Just(Pattern::star(3)),
        Just(Pattern::equistar(2, 2)),
    ]
}

fn edge_map(g: &LabeledDigraph) -> std::collections::BTreeMap<(usize, usize), Label> {
    g.edges()
        .iter()
        .map(|e| ((e.src, e.dst), e.label.clone()))
        .collect()
}

proptest! {
    #[test]
    fn label_arithmetic_is_exact(a in label(), b in label(), c in label()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn adjacency_preserves_weight_and_edges(g in digraph()) {
        let m = g.to_adjacency();
        prop_assert_eq!(m.weight(), g.weight());
        let names: Vec<&str> = g.vertex_names().iter().map(|s| s.as_str()).collect();
        let back = LabeledDigraph::from_adjacency(&m, Some(&names)).unwrap();
        prop_assert_eq!(edge_map(&back), edge_map(&g));
        prop_assert_eq!(back.vertex_names(), g.vertex_names());
    }

    #[test]
    fn matrix_power_is_additive(m in matrix_strategy(), j in 1u32..=3, k in 1u32..=3) {
        prop_assert_eq!(m.pow(j + k), m.pow(j).mul(&m.pow(k)));
    }

    #[test]
    fn nilpotent_iff_support_acyclic(m in matrix_strategy()) {
        let g = LabeledDigraph::from_adjacency(&m, None).unwrap();
        prop_assert_eq!(m.is_nilpotent(), g.is_dag());
        prop_assert_eq!(m.is_nilpotent(), m.is_nilpotent_by_power());
    }

    #[test]
    fn unit_labels_collapse_to_copy_count(g in digraph(), p in small_pattern()) {
        let unit = LabeledDigraph::from_numbered_edges(
            g.vertex_count(),
            g.edges().iter().map(|e| (e.src, e.dst, Label::one())),
        );
        let copies = enumerate_copies(&unit, &p).len() as u64;
        prop_assert_eq!(content_sum(&unit, &p), Label::from_int(copies));
    }

    #[test]
    fn hom_count_is_copies_times_automorphisms(g in digraph(), p in small_pattern()) {
        let homs = count_injective_homs(&g, &p);
        let copies = enumerate_copies(&g, &p).len() as u64;
        prop_assert_eq!(homs, copies * p.automorphism_count());
    }

    #[test]
    fn matrix_route_agrees_with_enumeration(g in dag(), k in 1u32..=3) {
        prop_assert_eq!(
            path_content_sum_via_matrix(&g, k).unwrap(),
            content_sum(&g, &Pattern::path(k))
        );
    }

    #[test]
    fn content_sum_is_affine_in_each_label(
        g in dag(),
        p in small_pattern(),
        pick in any::<prop::sample::Index>(),
        x1 in label(),
        x2 in label(),
    ) {
        prop_assume!(g.edge_count() > 0);
        let e = pick.index(g.edge_count());
        let with_label = |x: &Label| {
            LabeledDigraph::from_numbered_edges(
                g.vertex_count(),
                g.edges().iter().enumerate().map(|(i, ed)| {
                    let l = if i == e { x.clone() } else { ed.label.clone() };
                    (ed.src, ed.dst, l)
                }),
            )
        };
        let g1 = with_label(&x1);
        let g2 = with_label(&x2);
        // The copy set does not depend on the (positive) label, so the sum
        // is affine in it with slope sigma.
        let slope = CopyIncidence::build(&g1, &p).sigma(&g1, e);
        let lhs = content_sum(&g1, &p).into_ratio() - content_sum(&g2, &p).into_ratio();
        let rhs = slope.into_ratio() * (x1.into_ratio() - x2.into_ratio());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn optimizer_ledger_invariants(g in dag(), p in small_pattern()) {
        let before = content_sum(&g, &p);
        let out = optimize(&g, &p);
        prop_assert_eq!(out.graph.weight(), g.weight());
        prop_assert!(out.trace.steps.len() < g.edge_count().max(1));
        prop_assert!(find_uncovered_pair(&out.graph, &p).is_none());
        let after = content_sum(&out.graph, &p);
        prop_assert!(after >= before);

        let mut prev = before;
        for step in &out.trace.steps {
            prop_assert_eq!(&step.ct_before, &prev);
            prop_assert!(step.survivor_sigma >= step.removed_sigma);
            let delta = step.ct_after.ratio() - step.ct_before.ratio();
            let predicted = step.removed_label.ratio()
                * (step.survivor_sigma.ratio() - step.removed_sigma.ratio());
            prop_assert_eq!(delta, predicted);
            prop_assert!(step.ct_after >= step.ct_before);
            prev = step.ct_after.clone();
        }
        prop_assert_eq!(&after, &prev);
    }

    #[test]
    fn balanced_exchange_reaches_the_closed_form(tuple in proptest::collection::vec(0u64..=9, 1..=6)) {
        let total: u64 = tuple.iter().sum();
        let out = balanced_exchange(&tuple);
        prop_assert_eq!(out.iter().sum::<u64>(), total);
        let hi = *out.iter().max().unwrap();
        let lo = *out.iter().min().unwrap();
        prop_assert!(hi - lo <= 1);
        let (value, closed_tuple) = path_bound_int(total, tuple.len() as u32);
        let mut sorted = out.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        prop_assert_eq!(sorted, closed_tuple);
        let product = out.iter().map(|&x| Label::from_int(x)).product::<Label>();
        prop_assert_eq!(product, value);

        let input_product = tuple.iter().map(|&x| Label::from_int(x)).product::<Label>();
        prop_assert!(input_product <= path_bound_int(total, tuple.len() as u32).0);
    }
}

/// Nilpotency via support acyclicity agrees with the direct power test on
/// every 0/1 matrix up to dimension 4.
#[test]
fn exhaustive_01_nilpotency() {
    for dim in 1..=4usize {
        let cells = dim * dim;
        for mask in 0u32..(1 << cells) {
            let mut m = LabeledMatrix::zeros(dim);
            for c in 0..cells {
                if mask >> c & 1 == 1 {
                    m.set(c / dim, c % dim, Label::one());
                }
            }
            let by_support = m.is_nilpotent();
            assert_eq!(
                by_support,
                m.is_nilpotent_by_power(),
                "dim {dim} mask {mask}"
            );
            let g = LabeledDigraph::from_adjacency(&m, None).unwrap();
            assert_eq!(by_support, g.is_dag(), "dim {dim} mask {mask}");
        }
    }
}

/// The star tuple oracle meets the binomial closed form up to weight 10.
#[test]
fn star_tuple_oracle_up_to_ten() {
    for total in 1..=10u64 {
        for arms in 1..=3u32 {
            let (best, argmax) = max_elementary_symmetric_tuples(total, arms);
            assert_eq!(best, star_bound_int(total, arms), "N={total} a={arms}");
            if arms as u64 <= total {
                assert!(argmax.contains(&vec![1; total as usize]));
            }
        }
    }
}

/// Optimizing any enumerated graph never exceeds the oracle maximum and
/// never loses value relative to the start.
#[test]
fn optimizer_stays_between_start_and_oracle_maximum() {
    let pattern = Pattern::path(2);
    for total in 1..=5u64 {
        let oracle = max_ct_over_dags(total, &pattern, 4).best_value;
        enumerate_weighted_dags(total, 4, |g| {
            let start = content_sum(g, &pattern);
            let improved = content_sum(&optimize(g, &pattern).graph, &pattern);
            assert!(improved >= start);
            assert!(improved <= oracle, "N={total}");
        });
    }
}

/// The real path bound dominates the integer one, with equality exactly
/// when k divides N.
#[test]
fn real_bound_dominates_integer_bound() {
    for total in 0..=12u64 {
        for k in 1..=5u32 {
            let (int_value, _) = path_bound_int(total, k);
            let real_value = path_bound_real(&Label::from_int(total), k);
            assert!(real_value >= int_value);
            assert_eq!(
                real_value == int_value,
                total % k as u64 == 0,
                "N={total} k={k}"
            );
        }
    }
}
