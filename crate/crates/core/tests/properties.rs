//! Property tests for the serialization formats and the algebraic
//! invariants that hold on all inputs, not just the pinned examples.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use proptest::prelude::*;

use spinverify::arf::QuadraticForm;
use spinverify::euler::{format_rational, parse_rational, Rational};
use spinverify::graphs::{enumerate_strata, StableGraph};

fn graph_pool() -> &'static Vec<StableGraph> {
    static POOL: OnceLock<Vec<StableGraph>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut pool = Vec::new();
        for (g, n) in [(0, 4), (0, 5), (1, 1), (1, 2), (1, 3), (2, 0), (2, 1)] {
            pool.extend(enumerate_strata(g, n).expect("window"));
        }
        pool
    })
}

fn apply_order(graph: &StableGraph, order: &[usize]) -> StableGraph {
    let mut position = vec![0usize; order.len()];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let genera: Vec<u32> = order.iter().map(|&old| graph.vertex_genus(old)).collect();
    let edges: Vec<(usize, usize)> = graph
        .edges()
        .iter()
        .map(|&(u, v)| (position[u], position[v]))
        .collect();
    let legs: BTreeMap<u32, usize> = graph
        .legs()
        .iter()
        .map(|(&l, &v)| (l, position[v]))
        .collect();
    StableGraph::new(genera, edges, legs).expect("valid relabeling")
}

proptest! {
    #[test]
    fn rational_string_form_round_trips(numer in -100_000i64..100_000, denom in 1i64..10_000) {
        let r = Rational::new(numer, denom);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn quadratic_form_bit_strings_round_trip(g in 1u32..=4, bits in 0u32..65536) {
        let q = QuadraticForm::from_bits(g, bits);
        let text = q.to_string();
        prop_assert_eq!(text.len(), 2 * g as usize);
        prop_assert_eq!(text.parse::<QuadraticForm>().unwrap(), q);
    }

    #[test]
    fn canonical_key_is_a_relabeling_congruence(
        index in 0usize..1000,
        seed in proptest::collection::vec(0u64..1_000_000, 12),
    ) {
        let pool = graph_pool();
        let graph = &pool[index % pool.len()];
        // Fisher-Yates driven by the seed words
        let mut order: Vec<usize> = (0..graph.num_vertices()).collect();
        for i in (1..order.len()).rev() {
            let j = (seed[i % seed.len()] as usize) % (i + 1);
            order.swap(i, j);
        }
        let relabeled = apply_order(graph, &order);
        prop_assert_eq!(relabeled.canonical_key(), graph.canonical_key());
        prop_assert_eq!(relabeled.automorphism_count(), graph.automorphism_count());
    }

    #[test]
    fn graph_records_round_trip(index in 0usize..1000) {
        let pool = graph_pool();
        let graph = &pool[index % pool.len()];
        let record = graph.to_record();
        let parsed: StableGraph = record.parse().unwrap();
        prop_assert_eq!(&parsed, graph);
        prop_assert_eq!(parsed.to_record(), record);
    }

    #[test]
    fn arf_is_invariant_under_transvection_words(
        g in 1u32..=4,
        bits in 0u32..65536,
        word in proptest::collection::vec(1u32..65536, 1..8),
    ) {
        let mut q = QuadraticForm::from_bits(g, bits);
        let arf = q.arf();
        let dim_mask = (1u32 << (2 * g)) - 1;
        for v in word {
            let v = v & dim_mask;
            if v != 0 {
                q = q.transvect(v);
            }
        }
        prop_assert_eq!(q.arf(), arf);
    }
}
