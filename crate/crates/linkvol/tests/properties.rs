//! Property tests for the structural invariants.

use proptest::prelude::*;

use linkvol::bounds;
use linkvol::braid::{braid_to_diagram, BraidWord, Closure};
use linkvol::diagram::{parse_pd, LinkDiagram};
use linkvol::jones::resolved_circle_partition;
use linkvol::plat::{plat_closure, PlatClass, PlatSpec};
use linkvol::state::{all_a_state, build_ga, is_a_adequate, reduce_ga};
use linkvol::twist::detect_twist_regions;

fn braid_word_strategy() -> impl Strategy<Value = BraidWord> {
    (2usize..=5)
        .prop_flat_map(|strands| {
            let letter = (1i32..strands as i32).prop_flat_map(|i| {
                prop_oneof![Just(i), Just(-i)]
            });
            (Just(strands), proptest::collection::vec(letter, 1..12))
        })
        .prop_map(|(strands, letters)| BraidWord::new(strands, letters).unwrap())
}

fn braid_diagram_strategy() -> impl Strategy<Value = LinkDiagram> {
    (braid_word_strategy(), proptest::bool::ANY).prop_filter_map(
        "closure must be valid",
        |(word, plat)| {
            let closure = if plat && word.strands() % 2 == 0 {
                Closure::Plat
            } else {
                Closure::Trace
            };
            braid_to_diagram(&word, closure).ok()
        },
    )
}

/// Rows with every entry at most -2; corner entries of magnitude 1 would
/// merge into a neighboring row and change the region count.
fn negative_plat_strategy() -> impl Strategy<Value = PlatSpec> {
    (2usize..=5, 1usize..=3)
        .prop_flat_map(|(n, k)| {
            let m = 2 * k + 1;
            let rows: Vec<_> = (1..=m)
                .map(|i| {
                    let width = if i % 2 == 1 { n - 1 } else { n };
                    proptest::collection::vec(-6i32..=-2, width..=width)
                })
                .collect();
            (Just(n), Just(k), rows)
        })
        .prop_map(|(n, k, rows)| PlatSpec::new(n, k, rows).unwrap())
}

fn nonzero_plat_strategy() -> impl Strategy<Value = PlatSpec> {
    (2usize..=5, 1usize..=3)
        .prop_flat_map(|(n, k)| {
            let m = 2 * k + 1;
            let entry = prop_oneof![1i32..=6, (-6i32..=-1)];
            let rows: Vec<_> = (1..=m)
                .map(|i| {
                    let width = if i % 2 == 1 { n - 1 } else { n };
                    proptest::collection::vec(entry.clone(), width..=width)
                })
                .collect();
            (Just(n), Just(k), rows)
        })
        .prop_map(|(n, k, rows)| PlatSpec::new(n, k, rows).unwrap())
}

fn strongly_negative_strategy() -> impl Strategy<Value = PlatSpec> {
    (3usize..=5, 1usize..=3)
        .prop_flat_map(|(n, k)| {
            let m = 2 * k + 1;
            let rows: Vec<_> = (1..=m)
                .map(|i| {
                    let (lo, width) = if i % 2 == 1 { (-6i32, n - 1) } else { (-6i32, n) };
                    let hi = if i % 2 == 1 { -3i32 } else { -2i32 };
                    proptest::collection::vec(lo..=hi, width..=width)
                })
                .collect();
            (Just(n), Just(k), rows)
        })
        .prop_map(|(n, k, rows)| PlatSpec::new(n, k, rows).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pd_roundtrip_is_identity(d in braid_diagram_strategy()) {
        let text = d.serialize_pd();
        let back = parse_pd(&text).unwrap();
        prop_assert_eq!(back.serialize_pd(), text);
        prop_assert_eq!(back.crossings(), d.crossings());
    }

    #[test]
    fn mirror_is_an_involution_up_to_rotation(d in braid_diagram_strategy()) {
        let m2 = d.mirror().mirror();
        for (x, y) in d.crossings().iter().zip(m2.crossings()) {
            let [a, b, c, dd] = x.arcs;
            prop_assert_eq!(y.arcs, [c, dd, a, b]);
        }
    }

    #[test]
    fn all_b_state_matches_all_a_of_the_mirror(d in braid_diagram_strategy()) {
        prop_assume!(d.crossing_count() <= 10);
        let all_b_mask = (1u64 << d.crossing_count()) - 1;
        let b_partition = resolved_circle_partition(&d, all_b_mask);
        let mirror_state = all_a_state(&d.mirror());
        let mirror_partition: Vec<Vec<u32>> =
            mirror_state.circles.iter().map(|c| c.arcs.clone()).collect();
        prop_assert_eq!(b_partition, mirror_partition);
    }

    #[test]
    fn segment_count_equals_crossing_count(d in braid_diagram_strategy()) {
        let state = all_a_state(&d);
        prop_assert_eq!(state.segments.len(), d.crossing_count());
        let ga = build_ga(&state);
        prop_assert_eq!(ga.edges.len(), d.crossing_count());
        prop_assert_eq!(ga.vertex_count, state.circle_count());
    }

    #[test]
    fn handshake_holds_on_every_reduced_graph(d in braid_diagram_strategy()) {
        let reduced = reduce_ga(&build_ga(&all_a_state(&d)));
        let degree_sum: usize = reduced.degrees().iter().sum();
        prop_assert_eq!(degree_sum, 2 * reduced.edge_count());
    }

    #[test]
    fn adequate_diagrams_have_loopless_reduced_graphs(d in braid_diagram_strategy()) {
        let state = all_a_state(&d);
        let reduced = reduce_ga(&build_ga(&state));
        if is_a_adequate(&state) {
            prop_assert!(!reduced.has_loop());
        } else {
            prop_assert!(reduced.has_loop());
        }
    }

    #[test]
    fn twist_regions_partition_the_crossings(d in braid_diagram_strategy()) {
        let raw = detect_twist_regions(&d).unwrap();
        let mut seen: Vec<usize> = raw.iter().flat_map(|r| r.crossings.clone()).collect();
        seen.sort_unstable();
        let want: Vec<usize> = (0..d.crossing_count()).collect();
        prop_assert_eq!(seen, want);
    }

    #[test]
    fn plat_closures_are_connected(spec in nonzero_plat_strategy()) {
        let p = plat_closure(&spec).unwrap();
        prop_assert!(p.diagram.is_connected());
        prop_assert_eq!(p.diagram.crossing_count(), spec.crossing_total());
    }

    #[test]
    fn negative_plats_realize_the_grid_count(spec in negative_plat_strategy()) {
        let p = plat_closure(&spec).unwrap();
        let regions = detect_twist_regions(&p.diagram).unwrap();
        prop_assert_eq!(regions.len(), spec.grid_region_count());
    }

    #[test]
    fn strongly_negative_lower_beats_the_m5_corollary(spec in strongly_negative_strategy()) {
        // Every other circle of a strongly negative plat meets at least
        // five twist regions, and the dedicated bound is sharper still.
        let p = plat_closure(&spec).unwrap();
        let regions = detect_twist_regions(&p.diagram).unwrap();
        let t = regions.len();
        let (sn_lower, _) = bounds::strongly_negative_values(t);
        let (m5_lower, _) = bounds::corollary_m_values(5, t);
        prop_assert!(sn_lower >= m5_lower);
    }

    #[test]
    fn mixed_plat_telc_and_adequacy(spec in strongly_negative_strategy()) {
        use linkvol::state::check_telc;
        use linkvol::twist::classify_regions;
        let p = plat_closure(&spec).unwrap();
        let state = all_a_state(&p.diagram);
        let raw = detect_twist_regions(&p.diagram).unwrap();
        let regions = classify_regions(&p.diagram, &state, raw, Some(&p.crossings)).unwrap();
        prop_assert!(is_a_adequate(&state));
        prop_assert!(check_telc(&state, &regions).unwrap());
    }
}
