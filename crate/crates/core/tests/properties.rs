//! Property tests for invariants that hold on every input.

mod common;

use diskiso::arrangements::{unit_disk_graph, verify_isolation};
use diskiso::gadgets::DiskInstance;
use diskiso::geometry::{disks_intersect, Disk, Point2, Provenance};
use diskiso::gridembed::{embed_plane_graph, rotation_equivalence};
use diskiso::pipeline::corpus::random_plane_graph;
use diskiso::pipeline::{in_ranges, to_ranges};
use diskiso::scalar::{format_rational, parse_rational, rat};
use diskiso::solvers::{brute_min_multiterminal_edges, first_subset, solve_multiterminal_kernelized, Caps, ProblemTag};
use diskiso::RPoint;
use proptest::prelude::*;

fn point() -> impl Strategy<Value = RPoint> {
    // coarse numerators with small denominators hit exact tangencies often
    (-12i64..=12, -12i64..=12, 1i64..=4).prop_map(|(x, y, d)| Point2::new(rat(x, d), rat(y, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn unit_disk_graph_matches_all_pairs(centers in prop::collection::vec(point(), 0..24), r in 1i64..=6) {
        let r = rat(r, 4);
        let mut want = Vec::new();
        for i in 0..centers.len() {
            for j in i + 1..centers.len() {
                if disks_intersect(&centers[i], &centers[j], &r) {
                    want.push((i, j));
                }
            }
        }
        let mut got = unit_disk_graph(&centers, &r);
        got.sort_unstable();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn ranges_cover_exactly_the_ids(ids in prop::collection::vec(0usize..64, 0..40)) {
        let r = to_ranges(&ids);
        for x in 0..70 {
            prop_assert_eq!(in_ranges(&r, x), ids.contains(&x));
        }
        prop_assert!(r.windows(2).all(|w| w[0][1] < w[1][0]));
    }

    #[test]
    fn rationals_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let q = rat(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }

    #[test]
    fn subsets_come_in_lex_order(n in 0usize..9, k in 0usize..5) {
        let mut seen: Vec<Vec<usize>> = Vec::new();
        first_subset(n, k, |c| {
            seen.push(c.to_vec());
            Ok(false)
        })
        .unwrap();
        let binom = if k > n { 0 } else { (0..k).fold(1usize, |a, i| a * (n - i) / (i + 1)) };
        prop_assert_eq!(seen.len(), binom);
        prop_assert!(seen.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(seen.iter().all(|c| c.windows(2).all(|p| p[0] < p[1]) && c.iter().all(|&x| x < n)));
    }

    #[test]
    fn kernel_agrees_with_plain_enumeration(
        seed in 0u64..10_000,
        n in 3usize..8,
        weights in prop::collection::vec(1u64..4, 24),
        t in 2usize..4,
    ) {
        let (g, _) = random_plane_graph(seed, n, 0.6).unwrap();
        let w = &weights[..g.m()];
        let terminals: Vec<usize> = (0..t.min(n)).collect();
        let caps = Caps { subset: 24, ground: 24 };
        let plain = brute_min_multiterminal_edges(ProblemTag::Multiterminal, n, g.edges(), w, &terminals, &caps).unwrap();
        let (kern, _) = solve_multiterminal_kernelized(ProblemTag::Multiterminal, n, g.edges(), w, &terminals, &caps).unwrap();
        prop_assert_eq!(kern.value, plain.value);
    }

    #[test]
    fn grid_drawings_keep_the_rotation(seed in 0u64..10_000, n in 3usize..9, keep in 0.0f64..1.0) {
        let (g, _) = random_plane_graph(seed, n, keep).unwrap();
        let emb = embed_plane_graph(&g).unwrap();
        prop_assert!(emb.coords.iter().all(|p| (0..=emb.grid_size as i64).contains(&p.x) && (0..=emb.grid_size as i64).contains(&p.y)));
        prop_assert!(emb.is_crossing_free(g.edges()));
        let drawn = emb.rotation_graph(&g).unwrap();
        prop_assert!(rotation_equivalence(&g, &drawn).unwrap());
    }

    #[test]
    fn isolation_survives_adding_disks(seed in 0u64..5_000, mask in any::<u16>()) {
        let case = common::oracle_case(seed);
        let n = case.centers.len();
        let part: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let all: Vec<usize> = (0..n).collect();
        if verify_isolation(&case.instance, &part, n as u64).unwrap().accept {
            prop_assert!(verify_isolation(&case.instance, &all, n as u64).unwrap().accept);
        }
    }

    #[test]
    fn valid_instances_round_trip_through_json(centers in prop::collection::vec(point(), 0..8), pts in prop::collection::vec(point(), 0..4)) {
        let disks = centers.into_iter().enumerate().map(|(index, c)| Disk::new(c, Provenance::Vertex { vertex: 0, index })).collect();
        let inst = DiskInstance::new(rat(1, 3), disks, pts);
        match inst.validate() {
            Ok(()) => prop_assert_eq!(DiskInstance::parse(&inst.to_json()).unwrap(), inst),
            Err(_) => prop_assert!(matches!(DiskInstance::parse(&inst.to_json()), Err(diskiso::Error::Structural(_)))),
        }
    }
}
