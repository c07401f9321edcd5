//! Reduce, solve the target by brute force, lift back, and compare with the
//! source optimum.

use diskiso::gadgets::DiskInstance;
use diskiso::geometry::{ParamMode, ToyOverrides};
use diskiso::graphs::{reduce_pmc_to_subdivision, GraphFile, PlanarEmbeddedGraph, UnionFind};
use diskiso::pipeline::corpus::{corpus_file, random_plane_graph};
use diskiso::pipeline::{lift, reduce, ParamChoice, ReductionKind};
use diskiso::scalar::rat;
use diskiso::solvers::{
    brute_min_acc, brute_min_fvs, brute_min_multiterminal_cut, brute_min_multiterminal_edges, brute_min_subdivision,
    solve_udmc, Caps, ProblemTag,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bridges(g: &PlanarEmbeddedGraph) -> Vec<bool> {
    (0..g.m())
        .map(|e| {
            let mut uf = UnionFind::new(g.n());
            for (k, &(a, b)) in g.edges().iter().enumerate() {
                if k != e {
                    uf.union(a, b);
                }
            }
            let (a, b) = g.edge(e);
            uf.find(a) != uf.find(b)
        })
        .collect()
}

/// A seeded multiterminal instance on `n` vertices with two or three
/// terminals, as a graph file with coordinates.
fn mc_file(seed: u64, n: usize, keep: f64) -> (PlanarEmbeddedGraph, GraphFile) {
    let (g, c) = random_plane_graph(seed, n, keep).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut vs: Vec<usize> = (0..n).collect();
    vs.shuffle(&mut rng);
    let mut t = vs[..rng.gen_range(2..=3)].to_vec();
    t.sort_unstable();
    let mut f = corpus_file(&g, &c);
    f.terminals = t;
    (g, f)
}

fn toy(r: (i64, i64), s: (i64, i64), a: (i64, i64)) -> ParamChoice {
    ParamChoice {
        mode: ParamMode::Toy,
        overrides: ToyOverrides { r: Some(rat(r.0, r.1)), s: Some(rat(s.0, s.1)), a: Some(rat(a.0, a.1)), ..Default::default() },
    }
}

#[test]
fn subdivision_optimum_prices_bridges_at_three() {
    let caps = Caps::default();
    let mut with_bridges = 0;
    for seed in 0..16 {
        let (g, f) = mc_file(300 + seed, 4 + (seed % 2) as usize, 0.2);
        let mi = f.to_multiterminal().unwrap();
        let (sub, back) = reduce_pmc_to_subdivision(&mi).unwrap();
        let br = bridges(&g);
        with_bridges += br.iter().any(|&b| b) as usize;
        for (e, group) in back.groups.iter().enumerate() {
            assert_eq!(group.len(), if br[e] { 3 } else { 2 });
        }
        let price: Vec<u64> = br.iter().map(|&b| if b { 3 } else { 2 }).collect();
        let priced = brute_min_multiterminal_edges(ProblemTag::Multiterminal, g.n(), g.edges(), &price, &mi.terminals, &caps)
            .unwrap()
            .value;
        let sb = brute_min_subdivision(&sub, &caps).unwrap().value;
        assert_eq!(sb, priced, "seed {seed}");
    }
    assert!(with_bridges >= 4, "corpus should exercise bridges");
}

#[test]
fn pmc_round_trip_keeps_the_optimum() {
    let caps = Caps::default();
    let mut done = 0;
    for seed in 0..40 {
        let (g, f) = mc_file(500 + seed, 5, 0.5);
        if bridges(&g).iter().any(|&b| b) {
            continue;
        }
        let text = f.to_json();
        let want = brute_min_multiterminal_cut(&f.to_multiterminal().unwrap(), &caps).unwrap().value.unwrap();
        let red = reduce(ReductionKind::PmcToSubdivision, &text, &ParamChoice::default()).unwrap();
        let target = GraphFile::parse(&red.target).unwrap().to_subdivision().unwrap();
        let opt = brute_min_subdivision(&target, &caps).unwrap();
        let l = lift(&red.record, &red.target, &opt.witness).unwrap();
        assert_eq!(l.size, want, "seed {seed}");
        assert_eq!(l.target_size, 2 * want);
        done += 1;
    }
    assert!(done >= 5);
}

#[test]
fn fvs_round_trip_keeps_the_optimum() {
    let cases: [(&str, u64); 3] = [
        (r#"{"vertices":[0,1,2],"edges":[[0,1],[1,2],[2,0]],"coords":{"0":[0,0],"1":[2,0],"2":[1,2]}}"#, 1),
        (r#"{"vertices":[0,1,2,3],"edges":[[0,1],[1,2],[2,3],[3,0]],"coords":{"0":[0,0],"1":[2,0],"2":[2,2],"3":[0,2]}}"#, 1),
        (
            r#"{"vertices":[0,1,2,3,4],"edges":[[0,1],[1,2],[2,3],[3,0],[2,4],[3,4]],
               "coords":{"0":[0,0],"1":[2,0],"2":[2,2],"3":[0,2],"4":[1,4]}}"#,
            1,
        ),
    ];
    let caps = Caps { subset: 2, ground: 4000 };
    for (src, want) in cases {
        let g = GraphFile::parse(src).unwrap().to_graph().unwrap();
        assert_eq!(brute_min_fvs(&g, &caps).unwrap().value, Some(want));
        let red = reduce(ReductionKind::FvsToAcc, src, &toy((1, 40), (9, 40), (1, 10))).unwrap();
        let inst = DiskInstance::parse(&red.target).unwrap();
        let opt = brute_min_acc(&inst, &caps).unwrap();
        assert_eq!(opt.value, Some(want));
        let l = lift(&red.record, &red.target, &opt.witness).unwrap();
        assert_eq!(l.size, want);
    }
}

#[test]
fn udmc_round_trip_keeps_the_weighted_optimum() {
    let cases = [
        r#"{"vertices":[0,1,2,3],"edges":[[0,1],[1,2],[1,3]],"coords":{"0":[0,0],"1":[1,0],"2":[2,0],"3":[1,1]},
            "terminals":[0,2,3],"weights":{"0":2,"1":3,"2":1}}"#,
        r#"{"vertices":[0,1,2],"edges":[[0,1],[1,2],[2,0]],"coords":{"0":[0,0],"1":[2,0],"2":[0,2]},
            "terminals":[0,1,2],"weights":{"0":1,"1":2,"2":3}}"#,
        r#"{"vertices":[0,1,2],"edges":[[0,1],[1,2]],"coords":{"0":[0,0],"1":[1,1],"2":[2,0]},
            "terminals":[0,2],"weights":{"0":5,"1":4}}"#,
    ];
    let caps = Caps::default();
    for src in cases {
        let want = brute_min_multiterminal_cut(&GraphFile::parse(src).unwrap().to_multiterminal().unwrap(), &caps)
            .unwrap()
            .value;
        let red = reduce(ReductionKind::McToUdmc, src, &toy((1, 40), (1, 10), (1, 5))).unwrap();
        let inst = DiskInstance::parse(&red.target).unwrap();
        let opt = solve_udmc(&inst, &caps).unwrap();
        assert_eq!(opt.value, want);
        let l = lift(&red.record, &red.target, &opt.witness).unwrap();
        assert_eq!(Some(l.size), want);
    }
}

#[test]
fn isolation_round_trip_lifts_kept_edges() {
    let src = r#"{"vertices":[0,1,2],"edges":[[0,1],[1,2],[2,0]],"coords":{"0":[0,0],"1":[2,0],"2":[0,2]},"terminals":[0,1]}"#;
    let red = reduce(ReductionKind::SubdivisionToIsolation, src, &toy((1, 10), (1, 4), (1, 10))).unwrap();
    let c_e = red.record.c_e.unwrap();
    let edges: Vec<usize> = red.record.edge_map.iter().flatten().flat_map(|&[a, b]| a..b).collect();
    assert_eq!(edges.len() as u64, 3 * c_e);
    // edge chains alone leave gaps at the rings
    assert!(lift(&red.record, &red.target, &edges).is_err());
    let all: Vec<usize> = (0..DiskInstance::parse(&red.target).unwrap().disks.len()).collect();
    let l = lift(&red.record, &red.target, &all).unwrap();
    assert_eq!((l.solution, l.size), (vec![0, 1, 2], 3));
    // dropping one disk of an edge gadget opens the triangle
    assert!(lift(&red.record, &red.target, &all[1..]).is_err());
}
