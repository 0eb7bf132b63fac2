use std::path::Path;

use proptest::prelude::*;

use softhappy::colouring::UNCOLOURED;
use softhappy::solvers::{
    classify_vertices, exact_oracle, greedy_soft_mhv, growth_soft_mhv, lmc, ngc, VertexClass,
};
use softhappy::theory::*;
use softhappy::{
    happiness, sample_graph, CommunityAssignment, Graph, Instance, PartialColouring, Rho,
    SbmParams, SolveResult, SolverConfig,
};

type Solver = fn(&Graph, &PartialColouring, &SolverConfig) -> softhappy::Result<SolveResult>;

const SOLVERS: [(&str, Solver); 4] = [
    ("greedy", greedy_soft_mhv),
    ("ngc", ngc),
    ("lmc", lmc),
    ("growth", growth_soft_mhv),
];

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
            .collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges: Vec<_> = pairs
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(&e, _)| e)
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

/// A graph, a partial colouring with `k` colours (about half the vertices
/// coloured), and `k`.
fn instance_strategy(max_n: usize, max_k: u32) -> impl Strategy<Value = (Graph, PartialColouring)> {
    (graph_strategy(max_n), 1..=max_k).prop_flat_map(|(g, k)| {
        let n = g.n();
        proptest::collection::vec(prop_oneof![Just(0u32), 1..=k], n)
            .prop_map(move |cols| (g.clone(), PartialColouring::from_vec(cols, k).unwrap()))
    })
}

fn rho_strategy() -> impl Strategy<Value = Rho> {
    (0u64..=20).prop_map(|a| Rho::from_ratio(a, 20).unwrap())
}

fn small_sbm() -> impl Strategy<Value = SbmParams> {
    (
        4usize..40,
        2u32..5,
        0.05f64..1.0,
        0.01f64..0.99,
        0usize..3,
        any::<u64>(),
    )
        .prop_filter_map("admissible", |(n, k, p, qr, pcc, seed)| {
            SbmParams::new(n, k, p, p * qr, pcc, seed).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn happiness_is_monotone_in_rho((g, c) in instance_strategy(14, 3), a in rho_strategy(), b in rho_strategy()) {
        let (lo, hi) = if a.as_f64() <= b.as_f64() { (a, b) } else { (b, a) };
        let h_lo = happiness(&g, &c, lo).unwrap().count;
        let h_hi = happiness(&g, &c, hi).unwrap().count;
        prop_assert!(h_lo >= h_hi);
    }

    #[test]
    fn happiness_ignores_colour_names((g, c) in instance_strategy(14, 4), rho in rho_strategy(), shift in 1u32..4) {
        let k = c.k();
        let renamed: Vec<u32> = c
            .as_slice()
            .iter()
            .map(|&x| if x == UNCOLOURED { 0 } else { (x - 1 + shift) % k + 1 })
            .collect();
        let renamed = PartialColouring::from_vec(renamed, k).unwrap();
        prop_assert_eq!(
            happiness(&g, &c, rho).unwrap().happy,
            happiness(&g, &renamed, rho).unwrap().happy
        );
    }

    #[test]
    fn instance_files_round_trip(params in small_sbm()) {
        let inst = Instance::generate(&params).unwrap();
        let text = inst.to_dimacs();
        let back = Instance::parse(&text, Path::new("mem")).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(back.to_dimacs(), text);
        let regenerated = Instance::generate(&params).unwrap();
        prop_assert_eq!(regenerated, inst);
    }

    #[test]
    fn sbm_communities_are_balanced(params in small_sbm()) {
        let (g, a) = sample_graph(&params);
        prop_assert_eq!(g.n(), params.n());
        let sizes = a.sizes();
        let (min, max) = (sizes.iter().min().unwrap(), sizes.iter().max().unwrap());
        prop_assert!(max - min <= 1);
        prop_assert_eq!(sizes.iter().sum::<usize>(), params.n());
        prop_assert_eq!(a, CommunityAssignment::contiguous(params.n(), params.k()));
    }

    #[test]
    fn precolouring_follows_communities(params in small_sbm()) {
        let inst = Instance::generate(&params).unwrap();
        let mut per_comm = vec![0; params.k() as usize + 1];
        for (v, &c) in inst.precolouring.as_slice().iter().enumerate() {
            if c != UNCOLOURED {
                prop_assert_eq!(c, inst.communities.get(v as u32));
                per_comm[c as usize] += 1;
            }
        }
        prop_assert!(per_comm[1..].iter().all(|&x| x == params.pcc()));
    }

    #[test]
    fn solvers_extend_and_complete((g, c) in instance_strategy(16, 3), rho in rho_strategy(), seed in any::<u64>()) {
        for (name, solve) in SOLVERS {
            for config in [SolverConfig::deterministic(rho), SolverConfig::new(rho).with_seed(seed)] {
                let r = solve(&g, &c, &config).unwrap();
                prop_assert!(!r.timed_out, "{}", name);
                prop_assert!(r.colouring.is_complete(), "{}", name);
                prop_assert!(c.is_extended_by(&r.colouring), "{}", name);
                prop_assert_eq!(r.happy_count, happiness(&g, &r.colouring, rho).unwrap().count, "{}", name);
                let again = solve(&g, &c, &config).unwrap();
                prop_assert_eq!(&again.colouring, &r.colouring, "{}", name);
            }
        }
    }

    #[test]
    fn oracle_dominates_heuristics((g, c) in instance_strategy(7, 3), rho in rho_strategy()) {
        let best = exact_oracle(&g, &c, rho, c.k()).unwrap();
        prop_assert!(c.is_extended_by(&best.colouring));
        prop_assert_eq!(best.max_happy, happiness(&g, &best.colouring, rho).unwrap().count);
        for (name, solve) in SOLVERS {
            let r = solve(&g, &c, &SolverConfig::deterministic(rho)).unwrap();
            prop_assert!(r.happy_count <= best.max_happy, "{}", name);
        }
    }

    #[test]
    fn greedy_picks_best_single_colour_completion((g, c) in instance_strategy(14, 4), rho in rho_strategy()) {
        let best = (1..=c.k())
            .map(|i| {
                let full: Vec<u32> = c.as_slice().iter().map(|&x| if x == UNCOLOURED { i } else { x }).collect();
                happiness(&g, &PartialColouring::from_vec(full, c.k()).unwrap(), rho).unwrap().count
            })
            .max()
            .unwrap();
        let r = greedy_soft_mhv(&g, &c, &SolverConfig::deterministic(rho)).unwrap();
        prop_assert_eq!(r.happy_count, best);
    }

    #[test]
    fn vertex_classes_partition((g, c) in instance_strategy(16, 3), rho in rho_strategy()) {
        use VertexClass::*;
        let cls = classify_vertices(&g, &c, rho).unwrap();
        for v in g.vertices() {
            prop_assert_eq!(cls.get(v).is_coloured_class(), c.get(v) != UNCOLOURED);
        }
        prop_assert_eq!(cls.p.len(), cls.count(P));
        prop_assert_eq!(cls.l_h.len(), cls.count(Lh));
        prop_assert_eq!(cls.l_u.len(), cls.count(Lu));
        prop_assert_eq!(cls.l_f.len(), cls.count(Lf));
    }

    #[test]
    fn lmc_work_is_linear((g, c) in instance_strategy(20, 3), seed in any::<u64>(), det in any::<bool>()) {
        let mut config = SolverConfig::new(Rho::ONE).with_seed(seed);
        config.deterministic = det;
        let r = lmc(&g, &c, &config).unwrap();
        prop_assert!(r.work_counter <= 2 * g.m() as u64 + g.n() as u64);
    }

    #[test]
    fn epsilon_tilde_is_exp_n_phi(n in 2usize..100_000, k in 2u32..30, p in 0.01f64..1.0, qr in 0.0f64..1.0, rho in 0.01f64..1.0) {
        let q = p * qr;
        let lhs = epsilon_tilde(n, k, p, q, rho);
        let rhs = (n as f64 * phi(k, p, q, rho)).exp();
        prop_assert!(lhs == rhs || (lhs - rhs).abs() <= 1e-12 * rhs);
    }

    #[test]
    fn xi_respects_bounds_and_limit(k in 2u32..30, p in 0.01f64..1.0, qr in 0.0f64..1.0, n in 3usize..1_000_000) {
        let q = p * qr;
        let x = xi_default(n, k, p, q);
        prop_assert!(x >= 0.0);
        prop_assert!(x <= xi_upper_bound(k, p, q) + 1e-15);
        prop_assert!(x <= xi_tilde(k, p, q) + 1e-15);
        prop_assert!(xi_default(n + 1000, k, p, q) >= x - 1e-15);
        prop_assert!((xi_default(1_000_000_000, k, p, q) - xi_tilde(k, p, q)).abs() < 1e-6);
    }

    #[test]
    fn phi_sign_matches_log_threshold(k in 2u32..30, p in 0.01f64..1.0, qr in 0.0f64..1.0, rho in 0.0f64..1.0) {
        let q = p * qr;
        let kq = (k - 1) as f64 * q;
        let cut = ((p * std::f64::consts::E + kq) / (p + kq)).ln();
        prop_assume!((rho - cut).abs() > 1e-9);
        prop_assert_eq!(phi(k, p, q, rho) < 0.0, rho < cut);
    }

    #[test]
    fn inequality_is_n_phi_below_ln_epsilon(n in 2usize..100_000, k in 2u32..30, p in 0.01f64..1.0, qr in 0.0f64..1.0, rho in 0.01f64..1.0, eps in 1e-12f64..0.99) {
        let q = p * qr;
        let n_phi = n as f64 * phi(k, p, q, rho);
        prop_assume!((n_phi - eps.ln()).abs() > 1e-6 * eps.ln().abs());
        prop_assert_eq!(theorem1_inequality_holds(n, k, p, q, rho, eps).unwrap(), n_phi < eps.ln());
    }
}

/// n = 1000, k = 10, p = 0.5, q = 0.05: 49,500 intra pairs, so the intra
/// count should be within 3σ (σ ≈ 111.2) of 24,750.
#[test]
fn sbm_edge_densities() {
    let params = SbmParams::new(1000, 10, 0.5, 0.05, 0, 2024).unwrap();
    let (g, a) = sample_graph(&params);
    let intra_pairs = 10.0 * (100.0 * 99.0 / 2.0);
    let inter_pairs = 1000.0 * 999.0 / 2.0 - intra_pairs;
    let intra = g.edges().filter(|&(u, v)| a.get(u) == a.get(v)).count() as f64;
    let inter = g.m() as f64 - intra;
    let check = |count: f64, pairs: f64, prob: f64| {
        let mean = pairs * prob;
        let sd = (pairs * prob * (1.0 - prob)).sqrt();
        assert!((count - mean).abs() <= 3.0 * sd, "{count} vs {mean} ± {sd}");
    };
    assert_eq!(intra_pairs * 0.5, 24_750.0);
    check(intra, intra_pairs, 0.5);
    check(inter, inter_pairs, 0.05);
}

/// Across many seeds the intra-edge density stays within 4σ.
#[test]
fn sbm_density_over_seeds() {
    for seed in 0..40 {
        let params = SbmParams::new(120, 4, 0.4, 0.1, 0, seed).unwrap();
        let (g, a) = sample_graph(&params);
        let pairs = 4.0 * (30.0 * 29.0 / 2.0);
        let intra = g.edges().filter(|&(u, v)| a.get(u) == a.get(v)).count() as f64;
        let sd = (pairs * 0.4 * 0.6f64).sqrt();
        assert!(
            (intra - pairs * 0.4).abs() <= 4.0 * sd,
            "seed {seed}: {intra}"
        );
    }
}
