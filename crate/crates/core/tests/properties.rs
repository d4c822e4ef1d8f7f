//! Property tests over randomly drawn instances.

use hgood::chains::{double_tree_walk, spanning_path};
use hgood::check::{check_bundle, Bundle};
use hgood::constructions::{burr_coloring, ell_path_lb, non_transitive_lb, transitive_lb};
use hgood::engines::{
    absorbing_block, butterfly_dichotomy, loose_witness_engine, pair_density, random_embed, tight_witness_engine, AbsorbParams,
    ButterflyOutcome, LooseParams, TightParams,
};
use hgood::hg::{clique, mask_of};
use hgood::search::{longest_mono_ell_path, Certificate, Host, Limits};
use hgood::table::{absorb_instance, interleaved, random_chain, random_tree, walk_is_double_cover};
use hgood::{Color, Tournament, TwoColoring};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn coloring(seed: u64, n: usize, p: f64) -> TwoColoring {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    TwoColoring::from_fn(3, n, |_| if r.gen_bool(p) { Color::Red } else { Color::Blue }).unwrap()
}

fn red(c: &TwoColoring, a: u32, b: u32, x: u32) -> bool {
    c.is(1 << a | 1 << b | 1 << x, Color::Red)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certificates_survive_serde(seed in any::<u64>(), n in 5usize..10, p in 0.2f64..0.9, ell in 1usize..3) {
        let c = coloring(seed, n, p);
        let cert = longest_mono_ell_path(&c, ell, Color::Red, &Limits::default()).unwrap().certificate;
        let back: Certificate = serde_json::from_str(&serde_json::to_string(&cert).unwrap()).unwrap();
        prop_assert_eq!(&back, &cert);
        back.validate(Host::Coloring(&c)).unwrap();
    }

    #[test]
    fn chains_give_spanning_paths(seed in any::<u64>()) {
        let (chain, c) = random_chain(&mut ChaCha8Rng::seed_from_u64(seed));
        let cert = spanning_path(&chain).unwrap();
        cert.validate(Host::Coloring(&c)).unwrap();
        prop_assert_eq!(mask_of(&cert.witness), mask_of(&chain.vertices));
        prop_assert_eq!(cert.witness.len(), chain.vertices.len());
    }

    #[test]
    fn tree_walks_cover_each_edge_twice(seed in any::<u64>()) {
        let (n, edges) = random_tree(&mut ChaCha8Rng::seed_from_u64(seed));
        let walk = double_tree_walk(n, &edges).unwrap();
        prop_assert!(walk_is_double_cover(n, &edges, &walk));
    }

    #[test]
    fn engines_only_report_valid_witnesses(seed in any::<u64>(), n in 7usize..11, p in 0.05f64..0.95) {
        let c = coloring(seed, n, p);
        let lim = Limits::default();
        let k4 = clique(3, 4).unwrap();
        let reports = [
            loose_witness_engine(&c, &k4, &LooseParams::path(7)).unwrap(),
            tight_witness_engine(&c, 2, 2, &TightParams { seed, ..TightParams::path(n - 1) }).unwrap(),
        ];
        for rep in reports {
            if let Some(cert) = rep.certificate {
                cert.validate(Host::Coloring(&c)).unwrap();
                let b = Bundle { certificate: cert, coloring: Some(c.clone()), hypergraph: None, tournament: None, target: None };
                check_bundle(&b, &lim).unwrap();
            }
        }
    }

    #[test]
    fn absorbing_paths_interleave(seed in any::<u64>()) {
        let (c, a, b, d) = absorb_instance(&mut ChaCha8Rng::seed_from_u64(seed));
        let eta = pair_density(&c, &a, &b, Color::Red);
        prop_assume!(eta > 0.0 && b.len() >= d);
        let out = absorbing_block(&c, &a, &b, &AbsorbParams { d, eta, ..AbsorbParams::default() }).unwrap();
        if out.bound_holds {
            let cert = out.certificate.expect("bound holds but no path");
            cert.validate(Host::Coloring(&c)).unwrap();
            prop_assert_eq!(cert.ell, Some(2));
            prop_assert!(interleaved(&cert.witness, &a, &b, d));
        }
    }

    #[test]
    fn butterfly_branches_are_exclusive(seed in any::<u64>(), sizes in prop::collection::vec(2usize..4, 2..4), p in 0.05f64..0.6) {
        let n: usize = sizes.iter().sum();
        let c = coloring(seed, n, p);
        let mut next = 0u32;
        let ws: Vec<Vec<u32>> = sizes.iter().map(|&s| { let w = (next..next + s as u32).collect(); next += s as u32; w }).collect();
        let out = butterfly_dichotomy(&c, &ws, 2, 1).unwrap();
        // w a b w′ with w, a in one set and b, w′ in another
        let mut butterfly = false;
        for (i, wi) in ws.iter().enumerate() {
            for wj in &ws[i + 1..] {
                for &a in wi { for &b in wj {
                    let left = wi.iter().any(|&w| w != a && red(&c, w, a, b));
                    let right = wj.iter().any(|&w| w != b && red(&c, a, b, w));
                    butterfly |= left && right;
                }}
            }
        }
        match out {
            ButterflyOutcome::Red { certificate, pair } => {
                prop_assert!(butterfly);
                certificate.validate(Host::Coloring(&c)).unwrap();
                let w = &certificate.witness;
                prop_assert!(ws[pair.0].contains(&w[0]) && ws[pair.0].contains(&w[1]));
                prop_assert!(ws[pair.1].contains(&w[2]) && ws[pair.1].contains(&w[3]));
            }
            ButterflyOutcome::Blue { certificate, .. } => {
                prop_assert!(!butterfly);
                certificate.validate(Host::Coloring(&c)).unwrap();
            }
            ButterflyOutcome::ScaleTooSmall { .. } => prop_assert!(!butterfly),
        }
    }

    #[test]
    fn burr_blocks_hold_every_red_edge(chi in 1usize..4, sigma in 1usize..4, extra in 0usize..3) {
        let v_g = sigma + extra;
        let inst = burr_coloring(3, chi, sigma, v_g).unwrap();
        prop_assert_eq!(inst.n(), (chi - 1) * (v_g - 1) + sigma - 1);
        let blocks: Vec<u64> = inst.partition.iter().map(|b| mask_of(b)).collect();
        for m in hgood::hg::KSets::new(inst.n(), 3) {
            let inside = blocks.iter().any(|&b| m & !b == 0);
            prop_assert_eq!(inst.coloring.is(m, Color::Red), inside);
        }
    }

    #[test]
    fn construction_orders(chi in 2usize..4, j in 2usize..4, m in 2usize..4, t in 1usize..4) {
        let n = 2 + j;
        prop_assert_eq!(ell_path_lb(3, 2, n, chi).unwrap().n(), (chi - 1) * (n - 1) + (n / 3).saturating_sub(1));
        prop_assert_eq!(non_transitive_lb(m, t).unwrap().n(), (m - 1) * t);
        let big = 3 * t + 6;
        prop_assert_eq!(transitive_lb(&Tournament::transitive(m), big).unwrap().n(), m * (2 * big / 3 - 2));
    }
}

#[cfg(feature = "parallel")]
proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn par_map_ignores_pool_size(seed in any::<u64>(), len in 0usize..300, threads in 2usize..9) {
        let f = |i: usize| {
            let mut r = ChaCha8Rng::seed_from_u64(seed ^ i as u64);
            (0..i % 7).map(|_| r.gen::<u32>()).fold(0u64, |a, x| a.wrapping_mul(31).wrapping_add(x as u64))
        };
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let many = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        prop_assert_eq!(one.install(|| hgood::par::map_range(len, f)), many.install(|| hgood::par::map_range(len, f)));
    }
}

#[test]
fn random_embedding_beats_the_union_bound() {
    // χ = 2, m = 2: C(2,2)·8·2γ = 1/2 at γ = 1/32
    let gamma = 1.0 / 32.0;
    let classes: Vec<Vec<u32>> = vec![(0..32).collect(), (32..64).collect()];
    let mut r = ChaCha8Rng::seed_from_u64(7);
    let c = TwoColoring::from_fn(3, 64, |_| if r.gen_bool(0.02) { Color::Red } else { Color::Blue }).unwrap();
    assert!(pair_density(&c, &classes[0], &classes[1], Color::Blue) >= 1.0 - gamma);
    let mut failures = 0;
    for seed in 0..1000 {
        let out = random_embed(&c, &classes, 2, gamma, 1, seed).unwrap();
        assert!((out.union_bound - 0.5).abs() < 1e-12);
        match out.certificate {
            Some(cert) => cert.validate(Host::Coloring(&c)).unwrap(),
            None => failures += 1,
        }
    }
    assert!(failures < 500, "{failures} of 1000 single trials failed");
}
