mod common;

use gdh::classify::{d12_centre_search, d12_pairs, d12_sign_perm_classes};
use gdh::enumerate::{EnumConfig, Enumerator, QueryMode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn close_vectors_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let rl = common::random_lattice(&mut rng);
        let en = Enumerator::new(&rl.lattice).unwrap();
        for mode in [QueryMode::ExactShell, QueryMode::Ball] {
            let q = common::random_query(&mut rng, &rl, mode);
            let mut want = common::brute_force(&rl, &q);
            want.sort();
            let got = en.close_vectors(&q, &EnumConfig::default()).unwrap();
            let mut coeffs = got.coefficients().to_vec();
            coeffs.sort();
            assert_eq!(coeffs, want, "{:?} {:?}", rl.rows, q);
            for i in 0..got.len() {
                assert_eq!(rl.lattice.vector(&got.coefficients()[i]), got.vector(i));
            }
        }
    }
}

#[test]
fn d12_classes_agree_with_direct_recursion() {
    for (d, n) in d12_pairs() {
        let strict = d.node_count() == 1;
        let mut lib = d12_sign_perm_classes(n, strict);
        lib.sort();
        assert_eq!(lib, common::d12_classes(n as i64, strict), "n = {n}");
    }
}

#[test]
fn close_vector_condition_matches_decoder() {
    for (d, n) in d12_pairs() {
        let strict = d.node_count() == 1;
        let mut passing = Vec::new();
        for c in common::d12_classes(n as i64, strict) {
            let mut variants = vec![c.clone()];
            if !c.contains(&0) {
                let mut f = c.clone();
                f[0] = -f[0];
                variants.push(f);
            }
            passing.extend(variants.into_iter().filter(|h| common::d12_close_vector_condition(h, n as i64)));
        }
        let r = d12_centre_search(&d, n, &EnumConfig::parallel()).unwrap();
        assert_eq!(r.close_vector_solutions, passing.len(), "{d}");
        for h in &r.surviving_orbits {
            assert!(passing.contains(h));
        }
    }
}

#[test]
fn decoder_sanity() {
    // (1/2,…,1/2) lies in D12+
    assert_eq!(common::d12plus_min_scaled(&[1; 12], 1), 0);
    // (1,0,…,0) is at squared distance 1 from D12 and 3 from the other coset
    assert_eq!(common::d12plus_min_scaled(&[2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0], 1), 4);
}
