use feshbach_core::random::random_pair;
use feshbach_core::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_pairs_satisfy_isospectrality(seed in any::<u64>(), dim in 8usize..33) {
        let (p, _) = random_pair(&mut ChaCha8Rng::seed_from_u64(seed), dim).unwrap();
        let rep = check_isospectral(&p);
        prop_assert!(rep.passes(1e-9), "{:?}", rep);
        let f = smooth_feshbach(&p);
        prop_assert!(max_abs(&(&f - f.adjoint())) < 1e-12);
    }
}
