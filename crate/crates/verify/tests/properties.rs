use proptest::prelude::*;
use verify::{random_directions, CheckReport};

proptest! {
    #[test]
    fn pass_iff_residual_within_tolerance(r in 0.0f64..2.0, t in 0.0f64..2.0) {
        let c = CheckReport::new("p", r, t, Vec::new());
        prop_assert_eq!(c.pass, r <= t);
    }

    #[test]
    fn directions_are_unit_and_seeded(n in 1usize..20, seed in any::<u64>()) {
        let d = random_directions(n, seed);
        prop_assert_eq!(d.len(), n);
        for v in &d {
            let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            prop_assert!((norm - 1.0).abs() < 1e-14);
        }
        prop_assert_eq!(d, random_directions(n, seed));
    }
}
