//! Property suites for the realization map: scale consistency, the
//! case analysis of the limiting max-formula, and the convergence rate
//! for admissible pairs.

use asymtree_core::correspond::{pair_error, realize_at_scale, DEFAULT_SCALES};
use asymtree_core::rat;
use asymtree_core::sampling;
use asymtree_core::tree::TreeProfile;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn realized_radius_is_exact(seed in any::<u64>(), scale_idx in 0usize..5) {
        let mut r = ChaCha12Rng::seed_from_u64(seed);
        let (p, _) = sampling::admissible_pair(&mut r);
        let n = DEFAULT_SCALES[scale_idx];
        let realization = realize_at_scale(&p, n).unwrap();
        prop_assert_eq!(realization.point().rho(), n * rat::to_f64(p.depth()));
        prop_assert_eq!(realization.source(), &p);
        prop_assert_eq!(realization.scale(), n);
    }

    #[test]
    fn limit_formula_matches_tree_distance(seed in any::<u64>()) {
        // max(|l1 - l2|, l1 + l2 - 2c) with c the separation equals the
        // tree distance identically, in every ordering of (c, l1, l2);
        // checked in exact rationals, independent of any scale.
        let mut r = ChaCha12Rng::seed_from_u64(seed);
        let p = sampling::profile_f(&mut r, 4);
        let q = sampling::profile_f(&mut r, 4);
        let c = p.separation(&q);
        let radial = if p.depth() > q.depth() {
            p.depth() - q.depth()
        } else {
            q.depth() - p.depth()
        };
        let angular = p.depth() + q.depth() - BigRational::from_integer(2.into()) * &c;
        let limit = radial.max(angular);
        prop_assert_eq!(limit, p.distance(&q));
    }

    #[test]
    fn admissible_pairs_converge_at_rate(seed in any::<u64>()) {
        let mut r = ChaCha12Rng::seed_from_u64(seed);
        let (p, q) = sampling::admissible_pair(&mut r);
        let mut scaled_errors = Vec::new();
        for n in DEFAULT_SCALES {
            let row = pair_error(&p, &q, n).unwrap();
            scaled_errors.push(n * row.error);
        }
        // n * error stays bounded across the ladder (the 1/n rate)
        for (i, ne) in scaled_errors.iter().enumerate() {
            prop_assert!(
                *ne <= RATE_BOUND,
                "n * error = {ne} at n = {} for {p:?} / {q:?}",
                DEFAULT_SCALES[i]
            );
        }
    }
}

/// Bound on `n * pair_error` for admissible pairs across the default
/// ladder; the dominant term is `2|ln(gap floors)|` plus `2 ln 2`.
const RATE_BOUND: f64 = 12.0;

#[test]
fn pair_rows_carry_consistent_fields() {
    let mut r = ChaCha12Rng::seed_from_u64(2024);
    let (p, q) = sampling::admissible_pair(&mut r);
    let row = pair_error(&p, &q, 100.0).unwrap();
    assert_eq!(row.pair, (0, 1));
    assert_eq!(row.scale, 100.0);
    assert_eq!(row.tree_delta, p.distance(&q));
    assert_eq!(
        row.error,
        (row.hyper_scaled - rat::to_f64(&row.tree_delta)).abs()
    );
}
