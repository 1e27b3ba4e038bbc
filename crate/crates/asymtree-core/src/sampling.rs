//! Seedable generators for experiment inputs.
//!
//! Every generator draws from a caller-supplied [`Rng`], so suites that
//! need bit-for-bit reproducibility seed one stream per suite and get
//! identical samples on every platform. Support points and values are
//! quantized to small grids: random pairs then collide often enough to
//! exercise shared prefixes, interior separations, and boundary cases
//! instead of separating at depth zero almost surely.

use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use crate::hyperbolic::PolarPoint;
use crate::levelled::{Level, LevelledNumber, Spectrum};
use crate::rat;
use crate::tree::{ProfileC, ProfileD, ProfileF};

/// Uniform polar point with `rho` in `[0, max_rho)`.
pub fn polar_point<R: Rng>(rng: &mut R, max_rho: f64) -> PolarPoint {
    let rho = rng.gen::<f64>() * max_rho;
    let phi = rng.gen::<f64>() * TAU;
    PolarPoint::new(rho, phi).expect("sampled coordinates are valid")
}

/// Rational with numerator in `[-max_num, max_num]` and denominator in
/// `[1, max_den]`.
pub fn rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> BigRational {
    rat::ratio(
        rng.gen_range(-max_num..=max_num),
        rng.gen_range(1..=max_den),
    )
}

fn nonzero_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> BigRational {
    loop {
        let r = rational(rng, max_num, max_den);
        if !r.is_zero() {
            return r;
        }
    }
}

const VALUE_CHOICES: [f64; 6] = [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0];
const TOP_CHOICES: [f64; 4] = [0.5, 1.5, 2.5, 4.0];

fn support_value<R: Rng>(rng: &mut R) -> f64 {
    VALUE_CHOICES[rng.gen_range(0..VALUE_CHOICES.len())]
}

/// `k` distinct elements of `pool`, in pool order.
fn pick_distinct<R: Rng>(rng: &mut R, pool_len: i64, k: usize) -> Vec<i64> {
    let mut pool: Vec<i64> = (1..=pool_len).collect();
    for i in 0..k {
        let j = rng.gen_range(i..pool.len());
        pool.swap(i, j);
    }
    pool.truncate(k);
    pool.sort_unstable();
    pool
}

/// Finite-support profile with depth in `(1/4, 3]` (quarters) and
/// support strictly inside `(0, depth)`.
pub fn profile_d<R: Rng>(rng: &mut R, max_points: usize) -> ProfileD {
    let depth_q = rng.gen_range(2..=12i64);
    let k = rng.gen_range(0..=max_points.min(depth_q as usize - 1));
    let support = pick_distinct(rng, depth_q - 1, k)
        .into_iter()
        .map(|q| (rat::ratio(q, 4), support_value(rng)));
    ProfileD::new(rat::ratio(depth_q, 4), support).expect("sampled profile is valid")
}

/// Circle-topped finite-support profile; the top comes from a small
/// set so random pairs frequently share it.
pub fn profile_f<R: Rng>(rng: &mut R, max_points: usize) -> ProfileF {
    let depth_q = rng.gen_range(2..=12i64);
    let k = rng.gen_range(0..=max_points.min(depth_q as usize - 1));
    let support: Vec<(BigRational, f64)> = pick_distinct(rng, depth_q - 1, k)
        .into_iter()
        .map(|q| (rat::ratio(q, 4), support_value(rng)))
        .collect();
    let top = TOP_CHOICES[rng.gen_range(0..TOP_CHOICES.len())];
    ProfileF::new(rat::ratio(depth_q, 4), top, support).expect("sampled profile is valid")
}

/// Piecewise-linear profile with breakpoints on the quarter grid and
/// values on the half grid.
pub fn profile_c<R: Rng>(rng: &mut R, max_breaks: usize) -> ProfileC {
    let depth_q = rng.gen_range(2..=12i64);
    let k = rng.gen_range(0..=max_breaks.min(depth_q as usize - 1));
    let mut points = vec![(BigRational::zero(), BigRational::zero())];
    for q in pick_distinct(rng, depth_q - 1, k) {
        points.push((rat::ratio(q, 4), rat::ratio(rng.gen_range(-4..=4), 2)));
    }
    points.push((rat::ratio(depth_q, 4), rat::ratio(rng.gen_range(-4..=4), 2)));
    ProfileC::new(points).expect("sampled breakpoints are valid")
}

/// Levelled number with up to `max_terms` terms, rational exponents in
/// `[-6, 6]` and nonzero rational coefficients.
pub fn levelled<R: Rng>(rng: &mut R, max_terms: usize) -> LevelledNumber<BigRational> {
    let k = rng.gen_range(0..=max_terms);
    let mut seen = BTreeSet::new();
    let mut terms = Vec::new();
    while terms.len() < k {
        let g = rational(rng, 6, 3);
        if seen.insert(g.clone()) {
            terms.push((Level::new(g), nonzero_rational(rng, 9, 4)));
        }
    }
    LevelledNumber::from_terms(terms)
}

/// Well-formed spectrum built directly (not via decomposition), so
/// synthesis/decomposition roundtrips are tested from both ends.
pub fn spectrum<R: Rng>(rng: &mut R, max_terms: usize) -> Spectrum<BigRational> {
    let k = rng.gen_range(0..=max_terms);
    let mut levels: BTreeSet<BigRational> = BTreeSet::new();
    while levels.len() < k {
        levels.insert(rational(rng, 6, 3));
    }
    Spectrum::from_entries(
        levels
            .into_iter()
            .map(|g| (nonzero_rational(rng, 9, 4), Level::new(g))),
    )
    .expect("levels are strictly increasing by construction")
}

fn admissible_coefficient<R: Rng>(rng: &mut R) -> f64 {
    let mag = rng.gen_range(0.1..=(PI - 0.1));
    if rng.gen::<bool>() {
        mag
    } else {
        -mag
    }
}

/// A pair of profiles meeting the convergence-experiment admissibility
/// floor: at most five support points each, points on the tenth grid
/// (so pairwise gaps are at least 1/10), coefficient magnitudes in
/// `[0.1, pi - 0.1]`, depths at most 3, and a divergence that is either
/// a top gap of at least 0.1 or a support difference of at least 0.05
/// at a shared prefix depth.
pub fn admissible_pair<R: Rng>(rng: &mut R) -> (ProfileF, ProfileF) {
    let div = rng.gen_range(1..=10i64); // divergence depth in tenths
    let same_top = rng.gen_range(0..5) != 0;
    let top1 = rng.gen_range(0.0..TAU);
    let top2 = if same_top {
        top1
    } else {
        loop {
            let t = rng.gen_range(0.0..TAU);
            let mut gap = (t - top1).abs();
            if gap > PI {
                gap = TAU - gap;
            }
            if gap >= 0.1 {
                break t;
            }
        }
    };

    // shared prefix strictly below the divergence depth
    let prefix_count = rng.gen_range(0..=2.min(div as usize - 1).min(2));
    let prefix: Vec<(i64, f64)> = pick_distinct(rng, div - 1, prefix_count)
        .into_iter()
        .map(|t| (t, admissible_coefficient(rng)))
        .collect();

    let mut s1: Vec<(i64, f64)> = prefix.clone();
    let mut s2: Vec<(i64, f64)> = prefix;
    if same_top {
        // force a clear divergence at `div`
        let c1 = admissible_coefficient(rng);
        s1.push((div, c1));
        if rng.gen::<bool>() {
            let c2 = loop {
                let c = admissible_coefficient(rng);
                if (c - c1).abs() >= 0.05 {
                    break c;
                }
            };
            s2.push((div, c2));
        } // else: absent from s2, a difference of |c1| >= 0.1
    }

    let build = |rng: &mut R, support: &[(i64, f64)], top: f64| -> ProfileF {
        let max_t = support.iter().map(|(t, _)| *t).max().unwrap_or(1);
        let depth_t = rng.gen_range(max_t..=30i64);
        ProfileF::new(
            rat::ratio(depth_t, 10),
            top,
            support.iter().map(|&(t, c)| (rat::ratio(t, 10), c)),
        )
        .expect("admissible profile is valid")
    };

    let extend = |rng: &mut R, support: &mut Vec<(i64, f64)>| {
        let mut used: BTreeSet<i64> = support.iter().map(|(t, _)| *t).collect();
        for _ in 0..rng.gen_range(0..=2usize) {
            if support.len() >= 5 {
                break;
            }
            let t = rng.gen_range(div..=30i64);
            if used.insert(t) {
                support.push((t, admissible_coefficient(rng)));
            }
        }
    };
    extend(rng, &mut s1);
    extend(rng, &mut s2);
    (build(rng, &s1, top1), build(rng, &s2, top2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::TreeProfile;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn generators_are_deterministic() {
        let mut a = ChaCha12Rng::seed_from_u64(7);
        let mut b = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..50 {
            assert_eq!(profile_d(&mut a, 4), profile_d(&mut b, 4));
            assert_eq!(levelled(&mut a, 8), levelled(&mut b, 8));
            assert_eq!(profile_c(&mut a, 4), profile_c(&mut b, 4));
        }
    }

    #[test]
    fn admissible_pairs_respect_floors() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..200 {
            let (p, q) = admissible_pair(&mut rng);
            assert_ne!(p, q);
            for profile in [&p, &q] {
                assert!(profile.depth() <= &rat::int(3));
                assert!(profile.support().count() <= 5);
                for (_, c) in profile.support() {
                    assert!(c.abs() >= 0.1 && c.abs() <= PI - 0.1);
                }
            }
            // the divergence is visible to the tree metric
            assert!(p.distance(&q) > BigRational::zero());
        }
    }

    #[test]
    fn sampled_profiles_have_interior_support() {
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for _ in 0..100 {
            let p = profile_d(&mut rng, 4);
            for (x, _) in p.support() {
                assert!(x < p.depth());
            }
        }
    }
}
