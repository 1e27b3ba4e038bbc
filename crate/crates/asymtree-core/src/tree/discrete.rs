//! Finite-support profiles: the plain kind and the circle-topped kind.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::ops::Bound;

use num_rational::BigRational;
use num_traits::Zero;

use super::{TreeError, TreeProfile};
use crate::rat;

fn validate_depth(depth: &BigRational) -> Result<(), TreeError> {
    if depth < &BigRational::zero() {
        return Err(TreeError::NegativeDepth(rat::fmt(depth)));
    }
    Ok(())
}

fn validate_support<I: IntoIterator<Item = (BigRational, f64)>>(
    depth: &BigRational,
    support: I,
) -> Result<BTreeMap<BigRational, f64>, TreeError> {
    let mut map = BTreeMap::new();
    for (point, value) in support {
        if point <= BigRational::zero() || &point > depth {
            return Err(TreeError::SupportOutOfRange(rat::fmt(&point)));
        }
        if !value.is_finite() || value == 0.0 {
            return Err(TreeError::BadSupportValue(rat::fmt(&point)));
        }
        if map.insert(point.clone(), value).is_some() {
            return Err(TreeError::SupportOutOfRange(format!(
                "{} (duplicate)",
                rat::fmt(&point)
            )));
        }
    }
    Ok(map)
}

/// First depth in `(0, cap]` where the two support maps disagree, or
/// `cap` when they agree there. A point present in exactly one map is a
/// disagreement (the other profile is zero there).
fn support_separation(
    a: &BTreeMap<BigRational, f64>,
    b: &BTreeMap<BigRational, f64>,
    cap: &BigRational,
) -> BigRational {
    let range = (Bound::Unbounded, Bound::Included(cap));
    let mut points: Vec<&BigRational> = a.range::<BigRational, _>(range).map(|(k, _)| k).collect();
    points.extend(b.range::<BigRational, _>(range).map(|(k, _)| k));
    points.sort();
    points.dedup();
    for point in points {
        if a.get(point) != b.get(point) {
            return point.clone();
        }
    }
    cap.clone()
}

fn restricted_support(
    support: &BTreeMap<BigRational, f64>,
    s: &BigRational,
) -> BTreeMap<BigRational, f64> {
    support
        .range::<BigRational, _>((Bound::Unbounded, Bound::Included(s)))
        .map(|(k, v)| (k.clone(), *v))
        .collect()
}

/// A depth `l >= 0` with finitely many nonzero values on `(0, l]`.
///
/// ```
/// use asymtree_core::tree::{ProfileD, TreeProfile};
/// use asymtree_core::rat::int;
///
/// let a = ProfileD::new(int(2), [(int(1), 1.0)]).unwrap();
/// let b = ProfileD::new(int(2), [(int(1), 2.0)]).unwrap();
/// assert_eq!(a.separation(&b), int(1));
/// assert_eq!(a.distance(&b), int(2));
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileD {
    depth: BigRational,
    support: BTreeMap<BigRational, f64>,
}

impl ProfileD {
    pub fn new<I: IntoIterator<Item = (BigRational, f64)>>(
        depth: BigRational,
        support: I,
    ) -> Result<Self, TreeError> {
        validate_depth(&depth)?;
        let support = validate_support(&depth, support)?;
        Ok(Self { depth, support })
    }

    /// The unique depth-zero profile.
    pub fn basepoint() -> Self {
        Self {
            depth: BigRational::zero(),
            support: BTreeMap::new(),
        }
    }

    pub fn support(&self) -> impl Iterator<Item = (&BigRational, &f64)> {
        self.support.iter()
    }

    pub fn value_at(&self, point: &BigRational) -> f64 {
        self.support.get(point).copied().unwrap_or(0.0)
    }
}

impl TreeProfile for ProfileD {
    fn depth(&self) -> &BigRational {
        &self.depth
    }

    fn separation(&self, other: &Self) -> BigRational {
        let cap = self.depth.clone().min(other.depth.clone());
        support_separation(&self.support, &other.support, &cap)
    }

    fn restrict(&self, s: &BigRational) -> Result<Self, TreeError> {
        if s < &BigRational::zero() || s > &self.depth {
            return Err(TreeError::RestrictOutOfRange {
                s: rat::fmt(s),
                depth: rat::fmt(&self.depth),
            });
        }
        Ok(Self {
            depth: s.clone(),
            support: restricted_support(&self.support, s),
        })
    }
}

/// A finite-support profile with a circle-valued angle at depth zero:
/// profiles with different base angles already separate at depth 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileF {
    depth: BigRational,
    top: f64,
    support: BTreeMap<BigRational, f64>,
}

impl ProfileF {
    pub fn new<I: IntoIterator<Item = (BigRational, f64)>>(
        depth: BigRational,
        top: f64,
        support: I,
    ) -> Result<Self, TreeError> {
        validate_depth(&depth)?;
        if !top.is_finite() {
            return Err(TreeError::NonFiniteAngle(top));
        }
        let support = validate_support(&depth, support)?;
        let mut t = top.rem_euclid(TAU);
        if t >= TAU {
            t = 0.0;
        }
        Ok(Self {
            depth,
            top: t,
            support,
        })
    }

    /// The depth-zero profile with the given base angle.
    pub fn basepoint(top: f64) -> Self {
        Self::new(BigRational::zero(), top, []).expect("depth 0 with empty support is valid")
    }

    /// Base angle, normalized into `[0, 2pi)`.
    pub fn top(&self) -> f64 {
        self.top
    }

    pub fn support(&self) -> impl Iterator<Item = (&BigRational, &f64)> {
        self.support.iter()
    }

    pub fn value_at(&self, point: &BigRational) -> f64 {
        self.support.get(point).copied().unwrap_or(0.0)
    }
}

impl TreeProfile for ProfileF {
    fn depth(&self) -> &BigRational {
        &self.depth
    }

    fn separation(&self, other: &Self) -> BigRational {
        if self.top != other.top {
            return BigRational::zero();
        }
        let cap = self.depth.clone().min(other.depth.clone());
        support_separation(&self.support, &other.support, &cap)
    }

    fn restrict(&self, s: &BigRational) -> Result<Self, TreeError> {
        if s < &BigRational::zero() || s > &self.depth {
            return Err(TreeError::RestrictOutOfRange {
                s: rat::fmt(s),
                depth: rat::fmt(&self.depth),
            });
        }
        Ok(Self {
            depth: s.clone(),
            top: self.top,
            support: restricted_support(&self.support, s),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, ratio};

    fn d(depth: (i64, i64), support: &[((i64, i64), f64)]) -> ProfileD {
        ProfileD::new(
            ratio(depth.0, depth.1),
            support.iter().map(|&((n, m), v)| (ratio(n, m), v)),
        )
        .unwrap()
    }

    #[test]
    fn separation_examples() {
        // identical profiles separate at their full depth
        let a = d((2, 1), &[((1, 1), 1.0)]);
        assert_eq!(a.separation(&a), int(2));
        // agreement on the common domain caps at the shallower depth
        let b = d((3, 1), &[((1, 1), 1.0), ((5, 2), 4.0)]);
        assert_eq!(a.separation(&b), int(2));
        assert_eq!(a.distance(&b), int(1));
        // first disagreement wins
        let c = d((2, 1), &[((1, 1), 2.0)]);
        assert_eq!(a.separation(&c), int(1));
        assert_eq!(a.distance(&c), int(2));
        // symmetric
        assert_eq!(b.separation(&a), a.separation(&b));
    }

    #[test]
    fn restrict_and_branch_point() {
        let a = d((2, 1), &[((1, 1), 1.0)]);
        let c = d((2, 1), &[((1, 1), 2.0)]);
        assert_eq!(a.restrict(&int(2)).unwrap(), a);
        let bp = a.branch_point(&c);
        // the support point at the cut depth is retained
        assert_eq!(bp, d((1, 1), &[((1, 1), 1.0)]));
        let lhs = a.distance(&c);
        assert_eq!(lhs, a.distance(&bp) + bp.distance(&c));
        assert!(a.restrict(&int(3)).is_err());
        assert!(a.restrict(&int(-1)).is_err());
        // restrict to zero gives the basepoint
        assert_eq!(a.restrict(&int(0)).unwrap(), ProfileD::basepoint());
    }

    #[test]
    fn boundary_support_is_metrically_identified() {
        // profiles that differ only at their terminal depth are at
        // distance zero by the cap convention
        let p = d((1, 1), &[((1, 1), 1.0)]);
        let q = d((1, 1), &[((1, 1), 2.0)]);
        assert_ne!(p, q);
        assert!(p.distance(&q).is_zero());
    }

    #[test]
    fn geodesic_walks_the_tripod() {
        let a = d((2, 1), &[((1, 1), 1.0)]);
        let b = d((2, 1), &[((1, 1), 2.0)]);
        let length = a.distance(&b);
        assert_eq!(a.geodesic(&b, &int(0)).unwrap(), a);
        assert_eq!(a.geodesic(&b, &length).unwrap(), b);
        assert_eq!(a.geodesic(&b, &int(1)).unwrap(), a.branch_point(&b));
        assert!(a.geodesic(&b, &int(3)).is_err());
        let mid = a.geodesic(&b, &ratio(1, 2)).unwrap();
        assert_eq!(a.distance(&mid), ratio(1, 2));
        assert_eq!(mid.distance(&b), ratio(3, 2));
    }

    #[test]
    fn f_profiles_split_on_top() {
        let p = ProfileF::new(int(2), 1.0, [(int(1), 0.5)]).unwrap();
        let q = ProfileF::new(int(2), 2.0, [(int(1), 0.5)]).unwrap();
        assert_eq!(p.separation(&q), int(0));
        assert_eq!(p.distance(&q), int(4));
        let r = ProfileF::new(int(3), 1.0, [(int(1), 0.5)]).unwrap();
        assert_eq!(p.separation(&r), int(2));
        assert_eq!(p.distance(&r), int(1));
        // restriction keeps the top
        assert_eq!(p.restrict(&int(0)).unwrap(), ProfileF::basepoint(1.0));
    }

    #[test]
    fn f_top_is_normalized() {
        let p = ProfileF::new(int(1), TAU, []).unwrap();
        assert_eq!(p.top(), 0.0);
        let q = ProfileF::new(int(1), -1.0, []).unwrap();
        assert!(q.top() >= 0.0 && q.top() < TAU);
    }

    #[test]
    fn constructor_rejections() {
        assert!(ProfileD::new(int(-1), []).is_err());
        assert!(ProfileD::new(int(1), [(int(0), 1.0)]).is_err());
        assert!(ProfileD::new(int(1), [(int(2), 1.0)]).is_err());
        assert!(ProfileD::new(int(1), [(ratio(1, 2), 0.0)]).is_err());
        assert!(ProfileD::new(int(1), [(ratio(1, 2), f64::NAN)]).is_err());
        assert!(ProfileF::new(int(1), f64::INFINITY, []).is_err());
    }
}
