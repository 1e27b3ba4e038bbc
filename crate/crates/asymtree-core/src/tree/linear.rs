//! Continuous piecewise-linear profiles.

use num_rational::BigRational;
use num_traits::Zero;

use super::{TreeError, TreeProfile};
use crate::rat;

/// A continuous piecewise-linear function on `[0, l]` with `f(0) = 0`,
/// stored as its breakpoints. Values are exact rationals, so separation
/// (earliest disagreement of the two functions) and restriction
/// (truncation with an interpolated terminal value) stay exact.
///
/// Breakpoint lists are canonical: an interior point lying on the line
/// through its neighbors is removed at construction, which makes
/// structural equality agree with equality of functions.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileC {
    // invariant: first point (0, 0), x strictly increasing, no interior
    // point collinear with its neighbors
    points: Vec<(BigRational, BigRational)>,
}

fn collinear(
    p: &(BigRational, BigRational),
    q: &(BigRational, BigRational),
    r: &(BigRational, BigRational),
) -> bool {
    (&q.1 - &p.1) * (&r.0 - &q.0) == (&r.1 - &q.1) * (&q.0 - &p.0)
}

impl ProfileC {
    pub fn new(points: Vec<(BigRational, BigRational)>) -> Result<Self, TreeError> {
        if points.is_empty() {
            return Err(TreeError::BadBreakpoints("empty breakpoint list".into()));
        }
        if points[0].0 != BigRational::zero() || points[0].1 != BigRational::zero() {
            return Err(TreeError::BadBreakpoints(
                "first breakpoint must be (0, 0)".into(),
            ));
        }
        for window in points.windows(2) {
            if window[1].0 <= window[0].0 {
                return Err(TreeError::BadBreakpoints(format!(
                    "breakpoints must strictly increase, got {} then {}",
                    rat::fmt(&window[0].0),
                    rat::fmt(&window[1].0)
                )));
            }
        }
        let mut canonical: Vec<(BigRational, BigRational)> = Vec::with_capacity(points.len());
        for point in points {
            while canonical.len() >= 2
                && collinear(
                    &canonical[canonical.len() - 2],
                    &canonical[canonical.len() - 1],
                    &point,
                )
            {
                canonical.pop();
            }
            canonical.push(point);
        }
        Ok(Self { points: canonical })
    }

    /// The depth-zero profile.
    pub fn basepoint() -> Self {
        Self {
            points: vec![(BigRational::zero(), BigRational::zero())],
        }
    }

    pub fn breakpoints(&self) -> &[(BigRational, BigRational)] {
        &self.points
    }

    /// Exact interpolated value at `x` in `[0, depth]`.
    pub fn value_at(&self, x: &BigRational) -> BigRational {
        debug_assert!(x >= &BigRational::zero() && x <= self.depth());
        match self.points.binary_search_by(|(px, _)| px.cmp(x)) {
            Ok(i) => self.points[i].1.clone(),
            Err(i) => {
                // x lies strictly inside (points[i-1].0, points[i].0)
                let (x0, v0) = &self.points[i - 1];
                let (x1, v1) = &self.points[i];
                v0 + (v1 - v0) * (x - x0) / (x1 - x0)
            }
        }
    }
}

impl TreeProfile for ProfileC {
    fn depth(&self) -> &BigRational {
        &self.points.last().expect("never empty").0
    }

    fn separation(&self, other: &Self) -> BigRational {
        let cap = self.depth().clone().min(other.depth().clone());
        // Every kink of either function inside (0, cap] plus cap itself;
        // between consecutive grid points both functions are linear, so
        // agreement at the two ends means agreement on the segment.
        let mut grid: Vec<&BigRational> = self
            .points
            .iter()
            .chain(other.points.iter())
            .map(|(x, _)| x)
            .filter(|x| **x > BigRational::zero() && **x <= cap)
            .collect();
        grid.push(&cap);
        grid.sort();
        grid.dedup();
        let mut agreed_up_to = BigRational::zero();
        for x in grid {
            if self.value_at(x) != other.value_at(x) {
                return agreed_up_to;
            }
            agreed_up_to = x.clone();
        }
        cap
    }

    fn restrict(&self, s: &BigRational) -> Result<Self, TreeError> {
        if s < &BigRational::zero() || s > self.depth() {
            return Err(TreeError::RestrictOutOfRange {
                s: rat::fmt(s),
                depth: rat::fmt(self.depth()),
            });
        }
        let mut points: Vec<(BigRational, BigRational)> =
            self.points.iter().filter(|(x, _)| x < s).cloned().collect();
        points.push((s.clone(), self.value_at(s)));
        Self::new(points)
    }
}
