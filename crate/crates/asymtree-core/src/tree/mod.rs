//! Exact separation-metric spaces of profiles.
//!
//! A profile is a function on a depth interval `[0, l]` together with
//! its depth `l` (an exact rational). Two profiles separate at the
//! smallest depth where they disagree, capped at the shallower depth
//! `c = min(l1, l2)`; their distance is
//!
//! ```text
//! d(a, b) = (l1 - c) + (l2 - c)
//! ```
//!
//! computed in rational arithmetic, so the metric axioms, the four-point
//! condition, and geodesic identities hold exactly rather than up to a
//! tolerance. Three spaces are provided:
//!
//! * [`ProfileD`] — finitely many nonzero values on `(0, l]`;
//! * [`ProfileC`] — continuous piecewise-linear profiles with `f(0) = 0`;
//! * [`ProfileF`] — finite-support profiles with a circle-valued angle
//!   at depth zero.
//!
//! A profile whose last support point sits exactly at its depth is at
//! distance zero from the one without that point: the spaces identify
//! such boundary values (restriction keeps them, so prefixes compose
//! exactly), and `d(a, b) = 0` means metric equality rather than
//! structural equality in that one boundary case.

use num_rational::BigRational;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rat;

mod discrete;
mod linear;

pub use discrete::{ProfileD, ProfileF};
pub use linear::ProfileC;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TreeError {
    #[error("depth must be nonnegative, got {0}")]
    NegativeDepth(String),
    #[error("support point {0} lies outside (0, depth]")]
    SupportOutOfRange(String),
    #[error("support value at {0} must be finite and nonzero")]
    BadSupportValue(String),
    #[error("invalid breakpoints: {0}")]
    BadBreakpoints(String),
    #[error("angle must be finite, got {0}")]
    NonFiniteAngle(f64),
    #[error("restriction depth {s} outside [0, {depth}]")]
    RestrictOutOfRange { s: String, depth: String },
    #[error("geodesic parameter {t} outside [0, {length}]")]
    GeodesicOutOfRange { t: String, length: String },
    #[error("profiles live in different spaces: {left} vs {right}")]
    KindMismatch {
        left: &'static str,
        right: &'static str,
    },
}

/// Common interface of the three profile spaces. `separation` and
/// `restrict` are space-specific; everything else is derived from them.
pub trait TreeProfile: Clone + PartialEq + Sized {
    fn depth(&self) -> &BigRational;

    /// Moment of separation: the smallest depth at which the two
    /// profiles differ, capped at `min(l1, l2)`; equals the cap when
    /// one profile extends the other.
    fn separation(&self, other: &Self) -> BigRational;

    /// The same profile cut to depth `s <= depth`.
    fn restrict(&self, s: &BigRational) -> Result<Self, TreeError>;

    /// `(l1 - c) + (l2 - c)` with `c` the separation. Exact.
    fn distance(&self, other: &Self) -> BigRational {
        let c = self.separation(other);
        (self.depth() - &c) + (other.depth() - &c)
    }

    /// Median of the tripod: the common prefix at the separation depth.
    /// Satisfies `d(a, b) = d(a, m) + d(m, b)` exactly.
    fn branch_point(&self, other: &Self) -> Self {
        let c = self.separation(other);
        self.restrict(&c)
            .expect("separation never exceeds the depth")
    }

    /// Point at arc length `t` along the unique geodesic from `self`
    /// to `other`: walk up the first leg by restriction, then down the
    /// second. Endpoints are returned as-is, so `geodesic(a, b, 0) = a`
    /// and `geodesic(a, b, length) = b` structurally even when one
    /// profile is a boundary-identified prefix of the other.
    fn geodesic(&self, other: &Self, t: &BigRational) -> Result<Self, TreeError> {
        let c = self.separation(other);
        let first_leg = self.depth() - &c;
        let length = &first_leg + (other.depth() - &c);
        if t < &BigRational::zero() || t > &length {
            return Err(TreeError::GeodesicOutOfRange {
                t: rat::fmt(t),
                length: rat::fmt(&length),
            });
        }
        if t.is_zero() {
            Ok(self.clone())
        } else if t == &length {
            Ok(other.clone())
        } else if t <= &first_leg {
            self.restrict(&(self.depth() - t))
        } else {
            other.restrict(&(other.depth() - (&length - t)))
        }
    }
}

/// Tree-metric four-point condition, checked in exact arithmetic:
///
/// ```text
/// d(w,x) + d(y,z) <= max(d(w,y) + d(x,z), d(w,z) + d(x,y))
/// ```
pub fn four_point_check<P: TreeProfile>(w: &P, x: &P, y: &P, z: &P) -> bool {
    let a = w.distance(x) + y.distance(z);
    let b = w.distance(y) + x.distance(z);
    let c = w.distance(z) + x.distance(y);
    a <= b.max(c)
}

/// A profile of any of the three kinds, as read from or written to
/// JSON. The wire form is
///
/// ```json
/// {"kind":"D","depth":"3/2","support":[["1/2",0.7]]}
/// {"kind":"F","depth":"2","top":1.5,"support":[["1",-0.4]]}
/// {"kind":"C","depth":"2","support":[["0","0"],["1","1/2"],["2","0"]]}
/// ```
///
/// Depths and support points are exact rationals. Values are JSON
/// numbers for `D` and `F`; for `C` they are rational strings because
/// restriction interpolates and plain doubles are not closed under
/// that.
#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    C(ProfileC),
    D(ProfileD),
    F(ProfileF),
}

impl Profile {
    pub fn kind(&self) -> &'static str {
        match self {
            Profile::C(_) => "C",
            Profile::D(_) => "D",
            Profile::F(_) => "F",
        }
    }

    pub fn depth(&self) -> &BigRational {
        match self {
            Profile::C(p) => p.depth(),
            Profile::D(p) => p.depth(),
            Profile::F(p) => p.depth(),
        }
    }

    pub fn separation(&self, other: &Self) -> Result<BigRational, TreeError> {
        match (self, other) {
            (Profile::C(a), Profile::C(b)) => Ok(a.separation(b)),
            (Profile::D(a), Profile::D(b)) => Ok(a.separation(b)),
            (Profile::F(a), Profile::F(b)) => Ok(a.separation(b)),
            _ => Err(TreeError::KindMismatch {
                left: self.kind(),
                right: other.kind(),
            }),
        }
    }

    pub fn distance(&self, other: &Self) -> Result<BigRational, TreeError> {
        match (self, other) {
            (Profile::C(a), Profile::C(b)) => Ok(a.distance(b)),
            (Profile::D(a), Profile::D(b)) => Ok(a.distance(b)),
            (Profile::F(a), Profile::F(b)) => Ok(a.distance(b)),
            _ => Err(TreeError::KindMismatch {
                left: self.kind(),
                right: other.kind(),
            }),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("profile serialization is infallible")
    }
}

impl From<ProfileC> for Profile {
    fn from(p: ProfileC) -> Self {
        Profile::C(p)
    }
}
impl From<ProfileD> for Profile {
    fn from(p: ProfileD) -> Self {
        Profile::D(p)
    }
}
impl From<ProfileF> for Profile {
    fn from(p: ProfileF) -> Self {
        Profile::F(p)
    }
}

#[derive(Serialize, Deserialize)]
struct RawProfile {
    kind: String,
    depth: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    top: Option<f64>,
    #[serde(default)]
    support: Vec<(String, RawValue)>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawValue {
    Num(f64),
    Exact(String),
}

impl Serialize for Profile {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let raw = match self {
            Profile::D(p) => RawProfile {
                kind: "D".into(),
                depth: rat::fmt(p.depth()),
                top: None,
                support: p
                    .support()
                    .map(|(x, v)| (rat::fmt(x), RawValue::Num(*v)))
                    .collect(),
            },
            Profile::F(p) => RawProfile {
                kind: "F".into(),
                depth: rat::fmt(p.depth()),
                top: Some(p.top()),
                support: p
                    .support()
                    .map(|(x, v)| (rat::fmt(x), RawValue::Num(*v)))
                    .collect(),
            },
            Profile::C(p) => RawProfile {
                kind: "C".into(),
                depth: rat::fmt(p.depth()),
                top: None,
                support: p
                    .breakpoints()
                    .iter()
                    .map(|(x, v)| (rat::fmt(x), RawValue::Exact(rat::fmt(v))))
                    .collect(),
            },
        };
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Profile {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawProfile::deserialize(deserializer)?;
        let depth = rat::parse(&raw.depth).map_err(D::Error::custom)?;
        let kind = raw.kind.as_str();
        if kind != "F" && raw.top.is_some() {
            return Err(D::Error::custom(format!(
                "field `top` is only valid for kind F, found kind {kind}"
            )));
        }
        match kind {
            "D" | "F" => {
                let mut support = Vec::with_capacity(raw.support.len());
                for (x, v) in &raw.support {
                    let point = rat::parse(x).map_err(D::Error::custom)?;
                    let value = match v {
                        RawValue::Num(n) => *n,
                        RawValue::Exact(_) => {
                            return Err(D::Error::custom(
                                "support values for kinds D and F must be numbers",
                            ))
                        }
                    };
                    support.push((point, value));
                }
                if kind == "D" {
                    ProfileD::new(depth, support)
                        .map(Profile::D)
                        .map_err(D::Error::custom)
                } else {
                    let top = raw
                        .top
                        .ok_or_else(|| D::Error::custom("kind F requires field `top`"))?;
                    ProfileF::new(depth, top, support)
                        .map(Profile::F)
                        .map_err(D::Error::custom)
                }
            }
            "C" => {
                let mut points = Vec::with_capacity(raw.support.len());
                for (x, v) in &raw.support {
                    let bx = rat::parse(x).map_err(D::Error::custom)?;
                    let bv = match v {
                        RawValue::Num(n) => rat::from_f64(*n).ok_or_else(|| {
                            D::Error::custom(format!("non-finite breakpoint value {n}"))
                        })?,
                        RawValue::Exact(s) => rat::parse(s).map_err(D::Error::custom)?,
                    };
                    points.push((bx, bv));
                }
                let profile = ProfileC::new(points).map_err(D::Error::custom)?;
                if profile.depth() != &depth {
                    return Err(D::Error::custom(format!(
                        "depth {} does not match last breakpoint {}",
                        rat::fmt(&depth),
                        rat::fmt(profile.depth())
                    )));
                }
                Ok(Profile::C(profile))
            }
            other => Err(D::Error::custom(format!(
                "unknown profile kind `{other}` (expected C, D, or F)"
            ))),
        }
    }
}
