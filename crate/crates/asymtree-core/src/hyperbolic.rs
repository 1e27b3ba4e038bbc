//! Distance kernels for the hyperbolic plane.
//!
//! The plane is realized as the open unit disk `|z| < 1` with distance
//!
//! ```text
//! d(z1, z2) = log((1 + A) / (1 - A)),   A = |(z1 - z2) / (z1 * conj(z2) - 1)|
//! ```
//!
//! so a point at hyperbolic distance `rho` from the origin sits at disk
//! radius `tanh(rho / 2)`. In polar coordinates `(rho, phi)` the same
//! distance comes from the hyperbolic law of cosines, which we evaluate
//! through the excess
//!
//! ```text
//! cosh d - 1 = 2 cos^2(dphi/2) sinh^2((rho1 - rho2)/2)
//!            + 2 sin^2(dphi/2) sinh^2((rho1 + rho2)/2)
//! ```
//!
//! Both terms are nonnegative, so there is no cancellation; for large
//! radii the two terms are combined by log-sum-exp instead of being
//! exponentiated, which keeps the evaluation exact in the leading digits
//! for `rho` up to `1e5` where a direct `exp` would overflow at ~710.
//!
//! At scale `N` (radii `N*R1`, `N*R2`, angular gap `exp(-N*Phi)`) the
//! rescaled distance approaches `max(|R1 - R2|, R1 + R2 - 2*Phi)`;
//! [`convergence_error`] measures the `O(1/N)` gap.

use std::f64::consts::{LN_2, PI, TAU};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HyperbolicError {
    #[error("point lies outside the open unit disk (|z|^2 = {modulus_sq})")]
    OutsideDisk { modulus_sq: f64 },
    #[error("coordinate must be finite, got {value}")]
    NonFinite { value: f64 },
    #[error("radial coordinate must be nonnegative, got {value}")]
    NegativeRadius { value: f64 },
    #[error("scale must satisfy n >= 1, got {value}")]
    BadScale { value: f64 },
}

/// A point of the plane in unit-disk coordinates, `re^2 + im^2 < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint {
    re: f64,
    im: f64,
}

impl DiskPoint {
    pub fn new(re: f64, im: f64) -> Result<Self, HyperbolicError> {
        for v in [re, im] {
            if !v.is_finite() {
                return Err(HyperbolicError::NonFinite { value: v });
            }
        }
        let m2 = re * re + im * im;
        if m2 >= 1.0 {
            return Err(HyperbolicError::OutsideDisk { modulus_sq: m2 });
        }
        Ok(Self { re, im })
    }

    pub fn origin() -> Self {
        Self { re: 0.0, im: 0.0 }
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }
}

/// A point in polar coordinates: `rho >= 0` is the hyperbolic distance
/// from the origin, `phi` is the polar angle normalized into `[0, 2pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    rho: f64,
    phi: f64,
}

impl PolarPoint {
    pub fn new(rho: f64, phi: f64) -> Result<Self, HyperbolicError> {
        if !rho.is_finite() {
            return Err(HyperbolicError::NonFinite { value: rho });
        }
        if rho < 0.0 {
            return Err(HyperbolicError::NegativeRadius { value: rho });
        }
        if !phi.is_finite() {
            return Err(HyperbolicError::NonFinite { value: phi });
        }
        Ok(Self {
            rho,
            phi: normalize_angle(phi),
        })
    }

    pub fn origin() -> Self {
        Self { rho: 0.0, phi: 0.0 }
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// True when both points name the same place, treating every angle
    /// at `rho = 0` as the origin.
    pub fn same_point(&self, other: &Self) -> bool {
        (self.rho == 0.0 && other.rho == 0.0) || (self.rho == other.rho && self.phi == other.phi)
    }
}

/// Parameters of a scale-`n` configuration: radii `n*r1`, `n*r2` and
/// angular gap `exp(-n * cap_phi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticParams {
    r1: f64,
    r2: f64,
    cap_phi: f64,
    n: f64,
}

impl AsymptoticParams {
    pub fn new(r1: f64, r2: f64, cap_phi: f64, n: f64) -> Result<Self, HyperbolicError> {
        for v in [r1, r2, cap_phi, n] {
            if !v.is_finite() {
                return Err(HyperbolicError::NonFinite { value: v });
            }
        }
        if r1 < 0.0 {
            return Err(HyperbolicError::NegativeRadius { value: r1 });
        }
        if r2 < 0.0 {
            return Err(HyperbolicError::NegativeRadius { value: r2 });
        }
        if cap_phi < 0.0 {
            return Err(HyperbolicError::NegativeRadius { value: cap_phi });
        }
        if n < 1.0 {
            return Err(HyperbolicError::BadScale { value: n });
        }
        Ok(Self { r1, r2, cap_phi, n })
    }
}

fn normalize_angle(phi: f64) -> f64 {
    let mut a = phi.rem_euclid(TAU);
    if a >= TAU {
        a = 0.0; // rem_euclid of a tiny negative can round up to TAU
    }
    a
}

/// Distance between two disk points.
///
/// Evaluated as `2 ln(1 + A) - ln(1 - A^2)` with the exact identity
/// `1 - A^2 = (1 - |z1|^2)(1 - |z2|^2) / |z1 conj(z2) - 1|^2`, which
/// avoids the catastrophic `1 - A` cancellation near the boundary.
///
/// ```
/// use asymtree_core::hyperbolic::{disk_distance, DiskPoint};
/// let o = DiskPoint::origin();
/// let z = DiskPoint::new(0.5, 0.0).unwrap();
/// assert!((disk_distance(o, z) - 3.0_f64.ln()).abs() < 1e-15);
/// ```
pub fn disk_distance(z1: DiskPoint, z2: DiskPoint) -> f64 {
    if z1 == z2 {
        return 0.0;
    }
    let dx = z1.re - z2.re;
    let dy = z1.im - z2.im;
    let num2 = dx * dx + dy * dy;
    // z1 * conj(z2) - 1, fused so the cancellation near |z| -> 1 keeps
    // full precision.
    let u = z1.re.mul_add(z2.re, z1.im.mul_add(z2.im, -1.0));
    let v = z1.im.mul_add(z2.re, -(z1.re * z2.im));
    let den2 = u * u + v * v;
    let p1 = (-z1.re).mul_add(z1.re, 1.0) - z1.im * z1.im;
    let p2 = (-z2.re).mul_add(z2.re, 1.0) - z2.im * z2.im;
    let a = (num2 / den2).sqrt();
    2.0 * a.ln_1p() - (p1 / den2 * p2).ln()
}

/// Disk coordinates of a polar point: radius `tanh(rho / 2)` along the
/// ray of angle `phi`. For `rho` beyond ~38 the radius saturates at the
/// largest `f64` below one.
pub fn polar_to_disk(p: PolarPoint) -> DiskPoint {
    let mut r = (0.5 * p.rho).tanh();
    if r >= 1.0 {
        r = 1.0_f64.next_down();
    }
    DiskPoint::new(r * p.phi.cos(), r * p.phi.sin())
        .expect("tanh radius is strictly inside the disk")
}

/// `ln(sinh x)` for `x >= 0` without overflow.
fn ln_sinh(x: f64) -> f64 {
    if x == 0.0 {
        f64::NEG_INFINITY
    } else if x <= 350.0 {
        x.sinh().ln()
    } else {
        x - LN_2 + (-(-2.0 * x).exp()).ln_1p()
    }
}

fn log_sum_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `arccosh(1 + u)` for `u >= 0`, stable at both ends.
fn acosh1p(u: f64) -> f64 {
    if u == 0.0 {
        0.0
    } else if u <= 1e8 {
        (u + (u * (u + 2.0)).sqrt()).ln_1p()
    } else {
        u.ln() + LN_2 + (1.0 / u).ln_1p()
    }
}

/// `arccosh(1 + u)` given `ln u`, for excesses too extreme for `f64`.
fn acosh1p_from_ln(ln_u: f64) -> f64 {
    if ln_u == f64::NEG_INFINITY {
        0.0
    } else if ln_u <= -35.0 {
        // arccosh(1 + u) = sqrt(2u) (1 - u/12 + ...)
        std::f64::consts::SQRT_2 * (0.5 * ln_u).exp()
    } else if ln_u <= 35.0 {
        acosh1p(ln_u.exp())
    } else {
        ln_u + LN_2 + (-ln_u).exp().ln_1p()
    }
}

/// Largest `rho1 + rho2` for which `sinh^2((rho1 + rho2) / 2)` is still
/// a normal `f64`; beyond it the kernel switches to the log-domain path.
const DIRECT_SUM_LIMIT: f64 = 700.0;

fn excess_distance(dr: f64, sum: f64, sin2_half: f64, cos2_half: f64) -> f64 {
    if sum <= DIRECT_SUM_LIMIT {
        let sd = (0.5 * dr).sinh();
        let ss = (0.5 * sum).sinh();
        let u = 2.0 * (cos2_half * sd * sd + sin2_half * ss * ss);
        acosh1p(u)
    } else {
        let radial = LN_2 + cos2_half.ln() + 2.0 * ln_sinh(0.5 * dr);
        let angular = LN_2 + sin2_half.ln() + 2.0 * ln_sinh(0.5 * sum);
        acosh1p_from_ln(log_sum_exp(radial, angular))
    }
}

/// Distance between two polar points.
///
/// Symmetric bit-for-bit, zero exactly when the points coincide (any
/// angle counts as the origin at `rho = 0`), and finite for radii up to
/// `1e5`: all exponentials of `rho1 +- rho2` live in the log domain on
/// the large-radius path.
///
/// ```
/// use asymtree_core::hyperbolic::{polar_distance, PolarPoint};
/// let a = PolarPoint::new(3.0, 0.7).unwrap();
/// let b = PolarPoint::new(1.0, 0.7).unwrap();
/// assert!((polar_distance(a, b) - 2.0).abs() < 1e-12);
/// ```
pub fn polar_distance(p1: PolarPoint, p2: PolarPoint) -> f64 {
    let dr = (p1.rho - p2.rho).abs();
    let sum = p1.rho + p2.rho;
    let mut gap = (p1.phi - p2.phi).abs();
    if gap > PI {
        gap = TAU - gap;
    }
    let half = 0.5 * gap;
    let s = half.sin();
    let c = half.cos();
    excess_distance(dr, sum, s * s, c * c)
}

/// [`polar_distance`] with the angular gap supplied as `ln |dphi|`.
///
/// This is the entry point for configurations whose gap `exp(-n*Phi)`
/// underflows `f64` (it does once `n*Phi > 745`); `f64::NEG_INFINITY`
/// means coincident angles. Gaps above `1e-8` are folded into `[0, pi]`
/// and handled exactly like the plain kernel.
pub fn polar_distance_log_gap(rho1: f64, rho2: f64, ln_gap: f64) -> f64 {
    debug_assert!(rho1 >= 0.0 && rho2 >= 0.0);
    let dr = (rho1 - rho2).abs();
    let sum = rho1 + rho2;
    if ln_gap > -18.0 {
        // The gap is representable with full accuracy; fold and reuse
        // the trigonometric path.
        let mut gap = ln_gap.exp().rem_euclid(TAU);
        if gap > PI {
            gap = TAU - gap;
        }
        let half = 0.5 * gap;
        let s = half.sin();
        let c = half.cos();
        return excess_distance(dr, sum, s * s, c * c);
    }
    // sin(gap/2) = gap/2 to beyond f64 precision here.
    let ln_s2 = 2.0 * (ln_gap - LN_2);
    let radial = LN_2 + 2.0 * ln_sinh(0.5 * dr);
    let angular = LN_2 + ln_s2 + 2.0 * ln_sinh(0.5 * sum);
    acosh1p_from_ln(log_sum_exp(radial, angular))
}

/// `inv_n * polar_distance(p1, p2)` for `inv_n` in `(0, 1]`.
pub fn scaled_distance(p1: PolarPoint, p2: PolarPoint, inv_n: f64) -> f64 {
    assert!(
        inv_n > 0.0 && inv_n <= 1.0,
        "inv_n must lie in (0, 1], got {inv_n}"
    );
    inv_n * polar_distance(p1, p2)
}

/// Large-scale limit of the rescaled distance:
/// `max(|r1 - r2|, r1 + r2 - 2 cap_phi)`. Always `>= |r1 - r2| >= 0`.
pub fn tree_limit_estimate(r1: f64, r2: f64, cap_phi: f64) -> f64 {
    (r1 - r2).abs().max(r1 + r2 - 2.0 * cap_phi)
}

/// Gap between the rescaled distance of the realized configuration
/// `x1 = (n*r1, 0)`, `x2 = (n*r2, exp(-n*cap_phi) mod 2pi)` and its
/// limit value. Decays like `O(1/n)`.
pub fn convergence_error(params: &AsymptoticParams) -> f64 {
    let AsymptoticParams { r1, r2, cap_phi, n } = *params;
    let d = polar_distance_log_gap(n * r1, n * r2, -n * cap_phi);
    (d / n - tree_limit_estimate(r1, r2, cap_phi)).abs()
}
