//! Realizing tree profiles as hyperbolic points at a finite scale.
//!
//! A circle-topped profile `(l, top, {g -> c})` realizes at scale `n`
//! as the polar point
//!
//! ```text
//! rho = n * l,    phi = top + sum_g c_g * exp(-n * g)   (mod 2pi)
//! ```
//!
//! As `n` grows, `polar_distance / n` between two realized points
//! approaches the tree distance between the profiles, with an `O(1/n)`
//! gap; [`pair_error`] measures it and [`subcone_witness`] tabulates it
//! over a configuration and a scale ladder.
//!
//! The perturbations `c * exp(-n*g)` sink below `f64` resolution long
//! before the interesting scales (`exp(-400 * g)` is subnormal for
//! `g > 1.86`), so a [`Realization`] carries the angle both collapsed
//! to `f64` (for display) and as its exact term list. The hyperbolic
//! side of the comparison subtracts the term lists numerically and
//! hands `ln |phi1 - phi2|` to the log-domain kernel; the tree side
//! uses only [`TreeProfile::distance`]. Neither side consults the
//! other, so the convergence being measured is end-to-end.

use std::f64::consts::{PI, TAU};

use num_rational::BigRational;
use thiserror::Error;

use crate::hyperbolic::{polar_distance_log_gap, PolarPoint};
use crate::rat;
use crate::tree::{ProfileF, TreeProfile};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorrespondError {
    #[error("scale must be a finite value >= 1, got {0}")]
    BadScale(f64),
    #[error("support coefficient {value} at depth {depth} must lie in (-pi, pi) and be nonzero")]
    CoefficientOutOfRange { depth: String, value: f64 },
    #[error("a configuration needs at least two profiles, got {0}")]
    TooFewProfiles(usize),
    #[error("scales must be nonempty, strictly increasing, and >= 1")]
    BadScales,
}

/// The realized angle `top + sum c_g exp(-n g)`, kept as its terms so
/// that differences of realized angles survive any scale.
#[derive(Debug, Clone, PartialEq)]
pub struct RealizedAngle {
    top: f64,
    terms: Vec<(BigRational, f64)>, // ascending depth
}

impl RealizedAngle {
    pub fn top(&self) -> f64 {
        self.top
    }

    pub fn terms(&self) -> &[(BigRational, f64)] {
        &self.terms
    }

    /// The angle as a plain `f64` in `[0, 2pi)`. Perturbations below
    /// the resolution of `top` vanish here; that is unavoidable and is
    /// why distance computations use [`RealizedAngle::ln_gap`] instead.
    pub fn collapsed(&self, n: f64) -> f64 {
        let mut phi = self.top;
        for (g, c) in &self.terms {
            phi += c * (-n * rat::to_f64(g)).exp();
        }
        let mut a = phi.rem_euclid(TAU);
        if a >= TAU {
            a = 0.0;
        }
        a
    }

    /// `ln |phi_self - phi_other|` at scale `n`, `-inf` for identical
    /// angles. The leading exponential is factored out before summing,
    /// so the result is finite wherever the true gap is nonzero even
    /// when the gap itself underflows `f64`.
    pub fn ln_gap(&self, other: &Self, n: f64) -> f64 {
        let mut deltas: Vec<(&BigRational, f64)> = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take_left = match (self.terms.get(i), other.terms.get(j)) {
                (Some((ga, _)), Some((gb, _))) => {
                    if ga == gb {
                        let dc = self.terms[i].1 - other.terms[j].1;
                        if dc != 0.0 {
                            deltas.push((ga, dc));
                        }
                        i += 1;
                        j += 1;
                        continue;
                    }
                    ga < gb
                }
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => unreachable!(),
            };
            if take_left {
                deltas.push((&self.terms[i].0, self.terms[i].1));
                i += 1;
            } else {
                deltas.push((&other.terms[j].0, -other.terms[j].1));
                j += 1;
            }
        }
        let dtop = self.top - other.top;
        if dtop != 0.0 {
            // The gap is dominated by the order-one top difference.
            let mut gap = dtop;
            for (g, dc) in &deltas {
                gap += dc * (-n * rat::to_f64(g)).exp();
            }
            let mut folded = gap.abs().rem_euclid(TAU);
            if folded > PI {
                folded = TAU - folded;
            }
            if folded == 0.0 {
                return f64::NEG_INFINITY;
            }
            return folded.ln();
        }
        let Some(&(lead, _)) = deltas.first() else {
            return f64::NEG_INFINITY;
        };
        let lead_depth = rat::to_f64(lead);
        let mut scaled = 0.0;
        for (g, dc) in &deltas {
            scaled += dc * (-n * (rat::to_f64(g) - lead_depth)).exp();
        }
        if scaled == 0.0 {
            return f64::NEG_INFINITY;
        }
        -n * lead_depth + scaled.abs().ln()
    }
}

/// A profile placed in the hyperbolic plane at scale `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    point: PolarPoint,
    scale: f64,
    source: ProfileF,
    angle: RealizedAngle,
}

impl Realization {
    /// The realized polar point; `point().rho()` equals `n * depth`
    /// exactly (up to the `f64` image of the rational depth).
    pub fn point(&self) -> PolarPoint {
        self.point
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn source(&self) -> &ProfileF {
        &self.source
    }

    pub fn angle(&self) -> &RealizedAngle {
        &self.angle
    }
}

fn check_scale(n: f64) -> Result<(), CorrespondError> {
    if !n.is_finite() || n < 1.0 {
        return Err(CorrespondError::BadScale(n));
    }
    Ok(())
}

/// Places `p` at scale `n`. Support coefficients must lie in
/// `(-pi, pi) \ {0}` so the realized perturbations cannot alias across
/// the circle.
pub fn realize_at_scale(p: &ProfileF, n: f64) -> Result<Realization, CorrespondError> {
    check_scale(n)?;
    for (g, c) in p.support() {
        if c.abs() >= PI || *c == 0.0 {
            return Err(CorrespondError::CoefficientOutOfRange {
                depth: rat::fmt(g),
                value: *c,
            });
        }
    }
    let angle = RealizedAngle {
        top: p.top(),
        terms: p.support().map(|(g, c)| (g.clone(), *c)).collect(),
    };
    let rho = n * rat::to_f64(p.depth());
    let point =
        PolarPoint::new(rho, angle.collapsed(n)).map_err(|_| CorrespondError::BadScale(n))?;
    Ok(Realization {
        point,
        scale: n,
        source: p.clone(),
        angle,
    })
}

/// One measured cell of a convergence experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    /// Indices of the two profiles within their configuration.
    pub pair: (usize, usize),
    pub scale: f64,
    /// Exact tree distance between the profiles.
    pub tree_delta: BigRational,
    /// `polar_distance(realized pair) / n`.
    pub hyper_scaled: f64,
    /// `|hyper_scaled - tree_delta|`.
    pub error: f64,
}

fn pair_error_indexed(
    pair: (usize, usize),
    p1: &ProfileF,
    p2: &ProfileF,
    n: f64,
) -> Result<ConvergenceRow, CorrespondError> {
    let r1 = realize_at_scale(p1, n)?;
    let r2 = realize_at_scale(p2, n)?;
    let tree_delta = p1.distance(p2);
    let ln_gap = r1.angle.ln_gap(&r2.angle, n);
    let d = polar_distance_log_gap(r1.point.rho(), r2.point.rho(), ln_gap);
    let hyper_scaled = d / n;
    let error = (hyper_scaled - rat::to_f64(&tree_delta)).abs();
    Ok(ConvergenceRow {
        pair,
        scale: n,
        tree_delta,
        hyper_scaled,
        error,
    })
}

/// Realizes both profiles at scale `n` and compares the rescaled
/// hyperbolic distance with the exact tree distance.
pub fn pair_error(p1: &ProfileF, p2: &ProfileF, n: f64) -> Result<ConvergenceRow, CorrespondError> {
    pair_error_indexed((0, 1), p1, p2, n)
}

/// Runs [`pair_error`] for every unordered pair of the configuration at
/// every scale. Rows are ordered by (pair index, scale) regardless of
/// how they are computed.
pub fn subcone_witness(
    config: &[ProfileF],
    scales: &[f64],
) -> Result<Vec<ConvergenceRow>, CorrespondError> {
    if config.len() < 2 {
        return Err(CorrespondError::TooFewProfiles(config.len()));
    }
    if scales.is_empty() || scales.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CorrespondError::BadScales);
    }
    for &n in scales {
        check_scale(n).map_err(|_| CorrespondError::BadScales)?;
    }
    let mut rows = Vec::with_capacity(config.len() * (config.len() - 1) / 2 * scales.len());
    for i in 0..config.len() {
        for j in (i + 1)..config.len() {
            for &n in scales {
                rows.push(pair_error_indexed((i, j), &config[i], &config[j], n)?);
            }
        }
    }
    Ok(rows)
}

/// The bundled four-profile demonstration configuration: a prefix pair,
/// an interior divergence, and a pair of distinct base angles.
pub fn demo_profiles() -> Vec<ProfileF> {
    vec![
        ProfileF::new(rat::int(1), 1.5, [(rat::ratio(1, 2), 0.7)]).expect("valid demo profile"),
        ProfileF::new(
            rat::int(2),
            1.5,
            [(rat::ratio(1, 2), 0.7), (rat::ratio(5, 4), -1.2)],
        )
        .expect("valid demo profile"),
        ProfileF::new(rat::int(2), 1.5, [(rat::ratio(1, 2), -0.7)]).expect("valid demo profile"),
        ProfileF::new(rat::ratio(3, 2), 4.0, [(rat::ratio(3, 4), 0.3)])
            .expect("valid demo profile"),
    ]
}

/// Default scale ladder used by the experiments.
pub const DEFAULT_SCALES: [f64; 5] = [25.0, 50.0, 100.0, 200.0, 400.0];
