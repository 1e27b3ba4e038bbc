//! Finite formal sums `c1*u^g1 + c2*u^g2 + ...` over exact rational
//! exponents.
//!
//! A [`LevelledNumber`] is the desk-scale stand-in for a number with
//! infinitesimal and infinite parts: `u` plays the role of a fixed
//! positive infinitesimal, so the term `c*u^g` is infinitesimal for
//! `g > 0`, finite for `g = 0`, and infinite for `g < 0`. Terms are kept
//! canonical (nonzero coefficients, one term per level), which makes
//! greedy leading-term extraction ([`LevelledNumber::decompose`]) and
//! its inverse ([`Spectrum::synthesize`]) exact mutual inverses.
//!
//! Magnitude classes are ordered by *decreasing* exponent: the class
//! `u^a` dominates `u^b` exactly when `a < b`. Iteration and spectra
//! always run from the dominant class down, i.e. in increasing `g`.
//!
//! Coefficients are generic: exact rationals give exact ring arithmetic
//! (used by every exactness test), `f64` coefficients serve the
//! tolerance-based hyperbolic experiments.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rat;

mod text;
pub use text::{parse_levelled, ParseError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LevelledError {
    #[error("zero has no magnitude class")]
    ZeroSimClass,
    #[error("not finite: contains the infinite class u^{exponent}")]
    NotFinite { exponent: String },
    #[error("spectrum levels must strictly increase in exponent (entry {index})")]
    NonMonotoneSpectrum { index: usize },
    #[error("spectrum coefficient is zero (entry {index})")]
    ZeroCoefficient { index: usize },
    #[error("circle tail must be strictly infinitesimal, found u^{exponent}")]
    TailNotInfinitesimal { exponent: String },
    #[error("angle must be finite, got {value}")]
    NonFiniteAngle { value: f64 },
}

/// Magnitude class of the symbol `u^g`, identified by its exact
/// rational exponent.
///
/// `Ord` follows the exponent, so a `BTreeMap` keyed by `Level` lists
/// classes from the most dominant (smallest `g`) to the least.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Level {
    g: BigRational,
}

impl Level {
    pub fn new(g: BigRational) -> Self {
        Self { g }
    }

    pub fn from_int(g: i64) -> Self {
        Self { g: rat::int(g) }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self {
            g: rat::ratio(n, d),
        }
    }

    pub fn exponent(&self) -> &BigRational {
        &self.g
    }

    /// `u^g` with `g > 0`: below every positive real.
    pub fn is_infinitesimal(&self) -> bool {
        self.g.is_positive()
    }

    /// `u^g` with `g < 0`: above every real.
    pub fn is_infinite(&self) -> bool {
        self.g.is_negative()
    }

    /// The class of finite, non-infinitesimal numbers (`g = 0`).
    pub fn is_finite_class(&self) -> bool {
        self.g.is_zero()
    }

    /// True when `self` has strictly larger magnitude than `other`
    /// (smaller exponent).
    pub fn dominates(&self, other: &Self) -> bool {
        self.g < other.g
    }
}

impl std::fmt::Display for Level {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", rat::fmt(&self.g))
    }
}

/// Anything usable as a coefficient: cloneable, comparable, signed ring
/// element. Exact rationals and `f64` both qualify.
pub trait Coefficient: Clone + PartialEq + Signed {}
impl<T: Clone + PartialEq + Signed> Coefficient for T {}

/// Canonical finite sum `sum c_i * u^{g_i}`: nonzero coefficients,
/// strictly increasing exponents, empty sum = zero.
///
/// ```
/// use asymtree_core::levelled::{Level, LevelledNumber};
/// use num_rational::BigRational;
/// use num_traits::One;
///
/// let one = BigRational::one();
/// let x = LevelledNumber::from_terms([
///     (Level::from_int(0), one.clone()),
///     (Level::from_int(1), one.clone()),
/// ]); // 1 + u
/// let y = LevelledNumber::from_terms([
///     (Level::from_int(0), one.clone()),
///     (Level::from_int(1), -one.clone()),
/// ]); // 1 - u
/// let product = &x * &y; // 1 - u^2
/// assert_eq!(product.coefficient_at(&Level::from_int(2)), -one);
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct LevelledNumber<C: Coefficient> {
    terms: BTreeMap<Level, C>,
}

impl<C: Coefficient> LevelledNumber<C> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single term `c * u^g`; a zero coefficient gives zero.
    pub fn term(c: C, level: Level) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(level, c);
        }
        Self { terms }
    }

    /// The constant one, `1 * u^0`.
    pub fn one() -> Self {
        Self::term(C::one(), Level::from_int(0))
    }

    /// Builds a canonical sum: duplicate levels are merged by addition
    /// and zero coefficients dropped.
    pub fn from_terms<I: IntoIterator<Item = (Level, C)>>(terms: I) -> Self {
        let mut map: BTreeMap<Level, C> = BTreeMap::new();
        for (level, c) in terms {
            if c.is_zero() {
                continue;
            }
            match map.remove(&level) {
                Some(prev) => {
                    let merged = prev + c;
                    if !merged.is_zero() {
                        map.insert(level, merged);
                    }
                }
                None => {
                    map.insert(level, c);
                }
            }
        }
        Self { terms: map }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the dominant class down (increasing exponent).
    pub fn iter(&self) -> impl Iterator<Item = (&Level, &C)> {
        self.terms.iter()
    }

    /// Coefficient at `level`, zero when absent. This is the spectrum
    /// function `f_x` evaluated pointwise.
    pub fn coefficient_at(&self, level: &Level) -> C {
        self.terms.get(level).cloned().unwrap_or_else(C::zero)
    }

    /// Dominant term, if any.
    pub fn leading(&self) -> Option<(&Level, &C)> {
        self.terms.iter().next()
    }

    /// Magnitude class of a nonzero number: the dominant level.
    pub fn sim_class(&self) -> Result<Level, LevelledError> {
        self.leading()
            .map(|(l, _)| l.clone())
            .ok_or(LevelledError::ZeroSimClass)
    }

    /// Greedy leading-term extraction: repeatedly take the dominant
    /// term, emit it, subtract. Terminates after `len()` steps and
    /// lists the spectrum in decreasing magnitude.
    pub fn decompose(&self) -> Spectrum<C> {
        let mut rest = self.terms.clone();
        let mut entries = Vec::with_capacity(rest.len());
        while let Some((level, c)) = rest.pop_first() {
            entries.push(SpectrumEntry {
                coefficient: c,
                level,
            });
        }
        Spectrum { entries }
    }

    /// Coefficient of the finite class, defined only when no infinite
    /// class is present.
    pub fn standard_part(&self) -> Result<C, LevelledError> {
        if let Some((level, _)) = self.leading() {
            if level.is_infinite() {
                return Err(LevelledError::NotFinite {
                    exponent: rat::fmt(level.exponent()),
                });
            }
        }
        Ok(self.coefficient_at(&Level::from_int(0)))
    }

    /// Total order: the sign of `self - other` is the sign of the
    /// dominant coefficient of the difference. Restricted to constants
    /// this is the usual order on the coefficient ring.
    pub fn compare(&self, other: &Self) -> Ordering {
        let diff = self - other;
        match diff.leading() {
            None => Ordering::Equal,
            Some((_, c)) => {
                if c.is_positive() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    pub fn scalar_mul(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_terms(
            self.terms
                .iter()
                .map(|(l, v)| (l.clone(), c.clone() * v.clone())),
        )
    }

    /// True when every level is finite or infinitesimal (`g >= 0`).
    pub fn is_finite(&self) -> bool {
        self.leading().is_none_or(|(l, _)| !l.is_infinite())
    }

    /// True when every level is strictly infinitesimal (`g > 0`).
    pub fn is_strictly_infinitesimal(&self) -> bool {
        self.leading().is_none_or(|(l, _)| l.is_infinitesimal())
    }
}

impl<C: Coefficient> Neg for &LevelledNumber<C> {
    type Output = LevelledNumber<C>;
    fn neg(self) -> LevelledNumber<C> {
        LevelledNumber {
            terms: self
                .terms
                .iter()
                .map(|(l, c)| (l.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<C: Coefficient> Add for &LevelledNumber<C> {
    type Output = LevelledNumber<C>;
    fn add(self, rhs: Self) -> LevelledNumber<C> {
        LevelledNumber::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(l, c)| (l.clone(), c.clone())),
        )
    }
}

impl<C: Coefficient> Sub for &LevelledNumber<C> {
    type Output = LevelledNumber<C>;
    fn sub(self, rhs: Self) -> LevelledNumber<C> {
        self + &(-rhs)
    }
}

impl<C: Coefficient> Mul for &LevelledNumber<C> {
    type Output = LevelledNumber<C>;
    fn mul(self, rhs: Self) -> LevelledNumber<C> {
        let mut acc: BTreeMap<Level, C> = BTreeMap::new();
        for (la, ca) in &self.terms {
            for (lb, cb) in &rhs.terms {
                let level = Level::new(la.exponent() + lb.exponent());
                let prod = ca.clone() * cb.clone();
                match acc.remove(&level) {
                    Some(prev) => {
                        let merged = prev + prod;
                        if !merged.is_zero() {
                            acc.insert(level, merged);
                        }
                    }
                    None => {
                        if !prod.is_zero() {
                            acc.insert(level, prod);
                        }
                    }
                }
            }
        }
        LevelledNumber { terms: acc }
    }
}

/// One step of a decomposition: a nonzero coefficient at a level.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEntry<C> {
    pub coefficient: C,
    pub level: Level,
}

/// Output of [`LevelledNumber::decompose`]: entries in strictly
/// decreasing magnitude (strictly increasing exponent). The empty
/// spectrum represents zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<C: Coefficient> {
    entries: Vec<SpectrumEntry<C>>,
}

impl<C: Coefficient> Spectrum<C> {
    pub fn empty() -> Self {
        Self {
            entries: Vec::new(),
        }
    }

    /// Validates the spectrum shape: nonzero coefficients, strictly
    /// increasing exponents.
    pub fn from_entries<I: IntoIterator<Item = (C, Level)>>(
        entries: I,
    ) -> Result<Self, LevelledError> {
        let mut out: Vec<SpectrumEntry<C>> = Vec::new();
        for (index, (coefficient, level)) in entries.into_iter().enumerate() {
            if coefficient.is_zero() {
                return Err(LevelledError::ZeroCoefficient { index });
            }
            if let Some(last) = out.last() {
                if level.exponent() <= last.level.exponent() {
                    return Err(LevelledError::NonMonotoneSpectrum { index });
                }
            }
            out.push(SpectrumEntry { coefficient, level });
        }
        Ok(Self { entries: out })
    }

    /// Reassembles the unique number with this spectrum. Because the
    /// entries are canonical this is a total, exact inverse of
    /// [`LevelledNumber::decompose`].
    pub fn synthesize(&self) -> LevelledNumber<C> {
        LevelledNumber {
            terms: self
                .entries
                .iter()
                .map(|e| (e.level.clone(), e.coefficient.clone()))
                .collect(),
        }
    }

    pub fn entries(&self) -> &[SpectrumEntry<C>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A circle point with infinitesimal corrections: a base angle in
/// `[0, 2pi)` (the coefficient of the finite class, with `2pi`
/// identified with `0`) plus a strictly infinitesimal tail.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleLevelled<C: Coefficient> {
    top: f64,
    tail: LevelledNumber<C>,
}

impl<C: Coefficient> CircleLevelled<C> {
    pub fn new(top: f64, tail: LevelledNumber<C>) -> Result<Self, LevelledError> {
        if !top.is_finite() {
            return Err(LevelledError::NonFiniteAngle { value: top });
        }
        if !tail.is_strictly_infinitesimal() {
            let (level, _) = tail.leading().expect("nonempty when not infinitesimal");
            return Err(LevelledError::TailNotInfinitesimal {
                exponent: rat::fmt(level.exponent()),
            });
        }
        let mut t = top.rem_euclid(TAU);
        if t >= TAU {
            t = 0.0;
        }
        Ok(Self { top: t, tail })
    }

    pub fn top(&self) -> f64 {
        self.top
    }

    pub fn tail(&self) -> &LevelledNumber<C> {
        &self.tail
    }

    /// Splits into the normalized base angle and the spectrum of the
    /// infinitesimal tail.
    pub fn decompose(&self) -> (f64, Spectrum<C>) {
        (self.top, self.tail.decompose())
    }

    /// Inverse of [`CircleLevelled::decompose`].
    pub fn from_decomposition(top: f64, tail: &Spectrum<C>) -> Result<Self, LevelledError> {
        Self::new(top, tail.synthesize())
    }
}
