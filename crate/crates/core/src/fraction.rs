//! Exact non-negative rationals.
//!
//! Conditional probabilities, thresholds and the η/μ fitness values are all
//! ratios of small object counts. Keeping them exact means `p ≥ α` and
//! `p > β` never flip on a rounding error, and fitness equality tests used for
//! reduct verification are plain integer comparisons.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FractionError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse {0:?} as a non-negative decimal or ratio")]
    Parse(String),
    #[error("value {0:?} has too many digits")]
    Overflow(String),
}

/// A non-negative rational stored in lowest terms.
///
/// Because the representation is canonical, derived equality and hashing are
/// exact. Ordering cross-multiplies in 128-bit arithmetic.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Fraction {
    pub const ZERO: Fraction = Fraction { num: 0, den: 1 };
    pub const ONE: Fraction = Fraction { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self, FractionError> {
        if den == 0 {
            return Err(FractionError::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    /// Builds `num / den` for counts where `den > 0` is already known.
    pub(crate) fn ratio(num: usize, den: usize) -> Self {
        debug_assert!(den > 0);
        Self::reduced(num as u64, den as u64)
    }

    fn reduced(num: u64, den: u64) -> Self {
        if num == 0 {
            return Self::ZERO;
        }
        let g = gcd(num, den);
        Fraction {
            num: num / g,
            den: den / g,
        }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `self - other` as a float, exact up to the final division.
    pub fn diff_f64(&self, other: &Fraction) -> f64 {
        let lhs = self.num as i128 * other.den as i128;
        let rhs = other.num as i128 * self.den as i128;
        (lhs - rhs) as f64 / (self.den as i128 * other.den as i128) as f64
    }

    /// `max(0, self - other)`.
    pub fn saturating_sub(&self, other: &Fraction) -> Fraction {
        if *self <= *other {
            return Self::ZERO;
        }
        let num = self.num as u128 * other.den as u128 - other.num as u128 * self.den as u128;
        let den = self.den as u128 * other.den as u128;
        let g = {
            let (mut a, mut b) = (num, den);
            while b != 0 {
                let t = a % b;
                a = b;
                b = t;
            }
            a
        };
        Fraction {
            num: (num / g) as u64,
            den: (den / g) as u64,
        }
    }

    /// Parses `"0.6"`, `".25"`, `"1"` or `"3/5"` exactly.
    pub fn parse(text: &str) -> Result<Self, FractionError> {
        let s = text.trim();
        let bad = || FractionError::Parse(text.to_string());
        if let Some((n, d)) = s.split_once('/') {
            let n: u64 = n.trim().parse().map_err(|_| bad())?;
            let d: u64 = d.trim().parse().map_err(|_| bad())?;
            return Self::new(n, d);
        }
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int_part) || !all_digits(frac_part) {
            return Err(bad());
        }
        let frac_part = frac_part.trim_end_matches('0');
        if frac_part.len() > 18 {
            return Err(FractionError::Overflow(text.to_string()));
        }
        let den = 10u64.pow(frac_part.len() as u32);
        let int_val: u64 = if int_part.is_empty() {
            0
        } else {
            int_part.parse().map_err(|_| bad())?
        };
        let frac_val: u64 = if frac_part.is_empty() {
            0
        } else {
            frac_part.parse().map_err(|_| bad())?
        };
        let num = int_val
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac_val))
            .ok_or_else(|| FractionError::Overflow(text.to_string()))?;
        Self::new(num, den)
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Fraction {
    type Err = FractionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl serde::Serialize for Fraction {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
