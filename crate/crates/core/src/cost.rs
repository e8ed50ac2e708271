//! Exact non-negative vertex costs.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, Zero};
use thiserror::Error;

/// A non-negative rational cost, always kept in lowest terms.
///
/// Arithmetic is exact. [`crate::WeightedTree`] checks at construction time
/// that the total cost of all vertices is representable, which bounds every
/// subset sum the solver and the oracle compute.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Cost(Ratio<u128>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CostParseError {
    #[error("empty cost token")]
    Empty,
    #[error("negative cost `{0}`")]
    Negative(String),
    #[error("malformed cost `{0}` (expected an integer or p/q)")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl Cost {
    pub const ZERO: Cost = Cost(Ratio::new_raw(0, 1));
    pub const ONE: Cost = Cost(Ratio::new_raw(1, 1));

    /// `numer / denom`, reduced. Panics if `denom == 0`.
    pub fn new(numer: u64, denom: u64) -> Self {
        assert!(denom != 0, "cost denominator must be non-zero");
        Cost(Ratio::new(numer as u128, denom as u128))
    }

    pub fn integer(value: u64) -> Self {
        Cost(Ratio::from_integer(value as u128))
    }

    pub fn numer(&self) -> u128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn checked_add(&self, other: &Cost) -> Option<Cost> {
        self.0.checked_add(&other.0).map(Cost)
    }

    pub fn checked_mul(&self, other: &Cost) -> Option<Cost> {
        self.0.checked_mul(&other.0).map(Cost)
    }

    pub fn as_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cost({self})")
    }
}

impl FromStr for Cost {
    type Err = CostParseError;

    /// Accepts `p` or `p/q` with decimal integers fitting in `u64`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(CostParseError::Empty);
        }
        if s.starts_with('-') {
            return Err(CostParseError::Negative(s.to_string()));
        }
        let malformed = || CostParseError::Malformed(s.to_string());
        let digits = |t: &str| -> Result<u64, CostParseError> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            t.parse::<u64>().map_err(|_| malformed())
        };
        match s.split_once('/') {
            None => Ok(Cost::integer(digits(s)?)),
            Some((p, q)) => {
                let (p, q) = (digits(p)?, digits(q)?);
                if q == 0 {
                    return Err(CostParseError::ZeroDenominator(s.to_string()));
                }
                Ok(Cost::new(p, q))
            }
        }
    }
}

/// `a / b + c / d` reduced, when everything stays within `u64`.
fn add_small(a: u64, b: u64, c: u64, d: u64) -> Option<Cost> {
    let (numer, denom) = if b == d {
        (a.checked_add(c)?, b)
    } else {
        let g = b.gcd(&d);
        let denom = (b / g).checked_mul(d)?;
        let numer = a.checked_mul(d / g)?.checked_add(c.checked_mul(b / g)?)?;
        (numer, denom)
    };
    let g = if denom == 1 { 1 } else { numer.gcd(&denom) };
    Some(Cost(Ratio::new_raw((numer / g) as u128, (denom / g) as u128)))
}

fn small(x: u128) -> Option<u64> {
    u64::try_from(x).ok()
}

impl Add for Cost {
    type Output = Cost;

    fn add(self, rhs: Cost) -> Cost {
        let fast = (|| {
            add_small(
                small(self.numer())?,
                small(self.denom())?,
                small(rhs.numer())?,
                small(rhs.denom())?,
            )
        })();
        fast.unwrap_or_else(|| Cost(self.0 + rhs.0))
    }
}

impl AddAssign for Cost {
    fn add_assign(&mut self, rhs: Cost) {
        *self = *self + rhs;
    }
}

impl Ord for Cost {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, c, d) = (self.numer(), self.denom(), other.numer(), other.denom());
        if b == d {
            return a.cmp(&c);
        }
        match (a.checked_mul(d), c.checked_mul(b)) {
            (Some(x), Some(y)) => x.cmp(&y),
            _ => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for Cost {
    type Output = Cost;

    fn mul(self, rhs: Cost) -> Cost {
        Cost(self.0 * rhs.0)
    }
}

impl Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::ZERO, |acc, c| acc + c)
    }
}

impl<'a> Sum<&'a Cost> for Cost {
    fn sum<I: Iterator<Item = &'a Cost>>(iter: I) -> Cost {
        iter.fold(Cost::ZERO, |acc, c| acc + *c)
    }
}

/// Sums `costs` over their common denominator, returning `None` if the scaled
/// total or the denominator overflows `u128`.
///
/// When this succeeds, any subset sum of `costs` can be formed with ordinary
/// `Ratio` addition without overflow: every intermediate numerator is at most
/// the scaled total.
pub(crate) fn checked_scaled_total(costs: &[Cost]) -> Option<(u128, u128)> {
    let mut lcm: u128 = 1;
    for c in costs {
        let d = c.denom();
        let g = lcm.gcd(&d);
        lcm = lcm.checked_mul(d / g)?;
    }
    let mut total: u128 = 0;
    for c in costs {
        let scaled = c.numer().checked_mul(lcm / c.denom())?;
        total = total.checked_add(scaled)?;
    }
    Some((total, lcm))
}
