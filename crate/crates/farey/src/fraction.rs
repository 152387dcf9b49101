use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{FareyError, Result};

/// An irreducible rational in [0, 1]: gcd(n, d) = 1 and 0 <= n <= d.
///
/// Components are machine words; all arithmetic on fractions is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    n: u64,
    d: u64,
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl Fraction {
    pub const ZERO: Fraction = Fraction { n: 0, d: 1 };
    pub const ONE: Fraction = Fraction { n: 1, d: 1 };

    pub fn new(n: u64, d: u64) -> Result<Fraction> {
        if d == 0 {
            return Err(FareyError::InvalidFraction { n, d, reason: "zero denominator" });
        }
        if n > d {
            return Err(FareyError::InvalidFraction { n, d, reason: "greater than one" });
        }
        if gcd(n, d) != 1 {
            return Err(FareyError::InvalidFraction { n, d, reason: "not in lowest terms" });
        }
        Ok(Fraction { n, d })
    }

    /// Skips validation; the caller guarantees the invariants hold.
    pub(crate) const fn new_unchecked(n: u64, d: u64) -> Fraction {
        Fraction { n, d }
    }

    pub fn numerator(&self) -> u64 {
        self.n
    }

    pub fn denominator(&self) -> u64 {
        self.d
    }

    pub fn to_f64(&self) -> f64 {
        self.n as f64 / self.d as f64
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Fraction) -> Ordering {
        // u64 cross products fit in u128
        let lhs = self.n as u128 * other.d as u128;
        let rhs = other.n as u128 * self.d as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Fraction) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.n, self.d)
    }
}

impl FromStr for Fraction {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<Fraction> {
        let (n, d) = s
            .split_once('/')
            .ok_or_else(|| FareyError::Parse(format!("expected N/D, got {:?}", s)))?;
        let n: u64 = n
            .trim()
            .parse()
            .map_err(|_| FareyError::Parse(format!("bad numerator in {:?}", s)))?;
        let d: u64 = d
            .trim()
            .parse()
            .map_err(|_| FareyError::Parse(format!("bad denominator in {:?}", s)))?;
        Fraction::new(n, d)
    }
}

/// Mediant of two neighbors: (a.n + b.n) / (a.d + b.d).
///
/// For Farey neighbors the result is automatically irreducible; a reducible
/// result is rejected rather than silently reduced, because it proves the
/// inputs were not neighbors.
pub fn mediant(a: &Fraction, b: &Fraction) -> Result<Fraction> {
    if a >= b {
        return Err(FareyError::InvalidFraction {
            n: a.n,
            d: a.d,
            reason: "mediant arguments out of order",
        });
    }
    let n = a
        .n
        .checked_add(b.n)
        .ok_or(FareyError::Overflow { context: "mediant numerator" })?;
    let d = a
        .d
        .checked_add(b.d)
        .ok_or(FareyError::Overflow { context: "mediant denominator" })?;
    if gcd(n, d) != 1 {
        return Err(FareyError::NonCoprimeMediant { n, d });
    }
    Ok(Fraction { n, d })
}
