//! Brute-force reference implementations, kept deliberately naive and
//! code-independent from the primary paths (own gcd, own comparator) so that
//! equivalence tests actually compare two routes.

use crate::error::{FareyError, Result};
use crate::fraction::Fraction;

/// Enumeration caps for the naive paths.
#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    pub max_order: u64,
    pub max_n: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_order: 5_000, max_n: 50_000_000 }
    }
}

// Binary gcd; the primary path uses the Euclidean form.
fn gcd_binary(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn cmp_pairs(a: &(u64, u64), b: &(u64, u64)) -> std::cmp::Ordering {
    (a.0 as u128 * b.1 as u128).cmp(&(b.0 as u128 * a.1 as u128))
}

fn enumerate_sorted(m: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for d in 1..=m {
        for n in 0..=d {
            if gcd_binary(n, d) == 1 {
                out.push((n, d));
            }
        }
    }
    out.sort_by(cmp_pairs);
    out
}

/// All irreducible n/d with 0 <= n <= d <= m, sorted by value.
pub fn naive_farey(m: u64, cfg: &OracleConfig) -> Result<Vec<Fraction>> {
    if m == 0 {
        return Err(FareyError::InvalidSequence { reason: "order must be positive".into() });
    }
    if m > cfg.max_order {
        return Err(FareyError::OrderCapExceeded { order: m, cap: cfg.max_order });
    }
    enumerate_sorted(m).into_iter().map(|(n, d)| Fraction::new(n, d)).collect()
}

/// Countdown value of f in the order-m sequence, found by rescanning larger
/// and larger sequences until the successor of f changes.
pub fn naive_s(f: &Fraction, m: u64, cfg: &OracleConfig) -> Result<u64> {
    if *f == Fraction::ONE {
        return Err(FareyError::NoInitialS { n: 1, d: 1 });
    }
    let base = enumerate_sorted(m);
    let key = (f.numerator(), f.denominator());
    let pos = base
        .iter()
        .position(|p| *p == key)
        .ok_or(FareyError::NotInSequence { n: key.0, d: key.1, order: m })?;
    let successor = base[pos + 1];
    for t in 1.. {
        if m + t > cfg.max_order {
            return Err(FareyError::OrderCapExceeded { order: m + t, cap: cfg.max_order });
        }
        let grown = enumerate_sorted(m + t);
        let pos = grown.iter().position(|p| *p == key).unwrap();
        if grown[pos + 1] != successor {
            return Ok(t);
        }
    }
    unreachable!()
}

/// Batched form of [`naive_s`]: one successor-change scan resolves every
/// non-terminal fraction of the order-m sequence. Returned in sequence order.
pub fn naive_s_all(m: u64, cfg: &OracleConfig) -> Result<Vec<(Fraction, u64)>> {
    if m == 0 {
        return Err(FareyError::InvalidSequence { reason: "order must be positive".into() });
    }
    if 2 * m > cfg.max_order {
        return Err(FareyError::OrderCapExceeded { order: 2 * m, cap: cfg.max_order });
    }
    let base = enumerate_sorted(m);
    let count = base.len() - 1; // 1/1 has no successor
    let mut successor: Vec<(u64, u64)> = base.windows(2).map(|w| w[1]).collect();
    let mut resolved: Vec<u64> = vec![0; count];
    let mut remaining = count;
    for t in 1..=m {
        if remaining == 0 {
            break;
        }
        let grown = enumerate_sorted(m + t);
        // base is a subsequence of grown; walk both in lockstep
        let mut j = 0usize;
        for i in 0..count {
            while grown[j] != base[i] {
                j += 1;
            }
            if resolved[i] == 0 && grown[j + 1] != successor[i] {
                resolved[i] = t;
                remaining -= 1;
            }
            successor[i] = grown[j + 1];
        }
    }
    debug_assert_eq!(remaining, 0, "every countdown is at most the denominator");
    Ok(base[..count]
        .iter()
        .zip(resolved)
        .map(|(&(n, d), s)| (Fraction::new_unchecked(n, d), s))
        .collect())
}

/// Ground-truth primality by trial division.
pub fn trial_division_is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut p = 3u64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 2;
    }
    true
}

/// Twin pairs (p, p+2) with p+2 <= limit, by direct scanning.
pub fn naive_twins(limit: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 3u64;
    while p + 2 <= limit {
        if trial_division_is_prime(p) && trial_division_is_prime(p + 2) {
            out.push((p, p + 2));
        }
        p += 2;
    }
    out
}

/// Totient by direct coprimality counting.
pub fn naive_totient(k: u64) -> u64 {
    (1..=k).filter(|&j| gcd_binary(j, k) == 1).count() as u64
}
