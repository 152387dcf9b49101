//! Prime and twin-prime sieves driven by the cycle sets: p is prime exactly
//! when p-1 lies in every unit-countdown residue set with denominator below
//! p, and the recursions extract successive primes as one plus the minimum
//! of a growing intersection.

use crate::cycles::{cycle_set_for_denominator, s_initial, ResidueClassSet};
use crate::error::{FareyError, Result};
use crate::fraction::{gcd, Fraction};

/// Default cap on candidate scans in the recursions.
pub const DEFAULT_SCAN_CAP: u64 = 1 << 26;

/// A twin pair (p, p+2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwinPair {
    pub p: u64,
    pub q: u64,
}

impl TwinPair {
    pub fn new(p: u64) -> TwinPair {
        TwinPair { p, q: p + 2 }
    }
}

/// Packed form of a ResidueClassSet. Every progression produced by the cycle
/// formula has min_element = modulus + residue (the k = 1 term), so the
/// modulus plus a residue bitmap reconstructs the set exactly; membership is
/// one bit probe. This keeps the memo table small when thousands of
/// denominators are in play.
#[derive(Debug, Clone)]
struct DenomSieve {
    modulus: u64,
    bits: Box<[u64]>,
}

impl DenomSieve {
    fn from_set(set: &ResidueClassSet) -> DenomSieve {
        let d = set.modulus();
        let mut bits = vec![0u64; (d as usize + 63) / 64].into_boxed_slice();
        for p in set.progressions() {
            assert_eq!(p.min_element(), p.modulus() + p.residue());
            bits[(p.residue() / 64) as usize] |= 1 << (p.residue() % 64);
        }
        DenomSieve { modulus: d, bits }
    }

    #[inline]
    fn contains(&self, x: u64) -> bool {
        let rho = x % self.modulus;
        let hit = self.bits[(rho / 64) as usize] >> (rho % 64) & 1 == 1;
        hit && x >= self.modulus + rho
    }
}

/// Lazily built memo of the c = 1 and c = 3 residue sets, keyed by
/// denominator. Memory is bounded by the largest denominator queried.
pub struct FareySieve {
    unit: Vec<Option<DenomSieve>>,
    third: Vec<Option<DenomSieve>>,
}

impl FareySieve {
    pub fn new() -> FareySieve {
        FareySieve { unit: Vec::new(), third: Vec::new() }
    }

    fn sieve(&mut self, d: u64, c: u64) -> &DenomSieve {
        let store = match c {
            1 => &mut self.unit,
            3 => &mut self.third,
            _ => unreachable!("only c = 1 and c = 3 are memoized"),
        };
        let idx = d as usize;
        if store.len() <= idx {
            store.resize(idx + 1, None);
        }
        if store[idx].is_none() {
            let set = cycle_set_for_denominator(d, c).expect("valid cycle parameters");
            store[idx] = Some(DenomSieve::from_set(&set));
        }
        store[idx].as_ref().unwrap()
    }

    /// p is prime iff p-1 lies in the unit set of every denominator below p.
    pub fn is_prime(&mut self, p: u64) -> bool {
        if p < 2 {
            return false;
        }
        (1..p).all(|d| self.sieve(d, 1).contains(p - 1))
    }

    /// p and p+2 are both prime iff p-1 additionally lies in the c = 3 set
    /// of every denominator in 3..p. Denominators 1 and 2 never carry s = 3
    /// (the countdown is bounded by the denominator) and their conditions
    /// are implied for odd prime p.
    pub fn is_lesser_twin(&mut self, p: u64) -> bool {
        if p < 3 {
            return false;
        }
        for d in 1..p {
            if !self.sieve(d, 1).contains(p - 1) {
                return false;
            }
            if d >= 3 && !self.sieve(d, 3).contains(p - 1) {
                return false;
            }
        }
        true
    }
}

impl Default for FareySieve {
    fn default() -> Self {
        FareySieve::new()
    }
}

/// One-shot membership form of the prime test.
pub fn is_prime_farey(p: u64) -> bool {
    FareySieve::new().is_prime(p)
}

/// One-shot form of the twin test.
pub fn is_lesser_twin_farey(p: u64) -> bool {
    FareySieve::new().is_lesser_twin(p)
}

/// The equivalent divisibility formulation: for every denominator d below p
/// there is a fraction whose initial countdown satisfies d | (p - s_f).
/// Kept separate from the membership route so the two can be compared.
pub fn is_prime_farey_divisibility(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    'outer: for d in 2..p {
        for n in 1..d {
            if gcd(n, d) == 1 {
                let s_f = s_initial(&Fraction::new_unchecked(n, d)).expect("created fraction");
                if (p - s_f) % d == 0 {
                    continue 'outer;
                }
            }
        }
        return false;
    }
    true
}

/// A growing family of residue-set predicates with a monotone scan floor;
/// membership is the conjunction over the family.
pub struct SieveAccumulator {
    predicates: Vec<DenomSieve>,
    floor: u64,
    scan_cap: u64,
}

impl SieveAccumulator {
    pub fn new(floor: u64, scan_cap: u64) -> SieveAccumulator {
        SieveAccumulator { predicates: Vec::new(), floor, scan_cap }
    }

    pub fn intersect(&mut self, set: &ResidueClassSet) {
        self.predicates.push(DenomSieve::from_set(set));
    }

    pub fn floor(&self) -> u64 {
        self.floor
    }

    pub fn contains(&self, x: u64) -> bool {
        self.predicates.iter().all(|p| p.contains(x))
    }

    /// Smallest member at or above the floor; advances the floor to it.
    pub fn min(&mut self) -> Result<u64> {
        let mut x = self.floor;
        while !self.contains(x) {
            x += 1;
            if x > self.scan_cap {
                return Err(FareyError::ScanCapExceeded { cap: self.scan_cap });
            }
        }
        self.floor = x;
        Ok(x)
    }
}

/// The prime recursion: seed with the unit set of denominator 2 and d = 3;
/// each emitted d contributes its unit set to the intersection and the next
/// prime is one plus the new minimum. Emits the odd primes in order.
pub fn prime_stream(count: usize) -> Result<Vec<u64>> {
    prime_stream_with_cap(count, DEFAULT_SCAN_CAP)
}

pub fn prime_stream_with_cap(count: usize, scan_cap: u64) -> Result<Vec<u64>> {
    if count == 0 {
        return Err(FareyError::InvalidSequence { reason: "count must be positive".into() });
    }
    let mut acc = SieveAccumulator::new(2, scan_cap);
    acc.intersect(&cycle_set_for_denominator(2, 1)?);
    let mut out = vec![3u64];
    let mut last = 3u64;
    while out.len() < count {
        acc.intersect(&cycle_set_for_denominator(last, 1)?);
        let min = acc.min()?;
        last = min + 1;
        out.push(last);
    }
    Ok(out)
}

/// Strict cross-check mode: a candidate q is emitted iff q-1 lies in the
/// unit set of every denominator below q, i.e. the full sieve test rather
/// than only the previously emitted denominators.
pub fn prime_stream_strict(count: usize) -> Result<Vec<u64>> {
    prime_stream_strict_with_cap(count, DEFAULT_SCAN_CAP)
}

pub fn prime_stream_strict_with_cap(count: usize, scan_cap: u64) -> Result<Vec<u64>> {
    if count == 0 {
        return Err(FareyError::InvalidSequence { reason: "count must be positive".into() });
    }
    let mut sieve = FareySieve::new();
    let mut out = vec![3u64];
    let mut candidate = 4u64;
    while out.len() < count {
        if candidate > scan_cap {
            return Err(FareyError::ScanCapExceeded { cap: scan_cap });
        }
        if sieve.is_prime(candidate) {
            out.push(candidate);
        }
        candidate += 1;
    }
    Ok(out)
}

/// The incremental twin recursion: seed with both sets of denominator 3 and
/// the pair (3, 5); each new lesser prime q = 1 + min extends the
/// intersection with every denominator up to q before the next extraction.
pub fn twin_stream(count: usize) -> Result<Vec<TwinPair>> {
    twin_stream_with_cap(count, DEFAULT_SCAN_CAP)
}

pub fn twin_stream_with_cap(count: usize, scan_cap: u64) -> Result<Vec<TwinPair>> {
    if count == 0 {
        return Err(FareyError::InvalidSequence { reason: "count must be positive".into() });
    }
    let mut acc = SieveAccumulator::new(1, scan_cap);
    acc.intersect(&cycle_set_for_denominator(3, 1)?);
    acc.intersect(&cycle_set_for_denominator(3, 3)?);
    let mut out = vec![TwinPair::new(3)];
    let mut d_prev = 3u64;
    while out.len() < count {
        let min = acc.min()?;
        let d_next = min + 1;
        for d in d_prev + 1..=d_next {
            acc.intersect(&cycle_set_for_denominator(d, 1)?);
            acc.intersect(&cycle_set_for_denominator(d, 3)?);
        }
        out.push(TwinPair::new(d_next));
        d_prev = d_next;
    }
    Ok(out)
}

fn intersect_sorted(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Replication of the twin generator built on truncated cycle sets: the
/// running list l starts as the intersection of the two denominator-3
/// truncations and is intersected with both truncated sets of every
/// denominator from the previous lesser prime up to the new one. Later
/// intersections test truncated membership directly instead of materializing
/// each list; the values are identical. A truncated set is only complete up
/// to modulus * k_max, so a minimum beyond the running horizon (or an empty
/// list) raises truncation exhaustion instead of risking a wrong pair.
pub fn twin_primes_report(count: usize, k_max: u64) -> Result<Vec<TwinPair>> {
    if count == 0 {
        return Err(FareyError::InvalidSequence { reason: "count must be positive".into() });
    }
    if k_max == 0 {
        return Err(FareyError::InvalidSequence { reason: "k_max must be positive".into() });
    }
    let mut pool = intersect_sorted(&crate::cycles::ems(3, 1, k_max)?, &crate::cycles::ems(3, 3, k_max)?);
    let mut horizon = 3u64.saturating_mul(k_max);
    let mut pairs = vec![TwinPair::new(3)];
    let mut p = 3u64;
    while pairs.len() < count {
        let min = match pool.first() {
            Some(&min) if min <= horizon => min,
            _ => {
                return Err(FareyError::TruncationExhausted { k_max, pairs_found: pairs.len() })
            }
        };
        let q = min + 1;
        for j in p + 1..=q {
            let unit = cycle_set_for_denominator(j, 1)?;
            let third = cycle_set_for_denominator(j, 3)?;
            pool.retain(|&v| unit.contains_truncated(k_max, v) && third.contains_truncated(k_max, v));
            horizon = horizon.min(j.saturating_mul(k_max));
        }
        pairs.push(TwinPair::new(q));
        p = q;
    }
    Ok(pairs)
}

/// Stable report rendering, one line per pair.
pub fn format_report(pairs: &[TwinPair]) -> String {
    let mut out = String::new();
    for (i, pair) in pairs.iter().enumerate() {
        out.push_str(&format!("Twin Pair #{}: {{{}, {}}}\n", i + 1, pair.p, pair.q));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{naive_twins, trial_division_is_prime};

    #[test]
    fn prime_membership_examples() {
        assert!(is_prime_farey(7));
        assert!(!is_prime_farey(9));
        assert!(is_prime_farey(2));
        assert!(!is_prime_farey(1));
        assert!(!is_prime_farey(0));
    }

    #[test]
    fn membership_matches_trial_division() {
        let mut sieve = FareySieve::new();
        for p in 2..=600u64 {
            assert_eq!(sieve.is_prime(p), trial_division_is_prime(p), "p={}", p);
        }
    }

    #[test]
    fn divisibility_route_agrees() {
        let mut sieve = FareySieve::new();
        for p in 2..=400u64 {
            assert_eq!(sieve.is_prime(p), is_prime_farey_divisibility(p), "p={}", p);
        }
    }

    #[test]
    fn twin_membership_examples() {
        assert!(is_lesser_twin_farey(5));
        assert!(!is_lesser_twin_farey(7));
        assert!(is_lesser_twin_farey(3));
        assert!(!is_lesser_twin_farey(2));
    }

    #[test]
    fn twin_membership_matches_oracle() {
        let mut sieve = FareySieve::new();
        for p in 3..=600u64 {
            let want = trial_division_is_prime(p) && trial_division_is_prime(p + 2);
            assert_eq!(sieve.is_lesser_twin(p), want, "p={}", p);
        }
    }

    #[test]
    fn prime_stream_examples() {
        assert_eq!(prime_stream(1).unwrap(), vec![3]);
        assert_eq!(prime_stream(4).unwrap(), vec![3, 5, 7, 11]);
        let got = prime_stream(40).unwrap();
        let want: Vec<u64> = (3..).filter(|&n| trial_division_is_prime(n)).take(40).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn strict_mode_agrees() {
        assert_eq!(prime_stream_strict(25).unwrap(), prime_stream(25).unwrap());
    }

    #[test]
    fn twin_stream_examples() {
        let got = twin_stream(4).unwrap();
        assert_eq!(
            got.iter().map(|t| (t.p, t.q)).collect::<Vec<_>>(),
            vec![(3, 5), (5, 7), (11, 13), (17, 19)]
        );
        assert_eq!(twin_stream(1).unwrap(), vec![TwinPair::new(3)]);
        let got = twin_stream(20).unwrap();
        let want = naive_twins(10_000);
        for (a, (p, q)) in got.iter().zip(want) {
            assert_eq!((a.p, a.q), (p, q));
        }
    }

    #[test]
    fn report_matches_stream_when_budget_allows() {
        assert_eq!(twin_primes_report(3, 50).unwrap(), twin_stream(3).unwrap());
        assert_eq!(twin_primes_report(10, 10_000).unwrap(), twin_stream(10).unwrap());
    }

    /// The same generator with every truncated list materialized; pins the
    /// retain-based intersection to the literal list form.
    fn report_fully_materialized(count: usize, k_max: u64) -> Result<Vec<TwinPair>> {
        let mut pool = intersect_sorted(
            &crate::cycles::ems(3, 1, k_max)?,
            &crate::cycles::ems(3, 3, k_max)?,
        );
        let mut horizon = 3 * k_max;
        let mut pairs = vec![TwinPair::new(3)];
        let mut p = 3u64;
        while pairs.len() < count {
            let min = match pool.first() {
                Some(&min) if min <= horizon => min,
                _ => return Err(FareyError::TruncationExhausted { k_max, pairs_found: pairs.len() }),
            };
            let q = min + 1;
            for j in p + 1..=q {
                pool = intersect_sorted(&pool, &crate::cycles::ems(j, 1, k_max)?);
                pool = intersect_sorted(&pool, &crate::cycles::ems(j, 3, k_max)?);
                horizon = horizon.min(j * k_max);
            }
            pairs.push(TwinPair::new(q));
            p = q;
        }
        Ok(pairs)
    }

    #[test]
    fn report_agrees_with_materialized_lists() {
        for k_max in [1u64, 3, 20, 200] {
            for count in [1usize, 2, 5, 12] {
                let fast = twin_primes_report(count, k_max);
                let slow = report_fully_materialized(count, k_max);
                match (fast, slow) {
                    (Ok(a), Ok(b)) => assert_eq!(a, b, "count={} k={}", count, k_max),
                    (Err(FareyError::TruncationExhausted { pairs_found: a, .. }),
                     Err(FareyError::TruncationExhausted { pairs_found: b, .. })) => {
                        assert_eq!(a, b, "count={} k={}", count, k_max)
                    }
                    (fast, slow) => panic!("routes diverge: {:?} vs {:?}", fast, slow),
                }
            }
        }
    }

    #[test]
    fn report_truncation_is_loud() {
        assert_eq!(
            twin_primes_report(1, 1).unwrap(),
            vec![TwinPair::new(3)],
            "the seed pair needs no extraction"
        );
        assert!(matches!(
            twin_primes_report(2, 1),
            Err(FareyError::TruncationExhausted { k_max: 1, pairs_found: 1 })
        ));
        // a budget that covers a few pairs but not fifty
        match twin_primes_report(50, 10) {
            Err(FareyError::TruncationExhausted { .. }) => {}
            other => panic!("expected exhaustion, got {:?}", other),
        }
    }

    #[test]
    fn report_rendering_is_stable() {
        let pairs = twin_stream(2).unwrap();
        assert_eq!(format_report(&pairs), "Twin Pair #1: {3, 5}\nTwin Pair #2: {5, 7}\n");
    }

    #[test]
    fn scan_cap_is_enforced() {
        assert!(matches!(
            prime_stream_with_cap(10, 5),
            Err(FareyError::ScanCapExceeded { cap: 5 })
        ));
    }

    #[test]
    fn accumulator_floor_is_monotone() {
        let mut acc = SieveAccumulator::new(1, 1 << 20);
        acc.intersect(&cycle_set_for_denominator(3, 1).unwrap());
        let a = acc.min().unwrap();
        acc.intersect(&cycle_set_for_denominator(5, 1).unwrap());
        let b = acc.min().unwrap();
        assert!(b >= a);
        assert_eq!(acc.floor(), b);
    }
}
