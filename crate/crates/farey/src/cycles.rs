//! Cycle sets: for a fraction f with denominator d, the countdown s revisits
//! each value c in 1..=d periodically, with period d after the birth order.
//! The orders at which s equals c form an arithmetic progression; unions over
//! all fractions sharing a denominator form the residue-class sets that drive
//! the prime sieves.

use std::fmt;

use crate::error::{FareyError, Result};
use crate::fraction::{gcd, Fraction};
use crate::registry::CreationRegistry;

/// Cap on denominators for set construction; the progression count is the
/// totient of d.
pub const DENOMINATOR_CAP: u64 = 10_000_000;

/// Cap on materialized truncated-set elements.
pub const EMS_ELEMENT_CAP: u64 = 100_000_000;

/// Orders {m : m >= min_element, m = residue (mod modulus)}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progression {
    modulus: u64,
    residue: u64,
    min_element: u64,
}

impl Progression {
    pub fn new(modulus: u64, residue: u64, min_element: u64) -> Result<Progression> {
        if modulus == 0 || residue >= modulus {
            return Err(FareyError::InvalidSequence {
                reason: format!("residue {} invalid for modulus {}", residue, modulus),
            });
        }
        if min_element % modulus != residue || min_element < modulus {
            return Err(FareyError::InvalidSequence {
                reason: format!(
                    "min element {} inconsistent with residue {} (mod {})",
                    min_element, residue, modulus
                ),
            });
        }
        Ok(Progression { modulus, residue, min_element })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn min_element(&self) -> u64 {
        self.min_element
    }

    pub fn contains(&self, m: u64) -> bool {
        m >= self.min_element && m % self.modulus == self.residue
    }
}

impl fmt::Display for Progression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{m ≡ {} (mod {}), m ≥ {}}}", self.residue, self.modulus, self.min_element)
    }
}

/// Union of progressions sharing one modulus, with pairwise distinct
/// residues; stored sorted by residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueClassSet {
    modulus: u64,
    progressions: Vec<Progression>,
}

impl ResidueClassSet {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn progressions(&self) -> &[Progression] {
        &self.progressions
    }

    pub fn contains(&self, m: u64) -> bool {
        let rho = m % self.modulus;
        match self.progressions.binary_search_by(|p| p.residue.cmp(&rho)) {
            Ok(i) => m >= self.progressions[i].min_element,
            Err(_) => false,
        }
    }

    /// Membership in the truncation of this set at cycle budget k_max:
    /// the element must additionally be among the first k_max terms of its
    /// progression. Equals `ems(d, c, k_max).contains(&m)` without
    /// materializing the list.
    pub fn contains_truncated(&self, k_max: u64, m: u64) -> bool {
        let rho = m % self.modulus;
        match self.progressions.binary_search_by(|p| p.residue.cmp(&rho)) {
            Ok(i) => {
                let min = self.progressions[i].min_element;
                m >= min && (m - min) / self.modulus < k_max
            }
            Err(_) => false,
        }
    }
}

impl fmt::Display for ResidueClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.progressions.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{}", p)?;
        }
        Ok(())
    }
}

fn mod_inverse(n: u64, d: u64) -> u64 {
    // extended Euclid; gcd(n, d) = 1 is guaranteed by the fraction invariant
    let (mut r0, mut r1) = (d as i128, n as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(d as i128) as u64
}

/// Initial countdown of f, via the closed form s_f = (-n^{-1}) mod d.
///
/// This is a derived shortcut, not the defining construction; the recorded
/// creations from the recursion are the source of truth and the test suite
/// checks the two agree for every denominator up to 2000. The seed 0/1
/// returns 1 by convention; 1/1 has no initial countdown.
pub fn s_initial(f: &Fraction) -> Result<u64> {
    if *f == Fraction::ONE {
        return Err(FareyError::NoInitialS { n: 1, d: 1 });
    }
    if *f == Fraction::ZERO {
        return Ok(1);
    }
    let d = f.denominator();
    Ok(d - mod_inverse(f.numerator(), d))
}

/// Initial countdown read off the recorded creation in the birth sequence.
/// Reference path for [`s_initial`]; costs a full sweep to the birth order.
pub fn s_initial_recorded(f: &Fraction) -> Result<u64> {
    if *f == Fraction::ONE {
        return Err(FareyError::NoInitialS { n: 1, d: 1 });
    }
    if *f == Fraction::ZERO {
        return Ok(1);
    }
    let registry = CreationRegistry::build(f.denominator())?;
    registry
        .get(f)
        .map(|meta| meta.s_f)
        .ok_or(FareyError::NoInitialS { n: f.numerator(), d: f.denominator() })
}

/// k-th order at which f carries countdown c: k d + s_f - c when c <= s_f,
/// else (k+1) d + s_f - c.
pub fn m_c(f: &Fraction, c: u64, k: u64) -> Result<u64> {
    let d = f.denominator();
    if c == 0 || c > d {
        return Err(FareyError::CycleCountOutOfRange { c, d });
    }
    if k == 0 {
        return Err(FareyError::InvalidSequence { reason: "cycle index k starts at 1".into() });
    }
    let s_f = s_initial(f)?;
    let cycles = if c <= s_f { k } else { k + 1 };
    cycles
        .checked_mul(d)
        .and_then(|v| v.checked_add(s_f))
        .and_then(|v| v.checked_sub(c))
        .ok_or(FareyError::Overflow { context: "cycle order" })
}

/// The full set {m : s of f in the order-m sequence equals c}, as a
/// progression with modulus d.
pub fn cycle_set(f: &Fraction, c: u64) -> Result<Progression> {
    let d = f.denominator();
    if c == 0 || c > d {
        return Err(FareyError::CycleCountOutOfRange { c, d });
    }
    let s_f = s_initial(f)?;
    let residue = (s_f + d - c) % d;
    let min_element = m_c(f, c, 1)?;
    // first cycle term sits exactly one period above the residue
    debug_assert_eq!(min_element, d + residue);
    Progression::new(d, residue, min_element)
}

/// Union over the denominator-d fractions: orders at which some fraction
/// with denominator d carries countdown c. For d = 1 the single seed 0/1
/// stands in.
pub fn cycle_set_for_denominator(d: u64, c: u64) -> Result<ResidueClassSet> {
    if d == 0 {
        return Err(FareyError::InvalidSequence { reason: "denominator must be positive".into() });
    }
    if d > DENOMINATOR_CAP {
        return Err(FareyError::OrderCapExceeded { order: d, cap: DENOMINATOR_CAP });
    }
    if c == 0 || c > d {
        return Err(FareyError::CycleCountOutOfRange { c, d });
    }
    let mut progressions = Vec::new();
    if d == 1 {
        progressions.push(cycle_set(&Fraction::ZERO, c)?);
    } else {
        for n in 1..d {
            if gcd(n, d) == 1 {
                progressions.push(cycle_set(&Fraction::new_unchecked(n, d), c)?);
            }
        }
    }
    progressions.sort_by_key(|p| p.residue);
    debug_assert!(progressions.windows(2).all(|w| w[0].residue < w[1].residue));
    Ok(ResidueClassSet { modulus: d, progressions })
}

/// Truncated union: the orders m_c(f, k) over all denominator-d fractions
/// and k = 1..=k_max, sorted ascending.
pub fn ems(d: u64, c: u64, k_max: u64) -> Result<Vec<u64>> {
    if k_max == 0 {
        return Err(FareyError::InvalidSequence { reason: "k_max must be positive".into() });
    }
    let set = cycle_set_for_denominator(d, c)?;
    let elements = (set.progressions.len() as u64)
        .checked_mul(k_max)
        .filter(|&n| n <= EMS_ELEMENT_CAP)
        .ok_or(FareyError::ScanCapExceeded { cap: EMS_ELEMENT_CAP })?;
    let mut out = Vec::with_capacity(elements as usize);
    for p in &set.progressions {
        for k in 0..k_max {
            let v = k
                .checked_mul(p.modulus)
                .and_then(|v| v.checked_add(p.min_element))
                .ok_or(FareyError::Overflow { context: "truncated cycle set" })?;
            out.push(v);
        }
    }
    out.sort_unstable();
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: u64, d: u64) -> Fraction {
        Fraction::new(n, d).unwrap()
    }

    #[test]
    fn s_initial_examples() {
        assert_eq!(s_initial(&f(1, 3)).unwrap(), 2);
        assert_eq!(s_initial(&f(1, 5)).unwrap(), 4);
        assert_eq!(s_initial(&f(2, 5)).unwrap(), 2);
        assert_eq!(s_initial(&f(3, 5)).unwrap(), 3);
        assert_eq!(s_initial(&f(4, 5)).unwrap(), 1);
        assert_eq!(s_initial(&f(0, 1)).unwrap(), 1);
        assert_eq!(s_initial(&f(1, 2)).unwrap(), 1);
        assert!(matches!(s_initial(&f(1, 1)), Err(FareyError::NoInitialS { .. })));
    }

    #[test]
    fn fast_path_matches_recorded_creations_small() {
        for d in 2..=40u64 {
            for n in 1..d {
                if gcd(n, d) == 1 {
                    let frac = f(n, d);
                    assert_eq!(
                        s_initial(&frac).unwrap(),
                        s_initial_recorded(&frac).unwrap(),
                        "{}",
                        frac
                    );
                }
            }
        }
    }

    #[test]
    fn m_c_examples() {
        assert_eq!(m_c(&f(1, 3), 1, 1).unwrap(), 4);
        assert_eq!(m_c(&f(1, 3), 3, 1).unwrap(), 5);
        assert_eq!(m_c(&f(1, 3), 2, 1).unwrap(), 3);
        assert!(matches!(m_c(&f(1, 3), 4, 1), Err(FareyError::CycleCountOutOfRange { .. })));
        assert!(m_c(&f(1, 3), 1, 0).is_err());
    }

    #[test]
    fn cycle_set_examples() {
        let p = cycle_set(&f(1, 3), 1).unwrap();
        assert_eq!((p.modulus(), p.residue(), p.min_element()), (3, 1, 4));
        let p = cycle_set(&f(2, 3), 1).unwrap();
        assert_eq!((p.modulus(), p.residue(), p.min_element()), (3, 0, 3));
        let p = cycle_set(&f(0, 1), 1).unwrap();
        assert_eq!((p.modulus(), p.residue(), p.min_element()), (1, 0, 1));
        assert!(p.contains(1) && p.contains(77));
    }

    #[test]
    fn denominator_sets() {
        let set = cycle_set_for_denominator(3, 1).unwrap();
        let got: Vec<_> =
            set.progressions().iter().map(|p| (p.residue(), p.min_element())).collect();
        assert_eq!(got, vec![(0, 3), (1, 4)]);

        let set = cycle_set_for_denominator(4, 3).unwrap();
        let got: Vec<_> =
            set.progressions().iter().map(|p| (p.residue(), p.min_element())).collect();
        assert_eq!(got, vec![(0, 4), (2, 6)]);

        let set = cycle_set_for_denominator(1, 1).unwrap();
        assert!(set.contains(1) && set.contains(1000));

        assert!(cycle_set_for_denominator(2, 3).is_err());
    }

    #[test]
    fn membership_examples() {
        let m13 = cycle_set_for_denominator(3, 1).unwrap();
        assert!(m13.contains(4));
        assert!(!m13.contains(2));
        let m15 = cycle_set_for_denominator(5, 1).unwrap();
        assert!(!m15.contains(9), "9 = 4 (mod 5) is the missing residue");
        assert!(m15.contains(6));
    }

    #[test]
    fn ems_examples() {
        assert_eq!(ems(3, 1, 2).unwrap(), vec![3, 4, 6, 7]);
        assert_eq!(ems(1, 1, 3).unwrap(), vec![1, 2, 3]);
        assert_eq!(ems(4, 3, 1).unwrap(), vec![4, 6]);
    }

    #[test]
    fn construction_caps() {
        assert!(matches!(
            cycle_set_for_denominator(DENOMINATOR_CAP + 1, 1),
            Err(FareyError::OrderCapExceeded { .. })
        ));
        assert!(matches!(
            ems(3, 1, u64::MAX / 2),
            Err(FareyError::ScanCapExceeded { .. })
        ));
    }

    #[test]
    fn ems_elements_lie_in_the_infinite_set() {
        for d in 1..=12u64 {
            for c in 1..=d {
                let set = cycle_set_for_denominator(d, c).unwrap();
                for v in ems(d, c, 5).unwrap() {
                    assert!(set.contains(v), "d={} c={} v={}", d, c, v);
                }
            }
        }
    }

    #[test]
    fn truncated_membership_matches_the_list() {
        for d in 1..=10u64 {
            for c in 1..=d {
                let set = cycle_set_for_denominator(d, c).unwrap();
                for k_max in 1..=6u64 {
                    let list = ems(d, c, k_max).unwrap();
                    let limit = list.last().copied().unwrap() + d + 1;
                    for m in 0..=limit {
                        assert_eq!(
                            set.contains_truncated(k_max, m),
                            list.binary_search(&m).is_ok(),
                            "d={} c={} k={} m={}",
                            d,
                            c,
                            k_max,
                            m
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn rendering_is_stable() {
        let set = cycle_set_for_denominator(3, 1).unwrap();
        assert_eq!(set.to_string(), "{m ≡ 0 (mod 3), m ≥ 3} ∪ {m ≡ 1 (mod 3), m ≥ 4}");
    }

    #[test]
    fn countdown_at_cycle_orders_is_c() {
        use crate::sequence::generate;
        for d in 1..=12u64 {
            let numerators: Vec<u64> =
                if d == 1 { vec![0] } else { (1..d).filter(|&n| gcd(n, d) == 1).collect() };
            for n in numerators {
                let frac = Fraction::new(n, d).unwrap();
                for c in 1..=d {
                    for k in 1..=3u64 {
                        let m = m_c(&frac, c, k).unwrap();
                        let seq = generate(m).unwrap();
                        let hit = seq
                            .entries()
                            .iter()
                            .find(|t| t.n == n && t.d == d)
                            .unwrap_or_else(|| panic!("{} missing from F_{}", frac, m));
                        assert_eq!(hit.s, c, "{} at order {}", frac, m);
                    }
                }
            }
        }
    }

    #[test]
    fn first_cycle_at_the_initial_countdown_is_the_birth_order() {
        for d in 2..=20u64 {
            for n in 1..d {
                if gcd(n, d) == 1 {
                    let frac = Fraction::new(n, d).unwrap();
                    let s_f = s_initial(&frac).unwrap();
                    assert_eq!(m_c(&frac, s_f, 1).unwrap(), d);
                }
            }
        }
    }

    #[test]
    fn progression_count_is_the_totient() {
        use crate::totient::totient;
        for d in 1..=30u64 {
            let set = cycle_set_for_denominator(d, 1).unwrap();
            assert_eq!(set.progressions().len() as u64, totient(d).unwrap());
        }
    }
}
