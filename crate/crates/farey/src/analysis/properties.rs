//! Exhaustive checkers for the seven structural properties of the triple
//! recursion. Each checker evaluates its property over a freshly generated
//! sequence and reports a witness on failure.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{FareyError, Result};
use crate::fraction::gcd;
use crate::oracle::trial_division_is_prime;
use crate::registry::CreationRegistry;
use crate::sequence::{generate, step, FareyTriple, Sweep};

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    Triple { triple: FareyTriple },
    Pair { left: FareyTriple, right: FareyTriple },
    Note { note: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub property_id: u8,
    pub order: u64,
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

impl PropertyReport {
    fn pass(property_id: u8, order: u64) -> PropertyReport {
        PropertyReport { property_id, order, holds: true, counterexample: None }
    }

    fn fail(property_id: u8, order: u64, witness: Counterexample) -> PropertyReport {
        PropertyReport { property_id, order, holds: false, counterexample: Some(witness) }
    }
}

/// Evaluates property `id` (1..=7) exhaustively at order m >= 2.
///
/// Fixed interpretations: membership in the created set is characterized by
/// d = m+1 with gcd(n, d) = 1 (property 1); properties 3 and 4 use the
/// countdown recorded at creation; property 5 quantifies over sequence
/// entries with s = 1; property 7 checks both directions with primality
/// decided by trial division.
pub fn check_property(id: u8, m: u64) -> Result<PropertyReport> {
    if !(1..=7).contains(&id) {
        return Err(FareyError::InvalidPropertyId { id });
    }
    if m < 2 {
        return Err(FareyError::InvalidSequence {
            reason: "property checks start at order 2".into(),
        });
    }
    match id {
        1 => check_created_characterization(m),
        2 => check_distinct_countdowns(m),
        3 => check_cycle_period(m),
        4 => check_countdown_formula(m),
        5 => check_unit_countdown_congruence(m),
        6 => check_distinct_creation_denominators(m),
        7 => check_prime_coverage(m),
        _ => unreachable!(),
    }
}

/// (1) The transition out of order m creates exactly the irreducible
/// fractions with denominator m+1.
fn check_created_characterization(m: u64) -> Result<PropertyReport> {
    let (_, created) = step(&generate(m)?)?;
    for c in &created {
        let (n, d) = (c.fraction().numerator(), c.fraction().denominator());
        if d != m + 1 || n == 0 || n >= d || gcd(n, d) != 1 {
            return Ok(PropertyReport::fail(
                1,
                m,
                Counterexample::Triple { triple: FareyTriple { n, d, s: c.s_f() } },
            ));
        }
    }
    let got: Vec<u64> = created.iter().map(|c| c.fraction().numerator()).collect();
    let want: Vec<u64> = (1..=m).filter(|&n| gcd(n, m + 1) == 1).collect();
    if got != want {
        return Ok(PropertyReport::fail(
            1,
            m,
            Counterexample::Note {
                note: format!("created numerators {:?} differ from coprime residues", got),
            },
        ));
    }
    Ok(PropertyReport::pass(1, m))
}

/// (2) Entries sharing a denominator carry pairwise distinct countdowns.
fn check_distinct_countdowns(m: u64) -> Result<PropertyReport> {
    let seq = generate(m)?;
    let mut seen: HashMap<(u64, u64), FareyTriple> = HashMap::new();
    for t in seq.entries() {
        if let Some(prev) = seen.insert((t.d, t.s), *t) {
            return Ok(PropertyReport::fail(
                2,
                m,
                Counterexample::Pair { left: prev, right: *t },
            ));
        }
    }
    Ok(PropertyReport::pass(2, m))
}

/// (3) A triple present at order m reappears identically at order m + d:
/// after the initial stretch the countdown cycles with period d.
fn check_cycle_period(m: u64) -> Result<PropertyReport> {
    let target = m.checked_mul(2).ok_or(FareyError::Overflow { context: "cycle period check" })?;
    let mut per_d: Vec<Vec<FareyTriple>> = vec![Vec::new(); m as usize + 1];
    let mut sweep = Sweep::to(target)?;
    while let Some(state) = sweep.advance()? {
        if state.order == m {
            for t in state.entries {
                if !t.is_terminal() {
                    per_d[t.d as usize].push(*t);
                }
            }
        } else if state.order > m {
            let j = (state.order - m) as usize;
            let expected = &per_d[j];
            if expected.is_empty() {
                continue;
            }
            let mut it = expected.iter();
            let mut pending = it.next();
            for t in state.entries {
                if t.d as usize != j || t.is_terminal() {
                    continue;
                }
                if let Some(want) = pending {
                    if t != want {
                        return Ok(PropertyReport::fail(
                            3,
                            m,
                            Counterexample::Pair { left: *want, right: *t },
                        ));
                    }
                    pending = it.next();
                }
            }
            if let Some(want) = pending {
                return Ok(PropertyReport::fail(3, m, Counterexample::Triple { triple: *want }));
            }
        }
    }
    Ok(PropertyReport::pass(3, m))
}

/// (4) s = d - (m - s_f) mod d for every non-terminal entry, where s_f is
/// the countdown recorded at creation.
fn check_countdown_formula(m: u64) -> Result<PropertyReport> {
    let registry = CreationRegistry::build(m)?;
    let seq = generate(m)?;
    for t in seq.entries() {
        if t.is_terminal() {
            continue;
        }
        let s_f = registry.get(&t.fraction()).expect("member of the sequence").s_f;
        if t.s != t.d - (m - s_f) % t.d {
            return Ok(PropertyReport::fail(4, m, Counterexample::Triple { triple: *t }));
        }
    }
    Ok(PropertyReport::pass(4, m))
}

/// (5) s = 1 exactly when (m - s_f + 1) is divisible by d; the unit
/// countdown marks the orders just before a creation fires.
fn check_unit_countdown_congruence(m: u64) -> Result<PropertyReport> {
    let registry = CreationRegistry::build(m)?;
    let seq = generate(m)?;
    for t in seq.entries() {
        if t.is_terminal() {
            continue;
        }
        let s_f = registry.get(&t.fraction()).expect("member of the sequence").s_f;
        let congruent = (m - s_f + 1) % t.d == 0;
        if (t.s == 1) != congruent {
            return Ok(PropertyReport::fail(5, m, Counterexample::Triple { triple: *t }));
        }
    }
    Ok(PropertyReport::pass(5, m))
}

/// (6) Entries with s = 1 have pairwise distinct denominators.
fn check_distinct_creation_denominators(m: u64) -> Result<PropertyReport> {
    let seq = generate(m)?;
    let mut seen: HashMap<u64, FareyTriple> = HashMap::new();
    for t in seq.entries() {
        if t.s != 1 {
            continue;
        }
        if let Some(prev) = seen.insert(t.d, *t) {
            return Ok(PropertyReport::fail(
                6,
                m,
                Counterexample::Pair { left: prev, right: *t },
            ));
        }
    }
    Ok(PropertyReport::pass(6, m))
}

/// (7) m+1 is prime exactly when every denominator 1..=m contributes an
/// entry with s = 1.
fn check_prime_coverage(m: u64) -> Result<PropertyReport> {
    let seq = generate(m)?;
    let mut covered = vec![false; m as usize + 1];
    for t in seq.entries() {
        if t.s == 1 {
            covered[t.d as usize] = true;
        }
    }
    let full = covered[1..].iter().all(|&b| b);
    let prime = trial_division_is_prime(m + 1);
    if prime == full {
        Ok(PropertyReport::pass(7, m))
    } else {
        let missing = covered[1..].iter().position(|&b| !b).map(|i| i + 1);
        Ok(PropertyReport::fail(
            7,
            m,
            Counterexample::Note {
                note: match missing {
                    Some(d) => format!("{} is prime but denominator {} has no s=1 entry", m + 1, d),
                    None => format!("{} is composite yet every denominator has an s=1 entry", m + 1),
                },
            },
        ))
    }
}
