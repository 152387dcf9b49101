//! The Farey sequence-to-sequence recursion over ordered triples (n, d, s).
//!
//! Each entry carries a countdown s: the number of sequences following the
//! current one until a new fraction is created immediately after the entry.
//! Stepping a sequence of order m yields the sequence of order m+1 together
//! with the mediants created in the transition.

use serde::Serialize;

use crate::error::{FareyError, Result};
use crate::fraction::{gcd, mediant, Fraction};
use crate::totient::totient_summatory;

/// Default cap on materialized sequence orders; the entry count grows
/// quadratically (about 0.304 m^2 entries at order m).
pub const DEFAULT_ORDER_CAP: u64 = 10_000;

/// One sequence entry: numerator, denominator, and creation countdown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FareyTriple {
    pub n: u64,
    pub d: u64,
    pub s: u64,
}

impl FareyTriple {
    pub fn fraction(&self) -> Fraction {
        Fraction::new_unchecked(self.n, self.d)
    }

    /// The terminal sentinel 1/1 is the only entry with s = 0.
    pub fn is_terminal(&self) -> bool {
        self.n == 1 && self.d == 1
    }
}

/// A mediant born in a transition, with its initial countdown and the
/// 1-based index it occupied in its birth sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CreatedFraction {
    fraction: Fraction,
    s_f: u64,
    i_f: u64,
}

impl CreatedFraction {
    pub fn new(fraction: Fraction, s_f: u64, i_f: u64) -> Result<CreatedFraction> {
        let d = fraction.denominator();
        if d < 2 || fraction.numerator() == 0 {
            return Err(FareyError::InvalidFraction {
                n: fraction.numerator(),
                d,
                reason: "seed fractions are never created",
            });
        }
        if s_f == 0 || s_f > d - 1 {
            return Err(FareyError::InvalidSequence {
                reason: format!("created {} carries s_f {} outside 1..={}", fraction, s_f, d - 1),
            });
        }
        if i_f < 2 {
            return Err(FareyError::InvalidSequence {
                reason: format!("created {} carries birth index {}", fraction, i_f),
            });
        }
        Ok(CreatedFraction { fraction, s_f, i_f })
    }

    pub fn fraction(&self) -> Fraction {
        self.fraction
    }

    /// Initial countdown: the denominator of the successor at creation time.
    pub fn s_f(&self) -> u64 {
        self.s_f
    }

    /// 1-based index within the birth sequence.
    pub fn i_f(&self) -> u64 {
        self.i_f
    }

    /// A fraction with denominator d first appears in the sequence of order d.
    pub fn birth_order(&self) -> u64 {
        self.fraction.denominator()
    }
}

/// An ordered Farey sequence of triples, tagged with its order.
///
/// Instances are valid by construction: they come from the recursion or from
/// [`FareySequence::from_parts`], which checks every structural invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FareySequence {
    order: u64,
    entries: Vec<FareyTriple>,
}

impl FareySequence {
    /// Validates and wraps an externally supplied triple list.
    pub fn from_parts(order: u64, entries: Vec<FareyTriple>) -> Result<FareySequence> {
        if order == 0 {
            return Err(FareyError::InvalidSequence { reason: "order must be positive".into() });
        }
        if order > DEFAULT_ORDER_CAP {
            return Err(FareyError::OrderCapExceeded { order, cap: DEFAULT_ORDER_CAP });
        }
        let expected_len = totient_summatory(order)? + 1;
        if entries.len() as u64 != expected_len {
            return Err(FareyError::InvalidSequence {
                reason: format!(
                    "order {} needs {} entries, got {}",
                    order,
                    expected_len,
                    entries.len()
                ),
            });
        }
        if entries.first() != Some(&FareyTriple { n: 0, d: 1, s: 1 }) {
            return Err(FareyError::InvalidSequence { reason: "first entry must be (0,1,1)".into() });
        }
        if entries.last() != Some(&FareyTriple { n: 1, d: 1, s: 0 }) {
            return Err(FareyError::InvalidSequence { reason: "last entry must be (1,1,0)".into() });
        }
        for pair in entries.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if a.fraction() >= b.fraction() {
                return Err(FareyError::InvalidSequence {
                    reason: format!("entries {}/{} and {}/{} not increasing", a.n, a.d, b.n, b.d),
                });
            }
        }
        for t in &entries[..entries.len() - 1] {
            if t.d == 0 || t.d > order || t.n >= t.d {
                return Err(FareyError::InvalidSequence {
                    reason: format!("entry {}/{} out of range for order {}", t.n, t.d, order),
                });
            }
            if gcd(t.n, t.d) != 1 {
                return Err(FareyError::InvalidSequence {
                    reason: format!("entry {}/{} not in lowest terms", t.n, t.d),
                });
            }
            if t.s == 0 || t.s > t.d {
                return Err(FareyError::InvalidSequence {
                    reason: format!("entry {}/{} carries s {} outside 1..={}", t.n, t.d, t.s, t.d),
                });
            }
        }
        Ok(FareySequence { order, entries })
    }

    fn new_unchecked(order: u64, entries: Vec<FareyTriple>) -> FareySequence {
        FareySequence { order, entries }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn entries(&self) -> &[FareyTriple] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn fractions(&self) -> impl Iterator<Item = Fraction> + '_ {
        self.entries.iter().map(|t| t.fraction())
    }
}

fn base_sequence_entries() -> Vec<FareyTriple> {
    vec![FareyTriple { n: 0, d: 1, s: 1 }, FareyTriple { n: 1, d: 1, s: 0 }]
}

/// The base case of the recursion: one step reproduces the order-2 sequence.
pub fn first_sequence() -> FareySequence {
    FareySequence::new_unchecked(1, base_sequence_entries())
}

/// The order-2 sequence (0,1,1) || (1,2,1) || (1,1,0).
pub fn initial_sequence() -> FareySequence {
    FareySequence::new_unchecked(
        2,
        vec![
            FareyTriple { n: 0, d: 1, s: 1 },
            FareyTriple { n: 1, d: 2, s: 1 },
            FareyTriple { n: 1, d: 1, s: 0 },
        ],
    )
}

/// Core transition loop. Emits the order m+1 entries left to right and
/// reports each created mediant with its initial countdown and index.
fn step_emit(
    src: &[FareyTriple],
    mut emit: impl FnMut(FareyTriple),
    mut on_created: impl FnMut(CreatedFraction),
) -> Result<()> {
    let mut emitted: u64 = 0;
    for i in 0..src.len() - 1 {
        let t = src[i];
        if t.s > 1 {
            emit(FareyTriple { n: t.n, d: t.d, s: t.s - 1 });
            emitted += 1;
        } else {
            let next = src[i + 1];
            emit(FareyTriple { n: t.n, d: t.d, s: t.d });
            let med = mediant(&t.fraction(), &next.fraction())?;
            emit(FareyTriple { n: med.numerator(), d: med.denominator(), s: next.d });
            emitted += 2;
            on_created(CreatedFraction { fraction: med, s_f: next.d, i_f: emitted });
        }
    }
    emit(FareyTriple { n: 1, d: 1, s: 0 });
    Ok(())
}

/// One transition: the next-order sequence plus the created fractions C_m.
pub fn step(seq: &FareySequence) -> Result<(FareySequence, Vec<CreatedFraction>)> {
    let order = seq
        .order
        .checked_add(1)
        .ok_or(FareyError::Overflow { context: "sequence order" })?;
    let mut entries = Vec::with_capacity(seq.entries.len() + 8);
    let mut created = Vec::new();
    step_emit(&seq.entries, |t| entries.push(t), |c| created.push(c))?;
    Ok((FareySequence::new_unchecked(order, entries), created))
}

/// Progressive generation of the sequence of sequences, one order at a time,
/// reusing buffers across transitions.
pub struct Sweep {
    order: u64,
    max_order: u64,
    cur: Vec<FareyTriple>,
    scratch: Vec<FareyTriple>,
    created: Vec<CreatedFraction>,
    started: bool,
}

/// Borrowed view of the sweep after an advance: the entries of the current
/// order and the fractions created in the transition into it.
pub struct SweepState<'a> {
    pub order: u64,
    pub entries: &'a [FareyTriple],
    pub created: &'a [CreatedFraction],
}

impl Sweep {
    pub fn to(max_order: u64) -> Result<Sweep> {
        if max_order == 0 {
            return Err(FareyError::InvalidSequence { reason: "order must be positive".into() });
        }
        Ok(Sweep {
            order: 0,
            max_order,
            cur: Vec::new(),
            scratch: Vec::new(),
            created: Vec::new(),
            started: false,
        })
    }

    /// Advances to the next order; `None` once the target order has been
    /// yielded.
    pub fn advance(&mut self) -> Result<Option<SweepState<'_>>> {
        if !self.started {
            self.started = true;
            self.order = 1;
            self.cur = base_sequence_entries();
        } else {
            if self.order >= self.max_order {
                return Ok(None);
            }
            self.scratch.clear();
            self.created.clear();
            let (scratch, created) = (&mut self.scratch, &mut self.created);
            step_emit(&self.cur, |t| scratch.push(t), |c| created.push(c))?;
            std::mem::swap(&mut self.cur, &mut self.scratch);
            self.order += 1;
        }
        Ok(Some(SweepState { order: self.order, entries: &self.cur, created: &self.created }))
    }

    /// Consumes the sweep, wrapping the current buffer as a sequence.
    pub fn into_sequence(self) -> FareySequence {
        FareySequence::new_unchecked(self.order, self.cur)
    }
}

/// Full triple-annotated sequence of order m via the recursion.
pub fn generate(m: u64) -> Result<FareySequence> {
    generate_with_cap(m, DEFAULT_ORDER_CAP)
}

pub fn generate_with_cap(m: u64, cap: u64) -> Result<FareySequence> {
    if m > cap {
        return Err(FareyError::OrderCapExceeded { order: m, cap });
    }
    let mut sweep = Sweep::to(m)?;
    while let Some(state) = sweep.advance()? {
        if state.order == m {
            break;
        }
    }
    Ok(sweep.into_sequence())
}

/// The created set C_m: mediants born in the transition from order m to m+1,
/// in increasing fraction order. Its length is the totient of m+1 and every
/// element has denominator m+1.
pub fn created(m: u64) -> Result<Vec<CreatedFraction>> {
    let seq = generate(m)?;
    let (_, created) = step(&seq)?;
    Ok(created)
}

/// Streams the triples of order m without materializing the final sequence;
/// only the order m-1 buffer is held.
pub fn visit_triples(m: u64, mut visit: impl FnMut(&FareyTriple)) -> Result<()> {
    if m == 1 {
        for t in base_sequence_entries() {
            visit(&t);
        }
        return Ok(());
    }
    let prev = generate(m - 1)?;
    step_emit(&prev.entries, |t| visit(&t), |_| {})
}

/// Successor of f_curr in the order-m sequence from the two preceding terms:
/// the floor-coefficient recursion q = (d_prev + m) / d_curr applied
/// componentwise.
pub fn next_term(f_prev: &Fraction, f_curr: &Fraction, m: u64) -> Result<Fraction> {
    let q = f_prev
        .denominator()
        .checked_add(m)
        .ok_or(FareyError::Overflow { context: "next-term coefficient" })?
        / f_curr.denominator();
    let n = q
        .checked_mul(f_curr.numerator())
        .ok_or(FareyError::Overflow { context: "next-term numerator" })?
        .checked_sub(f_prev.numerator());
    let d = q
        .checked_mul(f_curr.denominator())
        .ok_or(FareyError::Overflow { context: "next-term denominator" })?
        .checked_sub(f_prev.denominator());
    let (n, d) = match (n, d) {
        (Some(n), Some(d)) => (n, d),
        _ => return Err(FareyError::NotConsecutive { n: f_curr.numerator(), d: f_curr.denominator() }),
    };
    let result = Fraction::new(n, d).map_err(|_| FareyError::NotConsecutive { n, d })?;
    if result <= *f_curr {
        return Err(FareyError::NotConsecutive { n, d });
    }
    Ok(result)
}

/// Order-m sequence as plain fractions via the classic three-term recursion,
/// seeded with 0/1 and 1/m.
pub fn generate_classic(m: u64) -> Result<Vec<Fraction>> {
    generate_classic_with_cap(m, DEFAULT_ORDER_CAP)
}

pub fn generate_classic_with_cap(m: u64, cap: u64) -> Result<Vec<Fraction>> {
    if m == 0 {
        return Err(FareyError::InvalidSequence { reason: "order must be positive".into() });
    }
    if m > cap {
        return Err(FareyError::OrderCapExceeded { order: m, cap });
    }
    let mut out = vec![Fraction::ZERO, Fraction::new_unchecked(1, m)];
    while *out.last().unwrap() != Fraction::ONE {
        let next = next_term(&out[out.len() - 2], &out[out.len() - 1], m)?;
        out.push(next);
    }
    Ok(out)
}
