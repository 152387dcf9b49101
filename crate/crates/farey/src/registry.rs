//! Creation metadata recorded while iterating the recursion: for every
//! fraction, the initial countdown s_f, the 1-based index in its birth
//! sequence, and the birth order itself. The two seeds 0/1 and 1/1 are never
//! created by the loop and enter with fixed conventions; 1/2 is created
//! normally by the step out of the base sequence.

use crate::error::{FareyError, Result};
use crate::fraction::Fraction;
use crate::sequence::Sweep;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FractionMeta {
    /// Initial countdown. For the 1/1 sentinel this is 0 and must not enter
    /// any cycle computation; every other fraction carries s_f in 1..=d.
    pub s_f: u64,
    /// 1-based index in the birth sequence.
    pub i_f: u64,
    /// Order of first appearance; equals the denominator except for 1/1.
    pub birth_order: u64,
}

/// Sorted map from fraction to creation metadata, covering every fraction
/// with birth order up to a chosen maximum.
#[derive(Debug, Clone)]
pub struct CreationRegistry {
    max_order: u64,
    entries: Vec<(Fraction, FractionMeta)>,
}

impl CreationRegistry {
    pub fn build(max_order: u64) -> Result<CreationRegistry> {
        CreationRegistry::build_with_cap(max_order, crate::sequence::DEFAULT_ORDER_CAP)
    }

    pub fn build_with_cap(max_order: u64, cap: u64) -> Result<CreationRegistry> {
        if max_order > cap {
            return Err(FareyError::OrderCapExceeded { order: max_order, cap });
        }
        let mut entries = vec![
            (Fraction::ZERO, FractionMeta { s_f: 1, i_f: 1, birth_order: 1 }),
            (Fraction::ONE, FractionMeta { s_f: 0, i_f: 2, birth_order: 1 }),
        ];
        let mut sweep = Sweep::to(max_order)?;
        while let Some(state) = sweep.advance()? {
            for c in state.created {
                entries.push((
                    c.fraction(),
                    FractionMeta { s_f: c.s_f(), i_f: c.i_f(), birth_order: c.birth_order() },
                ));
            }
        }
        entries.sort_by_key(|e| e.0);
        Ok(CreationRegistry { max_order, entries })
    }

    pub fn max_order(&self) -> u64 {
        self.max_order
    }

    /// All records, sorted by fraction value.
    pub fn entries(&self) -> &[(Fraction, FractionMeta)] {
        &self.entries
    }

    pub fn get(&self, f: &Fraction) -> Option<&FractionMeta> {
        self.entries
            .binary_search_by(|(g, _)| g.cmp(f))
            .ok()
            .map(|i| &self.entries[i].1)
    }

    /// Metadata of f viewed as an element of the order-m sequence.
    pub fn meta_in(&self, f: &Fraction, m: u64) -> Result<&FractionMeta> {
        if m > self.max_order {
            return Err(FareyError::OrderCapExceeded { order: m, cap: self.max_order });
        }
        let not_member =
            FareyError::NotInSequence { n: f.numerator(), d: f.denominator(), order: m };
        let meta = self.get(f).ok_or(not_member)?;
        if meta.birth_order > m {
            return Err(FareyError::NotInSequence {
                n: f.numerator(),
                d: f.denominator(),
                order: m,
            });
        }
        Ok(meta)
    }

    /// Records strictly below f in fraction order.
    pub fn prefix_of(&self, f: &Fraction) -> &[(Fraction, FractionMeta)] {
        let idx = self.entries.partition_point(|(g, _)| g < f);
        &self.entries[..idx]
    }
}
