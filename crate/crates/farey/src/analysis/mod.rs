//! Machine-checkable forms of the structural properties, the neighbor-gap
//! formula, the order-index formula, and the Franel-Landau discrepancy.

mod franel;
mod properties;

pub use franel::{franel_statistic, franel_table, franel_table_with_cap, FranelRow, FRANEL_ORDER_CAP};
pub use properties::{check_property, Counterexample, PropertyReport};

use crate::error::{FareyError, Result};
use crate::fraction::Fraction;
use crate::registry::CreationRegistry;
use crate::sequence::CreatedFraction;

/// Exact distance from a fraction to its successor in the order-m sequence:
/// the reciprocal of floor((m - s_f)/d) d^2 + s_f d.
pub fn gap(cf: &CreatedFraction, m: u64) -> Result<Fraction> {
    gap_from_parts(cf.fraction().denominator(), cf.s_f(), m)
}

/// Gap from raw (denominator, initial countdown) parts. Accepts the seed
/// convention s_f = d = 1 for 0/1 alongside genuine creations.
pub fn gap_from_parts(d: u64, s_f: u64, m: u64) -> Result<Fraction> {
    if d == 0 || s_f == 0 || s_f > d {
        return Err(FareyError::InvalidSequence {
            reason: format!("gap needs 1 <= s_f <= d, got s_f={} d={}", s_f, d),
        });
    }
    if m < d {
        return Err(FareyError::NotInSequence { n: 0, d, order: m });
    }
    // denominator of the current successor: floor((m - s_f)/d) d + s_f
    let successor_d = ((m - s_f) / d)
        .checked_mul(d)
        .and_then(|v| v.checked_add(s_f))
        .ok_or(FareyError::Overflow { context: "gap successor denominator" })?;
    let den = successor_d
        .checked_mul(d)
        .ok_or(FareyError::Overflow { context: "gap denominator" })?;
    Fraction::new(1, den)
}

/// 1-based position of f in the order-m sequence, via the order-index
/// formula: the birth index plus, for every smaller fraction g, the number
/// of creations immediately after g between the birth order of f and m.
/// Each floor term is a creation count and is clamped below at zero.
pub fn order_index(f: &Fraction, m: u64, registry: &CreationRegistry) -> Result<u64> {
    let meta = registry.meta_in(f, m)?;
    let birth = meta.birth_order;
    let mut index = meta.i_f;
    for (_, gm) in registry.prefix_of(f) {
        if gm.birth_order > m {
            continue;
        }
        let (d_g, s_g) = (gm.birth_order, gm.s_f);
        let upto_m = (m - s_g) / d_g;
        let upto_birth = if birth >= s_g { (birth - s_g) / d_g } else { 0 };
        index += upto_m - upto_birth;
    }
    Ok(index)
}
