//! The Franel-Landau discrepancy: the sum over the order-m sequence of the
//! squared difference between the normalized index and the fraction itself.
//!
//! Two routes are computed for every order and must agree: a positional
//! route that numbers entries as they stream by, and a formula route that
//! reconstructs each index from the creation metadata via the order-index
//! sum. The formula route groups the clamped floor terms by denominator so a
//! full table stays within budget; the regrouping is exact integer algebra.

use crate::error::{FareyError, Result};
use crate::sequence::Sweep;

/// Cap on the statistic's order: per-row work grows cubically.
pub const FRANEL_ORDER_CAP: u64 = 1_000;

const REL_TOL: f64 = 1e-12;

/// One table row: order, discrepancy, and sequence length.
#[derive(Debug, Clone, Copy)]
pub struct FranelRow {
    pub order: u64,
    pub statistic: f64,
    pub count: u64,
}

#[derive(Default, Clone, Copy)]
struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

#[derive(Clone, Copy)]
struct Meta {
    s_f: u64,
    i_f: u64,
    // birth order; 1 for both seeds, the denominator otherwise
    d_f: u64,
}

struct Engine {
    metas: Vec<Meta>,
    ids: Vec<u32>,
    new_ids: Vec<u32>,
    // triangular scratch: row d holds d slots, at offsets[d]..offsets[d]+d
    offsets: Vec<usize>,
    // suffix[offsets[d] + s - 1] = number of prefix fractions with
    // denominator d and initial countdown >= s
    suffix: Vec<u32>,
    // qtab[offsets[D] + d - 1] = D / d
    qtab: Vec<u32>,
    count_by_d: Vec<u32>,
}

impl Engine {
    fn new(m_max: u64) -> Engine {
        let mm = m_max as usize;
        let mut offsets = vec![0usize; mm + 1];
        let mut acc = 0usize;
        for d in 1..=mm {
            offsets[d] = acc;
            acc += d;
        }
        let mut qtab = vec![0u32; acc];
        for big in 1..=mm {
            for d in 1..=big {
                qtab[offsets[big] + d - 1] = (big / d) as u32;
            }
        }
        Engine {
            metas: vec![
                Meta { s_f: 1, i_f: 1, d_f: 1 }, // 0/1
                Meta { s_f: 0, i_f: 2, d_f: 1 }, // 1/1 sentinel
            ],
            ids: vec![0, 1],
            new_ids: Vec::new(),
            offsets,
            suffix: vec![0u32; acc],
            qtab,
            count_by_d: vec![0u32; mm + 1],
        }
    }

    /// Splices the ids of a freshly stepped sequence: created fractions
    /// occupy the birth indices they reported, everything else shifts over.
    fn advance_ids(&mut self, state: &crate::sequence::SweepState<'_>) {
        self.new_ids.clear();
        self.new_ids.reserve(state.entries.len());
        let created = state.created;
        let mut ci = 0usize;
        let mut old = 0usize;
        for pos1 in 1..=state.entries.len() as u64 {
            if ci < created.len() && created[ci].i_f() == pos1 {
                let c = &created[ci];
                self.metas.push(Meta { s_f: c.s_f(), i_f: c.i_f(), d_f: c.birth_order() });
                self.new_ids.push((self.metas.len() - 1) as u32);
                ci += 1;
            } else {
                self.new_ids.push(self.ids[old]);
                old += 1;
            }
        }
        debug_assert_eq!(ci, created.len());
        debug_assert_eq!(old, self.ids.len());
        std::mem::swap(&mut self.ids, &mut self.new_ids);
    }

    /// Computes the row at the current order, verifying both index routes.
    fn row(&mut self, order: u64, entries: &[crate::sequence::FareyTriple]) -> Result<FranelRow> {
        let m = order as usize;
        let used = self.offsets[m] + m;
        self.suffix[..used].fill(0);
        self.count_by_d[..=m].fill(0);

        let total = entries.len() as f64;
        let mut positional = Kahan::default();
        let mut formula = Kahan::default();
        let mut prefix_creations: u64 = 0;

        for (pos, t) in entries.iter().enumerate() {
            let meta = self.metas[self.ids[pos] as usize];
            // formula route: i_f + creations before f in (birth, m]
            let big = meta.d_f as usize;
            let qrow = &self.qtab[self.offsets[big]..self.offsets[big] + big];
            let mut upto_birth: u64 = 0;
            for d in 1..=big {
                let cd = self.count_by_d[d];
                if cd == 0 {
                    continue;
                }
                let q = qrow[d - 1] as u64;
                let rho = big - q as usize * d;
                let beyond = self.suffix[self.offsets[d] + rho] as u64;
                upto_birth += q * cd as u64 - beyond;
            }
            let index_formula = meta.i_f + prefix_creations - upto_birth;
            let value = t.n as f64 / t.d as f64;
            let index_positional = (pos + 1) as u64;
            let dev_pos = index_positional as f64 / total - value;
            positional.add(dev_pos * dev_pos);
            let dev_formula = index_formula as f64 / total - value;
            formula.add(dev_formula * dev_formula);

            if !t.is_terminal() {
                prefix_creations += (order - meta.s_f) / t.d;
                self.count_by_d[t.d as usize] += 1;
                let off = self.offsets[t.d as usize];
                for slot in &mut self.suffix[off..off + meta.s_f as usize] {
                    *slot += 1;
                }
            }
        }

        let (a, b) = (positional.sum, formula.sum);
        if (a - b).abs() > REL_TOL * a.abs().max(b.abs()) {
            return Err(FareyError::DualPathMismatch { order, positional: a, formula: b });
        }
        Ok(FranelRow { order, statistic: a, count: entries.len() as u64 })
    }
}

fn run(m_max: u64, cap: u64, all_rows: bool) -> Result<Vec<FranelRow>> {
    if m_max == 0 {
        return Err(FareyError::InvalidSequence { reason: "order must be positive".into() });
    }
    if m_max > cap {
        return Err(FareyError::OrderCapExceeded { order: m_max, cap });
    }
    let mut engine = Engine::new(m_max);
    let mut rows = Vec::with_capacity(if all_rows { m_max as usize } else { 1 });
    let mut sweep = Sweep::to(m_max)?;
    while let Some(state) = sweep.advance()? {
        if state.order > 1 {
            engine.advance_ids(&state);
        }
        if all_rows || state.order == m_max {
            rows.push(engine.row(state.order, state.entries)?);
        }
    }
    Ok(rows)
}

/// The discrepancy at a single order. Both index routes run and must agree
/// to 1e-12 relative; the positional value is returned.
pub fn franel_statistic(m: u64) -> Result<f64> {
    Ok(run(m, FRANEL_ORDER_CAP, false)?[0].statistic)
}

/// Rows for every order 1..=m_max.
pub fn franel_table(m_max: u64) -> Result<Vec<FranelRow>> {
    run(m_max, FRANEL_ORDER_CAP, true)
}

pub fn franel_table_with_cap(m_max: u64, cap: u64) -> Result<Vec<FranelRow>> {
    run(m_max, cap, true)
}
