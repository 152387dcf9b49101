//! Interchange formats: JSON-lines sequences (one header object, then one
//! object per triple), creation records, the Franel CSV table, and property
//! reports. Writers are byte-stable so piped output round-trips exactly.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::analysis::{FranelRow, PropertyReport};
use crate::error::{FareyError, Result};
use crate::fraction::Fraction;
use crate::sequence::{CreatedFraction, FareySequence, FareyTriple};

#[derive(Serialize, Deserialize)]
struct Header {
    order: u64,
    len: u64,
}

#[derive(Deserialize)]
struct RawTriple {
    n: u64,
    d: u64,
    s: u64,
}

/// Header line followed by one JSON object per triple, in sequence order.
pub fn write_sequence(w: &mut impl Write, seq: &FareySequence) -> Result<()> {
    let header = Header { order: seq.order(), len: seq.len() as u64 };
    serde_json::to_writer(&mut *w, &header).map_err(to_parse_error)?;
    w.write_all(b"\n")?;
    for t in seq.entries() {
        serde_json::to_writer(&mut *w, t).map_err(to_parse_error)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

/// Parses and fully validates a JSON-lines sequence.
pub fn read_sequence(r: impl BufRead) -> Result<FareySequence> {
    let mut lines = r.lines();
    let header_line = lines
        .next()
        .ok_or_else(|| FareyError::Parse("empty input, expected a header line".into()))??;
    let header: Header = serde_json::from_str(&header_line).map_err(to_parse_error)?;
    // the declared length is untrusted; reserve modestly and let push grow
    let mut entries = Vec::with_capacity(header.len.min(1 << 16) as usize);
    for _ in 0..header.len {
        let line = lines.next().ok_or_else(|| {
            FareyError::Parse(format!("expected {} triples, input ended early", header.len))
        })??;
        let raw: RawTriple = serde_json::from_str(&line).map_err(to_parse_error)?;
        entries.push(FareyTriple { n: raw.n, d: raw.d, s: raw.s });
    }
    FareySequence::from_parts(header.order, entries)
}

fn to_parse_error(e: serde_json::Error) -> FareyError {
    FareyError::Parse(e.to_string())
}

/// One fraction per line, n/d form.
pub fn write_fractions(
    w: &mut impl Write,
    fractions: impl Iterator<Item = Fraction>,
) -> Result<()> {
    for f in fractions {
        writeln!(w, "{}", f)?;
    }
    Ok(())
}

/// Triples as CSV with an n,d,s header.
pub fn write_triples_csv(w: &mut impl Write, seq: &FareySequence) -> Result<()> {
    writeln!(w, "n,d,s")?;
    for t in seq.entries() {
        writeln!(w, "{},{},{}", t.n, t.d, t.s)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct CreatedRecord {
    n: u64,
    d: u64,
    s_f: u64,
    i_f: u64,
}

/// Creation records as JSON lines.
pub fn write_created(w: &mut impl Write, created: &[CreatedFraction]) -> Result<()> {
    for c in created {
        let record = CreatedRecord {
            n: c.fraction().numerator(),
            d: c.fraction().denominator(),
            s_f: c.s_f(),
            i_f: c.i_f(),
        };
        serde_json::to_writer(&mut *w, &record).map_err(to_parse_error)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

/// CSV table with the statistic at 15 significant digits.
pub fn write_franel_csv(w: &mut impl Write, rows: &[FranelRow]) -> Result<()> {
    writeln!(w, "m,statistic,count")?;
    for row in rows {
        writeln!(w, "{},{:.14e},{}", row.order, row.statistic, row.count)?;
    }
    Ok(())
}

/// One JSON report per line.
pub fn write_property_reports(w: &mut impl Write, reports: &[PropertyReport]) -> Result<()> {
    for report in reports {
        serde_json::to_writer(&mut *w, report).map_err(to_parse_error)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}
