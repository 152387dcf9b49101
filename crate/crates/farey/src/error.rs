use std::fmt;

/// Errors surfaced by the library.
#[derive(Debug)]
pub enum FareyError {
    /// Checked arithmetic left the machine-word range.
    Overflow { context: &'static str },
    /// A mediant came out reducible, so the inputs were not Farey neighbors.
    NonCoprimeMediant { n: u64, d: u64 },
    /// The next-term recursion produced an invalid fraction, so the inputs
    /// were not consecutive elements of the sequence.
    NotConsecutive { n: u64, d: u64 },
    /// A fraction violating gcd(n, d) = 1 or 0 <= n <= d, d >= 1.
    InvalidFraction { n: u64, d: u64, reason: &'static str },
    /// A triple sequence violating the structural invariants.
    InvalidSequence { reason: String },
    /// Requested order exceeds the configured materialization cap.
    OrderCapExceeded { order: u64, cap: u64 },
    /// The fraction is not an element of the requested sequence.
    NotInSequence { n: u64, d: u64, order: u64 },
    /// Property id outside 1..=7.
    InvalidPropertyId { id: u8 },
    /// Cycle target c outside 1..=d; no triple ever carries s > d.
    CycleCountOutOfRange { c: u64, d: u64 },
    /// No initial s value exists for this fraction (reducible, or the 1/1 sentinel).
    NoInitialS { n: u64, d: u64 },
    /// A candidate scan ran past the configured cap.
    ScanCapExceeded { cap: u64 },
    /// The truncated cycle sets ran out before the requested count; the k_max
    /// budget is too small to certify additional pairs.
    TruncationExhausted { k_max: u64, pairs_found: usize },
    /// The positional and formula-based Franel sums diverged.
    DualPathMismatch { order: u64, positional: f64, formula: f64 },
    /// Malformed textual input.
    Parse(String),
    Io(std::io::Error),
}

impl fmt::Display for FareyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FareyError::Overflow { context } => write!(f, "arithmetic overflow in {}", context),
            FareyError::NonCoprimeMediant { n, d } => {
                write!(f, "mediant {}/{} is reducible; inputs were not Farey neighbors", n, d)
            }
            FareyError::NotConsecutive { n, d } => {
                write!(f, "next-term result {}/{} is invalid; inputs were not consecutive", n, d)
            }
            FareyError::InvalidFraction { n, d, reason } => {
                write!(f, "invalid fraction {}/{}: {}", n, d, reason)
            }
            FareyError::InvalidSequence { reason } => write!(f, "invalid sequence: {}", reason),
            FareyError::OrderCapExceeded { order, cap } => {
                write!(f, "order {} exceeds the configured cap {}", order, cap)
            }
            FareyError::NotInSequence { n, d, order } => {
                write!(f, "{}/{} is not an element of F_{}", n, d, order)
            }
            FareyError::InvalidPropertyId { id } => {
                write!(f, "property id {} outside 1..=7", id)
            }
            FareyError::CycleCountOutOfRange { c, d } => {
                write!(f, "cycle value c={} out of range for denominator {} (need 1 <= c <= d)", c, d)
            }
            FareyError::NoInitialS { n, d } => {
                write!(f, "no initial s value for {}/{}", n, d)
            }
            FareyError::ScanCapExceeded { cap } => {
                write!(f, "candidate scan exceeded cap {}", cap)
            }
            FareyError::TruncationExhausted { k_max, pairs_found } => {
                write!(
                    f,
                    "truncated cycle sets exhausted after {} pair(s); k_max={} is too small",
                    pairs_found, k_max
                )
            }
            FareyError::DualPathMismatch { order, positional, formula } => {
                write!(
                    f,
                    "Franel paths diverged at order {}: positional {:e} vs formula {:e}",
                    order, positional, formula
                )
            }
            FareyError::Parse(msg) => write!(f, "parse error: {}", msg),
            FareyError::Io(e) => write!(f, "i/o error: {}", e),
        }
    }
}

impl std::error::Error for FareyError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            FareyError::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for FareyError {
    fn from(e: std::io::Error) -> Self {
        FareyError::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, FareyError>;
