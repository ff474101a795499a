use alloc::string::String;

/// Everything that can go wrong in the core crate.
///
/// Variants are grouped by how a caller should react: contract violations
/// (mismatched orders, misaligned vectors) are programming errors, the rest
/// are precondition failures on user input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("exponent {exponent} exceeds truncation order {order}")]
    ExponentOutOfRange { exponent: usize, order: usize },

    #[error("truncation orders differ ({left} vs {right}); re-truncate before combining")]
    OrderMismatch { left: usize, right: usize },

    #[error("cannot raise truncation order from {from} to {to}")]
    CannotExtend { from: usize, to: usize },

    #[error("geometric step must be positive, got {0}")]
    NonPositiveStep(i64),

    #[error("series has nonzero coefficient at t^{index}, beyond the attested polynomial degree {degree}")]
    NotPolynomial { index: usize, degree: usize },

    #[error("no zero tail inside truncation order {0}; polynomial not attested")]
    NotAttested(usize),

    #[error("the zero polynomial has no finite vanishing order")]
    ZeroPolynomial,

    #[error("composition parts must be positive and nonempty")]
    InvalidComposition,

    #[error("{fine} does not refine {coarse}")]
    NotRefinement { fine: String, coarse: String },

    #[error("vector of length {got} does not match a composition with {expected} parts")]
    Misaligned { expected: usize, got: usize },

    #[error("parts {0} and {next} are not adjacent inside one block", next = .0 + 1)]
    CrossesBlock(usize),

    #[error("genus must be >= 2, got {0}")]
    UnsupportedGenus(i64),

    #[error("rank must be >= 1")]
    ZeroRank,

    #[error("T is not strictly dominant")]
    NotDominant,

    #[error("degree {degree} is not prime to rank {rank}")]
    NotCoprime { rank: usize, degree: i64 },

    #[error("no seed value for Levi type {0}")]
    MissingSeed(String),

    #[error("lattice exponent {0} is not an integer")]
    NonIntegralExponent(String),

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

impl Error {
    /// True for the class of errors that indicate misuse of the API rather
    /// than bad input values.
    pub fn is_contract_violation(&self) -> bool {
        matches!(
            self,
            Error::OrderMismatch { .. }
                | Error::CannotExtend { .. }
                | Error::Misaligned { .. }
                | Error::NotRefinement { .. }
                | Error::MissingSeed(_)
                | Error::NonIntegralExponent(_)
        )
    }
}
