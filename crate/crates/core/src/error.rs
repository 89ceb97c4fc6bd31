use alloc::string::String;

/// Errors reported by the library.
///
/// Variants ending in `Bug`-like wording (`BrokenComplex`) signal internal
/// inconsistencies and should never be observed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A group specification string did not match the grammar.
    #[error("invalid group spec `{spec}`: {reason}")]
    GroupSpec {
        /// The offending text.
        spec: String,
        /// What went wrong.
        reason: String,
    },
    /// A multiplication table failed the group axioms.
    #[error("not a group: {0}")]
    NotAGroup(String),
    /// An element index is out of range.
    #[error("element index {index} out of range for a group of order {order}")]
    ElementRange {
        /// The index supplied.
        index: usize,
        /// The order of the group.
        order: usize,
    },
    /// A braid word or framing list could not be parsed or is inconsistent.
    #[error("invalid link: {0}")]
    Link(String),
    /// Objects from different contexts (groups, coefficients, variants) were mixed.
    #[error("context mismatch: {0}")]
    Mismatch(String),
    /// A computation would exceed its size guard.
    #[error("size guard exceeded: {what} needs {needed}, limit is {limit}")]
    Budget {
        /// The guarded quantity.
        what: &'static str,
        /// The size that would be required.
        needed: u128,
        /// The configured limit.
        limit: u128,
    },
    /// A cochain failed the 2-cocycle condition where one was required.
    #[error("not a 2-cocycle: {0}")]
    NotACocycle(String),
    /// A parameter is outside its documented range.
    #[error("parameter out of range: {0}")]
    Range(String),
    /// A coboundary was not contained in the cocycle lattice (never expected).
    #[error("broken complex: {0}")]
    BrokenComplex(String),
    /// A value does not fit in a machine integer.
    #[error("integer overflow: {0}")]
    Overflow(String),
    /// A homomorphism check was requested without an image for some generator.
    #[error("missing image for generator `{0}`")]
    MissingImage(String),
    /// The request is well formed but outside what is implemented.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Convenience alias.
pub type Result<T> = core::result::Result<T, Error>;
