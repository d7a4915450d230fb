use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    ZeroDenominator,
    #[error("leading coefficient {0} is not a unit over the integers")]
    NonUnitLeading(String),
    #[error("series directions differ")]
    DirectionMismatch,
    #[error("coefficient of v^{exponent} lies beyond the known precision (order {precision})")]
    BeyondPrecision { exponent: i64, precision: i64 },
    #[error("invalid word {0:?}: expected an alternating string over '0' and '1'")]
    InvalidWord(String),
    #[error("length {len} lies beyond the certified cutoff {exact_to}")]
    BeyondCutoff { len: u32, exact_to: u32 },
    #[error("cutoff {0} is too small to certify any coefficient")]
    CutoffTooSmall(u32),
    #[error("identity element is not allowed here")]
    IdentityNotAllowed,
    #[error("expected an element in the {expected} basis, found {found}")]
    WrongBasis { expected: String, found: String },
    #[error("cannot bound the tail of an infinite sum")]
    UnboundedTail,
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("infinite sum does not converge: {0}")]
    Divergent(String),
    #[error("orbit window [{lo}, {hi}] too small for the result")]
    WindowOverflow { lo: i64, hi: i64 },
    #[error(
        "window coefficients did not stabilize by cutoff {cutoff} at order {order}; \
         try cutoff >= {suggested} and order >= {suggested_order}"
    )]
    NotStabilized { cutoff: u32, order: i64, suggested: u32, suggested_order: i64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
