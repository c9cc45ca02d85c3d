use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("the empty word has no root")]
    EmptyWord,

    #[error("invalid field parameters: {0}")]
    InvalidField(String),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("prime {p} ramifies in the extension of conductor {conductor}")]
    Ramified { p: u64, conductor: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "k± = {kpm} satisfies k± ≡ 1 (mod 3): for i = (2k±+1)/3 the field Q(ζ^i + ζ^-i) is Q, \
         every inertia degree there is 1, so no prime can satisfy the inertia condition"
    )]
    CongruenceViolated { kpm: i64 },

    #[error("budget exceeded: {needed} evaluations requested, budget is {budget}{hint}")]
    BudgetExceeded {
        needed: u128,
        budget: u128,
        hint: &'static str,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
