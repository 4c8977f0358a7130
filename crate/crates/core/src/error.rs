use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// The single error type shared by every module of the crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },

    #[error("function `{name}` takes {expected} argument(s), found {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("domain error in `{node}` at t = {at}: {reason}")]
    Domain {
        node: String,
        at: f64,
        reason: &'static str,
    },

    #[error("integrand is not finite at x = {at}")]
    NonFinite { at: f64 },

    #[error("adaptive quadrature exceeded depth {max_depth} on [{a}, {b}]")]
    DepthExceeded { a: f64, b: f64, max_depth: u32 },

    #[error("target {target} outside table span [{lo}, {hi}]")]
    OutOfRange { target: f64, lo: f64, hi: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown catalog curve `{0}`")]
    UnknownCurve(String),

    #[error("curve spec line {line}: {message}")]
    SpecFormat { line: usize, message: String },

    #[error("speed below 1e-9 at t = {at}")]
    SingularSpeed { at: f64 },

    #[error("inflection point at t = {at}: frame undefined")]
    InflectionPoint { at: f64 },

    #[error("{which} indicatrix is degenerate (max arclength rate {max_rate:e})")]
    DegenerateIndicatrix { which: char, max_rate: f64 },

    #[error("circle fit needs samples spanning two dimensions")]
    DegenerateFit,

    #[error("spherical input leaves the unit sphere: |norm - 1| = {deviation:e} at u = {at}")]
    NonUnitInput { at: f64, deviation: f64 },

    #[error("Bertrand fit is rank deficient: solutions satisfy {kappa_mean}*A + {tau_mean}*B = 1 (residual {residual:e})")]
    RankDeficient {
        kappa_mean: f64,
        tau_mean: f64,
        a: f64,
        b: f64,
        residual: f64,
    },

    #[error("malformed CSV: {0}")]
    Csv(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code for this error: 2 for input/usage problems, 3 for numeric failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. }
            | Error::UnknownIdentifier { .. }
            | Error::Arity { .. }
            | Error::InvalidArgument(_)
            | Error::UnknownCurve(_)
            | Error::SpecFormat { .. }
            | Error::Csv(_)
            | Error::Io(_) => 2,
            _ => 3,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
