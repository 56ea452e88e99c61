use thiserror::Error;

/// Errors produced anywhere in the crate.
///
/// Variants are grouped by the exit status the command-line front end maps
/// them to (see [`Error::exit_code`]).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("error at {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("braid closure has {components} components; only knots are supported")]
    UnsupportedLink { components: usize },

    #[error("matrix shape error: {0}")]
    Shape(String),

    #[error("degenerate evaluation point: {0}")]
    DegeneratePoint(String),

    #[error("unsupported evaluation: no colored Jones formula for atom `{0}`")]
    UnsupportedEvaluation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("out of domain: u = {re} + {im}i lies outside the tracked search box")]
    OutOfDomain { re: f64, im: f64 },

    #[error("branch degeneration near u = {re} + {im}i: the two A-polynomial roots collide")]
    BranchDegeneration { re: f64, im: f64 },

    #[error("quadrature failed to converge after {halvings} halvings (last change {last_change:e})")]
    QuadratureFailure { halvings: u32, last_change: f64 },

    #[error("singular fit: {0}")]
    SingularFit(String),

    #[error("no rule: {0}")]
    NoRule(String),

    #[error("rule not derivable: {0}")]
    RuleNotDerivable(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    /// Process exit status used by the CLI: 4 for parse errors, 2 for
    /// configuration (usage) problems, 3 for everything raised while
    /// evaluating.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 4,
            Error::Config(_) => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
