use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("field tower would exceed two quadratic extensions over Q(i)")]
    TowerDepthExceeded,

    #[error("irreducible factor of degree {degree} needs an extension outside the supported tower{}", chart_suffix(.chart))]
    UnsupportedExtensionDegree { degree: usize, chart: Option<String> },

    #[error("elements live in incompatible field towers")]
    IncompatibleFields,

    #[error("reduction exceeded maximal depth {max_depth} at {chart}")]
    ResolutionDepthExceeded { max_depth: usize, chart: String },

    #[error("curve is not invariant by the foliation")]
    CurveNotInvariant,

    #[error("residue is not isolated: the foliation is singular along the curve")]
    NonIsolatedResidue,

    #[error("no separatrix candidate succeeded: {0}")]
    NoSeparatrixCandidate(String),

    #[error("no ramification exponent d <= {0} gives a free-only simple reduction")]
    NoRegularRamificationFound(u32),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("input does not vanish at the origin")]
    NonZeroConstantTerm,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

fn chart_suffix(chart: &Option<String>) -> String {
    match chart {
        Some(c) => format!(" (chart {c})"),
        None => String::new(),
    }
}

impl Error {
    pub fn unsupported(degree: usize) -> Self {
        Error::UnsupportedExtensionDegree { degree, chart: None }
    }

    /// Attaches a chart path to domain errors that carry one.
    pub fn at_chart(self, path: &str) -> Self {
        match self {
            Error::UnsupportedExtensionDegree { degree, chart: None } => {
                Error::UnsupportedExtensionDegree { degree, chart: Some(path.to_string()) }
            }
            other => other,
        }
    }

    pub fn is_parse_error(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::NonZeroConstantTerm | Error::InvalidInput(_))
    }
}
