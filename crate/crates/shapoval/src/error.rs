use std::fmt;

/// Errors surfaced by the library. Variants map onto the process exit codes
/// used by the CLI: hypothesis violations (2), exceeded caps / undecided
/// classifications (3), and malformed input (4).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShapError {
    /// Attempt to invert zero or divide by a zero field element.
    DivisionByZero,
    /// normalize_unit on the zero polynomial.
    NormalizeZero,
    /// r_p requested at an index where the bicharacter is not p-finite.
    ReflectionUndefined { index: usize },
    /// Orbit construction met a non-p-finite object.
    NotInX2 { object: usize, index: usize },
    /// Orbit enumeration exceeded the object cap.
    OrbitCapExceeded,
    /// Root enumeration exceeded the word-length or state cap.
    RootCapExceeded,
    /// Pullback along a matrix that is not invertible over the integers.
    NonUnimodular,
    /// beta_sequence on a word that is not reduced.
    NonReducedWord,
    /// A weight that was expected to be a positive root is not one.
    NotARoot(String),
    /// The determinant formula requires chi(beta, beta) != 1 on all
    /// positive roots.
    HypothesisViolated { beta: Vec<i64> },
    /// An operation that needs a finite root system was given an
    /// infinite one.
    RootSystemNotFinite,
    /// b^chi(alpha_p) is infinite where a finite bound is required.
    InfiniteBound { index: usize },
    /// Verma irreducibility criterion invoked outside X4.
    NotX4,
    /// Two distinct positive roots are rational multiples of each other,
    /// so a single vanishing hyperplane cannot be isolated.
    ParallelRoots,
    /// Hyperplane weight construction ran out of candidates.
    ConstructionFailed(String),
    /// hw_coeff_check called with a weight outside the stated regime.
    RegimeViolation(String),
    /// Classification could not be decided within the caps.
    Undecided(String),
    /// Malformed input data.
    BadInput(String),
}

impl fmt::Display for ShapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapError::DivisionByZero => write!(f, "division by zero"),
            ShapError::NormalizeZero => write!(f, "cannot normalize the zero polynomial"),
            ShapError::ReflectionUndefined { index } => {
                write!(f, "reflection undefined at index {}", index + 1)
            }
            ShapError::NotInX2 { object, index } => {
                write!(f, "not in X2 at object {}/index {}", object, index + 1)
            }
            ShapError::OrbitCapExceeded => {
                write!(f, "cap exceeded: orbit possibly infinite")
            }
            ShapError::RootCapExceeded => {
                write!(f, "cap exceeded: root system possibly infinite")
            }
            ShapError::NonUnimodular => write!(f, "matrix is not unimodular"),
            ShapError::NonReducedWord => write!(f, "word is not reduced"),
            ShapError::NotARoot(s) => write!(f, "{} is not a positive root", s),
            ShapError::HypothesisViolated { beta } => {
                write!(f, "hypothesis chi(beta,beta) != 1 violated at beta = {:?}", beta)
            }
            ShapError::RootSystemNotFinite => write!(f, "root system not finite"),
            ShapError::InfiniteBound { index } => {
                write!(f, "infinite bound at index {}", index + 1)
            }
            ShapError::NotX4 => write!(f, "criterion requires a bicharacter in X4"),
            ShapError::ParallelRoots => {
                write!(f, "parallel roots: cannot isolate hyperplane")
            }
            ShapError::ConstructionFailed(s) => write!(f, "construction failed: {}", s),
            ShapError::RegimeViolation(s) => write!(f, "regime violation: {}", s),
            ShapError::Undecided(s) => write!(f, "undecided: {}", s),
            ShapError::BadInput(s) => write!(f, "bad input: {}", s),
        }
    }
}

impl std::error::Error for ShapError {}

pub type Result<T> = std::result::Result<T, ShapError>;
