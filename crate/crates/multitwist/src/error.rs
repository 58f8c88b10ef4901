use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("pole of {what} at {at}")]
    Pole { what: String, at: Complex64 },

    #[error("argument {z} lies outside the sector |arg z| <= pi - {delta}")]
    OutsideSector { z: Complex64, delta: f64 },

    #[error("bernoulli index {0} exceeds the stored table (max 32)")]
    BernoulliIndex(usize),

    #[error("variable arity mismatch: {left} vs {right}")]
    Arity { left: usize, right: usize },

    #[error("n_max = {given} cannot certify completeness up to alpha_max = {alpha_max}; need n_max >= {required}")]
    SpectrumBound {
        given: u64,
        alpha_max: f64,
        required: u64,
    },

    #[error("alpha = {alpha} is within tolerance of distinct spectrum values {candidates:?}; give alpha as a witness vector")]
    Ambiguous { alpha: f64, candidates: Vec<f64> },

    #[error("alpha = {0} is not in the spectrum")]
    NotInSpectrum(f64),

    #[error("series cutoff insufficient: {required} terms needed, limit {limit}")]
    Cutoff { required: u64, limit: u64 },

    #[error("point lies within {distance:e} of the pole locus H*_{ell}")]
    OnPoleLocus { ell: usize, distance: f64 },

    #[error("extrapolation did not converge: {message}; difference history {history:?}")]
    Convergence { message: String, history: Vec<f64> },

    #[error("the residue of order {ell} vanishes at every sampled point")]
    Vanishing { ell: usize },

    #[error("symbolic and numeric structural invariants disagree at index {index}: symbolic {symbolic}, numeric {numeric}")]
    StructuralMismatch {
        index: usize,
        symbolic: Complex64,
        numeric: Complex64,
    },
}

impl Error {
    /// True for failures of a numerical limit process, as opposed to bad input.
    pub fn is_convergence(&self) -> bool {
        matches!(
            self,
            Error::Convergence { .. } | Error::StructuralMismatch { .. } | Error::Vanishing { .. }
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::Pole { .. } => "pole",
            Error::OutsideSector { .. } => "outside_sector",
            Error::BernoulliIndex(_) => "bernoulli_index",
            Error::Arity { .. } => "arity",
            Error::SpectrumBound { .. } => "spectrum_bound",
            Error::Ambiguous { .. } => "ambiguous_alpha",
            Error::NotInSpectrum(_) => "not_in_spectrum",
            Error::Cutoff { .. } => "cutoff",
            Error::OnPoleLocus { .. } => "on_pole_locus",
            Error::Convergence { .. } => "convergence",
            Error::StructuralMismatch { .. } => "structural_mismatch",
            Error::Vanishing { .. } => "vanishing",
        }
    }
}

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
