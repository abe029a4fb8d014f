use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    /// The symbol of the coefficient field vanishes (numerically) somewhere
    /// on the torus, so the Laurent operator has no bounded inverse.
    #[error("symbol vanishes: min |symbol| = {min_modulus:e} below floor {floor:e}")]
    SymbolVanishes { min_modulus: f64, floor: f64 },

    #[error("Wiener inversion did not converge: grid {grid} per axis, tail estimate {tail:e} > tolerance {tolerance:e}")]
    NoConvergence { grid: usize, tail: f64, tolerance: f64 },

    #[error("singular circulant: min |eigenvalue| = {min_modulus:e} below floor {floor:e}")]
    SingularCirculant { min_modulus: f64, floor: f64 },

    #[error("invalid interval: lower end {lo} exceeds upper end {hi}")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("quadrature error estimate {error:e} exceeds tolerance {tolerance:e}")]
    QuadratureFailure { error: f64, tolerance: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
