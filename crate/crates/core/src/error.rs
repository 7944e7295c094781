use thiserror::Error;

/// Errors raised by the evaluation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum KurepaError {
    /// Argument sits on (or within tolerance of) a pole.
    #[error("pole at z = {at}: {what}")]
    Pole { at: f64, what: &'static str },

    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
    #[error("quadrature did not converge: error estimate {estimate:e} above target {target:e} after {subdivisions} subdivisions")]
    Convergence {
        estimate: f64,
        target: f64,
        subdivisions: usize,
    },

    /// A rational sequence was evaluated on its singular set.
    #[error("singular argument: z collides with {point} (allowed exclusion set is {{0, ..., {last}}})")]
    SingularArgument { point: i64, last: i64 },
}

pub type Result<T> = std::result::Result<T, KurepaError>;
