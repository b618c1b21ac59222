use thiserror::Error;

/// Errors from the pose estimation pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SolveError {
    /// The summed feature weight matrix is numerically singular, so the
    /// translation cannot be eliminated. Happens for a single point alone,
    /// two lines alone, or (near-)dependent duplicates.
    #[error("degenerate feature configuration: translation weight matrix is numerically singular")]
    DegenerateConfiguration,
    /// The rank-1 loss line has no x-y components, so no unique minimizer
    /// exists on the unit circle.
    #[error("loss line is absent from the x-y plane; no unique minimizer")]
    NoSolution,
}

/// Errors from conic decomposition and line/circle intersection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ConicError {
    /// Determinant test failed: the conic is not rank-deficient within
    /// tolerance, so it cannot be split into lines.
    #[error("conic is not degenerate within tolerance")]
    NotDegenerate,
    /// All conic entries are zero; there is nothing to decompose.
    #[error("conic is numerically zero")]
    ZeroConic,
    /// The line `a x + b y + c = 0` has `a = b = 0` and does not exist in the
    /// x-y plane.
    #[error("line at infinity: a = b = 0")]
    LineAtInfinity,
}
