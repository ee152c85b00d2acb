//! Error type shared across the crate.

use thiserror::Error;

/// Unified error for all fallible operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A matrix or vector contained NaN or infinity.
    #[error("non-finite input in {0}")]
    NonFiniteInput(&'static str),

    /// Image generators handed to a quotient were not contained in the kernel.
    #[error("image generators not contained in kernel (residual {residual:.3e} > tol {tol:.3e})")]
    ImageNotInKernel { residual: f64, tol: f64 },

    /// Operation requires a closed oriented surface.
    #[error("complex is not a closed oriented surface: {0}")]
    NotClosedSurface(String),

    /// An edge with coincident endpoints.
    #[error("degenerate edge {0}: zero length")]
    DegenerateEdge(String),

    /// A cell whose realized vertex span is too low-dimensional for lifting.
    #[error("degenerate cell {0}: realized span has deficient dimension")]
    DegenerateCell(String),

    /// A cosheaf map expected to be injective has a stalk component with kernel.
    #[error("cosheaf map component over cell {0} is not injective")]
    NotInjective(String),

    /// A pair of cosheaf maps fails the short-exact-sequence condition.
    #[error("maps do not form a short exact sequence at cell {0}")]
    NotExact(String),

    /// A chain expected to be a cycle has a nonzero boundary.
    #[error("chain is not a cycle (boundary residual {residual:.3e} > tol {tol:.3e})")]
    NotACycle { residual: f64, tol: f64 },

    /// A least-squares preimage that exactness guarantees failed to materialize.
    #[error("preimage residual too large ({residual:.3e} > tol {tol:.3e}); sequence data is inconsistent")]
    PreimageResidualTooLarge { residual: f64, tol: f64 },

    /// The assembled boundary maps do not square to zero.
    #[error("boundary does not square to zero (|dd| = {0:.3e}); incidence or orientation data is bad")]
    BoundarySquareNonzero(f64),

    /// Prescribed loads admit no equilibrium cycle.
    #[error("prescribed loads are not equilibrium-compatible (residual {residual:.3e} > tol {tol:.3e})")]
    Infeasible { residual: f64, tol: f64 },

    /// Explicit Euler step size exceeds the stability bound.
    #[error("unstable step size {dt:.3e}; must be below {limit:.3e}")]
    UnstableStepSize { dt: f64, limit: f64 },

    /// A spring constant that is not strictly positive.
    #[error("non-positive spring constant {value} on edge {edge}")]
    NonPositiveWeight { edge: String, value: f64 },

    /// No usable probe point for the gradient-difference formula.
    #[error("no non-collinear probe point found for edge {0}")]
    CollinearProbePoint(String),

    /// A lift whose face functions disagree over an edge.
    #[error("lift functions fail to glue over edge {edge} (residual {residual:.3e})")]
    GluingViolated { edge: String, residual: f64 },

    /// A cell complex that fails validation.
    #[error("invalid cell complex:\n{0}")]
    InvalidComplex(String),

    /// A diagram that fails validation (realization problems).
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    /// Unknown cell id referenced somewhere.
    #[error("unknown cell id {0:?}")]
    UnknownCell(String),

    /// Malformed input file.
    #[error("schema error: {0}")]
    Schema(String),
}
