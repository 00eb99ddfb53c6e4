//! Karhunen-Loève eigenstructure of the Wiener process and three of its
//! relatives (demeaned, detrended, Brownian bridge), with the tooling needed
//! to check it from several independent directions:
//!
//! * [`series`]: the classical partial sums around ζ(2) (triangular numbers,
//!   odd squares, Leibniz, Bernoulli and Estermann residuals).
//! * [`kernels`]: closed-form covariance kernels and Gram matrices.
//! * [`eigen`]: analytic eigenvalues/eigenfunctions, including the roots of
//!   `J_{3/2}` used by the detrended kernel.
//! * [`fredholm`]: a Nyström solver of the Fredholm equation used as an
//!   oracle for [`eigen`].
//! * [`mercer`]: Mercer partial sums and three routes to ζ(2) = π²/6.
//! * [`simulate`]: truncated KL Monte Carlo with covariance checks.
//!
//! Numerical building blocks ([`quadrature`], [`linalg`], [`rng`],
//! [`numeric`]) and output rendering ([`table`]) are public so that the CLI
//! and the benches can reuse them.

pub mod eigen;
pub mod error;
pub mod fredholm;
pub mod kernels;
pub mod linalg;
pub mod mercer;
pub mod numeric;
pub mod quadrature;
pub mod rng;
pub mod series;
pub mod simulate;
pub mod table;

pub use eigen::{bessel_root, capital_lambda, eigenfunction, eigenvalue, BesselRoot, Branch, EigenPair};
pub use error::{Error, Result};
pub use fredholm::{compare_eigenpairs, nystrom_solve, EigenComparison, EigenComparisonRow, NystromSolution};
pub use kernels::{gram, GramMatrix, KernelKind};
pub use mercer::{basel_estimate, mercer_partial, proof_tail_bound, ConvergenceReport, ConvergenceRow, ProofId};
pub use series::{PartialSum, ResidualSequenceEntry};
pub use simulate::{
    covariance_test, empirical_covariance, sample_paths, CovarianceCheck, CovarianceReport, PathEnsemble,
    SimulationConfig,
};
pub use table::{OutputFormat, Table};
