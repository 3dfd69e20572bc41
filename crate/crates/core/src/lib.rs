//! Exact computational toolkit for the Bannai-Ito algebra.
//!
//! * [`exact`], [`poly`], [`matrix`]: rationals, Gaussian rationals, polynomials, matrices.
//! * [`bi_operator`]: shift/reflection realization of the algebra on polynomials.
//! * [`bi_poly`]: Bannai-Ito polynomials by recurrence, hypergeometric sum and eigen-solve.
//! * [`sl1`]: `sl_{-1}(2)` modules, the `osp(1|2)` Casimir and the 1D Dunkl realization.
//! * [`racah`]: Racah problem for three `sl_{-1}(2)` modules.
//! * [`dirac`]: Dunkl angular momenta, the Dunkl-Dirac operator on spinors and its symmetries.
//! * [`suite`]: seeded randomized sweeps used by the CLI and the acceptance tests.
//! * [`cli`]: the `bi-lab` command-line frontend.

pub mod bi_operator;
pub mod bi_poly;
pub mod cli;
pub mod dirac;
pub mod error;
pub mod exact;
pub mod matrix;
pub mod poly;
pub mod racah;
pub mod report;
pub mod sl1;
pub mod suite;

pub use error::{BiError, Result};
pub use exact::{GRat, Rat};
pub use poly::Poly;
pub use report::VerificationReport;
