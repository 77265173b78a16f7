//! Exact computations around nesting maps of Grassmannians.
//!
//! * [`ffield`]: finite fields GF(p^k) and row reduction.
//! * [`grassmann`]: enumeration of Gr(i, F^n) and the nesting incidence.
//! * [`nesting`]: bijective nesting maps via matching, Hall diagnostics, the
//!   symplectic perp map and the linear classifier.
//! * [`upoly`]: univariate polynomials over Z and Q.
//! * [`chern`]: truncated Chern-class algebra, the θ identities and the gcd
//!   certificate.
//! * [`schwz`]: Schwarzenberger integrality, cyclotomic candidates and the
//!   split classification.

pub mod ffield;
pub mod grassmann;
pub mod nesting;
pub mod schwz;
pub mod upoly;
pub mod chern;

pub use ffield::{FieldError, FieldSpec, Ffe, MatGF};
pub use grassmann::{GrassmannError, GrassmannTable, NestingIncidence, Subspace};
pub use nesting::{AlternatingForm, HallReport, Matching, NestingError};
pub use chern::{ChernError, CertificateChain, Obstruction, TruncPoly};
pub use schwz::{ChernCandidate, PowerSums, SchwzError, SchwzReport, SplitTable};
pub use upoly::{IntPoly, UniPolyQ};
