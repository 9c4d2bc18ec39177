//! Pauli-string operator algebra on the binary `(v, w)` encoding.
//!
//! Operators are sparse maps from strings to complex coefficients. On top of
//! the algebra sit truncated Heisenberg evolution ([`dynamics`]), the Lanczos
//! recursion ([`krylov`]), a translation-symmetric representation
//! ([`symmetric`]) and dense reference implementations ([`oracle`]).

pub mod dynamics;
pub mod error;
pub mod io;
pub mod krylov;
pub mod models;
pub mod operator;
pub mod oracle;
pub mod runner;
pub mod string;
pub mod symmetric;

pub use error::{PauliError, Result};
pub use operator::{Operator, TrimPolicy};
pub use string::{Bits, Pauli, PauliTerm, Phase};
pub use symmetric::SymOperator1D;
