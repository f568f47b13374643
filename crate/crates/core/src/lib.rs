//! Order series of Wixarika posets.
//!
//! Posets generated from the one-point poset by concatenation (`*`) and the
//! handle operation `D` have order series with nonnegative integer
//! coefficients in the chain basis `z_n = x^n / (1 - x)^(n + 1)`. This crate
//! builds those posets, evaluates their series exactly, decides whether a
//! given series comes from such a poset, and maps posets to combinations of
//! Riemann zeta values.

pub mod cli;
pub mod error;
pub mod lang;
pub mod poset;
pub mod represent;
pub mod series;
pub mod zeta;

pub use error::{ParseError, PosetError, SearchError, SeriesError, ZetaError};
pub use lang::{enumerate_terms, Term, TermStats};
pub use poset::{HasseData, Limits, Poset};

pub use series::{ChainSeries, HStarVector};

pub use represent::{RepReport, SearchConfig, WixInvariants};
pub use zeta::ZetaNumber;
