//! Exact computations with good filtrations on quotients of polynomial rings:
//! Gröbner bases, ideal operations, Hilbert series and coefficients,
//! superficial elements and checks of bounds on the second Hilbert coefficient.

pub mod coefficients;
pub mod error;
pub mod examples;
pub mod field;
pub mod filtration;
pub mod groebner;
pub mod hilbert_series;
pub mod ideal;
pub mod monomial;
pub mod oracle;
pub mod order;
pub mod parse;
pub mod poly;
pub mod report;
pub mod superficial;
pub mod task;
pub mod verifier;

pub use error::{AlgebraError, Result};
pub use field::{Coeff, CoeffField};
pub use groebner::GroebnerBasis;
pub use hilbert_series::{GradedHilbert, IntPoly, Poly2};
pub use ideal::{colength, Ideal};
pub use monomial::Monomial;
pub use order::TermOrder;
pub use parse::{parse_polynomial, ParseError};
pub use poly::{Polynomial, Ring};
pub use coefficients::{FiltrationHilbertSummary, GrPresentation, Route};
pub use filtration::{Filtration, FiltrationKind};
pub use verifier::{TheoremId, TheoremReport, Verdict, VerifyOptions};
