//! Exact operator algebra over `β`, `E`, `O` graded by `μ = 1/(mc²)`.
//!
//! The only rewrite rules are `β² = 1`, `βE = Eβ` and `βO = −Oβ`; `E` and
//! `O` are free. Every expression is kept in the canonical form
//! `Σ c · μ^k · β^b · w` with `w` a word over `{E, O}`.

mod expr;
mod monomial;
mod parse;
mod render;

pub use expr::OperatorExpr;
pub use monomial::{Letter, Monomial};
pub use parse::{parse, ParseError};
pub use render::render;
