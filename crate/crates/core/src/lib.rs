//! Exact computations for free divisors.
//!
//! Starting from a reduced polynomial `h` with `h(0) = 0`, this crate computes
//! logarithmic derivations, certifies freeness with Saito's determinant
//! criterion, decides the Koszul-type and linear Jacobian type predicates,
//! computes Bernstein–Sato polynomials in two independent ways, builds the
//! logarithmic Spencer complex and checks the duality `h^s <-> h^(-s-1)`, and
//! tests the symmetry `b(s) = ±b(-s-2)`.
//!
//! All arithmetic is over the rationals and exact.

pub mod bernstein;
pub mod budget;
pub mod classify;
pub mod context;
pub mod corpus;
pub(crate) mod engine;
pub mod divisor;
pub mod error;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod report;
pub mod spencer;
pub mod unipoly;
pub mod weyl;

pub use budget::{Budget, BudgetLimits};
pub use context::{Role, VariableContext};
pub use error::{Error, Result};
pub use ideal::{is_regular_sequence, lift, syzygies, GroebnerBasis, Ideal, Submodule, SyzygyBasis};
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use parse::parse_poly;
pub use poly::MultiPoly;
pub use rational::Rational;
pub use unipoly::UniPoly;
pub use weyl::{annihilator_fs, LeftIdealW, PowerAction, WeylContext, WeylElement, WeylMatrix};
pub use classify::{classify, ClassificationReport, DltMode, LjtVerdict};
pub use divisor::{certify, log_derivations, saito_check, FreeDivisor, Freeness, LogDerivation, ThetaGenerators};
