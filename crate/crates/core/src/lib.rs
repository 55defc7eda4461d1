//! Exact differential algebra: differential polynomial rings with commuting
//! derivations, Ritt reduction with certificates, characteristic sets,
//! coefficient specialization, and small difference-ring computations.

pub mod chevalley;
pub mod coeff;
pub mod difference;
pub mod error;
pub mod funcfield;
pub mod mpoly;
pub mod parse;
pub mod poly;
pub mod reduction;
pub mod ring;

pub use coeff::Coeff;
pub use error::{Error, Result};
pub use funcfield::{apply_specialization, wronskian, RationalFunction, Specialization};
pub use mpoly::MPoly;
pub use parse::{parse_expression, parse_lines, parse_rational_function, parse_ring};
pub use poly::{arith, h_product, ArithKind, DiffPolynomial, LeaderDecomposition, Monomial};
pub use reduction::{
    characteristic_set, coherence_check, full_reduce, is_autoreduced, membership, AutoreducedSet,
    CharacteristicSet, Membership, ReductionCertificate,
};
pub use ring::{rank_of, Base, CoefficientField, DiffVariable, Rank, RingConfig};
