//! Exact algebra for the quantized dispersionless KdV (Hopf) hierarchy.
//!
//! The crate builds the commuting quantum Hamiltonians on the bosonic Fock
//! space, checks that scaled Schur polynomials diagonalise them, assembles the
//! disk potential as a partition sum, and verifies the KP bilinear identities,
//! the boson-fermion correspondence, the P¹ partition function and simple
//! Hurwitz numbers. Everything is exact: coefficients live in ℚ[u₀][ε, ε⁻¹]
//! with ħ = ε².

pub mod disk;
pub mod error;
pub mod fermion;
pub mod hamiltonian;
pub mod hurwitz;
pub mod kp;
pub mod laurent;
pub mod linalg;
pub mod operator;
pub mod partition;
pub mod poly;
pub mod ring;
pub mod scalar;
pub mod schur;
pub mod series;

pub use error::{Error, Result};
pub use operator::{matrix_on_weight, naive_hamiltonian, Basis, OpKey, Operator};
pub use partition::{partitions_of, partitions_up_to, syt_count, FrobeniusCoordinates, Partition};
pub use poly::{Monomial, Polynomial};
pub use ring::Ring;
pub use scalar::ExactScalar;
pub use series::{bernoulli, inv_s_series, s_series, Series};

/// Crate version, stamped into operator caches.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Arbitrary-precision rational numbers, always reduced.
pub type Rational = num_rational::BigRational;
/// Polynomials in q₁, q₂, … over ℚ[u₀][ε, ε⁻¹].
pub type FockPolynomial = Polynomial<ExactScalar>;
pub type RationalPolynomial = Polynomial<Rational>;
/// Normally ordered operators over ℚ[u₀][ε, ε⁻¹].
pub type NormalOrderedOperator = Operator<ExactScalar>;
pub type UnivariateSeries = Series<Rational>;
