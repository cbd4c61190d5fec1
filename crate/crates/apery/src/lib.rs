//! Exact invariants of numerical semigroups and verification of the
//! syzygy-degree identities satisfied by their Hilbert-series numerators.
//!
//! The crate computes, with integer arithmetic only:
//!
//! - [`semigroup`]: validated minimal generating sets, Apéry sets, Frobenius
//!   numbers, conductors and gaps;
//! - [`poly`]: sparse univariate polynomials over any exact integer scalar;
//! - [`cyclotomic`]: arithmetic in `Z[x]/Phi_q(x)`, i.e. exact computation
//!   with primitive q-th roots of unity;
//! - [`hilbert`]: the Hilbert-series numerators `p(z)` (over `1 - z`) and
//!   `k(z)` (over the product of `1 - z^d_i`) and their structural relations;
//! - [`identities`]: the real power-sum identities and the cyclotomic
//!   root-of-unity identities satisfied by the signed coefficient sequence
//!   of `k(z)`, verified exactly;
//! - [`oracle`]: deliberately naive reference implementations used for
//!   cross-checking;
//! - [`sampling`]: seeded random generation of minimal semigroups.
//!
//! Core arithmetic is generic over the scalar type through the
//! [`Coefficient`] trait; the aliases below fix the default arbitrary
//! precision instantiation.
//!
//! ```
//! use apery::{IntPolynomial, NumericalSemigroup, Limits};
//!
//! let s = NumericalSemigroup::new(&[4, 7, 9]).unwrap();
//! let profile = s.profile(Limits::default()).unwrap();
//! assert_eq!(profile.frobenius, 10);
//!
//! let k: IntPolynomial = apery::hilbert::k_polynomial(&s, Limits::default()).unwrap();
//! assert_eq!(k.to_string(), "1 - z^16 - z^18 - z^21 + z^25 + z^30");
//! ```

pub mod cyclotomic;
pub mod hilbert;
pub mod identities;
pub mod oracle;
pub mod poly;
pub mod sampling;
pub mod semigroup;

pub use cyclotomic::{Cyclotomic, CyclotomicError, CyclotomicRing};
pub use poly::{cyclotomic_poly, Coefficient, PolyError, Polynomial};
pub use semigroup::{AperySet, NumericalSemigroup, SemigroupError, SemigroupProfile};

pub use num_bigint::BigInt;

/// Exact big-integer polynomial, the default scalar instantiation.
pub type IntPolynomial = Polynomial<BigInt>;

/// Element of `Z[x]/Phi_q(x)` with big-integer coefficients, the default
/// scalar instantiation.
pub type CyclotomicElement = Cyclotomic<BigInt>;

/// Resource caps for the enumeration-backed operations.
///
/// Apéry-set storage is linear in the smallest generator and gap
/// enumeration is linear in the conductor, so both fail loudly instead of
/// exhausting memory when a cap is exceeded.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Limits {
    /// Cap on the smallest generator (the Apéry residue-node count).
    pub max_apery_nodes: u64,
    /// Cap on linear enumerations (gap scans, series truncations, oracle
    /// tables).
    pub max_enumeration: u64,
}

impl Limits {
    pub const fn default_const() -> Self {
        Limits {
            max_apery_nodes: 10_000_000,
            max_enumeration: 100_000_000,
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Self::default_const()
    }
}
