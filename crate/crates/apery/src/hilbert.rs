//! Hilbert-series numerators of a numerical semigroup and the structural
//! relations between them.
//!
//! For a semigroup S with generators `d_1 < ... < d_m` the Hilbert series
//! `H(z) = sum_{s in S} z^s` is a rational function which this module
//! handles through two exact numerators:
//!
//! - `p(z)` with `H(z) = p(z) / (1 - z)`, built from the gap structure:
//!   `p(z) = (1 - z) * sum_{s in S, s < g} z^s + z^c` where `g` is the
//!   Frobenius number and `c = g + 1` the conductor;
//! - `k(z)` with `H(z) = k(z) / prod_i (1 - z^{d_i})`, built from the
//!   Apéry set: `k(z) = (sum_{a in Apéry} z^a) * prod_{i>=2} (1 - z^{d_i})`.
//!
//! The degree-j coefficient of `k(z)` equals the signed count of degree-j
//! syzygies of the semigroup algebra, which is what the identity checks in
//! [`crate::identities`] consume. [`consistency_check`] derives both
//! numerators by their independent routes and verifies every relation
//! tying them together, in particular `p(1) = 1` and the factorization
//! `k(z) = prod_i (1 + z + ... + z^{d_i - 1}) * (1 - z)^{m-1} * p(z)`.

use std::fmt;

use crate::poly::{Coefficient, Polynomial};
use crate::semigroup::{NumericalSemigroup, SemigroupError, SemigroupProfile};
use crate::Limits;

/// Errors from numerator construction and cross-checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HilbertError {
    Semigroup(SemigroupError),
    /// One of the structural relations failed; names the violated relation.
    /// This indicates an implementation bug, never a property of the input.
    Consistency { relation: &'static str, detail: String },
}

impl fmt::Display for HilbertError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HilbertError::Semigroup(e) => write!(f, "{e}"),
            HilbertError::Consistency { relation, detail } => {
                write!(f, "consistency failure in relation '{relation}': {detail}")
            }
        }
    }
}

impl std::error::Error for HilbertError {}

impl From<SemigroupError> for HilbertError {
    fn from(e: SemigroupError) -> Self {
        HilbertError::Semigroup(e)
    }
}

/// Both numerators of a semigroup's Hilbert series, with the profile and a
/// truncation of the series itself.
#[derive(Clone, Debug)]
pub struct HilbertData<C: Coefficient> {
    /// Numerator over `1 - z`; satisfies `p(1) = 1` and `deg p = conductor`.
    pub p_poly: Polynomial<C>,
    /// Numerator over `prod (1 - z^{d_i})`; `deg k = frobenius + sum d_i`.
    pub k_poly: Polynomial<C>,
    pub profile: SemigroupProfile,
    /// `H(z)` truncated to degree [`HilbertData::truncation_bound`].
    pub truncated_series: Polynomial<C>,
    /// `conductor + sum d_i`, strictly above `deg k`.
    pub truncation_bound: u64,
}

/// The numerator of `H(z)` over `1 - z`:
/// `p(z) = (1 - z) * sum_{s in S, s < g} z^s + z^c`, which is `1` for the
/// semigroup of all nonnegative integers.
pub fn p_polynomial<C: Coefficient>(
    s: &NumericalSemigroup,
    limits: Limits,
) -> Result<Polynomial<C>, HilbertError> {
    let apery = s.apery_set(limits)?;
    let frobenius = apery.frobenius()?;
    if frobenius < 0 {
        return Ok(Polynomial::one());
    }
    let g = frobenius as u64;
    let conductor = g + 1;
    if conductor > limits.max_enumeration {
        return Err(SemigroupError::ResourceLimit {
            what: "member enumeration below the Frobenius number",
            required: conductor,
            limit: limits.max_enumeration,
        }
        .into());
    }
    let members = Polynomial::from_pairs(
        (0..g).filter(|&x| apery.contains(x)).map(|x| (x, C::one())),
    );
    let one_minus_z = Polynomial::one_minus_monomial(1);
    Ok(one_minus_z
        .mul(&members)
        .add(&Polynomial::monomial(C::one(), conductor)))
}

/// The numerator of `H(z)` over `prod (1 - z^{d_i})`, from the Apéry set:
/// `k(z) = (sum_{a in Apéry} z^a) * prod_{i>=2} (1 - z^{d_i})`.
pub fn k_polynomial<C: Coefficient>(
    s: &NumericalSemigroup,
    limits: Limits,
) -> Result<Polynomial<C>, HilbertError> {
    let apery = s.apery_set(limits)?;
    let apery_sum =
        Polynomial::from_pairs(apery.elements().iter().map(|&a| (a, C::one())));
    let mut k = apery_sum;
    for &d in &s.generators()[1..] {
        k = k.mul(&Polynomial::one_minus_monomial(d));
    }
    Ok(k)
}

/// `H(z)` truncated to `z^bound`, by Apéry membership tests.
pub fn truncated_hilbert<C: Coefficient>(
    s: &NumericalSemigroup,
    bound: u64,
    limits: Limits,
) -> Result<Polynomial<C>, HilbertError> {
    if bound > limits.max_enumeration {
        return Err(SemigroupError::ResourceLimit {
            what: "series truncation",
            required: bound,
            limit: limits.max_enumeration,
        }
        .into());
    }
    let apery = s.apery_set(limits)?;
    Ok(Polynomial::from_pairs(
        (0..=bound).filter(|&x| apery.contains(x)).map(|x| (x, C::one())),
    ))
}

/// Builds `p` and `k` by their two independent routes and verifies every
/// structural relation between them, returning the assembled data.
///
/// Checked relations, each reported by name on failure:
/// `p(1) = 1`; `deg p = conductor`; `deg k = frobenius + sum d_i`;
/// `k * (1 - z) = p * prod (1 - z^{d_i})`;
/// `k = prod (1 + ... + z^{d_i - 1}) * (1 - z)^{m-1} * p`;
/// `(1 - z)^{m-1}` divides `k` with cofactor value `prod d_i` at `z = 1`.
pub fn consistency_check<C: Coefficient>(
    s: &NumericalSemigroup,
    limits: Limits,
) -> Result<HilbertData<C>, HilbertError> {
    let profile = s.profile(limits)?;
    let p = p_polynomial::<C>(s, limits)?;
    let k = k_polynomial::<C>(s, limits)?;
    let m = s.embedding_dimension();
    let one = C::one();

    // p(1) = 1
    let p_at_one = p.eval(&one);
    if !p_at_one.is_one() {
        return Err(fail("p(1) = 1", format!("p(1) = {p_at_one}")));
    }

    // degree formulas; deg k = frobenius + sum d_i also covers m = 1
    if p.degree() != Some(profile.conductor) {
        return Err(fail(
            "deg p = conductor",
            format!("deg p = {:?}, conductor = {}", p.degree(), profile.conductor),
        ));
    }
    let gen_sum: u64 = s.generators().iter().sum();
    let expected_k_degree = profile.frobenius as i128 + gen_sum as i128;
    if k.degree().map(|d| d as i128) != Some(expected_k_degree) {
        return Err(fail(
            "deg k = frobenius + generator sum",
            format!("deg k = {:?}, expected {expected_k_degree}", k.degree()),
        ));
    }
    if m == 1 && (p != Polynomial::one() || k != Polynomial::one()) {
        return Err(fail("p = k = 1 for the whole numbers", String::new()));
    }

    // k * (1 - z) = p * prod (1 - z^{d_i})
    let one_minus_z = Polynomial::<C>::one_minus_monomial(1);
    let denominator = s
        .generators()
        .iter()
        .fold(Polynomial::<C>::one(), |acc, &d| {
            acc.mul(&Polynomial::one_minus_monomial(d))
        });
    if k.mul(&one_minus_z) != p.mul(&denominator) {
        return Err(fail(
            "k * (1 - z) = p * prod(1 - z^d_i)",
            format!("k = {k}, p = {p}"),
        ));
    }

    // k = prod(1 + ... + z^(d_i - 1)) * (1 - z)^(m - 1) * p
    let geometric_product = s
        .generators()
        .iter()
        .fold(Polynomial::<C>::one(), |acc, &d| {
            acc.mul(&Polynomial::geometric(d))
        });
    let rebuilt = geometric_product
        .mul(&one_minus_z.pow(m as u32 - 1))
        .mul(&p);
    if rebuilt != k {
        return Err(fail(
            "k = prod(geometric) * (1 - z)^(m-1) * p",
            format!("rebuilt = {rebuilt}, k = {k}"),
        ));
    }

    // (1 - z)^(m-1) divides k; cofactor at 1 is the generator product
    let mut cofactor = k.clone();
    for _ in 0..m - 1 {
        cofactor = cofactor.div_exact(&one_minus_z).map_err(|e| {
            fail("(1 - z)^(m-1) divides k", format!("{e}"))
        })?;
    }
    let cofactor_at_one = cofactor.eval(&one);
    let gen_product: C = s.generator_product();
    if cofactor_at_one != gen_product {
        return Err(fail(
            "k / (1 - z)^(m-1) at 1 = product of generators",
            format!("got {cofactor_at_one}, expected {gen_product}"),
        ));
    }

    let truncation_bound = profile.conductor + gen_sum;
    let truncated_series = truncated_hilbert::<C>(s, truncation_bound, limits)?;
    Ok(HilbertData {
        p_poly: p,
        k_poly: k,
        profile,
        truncated_series,
        truncation_bound,
    })
}

fn fail(relation: &'static str, detail: String) -> HilbertError {
    HilbertError::Consistency { relation, detail }
}
