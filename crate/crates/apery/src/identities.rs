//! Exact verification of the identities satisfied by the signed syzygy
//! degrees of a numerical semigroup.
//!
//! Writing `c_j` for the degree-j coefficient of the numerator `k(z)`
//! (equivalently the signed count of degree-j syzygies), two families of
//! identities hold for a semigroup with `m` minimal generators:
//!
//! - real power sums: `sum_j c_j * j^r = 0` for `r = 0, ..., m-2`, and
//!   `sum_j c_j * j^(m-1) = (-1)^(m-1) * (m-1)! * prod d_i`;
//! - cyclotomic sums: for every modulus `q` with `2 <= q <= d_m` dividing
//!   `w_q > 0` of the generators, and every `n` coprime to `q`,
//!   `sum_j c_j * j^r * zeta^(n*j) = 0` for `r = 0, ..., w_q - 1`, where
//!   `zeta` is a primitive q-th root of unity.
//!
//! All checks are exact: integer equality for the real family, exact zero
//! tests in `Z[x]/Phi_q(x)` for the cyclotomic family. A failed check is
//! surfaced as a non-recoverable [`IdentityError::Violation`] carrying a
//! full diagnostic dump, because the identities are theorems: any failure
//! indicts the implementation, not the input. The convention `0^0 = 1`
//! applies throughout.

use std::fmt;

use crate::cyclotomic::{Cyclotomic, CyclotomicRing};
use crate::hilbert::{k_polynomial, HilbertError};
use crate::poly::{scalar_from_u64, scalar_pow, Coefficient, Polynomial};
use crate::semigroup::{NumericalSemigroup, SemigroupError};
use crate::Limits;

/// Errors from identity verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityError {
    Semigroup(SemigroupError),
    Hilbert(HilbertError),
    /// `q` outside `[2, d_m]`. `q = 1` is rejected explicitly: with
    /// `zeta = 1` and `w_1 = m` the r = m-1 case would contradict the
    /// nonzero factorial-product identity.
    InvalidQ { q: u64, max_generator: u64 },
    /// `gcd(n, q) != 1`.
    NotCoprime { n: i64, q: u64 },
    /// No generator is divisible by `q`, so no identity is claimed.
    ZeroWq { q: u64 },
    /// A malformed syzygy multiplicity table.
    InvalidBettiTable { reason: String },
    /// A supplied table disagrees with the semigroup's numerator at some
    /// degree.
    BettiMismatch {
        degree: u64,
        from_table: String,
        from_semigroup: String,
    },
    /// An identity check failed. Non-recoverable; carries the full dump.
    Violation(Box<ViolationDump>),
}

/// Diagnostic payload for a failed identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolationDump {
    pub generators: Vec<u64>,
    pub kind: CheckKind,
    pub r: u32,
    pub q: Option<u64>,
    pub n: Option<u64>,
    pub expected: String,
    pub computed: String,
    pub sequence: String,
}

impl fmt::Display for IdentityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityError::Semigroup(e) => write!(f, "{e}"),
            IdentityError::Hilbert(e) => write!(f, "{e}"),
            IdentityError::InvalidQ { q, max_generator } => {
                write!(f, "q must lie in [2, {max_generator}], got {q}")
            }
            IdentityError::NotCoprime { n, q } => {
                write!(f, "n = {n} is not coprime to q = {q}")
            }
            IdentityError::ZeroWq { q } => {
                write!(f, "w_q = 0: no generator is divisible by q = {q}")
            }
            IdentityError::InvalidBettiTable { reason } => {
                write!(f, "invalid syzygy table: {reason}")
            }
            IdentityError::BettiMismatch { degree, from_table, from_semigroup } => write!(
                f,
                "syzygy table disagrees with the numerator at degree {degree}: \
                 table gives {from_table}, semigroup gives {from_semigroup}"
            ),
            IdentityError::Violation(dump) => {
                writeln!(f, "identity violation (implementation bug)")?;
                writeln!(f, "  semigroup: {:?}", dump.generators)?;
                writeln!(f, "  kind: {:?}  r = {}", dump.kind, dump.r)?;
                if let Some(q) = dump.q {
                    writeln!(f, "  q = {q}  n = {}", dump.n.unwrap_or(0))?;
                }
                writeln!(f, "  expected: {}", dump.expected)?;
                writeln!(f, "  computed: {}", dump.computed)?;
                write!(f, "  sequence: {}", dump.sequence)
            }
        }
    }
}

impl std::error::Error for IdentityError {}

impl From<SemigroupError> for IdentityError {
    fn from(e: SemigroupError) -> Self {
        IdentityError::Semigroup(e)
    }
}

impl From<HilbertError> for IdentityError {
    fn from(e: HilbertError) -> Self {
        match e {
            HilbertError::Semigroup(s) => IdentityError::Semigroup(s),
            other => IdentityError::Hilbert(other),
        }
    }
}

/// One entry of a graded syzygy multiplicity table: `multiplicity` many
/// syzygies of degree `degree` in homological position `index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiEntry {
    pub index: u32,
    pub degree: u64,
    pub multiplicity: u64,
}

/// A user-supplied table of graded syzygy multiplicities.
///
/// Only the signed collapse `sum_i (-1)^i beta_{i,j}` per degree enters the
/// identities, so the table is accepted as optional external input and
/// never computed here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    entries: Vec<BettiEntry>,
}

impl BettiTable {
    /// Validates: multiplicities positive, `(index, degree)` pairs
    /// distinct, and the mandatory entry `beta_{0,0} = 1` present.
    pub fn new(mut entries: Vec<BettiEntry>) -> Result<Self, IdentityError> {
        entries.sort_by_key(|e| (e.index, e.degree));
        for e in &entries {
            if e.multiplicity == 0 {
                return Err(IdentityError::InvalidBettiTable {
                    reason: format!("zero multiplicity at (i, j) = ({}, {})", e.index, e.degree),
                });
            }
        }
        for w in entries.windows(2) {
            if w[0].index == w[1].index && w[0].degree == w[1].degree {
                return Err(IdentityError::InvalidBettiTable {
                    reason: format!(
                        "duplicate (i, j) = ({}, {})",
                        w[0].index, w[0].degree
                    ),
                });
            }
        }
        let has_unit = entries
            .iter()
            .any(|e| e.index == 0 && e.degree == 0 && e.multiplicity == 1);
        if !has_unit {
            return Err(IdentityError::InvalidBettiTable {
                reason: "the entry (0, 0) with multiplicity 1 is required".into(),
            });
        }
        Ok(BettiTable { entries })
    }

    pub fn entries(&self) -> &[BettiEntry] {
        &self.entries
    }
}

/// The nonzero signed degree coefficients `c_j = sum_i (-1)^i beta_{i,j}`,
/// sorted by degree. These are exactly the coefficients of `k(z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedDegreeSequence<C: Coefficient> {
    terms: Vec<(u64, C)>,
}

impl<C: Coefficient> SignedDegreeSequence<C> {
    /// From the semigroup, via its `k(z)` numerator.
    pub fn from_semigroup(
        s: &NumericalSemigroup,
        limits: Limits,
    ) -> Result<Self, IdentityError> {
        Ok(Self::from_polynomial(&k_polynomial(s, limits)?))
    }

    pub fn from_polynomial(k: &Polynomial<C>) -> Self {
        SignedDegreeSequence {
            terms: k.terms().map(|(d, c)| (d, c.clone())).collect(),
        }
    }

    /// From a multiplicity table, by the signed collapse per degree.
    pub fn from_table(table: &BettiTable) -> Self {
        let mut k = Polynomial::<C>::zero();
        for e in table.entries() {
            let mut c = scalar_from_u64::<C>(e.multiplicity);
            if e.index % 2 == 1 {
                c = c.neg();
            }
            k = k.add(&Polynomial::monomial(c, e.degree));
        }
        Self::from_polynomial(&k)
    }

    /// From a table cross-checked degree-by-degree against the semigroup's
    /// own numerator.
    pub fn from_table_checked(
        table: &BettiTable,
        s: &NumericalSemigroup,
        limits: Limits,
    ) -> Result<Self, IdentityError> {
        let from_table = Self::from_table(table);
        let from_semigroup = Self::from_semigroup(s, limits)?;
        let mut degrees: Vec<u64> = from_table
            .terms
            .iter()
            .chain(&from_semigroup.terms)
            .map(|&(d, _)| d)
            .collect();
        degrees.sort_unstable();
        degrees.dedup();
        for d in degrees {
            let a = from_table.coefficient(d);
            let b = from_semigroup.coefficient(d);
            if a != b {
                return Err(IdentityError::BettiMismatch {
                    degree: d,
                    from_table: a.to_string(),
                    from_semigroup: b.to_string(),
                });
            }
        }
        Ok(from_table)
    }

    pub fn terms(&self) -> &[(u64, C)] {
        &self.terms
    }

    fn coefficient(&self, degree: u64) -> C {
        self.terms
            .iter()
            .find(|&&(d, _)| d == degree)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(C::zero)
    }

    /// The exact moment `sum_j c_j * j^r`, with `0^0 = 1`.
    pub fn moment(&self, r: u32) -> C {
        self.terms
            .iter()
            .map(|(j, c)| c.clone() * scalar_pow(&scalar_from_u64::<C>(*j), r))
            .fold(C::zero(), |acc, t| acc + t)
    }

    fn render(&self) -> String {
        let pairs: Vec<String> = self
            .terms
            .iter()
            .map(|(d, c)| format!("({d}, {c})"))
            .collect();
        format!("[{}]", pairs.join(", "))
    }
}

/// Number of generators divisible by `q` (all of them for `q = 1`).
pub fn w_count(s: &NumericalSemigroup, q: u64) -> usize {
    assert!(q >= 1, "w_count: q must be positive");
    s.generators().iter().filter(|&&d| d % q == 0).count()
}

/// Which family a check belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Real,
    Cyclotomic,
}

/// An exact value appearing in a check: an integer or a reduced cyclotomic
/// representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckValue<C: Coefficient> {
    Integer(C),
    Cyclotomic { order: u64, coeffs: Vec<C> },
}

impl<C: Coefficient> CheckValue<C> {
    fn from_cyclotomic(e: &Cyclotomic<C>) -> Self {
        CheckValue::Cyclotomic {
            order: e.order(),
            coeffs: e.coefficients().to_vec(),
        }
    }
}

impl<C: Coefficient> fmt::Display for CheckValue<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckValue::Integer(v) => write!(f, "{v}"),
            CheckValue::Cyclotomic { order, coeffs } => {
                write!(f, "zeta_{order}:[")?;
                for (i, c) in coeffs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// One verified identity instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck<C: Coefficient> {
    pub kind: CheckKind,
    pub r: u32,
    pub q: Option<u64>,
    pub n: Option<u64>,
    pub expected: CheckValue<C>,
    pub computed: CheckValue<C>,
    pub pass: bool,
}

/// Structured verdicts for a batch of identity checks, sorted by
/// `(q, n, r)` so that reports are order-independent.
#[derive(Clone, Debug, Default)]
pub struct IdentityReport<C: Coefficient> {
    pub checks: Vec<IdentityCheck<C>>,
}

impl<C: Coefficient> IdentityReport<C> {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

/// Verifies the real power-sum identities from the semigroup itself.
pub fn verify_theorem1<C: Coefficient>(
    s: &NumericalSemigroup,
    limits: Limits,
) -> Result<IdentityReport<C>, IdentityError> {
    let seq = SignedDegreeSequence::from_semigroup(s, limits)?;
    verify_theorem1_on(&seq, s)
}

/// Verifies the real power-sum identities on a precomputed sequence:
/// vanishing moments for `r <= m - 2` and the factorial-product value at
/// `r = m - 1`.
pub fn verify_theorem1_on<C: Coefficient>(
    seq: &SignedDegreeSequence<C>,
    s: &NumericalSemigroup,
) -> Result<IdentityReport<C>, IdentityError> {
    let m = s.embedding_dimension() as u32;
    let mut checks = Vec::with_capacity(m as usize);
    for r in 0..m {
        let expected = if r < m - 1 {
            C::zero()
        } else {
            // (-1)^(m-1) * (m-1)! * prod d_i
            let mut v: C = s.generator_product();
            for f in 2..m as u64 {
                v = v * scalar_from_u64::<C>(f);
            }
            if (m - 1) % 2 == 1 {
                v = v.neg();
            }
            v
        };
        let computed = seq.moment(r);
        let pass = computed == expected;
        let check = IdentityCheck {
            kind: CheckKind::Real,
            r,
            q: None,
            n: None,
            expected: CheckValue::Integer(expected),
            computed: CheckValue::Integer(computed),
            pass,
        };
        if !pass {
            return Err(violation(s, seq, &check));
        }
        checks.push(check);
    }
    Ok(IdentityReport { checks })
}

/// Verifies the cyclotomic identity for a single `(q, n)` pair, for every
/// `r` in `[0, w_q - 1]`. `n` may be any integer coprime to `q` and is
/// reduced mod `q`.
pub fn verify_theorem2<C: Coefficient>(
    s: &NumericalSemigroup,
    q: u64,
    n: i64,
    limits: Limits,
) -> Result<IdentityReport<C>, IdentityError> {
    let seq = SignedDegreeSequence::from_semigroup(s, limits)?;
    verify_theorem2_on(&seq, s, q, n)
}

/// Single-pair cyclotomic verification on a precomputed sequence.
pub fn verify_theorem2_on<C: Coefficient>(
    seq: &SignedDegreeSequence<C>,
    s: &NumericalSemigroup,
    q: u64,
    n: i64,
) -> Result<IdentityReport<C>, IdentityError> {
    validate_q(s, q)?;
    let n_red = n.rem_euclid(q as i64) as u64;
    if num_integer::gcd(n_red, q) != 1 {
        return Err(IdentityError::NotCoprime { n, q });
    }
    let checks = checks_for_modulus(seq, s, q, &[n_red])?;
    Ok(IdentityReport { checks })
}

/// Verifies the cyclotomic identities for every admissible modulus and
/// every coprime residue: `q` over `[2, d_m]` with `w_q > 0`, `n` over all
/// of `[1, q)` coprime to `q`. The aggregated report is sorted by
/// `(q, n, r)`.
pub fn verify_theorem2_all<C: Coefficient>(
    s: &NumericalSemigroup,
    limits: Limits,
) -> Result<IdentityReport<C>, IdentityError> {
    let seq = SignedDegreeSequence::from_semigroup(s, limits)?;
    verify_theorem2_all_on(&seq, s)
}

/// Full-range cyclotomic verification on a precomputed sequence.
pub fn verify_theorem2_all_on<C: Coefficient>(
    seq: &SignedDegreeSequence<C>,
    s: &NumericalSemigroup,
) -> Result<IdentityReport<C>, IdentityError> {
    let mut checks = Vec::new();
    for q in 2..=s.max_generator() {
        if w_count(s, q) == 0 {
            continue;
        }
        let ns: Vec<u64> = (1..q).filter(|&n| num_integer::gcd(n, q) == 1).collect();
        checks.extend(checks_for_modulus(seq, s, q, &ns)?);
    }
    Ok(IdentityReport { checks })
}

fn validate_q(s: &NumericalSemigroup, q: u64) -> Result<(), IdentityError> {
    if q < 2 || q > s.max_generator() {
        return Err(IdentityError::InvalidQ {
            q,
            max_generator: s.max_generator(),
        });
    }
    Ok(())
}

/// Runs the order-`q` checks for the given reduced residues.
///
/// The sum `sum_j c_j * j^r * zeta^(n*j)` is assembled per residue class:
/// `u[b][r] = sum_{j = b mod q} c_j * j^r` is computed once per modulus,
/// and each `(n, r)` check reduces `sum_b u[b][r] * x^(n*b mod q)` modulo
/// `Phi_q` and tests the result for zero.
fn checks_for_modulus<C: Coefficient>(
    seq: &SignedDegreeSequence<C>,
    s: &NumericalSemigroup,
    q: u64,
    ns: &[u64],
) -> Result<Vec<IdentityCheck<C>>, IdentityError> {
    validate_q(s, q)?;
    let w = w_count(s, q) as u32;
    if w == 0 {
        return Err(IdentityError::ZeroWq { q });
    }
    let ring = CyclotomicRing::<C>::new(q).expect("q >= 2");
    let zero = ring.zero();

    // residue-class power sums u[b][r]
    let qs = q as usize;
    let mut residue_sums: Vec<Vec<C>> = vec![vec![C::zero(); w as usize]; qs];
    for (j, c) in seq.terms() {
        let b = (j % q) as usize;
        let j_scalar = scalar_from_u64::<C>(*j);
        let mut power = C::one();
        for r in 0..w as usize {
            let cur = std::mem::replace(&mut residue_sums[b][r], C::zero());
            residue_sums[b][r] = cur + c.clone() * power.clone();
            power = power * j_scalar.clone();
        }
    }

    let mut checks = Vec::with_capacity(ns.len() * w as usize);
    for &n in ns {
        for r in 0..w {
            let mut v = vec![C::zero(); qs];
            for (b, sums) in residue_sums.iter().enumerate() {
                let e = ((n as u128 * b as u128) % q as u128) as usize;
                let cur = std::mem::replace(&mut v[e], C::zero());
                v[e] = cur + sums[r as usize].clone();
            }
            let computed = ring.reduce_vec(v);
            let pass = computed.is_zero();
            let check = IdentityCheck {
                kind: CheckKind::Cyclotomic,
                r,
                q: Some(q),
                n: Some(n),
                expected: CheckValue::from_cyclotomic(&zero),
                computed: CheckValue::from_cyclotomic(&computed),
                pass,
            };
            if !pass {
                return Err(violation(s, seq, &check));
            }
            checks.push(check);
        }
    }
    Ok(checks)
}

fn violation<C: Coefficient>(
    s: &NumericalSemigroup,
    seq: &SignedDegreeSequence<C>,
    check: &IdentityCheck<C>,
) -> IdentityError {
    IdentityError::Violation(Box::new(ViolationDump {
        generators: s.generators().to_vec(),
        kind: check.kind,
        r: check.r,
        q: check.q,
        n: check.n,
        expected: check.expected.to_string(),
        computed: check.computed.to_string(),
        sequence: seq.render(),
    }))
}
