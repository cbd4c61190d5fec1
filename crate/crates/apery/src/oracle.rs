//! Deliberately naive reference implementations used for cross-checking.
//!
//! Everything in this module is computed from the generators alone by
//! direct dynamic programming, never through the Apéry set, so agreement
//! with the main code path is meaningful. Performance is a non-goal.

use std::fmt;

use crate::poly::{scalar_from_u64, scalar_pow, Coefficient, Polynomial};
use crate::semigroup::{NumericalSemigroup, SemigroupError};
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    Semigroup(SemigroupError),
    /// A value the oracle expected to vanish or certify did not.
    Consistency { what: &'static str, detail: String },
    /// The denominator of a series expansion has no unit constant term.
    InvalidDenominator,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::Semigroup(e) => write!(f, "{e}"),
            OracleError::Consistency { what, detail } => {
                write!(f, "oracle consistency failure ({what}): {detail}")
            }
            OracleError::InvalidDenominator => {
                write!(f, "series denominator must have constant term 1 or -1")
            }
        }
    }
}

impl std::error::Error for OracleError {}

impl From<SemigroupError> for OracleError {
    fn from(e: SemigroupError) -> Self {
        OracleError::Semigroup(e)
    }
}

/// Membership table for all values up to a bound, filled by a direct
/// dynamic-programming sweep over the generators.
#[derive(Clone, Debug)]
pub struct EnumeratedSemigroup {
    bound: u64,
    membership: Vec<bool>,
}

impl EnumeratedSemigroup {
    /// `membership[x] = (x == 0) or any(membership[x - d])` over the
    /// generators `d`.
    pub fn enumerate(
        s: &NumericalSemigroup,
        bound: u64,
        limits: Limits,
    ) -> Result<Self, OracleError> {
        if bound > limits.max_enumeration {
            return Err(SemigroupError::ResourceLimit {
                what: "oracle enumeration",
                required: bound,
                limit: limits.max_enumeration,
            }
            .into());
        }
        let n = bound as usize;
        let mut membership = vec![false; n + 1];
        membership[0] = true;
        for x in 1..=n {
            for &d in s.generators() {
                let d = d as usize;
                if d <= x && membership[x - d] {
                    membership[x] = true;
                    break;
                }
            }
        }
        Ok(EnumeratedSemigroup { bound, membership })
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Membership of `x`; callers must keep `x <= bound`.
    pub fn contains(&self, x: u64) -> bool {
        self.membership[x as usize]
    }

    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        self.membership
            .iter()
            .enumerate()
            .filter(|&(_, &m)| m)
            .map(|(x, _)| x as u64)
    }

    pub fn gaps(&self) -> impl DoubleEndedIterator<Item = u64> + '_ {
        self.membership
            .iter()
            .enumerate()
            .filter(|&(_, &m)| !m)
            .map(|(x, _)| x as u64)
    }
}

/// All gaps below `bound`, in ascending order.
pub fn oracle_gaps(
    s: &NumericalSemigroup,
    bound: u64,
    limits: Limits,
) -> Result<Vec<u64>, OracleError> {
    Ok(EnumeratedSemigroup::enumerate(s, bound, limits)?.gaps().collect())
}

/// Frobenius number by direct enumeration up to the coarse stabilization
/// bound `d_1 * d_m`, certified by a closing run of `d_1` consecutive
/// members (after which every larger integer is a member by adding `d_1`).
pub fn oracle_frobenius(s: &NumericalSemigroup, limits: Limits) -> Result<i64, OracleError> {
    let d1 = s.multiplicity();
    let bound = d1
        .checked_mul(s.max_generator())
        .ok_or(SemigroupError::Overflow)?;
    let table = EnumeratedSemigroup::enumerate(s, bound, limits)?;
    for x in bound - d1 + 1..=bound {
        if !table.contains(x) {
            return Err(OracleError::Consistency {
                what: "stabilization certificate",
                detail: format!("{x} is not a member within the closing run"),
            });
        }
    }
    let frobenius = table.gaps().next_back().map_or(-1, |g| g as i64);
    Ok(frobenius)
}

/// `sum_j c_j * j^r` over the signed numerator coefficients `c_j`, where
/// the numerator is recomputed by a second route: the truncated series
/// (from [`EnumeratedSemigroup`]) multiplied by `prod (1 - z^{d_i})`, with
/// the trailing terms above the numerator degree verified to vanish before
/// being discarded.
pub fn oracle_moment<C: Coefficient>(
    s: &NumericalSemigroup,
    r: u32,
    limits: Limits,
) -> Result<C, OracleError> {
    let k = oracle_k_polynomial::<C>(s, limits)?;
    Ok(k.terms()
        .map(|(j, c)| c.clone() * scalar_pow(&scalar_from_u64::<C>(j), r))
        .fold(C::zero(), |acc, t| acc + t))
}

/// The signed numerator over `prod (1 - z^{d_i})`, via enumeration.
pub fn oracle_k_polynomial<C: Coefficient>(
    s: &NumericalSemigroup,
    limits: Limits,
) -> Result<Polynomial<C>, OracleError> {
    let frobenius = oracle_frobenius(s, limits)?;
    let gen_sum: u64 = s.generators().iter().sum();
    let k_degree = (frobenius + gen_sum as i64) as u64;
    // Enumerating one window of width sum(d_i) past the numerator degree
    // makes every product coefficient up to the window end exact.
    let window_end = k_degree + gen_sum;
    let table = EnumeratedSemigroup::enumerate(s, window_end, limits)?;
    let series = Polynomial::from_pairs(table.members().map(|x| (x, C::one())));
    let denominator = s
        .generators()
        .iter()
        .fold(Polynomial::<C>::one(), |acc, &d| {
            acc.mul(&Polynomial::one_minus_monomial(d))
        });
    let product = series.mul(&denominator);
    let mut k = Polynomial::zero();
    for (d, c) in product.terms() {
        if d <= k_degree {
            k = k.add(&Polynomial::monomial(c.clone(), d));
        } else if d <= window_end {
            return Err(OracleError::Consistency {
                what: "vanishing of high-degree numerator terms",
                detail: format!("coefficient {c} at degree {d} (numerator degree {k_degree})"),
            });
        }
        // terms above the window end are truncation artifacts
    }
    Ok(k)
}

/// Expands `numerator / denominator` as a power series to `z^bound`, exact
/// over the integers. Requires the denominator's constant term to be a
/// unit (`1` or `-1`); the coefficients then satisfy the linear recurrence
/// `a_0 * h[t] = num[t] - sum_{e >= 1} a_e * h[t - e]`.
pub fn expand_rational<C: Coefficient>(
    numerator: &Polynomial<C>,
    denominator: &Polynomial<C>,
    bound: u64,
) -> Result<Polynomial<C>, OracleError> {
    let a0 = denominator.coefficient(0);
    let negate = if a0.is_one() {
        false
    } else if a0 == C::one().neg() {
        true
    } else {
        return Err(OracleError::InvalidDenominator);
    };
    let tail: Vec<(u64, C)> = denominator
        .terms()
        .filter(|&(e, _)| e > 0)
        .map(|(e, c)| (e, c.clone()))
        .collect();
    let n = bound as usize;
    let mut h: Vec<C> = Vec::with_capacity(n + 1);
    for t in 0..=bound {
        let mut acc = numerator.coefficient(t);
        for (e, c) in &tail {
            if *e <= t {
                acc = acc - c.clone() * h[(t - e) as usize].clone();
            }
        }
        if negate {
            acc = acc.neg();
        }
        h.push(acc);
    }
    Ok(Polynomial::from_pairs(
        h.into_iter().enumerate().map(|(d, c)| (d as u64, c)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    const LIM: Limits = Limits::default_const();

    fn sg(gens: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::new(gens).unwrap()
    }

    #[test]
    fn enumerate_two_three() {
        let t = EnumeratedSemigroup::enumerate(&sg(&[2, 3]), 6, LIM).unwrap();
        assert_eq!(t.members().collect::<Vec<_>>(), vec![0, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn enumerate_four_seven_nine() {
        let t = EnumeratedSemigroup::enumerate(&sg(&[4, 7, 9]), 11, LIM).unwrap();
        assert_eq!(t.members().collect::<Vec<_>>(), vec![0, 4, 7, 8, 9, 11]);
    }

    #[test]
    fn enumerate_bound_zero() {
        let t = EnumeratedSemigroup::enumerate(&sg(&[4, 7, 9]), 0, LIM).unwrap();
        assert_eq!(t.members().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn gaps_and_frobenius_two_three() {
        assert_eq!(oracle_gaps(&sg(&[2, 3]), 6, LIM).unwrap(), vec![1]);
        assert_eq!(oracle_frobenius(&sg(&[2, 3]), LIM).unwrap(), 1);
    }

    #[test]
    fn frobenius_four_seven_nine() {
        assert_eq!(oracle_frobenius(&sg(&[4, 7, 9]), LIM).unwrap(), 10);
    }

    #[test]
    fn frobenius_whole_numbers() {
        assert_eq!(oracle_frobenius(&sg(&[1]), LIM).unwrap(), -1);
        assert!(oracle_gaps(&sg(&[1]), 5, LIM).unwrap().is_empty());
    }

    #[test]
    fn moment_four_seven_nine() {
        let m: BigInt = oracle_moment(&sg(&[4, 7, 9]), 2, LIM).unwrap();
        assert_eq!(m, BigInt::from(504));
    }

    #[test]
    fn moment_two_three_r0() {
        let m: BigInt = oracle_moment(&sg(&[2, 3]), 0, LIM).unwrap();
        assert_eq!(m, BigInt::from(0));
    }

    #[test]
    fn moment_whole_numbers_r0() {
        let m: BigInt = oracle_moment(&sg(&[1]), 0, LIM).unwrap();
        assert_eq!(m, BigInt::from(1));
    }

    #[test]
    fn oracle_numerator_matches_known_value() {
        let k: Polynomial<BigInt> = oracle_k_polynomial(&sg(&[4, 7, 9]), LIM).unwrap();
        let expect = Polynomial::from_pairs([
            (0u64, BigInt::from(1)),
            (16, BigInt::from(-1)),
            (18, BigInt::from(-1)),
            (21, BigInt::from(-1)),
            (25, BigInt::from(1)),
            (30, BigInt::from(1)),
        ]);
        assert_eq!(k, expect);
    }

    #[test]
    fn rational_expansion_geometric() {
        // 1 / (1 - z) = 1 + z + z^2 + ...
        let h: Polynomial<BigInt> = expand_rational(
            &Polynomial::one(),
            &Polynomial::one_minus_monomial(1),
            5,
        )
        .unwrap();
        assert_eq!(h, Polynomial::geometric(6));
    }

    #[test]
    fn rational_expansion_negated_denominator() {
        // 1 / (z - 1) = -(1 + z + z^2 + ...)
        let den = Polynomial::<BigInt>::from_coeffs(&[-1, 1]);
        let h = expand_rational(&Polynomial::one(), &den, 3).unwrap();
        assert_eq!(h, Polynomial::geometric(4).neg());
    }

    #[test]
    fn rational_expansion_requires_unit_constant_term() {
        let den = Polynomial::<BigInt>::from_coeffs(&[2, 1]);
        assert_eq!(
            expand_rational(&Polynomial::one(), &den, 3),
            Err(OracleError::InvalidDenominator)
        );
    }

    #[test]
    fn expansion_recovers_hilbert_series_from_numerator() {
        let s = sg(&[4, 7, 9]);
        let k: Polynomial<BigInt> = crate::hilbert::k_polynomial(&s, LIM).unwrap();
        let den = s
            .generators()
            .iter()
            .fold(Polynomial::<BigInt>::one(), |acc, &d| {
                acc.mul(&Polynomial::one_minus_monomial(d))
            });
        let h = expand_rational(&k, &den, 30).unwrap();
        let table = EnumeratedSemigroup::enumerate(&s, 30, LIM).unwrap();
        let brute = Polynomial::from_pairs(table.members().map(|x| (x, BigInt::from(1))));
        assert_eq!(h, brute);
    }
}
