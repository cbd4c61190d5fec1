//! Sparse univariate polynomial arithmetic over exact integer scalars.
//!
//! Everything here is exact: coefficients live in a signed integer ring
//! (any [`Coefficient`] type, `BigInt` by default), there is no floating
//! point, and division is only offered in its exact form. The polynomials
//! are kept sparse because the numerators handled by this crate have few
//! terms but degrees up to the conductor plus the generator sum.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed};

/// Scalar trait for all exact arithmetic in this crate.
///
/// Implemented by any signed integer type with Euclidean division:
/// `num_bigint::BigInt` (the default instantiation, see
/// [`crate::IntPolynomial`]) as well as `i64`/`i128` for small inputs.
pub trait Coefficient:
    Integer + Signed + FromPrimitive + Clone + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

impl<T> Coefficient for T where
    T: Integer + Signed + FromPrimitive + Clone + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

/// Lossless conversion from `u64`; panics only when the scalar type is too
/// narrow for the value (never for `BigInt`).
pub(crate) fn scalar_from_u64<C: Coefficient>(x: u64) -> C {
    C::from_u64(x).expect("value exceeds the range of the scalar type")
}

pub(crate) fn scalar_from_i64<C: Coefficient>(x: i64) -> C {
    C::from_i64(x).expect("value exceeds the range of the scalar type")
}

/// `base^exp` by repeated multiplication, with `x^0 = 1` (also for `x = 0`).
pub(crate) fn scalar_pow<C: Coefficient>(base: &C, exp: u32) -> C {
    let mut acc = C::one();
    for _ in 0..exp {
        acc = acc * base.clone();
    }
    acc
}

/// Errors from polynomial division.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// The divisor does not divide the dividend over the integers.
    InexactDivision,
    /// Division by the zero polynomial.
    DivisionByZero,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::InexactDivision => write!(f, "inexact polynomial division"),
            PolyError::DivisionByZero => write!(f, "polynomial division by zero"),
        }
    }
}

impl std::error::Error for PolyError {}

/// Above this result degree, multiplication falls back to a sparse
/// accumulator map instead of a dense coefficient vector.
const DENSE_MUL_LIMIT: u64 = 1 << 21;

/// A sparse univariate polynomial with exact integer coefficients.
///
/// Invariant: no zero coefficient is ever stored, so the zero polynomial
/// has an empty term map and [`Polynomial::degree`] returns `None` for it.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<C: Coefficient> {
    terms: BTreeMap<u64, C>,
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0)
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * z^degree`; the zero polynomial when `c = 0`.
    pub fn monomial(c: C, degree: u64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(degree, c);
        }
        Polynomial { terms }
    }

    /// Builds a polynomial from `(degree, coefficient)` pairs, accumulating
    /// duplicates and pruning zeros.
    pub fn from_pairs<I: IntoIterator<Item = (u64, C)>>(pairs: I) -> Self {
        let mut terms: BTreeMap<u64, C> = BTreeMap::new();
        for (d, c) in pairs {
            if c.is_zero() {
                continue;
            }
            match terms.entry(d) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().clone() + c;
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        Polynomial { terms }
    }

    /// Convenience constructor from dense `i64` coefficients, index = degree.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_pairs(
            coeffs
                .iter()
                .enumerate()
                .map(|(d, &c)| (d as u64, scalar_from_i64(c))),
        )
    }

    /// `1 + z + ... + z^(len-1)`; the zero polynomial for `len = 0`.
    pub fn geometric(len: u64) -> Self {
        Self::from_pairs((0..len).map(|d| (d, C::one())))
    }

    /// `1 - z^d`.
    pub fn one_minus_monomial(d: u64) -> Self {
        Self::from_pairs([(0, C::one()), (d, C::one().neg())])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coefficient(&self) -> Option<&C> {
        self.terms.values().next_back()
    }

    /// The coefficient of `z^degree` (zero if absent), cloned.
    pub fn coefficient(&self, degree: u64) -> C {
        self.terms.get(&degree).cloned().unwrap_or_else(C::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending degree order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &C)> {
        self.terms.iter().map(|(&d, c)| (d, c))
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            terms: self.terms.iter().map(|(&d, c)| (d, c.clone().neg())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&d, c) in &other.terms {
            match terms.entry(d) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().clone() + c.clone();
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        Polynomial { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let result_degree = self.degree().unwrap() + other.degree().unwrap();
        if result_degree < DENSE_MUL_LIMIT {
            self.mul_dense(other, result_degree)
        } else {
            self.mul_sparse(other)
        }
    }

    fn mul_dense(&self, other: &Self, result_degree: u64) -> Self {
        let mut acc: Vec<C> = vec![C::zero(); result_degree as usize + 1];
        for (&da, ca) in &self.terms {
            for (&db, cb) in &other.terms {
                let idx = (da + db) as usize;
                let prod = ca.clone() * cb.clone();
                let cur = std::mem::replace(&mut acc[idx], C::zero());
                acc[idx] = cur + prod;
            }
        }
        Self::from_pairs(acc.into_iter().enumerate().map(|(d, c)| (d as u64, c)))
    }

    fn mul_sparse(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<u64, C> = BTreeMap::new();
        for (&da, ca) in &self.terms {
            for (&db, cb) in &other.terms {
                let d = da + db;
                let prod = ca.clone() * cb.clone();
                match terms.entry(d) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let sum = e.get().clone() + prod;
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                }
            }
        }
        Polynomial { terms }
    }

    pub fn mul_scalar(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(&d, t)| (d, t.clone() * c.clone())).collect(),
        }
    }

    /// Multiplies by `z^shift`.
    pub fn shifted(&self, shift: u64) -> Self {
        Polynomial {
            terms: self.terms.iter().map(|(&d, c)| (d + shift, c.clone())).collect(),
        }
    }

    /// `self^exp` by repeated squaring.
    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact evaluation by Horner accumulation over the sorted degrees.
    pub fn eval(&self, x: &C) -> C {
        let mut iter = self.terms.iter().rev();
        let (&first_deg, first_coeff) = match iter.next() {
            Some(t) => t,
            None => return C::zero(),
        };
        let mut acc = first_coeff.clone();
        let mut prev_deg = first_deg;
        for (&d, c) in iter {
            let gap = (prev_deg - d) as u32;
            acc = acc * scalar_pow(x, gap) + c.clone();
            prev_deg = d;
        }
        acc * scalar_pow(x, prev_deg as u32)
    }

    /// Exact quotient; fails with [`PolyError::InexactDivision`] if the
    /// divisor does not divide `self` over the integers.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let div_deg = divisor.degree().unwrap();
        let div_lc = divisor.leading_coefficient().unwrap().clone();
        let mut rem = self.terms.clone();
        let mut quotient: BTreeMap<u64, C> = BTreeMap::new();
        while let Some((&rd, rc)) = rem.iter().next_back() {
            if rd < div_deg {
                return Err(PolyError::InexactDivision);
            }
            let (qc, qr) = rc.div_rem(&div_lc);
            if !qr.is_zero() {
                return Err(PolyError::InexactDivision);
            }
            let qd = rd - div_deg;
            for (&dd, dc) in &divisor.terms {
                let target = qd + dd;
                let delta = qc.clone() * dc.clone();
                match rem.entry(target) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(delta.neg());
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let diff = e.get().clone() - delta;
                        if diff.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = diff;
                        }
                    }
                }
            }
            quotient.insert(qd, qc);
        }
        Ok(Polynomial { terms: quotient })
    }

    /// Term-wise exact derivative.
    pub fn derivative(&self) -> Self {
        Self::from_pairs(self.terms.iter().filter(|(&d, _)| d > 0).map(|(&d, c)| {
            (d - 1, c.clone() * scalar_from_u64::<C>(d))
        }))
    }
}

impl<C: Coefficient> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&d, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if d == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", monomial_str(d))?;
            } else {
                write!(f, "{abs}*{}", monomial_str(d))?;
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

fn monomial_str(d: u64) -> String {
    if d == 1 {
        "z".to_string()
    } else {
        format!("z^{d}")
    }
}

/// All divisors of `n` in ascending order.
pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

/// The `q`-th cyclotomic polynomial, by the recursion
/// `Phi_q(x) = (x^q - 1) / prod_{d | q, d < q} Phi_d(x)` with exact division.
///
/// # Panics
///
/// Panics if `q == 0`.
pub fn cyclotomic_poly<C: Coefficient>(q: u64) -> Polynomial<C> {
    assert!(q > 0, "cyclotomic_poly: q must be positive");
    let mut cache: BTreeMap<u64, Polynomial<C>> = BTreeMap::new();
    cyclotomic_rec(q, &mut cache)
}

fn cyclotomic_rec<C: Coefficient>(
    q: u64,
    cache: &mut BTreeMap<u64, Polynomial<C>>,
) -> Polynomial<C> {
    if let Some(p) = cache.get(&q) {
        return p.clone();
    }
    let result = if q == 1 {
        // Phi_1(x) = x - 1
        Polynomial::from_pairs([(0, C::one().neg()), (1, C::one())])
    } else {
        let mut acc = Polynomial::from_pairs([(0, C::one().neg()), (q, C::one())]);
        for d in divisors(q) {
            if d == q {
                continue;
            }
            let phi_d = cyclotomic_rec(d, cache);
            acc = acc
                .div_exact(&phi_d)
                .expect("cyclotomic recursion divides exactly");
        }
        acc
    };
    cache.insert(q, result.clone());
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = Polynomial<BigInt>;

    #[test]
    fn telescoping_product() {
        // (1 - z)(1 + z + z^2) = 1 - z^3
        let a = P::one_minus_monomial(1);
        let b = P::geometric(3);
        assert_eq!(a.mul(&b), P::from_coeffs(&[1, 0, 0, -1]));
    }

    #[test]
    fn hand_multiplication_cross_checked_by_evaluation() {
        // (1 - z + z^2)(1 + z) = 1 + z^3, checked at five integer points.
        let a = P::from_coeffs(&[1, -1, 1]);
        let b = P::from_coeffs(&[1, 1]);
        let prod = a.mul(&b);
        assert_eq!(prod, P::from_coeffs(&[1, 0, 0, 1]));
        for x in [-2i64, -1, 0, 1, 2] {
            let x = BigInt::from(x);
            assert_eq!(prod.eval(&x), a.eval(&x) * b.eval(&x));
        }
    }

    #[test]
    fn additive_identity() {
        let p = P::from_coeffs(&[3, 0, -2, 7]);
        assert_eq!(p.add(&P::zero()), p);
        assert_eq!(p.sub(&p), P::zero());
    }

    #[test]
    fn exact_division_geometric() {
        // (1 - z^3) / (1 - z) = 1 + z + z^2
        let q = P::from_coeffs(&[1, 0, 0, -1])
            .div_exact(&P::one_minus_monomial(1))
            .unwrap();
        assert_eq!(q, P::geometric(3));
        // (1 - z^6) / (1 - z^2) = 1 + z^2 + z^4
        let q = P::from_coeffs(&[1, 0, 0, 0, 0, 0, -1])
            .div_exact(&P::one_minus_monomial(2))
            .unwrap();
        assert_eq!(q, P::from_coeffs(&[1, 0, 1, 0, 1]));
    }

    #[test]
    fn inexact_division_detected() {
        // (1 - z + z^2) / (1 + z) leaves remainder 3.
        let err = P::from_coeffs(&[1, -1, 1])
            .div_exact(&P::from_coeffs(&[1, 1]))
            .unwrap_err();
        assert_eq!(err, PolyError::InexactDivision);
    }

    #[test]
    fn division_by_zero_detected() {
        let err = P::one().div_exact(&P::zero()).unwrap_err();
        assert_eq!(err, PolyError::DivisionByZero);
    }

    #[test]
    fn evaluation() {
        let p = P::from_coeffs(&[1, -1, 1]);
        assert_eq!(p.eval(&BigInt::from(1)), BigInt::from(1));
        assert_eq!(p.eval(&BigInt::from(0)), BigInt::from(1));
        // 1 - z^6 vanishes at 1.
        let k = P::from_pairs([(0, BigInt::from(1)), (6, BigInt::from(-1))]);
        assert_eq!(k.eval(&BigInt::from(1)), BigInt::from(0));
        // constant coefficient at 0 for a polynomial without constant term
        let m = P::monomial(BigInt::from(5), 3);
        assert_eq!(m.eval(&BigInt::from(0)), BigInt::from(0));
    }

    #[test]
    fn degree_and_zero_sentinel() {
        assert_eq!(P::zero().degree(), None);
        assert_eq!(P::one().degree(), Some(0));
        assert_eq!(P::monomial(BigInt::from(2), 17).degree(), Some(17));
    }

    #[test]
    fn derivative_termwise() {
        // d/dz (1 - z^6) = -6 z^5
        let k = P::from_pairs([(0, BigInt::from(1)), (6, BigInt::from(-1))]);
        assert_eq!(k.derivative(), P::monomial(BigInt::from(-6), 5));
        assert_eq!(P::one().derivative(), P::zero());
    }

    #[test]
    fn divisors_ascending() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(7), vec![1, 7]);
    }

    #[test]
    fn cyclotomic_small_cases() {
        assert_eq!(cyclotomic_poly::<BigInt>(1), P::from_coeffs(&[-1, 1]));
        assert_eq!(cyclotomic_poly::<BigInt>(2), P::from_coeffs(&[1, 1]));
        assert_eq!(cyclotomic_poly::<BigInt>(3), P::from_coeffs(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly::<BigInt>(4), P::from_coeffs(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly::<BigInt>(6), P::from_coeffs(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly::<BigInt>(12), P::from_coeffs(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_product_reconstitutes_x_q_minus_1() {
        for q in 1..=30u64 {
            let mut prod = P::one();
            for d in divisors(q) {
                prod = prod.mul(&cyclotomic_poly(d));
            }
            let expect = P::from_pairs([(0, BigInt::from(-1)), (q, BigInt::from(1))]);
            assert_eq!(prod, expect, "product over divisors of {q}");
        }
    }

    #[test]
    fn display_rendering() {
        let p = P::from_coeffs(&[1, -1, 1]);
        assert_eq!(p.to_string(), "1 - z + z^2");
        let k = P::from_pairs([(0, BigInt::from(1)), (6, BigInt::from(-1))]);
        assert_eq!(k.to_string(), "1 - z^6");
        assert_eq!(P::zero().to_string(), "0");
        assert_eq!(P::from_coeffs(&[0, 3]).to_string(), "3*z");
        assert_eq!(P::from_coeffs(&[-2, 0, 1]).to_string(), "-2 + z^2");
    }

    #[test]
    fn works_with_fixed_width_scalars() {
        let a: Polynomial<i64> = Polynomial::from_pairs([(0, 1), (3, -1)]);
        let b: Polynomial<i64> = Polynomial::geometric(3);
        assert_eq!(a.mul(&b).eval(&2), (1 - 8) * (1 + 2 + 4));
    }
}
