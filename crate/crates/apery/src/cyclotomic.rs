//! Exact arithmetic in the ring of integers extended by a primitive q-th
//! root of unity, represented modulo the q-th cyclotomic polynomial.
//!
//! A [`Cyclotomic`] value is a fully reduced residue in `Z[x]/Phi_q(x)`;
//! the residue class of `x` plays the role of `zeta = e^(2*pi*i/q)`. Because
//! the representation is exact, the zero test is exact, which is what makes
//! the root-of-unity identity checks in [`crate::identities`] meaningful.

use std::fmt;

use crate::poly::{cyclotomic_poly, Coefficient, Polynomial};

/// Errors from cyclotomic-ring construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CyclotomicError {
    /// The ring order must be at least 2.
    InvalidOrder(u64),
    /// Two elements of different orders were combined.
    OrderMismatch { left: u64, right: u64 },
}

impl fmt::Display for CyclotomicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CyclotomicError::InvalidOrder(q) => {
                write!(f, "cyclotomic order must be at least 2, got {q}")
            }
            CyclotomicError::OrderMismatch { left, right } => {
                write!(f, "cyclotomic order mismatch: {left} vs {right}")
            }
        }
    }
}

impl std::error::Error for CyclotomicError {}

/// The ring `Z[x]/Phi_q(x)` for a fixed order `q >= 2`.
///
/// Construction computes `Phi_q` once; elements produced by the same ring
/// share its order. The modulus is stored sparsely because cyclotomic
/// polynomials of smooth order have very few nonzero coefficients.
#[derive(Clone, Debug)]
pub struct CyclotomicRing<C: Coefficient> {
    order: u64,
    /// Degree of `Phi_q`, i.e. Euler's totient of `q`.
    phi: usize,
    /// Nonzero coefficients of `Phi_q` below the leading term, as
    /// `(exponent, coefficient)` pairs in ascending exponent order.
    modulus_tail: Vec<(usize, C)>,
}

impl<C: Coefficient> CyclotomicRing<C> {
    pub fn new(order: u64) -> Result<Self, CyclotomicError> {
        if order < 2 {
            return Err(CyclotomicError::InvalidOrder(order));
        }
        let phi_poly: Polynomial<C> = cyclotomic_poly(order);
        let phi = phi_poly.degree().unwrap() as usize;
        let modulus_tail = phi_poly
            .terms()
            .filter(|&(d, _)| (d as usize) < phi)
            .map(|(d, c)| (d as usize, c.clone()))
            .collect();
        Ok(CyclotomicRing { order, phi, modulus_tail })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Degree of the modulus (= number of stored coefficients per element).
    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn zero(&self) -> Cyclotomic<C> {
        Cyclotomic {
            order: self.order,
            coeffs: vec![C::zero(); self.phi],
        }
    }

    pub fn one(&self) -> Cyclotomic<C> {
        let mut e = self.zero();
        e.coeffs[0] = C::one();
        e
    }

    /// `zeta^e` for any integer exponent, i.e. `x^(e mod q)` reduced mod
    /// `Phi_q(x)`.
    pub fn root_power(&self, e: i64) -> Cyclotomic<C> {
        let k = e.rem_euclid(self.order as i64) as usize;
        let mut v = vec![C::zero(); k + 1];
        v[k] = C::one();
        self.reduce_vec(v)
    }

    /// Multiplication by `zeta`, reducing eagerly.
    pub fn mul_by_root(&self, a: &Cyclotomic<C>) -> Cyclotomic<C> {
        debug_assert_eq!(a.order, self.order);
        let mut v = Vec::with_capacity(self.phi + 1);
        v.push(C::zero());
        v.extend(a.coeffs.iter().cloned());
        self.reduce_vec(v)
    }

    /// Reduces a dense coefficient vector (index = exponent) mod `Phi_q`.
    ///
    /// The modulus is monic, so each leading entry folds into lower
    /// exponents through the stored tail; the loop touches only the
    /// modulus's nonzero coefficients.
    pub fn reduce_vec(&self, mut v: Vec<C>) -> Cyclotomic<C> {
        let phi = self.phi;
        let mut e = v.len();
        while e > phi {
            e -= 1;
            let top = std::mem::replace(&mut v[e], C::zero());
            if top.is_zero() {
                continue;
            }
            let base = e - phi;
            for (i, m) in &self.modulus_tail {
                let idx = base + i;
                let cur = std::mem::replace(&mut v[idx], C::zero());
                v[idx] = cur - top.clone() * m.clone();
            }
        }
        v.truncate(phi);
        v.resize_with(phi, C::zero);
        Cyclotomic { order: self.order, coeffs: v }
    }

    /// The reduced powers `x^0, ..., x^(q-1)`.
    pub fn power_table(&self) -> Vec<Cyclotomic<C>> {
        let mut table = Vec::with_capacity(self.order as usize);
        table.push(self.one());
        for e in 1..self.order {
            let prev = table.last().unwrap();
            table.push(self.mul_by_root(prev));
            debug_assert_eq!(table[e as usize], self.root_power(e as i64));
        }
        table
    }
}

/// An element of `Z[x]/Phi_q(x)`, fully reduced (stored degree < phi(q)).
#[derive(Clone, PartialEq, Eq)]
pub struct Cyclotomic<C: Coefficient> {
    order: u64,
    coeffs: Vec<C>,
}

impl<C: Coefficient> Cyclotomic<C> {
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Coefficients of the reduced representative, index = power of the root.
    pub fn coefficients(&self) -> &[C] {
        &self.coeffs
    }

    /// Exact zero test on the reduced representation.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.check_order(other)?;
        Ok(Cyclotomic {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.check_order(other)?;
        Ok(Cyclotomic {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.clone().neg()).collect(),
        }
    }

    pub fn scale(&self, factor: &C) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.clone() * factor.clone()).collect(),
        }
    }

    fn check_order(&self, other: &Self) -> Result<(), CyclotomicError> {
        if self.order != other.order {
            return Err(CyclotomicError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for Cyclotomic<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic(order={}, [", self.order)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "])")
    }
}

/// `zeta^e` in the order-`q` cyclotomic ring (standalone convenience).
pub fn root_power<C: Coefficient>(q: u64, e: i64) -> Result<Cyclotomic<C>, CyclotomicError> {
    Ok(CyclotomicRing::new(q)?.root_power(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::One;

    fn ring(q: u64) -> CyclotomicRing<BigInt> {
        CyclotomicRing::new(q).unwrap()
    }

    #[test]
    fn order_below_two_rejected() {
        assert!(matches!(
            CyclotomicRing::<BigInt>::new(1),
            Err(CyclotomicError::InvalidOrder(1))
        ));
        assert!(matches!(
            CyclotomicRing::<BigInt>::new(0),
            Err(CyclotomicError::InvalidOrder(0))
        ));
    }

    #[test]
    fn minus_one_at_order_two() {
        // zeta = -1, so zeta^5 = -1.
        let e = root_power::<BigInt>(2, 5).unwrap();
        assert_eq!(e.coefficients(), &[BigInt::from(-1)]);
    }

    #[test]
    fn i_squared_is_minus_one() {
        // order 4: x^2 = -1 mod x^2 + 1.
        let e = root_power::<BigInt>(4, 2).unwrap();
        assert_eq!(e.coefficients(), &[BigInt::from(-1), BigInt::from(0)]);
    }

    #[test]
    fn cube_root_cubed_is_one() {
        let r = ring(3);
        assert_eq!(r.root_power(3), r.one());
    }

    #[test]
    fn negatives_cancel() {
        let r = ring(5);
        let z = r.root_power(1);
        assert!(z.add(&z.neg()).unwrap().is_zero());
    }

    #[test]
    fn all_cube_roots_sum_to_zero() {
        let r = ring(3);
        let sum = r
            .root_power(0)
            .add(&r.root_power(1))
            .unwrap()
            .add(&r.root_power(2))
            .unwrap();
        assert!(sum.is_zero());
    }

    #[test]
    fn one_plus_i_squared_is_zero() {
        let r = ring(4);
        let sum = r.one().add(&r.root_power(2)).unwrap();
        assert!(sum.is_zero());
    }

    #[test]
    fn order_mismatch_rejected() {
        let a = root_power::<BigInt>(3, 1).unwrap();
        let b = root_power::<BigInt>(4, 1).unwrap();
        assert!(matches!(
            a.add(&b),
            Err(CyclotomicError::OrderMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn root_powers_have_order_q() {
        // zeta^e repeatedly multiplied by zeta comes back to itself after q
        // steps, for every starting exponent.
        for q in 2..=50u64 {
            let r = ring(q);
            for e in [0i64, 1, 7, q as i64 - 1, -3] {
                let start = r.root_power(e);
                let mut cur = start.clone();
                for _ in 0..q {
                    cur = r.mul_by_root(&cur);
                }
                assert_eq!(cur, start, "q={q}, e={e}");
            }
            // and zeta^q itself is 1
            assert_eq!(r.root_power(q as i64), r.one(), "q={q}");
        }
    }

    #[test]
    fn geometric_sums_vanish_for_coprime_steps() {
        for q in 2..=50u64 {
            let r = ring(q);
            for n in 1..q {
                if n.gcd(&q) != 1 {
                    continue;
                }
                let mut sum = r.zero();
                for e in 0..q {
                    sum = sum.add(&r.root_power((n * e) as i64)).unwrap();
                }
                assert!(sum.is_zero(), "q={q}, n={n}");
            }
        }
    }

    #[test]
    fn cyclotomic_at_one_is_radical_indicator() {
        // Phi_q(1) = p for prime powers p^k, else 1 (q > 1).
        for q in 2..=50u64 {
            let val = crate::poly::cyclotomic_poly::<BigInt>(q).eval(&BigInt::one());
            let mut m = q;
            let mut smallest = 0u64;
            for p in 2..=m {
                if m % p == 0 {
                    smallest = p;
                    while m % p == 0 {
                        m /= p;
                    }
                    break;
                }
            }
            let expected = if m == 1 { smallest } else { 1 };
            assert_eq!(val, BigInt::from(expected), "q={q}");
        }
    }

    #[test]
    fn power_table_matches_root_power() {
        for q in [2u64, 6, 12, 30] {
            let r = ring(q);
            let table = r.power_table();
            assert_eq!(table.len(), q as usize);
            for (e, el) in table.iter().enumerate() {
                assert_eq!(*el, r.root_power(e as i64));
            }
        }
    }
}
