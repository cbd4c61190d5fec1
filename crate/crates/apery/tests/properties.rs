//! Property suites: ring axioms for the polynomial arithmetic, agreement
//! between the Apéry-based invariants and the brute-force oracle, and the
//! structural relations of the Hilbert-series numerators.

use apery::hilbert::{consistency_check, k_polynomial, truncated_hilbert};
use apery::identities::SignedDegreeSequence;
use apery::oracle::{expand_rational, oracle_frobenius, EnumeratedSemigroup};
use apery::poly::Polynomial;
use apery::{BigInt, IntPolynomial, Limits, NumericalSemigroup};

use num_traits::Signed;
use proptest::prelude::*;

const LIM: Limits = Limits::default_const();

fn poly_strategy() -> impl Strategy<Value = IntPolynomial> {
    // sparse polynomials of degree <= 200 with coefficients up to 2^64
    let coeff = (-(1i128 << 64)..=(1i128 << 64)).prop_map(BigInt::from);
    proptest::collection::vec((0u64..=200, coeff), 0..12)
        .prop_map(Polynomial::from_pairs)
}

/// Random minimal semigroups with `2 <= m <= 6` and generators bounded by
/// `d_max`; gcd failures are filtered out, redundant generators stripped.
fn semigroup_strategy(d_max: u64) -> impl Strategy<Value = NumericalSemigroup> {
    proptest::collection::btree_set(2..=d_max, 2..=6).prop_filter_map(
        "gcd must be 1",
        |gens| {
            let gens: Vec<u64> = gens.into_iter().collect();
            NumericalSemigroup::new_minimized(&gens).ok().map(|(s, _)| s)
        },
    )
}

proptest! {
    #[test]
    fn addition_commutes(a in poly_strategy(), b in poly_strategy()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
    }

    #[test]
    fn multiplication_commutes(a in poly_strategy(), b in poly_strategy()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn multiplication_associates(
        a in poly_strategy(),
        b in poly_strategy(),
        c in poly_strategy(),
    ) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn multiplication_distributes(
        a in poly_strategy(),
        b in poly_strategy(),
        c in poly_strategy(),
    ) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn exact_division_inverts_multiplication(
        a in poly_strategy(),
        b in poly_strategy(),
    ) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a.mul(&b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn subtraction_inverts_addition(a in poly_strategy(), b in poly_strategy()) {
        prop_assert_eq!(a.add(&b).sub(&b), a);
    }

    #[test]
    fn evaluation_is_a_ring_morphism(
        a in poly_strategy(),
        b in poly_strategy(),
        x in -100i64..=100,
    ) {
        let x = BigInt::from(x);
        prop_assert_eq!(a.mul(&b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!(a.add(&b).eval(&x), a.eval(&x) + b.eval(&x));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn membership_agrees_with_oracle(s in semigroup_strategy(200)) {
        let apery = s.apery_set(LIM).unwrap();
        let profile = s.profile(LIM).unwrap();
        let bound = profile.conductor + s.max_generator();
        let table = EnumeratedSemigroup::enumerate(&s, bound, LIM).unwrap();
        for x in 0..=bound {
            prop_assert_eq!(apery.contains(x), table.contains(x), "x = {}", x);
        }
    }

    #[test]
    fn apery_elements_are_minimal_per_residue(s in semigroup_strategy(200)) {
        let apery = s.apery_set(LIM).unwrap();
        for (r, &a) in apery.elements().iter().enumerate().skip(1) {
            prop_assert!(a >= s.multiplicity(), "residue {}", r);
            prop_assert!(!apery.contains(a - s.multiplicity()), "residue {}", r);
        }
    }

    #[test]
    fn frobenius_agrees_with_oracle(s in semigroup_strategy(200)) {
        let profile = s.profile(LIM).unwrap();
        prop_assert_eq!(profile.frobenius, oracle_frobenius(&s, LIM).unwrap());
        prop_assert_eq!(
            profile.gaps.last().map(|&g| g as i64).unwrap_or(-1),
            profile.frobenius
        );
    }

    #[test]
    fn construction_is_idempotent(s in semigroup_strategy(300)) {
        let again = NumericalSemigroup::new(s.generators()).unwrap();
        prop_assert_eq!(s, again);
    }

    #[test]
    fn rational_expansion_of_k_matches_truncated_series(s in semigroup_strategy(200)) {
        // expanding k / prod(1 - z^d_i) as a power series reproduces the
        // membership-based truncation, out to conductor + sum d_i
        let profile = s.profile(LIM).unwrap();
        let bound = profile.conductor + s.generators().iter().sum::<u64>();
        let k: IntPolynomial = k_polynomial(&s, LIM).unwrap();
        let den = s.generators().iter().fold(IntPolynomial::one(), |acc, &d| {
            acc.mul(&IntPolynomial::one_minus_monomial(d))
        });
        let expansion = expand_rational(&k, &den, bound).unwrap();
        let series: IntPolynomial = truncated_hilbert(&s, bound, LIM).unwrap();
        prop_assert_eq!(expansion, series);
    }

    #[test]
    fn numerator_structure_holds(s in semigroup_strategy(200)) {
        let data = consistency_check::<BigInt>(&s, LIM).unwrap();
        let one = BigInt::from(1);
        prop_assert_eq!(data.p_poly.eval(&one), BigInt::from(1));
        if s.embedding_dimension() >= 2 {
            prop_assert_eq!(data.k_poly.eval(&one), BigInt::from(0));
            // positive and negative coefficient mass balance, so the
            // absolute coefficient sum is even
            let abs_sum: BigInt =
                data.k_poly.terms().map(|(_, c)| c.clone() * c.signum()).sum();
            prop_assert_eq!(abs_sum % BigInt::from(2), BigInt::from(0));
        }
    }

    #[test]
    fn moments_from_oracle_route_agree(s in semigroup_strategy(120)) {
        let seq = SignedDegreeSequence::<BigInt>::from_semigroup(&s, LIM).unwrap();
        for r in 0..s.embedding_dimension() as u32 {
            let direct = seq.moment(r);
            let oracle: BigInt = apery::oracle::oracle_moment(&s, r, LIM).unwrap();
            prop_assert_eq!(direct, oracle, "r = {}", r);
        }
    }
}

/// Stirling numbers of the second kind, `S(r, l)`.
fn stirling2(rows: usize) -> Vec<Vec<BigInt>> {
    let mut table = vec![vec![BigInt::from(0); rows + 1]; rows + 1];
    table[0][0] = BigInt::from(1);
    for r in 1..=rows {
        for l in 1..=r {
            let v = table[r - 1][l].clone() * BigInt::from(l as u64)
                + table[r - 1][l - 1].clone();
            table[r][l] = v;
        }
    }
    table
}

/// Moments and derivatives tell the same story: the r-th term-wise
/// derivative of k at 1 is the falling-factorial sum, and expanding powers
/// in falling factorials through Stirling numbers reproduces the moments.
#[test]
fn moment_derivative_cross_check_on_fixtures() {
    for gens in [&[2u64, 3][..], &[4, 7, 9], &[6, 9, 20], &[5, 7, 11, 13]] {
        let s = NumericalSemigroup::new(gens).unwrap();
        let m = s.embedding_dimension();
        let k: IntPolynomial = k_polynomial(&s, LIM).unwrap();
        let seq = SignedDegreeSequence::<BigInt>::from_semigroup(&s, LIM).unwrap();

        // falling-factorial sums via repeated differentiation at 1
        let mut falling = Vec::with_capacity(m);
        let mut deriv = k.clone();
        for _ in 0..m {
            falling.push(deriv.eval(&BigInt::from(1)));
            deriv = deriv.derivative();
        }

        let stirling = stirling2(m);
        for r in 0..m {
            let from_falling: BigInt = (0..=r)
                .map(|l| stirling[r][l].clone() * falling[l].clone())
                .sum();
            assert_eq!(seq.moment(r as u32), from_falling, "{s} at r = {r}");
        }
    }
}
