//! Numerical semigroups: validated minimal generating sets and their
//! elementary invariants (Apéry set, Frobenius number, conductor, gaps,
//! membership).
//!
//! A numerical semigroup is a subset of the nonnegative integers that
//! contains 0, is closed under addition, and has finite complement; the
//! complement is finite exactly when the generators have gcd 1. All types
//! here are immutable after construction and all operations are pure.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use num_integer::Integer;

use crate::Limits;

/// Validation and resource errors for semigroup construction and invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    /// No generators were supplied.
    EmptyInput,
    /// A generator was zero.
    ZeroGenerator,
    /// gcd of the generators is not 1, so the complement is infinite and the
    /// Frobenius number is undefined.
    GcdNotOne { gcd: u64 },
    /// The generating set is not minimal; carries one redundant generator.
    NonMinimalBasis { redundant: u64 },
    /// A computation would exceed a configured resource cap.
    ResourceLimit {
        what: &'static str,
        required: u64,
        limit: u64,
    },
    /// Intermediate arithmetic exceeded the fixed-width element range.
    Overflow,
}

impl fmt::Display for SemigroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemigroupError::EmptyInput => write!(f, "generator list is empty"),
            SemigroupError::ZeroGenerator => write!(f, "generators must be positive"),
            SemigroupError::GcdNotOne { gcd } => {
                write!(f, "gcd of generators must be 1, got {gcd}")
            }
            SemigroupError::NonMinimalBasis { redundant } => write!(
                f,
                "generating set is not minimal: {redundant} is a sum of the other generators"
            ),
            SemigroupError::ResourceLimit { what, required, limit } => {
                write!(f, "resource limit exceeded: {what} needs {required}, cap is {limit}")
            }
            SemigroupError::Overflow => write!(f, "arithmetic overflow in semigroup computation"),
        }
    }
}

impl std::error::Error for SemigroupError {}

/// A numerical semigroup given by its minimal generating set
/// `d_1 < d_2 < ... < d_m` with `gcd(d_1, ..., d_m) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
}

impl NumericalSemigroup {
    /// Validates and constructs a semigroup. Input is sorted and
    /// deduplicated; non-minimal generating sets are rejected (use
    /// [`NumericalSemigroup::new_minimized`] to reduce them instead).
    pub fn new(raw: &[u64]) -> Result<Self, SemigroupError> {
        let gens = Self::prepare(raw)?;
        for (i, &g) in gens.iter().enumerate() {
            let others: Vec<u64> = gens
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &d)| d)
                .collect();
            if representable(g, &others) {
                return Err(SemigroupError::NonMinimalBasis { redundant: g });
            }
        }
        Ok(NumericalSemigroup { generators: gens })
    }

    /// Like [`NumericalSemigroup::new`], but removes redundant generators
    /// instead of rejecting them. Returns the semigroup together with the
    /// removed generators in ascending order. The minimal generating set of
    /// a numerical semigroup is unique, so the result does not depend on
    /// removal order.
    pub fn new_minimized(raw: &[u64]) -> Result<(Self, Vec<u64>), SemigroupError> {
        let mut gens = Self::prepare(raw)?;
        let mut removed = Vec::new();
        'outer: loop {
            for i in (0..gens.len()).rev() {
                let g = gens[i];
                let others: Vec<u64> = gens
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &d)| d)
                    .collect();
                if representable(g, &others) {
                    gens.remove(i);
                    removed.push(g);
                    continue 'outer;
                }
            }
            break;
        }
        removed.sort_unstable();
        Ok((NumericalSemigroup { generators: gens }, removed))
    }

    fn prepare(raw: &[u64]) -> Result<Vec<u64>, SemigroupError> {
        if raw.is_empty() {
            return Err(SemigroupError::EmptyInput);
        }
        if raw.contains(&0) {
            return Err(SemigroupError::ZeroGenerator);
        }
        let mut gens = raw.to_vec();
        gens.sort_unstable();
        gens.dedup();
        let gcd = gens.iter().fold(0u64, |acc, &g| acc.gcd(&g));
        if gcd != 1 {
            return Err(SemigroupError::GcdNotOne { gcd });
        }
        Ok(gens)
    }

    /// The minimal generators, strictly increasing.
    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// The smallest generator `d_1` (the multiplicity).
    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    /// The largest generator `d_m`.
    pub fn max_generator(&self) -> u64 {
        *self.generators.last().unwrap()
    }

    /// Number of minimal generators `m` (the embedding dimension).
    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    /// Product of the generators, exact in the chosen scalar type.
    pub fn generator_product<C: crate::Coefficient>(&self) -> C {
        self.generators
            .iter()
            .fold(C::one(), |acc, &d| acc * crate::poly::scalar_from_u64::<C>(d))
    }

    /// The Apéry set with respect to `d_1`: for each residue class mod
    /// `d_1`, the smallest semigroup element in that class.
    ///
    /// Computed as single-source shortest paths on the residue graph with
    /// nodes `0..d_1`, edges `r -> (r + d_i) mod d_1` of weight `d_i` for
    /// `i >= 2`, from source 0.
    pub fn apery_set(&self, limits: Limits) -> Result<AperySet, SemigroupError> {
        let d1 = self.multiplicity();
        if d1 > limits.max_apery_nodes {
            return Err(SemigroupError::ResourceLimit {
                what: "Apéry residue nodes",
                required: d1,
                limit: limits.max_apery_nodes,
            });
        }
        let n = d1 as usize;
        if n == 1 {
            return Ok(AperySet { modulus: 1, elements: vec![0] });
        }
        let mut dist: Vec<u64> = vec![u64::MAX; n];
        dist[0] = 0;
        let mut heap: BinaryHeap<Reverse<(u64, u64)>> = BinaryHeap::new();
        heap.push(Reverse((0, 0)));
        while let Some(Reverse((d, r))) = heap.pop() {
            if d > dist[r as usize] {
                continue;
            }
            for &g in &self.generators[1..] {
                let nr = (r + g % d1) % d1;
                let nd = d.checked_add(g).ok_or(SemigroupError::Overflow)?;
                if nd < dist[nr as usize] {
                    dist[nr as usize] = nd;
                    heap.push(Reverse((nd, nr)));
                }
            }
        }
        // gcd = 1 guarantees every residue is reachable
        debug_assert!(dist.iter().all(|&d| d != u64::MAX));
        Ok(AperySet { modulus: d1, elements: dist })
    }

    /// Frobenius number, conductor, gaps and genus.
    pub fn profile(&self, limits: Limits) -> Result<SemigroupProfile, SemigroupError> {
        let apery = self.apery_set(limits)?;
        let frobenius = apery.frobenius()?;
        let conductor = (frobenius + 1) as u64;
        if conductor > limits.max_enumeration {
            return Err(SemigroupError::ResourceLimit {
                what: "gap enumeration",
                required: conductor,
                limit: limits.max_enumeration,
            });
        }
        let gaps: Vec<u64> = (0..conductor).filter(|&x| !apery.contains(x)).collect();
        Ok(SemigroupProfile {
            frobenius,
            conductor,
            genus: gaps.len() as u64,
            gaps,
        })
    }

    /// Membership test via the Apéry set: `x` is in the semigroup iff
    /// `x >= a_r` where `a_r` is the Apéry element of `x`'s residue class.
    pub fn contains(&self, x: u64, limits: Limits) -> Result<bool, SemigroupError> {
        Ok(self.apery_set(limits)?.contains(x))
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumericalSemigroup{self}")
    }
}

/// Is `target` a nonnegative integer combination of `gens`?
fn representable(target: u64, gens: &[u64]) -> bool {
    if target == 0 {
        return true;
    }
    let n = target as usize;
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for x in 1..=n {
        for &g in gens {
            let g = g as usize;
            if g <= x && reach[x - g] {
                reach[x] = true;
                break;
            }
        }
    }
    reach[n]
}

/// The Apéry set of a semigroup with respect to its multiplicity `d_1`:
/// slot `r` holds the smallest semigroup element congruent to `r` mod `d_1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AperySet {
    modulus: u64,
    elements: Vec<u64>,
}

impl AperySet {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Elements indexed by residue class; `elements()[0] == 0`.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// O(1) membership test.
    pub fn contains(&self, x: u64) -> bool {
        x >= self.elements[(x % self.modulus) as usize]
    }

    /// Frobenius number: the largest Apéry element minus the modulus
    /// (`-1` when the semigroup is all of the nonnegative integers).
    pub fn frobenius(&self) -> Result<i64, SemigroupError> {
        let max = *self.elements.iter().max().unwrap();
        let f = max as i128 - self.modulus as i128;
        i64::try_from(f).map_err(|_| SemigroupError::Overflow)
    }
}

/// Frobenius number, conductor and gap data of a semigroup.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemigroupProfile {
    /// Largest integer not in the semigroup; `-1` when there are no gaps.
    pub frobenius: i64,
    /// `frobenius + 1`; least element from which everything onward is in
    /// the semigroup.
    pub conductor: u64,
    /// Number of gaps.
    pub genus: u64,
    /// All gaps in ascending order.
    pub gaps: Vec<u64>,
}
