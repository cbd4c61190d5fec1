//! Seeded random generation of minimal numerical semigroups, shared by the
//! property suites and the sweep command.

use std::ops::RangeInclusive;

use rand::Rng;

use crate::semigroup::NumericalSemigroup;

/// Draws a random minimal semigroup by rejection sampling: draw a size from
/// `m_range`, draw that many distinct generators in `[2, d_max]`, retry
/// while the gcd is not 1, then strip redundant generators. The result is
/// minimal by construction; its size may be smaller than the drawn size
/// when the minimization removes generators.
///
/// `m = 1` draws yield the semigroup of all nonnegative integers, the only
/// minimal semigroup with one generator.
///
/// # Panics
///
/// Panics if the range is empty or `d_max < max(m_range) + 1`, which would
/// make the draw impossible.
pub fn random_semigroup<R: Rng>(
    rng: &mut R,
    m_range: RangeInclusive<u32>,
    d_max: u64,
) -> NumericalSemigroup {
    assert!(!m_range.is_empty(), "empty size range");
    assert!(
        d_max >= *m_range.end() as u64 + 1,
        "d_max = {d_max} cannot accommodate {} distinct generators >= 2",
        m_range.end()
    );
    loop {
        let m = rng.gen_range(m_range.clone());
        if m == 1 {
            return NumericalSemigroup::new(&[1]).unwrap();
        }
        let mut gens = Vec::with_capacity(m as usize);
        while gens.len() < m as usize {
            let g = rng.gen_range(2..=d_max);
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
        if let Ok((s, _removed)) = NumericalSemigroup::new_minimized(&gens) {
            return s;
        }
        // gcd != 1: retry
    }
}
