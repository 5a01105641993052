//! Seeded random coefficient families.

use mwf_core::{AlgebraElement, CoeffElement, Coweight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `count` families of `terms` monomials supported in `{-r..r}^rank`, with
/// coefficients `c·v^j·g_k`, `c ∈ ±{1..5}`, `j ∈ {-1,0,1}`.
pub fn random_families(seed: u64, count: usize, terms: usize, rank: usize, r: i32, n: u32) -> Vec<AlgebraElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            AlgebraElement::from_terms((0..terms).map(|_| {
                let coords: Vec<i32> = (0..rank).map(|_| rng.gen_range(-r..=r)).collect();
                let c = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
                let coeff = &(&CoeffElement::from_int(n, c) * &CoeffElement::v_pow(n, rng.gen_range(-1..=1)))
                    * &CoeffElement::g(n, rng.gen_range(0..n as i64));
                (Coweight::new(&coords), coeff)
            }))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        assert_eq!(random_families(7, 3, 4, 2, 2, 2), random_families(7, 3, 4, 2, 2, 2));
        assert_ne!(random_families(7, 3, 4, 2, 2, 2), random_families(8, 3, 4, 2, 2, 2));
    }
}
