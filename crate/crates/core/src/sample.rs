//! Random Thompson group elements and dyadic points for property checks.

use crate::dyadic::{CirclePoint, Dyadic};
use crate::pl::{standard_generator, Domain, PLMap};
use crate::rng::SplitMix64;

/// Random word of length `len` in `x_0^{±1}, x_1^{±1}, x_2^{±1}`.
pub fn random_f(rng: &mut SplitMix64, len: usize) -> PLMap {
    let gens: Vec<PLMap> = (0..3).map(standard_generator).collect();
    let invs: Vec<PLMap> = gens.iter().map(PLMap::inverse).collect();
    (0..len).fold(PLMap::identity(Domain::Interval), |acc, _| {
        let i = rng.below_usize(gens.len());
        let g = if rng.coin() { &gens[i] } else { &invs[i] };
        acc.compose(g)
    })
}

/// Random element of T: a rotation by a dyadic of denominator `<= 2^8`
/// composed on both sides with random F words.
pub fn random_t(rng: &mut SplitMix64, len: usize) -> PLMap {
    let r = PLMap::rotation(&Dyadic::new(rng.below(256) as i64, 8));
    let a = random_f(rng, len);
    let b = random_f(rng, len);
    a.compose(&r).compose(&b)
}

/// Random dyadic in `[0, 1)` with denominator `2^bits`.
pub fn random_unit_dyadic(rng: &mut SplitMix64, bits: u32) -> Dyadic {
    Dyadic::new(rng.below(1u64 << bits) as i64, bits)
}

pub fn random_circle_point(rng: &mut SplitMix64, bits: u32) -> CirclePoint {
    CirclePoint::reduce(&random_unit_dyadic(rng, bits))
}

/// `k` distinct points with denominator `2^bits` in increasing order, all in
/// `(0, 1)`.
pub fn random_increasing(rng: &mut SplitMix64, k: usize, bits: u32) -> Vec<Dyadic> {
    assert!(k < (1usize << bits));
    let mut nums: Vec<u64> = Vec::with_capacity(k);
    while nums.len() < k {
        let n = 1 + rng.below((1u64 << bits) - 1);
        if !nums.contains(&n) {
            nums.push(n);
        }
    }
    nums.sort_unstable();
    nums.into_iter().map(|n| Dyadic::new(n as i64, bits)).collect()
}

/// A random circularly ordered `k`-tuple: distinct points in cyclic order,
/// starting at a random position.
pub fn random_circ_ordered(rng: &mut SplitMix64, k: usize, bits: u32) -> Vec<CirclePoint> {
    assert!(k <= (1usize << bits));
    let mut nums: Vec<u64> = Vec::with_capacity(k);
    while nums.len() < k {
        let n = rng.below(1u64 << bits);
        if !nums.contains(&n) {
            nums.push(n);
        }
    }
    nums.sort_unstable();
    let start = rng.below_usize(k);
    nums.rotate_left(start);
    nums.into_iter().map(|n| CirclePoint::reduce(&Dyadic::new(n as i64, bits))).collect()
}
