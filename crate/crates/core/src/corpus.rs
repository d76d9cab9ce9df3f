//! Seeded random brane diagrams for property checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::brane::{BraneDiagram, BraneKind};
use crate::fixedpoints::Bct;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub seed: u64,
    pub count: usize,
    /// upper bound on `n + m`
    pub max_size: usize,
    /// upper bound on every charge
    pub max_margin: i64,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec { seed: 0, count: 200, max_size: 8, max_margin: 4 }
    }
}

/// Draws a diagram by picking a random 0/1 table (so the charges are
/// feasible), then a random order of the branes, retrying until every
/// multiplicity is nonnegative.
pub fn random_diagram<R: Rng>(rng: &mut R, max_size: usize, max_margin: i64) -> BraneDiagram {
    assert!(max_size >= 2);
    loop {
        let n = rng.gen_range(1..max_size);
        let m = rng.gen_range(1..=max_size - n);
        let density: f64 = rng.gen_range(0.2..0.8);
        let bits: Vec<u8> = (0..n * m).map(|_| rng.gen_bool(density) as u8).collect();
        let margins = Bct::from_bits(n, m, bits).margins();
        if margins.r.iter().chain(&margins.c).any(|&x| x > max_margin) {
            continue;
        }
        let mut order: Vec<BraneKind> =
            std::iter::repeat_n(BraneKind::Ns5, n).chain(std::iter::repeat_n(BraneKind::D5, m)).collect();
        for _ in 0..50 {
            order.shuffle(rng);
            if let Some(d) = BraneDiagram::from_charges(&order, &margins.r, &margins.c) {
                return d;
            }
        }
    }
}

pub fn corpus(spec: CorpusSpec) -> Vec<BraneDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.count).map(|_| random_diagram(&mut rng, spec.max_size, spec.max_margin)).collect()
}
