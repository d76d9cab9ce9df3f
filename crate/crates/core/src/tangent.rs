//! Closed-form tangent weights at a fixed point from its BCT, and the
//! margin-only count of 01-pairs.

use serde::Serialize;

use crate::brane::Margins;
use crate::charring::Weight;
use crate::error::{Error, Result};
use crate::fixedpoints::Bct;

/// Partial column sums and the 01-/10-pairs of a BCT. All indices 0-based;
/// `s[i][j]` sums rows `0..i`, so `s[0]` is zero and `s[n]` is the column
/// margin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairTable {
    pub s: Vec<Vec<i64>>,
    /// `(i, j0, j1)`, `j0 < j1`, entries 0 then 1
    pub pairs01: Vec<(usize, usize, usize)>,
    /// `(i, j1, j0)`, `j1 < j0`, entries 1 then 0
    pub pairs10: Vec<(usize, usize, usize)>,
}

impl PairTable {
    /// Partial sum through row `i` inclusive.
    pub fn through(&self, i: usize, j: usize) -> i64 {
        self.s[i + 1][j]
    }
}

#[allow(clippy::needless_range_loop)]
pub fn pair_table(b: &Bct) -> PairTable {
    let (n, m) = (b.n(), b.m());
    let mut s = vec![vec![0i64; m]; n + 1];
    let mut pairs01 = Vec::new();
    let mut pairs10 = Vec::new();
    for i in 0..n {
        for j in 0..m {
            s[i + 1][j] = s[i][j] + b.get(i, j) as i64;
            for k in j + 1..m {
                match (b.get(i, j), b.get(i, k)) {
                    (0, 1) => pairs01.push((i, j, k)),
                    (1, 0) => pairs10.push((i, j, k)),
                    _ => {}
                }
            }
        }
    }
    PairTable { s, pairs01, pairs10 }
}

/// Tangent weights at a fixed point of a separated diagram.
pub fn tangent_weights(b: &Bct) -> Vec<Weight> {
    tangent_weights_general(b, &vec![0; b.m()]).expect("sigma has the right length")
}

/// Tangent weights at a fixed point of any diagram, given the `sigma` of
/// its separation.
pub fn tangent_weights_general(b: &Bct, sigma: &[i64]) -> Result<Vec<Weight>> {
    let m = b.m();
    if sigma.len() != m {
        return Err(Error::SigmaLengthMismatch { expected: m, found: sigma.len() });
    }
    let t = pair_table(b);
    let mut out = Vec::with_capacity(2 * t.pairs01.len());
    for &(i, j0, j1) in &t.pairs01 {
        let gap = t.through(i, j1) - t.through(i, j0) + sigma[j0] - sigma[j1];
        out.push(Weight::ratio(m, j0, j1, gap));
        out.push(Weight::ratio(m, j1, j0, 1 - gap));
    }
    Ok(out)
}

/// Number of 01-pairs of any BCT with these margins, from running sums of the
/// row margins and of the column margins read right to left.
pub fn pair_count_from_margins(margins: &Margins) -> i64 {
    let running = |xs: &mut dyn Iterator<Item = i64>| -> Vec<i64> {
        let mut acc = 0;
        std::iter::once(0)
            .chain(xs.map(|x| {
                acc += x;
                acc
            }))
            .collect()
    };
    let cs = running(&mut margins.c.iter().rev().copied());
    let rs = running(&mut margins.r.iter().copied());
    let n = margins.r.len();
    let tri = |x: i64| x * (x + 1);
    let mut twice = 0;
    for j in 1..cs.len() {
        twice += tri(cs[j]) + tri(cs[j - 1]) - 2 * cs[j] * cs[j];
    }
    for i in 1..=n {
        twice += 2 * rs[i - 1] * rs[i];
        if i < n {
            twice -= 2 * rs[i] * rs[i];
        }
    }
    twice / 2
}
