//! Brane diagrams: parsing, charges and Hanany-Witten moves.
//!
//! A diagram is a left-to-right sequence of NS5 (`/`) and D5 (`\`) branes
//! with a D3 multiplicity on every interior segment. Segments are numbered
//! `X_0 ..= X_{n+m}`; `X_k` lies between brane `k-1` and brane `k` (0-based),
//! so the two infinite end segments are `X_0` and `X_{n+m}` and always carry 0.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BraneKind {
    Ns5,
    D5,
}

impl BraneKind {
    pub fn symbol(self) -> char {
        match self {
            BraneKind::Ns5 => '/',
            BraneKind::D5 => '\\',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraneDiagram {
    branes: Vec<BraneKind>,
    mults: Vec<u64>,
}

/// Row and column margins: NS5 charges `r` and D5 charges `c`, left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Margins {
    pub r: Vec<i64>,
    pub c: Vec<i64>,
}

impl fmt::Display for Margins {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={} c={}", tuple(&self.r), tuple(&self.c))
    }
}

pub(crate) fn tuple<T: fmt::Display>(xs: &[T]) -> String {
    let inner: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", inner.join(","))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HwStep {
    /// 0-based index of the left brane of the swapped pair.
    pub position: usize,
    pub old_mult: u64,
    pub new_mult: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HwTrace {
    pub steps: Vec<HwStep>,
    /// `sigma[j]` = number of NS5 branes strictly right of `U_j` in the
    /// original diagram.
    pub sigma: Vec<i64>,
}

impl BraneDiagram {
    pub fn new(branes: Vec<BraneKind>, mults: Vec<u64>) -> Result<Self> {
        if branes.is_empty() {
            return Err(Error::MalformedDiagram("empty input".into()));
        }
        if mults.len() + 1 != branes.len() {
            return Err(Error::MalformedDiagram(format!(
                "{} branes need {} multiplicities, got {}",
                branes.len(),
                branes.len() - 1,
                mults.len()
            )));
        }
        Ok(BraneDiagram { branes, mults })
    }

    /// Builds the diagram with the given brane order whose charges are `(r, c)`.
    /// Returns `None` when some segment would need a negative multiplicity or
    /// the charges are inconsistent with the order.
    pub fn from_charges(branes: &[BraneKind], r: &[i64], c: &[i64]) -> Option<Self> {
        let n = branes.iter().filter(|&&k| k == BraneKind::Ns5).count();
        let m = branes.len() - n;
        if n != r.len() || m != c.len() || branes.is_empty() {
            return None;
        }
        let mut d: i64 = 0;
        let mut mults = Vec::with_capacity(branes.len() - 1);
        let (mut seen_v, mut seen_u) = (0usize, 0usize);
        for (p, &kind) in branes.iter().enumerate() {
            match kind {
                BraneKind::Ns5 => {
                    d = d.checked_add(r[seen_v])?.checked_sub(seen_u as i64)?;
                    seen_v += 1;
                }
                BraneKind::D5 => {
                    let right = (n - seen_v) as i64;
                    d = d.checked_sub(c[seen_u])?.checked_add(right)?;
                    seen_u += 1;
                }
            }
            if d < 0 {
                return None;
            }
            if p + 1 < branes.len() {
                mults.push(d as u64);
            }
        }
        if d != 0 {
            return None;
        }
        Some(BraneDiagram { branes: branes.to_vec(), mults })
    }

    /// The separated diagram (all NS5 left) with charges `(r, c)`.
    pub fn separated_from_charges(r: &[i64], c: &[i64]) -> Option<Self> {
        let mut kinds = vec![BraneKind::Ns5; r.len()];
        kinds.extend(std::iter::repeat_n(BraneKind::D5, c.len()));
        Self::from_charges(&kinds, r, c)
    }

    pub fn branes(&self) -> &[BraneKind] {
        &self.branes
    }

    /// Interior multiplicities `d_1 .. d_{n+m-1}`.
    pub fn multiplicities(&self) -> &[u64] {
        &self.mults
    }

    /// Multiplicity of segment `X_k`, with the end segments reading 0.
    pub fn segment(&self, k: usize) -> u64 {
        if k == 0 || k >= self.branes.len() {
            0
        } else {
            self.mults[k - 1]
        }
    }

    pub fn len(&self) -> usize {
        self.branes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branes.is_empty()
    }

    pub fn n(&self) -> usize {
        self.ns5_positions().len()
    }

    pub fn m(&self) -> usize {
        self.d5_positions().len()
    }

    pub fn ns5_positions(&self) -> Vec<usize> {
        self.positions(BraneKind::Ns5)
    }

    pub fn d5_positions(&self) -> Vec<usize> {
        self.positions(BraneKind::D5)
    }

    fn positions(&self, kind: BraneKind) -> Vec<usize> {
        (0..self.branes.len()).filter(|&p| self.branes[p] == kind).collect()
    }

    pub fn charges(&self) -> Margins {
        let total_v = self.n() as i64;
        let (mut left_u, mut left_v) = (0i64, 0i64);
        let mut r = Vec::new();
        let mut c = Vec::new();
        for (p, &kind) in self.branes.iter().enumerate() {
            let minus = self.segment(p) as i64;
            let plus = self.segment(p + 1) as i64;
            match kind {
                BraneKind::Ns5 => {
                    r.push(plus - minus + left_u);
                    left_v += 1;
                }
                BraneKind::D5 => {
                    c.push(minus - plus + (total_v - left_v));
                    left_u += 1;
                }
            }
        }
        Margins { r, c }
    }

    pub fn is_separated(&self) -> bool {
        !self.branes.windows(2).any(|w| w[0] == BraneKind::D5 && w[1] == BraneKind::Ns5)
    }

    /// Hanany-Witten move swapping branes `k` and `k+1` (0-based).
    pub fn hw_step(&self, k: usize) -> Result<Self> {
        if k + 1 >= self.branes.len() {
            return Err(Error::BraneIndex(k));
        }
        if self.branes[k] == self.branes[k + 1] {
            return Err(Error::SameKind(k, k + 1));
        }
        let d1 = self.segment(k) as i128;
        let d2 = self.segment(k + 1) as i128;
        let d3 = self.segment(k + 2) as i128;
        let new = d1 + d3 + 1 - d2;
        if new < 0 {
            return Err(Error::NegativeMultiplicity { position: k, value: new });
        }
        let new = u64::try_from(new).map_err(|_| Error::Overflow("multiplicity"))?;
        let mut out = self.clone();
        out.branes.swap(k, k + 1);
        out.mults[k] = new;
        Ok(out)
    }

    /// NS5 count strictly right of each D5 brane.
    pub fn sigma(&self) -> Vec<i64> {
        let mut right_v = self.n() as i64;
        let mut sigma = Vec::new();
        for &kind in &self.branes {
            match kind {
                BraneKind::Ns5 => right_v -= 1,
                BraneKind::D5 => sigma.push(right_v),
            }
        }
        sigma
    }

    /// Moves every NS5 to the left by repeatedly applying the move at the
    /// leftmost (D5, NS5) adjacency.
    pub fn separate(&self) -> Result<(Self, HwTrace)> {
        let mut cur = self.clone();
        let mut steps = Vec::new();
        while let Some(k) = cur.branes.windows(2).position(|w| w[0] == BraneKind::D5 && w[1] == BraneKind::Ns5) {
            let next = cur.hw_step(k)?;
            steps.push(HwStep { position: k, old_mult: cur.segment(k + 1), new_mult: next.segment(k + 1) });
            cur = next;
        }
        Ok((cur, HwTrace { steps, sigma: self.sigma() }))
    }

    /// Replays a trace produced by [`separate`](Self::separate).
    pub fn replay(&self, trace: &HwTrace) -> Result<Self> {
        trace.steps.iter().try_fold(self.clone(), |d, s| d.hw_step(s.position))
    }
}

impl fmt::Display for BraneDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, kind) in self.branes.iter().enumerate() {
            write!(f, "{}", kind.symbol())?;
            if let Some(d) = self.mults.get(p) {
                write!(f, "{d}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for BraneDiagram {
    type Err = Error;

    /// Accepts `/` and `\` for NS5 and D5, plus the shell-friendly aliases `s`
    /// and `b`. Whitespace is ignored.
    fn from_str(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::MalformedDiagram(msg);
        let mut branes = Vec::new();
        let mut mults = Vec::new();
        let mut digits = String::new();
        // set when whitespace follows a number, so "1 2" is two integers
        let mut closed = false;
        for ch in text.chars() {
            if ch.is_whitespace() {
                closed = !digits.is_empty();
                continue;
            }
            let kind = match ch {
                '/' | 's' => BraneKind::Ns5,
                '\\' | 'b' => BraneKind::D5,
                '0'..='9' => {
                    if branes.is_empty() {
                        return Err(bad("leading integer before the first brane".into()));
                    }
                    if closed {
                        return Err(bad(format!("two integers after brane {}", branes.len())));
                    }
                    digits.push(ch);
                    continue;
                }
                other => return Err(bad(format!("illegal character {other:?}"))),
            };
            if !branes.is_empty() {
                if digits.is_empty() {
                    return Err(bad(format!("missing multiplicity after brane {}", branes.len())));
                }
                let d = digits.parse::<u64>().map_err(|_| Error::Overflow("multiplicity"))?;
                mults.push(d);
                digits.clear();
                closed = false;
            }
            branes.push(kind);
        }
        if branes.is_empty() {
            return Err(bad("empty input".into()));
        }
        if !digits.is_empty() {
            return Err(bad("trailing integer after the last brane".into()));
        }
        BraneDiagram::new(branes, mults)
    }
}
