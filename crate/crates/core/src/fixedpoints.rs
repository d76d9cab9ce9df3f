//! Torus fixed points as binary contingency tables (BCTs), and the
//! equivalent tie-diagram and Young-diagram codes.
//!
//! Rows are NS5 branes `V_1..V_n` top to bottom, columns are D5 branes
//! `U_1..U_m` left to right. Indices in this API are 0-based; the text and
//! JSON renderings are 1-based.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::brane::{tuple, BraneDiagram, BraneKind, Margins};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bct {
    n: usize,
    m: usize,
    bits: Vec<u8>,
}

impl Bct {
    pub fn zeros(n: usize, m: usize) -> Self {
        Bct { n, m, bits: vec![0; n * m] }
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == m && r.iter().all(|&b| b <= 1)));
        Bct { n, m, bits: rows.concat() }
    }

    pub fn from_bits(n: usize, m: usize, bits: Vec<u8>) -> Self {
        assert_eq!(bits.len(), n * m);
        Bct { n, m, bits }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.bits[i * self.m + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.bits[i * self.m + j] = v;
    }

    /// Row-major entries; the lexicographic order of this slice is the
    /// canonical fixed-point order.
    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        if self.m == 0 {
            return vec![Vec::new(); self.n];
        }
        self.bits.chunks(self.m).map(|r| r.to_vec()).collect()
    }

    pub fn margins(&self) -> Margins {
        let r = (0..self.n).map(|i| (0..self.m).map(|j| self.get(i, j) as i64).sum()).collect();
        let c = (0..self.m).map(|j| (0..self.n).map(|i| self.get(i, j) as i64).sum()).collect();
        Margins { r, c }
    }

    /// Exchanges columns `a` and `b` on rows `first..=last`.
    pub fn swap_columns(&self, a: usize, b: usize, first: usize, last: usize) -> Bct {
        let mut out = self.clone();
        for i in first..=last {
            out.set(i, a, self.get(i, b));
            out.set(i, b, self.get(i, a));
        }
        out
    }
}

impl fmt::Display for Bct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows().iter().map(|r| r.iter().map(|b| b.to_string()).collect::<String>()).collect();
        write!(f, "{}", rows.join("|"))
    }
}

impl Serialize for Bct {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Bct", 3)?;
        st.serialize_field("rows", &self.n)?;
        st.serialize_field("cols", &self.m)?;
        st.serialize_field("bits", &self.rows())?;
        st.end()
    }
}

/// Gale-Ryser: a 0/1 matrix with row sums `r` and column sums `c` exists.
pub fn gale_ryser(r: &[i64], c: &[i64]) -> bool {
    let (n, m) = (r.len() as i64, c.len() as i64);
    if r.iter().any(|&x| x < 0 || x > m) || c.iter().any(|&x| x < 0 || x > n) {
        return false;
    }
    if r.iter().sum::<i64>() != c.iter().sum::<i64>() {
        return false;
    }
    let mut cs = c.to_vec();
    cs.sort_unstable_by(|a, b| b.cmp(a));
    let mut prefix = 0;
    for (k, &ck) in cs.iter().enumerate() {
        prefix += ck;
        let bound: i64 = r.iter().map(|&ri| ri.min(k as i64 + 1)).sum();
        if prefix > bound {
            return false;
        }
    }
    true
}

/// Streaming enumeration of all BCTs with given margins in ascending
/// lexicographic order of the row-major entries. Cell-by-cell backtracking,
/// with a Gale-Ryser test on the remaining rows at every row boundary.
pub struct BctIter {
    n: usize,
    m: usize,
    r: Vec<i64>,
    c: Vec<i64>,
    cells: Vec<u8>,
    row_sum: Vec<i64>,
    col_sum: Vec<i64>,
    pos: usize,
    state: IterState,
}

#[derive(PartialEq, Eq)]
enum IterState {
    Fresh,
    Emitted,
    Done,
}

impl BctIter {
    pub fn new(margins: &Margins) -> Self {
        let (n, m) = (margins.r.len(), margins.c.len());
        let feasible = gale_ryser(&margins.r, &margins.c);
        BctIter {
            n,
            m,
            r: margins.r.clone(),
            c: margins.c.clone(),
            cells: vec![0; n * m],
            row_sum: vec![0; n],
            col_sum: vec![0; m],
            pos: 0,
            state: if feasible { IterState::Fresh } else { IterState::Done },
        }
    }

    fn feasible(&self, pos: usize, v: u8) -> bool {
        let (i, j) = (pos / self.m, pos % self.m);
        let v = v as i64;
        let row = self.row_sum[i] + v;
        let col = self.col_sum[j] + v;
        if row > self.r[i] || row + ((self.m - j - 1) as i64) < self.r[i] {
            return false;
        }
        if col > self.c[j] || col + ((self.n - i - 1) as i64) < self.c[j] {
            return false;
        }
        if j + 1 == self.m {
            let rest_c: Vec<i64> =
                (0..self.m).map(|jj| self.c[jj] - self.col_sum[jj] - if jj == j { v } else { 0 }).collect();
            return gale_ryser(&self.r[i + 1..], &rest_c);
        }
        true
    }

    fn assign(&mut self, pos: usize, v: u8) {
        self.cells[pos] = v;
        self.row_sum[pos / self.m] += v as i64;
        self.col_sum[pos % self.m] += v as i64;
    }

    fn unassign(&mut self, pos: usize) {
        let v = self.cells[pos] as i64;
        self.row_sum[pos / self.m] -= v;
        self.col_sum[pos % self.m] -= v;
    }

    /// Searches forward from `self.pos`, trying values `>= start` at that cell.
    fn search(&mut self, mut start: u8) -> bool {
        let total = self.n * self.m;
        loop {
            if self.pos == total {
                return true;
            }
            let mut placed = false;
            for v in start..=1 {
                if self.feasible(self.pos, v) {
                    self.assign(self.pos, v);
                    self.pos += 1;
                    placed = true;
                    break;
                }
            }
            if placed {
                start = 0;
                continue;
            }
            if self.pos == 0 {
                return false;
            }
            self.pos -= 1;
            self.unassign(self.pos);
            start = self.cells[self.pos] + 1;
        }
    }
}

impl Iterator for BctIter {
    type Item = Bct;

    fn next(&mut self) -> Option<Bct> {
        let found = match self.state {
            IterState::Done => return None,
            IterState::Fresh => self.search(0),
            IterState::Emitted => {
                if self.pos == 0 {
                    false
                } else {
                    self.pos -= 1;
                    self.unassign(self.pos);
                    let start = self.cells[self.pos] + 1;
                    self.search(start)
                }
            }
        };
        if !found {
            self.state = IterState::Done;
            return None;
        }
        self.state = IterState::Emitted;
        Some(Bct { n: self.n, m: self.m, bits: self.cells.clone() })
    }
}

fn check_margins(m: &Margins) -> Result<()> {
    let (n, cols) = (m.r.len() as i64, m.c.len() as i64);
    if let Some(x) = m.r.iter().find(|&&x| x < 0 || x > cols) {
        return Err(Error::NegativeMargin(format!("row charge {x} outside 0..={cols}")));
    }
    if let Some(x) = m.c.iter().find(|&&x| x < 0 || x > n) {
        return Err(Error::NegativeMargin(format!("column charge {x} outside 0..={n}")));
    }
    Ok(())
}

/// All fixed points of `d`, in canonical order. Infeasible margins give an
/// empty list; out-of-range charges are an error.
pub fn enumerate_fixed_points(d: &BraneDiagram) -> Result<Vec<Bct>> {
    let m = d.charges();
    check_margins(&m)?;
    Ok(BctIter::new(&m).collect())
}

/// Maps a BCT to its position in the canonical enumeration.
#[derive(Clone, Debug, Default)]
pub struct FixedPointIndex {
    index: HashMap<Vec<u8>, usize>,
}

impl FixedPointIndex {
    pub fn new(points: &[Bct]) -> Self {
        FixedPointIndex { index: points.iter().enumerate().map(|(k, b)| (b.bits.clone(), k)).collect() }
    }

    pub fn find(&self, b: &Bct) -> Option<usize> {
        self.index.get(&b.bits).copied()
    }
}

/// Subset alias (rows of the ones in column 2, 1-based)
/// available when every row sum is 1 and there are two columns.
pub fn subset_label(b: &Bct) -> Option<String> {
    let margins = b.margins();
    if b.m() != 2 || margins.r.iter().any(|&x| x != 1) {
        return None;
    }
    let rows: Vec<String> = (0..b.n()).filter(|&i| b.get(i, 1) == 1).map(|i| (i + 1).to_string()).collect();
    let sep = if b.n() > 9 { "," } else { "" };
    Some(rows.join(sep))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TieDiagram {
    pub diagram: BraneDiagram,
    /// `(i, j)`: a tie between `V_i` and `U_j`.
    pub ties: BTreeSet<(usize, usize)>,
}

impl Serialize for TieDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let ties: Vec<[usize; 2]> = self.ties.iter().map(|&(i, j)| [i + 1, j + 1]).collect();
        let mut st = s.serialize_struct("TieDiagram", 2)?;
        st.serialize_field("diagram", &self.diagram.to_string())?;
        st.serialize_field("ties", &ties)?;
        st.end()
    }
}

impl TieDiagram {
    /// Segments `(first, last)` covered by a tie, inclusive: those strictly
    /// between its two branes.
    pub fn span(&self, i: usize, j: usize) -> (usize, usize) {
        let pv = self.diagram.ns5_positions()[i];
        let pu = self.diagram.d5_positions()[j];
        (pv.min(pu) + 1, pv.max(pu))
    }

    /// `coverage[j][k]` = number of ties at `U_j` covering segment `X_k`.
    pub fn coverage_by_d5(&self) -> Vec<Vec<u64>> {
        let segs = self.diagram.len() + 1;
        let mut cov = vec![vec![0u64; segs]; self.diagram.m()];
        let (vs, us) = (self.diagram.ns5_positions(), self.diagram.d5_positions());
        for &(i, j) in &self.ties {
            let (pv, pu) = (vs[i], us[j]);
            for slot in &mut cov[j][pv.min(pu) + 1..=pv.max(pu)] {
                *slot += 1;
            }
        }
        cov
    }

    pub fn validate(&self) -> Result<()> {
        let (n, m) = (self.diagram.n(), self.diagram.m());
        if let Some(&(i, j)) = self.ties.iter().find(|&&(i, j)| i >= n || j >= m) {
            return Err(Error::InvalidTies(format!("tie ({}, {}) names a missing brane", i + 1, j + 1)));
        }
        let cov = self.coverage_by_d5();
        for k in 0..=self.diagram.len() {
            let got: u64 = cov.iter().map(|c| c[k]).sum();
            let want = self.diagram.segment(k);
            if got != want {
                return Err(Error::InvalidTies(format!(
                    "segment X_{k} is covered {got} times, multiplicity is {want}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Step {
    Down,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableWithMargins {
    pub bct: Bct,
    pub separating_line: Vec<Step>,
}

fn ns5_right_of_d5(d: &BraneDiagram) -> impl Fn(usize, usize) -> bool {
    let (vs, us) = (d.ns5_positions(), d.d5_positions());
    move |i, j| vs[i] > us[j]
}

pub fn bct_to_ties(b: &Bct, d: &BraneDiagram) -> Result<TieDiagram> {
    let expected = d.charges();
    let found = b.margins();
    if expected != found || b.n() != d.n() || b.m() != d.m() {
        return Err(Error::MarginMismatch { expected: expected.to_string(), found: found.to_string() });
    }
    let right = ns5_right_of_d5(d);
    let mut ties = BTreeSet::new();
    for i in 0..b.n() {
        for j in 0..b.m() {
            if (b.get(i, j) == 1) != right(i, j) {
                ties.insert((i, j));
            }
        }
    }
    let t = TieDiagram { diagram: d.clone(), ties };
    debug_assert!(t.validate().is_ok());
    Ok(t)
}

pub fn ties_to_bct(t: &TieDiagram) -> Result<TableWithMargins> {
    t.validate()?;
    let d = &t.diagram;
    let right = ns5_right_of_d5(d);
    let mut bct = Bct::zeros(d.n(), d.m());
    for i in 0..d.n() {
        for j in 0..d.m() {
            let tied = t.ties.contains(&(i, j));
            bct.set(i, j, (tied != right(i, j)) as u8);
        }
    }
    let separating_line = d
        .branes()
        .iter()
        .map(|k| match k {
            BraneKind::Ns5 => Step::Down,
            BraneKind::D5 => Step::Right,
        })
        .collect();
    Ok(TableWithMargins { bct, separating_line })
}

/// Hanany-Witten move on a fixed point: ties follow their branes and the tie
/// between the swapped pair is toggled. The BCT does not change.
pub fn hw_fixed_point(t: &TieDiagram, k: usize) -> Result<TieDiagram> {
    let diagram = t.diagram.hw_step(k)?;
    let kinds = t.diagram.branes();
    let before = |p: usize| kinds[..p].iter().filter(|&&x| x == kinds[p]).count();
    let (p_v, p_u) = if kinds[k] == BraneKind::Ns5 { (k, k + 1) } else { (k + 1, k) };
    let pair = (before(p_v), before(p_u));
    let mut ties = t.ties.clone();
    if !ties.remove(&pair) {
        ties.insert(pair);
    }
    let out = TieDiagram { diagram, ties };
    out.validate()?;
    Ok(out)
}

/// Strict partitions `lambda^(j)`: parts `n - i` for the 0-based rows `i`
/// holding a 1 in column `j`, largest first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YoungTuple {
    pub diagrams: Vec<Vec<usize>>,
}

pub fn young_diagrams(b: &Bct) -> YoungTuple {
    let diagrams = (0..b.m()).map(|j| (0..b.n()).filter(|&i| b.get(i, j) == 1).map(|i| b.n() - i).collect()).collect();
    YoungTuple { diagrams }
}

impl fmt::Display for YoungTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.diagrams.iter().map(|l| tuple(l)).collect();
        write!(f, "{}", parts.join(" "))
    }
}
