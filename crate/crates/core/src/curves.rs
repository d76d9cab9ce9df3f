//! Torus-invariant curves through a fixed point of a separated diagram, their
//! types and pencils, and the 1-skeleton of the whole variety.
//!
//! A curve of type I or II is a Young diagram surgery: a set of boxes moved
//! from `lambda^(a)` to `lambda^(b)` by a vertical translation. Boxes are
//! `(row, offset)` with offset 0 in the rightmost column of the right-aligned
//! drawing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::brane::BraneDiagram;
use crate::charring::Weight;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fixedpoints::{enumerate_fixed_points, subset_label, young_diagrams, Bct, FixedPointIndex};
use crate::tangent::pair_table;

pub type Site = BTreeSet<(usize, usize)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Surgery {
    /// column losing boxes
    #[serde(serialize_with = "one_based")]
    pub source: usize,
    /// column receiving boxes
    #[serde(serialize_with = "one_based")]
    pub target: usize,
    /// row of the pair that produced this surgery
    #[serde(serialize_with = "one_based")]
    pub row: usize,
    pub site: Site,
    /// height displacement; the boxes move down by `-delta_y` rows
    pub delta_y: i64,
    pub components: usize,
    pub right_col_boxes: usize,
    /// `(first, last)` rows of the matched block, if there is one
    #[serde(serialize_with = "one_based_pair")]
    pub matched_block: Option<(usize, usize)>,
    pub weight: Weight,
}

impl Surgery {
    /// Rows the site moves down by when it lands in the target diagram.
    pub fn translation(&self) -> i64 {
        -self.delta_y
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Blocked {
    pub surgery: Surgery,
    /// `c_a - c_b + 1`: boxes the rightmost column would need
    pub required: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairSurgery {
    Surgery(Surgery),
    Blocked(Blocked),
}

/// Strict partition of column `j`: parts `n - i` for rows `i` holding a 1.
fn parts(b: &Bct, j: usize) -> Vec<usize> {
    (0..b.n()).filter(|&i| b.get(i, j) == 1).map(|i| b.n() - i).collect()
}

fn boxes_of(parts: &[usize]) -> Site {
    parts.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |o| (r, o))).collect()
}

/// Reads a box set back as a right-aligned strict partition.
fn shape_of(boxes: &Site) -> Option<Vec<usize>> {
    let rows = boxes.iter().map(|&(r, _)| r + 1).max().unwrap_or(0);
    let mut out = Vec::with_capacity(rows);
    for r in 0..rows {
        let len = boxes.range((r, 0)..(r + 1, 0)).count();
        if (0..len).any(|o| !boxes.contains(&(r, o))) {
            return None;
        }
        if len == 0 || out.last().is_some_and(|&prev| prev <= len) {
            return None;
        }
        out.push(len);
    }
    Some(out)
}

/// Number of components of a box set, boxes being closed unit squares (so
/// boxes touching at a corner are connected).
pub fn component_count(site: &Site) -> usize {
    components_of(site).len()
}

fn components_of(site: &Site) -> Vec<Site> {
    let mut left: Site = site.clone();
    let mut out = Vec::new();
    while let Some(&start) = left.iter().next() {
        left.remove(&start);
        let mut comp = Site::new();
        let mut stack = vec![start];
        while let Some((r, o)) = stack.pop() {
            comp.insert((r, o));
            for dr in -1i64..=1 {
                for dof in -1i64..=1 {
                    let (nr, no) = (r as i64 + dr, o as i64 + dof);
                    if nr < 0 || no < 0 {
                        continue;
                    }
                    let nb = (nr as usize, no as usize);
                    if left.remove(&nb) {
                        stack.push(nb);
                    }
                }
            }
        }
        out.push(comp);
    }
    out
}

/// The surgery attached to a pair at row `i`: column `a` holds the 1 and
/// column `b_col` the 0.
pub fn surgery_for_pair(b: &Bct, i: usize, a: usize, b_col: usize) -> Result<PairSurgery> {
    let not_pair = Error::NotAPair { row: i + 1, one_col: a + 1, zero_col: b_col + 1 };
    if i >= b.n() || a >= b.m() || b_col >= b.m() || a == b_col || b.get(i, a) != 1 || b.get(i, b_col) != 0 {
        return Err(not_pair);
    }
    let n = b.n();
    let mut d = 0i64;
    let mut last = None;
    for k in i..n {
        d += b.get(k, a) as i64 - b.get(k, b_col) as i64;
        if d == 0 {
            last = Some(k);
            break;
        }
    }
    let end = last.unwrap_or(n - 1);
    let delta = if last.is_some() { 0 } else { d as usize };
    let la: Vec<usize> = (i..=end).filter(|&k| b.get(k, a) == 1).map(|k| n - k).collect();
    let lb: Vec<usize> = (i..=end).filter(|&k| b.get(k, b_col) == 1).map(|k| n - k).collect();
    let sa_before = (0..i).filter(|&k| b.get(k, a) == 1).count();
    let sb_before = (0..i).filter(|&k| b.get(k, b_col) == 1).count();

    let mut site = Site::new();
    for (t, &len) in la.iter().enumerate() {
        let from = lb.get(t).copied().unwrap_or(0);
        for o in from..len {
            site.insert((sa_before + t, o));
        }
    }
    let delta_y = sa_before as i64 - sb_before as i64;
    let surgery = Surgery {
        source: a,
        target: b_col,
        row: i,
        components: component_count(&site),
        right_col_boxes: site.iter().filter(|&&(_, o)| o == 0).count(),
        site,
        delta_y,
        matched_block: last.map(|l| (i, l)),
        weight: Weight::ratio(b.m(), a, b_col, -delta_y),
    };
    debug_assert_eq!(surgery.right_col_boxes, delta);
    let margins = b.margins();
    let required = margins.c[a] - margins.c[b_col] + 1;
    if delta > 0 && a < b_col && (delta as i64) < required {
        return Ok(PairSurgery::Blocked(Blocked { surgery, required }));
    }
    Ok(PairSurgery::Surgery(surgery))
}

/// One connected surgery per component of the site.
pub fn split_components(s: &Surgery) -> Vec<Surgery> {
    let comps = components_of(&s.site);
    if comps.len() <= 1 {
        return vec![s.clone()];
    }
    comps
        .into_iter()
        .map(|site| Surgery {
            components: 1,
            right_col_boxes: site.iter().filter(|&&(_, o)| o == 0).count(),
            matched_block: None,
            site,
            ..s.clone()
        })
        .collect()
}

/// Moves the union of `sites` from column `a` to column `b_col`, shifting
/// rows by `translation`. `None` if either diagram stops being a strict
/// partition.
pub fn apply_sites(b: &Bct, a: usize, b_col: usize, sites: &[&Site], translation: i64) -> Option<Bct> {
    let n = b.n();
    let mut src = boxes_of(&parts(b, a));
    let mut dst = boxes_of(&parts(b, b_col));
    for site in sites {
        for &(r, o) in site.iter() {
            if !src.remove(&(r, o)) {
                return None;
            }
            let nr = r as i64 + translation;
            if nr < 0 || !dst.insert((nr as usize, o)) {
                return None;
            }
        }
    }
    let (pa, pb) = (shape_of(&src)?, shape_of(&dst)?);
    if pa.iter().chain(&pb).any(|&p| p > n) {
        return None;
    }
    let mut out = b.clone();
    for i in 0..n {
        out.set(i, a, 0);
        out.set(i, b_col, 0);
    }
    for p in pa {
        out.set(n - p, a, 1);
    }
    for p in pb {
        out.set(n - p, b_col, 1);
    }
    Some(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CurveType {
    I,
    II,
    III,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Curve {
    pub curve_type: CurveType,
    pub weight: Weight,
    pub surgery: Option<Surgery>,
    /// `(j, j', t)` for the type III curve of weight `u_j/u_j' h^t`
    #[serde(serialize_with = "one_based_type3")]
    pub type3: Option<(usize, usize, i64)>,
    pub compact: bool,
    /// index of the other fixed point, for compact curves
    #[serde(serialize_with = "one_based_opt")]
    pub endpoint: Option<usize>,
}

/// The type III curves: they depend only on the column margins.
pub fn nonsurgery_curves(b: &Bct) -> Vec<Curve> {
    let c = b.margins().c;
    let m = b.m();
    let mut out = Vec::new();
    for j in 0..m {
        for k in j + 1..m {
            for t in 1..=(c[k] - c[j]).max(0) {
                out.push(Curve {
                    curve_type: CurveType::III,
                    weight: Weight::ratio(m, j, k, t),
                    surgery: None,
                    type3: Some((j, k, t)),
                    compact: false,
                    endpoint: None,
                });
            }
        }
    }
    out
}

/// Curves through one fixed point, grouped into pencils by tangent weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveReport {
    pub point: Bct,
    pub pencils: BTreeMap<Weight, Vec<Curve>>,
    pub blocked: Vec<Blocked>,
}

impl CurveReport {
    pub fn curves(&self) -> impl Iterator<Item = &Curve> {
        self.pencils.values().flatten()
    }

    pub fn weights(&self) -> Vec<Weight> {
        self.curves().map(|c| c.weight.clone()).collect()
    }

    /// The fixed point reached by the type I part of a pencil: all of its
    /// sites moved at once.
    pub fn pencil_endpoint(&self, w: &Weight) -> Option<Bct> {
        let curves = self.pencils.get(w)?;
        let surgeries: Vec<&Surgery> =
            curves.iter().filter(|c| c.curve_type == CurveType::I).filter_map(|c| c.surgery.as_ref()).collect();
        let first = surgeries.first()?;
        let sites: Vec<&Site> = surgeries.iter().map(|s| &s.site).collect();
        apply_sites(&self.point, first.source, first.target, &sites, first.translation())
    }
}

impl Serialize for CurveReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Pencil<'a> {
            weight: String,
            dim: usize,
            curves: &'a [Curve],
        }
        let pencils: Vec<Pencil> =
            self.pencils.iter().map(|(w, cs)| Pencil { weight: w.to_string(), dim: cs.len(), curves: cs }).collect();
        let mut st = s.serialize_struct("CurveReport", 3)?;
        st.serialize_field("fixed_point", &self.point)?;
        st.serialize_field("pencils", &pencils)?;
        st.serialize_field("blocked", &self.blocked)?;
        st.end()
    }
}

/// Classifies all curves through `b`, a fixed point of the separated diagram
/// `d`.
pub fn classify_curves(b: &Bct, d: &BraneDiagram) -> Result<CurveReport> {
    if !d.is_separated() {
        return Err(Error::NotSeparated);
    }
    let points = enumerate_fixed_points(d)?;
    classify_indexed(b, &FixedPointIndex::new(&points))
}

/// As `classify_curves`, with the canonical enumeration already indexed.
pub fn classify_indexed(b: &Bct, index: &FixedPointIndex) -> Result<CurveReport> {
    let t = pair_table(b);
    let mut seen: BTreeSet<(usize, usize, Site)> = BTreeSet::new();
    let mut blocked = Vec::new();
    let mut pencils: BTreeMap<Weight, Vec<Curve>> = BTreeMap::new();
    let pairs = t.pairs01.iter().map(|&(i, j0, j1)| (i, j1, j0)).chain(t.pairs10.iter().copied());
    for (i, a, b_col) in pairs {
        match surgery_for_pair(b, i, a, b_col)? {
            PairSurgery::Blocked(x) => blocked.push(x),
            PairSurgery::Surgery(s) => {
                for part in split_components(&s) {
                    if !seen.insert((part.source, part.target, part.site.clone())) {
                        continue;
                    }
                    let compact = part.right_col_boxes == 0;
                    let endpoint = if compact {
                        let q = apply_sites(b, part.source, part.target, &[&part.site], part.translation());
                        Some(q.and_then(|q| index.find(&q)).ok_or_else(|| {
                            Error::NoSuchFixedPoint(format!("surgery from row {} of {b}", part.row + 1))
                        })?)
                    } else {
                        None
                    };
                    pencils.entry(part.weight.clone()).or_default().push(Curve {
                        curve_type: if compact { CurveType::I } else { CurveType::II },
                        weight: part.weight.clone(),
                        surgery: Some(part),
                        type3: None,
                        compact,
                        endpoint,
                    });
                }
            }
        }
    }
    for c in nonsurgery_curves(b) {
        pencils.entry(c.weight.clone()).or_default().push(c);
    }
    Ok(CurveReport { point: b.clone(), pencils, blocked })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSwap {
    pub cols: (usize, usize),
    pub rows: (usize, usize),
    pub result: Bct,
}

/// Indecomposable block swaps: for each pair of columns and each row where
/// they differ, the shortest matched block starting there.
pub fn block_swaps(b: &Bct) -> Vec<BlockSwap> {
    let mut out = Vec::new();
    for j in 0..b.m() {
        for k in j + 1..b.m() {
            for i in 0..b.n() {
                if b.get(i, j) == b.get(i, k) {
                    continue;
                }
                let mut d = 0i64;
                for last in i..b.n() {
                    d += b.get(last, j) as i64 - b.get(last, k) as i64;
                    if d == 0 {
                        out.push(BlockSwap { cols: (j, k), rows: (i, last), result: b.swap_columns(j, k, i, last) });
                        break;
                    }
                }
            }
        }
    }
    out
}

/// One compact invariant curve, seen from both of its fixed points.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SkeletonEdge {
    #[serde(serialize_with = "one_based")]
    pub p1: usize,
    #[serde(serialize_with = "one_based")]
    pub p2: usize,
    pub w1: Weight,
    pub w2: Weight,
}

/// A pencil at one fixed point: all curves there with tangent weight `w`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Pencil {
    #[serde(serialize_with = "one_based")]
    pub p: usize,
    pub w: Weight,
    pub dim: usize,
    /// number of type I members
    pub compact_dim: usize,
    /// fixed point reached by moving every type I site at once
    #[serde(serialize_with = "one_based_opt")]
    pub end: Option<usize>,
    pub types: Vec<CurveType>,
}

/// The noncompact part of a pencil.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Ray {
    #[serde(serialize_with = "one_based")]
    pub p: usize,
    pub dim: usize,
    pub w: Weight,
    pub types: Vec<CurveType>,
}

fn one_based<S: Serializer>(x: &usize, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(*x as u64 + 1)
}

fn one_based_pair<S: Serializer>(x: &Option<(usize, usize)>, s: S) -> std::result::Result<S::Ok, S::Error> {
    x.map(|(a, b)| (a + 1, b + 1)).serialize(s)
}

fn one_based_type3<S: Serializer>(x: &Option<(usize, usize, i64)>, s: S) -> std::result::Result<S::Ok, S::Error> {
    x.map(|(j, k, t)| (j + 1, k + 1, t)).serialize(s)
}

fn one_based_opt<S: Serializer>(x: &Option<usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_some(&(*x as u64 + 1)),
        None => s.serialize_none(),
    }
}

/// Fixed points, compact curves between them, pencils and rays. Weights are
/// in the coordinates of the input diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Skeleton {
    pub diagram: String,
    pub separated: String,
    pub sigma: Vec<i64>,
    pub fixed_points: Vec<Bct>,
    pub edges: Vec<SkeletonEdge>,
    pub pencils: Vec<Pencil>,
    pub rays: Vec<Ray>,
}

/// Per fixed point: compact curves as `(other end, weight)`, pencils, rays,
/// all in separated coordinates.
type Incidence = (Vec<(usize, Weight)>, Vec<Pencil>, Vec<Ray>);

fn incidence(p: usize, report: &CurveReport, index: &FixedPointIndex) -> Result<Incidence> {
    let mut curves = Vec::new();
    let mut pencils = Vec::new();
    let mut rays = Vec::new();
    for (w, members) in &report.pencils {
        let types: Vec<CurveType> = members.iter().map(|c| c.curve_type).collect::<BTreeSet<_>>().into_iter().collect();
        let compact_dim = members.iter().filter(|c| c.compact).count();
        curves.extend(members.iter().filter_map(|c| c.endpoint).map(|q| (q, w.clone())));
        let end = if compact_dim > 0 {
            let q = report
                .pencil_endpoint(w)
                .and_then(|q| index.find(&q))
                .ok_or_else(|| Error::NoSuchFixedPoint(format!("end of the {w} pencil at {}", p + 1)))?;
            Some(q)
        } else {
            None
        };
        pencils.push(Pencil { p, w: w.clone(), dim: members.len(), compact_dim, end, types: types.clone() });
        if members.len() > compact_dim {
            rays.push(Ray { p, dim: members.len() - compact_dim, w: w.clone(), types });
        }
    }
    Ok((curves, pencils, rays))
}

pub fn skeleton(d: &BraneDiagram, exec: Exec) -> Result<Skeleton> {
    let (sep, trace) = d.separate()?;
    let sigma = trace.sigma;
    let points = enumerate_fixed_points(&sep)?;
    let index = FixedPointIndex::new(&points);
    let ids: Vec<usize> = (0..points.len()).collect();
    let per_point = exec.try_map(&ids, |&p| {
        let report = classify_indexed(&points[p], &index)?;
        incidence(p, &report, &index)
    })?;
    let lift = |w: &Weight| w.reparametrize(&sigma);
    let mut edges = BTreeSet::new();
    let mut pencils = Vec::new();
    let mut rays = Vec::new();
    for (p, (cs, ps, rs)) in per_point.into_iter().enumerate() {
        for (q, w) in cs {
            let (p1, p2, w1) = if p < q { (p, q, w) } else { (q, p, w.inverse()) };
            let w1 = lift(&w1);
            let w2 = w1.inverse();
            edges.insert(SkeletonEdge { p1, p2, w1, w2 });
        }
        pencils.extend(ps.into_iter().map(|x| Pencil { w: lift(&x.w), ..x }));
        rays.extend(rs.into_iter().map(|r| Ray { w: lift(&r.w), ..r }));
    }
    Ok(Skeleton {
        diagram: d.to_string(),
        separated: sep.to_string(),
        sigma,
        fixed_points: points,
        edges: edges.into_iter().collect(),
        pencils,
        rays,
    })
}

impl Skeleton {
    /// Number of curves through each fixed point, rays counted by dimension.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.fixed_points.len()];
        for e in &self.edges {
            deg[e.p1] += 1;
            deg[e.p2] += 1;
        }
        for r in &self.rays {
            deg[r.p] += r.dim;
        }
        deg
    }

    /// Weights of the curves at `p`, rays repeated by their dimension.
    pub fn weights_at(&self, p: usize) -> Vec<Weight> {
        let mut out = Vec::new();
        for e in &self.edges {
            if e.p1 == p {
                out.push(e.w1.clone());
            }
            if e.p2 == p {
                out.push(e.w2.clone());
            }
        }
        for r in self.rays.iter().filter(|r| r.p == p) {
            out.extend(std::iter::repeat_n(r.w.clone(), r.dim));
        }
        out
    }

    /// Pencils with more than one compact member, as unordered pairs of the
    /// fixed point and the far corner of the pencil.
    pub fn fans(&self) -> BTreeSet<(usize, usize, usize)> {
        self.pencils
            .iter()
            .filter(|x| x.compact_dim > 1)
            .filter_map(|x| x.end.map(|q| (x.p.min(q), x.p.max(q), x.compact_dim)))
            .collect()
    }

    pub fn node_label(&self, p: usize) -> String {
        match subset_label(&self.fixed_points[p]) {
            Some(s) => format!("{} ({s})", p + 1),
            None => (p + 1).to_string(),
        }
    }

    /// Graphviz rendering: solid edges for compact curves, bold edges for
    /// fans, dashed half-edges for rays.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph skeleton {\n");
        let _ = writeln!(s, "  label=\"{}\";", self.diagram.replace('\\', "\\\\"));
        for p in 0..self.fixed_points.len() {
            let _ = writeln!(s, "  p{} [label=\"{}\"];", p + 1, self.node_label(p));
        }
        for e in &self.edges {
            let _ = writeln!(s, "  p{} -- p{} [label=\"{}\"];", e.p1 + 1, e.p2 + 1, e.w1);
        }
        for (a, b, k) in self.fans() {
            let _ = writeln!(s, "  p{} -- p{} [style=bold, label=\"dim {k}\"];", a + 1, b + 1);
        }
        for (k, r) in self.rays.iter().enumerate() {
            let _ = writeln!(s, "  r{k} [shape=point, style=invis];");
            let _ = writeln!(s, "  p{} -- r{k} [style=dashed, label=\"dim {}, {}\"];", r.p + 1, r.dim, r.w);
        }
        s.push_str("}\n");
        s
    }
}

/// The Young diagrams of `b`, for display next to a curve report.
pub fn young_summary(b: &Bct) -> String {
    young_diagrams(b).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangent::tangent_weights;

    fn d(s: &str) -> BraneDiagram {
        s.parse().unwrap()
    }

    fn w(m: usize, s: &str) -> Weight {
        Weight::parse(m, s).unwrap()
    }

    fn fp13() -> Bct {
        Bct::from_rows(&[vec![0, 1], vec![1, 0], vec![0, 1], vec![1, 0], vec![1, 0]])
    }

    fn fp3() -> Bct {
        Bct::from_rows(&[vec![1, 0, 1], vec![0, 1, 0], vec![1, 0, 1]])
    }

    #[test]
    fn pair_surgeries_of_13() {
        let PairSurgery::Surgery(s) = surgery_for_pair(&fp13(), 0, 1, 0).unwrap() else { panic!() };
        assert_eq!(s.weight, w(2, "u2*u1^-1"));
        assert_eq!(s.site, [(0, 4)].into_iter().collect());
        assert_eq!(s.right_col_boxes, 0);
        let PairSurgery::Surgery(s) = surgery_for_pair(&fp13(), 1, 0, 1).unwrap() else { panic!() };
        assert_eq!(s.weight, w(2, "u1*u2^-1*h"));
        let PairSurgery::Blocked(x) = surgery_for_pair(&fp13(), 4, 0, 1).unwrap() else { panic!() };
        assert_eq!(x.required, 2);
        assert_eq!(x.surgery.right_col_boxes, 1);
        assert!(matches!(surgery_for_pair(&fp13(), 0, 0, 1), Err(Error::NotAPair { .. })));
    }

    #[test]
    fn classify_13() {
        let r = classify_curves(&fp13(), &d("/1/2/3/4/5\\2\\")).unwrap();
        let a = &r.pencils[&w(2, "u2*u1^-1")];
        assert_eq!(a.len(), 2);
        assert!(a.iter().all(|c| c.curve_type == CurveType::I && c.compact));
        let b = &r.pencils[&w(2, "u1*u2^-1*h")];
        let types: Vec<CurveType> = b.iter().map(|c| c.curve_type).collect();
        assert_eq!(types, vec![CurveType::I, CurveType::II]);
        assert_eq!(r.blocked.len(), 1);
        let mut got = r.weights();
        got.sort();
        let mut want = tangent_weights(&fp13());
        want.sort();
        assert_eq!(got, want);
        // endpoints 23 and 14, the whole pencil closes at 24
        let ends: Vec<usize> = a.iter().map(|c| c.endpoint.unwrap()).collect();
        assert_eq!(ends, vec![4, 2]);
        let q = r.pencil_endpoint(&w(2, "u2*u1^-1")).unwrap();
        assert_eq!(subset_label(&q).unwrap(), "24");
    }

    #[test]
    fn classify_five_point_example() {
        let r = classify_curves(&fp3(), &d("/2/3/5\\3\\2\\")).unwrap();
        let kinds = |s: &str| -> Vec<CurveType> { r.pencils[&w(3, s)].iter().map(|c| c.curve_type).collect() };
        assert_eq!(kinds("u3*u2^-1"), vec![CurveType::I, CurveType::II]);
        assert_eq!(kinds("u2*u3^-1*h"), vec![CurveType::I, CurveType::III]);
        assert_eq!(kinds("u1*u2^-1"), vec![CurveType::I]);
        assert_eq!(kinds("u2*u1^-1*h"), vec![CurveType::I]);
        assert_eq!(r.pencils.len(), 4);
        assert_eq!(r.blocked.len(), 1);
        assert_eq!(nonsurgery_curves(&fp3()).len(), 1);
    }

    #[test]
    fn non_separated_is_rejected() {
        let x = d("/2\\2/2\\4/3/3/4\\3/2\\2\\");
        assert!(matches!(classify_curves(&Bct::zeros(6, 5), &x), Err(Error::NotSeparated)));
    }

    #[test]
    fn trivial_report() {
        let r = classify_curves(&Bct::zeros(1, 1), &d("/0\\")).unwrap();
        assert!(r.pencils.is_empty());
    }

    #[test]
    fn components_with_corners() {
        let site: Site = [(0, 0), (1, 1)].into_iter().collect();
        assert_eq!(component_count(&site), 1);
        let site: Site = [(0, 0), (2, 0), (0, 3)].into_iter().collect();
        assert_eq!(component_count(&site), 3);
        let s = Surgery {
            source: 0,
            target: 1,
            row: 0,
            components: 2,
            right_col_boxes: 1,
            site: [(0, 0), (0, 2)].into_iter().collect(),
            delta_y: 0,
            matched_block: None,
            weight: Weight::one(2),
        };
        let parts = split_components(&s);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].right_col_boxes + parts[1].right_col_boxes, 1);
    }

    #[test]
    fn block_swaps_small() {
        let b = Bct::from_rows(&[vec![1, 0], vec![0, 1]]);
        let s = block_swaps(&b);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].result, Bct::from_rows(&[vec![0, 1], vec![1, 0]]));
        assert!(block_swaps(&Bct::zeros(2, 2)).is_empty());
    }

    #[test]
    fn two_point_skeleton() {
        let s = skeleton(&d("/1/2\\1\\"), Exec::Sequential).unwrap();
        assert_eq!(s.fixed_points.len(), 2);
        assert_eq!(s.edges.len(), 1);
        assert_eq!(s.rays.len(), 2);
        assert!(s.fans().is_empty());
        assert_eq!(s.degrees(), vec![2, 2]);
        assert_eq!(s.edges[0].w1, w(2, "u2*u1^-1"));
        assert_eq!(s.edges[0].w2, w(2, "u1*u2^-1"));
        assert!(s.to_dot().contains("p1 -- p2"));
    }
}
