//! Butterfly diagrams: one directed graph per D5 brane whose vertices carry
//! heights, giving the fixed-point restrictions of the tautological bundles
//! and, through them, a brute-force expansion of the tangent class.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::brane::{BraneDiagram, BraneKind};
use crate::charring::{KClass, Weight};
use crate::error::{Error, Result};
use crate::fixedpoints::TieDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeKind {
    /// leftward across a D5, same height
    A,
    /// downward inside a column next to a D5
    B,
    /// rightward across an NS5, same height
    C,
    /// leftward across an NS5, one step down
    D,
    /// framing to the top of the left column
    #[serde(rename = "a")]
    LowerA,
    /// right column to framing
    #[serde(rename = "b")]
    LowerB,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Node {
    Framing,
    Vertex(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub segment: usize,
    /// 0 for the top vertex of its column
    pub depth: usize,
    pub height: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub kind: EdgeKind,
    pub from: Node,
    pub to: Node,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Butterfly {
    /// 0-based D5 index
    pub d5: usize,
    pub position: usize,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ButterflyDiagram {
    #[serde(serialize_with = "as_text")]
    pub diagram: BraneDiagram,
    pub butterflies: Vec<Butterfly>,
}

fn as_text<S: serde::Serializer>(d: &BraneDiagram, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&d.to_string())
}

impl Butterfly {
    /// Vertices of one segment column, top first.
    pub fn column(&self, segment: usize) -> impl Iterator<Item = (usize, &Vertex)> {
        self.vertices.iter().enumerate().filter(move |(_, v)| v.segment == segment)
    }

    pub fn count(&self, segment: usize) -> usize {
        self.column(segment).count()
    }

    fn at(&self, segment: usize, height: i64) -> Option<usize> {
        self.column(segment).find(|(_, v)| v.height == height).map(|(k, _)| k)
    }
}

fn build_one(t: &TieDiagram, j: usize, counts: &[u64]) -> Butterfly {
    let d = &t.diagram;
    let kinds = d.branes();
    let pu = d.d5_positions()[j];
    let (minus, plus) = (counts[pu], counts[pu + 1]);
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    if minus == 0 && plus == 0 {
        return Butterfly { d5: j, position: pu, vertices, edges };
    }

    // top heights per covered segment, propagated from the anchor column
    let mut tops: BTreeMap<usize, i64> = BTreeMap::new();
    let anchor = if minus > 0 { (pu, 0) } else { (pu + 1, plus as i64) };
    tops.insert(anchor.0, anchor.1);
    // step across brane k, from X_k to X_{k+1}
    let step = |k: usize, top: i64| -> i64 {
        match kinds[k] {
            BraneKind::D5 => top - counts[k] as i64 + counts[k + 1] as i64,
            BraneKind::Ns5 if k > pu => top,
            BraneKind::Ns5 => top + 1,
        }
    };
    let mut k = anchor.0;
    while k + 1 < counts.len() && counts[k + 1] > 0 {
        let next = step(k, tops[&k]);
        tops.insert(k + 1, next);
        k += 1;
    }
    let mut k = anchor.0;
    while k > 0 && counts[k - 1] > 0 {
        // invert the step across brane k-1
        let here = tops[&k];
        let prev = match kinds[k - 1] {
            BraneKind::D5 => here + counts[k - 1] as i64 - counts[k] as i64,
            BraneKind::Ns5 if k - 1 > pu => here,
            BraneKind::Ns5 => here - 1,
        };
        tops.insert(k - 1, prev);
        k -= 1;
    }

    for (&seg, &top) in &tops {
        for depth in 0..counts[seg] as usize {
            vertices.push(Vertex { segment: seg, depth, height: top - depth as i64 });
        }
    }
    let mut b = Butterfly { d5: j, position: pu, vertices, edges: Vec::new() };

    for &seg in tops.keys() {
        let next_to_d5 =
            (seg > 0 && kinds[seg - 1] == BraneKind::D5) || (seg < kinds.len() && kinds[seg] == BraneKind::D5);
        if next_to_d5 {
            let col: Vec<usize> = b.column(seg).map(|(k, _)| k).collect();
            for w in col.windows(2) {
                edges.push(Edge { kind: EdgeKind::B, from: Node::Vertex(w[0]), to: Node::Vertex(w[1]) });
            }
        }
        if !tops.contains_key(&(seg + 1)) {
            continue;
        }
        // brane `seg` separates X_seg from X_{seg+1}
        for (li, lv) in b.column(seg) {
            match kinds[seg] {
                BraneKind::D5 => {
                    if let Some(ri) = b.at(seg + 1, lv.height) {
                        edges.push(Edge { kind: EdgeKind::A, from: Node::Vertex(ri), to: Node::Vertex(li) });
                    }
                }
                BraneKind::Ns5 => {
                    if let Some(ri) = b.at(seg + 1, lv.height) {
                        edges.push(Edge { kind: EdgeKind::C, from: Node::Vertex(li), to: Node::Vertex(ri) });
                    }
                    if let Some(ri) = b.at(seg + 1, lv.height + 1) {
                        edges.push(Edge { kind: EdgeKind::D, from: Node::Vertex(ri), to: Node::Vertex(li) });
                    }
                }
            }
        }
    }
    if minus > 0 {
        let top = b.column(pu).next().map(|(k, _)| k).expect("nonempty column");
        edges.push(Edge { kind: EdgeKind::LowerA, from: Node::Framing, to: Node::Vertex(top) });
    }
    if plus > minus {
        let k = (plus - minus - 1) as usize;
        let src = b.column(pu + 1).nth(k).map(|(i, _)| i).expect("vertex below framing");
        edges.push(Edge { kind: EdgeKind::LowerB, from: Node::Vertex(src), to: Node::Framing });
    }
    b.edges = edges;
    b
}

pub fn build_butterfly_diagram(t: &TieDiagram) -> ButterflyDiagram {
    let cov = t.coverage_by_d5();
    let butterflies = (0..t.diagram.m()).map(|j| build_one(t, j, &cov[j])).collect();
    ButterflyDiagram { diagram: t.diagram.clone(), butterflies }
}

/// Fixed-point restriction of every tautological bundle, indexed by segment.
pub fn taut_restrictions(bd: &ButterflyDiagram) -> Result<Vec<KClass>> {
    let m = bd.diagram.m();
    let mut out = vec![KClass::zero(m); bd.diagram.len() + 1];
    for b in &bd.butterflies {
        for v in &b.vertices {
            let w = Weight::u(m, b.d5).shift_h(v.height);
            out[v.segment].add_term(w, 1)?;
        }
    }
    Ok(out)
}

/// Expands the tangent class at the fixed point `t` term by term and returns
/// its weights. This is deliberately naive and serves as the reference for
/// the closed formula.
pub fn tangent_class_oracle(t: &TieDiagram) -> Result<Vec<Weight>> {
    let bd = build_butterfly_diagram(t);
    let xi = taut_restrictions(&bd)?;
    let d = &t.diagram;
    let m = d.m();
    let h = KClass::monomial(Weight::h(m));
    let mut total = KClass::zero(m);
    let mut d5 = 0;
    for (p, &kind) in d.branes().iter().enumerate() {
        let (minus, plus) = (&xi[p], &xi[p + 1]);
        let part = match kind {
            BraneKind::D5 => {
                let u = KClass::monomial(Weight::u(m, d5));
                d5 += 1;
                let mut s = KClass::hom(plus, minus)?;
                s = s.checked_add(&h.checked_mul(&KClass::hom(plus, &u)?)?)?;
                s = s.checked_add(&KClass::hom(&u, minus)?)?;
                s = s.checked_add(&h.checked_mul(&KClass::end(minus)?)?)?;
                s = s.checked_add(&h.checked_mul(&KClass::end(plus)?)?)?;
                s.checked_sub(&h.checked_mul(&KClass::hom(plus, minus)?)?)?
            }
            BraneKind::Ns5 => h.checked_mul(&KClass::hom(plus, minus)?)?.checked_add(&KClass::hom(minus, plus)?)?,
        };
        total = total.checked_add(&part)?;
    }
    let one_plus_h = KClass::monomial(Weight::one(m)).checked_add(&h)?;
    for x in &xi {
        total = total.checked_sub(&one_plus_h.checked_mul(&KClass::end(x)?)?)?;
    }
    total.weights_of()
}

impl fmt::Display for ButterflyDiagram {
    /// One block per D5 brane: rows are heights, columns are segments, `o`
    /// marks a vertex.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.butterflies {
            write!(f, "U{}", b.d5 + 1)?;
            if b.vertices.is_empty() {
                writeln!(f, ": empty")?;
                continue;
            }
            writeln!(f)?;
            let lo = b.vertices.iter().map(|v| v.segment).min().unwrap_or(0);
            let hi = b.vertices.iter().map(|v| v.segment).max().unwrap_or(0);
            let top = b.vertices.iter().map(|v| v.height).max().unwrap_or(0);
            let bottom = b.vertices.iter().map(|v| v.height).min().unwrap_or(0);
            write!(f, "{:>5}", "")?;
            for s in lo..=hi {
                write!(f, "{:>4}", format!("X{s}"))?;
            }
            writeln!(f)?;
            for y in (bottom..=top).rev() {
                write!(f, "{y:>5}")?;
                for s in lo..=hi {
                    let c = if b.at(s, y).is_some() { "o" } else { "." };
                    write!(f, "{c:>4}")?;
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Checks the structural invariants of a butterfly diagram: column counts add
/// up to the multiplicities, framing edges sit at heights 0 and 1, and
/// downward edges drop the height by one.
pub fn check_invariants(bd: &ButterflyDiagram) -> Result<()> {
    let fail = |msg: String| Err(Error::InvalidTies(msg));
    for k in 0..=bd.diagram.len() {
        let total: usize = bd.butterflies.iter().map(|b| b.count(k)).sum();
        if total as u64 != bd.diagram.segment(k) {
            return fail(format!("butterflies give {total} vertices over X_{k}"));
        }
    }
    for b in &bd.butterflies {
        let height = |n: Node| match n {
            Node::Vertex(i) => b.vertices[i].height,
            Node::Framing => 0,
        };
        for e in &b.edges {
            let ok = match e.kind {
                EdgeKind::LowerA => height(e.to) == 0,
                EdgeKind::LowerB => height(e.from) == 1,
                EdgeKind::B => height(e.from) - height(e.to) == 1,
                EdgeKind::D => height(e.from) - height(e.to) == 1,
                EdgeKind::A | EdgeKind::C => height(e.from) == height(e.to),
            };
            if !ok {
                return fail(format!("edge {:?} of U{} breaks the height rule", e.kind, b.d5 + 1));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixedpoints::{bct_to_ties, enumerate_fixed_points, Bct};

    fn running() -> BraneDiagram {
        "/2\\2/2\\4/3/3/4\\3/2\\2\\".parse().unwrap()
    }

    fn running_table() -> Bct {
        Bct::from_rows(&[
            vec![1, 1, 0, 0, 0],
            vec![1, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0],
            vec![1, 0, 1, 0, 0],
            vec![1, 1, 0, 0, 1],
            vec![1, 0, 0, 0, 1],
        ])
    }

    fn w(s: &str) -> Weight {
        Weight::parse(5, s).unwrap()
    }

    #[test]
    fn restriction_at_x7() {
        let t = bct_to_ties(&running_table(), &running()).unwrap();
        let bd = build_butterfly_diagram(&t);
        check_invariants(&bd).unwrap();
        let xi = taut_restrictions(&bd).unwrap();
        let want = KClass::from_weights(5, &[w("u2*h^2"), w("u3"), w("u3*h^-1"), w("u5*h^-1")]).unwrap();
        assert_eq!(xi[7], want);
        assert!(xi[0].is_zero());
        assert!(bd.butterflies[3].vertices.is_empty());
    }

    #[test]
    fn butterfly_counts() {
        let t = bct_to_ties(&running_table(), &running()).unwrap();
        let bd = build_butterfly_diagram(&t);
        let counts: Vec<Vec<usize>> = bd.butterflies.iter().map(|b| (0..=11).map(|k| b.count(k)).collect()).collect();
        assert_eq!(counts[0], vec![0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(counts[3], vec![0; 12]);
        let total: Vec<usize> = (0..=11).map(|k| counts.iter().map(|c| c[k]).sum()).collect();
        assert_eq!(total, vec![0, 2, 2, 2, 4, 3, 3, 4, 3, 2, 2, 0]);
    }

    #[test]
    fn trivial_diagram() {
        let d: BraneDiagram = "/0\\".parse().unwrap();
        let t = bct_to_ties(&Bct::zeros(1, 1), &d).unwrap();
        let bd = build_butterfly_diagram(&t);
        assert!(bd.butterflies[0].vertices.is_empty());
        assert!(tangent_class_oracle(&t).unwrap().is_empty());
    }

    #[test]
    fn oracle_on_small_examples() {
        let d: BraneDiagram = "/1\\".parse().unwrap();
        for b in enumerate_fixed_points(&d).unwrap() {
            assert!(tangent_class_oracle(&bct_to_ties(&b, &d).unwrap()).unwrap().is_empty());
        }
        let d: BraneDiagram = "/1/2/3/4/5\\2\\".parse().unwrap();
        for b in enumerate_fixed_points(&d).unwrap() {
            let t = bct_to_ties(&b, &d).unwrap();
            check_invariants(&build_butterfly_diagram(&t)).unwrap();
            assert_eq!(tangent_class_oracle(&t).unwrap().len(), 4);
        }
    }

    #[test]
    fn separated_restrictions_are_geometric_sums() {
        // on a separated diagram, X_k (k <= n) carries h^{k-n}(1 + h^-1 + ...)
        // with s_kj terms for U_j
        let d: BraneDiagram = "/2/3/5\\3\\2\\".parse().unwrap();
        for b in enumerate_fixed_points(&d).unwrap() {
            let xi = taut_restrictions(&build_butterfly_diagram(&bct_to_ties(&b, &d).unwrap())).unwrap();
            for (k, x) in xi.iter().enumerate().take(4).skip(1) {
                let mut want = KClass::zero(3);
                for j in 0..3 {
                    let s = (0..k).filter(|&i| b.get(i, j) == 1).count() as i64;
                    for e in 0..s {
                        want.add_term(Weight::u(3, j).shift_h(k as i64 - 3 - e), 1).unwrap();
                    }
                }
                assert_eq!(x, &want, "{b} X_{k}");
            }
        }
    }

    #[test]
    fn render_and_json() {
        let t = bct_to_ties(&running_table(), &running()).unwrap();
        let bd = build_butterfly_diagram(&t);
        let text = bd.to_string();
        assert!(text.contains("U4: empty"));
        let v = serde_json::to_value(&bd).unwrap();
        assert_eq!(v["butterflies"].as_array().unwrap().len(), 5);
    }
}
