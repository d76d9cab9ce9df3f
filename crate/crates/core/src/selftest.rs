//! Invariant checks over single diagrams, and a runner that applies them to a
//! seeded corpus. Each check returns the number of cases it examined, or a
//! message naming the first violation.

use std::collections::BTreeSet;

use crate::brane::{BraneDiagram, BraneKind};
use crate::butterfly::{build_butterfly_diagram, check_invariants, tangent_class_oracle};
use crate::charring::{canonical, check_self_dual, Weight};
use crate::corpus::{corpus, CorpusSpec};
use crate::curves::{block_swaps, classify_indexed, skeleton, CurveReport, CurveType};
use crate::exec::Exec;
use crate::fixedpoints::{bct_to_ties, enumerate_fixed_points, ties_to_bct, Bct, FixedPointIndex};
use crate::tangent::{pair_count_from_margins, pair_table, tangent_weights, tangent_weights_general};

pub type Check = std::result::Result<usize, String>;

fn points(d: &BraneDiagram) -> std::result::Result<Vec<Bct>, String> {
    enumerate_fixed_points(d).map_err(|e| format!("{d}: {e}"))
}

/// Closed formula against the term-by-term expansion, at every fixed point.
pub fn oracle_equivalence(d: &BraneDiagram) -> Check {
    let sigma = d.sigma();
    let pts = points(d)?;
    for b in &pts {
        let ties = bct_to_ties(b, d).map_err(|e| e.to_string())?;
        let slow = tangent_class_oracle(&ties).map_err(|e| format!("{d} at {b}: {e}"))?;
        let fast = tangent_weights_general(b, &sigma).map_err(|e| e.to_string())?;
        if canonical(fast) != canonical(slow) {
            return Err(format!("{d} at {b}: formula and expansion differ"));
        }
    }
    Ok(pts.len())
}

pub fn self_duality(d: &BraneDiagram) -> Check {
    let pts = points(d)?;
    for b in &pts {
        if !check_self_dual(&tangent_weights(b)) {
            return Err(format!("{d} at {b}: weights are not closed under w -> h/w"));
        }
    }
    Ok(pts.len())
}

/// The 01-pair count is the same for every fixed point and matches the
/// margin formula.
pub fn margin_count(d: &BraneDiagram) -> Check {
    let want = pair_count_from_margins(&d.charges());
    let pts = points(d)?;
    for b in &pts {
        let got = pair_table(b).pairs01.len() as i64;
        if got != want {
            return Err(format!("{d} at {b}: {got} 01-pairs, margin formula gives {want}"));
        }
    }
    Ok(pts.len())
}

pub fn tie_round_trip(d: &BraneDiagram) -> Check {
    let pts = points(d)?;
    for b in &pts {
        let t = bct_to_ties(b, d).map_err(|e| e.to_string())?;
        let back = ties_to_bct(&t).map_err(|e| e.to_string())?;
        if back.bct != *b {
            return Err(format!("{d} at {b}: tie round trip gave {}", back.bct));
        }
        check_invariants(&build_butterfly_diagram(&t)).map_err(|e| format!("{d} at {b}: {e}"))?;
    }
    Ok(pts.len())
}

fn reports(sep: &BraneDiagram) -> std::result::Result<(Vec<Bct>, Vec<CurveReport>), String> {
    if !sep.is_separated() {
        return Err(format!("{sep} is not separated"));
    }
    let pts = points(sep)?;
    let index = FixedPointIndex::new(&pts);
    let reps = pts
        .iter()
        .map(|b| classify_indexed(b, &index).map_err(|e| format!("{sep} at {b}: {e}")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok((pts, reps))
}

/// Curve weights, with multiplicity, are exactly the tangent weights.
pub fn completeness(sep: &BraneDiagram) -> Check {
    let (pts, reps) = reports(sep)?;
    for (b, r) in pts.iter().zip(&reps) {
        if canonical(r.weights()) != canonical(tangent_weights(b)) {
            return Err(format!("{sep} at {b}: curve weights differ from tangent weights"));
        }
    }
    Ok(pts.len())
}

/// Compact exactly for type I; each compact curve comes back from its other
/// end with the reciprocal weight.
pub fn reciprocity(sep: &BraneDiagram) -> Check {
    let (pts, reps) = reports(sep)?;
    let mut cases = 0;
    for (p, r) in reps.iter().enumerate() {
        for c in r.curves() {
            if c.compact != (c.curve_type == CurveType::I) || c.compact != c.endpoint.is_some() {
                return Err(format!("{sep} at {}: {:?} curve with compact = {}", pts[p], c.curve_type, c.compact));
            }
            let Some(q) = c.endpoint else { continue };
            cases += 1;
            let back = c.weight.inverse();
            let mirrored = reps[q]
                .pencils
                .get(&back)
                .is_some_and(|cs| cs.iter().any(|m| m.curve_type == CurveType::I && m.endpoint == Some(p)));
            if !mirrored {
                return Err(format!("{sep}: curve {} from {} has no mirror at {}", c.weight, pts[p], pts[q]));
            }
        }
    }
    Ok(cases)
}

/// Within a pencil: one kind of noncompact curve at most, disjoint sites, and
/// at most one member that is not type I.
pub fn type_disjointness(sep: &BraneDiagram) -> Check {
    let (pts, reps) = reports(sep)?;
    for (b, r) in pts.iter().zip(&reps) {
        for (w, cs) in &r.pencils {
            let kinds: BTreeSet<CurveType> = cs.iter().map(|c| c.curve_type).collect();
            if kinds.contains(&CurveType::II) && kinds.contains(&CurveType::III) {
                return Err(format!("{sep} at {b}: pencil {w} mixes types II and III"));
            }
            if cs.iter().filter(|c| c.curve_type != CurveType::I).count() > 1 {
                return Err(format!("{sep} at {b}: pencil {w} has two noncompact members"));
            }
            let mut used = BTreeSet::new();
            for s in cs.iter().filter_map(|c| c.surgery.as_ref()) {
                if s.site.iter().any(|x| !used.insert(*x)) {
                    return Err(format!("{sep} at {b}: sites overlap in pencil {w}"));
                }
            }
        }
    }
    Ok(pts.len())
}

/// Compact curves are exactly the indecomposable block swaps.
pub fn block_swap_agreement(sep: &BraneDiagram) -> Check {
    let (pts, reps) = reports(sep)?;
    for (b, r) in pts.iter().zip(&reps) {
        let swaps: BTreeSet<_> = block_swaps(b).into_iter().map(|s| (s.cols.0, s.cols.1, s.rows, s.result)).collect();
        let mut compact = BTreeSet::new();
        for c in r.curves().filter(|c| c.compact) {
            let s = c.surgery.as_ref().ok_or("compact curve without surgery")?;
            let rows = s.matched_block.ok_or_else(|| format!("{sep} at {b}: compact curve without a matched block"))?;
            let end = pts[c.endpoint.expect("compact")].clone();
            compact.insert((s.source.min(s.target), s.source.max(s.target), rows, end));
        }
        if swaps != compact {
            return Err(format!("{sep} at {b}: {} block swaps, {} compact curves", swaps.len(), compact.len()));
        }
    }
    Ok(pts.len())
}

/// The skeleton has the right degree everywhere, and the weights around each
/// node are the tangent weights there in the input's own coordinates.
pub fn skeleton_consistency(d: &BraneDiagram, exec: Exec) -> Check {
    let s = skeleton(d, exec).map_err(|e| format!("{d}: {e}"))?;
    let sigma = d.sigma();
    for (p, b) in s.fixed_points.iter().enumerate() {
        let want = canonical(tangent_weights_general(b, &sigma).map_err(|e| e.to_string())?);
        if canonical(s.weights_at(p)) != want {
            return Err(format!("{d}: skeleton weights at {} are not the tangent weights", p + 1));
        }
    }
    Ok(s.fixed_points.len())
}

/// Positions where a Hanany-Witten move is possible.
pub fn hw_positions(d: &BraneDiagram) -> Vec<usize> {
    let k = d.branes();
    (0..k.len().saturating_sub(1)).filter(|&i| k[i] != k[i + 1] && d.hw_step(i).is_ok()).collect()
}

/// One Hanany-Witten move leaves the skeleton unchanged up to
/// `u_j -> u_j h^{sigma'_j - sigma_j}`, with nodes matched by their tables.
pub fn hw_invariance(d: &BraneDiagram, k: usize, exec: Exec) -> Check {
    let e = d.hw_step(k).map_err(|e| e.to_string())?;
    let (s, t) = (skeleton(d, exec).map_err(|x| x.to_string())?, skeleton(&e, exec).map_err(|x| x.to_string())?);
    if s.fixed_points != t.fixed_points {
        return Err(format!("{d} -> {e}: fixed points differ"));
    }
    let shift: Vec<i64> = t.sigma.iter().zip(&s.sigma).map(|(a, b)| a - b).collect();
    let map = |w: &Weight| w.reparametrize(&shift);
    let mut edges: Vec<_> = s.edges.iter().map(|x| (x.p1, x.p2, map(&x.w1), map(&x.w2))).collect();
    let mut other: Vec<_> = t.edges.iter().map(|x| (x.p1, x.p2, x.w1.clone(), x.w2.clone())).collect();
    let mut rays: Vec<_> = s.rays.iter().map(|r| (r.p, r.dim, map(&r.w), r.types.clone())).collect();
    let mut other_rays: Vec<_> = t.rays.iter().map(|r| (r.p, r.dim, r.w.clone(), r.types.clone())).collect();
    let mut pencils: Vec<_> = s.pencils.iter().map(|x| (x.p, x.dim, x.end, map(&x.w))).collect();
    let mut other_pencils: Vec<_> = t.pencils.iter().map(|x| (x.p, x.dim, x.end, x.w.clone())).collect();
    for v in [&mut edges, &mut other] {
        v.sort();
    }
    for v in [&mut rays, &mut other_rays] {
        v.sort();
    }
    for v in [&mut pencils, &mut other_pencils] {
        v.sort();
    }
    if edges != other || rays != other_rays || pencils != other_pencils {
        return Err(format!("{d} -> {e}: skeletons are not related by the reparametrization"));
    }
    Ok(s.fixed_points.len())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn tally(name: &'static str, results: Vec<Check>) -> Outcome {
    let mut out = Outcome { name, cases: 0, failures: Vec::new() };
    for r in results {
        match r {
            Ok(n) => out.cases += n,
            Err(e) => out.failures.push(e),
        }
    }
    out
}

type DiagramCheck = fn(&BraneDiagram) -> Check;

/// Every check over the corpus and its separated forms.
pub fn run(spec: CorpusSpec, exec: Exec) -> Vec<Outcome> {
    let ds = corpus(spec);
    let seps: Vec<BraneDiagram> = ds.iter().map(|d| d.separate().expect("corpus diagrams separate").0).collect();
    let on_all: [(&'static str, DiagramCheck); 4] = [
        ("oracle equivalence", oracle_equivalence),
        ("self-duality", self_duality),
        ("margin-only pair count", margin_count),
        ("tie and butterfly round trip", tie_round_trip),
    ];
    let on_separated: [(&'static str, DiagramCheck); 4] = [
        ("completeness", completeness),
        ("reciprocity and compactness", reciprocity),
        ("type disjointness", type_disjointness),
        ("block swaps are the compact curves", block_swap_agreement),
    ];
    let mut out = Vec::new();
    for (name, f) in on_all {
        out.push(tally(name, exec.map(&ds, f)));
    }
    for (name, f) in on_separated {
        out.push(tally(name, exec.map(&seps, f)));
    }
    out.push(tally("skeleton degrees and weights", exec.map(&ds, |d| skeleton_consistency(d, Exec::Sequential))));
    let moves: Vec<(BraneDiagram, usize)> =
        ds.iter().filter_map(|d| hw_positions(d).first().map(|&k| (d.clone(), k))).collect();
    out.push(tally("Hanany-Witten invariance", exec.map(&moves, |(d, k)| hw_invariance(d, *k, Exec::Sequential))));
    out
}

/// Kinds in a brane order, for messages.
pub fn shape(d: &BraneDiagram) -> String {
    d.branes().iter().map(|k| if *k == BraneKind::Ns5 { 'V' } else { 'U' }).collect()
}
