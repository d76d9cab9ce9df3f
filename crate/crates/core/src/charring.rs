//! Characters of the torus `C*_h x prod_j C*_{u_j}`: Laurent monomials
//! ([`Weight`]) and sparse Laurent polynomials with integer coefficients
//! ([`KClass`]). All arithmetic is exact and overflow-checked.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// `u_1^{u[0]} ... u_m^{u[m-1]} h^h`. Ordered lexicographically on `(u, h)`.
/// Serializes as its text form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub u: Vec<i64>,
    pub h: i64,
}

impl Weight {
    pub fn one(m: usize) -> Self {
        Weight { u: vec![0; m], h: 0 }
    }

    pub fn h(m: usize) -> Self {
        Weight { u: vec![0; m], h: 1 }
    }

    pub fn u(m: usize, j: usize) -> Self {
        let mut w = Self::one(m);
        w.u[j] = 1;
        w
    }

    /// `u_a / u_b * h^e`.
    pub fn ratio(m: usize, a: usize, b: usize, e: i64) -> Self {
        let mut w = Weight { u: vec![0; m], h: e };
        w.u[a] += 1;
        w.u[b] -= 1;
        w
    }

    pub fn m(&self) -> usize {
        self.u.len()
    }

    pub fn is_one(&self) -> bool {
        self.h == 0 && self.u.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Weight) -> Result<Weight> {
        debug_assert_eq!(self.m(), other.m());
        let u = self
            .u
            .iter()
            .zip(&other.u)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        let h = self.h.checked_add(other.h).ok_or(Error::ExponentOverflow)?;
        Ok(Weight { u, h })
    }

    pub fn inverse(&self) -> Weight {
        Weight { u: self.u.iter().map(|e| -e).collect(), h: -self.h }
    }

    /// The self-duality partner `h * w^{-1}`.
    pub fn h_dual(&self) -> Weight {
        let mut w = self.inverse();
        w.h += 1;
        w
    }

    /// Multiplies by `h^shift`.
    pub fn shift_h(&self, shift: i64) -> Weight {
        Weight { u: self.u.clone(), h: self.h + shift }
    }

    /// Substitutes `u_j -> u_j h^{sigma_j}`.
    pub fn reparametrize(&self, sigma: &[i64]) -> Weight {
        let extra: i64 = self.u.iter().zip(sigma).map(|(e, s)| e * s).sum();
        self.shift_h(extra)
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Weight {
    /// `u1^a1*...*um^am*h^f`, skipping zero exponents and writing exponent 1
    /// bare; the trivial weight prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let factor = |name: String, e: i64| if e == 1 { name } else { format!("{name}^{e}") };
        for (j, &e) in self.u.iter().enumerate() {
            if e != 0 {
                parts.push(factor(format!("u{}", j + 1), e));
            }
        }
        if self.h != 0 {
            parts.push(factor("h".into(), self.h));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl Weight {
    /// Parses the `Display` form, e.g. `u1*u3^-1*h^2` or `1`, over `m`
    /// D5 variables.
    pub fn parse(m: usize, s: &str) -> Result<Weight> {
        let bad = || Error::MalformedWeight(s.to_string());
        let mut w = Weight::one(m);
        let s = s.trim();
        if s == "1" {
            return Ok(w);
        }
        for factor in s.split('*') {
            let (base, exp) = match factor.trim().split_once('^') {
                Some((b, e)) => (b, e.parse::<i64>().map_err(|_| bad())?),
                None => (factor.trim(), 1),
            };
            if base == "h" {
                w.h += exp;
            } else {
                let j: usize = base.strip_prefix('u').and_then(|x| x.parse().ok()).ok_or_else(bad)?;
                if j == 0 || j > m {
                    return Err(bad());
                }
                w.u[j - 1] += exp;
            }
        }
        Ok(w)
    }
}

/// Finite integer combination of weights over a fixed number `m` of D5 variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KClass {
    m: usize,
    terms: BTreeMap<Weight, i64>,
}

#[derive(Serialize)]
struct TermJson<'a> {
    u: &'a [i64],
    h: i64,
    coeff: i64,
}

impl Serialize for KClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(w, &coeff)| TermJson { u: &w.u, h: w.h, coeff }))
    }
}

impl KClass {
    pub fn zero(m: usize) -> Self {
        KClass { m, terms: BTreeMap::new() }
    }

    pub fn monomial(w: Weight) -> Self {
        Self::term(w, 1)
    }

    pub fn term(w: Weight, coeff: i64) -> Self {
        let mut k = Self::zero(w.m());
        if coeff != 0 {
            k.terms.insert(w, coeff);
        }
        k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn coeff(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// Sum of coefficients, i.e. the rank of the class.
    pub fn rank(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn add_term(&mut self, w: Weight, coeff: i64) -> Result<()> {
        debug_assert_eq!(w.m(), self.m);
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                let v = e.get().checked_add(coeff).ok_or(Error::Overflow("coefficient"))?;
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                if coeff != 0 {
                    e.insert(coeff);
                }
            }
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &KClass) -> Result<KClass> {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &KClass) -> Result<KClass> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> KClass {
        KClass { m: self.m, terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn checked_mul(&self, other: &KClass) -> Result<KClass> {
        let mut out = KClass::zero(self.m);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let c = ca.checked_mul(cb).ok_or(Error::Overflow("coefficient"))?;
                out.add_term(a.checked_mul(b)?, c)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, w: &Weight) -> Result<KClass> {
        let mut out = KClass::zero(self.m);
        for (a, c) in self.terms() {
            out.add_term(a.checked_mul(w)?, c)?;
        }
        Ok(out)
    }

    /// Negates every exponent vector.
    pub fn dual(&self) -> KClass {
        KClass { m: self.m, terms: self.terms.iter().map(|(w, &c)| (w.inverse(), c)).collect() }
    }

    /// `Hom(a, b) = b * dual(a)`.
    pub fn hom(a: &KClass, b: &KClass) -> Result<KClass> {
        b.checked_mul(&a.dual())
    }

    pub fn end(a: &KClass) -> Result<KClass> {
        Self::hom(a, a)
    }

    /// Expands a genuine representation into its weights, sorted.
    pub fn weights_of(&self) -> Result<Vec<Weight>> {
        let mut out = Vec::new();
        for (w, c) in self.terms() {
            if c < 0 {
                return Err(Error::NegativeCoefficient { term: w.to_string(), coeff: c });
            }
            out.extend(std::iter::repeat_n(w.clone(), c as usize));
        }
        Ok(out)
    }

    pub fn from_weights<'a>(m: usize, ws: impl IntoIterator<Item = &'a Weight>) -> Result<KClass> {
        let mut out = KClass::zero(m);
        for w in ws {
            out.add_term(w.clone(), 1)?;
        }
        Ok(out)
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms().enumerate() {
            match (k, c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// True iff `ws` can be perfectly matched into pairs `{w, h/w}`.
pub fn check_self_dual(ws: &[Weight]) -> bool {
    let mut counts: BTreeMap<&Weight, i64> = BTreeMap::new();
    for w in ws {
        *counts.entry(w).or_insert(0) += 1;
    }
    counts.iter().all(|(w, &c)| {
        // w = h/w would need 2*h_exp = 1, so partners are always distinct
        counts.get(&w.h_dual()).copied().unwrap_or(0) == c
    })
}

/// Sorts a weight list into canonical order.
pub fn canonical(mut ws: Vec<Weight>) -> Vec<Weight> {
    ws.sort();
    ws
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(u: &[i64], h: i64) -> Weight {
        Weight { u: u.to_vec(), h }
    }

    fn k(terms: &[(&[i64], i64, i64)]) -> KClass {
        let m = terms.first().map_or(2, |t| t.0.len());
        let mut out = KClass::zero(m);
        for (u, h, c) in terms {
            out.add_term(w(u, *h), *c).unwrap();
        }
        out
    }

    #[test]
    fn difference_of_squares() {
        let a = k(&[(&[1, 0], 0, 1), (&[0, 0], 1, 1)]);
        let b = k(&[(&[1, 0], 0, 1), (&[0, 0], 1, -1)]);
        let p = a.checked_mul(&b).unwrap();
        assert_eq!(p, k(&[(&[2, 0], 0, 1), (&[0, 0], 2, -1)]));
    }

    #[test]
    fn hom_example() {
        let a = KClass::monomial(w(&[1, 0], 1));
        let b = KClass::monomial(w(&[0, 1], 0));
        assert_eq!(KClass::hom(&a, &b).unwrap(), KClass::monomial(w(&[-1, 1], -1)));
    }

    #[test]
    fn cancels_to_zero() {
        let a = k(&[(&[1, 0], 0, 2)]);
        let b = k(&[(&[1, 0], 0, 1)]);
        let z = a.checked_sub(&b).unwrap().checked_sub(&b).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.terms().count(), 0);
    }

    #[test]
    fn dual_examples() {
        let m = 4;
        let mut a = Weight::u(m, 1);
        a.h = 2;
        assert_eq!(KClass::monomial(a).dual(), KClass::monomial(Weight { u: vec![0, -1, 0, 0], h: -2 }));
        let mut b = KClass::monomial(Weight::u(m, 2));
        b.add_term(Weight { u: vec![0, 0, 0, 1], h: -1 }, 1).unwrap();
        let mut want = KClass::monomial(Weight { u: vec![0, 0, -1, 0], h: 0 });
        want.add_term(Weight { u: vec![0, 0, 0, -1], h: 1 }, 1).unwrap();
        assert_eq!(b.dual(), want);
        assert!(KClass::zero(3).dual().is_zero());
    }

    #[test]
    fn weights_of_examples() {
        let x = k(&[(&[1, -1], 1, 2)]);
        assert_eq!(x.weights_of().unwrap(), vec![w(&[1, -1], 1); 2]);
        let bad = k(&[(&[1, 0], 0, 1), (&[0, 1], 0, -1)]);
        assert!(matches!(bad.weights_of(), Err(Error::NegativeCoefficient { .. })));
    }

    #[test]
    fn self_duality() {
        assert!(check_self_dual(&[w(&[1, -1], 1), w(&[-1, 1], 0)]));
        assert!(check_self_dual(&[]));
        assert!(!check_self_dual(&[w(&[1, -1], 1)]));
        // the partner of 1 is h
        assert!(!check_self_dual(&[w(&[0, 0], 0)]));
        assert!(check_self_dual(&[w(&[0, 0], 0), w(&[0, 0], 1)]));
    }

    #[test]
    fn display_format() {
        assert_eq!(w(&[0, 0], 0).to_string(), "1");
        assert_eq!(w(&[1, -1], 1).to_string(), "u1*u2^-1*h");
        assert_eq!(w(&[0, 2, 0], -3).to_string(), "u2^2*h^-3");
    }

    #[test]
    fn exponent_overflow_is_an_error() {
        let a = KClass::monomial(w(&[i64::MAX], 0));
        assert_eq!(a.checked_mul(&a), Err(Error::ExponentOverflow));
    }

    #[test]
    fn display_class() {
        let x = k(&[(&[1, 0], 0, 1), (&[0, 1], -1, -2)]);
        assert_eq!(x.to_string(), "-2*u2*h^-1 + u1");
    }

    #[test]
    fn json_shapes() {
        let x = k(&[(&[1, 0], -1, 3)]);
        assert_eq!(serde_json::to_string(&x).unwrap(), r#"[{"u":[1,0],"h":-1,"coeff":3}]"#);
        assert_eq!(serde_json::to_string(&w(&[0, 1], 2)).unwrap(), r#""u2*h^2""#);
    }
}
