//! Free graded-commutative algebras ΛV over ℚ with derivations.
//!
//! Monomials are exponent vectors in the declaration order of the generators.
//! Odd generators square to zero, and every product is brought back to canonical
//! order with its Koszul sign.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `p` or `p/q`, reduced.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator { name: name.into(), degree }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// Ordered generator list; the order fixes the canonical monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    gens: Vec<Generator>,
}

impl GeneratorSet {
    pub fn new(gens: Vec<Generator>) -> Result<Arc<Self>> {
        for (i, g) in gens.iter().enumerate() {
            if g.degree == 0 {
                return Err(Error::Structural(format!("generator `{}` has degree 0", g.name)));
            }
            if !valid_name(&g.name) {
                return Err(Error::validation(
                    format!("generators[{i}].name"),
                    format!("`{}` is not an identifier", g.name),
                ));
            }
            if gens[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::Structural(format!("duplicate generator `{}`", g.name)));
            }
        }
        Ok(Arc::new(GeneratorSet { gens }))
    }

    /// Shorthand for tests and examples: `&[("u", 2), ("x", 3)]`.
    pub fn from_pairs(pairs: &[(&str, u32)]) -> Result<Arc<Self>> {
        Self::new(pairs.iter().map(|(n, d)| Generator::new(*n, *d)).collect())
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn get(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.gens[i].degree
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.gens[i].is_odd()
    }
}

pub(crate) fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn same_ambient(a: &Arc<GeneratorSet>, b: &Arc<GeneratorSet>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Exponent vector; odd entries are 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(vec![0; len])
    }

    pub fn generator(len: usize, i: usize) -> Self {
        let mut e = vec![0; len];
        e[i] = 1;
        Monomial(e)
    }

    /// Fails if an odd generator would appear with exponent > 1.
    pub fn from_exponents(gens: &GeneratorSet, exps: Vec<u32>) -> Result<Self> {
        if exps.len() != gens.len() {
            return Err(Error::Structural("exponent vector length mismatch".into()));
        }
        for (i, &e) in exps.iter().enumerate() {
            if gens.is_odd(i) && e > 1 {
                return Err(Error::Structural(format!(
                    "odd generator `{}` with exponent {e}",
                    gens.get(i).name
                )));
            }
        }
        Ok(Monomial(exps))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Non-trivial (generator index, exponent) pairs in canonical order.
    pub fn factors(&self) -> Vec<(usize, u32)> {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i, e)).collect()
    }

    pub fn degree(&self, gens: &GeneratorSet) -> u32 {
        self.0.iter().enumerate().map(|(i, &e)| e * gens.degree(i)).sum()
    }

    pub fn word_length(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Product with Koszul sign, or `None` when an odd generator repeats.
    pub fn mul(&self, other: &Monomial, gens: &GeneratorSet) -> Option<(Monomial, bool)> {
        let mut negative = false;
        let mut odd_right_below = 0u32;
        // walk from the top index down, counting odd factors of `other` with smaller index
        let n = self.0.len();
        let mut out = vec![0u32; n];
        let odd_in_other_before: Vec<u32> = {
            let mut acc = vec![0u32; n + 1];
            for i in 0..n {
                let c = if gens.is_odd(i) { other.0[i] } else { 0 };
                acc[i + 1] = acc[i] + c;
            }
            acc
        };
        for i in 0..n {
            let (a, b) = (self.0[i], other.0[i]);
            if gens.is_odd(i) {
                if a + b > 1 {
                    return None;
                }
                if a == 1 {
                    odd_right_below += odd_in_other_before[i];
                }
            }
            out[i] = a + b;
        }
        if odd_right_below % 2 == 1 {
            negative = true;
        }
        Some((Monomial(out), negative))
    }

    pub fn format(&self, gens: &GeneratorSet) -> String {
        let parts: Vec<String> = self
            .factors()
            .into_iter()
            .map(|(i, e)| {
                if e == 1 {
                    gens.get(i).name.clone()
                } else {
                    format!("{}^{e}", gens.get(i).name)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Exact linear combination of monomials; zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct Element {
    ambient: Arc<GeneratorSet>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        same_ambient(&self.ambient, &other.ambient) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl Element {
    pub fn zero(ambient: &Arc<GeneratorSet>) -> Self {
        Element { ambient: Arc::clone(ambient), terms: BTreeMap::new() }
    }

    pub fn constant(ambient: &Arc<GeneratorSet>, c: Rational) -> Self {
        Self::term(ambient, Monomial::one(ambient.len()), c)
    }

    pub fn one(ambient: &Arc<GeneratorSet>) -> Self {
        Self::constant(ambient, Rational::one())
    }

    pub fn term(ambient: &Arc<GeneratorSet>, m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element { ambient: Arc::clone(ambient), terms }
    }

    pub fn generator(ambient: &Arc<GeneratorSet>, i: usize) -> Self {
        Self::term(ambient, Monomial::generator(ambient.len(), i), Rational::one())
    }

    pub fn named(ambient: &Arc<GeneratorSet>, name: &str) -> Result<Self> {
        let i = ambient
            .index_of(name)
            .ok_or_else(|| Error::Structural(format!("unknown generator `{name}`")))?;
        Ok(Self::generator(ambient, i))
    }

    pub fn from_terms(
        ambient: &Arc<GeneratorSet>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut e = Element::zero(ambient);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn ambient(&self) -> &Arc<GeneratorSet> {
        &self.ambient
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `Some(n)` if every term has degree n. The zero element reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.degree(&self.ambient));
        let first = degs.next()?;
        if degs.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn component(&self, degree: u32) -> Element {
        Element {
            ambient: Arc::clone(&self.ambient),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree(&self.ambient) == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms of word length exactly `w`.
    pub fn word_component(&self, w: u32) -> Element {
        Element {
            ambient: Arc::clone(&self.ambient),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.word_length() == w)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Highest word length among the terms (0 for constants and zero).
    pub fn max_word_length(&self) -> u32 {
        self.terms.keys().map(|m| m.word_length()).max().unwrap_or(0)
    }

    pub fn min_word_length(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.word_length()).min()
    }

    fn check(&self, other: &Element) -> Result<()> {
        if same_ambient(&self.ambient, &other.ambient) {
            Ok(())
        } else {
            Err(Error::Structural("elements live over different generator sets".into()))
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.try_add(&other.neg_ref())
    }

    pub fn multiply(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        let mut out = Element::zero(&self.ambient);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((m, negative)) = m1.mul(m2, &self.ambient) {
                    let c = c1 * c2;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element::zero(&self.ambient);
        }
        Element {
            ambient: Arc::clone(&self.ambient),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    fn neg_ref(&self) -> Element {
        self.scale(&-Rational::one())
    }

    pub fn pow(&self, k: u32) -> Element {
        let mut out = Element::one(&self.ambient);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Algebra map ΛV → ΛW sending generator i to `images[i]`.
    ///
    /// Images must share one target ambient and be homogeneous of the generator's
    /// degree parity for the result to be a graded map; that is not checked here.
    pub fn substitute(&self, images: &[Element], target: &Arc<GeneratorSet>) -> Result<Element> {
        if images.len() != self.ambient.len() {
            return Err(Error::Structural("substitution needs one image per generator".into()));
        }
        for im in images {
            if !same_ambient(im.ambient(), target) {
                return Err(Error::Structural("substitution images over different generator sets".into()));
            }
        }
        let mut out = Element::zero(target);
        // cache powers per generator
        let mut powers: Vec<Vec<Element>> = images.iter().map(|im| vec![Element::one(target), im.clone()]).collect();
        for (m, c) in &self.terms {
            let mut acc = Element::constant(target, c.clone());
            for (i, e) in m.factors() {
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                acc = &acc * &powers[i][e as usize];
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Re-express over a larger ambient whose generator list extends ours
    /// by name (used by products and model surgery).
    pub fn embed(&self, target: &Arc<GeneratorSet>) -> Result<Element> {
        let images: Vec<Element> = self
            .ambient
            .generators()
            .iter()
            .map(|g| Element::named(target, &g.name))
            .collect::<Result<_>>()?;
        self.substitute(&images, target)
    }

    pub fn format(&self) -> String {
        crate::poly::format_element(self)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

// Operator forms panic on ambient mismatch; library code only uses them where the
// ambient is shared by construction. Use `try_add` / `multiply` otherwise.
impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("ambient mismatch in +")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs).expect("ambient mismatch in -")
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.multiply(rhs).expect("ambient mismatch in *")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.neg_ref()
    }
}

/// Degree +1 derivation of ΛV given by its values on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    ambient: Arc<GeneratorSet>,
    images: Vec<Element>,
}

impl Derivation {
    /// Checks degrees and d² = 0 on every generator.
    pub fn new(ambient: &Arc<GeneratorSet>, images: Vec<Element>) -> Result<Self> {
        if images.len() != ambient.len() {
            return Err(Error::Structural("derivation needs one image per generator".into()));
        }
        for (i, im) in images.iter().enumerate() {
            let g = ambient.get(i);
            if !same_ambient(im.ambient(), ambient) {
                return Err(Error::Structural(format!("image of `{}` over a different generator set", g.name)));
            }
            if let Some(d) = im.homogeneous_degree() {
                if d != g.degree + 1 {
                    return Err(Error::Structural(format!(
                        "d({}) has degree {d}, expected {}",
                        g.name,
                        g.degree + 1
                    )));
                }
            } else if !im.is_zero() {
                return Err(Error::Structural(format!("d({}) is not homogeneous", g.name)));
            }
        }
        let d = Derivation { ambient: Arc::clone(ambient), images };
        for i in 0..ambient.len() {
            let dd = d.apply_unchecked(&d.images[i]);
            if !dd.is_zero() {
                return Err(Error::Structural(format!(
                    "d² ≠ 0 on `{}`: d(d({})) = {}",
                    ambient.get(i).name,
                    ambient.get(i).name,
                    dd
                )));
            }
        }
        Ok(d)
    }

    /// Generators missing from `images` are closed.
    pub fn from_map(ambient: &Arc<GeneratorSet>, images: &BTreeMap<String, Element>) -> Result<Self> {
        for name in images.keys() {
            if ambient.index_of(name).is_none() {
                return Err(Error::Structural(format!("differential given for unknown generator `{name}`")));
            }
        }
        let v = ambient
            .generators()
            .iter()
            .map(|g| images.get(&g.name).cloned().unwrap_or_else(|| Element::zero(ambient)))
            .collect();
        Derivation::new(ambient, v)
    }

    pub fn zero(ambient: &Arc<GeneratorSet>) -> Self {
        Derivation { ambient: Arc::clone(ambient), images: vec![Element::zero(ambient); ambient.len()] }
    }

    pub fn ambient(&self) -> &Arc<GeneratorSet> {
        &self.ambient
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Element {
        &self.images[i]
    }

    pub fn apply(&self, e: &Element) -> Result<Element> {
        if !same_ambient(e.ambient(), &self.ambient) {
            return Err(Error::Structural("element contains generators the derivation does not know".into()));
        }
        Ok(self.apply_unchecked(e))
    }

    fn apply_unchecked(&self, e: &Element) -> Element {
        let mut out = Element::zero(&self.ambient);
        for (m, c) in e.terms() {
            let dm = self.apply_monomial(m);
            out = &out + &dm.scale(c);
        }
        out
    }

    /// d(g₁^{e₁}⋯g_k^{e_k}) = Σ (−1)^{|prefix|} prefix · d(gᵢ^{eᵢ}) · suffix.
    pub fn apply_monomial(&self, m: &Monomial) -> Element {
        let amb = &self.ambient;
        let n = amb.len();
        let mut out = Element::zero(amb);
        let exps = m.exponents();
        let mut prefix_degree = 0u32;
        for i in 0..n {
            let e = exps[i];
            if e == 0 {
                continue;
            }
            let di = &self.images[i];
            if !di.is_zero() {
                let mut prefix = vec![0u32; n];
                prefix[..i].copy_from_slice(&exps[..i]);
                let mut suffix = vec![0u32; n];
                suffix[i + 1..].copy_from_slice(&exps[i + 1..]);
                let mut mid = vec![0u32; n];
                mid[i] = e - 1;
                let coeff = if amb.is_odd(i) { rat(1) } else { rat(e as i64) };
                let sign = if prefix_degree % 2 == 1 { -coeff } else { coeff };
                let p = Element::term(amb, Monomial(prefix), sign);
                let s = Element::term(amb, Monomial(suffix), Rational::one());
                let md = Element::term(amb, Monomial(mid), Rational::one());
                // even generator: e·g^{e−1}·dg commute freely; odd: e = 1
                let t = &(&(&p * &md) * di) * &s;
                out = &out + &t;
            }
            prefix_degree += e * amb.degree(i);
        }
        out
    }
}

/// Sign of a nonzero rational: +1 or −1.
pub fn sign_of(q: &Rational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_generators_anticommute_and_square_to_zero() {
        let g = GeneratorSet::from_pairs(&[("x", 3), ("y", 3)]).unwrap();
        let x = Element::named(&g, "x").unwrap();
        let y = Element::named(&g, "y").unwrap();
        assert_eq!(&x * &y, -&(&y * &x));
        assert!((&x * &x).is_zero());
    }

    #[test]
    fn even_generators_commute() {
        let g = GeneratorSet::from_pairs(&[("a", 2), ("b", 2)]).unwrap();
        let a = Element::named(&g, "a").unwrap();
        let b = Element::named(&g, "b").unwrap();
        let lhs = &(&a + &b) * &(&a - &b);
        assert_eq!(lhs, &(&a * &a) - &(&b * &b));
    }

    #[test]
    fn leibniz_sign_on_odd_product() {
        let g = GeneratorSet::from_pairs(&[("u", 2), ("v", 2), ("x", 3), ("y", 3)]).unwrap();
        let u = Element::named(&g, "u").unwrap();
        let v = Element::named(&g, "v").unwrap();
        let x = Element::named(&g, "x").unwrap();
        let y = Element::named(&g, "y").unwrap();
        let z = Element::zero(&g);
        let d = Derivation::new(&g, vec![z.clone(), z, u.pow(2), v.pow(2)]).unwrap();
        let got = d.apply(&(&x * &y)).unwrap();
        let want = &(&u.pow(2) * &y) - &(&x * &v.pow(2));
        assert_eq!(got, want);
        assert!(d.apply(&u.pow(3)).unwrap().is_zero());
    }

    #[test]
    fn d_squared_checked_at_construction() {
        let g = GeneratorSet::from_pairs(&[("u", 2), ("x", 3), ("y", 5)]).unwrap();
        let u = Element::named(&g, "u").unwrap();
        let x = Element::named(&g, "x").unwrap();
        // d(y) = u x has d(ux) = u·u² ≠ 0
        let imgs = vec![Element::zero(&g), u.pow(2), &u * &x];
        assert!(matches!(Derivation::new(&g, imgs), Err(Error::Structural(_))));
    }

    #[test]
    fn ambient_mismatch_is_structural() {
        let g = GeneratorSet::from_pairs(&[("u", 2)]).unwrap();
        let h = GeneratorSet::from_pairs(&[("v", 2)]).unwrap();
        let u = Element::named(&g, "u").unwrap();
        let v = Element::named(&h, "v").unwrap();
        assert!(matches!(u.multiply(&v), Err(Error::Structural(_))));
    }
}
