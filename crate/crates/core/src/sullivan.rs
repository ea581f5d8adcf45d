//! Sullivan algebras, homotopy signatures and the elliptic constraints.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Derivation, Element, Generator, GeneratorSet};
use crate::cohomology::CochainComplex;
use crate::error::{Error, Result};
use crate::poly::parse_element;
use crate::rules::{self, RuleHit};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SullivanAlgebra {
    gens: Arc<GeneratorSet>,
    d: Derivation,
    minimal: bool,
}

impl SullivanAlgebra {
    pub fn new(d: Derivation) -> Result<Self> {
        let gens = Arc::clone(d.ambient());
        if let Some(g) = gens.generators().iter().find(|g| g.degree < 2) {
            return Err(Error::Unsupported(format!("generator `{}` of degree {}", g.name, g.degree)));
        }
        let minimal = d.images().iter().all(|im| im.min_word_length().map_or(true, |w| w >= 2));
        Ok(SullivanAlgebra { gens, d, minimal })
    }

    /// `gens = [("u", 2), ("x", 3)]`, `diff = [("x", "u^2")]`.
    pub fn from_strings(gens: &[(&str, u32)], diff: &[(&str, &str)]) -> Result<Self> {
        let g = GeneratorSet::from_pairs(gens)?;
        let mut map = BTreeMap::new();
        for (name, src) in diff {
            map.insert(name.to_string(), parse_element(src, &g).map_err(|e| e.within(&format!("differential.{name}")))?);
        }
        Self::new(Derivation::from_map(&g, &map)?)
    }

    /// The one-point space.
    pub fn point() -> Self {
        let g = GeneratorSet::new(Vec::new()).expect("empty set");
        SullivanAlgebra { d: Derivation::zero(&g), gens: g, minimal: true }
    }

    pub fn generators(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn differential(&self) -> &Derivation {
        &self.d
    }

    pub fn d_of(&self, name: &str) -> Option<&Element> {
        self.gens.index_of(name).map(|i| self.d.image(i))
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn complex(&self) -> CochainComplex {
        CochainComplex::new(&self.d).expect("degrees checked at construction")
    }

    pub fn cohomology_dims(&self, max_degree: u32) -> BettiVector {
        BettiVector::new(self.complex().betti_vector(max_degree))
    }

    pub fn signature(&self) -> Result<HomotopySignature> {
        if !self.minimal {
            return Err(Error::Precondition(
                "signature needs a minimal model; some differential has a linear part".into(),
            ));
        }
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for g in self.gens.generators() {
            if g.is_odd() {
                odd.push(g.degree);
            } else {
                even.push(g.degree);
            }
        }
        HomotopySignature::new(even, odd)
    }

    /// Tensor product; clashing names in `other` get a numeric suffix.
    pub fn product(&self, other: &SullivanAlgebra) -> SullivanAlgebra {
        let mut gens: Vec<Generator> = self.gens.generators().to_vec();
        let mut renamed = Vec::new();
        for g in other.gens.generators() {
            let mut name = g.name.clone();
            let mut k = 2;
            while gens.iter().any(|h| h.name == name) {
                name = format!("{}_{k}", g.name);
                k += 1;
            }
            renamed.push(Generator::new(name.clone(), g.degree));
            gens.push(Generator::new(name, g.degree));
        }
        let amb = GeneratorSet::new(gens).expect("names made unique");
        let left: Vec<Element> =
            (0..self.gens.len()).map(|i| Element::generator(&amb, i)).collect();
        let right: Vec<Element> =
            (0..other.gens.len()).map(|i| Element::generator(&amb, self.gens.len() + i)).collect();
        let mut images = Vec::new();
        for im in self.d.images() {
            images.push(im.substitute(&left, &amb).expect("same target"));
        }
        for im in other.d.images() {
            images.push(im.substitute(&right, &amb).expect("same target"));
        }
        let d = Derivation::new(&amb, images).expect("product of differentials");
        SullivanAlgebra { gens: amb, d, minimal: self.minimal && other.minimal }
    }

    /// Σ odd − Σ(even − 1); the top non-zero cohomology degree when elliptic.
    pub fn formal_dimension(&self) -> i64 {
        let mut n = 0i64;
        for g in self.gens.generators() {
            if g.is_odd() {
                n += g.degree as i64;
            } else {
                n -= g.degree as i64 - 1;
            }
        }
        n
    }

    pub fn to_json(&self) -> Value {
        let gens: Vec<Value> =
            self.gens.generators().iter().map(|g| json!({"name": g.name, "degree": g.degree})).collect();
        let mut diff = serde_json::Map::new();
        for (i, g) in self.gens.generators().iter().enumerate() {
            let im = self.d.image(i);
            if !im.is_zero() {
                diff.insert(g.name.clone(), Value::String(im.format()));
            }
        }
        json!({"generators": gens, "differential": diff})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let model: ModelJson = serde_json::from_value(v.clone())
            .map_err(|e| Error::validation("model", e.to_string()))?;
        model.build()
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::parse("model", e.to_string()))?;
        Self::from_json(&v)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelJson {
    generators: Vec<GeneratorJson>,
    #[serde(default)]
    differential: BTreeMap<String, String>,
    #[serde(default)]
    minimal: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorJson {
    name: String,
    degree: u32,
}

impl ModelJson {
    fn build(self) -> Result<SullivanAlgebra> {
        for (i, g) in self.generators.iter().enumerate() {
            if g.degree < 2 {
                return Err(Error::validation(
                    format!("generators[{i}].degree"),
                    format!("degree {} is not supported (need ≥ 2)", g.degree),
                ));
            }
        }
        let gens = GeneratorSet::new(self.generators.into_iter().map(|g| Generator::new(g.name, g.degree)).collect())
            .map_err(|e| match e {
                Error::Structural(m) => Error::validation("generators", m),
                other => other,
            })?;
        let mut map = BTreeMap::new();
        for (name, src) in &self.differential {
            let field = format!("differential.{name}");
            if gens.index_of(name).is_none() {
                return Err(Error::validation(field, "unknown generator"));
            }
            let e = parse_element(src, &gens).map_err(|e| e.within(&field))?;
            map.insert(name.clone(), e);
        }
        let d = Derivation::from_map(&gens, &map).map_err(|e| match e {
            Error::Structural(m) => Error::validation("differential", m),
            other => other,
        })?;
        let alg = SullivanAlgebra::new(d)?;
        if self.minimal == Some(true) && !alg.is_minimal() {
            return Err(Error::validation("minimal", "declared minimal but a differential has a linear part"));
        }
        Ok(alg)
    }
}

/// Degrees of the rational homotopy groups, split by parity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HomotopySignature {
    pub even: Vec<u32>,
    pub odd: Vec<u32>,
}

impl HomotopySignature {
    pub fn new(mut even: Vec<u32>, mut odd: Vec<u32>) -> Result<Self> {
        if let Some(&e) = even.iter().find(|&&e| e < 2 || e % 2 == 1) {
            return Err(Error::validation("even", format!("{e} is not an even degree ≥ 2")));
        }
        if let Some(&o) = odd.iter().find(|&&o| o < 3 || o % 2 == 0) {
            return Err(Error::validation("odd", format!("{o} is not an odd degree ≥ 3")));
        }
        even.sort_unstable();
        odd.sort_unstable();
        Ok(HomotopySignature { even, odd })
    }

    pub fn formal_dimension(&self) -> i64 {
        self.odd.iter().map(|&d| d as i64).sum::<i64>() - self.even.iter().map(|&d| d as i64 - 1).sum::<i64>()
    }

    /// #odd − #even.
    pub fn chi_pi(&self) -> i64 {
        self.odd.len() as i64 - self.even.len() as i64
    }

    pub fn to_json(&self) -> Value {
        json!({"even": self.even, "odd": self.odd})
    }
}

impl fmt::Display for HomotopySignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[u32]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({{{}}},{{{}}})", j(&self.even), j(&self.odd))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector {
    pub dims: Vec<usize>,
}

impl BettiVector {
    pub fn new(dims: Vec<usize>) -> Self {
        BettiVector { dims }
    }

    pub fn get(&self, i: usize) -> usize {
        self.dims.get(i).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    /// bᵢ = b_{n−i} for 0 ≤ i ≤ n and nothing above n.
    pub fn is_poincare(&self, n: usize) -> bool {
        (0..=n).all(|i| self.get(i) == self.get(n - i)) && self.dims.iter().skip(n + 1).all(|&b| b == 0)
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.dims.iter().rposition(|&b| b > 0)
    }

    pub fn convolve(&self, other: &BettiVector, max_degree: usize) -> BettiVector {
        BettiVector::new(
            (0..=max_degree)
                .map(|n| (0..=n).map(|i| self.get(i) * other.get(n - i)).sum())
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub label: String,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EllipticReport {
    pub dimension: u32,
    pub odd_degree_sum: Relation,
    pub even_degree_sum: Relation,
    pub generator_count: Relation,
    pub formal_dimension: Relation,
    pub chi_pi: i64,
    pub chi_pi_nonnegative: bool,
    /// χ(M) ≥ 0 and (χ_π > 0 ⇔ χ(M) = 0); only with a Betti vector.
    pub euler_biconditional: Option<bool>,
}

impl EllipticReport {
    pub fn all_pass(&self) -> bool {
        self.odd_degree_sum.holds
            && self.even_degree_sum.holds
            && self.generator_count.holds
            && self.formal_dimension.holds
            && self.chi_pi_nonnegative
            && self.euler_biconditional.unwrap_or(true)
    }
}

pub fn check_elliptic_constraints(sig: &HomotopySignature, n: u32, betti: Option<&BettiVector>) -> EllipticReport {
    let n64 = n as i64;
    let odd_sum: i64 = sig.odd.iter().map(|&d| d as i64).sum();
    let even_sum: i64 = sig.even.iter().map(|&d| d as i64).sum();
    let count = (sig.odd.len() + sig.even.len()) as i64;
    let fd = sig.formal_dimension();
    let chi_pi = sig.chi_pi();
    let euler = betti.map(|b| {
        let chi = b.euler_characteristic();
        chi >= 0 && ((chi_pi > 0) == (chi == 0))
    });
    EllipticReport {
        dimension: n,
        odd_degree_sum: Relation { label: "sum odd degrees <= 2n-1".into(), lhs: odd_sum, rhs: 2 * n64 - 1, holds: odd_sum <= 2 * n64 - 1 },
        even_degree_sum: Relation { label: "sum even degrees <= n".into(), lhs: even_sum, rhs: n64, holds: even_sum <= n64 },
        generator_count: Relation { label: "generator count <= n".into(), lhs: count, rhs: n64, holds: count <= n64 },
        formal_dimension: Relation { label: "sum odd - sum (even - 1) = n".into(), lhs: fd, rhs: n64, holds: fd == n64 },
        chi_pi,
        chi_pi_nonnegative: chi_pi >= 0,
        euler_biconditional: euler,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Arithmetic,
    Refined,
}

#[derive(Clone, Debug, Serialize)]
pub struct SignatureEnumeration {
    pub dimension: u32,
    pub stage: Stage,
    /// False when the refined stage has no elimination rules for this dimension.
    pub verified: bool,
    pub signatures: Vec<HomotopySignature>,
    pub eliminated: Vec<(HomotopySignature, RuleHit)>,
}

/// Multisets of allowed parts with sum ≤ `max_sum`, in non-decreasing order.
fn multisets(allowed: &[u32], max_sum: u32, max_len: usize) -> Vec<Vec<u32>> {
    fn rec(allowed: &[u32], start: usize, rem: u32, max_len: usize, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(acc.clone());
        if acc.len() == max_len {
            return;
        }
        for i in start..allowed.len() {
            if allowed[i] <= rem {
                acc.push(allowed[i]);
                rec(allowed, i, rem - allowed[i], max_len, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(allowed, 0, max_sum, max_len, &mut Vec::new(), &mut out);
    out
}

/// Stage 1 for any n; the refined stage only for 2 ≤ n ≤ 7.
pub fn enumerate_elliptic_signatures(n: u32, stage: Stage) -> Result<SignatureEnumeration> {
    if n == 0 {
        return Err(Error::validation("dim", "dimension must be ≥ 1"));
    }
    if stage == Stage::Refined && !(2..=7).contains(&n) {
        return Err(Error::Unsupported(format!(
            "elimination rules exist for dimensions 2..=7 only; use the arithmetic stage for n = {n}"
        )));
    }
    let evens: Vec<u32> = (2..=n).step_by(2).collect();
    let odds: Vec<u32> = (3..2 * n).step_by(2).collect();
    let even_sets = multisets(&evens, n, n as usize);
    let odd_sets = multisets(&odds, 2 * n - 1, n as usize);
    let mut sigs: Vec<HomotopySignature> = even_sets
        .par_iter()
        .flat_map_iter(|e| {
            odd_sets.iter().filter_map(move |o| {
                let s = HomotopySignature::new(e.clone(), o.clone()).ok()?;
                let r = check_elliptic_constraints(&s, n, None);
                r.all_pass().then_some(s)
            })
        })
        .collect();
    sigs.sort();
    let mut eliminated = Vec::new();
    let verified = matches!(n, 2 | 3 | 4 | 7);
    if stage == Stage::Refined {
        let mut kept = Vec::new();
        for s in sigs {
            match rules::signature_elimination(&s, n) {
                Some(hit) => eliminated.push((s, hit)),
                None => kept.push(s),
            }
        }
        sigs = kept;
    }
    Ok(SignatureEnumeration {
        dimension: n,
        stage,
        verified: stage == Stage::Refined && verified,
        signatures: sigs,
        eliminated,
    })
}
