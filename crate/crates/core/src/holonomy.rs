//! Betti-number obstructions for special holonomy, positive quaternion Kähler
//! Betti/homotopy bookkeeping, and Betti bounds for formal metrics.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{format_rational, Element, Rational};
use crate::error::{Error, Result};
use crate::linalg;
use crate::lowdim::RealType7;
use crate::numbers::binomial;
use crate::rules::RuleHit;
use crate::sullivan::SullivanAlgebra;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Step {
    pub label: String,
    pub value: Value,
}

fn step(label: impl Into<String>, value: impl Serialize) -> Step {
    Step { label: label.into(), value: serde_json::to_value(value).expect("serializable") }
}

/// An arithmetic argument with every intermediate value recorded.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub claim: String,
    pub holds: bool,
    pub steps: Vec<Step>,
    pub trail: Vec<RuleHit>,
}

/// Betti numbers of a closed 8-manifold with the optional split b₄ = b₄⁺ + b₄⁻.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiInput {
    pub betti: Vec<usize>,
    pub b4_plus: Option<usize>,
    pub b4_minus: Option<usize>,
}

impl BettiInput {
    pub fn new(betti: Vec<usize>, split: Option<(usize, usize)>) -> Result<Self> {
        let (p, m) = split.unzip();
        if let Some((p, m)) = split {
            if betti.len() > 4 && betti[4] != p + m {
                return Err(Error::validation("b4-split", format!("b4+ + b4- = {} but b4 = {}", p + m, betti[4])));
            }
        }
        Ok(BettiInput { betti, b4_plus: p, b4_minus: m })
    }

    /// Poincaré-dual 8-dimensional vector from (b₂, b₃, b₄⁺, b₄⁻).
    pub fn dim8(b2: usize, b3: usize, b4_plus: usize, b4_minus: usize) -> Self {
        let b4 = b4_plus + b4_minus;
        BettiInput { betti: vec![1, 0, b2, b3, b4, b3, b2, 0, 1], b4_plus: Some(b4_plus), b4_minus: Some(b4_minus) }
    }

    fn b(&self, i: usize) -> usize {
        self.betti.get(i).copied().unwrap_or(0)
    }

    fn split(&self) -> Result<(usize, usize)> {
        match (self.b4_plus, self.b4_minus) {
            (Some(p), Some(m)) => Ok((p, m)),
            _ => Err(Error::validation("b4-split", "the split b4 = b4+ + b4- is required")),
        }
    }
}

/// The Betti relation b₃ + b₄⁺ = b₂ + 2b₄⁻ + 25 of a compact Spin(7)-manifold.
pub fn spin7_feasible(input: &BettiInput) -> Result<bool> {
    let (p, m) = input.split()?;
    if p == 0 {
        return Err(Error::validation("b4-split", "b4+ >= 1 is required on a Spin(7)-manifold"));
    }
    Ok(input.b(3) + p == input.b(2) + 2 * m + 25)
}

/// b₃ + b₄⁺ ≥ 50 for holonomy SU(4).
pub fn su4_feasible(input: &BettiInput) -> Result<bool> {
    let (p, _) = input.split()?;
    Ok(input.b(3) + p >= 50)
}

/// Caps on dim π_k ⊗ ℚ of an elliptic space of dimension n from the degree
/// sums: Σ even ≤ n and Σ odd ≤ 2n − 1.
fn homotopy_cap(n: u32, k: u32) -> u32 {
    if k % 2 == 0 {
        n / k
    } else {
        (2 * n - 1) / k
    }
}

/// No rationally elliptic 8-manifold satisfies the Spin(7) Betti relation.
pub fn spin7_elliptic_obstruction() -> Certificate {
    let n = 8u32;
    let cap2 = homotopy_cap(n, 2) as i64;
    let mut steps = vec![step("b2 cap (2 b2 <= 8)", cap2)];
    let mut min = i64::MAX;
    for b2 in 0..=cap2 {
        // dim π ≥ b₂ + b₃ + (b₄ − b₂(b₂+1)/2) ≥ 25 + b₂ + b₂(1 − b₂)/2
        let bound = 25 + b2 * (3 - b2) / 2;
        steps.push(step(format!("b2 = {b2}: dim pi >= 25 + b2(3-b2)/2"), bound));
        min = min.min(bound);
    }
    steps.push(step("minimum lower bound", min));
    steps.push(step("total homotopy cap (at most n generators)", n));
    Certificate {
        claim: format!("dim pi_*(M) (x) Q >= {min} > {n}: no rationally elliptic Spin(7)-manifold"),
        holds: min > n as i64,
        steps,
        trail: vec![
            RuleHit::new("holonomy.spin7-betti", "b3 + b4 >= b2 + 25"),
            RuleHit::new("elliptic.relations", "sum of even degrees <= 8 and at most 8 generators"),
        ],
    }
}

pub fn spin7_min_bound(cert: &Certificate) -> Option<i64> {
    cert.steps.iter().find(|s| s.label == "minimum lower bound").and_then(|s| s.value.as_i64())
}

/// b₃ + b₄ of a rationally elliptic 8-manifold is at most 17, below the SU(4) threshold 50.
pub fn su4_elliptic_obstruction() -> Certificate {
    let n = 8u32;
    let (c2, c3, c4) = (homotopy_cap(n, 2), homotopy_cap(n, 3), homotopy_cap(n, 4));
    let sym2 = c2 * (c2 + 1) / 2;
    let b4 = c4 + sym2;
    let total = c3 + b4;
    Certificate {
        claim: format!("b3 + b4 <= {total} < 50: no rationally elliptic SU(4)-manifold"),
        holds: total < 50,
        steps: vec![
            step("b2 <= dim pi_2", c2),
            step("b3 <= dim pi_3", c3),
            step("dim pi_4", c4),
            step("dim Sym_2(V^2)", sym2),
            step("b4 <= dim pi_4 + dim Sym_2(V^2)", b4),
            step("b3 + b4", total),
            step("required b3 + b4+", 50),
        ],
        trail: vec![
            RuleHit::new("holonomy.su4-betti", "b3 + b4+ >= 50"),
            RuleHit::new("elliptic.relations", "degree sums for n = 8"),
        ],
    }
}

/// The quadratic form a ↦ ⟨a²ω⟩ on H² fails to be definite for every ω.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LefschetzWitness {
    pub omega: String,
    pub gram: Vec<Vec<String>>,
    /// a with a²ω = 0, when one exists.
    pub null_class: Option<String>,
    /// Classes a, a' with ⟨a²ω⟩ and ⟨a'²ω⟩ of opposite sign.
    pub opposite: Option<(String, String)>,
}

fn definite(g: &[Vec<Rational>]) -> bool {
    let n = g.len();
    let minors: Vec<Rational> = (1..=n).map(|k| linalg::det(&g[..k].iter().map(|r| r[..k].to_vec()).collect::<Vec<_>>())).collect();
    minors.iter().all(|m| m.is_positive()) || minors.iter().enumerate().all(|(k, m)| if k % 2 == 0 { m.is_negative() } else { m.is_positive() })
}

/// Congruence diagonalisation: columns of P with PᵀGP diagonal.
fn congruence_diagonal(g: &[Vec<Rational>]) -> (Vec<Rational>, Vec<Vec<Rational>>) {
    let n = g.len();
    let mut a: Vec<Vec<Rational>> = g.to_vec();
    // basis vectors as columns of p, stored transposed
    let mut p: Vec<Vec<Rational>> = linalg::identity(n);
    // e_dst += c e_src
    let add = |a: &mut Vec<Vec<Rational>>, p: &mut Vec<Vec<Rational>>, dst: usize, src: usize, c: &Rational| {
        for r in 0..n {
            let v = &a[r][src] * c;
            a[r][dst] += v;
        }
        for col in 0..n {
            let v = &a[src][col] * c;
            a[dst][col] += v;
        }
        for i in 0..n {
            let v = &p[src][i] * c;
            p[dst][i] += v;
        }
    };
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
                p.swap(k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !a[j][k].is_zero()) {
                add(&mut a, &mut p, k, j, &Rational::from_integer(1.into()));
            }
        }
        if a[k][k].is_zero() {
            continue;
        }
        for j in k + 1..n {
            if !a[j][k].is_zero() {
                let c = -(&a[j][k] / &a[k][k]);
                add(&mut a, &mut p, j, k, &c);
            }
        }
    }
    ((0..n).map(|i| a[i][i].clone()).collect(), p)
}

fn combination(basis: &[Element], v: &[Rational]) -> String {
    let mut e = Element::zero(basis[0].ambient());
    for (b, c) in basis.iter().zip(v) {
        e = &e + &b.scale(c);
    }
    e.format()
}

/// Looks for an obstruction to a G₂-compatible class: if for every basis class ω
/// of H³ the form a ↦ ⟨a²ω, [M]⟩ on H² is not definite, returns the evidence for
/// the first ω.
pub fn lefschetz_degenerate_witness(model: &SullivanAlgebra) -> Result<Option<LefschetzWitness>> {
    let b = model.cohomology_dims(9);
    if b.top_degree() != Some(7) || !b.is_poincare(7) {
        return Err(Error::Precondition("model must be elliptic of formal dimension 7".into()));
    }
    if b.get(3) == 0 {
        return Err(Error::Precondition("b3 >= 1 is required".into()));
    }
    let mut cx = model.complex();
    let h2 = cx.representatives(2);
    let h3 = cx.representatives(3);
    let h7 = cx.representatives(7);
    if h2.is_empty() {
        return Ok(None);
    }
    let mut first = None;
    for w in &h3.elements {
        let mut gram = vec![vec![Rational::zero(); h2.len()]; h2.len()];
        for i in 0..h2.len() {
            for j in 0..h2.len() {
                let e = &(&h2.elements[i] * &h2.elements[j]) * w;
                let coords = cx.coordinates(&e, 7);
                gram[i][j] = h7.class_of(&coords)?[0].clone();
            }
        }
        if definite(&gram) {
            return Ok(None);
        }
        if first.is_none() {
            first = Some((w.clone(), gram));
        }
    }
    let (w, gram) = first.expect("b3 >= 1");
    let n = gram.len();
    let unit = |i: usize| (0..n).map(|j| Rational::from_integer(BigInt::from((i == j) as i64))).collect::<Vec<_>>();
    let mut null_class = (0..n).find(|&i| gram[i][i].is_zero()).map(|i| combination(&h2.elements, &unit(i)));
    let (diag, cols) = congruence_diagonal(&gram);
    if null_class.is_none() {
        null_class = diag.iter().position(|d| d.is_zero()).map(|i| combination(&h2.elements, &cols[i]));
    }
    let pos = diag.iter().position(|d| d.is_positive());
    let neg = diag.iter().position(|d| d.is_negative());
    let opposite = match (pos, neg) {
        (Some(p), Some(q)) => Some((combination(&h2.elements, &cols[p]), combination(&h2.elements, &cols[q]))),
        _ => None,
    };
    Ok(Some(LefschetzWitness {
        omega: w.format(),
        gram: gram.iter().map(|r| r.iter().map(format_rational).collect()).collect(),
        null_class,
        opposite,
    }))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct G2Report {
    /// Types with b₃ ≠ 0, with their b₃.
    pub prefilter: Vec<(RealType7, usize)>,
    pub survivors: Vec<RealType7>,
    pub excluded: Vec<(RealType7, LefschetzWitness)>,
    pub trail: Vec<RuleHit>,
}

pub fn g2_candidate_types() -> Result<G2Report> {
    let mut prefilter = Vec::new();
    let mut survivors = Vec::new();
    let mut excluded = Vec::new();
    for t in RealType7::ALL {
        let m = t.representative();
        let b3 = m.cohomology_dims(7).get(3);
        if b3 == 0 {
            continue;
        }
        prefilter.push((t, b3));
        match lefschetz_degenerate_witness(&m)? {
            None => survivors.push(t),
            Some(w) => excluded.push((t, w)),
        }
    }
    Ok(G2Report {
        prefilter,
        survivors,
        excluded,
        trail: vec![
            RuleHit::new("holonomy.b3-prefilter", "types with b3 = 0 removed"),
            RuleHit::new("holonomy.g2-definite", "a^2 omega form computed in the cohomology of each representative"),
        ],
    })
}

// ---- positive quaternion Kähler ------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PqkTriple {
    pub b4: u32,
    pub b6: u32,
    pub b8: u32,
}

impl PqkTriple {
    pub fn new(b4: u32, b6: u32, b8: u32) -> Self {
        PqkTriple { b4, b6, b8 }
    }

    /// 2b₈ = 3b₄ − b₆ − 1, b₄ ≥ 1, b₄ ≤ b₈.
    pub fn is_admissible(&self) -> bool {
        self.b4 >= 1 && 2 * self.b8 + self.b6 + 1 == 3 * self.b4 && self.b4 <= self.b8
    }
}

impl std::fmt::Display for PqkTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.b4, self.b6, self.b8)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PqkTriples {
    pub max_b4: u32,
    pub pre_cap: Vec<PqkTriple>,
    pub cup_length: u32,
    pub triples: Vec<PqkTriple>,
    pub trail: Vec<RuleHit>,
}

/// All admissible (b₄, b₆, b₈) with b₄ ≤ max_b4, ordered by (b₄, b₆).
pub fn pqk16_candidates(max_b4: u32) -> Vec<PqkTriple> {
    let mut out = Vec::new();
    for b4 in 1..=max_b4 {
        for b6 in 0..3 * b4 {
            let r = 3 * b4 - b6 - 1;
            if r % 2 == 0 {
                let t = PqkTriple::new(b4, b6, r / 2);
                if t.is_admissible() {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Admissible triples; with c₄ = b₄, c₆ = b₆ and dim V^even ≤ 4 the cap is b₄ + b₆ ≤ 4.
pub fn pqk16_triples() -> PqkTriples {
    let cup_length = 4;
    let max_b4 = 5;
    let pre_cap = pqk16_candidates(max_b4);
    let triples = pre_cap.iter().copied().filter(|t| t.b4 + t.b6 <= cup_length).collect();
    PqkTriples {
        max_b4,
        pre_cap,
        cup_length,
        triples,
        trail: vec![
            RuleHit::new("pqk.betti-relation", "-1 + 3 b4 - b6 = 2 b8"),
            RuleHit::new("pqk.lefschetz", "b4 >= 1, b4 <= b8"),
            RuleHit::new("pqk.cup-length", "b4 + b6 <= 4"),
        ],
    }
}

/// Dimensions of rational homotopy per degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyVector {
    pub dim: u32,
    pub c: BTreeMap<u32, u32>,
}

impl HomotopyVector {
    pub fn get(&self, k: u32) -> u32 {
        self.c.get(&k).copied().unwrap_or(0)
    }

    /// Σ odd degrees − Σ (even degree − 1).
    pub fn balance(&self) -> i64 {
        self.c.iter().map(|(&k, &m)| if k % 2 == 1 { (k * m) as i64 } else { -(((k - 1) * m) as i64) }).sum()
    }

    pub fn to_json(&self) -> Value {
        let map: serde_json::Map<String, Value> = self.c.iter().map(|(k, m)| (format!("c{k}"), json!(m))).collect();
        json!({"dim": self.dim, "c": map, "balance": self.balance()})
    }

    pub fn format(&self) -> String {
        self.c.iter().map(|(k, m)| format!("c{k}={m}")).collect::<Vec<_>>().join(", ")
    }
}

fn mul_series(s: &mut [i64], deg: usize, sign: i64) {
    // s *= (1 − t^deg) when sign = −1, s /= (1 − t^deg) when sign = +1
    let len = s.len();
    if sign < 0 {
        for i in (deg..len).rev() {
            s[i] -= s[i - deg];
        }
    } else {
        for i in deg..len {
            s[i] += s[i - deg];
        }
    }
}

/// Odd homotopy of a pure model with given even generators whose cohomology has
/// the target Betti numbers. Relations form a regular sequence, so the Poincaré
/// series of the quotient is ∏(1 − t^{r})/∏(1 − t^{e}); relation degrees are
/// forced degree by degree.
pub fn pure_homotopy_from_betti(dim: u32, even: &[u32], betti: &[i64]) -> Result<HomotopyVector> {
    let len = 2 * dim as usize + 2;
    let target = |i: usize| betti.get(i).copied().unwrap_or(0);
    let mut s = vec![0i64; len];
    s[0] = 1;
    for &e in even {
        mul_series(&mut s, e as usize, 1);
    }
    let mut c: BTreeMap<u32, u32> = BTreeMap::new();
    for &e in even {
        *c.entry(e).or_default() += 1;
    }
    let mut relations = 0usize;
    for i in 1..len {
        let have = s[i];
        let want = target(i);
        if have < want {
            return Err(Error::Precondition(format!("degree {i}: quotient has dimension {have} < b{i} = {want}")));
        }
        for _ in 0..(have - want) {
            mul_series(&mut s, i, -1);
            *c.entry(i as u32 - 1).or_default() += 1;
            relations += 1;
        }
    }
    if relations != even.len() {
        return Err(Error::Precondition(format!("{relations} relations for {} even generators", even.len())));
    }
    let v = HomotopyVector { dim, c };
    if v.balance() != dim as i64 {
        return Err(Error::Internal(format!("degree balance {} != {dim}", v.balance())));
    }
    Ok(v)
}

pub fn pqk16_betti(t: &PqkTriple) -> Vec<i64> {
    let mut b = vec![0i64; 17];
    b[0] = 1;
    b[16] = 1;
    b[4] = t.b4 as i64;
    b[12] = t.b4 as i64;
    b[6] = t.b6 as i64;
    b[10] = t.b6 as i64;
    b[8] = t.b8 as i64;
    b
}

/// Homotopy Betti numbers for an admissible 16-dimensional triple, with c₄ = b₄,
/// c₆ = b₆ and no further even homotopy.
pub fn pqk16_homotopy_vector(t: &PqkTriple) -> Result<HomotopyVector> {
    if !pqk16_triples().triples.contains(t) {
        return Err(Error::validation("triple", format!("{t} is not an admissible 16-dimensional triple")));
    }
    let mut even = vec![4; t.b4 as usize];
    even.extend(std::iter::repeat_n(6, t.b6 as usize));
    pure_homotopy_from_betti(16, &even, &pqk16_betti(t))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PqkCase {
    pub c4: u32,
    pub betti: Vec<i64>,
    pub homotopy: Value,
    pub balance: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PqkAnalysis {
    pub dim: u32,
    pub b2_zero: bool,
    /// Terminal answer when b₂ ≠ 0.
    pub branch: Option<String>,
    pub cases: Vec<PqkCase>,
    pub trail: Vec<RuleHit>,
}

/// Dimension 12: c₄ ≤ 3, b₆ = 0, b₄ = b₈ = c₄.
pub fn pqk12_analysis(b2_zero: bool) -> Result<PqkAnalysis> {
    if !b2_zero {
        return Ok(PqkAnalysis {
            dim: 12,
            b2_zero,
            branch: Some("Gr2(C^5)".into()),
            cases: Vec::new(),
            trail: vec![RuleHit::new("pqk.b2-nonzero", "b2 != 0")],
        });
    }
    let cap = homotopy_cap(12, 4);
    let mut cases = Vec::new();
    for c4 in 1..=cap {
        let mut b = vec![0i64; 13];
        b[0] = 1;
        b[12] = 1;
        b[4] = c4 as i64;
        b[8] = c4 as i64;
        let v = pure_homotopy_from_betti(12, &vec![4; c4 as usize], &b)?;
        cases.push(PqkCase { c4, betti: b, balance: v.balance(), homotopy: v.to_json() });
    }
    Ok(PqkAnalysis {
        dim: 12,
        b2_zero,
        branch: None,
        cases,
        trail: vec![
            RuleHit::new("pqk.betti-relation", "b6 = 0"),
            RuleHit::new("pqk.lefschetz", "b4 = b8"),
            RuleHit::new("elliptic.relations", "4 c4 <= 12"),
        ],
    })
}

pub fn pqk12_vector(c4: u32) -> Result<HomotopyVector> {
    let mut b = vec![0i64; 13];
    b[0] = 1;
    b[12] = 1;
    b[4] = c4 as i64;
    b[8] = c4 as i64;
    pure_homotopy_from_betti(12, &vec![4; c4 as usize], &b)
}

// ---- Betti bounds for formal metrics -------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ManifoldClass {
    KaehlerTrivialHodge,
    Pqk,
}

impl ManifoldClass {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "kaehler" | "kahler" | "kaehler_trivial_hodge" => Some(ManifoldClass::KaehlerTrivialHodge),
            "pqk" => Some(ManifoldClass::Pqk),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimate {
    First,
    Second,
    SpecialB2,
    SpecialBp,
}

impl Estimate {
    pub const ALL: [Estimate; 4] = [Estimate::First, Estimate::Second, Estimate::SpecialB2, Estimate::SpecialBp];

    pub fn name(&self) -> &'static str {
        match self {
            Estimate::First => "first",
            Estimate::Second => "second",
            Estimate::SpecialB2 => "special_b2",
            Estimate::SpecialBp => "special_bp",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let s = s.replace('-', "_");
        Self::ALL.into_iter().find(|e| e.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundQuery {
    pub class: ManifoldClass,
    /// Real dimension of M.
    pub dim: u32,
    /// Form degree; even.
    pub degree: u32,
    pub estimate: Estimate,
}

/// s̃ = ⌊N/k⌋ − (⌊N/k⌋ mod 2).
pub fn s_tilde(n: u32, k: u32) -> u32 {
    let q = n / k;
    q - q % 2
}

fn b(m: i64, r: i64) -> BigInt {
    binomial(m, r)
}

pub fn formality_bound(q: &BoundQuery) -> Result<BigInt> {
    let bad = |m: String| Err(Error::validation("degree", m));
    if q.degree == 0 || q.degree % 2 == 1 {
        return bad(format!("degree {} must be positive and even", q.degree));
    }
    match q.class {
        ManifoldClass::KaehlerTrivialHodge => {
            if q.dim % 2 == 1 || q.dim == 0 {
                return Err(Error::validation("dim", "real dimension must be even"));
            }
            let n = (q.dim / 2) as i64;
            let k = (q.degree / 2) as i64;
            if q.degree as i64 > n {
                return bad(format!("need 0 < 2k <= n = {n}"));
            }
            let st = s_tilde(n as u32, k as u32) as i64;
            match q.estimate {
                Estimate::First => {
                    let sum: BigInt = (2..=st).map(|i| b(n - i + 1, k - 1)).sum();
                    Ok(b(n, k) * (b(n, k) - sum))
                }
                Estimate::Second => {
                    let sum: BigInt = (2..=st).map(|i| b(n - i / 2, k - i % 2) * b(n - (i - 1) / 2, k - (i - 1) % 2)).sum();
                    Ok(b(n, k) * b(n, k) - sum)
                }
                Estimate::SpecialB2 => {
                    if q.degree != 2 {
                        return bad("special_b2 applies to degree 2".into());
                    }
                    Ok(BigInt::from(n - 1))
                }
                Estimate::SpecialBp => {
                    let p = q.degree as i64;
                    if n % p != 0 {
                        return Err(Error::Precondition(format!("n = {n} is not divisible by p = {p}")));
                    }
                    Ok(b(n - 1, p / 2 - 1) * b(n, p / 2))
                }
            }
        }
        ManifoldClass::Pqk => {
            if q.dim % 4 != 0 || q.dim == 0 {
                return Err(Error::validation("dim", "real dimension must be divisible by 4"));
            }
            let n4 = q.dim as i64;
            let p = q.degree as i64;
            if p > n4 / 2 {
                return bad(format!("need 0 < p <= 2n = {}", n4 / 2));
            }
            match q.estimate {
                Estimate::First => {
                    let st = s_tilde(n4 as u32, p as u32) as i64;
                    let sum: BigInt = (2..=st).map(|i| b(n4 - i + 1, p - 1)).sum();
                    Ok(b(n4, p) - sum)
                }
                Estimate::Second => Err(Error::Unsupported("no second estimate for pqk".into())),
                Estimate::SpecialB2 => {
                    if p != 2 {
                        return bad("special_b2 applies to degree 2".into());
                    }
                    Ok(BigInt::from(2))
                }
                Estimate::SpecialBp => {
                    if (n4 / 2) % p != 0 {
                        return Err(Error::Precondition(format!("2n = {} is not divisible by p = {p}", n4 / 2)));
                    }
                    Ok(b(n4 - 1, p - 1))
                }
            }
        }
    }
}

pub fn torus_bound(dim: u32, degree: u32) -> BigInt {
    binomial(dim as i64, degree as i64)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CellReport {
    pub class: ManifoldClass,
    pub dim: u32,
    pub degree: u32,
    pub table: u64,
    pub torus: String,
    pub estimates: BTreeMap<String, String>,
    pub matched_by: Vec<String>,
    pub flagged: bool,
}

/// Reference cells: (class, dim, degree, value).
pub const TABLE_CELLS: &[(ManifoldClass, u32, u32, u64)] = &[
    (ManifoldClass::KaehlerTrivialHodge, 4, 2, 3),
    (ManifoldClass::KaehlerTrivialHodge, 6, 2, 5),
    (ManifoldClass::KaehlerTrivialHodge, 8, 2, 7),
    (ManifoldClass::KaehlerTrivialHodge, 8, 4, 18),
    (ManifoldClass::KaehlerTrivialHodge, 10, 2, 9),
    (ManifoldClass::KaehlerTrivialHodge, 10, 4, 60),
    (ManifoldClass::KaehlerTrivialHodge, 12, 2, 11),
    (ManifoldClass::KaehlerTrivialHodge, 12, 4, 150),
    (ManifoldClass::KaehlerTrivialHodge, 12, 6, 200),
    (ManifoldClass::KaehlerTrivialHodge, 14, 2, 13),
    (ManifoldClass::KaehlerTrivialHodge, 14, 4, 315),
    (ManifoldClass::KaehlerTrivialHodge, 14, 6, 700),
    (ManifoldClass::KaehlerTrivialHodge, 16, 2, 15),
    (ManifoldClass::KaehlerTrivialHodge, 16, 4, 196),
    (ManifoldClass::KaehlerTrivialHodge, 16, 6, 1960),
    (ManifoldClass::KaehlerTrivialHodge, 16, 8, 2450),
    (ManifoldClass::Pqk, 12, 2, 2),
    (ManifoldClass::Pqk, 12, 4, 165),
    (ManifoldClass::Pqk, 12, 6, 462),
    (ManifoldClass::Pqk, 16, 2, 2),
    (ManifoldClass::Pqk, 16, 4, 455),
    (ManifoldClass::Pqk, 16, 6, 5005),
    (ManifoldClass::Pqk, 16, 8, 6435),
];

/// Torus column of the same table: (dim, degree, C(dim, degree)).
pub const TORUS_CELLS: &[(u32, u32, u64)] = &[
    (4, 2, 6),
    (6, 2, 15),
    (8, 2, 28),
    (8, 4, 70),
    (10, 2, 45),
    (10, 4, 210),
    (12, 2, 66),
    (12, 4, 495),
    (12, 6, 924),
    (14, 2, 91),
    (14, 4, 1001),
    (14, 6, 3003),
    (16, 2, 120),
    (16, 4, 1820),
    (16, 6, 8008),
    (16, 8, 12870),
];

pub fn table_comparison() -> Vec<CellReport> {
    TABLE_CELLS
        .iter()
        .map(|&(class, dim, degree, table)| {
            let mut estimates = BTreeMap::new();
            let mut matched_by = Vec::new();
            for e in Estimate::ALL {
                if let Ok(v) = formality_bound(&BoundQuery { class, dim, degree, estimate: e }) {
                    if v == BigInt::from(table) {
                        matched_by.push(e.name().to_string());
                    }
                    estimates.insert(e.name().to_string(), v.to_string());
                }
            }
            CellReport {
                class,
                dim,
                degree,
                table,
                torus: torus_bound(dim, degree).to_string(),
                estimates,
                flagged: matched_by.is_empty(),
                matched_by,
            }
        })
        .collect()
}

// ---- complement spaces -----------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// (k,k)-forms on ℂⁿ, step l fixes dz_{l−1}.
    KaehlerFirst,
    /// (k,k)-forms on ℂⁿ, alternating dz_j and dz̄_j.
    KaehlerSecond,
    /// k-forms on ℝ^{4n}, step l fixes dx_{l−1}.
    Pqk,
}

/// dim C^(s) from the closed binomial sums of the estimates.
pub fn complement_dim_closed(c: Construction, n: i64, k: i64, s: i64) -> BigInt {
    match c {
        Construction::KaehlerFirst => b(n, k) * (2..=s).map(|i| b(n - i + 1, k - 1)).sum::<BigInt>(),
        Construction::KaehlerSecond => (2..=s).map(|i| b(n - i / 2, k - i % 2) * b(n - (i - 1) / 2, k - (i - 1) % 2)).sum(),
        Construction::Pqk => (2..=s).map(|i| b(4 * n - i + 1, k - 1)).sum(),
    }
}

/// Per-step dimensions of the alternating construction counted from its
/// definition: step 2j fixes dz_j, step 2j+1 fixes dz̄_j.
pub fn complement_dim_alternating(n: i64, k: i64, s: i64) -> BigInt {
    (2..=s)
        .map(|i| {
            let j = i / 2;
            if i % 2 == 0 {
                b(n - j, k - 1) * b(n - j + 1, k)
            } else {
                b(n - j, k) * b(n - j, k - 1)
            }
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// dim C^(s) by listing monomials and testing membership of each step directly.
pub fn complement_dim_brute(c: Construction, n: usize, k: usize, s: usize) -> u64 {
    match c {
        Construction::Pqk => subsets(4 * n, k)
            .iter()
            .filter(|x| (2..=s).any(|l| x.contains(&(l - 2)) && (0..l - 2).all(|i| !x.contains(&i))))
            .count() as u64,
        Construction::KaehlerFirst | Construction::KaehlerSecond => {
            let sets = subsets(n, k);
            let mut count = 0u64;
            for z in &sets {
                for zb in &sets {
                    let step = |l: usize| -> bool {
                        if c == Construction::KaehlerFirst {
                            z.contains(&(l - 2)) && (0..l - 2).all(|i| !z.contains(&i))
                        } else if l % 2 == 0 {
                            let j = l / 2 - 1;
                            z.contains(&j) && (0..j).all(|i| !z.contains(&i) && !zb.contains(&i))
                        } else {
                            let j = (l - 1) / 2 - 1;
                            zb.contains(&j) && (0..=j).all(|i| !z.contains(&i)) && (0..j).all(|i| !zb.contains(&i))
                        }
                    };
                    if (2..=s).any(step) {
                        count += 1;
                    }
                }
            }
            count
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplementCheck {
    pub construction: Construction,
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub brute: u64,
    pub closed: String,
    pub matches: bool,
}

pub fn complement_oracle(max_n: usize, max_k: usize, max_s: usize) -> Vec<ComplementCheck> {
    let mut out = Vec::new();
    for c in [Construction::KaehlerFirst, Construction::KaehlerSecond, Construction::Pqk] {
        for n in 1..=max_n {
            for k in 1..=max_k.min(n) {
                for s in 2..=max_s {
                    let brute = complement_dim_brute(c, n, k, s);
                    let closed = complement_dim_closed(c, n as i64, k as i64, s as i64);
                    out.push(ComplementCheck {
                        construction: c,
                        n,
                        k,
                        s,
                        brute,
                        matches: closed == BigInt::from(brute),
                        closed: closed.to_string(),
                    });
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FormalMetricCaps {
    pub holonomy: String,
    pub dim: u32,
    /// (degree, cap, torus value)
    pub caps: Vec<(u32, u32, String)>,
}

pub fn formal_metric_constants(holonomy: &str) -> Result<FormalMetricCaps> {
    let (dim, caps): (u32, &[(u32, u32)]) = match holonomy.to_ascii_lowercase().as_str() {
        "g2" => (7, &[(2, 14), (3, 28)]),
        "spin7" => (8, &[(2, 21), (3, 48), (4, 63)]),
        other => return Err(Error::validation("holonomy", format!("unknown holonomy `{other}`"))),
    };
    Ok(FormalMetricCaps {
        holonomy: holonomy.to_string(),
        dim,
        caps: caps.iter().map(|&(d, c)| (d, c, torus_bound(dim, d).to_string())).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin7_relation() {
        assert!(spin7_feasible(&BettiInput::dim8(0, 0, 25, 0)).unwrap());
        assert!(!spin7_feasible(&BettiInput::dim8(1, 4, 22, 1)).unwrap());
        assert!(matches!(spin7_feasible(&BettiInput::dim8(0, 25, 0, 0)), Err(Error::Validation { .. })));
        let c = spin7_elliptic_obstruction();
        assert!(c.holds);
        assert_eq!(spin7_min_bound(&c), Some(23));
        let bounds: Vec<i64> = c.steps[1..6].iter().map(|s| s.value.as_i64().unwrap()).collect();
        assert_eq!(bounds, vec![25, 26, 26, 25, 23]);
    }

    #[test]
    fn su4() {
        let c = su4_elliptic_obstruction();
        assert!(c.holds);
        assert_eq!(c.steps[4].value, json!(12));
        assert_eq!(c.steps[5].value, json!(17));
    }

    #[test]
    fn g2_types() {
        let r = g2_candidate_types().unwrap();
        assert_eq!(r.prefilter.len(), 4);
        assert_eq!(r.survivors, vec![RealType7::S4xS3, RealType7::CP2xS3, RealType7::S3xCP2sharpCP2]);
        assert_eq!(r.excluded.len(), 1);
        assert_eq!(r.excluded[0].0, RealType7::S2xS2xS3);
        let a = r.excluded[0].1.null_class.clone().unwrap();
        assert!(a == "u" || a == "v", "{a}");
    }

    #[test]
    fn triples() {
        let t = pqk16_triples();
        let show: Vec<String> = t.pre_cap.iter().map(|x| x.to_string()).collect();
        assert_eq!(show, ["(1,0,1)", "(2,1,2)", "(3,0,4)", "(3,2,3)", "(4,1,5)", "(4,3,4)", "(5,0,7)", "(5,2,6)", "(5,4,5)"]);
        assert_eq!(t.triples, vec![PqkTriple::new(1, 0, 1), PqkTriple::new(2, 1, 2), PqkTriple::new(3, 0, 4)]);
    }

    #[test]
    fn homotopy_vectors() {
        let v = pqk16_homotopy_vector(&PqkTriple::new(3, 0, 4)).unwrap();
        assert_eq!(v.format(), "c4=3, c7=2, c11=1");
        let v = pqk16_homotopy_vector(&PqkTriple::new(1, 0, 1)).unwrap();
        assert_eq!(v.format(), "c4=1, c19=1");
        let v = pqk16_homotopy_vector(&PqkTriple::new(2, 1, 2)).unwrap();
        assert_eq!(v.format(), "c4=2, c6=1, c7=1, c9=1, c11=1");
        assert!(pqk16_homotopy_vector(&PqkTriple::new(3, 2, 3)).is_err());
        assert_eq!(pqk12_vector(1).unwrap().format(), "c4=1, c15=1");
        assert_eq!(pqk12_vector(3).unwrap().format(), "c4=3, c7=3");
        assert_eq!(pqk12_vector(2).unwrap().balance(), 12);
    }

    #[test]
    fn bounds() {
        let q = |class, dim, degree, estimate| formality_bound(&BoundQuery { class, dim, degree, estimate }).unwrap();
        use Estimate::*;
        use ManifoldClass::*;
        assert_eq!(q(Pqk, 16, 6, First), BigInt::from(5005));
        assert_eq!(q(Pqk, 16, 8, SpecialBp), BigInt::from(6435));
        assert_eq!(q(Pqk, 16, 4, SpecialBp), BigInt::from(455));
        assert_eq!(q(Pqk, 12, 4, First), BigInt::from(330));
        assert_eq!(q(KaehlerTrivialHodge, 4, 2, Second), BigInt::from(3));
        assert_eq!(q(KaehlerTrivialHodge, 8, 4, First), BigInt::from(18));
        assert!(formality_bound(&BoundQuery { class: Pqk, dim: 12, degree: 4, estimate: SpecialBp }).is_err());
        for &(d, k, v) in TORUS_CELLS {
            assert_eq!(torus_bound(d, k), BigInt::from(v));
        }
    }

    #[test]
    fn complements() {
        for c in complement_oracle(5, 2, 4) {
            let alt = complement_dim_alternating(c.n as i64, c.k as i64, c.s as i64);
            match c.construction {
                Construction::KaehlerSecond => assert_eq!(alt, BigInt::from(c.brute)),
                _ => assert!(c.matches, "{c:?}"),
            }
        }
    }
}
