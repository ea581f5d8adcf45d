//! Real and rational homotopy types in dimensions 4 and 7.
//!
//! A pair of binary quadratics (q1, q2) in degree-2 classes a, b stands for the
//! model (Λ(a, b, x, y), dx = q1, dy = q2). Over ℝ it is classified by the
//! intersection form on H²; over ℚ by the square class of its determinant.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{format_rational, rat, Derivation, Element, GeneratorSet, Rational};
use crate::error::{Error, Result};
use crate::linalg;
use crate::numbers::{first_primes, rational_sqrt};
use crate::rules::RuleHit;
use crate::sullivan::{HomotopySignature, SullivanAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RealType4 {
    S4,
    CP2,
    S2xS2,
    #[serde(rename = "CP2#CP2")]
    CP2sharpCP2,
}

impl RealType4 {
    pub const ALL: [RealType4; 4] = [RealType4::S4, RealType4::CP2, RealType4::S2xS2, RealType4::CP2sharpCP2];

    pub fn name(&self) -> &'static str {
        match self {
            RealType4::S4 => "S4",
            RealType4::CP2 => "CP2",
            RealType4::S2xS2 => "S2xS2",
            RealType4::CP2sharpCP2 => "CP2#CP2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for RealType4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RealType7 {
    S7,
    S4xS3,
    S2xS5,
    CP2xS3,
    S2xS2xS3,
    #[serde(rename = "S3xCP2#CP2")]
    S3xCP2sharpCP2,
    S3twisted,
}

impl RealType7 {
    pub const ALL: [RealType7; 7] = [
        RealType7::S7,
        RealType7::S4xS3,
        RealType7::S2xS5,
        RealType7::CP2xS3,
        RealType7::S2xS2xS3,
        RealType7::S3xCP2sharpCP2,
        RealType7::S3twisted,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RealType7::S7 => "S7",
            RealType7::S4xS3 => "S4xS3",
            RealType7::S2xS5 => "S2xS5",
            RealType7::CP2xS3 => "CP2xS3",
            RealType7::S2xS2xS3 => "S2xS2xS3",
            RealType7::S3xCP2sharpCP2 => "S3xCP2#CP2",
            RealType7::S3twisted => "S3twisted",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name().eq_ignore_ascii_case(s))
    }

    pub fn signature(&self) -> HomotopySignature {
        let (e, o): (&[u32], &[u32]) = match self {
            RealType7::S7 => (&[], &[7]),
            RealType7::S4xS3 => (&[4], &[3, 7]),
            RealType7::S2xS5 | RealType7::CP2xS3 => (&[2], &[3, 5]),
            _ => (&[2, 2], &[3, 3, 3]),
        };
        HomotopySignature::new(e.to_vec(), o.to_vec()).expect("valid")
    }

    /// A minimal model realising the type.
    pub fn representative(&self) -> SullivanAlgebra {
        let m = match self {
            RealType7::S7 => SullivanAlgebra::from_strings(&[("x", 7)], &[]),
            RealType7::S4xS3 => {
                SullivanAlgebra::from_strings(&[("y", 4), ("x3", 3), ("x7", 7)], &[("x7", "y^2")])
            }
            RealType7::S2xS5 => SullivanAlgebra::from_strings(&[("u", 2), ("x3", 3), ("x5", 5)], &[("x3", "u^2")]),
            RealType7::CP2xS3 => SullivanAlgebra::from_strings(&[("u", 2), ("x3", 3), ("x5", 5)], &[("x5", "u^3")]),
            RealType7::S2xS2xS3 => SullivanAlgebra::from_strings(
                &[("u", 2), ("v", 2), ("x1", 3), ("x2", 3), ("x3", 3)],
                &[("x1", "u^2"), ("x2", "v^2")],
            ),
            RealType7::S3xCP2sharpCP2 => SullivanAlgebra::from_strings(
                &[("u", 2), ("v", 2), ("x1", 3), ("x2", 3), ("x3", 3)],
                &[("x1", "u^2 - v^2"), ("x2", "u*v")],
            ),
            RealType7::S3twisted => SullivanAlgebra::from_strings(
                &[("u", 2), ("v", 2), ("x1", 3), ("x2", 3), ("x3", 3)],
                &[("x1", "u^2"), ("x2", "v^2"), ("x3", "u^2 + 2*u*v + v^2")],
            ),
        };
        m.expect("representative models are well formed")
    }
}

impl fmt::Display for RealType7 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldMode {
    Q,
    R,
}

impl FieldMode {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "Q" | "q" => Some(FieldMode::Q),
            "R" | "r" => Some(FieldMode::R),
            _ => None,
        }
    }
}

/// Coefficients (a², ab, b²) of two binary quadratics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticPair {
    pub q1: [Rational; 3],
    pub q2: [Rational; 3],
}

fn cross(u: &[Rational; 3], v: &[Rational; 3]) -> [Rational; 3] {
    [
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

pub type Mat2 = [[Rational; 2]; 2];

fn det2(m: &Mat2) -> Rational {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn inv2(a: &Mat2) -> Option<Mat2> {
    let d = det2(a);
    if d.is_zero() {
        return None;
    }
    Some([[&a[1][1] / &d, -&a[0][1] / &d], [-&a[1][0] / &d, &a[0][0] / &d]])
}

fn mat2_i(m: [[i64; 2]; 2]) -> Mat2 {
    [[rat(m[0][0]), rat(m[0][1])], [rat(m[1][0]), rat(m[1][1])]]
}

fn mat2_json(m: &Mat2) -> Value {
    json!([
        [format_rational(&m[0][0]), format_rational(&m[0][1])],
        [format_rational(&m[1][0]), format_rational(&m[1][1])]
    ])
}

impl QuadraticPair {
    pub fn new(q1: [Rational; 3], q2: [Rational; 3]) -> Self {
        QuadraticPair { q1, q2 }
    }

    pub fn from_ints(q1: [i64; 3], q2: [i64; 3]) -> Self {
        QuadraticPair { q1: q1.map(rat), q2: q2.map(rat) }
    }

    /// (a² + s b², ab).
    pub fn case31(s: Rational) -> Self {
        QuadraticPair { q1: [Rational::one(), Rational::zero(), s], q2: [Rational::zero(), Rational::one(), Rational::zero()] }
    }

    /// Parse two polynomial strings in the variables a and b.
    pub fn parse(q1: &str, q2: &str) -> Result<Self> {
        let g = GeneratorSet::from_pairs(&[("a", 2), ("b", 2)])?;
        let coeffs = |s: &str, field: &str| -> Result<[Rational; 3]> {
            let e = crate::poly::parse_element(s, &g).map_err(|e| e.within(field))?;
            if e.homogeneous_degree().is_some_and(|d| d != 4) {
                return Err(Error::validation(field, "expected a quadratic form in a, b"));
            }
            let mono = |i: u32, j: u32| crate::algebra::Monomial::from_exponents(&g, vec![i, j]).expect("even");
            Ok([e.coefficient(&mono(2, 0)), e.coefficient(&mono(1, 1)), e.coefficient(&mono(0, 2))])
        };
        Ok(QuadraticPair { q1: coeffs(q1, "q1")?, q2: coeffs(q2, "q2")? })
    }

    /// Res(q1, q2) = (a₀b₂ − a₂b₀)² − (a₀b₁ − a₁b₀)(a₁b₂ − a₂b₁).
    pub fn resultant(&self) -> Rational {
        let (a, b) = (&self.q1, &self.q2);
        let t = &a[0] * &b[2] - &a[2] * &b[0];
        &t * &t - (&a[0] * &b[1] - &a[1] * &b[0]) * (&a[1] * &b[2] - &a[2] * &b[1])
    }

    pub fn is_regular(&self) -> bool {
        !self.resultant().is_zero()
    }

    /// Functional on Sym² = ⟨a², ab, b²⟩ with kernel span(q1, q2); zero if dependent.
    pub fn top_class_functional(&self) -> [Rational; 3] {
        cross(&self.q1, &self.q2)
    }

    /// Gram matrix of the cup product H² × H² → H⁴ in the basis (a, b).
    /// Its determinant is −Res(q1, q2).
    pub fn gram(&self) -> Mat2 {
        let l = self.top_class_functional();
        [[l[0].clone(), l[1].clone()], [l[1].clone(), l[2].clone()]]
    }

    pub fn classify_real(&self) -> Result<RealType4> {
        if !self.is_regular() {
            return Err(Error::Precondition("the pair is not a regular sequence (resultant 0)".into()));
        }
        if det2(&self.gram()).is_positive() {
            Ok(RealType4::CP2sharpCP2)
        } else {
            Ok(RealType4::S2xS2)
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"q1": self.format_q(0), "q2": self.format_q(1)})
    }

    pub fn format_q(&self, which: usize) -> String {
        let g = GeneratorSet::from_pairs(&[("a", 2), ("b", 2)]).expect("valid");
        self.element(&g, which).format()
    }

    fn element(&self, g: &Arc<GeneratorSet>, which: usize) -> Element {
        let q = if which == 0 { &self.q1 } else { &self.q2 };
        let a = Element::generator(g, 0);
        let b = Element::generator(g, 1);
        &(&(&a * &a).scale(&q[0]) + &(&a * &b).scale(&q[1])) + &(&b * &b).scale(&q[2])
    }

    /// (Λ(a, b, x, y), dx = q1, dy = q2).
    pub fn to_model(&self) -> SullivanAlgebra {
        let g = GeneratorSet::from_pairs(&[("a", 2), ("b", 2), ("x", 3), ("y", 3)]).expect("valid");
        let z = Element::zero(&g);
        let d = Derivation::new(&g, vec![z.clone(), z, self.element(&g, 0), self.element(&g, 1)])
            .expect("quadratic images are closed");
        SullivanAlgebra::new(d).expect("degrees ≥ 2")
    }

    /// Substitute a ↦ m₀₀a + m₁₀b, b ↦ m₀₁a + m₁₁b (columns are the images).
    pub fn transform(&self, m: &Mat2) -> QuadraticPair {
        let f = |q: &[Rational; 3]| {
            let (p, r) = ((&m[0][0], &m[1][0]), (&m[0][1], &m[1][1]));
            // (p0 a + p1 b)² etc.
            let sq = |x: (&Rational, &Rational)| [x.0 * x.0, rat(2) * x.0 * x.1, x.1 * x.1];
            let pr = [p.0 * r.0, p.0 * r.1 + p.1 * r.0, p.1 * r.1];
            let (pp, rr) = (sq(p), sq(r));
            [0, 1, 2].map(|k| &q[0] * &pp[k] + &q[1] * &pr[k] + &q[2] * &rr[k])
        };
        QuadraticPair { q1: f(&self.q1), q2: f(&self.q2) }
    }

    /// Whether span(q1, q2) contains both forms.
    fn spans(&self, q: &[Rational; 3]) -> bool {
        let m = vec![self.q1.to_vec(), self.q2.to_vec(), q.to_vec()];
        linalg::rank(&m) <= 2 && linalg::rank(&m[..2]) == 2
    }

    /// `phi` (columns = images of a, b) carries the ideal of `self` into that of `target`.
    pub fn carries_ideal(&self, phi: &Mat2, target: &QuadraticPair) -> bool {
        let img = self.transform(phi);
        !det2(phi).is_zero() && target.spans(&img.q1) && target.spans(&img.q2)
    }

    /// Parameter s of the rational normal form (a² + s b², ab) and the basis
    /// (columns) in which the Gram matrix is diagonal.
    pub fn normal_form(&self) -> Result<(Rational, Mat2)> {
        if !self.is_regular() {
            return Err(Error::Precondition("normal form needs a regular pair".into()));
        }
        let (d, p) = diagonalize(&self.gram());
        Ok((-&d[0] / &d[1], p))
    }
}

/// Rational congruence diagonalization: Pᵀ G P = diag(α, β).
pub fn diagonalize(g: &Mat2) -> ([Rational; 2], Mat2) {
    let form = |v: &[Rational; 2], w: &[Rational; 2]| {
        &v[0] * &g[0][0] * &w[0] + &v[0] * &g[0][1] * &w[1] + &v[1] * &g[1][0] * &w[0] + &v[1] * &g[1][1] * &w[1]
    };
    let e1 = [rat(1), rat(0)];
    let e2 = [rat(0), rat(1)];
    let e12 = [rat(1), rat(1)];
    let (v, other) = if !g[0][0].is_zero() {
        (e1, e2)
    } else if !g[1][1].is_zero() {
        (e2, e1)
    } else {
        (e12, e2)
    };
    let gvv = form(&v, &v);
    let c = &form(&v, &other) / &gvv;
    let w = [&other[0] - &c * &v[0], &other[1] - &c * &v[1]];
    let gww = form(&w, &w);
    ([gvv, gww], [[v[0].clone(), w[0].clone()], [v[1].clone(), w[1].clone()]])
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    pub field: FieldMode,
    pub criterion: String,
    /// Columns are the images of a and b; verified to carry ideal to ideal.
    pub witness: Option<Mat2>,
    pub evidence: Value,
}

impl IsoVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "isomorphic": self.isomorphic,
            "field": match self.field { FieldMode::Q => "Q", FieldMode::R => "R" },
            "criterion": self.criterion,
            "witness": self.witness.as_ref().map(mat2_json),
            "evidence": self.evidence,
        })
    }
}

/// (a² + s b², ab) versus (a² + t b², ab).
pub fn iso_case31(s: &Rational, t: &Rational, field: FieldMode) -> Result<IsoVerdict> {
    if s.is_zero() || t.is_zero() {
        return Err(Error::Precondition("s and t must be non-zero for a regular sequence".into()));
    }
    match field {
        FieldMode::R => {
            let same = s.is_positive() == t.is_positive();
            Ok(IsoVerdict {
                isomorphic: same,
                field,
                criterion: if same { "s and t have the same sign".into() } else { "s and t have opposite signs".into() },
                witness: None,
                evidence: json!({"s": format_rational(s), "t": format_rational(t)}),
            })
        }
        FieldMode::Q => {
            let inv = Rational::one() / (s * t);
            match rational_sqrt(&inv) {
                Some(k3) => {
                    // a ↦ b, b ↦ k₃ a sends a² + s b² to (1/t)(a² + t b²) and ab to k₃ ab
                    let phi: Mat2 = [[Rational::zero(), k3.clone()], [Rational::one(), Rational::zero()]];
                    let src = QuadraticPair::case31(s.clone());
                    let tgt = QuadraticPair::case31(t.clone());
                    if !src.carries_ideal(&phi, &tgt) {
                        return Err(Error::Internal("case 3.1 witness failed verification".into()));
                    }
                    Ok(IsoVerdict {
                        isomorphic: true,
                        field,
                        criterion: format!("1/(st) = ({})^2 is a rational square", format_rational(&k3)),
                        witness: Some(phi),
                        evidence: json!({"k3": format_rational(&k3), "map": "a -> b, b -> k3*a"}),
                    })
                }
                None => Ok(IsoVerdict {
                    isomorphic: false,
                    field,
                    criterion: "1/(st) not a rational square".into(),
                    witness: None,
                    evidence: json!({"one_over_st": format_rational(&inv)}),
                }),
            }
        }
    }
}

/// Isomorphism of two regular pairs. Over ℚ the similarity class of the binary
/// intersection form is the square class of its determinant.
pub fn iso_pairs(p: &QuadraticPair, q: &QuadraticPair, field: FieldMode) -> Result<IsoVerdict> {
    if !p.is_regular() || !q.is_regular() {
        return Err(Error::Precondition("both pairs must be regular sequences".into()));
    }
    let (s, _) = p.normal_form()?;
    let (t, _) = q.normal_form()?;
    let v = iso_case31(&s, &t, field)?;
    let evidence = json!({
        "normal_form_s": format_rational(&s),
        "normal_form_t": format_rational(&t),
        "reduced": v.evidence,
    });
    if field == FieldMode::R || !v.isomorphic {
        return Ok(IsoVerdict { evidence, ..v });
    }
    let phi = congruence_witness(p, q).ok_or_else(|| Error::Internal("no witness despite matching square class".into()))?;
    if !p.carries_ideal(&phi, q) {
        return Err(Error::Internal("constructed witness failed verification".into()));
    }
    Ok(IsoVerdict { witness: Some(phi), evidence, ..v })
}

/// P with Pᵀ G_q P = c G_p, built from diagonalizations.
fn congruence_witness(p: &QuadraticPair, q: &QuadraticPair) -> Option<Mat2> {
    let (d1, p1) = diagonalize(&p.gram());
    let (d2, p2) = diagonalize(&q.gram());
    // c·⟨α₁, β₁⟩ with c = α₂/α₁ equals ⟨α₂, α₂β₁/α₁⟩; match β₂ r² = α₂β₁/α₁
    let r = rational_sqrt(&(&d2[0] * &d1[1] / (&d1[0] * &d2[1])))?;
    let mid: Mat2 = [[Rational::one(), Rational::zero()], [Rational::zero(), r]];
    Some(mul2(&mul2(&p2, &mid), &inv2(&p1)?))
}

/// Bounded-height search for an integer witness, entries in [−h, h].
pub fn search_iso_witness(p: &QuadraticPair, q: &QuadraticPair, height: i64) -> Option<Mat2> {
    let range: Vec<i64> = (0..=height).flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] }).collect();
    let mut cands = Vec::new();
    for &a in &range {
        for &b in &range {
            for &c in &range {
                for &d in &range {
                    if a * d - b * c != 0 {
                        cands.push([[a, b], [c, d]]);
                    }
                }
            }
        }
    }
    cands.into_iter().map(mat2_i).find(|m| p.carries_ideal(m, q))
}

/// Which family to generate: (a² + p b², ab) is S2xS2 over ℝ, (a² − p b², ab) is CP2#CP2.
pub fn generate_rational_family(count: usize, target: RealType4) -> Result<Vec<QuadraticPair>> {
    if count == 0 {
        return Err(Error::validation("count", "must be ≥ 1"));
    }
    let sign = match target {
        RealType4::S2xS2 => 1,
        RealType4::CP2sharpCP2 => -1,
        other => return Err(Error::validation("target", format!("{other} has a unique rational type"))),
    };
    Ok(first_primes(count).into_iter().map(|p| QuadraticPair::case31(rat(sign * p as i64))).collect())
}

/// All pairwise ℚ-verdicts of a family, in index order.
pub fn family_pairwise(family: &[QuadraticPair]) -> Result<Vec<(usize, usize, IsoVerdict)>> {
    let idx: Vec<(usize, usize)> =
        (0..family.len()).flat_map(|i| (i + 1..family.len()).map(move |j| (i, j))).collect();
    idx.par_iter()
        .map(|&(i, j)| iso_pairs(&family[i], &family[j], FieldMode::Q).map(|v| (i, j, v)))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification<T> {
    pub real_type: T,
    pub trail: Vec<RuleHit>,
    pub evidence: Value,
}

fn require_poincare(model: &SullivanAlgebra, n: usize) -> Result<Vec<usize>> {
    let b = model.cohomology_dims(2 * n as u32 + 2);
    if !b.is_poincare(n) || b.get(n) != 1 {
        return Err(Error::Classification(format!(
            "model is not elliptic of formal dimension {n}: Betti numbers {:?}",
            b.dims
        )));
    }
    Ok(b.dims)
}

/// Degree-2 generator indices and the pair given by the images of two
/// degree-3 generators (coefficients in the degree-2 gens).
fn pair_from_images(model: &SullivanAlgebra, imgs: &[Element]) -> Result<QuadraticPair> {
    let gens = model.generators();
    let two: Vec<usize> = (0..gens.len()).filter(|&i| gens.degree(i) == 2).collect();
    if two.len() != 2 {
        return Err(Error::Classification("expected exactly two degree-2 generators".into()));
    }
    let mono = |i: u32, j: u32| {
        let mut e = vec![0u32; gens.len()];
        e[two[0]] = i;
        e[two[1]] = j;
        crate::algebra::Monomial::from_exponents(gens, e).expect("even")
    };
    let co = |e: &Element| [e.coefficient(&mono(2, 0)), e.coefficient(&mono(1, 1)), e.coefficient(&mono(0, 2))];
    Ok(QuadraticPair::new(co(&imgs[0]), co(&imgs[1])))
}

pub fn classify4(model: &SullivanAlgebra) -> Result<Classification<RealType4>> {
    let sig = model.signature()?;
    let dispatch = RuleHit::new("classify.signature-dispatch", format!("signature {sig}"));
    let b = require_poincare(model, 4)?;
    let (t, mut trail, evidence) = match (sig.even.as_slice(), sig.odd.as_slice()) {
        ([4], [7]) => (RealType4::S4, vec![dispatch], json!({"betti": b})),
        ([2], [5]) => (RealType4::CP2, vec![dispatch], json!({"betti": b})),
        ([2, 2], [3, 3]) => {
            let gens = model.generators();
            let imgs: Vec<Element> =
                (0..gens.len()).filter(|&i| gens.degree(i) == 3).map(|i| model.differential().image(i).clone()).collect();
            let pair = pair_from_images(model, &imgs)?;
            let t = pair.classify_real()?;
            let g = pair.gram();
            (
                t,
                vec![dispatch, RuleHit::new("classify.intersection-form", format!("det Gram = {}", format_rational(&det2(&g))))],
                json!({"betti": b, "pair": pair.to_json(), "gram": mat2_json(&g)}),
            )
        }
        _ => return Err(Error::Classification(format!("signature {sig} is not admissible in dimension 4"))),
    };
    trail.dedup();
    Ok(Classification { real_type: t, trail, evidence })
}

pub fn classify7(model: &SullivanAlgebra) -> Result<Classification<RealType7>> {
    let sig = model.signature()?;
    let dispatch = RuleHit::new("classify.signature-dispatch", format!("signature {sig}"));
    let b = require_poincare(model, 7)?;
    match (sig.even.as_slice(), sig.odd.as_slice()) {
        ([], [7]) => Ok(Classification { real_type: RealType7::S7, trail: vec![dispatch], evidence: json!({"betti": b}) }),
        ([4], [3, 7]) => Ok(Classification { real_type: RealType7::S4xS3, trail: vec![dispatch], evidence: json!({"betti": b}) }),
        ([2], [3, 5]) => {
            let t = if b[4] == 0 { RealType7::S2xS5 } else { RealType7::CP2xS3 };
            Ok(Classification {
                real_type: t,
                trail: vec![dispatch, RuleHit::new("classify.b4", format!("b4 = {}", b[4]))],
                evidence: json!({"betti": b}),
            })
        }
        ([2, 2], [3, 3, 3]) => {
            let gens = model.generators();
            let three: Vec<usize> = (0..gens.len()).filter(|&i| gens.degree(i) == 3).collect();
            let two: Vec<usize> = (0..gens.len()).filter(|&i| gens.degree(i) == 2).collect();
            // matrix of d: ⟨x₁, x₂, x₃⟩ → ⟨u², uv, v²⟩
            let mono = |i: u32, j: u32| {
                let mut e = vec![0u32; gens.len()];
                e[two[0]] = i;
                e[two[1]] = j;
                crate::algebra::Monomial::from_exponents(gens, e).expect("even")
            };
            let basis = [mono(2, 0), mono(1, 1), mono(0, 2)];
            let cols: Vec<Vec<Rational>> = three
                .iter()
                .map(|&i| basis.iter().map(|m| model.differential().image(i).coefficient(m)).collect())
                .collect();
            let mat = linalg::transpose(&cols, 3);
            let ker = linalg::kernel(&mat, 3);
            if ker.is_empty() {
                return Ok(Classification {
                    real_type: RealType7::S3twisted,
                    trail: vec![dispatch, RuleHit::new("classify.twisted", "d injective on degree 3")],
                    evidence: json!({"betti": b}),
                });
            }
            if ker.len() > 1 {
                return Err(Error::Classification("kernel of d on degree 3 has dimension > 1".into()));
            }
            // image of d on degree 3 is 2-dimensional; any basis of it is the residual pair
            let (r, piv) = linalg::rref(&linalg::transpose(&mat, 3));
            let rows: Vec<[Rational; 3]> =
                r.into_iter().take(piv.len()).map(|row| [row[0].clone(), row[1].clone(), row[2].clone()]).collect();
            let pair = QuadraticPair::new(rows[0].clone(), rows[1].clone());
            let t4 = pair.classify_real()?;
            let t = match t4 {
                RealType4::S2xS2 => RealType7::S2xS2xS3,
                _ => RealType7::S3xCP2sharpCP2,
            };
            let kv: Vec<String> = ker[0].iter().map(format_rational).collect();
            Ok(Classification {
                real_type: t,
                trail: vec![
                    dispatch,
                    RuleHit::new("classify.split-s3", format!("closed degree-3 combination ({})", kv.join(", "))),
                    RuleHit::new("classify.intersection-form", format!("residual pair is {t4}")),
                ],
                evidence: json!({"betti": b, "kernel": kv, "pair": pair.to_json(), "gram": mat2_json(&pair.gram())}),
            })
        }
        _ => Err(Error::Classification(format!("signature {sig} is not admissible in dimension 7"))),
    }
}

/// Representative minimal models for the four 4-dimensional types.
pub fn representative4(t: RealType4) -> SullivanAlgebra {
    match t {
        RealType4::S4 => SullivanAlgebra::from_strings(&[("y", 4), ("x", 7)], &[("x", "y^2")]).expect("valid"),
        RealType4::CP2 => SullivanAlgebra::from_strings(&[("u", 2), ("x", 5)], &[("x", "u^3")]).expect("valid"),
        RealType4::S2xS2 => QuadraticPair::from_ints([1, 0, 0], [0, 0, 1]).to_model(),
        RealType4::CP2sharpCP2 => QuadraticPair::from_ints([1, 0, -1], [0, 1, 0]).to_model(),
    }
}

/// Scaling automorphism ψ_m of a case-3 model: a ↦ ma, b ↦ mb, x ↦ m²x, y ↦ m²y.
pub fn psi(model: &SullivanAlgebra, m: &Rational) -> Vec<Element> {
    let g = model.generators();
    (0..g.len())
        .map(|i| {
            let k = if g.degree(i) == 2 { m.clone() } else { m * m };
            Element::generator(g, i).scale(&k)
        })
        .collect()
}

/// φ∘d = d'∘φ on generators for the algebra map φ given by `images`.
pub fn commutes_with_d(src: &SullivanAlgebra, tgt: &SullivanAlgebra, images: &[Element]) -> Result<bool> {
    for i in 0..src.generators().len() {
        let lhs = src.differential().image(i).substitute(images, tgt.generators())?;
        let rhs = tgt.differential().apply(&images[i])?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sullivan lift of the case 3.1 witness a ↦ b, b ↦ k₃a: x ↦ (1/t)x, y ↦ k₃y.
pub fn case31_sullivan_lift(s: &Rational, t: &Rational, k3: &Rational) -> (SullivanAlgebra, SullivanAlgebra, Vec<Element>) {
    let src = QuadraticPair::case31(s.clone()).to_model();
    let tgt = QuadraticPair::case31(t.clone()).to_model();
    let g = tgt.generators();
    let images = vec![
        Element::generator(g, 1),
        Element::generator(g, 0).scale(k3),
        Element::generator(g, 2).scale(&(Rational::one() / t)),
        Element::generator(g, 3).scale(k3),
    ];
    (src, tgt, images)
}
