//! Sullivan models of biquotients G//H from embedding data.
//!
//! Universal classes of each factor of G are pulled back along the left and
//! right embeddings through the maximal torus of H, then rewritten in the
//! polynomial generators of H*(BH) by symmetric-function reduction.

use std::sync::Arc;

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{rat, Derivation, Element, Generator, GeneratorSet, Monomial, Rational};
use crate::error::{Error, Result};
use crate::liegroups::{Family, LieGroup};
use crate::lowdim::{classify7, Classification, RealType7};
use crate::sullivan::SullivanAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// d x = φ_L*(c) − φ_R*(c).
    PullbackDifference,
    /// σ_k of the difference weights (left minus right).
    PaperSu3,
}

impl Convention {
    pub fn parse(s: &str) -> Option<Self> {
        match s.replace('-', "_").as_str() {
            "pullback_difference" => Some(Convention::PullbackDifference),
            "paper_su3" => Some(Convention::PaperSu3),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Convention::PullbackDifference => "pullback_difference",
            Convention::PaperSu3 => "paper_su3",
        }
    }
}

/// How one factor of H sits in one factor of G on one side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Embedding {
    Trivial,
    /// Circle weights on the defining representation.
    Weights(Vec<i64>),
    /// Named inclusion of a simple factor: identity, block, diagonal, standard.
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HFactor {
    pub group: LieGroup,
    pub left: Vec<Embedding>,
    pub right: Vec<Embedding>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiquotientSpec {
    pub g: Vec<LieGroup>,
    pub h: Vec<HFactor>,
    pub convention: Convention,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GJson {
    family: String,
    n: Option<u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HJson {
    kind: String,
    #[serde(default)]
    left: Option<Vec<Value>>,
    #[serde(default)]
    right: Option<Vec<Value>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecJson {
    g: Vec<GJson>,
    h: Vec<HJson>,
    #[serde(default)]
    convention: Option<String>,
}

/// Length of the defining representation's weight vector.
fn rep_len(g: &LieGroup) -> Result<usize> {
    match g.family {
        Family::SU | Family::Sp => Ok(g.n.unwrap_or(0) as usize),
        _ => Err(Error::Unsupported(format!("factor {g} of G: only SU and Sp families are modelled"))),
    }
}

impl BiquotientSpec {
    pub fn from_json(v: &Value) -> Result<Self> {
        let s: SpecJson = serde_json::from_value(v.clone()).map_err(|e| Error::validation("spec", e.to_string()))?;
        let mut g = Vec::new();
        for (i, gj) in s.g.iter().enumerate() {
            let text = match gj.n {
                Some(n) => format!("{}({n})", gj.family),
                None => gj.family.clone(),
            };
            let grp = LieGroup::parse(&text).map_err(|e| e.within(&format!("g[{i}]")))?;
            let norm = grp.normalize();
            if norm.len() != 1 {
                return Err(Error::validation(format!("g[{i}]"), format!("{grp} is not simple; list its factors")));
            }
            rep_len(&norm[0]).map_err(|e| match e {
                Error::Unsupported(m) => Error::Unsupported(format!("g[{i}]: {m}")),
                other => other,
            })?;
            g.push(norm[0]);
        }
        let mut h = Vec::new();
        for (i, hj) in s.h.iter().enumerate() {
            let group = match hj.kind.as_str() {
                "circle" => LieGroup::CIRCLE,
                "sp1" => LieGroup::sp(1),
                "sp2" => LieGroup::sp(2),
                "su3" => LieGroup::su(3),
                other => return Err(Error::Unsupported(format!("h[{i}].kind: `{other}` is not in the embedding catalogue"))),
            };
            let side = |vals: &Option<Vec<Value>>, name: &str| -> Result<Vec<Embedding>> {
                let field = format!("h[{i}].{name}");
                let Some(vals) = vals else { return Ok(vec![Embedding::Trivial; g.len()]) };
                if vals.len() != g.len() {
                    return Err(Error::validation(&field, format!("expected {} entries, one per factor of G", g.len())));
                }
                vals.iter()
                    .enumerate()
                    .map(|(j, v)| parse_embedding(v, &group, &g[j]).map_err(|e| e.within(&format!("{field}[{j}]"))))
                    .collect()
            };
            h.push(HFactor { group, left: side(&hj.left, "left")?, right: side(&hj.right, "right")? });
        }
        let convention = match &s.convention {
            None => Convention::PullbackDifference,
            Some(c) => Convention::parse(c).ok_or_else(|| Error::validation("convention", format!("unknown convention `{c}`")))?,
        };
        Ok(BiquotientSpec { g, h, convention })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::parse("spec", e.to_string()))?;
        Self::from_json(&v)
    }

    pub fn to_json(&self) -> Value {
        let emb = |e: &Embedding| match e {
            Embedding::Trivial => json!("trivial"),
            Embedding::Weights(w) => json!(w),
            Embedding::Named(n) => json!(n),
        };
        let kind = |g: &LieGroup| match (g.family, g.n) {
            (Family::Circle, _) => "circle",
            (Family::Sp, Some(1)) => "sp1",
            (Family::Sp, Some(2)) => "sp2",
            _ => "su3",
        };
        json!({
            "g": self.g.iter().map(|x| json!({"family": format!("{:?}", x.family), "n": x.n})).collect::<Vec<_>>(),
            "h": self.h.iter().map(|f| json!({
                "kind": kind(&f.group),
                "left": f.left.iter().map(emb).collect::<Vec<_>>(),
                "right": f.right.iter().map(emb).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "convention": self.convention.name(),
        })
    }

    /// SU(3)//S¹ with circle weights L | R.
    pub fn su3_circle(left: [i64; 3], right: [i64; 3], convention: Convention) -> Self {
        BiquotientSpec {
            g: vec![LieGroup::su(3)],
            h: vec![HFactor {
                group: LieGroup::CIRCLE,
                left: vec![Embedding::circle(left.to_vec())],
                right: vec![Embedding::circle(right.to_vec())],
            }],
            convention,
        }
    }

    /// Sp(1)³/T² with the inclusion (a, b) ↦ (a^w₀ b^w₁ …) on each factor, right side trivial.
    pub fn sp1_cubed_torus(weights: [[i64; 2]; 3]) -> Self {
        let circle = |k: usize| HFactor {
            group: LieGroup::CIRCLE,
            left: weights.iter().map(|w| Embedding::circle(vec![w[k]])).collect(),
            right: vec![Embedding::Trivial; 3],
        };
        BiquotientSpec { g: vec![LieGroup::sp(1); 3], h: vec![circle(0), circle(1)], convention: Convention::PullbackDifference }
    }
}

impl Embedding {
    /// Circle weights; all-zero weights are the trivial embedding.
    pub fn circle(w: Vec<i64>) -> Self {
        if w.iter().all(|x| *x == 0) {
            Embedding::Trivial
        } else {
            Embedding::Weights(w)
        }
    }
}

fn parse_embedding(v: &Value, h: &LieGroup, g: &LieGroup) -> Result<Embedding> {
    let len = rep_len(g)?;
    if h.is_circle() {
        if v.as_str() == Some("trivial") {
            return Ok(Embedding::Trivial);
        }
        let arr = v.as_array().ok_or_else(|| Error::validation("", "circle weights must be an integer list"))?;
        let w: Vec<i64> = arr
            .iter()
            .map(|x| x.as_i64().ok_or_else(|| Error::validation("", "weights must be integers")))
            .collect::<Result<_>>()?;
        if w.len() != len {
            return Err(Error::validation("", format!("{g} needs {len} weights, got {}", w.len())));
        }
        if g.family == Family::SU && w.iter().sum::<i64>() != 0 {
            return Err(Error::validation("", format!("weights into {g} must sum to zero")));
        }
        return Ok(Embedding::circle(w));
    }
    let name = v.as_str().ok_or_else(|| Error::validation("", "expected an embedding name"))?;
    if name == "trivial" {
        return Ok(Embedding::Trivial);
    }
    // checked against the catalogue when weights are produced
    torus_weights_named(h, name, g)?;
    Ok(Embedding::Named(name.to_string()))
}

/// Coordinates of the maximal torus of H as linear forms, per H-factor: the
/// weights a named inclusion puts on the defining representation of `g`.
fn torus_weights_named(h: &LieGroup, name: &str, g: &LieGroup) -> Result<Vec<Option<(usize, i64)>>> {
    let len = rep_len(g)?;
    let n = g.n.unwrap_or(0) as usize;
    let bad = || Error::Unsupported(format!("{h} -> {g} via `{name}` is not in the embedding catalogue"));
    // entry i: Some((torus var index, sign)) or None for a zero weight
    let mut w: Vec<Option<(usize, i64)>> = vec![None; len];
    match (h.family, h.n, g.family) {
        (Family::Sp, Some(k), Family::Sp) => match name {
            "identity" | "standard" if n == k as usize => (0..k as usize).for_each(|i| w[i] = Some((i, 1))),
            "block" if n >= k as usize => (0..k as usize).for_each(|i| w[i] = Some((i, 1))),
            "diagonal" if k == 1 => (0..n).for_each(|i| w[i] = Some((0, 1))),
            _ => return Err(bad()),
        },
        (Family::Sp, Some(k), Family::SU) => match name {
            "standard" | "block" if n >= 2 * k as usize && (name == "block" || n == 2 * k as usize) => {
                for i in 0..k as usize {
                    w[2 * i] = Some((i, 1));
                    w[2 * i + 1] = Some((i, -1));
                }
            }
            "diagonal" if k == 1 && n % 2 == 0 => {
                for i in 0..n / 2 {
                    w[2 * i] = Some((0, 1));
                    w[2 * i + 1] = Some((0, -1));
                }
            }
            _ => return Err(bad()),
        },
        (Family::SU, Some(3), Family::SU) => match name {
            "identity" | "standard" | "block" if n >= 3 && (name != "identity" || n == 3) => {
                (0..3).for_each(|i| w[i] = Some((i, 1)));
            }
            _ => return Err(bad()),
        },
        _ => return Err(bad()),
    }
    Ok(w)
}

/// Elementary symmetric polynomials σ_0..σ_m of homogeneous elements.
pub fn elementary_symmetric(xs: &[Element], amb: &Arc<GeneratorSet>) -> Vec<Element> {
    let mut e = vec![Element::one(amb)];
    for x in xs {
        e.push(Element::zero(amb));
        for k in (1..e.len()).rev() {
            let t = &e[k - 1] * x;
            e[k] = &e[k] + &t;
        }
    }
    e
}

/// Per H-factor bookkeeping: torus variable indices in the work ambient and the
/// corresponding polynomial generators of H*(BH).
struct FactorVars {
    group: LieGroup,
    torus: Vec<usize>,
    base: Vec<usize>,
}

pub struct ModelBuild {
    pub spec: BiquotientSpec,
    pub model: SullivanAlgebra,
    /// Per odd generator: (G-factor index, universal class name).
    pub odd_sources: Vec<(usize, String)>,
}

fn base_names(h: &[HFactor]) -> Vec<Vec<(String, u32)>> {
    let letters = ["u", "v", "w", "z"];
    let circles = h.iter().filter(|f| f.group.is_circle()).count();
    let mut ci = 0;
    h.iter()
        .enumerate()
        .map(|(k, f)| match (f.group.family, f.group.n) {
            (Family::Circle, _) => {
                let name = if circles <= letters.len() { letters[ci].to_string() } else { format!("u{}", ci + 1) };
                ci += 1;
                vec![(name, 2)]
            }
            (Family::Sp, Some(1)) => vec![(format!("q{}", k + 1), 4)],
            (Family::Sp, Some(m)) => (1..=m).map(|j| (format!("q{}_{j}", k + 1), 4 * j)).collect(),
            (Family::SU, Some(m)) => (2..=m).map(|j| (format!("c{}_{j}", k + 1), 2 * j)).collect(),
            _ => unreachable!("catalogue"),
        })
        .collect()
}

fn odd_names(g: &[LieGroup]) -> Vec<(usize, String, String, u32)> {
    let mut out = Vec::new();
    for (j, f) in g.iter().enumerate() {
        let n = f.n.unwrap_or(0);
        let classes: Vec<(String, u32)> = match f.family {
            Family::SU => (2..=n).map(|k| (format!("c{k}"), 2 * k)).collect(),
            _ => (1..=n).map(|k| (format!("q{k}"), 4 * k)).collect(),
        };
        for (cls, deg) in classes {
            let name = if g.len() == 1 { format!("x{}", deg - 1) } else { format!("x{}_{}", j + 1, deg - 1) };
            out.push((j, cls, name, deg - 1));
        }
    }
    out
}

/// Rewrite a W_H-invariant polynomial in torus variables as a polynomial in
/// the generators of H*(BH). Works factor by factor with leading-term reduction.
fn reduce_symmetric(p: &Element, factors: &[FactorVars], work: &Arc<GeneratorSet>) -> Result<Element> {
    let mut rest = p.clone();
    let mut out = Element::zero(work);
    for f in factors {
        if f.group.is_circle() {
            continue;
        }
        let symplectic = f.group.family == Family::Sp;
        let vars = &f.torus;
        // y_i = t_i² for Sp, s_i for SU
        let ys: Vec<Element> = vars
            .iter()
            .map(|&i| {
                let t = Element::generator(work, i);
                if symplectic {
                    &t * &t
                } else {
                    t
                }
            })
            .collect();
        let sig = elementary_symmetric(&ys, work);
        // σ_k ↦ base generator; for SU, σ₁ ↦ 0 and base[k-2] = c_k
        let image_of_sigma = |k: usize| -> Element {
            if symplectic {
                Element::generator(work, f.base[k - 1])
            } else if k == 1 {
                Element::zero(work)
            } else {
                Element::generator(work, f.base[k - 2])
            }
        };
        let step = if symplectic { 2 } else { 1 };
        let mut guard = 0usize;
        loop {
            guard += 1;
            if guard > 100_000 {
                return Err(Error::Internal("symmetric reduction did not terminate".into()));
            }
            // leading restricted exponent (lex), over terms involving these variables
            let lead = rest
                .terms()
                .iter()
                .filter(|(m, _)| vars.iter().any(|&i| m.exponents()[i] > 0))
                .map(|(m, c)| (vars.iter().map(|&i| m.exponents()[i]).collect::<Vec<u32>>(), m.clone(), c.clone()))
                .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
            let Some((a, m, c)) = lead else { break };
            if a.iter().any(|e| e % step != 0) || a.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::Internal(format!("pullback is not Weyl-invariant in the torus of {}", f.group)));
            }
            let a: Vec<u32> = a.iter().map(|e| e / step).collect();
            // other part of the monomial
            let mut other = m.exponents().to_vec();
            for &i in vars {
                other[i] = 0;
            }
            let other = Element::term(work, Monomial::from_exponents(work, other)?, c);
            let mut sub = other.clone();
            let mut img = other;
            for k in 1..=a.len() {
                let e = a[k - 1] - a.get(k).copied().unwrap_or(0);
                if e > 0 {
                    sub = &sub * &sig[k].pow(e);
                    img = &img * &image_of_sigma(k).pow(e);
                }
            }
            rest = &rest - &sub;
            out = &out + &img;
        }
    }
    Ok(&out + &rest)
}

/// Build the Sullivan model; the result need not be minimal.
pub fn build_model(spec: &BiquotientSpec) -> Result<ModelBuild> {
    let bases = base_names(&spec.h);
    let odd = odd_names(&spec.g);
    // work ambient: base generators, then torus variables of non-circle factors
    let mut gens: Vec<Generator> = bases.iter().flatten().map(|(n, d)| Generator::new(n.clone(), *d)).collect();
    let mut torus_names: Vec<Vec<String>> = Vec::new();
    for (k, f) in spec.h.iter().enumerate() {
        let names: Vec<String> = match (f.group.family, f.group.n) {
            (Family::Circle, _) => Vec::new(),
            (Family::Sp, Some(m)) => (1..=m).map(|j| format!("t{}_{j}", k + 1)).collect(),
            (Family::SU, Some(m)) => (1..=m).map(|j| format!("s{}_{j}", k + 1)).collect(),
            _ => unreachable!("catalogue"),
        };
        gens.extend(names.iter().map(|n| Generator::new(n.clone(), 2)));
        torus_names.push(names);
    }
    let work = GeneratorSet::new(gens)?;
    let idx = |n: &str| work.index_of(n).expect("declared");
    let factors: Vec<FactorVars> = spec
        .h
        .iter()
        .enumerate()
        .map(|(k, f)| FactorVars {
            group: f.group,
            torus: if f.group.is_circle() { vec![idx(&bases[k][0].0)] } else { torus_names[k].iter().map(|n| idx(n)).collect() },
            base: bases[k].iter().map(|(n, _)| idx(n)).collect(),
        })
        .collect();

    // weight of coordinate i of G-factor j on one side, as a linear form
    let weights = |j: usize, left: bool| -> Result<Vec<Element>> {
        let len = rep_len(&spec.g[j])?;
        let mut w = vec![Element::zero(&work); len];
        for (k, f) in spec.h.iter().enumerate() {
            let e = if left { &f.left[j] } else { &f.right[j] };
            match e {
                Embedding::Trivial => {}
                Embedding::Weights(ws) => {
                    let u = Element::generator(&work, factors[k].torus[0]);
                    for (i, c) in ws.iter().enumerate() {
                        w[i] = &w[i] + &u.scale(&rat(*c));
                    }
                }
                Embedding::Named(n) => {
                    for (i, slot) in torus_weights_named(&f.group, n, &spec.g[j])?.into_iter().enumerate() {
                        if let Some((v, s)) = slot {
                            let t = Element::generator(&work, factors[k].torus[v]).scale(&rat(s));
                            w[i] = &w[i] + &t;
                        }
                    }
                }
            }
        }
        Ok(w)
    };
    let classes = |j: usize, w: &[Element]| -> Vec<Element> {
        if spec.g[j].family == Family::Sp {
            let sq: Vec<Element> = w.iter().map(|x| x * x).collect();
            elementary_symmetric(&sq, &work)
        } else {
            elementary_symmetric(w, &work)
        }
    };

    let mut per_factor: Vec<Vec<Element>> = Vec::new();
    for j in 0..spec.g.len() {
        let (l, r) = (weights(j, true)?, weights(j, false)?);
        let n = spec.g[j].n.unwrap_or(0) as usize;
        let ks: Vec<usize> = if spec.g[j].family == Family::SU { (2..=n).collect() } else { (1..=n).collect() };
        let imgs = match spec.convention {
            Convention::PullbackDifference => {
                let (cl, cr) = (classes(j, &l), classes(j, &r));
                ks.iter()
                    .map(|&k| Ok(&reduce_symmetric(&cl[k], &factors, &work)? - &reduce_symmetric(&cr[k], &factors, &work)?))
                    .collect::<Result<Vec<_>>>()?
            }
            Convention::PaperSu3 => {
                let diff: Vec<Element> = l.iter().zip(&r).map(|(a, b)| a - b).collect();
                let c = classes(j, &diff);
                ks.iter().map(|&k| reduce_symmetric(&c[k], &factors, &work)).collect::<Result<Vec<_>>>()?
            }
        };
        per_factor.push(imgs);
    }

    // final ambient: base generators then odd generators
    let mut fin: Vec<Generator> = bases.iter().flatten().map(|(n, d)| Generator::new(n.clone(), *d)).collect();
    fin.extend(odd.iter().map(|(_, _, n, d)| Generator::new(n.clone(), *d)));
    let amb = GeneratorSet::new(fin)?;
    let nb = bases.iter().map(|b| b.len()).sum::<usize>();
    let mut images = vec![Element::zero(&amb); nb];
    let mut counters = vec![0usize; spec.g.len()];
    let mut odd_sources = Vec::new();
    for (j, cls, _, _) in &odd {
        let e = &per_factor[*j][counters[*j]];
        counters[*j] += 1;
        for m in e.terms().keys() {
            if torus_names.iter().flatten().any(|t| m.exponents()[idx(t)] > 0) {
                return Err(Error::Internal("torus variables survived reduction".into()));
            }
        }
        // drop torus variables (all exponents zero) by name-embedding of the base part
        let base_only = GeneratorSet::new(work.generators()[..nb].to_vec())?;
        let proj: Vec<Element> = (0..work.len())
            .map(|i| if i < nb { Element::generator(&base_only, i) } else { Element::zero(&base_only) })
            .collect();
        images.push(e.substitute(&proj, &base_only)?.embed(&amb)?);
        odd_sources.push((*j, cls.clone()));
    }
    let model = SullivanAlgebra::new(Derivation::new(&amb, images)?)?;
    Ok(ModelBuild { spec: spec.clone(), model, odd_sources })
}

/// Remove contractible pairs (x, y) with dx = c·y + (terms without y), dy = 0.
pub fn restricted_minimalize(model: &SullivanAlgebra) -> Result<(SullivanAlgebra, Vec<(String, String)>)> {
    let mut cur = model.clone();
    let mut removed = Vec::new();
    loop {
        if cur.is_minimal() {
            return Ok((cur, removed));
        }
        let g = Arc::clone(cur.generators());
        let d = cur.differential();
        let mut found = None;
        'outer: for x in 0..g.len() {
            let lin = d.image(x).word_component(1);
            for (m, c) in lin.terms() {
                let y = m.factors()[0].0;
                if d.image(y).is_zero() && !d.image(x).try_sub(&lin)?.terms().keys().any(|mm| mm.exponents()[y] > 0) {
                    found = Some((x, y, c.clone()));
                    break 'outer;
                }
            }
        }
        let Some((x, y, c)) = found else {
            return Err(Error::Unsupported("model has a linear differential outside the restricted minimalization".into()));
        };
        let keep: Vec<usize> = (0..g.len()).filter(|&i| i != x && i != y).collect();
        let ng = GeneratorSet::new(keep.iter().map(|&i| g.get(i).clone()).collect())?;
        let yterm = Element::generator(&g, y).scale(&c);
        let rest = d.image(x).try_sub(&yterm)?;
        // y ↦ −rest/c, x ↦ 0
        let mut sub: Vec<Element> = Vec::with_capacity(g.len());
        for i in 0..g.len() {
            sub.push(if i == x || i == y {
                Element::zero(&ng)
            } else {
                Element::named(&ng, &g.get(i).name)?
            });
        }
        let rest_new = rest.substitute(&sub, &ng)?.scale(&(-Rational::one() / &c));
        sub[y] = rest_new;
        let images: Vec<Element> = keep.iter().map(|&i| d.image(i).substitute(&sub, &ng)).collect::<Result<_>>()?;
        removed.push((g.get(x).name.clone(), g.get(y).name.clone()));
        cur = SullivanAlgebra::new(Derivation::new(&ng, images)?)?;
    }
}

#[derive(Clone, Debug)]
pub struct Detection {
    pub minimal: SullivanAlgebra,
    pub cancelled: Vec<(String, String)>,
    pub classification: Classification<RealType7>,
}

pub fn detect_type(spec: &BiquotientSpec) -> Result<Detection> {
    let built = build_model(spec)?;
    let (minimal, cancelled) = restricted_minimalize(&built.model)?;
    let fd = minimal.formal_dimension();
    if fd != 7 {
        return Err(Error::Precondition(format!("formal dimension {fd}, expected 7")));
    }
    let classification = classify7(&minimal)?;
    Ok(Detection { minimal, cancelled, classification })
}

/// Coefficient of u² in dx for SU(3)//S¹.
pub fn su3_circle_dx(left: [i64; 3], right: [i64; 3], convention: Convention) -> i64 {
    let s2 = |w: [i64; 3]| w[0] * w[1] + w[0] * w[2] + w[1] * w[2];
    match convention {
        Convention::PullbackDifference => s2(left) - s2(right),
        Convention::PaperSu3 => s2([left[0] - right[0], left[1] - right[1], left[2] - right[2]]),
    }
}

/// Advisory order of H⁴(SU(3)//S¹; ℤ) for a free action.
pub fn torsion_advisory(left: [i64; 3], right: [i64; 3]) -> i64 {
    su3_circle_dx(left, right, Convention::PullbackDifference).abs()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocusReport {
    pub weights: [i64; 4],
    pub dx_coefficient: i64,
    pub discriminant: i64,
    pub on_locus: bool,
    pub locus: String,
    pub annotation: String,
}

/// Rational solutions of dx = 0 in the paper_su3 convention for (a₁,b₁)|(a₂,b₂).
/// Solving the quadratic in a₁ gives a₁ = (2a₂ − b₁ + b₂ ± √(−3(b₁−b₂)²))/2, so a
/// rational root needs b₁ = b₂ and then a₁ = a₂.
pub fn circle_triviality_locus(a1: i64, b1: i64, a2: i64, b2: i64) -> LocusReport {
    let dx = su3_circle_dx([a1, b1, -a1 - b1], [a2, b2, -a2 - b2], Convention::PaperSu3);
    let disc = -3 * (b1 - b2) * (b1 - b2);
    LocusReport {
        weights: [a1, b1, a2, b2],
        dx_coefficient: dx,
        discriminant: disc,
        on_locus: dx == 0,
        locus: "a1 = a2 and b1 = b2".into(),
        annotation: "on the locus the circle action is not free".into(),
    }
}

fn grid4(bound: i64) -> Vec<[i64; 4]> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                for d in -bound..=bound {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Grid scan of the locus claim: dx = 0 exactly when a₁ = a₂, b₁ = b₂.
pub fn locus_scan(bound: i64) -> (usize, Vec<[i64; 4]>) {
    let all = grid4(bound);
    let bad: Vec<[i64; 4]> = all
        .par_iter()
        .filter(|w| {
            let rep = circle_triviality_locus(w[0], w[1], w[2], w[3]);
            rep.on_locus != (w[0] == w[2] && w[1] == w[3])
        })
        .copied()
        .collect();
    (all.len(), bad)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConventionCheck {
    pub convention: String,
    pub cases: usize,
    pub matches: usize,
}

/// Compare |dx coefficient| with the H⁴ torsion order |σ₂(L) − σ₂(R)| over a weight grid.
pub fn eschenburg_convention_check(bound: i64) -> Vec<ConventionCheck> {
    let rows: Vec<([i64; 3], [i64; 3])> =
        grid4(bound).into_iter().map(|[a1, b1, a2, b2]| ([a1, b1, -a1 - b1], [a2, b2, -a2 - b2])).collect();
    [Convention::PullbackDifference, Convention::PaperSu3]
        .into_iter()
        .map(|c| ConventionCheck {
            convention: c.name().into(),
            cases: rows.len(),
            matches: rows.iter().filter(|(l, rr)| su3_circle_dx(*l, *rr, c).abs() == torsion_advisory(*l, *rr)).count(),
        })
        .collect()
}

/// The printed symbolic SU(3)//S¹ coefficient in parameters a1, b1, a2, b2,
/// computed from difference weights.
pub fn su3_symbolic_dx(convention: Convention) -> Result<Element> {
    let g = GeneratorSet::from_pairs(&[("a1", 2), ("b1", 2), ("a2", 2), ("b2", 2)])?;
    let v = |i| Element::generator(&g, i);
    let l = [v(0), v(1), &(-&v(0)) - &v(1)];
    let r = [v(2), v(3), &(-&v(2)) - &v(3)];
    Ok(match convention {
        Convention::PullbackDifference => {
            &elementary_symmetric(&l, &g)[2] - &elementary_symmetric(&r, &g)[2]
        }
        Convention::PaperSu3 => {
            let d: Vec<Element> = l.iter().zip(&r).map(|(a, b)| a - b).collect();
            elementary_symmetric(&d, &g)[2].clone()
        }
    })
}
