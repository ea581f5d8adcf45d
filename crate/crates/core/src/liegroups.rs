//! Compact Lie groups and the enumeration of 7-dimensional biquotient candidates.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lowdim::RealType7;
use crate::rules::RuleHit;
use crate::sullivan::Stage;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    SU,
    SO,
    Sp,
    G2,
    F4,
    E6,
    E7,
    E8,
    Circle,
}

/// A compact connected Lie group up to finite covering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LieGroup {
    pub family: Family,
    pub n: Option<u32>,
}

#[derive(Deserialize)]
struct ExceptionalData {
    dim: u32,
    rank: u32,
    degrees: Vec<u32>,
}

#[derive(Deserialize)]
struct BucketData {
    #[serde(rename = "type")]
    target: String,
    max_factors: usize,
    top_degree: u32,
    case1: Vec<String>,
    case2: Vec<String>,
}

#[derive(Deserialize)]
struct RefineData {
    rule: String,
    g: Vec<String>,
    h: Vec<String>,
    keep: Vec<String>,
    label: Option<String>,
}

#[derive(Deserialize)]
struct DataFile {
    version: u32,
    classical_cap: u32,
    exceptional: BTreeMap<String, ExceptionalData>,
    bucket: Vec<BucketData>,
    refine: Vec<RefineData>,
}

pub struct Bucket {
    pub target: RealType7,
    pub max_factors: usize,
    pub top_degree: u32,
    pub case1: Vec<LieGroup>,
    pub case2: Vec<LieGroup>,
}

struct Refinement {
    rule: String,
    g: Vec<LieGroup>,
    h: Vec<LieGroup>,
    keep: Vec<RealType7>,
    label: Option<String>,
}

pub struct GroupData {
    pub version: u32,
    pub classical_cap: u32,
    exceptional: BTreeMap<String, ExceptionalData>,
    pub buckets: Vec<Bucket>,
    refinements: Vec<Refinement>,
}

pub fn data() -> &'static GroupData {
    static DATA: OnceLock<GroupData> = OnceLock::new();
    DATA.get_or_init(|| {
        let f: DataFile = toml::from_str(include_str!("../data/liegroups.toml")).expect("liegroups.toml is well formed");
        let groups = |v: &[String]| -> Vec<LieGroup> {
            sorted(v.iter().map(|s| LieGroup::parse(s).expect("valid group in data file")).collect())
        };
        let ty = |s: &str| RealType7::parse(s).expect("valid type in data file");
        GroupData {
            version: f.version,
            classical_cap: f.classical_cap,
            exceptional: f.exceptional,
            buckets: f
                .bucket
                .iter()
                .map(|b| Bucket {
                    target: ty(&b.target),
                    max_factors: b.max_factors,
                    top_degree: b.top_degree,
                    case1: b.case1.iter().map(|s| LieGroup::parse(s).expect("valid")).collect(),
                    case2: b.case2.iter().map(|s| LieGroup::parse(s).expect("valid")).collect(),
                })
                .collect(),
            refinements: f
                .refine
                .iter()
                .map(|r| Refinement {
                    rule: r.rule.clone(),
                    g: groups(&r.g),
                    h: groups(&r.h),
                    keep: r.keep.iter().map(|s| ty(s)).collect(),
                    label: r.label.clone(),
                })
                .collect(),
        }
    })
}

impl LieGroup {
    pub const CIRCLE: LieGroup = LieGroup { family: Family::Circle, n: None };

    pub fn su(n: u32) -> Self {
        LieGroup { family: Family::SU, n: Some(n) }
    }
    pub fn so(n: u32) -> Self {
        LieGroup { family: Family::SO, n: Some(n) }
    }
    pub fn sp(n: u32) -> Self {
        LieGroup { family: Family::Sp, n: Some(n) }
    }
    pub fn exceptional(family: Family) -> Self {
        LieGroup { family, n: None }
    }

    /// Checked constructor; SO(n) needs n ≥ 2, SU(n) n ≥ 2, Sp(n) n ≥ 1.
    pub fn new(family: Family, n: Option<u32>) -> Result<Self> {
        let need = match family {
            Family::SU => Some(2),
            Family::SO => Some(2),
            Family::Sp => Some(1),
            _ => None,
        };
        match (need, n) {
            (Some(m), Some(k)) if k >= m => Ok(LieGroup { family, n }),
            (Some(m), Some(k)) => Err(Error::validation("n", format!("{family:?}({k}) needs n ≥ {m}"))),
            (Some(_), None) => Err(Error::validation("n", format!("{family:?} needs a parameter"))),
            (None, None) => Ok(LieGroup { family, n }),
            (None, Some(_)) => Err(Error::validation("n", format!("{family:?} takes no parameter"))),
        }
    }

    /// "SU(4)", "Sp(2)", "SO(8)", "Spin(7)", "G2", "S1", "T1".
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, n) = match s.find('(') {
            Some(i) if s.ends_with(')') => {
                let n: u32 = s[i + 1..s.len() - 1]
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse("group", format!("bad parameter in `{s}`")))?;
                (&s[..i], Some(n))
            }
            _ => (s, None),
        };
        let family = match head {
            "SU" => Family::SU,
            "SO" | "Spin" => Family::SO,
            "Sp" => Family::Sp,
            "G2" => Family::G2,
            "F4" => Family::F4,
            "E6" => Family::E6,
            "E7" => Family::E7,
            "E8" => Family::E8,
            "S1" | "T1" | "U1" | "Circle" => Family::Circle,
            _ => return Err(Error::parse("group", format!("unknown group `{s}`"))),
        };
        Self::new(family, n)
    }

    /// Canonical representatives up to covering: SU(2) = Sp(1) = SO(3), SO(5) = Sp(2),
    /// SO(6) = SU(4), SO(2) = S1, SO(4) = Sp(1)×Sp(1).
    pub fn normalize(&self) -> Vec<LieGroup> {
        match (self.family, self.n) {
            (Family::SU, Some(2)) | (Family::SO, Some(3)) => vec![LieGroup::sp(1)],
            (Family::SO, Some(2)) => vec![LieGroup::CIRCLE],
            (Family::SO, Some(4)) => vec![LieGroup::sp(1), LieGroup::sp(1)],
            (Family::SO, Some(5)) => vec![LieGroup::sp(2)],
            (Family::SO, Some(6)) => vec![LieGroup::su(4)],
            _ => vec![*self],
        }
    }

    pub fn is_circle(&self) -> bool {
        self.family == Family::Circle
    }

    fn param(&self) -> u32 {
        self.n.unwrap_or(0)
    }

    fn exc(&self) -> Option<&'static ExceptionalData> {
        let key = match self.family {
            Family::G2 => "G2",
            Family::F4 => "F4",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
            _ => return None,
        };
        data().exceptional.get(key)
    }

    pub fn dim(&self) -> u32 {
        let n = self.param();
        match self.family {
            Family::SU => n * n - 1,
            Family::SO => n * (n - 1) / 2,
            Family::Sp => n * (2 * n + 1),
            Family::Circle => 1,
            _ => self.exc().expect("exceptional").dim,
        }
    }

    pub fn rank(&self) -> u32 {
        let n = self.param();
        match self.family {
            Family::SU => n - 1,
            Family::SO => n / 2,
            Family::Sp => n,
            Family::Circle => 1,
            _ => self.exc().expect("exceptional").rank,
        }
    }

    /// Degrees of the non-vanishing rational homotopy groups, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let n = self.param();
        let mut v: Vec<u32> = match self.family {
            Family::SU => (2..=n).map(|k| 2 * k - 1).collect(),
            Family::Sp => (1..=n).map(|k| 4 * k - 1).collect(),
            Family::SO if n == 2 => vec![1],
            Family::SO if n % 2 == 1 => (1..=n / 2).map(|k| 4 * k - 1).collect(),
            Family::SO => (1..n / 2).map(|k| 4 * k - 1).chain([n - 1]).collect(),
            Family::Circle => vec![1],
            _ => self.exc().expect("exceptional").degrees.clone(),
        };
        v.sort_unstable();
        v
    }

    /// d(G), the top degree.
    pub fn top_degree(&self) -> u32 {
        let n = self.param();
        match self.family {
            Family::SU => 2 * n - 1,
            Family::SO if n == 2 => 1,
            Family::SO if n % 2 == 0 => (2 * n - 5).max(n - 1),
            Family::SO => 2 * n - 3,
            Family::Sp => 4 * n - 1,
            Family::Circle => 1,
            _ => *self.exc().expect("exceptional").degrees.last().expect("non-empty"),
        }
    }

    pub fn label(&self) -> String {
        match (self.family, self.n) {
            (Family::SU, Some(n)) => format!("SU({n})"),
            (Family::SO, Some(n)) => format!("SO({n})"),
            (Family::Sp, Some(n)) => format!("Sp({n})"),
            (Family::Circle, _) => "S1".into(),
            (f, _) => format!("{f:?}"),
        }
    }
}

impl fmt::Display for LieGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl PartialOrd for LieGroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// ASCII order of labels, with numeric parameters compared as numbers.
impl Ord for LieGroup {
    fn cmp(&self, other: &Self) -> Ordering {
        let head = |g: &LieGroup| g.label().split('(').next().unwrap_or("").to_string();
        head(self).cmp(&head(other)).then(self.n.cmp(&other.n))
    }
}

fn sorted(mut v: Vec<LieGroup>) -> Vec<LieGroup> {
    v.sort();
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EqualityTag {
    /// S^{2n−1}, from Spin(2n)/Spin(2n−1) (n ≥ 4) or Spin(7)/G2.
    Sphere(u32),
    /// SU(2n)/Sp(n), n ≥ 2.
    SuModSp(u32),
    Spin8ModG2,
    E6ModF4,
}

impl fmt::Display for EqualityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EqualityTag::Sphere(d) => write!(f, "S{d}"),
            EqualityTag::SuModSp(n) => write!(f, "SU({})/Sp({n})", 2 * n),
            EqualityTag::Spin8ModG2 => f.write_str("Spin(8)/G2"),
            EqualityTag::E6ModF4 => f.write_str("E6/F4"),
        }
    }
}

/// Non-bijective H → G with d(H) = d(G), for simple simply-connected H, G.
pub fn equality_cases(h: &LieGroup, g: &LieGroup) -> Option<EqualityTag> {
    if h == g || h.is_circle() || g.is_circle() || h.top_degree() != g.top_degree() {
        return None;
    }
    match (h.family, h.n, g.family, g.n) {
        (Family::SO, Some(a), Family::SO, Some(b)) if b % 2 == 0 && b >= 8 && a + 1 == b => Some(EqualityTag::Sphere(a)),
        (Family::G2, _, Family::SO, Some(7)) => Some(EqualityTag::Sphere(7)),
        (Family::Sp, Some(a), Family::SU, Some(b)) if a >= 2 && b == 2 * a => Some(EqualityTag::SuModSp(a)),
        (Family::G2, _, Family::SO, Some(8)) => Some(EqualityTag::Spin8ModG2),
        (Family::F4, _, Family::E6, _) => Some(EqualityTag::E6ModF4),
        _ => None,
    }
}

/// Simple groups available as factors of H (classical parameter ≤ cap, no duplicates
/// under the low-rank isomorphisms).
pub fn simple_catalogue() -> Vec<LieGroup> {
    let cap = data().classical_cap;
    let mut v: Vec<LieGroup> = (3..=cap).map(LieGroup::su).collect();
    v.extend((1..=cap).map(LieGroup::sp));
    v.extend((7..=cap).map(LieGroup::so));
    v.extend([Family::G2, Family::F4, Family::E6, Family::E7, Family::E8].map(LieGroup::exceptional));
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidatePair {
    pub target: RealType7,
    pub case: u8,
    pub g: Vec<LieGroup>,
    pub h: Vec<LieGroup>,
    pub stage: Stage,
    pub label: String,
    pub trail: Vec<RuleHit>,
}

fn product_label(v: &[LieGroup]) -> String {
    let s: Vec<String> = v.iter().map(|g| g.label()).collect();
    if s.len() == 1 {
        s[0].clone()
    } else {
        format!("({})", s.join("x"))
    }
}

pub fn default_label(g: &[LieGroup], h: &[LieGroup]) -> String {
    format!("{}//{}", product_label(g), product_label(h))
}

impl CandidatePair {
    pub fn dim_gap(&self) -> i64 {
        self.g.iter().map(|x| x.dim() as i64).sum::<i64>() - self.h.iter().map(|x| x.dim() as i64).sum::<i64>()
    }

    pub fn rank_gap(&self) -> i64 {
        self.g.iter().map(|x| x.rank() as i64).sum::<i64>() - self.h.iter().map(|x| x.rank() as i64).sum::<i64>()
    }

    /// (type, G, H) for set comparisons.
    pub fn key(&self) -> (RealType7, Vec<LieGroup>, Vec<LieGroup>) {
        (self.target, self.g.clone(), self.h.clone())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "type": self.target.name(),
            "case": self.case,
            "g": self.g.iter().map(|x| x.label()).collect::<Vec<_>>(),
            "h": self.h.iter().map(|x| x.label()).collect::<Vec<_>>(),
            "label": self.label,
            "stage": match self.stage { Stage::Arithmetic => "arithmetic", Stage::Refined => "refined" },
            "trail": self.trail,
        })
    }

    fn sort_key(&self) -> (usize, Vec<LieGroup>, Vec<LieGroup>, u8) {
        let t = RealType7::ALL.iter().position(|x| *x == self.target).expect("known type");
        (t, self.g.clone(), self.h.clone(), self.case)
    }
}

#[derive(Clone, Debug)]
pub struct PairEnumeration {
    pub stage: Stage,
    pub pairs: Vec<CandidatePair>,
    /// Refined stage only: arithmetic rows removed, with the rule that removed them.
    pub eliminated: Vec<(CandidatePair, RuleHit)>,
}

/// Multisets of simple factors plus circles with the given total dimension and rank.
fn h_lists(dim: u32, rank: u32, simples: &[LieGroup]) -> Vec<Vec<LieGroup>> {
    fn rec(start: usize, d: u32, r: u32, acc: &mut Vec<LieGroup>, simples: &[LieGroup], out: &mut Vec<Vec<LieGroup>>) {
        if d == r {
            let mut v = acc.clone();
            v.extend(std::iter::repeat(LieGroup::CIRCLE).take(r as usize));
            out.push(sorted(v));
        }
        for i in start..simples.len() {
            let g = simples[i];
            if g.dim() <= d && g.rank() <= r {
                acc.push(g);
                rec(i, d - g.dim(), r - g.rank(), acc, simples, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(0, dim, rank, &mut Vec::new(), simples, &mut out);
    out
}

fn multisets(items: &[LieGroup], k: usize) -> Vec<Vec<LieGroup>> {
    fn rec(start: usize, k: usize, items: &[LieGroup], acc: &mut Vec<LieGroup>, out: &mut Vec<Vec<LieGroup>>) {
        if k == 0 {
            out.push(sorted(acc.clone()));
            return;
        }
        for i in start..items.len() {
            acc.push(items[i]);
            rec(i, k - 1, items, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, items, &mut Vec::new(), &mut out);
    out
}

fn strictly_below(h: &LieGroup, g: &LieGroup) -> bool {
    h.top_degree() < g.top_degree() && h.rank() <= g.rank() && h.dim() < g.dim()
}

fn bucket_candidates(b: &Bucket, case: u8, simples: &[LieGroup]) -> Vec<CandidatePair> {
    let factors = if case == 1 { &b.case1 } else { &b.case2 };
    let mut out = Vec::new();
    for k in 1..=b.max_factors {
        for g in multisets(factors, k) {
            let dim_g: u32 = g.iter().map(|x| x.dim()).sum();
            let rk_g: u32 = g.iter().map(|x| x.rank()).sum();
            if dim_g < 7 || rk_g < 1 {
                continue;
            }
            for h in h_lists(dim_g - 7, rk_g - 1, simples) {
                let simple_h: Vec<&LieGroup> = h.iter().filter(|x| !x.is_circle()).collect();
                let mut trail = vec![
                    RuleHit::new("biq.dimension", format!("dim G - dim H = {dim_g} - {} = 7", dim_g - 7)),
                    RuleHit::new("biq.rank", format!("rk G - rk H = {rk_g} - {} = 1", rk_g - 1)),
                    RuleHit::new("biq.factor-count", format!("{k} factor(s) of G, at most {}", b.max_factors)),
                ];
                let ok = if case == 1 {
                    simple_h.iter().all(|x| g.iter().any(|y| strictly_below(x, y)))
                } else {
                    let eqs: Vec<(&LieGroup, &LieGroup, EqualityTag)> = simple_h
                        .iter()
                        .flat_map(|x| g.iter().filter_map(move |y| equality_cases(x, y).map(|t| (*x, y, t))))
                        .collect();
                    let covered =
                        simple_h.iter().all(|x| g.iter().any(|y| strictly_below(x, y) || equality_cases(x, y).is_some()));
                    let survive = eqs.iter().all(|(_, y, _)| {
                        let d = y.degrees();
                        d.len() >= 2 && d[d.len() - 2] <= b.top_degree
                    });
                    if let Some((x, y, t)) = eqs.first() {
                        trail.push(RuleHit::new("biq.degree-survival", format!("{x} -> {y} is the equality case {t}")));
                    }
                    !eqs.is_empty() && covered && survive
                };
                if !ok {
                    continue;
                }
                trail.push(RuleHit::new(
                    "biq.top-degree",
                    if case == 1 { "d(H_i) < d(G_j) for every simple factor".to_string() } else { "equality case present".into() },
                ));
                let label = default_label(&g, &h);
                out.push(CandidatePair { target: b.target, case, g: g.clone(), h, stage: Stage::Arithmetic, label, trail });
            }
        }
    }
    out
}

/// All arithmetic candidates, deduplicated on (type, G, H), canonically sorted.
fn arithmetic() -> Vec<CandidatePair> {
    let simples = simple_catalogue();
    let jobs: Vec<(&Bucket, u8)> = data().buckets.iter().flat_map(|b| [(b, 1u8), (b, 2u8)]).collect();
    let mut all: Vec<CandidatePair> = jobs.par_iter().flat_map(|(b, c)| bucket_candidates(b, *c, &simples)).collect();
    all.sort_by_key(|p| p.sort_key());
    all.dedup_by(|a, b| a.key() == b.key());
    all
}

fn degree_multiset(v: &[LieGroup]) -> BTreeMap<u32, i64> {
    let mut m = BTreeMap::new();
    for g in v {
        for d in g.degrees() {
            *m.entry(d).or_insert(0) += 1;
        }
    }
    m
}

/// π_odd(G//H) = π(G) − (killed classes) balanced against the target signature.
fn homotopy_balances(p: &CandidatePair) -> bool {
    let sig = p.target.signature();
    let gd = degree_multiset(&p.g);
    let hd = degree_multiset(&p.h);
    let mut odd = BTreeMap::new();
    for d in &sig.odd {
        *odd.entry(*d).or_insert(0i64) += 1;
    }
    let mut even = BTreeMap::new();
    for d in &sig.even {
        *even.entry(*d - 1).or_insert(0i64) += 1;
    }
    let sub = |a: &BTreeMap<u32, i64>, b: &BTreeMap<u32, i64>| -> Option<BTreeMap<u32, i64>> {
        let mut r = a.clone();
        for (k, v) in b {
            let e = r.entry(*k).or_insert(0);
            *e -= v;
            if *e < 0 {
                return None;
            }
        }
        r.retain(|_, v| *v != 0);
        Some(r)
    };
    match (sub(&gd, &odd), sub(&hd, &even)) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    }
}

enum Verdict {
    Keep(Option<RuleHit>, Option<String>),
    Remove(RuleHit),
}

fn refine(p: &CandidatePair) -> Verdict {
    for r in &data().refinements {
        if r.g == p.g && r.h == p.h {
            let desc = format!("{} in bucket {}", default_label(&p.g, &p.h), p.target);
            return if r.keep.contains(&p.target) {
                Verdict::Keep(Some(RuleHit::new(&r.rule, format!("kept: {desc}"))), r.label.clone())
            } else {
                Verdict::Remove(RuleHit::new(&r.rule, format!("removed: {desc}")))
            };
        }
    }
    let has = |v: &[LieGroup], x: LieGroup| v.contains(&x);
    if has(&p.g, LieGroup::so(8)) && has(&p.h, LieGroup::exceptional(Family::G2)) {
        return Verdict::Remove(RuleHit::new("biq.spin8-g2", "G2 in H against a Spin(8) factor of G"));
    }
    if let Some(x) = p.h.iter().find(|x| !x.is_circle() && p.g.contains(x)) {
        return Verdict::Remove(RuleHit::new("biq.transitive-cancellation", format!("{x} cancels against the factor {x} of G")));
    }
    if !homotopy_balances(p) {
        return Verdict::Remove(RuleHit::new(
            "biq.homotopy-bookkeeping",
            format!("degrees of {} do not balance to the signature {}", default_label(&p.g, &p.h), p.target.signature()),
        ));
    }
    Verdict::Keep(Some(RuleHit::new("biq.homotopy-bookkeeping", "degrees balance")), None)
}

pub fn enumerate_pairs(stage: Stage) -> PairEnumeration {
    let rows = arithmetic();
    if stage == Stage::Arithmetic {
        return PairEnumeration { stage, pairs: rows, eliminated: Vec::new() };
    }
    let mut pairs = Vec::new();
    let mut eliminated = Vec::new();
    for p in rows {
        match refine(&p) {
            Verdict::Keep(hit, label) => {
                let mut q = p.clone();
                q.stage = Stage::Refined;
                q.trail.extend(hit);
                if let Some(l) = label {
                    q.label = l;
                }
                pairs.push(q);
            }
            Verdict::Remove(hit) => eliminated.push((p, hit)),
        }
    }
    PairEnumeration { stage, pairs, eliminated }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_one_values() {
        assert_eq!(LieGroup::su(4).top_degree(), 7);
        assert_eq!(LieGroup::so(8).top_degree(), 11);
        assert_eq!(LieGroup::sp(2).top_degree(), 7);
        assert_eq!(LieGroup::so(8).degrees(), vec![3, 7, 7, 11]);
        assert_eq!(LieGroup::exceptional(Family::E7).top_degree(), 35);
        assert!(LieGroup::parse("SO(1)").is_err());
    }

    #[test]
    fn equality_examples() {
        let g2 = LieGroup::exceptional(Family::G2);
        assert_eq!(equality_cases(&g2, &LieGroup::so(7)), Some(EqualityTag::Sphere(7)));
        assert_eq!(equality_cases(&LieGroup::sp(2), &LieGroup::su(4)), Some(EqualityTag::SuModSp(2)));
        assert_eq!(equality_cases(&LieGroup::sp(1), &LieGroup::sp(2)), None);
    }

    #[test]
    fn normalization() {
        assert_eq!(LieGroup::parse("SU(2)").unwrap().normalize(), vec![LieGroup::sp(1)]);
        assert_eq!(LieGroup::parse("SO(6)").unwrap().normalize(), vec![LieGroup::su(4)]);
        assert_eq!(LieGroup::parse("Spin(5)").unwrap().normalize(), vec![LieGroup::sp(2)]);
    }

    #[test]
    fn refined_row_count() {
        let r = enumerate_pairs(Stage::Refined);
        assert_eq!(r.pairs.len(), 12);
        let a = enumerate_pairs(Stage::Arithmetic);
        assert_eq!(a.pairs.len(), r.pairs.len() + r.eliminated.len());
    }
}
