//! Shared helpers: random pure models and a dense-matrix cohomology oracle that
//! shares no code with the library's complex.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;
use ratholo::algebra::{rat, Derivation, Element, GeneratorSet, Monomial, Rational};
use ratholo::cohomology::basis_in_degree;
use ratholo::SullivanAlgebra;

/// Generator degrees and, for odd generators, a polynomial in the even ones
/// as (exponents over the even generators, coefficient).
#[derive(Clone, Debug)]
pub struct PureSpec {
    pub even: Vec<u32>,
    pub odd: Vec<(u32, Vec<(Vec<u32>, i64)>)>,
}

fn monomials_of_degree(degs: &[u32], n: u32) -> Vec<Vec<u32>> {
    fn go(degs: &[u32], i: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == degs.len() {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..=rem / degs[i] {
            cur.push(e);
            go(degs, i + 1, rem - e * degs[i], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(degs, 0, n, &mut Vec::new(), &mut out);
    out
}

/// Up to five generators of degree ≤ 7. Odd generator j < #even gets a leading
/// pure power of even generator j when the degrees allow it, which makes the
/// leading part a regular sequence.
pub fn pure_spec() -> impl Strategy<Value = PureSpec> {
    (1usize..=2, prop::collection::vec(prop::sample::select(vec![2u32, 2, 4, 6]), 2))
        .prop_flat_map(|(ne, evs)| {
            let even: Vec<u32> = evs[..ne].to_vec();
            let max_odd = 5 - ne;
            (Just(even), prop::collection::vec(prop::sample::select(vec![3u32, 5, 7]), 1..=max_odd.min(3)))
        })
        .prop_flat_map(|(even, odd_degs)| {
            let polys: Vec<BoxedStrategy<Vec<(Vec<u32>, i64)>>> = odd_degs
                .iter()
                .enumerate()
                .map(|(j, &d)| {
                    let monos = monomials_of_degree(&even, d + 1);
                    let lead = even.get(j).and_then(|&e| {
                        if (d + 1) % e == 0 {
                            let mut v = vec![0; even.len()];
                            v[j] = (d + 1) / e;
                            Some(v)
                        } else {
                            None
                        }
                    });
                    let n = monos.len();
                    prop::collection::vec(-2i64..=2, n)
                        .prop_map(move |cs| {
                            let mut terms: Vec<(Vec<u32>, i64)> =
                                monos.iter().cloned().zip(cs).filter(|(_, c)| *c != 0).collect();
                            if let Some(l) = &lead {
                                if let Some(t) = terms.iter_mut().find(|(m, _)| m == l) {
                                    t.1 = 1;
                                } else {
                                    terms.push((l.clone(), 1));
                                }
                            }
                            terms
                        })
                        .boxed()
                })
                .collect();
            (Just(even), Just(odd_degs), polys)
        })
        .prop_map(|(even, odd_degs, polys)| PureSpec { even, odd: odd_degs.into_iter().zip(polys).collect() })
}

pub fn build(spec: &PureSpec) -> SullivanAlgebra {
    let mut pairs: Vec<(String, u32)> = spec.even.iter().enumerate().map(|(i, &d)| (format!("v{i}"), d)).collect();
    pairs.extend(spec.odd.iter().enumerate().map(|(j, (d, _))| (format!("x{j}"), *d)));
    let refs: Vec<(&str, u32)> = pairs.iter().map(|(n, d)| (n.as_str(), *d)).collect();
    let g = GeneratorSet::from_pairs(&refs).unwrap();
    let ne = spec.even.len();
    let mut images = vec![Element::zero(&g); ne];
    for (_, poly) in &spec.odd {
        let terms = poly.iter().map(|(e, c)| {
            let mut full = e.clone();
            full.resize(g.len(), 0);
            (Monomial::from_exponents(&g, full).unwrap(), rat(*c))
        });
        images.push(Element::from_terms(&g, terms));
    }
    SullivanAlgebra::new(Derivation::new(&g, images).unwrap()).unwrap()
}

/// Deterministic sample of `n` values from a strategy.
pub fn sample<S: Strategy>(s: S, n: usize) -> Vec<S::Value> {
    let mut runner = TestRunner::deterministic();
    (0..n).map(|_| s.new_tree(&mut runner).unwrap().current()).collect()
}

// ---- dense oracle ----

type Word = Vec<usize>;

/// Sort a word of generator letters. `None` if an odd letter repeats, else the
/// Koszul sign and the exponent vector.
fn normalize(word: &Word, degs: &[u32]) -> Option<(i64, Vec<u32>)> {
    let odd = |i: usize| degs[i] % 2 == 1;
    let mut inversions = 0usize;
    for p in 0..word.len() {
        for q in p + 1..word.len() {
            if word[p] > word[q] && odd(word[p]) && odd(word[q]) {
                inversions += 1;
            }
        }
    }
    let mut exps = vec![0u32; degs.len()];
    for &l in word {
        exps[l] += 1;
        if odd(l) && exps[l] > 1 {
            return None;
        }
    }
    Some((if inversions % 2 == 0 { 1 } else { -1 }, exps))
}

fn word_of(exps: &[u32]) -> Word {
    exps.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat(i).take(e as usize)).collect()
}

pub struct DenseOracle {
    degs: Vec<u32>,
    d: Vec<Vec<(Word, Rational)>>,
}

impl DenseOracle {
    pub fn new(m: &SullivanAlgebra) -> Self {
        let g = m.generators();
        let degs: Vec<u32> = (0..g.len()).map(|i| g.degree(i)).collect();
        let d = m
            .differential()
            .images()
            .iter()
            .map(|e| e.terms().iter().map(|(mono, c)| (word_of(mono.exponents()), c.clone())).collect())
            .collect();
        DenseOracle { degs, d }
    }

    fn basis(&self, n: u32) -> Vec<Vec<u32>> {
        fn go(degs: &[u32], i: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i == degs.len() {
                if rem == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let cap = if degs[i] % 2 == 1 { 1 } else { u32::MAX };
            let mut e = 0;
            while e <= cap && e * degs[i] <= rem {
                cur.push(e);
                go(degs, i + 1, rem - e * degs[i], cur, out);
                cur.pop();
                e += 1;
            }
        }
        let mut out = Vec::new();
        go(&self.degs, 0, n, &mut Vec::new(), &mut out);
        out
    }

    /// d on a basis monomial: sum over letters with the sign of the letters passed.
    fn d_mono(&self, exps: &[u32]) -> BTreeMap<Vec<u32>, Rational> {
        let w = word_of(exps);
        let mut out: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        let mut passed = 0u32;
        for p in 0..w.len() {
            let sign = if passed % 2 == 0 { 1 } else { -1 };
            for (img, c) in &self.d[w[p]] {
                let mut nw = w[..p].to_vec();
                nw.extend(img);
                nw.extend(&w[p + 1..]);
                if let Some((s, e)) = normalize(&nw, &self.degs) {
                    *out.entry(e).or_insert_with(Rational::zero) += c * rat(sign * s);
                }
            }
            passed += self.degs[w[p]];
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn rank_d(&self, n: u32) -> usize {
        let src = self.basis(n);
        let tgt = self.basis(n + 1);
        if src.is_empty() || tgt.is_empty() {
            return 0;
        }
        let index: BTreeMap<&Vec<u32>, usize> = tgt.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows: Vec<Vec<Rational>> = src
            .iter()
            .map(|m| {
                let mut r = vec![Rational::zero(); tgt.len()];
                for (e, c) in self.d_mono(m) {
                    r[index[&e]] = c;
                }
                r
            })
            .collect();
        gauss_rank(&mut rows)
    }

    pub fn betti(&self, max: u32) -> Vec<usize> {
        (0..=max)
            .map(|n| {
                let dim = self.basis(n).len();
                let below = if n == 0 { 0 } else { self.rank_d(n - 1) };
                dim - self.rank_d(n) - below
            })
            .collect()
    }
}

fn gauss_rank(rows: &mut [Vec<Rational>]) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] * &inv;
            for j in c..cols {
                let v = &f * &rows[r][j];
                rows[i][j] -= v;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

// ---- strategies shared by the property suites ----

pub fn ambient() -> Arc<GeneratorSet> {
    GeneratorSet::from_pairs(&[("u", 2), ("v", 2), ("w", 4), ("x", 3), ("y", 3), ("z", 5)]).unwrap()
}

/// A random homogeneous element of degree `n` with small integer coefficients.
pub fn element(g: Arc<GeneratorSet>, n: u32) -> impl Strategy<Value = Element> {
    let basis = basis_in_degree(&g, n).unwrap();
    let len = basis.len();
    prop::collection::vec(-3i64..=3, len)
        .prop_map(move |cs| Element::from_terms(&g, basis.iter().cloned().zip(cs.into_iter().map(rat))))
}

pub fn graded_pair() -> impl Strategy<Value = (u32, Element, u32, Element)> {
    (2u32..=8, 2u32..=8).prop_flat_map(|(p, q)| (Just(p), element(ambient(), p), Just(q), element(ambient(), q)))
}

/// A model on `ambient()` with d u = d v = d w = 0 and random d x, d y, d z.
pub fn random_model() -> impl Strategy<Value = SullivanAlgebra> {
    (element(ambient(), 4), element(ambient(), 4), element(ambient(), 6)).prop_map(|(dx, dy, dz)| {
        let g = ambient();
        let even_only = |e: Element| {
            let terms = e.terms().iter().filter(|(m, _)| m.exponents()[3..].iter().all(|&k| k == 0));
            Element::from_terms(&g, terms.map(|(m, c)| (m.clone(), c.clone())))
        };
        let dx = even_only(dx.embed(&g).unwrap());
        let dy = even_only(dy.embed(&g).unwrap());
        let dz = even_only(dz.embed(&g).unwrap());
        let images = vec![Element::zero(&g), Element::zero(&g), Element::zero(&g), dx, dy, dz];
        SullivanAlgebra::new(Derivation::new(&g, images).unwrap()).unwrap()
    })
}

pub fn sign(p: u32, q: u32) -> Rational {
    if (p * q) % 2 == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

/// Unimodular 2×2 and 3×3 integer matrices as products of elementary ones.
pub fn unimodular(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec((0..n, 0..n, -2i64..=2, any::<bool>()), 1..6).prop_map(move |ops| {
        let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for (i, j, c, neg) in ops {
            if i != j {
                for k in 0..n {
                    m[i][k] += c * m[j][k];
                }
            } else if neg {
                for k in 0..n {
                    m[i][k] = -m[i][k];
                }
            }
        }
        m
    })
}

/// Change of basis: degree-2 generators by `a`, degree-3 generators by `b`.
pub fn rebase(model: &SullivanAlgebra, a: &[Vec<i64>], b: &[Vec<i64>]) -> SullivanAlgebra {
    let g = model.generators();
    let two: Vec<usize> = (0..g.len()).filter(|&i| g.degree(i) == 2).collect();
    let three: Vec<usize> = (0..g.len()).filter(|&i| g.degree(i) == 3).collect();
    let mut phi: Vec<Element> = (0..g.len()).map(|i| Element::generator(g, i)).collect();
    for (r, &i) in two.iter().enumerate() {
        phi[i] = two.iter().enumerate().fold(Element::zero(g), |acc, (c, &j)| {
            acc.try_add(&Element::generator(g, j).scale(&rat(a[r][c]))).unwrap()
        });
    }
    let dphi: Vec<Element> = (0..g.len()).map(|i| model.differential().image(i).substitute(&phi, g).unwrap()).collect();
    let mut images = dphi.clone();
    for (r, &i) in three.iter().enumerate() {
        images[i] = three
            .iter()
            .enumerate()
            .fold(Element::zero(g), |acc, (c, &j)| acc.try_add(&dphi[j].scale(&rat(b[r][c]))).unwrap());
    }
    SullivanAlgebra::new(Derivation::new(g, images).unwrap()).unwrap()
}

pub fn det_i(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => (0..3)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..].iter().map(|r| (0..3).filter(|&c| c != j).map(|c| r[c]).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det_i(&minor)
            })
            .sum(),
        _ => unreachable!(),
    }
}

/// Triangular pure models with as many odd as even generators plus optional
/// odd spheres: always elliptic.
pub fn elliptic_spec() -> impl Strategy<Value = PureSpec> {
    (
        prop::collection::vec(prop::sample::select(vec![2u32, 4]), 1..=2),
        prop::collection::vec(1u32..=3, 2),
        prop::collection::vec(-2i64..=2, 8),
        prop::option::of(prop::sample::select(vec![3u32, 5])),
    )
        .prop_map(|(even, pw, cs, sphere)| {
            let ne = even.len();
            let mut odd = Vec::new();
            for j in 0..ne {
                let p = pw[j] + 1;
                let mut lead = vec![0u32; ne];
                lead[j] = p;
                let mut terms = vec![(lead, 1i64)];
                // lower-order term in v_0 when the degrees fit
                if j == 1 && even[1] * p % even[0] == 0 {
                    terms.push((vec![even[1] * p / even[0], 0], cs[j]));
                }
                odd.push((even[j] * p - 1, terms));
            }
            if let Some(d) = sphere {
                odd.push((d, vec![]));
            }
            PureSpec { even, odd }
        })
}
