//! Bounded-degree cohomology of (ΛV, d).

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{Derivation, Element, GeneratorSet, Monomial, Rational};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

/// All canonical monomials of total degree `n`.
pub fn basis_in_degree(gens: &GeneratorSet, n: u32) -> Result<Vec<Monomial>> {
    if let Some(g) = gens.generators().iter().find(|g| g.degree < 2) {
        return Err(Error::Unsupported(format!(
            "generator `{}` has degree {}; only simply-connected models are handled",
            g.name, g.degree
        )));
    }
    let mut out = Vec::new();
    let mut exps = vec![0u32; gens.len()];
    fill(gens, 0, n, &mut exps, &mut out);
    out.sort();
    Ok(out)
}

fn fill(gens: &GeneratorSet, i: usize, rem: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if i == gens.len() {
        if rem == 0 {
            out.push(Monomial::from_exponents(gens, exps.clone()).expect("valid exponents"));
        }
        return;
    }
    let d = gens.degree(i);
    let max = if gens.is_odd(i) { 1.min(rem / d) } else { rem / d };
    for e in 0..=max {
        exps[i] = e;
        fill(gens, i + 1, rem - e * d, exps, out);
    }
    exps[i] = 0;
}

/// Per-degree bases and differential matrices, built lazily.
pub struct CochainComplex {
    d: Derivation,
    bases: HashMap<u32, Vec<Monomial>>,
}

impl CochainComplex {
    pub fn new(d: &Derivation) -> Result<Self> {
        basis_in_degree(d.ambient(), 0)?;
        Ok(CochainComplex { d: d.clone(), bases: HashMap::new() })
    }

    pub fn ambient(&self) -> &Arc<GeneratorSet> {
        self.d.ambient()
    }

    pub fn basis(&mut self, n: u32) -> &[Monomial] {
        let amb = Arc::clone(self.d.ambient());
        self.bases
            .entry(n)
            .or_insert_with(|| basis_in_degree(&amb, n).expect("checked at construction"))
    }

    pub fn coordinates(&mut self, e: &Element, n: u32) -> Vec<Rational> {
        self.basis(n).iter().map(|m| e.coefficient(m)).collect()
    }

    pub fn element(&mut self, coords: &[Rational], n: u32) -> Element {
        let amb = Arc::clone(self.d.ambient());
        let basis = self.basis(n).to_vec();
        Element::from_terms(&amb, basis.into_iter().zip(coords.iter().cloned()))
    }

    /// Matrix of d: Λⁿ → Λⁿ⁺¹ (rows index degree n+1).
    pub fn differential_matrix(&mut self, n: u32) -> Matrix {
        let src = self.basis(n).to_vec();
        let tgt = self.basis(n + 1).to_vec();
        let index: HashMap<&Monomial, usize> = tgt.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut mat = linalg::zeros(tgt.len(), src.len());
        for (j, m) in src.iter().enumerate() {
            let dm = self.d.apply_monomial(m);
            for (t, c) in dm.terms() {
                mat[index[t]][j] = c.clone();
            }
        }
        mat
    }

    pub fn rank_d(&mut self, n: u32) -> usize {
        let m = self.differential_matrix(n);
        linalg::rank(&m)
    }

    pub fn betti(&mut self, n: u32) -> usize {
        let dim = self.basis(n).len();
        let out = self.rank_d(n);
        let inc = if n == 0 { 0 } else { self.rank_d(n - 1) };
        dim - out - inc
    }

    pub fn betti_vector(&mut self, max_degree: u32) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=max_degree).map(|n| self.rank_d(n)).collect();
        (0..=max_degree)
            .map(|n| {
                let dim = self.basis(n).len();
                let inc = if n == 0 { 0 } else { ranks[n as usize - 1] };
                dim - ranks[n as usize] - inc
            })
            .collect()
    }

    /// Closed elements representing a basis of Hⁿ.
    pub fn representatives(&mut self, n: u32) -> CohomologyBasis {
        let dim = self.basis(n).len();
        let dn = self.differential_matrix(n);
        let kernel = if dn.is_empty() { linalg::identity(dim) } else { linalg::kernel(&dn, dim) };
        let image: Vec<Vec<Rational>> = if n == 0 {
            Vec::new()
        } else {
            let prev = self.differential_matrix(n - 1);
            let cols = self.basis(n - 1).len();
            linalg::transpose(&prev, cols).into_iter().filter(|v| v.iter().any(|x| !x.is_zero())).collect()
        };
        let mut span: Vec<Vec<Rational>> = image.clone();
        let mut rank = linalg::rank(&span);
        let mut reps = Vec::new();
        for v in kernel {
            span.push(v.clone());
            let r = linalg::rank(&span);
            if r > rank {
                rank = r;
                reps.push(v);
            } else {
                span.pop();
            }
        }
        let elements = reps.iter().map(|v| self.element(v, n)).collect();
        CohomologyBasis { degree: n, dim, image, reps, elements }
    }
}

/// A basis of Hⁿ together with what is needed to express classes in it.
pub struct CohomologyBasis {
    pub degree: u32,
    dim: usize,
    image: Vec<Vec<Rational>>,
    reps: Vec<Vec<Rational>>,
    pub elements: Vec<Element>,
}

impl CohomologyBasis {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Coordinates of a closed element (given in cochain coordinates) in the basis.
    pub fn class_of(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.dim {
            return Err(Error::Internal("coordinate length mismatch".into()));
        }
        let cols: Vec<&Vec<Rational>> = self.image.iter().chain(self.reps.iter()).collect();
        let m: Matrix = (0..self.dim).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        let x = if self.dim == 0 {
            Some(Vec::new())
        } else {
            linalg::solve(&m, v)
        }
        .ok_or_else(|| Error::Precondition("element is not closed or not in the span".into()))?;
        Ok(x[self.image.len()..].to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_element;

    fn complex(gens: &[(&str, u32)], diff: &[(&str, &str)]) -> CochainComplex {
        let g = GeneratorSet::from_pairs(gens).unwrap();
        let imgs = g
            .generators()
            .iter()
            .map(|gen| match diff.iter().find(|(n, _)| *n == gen.name) {
                Some((_, s)) => parse_element(s, &g).unwrap(),
                None => Element::zero(&g),
            })
            .collect();
        CochainComplex::new(&Derivation::new(&g, imgs).unwrap()).unwrap()
    }

    #[test]
    fn bases() {
        let g = GeneratorSet::from_pairs(&[("u", 2), ("x", 3)]).unwrap();
        assert_eq!(basis_in_degree(&g, 4).unwrap().len(), 1);
        let g = GeneratorSet::from_pairs(&[("a", 2), ("b", 2)]).unwrap();
        assert_eq!(basis_in_degree(&g, 4).unwrap().len(), 3);
        let g = GeneratorSet::from_pairs(&[("u", 2), ("v", 2), ("x1", 3), ("x2", 3), ("x3", 3)]).unwrap();
        assert_eq!(basis_in_degree(&g, 5).unwrap().len(), 6);
        let g = GeneratorSet::from_pairs(&[("e", 1)]).unwrap();
        assert!(matches!(basis_in_degree(&g, 2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn spheres_and_projective_plane() {
        let mut c = complex(&[("u", 2), ("x", 3)], &[("x", "u^2")]);
        assert_eq!(c.betti_vector(5), vec![1, 0, 1, 0, 0, 0]);
        let mut c = complex(&[("u", 2), ("x", 5)], &[("x", "u^3")]);
        assert_eq!(c.betti_vector(6), vec![1, 0, 1, 0, 1, 0, 0]);
        let mut c = complex(&[("a", 2), ("b", 2), ("x", 3), ("y", 3)], &[("x", "a^2 + b^2"), ("y", "a*b")]);
        assert_eq!(c.betti_vector(4), vec![1, 0, 2, 0, 1]);
    }

    #[test]
    fn representatives_express_classes() {
        let mut c = complex(&[("a", 2), ("b", 2), ("x", 3), ("y", 3)], &[("x", "a^2 + b^2"), ("y", "a*b")]);
        let h4 = c.representatives(4);
        assert_eq!(h4.len(), 1);
        let amb = Arc::clone(c.ambient());
        let a2 = parse_element("a^2", &amb).unwrap();
        let b2 = parse_element("b^2", &amb).unwrap();
        let ca = h4.class_of(&c.coordinates(&a2, 4)).unwrap();
        let cb = h4.class_of(&c.coordinates(&b2, 4)).unwrap();
        assert_eq!(ca[0], -cb[0].clone());
    }
}
