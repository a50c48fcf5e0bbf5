//! Weyl groups as finite groups of exact reflection matrices.
//!
//! In the ambient realizations of [`crate::rootsys`] every Weyl element is a
//! signed permutation matrix on the root coordinates, so elements are stored
//! as flat `i8` matrices. Element identity is matrix equality.

use std::collections::{HashMap, HashSet, VecDeque};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::{dot, q, Q};
use crate::rootsys::{BasisTag, RootOrder, RootSystem, Weight};

pub const DEFAULT_CAP: usize = 1_000_000;

/// `s_α : v ↦ v − 2(v,α)/(α,α) · α` as an exact matrix.
pub fn reflection(alpha: &Weight, rs: &RootSystem) -> Result<QMatrix> {
    if alpha.basis != BasisTag::Ambient || !rs.is_root(&alpha.coords) {
        return Err(Error::NotARoot(alpha.label()));
    }
    Ok(reflection_matrix(&alpha.coords))
}

fn reflection_matrix(a: &[Q]) -> QMatrix {
    let d = a.len();
    let n = dot(a, a);
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let delta = if i == j { q(1) } else { q(0) };
                    delta - q(2) * &a[i] * &a[j] / &n
                })
                .collect()
        })
        .collect()
}

pub fn apply_q(m: &QMatrix, w: &Weight) -> Weight {
    Weight::ambient(m.iter().map(|row| dot(row, &w.coords)).collect())
}

/// Reflection of `w` through the hyperplane orthogonal to `alpha`.
pub fn reflect(alpha: &Weight, w: &Weight) -> Weight {
    let c = q(2) * dot(&w.coords, &alpha.coords) / dot(&alpha.coords, &alpha.coords);
    w.sub(&alpha.scale(&c))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    /// Row-major `dim × dim`.
    pub matrix: Vec<i8>,
    /// Shortest word found by breadth-first search: the element equals
    /// `s_{word[0]} · s_{word[1]} · …` over the generators.
    pub word: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    dim: usize,
    generator_roots: Vec<Weight>,
    generators: Vec<Vec<i8>>,
    elements: Vec<WeylElement>,
}

impl WeylGroup {
    /// Closure of the simple reflections of the standard chamber.
    pub fn generate(rs: &RootSystem, cap: usize) -> Result<Self> {
        Self::generate_from(rs, rs.simple_roots(), cap)
    }

    pub fn generate_from(rs: &RootSystem, simple: &[Weight], cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::InvalidArgument("cap must be positive".into()));
        }
        let dim = rs.dim();
        let generators = simple
            .iter()
            .map(|a| reflection(a, rs).and_then(|m| to_small(&m)))
            .collect::<Result<Vec<_>>>()?;

        let identity: Vec<i8> = (0..dim * dim).map(|k| i8::from(k / dim == k % dim)).collect();
        let mut seen: HashMap<Vec<i8>, Vec<usize>> = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(identity.clone(), Vec::new());
        queue.push_back(identity);
        while let Some(g) = queue.pop_front() {
            for (i, s) in generators.iter().enumerate() {
                let h = mul_small(&g, s, dim);
                if seen.contains_key(&h) {
                    continue;
                }
                if seen.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                let mut word = seen[&g].clone();
                word.push(i);
                seen.insert(h.clone(), word);
                queue.push_back(h);
            }
        }
        let mut elements: Vec<WeylElement> = seen
            .into_iter()
            .map(|(matrix, word)| WeylElement { matrix, word })
            .collect();
        elements.sort_by(|a, b| a.matrix.cmp(&b.matrix));
        Ok(WeylGroup {
            dim,
            generator_roots: simple.to_vec(),
            generators,
            elements,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn generator_roots(&self) -> &[Weight] {
        &self.generator_roots
    }

    pub fn generators(&self) -> &[Vec<i8>] {
        &self.generators
    }

    pub fn contains(&self, m: &[i8]) -> bool {
        self.elements.binary_search_by(|e| e.matrix.as_slice().cmp(m)).is_ok()
    }

    pub fn multiply(&self, a: &[i8], b: &[i8]) -> Vec<i8> {
        mul_small(a, b, self.dim)
    }

    pub fn apply(&self, m: &[i8], w: &Weight) -> Weight {
        let d = self.dim;
        Weight::ambient(
            (0..d)
                .map(|i| {
                    (0..d).fold(Q::zero(), |acc, j| match m[i * d + j] {
                        0 => acc,
                        1 => acc + &w.coords[j],
                        -1 => acc - &w.coords[j],
                        c => acc + q(c as i64) * &w.coords[j],
                    })
                })
                .collect(),
        )
    }

    pub fn transpose(&self, m: &[i8]) -> Vec<i8> {
        let d = self.dim;
        (0..d * d).map(|k| m[(k % d) * d + k / d]).collect()
    }
}

fn to_small(m: &QMatrix) -> Result<Vec<i8>> {
    m.iter()
        .flatten()
        .map(|x| {
            if x.is_integer() && x.abs() <= q(1) {
                Ok(x.to_integer().try_into().expect("entry in {-1,0,1}"))
            } else {
                Err(Error::Certificate(format!("reflection entry {x} is not a signed-permutation entry")))
            }
        })
        .collect()
}

fn mul_small(a: &[i8], b: &[i8], d: usize) -> Vec<i8> {
    let mut out = vec![0i8; d * d];
    for i in 0..d {
        for k in 0..d {
            let x = a[i * d + k];
            if x == 0 {
                continue;
            }
            for j in 0..d {
                out[i * d + j] += x * b[k * d + j];
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylOrbit {
    pub base: Weight,
    /// Sorted ascending.
    pub points: Vec<Weight>,
    pub stabilizer_order: usize,
}

pub fn weyl_orbit(lambda: &Weight, w: &WeylGroup) -> Result<WeylOrbit> {
    if lambda.dim() != w.dim() {
        return Err(Error::DimensionMismatch { expected: w.dim(), got: lambda.dim() });
    }
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(lambda.clone());
    queue.push_back(lambda.clone());
    while let Some(p) = queue.pop_front() {
        for a in w.generator_roots() {
            let r = reflect(a, &p);
            if seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    let mut points: Vec<Weight> = seen.into_iter().collect();
    points.sort();
    if w.order() % points.len() != 0 {
        return Err(Error::Certificate(format!(
            "orbit size {} does not divide |W| = {}",
            points.len(),
            w.order()
        )));
    }
    Ok(WeylOrbit {
        base: lambda.clone(),
        stabilizer_order: w.order() / points.len(),
        points,
    })
}

/// The dominant point of `W·λ` and the word reaching it.
///
/// The word lists indices into `order.simple` in application order:
/// the result is `s_{word[k-1]} ⋯ s_{word[0]} λ`. Dominant inputs return the
/// empty word.
pub fn dominant_representative(lambda: &Weight, order: &RootOrder, w: &WeylGroup) -> Result<(Weight, Vec<usize>)> {
    if lambda.dim() != w.dim() || order.seed.dim() != w.dim() {
        return Err(Error::DimensionMismatch { expected: w.dim(), got: lambda.dim() });
    }
    let mut mu = lambda.clone();
    let mut word = Vec::new();
    // Each step strictly increases (μ, seed), and the orbit is finite.
    while let Some(i) = order
        .simple
        .iter()
        .position(|a| dot(&mu.coords, &a.coords).is_negative())
    {
        mu = reflect(&order.simple[i], &mu);
        word.push(i);
    }
    Ok((mu, word))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn group(s: &str) -> (RootSystem, WeylGroup) {
        let rs = RootSystem::from_str_spec(s).unwrap();
        let w = WeylGroup::generate(&rs, DEFAULT_CAP).unwrap();
        (rs, w)
    }

    #[test]
    fn reflection_basics() {
        let rs = RootSystem::from_str_spec("A2").unwrap();
        let a = Weight::from_ints(&[1, -1, 0]);
        let s = reflection(&a, &rs).unwrap();
        assert_eq!(apply_q(&s, &a), a.neg());
        let v = Weight::from_ints(&[1, 1, -2]);
        assert_eq!(apply_q(&s, &v), v);
        let w1 = rs.fundamental_weights()[0].clone();
        assert_eq!(apply_q(&s, &w1), w1.sub(&a));
        let s2 = crate::linalg::rank(&s);
        assert_eq!(s2, 3);
        assert!(reflection(&Weight::from_ints(&[1, 0, -2]), &rs).is_err());
    }

    #[test]
    fn small_orders() {
        assert_eq!(group("A1").1.order(), 2);
        assert_eq!(group("A2").1.order(), 6);
        assert_eq!(group("B2").1.order(), 8);
        assert_eq!(group("D3").1.order(), 24);
        assert_eq!(group("T2").1.order(), 1);
        assert_eq!(group("A1xA1").1.order(), 4);
    }

    #[test]
    fn cap_is_enforced() {
        let rs = RootSystem::from_str_spec("B3").unwrap();
        assert_eq!(WeylGroup::generate(&rs, 10).unwrap_err(), Error::CapExceeded(10));
        assert_eq!(WeylGroup::generate(&rs, 48).unwrap().order(), 48);
    }

    #[test]
    fn words_reproduce_matrices() {
        let (_, w) = group("B2");
        for e in w.elements() {
            let d = w.dim();
            let mut m: Vec<i8> = (0..d * d).map(|k| i8::from(k / d == k % d)).collect();
            for &i in &e.word {
                m = w.multiply(&m, &w.generators()[i]);
            }
            assert_eq!(m, e.matrix);
        }
    }

    #[test]
    fn orbits() {
        let (rs, w) = group("A2");
        let zero = weyl_orbit(&Weight::zero(3), &w).unwrap();
        assert_eq!(zero.points.len(), 1);
        assert_eq!(zero.stabilizer_order, 6);
        let w1 = rs.fundamental_weights()[0].clone();
        assert_eq!(weyl_orbit(&w1, &w).unwrap().points.len(), 3);
        let (rs1, w1g) = group("A1");
        let om = rs1.fundamental_weights()[0].clone();
        let o = weyl_orbit(&om, &w1g).unwrap();
        assert_eq!(o.points, vec![om.neg(), om]);
    }

    #[test]
    fn dominant_representatives() {
        let (rs, w) = group("A2");
        let order = rs.default_order();
        let w1 = rs.fundamental_weights()[0].clone();
        let w2 = rs.fundamental_weights()[1].clone();
        assert_eq!(dominant_representative(&w1, &order, &w).unwrap(), (w1.clone(), vec![]));
        assert_eq!(dominant_representative(&w1.neg(), &order, &w).unwrap().0, w2);
        let (rs1, w1g) = group("A1");
        let om = rs1.fundamental_weights()[0].clone();
        let (d, word) = dominant_representative(&om.neg(), &rs1.default_order(), &w1g).unwrap();
        assert_eq!(d.coords, vec![qf(1, 2), qf(-1, 2)]);
        assert_eq!(word, vec![0]);
    }
}
