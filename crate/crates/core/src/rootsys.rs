//! Root data of compact groups of classical type in their standard Euclidean
//! realizations.
//!
//! | series | ambient block | roots | squared lengths |
//! |--------|---------------|-------|-----------------|
//! | `A_n`  | `n+1`, sum-zero hyperplane | `e_i - e_j` | 2 |
//! | `B_n`  | `n` | `±e_i`, `±e_i ± e_j` | 1, 2 |
//! | `C_n`  | `n` | `±2e_i`, `±e_i ± e_j` | 4, 2 |
//! | `D_n`  | `n` | `±e_i ± e_j` | 2 |
//!
//! Torus factors add coordinates but no roots. The invariant pairing is the
//! ambient dot product; no Killing-form rescaling is applied.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{dot, fmt_q, is_integer, q, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
}

impl Series {
    fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Factor {
    pub series: Series,
    pub rank: usize,
}

impl Factor {
    pub fn ambient_dim(&self) -> usize {
        match self.series {
            Series::A => self.rank + 1,
            _ => self.rank,
        }
    }

    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 1),
            Series::B | Series::C => 2 * n * n,
            Series::D => 2 * n * (n - 1),
        }
    }
}

/// Group type: simple factors of classical type plus a central torus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeriesSpec {
    pub factors: Vec<Factor>,
    pub torus_rank: usize,
}

impl SeriesSpec {
    pub fn new(factors: Vec<Factor>, torus_rank: usize) -> Result<Self> {
        for f in &factors {
            if f.rank == 0 {
                return Err(Error::InvalidSeries(format!("{}0: rank must be at least 1", f.series.letter())));
            }
            if f.series == Series::D && f.rank < 2 {
                return Err(Error::InvalidSeries(format!("D{}: D-series needs rank at least 2", f.rank)));
            }
        }
        Ok(SeriesSpec { factors, torus_rank })
    }

    pub fn single(series: Series, rank: usize) -> Result<Self> {
        Self::new(vec![Factor { series, rank }], 0)
    }

    pub fn ambient_dim(&self) -> usize {
        self.factors.iter().map(Factor::ambient_dim).sum::<usize>() + self.torus_rank
    }

    /// Dimension of the maximal torus.
    pub fn rank(&self) -> usize {
        self.semisimple_rank() + self.torus_rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }

    /// Ambient coordinate ranges of each simple factor, in order.
    pub fn blocks(&self) -> Vec<(Factor, std::ops::Range<usize>)> {
        let mut off = 0;
        self.factors
            .iter()
            .map(|f| {
                let r = off..off + f.ambient_dim();
                off = r.end;
                (*f, r)
            })
            .collect()
    }

    pub fn torus_range(&self) -> std::ops::Range<usize> {
        let d = self.ambient_dim();
        d - self.torus_rank..d
    }
}

impl FromStr for SeriesSpec {
    type Err = Error;

    /// Factors joined by `x`, e.g. `A2xB3xT1`. `T<k>` adds a rank-`k` torus.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidSeries("empty series string".into()));
        }
        let mut factors = Vec::new();
        let mut torus = 0;
        for tok in s.split('x') {
            let tok = tok.trim();
            let mut chars = tok.chars();
            let letter = chars.next().ok_or_else(|| Error::InvalidSeries(format!("empty factor in {s:?}")))?;
            let rank: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::InvalidSeries(format!("bad rank in factor {tok:?}")))?;
            let series = match letter {
                'A' => Series::A,
                'B' => Series::B,
                'C' => Series::C,
                'D' => Series::D,
                'T' => {
                    torus += rank;
                    continue;
                }
                other => return Err(Error::InvalidSeries(format!("unknown series letter {other:?}"))),
            };
            factors.push(Factor { series, rank });
        }
        SeriesSpec::new(factors, torus)
    }
}

impl fmt::Display for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| format!("{}{}", x.series.letter(), x.rank))
            .collect();
        if self.torus_rank > 0 {
            parts.push(format!("T{}", self.torus_rank));
        }
        write!(f, "{}", parts.join("x"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisTag {
    Ambient,
    Fundamental,
}

/// A functional on the Cartan subalgebra.
///
/// In the fundamental basis the coordinates are the coefficients of the
/// fundamental weights (simple roots in [`RootSystem::simple_roots`] order)
/// followed by the torus coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub coords: Vec<Q>,
    pub basis: BasisTag,
}

impl Weight {
    pub fn ambient(coords: Vec<Q>) -> Self {
        Weight {
            coords,
            basis: BasisTag::Ambient,
        }
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Self::ambient(xs.iter().map(|&x| q(x)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self::ambient(vec![Q::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        Weight {
            coords: self.coords.iter().map(|x| -x).collect(),
            basis: self.basis,
        }
    }

    pub fn add(&self, other: &Weight) -> Self {
        Weight {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
            basis: self.basis,
        }
    }

    pub fn sub(&self, other: &Weight) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, t: &Q) -> Self {
        Weight {
            coords: self.coords.iter().map(|x| x * t).collect(),
            basis: self.basis,
        }
    }

    /// Human readable label in unit-vector notation, e.g. `e1-e2` or `2e3`.
    pub fn label(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if out.is_empty() { "" } else { "+" };
            let mag = c.abs();
            let coef = if mag.is_one() { String::new() } else { fmt_q(&mag) };
            let coef = if coef.contains('/') { format!("({coef})") } else { coef };
            out.push_str(&format!("{sign}{coef}e{}", i + 1));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(fmt_q).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Exact root data for a [`SeriesSpec`].
#[derive(Debug, Clone)]
pub struct RootSystem {
    spec: SeriesSpec,
    roots: Vec<Weight>,
    index: HashMap<Vec<Q>, usize>,
    /// Simple roots of the standard chamber, factor by factor in Bourbaki order.
    standard_simple: Vec<Weight>,
    fundamental: Vec<Weight>,
}

impl RootSystem {
    pub fn build(spec: &SeriesSpec) -> Result<Self> {
        let spec = SeriesSpec::new(spec.factors.clone(), spec.torus_rank)?;
        let dim = spec.ambient_dim();
        let mut roots = Vec::new();
        let mut standard_simple = Vec::new();
        let unit = |i: usize, c: i64| -> Vec<Q> {
            let mut v = vec![Q::zero(); dim];
            v[i] = q(c);
            v
        };
        let sum = |a: Vec<Q>, b: Vec<Q>| -> Vec<Q> { a.into_iter().zip(b).map(|(x, y)| x + y).collect() };

        for (f, range) in spec.blocks() {
            let o = range.start;
            let m = f.ambient_dim();
            // ±e_i ± e_j (A only takes e_i - e_j)
            for i in 0..m {
                for j in 0..m {
                    if i == j {
                        continue;
                    }
                    roots.push(sum(unit(o + i, 1), unit(o + j, -1)));
                    if f.series != Series::A && i < j {
                        roots.push(sum(unit(o + i, 1), unit(o + j, 1)));
                        roots.push(sum(unit(o + i, -1), unit(o + j, -1)));
                    }
                }
            }
            match f.series {
                Series::B => (0..m).for_each(|i| {
                    roots.push(unit(o + i, 1));
                    roots.push(unit(o + i, -1));
                }),
                Series::C => (0..m).for_each(|i| {
                    roots.push(unit(o + i, 2));
                    roots.push(unit(o + i, -2));
                }),
                _ => {}
            }

            for i in 0..m - 1 {
                standard_simple.push(sum(unit(o + i, 1), unit(o + i + 1, -1)));
            }
            match f.series {
                Series::A => {}
                Series::B => standard_simple.push(unit(o + m - 1, 1)),
                Series::C => standard_simple.push(unit(o + m - 1, 2)),
                Series::D => standard_simple.push(sum(unit(o + m - 2, 1), unit(o + m - 1, 1))),
            }
        }

        roots.sort();
        roots.dedup();
        let index = roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let roots: Vec<Weight> = roots.into_iter().map(Weight::ambient).collect();
        let standard_simple: Vec<Weight> = standard_simple.into_iter().map(Weight::ambient).collect();

        let mut rs = RootSystem {
            spec,
            roots,
            index,
            standard_simple,
            fundamental: Vec::new(),
        };
        rs.fundamental = rs.compute_fundamental()?;
        Ok(rs)
    }

    pub fn from_str_spec(s: &str) -> Result<Self> {
        Self::build(&s.parse()?)
    }

    fn compute_fundamental(&self) -> Result<Vec<Weight>> {
        let simple = &self.standard_simple;
        let r = simple.len();
        // Cartan matrix rows: a_{jk} = 2(α_j, α_k)/(α_j, α_j)
        let cartan: Vec<Vec<Q>> = simple
            .iter()
            .map(|aj| {
                let n = dot(&aj.coords, &aj.coords);
                simple.iter().map(|ak| q(2) * dot(&aj.coords, &ak.coords) / &n).collect()
            })
            .collect();
        (0..r)
            .map(|i| {
                let e: Vec<Q> = (0..r).map(|j| if i == j { Q::one() } else { Q::zero() }).collect();
                let c = linalg::solve(&cartan, &e)
                    .ok_or_else(|| Error::Certificate("singular Cartan matrix".into()))?;
                let mut w = Weight::zero(self.dim());
                for (ck, ak) in c.iter().zip(simple) {
                    w = w.add(&ak.scale(ck));
                }
                Ok(w)
            })
            .collect()
    }

    pub fn spec(&self) -> &SeriesSpec {
        &self.spec
    }

    pub fn roots(&self) -> &[Weight] {
        &self.roots
    }

    pub fn dim(&self) -> usize {
        self.spec.ambient_dim()
    }

    pub fn rank(&self) -> usize {
        self.spec.rank()
    }

    /// Real dimension of the compact group.
    pub fn dim_g(&self) -> usize {
        self.rank() + self.roots.len()
    }

    pub fn is_root(&self, v: &[Q]) -> bool {
        self.index.contains_key(v)
    }

    pub fn root_index(&self, v: &[Q]) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Simple roots of the standard chamber in Bourbaki order per factor.
    pub fn simple_roots(&self) -> &[Weight] {
        &self.standard_simple
    }

    /// Fundamental weights dual to [`RootSystem::simple_roots`].
    pub fn fundamental_weights(&self) -> &[Weight] {
        &self.fundamental
    }

    /// Gram matrix of the invariant pairing in ambient coordinates.
    pub fn gram(&self) -> Vec<Vec<Q>> {
        let d = self.dim();
        (0..d)
            .map(|i| (0..d).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect()
    }

    pub fn check_dim(&self, w: &Weight) -> Result<()> {
        let expected = match w.basis {
            BasisTag::Ambient => self.dim(),
            BasisTag::Fundamental => self.standard_simple.len() + self.spec.torus_rank,
        };
        if w.dim() != expected {
            return Err(Error::DimensionMismatch { expected, got: w.dim() });
        }
        Ok(())
    }

    pub fn pairing(&self, xi: &Weight, eta: &Weight) -> Result<Q> {
        for w in [xi, eta] {
            if w.basis != BasisTag::Ambient {
                return Err(Error::InvalidArgument("pairing needs ambient coordinates".into()));
            }
            self.check_dim(w)?;
        }
        Ok(dot(&xi.coords, &eta.coords))
    }

    /// Converts to ambient coordinates and projects A-blocks onto their
    /// sum-zero hyperplane. The flag reports whether a projection happened.
    pub fn normalize_weight(&self, w: &Weight) -> Result<(Weight, bool)> {
        self.check_dim(w)?;
        let mut out = match w.basis {
            BasisTag::Ambient => w.clone(),
            BasisTag::Fundamental => {
                let r = self.standard_simple.len();
                let mut acc = Weight::zero(self.dim());
                for (m, om) in w.coords[..r].iter().zip(&self.fundamental) {
                    acc = acc.add(&om.scale(m));
                }
                for (k, t) in w.coords[r..].iter().enumerate() {
                    acc.coords[self.spec.torus_range().start + k] = t.clone();
                }
                acc
            }
        };
        let mut projected = false;
        for (f, range) in self.spec.blocks() {
            if f.series != Series::A {
                continue;
            }
            let s: Q = out.coords[range.clone()].iter().sum();
            if !s.is_zero() {
                projected = true;
                let mean = s / q(range.len() as i64);
                for x in &mut out.coords[range] {
                    *x -= &mean;
                }
            }
        }
        Ok((out, projected))
    }

    /// `true` if `v` matches the pattern of some root of its factor.
    pub fn matches_series_pattern(&self, v: &[Q]) -> bool {
        if v.len() != self.dim() || self.spec.torus_range().any(|i| !v[i].is_zero()) {
            return false;
        }
        let mut hit = None;
        for (f, range) in self.spec.blocks() {
            let nz: Vec<&Q> = v[range].iter().filter(|x| !x.is_zero()).collect();
            if nz.is_empty() {
                continue;
            }
            if hit.is_some() {
                return false;
            }
            let ones = nz.iter().all(|x| x.abs().is_one());
            let ok = match (f.series, nz.len()) {
                (Series::A, 2) => ones && (nz[0] + nz[1]).is_zero(),
                (Series::B, 1) => ones,
                (Series::C, 1) => nz[0].abs() == q(2),
                (Series::B | Series::C | Series::D, 2) => ones,
                _ => false,
            };
            hit = Some(ok);
        }
        hit.unwrap_or(false)
    }

    /// Audits the defining properties of the stored root list.
    pub fn audit(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Certificate(m));
        let expected: usize = self.spec.factors.iter().map(Factor::root_count).sum();
        if self.roots.len() != expected {
            return fail(format!("expected {expected} roots, have {}", self.roots.len()));
        }
        for a in &self.roots {
            if a.is_zero() {
                return fail("zero vector in root list".into());
            }
            if !self.is_root(&a.neg().coords) {
                return fail(format!("-{} missing", a.label()));
            }
            if !self.matches_series_pattern(&a.coords) {
                return fail(format!("{} does not fit the series pattern", a.label()));
            }
            let n = dot(&a.coords, &a.coords);
            if ![q(1), q(2), q(4)].contains(&n) {
                return fail(format!("{} has squared length {n}", a.label()));
            }
            for b in &self.roots {
                let c = q(2) * dot(&a.coords, &b.coords) / &n;
                if !is_integer(&c) {
                    return fail(format!("Cartan number of ({}, {}) is {c}", a.label(), b.label()));
                }
                let s = a.add(b);
                if !s.is_zero() && self.matches_series_pattern(&s.coords) && !self.is_root(&s.coords) {
                    return fail(format!("{} + {} missing", a.label(), b.label()));
                }
            }
        }
        Ok(())
    }

    /// Positive system of the chamber containing `seed` (ambient, regular).
    pub fn positive_roots(&self, seed: &Weight) -> Result<RootOrder> {
        let (seed, _) = self.normalize_weight(seed)?;
        let mut positive = Vec::new();
        for a in &self.roots {
            let p = dot(&seed.coords, &a.coords);
            if p.is_zero() {
                return Err(Error::SeedOnWall(a.label()));
            }
            if p.is_positive() {
                positive.push(a.clone());
            }
        }
        let mut simple: Vec<Weight> = positive
            .iter()
            .filter(|a| {
                !positive
                    .iter()
                    .any(|b| *b != **a && positive.binary_search(&a.sub(b)).is_ok())
            })
            .cloned()
            .collect();
        simple.sort_by(|x, y| simple_key(x).cmp(&simple_key(y)));
        Ok(RootOrder { seed, positive, simple })
    }

    /// `(d, d-1, …, 1)`: strictly decreasing and positive, hence regular.
    pub fn default_seed(&self) -> Weight {
        let d = self.dim();
        Weight::ambient((0..d).map(|i| q((d - i) as i64)).collect())
    }

    pub fn default_order(&self) -> RootOrder {
        self.positive_roots(&self.default_seed())
            .expect("default seed is regular")
    }
}

fn simple_key(w: &Weight) -> (usize, Q) {
    let first = w.coords.iter().position(|x| !x.is_zero()).unwrap_or(0);
    let last = w.coords.iter().rev().find(|x| !x.is_zero()).cloned().unwrap_or_default();
    (first, last)
}

/// Positive system `Δ⁺ = {α : (seed, α) > 0}` with its simple roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootOrder {
    pub seed: Weight,
    /// Sorted ascending.
    pub positive: Vec<Weight>,
    pub simple: Vec<Weight>,
}

impl RootOrder {
    pub fn is_positive(&self, a: &Weight) -> bool {
        self.positive.binary_search(a).is_ok()
    }

    /// `(λ, α) ≥ 0` for every positive root.
    pub fn is_dominant(&self, lambda: &Weight) -> Result<bool> {
        if lambda.dim() != self.seed.dim() || lambda.basis != BasisTag::Ambient {
            return Err(Error::DimensionMismatch {
                expected: self.seed.dim(),
                got: lambda.dim(),
            });
        }
        Ok(self
            .simple
            .iter()
            .all(|a| !dot(&lambda.coords, &a.coords).is_negative()))
    }

    /// Coefficients of `root` over the simple roots.
    pub fn simple_coefficients(&self, root: &Weight) -> Option<Vec<Q>> {
        let d = root.dim();
        let a: Vec<Vec<Q>> = (0..d)
            .map(|i| self.simple.iter().map(|s| s.coords[i].clone()).collect())
            .collect();
        linalg::solve(&a, &root.coords)
    }
}
