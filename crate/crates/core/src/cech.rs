//! Čech cohomology of a finite nerve with ℤ or ℚ coefficients, and Chern
//! classes of integer 2-cocycles.
//!
//! The cover is assumed good (all nonempty intersections contractible), so
//! the cohomology of its nerve is the cohomology of the space. Refinement
//! maps are not modeled.
//!
//! Cochains live on strictly increasing tuples. Evaluation on other
//! orderings picks up the sign of the sorting permutation, and tuples with a
//! repeated vertex evaluate to zero. The coboundary is the alternating face
//! sum `(δc)(j₀…j_{k+1}) = Σ_l (−1)^l c(j₀…ĵ_l…j_{k+1})`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, ZMatrix};
use crate::rational::{is_integer, parse_q, Q};

pub type Simplex = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nerve {
    vertex_count: usize,
    /// `simplices[k]` holds the k-simplices in lexicographic order.
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl Nerve {
    /// Downward closure of `simplices`. Vertices `0..vertex_count` are always
    /// present; `None` takes the largest index plus one.
    pub fn build(vertex_count: Option<usize>, simplices: &[Simplex]) -> Result<Self> {
        let max = simplices.iter().flatten().max().map(|m| m + 1).unwrap_or(0);
        let vertex_count = vertex_count.unwrap_or(max);
        if vertex_count == 0 {
            return Err(Error::InvalidNerve("nerve has no vertices".into()));
        }
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        for s in simplices {
            check_tuple(s, vertex_count)?;
            let k = s.len() - 1;
            if by_dim.len() <= k {
                by_dim.resize(k + 1, BTreeSet::new());
            }
            by_dim[k].insert(s.clone());
        }
        if by_dim.is_empty() {
            by_dim.push(BTreeSet::new());
        }
        for v in 0..vertex_count {
            by_dim[0].insert(vec![v]);
        }
        for k in (1..by_dim.len()).rev() {
            let faces: Vec<Simplex> = by_dim[k].iter().flat_map(|s| faces(s)).collect();
            by_dim[k - 1].extend(faces);
        }
        while by_dim.len() > 1 && by_dim.last().is_some_and(BTreeSet::is_empty) {
            by_dim.pop();
        }
        let simplices: Vec<Vec<Simplex>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = simplices
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Ok(Nerve { vertex_count, simplices, index })
    }

    /// One simplex per line as space-separated increasing vertex indices;
    /// `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut list = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let s = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::parse(Some(n + 1), format!("bad vertex index in {line:?}")))?;
            check_tuple(&s, usize::MAX).map_err(|e| Error::parse(Some(n + 1), e.to_string()))?;
            list.push(s);
        }
        if list.is_empty() {
            return Err(Error::parse(None, "nerve file lists no simplices"));
        }
        Self::build(None, &list)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Top degree with at least one simplex.
    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn position(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dim())
            .map(|k| if k % 2 == 0 { self.count(k) as i64 } else { -(self.count(k) as i64) })
            .sum()
    }

    /// Matrix of `δ_k : C^k → C^{k+1}`, rows indexed by (k+1)-simplices.
    pub fn coboundary_matrix(&self, k: usize) -> ZMatrix {
        let cols = self.count(k);
        self.simplices(k + 1)
            .iter()
            .map(|s| {
                let mut row = vec![BigInt::zero(); cols];
                for (l, f) in faces(s).iter().enumerate() {
                    let j = self.position(f).expect("nerve is downward closed");
                    row[j] += if l % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                }
                row
            })
            .collect()
    }
}

fn check_tuple(s: &[usize], vertex_count: usize) -> Result<()> {
    if s.is_empty() {
        return Err(Error::InvalidNerve("empty simplex".into()));
    }
    if s.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidNerve(format!("simplex {s:?} is not strictly increasing")));
    }
    if s.iter().any(|&v| v >= vertex_count) {
        return Err(Error::InvalidNerve(format!("simplex {s:?} has a vertex ≥ {vertex_count}")));
    }
    Ok(())
}

/// Faces in removal order: `faces(s)[l]` drops vertex `l`.
fn faces(s: &[usize]) -> Vec<Simplex> {
    if s.len() < 2 {
        return Vec::new();
    }
    (0..s.len())
        .map(|l| s.iter().enumerate().filter(|&(i, _)| i != l).map(|(_, &v)| v).collect())
        .collect()
}

/// Sorted tuple and permutation sign; `None` on repeated vertices.
fn sort_with_sign(t: &[usize]) -> Option<(Simplex, bool)> {
    let mut v = t.to_vec();
    let mut odd = false;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                odd = !odd;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, odd))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    Z,
    Q,
}

impl std::str::FromStr for Ring {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(Ring::Z),
            "q" => Ok(Ring::Q),
            other => Err(Error::InvalidArgument(format!("ring must be z or q, got {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub ring: Ring,
    /// Indexed like `nerve.simplices(degree)`.
    pub values: Vec<Q>,
}

impl Cochain {
    pub fn zero(nerve: &Nerve, degree: usize, ring: Ring) -> Self {
        Cochain { degree, ring, values: vec![Q::zero(); nerve.count(degree)] }
    }

    pub fn new(nerve: &Nerve, degree: usize, ring: Ring, values: Vec<Q>) -> Result<Self> {
        if values.len() != nerve.count(degree) {
            return Err(Error::DimensionMismatch { expected: nerve.count(degree), got: values.len() });
        }
        if ring == Ring::Z && !values.iter().all(is_integer) {
            return Err(Error::InvalidArgument("integer cochain with non-integer value".into()));
        }
        Ok(Cochain { degree, ring, values })
    }

    pub fn from_ints(nerve: &Nerve, degree: usize, values: &[i64]) -> Result<Self> {
        Self::new(nerve, degree, Ring::Z, values.iter().map(|&v| Q::from_integer(v.into())).collect())
    }

    /// Value on an arbitrary ordering of a simplex.
    pub fn value_at(&self, nerve: &Nerve, tuple: &[usize]) -> Option<Q> {
        if tuple.len() != self.degree + 1 {
            return None;
        }
        let Some((sorted, odd)) = sort_with_sign(tuple) else {
            return Some(Q::zero());
        };
        let v = self.values[nerve.position(&sorted)?].clone();
        Some(if odd { -v } else { v })
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        Cochain {
            degree: self.degree,
            ring: self.ring,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn integer_values(&self) -> Vec<BigInt> {
        self.values.iter().map(|v| v.to_integer()).collect()
    }

    /// Lines of `<simplex tuple> <value>`; simplices not listed are zero.
    /// The degree is taken from the tuple length.
    pub fn parse(text: &str, nerve: &Nerve, ring: Ring) -> Result<Self> {
        let mut entries: Vec<(usize, Simplex, Q)> = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() < 2 {
                return Err(Error::parse(Some(n + 1), "expected a simplex followed by a value"));
            }
            let (tuple, value) = toks.split_at(toks.len() - 1);
            let tuple = tuple
                .iter()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::parse(Some(n + 1), format!("bad vertex index in {line:?}")))?;
            let value = parse_q(value[0]).map_err(|e| Error::parse(Some(n + 1), e.to_string()))?;
            if ring == Ring::Z && !is_integer(&value) {
                return Err(Error::parse(Some(n + 1), format!("{value} is not an integer")));
            }
            entries.push((n + 1, tuple, value));
        }
        let Some(degree) = entries.first().map(|(_, t, _)| t.len() - 1) else {
            return Err(Error::parse(None, "cochain file has no entries"));
        };
        let mut c = Cochain::zero(nerve, degree, ring);
        for (line, tuple, value) in entries {
            if tuple.len() != degree + 1 {
                return Err(Error::parse(Some(line), format!("expected a {degree}-simplex")));
            }
            let (sorted, odd) = sort_with_sign(&tuple)
                .ok_or_else(|| Error::parse(Some(line), "repeated vertex"))?;
            let idx = nerve
                .position(&sorted)
                .ok_or_else(|| Error::parse(Some(line), format!("{sorted:?} is not a simplex of the nerve")))?;
            c.values[idx] = if odd { -value } else { value };
        }
        Ok(c)
    }
}

pub fn coboundary(c: &Cochain, nerve: &Nerve) -> Cochain {
    let values = nerve
        .simplices(c.degree + 1)
        .iter()
        .map(|s| {
            faces(s).iter().enumerate().fold(Q::zero(), |acc, (l, f)| {
                let v = &c.values[nerve.position(f).expect("downward closed")];
                if l % 2 == 0 { acc + v } else { acc - v }
            })
        })
        .collect();
    Cochain { degree: c.degree + 1, ring: c.ring, values }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub ring: Ring,
    pub free_rank: usize,
    /// Invariant factors greater than one (ℤ only).
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for CohomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.ring {
            Ring::Z => "Z",
            Ring::Q => "Q",
        };
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push(base.to_string()),
            r => parts.push(format!("{base}^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn integer_rank(m: &ZMatrix, rows: usize, cols: usize) -> usize {
    if rows == 0 || cols == 0 {
        return 0;
    }
    let qm: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect()).collect();
    linalg::rank(&qm)
}

/// `Ȟ^k = ker δ_k / im δ_{k−1}`.
pub fn cohomology(nerve: &Nerve, k: usize, ring: Ring) -> CohomologyGroup {
    let n_k = nerve.count(k);
    let d_k = nerve.coboundary_matrix(k);
    let rank_k = integer_rank(&d_k, nerve.count(k + 1), n_k);
    let (rank_prev, torsion) = if k == 0 {
        (0, Vec::new())
    } else {
        let d_prev = nerve.coboundary_matrix(k - 1);
        match ring {
            Ring::Q => (integer_rank(&d_prev, n_k, nerve.count(k - 1)), Vec::new()),
            Ring::Z => {
                let s = linalg::smith(&d_prev, n_k, nerve.count(k - 1));
                let tors = s.diag.iter().filter(|d| !d.is_one()).cloned().collect();
                (s.rank(), tors)
            }
        }
    };
    CohomologyGroup { degree: k, ring, free_rank: n_k - rank_k - rank_prev, torsion }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCoordinate {
    pub value: BigInt,
    /// `Some(m)` for a torsion summand `ℤ/m`, `None` for a free summand.
    pub modulus: Option<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernClass {
    pub valid: bool,
    /// A 3-simplex where `δa ≠ 0`.
    pub witness: Option<Simplex>,
    pub coordinates: Vec<ClassCoordinate>,
}

impl ChernClass {
    pub fn is_trivial(&self) -> bool {
        self.valid && self.coordinates.iter().all(|c| c.value.is_zero())
    }
}

/// Presentation of `H²(nerve, ℤ)` used to read off class coordinates.
struct H2Presentation {
    /// ℤ-basis of `ker δ₂` as columns (`n₂ × m`).
    kernel: ZMatrix,
    m: usize,
    smith: linalg::Smith,
}

fn h2_presentation(nerve: &Nerve) -> H2Presentation {
    let n1 = nerve.count(1);
    let n2 = nerve.count(2);
    let n3 = nerve.count(3);
    let basis = linalg::integer_kernel(&nerve.coboundary_matrix(2), n3, n2);
    let m = basis.len();
    let kernel: ZMatrix = (0..n2).map(|i| basis.iter().map(|c| c[i].clone()).collect()).collect();
    // δ₁ = K · C
    let d1 = nerve.coboundary_matrix(1);
    let c_cols: Vec<Vec<BigInt>> = (0..n1)
        .map(|j| {
            let col: Vec<BigInt> = d1.iter().map(|r| r[j].clone()).collect();
            linalg::solve_integer(&kernel, n2, m, &col).expect("im δ₁ ⊆ ker δ₂")
        })
        .collect();
    let c: ZMatrix = (0..m).map(|i| c_cols.iter().map(|col| col[i].clone()).collect()).collect();
    H2Presentation { kernel, m, smith: linalg::smith(&c, m, n1) }
}

/// Class of the integer 2-cochain `a` in `H²(nerve, ℤ)`.
///
/// Coordinates follow the Smith decomposition of `im δ₁` inside `ker δ₂`:
/// one entry per torsion summand (reduced into `[0, m)`) followed by one per
/// free summand. Cohomologous cocycles get identical coordinates.
pub fn chern_class(nerve: &Nerve, a: &Cochain) -> Result<ChernClass> {
    if a.degree != 2 || a.values.len() != nerve.count(2) {
        return Err(Error::InvalidArgument("Chern class needs a 2-cochain on this nerve".into()));
    }
    if !a.values.iter().all(is_integer) {
        return Err(Error::InvalidArgument("Chern class needs integer values".into()));
    }
    let da = coboundary(a, nerve);
    if let Some(i) = da.values.iter().position(|v| !v.is_zero()) {
        return Ok(ChernClass {
            valid: false,
            witness: Some(nerve.simplices(3)[i].clone()),
            coordinates: Vec::new(),
        });
    }
    let p = h2_presentation(nerve);
    let z = linalg::solve_integer(&p.kernel, nerve.count(2), p.m, &a.integer_values())
        .ok_or_else(|| Error::Certificate("cocycle outside the integer kernel basis".into()))?;
    let y = linalg::zmul_vec(&p.smith.u, &z);
    let mut coordinates = Vec::new();
    for (i, yi) in y.iter().enumerate() {
        if i < p.smith.rank() {
            let d = &p.smith.diag[i];
            if !d.is_one() {
                coordinates.push(ClassCoordinate { value: yi.mod_floor(d), modulus: Some(d.clone()) });
            }
        } else {
            coordinates.push(ClassCoordinate { value: yi.clone(), modulus: None });
        }
    }
    Ok(ChernClass { valid: true, witness: None, coordinates })
}
