//! Floating-point matrix models of `su(n)` used to re-derive, independently of
//! the exact engine, the roots, stabilizer dimensions and KKS values.
//!
//! Basis: `X = i·λ_k` for the generalized Gell-Mann matrices `λ_k`, which is
//! orthonormal for `⟨X, Y⟩ = −½ tr(XY)`. The diagonal torus is spanned by the
//! last `n − 1` basis elements. A weight with ambient coordinates `l` acts on
//! a matrix by `λ(Y) = −i Σ_a l_a Y_aa`, i.e. it is extended by zero on the
//! root spaces.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::orbit::{admissible_positive_system, kks_matrix, KKS_CONVENTION};
use crate::rational::to_f64;
use crate::rootsys::{RootSystem, SeriesSpec, Series, Weight};

pub const CONSTRUCTION_TOL: f64 = 1e-12;
pub const SPECTRAL_TOL: f64 = 1e-8;
pub const FD_TOL: f64 = 1e-6;
pub const FD_STEP: f64 = 1e-5;

type CMat = DMatrix<C64>;

fn i() -> C64 {
    C64::new(0.0, 1.0)
}

fn bracket(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

fn norm(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Frobenius inner product `tr(A† B)`.
fn inner(a: &CMat, b: &CMat) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

#[derive(Debug, Clone)]
pub struct MatrixAlgebra {
    pub n: usize,
    pub basis: Vec<CMat>,
    pub cartan_indices: Vec<usize>,
    /// Real diagonals `d_j` with `H_j = i·diag(d_j)`.
    cartan_diagonals: Vec<Vec<f64>>,
}

pub fn special_unitary_basis(n: usize) -> Result<MatrixAlgebra> {
    if !(2..=5).contains(&n) {
        return Err(Error::InvalidArgument(format!("su(n) oracle supports 2 ≤ n ≤ 5, got {n}")));
    }
    let unit = |j: usize, k: usize| {
        let mut m = CMat::zeros(n, n);
        m[(j, k)] = C64::new(1.0, 0.0);
        m
    };
    let mut basis = Vec::with_capacity(n * n - 1);
    for j in 0..n {
        for k in j + 1..n {
            let sym = unit(j, k) + unit(k, j);
            let asym = (unit(j, k) - unit(k, j)) * C64::new(0.0, -1.0);
            basis.push(sym * i());
            basis.push(asym * i());
        }
    }
    let mut cartan_indices = Vec::new();
    let mut cartan_diagonals = Vec::new();
    for l in 1..n {
        let c = (2.0 / (l * (l + 1)) as f64).sqrt();
        let d: Vec<f64> = (0..n)
            .map(|a| match a.cmp(&l) {
                std::cmp::Ordering::Less => c,
                std::cmp::Ordering::Equal => -(l as f64) * c,
                std::cmp::Ordering::Greater => 0.0,
            })
            .collect();
        let mut m = CMat::zeros(n, n);
        for (a, x) in d.iter().enumerate() {
            m[(a, a)] = C64::new(0.0, *x);
        }
        cartan_indices.push(basis.len());
        cartan_diagonals.push(d);
        basis.push(m);
    }
    let alg = MatrixAlgebra { n, basis, cartan_indices, cartan_diagonals };
    alg.verify()?;
    Ok(alg)
}

impl MatrixAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `⟨X, Y⟩ = −½ tr(XY)`, extended complex-bilinearly.
    pub fn form(&self, x: &CMat, y: &CMat) -> C64 {
        -(x * y).trace() * 0.5
    }

    /// Complex coordinates of a trace-zero matrix in the basis.
    pub fn coords(&self, m: &CMat) -> Vec<C64> {
        self.basis.iter().map(|b| self.form(b, m)).collect()
    }

    pub fn from_coords(&self, c: &[C64]) -> CMat {
        let mut m = CMat::zeros(self.n, self.n);
        for (z, b) in c.iter().zip(&self.basis) {
            m += b * *z;
        }
        m
    }

    pub fn from_real(&self, c: &[f64]) -> CMat {
        let z: Vec<C64> = c.iter().map(|&x| C64::new(x, 0.0)).collect();
        self.from_coords(&z)
    }

    fn verify(&self) -> Result<()> {
        let fail = |what: &str, r: f64| Err(Error::Oracle(format!("{what} residual {r:e} ≥ {CONSTRUCTION_TOL:e}")));
        for b in &self.basis {
            let r = norm(&(b + b.adjoint()));
            if r >= CONSTRUCTION_TOL {
                return fail("anti-Hermitian", r);
            }
            if b.trace().norm() >= CONSTRUCTION_TOL {
                return fail("trace", b.trace().norm());
            }
        }
        for a in &self.basis {
            for b in &self.basis {
                let z = bracket(a, b);
                let back = self.from_coords(&self.coords(&z));
                let r = norm(&(z - back));
                if r >= CONSTRUCTION_TOL {
                    return fail("bracket closure", r);
                }
            }
        }
        let r = self.jacobi_residual();
        if r >= CONSTRUCTION_TOL {
            return fail("Jacobi", r);
        }
        Ok(())
    }

    pub fn jacobi_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for x in &self.basis {
            for y in &self.basis {
                for z in &self.basis {
                    let j = bracket(x, &bracket(y, z)) + bracket(y, &bracket(z, x)) + bracket(z, &bracket(x, y));
                    worst = worst.max(norm(&j));
                }
            }
        }
        worst
    }

    /// Real matrix of `ad(X)` in the basis.
    pub fn ad(&self, x: &CMat) -> DMatrix<f64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for (col, b) in self.basis.iter().enumerate() {
            for (row, z) in self.coords(&bracket(x, b)).into_iter().enumerate() {
                m[(row, col)] = z.re;
            }
        }
        m
    }

    /// Max over `trials` random triples of `|⟨[X,Y],Z⟩ + ⟨Y,[X,Z]⟩|`.
    pub fn invariance_residual(&self, trials: usize, seed: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst: f64 = 0.0;
        for _ in 0..trials {
            let [x, y, z] = [0; 3].map(|_| self.random_element(&mut rng));
            let r = self.form(&bracket(&x, &y), &z) + self.form(&y, &bracket(&x, &z));
            worst = worst.max(r.norm());
        }
        worst
    }

    pub fn random_element(&self, rng: &mut impl Rng) -> CMat {
        let c: Vec<f64> = (0..self.dim()).map(|_| rng.random_range(-1.0..1.0)).collect();
        self.from_real(&c)
    }

    /// `λ(Y)` for a weight given by ambient coordinates `l`.
    pub fn eval_weight(&self, l: &[f64], y: &CMat) -> C64 {
        (0..self.n).map(|a| -i() * y[(a, a)] * l[a]).sum()
    }

    pub fn cartan(&self, j: usize) -> &CMat {
        &self.basis[self.cartan_indices[j]]
    }
}

/// A joint eigenvector of `ad(t)` with nonzero eigenfunctional.
#[derive(Debug, Clone)]
pub struct NumericRoot {
    /// `α(H_j)` on the Cartan basis, where `ad(H) X = i α(H) X`.
    pub functional: Vec<f64>,
    /// The same functional in ambient coordinates (sum-zero).
    pub ambient: Vec<f64>,
    /// Root vector, unit Frobenius norm.
    pub vector: CMat,
    /// Worst `‖ad(H_j) X − i α(H_j) X‖` over the Cartan basis.
    pub residual: f64,
}

pub fn numeric_root_decomposition(alg: &MatrixAlgebra) -> Result<Vec<NumericRoot>> {
    let r = alg.cartan_indices.len();
    // Generic element of t: distinct, non-resonant coefficients.
    let coeffs: Vec<f64> = (0..r).map(|j| 1.0 + 0.618_033_988_75 * j as f64 + 0.1 * 2f64.sqrt() * (j * j) as f64).collect();
    let mut h = CMat::zeros(alg.n, alg.n);
    for (j, c) in coeffs.iter().enumerate() {
        h += alg.cartan(j) * C64::new(*c, 0.0);
    }
    let ad_h = alg.ad(&h).map(|x| C64::new(x, 0.0));
    let herm = &ad_h * i();
    let eig = SymmetricEigen::new(herm);

    let mut order: Vec<usize> = (0..alg.dim()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let nonzero_gap = 1e-6;
    for w in vals.windows(2) {
        if w[0].abs() > nonzero_gap && w[1].abs() > nonzero_gap && (w[1] - w[0]).abs() < nonzero_gap {
            return Err(Error::Oracle(format!("eigenvalues {} and {} cluster; root spaces not separated", w[0], w[1])));
        }
    }

    let ad_cartan: Vec<DMatrix<C64>> = (0..r).map(|j| alg.ad(alg.cartan(j)).map(|x| C64::new(x, 0.0))).collect();
    let mut constraint = DMatrix::<f64>::zeros(alg.n, alg.n);
    for (j, d) in alg.cartan_diagonals.iter().enumerate() {
        for a in 0..alg.n {
            constraint[(j, a)] = d[a];
        }
    }
    for a in 0..alg.n {
        constraint[(alg.n - 1, a)] = 1.0;
    }
    let lu = constraint.lu();

    let mut roots = Vec::new();
    for &k in &order {
        if eig.eigenvalues[k].abs() <= nonzero_gap {
            continue;
        }
        let v: DVector<C64> = eig.eigenvectors.column(k).into_owned();
        let vv = v.dotc(&v).re;
        let mut functional = Vec::with_capacity(r);
        let mut residual: f64 = 0.0;
        for adj in &ad_cartan {
            let w = adj * &v;
            let alpha = (v.dotc(&w) / vv / i()).re;
            residual = residual.max((w - &v * (i() * alpha)).norm() / vv.sqrt());
            functional.push(alpha);
        }
        let mut rhs = DVector::<f64>::zeros(alg.n);
        for (j, a) in functional.iter().enumerate() {
            rhs[j] = *a;
        }
        let ambient = lu
            .solve(&rhs)
            .ok_or_else(|| Error::Oracle("singular Cartan coordinate system".into()))?;
        let coords: Vec<C64> = v.iter().copied().collect();
        let mut x = alg.from_coords(&coords);
        x /= C64::new(norm(&x), 0.0);
        roots.push(NumericRoot { functional, ambient: ambient.iter().copied().collect(), vector: x, residual });
    }
    if roots.len() != alg.n * alg.n - alg.n {
        return Err(Error::Oracle(format!("found {} roots, expected {}", roots.len(), alg.n * alg.n - alg.n)));
    }
    Ok(roots)
}

fn weight_f64(w: &Weight) -> Vec<f64> {
    w.coords.iter().map(to_f64).collect()
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

#[derive(Debug, Clone)]
pub struct RootMatching {
    /// `(numeric index, exact index)` pairs.
    pub pairs: Vec<(usize, usize)>,
    pub max_residual: f64,
    pub max_eigen_residual: f64,
    pub perfect: bool,
}

/// Matches numeric roots of `su(n)` with the exact roots of `A_{n−1}`.
///
/// Both sides use the same ambient normalization, so the fixed scale is 1.
pub fn match_roots(numeric: &[NumericRoot], rs: &RootSystem) -> RootMatching {
    let exact: Vec<Vec<f64>> = rs.roots().iter().map(weight_f64).collect();
    let mut used = vec![false; exact.len()];
    let mut pairs = Vec::new();
    let mut max_residual: f64 = 0.0;
    let mut perfect = numeric.len() == exact.len();
    for (k, nr) in numeric.iter().enumerate() {
        let (best, d) = exact
            .iter()
            .enumerate()
            .map(|(j, e)| (j, dist(&nr.ambient, e)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap_or((usize::MAX, f64::INFINITY));
        if best == usize::MAX || used[best] {
            perfect = false;
            continue;
        }
        used[best] = true;
        max_residual = max_residual.max(d);
        pairs.push((k, best));
    }
    RootMatching {
        max_eigen_residual: numeric.iter().map(|r| r.residual).fold(0.0, f64::max),
        perfect: perfect && used.iter().all(|&u| u),
        pairs,
        max_residual,
    }
}

fn a_series(n: usize) -> Result<RootSystem> {
    RootSystem::build(&SeriesSpec::single(Series::A, n - 1)?)
}

/// Numeric rank of `X ↦ λ∘ad(X)`, i.e. of the matrix `λ([X_a, X_b])`.
pub fn numeric_stabilizer_rank(lambda: &Weight, alg: &MatrixAlgebra) -> usize {
    let l = weight_f64(lambda);
    let d = alg.dim();
    let mut m = DMatrix::<f64>::zeros(d, d);
    for a in 0..d {
        for b in 0..d {
            m[(a, b)] = alg.eval_weight(&l, &bracket(&alg.basis[a], &alg.basis[b])).re;
        }
    }
    let scale = m.iter().fold(1.0f64, |acc, x| acc.max(x.abs()));
    m.svd(false, false).rank(1e-9 * scale)
}

/// `λ([A_α, B_α])` for the root vector `x` of `α`.
pub fn kks_block_value(alg: &MatrixAlgebra, l: &[f64], x: &CMat) -> f64 {
    let xm = -x.adjoint();
    let a = x + &xm;
    let b = (x - &xm) * i();
    alg.eval_weight(l, &bracket(&a, &b)).re
}

/// Re-derives the KKS convention constant on `su(2)` at `λ = ω₁`.
pub fn calibrate_kappa() -> Result<f64> {
    let alg = special_unitary_basis(2)?;
    let rs = a_series(2)?;
    let w1 = rs.fundamental_weights()[0].clone();
    let l = weight_f64(&w1);
    let roots = numeric_root_decomposition(&alg)?;
    let pos = roots
        .iter()
        .find(|r| r.ambient[0] > 0.0)
        .ok_or_else(|| Error::Oracle("no positive root".into()))?;
    let pairing: f64 = l.iter().zip(&pos.ambient).map(|(a, b)| a * b).sum();
    Ok(kks_block_value(&alg, &l, &pos.vector) / pairing)
}

#[derive(Debug, Clone)]
pub struct KksResidualReport {
    pub blocks_checked: usize,
    /// Worst `|oracle − exact| / |exact|` over the KKS blocks.
    pub kks_max_relative: f64,
    /// Worst `|λ([A_β, B_β])|` over singular roots.
    pub singular_max_abs: f64,
    /// Worst finite-difference equivariance residual.
    pub equivariance_max: f64,
    pub worst_pair: Option<(usize, usize)>,
    pub samples: usize,
}

impl KksResidualReport {
    pub fn passes(&self, kks_tol: f64) -> bool {
        self.kks_max_relative < kks_tol && self.singular_max_abs < CONSTRUCTION_TOL && self.equivariance_max < FD_TOL
    }
}

/// KKS block comparison and the moment-map identity
/// `d/dt|₀ ⟨Ad*(exp −tX)λ, Y⟩ = λ([X, Y])` on `samples` random basis pairs.
pub fn numeric_kks_check(lambda: &Weight, alg: &MatrixAlgebra, samples: usize, seed: u64) -> Result<KksResidualReport> {
    let rs = a_series(alg.n)?;
    let (lam, _) = rs.normalize_weight(lambda)?;
    let l = weight_f64(&lam);
    let (order, _) = admissible_positive_system(&lam, &rs)?;
    let omega = kks_matrix(&lam, &order, &rs)?;
    let numeric = numeric_root_decomposition(alg)?;
    let matching = match_roots(&numeric, &rs);
    if !matching.perfect {
        return Err(Error::Oracle("numeric roots do not match exact roots".into()));
    }
    let vector_for = |root: &Weight| -> &CMat {
        let idx = rs.root_index(&root.coords).expect("exact root");
        let (k, _) = matching.pairs.iter().find(|(_, e)| *e == idx).expect("perfect matching");
        &numeric[*k].vector
    };

    let mut kks_max_relative: f64 = 0.0;
    for b in &omega.blocks {
        let exact = to_f64(&b.value);
        let num = kks_block_value(alg, &l, vector_for(&b.root));
        kks_max_relative = kks_max_relative.max((num - exact).abs() / exact.abs());
    }
    let mut singular_max_abs: f64 = 0.0;
    for root in rs.roots() {
        if omega.block_for(root).is_none() && omega.block_for(&root.neg()).is_none() {
            singular_max_abs = singular_max_abs.max(kks_block_value(alg, &l, vector_for(root)).abs());
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut equivariance_max: f64 = 0.0;
    let mut worst_pair = None;
    for _ in 0..samples {
        let a = rng.random_range(0..alg.dim());
        let b = rng.random_range(0..alg.dim());
        let r = equivariance_residual(alg, &l, &alg.basis[a], &alg.basis[b]);
        if r > equivariance_max {
            equivariance_max = r;
            worst_pair = Some((a, b));
        }
    }
    Ok(KksResidualReport {
        blocks_checked: omega.blocks.len(),
        kks_max_relative,
        singular_max_abs,
        equivariance_max,
        worst_pair,
        samples,
    })
}

/// `|D − λ([X,Y])|` with `D` the central difference of
/// `t ↦ λ(exp(tX) Y exp(−tX))` at step [`FD_STEP`].
pub fn equivariance_residual(alg: &MatrixAlgebra, l: &[f64], x: &CMat, y: &CMat) -> f64 {
    let f = |t: f64| {
        let g = (x * C64::new(t, 0.0)).exp();
        let ginv = (x * C64::new(-t, 0.0)).exp();
        alg.eval_weight(l, &(g * y * ginv)).re
    };
    let fd = (f(FD_STEP) - f(-FD_STEP)) / (2.0 * FD_STEP);
    (fd - alg.eval_weight(l, &bracket(x, y)).re).abs()
}

#[derive(Debug, Clone)]
pub struct AuditEntry {
    pub check: String,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct AuditReport {
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn passes(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> Vec<&AuditEntry> {
        self.entries.iter().filter(|e| !e.pass).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.entries.iter().map(|e| e.residual).fold(0.0, f64::max)
    }
}

fn off_span(z: &CMat, x: &CMat) -> f64 {
    let c = inner(x, z) / inner(x, x);
    norm(&(z - x * c))
}

/// Numeric audit of root space properties: conjugation swaps `g^α` and
/// `g^{−α}`, and `[g^α, g^β]` lies in `g^{α+β}`, in `t_ℂ` when `β = −α`, and
/// vanishes otherwise.
pub fn root_property_audit(alg: &MatrixAlgebra) -> Result<AuditReport> {
    const TOL: f64 = 1e-9;
    let roots = numeric_root_decomposition(alg)?;
    let find = |v: &[f64]| roots.iter().position(|r| dist(&r.ambient, v) < 1e-6);
    let label = |r: &NumericRoot| format!("{:?}", r.ambient.iter().map(|x| x.round() as i64).collect::<Vec<_>>());
    let mut entries = Vec::new();
    let mut push = |check: String, residual: f64| entries.push(AuditEntry { check, pass: residual < TOL, residual });

    for r in &roots {
        let neg: Vec<f64> = r.ambient.iter().map(|x| -x).collect();
        let residual = match find(&neg) {
            Some(k) => off_span(&(-r.vector.adjoint()), &roots[k].vector),
            None => f64::INFINITY,
        };
        push(format!("conj g^{} = g^-", label(r)), residual);
    }
    for a in &roots {
        for b in &roots {
            let z = bracket(&a.vector, &b.vector);
            let sum: Vec<f64> = a.ambient.iter().zip(&b.ambient).map(|(x, y)| x + y).collect();
            let name = format!("[g^{}, g^{}]", label(a), label(b));
            let residual = if sum.iter().all(|x| x.abs() < 1e-6) {
                let mut off = z.clone();
                for k in 0..alg.n {
                    off[(k, k)] = C64::new(0.0, 0.0);
                }
                norm(&off)
            } else if let Some(k) = find(&sum) {
                off_span(&z, &roots[k].vector)
            } else {
                norm(&z)
            };
            push(name, residual);
        }
    }
    Ok(AuditReport { entries })
}

/// The frozen KKS constant as a float.
pub fn frozen_kappa() -> f64 {
    KKS_CONVENTION as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes() {
        for (n, d) in [(2, 3), (3, 8), (4, 15)] {
            let alg = special_unitary_basis(n).unwrap();
            assert_eq!(alg.dim(), d);
            assert_eq!(alg.cartan_indices.len(), n - 1);
        }
        assert!(special_unitary_basis(1).is_err());
        assert!(special_unitary_basis(6).is_err());
    }

    #[test]
    fn su2_roots_are_opposite() {
        let alg = special_unitary_basis(2).unwrap();
        let roots = numeric_root_decomposition(&alg).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].functional[0] + roots[1].functional[0]).abs() < 1e-12);
        // ad(diag(i,−i)) has eigenvalues ±2i
        assert!((roots[0].functional[0].abs() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn root_counts_and_matching() {
        for n in 2..=4 {
            let alg = special_unitary_basis(n).unwrap();
            let roots = numeric_root_decomposition(&alg).unwrap();
            assert_eq!(roots.len(), n * n - n);
            let m = match_roots(&roots, &a_series(n).unwrap());
            assert!(m.perfect);
            assert!(m.max_residual < SPECTRAL_TOL, "{}", m.max_residual);
        }
    }

    #[test]
    fn kappa_calibration_matches_frozen_value() {
        assert!((calibrate_kappa().unwrap() - frozen_kappa()).abs() < 1e-12);
    }

    #[test]
    fn zero_weight_gives_zero_values() {
        let alg = special_unitary_basis(3).unwrap();
        let rep = numeric_kks_check(&Weight::zero(3), &alg, 10, 7).unwrap();
        assert_eq!(rep.blocks_checked, 0);
        assert!(rep.singular_max_abs < 1e-12);
        assert!(rep.equivariance_max < 1e-12);
    }

    #[test]
    fn su3_audit() {
        let alg = special_unitary_basis(3).unwrap();
        let rep = root_property_audit(&alg).unwrap();
        assert!(rep.passes(), "{:?}", rep.failures());
        assert_eq!(rep.entries.len(), 6 + 36);
        assert!(alg.invariance_residual(100, 1) < 1e-10);
    }
}
