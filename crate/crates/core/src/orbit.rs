//! Coadjoint orbit analysis at a base point `λ ∈ t*`.
//!
//! The tangent space `T_λ O_λ ≅ g/g_λ` has a real basis `(A_α, B_α)` for the
//! positive non-singular roots, with `A_α ~ X_α + X_{−α}` and
//! `B_α ~ i(X_α − X_{−α})`. In that basis the KKS form is block diagonal
//! with blocks `[[0, c_α], [−c_α, 0]]`, `c_α = κ·(λ, α)`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, QMatrix};
use crate::rational::{dot, q, qf, Q};
use crate::rootsys::{RootOrder, RootSystem, Weight};

/// Convention constant `κ` of the KKS blocks.
///
/// With root vectors normalized to unit Frobenius norm and `λ` extended by
/// zero on root spaces, `λ([A_α, B_α]) = 2(λ, α)` in `su(n)`. The value was
/// fitted once against the `su(2)` oracle at `λ = ω₁` and is frozen here;
/// the oracle suite checks it but never refits it.
pub const KKS_CONVENTION: i64 = 2;

pub fn kappa() -> Q {
    q(KKS_CONVENTION)
}

fn ambient(lambda: &Weight, rs: &RootSystem) -> Result<Weight> {
    Ok(rs.normalize_weight(lambda)?.0)
}

/// `Δ_sing(λ) = {β ∈ Δ : (λ, β) = 0}`, in root-list order.
pub fn singular_roots(lambda: &Weight, rs: &RootSystem) -> Result<Vec<Weight>> {
    let l = ambient(lambda, rs)?;
    Ok(rs
        .roots()
        .iter()
        .filter(|a| dot(&l.coords, &a.coords).is_zero())
        .cloned()
        .collect())
}

pub fn orbit_dimension(lambda: &Weight, rs: &RootSystem) -> Result<usize> {
    Ok(rs.roots().len() - singular_roots(lambda, rs)?.len())
}

/// Checks `α, β ∈ set, α + β ∈ Δ ⇒ α + β ∈ set`; returns the first
/// offending pair.
fn addition_closure_violation(set: &[Weight], rs: &RootSystem) -> Option<(Weight, Weight)> {
    for a in set {
        for b in set {
            let s = a.add(b);
            if rs.is_root(&s.coords) && !set.contains(&s) {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

fn indecomposable(positive: &[Weight]) -> Vec<Weight> {
    positive
        .iter()
        .filter(|a| !positive.iter().any(|b| b != *a && positive.contains(&a.sub(b))))
        .cloned()
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerReport {
    pub lambda: Weight,
    pub singular: Vec<Weight>,
    pub regular: bool,
    pub dim_g_lambda: usize,
    pub dim_g: usize,
    /// Simple roots of `Δ_sing(λ)`; their common kernel is `t₁`.
    pub t1_equations: Vec<Weight>,
    /// `Δ_sing(λ)` is closed under negation and root addition.
    pub closed: bool,
}

pub fn stabilizer_report(lambda: &Weight, rs: &RootSystem) -> Result<StabilizerReport> {
    let l = ambient(lambda, rs)?;
    let singular = singular_roots(&l, rs)?;
    if singular.iter().any(|a| !singular.contains(&a.neg())) {
        return Err(Error::Certificate("singular roots not closed under negation".into()));
    }
    if let Some((a, b)) = addition_closure_violation(&singular, rs) {
        return Err(Error::Certificate(format!(
            "singular roots not closed: {} + {}",
            a.label(),
            b.label()
        )));
    }
    let seed = rs.default_seed();
    let pos: Vec<Weight> = singular
        .iter()
        .filter(|a| dot(&seed.coords, &a.coords).is_positive())
        .cloned()
        .collect();
    Ok(StabilizerReport {
        regular: singular.is_empty(),
        dim_g_lambda: rs.rank() + singular.len(),
        dim_g: rs.dim_g(),
        t1_equations: indecomposable(&pos),
        singular,
        closed: true,
        lambda: l,
    })
}

/// Explicit check of `T₁`-admissibility of a chamber for `Δ₁ = Δ_sing(λ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityCertificate {
    /// `λ` lies in the closure of the chamber.
    pub dominant: bool,
    /// `Δ⁺ ∩ Δ₁` is a positive system of `Δ₁`.
    pub condition_i: bool,
    /// `α ∈ Δ⁺ \ Δ⁺₁`, `β ∈ Δ₁`, `α + β ∈ Δ` ⇒ `α + β ∈ Δ⁺ \ Δ⁺₁`.
    pub condition_ii: bool,
    pub singular_positive: Vec<Weight>,
    /// Perturbation scale `ε` with seed `λ + ε·ρ₀`.
    pub perturbation: Q,
}

impl AdmissibilityCertificate {
    pub fn holds(&self) -> bool {
        self.dominant && self.condition_i && self.condition_ii
    }
}

pub fn check_admissible(lambda: &Weight, order: &RootOrder, rs: &RootSystem, perturbation: Q) -> Result<AdmissibilityCertificate> {
    let l = ambient(lambda, rs)?;
    let delta1 = singular_roots(&l, rs)?;
    let pos1: Vec<Weight> = delta1.iter().filter(|a| order.is_positive(a)).cloned().collect();

    let halves = delta1
        .iter()
        .all(|b| pos1.contains(b) != pos1.contains(&b.neg()));
    let pos1_closed = addition_closure_violation(&pos1, rs)
        .map_or(true, |(a, b)| !delta1.contains(&a.add(&b)));
    let condition_i = halves && pos1_closed && 2 * pos1.len() == delta1.len();

    let mut condition_ii = true;
    'outer: for a in order.positive.iter().filter(|a| !pos1.contains(a)) {
        for b in &delta1 {
            let s = a.add(b);
            if rs.is_root(&s.coords) && !(order.is_positive(&s) && !pos1.contains(&s)) {
                condition_ii = false;
                break 'outer;
            }
        }
    }
    Ok(AdmissibilityCertificate {
        dominant: order.is_dominant(&l)?,
        condition_i,
        condition_ii,
        singular_positive: pos1,
        perturbation,
    })
}

/// A positive system making `λ` dominant, with a verified admissibility
/// certificate.
///
/// Seeds are tried along `λ + 2^{-j} ρ₀`, `j = 0, 1, …` where `ρ₀` is the
/// default regular seed; the first regular seed whose chamber closure
/// contains `λ` wins.
pub fn admissible_positive_system(lambda: &Weight, rs: &RootSystem) -> Result<(RootOrder, AdmissibilityCertificate)> {
    let l = ambient(lambda, rs)?;
    let rho0 = rs.default_seed();
    let mut eps = q(1);
    for _ in 0..512 {
        let seed = l.add(&rho0.scale(&eps));
        let ok = rs.roots().iter().all(|a| {
            let s = dot(&seed.coords, &a.coords);
            let p = dot(&l.coords, &a.coords);
            !s.is_zero() && (!p.is_positive() || s.is_positive())
        });
        if ok {
            let order = rs.positive_roots(&seed)?;
            let cert = check_admissible(&l, &order, rs, eps)?;
            if !cert.holds() {
                return Err(Error::Certificate(format!("admissibility failed for λ = {l}: {cert:?}")));
            }
            return Ok((order, cert));
        }
        eps /= q(2);
    }
    Err(Error::Certificate(format!("no admissible seed found for λ = {l}")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizationCertificate {
    /// `b ∩ b̄ = g_λℂ` on root labels.
    pub conjugate_intersection: bool,
    /// `2·|b_roots| = |Δ| − |Δ_sing|`.
    pub half_dimension: bool,
    /// `b_roots ∪ Δ_sing` is closed under root addition.
    pub bracket_closed: bool,
}

impl PolarizationCertificate {
    pub fn holds(&self) -> bool {
        self.conjugate_intersection && self.half_dimension && self.bracket_closed
    }
}

/// Root data of the subalgebra `b = g_λℂ ⊕ Σ_{α ∈ b_roots} g^α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polarization {
    pub order: RootOrder,
    pub singular: Vec<Weight>,
    pub b_roots: Vec<Weight>,
    pub certificate: PolarizationCertificate,
}

pub fn polarization(lambda: &Weight, order: &RootOrder, rs: &RootSystem) -> Result<Polarization> {
    let l = ambient(lambda, rs)?;
    let adm = check_admissible(&l, order, rs, Q::zero())?;
    if !adm.holds() {
        return Err(Error::Certificate(format!("chamber is not admissible for λ = {l}")));
    }
    let singular = singular_roots(&l, rs)?;
    let b_roots: Vec<Weight> = order
        .positive
        .iter()
        .filter(|a| !singular.contains(a))
        .cloned()
        .collect();

    let mut b: Vec<Weight> = b_roots.iter().chain(&singular).cloned().collect();
    b.sort();
    let conj: Vec<Weight> = b.iter().map(Weight::neg).collect();
    let mut meet: Vec<Weight> = b.iter().filter(|a| conj.contains(a)).cloned().collect();
    meet.sort();
    let mut sing_sorted = singular.clone();
    sing_sorted.sort();

    let certificate = PolarizationCertificate {
        conjugate_intersection: meet == sing_sorted,
        half_dimension: 2 * b_roots.len() == rs.roots().len() - singular.len(),
        bracket_closed: addition_closure_violation(&b, rs).is_none(),
    };
    if !certificate.holds() {
        return Err(Error::Certificate(format!("polarization checks failed: {certificate:?}")));
    }
    Ok(Polarization {
        order: order.clone(),
        singular,
        b_roots,
        certificate,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KksBlock {
    pub root: Weight,
    pub value: Q,
}

/// The KKS form on `T_λ O_λ` in the basis `A_α, B_α` (α in block order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KksMatrix {
    pub blocks: Vec<KksBlock>,
}

impl KksMatrix {
    pub fn dim(&self) -> usize {
        2 * self.blocks.len()
    }

    pub fn basis_labels(&self) -> Vec<(String, String)> {
        self.blocks
            .iter()
            .map(|b| (format!("A[{}]", b.root.label()), format!("B[{}]", b.root.label())))
            .collect()
    }

    pub fn entries(&self) -> QMatrix {
        let n = self.dim();
        let mut m = vec![vec![Q::zero(); n]; n];
        for (k, b) in self.blocks.iter().enumerate() {
            m[2 * k][2 * k + 1] = b.value.clone();
            m[2 * k + 1][2 * k] = -b.value.clone();
        }
        m
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.entries())
    }

    pub fn block_for(&self, root: &Weight) -> Option<&KksBlock> {
        self.blocks.iter().find(|b| &b.root == root)
    }

    pub fn scale(&self, t: &Q) -> KksMatrix {
        KksMatrix {
            blocks: self
                .blocks
                .iter()
                .map(|b| KksBlock { root: b.root.clone(), value: &b.value * t })
                .collect(),
        }
    }
}

pub fn kks_matrix(lambda: &Weight, order: &RootOrder, rs: &RootSystem) -> Result<KksMatrix> {
    let l = ambient(lambda, rs)?;
    let k = kappa();
    let mut blocks = Vec::new();
    for a in &order.positive {
        let p = dot(&l.coords, &a.coords);
        if p.is_zero() {
            continue;
        }
        let value = &k * p;
        blocks.push(KksBlock { root: a.clone(), value });
    }
    if blocks.len() * 2 != orbit_dimension(&l, rs)? {
        return Err(Error::Certificate("KKS block count does not match orbit dimension".into()));
    }
    Ok(KksMatrix { blocks })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagrangianCheck {
    pub ok: bool,
    /// A pair `(α, β)` in `p` on which the form does not vanish.
    pub witness: Option<(String, String)>,
    pub dim_matches: bool,
}

/// Checks `ω_λ(p, p) = 0` and `dim p = rank(ω)/2`.
///
/// For `X_α = (A_α − iB_α)/2` the complexified form gives
/// `ω(X_α, X_β) = 0` unless `β = −α`, where it equals `±(i/2)·c_α`;
/// brackets landing in `g^{α+β}`, `α + β ≠ 0`, are killed by `λ`.
pub fn lagrangian_check(p: &Polarization, omega: &KksMatrix, lambda: &Weight) -> LagrangianCheck {
    let value = |a: &Weight| -> Q {
        omega
            .block_for(a)
            .or_else(|| omega.block_for(&a.neg()))
            .map(|b| b.value.clone())
            .unwrap_or_else(Q::zero)
    };
    let mut witness = None;
    'outer: for a in &p.b_roots {
        for b in &p.b_roots {
            if a.add(b).is_zero() && !value(a).is_zero() {
                witness = Some((a.label(), b.label()));
                break 'outer;
            }
        }
    }
    // Blocks must be the KKS values of this λ, otherwise ω and p disagree.
    let consistent = omega.blocks.iter().all(|b| {
        lambda.dim() == b.root.dim() && b.value == kappa() * dot(&lambda.coords, &b.root.coords)
    });
    let dim_matches = 2 * p.b_roots.len() == omega.rank();
    LagrangianCheck {
        ok: witness.is_none() && dim_matches && consistent,
        witness,
        dim_matches,
    }
}

/// Complexified value `ω(X_α, X_{−α}) = (i/2)·c_α`, returned as its
/// imaginary part.
pub fn complex_pairing_imag(omega: &KksMatrix, alpha: &Weight) -> Q {
    omega
        .block_for(alpha)
        .map(|b| &b.value * qf(1, 2))
        .or_else(|| omega.block_for(&alpha.neg()).map(|b| -&b.value * qf(1, 2)))
        .unwrap_or_else(Q::zero)
}
