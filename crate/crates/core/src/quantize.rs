//! Integrality of `λ` against a character lattice of the maximal torus, and
//! the resulting orbit-to-representation verdict.
//!
//! The `2πi` relating `λ` to the differential of a character is absorbed into
//! the lattice normalization: `λ` is integral when it lies in the chosen
//! lattice in ambient coordinates.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::orbit::singular_roots;
use crate::rational::{dot, is_integer, parse_q, q, Q};
use crate::rootsys::{RootSystem, Weight};
use crate::weyl::{dominant_representative, WeylGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeKind {
    /// Weight lattice: `2(λ,α)/(α,α) ∈ ℤ` for all roots.
    SimplyConnected,
    /// Root lattice.
    Adjoint,
    Custom,
}

/// A lattice between the root lattice and the weight lattice. Torus
/// coordinates are always required to be integers for the two built-in
/// kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSpec {
    pub kind: LatticeKind,
    /// Integer combinations of these span the lattice (custom only).
    pub generators: Vec<Weight>,
}

impl LatticeSpec {
    pub fn simply_connected() -> Self {
        LatticeSpec { kind: LatticeKind::SimplyConnected, generators: Vec::new() }
    }

    pub fn adjoint() -> Self {
        LatticeSpec { kind: LatticeKind::Adjoint, generators: Vec::new() }
    }

    /// Validates root lattice ⊆ L ⊆ weight lattice.
    pub fn custom(generators: Vec<Weight>, rs: &RootSystem) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in &generators {
            let (g, projected) = rs.normalize_weight(g)?;
            if projected {
                return Err(Error::InvalidLattice(format!("generator {g} leaves the A-series hyperplane")));
            }
            gens.push(g);
        }
        for g in &gens {
            for a in rs.roots() {
                let c = q(2) * dot(&g.coords, &a.coords) / dot(&a.coords, &a.coords);
                if !is_integer(&c) {
                    return Err(Error::InvalidLattice(format!(
                        "generator {g} pairs to {c} with the coroot of {}",
                        a.label()
                    )));
                }
            }
        }
        for a in rs.roots() {
            if !lattice_member(&gens, a) {
                return Err(Error::InvalidLattice(format!("root {} is not in the lattice", a.label())));
            }
        }
        Ok(LatticeSpec { kind: LatticeKind::Custom, generators: gens })
    }

    /// One generator per line, rationals separated by commas or whitespace;
    /// `#` starts a comment.
    pub fn parse_custom(text: &str, rs: &RootSystem) -> Result<Self> {
        let mut gens = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let coords = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(parse_q)
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::parse(Some(n + 1), e.to_string()))?;
            if coords.len() != rs.dim() {
                return Err(Error::parse(
                    Some(n + 1),
                    format!("expected {} coordinates, got {}", rs.dim(), coords.len()),
                ));
            }
            gens.push(Weight::ambient(coords));
        }
        Self::custom(gens, rs)
    }
}

/// Exact membership of `v` in the ℤ-span of `gens`.
pub fn lattice_member(gens: &[Weight], v: &Weight) -> bool {
    let d = v.dim();
    let mut cols: Vec<Vec<Q>> = (0..d)
        .map(|i| gens.iter().map(|g| g.coords[i].clone()).collect())
        .collect();
    for (row, x) in cols.iter_mut().zip(&v.coords) {
        row.push(x.clone());
    }
    let (m, _) = linalg::clear_denominators(&cols);
    let n = gens.len();
    let a: Vec<Vec<BigInt>> = m.iter().map(|r| r[..n].to_vec()).collect();
    let b: Vec<BigInt> = m.iter().map(|r| r[n].clone()).collect();
    if n == 0 {
        return b.iter().all(Zero::is_zero);
    }
    linalg::solve_integer(&a, d, n, &b).is_some()
}

fn torus_integral(l: &Weight, rs: &RootSystem) -> bool {
    rs.spec().torus_range().all(|i| is_integer(&l.coords[i]))
}

pub fn is_integral(lambda: &Weight, lattice: &LatticeSpec, rs: &RootSystem) -> Result<bool> {
    let (l, _) = rs.normalize_weight(lambda)?;
    Ok(match lattice.kind {
        LatticeKind::SimplyConnected => {
            torus_integral(&l, rs)
                && rs.roots().iter().all(|a| {
                    is_integer(&(q(2) * dot(&l.coords, &a.coords) / dot(&a.coords, &a.coords)))
                })
        }
        LatticeKind::Adjoint => {
            let mut gens = rs.simple_roots().to_vec();
            for i in rs.spec().torus_range() {
                let mut e = Weight::zero(rs.dim());
                e.coords[i] = Q::one();
                gens.push(e);
            }
            lattice_member(&gens, &l)
        }
        LatticeKind::Custom => lattice_member(&lattice.generators, &l),
    })
}

/// Audit record that `λ` vanishes on every singular root, i.e. on the
/// semisimple directions of `g_λ`, so the character extends from `T` to the
/// stabilizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendabilityCertificate {
    pub lambda: Weight,
    pub records: Vec<(Weight, Q)>,
}

pub fn extendability_certificate(lambda: &Weight, rs: &RootSystem) -> Result<ExtendabilityCertificate> {
    let (l, _) = rs.normalize_weight(lambda)?;
    let records: Vec<(Weight, Q)> = singular_roots(&l, rs)?
        .into_iter()
        .map(|b| {
            let p = dot(&l.coords, &b.coords);
            (b, p)
        })
        .collect();
    if let Some((b, p)) = records.iter().find(|(_, p)| !p.is_zero()) {
        return Err(Error::Certificate(format!("λ pairs to {p} with singular root {}", b.label())));
    }
    Ok(ExtendabilityCertificate { lambda: l, records })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BorelWeil {
    /// Holomorphic sections form the irreducible representation with this
    /// highest weight.
    Irreducible { highest_weight: Weight },
    ZeroSections,
}

impl BorelWeil {
    pub fn is_nonzero(&self) -> bool {
        matches!(self, BorelWeil::Irreducible { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepVerdict {
    pub lambda: Weight,
    pub integral: bool,
    pub dominant_rep: Weight,
    /// Simple-reflection word taking `λ` to `dominant_rep`.
    pub word: Vec<usize>,
    pub is_dominant_input: bool,
    pub borel_weil: BorelWeil,
}

/// Uses the standard chamber; `w` must be generated from the same root system.
pub fn orbit_to_rep(lambda: &Weight, lattice: &LatticeSpec, rs: &RootSystem, w: &WeylGroup) -> Result<RepVerdict> {
    let (l, _) = rs.normalize_weight(lambda)?;
    let order = rs.default_order();
    let (dominant_rep, word) = dominant_representative(&l, &order, w)?;
    let integral = is_integral(&l, lattice, rs)?;
    if is_integral(&dominant_rep, lattice, rs)? != integral {
        return Err(Error::Certificate(format!("integrality is not Weyl invariant at {l}")));
    }
    let borel_weil = if integral {
        BorelWeil::Irreducible { highest_weight: dominant_rep.clone() }
    } else {
        BorelWeil::ZeroSections
    };
    Ok(RepVerdict {
        is_dominant_input: word.is_empty(),
        lambda: l,
        integral,
        dominant_rep,
        word,
        borel_weil,
    })
}
