//! The full orbit pipeline and its JSON / text renderings.
//!
//! JSON output is canonical: object keys are sorted, rationals are `p/q`
//! strings in lowest terms, and every list has a deterministic order.

use serde_json::{json, Map, Value};

use crate::error::Result;
use crate::orbit::{
    admissible_positive_system, kks_matrix, lagrangian_check, polarization, stabilizer_report,
    AdmissibilityCertificate, KksMatrix, LagrangianCheck, Polarization, StabilizerReport,
};
use crate::quantize::{extendability_certificate, orbit_to_rep, BorelWeil, ExtendabilityCertificate, LatticeKind, LatticeSpec, RepVerdict};
use crate::rational::fmt_q;
use crate::rootsys::{RootSystem, Weight};
use crate::weyl::{weyl_orbit, WeylGroup};

#[derive(Debug, Clone)]
pub struct OrbitReport {
    pub series: String,
    pub lambda: Weight,
    /// The input was off an A-series hyperplane and got projected.
    pub projected: bool,
    pub stabilizer: StabilizerReport,
    pub admissibility: AdmissibilityCertificate,
    pub polarization: Polarization,
    pub kks: KksMatrix,
    pub lagrangian: LagrangianCheck,
    pub extendability: ExtendabilityCertificate,
    pub lattice: LatticeKind,
    pub verdict: RepVerdict,
    pub weyl_order: usize,
    pub weyl_orbit_size: usize,
}

/// Stabilizer → admissible chamber → polarization → KKS → integrality →
/// verdict.
pub fn analyze_orbit(lambda: &Weight, rs: &RootSystem, lattice: &LatticeSpec, w: &WeylGroup) -> Result<OrbitReport> {
    let (l, projected) = rs.normalize_weight(lambda)?;
    let stabilizer = stabilizer_report(&l, rs)?;
    let (order, admissibility) = admissible_positive_system(&l, rs)?;
    let pol = polarization(&l, &order, rs)?;
    let kks = kks_matrix(&l, &order, rs)?;
    let lagrangian = lagrangian_check(&pol, &kks, &l);
    if !lagrangian.ok {
        return Err(crate::Error::Certificate(format!("Lagrangian check failed: {lagrangian:?}")));
    }
    let extendability = extendability_certificate(&l, rs)?;
    let verdict = orbit_to_rep(&l, lattice, rs, w)?;
    let orbit = weyl_orbit(&l, w)?;
    Ok(OrbitReport {
        series: rs.spec().to_string(),
        lambda: l,
        projected,
        stabilizer,
        admissibility,
        polarization: pol,
        kks,
        lagrangian,
        extendability,
        lattice: lattice.kind,
        verdict,
        weyl_order: w.order(),
        weyl_orbit_size: orbit.points.len(),
    })
}

pub fn weight_json(w: &Weight) -> Value {
    Value::Array(w.coords.iter().map(|x| Value::String(fmt_q(x))).collect())
}

fn roots_json(ws: &[Weight]) -> Value {
    let mut sorted = ws.to_vec();
    sorted.sort();
    Value::Array(sorted.iter().map(weight_json).collect())
}

pub fn lattice_name(k: LatticeKind) -> &'static str {
    match k {
        LatticeKind::SimplyConnected => "sc",
        LatticeKind::Adjoint => "adjoint",
        LatticeKind::Custom => "custom",
    }
}

impl OrbitReport {
    pub fn to_json(&self) -> Value {
        let a = &self.admissibility;
        let p = &self.polarization.certificate;
        let v = &self.verdict;
        let borel_weil = match &v.borel_weil {
            BorelWeil::Irreducible { highest_weight } => json!({
                "kind": "irreducible",
                "highest_weight": weight_json(highest_weight),
            }),
            BorelWeil::ZeroSections => json!({ "kind": "zero" }),
        };
        let extend: Vec<Value> = self
            .extendability
            .records
            .iter()
            .map(|(r, x)| json!({ "root": weight_json(r), "pairing": fmt_q(x) }))
            .collect();
        json!({
            "series": self.series,
            "lambda": weight_json(&self.lambda),
            "projected": self.projected,
            "singular_roots": roots_json(&self.stabilizer.singular),
            "regular": self.stabilizer.regular,
            "dim_orbit": self.stabilizer.dim_g - self.stabilizer.dim_g_lambda,
            "dim_stabilizer": self.stabilizer.dim_g_lambda,
            "dim_group": self.stabilizer.dim_g,
            "t1_equations": roots_json(&self.stabilizer.t1_equations),
            "positive_system": roots_json(&self.polarization.order.positive),
            "b_roots": roots_json(&self.polarization.b_roots),
            "kks_blocks": self.kks.blocks.iter().map(|b| json!({
                "root": weight_json(&b.root),
                "value": fmt_q(&b.value),
            })).collect::<Vec<_>>(),
            "weyl": { "order": self.weyl_order, "orbit_size": self.weyl_orbit_size },
            "verdict": {
                "lattice": lattice_name(self.lattice),
                "integral": v.integral,
                "dominant_rep": weight_json(&v.dominant_rep),
                "word": v.word,
                "is_dominant_input": v.is_dominant_input,
                "borel_weil": borel_weil,
            },
            "certificates": {
                "singular_closed": self.stabilizer.closed,
                "admissibility": {
                    "dominant": a.dominant,
                    "condition_i": a.condition_i,
                    "condition_ii": a.condition_ii,
                    "perturbation": fmt_q(&a.perturbation),
                },
                "polarization": {
                    "conjugate_intersection": p.conjugate_intersection,
                    "half_dimension": p.half_dimension,
                    "bracket_closed": p.bracket_closed,
                },
                "lagrangian": { "ok": self.lagrangian.ok, "dim_matches": self.lagrangian.dim_matches },
                "extendability": extend,
            },
        })
    }

    pub fn to_text(&self) -> String {
        let labels = |ws: &[Weight]| {
            let mut s: Vec<String> = ws.iter().map(Weight::label).collect();
            s.sort();
            if s.is_empty() { "-".to_string() } else { s.join(", ") }
        };
        let v = &self.verdict;
        let mut out = String::new();
        out.push_str(&format!("series          {}\n", self.series));
        out.push_str(&format!("lambda          {}{}\n", self.lambda, if self.projected { "  (projected)" } else { "" }));
        out.push_str(&format!("regular         {}\n", self.stabilizer.regular));
        out.push_str(&format!("singular roots  {}\n", labels(&self.stabilizer.singular)));
        out.push_str(&format!(
            "dimensions      orbit {}, stabilizer {}, group {}\n",
            self.stabilizer.dim_g - self.stabilizer.dim_g_lambda,
            self.stabilizer.dim_g_lambda,
            self.stabilizer.dim_g
        ));
        out.push_str(&format!("positive system {}\n", labels(&self.polarization.order.positive)));
        out.push_str(&format!("b roots         {}\n", labels(&self.polarization.b_roots)));
        for b in &self.kks.blocks {
            out.push_str(&format!("kks block       {}: {}\n", b.root.label(), fmt_q(&b.value)));
        }
        out.push_str(&format!("weyl            order {}, orbit size {}\n", self.weyl_order, self.weyl_orbit_size));
        out.push_str(&format!("lattice         {}\n", lattice_name(self.lattice)));
        out.push_str(&format!("integral        {}\n", v.integral));
        out.push_str(&format!("dominant rep    {}\n", v.dominant_rep));
        out.push_str(&format!(
            "borel-weil      {}\n",
            match &v.borel_weil {
                BorelWeil::Irreducible { highest_weight } => format!("irreducible, highest weight {highest_weight}"),
                BorelWeil::ZeroSections => "zero section space".to_string(),
            }
        ));
        out
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn canonical_json(v: &Value) -> String {
    let sorted = sort_keys(v);
    let mut s = serde_json::to_string_pretty(&sorted).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn sort_keys(v: &Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            let mut out = Map::new();
            for k in keys {
                out.insert(k.clone(), sort_keys(&m[k]));
            }
            Value::Object(out)
        }
        Value::Array(a) => Value::Array(a.iter().map(sort_keys).collect()),
        other => other.clone(),
    }
}
