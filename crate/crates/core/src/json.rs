//! JSON output, versioned by a top-level `"schema"` field.

use serde_json::{json, Map, Value};

use crate::alexander::{FactorizationReport, GradedMap, Pluecker};
use crate::free_group::PhiValuation;
use crate::lagrangian::LagRelation;
use crate::linalg::{rref, Mat, MatQ};
use crate::ring::{LaurentPoly, Scalar};
use crate::surface::PointedHermModule;

pub const SCHEMA: u64 = 1;

pub fn matrix<T: Scalar + std::fmt::Display>(m: &Mat<T>) -> Value {
    json!(m.to_strings())
}

pub fn phi(p: &PhiValuation) -> Value {
    json!(p.values().iter().map(|e| LaurentPoly::monomial(p.nvars(), e.clone(), 1).to_string()).collect::<Vec<_>>())
}

pub fn object(h: &PointedHermModule) -> Value {
    json!({ "g": h.genus(), "phi": phi(h.phi()) })
}

/// Rows of the reduced echelon form of the relation's basis.
pub fn echelon_rows(m: &MatQ) -> MatQ {
    let (r, pivots) = rref(&m.transpose());
    r.select_rows(&(0..pivots.len()).collect::<Vec<_>>())
}

pub fn relation_body(rel: &LagRelation) -> Value {
    json!({
        "source": object(rel.source()),
        "target": object(rel.target()),
        "pointed": rel.is_pointed(),
        "basis": matrix(&echelon_rows(rel.space().basis())),
    })
}

pub fn graded_body(m: &GradedMap) -> Value {
    json!({
        "src_rank": m.src_rank(),
        "tgt_rank": m.tgt_rank(),
        "shift": m.shift(),
        "blocks": m.blocks().iter().map(matrix).collect::<Vec<_>>(),
    })
}

pub fn factorization_body(r: &FactorizationReport) -> Value {
    json!({
        "alex": graded_body(&r.alex),
        "ord": r.ord.to_string(),
        "ord_normalized": r.ord.normal_form().to_string(),
        "mag_w": graded_body(&r.mag_w),
        "unit": r.unit.as_ref().map(|u| u.to_string()),
        "discrepancy": r.discrepancy,
    })
}

pub fn pluecker_body(p: &Pluecker) -> Value {
    json!({
        "basis": p.basis.iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "wedge": p.wedge.terms().map(|(m, c)| json!({ "indices": crate::alexander::indices(*m), "coeff": c.to_string() })).collect::<Vec<_>>(),
        "section": matrix(&p.section),
        "operator": graded_body(&p.operator),
    })
}

/// Adds `"schema"` and `"kind"` to an object body.
pub fn document(kind: &str, body: Value) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), json!(SCHEMA));
    out.insert("kind".into(), json!(kind));
    if let Value::Object(m) = body {
        out.extend(m);
    } else {
        out.insert("value".into(), body);
    }
    Value::Object(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_relation_document() {
        let phi = PhiValuation::new(1, vec![vec![0], vec![1]]).unwrap();
        let h = PointedHermModule::build(1, &phi).unwrap();
        let doc = document("relation", relation_body(&LagRelation::identity(&h)));
        assert_eq!(doc["schema"], 1);
        assert_eq!(doc["source"]["phi"], json!(["1", "t1"]));
        assert_eq!(doc["basis"], json!([["1", "0", "1", "0"], ["0", "1", "0", "1"]]));
    }
}
