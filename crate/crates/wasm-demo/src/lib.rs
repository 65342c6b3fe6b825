//! Browser bindings: analyse an algebra, tabulate graded Ext, and evaluate
//! the cone of the Cartan matrix on a graded group. Every function takes and
//! returns JSON strings. The `*_json` functions are the plain-Rust versions
//! used by the bindings and by native tests.

use std::sync::Arc;

use gradalg::ktheory::{cartan_matrix, cone_invariant, k0_singularity, motive_triviality, GradedGroupSpec};
use gradalg::lemma::{verify_decomposition, ModuleSelector, DEFAULT_J_CAP};
use gradalg::resolution::{ext_graded_from, minimal_graded_resolution};
use gradalg::ungraded::ext_ungraded;
use gradalg::{validate_grading, GradedAlgebra};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Ext tables beyond this are too slow for a page.
pub const MAX_IMAX: usize = 8;

fn algebra(text: &str) -> Result<Arc<GradedAlgebra>, String> {
    GradedAlgebra::from_text(text).map(Arc::new).map_err(|e| e.to_string())
}

pub fn analyze_json(algebra_text: &str) -> Result<Value, String> {
    let alg = algebra(algebra_text)?;
    let c = cartan_matrix(&alg).map_err(|e| e.to_string())?;
    let verdict = motive_triviality(c.matrix());
    let basis: Vec<String> = (0..alg.dim()).map(|i| alg.path_name(i)).collect();
    Ok(json!({
        "field": alg.field().to_string(),
        "n": alg.vertex_count(),
        "dim": alg.dim(),
        "degree_dims": alg.degree_dims(),
        "basis": basis,
        "loewy_length": alg.loewy_length(),
        "grading_ok": validate_grading(&alg).passes(),
        "cartan": c.to_json(),
        "cartan_text": c.matrix().to_string(),
        "k0_singularity": k0_singularity(c.matrix()).to_string(),
        "motive": verdict.to_string(),
    }))
}

pub fn ext_json(algebra_text: &str, m: &str, n: &str, i_max: usize) -> Result<Value, String> {
    if i_max > MAX_IMAX {
        return Err(format!("i_max is limited to {MAX_IMAX} here"));
    }
    let alg = algebra(algebra_text)?;
    let build = |s: &str| s.parse::<ModuleSelector>().and_then(|sel| sel.build(&alg)).map_err(|e| e.to_string());
    let (mm, nn) = (build(m)?, build(n)?);
    let res = minimal_graded_resolution(&mm, i_max + 1);
    let table = ext_graded_from(&res, &nn, i_max, None).map_err(|e| e.to_string())?;
    let ungraded = ext_ungraded(&mm, &nn, i_max);
    // the decomposition check only applies inside its degree hypotheses
    let lemma = match verify_decomposition(&mm, &nn, i_max, None, DEFAULT_J_CAP) {
        Ok(r) => r.verdict.to_string(),
        Err(e) => e.to_string(),
    };
    Ok(json!({
        "table": table.to_string(),
        "row_sums": (0..=i_max).map(|i| table.row_sum(i)).collect::<Vec<_>>(),
        "ungraded": ungraded,
        "decomposition": lemma,
    }))
}

pub fn cone_json(algebra_text: &str, spec_text: &str) -> Result<Value, String> {
    let alg = algebra(algebra_text)?;
    let c = cartan_matrix(&alg).map_err(|e| e.to_string())?;
    let spec = match GradedGroupSpec::preset(spec_text.trim()) {
        Some(s) => s,
        None => GradedGroupSpec::parse(spec_text).map_err(|e| e.to_string())?,
    };
    let cone = cone_invariant(c.matrix(), &spec);
    Ok(json!({ "text": cone.to_string(), "cone": cone.to_json() }))
}

fn wrap(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn analyze(algebra_text: &str) -> Result<String, JsValue> {
    wrap(analyze_json(algebra_text))
}

#[wasm_bindgen]
pub fn ext(algebra_text: &str, m: &str, n: &str, i_max: usize) -> Result<String, JsValue> {
    wrap(ext_json(algebra_text, m, n, i_max))
}

#[wasm_bindgen]
pub fn cone(algebra_text: &str, spec_text: &str) -> Result<String, JsValue> {
    wrap(cone_json(algebra_text, spec_text))
}

#[cfg(test)]
mod tests {
    use super::*;

    const DUAL: &str = include_str!("../../../corpus/dual_numbers.json");
    const A2: &str = include_str!("../../../corpus/a2.json");

    #[test]
    fn analyze_reports_k_theory() {
        let v = analyze_json(DUAL).unwrap();
        assert_eq!(v["dim"], 2);
        assert_eq!(v["k0_singularity"], "Z/2");
        let v = analyze_json(A2).unwrap();
        assert_eq!(v["motive"], "trivial motive (det = 1)");
        assert!(analyze_json("{").is_err());
    }

    #[test]
    fn ext_table_and_check() {
        let v = ext_json(DUAL, "S1", "S1", 3).unwrap();
        assert_eq!(v["ungraded"], json!([1, 1, 1, 1]));
        assert_eq!(v["row_sums"], json!([1, 1, 1, 1]));
        assert_eq!(v["decomposition"], "pass");
        let v = ext_json(DUAL, "S1(1)", "S1", 1).unwrap();
        assert!(v["decomposition"].as_str().unwrap().contains("hypothesis"));
        assert!(ext_json(DUAL, "S1", "S1", 99).is_err());
        assert!(ext_json(DUAL, "S7", "S1", 1).is_err());
    }

    #[test]
    fn cone_with_preset_and_file() {
        let v = cone_json(DUAL, "K0-only").unwrap();
        assert_eq!(v["cone"]["degrees"][0]["cokernel"]["text"], "Z/2");
        let v = cone_json(DUAL, r#"{"degrees":[{"degree":0,"torsion":[2]}]}"#).unwrap();
        assert_eq!(v["cone"]["degrees"][1]["kernel"]["text"], "Z/2");
        let v = cone_json(A2, r#"{"degrees":[{"degree":3,"free_rank":1,"torsion":[4]}]}"#).unwrap();
        assert_eq!(v["cone"]["trivial"], true);
    }
}
