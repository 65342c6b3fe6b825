//! The shipped example algebras.

use crate::algebra::GradedAlgebra;

/// `(file name, document text)` for every algebra in the shipped corpus,
/// in manifest order.
pub const CORPUS: &[(&str, &str)] = &[
    ("dual_numbers.json", include_str!("../../../corpus/dual_numbers.json")),
    ("truncated_cubic.json", include_str!("../../../corpus/truncated_cubic.json")),
    ("a2.json", include_str!("../../../corpus/a2.json")),
    ("a3_zero_relation.json", include_str!("../../../corpus/a3_zero_relation.json")),
    ("nakayama_cyclic_rad2.json", include_str!("../../../corpus/nakayama_cyclic_rad2.json")),
    ("commutative_rad2_zero.json", include_str!("../../../corpus/commutative_rad2_zero.json")),
    ("commutative_xy_squares.json", include_str!("../../../corpus/commutative_xy_squares.json")),
    ("dual_numbers_deg2_f3.json", include_str!("../../../corpus/dual_numbers_deg2_f3.json")),
    ("commutative_square.json", include_str!("../../../corpus/commutative_square.json")),
];

fn load(name: &str) -> GradedAlgebra {
    let text = CORPUS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .unwrap_or_else(|| panic!("no corpus entry {name}"));
    GradedAlgebra::from_text(text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn corpus() -> Vec<(&'static str, GradedAlgebra)> {
    CORPUS.iter().map(|(n, _)| (*n, load(n))).collect()
}

/// `k[x]/(x²)`, `deg x = 1`.
pub fn dual_numbers() -> GradedAlgebra {
    load("dual_numbers.json")
}

/// `k[x]/(x^m)`, `deg x = 1`.
pub fn truncated_polynomial(m: usize) -> GradedAlgebra {
    let path = vec!["\"x\""; m].join(",");
    GradedAlgebra::from_text(&format!(
        r#"{{"field":"Q","vertices":["1"],"arrows":[{{"name":"x","source":"1","target":"1"}}],
        "relations":[[{{"coeff":1,"path":[{path}]}}]]}}"#
    ))
    .unwrap()
}

/// The path algebra of `1 → 2`.
pub fn a2() -> GradedAlgebra {
    load("a2.json")
}

/// `1 → 2 → 3` with the composite zero.
pub fn a3_zero_relation() -> GradedAlgebra {
    load("a3_zero_relation.json")
}

/// Two-cycle `1 ⇄ 2` with all paths of length 2 zero.
pub fn nakayama_cyclic_rad2() -> GradedAlgebra {
    load("nakayama_cyclic_rad2.json")
}

/// `k[x,y]/(x², xy, y²)`.
pub fn commutative_rad2_zero() -> GradedAlgebra {
    load("commutative_rad2_zero.json")
}

/// `k[x,y]/(x², y²)`.
pub fn commutative_xy_squares() -> GradedAlgebra {
    load("commutative_xy_squares.json")
}

/// `k^n`, no arrows.
pub fn semisimple(n: usize) -> GradedAlgebra {
    let vertices: Vec<String> = (1..=n).map(|i| format!("\"{i}\"")).collect();
    GradedAlgebra::from_text(&format!(r#"{{"field":"Q","vertices":[{}]}}"#, vertices.join(",")))
        .unwrap()
}

/// `1 →a 2 →b 3 →c 4` and `1 →e 5 →f 4` with `deg f = 2` and `abc = ef`.
pub fn mixed_length() -> GradedAlgebra {
    GradedAlgebra::from_text(
        r#"{"field":"Q","vertices":["1","2","3","4","5"],"arrows":[
            {"name":"a","source":"1","target":"2"},
            {"name":"b","source":"2","target":"3"},
            {"name":"c","source":"3","target":"4"},
            {"name":"e","source":"1","target":"5"},
            {"name":"f","source":"5","target":"4","degree":2}],
          "relations":[[{"coeff":1,"path":["a","b","c"]},{"coeff":-1,"path":["e","f"]}]]}"#,
    )
    .unwrap()
}
