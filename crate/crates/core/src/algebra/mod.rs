//! Graded basic algebras `kQ/I` presented by a quiver with homogeneous
//! admissible relations.

mod build;
mod grading;
mod presentation;

pub use build::{BasisPath, GradedAlgebra, SparseVec, MAX_PATHS_PER_DEGREE};
pub use grading::{validate_grading, GradingReport};
pub use presentation::{
    AlgebraDocument, Arrow, ArrowDoc, CoeffDoc, LabelDoc, OptionsDoc, Presentation, Quiver,
    Relation, TermDoc, DEFAULT_PATH_CAP,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::fixtures;

    fn names(alg: &GradedAlgebra) -> Vec<String> {
        (0..alg.dim()).map(|i| alg.path_name(i)).collect()
    }

    #[test]
    fn dual_numbers() {
        let alg = fixtures::dual_numbers();
        assert_eq!(names(&alg), ["e1", "x"]);
        assert_eq!(alg.dim(), 2);
        assert_eq!(alg.loewy_length(), 2);
    }

    #[test]
    fn a2_hereditary() {
        let alg = fixtures::a2();
        assert_eq!(names(&alg), ["e1", "e2", "a"]);
        assert_eq!(alg.loewy_length(), 2);
    }

    #[test]
    fn semisimple_two_vertices() {
        let alg = fixtures::semisimple(2);
        assert_eq!(alg.dim(), 2);
        assert_eq!(alg.loewy_length(), 1);
        assert!(alg.radical_power(1).is_zero());
    }

    #[test]
    fn truncated_polynomial_radical_powers() {
        let alg = fixtures::truncated_polynomial(3);
        assert_eq!(alg.radical_power(0).dim(), 3);
        assert_eq!(alg.radical_power(1).dim(), 2);
        let r2 = alg.radical_power(2);
        assert_eq!(r2.dim(), 1);
        assert!(r2.contains(alg.field(), &alg.unit_vector(2)));
        assert_eq!(names(&alg)[2], "x·x");
        assert!(alg.radical_power(3).is_zero());

        let dual = fixtures::dual_numbers();
        assert_eq!(dual.radical_power(1).basis(), &[dual.unit_vector(1)]);
        assert!(dual.radical_power(2).is_zero());
    }

    #[test]
    fn commutativity_relation_is_rewritten() {
        // k[x,y]/(x², y²) with xy = yx: basis e, x, y, one of xy/yx
        let alg = fixtures::commutative_xy_squares();
        assert_eq!(alg.dim(), 4);
        assert_eq!(alg.loewy_length(), 3);
        assert_eq!(alg.degree_dims(), vec![1, 2, 1]);
        let x = alg.presentation().quiver.arrow_index("x").unwrap();
        let y = alg.presentation().quiver.arrow_index("y").unwrap();
        let xy = alg.reduce_path(0, &[x, y]);
        let yx = alg.reduce_path(0, &[y, x]);
        assert_eq!(xy, yx);
        assert!(alg.reduce_path(0, &[x, y, x]).is_empty());
        assert!(alg.is_associative());
    }

    #[test]
    fn mixed_length_relation_radical_powers() {
        // a·b·c = e·f with deg f = 2: the length-2 path e·f lies in rad³
        let alg = fixtures::mixed_length();
        let f = alg.field();
        let names = names(&alg);
        let ef = names.iter().position(|n| n == "e·f").expect("e·f is normal");
        assert!(!names.contains(&"a·b·c".to_string()));
        assert!(alg.radical_power(3).contains(f, &alg.unit_vector(ef)));
        assert_eq!(alg.radical_power(3).dim(), 1);
        assert!(alg.radical_power(4).is_zero());
        assert_eq!(alg.loewy_length(), 4);
        assert!(alg.is_associative());
    }

    #[test]
    fn corpus_invariants() {
        for (name, alg) in fixtures::corpus() {
            assert!(alg.is_associative(), "{name}");
            let n = alg.vertex_count();
            let total: usize =
                (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| alg.corner_dim(i, j)).sum();
            assert_eq!(total, alg.dim(), "{name}");
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    for (k, _) in alg.mul_basis(i, j) {
                        assert_eq!(
                            alg.basis()[*k].degree,
                            alg.basis()[i].degree + alg.basis()[j].degree,
                            "{name}"
                        );
                    }
                }
            }
            let report = validate_grading(&alg);
            assert!(report.passes(), "{name}: {report:?}");
            let rebuilt = GradedAlgebra::from_text(&alg.presentation().to_json()).unwrap();
            assert_eq!(rebuilt, alg, "{name}");
        }
    }

    #[test]
    fn grading_report_examples() {
        let r = validate_grading(&fixtures::truncated_polynomial(3));
        assert!(r.passes());
        assert_eq!(r.nilpotency_order, 3);
        assert_eq!(r.positive_part_dim, 2);
        let r = validate_grading(&fixtures::semisimple(2));
        assert!(r.passes());
        assert_eq!(r.positive_part_dim, 0);
    }

    #[test]
    fn non_nilpotent_is_rejected() {
        let text = r#"{"field":"Q","vertices":["1"],"arrows":[{"name":"x","source":"1","target":"1"}],
            "options":{"path_cap":8}}"#;
        let err = GradedAlgebra::from_text(text).unwrap_err();
        assert!(matches!(err, Error::Validation(ref m) if m.contains("cap")), "{err}");

        let free2 = r#"{"field":"Q","vertices":["1"],"arrows":[
            {"name":"x","source":"1","target":"1"},{"name":"y","source":"1","target":"1"}]}"#;
        assert!(GradedAlgebra::from_text(free2).is_err());
    }

    #[test]
    fn prime_field_changes_dimension() {
        // x·y + y·x with xx = yy = 0: in characteristic 2 this is the commutator
        let text = |f: &str| {
            format!(
                r#"{{"field":"{f}","vertices":["1"],"arrows":[
                {{"name":"x","source":"1","target":"1"}},{{"name":"y","source":"1","target":"1"}}],
                "relations":[[{{"coeff":1,"path":["x","x"]}}],[{{"coeff":1,"path":["y","y"]}}],
                [{{"coeff":1,"path":["x","y"]}},{{"coeff":1,"path":["y","x"]}}],
                [{{"coeff":2,"path":["x","y"]}}]]}}"#
            )
        };
        // over Q, 2xy = 0 kills xy and yx; over F2 the last relation vanishes
        assert_eq!(GradedAlgebra::from_text(&text("Q")).unwrap().dim(), 3);
        assert_eq!(GradedAlgebra::from_text(&text("F2")).unwrap().dim(), 4);
    }
}
