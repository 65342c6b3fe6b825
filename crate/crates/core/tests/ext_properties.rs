use std::sync::Arc;

use gradalg::fixtures;
use gradalg::module::GradedModule;
use gradalg::resolution::{ext_graded, global_dimension_probe, GlobalDimension};
use gradalg::ungraded::ext_ungraded;
use gradalg::GradedAlgebra;
use proptest::prelude::*;

fn corpus() -> Vec<Arc<GradedAlgebra>> {
    fixtures::corpus().into_iter().map(|(_, a)| Arc::new(a)).collect()
}

#[test]
fn semisimple_ext_is_the_identity() {
    let alg = Arc::new(fixtures::semisimple(3));
    for a in 0..3 {
        for b in 0..3 {
            let m = GradedModule::simple(alg.clone(), a).unwrap();
            let n = GradedModule::simple(alg.clone(), b).unwrap();
            let expect = usize::from(a == b);
            assert_eq!(ext_ungraded(&m, &n, 3), [expect, 0, 0, 0]);
            let t = ext_graded(&m, &n, 3, None).unwrap();
            assert_eq!(t.get(0, 0), Some(expect));
            assert_eq!(t.nonzero().count(), expect);
        }
    }
    assert_eq!(global_dimension_probe(&alg, 2), GlobalDimension::FiniteValue(0));
}

#[test]
fn finite_global_dimension_means_ext_dies() {
    for alg in corpus() {
        if let GlobalDimension::FiniteValue(d) = global_dimension_probe(&alg, 4) {
            for a in 0..alg.vertex_count() {
                for b in 0..alg.vertex_count() {
                    let m = GradedModule::simple(alg.clone(), a).unwrap();
                    let n = GradedModule::simple(alg.clone(), b).unwrap();
                    let e = ext_ungraded(&m, &n, d + 2);
                    assert!(e[d + 1..].iter().all(|&x| x == 0));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn twisting_the_source_shifts_the_table(k in 0usize..9, a in 0usize..4, b in 0usize..4, t in -3i64..=3) {
        let alg = corpus()[k].clone();
        let n = alg.vertex_count();
        let m = GradedModule::simple(alg.clone(), a % n).unwrap();
        let nn = GradedModule::simple(alg.clone(), b % n).unwrap();
        let base = ext_graded(&m, &nn, 3, Some((-16, 16))).unwrap();
        let shifted = ext_graded(&m.twist(t), &nn, 3, Some((-16, 16))).unwrap();
        for i in 0..=3 {
            for j in -12..=12 {
                prop_assert_eq!(shifted.get(i, j), base.get(i, j - t));
            }
        }
    }

    #[test]
    fn graded_rows_sum_to_ungraded(k in 0usize..9, a in 0usize..4, b in 0usize..4) {
        let alg = corpus()[k].clone();
        let n = alg.vertex_count();
        let m = GradedModule::projective(alg.clone(), a % n).unwrap();
        let nn = GradedModule::simple(alg.clone(), b % n).unwrap();
        let t = ext_graded(&m, &nn, 2, None).unwrap();
        let u = ext_ungraded(&m, &nn, 2);
        for i in 0..=2 {
            prop_assert_eq!(t.row_sum(i), u[i]);
        }
    }
}
