//! Cartan matrices, Smith normal form, Grothendieck groups and the cone of
//! the Cartan matrix on graded abelian groups.

mod cartan;
mod group;
mod snf;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::{json, Value};

pub use cartan::{
    cartan_by_composition_series, cartan_by_corners, cartan_matrix, format_class, k0_db, k0_perf,
    projective_classes, CartanMatrix, FreeK0,
};
pub use group::{AbelianGroup, GradedGroupSpec};
pub use snf::{int_to_json, smith_normal_form, IntMatrix, SnfDecomposition};

/// `coker(C : ℤⁿ → ℤⁿ)`: the Grothendieck group of the singularity category.
pub fn k0_singularity(c: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(c);
    AbelianGroup::from_parts(c.rows() - snf.rank(), snf.invariant_factors())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotiveVerdict {
    pub determinant: BigInt,
    pub k0_singularity: AbelianGroup,
    /// `det C = ±1`, so the cone vanishes for every invariant.
    pub trivial: bool,
}

pub fn motive_triviality(c: &IntMatrix) -> MotiveVerdict {
    let determinant = c.determinant();
    MotiveVerdict { trivial: determinant.abs().is_one(), k0_singularity: k0_singularity(c), determinant }
}

impl fmt::Display for MotiveVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.trivial {
            write!(f, "trivial motive (det = {})", self.determinant)
        } else {
            write!(f, "nontrivial motive (det = {}), K0(Dsg) = {}", self.determinant, self.k0_singularity)
        }
    }
}

impl MotiveVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "determinant": snf::int_to_json(&self.determinant),
            "trivial": self.trivial,
            "k0_singularity": self.k0_singularity.to_json(),
            "text": self.to_string(),
        })
    }
}

/// `0 → coker(C on A_i) → π_i(cone) → ker(C on A_{i−1}) → 0`. The extension
/// is left unresolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeDegree {
    pub degree: i64,
    pub cokernel: AbelianGroup,
    pub kernel: AbelianGroup,
}

impl ConeDegree {
    pub fn is_zero(&self) -> bool {
        self.cokernel.is_zero() && self.kernel.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeResult {
    pub degrees: Vec<ConeDegree>,
    pub trivial: bool,
}

impl ConeResult {
    pub fn degree(&self, i: i64) -> Option<&ConeDegree> {
        self.degrees.iter().find(|d| d.degree == i)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "trivial": self.trivial,
            "degrees": self.degrees.iter().map(|d| json!({
                "degree": d.degree,
                "cokernel": d.cokernel.to_json(),
                "kernel": d.kernel.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for ConeResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree  {:<20}  ker C on A_(i-1)", "coker C on A_i")?;
        for d in &self.degrees {
            writeln!(f, "{:>6}  {:<20}  {}", d.degree, d.cokernel.to_string(), d.kernel)?;
        }
        write!(f, "cone {}", if self.trivial { "vanishes" } else { "is nonzero" })
    }
}

/// Cokernel and kernel of `C` acting diagonally on `A_iⁿ`, degree by degree,
/// for square `C`.
pub fn cone_invariant(c: &IntMatrix, spec: &GradedGroupSpec) -> ConeResult {
    assert!(c.is_square(), "cone of a non-square matrix");
    let diag = smith_normal_form(c).diagonal();
    let on = |a: &AbelianGroup, quotient: bool| {
        diag.iter().fold(AbelianGroup::zero(), |acc, d| {
            acc.direct_sum(&if quotient { a.quotient_by(d) } else { a.kernel_of(d) })
        })
    };
    let degrees: BTreeSet<i64> = spec.support().flat_map(|i| [i, i + 1]).collect();
    let degrees: Vec<ConeDegree> = degrees
        .into_iter()
        .map(|i| ConeDegree { degree: i, cokernel: on(&spec.get(i), true), kernel: on(&spec.get(i - 1), false) })
        .collect();
    let trivial = degrees.iter().all(ConeDegree::is_zero);
    ConeResult { degrees, trivial }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;
    use std::sync::Arc;

    use num_traits::Zero;

    use super::*;
    use crate::fixtures;

    fn cartan(alg: crate::GradedAlgebra) -> (Arc<crate::GradedAlgebra>, CartanMatrix) {
        let alg = Arc::new(alg);
        let c = cartan_matrix(&alg).unwrap();
        (alg, c)
    }

    #[test]
    fn cartan_examples() {
        let (_, c) = cartan(fixtures::dual_numbers());
        assert_eq!(c.matrix(), &IntMatrix::from_rows(&[vec![2]]));
        let (_, c) = cartan(fixtures::a2());
        assert_eq!(c.matrix(), &IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]));
        let (_, c) = cartan(fixtures::semisimple(3));
        assert_eq!(c.matrix(), &IntMatrix::identity(3));
        let (_, c) = cartan(fixtures::nakayama_cyclic_rad2());
        assert_eq!(c.matrix(), &IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]));
    }

    #[test]
    fn routes_agree_on_corpus() {
        for (name, alg) in fixtures::corpus() {
            let alg = Arc::new(alg);
            let a = cartan_by_corners(&alg);
            let b = cartan_by_composition_series(&alg).unwrap();
            assert_eq!(a, b, "{name}");
            let c = cartan_matrix(&alg).unwrap();
            for i in 0..c.size() {
                assert!(*c.entry(i, i) >= BigInt::one(), "{name}");
            }
        }
    }

    #[test]
    fn projective_class_expansion_is_the_cartan_row() {
        let (alg, c) = cartan(fixtures::a2());
        let classes = projective_classes(&alg).unwrap();
        assert_eq!(format_class(&alg, 0, &classes[0]), "[P1] = [S1] + [S2]");
        assert_eq!(k0_perf(&alg).rank(), k0_db(&alg).rank());
        let (alg, _) = cartan(fixtures::dual_numbers());
        assert_eq!(format_class(&alg, 0, &projective_classes(&alg).unwrap()[0]), "[P1] = 2[S1]");
        for (i, row) in classes.iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                assert_eq!(*c.entry(i, j), BigInt::from(m));
            }
        }
    }

    #[test]
    fn singularity_k0_examples() {
        assert_eq!(k0_singularity(&IntMatrix::from_rows(&[vec![2]])).to_string(), "Z/2");
        assert!(k0_singularity(&IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]])).is_zero());
        assert_eq!(k0_singularity(&IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]])).to_string(), "Z");
        assert_eq!(k0_singularity(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 0], vec![0, 0]])).to_string(), "Z^2 + Z/2");
        assert_eq!(k0_singularity(&IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]])).to_string(), "Z");
    }

    #[test]
    fn singularity_k0_by_enumeration() {
        // ℤ/im[m] has exactly m cosets, represented by 0..m
        for m in 2..12i64 {
            let g = k0_singularity(&IntMatrix::from_rows(&[vec![m]]));
            assert_eq!(g.order(), Some(BigInt::from(m)));
            let reps: BTreeSet<i64> = (-3 * m..3 * m).map(|x| x.rem_euclid(m)).collect();
            assert_eq!(reps.len() as i64, m);
        }
    }

    #[test]
    fn motive_examples() {
        let v = motive_triviality(&IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]));
        assert!(v.trivial);
        assert_eq!(v.to_string(), "trivial motive (det = 1)");
        let v = motive_triviality(&IntMatrix::from_rows(&[vec![2]]));
        assert!(!v.trivial);
        assert_eq!(v.k0_singularity.to_string(), "Z/2");
        let v = motive_triviality(&IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]));
        assert_eq!(v.determinant, BigInt::zero());
        assert_eq!(v.to_string(), "nontrivial motive (det = 0), K0(Dsg) = Z");
        assert!(motive_triviality(&IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])).trivial);
    }

    #[test]
    fn cone_examples() {
        let two = IntMatrix::from_rows(&[vec![2]]);
        let r = cone_invariant(&two, &GradedGroupSpec::k0_only());
        assert_eq!(r.degree(0).unwrap().cokernel.to_string(), "Z/2");
        assert!(r.degree(0).unwrap().kernel.is_zero());
        assert!(r.degree(1).unwrap().is_zero());
        assert!(!r.trivial);

        let spec = GradedGroupSpec::new(BTreeMap::from([(0, AbelianGroup::cyclic(2))]));
        let r = cone_invariant(&two, &spec);
        assert_eq!(r.degree(0).unwrap().cokernel.to_string(), "Z/2");
        assert_eq!(r.degree(1).unwrap().kernel.to_string(), "Z/2");
        assert!(r.degree(1).unwrap().cokernel.is_zero());

        let r = cone_invariant(&IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]), &spec);
        assert_eq!(r.degree(0).unwrap().cokernel.to_string(), "Z/2");
        assert_eq!(r.degree(1).unwrap().kernel.to_string(), "Z/2");
    }

    fn sample_specs() -> Vec<GradedGroupSpec> {
        let g = |f: usize, t: &[i64]| AbelianGroup::from_parts(f, t.iter().map(|&m| BigInt::from(m)).collect());
        vec![
            GradedGroupSpec::k0_only(),
            GradedGroupSpec::new(BTreeMap::from([(0, g(0, &[2]))])),
            GradedGroupSpec::new(BTreeMap::from([(0, g(1, &[])), (1, g(0, &[2]))])),
            GradedGroupSpec::new(BTreeMap::from([(-1, g(2, &[3]))])),
            GradedGroupSpec::new(BTreeMap::from([(0, g(1, &[])), (3, g(0, &[4, 6]))])),
            GradedGroupSpec::new(BTreeMap::from([(2, g(0, &[5]))])),
            GradedGroupSpec::new(BTreeMap::from([(0, g(3, &[2, 2]))])),
            GradedGroupSpec::new(BTreeMap::from([(0, g(1, &[])), (1, g(1, &[])), (2, g(0, &[7]))])),
            GradedGroupSpec::new(BTreeMap::from([(-3, g(0, &[9])), (5, g(1, &[8]))])),
            GradedGroupSpec::new(BTreeMap::from([(1, g(0, &[12]))])),
        ]
    }

    #[test]
    fn unimodular_cone_vanishes_and_conversely() {
        let specs = sample_specs();
        let mats = [
            IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]),
            IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]),
            IntMatrix::from_rows(&[vec![2]]),
            IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]),
            IntMatrix::from_rows(&[vec![3, 1], vec![1, 1]]),
        ];
        for c in &mats {
            let verdict = motive_triviality(c);
            let all_zero = specs.iter().all(|s| cone_invariant(c, s).trivial);
            assert_eq!(verdict.trivial, all_zero, "{c}");
        }
    }

    #[test]
    fn degree_zero_cokernel_is_k0_singularity() {
        for (name, alg) in fixtures::corpus() {
            let c = cartan_matrix(&Arc::new(alg)).unwrap();
            let r = cone_invariant(c.matrix(), &GradedGroupSpec::k0_only());
            assert_eq!(r.degree(0).unwrap().cokernel, k0_singularity(c.matrix()), "{name}");
        }
    }
}
