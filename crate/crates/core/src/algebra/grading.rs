//! Validation of the semi-simple grading `Λ = ⊕ Λ_d` with `Λ₀ = k^n`.

use num_traits::{One, Zero};
use serde::Serialize;

use super::build::GradedAlgebra;
use crate::linalg::{zero_vector, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingReport {
    /// Every basis element has non-negative degree.
    pub nonnegative: bool,
    /// `Λ₀` is spanned by the trivial paths.
    pub degree_zero_is_trivial_paths: bool,
    /// The trivial paths are orthogonal idempotents summing to 1.
    pub complete_idempotents: bool,
    /// `Λ_{≥1}` is nilpotent; the exponent is recorded.
    pub positive_part_nilpotent: bool,
    pub nilpotency_order: usize,
    /// `Λ / Λ_{≥1}` is isomorphic to `k^n` as an algebra.
    pub quotient_semisimple: bool,
    /// `Λ_{≥1}` coincides with `rad(Λ)`, the span of all paths of length ≥ 1.
    pub positive_part_is_radical: bool,
    pub positive_part_dim: usize,
    pub vertex_count: usize,
}

impl GradingReport {
    pub fn passes(&self) -> bool {
        self.nonnegative
            && self.degree_zero_is_trivial_paths
            && self.complete_idempotents
            && self.positive_part_nilpotent
            && self.quotient_semisimple
            && self.positive_part_is_radical
    }
}

pub fn validate_grading(alg: &GradedAlgebra) -> GradingReport {
    let field = alg.field();
    let dim = alg.dim();
    let n = alg.vertex_count();
    let basis = alg.basis();

    let degree_zero: Vec<usize> = (0..dim).filter(|&i| basis[i].degree == 0).collect();
    let degree_zero_is_trivial_paths = degree_zero.len() == n
        && degree_zero.iter().all(|&i| basis[i].is_trivial());

    let mut complete_idempotents = true;
    let mut sum = zero_vector(dim);
    for i in 0..n {
        sum[i] = field.one();
        for j in 0..n {
            let expect = if i == j { vec![(i, field.one())] } else { Vec::new() };
            if alg.mul_basis(i, j) != &expect {
                complete_idempotents = false;
            }
        }
    }
    for k in 0..dim {
        let v = alg.unit_vector(k);
        if alg.mul(&sum, &v) != v || alg.mul(&v, &sum) != v {
            complete_idempotents = false;
        }
    }

    let positive: Vec<usize> = (0..dim).filter(|&i| basis[i].degree >= 1).collect();
    let positive_space =
        Subspace::span(field, dim, positive.iter().map(|&i| alg.unit_vector(i)));

    // powers of Λ_{≥1}: (Λ_{≥1})^m, by multiplying spanning vectors
    let mut power = positive_space.clone();
    let mut nilpotency_order = 1;
    let mut positive_part_nilpotent = true;
    while !power.is_zero() {
        if nilpotency_order > dim + 1 {
            positive_part_nilpotent = false;
            break;
        }
        let mut next = Vec::new();
        for v in power.basis() {
            for &p in &positive {
                next.push(alg.mul(v, &alg.unit_vector(p)));
            }
        }
        power = Subspace::span(field, dim, next);
        nilpotency_order += 1;
    }

    // Λ/Λ_{≥1}: structure constants of the trivial paths modulo Λ_{≥1}
    let mut quotient_semisimple = true;
    for i in 0..n {
        for j in 0..n {
            let prod = alg.mul(&alg.unit_vector(i), &alg.unit_vector(j));
            for (k, c) in prod.iter().enumerate() {
                if basis[k].degree >= 1 {
                    continue;
                }
                let expect = i == j && k == i;
                if expect != c.is_one() || (!expect && !c.is_zero()) {
                    quotient_semisimple = false;
                }
            }
        }
    }

    let radical = alg.radical_power(1);
    let positive_part_is_radical = radical == positive_space;

    GradingReport {
        nonnegative: true,
        degree_zero_is_trivial_paths,
        complete_idempotents,
        positive_part_nilpotent,
        nilpotency_order: if positive_part_nilpotent { nilpotency_order } else { 0 },
        quotient_semisimple,
        positive_part_is_radical,
        positive_part_dim: positive.len(),
        vertex_count: n,
    }
}
