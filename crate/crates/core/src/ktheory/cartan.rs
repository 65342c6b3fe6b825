//! Cartan matrices and the map `K₀(Perf Λ) → K₀(D^b(mod Λ))`.

use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::snf::IntMatrix;
use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::module::GradedModule;

/// `C[i][j]` = multiplicity of `S_j` in `P_i`, vertices in presentation
/// order. `K₀` of the inclusion sends the row vector of `[P]`-coordinates
/// `x` to `x · C` in `[S]`-coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    labels: Vec<String>,
    matrix: IntMatrix,
}

impl CartanMatrix {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        self.matrix.get(i, j)
    }

    pub fn to_json(&self) -> Value {
        json!({ "vertices": self.labels, "entries": self.matrix.to_json() })
    }
}

/// `dim e_i Λ e_j`, read off the normal-form basis.
pub fn cartan_by_corners(alg: &GradedAlgebra) -> IntMatrix {
    let n = alg.vertex_count();
    let rows: Vec<Vec<u64>> =
        (0..n).map(|i| (0..n).map(|j| alg.corner_dim(i, j) as u64).collect()).collect();
    IntMatrix::from_rows(&rows)
}

/// Counts simple factors of each `P_i` layer by layer down its radical
/// series.
pub fn cartan_by_composition_series(alg: &Arc<GradedAlgebra>) -> Result<IntMatrix> {
    let n = alg.vertex_count();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut counts = vec![0u64; n];
        let mut layer = GradedModule::projective(alg.clone(), i)?;
        while !layer.is_zero() {
            for b in layer.top().basis() {
                counts[b.vertex] += 1;
            }
            layer = layer.radical().0;
        }
        rows.push(counts);
    }
    Ok(IntMatrix::from_rows(&rows))
}

/// Both routes, which must agree.
pub fn cartan_matrix(alg: &Arc<GradedAlgebra>) -> Result<CartanMatrix> {
    let a = cartan_by_corners(alg);
    let b = cartan_by_composition_series(alg)?;
    if a != b {
        return Err(Error::Consistency(format!(
            "Cartan matrix routes disagree:\nfrom corners\n{a}from composition series\n{b}"
        )));
    }
    if a.entry_sum() != BigInt::from(alg.dim()) {
        return Err(Error::Consistency("Cartan entries do not sum to dim Λ".into()));
    }
    let labels = (0..alg.vertex_count()).map(|v| alg.vertex_label(v).to_string()).collect();
    Ok(CartanMatrix { labels, matrix: a })
}

/// A free abelian group with a named basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeK0 {
    pub basis: Vec<String>,
}

impl FreeK0 {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// `K₀(Perf Λ)` with basis the indecomposable projectives.
pub fn k0_perf(alg: &GradedAlgebra) -> FreeK0 {
    FreeK0 { basis: (0..alg.vertex_count()).map(|v| format!("[P{}]", alg.vertex_label(v))).collect() }
}

/// `K₀(D^b(mod Λ))` with basis the simples.
pub fn k0_db(alg: &GradedAlgebra) -> FreeK0 {
    FreeK0 { basis: (0..alg.vertex_count()).map(|v| format!("[S{}]", alg.vertex_label(v))).collect() }
}

/// The class of each `P_i` in the simple basis, from its composition factors.
pub fn projective_classes(alg: &Arc<GradedAlgebra>) -> Result<Vec<Vec<usize>>> {
    (0..alg.vertex_count())
        .map(|i| Ok(GradedModule::projective(alg.clone(), i)?.composition_multiplicities()))
        .collect()
}

/// Renders `[P_i] = Σ c_j [S_j]`.
pub fn format_class(alg: &GradedAlgebra, i: usize, class: &[usize]) -> String {
    let terms: Vec<String> = class
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(j, &c)| {
            let s = format!("[S{}]", alg.vertex_label(j));
            if c == 1 {
                s
            } else {
                format!("{c}{s}")
            }
        })
        .collect();
    let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
    format!("[P{}] = {rhs}", alg.vertex_label(i))
}
