//! Finitely generated abelian groups in invariant-factor form, and graded
//! families of them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::snf::{int_to_json, smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// `ℤ^free_rank ⊕ ℤ/m₁ ⊕ … ⊕ ℤ/m_k` with `2 ≤ m₁ | m₂ | … | m_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(m: impl Into<BigInt>) -> Self {
        Self::from_parts(0, vec![m.into()])
    }

    /// `ℤ^free ⊕ ⊕ ℤ/m` for arbitrary cyclic orders, brought to canonical
    /// form. An order of 0 contributes a free summand, ±1 contributes nothing.
    pub fn from_parts(free: usize, orders: Vec<BigInt>) -> Self {
        let mut free_rank = free;
        let mut rest = Vec::new();
        for m in orders {
            let m = m.abs();
            if m.is_zero() {
                free_rank += 1;
            } else if !m.is_one() {
                rest.push(m);
            }
        }
        // invariant factors of diag(rest)
        let k = rest.len();
        let mut d = IntMatrix::zeros(k, k);
        for (i, m) in rest.into_iter().enumerate() {
            d.set(i, i, m);
        }
        let torsion = smith_normal_form(&d).invariant_factors().into_iter().filter(|x| !x.is_one()).collect();
        AbelianGroup { free_rank, torsion }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of a finite group.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let orders = self.torsion.iter().chain(&other.torsion).cloned().collect();
        Self::from_parts(self.free_rank + other.free_rank, orders)
    }

    /// `A / dA`.
    pub fn quotient_by(&self, d: &BigInt) -> AbelianGroup {
        let d = d.abs();
        if d.is_zero() {
            return self.clone();
        }
        let mut orders = vec![d.clone(); self.free_rank];
        orders.extend(self.torsion.iter().map(|m| m.gcd(&d)));
        Self::from_parts(0, orders)
    }

    /// `{a ∈ A : d·a = 0}`.
    pub fn kernel_of(&self, d: &BigInt) -> AbelianGroup {
        if d.is_zero() {
            return self.clone();
        }
        Self::from_parts(0, self.torsion.iter().map(|m| m.gcd(d)).collect())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "free_rank": self.free_rank,
            "torsion": self.torsion.iter().map(int_to_json).collect::<Vec<_>>(),
            "text": self.to_string(),
        })
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|m| format!("Z/{m}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecDocument {
    degrees: Vec<SpecDegree>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecDegree {
    degree: i64,
    #[serde(default)]
    free_rank: usize,
    #[serde(default)]
    torsion: Vec<u64>,
}

/// A finitely supported family `i ↦ A_i`, standing for the homotopy groups
/// of an invariant evaluated on the ground field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedGroupSpec {
    degrees: BTreeMap<i64, AbelianGroup>,
}

impl GradedGroupSpec {
    pub fn new(degrees: BTreeMap<i64, AbelianGroup>) -> Self {
        let degrees = degrees.into_iter().filter(|(_, g)| !g.is_zero()).collect();
        GradedGroupSpec { degrees }
    }

    /// `ℤ` in degree 0 and nothing else.
    pub fn k0_only() -> Self {
        Self::new(BTreeMap::from([(0, AbelianGroup::free(1))]))
    }

    /// Looks up a built-in preset by name.
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "K0-only" | "k0-only" | "k0" => Some(Self::k0_only()),
            _ => None,
        }
    }

    /// Parses `{"degrees": [{"degree": i, "free_rank": r, "torsion": [m, …]}]}`.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: SpecDocument = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("group spec, line {} column {}: {e}", e.line(), e.column())))?;
        let mut degrees = BTreeMap::new();
        for entry in doc.degrees {
            if let Some(&bad) = entry.torsion.iter().find(|&&m| m < 2) {
                return Err(Error::Validation(format!(
                    "group spec: torsion order {bad} in degree {} must be at least 2",
                    entry.degree
                )));
            }
            let g = AbelianGroup::from_parts(entry.free_rank, entry.torsion.into_iter().map(BigInt::from).collect());
            if degrees.insert(entry.degree, g).is_some() {
                return Err(Error::Validation(format!("group spec: degree {} given twice", entry.degree)));
            }
        }
        Ok(Self::new(degrees))
    }

    pub fn get(&self, degree: i64) -> AbelianGroup {
        self.degrees.get(&degree).cloned().unwrap_or_else(AbelianGroup::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.degrees.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degrees": self.degrees.iter().map(|(d, g)| json!({
                "degree": d,
                "free_rank": g.free_rank,
                "torsion": g.torsion.iter().map(int_to_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>()
        })
    }
}
