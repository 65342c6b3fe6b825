//! Integer matrices and Smith normal form over ℤ.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged integer matrix");
            data.extend(r.iter().cloned().map(Into::into));
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entry_sum(&self) -> BigInt {
        self.data.iter().sum()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Nested arrays; entries that do not fit in an `i64` become strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| Value::Array(self.row(i).iter().map(int_to_json).collect()))
                .collect(),
        )
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += q · row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = q * self.get(src, j);
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += q · col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = q * self.get(i, src);
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = -&self.data[idx];
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

pub fn int_to_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

/// `U · C · V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d₁ | d₂ | … | d_r` followed by zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl SnfDecomposition {
    /// Diagonal entries of `D`, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// The nonzero invariant factors.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Re-checks every defining property against `c`.
    pub fn verify(&self, c: &IntMatrix) -> Result<(), String> {
        if self.u.mul(c).mul(&self.v) != self.d {
            return Err("U·C·V differs from D".into());
        }
        for (name, m) in [("U", &self.u), ("V", &self.v)] {
            if !m.determinant().abs().is_one() {
                return Err(format!("{name} is not unimodular"));
            }
        }
        for i in 0..self.d.rows {
            for j in 0..self.d.cols {
                if i != j && !self.d.get(i, j).is_zero() {
                    return Err(format!("D has an off-diagonal entry at ({i}, {j})"));
                }
            }
        }
        let diag = self.diagonal();
        let r = self.rank();
        if diag[r..].iter().any(|d| !d.is_zero()) || diag[..r].iter().any(|d| !d.is_positive()) {
            return Err("diagonal is not positive factors followed by zeros".into());
        }
        for w in diag[..r].windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(format!("{} does not divide {}", w[0], w[1]));
            }
        }
        Ok(())
    }
}

/// Smith normal form. The pivot at each stage is the nonzero entry of least
/// absolute value in the remaining block, ties going to the lowest
/// (row, column).
pub fn smith_normal_form(c: &IntMatrix) -> SnfDecomposition {
    let (m, n) = (c.rows, c.cols);
    let mut d = c.clone();
    let mut u = IntMatrix::identity(m);
    // V is accumulated transposed so column operations become row operations
    let mut vt = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        while let Some((pi, pj)) = pivot(&d, t) {
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            vt.swap_rows(t, pj);

            let p = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = d.get(i, t).div_floor(&p);
                if !q.is_zero() {
                    d.add_row(i, t, &-&q);
                    u.add_row(i, t, &-&q);
                }
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let q = d.get(t, j).div_floor(&p);
                if !q.is_zero() {
                    d.add_col(j, t, &-&q);
                    vt.add_row(j, t, &-&q);
                }
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    d.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    let mut v = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            v.set(i, j, vt.get(j, i).clone());
        }
    }
    SnfDecomposition { u, v, d }
}

fn pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag(c: &IntMatrix) -> Vec<i64> {
        let snf = smith_normal_form(c);
        snf.verify(c).unwrap();
        snf.diagonal().iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn identity_is_fixed() {
        let i3 = IntMatrix::identity(3);
        let snf = smith_normal_form(&i3);
        assert_eq!(snf.u, i3);
        assert_eq!(snf.v, i3);
        assert_eq!(snf.d, i3);
    }

    #[test]
    fn small_examples() {
        assert_eq!(diag(&IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]])), [1, 0]);
        assert_eq!(diag(&IntMatrix::from_rows(&[vec![2]])), [2]);
        assert_eq!(diag(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]])), [1, 6]);
        assert_eq!(diag(&IntMatrix::from_rows(&[vec![0, 0], vec![0, 0]])), [0, 0]);
        assert_eq!(diag(&IntMatrix::from_rows(&[vec![-4]])), [4]);
        assert_eq!(diag(&IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])), [2, 6, 12]);
        assert_eq!(diag(&IntMatrix::from_rows(&[vec![6, 4], vec![4, 6], vec![1, 1]])), [1, 2]);
    }

    #[test]
    fn pivot_prefers_smallest_then_lowest_position() {
        let c = IntMatrix::from_rows(&[vec![5, -3], vec![3, 7]]);
        assert_eq!(pivot(&c, 0), Some((0, 1)));
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let c = IntMatrix::from_rows(&[vec![0, 2, 1], vec![3, -1, 4], vec![2, 2, 0]]);
        // 0·(0−8) − 2·(0−8) + 1·(6+2)
        assert_eq!(c.determinant(), BigInt::from(24));
        assert_eq!(IntMatrix::zeros(0, 0).determinant(), BigInt::one());
        assert_eq!(IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).determinant(), BigInt::zero());
    }

    fn matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-9i64..=9, c), r)
                .prop_map(|rows| IntMatrix::from_rows(&rows))
        })
    }

    proptest! {
        #[test]
        fn snf_is_sound(c in matrix()) {
            let snf = smith_normal_form(&c);
            prop_assert!(snf.verify(&c).is_ok(), "{:?}", snf.verify(&c));
            if c.is_square() {
                let prod: BigInt = snf.diagonal().iter().product();
                prop_assert_eq!(c.determinant().abs(), prod);
            }
        }

        #[test]
        fn snf_is_deterministic(c in matrix()) {
            prop_assert_eq!(smith_normal_form(&c), smith_normal_form(&c));
        }
    }
}
