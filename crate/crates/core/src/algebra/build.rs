//! Construction of the normal-form basis and multiplication table.
//!
//! Relations are homogeneous, so the ideal they generate splits by degree.
//! For each degree `d` we span the ideal by all products `u·r·v` of total
//! degree `d` and row-reduce it against the paths of degree `d`, listed in
//! decreasing length-lex order. The pivot columns are the leading paths of
//! the ideal; the remaining paths form the normal-form basis of `Λ_d`, and
//! the reduced rows rewrite every leading path into that basis. Degrees are
//! processed until a run of `max arrow degree` consecutive zero pieces shows
//! that everything above vanishes.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use super::presentation::Presentation;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{zero_vector, Matrix, Subspace, Vector};

/// Upper bound on the number of paths of a single degree.
pub const MAX_PATHS_PER_DEGREE: usize = 1 << 15;

/// Sparse vector over the algebra basis, sorted by index.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisPath {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
    pub degree: u32,
}

impl BasisPath {
    pub fn length(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

type PathKey = (usize, Vec<usize>);

/// A basic graded algebra `kQ/I` with its normal-form basis.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    presentation: Presentation,
    basis: Vec<BasisPath>,
    basis_index: HashMap<PathKey, usize>,
    reductions: HashMap<PathKey, SparseVec>,
    top_degree: u32,
    table: Vec<Vec<SparseVec>>,
    loewy_length: usize,
}

impl PartialEq for GradedAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.presentation == other.presentation
            && self.basis == other.basis
            && self.table == other.table
    }
}

impl Eq for GradedAlgebra {}

impl GradedAlgebra {
    pub fn from_text(text: &str) -> Result<Self> {
        Self::build(Presentation::parse(text)?)
    }

    pub fn build(presentation: Presentation) -> Result<Self> {
        let field = presentation.field;
        let quiver = &presentation.quiver;
        let n = quiver.vertex_count();
        let max_deg = quiver.max_arrow_degree();

        let mut basis: Vec<BasisPath> = (0..n)
            .map(|v| BasisPath { source: v, target: v, arrows: Vec::new(), degree: 0 })
            .collect();
        let mut basis_index: HashMap<PathKey, usize> =
            (0..n).map(|v| ((v, Vec::new()), v)).collect();
        let mut reductions: HashMap<PathKey, SparseVec> = HashMap::new();

        // all_paths[d] lists every nontrivial path of degree d
        let mut all_paths: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        let mut top_degree = 0;
        let mut zero_run = 0;
        let mut d: u32 = 0;
        while max_deg > 0 && zero_run < max_deg {
            d += 1;
            let mut paths: Vec<Vec<usize>> = Vec::new();
            for (ai, a) in quiver.arrows.iter().enumerate() {
                if a.degree > d {
                    continue;
                }
                if a.degree == d {
                    paths.push(vec![ai]);
                    continue;
                }
                for p in &all_paths[(d - a.degree) as usize] {
                    let end = quiver.arrows[*p.last().unwrap()].target;
                    if end == a.source {
                        let mut q = p.clone();
                        q.push(ai);
                        paths.push(q);
                    }
                }
                if paths.len() > MAX_PATHS_PER_DEGREE {
                    return Err(Error::Validation(format!(
                        "more than {MAX_PATHS_PER_DEGREE} paths in degree {d}; \
                         arrow ideal not nilpotent or presentation too large"
                    )));
                }
            }
            // decreasing length-lex: leading terms become pivots first
            paths.sort_by(|x, y| (y.len(), y).cmp(&(x.len(), x)));
            let col_of: HashMap<&Vec<usize>, usize> =
                paths.iter().enumerate().map(|(i, p)| (p, i)).collect();

            let mut rows: Vec<Vector> = Vec::new();
            for r in presentation.relations.iter().filter(|r| r.degree <= d) {
                let rest = d - r.degree;
                for du in 0..=rest {
                    let lefts = paths_ending_at(&all_paths, quiver, du, r.source);
                    let rights = paths_starting_at(&all_paths, quiver, rest - du, r.target);
                    for u in &lefts {
                        for v in &rights {
                            let mut row = zero_vector(paths.len());
                            for (c, p) in &r.terms {
                                let w: Vec<usize> =
                                    u.iter().chain(p).chain(v.iter()).copied().collect();
                                let col = col_of[&w];
                                row[col] = field.add(&row[col], c);
                            }
                            rows.push(row);
                        }
                    }
                }
            }

            let mut is_pivot = vec![false; paths.len()];
            let mut reduced = Matrix::zeros(0, paths.len());
            let mut pivots = Vec::new();
            if !rows.is_empty() {
                reduced = Matrix::from_rows(paths.len(), rows);
                pivots = reduced.rref(field);
                for &p in &pivots {
                    is_pivot[p] = true;
                }
            }

            let mut normal: Vec<usize> = (0..paths.len()).filter(|&c| !is_pivot[c]).collect();
            normal.reverse();
            let mut col_to_basis: HashMap<usize, usize> = HashMap::new();
            for &c in &normal {
                let arrows = paths[c].clone();
                if arrows.len() > presentation.path_cap {
                    return Err(Error::Validation(format!(
                        "normal-form path of length {} exceeds path cap {} \
                         (infinite-dimensional or cap too small)",
                        arrows.len(),
                        presentation.path_cap
                    )));
                }
                let (source, target) = quiver.endpoints(&arrows).unwrap();
                let idx = basis.len();
                basis_index.insert((source, arrows.clone()), idx);
                basis.push(BasisPath { source, target, arrows, degree: d });
                col_to_basis.insert(c, idx);
            }
            for (r, &pc) in pivots.iter().enumerate() {
                let mut nf: SparseVec = Vec::new();
                for &c in &normal {
                    let x = reduced.get(r, c);
                    if !x.is_zero() {
                        nf.push((col_to_basis[&c], field.neg(x)));
                    }
                }
                nf.sort_by_key(|(i, _)| *i);
                let source = quiver.arrows[paths[pc][0]].source;
                reductions.insert((source, paths[pc].clone()), nf);
            }

            if normal.is_empty() {
                zero_run += 1;
            } else {
                zero_run = 0;
                top_degree = d;
            }
            all_paths.push(paths);
        }

        let mut alg = GradedAlgebra {
            presentation,
            basis,
            basis_index,
            reductions,
            top_degree,
            table: Vec::new(),
            loewy_length: 0,
        };
        alg.table = alg.compute_table();
        alg.loewy_length = alg.compute_loewy_length();
        Ok(alg)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn field(&self) -> Field {
        self.presentation.field
    }

    pub fn vertex_count(&self) -> usize {
        self.presentation.quiver.vertex_count()
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.presentation.quiver.vertices[v]
    }

    pub fn arrow_count(&self) -> usize {
        self.presentation.quiver.arrows.len()
    }

    pub fn arrow(&self, a: usize) -> &super::presentation::Arrow {
        &self.presentation.quiver.arrows[a]
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisPath] {
        &self.basis
    }

    pub fn loewy_length(&self) -> usize {
        self.loewy_length
    }

    /// Highest degree with a nonzero homogeneous piece.
    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn basis_index_of(&self, source: usize, arrows: &[usize]) -> Option<usize> {
        self.basis_index.get(&(source, arrows.to_vec())).copied()
    }

    /// Normal form of the path starting at `source` along `arrows`. A path
    /// that is not composable is zero.
    pub fn reduce_path(&self, source: usize, arrows: &[usize]) -> SparseVec {
        let quiver = &self.presentation.quiver;
        if arrows.is_empty() {
            return vec![(source, Scalar::one())];
        }
        match quiver.endpoints(arrows) {
            Some((s, _)) if s == source => {}
            _ => return Vec::new(),
        }
        if quiver.path_degree(arrows) > self.top_degree {
            return Vec::new();
        }
        let key = (source, arrows.to_vec());
        if let Some(&i) = self.basis_index.get(&key) {
            return vec![(i, Scalar::one())];
        }
        self.reductions.get(&key).cloned().unwrap_or_default()
    }

    /// Product of two basis elements.
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    /// Basis element `i` multiplied on the right by arrow `a`.
    pub fn mul_arrow(&self, i: usize, a: usize) -> SparseVec {
        let b = &self.basis[i];
        if b.target != self.arrow(a).source {
            return Vec::new();
        }
        let mut arrows = b.arrows.clone();
        arrows.push(a);
        self.reduce_path(b.source, &arrows)
    }

    /// Product of two elements given as dense coefficient vectors.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let field = self.field();
        let mut out = zero_vector(self.dim());
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = field.mul(a, b);
                for (k, c) in &self.table[i][j] {
                    out[*k] = field.add(&out[*k], &field.mul(&ab, c));
                }
            }
        }
        out
    }

    pub fn unit_vector(&self, i: usize) -> Vector {
        let mut v = zero_vector(self.dim());
        v[i] = self.field().one();
        v
    }

    pub fn sparse_to_dense(&self, s: &SparseVec) -> Vector {
        let mut v = zero_vector(self.dim());
        for (i, c) in s {
            v[*i] = c.clone();
        }
        v
    }

    /// Basis of `rad(Λ)^m`, computed as the span of products of `m` arrows
    /// with arbitrary elements. `rad⁰ = Λ`.
    pub fn radical_power(&self, m: usize) -> Subspace {
        let field = self.field();
        let dim = self.dim();
        if m == 0 {
            return Subspace::span(field, dim, (0..dim).map(|i| self.unit_vector(i)));
        }
        let mut current = Subspace::span(
            field,
            dim,
            (0..dim).filter(|&i| !self.basis[i].is_trivial()).map(|i| self.unit_vector(i)),
        );
        for _ in 1..m {
            if current.is_zero() {
                break;
            }
            let mut next = Vec::new();
            for v in current.basis() {
                for a in 0..self.arrow_count() {
                    let mut w = zero_vector(dim);
                    for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        for (k, x) in self.mul_arrow(i, a) {
                            w[k] = field.add(&w[k], &field.mul(c, &x));
                        }
                    }
                    next.push(w);
                }
            }
            current = Subspace::span(field, dim, next);
        }
        current
    }

    /// Dimension of `e_i Λ e_j`.
    pub fn corner_dim(&self, i: usize, j: usize) -> usize {
        self.basis.iter().filter(|b| b.source == i && b.target == j).count()
    }

    /// Dimension of each homogeneous piece `Λ_d`, for `d = 0..=top_degree`.
    pub fn degree_dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.top_degree as usize + 1];
        for b in &self.basis {
            dims[b.degree as usize] += 1;
        }
        dims
    }

    /// Exhaustive check that `(ab)c = a(bc)` on all basis triples.
    pub fn is_associative(&self) -> bool {
        let dim = self.dim();
        (0..dim).all(|a| {
            (0..dim).all(|b| {
                (0..dim).all(|c| {
                    let ab = self.sparse_to_dense(&self.table[a][b]);
                    let bc = self.sparse_to_dense(&self.table[b][c]);
                    self.mul(&ab, &self.unit_vector(c)) == self.mul(&self.unit_vector(a), &bc)
                })
            })
        })
    }

    pub fn path_name(&self, i: usize) -> String {
        let b = &self.basis[i];
        if b.is_trivial() {
            format!("e{}", self.vertex_label(b.source))
        } else {
            b.arrows.iter().map(|&a| self.arrow(a).name.as_str()).collect::<Vec<_>>().join("·")
        }
    }

    fn compute_table(&self) -> Vec<Vec<SparseVec>> {
        let dim = self.dim();
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for (i, row) in table.iter_mut().enumerate() {
            let bi = &self.basis[i];
            for (j, cell) in row.iter_mut().enumerate() {
                let bj = &self.basis[j];
                if bi.target != bj.source {
                    continue;
                }
                let arrows: Vec<usize> = bi.arrows.iter().chain(&bj.arrows).copied().collect();
                *cell = self.reduce_path(bi.source, &arrows);
            }
        }
        table
    }

    fn compute_loewy_length(&self) -> usize {
        let mut m = 1;
        while !self.radical_power(m).is_zero() {
            m += 1;
        }
        m
    }
}

impl fmt::Display for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.dim()).map(|i| self.path_name(i)).collect();
        write!(f, "graded algebra over {} with basis {{{}}}", self.field(), names.join(", "))
    }
}

fn paths_ending_at(
    all: &[Vec<Vec<usize>>],
    quiver: &super::presentation::Quiver,
    degree: u32,
    vertex: usize,
) -> Vec<Vec<usize>> {
    if degree == 0 {
        return vec![Vec::new()];
    }
    all[degree as usize]
        .iter()
        .filter(|p| quiver.arrows[*p.last().unwrap()].target == vertex)
        .cloned()
        .collect()
}

fn paths_starting_at(
    all: &[Vec<Vec<usize>>],
    quiver: &super::presentation::Quiver,
    degree: u32,
    vertex: usize,
) -> Vec<Vec<usize>> {
    if degree == 0 {
        return vec![Vec::new()];
    }
    all[degree as usize]
        .iter()
        .filter(|p| quiver.arrows[p[0]].source == vertex)
        .cloned()
        .collect()
}
