//! Finite-dimensional graded right modules given by per-arrow action
//! matrices.
//!
//! A basis vector sits at a vertex and an internal degree. An arrow
//! `a: v → w` of degree `d` sends basis vectors at `v` in degree `t` to
//! combinations of basis vectors at `w` in degree `t + d`. All maps between
//! modules are degree 0, so most computations split into blocks indexed by
//! `(degree, vertex)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{GradedAlgebra, SparseVec};
use crate::error::{Error, Result};
use crate::field::{format_scalar, parse_rational, Field, Scalar};
use crate::linalg::{axpy, is_zero_vector, zero_vector, Matrix, Subspace, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisVector {
    pub vertex: usize,
    pub degree: i64,
}

/// `(degree, vertex)`, the order in which blocks are visited.
pub type Block = (i64, usize);

#[derive(Clone, Debug)]
pub struct GradedModule {
    algebra: Arc<GradedAlgebra>,
    basis: Vec<BasisVector>,
    /// `actions[a][j]`: image of basis vector `j` under arrow `a`.
    actions: Vec<Vec<SparseVec>>,
}

impl PartialEq for GradedModule {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra)
            && self.basis == other.basis
            && self.actions == other.actions
    }
}

pub(crate) fn same_algebra(a: &Arc<GradedAlgebra>, b: &Arc<GradedAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GradedModule {
    /// Builds a module and checks that the actions respect vertices and
    /// degrees and that every relation acts as zero.
    pub fn new(
        algebra: Arc<GradedAlgebra>,
        basis: Vec<BasisVector>,
        actions: Vec<Vec<SparseVec>>,
    ) -> Result<Self> {
        let m = GradedModule { algebra, basis, actions };
        m.check()?;
        Ok(m)
    }

    fn new_unchecked(
        algebra: Arc<GradedAlgebra>,
        basis: Vec<BasisVector>,
        actions: Vec<Vec<SparseVec>>,
    ) -> Self {
        let m = GradedModule { algebra, basis, actions };
        debug_assert!(m.check().is_ok(), "{:?}", m.check());
        m
    }

    fn check(&self) -> Result<()> {
        let alg = &self.algebra;
        if self.actions.len() != alg.arrow_count() {
            return Err(Error::Validation("one action matrix per arrow required".into()));
        }
        for (a, images) in self.actions.iter().enumerate() {
            let arrow = alg.arrow(a);
            if images.len() != self.dim() {
                return Err(Error::Validation(format!("action of `{}` has wrong size", arrow.name)));
            }
            for (j, img) in images.iter().enumerate() {
                let b = self.basis[j];
                if b.vertex != arrow.source && !img.is_empty() {
                    return Err(Error::Validation(format!(
                        "arrow `{}` acts on a basis vector at the wrong vertex",
                        arrow.name
                    )));
                }
                for (k, c) in img {
                    let t = self.basis[*k];
                    if c.is_zero() {
                        return Err(Error::Validation("explicit zero in sparse action".into()));
                    }
                    if t.vertex != arrow.target || t.degree != b.degree + arrow.degree as i64 {
                        return Err(Error::Validation(format!(
                            "arrow `{}` does not respect vertices or grading",
                            arrow.name
                        )));
                    }
                }
            }
        }
        let field = self.field();
        for (ri, r) in alg.presentation().relations.iter().enumerate() {
            for j in (0..self.dim()).filter(|&j| self.basis[j].vertex == r.source) {
                let mut total = zero_vector(self.dim());
                for (c, path) in &r.terms {
                    let v = self.act_path(&self.unit(j), path);
                    axpy(field, &mut total, c, &v);
                }
                if !is_zero_vector(&total) {
                    return Err(Error::Validation(format!("relation {ri} does not act as zero")));
                }
            }
        }
        Ok(())
    }

    pub fn zero(algebra: Arc<GradedAlgebra>) -> Self {
        let arrows = algebra.arrow_count();
        GradedModule { algebra, basis: Vec::new(), actions: vec![Vec::new(); arrows] }
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn action(&self, arrow: usize) -> &[SparseVec] {
        &self.actions[arrow]
    }

    pub fn unit(&self, j: usize) -> Vector {
        let mut v = zero_vector(self.dim());
        v[j] = self.field().one();
        v
    }

    /// Right action of an arrow on a vector.
    pub fn act_arrow(&self, v: &[Scalar], arrow: usize) -> Vector {
        let field = self.field();
        let mut out = zero_vector(self.dim());
        for (j, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (k, x) in &self.actions[arrow][j] {
                out[*k] = field.add(&out[*k], &field.mul(c, x));
            }
        }
        out
    }

    /// Right action of the path `arrows[0] · arrows[1] · …`.
    pub fn act_path(&self, v: &[Scalar], arrows: &[usize]) -> Vector {
        arrows.iter().fold(v.to_vec(), |acc, &a| self.act_arrow(&acc, a))
    }

    /// Right action of an algebra element given over the algebra basis.
    pub fn act_element(&self, v: &[Scalar], element: &[Scalar]) -> Vector {
        let field = self.field();
        let mut out = zero_vector(self.dim());
        for (i, c) in element.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let b = &self.algebra.basis()[i];
            let restricted: Vector = v
                .iter()
                .zip(&self.basis)
                .map(|(x, bv)| if bv.vertex == b.source { x.clone() } else { Scalar::zero() })
                .collect();
            let w = self.act_path(&restricted, &b.arrows);
            axpy(field, &mut out, c, &w);
        }
        out
    }

    /// Indices of basis vectors grouped by `(degree, vertex)`.
    pub fn blocks(&self) -> BTreeMap<Block, Vec<usize>> {
        let mut blocks: BTreeMap<Block, Vec<usize>> = BTreeMap::new();
        for (j, b) in self.basis.iter().enumerate() {
            blocks.entry((b.degree, b.vertex)).or_default().push(j);
        }
        blocks
    }

    /// Block of a nonzero vector, or `None` if it is not homogeneous.
    pub fn block_of(&self, v: &[Scalar]) -> Option<Block> {
        let mut found = None;
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let b = (self.basis[j].degree, self.basis[j].vertex);
            match found {
                None => found = Some(b),
                Some(f) if f == b => {}
                Some(_) => return None,
            }
        }
        found
    }

    /// Smallest and largest internal degree, `None` for the zero module.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let min = self.basis.iter().map(|b| b.degree).min()?;
        let max = self.basis.iter().map(|b| b.degree).max()?;
        Some((min, max))
    }

    /// `dim M_{vertex, degree}`.
    pub fn block_dim(&self, vertex: usize, degree: i64) -> usize {
        self.basis.iter().filter(|b| b.vertex == vertex && b.degree == degree).count()
    }

    // ---- constructions ----

    /// The simple module `S_i`, one-dimensional in degree 0.
    pub fn simple(algebra: Arc<GradedAlgebra>, vertex: usize) -> Result<Self> {
        check_vertex(&algebra, vertex)?;
        let arrows = algebra.arrow_count();
        Ok(GradedModule::new_unchecked(
            algebra,
            vec![BasisVector { vertex, degree: 0 }],
            vec![vec![Vec::new()]; arrows],
        ))
    }

    /// The indecomposable projective `P_i = e_i Λ`, generated in degree 0.
    pub fn projective(algebra: Arc<GradedAlgebra>, vertex: usize) -> Result<Self> {
        check_vertex(&algebra, vertex)?;
        let paths: Vec<usize> =
            (0..algebra.dim()).filter(|&p| algebra.basis()[p].source == vertex).collect();
        let local: BTreeMap<usize, usize> = paths.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let basis = paths
            .iter()
            .map(|&p| {
                let b = &algebra.basis()[p];
                BasisVector { vertex: b.target, degree: b.degree as i64 }
            })
            .collect();
        let actions = (0..algebra.arrow_count())
            .map(|a| {
                paths
                    .iter()
                    .map(|&p| {
                        algebra.mul_arrow(p, a).into_iter().map(|(k, c)| (local[&k], c)).collect()
                    })
                    .collect()
            })
            .collect();
        Ok(GradedModule::new_unchecked(algebra, basis, actions))
    }

    /// `M(i)`, with `M(i)_j = M_{i+j}`: every internal degree drops by `i`.
    pub fn twist(&self, i: i64) -> Self {
        let mut m = self.clone();
        for b in &mut m.basis {
            b.degree -= i;
        }
        m
    }

    pub fn direct_sum(algebra: Arc<GradedAlgebra>, parts: &[GradedModule]) -> Self {
        let mut basis = Vec::new();
        let mut actions = vec![Vec::new(); algebra.arrow_count()];
        for m in parts {
            let offset = basis.len();
            basis.extend_from_slice(&m.basis);
            for (a, images) in m.actions.iter().enumerate() {
                actions[a].extend(
                    images.iter().map(|img| img.iter().map(|(k, c)| (k + offset, c.clone())).collect()),
                );
            }
        }
        GradedModule::new_unchecked(algebra, basis, actions)
    }

    /// `S_1 ⊕ … ⊕ S_n`, the top of `Λ`.
    pub fn top_of_algebra(algebra: Arc<GradedAlgebra>) -> Self {
        let parts: Vec<_> = (0..algebra.vertex_count())
            .map(|v| GradedModule::simple(algebra.clone(), v).unwrap())
            .collect();
        GradedModule::direct_sum(algebra, &parts)
    }

    /// Submodule spanned by homogeneous vectors that are closed under the
    /// action. The new basis is the block-wise reduced echelon basis, and
    /// the returned vectors give each new basis element in old coordinates.
    pub fn submodule(&self, generators: Vec<Vector>) -> Result<(GradedModule, Vec<Vector>)> {
        let space = BlockSpace::new(self, generators)?;
        let vectors = space.vectors();
        let basis: Vec<BasisVector> = space.basis_blocks().map(|(d, v)| BasisVector { vertex: v, degree: d }).collect();
        let mut actions = Vec::with_capacity(self.actions.len());
        for a in 0..self.actions.len() {
            let mut images = Vec::with_capacity(vectors.len());
            for v in &vectors {
                let w = self.act_arrow(v, a);
                let coords = space.coordinates(self, &w).ok_or_else(|| {
                    Error::Validation("generators do not span a submodule".into())
                })?;
                images.push(to_sparse(&coords));
            }
            actions.push(images);
        }
        Ok((GradedModule::new_unchecked(self.algebra.clone(), basis, actions), vectors))
    }

    /// `M·rad(Λ)`, with the embedding into `M` as a list of vectors.
    pub fn radical(&self) -> (GradedModule, Vec<Vector>) {
        let images = self.radical_generators();
        self.submodule(images).expect("radical is a submodule")
    }

    fn radical_generators(&self) -> Vec<Vector> {
        let mut images = Vec::new();
        for a in 0..self.actions.len() {
            for j in 0..self.dim() {
                let img = &self.actions[a][j];
                if !img.is_empty() {
                    let mut v = zero_vector(self.dim());
                    for (k, c) in img {
                        v[*k] = c.clone();
                    }
                    images.push(v);
                }
            }
        }
        images
    }

    /// Quotient by a submodule spanned by homogeneous vectors. The basis of
    /// the quotient is the classes of the standard basis vectors outside
    /// the pivot positions of each block.
    pub fn quotient(&self, generators: Vec<Vector>) -> Result<(GradedModule, Vec<usize>)> {
        let space = BlockSpace::new(self, generators)?;
        let kept = space.complement_indices(self);
        let position: BTreeMap<usize, usize> = kept.iter().enumerate().map(|(i, &j)| (j, i)).collect();
        let basis = kept.iter().map(|&j| self.basis[j]).collect();
        let mut actions = Vec::with_capacity(self.actions.len());
        for a in 0..self.actions.len() {
            let mut images = Vec::with_capacity(kept.len());
            for &j in &kept {
                let w = self.act_arrow(&self.unit(j), a);
                let r = space.residual(self, &w);
                let img: SparseVec = r
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (position[&k], c.clone()))
                    .collect();
                images.push(img);
            }
            actions.push(images);
        }
        let q = GradedModule::new(self.algebra.clone(), basis, actions)?;
        Ok((q, kept))
    }

    /// `M / M·rad(Λ)`, semisimple.
    pub fn top(&self) -> GradedModule {
        self.quotient(self.radical_generators()).expect("radical is a submodule").0
    }

    /// Basis vectors of `M` whose classes form a basis of the top, in
    /// block order.
    pub fn top_generators(&self) -> Vec<usize> {
        let space = BlockSpace::new(self, self.radical_generators()).expect("homogeneous");
        space.complement_indices(self)
    }

    /// Minimal graded projective cover. For the zero module this is the zero
    /// projective with the zero map.
    pub fn projective_cover(&self) -> (GradedModule, GradedMorphism) {
        let (sum, pi) = self.projective_cover_sum();
        (sum.module().clone(), pi)
    }

    /// [`projective_cover`](Self::projective_cover), keeping the summand
    /// bookkeeping of the cover.
    pub fn projective_cover_sum(&self) -> (ProjectiveSum, GradedMorphism) {
        let gens = self.top_generators();
        let sum = ProjectiveSum::new(
            self.algebra.clone(),
            gens.iter().map(|&j| Generator::from_basis(self.basis[j])).collect(),
        );
        let columns: Vec<Vector> = sum
            .positions()
            .map(|(s, path)| {
                let start = self.unit(gens[s]);
                self.act_path(&start, &self.algebra.basis()[path].arrows)
            })
            .collect();
        let matrix = Matrix::from_columns(self.dim(), &columns);
        let pi = GradedMorphism { source: sum.module().clone(), target: self.clone(), matrix };
        debug_assert!(pi.check().is_ok());
        (sum, pi)
    }

    /// Multiplicity of each simple as a composition factor.
    pub fn composition_multiplicities(&self) -> Vec<usize> {
        let mut mult = vec![0; self.algebra.vertex_count()];
        for b in &self.basis {
            mult[b.vertex] += 1;
        }
        mult
    }

    pub fn to_document(&self) -> ModuleDocument {
        let alg = &self.algebra;
        ModuleDocument {
            basis: self
                .basis
                .iter()
                .map(|b| ModuleBasisDoc { vertex: alg.vertex_label(b.vertex).to_string(), degree: b.degree })
                .collect(),
            actions: (0..alg.arrow_count())
                .map(|a| {
                    let entries = self.actions[a]
                        .iter()
                        .enumerate()
                        .flat_map(|(j, img)| {
                            img.iter().map(move |(k, c)| ActionEntry { from: j, to: *k, coeff: format_scalar(c) })
                        })
                        .collect();
                    (alg.arrow(a).name.clone(), entries)
                })
                .collect(),
        }
    }

    pub fn from_document(algebra: Arc<GradedAlgebra>, doc: &ModuleDocument) -> Result<Self> {
        let quiver = &algebra.presentation().quiver;
        let basis = doc
            .basis
            .iter()
            .map(|b| {
                let vertex = quiver
                    .vertex_index(&b.vertex)
                    .ok_or_else(|| Error::Parse(format!("unknown vertex `{}`", b.vertex)))?;
                Ok(BasisVector { vertex, degree: b.degree })
            })
            .collect::<Result<Vec<_>>>()?;
        let field = algebra.field();
        let mut actions = vec![vec![Vec::new(); basis.len()]; algebra.arrow_count()];
        for (name, entries) in &doc.actions {
            let a = quiver
                .arrow_index(name)
                .ok_or_else(|| Error::Parse(format!("unknown arrow `{name}`")))?;
            for e in entries {
                if e.from >= basis.len() || e.to >= basis.len() {
                    return Err(Error::Parse(format!("action entry of `{name}` out of range")));
                }
                let c = parse_rational(&e.coeff)
                    .ok_or_else(|| Error::Parse(format!("malformed coefficient `{}`", e.coeff)))?;
                let c = field.element(c)?;
                if c.is_zero() {
                    continue;
                }
                let img: &mut SparseVec = &mut actions[a][e.from];
                match img.iter_mut().find(|(k, _)| *k == e.to) {
                    Some((_, x)) => *x = field.add(x, &c),
                    None => img.push((e.to, c)),
                }
            }
        }
        for images in &mut actions {
            for img in images.iter_mut() {
                img.retain(|(_, c)| !c.is_zero());
                img.sort_by_key(|(k, _)| *k);
            }
        }
        GradedModule::new(algebra, basis, actions)
    }
}

fn check_vertex(algebra: &GradedAlgebra, vertex: usize) -> Result<()> {
    if vertex >= algebra.vertex_count() {
        return Err(Error::Validation(format!(
            "vertex index {vertex} out of range (algebra has {} vertices)",
            algebra.vertex_count()
        )));
    }
    Ok(())
}

pub(crate) fn to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

/// Serialized module: basis and sparse action entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDocument {
    pub basis: Vec<ModuleBasisDoc>,
    pub actions: BTreeMap<String, Vec<ActionEntry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleBasisDoc {
    pub vertex: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionEntry {
    pub from: usize,
    pub to: usize,
    pub coeff: String,
}

/// A subspace of a graded module given block by block.
struct BlockSpace {
    ambient: usize,
    blocks: BTreeMap<Block, (Vec<usize>, Subspace)>,
}

impl BlockSpace {
    fn new(module: &GradedModule, generators: Vec<Vector>) -> Result<Self> {
        let field = module.field();
        let all = module.blocks();
        let mut grouped: BTreeMap<Block, Vec<Vector>> = BTreeMap::new();
        for g in generators {
            if is_zero_vector(&g) {
                continue;
            }
            let b = module
                .block_of(&g)
                .ok_or_else(|| Error::Validation("generator is not homogeneous".into()))?;
            let idx = &all[&b];
            grouped.entry(b).or_default().push(idx.iter().map(|&j| g[j].clone()).collect());
        }
        let blocks = grouped
            .into_iter()
            .map(|(b, vs)| {
                let idx = all[&b].clone();
                let s = Subspace::span(field, idx.len(), vs);
                (b, (idx, s))
            })
            .collect();
        Ok(BlockSpace { ambient: module.dim(), blocks })
    }

    fn basis_blocks(&self) -> impl Iterator<Item = Block> + '_ {
        self.blocks.iter().flat_map(|(b, (_, s))| std::iter::repeat_n(*b, s.dim()))
    }

    fn vectors(&self) -> Vec<Vector> {
        let mut out = Vec::new();
        for (idx, s) in self.blocks.values() {
            for b in s.basis() {
                let mut v = zero_vector(self.ambient);
                for (k, &j) in idx.iter().enumerate() {
                    v[j] = b[k].clone();
                }
                out.push(v);
            }
        }
        out
    }

    /// Coordinates of `v` in the basis returned by [`vectors`](Self::vectors).
    fn coordinates(&self, module: &GradedModule, v: &[Scalar]) -> Option<Vector> {
        let field = module.field();
        let mut coords = Vec::new();
        let mut covered = vec![false; v.len()];
        for (idx, s) in self.blocks.values() {
            let local: Vector = idx.iter().map(|&j| v[j].clone()).collect();
            for &j in idx {
                covered[j] = true;
            }
            coords.extend(s.coordinates(field, &local)?);
        }
        // anything outside the occupied blocks must vanish
        v.iter().zip(&covered).all(|(c, &cov)| cov || c.is_zero()).then_some(coords)
    }

    /// `v` minus its projection onto the pivot positions of each block.
    fn residual(&self, module: &GradedModule, v: &[Scalar]) -> Vector {
        let field = module.field();
        let mut r = v.to_vec();
        for (idx, s) in self.blocks.values() {
            let mut local: Vector = idx.iter().map(|&j| r[j].clone()).collect();
            for (&p, b) in s.pivots().iter().zip(s.basis()) {
                let c = local[p].clone();
                axpy(field, &mut local, &field.neg(&c), b);
            }
            for (k, &j) in idx.iter().enumerate() {
                r[j] = local[k].clone();
            }
        }
        r
    }

    fn complement_indices(&self, module: &GradedModule) -> Vec<usize> {
        let mut out = Vec::new();
        for (b, idx) in module.blocks() {
            match self.blocks.get(&b) {
                Some((idx, s)) => out.extend(s.complement_indices().into_iter().map(|k| idx[k])),
                None => out.extend(idx),
            }
        }
        out
    }
}

/// A generator of a graded projective: `P_vertex` shifted so that its top
/// sits in internal degree `degree`. As a twist this is `P_vertex(-degree)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub vertex: usize,
    pub degree: i64,
}

impl Generator {
    pub fn from_basis(b: BasisVector) -> Self {
        Generator { vertex: b.vertex, degree: b.degree }
    }

    /// The twist `t` with `P_vertex(t)` having this generator.
    pub fn twist(&self) -> i64 {
        -self.degree
    }
}

/// `⊕_g P_{v_g}(-deg g)` with bookkeeping from module coordinates back to
/// summands and algebra paths.
#[derive(Clone, Debug)]
pub struct ProjectiveSum {
    generators: Vec<Generator>,
    module: GradedModule,
    /// For each module basis index: (summand, algebra basis index of the path).
    origin: Vec<(usize, usize)>,
    offsets: Vec<usize>,
}

impl ProjectiveSum {
    pub fn new(algebra: Arc<GradedAlgebra>, generators: Vec<Generator>) -> Self {
        let mut parts = Vec::with_capacity(generators.len());
        let mut origin = Vec::new();
        let mut offsets = Vec::with_capacity(generators.len());
        for (s, g) in generators.iter().enumerate() {
            offsets.push(origin.len());
            let p = GradedModule::projective(algebra.clone(), g.vertex).expect("valid vertex");
            origin.extend(
                (0..algebra.dim()).filter(|&i| algebra.basis()[i].source == g.vertex).map(|i| (s, i)),
            );
            parts.push(p.twist(-g.degree));
        }
        let module = GradedModule::direct_sum(algebra, &parts);
        ProjectiveSum { generators, module, origin, offsets }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    /// `(summand, algebra path index)` for each module basis index.
    pub fn positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.origin.iter().copied()
    }

    /// Module index of the generator of summand `s`.
    pub fn generator_index(&self, s: usize) -> usize {
        self.offsets[s]
    }

    /// Splits a vector of the sum into per-summand algebra elements.
    pub fn components(&self, v: &[Scalar]) -> Vec<Vector> {
        let alg = self.module.algebra();
        let mut out = vec![zero_vector(alg.dim()); self.generators.len()];
        for (j, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (s, p) = self.origin[j];
            out[s][p] = c.clone();
        }
        out
    }
}

/// A degree-0 morphism; `matrix` has one column per source basis vector.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMorphism {
    pub source: GradedModule,
    pub target: GradedModule,
    pub matrix: Matrix,
}

impl GradedMorphism {
    pub fn new(source: GradedModule, target: GradedModule, matrix: Matrix) -> Result<Self> {
        let f = GradedMorphism { source, target, matrix };
        f.check()?;
        Ok(f)
    }

    pub fn identity(m: &GradedModule) -> Self {
        let cols: Vec<Vector> = (0..m.dim()).map(|j| m.unit(j)).collect();
        GradedMorphism { source: m.clone(), target: m.clone(), matrix: Matrix::from_columns(m.dim(), &cols) }
    }

    pub fn check(&self) -> Result<()> {
        if !same_algebra(self.source.algebra(), self.target.algebra()) {
            return Err(Error::Validation("morphism between modules over different algebras".into()));
        }
        if self.matrix.rows() != self.target.dim() || self.matrix.cols() != self.source.dim() {
            return Err(Error::Validation("morphism matrix has wrong shape".into()));
        }
        for j in 0..self.source.dim() {
            let s = self.source.basis()[j];
            for i in 0..self.target.dim() {
                if !self.matrix.get(i, j).is_zero() && self.target.basis()[i] != s {
                    return Err(Error::Validation("morphism is not degree 0 and vertex preserving".into()));
                }
            }
        }
        for a in 0..self.source.algebra().arrow_count() {
            for j in 0..self.source.dim() {
                let lhs = self.apply(&self.source.act_arrow(&self.source.unit(j), a));
                let rhs = self.target.act_arrow(&self.apply(&self.source.unit(j)), a);
                if lhs != rhs {
                    return Err(Error::Validation("morphism does not commute with arrows".into()));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.matrix.apply(self.source.field(), v)
    }

    /// Rank, computed block by block.
    pub fn rank(&self) -> usize {
        let field = self.source.field();
        let target_blocks = self.target.blocks();
        self.source
            .blocks()
            .iter()
            .map(|(b, cols)| match target_blocks.get(b) {
                None => 0,
                Some(rows) => {
                    let mut m = Matrix::zeros(rows.len(), cols.len());
                    for (i, &r) in rows.iter().enumerate() {
                        for (j, &c) in cols.iter().enumerate() {
                            m.set(i, j, self.matrix.get(r, c).clone());
                        }
                    }
                    m.rank(field)
                }
            })
            .sum()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    /// Kernel as a submodule of the source: the module and the embedding
    /// vectors in source coordinates. Computed block by block.
    pub fn kernel(&self) -> (GradedModule, Vec<Vector>) {
        let field = self.source.field();
        let target_blocks = self.target.blocks();
        let mut gens = Vec::new();
        for (b, cols) in self.source.blocks() {
            let rows: &[usize] = target_blocks.get(&b).map_or(&[], |r| r.as_slice());
            let mut m = Matrix::zeros(rows.len(), cols.len());
            for (i, &r) in rows.iter().enumerate() {
                for (j, &c) in cols.iter().enumerate() {
                    m.set(i, j, self.matrix.get(r, c).clone());
                }
            }
            for k in m.kernel(field) {
                let mut v = zero_vector(self.source.dim());
                for (j, &c) in cols.iter().enumerate() {
                    v[c] = k[j].clone();
                }
                gens.push(v);
            }
        }
        self.source.submodule(gens).expect("kernel is a submodule")
    }

    pub fn compose(&self, first: &GradedMorphism) -> GradedMorphism {
        GradedMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(self.source.field(), &first.matrix),
        }
    }
}

/// Basis of the space of degree-0 module maps `M → N`.
pub fn hom_graded(m: &GradedModule, n: &GradedModule) -> Result<(usize, Vec<GradedMorphism>)> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::Validation("hom between modules over different algebras".into()));
    }
    let field = m.field();
    // one unknown per (target r, source s) in the same block
    let mut vars: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for s in 0..m.dim() {
        for r in 0..n.dim() {
            if m.basis()[s] == n.basis()[r] {
                let k = vars.len();
                vars.insert((r, s), k);
            }
        }
    }
    let mut rows: Vec<Vector> = Vec::new();
    for a in 0..m.algebra().arrow_count() {
        for s in 0..m.dim() {
            // f(s·a) - f(s)·a = 0, one equation per coordinate of N
            let mut eqs: BTreeMap<usize, Vector> = BTreeMap::new();
            for (t, c) in &m.action(a)[s] {
                for r in 0..n.dim() {
                    if let Some(&x) = vars.get(&(r, *t)) {
                        let row = eqs.entry(r).or_insert_with(|| zero_vector(vars.len()));
                        row[x] = field.add(&row[x], c);
                    }
                }
            }
            for r in 0..n.dim() {
                if let Some(&x) = vars.get(&(r, s)) {
                    for (k, c) in &n.action(a)[r] {
                        let row = eqs.entry(*k).or_insert_with(|| zero_vector(vars.len()));
                        row[x] = field.sub(&row[x], c);
                    }
                }
            }
            rows.extend(eqs.into_values().filter(|r| !is_zero_vector(r)));
        }
    }
    let solutions = if rows.is_empty() {
        (0..vars.len())
            .map(|k| {
                let mut v = zero_vector(vars.len());
                v[k] = field.one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(vars.len(), rows).kernel(field)
    };
    let maps = solutions
        .iter()
        .map(|sol| {
            let mut matrix = Matrix::zeros(n.dim(), m.dim());
            for (&(r, s), &k) in &vars {
                matrix.set(r, s, sol[k].clone());
            }
            GradedMorphism { source: m.clone(), target: n.clone(), matrix }
        })
        .collect::<Vec<_>>();
    Ok((maps.len(), maps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn arc(alg: GradedAlgebra) -> Arc<GradedAlgebra> {
        Arc::new(alg)
    }

    fn degrees(m: &GradedModule) -> Vec<(usize, i64)> {
        m.basis().iter().map(|b| (b.vertex, b.degree)).collect()
    }

    #[test]
    fn simples_and_projectives() {
        let dual = arc(fixtures::dual_numbers());
        let s = GradedModule::simple(dual.clone(), 0).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.action(0)[0].is_empty());
        let p = GradedModule::projective(dual.clone(), 0).unwrap();
        assert_eq!(degrees(&p), [(0, 0), (0, 1)]);
        assert!(GradedModule::simple(dual, 1).is_err());

        let a2 = arc(fixtures::a2());
        assert_eq!(degrees(&GradedModule::projective(a2.clone(), 0).unwrap()), [(0, 0), (1, 1)]);
        assert_eq!(
            GradedModule::projective(a2.clone(), 1).unwrap(),
            GradedModule::simple(a2, 1).unwrap()
        );

        let ss = arc(fixtures::semisimple(2));
        assert_eq!(
            GradedModule::projective(ss.clone(), 1).unwrap(),
            GradedModule::simple(ss, 1).unwrap()
        );
    }

    #[test]
    fn twists() {
        let dual = arc(fixtures::dual_numbers());
        let p = GradedModule::projective(dual.clone(), 0).unwrap();
        assert_eq!(p.twist(0), p);
        assert_eq!(p.twist(2).twist(-5), p.twist(-3));
        let s = GradedModule::simple(dual, 0).unwrap();
        assert_eq!(degrees(&s.twist(-1)), [(0, 1)]);
    }

    #[test]
    fn top_and_radical() {
        for (name, alg) in fixtures::corpus() {
            let alg = arc(alg);
            for i in 0..alg.vertex_count() {
                let p = GradedModule::projective(alg.clone(), i).unwrap();
                let s = GradedModule::simple(alg.clone(), i).unwrap();
                assert_eq!(p.top(), s, "{name}");
                assert!(s.radical().0.is_zero(), "{name}");
            }
        }
        let cubic = arc(fixtures::truncated_polynomial(3));
        let (rad, emb) = GradedModule::projective(cubic, 0).unwrap().radical();
        assert_eq!(degrees(&rad), [(0, 1), (0, 2)]);
        assert_eq!(emb.len(), 2);
    }

    #[test]
    fn covers() {
        let dual = arc(fixtures::dual_numbers());
        let s = GradedModule::simple(dual.clone(), 0).unwrap();
        let p = GradedModule::projective(dual.clone(), 0).unwrap();
        let (cover, pi) = s.projective_cover();
        assert_eq!(cover, p);
        assert!(pi.is_surjective());

        let (cover, pi) = p.projective_cover();
        assert_eq!(cover, p);
        assert_eq!(pi, GradedMorphism::identity(&p));

        // Ω S = rad P, covered by P(-1)
        let (omega, _) = p.radical();
        let (cover, pi) = omega.projective_cover();
        assert_eq!(cover, p.twist(-1));
        assert!(pi.is_surjective());
        let (ker, _) = pi.kernel();
        assert_eq!(degrees(&ker), [(0, 2)]);

        let zero = GradedModule::zero(dual);
        let (cover, pi) = zero.projective_cover();
        assert!(cover.is_zero());
        assert_eq!(pi.rank(), 0);
    }

    #[test]
    fn cover_minimality_on_corpus() {
        for (name, alg) in fixtures::corpus() {
            let alg = arc(alg);
            for i in 0..alg.vertex_count() {
                let p = GradedModule::projective(alg.clone(), i).unwrap();
                let (rad, _) = p.radical();
                if rad.is_zero() {
                    continue;
                }
                let (cover, pi) = rad.projective_cover();
                assert!(pi.is_surjective(), "{name}");
                assert_eq!(cover.top(), rad.top(), "{name}");
                let (_, ker) = pi.kernel();
                let (_, cover_rad) = cover.radical();
                let rad_space = Subspace::span(alg.field(), cover.dim(), cover_rad);
                assert!(ker.iter().all(|k| rad_space.contains(alg.field(), k)), "{name}");
            }
        }
    }

    #[test]
    fn composition_multiplicities() {
        let a2 = arc(fixtures::a2());
        assert_eq!(GradedModule::simple(a2.clone(), 1).unwrap().composition_multiplicities(), [0, 1]);
        assert_eq!(GradedModule::projective(a2, 0).unwrap().composition_multiplicities(), [1, 1]);
        let cubic = arc(fixtures::truncated_polynomial(3));
        assert_eq!(GradedModule::projective(cubic, 0).unwrap().composition_multiplicities(), [3]);
    }

    #[test]
    fn hom_examples() {
        let dual = arc(fixtures::dual_numbers());
        let p = GradedModule::projective(dual.clone(), 0).unwrap();
        let s = GradedModule::simple(dual.clone(), 0).unwrap();
        assert_eq!(hom_graded(&p, &s).unwrap().0, 1);
        assert_eq!(hom_graded(&s, &p).unwrap().0, 0);
        assert_eq!(hom_graded(&s, &p.twist(1)).unwrap().0, 1);
        assert_eq!(hom_graded(&p, &p).unwrap().0, 1);

        let a2 = arc(fixtures::a2());
        let s1 = GradedModule::simple(a2.clone(), 0).unwrap();
        let s2 = GradedModule::simple(a2.clone(), 1).unwrap();
        assert_eq!(hom_graded(&s1, &s2).unwrap().0, 0);

        for (name, alg) in fixtures::corpus() {
            let alg = arc(alg);
            let top = GradedModule::top_of_algebra(alg.clone());
            let (dim, maps) = hom_graded(&top, &top).unwrap();
            assert_eq!(dim, alg.vertex_count(), "{name}");
            assert!(maps.iter().all(|f| f.check().is_ok()));
        }

        let other = arc(fixtures::a2());
        let foreign = GradedModule::simple(other, 0).unwrap();
        assert!(hom_graded(&s, &foreign).is_err());
    }

    #[test]
    fn hom_twist_shift() {
        let alg = arc(fixtures::commutative_xy_squares());
        let p = GradedModule::projective(alg.clone(), 0).unwrap();
        let (rad, _) = p.radical();
        for j in -3..=3 {
            assert_eq!(
                hom_graded(&rad, &p.twist(j)).unwrap().0,
                hom_graded(&rad.twist(-j), &p).unwrap().0
            );
        }
    }

    #[test]
    fn bad_actions_rejected() {
        let dual = arc(fixtures::dual_numbers());
        let f = dual.field();
        let basis = vec![BasisVector { vertex: 0, degree: 0 }, BasisVector { vertex: 0, degree: 2 }];
        let wrong_degree = vec![vec![vec![(1, f.one())], Vec::new()]];
        assert!(GradedModule::new(dual.clone(), basis, wrong_degree).is_err());

        // x acting as a nonzero nilpotent 2x2 Jordan block on three levels violates x² = 0
        let basis: Vec<_> = (0..3).map(|d| BasisVector { vertex: 0, degree: d }).collect();
        let chain = vec![vec![vec![(1, f.one())], vec![(2, f.one())], Vec::new()]];
        assert!(GradedModule::new(dual, basis, chain).is_err());
    }

    #[test]
    fn document_round_trip() {
        let alg = arc(fixtures::commutative_xy_squares());
        let p = GradedModule::projective(alg.clone(), 0).unwrap().twist(2);
        let doc = p.to_document();
        let text = serde_json::to_string(&doc).unwrap();
        let back: ModuleDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(GradedModule::from_document(alg, &back).unwrap(), p);
    }
}
