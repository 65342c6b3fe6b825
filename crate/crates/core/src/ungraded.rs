//! Ungraded resolutions and Ext, with gradings discarded entirely.
//!
//! This engine is deliberately separate from [`crate::module`] and
//! [`crate::resolution`]: it has its own module type, its own top and cover
//! construction, its own kernels (split only by vertex) and its own cochain
//! complex. It is the reference against which graded Ext is summed.

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::GradedAlgebra;
use crate::field::{Field, Scalar};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::module::GradedModule;

/// A right module recorded by the vertex of each basis vector and dense
/// action matrices, one per arrow (column `j` = image of basis vector `j`).
#[derive(Clone, Debug)]
pub struct UngradedModule {
    algebra: Arc<GradedAlgebra>,
    vertex: Vec<usize>,
    actions: Vec<Matrix>,
}

impl UngradedModule {
    /// Drops the internal grading of a graded module.
    pub fn forget(m: &GradedModule) -> Self {
        let dim = m.dim();
        let actions = (0..m.algebra().arrow_count())
            .map(|a| {
                let mut mat = Matrix::zeros(dim, dim);
                for (j, img) in m.action(a).iter().enumerate() {
                    for (k, c) in img {
                        mat.set(*k, j, c.clone());
                    }
                }
                mat
            })
            .collect();
        UngradedModule {
            algebra: m.algebra().clone(),
            vertex: m.basis().iter().map(|b| b.vertex).collect(),
            actions,
        }
    }

    /// `e_v Λ`, built straight from the multiplication table.
    pub fn projective(algebra: Arc<GradedAlgebra>, v: usize) -> Self {
        let paths: Vec<usize> = (0..algebra.dim()).filter(|&p| algebra.basis()[p].source == v).collect();
        let dim = paths.len();
        let local = |p: usize| paths.iter().position(|&q| q == p);
        let mut actions = Vec::with_capacity(algebra.arrow_count());
        for a in 0..algebra.arrow_count() {
            let mut mat = Matrix::zeros(dim, dim);
            let arrow_index = algebra
                .basis_index_of(algebra.arrow(a).source, &[a])
                .expect("arrows are normal");
            for (j, &p) in paths.iter().enumerate() {
                for (k, c) in algebra.mul_basis(p, arrow_index) {
                    mat.set(local(*k).expect("product stays in e_vΛ"), j, c.clone());
                }
            }
            actions.push(mat);
        }
        let vertex = paths.iter().map(|&p| algebra.basis()[p].target).collect();
        UngradedModule { algebra, vertex, actions }
    }

    pub fn dim(&self) -> usize {
        self.vertex.len()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertex
    }

    fn field(&self) -> Field {
        self.algebra.field()
    }

    fn indices_at(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&j| self.vertex[j] == v).collect()
    }

    /// `x · p` for a normal-form path `p` of the algebra.
    fn act_basis_path(&self, x: &[Scalar], path: usize) -> Vector {
        let b = &self.algebra.basis()[path];
        let field = self.field();
        let mut cur: Vector = x
            .iter()
            .zip(&self.vertex)
            .map(|(c, &v)| if v == b.source { c.clone() } else { Scalar::zero() })
            .collect();
        for &a in &b.arrows {
            cur = self.actions[a].apply(field, &cur);
        }
        cur
    }

    /// `x · λ` for an element `λ` given over the algebra basis.
    fn act(&self, x: &[Scalar], lambda: &[Scalar]) -> Vector {
        let field = self.field();
        let mut out = vec![Scalar::zero(); self.dim()];
        for (p, c) in lambda.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let y = self.act_basis_path(x, p);
            for (o, yk) in out.iter_mut().zip(&y) {
                if !yk.is_zero() {
                    *o = field.add(o, &field.mul(c, yk));
                }
            }
        }
        out
    }

    /// Basis vectors whose classes span `M / M rad Λ`, per vertex.
    fn top_basis(&self) -> Vec<usize> {
        let field = self.field();
        let mut gens = Vec::new();
        for v in 0..self.algebra.vertex_count() {
            let idx = self.indices_at(v);
            if idx.is_empty() {
                continue;
            }
            let mut images = Vec::new();
            for mat in &self.actions {
                for j in 0..self.dim() {
                    let col: Vector = idx.iter().map(|&i| mat.get(i, j).clone()).collect();
                    images.push(col);
                }
            }
            let rad = Subspace::span(field, idx.len(), images);
            gens.extend(rad.complement_indices().into_iter().map(|k| idx[k]));
        }
        gens
    }
}

/// One step of an ungraded minimal resolution: the cover of the current
/// syzygy and its kernel.
struct Step {
    /// Vertex of each generator of the projective term.
    generators: Vec<usize>,
    /// Offsets and paths of each summand inside the term.
    layout: Vec<(usize, usize)>,
    /// Kernel basis vectors, in term coordinates.
    kernel: Vec<Vector>,
    /// The kernel as a module.
    syzygy: UngradedModule,
}

fn cover_step(m: &UngradedModule) -> Step {
    let alg = &m.algebra;
    let field = m.field();
    let gens = m.top_basis();
    let mut layout = Vec::new();
    let mut columns: Vec<Vector> = Vec::new();
    let mut term_vertex = Vec::new();
    for (s, &g) in gens.iter().enumerate() {
        let mut start = vec![Scalar::zero(); m.dim()];
        start[g] = field.one();
        for p in (0..alg.dim()).filter(|&p| alg.basis()[p].source == m.vertex[g]) {
            layout.push((s, p));
            term_vertex.push(alg.basis()[p].target);
            columns.push(m.act_basis_path(&start, p));
        }
    }
    let term_dim = layout.len();

    // kernel of the cover, vertex by vertex
    let mut kernel = Vec::new();
    let mut blocks: Vec<(Vec<usize>, Subspace)> = Vec::new();
    for v in 0..alg.vertex_count() {
        let cols: Vec<usize> = (0..term_dim).filter(|&c| term_vertex[c] == v).collect();
        if cols.is_empty() {
            continue;
        }
        let rows = m.indices_at(v);
        let mut mat = Matrix::zeros(rows.len(), cols.len());
        for (ci, &c) in cols.iter().enumerate() {
            for (ri, &r) in rows.iter().enumerate() {
                mat.set(ri, ci, columns[c][r].clone());
            }
        }
        let local = Subspace::span(field, cols.len(), mat.kernel(field));
        for b in local.basis() {
            let mut full = vec![Scalar::zero(); term_dim];
            for (ci, &c) in cols.iter().enumerate() {
                full[c] = b[ci].clone();
            }
            kernel.push(full);
        }
        blocks.push((cols, local));
    }

    // module structure on the kernel: act in the term, read coordinates back
    let term = term_module(alg, &layout, &term_vertex);
    let kdim = kernel.len();
    let mut actions = Vec::with_capacity(alg.arrow_count());
    for a in 0..alg.arrow_count() {
        let mut mat = Matrix::zeros(kdim, kdim);
        for (j, k) in kernel.iter().enumerate() {
            let img = term.actions[a].apply(field, k);
            let mut offset = 0;
            for (cols, local) in &blocks {
                let restricted: Vector = cols.iter().map(|&c| img[c].clone()).collect();
                let coords = local
                    .coordinates(field, &restricted)
                    .expect("kernel of a module map is a submodule");
                for (i, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        mat.set(offset + i, j, c);
                    }
                }
                offset += local.dim();
            }
        }
        actions.push(mat);
    }
    let vertex = blocks
        .iter()
        .flat_map(|(cols, local)| std::iter::repeat_n(term_vertex[cols[0]], local.dim()))
        .collect();
    let syzygy = UngradedModule { algebra: alg.clone(), vertex, actions };
    Step { generators: gens.iter().map(|&g| m.vertex[g]).collect(), layout, kernel, syzygy }
}

fn term_module(
    alg: &Arc<GradedAlgebra>,
    layout: &[(usize, usize)],
    term_vertex: &[usize],
) -> UngradedModule {
    let dim = layout.len();
    let position = |s: usize, p: usize| layout.iter().position(|&(t, q)| t == s && q == p);
    let mut actions = Vec::with_capacity(alg.arrow_count());
    for a in 0..alg.arrow_count() {
        let mut mat = Matrix::zeros(dim, dim);
        for (j, &(s, p)) in layout.iter().enumerate() {
            for (k, c) in alg.mul_arrow(p, a) {
                mat.set(position(s, k).expect("same summand"), j, c);
            }
        }
        actions.push(mat);
    }
    UngradedModule { algebra: alg.clone(), vertex: term_vertex.to_vec(), actions }
}

/// An ungraded minimal projective resolution through `P^length`.
pub struct UngradedResolution {
    steps: Vec<Step>,
    algebra: Arc<GradedAlgebra>,
}

impl UngradedResolution {
    pub fn new(m: &UngradedModule, length: usize) -> Self {
        let mut steps: Vec<Step> = Vec::new();
        let mut current = m.clone();
        for _ in 0..=length {
            if current.dim() == 0 {
                break;
            }
            let step = cover_step(&current);
            current = step.syzygy.clone();
            steps.push(step);
        }
        UngradedResolution { steps, algebra: m.algebra.clone() }
    }

    /// Vertex multiset of each term.
    pub fn betti_numbers(&self) -> Vec<Vec<usize>> {
        self.steps
            .iter()
            .map(|s| {
                let mut c = vec![0; self.algebra.vertex_count()];
                for &v in &s.generators {
                    c[v] += 1;
                }
                c
            })
            .collect()
    }

    pub fn term_count(&self) -> usize {
        self.steps.len()
    }

    /// `λ[h][g]` for the differential from term `i` to term `i - 1`: the
    /// generator `h` maps to the kernel vector `h` of step `i - 1`, split by
    /// summand of term `i - 1`.
    fn components(&self, i: usize) -> Vec<Vec<Vector>> {
        let prev = &self.steps[i - 1];
        let here = &self.steps[i];
        // generators of term i are top basis vectors of the syzygy, i.e.
        // specific kernel vectors of step i - 1
        let top = prev.syzygy.top_basis();
        debug_assert_eq!(top.len(), here.generators.len());
        top.iter()
            .map(|&k| {
                let v = &prev.kernel[k];
                let mut comps = vec![vec![Scalar::zero(); self.algebra.dim()]; prev.generators.len()];
                for (c, &(s, p)) in v.iter().zip(&prev.layout) {
                    if !c.is_zero() {
                        comps[s][p] = c.clone();
                    }
                }
                comps
            })
            .collect()
    }
}

/// `dim Ext^i_Λ(M, N)` for `0 ≤ i ≤ i_max`, with both gradings forgotten.
pub fn ext_ungraded(m: &GradedModule, n: &GradedModule, i_max: usize) -> Vec<usize> {
    let mu = UngradedModule::forget(m);
    let nu = UngradedModule::forget(n);
    let res = UngradedResolution::new(&mu, i_max + 1);
    let field = nu.field();

    // C^i = ⊕_g e_{v_g} N
    let coords = |i: usize| -> Vec<(usize, usize)> {
        match res.steps.get(i) {
            None => Vec::new(),
            Some(step) => step
                .generators
                .iter()
                .enumerate()
                .flat_map(|(g, &v)| nu.indices_at(v).into_iter().map(move |k| (g, k)))
                .collect(),
        }
    };
    let rank = |i: usize| -> usize {
        if i + 1 >= res.term_count() {
            return 0;
        }
        let src = coords(i);
        let tgt = coords(i + 1);
        if src.is_empty() || tgt.is_empty() {
            return 0;
        }
        let comps = res.components(i + 1);
        let mut mat = Matrix::zeros(tgt.len(), src.len());
        for (col, &(g, k)) in src.iter().enumerate() {
            let mut e = vec![Scalar::zero(); nu.dim()];
            e[k] = field.one();
            for (h, lambdas) in comps.iter().enumerate() {
                let img = nu.act(&e, &lambdas[g]);
                for (k2, c) in img.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    let row = tgt.iter().position(|&t| t == (h, k2)).expect("vertex matches");
                    mat.set(row, col, field.add(mat.get(row, col), c));
                }
            }
        }
        mat.rank(field)
    };
    let ranks: Vec<usize> = (0..=i_max).map(rank).collect();
    (0..=i_max)
        .map(|i| coords(i).len() - ranks[i] - if i == 0 { 0 } else { ranks[i - 1] })
        .collect()
}
