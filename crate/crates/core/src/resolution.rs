//! Minimal graded projective resolutions and graded Ext.
//!
//! `P^i` is the projective cover of the syzygy `Ω^i`, and `Ω^{i+1}` is the
//! kernel of the cover. Each `P^i` is recorded by its generators `(vertex,
//! internal degree)`; a generator in degree `g` is the summand `P_v(-g)`.
//! Graded Ext is the cohomology of `Hom_gr(P^•, N(j))`, whose `i`-th term is
//! `⊕_g N_{v_g, g + j}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::module::{Generator, GradedModule, GradedMorphism, ProjectiveSum};

/// Rank bookkeeping for one term of a resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepCertificate {
    pub step: usize,
    pub term_dim: usize,
    /// Rank of the map out of `P^step` (the augmentation when `step = 0`).
    pub rank_out: usize,
    /// `dim P^step - rank_out`.
    pub kernel_dim: usize,
    /// Rank of the map into `P^step`, when that term was computed.
    pub rank_in: Option<usize>,
    /// The composite with the next differential vanishes.
    pub composite_zero: bool,
}

impl StepCertificate {
    pub fn exact(&self) -> bool {
        self.composite_zero && self.rank_in.is_none_or(|r| r == self.kernel_dim)
    }
}

#[derive(Clone, Debug)]
pub struct GradedResolution {
    module: GradedModule,
    length: usize,
    terms: Vec<ProjectiveSum>,
    /// `differentials[0]` is the augmentation `P^0 → M`; `differentials[i]`
    /// is `P^i → P^{i-1}`.
    differentials: Vec<GradedMorphism>,
    /// `Ω^0 = M, …, Ω^{k}` where `k` is one past the last computed term.
    syzygies: Vec<GradedModule>,
    certificates: Vec<StepCertificate>,
}

/// Resolves `module` through `P^length`, stopping early when a syzygy
/// vanishes.
pub fn minimal_graded_resolution(module: &GradedModule, length: usize) -> GradedResolution {
    let mut terms: Vec<ProjectiveSum> = Vec::new();
    let mut differentials: Vec<GradedMorphism> = Vec::new();
    let mut syzygies = vec![module.clone()];
    // embedding of the current syzygy into the previous term
    let mut embedding: Option<Matrix> = None;

    for _ in 0..=length {
        let omega = syzygies.last().unwrap();
        if omega.is_zero() {
            break;
        }
        let (sum, pi) = omega.projective_cover_sum();
        let (kernel, kernel_vectors) = pi.kernel();
        let differential = match (&embedding, terms.last()) {
            (Some(emb), Some(prev)) => GradedMorphism {
                source: sum.module().clone(),
                target: prev.module().clone(),
                matrix: emb.mul(module.field(), &pi.matrix),
            },
            _ => pi,
        };
        embedding = Some(Matrix::from_columns(sum.module().dim(), &kernel_vectors));
        terms.push(sum);
        differentials.push(differential);
        syzygies.push(kernel);
    }

    let certificates = certify(module, &terms, &differentials);
    GradedResolution { module: module.clone(), length, terms, differentials, syzygies, certificates }
}

fn certify(
    module: &GradedModule,
    terms: &[ProjectiveSum],
    differentials: &[GradedMorphism],
) -> Vec<StepCertificate> {
    let field = module.field();
    let ranks: Vec<usize> = differentials.iter().map(GradedMorphism::rank).collect();
    (0..terms.len())
        .map(|i| {
            let term_dim = terms[i].module().dim();
            let composite_zero = match differentials.get(i + 1) {
                Some(next) => differentials[i].matrix.mul(field, &next.matrix).is_zero(),
                None => true,
            };
            StepCertificate {
                step: i,
                term_dim,
                rank_out: ranks[i],
                kernel_dim: term_dim - ranks[i],
                rank_in: ranks.get(i + 1).copied(),
                composite_zero,
            }
        })
        .collect()
}

impl GradedResolution {
    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        self.module.algebra()
    }

    /// Requested length `d`.
    pub fn requested_length(&self) -> usize {
        self.length
    }

    /// Number of nonzero terms computed.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn term(&self, i: usize) -> Option<&ProjectiveSum> {
        self.terms.get(i)
    }

    pub fn generators(&self, i: usize) -> &[Generator] {
        self.terms.get(i).map_or(&[], |t| t.generators())
    }

    pub fn differential(&self, i: usize) -> Option<&GradedMorphism> {
        self.differentials.get(i)
    }

    pub fn syzygy(&self, i: usize) -> Option<&GradedModule> {
        self.syzygies.get(i)
    }

    pub fn certificates(&self) -> &[StepCertificate] {
        &self.certificates
    }

    /// Projective dimension, if a zero syzygy was reached.
    pub fn projective_dimension(&self) -> Option<usize> {
        if self.module.is_zero() {
            return Some(0);
        }
        self.syzygies.last().filter(|s| s.is_zero()).map(|_| self.terms.len() - 1)
    }

    pub fn is_complex(&self) -> bool {
        self.certificates.iter().all(|c| c.composite_zero)
    }

    /// Augmentation surjective and every interior step exact.
    pub fn is_exact(&self) -> bool {
        let surjective = self
            .certificates
            .first()
            .map_or(self.module.is_zero(), |c| c.rank_out == self.module.dim());
        surjective && self.certificates.iter().all(StepCertificate::exact)
    }

    /// Every differential lands in the radical of its target: no generator
    /// of `P^i` maps onto a generator of `P^{i-1}` with a nonzero coefficient.
    pub fn is_minimal(&self) -> bool {
        (1..self.terms.len()).all(|i| {
            let d = &self.differentials[i];
            let prev = &self.terms[i - 1];
            (0..self.terms[i].generators().len()).all(|h| {
                let col = d.matrix.column(self.terms[i].generator_index(h));
                (0..prev.generators().len()).all(|g| col[prev.generator_index(g)].is_zero())
            })
        })
    }

    /// `λ[h][g]`: the component of `d(h)` in summand `g`, as an element of
    /// `e_{v_g} Λ`, for `d: P^i → P^{i-1}` with `i ≥ 1`.
    pub fn differential_components(&self, i: usize) -> Vec<Vec<Vector>> {
        let d = &self.differentials[i];
        let src = &self.terms[i];
        let tgt = &self.terms[i - 1];
        (0..src.generators().len())
            .map(|h| tgt.components(&d.matrix.column(src.generator_index(h))))
            .collect()
    }

    /// `(i, generator degree) → count`.
    pub fn betti_table(&self) -> BTreeMap<(usize, i64), usize> {
        let mut table = BTreeMap::new();
        for (i, t) in self.terms.iter().enumerate() {
            for g in t.generators() {
                *table.entry((i, g.degree)).or_insert(0) += 1;
            }
        }
        table
    }

    /// Vertex multiset of each term: `counts[i][v]`.
    pub fn vertex_betti_numbers(&self) -> Vec<Vec<usize>> {
        let n = self.algebra().vertex_count();
        self.terms
            .iter()
            .map(|t| {
                let mut c = vec![0; n];
                for g in t.generators() {
                    c[g.vertex] += 1;
                }
                c
            })
            .collect()
    }

    pub fn summary(&self) -> ResolutionSummary {
        ResolutionSummary {
            requested_length: self.length,
            terms: self
                .terms
                .iter()
                .map(|t| {
                    t.generators()
                        .iter()
                        .map(|g| TermGenerator {
                            vertex: self.algebra().vertex_label(g.vertex).to_string(),
                            twist: g.twist(),
                        })
                        .collect()
                })
                .collect(),
            projective_dimension: self.projective_dimension(),
            complex: self.is_complex(),
            exact: self.is_exact(),
            minimal: self.is_minimal(),
            certificates: self.certificates.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermGenerator {
    pub vertex: String,
    pub twist: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionSummary {
    pub requested_length: usize,
    /// Each term as a list of summands `P_vertex(twist)`.
    pub terms: Vec<Vec<TermGenerator>>,
    pub projective_dimension: Option<usize>,
    pub complex: bool,
    pub exact: bool,
    pub minimal: bool,
    pub certificates: Vec<StepCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonnegativityReport {
    pub depth: usize,
    /// Generator degrees of each `P^i`, sorted.
    pub generator_degrees: Vec<Vec<i64>>,
    pub passes: bool,
}

/// Checks that every generator of every `P^i`, `i ≤ depth`, sits in a
/// non-negative internal degree. `M` must be generated in degrees ≥ 0.
pub fn verify_resolution_nonnegativity(m: &GradedModule, depth: usize) -> Result<NonnegativityReport> {
    if let Some(&j) = m.top_generators().iter().find(|&&j| m.basis()[j].degree < 0) {
        return Err(Error::Hypothesis(format!(
            "module has a generator in negative degree {}",
            m.basis()[j].degree
        )));
    }
    let res = minimal_graded_resolution(m, depth);
    let generator_degrees: Vec<Vec<i64>> = (0..res.term_count())
        .map(|i| {
            let mut d: Vec<i64> = res.generators(i).iter().map(|g| g.degree).collect();
            d.sort_unstable();
            d
        })
        .collect();
    let passes = generator_degrees.iter().flatten().all(|&d| d >= 0);
    Ok(NonnegativityReport { depth, generator_degrees, passes })
}

/// Bigraded table `(i, j) ↦ dim Ext^i_gr(M, N(j))` over a finite window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtTable {
    pub i_max: usize,
    pub j_window: (i64, i64),
    #[serde(serialize_with = "serialize_entries")]
    pub entries: BTreeMap<(usize, i64), usize>,
}

fn serialize_entries<S: serde::Serializer>(
    entries: &BTreeMap<(usize, i64), usize>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(entries.len()))?;
    for ((i, j), d) in entries {
        seq.serialize_element(&(i, j, d))?;
    }
    seq.end()
}

impl ExtTable {
    pub fn get(&self, i: usize, j: i64) -> Option<usize> {
        self.entries.get(&(i, j)).copied()
    }

    /// `Σ_j dim Ext^i_gr(M, N(j))` over the window.
    pub fn row_sum(&self, i: usize) -> usize {
        self.entries.range((i, i64::MIN)..=(i, i64::MAX)).map(|(_, d)| d).sum()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = ((usize, i64), usize)> + '_ {
        self.entries.iter().filter(|(_, &d)| d > 0).map(|(&k, &d)| (k, d))
    }
}

impl fmt::Display for ExtTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.j_window;
        write!(f, "{:>4} |", "i\\j")?;
        for j in lo..=hi {
            write!(f, "{j:>4}")?;
        }
        writeln!(f)?;
        writeln!(f, "{}", "-".repeat(6 + 4 * (hi - lo + 1).max(0) as usize))?;
        for i in 0..=self.i_max {
            write!(f, "{i:>4} |")?;
            for j in lo..=hi {
                match self.get(i, j) {
                    Some(0) => write!(f, "{:>4}", ".")?,
                    Some(d) => write!(f, "{d:>4}")?,
                    None => write!(f, "{:>4}", "?")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Default window `[-(d · max arrow degree · Loewy length), 2]` with
/// `d = i_max + 1`, widened if needed so that it covers every twist where a
/// cochain group can be nonzero.
pub fn default_j_window(res: &GradedResolution, n: &GradedModule, i_max: usize) -> (i64, i64) {
    let alg = res.algebra();
    let d = (i_max + 1) as i64;
    let formula_lo = -(d * alg.presentation().quiver.max_arrow_degree().max(1) as i64 * alg.loewy_length() as i64);
    let (lo, hi) = support_window(res, n, i_max).unwrap_or((formula_lo, 0));
    (formula_lo.min(lo), 2.max(hi + 2))
}

/// Smallest window containing every twist with a nonzero cochain group.
pub fn support_window(res: &GradedResolution, n: &GradedModule, i_max: usize) -> Option<(i64, i64)> {
    let (nmin, nmax) = n.degree_range()?;
    let degrees: Vec<i64> =
        (0..=i_max.min(res.term_count().saturating_sub(1))).flat_map(|i| res.generators(i).iter().map(|g| g.degree)).collect();
    let gmin = *degrees.iter().min()?;
    let gmax = *degrees.iter().max()?;
    Some((nmin - gmax, nmax - gmin))
}

/// `dim Ext^i_gr(M, N(j))` for `0 ≤ i ≤ i_max` and `j` in the window.
pub fn ext_graded(
    m: &GradedModule,
    n: &GradedModule,
    i_max: usize,
    j_window: Option<(i64, i64)>,
) -> Result<ExtTable> {
    let res = minimal_graded_resolution(m, i_max + 1);
    ext_graded_from(&res, n, i_max, j_window)
}

pub fn ext_graded_from(
    res: &GradedResolution,
    n: &GradedModule,
    i_max: usize,
    j_window: Option<(i64, i64)>,
) -> Result<ExtTable> {
    if !crate::module::same_algebra(res.algebra(), n.algebra()) {
        return Err(Error::Validation("Ext between modules over different algebras".into()));
    }
    if res.requested_length() < i_max + 1 && res.projective_dimension().is_none() {
        return Err(Error::Validation(format!(
            "resolution of length {} too short for Ext up to degree {i_max}",
            res.requested_length()
        )));
    }
    let window = j_window.unwrap_or_else(|| default_j_window(res, n, i_max));
    let cochains = GradedCochains::new(res, n, i_max);
    let mut entries = BTreeMap::new();
    for j in window.0..=window.1 {
        let dims: Vec<usize> = (0..=i_max + 1).map(|i| cochains.dim(i, j)).collect();
        let ranks: Vec<usize> = (0..=i_max).map(|i| cochains.rank(i, j)).collect();
        for i in 0..=i_max {
            let incoming = if i == 0 { 0 } else { ranks[i - 1] };
            entries.insert((i, j), dims[i] - ranks[i] - incoming);
        }
    }
    Ok(ExtTable { i_max, j_window: window, entries })
}

/// `C^i(j) = Hom_gr(P^i, N(j))` with the differentials induced by the
/// resolution.
struct GradedCochains<'a> {
    res: &'a GradedResolution,
    n: &'a GradedModule,
    /// `components[i][h][g]` for the differential `P^i → P^{i-1}`.
    components: Vec<Vec<Vec<Vector>>>,
}

impl<'a> GradedCochains<'a> {
    fn new(res: &'a GradedResolution, n: &'a GradedModule, i_max: usize) -> Self {
        let top = (i_max + 1).min(res.term_count().saturating_sub(1));
        let mut components = vec![Vec::new()];
        for i in 1..=top {
            components.push(res.differential_components(i));
        }
        GradedCochains { res, n, components }
    }

    /// Basis of `C^i(j)`: pairs `(generator, basis vector of N)`.
    fn coordinates(&self, i: usize, j: i64) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (s, g) in self.res.generators(i).iter().enumerate() {
            for (k, b) in self.n.basis().iter().enumerate() {
                if b.vertex == g.vertex && b.degree == g.degree + j {
                    out.push((s, k));
                }
            }
        }
        out
    }

    fn dim(&self, i: usize, j: i64) -> usize {
        self.coordinates(i, j).len()
    }

    /// Rank of `C^i(j) → C^{i+1}(j)`, `φ ↦ φ ∘ d`.
    fn rank(&self, i: usize, j: i64) -> usize {
        if i + 1 >= self.components.len() {
            return 0;
        }
        let src = self.coordinates(i, j);
        let tgt = self.coordinates(i + 1, j);
        if src.is_empty() || tgt.is_empty() {
            return 0;
        }
        let field = self.n.field();
        let row_of: BTreeMap<(usize, usize), usize> =
            tgt.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        let mut m = Matrix::zeros(tgt.len(), src.len());
        for (col, &(g, k)) in src.iter().enumerate() {
            for (h, comps) in self.components[i + 1].iter().enumerate() {
                let lambda = &comps[g];
                if lambda.iter().all(Zero::is_zero) {
                    continue;
                }
                let image = self.n.act_element(&self.n.unit(k), lambda);
                for (k2, c) in image.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    let r = row_of[&(h, k2)];
                    m.set(r, col, field.add(m.get(r, col), c));
                }
            }
        }
        m.rank(field)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GlobalDimension {
    FiniteValue(usize),
    ExceedsBound(usize),
}

/// Resolves every simple through `P^d` and reports the largest projective
/// dimension if all of them terminate.
pub fn global_dimension_probe(algebra: &Arc<GradedAlgebra>, d: usize) -> GlobalDimension {
    let mut max = 0;
    for v in 0..algebra.vertex_count() {
        let s = GradedModule::simple(algebra.clone(), v).expect("valid vertex");
        match minimal_graded_resolution(&s, d).projective_dimension() {
            Some(pd) => max = max.max(pd),
            None => return GlobalDimension::ExceedsBound(d),
        }
    }
    GlobalDimension::FiniteValue(max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ungraded::{ext_ungraded, UngradedModule, UngradedResolution};

    fn simple(alg: &Arc<GradedAlgebra>, v: usize) -> GradedModule {
        GradedModule::simple(alg.clone(), v).unwrap()
    }

    fn gens(res: &GradedResolution, i: usize) -> Vec<(usize, i64)> {
        res.generators(i).iter().map(|g| (g.vertex, g.degree)).collect()
    }

    #[test]
    fn projective_resolves_in_one_step() {
        let alg = Arc::new(fixtures::dual_numbers());
        let p = GradedModule::projective(alg.clone(), 0).unwrap();
        let res = minimal_graded_resolution(&p, 0);
        assert_eq!(res.term_count(), 1);
        assert!(res.syzygy(1).unwrap().is_zero());
        assert_eq!(res.projective_dimension(), Some(0));
    }

    #[test]
    fn dual_numbers_simple() {
        let alg = Arc::new(fixtures::dual_numbers());
        let res = minimal_graded_resolution(&simple(&alg, 0), 3);
        assert_eq!(res.term_count(), 4);
        for i in 0..4 {
            assert_eq!(gens(&res, i), [(0, i as i64)]);
        }
        assert!(res.is_complex() && res.is_exact() && res.is_minimal());
        assert_eq!(res.projective_dimension(), None);
    }

    #[test]
    fn a2_simple_top() {
        let alg = Arc::new(fixtures::a2());
        let res = minimal_graded_resolution(&simple(&alg, 0), 4);
        assert_eq!(gens(&res, 0), [(0, 0)]);
        assert_eq!(gens(&res, 1), [(1, 1)]);
        assert_eq!(res.summary().terms[1][0].twist, -1);
        assert_eq!(res.projective_dimension(), Some(1));
        assert!(res.is_exact());
    }

    #[test]
    fn truncated_cubic_generator_degrees() {
        let alg = Arc::new(fixtures::truncated_polynomial(3));
        let report = verify_resolution_nonnegativity(&simple(&alg, 0), 6).unwrap();
        let degs: Vec<i64> = report.generator_degrees.iter().map(|d| d[0]).collect();
        assert_eq!(degs, [0, 1, 3, 4, 6, 7, 9]);
        assert!(report.passes);
    }

    #[test]
    fn negative_generator_is_refused() {
        let alg = Arc::new(fixtures::dual_numbers());
        let err = verify_resolution_nonnegativity(&simple(&alg, 0).twist(1), 3).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(_)));
    }

    #[test]
    fn ext_examples() {
        let alg = Arc::new(fixtures::dual_numbers());
        let s = simple(&alg, 0);
        let t = ext_graded(&s, &s, 4, None).unwrap();
        for i in 0..=4 {
            for j in t.j_window.0..=t.j_window.1 {
                let expect = usize::from(j == -(i as i64));
                assert_eq!(t.get(i, j), Some(expect), "({i},{j})");
            }
        }
        assert!(t.j_window.1 >= 2);

        let p = GradedModule::projective(alg.clone(), 0).unwrap();
        let t = ext_graded(&p, &s, 3, None).unwrap();
        assert!(t.nonzero().all(|((i, _), _)| i == 0));
        assert_eq!(t.row_sum(0), 1);

        assert_eq!(ext_ungraded(&s, &s, 5), vec![1; 6]);
        assert_eq!(ext_ungraded(&p, &s, 3), vec![1, 0, 0, 0]);

        let ss = Arc::new(fixtures::semisimple(2));
        assert_eq!(ext_ungraded(&simple(&ss, 0), &simple(&ss, 0), 2), [1, 0, 0]);
        assert_eq!(ext_ungraded(&simple(&ss, 0), &simple(&ss, 1), 2), [0, 0, 0]);
    }

    #[test]
    fn graded_rows_sum_to_ungraded_on_cubic() {
        let alg = Arc::new(fixtures::truncated_polynomial(3));
        let s = simple(&alg, 0);
        let t = ext_graded(&s, &s, 4, None).unwrap();
        let ung = ext_ungraded(&s, &s, 4);
        for i in 0..=4 {
            assert_eq!(t.row_sum(i), ung[i]);
        }
        // Ext^i(S, S(j)) sits at j = -(generator degree of P^i)
        let nz: Vec<(usize, i64)> = t.nonzero().map(|(k, _)| k).collect();
        assert_eq!(nz, [(0, 0), (1, -1), (2, -3), (3, -4), (4, -6)]);
    }

    #[test]
    fn global_dimension() {
        assert_eq!(global_dimension_probe(&Arc::new(fixtures::a2()), 4), GlobalDimension::FiniteValue(1));
        assert_eq!(
            global_dimension_probe(&Arc::new(fixtures::a3_zero_relation()), 4),
            GlobalDimension::FiniteValue(2)
        );
        assert_eq!(global_dimension_probe(&Arc::new(fixtures::semisimple(3)), 0), GlobalDimension::FiniteValue(0));
        for d in [0, 1, 5] {
            assert_eq!(
                global_dimension_probe(&Arc::new(fixtures::dual_numbers()), d),
                GlobalDimension::ExceedsBound(d)
            );
        }
    }

    #[test]
    fn corpus_resolutions_are_certified_and_match_ungraded_betti() {
        for (name, alg) in fixtures::corpus() {
            let alg = Arc::new(alg);
            for v in 0..alg.vertex_count() {
                let s = simple(&alg, v);
                let res = minimal_graded_resolution(&s, 5);
                assert!(res.is_complex(), "{name}");
                assert!(res.is_exact(), "{name}");
                assert!(res.is_minimal(), "{name}");
                let ung = UngradedResolution::new(&UngradedModule::forget(&s), 5);
                assert_eq!(res.vertex_betti_numbers(), ung.betti_numbers(), "{name} S{v}");
            }
        }
    }

    #[test]
    fn twist_equivariance() {
        let alg = Arc::new(fixtures::commutative_xy_squares());
        let s = simple(&alg, 0);
        let base = ext_graded(&s, &s, 3, Some((-10, 10))).unwrap();
        for t in [-2i64, 1, 3] {
            let shifted = ext_graded(&s.twist(t), &s, 3, Some((-10, 10))).unwrap();
            for i in 0..=3 {
                for j in -7..=7 {
                    assert_eq!(shifted.get(i, j), base.get(i, j - t), "t={t} ({i},{j})");
                }
            }
        }
    }
}
