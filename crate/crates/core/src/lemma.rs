//! Certifies the splitting of ungraded Ext into graded pieces on concrete
//! modules: for `M` generated in degrees ≥ 0 and `N` concentrated in degrees
//! ≤ 0,
//!
//! ```text
//! Ext^i(M, N) = ⊕_{j ≤ 0} Ext^i_gr(M, N(j))
//! ```
//!
//! Graded entries come from [`crate::resolution`], the totals from the
//! separate engine in [`crate::ungraded`].

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::module::GradedModule;
use crate::resolution::{ext_graded_from, minimal_graded_resolution, ExtTable, GradedResolution};
use crate::ungraded::ext_ungraded;

/// Hard bound on `|j|` while widening.
pub const DEFAULT_J_CAP: i64 = 64;

const INITIAL_HALF_WIDTH: i64 = 2;

/// `S<vertex>` or `P<vertex>`, optionally twisted: `S1(-2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleSelector {
    pub kind: ModuleKind,
    pub vertex: String,
    pub twist: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleKind {
    Simple,
    Projective,
}

impl FromStr for ModuleSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("module selector {s:?}: expected S<vertex> or P<vertex>, optionally with (twist)"));
        let s = s.trim();
        let kind = match s.chars().next() {
            Some('S') => ModuleKind::Simple,
            Some('P') => ModuleKind::Projective,
            _ => return Err(bad()),
        };
        let rest = &s[1..];
        let (vertex, twist) = match rest.find('(') {
            None => (rest, 0),
            Some(open) => {
                let inner = rest[open + 1..].strip_suffix(')').ok_or_else(bad)?;
                (&rest[..open], inner.trim().parse::<i64>().map_err(|_| bad())?)
            }
        };
        if vertex.is_empty() {
            return Err(bad());
        }
        Ok(ModuleSelector { kind, vertex: vertex.to_string(), twist })
    }
}

impl fmt::Display for ModuleSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            ModuleKind::Simple => 'S',
            ModuleKind::Projective => 'P',
        };
        write!(f, "{k}{}", self.vertex)?;
        if self.twist != 0 {
            write!(f, "({})", self.twist)?;
        }
        Ok(())
    }
}

impl ModuleSelector {
    pub fn simple(vertex: &str) -> Self {
        ModuleSelector { kind: ModuleKind::Simple, vertex: vertex.to_string(), twist: 0 }
    }

    pub fn build(&self, alg: &Arc<GradedAlgebra>) -> Result<GradedModule> {
        let v = alg
            .presentation()
            .quiver
            .vertex_index(&self.vertex)
            .ok_or_else(|| Error::Validation(format!("module selector {self}: unknown vertex {:?}", self.vertex)))?;
        let m = match self.kind {
            ModuleKind::Simple => GradedModule::simple(alg.clone(), v)?,
            ModuleKind::Projective => GradedModule::projective(alg.clone(), v)?,
        };
        Ok(m.twist(self.twist))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub i: usize,
    pub graded_sum: usize,
    pub ungraded: usize,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub m: String,
    pub n: String,
    pub i_max: usize,
    pub j_window: (i64, i64),
    /// Length of the graded resolution that was computed.
    pub depth: usize,
    /// Windows tried, in order.
    pub widenings: Vec<(i64, i64)>,
    pub stabilized: bool,
    pub graded: ExtTable,
    pub ungraded: Vec<usize>,
    /// No nonzero entry at any computed `j > 0`.
    pub vanishing: bool,
    /// Nonzero cells at `j > 0`, if any.
    pub violations: Vec<(usize, i64, usize)>,
    pub rows: Vec<RowCheck>,
    /// Number of computed `(i, j)` cells with `j > 0`.
    pub positive_coverage: usize,
    pub verdict: Verdict,
    pub note: Option<String>,
}

impl LemmaReport {
    pub fn passes(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "M = {}, N = {}, i_max = {}, j in [{}, {}]", self.m, self.n, self.i_max, self.j_window.0, self.j_window.1)?;
        write!(f, "{}", self.graded)?;
        for r in &self.rows {
            writeln!(
                f,
                "i = {}: graded sum {} / ungraded {} {}",
                r.i,
                r.graded_sum,
                r.ungraded,
                if r.matches { "ok" } else { "MISMATCH" }
            )?;
        }
        writeln!(f, "positive twists vanish: {} ({} cells checked)", self.vanishing, self.positive_coverage)?;
        if let Some(note) = &self.note {
            writeln!(f, "note: {note}")?;
        }
        write!(f, "verdict: {}", self.verdict)
    }
}

/// Refuses inputs outside the degree hypotheses; nothing is re-twisted.
pub fn check_hypotheses(m: &GradedModule, n: &GradedModule) -> Result<()> {
    if let Some(&j) = m.top_generators().iter().find(|&&j| m.basis()[j].degree < 0) {
        return Err(Error::Hypothesis(format!(
            "first module has a generator in degree {} < 0",
            m.basis()[j].degree
        )));
    }
    if let Some(b) = n.basis().iter().find(|b| b.degree > 0) {
        return Err(Error::Hypothesis(format!("second module is nonzero in degree {} > 0", b.degree)));
    }
    Ok(())
}

/// Checks vanishing at positive twists and the row sums against the
/// ungraded engine. With no window given, `[-w, w]` is doubled from `w = 2`
/// until two doublings in a row add no nonzero cell; if that does not
/// happen within `|j| ≤ cap` the report is inconclusive.
pub fn verify_decomposition(
    m: &GradedModule,
    n: &GradedModule,
    i_max: usize,
    j_window: Option<(i64, i64)>,
    cap: i64,
) -> Result<LemmaReport> {
    check_hypotheses(m, n)?;
    let res = minimal_graded_resolution(m, i_max + 1);
    let ungraded = ext_ungraded(m, n, i_max);
    let (graded, widenings, stabilized) = match j_window {
        Some(w) => {
            if w.0 > w.1 {
                return Err(Error::Validation(format!("empty j window [{}, {}]", w.0, w.1)));
            }
            (ext_graded_from(&res, n, i_max, Some(w))?, vec![w], true)
        }
        None => widen(&res, n, i_max, cap)?,
    };
    Ok(judge(m, n, i_max, &res, graded, ungraded, widenings, stabilized))
}

/// Final table, windows tried, and whether the window stabilized.
type Widened = (ExtTable, Vec<(i64, i64)>, bool);

fn widen(res: &GradedResolution, n: &GradedModule, i_max: usize, cap: i64) -> Result<Widened> {
    let mut w = INITIAL_HALF_WIDTH.min(cap.max(1));
    let mut table = ext_graded_from(res, n, i_max, Some((-w, w)))?;
    let mut widenings = vec![(-w, w)];
    let mut quiet = 0;
    while quiet < 2 && w < cap {
        w = (2 * w).min(cap);
        let next = ext_graded_from(res, n, i_max, Some((-w, w)))?;
        if next.nonzero().count() == table.nonzero().count() {
            quiet += 1;
        } else {
            quiet = 0;
        }
        table = next;
        widenings.push((-w, w));
    }
    Ok((table, widenings, quiet >= 2))
}

#[allow(clippy::too_many_arguments)]
fn judge(
    m: &GradedModule,
    n: &GradedModule,
    i_max: usize,
    res: &GradedResolution,
    graded: ExtTable,
    ungraded: Vec<usize>,
    widenings: Vec<(i64, i64)>,
    stabilized: bool,
) -> LemmaReport {
    let violations: Vec<(usize, i64, usize)> =
        graded.nonzero().filter(|((_, j), _)| *j > 0).map(|((i, j), d)| (i, j, d)).collect();
    let positive_coverage = graded.entries.keys().filter(|(_, j)| *j > 0).count();
    let rows: Vec<RowCheck> = (0..=i_max)
        .map(|i| {
            let graded_sum = graded.row_sum(i);
            let u = ungraded.get(i).copied().unwrap_or(0);
            RowCheck { i, graded_sum, ungraded: u, matches: graded_sum == u }
        })
        .collect();
    let vanishing = violations.is_empty();
    let sums_ok = rows.iter().all(|r| r.matches);

    let (verdict, note) = if !vanishing {
        (Verdict::Fail, Some("nonzero Ext at a positive twist".to_string()))
    } else if !stabilized {
        (Verdict::Inconclusive, Some(format!("window did not stabilize within |j| <= {}", graded.j_window.1.max(-graded.j_window.0))))
    } else if !sums_ok {
        (Verdict::Fail, Some("graded row sums differ from ungraded Ext".to_string()))
    } else if positive_coverage == 0 {
        (Verdict::Inconclusive, Some("no positive twist was computed".to_string()))
    } else {
        (Verdict::Pass, None)
    };
    LemmaReport {
        m: describe(m),
        n: describe(n),
        i_max,
        j_window: graded.j_window,
        depth: res.requested_length(),
        widenings,
        stabilized,
        graded,
        ungraded,
        vanishing,
        violations,
        rows,
        positive_coverage,
        verdict,
        note,
    }
}

fn describe(m: &GradedModule) -> String {
    let dims: Vec<String> = m.basis().iter().map(|b| format!("{}@{}", m.algebra().vertex_label(b.vertex), b.degree)).collect();
    format!("[{}]", dims.join(" "))
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub cases: Vec<ManifestCase>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestCase {
    pub algebra: String,
    /// Module pairs as selectors; all simple pairs when absent.
    #[serde(default)]
    pub pairs: Option<Vec<(String, String)>>,
    pub i_max: usize,
    #[serde(default)]
    pub j_window: Option<(i64, i64)>,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("manifest, line {} column {}: {e}", e.line(), e.column())))
    }
}

/// Outcome of one case of a sweep.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum CaseOutcome {
    Pass,
    Fail,
    Inconclusive,
    InputError { message: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub algebra: String,
    pub m: String,
    pub n: String,
    pub i_max: usize,
    #[serde(flatten)]
    pub outcome: CaseOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<LemmaReport>,
    /// Resolution and Ext tables, kept for anything that did not pass.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forensics: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepStatus {
    Pass,
    Fail,
    InputError,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub cases: Vec<CaseResult>,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
    pub input_errors: usize,
    pub warnings: Vec<String>,
    pub status: SweepStatus,
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            let status = match &c.outcome {
                CaseOutcome::Pass => "pass".to_string(),
                CaseOutcome::Fail => "FAIL".to_string(),
                CaseOutcome::Inconclusive => "inconclusive".to_string(),
                CaseOutcome::InputError { message } => format!("input error: {message}"),
            };
            let extra = c.report.as_ref().map_or(String::new(), |r| {
                format!(" (j in [{}, {}], {} positive cells)", r.j_window.0, r.j_window.1, r.positive_coverage)
            });
            writeln!(f, "{} {} {} i_max={}: {status}{extra}", c.algebra, c.m, c.n, c.i_max)?;
            if let Some(dump) = &c.forensics {
                for line in dump.lines() {
                    writeln!(f, "    {line}")?;
                }
            }
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        write!(
            f,
            "{} cases: {} passed, {} failed, {} inconclusive, {} input errors",
            self.cases.len(),
            self.passed,
            self.failed,
            self.inconclusive,
            self.input_errors
        )
    }
}

/// A loaded case ready to run.
pub struct SweepCase {
    pub name: String,
    pub algebra: std::result::Result<Arc<GradedAlgebra>, String>,
    pub pairs: Vec<(String, String)>,
    pub i_max: usize,
    pub j_window: Option<(i64, i64)>,
}

/// Reads every algebra a manifest refers to, relative to the manifest. A manifest
/// that cannot be parsed is an error; an algebra that cannot be loaded turns
/// into input errors for its cases.
pub fn load_manifest(path: &Path) -> Result<Vec<SweepCase>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let manifest = Manifest::parse(&text)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."));
    Ok(manifest
        .cases
        .into_iter()
        .map(|case| {
            let algebra = fs::read_to_string(base.join(&case.algebra))
                .map_err(|e| e.to_string())
                .and_then(|t| GradedAlgebra::from_text(&t).map_err(|e| e.to_string()))
                .map(Arc::new);
            let pairs = match (&case.pairs, &algebra) {
                (Some(p), _) => p.clone(),
                (None, Ok(alg)) => all_simple_pairs(alg),
                (None, Err(_)) => vec![("S?".into(), "S?".into())],
            };
            SweepCase { name: case.algebra, algebra, pairs, i_max: case.i_max, j_window: case.j_window }
        })
        .collect())
}

pub fn all_simple_pairs(alg: &GradedAlgebra) -> Vec<(String, String)> {
    let labels: Vec<String> = (0..alg.vertex_count()).map(|v| alg.vertex_label(v).to_string()).collect();
    labels
        .iter()
        .flat_map(|a| labels.iter().map(move |b| (format!("S{a}"), format!("S{b}"))))
        .collect()
}

/// Runs every case in order.
pub fn fixture_sweep(cases: &[SweepCase], cap: i64) -> SweepReport {
    let mut results = Vec::new();
    for case in cases {
        for (ms, ns) in &case.pairs {
            results.push(run_case(case, ms, ns, cap));
        }
    }
    let count = |f: fn(&CaseOutcome) -> bool| results.iter().filter(|c| f(&c.outcome)).count();
    let passed = count(|o| matches!(o, CaseOutcome::Pass));
    let failed = count(|o| matches!(o, CaseOutcome::Fail));
    let inconclusive = count(|o| matches!(o, CaseOutcome::Inconclusive));
    let input_errors = count(|o| matches!(o, CaseOutcome::InputError { .. }));
    let mut warnings = Vec::new();
    if results.is_empty() {
        warnings.push("0 cases: nothing was checked".to_string());
    }
    let status = if failed > 0 {
        SweepStatus::Fail
    } else if input_errors > 0 {
        SweepStatus::InputError
    } else if inconclusive > 0 {
        SweepStatus::Inconclusive
    } else {
        SweepStatus::Pass
    };
    SweepReport { cases: results, passed, failed, inconclusive, input_errors, warnings, status }
}

fn run_case(case: &SweepCase, ms: &str, ns: &str, cap: i64) -> CaseResult {
    let mut result = CaseResult {
        algebra: case.name.clone(),
        m: ms.to_string(),
        n: ns.to_string(),
        i_max: case.i_max,
        outcome: CaseOutcome::Pass,
        report: None,
        forensics: None,
    };
    let attempt = || -> Result<(LemmaReport, GradedResolution)> {
        let alg = case.algebra.as_ref().map_err(|e| Error::Validation(e.clone()))?;
        let m = ms.parse::<ModuleSelector>()?.build(alg)?;
        let n = ns.parse::<ModuleSelector>()?.build(alg)?;
        let report = verify_decomposition(&m, &n, case.i_max, case.j_window, cap)?;
        let res = minimal_graded_resolution(&m, case.i_max + 1);
        Ok((report, res))
    };
    match attempt() {
        Err(Error::Consistency(msg)) => {
            result.outcome = CaseOutcome::Fail;
            result.forensics = Some(format!("internal consistency failure: {msg}"));
        }
        Err(e) => result.outcome = CaseOutcome::InputError { message: e.to_string() },
        Ok((report, res)) => {
            result.outcome = match report.verdict {
                Verdict::Pass => CaseOutcome::Pass,
                Verdict::Fail => CaseOutcome::Fail,
                Verdict::Inconclusive => CaseOutcome::Inconclusive,
            };
            if report.verdict != Verdict::Pass {
                result.forensics = Some(forensic_dump(&report, &res));
            }
            result.report = Some(report);
        }
    }
    result
}

fn forensic_dump(report: &LemmaReport, res: &GradedResolution) -> String {
    let mut out = String::from("resolution:\n");
    for i in 0..res.term_count() {
        let gens: Vec<String> = res
            .generators(i)
            .iter()
            .map(|g| format!("P{}({})", res.algebra().vertex_label(g.vertex), -g.degree))
            .collect();
        out.push_str(&format!("  P^{i} = {}\n", if gens.is_empty() { "0".into() } else { gens.join(" + ") }));
    }
    out.push_str(&format!("ungraded Ext: {:?}\n", report.ungraded));
    out.push_str(&report.to_string());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn simple(alg: &Arc<GradedAlgebra>, v: usize) -> GradedModule {
        GradedModule::simple(alg.clone(), v).unwrap()
    }

    #[test]
    fn selectors() {
        let s: ModuleSelector = "S1".parse().unwrap();
        assert_eq!(s, ModuleSelector::simple("1"));
        let p: ModuleSelector = "Pab(-3)".parse().unwrap();
        assert_eq!((p.kind, p.vertex.as_str(), p.twist), (ModuleKind::Projective, "ab", -3));
        assert_eq!(p.to_string(), "Pab(-3)");
        for bad in ["", "X1", "S", "S1(", "S1(x)"] {
            assert!(bad.parse::<ModuleSelector>().is_err(), "{bad}");
        }
        let alg = Arc::new(fixtures::a2());
        assert!("S7".parse::<ModuleSelector>().unwrap().build(&alg).is_err());
        assert_eq!("P1".parse::<ModuleSelector>().unwrap().build(&alg).unwrap().dim(), 2);
    }

    #[test]
    fn dual_numbers_diagonal() {
        let alg = Arc::new(fixtures::dual_numbers());
        let s = simple(&alg, 0);
        let r = verify_decomposition(&s, &s, 4, None, DEFAULT_J_CAP).unwrap();
        assert!(r.passes(), "{r}");
        let cells: Vec<(usize, i64)> = r.graded.nonzero().map(|(k, _)| k).collect();
        assert_eq!(cells, [(0, 0), (1, -1), (2, -2), (3, -3), (4, -4)]);
        assert!(r.positive_coverage >= 1);
        assert_eq!(r.ungraded, vec![1; 5]);
    }

    #[test]
    fn projective_source_has_only_row_zero() {
        let alg = Arc::new(fixtures::a3_zero_relation());
        let p = GradedModule::projective(alg.clone(), 0).unwrap();
        for v in 0..3 {
            let r = verify_decomposition(&p, &simple(&alg, v), 3, None, DEFAULT_J_CAP).unwrap();
            assert!(r.passes());
            assert!(r.graded.nonzero().all(|((i, _), _)| i == 0));
        }
    }

    #[test]
    fn truncated_cubic_rows_match() {
        let alg = Arc::new(fixtures::truncated_polynomial(3));
        let s = simple(&alg, 0);
        let r = verify_decomposition(&s, &s, 4, None, DEFAULT_J_CAP).unwrap();
        assert!(r.passes(), "{r}");
        assert!(r.rows.iter().all(|row| row.matches && row.ungraded == 1));
    }

    #[test]
    fn hypotheses_are_enforced() {
        let alg = Arc::new(fixtures::dual_numbers());
        let s = simple(&alg, 0);
        let e = verify_decomposition(&s.twist(1), &s, 2, None, DEFAULT_J_CAP).unwrap_err();
        assert!(matches!(e, Error::Hypothesis(_)));
        let e = verify_decomposition(&s, &s.twist(-1), 2, None, DEFAULT_J_CAP).unwrap_err();
        assert!(matches!(e, Error::Hypothesis(_)));
        // twists in the allowed direction are fine
        assert!(verify_decomposition(&s.twist(-1), &s.twist(1), 2, None, DEFAULT_J_CAP).unwrap().passes());
    }

    #[test]
    fn narrow_window_or_cap_is_not_a_pass() {
        let alg = Arc::new(fixtures::dual_numbers());
        let s = simple(&alg, 0);
        // the cells at j = -3, -4 fall outside
        let r = verify_decomposition(&s, &s, 4, Some((-2, 1)), DEFAULT_J_CAP).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        let r = verify_decomposition(&s, &s, 4, Some((-5, 0)), DEFAULT_J_CAP).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        let r = verify_decomposition(&s, &s, 6, None, 4).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(!r.stabilized);
    }

    #[test]
    fn sweep_statuses() {
        let alg = Arc::new(fixtures::dual_numbers());
        let case = |pairs: Vec<(&str, &str)>| SweepCase {
            name: "dual".into(),
            algebra: Ok(alg.clone()),
            pairs: pairs.into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            i_max: 3,
            j_window: None,
        };
        let r = fixture_sweep(&[], DEFAULT_J_CAP);
        assert_eq!(r.status, SweepStatus::Pass);
        assert_eq!(r.warnings.len(), 1);

        let r = fixture_sweep(&[case(vec![("S1", "S1"), ("P1", "S1")])], DEFAULT_J_CAP);
        assert_eq!((r.status, r.passed), (SweepStatus::Pass, 2));

        let r = fixture_sweep(&[case(vec![("S1", "S1"), ("S1(1)", "S1")])], DEFAULT_J_CAP);
        assert_eq!((r.status, r.input_errors), (SweepStatus::InputError, 1));

        let r = fixture_sweep(&[case(vec![("S1", "S1")])], 2);
        assert_eq!(r.status, SweepStatus::Inconclusive);
        assert!(r.cases[0].forensics.as_deref().unwrap().contains("P^1 = P1(-1)"));
    }

    #[test]
    fn shipped_corpus_passes() {
        let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus/manifest.json");
        let cases = load_manifest(&path).unwrap();
        assert_eq!(cases.len(), fixtures::CORPUS.len());
        let r = fixture_sweep(&cases, DEFAULT_J_CAP);
        assert_eq!(r.status, SweepStatus::Pass, "{r}");
    }
}
