//! Combined classification and `(η, δ)` sweeps.

use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::theorems::{Analysis, Criterion, Finding, FindingKind, CriterionCheck};
use super::{etgrs_code, extension_vector, EtgrsParams, ExtensionSource, ExtensionVector};
use crate::code::{classify, CodeParams, DistanceMethod, Verdict};
use crate::error::{Error, Result};
use crate::nongrs::{summarize, SchurSummary};

/// Which verdicts to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Algebraic criteria with their rank oracles.
    Theorems,
    /// Exhaustive `d` and `d⊥`.
    Brute,
    Both,
}

impl Mode {
    fn theorems(self) -> bool {
        matches!(self, Mode::Theorems | Mode::Both)
    }

    fn brute(self) -> bool {
        matches!(self, Mode::Brute | Mode::Both)
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorems" => Ok(Mode::Theorems),
            "brute" => Ok(Mode::Brute),
            "both" => Ok(Mode::Both),
            _ => Err(Error::Parse(format!("unknown mode '{s}'"))),
        }
    }
}

/// Parameters as echoed in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamsEcho {
    pub field: String,
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub alpha: Vec<u32>,
    pub v: Vec<u32>,
    pub eta: u32,
    pub delta: u32,
}

impl From<&EtgrsParams> for ParamsEcho {
    fn from(p: &EtgrsParams) -> Self {
        ParamsEcho {
            field: p.field().descriptor(),
            q: p.field().q(),
            n: p.n(),
            k: p.k(),
            alpha: p.alpha().to_vec(),
            v: p.v().to_vec(),
            eta: p.eta(),
            delta: p.delta(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub params: ParamsEcho,
    pub mode: Mode,
    /// `[N, k, d]` and `d⊥` from exhaustive search.
    pub code: Option<CodeParams>,
    pub distance_method: Option<DistanceMethod>,
    pub dual_distance_method: Option<DistanceMethod>,
    /// Verdict from exhaustive search.
    pub verdict: Option<Verdict>,
    /// Verdict from the algebraic criteria.
    pub theorem_verdict: Option<Verdict>,
    /// MDS, AMDS and dual-AMDS criteria, in that order.
    pub checks: Vec<CriterionCheck>,
    pub extension: Option<ExtensionVector>,
    pub schur: Option<SchurSummary>,
    pub findings: Vec<Finding>,
    /// Whether the two verdicts match, when both were computed.
    pub agreement: Option<bool>,
}

impl ClassificationReport {
    /// The exhaustive verdict if computed, else the theorem verdict.
    pub fn final_verdict(&self) -> Option<Verdict> {
        self.verdict.or(self.theorem_verdict)
    }

    pub fn check(&self, criterion: Criterion) -> Option<&CriterionCheck> {
        self.checks.iter().find(|c| c.criterion == criterion)
    }

    /// `"MDS [8,3,6]"`, or just the verdict when no distance was computed.
    pub fn headline(&self) -> String {
        match (self.final_verdict(), &self.code) {
            (Some(v), Some(c)) => format!("{v} {c}"),
            (Some(v), None) => v.to_string(),
            _ => "undetermined".into(),
        }
    }
}

/// Verdict from the three criteria: MDS if the MDS criterion holds; else
/// NMDS or AMDS if the AMDS rank conditions hold, split by whether every
/// `k − 1` columns are independent; else OTHER.
pub(crate) fn theorem_verdict(mds: &CriterionCheck, amds: &CriterionCheck, dual: &CriterionCheck) -> Verdict {
    if mds.holds {
        Verdict::Mds
    } else if amds.conditions.iter().take(5).all(|c| c.holds) {
        if dual.conditions[1].holds {
            Verdict::Nmds
        } else {
            Verdict::Amds
        }
    } else {
        Verdict::Other
    }
}

pub(crate) fn run_theorems(p: &EtgrsParams, budget: u64) -> Result<(Vec<CriterionCheck>, Verdict, Vec<Finding>)> {
    let mut a = Analysis::new(p, budget)?;
    let mds = a.mds();
    let amds = a.amds();
    let dual = a.dual_amds();
    let mut findings = a.take_findings();
    let verdict = theorem_verdict(&mds, &amds, &dual);
    if verdict == Verdict::Amds {
        findings.push(Finding::new(
            FindingKind::AmdsNotNmds,
            "the code is AMDS but its dual is not, since some k−1 columns are dependent",
        ));
    }
    Ok((vec![mds, amds, dual], verdict, findings))
}

pub(crate) fn run_brute(p: &EtgrsParams, budget: u64) -> Result<(CodeParams, Verdict, DistanceMethod, DistanceMethod)> {
    let code = etgrs_code(p);
    let (d, dm) = code.min_distance_auto(budget)?;
    let (dd, ddm) = code.dual_min_distance(budget)?;
    let params = CodeParams::new(code.length(), code.dimension(), d, Some(dd))?;
    Ok((params, classify(&params)?, dm, ddm))
}

/// Classifies `C` by the algebraic criteria, by exhaustive search, or both.
pub fn classify_full(p: &EtgrsParams, mode: Mode, budget: u64) -> Result<ClassificationReport> {
    let mut report = ClassificationReport {
        params: p.into(),
        mode,
        code: None,
        distance_method: None,
        dual_distance_method: None,
        verdict: None,
        theorem_verdict: None,
        checks: Vec::new(),
        extension: None,
        schur: None,
        findings: Vec::new(),
        agreement: None,
    };

    if mode.theorems() {
        let (checks, verdict, findings) = run_theorems(p, budget)?;
        report.checks = checks;
        report.theorem_verdict = Some(verdict);
        report.findings.extend(findings);

        let ext = extension_vector(p)?;
        if ext.source == ExtensionSource::LinearSolve {
            report.findings.push(Finding::new(
                FindingKind::ExtensionSign,
                format!("neither closed form met G₁tᵀ = (0,…,1,0,δ)ᵀ; solved directly (contract holds: {})", ext.contract_holds),
            ));
        }
        report.extension = Some(ext);

        let schur = summarize(p)?;
        report.findings.extend(schur.c1.findings.iter().chain(&schur.c.findings).cloned());
        report.schur = Some(schur);
    }

    if mode.brute() {
        let (params, verdict, dm, ddm) = run_brute(p, budget)?;
        report.code = Some(params);
        report.verdict = Some(verdict);
        report.distance_method = Some(dm);
        report.dual_distance_method = Some(ddm);
    }

    if let (Some(b), Some(t)) = (report.verdict, report.theorem_verdict) {
        report.agreement = Some(b == t);
        if b != t {
            report.findings.push(Finding::new(
                FindingKind::VerdictDisagreement,
                format!("exhaustive search says {b}, criteria say {t}"),
            ));
        }
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Also compute `d` and `d⊥` exhaustively.
    pub brute: bool,
    /// Size of the worker pool; `None` uses rayon's default.
    pub workers: Option<usize>,
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            brute: false,
            workers: None,
            budget: crate::code::default_budget(),
        }
    }
}

/// One `(η, δ)` point of a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchRow {
    pub eta: u32,
    pub delta: u32,
    pub verdict: Verdict,
    /// Some square family is singular (the dual-AMDS disjunction).
    pub dual_disjunction: bool,
    /// The disjunction holds and every `k − 1` columns are independent.
    pub dual_amds: bool,
    pub code: Option<CodeParams>,
    pub brute_verdict: Option<Verdict>,
    /// Whether the dual is AMDS by exhaustive search.
    pub brute_dual_amds: Option<bool>,
    pub agreement: Option<bool>,
}

/// Evaluates every `(η, δ)` pair over the other parameters of `base`.
/// Rows come back sorted by `(η, δ)` whatever the worker count.
pub fn search(base: &EtgrsParams, etas: &[u32], deltas: &[u32], opts: &SearchOptions) -> Result<Vec<SearchRow>> {
    if etas.is_empty() || deltas.is_empty() {
        return Err(Error::InvalidParams("η and δ sets must be nonempty".into()));
    }
    let mut pairs: Vec<(u32, u32)> = etas.iter().flat_map(|&e| deltas.iter().map(move |&d| (e, d))).collect();
    pairs.sort_unstable();
    pairs.dedup();
    let points = pairs
        .iter()
        .map(|&(e, d)| base.with_eta_delta(e, d))
        .collect::<Result<Vec<_>>>()?;

    let run = || points.par_iter().map(|p| search_point(p, opts)).collect::<Result<Vec<_>>>();
    match opts.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::InvalidParams(format!("worker pool: {e}")))?
            .install(run),
        None => run(),
    }
}

fn search_point(p: &EtgrsParams, opts: &SearchOptions) -> Result<SearchRow> {
    let (checks, verdict, _) = run_theorems(p, opts.budget)?;
    let dual = &checks[2];
    let mut row = SearchRow {
        eta: p.eta(),
        delta: p.delta(),
        verdict,
        dual_disjunction: dual.conditions[0].holds,
        dual_amds: dual.holds,
        code: None,
        brute_verdict: None,
        brute_dual_amds: None,
        agreement: None,
    };
    if opts.brute {
        let (params, bv, _, _) = run_brute(p, opts.budget)?;
        let dd = params.dual_min_distance.expect("dual distance is computed");
        row.brute_dual_amds = Some(dd == p.k());
        row.code = Some(params);
        row.brute_verdict = Some(bv);
        row.agreement = Some(bv == verdict);
    }
    Ok(row)
}
