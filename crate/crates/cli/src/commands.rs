//! `classify`, `search` and `matrix`.

use std::collections::BTreeMap;
use std::fmt::Write;

use etgrs_core::etgrs::{
    etgrs_code, extension_vector, generator_matrix, punctured_generator, ConditionReport, Criterion, ExtensionVector,
    Finding, ParamsEcho, SearchRow, Witness,
};
use etgrs_core::nongrs::{NonGrsReport, Regime, SchurSummary};
use etgrs_core::{classify_full, ClassificationReport, CodeParams, FieldMatrix, Mode, SearchOptions, Verdict};
use serde::Serialize;

use crate::config::{ElementSet, RunConfig};
use crate::render::{field_text, join, table, yes_no, Report};
use crate::{exit, Result};

#[derive(Serialize)]
struct Verdicts {
    #[serde(rename = "final")]
    final_verdict: Option<Verdict>,
    headline: String,
    brute: Option<Verdict>,
    theorems: Option<Verdict>,
    agreement: Option<bool>,
}

#[derive(Serialize)]
struct WitnessRow<'a> {
    criterion: Criterion,
    condition: u8,
    #[serde(flatten)]
    witness: &'a Witness,
}

#[derive(Serialize)]
struct ClassifyDoc<'a> {
    command: &'static str,
    params: &'a ParamsEcho,
    mode: Mode,
    verdicts: Verdicts,
    code: Option<CodeParams>,
    conditions: Vec<&'a ConditionReport>,
    witnesses: Vec<WitnessRow<'a>>,
    extension: Option<&'a ExtensionVector>,
    schur: Option<&'a SchurSummary>,
    findings: &'a [Finding],
}

fn conditions(r: &ClassificationReport) -> impl Iterator<Item = &ConditionReport> {
    r.checks.iter().flat_map(|c| &c.conditions)
}

/// Classifies one parameter set. Exit code 2 when the criteria and the
/// exhaustive search disagree.
pub fn classify(cfg: &RunConfig) -> Result<Report> {
    let p = cfg.params()?;
    let r = classify_full(&p, cfg.mode()?, cfg.budget())?;
    let doc = ClassifyDoc {
        command: "classify",
        params: &r.params,
        mode: r.mode,
        verdicts: Verdicts {
            final_verdict: r.final_verdict(),
            headline: r.headline(),
            brute: r.verdict,
            theorems: r.theorem_verdict,
            agreement: r.agreement,
        },
        code: r.code,
        conditions: conditions(&r).collect(),
        witnesses: conditions(&r)
            .filter_map(|c| {
                c.witness.as_ref().map(|w| WitnessRow {
                    criterion: c.criterion,
                    condition: c.condition,
                    witness: w,
                })
            })
            .collect(),
        extension: r.extension.as_ref(),
        schur: r.schur.as_ref(),
        findings: &r.findings,
    };
    let code = if r.agreement == Some(false) { exit::DISAGREEMENT } else { exit::OK };
    Ok(Report::new(&doc, classify_table(&r), code))
}

fn params_block(out: &mut String, p: &ParamsEcho, with_eta_delta: bool) {
    let _ = writeln!(out, "field       {}", field_text(&p.field));
    let _ = writeln!(out, "n, k        {}, {}", p.n, p.k);
    let _ = writeln!(out, "alpha       {}", join(&p.alpha, " "));
    let _ = writeln!(out, "v           {}", join(&p.v, " "));
    if with_eta_delta {
        let _ = writeln!(out, "eta, delta  {}, {}", p.eta, p.delta);
    }
}

fn nongrs_line(name: &str, r: &NonGrsReport) -> String {
    if r.regime == Regime::OutOfRange {
        return format!("{name}: out of range");
    }
    let mut s = format!("{name}: {}", yes_no(r.certified));
    if let (Some(dim), Some(grs)) = (r.schur_dim, r.grs_expected) {
        let _ = write!(s, ", square dimension {dim} (GRS: {grs})");
    }
    if let Some(route) = &r.route {
        let _ = write!(s, ", via {route}");
    }
    s
}

fn classify_table(r: &ClassificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verdict     {}", r.headline());
    if let Some(t) = r.theorem_verdict {
        let _ = writeln!(out, "criteria    {t}");
    }
    if let (Some(v), Some(c)) = (r.verdict, &r.code) {
        let dd = c.dual_min_distance.map_or_else(|| "-".into(), |d| d.to_string());
        let _ = writeln!(out, "exhaustive  {v} {c}, dual distance {dd}");
    }
    if let Some(a) = r.agreement {
        let _ = writeln!(out, "agreement   {}", yes_no(a));
    }
    params_block(&mut out, &r.params, true);

    if !r.checks.is_empty() {
        out.push('\n');
        let rows: Vec<Vec<String>> = conditions(r)
            .map(|c| {
                vec![
                    c.criterion.to_string(),
                    c.condition.to_string(),
                    yes_no(c.holds).into(),
                    if c.paths_agree { "agree" } else { "DISAGREE" }.into(),
                    c.literal
                        .as_ref()
                        .map_or("-", |l| if l.agrees { "agree" } else { "differs" })
                        .into(),
                    c.witness.as_ref().map_or_else(|| "-".into(), |w| format!("columns {}", join(&w.columns, ","))),
                ]
            })
            .collect();
        out.push_str(&table(&["criterion", "cond", "holds", "formula", "printed", "witness"], &rows));
    }
    if let Some(ext) = &r.extension {
        let _ = writeln!(
            out,
            "\nextension   t = {} ({}, contract {})",
            join(&ext.t, " "),
            serde_json::to_value(ext.source).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
            if ext.contract_holds { "ok" } else { "FAILED" }
        );
    }
    if let Some(s) = &r.schur {
        let _ = writeln!(out, "non-GRS     {}", nongrs_line("C1", &s.c1));
        let _ = writeln!(out, "            {}", nongrs_line("C", &s.c));
    }
    if !r.findings.is_empty() {
        out.push_str("\nfindings\n");
        for f in &r.findings {
            let kind = serde_json::to_value(f.kind).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
            let _ = writeln!(out, "  {kind}: {}", f.message);
        }
    }
    out
}

/// Flags of `search` beyond the shared configuration.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub run: RunConfig,
    pub eta: ElementSet,
    pub delta: ElementSet,
    pub only: Option<Verdict>,
    pub dual_amds: bool,
    pub workers: Option<usize>,
    pub brute: bool,
}

#[derive(Serialize)]
struct SearchParams {
    field: String,
    q: u32,
    n: usize,
    k: usize,
    alpha: Vec<u32>,
    v: Vec<u32>,
    etas: Vec<u32>,
    deltas: Vec<u32>,
}

#[derive(Serialize)]
struct SearchSummary {
    pairs: usize,
    shown: usize,
    verdicts: BTreeMap<String, usize>,
    dual_disjunction: usize,
    dual_amds: usize,
    brute_dual_amds: Option<usize>,
    agreement: Option<usize>,
}

#[derive(Serialize)]
struct SearchDoc<'a> {
    command: &'static str,
    params: SearchParams,
    only: Option<Verdict>,
    brute: bool,
    rows: Vec<&'a SearchRow>,
    summary: SearchSummary,
}

fn row_verdict(r: &SearchRow) -> Verdict {
    r.brute_verdict.unwrap_or(r.verdict)
}

/// Sweeps `(η, δ)`. Exit code 2 when any row disagrees.
pub fn search(cfg: &SearchConfig) -> Result<Report> {
    let f = cfg.run.field_spec()?;
    let etas = cfg.eta.resolve(&f, "eta", false)?;
    let deltas = cfg.delta.resolve(&f, "delta", true)?;
    let base = cfg.run.params_with(etas[0], deltas[0])?;
    let opts = SearchOptions {
        brute: cfg.brute,
        workers: cfg.workers,
        budget: cfg.run.budget(),
    };
    let rows = etgrs_core::search(&base, &etas, &deltas, &opts)?;
    let shown: Vec<&SearchRow> = rows.iter().filter(|r| cfg.only.is_none_or(|v| row_verdict(r) == v)).collect();

    let mut verdicts = BTreeMap::new();
    for r in &rows {
        *verdicts.entry(row_verdict(r).to_string()).or_insert(0) += 1;
    }
    let summary = SearchSummary {
        pairs: rows.len(),
        shown: shown.len(),
        verdicts,
        dual_disjunction: rows.iter().filter(|r| r.dual_disjunction).count(),
        dual_amds: rows.iter().filter(|r| r.dual_amds).count(),
        brute_dual_amds: cfg.brute.then(|| rows.iter().filter(|r| r.brute_dual_amds == Some(true)).count()),
        agreement: cfg.brute.then(|| rows.iter().filter(|r| r.agreement == Some(true)).count()),
    };
    let disagree = rows.iter().any(|r| r.agreement == Some(false));

    let mut header = vec!["eta", "delta", "verdict"];
    if cfg.brute {
        header.extend(["code", "criteria", "agree"]);
    }
    if cfg.dual_amds {
        header.extend(["disjunction", "dual-amds"]);
        if cfg.brute {
            header.push("dual-amds (search)");
        }
    }
    let table_rows: Vec<Vec<String>> = shown
        .iter()
        .map(|r| {
            let mut row = vec![r.eta.to_string(), r.delta.to_string(), row_verdict(r).to_string()];
            if cfg.brute {
                row.push(r.code.map_or_else(|| "-".into(), |c| c.to_string()));
                row.push(r.verdict.to_string());
                row.push(r.agreement.map_or("-", yes_no).into());
            }
            if cfg.dual_amds {
                row.push(yes_no(r.dual_disjunction).into());
                row.push(yes_no(r.dual_amds).into());
                if cfg.brute {
                    row.push(r.brute_dual_amds.map_or("-", yes_no).into());
                }
            }
            row
        })
        .collect();

    let mut out = String::new();
    params_block(&mut out, &ParamsEcho::from(&base), false);
    out.push('\n');
    out.push_str(&table(&header, &table_rows));
    let counts = join(&summary.verdicts.iter().map(|(k, v)| format!("{k} {v}")).collect::<Vec<_>>(), ", ");
    let _ = writeln!(out, "\npairs       {} ({}), shown {}", summary.pairs, counts, summary.shown);
    if cfg.dual_amds {
        let _ = writeln!(out, "disjunction {}/{}", summary.dual_disjunction, summary.pairs);
        let _ = writeln!(out, "dual AMDS   {}/{}", summary.dual_amds, summary.pairs);
        if let Some(b) = summary.brute_dual_amds {
            let _ = writeln!(out, "  by search {b}/{}", summary.pairs);
        }
    }
    if let Some(a) = summary.agreement {
        let _ = writeln!(out, "agreement   {a}/{}", summary.pairs);
    }

    let doc = SearchDoc {
        command: "search",
        params: SearchParams {
            field: f.descriptor(),
            q: f.q(),
            n: base.n(),
            k: base.k(),
            alpha: base.alpha().to_vec(),
            v: base.v().to_vec(),
            etas,
            deltas,
        },
        only: cfg.only,
        brute: cfg.brute,
        rows: shown,
        summary,
    };
    Ok(Report::new(&doc, out, if disagree { exit::DISAGREEMENT } else { exit::OK }))
}

/// Which matrix `matrix` prints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixWhich {
    #[value(name = "G")]
    #[serde(rename = "G")]
    G,
    #[value(name = "G1")]
    #[serde(rename = "G1")]
    G1,
    #[value(name = "t")]
    #[serde(rename = "t")]
    T,
    Dual,
    SchurSquare,
}

#[derive(Serialize)]
struct MatrixDoc<'a> {
    command: &'static str,
    params: ParamsEcho,
    which: MatrixWhich,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<u32>>,
    notes: &'a [String],
}

pub fn matrix(cfg: &RunConfig, which: MatrixWhich) -> Result<Report> {
    let p = cfg.params()?;
    let f = p.field();
    let mut notes = Vec::new();
    let m = match which {
        MatrixWhich::G => generator_matrix(&p),
        MatrixWhich::G1 => punctured_generator(&p),
        MatrixWhich::T => {
            let ext = extension_vector(&p)?;
            let source = serde_json::to_value(ext.source).ok().and_then(|v| v.as_str().map(String::from));
            notes.push(format!("source: {}", source.unwrap_or_default()));
            notes.push(format!("contract: {}", if ext.contract_holds { "ok" } else { "FAILED" }));
            FieldMatrix::from_rows(f, &[ext.t])?
        }
        MatrixWhich::Dual => {
            let g = generator_matrix(&p);
            let h = etgrs_code(&p).parity_check();
            let orthogonal = h.rows() == 0 || g.matmul(&h.transpose())?.is_zero();
            notes.push(format!("G·Hᵀ = 0: {}", yes_no(orthogonal)));
            h
        }
        MatrixWhich::SchurSquare => {
            let sq = etgrs_code(&p).schur_square();
            notes.push(format!("dimension: {}", sq.dimension()));
            sq.generator().clone()
        }
    };
    let mut table = m.to_text();
    for n in &notes {
        let _ = writeln!(table, "{n}");
    }
    let doc = MatrixDoc {
        command: "matrix",
        params: ParamsEcho::from(&p),
        which,
        rows: m.rows(),
        cols: m.cols(),
        entries: m.row_vecs(),
        notes: &notes,
    };
    Ok(Report::new(&doc, table, exit::OK))
}
