//! Registered reproduction scenarios: fixed parameter sets together with
//! the outcomes claimed for them in the literature, checked one by one.

use std::fmt::Write;

use etgrs_core::etgrs::{Criterion, FindingKind};
use etgrs_core::{classify_full, search, EtgrsParams, FieldSpec, Mode, SearchOptions, Verdict};
use serde::Serialize;

use crate::render::{field_text, join, Report};
use crate::{exit, CliError, Result};

pub struct Scenario {
    pub id: u8,
    pub name: &'static str,
    pub description: &'static str,
    run: fn(u64) -> Result<Reproduction>,
}

pub const SCENARIOS: [Scenario; 4] = [
    Scenario {
        id: 1,
        name: "gf13-n5-k3-mds",
        description: "GF(13), alpha = (1,2,5,6,7), (eta, delta) = (9, 9): claimed MDS [8,3,6]",
        run: gf13_n5_k3_mds,
    },
    Scenario {
        id: 2,
        name: "gf8-n4-k4-mds-sweep",
        description: "GF(8), alpha = (1,g^3,g^5,g^6), (eta, delta) = (g^t, 1) for t = 1..6: claimed MDS [7,4,4]",
        run: gf8_n4_k4_mds_sweep,
    },
    Scenario {
        id: 3,
        name: "gf8-n5-k3-amds-pairs",
        description: "GF(8), alpha = (1,g,g^2,g^4,g^5), 22 listed (eta, delta) pairs: claimed AMDS [8,3,5]",
        run: gf8_n5_k3_amds_pairs,
    },
    Scenario {
        id: 4,
        name: "gf11-n5-k3-dual-amds",
        description: "GF(11), alpha = (0,4,5,8,9), every eta != 0 and every delta: claimed dual AMDS, stated as [8,4,4]",
        run: gf11_n5_k3_dual_amds,
    },
];

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub label: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Reproduction {
    pub id: u8,
    pub name: String,
    pub description: String,
    pub field: String,
    pub n: usize,
    pub k: usize,
    pub alpha: Vec<u32>,
    pub claims: Vec<Claim>,
    pub passed: usize,
    pub total: usize,
    /// Places where the claimed outcome and the computation part ways.
    pub deviations: Vec<String>,
}

impl Reproduction {
    fn new(s: &Scenario, base: &EtgrsParams, claims: Vec<Claim>, deviations: Vec<String>) -> Self {
        Reproduction {
            id: s.id,
            name: s.name.into(),
            description: s.description.into(),
            field: base.field().descriptor(),
            n: base.n(),
            k: base.k(),
            alpha: base.alpha().to_vec(),
            passed: claims.iter().filter(|c| c.pass).count(),
            total: claims.len(),
            claims,
            deviations,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.passed == self.total
    }
}

pub fn find(key: &str) -> Option<&'static Scenario> {
    SCENARIOS.iter().find(|s| s.name == key || s.id.to_string() == key)
}

/// Runs one scenario.
pub fn reproduce(key: &str, budget: u64) -> Result<Reproduction> {
    let s = find(key).ok_or_else(|| {
        let names = join(&SCENARIOS.iter().map(|s| format!("{} ({})", s.id, s.name)).collect::<Vec<_>>(), ", ");
        CliError::usage(format!("unknown scenario '{key}'; available: {names}"))
    })?;
    (s.run)(budget)
}

#[derive(Serialize)]
struct ReproduceDoc<'a> {
    command: &'static str,
    scenarios: &'a [Reproduction],
    passed: usize,
    total: usize,
}

/// `key` is an id, a name, or `all`. Exit code 3 when any claim fails.
pub fn command(key: &str, budget: u64) -> Result<Report> {
    let runs = if key == "all" {
        SCENARIOS.iter().map(|s| (s.run)(budget)).collect::<Result<Vec<_>>>()?
    } else {
        vec![reproduce(key, budget)?]
    };
    let mut out = String::new();
    for r in &runs {
        let _ = writeln!(out, "reproduce {}: {}", r.id, r.name);
        let _ = writeln!(out, "  {}", r.description);
        let _ = writeln!(out, "  field {}, n = {}, k = {}, alpha = {}", field_text(&r.field), r.n, r.k, join(&r.alpha, " "));
        for c in &r.claims {
            let mark = if c.pass { "✓" } else { "✗" };
            let _ = writeln!(out, "  {mark} {}: expected {}, observed {}", c.label, c.expected, c.observed);
        }
        let _ = writeln!(out, "  claims passed {}/{}", r.passed, r.total);
        if !r.deviations.is_empty() {
            out.push_str("  deviations\n");
            for d in &r.deviations {
                let _ = writeln!(out, "    - {d}");
            }
        }
        out.push('\n');
    }
    let passed = runs.iter().map(|r| r.passed).sum();
    let total = runs.iter().map(|r| r.total).sum();
    let code = if passed == total { exit::OK } else { exit::CLAIM_FAILED };
    let doc = ReproduceDoc {
        command: "reproduce",
        scenarios: &runs,
        passed,
        total,
    };
    Ok(Report::new(&doc, out.trim_end().to_string() + "\n", code))
}

/// `g^t` for nonzero elements of extension fields, the encoding otherwise.
fn elem(f: &FieldSpec, v: u32) -> String {
    if f.m() == 1 || v == 0 {
        return v.to_string();
    }
    let g = f.primitive_element().value();
    let t = (0..f.q() - 1).find(|&t| f.pow(g, t as u64) == v).expect("g generates the group");
    if t == 0 {
        "1".into()
    } else {
        format!("g^{t}")
    }
}

fn label(f: &FieldSpec, eta: u32, delta: u32) -> String {
    format!("eta = {}, delta = {}", elem(f, eta), elem(f, delta))
}

fn el(f: &FieldSpec, text: &str) -> u32 {
    f.parse_element(text).expect("registered scenarios use valid elements").value()
}

fn gf13_n5_k3_mds(budget: u64) -> Result<Reproduction> {
    let f = FieldSpec::prime(13)?;
    let p = EtgrsParams::with_unit_multipliers(&f, 3, vec![1, 2, 5, 6, 7], 9, 9)?;
    let r = classify_full(&p, Mode::Both, budget)?;
    let code = r.code.expect("brute mode computes the code");
    let pass = r.verdict == Some(Verdict::Mds) && code.to_string() == "[8,3,6]" && r.agreement == Some(true);
    let claim = Claim {
        label: label(&f, 9, 9),
        expected: "MDS [8,3,6]".into(),
        observed: format!("{}, dual distance {}", r.headline(), code.dual_min_distance.unwrap_or(0)),
        pass,
    };
    let mut deviations = Vec::new();
    if !pass {
        let mds = r.check(Criterion::Mds).expect("theorem mode runs the MDS criterion");
        for c in mds.conditions.iter().filter(|c| !c.holds) {
            if let Some(w) = &c.witness {
                deviations.push(format!(
                    "MDS condition ({}) fails: columns {} of G are dependent",
                    c.condition,
                    join(&w.columns, ",")
                ));
            }
        }
    }
    Ok(Reproduction::new(&SCENARIOS[0], &p, vec![claim], deviations))
}

fn gf8_n4_k4_mds_sweep(budget: u64) -> Result<Reproduction> {
    let f = FieldSpec::parse("2^3")?;
    let alpha = ["1", "g^3", "g^5", "g^6"].map(|s| el(&f, s)).to_vec();
    let base = EtgrsParams::with_unit_multipliers(&f, 4, alpha, 1, 1)?;
    let mut claims = Vec::new();
    for t in 1..=6 {
        let eta = el(&f, &format!("g^{t}"));
        let r = classify_full(&base.with_eta_delta(eta, 1)?, Mode::Both, budget)?;
        let pass = r.verdict == Some(Verdict::Mds)
            && r.code.map(|c| c.to_string()) == Some("[7,4,4]".into())
            && r.agreement == Some(true);
        claims.push(Claim {
            label: label(&f, eta, 1),
            expected: "MDS [7,4,4]".into(),
            observed: r.headline(),
            pass,
        });
    }
    Ok(Reproduction::new(&SCENARIOS[1], &base, claims, Vec::new()))
}

/// The listed `(η, δ)` pairs as powers of `g`; `None` is zero.
const GF8_AMDS_PAIRS: [(u32, Option<u32>); 22] = [
    (2, None),
    (2, Some(0)),
    (2, Some(2)),
    (2, Some(3)),
    (2, Some(4)),
    (2, Some(5)),
    (4, None),
    (4, Some(1)),
    (4, Some(3)),
    (4, Some(4)),
    (4, Some(6)),
    (5, None),
    (5, Some(0)),
    (5, Some(1)),
    (5, Some(3)),
    (5, Some(4)),
    (6, None),
    (6, Some(0)),
    (6, Some(2)),
    (6, Some(4)),
    (6, Some(5)),
    (6, Some(6)),
];

fn gf8_n5_k3_amds_pairs(budget: u64) -> Result<Reproduction> {
    let f = FieldSpec::parse("2^3")?;
    let g = f.primitive_element().value();
    let alpha = ["1", "g", "g^2", "g^4", "g^5"].map(|s| el(&f, s)).to_vec();
    let base = EtgrsParams::with_unit_multipliers(&f, 3, alpha, g, 0)?;
    let mut claims = Vec::new();
    for (e, d) in GF8_AMDS_PAIRS {
        let eta = f.pow(g, e as u64);
        let delta = d.map_or(0, |d| f.pow(g, d as u64));
        let r = classify_full(&base.with_eta_delta(eta, delta)?, Mode::Both, budget)?;
        let code = r.code.expect("brute mode computes the code");
        let pass = code.to_string() == "[8,3,5]"
            && r.verdict.is_some_and(Verdict::is_almost_mds)
            && r.agreement == Some(true);
        claims.push(Claim {
            label: label(&f, eta, delta),
            expected: "AMDS [8,3,5]".into(),
            observed: format!("{}, dual distance {}", r.headline(), code.dual_min_distance.unwrap_or(0)),
            pass,
        });
    }
    Ok(Reproduction::new(&SCENARIOS[2], &base, claims, Vec::new()))
}

fn gf11_n5_k3_dual_amds(budget: u64) -> Result<Reproduction> {
    let f = FieldSpec::prime(11)?;
    let base = EtgrsParams::with_unit_multipliers(&f, 3, vec![0, 4, 5, 8, 9], 1, 0)?;
    let etas: Vec<u32> = (1..11).collect();
    let deltas: Vec<u32> = (0..11).collect();
    let opts = SearchOptions {
        brute: true,
        workers: None,
        budget,
    };
    let rows = search(&base, &etas, &deltas, &opts)?;
    let dual_dim = base.length() - base.k();
    let mut claims = Vec::new();
    let mut failing = Vec::new();
    for r in &rows {
        let code = r.code.expect("brute mode computes the code");
        let dd = code.dual_min_distance.expect("dual distance is computed");
        let pass = r.dual_disjunction && dd == base.length() - dual_dim;
        if !pass {
            failing.push((r.eta, r.delta));
        }
        claims.push(Claim {
            label: label(&f, r.eta, r.delta),
            expected: "dual AMDS".into(),
            observed: format!(
                "dual [{},{},{}], disjunction {}",
                base.length(),
                dual_dim,
                dd,
                if r.dual_disjunction { "holds" } else { "fails" }
            ),
            pass,
        });
    }
    let mut deviations = vec![format!(
        "stated dual parameters [8,4,4] are impossible for the dual of an [8,3] code; the computed dual dimension is {dual_dim}"
    )];
    if let Some(&(eta, delta)) = failing.first() {
        let r = classify_full(&base.with_eta_delta(eta, delta)?, Mode::Theorems, budget)?;
        let why = r
            .findings
            .iter()
            .find(|x| x.kind == FindingKind::DependentShortColumnSet)
            .map_or_else(String::new, |x| format!(" ({})", x.message));
        let pairs = join(&failing.iter().map(|&(e, d)| format!("({e},{d})")).collect::<Vec<_>>(), " ");
        deviations.push(format!(
            "{} of {} pairs have a dual that is not AMDS: {pairs}; e.g. eta = {eta}, delta = {delta}{why}",
            failing.len(),
            rows.len()
        ));
    }
    Ok(Reproduction::new(&SCENARIOS[3], &base, claims, deviations))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_by_id_and_name() {
        assert_eq!(find("2").unwrap().name, "gf8-n4-k4-mds-sweep");
        assert_eq!(find("gf11-n5-k3-dual-amds").unwrap().id, 4);
        assert!(find("5").is_none());
    }

    #[test]
    fn gf8_pair_list_is_distinct() {
        let mut pairs = GF8_AMDS_PAIRS.to_vec();
        pairs.sort();
        pairs.dedup();
        assert_eq!(pairs.len(), 22);
    }
}
