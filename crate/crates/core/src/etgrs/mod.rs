//! Extended twisted GRS codes.
//!
//! For distinct `α_1..α_n`, nonzero `v_1..v_n`, `η ≠ 0` and any `δ`, the
//! code `C` of length `n + 3` and dimension `k` consists of the words
//!
//! ```text
//! (v_1 f(α_1), ..., v_n f(α_n), f_{k-1}, f_{k-2}, f_{k-3} + δ f_{k-1})
//! ```
//!
//! where `f(x) = f_0 + f_1 x + ... + f_{k-1} x^{k-1} + η f_{k-1} x^{k+2}`.
//! Deleting the last coordinate gives the punctured code `C₁` of length
//! `n + 2`.
//!
//! Column indices in reports are 1-based: evaluation columns are `1..=n`
//! and the three tail columns are `n+1`, `n+2`, `n+3`.

mod classify;
mod theorems;

pub use classify::{classify_full, search, ClassificationReport, Mode, ParamsEcho, SearchOptions, SearchRow};
pub use theorems::{
    check_amds, check_dual_amds, check_mds, ConditionReport, Criterion, Finding, FindingKind, LiteralCheck, CriterionCheck, Via,
    Witness,
};

use serde::Serialize;

use crate::code::{check_distinct, LinearCode};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::FieldMatrix;
use crate::symfun::{complete, u_weights_raw};

/// The construction tuple `(q, n, k, α, v, η, δ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtgrsParams {
    field: FieldSpec,
    k: usize,
    alpha: Vec<u32>,
    v: Vec<u32>,
    eta: u32,
    delta: u32,
}

impl EtgrsParams {
    /// Validates `3 <= k <= n <= q`, distinct `α`, nonzero `v` and `η`.
    pub fn new(field: &FieldSpec, k: usize, alpha: Vec<u32>, v: Vec<u32>, eta: u32, delta: u32) -> Result<Self> {
        let n = alpha.len();
        if v.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{n} evaluation points but {} column multipliers",
                v.len()
            )));
        }
        if k < 3 || k > n || n > field.q() as usize {
            return Err(Error::InvalidParams(format!(
                "need 3 <= k <= n <= q, got k = {k}, n = {n}, q = {}",
                field.q()
            )));
        }
        let all = alpha.iter().chain(&v).chain([&eta, &delta]);
        if let Some(&bad) = all.into_iter().find(|&&x| !field.contains(x)) {
            return Err(Error::ElementOutOfRange {
                value: bad as u64,
                q: field.q(),
            });
        }
        check_distinct(&alpha)?;
        if let Some(i) = v.iter().position(|&x| x == 0) {
            return Err(Error::ZeroMultiplier(i));
        }
        if eta == 0 {
            return Err(Error::InvalidParams("η must be nonzero".into()));
        }
        Ok(EtgrsParams {
            field: field.clone(),
            k,
            alpha,
            v,
            eta,
            delta,
        })
    }

    /// Same as [`EtgrsParams::new`] with `v = (1, ..., 1)`.
    pub fn with_unit_multipliers(field: &FieldSpec, k: usize, alpha: Vec<u32>, eta: u32, delta: u32) -> Result<Self> {
        let v = vec![1; alpha.len()];
        Self::new(field, k, alpha, v, eta, delta)
    }

    pub fn from_elements(
        field: &FieldSpec,
        k: usize,
        alpha: &[FieldElement],
        v: &[FieldElement],
        eta: &FieldElement,
        delta: &FieldElement,
    ) -> Result<Self> {
        let all = alpha.iter().chain(v).chain([eta, delta]);
        if all.into_iter().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch);
        }
        let raw = |xs: &[FieldElement]| xs.iter().map(FieldElement::value).collect();
        Self::new(field, k, raw(alpha), raw(v), eta.value(), delta.value())
    }

    /// The same code family with a different `(η, δ)`.
    pub fn with_eta_delta(&self, eta: u32, delta: u32) -> Result<Self> {
        Self::new(&self.field, self.k, self.alpha.clone(), self.v.clone(), eta, delta)
    }

    /// The same parameters with every `v_i` multiplied by `c`.
    pub fn scaled(&self, c: u32) -> Result<Self> {
        let v = self.v.iter().map(|&x| self.field.mul(x, c)).collect();
        Self::new(&self.field, self.k, self.alpha.clone(), v, self.eta, self.delta)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Code length `n + 3`.
    pub fn length(&self) -> usize {
        self.n() + 3
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    pub fn v(&self) -> &[u32] {
        &self.v
    }

    pub fn eta(&self) -> u32 {
        self.eta
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }
}

/// Evaluation block `k x n` before scaling by `v`: rows `α^0..α^{k-2}`,
/// then `α^{k-1} + η α^{k+2}`.
fn evaluation_rows(p: &EtgrsParams) -> FieldMatrix {
    let f = &p.field;
    let (n, k) = (p.n(), p.k);
    let mut m = FieldMatrix::vandermonde(f, &p.alpha, k);
    for j in 0..n {
        let a = p.alpha[j];
        let twist = f.mul(p.eta, f.pow(a, k as u64 + 2));
        m.set(k - 1, j, f.add(m.get(k - 1, j), twist));
    }
    m
}

/// The `k x (n + 3)` generator `G`.
///
/// Tail columns: row `k-3` carries `(0, 0, 1)`, row `k-2` carries
/// `(0, 1, 0)`, row `k-1` carries `(1, 0, δ)`; all other rows have zero
/// tails.
pub fn generator_matrix(p: &EtgrsParams) -> FieldMatrix {
    let (n, k) = (p.n(), p.k);
    let eval = evaluation_rows(p).scale_cols(&p.v).expect("one multiplier per column");
    let mut tail = FieldMatrix::zeros(&p.field, k, 3);
    tail.set(k - 3, 2, 1);
    tail.set(k - 2, 1, 1);
    tail.set(k - 1, 0, 1);
    tail.set(k - 1, 2, p.delta);
    let g = eval.hconcat(&tail).expect("same row count");
    debug_assert_eq!(g.cols(), n + 3);
    g
}

/// The `k x (n + 2)` generator `G₁` of the punctured code, built directly.
pub fn punctured_generator(p: &EtgrsParams) -> FieldMatrix {
    let k = p.k;
    let eval = evaluation_rows(p).scale_cols(&p.v).expect("one multiplier per column");
    let mut tail = FieldMatrix::zeros(&p.field, k, 2);
    tail.set(k - 2, 1, 1);
    tail.set(k - 1, 0, 1);
    eval.hconcat(&tail).expect("same row count")
}

/// The code `C`.
pub fn etgrs_code(p: &EtgrsParams) -> LinearCode {
    LinearCode::from_generator(generator_matrix(p)).expect("the generator has full row rank")
}

/// The punctured code `C₁`, obtained by deleting the last coordinate of `C`.
pub fn punctured_code(p: &EtgrsParams) -> LinearCode {
    etgrs_code(p)
        .puncture(p.length() - 1)
        .expect("the evaluation block and column n+2 keep full rank")
}

/// Encodes the coefficient vector `(f_0, ..., f_{k-1})`.
pub fn twisted_encode(p: &EtgrsParams, coeffs: &[u32]) -> Result<Vec<u32>> {
    let f = &p.field;
    let k = p.k;
    if coeffs.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "{} coefficients for dimension {k}",
            coeffs.len()
        )));
    }
    if let Some(&bad) = coeffs.iter().find(|&&c| !f.contains(c)) {
        return Err(Error::ElementOutOfRange {
            value: bad as u64,
            q: f.q(),
        });
    }
    let top = coeffs[k - 1];
    let mut word: Vec<u32> = p
        .alpha
        .iter()
        .zip(&p.v)
        .map(|(&a, &v)| {
            let body = coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, a), c));
            let twist = f.mul(f.mul(p.eta, top), f.pow(a, k as u64 + 2));
            f.mul(v, f.add(body, twist))
        })
        .collect();
    word.push(top);
    word.push(coeffs[k - 2]);
    word.push(f.add(coeffs[k - 3], f.mul(p.delta, top)));
    Ok(word)
}

/// Where the extension vector came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtensionSource {
    /// Closed form with `t_{n+2} = h_1`.
    FormulaPlus,
    /// Closed form with `t_{n+2} = −h_1`.
    FormulaMinus,
    /// Neither closed form met the contract; solved `G₁ tᵀ = target`.
    LinearSolve,
}

/// Weights `t` with `G₁ tᵀ = (0, ..., 0, 1, 0, δ)ᵀ`, so that extending `C₁`
/// by `t` gives back `C`.
#[derive(Clone, Debug, Serialize)]
pub struct ExtensionVector {
    pub t: Vec<u32>,
    pub source: ExtensionSource,
    pub contract_holds: bool,
    /// Closed-form candidates that violated the contract.
    pub rejected: Vec<ExtensionSource>,
}

/// The target column `(0, ..., 0, 1, 0, δ)ᵀ` of length `k`.
pub fn extension_target(p: &EtgrsParams) -> Vec<u32> {
    let k = p.k;
    let mut target = vec![0; k];
    target[k - 3] = 1;
    target[k - 1] = p.delta;
    target
}

/// Closed-form extension vector:
/// `t_i = v_i⁻¹ u_i α_i^{n+2-k}`, `t_{n+1} = δ − h_2 − η h_5`, and
/// `t_{n+2} = ±h_1` as selected by `plus`. All `h_r` are over the full `α`.
pub fn extension_formula(p: &EtgrsParams, plus: bool) -> Vec<u32> {
    let f = &p.field;
    let (n, k) = (p.n(), p.k);
    let u = u_weights_raw(f, &p.alpha);
    let h = complete(f, &p.alpha, 5);
    let mut t: Vec<u32> = (0..n)
        .map(|i| {
            let vinv = f.inv(p.v[i]).expect("v is nonzero");
            f.mul(f.mul(vinv, u[i]), f.pow(p.alpha[i], (n + 2 - k) as u64))
        })
        .collect();
    t.push(f.sub(f.sub(p.delta, h[2]), f.mul(p.eta, h[5])));
    t.push(if plus { h[1] } else { f.neg(h[1]) });
    t
}

/// Tries the closed form with `+h_1`, then with `−h_1`, then solves the
/// linear system, keeping the first candidate that meets the contract.
pub fn extension_vector(p: &EtgrsParams) -> Result<ExtensionVector> {
    let g1 = punctured_generator(p);
    let target = extension_target(p);
    let mut rejected = Vec::new();
    for (plus, source) in [(true, ExtensionSource::FormulaPlus), (false, ExtensionSource::FormulaMinus)] {
        let t = extension_formula(p, plus);
        if g1.matvec(&t)? == target {
            return Ok(ExtensionVector {
                t,
                source,
                contract_holds: true,
                rejected,
            });
        }
        rejected.push(source);
    }
    let t = g1.solve(&target)?;
    let contract_holds = g1.matvec(&t)? == target;
    Ok(ExtensionVector {
        t,
        source: ExtensionSource::LinearSolve,
        contract_holds,
        rejected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example1() -> EtgrsParams {
        let f = FieldSpec::prime(13).unwrap();
        EtgrsParams::with_unit_multipliers(&f, 3, vec![1, 2, 5, 6, 7], 9, 9).unwrap()
    }

    #[test]
    fn k3_generator_rows() {
        let p = example1();
        let g = generator_matrix(&p);
        assert_eq!(g.rows(), 3);
        assert_eq!(g.cols(), 8);
        assert_eq!(g.row(0), &[1, 1, 1, 1, 1, 0, 0, 1]);
        assert_eq!(g.row(1), &[1, 2, 5, 6, 7, 0, 1, 0]);
        // α² + 9α⁵ at α = 2: 4 + 9·32 = 292 = 6 mod 13
        assert_eq!(g.get(2, 1), 6);
        assert_eq!(&g.row(2)[5..], &[1, 0, 9]);
    }

    #[test]
    fn params_validation() {
        let f = FieldSpec::prime(13).unwrap();
        let bad = |k, alpha: Vec<u32>, eta| EtgrsParams::with_unit_multipliers(&f, k, alpha, eta, 0).unwrap_err();
        assert_eq!(bad(3, vec![1, 2, 1, 4], 1), Error::RepeatedValue { first: 0, second: 2 });
        assert!(matches!(bad(2, vec![1, 2, 3], 1), Error::InvalidParams(_)));
        assert!(matches!(bad(4, vec![1, 2, 3], 1), Error::InvalidParams(_)));
        assert!(matches!(bad(3, vec![1, 2, 3], 0), Error::InvalidParams(_)));
        assert_eq!(
            EtgrsParams::new(&f, 3, vec![1, 2, 3], vec![1, 0, 1], 1, 0).unwrap_err(),
            Error::ZeroMultiplier(1)
        );
    }

    #[test]
    fn extension_example1() {
        let p = example1();
        let ext = extension_vector(&p).unwrap();
        assert!(ext.contract_holds);
        assert_eq!(ext.source, ExtensionSource::FormulaMinus);
        let c1 = punctured_code(&p);
        assert_eq!(c1.extend(&ext.t).unwrap().generator(), &generator_matrix(&p));
    }

    #[test]
    fn punctured_matches_direct() {
        let p = example1();
        assert_eq!(punctured_code(&p).generator(), &punctured_generator(&p));
    }
}
