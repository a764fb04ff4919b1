//! Elementary and complete homogeneous symmetric polynomials, the Lagrange
//! weights `u_i`, and the Δ quantities built from them.
//!
//! Two sign conventions for the elementary polynomials circulate:
//! the unsigned `e_r = Σ α_{i1}···α_{ir}` and the signed `σ_r = (−1)^r e_r`
//! (the coefficients of `∏(x − α_i)`). [`SymContext::elem_sym`] always
//! returns the unsigned value; [`SymContext::printed_delta`] takes the
//! convention explicitly.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Which sign convention the `σ_r` in a Δ formula follow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SigmaConvention {
    /// `σ_r = (−1)^r e_r`.
    Signed,
    /// `σ_r = e_r`.
    Unsigned,
}

/// `[e_0, e_1, ..., e_rmax]` of `vals` via the coefficients of `∏(1 + α t)`.
pub fn elementary(f: &FieldSpec, vals: &[u32], rmax: usize) -> Vec<u32> {
    let mut e = vec![0u32; rmax + 1];
    e[0] = 1;
    for (count, &a) in vals.iter().enumerate() {
        let top = (count + 1).min(rmax);
        for r in (1..=top).rev() {
            e[r] = f.add(e[r], f.mul(a, e[r - 1]));
        }
    }
    e
}

/// `[h_0, h_1, ..., h_rmax]` of `vals` from the elementary values via
/// `Σ_{i=0}^{r} (−1)^i e_i h_{r−i} = 0`.
pub fn complete(f: &FieldSpec, vals: &[u32], rmax: usize) -> Vec<u32> {
    let e = elementary(f, vals, rmax);
    complete_from_elementary(f, &e)
}

pub(crate) fn complete_from_elementary(f: &FieldSpec, e: &[u32]) -> Vec<u32> {
    let rmax = e.len() - 1;
    let mut h = vec![0u32; rmax + 1];
    h[0] = 1;
    for r in 1..=rmax {
        let mut acc = 0;
        for i in 1..=r {
            let term = f.mul(e[i], h[r - i]);
            acc = if i % 2 == 1 { f.add(acc, term) } else { f.sub(acc, term) };
        }
        h[r] = acc;
    }
    h
}

/// Distinct evaluation points restricted to an index subset.
#[derive(Clone, Debug)]
pub struct SymContext {
    field: FieldSpec,
    values: Vec<u32>,
}

impl SymContext {
    pub fn new(field: &FieldSpec, values: &[FieldElement]) -> Result<Self> {
        if values.iter().any(|v| v.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Self::from_raw(field, values.iter().map(FieldElement::value).collect())
    }

    pub fn from_raw(field: &FieldSpec, values: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|&&v| !field.contains(v)) {
            return Err(Error::ElementOutOfRange {
                value: bad as u64,
                q: field.q(),
            });
        }
        for (i, a) in values.iter().enumerate() {
            if let Some(j) = values[i + 1..].iter().position(|b| b == a) {
                return Err(Error::RepeatedValue {
                    first: i,
                    second: i + 1 + j,
                });
            }
        }
        Ok(SymContext {
            field: field.clone(),
            values,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn el(&self, v: u32) -> FieldElement {
        self.field.element(v).expect("arithmetic stays in range")
    }

    /// Unsigned `e_r`; `e_0 = 1` and `e_r = 0` for `r > len`.
    pub fn elem_sym(&self, r: usize) -> FieldElement {
        self.el(elementary(&self.field, &self.values, r)[r])
    }

    /// `h_r`, the sum of all degree-`r` monomials; `h_0 = 1`.
    pub fn complete_sym(&self, r: usize) -> FieldElement {
        self.el(complete(&self.field, &self.values, r)[r])
    }

    /// `u_i = ∏_{j≠i} (α_i − α_j)^{−1}`.
    pub fn u_weights(&self) -> Vec<FieldElement> {
        u_weights_raw(&self.field, &self.values)
            .into_iter()
            .map(|u| self.el(u))
            .collect()
    }

    /// `Σ_i α_i^h u_i`, summed literally.
    pub fn power_weight_sum(&self, h: u64) -> FieldElement {
        let f = &self.field;
        let u = u_weights_raw(f, &self.values);
        let s = self
            .values
            .iter()
            .zip(&u)
            .fold(0, |acc, (&a, &w)| f.add(acc, f.mul(f.pow(a, h), w)));
        self.el(s)
    }

    /// Δ^{(level)} under the signed convention, expressed through `h_r`:
    /// `Δ2 = h2`, `Δ3 = −h3`, `Δ4 = h4`, `Δ5 = h5`. Agrees with
    /// [`SymContext::printed_delta`] with [`SigmaConvention::Signed`].
    pub fn delta(&self, level: u32) -> Result<FieldElement> {
        let f = &self.field;
        let h = complete(f, &self.values, 5);
        let v = match level {
            2 => h[2],
            3 => f.neg(h[3]),
            4 => h[4],
            5 => h[5],
            _ => return Err(Error::InvalidParams(format!("no Δ of level {level}"))),
        };
        Ok(self.el(v))
    }

    /// The Δ formulas evaluated literally as polynomials in `σ_1..σ_5`.
    pub fn printed_delta(&self, level: u32, convention: SigmaConvention) -> Result<FieldElement> {
        let s = sigmas(&self.field, &self.values, convention);
        let v = match level {
            2 => PrintedDelta::new(&self.field, &s).d2(),
            3 => PrintedDelta::new(&self.field, &s).d3(),
            4 => PrintedDelta::new(&self.field, &s).d4(),
            5 => PrintedDelta::new(&self.field, &s).d5(),
            _ => return Err(Error::InvalidParams(format!("no Δ of level {level}"))),
        };
        Ok(self.el(v))
    }

    /// The inline grouping `−(σ2²σ1 + σ5 − 2σ3σ2) + σ1(σ2σ1² + σ4 − σ3σ1 − σ2²)`
    /// that appears for the third minor family; equal to `Δ5 + σ1·Δ4`.
    pub fn b3_inline(&self, convention: SigmaConvention) -> FieldElement {
        let s = sigmas(&self.field, &self.values, convention);
        self.el(PrintedDelta::new(&self.field, &s).b3_inline())
    }

    /// `Δ5 + σ1·Δ4` in the given convention.
    pub fn b3_grouped(&self, convention: SigmaConvention) -> FieldElement {
        let f = &self.field;
        let s = sigmas(f, &self.values, convention);
        let p = PrintedDelta::new(f, &s);
        self.el(f.add(p.d5(), f.mul(s[1], p.d4())))
    }
}

/// `[1, σ_1, ..., σ_5]` in the requested convention.
pub fn sigmas(f: &FieldSpec, vals: &[u32], convention: SigmaConvention) -> [u32; 6] {
    let e = elementary(f, vals, 5);
    let mut s = [0u32; 6];
    for r in 0..=5 {
        s[r] = match convention {
            SigmaConvention::Signed if r % 2 == 1 => f.neg(e[r]),
            _ => e[r],
        };
    }
    s
}

/// `σ_0..σ_5` and the printed `Δ2..Δ5` (at indices 2..=5).
pub(crate) fn printed_values(f: &FieldSpec, vals: &[u32], convention: SigmaConvention) -> ([u32; 6], [u32; 6]) {
    let s = sigmas(f, vals, convention);
    let p = PrintedDelta::new(f, &s);
    (s, [0, 0, p.d2(), p.d3(), p.d4(), p.d5()])
}

pub(crate) fn u_weights_raw(f: &FieldSpec, vals: &[u32]) -> Vec<u32> {
    vals.iter()
        .enumerate()
        .map(|(i, &a)| {
            let prod = vals
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(1, |acc, (_, &b)| f.mul(acc, f.sub(a, b)));
            f.inv(prod).expect("values are distinct")
        })
        .collect()
}

/// The Δ expressions, written term by term as printed.
struct PrintedDelta<'a> {
    f: &'a FieldSpec,
    s: &'a [u32; 6],
}

impl<'a> PrintedDelta<'a> {
    fn new(f: &'a FieldSpec, s: &'a [u32; 6]) -> Self {
        PrintedDelta { f, s }
    }

    fn prod(&self, idx: &[usize]) -> u32 {
        idx.iter().fold(1, |acc, &i| self.f.mul(acc, self.s[i]))
    }

    fn double(&self, a: u32) -> u32 {
        self.f.add(a, a)
    }

    /// σ1² − σ2
    fn d2(&self) -> u32 {
        self.f.sub(self.prod(&[1, 1]), self.s[2])
    }

    /// σ1³ + σ3 − 2σ2σ1
    fn d3(&self) -> u32 {
        let f = self.f;
        let t = f.add(self.prod(&[1, 1, 1]), self.s[3]);
        f.sub(t, self.double(self.prod(&[2, 1])))
    }

    /// σ2σ1² + σ4 − σ2² − σ3σ1
    fn inner4(&self) -> u32 {
        let f = self.f;
        let t = f.add(self.prod(&[2, 1, 1]), self.s[4]);
        let t = f.sub(t, self.prod(&[2, 2]));
        f.sub(t, self.prod(&[3, 1]))
    }

    /// σ3σ1² + σ5 − σ3σ2 − σ4σ1
    fn inner5(&self) -> u32 {
        let f = self.f;
        let t = f.add(self.prod(&[3, 1, 1]), self.s[5]);
        let t = f.sub(t, self.prod(&[3, 2]));
        f.sub(t, self.prod(&[4, 1]))
    }

    /// −inner4 + σ1·Δ3
    fn d4(&self) -> u32 {
        let f = self.f;
        f.add(f.neg(self.inner4()), f.mul(self.s[1], self.d3()))
    }

    /// −inner5 + σ2·Δ3 + σ1·inner4 − σ1²·Δ3
    fn d5(&self) -> u32 {
        let f = self.f;
        let d3 = self.d3();
        let mut t = f.neg(self.inner5());
        t = f.add(t, f.mul(self.s[2], d3));
        t = f.add(t, f.mul(self.s[1], self.inner4()));
        f.sub(t, f.mul(self.prod(&[1, 1]), d3))
    }

    fn b3_inline(&self) -> u32 {
        let f = self.f;
        let a = f.add(self.prod(&[2, 2, 1]), self.s[5]);
        let a = f.sub(a, self.double(self.prod(&[3, 2])));
        let b = f.add(self.prod(&[2, 1, 1]), self.s[4]);
        let b = f.sub(b, self.prod(&[3, 1]));
        let b = f.sub(b, self.prod(&[2, 2]));
        f.add(f.neg(a), f.mul(self.s[1], b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u32, vals: &[u32]) -> SymContext {
        SymContext::from_raw(&FieldSpec::prime(p).unwrap(), vals.to_vec()).unwrap()
    }

    #[test]
    fn elementary_small() {
        let c = ctx(13, &[1, 2, 5]);
        assert_eq!(c.elem_sym(0).value(), 1);
        assert_eq!(c.elem_sym(1).value(), 8);
        assert_eq!(c.elem_sym(2).value(), 4);
        assert_eq!(c.elem_sym(3).value(), 10);
        assert_eq!(c.elem_sym(4).value(), 0);
    }

    #[test]
    fn complete_two_points() {
        let c = ctx(13, &[3, 7]);
        // 9 + 21 + 49 = 79 = 1 mod 13
        assert_eq!(c.complete_sym(2).value(), 1);
        assert_eq!(c.complete_sym(0).value(), 1);
    }

    #[test]
    fn u_weight_identities() {
        let c = ctx(13, &[1, 2, 5]);
        assert_eq!(c.power_weight_sum(0).value(), 0);
        assert_eq!(c.power_weight_sum(1).value(), 0);
        assert_eq!(c.power_weight_sum(2).value(), 1);
        let two = ctx(13, &[4, 9]).u_weights();
        assert_eq!(two[0].add(&two[1]).unwrap().value(), 0);
    }

    #[test]
    fn repeated_values_rejected() {
        let f = FieldSpec::prime(13).unwrap();
        assert_eq!(
            SymContext::from_raw(&f, vec![1, 4, 1]).unwrap_err(),
            Error::RepeatedValue { first: 0, second: 2 }
        );
    }

    #[test]
    fn delta_two_points() {
        let c = ctx(13, &[3, 7]);
        assert_eq!(c.delta(2).unwrap(), c.complete_sym(2));
        for conv in [SigmaConvention::Signed, SigmaConvention::Unsigned] {
            assert_eq!(c.printed_delta(2, conv).unwrap(), c.complete_sym(2));
        }
        assert!(c.delta(6).is_err());
    }
}
