//! Exact arithmetic in GF(p) and GF(p^m).
//!
//! An element of GF(p^m) = GF(p)[x]/(f) is stored as a single integer in
//! `[0, q)`: the base-`p` digits of the integer are the polynomial-basis
//! coordinates, constant term in the least significant digit. For `m = 1`
//! this is just the residue mod `p`.
//!
//! Arithmetic is table-free. Hot loops elsewhere in the crate work on raw
//! `u32` encodings through the methods on [`FieldSpec`]; [`FieldElement`] is
//! the checked, self-describing value type used at API boundaries.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Serialize, Serializer};

use crate::conway;
use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

const MAX_DEGREE: usize = 16;

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, constant term first, `m + 1` entries.
    modulus: Vec<u32>,
    /// Modulus as a bit mask when `p = 2`.
    mask2: u32,
    primitive: OnceLock<u32>,
}

/// A finite field GF(p^m) with a fixed irreducible modulus.
///
/// Cloning is cheap; all clones describe the same field.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl FieldSpec {
    /// Builds GF(p^m). Without a modulus, the Conway polynomial is used for
    /// `m >= 2`; for `m = 1` arithmetic is plain mod-`p` and the modulus is `x`.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = checked_order(p, m).ok_or(Error::FieldTooLarge { p, m })?;

        let modulus: Vec<u32> = match modulus {
            Some(coeffs) => {
                validate_modulus(p, m, coeffs)?;
                coeffs.to_vec()
            }
            None if m == 1 => vec![0, 1],
            None => conway::lookup(p, m)
                .ok_or(Error::NoConwayPolynomial { p, m })?
                .to_vec(),
        };

        let mask2 = if p == 2 {
            modulus
                .iter()
                .enumerate()
                .fold(0u32, |acc, (i, &c)| acc | (c << i))
        } else {
            0
        };

        Ok(FieldSpec(Arc::new(Inner {
            p,
            m,
            q,
            modulus,
            mask2,
            primitive: OnceLock::new(),
        })))
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// Parses `"p^m"`, `"p^m:c0,c1,...,cm"`, a bare prime `"13"`, or a bare
    /// prime power `"8"`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (head, modulus) = match text.split_once(':') {
            Some((h, tail)) => {
                let coeffs = tail
                    .split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad modulus coefficient '{c}'")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                (h.trim(), Some(coeffs))
            }
            None => (text, None),
        };
        let (p, m) = match head.split_once('^') {
            Some((p, m)) => {
                let p = p
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad characteristic '{p}'")))?;
                let m = m
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad extension degree '{m}'")))?;
                (p, m)
            }
            None => {
                let q = head
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad field descriptor '{head}'")))?;
                prime_power(q).ok_or(Error::NotPrime(q))?
            }
        };
        Self::new(p, m, modulus.as_deref())
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Canonical descriptor accepted by [`FieldSpec::parse`].
    pub fn descriptor(&self) -> String {
        let coeffs: Vec<String> = self.0.modulus.iter().map(u32::to_string).collect();
        format!("{}^{}:{}", self.0.p, self.0.m, coeffs.join(","))
    }

    pub fn contains(&self, value: u32) -> bool {
        value < self.0.q
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if !self.contains(value) {
            return Err(Error::ElementOutOfRange {
                value: value as u64,
                q: self.0.q,
            });
        }
        Ok(FieldElement {
            field: self.clone(),
            value,
        })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value: 1,
        }
    }

    /// All `q` elements in ascending encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(move |value| FieldElement {
            field: self.clone(),
            value,
        })
    }

    /// Base-`p` coordinates of an encoding, constant term first, length `m`.
    pub fn digits(&self, a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.m as usize);
        let mut a = a;
        for _ in 0..self.0.m {
            out.push(a % self.0.p);
            a /= self.0.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<u32> {
        if digits.len() != self.0.m as usize || digits.iter().any(|&d| d >= self.0.p) {
            return Err(Error::Parse(format!(
                "expected {} digits below {}",
                self.0.m, self.0.p
            )));
        }
        Ok(digits.iter().rev().fold(0u32, |acc, &d| acc * self.0.p + d))
    }

    // Raw arithmetic on encodings. Callers guarantee operands are `< q`.

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let Inner { p, m, .. } = *self.0;
        if m == 1 {
            let s = a + b;
            if s >= p {
                s - p
            } else {
                s
            }
        } else if p == 2 {
            a ^ b
        } else {
            let (mut a, mut b) = (a, b);
            let (mut out, mut place) = (0u32, 1u32);
            for _ in 0..m {
                let s = (a % p + b % p) % p;
                out += s * place;
                place *= p;
                a /= p;
                b /= p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let Inner { p, m, .. } = *self.0;
        if m == 1 {
            if a == 0 {
                0
            } else {
                p - a
            }
        } else if p == 2 {
            a
        } else {
            let mut a = a;
            let (mut out, mut place) = (0u32, 1u32);
            for _ in 0..m {
                out += ((p - a % p) % p) * place;
                place *= p;
                a /= p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let Inner { p, m, .. } = *self.0;
        if m == 1 {
            return ((a as u64 * b as u64) % p as u64) as u32;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        if p == 2 {
            return self.mul_binary(a, b);
        }
        self.mul_poly(a, b)
    }

    fn mul_binary(&self, a: u32, b: u32) -> u32 {
        let m = self.0.m;
        let mut prod = 0u32;
        let mut b = b;
        let mut shift = 0;
        while b != 0 {
            if b & 1 == 1 {
                prod ^= a << shift;
            }
            b >>= 1;
            shift += 1;
        }
        for d in (m..2 * m - 1).rev() {
            if prod & (1 << d) != 0 {
                prod ^= self.0.mask2 << (d - m);
            }
        }
        prod
    }

    fn mul_poly(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p as u64;
        let m = self.0.m as usize;
        let mut da = [0u64; MAX_DEGREE];
        let mut db = [0u64; MAX_DEGREE];
        let (mut x, mut y) = (a as u64, b as u64);
        for i in 0..m {
            da[i] = x % p;
            db[i] = y % p;
            x /= p;
            y /= p;
        }
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        let modulus = &self.0.modulus;
        for d in (m..2 * m - 1).rev() {
            let c = prod[d];
            if c != 0 {
                for (i, &f) in modulus.iter().enumerate() {
                    let idx = d - m + i;
                    prod[idx] = (prod[idx] + (p - c) * f as u64) % p;
                }
            }
        }
        prod[..m]
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * p + d) as u32
    }

    /// Square-and-multiply; `pow(0, 0) = 1`.
    pub fn pow(&self, a: u32, e: u64) -> u32 {
        let mut result = 1u32;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.0.q as u64 - 2))
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u32) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let mut order = self.0.q as u64 - 1;
        for r in prime_factors(order) {
            while order % r == 0 && self.pow(a, order / r) == 1 {
                order /= r;
            }
        }
        Some(order)
    }

    /// The primitive element with the smallest encoding.
    pub fn primitive_element(&self) -> FieldElement {
        let value = *self.0.primitive.get_or_init(|| {
            let group = self.0.q as u64 - 1;
            (1..self.0.q)
                .find(|&a| self.order(a) == Some(group))
                .expect("every finite field has a primitive element")
        });
        FieldElement {
            field: self.clone(),
            value,
        }
    }

    /// Parses element text: an integer encoding (`"9"`, `"0"`) or a power of
    /// the primitive element (`"g^3"`, `"g"`, `"g^-1"`).
    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix('g') {
            let exponent: i64 = if rest.is_empty() {
                1
            } else {
                let digits = rest
                    .strip_prefix('^')
                    .ok_or_else(|| Error::Parse(format!("bad element '{text}'")))?;
                digits
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in '{text}'")))?
            };
            let group = self.0.q as i64 - 1;
            let e = exponent.rem_euclid(group) as u64;
            let g = self.primitive_element().value;
            return self.element(self.pow(g, e));
        }
        let value: u64 = text
            .parse()
            .map_err(|_| Error::Parse(format!("bad element '{text}'")))?;
        if value >= self.0.q as u64 {
            return Err(Error::ElementOutOfRange {
                value,
                q: self.0.q,
            });
        }
        self.element(value as u32)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({})", self.descriptor())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.m)
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("FieldSpec", 4)?;
        s.serialize_field("p", &self.0.p)?;
        s.serialize_field("m", &self.0.m)?;
        s.serialize_field("q", &self.0.q)?;
        s.serialize_field("modulus", &self.0.modulus)?;
        s.end()
    }
}

/// A field element tagged with its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldSpec,
    value: u32,
}

impl FieldElement {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, value: u32) -> Self {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> Self {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Self> {
        self.field
            .inv(self.value)
            .map(|v| self.with(v))
            .ok_or(Error::ZeroInverse)
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.field.pow(self.value, e))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.value, self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u32(self.value)
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    let factors = prime_factors(q as u64);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0] as u32;
    let mut m = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        m += 1;
    }
    Some((p, m))
}

fn checked_order(p: u32, m: u32) -> Option<u32> {
    let mut q: u64 = 1;
    for _ in 0..m {
        q *= p as u64;
        if q > MAX_ORDER as u64 {
            return None;
        }
    }
    Some(q as u32)
}

fn validate_modulus(p: u32, m: u32, coeffs: &[u32]) -> Result<()> {
    let expected = m as usize + 1;
    if coeffs.len() != expected {
        return Err(Error::ModulusLength {
            expected,
            got: coeffs.len(),
        });
    }
    if let Some(&coeff) = coeffs.iter().find(|&&c| c >= p) {
        return Err(Error::ModulusCoefficient { coeff, p });
    }
    if coeffs[m as usize] != 1 {
        return Err(Error::ModulusNotMonic);
    }
    if !poly::is_irreducible(coeffs, p) {
        return Err(Error::ReducibleModulus { p });
    }
    Ok(())
}

/// Dense polynomials over GF(p), constant term first.
pub(crate) mod poly {
    fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    /// Remainder of `a` modulo a monic `b`.
    pub(crate) fn rem_monic(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        trim(&mut a);
        let db = b.len() - 1;
        while a.len() > db {
            let c = *a.last().unwrap();
            let shift = a.len() - 1 - db;
            for (i, &bi) in b.iter().enumerate() {
                let t = (c as u64 * bi as u64 % p as u64) as u32;
                a[shift + i] = (a[shift + i] + p - t) % p;
            }
            trim(&mut a);
        }
        a
    }

    /// Exhaustive trial division by every monic polynomial of degree
    /// `1..=deg/2`.
    pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        if deg <= 1 {
            return deg == 1;
        }
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for code in 0..count {
                let mut divisor = Vec::with_capacity(d + 1);
                let mut c = code;
                for _ in 0..d {
                    divisor.push((c % p as u64) as u32);
                    c /= p as u64;
                }
                divisor.push(1);
                if rem_monic(f, &divisor, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}
