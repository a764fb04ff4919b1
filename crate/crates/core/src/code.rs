//! Linear codes given by a generator matrix.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::{rank_raw, FieldMatrix};

/// Default number of messages exhaustive enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "ETGRS_BUDGET";

/// [`DEFAULT_BUDGET`], or the value of `ETGRS_BUDGET` when it parses.
pub fn default_budget() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// How a minimum distance was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMethod {
    /// Exhaustive enumeration of codewords.
    Enumeration,
    /// Smallest dependent set of parity-check columns.
    ColumnRank,
}

/// A linear code with a full-row-rank generator matrix.
#[derive(Clone, Debug)]
pub struct LinearCode {
    gen: FieldMatrix,
}

impl LinearCode {
    /// Wraps `gen` unchanged; fails if its rows are dependent.
    pub fn from_generator(gen: FieldMatrix) -> Result<Self> {
        let rank = gen.rank();
        if rank != gen.rows() {
            return Err(Error::RankDeficient {
                rank,
                rows: gen.rows(),
            });
        }
        Ok(LinearCode { gen })
    }

    pub fn generator(&self) -> &FieldMatrix {
        &self.gen
    }

    pub fn field(&self) -> &FieldSpec {
        self.gen.field()
    }

    pub fn length(&self) -> usize {
        self.gen.cols()
    }

    pub fn dimension(&self) -> usize {
        self.gen.rows()
    }

    pub fn encode(&self, message: &[u32]) -> Result<Vec<u32>> {
        self.gen.vecmat(message)
    }

    /// Whether `word` lies in the row space.
    pub fn contains(&self, word: &[u32]) -> Result<bool> {
        if word.len() != self.length() {
            return Err(Error::DimensionMismatch(format!(
                "word of length {} for a code of length {}",
                word.len(),
                self.length()
            )));
        }
        let row = FieldMatrix::from_raw(self.field(), 1, word.len(), word.to_vec())?;
        Ok(self.gen.vconcat(&row)?.rank() == self.dimension())
    }

    /// A generator of the dual code; its rows span `{x : G xᵀ = 0}`.
    pub fn parity_check(&self) -> FieldMatrix {
        self.gen.kernel()
    }

    /// The dual code, or `None` when it is the zero code (`k = N`).
    pub fn dual(&self) -> Option<LinearCode> {
        let h = self.parity_check();
        (h.rows() > 0).then(|| LinearCode { gen: h })
    }

    /// Appends the coordinate `G tᵀ`.
    pub fn extend(&self, t: &[u32]) -> Result<LinearCode> {
        let col = self.gen.matvec(t)?;
        let col = FieldMatrix::from_raw(self.field(), col.len(), 1, col)?;
        Ok(LinearCode {
            gen: self.gen.hconcat(&col)?,
        })
    }

    /// Deletes coordinate `position`.
    pub fn puncture(&self, position: usize) -> Result<LinearCode> {
        if position >= self.length() {
            return Err(Error::IndexOutOfRange {
                index: position,
                bound: self.length(),
            });
        }
        let keep: Vec<usize> = (0..self.length()).filter(|&c| c != position).collect();
        LinearCode::from_generator(self.gen.select_cols(&keep)?)
    }

    /// Span of coordinatewise products of generator rows, as an rref basis.
    pub fn schur_product(&self, other: &LinearCode) -> Result<LinearCode> {
        self.check_compatible(other)?;
        let products = self
            .gen
            .row_vecs()
            .iter()
            .cartesian_product(other.gen.row_vecs().iter())
            .map(|(a, b)| star(self.field(), a, b))
            .collect_vec();
        Ok(span(self.field(), self.length(), &products))
    }

    /// The Schur square, from the `k(k+1)/2` products of row pairs.
    pub fn schur_square(&self) -> LinearCode {
        let rows = self.gen.row_vecs();
        let products = (0..rows.len())
            .flat_map(|i| (i..rows.len()).map(move |j| (i, j)))
            .map(|(i, j)| star(self.field(), &rows[i], &rows[j]))
            .collect_vec();
        span(self.field(), self.length(), &products)
    }

    /// Whether both codes have the same row space.
    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.gen.same_row_space(&other.gen)
    }

    /// Minimum distance by exhaustive enumeration. Fails when `q^k` exceeds
    /// `budget`.
    ///
    /// Only messages whose first nonzero entry is 1 are visited, since
    /// scalar multiples share a weight. The search is split across rayon
    /// workers; the minimum does not depend on the split.
    pub fn min_distance(&self, budget: u64) -> Result<usize> {
        let needed = enumeration_cost(self.field().q(), self.dimension());
        if needed > budget as u128 {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        Ok(min_weight(&self.gen))
    }

    /// Minimum distance as the smallest `w` such that some `w` columns of
    /// the parity-check matrix are linearly dependent.
    pub fn min_distance_by_columns(&self, budget: u64) -> Result<usize> {
        let h = self.parity_check();
        let needed = column_cost(self.length(), self.length() - self.dimension() + 1);
        if needed > budget as u128 {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        Ok(smallest_dependent_set(&h).expect("N - k + 1 columns of H are dependent"))
    }

    /// Minimum distance by whichever method is cheaper.
    pub fn min_distance_auto(&self, budget: u64) -> Result<(usize, DistanceMethod)> {
        match self.min_distance(budget) {
            Ok(d) => Ok((d, DistanceMethod::Enumeration)),
            Err(Error::BudgetExceeded { .. }) => self
                .min_distance_by_columns(budget)
                .map(|d| (d, DistanceMethod::ColumnRank)),
            Err(e) => Err(e),
        }
    }

    /// Minimum distance of the dual. Enumerates the dual when affordable,
    /// otherwise finds the smallest dependent set of columns of `G`.
    pub fn dual_min_distance(&self, budget: u64) -> Result<(usize, DistanceMethod)> {
        let Some(dual) = self.dual() else {
            return Err(Error::InvalidCodeParams(
                "the dual of a full-space code is the zero code".into(),
            ));
        };
        match dual.min_distance(budget) {
            Ok(d) => Ok((d, DistanceMethod::Enumeration)),
            Err(Error::BudgetExceeded { .. }) => {
                let needed = column_cost(self.length(), self.dimension() + 1);
                if needed > budget as u128 {
                    return Err(Error::BudgetExceeded { needed, budget });
                }
                let d = smallest_dependent_set(&self.gen).expect("k + 1 columns of G are dependent");
                Ok((d, DistanceMethod::ColumnRank))
            }
            Err(e) => Err(e),
        }
    }

    fn check_compatible(&self, other: &LinearCode) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if self.length() != other.length() {
            return Err(Error::DimensionMismatch(format!(
                "codes of length {} and {}",
                self.length(),
                other.length()
            )));
        }
        Ok(())
    }
}

/// `GRS_k(α, v)`: the rows `α^0..α^{k-1}` scaled columnwise by `v`.
pub fn grs_code(field: &FieldSpec, alpha: &[u32], v: &[u32], k: usize) -> Result<LinearCode> {
    if alpha.len() != v.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} evaluation points and {} multipliers",
            alpha.len(),
            v.len()
        )));
    }
    if k == 0 || k > alpha.len() {
        return Err(Error::InvalidCodeParams(format!(
            "need 1 <= k <= n, got k = {k}, n = {}",
            alpha.len()
        )));
    }
    if let Some(&bad) = alpha.iter().chain(v).find(|&&x| !field.contains(x)) {
        return Err(Error::ElementOutOfRange {
            value: bad as u64,
            q: field.q(),
        });
    }
    check_distinct(alpha)?;
    if let Some(i) = v.iter().position(|&x| x == 0) {
        return Err(Error::ZeroMultiplier(i));
    }
    let gen = FieldMatrix::vandermonde(field, alpha, k).scale_cols(v)?;
    LinearCode::from_generator(gen)
}

pub(crate) fn check_distinct(values: &[u32]) -> Result<()> {
    for (i, a) in values.iter().enumerate() {
        if let Some(j) = values[i + 1..].iter().position(|b| b == a) {
            return Err(Error::RepeatedValue {
                first: i,
                second: i + 1 + j,
            });
        }
    }
    Ok(())
}

/// Parameters `[N, k, d]` and, optionally, the dual distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub length: usize,
    pub dimension: usize,
    pub min_distance: usize,
    pub dual_min_distance: Option<usize>,
}

impl CodeParams {
    pub fn new(
        length: usize,
        dimension: usize,
        min_distance: usize,
        dual_min_distance: Option<usize>,
    ) -> Result<Self> {
        if dimension == 0 || dimension > length {
            return Err(Error::InvalidCodeParams(format!(
                "dimension {dimension} for length {length}"
            )));
        }
        if min_distance == 0 || min_distance > length - dimension + 1 {
            return Err(Error::InvalidCodeParams(format!(
                "d = {min_distance} violates 1 <= d <= N - k + 1 = {}",
                length - dimension + 1
            )));
        }
        if let Some(dd) = dual_min_distance {
            if dd == 0 || dd > dimension + 1 {
                return Err(Error::InvalidCodeParams(format!(
                    "dual distance {dd} violates 1 <= d' <= k + 1 = {}",
                    dimension + 1
                )));
            }
        }
        Ok(CodeParams {
            length,
            dimension,
            min_distance,
            dual_min_distance,
        })
    }
}

impl std::fmt::Display for CodeParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{},{}]", self.length, self.dimension, self.min_distance)
    }
}

/// Distance class of a code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Verdict {
    #[serde(rename = "MDS")]
    Mds,
    /// `d = N − k` with a dual that is not AMDS.
    #[serde(rename = "AMDS")]
    Amds,
    /// `d = N − k` and `d⊥ = k`.
    #[serde(rename = "NMDS")]
    Nmds,
    #[serde(rename = "OTHER")]
    Other,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Mds => "MDS",
            Verdict::Amds => "AMDS",
            Verdict::Nmds => "NMDS",
            Verdict::Other => "OTHER",
        }
    }

    /// AMDS in the wide sense: `d = N − k`, whether or not the dual is too.
    pub fn is_almost_mds(self) -> bool {
        matches!(self, Verdict::Amds | Verdict::Nmds)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "MDS" => Ok(Verdict::Mds),
            "AMDS" => Ok(Verdict::Amds),
            "NMDS" => Ok(Verdict::Nmds),
            "OTHER" => Ok(Verdict::Other),
            _ => Err(Error::Parse(format!("unknown verdict '{s}'"))),
        }
    }
}

/// Classifies from parameters. `d = N − k` needs the dual distance to
/// separate AMDS from NMDS.
pub fn classify(params: &CodeParams) -> Result<Verdict> {
    let CodeParams {
        length: n,
        dimension: k,
        min_distance: d,
        dual_min_distance: dd,
    } = *params;
    if d == n - k + 1 {
        Ok(Verdict::Mds)
    } else if d + k == n {
        match dd {
            None => Err(Error::DualDistanceRequired),
            Some(dd) if dd == k => Ok(Verdict::Nmds),
            Some(_) => Ok(Verdict::Amds),
        }
    } else {
        Ok(Verdict::Other)
    }
}

fn star(f: &FieldSpec, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| f.mul(x, y)).collect()
}

fn span(f: &FieldSpec, cols: usize, rows: &[Vec<u32>]) -> LinearCode {
    let m = FieldMatrix::from_raw(f, rows.len(), cols, rows.concat()).expect("entries are field encodings");
    let e = m.echelon();
    let rank = e.pivots.len();
    let all: Vec<usize> = (0..cols).collect();
    let rows: Vec<usize> = (0..rank).collect();
    LinearCode {
        gen: e.matrix.select_unchecked(&rows, &all),
    }
}

fn enumeration_cost(q: u32, k: usize) -> u128 {
    (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX)
}

fn column_cost(n: usize, wmax: usize) -> u128 {
    (1..=wmax.min(n)).map(|w| binomial(n, w)).sum()
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Smallest number of linearly dependent columns of `m`, or `None` if all
/// columns are independent.
pub(crate) fn smallest_dependent_set(m: &FieldMatrix) -> Option<usize> {
    let f = m.field();
    let (rows, cols) = (m.rows(), m.cols());
    let mut buf = Vec::with_capacity(rows * cols);
    for w in 1..=cols {
        if w > rows {
            return Some(w);
        }
        let dependent = (0..cols).combinations(w).any(|set| {
            buf.clear();
            for r in 0..rows {
                buf.extend(set.iter().map(|&c| m.get(r, c)));
            }
            rank_raw(f, rows, w, &mut buf) < w
        });
        if dependent {
            return Some(w);
        }
    }
    None
}

/// Work item: a leading row with coefficient 1, plus the coefficient of the
/// next row when there is one.
#[derive(Clone, Copy)]
struct Chunk {
    lead: usize,
    next: Option<u32>,
}

fn min_weight(gen: &FieldMatrix) -> usize {
    let f = gen.field();
    let (k, n, q) = (gen.rows(), gen.cols(), f.q());

    // step[j][c] moves row j's contribution from coefficient c to c + 1
    // (wrapping to 0 after q - 1), in integer encoding order.
    let multiples: Vec<Vec<u32>> = (0..k)
        .map(|j| {
            let row = gen.row(j);
            (0..q).flat_map(|c| row.iter().map(move |&x| f.mul(c, x))).collect()
        })
        .collect();
    let steps: Vec<Vec<u32>> = multiples
        .iter()
        .map(|mult| {
            (0..q as usize)
                .flat_map(|c| {
                    let next = (c + 1) % q as usize;
                    (0..n).map(move |i| f.sub(mult[next * n + i], mult[c * n + i]))
                })
                .collect()
        })
        .collect();

    let chunks: Vec<Chunk> = (0..k)
        .flat_map(|lead| {
            if lead + 1 == k {
                vec![Chunk { lead, next: None }]
            } else {
                (0..q).map(|c| Chunk { lead, next: Some(c) }).collect()
            }
        })
        .collect();

    chunks
        .par_iter()
        .map(|&chunk| scan_chunk(f, &multiples, &steps, n, k, q, chunk))
        .min()
        .unwrap_or(n)
}

fn scan_chunk(
    f: &FieldSpec,
    multiples: &[Vec<u32>],
    steps: &[Vec<u32>],
    n: usize,
    k: usize,
    q: u32,
    chunk: Chunk,
) -> usize {
    let mut word: Vec<u32> = multiples[chunk.lead][n..2 * n].to_vec();
    let free_start = match chunk.next {
        Some(c) => {
            let c = c as usize;
            for (w, &x) in word.iter_mut().zip(&multiples[chunk.lead + 1][c * n..(c + 1) * n]) {
                *w = f.add(*w, x);
            }
            chunk.lead + 2
        }
        None => chunk.lead + 1,
    };
    let weight = |w: &[u32]| w.iter().filter(|&&x| x != 0).count();
    let mut best = weight(&word);
    let mut digits = vec![0u32; k - free_start];
    'outer: loop {
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                break 'outer;
            }
            let j = free_start + pos;
            let c = digits[pos] as usize;
            for (w, &s) in word.iter_mut().zip(&steps[j][c * n..(c + 1) * n]) {
                *w = f.add(*w, s);
            }
            if c + 1 == q as usize {
                digits[pos] = 0;
                pos += 1;
            } else {
                digits[pos] += 1;
                break;
            }
        }
        best = best.min(weight(&word));
    }
    best
}
