//! Shared value types: cumulants, coefficient triangles, Hamiltonians, wave
//! vectors and lattice paths.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;
use crate::rational::{factorial, Rational};

/// Cumulants `c_1, ..., c_K` of a binomial-type sequence, `c_n = p_n'(0)`.
///
/// `c_0` is never stored and reads as zero, as does every `c_k` with `k > K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct CumulantSeq {
    values: Vec<Rational>,
}

impl CumulantSeq {
    /// `values[0]` is `c_1`.
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyCumulants);
        }
        Ok(CumulantSeq { values })
    }

    pub fn from_integers(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Rational::from_integer(v)).collect())
    }

    /// Parses a comma-separated list such as `"1,-1/2,3"`.
    ///
    /// Error positions are byte offsets into the whole list.
    pub fn parse_list(list: &str) -> Result<Self> {
        let mut values = Vec::new();
        let mut offset = 0;
        for item in list.split(',') {
            let trimmed = item.trim();
            let lead = item.len() - item.trim_start().len();
            let value = trimmed.parse::<Rational>().map_err(|err| match err {
                Error::Parse {
                    position, message, ..
                } => Error::parse(list, offset + lead + position, message),
                other => other,
            })?;
            values.push(value);
            offset += item.len() + 1;
        }
        Self::new(values)
    }

    /// Number of stored cumulants `K`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `c_k`, zero for `k = 0` and for `k > K`.
    pub fn get(&self, k: usize) -> Rational {
        if k == 0 {
            return Rational::zero();
        }
        self.values
            .get(k - 1)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Stored values `c_1..c_K`.
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// The first `k` cumulants, zero-extended when `k > K`.
    pub fn extended(&self, k: usize) -> CumulantSeq {
        CumulantSeq {
            values: (1..=k.max(1)).map(|i| self.get(i)).collect(),
        }
    }

    /// Coefficients of `f(t) = sum_{k=1}^{order-1} c_k t^k / k!`, truncated.
    pub fn generating_series(&self, order: usize) -> poly::Coeffs {
        (0..order)
            .map(|k| &self.get(k) / Rational::from_integer(factorial(k)))
            .collect()
    }
}

impl TryFrom<Vec<Rational>> for CumulantSeq {
    type Error = Error;
    fn try_from(values: Vec<Rational>) -> Result<Self> {
        CumulantSeq::new(values)
    }
}

impl From<CumulantSeq> for Vec<Rational> {
    fn from(c: CumulantSeq) -> Self {
        c.values
    }
}

/// Connecting constants `a_{n,k}` with `p_n(x) = sum_k a_{n,k} x^k`, rows `0..=n_max`.
///
/// Construction only checks the shape (row `n` has `n + 1` entries); the
/// algebraic identities are checked by the verifiers in [`crate::exact`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Rational>>", into = "Vec<Vec<Rational>>")]
pub struct SequenceTriangle {
    rows: Vec<Vec<Rational>>,
}

impl SequenceTriangle {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::TriangleShape {
                row: 0,
                found: 0,
                expected: 1,
            });
        }
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::TriangleShape {
                    row: n,
                    found: row.len(),
                    expected: n + 1,
                });
            }
        }
        Ok(SequenceTriangle { rows })
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> Result<&[Rational]> {
        self.rows
            .get(n)
            .map(Vec::as_slice)
            .ok_or(Error::IndexOutOfRange {
                index: n,
                max: self.n_max(),
            })
    }

    /// `a_{n,k}`; zero when `k > n`. Panics if `n > n_max`.
    pub fn coeff(&self, n: usize, k: usize) -> &Rational {
        static ZERO: std::sync::OnceLock<Rational> = std::sync::OnceLock::new();
        self.rows[n]
            .get(k)
            .unwrap_or_else(|| ZERO.get_or_init(Rational::zero))
    }

    /// `p_n(x)`.
    pub fn eval(&self, n: usize, x: &Rational) -> Result<Rational> {
        Ok(poly::eval(self.row(n)?, x))
    }

    /// `q_n(x) = p_n(x) / n!`.
    pub fn eval_scaled(&self, n: usize, x: &Rational) -> Result<Rational> {
        Ok(self.eval(n, x)? / Rational::from_integer(factorial(n)))
    }

    /// True when `a_{1,1} = c_1 = 0`, so that `deg p_n < n` for `n >= 1`.
    pub fn degree_deficient(&self) -> bool {
        self.rows.len() > 1 && self.rows[1][1].is_zero()
    }

    /// Copy with entry `(n, k)` replaced.
    pub fn with_entry(&self, n: usize, k: usize, value: Rational) -> Result<Self> {
        let mut rows = self.rows.clone();
        let max = self.n_max();
        let row = rows
            .get_mut(n)
            .ok_or(Error::IndexOutOfRange { index: n, max })?;
        let slot = row
            .get_mut(k)
            .ok_or(Error::IndexOutOfRange { index: k, max: n })?;
        *slot = value;
        Ok(SequenceTriangle { rows })
    }
}

impl TryFrom<Vec<Vec<Rational>>> for SequenceTriangle {
    type Error = Error;
    fn try_from(rows: Vec<Vec<Rational>>) -> Result<Self> {
        SequenceTriangle::from_rows(rows)
    }
}

impl From<SequenceTriangle> for Vec<Vec<Rational>> {
    fn from(t: SequenceTriangle) -> Self {
        t.rows
    }
}

/// Fourier coefficients `h_0 = 0, h_1, ..., h_K` of `h(p) = sum_k h_k e^{ipk}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hamiltonian {
    coeffs: Vec<Rational>,
}

impl Hamiltonian {
    /// `h_k = c_k / k!` for `k = 0..=order`.
    pub fn from_cumulants(c: &CumulantSeq, order: usize) -> Self {
        Hamiltonian {
            coeffs: c.generating_series(order + 1),
        }
    }

    /// Takes raw coefficients `h_1..h_K` (the zero mode is implied).
    pub fn from_modes(modes: Vec<Rational>) -> Self {
        let mut coeffs = Vec::with_capacity(modes.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(modes);
        Hamiltonian { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Highest stored mode `K`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `h_k`, zero beyond the stored order.
    pub fn get(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Recovers `c_k = k! h_k` for `k = 1..=K`.
    pub fn cumulants(&self) -> CumulantSeq {
        let values = (1..=self.order().max(1))
            .map(|k| self.get(k) * Rational::from_integer(factorial(k)))
            .collect();
        CumulantSeq { values }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(Rational::to_f64).collect()
    }

    /// `sum_k h_k e^{ipk}` with every term's phase evaluated directly.
    pub fn eval(&self, p: f64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, h)| !h.is_zero())
            .map(|(k, h)| Complex64::from_polar(h.to_f64(), p * k as f64))
            .sum()
    }
}

/// Values `q_0(x), ..., q_{n_max}(x)` at a fixed `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WaveVector {
    pub x: Rational,
    pub values: Vec<Rational>,
}

impl WaveVector {
    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    /// `p_n(x) = n! q_n(x)`.
    pub fn unscaled(&self) -> Vec<Rational> {
        self.values
            .iter()
            .enumerate()
            .map(|(n, q)| q * Rational::from_integer(factorial(n)))
            .collect()
    }
}

/// One monotone lattice path: the jump sizes `k_1, ..., k_N` over `N` time slices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PathComposition {
    jumps: Vec<u32>,
}

impl PathComposition {
    pub fn new(jumps: Vec<u32>) -> Self {
        PathComposition { jumps }
    }

    pub fn jumps(&self) -> &[u32] {
        &self.jumps
    }

    pub fn steps(&self) -> usize {
        self.jumps.len()
    }

    /// The endpoint `n = sum k_j`.
    pub fn target(&self) -> u64 {
        self.jumps.iter().map(|&k| u64::from(k)).sum()
    }

    /// Heights `k(t)` after each slice, starting from `k(0) = 0`.
    pub fn heights(&self) -> Vec<u64> {
        self.jumps
            .iter()
            .scan(0u64, |h, &k| {
                *h += u64::from(k);
                Some(*h)
            })
            .collect()
    }
}
