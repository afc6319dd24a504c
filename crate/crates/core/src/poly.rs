//! Dense polynomials and power series truncated at a fixed order, over [`Rational`].

use crate::rational::Rational;

/// Coefficients `c[0] + c[1] x + ...`, trailing zeros allowed.
pub type Coeffs = Vec<Rational>;

pub fn eval(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + c)
}

pub fn derivative(coeffs: &[Rational]) -> Coeffs {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Rational::from_integer(k as i64))
        .collect()
}

/// Antiderivative vanishing at zero.
pub fn integral(coeffs: &[Rational]) -> Coeffs {
    let mut out = Vec::with_capacity(coeffs.len() + 1);
    out.push(Rational::zero());
    for (k, c) in coeffs.iter().enumerate() {
        out.push(c / Rational::from_integer(k as i64 + 1));
    }
    out
}

pub fn add_into(acc: &mut Coeffs, other: &[Rational]) {
    if acc.len() < other.len() {
        acc.resize(other.len(), Rational::zero());
    }
    for (a, b) in acc.iter_mut().zip(other) {
        *a += b;
    }
}

pub fn scale(coeffs: &[Rational], s: &Rational) -> Coeffs {
    coeffs.iter().map(|c| c * s).collect()
}

pub fn mul(a: &[Rational], b: &[Rational]) -> Coeffs {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Product truncated to terms of degree `< order`.
pub fn mul_trunc(a: &[Rational], b: &[Rational], order: usize) -> Coeffs {
    let mut out = vec![Rational::zero(); order];
    for (i, x) in a.iter().enumerate().take(order) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `base^exp` truncated to degree `< order`, by repeated squaring.
pub fn pow_trunc(base: &[Rational], mut exp: u64, order: usize) -> Coeffs {
    let mut result = vec![Rational::zero(); order];
    if order == 0 {
        return result;
    }
    result[0] = Rational::one();
    let mut square: Coeffs = base.iter().take(order).cloned().collect();
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_trunc(&result, &square, order);
        }
        exp >>= 1;
        if exp > 0 {
            square = mul_trunc(&square, &square, order);
        }
    }
    result
}

/// `exp(s)` truncated to degree `< order` for a series with `s[0] = 0`.
///
/// Uses `g' = s' g`, i.e. `m g_m = sum_{j=1}^m j s_j g_{m-j}`.
pub fn exp_trunc(s: &[Rational], order: usize) -> Coeffs {
    debug_assert!(s.first().is_none_or(Rational::is_zero));
    let mut g = vec![Rational::zero(); order];
    if order == 0 {
        return g;
    }
    g[0] = Rational::one();
    for m in 1..order {
        let mut acc = Rational::zero();
        for j in 1..=m.min(s.len().saturating_sub(1)) {
            if s[j].is_zero() {
                continue;
            }
            acc += &s[j] * &g[m - j] * Rational::from_integer(j as i64);
        }
        g[m] = acc / Rational::from_integer(m as i64);
    }
    g
}

/// Drops trailing zero coefficients.
pub fn trimmed(mut coeffs: Coeffs) -> Coeffs {
    while coeffs.last().is_some_and(Rational::is_zero) {
        coeffs.pop();
    }
    coeffs
}
