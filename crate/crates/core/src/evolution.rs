//! The Schrödinger-type evolution in `x`:
//!
//! ```text
//! d/dx q_n(x) = sum_{k=1}^{n} h_k q_{n-k}(x),   q_n(0) = δ_{n0},
//! ```
//!
//! a convolution on the indices. Since `h_0 = 0` the system is strictly lower
//! triangular, so it can be solved exactly one row at a time by integrating
//! polynomials, or numerically with any one-step method.

use crate::poly::{self, Coeffs};
use crate::rational::{factorial, falling_factorial, Rational};
use crate::sequence::{CumulantSeq, Hamiltonian, SequenceTriangle, WaveVector};
use crate::spectral::hamiltonian_of;

/// Component `n` is `sum_{k=0}^{n} h_k q_{n-k}`.
///
/// Modes of `h` beyond its stored order count as zero.
pub fn rhs(h: &Hamiltonian, w: &WaveVector) -> Vec<Rational> {
    convolve(h, &w.values)
}

fn convolve(h: &Hamiltonian, q: &[Rational]) -> Vec<Rational> {
    (0..q.len())
        .map(|n| {
            (1..=n.min(h.order()))
                .filter(|&k| !h.coeffs()[k].is_zero())
                .map(|k| &h.coeffs()[k] * &q[n - k])
                .sum()
        })
        .collect()
}

/// Convolution of polynomial-valued components, `(h ★ Q)_n = sum_k h_k Q_{n-k}`.
pub fn convolve_polynomials(h: &Hamiltonian, q: &[Coeffs]) -> Vec<Coeffs> {
    (0..q.len())
        .map(|n| {
            let mut acc = Coeffs::new();
            for k in 1..=n.min(h.order()) {
                if !h.coeffs()[k].is_zero() {
                    poly::add_into(&mut acc, &poly::scale(&q[n - k], &h.coeffs()[k]));
                }
            }
            acc
        })
        .collect()
}

/// The polynomials `q_0(x), ..., q_{n_max}(x)` obtained by integrating the
/// evolution from `x = 0`: `q_n = ∫_0^x (h ★ q)_n ds`.
pub fn wave_polynomials(c: &CumulantSeq, n_max: usize) -> Vec<Coeffs> {
    let h = hamiltonian_of(c, n_max.max(1));
    let mut q: Vec<Coeffs> = vec![vec![Rational::one()]];
    for n in 1..=n_max {
        let mut integrand = Coeffs::new();
        for k in 1..=n {
            if !h.coeffs()[k].is_zero() {
                poly::add_into(&mut integrand, &poly::scale(&q[n - k], &h.coeffs()[k]));
            }
        }
        q.push(poly::integral(&integrand));
    }
    q
}

/// Exact wave vector `q_0(x), ..., q_{n_max}(x)`.
pub fn evolve_exact(c: &CumulantSeq, n_max: usize, x: &Rational) -> WaveVector {
    let values = wave_polynomials(c, n_max)
        .iter()
        .map(|q| poly::eval(q, x))
        .collect();
    WaveVector {
        x: x.clone(),
        values,
    }
}

/// Classic fourth-order Runge–Kutta from `0` to `x` in `steps` equal steps.
pub fn evolve_numeric(c: &CumulantSeq, n_max: usize, x: f64, steps: usize) -> Vec<f64> {
    let h = hamiltonian_of(c, n_max.max(1)).to_f64();
    let field = |q: &[f64]| -> Vec<f64> {
        (0..q.len())
            .map(|n| (1..=n).map(|k| h[k] * q[n - k]).sum())
            .collect()
    };
    let mut q = vec![0.0; n_max + 1];
    q[0] = 1.0;
    if steps == 0 || x == 0.0 {
        return q;
    }
    let dt = x / steps as f64;
    let axpy = |base: &[f64], dir: &[f64], s: f64| -> Vec<f64> {
        base.iter().zip(dir).map(|(b, d)| b + s * d).collect()
    };
    for _ in 0..steps {
        let k1 = field(&q);
        let k2 = field(&axpy(&q, &k1, dt / 2.0));
        let k3 = field(&axpy(&q, &k2, dt / 2.0));
        let k4 = field(&axpy(&q, &k3, dt));
        for i in 0..q.len() {
            q[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    q
}

/// Checks `p_n'(x) = sum_{k=1}^{n} [n!/(n-k)!] h_k p_{n-k}(x)` coefficientwise
/// for every row of `t`.
pub fn verify_schrodinger(t: &SequenceTriangle, c: &CumulantSeq) -> bool {
    schrodinger_defect(t, c).is_none()
}

/// First row at which the polynomial identity fails.
pub fn schrodinger_defect(t: &SequenceTriangle, c: &CumulantSeq) -> Option<usize> {
    let n_max = t.n_max();
    let h = hamiltonian_of(c, n_max.max(1));
    (0..=n_max).find(|&n| {
        let lhs = poly::trimmed(poly::derivative(&t.rows()[n]));
        let mut rhs = Coeffs::new();
        for k in 1..=n {
            let weight = Rational::from_integer(falling_factorial(n, k)) * h.get(k);
            if !weight.is_zero() {
                poly::add_into(&mut rhs, &poly::scale(&t.rows()[n - k], &weight));
            }
        }
        lhs != poly::trimmed(rhs)
    })
}

/// `d/dx (h ★ Q) = h ★ (d/dx Q)` for polynomial components `Q`.
pub fn intertwines(h: &Hamiltonian, q: &[Coeffs]) -> bool {
    let derived: Vec<Coeffs> = q.iter().map(|p| poly::derivative(p)).collect();
    let lhs: Vec<Coeffs> = convolve_polynomials(h, q)
        .iter()
        .map(|p| poly::trimmed(poly::derivative(p)))
        .collect();
    let rhs: Vec<Coeffs> = convolve_polynomials(h, &derived)
        .into_iter()
        .map(poly::trimmed)
        .collect();
    lhs == rhs
}

/// `q_n(x) = p_n(x) / n!` as polynomials, from a coefficient triangle.
pub fn scaled_rows(t: &SequenceTriangle) -> Vec<Coeffs> {
    t.rows()
        .iter()
        .enumerate()
        .map(|(n, row)| {
            let inv = Rational::from_integer(factorial(n));
            row.iter().map(|a| a / &inv).collect()
        })
        .collect()
}
