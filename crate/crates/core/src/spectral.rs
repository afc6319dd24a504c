//! Fourier side: the Hamiltonian `h(p) = sum_k (c_k / k!) e^{ipk}` and the
//! circle quadrature
//!
//! ```text
//! p_n(x) = n! / (2π) ∫_{-π}^{π} e^{-inp} e^{x h(p)} dp
//! ```
//!
//! discretized by the trapezoidal rule on `M` equispaced nodes
//! `p_j = -π + 2πj/M`. For a coefficient of a series with only nonnegative
//! frequencies, the rule is exact up to aliasing from modes `n + M, n + 2M, ...`,
//! so the estimate is refined by doubling `M`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dd::{self, Dd, DdComplex};
use crate::error::{Error, Result};
use crate::sequence::{CumulantSeq, Hamiltonian};

/// `h_k = c_k / k!` for `k = 0..=order`, exact.
pub fn hamiltonian_of(c: &CumulantSeq, order: usize) -> Hamiltonian {
    Hamiltonian::from_cumulants(c, order.max(1))
}

/// Truncated `sum_k h_k e^{ipk}` in floating point.
pub fn hamiltonian_eval(h: &Hamiltonian, p: f64) -> Complex64 {
    h.eval(p)
}

/// Returns `(h(p), f(e^{ip}))` under the same truncation `K` (the stored
/// length of `c`). The first is summed term by term from exact `h_k`; the
/// second evaluates the cumulant series `f(t) = sum c_k t^k / k!` by Horner
/// at `t = e^{ip}`.
pub fn hamiltonian_vs_cumulant_series(c: &CumulantSeq, p: f64) -> (Complex64, Complex64) {
    let order = c.len();
    let h = hamiltonian_of(c, order).eval(p);
    let t = Complex64::cis(p);
    let mut f = Complex64::new(0.0, 0.0);
    let mut k_fact = (1..=order).map(|k| k as f64).product::<f64>();
    for k in (1..=order).rev() {
        f = (f + c.get(k).to_f64() / k_fact) * t;
        k_fact /= k as f64;
    }
    (h, f)
}

/// Quadrature controls.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureConfig {
    /// Starting node count; must be a power of two at least `2(n + 1)`.
    /// `None` selects the smallest power of two `>= 4(n + 1)`.
    pub initial_nodes: Option<usize>,
    /// Relative tolerance between successive estimates.
    pub tol: f64,
    pub max_doublings: u32,
    /// Radius of the integration circle in the `t = e^{ip}` plane.
    pub contour: Contour,
}

/// Which circle `|t| = r` carries the quadrature nodes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Contour {
    /// The unit circle, `t = e^{ip}`.
    Unit,
    /// A fixed radius `r > 0`, nodes `t = r e^{ip}`.
    Radius(f64),
    /// Radius chosen to minimize the cancellation bound
    /// `max_p |e^{x f(r e^{ip})}| r^{-n}` over a geometric grid.
    Auto,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            initial_nodes: None,
            tol: 1e-12,
            max_doublings: 12,
            contour: Contour::Auto,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tol(tol: f64) -> Self {
        QuadratureConfig {
            tol,
            ..Default::default()
        }
    }

    fn starting_nodes(&self, n: usize) -> Result<usize> {
        match self.initial_nodes {
            None => Ok((4 * (n + 1)).next_power_of_two()),
            Some(m) if !m.is_power_of_two() => Err(Error::InvalidConfig(format!(
                "quadrature node count {m} is not a power of two"
            ))),
            Some(m) if m < 2 * (n + 1) => Err(Error::InvalidConfig(format!(
                "quadrature node count {m} is below 2(n+1) = {}",
                2 * (n + 1)
            ))),
            Some(m) => Ok(m),
        }
    }
}

/// Result of [`spectral_eval`].
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralEstimate {
    /// Converged `p_n(x)`; the imaginary part is quadrature residue.
    pub value: Complex64,
    /// Estimate at the previous node count.
    pub previous: Complex64,
    /// Node count of the final estimate.
    pub nodes: usize,
    pub doublings: u32,
    pub radius: f64,
}

/// Hamiltonian coefficients `h_0..h_n`, the `K = n` truncation.
fn modes(c: &CumulantSeq, n: usize) -> Vec<Dd> {
    hamiltonian_of(c, n)
        .coeffs()
        .iter()
        .map(Dd::from_rational)
        .collect()
}

fn horner(coeffs: &[Dd], t: DdComplex) -> DdComplex {
    coeffs.iter().rev().fold(DdComplex::ZERO, |acc, &h| {
        let mut next = acc * t;
        next.re = next.re + h;
        next
    })
}

fn horner_f64(coeffs: &[Dd], t: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, h| acc * t + h.to_f64())
}

/// One trapezoidal estimate of `n! [t^n] exp(x f(t))` on `|t| = radius` with
/// `nodes` points, accumulated in double-double.
fn coefficient_estimate(h: &[Dd], n: usize, x: f64, nodes: usize, radius: f64) -> Complex64 {
    let x = Dd::from_f64(x);
    let r = Dd::from_f64(radius);
    let mut sum = DdComplex::ZERO;
    for j in 0..nodes {
        // exact in binary since nodes is a power of two
        let frac = 2.0 * j as f64 / nodes as f64 - 1.0;
        let p = dd::PI.mul_f64(frac);
        let t = DdComplex::polar(r, p);
        let mut z = horner(h, t).scale(x);
        z.im = z.im - p.mul_f64(n as f64);
        sum = sum + z.exp();
    }
    let mut scale = Dd::ONE / Dd::from_f64(nodes as f64);
    for k in 1..=n {
        scale = scale.mul_f64(k as f64) / r;
    }
    sum.scale(scale).to_c64()
}

/// Log of the rounding-error scale of the rule on `|t| = radius`, relative to
/// the coefficient scale `r^{-n}`.
fn cancellation_bound(h: &[Dd], n: usize, x: f64, radius: f64, probes: usize) -> f64 {
    let step = 2.0 * PI / probes as f64;
    // exp(z) inherits an absolute phase error of about eps |z|
    let peak = (0..probes)
        .map(|j| {
            let z = x * horner_f64(h, Complex64::from_polar(radius, step * j as f64));
            z.re + z.norm().ln_1p()
        })
        .fold(f64::NEG_INFINITY, f64::max);
    peak - n as f64 * radius.ln()
}

fn choose_radius(h: &[Dd], n: usize, x: f64) -> f64 {
    if n == 0 || x == 0.0 {
        return 1.0;
    }
    let probes = (8 * (n + 1)).next_power_of_two();
    // log-spaced radii from 1/64 to 64, preferring the unit circle on ties
    (-48..=48)
        .map(|i| 2f64.powf(i as f64 / 8.0))
        .map(|r| (r, cancellation_bound(h, n, x, r, probes)))
        .fold(
            (1.0, cancellation_bound(h, n, x, 1.0, probes)),
            |best, cand| {
                if cand.1 < best.1 - 1e-9 {
                    cand
                } else {
                    best
                }
            },
        )
        .0
}

/// `p_n(x)` by circle quadrature with automatic node doubling.
///
/// The Hamiltonian is truncated at `K = n`: modes above `n` cannot reach the
/// `n`-th coefficient of `exp(x h)`, so only aliasing remains, which doubling
/// removes.
pub fn spectral_eval(
    c: &CumulantSeq,
    n: usize,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<SpectralEstimate> {
    if cfg.tol.is_nan() || cfg.tol <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "tolerance {} must be positive",
            cfg.tol
        )));
    }
    let h = modes(c, n);
    let radius = match cfg.contour {
        Contour::Unit => 1.0,
        Contour::Radius(r) if r > 0.0 && r.is_finite() => r,
        Contour::Radius(r) => {
            return Err(Error::InvalidConfig(format!(
                "contour radius {r} must be positive"
            )))
        }
        Contour::Auto => choose_radius(&h, n, x),
    };
    let mut nodes = cfg.starting_nodes(n)?;
    let mut previous = coefficient_estimate(&h, n, x, nodes, radius);
    let mut before = previous;
    for doubling in 1..=cfg.max_doublings {
        nodes *= 2;
        let value = coefficient_estimate(&h, n, x, nodes, radius);
        if (value - previous).norm() < cfg.tol * value.norm().max(1.0) {
            return Ok(SpectralEstimate {
                value,
                previous,
                nodes,
                doublings: doubling,
                radius,
            });
        }
        before = previous;
        previous = value;
    }
    Err(Error::NoConvergence {
        nodes,
        doublings: cfg.max_doublings,
        last: previous.to_string(),
        previous: before.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn ints(v: &[i64]) -> CumulantSeq {
        CumulantSeq::from_integers(v).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn hamiltonian_coefficients() {
        let h = hamiltonian_of(&ints(&[1]), 1);
        assert_eq!(h.coeffs(), &[Rational::zero(), Rational::one()]);
        let rising = hamiltonian_of(&ints(&[1, 1, 2, 6, 24]), 5);
        for k in 1..=5 {
            assert_eq!(rising.get(k), Rational::new(1, k as i64).unwrap());
        }
        let h = hamiltonian_of(&ints(&[2, 4]), 2);
        assert_eq!(
            h.coeffs(),
            &[Rational::zero(), Rational::from(2), Rational::from(2)]
        );
    }

    #[test]
    fn hamiltonian_evaluation() {
        let h = hamiltonian_of(&ints(&[1]), 1);
        assert!(close(
            hamiltonian_eval(&h, 0.0),
            Complex64::new(1.0, 0.0),
            1e-15
        ));
        assert!(close(
            hamiltonian_eval(&h, PI),
            Complex64::new(-1.0, 0.0),
            1e-15
        ));
        let harmonic = hamiltonian_of(&ints(&[1, 1, 2]), 3);
        let v = hamiltonian_eval(&harmonic, 0.0);
        assert!(close(v, Complex64::new(1.0 + 0.5 + 1.0 / 3.0, 0.0), 1e-14));
    }

    #[test]
    fn hamiltonian_matches_cumulant_series() {
        let (h, f) = hamiltonian_vs_cumulant_series(&ints(&[1]), PI / 2.0);
        assert!(
            close(h, Complex64::new(0.0, 1.0), 1e-15) && close(f, Complex64::new(0.0, 1.0), 1e-15)
        );
        let (h, f) = hamiltonian_vs_cumulant_series(&ints(&[1, -1, 2]), 0.0);
        // 1 - 1/2 + 2/6
        assert!(close(h, f, 1e-15) && close(h, Complex64::new(5.0 / 6.0, 0.0), 1e-15));
        let (h, f) = hamiltonian_vs_cumulant_series(&ints(&[1, 1, 2, 6]), 1.0);
        assert!(close(h, f, 1e-12));
    }

    #[test]
    fn monomial_quadrature() {
        let est = spectral_eval(&ints(&[1]), 2, 1.0, &QuadratureConfig::with_tol(1e-10)).unwrap();
        assert!((est.value.re - 1.0).abs() < 1e-9, "{est:?}");
        assert!(est.value.im.abs() < 1e-10);
        let est = spectral_eval(&ints(&[1]), 5, 2.0, &QuadratureConfig::with_tol(1e-10)).unwrap();
        assert!((est.value.re - 32.0).abs() < 1e-9, "{est:?}");
    }

    #[test]
    fn zeroth_mode_is_one() {
        for c in [ints(&[1]), ints(&[1, 1, 2]), ints(&[3, -5, 7])] {
            for x in [-2.0, 0.0, 1.5] {
                let est = spectral_eval(&c, 0, x, &QuadratureConfig::default()).unwrap();
                assert!(close(est.value, Complex64::new(1.0, 0.0), 1e-12), "{est:?}");
            }
        }
    }

    #[test]
    fn laguerre_type_quadrature() {
        let c = ints(&[1, 2, 6]);
        let est = spectral_eval(&c, 2, 1.0, &QuadratureConfig::with_tol(1e-10)).unwrap();
        assert!((est.value.re - 3.0).abs() < 1e-9, "{est:?}");
    }

    #[test]
    fn radius_choice_preserves_value() {
        let c = ints(&[1, -2, 9, -64]);
        let exact = 2.0 * (2.0f64 - 4.0).powi(3); // A_4(2) with a = 1
        for contour in [Contour::Unit, Contour::Radius(0.25), Contour::Auto] {
            let cfg = QuadratureConfig {
                contour,
                ..QuadratureConfig::with_tol(1e-12)
            };
            let est = spectral_eval(&c, 4, 2.0, &cfg).unwrap();
            assert!(
                (est.value.re - exact).abs() < 1e-8 * exact.abs(),
                "{contour:?}: {est:?}"
            );
        }
    }

    #[test]
    fn config_validation() {
        let c = ints(&[1]);
        let cfg = QuadratureConfig {
            initial_nodes: Some(12),
            ..Default::default()
        };
        assert!(matches!(
            spectral_eval(&c, 2, 1.0, &cfg),
            Err(Error::InvalidConfig(_))
        ));
        let cfg = QuadratureConfig {
            initial_nodes: Some(4),
            ..Default::default()
        };
        assert!(matches!(
            spectral_eval(&c, 2, 1.0, &cfg),
            Err(Error::InvalidConfig(_))
        ));
        let cfg = QuadratureConfig {
            initial_nodes: Some(8),
            ..Default::default()
        };
        assert!(spectral_eval(&c, 2, 1.0, &cfg).is_ok());
    }

    #[test]
    fn non_convergence_reports_estimates() {
        let cfg = QuadratureConfig {
            tol: 1e-300,
            max_doublings: 2,
            ..Default::default()
        };
        match spectral_eval(&ints(&[1, 1, 2]), 3, 1.5, &cfg) {
            Err(Error::NoConvergence {
                doublings: 2,
                nodes,
                ..
            }) => assert_eq!(nodes, 64),
            other => panic!("unexpected {other:?}"),
        }
    }
}
