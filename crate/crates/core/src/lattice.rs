//! Discrete path sums.
//!
//! A monotone path `k(t)` from `0` to `n` over `N` time slices is encoded by
//! its jump sizes `(k_1, ..., k_N)`, a weak composition of `n`. The token
//! `q_n(x) = p_n(x)/n!` splits exactly over such paths,
//!
//! ```text
//! q_n(x) = sum_{k_1+...+k_N = n} q_{k_1}(x/N) ... q_{k_N}(x/N),
//! ```
//!
//! and replacing each factor by its first-order Taylor term
//! `δ_{k0} + (c_k/k!) (x/N)` gives the discretized path integral, which tends
//! to `q_n(x)` as `N → ∞` with `O(1/N)` error.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact;
use crate::poly;
use crate::rational::{factorial, Rational};
use crate::sequence::{CumulantSeq, PathComposition, SequenceTriangle};

/// Enumeration cap used when none is configured.
pub const DEFAULT_MAX_PATHS: u64 = 10_000_000;

/// Number of weak compositions of `n` into `steps` parts, `C(n + N - 1, N - 1)`.
pub fn path_count(n: usize, steps: usize) -> BigInt {
    if steps == 0 {
        return BigInt::from(u8::from(n == 0));
    }
    // C(n + N - 1, n) built incrementally stays integral at each step
    (1..=n).fold(BigInt::from(1), |acc, i| acc * (steps - 1 + i) / i)
}

fn check_cap(n: usize, steps: usize, cap: u64) -> Result<()> {
    let count = path_count(n, steps);
    if count.to_u64().is_none_or(|c| c > cap) {
        return Err(Error::TooManyPaths {
            count: count.to_string(),
            cap,
        });
    }
    Ok(())
}

fn require_steps(steps: usize) -> Result<()> {
    if steps == 0 {
        return Err(Error::InvalidConfig(
            "the number of time slices must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Visits every weak composition of `n` into `steps` parts in lexicographic order.
fn for_each_composition(n: usize, steps: usize, mut visit: impl FnMut(&[u32])) {
    let mut jumps = vec![0u32; steps];
    fn fill(pos: usize, left: usize, jumps: &mut [u32], visit: &mut dyn FnMut(&[u32])) {
        if pos + 1 == jumps.len() {
            jumps[pos] = left as u32;
            visit(jumps);
            return;
        }
        for k in 0..=left {
            jumps[pos] = k as u32;
            fill(pos + 1, left - k, jumps, visit);
        }
    }
    fill(0, n, &mut jumps, &mut visit);
}

/// All monotone paths reaching `n` in `steps` slices, lexicographically ordered.
pub fn enumerate_paths(n: usize, steps: usize, cap: u64) -> Result<Vec<PathComposition>> {
    require_steps(steps)?;
    check_cap(n, steps, cap)?;
    let mut out = Vec::new();
    for_each_composition(n, steps, |jumps| {
        out.push(PathComposition::new(jumps.to_vec()))
    });
    Ok(out)
}

/// Sum over paths of products of per-slice weights `weights[k_j]`.
fn path_sum(weights: &[Rational], n: usize, steps: usize) -> Rational {
    let mut total = Rational::zero();
    for_each_composition(n, steps, |jumps| {
        let mut product = Rational::one();
        for &k in jumps {
            let w = &weights[k as usize];
            if w.is_zero() {
                return;
            }
            product *= w;
        }
        total += product;
    });
    total
}

/// `sum_{paths} prod_j q_{k_j}(x/N)`, which equals `q_n(x)` for every `N >= 1`.
pub fn split_exact(
    t: &SequenceTriangle,
    n: usize,
    x: &Rational,
    steps: usize,
    cap: u64,
) -> Result<Rational> {
    require_steps(steps)?;
    if n > t.n_max() {
        return Err(Error::IndexOutOfRange {
            index: n,
            max: t.n_max(),
        });
    }
    check_cap(n, steps, cap)?;
    let slice = x / Rational::from_integer(steps as i64);
    let weights = (0..=n)
        .map(|k| t.eval_scaled(k, &slice))
        .collect::<Result<Vec<_>>>()?;
    Ok(path_sum(&weights, n, steps))
}

/// `f_{<=n}(t) = sum_{k=1}^{n} c_k t^k / k!`.
fn truncated_cumulant_series(c: &CumulantSeq, n: usize) -> poly::Coeffs {
    c.generating_series(n + 1)
}

/// First-order discretized path integral
/// `n! [t^n] (1 + (x/N) f_{<=n}(t))^N`, exact.
pub fn pathint_approx(c: &CumulantSeq, n: usize, x: &Rational, steps: usize) -> Result<Rational> {
    require_steps(steps)?;
    let scale = x / Rational::from_integer(steps as i64);
    let mut step_factor = poly::scale(&truncated_cumulant_series(c, n), &scale);
    step_factor[0] = Rational::one();
    let power = poly::pow_trunc(&step_factor, steps as u64, n + 1);
    Ok(&power[n] * Rational::from_integer(factorial(n)))
}

/// Same quantity as [`pathint_approx`] summed literally over enumerated paths
/// with per-slice factors `δ_{k0} + (c_k/k!) (x/N)`. Only practical for small `n, N`.
pub fn pathint_approx_enumerated(
    c: &CumulantSeq,
    n: usize,
    x: &Rational,
    steps: usize,
    cap: u64,
) -> Result<Rational> {
    require_steps(steps)?;
    check_cap(n, steps, cap)?;
    let scale = x / Rational::from_integer(steps as i64);
    let weights: Vec<Rational> = (0..=n)
        .map(|k| {
            let delta = if k == 0 {
                Rational::one()
            } else {
                Rational::zero()
            };
            delta + c.get(k) / Rational::from_integer(factorial(k)) * &scale
        })
        .collect();
    Ok(path_sum(&weights, n, steps) * Rational::from_integer(factorial(n)))
}

/// The exponentiated slice factor: `n! [t^n] exp(x f_{<=n}(t))`, equal to `p_n(x)`.
pub fn pathint_exp(c: &CumulantSeq, n: usize, x: &Rational) -> Rational {
    let exponent = poly::scale(&truncated_cumulant_series(c, n), x);
    let series = poly::exp_trunc(&exponent, n + 1);
    &series[n] * Rational::from_integer(factorial(n))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub steps: usize,
    pub approx: Rational,
    /// `|pathint_approx(N) - p_n(x)|`.
    pub error: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceTable {
    pub n: usize,
    pub x: Rational,
    /// Exact `p_n(x)`.
    pub reference: Rational,
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope of `ln error` against `ln N`; `None` unless at
    /// least two rows have nonzero error.
    pub slope: Option<f64>,
}

/// Tabulates the first-order error against the exact value for each `N`.
pub fn convergence_table(
    c: &CumulantSeq,
    n: usize,
    x: &Rational,
    steps_list: &[usize],
) -> Result<ConvergenceTable> {
    let reference = exact::from_cumulants(c, n).eval(n, x)?;
    let rows = steps_list
        .iter()
        .map(|&steps| {
            let approx = pathint_approx(c, n, x, steps)?;
            let error = (&approx - &reference).abs();
            Ok(ConvergenceRow {
                steps,
                approx,
                error,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|row| !row.error.is_zero())
        .map(|row| ((row.steps as f64).ln(), row.error.to_f64().ln()))
        .collect();
    Ok(ConvergenceTable {
        n,
        x: x.clone(),
        reference,
        rows,
        slope: loglog_slope(&points),
    })
}

/// Ordinary least-squares slope through `(ln N, ln error)` points.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let len = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / len;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> CumulantSeq {
        CumulantSeq::from_integers(v).unwrap()
    }

    #[test]
    fn small_enumerations() {
        let paths = enumerate_paths(2, 2, DEFAULT_MAX_PATHS).unwrap();
        let jumps: Vec<&[u32]> = paths.iter().map(|p| p.jumps()).collect();
        assert_eq!(jumps, vec![&[0, 2][..], &[1, 1], &[2, 0]]);
        let paths = enumerate_paths(0, 5, DEFAULT_MAX_PATHS).unwrap();
        assert_eq!(paths, vec![PathComposition::new(vec![0; 5])]);
        assert_eq!(enumerate_paths(3, 3, DEFAULT_MAX_PATHS).unwrap().len(), 10);
    }

    #[test]
    fn enumeration_respects_cap() {
        assert!(matches!(
            enumerate_paths(3, 3, 9),
            Err(Error::TooManyPaths { ref count, cap: 9 }) if count == "10"
        ));
        assert!(enumerate_paths(3, 3, 10).is_ok());
        assert!(matches!(
            enumerate_paths(2, 0, 10),
            Err(Error::InvalidConfig(_))
        ));
        // far beyond u64
        assert!(matches!(
            enumerate_paths(200, 200, DEFAULT_MAX_PATHS),
            Err(Error::TooManyPaths { .. })
        ));
    }

    #[test]
    fn counts_match_binomial() {
        for n in 0..=8 {
            for steps in 1..=8 {
                let listed = enumerate_paths(n, steps, DEFAULT_MAX_PATHS).unwrap();
                assert_eq!(BigInt::from(listed.len()), path_count(n, steps));
                assert!(listed.windows(2).all(|w| w[0] < w[1]));
                assert!(listed
                    .iter()
                    .all(|p| p.target() == n as u64 && p.steps() == steps));
            }
        }
    }

    #[test]
    fn splitting_examples() {
        let mono = exact::from_cumulants(&ints(&[1]), 3);
        assert_eq!(
            split_exact(&mono, 2, &r("1"), 2, DEFAULT_MAX_PATHS).unwrap(),
            r("1/2")
        );
        assert_eq!(
            split_exact(&mono, 0, &r("-4/5"), 7, DEFAULT_MAX_PATHS).unwrap(),
            r("1")
        );
        let falling = exact::from_cumulants(&ints(&[1, -1, 2]), 3);
        assert_eq!(
            split_exact(&falling, 3, &r("2"), 3, DEFAULT_MAX_PATHS).unwrap(),
            r("0")
        );
        assert!(split_exact(&falling, 4, &r("2"), 3, DEFAULT_MAX_PATHS).is_err());
    }

    #[test]
    fn first_order_examples() {
        let mono = ints(&[1]);
        assert_eq!(pathint_approx(&mono, 2, &r("1"), 10).unwrap(), r("9/10"));
        assert_eq!(
            pathint_approx(&ints(&[3, 5, -2]), 0, &r("7"), 4).unwrap(),
            r("1")
        );
        for steps in [1, 2, 7, 50] {
            let c = ints(&[-3, 5]);
            assert_eq!(pathint_approx(&c, 1, &r("2/3"), steps).unwrap(), r("-2"));
        }
    }

    #[test]
    fn first_order_matches_enumeration() {
        let c = CumulantSeq::new(vec![r("1/2"), r("-3"), r("4/7"), r("2")]).unwrap();
        for n in 0..=4 {
            for steps in 1..=5 {
                let x = r("-5/3");
                assert_eq!(
                    pathint_approx(&c, n, &x, steps).unwrap(),
                    pathint_approx_enumerated(&c, n, &x, steps, DEFAULT_MAX_PATHS).unwrap(),
                    "n={n} N={steps}"
                );
            }
        }
    }

    #[test]
    fn exponentiated_slices_are_exact() {
        assert_eq!(pathint_exp(&ints(&[1]), 3, &r("2")), r("8"));
        assert_eq!(pathint_exp(&ints(&[1, 1, 2]), 2, &r("1")), r("2"));
        assert_eq!(pathint_exp(&ints(&[1, -2, 9]), 2, &r("3")), r("3"));
    }

    #[test]
    fn convergence_for_monomials() {
        let table = convergence_table(&ints(&[1]), 2, &r("1"), &[2, 4, 8]).unwrap();
        let errors: Vec<Rational> = table.rows.iter().map(|row| row.error.clone()).collect();
        assert_eq!(errors, vec![r("1/2"), r("1/4"), r("1/8")]);
        assert!((table.slope.unwrap() + 1.0).abs() < 1e-12);

        let table = convergence_table(&ints(&[2, 7]), 1, &r("3"), &[2, 4, 8]).unwrap();
        assert!(table.rows.iter().all(|row| row.error.is_zero()));
        assert_eq!(table.slope, None);
    }

    #[test]
    fn falling_factorial_slope() {
        let steps: Vec<usize> = (3..=8).map(|e| 1 << e).collect();
        let table = convergence_table(&ints(&[1, -1, 2, -6]), 4, &r("1"), &steps).unwrap();
        let slope = table.slope.unwrap();
        assert!((-1.3..=-0.7).contains(&slope), "slope {slope}");
    }

    #[test]
    fn slope_fit() {
        let pts: Vec<(f64, f64)> = (1..5).map(|i| (i as f64, 3.0 - 2.0 * i as f64)).collect();
        assert!((loglog_slope(&pts).unwrap() + 2.0).abs() < 1e-12);
        assert_eq!(loglog_slope(&pts[..1]), None);
    }
}
