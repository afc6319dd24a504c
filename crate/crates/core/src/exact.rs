//! Exact construction of coefficient triangles from cumulants, and the
//! verifiers for the binomial identity and its coefficient form.
//!
//! Two independent constructions are provided:
//!
//! * [`from_cumulants`] solves the coefficient identity
//!   `C(i+j, i) a_{n,i+j} = sum_m C(n, m) a_{m,i} a_{n-m,j}` row by row, using
//!   the instance `i = 1, j = k - 1`, which gives
//!   `a_{n,k} = (1/k) sum_{m=1}^{n} C(n, m) c_m a_{n-m,k-1}`.
//! * [`from_generating_series`] expands `exp(x f(t))` with
//!   `f(t) = sum c_k t^k / k!`, so that `a_{n,k} = n!/k! [t^n] f(t)^k`.

use crate::poly;
use crate::rational::{factorial, BinomialTable, Rational};
use crate::sequence::{CumulantSeq, SequenceTriangle};

/// Builds rows `0..=n_max` by the coefficient recursion. Cumulants beyond the
/// stored length are taken as zero.
pub fn from_cumulants(c: &CumulantSeq, n_max: usize) -> SequenceTriangle {
    let binom = BinomialTable::new(n_max);
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n_max + 1);
    rows.push(vec![Rational::one()]);
    for n in 1..=n_max {
        let mut row = vec![Rational::zero(); n + 1];
        // weights C(n, m) c_m are shared by every k in this row
        let weights: Vec<Rational> = (0..=n)
            .map(|m| c.get(m) * Rational::from_integer(binom.get(n, m)))
            .collect();
        row[1] = c.get(n);
        for k in 2..=n {
            let mut acc = Rational::zero();
            for m in 1..=n + 1 - k {
                let prev = &rows[n - m];
                if k - 1 < prev.len() && !weights[m].is_zero() && !prev[k - 1].is_zero() {
                    acc += &weights[m] * &prev[k - 1];
                }
            }
            row[k] = acc / Rational::from_integer(k as i64);
        }
        rows.push(row);
    }
    SequenceTriangle::from_rows(rows).expect("rows are built with the right shape")
}

/// Builds rows `0..=n_max` from `n! [t^n] exp(x f(t))`, via powers of `f`.
pub fn from_generating_series(c: &CumulantSeq, n_max: usize) -> SequenceTriangle {
    let order = n_max + 1;
    let f = c.generating_series(order);
    let mut rows: Vec<Vec<Rational>> = (0..=n_max).map(|n| vec![Rational::zero(); n + 1]).collect();
    // power = f^k mod t^{n_max+1}
    let mut power = vec![Rational::zero(); order];
    power[0] = Rational::one();
    for k in 0..=n_max {
        if k > 0 {
            power = poly::mul_trunc(&power, &f, order);
        }
        let k_fact = Rational::from_integer(factorial(k));
        for n in k..=n_max {
            if !power[n].is_zero() {
                rows[n][k] = &power[n] * Rational::from_integer(factorial(n)) / &k_fact;
            }
        }
    }
    SequenceTriangle::from_rows(rows).expect("rows are built with the right shape")
}

/// Column `k = 1`, i.e. `c_n = a_{n,1} = p_n'(0)` for `n = 1..=n_max`.
///
/// A triangle with only row 0 yields the single cumulant `c_1 = 0`.
pub fn cumulants_of(t: &SequenceTriangle) -> CumulantSeq {
    let values: Vec<Rational> = (1..=t.n_max().max(1))
        .map(|n| {
            if n <= t.n_max() {
                t.coeff(n, 1).clone()
            } else {
                Rational::zero()
            }
        })
        .collect();
    CumulantSeq::new(values).expect("at least one cumulant")
}

/// Checks `p_n(x + y) = sum_k C(n, k) p_k(x) p_{n-k}(y)` for every row.
pub fn verify_binomial(t: &SequenceTriangle, x: &Rational, y: &Rational) -> bool {
    binomial_defect(t, x, y).is_none()
}

/// First row `n` at which the binomial identity fails at `(x, y)`.
pub fn binomial_defect(t: &SequenceTriangle, x: &Rational, y: &Rational) -> Option<usize> {
    let n_max = t.n_max();
    let binom = BinomialTable::new(n_max);
    let sum = x + y;
    let px: Vec<Rational> = (0..=n_max).map(|n| poly::eval(&t.rows()[n], x)).collect();
    let py: Vec<Rational> = (0..=n_max).map(|n| poly::eval(&t.rows()[n], y)).collect();
    (0..=n_max).find(|&n| {
        let lhs = poly::eval(&t.rows()[n], &sum);
        let rhs: Rational = (0..=n)
            .map(|k| Rational::from_integer(binom.get(n, k)) * &px[k] * &py[n - k])
            .sum();
        lhs != rhs
    })
}

/// Checks the full coefficient identity
/// `C(i+j, i) a_{n,i+j} = sum_k C(n, k) a_{k,i} a_{n-k,j}` for all
/// `i, j >= 0` with `i + j <= n <= n_max`.
pub fn verify_recurrence(t: &SequenceTriangle) -> bool {
    recurrence_defect(t).is_none()
}

/// First `(n, i, j)` violating the coefficient identity.
pub fn recurrence_defect(t: &SequenceTriangle) -> Option<(usize, usize, usize)> {
    let n_max = t.n_max();
    let binom = BinomialTable::new(n_max);
    for n in 0..=n_max {
        for i in 0..=n {
            for j in 0..=n - i {
                let lhs = Rational::from_integer(binom.get(i + j, i)) * t.coeff(n, i + j);
                let rhs: Rational = (0..=n)
                    .map(|k| {
                        Rational::from_integer(binom.get(n, k)) * t.coeff(k, i) * t.coeff(n - k, j)
                    })
                    .sum();
                if lhs != rhs {
                    return Some((n, i, j));
                }
            }
        }
    }
    None
}

/// Checks `p_n(0) = δ_{n0}`, i.e. `a_{n,0} = δ_{n0}`.
pub fn verify_origin(t: &SequenceTriangle) -> bool {
    t.rows().iter().enumerate().all(|(n, row)| {
        if n == 0 {
            row[0].is_one()
        } else {
            row[0].is_zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    fn cumulants(v: &[i64]) -> CumulantSeq {
        CumulantSeq::from_integers(v).unwrap()
    }

    #[test]
    fn monomials_from_unit_cumulant() {
        let t = from_cumulants(&cumulants(&[1, 0, 0]), 3);
        assert_eq!(
            t.rows(),
            &[
                ints(&[1]),
                ints(&[0, 1]),
                ints(&[0, 0, 1]),
                ints(&[0, 0, 0, 1])
            ]
        );
    }

    #[test]
    fn rising_and_falling_factorials() {
        // x(x+1)(x+2) = 2x + 3x^2 + x^3
        let rising = from_cumulants(&cumulants(&[1, 1, 2]), 3);
        assert_eq!(rising.row(3).unwrap(), ints(&[0, 2, 3, 1]).as_slice());
        // x(x-1)(x-2) = 2x - 3x^2 + x^3
        let falling = from_cumulants(&cumulants(&[1, -1, 2]), 3);
        assert_eq!(falling.row(3).unwrap(), ints(&[0, 2, -3, 1]).as_slice());
    }

    #[test]
    fn generating_series_examples() {
        let t = from_generating_series(&cumulants(&[1]), 5);
        for n in 0..=5 {
            for k in 0..=n {
                let expected = if k == n { r("1") } else { r("0") };
                assert_eq!(t.coeff(n, k), &expected);
            }
        }
        // f(t) = t/(1-t): 2! [t^2] exp(x t/(1-t)) = x^2 + 2x
        let lag = from_generating_series(&cumulants(&[1, 2, 6]), 2);
        assert_eq!(lag.row(2).unwrap(), ints(&[0, 2, 1]).as_slice());

        let c = cumulants(&[1, -1, 2, -6]);
        assert_eq!(from_generating_series(&c, 4), from_cumulants(&c, 4));
    }

    #[test]
    fn cumulants_read_back() {
        let mono = from_cumulants(&cumulants(&[1]), 3);
        assert_eq!(cumulants_of(&mono).values(), ints(&[1, 0, 0]).as_slice());
        let rising = from_cumulants(&cumulants(&[1, 1, 2, 6]), 4);
        assert_eq!(
            cumulants_of(&rising).values(),
            ints(&[1, 1, 2, 6]).as_slice()
        );
        // Abel a = 1: A_n(x) = x (x - n)^{n-1}, rows written out by hand
        let abel = SequenceTriangle::from_rows(vec![
            ints(&[1]),
            ints(&[0, 1]),
            ints(&[0, -2, 1]),
            ints(&[0, 9, -6, 1]),
        ])
        .unwrap();
        assert_eq!(cumulants_of(&abel).values(), ints(&[1, -2, 9]).as_slice());
    }

    #[test]
    fn binomial_identity_checks() {
        let mono = from_cumulants(&cumulants(&[1]), 6);
        assert!(verify_binomial(&mono, &r("2"), &r("3")));
        let t = from_cumulants(&cumulants(&[3, -1, 2, 5]), 7);
        assert!(verify_binomial(&t, &r("-2/3"), &r("5/7")));

        let row2_tampered = from_cumulants(&cumulants(&[1, 2]), 2)
            .with_entry(2, 0, r("1"))
            .unwrap();
        assert_eq!(row2_tampered.row(2).unwrap(), ints(&[1, 2, 1]).as_slice());
        assert!(!verify_binomial(&row2_tampered, &r("1"), &r("1")));
        assert!(!verify_origin(&row2_tampered));
    }

    #[test]
    fn recurrence_checks() {
        let mono = from_cumulants(&cumulants(&[1]), 6);
        assert!(verify_recurrence(&mono));
        // closed form x^2 - 2x ... from the signed Laguerre family
        let laguerre = SequenceTriangle::from_rows(vec![
            ints(&[1]),
            ints(&[0, -1]),
            ints(&[0, -2, 1]),
            ints(&[0, -6, 6, -1]),
        ])
        .unwrap();
        assert!(verify_recurrence(&laguerre));

        let broken = laguerre.with_entry(3, 2, r("7")).unwrap();
        assert_eq!(recurrence_defect(&broken), Some((3, 1, 1)));
    }

    #[test]
    fn zero_linear_cumulant_is_flagged() {
        let t = from_cumulants(&cumulants(&[0, 1]), 6);
        assert!(t.degree_deficient());
        assert!(verify_recurrence(&t));
        assert!(verify_binomial(&t, &r("1/2"), &r("3")));
        // p_4 = 3 x^2 (pairs of the quadratic cumulant)
        assert_eq!(t.row(4).unwrap(), ints(&[0, 0, 3, 0, 0]).as_slice());
        assert!(!from_cumulants(&cumulants(&[1]), 2).degree_deficient());
    }

    #[test]
    fn leading_coefficient_is_power_of_first_cumulant() {
        let c = CumulantSeq::new(vec![r("-2/3"), r("5"), r("1/7")]).unwrap();
        let t = from_cumulants(&c, 8);
        for n in 0..=8 {
            assert_eq!(t.coeff(n, n), &r("-2/3").pow(n as u32));
        }
    }

    #[test]
    fn single_row_triangle() {
        let t = from_cumulants(&cumulants(&[4]), 0);
        assert_eq!(t.n_max(), 0);
        assert_eq!(cumulants_of(&t).values(), &[r("0")]);
        assert!(verify_recurrence(&t) && verify_origin(&t));
    }
}
