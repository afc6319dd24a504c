//! Closed forms of the classic binomial-type families, used as ground truth.
//!
//! | name             | `p_n(x)`                                   | `c_k`                  |
//! |------------------|--------------------------------------------|------------------------|
//! | `monomial`       | `x^n`                                      | `δ_{k1}`               |
//! | `rising`         | `x(x+1)...(x+n-1)`                         | `(k-1)!`               |
//! | `falling`        | `x(x-1)...(x-n+1)`                         | `(-1)^{k-1} (k-1)!`    |
//! | `abel` (`a`)     | `x(x-an)^{n-1}`                            | `(-ak)^{k-1}`          |
//! | `laguerre_plus`  | `sum_k n!/k! C(n-1,k-1) x^k`               | `k!`                   |
//! | `laguerre_paper` | `sum_k n!/k! C(n-1,k-1) (-x)^k`            | `-k!`                  |
//!
//! The cumulants are derived from the polynomial definitions. The classic
//! published list of Hamiltonians for these families differs in two places:
//! it gives `h_k = (-1)^k / k` for the falling factorial (the definition
//! yields `(-1)^{k-1} / k`), and `h_k = 1` for the signed Laguerre polynomials
//! (which generates `laguerre_plus`; the signed family needs `h_k = -1`).
//! [`CatalogEntry::published_hamiltonian`] reproduces that list verbatim so
//! the discrepancies stay visible. For Abel polynomials the list reads
//! `(ak)^{k-1}/k!`, which matches the definition after `a ↦ -a`; the
//! published form is evaluated with that mapping applied.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::evolution;
use crate::exact;
use crate::lattice;
use crate::poly;
use crate::rational::{factorial, BinomialTable, Rational};
use crate::sequence::{CumulantSeq, Hamiltonian, SequenceTriangle};
use crate::spectral::{self, Contour, QuadratureConfig};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Monomial,
    Rising,
    Falling,
    Abel { a: Rational },
    LaguerrePlus,
    LaguerrePaper,
}

/// Every family name accepted by [`catalog_get`].
pub const FAMILY_NAMES: [&str; 6] = [
    "monomial",
    "rising",
    "falling",
    "abel",
    "laguerre_plus",
    "laguerre_paper",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    family: Family,
}

/// Looks up a family by name. `abel` requires the parameter `a`; the other
/// families take none.
pub fn catalog_get(name: &str, params: &[(String, Rational)]) -> Result<CatalogEntry> {
    let family = match name {
        "monomial" => Family::Monomial,
        "rising" => Family::Rising,
        "falling" => Family::Falling,
        "laguerre_plus" => Family::LaguerrePlus,
        "laguerre_paper" => Family::LaguerrePaper,
        "abel" => {
            let a = params
                .iter()
                .find(|(k, _)| k == "a")
                .map(|(_, v)| v.clone())
                .ok_or_else(|| Error::MissingParameter {
                    family: name.into(),
                    param: "a".into(),
                })?;
            if let Some((k, _)) = params.iter().find(|(k, _)| k != "a") {
                return Err(Error::UnexpectedParameter {
                    family: name.into(),
                    param: k.clone(),
                });
            }
            Family::Abel { a }
        }
        other => return Err(Error::UnknownFamily(other.into())),
    };
    if !matches!(family, Family::Abel { .. }) {
        if let Some((k, _)) = params.first() {
            return Err(Error::UnexpectedParameter {
                family: name.into(),
                param: k.clone(),
            });
        }
    }
    Ok(CatalogEntry { family })
}

impl CatalogEntry {
    pub fn new(family: Family) -> Self {
        CatalogEntry { family }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn name(&self) -> &'static str {
        match self.family {
            Family::Monomial => "monomial",
            Family::Rising => "rising",
            Family::Falling => "falling",
            Family::Abel { .. } => "abel",
            Family::LaguerrePlus => "laguerre_plus",
            Family::LaguerrePaper => "laguerre_paper",
        }
    }

    pub fn params(&self) -> Vec<(String, Rational)> {
        match &self.family {
            Family::Abel { a } => vec![("a".to_owned(), a.clone())],
            _ => Vec::new(),
        }
    }

    /// Row `n` of the closed form, `a_{n,0}..a_{n,n}`.
    pub fn closed_form_row(&self, n: usize) -> Vec<Rational> {
        let unit = |k: usize| -> Vec<Rational> {
            let mut row = vec![Rational::zero(); n + 1];
            row[k] = Rational::one();
            row
        };
        if n == 0 {
            return unit(0);
        }
        let int = |v: i64| Rational::from_integer(v);
        match &self.family {
            Family::Monomial => unit(n),
            Family::Rising | Family::Falling => {
                let sign = if self.family == Family::Rising { 1 } else { -1 };
                (0..n as i64).fold(vec![Rational::one()], |acc, j| {
                    poly::mul(&acc, &[int(sign * j), Rational::one()])
                })
            }
            Family::Abel { a } => {
                let binom = BinomialTable::new(n);
                let shift = -(a * int(n as i64));
                let mut row = vec![Rational::zero(); n + 1];
                for k in 1..=n {
                    row[k] =
                        Rational::from_integer(binom.get(n - 1, k - 1)) * shift.pow((n - k) as u32);
                }
                row
            }
            Family::LaguerrePlus | Family::LaguerrePaper => {
                let binom = BinomialTable::new(n);
                let signed = self.family == Family::LaguerrePaper;
                let mut row = vec![Rational::zero(); n + 1];
                for k in 1..=n {
                    let mag = factorial(n) / factorial(k) * binom.get(n - 1, k - 1);
                    let value = Rational::from_integer(mag);
                    row[k] = if signed && k % 2 == 1 { -value } else { value };
                }
                row
            }
        }
    }

    pub fn closed_form(&self, n_max: usize) -> SequenceTriangle {
        SequenceTriangle::from_rows((0..=n_max).map(|n| self.closed_form_row(n)).collect())
            .expect("closed-form rows have the right shape")
    }

    /// `c_k` from the family's cumulant rule (zero for `k = 0`).
    pub fn cumulant(&self, k: usize) -> Rational {
        if k == 0 {
            return Rational::zero();
        }
        let fact = |m: usize| Rational::from_integer(factorial(m));
        match &self.family {
            Family::Monomial => {
                if k == 1 {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }
            Family::Rising => fact(k - 1),
            Family::Falling => {
                let v = fact(k - 1);
                if k.is_multiple_of(2) {
                    -v
                } else {
                    v
                }
            }
            Family::Abel { a } => (-(a * Rational::from_integer(k as i64))).pow(k as u32 - 1),
            Family::LaguerrePlus => fact(k),
            Family::LaguerrePaper => -fact(k),
        }
    }

    /// `c_1..c_count`.
    pub fn cumulants(&self, count: usize) -> CumulantSeq {
        CumulantSeq::new((1..=count.max(1)).map(|k| self.cumulant(k)).collect()).expect("nonempty")
    }

    /// The Hamiltonian coefficients `h_1..h_order` exactly as published for
    /// this family (Abel with `a ↦ -a`).
    pub fn published_hamiltonian(&self, order: usize) -> Hamiltonian {
        let modes = (1..=order.max(1))
            .map(|k| {
                let kk = Rational::from_integer(k as i64);
                match &self.family {
                    Family::Monomial => {
                        if k == 1 {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    }
                    Family::Rising => Rational::one() / &kk,
                    Family::Falling => {
                        let v = Rational::one() / &kk;
                        if k % 2 == 1 {
                            -v
                        } else {
                            v
                        }
                    }
                    Family::Abel { a } => {
                        let published_a = -a;
                        (published_a * &kk).pow(k as u32 - 1) / Rational::from_integer(factorial(k))
                    }
                    Family::LaguerrePlus | Family::LaguerrePaper => Rational::one(),
                }
            })
            .collect();
        Hamiltonian::from_modes(modes)
    }

    /// Compares the published Hamiltonian with `c_k / k!` read off the closed form.
    pub fn compare_published_hamiltonian(&self, order: usize) -> HamiltonianComparison {
        let order = order.max(1);
        let derived =
            Hamiltonian::from_cumulants(&exact::cumulants_of(&self.closed_form(order)), order);
        let published = self.published_hamiltonian(order);
        let mismatch = (1..=order)
            .find(|&k| derived.get(k) != published.get(k))
            .map(|k| ModeMismatch {
                k,
                derived: derived.get(k),
                published: published.get(k),
            });
        HamiltonianComparison {
            family: self.name(),
            order,
            mismatch,
        }
    }

    /// A short human description, e.g. `abel(a=1)`.
    pub fn label(&self) -> String {
        match &self.family {
            Family::Abel { a } => format!("abel(a={a})"),
            _ => self.name().to_owned(),
        }
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeMismatch {
    pub k: usize,
    /// `c_k / k!` from the polynomial definition.
    pub derived: Rational,
    pub published: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonianComparison {
    pub family: &'static str,
    pub order: usize,
    pub mismatch: Option<ModeMismatch>,
}

impl HamiltonianComparison {
    pub fn agrees(&self) -> bool {
        self.mismatch.is_none()
    }
}

impl fmt::Display for HamiltonianComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mismatch {
            None => write!(
                f,
                "{}: published Hamiltonian agrees with the polynomial definition up to mode {}",
                self.family, self.order
            ),
            Some(m) => write!(
                f,
                "{}: published Hamiltonian disagrees at mode k={}: definition gives h_k = {}, published h_k = {} (sign discrepancy)",
                self.family, m.k, m.derived, m.published
            ),
        }
    }
}

/// One line of a [`SelftestReport`].
#[derive(Clone, Debug, PartialEq)]
pub struct EngineCheck {
    pub engine: &'static str,
    pub passed: bool,
    /// Largest absolute (relative, for `spectral`) deviation observed.
    pub max_deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SelftestReport {
    pub entry: String,
    pub n_max: usize,
    pub checks: Vec<EngineCheck>,
    pub published_hamiltonian: HamiltonianComparison,
}

impl SelftestReport {
    pub fn engines_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn all_pass(&self) -> bool {
        self.engines_pass() && self.published_hamiltonian.agrees()
    }
}

/// Rational sample points used by the self test.
pub fn sample_points() -> Vec<Rational> {
    ["-2", "-1", "1/2", "1", "2", "-7/3"]
        .iter()
        .map(|s| s.parse().expect("literal"))
        .collect()
}

/// Floating sample points for the spectral check.
pub const SPECTRAL_POINTS: [f64; 5] = [-2.0, -1.0, 0.5, 1.0, 2.0];

/// Relative tolerance for spectral agreement with the exact engine.
pub const SPECTRAL_RTOL: f64 = 1e-9;

/// Quadrature settings used by the self test.
pub fn selftest_quadrature() -> QuadratureConfig {
    QuadratureConfig {
        tol: 1e-13,
        max_doublings: 12,
        contour: Contour::Auto,
        ..Default::default()
    }
}

fn max_abs_diff(a: &[Rational], b: &[Rational]) -> f64 {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            (x - y).abs().to_f64()
        })
        .fold(0.0, f64::max)
}

fn triangle_deviation(a: &SequenceTriangle, b: &SequenceTriangle) -> f64 {
    a.rows()
        .iter()
        .zip(b.rows())
        .map(|(x, y)| max_abs_diff(x, y))
        .fold(0.0, f64::max)
}

fn exact_check(engine: &'static str, deviation: f64) -> EngineCheck {
    EngineCheck {
        engine,
        passed: deviation == 0.0,
        max_deviation: deviation,
    }
}

/// Runs every engine against the closed form up to `n_max`.
pub fn catalog_selftest(entry: &CatalogEntry, n_max: usize) -> SelftestReport {
    let closed = entry.closed_form(n_max);
    let rule = entry.cumulants(n_max.max(1));
    let mut checks = Vec::new();

    let read_back = exact::cumulants_of(&closed);
    checks.push(exact_check(
        "cumulants",
        max_abs_diff(read_back.values(), rule.values()),
    ));

    let recursive = exact::from_cumulants(&rule, n_max);
    checks.push(exact_check(
        "exact",
        triangle_deviation(&recursive, &closed),
    ));

    let generating = exact::from_generating_series(&rule, n_max);
    checks.push(exact_check(
        "genfun",
        triangle_deviation(&generating, &closed),
    ));

    let identities_hold = exact::verify_origin(&closed)
        && exact::verify_recurrence(&closed)
        && sample_points()
            .windows(2)
            .all(|w| exact::verify_binomial(&closed, &w[0], &w[1]));
    checks.push(EngineCheck {
        engine: "identities",
        passed: identities_hold,
        max_deviation: if identities_hold { 0.0 } else { f64::NAN },
    });

    let mut pathexp = 0.0f64;
    let mut evolve = 0.0f64;
    for x in sample_points() {
        let expected: Vec<Rational> = (0..=n_max)
            .map(|n| closed.eval(n, &x).expect("in range"))
            .collect();
        let via_exp: Vec<Rational> = (0..=n_max)
            .map(|n| lattice::pathint_exp(&rule, n, &x))
            .collect();
        pathexp = pathexp.max(max_abs_diff(&via_exp, &expected));
        let wave = evolution::evolve_exact(&rule, n_max, &x);
        evolve = evolve.max(max_abs_diff(&wave.unscaled(), &expected));
    }
    checks.push(exact_check("pathexp", pathexp));
    checks.push(exact_check("evolve", evolve));

    let schrodinger = evolution::verify_schrodinger(&closed, &rule);
    checks.push(EngineCheck {
        engine: "schrodinger",
        passed: schrodinger,
        max_deviation: if schrodinger { 0.0 } else { f64::NAN },
    });

    let cfg = selftest_quadrature();
    let mut worst = 0.0f64;
    let mut converged = true;
    for &x in &SPECTRAL_POINTS {
        let xr = float_to_rational(x);
        for n in 0..=n_max {
            let exact_value = closed.eval(n, &xr).expect("in range").to_f64();
            match spectral::spectral_eval(&rule, n, x, &cfg) {
                Ok(est) => {
                    let dev = spectral_deviation(est.value, exact_value);
                    worst = worst.max(dev);
                }
                Err(_) => converged = false,
            }
        }
    }
    checks.push(EngineCheck {
        engine: "spectral",
        passed: converged && worst <= SPECTRAL_RTOL,
        max_deviation: if converged { worst } else { f64::INFINITY },
    });

    SelftestReport {
        entry: entry.label(),
        n_max,
        checks,
        published_hamiltonian: entry.compare_published_hamiltonian(n_max),
    }
}

/// `|estimate - exact| / max(1, |exact|)`, counting the imaginary residue.
pub fn spectral_deviation(estimate: Complex64, exact: f64) -> f64 {
    (estimate - Complex64::new(exact, 0.0)).norm() / exact.abs().max(1.0)
}

/// Exact rational value of a finite `f64`.
pub fn float_to_rational(x: f64) -> Rational {
    let r = num_rational::BigRational::from_float(x).expect("finite float");
    Rational::from(r)
}
