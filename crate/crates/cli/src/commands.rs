use serde::ser::{Serialize, SerializeMap, Serializer};
use serde_json::{json, Value};
use umbra_core::catalog::{self, catalog_selftest, FAMILY_NAMES};
use umbra_core::lattice::{self, DEFAULT_MAX_PATHS};
use umbra_core::spectral::{spectral_eval, QuadratureConfig};
use umbra_core::{catalog_get, evolution, exact, CatalogEntry, Rational, SequenceTriangle};

use crate::output::{decimal, json, Table};
use crate::source::Source;
use crate::{CliError, Engine, EvalArgs, Format, Outcome, SourceArgs};

/// Ordered key/value record, rendered as a JSON object or a two-row CSV.
struct Record(Vec<(&'static str, Value)>);

impl Serialize for Record {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

impl Record {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => {
                let mut t = Table::new(self.0.iter().map(|(k, _)| *k));
                t.push(self.0.iter().map(|(_, v)| cell(v)).collect());
                t.csv(true)
            }
            Format::Table => {
                let width = self.0.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                self.0
                    .iter()
                    .map(|(k, v)| format!("{k:<width$}  {}\n", cell(v)))
                    .collect()
            }
        }
    }
}

fn rational_x(raw: &str, engine: &str) -> Result<Rational, CliError> {
    raw.trim().parse().map_err(|e| {
        CliError::Usage(format!(
            "engine {engine} needs an exact x (integer or a/b), got {raw:?}: {e}"
        ))
    })
}

fn float_x(raw: &str) -> Result<f64, CliError> {
    let raw = raw.trim();
    if let Ok(r) = raw.parse::<Rational>() {
        return Ok(r.to_f64());
    }
    match raw.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(CliError::Usage(format!(
            "cannot read x = {raw:?} as a number"
        ))),
    }
}

fn strings(values: &[Rational]) -> Value {
    Value::Array(
        values
            .iter()
            .map(|v| Value::String(v.to_string()))
            .collect(),
    )
}

pub fn gen(args: &SourceArgs, n: usize, format: Format) -> Result<Outcome, CliError> {
    let source = Source::resolve(args)?;
    let c = source.cumulants(n);
    let t = exact::from_cumulants(&c, n);
    let text = match format {
        Format::Json => json(&Record(vec![
            ("source", json!(source.to_string())),
            ("n_max", json!(n)),
            ("cumulants", strings(&c.values()[..n])),
            (
                "rows",
                Value::Array(t.rows().iter().map(|r| strings(r)).collect()),
            ),
        ])),
        Format::Csv => {
            let mut table = Table::new((0..=n).map(|k| format!("a{k}")));
            for row in t.rows() {
                table.push(
                    (0..=n)
                        .map(|k| row.get(k).map_or("0".into(), |v| v.to_string()))
                        .collect(),
                );
            }
            table.csv(false)
        }
        Format::Table => {
            let mut table = Table::new(
                ["n".to_string()]
                    .into_iter()
                    .chain((0..=n).map(|k| format!("x^{k}"))),
            );
            for (i, row) in t.rows().iter().enumerate() {
                table.push(
                    [i.to_string()]
                        .into_iter()
                        .chain(row.iter().map(|v| v.to_string()))
                        .collect(),
                );
            }
            table.aligned()
        }
    };
    Ok(Outcome {
        text,
        success: true,
    })
}

fn engine_name(engine: Engine) -> &'static str {
    match engine {
        Engine::Exact => "exact",
        Engine::Genfun => "genfun",
        Engine::Spectral => "spectral",
        Engine::Pathexp => "pathexp",
        Engine::Pathapprox => "pathapprox",
        Engine::Evolve => "evolve",
    }
}

fn reject(flag: &str, present: bool, engine: &str) -> Result<(), CliError> {
    if present {
        Err(CliError::Usage(format!(
            "{flag} does not apply to engine {engine}"
        )))
    } else {
        Ok(())
    }
}

pub fn eval(args: &EvalArgs) -> Result<Outcome, CliError> {
    let name = engine_name(args.engine);
    let spectral = args.engine == Engine::Spectral;
    let pathapprox = args.engine == Engine::Pathapprox;
    reject("--tol", args.tol.is_some() && !spectral, name)?;
    reject(
        "--quad-points",
        args.quad_points.is_some() && !spectral,
        name,
    )?;
    reject("--N", args.slices.is_some() && !pathapprox, name)?;
    reject("--enumerate", args.enumerate && !pathapprox, name)?;
    reject(
        "--steps",
        args.steps.is_some() && args.engine != Engine::Evolve,
        name,
    )?;

    let source = Source::resolve(&args.source)?;
    let n = args.n;
    let c = source.cumulants(n);
    let mut fields = vec![
        ("source", json!(source.to_string())),
        ("engine", json!(name)),
        ("n", json!(n)),
    ];
    match args.engine {
        Engine::Spectral => {
            let x = float_x(&args.x)?;
            let cfg = QuadratureConfig {
                initial_nodes: args.quad_points,
                tol: args.tol.unwrap_or(QuadratureConfig::default().tol),
                ..Default::default()
            };
            let est = spectral_eval(&c, n, x, &cfg)?;
            fields.extend([
                ("x", json!(x)),
                ("value", json!(est.value.re)),
                ("imag", json!(est.value.im)),
                ("tol", json!(cfg.tol)),
                ("nodes", json!(est.nodes)),
                ("doublings", json!(est.doublings)),
                ("radius", json!(est.radius)),
            ]);
        }
        Engine::Evolve if args.steps.is_some() => {
            let steps = args.steps.expect("checked");
            if steps == 0 {
                return Err(CliError::Usage("--steps must be at least 1".into()));
            }
            let x = float_x(&args.x)?;
            let q = evolution::evolve_numeric(&c, n, x, steps);
            let factorial: f64 = (1..=n).map(|k| k as f64).product();
            fields.extend([
                ("x", json!(x)),
                ("value", json!(q[n] * factorial)),
                ("method", json!("rk4")),
                ("steps", json!(steps)),
            ]);
        }
        _ => {
            let x = rational_x(&args.x, name)?;
            fields.push(("x", json!(x.to_string())));
            let value = match args.engine {
                Engine::Exact => exact::from_cumulants(&c, n).eval(n, &x)?,
                Engine::Genfun => exact::from_generating_series(&c, n).eval(n, &x)?,
                Engine::Pathexp => lattice::pathint_exp(&c, n, &x),
                Engine::Evolve => {
                    let w = evolution::evolve_exact(&c, n, &x);
                    w.unscaled().swap_remove(n)
                }
                Engine::Pathapprox => {
                    let slices = args
                        .slices
                        .ok_or_else(|| CliError::Usage("engine pathapprox needs --N".into()))?;
                    let value = if args.enumerate {
                        let cap = args.max_paths.unwrap_or(DEFAULT_MAX_PATHS);
                        lattice::pathint_approx_enumerated(&c, n, &x, slices, cap)?
                    } else {
                        lattice::pathint_approx(&c, n, &x, slices)?
                    };
                    fields.push(("N", json!(slices)));
                    value
                }
                Engine::Spectral => unreachable!(),
            };
            fields.push(("value", json!(value.to_string())));
        }
    }
    Ok(Outcome {
        text: Record(fields).render(args.format),
        success: true,
    })
}

struct CheckLine {
    identity: &'static str,
    pass: bool,
    detail: String,
}

fn binomial_line(t: &SequenceTriangle) -> CheckLine {
    let points = catalog::sample_points();
    let failure = points.windows(2).find_map(|w| {
        exact::binomial_defect(t, &w[0], &w[1])
            .map(|n| format!("row {n} fails at x={}, y={}", w[0], w[1]))
    });
    CheckLine {
        identity: "binomial",
        pass: failure.is_none(),
        detail: failure.unwrap_or_else(|| format!("{} sample pairs", points.len() - 1)),
    }
}

pub fn check(
    args: &SourceArgs,
    n: Option<usize>,
    from_paper: bool,
    format: Format,
) -> Result<Outcome, CliError> {
    let source = Source::resolve(args)?;
    if from_paper && source.catalog_entry().is_none() {
        return Err(CliError::Usage(
            "--hamiltonian-from-paper needs --catalog".into(),
        ));
    }
    let (t, c) = match (source.triangle(), source.catalog_entry()) {
        (Some(file), _) => {
            let n = n.unwrap_or(file.n_max());
            if n > file.n_max() {
                return Err(CliError::Usage(format!(
                    "--n {n} exceeds the {} rows in the file",
                    file.n_max() + 1
                )));
            }
            let t = SequenceTriangle::from_rows(file.rows()[..=n].to_vec())?;
            let c = exact::cumulants_of(&t);
            (t, c)
        }
        (None, Some(entry)) => {
            let n = n.unwrap_or(10);
            (entry.closed_form(n), entry.cumulants(n))
        }
        (None, None) => {
            let n = n.unwrap_or(10);
            let c = source.cumulants(n);
            (exact::from_cumulants(&c, n), c)
        }
    };
    let n_max = t.n_max();

    let mut lines = vec![binomial_line(&t)];
    let rec = exact::recurrence_defect(&t);
    lines.push(CheckLine {
        identity: "recurrence",
        pass: rec.is_none(),
        detail: rec.map_or_else(
            || format!("all i+j <= n <= {n_max}"),
            |(n, i, j)| format!("fails at n={n}, i={i}, j={j}"),
        ),
    });
    let origin = exact::verify_origin(&t);
    lines.push(CheckLine {
        identity: "origin",
        pass: origin,
        detail: if origin {
            "p_0 = 1, p_n(0) = 0".into()
        } else {
            "p_n(0) != δ_{n0}".into()
        },
    });

    let comparison = source
        .catalog_entry()
        .filter(|_| from_paper)
        .map(|entry| entry.compare_published_hamiltonian(n_max));
    let schrodinger_c = match (from_paper, source.catalog_entry()) {
        (true, Some(entry)) => entry.published_hamiltonian(n_max).cumulants(),
        _ => c,
    };
    let defect = evolution::schrodinger_defect(&t, &schrodinger_c);
    lines.push(CheckLine {
        identity: "schrodinger",
        pass: defect.is_none(),
        detail: match (defect, from_paper) {
            (None, false) => "p_n' = sum_k n!/(n-k)! h_k p_{n-k}".into(),
            (None, true) => "holds with the published Hamiltonian".into(),
            (Some(row), false) => format!("fails at row {row}"),
            (Some(row), true) => format!("fails at row {row} with the published Hamiltonian"),
        },
    });
    if let Some(cmp) = comparison {
        lines.push(CheckLine {
            identity: "hamiltonian",
            pass: cmp.agrees(),
            detail: cmp.to_string(),
        });
    }

    let mut warnings = Vec::new();
    if t.degree_deficient() {
        warnings.push("c_1 = 0: p_n has degree below n".to_string());
    }
    let all_pass = lines.iter().all(|l| l.pass);
    let status = |pass: bool| if pass { "pass" } else { "FAIL" };
    let text = match format {
        Format::Json => json(&Record(vec![
            ("source", json!(source.to_string())),
            ("n_max", json!(n_max)),
            (
                "checks",
                Value::Array(
                    lines
                        .iter()
                        .map(|l| {
                            serde_json::to_value(Record(vec![
                                ("identity", json!(l.identity)),
                                ("pass", json!(l.pass)),
                                ("detail", json!(l.detail)),
                            ]))
                            .expect("serializable")
                        })
                        .collect(),
                ),
            ),
            ("warnings", json!(warnings)),
            ("all_pass", json!(all_pass)),
        ])),
        Format::Csv => {
            let mut table = Table::new(["identity", "status", "detail"]);
            for l in &lines {
                table.push(vec![
                    l.identity.into(),
                    status(l.pass).into(),
                    csv_field(&l.detail),
                ]);
            }
            table.csv(true)
        }
        Format::Table => {
            let mut out = format!("{source}, n_max = {n_max}\n");
            let width = lines.iter().map(|l| l.identity.len()).max().unwrap_or(0);
            for l in &lines {
                out.push_str(&format!(
                    "{:<width$}  {}  {}\n",
                    l.identity,
                    status(l.pass),
                    l.detail
                ));
            }
            for w in &warnings {
                out.push_str(&format!("warning: {w}\n"));
            }
            out.push_str(if all_pass {
                "all pass\n"
            } else {
                "verification FAILED\n"
            });
            out
        }
    };
    Ok(Outcome {
        text,
        success: all_pass,
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

fn rounded(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

pub fn pathint(
    args: &SourceArgs,
    n: usize,
    x: &str,
    steps: &[usize],
    format: Format,
) -> Result<Outcome, CliError> {
    let source = Source::resolve(args)?;
    let x = rational_x(x, "pathapprox")?;
    if steps.is_empty() {
        return Err(CliError::Usage("--N needs at least one value".into()));
    }
    let c = source.cumulants(n);
    let table = lattice::convergence_table(&c, n, &x, steps)?;
    let local: Vec<Option<f64>> = table
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let prev = i.checked_sub(1).map(|j| &table.rows[j])?;
            if row.error.is_zero() || prev.error.is_zero() || row.steps == prev.steps {
                return None;
            }
            let de = (row.error.to_f64() / prev.error.to_f64()).ln();
            let dn = (row.steps as f64 / prev.steps as f64).ln();
            Some(rounded(de / dn))
        })
        .collect();
    let slope = table.slope.map(rounded);
    let slope_text = slope.map_or_else(|| "none".to_string(), decimal);
    let text = match format {
        Format::Json => json(&Record(vec![
            ("source", json!(source.to_string())),
            ("n", json!(n)),
            ("x", json!(x.to_string())),
            ("reference", json!(table.reference.to_string())),
            (
                "rows",
                Value::Array(
                    table
                        .rows
                        .iter()
                        .zip(&local)
                        .map(|(row, s)| {
                            Record(vec![
                                ("N", json!(row.steps)),
                                ("approx", json!(row.approx.to_string())),
                                ("error", json!(row.error.to_string())),
                                ("local_slope", json!(s)),
                            ])
                        })
                        .map(|r| serde_json::to_value(r).expect("serializable"))
                        .collect(),
                ),
            ),
            ("slope", json!(slope)),
        ])),
        Format::Csv | Format::Table => {
            let mut t = Table::new(["N", "approx", "error", "local_slope"]);
            for (row, s) in table.rows.iter().zip(&local) {
                t.push(vec![
                    row.steps.to_string(),
                    row.approx.to_string(),
                    row.error.to_string(),
                    s.map(decimal).unwrap_or_default(),
                ]);
            }
            if format == Format::Csv {
                t.csv(true)
            } else {
                format!(
                    "{source}, n = {n}, x = {x}, exact = {}\n{}slope {slope_text}\n",
                    table.reference,
                    t.aligned()
                )
            }
        }
    };
    Ok(Outcome {
        text,
        success: true,
    })
}

pub fn selftest(
    catalog: Option<&str>,
    params: &[String],
    n: usize,
    format: Format,
) -> Result<Outcome, CliError> {
    let entries: Vec<CatalogEntry> = match catalog {
        Some(name) => {
            let args = SourceArgs {
                catalog: Some(name.to_owned()),
                param: params.to_vec(),
                cumulants: None,
                file: None,
            };
            match Source::resolve(&args)? {
                Source::Catalog(entry) => vec![entry],
                _ => unreachable!(),
            }
        }
        None => {
            if !params.is_empty() {
                return Err(CliError::Usage("--param needs --catalog".into()));
            }
            let abel = [("a".to_string(), Rational::one())];
            FAMILY_NAMES
                .iter()
                .map(|name| catalog_get(name, if *name == "abel" { &abel } else { &[] }))
                .collect::<Result<_, _>>()?
        }
    };
    let reports: Vec<_> = entries.iter().map(|e| catalog_selftest(e, n)).collect();
    let success = reports.iter().all(|r| r.engines_pass());
    let status = |pass: bool| if pass { "pass" } else { "FAIL" };
    let text = match format {
        Format::Json => json(&Value::Array(
            reports
                .iter()
                .map(|r| {
                    json!({
                        "entry": r.entry,
                        "n_max": r.n_max,
                        "checks": r.checks.iter().map(|c| json!({
                            "engine": c.engine,
                            "pass": c.passed,
                            "max_deviation": c.max_deviation,
                        })).collect::<Vec<_>>(),
                        "published_hamiltonian": r.published_hamiltonian.to_string(),
                    })
                })
                .collect(),
        )),
        Format::Csv | Format::Table => {
            let mut t = Table::new(["entry", "engine", "status", "max_deviation"]);
            for r in &reports {
                for c in &r.checks {
                    t.push(vec![
                        r.entry.clone(),
                        c.engine.into(),
                        status(c.passed).into(),
                        format!("{:.3e}", c.max_deviation),
                    ]);
                }
            }
            if format == Format::Csv {
                t.csv(true)
            } else {
                let mut out = t.aligned();
                for r in &reports {
                    out.push_str(&format!("{}\n", r.published_hamiltonian));
                }
                out
            }
        }
    };
    Ok(Outcome { text, success })
}
