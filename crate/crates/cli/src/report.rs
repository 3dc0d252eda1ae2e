use std::fmt::Write;

use clap::ValueEnum;
use num_bigint::BigUint;
use permclass::oracle::distribution_to_csv;
use permclass::{Basis, Statistic};
use serde::Serialize;

use crate::SCHEMA_VERSION;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Serialize)]
pub struct CountRow {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub functional_equation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<&'static str>,
}

#[derive(Debug, Serialize)]
pub struct DistRow {
    pub n: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub functional_equation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<&'static str>,
}

#[derive(Debug, Serialize)]
pub struct ExactGrowth {
    pub source: String,
    pub candidates: Vec<f64>,
    pub singularity: Option<f64>,
    pub growth: Option<f64>,
    pub singularity_exact: Option<String>,
    pub growth_exact: Option<String>,
}

/// Everything a subcommand prints; JSON output serializes it directly.
#[derive(Debug, Serialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Report {
    Count {
        schema_version: u32,
        class: String,
        basis: String,
        n: usize,
        rows: Vec<CountRow>,
        mismatches: usize,
    },
    Distribution {
        schema_version: u32,
        class: String,
        basis: String,
        statistic: String,
        n: usize,
        /// Nonzero entries only.
        rows: Vec<DistRow>,
        mismatches: usize,
    },
    Guess {
        schema_version: u32,
        class: String,
        terms: usize,
        dy: usize,
        dz: usize,
        found: bool,
        polynomial: Option<String>,
        term_list: Option<String>,
        confidence_margin: Option<usize>,
        residual_order: Option<usize>,
    },
    Verify {
        schema_version: u32,
        polynomial: String,
        series: String,
        variable: String,
        order: usize,
        residual_order: usize,
        passed: bool,
    },
    Growth {
        schema_version: u32,
        source: String,
        terms: usize,
        ratio: f64,
        extrapolated: f64,
        exact: Option<ExactGrowth>,
    },
    #[serde(rename = "kernel-check")]
    Kernel {
        schema_version: u32,
        order: usize,
        p_terms: usize,
        linear: bool,
        cofactor: String,
        cancelled: Vec<String>,
        t1_head: Vec<String>,
        m1_residual: usize,
        k_residual: usize,
        r_residual: usize,
        equation_residual: usize,
        passed: bool,
    },
}

/// `Av(p1,p2,…)`
fn basis_label(b: &Basis) -> String {
    let ps: Vec<String> = b.patterns().iter().map(ToString::to_string).collect();
    format!("Av({})", ps.join(","))
}

fn status(a: Option<&BigUint>, b: Option<&BigUint>, both: bool) -> Option<&'static str> {
    both.then(|| if a == b { "MATCH" } else { "MISMATCH" })
}

fn cell(m: &[Vec<BigUint>], n: usize, k: usize) -> BigUint {
    m.get(n).and_then(|r| r.get(k)).cloned().unwrap_or_default()
}

impl Report {
    pub fn counts(class: &str, basis: &Basis, n: usize, or: Option<&[BigUint]>, fe: Option<&[BigUint]>) -> Report {
        let both = or.is_some() && fe.is_some();
        let rows: Vec<CountRow> = (0..=n)
            .map(|i| {
                let a = or.and_then(|v| v.get(i));
                let b = fe.and_then(|v| v.get(i));
                CountRow {
                    n: i,
                    oracle: a.map(ToString::to_string),
                    functional_equation: b.map(ToString::to_string),
                    status: status(a, b, both),
                }
            })
            .collect();
        let mismatches = rows.iter().filter(|r| r.status == Some("MISMATCH")).count();
        Report::Count {
            schema_version: SCHEMA_VERSION,
            class: class.into(),
            basis: basis_label(basis),
            n,
            rows,
            mismatches,
        }
    }

    pub fn distribution(
        class: &str,
        basis: &Basis,
        n: usize,
        stat: Statistic,
        or: Option<Vec<Vec<BigUint>>>,
        fe: Option<Vec<Vec<BigUint>>>,
    ) -> Report {
        let both = or.is_some() && fe.is_some();
        let width = |m: &Option<Vec<Vec<BigUint>>>, i: usize| m.as_ref().and_then(|m| m.get(i)).map_or(0, Vec::len);
        let mut rows = Vec::new();
        let mut bad = std::collections::BTreeSet::new();
        for i in 0..=n {
            for k in 0..width(&or, i).max(width(&fe, i)) {
                let a = or.as_ref().map(|m| cell(m, i, k));
                let b = fe.as_ref().map(|m| cell(m, i, k));
                let zero = BigUint::default();
                if a.as_ref().unwrap_or(&zero) == &zero && b.as_ref().unwrap_or(&zero) == &zero {
                    continue;
                }
                let st = status(a.as_ref(), b.as_ref(), both);
                if st == Some("MISMATCH") {
                    bad.insert(i);
                }
                rows.push(DistRow {
                    n: i,
                    k,
                    oracle: a.map(|x| x.to_string()),
                    functional_equation: b.map(|x| x.to_string()),
                    status: st,
                });
            }
        }
        Report::Distribution {
            schema_version: SCHEMA_VERSION,
            class: class.into(),
            basis: basis_label(basis),
            statistic: stat.name().into(),
            n,
            rows,
            mismatches: bad.len(),
        }
    }

    pub fn mismatches(&self) -> usize {
        match self {
            Report::Count { mismatches, .. } | Report::Distribution { mismatches, .. } => *mismatches,
            _ => 0,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => self.text(),
            Format::Csv => self.csv(),
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Count { class, basis, rows, mismatches, .. } => {
                let both = rows.first().is_some_and(|r| r.status.is_some());
                if both {
                    let _ = writeln!(out, "{class} {basis}");
                    for r in rows {
                        let _ = writeln!(
                            out,
                            "{:>3}  {:>24}  {:>24}  {}",
                            r.n,
                            r.oracle.as_deref().unwrap_or(""),
                            r.functional_equation.as_deref().unwrap_or(""),
                            r.status.unwrap_or("")
                        );
                    }
                    let verdict = if *mismatches == 0 { "MATCH" } else { "MISMATCH" };
                    let _ = writeln!(out, "{verdict}: {} of {} lengths agree", rows.len() - mismatches, rows.len());
                } else {
                    let seq: Vec<&str> =
                        rows.iter().filter_map(|r| r.oracle.as_deref().or(r.functional_equation.as_deref())).collect();
                    let _ = writeln!(out, "{}", seq.join(","));
                }
            }
            Report::Distribution { class, basis, statistic, rows, mismatches, .. } => {
                let _ = writeln!(out, "{class} {basis} by {statistic}");
                let mut current = None;
                for r in rows {
                    if current != Some(r.n) {
                        if current.is_some() {
                            out.push('\n');
                        }
                        let _ = write!(out, "n={:<3}", r.n);
                        current = Some(r.n);
                    }
                    let v = r.functional_equation.as_deref().or(r.oracle.as_deref()).unwrap_or("0");
                    let mark = if r.status == Some("MISMATCH") { "!" } else { "" };
                    let _ = write!(out, " k{}:{v}{mark}", r.k);
                }
                out.push('\n');
                if rows.first().is_some_and(|r| r.status.is_some()) {
                    let verdict = if *mismatches == 0 { "MATCH" } else { "MISMATCH" };
                    let _ = writeln!(out, "{verdict}: {mismatches} lengths disagree");
                }
            }
            Report::Guess { class, terms, dy, dz, found, polynomial, confidence_margin, residual_order, .. } => {
                if *found {
                    let _ = writeln!(out, "{}", polynomial.as_deref().unwrap_or(""));
                    let _ = writeln!(out, "margin {}", confidence_margin.unwrap_or(0));
                    let _ = writeln!(out, "residual order {} (order {})", residual_order.unwrap_or(0), terms - 1);
                } else {
                    let _ = writeln!(out, "no polynomial found for {class} with {terms} terms, dy={dy}, dz={dz}");
                }
            }
            Report::Verify { polynomial, series, variable, order, residual_order, passed, .. } => {
                let verdict = if *passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{verdict}: {polynomial} at {variable} = {series}");
                let _ = writeln!(out, "residual order {residual_order} (required > {order})");
            }
            Report::Growth { source, terms, ratio, extrapolated, exact, .. } => {
                let _ = writeln!(out, "{source}: {terms} terms");
                let _ = writeln!(out, "ratio         {ratio}");
                let _ = writeln!(out, "extrapolated  {extrapolated}");
                if let Some(e) = exact {
                    let c: Vec<String> = e.candidates.iter().map(|x| format!("{x:.9}")).collect();
                    let _ = writeln!(out, "candidates from {}: {}", e.source, c.join(", "));
                    match (&e.singularity_exact, &e.growth_exact, e.singularity, e.growth) {
                        (Some(s), Some(g), _, _) => {
                            let _ = writeln!(out, "exact: singularity {s}, growth {g}");
                        }
                        (_, _, Some(s), Some(g)) => {
                            let _ = writeln!(out, "singularity {s:.9}, growth {g:.9}");
                        }
                        _ => {
                            let _ = writeln!(out, "no candidate consistent with the estimate");
                        }
                    }
                }
            }
            Report::Kernel {
                order,
                p_terms,
                linear,
                cofactor,
                cancelled,
                t1_head,
                m1_residual,
                k_residual,
                r_residual,
                equation_residual,
                passed,
                ..
            } => {
                let _ = writeln!(out, "P: {p_terms} terms, linear in y0..y3: {linear}");
                let _ = writeln!(out, "cancelled factors: {}", cancelled.join(", "));
                let _ = writeln!(out, "K cofactor: {cofactor}");
                let _ = writeln!(out, "t1 = {} + ...", t1_head.join(", "));
                let _ = writeln!(out, "residual orders at N={order}: m1 {m1_residual}, K {k_residual}, R {r_residual}, P {equation_residual}");
                let _ = writeln!(out, "{}", if *passed { "PASS" } else { "FAIL" });
            }
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Count { rows, .. } => {
                let both = rows.first().is_some_and(|r| r.status.is_some());
                if both {
                    out.push_str("n,oracle,functional_equation,status\n");
                    for r in rows {
                        let _ = writeln!(
                            out,
                            "{},{},{},{}",
                            r.n,
                            r.oracle.as_deref().unwrap_or(""),
                            r.functional_equation.as_deref().unwrap_or(""),
                            r.status.unwrap_or("")
                        );
                    }
                } else {
                    out.push_str("n,count\n");
                    for r in rows {
                        let v = r.oracle.as_deref().or(r.functional_equation.as_deref()).unwrap_or("");
                        let _ = writeln!(out, "{},{v}", r.n);
                    }
                }
            }
            Report::Distribution { rows, .. } => {
                let both = rows.first().is_some_and(|r| r.status.is_some());
                if both {
                    out.push_str("n,k,oracle,functional_equation,status\n");
                    for r in rows {
                        let _ = writeln!(
                            out,
                            "{},{},{},{},{}",
                            r.n,
                            r.k,
                            r.oracle.as_deref().unwrap_or("0"),
                            r.functional_equation.as_deref().unwrap_or("0"),
                            r.status.unwrap_or("")
                        );
                    }
                } else {
                    let m = table(rows);
                    out.push_str(&distribution_to_csv(&m));
                }
            }
            Report::Guess { class, terms, dy, dz, found, polynomial, confidence_margin, residual_order, .. } => {
                out.push_str("class,terms,dy,dz,found,polynomial,margin,residual_order\n");
                let _ = writeln!(
                    out,
                    "{class},{terms},{dy},{dz},{found},\"{}\",{},{}",
                    polynomial.as_deref().unwrap_or(""),
                    confidence_margin.map(|m| m.to_string()).unwrap_or_default(),
                    residual_order.map(|m| m.to_string()).unwrap_or_default()
                );
            }
            Report::Verify { polynomial, series, variable, order, residual_order, passed, .. } => {
                out.push_str("polynomial,series,variable,order,residual_order,passed\n");
                let _ = writeln!(out, "{polynomial},{series},{variable},{order},{residual_order},{passed}");
            }
            Report::Growth { source, terms, ratio, extrapolated, exact, .. } => {
                out.push_str("source,terms,ratio,extrapolated,singularity,growth,singularity_exact,growth_exact\n");
                let e = exact.as_ref();
                let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{source},{terms},{ratio},{extrapolated},{},{},{},{}",
                    opt(e.and_then(|e| e.singularity)),
                    opt(e.and_then(|e| e.growth)),
                    e.and_then(|e| e.singularity_exact.clone()).unwrap_or_default(),
                    e.and_then(|e| e.growth_exact.clone()).unwrap_or_default()
                );
            }
            Report::Kernel {
                order,
                p_terms,
                linear,
                cofactor,
                m1_residual,
                k_residual,
                r_residual,
                equation_residual,
                passed,
                ..
            } => {
                out.push_str(
                    "order,p_terms,linear,cofactor,m1_residual,k_residual,r_residual,equation_residual,passed\n",
                );
                let _ = writeln!(
                    out,
                    "{order},{p_terms},{linear},{cofactor},{m1_residual},{k_residual},{r_residual},{equation_residual},{passed}"
                );
            }
        }
        out
    }
}

fn table(rows: &[DistRow]) -> Vec<Vec<BigUint>> {
    let mut m: Vec<Vec<BigUint>> = Vec::new();
    for r in rows {
        let v: BigUint =
            r.oracle.as_deref().or(r.functional_equation.as_deref()).and_then(|s| s.parse().ok()).unwrap_or_default();
        if m.len() <= r.n {
            m.resize(r.n + 1, Vec::new());
        }
        if m[r.n].len() <= r.k {
            m[r.n].resize(r.k + 1, BigUint::default());
        }
        m[r.n][r.k] = v;
    }
    m
}
