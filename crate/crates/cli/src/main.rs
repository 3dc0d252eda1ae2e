use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use permclass::algebraic::growth::discriminant_vanishes_at;
use permclass::algebraic::guess::{guess_min_poly_with, GuessConfig, DEFAULT_MARGIN};
use permclass::algebraic::kernel::equation_residual;
use permclass::algebraic::{
    growth_estimate, growth_exact, kernel_extract, kernel_root_check, verify_annihilation, GrowthMode,
};
use permclass::oracle::{self, Oracle, BUDGET_ENV, DEFAULT_NODE_BUDGET};
use permclass::seriesalg::mpoly::parse_term_file;
use permclass::seriesalg::SeriesValue;
use permclass::{fe_class_a, fe_class_b, fixtures, Basis, Error, MPoly, Series, Statistic};

mod report;

use report::{Format, Report};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "permclass", version, about = "Exact enumeration of Av(2413,3412) and Av(1432,2143)")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Maximum number of one-point extensions the oracle may attempt.
    #[arg(long, global = true, env = BUDGET_ENV, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u128,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the counting sequence c_0..c_n.
    Count {
        #[arg(long, value_enum)]
        class: ClassId,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::FunctionalEquation)]
        method: Method,
    },
    /// Print the joint distribution of length and a statistic.
    Distribution {
        #[arg(long, value_enum)]
        class: ClassId,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::FunctionalEquation)]
        method: Method,
        /// Defaults to the catalytic statistic of the class.
        #[arg(long)]
        statistic: Option<Statistic>,
    },
    /// Conjecture a polynomial P(z, F) with P(z, f(z,1)) = 0 from initial terms.
    Guess {
        #[arg(long, value_enum)]
        class: ClassId,
        /// Number of series coefficients to use.
        #[arg(long, default_value_t = 40)]
        terms: usize,
        #[arg(long)]
        dy: usize,
        #[arg(long)]
        dz: usize,
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: usize,
    },
    /// Check that a polynomial annihilates a computed series.
    Verify {
        /// A polynomial file in `coef:monomial` form.
        #[arg(long, conflicts_with = "fixture", required_unless_present = "fixture")]
        poly: Option<PathBuf>,
        /// Name of a bundled fixture.
        #[arg(long)]
        fixture: Option<String>,
        /// The series substituted for the non-`z` variable.
        #[arg(long, value_enum)]
        series: Option<SeriesSource>,
        #[arg(long, default_value_t = 40)]
        order: usize,
    },
    /// Estimate the exponential growth rate.
    Growth {
        #[arg(long, value_enum, required_unless_present = "counts")]
        class: Option<ClassId>,
        /// Read the sequence from a file (one integer per line, optionally
        /// preceded by its index) instead of computing it.
        #[arg(long, conflicts_with = "class")]
        counts: Option<PathBuf>,
        #[arg(long, default_value_t = 60)]
        terms: usize,
    },
    /// Extract the kernel of the class-B equation and check its series root.
    KernelCheck {
        #[arg(long, default_value_t = 40)]
        order: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum ClassId {
    ClassA,
    ClassB,
}

impl ClassId {
    fn basis(self) -> Basis {
        match self {
            ClassId::ClassA => Basis::class_a(),
            ClassId::ClassB => Basis::class_b(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            ClassId::ClassA => "class_a",
            ClassId::ClassB => "class_b",
        }
    }

    fn catalytic(self) -> Statistic {
        match self {
            ClassId::ClassA => Statistic::InitialDecreasingRun,
            ClassId::ClassB => Statistic::TrailingMarks,
        }
    }

    fn fe_counts(self, n: usize) -> permclass::Result<Vec<BigUint>> {
        match self {
            ClassId::ClassA => fe_class_a::counts(n),
            ClassId::ClassB => fe_class_b::counts(n),
        }
    }

    fn fe_distribution(self, n: usize) -> permclass::Result<Vec<Vec<BigUint>>> {
        match self {
            ClassId::ClassA => fe_class_a::iterate(n).distribution(),
            ClassId::ClassB => fe_class_b::iterate(n)?.distribution(),
        }
    }

    fn f1(self, order: usize) -> permclass::Result<Series<BigInt>> {
        match self {
            ClassId::ClassA => Ok(fe_class_a::iterate(order).f1()),
            ClassId::ClassB => Ok(fe_class_b::iterate(order)?.f1()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Method {
    Oracle,
    FunctionalEquation,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum SeriesSource {
    /// f(z,1) of Av(2413,3412)
    #[value(name = "class_a_f1")]
    ClassAF1,
    /// fskew(z, f(z,1)) of Av(2413,3412)
    ClassASkewAtF1,
    /// f(z,1) of Av(1432,2143)
    #[value(name = "class_b_f1")]
    ClassBF1,
}

impl SeriesSource {
    fn name(self) -> &'static str {
        match self {
            SeriesSource::ClassAF1 => "class_a_f1",
            SeriesSource::ClassASkewAtF1 => "class_a_skew_at_f1",
            SeriesSource::ClassBF1 => "class_b_f1",
        }
    }

    fn for_fixture(name: &str) -> Option<Self> {
        match name.trim_end_matches(".poly") {
            "class_a_f1" => Some(SeriesSource::ClassAF1),
            "class_a_skew_at_f1" => Some(SeriesSource::ClassASkewAtF1),
            "class_b_f1" => Some(SeriesSource::ClassBF1),
            _ => None,
        }
    }

    fn series(self, order: usize) -> permclass::Result<Series<BigInt>> {
        match self {
            SeriesSource::ClassAF1 => Ok(fe_class_a::iterate(order).f1()),
            SeriesSource::ClassASkewAtF1 => Ok(fe_class_a::iterate(order).fskew_at_f1()),
            SeriesSource::ClassBF1 => Ok(fe_class_b::iterate(order)?.f1()),
        }
    }
}

/// A failure with its exit status and reason code.
#[derive(Debug)]
struct Failure {
    status: u8,
    code: &'static str,
    message: String,
    /// Output to emit before the error line.
    report: Option<Box<Report>>,
}

impl Failure {
    fn new(status: u8, code: &'static str, message: impl Into<String>) -> Self {
        Failure { status, code, message: message.into(), report: None }
    }

    fn with_report(mut self, report: Report) -> Self {
        self.report = Some(Box::new(report));
        self
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (status, code) = match e {
            Error::Parse(_) => (2, "PARSE"),
            Error::InvalidArgument(_) | Error::InsufficientData { .. } | Error::MissingAssignment(_) => (2, "USAGE"),
            Error::BudgetExceeded { .. } => (3, "BUDGET"),
            Error::Consistency(_) | Error::NotDivisible(_) => (4, "CONSISTENCY"),
            Error::NotInvertible(_) | Error::DegreeZero(_) | Error::Ramified => (4, "UNSUPPORTED"),
        };
        Failure::new(status, code, e.to_string())
    }
}

type Outcome = Result<Report, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            print!("{}", report.render(format));
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(r) = &f.report {
                print!("{}", r.render(format));
            }
            eprintln!("error: {}: {}", f.code, f.message);
            ExitCode::from(f.status)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let oracle = Oracle::with_budget(cli.budget);
    match cli.command {
        Command::Count { class, n, method } => cmd_count(&oracle, class, n, method),
        Command::Distribution { class, n, method, statistic } => {
            cmd_distribution(&oracle, class, n, method, statistic.unwrap_or(class.catalytic()))
        }
        Command::Guess { class, terms, dy, dz, margin } => cmd_guess(class, terms, dy, dz, margin),
        Command::Verify { poly, fixture, series, order } => cmd_verify(poly, fixture, series, order),
        Command::Growth { class, counts, terms } => cmd_growth(class, counts, terms),
        Command::KernelCheck { order } => cmd_kernel_check(order),
    }
}

/// Runs the oracle and the functional equation side by side.
fn both<T: Send, U: Send>(
    a: impl FnOnce() -> permclass::Result<T> + Send,
    b: impl FnOnce() -> permclass::Result<U> + Send,
) -> Result<(T, U), Failure> {
    let (x, y) = std::thread::scope(|s| {
        let h = s.spawn(a);
        let y = b();
        (h.join().expect("oracle thread panicked"), y)
    });
    Ok((x?, y?))
}

fn cmd_count(oracle: &Oracle, class: ClassId, n: usize, method: Method) -> Outcome {
    let basis = class.basis();
    let (or, fe) = match method {
        Method::Oracle => (Some(oracle.enumerate_avoiders(&basis, n)?.counts), None),
        Method::FunctionalEquation => (None, Some(class.fe_counts(n)?)),
        Method::Both => {
            let (o, f) = both(|| oracle.enumerate_avoiders(&basis, n), || class.fe_counts(n))?;
            (Some(o.counts), Some(f))
        }
    };
    let report = Report::counts(class.name(), &basis, n, or.as_deref(), fe.as_deref());
    match report.mismatches() {
        0 => Ok(report),
        k => Err(Failure::new(1, "MISMATCH", format!("{k} lengths disagree")).with_report(report)),
    }
}

fn cmd_distribution(oracle: &Oracle, class: ClassId, n: usize, method: Method, stat: Statistic) -> Outcome {
    let basis = class.basis();
    if method != Method::Oracle && stat != class.catalytic() {
        return Err(Failure::new(
            2,
            "USAGE",
            format!("the functional equation of {} tracks {}, not {stat}", class.name(), class.catalytic()),
        ));
    }
    let from_oracle = || -> permclass::Result<Vec<Vec<BigUint>>> {
        let r = oracle.statistic_distribution(&basis, n, &[stat])?;
        Ok(r.distribution(stat).cloned().unwrap_or_default())
    };
    let (or, fe) = match method {
        Method::Oracle => (Some(from_oracle()?), None),
        Method::FunctionalEquation => (None, Some(class.fe_distribution(n)?)),
        Method::Both => {
            let (o, f) = both(from_oracle, || class.fe_distribution(n))?;
            (Some(o), Some(f))
        }
    };
    let report = Report::distribution(class.name(), &basis, n, stat, or, fe);
    match report.mismatches() {
        0 => Ok(report),
        k => Err(Failure::new(1, "MISMATCH", format!("{k} lengths disagree")).with_report(report)),
    }
}

fn assignment(var: &str, s: Series<BigInt>) -> BTreeMap<String, SeriesValue<BigInt>> {
    let order = s.order();
    let mut a = BTreeMap::new();
    a.insert(var.to_string(), SeriesValue::Uni(s));
    a.insert("z".to_string(), SeriesValue::Uni(Series::z(order)));
    a
}

fn cmd_guess(class: ClassId, terms: usize, dy: usize, dz: usize, margin: usize) -> Outcome {
    if terms == 0 {
        return Err(Failure::new(2, "USAGE", "--terms must be positive"));
    }
    let order = terms - 1;
    let f1 = class.f1(order)?;
    let cfg = GuessConfig { margin, ..GuessConfig::default() };
    match guess_min_poly_with(&f1, dy, dz, &cfg)? {
        Some(g) => {
            let residual = verify_annihilation(&g.poly, &assignment(&cfg.yvar, f1), order)?;
            Ok(Report::Guess {
                schema_version: SCHEMA_VERSION,
                class: class.name().into(),
                terms,
                dy: g.dy,
                dz: g.dz,
                found: true,
                polynomial: Some(g.poly.to_string()),
                term_list: Some(g.poly.to_term_list()),
                confidence_margin: Some(g.confidence_margin),
                residual_order: Some(residual),
            })
        }
        None => {
            let report = Report::Guess {
                schema_version: SCHEMA_VERSION,
                class: class.name().into(),
                terms,
                dy,
                dz,
                found: false,
                polynomial: None,
                term_list: None,
                confidence_margin: None,
                residual_order: None,
            };
            Err(Failure::new(5, "NO_GUESS", "no polynomial found").with_report(report))
        }
    }
}

fn series_variable(p: &MPoly) -> Result<String, Failure> {
    let others: Vec<&String> = p.vars().iter().filter(|v| *v != "z").collect();
    match others.as_slice() {
        [v] => Ok((*v).clone()),
        [] => Err(Failure::new(2, "USAGE", "polynomial does not involve a series variable")),
        _ => Err(Failure::new(2, "USAGE", format!("polynomial has several non-z variables: {others:?}"))),
    }
}

fn cmd_verify(path: Option<PathBuf>, fixture: Option<String>, series: Option<SeriesSource>, order: usize) -> Outcome {
    let (source_name, poly, inferred) = match (&path, &fixture) {
        (_, Some(name)) => {
            let fx = fixtures::by_name(name)
                .ok_or_else(|| Failure::new(2, "USAGE", format!("no bundled fixture named `{name}`")))?;
            (fx.name.to_string(), fx.poly()?, SeriesSource::for_fixture(fx.name))
        }
        (Some(p), None) => {
            let text =
                std::fs::read_to_string(p).map_err(|e| Failure::new(2, "IO", format!("{}: {e}", p.display())))?;
            let poly = parse_term_file(&text)?;
            let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
            (p.display().to_string(), poly, SeriesSource::for_fixture(stem))
        }
        (None, None) => unreachable!("clap requires one of --poly and --fixture"),
    };
    let source =
        series.or(inferred).ok_or_else(|| Failure::new(2, "USAGE", "--series is required for this polynomial"))?;
    let var = series_variable(&poly)?;
    let s = source.series(order)?;
    let residual = verify_annihilation(&poly, &assignment(&var, s), order)?;
    let passed = residual > order;
    let report = Report::Verify {
        schema_version: SCHEMA_VERSION,
        polynomial: source_name,
        series: source.name().into(),
        variable: var,
        order,
        residual_order: residual,
        passed,
    };
    if passed {
        Ok(report)
    } else {
        Err(Failure::new(1, "VERIFY_FAILED", format!("residual order {residual} does not exceed {order}"))
            .with_report(report))
    }
}

fn read_counts(path: &PathBuf) -> Result<Vec<BigUint>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::new(2, "IO", format!("{}: {e}", path.display())))?;
    if let Ok(c) = oracle::parse_counts_tsv(&text) {
        return Ok(c);
    }
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<BigUint>().map_err(|e| Failure::new(2, "PARSE", format!("`{s}`: {e}"))))
        .collect()
}

fn cmd_growth(class: Option<ClassId>, counts: Option<PathBuf>, terms: usize) -> Outcome {
    let (label, seq) = match (class, &counts) {
        (Some(c), _) => {
            if terms < 2 {
                return Err(Failure::new(2, "USAGE", "--terms must be at least 2"));
            }
            (c.name().to_string(), c.fe_counts(terms - 1)?)
        }
        (None, Some(p)) => (p.display().to_string(), read_counts(p)?),
        (None, None) => unreachable!("clap requires --class or --counts"),
    };
    let ratio = growth_estimate(&seq, GrowthMode::Ratio)?;
    let extrapolated = growth_estimate(&seq, GrowthMode::Extrapolated)?;
    let exact = match class {
        Some(ClassId::ClassA) => {
            let p = fixtures::CLASS_A_MINPOLY.poly()?;
            let g = growth_exact(&p, "F", "z")?;
            let chosen = g.consistent_with(extrapolated, 0.05);
            let rational = chosen.and_then(|(rho, _)| g.exact_rational_near(rho));
            if let Some(q) = &rational {
                if !discriminant_vanishes_at(&p, "F", "z", q)? {
                    return Err(Failure::new(4, "CONSISTENCY", format!("discriminant does not vanish at {q}")));
                }
            }
            Some(report::ExactGrowth {
                source: fixtures::CLASS_A_MINPOLY.name.into(),
                candidates: g.candidates,
                singularity: chosen.map(|c| c.0),
                growth: chosen.map(|c| c.1),
                singularity_exact: rational.as_ref().map(ToString::to_string),
                growth_exact: rational.as_ref().map(|q| q.recip().to_string()),
            })
        }
        Some(ClassId::ClassB) => {
            let p = fixtures::CLASS_B_GROWTH.poly()?;
            let g = growth_exact(&p, "F", "z")?;
            let chosen = g.consistent_with(extrapolated, 0.05);
            Some(report::ExactGrowth {
                source: fixtures::CLASS_B_GROWTH.name.into(),
                candidates: g.candidates,
                singularity: chosen.map(|c| c.0),
                growth: chosen.map(|c| c.1),
                singularity_exact: None,
                growth_exact: None,
            })
        }
        None => None,
    };
    Ok(Report::Growth { schema_version: SCHEMA_VERSION, source: label, terms: seq.len(), ratio, extrapolated, exact })
}

fn cmd_kernel_check(order: usize) -> Outcome {
    let d = kernel_extract()?;
    let linear = ["y0", "y1", "y2", "y3"].iter().all(|y| d.p.degree_in(y) == Some(1));
    let state = fe_class_b::iterate(order)?;
    let root = kernel_root_check(&state, &d)?;
    let eq = equation_residual(&state, &d)?;
    let passed = linear && root.passed();
    let report = Report::Kernel {
        schema_version: SCHEMA_VERSION,
        order,
        p_terms: d.p.num_terms(),
        linear,
        cofactor: d.cofactor.to_string(),
        cancelled: d.cancelled.clone(),
        t1_head: root.t1.coeffs().iter().take(8).map(ToString::to_string).collect(),
        m1_residual: root.m1_residual,
        k_residual: root.k_residual,
        r_residual: root.r_residual,
        equation_residual: eq,
        passed,
    };
    if passed {
        Ok(report)
    } else {
        Err(Failure::new(1, "VERIFY_FAILED", "kernel root check failed").with_report(report))
    }
}
