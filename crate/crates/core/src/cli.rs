//! Command-line front end.
//!
//! Exit codes: 0 when everything passes, 1 when a verification fails, 2 on
//! a usage error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::enumerate::narayana::verify_narayana;
use crate::enumerate::orthopoly::verify_specializations;
use crate::enumerate::{counts, verify_all_counts, CountTable, TSV_HEADER};
use crate::exact::{parse_rational, Letter, Param, PolyExpr};
use crate::families::{generate, mobius_closed, product_hypothesis, rank, splits, FamilyId, FamilyPoset};
use crate::gamma::{Algebra, IndicatorAlgebra};
use crate::meixner::checks::{
    verify_factorization, verify_free_cumulants, verify_inner_product, verify_inversion_cases, verify_paths,
};
use crate::meixner::tn::default_params;
use crate::meixner::{compute_t, inversion_coeffs, q_counterexample, MeixnerParams};
use crate::wick::properties::{
    verify_adjoint, verify_adjoint_random, verify_positivity, verify_state_closed_objects, verify_traciality,
};
use crate::wick::verify::{index_family, verify_inversion, verify_monomial_expansion, verify_product};
use crate::wick::{Report, WickFamily};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "wickcomb", version, about = "Exact checks of incomplete-poset Wick-product identities")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for suite cases.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Free,
    Commutative,
    Tracial,
}

impl Mode {
    fn algebra(self) -> Algebra {
        match self {
            Mode::Free => Algebra::Free,
            Mode::Commutative => Algebra::Commutative,
            Mode::Tracial => Algebra::Tracial,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Monomial,
    Inversion,
    Product,
    Hypothesis,
    Mobius,
    Adjoint,
    Traciality,
    State,
    Positivity,
    Meixner,
    Counts,
    Specializations,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Table {
    Counts,
    Inversion,
    Moments,
}

/// Rational values for the formal parameters; an omitted flag leaves the
/// parameter formal.
#[derive(Args, Debug, Clone, Default)]
struct ParamArgs {
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    t: Option<String>,
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long)]
    q: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run an identity suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// P12, IP, IPRM, INC12, INC, MEIXNER or all.
        #[arg(long, default_value = "all")]
        family: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Overrides the per-family default algebra mode.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        /// Compare adjoints with commuting `X` factors.
        #[arg(long)]
        commuting: bool,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// List the elements of a family with their rank and open-block count.
    Enumerate {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
    },
    /// Möbius values from the bottom element: recursion against closed form.
    Mobius {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
    },
    /// The q-product counterexample.
    Counterexample {
        #[arg(long, default_value = "1")]
        measure_i: String,
        #[arg(long, default_value = "1")]
        measure_j: String,
    },
    /// T_n by the direct sum and by generating functions.
    Tn {
        #[arg(long, default_value_t = 6)]
        max: usize,
        /// Keep omitted parameters formal instead of using α = t = γ = 1, β = 2.
        #[arg(long)]
        formal: bool,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Count, inversion-coefficient and moment tables.
    Tables {
        #[arg(value_enum)]
        table: Table,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Debug)]
pub struct UsageError(pub String);

impl From<String> for UsageError {
    fn from(s: String) -> Self {
        UsageError(s)
    }
}

/// Everything a `verify` run needs.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub families: Vec<WickFamily>,
    pub n: usize,
    pub mode: Option<Mode>,
    pub commuting: bool,
    pub format: Format,
    pub jobs: usize,
}

type Case = Box<dyn Fn() -> Vec<Report> + Send + Sync>;

fn parse_param(name: &str, v: &Option<String>, p: Param) -> Result<PolyExpr, UsageError> {
    match v {
        None => Ok(PolyExpr::param(p)),
        Some(s) => parse_rational(s)
            .map(PolyExpr::constant)
            .ok_or_else(|| UsageError(format!("--{name}: `{s}` is not a rational p/q"))),
    }
}

impl ParamArgs {
    fn meixner(&self, defaults: Option<MeixnerParams>) -> Result<MeixnerParams, UsageError> {
        let d = defaults.unwrap_or_else(MeixnerParams::formal);
        let pick = |name, v: &Option<String>, p, dv: PolyExpr| if v.is_some() { parse_param(name, v, p) } else { Ok(dv) };
        Ok(MeixnerParams::new(
            pick("alpha", &self.alpha, Param::Alpha, d.alpha)?,
            pick("beta", &self.beta, Param::Beta, d.beta)?,
            pick("t", &self.t, Param::T, d.t)?,
            pick("gamma", &self.gamma, Param::Gamma, d.gamma)?,
        ))
    }
}

/// Families named by `--family`; `all` is the six families of the state
/// suites.
pub fn parse_families(s: &str, p: &MeixnerParams) -> Result<Vec<WickFamily>, UsageError> {
    let all = [
        WickFamily::P12,
        WickFamily::Ip,
        WickFamily::Iprm,
        WickFamily::Inc12,
        WickFamily::Inc,
        WickFamily::Meixner(p.clone()),
    ];
    if s.eq_ignore_ascii_case("all") {
        return Ok(all.to_vec());
    }
    s.split(',')
        .map(|name| {
            all.iter()
                .find(|f| f.name().eq_ignore_ascii_case(name.trim()))
                .cloned()
                .ok_or_else(|| UsageError(format!("unknown family `{name}`; the q family is only used by `counterexample`")))
        })
        .collect()
}

fn parse_family_id(s: &str) -> Result<FamilyId, UsageError> {
    s.parse::<FamilyId>().map_err(UsageError)
}

fn check_bound(family: FamilyId, n: usize) -> Result<(), UsageError> {
    if n > family.max_n() {
        return Err(UsageError(format!("n = {n} exceeds the {family} bound {}", family.max_n())));
    }
    Ok(())
}

fn ok_or_fail<E: std::fmt::Display>(family: &str, identity: &str, r: Result<Report, E>) -> Report {
    r.unwrap_or_else(|e| {
        let mut rep = Report::new(family, identity, "-");
        rep.fail(e.to_string());
        rep
    })
}

/// Algebra mode used when `--mode` is absent.
pub fn default_mode(suite: Suite, family: &WickFamily) -> Algebra {
    match (suite, family) {
        (Suite::Inversion | Suite::Product | Suite::Adjoint, WickFamily::Ip) => Algebra::Commutative,
        (Suite::Inversion | Suite::Product, WickFamily::Iprm) => Algebra::Tracial,
        (Suite::Adjoint | Suite::Traciality, _) => Algebra::Tracial,
        _ => Algebra::Free,
    }
}

/// Letters `a0`, `a1` as indicators of disjoint sets of measure 1 and 1/2.
pub fn indicator_pair() -> Algebra {
    let sets = [(Letter(0), 0b01), (Letter(1), 0b10)].into_iter().collect();
    let measures = vec![crate::exact::int(1), crate::exact::rat(1, 2)];
    Algebra::Indicator(IndicatorAlgebra::new(sets, measures).expect("disjoint nonempty atoms"))
}

fn index_ids(families: &[WickFamily]) -> Vec<FamilyId> {
    let mut ids: Vec<FamilyId> = families.iter().filter_map(index_family).collect();
    ids.sort();
    ids.dedup();
    ids
}

/// The cases of a suite in their fixed output order.
pub fn suite_cases(cfg: &SuiteConfig) -> Result<Vec<Case>, UsageError> {
    let suites: Vec<Suite> = if cfg.suite == Suite::All {
        vec![
            Suite::Mobius,
            Suite::Hypothesis,
            Suite::Monomial,
            Suite::Inversion,
            Suite::Product,
            Suite::State,
            Suite::Adjoint,
            Suite::Traciality,
            Suite::Positivity,
            Suite::Meixner,
            Suite::Counts,
            Suite::Specializations,
        ]
    } else {
        vec![cfg.suite]
    };
    for id in index_ids(&cfg.families) {
        check_bound(id, cfg.n)?;
    }
    let mut cases: Vec<Case> = Vec::new();
    let n = cfg.n;
    for suite in suites {
        let mode_for = |f: &WickFamily| cfg.mode.map(Mode::algebra).unwrap_or_else(|| default_mode(suite, f));
        match suite {
            Suite::Monomial | Suite::Inversion | Suite::State => {
                for fam in &cfg.families {
                    for k in 0..=n {
                        let (fam, alg) = (fam.clone(), mode_for(fam));
                        cases.push(Box::new(move || {
                            let r = match suite {
                                Suite::Monomial => verify_monomial_expansion(&fam, k, &alg),
                                Suite::Inversion => verify_inversion(&fam, k, &alg),
                                _ => verify_state_closed_objects(&fam, k, &alg),
                            };
                            vec![ok_or_fail(fam.name(), "-", r)]
                        }));
                    }
                }
            }
            Suite::Product => {
                let with_formula: Vec<&WickFamily> =
                    cfg.families.iter().filter(|f| !matches!(f, WickFamily::Meixner(_))).collect();
                if with_formula.is_empty() && cfg.suite == Suite::Product {
                    return Err(UsageError("no product formula for the selected families".into()));
                }
                for fam in with_formula {
                    for k in 2..=n {
                        for split in splits(k, 3) {
                            let (fam, alg) = (fam.clone(), mode_for(fam));
                            cases.push(Box::new(move || vec![ok_or_fail(fam.name(), "product", verify_product(&fam, &split, &alg))]));
                        }
                    }
                }
            }
            Suite::Hypothesis => {
                for id in index_ids(&cfg.families) {
                    for k in 2..=n {
                        for split in splits(k, k) {
                            cases.push(Box::new(move || {
                                let mut r = Report::new(id.name(), "product hypothesis", "-").with_split(&split);
                                match product_hypothesis(id, &split) {
                                    Ok(h) => {
                                        r.checked = h.elements;
                                        if let Some(f) = h.failure {
                                            r.fail(f);
                                        }
                                    }
                                    Err(e) => r.fail(e.to_string()),
                                }
                                vec![r]
                            }));
                        }
                    }
                }
            }
            Suite::Mobius => {
                for id in index_ids(&cfg.families) {
                    for k in 0..=n {
                        cases.push(Box::new(move || vec![mobius_report(id, k)]));
                    }
                }
            }
            Suite::Adjoint => {
                for fam in &cfg.families {
                    let (fam, alg, commuting) = (fam.clone(), mode_for(fam), cfg.commuting);
                    cases.push(Box::new(move || {
                        let mut v: Vec<Report> = (0..=n).map(|k| verify_adjoint(&fam, k, &alg, commuting)).collect();
                        v.push(verify_adjoint_random(&fam, &alg, commuting, n, 30, 1));
                        v
                    }));
                }
            }
            Suite::Traciality => {
                for fam in &cfg.families {
                    let fam = fam.clone();
                    cases.push(Box::new(move || vec![verify_traciality(&fam, n, 30, 1)]));
                }
            }
            Suite::Positivity => {
                for fam in &cfg.families {
                    let fam = match fam {
                        WickFamily::Meixner(p) => {
                            WickFamily::Meixner(MeixnerParams::new(p.alpha.clone(), p.beta.clone(), 1, 1))
                        }
                        f => f.clone(),
                    };
                    cases.push(Box::new(move || vec![verify_positivity(&fam, &indicator_pair(), &[Letter(0), Letter(1)])]));
                }
            }
            Suite::Meixner => {
                for fam in &cfg.families {
                    let WickFamily::Meixner(p) = fam else { continue };
                    let (p1, p2, p3, p4) = (p.clone(), p.clone(), p.clone(), p.clone());
                    cases.push(Box::new(move || {
                        (0..=n)
                            .map(|k| ok_or_fail("MEIXNER", "moment", verify_state_closed_objects(&WickFamily::Meixner(p1.clone()), k, &Algebra::Free)))
                            .collect()
                    }));
                    cases.push(Box::new(move || {
                        (0..=n).map(|k| ok_or_fail("Meixner", "factorization", verify_factorization(k, &p2))).collect()
                    }));
                    cases.push(Box::new(move || {
                        let m = n.min(3);
                        let mut v = Vec::new();
                        for a in 0..=m {
                            for b in 0..=m {
                                v.push(verify_inner_product(a, b, &p3, &Algebra::Free));
                            }
                        }
                        v
                    }));
                    cases.push(Box::new(move || vec![verify_free_cumulants(n, &p4), verify_paths(n + 1, &p4)]));
                    cases.push(Box::new(|| vec![verify_inversion_cases(10)]));
                }
            }
            Suite::Counts => {
                cases.push(Box::new(move || {
                    let mut v = verify_all_counts(n).unwrap_or_else(|e| vec![ok_or_fail::<String>("-", "counts", Err(e.to_string()))]);
                    v.push(ok_or_fail("INC", "narayana", verify_narayana(n)));
                    v
                }));
            }
            Suite::Specializations => {
                cases.push(Box::new(move || {
                    verify_specializations(n).unwrap_or_else(|e| vec![ok_or_fail::<String>("-", "specializations", Err(e.to_string()))])
                }));
            }
            Suite::All => unreachable!("expanded above"),
        }
    }
    Ok(cases)
}

/// Runs `cases` on a pool of `jobs` threads; results keep case order.
pub fn run_cases(cases: &[Case], jobs: usize) -> Vec<Report> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool");
    pool.install(|| cases.par_iter().map(|c| c()).collect::<Vec<_>>()).into_iter().flatten().collect()
}

fn mobius_report(id: FamilyId, n: usize) -> Report {
    let mut r = Report::new(id.name(), "mobius", "-").with_n(n);
    match FamilyPoset::new(id, n) {
        Ok(fp) => {
            r.checked = fp.len();
            if let Some((x, rec, closed)) = fp.mobius_mismatches().into_iter().next() {
                r.fail(format!("{x}: recursion {rec}, closed form {closed}"));
            }
        }
        Err(e) => r.fail(e.to_string()),
    }
    r
}

fn write_reports(out: &mut dyn Write, reports: &[Report], format: Format) -> std::io::Result<()> {
    match format {
        Format::Text => {
            for r in reports {
                writeln!(out, "{r}")?;
            }
            let failed = reports.iter().filter(|r| !r.pass).count();
            writeln!(out, "{} cases, {} failed", reports.len(), failed)
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(reports).expect("reports serialize")),
        Format::Tsv => {
            writeln!(out, "{}", Report::tsv_header())?;
            for r in reports {
                writeln!(out, "{}", r.tsv())?;
            }
            Ok(())
        }
    }
}

fn status(pass: bool) -> i32 {
    if pass {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

/// Runs the command line `argv` (including the program name), writing to
/// `out` and `err`, and returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(UsageError(msg))) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAIL
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

enum Failure {
    Usage(UsageError),
    Io(std::io::Error),
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    if cli.jobs == 0 {
        return Err(UsageError("--jobs must be at least 1".into()).into());
    }
    let format = cli.format;
    match cli.command {
        Command::Verify { suite, family, n, mode, commuting, params } => {
            let p = params.meixner(None)?;
            if params.q.is_some() {
                return Err(UsageError("--q only applies to `counterexample`".into()).into());
            }
            let cfg = SuiteConfig { suite, families: parse_families(&family, &p)?, n, mode, commuting, format, jobs: cli.jobs };
            let cases = suite_cases(&cfg)?;
            let reports = run_cases(&cases, cfg.jobs);
            write_reports(out, &reports, format)?;
            Ok(status(reports.iter().all(|r| r.pass)))
        }
        Command::Enumerate { family, n } => {
            let id = parse_family_id(&family)?;
            check_bound(id, n)?;
            let elems = generate(id, n).map_err(|e| UsageError(e.to_string()))?;
            match format {
                Format::Json => {
                    let rows: Vec<_> = elems
                        .iter()
                        .map(|x| json!({"element": x.to_string(), "rank": rank(id, x), "open": x.num_open(), "closed": x.num_closed()}))
                        .collect();
                    writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("json"))?;
                }
                _ => {
                    if format == Format::Tsv {
                        writeln!(out, "element\trank\topen\tclosed")?;
                    }
                    for x in &elems {
                        writeln!(out, "{x}\t{}\t{}\t{}", rank(id, x), x.num_open(), x.num_closed())?;
                    }
                    if format == Format::Text {
                        writeln!(out, "{} elements", elems.len())?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Mobius { family, n } => {
            let id = parse_family_id(&family)?;
            check_bound(id, n)?;
            let fp = FamilyPoset::new(id, n).map_err(|e| UsageError(e.to_string()))?;
            let rec = fp.poset.mobius_from_bottom().ok_or_else(|| UsageError("poset has no bottom element".into()))?;
            let rows: Vec<(String, i64, i64)> =
                fp.elements.iter().zip(&rec).map(|(x, &m)| (x.to_string(), m, mobius_closed(id, x))).collect();
            let pass = rows.iter().all(|(_, a, b)| a == b);
            match format {
                Format::Json => {
                    let v: Vec<_> = rows.iter().map(|(x, a, b)| json!({"element": x, "recursion": a, "closed_form": b})).collect();
                    writeln!(out, "{}", serde_json::to_string_pretty(&json!({"family": id.name(), "n": n, "pass": pass, "rows": v})).expect("json"))?;
                }
                _ => {
                    writeln!(out, "element\trecursion\tclosed_form")?;
                    for (x, a, b) in &rows {
                        writeln!(out, "{x}\t{a}\t{b}")?;
                    }
                    if format == Format::Text {
                        writeln!(out, "{} {} n={n}: {} elements", if pass { "PASS" } else { "FAIL" }, id.name(), rows.len())?;
                    }
                }
            }
            Ok(status(pass))
        }
        Command::Counterexample { measure_i, measure_j } => {
            let parse = |flag: &str, s: &str| {
                parse_rational(s).ok_or_else(|| UsageError(format!("--{flag}: `{s}` is not a rational p/q")))
            };
            let c = q_counterexample(parse("measure-i", &measure_i)?, parse("measure-j", &measure_j)?);
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&c).expect("json"))?,
                _ => {
                    writeln!(out, "symbolic\t{}", c.symbolic)?;
                    writeln!(out, "indicator |I|={} |J|={}\t{}", c.measure_i, c.measure_j, c.numeric)?;
                    writeln!(out, "vanishes at q=0\t{}", c.vanishes_at_q0)?;
                    writeln!(out, "vanishes at q=1\t{}", c.vanishes_at_q1)?;
                    writeln!(out, "{}", if c.pass() { "PASS" } else { "FAIL" })?;
                }
            }
            Ok(status(c.pass()))
        }
        Command::Tn { max, formal, params } => {
            if max == 0 || max > FamilyId::Inc.max_n() + 1 {
                return Err(UsageError(format!("--max must be in 1..={}", FamilyId::Inc.max_n() + 1)).into());
            }
            let p = params.meixner(if formal { None } else { Some(default_params()) })?;
            let routes = compute_t(max - 1, &p).map_err(|e| UsageError(e.to_string()))?;
            let line = |v: &[PolyExpr]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            let agree = routes.agree();
            match format {
                Format::Json => {
                    let v = json!({
                        "direct": routes.direct.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        "series": routes.series.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        "agree": agree,
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
                }
                Format::Tsv => {
                    writeln!(out, "index\tdirect\tseries")?;
                    for (i, (a, b)) in routes.direct.iter().zip(&routes.series).enumerate() {
                        writeln!(out, "{}\t{a}\t{b}", i + 1)?;
                    }
                }
                Format::Text => {
                    writeln!(out, "{}", line(&routes.direct))?;
                    if agree {
                        writeln!(out, "routes agree")?;
                    } else {
                        writeln!(out, "routes differ; series: {}", line(&routes.series))?;
                    }
                }
            }
            Ok(status(agree))
        }
        Command::Tables { table, n, params } => {
            match table {
                Table::Counts => {
                    let tables: Vec<CountTable> = FamilyId::ALL
                        .into_iter()
                        .flat_map(|id| (0..=n.min(id.max_n())).map(move |k| counts(id, k)))
                        .collect::<Result<_, _>>()
                        .map_err(|e| UsageError(e.to_string()))?;
                    if format == Format::Json {
                        let rows: Vec<_> = tables.iter().flat_map(|t| t.json_rows()).collect();
                        writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("json"))?;
                    } else {
                        writeln!(out, "{TSV_HEADER}")?;
                        for t in &tables {
                            for row in t.tsv_rows() {
                                writeln!(out, "{row}")?;
                            }
                        }
                    }
                }
                Table::Inversion => {
                    let p = params.meixner(None)?;
                    let ic = inversion_coeffs(&p, n);
                    if format == Format::Json {
                        let v = json!({
                            "case": ic.case.to_string(),
                            "o": ic.o.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                            "c": ic.c.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        });
                        writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
                    } else {
                        writeln!(out, "k\to_k\tc_k")?;
                        for k in 1..=n {
                            writeln!(out, "{k}\t{}\t{}", ic.o(k), ic.c(k))?;
                        }
                        if format == Format::Text {
                            writeln!(out, "case {}", ic.case)?;
                        }
                    }
                }
                Table::Moments => {
                    if n > FamilyId::Inc.max_n() {
                        return Err(UsageError(format!("--n must be at most {}", FamilyId::Inc.max_n())).into());
                    }
                    let p = params.meixner(None)?;
                    let rows: Vec<(usize, PolyExpr)> = (0..=n)
                        .map(|k| (k, crate::meixner::meixner_moment(&vec![vec![Letter(0)]; k], &p, &Algebra::Commutative)))
                        .collect();
                    if format == Format::Json {
                        let v: Vec<_> = rows.iter().map(|(k, m)| json!({"n": k, "moment": m.to_string()})).collect();
                        writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
                    } else {
                        writeln!(out, "n\tmoment")?;
                        for (k, m) in &rows {
                            writeln!(out, "{k}\t{m}")?;
                        }
                    }
                }
            }
            Ok(EXIT_OK)
        }
    }
}
