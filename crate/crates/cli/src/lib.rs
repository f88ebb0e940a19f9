//! Command-line front end for `krs-core`: `decompose`, `verify`, `orbits`
//! and a seeded `selftest`.
//!
//! Commands render into an [`Outcome`] so that they can be driven from tests
//! without spawning a process. Exit codes: 0 pass, 1 verification failure,
//! 2 bad input, 3 budget exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use krs_core::decomposition::IdempotentFamily;
use krs_core::finite_field::{BaseField, Field};
use krs_core::numtheory::prime_power;
use krs_core::{
    abstract_decomposition, choose_t, divisor_census, enumerate_orbits, verify_decomposition, CirculantElement,
    CirculantParams, CirculantRing, DecompositionReport, Error, FieldTower, VerificationReport,
    DEFAULT_VERIFY_BUDGET,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub mod json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    Json,
    #[default]
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "krs", version, about = "Krull-Remak-Schmidt decomposition of circulant rings over F_q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report the abstract decomposition of C_{m/F_q}.
    Decompose(CliConfig),
    /// Build the primitive idempotents and check the decomposition explicitly.
    Verify(VerifyArgs),
    /// List the Frobenius orbits on the vanishing set.
    Orbits(CliConfig),
    /// Randomized ring and lifting property checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CliConfig {
    /// Order of the coefficient field (a prime power).
    #[arg(long)]
    pub q: u64,
    /// Cyclic orders, comma separated.
    #[arg(long, value_parser = parse_orders)]
    pub m: Orders,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest ring dimension prod(m) accepted by explicit computations.
    #[arg(long = "verify-budget", default_value_t = DEFAULT_VERIFY_BUDGET)]
    pub verify_budget: u64,
    /// Seed for randomized self-test subcommands.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
struct VerifyArgs {
    #[command(flatten)]
    config: CliConfig,
    /// Include the idempotents in the output.
    #[arg(long)]
    show_idempotents: bool,
}

#[derive(Debug, Clone, Args)]
struct SelftestArgs {
    #[command(flatten)]
    config: CliConfig,
    /// Number of random samples per property.
    #[arg(long, default_value_t = 100)]
    cases: usize,
}

/// A nonempty list of positive cyclic orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orders(pub Vec<u64>);

fn parse_orders(s: &str) -> Result<Orders, String> {
    let orders = s
        .split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<u64>() {
                Ok(0) => Err(format!("cyclic order must be positive, got {t:?}")),
                Ok(v) => Ok(v),
                Err(_) => Err(format!("{t:?} is not a positive integer")),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    if orders.is_empty() {
        return Err("m must be nonempty".into());
    }
    Ok(Orders(orders))
}

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

fn error_outcome(e: &Error) -> Outcome {
    match e {
        Error::BudgetExceeded { .. } | Error::FieldTooLarge { .. } => Outcome::error(EXIT_BUDGET, e),
        Error::Internal(_) => Outcome::error(EXIT_VERIFY_FAILED, e),
        _ => Outcome::error(EXIT_BAD_INPUT, e),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: e.exit_code(),
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome::ok(rendered)
            };
        }
    };
    match cli.command {
        Command::Decompose(config) => cmd_decompose(&config),
        Command::Verify(args) => cmd_verify(&args.config, args.show_idempotents),
        Command::Orbits(config) => cmd_orbits(&config),
        Command::Selftest(args) => cmd_selftest(&args.config, args.cases),
    }
}

fn tuple(v: &[u64]) -> String {
    let inner: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("({})", inner.join(","))
}

fn field_name(p: u64, e: u64) -> String {
    if e == 1 {
        format!("F_{p}")
    } else {
        format!("F_{{{p}^{e}}}")
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// The local model `F_{q^nu}[Y_1..Y_n]/(Y_i^{p^{v_i}} - 1)`.
fn component_name(report: &DecompositionReport, nu: u64, local: &[u64]) -> String {
    let vars: Vec<String> = (1..=local.len()).map(|i| format!("Y{i}")).collect();
    let rels: Vec<String> = local
        .iter()
        .enumerate()
        .map(|(i, &k)| if k == 1 { format!("Y{} - 1", i + 1) } else { format!("Y{}^{k} - 1", i + 1) })
        .collect();
    format!(
        "{}[{}]/({})",
        field_name(report.p, report.e as u64 * nu),
        vars.join(","),
        rels.join(", ")
    )
}

pub fn cmd_decompose(config: &CliConfig) -> Outcome {
    let report = match abstract_decomposition(config.q, &config.m.0) {
        Ok(r) => r,
        Err(e) => return error_outcome(&e),
    };
    match config.format {
        Format::Json => {
            let mut s = serde_json::to_string(&json::DecomposeJson::from(&report)).expect("serializable");
            s.push('\n');
            Outcome::ok(s)
        }
        Format::Text => Outcome::ok(decompose_text(&report)),
    }
}

fn decompose_text(report: &DecompositionReport) -> String {
    let mut s = String::new();
    let q_name = field_name(report.p, report.e as u64);
    let _ = writeln!(s, "ring: C_{}/{} (p = {}, e = {})", tuple(report.params.m()), q_name, report.p, report.e);
    let _ = writeln!(s, "dimension: {}", report.total_dimension);
    let _ = writeln!(s, "semisimple: {}", yes_no(report.is_semisimple));
    let _ = writeln!(s, "local: {}", yes_no(report.is_local));
    let _ = writeln!(s, "census over Div{}:", tuple(report.params.p_free()));
    let _ = writeln!(s, "  {:<16} {:>12} {:>6} {:>6}", "d", "phi_product", "nu", "eta");
    for row in &report.census {
        let _ = writeln!(s, "  {:<16} {:>12} {:>6} {:>6}", tuple(&row.d), row.phi_product, row.nu, row.eta);
    }
    let _ = writeln!(s, "components ({}):", report.component_count());
    for (nu, local, k) in report.aggregated() {
        let dim = nu * local.iter().product::<u64>();
        let _ = writeln!(s, "  {k} x {}  (dim {dim})", component_name(report, nu, &local));
    }
    s
}

pub fn cmd_verify(config: &CliConfig, show_idempotents: bool) -> Outcome {
    let v = match verify_decomposition(config.q, &config.m.0, config.verify_budget) {
        Ok(v) => v,
        Err(e) => return error_outcome(&e),
    };
    let family = if show_idempotents {
        match IdempotentFamily::new(config.q, &config.m.0) {
            Ok(f) => Some(f),
            Err(e) => return error_outcome(&e),
        }
    } else {
        None
    };
    let stdout = match config.format {
        Format::Json => {
            let mut s = serde_json::to_string(&json::VerifyJson::new(&v, family.as_ref())).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => verify_text(&v, family.as_ref()),
    };
    match v.first_failure() {
        None => Outcome::ok(stdout),
        Some(check) => Outcome {
            code: EXIT_VERIFY_FAILED,
            stdout,
            stderr: format!(
                "verification failed: {}: {}\n",
                check.name,
                check.witness.as_deref().unwrap_or("")
            ),
        },
    }
}

fn verify_text(v: &VerificationReport, family: Option<&IdempotentFamily>) -> String {
    let mut s = String::new();
    let r = &v.report;
    let _ = writeln!(
        s,
        "ring: C_{}/{}  dimension {}  t = {}",
        tuple(r.params.m()),
        field_name(r.p, r.e as u64),
        r.total_dimension,
        v.t
    );
    let _ = writeln!(s, "idempotents ({}):", v.components.len());
    for (i, c) in v.components.iter().enumerate() {
        let _ = writeln!(
            s,
            "  E_{} rep {} d {} nu {} dim {}",
            i,
            tuple(&c.representative),
            tuple(&c.order_tuple),
            c.field_degree,
            c.rank
        );
        if let Some(f) = family {
            let (_, e) = &f.entries()[i];
            let _ = writeln!(s, "      = {}", f.ring().format(e));
        }
    }
    let dims: Vec<String> = v.components.iter().map(|c| c.rank.to_string()).collect();
    let _ = writeln!(s, "component dimensions: [{}]", dims.join(","));
    let _ = writeln!(s, "radical dimension: {}", v.radical_rank);
    for c in &v.checks {
        match &c.witness {
            None => {
                let _ = writeln!(s, "  [pass] {}", c.name);
            }
            Some(w) => {
                let _ = writeln!(s, "  [FAIL] {}: {w}", c.name);
            }
        }
    }
    let _ = writeln!(s, "result: {}", if v.passed() { "pass" } else { "fail" });
    s
}

pub fn cmd_orbits(config: &CliConfig) -> Outcome {
    let (p, _) = match q_split(config.q) {
        Ok(x) => x,
        Err(e) => return error_outcome(&e),
    };
    let params = match CirculantParams::new(&config.m.0, p) {
        Ok(x) => x,
        Err(e) => return error_outcome(&e),
    };
    let orbits = enumerate_orbits(config.q, &params);
    let census = divisor_census(config.q, &params);
    match config.format {
        Format::Json => {
            let mut s = serde_json::to_string(&json::OrbitsJson::new(config.q, &params, &orbits, &census))
                .expect("serializable");
            s.push('\n');
            Outcome::ok(s)
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "orbits of x -> x^{} on mu{}:", config.q, tuple(params.p_free()));
            let _ = writeln!(s, "  {:<16} {:>6} {:<16} {:>6}", "representative", "size", "d", "nu");
            for o in &orbits {
                let _ = writeln!(
                    s,
                    "  {:<16} {:>6} {:<16} {:>6}",
                    tuple(o.representative()),
                    o.size(),
                    tuple(o.order_tuple()),
                    o.field_degree()
                );
            }
            let eta: u64 = census.iter().map(|r| r.eta).sum();
            let points: u64 = census.iter().map(|r| r.eta * r.nu).sum();
            let _ = writeln!(s, "orbit count: {}", orbits.len());
            let _ = writeln!(s, "census: sum eta = {eta}, sum eta*nu = {points}");
            Outcome::ok(s)
        }
    }
}

fn q_split(q: u64) -> Result<(u64, u32), Error> {
    if q < 2 {
        return Err(Error::NotPrimePower { q, factors: vec![] });
    }
    prime_power(q)
}

/// Outcome of one randomized property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
}

fn random_element<R: Rng>(ring: &CirculantRing<BaseField>, rng: &mut R) -> CirculantElement<BaseField> {
    let f = ring.field();
    let coeffs = (0..ring.dimension()).map(|_| f.element(rng.gen_range(0..f.order()))).collect();
    ring.from_coeffs(coeffs).expect("dimension matches")
}

/// Seeded ring-axiom and Frobenius-lift checks on `C_{m/F_q}`.
pub fn selftest(q: u64, m: &[u64], seed: u64, cases: usize) -> Result<Vec<PropertyResult>, Error> {
    let tower = FieldTower::new(q, 1)?;
    let ring = CirculantRing::new(tower.base().clone(), m)?;
    let sub = ring.semisimple_quotient();
    let t = choose_t(ring.params());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lift = |x: &CirculantElement<BaseField>| -> Result<CirculantElement<BaseField>, Error> {
        ring.frobenius_substitute(&ring.embed_representative(x)?, t)
    };
    let mut axioms = true;
    let mut lift_mul = true;
    let mut lift_section = true;
    for _ in 0..cases {
        let (a, b, c) = (random_element(&ring, &mut rng), random_element(&ring, &mut rng), random_element(&ring, &mut rng));
        let ab = ring.mul(&a, &b)?;
        axioms &= ab == ring.mul(&b, &a)?
            && ring.mul(&ab, &c)? == ring.mul(&a, &ring.mul(&b, &c)?)?
            && ring.mul(&a, &ring.add(&b, &c)?)? == ring.add(&ab, &ring.mul(&a, &c)?)?;
        let (x, y) = (random_element(&sub, &mut rng), random_element(&sub, &mut rng));
        lift_mul &= lift(&sub.mul(&x, &y)?)? == ring.mul(&lift(&x)?, &lift(&y)?)?;
        lift_section &= ring.quotient(&lift(&x)?)? == x;
    }
    Ok(vec![
        PropertyResult { name: "ring axioms".into(), cases, passed: axioms },
        PropertyResult { name: "lift preserves products".into(), cases, passed: lift_mul },
        PropertyResult { name: "quotient after lift is identity".into(), cases, passed: lift_section },
    ])
}

pub fn cmd_selftest(config: &CliConfig, cases: usize) -> Outcome {
    let size: u64 = config.m.0.iter().product();
    if size > config.verify_budget {
        return error_outcome(&Error::BudgetExceeded { size, budget: config.verify_budget });
    }
    let results = match selftest(config.q, &config.m.0, config.seed, cases) {
        Ok(r) => r,
        Err(e) => return error_outcome(&e),
    };
    let passed = results.iter().all(|r| r.passed);
    let stdout = match config.format {
        Format::Json => {
            let mut s = serde_json::to_string(&results).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &results {
                let _ = writeln!(s, "[{}] {} ({} cases)", if r.passed { "pass" } else { "FAIL" }, r.name, r.cases);
            }
            s
        }
    };
    Outcome {
        code: if passed { EXIT_OK } else { EXIT_VERIFY_FAILED },
        stdout,
        stderr: String::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_parse() {
        assert_eq!(parse_orders("5,5,8"), Ok(Orders(vec![5, 5, 8])));
        assert_eq!(parse_orders(" 3 , 4"), Ok(Orders(vec![3, 4])));
        assert!(parse_orders("").is_err());
        assert!(parse_orders("3,0").is_err());
        assert!(parse_orders("3,x").is_err());
    }

    #[test]
    fn component_names() {
        let r = abstract_decomposition(2, &[5, 5, 8]).unwrap();
        assert_eq!(component_name(&r, 4, &[1, 1, 8]), "F_{2^4}[Y1,Y2,Y3]/(Y1 - 1, Y2 - 1, Y3^8 - 1)");
        let r = abstract_decomposition(9, &[3]).unwrap();
        assert_eq!(component_name(&r, 1, &[3]), "F_{3^2}[Y1]/(Y1^3 - 1)");
    }

    #[test]
    fn selftest_is_seed_deterministic() {
        let a = selftest(4, &[6, 2], 11, 20).unwrap();
        assert!(a.iter().all(|r| r.passed));
        assert_eq!(a, selftest(4, &[6, 2], 11, 20).unwrap());
    }
}
