//! Command-line front end: argument definitions and report builders.
//!
//! Every report embeds the tool version and the full run configuration, a
//! table, a summary, and a list of named property checks. Floats carry 15
//! significant digits. CSV output starts with `#`-prefixed header lines.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::One;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::asympt::{self, Direction};
use crate::error::{Error, Result};
use crate::graphwords::{self, TwoColoredGraph};
use crate::monodromy;
use crate::poly::{self, PolyInstance};
use crate::transfer::{self, DEFAULT_SPECTRUM_TOL};
use crate::words::{self, Alpha, BalanceSpec};

pub const TOOL: &str = "balwords";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug, Clone, Serialize)]
#[command(name = TOOL, version, about = "Balanced binary words: counts, growth exponents, spectra and monodromy")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "subcommand", rename_all = "lowercase")]
pub enum Command {
    /// |B| and |B~| for every length up to n.
    Count(CountArgs),
    /// e_{alpha,r} over an r-ladder.
    Growth(GrowthArgs),
    /// Eigenvalues of M(r) and counts in an interval.
    Spectrum(SpectrumArgs),
    /// Monodromy group of (x+1)^n - lambda x^p.
    Galois(GaloisArgs),
    /// Roots and critical data of (x+1)^n - lambda x^p.
    Poly(PolyArgs),
    /// Saddle-point estimate of C(r+s, r).
    Asympt(AsymptArgs),
    /// Balanced paths on a two-colored graph.
    Graph(GraphArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CountArgs {
    #[arg(long)]
    pub n: usize,
    /// Slope as `p/q`.
    #[arg(long, value_parser = parse_alpha)]
    #[serde(serialize_with = "ser_alpha")]
    pub alpha: Alpha,
    #[arg(long)]
    pub r: u32,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GrowthArgs {
    #[arg(long, value_parser = parse_alpha)]
    #[serde(serialize_with = "ser_alpha")]
    pub alpha: Alpha,
    /// `a..b` (inclusive) or a comma list.
    #[arg(long, value_parser = parse_r_list, default_value = "1..40")]
    pub r: RList,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SpectrumArgs {
    #[arg(long, value_parser = parse_alpha)]
    #[serde(serialize_with = "ser_alpha")]
    pub alpha: Alpha,
    #[arg(long, value_parser = parse_r_list)]
    pub r: RList,
    #[arg(long, default_value_t = 1.0)]
    pub lo: f64,
    #[arg(long, default_value_t = 3.5)]
    pub hi: f64,
    /// Points in the determinant sign scan.
    #[arg(long, default_value_t = 2000)]
    pub grid: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GaloisArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub p: u32,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct PolyArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub p: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: f64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct AsymptArgs {
    #[arg(long)]
    pub r: u64,
    #[arg(long)]
    pub s: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GraphArgs {
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long, value_parser = parse_alpha)]
    #[serde(serialize_with = "ser_alpha")]
    pub alpha: Alpha,
    #[arg(long, value_parser = parse_r_list)]
    pub r: RList,
    /// Path length for the count table.
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    /// Start vertices (comma list); all vertices by default.
    #[arg(long, value_delimiter = ',')]
    pub start: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RList(pub Vec<u32>);

fn ser_alpha<S: serde::Serializer>(a: &Alpha, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", a.numer(), a.denom()))
}

/// `p/q` only; decimal slopes are rejected.
pub fn parse_alpha(s: &str) -> std::result::Result<Alpha, String> {
    let (p, q) = s
        .split_once('/')
        .ok_or_else(|| format!("slope must be written p/q, got {s:?}"))?;
    let p: u64 = p.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let q: u64 = q.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if q == 0 || p == 0 || p >= q {
        return Err(format!("slope must lie strictly between 0 and 1, got {s}"));
    }
    Ok(Alpha::new(p, q))
}

pub fn parse_r_list(s: &str) -> std::result::Result<RList, String> {
    let bad = || format!("bad r list {s:?}");
    let values: Vec<u32> = if let Some((a, b)) = s.split_once("..") {
        let (a, b): (u32, u32) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        (a..=b).collect()
    } else {
        s.split(',')
            .map(|x| x.trim().parse().map_err(|_| bad()))
            .collect::<std::result::Result<_, _>>()?
    };
    if values.is_empty() || values.contains(&0) {
        return Err(format!("r list must be nonempty with r >= 1, got {s:?}"));
    }
    Ok(RList(values))
}

/// Rounds to 15 significant digits; non-finite values become strings.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(x.to_string());
    }
    let rounded: f64 = format!("{x:.14e}").parse().unwrap_or(x);
    json!(rounded)
}

fn big(x: &BigUint) -> Value {
    Value::String(x.to_string())
}

fn complex(z: Complex64) -> Value {
    json!([num(z.re), num(z.im)])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: Value,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    pub summary: Map<String, Value>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl Report {
    fn new(command: &str, config: Value) -> Self {
        Report {
            tool: TOOL.into(),
            version: VERSION.into(),
            command: command.into(),
            config,
            columns: Vec::new(),
            rows: Vec::new(),
            summary: Map::new(),
            checks: Vec::new(),
            passed: true,
        }
    }

    fn columns(&mut self, cols: &[&str]) {
        self.columns = cols.iter().map(|c| c.to_string()).collect();
    }

    fn check(&mut self, name: &str, passed: bool) {
        self.checks.push(Check {
            name: name.into(),
            passed,
        });
        self.passed &= passed;
    }

    fn put(&mut self, key: &str, v: Value) {
        self.summary.insert(key.into(), v);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("# tool: {} {}\n# command: {}\n", self.tool, self.version, self.command);
        out += &format!("# config: {}\n", self.config);
        for (k, v) in &self.summary {
            out += &format!("# {k}: {v}\n");
        }
        for c in &self.checks {
            out += &format!("# check {}: {}\n", c.name, if c.passed { "pass" } else { "FAIL" });
        }
        out += &format!("# passed: {}\n", self.passed);
        out += &self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|v| match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect();
            out += &cells.join(",");
            out.push('\n');
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

fn spec_of(alpha: Alpha, r: u32) -> Result<BalanceSpec> {
    BalanceSpec::from_alpha(alpha, r)
}

pub fn cmd_count(a: &CountArgs) -> Result<Report> {
    let spec = spec_of(a.alpha, a.r)?;
    let mut rep = Report::new("count", json!(a));
    rep.columns(&["n", "balanced", "unconstrained", "ratio"]);
    let mut cv = words::CountVector::initial(&spec);
    let mut dominated = true;
    for len in 0..=a.n {
        if len > 0 {
            cv.step(&spec);
        }
        let b = cv.total();
        let bt = words::count_unconstrained(len, &spec);
        dominated &= b <= bt;
        let ratio = (crate::util::big_ln(&b) - crate::util::big_ln(&bt)).exp();
        rep.rows.push(vec![json!(len), big(&b), big(&bt), num(ratio)]);
    }
    rep.put("balanced", big(&cv.total()));
    rep.put("unconstrained", big(&words::count_unconstrained(a.n, &spec)));
    rep.check("balanced_le_unconstrained", dominated);
    Ok(rep)
}

pub fn cmd_growth(a: &GrowthArgs) -> Result<Report> {
    let (p, n) = (*a.alpha.numer(), *a.alpha.denom());
    let mut rep = Report::new("growth", json!(a));
    rep.columns(&["r", "e_alpha_r", "tilde_e", "gap"]);
    let mut prev = 0.0;
    let mut monotone = true;
    let mut below = true;
    let mut tilde = 0.0;
    for &r in &a.r.0 {
        let g = transfer::growth_exponent(p, n, r)?;
        monotone &= g.e_alpha_r > prev;
        below &= g.perron < g.ceiling;
        prev = g.e_alpha_r;
        tilde = g.entropy_limit;
        rep.rows.push(vec![json!(r), num(g.e_alpha_r), num(g.entropy_limit), num(g.entropy_limit - g.e_alpha_r)]);
    }
    rep.put("tilde_e", num(tilde));
    rep.put("final_gap", num(tilde - prev));
    rep.check("e_increasing_in_r", monotone);
    rep.check("perron_below_ceiling", below);
    Ok(rep)
}

pub fn cmd_spectrum(a: &SpectrumArgs) -> Result<Report> {
    let (p, n) = (*a.alpha.numer(), *a.alpha.denom());
    let mut rep = Report::new("spectrum", json!(a));
    rep.columns(&["r", "count_in_interval", "oscillation_count", "determinant", "perron", "max_residual"]);
    let grid: Vec<f64> = (0..a.grid)
        .map(|i| a.lo + (a.hi - a.lo) * (i as f64 + 0.5) / a.grid as f64)
        .collect();
    let mut eig = Map::new();
    let mut prev = 0usize;
    let (mut nondecreasing, mut unimodular, mut agree, mut real) = (true, true, true, true);
    for &r in &a.r.0 {
        let m = transfer::build_m(p, n, r)?;
        let det = m.entries.determinant();
        let s = transfer::full_spectrum(&m, DEFAULT_SPECTRUM_TOL)?;
        let count = s.count_real_in(a.lo, a.hi);
        let osc = transfer::oscillation_scan(p, n, r, &grid)?;
        nondecreasing &= count >= prev;
        prev = count;
        unimodular &= det.is_one();
        agree &= osc == count;
        real &= s.real_positive_simple();
        rep.rows.push(vec![
            json!(r),
            json!(count),
            json!(osc),
            Value::String(det.to_string()),
            num(s.perron),
            num(s.max_residual()),
        ]);
        eig.insert(r.to_string(), Value::Array(s.eigenvalues().into_iter().map(complex).collect()));
    }
    rep.put("eigenvalues", Value::Object(eig));
    rep.check("counts_nondecreasing_in_r", nondecreasing);
    rep.check("determinant_one", unimodular);
    rep.check("oscillation_scan_agrees", agree);
    rep.check("spectrum_real_positive_simple", real);
    Ok(rep)
}

pub fn cmd_galois(a: &GaloisArgs) -> Result<Report> {
    let g = monodromy::galois_classify(a.n, a.p)?;
    let mut rep = Report::new("galois", json!(a));
    rep.columns(&["generator", "permutation", "cycle_type"]);
    let cycle_type = |p: &monodromy::Permutation| {
        Value::String(p.cycle_type().iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
    };
    rep.rows.push(vec![json!("loop_zero"), json!(g.zero_loop.to_string()), cycle_type(&g.zero_loop)]);
    rep.rows.push(vec![
        json!("loop_critical"),
        json!(g.critical_loop.permutation.to_string()),
        cycle_type(&g.critical_loop.permutation),
    ]);
    rep.put("t", json!(g.t));
    rep.put("order", big(&g.group.order));
    rep.put("expected_order", big(&g.expected_order));
    rep.put("is_symmetric", json!(g.group.is_symmetric));
    rep.put("blocks", json!(g.t_blocks));
    rep.put("quotient_order", json!(g.quotient_order));
    rep.put("quotient_cyclic", json!(g.quotient_cyclic));
    rep.put("kernel_order", json!(g.kernel_order.as_ref().map(|k| k.to_string())));
    rep.put("observed_pair", json!(g.critical_loop.observed_pair));
    rep.put("predicted_pair", json!(g.critical_loop.predicted_pair));
    rep.put("failures", json!(g.failures));
    rep.check("zero_loop_n_cycle", g.zero_loop.is_n_cycle());
    rep.check("critical_loop_transposition", g.critical_loop.permutation.is_transposition());
    rep.check("group_structure", g.passed);
    Ok(rep)
}

pub fn cmd_poly(a: &PolyArgs) -> Result<Report> {
    let inst = PolyInstance::real(a.n, a.p, a.lambda)?;
    let crit = poly::critical_data(a.n, a.p)?;
    let mut rep = Report::new("poly", json!(a));
    rep.put("lambda_crit", num(crit.lambda_crit));
    rep.put("lambda_crit_exact", json!(crit.lambda_crit_exact.to_string()));
    rep.put("double_root_formula", num(crit.double_root));
    let at_crit = ((a.lambda - crit.lambda_crit) / crit.lambda_crit).abs() < 1e-12;
    // Near the double root the cluster is only resolved to about sqrt(eps).
    let tol = if at_crit { 1e-6 } else { poly::DEFAULT_ROOT_TOL };
    let set = poly::roots(&inst, tol)?;
    rep.columns(&["re", "im", "modulus", "residual"]);
    for (x, res) in set.roots.iter().zip(&set.residuals) {
        rep.rows.push(vec![num(x.re), num(x.im), num(x.norm()), num(*res)]);
    }
    rep.put("min_separation", num(set.min_separation));
    rep.put("clustered", json!(set.clustered));
    if at_crit {
        let cluster: Vec<&Complex64> = set
            .roots
            .iter()
            .filter(|z| (*z - crit.double_root).norm() < 1e-4 * (1.0 + crit.double_root))
            .collect();
        let mean = cluster.iter().map(|z| z.re).sum::<f64>() / cluster.len().max(1) as f64;
        rep.put("double_root", num(mean));
        rep.check("double_root_at_p_over_q", cluster.len() == 2);
    }
    if a.lambda > 0.0 && a.lambda < crit.lambda_crit {
        let pairing = poly::modulus_pairing_check(&inst)?;
        rep.check("equal_moduli_are_conjugate", pairing.passed);
        if let Ok(case) = poly::ParityCase::of(a.n, a.p) {
            let ord = poly::modulus_ordering(a.n, a.p, a.lambda)?;
            rep.put("parity_case", json!(format!("{case:?}")));
            rep.put("labeled_moduli", Value::Array(ord.moduli.iter().map(|&m| num(m)).collect()));
            rep.check("modulus_ordering_pattern", ord.matched);
        }
    }
    rep.check("residuals_within_tolerance", set.max_residual() <= tol);
    rep.check("conjugation_closed", set.conjugation_closed(1e-6));
    Ok(rep)
}

pub fn cmd_asympt(a: &AsymptArgs) -> Result<Report> {
    let est = asympt::pemantle_estimate(Direction::new(a.r, a.s)?)?;
    let mut rep = Report::new("asympt", json!(a));
    rep.columns(&["k", "r", "s", "rel_error"]);
    let mut prev = f64::INFINITY;
    let mut decreasing = true;
    for k in [1u64, 2, 4] {
        let e = asympt::pemantle_estimate(est.dir.scaled(k))?;
        decreasing &= e.rel_error < prev;
        prev = e.rel_error;
        rep.rows.push(vec![json!(k), json!(e.dir.r), json!(e.dir.s), num(e.rel_error)]);
    }
    rep.put("x", num(est.point.x));
    rep.put("y", num(est.point.y));
    rep.put("q", num(est.q));
    rep.put("ln_f", num(est.ln_f));
    rep.put("exact", big(&est.exact));
    rep.put("rel_error", num(est.rel_error));
    rep.check("critical_point_residuals", est.point.d_residual < 1e-14 && est.point.direction_residual < 1e-14);
    rep.check("q_positive", est.q > 0.0);
    rep.check("rel_error_decreasing_under_scaling", decreasing);
    Ok(rep)
}

pub fn cmd_graph(a: &GraphArgs) -> Result<Report> {
    let text = fs::read_to_string(&a.file).map_err(|e| Error::Parse(format!("{}: {e}", a.file.display())))?;
    let g: TwoColoredGraph = text.parse()?;
    let start: Vec<usize> = if a.start.is_empty() { (0..g.vertices).collect() } else { a.start.clone() };
    let (p, period) = (*a.alpha.numer(), *a.alpha.denom());
    let mut rep = Report::new("graph", json!(a));
    rep.columns(&["r", "growth", "irreducible", "tilde", "gap"]);
    let scan = graphwords::conjecture_scan(&g, p, period, &a.r.0, &start)?;
    let mut monotone = true;
    for w in scan.windows(2) {
        monotone &= w[1].growth >= w[0].growth - 1e-12;
    }
    for row in &scan {
        rep.rows.push(vec![json!(row.r), num(row.growth), json!(row.irreducible), num(row.tilde), num(row.gap)]);
    }
    let last_r = *a.r.0.last().expect("nonempty");
    let spec = BalanceSpec::new(p, period, last_r)?;
    let counts: Vec<Value> = (0..=a.n)
        .map(|len| graphwords::count_balanced_paths(&g, len, &spec, &start).map(|t| big(&t.total())))
        .collect::<Result<_>>()?;
    rep.put("vertices", json!(g.vertices));
    rep.put("counts_at_last_r", Value::Array(counts));
    rep.check("growth_nondecreasing_in_r", monotone);
    if g == TwoColoredGraph::words() {
        let mut same = true;
        for len in 0..=a.n {
            same &= graphwords::count_balanced_paths(&g, len, &spec, &[0])?.counts
                == words::count_balanced_dp(len, &spec).b;
        }
        for row in &scan {
            let e = transfer::growth_exponent(p, period, row.r)?.e_alpha_r;
            same &= (e - row.growth).abs() <= 1e-9 * e;
        }
        rep.check("words_reduction", same);
    }
    Ok(rep)
}

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Count(a) => cmd_count(a),
        Command::Growth(a) => cmd_growth(a),
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Galois(a) => cmd_galois(a),
        Command::Poly(a) => cmd_poly(a),
        Command::Asympt(a) => cmd_asympt(a),
        Command::Graph(a) => cmd_graph(a),
    }
}

/// Runs, renders, and writes the report; returns whether all checks passed.
pub fn main_with(cli: &Cli) -> Result<bool> {
    let rep = run(cli)?;
    let text = rep.render(cli.format);
    match &cli.output {
        Some(path) => fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(rep.passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once(TOOL).chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn alpha_parsing() {
        assert_eq!(parse_alpha("2/4").unwrap(), Alpha::new(1, 2));
        assert!(parse_alpha("0.5").is_err());
        assert!(parse_alpha("3/2").is_err());
        assert_eq!(parse_r_list("1..3").unwrap().0, vec![1, 2, 3]);
        assert_eq!(parse_r_list("5,10").unwrap().0, vec![5, 10]);
        assert!(parse_r_list("0,1").is_err());
    }

    #[test]
    fn count_report() {
        let rep = run(&parse(&["count", "--n", "2", "--alpha", "1/2", "--r", "1"])).unwrap();
        assert_eq!(rep.summary["balanced"], json!("3"));
        assert_eq!(rep.summary["unconstrained"], json!("3"));
        assert!(rep.passed);
        let rep = run(&parse(&["count", "--n", "10", "--alpha", "1/2", "--r", "10"])).unwrap();
        assert_eq!(rep.summary["balanced"], json!("1024"));
    }

    #[test]
    fn poly_report_double_root() {
        let rep = run(&parse(&["poly", "--n", "2", "--p", "1", "--lambda", "4"])).unwrap();
        let x = rep.summary["double_root"].as_f64().unwrap();
        assert!((x - 1.0).abs() < 1e-6);
        assert!(rep.passed);
    }

    #[test]
    fn galois_report() {
        let rep = run(&parse(&["galois", "--n", "4", "--p", "2"])).unwrap();
        assert_eq!(rep.summary["order"], json!("8"));
        assert!(rep.passed);
        assert!(run(&parse(&["galois", "--n", "3", "--p", "3"])).is_err());
    }

    #[test]
    fn output_is_deterministic() {
        let cli = parse(&["--format", "csv", "asympt", "--r", "50", "--s", "50"]);
        let a = run(&cli).unwrap().render(Format::Csv);
        let b = run(&cli).unwrap().render(Format::Csv);
        assert_eq!(a, b);
        assert!(a.starts_with("# tool: balwords"));
        assert_eq!(num(1.0 / 3.0), json!(0.333333333333333));
    }
}
