use std::fmt;

use bentforge::census::{derivative_census_capped, double_count, BentSet, CensusJson};
use bentforge::classify::{
    verify_derivative_suite, verify_restrictions_suite, verify_support_fraction_suite,
    Counterexample, SuiteReport,
};
use bentforge::counting::{balanced_count, exact_distribution_capped, monomial_count};
use bentforge::{
    bound_report, cauchy_schwarz_bound, classify, convolution_bound, dual_bent, enumerate_bent,
    mobius, sample_mm_bent, wht, Anf, BooleanFunction, HyperplaneSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::{
    CensusArgs, Cli, Command, CountArgs, DerivativeArgs, InputArgs, Proposition, RestrictArgs,
    VerifyArgs,
};
use crate::output::Output;

/// An input or usage problem; the process exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

type Result<T> = std::result::Result<T, UsageError>;

fn flag<T>(name: &str, r: bentforge::Result<T>) -> Result<T> {
    r.map_err(|e| UsageError(format!("{name}: {e}")))
}

const TABLE_GRAMMAR: &str =
    "expected 2^n binary digits, 0x-prefixed hex, or 2^n/4 hex digits with --n";

pub fn run(cli: &Cli) -> Result<Output> {
    let cap = cli.max_anf_space;
    match &cli.command {
        Command::Wht(input) => wht_cmd(&read_input(input)?),
        Command::Anf(input) => Ok(anf_cmd(&read_input(input)?)),
        Command::Classify(input) => Ok(Output::new(json!(classify(&read_input(input)?)))),
        Command::Derivative(args) => derivative_cmd(args),
        Command::Restrict(args) => restrict_cmd(args),
        Command::Dual(input) => {
            let f = read_input(input)?;
            let d = flag("--tt", dual_bent(&f))?;
            Ok(Output::new(
                json!({ "n": f.num_vars(), "dual": table_json(&d) }),
            ))
        }
        Command::EnumerateBent(args) => enumerate_cmd(args.n),
        Command::Census(args) => census_cmd(args, cap),
        Command::Count(args) => count_cmd(args, cap),
        Command::Report(input) => Ok(report_cmd(&read_input(input)?)),
        Command::Verify(args) => verify_cmd(args, cap),
    }
}

fn read_input(input: &InputArgs) -> Result<BooleanFunction> {
    if let Some(tt) = &input.tt {
        return parse_table("--tt", tt, input.n);
    }
    if let Some(path) = &input.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("--file {}: {e}", path.display())))?;
        return parse_table("--file", text.trim(), input.n);
    }
    let n = input.n.expect("clap requires --n with --anf and --random");
    if n > bentforge::MAX_VARIABLES {
        return Err(UsageError(format!(
            "--n: {n} exceeds the maximum of {}",
            bentforge::MAX_VARIABLES
        )));
    }
    if let Some(poly) = &input.anf {
        let anf = Anf::parse(poly, n).map_err(|e| {
            UsageError(format!(
                "--anf: {e}; expected terms like x1*x2 joined by +, or 1"
            ))
        })?;
        return Ok(anf.to_function());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(input.seed);
    Ok(BooleanFunction::from_fn(n, |_| rng.gen()))
}

fn parse_table(name: &str, s: &str, n: Option<u32>) -> Result<BooleanFunction> {
    BooleanFunction::parse_truth_table(s, n)
        .map_err(|e| UsageError(format!("{name}: {e}; {TABLE_GRAMMAR}")))
}

fn table_json(f: &BooleanFunction) -> Value {
    json!({
        "n": f.num_vars(),
        "binary": f.to_binary_string(),
        "hex": f.to_hex_string(),
    })
}

fn hex_or_binary(f: &BooleanFunction) -> String {
    f.to_hex_string().unwrap_or_else(|| f.to_binary_string())
}

fn wht_cmd(f: &BooleanFunction) -> Result<Output> {
    let s = wht(f);
    let rows = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(y, w)| vec![y.to_string(), w.to_string()])
        .collect();
    Ok(Output::new(json!({ "n": f.num_vars(), "coeffs": s })).with_table(vec!["y", "W"], rows))
}

fn anf_json(anf: &Anf) -> Value {
    let monomials: Vec<Vec<u32>> = anf
        .monomials()
        .iter()
        .map(|&m| (0..32).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect())
        .collect();
    json!({
        "n": anf.num_vars(),
        "degree": anf.degree(),
        "anf": anf.to_string(),
        "monomials": monomials,
        "coefficients": anf.coefficients().to_binary_string(),
    })
}

fn anf_cmd(f: &BooleanFunction) -> Output {
    let anf = mobius(f);
    let rows = anf
        .monomials()
        .iter()
        .map(|&m| {
            let one = Anf::from_monomials(f.num_vars(), &[m]).expect("monomial of f");
            vec![m.to_string(), m.count_ones().to_string(), one.to_string()]
        })
        .collect();
    Output::new(anf_json(&anf)).with_table(vec!["mask", "degree", "monomial"], rows)
}

fn derivative_cmd(args: &DerivativeArgs) -> Result<Output> {
    let f = read_input(&args.input)?;
    let (name, a) = match (args.direction, args.coordinate) {
        (Some(a), _) => ("--direction", a),
        (None, Some(i)) => {
            if i == 0 || i > f.num_vars() {
                return Err(UsageError(format!(
                    "--coordinate: {i} out of range 1..={}",
                    f.num_vars()
                )));
            }
            ("--coordinate", 1 << (i - 1))
        }
        (None, None) => unreachable!("clap requires a direction"),
    };
    let d = if args.reduce {
        flag(name, f.reduce_derivative_along(a))?
    } else {
        flag(name, f.derivative(a))?
    };
    Ok(Output::new(json!({
        "n": f.num_vars(),
        "direction": a,
        "reduced": args.reduce,
        "derivative": table_json(&d),
        "degree": d.degree(),
        "weight": d.weight(),
    })))
}

fn restrict_cmd(args: &RestrictArgs) -> Result<Output> {
    let f = read_input(&args.input)?;
    let h = flag("--normal", HyperplaneSpec::new(args.normal, args.side == 1))?;
    let r = flag("--normal", f.restrict(&h))?;
    Ok(Output::new(json!({
        "n": f.num_vars(),
        "normal": args.normal,
        "side": args.side,
        "restriction": table_json(&r),
        "classification": classify(&r),
    })))
}

fn enumerate_cmd(n: u32) -> Result<Output> {
    let set = flag("--n", enumerate_bent(n))?;
    let tables: Vec<String> = set.functions().iter().map(hex_or_binary).collect();
    let rows = tables
        .iter()
        .enumerate()
        .map(|(i, t)| vec![i.to_string(), t.clone()])
        .collect();
    Ok(Output::new(json!({
        "n": n,
        "count": set.len(),
        "exhaustive": true,
        "functions": tables,
    }))
    .with_table(vec!["index", "table"], rows))
}

fn bent_set(n: u32, samples: usize, seed: u64) -> Result<BentSet> {
    if n <= 4 {
        flag("--n", enumerate_bent(n))
    } else {
        flag("--samples", sample_mm_bent(n, samples, seed))
    }
}

fn census_cmd(args: &CensusArgs, cap: u32) -> Result<Output> {
    let bents = bent_set(args.n, args.samples, args.seed)?;
    let report = flag("--max-anf-space", derivative_census_capped(&bents, cap))?;
    let mut json = json!(CensusJson {
        report: &report,
        dump_functions: args.dump_functions,
    });
    json["seed"] = if bents.is_exhaustive() {
        Value::Null
    } else {
        json!(args.seed)
    };
    Ok(Output::new(json))
}

fn distribution_rows(d: &bentforge::WeightDistribution) -> Vec<Vec<String>> {
    d.iter()
        .map(|(t, c)| vec![t.to_string(), c.to_string()])
        .collect()
}

fn count_cmd(args: &CountArgs, cap: u32) -> Result<Output> {
    if let Some(nk) = &args.exact {
        let d = flag("--exact", exact_distribution_capped(nk[0], nk[1], cap))?;
        let mut json = json!(d);
        json["balanced"] = json!(balanced_count(&d).to_string());
        let rows = distribution_rows(&d);
        return Ok(Output::new(json).with_table(vec!["t", "count"], rows));
    }
    if let Some(nk) = &args.bound {
        let (n, k) = (nk[0], nk[1]);
        if n == 0 || k == 0 {
            return Err(UsageError(format!(
                "--bound: n and k must both be at least 1, got {n} {k}"
            )));
        }
        let base = flag("--bound", exact_distribution_capped(n - 1, k - 1, cap))?;
        let d = convolution_bound(&base);
        let mut json = json!(d);
        json["balanced"] = json!(d.get(1 << (n - 1)).to_string());
        json["cauchySchwarz"] = json!(cauchy_schwarz_bound(&base).to_string());
        let rows = distribution_rows(&d);
        return Ok(Output::new(json).with_table(vec!["t", "count"], rows));
    }
    let n = args.report.expect("clap requires one mode");
    Ok(Output::new(json!(flag("--report", bound_report(n))?)))
}

fn report_cmd(f: &BooleanFunction) -> Output {
    let c = classify(f);
    let dual = dual_bent(f).ok().map(|d| table_json(&d));
    Output::new(json!({
        "n": f.num_vars(),
        "table": table_json(f),
        "weight": f.weight(),
        "balanced": f.is_balanced(),
        "anf": anf_json(&mobius(f)),
        "spectrum": wht(f),
        "classification": c,
        "dual": dual,
    }))
}

fn thm2(n: u32, cap: u32) -> Result<SuiteReport> {
    let mut cases = 0;
    let mut failures = Vec::new();
    for k in 1..=n {
        if monomial_count(n, k) > u64::from(cap) {
            break;
        }
        let r = flag("--n", double_count(n, k, cap))?;
        cases += 1;
        if !r.holds() {
            failures.push(Counterexample {
                proposition: "thm2".into(),
                n,
                function: String::new(),
                hyperplane: None,
                direction: None,
                left: Vec::new(),
                right: Vec::new(),
                detail: format!(
                    "k = {k}: {} Walsh zeros, expected {}",
                    r.total_zeros,
                    r.expected_zeros()
                ),
            });
        }
    }
    if cases == 0 {
        return Err(UsageError(format!(
            "--max-anf-space: no degree bound fits in 2^{cap} ANFs at n = {n}"
        )));
    }
    Ok(SuiteReport {
        proposition: "thm2".into(),
        n,
        cases,
        failures,
    })
}

fn verify_cmd(args: &VerifyArgs, cap: u32) -> Result<Output> {
    let n = args.n;
    let props: &[Proposition] = match args.prop {
        Proposition::All => &[
            Proposition::Bentpla1,
            Proposition::Shap1,
            Proposition::Prop1,
            Proposition::Thm2,
        ],
        ref p => std::slice::from_ref(p),
    };
    let needs_bents = props.iter().any(|p| *p != Proposition::Thm2);
    let bents = if needs_bents {
        Some(bent_set(n, args.samples, args.seed)?)
    } else {
        None
    };
    let mut reports = Vec::new();
    for p in props {
        let functions = || bents.as_ref().expect("loaded above").functions();
        let report = match p {
            Proposition::Bentpla1 => flag("--n", verify_restrictions_suite(n, functions()))?,
            Proposition::Shap1 => flag(
                "--n",
                verify_derivative_suite(n, functions(), args.all_directions),
            )?,
            Proposition::Prop1 => flag("--n", verify_support_fraction_suite(n, functions()))?,
            Proposition::Thm2 => thm2(n, cap)?,
            Proposition::All => unreachable!("expanded above"),
        };
        reports.push(report);
    }
    let passed = reports.iter().all(SuiteReport::passed);
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                r.proposition.clone(),
                r.n.to_string(),
                r.cases.to_string(),
                r.failures.len().to_string(),
            ]
        })
        .collect();
    let json = if reports.len() == 1 {
        json!(reports[0])
    } else {
        json!(reports)
    };
    let mut out = Output::new(json).with_table(vec!["proposition", "n", "cases", "failures"], rows);
    out.passed = passed;
    Ok(out)
}
