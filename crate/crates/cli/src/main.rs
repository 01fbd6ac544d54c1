mod methods;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use hypergn::multiseries::{CPoint, Evaluation};
use hypergn::verify::{run_suite, Suite, VerifyConfig};
use hypergn::Error;
use num_complex::Complex64;

use methods::{evaluate, evaluate_fixed_nodes, exit_code, reference, Method};
use report::{Format, IdentityRow, Row};

#[derive(Parser)]
#[command(name = "hypergn", version, about = "Evaluate and cross-check the squared-multinomial hypergeometric family G_n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate G_n at one point with one or more methods.
    Eval(EvalArgs),
    /// Run identity suites and report the worst residual per identity.
    Verify(VerifyArgs),
    /// Evaluate every method over a rectangular grid.
    Table(TableArgs),
    /// Trapezoid convergence against node count.
    Quadstudy(QuadArgs),
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    output: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// Number of variables; inferred from --point when omitted.
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated coordinates, e.g. 0.1,-0.05 or 0.1+0.02i,0.03.
    #[arg(long, allow_hyphen_values = true)]
    point: String,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "series")]
    method: Vec<Method>,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = Suite::from_str)]
    suite: Suite,
    /// Restrict dimension-dependent suites to this n.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 12)]
    max_degree: u32,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Random rational points per (n, j).
    #[arg(long, default_value_t = 50)]
    points: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    n: usize,
    /// Per-axis values: `lo:hi:count` or a comma list.
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "series,recursion")]
    method: Vec<Method>,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct QuadArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    point: String,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "recursion")]
    method: Vec<Method>,
    #[arg(long, default_value_t = 16)]
    min_nodes: usize,
    #[arg(long, default_value_t = 512)]
    max_nodes: usize,
    #[command(flatten)]
    output: OutputArgs,
}

/// Report text plus exit status.
struct Outcome {
    body: String,
    code: i32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, output) = match &cli.command {
        Command::Eval(a) => (run_eval(a), &a.output),
        Command::Verify(a) => (Ok(run_verify(a)), &a.output),
        Command::Table(a) => (run_table(a), &a.output),
        Command::Quadstudy(a) => (run_quadstudy(a), &a.output),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    match &output.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &outcome.body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{}", outcome.body),
    }
    ExitCode::from(outcome.code as u8)
}

fn parse_point(s: &str, n: Option<usize>) -> Result<CPoint, Error> {
    let coords = s
        .split(',')
        .map(|c| {
            let c = c.trim();
            Complex64::from_str(c).map_err(|_| Error::Parameter(format!("cannot parse coordinate {c:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(n) = n {
        if coords.len() != n {
            return Err(Error::Parameter(format!("--n {n} but --point has {} coordinates", coords.len())));
        }
    }
    if coords.is_empty() {
        return Err(Error::Parameter("--point is empty".into()));
    }
    Ok(CPoint::new(coords))
}

fn parse_axis(s: &str) -> Result<Vec<f64>, Error> {
    let bad = |what: &str| Error::Parameter(format!("bad --grid {s:?}: {what}"));
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("expected lo:hi:count"));
        }
        let lo: f64 = parts[0].trim().parse().map_err(|_| bad("lo"))?;
        let hi: f64 = parts[1].trim().parse().map_err(|_| bad("hi"))?;
        let count: usize = parts[2].trim().parse().map_err(|_| bad("count"))?;
        match count {
            0 => Err(bad("count must be positive")),
            1 => Ok(vec![lo]),
            _ => Ok((0..count).map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64).collect()),
        }
    } else {
        s.split(',').map(|v| v.trim().parse::<f64>().map_err(|_| bad(v))).collect()
    }
}

fn check_methods(methods: &[Method], n: usize) -> Result<Vec<Method>, Error> {
    let mut out = Vec::new();
    for &m in methods {
        m.check_n(n)?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    Ok(out)
}

fn row(x: &CPoint, method: Method, r: &Result<Evaluation, Error>) -> Row {
    let (value, err_est, used, error) = match r {
        Ok(e) => (e.value, e.error_estimate, e.terms_used, None),
        Err(e) => (Complex64::new(f64::NAN, f64::NAN), f64::NAN, 0, Some(e.to_string())),
    };
    Row {
        n: x.dim(),
        point: report::point_strings(x),
        method: method.name().to_string(),
        // adding +0 turns -0 into +0 so reports do not flip sign on zero
        value_re: value.re + 0.0,
        value_im: value.im + 0.0,
        err_est,
        nodes_or_terms: used,
        error,
    }
}

fn render_rows(rows: &[Row], format: Format, extra_text: &str) -> String {
    match format {
        Format::Text => format!("{}{extra_text}", report::rows_text(rows)),
        Format::Csv => report::rows_csv(rows),
        Format::Json => report::to_json(&rows),
    }
}

/// Exit code of the first failed evaluation, 0 if none failed.
fn first_error_code(errors: &[Error]) -> i32 {
    errors.first().map_or(0, exit_code)
}

fn run_eval(a: &EvalArgs) -> Result<Outcome, Error> {
    let x = parse_point(&a.point, a.n)?;
    let methods = check_methods(&a.method, x.dim())?;
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for &m in &methods {
        let r = evaluate(m, &x, a.tol);
        rows.push(row(&x, m, &r));
        if let Err(e) = r {
            eprintln!("error: method {m}: {e}");
            errors.push(e);
        }
    }
    let mut deltas = String::new();
    let ok: Vec<&Row> = rows.iter().filter(|r| r.ok()).collect();
    for (i, p) in ok.iter().enumerate() {
        for q in &ok[i + 1..] {
            deltas.push_str(&format!(
                "delta {} - {} = {:.3e}\n",
                p.method,
                q.method,
                (p.value() - q.value()).norm()
            ));
        }
    }
    Ok(Outcome { body: render_rows(&rows, a.output.output, &deltas), code: first_error_code(&errors) })
}

fn run_verify(a: &VerifyArgs) -> Outcome {
    let cfg = VerifyConfig { seed: a.seed, n: a.n, max_degree: a.max_degree, rational_points: a.points };
    let report = run_suite(a.suite, &cfg);
    let rows: Vec<IdentityRow> = report.results.iter().map(IdentityRow::from).collect();
    let body = match a.output.output {
        Format::Text => {
            let color = a.output.out.is_none() && report::use_color();
            let mut s = String::new();
            for r in &report.results {
                s.push_str(&report::paint_status(&r.to_string(), color));
                s.push('\n');
            }
            let passed = report.results.iter().filter(|r| r.passed()).count();
            s.push_str(&format!("{passed}/{} identities passed\n", report.results.len()));
            s
        }
        Format::Csv => report::identities_csv(&rows),
        Format::Json => report::to_json(&rows),
    };
    if let Some(f) = report.first_failure() {
        let mut repro = format!("hypergn verify --suite {} --seed {} --max-degree {}", f.suite, a.seed, a.max_degree);
        if let Some(n) = a.n {
            repro.push_str(&format!(" --n {n}"));
        }
        repro.push_str(&format!(" --points {}", a.points));
        eprintln!("first failure: [{}] {}", f.suite, f.identity);
        if let Some(c) = &f.counterexample {
            eprintln!("counterexample: {c}");
        }
        eprintln!("reproduce: {repro}");
    }
    Outcome { body, code: if report.passed() { 0 } else { 1 } }
}

fn run_table(a: &TableArgs) -> Result<Outcome, Error> {
    if a.n == 0 {
        return Err(Error::Parameter("--n must be positive".into()));
    }
    let axis = parse_axis(&a.grid)?;
    let methods = check_methods(&a.method, a.n)?;
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    let mut idx = vec![0usize; a.n];
    loop {
        let x = CPoint::real(&idx.iter().map(|&i| axis[i]).collect::<Vec<_>>());
        for &m in &methods {
            let r = evaluate(m, &x, a.tol);
            rows.push(row(&x, m, &r));
            if let Err(e) = r {
                errors.push(e);
            }
        }
        // last coordinate varies fastest
        let mut k = a.n;
        while k > 0 {
            idx[k - 1] += 1;
            if idx[k - 1] < axis.len() {
                break;
            }
            idx[k - 1] = 0;
            k -= 1;
        }
        if k == 0 {
            break;
        }
    }
    if !errors.is_empty() {
        eprintln!("{} of {} evaluations failed; first: {}", errors.len(), rows.len(), errors[0]);
    }
    Ok(Outcome { body: render_rows(&rows, a.output.output, ""), code: first_error_code(&errors) })
}

fn run_quadstudy(a: &QuadArgs) -> Result<Outcome, Error> {
    let x = parse_point(&a.point, a.n)?;
    let methods = check_methods(&a.method, x.dim())?;
    if a.min_nodes < 16 || a.max_nodes < a.min_nodes {
        return Err(Error::Parameter("need 16 <= --min-nodes <= --max-nodes".into()));
    }
    let exact = reference(&x)?.value;
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for &m in &methods {
        let mut nodes = a.min_nodes;
        while nodes <= a.max_nodes {
            let r = evaluate_fixed_nodes(m, &x, nodes).map(|e| Evaluation { error_estimate: (e.value - exact).norm(), ..e });
            rows.push(row(&x, m, &r));
            if let Err(e) = r {
                errors.push(e);
                break;
            }
            nodes *= 2;
        }
    }
    let note = format!("reference = {:.16e} {:+.16e}i; err_est is |value - reference|\n", exact.re, exact.im);
    Ok(Outcome { body: render_rows(&rows, a.output.output, &note), code: first_error_code(&errors) })
}
