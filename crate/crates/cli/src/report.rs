use std::fmt::Write as _;
use std::io::IsTerminal;

use hypergn::multiseries::CPoint;
use hypergn::verify::IdentityResult;
use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// One evaluation; the same fields drive csv and json.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub n: usize,
    pub point: Vec<String>,
    pub method: String,
    pub value_re: f64,
    pub value_im: f64,
    pub err_est: f64,
    pub nodes_or_terms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Row {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.value_re, self.value_im)
    }

    pub fn ok(&self) -> bool {
        self.error.is_none()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityRow {
    pub suite: String,
    pub identity: String,
    pub checked: usize,
    pub tolerance: Option<f64>,
    pub worst_residual: f64,
    pub failures: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl From<&IdentityResult> for IdentityRow {
    fn from(r: &IdentityResult) -> Self {
        IdentityRow {
            suite: r.suite.name().to_string(),
            identity: r.identity.clone(),
            checked: r.checked,
            tolerance: r.tolerance,
            worst_residual: r.worst_residual,
            failures: r.failures,
            passed: r.passed(),
            counterexample: r.counterexample.clone(),
        }
    }
}

pub fn format_coord(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

pub fn point_strings(x: &CPoint) -> Vec<String> {
    x.as_slice().iter().map(|&z| format_coord(z)).collect()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn rows_csv(rows: &[Row]) -> String {
    let n = rows.iter().map(|r| r.point.len()).max().unwrap_or(0);
    let mut out = String::from("n,");
    for j in 1..=n {
        let _ = write!(out, "x{j},");
    }
    out.push_str("method,value_re,value_im,err_est,nodes_or_terms\n");
    for r in rows {
        let _ = write!(out, "{},", r.n);
        for j in 0..n {
            out.push_str(r.point.get(j).map(String::as_str).unwrap_or(""));
            out.push(',');
        }
        let _ = writeln!(
            out,
            "{},{:e},{:e},{:e},{}",
            r.method, r.value_re, r.value_im, r.err_est, r.nodes_or_terms
        );
    }
    out
}

pub fn rows_text(rows: &[Row]) -> String {
    let mut out = String::new();
    for r in rows {
        let head = format!("n={} x=({}) {:<12}", r.n, r.point.join(", "), r.method);
        match &r.error {
            Some(e) => {
                let _ = writeln!(out, "{head} error: {e}");
            }
            None => {
                let _ = writeln!(
                    out,
                    "{head} value = {:.16e} {:+.16e}i  err_est = {:.3e}  nodes_or_terms = {}",
                    r.value_re, r.value_im, r.err_est, r.nodes_or_terms
                );
            }
        }
    }
    out
}

pub fn identities_csv(rows: &[IdentityRow]) -> String {
    let mut out = String::from("suite,identity,checked,tolerance,worst_residual,failures,passed\n");
    for r in rows {
        let tol = r.tolerance.map(|t| format!("{t:e}")).unwrap_or_else(|| "exact".into());
        let _ = writeln!(
            out,
            "{},{},{},{},{:e},{},{}",
            r.suite,
            csv_field(&r.identity),
            r.checked,
            tol,
            r.worst_residual,
            r.failures,
            r.passed
        );
    }
    out
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report rows serialize");
    s.push('\n');
    s
}

/// Colour only on a terminal and only without `NO_COLOR`.
pub fn use_color() -> bool {
    std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && std::io::stdout().is_terminal()
}

pub fn paint_status(line: &str, color: bool) -> String {
    if !color {
        return line.to_string();
    }
    if let Some(rest) = line.strip_prefix("PASS") {
        format!("\x1b[32mPASS\x1b[0m{rest}")
    } else if let Some(rest) = line.strip_prefix("FAIL") {
        format!("\x1b[31mFAIL\x1b[0m{rest}")
    } else {
        line.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_round_trip() {
        for z in [Complex64::new(0.1, 0.0), Complex64::new(-0.2, 0.5), Complex64::new(0.0, -1e-3)] {
            assert_eq!(format_coord(z).parse::<Complex64>().unwrap(), z);
        }
    }

    #[test]
    fn csv_quotes_commas() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
    }

    #[test]
    fn paint_respects_flag() {
        assert_eq!(paint_status("PASS x", false), "PASS x");
        assert!(paint_status("FAIL x", true).contains("\x1b[31m"));
    }
}
