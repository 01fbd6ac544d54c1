use std::fmt;

use clap::ValueEnum;
use hypergn::closedforms::{gn_closed, ClosedFormEvaluator};
use hypergn::contour::{gn_via_multicontour, gn_via_recursion, ContourSpec, GnEvaluator, UnitEvaluator};
use hypergn::multiseries::{eval_gn_series, CPoint, Evaluation, SeriesEvaluator, TruncationSpec};
use hypergn::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Method {
    Series,
    Recursion,
    Multicontour,
    Closed,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Recursion => "recursion",
            Method::Multicontour => "multicontour",
            Method::Closed => "closed",
        }
    }

    /// Largest `n` the method accepts, if bounded.
    pub fn max_n(self) -> Option<usize> {
        match self {
            Method::Multicontour | Method::Closed => Some(3),
            _ => None,
        }
    }

    pub fn check_n(self, n: usize) -> Result<()> {
        match self.max_n() {
            Some(m) if n > m => Err(Error::Parameter(format!("method {} requires n <= {m}, got n = {n}", self.name()))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exact closed form below dimension four, series above.
pub fn base_evaluator(m: usize) -> Box<dyn GnEvaluator> {
    match m {
        0 => Box::new(UnitEvaluator),
        1..=3 => Box::new(ClosedFormEvaluator { n: m }),
        _ => Box::new(SeriesEvaluator::new(m)),
    }
}

pub fn evaluate(method: Method, x: &CPoint, tol: f64) -> Result<Evaluation> {
    let n = x.dim();
    if n == 0 {
        return Err(Error::Parameter("empty point".into()));
    }
    method.check_n(n)?;
    match method {
        Method::Series => eval_gn_series(x, &TruncationSpec { target_tol: tol, ..Default::default() }),
        Method::Recursion => gn_via_recursion(x, base_evaluator(n - 1).as_ref(), &ContourSpec::default(), tol),
        Method::Multicontour => gn_via_multicontour(x, &ContourSpec::multicontour_default(), tol),
        Method::Closed => gn_closed(x).map(Evaluation::exact),
    }
}

/// One trapezoid refinement at a fixed starting node count (no adaptive stopping).
pub fn evaluate_fixed_nodes(method: Method, x: &CPoint, nodes: usize) -> Result<Evaluation> {
    let n = x.dim();
    method.check_n(n)?;
    match method {
        Method::Recursion => {
            let c = ContourSpec { nodes, ..ContourSpec::default() };
            gn_via_recursion(x, base_evaluator(n - 1).as_ref(), &c, f64::INFINITY)
        }
        Method::Multicontour => {
            let c = ContourSpec { nodes, ..ContourSpec::multicontour_default() };
            gn_via_multicontour(x, &c, f64::INFINITY)
        }
        other => Err(Error::Parameter(format!("method {other} has no quadrature nodes"))),
    }
}

/// Reference value for convergence studies.
pub fn reference(x: &CPoint) -> Result<Evaluation> {
    if x.dim() <= 3 {
        if let Ok(v) = gn_closed(x) {
            return Ok(Evaluation::exact(v));
        }
    }
    eval_gn_series(x, &TruncationSpec::default())
}

/// Process exit code for a failed evaluation.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_convergence() {
        3
    } else {
        2
    }
}
