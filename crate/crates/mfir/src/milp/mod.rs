//! Solver-agnostic mixed-integer linear programming layer.
//!
//! Models are plain data: variables with bounds and kinds, linear rows with
//! optional lower/upper sides, indicator constraints (`guard = v` implies a
//! linear constraint), and a linear objective. Indicators are lowered to
//! big-M rows derived from variable bounds before a backend sees the model,
//! so backends only need plain MILP support.
//!
//! # Example
//!
//! ```
//! use mfir::milp::{Model, SolverOptions, VarKind, solve};
//!
//! let mut m = Model::new();
//! let x = m.add_var("x", VarKind::Integer, 0.0, 10.0);
//! let y = m.add_var("y", VarKind::Integer, 0.0, 10.0);
//! m.add_row_lo(vec![(x, 1.0), (y, 1.0)], 2.5);
//! m.set_objective(vec![(x, 1.0), (y, 2.0)], 0.0);
//! let out = solve(&m, &SolverOptions::default()).unwrap();
//! let a = out.assignment.unwrap();
//! assert_eq!(out.objective.unwrap().round(), 3.0);
//! assert_eq!(a.int(x), 3);
//! ```

mod highs_backend;
mod microlp_backend;

pub use highs_backend::HighsBackend;
pub use microlp_backend::MicrolpBackend;

use std::time::Duration;

use crate::{Error, Result};

/// Handle to a model variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarId(pub(crate) usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    Continuous,
    Integer,
    Binary,
}

#[derive(Debug, Clone)]
struct VarDef {
    name: String,
    kind: VarKind,
    lo: f64,
    hi: f64,
}

/// A linear row `lo <= sum(terms) <= hi`; either side may be infinite.
#[derive(Debug, Clone)]
pub struct Row {
    pub terms: Vec<(VarId, f64)>,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone)]
struct Indicator {
    guard: VarId,
    active_when: bool,
    terms: Vec<(VarId, f64)>,
    lo: f64,
    hi: f64,
    name: String,
}

/// A MILP under construction.
#[derive(Debug, Clone, Default)]
pub struct Model {
    vars: Vec<VarDef>,
    rows: Vec<Row>,
    indicators: Vec<Indicator>,
    objective: Vec<(VarId, f64)>,
    offset: f64,
}

fn coalesce(mut terms: Vec<(VarId, f64)>) -> Vec<(VarId, f64)> {
    terms.sort_by_key(|(v, _)| v.0);
    let mut out: Vec<(VarId, f64)> = Vec::with_capacity(terms.len());
    for (v, c) in terms {
        match out.last_mut() {
            Some((lv, lc)) if *lv == v => *lc += c,
            _ => out.push((v, c)),
        }
    }
    out.retain(|&(_, c)| c != 0.0);
    out
}

impl Model {
    pub fn new() -> Self {
        Model::default()
    }

    pub fn add_var(&mut self, name: impl Into<String>, kind: VarKind, lo: f64, hi: f64) -> VarId {
        let (lo, hi) = match kind {
            VarKind::Binary => (lo.max(0.0), hi.min(1.0)),
            _ => (lo, hi),
        };
        self.vars.push(VarDef {
            name: name.into(),
            kind,
            lo,
            hi,
        });
        VarId(self.vars.len() - 1)
    }

    pub fn binary(&mut self, name: impl Into<String>) -> VarId {
        self.add_var(name, VarKind::Binary, 0.0, 1.0)
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn indicator_count(&self) -> usize {
        self.indicators.len()
    }

    pub fn kind(&self, v: VarId) -> VarKind {
        self.vars[v.0].kind
    }

    pub fn bounds_of(&self, v: VarId) -> (f64, f64) {
        (self.vars[v.0].lo, self.vars[v.0].hi)
    }

    pub fn set_bounds(&mut self, v: VarId, lo: f64, hi: f64) {
        self.vars[v.0].lo = lo;
        self.vars[v.0].hi = hi;
    }

    pub fn add_row(&mut self, terms: Vec<(VarId, f64)>, lo: f64, hi: f64) {
        self.rows.push(Row {
            terms: coalesce(terms),
            lo,
            hi,
        });
    }

    pub fn add_row_lo(&mut self, terms: Vec<(VarId, f64)>, lo: f64) {
        self.add_row(terms, lo, f64::INFINITY);
    }

    pub fn add_row_hi(&mut self, terms: Vec<(VarId, f64)>, hi: f64) {
        self.add_row(terms, f64::NEG_INFINITY, hi);
    }

    pub fn add_row_eq(&mut self, terms: Vec<(VarId, f64)>, rhs: f64) {
        self.add_row(terms, rhs, rhs);
    }

    /// Require `lo <= sum(terms) <= hi` whenever the binary `guard` equals
    /// `active_when`. Lowered to big-M rows by [`Model::linearize_indicators`].
    pub fn add_indicator(
        &mut self,
        guard: VarId,
        active_when: bool,
        terms: Vec<(VarId, f64)>,
        lo: f64,
        hi: f64,
        name: impl Into<String>,
    ) {
        debug_assert_eq!(self.vars[guard.0].kind, VarKind::Binary);
        self.indicators.push(Indicator {
            guard,
            active_when,
            terms: coalesce(terms),
            lo,
            hi,
            name: name.into(),
        });
    }

    pub fn set_objective(&mut self, terms: Vec<(VarId, f64)>, offset: f64) {
        self.objective = coalesce(terms);
        self.offset = offset;
    }

    pub fn objective_terms(&self) -> &[(VarId, f64)] {
        &self.objective
    }

    pub fn objective_offset(&self) -> f64 {
        self.offset
    }

    /// Largest possible value of a linear expression under the variable
    /// bounds.
    pub fn sup(&self, terms: &[(VarId, f64)]) -> f64 {
        terms
            .iter()
            .map(|&(v, c)| {
                let d = &self.vars[v.0];
                c * if c > 0.0 { d.hi } else { d.lo }
            })
            .sum()
    }

    /// Smallest possible value of a linear expression under the variable
    /// bounds.
    pub fn inf(&self, terms: &[(VarId, f64)]) -> f64 {
        terms
            .iter()
            .map(|&(v, c)| {
                let d = &self.vars[v.0];
                c * if c > 0.0 { d.lo } else { d.hi }
            })
            .sum()
    }

    /// Lower all indicator constraints to big-M rows.
    ///
    /// The big-M constants come from the variable bounds, so they are as
    /// tight as the bounds allow; a side whose bound already implies the
    /// constraint produces no row at all. Fails if an involved variable has
    /// no finite bound on the needed side.
    pub fn linearize_indicators(&mut self) -> Result<()> {
        let indicators = std::mem::take(&mut self.indicators);
        for ind in indicators {
            if ind.hi.is_finite() {
                let sup = self.sup(&ind.terms);
                if sup.is_infinite() {
                    return Err(Error::UnboundedBigM(ind.name.clone()));
                }
                let m = sup - ind.hi;
                if m > 0.0 {
                    let mut terms = ind.terms.clone();
                    if ind.active_when {
                        terms.push((ind.guard, m));
                        self.add_row_hi(terms, ind.hi + m);
                    } else {
                        terms.push((ind.guard, -m));
                        self.add_row_hi(terms, ind.hi);
                    }
                }
            }
            if ind.lo > f64::NEG_INFINITY {
                let inf = self.inf(&ind.terms);
                if inf.is_infinite() {
                    return Err(Error::UnboundedBigM(ind.name.clone()));
                }
                let m = ind.lo - inf;
                if m > 0.0 {
                    let mut terms = ind.terms.clone();
                    if ind.active_when {
                        terms.push((ind.guard, -m));
                        self.add_row_lo(terms, ind.lo - m);
                    } else {
                        terms.push((ind.guard, m));
                        self.add_row_lo(terms, ind.lo);
                    }
                }
            }
        }
        Ok(())
    }

    /// Turn the given integer or binary variables into continuous ones,
    /// keeping their bounds. Used for LP relaxations of parts of a model
    /// whose integrality is implied by the rest.
    pub fn relax(&mut self, vars: &[VarId]) {
        for &v in vars {
            self.vars[v.0].kind = VarKind::Continuous;
        }
    }

    /// All integer and binary variables of the model.
    pub fn integral_vars(&self) -> Vec<VarId> {
        (0..self.vars.len())
            .filter(|&i| self.vars[i].kind != VarKind::Continuous)
            .map(VarId)
            .collect()
    }

    /// Serialize in CPLEX LP format (for debugging and external solvers).
    pub fn write_lp(&self) -> String {
        use std::fmt::Write;

        let name = |i: usize| -> String {
            let d = &self.vars[i];
            let clean: String = d
                .name
                .chars()
                .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
                .collect();
            if clean.is_empty() || clean.starts_with(|c: char| c.is_ascii_digit()) {
                format!("v{i}_{clean}")
            } else {
                format!("{clean}_{i}")
            }
        };
        let expr = |terms: &[(VarId, f64)]| -> String {
            if terms.is_empty() {
                return "0 v_zero".into();
            }
            let mut s = String::new();
            for (k, &(v, c)) in terms.iter().enumerate() {
                if k == 0 {
                    if c < 0.0 {
                        s.push_str("- ");
                    }
                } else {
                    s.push_str(if c < 0.0 { " - " } else { " + " });
                }
                let _ = write!(s, "{} {}", c.abs(), name(v.0));
            }
            s
        };

        let mut out = String::new();
        out.push_str("Minimize\n obj: ");
        out.push_str(&expr(&self.objective));
        if self.offset != 0.0 {
            let _ = write!(out, " + {} v_one", self.offset);
        }
        out.push_str("\nSubject To\n");
        for (i, r) in self.rows.iter().enumerate() {
            if r.lo == r.hi {
                let _ = writeln!(out, " c{i}: {} = {}", expr(&r.terms), r.lo);
            } else {
                if r.lo.is_finite() {
                    let _ = writeln!(out, " c{i}l: {} >= {}", expr(&r.terms), r.lo);
                }
                if r.hi.is_finite() {
                    let _ = writeln!(out, " c{i}u: {} <= {}", expr(&r.terms), r.hi);
                }
            }
        }
        out.push_str("Bounds\n");
        if self.offset != 0.0 {
            out.push_str(" v_one = 1\n");
        }
        if self.rows.iter().any(|r| r.terms.is_empty()) || self.objective.is_empty() {
            out.push_str(" v_zero = 0\n");
        }
        for (i, d) in self.vars.iter().enumerate() {
            let lo = if d.lo.is_finite() {
                format!("{}", d.lo)
            } else {
                "-inf".into()
            };
            let hi = if d.hi.is_finite() {
                format!("{}", d.hi)
            } else {
                "+inf".into()
            };
            let _ = writeln!(out, " {} <= {} <= {}", lo, name(i), hi);
        }
        let generals: Vec<usize> = (0..self.vars.len())
            .filter(|&i| self.vars[i].kind == VarKind::Integer)
            .collect();
        if !generals.is_empty() {
            out.push_str("General\n");
            for i in generals {
                let _ = writeln!(out, " {}", name(i));
            }
        }
        let binaries: Vec<usize> = (0..self.vars.len())
            .filter(|&i| self.vars[i].kind == VarKind::Binary)
            .collect();
        if !binaries.is_empty() {
            out.push_str("Binary\n");
            for i in binaries {
                let _ = writeln!(out, " {}", name(i));
            }
        }
        out.push_str("End\n");
        out
    }

}

// ---- solving ----

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    /// Proven optimal.
    Optimal,
    /// A feasible incumbent without a proof of optimality.
    Feasible,
    Infeasible,
    Unbounded,
    /// The time limit was hit; the assignment, if any, is the incumbent.
    TimedOut,
}

/// Variable values of a solved model. Integer and binary variables are
/// rounded to exact integers on access.
#[derive(Debug, Clone)]
pub struct Assignment {
    values: Vec<f64>,
    kinds: Vec<VarKind>,
}

impl Assignment {
    pub(crate) fn new(values: Vec<f64>, kinds: Vec<VarKind>) -> Self {
        Assignment { values, kinds }
    }

    pub fn value(&self, v: VarId) -> f64 {
        match self.kinds[v.0] {
            VarKind::Continuous => self.values[v.0],
            _ => self.values[v.0].round(),
        }
    }

    pub fn int(&self, v: VarId) -> i64 {
        self.values[v.0].round() as i64
    }

    pub fn bool(&self, v: VarId) -> bool {
        self.values[v.0] > 0.5
    }
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub assignment: Option<Assignment>,
    pub objective: Option<f64>,
    /// Relative MIP gap of the incumbent, when the backend reports one.
    pub gap: Option<f64>,
    pub wall: Duration,
}

#[derive(Debug, Clone)]
pub struct SolverOptions {
    pub time_limit: Option<Duration>,
    pub seed: i32,
    pub threads: u32,
    pub verbose: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            time_limit: None,
            seed: 0,
            threads: 1,
            verbose: false,
        }
    }
}

/// A MILP solver. Receives models whose indicators are already linearized.
pub trait Backend {
    fn name(&self) -> &'static str;
    fn solve_linear(&self, model: &Model, options: &SolverOptions) -> Result<SolveOutcome>;
}

/// Linearize indicators and solve with the given backend.
pub fn solve_with(
    backend: &dyn Backend,
    model: &Model,
    options: &SolverOptions,
) -> Result<SolveOutcome> {
    let mut m = model.clone();
    m.linearize_indicators()?;
    backend.solve_linear(&m, options)
}

/// Linearize indicators and solve with the default backend.
pub fn solve(model: &Model, options: &SolverOptions) -> Result<SolveOutcome> {
    solve_with(&HighsBackend, model, options)
}
