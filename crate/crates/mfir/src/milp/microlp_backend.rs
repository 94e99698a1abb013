//! Pure-Rust simplex/branch-and-bound backend.
//!
//! Slower than HiGHS but with a completely independent code path, which
//! makes it useful for cross-checking solutions on small models.

use std::time::Instant;

use microlp::{ComparisonOp, OptimizationDirection, Problem};

use super::{Assignment, Backend, Model, SolveOutcome, SolveStatus, SolverOptions, VarKind};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, Default)]
pub struct MicrolpBackend;

impl Backend for MicrolpBackend {
    fn name(&self) -> &'static str {
        "microlp"
    }

    fn solve_linear(&self, model: &Model, options: &SolverOptions) -> Result<SolveOutcome> {
        let start = Instant::now();
        let mut obj = vec![0.0; model.var_count()];
        for &(v, c) in &model.objective {
            obj[v.0] = c;
        }
        let mut problem = Problem::new(OptimizationDirection::Minimize);
        let mut vars = Vec::with_capacity(model.var_count());
        for (i, d) in model.vars.iter().enumerate() {
            let v = match d.kind {
                VarKind::Continuous => problem.add_var(obj[i], (d.lo, d.hi)),
                VarKind::Integer | VarKind::Binary => {
                    let lo = d.lo.max(i32::MIN as f64) as i32;
                    let hi = d.hi.min(i32::MAX as f64) as i32;
                    problem.add_integer_var(obj[i], (lo, hi))
                }
            };
            vars.push(v);
        }
        for row in &model.rows {
            let expr: Vec<(microlp::Variable, f64)> =
                row.terms.iter().map(|&(v, c)| (vars[v.0], c)).collect();
            if row.lo == row.hi {
                problem.add_constraint(expr, ComparisonOp::Eq, row.lo);
            } else {
                if row.lo.is_finite() {
                    problem.add_constraint(expr.clone(), ComparisonOp::Ge, row.lo);
                }
                if row.hi.is_finite() {
                    problem.add_constraint(expr, ComparisonOp::Le, row.hi);
                }
            }
        }
        if let Some(limit) = options.time_limit {
            problem.set_time_limit(limit);
        }
        let kinds: Vec<VarKind> = model.vars.iter().map(|d| d.kind).collect();
        match problem.solve() {
            Ok(microlp::SolveOutcome::Solution(sol)) => {
                let values: Vec<f64> = vars.iter().map(|&v| sol.var_value_raw(v)).collect();
                let status = match sol.status() {
                    microlp::SolutionStatus::Optimal => SolveStatus::Optimal,
                    microlp::SolutionStatus::Feasible => {
                        if sol.termination_reason() == microlp::TerminationReason::TimeLimit {
                            SolveStatus::TimedOut
                        } else {
                            SolveStatus::Feasible
                        }
                    }
                };
                Ok(SolveOutcome {
                    status,
                    objective: Some(sol.objective() + model.offset),
                    assignment: Some(Assignment::new(values, kinds)),
                    gap: sol.gap(),
                    wall: start.elapsed(),
                })
            }
            Ok(microlp::SolveOutcome::Interrupted(_)) => Ok(SolveOutcome {
                status: SolveStatus::TimedOut,
                assignment: None,
                objective: None,
                gap: None,
                wall: start.elapsed(),
            }),
            Err(microlp::Error::Infeasible) => Ok(SolveOutcome {
                status: SolveStatus::Infeasible,
                assignment: None,
                objective: None,
                gap: None,
                wall: start.elapsed(),
            }),
            Err(microlp::Error::Unbounded) => Ok(SolveOutcome {
                status: SolveStatus::Unbounded,
                assignment: None,
                objective: None,
                gap: None,
                wall: start.elapsed(),
            }),
            Err(e) => Err(Error::Solver(format!("microlp failed: {e:?}"))),
        }
    }
}
