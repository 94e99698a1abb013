//! HiGHS-based backend, the default for everything.

use std::time::Instant;

use highs::{HighsModelStatus, HighsSolutionStatus, RowProblem, Sense};

use super::{Assignment, Backend, Model, SolveOutcome, SolveStatus, SolverOptions, VarKind};
use crate::{Error, Result};

/// Branch-and-cut via HiGHS. Deterministic with the default single-thread
/// options.
#[derive(Debug, Clone, Copy, Default)]
pub struct HighsBackend;

impl HighsBackend {
    fn run(&self, model: &Model, options: &SolverOptions, presolve: bool) -> highs::SolvedModel {
        let mut obj = vec![0.0; model.var_count()];
        for &(v, c) in &model.objective {
            obj[v.0] = c;
        }
        let mut pb = RowProblem::default();
        let mut cols = Vec::with_capacity(model.var_count());
        for (i, d) in model.vars.iter().enumerate() {
            let col = match d.kind {
                VarKind::Continuous => pb.add_column(obj[i], d.lo..=d.hi),
                VarKind::Integer | VarKind::Binary => pb.add_integer_column(obj[i], d.lo..=d.hi),
            };
            cols.push(col);
        }
        for row in &model.rows {
            let factors: Vec<(highs::Col, f64)> =
                row.terms.iter().map(|&(v, c)| (cols[v.0], c)).collect();
            pb.add_row(row.lo..=row.hi, &factors);
        }
        let mut m = pb.optimise(Sense::Minimise);
        m.set_option("output_flag", options.verbose);
        m.set_option("random_seed", options.seed);
        if options.threads <= 1 {
            m.set_option("parallel", "off");
            m.set_option("threads", 1i32);
        } else {
            m.set_option("threads", options.threads as i32);
        }
        if !presolve {
            m.set_option("presolve", "off");
        }
        if let Some(limit) = options.time_limit {
            m.set_option("time_limit", limit.as_secs_f64());
        }
        m.solve()
    }
}

impl Backend for HighsBackend {
    fn name(&self) -> &'static str {
        "highs"
    }

    fn solve_linear(&self, model: &Model, options: &SolverOptions) -> Result<SolveOutcome> {
        let start = Instant::now();
        let mut solved = self.run(model, options, true);
        if solved.status() == HighsModelStatus::UnboundedOrInfeasible {
            // Presolve cannot always tell the two apart; a solve without it
            // can.
            solved = self.run(model, options, false);
        }
        let kinds: Vec<VarKind> = model.vars.iter().map(|d| d.kind).collect();
        let take = |solved: &highs::SolvedModel, status: SolveStatus| {
            let values = solved.get_solution().columns().to_vec();
            let gap = solved.mip_gap();
            SolveOutcome {
                status,
                objective: Some(solved.objective_value() + model.offset),
                assignment: Some(Assignment::new(values, kinds.clone())),
                gap: gap.is_finite().then_some(gap),
                wall: start.elapsed(),
            }
        };
        let none = |status: SolveStatus| SolveOutcome {
            status,
            assignment: None,
            objective: None,
            gap: None,
            wall: start.elapsed(),
        };
        match solved.status() {
            HighsModelStatus::Optimal => Ok(take(&solved, SolveStatus::Optimal)),
            HighsModelStatus::Infeasible => Ok(none(SolveStatus::Infeasible)),
            HighsModelStatus::Unbounded => Ok(none(SolveStatus::Unbounded)),
            HighsModelStatus::UnboundedOrInfeasible => Ok(none(SolveStatus::Infeasible)),
            HighsModelStatus::ReachedTimeLimit => {
                if solved.primal_solution_status() == HighsSolutionStatus::Feasible {
                    Ok(take(&solved, SolveStatus::TimedOut))
                } else {
                    Ok(none(SolveStatus::TimedOut))
                }
            }
            HighsModelStatus::ModelEmpty => Ok(SolveOutcome {
                status: SolveStatus::Optimal,
                assignment: Some(Assignment::new(vec![], vec![])),
                objective: Some(model.offset),
                gap: None,
                wall: start.elapsed(),
            }),
            other => Err(Error::Solver(format!("highs returned {other:?}"))),
        }
    }
}
