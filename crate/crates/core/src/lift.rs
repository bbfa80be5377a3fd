//! Lift verification: compose a solution `φ(y, z)` of a reduced equation with
//! the ansatz and measure `□u - F(u)` on spacetime samples.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::minkowski::{dalembertian, tidy};
use crate::reduction::{AnsatzPair, ReducedPDE};
use crate::symbolic::{evaluate, is_zero, Expr, Point, SamplePlan, Value, Var, ZeroVerdict};

/// A candidate solution to lift.
#[derive(Clone, Debug)]
pub struct LiftCase {
    pub pair: AnsatzPair,
    pub reduced: ReducedPDE,
    /// Solution of the reduced equation over the surface variables.
    pub phi: Expr,
    /// Nonlinearity as an expression in `u`.
    pub f: Expr,
    /// Sampling; `tolerance` is the absolute bound on the lifted residual.
    pub plan: SamplePlan,
}

/// Residual statistics over the accepted samples.
#[derive(Clone, Debug)]
pub struct ResidualStats {
    pub samples: usize,
    pub max: f64,
    pub mean: f64,
    /// Every sample evaluated to an exact rational zero.
    pub exact_zero: bool,
    pub worst: Option<Point>,
}

#[derive(Clone, Debug)]
pub enum LiftOutcome {
    /// `φ` does not solve the reduced equation; nothing was lifted.
    PreconditionFailed { verdict: ZeroVerdict },
    Lifted { stats: ResidualStats, passed: bool },
}

#[derive(Clone, Debug)]
pub struct LiftReport {
    /// `reduced(φ) - F(φ)` over the surface variables.
    pub reduced_residual: Expr,
    /// `u(x) = φ(y(x), z(x))`.
    pub lifted: Expr,
    /// `□u - F(u)` over spacetime.
    pub residual: Expr,
    pub outcome: LiftOutcome,
}

impl LiftReport {
    pub fn passed(&self) -> bool {
        matches!(self.outcome, LiftOutcome::Lifted { passed: true, .. })
    }

    pub fn precondition_failed(&self) -> bool {
        matches!(self.outcome, LiftOutcome::PreconditionFailed { .. })
    }

    pub fn stats(&self) -> Option<&ResidualStats> {
        match &self.outcome {
            LiftOutcome::Lifted { stats, .. } => Some(stats),
            LiftOutcome::PreconditionFailed { .. } => None,
        }
    }
}

/// Checks `φ` against the reduced equation first, then lifts it.
pub fn lift_and_check(case: &LiftCase) -> Result<LiftReport, Error> {
    let surface = case.reduced.surface();
    if let Some(v) = case.phi.variables().into_iter().find(|v| !surface.contains(v)) {
        return Err(Error::InvalidInput(format!("phi uses `{v}`; only {} and {} are allowed", surface[0], surface[1])));
    }
    if let Some(v) = case.f.variables().into_iter().find(|v| *v != Var::U) {
        return Err(Error::InvalidInput(format!("F uses `{v}`; only u is allowed")));
    }
    let reduced_residual = tidy(&(case.reduced.apply(&case.phi) - case.f.substitute_one(Var::U, &case.phi)));
    let lifted = tidy(&case.pair.pull_back(&case.phi));
    let residual = tidy(&(dalembertian(&lifted, case.pair.space()) - case.f.substitute_one(Var::U, &lifted)));
    // sampled without simplification, so the numbers do not lean on the rewriter
    let raw = raw_residual(&lifted, case);
    let verdict = is_zero(&reduced_residual, &case.plan)?;
    if !verdict.is_zero() {
        return Ok(LiftReport { reduced_residual, lifted, residual, outcome: LiftOutcome::PreconditionFailed { verdict } });
    }
    let mut vars: BTreeSet<Var> = raw.variables();
    vars.extend(case.pair.y().variables());
    vars.extend(case.pair.z().variables());
    let mut guards = raw.singular_guards();
    guards.extend(lifted.singular_guards());
    let values = case.plan.sample(&vars, &guards, |p| evaluate(&raw, p).ok())?;
    let mut max = 0.0f64;
    let mut sum = 0.0;
    let mut worst = None;
    for (p, v) in &values {
        let a = v.abs_f64();
        sum += a;
        if worst.is_none() || a > max {
            max = max.max(a);
            worst = Some(p.clone());
        }
    }
    let exact_zero = values.iter().all(|(_, v)| matches!(v, Value::Exact(_)) && v.is_zero());
    let stats = ResidualStats { samples: values.len(), max, mean: sum / values.len() as f64, exact_zero, worst };
    let passed = exact_zero || max < case.plan.tolerance;
    Ok(LiftReport { reduced_residual, lifted, residual, outcome: LiftOutcome::Lifted { stats, passed } })
}

fn raw_residual(lifted: &Expr, case: &LiftCase) -> Expr {
    let second = case.pair.space().spacetime().into_iter().map(|x| {
        let d = lifted.diff(x).diff(x);
        if x == Var::X(0) {
            d
        } else {
            -d
        }
    });
    Expr::sum(second) - case.f.substitute_one(Var::U, lifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use crate::frame::standard_frame;
    use crate::symbolic::parse;
    use crate::VariableSpace;

    fn p(s: &str) -> Expr {
        parse(s, &VariableSpace::default()).unwrap()
    }

    fn case(entry: usize, phi: &str, f: &str) -> LiftCase {
        let e = &catalog()[entry - 1];
        let pair = e.default_pair(&standard_frame()).unwrap();
        let mut plan = SamplePlan::default().with_tolerance(1e-10).with_count(100);
        if entry == 2 {
            plan = plan.exclude(pair.z().clone());
        }
        LiftCase { pair, reduced: e.expected_equation(), phi: p(phi), f: p(f), plan }
    }

    #[test]
    fn polynomial_plane_lift_is_exact() {
        let r = lift_and_check(&case(1, "y^2 + z^2", "0")).unwrap();
        let s = r.stats().unwrap();
        assert!(r.passed() && s.exact_zero && s.max == 0.0 && s.samples == 100);
    }

    #[test]
    fn trig_and_radial_lifts() {
        assert!(lift_and_check(&case(1, "sin(y + z)", "0")).unwrap().passed());
        let r = lift_and_check(&case(2, "(y - z)/z", "0")).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn nonsolution_is_a_precondition_failure() {
        let r = lift_and_check(&case(1, "y^2", "0")).unwrap();
        assert!(r.precondition_failed() && !r.passed());
    }

    #[test]
    fn nonlinear_right_side() {
        assert!(lift_and_check(&case(1, "y", "u")).unwrap().precondition_failed());
        // exp(y) solves φ_yy - φ_zz = φ
        assert!(lift_and_check(&case(1, "exp(y)", "u")).unwrap().passed());
    }

    #[test]
    fn foreign_variables_rejected() {
        assert!(lift_and_check(&case(1, "x0", "0")).is_err());
        assert!(lift_and_check(&case(1, "y", "y")).is_err());
    }
}
