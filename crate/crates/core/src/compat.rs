//! Necessary compatibility conditions for the canonical d'Alembert–Hamilton
//! systems, the `h = 1/R_vw` solution families, nilpotence orders of
//! `h∂`, and the principal-minor identities on explicit solutions.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;

use crate::error::Error;
use crate::matrix::{minor_sums, minor_sums_bruteforce, power_traces, Matrix, Scalar};
use crate::minkowski::{gradient, mdot, mixed_hessian, tidy, MixedHessian, NumericMatrix};
use crate::space::VariableSpace;
use crate::symbolic::{evaluate, is_zero, Expr, Point, SamplePlan, Var, ZeroVerdict};

/// Absolute tolerance for the sampled matrix identities.
pub const MATRIX_TOLERANCE: f64 = 1e-8;

/// Which canonical system a report concerns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    Elliptic,
    Hyperbolic,
    Parabolic,
    FirstOrder,
    OneVariable,
}

impl Case {
    pub const ALL: [Case; 5] = [Case::Elliptic, Case::Hyperbolic, Case::Parabolic, Case::FirstOrder, Case::OneVariable];

    pub fn name(self) -> &'static str {
        match self {
            Case::Elliptic => "elliptic",
            Case::Hyperbolic => "hyperbolic",
            Case::Parabolic => "parabolic",
            Case::FirstOrder => "first-order",
            Case::OneVariable => "one-variable",
        }
    }

    /// Surface variables the case's data live on.
    pub fn surface(self) -> [Var; 2] {
        match self {
            Case::Elliptic => [Var::V, Var::VStar],
            Case::OneVariable => [Var::Y, Var::Z],
            _ => [Var::V, Var::W],
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Case::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown case `{s}`; expected one of elliptic, hyperbolic, parabolic, first-order, one-variable")))
    }
}

/// Smallest `m` with `(h∂)^m Φ ≡ 0`, or the bound that was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilpotenceOrder {
    Order(usize),
    Exceeds(usize),
}

impl NilpotenceOrder {
    pub fn within(self, bound: usize) -> bool {
        matches!(self, NilpotenceOrder::Order(m) if m <= bound)
    }
}

impl fmt::Display for NilpotenceOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NilpotenceOrder::Order(m) => write!(f, "{m}"),
            NilpotenceOrder::Exceeds(m) => write!(f, "> {m}"),
        }
    }
}

/// Largest residual of a sampled identity for one value of `k`.
#[derive(Clone, Debug)]
pub struct KResidual {
    pub k: usize,
    pub max_residual: f64,
    /// Sample with the largest residual.
    pub worst: Option<Point>,
}

/// Whether a condition gates the check or is the check itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Precondition,
    Condition,
    /// Reported for information, never affects the verdict.
    Informational,
}

#[derive(Clone, Debug)]
pub enum Evidence {
    Identity { residual: Expr, verdict: ZeroVerdict },
    Nilpotence { operator: String, order: NilpotenceOrder, bound: usize },
    Residuals { table: Vec<KResidual>, tolerance: f64, samples: usize },
}

/// One named condition with its outcome.
#[derive(Clone, Debug)]
pub struct Condition {
    pub name: String,
    pub stage: Stage,
    pub passed: bool,
    pub evidence: Evidence,
}

/// The outcome of one checker.
#[derive(Clone, Debug)]
pub struct CheckVerdict {
    pub name: String,
    pub conditions: Vec<Condition>,
    pub notes: Vec<String>,
}

impl CheckVerdict {
    fn new(name: &str) -> Self {
        CheckVerdict { name: name.to_string(), conditions: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.conditions.iter().filter(|c| c.stage != Stage::Informational).all(|c| c.passed)
    }

    pub fn precondition_failed(&self) -> bool {
        self.conditions.iter().any(|c| c.stage == Stage::Precondition && !c.passed)
    }

    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }

    /// Nilpotence orders found, by operator.
    pub fn nilpotence_orders(&self) -> Vec<(&str, NilpotenceOrder)> {
        self.conditions
            .iter()
            .filter_map(|c| match &c.evidence {
                Evidence::Nilpotence { operator, order, .. } => Some((operator.as_str(), *order)),
                _ => None,
            })
            .collect()
    }

    fn identity(&mut self, name: &str, stage: Stage, residual: Expr, plan: &SamplePlan) -> Result<bool, Error> {
        let verdict = is_zero(&residual, plan)?;
        let passed = verdict.is_zero();
        self.conditions.push(Condition { name: name.into(), stage, passed, evidence: Evidence::Identity { residual, verdict } });
        Ok(passed)
    }

    fn nilpotence(&mut self, name: &str, h: &Expr, phi: &Expr, var: Var, n: usize, plan: &SamplePlan) -> Result<(), Error> {
        let bound = n + 1;
        let order = nilpotence_order(h, phi, var, bound + 1, plan)?;
        let operator = if h.is_one() { format!("∂_{var}") } else { format!("({h})∂_{var}") };
        self.conditions.push(Condition {
            name: name.into(),
            stage: Stage::Condition,
            passed: order.within(bound),
            evidence: Evidence::Nilpotence { operator, order, bound },
        });
        Ok(())
    }
}

/// All checks run for one case.
#[derive(Clone, Debug)]
pub struct CompatReport {
    pub case: Case,
    pub checks: Vec<CheckVerdict>,
}

impl CompatReport {
    /// True only when every check passed.
    pub fn necessary_conditions_met(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(CheckVerdict::passed)
    }
}

fn reject_vanishing(name: &str, e: &Expr, plan: &SamplePlan) -> Result<(), Error> {
    if is_zero(e, plan)?.is_zero() {
        return Err(Error::InvalidInput(format!("{name} vanishes identically")));
    }
    Ok(())
}

fn check_lambda(lambda: i64, allowed: &[i64]) -> Result<(), Error> {
    if !allowed.contains(&lambda) {
        return Err(Error::InvalidInput(format!("lambda must be one of {allowed:?}, got {lambda}")));
    }
    Ok(())
}

/// Smallest `m ≤ max_order` with `(h ∂_var)^m Φ ≡ 0`.
pub fn nilpotence_order(h: &Expr, phi: &Expr, var: Var, max_order: usize, plan: &SamplePlan) -> Result<NilpotenceOrder, Error> {
    if max_order == 0 {
        return Err(Error::InvalidInput("max_order must be at least 1".into()));
    }
    let mut current = phi.clone();
    for m in 1..=max_order {
        current = tidy(&(h.clone() * current.diff(var)));
        if is_zero(&current, plan)?.is_zero() {
            return Ok(NilpotenceOrder::Order(m));
        }
    }
    Ok(NilpotenceOrder::Exceeds(max_order))
}

/// `F = λ Φ_u / Φ` with `∂_u^{n+1} Φ ≡ 0`, for `u_μ u_μ = λ`.
pub fn check_statement1(f: &Expr, phi: &Expr, lambda: i64, n: usize, plan: &SamplePlan) -> Result<CheckVerdict, Error> {
    check_lambda(lambda, &[-1, 0, 1])?;
    reject_vanishing("Phi", phi, plan)?;
    let mut out = CheckVerdict::new("statement-1");
    let l = Expr::int(lambda);
    out.identity("F*Phi - lambda*Phi_u", Stage::Condition, f.clone() * phi.clone() - l * phi.diff(Var::U), plan)?;
    out.identity(&format!("d^{}Phi/du^{}", n + 1, n + 1), Stage::Condition, phi.diff_n(Var::U, n + 1), plan)?;
    if lambda == 0 {
        out.notes.push("lambda = 0 forces F = 0".into());
    }
    Ok(out)
}

/// `F = λ / (N (u + C))` for `N ∈ {1, 2, 3}`; `F ≡ 0` for `N = 0`.
pub fn check_statement2_form(f: &Expr, big_n: i64, c: &BigRational, lambda: i64, plan: &SamplePlan) -> Result<CheckVerdict, Error> {
    if !(0..=3).contains(&big_n) {
        return Err(Error::InvalidInput(format!("N must be in 0..=3, got {big_n}")));
    }
    check_lambda(lambda, &[-1, 0, 1])?;
    let mut out = CheckVerdict::new("statement-2");
    let target = if big_n == 0 {
        Expr::zero()
    } else {
        Expr::int(lambda) / (Expr::int(big_n) * (Expr::var(Var::U) + Expr::constant(c.clone())))
    };
    out.identity("F - lambda/(N*(u + C))", Stage::Condition, f.clone() - target, plan)?;
    Ok(out)
}

/// `(v, w)` family built from a generator `R` with `h = 1/R_vw`.
#[derive(Clone, Debug)]
pub struct HyperbolicFamily {
    pub generator: Expr,
    pub f: Vec<Expr>,
    pub g: Vec<Expr>,
    pub h: Expr,
    pub phi: Expr,
    pub psi: Expr,
    /// `h Φ_w / Φ`.
    pub v: Expr,
    /// `h Ψ_v / Ψ`.
    pub w: Expr,
}

impl HyperbolicFamily {
    /// Builds `Φ = Σ f_k(v) R_v^k`, `Ψ = Σ g_k(w) R_w^k` and the quotients.
    /// Coefficient lists may run up to index `n + 1`.
    pub fn build(generator: &Expr, f: &[Expr], g: &[Expr], n: usize, plan: &SamplePlan) -> Result<Self, Error> {
        for (name, list, own) in [("f", f, Var::V), ("g", g, Var::W)] {
            if list.len() > n + 2 {
                return Err(Error::InvalidInput(format!("{name} has {} coefficients; at most n + 2 = {} allowed", list.len(), n + 2)));
            }
            if let Some(e) = list.iter().find(|e| e.variables().iter().any(|v| *v != own)) {
                return Err(Error::InvalidInput(format!("{name}-coefficient `{e}` must depend on {own} only")));
            }
        }
        if let Some(v) = generator.variables().into_iter().find(|v| *v != Var::V && *v != Var::W) {
            return Err(Error::InvalidInput(format!("generator uses `{v}`; only v and w are allowed")));
        }
        let (rv, rw) = (generator.diff(Var::V), generator.diff(Var::W));
        let rvw = tidy(&rv.diff(Var::W));
        if is_zero(&rvw, plan)?.is_zero() {
            return Err(Error::InvalidInput("R_vw vanishes identically".into()));
        }
        let h = tidy(&rvw.powi(-1));
        let series = |coeffs: &[Expr], base: &Expr| tidy(&Expr::sum(coeffs.iter().enumerate().map(|(k, c)| c.clone() * base.powi(k as i64))));
        let phi = series(f, &rv);
        let psi = series(g, &rw);
        reject_vanishing("Phi", &phi, plan)?;
        reject_vanishing("Psi", &psi, plan)?;
        let v = tidy(&(h.clone() * phi.diff(Var::W) / phi.clone()));
        let w = tidy(&(h.clone() * psi.diff(Var::V) / psi.clone()));
        Ok(HyperbolicFamily { generator: generator.clone(), f: f.to_vec(), g: g.to_vec(), h, phi, psi, v, w })
    }

    /// `Σ k f_k R_v^k / Σ f_k R_v^k`, the closed form printed beside the
    /// quotient; equals `R_v · V`, so it is only reported.
    pub fn displayed_v(&self) -> Expr {
        let rv = self.generator.diff(Var::V);
        let top = Expr::sum(self.f.iter().enumerate().map(|(k, c)| Expr::int(k as i64) * c.clone() * rv.powi(k as i64)));
        tidy(&(top / self.phi.clone()))
    }

    pub fn displayed_w(&self) -> Expr {
        let rw = self.generator.diff(Var::W);
        let top = Expr::sum(self.g.iter().enumerate().map(|(k, c)| Expr::int(k as i64) * c.clone() * rw.powi(k as i64)));
        tidy(&(top / self.psi.clone()))
    }

    /// `(h∂_w)Φ - Σ k f_k R_v^{k-1}`: `h∂_w` acts as `d/dR_v` on the series.
    pub fn operator_residual(&self) -> Expr {
        let rv = self.generator.diff(Var::V);
        let series = Expr::sum(self.f.iter().enumerate().skip(1).map(|(k, c)| Expr::int(k as i64) * c.clone() * rv.powi(k as i64 - 1)));
        self.h.clone() * self.phi.diff(Var::W) - series
    }
}

/// Elliptic system with `v*` (written `vs`) kept formally independent of `v`.
pub fn check_theorem1(v_rhs: &Expr, h: &Expr, phi: &Expr, n: usize, plan: &SamplePlan) -> Result<CheckVerdict, Error> {
    reject_vanishing("Phi", phi, plan)?;
    let mut out = CheckVerdict::new("theorem-1");
    out.identity("V*Phi - h*Phi_vs", Stage::Condition, v_rhs.clone() * phi.clone() - h.clone() * phi.diff(Var::VStar), plan)?;
    out.nilpotence("(h d/dvs)^(n+1) Phi", h, phi, Var::VStar, n, plan)?;
    Ok(out)
}

/// Hyperbolic system `v·v = w·w = 0, v·w = h(v, w)`.
pub fn check_theorem2(
    v_rhs: &Expr,
    w_rhs: &Expr,
    h: &Expr,
    phi: &Expr,
    psi: &Expr,
    n: usize,
    plan: &SamplePlan,
) -> Result<CheckVerdict, Error> {
    reject_vanishing("Phi", phi, plan)?;
    reject_vanishing("Psi", psi, plan)?;
    let mut out = CheckVerdict::new("theorem-2");
    out.identity("V*Phi - h*Phi_w", Stage::Condition, v_rhs.clone() * phi.clone() - h.clone() * phi.diff(Var::W), plan)?;
    out.identity("W*Psi - h*Psi_v", Stage::Condition, w_rhs.clone() * psi.clone() - h.clone() * psi.diff(Var::V), plan)?;
    out.nilpotence("(h d/dw)^(n+1) Phi", h, phi, Var::W, n, plan)?;
    out.nilpotence("(h d/dv)^(n+1) Psi", h, psi, Var::V, n, plan)?;
    Ok(out)
}

pub const PARABOLIC_OBSTRUCTION: &str =
    "the wave equation cannot be reduced to a parabolic equation by this ansatz: w only enters the reduced first-order equation as a parameter";

/// Parabolic system `v·w = 0, v·v = λ, w·w = 0`.
pub fn check_theorem3(v_rhs: &Expr, w_rhs: &Expr, phi: &Expr, lambda: i64, n: usize, plan: &SamplePlan) -> Result<CheckVerdict, Error> {
    check_lambda(lambda, &[-1, 1])?;
    reject_vanishing("Phi", phi, plan)?;
    let mut out = CheckVerdict::new("theorem-3");
    out.identity("W", Stage::Condition, w_rhs.clone(), plan)?;
    out.identity("V*Phi - lambda*Phi_v", Stage::Condition, v_rhs.clone() * phi.clone() - Expr::int(lambda) * phi.diff(Var::V), plan)?;
    out.identity(&format!("d^{}Phi/dv^{}", n + 1, n + 1), Stage::Condition, phi.diff_n(Var::V, n + 1), plan)?;
    out.notes.push(PARABOLIC_OBSTRUCTION.into());
    Ok(out)
}

pub const FIRST_ORDER_NOTE: &str = "no first-order reduced equation exists: only the algebraic equation F(u) = 0 remains";

/// First-order system `v·v = w·w = v·w = 0`.
pub fn check_first_order(v_rhs: &Expr, w_rhs: &Expr, plan: &SamplePlan) -> Result<CheckVerdict, Error> {
    let mut out = CheckVerdict::new("first-order");
    out.identity("V", Stage::Condition, v_rhs.clone(), plan)?;
    out.identity("W", Stage::Condition, w_rhs.clone(), plan)?;
    out.notes.push(FIRST_ORDER_NOTE.into());
    Ok(out)
}

fn hessian_guards(hess: &MixedHessian, extra: &[Expr]) -> (BTreeSet<Var>, Vec<Expr>) {
    let mut vars: BTreeSet<Var> = hess.source().variables();
    let mut guards: Vec<Expr> = hess.rows().iter().flatten().flat_map(|e| e.singular_guards()).collect();
    for e in extra {
        vars.extend(e.variables());
        guards.extend(e.singular_guards());
    }
    guards.sort();
    guards.dedup();
    (vars, guards)
}

fn null_precondition(out: &mut CheckVerdict, name: &str, e: &Expr, space: &VariableSpace, plan: &SamplePlan) -> Result<bool, Error> {
    let g = gradient(e, space);
    out.identity(name, Stage::Precondition, mdot(&g, &g)?, plan)
}

fn det_f64(m: &NumericMatrix) -> Result<f64, Error> {
    Ok(match m {
        NumericMatrix::Exact(q) => minor_sums(q)?.determinant().to_f64(),
        NumericMatrix::Float(x) => minor_sums(x)?.determinant(),
    })
}

/// `det V̂ = 0` for a function with null gradient.
pub fn lemma2_check(v: &Expr, space: &VariableSpace, plan: &SamplePlan) -> Result<CheckVerdict, Error> {
    let mut out = CheckVerdict::new("lemma-2");
    if !null_precondition(&mut out, "v_mu v_mu", v, space, plan)? {
        out.notes.push("precondition failed: the gradient is not null, so the determinant was not checked".into());
        return Ok(out);
    }
    let hess = mixed_hessian(v, space);
    let (vars, guards) = hessian_guards(&hess, &[]);
    let dets = plan.sample(&vars, &guards, |p| hess.evaluate(p).ok().and_then(|m| det_f64(&m).ok()))?;
    let (worst, max) = dets.iter().fold((None, 0.0f64), |(w, m), (p, d)| if d.abs() > m || w.is_none() { (Some(p.clone()), d.abs().max(m)) } else { (w, m) });
    out.conditions.push(Condition {
        name: "det V".into(),
        stage: Stage::Condition,
        passed: max < MATRIX_TOLERANCE,
        evidence: Evidence::Residuals {
            table: vec![KResidual { k: hess.dim(), max_residual: max, worst }],
            tolerance: MATRIX_TOLERANCE,
            samples: dets.len(),
        },
    });
    Ok(out)
}

fn factorial(k: usize) -> Expr {
    Expr::int((1..=k as i64).product())
}

/// `(h ∂_var)^k e` for `k = 0..=kmax`.
fn operator_powers(h: &Expr, e: &Expr, var: Var, kmax: usize) -> Vec<Expr> {
    let mut out = vec![e.clone()];
    for _ in 0..kmax {
        let next = tidy(&(h.clone() * out.last().unwrap().diff(var)));
        out.push(next);
    }
    out
}

fn pair_bindings(v: &Expr, w: &Expr) -> std::collections::BTreeMap<Var, Expr> {
    std::collections::BTreeMap::from([(Var::V, v.clone()), (Var::W, w.clone())])
}

/// Left and right sides for `k = 1..=kmax` at one sample.
type SidePair = (Vec<f64>, Vec<f64>);

fn residual_table(kmax: usize, samples: &[(Point, SidePair)]) -> Vec<KResidual> {
    (1..=kmax)
        .map(|k| {
            let mut worst = None;
            let mut max = 0.0f64;
            for (p, (lhs, rhs)) in samples {
                let r = (lhs[k - 1] - rhs[k - 1]).abs();
                if worst.is_none() || r > max {
                    max = max.max(r);
                    worst = Some(p.clone());
                }
            }
            KResidual { k, max_residual: max, worst }
        })
        .collect()
}

fn hyperbolic_preconditions(out: &mut CheckVerdict, v: &Expr, w: &Expr, h: &Expr, space: &VariableSpace, plan: &SamplePlan) -> Result<bool, Error> {
    let ok_v = null_precondition(out, "v_mu v_mu", v, space, plan)?;
    let ok_w = null_precondition(out, "w_mu w_mu", w, space, plan)?;
    let cross = mdot(&gradient(v, space), &gradient(w, space))? - h.substitute(&pair_bindings(v, w));
    let ok_h = out.identity("v_mu w_mu - h(v, w)", Stage::Precondition, cross, plan)?;
    if !(ok_v && ok_w && ok_h) {
        out.notes.push("precondition failed: (v, w) do not solve the hyperbolic canonical system with this h".into());
    }
    Ok(ok_v && ok_w && ok_h)
}

/// Residual table of `M_k(V̂) = (h∂_w)^k Φ / (k! Φ)`, with `M_k` from the
/// brute-force principal-minor enumeration.
pub fn lemma3_check(v: &Expr, w: &Expr, h: &Expr, phi: &Expr, kmax: usize, space: &VariableSpace, plan: &SamplePlan) -> Result<CheckVerdict, Error> {
    if kmax == 0 {
        return Err(Error::InvalidInput("kmax must be at least 1".into()));
    }
    reject_vanishing("Phi", phi, plan)?;
    let mut out = CheckVerdict::new("lemma-3");
    if !hyperbolic_preconditions(&mut out, v, w, h, space, plan)? {
        return Ok(out);
    }
    let bind = pair_bindings(v, w);
    let rhs: Vec<Expr> = operator_powers(h, phi, Var::W, kmax)
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(k, e)| tidy(&(e / (factorial(k) * phi.clone()))).substitute(&bind))
        .collect();
    let hess = mixed_hessian(v, space);
    let (vars, guards) = hessian_guards(&hess, &rhs);
    let dim = hess.dim();
    let samples = plan.sample(&vars, &guards, |p| {
        let m = hess.evaluate(p).ok()?;
        let sums: Vec<f64> = match &m {
            NumericMatrix::Exact(q) => minor_sums_bruteforce(q).ok()?.0.iter().map(Scalar::to_f64).collect(),
            NumericMatrix::Float(x) => minor_sums_bruteforce(x).ok()?.0,
        };
        let lhs = (1..=kmax).map(|k| if k <= dim { sums[k] } else { 0.0 }).collect();
        let right = rhs.iter().map(|e| evaluate(e, p).ok().map(|v| v.to_f64())).collect::<Option<Vec<f64>>>()?;
        Some((lhs, right))
    })?;
    let table = residual_table(kmax, &samples);
    out.conditions.push(Condition {
        name: "M_k(V) - (h d/dw)^k Phi / (k! Phi)".into(),
        stage: Stage::Condition,
        passed: table.iter().all(|r| r.max_residual < MATRIX_TOLERANCE),
        evidence: Evidence::Residuals { table, tolerance: MATRIX_TOLERANCE, samples: samples.len() },
    });
    Ok(out)
}

/// Compares `tr(V̂^k)` with the printed right side
/// `(-1)^k/(k-1)! (h∂_w)^{k+1} V` and with
/// `(-1)^{k-1}/(k-1)! (h∂_w)^{k-1} V`; informational only.
pub fn lemma1_exploration(v: &Expr, w: &Expr, h: &Expr, v_rhs: &Expr, kmax: usize, space: &VariableSpace, plan: &SamplePlan) -> Result<CheckVerdict, Error> {
    if kmax == 0 {
        return Err(Error::InvalidInput("kmax must be at least 1".into()));
    }
    let mut out = CheckVerdict::new("lemma-1");
    let bind = pair_bindings(v, w);
    let powers = operator_powers(h, v_rhs, Var::W, kmax + 1);
    let sign = |e: i64| if e % 2 == 0 { Expr::one() } else { -Expr::one() };
    let printed: Vec<Expr> = (1..=kmax).map(|k| tidy(&(sign(k as i64) * powers[k + 1].clone() / factorial(k - 1))).substitute(&bind)).collect();
    let shifted: Vec<Expr> = (1..=kmax).map(|k| tidy(&(sign(k as i64 - 1) * powers[k - 1].clone() / factorial(k - 1))).substitute(&bind)).collect();
    let hess = mixed_hessian(v, space);
    let mut extra = printed.clone();
    extra.extend(shifted.iter().cloned());
    let (vars, guards) = hessian_guards(&hess, &extra);
    for (name, rhs) in [("tr(V^k) vs printed right side", &printed), ("tr(V^k) vs (-1)^(k-1)/(k-1)! (h d/dw)^(k-1) V", &shifted)] {
        let samples = plan.sample(&vars, &guards, |p| {
            let traces = power_traces(&hess.evaluate(p).ok()?.to_f64(), kmax).ok()?;
            let right = rhs.iter().map(|e| evaluate(e, p).ok().map(|v| v.to_f64())).collect::<Option<Vec<f64>>>()?;
            Some((traces, right))
        })?;
        let table = residual_table(kmax, &samples);
        out.conditions.push(Condition {
            name: name.into(),
            stage: Stage::Informational,
            passed: table.iter().all(|r| r.max_residual < MATRIX_TOLERANCE),
            evidence: Evidence::Residuals { table, tolerance: MATRIX_TOLERANCE, samples: samples.len() },
        });
    }
    out.notes.push("explored only; the printed identity is not enforced".into());
    Ok(out)
}

/// Max-norm of `H·(η∇u)` at `point`; vanishes when `∇u·∇u` is constant.
pub fn hessian_gradient_norm(u: &Expr, space: &VariableSpace, point: &Point) -> Result<f64, Error> {
    let hess = mixed_hessian(u, space).evaluate(point)?.to_f64();
    let grad: Vec<f64> = gradient(u, space).lowered().iter().map(|c| evaluate(c, point).map(|v| v.to_f64())).collect::<Result<_, _>>()?;
    let image = Matrix::mul_vec(&hess, &grad);
    Ok(image.iter().fold(0.0f64, |m, x| m.max(x.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse;

    fn plan() -> SamplePlan {
        SamplePlan::default()
    }

    fn e(s: &str, surface: [Var; 2]) -> Expr {
        parse(s, &VariableSpace::new(3, surface).unwrap()).unwrap()
    }

    fn hv(s: &str) -> Expr {
        e(s, [Var::V, Var::W])
    }

    fn uv(s: &str) -> Expr {
        e(s, [Var::Y, Var::Z])
    }

    #[test]
    fn statement1_examples() {
        assert!(check_statement1(&uv("3/u"), &uv("u^3"), 1, 3, &plan()).unwrap().passed());
        for phi in ["1", "u", "u^2 + 1", "u^3 - 2*u"] {
            assert!(!check_statement1(&uv("4/u"), &uv(phi), 1, 3, &plan()).unwrap().passed(), "{phi}");
        }
        assert!(check_statement1(&uv("0"), &uv("1"), 1, 3, &plan()).unwrap().passed());
        assert!(check_statement1(&uv("1"), &uv("0"), 1, 3, &plan()).is_err());
        assert!(check_statement1(&uv("0"), &uv("1"), 2, 3, &plan()).is_err());
    }

    #[test]
    fn statement1_with_zero_lambda_forces_zero_f() {
        assert!(!check_statement1(&uv("3/u"), &uv("u^3"), 0, 3, &plan()).unwrap().passed());
        assert!(check_statement1(&uv("0"), &uv("u^3"), 0, 3, &plan()).unwrap().passed());
    }

    #[test]
    fn statement2_examples() {
        let one = BigRational::from_i64(1);
        assert!(check_statement2_form(&uv("1/(2*u+2)"), 2, &one, 1, &plan()).unwrap().passed());
        for n in 0..=3 {
            assert!(!check_statement2_form(&uv("u^2"), n, &one, 1, &plan()).unwrap().passed());
        }
        assert!(check_statement2_form(&uv("0"), 0, &one, 1, &plan()).unwrap().passed());
        assert!(check_statement2_form(&uv("0"), 4, &one, 1, &plan()).is_err());
    }

    #[test]
    fn family_examples() {
        let fam = HyperbolicFamily::build(&hv("v*w"), &[hv("1"), hv("1")], &[hv("1")], 3, &plan()).unwrap();
        assert_eq!(fam.h, hv("1"));
        assert_eq!(fam.phi, hv("1 + w"));
        assert!(is_zero(&(fam.v.clone() - hv("1/(1+w)")), &plan()).unwrap().is_zero());
        assert!(is_zero(&(fam.displayed_v() - hv("w/(1+w)")), &plan()).unwrap().is_zero());

        let fam = HyperbolicFamily::build(&hv("v*w/2"), &[hv("v^2"), hv("-4*v"), hv("4")], &[hv("1")], 3, &plan()).unwrap();
        assert_eq!(fam.h, hv("2"));
        assert!(is_zero(&(fam.phi.clone() - hv("(w-v)^2")), &plan()).unwrap().is_zero());
        assert!(is_zero(&(fam.v.clone() - hv("4/(w-v)")), &plan()).unwrap().is_zero());
        assert!(is_zero(&fam.operator_residual(), &plan()).unwrap().is_zero());

        let fam = HyperbolicFamily::build(&hv("v*w"), &[hv("1")], &[hv("1")], 3, &plan()).unwrap();
        assert_eq!((fam.phi, fam.v), (hv("1"), hv("0")));
    }

    #[test]
    fn family_rejects_bad_input() {
        assert!(HyperbolicFamily::build(&hv("v + w"), &[hv("1")], &[hv("1")], 3, &plan()).is_err());
        assert!(HyperbolicFamily::build(&hv("v*w"), &[hv("0")], &[hv("1")], 3, &plan()).is_err());
        assert!(HyperbolicFamily::build(&hv("v*w"), &[hv("w")], &[hv("1")], 3, &plan()).is_err());
        let six: Vec<Expr> = (0..6).map(|_| hv("1")).collect();
        assert!(HyperbolicFamily::build(&hv("v*w"), &six, &[hv("1")], 3, &plan()).is_err());
    }

    #[test]
    fn nilpotence_examples() {
        assert_eq!(nilpotence_order(&hv("2"), &hv("(w-v)^2"), Var::W, 5, &plan()).unwrap(), NilpotenceOrder::Order(3));
        assert_eq!(nilpotence_order(&hv("1"), &hv("w^4"), Var::W, 5, &plan()).unwrap(), NilpotenceOrder::Order(5));
        assert_eq!(nilpotence_order(&hv("1"), &hv("1"), Var::W, 5, &plan()).unwrap(), NilpotenceOrder::Order(1));
        assert_eq!(nilpotence_order(&hv("1"), &hv("exp(w)"), Var::W, 4, &plan()).unwrap(), NilpotenceOrder::Exceeds(4));
    }

    #[test]
    fn theorem2_light_cone_data() {
        let c = check_theorem2(&hv("4/(w-v)"), &hv("-4/(w-v)"), &hv("2"), &hv("(w-v)^2"), &hv("(w-v)^2"), 3, &plan()).unwrap();
        assert!(c.passed());
        assert_eq!(c.nilpotence_orders().iter().map(|(_, o)| *o).collect::<Vec<_>>(), vec![NilpotenceOrder::Order(3); 2]);
        let bad = check_theorem2(&hv("4/(w-v)"), &hv("0"), &hv("2"), &hv("(w-v)^(-2)"), &hv("1"), 3, &plan()).unwrap();
        assert!(!bad.passed());
        assert!(bad.condition("V*Phi - h*Phi_w").unwrap().passed.eq(&false));
    }

    #[test]
    fn theorem1_and_trivial_data() {
        let ell = |s: &str| e(s, [Var::V, Var::VStar]);
        assert!(check_theorem1(&ell("0"), &ell("v*vs"), &ell("1"), 3, &plan()).unwrap().passed());
        assert!(check_theorem1(&ell("2/(vs - v)"), &ell("1"), &ell("(vs - v)^2"), 3, &plan()).unwrap().passed());
        assert!(!check_theorem1(&ell("1"), &ell("1"), &ell("exp(vs)"), 3, &plan()).unwrap().passed());
    }

    #[test]
    fn theorem3_examples() {
        let ok = check_theorem3(&hv("3/v"), &hv("0"), &hv("v^3"), 1, 3, &plan()).unwrap();
        assert!(ok.passed());
        assert!(ok.notes.iter().any(|n| n.contains("cannot be reduced to a parabolic equation")));
        let bad = check_theorem3(&hv("3/v"), &hv("v"), &hv("v^3"), 1, 3, &plan()).unwrap();
        assert!(!bad.passed() && !bad.condition("W").unwrap().passed);
        assert!(check_theorem3(&hv("0"), &hv("0"), &hv("1"), -1, 3, &plan()).unwrap().passed());
        assert!(check_theorem3(&hv("0"), &hv("0"), &hv("1"), 0, 3, &plan()).is_err());
    }

    #[test]
    fn first_order_examples() {
        assert!(check_first_order(&hv("0"), &hv("0"), &plan()).unwrap().passed());
        assert!(!check_first_order(&hv("v"), &hv("0"), &plan()).unwrap().passed());
        assert!(check_first_order(&hv("0"), &hv("w - w"), &plan()).unwrap().passed());
    }

    const V: &str = "x0 - sqrt(x1^2+x2^2+x3^2)";
    const W: &str = "x0 + sqrt(x1^2+x2^2+x3^2)";

    fn x(s: &str) -> Expr {
        uv(s)
    }

    #[test]
    fn lemma2_light_cone_and_controls() {
        let sp = VariableSpace::default();
        let c = lemma2_check(&x(V), &sp, &plan()).unwrap();
        assert!(c.passed(), "{c:?}");
        assert!(lemma2_check(&x("x0 + x3"), &sp, &plan()).unwrap().passed());
        let bad = lemma2_check(&x("x0^2"), &sp, &plan()).unwrap();
        assert!(bad.precondition_failed() && !bad.passed());
    }

    #[test]
    fn lemma3_light_cone() {
        let sp = VariableSpace::default();
        let c = lemma3_check(&x(V), &x(W), &hv("2"), &hv("(w-v)^2"), 4, &sp, &plan()).unwrap();
        assert!(c.passed(), "{c:?}");
        let lin = lemma3_check(&x("x0 + x3"), &x("x0 - x3"), &hv("2"), &hv("1"), 4, &sp, &plan()).unwrap();
        assert!(lin.passed(), "{lin:?}");
        let bad = lemma3_check(&x(V), &x(W), &hv("2"), &hv("(w-v)^3"), 4, &sp, &plan()).unwrap();
        assert!(!bad.passed() && !bad.precondition_failed());
        let Evidence::Residuals { table, .. } = &bad.conditions.last().unwrap().evidence else { panic!() };
        assert!(table[0].max_residual > 1e-3 && table[0].worst.is_some());
        let wrong_h = lemma3_check(&x(V), &x(W), &hv("1"), &hv("(w-v)^2"), 4, &sp, &plan()).unwrap();
        assert!(wrong_h.precondition_failed());
    }

    #[test]
    fn lemma1_shifted_identity_matches_light_cone() {
        let sp = VariableSpace::default();
        let c = lemma1_exploration(&x(V), &x(W), &hv("2"), &hv("4/(w-v)"), 4, &sp, &plan()).unwrap();
        assert!(c.passed(), "informational conditions never fail the check");
        assert!(!c.conditions[0].passed);
        assert!(c.conditions[1].passed, "{c:?}");
    }
}
