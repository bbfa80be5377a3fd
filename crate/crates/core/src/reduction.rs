//! Reduction of `□u = F(u)` by the ansatz `u = φ(y, z)`.
//!
//! Substituting the ansatz gives
//! `r φ_yy + 2q φ_yz + s φ_zz + R φ_y + S φ_z = F(φ)` with
//! `r = y·y, q = y·z, s = z·z, R = □y, S = □z` (metric contractions of the
//! gradients). The reduction closes when all five are functions of `(y, z)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::matrix::Scalar;
use crate::minkowski::{dalembertian, gradient, mdot, tidy, GradientVector};
use crate::space::VariableSpace;
use crate::symbolic::{evaluate, is_zero, Expr, Point, SampleError, SamplePlan, Value, Var, ZeroVerdict};

/// Relative threshold on 3×3 Jacobian minors for functional dependence.
pub const DEPENDENCE_TOLERANCE: f64 = 1e-7;
/// Relative threshold on 2×2 Jacobian minors for the independence of `y, z`.
pub const INDEPENDENCE_TOLERANCE: f64 = 1e-7;
/// Band around zero for the discriminant `rs - q²`, relative to `r² + q² + s²`.
pub const CLASSIFY_TOLERANCE: f64 = 1e-9;

/// The surface map `x ↦ (y(x), z(x))`.
#[derive(Clone, Debug, PartialEq)]
pub struct AnsatzPair {
    y: Expr,
    z: Expr,
    space: VariableSpace,
}

impl AnsatzPair {
    /// Checks that `y, z` live on spacetime and do not both have vanishing
    /// gradient.
    pub fn new(y: Expr, z: Expr, space: VariableSpace) -> Result<Self, Error> {
        for (name, e) in [("y", &y), ("z", &z)] {
            if let Some(v) = e.variables().into_iter().find(|v| !v.is_spacetime() || !space.contains(*v)) {
                return Err(Error::InvalidInput(format!("{name} uses `{v}`, which is not a spacetime variable of this space")));
            }
        }
        let pair = AnsatzPair { y, z, space };
        if pair.grad_y().is_identically_zero() && pair.grad_z().is_identically_zero() {
            return Err(Error::DegenerateAnsatz("both gradients vanish identically".into()));
        }
        Ok(pair)
    }

    pub fn y(&self) -> &Expr {
        &self.y
    }

    pub fn z(&self) -> &Expr {
        &self.z
    }

    pub fn space(&self) -> &VariableSpace {
        &self.space
    }

    pub fn grad_y(&self) -> GradientVector {
        gradient(&self.y, &self.space)
    }

    pub fn grad_z(&self) -> GradientVector {
        gradient(&self.z, &self.space)
    }

    /// Bindings surface variable → ansatz expression.
    pub fn bindings(&self) -> BTreeMap<Var, Expr> {
        let [sy, sz] = self.space.surface();
        BTreeMap::from([(sy, self.y.clone()), (sz, self.z.clone())])
    }

    /// `e(y(x), z(x))` for a surface expression `e`.
    pub fn pull_back(&self, e: &Expr) -> Expr {
        e.substitute(&self.bindings())
    }

    /// Pair with `y` and `z` exchanged.
    pub fn swapped(&self) -> AnsatzPair {
        AnsatzPair { y: self.z.clone(), z: self.y.clone(), space: self.space.clone() }
    }

    /// Same pair with spacetime variables replaced by `bindings`.
    pub fn transformed(&self, bindings: &BTreeMap<Var, Expr>) -> Result<AnsatzPair, Error> {
        AnsatzPair::new(tidy(&self.y.substitute(bindings)), tidy(&self.z.substitute(bindings)), self.space.clone())
    }

    fn guards(&self) -> Vec<Expr> {
        let mut g = self.y.singular_guards();
        g.extend(self.z.singular_guards());
        for c in self.grad_y().components().iter().chain(self.grad_z().components()) {
            g.extend(c.singular_guards());
        }
        g.sort();
        g.dedup();
        g
    }

    /// Jacobian rank test for `y, z`: rank 2 at every accepted sample.
    pub fn independence(&self, plan: &SamplePlan) -> Result<RankVerdict, Error> {
        let rows = [self.grad_y(), self.grad_z()];
        rank_test(&[self.y(), self.z()], &rows, &self.guards(), plan, |minor| minor > INDEPENDENCE_TOLERANCE)
    }
}

/// Outcome of a sampled Jacobian-rank test.
#[derive(Clone, Debug, PartialEq)]
pub enum RankVerdict {
    Pass { samples: usize },
    Fail { witness: Point, relative_minor: f64 },
}

impl RankVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, RankVerdict::Pass { .. })
    }
}

fn eval_rows(rows: &[GradientVector], p: &Point) -> Option<Vec<Vec<Value>>> {
    rows.iter().map(|g| g.components().iter().map(|c| evaluate(c, p).ok()).collect()).collect()
}

/// Largest `|minor| / Π row norms` over all `k×k` minors of the rows.
fn max_relative_minor(rows: &[Vec<Value>]) -> f64 {
    let exact: Option<Vec<Vec<BigRational>>> = rows.iter().map(|r| r.iter().map(|v| v.as_exact().cloned()).collect()).collect();
    match exact {
        Some(q) => relative_minor_of(&q),
        None => relative_minor_of(&rows.iter().map(|r| r.iter().map(Value::to_f64).collect::<Vec<f64>>()).collect::<Vec<_>>()),
    }
}

fn relative_minor_of<T: Scalar>(rows: &[Vec<T>]) -> f64 {
    let k = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let norm: f64 = rows.iter().map(|r| r.iter().map(|x| x.to_f64().powi(2)).sum::<f64>().sqrt()).product();
    let mut worst = 0.0f64;
    for cols in (0..width).combinations(k) {
        let sub: Vec<Vec<T>> = rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
        let m = crate::matrix::Matrix::from_rows(sub).expect("square selection");
        let det = m.principal_minor(&(0..k).collect::<Vec<_>>());
        if det.is_zero() {
            continue;
        }
        worst = worst.max(det.abs().to_f64() / norm);
    }
    worst
}

fn rank_test(
    sources: &[&Expr],
    rows: &[GradientVector],
    guards: &[Expr],
    plan: &SamplePlan,
    accept: impl Fn(f64) -> bool,
) -> Result<RankVerdict, Error> {
    // the sources' own variables, so a witness names a point even when every
    // gradient is constant
    let vars: BTreeSet<Var> = sources.iter().flat_map(|e| e.variables()).collect();
    let mut witness = None;
    let accepted = plan.sample(&vars, guards, |p| {
        if witness.is_some() {
            return Some(());
        }
        let values = eval_rows(rows, p)?;
        let m = max_relative_minor(&values);
        if !accept(m) {
            witness = Some((p.clone(), m));
        }
        Some(())
    })?;
    Ok(match witness {
        Some((witness, relative_minor)) => RankVerdict::Fail { witness, relative_minor },
        None => RankVerdict::Pass { samples: accepted.len() },
    })
}

/// Functional-dependence test of `e` on `(y, z)`: the Jacobian of
/// `(e, y, z)` has rank at most 2 at every accepted sample.
pub fn dependence_test(e: &Expr, pair: &AnsatzPair, plan: &SamplePlan) -> Result<RankVerdict, Error> {
    let grad_e = gradient(e, pair.space());
    if grad_e.is_identically_zero() {
        return Ok(RankVerdict::Pass { samples: 0 });
    }
    let mut guards = pair.guards();
    guards.extend(e.singular_guards());
    for c in grad_e.components() {
        guards.extend(c.singular_guards());
    }
    rank_test(&[e, pair.y(), pair.z()], &[grad_e, pair.grad_y(), pair.grad_z()], &guards, plan, |m| m < DEPENDENCE_TOLERANCE)
}

pub const PROFILE_LABELS: [&str; 5] = ["r", "q", "s", "R", "S"];

/// One of the five reduction conditions.
#[derive(Clone, Debug)]
pub struct ProfileEntry {
    pub label: &'static str,
    /// The condition as a function of spacetime.
    pub expr: Expr,
    /// Candidate surface form over the surface variables.
    pub surface: Option<Expr>,
    /// Outcome of `expr - surface(y(x), z(x)) ≡ 0`.
    pub verdict: Option<Result<ZeroVerdict, SampleError>>,
}

impl ProfileEntry {
    pub fn verified(&self) -> bool {
        matches!(&self.verdict, Some(Ok(v)) if v.is_zero())
    }
}

/// `r, q, s, R, S` of an ansatz pair with their verification status.
#[derive(Clone, Debug)]
pub struct ReductionProfile {
    pair: AnsatzPair,
    entries: [ProfileEntry; 5],
}

pub fn profile(pair: &AnsatzPair) -> Result<ReductionProfile, Error> {
    let (gy, gz) = (pair.grad_y(), pair.grad_z());
    let exprs = [
        mdot(&gy, &gy)?,
        mdot(&gy, &gz)?,
        mdot(&gz, &gz)?,
        dalembertian(pair.y(), pair.space()),
        dalembertian(pair.z(), pair.space()),
    ];
    let mut labels = PROFILE_LABELS.into_iter();
    let entries = exprs.map(|expr| ProfileEntry { label: labels.next().unwrap(), expr, surface: None, verdict: None });
    Ok(ReductionProfile { pair: pair.clone(), entries })
}

impl ReductionProfile {
    pub fn pair(&self) -> &AnsatzPair {
        &self.pair
    }

    pub fn entries(&self) -> &[ProfileEntry; 5] {
        &self.entries
    }

    pub fn entry(&self, label: &str) -> Option<&ProfileEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    pub fn r(&self) -> &Expr {
        &self.entries[0].expr
    }

    pub fn q(&self) -> &Expr {
        &self.entries[1].expr
    }

    pub fn s(&self) -> &Expr {
        &self.entries[2].expr
    }

    pub fn big_r(&self) -> &Expr {
        &self.entries[3].expr
    }

    pub fn big_s(&self) -> &Expr {
        &self.entries[4].expr
    }

    pub fn fully_verified(&self) -> bool {
        self.entries.iter().all(ProfileEntry::verified)
    }

    /// Checks each candidate surface form against the computed condition.
    pub fn verify_surface_forms(&self, candidates: &[Expr; 5], plan: &SamplePlan) -> Result<ReductionProfile, Error> {
        let surface = self.pair.space().surface();
        for (label, c) in PROFILE_LABELS.iter().zip(candidates) {
            if let Some(v) = c.variables().into_iter().find(|v| !surface.contains(v)) {
                return Err(Error::InvalidInput(format!(
                    "surface form for {label} uses `{v}`; only {} and {} are allowed",
                    surface[0], surface[1]
                )));
            }
        }
        let mut out = self.clone();
        for (entry, c) in out.entries.iter_mut().zip(candidates) {
            let diff = entry.expr.clone() - self.pair.pull_back(c);
            entry.surface = Some(tidy(c));
            entry.verdict = Some(is_zero(&diff, plan));
        }
        Ok(out)
    }

    /// Dependence test for every entry.
    pub fn dependence(&self, plan: &SamplePlan) -> Result<Vec<(&'static str, RankVerdict)>, Error> {
        self.entries.iter().map(|e| Ok((e.label, dependence_test(&e.expr, &self.pair, plan)?))).collect()
    }
}

/// Type of the reduced equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReductionType {
    Elliptic,
    Hyperbolic,
    Parabolic,
    FirstOrder,
    Mixed,
}

impl ReductionType {
    pub fn name(self) -> &'static str {
        match self {
            ReductionType::Elliptic => "elliptic",
            ReductionType::Hyperbolic => "hyperbolic",
            ReductionType::Parabolic => "parabolic",
            ReductionType::FirstOrder => "first-order",
            ReductionType::Mixed => "mixed",
        }
    }
}

impl fmt::Display for ReductionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sign of `rs - q²` at a sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Zero => '0',
            Sign::Positive => '+',
        }
    }
}

/// Classification with the sample evidence behind it.
#[derive(Clone, Debug)]
pub struct Classification {
    pub tag: ReductionType,
    /// `rs - q²` as an expression in spacetime.
    pub discriminant: Expr,
    /// Sign of the discriminant at each accepted sample, in sampling order.
    pub signs: Vec<Sign>,
    /// Range of `rs - q²` over the samples.
    pub discriminant_range: (f64, f64),
    /// Smallest `r² + q² + s²` over the samples.
    pub min_norm: f64,
    pub diagnostics: Vec<String>,
}

impl Classification {
    /// Exact discriminant when it is a constant.
    pub fn constant_discriminant(&self) -> Option<&BigRational> {
        self.discriminant.as_const()
    }

    /// Sample counts per sign, e.g. `"40 negative, 24 positive"`.
    pub fn sign_summary(&self) -> String {
        [(Sign::Negative, "negative"), (Sign::Zero, "zero"), (Sign::Positive, "positive")]
            .into_iter()
            .filter_map(|(sign, name)| {
                let k = self.signs.iter().filter(|s| **s == sign).count();
                (k > 0).then(|| format!("{k} {name}"))
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Classifies by the sign of `rs - q²` at the plan's samples.
pub fn classify(p: &ReductionProfile, plan: &SamplePlan) -> Result<Classification, Error> {
    let (r, q, s) = (p.r(), p.q(), p.s());
    let discriminant = tidy(&(r.clone() * s.clone() - q.clone().powi(2)));
    let vars: BTreeSet<Var> = [r, q, s].iter().flat_map(|e| e.variables()).collect();
    let mut guards: Vec<Expr> = [r, q, s].iter().flat_map(|e| e.singular_guards()).collect();
    guards.extend(p.pair().guards());
    let samples = plan.sample(&vars, &guards, |pt| {
        let vals: Vec<Value> = [r, q, s, &discriminant].iter().map(|e| evaluate(e, pt).ok()).collect::<Option<_>>()?;
        Some(vals)
    })?;
    let mut signs = Vec::with_capacity(samples.len());
    let mut first_order = 0;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut min_norm = f64::INFINITY;
    for (_, vals) in &samples {
        let [rv, qv, sv] = [0, 1, 2].map(|k| vals[k].to_f64());
        let norm = rv * rv + qv * qv + sv * sv;
        min_norm = min_norm.min(norm);
        let d = &vals[3];
        lo = lo.min(d.to_f64());
        hi = hi.max(d.to_f64());
        let sign = match d {
            Value::Exact(x) if x.is_zero() => Sign::Zero,
            Value::Exact(x) if x.is_positive() => Sign::Positive,
            Value::Exact(_) => Sign::Negative,
            Value::Approx(_) => {
                let dv = d.to_f64();
                if dv.abs() <= CLASSIFY_TOLERANCE * norm.max(f64::MIN_POSITIVE) {
                    Sign::Zero
                } else if dv > 0.0 {
                    Sign::Positive
                } else {
                    Sign::Negative
                }
            }
        };
        if sign == Sign::Zero && vals[..3].iter().all(|v| v.is_zero() || v.abs_f64() <= CLASSIFY_TOLERANCE) {
            first_order += 1;
        }
        signs.push(sign);
    }
    let n = signs.len();
    let count = |s: Sign| signs.iter().filter(|&&x| x == s).count();
    let mut diagnostics = Vec::new();
    let tag = if first_order == n {
        ReductionType::FirstOrder
    } else if count(Sign::Positive) == n {
        ReductionType::Elliptic
    } else if count(Sign::Negative) == n {
        ReductionType::Hyperbolic
    } else if count(Sign::Zero) == n && first_order == 0 {
        ReductionType::Parabolic
    } else {
        diagnostics.push(format!(
            "discriminant sign varies across {n} samples: {} positive, {} negative, {} zero ({} with r = q = s = 0)",
            count(Sign::Positive),
            count(Sign::Negative),
            count(Sign::Zero),
            first_order
        ));
        ReductionType::Mixed
    };
    Ok(Classification { tag, discriminant, signs, discriminant_range: (lo, hi), min_norm, diagnostics })
}

/// `r̂ φ_yy + 2q̂ φ_yz + ŝ φ_zz + R̂ φ_y + Ŝ φ_z = F(φ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedPDE {
    surface: [Var; 2],
    /// Coefficients of `φ_yy, φ_yz, φ_zz, φ_y, φ_z`.
    coefficients: [Expr; 5],
}

pub fn reduced_equation(p: &ReductionProfile) -> Result<ReducedPDE, Error> {
    let pending: Vec<&str> = p.entries().iter().filter(|e| !e.verified()).map(|e| e.label).collect();
    if !pending.is_empty() {
        return Err(Error::UnverifiedProfile(format!("entries without a verified surface form: {}", pending.join(", "))));
    }
    let hat = |k: usize| p.entries()[k].surface.clone().expect("verified entries carry a surface form");
    let coefficients = [hat(0), tidy(&(Expr::int(2) * hat(1))), hat(2), hat(3), hat(4)];
    Ok(ReducedPDE { surface: p.pair().space().surface(), coefficients })
}

impl ReducedPDE {
    pub fn new(surface: [Var; 2], coefficients: [Expr; 5]) -> Self {
        ReducedPDE { surface, coefficients: coefficients.map(|c| tidy(&c)) }
    }

    pub fn coefficients(&self) -> &[Expr; 5] {
        &self.coefficients
    }

    pub fn surface(&self) -> [Var; 2] {
        self.surface
    }

    /// Derivative labels `φ_yy, φ_yz, φ_zz, φ_y, φ_z` for the surface pair.
    pub fn derivative_labels(&self) -> [String; 5] {
        let [a, b] = self.surface.map(|v| v.name());
        [format!("{a}{a}"), format!("{a}{b}"), format!("{b}{b}"), a.to_string(), b.to_string()]
    }

    /// Left side applied to a concrete `φ` over the surface variables.
    pub fn apply(&self, phi: &Expr) -> Expr {
        let [a, b] = self.surface;
        let derivs = [phi.diff(a).diff(a), phi.diff(a).diff(b), phi.diff(b).diff(b), phi.diff(a), phi.diff(b)];
        tidy(&Expr::sum(self.coefficients.iter().zip(derivs).map(|(c, d)| c.clone() * d)))
    }

    /// Coefficient-wise comparison with `other`.
    pub fn compare(&self, other: &ReducedPDE, plan: &SamplePlan) -> Result<Vec<ZeroVerdict>, Error> {
        if self.surface != other.surface {
            return Err(Error::DimensionMismatch("reduced equations over different surface variables".into()));
        }
        self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| Ok(is_zero(&(a.clone() - b.clone()), plan)?)).collect()
    }
}

impl fmt::Display for ReducedPDE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (c, label) in self.coefficients.iter().zip(self.derivative_labels()) {
            if c.is_zero() {
                continue;
            }
            let negative = c.split_coefficient().0.is_negative();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            let factor = if magnitude.is_one() {
                String::new()
            } else if magnitude.as_const().is_some() || matches!(magnitude.node(), crate::symbolic::Node::Var(_)) {
                magnitude.to_string()
            } else {
                format!("({magnitude})")
            };
            match (out.is_empty(), negative) {
                (true, false) => {}
                (true, true) => out.push('-'),
                (false, false) => out.push_str(" + "),
                (false, true) => out.push_str(" - "),
            }
            out.push_str(&format!("{factor}φ_{label}"));
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out} = F(φ)")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse;

    fn sp() -> VariableSpace {
        VariableSpace::default()
    }

    fn p(s: &str) -> Expr {
        parse(s, &sp()).unwrap()
    }

    fn pair(y: &str, z: &str) -> AnsatzPair {
        AnsatzPair::new(p(y), p(z), sp()).unwrap()
    }

    fn forms(v: [&str; 5]) -> [Expr; 5] {
        v.map(p)
    }

    #[test]
    fn plane_wave_profile() {
        let pr = profile(&pair("x0", "x3")).unwrap();
        let got: Vec<Expr> = pr.entries().iter().map(|e| e.expr.clone()).collect();
        assert_eq!(got, forms(["1", "0", "-1", "0", "0"]).to_vec());
    }

    #[test]
    fn radial_profile_closes_over_surface() {
        let pr = profile(&pair("x0", "sqrt(x1^2+x2^2+x3^2)")).unwrap();
        let v = pr.verify_surface_forms(&forms(["1", "0", "-1", "0", "-2/z"]), &SamplePlan::default()).unwrap();
        assert!(v.fully_verified());
        assert_eq!(reduced_equation(&v).unwrap().to_string(), "φ_yy - φ_zz - (2/z)φ_z = F(φ)");
    }

    #[test]
    fn wrong_surface_form_has_witness() {
        let pr = profile(&pair("x0", "x3")).unwrap();
        let v = pr.verify_surface_forms(&forms(["1", "0", "1", "0", "0"]), &SamplePlan::default()).unwrap();
        assert!(!v.entry("s").unwrap().verified());
        assert!(v.entry("r").unwrap().verified());
        assert!(matches!(reduced_equation(&v), Err(Error::UnverifiedProfile(m)) if m.contains('s')));
    }

    #[test]
    fn surface_forms_must_avoid_spacetime() {
        let pr = profile(&pair("x0", "x3")).unwrap();
        assert!(pr.verify_surface_forms(&forms(["x1", "0", "-1", "0", "0"]), &SamplePlan::default()).is_err());
    }

    #[test]
    fn degenerate_and_foreign_pairs_rejected() {
        assert!(matches!(AnsatzPair::new(p("1"), p("2"), sp()), Err(Error::DegenerateAnsatz(_))));
        assert!(AnsatzPair::new(p("y"), p("x0"), sp()).is_err());
    }

    #[test]
    fn dependent_pair_is_reported() {
        let plan = SamplePlan::default();
        assert!(pair("x0", "x3").independence(&plan).unwrap().passed());
        assert!(!pair("x0 + x3", "2*x0 + 2*x3").independence(&plan).unwrap().passed());
    }

    #[test]
    fn dependence_examples() {
        let plan = SamplePlan::default();
        assert!(dependence_test(&p("5"), &pair("x1", "x2"), &plan).unwrap().passed());
        assert!(!dependence_test(&p("x3"), &pair("x1", "x2"), &plan).unwrap().passed());
        let radial = pair("x0", "sqrt(x1^2+x2^2+x3^2)");
        let s = dalembertian(radial.z(), radial.space());
        assert!(dependence_test(&s, &radial, &plan).unwrap().passed());
    }

    #[test]
    fn classification_examples() {
        let plan = SamplePlan::default();
        let c = classify(&profile(&pair("x0", "x3")).unwrap(), &plan).unwrap();
        assert_eq!(c.tag, ReductionType::Hyperbolic);
        let c = classify(&profile(&pair("x0 + x3", "x0 - x3")).unwrap(), &plan).unwrap();
        assert_eq!(c.tag, ReductionType::Hyperbolic);
        assert_eq!(c.constant_discriminant(), Some(&BigRational::from_i64(-4)));
        let c = classify(&profile(&pair("x1", "x2")).unwrap(), &plan).unwrap();
        assert_eq!(c.tag, ReductionType::Elliptic);
        let c = classify(&profile(&pair("sqrt(x1^2+x2^2)", "x0 + x3")).unwrap(), &plan).unwrap();
        assert_eq!(c.tag, ReductionType::Parabolic);
        let c = classify(&profile(&pair("x0 + x3", "x0 + x3 + 1")).unwrap(), &plan).unwrap();
        assert_eq!(c.tag, ReductionType::FirstOrder);
    }

    #[test]
    fn sign_change_is_mixed() {
        // rs - q² = x0² - x1² changes sign inside the default box
        let c = classify(&profile(&pair("x0*x1", "x3")).unwrap(), &SamplePlan::default()).unwrap();
        assert_eq!(c.tag, ReductionType::Mixed);
        assert!(c.sign_summary().contains("positive") && c.sign_summary().contains("negative"));
        assert!(!c.diagnostics.is_empty());
    }

    #[test]
    fn applying_reduced_operator() {
        let eq = ReducedPDE::new([Var::Y, Var::Z], forms(["1", "0", "-1", "0", "0"]));
        assert_eq!(eq.apply(&p("y^2 + z^2")), p("0"));
        assert_eq!(eq.apply(&p("y*z")), p("0"));
        assert_eq!(eq.apply(&p("y^2")), p("2"));
    }
}
