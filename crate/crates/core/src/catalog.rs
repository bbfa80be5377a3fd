//! Four explicit ansatz pairs in an orthonormal frame `a, b, c, d`, with the
//! reduced equations they must produce:
//!
//! 1. `y = ax, z = dx`: `φ_yy - φ_zz = F(φ)`.
//! 2. `y = ax, z = ((bx)² + (cx)² + (dx)²)^{1/2}`: `φ_yy - φ_zz - (2/z)φ_z = F(φ)`.
//! 3. `y = bx + Φ((a+d)x), z = cx`: `-φ_yy - φ_zz = F(φ)` for any `Φ`,
//!    because `a + d` is null.
//! 4. `y = ((bx)² + (cx)²)^{1/2}, z = (a+d)x`: `-φ_yy - (1/y)φ_y = F(φ)`.
//!
//! The radial entries keep samples at least 0.1 away from their axis.

use crate::error::Error;
use crate::frame::Frame;
use crate::reduction::{classify, profile, reduced_equation, AnsatzPair, Classification, ReducedPDE, ReductionProfile, ReductionType, RankVerdict};
use crate::space::VariableSpace;
use crate::symbolic::{is_zero, Expr, SampleError, SamplePlan, Var, ZeroVerdict};

/// Builds the ansatz pair of an entry in a given frame; the second argument
/// is the entry's free function of `u`, when it has one.
pub type PairBuilder = fn(&Frame, &Expr) -> (Expr, Expr);

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub index: usize,
    pub name: &'static str,
    pub build: PairBuilder,
    /// Expected `r̂, q̂, ŝ, R̂, Ŝ` over `(y, z)`.
    pub expected: [Expr; 5],
    pub expected_type: ReductionType,
    /// Whether the pair depends on a free function `Φ(u)`.
    pub free_function: bool,
    /// Free functions to run the entry with; a single unused `u` otherwise.
    pub phi_choices: Vec<Expr>,
}

impl CatalogEntry {
    pub fn pair(&self, frame: &Frame, phi: &Expr) -> Result<AnsatzPair, Error> {
        let (y, z) = (self.build)(frame, phi);
        AnsatzPair::new(y, z, VariableSpace::default())
    }

    pub fn default_pair(&self, frame: &Frame) -> Result<AnsatzPair, Error> {
        self.pair(frame, &self.phi_choices[0])
    }

    pub fn expected_equation(&self) -> ReducedPDE {
        let [r, q, s, big_r, big_s] = self.expected.clone();
        ReducedPDE::new([Var::Y, Var::Z], [r, Expr::int(2) * q, s, big_r, big_s])
    }

    /// Same entry with a different free function.
    pub fn with_phi(mut self, phi: Expr) -> Self {
        self.phi_choices = vec![phi];
        self
    }
}

fn sy(s: &str) -> Expr {
    crate::symbolic::parse(s, &VariableSpace::default()).expect("catalog literal")
}

fn null_form(f: &Frame) -> Expr {
    f.ax() + f.dx()
}

fn plane(f: &Frame, _: &Expr) -> (Expr, Expr) {
    (f.ax(), f.dx())
}

fn radial(f: &Frame, _: &Expr) -> (Expr, Expr) {
    (f.ax(), (f.bx().powi(2) + f.cx().powi(2) + f.dx().powi(2)).sqrt_of())
}

fn null_shifted(f: &Frame, phi: &Expr) -> (Expr, Expr) {
    (f.bx() + phi.substitute_one(Var::U, &null_form(f)), f.cx())
}

fn cylindrical(f: &Frame, _: &Expr) -> (Expr, Expr) {
    ((f.bx().powi(2) + f.cx().powi(2)).sqrt_of(), null_form(f))
}

pub fn catalog() -> Vec<CatalogEntry> {
    let none = || vec![sy("u")];
    vec![
        CatalogEntry {
            index: 1,
            name: "plane",
            free_function: false,
            build: plane,
            expected: ["1", "0", "-1", "0", "0"].map(sy),
            expected_type: ReductionType::Hyperbolic,
            phi_choices: none(),
        },
        CatalogEntry {
            index: 2,
            name: "radial",
            free_function: false,
            build: radial,
            expected: ["1", "0", "-1", "0", "-2/z"].map(sy),
            expected_type: ReductionType::Hyperbolic,
            phi_choices: none(),
        },
        CatalogEntry {
            index: 3,
            name: "null-shifted",
            free_function: true,
            build: null_shifted,
            expected: ["-1", "0", "-1", "0", "0"].map(sy),
            expected_type: ReductionType::Elliptic,
            phi_choices: ["u^2", "u^3", "sin(u)"].map(sy).to_vec(),
        },
        CatalogEntry {
            index: 4,
            name: "cylindrical",
            free_function: false,
            build: cylindrical,
            expected: ["-1", "0", "0", "-1/y", "0"].map(sy),
            expected_type: ReductionType::Parabolic,
            phi_choices: none(),
        },
    ]
}

/// One run of an entry with one free-function choice.
#[derive(Clone, Debug)]
pub struct EntryRun {
    pub phi: Option<Expr>,
    pub pair: AnsatzPair,
    pub profile: ReductionProfile,
    pub classification: Classification,
    pub reduced: Option<ReducedPDE>,
    pub equation_match: Vec<Result<ZeroVerdict, SampleError>>,
    pub dependence: Vec<(&'static str, RankVerdict)>,
    pub failures: Vec<String>,
}

impl EntryRun {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct EntryReport {
    pub index: usize,
    pub name: &'static str,
    pub expected_type: ReductionType,
    pub expected_equation: ReducedPDE,
    pub runs: Vec<EntryRun>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.runs.iter().all(EntryRun::passed)
    }
}

#[derive(Clone, Debug)]
pub struct CatalogReport {
    pub frame: Frame,
    pub entries: Vec<EntryReport>,
}

impl CatalogReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(EntryReport::passed)
    }

    pub fn passed_count(&self) -> usize {
        self.entries.iter().filter(|e| e.passed()).count()
    }

    /// Names of failing entries.
    pub fn failing(&self) -> Vec<String> {
        self.entries.iter().filter(|e| !e.passed()).map(|e| format!("entry {} ({})", e.index, e.name)).collect()
    }
}

fn entry_plan(pair: &AnsatzPair, plan: &SamplePlan) -> SamplePlan {
    // radial variables stay clear of their axis
    let mut p = plan.clone();
    for e in [pair.y(), pair.z()] {
        if matches!(e.node(), crate::symbolic::Node::Apply(crate::symbolic::Func::Sqrt, _)) {
            p = p.exclude(e.clone());
        }
    }
    p
}

fn run_one(entry: &CatalogEntry, frame: &Frame, phi: &Expr, plan: &SamplePlan) -> Result<EntryRun, Error> {
    let pair = entry.pair(frame, phi)?;
    let plan = entry_plan(&pair, plan);
    let prof = profile(&pair)?.verify_surface_forms(&entry.expected, &plan)?;
    let mut failures = Vec::new();
    for e in prof.entries() {
        match &e.verdict {
            Some(Ok(v)) if v.is_zero() => {}
            Some(Ok(v)) => failures.push(format!("{}: surface form {} does not match ({})", e.label, e.surface.as_ref().unwrap(), v.label())),
            Some(Err(err)) => failures.push(format!("{}: {err}", e.label)),
            None => failures.push(format!("{}: not verified", e.label)),
        }
    }
    let classification = classify(&prof, &plan)?;
    if classification.tag != entry.expected_type {
        failures.push(format!("classified {} but expected {}", classification.tag, entry.expected_type));
    }
    let reduced = reduced_equation(&prof).ok();
    let expected = entry.expected_equation();
    let equation_match: Vec<Result<ZeroVerdict, SampleError>> = match &reduced {
        Some(eq) => eq.coefficients().iter().zip(expected.coefficients()).map(|(a, b)| is_zero(&(a.clone() - b.clone()), &plan)).collect(),
        None => Vec::new(),
    };
    if reduced.is_some() && !equation_match.iter().all(|v| matches!(v, Ok(z) if z.is_zero())) {
        failures.push(format!("reduced equation differs from {expected}"));
    }
    let dependence = prof.dependence(&plan)?;
    for (label, d) in &dependence {
        if !d.passed() {
            failures.push(format!("{label} is not a function of (y, z)"));
        }
    }
    Ok(EntryRun {
        phi: entry.free_function.then(|| phi.clone()),
        pair,
        profile: prof,
        classification,
        reduced,
        equation_match,
        dependence,
        failures,
    })
}

/// Runs the given entries in `frame`; the report is ordered by entry index.
pub fn run_entries(entries: &[CatalogEntry], frame: &Frame, plan: &SamplePlan) -> Result<CatalogReport, Error> {
    frame.validate()?;
    let mut reports: Vec<EntryReport> = entries
        .iter()
        .map(|entry| {
            let runs = entry.phi_choices.iter().map(|phi| run_one(entry, frame, phi, plan)).collect::<Result<_, _>>()?;
            Ok(EntryReport { index: entry.index, name: entry.name, expected_type: entry.expected_type, expected_equation: entry.expected_equation(), runs })
        })
        .collect::<Result<_, Error>>()?;
    reports.sort_by_key(|r| r.index);
    Ok(CatalogReport { frame: frame.clone(), entries: reports })
}

pub fn run_catalog(frame: &Frame, plan: &SamplePlan) -> Result<CatalogReport, Error> {
    run_entries(&catalog(), frame, plan)
}

/// Catalog entry by index or name.
pub fn find_entry(key: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == key || e.index.to_string() == key)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{default_boost, standard_frame};

    #[test]
    fn expected_equations_print() {
        let eqs: Vec<String> = catalog().iter().map(|e| e.expected_equation().to_string()).collect();
        assert_eq!(
            eqs,
            [
                "φ_yy - φ_zz = F(φ)",
                "φ_yy - φ_zz - (2/z)φ_z = F(φ)",
                "-φ_yy - φ_zz = F(φ)",
                "-φ_yy - (1/y)φ_y = F(φ)",
            ]
        );
    }

    #[test]
    fn standard_catalog_passes() {
        let rep = run_catalog(&standard_frame(), &SamplePlan::default()).unwrap();
        assert!(rep.passed(), "{:?}", rep.entries.iter().flat_map(|e| e.runs.iter().flat_map(|r| r.failures.clone())).collect::<Vec<_>>());
        assert_eq!(rep.entries[2].runs.len(), 3);
    }

    #[test]
    fn boosted_catalog_passes() {
        let rep = run_catalog(&default_boost(), &SamplePlan::default()).unwrap();
        assert!(rep.passed(), "{:?}", rep.entries.iter().flat_map(|e| e.runs.iter().flat_map(|r| r.failures.clone())).collect::<Vec<_>>());
    }

    #[test]
    fn wrong_expectation_names_entry() {
        let mut entries = catalog();
        entries[0].expected[2] = sy("1");
        let rep = run_entries(&entries, &standard_frame(), &SamplePlan::default()).unwrap();
        assert_eq!(rep.failing(), vec!["entry 1 (plane)".to_string()]);
    }

    #[test]
    fn tampered_frame_is_rejected() {
        let mut f = standard_frame();
        f.b[2] = num_rational::BigRational::from_integer(1.into());
        assert!(run_catalog(&f, &SamplePlan::default()).is_err());
    }
}
