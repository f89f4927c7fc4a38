//! Knot Floer homology over the integers for (1,1)-knots.
//!
//! A knot is given by a doubly pointed genus-1 Heegaard diagram
//! ([`diagram`]); its curves are lifted to the plane ([`cover`]), bigons are
//! counted there ([`floer`]), and the resulting filtered complex is reduced by
//! Smith normal form ([`algebra`]) to the bigraded homology and `tau`
//! ([`invariants`]).

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod cover;
pub mod diagram;
pub mod floer;
pub mod invariants;
pub mod pretzel;
pub mod report;

use std::collections::BTreeMap;

use thiserror::Error;

use algebra::{bigraded_homology, normalize_gradings, tau, verify_d_squared, AlgebraError, FilteredComplex};
use cover::LiftedDiagram;
use diagram::{validate, Diagram11, DiagramDescription, DiagramError};
use floer::{build_cfk, domain_between, stable_bigons, BigonClass, FloerError};
use invariants::{bounds, hfk_table, Bounds, HfkTable, InvariantsError};
use pretzel::PretzelError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Floer(#[from] FloerError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
    #[error(transparent)]
    Pretzel(#[from] PretzelError),
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("CompareMismatch: {0}")]
    CompareMismatch(String),
    #[error("invalid input: {0}")]
    Parse(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    /// 1 for invalid input, 2 for consistency failures, 3 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Diagram(_) | Error::Parse(_) | Error::Pretzel(PretzelError::BadParams(_)) => 1,
            Error::Io(_) => 3,
            _ => 2,
        }
    }
}

/// Invariant checks run on every analyzed complex, by name.
pub type Checks = BTreeMap<String, bool>;

/// Homology and invariants of a complex with normalized gradings.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub complex: FilteredComplex,
    pub table: HfkTable,
    pub tau: i64,
    pub bounds: Bounds,
    pub checks: Checks,
}

/// Normalize gradings, compute homology and invariants, and run the
/// invariant checks; any failed check is an error.
pub fn analyze(
    c: &FilteredComplex,
    name: &str,
    fallback: Option<&dyn Fn(usize) -> (i64, i64)>,
) -> Result<Analysis, Error> {
    if let Err(w) = verify_d_squared(c) {
        return Err(FloerError::DSquaredNonzero {
            from: c.generators[w.from].name.clone(),
            to: c.generators[w.to].name.clone(),
            n_w: w.n_w,
            n_z: w.n_z,
            coef: w.coef,
        }
        .into());
    }
    let complex = normalize_gradings(c, fallback)?;
    let h = bigraded_homology(&complex)?;
    let t = tau(&complex)?;
    let table = hfk_table(&h, name, Some(t))?;
    let mut checks = Checks::new();
    checks.insert("d_squared_zero".into(), true);
    checks.insert("hat_homology_is_z".into(), true);
    checks.insert("symmetric".into(), true);
    checks.insert("unit_coefficients".into(), complex.terms.iter().all(|t| t.coef.abs() == 1));
    checks.insert("euler_at_one_is_unit".into(), table.euler_at_one().abs() == 1);
    checks.insert(
        "euler_symmetric".into(),
        table.euler.iter().all(|(i, a)| table.euler.get(&-i) == Some(a)),
    );
    checks.insert("torsion_free".into(), table.is_free());
    checks.insert("tau_within_genus".into(), t.abs() <= table.genus);
    if let Some((k, _)) = checks.iter().find(|(_, ok)| !**ok) {
        return Err(Error::Consistency(k.clone()));
    }
    let b = bounds(t, table.genus);
    Ok(Analysis { complex, table, tau: t, bounds: b, checks })
}

/// Everything the geometric pipeline produces for one diagram.
#[derive(Clone, Debug)]
pub struct EngineRun {
    pub diagram: Diagram11,
    pub lifted: LiftedDiagram,
    pub bigons: Vec<BigonClass>,
    /// Complex before grading normalization.
    pub raw_complex: FilteredComplex,
    pub analysis: Analysis,
}

/// The complex of a diagram, before analysis.
pub fn engine_complex(
    raw: &DiagramDescription,
    window_limit: usize,
) -> Result<(Diagram11, LiftedDiagram, Vec<BigonClass>, FilteredComplex), Error> {
    let d = validate(raw)?;
    let (l, b) = stable_bigons(&d, window_limit)?;
    let c = build_cfk(&l, &b)?;
    Ok((d, l, b, c))
}

/// validate, route, count bigons, build the complex and analyze it.
pub fn run_diagram(raw: &DiagramDescription, window_limit: usize) -> Result<EngineRun, Error> {
    let (d, l, b, c) = engine_complex(raw, window_limit)?;
    let name = d.name().unwrap_or("knot").to_string();
    let fallback = |g: usize| domain_between(&l, 0, g).grading_shift();
    let mut analysis = analyze(&c, &name, Some(&fallback))?;
    analysis.checks.insert("window_stable".into(), true);
    Ok(EngineRun { diagram: d, lifted: l, bigons: b, raw_complex: c, analysis })
}

/// Whether two complexes agree as based, signed, filtered complexes under
/// their generator names.
pub fn same_named_complex(a: &FilteredComplex, b: &FilteredComplex) -> bool {
    let names = |c: &FilteredComplex| {
        let mut v: Vec<String> = c.generators.iter().map(|g| g.name.clone()).collect();
        v.sort();
        v
    };
    names(a) == names(b) && a.named_terms() == b.named_terms()
}
