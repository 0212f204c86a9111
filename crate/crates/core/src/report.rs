//! Measure reports, per-state audits and asymptotic-convergence studies.
//!
//! Everything here is a thin layer that names quantities and tags every
//! number with the route that produced it; serialization lives with the
//! front-ends.

use std::collections::BTreeMap;
use std::f64::consts::E;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::audit::AuditRecord;
use crate::complexity::{cramer_rao, disequilibrium, fisher_shannon, fisher_shannon_asymptotic, lmc, Method};
use crate::entropy::{entropic_sum_audit, shannon, shannon_asymptotic};
use crate::error::{Error, Result};
use crate::fisher::{fisher, fisher_asymptotic, fisher_product_audit};
use crate::moments::{
    heisenberg_audit, log_moment_asymptotic, log_p_moment, log_r_moment, log_sum_audit, log_uncertainty_audit,
    p_moment, p_moment_asymptotic, r_moment, r_moment_asymptotic, AsymptoticValue, LogMomentKind,
};
use crate::quadrature::{QuadResult, Tolerance};
use crate::special::{self, SpecialKind, SpecialState};
use crate::specfun::gamma::EULER_GAMMA;
use crate::states::{QuantumState, Space};

/// A measure that can be requested in a report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Measure {
    /// ⟨r^α⟩ in position space, ⟨p^α⟩ in momentum space.
    RMoment(f64),
    Shannon,
    Fisher,
    CramerRao,
    FisherShannon,
    Lmc,
    Disequilibrium,
    LogMoment,
}

impl Measure {
    pub fn name(&self) -> String {
        match self {
            Measure::RMoment(a) => format!("r_moment:{a}"),
            Measure::Shannon => "shannon".into(),
            Measure::Fisher => "fisher".into(),
            Measure::CramerRao => "cramer_rao".into(),
            Measure::FisherShannon => "fisher_shannon".into(),
            Measure::Lmc => "lmc".into(),
            Measure::Disequilibrium => "disequilibrium".into(),
            Measure::LogMoment => "log_moment".into(),
        }
    }

    /// Parses a comma-separated list, rejecting unknown names.
    pub fn parse_list(s: &str) -> Result<Vec<Measure>> {
        s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(str::parse).collect()
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(a) = s.strip_prefix("r_moment:") {
            let alpha: f64 = a.parse().map_err(|_| Error::Domain(format!("bad moment exponent '{a}'")))?;
            return Ok(Measure::RMoment(alpha));
        }
        Ok(match s {
            "shannon" => Measure::Shannon,
            "fisher" => Measure::Fisher,
            "cramer_rao" => Measure::CramerRao,
            "fisher_shannon" => Measure::FisherShannon,
            "lmc" => Measure::Lmc,
            "disequilibrium" => Measure::Disequilibrium,
            "log_moment" => Measure::LogMoment,
            _ => return Err(Error::Domain(format!("unknown measure '{s}'"))),
        })
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// One cell of a report: a tagged value or an explicit error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub value: Option<f64>,
    pub abs_err: Option<f64>,
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Entry {
    fn exact(value: f64) -> Self {
        Self { value: Some(value), abs_err: Some(0.0), method: Method::Exact.as_str().into(), error: None }
    }

    fn quadrature(q: &QuadResult) -> Self {
        Self {
            value: Some(q.value),
            abs_err: Some(q.abs_err),
            method: Method::Quadrature.as_str().into(),
            error: None,
        }
    }

    fn failed(e: &Error) -> Self {
        Self { value: None, abs_err: None, method: format!("error:{}", e.kind()), error: Some(e.to_string()) }
    }
}

/// Every requested measure of one density.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub state: QuantumState,
    pub space: Space,
    pub entries: BTreeMap<String, Entry>,
}

fn evaluate(state: &QuantumState, space: Space, m: Measure, tol: Tolerance) -> Result<Entry> {
    Ok(match m {
        Measure::RMoment(a) => Entry::quadrature(&match space {
            Space::Position => r_moment(state, a, tol)?,
            Space::Momentum => p_moment(state, a, tol)?,
        }),
        Measure::Shannon => Entry::quadrature(&shannon(state, space, tol)?),
        Measure::Fisher => Entry::exact(fisher(state, space)),
        Measure::CramerRao => Entry::exact(cramer_rao(state, space)),
        Measure::FisherShannon => Entry::quadrature(&fisher_shannon(state, space, tol)?),
        Measure::Lmc => Entry::quadrature(&lmc(state, space, tol)?),
        Measure::Disequilibrium => Entry::quadrature(&disequilibrium(state, space, tol)?),
        Measure::LogMoment => Entry::quadrature(&match space {
            Space::Position => log_r_moment(state, tol)?,
            Space::Momentum => log_p_moment(state, tol)?,
        }),
    })
}

/// Evaluates each measure independently; a failing measure becomes an error
/// entry instead of aborting the report.
pub fn compute_report(state: &QuantumState, space: Space, measures: &[Measure], tol: impl Into<Tolerance>) -> MeasureReport {
    let tol = tol.into();
    let entries = measures
        .iter()
        .map(|&m| (m.name(), evaluate(state, space, m, tol).unwrap_or_else(|e| Entry::failed(&e))))
        .collect();
    MeasureReport { state: *state, space, entries }
}

/// An audited relation family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "entropic-sum")]
    EntropicSum,
    #[serde(rename = "fisher-product")]
    FisherProduct,
    #[serde(rename = "heisenberg")]
    Heisenberg,
    #[serde(rename = "log-sum")]
    LogSum,
    #[serde(rename = "log-sum-central")]
    LogSumCentral,
    #[serde(rename = "formula-vs-quadrature")]
    FormulaVsQuadrature,
}

impl Relation {
    pub const ALL: [Relation; 6] = [
        Relation::EntropicSum,
        Relation::FisherProduct,
        Relation::Heisenberg,
        Relation::LogSum,
        Relation::LogSumCentral,
        Relation::FormulaVsQuadrature,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Relation::EntropicSum => "entropic-sum",
            Relation::FisherProduct => "fisher-product",
            Relation::Heisenberg => "heisenberg",
            Relation::LogSum => "log-sum",
            Relation::LogSumCentral => "log-sum-central",
            Relation::FormulaVsQuadrature => "formula-vs-quadrature",
        }
    }

    pub fn parse_list(s: &str) -> Result<Vec<Relation>> {
        if s.trim() == "all" {
            return Ok(Relation::ALL.to_vec());
        }
        s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(str::parse).collect()
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Relation::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown relation '{s}'")))
    }
}

/// The circular or quasicircular family a state belongs to, if any
/// (non-negative m only, so each family member is audited once).
pub fn special_family(state: &QuantumState) -> Option<SpecialKind> {
    if state.m() < 0 || state.m_abs() != state.l() {
        return None;
    }
    match state.n() - state.l() {
        1 => Some(SpecialKind::Circular),
        2 => Some(SpecialKind::Quasicircular),
        _ => None,
    }
}

/// All requested relations for one state, each row re-judged at `audit_tol`.
pub fn audit_state(
    state: &QuantumState,
    relations: &[Relation],
    tol: impl Into<Tolerance>,
    audit_tol: f64,
) -> Vec<AuditRecord> {
    let tol = tol.into();
    let s = Some(*state);
    let mut out = Vec::new();
    for &rel in relations {
        let rows = match rel {
            Relation::EntropicSum => vec![entropic_sum_audit(state, tol)],
            Relation::FisherProduct => vec![Ok(fisher_product_audit(state))],
            Relation::Heisenberg => vec![Ok(heisenberg_audit(state))],
            Relation::LogSum => vec![log_sum_audit(state, tol)],
            Relation::LogSumCentral => vec![log_uncertainty_audit(state, tol)],
            Relation::FormulaVsQuadrature => match special_family(state) {
                None => vec![],
                Some(kind) => match SpecialState::new(kind, state.n(), state.z()).and_then(|sp| special::special_audits(&sp, tol)) {
                    Ok(rows) => rows.into_iter().map(Ok).collect(),
                    Err(e) => vec![Err(e)],
                },
            },
        };
        out.extend(rows.into_iter().map(|r| match r {
            Ok(rec) => rec.with_tolerance(audit_tol),
            Err(e) => AuditRecord::failed(rel.as_str(), s, &e).with_tolerance(audit_tol),
        }));
    }
    out
}

/// Fixed-(l, m) or family-indexed quantity whose exact value can be compared
/// with a printed large-n expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    Shannon(Space),
    Fisher(Space),
    FisherShannon(Space),
    /// ⟨r^α⟩.
    RMoment(f64),
    /// ⟨p^α⟩.
    PMoment(f64),
    Log(LogMomentKind),
    Family { kind: SpecialKind, measure: FamilyMeasure, space: Space },
    /// −I_n/(2nΓ(2n−1)) of the quasicircular position entropy.
    InTerm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyMeasure {
    Shannon,
    FisherShannon,
    Lmc,
}

impl Quantity {
    /// Whether the quantity is indexed by (l, m) rather than by a family.
    pub fn needs_lm(&self) -> bool {
        !matches!(self, Quantity::Family { .. } | Quantity::InTerm)
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("unknown quantity '{s}'"));
        if let Some(a) = s.strip_prefix("r_moment:") {
            return a.parse().map(Quantity::RMoment).map_err(|_| bad());
        }
        if let Some(a) = s.strip_prefix("p_moment:") {
            return a.parse().map(Quantity::PMoment).map_err(|_| bad());
        }
        match s {
            "log-position" => return Ok(Quantity::Log(LogMomentKind::Position)),
            "log-momentum" => return Ok(Quantity::Log(LogMomentKind::Momentum)),
            "log-sum" => return Ok(Quantity::Log(LogMomentKind::Sum)),
            "in-term" => return Ok(Quantity::InTerm),
            _ => {}
        }
        let (head, space) = s.rsplit_once('-').ok_or_else(bad)?;
        let space: Space = space.parse().map_err(|_| bad())?;
        let (measure, family) = match head.rsplit_once('-') {
            Some((m, "circular")) => (m, Some(SpecialKind::Circular)),
            Some((m, "quasicircular")) => (m, Some(SpecialKind::Quasicircular)),
            _ => (head, None),
        };
        match (measure, family) {
            ("shannon", None) => Ok(Quantity::Shannon(space)),
            ("fisher", None) => Ok(Quantity::Fisher(space)),
            ("fisher-shannon", None) => Ok(Quantity::FisherShannon(space)),
            (m, Some(kind)) => {
                let measure = match m {
                    "shannon" => FamilyMeasure::Shannon,
                    "fisher-shannon" => FamilyMeasure::FisherShannon,
                    "lmc" => FamilyMeasure::Lmc,
                    _ => return Err(bad()),
                };
                Ok(Quantity::Family { kind, measure, space })
            }
            _ => Err(bad()),
        }
    }
}

/// One n of a convergence study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergeRow {
    pub n: u32,
    pub exact: f64,
    pub abs_err: f64,
    pub asymptotic: f64,
    pub difference: f64,
    pub ratio: f64,
    /// difference × n^p for the declared remainder class.
    pub scaled_difference: f64,
    /// (exact − leading term) × n: the first-order correction coefficient.
    pub first_order: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergeTable {
    pub quantity: String,
    pub l: Option<u32>,
    pub m: Option<i32>,
    #[serde(rename = "Z")]
    pub z: f64,
    pub remainder: String,
    pub scale_power: f64,
    pub rows: Vec<ConvergeRow>,
    /// |difference| strictly decreases along the n list.
    pub monotone: bool,
}

struct Point {
    exact: QuadResult,
    asymptotic: AsymptoticValue,
    leading: f64,
}

fn point(q: Quantity, n: u32, l: u32, m: i32, z: f64, tol: Tolerance) -> Result<Point> {
    let general = || QuantumState::with_max_n(n, l, m, z, u32::MAX);
    let plain = |exact: QuadResult, asymptotic: AsymptoticValue| Point { exact, leading: asymptotic.value, asymptotic };
    Ok(match q {
        Quantity::Shannon(space) => {
            let s = general()?;
            plain(shannon(&s, space, tol)?, shannon_asymptotic(&s, space, tol)?)
        }
        Quantity::Fisher(space) => plain(QuadResult::exact(fisher(&general()?, space)), fisher_asymptotic(space, n, z)),
        Quantity::FisherShannon(space) => {
            let s = general()?;
            plain(fisher_shannon(&s, space, tol)?, fisher_shannon_asymptotic(space, l, m, n, tol)?)
        }
        Quantity::RMoment(a) => plain(r_moment(&general()?, a, tol)?, r_moment_asymptotic(z, n, l, a)?),
        Quantity::PMoment(a) => plain(p_moment(&general()?, a, tol)?, p_moment_asymptotic(z, n, a)?),
        Quantity::Log(kind) => {
            let s = general()?;
            let exact = match kind {
                LogMomentKind::Position => log_r_moment(&s, tol)?,
                LogMomentKind::Momentum => log_p_moment(&s, tol)?,
                LogMomentKind::Sum => log_r_moment(&s, tol)?.combine(1.0, &log_p_moment(&s, tol)?, 1.0),
            };
            plain(exact, log_moment_asymptotic(z, n, l, kind)?)
        }
        Quantity::InTerm => {
            let i = special::in_scaled_quadrature(n, tol)?;
            plain(i.scale(-1.0 / (2.0 * n as f64)), special::in_term_asymptotic(n))
        }
        Quantity::Family { kind, measure, space } => {
            let s = SpecialState::new(kind, n, z)?.state()?;
            let g = EULER_GAMMA.exp();
            match (measure, kind) {
                (FamilyMeasure::Shannon, SpecialKind::Circular) => {
                    plain(shannon(&s, space, tol)?, special::circ_shannon_asymptotic(n, z, space))
                }
                (FamilyMeasure::Shannon, SpecialKind::Quasicircular) => plain(
                    shannon(&s, space, tol)?,
                    match space {
                        Space::Position => special::quasi_shannon_position_asymptotic(n, z),
                        Space::Momentum => special::quasi_shannon_momentum_asymptotic(n, z),
                    },
                ),
                (FamilyMeasure::FisherShannon, SpecialKind::Circular) => {
                    plain(fisher_shannon(&s, space, tol)?, special::circ_fs_asymptotic(n))
                }
                (FamilyMeasure::FisherShannon, SpecialKind::Quasicircular) => {
                    plain(fisher_shannon(&s, space, tol)?, special::quasi_fs_asymptotic(n, space))
                }
                (FamilyMeasure::Lmc, SpecialKind::Circular) => Point {
                    exact: lmc(&s, space, tol)?,
                    asymptotic: special::circ_lmc_asymptotic(n, space),
                    leading: E / 2.0,
                },
                (FamilyMeasure::Lmc, SpecialKind::Quasicircular) => Point {
                    exact: lmc(&s, space, tol)?,
                    asymptotic: special::quasi_lmc_asymptotic(n, space),
                    leading: 0.75 * g,
                },
            }
        }
    })
}

/// Exact (or quadrature) value against the printed expansion along `ns`.
pub fn converge(
    quantity_id: &str,
    l: u32,
    m: i32,
    z: f64,
    ns: &[u32],
    tol: impl Into<Tolerance>,
) -> Result<ConvergeTable> {
    let q: Quantity = quantity_id.parse()?;
    let tol = tol.into();
    let mut rows = Vec::with_capacity(ns.len());
    let mut remainder = None;
    for &n in ns {
        let p = point(q, n, l, m, z, tol)?;
        let power = p.asymptotic.remainder.scaling_power();
        remainder = Some(p.asymptotic.remainder);
        let nf = n as f64;
        let difference = p.exact.value - p.asymptotic.value;
        rows.push(ConvergeRow {
            n,
            exact: p.exact.value,
            abs_err: p.exact.abs_err,
            asymptotic: p.asymptotic.value,
            difference,
            ratio: p.exact.value / p.asymptotic.value,
            scaled_difference: difference * nf.powf(power),
            first_order: (p.exact.value - p.leading) * nf,
        });
    }
    let remainder = remainder.ok_or_else(|| Error::Domain("empty n list".into()))?;
    let monotone = rows.windows(2).all(|w| w[1].difference.abs() < w[0].difference.abs());
    Ok(ConvergeTable {
        quantity: quantity_id.to_string(),
        l: q.needs_lm().then_some(l),
        m: q.needs_lm().then_some(m),
        z,
        remainder: remainder.as_str().into(),
        scale_power: remainder.scaling_power(),
        rows,
        monotone,
    })
}
