//! Martingale, submartingale and supermartingale checks.
//!
//! Each class can be tested four ways: the pairwise conditional-expectation
//! condition over all `i ≤ j`, the successor condition over `(n, n + 1)`,
//! set integrals over every `F_i`-event, and conditional expectations of
//! increments. They agree on every adapted process; [`classify`] runs the
//! requested ones and fails loudly if they ever disagree.

use std::cmp::Ordering;

use serde::Serialize;

use crate::condexp::cond_exp;
use crate::error::{Error, Result};
use crate::measure::{set_integral, EventCap, FnTable, MeasureSpace};
use crate::numeric::{scalar_cmp, VecD};
use crate::process::{first_unadapted_time, Filtration, ProcessTable};
use crate::sigma::Partition;

/// Relation demanded between `X_i` and the later value, read as
/// `X_i R E(X_j | F_i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// martingale
    Eq,
    /// submartingale
    Le,
    /// supermartingale
    Ge,
}

impl Relation {
    fn holds(self, lhs: &VecD, rhs: &VecD) -> Result<bool> {
        Ok(match self {
            Relation::Eq => lhs == rhs,
            Relation::Le => scalar_cmp(lhs, rhs)? != Ordering::Greater,
            Relation::Ge => scalar_cmp(lhs, rhs)? != Ordering::Less,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Characterization {
    Pairwise,
    Successor,
    SetIntegral,
    Difference,
}

impl Characterization {
    pub const ALL: [Characterization; 4] = [
        Characterization::Pairwise,
        Characterization::Successor,
        Characterization::SetIntegral,
        Characterization::Difference,
    ];
}

/// Which `(i, j)` pairs the set-integral check ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    AllPairs,
    Successor,
}

/// A failed instance of `lhs R rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub characterization: Characterization,
    pub i: usize,
    pub j: usize,
    /// The `F_i`-event involved: an atom, or a union of atoms for the
    /// set-integral check.
    pub event: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outcome: Option<usize>,
    pub lhs: VecD,
    pub rhs: VecD,
}

fn preconditions(f: &Filtration, x: &ProcessTable, rel: Relation) -> Result<()> {
    if rel != Relation::Eq && x.dim() != 1 {
        return Err(Error::UnsupportedOrder { dim: x.dim() });
    }
    if let Some(time) = first_unadapted_time(x, f)? {
        return Err(Error::NotAdapted { time });
    }
    Ok(())
}

/// Compares `lhs` and `rhs` (both `F_i`-measurable) atom by atom, at the
/// first positive-weight outcome of each non-null atom.
fn atomwise(
    m: &MeasureSpace,
    part: &Partition,
    rel: Relation,
    lhs: &FnTable,
    rhs: &FnTable,
    mut on_fail: impl FnMut(&[usize], usize) -> bool,
) -> Result<()> {
    for atom in part.atoms() {
        let Some(&w) = atom.iter().find(|&&w| m.weight(w).is_positive()) else {
            continue;
        };
        if !rel.holds(lhs.get(w), rhs.get(w))? && !on_fail(atom, w) {
            break;
        }
    }
    Ok(())
}

/// All failures of `X_i R E(X_j | F_i)` over the given pairs, in
/// lexicographic `(i, j, atom)` order. Stops after the first one when
/// `first_only` is set.
fn condexp_failures(
    m: &MeasureSpace,
    f: &Filtration,
    x: &ProcessTable,
    rel: Relation,
    characterization: Characterization,
    first_only: bool,
) -> Result<Vec<Counterexample>> {
    let horizon = x.horizon();
    let mut out = Vec::new();
    for i in 0..=horizon {
        let js: Vec<usize> = match characterization {
            Characterization::Successor => (i + 1..=horizon.min(i + 1)).collect(),
            _ => (i..=horizon).collect(),
        };
        for j in js {
            let expected = cond_exp(m, f.at(i), x.at(j))?.table;
            atomwise(m, f.at(i), rel, x.at(i), &expected, |atom, w| {
                out.push(Counterexample {
                    characterization,
                    i,
                    j,
                    event: atom.to_vec(),
                    outcome: Some(w),
                    lhs: x.at(i).get(w).clone(),
                    rhs: expected.get(w).clone(),
                });
                !first_only
            })?;
            if first_only && !out.is_empty() {
                return Ok(out);
            }
        }
    }
    Ok(out)
}

fn set_integral_failure(
    m: &MeasureSpace,
    f: &Filtration,
    x: &ProcessTable,
    rel: Relation,
    scope: Scope,
    cap: EventCap,
) -> Result<Option<Counterexample>> {
    let horizon = x.horizon();
    for i in 0..=horizon {
        let part = f.at(i);
        cap.check(part.num_atoms())?;
        let js = match scope {
            Scope::AllPairs => i..horizon + 1,
            Scope::Successor => (i + 1).min(horizon + 1)..(i + 2).min(horizon + 1),
        };
        for j in js {
            for mask in 0u64..(1u64 << part.num_atoms()) {
                let event = part.event_from_mask(mask);
                let lhs = set_integral(m, &event, x.at(i))?;
                let rhs = set_integral(m, &event, x.at(j))?;
                if !rel.holds(&lhs, &rhs)? {
                    return Ok(Some(Counterexample {
                        characterization: Characterization::SetIntegral,
                        i,
                        j,
                        event,
                        outcome: None,
                        lhs,
                        rhs,
                    }));
                }
            }
        }
    }
    Ok(None)
}

fn difference_failure(m: &MeasureSpace, f: &Filtration, x: &ProcessTable, rel: Relation) -> Result<Option<Counterexample>> {
    let zero = FnTable::zeros(x.universe_size(), x.dim());
    for i in 0..x.horizon() {
        let increment = x.at(i + 1).try_sub(x.at(i))?;
        let drift = cond_exp(m, f.at(i), &increment)?.table;
        let mut found = None;
        atomwise(m, f.at(i), rel, &zero, &drift, |atom, w| {
            found = Some(Counterexample {
                characterization: Characterization::Difference,
                i,
                j: i + 1,
                event: atom.to_vec(),
                outcome: Some(w),
                lhs: zero.get(w).clone(),
                rhs: drift.get(w).clone(),
            });
            false
        })?;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// First counterexample for `characterization` and `rel`, or `None` if the
/// property holds. Requires an adapted process, and scalar values for the
/// order relations.
pub fn find_counterexample(
    m: &MeasureSpace,
    f: &Filtration,
    x: &ProcessTable,
    characterization: Characterization,
    rel: Relation,
    cap: EventCap,
) -> Result<Option<Counterexample>> {
    preconditions(f, x, rel)?;
    if m.len() != x.universe_size() {
        return Err(Error::UniverseMismatch { left: m.len(), right: x.universe_size() });
    }
    match characterization {
        Characterization::Pairwise | Characterization::Successor => {
            Ok(condexp_failures(m, f, x, rel, characterization, true)?.into_iter().next())
        }
        Characterization::SetIntegral => set_integral_failure(m, f, x, rel, Scope::AllPairs, cap),
        Characterization::Difference => difference_failure(m, f, x, rel),
    }
}

/// Every failure of the pairwise condition, in `(i, j, atom)` order.
pub fn pairwise_failures(m: &MeasureSpace, f: &Filtration, x: &ProcessTable, rel: Relation) -> Result<Vec<Counterexample>> {
    preconditions(f, x, rel)?;
    condexp_failures(m, f, x, rel, Characterization::Pairwise, false)
}

/// `X_i = E(X_j | F_i)` a.e. for all `i ≤ j`.
pub fn is_martingale(m: &MeasureSpace, f: &Filtration, x: &ProcessTable) -> Result<bool> {
    Ok(find_counterexample(m, f, x, Characterization::Pairwise, Relation::Eq, EventCap::default())?.is_none())
}

/// `X_i ≤ E(X_j | F_i)` a.e. for all `i ≤ j`.
pub fn is_submartingale(m: &MeasureSpace, f: &Filtration, x: &ProcessTable) -> Result<bool> {
    Ok(find_counterexample(m, f, x, Characterization::Pairwise, Relation::Le, EventCap::default())?.is_none())
}

/// `X_i ≥ E(X_j | F_i)` a.e. for all `i ≤ j`.
pub fn is_supermartingale(m: &MeasureSpace, f: &Filtration, x: &ProcessTable) -> Result<bool> {
    Ok(find_counterexample(m, f, x, Characterization::Pairwise, Relation::Ge, EventCap::default())?.is_none())
}

pub fn check_succ(m: &MeasureSpace, f: &Filtration, x: &ProcessTable, rel: Relation) -> Result<bool> {
    Ok(find_counterexample(m, f, x, Characterization::Successor, rel, EventCap::default())?.is_none())
}

pub fn check_set_integral(
    m: &MeasureSpace,
    f: &Filtration,
    x: &ProcessTable,
    rel: Relation,
    scope: Scope,
    cap: EventCap,
) -> Result<bool> {
    preconditions(f, x, rel)?;
    Ok(set_integral_failure(m, f, x, rel, scope, cap)?.is_none())
}

pub fn check_difference(m: &MeasureSpace, f: &Filtration, x: &ProcessTable, rel: Relation) -> Result<bool> {
    Ok(find_counterexample(m, f, x, Characterization::Difference, rel, EventCap::default())?.is_none())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Martingale,
    Submartingale,
    Supermartingale,
    None,
    UnsupportedOrder,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    UnsupportedOrder,
    /// Not evaluated because the process is not adapted.
    Skipped,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairwise: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub successor: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set_integral: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference: Option<bool>,
}

impl Verdicts {
    fn set(&mut self, c: Characterization, v: bool) {
        let slot = match c {
            Characterization::Pairwise => &mut self.pairwise,
            Characterization::Successor => &mut self.successor,
            Characterization::SetIntegral => &mut self.set_integral,
            Characterization::Difference => &mut self.difference,
        };
        *slot = Some(v);
    }

    fn all(&self) -> impl Iterator<Item = bool> {
        [self.pairwise, self.successor, self.set_integral, self.difference].into_iter().flatten()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KindReport {
    pub status: Status,
    pub verdicts: Verdicts,
    /// First failure of the first characterization that failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    /// Every failing `(i, j, atom)` of the pairwise condition.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<Counterexample>,
}

impl KindReport {
    fn with_status(status: Status) -> Self {
        KindReport { status, verdicts: Verdicts::default(), counterexample: None, violations: Vec::new() }
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub adapted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_unadapted_time: Option<usize>,
    pub dimension: usize,
    pub kind: Kind,
    pub martingale: KindReport,
    pub submartingale: KindReport,
    pub supermartingale: KindReport,
}

fn kind_report(
    m: &MeasureSpace,
    f: &Filtration,
    x: &ProcessTable,
    rel: Relation,
    characterizations: &[Characterization],
    cap: EventCap,
) -> Result<KindReport> {
    let mut report = KindReport::with_status(Status::Holds);
    for &c in characterizations {
        let cx = find_counterexample(m, f, x, c, rel, cap)?;
        report.verdicts.set(c, cx.is_none());
        if report.counterexample.is_none() {
            report.counterexample = cx;
        }
        if c == Characterization::Pairwise {
            report.violations = pairwise_failures(m, f, x, rel)?;
        }
    }
    let verdicts: Vec<bool> = report.verdicts.all().collect();
    if verdicts.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::InvariantViolation(format!(
            "characterizations disagree for {rel:?}: {:?}",
            report.verdicts
        )));
    }
    if verdicts.first() == Some(&false) {
        report.status = Status::Fails;
    }
    Ok(report)
}

/// Runs the requested characterizations for all three classes. Only
/// capacity errors and internal inconsistencies are returned as errors.
pub fn classify(
    m: &MeasureSpace,
    f: &Filtration,
    x: &ProcessTable,
    characterizations: &[Characterization],
    cap: EventCap,
) -> Result<ClassificationReport> {
    let unadapted = first_unadapted_time(x, f)?;
    let dimension = x.dim();
    if unadapted.is_some() {
        return Ok(ClassificationReport {
            adapted: false,
            first_unadapted_time: unadapted,
            dimension,
            kind: Kind::None,
            martingale: KindReport::with_status(Status::Skipped),
            submartingale: KindReport::with_status(Status::Skipped),
            supermartingale: KindReport::with_status(Status::Skipped),
        });
    }
    let martingale = kind_report(m, f, x, Relation::Eq, characterizations, cap)?;
    let (submartingale, supermartingale) = if dimension == 1 {
        (
            kind_report(m, f, x, Relation::Le, characterizations, cap)?,
            kind_report(m, f, x, Relation::Ge, characterizations, cap)?,
        )
    } else {
        (KindReport::with_status(Status::UnsupportedOrder), KindReport::with_status(Status::UnsupportedOrder))
    };
    if dimension == 1 && martingale.holds() != (submartingale.holds() && supermartingale.holds()) {
        return Err(Error::InvariantViolation(
            "martingale verdict disagrees with submartingale and supermartingale verdicts".into(),
        ));
    }
    let kind = if martingale.holds() {
        Kind::Martingale
    } else if dimension != 1 {
        Kind::UnsupportedOrder
    } else if submartingale.holds() {
        Kind::Submartingale
    } else if supermartingale.holds() {
        Kind::Supermartingale
    } else {
        Kind::None
    };
    Ok(ClassificationReport {
        adapted: true,
        first_unadapted_time: None,
        dimension,
        kind,
        martingale,
        submartingale,
        supermartingale,
    })
}

/// `X_t = E(g | F_t)`, always a martingale.
pub fn cond_exp_process(m: &MeasureSpace, f: &Filtration, g: &FnTable) -> Result<ProcessTable> {
    let tables = f.parts().iter().map(|p| Ok(cond_exp(m, p, g)?.table)).collect::<Result<_>>()?;
    ProcessTable::new(tables)
}

/// Martingale transform `Y_n = Σ_{i<n} C_{i+1} (X_{i+1} − X_i)`, `Y_0 = 0`.
/// `C_0` is never used.
pub fn transform(c: &ProcessTable, x: &ProcessTable) -> Result<ProcessTable> {
    if c.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: c.dim() });
    }
    if c.horizon() != x.horizon() {
        return Err(Error::HorizonMismatch { left: c.horizon(), right: x.horizon() });
    }
    if c.universe_size() != x.universe_size() {
        return Err(Error::UniverseMismatch { left: c.universe_size(), right: x.universe_size() });
    }
    let mut acc = FnTable::zeros(x.universe_size(), x.dim());
    let mut tables = vec![acc.clone()];
    for i in 0..x.horizon() {
        let step = x.at(i + 1).try_sub(x.at(i))?.mul_scalar_table(c.at(i + 1))?;
        acc = acc.try_add(&step)?;
        tables.push(acc.clone());
    }
    ProcessTable::new(tables)
}
