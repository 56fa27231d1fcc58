//! Finite measure spaces, integrals of value tables, a.e. predicates and
//! the brute-force event oracles.
//!
//! Every function on a finite space is simple and integrable, so the
//! Bochner integral is just the weighted sum of the table.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{diameter, scalar_cmp, Rat, VecD};
use crate::sigma::Partition;

/// Default largest universe the `2^n` event oracles will enumerate.
pub const DEFAULT_EVENT_CAP: usize = 20;

/// Environment variable that overrides [`DEFAULT_EVENT_CAP`].
pub const EVENT_CAP_ENV: &str = "MARTKIT_EVENT_CAP";

/// Upper bound on the number of elements whose power set may be enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EventCap(pub usize);

impl Default for EventCap {
    fn default() -> Self {
        EventCap(DEFAULT_EVENT_CAP)
    }
}

impl EventCap {
    /// Reads `MARTKIT_EVENT_CAP`, falling back to the default when unset or
    /// unparsable. Capped at 63 since events are `u64` bitmasks.
    pub fn from_env() -> Self {
        std::env::var(EVENT_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .map(|c| EventCap(c.min(63)))
            .unwrap_or_default()
    }

    pub fn check(self, size: usize) -> Result<()> {
        if size > self.0 || size > 63 {
            return Err(Error::Capacity { size, cap: self.0.min(63) });
        }
        Ok(())
    }
}

/// Outcomes selected by the bits of `mask`.
pub fn mask_to_event(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&w| mask >> w & 1 == 1).collect()
}

/// A random variable on a finite space: one vector per outcome, all of the
/// same dimension.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct FnTable {
    values: Vec<VecD>,
}

impl std::fmt::Debug for FnTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.values).finish()
    }
}

impl FnTable {
    pub fn new(values: Vec<VecD>) -> Result<Self> {
        let first = values.first().ok_or_else(|| Error::Precondition("empty table".into()))?;
        let d = first.dim();
        if let Some(v) = values.iter().find(|v| v.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: v.dim() });
        }
        Ok(FnTable { values })
    }

    pub fn scalars(xs: Vec<Rat>) -> Result<Self> {
        Self::new(xs.into_iter().map(VecD::scalar).collect())
    }

    /// Scalar table from integers; panics on an empty slice.
    pub fn ints(xs: &[i64]) -> Self {
        Self::scalars(xs.iter().map(|&x| Rat::int(x)).collect()).expect("nonempty table")
    }

    pub fn constant(n: usize, value: VecD) -> Self {
        assert!(n >= 1, "tables need at least one outcome");
        FnTable { values: vec![value; n] }
    }

    pub fn zeros(n: usize, dim: usize) -> Self {
        Self::constant(n, VecD::zeros(dim))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.values[0].dim()
    }

    pub fn values(&self) -> &[VecD] {
        &self.values
    }

    pub fn get(&self, outcome: usize) -> &VecD {
        &self.values[outcome]
    }

    pub fn into_values(self) -> Vec<VecD> {
        self.values
    }

    fn check_shape(&self, other: &FnTable) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::UniverseMismatch { left: self.len(), right: other.len() });
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &FnTable) -> Result<FnTable> {
        self.check_shape(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.try_add(b)).collect::<Result<_>>()?;
        Ok(FnTable { values })
    }

    pub fn try_sub(&self, other: &FnTable) -> Result<FnTable> {
        self.check_shape(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.try_sub(b)).collect::<Result<_>>()?;
        Ok(FnTable { values })
    }

    pub fn scale(&self, c: &Rat) -> FnTable {
        FnTable { values: self.values.iter().map(|v| v.scale(c)).collect() }
    }

    pub fn neg(&self) -> FnTable {
        FnTable { values: self.values.iter().map(VecD::neg).collect() }
    }

    /// Pointwise product with a scalar table: `ω ↦ s(ω) · self(ω)`.
    pub fn mul_scalar_table(&self, s: &FnTable) -> Result<FnTable> {
        if s.len() != self.len() {
            return Err(Error::UniverseMismatch { left: self.len(), right: s.len() });
        }
        if s.dim() != 1 {
            return Err(Error::DimensionMismatch { expected: 1, found: s.dim() });
        }
        let values = self
            .values
            .iter()
            .zip(&s.values)
            .map(|(v, c)| v.scale(&c.components()[0]))
            .collect();
        Ok(FnTable { values })
    }

    /// `ω ↦ ‖self(ω)‖₁` as a scalar table.
    pub fn norms(&self) -> FnTable {
        FnTable { values: self.values.iter().map(|v| VecD::scalar(v.l1_norm())).collect() }
    }

    /// Pointwise image under `g`.
    pub fn map(&self, g: impl Fn(&VecD) -> VecD) -> Result<FnTable> {
        FnTable::new(self.values.iter().map(g).collect())
    }
}

impl<'de> Deserialize<'de> for FnTable {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let values = Vec::<VecD>::deserialize(deserializer)?;
        FnTable::new(values).map_err(serde::de::Error::custom)
    }
}

/// A finite measure on outcomes `0..n`, with the power set as σ-algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureSpace {
    labels: Option<Vec<String>>,
    weights: Vec<Rat>,
}

impl MeasureSpace {
    pub fn new(weights: Vec<Rat>) -> Result<Self> {
        Self::build(None, weights)
    }

    pub fn with_labels(labels: Vec<String>, weights: Vec<Rat>) -> Result<Self> {
        if labels.len() != weights.len() {
            return Err(Error::UniverseMismatch { left: labels.len(), right: weights.len() });
        }
        Self::build(Some(labels), weights)
    }

    fn build(labels: Option<Vec<String>>, weights: Vec<Rat>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Precondition("a measure space needs at least one outcome".into()));
        }
        if let Some(w) = weights.iter().position(Rat::is_negative) {
            let outcome = match &labels {
                Some(l) => format!("{w} ({:?})", l[w]),
                None => w.to_string(),
            };
            return Err(Error::NegativeWeight { outcome, weight: weights[w].to_string() });
        }
        Ok(MeasureSpace { labels, weights })
    }

    pub fn uniform(n: usize) -> Self {
        let w = Rat::new(1, n as i64).expect("n >= 1");
        Self::new(vec![w; n]).expect("uniform weights are valid")
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn weight(&self, outcome: usize) -> &Rat {
        &self.weights[outcome]
    }

    pub fn total(&self) -> Rat {
        self.weights.iter().sum()
    }

    pub fn is_probability(&self) -> bool {
        self.total() == Rat::one()
    }

    /// `μ(A)`.
    pub fn mass(&self, event: &[usize]) -> Rat {
        event.iter().map(|&w| &self.weights[w]).sum()
    }

    /// Outcomes of positive weight; a.e. statements range over these.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.weights.iter().enumerate().filter(|(_, w)| w.is_positive()).map(|(i, _)| i)
    }

    /// Same universe, weights zeroed outside `event`.
    pub fn restrict(&self, event: &[usize]) -> Result<MeasureSpace> {
        let mut weights = vec![Rat::zero(); self.len()];
        for &w in event {
            if w >= self.len() {
                return Err(Error::OutOfRange { index: w, size: self.len() });
            }
            weights[w] = self.weights[w].clone();
        }
        Ok(MeasureSpace { labels: self.labels.clone(), weights })
    }

    pub(crate) fn check_table(&self, f: &FnTable) -> Result<()> {
        if f.len() != self.len() {
            return Err(Error::UniverseMismatch { left: self.len(), right: f.len() });
        }
        Ok(())
    }

    pub(crate) fn check_partition(&self, p: &Partition) -> Result<()> {
        if p.universe_size() != self.len() {
            return Err(Error::UniverseMismatch { left: self.len(), right: p.universe_size() });
        }
        Ok(())
    }
}

fn weighted_sum<'a>(m: &MeasureSpace, f: &FnTable, outcomes: impl Iterator<Item = &'a usize>) -> VecD {
    let mut acc = vec![Rat::zero(); f.dim()];
    for &w in outcomes {
        let weight = m.weight(w);
        if weight.is_zero() {
            continue;
        }
        for (a, x) in acc.iter_mut().zip(f.get(w).components()) {
            *a = &*a + &(x * weight);
        }
    }
    VecD::new(acc).expect("dimension is positive")
}

/// `∫ f dμ = Σ_ω μ{ω} f(ω)`.
pub fn integral(m: &MeasureSpace, f: &FnTable) -> Result<VecD> {
    m.check_table(f)?;
    let all: Vec<usize> = (0..m.len()).collect();
    Ok(weighted_sum(m, f, all.iter()))
}

/// `∫_A f dμ`.
pub fn set_integral(m: &MeasureSpace, event: &[usize], f: &FnTable) -> Result<VecD> {
    m.check_table(f)?;
    if let Some(&w) = event.iter().find(|&&w| w >= m.len()) {
        return Err(Error::OutOfRange { index: w, size: m.len() });
    }
    Ok(weighted_sum(m, f, event.iter()))
}

/// First outcome of positive weight where `f` and `g` differ.
pub fn ae_eq_witness(m: &MeasureSpace, f: &FnTable, g: &FnTable) -> Result<Option<usize>> {
    m.check_table(f)?;
    m.check_table(g)?;
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: g.dim() });
    }
    Ok(m.support().find(|&w| f.get(w) != g.get(w)))
}

pub fn ae_eq(m: &MeasureSpace, f: &FnTable, g: &FnTable) -> Result<bool> {
    Ok(ae_eq_witness(m, f, g)?.is_none())
}

/// First outcome of positive weight where `f(ω) cmp g(ω)` is not among
/// `allowed`. Scalar tables only.
pub fn ae_order_witness(
    m: &MeasureSpace,
    f: &FnTable,
    g: &FnTable,
    allowed: &[Ordering],
) -> Result<Option<usize>> {
    m.check_table(f)?;
    m.check_table(g)?;
    if f.dim() != 1 || g.dim() != 1 {
        return Err(Error::UnsupportedOrder { dim: f.dim().max(g.dim()) });
    }
    for w in m.support() {
        if !allowed.contains(&scalar_cmp(f.get(w), g.get(w))?) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// `f ≤ g` μ-a.e.
pub fn ae_le(m: &MeasureSpace, f: &FnTable, g: &FnTable) -> Result<bool> {
    Ok(ae_order_witness(m, f, g, &[Ordering::Less, Ordering::Equal])?.is_none())
}

/// `f ≥ g` μ-a.e.
pub fn ae_ge(m: &MeasureSpace, f: &FnTable, g: &FnTable) -> Result<bool> {
    Ok(ae_order_witness(m, f, g, &[Ordering::Greater, Ordering::Equal])?.is_none())
}

/// `f < g` μ-a.e.
pub fn ae_lt(m: &MeasureSpace, f: &FnTable, g: &FnTable) -> Result<bool> {
    Ok(ae_order_witness(m, f, g, &[Ordering::Less])?.is_none())
}

/// Whether `μ(A ∩ B) = μ(A) μ(B)` for all atoms `A` of `p` and `B` of `q`.
/// Requires a probability measure.
pub fn independent(m: &MeasureSpace, p: &Partition, q: &Partition) -> Result<bool> {
    if !m.is_probability() {
        return Err(Error::NotProbability { total: m.total().to_string() });
    }
    m.check_partition(p)?;
    m.check_partition(q)?;
    let q_labels = q.labels();
    let q_mass: Vec<Rat> = q.atoms().iter().map(|b| m.mass(b)).collect();
    for a in p.atoms() {
        let mass_a = m.mass(a);
        let mut joint = vec![Rat::zero(); q.num_atoms()];
        for &w in a {
            let k = q_labels[w];
            joint[k] = &joint[k] + m.weight(w);
        }
        if joint.iter().zip(&q_mass).any(|(j, mb)| *j != &mass_a * mb) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of [`averaging_oracle`].
///
/// On a finite space every singleton of positive weight is an event, so the
/// premise alone forces the conclusion for any target set, closed or not.
/// The oracle therefore accepts an arbitrary membership predicate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AveragingReport {
    /// Every event of positive mass has its average inside the target set.
    pub premise_holds: bool,
    /// `f(ω)` lies in the target set at every outcome of positive weight.
    pub conclusion_holds: bool,
    /// First event (ascending bitmask order) whose average escapes the set.
    pub premise_witness: Option<Vec<usize>>,
    pub premise_witness_average: Option<VecD>,
    pub conclusion_witness: Option<usize>,
}

/// Enumerates all `2^n` events and checks the averaging premise and
/// conclusion for the target set given by `member`.
pub fn averaging_oracle(
    m: &MeasureSpace,
    f: &FnTable,
    member: impl Fn(&VecD) -> bool,
    cap: EventCap,
) -> Result<AveragingReport> {
    m.check_table(f)?;
    let n = m.len();
    cap.check(n)?;
    let mut premise_witness = None;
    for mask in 1u64..(1u64 << n) {
        let event = mask_to_event(mask, n);
        let mass = m.mass(&event);
        if mass.is_zero() {
            continue;
        }
        let avg = weighted_sum(m, f, event.iter()).scale(&mass.recip().expect("positive mass"));
        if !member(&avg) {
            premise_witness = Some((event, avg));
            break;
        }
    }
    let conclusion_witness = m.support().find(|&w| !member(f.get(w)));
    let (premise_witness, premise_witness_average) = match premise_witness {
        Some((e, a)) => (Some(e), Some(a)),
        None => (None, None),
    };
    Ok(AveragingReport {
        premise_holds: premise_witness.is_none(),
        conclusion_holds: conclusion_witness.is_none(),
        premise_witness,
        premise_witness_average,
        conclusion_witness,
    })
}

/// Outcome of [`density_report`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    /// `∫_A f = ∫_A g` on every event.
    pub equal: bool,
    /// First event (ascending bitmask order) where the integrals differ.
    pub witness: Option<Vec<usize>>,
}

/// Compares the set integrals of `f` and `g` over all `2^n` events.
pub fn density_report(m: &MeasureSpace, f: &FnTable, g: &FnTable, cap: EventCap) -> Result<DensityReport> {
    m.check_table(f)?;
    m.check_table(g)?;
    let n = m.len();
    cap.check(n)?;
    for mask in 0u64..(1u64 << n) {
        let event = mask_to_event(mask, n);
        if weighted_sum(m, f, event.iter()) != weighted_sum(m, g, event.iter()) {
            return Ok(DensityReport { equal: false, witness: Some(event) });
        }
    }
    Ok(DensityReport { equal: true, witness: None })
}

/// Whether every set integral of the scalar table `f` is nonnegative.
pub fn set_integrals_nonneg(m: &MeasureSpace, f: &FnTable, cap: EventCap) -> Result<bool> {
    m.check_table(f)?;
    if f.dim() != 1 {
        return Err(Error::UnsupportedOrder { dim: f.dim() });
    }
    let n = m.len();
    cap.check(n)?;
    Ok((0u64..(1u64 << n)).all(|mask| {
        let event = mask_to_event(mask, n);
        !weighted_sum(m, f, event.iter()).components()[0].is_negative()
    }))
}

/// For each `k`, `∫ diam{ seq_i(ω) : k ≤ i < len } dμ(ω)`.
pub fn tail_diameter_integrals(m: &MeasureSpace, seq: &[FnTable]) -> Result<Vec<Rat>> {
    if seq.is_empty() {
        return Err(Error::Precondition("empty sequence".into()));
    }
    for f in seq {
        m.check_table(f)?;
    }
    (0..seq.len())
        .map(|k| {
            let mut total = Rat::zero();
            for w in m.support() {
                let points: Vec<VecD> = seq[k..].iter().map(|f| f.get(w).clone()).collect();
                total = total + m.weight(w) * &diameter(&points)?;
            }
            Ok(total)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    fn space(ws: &[(i64, i64)]) -> MeasureSpace {
        MeasureSpace::new(ws.iter().map(|&(n, d)| r(n, d)).collect()).unwrap()
    }

    #[test]
    fn integral_examples() {
        let m = MeasureSpace::uniform(4);
        assert_eq!(integral(&m, &FnTable::ints(&[1, 3, 5, 7])).unwrap(), VecD::ints(&[4]));
        assert_eq!(integral(&m, &FnTable::zeros(4, 2)).unwrap(), VecD::zeros(2));
        let biased = space(&[(4, 9), (2, 9), (2, 9), (1, 9)]);
        let f = FnTable::ints(&[2, 0, 0, -2]);
        let direct = &(&r(4, 9) * &Rat::int(2)) + &(&r(1, 9) * &Rat::int(-2));
        assert_eq!(direct, r(2, 3));
        assert_eq!(integral(&biased, &f).unwrap(), VecD::scalar(r(2, 3)));
    }

    #[test]
    fn set_integral_examples() {
        let m = MeasureSpace::uniform(4);
        let f = FnTable::ints(&[1, 3, 5, 7]);
        assert_eq!(set_integral(&m, &[0, 1], &f).unwrap(), VecD::ints(&[1]));
        assert_eq!(set_integral(&m, &[], &f).unwrap(), VecD::ints(&[0]));
        assert_eq!(set_integral(&m, &[0, 1, 2, 3], &f).unwrap(), integral(&m, &f).unwrap());
        assert!(set_integral(&m, &[4], &f).is_err());
    }

    #[test]
    fn ae_examples() {
        let m = space(&[(1, 2), (1, 2), (0, 1)]);
        assert!(ae_eq(&m, &FnTable::ints(&[1, 2, 9]), &FnTable::ints(&[1, 2, 0])).unwrap());
        let u = MeasureSpace::uniform(2);
        let f = FnTable::ints(&[1, 2]);
        let g = FnTable::ints(&[1, 3]);
        assert!(ae_eq(&u, &f, &f).unwrap());
        assert!(!ae_eq(&u, &f, &g).unwrap());
        assert!(ae_le(&u, &f, &g).unwrap());
        assert!(!ae_lt(&u, &f, &g).unwrap());
        assert!(!ae_ge(&u, &f, &g).unwrap());
        let v = FnTable::new(vec![VecD::ints(&[1, 1]), VecD::ints(&[0, 0])]).unwrap();
        assert_eq!(ae_le(&u, &v, &v), Err(Error::UnsupportedOrder { dim: 2 }));
    }

    #[test]
    fn zero_measure_is_vacuous() {
        let m = space(&[(0, 1), (0, 1)]);
        assert!(ae_eq(&m, &FnTable::ints(&[1, 2]), &FnTable::ints(&[5, 6])).unwrap());
        assert!(ae_lt(&m, &FnTable::ints(&[9, 9]), &FnTable::ints(&[0, 0])).unwrap());
    }

    #[test]
    fn negative_weight_rejected() {
        let err = MeasureSpace::with_labels(vec!["H".into(), "T".into()], vec![r(1, 1), r(-1, 4)]).unwrap_err();
        assert!(err.to_string().contains("\"T\""), "{err}");
    }

    #[test]
    fn independence_examples() {
        let m = MeasureSpace::uniform(4);
        let halves = Partition::from_atoms(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let parity = Partition::from_atoms(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        assert!(independent(&m, &halves, &parity).unwrap());
        assert!(!independent(&m, &halves, &halves).unwrap());
        assert!(independent(&m, &halves, &Partition::trivial(4)).unwrap());
        let sub = space(&[(1, 4), (1, 4), (1, 4), (1, 8)]);
        assert!(matches!(independent(&sub, &halves, &parity), Err(Error::NotProbability { .. })));
    }

    #[test]
    fn averaging_examples() {
        let m = MeasureSpace::uniform(4);
        let f = FnTable::ints(&[1, 1, 2, 2]);
        let interval = |v: &VecD| {
            let x = v.as_scalar().unwrap();
            *x >= Rat::int(1) && *x <= Rat::int(2)
        };
        let rep = averaging_oracle(&m, &f, interval, EventCap::default()).unwrap();
        assert!(rep.premise_holds && rep.conclusion_holds);

        let two_points = |v: &VecD| *v == VecD::ints(&[1]) || *v == VecD::ints(&[2]);
        let rep = averaging_oracle(&m, &f, two_points, EventCap::default()).unwrap();
        assert!(!rep.premise_holds);
        assert!(rep.conclusion_holds);
        // the whole space is itself a witness: its average is 3/2
        let omega = set_integral(&m, &[0, 1, 2, 3], &f).unwrap();
        assert_eq!(omega, VecD::scalar(r(3, 2)));
        assert!(!two_points(&omega));
        assert_eq!(rep.premise_witness_average, Some(VecD::scalar(r(3, 2))));

        let c = FnTable::ints(&[5, 5, 5, 5]);
        let rep = averaging_oracle(&m, &c, |v| *v == VecD::ints(&[5]), EventCap::default()).unwrap();
        assert!(rep.premise_holds && rep.conclusion_holds);

        let big = MeasureSpace::uniform(21);
        assert!(matches!(
            averaging_oracle(&big, &FnTable::zeros(21, 1), |_| true, EventCap::default()),
            Err(Error::Capacity { size: 21, cap: 20 })
        ));
    }

    #[test]
    fn density_examples() {
        let m = MeasureSpace::uniform(3);
        let f = FnTable::ints(&[1, 2, 5]);
        assert!(density_report(&m, &f, &f, EventCap::default()).unwrap().equal);
        let half = space(&[(1, 2), (1, 2), (0, 1)]);
        assert!(density_report(&half, &f, &FnTable::ints(&[1, 2, 7]), EventCap::default()).unwrap().equal);
        let u = MeasureSpace::uniform(2);
        let rep = density_report(&u, &FnTable::ints(&[1, 2]), &FnTable::ints(&[2, 1]), EventCap::default()).unwrap();
        assert!(!rep.equal);
        assert_eq!(rep.witness, Some(vec![0]));
    }

    #[test]
    fn restrict_examples() {
        let m = MeasureSpace::uniform(4);
        assert_eq!(m.restrict(&[0, 1, 2, 3]).unwrap(), m);
        assert_eq!(m.restrict(&[]).unwrap().total(), Rat::zero());
        assert_eq!(m.restrict(&[0, 1]).unwrap().weights(), &[r(1, 4), r(1, 4), r(0, 1), r(0, 1)]);
    }

    #[test]
    fn tail_diameter_examples() {
        let m = MeasureSpace::uniform(3);
        let f = FnTable::ints(&[1, 2, 3]);
        assert_eq!(
            tail_diameter_integrals(&m, &[f.clone(), f.clone(), f.clone()]).unwrap(),
            vec![Rat::zero(); 3]
        );
        assert_eq!(tail_diameter_integrals(&m, &[f]).unwrap(), vec![Rat::zero()]);
        let one = MeasureSpace::new(vec![Rat::one()]).unwrap();
        let seq = [FnTable::ints(&[0]), FnTable::ints(&[4]), FnTable::ints(&[1])];
        assert_eq!(
            tail_diameter_integrals(&one, &seq).unwrap(),
            vec![Rat::int(4), Rat::int(3), Rat::zero()]
        );
    }
}
