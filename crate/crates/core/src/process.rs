//! Discrete-time processes on `{0..=T}`, filtrations, and the adapted /
//! progressive / predictable classification.
//!
//! Progressive measurability and predictability are computed literally from
//! the product and predictable σ-algebras, so their discrete-time
//! characterizations in terms of adaptedness stay checkable.

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::measure::FnTable;
use crate::numeric::{Rat, VecD};
use crate::sigma::{predictable_sigma, product_time_partition, Partition, TimedPartition};

/// `X_0, ..., X_T` on a common universe with a common value dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProcessTable {
    tables: Vec<FnTable>,
}

impl ProcessTable {
    pub fn new(tables: Vec<FnTable>) -> Result<Self> {
        let first = tables.first().ok_or_else(|| Error::Precondition("process needs at least one time".into()))?;
        let (n, d) = (first.len(), first.dim());
        for t in &tables {
            if t.len() != n {
                return Err(Error::UniverseMismatch { left: n, right: t.len() });
            }
            if t.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, found: t.dim() });
            }
        }
        Ok(ProcessTable { tables })
    }

    /// Scalar process from integer rows, one row per time.
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| FnTable::ints(r)).collect())
    }

    pub fn horizon(&self) -> usize {
        self.tables.len() - 1
    }

    pub fn times(&self) -> usize {
        self.tables.len()
    }

    pub fn universe_size(&self) -> usize {
        self.tables[0].len()
    }

    pub fn dim(&self) -> usize {
        self.tables[0].dim()
    }

    pub fn tables(&self) -> &[FnTable] {
        &self.tables
    }

    pub fn at(&self, t: usize) -> &FnTable {
        &self.tables[t]
    }

    /// `(i, ω) ↦ X_i(ω)` over `{0..=t} x Ω`, flattened as `i * n + ω`.
    pub fn joint_values(&self, t: usize) -> Vec<VecD> {
        self.tables[..=t].iter().flat_map(|f| f.values().iter().cloned()).collect()
    }

    fn check_compatible(&self, other: &ProcessTable) -> Result<()> {
        if self.horizon() != other.horizon() {
            return Err(Error::HorizonMismatch { left: self.horizon(), right: other.horizon() });
        }
        if self.universe_size() != other.universe_size() {
            return Err(Error::UniverseMismatch { left: self.universe_size(), right: other.universe_size() });
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    fn zip_with(&self, other: &ProcessTable, op: impl Fn(&FnTable, &FnTable) -> Result<FnTable>) -> Result<Self> {
        self.check_compatible(other)?;
        let tables = self.tables.iter().zip(&other.tables).map(|(a, b)| op(a, b)).collect::<Result<_>>()?;
        Ok(ProcessTable { tables })
    }

    pub fn p_add(&self, other: &ProcessTable) -> Result<Self> {
        self.zip_with(other, FnTable::try_add)
    }

    pub fn p_sub(&self, other: &ProcessTable) -> Result<Self> {
        self.zip_with(other, FnTable::try_sub)
    }

    pub fn p_neg(&self) -> Self {
        ProcessTable { tables: self.tables.iter().map(FnTable::neg).collect() }
    }

    pub fn p_scale(&self, c: &Rat) -> Self {
        ProcessTable { tables: self.tables.iter().map(|f| f.scale(c)).collect() }
    }

    /// Scale time `t` by `c[t]`.
    pub fn p_scale_fn(&self, c: &[Rat]) -> Result<Self> {
        if c.len() != self.times() {
            return Err(Error::HorizonMismatch { left: self.horizon(), right: c.len().saturating_sub(1) });
        }
        Ok(ProcessTable { tables: self.tables.iter().zip(c).map(|(f, c)| f.scale(c)).collect() })
    }

    /// Pointwise maximum of two scalar processes.
    pub fn p_max(&self, other: &ProcessTable) -> Result<Self> {
        if self.dim() != 1 || other.dim() != 1 {
            return Err(Error::UnsupportedOrder { dim: self.dim().max(other.dim()) });
        }
        self.zip_with(other, |a, b| {
            FnTable::new(
                a.values()
                    .iter()
                    .zip(b.values())
                    .map(|(x, y)| if y.components() > x.components() { y.clone() } else { x.clone() })
                    .collect(),
            )
        })
    }

    /// `ω ↦ ‖X_t(ω)‖₁`, a scalar process.
    pub fn p_norm(&self) -> Self {
        ProcessTable { tables: self.tables.iter().map(FnTable::norms).collect() }
    }

    /// Apply `g(t, ·)` pointwise at each time.
    pub fn p_compose(&self, g: impl Fn(usize, &VecD) -> VecD) -> Result<Self> {
        let tables = self
            .tables
            .iter()
            .enumerate()
            .map(|(t, f)| f.map(|v| g(t, v)))
            .collect::<Result<_>>()?;
        ProcessTable::new(tables)
    }

    /// `S_t = Σ_{i ≤ t} X_i`.
    pub fn p_partial_sum(&self) -> Self {
        let mut acc = self.tables[0].clone();
        let mut tables = vec![acc.clone()];
        for f in &self.tables[1..] {
            acc = acc.try_add(f).expect("shapes checked at construction");
            tables.push(acc.clone());
        }
        ProcessTable { tables }
    }
}

#[derive(Serialize, Deserialize)]
struct ProcessRepr {
    times: usize,
    values: Vec<FnTable>,
}

impl Serialize for ProcessTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ProcessRepr { times: self.times(), values: self.tables.clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ProcessTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ProcessRepr::deserialize(deserializer)?;
        if repr.times != repr.values.len() {
            return Err(de::Error::custom(format!(
                "\"times\" is {} but {} value tables were given",
                repr.times,
                repr.values.len()
            )));
        }
        ProcessTable::new(repr.values).map_err(de::Error::custom)
    }
}

/// `F_0, ..., F_T`. Construction only checks the universe; monotonicity is
/// reported by [`Filtration::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    parts: Vec<Partition>,
}

impl Filtration {
    pub fn new(parts: Vec<Partition>) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::Precondition("filtration needs at least one time".into()))?;
        let n = first.universe_size();
        if let Some(p) = parts.iter().find(|p| p.universe_size() != n) {
            return Err(Error::UniverseMismatch { left: n, right: p.universe_size() });
        }
        Ok(Filtration { parts })
    }

    pub fn constant(part: Partition, horizon: usize) -> Self {
        Filtration { parts: vec![part; horizon + 1] }
    }

    pub fn horizon(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn universe_size(&self) -> usize {
        self.parts[0].universe_size()
    }

    pub fn parts(&self) -> &[Partition] {
        &self.parts
    }

    pub fn at(&self, t: usize) -> &Partition {
        &self.parts[t]
    }

    /// First pair `(i, j)`, `i < j`, with `F_i ⊄ F_j`, in lexicographic order.
    pub fn monotonicity_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.parts.len() {
            for j in i + 1..self.parts.len() {
                if !self.parts[j].refines(&self.parts[i]).expect("same universe") {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// `F_i ⊆ F_j` for all `i ≤ j`.
    pub fn validate(&self) -> bool {
        self.monotonicity_violation().is_none()
    }

    pub fn predictable_sigma(&self) -> TimedPartition {
        predictable_sigma(&self.parts).expect("nonempty filtration on one universe")
    }

    fn check_process(&self, x: &ProcessTable) -> Result<()> {
        if self.horizon() != x.horizon() {
            return Err(Error::HorizonMismatch { left: x.horizon(), right: self.horizon() });
        }
        if self.universe_size() != x.universe_size() {
            return Err(Error::UniverseMismatch { left: x.universe_size(), right: self.universe_size() });
        }
        Ok(())
    }
}

/// `F_t = σ(X_0, ..., X_t)`.
pub fn natural_filtration(x: &ProcessTable) -> Filtration {
    let mut acc = Partition::trivial(x.universe_size());
    let parts = x
        .tables()
        .iter()
        .map(|f| {
            acc = acc.join(&Partition::generate_from_function(f.values())).expect("same universe");
            acc.clone()
        })
        .collect();
    Filtration { parts }
}

/// First time `t` at which `X_t` is not `F_t`-measurable.
pub fn first_unadapted_time(x: &ProcessTable, f: &Filtration) -> Result<Option<usize>> {
    f.check_process(x)?;
    for t in 0..x.times() {
        if !f.at(t).is_measurable_fn(x.at(t).values())? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

pub fn is_adapted(x: &ProcessTable, f: &Filtration) -> Result<bool> {
    Ok(first_unadapted_time(x, f)?.is_none())
}

/// For every `t`, `(i, ω) ↦ X_i(ω)` on `{0..=t} x Ω` is measurable for the
/// product of the discrete σ-algebra on times with `F_t`.
pub fn is_progressive(x: &ProcessTable, f: &Filtration) -> Result<bool> {
    f.check_process(x)?;
    for t in 0..x.times() {
        let product = product_time_partition(t, f.at(t));
        if !product.partition().is_measurable_fn(&x.joint_values(t))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Measurability of the joint map on `{0..=T} x Ω` for the predictable
/// σ-algebra.
pub fn is_predictable(x: &ProcessTable, f: &Filtration) -> Result<bool> {
    f.check_process(x)?;
    let sigma_p = f.predictable_sigma();
    sigma_p.partition().is_measurable_fn(&x.joint_values(x.horizon()))
}

/// `X_0` is `F_0`-measurable and `X_{t+1}` is `F_t`-measurable for `t < T`.
pub fn is_predictable_shifted(x: &ProcessTable, f: &Filtration) -> Result<bool> {
    f.check_process(x)?;
    if !f.at(0).is_measurable_fn(x.at(0).values())? {
        return Ok(false);
    }
    for t in 0..x.horizon() {
        if !f.at(t).is_measurable_fn(x.at(t + 1).values())? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn coin_walk() -> ProcessTable {
        ProcessTable::from_int_rows(&[&[0, 0, 0, 0], &[1, 1, -1, -1], &[2, 0, 0, -2]]).unwrap()
    }

    fn halves() -> Partition {
        Partition::from_atoms(4, vec![vec![0, 1], vec![2, 3]]).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(Filtration::constant(halves(), 3).validate());
        let chain = Filtration::new(vec![Partition::trivial(4), halves(), Partition::discrete(4)]).unwrap();
        assert!(chain.validate());
        let bad = Filtration::new(vec![Partition::discrete(4), Partition::trivial(4)]).unwrap();
        assert!(!bad.validate());
        assert_eq!(bad.monotonicity_violation(), Some((0, 1)));
    }

    #[test]
    fn natural_filtration_examples() {
        let nat = natural_filtration(&coin_walk());
        assert_eq!(nat.parts(), &[Partition::trivial(4), halves(), Partition::discrete(4)]);
        let constant = ProcessTable::from_int_rows(&[&[3, 3, 3], &[1, 1, 1]]).unwrap();
        assert_eq!(natural_filtration(&constant), Filtration::constant(Partition::trivial(3), 1));
        let inj = ProcessTable::from_int_rows(&[&[1, 2, 3]]).unwrap();
        assert_eq!(natural_filtration(&inj).parts(), &[Partition::discrete(3)]);
    }

    #[test]
    fn adapted_examples() {
        let x = coin_walk();
        assert!(is_adapted(&x, &natural_filtration(&x)).unwrap());
        let trivial = Filtration::constant(Partition::trivial(4), 2);
        assert!(!is_adapted(&x, &trivial).unwrap());
        assert_eq!(first_unadapted_time(&x, &trivial).unwrap(), Some(1));
        let flat = ProcessTable::from_int_rows(&[&[1, 1, 1, 1], &[5, 5, 5, 5], &[-2, -2, -2, -2]]).unwrap();
        assert!(is_adapted(&flat, &trivial).unwrap());
        let short = Filtration::constant(Partition::trivial(4), 1);
        assert!(matches!(is_adapted(&x, &short), Err(Error::HorizonMismatch { .. })));
    }

    #[test]
    fn progressive_examples() {
        let x = coin_walk();
        assert!(is_progressive(&x, &natural_filtration(&x)).unwrap());
        assert!(!is_progressive(&x, &Filtration::constant(Partition::trivial(4), 2)).unwrap());
        let single = ProcessTable::from_int_rows(&[&[1, 1, 2, 2]]).unwrap();
        let f = Filtration::constant(halves(), 0);
        assert_eq!(is_progressive(&single, &f).unwrap(), f.at(0).is_measurable_fn(single.at(0).values()).unwrap());
    }

    #[test]
    fn predictable_examples() {
        let x = coin_walk();
        let nat = natural_filtration(&x);
        assert!(!is_predictable(&x, &nat).unwrap());
        assert!(!is_predictable_shifted(&x, &nat).unwrap());

        let flat = ProcessTable::from_int_rows(&[&[1, 1, 1, 1], &[5, 5, 5, 5], &[-2, -2, -2, -2]]).unwrap();
        assert!(is_predictable(&flat, &nat).unwrap());
        assert!(is_predictable_shifted(&flat, &nat).unwrap());

        // X_0 constant, X_1 F_0-measurable, X_2 F_1-measurable
        let bets = ProcessTable::from_int_rows(&[&[0, 0, 0, 0], &[7, 7, 7, 7], &[1, 1, 3, 3]]).unwrap();
        assert!(is_predictable(&bets, &nat).unwrap());
        assert!(is_predictable_shifted(&bets, &nat).unwrap());
    }

    #[test]
    fn algebra_examples() {
        let x = coin_walk();
        let zero = x.p_add(&x.p_neg()).unwrap();
        assert!(zero.tables().iter().all(|f| f.values().iter().all(VecD::is_zero)));
        let ones = ProcessTable::from_int_rows(&[&[1, 1], &[1, 1], &[1, 1]]).unwrap();
        assert_eq!(
            ones.p_partial_sum(),
            ProcessTable::from_int_rows(&[&[1, 1], &[2, 2], &[3, 3]]).unwrap()
        );
        assert_eq!(x.p_norm().at(1), &FnTable::ints(&[1, 1, 1, 1]));
        assert_eq!(x.p_sub(&x).unwrap(), zero);
        assert_eq!(x.p_scale(&Rat::int(2)).at(2), &FnTable::ints(&[4, 0, 0, -4]));
        let scaled = x.p_scale_fn(&[Rat::int(1), Rat::int(0), Rat::int(-1)]).unwrap();
        assert_eq!(scaled.at(1), &FnTable::ints(&[0, 0, 0, 0]));
        assert_eq!(scaled.at(2), &FnTable::ints(&[-2, 0, 0, 2]));
        let pos = x.p_max(&zero).unwrap();
        assert_eq!(pos.at(2), &FnTable::ints(&[2, 0, 0, 0]));
        let shifted = x.p_compose(|t, v| v.try_add(&VecD::ints(&[t as i64])).unwrap()).unwrap();
        assert_eq!(shifted.at(2), &FnTable::ints(&[4, 2, 2, 0]));
        let vec2 = ProcessTable::new(vec![FnTable::new(vec![VecD::ints(&[1, 2])]).unwrap()]).unwrap();
        assert!(matches!(vec2.p_max(&vec2), Err(Error::UnsupportedOrder { dim: 2 })));
        assert!(x.p_add(&vec2).is_err());
    }

    #[test]
    fn process_serde() {
        let x = coin_walk();
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.starts_with(r#"{"times":3,"values":[[["0"],"#));
        assert_eq!(serde_json::from_str::<ProcessTable>(&s).unwrap(), x);
        assert!(serde_json::from_str::<ProcessTable>(r#"{"times":2,"values":[[["0"]]]}"#).is_err());
    }
}
