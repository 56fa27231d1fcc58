//! Finite σ-algebras stored as partitions into atoms.
//!
//! On a finite outcome set every σ-algebra is the set of unions of the
//! blocks of a unique partition, so a [`Partition`] in canonical order is
//! a complete and structurally comparable representation. Product spaces
//! `{0..T} x Ω` reuse the same type through the flat index `t * n + ω`.

use std::collections::HashMap;
use std::hash::Hash;

use serde::{de, Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::numeric::VecD;

/// Atoms of a σ-algebra on `{0..n-1}`. Each atom is sorted ascending and
/// atoms are ordered by their least element.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Partition {
    #[serde(skip)]
    n: usize,
    atoms: Vec<Vec<usize>>,
}

impl std::fmt::Debug for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.atoms)
    }
}

impl Partition {
    /// Validates that `atoms` are nonempty, disjoint and cover `{0..n-1}`,
    /// then puts them in canonical order.
    pub fn from_atoms(n: usize, atoms: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![usize::MAX; n];
        for (k, atom) in atoms.iter().enumerate() {
            if atom.is_empty() {
                return Err(Error::InvalidPartition("empty atom".into()));
            }
            for &w in atom {
                if w >= n {
                    return Err(Error::OutOfRange { index: w, size: n });
                }
                if owner[w] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("outcome {w} appears in two atoms")));
                }
                owner[w] = k;
            }
        }
        if let Some(w) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidPartition(format!("outcome {w} is not covered")));
        }
        Ok(Self::from_labels(&owner))
    }

    /// Level sets of `labels`: outcomes share an atom iff their labels agree.
    pub fn from_labels<T: Eq + Hash>(labels: &[T]) -> Self {
        let mut index: HashMap<&T, usize> = HashMap::new();
        let mut atoms: Vec<Vec<usize>> = Vec::new();
        for (w, label) in labels.iter().enumerate() {
            let k = *index.entry(label).or_insert_with(|| {
                atoms.push(Vec::new());
                atoms.len() - 1
            });
            atoms[k].push(w);
        }
        Partition { n: labels.len(), atoms }
    }

    /// `{Ω}`, the trivial σ-algebra.
    pub fn trivial(n: usize) -> Self {
        Self::from_labels(&vec![0u8; n])
    }

    /// All singletons, the power set.
    pub fn discrete(n: usize) -> Self {
        Partition { n, atoms: (0..n).map(|w| vec![w]).collect() }
    }

    /// The σ-algebra generated by `generators`: two outcomes share an atom
    /// iff they belong to exactly the same generators.
    pub fn generate(n: usize, generators: &[Vec<usize>]) -> Result<Self> {
        let mut signature = vec![Vec::with_capacity(generators.len()); n];
        for g in generators {
            let mut member = vec![false; n];
            for &w in g {
                if w >= n {
                    return Err(Error::OutOfRange { index: w, size: n });
                }
                member[w] = true;
            }
            for (sig, m) in signature.iter_mut().zip(member) {
                sig.push(m);
            }
        }
        Ok(Self::from_labels(&signature))
    }

    /// Preimage σ-algebra of a value table.
    pub fn generate_from_function(values: &[VecD]) -> Self {
        Self::from_labels(values)
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn atoms(&self) -> &[Vec<usize>] {
        &self.atoms
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }

    /// Atom index of every outcome.
    pub fn labels(&self) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for (k, atom) in self.atoms.iter().enumerate() {
            for &w in atom {
                out[w] = k;
            }
        }
        out
    }

    pub fn atom_of(&self, outcome: usize) -> Option<&[usize]> {
        self.atoms.iter().find(|a| a.binary_search(&outcome).is_ok()).map(Vec::as_slice)
    }

    fn check_universe(&self, other: &Partition) -> Result<()> {
        if self.n != other.n {
            return Err(Error::UniverseMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    /// True iff every atom of `self` lies inside an atom of `coarse`, i.e.
    /// `coarse ⊆ self` as σ-algebras.
    pub fn refines(&self, coarse: &Partition) -> Result<bool> {
        self.check_universe(coarse)?;
        let labels = coarse.labels();
        Ok(self.atoms.iter().all(|atom| atom.iter().all(|&w| labels[w] == labels[atom[0]])))
    }

    /// Coarsest common refinement: the σ-algebra generated by both.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.check_universe(other)?;
        let pairs: Vec<(usize, usize)> = self.labels().into_iter().zip(other.labels()).collect();
        Ok(Self::from_labels(&pairs))
    }

    /// True iff `set` is a union of atoms.
    pub fn is_measurable_set(&self, set: &[usize]) -> Result<bool> {
        let mut member = vec![false; self.n];
        for &w in set {
            if w >= self.n {
                return Err(Error::OutOfRange { index: w, size: self.n });
            }
            member[w] = true;
        }
        Ok(self.atoms.iter().all(|atom| atom.iter().all(|&w| member[w] == member[atom[0]])))
    }

    /// True iff `values` is constant on every atom.
    pub fn is_measurable_fn<T: PartialEq>(&self, values: &[T]) -> Result<bool> {
        if values.len() != self.n {
            return Err(Error::UniverseMismatch { left: self.n, right: values.len() });
        }
        Ok(self
            .atoms
            .iter()
            .all(|atom| atom.iter().all(|&w| values[w] == values[atom[0]])))
    }

    /// Union of the atoms selected by the bits of `mask`, sorted ascending.
    pub fn event_from_mask(&self, mask: u64) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .atoms
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .flat_map(|(_, a)| a.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let atoms = Vec::<Vec<usize>>::deserialize(deserializer)?;
        let n = atoms.iter().map(Vec::len).sum();
        Partition::from_atoms(n, atoms).map_err(de::Error::custom)
    }
}

/// A partition of the product index set `{0..=horizon} x {0..base-1}`,
/// flattened as `t * base + ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimedPartition {
    horizon: usize,
    base: usize,
    partition: Partition,
}

impl TimedPartition {
    pub fn new(horizon: usize, base: usize, partition: Partition) -> Result<Self> {
        let expected = (horizon + 1) * base;
        if partition.universe_size() != expected {
            return Err(Error::UniverseMismatch { left: expected, right: partition.universe_size() });
        }
        Ok(TimedPartition { horizon, base, partition })
    }

    /// Build from per-time outcome partitions, one slice per time.
    fn from_slices(base: usize, slices: &[&Partition]) -> Self {
        let labels: Vec<(usize, usize)> = slices
            .iter()
            .enumerate()
            .flat_map(|(t, p)| p.labels().into_iter().map(move |k| (t, k)))
            .collect();
        TimedPartition {
            horizon: slices.len() - 1,
            base,
            partition: Partition::from_labels(&labels),
        }
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn base_size(&self) -> usize {
        self.base
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn index(&self, t: usize, outcome: usize) -> usize {
        t * self.base + outcome
    }

    /// Restriction to time `t`, as a partition of the outcomes. Only
    /// meaningful when no atom straddles two times.
    pub fn slice(&self, t: usize) -> Vec<Vec<usize>> {
        let lo = t * self.base;
        let hi = lo + self.base;
        self.partition
            .atoms()
            .iter()
            .filter(|a| a[0] >= lo && a[0] < hi)
            .map(|a| a.iter().filter(|&&i| i < hi).map(|&i| i - lo).collect())
            .collect()
    }
}

/// `{0..=t} x F_t` with the discrete σ-algebra on the time axis.
pub fn product_time_partition(t: usize, f_t: &Partition) -> TimedPartition {
    let slices = vec![f_t; t + 1];
    TimedPartition::from_slices(f_t.universe_size(), &slices)
}

/// The predictable σ-algebra of a filtration `F_0 ⊆ ... ⊆ F_T` in discrete
/// time: slice 0 carries the atoms of `F_0`, slice `t + 1` those of `F_t`.
pub fn predictable_sigma(parts: &[Partition]) -> Result<TimedPartition> {
    let first = parts.first().ok_or_else(|| Error::Precondition("empty filtration".into()))?;
    let n = first.universe_size();
    if let Some(p) = parts.iter().find(|p| p.universe_size() != n) {
        return Err(Error::UniverseMismatch { left: n, right: p.universe_size() });
    }
    let slices: Vec<&Partition> =
        std::iter::once(first).chain(parts[..parts.len() - 1].iter()).collect();
    Ok(TimedPartition::from_slices(n, &slices))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: usize, atoms: &[&[usize]]) -> Partition {
        Partition::from_atoms(n, atoms.iter().map(|a| a.to_vec()).collect()).unwrap()
    }

    #[test]
    fn generate_examples() {
        assert_eq!(Partition::generate(4, &[]).unwrap(), Partition::trivial(4));
        assert_eq!(
            Partition::generate(4, &[vec![0, 1], vec![1, 2]]).unwrap(),
            Partition::discrete(4)
        );
        assert_eq!(Partition::generate(4, &[vec![0, 1]]).unwrap(), p(4, &[&[0, 1], &[2, 3]]));
        assert!(matches!(
            Partition::generate(4, &[vec![4]]),
            Err(Error::OutOfRange { index: 4, size: 4 })
        ));
    }

    #[test]
    fn from_function_examples() {
        let vals = |xs: &[i64]| xs.iter().map(|&x| VecD::ints(&[x])).collect::<Vec<_>>();
        assert_eq!(Partition::generate_from_function(&vals(&[5, 5, 5, 5])), Partition::trivial(4));
        assert_eq!(Partition::generate_from_function(&vals(&[1, 3, 5, 7])), Partition::discrete(4));
        let level = Partition::generate_from_function(&vals(&[1, 3, 1, 3]));
        assert_eq!(level, p(4, &[&[0, 2], &[1, 3]]));
        // preimages {x=1} and {x=3} as generators give the same algebra
        assert_eq!(Partition::generate(4, &[vec![0, 2], vec![1, 3]]).unwrap(), level);
    }

    #[test]
    fn canonical_order() {
        let a = p(4, &[&[3, 2], &[1, 0]]);
        assert_eq!(a.atoms(), &[vec![0, 1], vec![2, 3]]);
        assert!(Partition::from_atoms(3, vec![vec![0], vec![0, 1, 2]]).is_err());
        assert!(Partition::from_atoms(3, vec![vec![0, 1]]).is_err());
        assert!(Partition::from_atoms(3, vec![vec![], vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn refines_examples() {
        let halves = p(4, &[&[0, 1], &[2, 3]]);
        let parity = p(4, &[&[0, 2], &[1, 3]]);
        assert!(Partition::discrete(4).refines(&halves).unwrap());
        assert!(!halves.refines(&parity).unwrap());
        assert!(halves.refines(&halves).unwrap());
        assert!(halves.refines(&Partition::trivial(4)).unwrap());
        assert!(halves.refines(&Partition::trivial(5)).is_err());
    }

    #[test]
    fn join_examples() {
        let halves = p(4, &[&[0, 1], &[2, 3]]);
        let parity = p(4, &[&[0, 2], &[1, 3]]);
        assert_eq!(halves.join(&parity).unwrap(), Partition::discrete(4));
        assert_eq!(halves.join(&Partition::trivial(4)).unwrap(), halves);
        assert_eq!(halves.join(&halves).unwrap(), halves);
    }

    #[test]
    fn measurability_examples() {
        let halves = p(4, &[&[0, 1], &[2, 3]]);
        assert!(halves.is_measurable_set(&[0, 1]).unwrap());
        assert!(!halves.is_measurable_set(&[0]).unwrap());
        assert!(halves.is_measurable_set(&[]).unwrap());
        assert!(Partition::trivial(4).is_measurable_fn(&[7, 7, 7, 7]).unwrap());
        assert!(!halves.is_measurable_fn(&[1, 2, 3, 3]).unwrap());
        assert!(halves.is_measurable_fn(&[1, 2]).is_err());
    }

    #[test]
    fn product_examples() {
        let one = product_time_partition(0, &Partition::trivial(2));
        assert_eq!(one.partition().atoms(), &[vec![0, 1]]);
        let four = product_time_partition(1, &Partition::discrete(2));
        assert_eq!(four.partition(), &Partition::discrete(4));
        let halves = p(4, &[&[0, 1], &[2, 3]]);
        let prod = product_time_partition(1, &halves);
        assert_eq!(prod.partition().atoms(), &[vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]]);
    }

    #[test]
    fn predictable_examples() {
        let parts = vec![Partition::trivial(4), p(4, &[&[0, 1], &[2, 3]]), Partition::discrete(4)];
        let sp = predictable_sigma(&parts).unwrap();
        assert_eq!(
            sp.partition().atoms(),
            &[vec![0, 1, 2, 3], vec![4, 5, 6, 7], vec![8, 9], vec![10, 11]]
        );
        let halves = p(4, &[&[0, 1], &[2, 3]]);
        let sp0 = predictable_sigma(std::slice::from_ref(&halves)).unwrap();
        assert_eq!(sp0.partition(), &halves);
        let constant = vec![halves.clone(); 3];
        let spc = predictable_sigma(&constant).unwrap();
        for t in 0..3 {
            assert_eq!(spc.slice(t), halves.atoms());
        }
    }

    #[test]
    fn serde_partition() {
        let halves = p(4, &[&[0, 1], &[2, 3]]);
        let s = serde_json::to_string(&halves).unwrap();
        assert_eq!(s, "[[0,1],[2,3]]");
        assert_eq!(serde_json::from_str::<Partition>(&s).unwrap(), halves);
        assert_eq!(serde_json::from_str::<Partition>("[[3,2],[0,1]]").unwrap(), halves);
        assert!(serde_json::from_str::<Partition>("[[0,1],[1,2]]").is_err());
    }

    fn arb_partition(n: usize) -> impl Strategy<Value = Partition> {
        prop::collection::vec(0..n, n).prop_map(|labels| Partition::from_labels(&labels))
    }

    fn arb_triple() -> impl Strategy<Value = (Partition, Partition, Partition)> {
        (1usize..8).prop_flat_map(|n| (arb_partition(n), arb_partition(n), arb_partition(n)))
    }

    proptest! {
        #[test]
        fn generate_idempotent(q in (1usize..8).prop_flat_map(arb_partition)) {
            prop_assert_eq!(Partition::generate(q.universe_size(), q.atoms()).unwrap(), q);
        }

        #[test]
        fn refines_partial_order((a, b, c) in arb_triple()) {
            prop_assert!(a.refines(&a).unwrap());
            if a.refines(&b).unwrap() && b.refines(&a).unwrap() {
                prop_assert_eq!(&a, &b);
            }
            if a.refines(&b).unwrap() && b.refines(&c).unwrap() {
                prop_assert!(a.refines(&c).unwrap());
            }
        }

        #[test]
        fn join_is_least_upper_bound((a, b, c) in arb_triple()) {
            let j = a.join(&b).unwrap();
            prop_assert!(j.refines(&a).unwrap());
            prop_assert!(j.refines(&b).unwrap());
            if c.refines(&a).unwrap() && c.refines(&b).unwrap() {
                prop_assert!(c.refines(&j).unwrap());
            }
        }

        #[test]
        fn measurable_fn_iff_refines_level_sets(
            (q, vals) in (1usize..8).prop_flat_map(|n| (arb_partition(n), prop::collection::vec(0i64..3, n)))
        ) {
            let v: Vec<VecD> = vals.iter().map(|&x| VecD::ints(&[x])).collect();
            let level = Partition::generate_from_function(&v);
            prop_assert_eq!(q.is_measurable_fn(&v).unwrap(), q.refines(&level).unwrap());
        }

        #[test]
        fn measurability_inherited_by_refinements((a, b, _c) in arb_triple(), seed in any::<u64>()) {
            // values constant on atoms of the join's coarser side
            let labels = b.labels();
            let vals: Vec<u64> = labels.iter().map(|&k| seed.rotate_left(k as u32) % 3).collect();
            let fine = a.join(&b).unwrap();
            if b.is_measurable_fn(&vals).unwrap() {
                prop_assert!(fine.is_measurable_fn(&vals).unwrap());
            }
        }
    }
}
