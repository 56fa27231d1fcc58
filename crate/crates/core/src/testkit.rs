//! Seeded random instance generators and brute-force oracles for property
//! checking. Nothing in the analysis paths calls into this module.
//!
//! Sets are `u64` bitmasks over the universe, so every oracle here is
//! limited to 64 points.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::measure::{FnTable, MeasureSpace};
use crate::numeric::{Rat, VecD};
use crate::process::{Filtration, ProcessTable};
use crate::sigma::Partition;

pub use rand::rngs::StdRng;
pub use rand::SeedableRng;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A rational with denominator at most `max_den` and `|numerator| ≤ max_num`.
pub fn random_rat(rng: &mut impl Rng, max_num: i64, max_den: i64) -> Rat {
    let den = rng.random_range(1..=max_den);
    Rat::new(rng.random_range(-max_num..=max_num), den).expect("positive denominator")
}

/// Probability weights `k_i / D` with `D ≤ max_den`, so every weight has a
/// denominator of at most `max_den`. Some weights may be zero.
pub fn random_probability(rng: &mut impl Rng, n: usize, max_den: i64) -> MeasureSpace {
    let den = rng.random_range(1..=max_den);
    let mut counts = vec![0i64; n];
    for _ in 0..den {
        counts[rng.random_range(0..n)] += 1;
    }
    MeasureSpace::new(counts.into_iter().map(|k| Rat::new(k, den).expect("den > 0")).collect())
        .expect("nonnegative weights")
}

/// Arbitrary finite measure: each weight is `a / b` with `b ≤ max_den`, zero
/// with probability `zero_prob`.
pub fn random_measure(rng: &mut impl Rng, n: usize, max_den: i64, zero_prob: f64) -> MeasureSpace {
    let weights = (0..n)
        .map(|_| {
            if rng.random_bool(zero_prob) {
                Rat::zero()
            } else {
                let den = rng.random_range(1..=max_den);
                Rat::new(rng.random_range(1..=max_den), den).expect("den > 0")
            }
        })
        .collect();
    MeasureSpace::new(weights).expect("nonnegative weights")
}

/// Either a probability measure or a general one, half the time each.
pub fn random_space(rng: &mut impl Rng, n: usize, max_den: i64) -> MeasureSpace {
    if rng.random_bool(0.5) {
        random_probability(rng, n, max_den)
    } else {
        random_measure(rng, n, max_den, 0.2)
    }
}

pub fn random_partition(rng: &mut impl Rng, n: usize) -> Partition {
    let k = rng.random_range(1..=n);
    let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..k)).collect();
    Partition::from_labels(&labels)
}

/// A random partition that refines `p`.
pub fn random_refinement(rng: &mut impl Rng, p: &Partition) -> Partition {
    let labels: Vec<(usize, usize)> = p
        .labels()
        .into_iter()
        .map(|k| (k, rng.random_range(0..3usize)))
        .collect();
    Partition::from_labels(&labels)
}

/// A random partition that `p` refines.
pub fn random_coarsening(rng: &mut impl Rng, p: &Partition) -> Partition {
    let merge: Vec<usize> = (0..p.num_atoms()).map(|_| rng.random_range(0..p.num_atoms())).collect();
    let labels: Vec<usize> = p.labels().into_iter().map(|k| merge[k]).collect();
    Partition::from_labels(&labels)
}

/// A monotone filtration built by successive random refinements.
pub fn random_filtration(rng: &mut impl Rng, n: usize, horizon: usize) -> Filtration {
    let mut current = if rng.random_bool(0.4) { Partition::trivial(n) } else { random_partition(rng, n) };
    let mut parts = vec![current.clone()];
    for _ in 0..horizon {
        if rng.random_bool(0.7) {
            current = random_refinement(rng, &current);
        }
        parts.push(current.clone());
    }
    Filtration::new(parts).expect("same universe")
}

/// Any sequence of partitions; usually not monotone.
pub fn random_partition_sequence(rng: &mut impl Rng, n: usize, horizon: usize) -> Filtration {
    Filtration::new((0..=horizon).map(|_| random_partition(rng, n)).collect()).expect("same universe")
}

pub fn random_vec(rng: &mut impl Rng, d: usize) -> VecD {
    VecD::new((0..d).map(|_| random_rat(rng, 6, 4)).collect()).expect("d >= 1")
}

/// Values drawn from a small pool so that ties and level sets are common.
pub fn random_table(rng: &mut impl Rng, n: usize, d: usize) -> FnTable {
    let pool: Vec<VecD> = (0..rng.random_range(1..=n.max(1))).map(|_| random_vec(rng, d)).collect();
    FnTable::new((0..n).map(|_| pool[rng.random_range(0..pool.len())].clone()).collect()).expect("n >= 1")
}

/// A table constant on each atom of `p`.
pub fn random_measurable_table(rng: &mut impl Rng, p: &Partition, d: usize) -> FnTable {
    let per_atom: Vec<VecD> = (0..p.num_atoms()).map(|_| random_vec(rng, d)).collect();
    FnTable::new(p.labels().into_iter().map(|k| per_atom[k].clone()).collect()).expect("n >= 1")
}

pub fn random_process(rng: &mut impl Rng, n: usize, horizon: usize, d: usize) -> ProcessTable {
    ProcessTable::new((0..=horizon).map(|_| random_table(rng, n, d)).collect()).expect("consistent shape")
}

pub fn random_adapted_process(rng: &mut impl Rng, f: &Filtration, d: usize) -> ProcessTable {
    ProcessTable::new(f.parts().iter().map(|p| random_measurable_table(rng, p, d)).collect())
        .expect("consistent shape")
}

/// `X_0` is `F_0`-measurable and `X_{t+1}` is `F_t`-measurable.
pub fn random_predictable_process(rng: &mut impl Rng, f: &Filtration, d: usize) -> ProcessTable {
    let mut tables = vec![random_measurable_table(rng, f.at(0), d)];
    for t in 0..f.horizon() {
        tables.push(random_measurable_table(rng, f.at(t), d));
    }
    ProcessTable::new(tables).expect("consistent shape")
}

/// Adapted process that is a martingale by construction: a random
/// terminal value conditioned down the filtration.
pub fn random_martingale(rng: &mut impl Rng, m: &MeasureSpace, f: &Filtration) -> ProcessTable {
    let terminal = random_measurable_table(rng, f.at(f.horizon()), 1);
    crate::martingale::cond_exp_process(m, f, &terminal).expect("shapes agree")
}

/// Adapted scalar process drifting in the given direction: a martingale
/// plus a nondecreasing (or nonincreasing) predictable compensator.
pub fn random_drifting(rng: &mut impl Rng, m: &MeasureSpace, f: &Filtration, up: bool) -> ProcessTable {
    let base = random_martingale(rng, m, f);
    let mut level = FnTable::zeros(m.len(), 1);
    let mut tables = vec![base.at(0).clone()];
    for t in 0..f.horizon() {
        let step = random_measurable_table(rng, f.at(t), 1)
            .map(|v| VecD::scalar(v.components()[0].abs()))
            .expect("scalar");
        let step = if up { step } else { step.neg() };
        level = level.try_add(&step).expect("same shape");
        tables.push(base.at(t + 1).try_add(&level).expect("same shape"));
    }
    ProcessTable::new(tables).expect("consistent shape")
}

/// Random adapted scalar process that is, with roughly equal odds, a
/// martingale, a submartingale, a supermartingale, or nothing in
/// particular.
pub fn random_scalar_adapted(rng: &mut impl Rng, m: &MeasureSpace, f: &Filtration) -> ProcessTable {
    match rng.random_range(0..4) {
        0 => random_martingale(rng, m, f),
        1 => random_drifting(rng, m, f, true),
        2 => random_drifting(rng, m, f, false),
        _ => random_adapted_process(rng, f, 1),
    }
}

/// Bitmask of an outcome set.
pub fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0u64, |acc, &w| acc | 1 << w)
}

/// Closure of `generators` under complement and pairwise union, iterated to
/// a fixpoint. Exponential in the number of atoms of the result.
pub fn sigma_closure(universe: usize, generators: &[u64]) -> BTreeSet<u64> {
    assert!(universe <= 64);
    let full = if universe == 64 { u64::MAX } else { (1u64 << universe) - 1 };
    let mut family: BTreeSet<u64> = [0, full].into_iter().collect();
    family.extend(generators.iter().map(|g| g & full));
    loop {
        let current: Vec<u64> = family.iter().copied().collect();
        let mut grown = false;
        for &a in &current {
            grown |= family.insert(full & !a);
            for &b in &current {
                grown |= family.insert(a | b);
            }
        }
        if !grown {
            return family;
        }
    }
}

/// Minimal nonempty members of a set family.
pub fn minimal_nonempty(family: &BTreeSet<u64>) -> Vec<u64> {
    family
        .iter()
        .copied()
        .filter(|&s| s != 0 && family.iter().all(|&t| t == 0 || t & s != t || t == s))
        .collect()
}

/// Atoms of the σ-algebra generated by `generators`, found by splitting
/// `Ω` against each generator in turn.
pub fn split_atoms(universe: usize, generators: &[u64]) -> Vec<u64> {
    let full = if universe == 64 { u64::MAX } else { (1u64 << universe) - 1 };
    let mut blocks = vec![full];
    for &g in generators {
        blocks = blocks
            .into_iter()
            .flat_map(|b| [b & g, b & !g])
            .filter(|&b| b != 0)
            .collect();
    }
    blocks
}

/// Canonical partition from disjoint covering bitmasks.
pub fn partition_from_masks(universe: usize, masks: &[u64]) -> Partition {
    let atoms = masks
        .iter()
        .map(|&m| (0..universe).filter(|&w| m >> w & 1 == 1).collect())
        .collect();
    Partition::from_atoms(universe, atoms).expect("masks form a partition")
}

/// Generator sets of the predictable σ-algebra on `{0..=T} x Ω`, flattened
/// as `t * n + ω`: `{0} x A` for `A ∈ F_0`, and `(s, t] x A` for `s < t`
/// and `A ∈ F_s`.
pub fn predictable_generators(f: &Filtration) -> Vec<u64> {
    let n = f.universe_size();
    let horizon = f.horizon();
    assert!((horizon + 1) * n <= 64);
    let events = |p: &Partition| -> Vec<u64> {
        (0u64..(1u64 << p.num_atoms())).map(|mask| mask_of(&p.event_from_mask(mask))).collect()
    };
    let mut out = Vec::new();
    for a in events(f.at(0)) {
        out.push(a);
    }
    for s in 0..horizon {
        for a in events(f.at(s)) {
            for t in s + 1..=horizon {
                let mut g = 0u64;
                for time in s + 1..=t {
                    g |= a << (time * n);
                }
                out.push(g);
            }
        }
    }
    out
}

/// Product space `Ω₁ x Ω₂` with product weights, outcome `(a, b)` at index
/// `a * n2 + b`, together with the two coordinate σ-algebras.
pub fn product_space(first: &MeasureSpace, second: &MeasureSpace) -> (MeasureSpace, Partition, Partition) {
    let (n1, n2) = (first.len(), second.len());
    let weights = (0..n1 * n2).map(|k| first.weight(k / n2) * second.weight(k % n2)).collect();
    let m = MeasureSpace::new(weights).expect("nonnegative");
    let firsts: Vec<usize> = (0..n1 * n2).map(|k| k / n2).collect();
    let seconds: Vec<usize> = (0..n1 * n2).map(|k| k % n2).collect();
    (m, Partition::from_labels(&firsts), Partition::from_labels(&seconds))
}

/// Shuffled copy, for order-independence checks.
pub fn shuffled<T: Clone>(rng: &mut impl Rng, items: &[T]) -> Vec<T> {
    let mut out = items.to_vec();
    out.shuffle(rng);
    out
}
