//! Conditional expectation with respect to a finite sub-σ-algebra.
//!
//! `E(X | F)` is the atom average of `X` on each atom of positive mass and
//! the zero vector on null atoms. [`has_cond_exp`] is the defining
//! set-integral identity, kept as an independent check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::measure::{ae_eq, independent, set_integral, EventCap, FnTable, MeasureSpace};
use crate::numeric::VecD;
use crate::sigma::Partition;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CondExpResult {
    pub table: FnTable,
    /// Atoms of zero mass, where the zero vector was used.
    pub null_atoms: Vec<Vec<usize>>,
}

pub fn cond_exp(m: &MeasureSpace, f_alg: &Partition, x: &FnTable) -> Result<CondExpResult> {
    m.check_partition(f_alg)?;
    m.check_table(x)?;
    let mut values = vec![VecD::zeros(x.dim()); m.len()];
    let mut null_atoms = Vec::new();
    for atom in f_alg.atoms() {
        let mass = m.mass(atom);
        let value = match mass.recip() {
            Some(inv) => set_integral(m, atom, x)?.scale(&inv),
            None => {
                null_atoms.push(atom.clone());
                continue;
            }
        };
        for &w in atom {
            values[w] = value.clone();
        }
    }
    Ok(CondExpResult { table: FnTable::new(values)?, null_atoms })
}

/// Whether `g` is `f_alg`-measurable and `∫_A x = ∫_A g` for every
/// `f_alg`-measurable `A`. Enumerates all `2^|atoms|` events.
pub fn has_cond_exp(
    m: &MeasureSpace,
    f_alg: &Partition,
    x: &FnTable,
    g: &FnTable,
    cap: EventCap,
) -> Result<bool> {
    m.check_partition(f_alg)?;
    m.check_table(x)?;
    m.check_table(g)?;
    if x.dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: x.dim(), found: g.dim() });
    }
    let k = f_alg.num_atoms();
    cap.check(k)?;
    if !f_alg.is_measurable_fn(g.values())? {
        return Ok(false);
    }
    for mask in 0u64..(1u64 << k) {
        let event = f_alg.event_from_mask(mask);
        if set_integral(m, &event, x)? != set_integral(m, &event, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `E(s · g | F)` for an `F`-measurable scalar table `s`.
///
/// The result agrees a.e. with `s · E(g | F)`; that identity is checked
/// before returning.
pub fn cond_exp_pull_out(
    m: &MeasureSpace,
    f_alg: &Partition,
    scalar_f: &FnTable,
    g: &FnTable,
) -> Result<FnTable> {
    if scalar_f.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: scalar_f.dim() });
    }
    m.check_table(scalar_f)?;
    if !f_alg.is_measurable_fn(scalar_f.values())? {
        return Err(Error::Precondition("pulled-out factor is not measurable".into()));
    }
    let product = g.mul_scalar_table(scalar_f)?;
    let lhs = cond_exp(m, f_alg, &product)?.table;
    let rhs = cond_exp(m, f_alg, g)?.table.mul_scalar_table(scalar_f)?;
    if !ae_eq(m, &lhs, &rhs)? {
        return Err(Error::InvariantViolation("pull-out identity failed".into()));
    }
    Ok(lhs)
}

/// `E(x | σ(F ∪ G))` when `G` is independent of `σ(F ∪ σ(x))`; the result is
/// a.e. equal to `E(x | F)`. Scalar `x` only.
pub fn cond_exp_indep(
    m: &MeasureSpace,
    f_alg: &Partition,
    g_alg: &Partition,
    x: &FnTable,
) -> Result<FnTable> {
    if x.dim() != 1 {
        return Err(Error::UnsupportedDimension { op: "cond_exp_indep", dim: x.dim() });
    }
    m.check_table(x)?;
    let with_x = f_alg.join(&Partition::generate_from_function(x.values()))?;
    if !independent(m, &with_x, g_alg)? {
        return Err(Error::Precondition(
            "conditioning algebra is not independent of σ(F ∪ σ(x))".into(),
        ));
    }
    let joined = cond_exp(m, &f_alg.join(g_alg)?, x)?.table;
    let base = cond_exp(m, f_alg, x)?.table;
    if !ae_eq(m, &joined, &base)? {
        return Err(Error::InvariantViolation("independent information changed the result".into()));
    }
    Ok(joined)
}
