//! Lifts by restriction: for an irrep w of G_k, a vector w̃ ∈ R(G_n) with
//! Res^{n−k}(w̃) = w.
//!
//! The construction pads the first row of the first listed slot, scales by
//! 1/dim(U)^{n−k}, restricts back down, and subtracts the lifts of every
//! other term that appears. Those terms are strictly smaller in the order
//! "fewer boxes outside the first row of the padded slot, and no more boxes
//! in any other slot", so the recursion terminates; this is asserted.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::chain::{Chain, ReprVector, WreathIrrepLabel};
use crate::error::{Error, Result};
use crate::hgroup::{ColoredCycleType, LevelTable};

/// A lift together with where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftRecord {
    pub source: WreathIrrepLabel,
    pub source_level: usize,
    pub vector: ReprVector,
}

/// Memoizing lifter bound to one chain.
pub struct Lifter<'a> {
    chain: &'a Chain,
    memo: Mutex<HashMap<(WreathIrrepLabel, usize), Arc<ReprVector>>>,
}

/// True if `u` lies strictly below `w` in the order used when lifting `w`
/// through slot `slot`.
pub fn lifts_below(u: &WreathIrrepLabel, w: &WreathIrrepLabel, slot: usize) -> bool {
    let (us, ws) = (u.slot(slot), w.slot(slot));
    let (bu, bw) = (us.below_first_row(), ws.below_first_row());
    if bu > bw {
        return false;
    }
    let mut strict = bu < bw;
    let mut indices: Vec<usize> = u.entries().iter().chain(w.entries()).map(|e| e.0).collect();
    indices.sort_unstable();
    indices.dedup();
    for i in indices.into_iter().filter(|&i| i != slot) {
        let (a, b) = (u.slot(i).size(), w.slot(i).size());
        if a > b {
            return false;
        }
        strict |= a < b;
    }
    strict
}

impl<'a> Lifter<'a> {
    pub fn new(chain: &'a Chain) -> Self {
        Lifter { chain, memo: Mutex::new(HashMap::new()) }
    }

    pub fn chain(&self) -> &Chain {
        self.chain
    }

    /// w̃ at level `n` for the irrep `w` of G_k, k = |w|.
    pub fn lift(&self, w: &WreathIrrepLabel, n: usize) -> Result<Arc<ReprVector>> {
        let k = w.size();
        if n < k {
            return Err(Error::Precondition(format!("cannot lift from level {k} down to level {n}")));
        }
        let key = (w.clone(), n);
        if let Some(v) = self.memo.lock().expect("lift memo poisoned").get(&key) {
            return Ok(Arc::clone(v));
        }
        let v = Arc::new(self.compute(w, n)?);
        let mut memo = self.memo.lock().expect("lift memo poisoned");
        Ok(Arc::clone(memo.entry(key).or_insert(v)))
    }

    fn compute(&self, w: &WreathIrrepLabel, n: usize) -> Result<ReprVector> {
        let k = w.size();
        let top = self.chain.level(n);
        if n == k {
            let i = top.index_of(w).ok_or_else(|| Error::MissingLabel(self.chain.format_label(w)))?;
            return Ok(ReprVector::basis_vector(n, top.len(), i));
        }
        let slot = w.entries().first().map_or(0, |e| e.0);
        let padded = w.with_slot(slot, w.slot(slot).extend_first_row(n - k));
        let dim = BigInt::from(self.chain.h().irreps[slot].dim);
        let scale = BigRational::new(BigInt::one(), dim.pow((n - k) as u32));
        let pi = top.index_of(&padded).expect("padded label lies in the basis");
        let mut result = ReprVector::zeros(n, top.len());
        result.set(pi, scale.clone());

        let down = self.chain.restrict_steps(&result, n - k)?;
        let bottom = self.chain.level(k);
        let wi = bottom.index_of(w).ok_or_else(|| Error::MissingLabel(self.chain.format_label(w)))?;
        if !down.get(wi).is_one() {
            return Err(Error::InconsistentChain(format!(
                "padded {} restricts to {} times {}, expected 1",
                self.chain.format_label(&padded),
                down.get(wi),
                self.chain.format_label(w)
            )));
        }
        for (ui, c) in down.support() {
            if ui == wi {
                continue;
            }
            let u = &bottom.basis[ui];
            assert!(
                lifts_below(u, w, slot),
                "lift recursion does not descend: {} after {}",
                self.chain.format_label(u),
                self.chain.format_label(w)
            );
            let lower = self.lift(u, n)?;
            result.add_scaled(&lower, &-c.clone());
        }
        Ok(result)
    }

    /// The lift, checked by restricting back down.
    pub fn lift_record(&self, w: &WreathIrrepLabel, n: usize) -> Result<LiftRecord> {
        let vector = (*self.lift(w, n)?).clone();
        let record = LiftRecord { source: w.clone(), source_level: w.size(), vector };
        if !self.is_exact(&record)? {
            return Err(Error::InconsistentChain(format!(
                "lift of {} to level {n} does not restrict back",
                self.chain.format_label(w)
            )));
        }
        Ok(record)
    }

    /// Res^{n−k}(vector) = source exactly.
    pub fn is_exact(&self, record: &LiftRecord) -> Result<bool> {
        let steps = record.vector.level() - record.source_level;
        let down = self.chain.restrict_steps(&record.vector, steps)?;
        let bottom = self.chain.level(record.source_level);
        let wi = bottom.index_of(&record.source).ok_or_else(|| Error::MissingLabel(self.chain.format_label(&record.source)))?;
        Ok(down.support().all(|(i, c)| if i == wi { c.is_one() } else { c.is_zero() }) && down.get(wi).is_one())
    }

    /// Σ_w χ_w(c) · w̃ over the irreps of a level-k table.
    pub fn lift_column_input(&self, table: &LevelTable, class: &ColoredCycleType, n: usize) -> Result<ReprVector> {
        let ci = table
            .class_index(class)
            .ok_or_else(|| Error::MissingLabel(class.format(self.chain.h())))?;
        let mut out = ReprVector::zeros(n, self.chain.basis_size(n));
        for (irrep, row) in table.irreps.iter().zip(&table.values) {
            let chi = &row[ci];
            if chi.is_zero() {
                continue;
            }
            let lifted = self.lift(irrep, n)?;
            out.add_scaled(&lifted, &BigRational::from_integer(chi.clone()));
        }
        Ok(out)
    }
}
