//! Murnaghan–Nakayama rule by border-strip removal on beta-sets.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::chain::Chain;
use crate::engine::CharacterColumn;
use crate::error::{Error, Result};
use crate::hgroup::ColoredCycleType;
use crate::partition::{CycleType, Partition};

/// Every way to remove a border strip of length `r` from `lambda`, as
/// `(remaining diagram, leg length)`.
pub fn border_strips(lambda: &Partition, r: usize) -> Vec<(Partition, usize)> {
    let l = lambda.len();
    let beta: Vec<usize> = (0..l).map(|i| lambda.part(i) + (l - 1 - i)).collect();
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let height = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let mut next = beta.clone();
        next[i] = b - r;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let parts = next.iter().enumerate().map(|(j, &x)| x - (l - 1 - j)).collect();
        out.push((Partition::from_unsorted(parts), height));
    }
    out
}

/// Memoizing evaluator of χ_λ(μ).
#[derive(Default)]
pub struct MnOracle {
    memo: HashMap<(Partition, Vec<usize>), BigInt>,
}

impl MnOracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn character(&mut self, lambda: &Partition, mu: &CycleType) -> Result<BigInt> {
        if lambda.size() != mu.n() {
            return Err(Error::Precondition(format!("|{lambda}| != |{mu}|")));
        }
        Ok(self.rec(lambda, mu.partition().parts()))
    }

    fn rec(&mut self, lambda: &Partition, cycles: &[usize]) -> BigInt {
        let Some((&r, rest)) = cycles.split_first() else {
            return BigInt::one();
        };
        let key = (lambda.clone(), cycles.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for (smaller, height) in border_strips(lambda, r) {
            let v = self.rec(&smaller, rest);
            if height % 2 == 0 {
                total += v;
            } else {
                total -= v;
            }
        }
        self.memo.insert(key, total.clone());
        total
    }
}

pub fn mn_character(lambda: &Partition, mu: &CycleType) -> Result<BigInt> {
    MnOracle::new().character(lambda, mu)
}

/// The S_n column of the class `mu` (padded with fixed points up to `n`),
/// over the canonical basis.
pub fn oracle_column(mu: &CycleType, n: usize) -> Result<CharacterColumn> {
    if mu.n() > n {
        return Err(Error::LevelMismatch { expected: n, got: mu.n() });
    }
    let padded = mu.padded_to(n);
    let chain = Chain::symmetric();
    let mut oracle = MnOracle::new();
    let values = chain
        .basis(n)
        .iter()
        .map(|l| oracle.character(&l.as_partition(), &padded))
        .collect::<Result<Vec<_>>>()?;
    Ok(CharacterColumn { level: n, class: ColoredCycleType::from_cycle_type(&padded), values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{class_size, cycle_types, dim_irrep, enumerate_partitions, factorial};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn known_values() {
        assert_eq!(mn_character(&p("[3,2,1]"), &"[3,1,1,1]".parse().unwrap()).unwrap(), BigInt::from(-2));
        for n in 1..=7 {
            for mu in cycle_types(n) {
                assert_eq!(mn_character(&Partition::row(n), &mu).unwrap(), BigInt::one());
                let sign = if (n - mu.partition().len()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(mn_character(&Partition::column(n), &mu).unwrap(), BigInt::from(sign));
            }
        }
        assert!(mn_character(&p("[2]"), &"[1]".parse().unwrap()).is_err());
    }

    #[test]
    fn identity_column_is_dimensions() {
        let col = oracle_column(&CycleType::identity(3), 3).unwrap();
        assert_eq!(col.values, vec![1.into(), 2.into(), 1.into()]);
        for lam in enumerate_partitions(8) {
            let chi = mn_character(&lam, &CycleType::identity(8)).unwrap();
            assert_eq!(chi, BigInt::from(dim_irrep(&lam)));
        }
    }

    #[test]
    fn six_cycle_norm() {
        let mu: CycleType = "[6]".parse().unwrap();
        let col = oracle_column(&mu, 6).unwrap();
        let norm: BigInt = col.values.iter().map(|v| v * v).sum();
        assert_eq!(norm, BigInt::from(6));
        assert_eq!(class_size(&mu), 120u32.into());
    }

    #[test]
    fn columns_are_orthogonal() {
        for n in 1..=8 {
            let cols: Vec<_> = cycle_types(n).iter().map(|mu| oracle_column(mu, n).unwrap()).collect();
            for (a, ca) in cols.iter().enumerate() {
                for (b, cb) in cols.iter().enumerate() {
                    let dot: BigInt = ca.values.iter().zip(&cb.values).map(|(x, y)| x * y).sum();
                    if a == b {
                        let mu = &cycle_types(n)[a];
                        assert_eq!(dot, BigInt::from(factorial(n) / class_size(mu)));
                    } else {
                        assert!(dot.is_zero());
                    }
                }
            }
        }
    }
}
