//! Chain data in a form that does not depend on how the chain was built:
//! per level the group order, the Res matrix, and class sizes with the map
//! sending each class into the next level. Built-in chains export to it and
//! user chains are read from JSON into it.

use std::path::Path;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::hgroup::{colored_class_size, colored_cycle_types};
use crate::sparse::SparseMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRecord {
    pub label: String,
    pub size: BigUint,
    /// Index of the class containing this one at the next level.
    pub embeds_to: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelData {
    pub n: usize,
    pub order: BigUint,
    pub basis_size: usize,
    /// Res from this level to the previous one; empty for the first level.
    pub res: SparseMatrix,
    pub classes: Vec<ClassRecord>,
}

/// A validated finite stretch of a chain G_{n0} ≤ … ≤ G_N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainData {
    pub name: String,
    pub levels: Vec<LevelData>,
}

#[derive(Serialize, Deserialize)]
struct RawChain {
    levels: Vec<RawLevel>,
}

#[derive(Serialize, Deserialize)]
struct RawLevel {
    n: usize,
    order: u64,
    #[serde(rename = "basisSize")]
    basis_size: usize,
    res: Vec<(usize, usize, i64)>,
    classes: Vec<RawClass>,
}

#[derive(Serialize, Deserialize)]
struct RawClass {
    label: String,
    size: u64,
    #[serde(rename = "embedsTo", default, skip_serializing_if = "Option::is_none")]
    embeds_to: Option<String>,
}

impl ChainData {
    /// Levels 0..=max_n of a built-in chain.
    pub fn from_chain(chain: &Chain, max_n: usize) -> Result<Self> {
        let h = chain.h();
        let mut levels = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let classes = colored_cycle_types(h.num_classes(), n);
            let next = (n < max_n).then(|| colored_cycle_types(h.num_classes(), n + 1));
            let records = classes
                .iter()
                .map(|c| ClassRecord {
                    label: c.format(h),
                    size: colored_class_size(h, c),
                    embeds_to: next.as_ref().map(|nx| {
                        let padded = c.padded_to(n + 1);
                        nx.iter().position(|x| *x == padded).expect("padded class exists")
                    }),
                })
                .collect();
            let level = chain.level(n);
            levels.push(LevelData {
                n,
                order: chain.group_order(n),
                basis_size: level.len(),
                res: level.res.clone(),
                classes: records,
            });
        }
        let data = ChainData { name: chain.name().to_string(), levels };
        data.validate()?;
        Ok(data)
    }

    pub fn from_json(name: &str, text: &str) -> Result<Self> {
        let raw: RawChain = serde_json::from_str(text)?;
        let mut levels: Vec<LevelData> = Vec::with_capacity(raw.levels.len());
        for (i, lvl) in raw.levels.iter().enumerate() {
            let rows = if i == 0 { 0 } else { raw.levels[i - 1].basis_size };
            for &(r, c, v) in &lvl.res {
                if r >= rows || c >= lvl.basis_size {
                    return Err(Error::InconsistentChain(format!(
                        "level {}: Res entry ({r},{c}) outside {rows}x{}",
                        lvl.n, lvl.basis_size
                    )));
                }
                if v < 0 {
                    return Err(Error::InconsistentChain(format!("level {}: negative multiplicity {v}", lvl.n)));
                }
            }
            let res = SparseMatrix::from_triplets(rows, lvl.basis_size, lvl.res.iter().map(|&(r, c, v)| (r, c, BigInt::from(v))));
            let next = raw.levels.get(i + 1);
            let classes = lvl
                .classes
                .iter()
                .map(|c| {
                    let embeds_to = match (next, &c.embeds_to) {
                        (Some(nx), Some(label)) => Some(nx.classes.iter().position(|x| &x.label == label).ok_or_else(|| {
                            Error::InconsistentChain(format!(
                                "level {}: class {} embeds into unknown class {label}",
                                lvl.n, c.label
                            ))
                        })?),
                        (Some(_), None) => {
                            return Err(Error::InconsistentChain(format!(
                                "level {}: class {} has no embedsTo",
                                lvl.n, c.label
                            )))
                        }
                        (None, _) => None,
                    };
                    Ok(ClassRecord { label: c.label.clone(), size: BigUint::from(c.size), embeds_to })
                })
                .collect::<Result<Vec<_>>>()?;
            levels.push(LevelData { n: lvl.n, order: BigUint::from(lvl.order), basis_size: lvl.basis_size, res, classes });
        }
        let data = ChainData { name: name.to_string(), levels };
        data.validate()?;
        Ok(data)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&path.display().to_string(), &text)
    }

    pub fn to_json(&self) -> Result<String> {
        let small = |v: &BigUint, what: &str| {
            v.to_u64()
                .ok_or_else(|| Error::InconsistentChain(format!("{what} {v} does not fit the JSON integer range")))
        };
        let mut levels = Vec::with_capacity(self.levels.len());
        for (i, lvl) in self.levels.iter().enumerate() {
            let next = self.levels.get(i + 1);
            let res = lvl
                .res
                .entries_row_major()
                .into_iter()
                .map(|(r, c, v)| (r, c, v.to_i64().expect("multiplicities are small")))
                .collect();
            let classes = lvl
                .classes
                .iter()
                .map(|c| {
                    Ok(RawClass {
                        label: c.label.clone(),
                        size: small(&c.size, "class size")?,
                        embeds_to: c.embeds_to.and_then(|j| next.map(|nx| nx.classes[j].label.clone())),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            levels.push(RawLevel { n: lvl.n, order: small(&lvl.order, "group order")?, basis_size: lvl.basis_size, res, classes });
        }
        Ok(serde_json::to_string_pretty(&RawChain { levels })?)
    }

    /// Surjectivity, dimensions, class sizes and embeddings.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InconsistentChain(msg));
        if self.levels.is_empty() {
            return bad("no levels".into());
        }
        for (i, lvl) in self.levels.iter().enumerate() {
            if i > 0 && lvl.n != self.levels[i - 1].n + 1 {
                return bad(format!("levels {} and {} are not consecutive", self.levels[i - 1].n, lvl.n));
            }
            if lvl.res.cols() != lvl.basis_size {
                return bad(format!("level {}: Res has {} columns, basis size is {}", lvl.n, lvl.res.cols(), lvl.basis_size));
            }
            if lvl.classes.len() != lvl.basis_size {
                return bad(format!(
                    "level {}: {} classes but {} irreps",
                    lvl.n,
                    lvl.classes.len(),
                    lvl.basis_size
                ));
            }
            let total: BigUint = lvl.classes.iter().map(|c| c.size.clone()).sum();
            if total != lvl.order {
                return bad(format!("level {}: class sizes sum to {total}, order is {}", lvl.n, lvl.order));
            }
            if i == 0 {
                if lvl.res.nnz() != 0 {
                    return bad(format!("level {}: Res given for the first level", lvl.n));
                }
                continue;
            }
            let prev = &self.levels[i - 1];
            if lvl.res.rows() != prev.basis_size {
                return bad(format!("level {}: Res has {} rows, level below has {} irreps", lvl.n, lvl.res.rows(), prev.basis_size));
            }
            if lvl.order.is_zero() || (&lvl.order % &prev.order) != BigUint::zero() {
                return bad(format!("level {}: order {} is not a multiple of {}", lvl.n, lvl.order, prev.order));
            }
            let rank = lvl.res.rank();
            if rank < prev.basis_size {
                return Err(Error::NotSurjective { level: lvl.n, rank, expected: prev.basis_size });
            }
            for c in &prev.classes {
                if c.embeds_to.is_none_or(|j| j >= lvl.classes.len()) {
                    return bad(format!("level {}: class {} does not embed into level {}", prev.n, c.label, lvl.n));
                }
            }
        }
        Ok(())
    }

    pub fn min_level(&self) -> usize {
        self.levels[0].n
    }

    pub fn max_level(&self) -> usize {
        self.levels.last().expect("validated chains are non-empty").n
    }

    pub fn level(&self, n: usize) -> Option<&LevelData> {
        n.checked_sub(self.min_level()).and_then(|i| self.levels.get(i))
    }

    pub fn orders(&self) -> Vec<BigUint> {
        self.levels.iter().map(|l| l.order.clone()).collect()
    }

    /// X = Resᵀ·Res at level n; zero at the first level.
    pub fn x(&self, n: usize) -> Option<SparseMatrix> {
        let lvl = self.level(n)?;
        Some(&lvl.res.transpose() * &lvl.res)
    }

    /// Follows the embedding maps from level `from` up to level `to`.
    pub fn embed(&self, from: usize, class: usize, to: usize) -> Option<usize> {
        let mut c = class;
        for n in from..to {
            c = self.level(n)?.classes.get(c)?.embeds_to?;
        }
        Some(c)
    }

    /// |[g]_{to} ∩ G_{from}| for the level-`to` class `class`.
    pub fn intersection_size(&self, from: usize, to: usize, class: usize) -> Option<BigUint> {
        let lvl = self.level(from)?;
        let mut total = BigUint::zero();
        for (i, c) in lvl.classes.iter().enumerate() {
            if self.embed(from, i, to)? == class {
                total += &c.size;
            }
        }
        Some(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn export_round_trip() {
        let chain = Chain::symmetric();
        let data = ChainData::from_chain(&chain, 5).unwrap();
        let text = data.to_json().unwrap();
        let back = ChainData::from_json("sym", &text).unwrap();
        assert_eq!(back, data);
        let z = ChainData::from_chain(&Chain::from_name("Z2").unwrap(), 3).unwrap();
        assert_eq!(ChainData::from_json("z2wreath", &z.to_json().unwrap()).unwrap(), z);
    }

    #[test]
    fn zero_row_is_rejected() {
        let data = ChainData::from_chain(&Chain::symmetric(), 4).unwrap();
        let mut v: serde_json::Value = serde_json::from_str(&data.to_json().unwrap()).unwrap();
        // drop every Res entry that lands in row 1 at level 3
        let res = v["levels"][3]["res"].as_array_mut().unwrap();
        res.retain(|e| e[0] != 1);
        let err = ChainData::from_json("bad", &v.to_string()).unwrap_err();
        assert!(matches!(err, Error::NotSurjective { level: 3, .. }), "{err}");
        assert!(err.to_string().contains("not a surjective chain"));
    }

    #[test]
    fn intersections_match_class_sizes() {
        let data = ChainData::from_chain(&Chain::symmetric(), 5).unwrap();
        // transpositions of S_5 that lie in S_4: 6
        let lvl5 = data.level(5).unwrap();
        let t = lvl5.classes.iter().position(|c| c.label == "[2,1,1,1]").unwrap();
        assert_eq!(data.intersection_size(4, 5, t).unwrap(), BigUint::from(6u32));
    }
}
