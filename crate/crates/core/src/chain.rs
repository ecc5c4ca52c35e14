//! Irrep bases per level and the branching operators Res, Ind and
//! X = Ind·Res for the chains {S_n} and {H^n ⋊ S_n}.
//!
//! The symmetric-group chain is the wreath chain over the trivial group, so
//! both share one code path; only label text differs.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hgroup::{builtin_table, sym_level_table, wreath_level_table, wreath_order, GroupTable, LevelTable};
use crate::partition::{enumerate_partitions, Partition};
use crate::sparse::SparseMatrix;

/// An irrep of H^n ⋊ S_n: distinct H-irreps, each paired with a non-empty
/// partition. Entries are sorted by H-irrep index.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WreathIrrepLabel {
    entries: Vec<(usize, Partition)>,
}

impl WreathIrrepLabel {
    /// Sorts the entries and drops empty partitions; rejects repeated
    /// H-irreps.
    pub fn new(mut entries: Vec<(usize, Partition)>) -> Result<Self> {
        entries.retain(|(_, p)| !p.is_empty());
        entries.sort_by_key(|e| e.0);
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Parse("an H-irrep appears twice in an irrep label".into()));
        }
        Ok(WreathIrrepLabel { entries })
    }

    pub fn empty() -> Self {
        WreathIrrepLabel { entries: Vec::new() }
    }

    /// An S_n irrep, i.e. a label over the trivial group.
    pub fn from_partition(p: Partition) -> Self {
        if p.is_empty() {
            Self::empty()
        } else {
            WreathIrrepLabel { entries: vec![(0, p)] }
        }
    }

    pub fn entries(&self) -> &[(usize, Partition)] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.iter().map(|e| e.1.size()).sum()
    }

    /// The partition in slot `h_irrep`, or the empty partition.
    pub fn slot(&self, h_irrep: usize) -> Partition {
        self.entries
            .iter()
            .find(|e| e.0 == h_irrep)
            .map(|e| e.1.clone())
            .unwrap_or_default()
    }

    /// The single partition of a trivial-H label.
    pub fn as_partition(&self) -> Partition {
        self.slot(0)
    }

    pub fn with_slot(&self, h_irrep: usize, p: Partition) -> Self {
        let mut entries: Vec<_> = self.entries.iter().filter(|e| e.0 != h_irrep).cloned().collect();
        entries.push((h_irrep, p));
        WreathIrrepLabel::new(entries).expect("slot replaced, indices stay distinct")
    }

    fn support(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.0).collect()
    }

    /// `[3,2]` over a one-irrep group, otherwise `U:[λ];U':[λ']` with H-irrep
    /// labels; the empty label is `[]`.
    pub fn format(&self, h: &GroupTable) -> String {
        if h.num_irreps() == 1 || self.entries.is_empty() {
            return self.as_partition().to_string();
        }
        self.entries
            .iter()
            .map(|(i, p)| format!("{}:{}", h.irreps[*i].label, p))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn parse(h: &GroupTable, s: &str) -> Result<Self> {
        let t = s.trim();
        if !t.contains(':') {
            let p: Partition = t.parse()?;
            if h.num_irreps() == 1 || p.is_empty() {
                return Ok(Self::from_partition(p));
            }
            return Err(Error::Parse(format!("irrep label `{s}` needs the form hirrep:partition;...")));
        }
        let mut entries = Vec::new();
        for seg in t.split(';').filter(|x| !x.trim().is_empty()) {
            let (label, part) = seg
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("bad irrep segment `{seg}`")))?;
            let i = h
                .irrep_index(label.trim())
                .ok_or_else(|| Error::Parse(format!("unknown H-irrep `{}` in `{s}`", label.trim())))?;
            entries.push((i, part.parse()?));
        }
        Self::new(entries)
    }
}

impl Ord for WreathIrrepLabel {
    /// Basis order: support set first (ascending, lexicographic on the sorted
    /// index vectors), then the partitions slot by slot in canonical order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.support().cmp(&other.support()).then_with(|| {
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.1.cmp(&b.1))
                .find(|o| *o != Ordering::Equal)
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for WreathIrrepLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All irreps of H^n ⋊ S_n for an H with `num_irreps` irreps, in basis order.
pub fn wreath_basis(num_irreps: usize, n: usize) -> Vec<WreathIrrepLabel> {
    fn rec(i: usize, remaining: usize, d: usize, cur: &mut Vec<(usize, Partition)>, out: &mut Vec<WreathIrrepLabel>) {
        if i == d {
            if remaining == 0 {
                out.push(WreathIrrepLabel { entries: cur.clone() });
            }
            return;
        }
        rec(i + 1, remaining, d, cur, out);
        for k in 1..=remaining {
            for p in enumerate_partitions(k) {
                cur.push((i, p));
                rec(i + 1, remaining - k, d, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(0, n, num_irreps, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Exact rational coefficients over one level's basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReprVector {
    level: usize,
    coeffs: Vec<BigRational>,
}

impl ReprVector {
    pub fn zeros(level: usize, len: usize) -> Self {
        ReprVector { level, coeffs: vec![BigRational::zero(); len] }
    }

    pub fn basis_vector(level: usize, len: usize, index: usize) -> Self {
        let mut v = Self::zeros(level, len);
        v.coeffs[index] = BigRational::one();
        v
    }

    pub fn from_coeffs(level: usize, coeffs: Vec<BigRational>) -> Self {
        ReprVector { level, coeffs }
    }

    pub fn from_integers(level: usize, values: &[BigInt]) -> Self {
        ReprVector { level, coeffs: values.iter().map(|v| BigRational::from_integer(v.clone())).collect() }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn get(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn set(&mut self, i: usize, value: BigRational) {
        self.coeffs[i] = value;
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, other: &ReprVector, c: &BigRational) {
        assert_eq!((self.level, self.len()), (other.level, other.len()), "vectors from different levels");
        if c.is_zero() {
            return;
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b * c;
            }
        }
    }

    pub fn scaled(&self, c: &BigRational) -> ReprVector {
        ReprVector { level: self.level, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Nonzero coefficients as `(index, value)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    pub fn norm_sq(&self) -> BigRational {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn dot(&self, other: &ReprVector) -> BigRational {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).sum()
    }
}

/// Res: R(G_n) → R(G_{n−1}) as a sparse matrix; Ind is its transpose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingOperator {
    pub level: usize,
    pub matrix: SparseMatrix,
}

impl BranchingOperator {
    pub fn ind(&self) -> SparseMatrix {
        self.matrix.transpose()
    }
}

/// One memoized level: basis, Res from this level down, and X.
#[derive(Debug)]
pub struct Level {
    pub n: usize,
    pub basis: Vec<WreathIrrepLabel>,
    index: HashMap<WreathIrrepLabel, usize>,
    /// Res_n; at level 0 an empty 0×1 matrix so that Ind·Res vanishes there.
    pub res: SparseMatrix,
    pub x: SparseMatrix,
}

impl Level {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn index_of(&self, label: &WreathIrrepLabel) -> Option<usize> {
        self.index.get(label).copied()
    }
}

/// The chain {H^n ⋊ S_n}; the symmetric-group chain is H = trivial.
#[derive(Debug)]
pub struct Chain {
    name: String,
    h: GroupTable,
    levels: RwLock<BTreeMap<usize, Arc<Level>>>,
}

impl Chain {
    pub fn symmetric() -> Self {
        Self::wreath_named("sym", GroupTable::trivial())
    }

    pub fn wreath(h: GroupTable) -> Self {
        let name = if h.order == 1 { "sym".to_string() } else { format!("{}wreath", h.name.to_lowercase()) };
        Self::wreath_named(&name, h)
    }

    fn wreath_named(name: &str, h: GroupTable) -> Self {
        Chain { name: name.to_string(), h, levels: RwLock::new(BTreeMap::new()) }
    }

    /// `sym`/`trivial`, `z2wreath`/`Z2`, or a GroupTable JSON path for H.
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "sym" | "trivial" | "S" => Ok(Self::symmetric()),
            "z2wreath" | "Z2" => Ok(Self::wreath(GroupTable::z2())),
            other => Ok(Self::wreath(builtin_table(other)?)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn h(&self) -> &GroupTable {
        &self.h
    }

    /// |H|, the scaling M of the falling factorials.
    pub fn m(&self) -> u64 {
        self.h.order
    }

    pub fn is_symmetric(&self) -> bool {
        self.h.order == 1
    }

    pub fn group_order(&self, n: usize) -> BigUint {
        wreath_order(&self.h, n)
    }

    pub fn level(&self, n: usize) -> Arc<Level> {
        if let Some(l) = self.levels.read().expect("level cache poisoned").get(&n) {
            return Arc::clone(l);
        }
        let built = Arc::new(self.build_level(n));
        let mut cache = self.levels.write().expect("level cache poisoned");
        Arc::clone(cache.entry(n).or_insert(built))
    }

    fn build_level(&self, n: usize) -> Level {
        let basis = wreath_basis(self.h.num_irreps(), n);
        let index: HashMap<_, _> = basis.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let res = if n == 0 {
            SparseMatrix::zeros(0, basis.len())
        } else {
            let below = self.level(n - 1);
            let mut triplets = Vec::new();
            for (col, label) in basis.iter().enumerate() {
                for (h_irrep, lam) in label.entries() {
                    let dim = BigInt::from(self.h.irreps[*h_irrep].dim);
                    for row in lam.removable_rows() {
                        let lower = label.with_slot(*h_irrep, lam.remove_box(row));
                        let r = below.index_of(&lower).expect("removal stays in the basis");
                        triplets.push((r, col, dim.clone()));
                    }
                }
            }
            SparseMatrix::from_triplets(below.len(), basis.len(), triplets)
        };
        let x = &res.transpose() * &res;
        Level { n, basis, index, res, x }
    }

    pub fn basis(&self, n: usize) -> Vec<WreathIrrepLabel> {
        self.level(n).basis.clone()
    }

    pub fn basis_size(&self, n: usize) -> usize {
        self.level(n).len()
    }

    pub fn res_operator(&self, n: usize) -> Result<BranchingOperator> {
        if n == 0 {
            return Err(Error::Precondition("Res is defined from level 1 upwards".into()));
        }
        Ok(BranchingOperator { level: n, matrix: self.level(n).res.clone() })
    }

    /// X = Ind·Res on R(G_n).
    pub fn ind_res(&self, n: usize) -> SparseMatrix {
        self.level(n).x.clone()
    }

    /// The literal Ind^l Res^l, built from composed Res matrices.
    pub fn brute_indl_resl(&self, n: usize, l: usize) -> Result<SparseMatrix> {
        if l > n {
            return Err(Error::Precondition(format!("cannot restrict {l} steps from level {n}")));
        }
        let mut r = SparseMatrix::identity(self.basis_size(n));
        for j in 0..l {
            r = &self.level(n - j).res * &r;
        }
        Ok(&r.transpose() * &r)
    }

    /// Applies Res once.
    pub fn restrict(&self, v: &ReprVector) -> Result<ReprVector> {
        let n = v.level();
        if n == 0 {
            return Err(Error::Precondition("cannot restrict below level 0".into()));
        }
        let level = self.level(n);
        if v.len() != level.len() {
            return Err(Error::LevelMismatch { expected: level.len(), got: v.len() });
        }
        Ok(ReprVector::from_coeffs(n - 1, level.res.apply(v.coeffs())))
    }

    pub fn restrict_steps(&self, v: &ReprVector, steps: usize) -> Result<ReprVector> {
        let mut out = v.clone();
        for _ in 0..steps {
            out = self.restrict(&out)?;
        }
        Ok(out)
    }

    pub fn format_label(&self, l: &WreathIrrepLabel) -> String {
        l.format(&self.h)
    }

    pub fn parse_label(&self, s: &str) -> Result<WreathIrrepLabel> {
        WreathIrrepLabel::parse(&self.h, s)
    }

    /// The character table at level `k`: the determinantal formula for the
    /// symmetric chain, explicit construction (bounded) otherwise.
    pub fn level_table(&self, k: usize, bound: u64) -> Result<LevelTable> {
        if self.is_symmetric() {
            Ok(sym_level_table(k))
        } else {
            wreath_level_table(&self.h, k, bound)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partition_count;

    fn dense(m: &SparseMatrix) -> Vec<Vec<i64>> {
        m.to_dense()
            .into_iter()
            .map(|r| r.into_iter().map(|v| i64::try_from(v).unwrap()).collect())
            .collect()
    }

    #[test]
    fn symmetric_basis_is_partitions() {
        let c = Chain::symmetric();
        for n in 0..=8 {
            assert_eq!(c.basis_size(n), partition_count(n));
        }
        let names: Vec<String> = c.basis(4).iter().map(|l| c.format_label(l)).collect();
        assert_eq!(names, ["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
        assert_eq!(c.format_label(&c.basis(0)[0]), "[]");
    }

    #[test]
    fn z2_basis_order() {
        let c = Chain::from_name("z2wreath").unwrap();
        let names = |n| c.basis(n).iter().map(|l| c.format_label(l)).collect::<Vec<_>>();
        assert_eq!(names(1), ["1:[1]", "-1:[1]"]);
        assert_eq!(names(2), ["1:[2]", "1:[1,1]", "1:[1];-1:[1]", "-1:[2]", "-1:[1,1]"]);
        // Σ over compositions of ∏ p(k_i): n=3 gives 3+2+2+3 = 10
        assert_eq!(c.basis_size(3), 10);
        assert_eq!(c.basis_size(4), 20);
    }

    #[test]
    fn res_on_symmetric_chain() {
        let c = Chain::symmetric();
        let res = c.res_operator(6).unwrap().matrix;
        let col = c.level(6).index_of(&c.parse_label("[3,3]").unwrap()).unwrap();
        let row = c.level(5).index_of(&c.parse_label("[3,2]").unwrap()).unwrap();
        let entries: Vec<_> = res.column(col).collect();
        assert_eq!(entries, vec![(row, &BigInt::one())]);
        for (j, lam) in c.basis(6).iter().enumerate() {
            let s: BigInt = res.column(j).map(|(_, v)| v.clone()).sum();
            assert_eq!(s, BigInt::from(lam.as_partition().removable_rows().len()));
        }
        assert!(c.res_operator(0).is_err());
    }

    #[test]
    fn x_for_s2() {
        let c = Chain::symmetric();
        assert_eq!(dense(&c.ind_res(2)), vec![vec![1, 1], vec![1, 1]]);
    }

    #[test]
    fn z2_res_example() {
        let c = Chain::from_name("Z2").unwrap();
        let n = 4;
        let w = c.parse_label("1:[3];-1:[1]").unwrap();
        let v = ReprVector::basis_vector(n, c.basis_size(n), c.level(n).index_of(&w).unwrap());
        let r = c.restrict(&v).unwrap();
        let a = c.level(3).index_of(&c.parse_label("1:[2];-1:[1]").unwrap()).unwrap();
        let b = c.level(3).index_of(&c.parse_label("1:[3]").unwrap()).unwrap();
        let support: Vec<_> = r.support().map(|(i, x)| (i, x.clone())).collect();
        let mut expected = vec![(a, BigRational::one()), (b, BigRational::one())];
        expected.sort_by_key(|e| e.0);
        assert_eq!(support, expected);
    }

    #[test]
    fn label_round_trip() {
        let c = Chain::from_name("Z2").unwrap();
        for n in 0..=3 {
            for l in c.basis(n) {
                assert_eq!(c.parse_label(&c.format_label(&l)).unwrap(), l);
            }
        }
        assert!(c.parse_label("[2]").is_err());
        assert!(c.parse_label("1:[1];1:[1]").is_err());
    }
}
