//! Young diagrams: enumeration, conjugation, hook-length dimensions and
//! cycle-type class sizes for the symmetric groups.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// A partition stored as its weakly decreasing sequence of positive parts.
///
/// The derived order is the canonical basis order: larger partitions (more
/// boxes) first, then descending lexicographic on the parts. So for n = 4 the
/// order is `[4] < [3,1] < [2,2] < [2,1,1] < [1,1,1,1]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, rejecting sequences that are not weakly decreasing
    /// or contain zeros.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse(format!("partition {parts:?} has a zero part")));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::Parse(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// Sorts the given parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row diagram `[n]`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// The one-column diagram `[1^n]`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of row `i`, zero past the last row.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Boxes outside the first row.
    pub fn below_first_row(&self) -> usize {
        self.size() - self.part(0)
    }

    /// The transposed diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (0..width)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.conjugate() == *self
    }

    /// Rows whose last box can be removed.
    pub fn removable_rows(&self) -> Vec<usize> {
        (0..self.parts.len())
            .filter(|&i| self.part(i) > self.part(i + 1))
            .collect()
    }

    /// Rows (including the new row at the bottom) that can take a box.
    pub fn addable_rows(&self) -> Vec<usize> {
        (0..=self.parts.len())
            .filter(|&i| i == 0 || self.part(i) < self.part(i - 1))
            .collect()
    }

    /// Removes the last box of `row`. Panics if the result is not a partition.
    pub fn remove_box(&self, row: usize) -> Partition {
        assert!(self.part(row) > self.part(row + 1), "row {row} of {self} has no removable box");
        let mut parts = self.parts.clone();
        parts[row] -= 1;
        if parts[row] == 0 {
            parts.pop();
        }
        Partition { parts }
    }

    /// Appends a box to `row`. Panics if the result is not a partition.
    pub fn add_box(&self, row: usize) -> Partition {
        assert!(row == 0 || self.part(row) < self.part(row - 1), "cannot add a box to row {row} of {self}");
        let mut parts = self.parts.clone();
        if row == parts.len() {
            parts.push(1);
        } else {
            parts[row] += 1;
        }
        Partition { parts }
    }

    /// Attaches `extra` boxes to the first row.
    pub fn extend_first_row(&self, extra: usize) -> Partition {
        if extra == 0 {
            return self.clone();
        }
        let mut parts = self.parts.clone();
        if parts.is_empty() {
            parts.push(extra);
        } else {
            parts[0] += extra;
        }
        Partition { parts }
    }

    /// Hook lengths, row by row.
    pub fn hooks(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size());
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                out.push((row - j - 1) + (conj.parts[j] - i - 1) + 1);
            }
        }
        out
    }

    /// Sum of contents `j - i` over all boxes.
    pub fn content_sum(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &row)| (0..row).map(move |j| j as i64 - i as i64))
            .sum()
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .size()
            .cmp(&self.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses the bracketed text form, e.g. `[3,2,1]` or `[]`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected a bracketed partition, got `{s}`")))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad part `{}` in `{s}`", p.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` in canonical (descending lexicographic) order.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for p in (1..=remaining.min(max)).rev() {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of partitions of `n`.
pub fn partition_count(n: usize) -> usize {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for m in part..=n {
            p[m] += p[m - part];
        }
    }
    p[n]
}

pub fn conjugate(lambda: &Partition) -> Partition {
    lambda.conjugate()
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Dimension of the irreducible representation of S_n labelled by `lambda`,
/// by the hook length formula.
pub fn dim_irrep(lambda: &Partition) -> BigUint {
    let hooks: BigUint = lambda.hooks().into_iter().fold(BigUint::one(), |acc, h| acc * h);
    factorial(lambda.size()) / hooks
}

/// Indices into the canonical order of the partitions of `n`, listed as:
/// every λ that precedes its conjugate, then the self-conjugate ones, then
/// the conjugates of the first group in reverse. This is the order that
/// displays conjugation as a reflection.
pub fn mirrored_order(n: usize) -> Vec<usize> {
    let parts = enumerate_partitions(n);
    let pos = |p: &Partition| parts.iter().position(|q| q == p).expect("conjugate is a partition of n");
    let upper: Vec<usize> = (0..parts.len()).filter(|&i| parts[i] < parts[i].conjugate()).collect();
    let selfconj = (0..parts.len()).filter(|&i| parts[i].is_self_conjugate());
    let lower: Vec<usize> = upper.iter().rev().map(|&i| pos(&parts[i].conjugate())).collect();
    upper.iter().copied().chain(selfconj).chain(lower).collect()
}

/// A conjugacy class of S_n named by its cycle type.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CycleType {
    partition: Partition,
}

impl CycleType {
    pub fn new(partition: Partition) -> Self {
        CycleType { partition }
    }

    pub fn identity(n: usize) -> Self {
        CycleType { partition: Partition::column(n) }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn n(&self) -> usize {
        self.partition.size()
    }

    /// `m_i` for i = 1..=n (index 0 unused).
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.n() + 1];
        for &p in self.partition.parts() {
            m[p] += 1;
        }
        m
    }

    pub fn fixed_points(&self) -> usize {
        self.partition.parts().iter().filter(|&&p| p == 1).count()
    }

    /// Cycle type with all fixed points dropped: the class in the smallest
    /// symmetric group containing it.
    pub fn without_fixed_points(&self) -> CycleType {
        let parts = self.partition.parts().iter().copied().filter(|&p| p > 1).collect();
        CycleType { partition: Partition { parts } }
    }

    /// Adds fixed points until the cycle type lives in S_n.
    pub fn padded_to(&self, n: usize) -> CycleType {
        assert!(n >= self.n());
        let mut parts = self.partition.parts().to_vec();
        parts.extend(std::iter::repeat_n(1, n - self.n()));
        CycleType { partition: Partition { parts } }
    }

    /// An odd permutation has an odd number of even-length cycles.
    pub fn is_odd(&self) -> bool {
        self.partition.parts().iter().filter(|&&p| p % 2 == 0).count() % 2 == 1
    }

    /// Canonical column order for S_n tables: identity first, ascending
    /// lexicographic on the parts.
    pub fn column_cmp(&self, other: &Self) -> Ordering {
        self.partition.parts().cmp(other.partition.parts())
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.partition, f)
    }
}

impl FromStr for CycleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(CycleType::new(s.parse()?))
    }
}

/// |[mu]| in S_n: n! / prod(i^{m_i} m_i!).
pub fn class_size(mu: &CycleType) -> BigUint {
    let m = mu.multiplicities();
    let centralizer = m.iter().enumerate().skip(1).fold(BigUint::one(), |acc, (i, &mi)| {
        acc * BigUint::from(i).pow(mi as u32) * factorial(mi)
    });
    factorial(mu.n()) / centralizer
}

/// Cycle types of `n` in column order (identity first).
pub fn cycle_types(n: usize) -> Vec<CycleType> {
    let mut out: Vec<CycleType> = enumerate_partitions(n).into_iter().map(CycleType::new).collect();
    out.sort_by(|a, b| a.column_cmp(b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    /// Number of standard Young tableaux, by removing the largest entry in
    /// every possible corner.
    fn syt_count(lambda: &Partition) -> u64 {
        if lambda.is_empty() {
            return 1;
        }
        lambda.removable_rows().into_iter().map(|r| syt_count(&lambda.remove_box(r))).sum()
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        let four: Vec<String> = enumerate_partitions(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(four, ["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
        let six = enumerate_partitions(6);
        assert_eq!(six.len(), 11);
        let head: Vec<String> = six.iter().take(6).map(|p| p.to_string()).collect();
        assert_eq!(head, ["[6]", "[5,1]", "[4,2]", "[4,1,1]", "[3,3]", "[3,2,1]"]);
        for n in 0..15 {
            assert_eq!(enumerate_partitions(n).len(), partition_count(n));
        }
    }

    #[test]
    fn enumeration_is_sorted_by_ord() {
        for n in 0..10 {
            let ps = enumerate_partitions(n);
            assert!(ps.windows(2).all(|w| w[0] < w[1]));
        }
        assert!(p("[2]") < p("[1,1]"));
        assert!(p("[1,1]") < p("[1]"));
    }

    #[test]
    fn conjugation() {
        assert_eq!(p("[4,2]").conjugate(), p("[2,2,1,1]"));
        assert_eq!(p("[3,2,1]").conjugate(), p("[3,2,1]"));
        assert_eq!(p("[5]").conjugate(), p("[1,1,1,1,1]"));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        for n in 0..=12 {
            for lam in enumerate_partitions(n) {
                assert_eq!(lam.conjugate().conjugate(), lam);
            }
        }
    }

    #[test]
    fn dimensions_match_tableau_count() {
        assert_eq!(dim_irrep(&p("[6]")), BigUint::from(1u32));
        assert_eq!(syt_count(&p("[3,2]")), 5);
        assert_eq!(dim_irrep(&p("[3,2]")), BigUint::from(5u32));
        assert_eq!(syt_count(&p("[3,2,1]")), 16);
        assert_eq!(dim_irrep(&p("[3,2,1]")), BigUint::from(16u32));
        for n in 1..=8 {
            for lam in enumerate_partitions(n) {
                assert_eq!(dim_irrep(&lam), BigUint::from(syt_count(&lam)));
            }
        }
    }

    #[test]
    fn sum_of_squared_dimensions() {
        for n in 0..=10 {
            let total: BigUint = enumerate_partitions(n).iter().map(|l| dim_irrep(l).pow(2)).sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn conjugate_dimension_equal() {
        for n in 1..=10 {
            for lam in enumerate_partitions(n) {
                assert_eq!(dim_irrep(&lam), dim_irrep(&lam.conjugate()));
            }
        }
    }

    /// Counts permutations of S_n with the given cycle type by enumeration.
    fn brute_class_size(mu: &CycleType) -> u64 {
        let n = mu.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut count = 0;
        loop {
            let mut seen = vec![false; n];
            let mut lens = Vec::new();
            for s in 0..n {
                if !seen[s] {
                    let mut len = 0;
                    let mut c = s;
                    while !seen[c] {
                        seen[c] = true;
                        c = perm[c];
                        len += 1;
                    }
                    lens.push(len);
                }
            }
            if Partition::from_unsorted(lens) == *mu.partition() {
                count += 1;
            }
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else { break };
            let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
            perm.swap(i - 1, j);
            perm[i..].reverse();
        }
        count
    }

    #[test]
    fn class_sizes() {
        assert_eq!(class_size(&CycleType::identity(6)), BigUint::from(1u32));
        let transposition: CycleType = "[2,1,1,1,1]".parse().unwrap();
        assert_eq!(brute_class_size(&transposition), 15);
        assert_eq!(class_size(&transposition), BigUint::from(15u32));
        let three_one: CycleType = "[3,1]".parse().unwrap();
        assert_eq!(brute_class_size(&three_one), 8);
        assert_eq!(class_size(&three_one), BigUint::from(8u32));
        for n in 1..=6 {
            for mu in cycle_types(n) {
                assert_eq!(class_size(&mu), BigUint::from(brute_class_size(&mu)));
            }
        }
        for n in 0..=10 {
            let total: BigUint = cycle_types(n).iter().map(class_size).sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn cycle_type_helpers() {
        let mu: CycleType = "[3,2,1,1]".parse().unwrap();
        assert_eq!(mu.fixed_points(), 2);
        assert_eq!(mu.multiplicities()[1], 2);
        assert_eq!(mu.without_fixed_points().to_string(), "[3,2]");
        assert_eq!(mu.padded_to(9).to_string(), "[3,2,1,1,1,1]");
        assert!(mu.is_odd());
        assert!(!"[3,1]".parse::<CycleType>().unwrap().is_odd());
        assert_eq!(cycle_types(3).iter().map(|c| c.to_string()).collect::<Vec<_>>(), ["[1,1,1]", "[2,1]", "[3]"]);
    }

    #[test]
    fn parse_errors() {
        assert!("3,2".parse::<Partition>().is_err());
        assert!("[2,3]".parse::<Partition>().is_err());
        assert!("[2,0]".parse::<Partition>().is_err());
        assert!("[a]".parse::<Partition>().is_err());
        assert_eq!(" [ 3 , 1 ] ".parse::<Partition>().unwrap().to_string(), "[3,1]");
    }

    #[test]
    fn corners_and_boxes() {
        let lam = p("[3,3,1]");
        assert_eq!(lam.removable_rows(), vec![1, 2]);
        assert_eq!(lam.addable_rows(), vec![0, 2, 3]);
        assert_eq!(lam.remove_box(1), p("[3,2,1]"));
        assert_eq!(lam.add_box(0), p("[4,3,1]"));
        assert_eq!(lam.extend_first_row(2), p("[5,3,1]"));
        assert_eq!(lam.below_first_row(), 4);
        assert_eq!(Partition::empty().extend_first_row(3), p("[3]"));
    }

    #[test]
    fn mirrored_order_six() {
        let parts = enumerate_partitions(6);
        let names: Vec<String> = mirrored_order(6).into_iter().map(|i| parts[i].to_string()).collect();
        assert_eq!(
            names,
            [
                "[6]", "[5,1]", "[4,2]", "[4,1,1]", "[3,3]", "[3,2,1]", "[2,2,2]", "[3,1,1,1]", "[2,2,1,1]",
                "[2,1,1,1,1]", "[1,1,1,1,1,1]"
            ]
        );
        for n in 0..=9 {
            let mut sorted = mirrored_order(n);
            sorted.sort_unstable();
            assert_eq!(sorted, (0..partition_count(n)).collect::<Vec<_>>());
        }
    }
}
