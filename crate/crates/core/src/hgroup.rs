//! Finite-group data for the base group H, and explicit computations in the
//! small wreath products H^k ⋊ S_k.
//!
//! Two independent character routes live here. [`sym_character`] evaluates
//! S_k characters through the determinantal (Jacobi–Trudi) expansion into
//! Young-subgroup permutation characters; [`wreath_char_table`] builds a whole
//! H^k ⋊ S_k table by enumerating group elements, computing conjugation
//! orbits, and inducing from Young-type subgroups with the naive
//! induced-character sum. Neither route touches border strips, so both can be
//! checked against the Murnaghan–Nakayama oracle in [`crate::verify`].

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::chain::{wreath_basis, WreathIrrepLabel};
use crate::error::{Error, Result};
use crate::partition::{class_size, cycle_types, enumerate_partitions, factorial, CycleType, Partition};

/// Default bound on |H|^k · k! for brute-force wreath tables.
pub const DEFAULT_MAX_ORDER: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub label: String,
    pub size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrepInfo {
    pub label: String,
    pub dim: u64,
    pub values: Vec<i64>,
}

/// Explicit multiplication data; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementData {
    pub multiplication: Vec<Vec<usize>>,
    #[serde(rename = "classOf")]
    pub class_of: Vec<usize>,
}

/// Conjugacy classes and integer character values of a finite group.
///
/// The first class is the identity; `irreps[i].values[c]` is the character
/// of irrep `i` on class `c`. The optional `elements` block is only needed
/// to brute-force wreath tables over this group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    pub name: String,
    pub order: u64,
    pub classes: Vec<ClassInfo>,
    pub irreps: Vec<IrrepInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<ElementData>,
}

impl GroupTable {
    pub fn trivial() -> Self {
        GroupTable {
            name: "trivial".into(),
            order: 1,
            classes: vec![ClassInfo { label: "1".into(), size: 1 }],
            irreps: vec![IrrepInfo { label: "1".into(), dim: 1, values: vec![1] }],
            elements: Some(ElementData { multiplication: vec![vec![0]], class_of: vec![0] }),
        }
    }

    pub fn z2() -> Self {
        GroupTable {
            name: "Z2".into(),
            order: 2,
            classes: vec![
                ClassInfo { label: "1".into(), size: 1 },
                ClassInfo { label: "-1".into(), size: 1 },
            ],
            irreps: vec![
                IrrepInfo { label: "1".into(), dim: 1, values: vec![1, 1] },
                IrrepInfo { label: "-1".into(), dim: 1, values: vec![1, -1] },
            ],
            elements: Some(ElementData {
                multiplication: vec![vec![0, 1], vec![1, 0]],
                class_of: vec![0, 1],
            }),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let table: GroupTable = serde_json::from_str(text)?;
        table.validate()?;
        Ok(table)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("group tables always serialize")
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn num_irreps(&self) -> usize {
        self.irreps.len()
    }

    pub fn dims(&self) -> Vec<u64> {
        self.irreps.iter().map(|i| i.dim).collect()
    }

    pub fn class_index(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.label == label)
    }

    pub fn irrep_index(&self, label: &str) -> Option<usize> {
        self.irreps.iter().position(|c| c.label == label)
    }

    /// Checks every structural invariant, naming the first violated relation.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidTable(format!("{}: {msg}", self.name)));
        let nc = self.classes.len();
        if nc == 0 {
            return bad("no classes".into());
        }
        if self.irreps.len() != nc {
            return bad(format!("{} irreps but {} classes", self.irreps.len(), nc));
        }
        let total: u64 = self.classes.iter().map(|c| c.size).sum();
        if total != self.order {
            return bad(format!("class sizes sum to {total}, order is {}", self.order));
        }
        if self.classes[0].size != 1 {
            return bad("first class is not the identity (size != 1)".into());
        }
        if self.classes.iter().any(|c| c.size == 0 || !self.order.is_multiple_of(c.size)) {
            return bad("a class size does not divide the group order".into());
        }
        for ir in &self.irreps {
            if ir.values.len() != nc {
                return bad(format!("irrep {} has {} values for {} classes", ir.label, ir.values.len(), nc));
            }
            if ir.values[0] != ir.dim as i64 {
                return bad(format!("irrep {}: value at identity {} != dim {}", ir.label, ir.values[0], ir.dim));
            }
        }
        let order = i128::from(self.order);
        for (a, u) in self.irreps.iter().enumerate() {
            for (b, w) in self.irreps.iter().enumerate().skip(a) {
                let s: i128 = (0..nc)
                    .map(|c| i128::from(self.classes[c].size) * i128::from(u.values[c]) * i128::from(w.values[c]))
                    .sum();
                let expected = if a == b { order } else { 0 };
                if s != expected {
                    return bad(format!(
                        "row orthogonality fails for ({}, {}): sum = {s}, expected {expected}",
                        u.label, w.label
                    ));
                }
            }
        }
        for c in 0..nc {
            for d in c..nc {
                let s: i128 = self.irreps.iter().map(|u| i128::from(u.values[c]) * i128::from(u.values[d])).sum();
                let expected = if c == d { order / i128::from(self.classes[c].size) } else { 0 };
                if s != expected {
                    return bad(format!(
                        "column orthogonality fails for ({}, {}): sum = {s}, expected {expected}",
                        self.classes[c].label, self.classes[d].label
                    ));
                }
            }
        }
        if let Some(el) = &self.elements {
            self.validate_elements(el)?;
        }
        Ok(())
    }

    fn validate_elements(&self, el: &ElementData) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidTable(format!("{}: {msg}", self.name)));
        let n = self.order as usize;
        if el.multiplication.len() != n || el.multiplication.iter().any(|r| r.len() != n) || el.class_of.len() != n {
            return bad("element data does not match the group order".into());
        }
        let mul = &el.multiplication;
        if mul.iter().flatten().any(|&x| x >= n) || el.class_of.iter().any(|&c| c >= self.classes.len()) {
            return bad("element index out of range".into());
        }
        if (0..n).any(|a| mul[0][a] != a || mul[a][0] != a) {
            return bad("element 0 is not the identity".into());
        }
        if el.class_of[0] != 0 {
            return bad("identity element is not in the first class".into());
        }
        for a in 0..n {
            if !(0..n).any(|b| mul[a][b] == 0) {
                return bad(format!("element {a} has no inverse"));
            }
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return bad("multiplication is not associative".into());
                    }
                }
            }
        }
        let inv: Vec<usize> = (0..n).map(|a| (0..n).find(|&b| mul[a][b] == 0).unwrap()).collect();
        let mut sizes = vec![0u64; self.classes.len()];
        for g in 0..n {
            sizes[el.class_of[g]] += 1;
            for x in 0..n {
                if el.class_of[mul[mul[x][g]][inv[x]]] != el.class_of[g] {
                    return bad(format!("classOf is not conjugation invariant at element {g}"));
                }
            }
        }
        for (c, class) in self.classes.iter().enumerate() {
            if sizes[c] != class.size {
                return bad(format!("class {} has {} elements in classOf, size says {}", class.label, sizes[c], class.size));
            }
        }
        // a class that is a union of several conjugacy classes would pass the
        // checks above; orbit sizes pin it down
        for g in 0..n {
            let orbit: std::collections::BTreeSet<usize> = (0..n).map(|x| mul[mul[x][g]][inv[x]]).collect();
            if orbit.len() as u64 != self.classes[el.class_of[g]].size {
                return bad(format!("class of element {g} is not a single conjugacy class"));
            }
        }
        Ok(())
    }
}

/// Built-in H by name, or a GroupTable JSON file.
pub fn builtin_table(name: &str) -> Result<GroupTable> {
    match name {
        "trivial" => Ok(GroupTable::trivial()),
        "Z2" => Ok(GroupTable::z2()),
        other => {
            let path = Path::new(other);
            if path.is_file() {
                GroupTable::from_json(&std::fs::read_to_string(path)?)
            } else {
                Err(Error::UnknownName(other.to_string()))
            }
        }
    }
}

/// A conjugacy class of H^k ⋊ S_k: one partition per H-class, giving the
/// lengths of the cycles whose cycle product lies in that H-class.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ColoredCycleType {
    parts: Vec<Partition>,
}

impl ColoredCycleType {
    pub fn new(parts: Vec<Partition>) -> Self {
        ColoredCycleType { parts }
    }

    /// A plain S_k cycle type viewed over the trivial group.
    pub fn from_cycle_type(mu: &CycleType) -> Self {
        ColoredCycleType { parts: vec![mu.partition().clone()] }
    }

    pub fn identity(num_h_classes: usize, k: usize) -> Self {
        let mut parts = vec![Partition::empty(); num_h_classes];
        parts[0] = Partition::column(k);
        ColoredCycleType { parts }
    }

    pub fn parts(&self) -> &[Partition] {
        &self.parts
    }

    /// Number of points k moved or fixed.
    pub fn size(&self) -> usize {
        self.parts.iter().map(Partition::size).sum()
    }

    /// All cycle lengths, regardless of color.
    pub fn total_cycle_type(&self) -> CycleType {
        CycleType::new(Partition::from_unsorted(
            self.parts.iter().flat_map(|p| p.parts().iter().copied()).collect(),
        ))
    }

    /// The S_k cycle type, for the one-class (trivial H) case.
    pub fn as_cycle_type(&self) -> Option<CycleType> {
        (self.parts.len() == 1).then(|| CycleType::new(self.parts[0].clone()))
    }

    /// 1-cycles carrying the identity of H; these are the fixed points of the
    /// permutation action on {1..k} × H divided by |H|.
    pub fn identity_fixed_points(&self) -> usize {
        self.parts[0].parts().iter().filter(|&&p| p == 1).count()
    }

    pub fn is_identity(&self) -> bool {
        self.size() == self.identity_fixed_points()
    }

    pub fn padded_to(&self, n: usize) -> ColoredCycleType {
        assert!(n >= self.size());
        let mut parts = self.parts.clone();
        let extra = n - self.size();
        let mut first: Vec<usize> = parts[0].parts().to_vec();
        first.extend(std::iter::repeat_n(1, extra));
        parts[0] = Partition::from_unsorted(first);
        ColoredCycleType { parts }
    }

    pub fn without_fixed_points(&self) -> ColoredCycleType {
        let mut parts = self.parts.clone();
        parts[0] = Partition::from_unsorted(parts[0].parts().iter().copied().filter(|&p| p > 1).collect());
        ColoredCycleType { parts }
    }

    /// Column order: identity first, ascending on the uncolored cycle type,
    /// then more boxes in earlier H-classes, then ascending parts per class.
    pub fn column_cmp(&self, other: &Self) -> Ordering {
        let a = self.total_cycle_type();
        let b = other.total_cycle_type();
        a.column_cmp(&b).then_with(|| {
            for (p, q) in self.parts.iter().zip(&other.parts) {
                let o = q.size().cmp(&p.size()).then_with(|| p.parts().cmp(q.parts()));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }

    /// Text form: `[3,1]` over a one-class group, otherwise
    /// `hclass:partition;...` listing the non-empty colors, and `e` for the
    /// identity at level 0.
    pub fn format(&self, h: &GroupTable) -> String {
        if h.num_classes() == 1 {
            return self.parts[0].to_string();
        }
        let segs: Vec<String> = self
            .parts
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_empty())
            .map(|(c, p)| format!("{}:{}", h.classes[c].label, p))
            .collect();
        if segs.is_empty() {
            "e".into()
        } else {
            segs.join(";")
        }
    }

    pub fn parse(h: &GroupTable, s: &str) -> Result<Self> {
        let t = s.trim();
        let nc = h.num_classes();
        if t == "e" {
            return Ok(ColoredCycleType { parts: vec![Partition::empty(); nc] });
        }
        if !t.contains(':') {
            if nc == 1 {
                return Ok(ColoredCycleType { parts: vec![t.parse()?] });
            }
            return Err(Error::Parse(format!("class `{s}` needs the form hclass:partition;...")));
        }
        let mut parts = vec![Partition::empty(); nc];
        let mut seen = vec![false; nc];
        for seg in t.split(';').filter(|x| !x.trim().is_empty()) {
            let (label, part) = seg
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("bad class segment `{seg}`")))?;
            let c = h
                .class_index(label.trim())
                .ok_or_else(|| Error::Parse(format!("unknown H-class `{}` in `{s}`", label.trim())))?;
            if seen[c] {
                return Err(Error::Parse(format!("H-class `{}` repeated in `{s}`", label.trim())));
            }
            seen[c] = true;
            parts[c] = part.parse()?;
        }
        Ok(ColoredCycleType { parts })
    }
}

/// Every colored cycle type of size `k` over `num_classes` colors, in column
/// order.
pub fn colored_cycle_types(num_classes: usize, k: usize) -> Vec<ColoredCycleType> {
    fn rec(c: usize, remaining: usize, nc: usize, cur: &mut Vec<Partition>, out: &mut Vec<ColoredCycleType>) {
        if c == nc - 1 {
            for p in enumerate_partitions(remaining) {
                cur.push(p);
                out.push(ColoredCycleType { parts: cur.clone() });
                cur.pop();
            }
            return;
        }
        for m in 0..=remaining {
            for p in enumerate_partitions(m) {
                cur.push(p);
                rec(c + 1, remaining - m, nc, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(0, k, num_classes, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.column_cmp(b));
    out
}

/// |[c]| in H^k ⋊ S_k from the centralizer formula
/// ∏_{H-classes, i} (i·|C_H|)^{m} · m!.
pub fn colored_class_size(h: &GroupTable, c: &ColoredCycleType) -> BigUint {
    let k = c.size();
    let group_order = BigUint::from(h.order).pow(k as u32) * factorial(k);
    let mut centralizer = BigUint::one();
    for (ci, p) in c.parts().iter().enumerate() {
        let cent_h = h.order / h.classes[ci].size;
        let mu = CycleType::new(p.clone());
        for (i, &m) in mu.multiplicities().iter().enumerate().skip(1) {
            centralizer *= BigUint::from(i as u64 * cent_h).pow(m as u32) * factorial(m);
        }
    }
    group_order / centralizer
}

/// An element (h_1..h_k; σ) of H^k ⋊ S_k. `perm[i]` is σ(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WreathElement {
    pub base: Vec<usize>,
    pub perm: Vec<usize>,
}

impl WreathElement {
    pub fn identity(k: usize) -> Self {
        WreathElement { base: vec![0; k], perm: (0..k).collect() }
    }

    fn inverse_perm(&self) -> Vec<usize> {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        inv
    }

    /// (a, σ)·(b, ρ) = (a · σ(b), σρ) where σ(b)_i = b_{σ⁻¹(i)}.
    pub fn mul(&self, other: &Self, mul: &[Vec<usize>]) -> Self {
        let inv = self.inverse_perm();
        let base = (0..self.base.len()).map(|i| mul[self.base[i]][other.base[inv[i]]]).collect();
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        WreathElement { base, perm }
    }

    pub fn inverse(&self, mul: &[Vec<usize>], h_inv: &[usize]) -> Self {
        // (a,σ)^{-1} = (σ^{-1}(a^{-1}), σ^{-1}), σ^{-1}(c)_i = c_{σ(i)}
        let base = (0..self.base.len()).map(|i| h_inv[self.base[self.perm[i]]]).collect();
        let _ = mul;
        WreathElement { base, perm: self.inverse_perm() }
    }

    /// Cycles of σ as `(points, cycle product)`; the product for the cycle
    /// through `i` is h_i · h_{σ⁻¹(i)} ··· h_{σ^{-(m-1)}(i)}, the i-th
    /// component of g^m.
    pub fn cycles(&self, mul: &[Vec<usize>]) -> Vec<(Vec<usize>, usize)> {
        let k = self.perm.len();
        let inv = self.inverse_perm();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut pts = Vec::new();
            let mut prod = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                pts.push(i);
                prod = mul[prod][self.base[i]];
                i = inv[i];
            }
            out.push((pts, prod));
        }
        out
    }

    pub fn colored_cycle_type(&self, mul: &[Vec<usize>], class_of: &[usize], num_classes: usize) -> ColoredCycleType {
        let mut lens: Vec<Vec<usize>> = vec![Vec::new(); num_classes];
        for (pts, prod) in self.cycles(mul) {
            lens[class_of[prod]].push(pts.len());
        }
        ColoredCycleType { parts: lens.into_iter().map(Partition::from_unsorted).collect() }
    }
}

/// A character table of one chain level with typed labels and
/// arbitrary-precision entries. Rows follow the chain basis order, columns
/// follow [`ColoredCycleType::column_cmp`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelTable {
    pub level: usize,
    pub order: BigUint,
    pub irreps: Vec<WreathIrrepLabel>,
    pub classes: Vec<ColoredCycleType>,
    pub class_sizes: Vec<BigUint>,
    /// `values[irrep][class]`
    pub values: Vec<Vec<BigInt>>,
}

impl LevelTable {
    pub fn class_index(&self, c: &ColoredCycleType) -> Option<usize> {
        self.classes.iter().position(|x| x == c)
    }

    pub fn column(&self, class: usize) -> Vec<BigInt> {
        self.values.iter().map(|row| row[class].clone()).collect()
    }

    /// Exact row and column orthogonality.
    pub fn check_orthogonality(&self) -> Result<()> {
        let order = BigInt::from(self.order.clone());
        let n = self.classes.len();
        if self.irreps.len() != n {
            return Err(Error::InvalidTable(format!("{} irreps, {} classes", self.irreps.len(), n)));
        }
        for a in 0..n {
            for b in a..n {
                let s: BigInt = (0..n)
                    .map(|c| BigInt::from(self.class_sizes[c].clone()) * &self.values[a][c] * &self.values[b][c])
                    .sum();
                let expected = if a == b { order.clone() } else { BigInt::zero() };
                if s != expected {
                    return Err(Error::InvalidTable(format!("row orthogonality fails at rows {a},{b}")));
                }
                let s: BigInt = (0..n).map(|u| &self.values[u][a] * &self.values[u][b]).sum();
                let expected = if a == b {
                    BigInt::from(&self.order / &self.class_sizes[a])
                } else {
                    BigInt::zero()
                };
                if s != expected {
                    return Err(Error::InvalidTable(format!("column orthogonality fails at columns {a},{b}")));
                }
            }
        }
        Ok(())
    }

    /// String-labelled form for JSON output.
    pub fn to_group_table(&self, name: &str, irrep_label: impl Fn(&WreathIrrepLabel) -> String, h: &GroupTable) -> Result<GroupTable> {
        let small = |v: &BigInt| {
            v.to_i64()
                .ok_or_else(|| Error::InvalidTable(format!("character value {v} does not fit the JSON integer range")))
        };
        let order = self
            .order
            .to_u64()
            .ok_or_else(|| Error::InvalidTable("group order too large for a GroupTable".into()))?;
        let classes = self
            .classes
            .iter()
            .zip(&self.class_sizes)
            .map(|(c, s)| ClassInfo { label: c.format(h), size: s.to_u64().unwrap_or(u64::MAX) })
            .collect();
        let irreps = self
            .irreps
            .iter()
            .zip(&self.values)
            .map(|(l, row)| {
                let values = row.iter().map(small).collect::<Result<Vec<_>>>()?;
                Ok(IrrepInfo { label: irrep_label(l), dim: values[0] as u64, values })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupTable { name: name.to_string(), order, classes, irreps, elements: None })
    }
}

/// Permutation character of the Young subgroup S_μ (μ a composition, zeros
/// allowed) at a permutation of cycle type `cycles`: the number of ways to
/// send each cycle to a row so that row `i` receives exactly μ_i points.
fn young_permutation_character(mu: &[usize], cycles: &[usize]) -> BigInt {
    fn rec(idx: usize, cycles: &[usize], rem: &mut Vec<usize>, memo: &mut HashMap<(usize, Vec<usize>), BigInt>) -> BigInt {
        if idx == cycles.len() {
            return if rem.iter().all(|&r| r == 0) { BigInt::one() } else { BigInt::zero() };
        }
        let key = (idx, rem.clone());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let len = cycles[idx];
        let mut total = BigInt::zero();
        for row in 0..rem.len() {
            if rem[row] >= len {
                rem[row] -= len;
                total += rec(idx + 1, cycles, rem, memo);
                rem[row] += len;
            }
        }
        memo.insert(key, total.clone());
        total
    }
    if mu.iter().sum::<usize>() != cycles.iter().sum::<usize>() {
        return BigInt::zero();
    }
    let mut sorted = cycles.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    rec(0, &sorted, &mut mu.to_vec(), &mut HashMap::new())
}

/// χ_λ(ρ) for S_k by the determinantal formula
/// χ_λ = Σ_w sign(w) · 1↑_{S_{λ+δ-w(δ)}}.
pub fn sym_character(lambda: &Partition, rho: &CycleType) -> Result<BigInt> {
    if lambda.size() != rho.n() {
        return Err(Error::Precondition(format!(
            "partition {lambda} and cycle type {rho} have different sizes"
        )));
    }
    let l = lambda.len();
    let cycles = rho.partition().parts();
    let mut total = BigInt::zero();
    // enumerate permutations w of 0..l with λ_i - i + w(i) >= 0
    fn rec(
        i: usize,
        lambda: &Partition,
        used: &mut Vec<bool>,
        comp: &mut Vec<usize>,
        inversions: usize,
        cycles: &[usize],
        total: &mut BigInt,
    ) {
        let l = lambda.len();
        if i == l {
            let v = young_permutation_character(comp, cycles);
            if inversions.is_multiple_of(2) {
                *total += v;
            } else {
                *total -= v;
            }
            return;
        }
        for j in 0..l {
            if used[j] || lambda.part(i) + j < i {
                continue;
            }
            let inv_added = used[j + 1..].iter().filter(|&&u| u).count();
            used[j] = true;
            comp.push(lambda.part(i) + j - i);
            rec(i + 1, lambda, used, comp, inversions + inv_added, cycles, total);
            comp.pop();
            used[j] = false;
        }
    }
    rec(0, lambda, &mut vec![false; l], &mut Vec::with_capacity(l), 0, cycles, &mut total);
    Ok(total)
}

/// The S_k character table from the determinantal formula, in chain basis
/// order, with class sizes from the cycle-type formula.
pub fn sym_level_table(k: usize) -> LevelTable {
    let irreps: Vec<Partition> = enumerate_partitions(k);
    let classes = cycle_types(k);
    let values = irreps
        .iter()
        .map(|lam| classes.iter().map(|mu| sym_character(lam, mu).expect("sizes agree")).collect())
        .collect();
    LevelTable {
        level: k,
        order: factorial(k),
        irreps: irreps.into_iter().map(WreathIrrepLabel::from_partition).collect(),
        class_sizes: classes.iter().map(class_size).collect(),
        classes: classes.iter().map(ColoredCycleType::from_cycle_type).collect(),
        values,
    }
}

/// Size of H^k ⋊ S_k as an exact integer.
pub fn wreath_order(h: &GroupTable, k: usize) -> BigUint {
    BigUint::from(h.order).pow(k as u32) * factorial(k)
}

fn check_bound(h: &GroupTable, k: usize, bound: u64) -> Result<u64> {
    let size = wreath_order(h, k);
    match size.to_u64() {
        Some(s) if s <= bound => Ok(s),
        _ => Err(Error::SizeBound {
            what: format!("{}^{k} ⋊ S_{k}", h.name),
            size: size.to_u128().unwrap_or(u128::MAX),
            bound,
        }),
    }
}

fn element_data(h: &GroupTable) -> Result<&ElementData> {
    h.elements.as_ref().ok_or_else(|| {
        Error::UnsupportedChain(format!(
            "group {} has no multiplication table; brute-force wreath tables need one",
            h.name
        ))
    })
}

fn all_permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        out.push(perm.clone());
        let Some(i) = (1..k).rev().find(|&i| perm[i - 1] < perm[i]) else { break };
        let j = (i..k).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    out
}

/// All elements of H^k ⋊ S_k.
pub fn wreath_elements(h: &GroupTable, k: usize, bound: u64) -> Result<Vec<WreathElement>> {
    check_bound(h, k, bound)?;
    let order = h.order as usize;
    let perms = all_permutations(k);
    let mut out = Vec::new();
    let mut base = vec![0usize; k];
    loop {
        for p in &perms {
            out.push(WreathElement { base: base.clone(), perm: p.clone() });
        }
        // odometer over H^k
        let mut i = 0;
        loop {
            if i == k {
                return Ok(out);
            }
            base[i] += 1;
            if base[i] < order {
                break;
            }
            base[i] = 0;
            i += 1;
        }
    }
}

/// One conjugacy class found by brute force.
#[derive(Clone, Debug)]
pub struct WreathClass {
    pub label: ColoredCycleType,
    pub members: Vec<WreathElement>,
}

/// Conjugacy classes of H^k ⋊ S_k by explicit conjugation orbits, in column
/// order. Each orbit is labelled by its colored cycle type; the labels are
/// checked to be constant on orbits and distinct across them.
pub fn wreath_classes(h: &GroupTable, k: usize, bound: u64) -> Result<Vec<WreathClass>> {
    let el = element_data(h)?;
    let mul = &el.multiplication;
    let n = h.order as usize;
    let h_inv: Vec<usize> = (0..n).map(|a| (0..n).find(|&b| mul[a][b] == 0).unwrap()).collect();
    let elements = wreath_elements(h, k, bound)?;
    let index: HashMap<&WreathElement, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let inverses: Vec<WreathElement> = elements.iter().map(|x| x.inverse(mul, &h_inv)).collect();
    let mut seen = vec![false; elements.len()];
    let mut classes: Vec<WreathClass> = Vec::new();
    for (gi, g) in elements.iter().enumerate() {
        if seen[gi] {
            continue;
        }
        let label = g.colored_cycle_type(mul, &el.class_of, h.num_classes());
        let mut members = Vec::new();
        for (x, xinv) in elements.iter().zip(&inverses) {
            let y = x.mul(g, mul).mul(xinv, mul);
            let yi = index[&y];
            if !seen[yi] {
                seen[yi] = true;
                if y.colored_cycle_type(mul, &el.class_of, h.num_classes()) != label {
                    return Err(Error::InvalidTable(format!(
                        "colored cycle type is not a class invariant in {}^{k} ⋊ S_{k}",
                        h.name
                    )));
                }
                members.push(y);
            }
        }
        if classes.iter().any(|c| c.label == label) {
            return Err(Error::InvalidTable(format!(
                "two conjugacy classes share the colored cycle type {}",
                label.format(h)
            )));
        }
        classes.push(WreathClass { label, members });
    }
    classes.sort_by(|a, b| a.label.column_cmp(&b.label));
    Ok(classes)
}

/// |[c]| in H^k ⋊ S_k by brute-force conjugation orbit.
pub fn wreath_class_size(h: &GroupTable, c: &ColoredCycleType, bound: u64) -> Result<u64> {
    let k = c.size();
    let classes = wreath_classes(h, k, bound)?;
    classes
        .iter()
        .find(|cl| &cl.label == c)
        .map(|cl| cl.members.len() as u64)
        .ok_or_else(|| Error::MissingLabel(c.format(h)))
}

/// Character table of H^k ⋊ S_k by explicit induction from the Young-type
/// subgroups H^k ⋊ (S_{k_1} × … × S_{k_d}).
pub fn wreath_level_table(h: &GroupTable, k: usize, bound: u64) -> Result<LevelTable> {
    let el = element_data(h)?;
    let mul = &el.multiplication;
    let classes = wreath_classes(h, k, bound)?;
    let group_order = wreath_order(h, k);
    let labels = wreath_basis(h.num_irreps(), k);
    let mut sym_cache: HashMap<(Partition, CycleType), BigInt> = HashMap::new();
    let mut values = Vec::with_capacity(labels.len());
    for label in &labels {
        // block of positions owned by each entry
        let mut block_of = vec![0usize; k];
        let mut start = 0;
        for (b, (_, lam)) in label.entries().iter().enumerate() {
            for p in start..start + lam.size() {
                block_of[p] = b;
            }
            start += lam.size();
        }
        let subgroup_order: BigUint = label
            .entries()
            .iter()
            .fold(BigUint::from(h.order).pow(k as u32), |acc, (_, lam)| acc * factorial(lam.size()));
        let mut row = Vec::with_capacity(classes.len());
        for class in &classes {
            let mut sum = BigInt::zero();
            'members: for y in &class.members {
                if (0..k).any(|i| block_of[y.perm[i]] != block_of[i]) {
                    continue;
                }
                let cycles = y.cycles(mul);
                let mut block_lens: Vec<Vec<usize>> = vec![Vec::new(); label.entries().len()];
                let mut value = BigInt::one();
                for (pts, prod) in &cycles {
                    let b = block_of[pts[0]];
                    block_lens[b].push(pts.len());
                    let u = label.entries()[b].0;
                    let chi_u = h.irreps[u].values[el.class_of[*prod]];
                    if chi_u == 0 {
                        continue 'members;
                    }
                    value *= chi_u;
                }
                for (b, (_, lam)) in label.entries().iter().enumerate() {
                    let rho = CycleType::new(Partition::from_unsorted(std::mem::take(&mut block_lens[b])));
                    let key = (lam.clone(), rho);
                    let chi = match sym_cache.get(&key) {
                        Some(v) => v.clone(),
                        None => {
                            let v = sym_character(&key.0, &key.1)?;
                            sym_cache.insert(key, v.clone());
                            v
                        }
                    };
                    value *= chi;
                }
                sum += value;
            }
            // Ind χ(g) = |C_G(g)| / |K| · Σ_{y ∈ [g] ∩ K} χ(y)
            let numerator = sum * BigInt::from(group_order.clone());
            let denominator = BigInt::from(subgroup_order.clone()) * BigInt::from(class.members.len());
            let (q, r) = numerator.div_rem(&denominator);
            if !r.is_zero() {
                return Err(Error::InvalidTable(format!(
                    "induced character is not an integer for {}",
                    label.format(h)
                )));
            }
            row.push(q);
        }
        values.push(row);
    }
    let table = LevelTable {
        level: k,
        order: group_order,
        irreps: labels,
        class_sizes: classes.iter().map(|c| BigUint::from(c.members.len())).collect(),
        classes: classes.into_iter().map(|c| c.label).collect(),
        values,
    };
    table.check_orthogonality()?;
    Ok(table)
}

/// The brute-force wreath table as a string-labelled [`GroupTable`].
pub fn wreath_char_table(h: &GroupTable, k: usize, bound: u64) -> Result<GroupTable> {
    let table = wreath_level_table(h, k, bound)?;
    let gt = table.to_group_table(&format!("{}^{k} x S_{k}", h.name), |l| l.format(h), h)?;
    gt.validate()?;
    Ok(gt)
}

impl fmt::Display for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .irreps
            .iter()
            .map(|i| i.label.len())
            .chain(self.classes.iter().map(|c| c.label.len()))
            .max()
            .unwrap_or(1)
            .max(4);
        write!(f, "{:width$}", "")?;
        for c in &self.classes {
            write!(f, " {:>width$}", c.label)?;
        }
        writeln!(f)?;
        for ir in &self.irreps {
            write!(f, "{:width$}", ir.label)?;
            for v in &ir.values {
                write!(f, " {v:>width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(s: &str) -> CycleType {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn builtin_tables_validate() {
        let t = builtin_table("trivial").unwrap();
        assert_eq!((t.num_classes(), t.num_irreps(), t.irreps[0].dim), (1, 1, 1));
        let z = builtin_table("Z2").unwrap();
        z.validate().unwrap();
        assert_eq!(z.classes.iter().map(|c| c.size).collect::<Vec<_>>(), vec![1, 1]);
        assert_eq!(z.irreps[1].values, vec![1, -1]);
        assert!(matches!(builtin_table("Z3"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn duplicate_irrep_rows_fail_orthogonality() {
        let mut z = GroupTable::z2();
        z.irreps[1] = z.irreps[0].clone();
        z.elements = None;
        let err = GroupTable::from_json(&z.to_json()).unwrap_err();
        assert!(err.to_string().contains("orthogonality"), "{err}");
    }

    #[test]
    fn json_round_trip_keeps_field_order() {
        let z = GroupTable::z2();
        let text = z.to_json();
        let name_pos = text.find("\"name\"").unwrap();
        let order_pos = text.find("\"order\"").unwrap();
        let classes_pos = text.find("\"classes\"").unwrap();
        let irreps_pos = text.find("\"irreps\"").unwrap();
        assert!(name_pos < order_pos && order_pos < classes_pos && classes_pos < irreps_pos);
        assert_eq!(GroupTable::from_json(&text).unwrap(), z);
    }

    #[test]
    fn wreath_product_is_associative() {
        let z = GroupTable::z2();
        let mul = &z.elements.as_ref().unwrap().multiplication;
        let els = wreath_elements(&z, 3, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(els.len(), 48);
        let id = WreathElement::identity(3);
        for a in els.iter().step_by(5) {
            assert_eq!(a.mul(&id, mul), *a);
            assert_eq!(id.mul(a, mul), *a);
            assert_eq!(a.mul(&a.inverse(mul, &[0, 1]), mul), id);
            for b in els.iter().step_by(7) {
                for c in els.iter().step_by(11) {
                    assert_eq!(a.mul(b, mul).mul(c, mul), a.mul(&b.mul(c, mul), mul));
                }
            }
        }
    }

    #[test]
    fn determinantal_characters_small() {
        // S_3: χ_v = (2, 0, -1) on identity, transposition, 3-cycle
        let v = p("[2,1]");
        assert_eq!(sym_character(&v, &ct("[1,1,1]")).unwrap(), BigInt::from(2));
        assert_eq!(sym_character(&v, &ct("[2,1]")).unwrap(), BigInt::from(0));
        assert_eq!(sym_character(&v, &ct("[3]")).unwrap(), BigInt::from(-1));
        assert_eq!(sym_character(&p("[3,2,1]"), &ct("[3,1,1,1]")).unwrap(), BigInt::from(-2));
        assert_eq!(sym_character(&p("[1,1,1,1]"), &ct("[2,2]")).unwrap(), BigInt::from(1));
        assert_eq!(sym_character(&Partition::empty(), &CycleType::identity(0)).unwrap(), BigInt::from(1));
        assert!(sym_character(&p("[2]"), &ct("[1]")).is_err());
    }

    #[test]
    fn sym_tables_are_orthogonal() {
        for k in 0..=8 {
            sym_level_table(k).check_orthogonality().unwrap();
        }
    }

    #[test]
    fn z2_wreath_two_matches_known_table() {
        let z = GroupTable::z2();
        let t = wreath_char_table(&z, 2, DEFAULT_MAX_ORDER).unwrap();
        let classes: Vec<&str> = t.classes.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(classes, ["1:[1,1]", "1:[1];-1:[1]", "-1:[1,1]", "1:[2]", "-1:[2]"]);
        let rows: Vec<(&str, Vec<i64>)> = t.irreps.iter().map(|i| (i.label.as_str(), i.values.clone())).collect();
        assert_eq!(
            rows,
            vec![
                ("1:[2]", vec![1, 1, 1, 1, 1]),
                ("1:[1,1]", vec![1, 1, 1, -1, -1]),
                ("1:[1];-1:[1]", vec![2, 0, -2, 0, 0]),
                ("-1:[2]", vec![1, -1, 1, 1, -1]),
                ("-1:[1,1]", vec![1, -1, 1, -1, 1]),
            ]
        );
    }

    #[test]
    fn trivial_wreath_is_symmetric_group() {
        let t = GroupTable::trivial();
        let s2 = wreath_char_table(&t, 2, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(s2.irreps[0].values, vec![1, 1]);
        assert_eq!(s2.irreps[1].values, vec![1, -1]);
        for k in 0..=5 {
            assert_eq!(wreath_level_table(&t, k, DEFAULT_MAX_ORDER).unwrap(), sym_level_table(k));
        }
    }

    #[test]
    fn wreath_class_sizes_by_orbit() {
        let z = GroupTable::z2();
        assert_eq!(wreath_class_size(&z, &ColoredCycleType::identity(2, 2), DEFAULT_MAX_ORDER).unwrap(), 1);
        let c = ColoredCycleType::parse(&z, "1:[1];-1:[1]").unwrap();
        assert_eq!(wreath_class_size(&z, &c, DEFAULT_MAX_ORDER).unwrap(), 2);
        let c = ColoredCycleType::parse(&z, "1:[2]").unwrap();
        assert_eq!(wreath_class_size(&z, &c, DEFAULT_MAX_ORDER).unwrap(), 2);
        for k in 0..=3 {
            let classes = wreath_classes(&z, k, DEFAULT_MAX_ORDER).unwrap();
            let total: usize = classes.iter().map(|c| c.members.len()).sum();
            assert_eq!(BigUint::from(total), wreath_order(&z, k));
            for cl in &classes {
                assert_eq!(BigUint::from(cl.members.len()), colored_class_size(&z, &cl.label));
            }
            assert_eq!(
                classes.iter().map(|c| c.label.clone()).collect::<Vec<_>>(),
                colored_cycle_types(2, k)
            );
        }
    }

    #[test]
    fn z2_wreath_dimension_squares() {
        let z = GroupTable::z2();
        for k in 1..=3 {
            let t = wreath_level_table(&z, k, DEFAULT_MAX_ORDER).unwrap();
            let total: BigInt = t.values.iter().map(|r| &r[0] * &r[0]).sum();
            assert_eq!(total, BigInt::from(wreath_order(&z, k)));
        }
    }

    #[test]
    fn bound_is_enforced() {
        let z = GroupTable::z2();
        let err = wreath_level_table(&z, 6, DEFAULT_MAX_ORDER).unwrap_err();
        assert!(matches!(err, Error::SizeBound { size: 46080, .. }));
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn class_text_forms() {
        let z = GroupTable::z2();
        let c = ColoredCycleType::parse(&z, "1:[1];-1:[1]").unwrap();
        assert_eq!(c.format(&z), "1:[1];-1:[1]");
        assert_eq!(ColoredCycleType::parse(&z, "e").unwrap().size(), 0);
        assert_eq!(ColoredCycleType::parse(&z, "e").unwrap().format(&z), "e");
        assert!(ColoredCycleType::parse(&z, "[2]").is_err());
        assert!(ColoredCycleType::parse(&z, "7:[2]").is_err());
        let t = GroupTable::trivial();
        assert_eq!(ColoredCycleType::parse(&t, "[3,1]").unwrap().format(&t), "[3,1]");
        assert_eq!(c.padded_to(4).format(&z), "1:[1,1,1];-1:[1]");
        assert_eq!(c.padded_to(4).without_fixed_points().format(&z), "-1:[1]");
    }
}
