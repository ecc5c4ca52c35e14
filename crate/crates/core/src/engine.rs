//! Falling-factorial polynomials of X and the character columns they produce.
//!
//! Ind^l Res^l = f_l(X) with f_l(X) = X(X−M)…(X−(l−1)M), M = |H|, and the
//! column of a class α ∈ G_k at level n is f_{n−k}(X) applied to
//! Σ_w χ_w(α)·w̃. For odd permutations the reduced operator
//! Y(x,y) = X(x,y) − X(x, conj y) does the same job on half the basis.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::chain::{Chain, ReprVector};
use crate::error::{Error, Result};
use crate::hgroup::{sym_level_table, ColoredCycleType, LevelTable};
use crate::lifting::Lifter;
use crate::partition::{CycleType, Partition};
use crate::sparse::SparseMatrix;
use crate::verify::mn::MnOracle;

/// f_l(X) = X(X−M)(X−2M)…(X−(l−1)M).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FallingFactorialPoly {
    pub l: usize,
    pub m: BigInt,
}

impl FallingFactorialPoly {
    pub fn new(l: usize, m: impl Into<BigInt>) -> Self {
        FallingFactorialPoly { l, m: m.into() }
    }

    /// 0, M, …, (l−1)M
    pub fn roots(&self) -> Vec<BigInt> {
        (0..self.l).map(|j| &self.m * BigInt::from(j)).collect()
    }

    /// Coefficients in ascending powers of X.
    pub fn coefficients(&self) -> Vec<BigInt> {
        let mut c = vec![BigInt::one()];
        for root in self.roots() {
            let mut next = vec![BigInt::zero(); c.len() + 1];
            for (i, a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * &root;
            }
            c = next;
        }
        c
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.roots()
            .iter()
            .fold(BigRational::one(), |acc, r| acc * (x - BigRational::from_integer(r.clone())))
    }

    /// f_l(X)·v as l matvec-and-subtract passes, the root-0 factor first.
    pub fn apply(&self, x: &SparseMatrix, v: &ReprVector) -> Result<ReprVector> {
        if !x.is_square() || x.cols() != v.len() {
            return Err(Error::LevelMismatch { expected: x.cols(), got: v.len() });
        }
        let mut cur = v.coeffs().to_vec();
        for root in self.roots() {
            let r = BigRational::from_integer(root);
            let mut next = x.apply(&cur);
            if !r.is_zero() {
                for (a, b) in next.iter_mut().zip(&cur) {
                    *a -= b * &r;
                }
            }
            cur = next;
        }
        Ok(ReprVector::from_coeffs(v.level(), cur))
    }

    /// f_l(X) as a matrix.
    pub fn to_matrix(&self, x: &SparseMatrix) -> SparseMatrix {
        let mut acc = SparseMatrix::identity(x.rows());
        for root in self.roots() {
            let shifted = x - &SparseMatrix::scalar(x.rows(), root);
            acc = &shifted * &acc;
        }
        acc
    }
}

pub fn apply_falling_factorial(x: &SparseMatrix, l: usize, m: impl Into<BigInt>, v: &ReprVector) -> Result<ReprVector> {
    FallingFactorialPoly::new(l, m).apply(x, v)
}

/// δ_h over the level-n basis, in basis order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterColumn {
    pub level: usize,
    pub class: ColoredCycleType,
    pub values: Vec<BigInt>,
}

impl CharacterColumn {
    pub fn norm_sq(&self) -> BigInt {
        self.values.iter().map(|v| v * v).sum()
    }

    pub fn dot(&self, other: &CharacterColumn) -> BigInt {
        self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum()
    }
}

/// Y on the half basis of R(S_n) picked out by the character at (12).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedOperator {
    pub n: usize,
    /// λ with χ_λ((12)) > 0, canonical order.
    pub plus_basis: Vec<Partition>,
    /// One representative of each conjugate pair λ ≠ λ' with χ_λ((12)) = 0
    /// (the earlier of the two in canonical order). Empty below n = 15.
    pub paired_zero: Vec<Partition>,
    /// Matrix of Y on [`ReducedOperator::basis`].
    pub matrix: SparseMatrix,
}

impl ReducedOperator {
    /// `plus_basis ∪ paired_zero` in canonical order: the rows and columns
    /// of `matrix`.
    pub fn basis(&self) -> Vec<Partition> {
        let mut b: Vec<Partition> = self.plus_basis.iter().chain(&self.paired_zero).cloned().collect();
        b.sort();
        b
    }
}

/// An odd-class column computed through Y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddColumn {
    /// Rows of the reduced computation.
    pub basis: Vec<Partition>,
    /// pr₊δ on `basis`.
    pub projection: Vec<BigInt>,
    pub column: CharacterColumn,
}

impl OddColumn {
    /// pr₊δ restricted to the strict plus basis.
    pub fn plus_projection(&self, reduced: &ReducedOperator) -> Vec<BigInt> {
        self.basis
            .iter()
            .zip(&self.projection)
            .filter(|(p, _)| reduced.plus_basis.contains(p))
            .map(|(_, v)| v.clone())
            .collect()
    }
}

/// χ_{Ind(t)} at a class: |H| times the number of 1-cycles colored by the
/// identity of H (plain fixed points for S_n).
pub fn ind_t_character(chain: &Chain, class: &ColoredCycleType) -> BigInt {
    BigInt::from(chain.m()) * BigInt::from(class.identity_fixed_points())
}

/// Column computations on one chain, sharing lifts between calls.
pub struct Engine<'a> {
    chain: &'a Chain,
    lifter: Lifter<'a>,
    bound: u64,
}

impl<'a> Engine<'a> {
    pub fn new(chain: &'a Chain, bound: u64) -> Self {
        Engine { chain, lifter: Lifter::new(chain), bound }
    }

    pub fn chain(&self) -> &Chain {
        self.chain
    }

    pub fn lifter(&self) -> &Lifter<'a> {
        &self.lifter
    }

    /// δ at level `n` for a class given at level k = |class|, using the
    /// chain's own level-k table.
    pub fn character_column(&self, class: &ColoredCycleType, n: usize) -> Result<CharacterColumn> {
        let table = self.chain.level_table(class.size(), self.bound)?;
        self.character_column_with_table(&table, class, n)
    }

    /// δ at level `n` from a supplied level-k table.
    pub fn character_column_with_table(&self, table: &LevelTable, class: &ColoredCycleType, n: usize) -> Result<CharacterColumn> {
        let k = class.size();
        if table.level != k {
            return Err(Error::LevelMismatch { expected: k, got: table.level });
        }
        if k > n {
            return Err(Error::LevelMismatch { expected: n, got: k });
        }
        let input = self.lifter.lift_column_input(table, class, n)?;
        let x = self.chain.ind_res(n);
        let out = FallingFactorialPoly::new(n - k, self.chain.m()).apply(&x, &input)?;
        let values = out.to_integers().ok_or_else(|| {
            Error::InconsistentChain(format!("column of {} at level {n} is not integral", class.format(self.chain.h())))
        })?;
        Ok(CharacterColumn { level: n, class: class.padded_to(n), values })
    }

    pub fn reduced_operator(&self, n: usize) -> Result<ReducedOperator> {
        reduced_operator(self.chain, n)
    }

    /// The column of an odd permutation through Y, reconstructed over the
    /// whole basis by χ_{λ'} = −χ_λ.
    pub fn odd_column(&self, tau: &CycleType, n: usize) -> Result<OddColumn> {
        if !tau.is_odd() {
            return Err(Error::Precondition(format!("{tau} is not an odd permutation")));
        }
        let k = tau.n();
        if k > n {
            return Err(Error::LevelMismatch { expected: n, got: k });
        }
        let reduced = self.reduced_operator(n)?;
        let table = sym_level_table(k);
        let class = ColoredCycleType::from_cycle_type(tau);
        let a = self.lifter.lift_column_input(&table, &class, n)?;

        let level = self.chain.level(n);
        let idx = |p: &Partition| {
            level
                .index_of(&crate::chain::WreathIrrepLabel::from_partition(p.clone()))
                .expect("partition lies in the basis")
        };
        let half = reduced.basis();
        let two = BigRational::from_integer(2.into());
        // δ is anti-invariant under s, and f(X) commutes with s, so only the
        // anti-invariant part of the input matters; on it pr₊ is injective.
        let input: Vec<BigRational> = half
            .iter()
            .map(|x| (a.get(idx(x)) - a.get(idx(&x.conjugate()))) / &two)
            .collect();
        let out = FallingFactorialPoly::new(n - k, 1)
            .apply(&reduced.matrix, &ReprVector::from_coeffs(n, input))?;
        let projection = out.to_integers().ok_or_else(|| {
            Error::InconsistentChain(format!("reduced column of {tau} at level {n} is not integral"))
        })?;
        let mut values = vec![BigInt::zero(); level.len()];
        for (x, v) in half.iter().zip(&projection) {
            values[idx(x)] = v.clone();
            values[idx(&x.conjugate())] = -v;
        }
        Ok(OddColumn {
            basis: half,
            projection,
            column: CharacterColumn { level: n, class: class.padded_to(n), values },
        })
    }
}

/// Y(x,y) = X(x,y) − X(x, conj y) on the plus basis (and paired zeros).
pub fn reduced_operator(chain: &Chain, n: usize) -> Result<ReducedOperator> {
    if !chain.is_symmetric() {
        return Err(Error::UnsupportedChain("the reduced operator exists for the symmetric chain only".into()));
    }
    if n < 2 {
        return Err(Error::Precondition("the reduced operator needs n >= 2".into()));
    }
    let level = chain.level(n);
    let transposition = CycleType::new(Partition::new(vec![2]).expect("valid")).padded_to(n);
    let mut oracle = MnOracle::new();
    let chi: Vec<BigInt> = level
        .basis
        .iter()
        .map(|l| oracle.character(&l.as_partition(), &transposition))
        .collect::<Result<_>>()?;
    let mut plus_basis = Vec::new();
    let mut paired_zero = Vec::new();
    for (i, l) in level.basis.iter().enumerate() {
        let lam = l.as_partition();
        let conj = lam.conjugate();
        let j = level
            .index_of(&crate::chain::WreathIrrepLabel::from_partition(conj.clone()))
            .expect("conjugate lies in the basis");
        if chi[j] != -&chi[i] {
            return Err(Error::InconsistentChain(format!("χ_{lam}((12)) and χ_{conj}((12)) are not opposite")));
        }
        if chi[i].is_positive() {
            plus_basis.push(lam);
        } else if chi[i].is_zero() && !lam.is_self_conjugate() && lam < conj {
            paired_zero.push(lam);
        }
    }
    let mut half: Vec<Partition> = plus_basis.iter().chain(&paired_zero).cloned().collect();
    half.sort();
    let x = &level.x;
    let index = |p: &Partition| {
        level
            .index_of(&crate::chain::WreathIrrepLabel::from_partition(p.clone()))
            .expect("partition lies in the basis")
    };
    let mut triplets = Vec::new();
    for (r, a) in half.iter().enumerate() {
        for (c, b) in half.iter().enumerate() {
            let v = x.get(index(a), index(b)) - x.get(index(a), index(&b.conjugate()));
            triplets.push((r, c, v));
        }
    }
    let matrix = SparseMatrix::from_triplets(half.len(), half.len(), triplets);
    Ok(ReducedOperator { n, plus_basis, paired_zero, matrix })
}
