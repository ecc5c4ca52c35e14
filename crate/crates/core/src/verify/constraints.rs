//! Rigidity constraints on chains whose Ind^l Res^l are polynomials in X:
//! the class constraint, the two-parameter recursion for the index ratios,
//! the predicted polynomials, and the match between their roots and the
//! values of χ_{Ind(t)}.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::chain::Chain;
use crate::engine::{ind_t_character, FallingFactorialPoly};
use crate::error::{Error, Result};
use crate::hgroup::colored_cycle_types;
use crate::sparse::SparseMatrix;
use crate::verify::ingest::ChainData;

/// f_l(X) = (1/denom) · ∏_j (X − roots_j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictedPoly {
    pub l: usize,
    pub denom: BigInt,
    pub roots: Vec<BigInt>,
}

impl PredictedPoly {
    pub fn from_falling(f: &FallingFactorialPoly) -> Self {
        PredictedPoly { l: f.l, denom: BigInt::one(), roots: f.roots() }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let prod = self
            .roots
            .iter()
            .fold(BigRational::one(), |acc, r| acc * (x - BigRational::from_integer(r.clone())));
        prod / BigRational::from_integer(self.denom.clone())
    }

    /// Coefficients in ascending powers, as exact rationals.
    pub fn coefficients(&self) -> Vec<BigRational> {
        let mut c = vec![BigInt::one()];
        for root in &self.roots {
            let mut next = vec![BigInt::zero(); c.len() + 1];
            for (i, a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * root;
            }
            c = next;
        }
        c.into_iter().map(|a| BigRational::new(a, self.denom.clone())).collect()
    }

    /// True if f_l(x) equals `target` exactly.
    pub fn matches_matrix(&self, x: &SparseMatrix, target: &SparseMatrix) -> bool {
        let mut acc = SparseMatrix::identity(x.rows());
        for r in &self.roots {
            acc = &(x - &SparseMatrix::scalar(x.rows(), r.clone())) * &acc;
        }
        acc == target.scale(&self.denom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fit {
    Fitted {
        b: BigInt,
        c: BigInt,
        /// A known family realizing (B, C), if any.
        realization: Option<String>,
    },
    Inconclusive {
        reason: String,
    },
    Violation {
        reason: String,
    },
}

/// Index ratios a_n = |G_n|/|G_{n−1}| and the fitted recursion
/// a_n = B·a_{n−1} + C.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainParams {
    /// Level of the first ratio.
    pub first_n: usize,
    pub ratios: Vec<BigInt>,
    pub fit: Fit,
    /// Levels where a_n < n.
    pub small_ratios: Vec<usize>,
}

impl ChainParams {
    /// f_l predicted from the fit; f_l = X when the fit is inconclusive
    /// because the ratios are constant.
    pub fn predicted(&self, l: usize) -> Option<PredictedPoly> {
        match &self.fit {
            Fit::Fitted { b, c, .. } => {
                let mut roots = Vec::with_capacity(l);
                let mut geometric = BigInt::zero(); // 1 + B + … + B^{j−1}
                let mut power = BigInt::one();
                for _ in 0..l {
                    roots.push(c * &geometric);
                    geometric += &power;
                    power *= b;
                }
                let denom = b.pow((l * l.saturating_sub(1) / 2) as u32);
                Some(PredictedPoly { l, denom, roots })
            }
            Fit::Inconclusive { .. } if self.ratios.windows(2).all(|w| w[0] == w[1]) => {
                Some(PredictedPoly { l, denom: BigInt::one(), roots: vec![BigInt::zero()] })
            }
            _ => None,
        }
    }

    pub fn is_violation(&self) -> bool {
        matches!(self.fit, Fit::Violation { .. })
    }
}

/// Fits from consecutive group orders |G_{n0}|, |G_{n0+1}|, ….
pub fn fit_chain_params(first_level: usize, orders: &[BigUint]) -> ChainParams {
    let mut ratios = Vec::new();
    for w in orders.windows(2) {
        let (q, r) = w[1].div_rem(&w[0]);
        if !r.is_zero() {
            return ChainParams {
                first_n: first_level + 1,
                ratios,
                fit: Fit::Violation { reason: format!("{} does not divide {}", w[0], w[1]) },
                small_ratios: Vec::new(),
            };
        }
        ratios.push(BigInt::from(q));
    }
    fit_ratios(first_level + 1, ratios)
}

/// Fits from the ratios a_{first_n}, a_{first_n+1}, ….
pub fn fit_ratios(first_n: usize, ratios: Vec<BigInt>) -> ChainParams {
    let small_ratios = ratios
        .iter()
        .enumerate()
        .filter(|(i, a)| **a < BigInt::from(first_n + i))
        .map(|(i, _)| first_n + i)
        .collect();
    let done = |fit| ChainParams { first_n, ratios: ratios.clone(), fit, small_ratios: Vec::clone(&small_ratios) };
    if ratios.len() < 3 {
        return done(Fit::Inconclusive { reason: "need at least four consecutive group orders".into() });
    }
    let Some(i) = (0..ratios.len() - 1).find(|&i| ratios[i + 1] != ratios[i]) else {
        return done(Fit::Inconclusive { reason: "index ratios are constant".into() });
    };
    if i + 2 >= ratios.len() {
        return done(Fit::Inconclusive { reason: "only one change in the index ratios".into() });
    }
    let (num, den) = (&ratios[i + 2] - &ratios[i + 1], &ratios[i + 1] - &ratios[i]);
    let (b, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return done(Fit::Violation { reason: format!("B = {num}/{den} is not an integer") });
    }
    let c = &ratios[i + 1] - &b * &ratios[i];
    for j in 0..ratios.len() - 1 {
        if ratios[j + 1] != &b * &ratios[j] + &c {
            return done(Fit::Violation {
                reason: format!(
                    "a_{} = {} but B·a_{} + C = {}",
                    first_n + j + 1,
                    ratios[j + 1],
                    first_n + j,
                    &b * &ratios[j] + &c
                ),
            });
        }
    }
    let realization = (b.is_one() && c >= BigInt::one()).then(|| format!("H wreath S_n with |H| = {c}"));
    done(Fit::Fitted { b, c, realization })
}

/// Both sides of f_l(χ_{Ind(t)}(h)) = |G_n||[h]_{n−l}| / (|G_{n−l}||[h]_n|).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassConstraint {
    pub class: String,
    pub n: usize,
    pub l: usize,
    pub chi_ind_t: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

fn ratio(a: &BigUint, b: &BigUint, c: &BigUint, d: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(a * b), BigInt::from(c * d))
}

/// The class constraint for the level-(n−l) class `class` of `data`.
pub fn class_constraint(data: &ChainData, poly: &PredictedPoly, class: usize, n: usize) -> Result<ClassConstraint> {
    let l = poly.l;
    let j = n.checked_sub(l).ok_or(Error::LevelMismatch { expected: n, got: l })?;
    if l == 0 || n - 1 < data.min_level() || j < data.min_level() {
        return Err(Error::Precondition(format!("class data for levels {j}..{n} is not available")));
    }
    let missing = || Error::MissingLabel(format!("class {class} at level {j} has no image at level {n}"));
    let (lj, ln1, ln) = (
        data.level(j).ok_or_else(missing)?,
        data.level(n - 1).ok_or_else(missing)?,
        data.level(n).ok_or_else(missing)?,
    );
    let c_n1 = data.embed(j, class, n - 1).ok_or_else(missing)?;
    let c_n = data.embed(j, class, n).ok_or_else(missing)?;
    let size_j = &lj.classes[class].size;
    let size_n1 = &ln1.classes[c_n1].size;
    let size_n = &ln.classes[c_n].size;
    let chi = ratio(&ln.order, size_n1, &ln1.order, size_n);
    let lhs = poly.eval(&chi);
    let rhs = ratio(&ln.order, size_j, &lj.order, size_n);
    Ok(ClassConstraint {
        class: lj.classes[class].label.clone(),
        n,
        l,
        chi_ind_t: chi.to_string(),
        pass: lhs == rhs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    })
}

/// Values of χ_{Ind(t)} on the non-identity classes at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelComparison {
    pub level: usize,
    pub values: Vec<BigInt>,
    pub matches: bool,
    /// Roots that are not character values.
    pub missing_values: Vec<BigInt>,
    /// Character values that are not roots.
    pub extra_values: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootsReport {
    pub l: usize,
    pub roots: Vec<BigInt>,
    pub candidates: Vec<LevelComparison>,
    /// The two computations of χ_{Ind(t)} (fixed points, class sizes) agree.
    pub routes_agree: bool,
    pub pass: bool,
}

fn compare(level: usize, roots: &[BigInt], mut values: Vec<BigInt>) -> LevelComparison {
    values.sort();
    values.dedup();
    let missing_values: Vec<BigInt> = roots.iter().filter(|r| !values.contains(r)).cloned().collect();
    let extra_values: Vec<BigInt> = values.iter().filter(|v| !roots.contains(v)).cloned().collect();
    LevelComparison { level, matches: missing_values.is_empty() && extra_values.is_empty(), values, missing_values, extra_values }
}

/// Root set of f_l against χ_{Ind(t)} on non-identity classes at levels l
/// and l+1. The symmetric chain must match at level l+1; for other chains
/// the right level is not pinned down, so a match at either passes.
pub fn roots_vs_characters(chain: &Chain, l: usize) -> Result<RootsReport> {
    if l == 0 {
        return Err(Error::Precondition("l must be at least 1".into()));
    }
    let f = FallingFactorialPoly::new(l, chain.m());
    let roots = f.roots();
    let data = ChainData::from_chain(chain, l + 1)?;
    let h = chain.h();
    let mut routes_agree = true;
    let mut candidates = Vec::new();
    for m in [l, l + 1] {
        let lvl = data.level(m).expect("level exported");
        let mut values = Vec::new();
        for (ci, class) in colored_cycle_types(h.num_classes(), m).iter().enumerate() {
            if class.is_identity() {
                continue;
            }
            let direct = ind_t_character(chain, class);
            let meet = data.intersection_size(m - 1, m, ci).expect("levels exported");
            let by_sizes = ratio(&lvl.order, &meet, &data.level(m - 1).unwrap().order, &lvl.classes[ci].size);
            routes_agree &= by_sizes == BigRational::from_integer(direct.clone());
            values.push(direct);
        }
        candidates.push(compare(m, &roots, values));
    }
    let pass = routes_agree
        && if chain.is_symmetric() {
            candidates[1].matches
        } else {
            candidates.iter().any(|c| c.matches)
        };
    Ok(RootsReport { l, roots, candidates, routes_agree, pass })
}

/// Roots of the predicted f_l against χ_{Ind(t)} computed from class sizes
/// alone, for chains known only through their data.
pub fn roots_vs_characters_data(data: &ChainData, poly: &PredictedPoly) -> Option<RootsReport> {
    let l = poly.l;
    if poly.denom != BigInt::one() {
        return None;
    }
    let mut candidates = Vec::new();
    for m in [l, l + 1] {
        let (Some(lvl), Some(below)) = (data.level(m), m.checked_sub(1).and_then(|p| data.level(p))) else {
            continue;
        };
        let mut values = Vec::new();
        for ci in 1..lvl.classes.len() {
            let meet = data.intersection_size(m - 1, m, ci)?;
            let v = ratio(&lvl.order, &meet, &below.order, &lvl.classes[ci].size);
            if !v.is_integer() {
                return None;
            }
            values.push(v.to_integer());
        }
        candidates.push(compare(m, &poly.roots, values));
    }
    if candidates.is_empty() {
        return None;
    }
    let pass = candidates.iter().any(|c| c.matches);
    Some(RootsReport { l, roots: poly.roots.clone(), candidates, routes_agree: true, pass })
}
