//! Check suites with machine-readable reports.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::Serialize;

use crate::chain::Chain;
use crate::engine::{ind_t_character, Engine, FallingFactorialPoly};
use crate::error::{Error, Result};
use crate::hgroup::{colored_class_size, colored_cycle_types, wreath_level_table, wreath_order};
use crate::lifting::Lifter;
use crate::partition::{class_size, cycle_types, factorial, CycleType};
use crate::sparse::SparseMatrix;
use crate::verify::constraints::{
    class_constraint, fit_chain_params, roots_vs_characters, roots_vs_characters_data, Fit, PredictedPoly,
};
use crate::verify::ingest::ChainData;
use crate::verify::mn::oracle_column;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Res·Ind − Ind·Res = |H|·Id. Command-line name `heisenberg`.
    Heisenberg,
    /// Ind^l Res^l = f_l(X), lifts, columns, odd columns. Command-line name `tasyopari`.
    PolynomialIdentity,
    /// Class constraint, chain-parameter fit, roots. Command-line name `jeongha`.
    ChainConstraints,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heisenberg" => Ok(Suite::Heisenberg),
            "tasyopari" => Ok(Suite::PolynomialIdentity),
            "jeongha" => Ok(Suite::ChainConstraints),
            "all" => Ok(Suite::All),
            other => Err(Error::Parse(format!("unknown suite `{other}`"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Heisenberg => "heisenberg",
            Suite::PolynomialIdentity => "tasyopari",
            Suite::ChainConstraints => "jeongha",
            Suite::All => "all",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub chain: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(suite: Suite, chain: &str) -> Self {
        Report { suite: suite.to_string(), chain: chain.to_string(), pass: true, checks: Vec::new() }
    }

    fn push(&mut self, name: impl Into<String>, lhs: impl ToString, rhs: impl ToString, pass: bool) {
        self.pass &= pass;
        self.checks.push(Check { name: name.into(), pass, lhs: lhs.to_string(), rhs: rhs.to_string() });
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, name: impl Into<String>, lhs: &T, rhs: &T) {
        self.push(name, format!("{lhs:?}"), format!("{rhs:?}"), lhs == rhs);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// `Some(c)` if `m` is c·Id.
fn scalar_of(m: &SparseMatrix) -> Option<BigInt> {
    if !m.is_square() || m.rows() == 0 {
        return None;
    }
    let c = m.get(0, 0);
    (*m == SparseMatrix::scalar(m.rows(), c.clone())).then_some(c)
}

fn describe_scalar(m: &SparseMatrix) -> String {
    scalar_of(m).map_or_else(|| "not a scalar matrix".to_string(), |c| format!("{c}·Id"))
}

/// Runs `suite` on a built-in chain through level `max_n`.
pub fn run_builtin(chain: &Chain, suite: Suite, max_n: usize, bound: u64) -> Result<Report> {
    let mut report = Report::new(suite, chain.name());
    let m = BigInt::from(chain.m());
    if suite.includes(Suite::Heisenberg) {
        for n in 0..=max_n {
            let up = &chain.level(n + 1).res;
            let down = &chain.level(n).res;
            let d = &(up * &up.transpose()) - &(&down.transpose() * down);
            report.push(
                format!("heisenberg n={n}"),
                describe_scalar(&d),
                format!("{m}·Id"),
                d == SparseMatrix::scalar(d.rows(), m.clone()),
            );
        }
    }
    if suite.includes(Suite::PolynomialIdentity) {
        polynomial_identity_builtin(chain, max_n, bound, &mut report)?;
    }
    if suite.includes(Suite::ChainConstraints) {
        chain_constraints_builtin(chain, max_n, &mut report)?;
    }
    Ok(report)
}

fn polynomial_identity_builtin(chain: &Chain, max_n: usize, bound: u64, report: &mut Report) -> Result<()> {
    for n in 1..=max_n {
        let x = chain.ind_res(n);
        report.push(format!("X symmetric n={n}"), x.is_symmetric(), true, x.is_symmetric());
        for l in 1..=n {
            let brute = chain.brute_indl_resl(n, l)?;
            let poly = FallingFactorialPoly::new(l, chain.m()).to_matrix(&x);
            report.push(
                format!("Ind^l Res^l = f_l(X) n={n} l={l}"),
                format!("nnz {}", brute.nnz()),
                format!("nnz {}", poly.nnz()),
                brute == poly,
            );
        }
    }

    let lifter = Lifter::new(chain);
    for k in 0..=max_n.min(5) {
        for w in chain.basis(k) {
            for n in k..=max_n {
                let exact = lifter.lift_record(&w, n).is_ok();
                report.push(format!("lift {} to n={n}", chain.format_label(&w)), exact, true, exact);
            }
        }
    }

    let engine = Engine::new(chain, bound);
    let h = chain.h();
    for n in 1..=max_n {
        let brute_table = if chain.is_symmetric() || wreath_order(h, n) > BigUint::from(bound) {
            None
        } else {
            Some(wreath_level_table(h, n, bound)?)
        };
        let x = chain.ind_res(n);
        for class in colored_cycle_types(h.num_classes(), n) {
            let label = class.format(h);
            let minimal = class.without_fixed_points();
            let col = match engine.character_column(&minimal, n) {
                Ok(c) => c,
                Err(Error::SizeBound { .. }) => continue,
                Err(e) => return Err(e),
            };
            let order = chain.group_order(n);
            let norm_expected = BigInt::from(&order / colored_class_size(h, &class));
            report.eq(format!("norm {label} n={n}"), &col.norm_sq(), &norm_expected);

            let eigen = ind_t_character(chain, &class);
            let xd = x.apply_int(&col.values);
            let scaled: Vec<BigInt> = col.values.iter().map(|v| v * &eigen).collect();
            report.push(format!("X·δ = {eigen}·δ for {label} n={n}"), xd == scaled, true, xd == scaled);

            if let Some(mu) = class.as_cycle_type().filter(|_| chain.is_symmetric()) {
                let oracle = oracle_column(&mu, n)?;
                report.eq(format!("column {label} n={n} vs Murnaghan-Nakayama"), &col.values, &oracle.values);
                if mu.is_odd() {
                    let odd = engine.odd_column(&mu.without_fixed_points(), n)?;
                    report.eq(format!("odd column {label} n={n}"), &odd.column.values, &col.values);
                }
            }
            if let Some(t) = &brute_table {
                let ci = t.class_index(&class).ok_or_else(|| Error::MissingLabel(label.clone()))?;
                report.eq(format!("column {label} n={n} vs explicit table"), &col.values, &t.column(ci));
            }
        }
    }
    Ok(())
}

fn chain_constraints_builtin(chain: &Chain, max_n: usize, report: &mut Report) -> Result<()> {
    let data = ChainData::from_chain(chain, max_n)?;
    for n in 1..=max_n {
        for l in 1..=n {
            let poly = PredictedPoly::from_falling(&FallingFactorialPoly::new(l, chain.m()));
            for ci in 0..data.level(n - l).expect("exported").classes.len() {
                let r = class_constraint(&data, &poly, ci, n)?;
                report.push(format!("class constraint {} n={n} l={l}", r.class), &r.lhs, &r.rhs, r.pass);
            }
        }
    }
    if chain.is_symmetric() {
        for k in 1..=max_n.min(5) {
            for tau in cycle_types(k).into_iter().filter(|t| t.fixed_points() == 0) {
                for n in k..=max_n {
                    let lhs = class_size(&tau.padded_to(n));
                    let rhs = factorial(n) / (factorial(k) * factorial(n - k)) * class_size(&tau);
                    report.eq(format!("#[{tau}]_{n} = C({n},{k})·#[{tau}]_{k}"), &lhs, &rhs);
                }
            }
        }
    }
    if max_n >= 3 {
        let params = fit_chain_params(0, &data.orders());
        let expected = (BigInt::one(), BigInt::from(chain.m()));
        let got = match &params.fit {
            Fit::Fitted { b, c, .. } => Some((b.clone(), c.clone())),
            _ => None,
        };
        report.push(
            "fitted (B, C)",
            format!("{:?}", params.fit),
            format!("B={} C={}", expected.0, expected.1),
            got.as_ref() == Some(&expected),
        );
        report.push("a_n >= n", format!("{:?}", params.small_ratios), "[]", params.small_ratios.is_empty());
        for l in 0..=max_n {
            let ff = FallingFactorialPoly::new(l, chain.m());
            let predicted = params.predicted(l);
            let ok = predicted.as_ref() == Some(&PredictedPoly::from_falling(&ff))
                && predicted.as_ref().map(|p| p.coefficients())
                    == Some(ff.coefficients().into_iter().map(num_rational::BigRational::from_integer).collect());
            report.push(format!("predicted f_{l}"), format!("{predicted:?}"), format!("{:?}", ff.roots()), ok);
        }
    }
    for l in 1..max_n {
        let r = roots_vs_characters(chain, l)?;
        let levels: Vec<String> = r
            .candidates
            .iter()
            .map(|c| format!("level {}: {:?}{}", c.level, c.values, if c.matches { " (match)" } else { "" }))
            .collect();
        report.push(format!("roots of f_{l} vs χ_Ind(t)"), levels.join("; "), format!("{:?}", r.roots), r.pass);
    }
    Ok(())
}

/// Runs `suite` on chain data read from a file.
pub fn run_data(data: &ChainData, suite: Suite) -> Result<Report> {
    let mut report = Report::new(suite, &data.name);
    report.push("surjective", "full row rank at every level", "full row rank at every level", true);
    let n0 = data.min_level();
    let top = data.max_level();
    let first_is_trivial = data.levels[0].order.is_one();

    if suite.includes(Suite::Heisenberg) {
        let mut scale: Option<BigInt> = None;
        let start = if first_is_trivial && n0 == 0 { n0 } else { n0 + 1 };
        for n in start..top {
            let up = &data.level(n + 1).expect("level").res;
            let down = &data.level(n).expect("level").res;
            let d = &(up * &up.transpose()) - &(&down.transpose() * down);
            let c = scalar_of(&d);
            let pass = c.is_some() && (scale.is_none() || scale == c);
            if scale.is_none() {
                scale = c.clone();
            }
            report.push(
                format!("heisenberg n={n}"),
                describe_scalar(&d),
                scale.as_ref().map_or("M·Id".to_string(), |s| format!("{s}·Id")),
                pass,
            );
        }
    }

    let params = fit_chain_params(n0, &data.orders());
    let fit_ok = !params.is_violation();
    report.push("index recursion a_n = B·a_(n-1) + C", format!("{:?}", params.fit), "integral B, C", fit_ok);
    if matches!(params.fit, Fit::Fitted { .. }) {
        report.push("a_n >= n", format!("{:?}", params.small_ratios), "[]", params.small_ratios.is_empty());
    }

    if suite.includes(Suite::PolynomialIdentity) {
        for n in n0 + 1..=top {
            let x = data.x(n).expect("level");
            for l in 1..=n - n0 {
                let Some(poly) = params.predicted(l) else { continue };
                let mut r = SparseMatrix::identity(data.level(n).expect("level").basis_size);
                for j in 0..l {
                    r = &data.level(n - j).expect("level").res * &r;
                }
                let brute = &r.transpose() * &r;
                let pass = poly.matches_matrix(&x, &brute);
                report.push(format!("Ind^l Res^l = f_l(X) n={n} l={l}"), pass, true, pass);
            }
        }
    }

    if suite.includes(Suite::ChainConstraints) {
        for n in n0 + 1..=top {
            for l in 1..=n - n0 {
                let Some(poly) = params.predicted(l) else { continue };
                for ci in 0..data.level(n - l).expect("level").classes.len() {
                    let r = class_constraint(data, &poly, ci, n)?;
                    report.push(format!("class constraint {} n={n} l={l}", r.class), &r.lhs, &r.rhs, r.pass);
                }
            }
        }
        if first_is_trivial && matches!(params.fit, Fit::Fitted { .. }) {
            for l in 1..top.saturating_sub(n0) {
                let Some(poly) = params.predicted(l) else { continue };
                if let Some(r) = roots_vs_characters_data(data, &poly) {
                    report.push(format!("roots of f_{l} vs χ_Ind(t)"), format!("{:?}", r.candidates), format!("{:?}", r.roots), r.pass);
                }
            }
        }
    }
    Ok(report)
}

/// The column check used by the CLI's `--oracle` flag.
pub fn oracle_agrees(values: &[BigInt], mu: &CycleType, n: usize) -> Result<(Vec<BigInt>, bool)> {
    let oracle = oracle_column(mu, n)?;
    let agrees = oracle.values == values;
    Ok((oracle.values, agrees))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hgroup::DEFAULT_MAX_ORDER;

    #[test]
    fn small_builtin_suites_pass() {
        let r = run_builtin(&Chain::symmetric(), Suite::All, 5, DEFAULT_MAX_ORDER).unwrap();
        assert!(r.pass, "{:?}", r.failures().collect::<Vec<_>>());
        let z = run_builtin(&Chain::from_name("Z2").unwrap(), Suite::All, 3, DEFAULT_MAX_ORDER).unwrap();
        assert!(z.pass, "{:?}", z.failures().collect::<Vec<_>>());
    }

    #[test]
    fn exported_chain_passes_data_suite() {
        let data = ChainData::from_chain(&Chain::symmetric(), 6).unwrap();
        let r = run_data(&data, Suite::All).unwrap();
        assert!(r.pass, "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn constant_chain_is_inconclusive_but_consistent() {
        // three classes of S_3 at every level, Res = Id
        let level = |n: usize| {
            let embeds = if n < 4 { format!(",\"embedsTo\":\"{}\"", "X") } else { String::new() };
            let res = if n == 0 { "[]".to_string() } else { "[[0,0,1],[1,1,1],[2,2,1]]".to_string() };
            format!(
                "{{\"n\":{n},\"order\":6,\"basisSize\":3,\"res\":{res},\"classes\":[\
                 {{\"label\":\"e\",\"size\":1{}}},{{\"label\":\"t\",\"size\":3{}}},{{\"label\":\"c\",\"size\":2{}}}]}}",
                embeds.replace('X', "e"),
                embeds.replace('X', "t"),
                embeds.replace('X', "c")
            )
        };
        let text = format!("{{\"levels\":[{}]}}", (0..5).map(level).collect::<Vec<_>>().join(","));
        let data = ChainData::from_json("constant", &text).unwrap();
        let r = run_data(&data, Suite::All).unwrap();
        assert!(r.pass, "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.checks.iter().any(|c| c.lhs.contains("Inconclusive")));
    }
}
