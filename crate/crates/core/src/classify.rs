//! Basic classes and the invariants used to tell the manifolds apart.
//!
//! A basic class is an exponent vector with nonzero SW coefficient. The
//! divisibility of a class `a·xi + b·tau` is `gcd(|a|, |b|)`: `{xi, tau}`
//! extends to an integral basis of `H_2`, and every class produced here lies
//! in their span. The origin gets divisibility 0.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::braid::{self, BraidError, FamilyParams};
use crate::ring::LaurentPolynomial;
use crate::swcalc::{sw_link_surgery, SwError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Sw(#[from] SwError),
}

fn decimal<S: Serializer, T: ToString>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn decimal_seq<S: Serializer, T: ToString>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasicClass {
    #[serde(rename = "exp")]
    pub exponents: Vec<i64>,
    #[serde(serialize_with = "decimal")]
    pub coeff: BigInt,
    pub divisibility: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasicClassReport {
    pub vars: Vec<String>,
    /// Sorted ascending by exponent vector.
    pub classes: Vec<BasicClass>,
    pub count: usize,
    /// Absolute values of all coefficients, sorted.
    #[serde(serialize_with = "decimal_seq")]
    pub coefficient_multiset: Vec<BigUint>,
    /// Divisibilities of the classes with coefficient ±1, sorted.
    pub divisibility_multiset: Vec<u64>,
}

/// `gcd` of the absolute coordinates; 0 for the origin.
pub fn divisibility(exponents: &[i64]) -> u64 {
    exponents
        .iter()
        .fold(0u64, |g, &e| g.gcd(&e.unsigned_abs()))
}

pub fn basic_classes(sw: &LaurentPolynomial) -> BasicClassReport {
    let classes: Vec<BasicClass> = sw
        .terms()
        .map(|(e, c)| BasicClass {
            exponents: e.as_slice().to_vec(),
            coeff: c.clone(),
            divisibility: divisibility(e.as_slice()),
        })
        .collect();
    let mut coefficient_multiset: Vec<BigUint> = classes.iter().map(|c| c.coeff.magnitude().clone()).collect();
    coefficient_multiset.sort();
    let mut divisibility_multiset: Vec<u64> = classes
        .iter()
        .filter(|c| c.coeff.magnitude().is_one())
        .map(|c| c.divisibility)
        .collect();
    divisibility_multiset.sort();
    BasicClassReport {
        vars: sw.vars().to_vec(),
        count: classes.len(),
        classes,
        coefficient_multiset,
        divisibility_multiset,
    }
}

fn check_count_range(n: u32, p: u32, q: u32) -> Result<(), ClassifyError> {
    braid::require("n", n.into(), n >= 1, "n >= 1")?;
    braid::require("p", p.into(), p >= 2, "p >= 2")?;
    braid::require("q", q.into(), q >= 3, "q >= 3")?;
    Ok(())
}

/// Number of basic classes of `E(n,1)_{L_{p,q}}` by the closed formula
/// `(2n + 2q - 6)p + (qn - 4n - 4q + 12)`, valid for `p ≥ 2, q ≥ 3`.
pub fn count_formula(n: u32, p: u32, q: u32) -> Result<i64, ClassifyError> {
    check_count_range(n, p, q)?;
    let (n, p, q) = (i64::from(n), i64::from(p), i64::from(q));
    Ok((2 * n + 2 * q - 6) * p + (q * n - 4 * n - 4 * q + 12))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeCount {
    pub points: BTreeSet<(i64, i64)>,
    pub cardinality: usize,
}

/// Enumerates `{(j - k, i + j) : 0 ≤ i ≤ 2p-4, 0 ≤ j ≤ q-3, 0 ≤ k ≤ n-1}`.
pub fn lambda_set(n: u32, p: u32, q: u32) -> Result<LatticeCount, ClassifyError> {
    check_count_range(n, p, q)?;
    let (n, p, q) = (i64::from(n), i64::from(p), i64::from(q));
    let mut points = BTreeSet::new();
    for i in 0..=2 * p - 4 {
        for j in 0..=q - 3 {
            for k in 0..n {
                points.insert((j - k, i + j));
            }
        }
    }
    Ok(LatticeCount {
        cardinality: points.len(),
        points,
    })
}

/// `#Λ` in closed form: box points minus the box one smaller in each side.
pub fn lambda_closed_form(n: u32, p: u32, q: u32) -> Result<i64, ClassifyError> {
    check_count_range(n, p, q)?;
    let (n, p, q) = (i64::from(n), i64::from(p), i64::from(q));
    Ok((2 * p - 3) * (q - 2) * n - (2 * p - 4) * (q - 3) * (n - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Distinguished,
    NotSeparated,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Distinguished => write!(f, "distinguished"),
            Verdict::NotSeparated => write!(f, "not separated by these invariants"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Q2Comparison {
    pub n: u32,
    pub p1: u32,
    pub p2: u32,
    pub r: u32,
    pub first: BasicClassReport,
    pub second: BasicClassReport,
    pub counts_differ: bool,
    pub coefficient_multisets_differ: bool,
    pub divisibility_multisets_differ: bool,
    pub verdict: Verdict,
}

/// Picks `r` for the pair `p1 > p2` in the `q = 2` family: `(2p1 + 1 - n)/2`
/// for odd `n`, `2p1 - n/2` for even `n`.
pub fn q2_surgery_multiplicity(n: u32, p1: u32, p2: u32) -> Result<u32, ClassifyError> {
    let fail = |s: String| Err(ClassifyError::Precondition(s));
    if n < 1 {
        return fail(format!("n >= 1 (n = {n})"));
    }
    if p2 < 2 {
        return fail(format!("p2 >= 2 (p2 = {p2})"));
    }
    if p1 <= p2 {
        return fail(format!("p1 > p2 (p1 = {p1}, p2 = {p2})"));
    }
    if n % 2 == 1 {
        if 2 * p2 < n {
            return fail(format!("p2 > (n-1)/2 (p2 = {p2}, n = {n})"));
        }
        Ok((2 * p1 + 1 - n) / 2)
    } else {
        if n / 2 >= 2 * p1 {
            return fail(format!("n/2 < 2*p1 (n = {n}, p1 = {p1})"));
        }
        Ok(2 * p1 - n / 2)
    }
}

/// Compares the basic classes of `E(n,r)_{L_{p1,2}}` and `E(n,r)_{L_{p2,2}}`.
///
/// The verdict is `Distinguished` iff the divisibility multisets over ±1
/// classes differ. Counts and full coefficient multisets are reported for
/// context only.
pub fn distinguish_q2(n: u32, p1: u32, p2: u32) -> Result<Q2Comparison, ClassifyError> {
    let r = q2_surgery_multiplicity(n, p1, p2)?;
    let first = basic_classes(&sw_link_surgery(FamilyParams::new(p1, 2, n, r)?)?.poly);
    let second = basic_classes(&sw_link_surgery(FamilyParams::new(p2, 2, n, r)?)?.poly);
    let divisibility_multisets_differ = first.divisibility_multiset != second.divisibility_multiset;
    Ok(Q2Comparison {
        n,
        p1,
        p2,
        r,
        counts_differ: first.count != second.count,
        coefficient_multisets_differ: first.coefficient_multiset != second.coefficient_multiset,
        divisibility_multisets_differ,
        verdict: if divisibility_multisets_differ {
            Verdict::Distinguished
        } else {
            Verdict::NotSeparated
        },
        first,
        second,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sw(n: u32, r: u32, p: u32, q: u32) -> LaurentPolynomial {
        sw_link_surgery(FamilyParams::new(p, q, n, r).unwrap()).unwrap().poly
    }

    fn big(v: &[u32]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn divisibility_convention() {
        assert_eq!(divisibility(&[0, 0]), 0);
        assert_eq!(divisibility(&[0, -4]), 4);
        assert_eq!(divisibility(&[-6, 4]), 2);
        assert_eq!(divisibility(&[3, -5]), 1);
    }

    #[test]
    fn report_for_l23() {
        let rep = basic_classes(&sw(1, 1, 2, 3));
        assert_eq!(rep.count, 3);
        let exps: Vec<Vec<i64>> = rep.classes.iter().map(|c| c.exponents.clone()).collect();
        assert_eq!(exps, vec![vec![-2, -4], vec![0, 0], vec![2, 4]]);
        assert_eq!(rep.divisibility_multiset, vec![0, 2, 2]);
        assert_eq!(rep.coefficient_multiset, big(&[1, 1, 1]));
    }

    #[test]
    fn report_for_zero() {
        let rep = basic_classes(&LaurentPolynomial::zero(&["xi", "tau"]));
        assert_eq!(rep.count, 0);
        assert!(rep.classes.is_empty());
        assert!(rep.divisibility_multiset.is_empty());
    }

    #[test]
    fn report_for_e13_l32() {
        let rep = basic_classes(&sw(1, 3, 3, 2));
        assert_eq!(rep.count, 6);
        assert_eq!(rep.coefficient_multiset, big(&[1, 1, 1, 1, 2, 2]));
        assert_eq!(rep.divisibility_multiset, vec![1, 1, 5, 5]);
    }

    #[test]
    fn count_formula_examples() {
        assert_eq!(count_formula(1, 2, 3).unwrap(), 3);
        assert_eq!(count_formula(1, 3, 3).unwrap(), 5);
        assert_eq!(count_formula(2, 2, 4).unwrap(), 8);
        assert_eq!(basic_classes(&sw(1, 1, 3, 3)).count, 5);
        assert_eq!(basic_classes(&sw(2, 1, 2, 4)).count, 8);
        assert!(count_formula(1, 1, 3).is_err());
        assert!(count_formula(1, 2, 2).is_err());
        assert!(count_formula(0, 2, 3).is_err());
    }

    #[test]
    fn lambda_examples() {
        let l = lambda_set(1, 2, 3).unwrap();
        assert_eq!(l.points, BTreeSet::from([(0, 0)]));
        assert_eq!(l.cardinality, 1);
        let l = lambda_set(1, 3, 3).unwrap();
        assert_eq!(l.points, BTreeSet::from([(0, 0), (0, 1), (0, 2)]));
        assert_eq!(lambda_closed_form(1, 3, 3).unwrap(), 3);
        assert_eq!(lambda_set(2, 2, 4).unwrap().cardinality, 4);
        assert_eq!(lambda_closed_form(2, 2, 4).unwrap(), 4);
        assert!(lambda_set(1, 1, 3).is_err());
    }

    #[test]
    fn distinguish_odd_worked_case() {
        let c = distinguish_q2(1, 3, 2).unwrap();
        assert_eq!(c.r, 3);
        assert_eq!(c.first.divisibility_multiset, vec![1, 1, 5, 5]);
        assert_eq!(c.second.divisibility_multiset, vec![1, 1, 3, 3]);
        assert_eq!(c.verdict, Verdict::Distinguished);
        assert!(!c.counts_differ);
    }

    #[test]
    fn distinguish_preconditions() {
        let err = distinguish_q2(1, 2, 2).unwrap_err();
        assert!(err.to_string().contains("p1 > p2"));
        assert!(distinguish_q2(1, 3, 1).is_err());
        // n = 5 needs p2 > 2
        assert!(distinguish_q2(5, 4, 2).unwrap_err().to_string().contains("p2 > (n-1)/2"));
        assert!(distinguish_q2(5, 4, 3).is_ok());
        // n even: r = 2p1 - n/2 must stay positive
        assert!(distinguish_q2(12, 3, 2).unwrap_err().to_string().contains("n/2 < 2*p1"));
    }

    #[test]
    fn distinguish_even_case() {
        let c = distinguish_q2(2, 3, 2).unwrap();
        assert_eq!(c.r, 5);
        assert_eq!(c.first.divisibility_multiset, vec![1, 1, 1, 1, 1, 1, 5, 5]);
        assert_eq!(c.second.divisibility_multiset, vec![1, 1, 1, 1, 1, 1, 3, 3]);
        assert_eq!(c.verdict, Verdict::Distinguished);
    }
}
