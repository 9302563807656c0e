//! Sparse multivariate Laurent polynomials over the integers.
//!
//! A [`LaurentPolynomial`] lives in `Z[v1^±1, ..., vk^±1]` for an ordered list
//! of named variables. Terms are stored as a map from [`ExponentVector`] to a
//! nonzero [`BigInt`] coefficient, ordered lexicographically, so equality,
//! iteration order and serialization are all canonical.
//!
//! Binary operations require both operands to carry the same variable list.
//! Moving between rings is always explicit: [`LaurentPolynomial::extend`] adds
//! variables with zero exponents, and [`LaurentPolynomial::substitute`] maps
//! each variable to a signed monomial in a target ring.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("no image given for variable `{0}`")]
    UnmappedVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("exponent vector {exponents:?} does not match the {expected} ring variables")]
    ExponentLength { exponents: Vec<i64>, expected: usize },
    #[error("invalid coefficient `{0}`: expected a decimal integer")]
    InvalidCoefficient(String),
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
}

/// A sign `±1`, used for substitution images and braid letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(value: i64) -> Option<Sign> {
        match value {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `self^e` for any integer `e`.
    pub fn pow(self, e: i64) -> Sign {
        if self == Sign::Minus && e.rem_euclid(2) == 1 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Exponents of a monomial, one per ring variable. Ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(exponents: Vec<i64>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zeros(len: usize) -> Self {
        ExponentVector(vec![0; len])
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn plus(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn negated(&self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|e| -e).collect())
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        ExponentVector(v)
    }
}

fn check_distinct(vars: &[String]) -> Result<(), RingError> {
    let mut seen = BTreeSet::new();
    for v in vars {
        if !seen.insert(v.as_str()) {
            return Err(RingError::DuplicateVariable(v.clone()));
        }
    }
    Ok(())
}

fn owned_vars<S: AsRef<str>>(vars: &[S]) -> Vec<String> {
    let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
    if let Err(e) = check_distinct(&vars) {
        panic!("{e}");
    }
    vars
}

/// An element of `Z[v1^±1, ..., vk^±1]` in canonical sparse form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "WirePolynomial", try_from = "WirePolynomial")]
pub struct LaurentPolynomial {
    vars: Vec<String>,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl LaurentPolynomial {
    /// The zero polynomial. Panics if `vars` repeats a name.
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        LaurentPolynomial {
            vars: owned_vars(vars),
            terms: BTreeMap::new(),
        }
    }

    pub fn one<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::constant(vars, BigInt::one())
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: BigInt) -> Self {
        let vars = owned_vars(vars);
        let k = vars.len();
        Self::zero(&vars).with_term(ExponentVector::zeros(k), c)
    }

    /// `coeff * v1^e1 * ... * vk^ek`. Panics if the exponent count is wrong.
    pub fn monomial<S: AsRef<str>>(vars: &[S], exponents: &[i64], coeff: BigInt) -> Self {
        let vars = owned_vars(vars);
        assert_eq!(
            exponents.len(),
            vars.len(),
            "monomial exponents {exponents:?} do not match variables {vars:?}"
        );
        Self::zero(&vars).with_term(ExponentVector::new(exponents.to_vec()), coeff)
    }

    /// The single variable `name` as a polynomial.
    pub fn variable<S: AsRef<str>>(vars: &[S], name: &str) -> Result<Self, RingError> {
        let vars = owned_vars(vars);
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| RingError::UnknownVariable(name.to_string()))?;
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        Ok(Self::monomial(&vars, &e, BigInt::one()))
    }

    /// Builds a polynomial from arbitrary terms, summing repeated exponents and
    /// dropping zero coefficients.
    pub fn from_terms<S, I>(vars: &[S], terms: I) -> Result<Self, RingError>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (Vec<i64>, BigInt)>,
    {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        check_distinct(&vars)?;
        let mut out = LaurentPolynomial {
            vars,
            terms: BTreeMap::new(),
        };
        for (exp, c) in terms {
            if exp.len() != out.vars.len() {
                return Err(RingError::ExponentLength {
                    exponents: exp,
                    expected: out.vars.len(),
                });
            }
            out.accumulate(ExponentVector::new(exp), c);
        }
        Ok(out)
    }

    fn with_term(mut self, e: ExponentVector, c: BigInt) -> Self {
        self.accumulate(e, c);
        self
    }

    fn accumulate(&mut self, e: ExponentVector, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &[i64]) -> BigInt {
        self.terms
            .get(&ExponentVector::new(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&vec![0; self.vars.len()])
    }

    /// Smallest exponent of variable `idx` over the support, `None` for zero.
    pub fn min_exponent(&self, idx: usize) -> Option<i64> {
        self.terms.keys().map(|e| e.0[idx]).min()
    }

    pub fn max_exponent(&self, idx: usize) -> Option<i64> {
        self.terms.keys().map(|e| e.0[idx]).max()
    }

    fn check_same_ring(&self, other: &Self) -> Result<(), RingError> {
        if self.vars != other.vars {
            return Err(RingError::VariableMismatch {
                left: self.vars.clone(),
                right: other.vars.clone(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check_same_ring(other)?;
        let mut out = Self {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.accumulate(e1.plus(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, coeff) in &self.terms {
            out.accumulate(e.clone(), coeff * c);
        }
        out
    }

    /// `self^k` by repeated squaring; `self^0 = 1`.
    pub fn power(&self, k: u32) -> Self {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Negates every exponent vector: the involution `v ↦ v^-1` on all variables.
    pub fn mirror(&self) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.negated(), c.clone()))
                .collect(),
        }
    }

    /// Appends `extra` variables, each with exponent zero in every term.
    pub fn extend<S: AsRef<str>>(&self, extra: &[S]) -> Result<Self, RingError> {
        let mut vars = self.vars.clone();
        vars.extend(extra.iter().map(|v| v.as_ref().to_string()));
        check_distinct(&vars)?;
        let pad = extra.len();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut v = e.0.clone();
                v.extend(std::iter::repeat_n(0, pad));
                (ExponentVector(v), c.clone())
            })
            .collect();
        Ok(Self { vars, terms })
    }

    /// Renames variable `from` to `to`, keeping its position.
    pub fn rename(&self, from: &str, to: &str) -> Result<Self, RingError> {
        let idx = self
            .var_index(from)
            .ok_or_else(|| RingError::UnknownVariable(from.to_string()))?;
        let mut vars = self.vars.clone();
        vars[idx] = to.to_string();
        check_distinct(&vars)?;
        Ok(Self {
            vars,
            terms: self.terms.clone(),
        })
    }

    /// Applies a monomial substitution. Each source variable `v` with image
    /// `(s, m)` sends `v^e` to `s^e * m^e`; colliding terms are merged.
    pub fn substitute(&self, sub: &Substitution) -> Result<Self, RingError> {
        let images = self
            .vars
            .iter()
            .map(|v| {
                sub.images
                    .get(v)
                    .ok_or_else(|| RingError::UnmappedVariable(v.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let k = sub.target.len();
        let mut out = Self {
            vars: sub.target.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            let mut exp = vec![0i64; k];
            let mut sign = Sign::Plus;
            for (&ei, (s, m)) in e.0.iter().zip(&images) {
                if ei == 0 {
                    continue;
                }
                if s.pow(ei) == Sign::Minus {
                    sign = sign.flip();
                }
                for (slot, mi) in exp.iter_mut().zip(m.as_slice()) {
                    *slot += ei * mi;
                }
            }
            let c = match sign {
                Sign::Plus => c.clone(),
                Sign::Minus => -c,
            };
            out.accumulate(ExponentVector(exp), c);
        }
        Ok(out)
    }

    /// Canonical JSON: terms sorted by exponent, coefficients as decimal strings.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self, RingError> {
        serde_json::from_str(s).map_err(|e| RingError::Json(e.to_string()))
    }
}

/// A ring map sending each source variable to `±` a monomial in `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    target: Vec<String>,
    images: BTreeMap<String, (Sign, ExponentVector)>,
}

impl Substitution {
    pub fn new<S: AsRef<str>>(target: &[S]) -> Result<Self, RingError> {
        let target: Vec<String> = target.iter().map(|v| v.as_ref().to_string()).collect();
        check_distinct(&target)?;
        Ok(Substitution {
            target,
            images: BTreeMap::new(),
        })
    }

    /// The identity map on `vars`.
    pub fn identity<S: AsRef<str>>(vars: &[S]) -> Result<Self, RingError> {
        let mut sub = Self::new(vars)?;
        for v in vars {
            sub = sub.map(v.as_ref(), Sign::Plus, &[(v.as_ref(), 1)])?;
        }
        Ok(sub)
    }

    /// Sends `var` to `sign * Π target_name^exp` over the listed factors.
    pub fn map(mut self, var: &str, sign: Sign, factors: &[(&str, i64)]) -> Result<Self, RingError> {
        let mut exp = vec![0i64; self.target.len()];
        for (name, e) in factors {
            let idx = self
                .target
                .iter()
                .position(|t| t == name)
                .ok_or_else(|| RingError::UnknownVariable(name.to_string()))?;
            exp[idx] += e;
        }
        self.images
            .insert(var.to_string(), (sign, ExponentVector(exp)));
        Ok(self)
    }

    pub fn target(&self) -> &[String] {
        &self.target
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireTerm {
    exp: Vec<i64>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WirePolynomial {
    vars: Vec<String>,
    terms: Vec<WireTerm>,
}

impl From<LaurentPolynomial> for WirePolynomial {
    fn from(p: LaurentPolynomial) -> Self {
        WirePolynomial {
            terms: p
                .terms
                .into_iter()
                .map(|(e, c)| WireTerm {
                    exp: e.0,
                    coeff: c.to_string(),
                })
                .collect(),
            vars: p.vars,
        }
    }
}

impl TryFrom<WirePolynomial> for LaurentPolynomial {
    type Error = RingError;

    fn try_from(w: WirePolynomial) -> Result<Self, RingError> {
        let terms = w
            .terms
            .into_iter()
            .map(|t| {
                let c: BigInt = t
                    .coeff
                    .parse()
                    .map_err(|_| RingError::InvalidCoefficient(t.coeff.clone()))?;
                Ok((t.exp, c))
            })
            .collect::<Result<Vec<_>, RingError>>()?;
        LaurentPolynomial::from_terms(&w.vars, terms)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let factors: Vec<String> = self
                .vars
                .iter()
                .zip(e.as_slice())
                .filter(|(_, &k)| k != 0)
                .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

// Operator forms panic on a variable-list mismatch; use the `try_` methods
// when the operands come from different sources.

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}
