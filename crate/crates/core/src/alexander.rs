//! Two-variable Alexander polynomials of the links `L_{p,q}` (the closure of
//! `B_{p,q}` together with its braid axis).
//!
//! Polynomials produced here are in the ring `(x, t)` with `x` first; `x`
//! tracks the axis and `t` the closed braid. [`symmetrize`] moves them into
//! `(xi, tau)` via `x ↦ xi^2, t ↦ tau^2` followed by a centering monomial,
//! so half-integer exponents never appear.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::braid::{self, braid_matrix, torus_family_braid, BraidError, BraidWord, PolyMatrix};
use crate::ring::{LaurentPolynomial, RingError, Sign, Substitution};

pub const X: &str = "x";
pub const T: &str = braid::T;
pub const XI: &str = "xi";
pub const TAU: &str = "tau";

/// Variables of an unsymmetrized Alexander polynomial.
pub const XT: [&str; 2] = [X, T];
/// Variables of symmetrized Alexander polynomials and SW invariants.
pub const XI_TAU: [&str; 2] = [XI, TAU];

/// Largest strand count accepted by the determinant route.
pub const MAX_STRANDS: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlexanderError {
    #[error("{strands} strands exceeds the supported maximum of {max}")]
    TooManyStrands { strands: usize, max: u32 },
    #[error("expected a polynomial in (x, t) with nonnegative exponents")]
    NotSymmetrizable,
    #[error("determinant for p = {p}, q = {q} has constant term {constant}, expected 1")]
    Normalization { p: u32, q: u32, constant: BigInt },
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

fn xt_monomial(a: i64, b: i64) -> LaurentPolynomial {
    LaurentPolynomial::monomial(&XT, &[a, b], BigInt::one())
}

fn check_family(p: u32, q: u32) -> Result<(), AlexanderError> {
    braid::require("p", p.into(), p >= 1, "p >= 1")?;
    braid::require("q", q.into(), q >= 2, "q >= 2")?;
    if q > MAX_STRANDS {
        return Err(AlexanderError::TooManyStrands {
            strands: q as usize,
            max: MAX_STRANDS,
        });
    }
    Ok(())
}

/// `det(I - x·Γ)` for the Burau matrix `Γ` of an arbitrary word.
///
/// Outside the `B_{p,q}` family this is the Alexander polynomial of the
/// closure plus axis only up to units `±x^a t^b`.
pub fn alexander_general(word: &BraidWord) -> Result<LaurentPolynomial, AlexanderError> {
    if word.strands() > MAX_STRANDS as usize {
        return Err(AlexanderError::TooManyStrands {
            strands: word.strands(),
            max: MAX_STRANDS,
        });
    }
    let into_xt = Substitution::new(&XT)?.map(T, Sign::Plus, &[(T, 1)])?;
    let gamma = braid_matrix(word).substitute(&into_xt)?;
    let m = gamma.size();
    let shifted = PolyMatrix::identity(m, &XT).try_sub(&gamma.scale(&xt_monomial(1, 0))?)?;
    Ok(shifted.determinant())
}

/// `Δ_{L_{p,q}}(x, t)` computed as `det(I - x·Γ_{p,q})`.
pub fn alexander_via_determinant(p: u32, q: u32) -> Result<LaurentPolynomial, AlexanderError> {
    check_family(p, q)?;
    let delta = alexander_general(&torus_family_braid(p, q)?)?;
    let constant = delta.constant_term();
    if !constant.is_one() {
        return Err(AlexanderError::Normalization { p, q, constant });
    }
    Ok(delta)
}

/// `Δ_{L_{p,q}}(x, t)` from its closed form, with both rational factors
/// expanded as finite sums:
///
/// * `q = 2`: `1 + x t^{2p-1}`
/// * `q ≥ 3, p ≥ 2`: `1 + x^{q-1} t^{2p+q-3} + x t^2 (Σ_{i=0}^{2p-4} (-t)^i)(Σ_{j=0}^{q-3} (xt)^j)`
/// * `q ≥ 3, p = 1`: `Σ_{j=0}^{q-1} (xt)^j`
pub fn alexander_closed_form(p: u32, q: u32) -> Result<LaurentPolynomial, AlexanderError> {
    braid::require("p", p.into(), p >= 1, "p >= 1")?;
    braid::require("q", q.into(), q >= 2, "q >= 2")?;
    let (p, q) = (i64::from(p), i64::from(q));
    let one = LaurentPolynomial::one(&XT);
    if q == 2 {
        return Ok(&one + &xt_monomial(1, 2 * p - 1));
    }
    if p == 1 {
        return Ok(LaurentPolynomial::from_terms(
            &XT,
            (0..q).map(|j| (vec![j, j], BigInt::one())),
        )?);
    }
    let alternating = LaurentPolynomial::from_terms(
        &XT,
        (0..=2 * p - 4).map(|i| (vec![0, i], if i % 2 == 0 { BigInt::one() } else { -BigInt::one() })),
    )?;
    let geometric = LaurentPolynomial::from_terms(&XT, (0..=q - 3).map(|j| (vec![j, j], BigInt::one())))?;
    let middle = &(&xt_monomial(1, 2) * &alternating) * &geometric;
    Ok(&(&one + &xt_monomial(q - 1, 2 * p + q - 3)) + &middle)
}

/// `Δ^sym(xi^2, tau^2) = xi^{-(q-1)} tau^{-(2p+q-3)} · Δ(xi^2, tau^2)`.
pub fn symmetrize(p: u32, q: u32, delta: &LaurentPolynomial) -> Result<LaurentPolynomial, AlexanderError> {
    if delta.vars() != XT || (0..2).any(|i| delta.min_exponent(i).is_some_and(|e| e < 0)) {
        return Err(AlexanderError::NotSymmetrizable);
    }
    let (p, q) = (i64::from(p), i64::from(q));
    let squared = Substitution::new(&XI_TAU)?
        .map(X, Sign::Plus, &[(XI, 2)])?
        .map(T, Sign::Plus, &[(TAU, 2)])?;
    let center = LaurentPolynomial::monomial(&XI_TAU, &[-(q - 1), -(2 * p + q - 3)], BigInt::one());
    Ok(&delta.substitute(&squared)? * &center)
}

/// `Δ_{p,q}` with every term of positive `x`-degree dropped.
pub fn at_x_zero(delta: &LaurentPolynomial) -> LaurentPolynomial {
    let idx = delta.var_index(X).unwrap_or(0);
    LaurentPolynomial::from_terms(
        delta.vars(),
        delta
            .terms()
            .filter(|(e, c)| e.as_slice()[idx] == 0 && !c.is_zero())
            .map(|(e, c)| (e.as_slice().to_vec(), c.clone())),
    )
    .expect("same ring")
}
