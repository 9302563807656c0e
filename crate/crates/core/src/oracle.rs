//! Independent constructions used by the verification suites.
//!
//! Nothing here goes through the Alexander or symmetrization code paths: the
//! SW branches are written out monomial by monomial, prefactors are expanded
//! with binomial coefficients.

use num_bigint::BigInt;
use num_traits::One;

use crate::alexander::XI_TAU;
use crate::ring::LaurentPolynomial;

fn binomial(n: i64, k: i64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn xi_tau(terms: impl IntoIterator<Item = (i64, i64, BigInt)>) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(&XI_TAU, terms.into_iter().map(|(a, b, c)| (vec![a, b], c)))
        .expect("two exponents per term")
}

/// `(xi^-1 - xi)^{n-1} (xi^-q - xi^q)^{r-1}` as
/// `Σ_k (-1)^k C(n-1,k) xi^{2k-(n-1)} · Σ_l (-1)^l C(r-1,l) xi^{q(2l-(r-1))}`.
pub fn prefactor(n: u32, r: u32, q: u32) -> LaurentPolynomial {
    let (n, r, q) = (i64::from(n), i64::from(r), i64::from(q));
    let sign = |k: i64| if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let first = xi_tau((0..n).map(|k| (2 * k - (n - 1), 0, sign(k) * binomial(n - 1, k))));
    let second = xi_tau((0..r).map(|l| (q * (2 * l - (r - 1)), 0, sign(l) * binomial(r - 1, l))));
    &first * &second
}

/// Bracket of the SW formula for `p ≥ 2, q ≥ 3`:
/// `xi^{-(q-1)} tau^{-(2p+q-3)} + xi^{q-1} tau^{2p+q-3}
///  + (tau^{-(2p-4)} Σ_{i=0}^{2p-4} (-tau^2)^i)(Σ_{j=0}^{q-3} (xi tau)^{-(q-3)+2j})`.
pub fn bracket_general(p: u32, q: u32) -> LaurentPolynomial {
    let (p, q) = (i64::from(p), i64::from(q));
    let ends = xi_tau([
        (-(q - 1), -(2 * p + q - 3), BigInt::one()),
        (q - 1, 2 * p + q - 3, BigInt::one()),
    ]);
    let tau_part = xi_tau((0..=2 * p - 4).map(|i| {
        let c = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        (0, -(2 * p - 4) + 2 * i, c)
    }));
    let diag = xi_tau((0..=q - 3).map(|j| {
        let e = -(q - 3) + 2 * j;
        (e, e, BigInt::one())
    }));
    &ends + &(&tau_part * &diag)
}

/// Bracket for `p = 1`: `Σ_{j=-1}^{q-2} (xi tau)^{-(q-3)+2j}`.
pub fn bracket_p1(q: u32) -> LaurentPolynomial {
    let q = i64::from(q);
    xi_tau((-1..=q - 2).map(|j| {
        let e = -(q - 3) + 2 * j;
        (e, e, BigInt::one())
    }))
}

/// Bracket for `q = 2`: `xi^-1 tau^{-(2p-1)} + xi tau^{2p-1}`.
pub fn bracket_q2(p: u32) -> LaurentPolynomial {
    let e = 2 * i64::from(p) - 1;
    xi_tau([(-1, -e, BigInt::one()), (1, e, BigInt::one())])
}

/// Every displayed branch that applies at `(p, q)`, labelled.
pub fn displayed_branches(n: u32, r: u32, p: u32, q: u32) -> Vec<(&'static str, LaurentPolynomial)> {
    let pre = prefactor(n, r, q);
    let mut out = Vec::new();
    if p >= 2 && q >= 3 {
        out.push(("general branch", &pre * &bracket_general(p, q)));
    }
    if p == 1 {
        out.push(("p = 1 branch", &pre * &bracket_p1(q)));
    }
    if q == 2 {
        out.push(("q = 2 branch", &pre * &bracket_q2(p)));
    }
    out
}
