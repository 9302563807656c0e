//! Seiberg–Witten invariants as Laurent polynomials.
//!
//! Three constructions are provided:
//!
//! * [`sw_link_surgery`]: the link-surgery manifold `E(n,r)_{L_{p,q}}`, in
//!   `(xi, tau)`, as `(xi^-1 - xi)^{n-1} (xi^-q - xi^q)^{r-1} Δ^sym(xi^2, tau^2)`.
//! * [`sw_fiber_sum_general`]: the fiber sum `X #_{T_{p,q}=F} E(r)` for an
//!   arbitrary finite SW polynomial of `X`, with `[F]` a ring variable.
//! * [`collapse`]: the specialization `tau = [F]`.
//!
//! The fiber class of the second elliptic surface is identified with `q`
//! times the first, which is why its prefactor is written in powers of the
//! same variable rather than a new one.
//!
//! [`sw_fiber_sum_general`] accepts whatever polynomial it is given; checking
//! `b2+(X) > 1` (so that the SW invariant is a finite sum) is the caller's job.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::alexander::{self, AlexanderError, TAU, XI, XI_TAU};
use crate::braid::{self, BraidError, FamilyParams};
use crate::ring::{LaurentPolynomial, RingError, Sign, Substitution};

/// Default name for the fiber class `[F]`.
pub const F: &str = "f";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SwError {
    #[error("fiber variable `{0}` is not a variable of the input polynomial")]
    MissingFiberVariable(String),
    #[error("input polynomial already uses `tau`")]
    TauPresent,
    #[error("polynomial has no `tau` variable to collapse")]
    TauMissing,
    #[error(transparent)]
    Alexander(#[from] AlexanderError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// How an invariant was obtained, with the parameters it was built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    LinkSurgery(FamilyParams),
    GeneralFiberSum { fiber_var: String, p: u32, q: u32, r: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SwInvariant {
    pub poly: LaurentPolynomial,
    pub provenance: Provenance,
}

impl SwInvariant {
    /// The variable that plays the role of the fiber class.
    pub fn fiber_var(&self) -> &str {
        match &self.provenance {
            Provenance::LinkSurgery(_) => XI,
            Provenance::GeneralFiberSum { fiber_var, .. } => fiber_var,
        }
    }
}

/// `(v^-k - v^k)^e` in the ring `vars`, where `v` is `vars[idx]`.
fn anti_binomial_power(vars: &[String], idx: usize, k: i64, e: u32) -> LaurentPolynomial {
    let mut lo = vec![0; vars.len()];
    let mut hi = vec![0; vars.len()];
    lo[idx] = -k;
    hi[idx] = k;
    let base = LaurentPolynomial::from_terms(vars, [(lo, BigInt::one()), (hi, -BigInt::one())])
        .expect("exponent lengths match");
    base.power(e)
}

/// `SW(E(n)) = (f^-1 - f)^{n-2}` in the single variable `f`, for `n ≥ 2`.
pub fn elliptic_surface_sw(n: u32) -> Result<LaurentPolynomial, SwError> {
    braid::require("n", n.into(), n >= 2, "n >= 2")?;
    Ok(anti_binomial_power(&[F.to_string()], 0, 1, n - 2))
}

/// SW invariant of `E(n,r)_{L_{p,q}}` in `(xi, tau)`.
pub fn sw_link_surgery(params: FamilyParams) -> Result<SwInvariant, SwError> {
    let FamilyParams { p, q, n, r } = FamilyParams::new(params.p, params.q, params.n, params.r)?;
    let vars: Vec<String> = XI_TAU.iter().map(|s| s.to_string()).collect();
    let bracket = alexander::symmetrize(p, q, &alexander::alexander_closed_form(p, q)?)?;
    let poly = &(&anti_binomial_power(&vars, 0, 1, n - 1) * &anti_binomial_power(&vars, 0, q.into(), r - 1))
        * &bracket;
    Ok(SwInvariant {
        poly,
        provenance: Provenance::LinkSurgery(params),
    })
}

/// SW invariant of `X #_{T_{p,q}=F} E(r)` given `sw_x = SW(X)`.
///
/// The result lives in `sw_x`'s ring extended by `tau` and equals
/// `sw_x · (f^-1 - f)(f^-q - f^q)^{r-1} Δ^sym_{p,q}(f^2, tau^2)` with `f = fiber_var`.
pub fn sw_fiber_sum_general(
    sw_x: &LaurentPolynomial,
    fiber_var: &str,
    r: u32,
    p: u32,
    q: u32,
) -> Result<SwInvariant, SwError> {
    let fidx = sw_x
        .var_index(fiber_var)
        .ok_or_else(|| SwError::MissingFiberVariable(fiber_var.to_string()))?;
    if sw_x.var_index(TAU).is_some() {
        return Err(SwError::TauPresent);
    }
    FamilyParams::new(p, q, 1, r)?;
    let extended = sw_x.extend(&[TAU])?;
    let vars = extended.vars().to_vec();

    let into_target = Substitution::new(&vars)?
        .map(XI, Sign::Plus, &[(fiber_var, 1)])?
        .map(TAU, Sign::Plus, &[(TAU, 1)])?;
    let bracket = alexander::symmetrize(p, q, &alexander::alexander_closed_form(p, q)?)?
        .substitute(&into_target)?;

    let prefactor = &anti_binomial_power(&vars, fidx, 1, 1) * &anti_binomial_power(&vars, fidx, q.into(), r - 1);
    let poly = &(&extended * &prefactor) * &bracket;
    Ok(SwInvariant {
        poly,
        provenance: Provenance::GeneralFiberSum {
            fiber_var: fiber_var.to_string(),
            p,
            q,
            r,
        },
    })
}

/// Sets `tau = fiber_var` and drops `tau` from the ring. Terms that land on
/// the same class are merged, so cancellation can shrink the support.
pub fn collapse(poly: &LaurentPolynomial, fiber_var: &str) -> Result<LaurentPolynomial, SwError> {
    if poly.var_index(TAU).is_none() {
        return Err(SwError::TauMissing);
    }
    if fiber_var == TAU || poly.var_index(fiber_var).is_none() {
        return Err(SwError::MissingFiberVariable(fiber_var.to_string()));
    }
    let target: Vec<&str> = poly
        .vars()
        .iter()
        .map(String::as_str)
        .filter(|v| *v != TAU)
        .collect();
    let mut sub = Substitution::new(&target)?.map(TAU, Sign::Plus, &[(fiber_var, 1)])?;
    for v in &target {
        sub = sub.map(v, Sign::Plus, &[(v, 1)])?;
    }
    Ok(poly.substitute(&sub)?)
}

/// The collapsed polynomial together with its number of terms.
pub fn collapse_count(sw: &SwInvariant) -> Result<(LaurentPolynomial, usize), SwError> {
    let collapsed = collapse(&sw.poly, sw.fiber_var())?;
    let count = collapsed.len();
    Ok((collapsed, count))
}
