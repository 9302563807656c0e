//! Exact computations for the braid-plus-axis links `L_{p,q}`: their
//! two-variable Alexander polynomials, the Seiberg–Witten invariants of the
//! link-surgery manifolds `E(n,r)_{L_{p,q}}` and of general fiber sums, and the
//! basic-class statistics used to tell those manifolds apart.
//!
//! All arithmetic is over `Z` with arbitrary precision; equality of results
//! is exact polynomial equality.

pub mod alexander;
pub mod braid;
pub mod classify;
pub mod cli;
pub mod oracle;
pub mod ring;
pub mod swcalc;

pub use alexander::{alexander_closed_form, alexander_general, alexander_via_determinant, symmetrize};
pub use braid::{braid_matrix, burau_generator, torus_family_braid, BraidWord, FamilyParams, Letter, PolyMatrix};
pub use classify::{basic_classes, count_formula, distinguish_q2, lambda_set, BasicClassReport};
pub use ring::{ExponentVector, LaurentPolynomial, Sign, Substitution};
pub use swcalc::{collapse_count, sw_fiber_sum_general, sw_link_surgery, SwInvariant};
