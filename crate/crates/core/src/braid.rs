//! Braid words, their reduced Burau-type matrices over `Z[t^±1]`, and a
//! division-free determinant for square matrices of Laurent polynomials.
//!
//! The generator `σ_i` on `q` strands maps to the `(q-1)×(q-1)` matrix that
//! agrees with the identity except on row `i`, which reads `t, -t, 1` in
//! columns `i-1, i, i+1` (truncated at the borders). A word maps to the
//! product of its generator matrices taken left to right in reading order.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{LaurentPolynomial, RingError, Sign, Substitution};

/// Name of the Burau variable.
pub const T: &str = "t";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("a braid needs at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("generator σ_{generator} is out of range for {strands} strands")]
    GeneratorOutOfRange { generator: usize, strands: usize },
    #[error("parameter {name} = {value} violates {requirement}")]
    ParameterOutOfRange {
        name: &'static str,
        value: i64,
        requirement: &'static str,
    },
    #[error("matrix rows must all have length {expected}, found {found}")]
    NotSquare { expected: usize, found: usize },
    #[error("matrix sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("malformed braid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Checks `value` against a lower bound, naming the parameter on failure.
pub(crate) fn require(
    name: &'static str,
    value: i64,
    ok: bool,
    requirement: &'static str,
) -> Result<(), BraidError> {
    if ok {
        Ok(())
    } else {
        Err(BraidError::ParameterOutOfRange {
            name,
            value,
            requirement,
        })
    }
}

/// The integer tuple `(p, q, n, r)`: braid family indices and the two
/// elliptic-surface multiplicities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyParams {
    pub p: u32,
    pub q: u32,
    pub n: u32,
    pub r: u32,
}

impl FamilyParams {
    /// Accepts `p ≥ 1, q ≥ 2, n ≥ 1, r ≥ 1`.
    pub fn new(p: u32, q: u32, n: u32, r: u32) -> Result<Self, BraidError> {
        require("p", p.into(), p >= 1, "p >= 1")?;
        require("q", q.into(), q >= 2, "q >= 2")?;
        require("n", n.into(), n >= 1, "n >= 1")?;
        require("r", r.into(), r >= 1, "r >= 1")?;
        Ok(FamilyParams { p, q, n, r })
    }
}

/// One letter `σ_i^{±1}` of a braid word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(generator: usize) -> Self {
        Letter {
            generator,
            sign: Sign::Plus,
        }
    }

    pub fn neg(generator: usize) -> Self {
        Letter {
            generator,
            sign: Sign::Minus,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "WireBraid", try_from = "WireBraid")]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, BraidError> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        if let Some(bad) = letters
            .iter()
            .find(|l| l.generator == 0 || l.generator >= strands)
        {
            return Err(BraidError::GeneratorOutOfRange {
                generator: bad.generator,
                strands,
            });
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("braid serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self, BraidError> {
        serde_json::from_str(s).map_err(|e| BraidError::Json(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireBraid {
    strands: usize,
    letters: Vec<(usize, i64)>,
}

impl From<BraidWord> for WireBraid {
    fn from(w: BraidWord) -> Self {
        WireBraid {
            strands: w.strands,
            letters: w
                .letters
                .iter()
                .map(|l| (l.generator, l.sign.as_i64()))
                .collect(),
        }
    }
}

impl TryFrom<WireBraid> for BraidWord {
    type Error = BraidError;

    fn try_from(w: WireBraid) -> Result<Self, BraidError> {
        let letters = w
            .letters
            .into_iter()
            .map(|(generator, s)| {
                let sign = Sign::from_i64(s).ok_or_else(|| {
                    BraidError::Json(format!("letter sign must be 1 or -1, got {s}"))
                })?;
                Ok(Letter { generator, sign })
            })
            .collect::<Result<Vec<_>, BraidError>>()?;
        BraidWord::new(w.strands, letters)
    }
}

/// The word `σ_{q-1} σ_{q-2} ⋯ σ_2 σ_1^{2p-1}` on `q` strands.
pub fn torus_family_braid(p: u32, q: u32) -> Result<BraidWord, BraidError> {
    require("p", p.into(), p >= 1, "p >= 1")?;
    require("q", q.into(), q >= 2, "q >= 2")?;
    let q = q as usize;
    let letters = (2..q)
        .rev()
        .map(Letter::pos)
        .chain(std::iter::repeat_n(Letter::pos(1), 2 * p as usize - 1))
        .collect();
    BraidWord::new(q, letters)
}

/// Square matrix of Laurent polynomials over a shared variable list, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    size: usize,
    vars: Vec<String>,
    entries: Vec<LaurentPolynomial>,
}

impl PolyMatrix {
    pub fn identity<S: AsRef<str>>(size: usize, vars: &[S]) -> Self {
        assert!(size >= 1, "matrix size must be at least 1");
        let zero = LaurentPolynomial::zero(vars);
        let one = LaurentPolynomial::one(vars);
        let entries = (0..size * size)
            .map(|k| if k / size == k % size { one.clone() } else { zero.clone() })
            .collect();
        PolyMatrix {
            size,
            vars: zero.vars().to_vec(),
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPolynomial>>) -> Result<Self, BraidError> {
        let size = rows.len();
        if size == 0 {
            return Err(BraidError::NotSquare {
                expected: 1,
                found: 0,
            });
        }
        let vars = rows[0]
            .first()
            .map(|p| p.vars().to_vec())
            .unwrap_or_default();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(BraidError::NotSquare {
                    expected: size,
                    found: row.len(),
                });
            }
            for e in row {
                if e.vars() != vars.as_slice() {
                    return Err(RingError::VariableMismatch {
                        left: vars,
                        right: e.vars().to_vec(),
                    }
                    .into());
                }
                entries.push(e);
            }
        }
        Ok(PolyMatrix {
            size,
            vars,
            entries,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn get(&self, row: usize, col: usize) -> &LaurentPolynomial {
        &self.entries[row * self.size + col]
    }

    fn set(&mut self, row: usize, col: usize, value: LaurentPolynomial) {
        self.entries[row * self.size + col] = value;
    }

    pub fn row(&self, row: usize) -> &[LaurentPolynomial] {
        &self.entries[row * self.size..(row + 1) * self.size]
    }

    fn check_compatible(&self, other: &PolyMatrix) -> Result<(), BraidError> {
        if self.size != other.size {
            return Err(BraidError::SizeMismatch(self.size, other.size));
        }
        if self.vars != other.vars {
            return Err(RingError::VariableMismatch {
                left: self.vars.clone(),
                right: other.vars.clone(),
            }
            .into());
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, BraidError> {
        self.check_compatible(other)?;
        let m = self.size;
        let mut out = PolyMatrix {
            size: m,
            vars: self.vars.clone(),
            entries: vec![LaurentPolynomial::zero(&self.vars); m * m],
        };
        for i in 0..m {
            for k in 0..m {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let updated = out.get(i, j) + &(a * b);
                    out.set(i, j, updated);
                }
            }
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &PolyMatrix) -> Result<PolyMatrix, BraidError> {
        self.check_compatible(other)?;
        Ok(PolyMatrix {
            size: self.size,
            vars: self.vars.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Multiplies every entry by `c`.
    pub fn scale(&self, c: &LaurentPolynomial) -> Result<PolyMatrix, BraidError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.try_mul(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolyMatrix {
            size: self.size,
            vars: self.vars.clone(),
            entries,
        })
    }

    pub fn power(&self, k: u32) -> PolyMatrix {
        let mut result = PolyMatrix::identity(self.size, &self.vars);
        for _ in 0..k {
            result = result.try_mul(self).expect("same ring and size");
        }
        result
    }

    /// Applies a ring substitution entrywise.
    pub fn substitute(&self, sub: &Substitution) -> Result<PolyMatrix, BraidError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.substitute(sub))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolyMatrix {
            size: self.size,
            vars: sub.target().to_vec(),
            entries,
        })
    }

    /// Exact determinant by expansion over column subsets.
    ///
    /// `partial[S]` holds the signed sum over all ways of placing the first
    /// `|S|` rows into the columns `S`. Every step is a ring multiplication
    /// or addition, so no division is ever needed. Cost is `O(2^m · m)` ring
    /// operations; zero entries and empty states are skipped.
    pub fn determinant(&self) -> LaurentPolynomial {
        let m = self.size;
        assert!(m < usize::BITS as usize, "matrix too large for subset expansion");
        let full = (1usize << m) - 1;
        let mut partial: Vec<Option<LaurentPolynomial>> = vec![None; 1 << m];
        partial[0] = Some(LaurentPolynomial::one(&self.vars));
        for mask in 0..full {
            let Some(acc) = partial[mask].take() else {
                continue;
            };
            if acc.is_zero() {
                continue;
            }
            let row = mask.count_ones() as usize;
            for col in 0..m {
                let bit = 1usize << col;
                if mask & bit != 0 {
                    continue;
                }
                let entry = self.get(row, col);
                if entry.is_zero() {
                    continue;
                }
                // inversions contributed by placing `col` after larger columns
                let crossings = (mask >> (col + 1)).count_ones();
                let mut term = &acc * entry;
                if crossings % 2 == 1 {
                    term = -term;
                }
                let slot = &mut partial[mask | bit];
                *slot = Some(match slot.take() {
                    Some(s) => &s + &term,
                    None => term,
                });
            }
        }
        partial[full]
            .take()
            .unwrap_or_else(|| LaurentPolynomial::zero(&self.vars))
    }
}

/// The matrix of `σ_i^{sign}` on `q` strands over `Z[t^±1]`.
///
/// For `sign = -1` row `i` reads `1, -t^-1, t^-1`, the exact inverse.
pub fn burau_generator(q: usize, i: usize, sign: Sign) -> Result<PolyMatrix, BraidError> {
    if q < 2 {
        return Err(BraidError::TooFewStrands(q));
    }
    if i == 0 || i >= q {
        return Err(BraidError::GeneratorOutOfRange {
            generator: i,
            strands: q,
        });
    }
    let m = q - 1;
    let vars = [T];
    let mono = |e: i64, c: i64| LaurentPolynomial::monomial(&vars, &[e], BigInt::from(c));
    let (left, diag, right) = match sign {
        Sign::Plus => (mono(1, 1), mono(1, -1), mono(0, 1)),
        Sign::Minus => (mono(0, 1), mono(-1, -1), mono(-1, 1)),
    };
    let mut mat = PolyMatrix::identity(m, &vars);
    let row = i - 1;
    if row >= 1 {
        mat.set(row, row - 1, left);
    }
    mat.set(row, row, diag);
    if row + 1 < m {
        mat.set(row, row + 1, right);
    }
    Ok(mat)
}

/// Product of the generator matrices of `word`, left to right; identity for
/// the empty word.
pub fn braid_matrix(word: &BraidWord) -> PolyMatrix {
    let q = word.strands();
    word.letters().iter().fold(
        PolyMatrix::identity(q - 1, &[T]),
        |acc, l| {
            let g = burau_generator(q, l.generator, l.sign).expect("letters validated by BraidWord");
            acc.try_mul(&g).expect("same ring and size")
        },
    )
}
