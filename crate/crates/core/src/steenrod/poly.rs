use std::fmt;

use crate::error::{Error, Result};

/// Largest exponent accepted by [`Monomial::new`]. Squaring a monomial at this
/// bound still fits in `u32`.
pub const MAX_EXPONENT: u32 = (1 << 31) - 1;

/// A monomial `x1^e1 * ... * xk^ek`, stored as its exponent vector.
///
/// The derived ordering is lexicographic on the exponent tuple. It is the one
/// canonical monomial order used for basis indexing and for all output.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Result<Self> {
        if exps.is_empty() {
            return Err(Error::InvalidArgument(
                "a monomial needs at least one variable".into(),
            ));
        }
        if let Some(&e) = exps.iter().find(|&&e| e > MAX_EXPONENT) {
            return Err(Error::ExponentTooLarge(u64::from(e)));
        }
        Ok(Monomial {
            exps: exps.into_boxed_slice(),
        })
    }

    /// Constructs without validation; callers guarantee `k >= 1`.
    pub(crate) fn from_boxed(exps: Box<[u32]>) -> Self {
        debug_assert!(!exps.is_empty());
        Monomial { exps }
    }

    /// The constant monomial `1` in `k` variables.
    pub fn one(k: usize) -> Self {
        assert!(k >= 1, "a monomial needs at least one variable");
        Monomial {
            exps: vec![0; k].into_boxed_slice(),
        }
    }

    /// The variable `x_{index+1}` in `k` variables.
    pub fn var(k: usize, index: usize) -> Self {
        let mut m = Self::one(k);
        m.exps[index] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        if self.nvars() != other.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.nvars(),
                found: other.nvars(),
                monomial: other.to_string(),
            });
        }
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial {
            exps: exps.into_boxed_slice(),
        })
    }

    /// Every exponent doubled.
    pub fn squared(&self) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .map(|&e| e.checked_mul(2).expect("exponent overflow while squaring"))
                .collect(),
        }
    }

    /// Pads with zero exponents up to `k` variables.
    pub fn embed(&self, k: usize) -> Result<Monomial> {
        if k < self.nvars() {
            return Err(Error::ArityMismatch {
                expected: k,
                found: self.nvars(),
                monomial: self.to_string(),
            });
        }
        let mut exps = self.exps.to_vec();
        exps.resize(k, 0);
        Ok(Monomial {
            exps: exps.into_boxed_slice(),
        })
    }
}

impl fmt::Display for Monomial {
    /// Formats as `x1^2*x3`; the constant monomial prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

/// A homogeneous polynomial over F2: a set of monomials of one degree and one
/// arity, kept sorted in the canonical order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyF2 {
    terms: Vec<Monomial>,
}

impl PolyF2 {
    pub fn zero() -> Self {
        PolyF2 { terms: Vec::new() }
    }

    /// Builds a polynomial from a list of monomials. Repeated monomials
    /// cancel in pairs.
    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(iter: I) -> Result<Self> {
        let mut terms: Vec<Monomial> = iter.into_iter().collect();
        terms.sort_unstable();
        let mut out: Vec<Monomial> = Vec::with_capacity(terms.len());
        for m in terms {
            if out.last() == Some(&m) {
                out.pop();
            } else {
                out.push(m);
            }
        }
        let p = PolyF2 { terms: out };
        p.check_homogeneous()?;
        Ok(p)
    }

    /// Trusted constructor: `terms` must be strictly increasing and homogeneous.
    pub(crate) fn from_sorted_unchecked(terms: Vec<Monomial>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0] < w[1]));
        PolyF2 { terms }
    }

    fn check_homogeneous(&self) -> Result<()> {
        let Some(first) = self.terms.first() else {
            return Ok(());
        };
        let (d, k) = (first.degree(), first.nvars());
        for m in &self.terms[1..] {
            if m.nvars() != k {
                return Err(Error::ArityMismatch {
                    expected: k,
                    found: m.nvars(),
                    monomial: m.to_string(),
                });
            }
            if m.degree() != d {
                return Err(Error::NonHomogeneous {
                    expected: d,
                    found: m.degree(),
                    monomial: m.to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.first().map(Monomial::degree)
    }

    pub fn nvars(&self) -> Option<usize> {
        self.terms.first().map(Monomial::nvars)
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.binary_search(m).is_ok()
    }

    pub fn into_terms(self) -> Vec<Monomial> {
        self.terms
    }

    /// Sum over F2 (symmetric difference of the term sets).
    ///
    /// Panics if both sides are non-zero and of different degree or arity.
    pub fn add(&self, other: &PolyF2) -> PolyF2 {
        self.try_add(other)
            .expect("adding polynomials of different degrees")
    }

    pub fn try_add(&self, other: &PolyF2) -> Result<PolyF2> {
        if let (Some(a), Some(b)) = (self.terms.first(), other.terms.first()) {
            if a.nvars() != b.nvars() {
                return Err(Error::ArityMismatch {
                    expected: a.nvars(),
                    found: b.nvars(),
                    monomial: b.to_string(),
                });
            }
            if a.degree() != b.degree() {
                return Err(Error::NonHomogeneous {
                    expected: a.degree(),
                    found: b.degree(),
                    monomial: b.to_string(),
                });
            }
        }
        Ok(PolyF2 {
            terms: sym_diff(&self.terms, &other.terms),
        })
    }

    pub fn add_assign(&mut self, other: &PolyF2) {
        *self = self.add(other);
    }

    /// Product over F2.
    pub fn mul(&self, other: &PolyF2) -> Result<PolyF2> {
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(a.checked_mul(b)?);
            }
        }
        PolyF2::from_monomials(terms)
    }

    /// Every term embedded into `k` variables.
    pub fn embed(&self, k: usize) -> Result<PolyF2> {
        let terms = self
            .terms
            .iter()
            .map(|m| m.embed(k))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyF2::from_sorted_unchecked(terms))
    }
}

impl From<Monomial> for PolyF2 {
    fn from(m: Monomial) -> Self {
        PolyF2 { terms: vec![m] }
    }
}

fn sym_diff(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl fmt::Display for PolyF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyF2({self})")
    }
}
