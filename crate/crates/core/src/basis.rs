//! The monomial basis of a degree slice `P_k^d` and its coordinate map to
//! `F2^N`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::steenrod::{Monomial, PolyF2, MAX_EXPONENT};

/// Largest basis enumerated unless the caller raises the cap.
pub const DEFAULT_BASIS_CAP: u64 = 1 << 27;

/// `C(n, r)` in exact arithmetic, `None` on overflow of `u64`.
pub(crate) fn binomial(n: u64, r: u64) -> Option<u64> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 1..=u128::from(r) {
        // acc * (n - r + i) / i stays integral at every step
        acc = acc.checked_mul(u128::from(n - r) + i)? / i;
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    u64::try_from(acc).ok()
}

/// Number of monomials of degree `d` in `k` variables, `C(d+k-1, k-1)`.
pub fn basis_dimension(k: usize, d: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let k = k as u64;
    let n = d
        .checked_add(k - 1)
        .ok_or_else(|| Error::InvalidArgument("degree overflows".into()))?;
    binomial(n, k - 1).ok_or(Error::ResourceLimit {
        what: "basis size",
        projected: u128::MAX,
        cap: u128::from(u64::MAX),
    })
}

/// All monomials of degree `d` in `k` variables, in canonical (lexicographic)
/// order, together with a constant-time-per-variable index map.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    k: usize,
    d: u64,
    monomials: Vec<Monomial>,
    // binom[n * (k + 1) + r] = C(n, r) for n <= d + k, r <= k
    binom: Vec<u64>,
}

pub fn enumerate_basis(k: usize, d: u64) -> Result<DegreeBasis> {
    DegreeBasis::new(k, d, DEFAULT_BASIS_CAP)
}

impl DegreeBasis {
    pub fn new(k: usize, d: u64, cap: u64) -> Result<Self> {
        let n = basis_dimension(k, d)?;
        if n > cap {
            return Err(Error::ResourceLimit {
                what: "basis size",
                projected: u128::from(n),
                cap: u128::from(cap),
            });
        }
        if d > u64::from(MAX_EXPONENT) {
            return Err(Error::ExponentTooLarge(d));
        }

        let mut monomials = Vec::with_capacity(n as usize);
        let mut exps = vec![0u32; k];
        exps[k - 1] = d as u32;
        loop {
            monomials.push(Monomial::from_boxed(exps.clone().into_boxed_slice()));
            if !next_composition(&mut exps) {
                break;
            }
        }
        debug_assert_eq!(monomials.len() as u64, n);

        let rows = d as usize + k + 1;
        let width = k + 1;
        let mut binom = vec![0u64; rows * width];
        for n in 0..rows {
            binom[n * width] = 1;
            for r in 1..width.min(n + 1) {
                let v = binom[(n - 1) * width + r - 1].saturating_add(binom[(n - 1) * width + r]);
                binom[n * width + r] = v;
            }
        }

        Ok(DegreeBasis {
            k,
            d,
            monomials,
            binom,
        })
    }

    pub fn nvars(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> u64 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn monomial(&self, index: usize) -> &Monomial {
        &self.monomials[index]
    }

    #[inline]
    fn c(&self, n: u64, r: usize) -> u64 {
        self.binom[n as usize * (self.k + 1) + r]
    }

    /// Position of a monomial given by its exponents. The caller guarantees
    /// arity `k` and degree `d`.
    #[inline]
    pub(crate) fn index_of_exponents(&self, exps: &[u32]) -> usize {
        debug_assert_eq!(exps.len(), self.k);
        // Count the compositions that are lexicographically smaller, one
        // leading position at a time (hockey-stick identity per position).
        let mut remaining = self.d;
        let mut rank = 0u64;
        for (p, &e) in exps[..self.k - 1].iter().enumerate() {
            let m = self.k - p - 1;
            let e = u64::from(e);
            rank += self.c(remaining + m as u64, m) - self.c(remaining - e + m as u64, m);
            remaining -= e;
        }
        rank as usize
    }

    /// Position of `m`, or `None` if it has the wrong arity or degree.
    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        if m.nvars() != self.k || m.degree() != self.d {
            return None;
        }
        Some(self.index_of_exponents(m.exponents()))
    }

    fn check_member(&self, m: &Monomial) -> Result<usize> {
        if m.nvars() != self.k {
            return Err(Error::ArityMismatch {
                expected: self.k,
                found: m.nvars(),
                monomial: m.to_string(),
            });
        }
        if m.degree() != self.d {
            return Err(Error::DegreeMismatch {
                expected: self.d,
                found: m.degree(),
                monomial: m.to_string(),
            });
        }
        Ok(self.index_of_exponents(m.exponents()))
    }

    /// The coordinate vector of `f`: bit `i` is set iff basis monomial `i`
    /// is a term of `f`.
    pub fn to_coordinates(&self, f: &PolyF2) -> Result<BitVector> {
        let mut v = BitVector::zeros(self.len());
        for m in f.terms() {
            v.flip(self.check_member(m)?);
        }
        Ok(v)
    }

    /// Sorted row indices of the terms of `f`.
    pub fn indices(&self, f: &PolyF2) -> Result<Vec<u32>> {
        let mut idx = f
            .terms()
            .iter()
            .map(|m| self.check_member(m).map(|i| i as u32))
            .collect::<Result<Vec<_>>>()?;
        idx.sort_unstable();
        Ok(idx)
    }

    pub fn from_coordinates(&self, v: &BitVector) -> Result<PolyF2> {
        if v.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: v.len(),
            });
        }
        Ok(PolyF2::from_sorted_unchecked(
            v.iter_ones().map(|i| self.monomials[i].clone()).collect(),
        ))
    }

    /// One monomial per line, in canonical order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for m in &self.monomials {
            let _ = writeln!(out, "{m}");
        }
        out
    }
}

/// Advances `exps` to the next composition of the same sum in lexicographic
/// order. Returns `false` after the last one, `(d, 0, ..., 0)`.
fn next_composition(exps: &mut [u32]) -> bool {
    let k = exps.len();
    let Some(last) = (1..k).rev().find(|&i| exps[i] > 0) else {
        return false;
    };
    let carry = exps[last] - 1;
    exps[last] = 0;
    exps[last - 1] += 1;
    exps[k - 1] = carry;
    true
}
