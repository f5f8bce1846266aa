//! Brute-force reference for small instances.
//!
//! The hit space is spanned here by every `Sq^i(g)` with `1 <= i <= d`, with
//! no filtering, and ranks come from a dense byte-per-entry Gauss-Jordan
//! elimination that shares no code with [`crate::gf2`].

use crate::basis::{basis_dimension, DegreeBasis};
use crate::error::{Error, Result};
use crate::gf2::SparseColumnSet;
use crate::steenrod::{sq_recursive, PolyF2};

/// Largest basis the oracle accepts.
pub const ORACLE_CAP: u64 = 5000;

/// A span of dense 0/1 rows kept in reduced row echelon form.
#[derive(Debug, Clone)]
pub struct DenseSpan {
    width: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl DenseSpan {
    pub fn new(width: usize) -> Self {
        DenseSpan {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [u8]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p] == 1 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a ^= b;
                }
            }
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<u8>) -> bool {
        assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|&x| x == 1) else {
            return false;
        };
        for row in self.rows.iter_mut() {
            if row[p] == 1 {
                for (a, b) in row.iter_mut().zip(&v) {
                    *a ^= b;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(|&x| x == 0)
    }
}

/// Rank of a sparse column set by dense elimination.
pub fn dense_rank(m: &SparseColumnSet) -> usize {
    let mut span = DenseSpan::new(m.n_rows());
    for col in m.columns() {
        let mut v = vec![0u8; m.n_rows()];
        for &r in col {
            v[r as usize] ^= 1;
        }
        span.insert(v);
    }
    span.rank()
}

fn dense_coords(basis: &DegreeBasis, f: &PolyF2) -> Result<Vec<u8>> {
    let mut v = vec![0u8; basis.len()];
    for m in f.terms() {
        let i = basis.index_of(m).ok_or_else(|| Error::DegreeMismatch {
            expected: basis.degree(),
            found: m.degree(),
            monomial: m.to_string(),
        })?;
        v[i] ^= 1;
    }
    Ok(v)
}

/// Span of all `Sq^i(g)`, `1 <= i <= d`, `deg g = d - i`.
pub fn oracle_hit_span(k: usize, d: u64) -> Result<(DegreeBasis, DenseSpan)> {
    let n = basis_dimension(k, d)?;
    if n > ORACLE_CAP {
        return Err(Error::ResourceLimit {
            what: "oracle basis size",
            projected: n.into(),
            cap: ORACLE_CAP.into(),
        });
    }
    let basis = DegreeBasis::new(k, d, ORACLE_CAP)?;
    let mut span = DenseSpan::new(basis.len());
    for i in 1..=d {
        let source = DegreeBasis::new(k, d - i, u64::MAX)?;
        for g in source.monomials() {
            let image = sq_recursive(i, g);
            span.insert(dense_coords(&basis, &image)?);
        }
    }
    Ok((basis, span))
}

pub fn oracle_hit_rank(k: usize, d: u64) -> Result<u64> {
    Ok(oracle_hit_span(k, d)?.1.rank() as u64)
}

/// Membership of `f` in the span of all `Sq^i` images, `i > 0`.
pub fn oracle_decide_hit(f: &PolyF2, k: usize) -> Result<bool> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    let f = f.embed(k)?;
    let (basis, span) = oracle_hit_span(k, d)?;
    Ok(span.contains(&dense_coords(&basis, &f)?))
}
