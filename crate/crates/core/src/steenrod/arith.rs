use std::fmt;

use crate::error::{Error, Result};
use crate::steenrod::Monomial;

/// Number of ones in the binary expansion of `n`.
#[inline]
pub fn alpha(n: u64) -> u32 {
    n.count_ones()
}

/// Smallest `l >= 1` with `alpha(n + l) <= l`.
///
/// Equivalently the least number of summands of the form `2^u - 1` (`u > 0`)
/// adding up to `n`. The scan stops at `l = n` at the latest, since
/// `alpha(2n) = alpha(n) <= n`.
pub fn mu(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("mu is defined for n >= 1".into()));
    }
    let mut l = 1u64;
    loop {
        let total = n
            .checked_add(l)
            .ok_or_else(|| Error::InvalidArgument(format!("mu({n}) overflows u64")))?;
        if u64::from(alpha(total)) <= l {
            return Ok(l);
        }
        l += 1;
    }
}

/// `C(e, i) mod 2` by Lucas: odd iff the bits of `i` are a subset of the bits of `e`.
#[inline]
pub fn binom_mod2(e: u64, i: u64) -> bool {
    i <= e && (i & (e - i)) == 0
}

/// Per-bit column sums of the exponents of a monomial.
///
/// Entry `j` (0-based) counts the exponents whose bit `j` is set. Trailing
/// zeros are trimmed, so the constant monomial has the empty weight vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WeightVector(pub Vec<u32>);

impl WeightVector {
    /// `sum_j 2^j * w_j`, which recovers the degree of the source monomial.
    pub fn degree(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(j, &w)| u64::from(w) << j)
            .sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

pub fn weight_vector(m: &Monomial) -> WeightVector {
    let mut w = Vec::new();
    for bit in 0..32 {
        let count = m
            .exponents()
            .iter()
            .filter(|&&e| (e >> bit) & 1 == 1)
            .count() as u32;
        w.push(count);
    }
    while w.last() == Some(&0) {
        w.pop();
    }
    WeightVector(w)
}
