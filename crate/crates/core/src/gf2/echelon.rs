use crate::error::{Error, Result};
use crate::gf2::{BitVector, SparseColumnSet};

const NO_SLOT: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Insertion {
    /// The reduced column was stored with this pivot row.
    Independent { pivot: usize },
    /// The column reduced to zero.
    Absorbed,
}

#[derive(Debug, Clone)]
struct Tracking {
    n_cols: usize,
    // combos[s]: original columns whose XOR is vectors[s]
    combos: Vec<BitVector>,
    // one vector c with M c = 0 per absorbed column
    dependencies: Vec<BitVector>,
}

/// Incrementally built echelon form of a column space.
///
/// Every stored vector has its lowest set bit (its pivot) at a row that no
/// other stored vector uses as pivot, and no bits below it. With tracking
/// enabled each stored vector also records which original columns sum to it.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    n_rows: usize,
    slot_of_row: Vec<u32>,
    vectors: Vec<BitVector>,
    pivots: Vec<usize>,
    tracking: Option<Tracking>,
}

impl EchelonBasis {
    /// A basis that only tracks rank.
    pub fn new(n_rows: usize) -> Self {
        EchelonBasis {
            n_rows,
            slot_of_row: vec![NO_SLOT; n_rows],
            vectors: Vec::new(),
            pivots: Vec::new(),
            tracking: None,
        }
    }

    /// A basis that records combinations over `n_cols` original columns.
    pub fn with_tracking(n_rows: usize, n_cols: usize) -> Self {
        let mut b = Self::new(n_rows);
        b.tracking = Some(Tracking {
            n_cols,
            combos: Vec::new(),
            dependencies: Vec::new(),
        });
        b
    }

    /// Inserts every column of `m` in order, with tracking.
    pub fn from_matrix(m: &SparseColumnSet) -> Self {
        let mut b = Self::with_tracking(m.n_rows(), m.n_cols());
        for c in 0..m.n_cols() {
            b.insert_column(m.column_vector(c), c)
                .expect("columns of a well-formed matrix have the right length");
        }
        b
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> &[BitVector] {
        &self.vectors
    }

    /// Combination record of stored vector `slot`, if tracking.
    pub fn combination(&self, slot: usize) -> Option<&BitVector> {
        self.tracking.as_ref().map(|t| &t.combos[slot])
    }

    /// Null vectors collected from absorbed columns, if tracking.
    pub fn dependencies(&self) -> Option<&[BitVector]> {
        self.tracking.as_ref().map(|t| t.dependencies.as_slice())
    }

    /// Reduces `v` against the stored pivots. Returns the remainder and, when
    /// tracking, the combination of original columns that was added to `v`.
    pub fn reduce(&self, mut v: BitVector) -> Result<(BitVector, Option<BitVector>)> {
        self.check_len(&v)?;
        let mut combo = self.tracking.as_ref().map(|t| BitVector::zeros(t.n_cols));
        let mut word = 0;
        while let Some(p) = v.first_one_from_word(word) {
            word = p / 64;
            let slot = self.slot_of_row[p];
            if slot == NO_SLOT {
                // look past this bit for further reducible positions
                match self.next_reducible(&v, p) {
                    Some(q) => {
                        let s = self.slot_of_row[q] as usize;
                        v.xor_assign_from(&self.vectors[s], q / 64);
                        if let (Some(c), Some(t)) = (combo.as_mut(), self.tracking.as_ref()) {
                            c.xor_assign(&t.combos[s]);
                        }
                        continue;
                    }
                    None => break,
                }
            }
            let s = slot as usize;
            v.xor_assign_from(&self.vectors[s], word);
            if let (Some(c), Some(t)) = (combo.as_mut(), self.tracking.as_ref()) {
                c.xor_assign(&t.combos[s]);
            }
        }
        Ok((v, combo))
    }

    /// First set bit of `v` after `p` that is a stored pivot.
    fn next_reducible(&self, v: &BitVector, p: usize) -> Option<usize> {
        v.iter_ones()
            .skip_while(|&i| i <= p)
            .find(|&i| self.slot_of_row[i] != NO_SLOT)
    }

    /// Reduces `v` only until its lowest set bit is not a pivot. Cheaper than
    /// [`reduce`](Self::reduce) and enough to decide independence.
    fn reduce_to_new_pivot(
        &self,
        v: &mut BitVector,
        combo: &mut Option<BitVector>,
    ) -> Option<usize> {
        let mut word = 0;
        while let Some(p) = v.first_one_from_word(word) {
            word = p / 64;
            let slot = self.slot_of_row[p];
            if slot == NO_SLOT {
                return Some(p);
            }
            let s = slot as usize;
            v.xor_assign_from(&self.vectors[s], word);
            if let (Some(c), Some(t)) = (combo.as_mut(), self.tracking.as_ref()) {
                c.xor_assign(&t.combos[s]);
            }
        }
        None
    }

    /// Inserts column `tag`. The combination record starts as `e_tag`.
    pub fn insert_column(&mut self, mut v: BitVector, tag: usize) -> Result<Insertion> {
        self.check_len(&v)?;
        let mut combo = match &self.tracking {
            Some(t) => {
                if tag >= t.n_cols {
                    return Err(Error::InvalidArgument(format!(
                        "column tag {tag} out of range {}",
                        t.n_cols
                    )));
                }
                Some(BitVector::unit(t.n_cols, tag))
            }
            None => None,
        };
        match self.reduce_to_new_pivot(&mut v, &mut combo) {
            Some(p) => {
                self.slot_of_row[p] = self.vectors.len() as u32;
                self.vectors.push(v);
                self.pivots.push(p);
                if let (Some(t), Some(c)) = (self.tracking.as_mut(), combo) {
                    t.combos.push(c);
                }
                Ok(Insertion::Independent { pivot: p })
            }
            None => {
                if let (Some(t), Some(c)) = (self.tracking.as_mut(), combo) {
                    t.dependencies.push(c);
                }
                Ok(Insertion::Absorbed)
            }
        }
    }

    /// Whether `v` lies in the span of the inserted columns.
    pub fn contains(&self, v: &BitVector) -> Result<bool> {
        let mut v = v.clone();
        self.check_len(&v)?;
        Ok(self.reduce_to_new_pivot(&mut v, &mut None).is_none())
    }

    /// A combination `c` of original columns with `M c = b`, or `None` if `b`
    /// is outside the column space. Requires tracking.
    pub fn solve_combination(&self, b: &BitVector) -> Result<Option<BitVector>> {
        let Some(t) = &self.tracking else {
            return Err(Error::InvalidArgument(
                "solve needs an echelon basis with combination tracking".into(),
            ));
        };
        let mut v = b.clone();
        self.check_len(&v)?;
        let mut combo = Some(BitVector::zeros(t.n_cols));
        if self.reduce_to_new_pivot(&mut v, &mut combo).is_some() {
            return Ok(None);
        }
        Ok(combo)
    }

    fn check_len(&self, v: &BitVector) -> Result<()> {
        if v.len() != self.n_rows {
            return Err(Error::LengthMismatch {
                expected: self.n_rows,
                found: v.len(),
            });
        }
        Ok(())
    }
}

/// Solves `M c = b`. The returned `c` is checked against `M` before it is
/// returned.
pub fn solve(m: &SparseColumnSet, b: &BitVector) -> Result<Option<BitVector>> {
    if b.len() != m.n_rows() {
        return Err(Error::LengthMismatch {
            expected: m.n_rows(),
            found: b.len(),
        });
    }
    let basis = EchelonBasis::from_matrix(m);
    solve_with(&basis, m, b)
}

/// [`solve`] against an already built basis of `m`.
pub fn solve_with(
    basis: &EchelonBasis,
    m: &SparseColumnSet,
    b: &BitVector,
) -> Result<Option<BitVector>> {
    let Some(c) = basis.solve_combination(b)? else {
        return Ok(None);
    };
    if &m.mul_vector(&c)? != b {
        return Err(Error::CertificateFailed(
            "selected columns do not sum to the right-hand side".into(),
        ));
    }
    Ok(Some(c))
}

/// A basis of `{c : M c = 0}`, one vector per column that was dependent on
/// its predecessors.
pub fn nullspace_basis(m: &SparseColumnSet) -> Result<Vec<BitVector>> {
    let basis = EchelonBasis::from_matrix(m);
    let deps = basis.dependencies().expect("tracking enabled").to_vec();
    for c in &deps {
        if !m.mul_vector(c)?.is_zero() {
            return Err(Error::CertificateFailed(
                "null vector does not annihilate M".into(),
            ));
        }
    }
    Ok(deps)
}
