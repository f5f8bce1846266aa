use std::io::{self, BufRead, Write};

use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// A GF(2) matrix stored column by column: each column is the strictly
/// increasing list of row indices holding a one.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseColumnSet {
    n_rows: usize,
    starts: Vec<usize>,
    rows: Vec<u32>,
}

impl SparseColumnSet {
    pub fn new(n_rows: usize) -> Self {
        assert!(
            n_rows <= u32::MAX as usize,
            "row count exceeds u32 indexing"
        );
        SparseColumnSet {
            n_rows,
            starts: vec![0],
            rows: Vec::new(),
        }
    }

    pub fn from_columns<I, C>(n_rows: usize, columns: I) -> Result<Self>
    where
        I: IntoIterator<Item = C>,
        C: AsRef<[u32]>,
    {
        let mut m = Self::new(n_rows);
        for c in columns {
            m.push_column(c.as_ref())?;
        }
        Ok(m)
    }

    pub fn push_column(&mut self, rows: &[u32]) -> Result<()> {
        if let Some(&last) = rows.last() {
            if last as usize >= self.n_rows {
                return Err(Error::InvalidArgument(format!(
                    "row index {last} out of range for {} rows",
                    self.n_rows
                )));
            }
        }
        if rows.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "column row indices must be strictly increasing".into(),
            ));
        }
        self.rows.extend_from_slice(rows);
        self.starts.push(self.rows.len());
        Ok(())
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.starts.len() - 1
    }

    pub fn nnz(&self) -> usize {
        self.rows.len()
    }

    pub fn column(&self, c: usize) -> &[u32] {
        &self.rows[self.starts[c]..self.starts[c + 1]]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.n_cols()).map(move |c| self.column(c))
    }

    pub fn column_vector(&self, c: usize) -> BitVector {
        BitVector::from_indices(self.n_rows, self.column(c))
    }

    /// `M c`: the XOR of the columns selected by `c`.
    pub fn mul_vector(&self, c: &BitVector) -> Result<BitVector> {
        if c.len() != self.n_cols() {
            return Err(Error::LengthMismatch {
                expected: self.n_cols(),
                found: c.len(),
            });
        }
        let mut out = BitVector::zeros(self.n_rows);
        for j in c.iter_ones() {
            for &r in self.column(j) {
                out.flip(r as usize);
            }
        }
        Ok(out)
    }

    /// Same matrix with columns in the order given by `perm`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        let mut m = Self::new(self.n_rows);
        for &c in perm {
            m.push_column(self.column(c)).expect("column already valid");
        }
        m
    }

    /// Writes the matrix in SMS triple format: a `n_rows n_cols M` header,
    /// one `i j 1` line per non-zero (1-based, row-major), then `0 0 0`.
    pub fn write_sms<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{} {} M", self.n_rows, self.n_cols())?;
        let mut entries: Vec<(u32, u32)> = Vec::with_capacity(self.nnz());
        for c in 0..self.n_cols() {
            entries.extend(self.column(c).iter().map(|&r| (r, c as u32)));
        }
        entries.sort_unstable();
        for (r, c) in entries {
            writeln!(out, "{} {} 1", r + 1, c + 1)?;
        }
        writeln!(out, "0 0 0")
    }

    pub fn to_sms_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_sms(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }

    /// Parses the SMS triple format. Values are reduced mod 2.
    pub fn read_sms<R: BufRead>(input: R) -> Result<Self> {
        let bad = |msg: String| Error::InvalidArgument(format!("SMS input: {msg}"));
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| bad("empty input".into()))?
            .map_err(|e| bad(e.to_string()))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 3 || h[2] != "M" {
            return Err(bad(format!("bad header {header:?}")));
        }
        let n_rows: usize = h[0].parse().map_err(|_| bad("bad row count".into()))?;
        let n_cols: usize = h[1].parse().map_err(|_| bad("bad column count".into()))?;
        let mut cols: Vec<Vec<u32>> = vec![Vec::new(); n_cols];
        let mut terminated = false;
        for line in lines {
            let line = line.map_err(|e| bad(e.to_string()))?;
            let t: Vec<i64> = line
                .split_whitespace()
                .map(|s| s.parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad(format!("bad entry {line:?}")))?;
            if t.is_empty() {
                continue;
            }
            if t.len() != 3 {
                return Err(bad(format!("bad entry {line:?}")));
            }
            if t == [0, 0, 0] {
                terminated = true;
                break;
            }
            let (i, j) = (t[0], t[1]);
            if i < 1 || j < 1 || i as usize > n_rows || j as usize > n_cols {
                return Err(bad(format!("entry out of range {line:?}")));
            }
            if t[2].rem_euclid(2) == 1 {
                cols[j as usize - 1].push(i as u32 - 1);
            }
        }
        if !terminated {
            return Err(bad("missing 0 0 0 terminator".into()));
        }
        let mut m = Self::new(n_rows);
        for mut c in cols {
            c.sort_unstable();
            let mut reduced: Vec<u32> = Vec::with_capacity(c.len());
            for r in c {
                if reduced.last() == Some(&r) {
                    reduced.pop();
                } else {
                    reduced.push(r);
                }
            }
            m.push_column(&reduced)?;
        }
        Ok(m)
    }
}
