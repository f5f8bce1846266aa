use crate::error::{Error, Result};
use crate::gf2::SparseColumnSet;

/// Default bound on the projected worst-case elimination memory: 2 GiB.
pub const DEFAULT_MEMORY_CAP: u64 = 2 << 30;

const NO_SLOT: u32 = u32::MAX;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RankStats {
    pub rank: usize,
    /// Row operations performed during elimination.
    pub xors: u64,
    /// Words held by the stored reduced vectors at the end.
    pub stored_words: u64,
}

/// A reduced vector stored only over its non-zero word span.
struct Stored {
    lo: usize,
    words: Box<[u64]>,
}

/// Rank over GF(2).
pub fn rank(m: &SparseColumnSet) -> usize {
    rank_with_limit(m, u64::MAX).expect("no memory cap").rank
}

/// Worst-case bytes for the reduced vectors of `m`: one `n_rows`-bit vector
/// per possible pivot.
pub fn projected_memory(m: &SparseColumnSet) -> u128 {
    let vectors = m.n_rows().min(m.n_cols()) as u128;
    vectors * (m.n_rows() as u128).div_ceil(64) * 8
}

/// Rank over GF(2), refusing to start if [`projected_memory`] exceeds
/// `memory_cap` bytes.
///
/// Same elimination as [`EchelonBasis`](crate::gf2::EchelonBasis) without
/// combination records: columns are inserted in order and each reduced
/// remainder is kept with its lowest set bit as pivot. A stored vector has no
/// bits below its pivot, so it lives in a word span starting at the pivot's
/// word.
pub fn rank_with_limit(m: &SparseColumnSet, memory_cap: u64) -> Result<RankStats> {
    let projected = projected_memory(m);
    if projected > u128::from(memory_cap) {
        return Err(Error::ResourceLimit {
            what: "elimination memory (bytes)",
            projected,
            cap: memory_cap.into(),
        });
    }

    let n_words = m.n_rows().div_ceil(64);
    let mut slot_of_row = vec![NO_SLOT; m.n_rows()];
    let mut stored: Vec<Stored> = Vec::new();
    let mut buf = vec![0u64; n_words];
    let mut stats = RankStats::default();

    for col in m.columns() {
        let (Some(&first), Some(&last)) = (col.first(), col.last()) else {
            continue;
        };
        for &r in col {
            buf[r as usize / 64] ^= 1u64 << (r % 64);
        }
        let mut lo = first as usize / 64;
        let mut hi = last as usize / 64;

        let pivot = loop {
            let Some(off) = buf[lo..=hi].iter().position(|&w| w != 0) else {
                break None;
            };
            lo += off;
            let p = lo * 64 + buf[lo].trailing_zeros() as usize;
            let slot = slot_of_row[p];
            if slot == NO_SLOT {
                break Some(p);
            }
            let s = &stored[slot as usize];
            debug_assert!(s.lo == lo);
            for (d, w) in buf[s.lo..s.lo + s.words.len()]
                .iter_mut()
                .zip(s.words.iter())
            {
                *d ^= *w;
            }
            hi = hi.max(s.lo + s.words.len() - 1);
            stats.xors += 1;
        };

        if let Some(p) = pivot {
            while buf[hi] == 0 {
                hi -= 1;
            }
            slot_of_row[p] = stored.len() as u32;
            stored.push(Stored {
                lo,
                words: buf[lo..=hi].into(),
            });
            stats.stored_words += (hi - lo + 1) as u64;
        }
        buf[lo..=hi].fill(0);
    }

    stats.rank = stored.len();
    Ok(stats)
}
