mod common;

use f2hit::gf2::{rank, rank_with_limit};
use f2hit::oracle::dense_rank;
use f2hit::SparseColumnSet;

#[test]
fn random_matrices_against_dense_elimination() {
    common::gf2_properties(1000).unwrap();
}

#[test]
fn wider_random_matrices() {
    let mut rng = common::rng(11);
    for _ in 0..50 {
        let m = common::random_matrix(&mut rng, 300);
        assert_eq!(rank(&m), dense_rank(&m));
    }
}

#[test]
fn sms_round_trip() {
    let mut rng = common::rng(12);
    for _ in 0..100 {
        let m = common::random_matrix(&mut rng, 40);
        let back = SparseColumnSet::read_sms(m.to_sms_string().as_bytes()).unwrap();
        assert_eq!(back.n_rows(), m.n_rows());
        assert_eq!(rank(&back), rank(&m));
        if m.nnz() > 0 {
            let last_nonzero = (0..m.n_cols())
                .rev()
                .find(|&c| !m.column(c).is_empty())
                .unwrap();
            for c in 0..=last_nonzero {
                assert_eq!(back.column(c), m.column(c));
            }
        }
    }
}

#[test]
fn rank_stats_are_consistent() {
    let mut rng = common::rng(13);
    let m = common::random_matrix(&mut rng, 64);
    let s = rank_with_limit(&m, u64::MAX).unwrap();
    assert_eq!(s.rank, dense_rank(&m));
}
