#![allow(dead_code)]

use f2hit::gf2::{self, nullspace_basis, solve};
use f2hit::hitspace::{build_hit_matrix_with, decide_hit_with, HitConfig};
use f2hit::oracle::{dense_rank, oracle_decide_hit, oracle_hit_rank};
use f2hit::{
    basis_dimension, binom_mod2, enumerate_basis, hit_dimension, mu, quotient_dimension, sq_poly,
    sq_recursive, sq_total_square, weight_vector, BitVector, Monomial, PolyF2, SparseColumnSet,
};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn mono(e: &[u32]) -> Monomial {
    Monomial::new(e.to_vec()).unwrap()
}

pub fn poly(ms: &[&[u32]]) -> PolyF2 {
    PolyF2::from_monomials(ms.iter().map(|e| mono(e))).unwrap()
}

pub fn monomials(k: usize, d: u64) -> Vec<Monomial> {
    enumerate_basis(k, d).unwrap().monomials().to_vec()
}

/// A random non-zero homogeneous polynomial: each monomial of the degree is
/// kept with probability 1/2.
pub fn random_poly(rng: &mut ChaCha8Rng, k: usize, d: u64) -> PolyF2 {
    let all = monomials(k, d);
    loop {
        let f = PolyF2::from_monomials(all.iter().filter(|_| rng.gen_bool(0.5)).cloned()).unwrap();
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn f14() -> PolyF2 {
    poly(&[
        &[2, 5, 4, 3],
        &[3, 3, 4, 4],
        &[3, 2, 4, 5],
        &[2, 3, 4, 5],
        &[3, 4, 1, 6],
    ])
}

pub fn g6() -> PolyF2 {
    poly(&[&[1, 2, 2, 1], &[1, 2, 1, 2], &[1, 1, 2, 2]])
}

// Reference values -------------------------------------------------------

pub fn dims(k: usize, d: u64, q: u64, rank: u64) -> Check {
    let n = basis_dimension(k, d).map_err(err)?;
    let r = hit_dimension(k, d).map_err(err)?;
    ensure!(
        r == rank && n - r == q,
        "(k={k}, d={d}): rank {r}, q_dim {}; expected rank {rank}, q_dim {q}",
        n - r
    );
    Ok(())
}

pub fn small_degree_table() -> Check {
    for (d, q, r) in [(2, 10, 5), (4, 45, 25), (8, 174, 321), (16, 443, 4402)] {
        dims(5, d, q, r)?;
    }
    Ok(())
}

pub fn degree_14_example_is_hit() -> Check {
    let f = f14();
    let r = decide_hit_with(&f, 4, &HitConfig::default(), false).map_err(err)?;
    ensure!(r.hit, "reported not hit");
    let dec = r.decomposition.ok_or("hit without decomposition")?;
    ensure!(
        dec.evaluate() == f,
        "decomposition {dec} does not evaluate to f"
    );
    Ok(())
}

pub fn g_has_two_decompositions() -> Check {
    let f = g6();
    let r = decide_hit_with(&f, 4, &HitConfig::default(), true).map_err(err)?;
    ensure!(r.hit, "g reported not hit");
    let a = r.decomposition.ok_or("hit without decomposition")?;
    let b = f2hit::nonuniqueness_witness(&f, 4)
        .map_err(err)?
        .ok_or("no second decomposition")?;
    ensure!(
        a.evaluate() == f,
        "first decomposition does not evaluate to g"
    );
    ensure!(
        b.evaluate() == f,
        "second decomposition does not evaluate to g"
    );
    ensure!(a != b, "decompositions coincide: {a}");
    Ok(())
}

// Oracle equivalence --------------------------------------------------------

pub fn oracle_ranks() -> Check {
    let ranges = (1..=3)
        .flat_map(|k| (1..=12).map(move |d| (k, d)))
        .chain((1..=8).map(|d| (4, d)));
    for (k, d) in ranges {
        let fast = hit_dimension(k, d).map_err(err)?;
        let slow = oracle_hit_rank(k, d).map_err(err)?;
        ensure!(
            fast == slow,
            "(k={k}, d={d}): hit_dimension {fast}, oracle {slow}"
        );
        ensure!(
            fast <= basis_dimension(k, d).unwrap(),
            "(k={k}, d={d}): rank above N"
        );
    }
    Ok(())
}

/// The alpha filter only removes columns, agrees with the exact rank for
/// `k = 4, 5` on the tested degrees, and loses rank at `k = 1, 2`, `d = 6`.
pub fn generator_filter() -> Check {
    let filtered = HitConfig {
        apply_filter: true,
        ..HitConfig::default()
    };
    let with = |k, d| f2hit::hitspace::hit_dimension_with(k, d, &filtered).map_err(err);
    for k in 1..=3 {
        for d in 1..=12 {
            let (a, b) = (with(k, d)?, hit_dimension(k, d).map_err(err)?);
            ensure!(a <= b, "(k={k}, d={d}): filtered {a} above exact {b}");
        }
    }
    for (k, d) in (1..=16)
        .map(|d| (4, d))
        .chain([2, 4, 8, 12, 15, 16].map(|d| (5, d)))
    {
        let (a, b) = (with(k, d)?, hit_dimension(k, d).map_err(err)?);
        ensure!(a == b, "(k={k}, d={d}): filtered {a}, exact {b}");
    }
    ensure!(
        with(1, 6)? == 0 && hit_dimension(1, 6).map_err(err)? == 1,
        "(k=1, d=6)"
    );
    ensure!(
        with(2, 6)? == 3 && hit_dimension(2, 6).map_err(err)? == 6,
        "(k=2, d=6)"
    );
    Ok(())
}

pub fn oracle_verdicts(samples: usize) -> Check {
    let mut rng = rng(9);
    let cfg = HitConfig::default();
    for k in 1..=3 {
        for d in 1..=10 {
            for _ in 0..samples {
                let f = random_poly(&mut rng, k, d);
                let r = decide_hit_with(&f, k, &cfg, false).map_err(err)?;
                let o = oracle_decide_hit(&f, k).map_err(err)?;
                ensure!(
                    r.hit == o,
                    "(k={k}, d={d}) f = {f}: decide_hit {}, oracle {o}",
                    r.hit
                );
                if let Some(dec) = &r.decomposition {
                    ensure!(dec.evaluate() == f, "decomposition of {f} does not verify");
                }
            }
        }
    }
    Ok(())
}

// Steenrod squares ----------------------------------------------------------

pub fn sq_identity_and_unstability() -> Check {
    let mut rng = rng(1);
    for k in 1..=4 {
        for d in 0..=8 {
            for m in monomials(k, d) {
                let f = PolyF2::from(m.clone());
                ensure!(sq_poly(0, &f) == f, "Sq^0({m}) != {m}");
                ensure!(sq_poly(d + 1, &f).is_zero(), "Sq^{}({m}) != 0", d + 1);
                ensure!(sq_poly(d + 5, &f).is_zero(), "Sq^{}({m}) != 0", d + 5);
                ensure!(
                    sq_poly(d, &f) == PolyF2::from(m.squared()),
                    "Sq^{d}({m}) != {m}^2"
                );
                ensure!(
                    weight_vector(&m).degree() == d,
                    "deg weight_vector({m}) != {d}"
                );
            }
            if d > 0 {
                for _ in 0..20 {
                    let f = random_poly(&mut rng, k, d);
                    ensure!(sq_poly(0, &f) == f, "Sq^0 not identity on {f}");
                    ensure!(sq_poly(d + 1, &f).is_zero(), "Sq^(d+1) non-zero on {f}");
                    let sq = f.mul(&f).map_err(err)?;
                    let frob =
                        PolyF2::from_monomials(f.terms().iter().map(Monomial::squared)).unwrap();
                    ensure!(sq == frob, "f^2 != sum of squared terms for {f}");
                    ensure!(sq_poly(d, &f) == sq, "Sq^deg f != f^2 for {f}");
                }
            }
        }
    }
    Ok(())
}

pub fn cartan() -> Check {
    for k in 1..=3 {
        for da in 0..=6 {
            for db in 0..=6 - da {
                for a in monomials(k, da) {
                    for b in monomials(k, db) {
                        let pa = PolyF2::from(a.clone());
                        let pb = PolyF2::from(b.clone());
                        let ab = pa.mul(&pb).map_err(err)?;
                        for i in 0..=(da + db).min(6) {
                            let lhs = sq_poly(i, &ab);
                            let mut rhs = PolyF2::zero();
                            for t in 0..=i {
                                let term =
                                    sq_poly(t, &pa).mul(&sq_poly(i - t, &pb)).map_err(err)?;
                                rhs = rhs.try_add(&term).map_err(err)?;
                            }
                            ensure!(lhs == rhs, "Cartan fails for Sq^{i}({a} * {b})");
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn recursive_matches_total_square() -> Check {
    for k in 1..=4 {
        for d in 0..=8 {
            for m in monomials(k, d) {
                for i in 0..=8 {
                    let a = sq_recursive(i, &m);
                    let b = sq_total_square(i, &m);
                    ensure!(a == b, "Sq^{i}({m}): recursive {a}, total square {b}");
                }
            }
        }
    }
    Ok(())
}

pub fn binomials_match_big_integers() -> Check {
    for e in 0..=64u64 {
        let mut c = BigUint::from(1u32);
        for i in 0..=64u64 {
            let exact = if i > e {
                BigUint::from(0u32)
            } else {
                c.clone()
            };
            let odd = exact.bit(0);
            ensure!(
                binom_mod2(e, i) == odd,
                "binom_mod2({e}, {i}) = {}, exact parity {odd}",
                binom_mod2(e, i)
            );
            if i < e {
                c = c * (e - i) / (i + 1);
            }
        }
    }
    Ok(())
}

// Basis ---------------------------------------------------------------------

fn compositions(k: usize, d: u64) -> BigUint {
    // Stars and bars by Pascal recursion on (k, d).
    let mut row = vec![BigUint::from(1u32); d as usize + 1];
    for _ in 1..k {
        for j in 1..row.len() {
            let prev = row[j - 1].clone();
            row[j] += prev;
        }
    }
    row[d as usize].clone()
}

pub fn basis_sizes() -> Check {
    for k in 1..=6 {
        for d in 0..=20 {
            let b = enumerate_basis(k, d).map_err(err)?;
            ensure!(
                BigUint::from(b.len()) == compositions(k, d),
                "|basis({k}, {d})| = {}",
                b.len()
            );
            ensure!(
                b.len() as u64 == basis_dimension(k, d).unwrap(),
                "basis_dimension({k}, {d})"
            );
            ensure!(
                b.monomials().windows(2).all(|w| w[0] < w[1]),
                "basis({k}, {d}) not sorted"
            );
            for (i, m) in b.monomials().iter().enumerate() {
                ensure!(
                    m.degree() == d && m.nvars() == k,
                    "basis({k}, {d}) holds {m}"
                );
                ensure!(b.index_of(m) == Some(i), "index_of({m}) != {i}");
            }
        }
    }
    Ok(())
}

pub fn coordinates_round_trip() -> Check {
    let mut rng = rng(2);
    let b = enumerate_basis(3, 6).map_err(err)?;
    for _ in 0..1000 {
        let f = random_poly(&mut rng, 3, 6);
        let v = b.to_coordinates(&f).map_err(err)?;
        ensure!(v.count_ones() == f.len(), "coordinate weight for {f}");
        ensure!(
            b.from_coordinates(&v).map_err(err)? == f,
            "round trip fails for {f}"
        );

        let idx: Vec<u32> = (0..b.len() as u32).filter(|_| rng.gen_bool(0.3)).collect();
        let v = BitVector::from_indices(b.len(), &idx);
        let g = b.from_coordinates(&v).map_err(err)?;
        ensure!(
            b.to_coordinates(&g).map_err(err)? == v,
            "inverse round trip fails"
        );

        let sum = f.try_add(&g).map_err(err)?;
        let mut w = b.to_coordinates(&f).unwrap();
        w.xor_assign(&v);
        ensure!(
            b.to_coordinates(&sum).map_err(err)? == w,
            "coordinates are not additive"
        );
    }
    Ok(())
}

// GF(2) ---------------------------------------------------------------------

pub fn random_matrix(rng: &mut ChaCha8Rng, max: usize) -> SparseColumnSet {
    let rows = rng.gen_range(1..=max);
    let cols = rng.gen_range(1..=max);
    let density = rng.gen_range(0.02..0.6);
    let mut m = SparseColumnSet::new(rows);
    for _ in 0..cols {
        let col: Vec<u32> = (0..rows as u32).filter(|_| rng.gen_bool(density)).collect();
        m.push_column(&col).unwrap();
    }
    m
}

fn with_column(m: &SparseColumnSet, b: &BitVector) -> SparseColumnSet {
    let mut out = m.clone();
    let col: Vec<u32> = b.iter_ones().map(|i| i as u32).collect();
    out.push_column(&col).unwrap();
    out
}

pub fn gf2_properties(trials: usize) -> Check {
    let mut rng = rng(3);
    for t in 0..trials {
        let m = random_matrix(&mut rng, 64);
        let r = gf2::rank(&m);
        let dense = dense_rank(&m);
        ensure!(r == dense, "trial {t}: rank {r}, dense {dense}");
        ensure!(
            f2hit::EchelonBasis::from_matrix(&m).rank() == r,
            "trial {t}: echelon rank"
        );

        let null = nullspace_basis(&m).map_err(err)?;
        ensure!(
            r + null.len() == m.n_cols(),
            "trial {t}: rank + nullity != n_cols"
        );
        for v in &null {
            ensure!(
                m.mul_vector(v).map_err(err)?.is_zero(),
                "trial {t}: null vector fails"
            );
        }
        ensure!(
            dense_rank(
                &SparseColumnSet::from_columns(
                    m.n_cols(),
                    null.iter()
                        .map(|v| v.iter_ones().map(|i| i as u32).collect::<Vec<_>>())
                )
                .unwrap()
            ) == null.len(),
            "trial {t}: null vectors dependent"
        );

        let mut perm: Vec<usize> = (0..m.n_cols()).collect();
        perm.shuffle(&mut rng);
        ensure!(
            gf2::rank(&m.permute_columns(&perm)) == r,
            "trial {t}: permutation changes rank"
        );

        let b = if rng.gen_bool(0.5) {
            let c: Vec<u32> = (0..m.n_cols() as u32)
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            m.mul_vector(&BitVector::from_indices(m.n_cols(), &c))
                .unwrap()
        } else {
            let idx: Vec<u32> = (0..m.n_rows() as u32)
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            BitVector::from_indices(m.n_rows(), &idx)
        };
        let solvable = dense_rank(&with_column(&m, &b)) == dense;
        match solve(&m, &b).map_err(err)? {
            Some(c) => {
                ensure!(
                    solvable,
                    "trial {t}: solve succeeded on an inconsistent system"
                );
                ensure!(
                    m.mul_vector(&c).map_err(err)? == b,
                    "trial {t}: solution fails"
                );
            }
            None => ensure!(!solvable, "trial {t}: solve failed on a consistent system"),
        }
    }
    Ok(())
}

// Wood, Kameko, determinism -------------------------------------------------

pub fn wood() -> Check {
    let mut seen = 0;
    for k in 1..=4 {
        for d in 1..=16u64 {
            let vanishes = f2hit::alpha(d + k as u64) > k as u32;
            ensure!(
                f2hit::wood_vanishes(k, d) == vanishes,
                "wood_vanishes({k}, {d})"
            );
            if vanishes {
                seen += 1;
                let q = quotient_dimension(k, d).map_err(err)?;
                ensure!(q == 0, "(k={k}, d={d}): alpha(d+k) > k but q_dim = {q}");
            }
        }
    }
    ensure!(seen > 0, "no Wood degrees in range");
    Ok(())
}

pub fn kameko() -> Check {
    let mut seen = 0;
    for k in 1..=3 {
        for d in 1..=20u64 {
            let reduces = mu(d).unwrap() == k as u64;
            ensure!(
                f2hit::kameko_reduces(k, d).is_some() == reduces,
                "kameko_reduces({k}, {d})"
            );
            if reduces {
                seen += 1;
                let t = (d - k as u64) / 2;
                ensure!(
                    f2hit::kameko_reduces(k, d) == Some(t),
                    "kameko target for ({k}, {d})"
                );
                let a = quotient_dimension(k, d).map_err(err)?;
                let b = quotient_dimension(k, t).map_err(err)?;
                ensure!(a == b, "(k={k}): q_dim({d}) = {a} but q_dim({t}) = {b}");
            }
        }
    }
    ensure!(seen > 0, "no Kameko degrees in range");
    Ok(())
}

pub fn determinism() -> Check {
    let max = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    let mut seen: Option<(String, u64)> = None;
    for threads in [Some(1), Some(2), Some(max), None] {
        let cfg = HitConfig {
            threads,
            task_threshold: 0,
            ..HitConfig::default()
        };
        let hm = build_hit_matrix_with(4, 12, &cfg).map_err(err)?;
        let text = hm.serialize();
        let rank = f2hit::hitspace::hit_dimension_with(4, 12, &cfg).map_err(err)?;
        match &seen {
            None => seen = Some((text, rank)),
            Some((t0, r0)) => {
                ensure!(
                    &text == t0,
                    "serialized matrix differs with threads = {threads:?}"
                );
                ensure!(rank == *r0, "rank differs with threads = {threads:?}");
            }
        }
    }
    Ok(())
}

/// Images of random generators under random Sq^i are hit, and their
/// decompositions re-evaluate exactly.
pub fn certificates() -> Check {
    let mut rng = rng(4);
    let cfg = HitConfig::default();
    for _ in 0..200 {
        let k = rng.gen_range(1..=4);
        let d = rng.gen_range(1..=9u64);
        let mut f = PolyF2::zero();
        for _ in 0..3 {
            let i = rng.gen_range(1..=d);
            let g = random_poly(&mut rng, k, d - i);
            f = f.try_add(&sq_poly(i, &g)).map_err(err)?;
        }
        if f.is_zero() {
            continue;
        }
        let r = decide_hit_with(&f, k, &cfg, true).map_err(err)?;
        ensure!(r.hit, "image {f} reported not hit");
        let dec = r.decomposition.ok_or("hit without decomposition")?;
        ensure!(dec.evaluate() == f, "decomposition of {f} fails");
        ensure!(
            dec.parts().iter().all(|(_, h)| !h.is_zero()),
            "empty part in {dec}"
        );
        if let Some(alt) = r.alternative {
            ensure!(
                alt.evaluate() == f && alt != dec,
                "alternative for {f} fails"
            );
        }
    }
    Ok(())
}
