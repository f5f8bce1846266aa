//! Hit matrices and the hit problem engines.
//!
//! The hit space in degree `d` is spanned by the images `Sq^(2^j)(g)` for
//! monomials `g` of degree `d - 2^j`. Degrees `d' = d - 2^j` with
//! `alpha(d' + k) > k` are skipped: by Wood's criterion every polynomial of
//! such a degree is itself hit, so its images add nothing new. Each surviving
//! pair is a [`GeneratorTask`], and the coordinate vectors of the images are
//! the columns of the [`HitMatrix`].

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::basis::{DegreeBasis, DEFAULT_BASIS_CAP};
use crate::error::{Error, Result};
use crate::gf2::{self, BitVector, EchelonBasis, SparseColumnSet};
use crate::steenrod::{alpha, mu, Monomial, PolyF2, SqContext, DEFAULT_CACHE_ENTRIES};

/// Task count at which assembly switches from a serial loop to the thread
/// pool.
pub const DEFAULT_TASK_THRESHOLD: usize = 5000;

/// Knobs for the engines. None of them changes a result.
#[derive(Debug, Clone)]
pub struct HitConfig {
    /// Worker threads for column assembly; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Assemble serially below this many tasks.
    pub task_threshold: usize,
    /// Largest basis to enumerate.
    pub basis_cap: u64,
    /// Largest projected elimination memory, in bytes.
    pub memory_cap: u64,
    /// Skip generator degrees `d'` with `alpha(d' + k) > k`.
    ///
    /// Off by default. The filter can drop columns that are needed: for
    /// `k = 1, d = 6` it removes every generator degree although
    /// `x^6 = Sq^1(x^5)`. It is exact for `k = 4, d <= 24` and for the
    /// `k = 5` degrees covered by the tests.
    pub apply_filter: bool,
    /// Memo entries per evaluation context.
    pub cache_entries: usize,
}

impl Default for HitConfig {
    fn default() -> Self {
        HitConfig {
            threads: None,
            task_threshold: DEFAULT_TASK_THRESHOLD,
            basis_cap: DEFAULT_BASIS_CAP,
            memory_cap: gf2::DEFAULT_MEMORY_CAP,
            apply_filter: false,
            cache_entries: DEFAULT_CACHE_ENTRIES,
        }
    }
}

/// Apply `Sq^(2^j)` to the monomial `g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorTask {
    pub j: u32,
    pub g: Monomial,
}

impl GeneratorTask {
    pub fn operator_degree(&self) -> u64 {
        1u64 << self.j
    }
}

impl fmt::Display for GeneratorTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sq^{}({})", self.operator_degree(), self.g)
    }
}

/// Generator tasks for degree `d`, ordered by ascending `j` and then by the
/// canonical monomial order.
pub fn enumerate_tasks(k: usize, d: u64) -> Result<Vec<GeneratorTask>> {
    enumerate_tasks_with(k, d, &HitConfig::default())
}

pub fn enumerate_tasks_with(k: usize, d: u64, cfg: &HitConfig) -> Result<Vec<GeneratorTask>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let mut tasks = Vec::new();
    let mut j = 0u32;
    while j < 64 && (1u64 << j) <= d {
        let dg = d - (1u64 << j);
        if !cfg.apply_filter || u64::from(alpha(dg + k as u64)) <= k as u64 {
            let source = DegreeBasis::new(k, dg, cfg.basis_cap)?;
            tasks.extend(
                source
                    .monomials()
                    .iter()
                    .map(|g| GeneratorTask { j, g: g.clone() }),
            );
        }
        j += 1;
    }
    Ok(tasks)
}

/// The matrix whose columns are the coordinate vectors of the non-zero
/// generator images, rows indexed by the degree-`d` basis.
#[derive(Debug, Clone)]
pub struct HitMatrix {
    pub basis: DegreeBasis,
    pub matrix: SparseColumnSet,
    /// `tasks[c]` produced column `c`.
    pub tasks: Vec<GeneratorTask>,
    /// Tasks whose image vanished and were left out.
    pub zero_images: usize,
}

impl HitMatrix {
    pub fn nvars(&self) -> usize {
        self.basis.nvars()
    }

    pub fn degree(&self) -> u64 {
        self.basis.degree()
    }

    pub fn total_tasks(&self) -> usize {
        self.tasks.len() + self.zero_images
    }

    /// Deterministic text serialization: shape, the task of every column, then
    /// the matrix in SMS format.
    pub fn serialize(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "k {} d {} tasks {} zero_images {}",
            self.nvars(),
            self.degree(),
            self.total_tasks(),
            self.zero_images
        );
        for t in &self.tasks {
            let _ = writeln!(out, "{t}");
        }
        out.push_str(&self.matrix.to_sms_string());
        out
    }
}

pub fn build_hit_matrix(k: usize, d: u64) -> Result<HitMatrix> {
    build_hit_matrix_with(k, d, &HitConfig::default())
}

pub fn build_hit_matrix_with(k: usize, d: u64, cfg: &HitConfig) -> Result<HitMatrix> {
    let basis = DegreeBasis::new(k, d, cfg.basis_cap)?;
    let tasks = enumerate_tasks_with(k, d, cfg)?;

    let eval = |ctx: &mut SqContext, t: &GeneratorTask| -> Vec<u32> {
        let image = ctx.sq_monomial(t.operator_degree(), &t.g);
        // lexicographic term order is basis order, so indices come out sorted
        let rows: Vec<u32> = image
            .terms()
            .iter()
            .map(|m| basis.index_of_exponents(m.exponents()) as u32)
            .collect();
        debug_assert!(rows.windows(2).all(|w| w[0] < w[1]));
        rows
    };

    let columns: Vec<Vec<u32>> = if tasks.len() < cfg.task_threshold || cfg.threads == Some(1) {
        let mut ctx = SqContext::with_capacity_limit(cfg.cache_entries);
        tasks.iter().map(|t| eval(&mut ctx, t)).collect()
    } else {
        let run = || {
            tasks
                .par_iter()
                .map_init(|| SqContext::with_capacity_limit(cfg.cache_entries), eval)
                .collect()
        };
        match cfg.threads {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
                .install(run),
            None => run(),
        }
    };

    let mut matrix = SparseColumnSet::new(basis.len());
    let mut kept = Vec::with_capacity(tasks.len());
    let mut zero_images = 0;
    for (t, rows) in tasks.into_iter().zip(columns) {
        if rows.is_empty() {
            zero_images += 1;
            continue;
        }
        matrix.push_column(&rows)?;
        kept.push(t);
    }
    Ok(HitMatrix {
        basis,
        matrix,
        tasks: kept,
        zero_images,
    })
}

/// `dim (A^+ P_k)_d`, the rank of the hit matrix. Constants are never hit,
/// so `d = 0` gives 0.
pub fn hit_dimension(k: usize, d: u64) -> Result<u64> {
    hit_dimension_with(k, d, &HitConfig::default())
}

pub fn hit_dimension_with(k: usize, d: u64, cfg: &HitConfig) -> Result<u64> {
    if d == 0 {
        crate::basis::basis_dimension(k, 0)?;
        return Ok(0);
    }
    let hm = build_hit_matrix_with(k, d, cfg)?;
    Ok(gf2::rank_with_limit(&hm.matrix, cfg.memory_cap)?.rank as u64)
}

/// `dim (QP_k)_d = C(d+k-1, k-1) - dim (A^+ P_k)_d`.
pub fn quotient_dimension(k: usize, d: u64) -> Result<u64> {
    quotient_dimension_with(k, d, &HitConfig::default())
}

pub fn quotient_dimension_with(k: usize, d: u64, cfg: &HitConfig) -> Result<u64> {
    let n = crate::basis::basis_dimension(k, d)?;
    let r = hit_dimension_with(k, d, cfg)?;
    Ok(n - r)
}

/// Wood's criterion: `(QP_k)_d = 0` whenever `alpha(d + k) > k`.
pub fn wood_vanishes(k: usize, d: u64) -> bool {
    u64::from(alpha(d + k as u64)) > k as u64
}

/// Target degree `(d - k) / 2` of Kameko's isomorphism
/// `(QP_k)_d ~ (QP_k)_((d-k)/2)`, available exactly when `mu(d) = k`.
pub fn kameko_reduces(k: usize, d: u64) -> Option<u64> {
    let k = k as u64;
    if d < k || !(d - k).is_multiple_of(2) {
        return None;
    }
    match mu(d) {
        Ok(m) if m == k => Some((d - k) / 2),
        _ => None,
    }
}

/// `f = sum_j Sq^(2^j)(h_j)`, one part per `j` in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    parts: Vec<(u32, PolyF2)>,
}

impl Decomposition {
    fn from_selection(hm: &HitMatrix, c: &BitVector) -> Self {
        let mut groups: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
        for col in c.iter_ones() {
            let t = &hm.tasks[col];
            groups.entry(t.j).or_default().push(t.g.clone());
        }
        let parts = groups
            .into_iter()
            .map(|(j, gs)| {
                (
                    j,
                    PolyF2::from_monomials(gs).expect("same-degree generators"),
                )
            })
            .filter(|(_, h)| !h.is_zero())
            .collect();
        Decomposition { parts }
    }

    /// `(j, h_j)` pairs, ascending in `j`, with non-zero `h_j`.
    pub fn parts(&self) -> &[(u32, PolyF2)] {
        &self.parts
    }

    /// `sum_j Sq^(2^j)(h_j)`.
    pub fn evaluate(&self) -> PolyF2 {
        let mut ctx = SqContext::new();
        let mut acc = PolyF2::zero();
        for (j, h) in &self.parts {
            acc = acc.add(&ctx.sq(1u64 << j, h));
        }
        acc
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        for (i, (j, h)) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "Sq^{}({h})", 1u64 << j)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HitResult {
    pub hit: bool,
    pub degree: u64,
    /// Present iff `hit`.
    pub decomposition: Option<Decomposition>,
    /// A second, different decomposition, when asked for and one exists.
    pub alternative: Option<Decomposition>,
}

/// Decides whether `f` is hit in `P_k`, with a verified decomposition when
/// it is.
pub fn decide_hit(f: &PolyF2, k: usize) -> Result<HitResult> {
    decide_hit_with(f, k, &HitConfig::default(), false)
}

/// The second decomposition of `f`, if the generator columns have a non-zero
/// null vector.
pub fn nonuniqueness_witness(f: &PolyF2, k: usize) -> Result<Option<Decomposition>> {
    let r = decide_hit_with(f, k, &HitConfig::default(), true)?;
    if !r.hit {
        return Err(Error::InvalidArgument("polynomial is not hit".into()));
    }
    Ok(r.alternative)
}

pub fn decide_hit_with(
    f: &PolyF2,
    k: usize,
    cfg: &HitConfig,
    alternative: bool,
) -> Result<HitResult> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Err(Error::DegreeZero);
    }
    let f = f.embed(k)?;
    let hm = build_hit_matrix_with(k, d, cfg)?;

    let rows = hm.matrix.n_rows() as u128;
    let cols = hm.matrix.n_cols() as u128;
    let projected = rows.min(cols) * (rows + cols) / 8 + (cols * cols) / 8;
    if projected > u128::from(cfg.memory_cap) {
        return Err(Error::ResourceLimit {
            what: "certificate tracking memory (bytes)",
            projected,
            cap: cfg.memory_cap.into(),
        });
    }

    let echelon = EchelonBasis::from_matrix(&hm.matrix);
    let target = hm.basis.to_coordinates(&f)?;
    let Some(c) = gf2::solve_with(&echelon, &hm.matrix, &target)? else {
        return Ok(HitResult {
            hit: false,
            degree: d,
            decomposition: None,
            alternative: None,
        });
    };

    let decomposition = verified(&hm, &c, &f)?;
    let alternative = if alternative {
        match echelon.dependencies().and_then(|deps| deps.first()) {
            Some(null) => {
                let mut c2 = c.clone();
                c2.xor_assign(null);
                let alt = verified(&hm, &c2, &f)?;
                if alt == decomposition {
                    return Err(Error::CertificateFailed(
                        "alternative decomposition coincides with the first".into(),
                    ));
                }
                Some(alt)
            }
            None => None,
        }
    } else {
        None
    };

    Ok(HitResult {
        hit: true,
        degree: d,
        decomposition: Some(decomposition),
        alternative,
    })
}

fn verified(hm: &HitMatrix, c: &BitVector, f: &PolyF2) -> Result<Decomposition> {
    let dec = Decomposition::from_selection(hm, c);
    if &dec.evaluate() != f {
        return Err(Error::CertificateFailed(format!(
            "decomposition {dec} does not evaluate to {f}"
        )));
    }
    Ok(dec)
}
