use std::collections::HashMap;

use crate::steenrod::{binom_mod2, Monomial, PolyF2};

/// Default bound on memo entries before a [`SqContext`] drops its cache.
pub const DEFAULT_CACHE_ENTRIES: usize = 1 << 20;

/// Evaluation context for `Sq^i` with a private memo cache.
///
/// The cache is keyed by `(i, exponents)`. Entries are recomputable, so the
/// whole cache is dropped once it grows past its bound.
#[derive(Debug)]
pub struct SqContext {
    memo: HashMap<(u64, Monomial), PolyF2>,
    max_entries: usize,
}

impl Default for SqContext {
    fn default() -> Self {
        Self::new()
    }
}

impl SqContext {
    pub fn new() -> Self {
        Self::with_capacity_limit(DEFAULT_CACHE_ENTRIES)
    }

    pub fn with_capacity_limit(max_entries: usize) -> Self {
        SqContext {
            memo: HashMap::new(),
            max_entries: max_entries.max(1),
        }
    }

    pub fn cached_entries(&self) -> usize {
        self.memo.len()
    }

    pub fn clear(&mut self) {
        self.memo.clear();
    }

    /// `Sq^i(m)` by peeling off the first variable with a positive exponent:
    /// `Sq^i(v^e * r) = sum_t C(e, t) v^(e+t) Sq^(i-t)(r)`.
    pub fn sq_monomial(&mut self, i: u64, m: &Monomial) -> PolyF2 {
        if i == 0 {
            return PolyF2::from(m.clone());
        }
        if i > m.degree() {
            return PolyF2::zero();
        }
        let key = (i, m.clone());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }

        let exps = m.exponents();
        let first = exps
            .iter()
            .position(|&e| e > 0)
            .expect("positive degree implies a positive exponent");
        let e = exps[first];
        let mut rest = exps.to_vec();
        rest[first] = 0;
        let rest = Monomial::from_boxed(rest.into_boxed_slice());

        // Variables before `first` have exponent zero in every term, so the
        // blocks for increasing t come out already sorted.
        let rest_degree = m.degree() - u64::from(e);
        let mut terms = Vec::new();
        for t in i.saturating_sub(rest_degree)..=i.min(u64::from(e)) {
            if !binom_mod2(u64::from(e), t) {
                continue;
            }
            let new_exp = e
                .checked_add(t as u32)
                .expect("exponent overflow in Sq evaluation");
            for r in self.sq_monomial(i - t, &rest).into_terms() {
                let mut ex = r.exponents().to_vec();
                ex[first] = new_exp;
                terms.push(Monomial::from_boxed(ex.into_boxed_slice()));
            }
        }
        let out = PolyF2::from_sorted_unchecked(terms);

        if self.memo.len() >= self.max_entries {
            self.memo.clear();
        }
        self.memo.insert(key, out.clone());
        out
    }

    /// `Sq^i(f)`, extended linearly over the terms of `f`.
    pub fn sq(&mut self, i: u64, f: &PolyF2) -> PolyF2 {
        if i == 0 {
            return f.clone();
        }
        let mut acc: Vec<Monomial> = Vec::new();
        for m in f.terms() {
            acc.extend(self.sq_monomial(i, m).into_terms());
        }
        PolyF2::from_monomials(acc).expect("Sq preserves homogeneity")
    }
}

/// `Sq^i(m)` with a fresh cache. See [`SqContext::sq_monomial`].
pub fn sq_recursive(i: u64, m: &Monomial) -> PolyF2 {
    SqContext::new().sq_monomial(i, m)
}

/// `Sq^i(f)` with a fresh cache.
pub fn sq_poly(i: u64, f: &PolyF2) -> PolyF2 {
    SqContext::new().sq(i, f)
}

/// `Sq^i(m)` through the total square: substitute `x -> x + s x^2` in every
/// variable, expand in the formal parameter `s` and take the coefficient of
/// `s^i`.
///
/// Independent of [`sq_recursive`]; it multiplies out linear factors and
/// never evaluates a binomial coefficient.
pub fn sq_total_square(i: u64, m: &Monomial) -> PolyF2 {
    if i > m.degree() {
        return PolyF2::zero();
    }
    let k = m.nvars();
    let top = i as usize;
    // coeffs[t] = coefficient of s^t, as a map from exponent vector to parity
    let mut coeffs: Vec<HashMap<Vec<u32>, bool>> = vec![HashMap::new(); top + 1];
    coeffs[0].insert(vec![0; k], true);

    for (v, &e) in m.exponents().iter().enumerate() {
        for _ in 0..e {
            let mut next: Vec<HashMap<Vec<u32>, bool>> = vec![HashMap::new(); top + 1];
            for t in 0..=top {
                for (ex, _) in coeffs[t].iter().filter(|(_, &c)| c) {
                    // times x_v, same power of s
                    let mut a = ex.clone();
                    a[v] += 1;
                    toggle(&mut next[t], a);
                    // times s * x_v^2
                    if t < top {
                        let mut b = ex.clone();
                        b[v] += 2;
                        toggle(&mut next[t + 1], b);
                    }
                }
            }
            coeffs = next;
        }
    }

    let terms = coeffs[top]
        .iter()
        .filter(|(_, &c)| c)
        .map(|(ex, _)| Monomial::from_boxed(ex.clone().into_boxed_slice()));
    PolyF2::from_monomials(terms).expect("total square output is homogeneous")
}

fn toggle(map: &mut HashMap<Vec<u32>, bool>, key: Vec<u32>) {
    let entry = map.entry(key).or_insert(false);
    *entry = !*entry;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec()).unwrap()
    }

    fn p(ms: &[&[u32]]) -> PolyF2 {
        PolyF2::from_monomials(ms.iter().map(|e| m(e))).unwrap()
    }

    #[test]
    fn recursive_examples() {
        assert_eq!(sq_recursive(1, &m(&[1])), p(&[&[2]]));
        assert_eq!(sq_recursive(1, &m(&[1, 1])), p(&[&[2, 1], &[1, 2]]));
        assert!(sq_recursive(1, &m(&[2])).is_zero());
        assert_eq!(sq_recursive(2, &m(&[1, 1])), p(&[&[2, 2]]));
    }

    #[test]
    fn total_square_examples() {
        assert_eq!(sq_total_square(1, &m(&[1])), p(&[&[2]]));
        assert_eq!(sq_total_square(0, &m(&[2, 3])), p(&[&[2, 3]]));
        assert_eq!(sq_total_square(3, &m(&[3])), p(&[&[6]]));
    }

    #[test]
    fn constant_monomial() {
        let one = Monomial::one(3);
        assert_eq!(sq_recursive(0, &one), PolyF2::from(one.clone()));
        assert!(sq_recursive(1, &one).is_zero());
        assert!(sq_total_square(2, &one).is_zero());
    }

    #[test]
    fn poly_examples() {
        assert!(sq_poly(1, &PolyF2::zero()).is_zero());
        assert_eq!(sq_poly(1, &p(&[&[1, 0], &[0, 1]])), p(&[&[2, 0], &[0, 2]]));
    }

    #[test]
    fn decomposition_of_g_from_two_terms() {
        // Sq^1(x1^2 x2 x3 x4) + Sq^2(x1 x2 x3 x4) = g
        let g = p(&[&[1, 2, 2, 1], &[1, 2, 1, 2], &[1, 1, 2, 2]]);
        let lhs = sq_poly(1, &p(&[&[2, 1, 1, 1]])).add(&sq_poly(2, &p(&[&[1, 1, 1, 1]])));
        assert_eq!(lhs, g);
    }

    #[test]
    fn large_exponents_do_not_wrap() {
        let big = m(&[crate::steenrod::MAX_EXPONENT]);
        let top = sq_recursive(u64::from(crate::steenrod::MAX_EXPONENT), &big);
        assert_eq!(top.terms(), &[big.squared()]);
    }

    #[test]
    fn cache_bound_is_respected() {
        let mut ctx = SqContext::with_capacity_limit(4);
        for e in 1..20u32 {
            ctx.sq_monomial(2, &m(&[e, 3, 1]));
            assert!(ctx.cached_entries() <= 4);
        }
        assert_eq!(ctx.sq_monomial(2, &m(&[1, 1])), p(&[&[2, 2]]));
    }
}
