//! Cubic forms over F_p and their factorization types.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::field::{check_prime, inv_mod_p, rank_mod_p, Elem, FieldTower, MAX_PRIME};
use crate::error::{Error, Result};

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// The monomials `x_i x_j x_k`, `i <= j <= k <= n`, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIndex {
    n: usize,
    triples: Vec<(usize, usize, usize)>,
    lookup: Vec<usize>,
}

impl MonomialIndex {
    pub fn new(n: usize) -> Self {
        let v = n + 1;
        let mut triples = Vec::with_capacity(binom(n as u64 + 3, 3) as usize);
        let mut lookup = vec![usize::MAX; v * v * v];
        for i in 0..v {
            for j in i..v {
                for k in j..v {
                    lookup[(i * v + j) * v + k] = triples.len();
                    triples.push((i, j, k));
                }
            }
        }
        MonomialIndex { n, triples, lookup }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn triples(&self) -> &[(usize, usize, usize)] {
        &self.triples
    }

    /// Position of `x_a x_b x_c` for indices in any order.
    pub fn index(&self, a: usize, b: usize, c: usize) -> usize {
        let mut s = [a, b, c];
        s.sort_unstable();
        let v = self.n + 1;
        self.lookup[(s[0] * v + s[1]) * v + s[2]]
    }

    /// Coefficient positions of the monomials that only involve `x_0..x_{j-1}`,
    /// in the order of `MonomialIndex::new(j - 1)`.
    fn leading_block(&self, j: usize) -> Vec<usize> {
        MonomialIndex::new(j - 1)
            .triples
            .iter()
            .map(|&(a, b, c)| self.index(a, b, c))
            .collect()
    }
}

/// Distinct orderings of a sorted triple.
fn permutations(t: (usize, usize, usize)) -> Vec<[usize; 3]> {
    let (a, b, c) = t;
    let mut v = vec![
        [a, b, c],
        [a, c, b],
        [b, a, c],
        [b, c, a],
        [c, a, b],
        [c, b, a],
    ];
    v.sort_unstable();
    v.dedup();
    v
}

/// A cubic form in `n + 1` variables over F_p, coefficients in
/// [`MonomialIndex`] order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubicForm {
    pub n: usize,
    pub p: u32,
    pub coeffs: Vec<u8>,
}

impl CubicForm {
    pub fn new(n: usize, p: u32, coeffs: Vec<u32>) -> Result<Self> {
        let len = binom(n as u64 + 3, 3) as usize;
        if coeffs.len() != len {
            return Err(Error::InvalidArgument(format!(
                "a cubic form in {} variables has {len} coefficients, got {}",
                n + 1,
                coeffs.len()
            )));
        }
        if p > MAX_PRIME {
            return Err(Error::InvalidArgument(format!("prime {p} too large")));
        }
        Ok(CubicForm {
            n,
            p,
            coeffs: coeffs.iter().map(|&c| (c % p) as u8).collect(),
        })
    }

    /// Builds a form from `(coefficient, (i, j, k))` terms.
    pub fn from_terms(n: usize, p: u32, terms: &[(u32, (usize, usize, usize))]) -> Result<Self> {
        let idx = MonomialIndex::new(n);
        let mut c = vec![0u32; idx.len()];
        for &(a, (i, j, k)) in terms {
            if i.max(j).max(k) > n {
                return Err(Error::InvalidArgument(format!("variable index > {n}")));
            }
            let pos = idx.index(i, j, k);
            c[pos] = (c[pos] + a) % p;
        }
        Self::new(n, p, c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The scalar multiple whose first nonzero coefficient is 1.
    pub fn canonical(&self) -> CubicForm {
        let Some(&lead) = self.coeffs.iter().find(|&&c| c != 0) else {
            return self.clone();
        };
        let inv = inv_mod_p(lead as u32, self.p);
        self.scaled(inv)
    }

    pub fn scaled(&self, c: u32) -> CubicForm {
        let p = self.p;
        CubicForm {
            n: self.n,
            p,
            coeffs: self
                .coeffs
                .iter()
                .map(|&a| ((a as u32 * c) % p) as u8)
                .collect(),
        }
    }

    /// Value at a point of F_p^{n+1}.
    pub fn eval(&self, x: &[u32]) -> u32 {
        let p = self.p;
        let idx = MonomialIndex::new(self.n);
        idx.triples()
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, &a)| a != 0)
            .fold(0, |acc, (&(i, j, k), &a)| {
                (acc + a as u32 * (x[i] * x[j] % p) % p * x[k]) % p
            })
    }

    /// Setting `x_j, ..., x_n` to zero gives a form in `j` variables.
    pub fn restrict(&self, j: usize) -> CubicForm {
        let idx = MonomialIndex::new(self.n);
        CubicForm {
            n: j - 1,
            p: self.p,
            coeffs: idx
                .leading_block(j)
                .into_iter()
                .map(|pos| self.coeffs[pos])
                .collect(),
        }
    }

    /// `f(M x)` for an `(n+1) × (n+1)` matrix `M` over F_p.
    pub fn substitute(&self, m: &[Vec<u32>]) -> CubicForm {
        let p = self.p;
        let idx = MonomialIndex::new(self.n);
        let mut out = vec![0u32; idx.len()];
        for (&(i, j, k), &a) in idx.triples().iter().zip(&self.coeffs) {
            if a == 0 {
                continue;
            }
            let prod = linear_product(&idx, [&m[i], &m[j], &m[k]], p);
            for (o, c) in out.iter_mut().zip(prod) {
                *o = (*o + a as u32 * c) % p;
            }
        }
        CubicForm {
            n: self.n,
            p,
            coeffs: out.into_iter().map(|c| c as u8).collect(),
        }
    }

    /// Whether the form has a zero in P^n(F_p).
    pub fn has_projective_zero(&self) -> bool {
        let v = self.n + 1;
        let p = self.p;
        let mut x = vec![0u32; v];
        // Points normalised so that the last nonzero coordinate is 1.
        for last in 0..v {
            let count = (p as u64).pow(last as u32);
            for code in 0..count {
                let mut c = code;
                for xi in x.iter_mut().take(last) {
                    *xi = (c % p as u64) as u32;
                    c /= p as u64;
                }
                x[last] = 1;
                for xi in x.iter_mut().skip(last + 1) {
                    *xi = 0;
                }
                if self.eval(&x) == 0 {
                    return true;
                }
            }
        }
        false
    }
}

/// Coefficients of `l1 · l2 · l3` for linear forms over F_p.
fn linear_product(idx: &MonomialIndex, l: [&Vec<u32>; 3], p: u32) -> Vec<u32> {
    idx.triples()
        .iter()
        .map(|&t| {
            permutations(t).iter().fold(0u32, |acc, &[a, b, c]| {
                (acc + l[0][a] * l[1][b] % p * l[2][c]) % p
            })
        })
        .collect()
}

/// Candidate linear forms over F_{p^3} enumerated when building the catalog.
pub fn catalog_size(n: usize, p: u32) -> u128 {
    let q3 = (p as u128).pow(3);
    (0..=n as u32).map(|s| q3.pow(s)).sum()
}

/// Default cap on [`catalog_size`].
pub const DEFAULT_CANDIDATE_BOUND: u128 = 50_000_000;

/// Canonical representatives of the forms of each factorization type.
///
/// Every nonzero form of type `i` is `c · r` for exactly one `c ∈ F_p^×` and
/// one representative `r` in `reps(i)`.
#[derive(Clone, Debug)]
pub struct TypeCatalog {
    n: usize,
    p: u32,
    reps: [HashSet<Vec<u8>>; 3],
}

impl TypeCatalog {
    pub fn new(n: usize, p: u32) -> Result<Self> {
        Self::with_bounds(n, p, super::field::DEFAULT_PRIME_BOUND, DEFAULT_CANDIDATE_BOUND)
    }

    pub fn with_bounds(n: usize, p: u32, prime_bound: u32, candidates: u128) -> Result<Self> {
        check_prime(p, prime_bound)?;
        let needed = catalog_size(n, p);
        if needed > candidates {
            return Err(Error::Infeasible {
                what: format!("linear forms over F_{p}^3 in {} variables", n + 1),
                needed,
                bound: candidates,
            });
        }
        let field = FieldTower::with_bound(p, prime_bound)?;
        let idx = MonomialIndex::new(n);
        let perms: Vec<Vec<[usize; 3]>> = idx.triples().iter().map(|&t| permutations(t)).collect();
        let q3 = (p as u64).pow(3);

        // Linear forms with first nonzero coefficient 1 at position s.
        let found: Vec<(usize, Vec<u8>)> = (0..=n)
            .into_par_iter()
            .flat_map_iter(|s| {
                let tail = n - s;
                let total = q3.pow(tail as u32);
                let (field, idx, perms) = (&field, &idx, &perms);
                (0..total).map(move |code| {
                    let mut b: Vec<Elem> = vec![field.zero(); n + 1];
                    b[s] = field.one();
                    let mut c = code;
                    for bk in b.iter_mut().skip(s + 1) {
                        let e = (c % q3) as u32;
                        c /= q3;
                        *bk = [e % p, (e / p) % p, e / (p * p)];
                    }
                    let span: Vec<Vec<u32>> = b.iter().map(|e| e.to_vec()).collect();
                    let dim = rank_mod_p(&span, p);
                    (dim, norm_form(field, idx, perms, &b))
                })
            })
            .collect();

        let mut reps: [HashSet<Vec<u8>>; 3] = Default::default();
        for (dim, form) in found {
            reps[dim - 1].insert(form);
        }
        Ok(TypeCatalog { n, p, reps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Canonical representatives of type `i ∈ {1, 2, 3}`.
    pub fn reps(&self, i: usize) -> &HashSet<Vec<u8>> {
        &self.reps[i - 1]
    }

    /// The factorization type of a nonzero form, 0 if none of 1, 2, 3.
    pub fn classify(&self, f: &CubicForm) -> Result<u8> {
        if f.n != self.n || f.p != self.p {
            return Err(Error::InvalidArgument(format!(
                "form over F_{} in {} variables does not match catalog over F_{} in {}",
                f.p,
                f.n + 1,
                self.p,
                self.n + 1
            )));
        }
        if f.is_zero() {
            return Err(Error::InvalidArgument("the zero form has no type".into()));
        }
        let c = f.canonical();
        Ok((1..=3)
            .find(|&i| self.reps[i - 1].contains(&c.coeffs))
            .unwrap_or(0) as u8)
    }

    /// All forms of type `i` (every scalar multiple of every representative).
    pub fn forms(&self, i: usize) -> HashSet<CubicForm> {
        let (n, p) = (self.n, self.p);
        if !(1..=3).contains(&i) {
            return HashSet::new();
        }
        self.reps[i - 1]
            .iter()
            .flat_map(|r| {
                let base = CubicForm {
                    n,
                    p,
                    coeffs: r.clone(),
                };
                (1..p).map(move |c| base.scaled(c))
            })
            .collect()
    }
}

/// Coefficients of `ℓ · σℓ · σ²ℓ`; they lie in F_p.
fn norm_form(field: &FieldTower, idx: &MonomialIndex, perms: &[Vec<[usize; 3]>], b: &[Elem]) -> Vec<u8> {
    let b1: Vec<Elem> = b.iter().map(|&e| field.frobenius(e)).collect();
    let b2: Vec<Elem> = b1.iter().map(|&e| field.frobenius(e)).collect();
    idx.triples()
        .iter()
        .zip(perms)
        .map(|(_, ps)| {
            let mut acc = field.zero();
            for &[a, bb, c] in ps {
                let t = field.mul(field.mul(b[a], b1[bb]), b2[c]);
                acc = field.add(acc, t);
            }
            debug_assert!(field.is_base(&acc));
            acc[0] as u8
        })
        .collect()
}

/// The exact set of nonzero forms of type `i` over F_p in `n + 1` variables.
pub fn generate_type_forms(n: usize, p: u32, i: usize) -> Result<HashSet<CubicForm>> {
    if i > n + 1 {
        return Ok(HashSet::new());
    }
    Ok(TypeCatalog::new(n, p)?.forms(i))
}

/// Factorization type of a nonzero form; builds a catalog on every call, so
/// prefer [`TypeCatalog::classify`] in loops.
pub fn classify_form(f: &CubicForm) -> Result<u8> {
    TypeCatalog::new(f.n, f.p)?.classify(f)
}

/// Point (1), line (2) or plane (3) condition.
pub fn check_condition(f: &CubicForm, j: usize) -> Result<bool> {
    if !(1..=3).contains(&j) || j > f.n + 1 {
        return Err(Error::InvalidArgument(format!(
            "condition ({j}) needs at least {j} variables, form has {}",
            f.n + 1
        )));
    }
    Ok(match j {
        1 => f.coeffs[0] != 0,
        _ => !f.restrict(j).has_projective_zero(),
    })
}

/// Factorization type counts, optionally restricted to forms satisfying a
/// condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCounts {
    pub n: usize,
    pub q: u32,
    pub condition: Option<usize>,
    pub total: u128,
    pub counts: std::collections::BTreeMap<String, u128>,
}

impl TypeCounts {
    pub fn get(&self, i: usize) -> u128 {
        self.counts[&i.to_string()]
    }
}

/// Number of forms in `j` variables satisfying condition `j`, by enumeration.
fn count_condition_block(j: usize, p: u32) -> u128 {
    let len = binom(j as u64 + 2, 3) as u32;
    let total = (p as u64).pow(len);
    (0..total)
        .into_par_iter()
        .filter(|&code| {
            let mut c = code;
            let coeffs = (0..len)
                .map(|_| {
                    let d = (c % p as u64) as u32;
                    c /= p as u64;
                    d
                })
                .collect();
            let f = CubicForm::new(j - 1, p, coeffs).expect("block length");
            check_condition(&f, j).expect("condition fits")
        })
        .count() as u128
}

pub fn count_types(n: usize, p: u32, condition: Option<usize>) -> Result<TypeCounts> {
    count_types_with(&TypeCatalog::new(n, p)?, condition)
}

pub fn count_types_with(cat: &TypeCatalog, condition: Option<usize>) -> Result<TypeCounts> {
    let (n, p) = (cat.n, cat.p);
    let m = binom(n as u64 + 3, 3) as u32;
    let units = (p - 1) as u128;
    let pw = |e: u32| (p as u128).pow(e);
    let mut by_type = [0u128; 4];
    let total = match condition {
        None => {
            for i in 1..=3 {
                by_type[i] = cat.reps(i).len() as u128 * units;
            }
            pw(m) - 1
        }
        Some(j) => {
            if !(1..=3).contains(&j) || j > n + 1 {
                return Err(Error::InvalidArgument(format!(
                    "condition ({j}) needs at least {j} variables"
                )));
            }
            for i in 1..=3 {
                let hits = cat
                    .reps(i)
                    .par_iter()
                    .filter(|r| {
                        let f = CubicForm {
                            n,
                            p,
                            coeffs: r.to_vec(),
                        };
                        check_condition(&f, j).expect("condition fits")
                    })
                    .count() as u128;
                by_type[i] = hits * units;
            }
            let block = binom(j as u64 + 2, 3) as u32;
            count_condition_block(j, p) * pw(m - block)
        }
    };
    by_type[0] = total - by_type[1] - by_type[2] - by_type[3];
    Ok(TypeCounts {
        n,
        q: p,
        condition,
        total,
        counts: (0..4).map(|i| (i.to_string(), by_type[i])).collect(),
    })
}

/// `#Gr(r, k)(F_q)`: the Gaussian binomial coefficient `[k choose r]_q`.
pub fn gaussian_binomial(k: u32, r: u32, q: u128) -> u128 {
    if r > k {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..r {
        num *= q.pow(k - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2(n: usize, terms: &[(u32, (usize, usize, usize))]) -> CubicForm {
        CubicForm::from_terms(n, 2, terms).unwrap()
    }

    #[test]
    fn monomial_index_sizes() {
        for n in 0..6 {
            assert_eq!(MonomialIndex::new(n).len() as u64, binom(n as u64 + 3, 3));
        }
        let idx = MonomialIndex::new(1);
        assert_eq!(idx.triples(), &[(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)]);
        assert_eq!(idx.index(1, 0, 1), 2);
    }

    #[test]
    fn binary_forms_over_f2() {
        let cat = TypeCatalog::new(1, 2).unwrap();
        let t1 = cat.forms(1);
        let expected: HashSet<CubicForm> = [
            f2(1, &[(1, (0, 0, 0))]),
            f2(1, &[(1, (1, 1, 1))]),
            // (x0 + x1)^3 = x0^3 + x0^2 x1 + x0 x1^2 + x1^3 over F_2
            CubicForm::new(1, 2, vec![1, 1, 1, 1]).unwrap(),
        ]
        .into_iter()
        .collect();
        assert_eq!(t1, expected);
        assert_eq!(cat.forms(2).len(), 2);
        assert!(cat.forms(3).is_empty());
        assert!(generate_type_forms(1, 2, 3).unwrap().is_empty());
    }

    #[test]
    fn classify_examples() {
        let split = f2(1, &[(1, (0, 0, 1)), (1, (0, 1, 1))]);
        assert_eq!(classify_form(&split).unwrap(), 0);
        let irr = f2(1, &[(1, (0, 0, 0)), (1, (0, 1, 1)), (1, (1, 1, 1))]);
        assert_eq!(classify_form(&irr).unwrap(), 2);
        assert_eq!(classify_form(&f2(1, &[(1, (0, 0, 0))])).unwrap(), 1);
        assert!(classify_form(&f2(1, &[])).is_err());
    }

    #[test]
    fn condition_examples() {
        let f = f2(1, &[(1, (0, 0, 0)), (1, (1, 1, 1))]);
        assert!(check_condition(&f, 1).unwrap());
        assert!(!check_condition(&f, 2).unwrap());
        let irr = f2(1, &[(1, (0, 0, 0)), (1, (0, 1, 1)), (1, (1, 1, 1))]);
        assert!(check_condition(&irr, 2).unwrap());
        assert!(check_condition(&irr, 3).is_err());
    }

    #[test]
    fn counts_small() {
        let c = count_types(1, 2, None).unwrap();
        assert_eq!((c.total, c.get(0), c.get(1), c.get(2), c.get(3)), (15, 10, 3, 2, 0));
        let c = count_types(2, 2, None).unwrap();
        assert_eq!((c.total, c.get(1), c.get(2), c.get(3)), (1023, 7, 14, 8));
        let c = count_types(0, 3, None).unwrap();
        assert_eq!((c.total, c.get(0), c.get(1), c.get(2), c.get(3)), (2, 0, 2, 0, 0));
    }

    #[test]
    fn count_json_shape() {
        let c = count_types(1, 2, Some(2)).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(
            s,
            r#"{"n":1,"q":2,"condition":2,"total":2,"counts":{"0":0,"1":0,"2":2,"3":0}}"#
        );
    }

    #[test]
    fn infeasible_is_reported() {
        let err = TypeCatalog::with_bounds(3, 3, 13, 1000).unwrap_err();
        assert!(err.to_string().contains("1000"));
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(3, 2, 2), 7);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(4, 0, 5), 1);
    }
}
