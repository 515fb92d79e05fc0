//! Exact character theory of the symmetric groups.
//!
//! Conjugacy classes are listed identity first, i.e. in *ascending*
//! lexicographic order of cycle types: `(1^4), (2,1,1), (2,2), (3,1), (4)`.
//! Character-table rows follow the canonical (descending) partition order.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};

pub const DEFAULT_MAX_RANK: usize = 14;

/// Cycle lengths of a permutation class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleType(pub Partition);

impl CycleType {
    pub fn new(cycles: Partition) -> Self {
        Self(cycles)
    }

    pub fn n(&self) -> usize {
        self.0.size()
    }

    pub fn cycles(&self) -> &[usize] {
        self.0.parts()
    }

    /// `z_μ = Π i^{m_i} m_i!`, the order of the centralizer.
    pub fn centralizer_order(&self) -> u64 {
        let mut z: u64 = 1;
        for (i, &m) in self.0.multiplicities().iter().enumerate().skip(1) {
            for j in 1..=m {
                z *= (i as u64) * (j as u64);
            }
        }
        z
    }

    /// `(-1)^{n - #cycles}`.
    pub fn sign(&self) -> i64 {
        if (self.n() - self.0.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// An explicit permutation of `0..n` with this cycle type; consecutive
    /// points form each cycle.
    pub fn representative(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.n()).collect();
        let mut start = 0;
        for &c in self.cycles() {
            for j in 0..c {
                perm[start + j] = start + (j + 1) % c;
            }
            start += c;
        }
        perm
    }

    /// Cycle type of an explicit permutation.
    pub fn of_permutation(perm: &[usize]) -> Self {
        let mut seen = vec![false; perm.len()];
        let mut cycles = Vec::new();
        for s in 0..perm.len() {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = perm[x];
                len += 1;
            }
            cycles.push(len);
        }
        Self(Partition::from_unsorted(cycles))
    }
}

impl std::fmt::Display for CycleType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassData {
    pub n: usize,
    pub classes: Vec<(CycleType, u64)>,
}

impl ClassData {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn index_of(&self, mu: &CycleType) -> Option<usize> {
        self.classes.binary_search_by(|(c, _)| c.cmp(mu)).ok()
    }

    pub fn group_order(&self) -> u64 {
        factorial(self.n)
    }
}

/// Exact rational class function on `S_n`, one value per class in
/// [`ClassData`] order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterVector {
    pub n: usize,
    #[serde(with = "crate::exact::rational_vec")]
    pub values: Vec<BigRational>,
}

impl CharacterVector {
    pub fn zero(n: usize) -> Self {
        let len = class_count(n);
        Self {
            n,
            values: vec![BigRational::zero(); len],
        }
    }

    pub fn from_ints(n: usize, values: &[i64]) -> Self {
        Self {
            n,
            values: values
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        }
    }

    /// Evaluates `f` on each class representative's cycle type.
    pub fn from_fn(n: usize, mut f: impl FnMut(&CycleType) -> BigRational) -> Self {
        let classes = conjugacy_classes_unbounded(n);
        Self {
            n,
            values: classes.classes.iter().map(|(c, _)| f(c)).collect(),
        }
    }

    /// Value at the identity class, i.e. the degree.
    pub fn degree(&self) -> BigRational {
        self.values.first().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.is_integer())
    }

    pub fn mul_pointwise(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        Ok(Self {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        Ok(Self {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            n: self.n,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub n: usize,
    pub partitions: Vec<Partition>,
    pub classes: ClassData,
    pub rows: Vec<CharacterVector>,
}

impl CharacterTable {
    pub fn row(&self, lambda: &Partition) -> Option<&CharacterVector> {
        self.partitions
            .iter()
            .position(|p| p == lambda)
            .map(|i| &self.rows[i])
    }
}

pub(crate) fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn class_count(n: usize) -> usize {
    conjugacy_classes_unbounded(n).len()
}

fn check_rank(n: usize) -> Result<()> {
    if n > DEFAULT_MAX_RANK {
        Err(Error::RankTooLarge {
            n,
            max: DEFAULT_MAX_RANK,
        })
    } else {
        Ok(())
    }
}

/// Conjugacy classes of `S_n` with their sizes, identity first.
pub fn conjugacy_classes(n: usize) -> Result<Arc<ClassData>> {
    check_rank(n)?;
    Ok(conjugacy_classes_unbounded(n))
}

fn conjugacy_classes_unbounded(n: usize) -> Arc<ClassData> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<ClassData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap().get(&n) {
        return c.clone();
    }
    let nfact = factorial(n);
    let mut classes: Vec<(CycleType, u64)> = enumerate_partitions(n)
        .into_iter()
        .rev()
        .map(|p| {
            let c = CycleType(p);
            let size = nfact / c.centralizer_order();
            (c, size)
        })
        .collect();
    classes.sort_by(|a, b| a.0.cmp(&b.0));
    let data = Arc::new(ClassData { n, classes });
    cache.lock().unwrap().insert(n, data.clone());
    data
}

/// Cycle type of `g^p` for `g` of cycle type `mu`.
pub fn power_map(mu: &CycleType, p: usize) -> CycleType {
    assert!(p >= 1, "power must be positive");
    let mut cycles = Vec::new();
    for &c in mu.cycles() {
        let g = c.gcd(&p);
        cycles.extend(std::iter::repeat_n(c / g, g));
    }
    CycleType(Partition::from_unsorted(cycles))
}

/// Murnaghan–Nakayama evaluator with a memo keyed on `(λ, μ)`.
#[derive(Default)]
pub struct MurnaghanNakayama {
    memo: HashMap<(Vec<usize>, Vec<usize>), i64>,
}

impl MurnaghanNakayama {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&mut self, lambda: &Partition, mu: &CycleType) -> Result<i64> {
        if lambda.size() != mu.n() {
            return Err(Error::ShapeMismatch {
                lambda: lambda.size(),
                mu: mu.n(),
            });
        }
        Ok(self.eval(lambda.parts(), mu.cycles()))
    }

    fn eval(&mut self, lambda: &[usize], mu: &[usize]) -> i64 {
        if mu.is_empty() {
            return 1;
        }
        let key = (lambda.to_vec(), mu.to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let r = mu[0];
        let rest = &mu[1..];
        let len = lambda.len();
        // Beta numbers: strictly decreasing.
        let beta: Vec<usize> = lambda
            .iter()
            .enumerate()
            .map(|(i, &p)| p + len - 1 - i)
            .collect();
        let mut total = 0i64;
        for i in 0..len {
            if beta[i] < r {
                continue;
            }
            let target = beta[i] - r;
            if beta.contains(&target) {
                continue;
            }
            let between = beta
                .iter()
                .filter(|&&b| b > target && b < beta[i])
                .count();
            let sign = if between % 2 == 0 { 1 } else { -1 };
            let mut nb = beta.clone();
            nb[i] = target;
            nb.sort_unstable_by(|a, b| b.cmp(a));
            let parts: Vec<usize> = nb
                .iter()
                .enumerate()
                .map(|(j, &b)| b - (len - 1 - j))
                .filter(|&p| p > 0)
                .collect();
            total += sign * self.eval(&parts, rest);
        }
        self.memo.insert(key, total);
        total
    }
}

/// `χ^λ(μ)`.
pub fn character_value(lambda: &Partition, mu: &CycleType) -> Result<i64> {
    MurnaghanNakayama::new().value(lambda, mu)
}

/// `(1/n!) Σ_classes |class| χ(μ) ψ(μ)`.
pub fn inner_product(chi: &CharacterVector, psi: &CharacterVector) -> Result<BigRational> {
    if chi.n != psi.n {
        return Err(Error::RankMismatch(chi.n, psi.n));
    }
    let classes = conjugacy_classes_unbounded(chi.n);
    if chi.values.len() != classes.len() || psi.values.len() != classes.len() {
        return Err(Error::InvariantViolation {
            path: "values".into(),
            reason: format!("expected {} class values", classes.len()),
        });
    }
    let mut acc = BigRational::zero();
    for (((_, size), a), b) in classes.classes.iter().zip(&chi.values).zip(&psi.values) {
        acc += BigRational::from_integer(BigInt::from(*size)) * a * b;
    }
    Ok(acc / BigRational::from_integer(BigInt::from(factorial(chi.n))))
}

/// Builds the full table of `S_n` (no disk cache; see `store::TableCache`).
pub fn compute_character_table(n: usize) -> Result<CharacterTable> {
    check_rank(n)?;
    let classes = conjugacy_classes_unbounded(n);
    let partitions = enumerate_partitions(n);
    let mut mn = MurnaghanNakayama::new();
    let rows = partitions
        .iter()
        .map(|lam| {
            let values = classes
                .classes
                .iter()
                .map(|(mu, _)| {
                    mn.value(lam, mu)
                        .map(|v| BigRational::from_integer(BigInt::from(v)))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(CharacterVector { n, values })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CharacterTable {
        n,
        partitions,
        classes: (*classes).clone(),
        rows,
    })
}

/// Character table of `S_n`, memoized in process memory.
pub fn character_table(n: usize) -> Result<Arc<CharacterTable>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CharacterTable>>>> = OnceLock::new();
    check_rank(n)?;
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return Ok(t.clone());
    }
    let table = Arc::new(compute_character_table(n)?);
    cache.lock().unwrap().insert(n, table.clone());
    Ok(table)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q as int;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn ct(parts: &[usize]) -> CycleType {
        CycleType(p(parts))
    }

    /// All permutations of 0..n (Heap's algorithm would do; recursion is fine).
    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for perm in all_perms(n - 1) {
            for pos in 0..n {
                let mut q = perm.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn class_sizes_match_brute_force() {
        for n in 1..=6 {
            let classes = conjugacy_classes(n).unwrap();
            let mut counts: HashMap<CycleType, u64> = HashMap::new();
            for perm in all_perms(n) {
                *counts.entry(CycleType::of_permutation(&perm)).or_default() += 1;
            }
            for (c, size) in &classes.classes {
                assert_eq!(counts[c], *size, "n={n} class {c}");
            }
            assert_eq!(classes.classes.iter().map(|c| c.1).sum::<u64>(), factorial(n));
        }
        let c3 = conjugacy_classes(3).unwrap();
        let sizes: Vec<u64> = c3.classes.iter().map(|c| c.1).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        let c4 = conjugacy_classes(4).unwrap();
        let sizes: Vec<u64> = c4.classes.iter().map(|c| c.1).collect();
        assert_eq!(sizes, vec![1, 6, 3, 8, 6]);
        assert_eq!(conjugacy_classes(1).unwrap().classes.len(), 1);
        assert!(matches!(conjugacy_classes(15), Err(Error::RankTooLarge { .. })));
    }

    #[test]
    fn known_values() {
        for mu in enumerate_partitions(5) {
            assert_eq!(character_value(&p(&[5]), &CycleType(mu)).unwrap(), 1);
        }
        assert_eq!(character_value(&p(&[2, 1]), &ct(&[3])).unwrap(), -1);
        assert_eq!(character_value(&p(&[2, 2]), &ct(&[2, 2])).unwrap(), 2);
        assert!(matches!(
            character_value(&p(&[2, 1]), &ct(&[2, 2])),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    /// Standard representation of S_3 as the permutation representation
    /// minus the trivial one: χ = fixed points - 1.
    #[test]
    fn standard_rep_trace() {
        let table = character_table(3).unwrap();
        let row = table.row(&p(&[2, 1])).unwrap();
        for ((mu, _), v) in table.classes.classes.iter().zip(&row.values) {
            let perm = mu.representative();
            let fixed = (0..3).filter(|&i| perm[i] == i).count() as i64;
            assert_eq!(*v, int(fixed - 1));
        }
        let rows: Vec<Vec<BigRational>> = table.rows.iter().map(|r| r.values.clone()).collect();
        assert_eq!(
            rows,
            vec![
                vec![int(1), int(1), int(1)],
                vec![int(2), int(0), int(-1)],
                vec![int(1), int(-1), int(1)],
            ]
        );
        assert_eq!(character_table(0).unwrap().rows.len(), 1);
    }

    #[test]
    fn orthogonality_small() {
        for n in 0..=7 {
            let t = character_table(n).unwrap();
            for (i, a) in t.rows.iter().enumerate() {
                for (j, b) in t.rows.iter().enumerate() {
                    let ip = inner_product(a, b).unwrap();
                    assert_eq!(ip, int((i == j) as i64), "n={n}");
                }
            }
        }
    }

    #[test]
    fn inner_product_examples() {
        let pairs = CharacterVector::from_ints(4, &[6, 2, 2, 0, 0]);
        let trivial = CharacterVector::from_ints(4, &[1, 1, 1, 1, 1]);
        assert_eq!(inner_product(&pairs, &trivial).unwrap(), int(1));
        let regular = CharacterVector::from_ints(4, &[24, 0, 0, 0, 0]);
        let t = character_table(4).unwrap();
        assert_eq!(
            inner_product(&regular, t.row(&p(&[3, 1])).unwrap()).unwrap(),
            int(3)
        );
        assert!(matches!(
            inner_product(&regular, &CharacterVector::from_ints(3, &[1, 1, 1])),
            Err(Error::RankMismatch(4, 3))
        ));
    }

    #[test]
    fn power_maps() {
        assert_eq!(power_map(&ct(&[4]), 2), ct(&[2, 2]));
        assert_eq!(power_map(&ct(&[3, 1]), 2), ct(&[3, 1]));
        assert_eq!(power_map(&ct(&[6]), 3), ct(&[2, 2, 2]));
        assert_eq!(power_map(&ct(&[5, 2]), 1), ct(&[5, 2]));
    }

    #[test]
    fn representatives_have_their_type() {
        for n in 0..=7 {
            for mu in enumerate_partitions(n) {
                let c = CycleType(mu);
                assert_eq!(CycleType::of_permutation(&c.representative()), c);
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn cycle_type() -> impl Strategy<Value = CycleType> {
            (1usize..=9).prop_flat_map(|n| {
                let parts = enumerate_partitions(n);
                (0..parts.len()).prop_map(move |i| CycleType(parts[i].clone()))
            })
        }

        proptest! {
            #[test]
            fn power_map_composes(mu in cycle_type(), a in 1usize..7, b in 1usize..7) {
                prop_assert_eq!(power_map(&power_map(&mu, a), b), power_map(&mu, a * b));
            }

            #[test]
            fn conjugate_twists_by_sign(mu in cycle_type(), pick in 0usize..1000) {
                let parts = enumerate_partitions(mu.n());
                let lam = &parts[pick % parts.len()];
                let lhs = character_value(&lam.conjugate(), &mu).unwrap();
                let rhs = mu.sign() * character_value(lam, &mu).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
