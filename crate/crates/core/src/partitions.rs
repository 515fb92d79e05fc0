//! Integer partitions, hook-length dimensions, padded labels `V(λ)_n` and
//! horizontal strips.
//!
//! Partitions are ordered lexicographically on their parts. The canonical
//! listing used everywhere in the crate (table rows, enumeration output) is
//! *descending* in that order: `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates `parts` (strictly positive, weakly decreasing).
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvariantViolation {
                path: format!("{parts:?}"),
                reason: "parts must be positive".into(),
            });
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvariantViolation {
                path: format!("{parts:?}"),
                reason: "parts must be weakly decreasing".into(),
            });
        }
        Ok(Self { parts })
    }

    /// Sorts and drops zero parts. Useful when building shapes from counts.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Self { parts: vec![n] }
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Self { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|λ|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_1`, zero for the empty partition.
    pub fn first(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Self {
        let cols = self.first();
        let parts = (0..cols)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Self { parts }
    }

    /// Multiplicity `m_i` of each part size `i` (index 0 unused).
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.first() + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    /// Drops the first row: the inverse of [`pad_label`].
    pub fn unpad(&self) -> Self {
        Self {
            parts: self.parts.iter().skip(1).copied().collect(),
        }
    }

    /// Partitions obtained by removing one corner box.
    pub fn remove_one_box(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..self.parts.len() {
            if self.part(i) > self.part(i + 1) {
                let mut p = self.parts.clone();
                p[i] -= 1;
                if p[i] == 0 {
                    p.pop();
                }
                out.push(Self { parts: p });
            }
        }
        out
    }

    /// Partitions obtained by adding one box.
    pub fn add_one_box(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..=self.parts.len() {
            if i == 0 || self.part(i) < self.part(i - 1) {
                let mut p = self.parts.clone();
                if i == p.len() {
                    p.push(1);
                } else {
                    p[i] += 1;
                }
                out.push(Self { parts: p });
            }
        }
        out
    }

    /// `V(λ)` style label of the padded partition this one represents,
    /// i.e. the label of `self` with the first row dropped.
    pub fn padded_name(&self) -> String {
        let inner = self.unpad();
        if inner.is_empty() {
            "V(0)".to_string()
        } else {
            let body: Vec<String> = inner.parts.iter().map(|p| p.to_string()).collect();
            format!("V({})", body.join(","))
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts)
            .map_err(|e| serde::de::Error::custom(format!("invariant violation: {e}")))
    }
}

/// All partitions of `n`, lexicographically descending.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of standard Young tableaux of shape `λ`, by the hook length formula.
pub fn hook_dimension(lambda: &Partition) -> u64 {
    let conj = lambda.conjugate();
    let mut num = BigUint::one();
    for i in 2..=lambda.size() {
        num *= i as u64;
    }
    let mut den = BigUint::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            let hook = (row - j - 1) + (conj.part(j) - i - 1) + 1;
            den *= hook as u64;
        }
    }
    (num / den)
        .to_u64()
        .expect("representation dimension exceeds u64")
}

/// `(n - |λ|, λ_1, λ_2, ...)`.
pub fn pad_label(lambda: &Partition, n: usize) -> Result<Partition> {
    let needed = lambda.size() + lambda.first();
    if n < needed {
        return Err(Error::PaddingUndefined {
            lambda: lambda.to_string(),
            n,
            needed,
        });
    }
    let mut parts = Vec::with_capacity(lambda.len() + 1);
    if n > lambda.size() {
        parts.push(n - lambda.size());
    }
    parts.extend_from_slice(lambda.parts());
    Ok(Partition { parts })
}

/// All `μ ⊇ λ` with `|μ| = |λ| + r` such that `μ/λ` has at most one box per
/// column. Returned in canonical (descending) order.
pub fn horizontal_strips(lambda: &Partition, r: usize) -> Vec<Partition> {
    // Row i (i >= 1) of μ may grow up to λ_{i-1}; row 0 takes the rest.
    let l = lambda.len();
    let mut out = Vec::new();
    let mut extra = vec![0usize; l + 1];

    fn rec(
        lambda: &Partition,
        row: usize,
        remaining: usize,
        extra: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        let l = lambda.len();
        if row > l {
            let mut parts: Vec<usize> = (0..=l).map(|i| lambda.part(i) + extra[i]).collect();
            parts[0] += remaining;
            parts.retain(|&p| p > 0);
            out.push(Partition { parts });
            return;
        }
        let cap = lambda.part(row - 1) - lambda.part(row);
        for e in 0..=cap.min(remaining) {
            extra[row] = e;
            rec(lambda, row + 1, remaining - e, extra, out);
        }
        extra[row] = 0;
    }

    if l == 0 {
        return vec![Partition::row(r)];
    }
    rec(lambda, 1, r, &mut extra, &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Brute force: all weakly decreasing positive sequences summing to n,
    /// found by filtering compositions.
    fn brute_force_count(n: usize) -> usize {
        fn compositions(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 1..=n {
                for mut rest in compositions(n - first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        compositions(n)
            .into_iter()
            .filter(|c| c.windows(2).all(|w| w[0] >= w[1]))
            .count()
    }

    /// Counts standard Young tableaux by filling 1..n box by box.
    fn brute_force_syt(shape: &Partition) -> u64 {
        fn rec(cur: &Partition, target: &Partition) -> u64 {
            if cur == target {
                return 1;
            }
            cur.add_one_box()
                .into_iter()
                .filter(|q| (0..q.len()).all(|i| q.part(i) <= target.part(i)))
                .map(|q| rec(&q, target))
                .sum()
        }
        rec(&Partition::empty(), shape)
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        let four = enumerate_partitions(4);
        assert_eq!(
            four,
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
        assert_eq!(enumerate_partitions(8).len(), 22);
        for n in 0..=12 {
            assert_eq!(enumerate_partitions(n).len(), brute_force_count(n), "n={n}");
        }
    }

    #[test]
    fn hook_dims() {
        assert_eq!(hook_dimension(&p(&[5])), 1);
        assert_eq!(hook_dimension(&p(&[3, 1])), 3);
        assert_eq!(hook_dimension(&p(&[2, 2])), 2);
        for n in 0..=7 {
            for lam in enumerate_partitions(n) {
                assert_eq!(hook_dimension(&lam), brute_force_syt(&lam), "{lam}");
            }
        }
    }

    #[test]
    fn sum_of_squares_is_factorial() {
        let mut fact: u64 = 1;
        for n in 0..=10u64 {
            if n > 0 {
                fact *= n;
            }
            let s: u64 = enumerate_partitions(n as usize)
                .iter()
                .map(|l| hook_dimension(l).pow(2))
                .sum();
            assert_eq!(s, fact);
        }
    }

    #[test]
    fn padding() {
        assert_eq!(pad_label(&Partition::empty(), 5).unwrap(), p(&[5]));
        assert_eq!(pad_label(&Partition::empty(), 0).unwrap(), Partition::empty());
        assert_eq!(pad_label(&p(&[1]), 4).unwrap(), p(&[3, 1]));
        assert_eq!(pad_label(&p(&[2, 1]), 7).unwrap(), p(&[4, 2, 1]));
        assert!(matches!(
            pad_label(&p(&[2, 1]), 4),
            Err(Error::PaddingUndefined { needed: 5, .. })
        ));
        for n in 0..=9 {
            for k in 0..=n {
                for lam in enumerate_partitions(k) {
                    if let Ok(mu) = pad_label(&lam, n) {
                        assert_eq!(mu.unpad(), lam);
                        assert_eq!(mu.size(), n);
                    }
                }
            }
        }
    }

    #[test]
    fn strips() {
        assert_eq!(horizontal_strips(&Partition::empty(), 4), vec![p(&[4])]);
        assert_eq!(horizontal_strips(&p(&[1]), 2), vec![p(&[3]), p(&[2, 1])]);
        assert_eq!(horizontal_strips(&p(&[2]), 0), vec![p(&[2])]);
        assert_eq!(
            horizontal_strips(&p(&[2, 1]), 2),
            vec![p(&[4, 1]), p(&[3, 2]), p(&[3, 1, 1]), p(&[2, 2, 1])]
        );
    }

    #[test]
    fn conjugates_and_validation() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(p(&[3, 1]).padded_name(), "V(1)");
        assert_eq!(p(&[3]).padded_name(), "V(0)");
    }
}
