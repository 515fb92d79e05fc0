//! `S_n`-representations as multiplicity maps over partitions of `n`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{q, Q};
use crate::partitions::{enumerate_partitions, hook_dimension, horizontal_strips, Partition};
use crate::symchar::{
    character_table, conjugacy_classes, inner_product, power_map, CharacterVector, CycleType,
};

/// Parity of a graded piece: decides symmetric vs exterior powers and
/// Koszul signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(degree: i64) -> Self {
        if degree.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Sum of parities.
    pub fn plus(self, other: Self) -> Self {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn times(self, w: usize) -> Self {
        if self.is_odd() && w % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(Error::Parse(format!("unknown parity {other:?}"))),
        }
    }
}

/// A genuine representation: non-negative multiplicities, zero entries never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymRep {
    pub n: usize,
    mults: BTreeMap<Partition, u64>,
}

/// Integer combination of irreducibles.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VirtualRep {
    pub n: usize,
    mults: BTreeMap<Partition, i64>,
}

impl SymRep {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            mults: BTreeMap::new(),
        }
    }

    pub fn irreducible(lambda: Partition) -> Self {
        let mut r = Self::zero(lambda.size());
        r.mults.insert(lambda, 1);
        r
    }

    pub fn trivial(n: usize) -> Self {
        Self::irreducible(Partition::row(n))
    }

    pub fn sign(n: usize) -> Self {
        Self::irreducible(Partition::column(n))
    }

    /// Builds from `(λ, multiplicity)` pairs; every `λ` must partition `n`.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (Partition, u64)>) -> Result<Self> {
        let mut r = Self::zero(n);
        for (lambda, m) in pairs {
            if lambda.size() != n {
                return Err(Error::InvariantViolation {
                    path: lambda.to_string(),
                    reason: format!("not a partition of {n}"),
                });
            }
            r.add_mult(lambda, m);
        }
        Ok(r)
    }

    pub fn add_mult(&mut self, lambda: Partition, m: u64) {
        debug_assert_eq!(lambda.size(), self.n);
        if m > 0 {
            *self.mults.entry(lambda).or_insert(0) += m;
        }
    }

    pub fn mult(&self, lambda: &Partition) -> u64 {
        self.mults.get(lambda).copied().unwrap_or(0)
    }

    /// Constituents in canonical (descending) order.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, u64)> {
        self.mults.iter().rev().map(|(p, &m)| (p, m))
    }

    pub fn is_zero(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn dimension(&self) -> u64 {
        self.mults.iter().map(|(p, m)| m * hook_dimension(p)).sum()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        let mut r = self.clone();
        for (p, m) in other.iter() {
            r.add_mult(p.clone(), m);
        }
        Ok(r)
    }

    pub fn scaled(&self, c: u64) -> Self {
        let mut r = Self::zero(self.n);
        for (p, m) in self.iter() {
            r.add_mult(p.clone(), m * c);
        }
        r
    }

    /// `self - other` when every multiplicity stays non-negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if self.n != other.n {
            return None;
        }
        let mut r = self.clone();
        for (p, m) in other.iter() {
            let cur = r.mult(p);
            if cur < m {
                return None;
            }
            if cur == m {
                r.mults.remove(p);
            } else {
                r.mults.insert(p.clone(), cur - m);
            }
        }
        Some(r)
    }

    pub fn to_virtual(&self) -> VirtualRep {
        VirtualRep {
            n: self.n,
            mults: self.mults.iter().map(|(p, &m)| (p.clone(), m as i64)).collect(),
        }
    }

    /// `Σ mult(λ) χ^λ`.
    pub fn character(&self) -> Result<CharacterVector> {
        let table = character_table(self.n)?;
        let mut chi = CharacterVector::zero(self.n);
        for (p, m) in self.iter() {
            let row = table.row(p).expect("partition of n has a table row");
            chi = chi.add(&row.scale(&q(m as i64)))?;
        }
        Ok(chi)
    }

    /// Multiplicity of `V(λ)_n`, zero when the padding is undefined.
    pub fn padded_mult(&self, lambda: &Partition) -> u64 {
        match crate::partitions::pad_label(lambda, self.n) {
            Ok(mu) => self.mult(&mu),
            Err(_) => 0,
        }
    }

    /// Multiplicities keyed by the unpadded label `λ` of each `V(λ)_n`.
    pub fn padded_mults(&self) -> BTreeMap<Partition, u64> {
        self.iter().map(|(p, m)| (p.unpad(), m)).collect()
    }

    /// `V(0) + V(1) + 2 V(1,1)` style rendering.
    pub fn padded_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.iter()
            .map(|(p, m)| {
                if m == 1 {
                    p.padded_name()
                } else {
                    format!("{m} {}", p.padded_name())
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for SymRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let s = self
            .iter()
            .map(|(p, m)| {
                if m == 1 {
                    format!("V{p}")
                } else {
                    format!("{m} V{p}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ");
        f.write_str(&s)
    }
}

impl VirtualRep {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            mults: BTreeMap::new(),
        }
    }

    pub fn mult(&self, lambda: &Partition) -> i64 {
        self.mults.get(lambda).copied().unwrap_or(0)
    }

    pub fn add_mult(&mut self, lambda: Partition, m: i64) {
        let e = self.mults.entry(lambda.clone()).or_insert(0);
        *e += m;
        if *e == 0 {
            self.mults.remove(&lambda);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, i64)> {
        self.mults.iter().rev().map(|(p, &m)| (p, m))
    }

    pub fn is_zero(&self) -> bool {
        self.mults.is_empty()
    }

    /// The genuine representation, when no multiplicity is negative.
    pub fn to_genuine(&self) -> Option<SymRep> {
        let mut r = SymRep::zero(self.n);
        for (p, m) in self.iter() {
            if m < 0 {
                return None;
            }
            r.add_mult(p.clone(), m as u64);
        }
        Some(r)
    }
}

#[derive(Serialize, Deserialize)]
struct Entry<T> {
    lambda: Partition,
    mult: T,
}

#[derive(Serialize, Deserialize)]
struct RepWire<T> {
    n: usize,
    mults: Vec<Entry<T>>,
}

impl Serialize for SymRep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RepWire {
            n: self.n,
            mults: self
                .iter()
                .map(|(p, m)| Entry {
                    lambda: p.clone(),
                    mult: m,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymRep {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        // Signed on the wire so a negative multiplicity is reported as an
        // invariant violation rather than a type error.
        let wire = RepWire::<i64>::deserialize(d)?;
        let mut r = SymRep::zero(wire.n);
        for (i, e) in wire.mults.into_iter().enumerate() {
            if e.mult < 0 {
                return Err(serde::de::Error::custom(format!(
                    "invariant violation at mults[{i}]: negative multiplicity {}",
                    e.mult
                )));
            }
            if e.lambda.size() != wire.n {
                return Err(serde::de::Error::custom(format!(
                    "invariant violation at mults[{i}]: {} is not a partition of {}",
                    e.lambda, wire.n
                )));
            }
            r.add_mult(e.lambda, e.mult as u64);
        }
        Ok(r)
    }
}

impl Serialize for VirtualRep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RepWire {
            n: self.n,
            mults: self
                .iter()
                .map(|(p, m)| Entry {
                    lambda: p.clone(),
                    mult: m,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for VirtualRep {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = RepWire::<i64>::deserialize(d)?;
        let mut r = VirtualRep::zero(wire.n);
        for e in wire.mults {
            r.add_mult(e.lambda, e.mult);
        }
        Ok(r)
    }
}

fn decompose_to_virtual(chi: &CharacterVector) -> Result<(VirtualRep, Vec<(Partition, Q)>)> {
    let table = character_table(chi.n)?;
    let mut v = VirtualRep::zero(chi.n);
    let mut bad = Vec::new();
    for (lambda, row) in table.partitions.iter().zip(&table.rows) {
        let m = inner_product(chi, row)?;
        if !m.is_integer() {
            bad.push((lambda.clone(), m));
            continue;
        }
        let mi = m
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::ScaleExceeded("multiplicity exceeds i64".into()))?;
        v.add_mult(lambda.clone(), mi);
    }
    Ok((v, bad))
}

/// `mult(λ) = ⟨χ, χ^λ⟩`; rejects anything that is not a genuine character.
pub fn decompose_character(chi: &CharacterVector) -> Result<SymRep> {
    let (v, bad) = decompose_to_virtual(chi)?;
    if let Some((lambda, m)) = bad.into_iter().next() {
        return Err(Error::NotACharacter {
            lambda: lambda.to_string(),
            value: m.to_string(),
        });
    }
    if let Some((lambda, m)) = v.iter().find(|(_, m)| *m < 0) {
        return Err(Error::NotACharacter {
            lambda: lambda.to_string(),
            value: m.to_string(),
        });
    }
    Ok(v.to_genuine().expect("checked non-negative"))
}

/// Decomposition allowing negative (but integral) multiplicities.
pub fn decompose_virtual(chi: &CharacterVector) -> Result<VirtualRep> {
    let (v, bad) = decompose_to_virtual(chi)?;
    if let Some((lambda, m)) = bad.into_iter().next() {
        return Err(Error::NotACharacter {
            lambda: lambda.to_string(),
            value: m.to_string(),
        });
    }
    Ok(v)
}

/// Inner tensor product.
pub fn kronecker(a: &SymRep, b: &SymRep) -> Result<SymRep> {
    if a.n != b.n {
        return Err(Error::RankMismatch(a.n, b.n));
    }
    if a.is_zero() || b.is_zero() {
        return Ok(SymRep::zero(a.n));
    }
    decompose_character(&a.character()?.mul_pointwise(&b.character()?)?)
}

pub fn sign_twist(a: &SymRep) -> SymRep {
    let mut r = SymRep::zero(a.n);
    for (p, m) in a.iter() {
        r.add_mult(p.conjugate(), m);
    }
    r
}

/// `Res^{S_n}_{S_m}` by iterated single-box branching.
pub fn restrict_to(a: &SymRep, m: usize) -> Result<SymRep> {
    if m > a.n {
        return Err(Error::RankMismatch(a.n, m));
    }
    let mut cur: BTreeMap<Partition, u64> = a.mults.clone();
    for _ in m..a.n {
        let mut next: BTreeMap<Partition, u64> = BTreeMap::new();
        for (p, mult) in &cur {
            for smaller in p.remove_one_box() {
                *next.entry(smaller).or_insert(0) += mult;
            }
        }
        cur = next;
    }
    Ok(SymRep { n: m, mults: cur })
}

/// Restriction computed on characters: `χ(μ ∪ 1^{n-m})`.
pub fn restrict_character(chi: &CharacterVector, m: usize) -> Result<CharacterVector> {
    if m > chi.n {
        return Err(Error::RankMismatch(chi.n, m));
    }
    let big = conjugacy_classes(chi.n)?;
    Ok(CharacterVector::from_fn(m, |mu| {
        let mut parts = mu.cycles().to_vec();
        parts.extend(std::iter::repeat_n(1, chi.n - m));
        let padded = CycleType(Partition::from_unsorted(parts));
        chi.values[big.index_of(&padded).expect("class exists")].clone()
    }))
}

/// `Ind_{S_m × S_{n-m}}^{S_n}(V_λ ⊠ trivial)`, by Pieri's rule.
pub fn induce_with_trivial(lambda: &Partition, n: usize) -> Result<SymRep> {
    let m = lambda.size();
    if n < m {
        return Err(Error::RankMismatch(m, n));
    }
    let mut r = SymRep::zero(n);
    for mu in horizontal_strips(lambda, n - m) {
        r.add_mult(mu, 1);
    }
    Ok(r)
}

/// `M(A)_n` for a representation `A` of `S_m`: induce every constituent.
pub fn induce_rep_with_trivial(a: &SymRep, n: usize) -> Result<SymRep> {
    if n < a.n {
        return Ok(SymRep::zero(n));
    }
    let mut r = SymRep::zero(n);
    for (p, m) in a.iter() {
        for (mu, k) in induce_with_trivial(p, n)?.iter() {
            r.add_mult(mu.clone(), k * m);
        }
    }
    Ok(r)
}

/// Character of `Ind_{S_a × S_b}^{S_{a+b}}(χ ⊠ ψ)`:
/// `Σ_{α ∪ β = μ} z_μ / (z_α z_β) χ(α) ψ(β)`.
pub fn induce_young_character(chi: &CharacterVector, psi: &CharacterVector) -> Result<CharacterVector> {
    let (a, b) = (chi.n, psi.n);
    let ca = conjugacy_classes(a)?;
    let cb = conjugacy_classes(b)?;
    let n = a + b;
    Ok(CharacterVector::from_fn(n, |mu| {
        let z_mu = mu.centralizer_order();
        let mut total = Q::zero();
        // Each cycle of μ goes to the left or right factor; iterate over
        // sub-multisets by part multiplicity.
        let mult = mu.0.multiplicities();
        let sizes: Vec<usize> = (1..mult.len()).filter(|&i| mult[i] > 0).collect();
        let mut choice = vec![0usize; sizes.len()];
        loop {
            let left_size: usize = sizes.iter().zip(&choice).map(|(s, c)| s * c).sum();
            if left_size == a {
                let mut left = Vec::new();
                let mut right = Vec::new();
                for (s, &c) in sizes.iter().zip(&choice) {
                    left.extend(std::iter::repeat_n(*s, c));
                    right.extend(std::iter::repeat_n(*s, mult[*s] - c));
                }
                let alpha = CycleType(Partition::from_unsorted(left));
                let beta = CycleType(Partition::from_unsorted(right));
                let coef = Q::new(
                    BigInt::from(z_mu),
                    BigInt::from(alpha.centralizer_order() * beta.centralizer_order()),
                );
                let va = &chi.values[ca.index_of(&alpha).unwrap()];
                let vb = &psi.values[cb.index_of(&beta).unwrap()];
                total += coef * va * vb;
            }
            // next choice vector
            let mut i = 0;
            loop {
                if i == sizes.len() {
                    return total;
                }
                if choice[i] < mult[sizes[i]] {
                    choice[i] += 1;
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }))
}

/// Degree-`j` graded-symmetric power: `Sym^j` for even parity, `Λ^j` for odd,
/// via the cycle-index formula
/// `χ(g) = Σ_{ν ⊢ j} ε(ν)/z_ν Π_{p ∈ ν} χ_A(g^p)`.
pub fn graded_power(a: &SymRep, j: usize, parity: Parity) -> Result<SymRep> {
    if j == 0 {
        return Ok(SymRep::trivial(a.n));
    }
    if a.is_zero() {
        return Ok(SymRep::zero(a.n));
    }
    let chi = a.character()?;
    let classes = conjugacy_classes(a.n)?;
    let shapes: Vec<(CycleType, Q)> = enumerate_partitions(j)
        .into_iter()
        .map(|nu| {
            let c = CycleType(nu);
            let sign = if parity.is_odd() { c.sign() } else { 1 };
            let w = Q::new(BigInt::from(sign), BigInt::from(c.centralizer_order()));
            (c, w)
        })
        .collect();
    let out = CharacterVector::from_fn(a.n, |mu| {
        let mut total = Q::zero();
        for (nu, w) in &shapes {
            let mut prod = w.clone();
            for &p in nu.cycles() {
                let idx = classes.index_of(&power_map(mu, p)).unwrap();
                prod *= &chi.values[idx];
            }
            total += prod;
        }
        total
    });
    decompose_character(&out)
}


#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn rep(n: usize, pairs: &[(&[usize], u64)]) -> SymRep {
        SymRep::from_pairs(n, pairs.iter().map(|(l, m)| (p(l), *m))).unwrap()
    }

    fn perm_rep(n: usize) -> SymRep {
        induce_with_trivial(&p(&[1]), n).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let reg = CharacterVector::from_ints(3, &[6, 0, 0]);
        assert_eq!(
            decompose_character(&reg).unwrap(),
            rep(3, &[(&[3], 1), (&[2, 1], 2), (&[1, 1, 1], 1)])
        );
        let pairs = CharacterVector::from_ints(4, &[6, 2, 2, 0, 0]);
        assert_eq!(
            decompose_character(&pairs).unwrap(),
            rep(4, &[(&[4], 1), (&[3, 1], 1), (&[2, 2], 1)])
        );
        assert!(decompose_character(&CharacterVector::zero(4)).unwrap().is_zero());
        let half = CharacterVector::from_ints(2, &[1, 0]);
        assert!(matches!(decompose_character(&half), Err(Error::NotACharacter { .. })));
        let neg = CharacterVector::from_ints(2, &[0, 2]);
        assert!(matches!(decompose_character(&neg), Err(Error::NotACharacter { .. })));
    }

    #[test]
    fn kronecker_examples() {
        let x = rep(4, &[(&[3, 1], 2), (&[2, 2], 1)]);
        assert_eq!(kronecker(&SymRep::trivial(4), &x).unwrap(), x);
        let std3 = rep(3, &[(&[2, 1], 1)]);
        assert_eq!(
            kronecker(&std3, &std3).unwrap(),
            rep(3, &[(&[3], 1), (&[2, 1], 1), (&[1, 1, 1], 1)])
        );
        assert_eq!(
            kronecker(&rep(4, &[(&[3, 1], 1)]), &SymRep::sign(4)).unwrap(),
            rep(4, &[(&[2, 1, 1], 1)])
        );
        assert!(kronecker(&std3, &SymRep::trivial(4)).is_err());
    }

    #[test]
    fn sign_twist_examples() {
        assert_eq!(sign_twist(&SymRep::trivial(5)), SymRep::sign(5));
        assert_eq!(sign_twist(&rep(4, &[(&[3, 1], 1)])), rep(4, &[(&[2, 1, 1], 1)]));
        let x = rep(5, &[(&[3, 2], 2), (&[4, 1], 1)]);
        assert_eq!(sign_twist(&sign_twist(&x)), x);
    }

    #[test]
    fn restriction_examples() {
        assert_eq!(restrict_to(&SymRep::trivial(4), 3).unwrap(), SymRep::trivial(3));
        assert_eq!(
            restrict_to(&rep(4, &[(&[2, 2], 1)]), 3).unwrap(),
            rep(3, &[(&[2, 1], 1)])
        );
        assert_eq!(
            restrict_to(&rep(4, &[(&[3, 1], 1)]), 3).unwrap(),
            rep(3, &[(&[3], 1), (&[2, 1], 1)])
        );
        assert!(restrict_to(&SymRep::trivial(3), 4).is_err());
    }

    #[test]
    fn restriction_routes_agree() {
        for n in 1..=7 {
            for lam in enumerate_partitions(n) {
                let r = SymRep::irreducible(lam.clone());
                for m in 0..=n {
                    let by_branching = restrict_to(&r, m).unwrap();
                    let by_chars =
                        decompose_character(&restrict_character(&r.character().unwrap(), m).unwrap())
                            .unwrap();
                    assert_eq!(by_branching, by_chars, "{lam} -> S_{m}");
                }
            }
        }
    }

    #[test]
    fn induction_examples() {
        assert_eq!(induce_with_trivial(&Partition::empty(), 5).unwrap(), SymRep::trivial(5));
        assert_eq!(
            induce_with_trivial(&p(&[1]), 3).unwrap(),
            rep(3, &[(&[3], 1), (&[2, 1], 1)])
        );
        for k in 4..=8 {
            let got = induce_with_trivial(&p(&[1, 1]), k).unwrap();
            let mut want = SymRep::zero(k);
            want.add_mult(crate::partitions::pad_label(&p(&[1]), k).unwrap(), 1);
            want.add_mult(crate::partitions::pad_label(&p(&[1, 1]), k).unwrap(), 1);
            assert_eq!(got, want);
        }
    }

    #[test]
    fn pieri_matches_induced_characters() {
        for m in 0..=5 {
            for lam in enumerate_partitions(m) {
                let chi = SymRep::irreducible(lam.clone()).character().unwrap();
                for n in m..=9 {
                    let triv = SymRep::trivial(n - m).character().unwrap();
                    let ind = induce_young_character(&chi, &triv).unwrap();
                    assert_eq!(
                        decompose_character(&ind).unwrap(),
                        induce_with_trivial(&lam, n).unwrap(),
                        "{lam} to S_{n}"
                    );
                }
            }
        }
    }

    #[test]
    fn frobenius_reciprocity() {
        for m in 0..=5 {
            for lam in enumerate_partitions(m) {
                for n in m..=8 {
                    let ind = induce_with_trivial(&lam, n).unwrap();
                    for mu in enumerate_partitions(n) {
                        let res = restrict_to(&SymRep::irreducible(mu.clone()), m).unwrap();
                        // ⟨Ind(V_λ ⊠ 1), V_μ⟩ = ⟨V_λ ⊠ 1, Res V_μ⟩ = mult of V_λ ⊠ 1
                        // in Res_{S_m × S_{n-m}} V_μ; with a trivial second factor this
                        // is the trivial multiplicity of Res_{S_{n-m}} of the skew shape,
                        // checked here through Pieri containment.
                        let lhs = ind.mult(&mu);
                        let rhs = crate::partitions::horizontal_strips(&lam, n - m)
                            .iter()
                            .filter(|x| **x == mu)
                            .count() as u64;
                        assert_eq!(lhs, rhs);
                        assert!(res.mult(&lam) >= lhs);
                    }
                }
            }
        }
    }

    #[test]
    fn graded_power_examples() {
        let perm = perm_rep(4);
        assert_eq!(graded_power(&perm, 0, Parity::Odd).unwrap(), SymRep::trivial(4));
        assert_eq!(
            graded_power(&perm, 2, Parity::Odd).unwrap(),
            rep(4, &[(&[3, 1], 1), (&[2, 1, 1], 1)])
        );
        assert_eq!(
            graded_power(&perm, 2, Parity::Even).unwrap(),
            rep(4, &[(&[4], 2), (&[3, 1], 2), (&[2, 2], 1)])
        );
    }

    #[test]
    fn symmetric_square_of_points_is_multiset_permutation_rep() {
        // Sym² of the permutation rep permutes 2-multisets; its character
        // counts fixed multisets.
        let classes = conjugacy_classes(4).unwrap();
        let values = classes
            .classes
            .iter()
            .map(|(c, _)| {
                let g = c.representative();
                let fixed = (0..4)
                    .flat_map(|a| (a..4).map(move |b| (a, b)))
                    .filter(|&(a, b)| {
                        let (x, y) = (g[a].min(g[b]), g[a].max(g[b]));
                        (x, y) == (a, b)
                    })
                    .count();
                Q::from_integer((fixed as i64).into())
            })
            .collect();
        let oracle = decompose_character(&CharacterVector { n: 4, values }).unwrap();
        assert_eq!(graded_power(&perm_rep(4), 2, Parity::Even).unwrap(), oracle);
    }

    fn binom(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn graded_power_dimensions_match_hilbert_series() {
        let a = rep(4, &[(&[3, 1], 1), (&[2, 2], 1)]);
        let d = a.dimension();
        for j in 0..=6u64 {
            let even = graded_power(&a, j as usize, Parity::Even).unwrap().dimension();
            let odd = graded_power(&a, j as usize, Parity::Odd).unwrap().dimension();
            assert_eq!(even, binom(d + j - 1, j), "Sym^{j}");
            assert_eq!(odd, binom(d, j), "Λ^{j}");
        }
    }

    #[test]
    fn kronecker_dimension_is_multiplicative() {
        for lam in enumerate_partitions(5) {
            for mu in enumerate_partitions(5) {
                let a = SymRep::irreducible(lam.clone());
                let b = SymRep::irreducible(mu.clone());
                assert_eq!(
                    kronecker(&a, &b).unwrap().dimension(),
                    a.dimension() * b.dimension()
                );
            }
        }
    }

    #[test]
    fn serde_rejects_negative_multiplicity() {
        let bad = r#"{"n":2,"mults":[{"lambda":[2],"mult":-1}]}"#;
        let err = serde_json::from_str::<SymRep>(bad).unwrap_err().to_string();
        assert!(err.contains("negative multiplicity"), "{err}");
        let x = rep(4, &[(&[3, 1], 2), (&[2, 2], 1)]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(serde_json::from_str::<SymRep>(&s).unwrap(), x);
    }

    #[test]
    fn padded_rendering() {
        let pairs = rep(5, &[(&[5], 1), (&[4, 1], 1), (&[3, 2], 1)]);
        assert_eq!(pairs.padded_string(), "V(0) + V(1) + V(2)");
        assert_eq!(pairs.padded_mult(&p(&[2])), 1);
        assert_eq!(pairs.padded_mult(&p(&[3])), 0);
    }
}
