//! Free graded Lie algebras and free Gerstenhaber algebras on labelled
//! generators, as `S_n`-representations.
//!
//! Generators `x_1, …, x_n` have degree `d` and the bracket has degree
//! `m - 1`. After shifting by `m - 1` the bracket becomes an ordinary graded
//! Lie bracket on generators of parity `d + m - 1`, which is the only parity
//! entering sign rules. A weight-`w` bracket word sits in internal degree
//! `w·d + (w - 1)(m - 1)`.

pub mod words;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Q;
use crate::fimod::{weight_of, FIModuleTable};
use crate::reps::{decompose_character, graded_power, kronecker, Parity, SymRep};
use crate::symchar::{conjugacy_classes, CharacterVector};

pub use words::{brute_force_lie_dim, lie_coordinates, BasisWord, LieExpr, Tensor};

/// Largest generator count for character computations.
pub const MAX_GENERATORS: usize = 8;
/// Largest Lie weight for character computations.
pub const MAX_LIE_WEIGHT: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSet {
    pub count: usize,
    /// Degree of each generator.
    pub d: usize,
    /// The bracket has degree `m - 1`.
    pub m: usize,
}

impl GeneratorSet {
    pub fn new(count: usize, d: usize, m: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::OutOfRange(format!("generator degree d = {d} must be ≥ 2")));
        }
        if m < 1 {
            return Err(Error::OutOfRange("m must be ≥ 1".into()));
        }
        if count > u8::MAX as usize {
            return Err(Error::ScaleExceeded(format!("{count} generators")));
        }
        Ok(Self { count, d, m })
    }

    /// A generator set with the given bracket parity and no degree data;
    /// `d = 2, m = 1` for even and `d = 2, m = 2` for odd.
    pub fn with_parity(count: usize, parity: Parity) -> Self {
        let m = if parity.is_odd() { 2 } else { 1 };
        Self { count, d: 2, m }
    }

    pub fn effective_parity(&self) -> Parity {
        Parity::of((self.d + self.m - 1) as i64)
    }

    /// Internal degree of a weight-`w` bracket word.
    pub fn internal_degree(&self, w: usize) -> usize {
        w * self.d + (w - 1) * (self.m - 1)
    }

    /// The weight whose bracket words sit in internal degree `l`, if any.
    pub fn weight_in_degree(&self, l: usize) -> Option<usize> {
        let step = self.d + self.m - 1;
        let shifted = l + self.m - 1;
        (l > 0 && shifted.is_multiple_of(step)).then_some(shifted / step)
    }

    pub fn generator_name(&self, x: u8) -> String {
        format!("x{}", x + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieBasis {
    pub gens: GeneratorSet,
    pub weight: usize,
    pub elements: Vec<BasisWord>,
}

impl LieBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, b: &BasisWord) -> Option<usize> {
        self.elements.iter().position(|e| e == b)
    }

    pub fn rendered(&self) -> Vec<String> {
        let names = |x: u8| self.gens.generator_name(x);
        self.elements.iter().map(|b| b.render(&names)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedPieceRep {
    pub weight: usize,
    pub internal_degree: usize,
    pub action: SymRep,
}

/// Super-Lyndon basis of the weight-`l` piece.
pub fn lie_basis(gens: &GeneratorSet, l: usize) -> LieBasis {
    LieBasis {
        gens: *gens,
        weight: l,
        elements: if l == 0 {
            Vec::new()
        } else {
            words::super_lyndon_basis(gens.count as u8, l, gens.effective_parity())
        },
    }
}

/// Coordinates of a weight-homogeneous combination of bracket expressions in
/// the basis of [`lie_basis`].
pub fn bracket_expand(gens: &GeneratorSet, expr: &[(Q, LieExpr)]) -> Result<Vec<(BasisWord, Q)>> {
    let Some((_, first)) = expr.first() else {
        return Ok(Vec::new());
    };
    let w = first.weight();
    for (_, e) in expr {
        if e.weight() != w {
            return Err(Error::NonHomogeneous(w, e.weight()));
        }
        if e.max_letter() as usize >= gens.count {
            return Err(Error::OutOfRange(format!(
                "{e} uses a generator beyond x{}",
                gens.count
            )));
        }
    }
    let parity = gens.effective_parity();
    let mut t = Tensor::new();
    for (c, e) in expr {
        words::add_scaled(&mut t, &e.expand(parity), c);
    }
    lie_coordinates(&t, parity, None)
}

fn check_scale(count: usize, weight: usize) -> Result<()> {
    if count > MAX_GENERATORS || weight > MAX_LIE_WEIGHT {
        return Err(Error::ScaleExceeded(format!(
            "free Lie character needs n ≤ {MAX_GENERATORS} and weight ≤ {MAX_LIE_WEIGHT}, got n = {count}, weight {weight}"
        )));
    }
    Ok(())
}

/// Trace of the permutation `perm` of generators on the weight-`l` piece.
pub fn lie_trace(gens: &GeneratorSet, basis: &LieBasis, perm: &[usize]) -> Result<Q> {
    let parity = gens.effective_parity();
    let mut trace = Q::zero();
    for b in &basis.elements {
        let lead = b.leading_word();
        let mut content: Vec<u8> = lead.clone();
        content.sort_unstable();
        let mut moved: Vec<u8> = lead.iter().map(|&x| perm[x as usize] as u8).collect();
        moved.sort_unstable();
        if content != moved {
            continue;
        }
        let image = words::relabel(&b.expand(parity), |x| (perm[x as usize] as u8, true));
        for (c, coef) in lie_coordinates(&image, parity, Some(&lead))? {
            if c == *b {
                trace += coef;
            }
        }
    }
    Ok(trace)
}

/// `S_n`-representation on the weight-`l` piece, from exact traces on one
/// permutation per cycle type.
pub fn lie_character(gens: &GeneratorSet, l: usize) -> Result<GradedPieceRep> {
    check_scale(gens.count, l)?;
    let n = gens.count;
    let internal_degree = if l == 0 { 0 } else { gens.internal_degree(l) };
    if l == 0 || n == 0 {
        return Ok(GradedPieceRep {
            weight: l,
            internal_degree,
            action: SymRep::zero(n),
        });
    }
    let basis = lie_basis(gens, l);
    let classes = conjugacy_classes(n)?;
    let mut values = Vec::with_capacity(classes.len());
    for (c, _) in &classes.classes {
        values.push(lie_trace(gens, &basis, &c.representative())?);
    }
    Ok(GradedPieceRep {
        weight: l,
        internal_degree,
        action: decompose_character(&CharacterVector { n, values })?,
    })
}

/// Degree-`l` piece of the free Gerstenhaber algebra: the free
/// graded-commutative algebra on the free Lie algebra, where a Lie element of
/// internal degree `e` commutes with sign `(-1)^e`.
pub fn gerstenhaber_character(gens: &GeneratorSet, l: usize) -> Result<SymRep> {
    let n = gens.count;
    if l == 0 {
        return Ok(SymRep::trivial(n));
    }
    let max_w = (1..).take_while(|&w| gens.internal_degree(w) <= l).last().unwrap_or(0);
    check_scale(n, max_w)?;
    let pieces: Vec<(usize, SymRep)> = (1..=max_w)
        .map(|w| Ok((gens.internal_degree(w), lie_character(gens, w)?.action)))
        .collect::<Result<_>>()?;

    fn assemble(pieces: &[(usize, SymRep)], budget: usize, n: usize) -> Result<SymRep> {
        let Some(((deg, rep), rest)) = pieces.split_first() else {
            return Ok(if budget == 0 {
                SymRep::trivial(n)
            } else {
                SymRep::zero(n)
            });
        };
        let mut total = SymRep::zero(n);
        let parity = Parity::of(*deg as i64);
        let mut j = 0;
        while j * deg <= budget {
            let tail = assemble(rest, budget - j * deg, n)?;
            if !tail.is_zero() {
                let head = graded_power(rep, j, parity)?;
                if !head.is_zero() {
                    total = total.direct_sum(&kronecker(&head, &tail)?)?;
                }
            }
            j += 1;
        }
        Ok(total)
    }
    assemble(&pieces, l, n)
}

/// Closed-form dimensions of the free Gerstenhaber algebra on `gens`
/// through internal degree `max_deg`: Lie dimensions come from inverting
/// `(1 - n t)^{-1}`, then the graded-commutative product is multiplied out.
pub fn gerstenhaber_poincare_series(gens: &GeneratorSet, max_deg: usize) -> Vec<BigInt> {
    let max_w = max_deg / gens.d + 1;
    let tensor: Vec<BigInt> = (0..=max_w as u32).map(|w| BigInt::from(gens.count).pow(w)).collect();
    let p = gens.effective_parity();
    let lie = crate::pbw::lie_dims_from_hilbert(&tensor, |w| p.times(w));
    let mut by_degree = vec![BigInt::zero(); max_deg + 1];
    for (w, dim) in lie.iter().enumerate().skip(1) {
        let e = gens.internal_degree(w);
        if e <= max_deg {
            by_degree[e] += dim;
        }
    }
    crate::pbw::hilbert_from_lie(&by_degree, |e| Parity::of(e as i64), max_deg)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceWeight {
    pub dims: Vec<u64>,
    pub weight: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraBoundReport {
    pub d: usize,
    pub m: usize,
    pub l: usize,
    pub n_max: usize,
    /// `(m + 2) l / (m + d)`.
    #[serde(with = "crate::exact::rational")]
    pub bound: Q,
    /// Lie weight whose words sit in degree `l`, if any.
    pub lie_weight: Option<usize>,
    pub lie: PieceWeight,
    pub gerstenhaber: PieceWeight,
    pub passed: bool,
}

/// FI-module weights of `n ↦ ℒ^{d,m,l}` and `n ↦ 𝒢^{d,m,l}` for `n ≤ n_max`,
/// checked against `(m + 2) l / (m + d)`.
pub fn verify_algebra_weight_bound(d: usize, m: usize, l: usize, n_max: usize) -> Result<AlgebraBoundReport> {
    GeneratorSet::new(0, d, m)?;
    let bound = Q::new(BigInt::from((m + 2) * l), BigInt::from(m + d));
    let within = |w: usize| Q::from_integer(BigInt::from(w)) <= bound;
    let proto = GeneratorSet::new(0, d, m)?;
    let lie_weight = proto.weight_in_degree(l);
    let mut lie_levels = Vec::with_capacity(n_max + 1);
    let mut g_levels = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let gens = GeneratorSet::new(n, d, m)?;
        lie_levels.push(match lie_weight {
            Some(w) => lie_character(&gens, w)?.action,
            None => SymRep::zero(n),
        });
        g_levels.push(gerstenhaber_character(&gens, l)?);
    }
    let summarize = |levels: Vec<SymRep>, name: &str| -> Result<PieceWeight> {
        let table = FIModuleTable::new(name, true, levels)?;
        let weight = weight_of(&table)?.weight;
        Ok(PieceWeight {
            dims: table.dims(),
            weight,
            passed: within(weight),
        })
    };
    let lie = summarize(lie_levels, "lie")?;
    let gerstenhaber = summarize(g_levels, "gerstenhaber")?;
    let passed = lie.passed && gerstenhaber.passed;
    Ok(AlgebraBoundReport {
        d,
        m,
        l,
        n_max,
        bound,
        lie_weight,
        lie,
        gerstenhaber,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::partitions::Partition;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn rep(n: usize, pairs: &[(&[usize], u64)]) -> SymRep {
        SymRep::from_pairs(n, pairs.iter().map(|(l, m)| (p(l), *m))).unwrap()
    }

    #[test]
    fn basis_examples() {
        let even = GeneratorSet::with_parity(2, Parity::Even);
        let odd = GeneratorSet::with_parity(2, Parity::Odd);
        assert_eq!(lie_basis(&even, 2).len(), 1);
        assert_eq!(lie_basis(&even, 3).len(), 2);
        assert_eq!(lie_basis(&odd, 2).len(), 3);
        assert_eq!(lie_basis(&even, 3).rendered(), vec!["[x1,[x1,x2]]", "[[x1,x2],x2]"]);
    }

    #[test]
    fn expansion_examples() {
        let even = GeneratorSet::with_parity(2, Parity::Even);
        let e12 = LieExpr::parse("[x1,x2]").unwrap();
        let e21 = LieExpr::parse("[x2,x1]").unwrap();
        let b = lie_basis(&even, 2).elements[0].clone();
        assert_eq!(bracket_expand(&even, &[(q(1), e12.clone())]).unwrap(), vec![(b.clone(), q(1))]);
        assert_eq!(bracket_expand(&even, &[(q(1), e21)]).unwrap(), vec![(b, q(-1))]);
        let x1 = LieExpr::parse("x1").unwrap();
        assert!(matches!(
            bracket_expand(&even, &[(q(1), e12), (q(1), x1)]),
            Err(Error::NonHomogeneous(2, 1))
        ));
    }

    #[test]
    fn odd_jacobi_rearrangement_matches_tensor_oracle() {
        // With odd x: [x1,[x1,x2]] = 1/2 [[x1,x1],x2], so the combination
        // [x1,[x1,x2]] + 1/2 [x2,[x1,x1]] vanishes.
        let odd = GeneratorSet::with_parity(2, Parity::Odd);
        let a = LieExpr::parse("[x1,[x1,x2]]").unwrap();
        let b = LieExpr::parse("[x2,[x1,x1]]").unwrap();
        let c = bracket_expand(&odd, &[(q(1), a.clone()), (crate::exact::q_frac(1, 2), b)]).unwrap();
        assert!(c.is_empty());
        let parity = odd.effective_parity();
        let coords = bracket_expand(&odd, &[(q(1), a.clone())]).unwrap();
        let mut rebuilt = Tensor::new();
        for (bw, x) in &coords {
            words::add_scaled(&mut rebuilt, &bw.expand(parity), x);
        }
        assert_eq!(rebuilt, a.expand(parity));
    }

    #[test]
    fn expansion_is_a_projection() {
        for parity in [Parity::Even, Parity::Odd] {
            let gens = GeneratorSet::with_parity(3, parity);
            for b in lie_basis(&gens, 4).elements {
                let coords = lie_coordinates(&b.expand(parity), parity, None).unwrap();
                assert_eq!(coords, vec![(b, q(1))]);
            }
        }
    }

    #[test]
    fn character_examples() {
        let perm4 = rep(4, &[(&[4], 1), (&[3, 1], 1)]);
        for parity in [Parity::Even, Parity::Odd] {
            let gens = GeneratorSet::with_parity(4, parity);
            assert_eq!(lie_character(&gens, 1).unwrap().action, perm4);
        }
        let odd = GeneratorSet::with_parity(4, Parity::Odd);
        assert_eq!(
            lie_character(&odd, 2).unwrap().action,
            graded_power(&perm4, 2, Parity::Even).unwrap()
        );
        let even = GeneratorSet::with_parity(4, Parity::Even);
        assert_eq!(
            lie_character(&even, 2).unwrap().action,
            rep(4, &[(&[3, 1], 1), (&[2, 1, 1], 1)])
        );
        assert!(matches!(
            lie_character(&GeneratorSet::with_parity(9, Parity::Even), 2),
            Err(Error::ScaleExceeded(_))
        ));
    }

    #[test]
    fn character_dimensions_and_multilinear_part() {
        for parity in [Parity::Even, Parity::Odd] {
            for n in 1..=4 {
                let gens = GeneratorSet::with_parity(n, parity);
                for l in 1..=4 {
                    let c = lie_character(&gens, l).unwrap();
                    assert_eq!(c.action.dimension() as usize, lie_basis(&gens, l).len());
                }
            }
        }
        // Multilinear part: Lyndon words using each of n letters once.
        for n in 1..=6usize {
            let words = words::lyndon_words(n as u8, n);
            let distinct = words
                .iter()
                .filter(|w| {
                    let mut s = (*w).clone();
                    s.sort_unstable();
                    s.dedup();
                    s.len() == n
                })
                .count();
            assert_eq!(distinct, (1..n).product::<usize>().max(1));
        }
    }

    #[test]
    fn witt_dimension_identity() {
        for parity in [Parity::Even, Parity::Odd] {
            for n in 1..=4usize {
                let h: Vec<BigInt> = (0..=6u32).map(|l| BigInt::from(n).pow(l)).collect();
                let lie = crate::pbw::lie_dims_from_hilbert(&h, |w| parity.times(w));
                let gens = GeneratorSet::with_parity(n, parity);
                for (l, d) in lie.iter().enumerate().skip(1) {
                    assert_eq!(BigInt::from(lie_basis(&gens, l).len()), *d, "n={n} l={l}");
                }
            }
        }
    }

    #[test]
    fn gerstenhaber_examples() {
        for d in [2usize, 3] {
            for m in [1usize, 2] {
                let gens = GeneratorSet::new(4, d, m).unwrap();
                let perm = lie_character(&gens, 1).unwrap().action;
                assert_eq!(gerstenhaber_character(&gens, d).unwrap(), perm);
            }
        }
        // d = 2, m = 1: degree 4 is Sym² of the generators plus the weight-2
        // bracket, which also sits in degree 2·2 + 0 = 4.
        let gens = GeneratorSet::new(4, 2, 1).unwrap();
        let perm = lie_character(&gens, 1).unwrap().action;
        let expected = graded_power(&perm, 2, Parity::Even)
            .unwrap()
            .direct_sum(&lie_character(&gens, 2).unwrap().action)
            .unwrap();
        assert_eq!(gerstenhaber_character(&gens, 4).unwrap(), expected);
    }

    #[test]
    fn gerstenhaber_dimensions_match_poincare_series() {
        for d in [2usize, 3] {
            for m in [1usize, 2] {
                for n in 1..=3 {
                    let gens = GeneratorSet::new(n, d, m).unwrap();
                    let series = gerstenhaber_poincare_series(&gens, 8);
                    for (l, expected) in series.iter().enumerate() {
                        let got = gerstenhaber_character(&gens, l).unwrap().dimension();
                        assert_eq!(BigInt::from(got), *expected, "d={d} m={m} n={n} l={l}");
                    }
                }
            }
        }
    }

    #[test]
    fn weight_bound_examples() {
        let r = verify_algebra_weight_bound(2, 1, 2, 5).unwrap();
        assert!(r.passed);
        assert_eq!(r.lie_weight, Some(1));
        let r = verify_algebra_weight_bound(2, 2, 3, 5).unwrap();
        assert_eq!(r.lie_weight, None);
        assert_eq!(r.lie.weight, 0);
        let r = verify_algebra_weight_bound(2, 2, 6, 6).unwrap();
        assert!(r.passed);
        assert!(r.gerstenhaber.weight <= 6);
    }
}
