//! Words, Lyndon words and Lie elements inside the tensor algebra.
//!
//! Every letter has the same parity `p`, so a homogeneous element of weight
//! `w` has parity `p·w`. Lie elements are represented by their expansion in
//! the tensor algebra, where the graded commutator is
//! `[A, B] = AB - (-1)^{|A||B|} BA`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::Q;
use crate::reps::Parity;

pub type Word = Vec<u8>;

/// Linear combination of words.
pub type Tensor = BTreeMap<Word, Q>;

pub fn add_term(t: &mut Tensor, w: Word, c: Q) {
    if c.is_zero() {
        return;
    }
    match t.entry(w) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub fn add_scaled(acc: &mut Tensor, t: &Tensor, c: &Q) {
    for (w, x) in t {
        add_term(acc, w.clone(), x * c);
    }
}

fn concat(a: &[u8], b: &[u8]) -> Word {
    let mut w = Vec::with_capacity(a.len() + b.len());
    w.extend_from_slice(a);
    w.extend_from_slice(b);
    w
}

/// Graded commutator of homogeneous elements of weights `wa` and `wb`.
pub fn commutator(a: &Tensor, wa: usize, b: &Tensor, wb: usize, letter: Parity) -> Tensor {
    let both_odd = letter.times(wa).is_odd() && letter.times(wb).is_odd();
    let mut out = Tensor::new();
    for (u, x) in a {
        for (v, y) in b {
            let c = x * y;
            add_term(&mut out, concat(u, v), c.clone());
            if both_odd {
                add_term(&mut out, concat(v, u), c);
            } else {
                add_term(&mut out, concat(v, u), -c);
            }
        }
    }
    out
}

pub fn letter(x: u8) -> Tensor {
    let mut t = Tensor::new();
    t.insert(vec![x], Q::one());
    t
}

/// Relabels every letter through `f`, which returns the image letter and a
/// sign (`false` for `-1`).
pub fn relabel(t: &Tensor, f: impl Fn(u8) -> (u8, bool)) -> Tensor {
    let mut out = Tensor::new();
    for (w, x) in t {
        let mut neg = false;
        let img: Word = w
            .iter()
            .map(|&a| {
                let (b, pos) = f(a);
                neg ^= !pos;
                b
            })
            .collect();
        add_term(&mut out, img, if neg { -x.clone() } else { x.clone() });
    }
    out
}

/// Duval's algorithm: Lyndon words of length exactly `len` over letters
/// `0..alphabet`, in lexicographic order.
pub fn lyndon_words(alphabet: u8, len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if alphabet == 0 || len == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        if w.len() == len {
            out.push(w.clone());
        }
        // Extend periodically to length `len`, then strip maximal letters.
        let m = w.len();
        while w.len() < len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&(alphabet - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

pub fn is_lyndon(w: &[u8]) -> bool {
    // Strictly smaller than every proper suffix.
    !w.is_empty() && (1..w.len()).all(|i| w[i..] > *w)
}

/// `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[u8]) -> (&[u8], &[u8]) {
    for i in 1..w.len() {
        if is_lyndon(&w[i..]) {
            return (&w[..i], &w[i..]);
        }
    }
    panic!("standard factorisation of a word of length < 2");
}

/// A super-Lyndon basis element: the standard bracketing `P(w)` of a Lyndon
/// word, or `[P(w), P(w)]` for an odd Lyndon word `w`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisWord {
    pub word: Word,
    pub square: bool,
}

impl BasisWord {
    pub fn weight(&self) -> usize {
        self.word.len() * if self.square { 2 } else { 1 }
    }

    /// The word that leads the tensor expansion.
    pub fn leading_word(&self) -> Word {
        if self.square {
            concat(&self.word, &self.word)
        } else {
            self.word.clone()
        }
    }

    /// Coefficient of the leading word.
    pub fn leading_coefficient(&self) -> Q {
        if self.square {
            Q::from_integer(2.into())
        } else {
            Q::one()
        }
    }

    pub fn expand(&self, parity: Parity) -> Tensor {
        let p = standard_bracketing(&self.word, parity);
        if self.square {
            let w = self.word.len();
            commutator(&p, w, &p, w, parity)
        } else {
            p
        }
    }

    pub fn render(&self, names: &dyn Fn(u8) -> String) -> String {
        let inner = render_standard(&self.word, names);
        if self.square {
            format!("[{inner},{inner}]")
        } else {
            inner
        }
    }
}

fn render_standard(w: &[u8], names: &dyn Fn(u8) -> String) -> String {
    if w.len() == 1 {
        return names(w[0]);
    }
    let (u, v) = standard_factorization(w);
    format!("[{},{}]", render_standard(u, names), render_standard(v, names))
}

/// Tensor expansion of `P(w)`.
pub fn standard_bracketing(w: &[u8], parity: Parity) -> Tensor {
    if w.len() == 1 {
        return letter(w[0]);
    }
    let (u, v) = standard_factorization(w);
    commutator(
        &standard_bracketing(u, parity),
        u.len(),
        &standard_bracketing(v, parity),
        v.len(),
        parity,
    )
}

/// Super-Lyndon basis words of weight `len` over `alphabet` letters.
pub fn super_lyndon_basis(alphabet: u8, len: usize, parity: Parity) -> Vec<BasisWord> {
    let mut out: Vec<BasisWord> = lyndon_words(alphabet, len)
        .into_iter()
        .map(|word| BasisWord {
            word,
            square: false,
        })
        .collect();
    if len.is_multiple_of(2) && parity.times(len / 2).is_odd() {
        out.extend(lyndon_words(alphabet, len / 2).into_iter().map(|word| BasisWord {
            word,
            square: true,
        }));
    }
    out.sort_by_key(BasisWord::leading_word);
    out
}

/// Classifies a word as the leading word of a basis element, if it is one.
pub fn basis_word_leading(w: &[u8], parity: Parity) -> Option<BasisWord> {
    if is_lyndon(w) {
        return Some(BasisWord {
            word: w.to_vec(),
            square: false,
        });
    }
    let h = w.len() / 2;
    if w.len().is_multiple_of(2) && w[..h] == w[h..] && is_lyndon(&w[..h]) && parity.times(h).is_odd() {
        return Some(BasisWord {
            word: w[..h].to_vec(),
            square: true,
        });
    }
    None
}

/// Coordinates of a Lie element in the super-Lyndon basis, by repeatedly
/// cancelling the lexicographically smallest word. With `stop_after`, the
/// elimination halts once every remaining word exceeds that word.
pub fn lie_coordinates(
    t: &Tensor,
    parity: Parity,
    stop_after: Option<&[u8]>,
) -> Result<Vec<(BasisWord, Q)>> {
    let mut rest = t.clone();
    let mut out = Vec::new();
    while let Some((w, c)) = rest.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
        if stop_after.is_some_and(|s| w.as_slice() > s) {
            break;
        }
        let b = basis_word_leading(&w, parity).ok_or_else(|| {
            Error::NotInSpan(format!("leading word {w:?} is not a basis leading word"))
        })?;
        let coef = c / b.leading_coefficient();
        add_scaled(&mut rest, &b.expand(parity), &-coef.clone());
        out.push((b, coef));
    }
    Ok(out)
}

/// A bracket expression in the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieExpr {
    Gen(u8),
    Bracket(Box<LieExpr>, Box<LieExpr>),
}

impl LieExpr {
    pub fn bracket(a: LieExpr, b: LieExpr) -> Self {
        LieExpr::Bracket(Box::new(a), Box::new(b))
    }

    pub fn weight(&self) -> usize {
        match self {
            LieExpr::Gen(_) => 1,
            LieExpr::Bracket(a, b) => a.weight() + b.weight(),
        }
    }

    pub fn max_letter(&self) -> u8 {
        match self {
            LieExpr::Gen(x) => *x,
            LieExpr::Bracket(a, b) => a.max_letter().max(b.max_letter()),
        }
    }

    pub fn expand(&self, parity: Parity) -> Tensor {
        match self {
            LieExpr::Gen(x) => letter(*x),
            LieExpr::Bracket(a, b) => {
                commutator(&a.expand(parity), a.weight(), &b.expand(parity), b.weight(), parity)
            }
        }
    }

    /// Parses `x1`, `[x1,x2]`, `[x2,[x1,x1]]`, … (generators are 1-based).
    pub fn parse(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let e = parse_expr(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::Parse(format!("trailing input at offset {pos} in {s:?}")));
        }
        Ok(e)
    }
}

fn parse_expr(c: &[char], pos: &mut usize) -> Result<LieExpr> {
    match c.get(*pos) {
        Some('[') => {
            *pos += 1;
            let a = parse_expr(c, pos)?;
            if c.get(*pos) != Some(&',') {
                return Err(Error::Parse(format!("expected ',' at offset {pos}")));
            }
            *pos += 1;
            let b = parse_expr(c, pos)?;
            if c.get(*pos) != Some(&']') {
                return Err(Error::Parse(format!("expected ']' at offset {pos}")));
            }
            *pos += 1;
            Ok(LieExpr::bracket(a, b))
        }
        Some('x') => {
            *pos += 1;
            let start = *pos;
            while c.get(*pos).is_some_and(|d| d.is_ascii_digit()) {
                *pos += 1;
            }
            let digits: String = c[start..*pos].iter().collect();
            let i: u8 = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad generator index at offset {start}")))?;
            if i == 0 {
                return Err(Error::Parse("generators are numbered from 1".into()));
            }
            Ok(LieExpr::Gen(i - 1))
        }
        other => Err(Error::Parse(format!("unexpected {other:?} at offset {pos}"))),
    }
}

impl fmt::Display for LieExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieExpr::Gen(x) => write!(f, "x{}", x + 1),
            LieExpr::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

/// Dimension of the weight-`len` part of the Lie subalgebra of the tensor
/// algebra generated by `alphabet` letters, computed as the rank of every
/// bracket tree. Independent of Lyndon combinatorics; used as an oracle.
pub fn brute_force_lie_dim(alphabet: u8, len: usize, parity: Parity) -> usize {
    fn trees(alphabet: u8, len: usize, parity: Parity, memo: &mut Vec<Option<Vec<Tensor>>>) -> Vec<Tensor> {
        if let Some(t) = &memo[len] {
            return t.clone();
        }
        let mut out = Vec::new();
        if len == 1 {
            out = (0..alphabet).map(letter).collect();
        } else {
            for left in 1..len {
                let ls = trees(alphabet, left, parity, memo);
                let rs = trees(alphabet, len - left, parity, memo);
                for a in &ls {
                    for b in &rs {
                        let c = commutator(a, left, b, len - left, parity);
                        if !c.is_empty() {
                            out.push(c);
                        }
                    }
                }
            }
        }
        memo[len] = Some(out.clone());
        out
    }
    let mut memo = vec![None; len + 1];
    let all = trees(alphabet, len, parity, &mut memo);
    let mut index: BTreeMap<Word, usize> = BTreeMap::new();
    let mut ech = crate::linalg::Echelon::new();
    for t in all {
        let mut v = crate::linalg::SparseVec::new();
        for (w, c) in t {
            let next = index.len();
            let k = *index.entry(w).or_insert(next);
            v.insert(k, c);
        }
        ech.insert(v);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn word(s: &str) -> Word {
        s.bytes().map(|b| b - b'1').collect()
    }

    #[test]
    fn lyndon_enumeration() {
        let w3: Vec<Word> = lyndon_words(2, 3);
        assert_eq!(w3, vec![word("112"), word("122")]);
        // Necklace counts: Witt numbers for 3 letters.
        let counts: Vec<usize> = (1..=6).map(|l| lyndon_words(3, l).len()).collect();
        assert_eq!(counts, vec![3, 3, 8, 18, 48, 116]);
        for l in 1..=6 {
            for w in lyndon_words(3, l) {
                assert!(is_lyndon(&w));
            }
        }
        assert!(!is_lyndon(&word("1212")));
        assert!(!is_lyndon(&word("21")));
    }

    #[test]
    fn brute_force_lyndon_test() {
        // Every word of length ≤ 6 over 2 letters: Lyndon iff strictly
        // smaller than all proper rotations.
        for len in 1..=6u32 {
            for code in 0..2u32.pow(len) {
                let w: Word = (0..len).map(|i| ((code >> i) & 1) as u8).collect();
                let brute = (1..w.len()).all(|i| {
                    let mut r = w[i..].to_vec();
                    r.extend_from_slice(&w[..i]);
                    r > w
                });
                assert_eq!(is_lyndon(&w), brute, "{w:?}");
            }
        }
    }

    #[test]
    fn standard_bracketing_leads_with_its_word() {
        for parity in [Parity::Even, Parity::Odd] {
            for l in 1..=5 {
                for b in super_lyndon_basis(3, l, parity) {
                    let t = b.expand(parity);
                    let (first, c) = t.iter().next().unwrap();
                    assert_eq!(first, &b.leading_word());
                    assert_eq!(c, &b.leading_coefficient());
                }
            }
        }
    }

    #[test]
    fn super_lyndon_counts_match_brute_force() {
        for parity in [Parity::Even, Parity::Odd] {
            for gens in 1..=3u8 {
                for l in 1..=5 {
                    assert_eq!(
                        super_lyndon_basis(gens, l, parity).len(),
                        brute_force_lie_dim(gens, l, parity),
                        "{gens} generators, weight {l}, {parity}"
                    );
                }
            }
        }
    }

    #[test]
    fn coordinates_of_basis_elements_are_unit_vectors() {
        for parity in [Parity::Even, Parity::Odd] {
            for b in super_lyndon_basis(3, 4, parity) {
                let c = lie_coordinates(&b.expand(parity), parity, None).unwrap();
                assert_eq!(c, vec![(b.clone(), q(1))]);
            }
        }
    }

    #[test]
    fn coordinates_reconstruct_the_element() {
        let parity = Parity::Odd;
        let e = LieExpr::parse("[[x2,x1],[x3,[x1,x2]]]").unwrap();
        let t = e.expand(parity);
        let coords = lie_coordinates(&t, parity, None).unwrap();
        let mut back = Tensor::new();
        for (b, c) in &coords {
            add_scaled(&mut back, &b.expand(parity), c);
        }
        assert_eq!(back, t);
    }

    #[test]
    fn non_lie_elements_are_rejected() {
        let t = letter(0).into_iter().map(|(mut w, c)| {
            w.push(1);
            (w, c)
        });
        let t: Tensor = t.collect();
        assert!(lie_coordinates(&t, Parity::Even, None).is_err());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["x1", "[x1,x2]", "[x2,[x1,[x1,x3]]]"] {
            assert_eq!(LieExpr::parse(s).unwrap().to_string(), s);
        }
        assert!(LieExpr::parse("[x1,x2").is_err());
        assert!(LieExpr::parse("x0").is_err());
        assert!(LieExpr::parse("[x1,x2]]").is_err());
    }
}
