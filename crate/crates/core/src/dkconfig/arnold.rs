//! The Arnold (Orlik–Solomon) algebra `H^*(F_k(ℝⁿ); ℚ)`.
//!
//! Generators `ω_{ij}` have degree `n − 1`. The algebra is graded
//! commutative with `ω² = 0`, so monomials are sets of edges, multiplied with
//! Koszul signs when `n − 1` is odd. Like the Lie side it splits by vertex
//! support: the three terms of every Arnold relation share their support.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::block::Edges;
use super::MAX_K;
use crate::error::{Error, Result};
use crate::exact::Q;
use crate::linalg::{add_entry, QuotientSpace, SparseVec};
use crate::reps::{decompose_character, induce_rep_with_trivial, Parity, SymRep};
use crate::symchar::{conjugacy_classes, CharacterVector};

/// Largest cohomological Lie degree `j` the Arnold computation accepts.
pub const MAX_ARNOLD_DEGREE: usize = 4;

/// Degree-`j` piece `H^{j(n-1)}(F_k(ℝⁿ))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArnoldPiece {
    pub k: usize,
    pub parity: Parity,
    pub j: usize,
    /// Admissible monomials `ω_{a_1 b_1} ⋯ ω_{a_j b_j}`, `a_t < b_t`,
    /// `b_1 < ⋯ < b_j`.
    pub basis: Vec<String>,
    pub action: SymRep,
}

impl ArnoldPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Sorted edge set of a monomial, as a bitmask.
type Mono = u32;

/// Whether generators anticommute: `n − 1` odd, i.e. `n` even.
fn exterior(parity: Parity) -> bool {
    !parity.is_odd()
}

/// Product of two monomials with its sign, or `None` if it vanishes.
fn multiply(a: Mono, b: Mono, parity: Parity) -> Option<(Mono, bool)> {
    if a & b != 0 {
        return None;
    }
    let mut neg = false;
    if exterior(parity) {
        // Each letter of b passes every larger letter of a.
        let mut rest = b;
        while rest != 0 {
            let x = rest.trailing_zeros();
            rest &= rest - 1;
            let larger = a >> (x + 1);
            neg ^= larger.count_ones() % 2 == 1;
        }
    }
    Some((a | b, neg))
}

fn mul_sparse(u: &SparseVec, v: &SparseVec, parity: Parity) -> SparseVec {
    let mut out = SparseVec::new();
    for (&a, x) in u {
        for (&b, y) in v {
            if let Some((c, neg)) = multiply(a as Mono, b as Mono, parity) {
                let val = x * y;
                add_entry(&mut out, c as usize, if neg { -val } else { val });
            }
        }
    }
    out
}

fn omega(edges: &Edges, i: usize, j: usize, parity: Parity) -> SparseVec {
    // ω_{ji} = (−1)^n ω_{ij}: the same rule as for B_{ij}.
    let (x, pos) = edges.letter(i, j, parity);
    let c = if pos { Q::one() } else { -Q::one() };
    SparseVec::from([(1usize << x, c)])
}

fn support(edges: &Edges, m: Mono) -> u32 {
    let mut s = 0u32;
    let mut rest = m;
    while rest != 0 {
        let x = rest.trailing_zeros();
        rest &= rest - 1;
        let (a, b) = edges.list[x as usize];
        s |= (1 << a) | (1 << b);
    }
    s
}

fn monomials(letters: usize, j: usize) -> Vec<Mono> {
    fn rec(start: usize, letters: usize, j: usize, cur: Mono, out: &mut Vec<Mono>) {
        if j == 0 {
            out.push(cur);
            return;
        }
        for x in start..letters {
            rec(x + 1, letters, j - 1, cur | (1 << x), out);
        }
    }
    let mut out = Vec::new();
    rec(0, letters, j, 0, &mut out);
    out
}

/// Whether the larger endpoints of the edges are pairwise distinct.
fn admissible(edges: &Edges, m: Mono) -> bool {
    let mut seen = 0u32;
    let mut rest = m;
    while rest != 0 {
        let x = rest.trailing_zeros();
        rest &= rest - 1;
        let b = edges.list[x as usize].1;
        if seen & (1 << b) != 0 {
            return false;
        }
        seen |= 1 << b;
    }
    true
}

fn permute(v: &SparseVec, edges: &Edges, perm: &[usize], parity: Parity) -> SparseVec {
    let mut out = SparseVec::new();
    for (&m, c) in v {
        let mut acc: SparseVec = SparseVec::from([(0usize, c.clone())]);
        let mut rest = m as Mono;
        while rest != 0 {
            let x = rest.trailing_zeros();
            rest &= rest - 1;
            let (a, b) = edges.list[x as usize];
            acc = mul_sparse(&acc, &omega(edges, perm[a], perm[b], parity), parity);
        }
        for (k, y) in acc {
            add_entry(&mut out, k, y);
        }
    }
    out
}

/// Full-support block of degree `j` on `s` vertices.
#[derive(Clone, Debug)]
struct ArnoldBlock {
    dim: usize,
    admissible: usize,
    action: SymRep,
}

fn compute_block(parity: Parity, s: usize, j: usize) -> Result<ArnoldBlock> {
    let edges = Edges::new(s);
    let full: u32 = (1 << s) - 1;
    let mut qs = QuotientSpace::new();
    if j >= 2 {
        for a in 0..s {
            for b in a + 1..s {
                for c in b + 1..s {
                    let (wab, wbc, wca) = (
                        omega(&edges, a, b, parity),
                        omega(&edges, b, c, parity),
                        omega(&edges, c, a, parity),
                    );
                    let mut rel = mul_sparse(&wab, &wbc, parity);
                    for (k, y) in mul_sparse(&wbc, &wca, parity) {
                        add_entry(&mut rel, k, y);
                    }
                    for (k, y) in mul_sparse(&wca, &wab, parity) {
                        add_entry(&mut rel, k, y);
                    }
                    for m in monomials(edges.len(), j - 2) {
                        let rest = SparseVec::from([(m as usize, Q::one())]);
                        let v = mul_sparse(&rel, &rest, parity);
                        let in_block = v
                            .keys()
                            .next()
                            .is_some_and(|&x| support(&edges, x as Mono) == full);
                        if in_block {
                            qs.add_relation(v);
                        }
                    }
                }
            }
        }
    }
    let mut cands: Vec<Mono> = monomials(edges.len(), j)
        .into_iter()
        .filter(|&m| support(&edges, m) == full)
        .collect();
    cands.sort_by_key(|&m| !admissible(&edges, m));
    let admissible_count = cands.iter().filter(|&&m| admissible(&edges, m)).count();
    for &m in &cands {
        qs.add_candidate(SparseVec::from([(m as usize, Q::one())]));
    }
    let action = if qs.dim() == 0 {
        SymRep::zero(s)
    } else {
        let classes = conjugacy_classes(s)?;
        let mut values = Vec::with_capacity(classes.len());
        for (c, _) in &classes.classes {
            let perm = c.representative();
            values.push(qs.trace(|v| permute(v, &edges, &perm, parity))?);
        }
        decompose_character(&CharacterVector { n: s, values })?
    };
    Ok(ArnoldBlock {
        dim: qs.dim(),
        admissible: admissible_count,
        action,
    })
}

fn arnold_block(parity: Parity, s: usize, j: usize) -> Result<Arc<ArnoldBlock>> {
    static CACHE: OnceLock<Mutex<HashMap<(Parity, usize, usize), Arc<ArnoldBlock>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().unwrap().get(&(parity, s, j)) {
        return Ok(b.clone());
    }
    let block = Arc::new(compute_block(parity, s, j)?);
    if block.dim != block.admissible {
        return Err(Error::InconsistentTable {
            level: s,
            reason: format!(
                "degree {j}: admissible monomials ({}) do not match quotient dimension ({})",
                block.admissible, block.dim
            ),
        });
    }
    cache.lock().unwrap().insert((parity, s, j), block.clone());
    Ok(block)
}

fn admissible_basis(k: usize, j: usize) -> Vec<String> {
    fn rec(b: usize, k: usize, left: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<String>) {
        if left == 0 {
            out.push(if cur.is_empty() {
                "1".to_string()
            } else {
                cur.iter()
                    .map(|(a, b)| format!("w{a}{b}"))
                    .collect::<Vec<_>>()
                    .join("*")
            });
            return;
        }
        for top in b..=k {
            for a in 1..top {
                cur.push((a, top));
                rec(top + 1, k, left - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(2, k, j, &mut Vec::new(), &mut out);
    out
}

/// Degree-`j` piece of the Arnold algebra of `k` points.
pub fn arnold_character(k: usize, parity: Parity, j: usize) -> Result<ArnoldPiece> {
    if k > MAX_K || j > MAX_ARNOLD_DEGREE {
        return Err(Error::ScaleExceeded(format!(
            "Arnold algebra needs k ≤ {MAX_K} and j ≤ {MAX_ARNOLD_DEGREE}, got k = {k}, j = {j}"
        )));
    }
    let mut action = if j == 0 {
        SymRep::trivial(k)
    } else {
        SymRep::zero(k)
    };
    for s in 2..=k.min(2 * j) {
        let block = arnold_block(parity, s, j)?;
        if !block.action.is_zero() {
            action = action.direct_sum(&induce_rep_with_trivial(&block.action, k)?)?;
        }
    }
    let basis = admissible_basis(k, j);
    debug_assert_eq!(basis.len() as u64, action.dimension());
    Ok(ArnoldPiece {
        k,
        parity,
        j,
        basis,
        action,
    })
}
