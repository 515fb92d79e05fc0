//! One support block of the Drinfeld–Kohno Lie algebra.
//!
//! Brackets of `B_{ij}` are graded by the graph their letters form. The
//! union of supports and the connected components of the edge multiset of a
//! product depend only on those of its factors, and every relator is
//! homogeneous for both, so the quotient splits into blocks. Words whose graph
//! is disconnected bracket to zero (letters in different components commute),
//! hence `ℒ_k` in weight `m` is the sum over vertex subsets `S` of the
//! connected block on `S`, a copy of the connected full-support block `P_s(m)`
//! of `ℒ_s` with `s = |S|`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::Result;
use crate::exact::Q;
use crate::liecalc::words::{self, add_term, commutator, letter, BasisWord, Tensor, Word};
use crate::linalg::{add_entry, QuotientSpace, SparseVec};
use crate::reps::{decompose_character, Parity, SymRep};
use crate::symchar::{conjugacy_classes, CharacterVector};

/// Edges `{a < b}` of the complete graph on `s` vertices, indexed
/// lexicographically; edge indices are the letters of the alphabet.
#[derive(Clone, Debug)]
pub struct Edges {
    pub s: usize,
    pub list: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), u8>,
}

impl Edges {
    pub fn new(s: usize) -> Self {
        let mut list = Vec::new();
        for a in 0..s {
            for b in a + 1..s {
                list.push((a, b));
            }
        }
        let index = list.iter().enumerate().map(|(i, &e)| (e, i as u8)).collect();
        Self { s, list, index }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    /// Letter and sign of `B_{ij}` for `i ≠ j`: `B_{ji} = (-1)^n B_{ij}`.
    pub fn letter(&self, i: usize, j: usize, parity: Parity) -> (u8, bool) {
        if i < j {
            (self.index[&(i, j)], true)
        } else {
            (self.index[&(j, i)], !parity.is_odd())
        }
    }

    /// `B_{ij}` as a tensor, with the index-order sign applied.
    pub fn generator(&self, i: usize, j: usize, parity: Parity) -> Tensor {
        let (x, pos) = self.letter(i, j, parity);
        let mut t = letter(x);
        if !pos {
            t.values_mut().for_each(|c| *c = -c.clone());
        }
        t
    }

    /// Image of letter `x` under a vertex permutation.
    pub fn permute_letter(&self, x: u8, perm: &[usize], parity: Parity) -> (u8, bool) {
        let (a, b) = self.list[x as usize];
        self.letter(perm[a], perm[b], parity)
    }

    /// `true` when the letters of `w` cover every vertex and form a
    /// connected graph.
    pub fn is_connected_spanning(&self, w: &[u8]) -> bool {
        let mut parent: Vec<usize> = (0..self.s).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut covered = vec![false; self.s];
        for &x in w {
            let (a, b) = self.list[x as usize];
            covered[a] = true;
            covered[b] = true;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        if covered.iter().any(|c| !c) {
            return false;
        }
        let root = find(&mut parent, 0);
        (0..self.s).all(|v| find(&mut parent, v) == root)
    }

    pub fn name(&self, x: u8) -> String {
        let (a, b) = self.list[x as usize];
        format!("B{}{}", a + 1, b + 1)
    }
}

/// Weight-2 relators on `s` vertices: `[B_ij, B_st]` for disjoint pairs and
/// `[B_ij, B_is + B_js]` for every ordered triple of distinct vertices.
pub fn relators(edges: &Edges, parity: Parity) -> Vec<Tensor> {
    let s = edges.s;
    let mut out = Vec::new();
    for (x, &(i, j)) in edges.list.iter().enumerate() {
        for &(a, b) in &edges.list[x + 1..] {
            if a != i && a != j && b != i && b != j {
                out.push(commutator(
                    &edges.generator(i, j, parity),
                    1,
                    &edges.generator(a, b, parity),
                    1,
                    parity,
                ));
            }
        }
    }
    for i in 0..s {
        for j in 0..s {
            for t in 0..s {
                if i == j || j == t || i == t {
                    continue;
                }
                let mut sum = edges.generator(i, t, parity);
                words::add_scaled(&mut sum, &edges.generator(j, t, parity), &Q::from_integer(1.into()));
                let r = commutator(&edges.generator(i, j, parity), 1, &sum, 1, parity);
                if !r.is_empty() {
                    out.push(r);
                }
            }
        }
    }
    out
}

/// Weight-`m` slice of the ideal: `[g_1, [g_2, …, [g_{m-2}, r]]]`.
pub fn ideal_slice(edges: &Edges, parity: Parity, m: usize) -> Vec<Tensor> {
    if m < 2 {
        return Vec::new();
    }
    let mut level = relators(edges, parity);
    for w in 3..=m {
        let mut next = Vec::with_capacity(level.len() * edges.len());
        for x in 0..edges.len() as u8 {
            let g = letter(x);
            for r in &level {
                let t = commutator(&g, 1, r, w - 1, parity);
                if !t.is_empty() {
                    next.push(t);
                }
            }
        }
        level = next;
    }
    level
}

/// Words of length `m` over `L` letters, numbered in lexicographic order.
pub(crate) struct WordCoder {
    letters: usize,
    len: usize,
}

impl WordCoder {
    pub fn new(letters: usize, len: usize) -> Self {
        Self { letters, len }
    }

    pub fn encode(&self, w: &[u8]) -> usize {
        w.iter().fold(0, |acc, &x| acc * self.letters + x as usize)
    }

    pub fn decode(&self, mut c: usize) -> Word {
        let mut w = vec![0u8; self.len];
        for slot in w.iter_mut().rev() {
            *slot = (c % self.letters) as u8;
            c /= self.letters;
        }
        w
    }

    pub fn to_sparse(&self, t: &Tensor) -> SparseVec {
        let mut v = SparseVec::new();
        for (w, c) in t {
            add_entry(&mut v, self.encode(w), c.clone());
        }
        v
    }
}

/// The connected full-support block `P_s(m)` with its `S_s`-action.
#[derive(Clone, Debug)]
pub struct DKBlock {
    pub s: usize,
    pub m: usize,
    pub parity: Parity,
    /// Bracket words spanning the block of the free Lie algebra.
    pub free_dim: usize,
    pub relation_rank: usize,
    /// Super-Lyndon words whose images form a basis of the quotient.
    pub basis: Vec<BasisWord>,
    pub action: SymRep,
}

impl DKBlock {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Quotient of the block of the free Lie algebra by the block of the ideal.
pub(crate) fn block_quotient(edges: &Edges, parity: Parity, m: usize) -> (QuotientSpace, Vec<BasisWord>, usize) {
    let coder = WordCoder::new(edges.len(), m);
    let in_block = |t: &Tensor| {
        t.keys()
            .next()
            .is_some_and(|w| edges.is_connected_spanning(w))
    };
    let mut qs = QuotientSpace::new();
    for r in ideal_slice(edges, parity, m) {
        if in_block(&r) {
            qs.add_relation(coder.to_sparse(&r));
        }
    }
    let candidates: Vec<BasisWord> = words::super_lyndon_basis(edges.len() as u8, m, parity)
        .into_iter()
        .filter(|b| edges.is_connected_spanning(&b.leading_word()))
        .collect();
    for b in &candidates {
        qs.add_candidate(coder.to_sparse(&b.expand(parity)));
    }
    let free_dim = candidates.len();
    let basis = qs.accepted().iter().map(|&i| candidates[i].clone()).collect();
    (qs, basis, free_dim)
}

/// Vertex permutation acting on ambient coordinates of a block.
pub(crate) fn permute_sparse(
    v: &SparseVec,
    edges: &Edges,
    coder: &WordCoder,
    perm: &[usize],
    parity: Parity,
) -> SparseVec {
    let mut t = Tensor::new();
    for (&col, c) in v {
        let mut neg = false;
        let img: Word = coder
            .decode(col)
            .iter()
            .map(|&x| {
                let (y, pos) = edges.permute_letter(x, perm, parity);
                neg ^= !pos;
                y
            })
            .collect();
        add_term(&mut t, img, if neg { -c.clone() } else { c.clone() });
    }
    coder.to_sparse(&t)
}

fn compute_block(parity: Parity, s: usize, m: usize) -> Result<DKBlock> {
    let edges = Edges::new(s);
    let (qs, basis, free_dim) = block_quotient(&edges, parity, m);
    let coder = WordCoder::new(edges.len(), m);
    let action = if qs.dim() == 0 {
        SymRep::zero(s)
    } else {
        let classes = conjugacy_classes(s)?;
        let mut values = Vec::with_capacity(classes.len());
        for (c, _) in &classes.classes {
            let perm = c.representative();
            values.push(qs.trace(|v| permute_sparse(v, &edges, &coder, &perm, parity))?);
        }
        decompose_character(&CharacterVector { n: s, values })?
    };
    Ok(DKBlock {
        s,
        m,
        parity,
        free_dim,
        relation_rank: qs.relation_rank(),
        basis,
        action,
    })
}

/// Memoised block `P_s(m)`; zero unless `2 ≤ s ≤ m + 1`.
pub fn dk_block(parity: Parity, s: usize, m: usize) -> Result<Arc<DKBlock>> {
    static CACHE: OnceLock<Mutex<HashMap<(Parity, usize, usize), Arc<DKBlock>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().unwrap().get(&(parity, s, m)) {
        return Ok(b.clone());
    }
    let block = if s < 2 || m == 0 || s > m + 1 {
        DKBlock {
            s,
            m,
            parity,
            free_dim: 0,
            relation_rank: 0,
            basis: Vec::new(),
            action: SymRep::zero(s),
        }
    } else {
        compute_block(parity, s, m)?
    };
    let block = Arc::new(block);
    cache.lock().unwrap().insert((parity, s, m), block.clone());
    Ok(block)
}
