//! Drinfeld–Kohno Lie algebras `ℒ_k(n−2)` and the rational homotopy of
//! ordered configuration spaces `F_k(ℝⁿ)`.
//!
//! Only the parity of `n` enters the algebra: generators `B_{ij}` sit in
//! internal degree `n − 2`, and weight `m` corresponds to
//! `π_i(F_k(ℝⁿ)) ⊗ ℚ` with `i = m(n−2) + 1`.

pub mod arnold;
pub mod block;
pub mod loops;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Q;
use crate::fimod::{FIModuleTable, TableMetadata};
use crate::liecalc::words::Tensor;
use crate::reps::{induce_rep_with_trivial, Parity, SymRep};

pub use arnold::{arnold_character, ArnoldPiece, MAX_ARNOLD_DEGREE};
pub use block::{dk_block, DKBlock};
pub use loops::{loop_space_piece, LoopPiece};

/// Largest number of points accepted by the exact computations.
pub const MAX_K: usize = 7;
/// Largest Lie weight accepted by the exact computations.
pub const MAX_DK_WEIGHT: usize = 4;

/// Smallest ambient dimension of the given parity with `n ≥ 3`.
pub fn minimal_dimension(parity: Parity) -> usize {
    if parity.is_odd() {
        3
    } else {
        4
    }
}

/// Homotopy degree `i = m(n−2) + 1` of weight `m`.
pub fn homotopy_degree(m: usize, n: usize) -> usize {
    m * (n - 2) + 1
}

fn check_scale(k: usize, m: usize) -> Result<()> {
    if k > MAX_K || m > MAX_DK_WEIGHT {
        return Err(Error::ScaleExceeded(format!(
            "Drinfeld–Kohno pieces need k ≤ {MAX_K} and m ≤ {MAX_DK_WEIGHT}, got k = {k}, m = {m}"
        )));
    }
    Ok(())
}

/// Presentation of `ℒ_k` on generators `B_{ij}`, `1 ≤ i < j ≤ k`.
#[derive(Clone, Debug)]
pub struct DKAlgebra {
    pub k: usize,
    pub parity: Parity,
    edges: block::Edges,
}

impl DKAlgebra {
    pub fn new(k: usize, parity: Parity) -> Self {
        Self {
            k,
            parity,
            edges: block::Edges::new(k),
        }
    }

    /// Generator names `B12, B13, …` in letter order.
    pub fn generators(&self) -> Vec<String> {
        (0..self.edges.len() as u8).map(|x| self.edges.name(x)).collect()
    }

    /// `B_{ij}` (0-based, `i ≠ j`) as a tensor, with the swap sign.
    pub fn generator(&self, i: usize, j: usize) -> Tensor {
        self.edges.generator(i, j, self.parity)
    }

    /// Weight-2 relators as tensors in the letters.
    pub fn relators(&self) -> Vec<Tensor> {
        block::relators(&self.edges, self.parity)
    }
}

/// Weight-`m` piece of `ℒ_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DKGradedPiece {
    pub k: usize,
    pub parity: Parity,
    pub m: usize,
    /// Bracketed super-Lyndon words whose images form a basis.
    pub basis: Vec<String>,
    pub action: SymRep,
}

impl DKGradedPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Vertex subsets of `[0, k)` of size `s`, lexicographically.
fn subsets(k: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for v in start..k {
            cur.push(v);
            rec(v + 1, k, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, s, &mut Vec::new(), &mut out);
    out
}

/// Basis of the weight-`m` piece: one copy of each block basis per subset.
pub fn dk_graded_basis(k: usize, parity: Parity, m: usize) -> Result<DKGradedPiece> {
    check_scale(k, m)?;
    let mut basis = Vec::new();
    let mut action = SymRep::zero(k);
    for s in 2..=k.min(m + 1) {
        let blk = dk_block(parity, s, m)?;
        if blk.dim() == 0 {
            continue;
        }
        let local = block::Edges::new(s);
        for subset in subsets(k, s) {
            let name = |x: u8| {
                let (a, b) = local.list[x as usize];
                format!("B{}{}", subset[a] + 1, subset[b] + 1)
            };
            basis.extend(blk.basis.iter().map(|w| w.render(&name)));
        }
        action = action.direct_sum(&induce_rep_with_trivial(&blk.action, k)?)?;
    }
    Ok(DKGradedPiece {
        k,
        parity,
        m,
        basis,
        action,
    })
}

/// `S_k`-representation on the weight-`m` piece.
pub fn dk_character(k: usize, parity: Parity, m: usize) -> Result<SymRep> {
    check_scale(k, m)?;
    let mut action = SymRep::zero(k);
    for s in 2..=k.min(m + 1) {
        let blk = dk_block(parity, s, m)?;
        if !blk.action.is_zero() {
            action = action.direct_sum(&induce_rep_with_trivial(&blk.action, k)?)?;
        }
    }
    Ok(action)
}

/// FI-module table of `Hom(π_i(F_k(ℝⁿ)), ℚ)` for `k = 0..=k_max`, with
/// `n` the smallest dimension of the given parity.
pub fn homotopy_fi_module(parity: Parity, m: usize, k_max: usize) -> Result<FIModuleTable> {
    check_scale(k_max, m)?;
    let n = minimal_dimension(parity);
    let i = homotopy_degree(m, n);
    let levels = (0..=k_max)
        .map(|k| dk_character(k, parity, m))
        .collect::<Result<Vec<_>>>()?;
    let table = FIModuleTable::new(format!("pi_{i} F_k(R^{n}) weight {m}"), true, levels)?;
    Ok(table.with_metadata(TableMetadata {
        lie_weight: Some(m),
        ambient_dim: Some(n),
        degree: Some(i),
        notes: vec![format!(
            "Lie weight {m}, parity {parity}: i = m(n-2)+1 = {i} at n = {n}"
        )],
        ..TableMetadata::default()
    }))
}

/// FI-module table of the Arnold piece `H^{j(n−1)}(F_k(ℝⁿ))`.
pub fn cohomology_fi_module(parity: Parity, j: usize, k_max: usize) -> Result<FIModuleTable> {
    let n = minimal_dimension(parity);
    let i = j * (n - 1);
    let levels = (0..=k_max)
        .map(|k| arnold_character(k, parity, j).map(|p| p.action))
        .collect::<Result<Vec<_>>>()?;
    let table = FIModuleTable::new(format!("H^{i} F_k(R^{n})"), true, levels)?;
    Ok(table.with_metadata(TableMetadata {
        degree: Some(i),
        ambient_dim: Some(n),
        notes: vec![format!("Arnold degree j = {j}, i = j(n-1) = {i} at n = {n}")],
        ..TableMetadata::default()
    }))
}

/// One checked inequality in a range report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeCheck {
    pub claim: String,
    pub instance: String,
    pub value: String,
    pub bound: String,
    pub passed: bool,
}

impl RangeCheck {
    fn new(claim: &str, instance: String, value: impl ToString, bound: impl ToString, passed: bool) -> Self {
        Self {
            claim: claim.to_string(),
            instance,
            value: value.to_string(),
            bound: bound.to_string(),
            passed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigRangeReport {
    pub parity: Parity,
    pub n: usize,
    pub m_max: usize,
    pub k_max: usize,
    pub checks: Vec<RangeCheck>,
    pub passed: bool,
}

impl ConfigRangeReport {
    pub fn failures(&self) -> impl Iterator<Item = &RangeCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Checks the homotopy, cohomology and loop-space bounds at the smallest
/// ambient dimension of the given parity.
pub fn verify_config_ranges(parity: Parity, m_max: usize, k_max: usize) -> Result<ConfigRangeReport> {
    use crate::fimod::{module_weight, repstab_onset};
    let n = minimal_dimension(parity);
    let mut checks = Vec::new();
    for m in 1..=m_max {
        let i = homotopy_degree(m, n);
        let table = homotopy_fi_module(parity, m, k_max)?;
        let inst = format!("pi_{i}, n = {n}, m = {m}, k ≤ {k_max}");
        let w = module_weight(&table)?;
        checks.push(RangeCheck::new("weight ≤ 2(i-1)", inst.clone(), w, 2 * (i - 1), w <= 2 * (i - 1)));
        let (onset, _) = repstab_onset(&table)?;
        checks.push(RangeCheck::new("onset ≤ 4(i-1)", inst.clone(), onset, 4 * (i - 1), onset <= 4 * (i - 1)));
        checks.push(RangeCheck::new("onset ≤ 2(i-1)", inst, onset, 2 * (i - 1), onset <= 2 * (i - 1)));
    }
    for j in 1..=m_max.min(MAX_ARNOLD_DEGREE) {
        let table = cohomology_fi_module(parity, j, k_max)?;
        let i = j * (n - 1);
        let w = module_weight(&table)?;
        checks.push(RangeCheck::new(
            "cohomology weight ≤ i",
            format!("H^{i}, n = {n}, j = {j}, k ≤ {k_max}"),
            w,
            i,
            w <= i,
        ));
    }
    let loop_k = k_max.min(loops::MAX_LOOP_K);
    let rate = loops::cohomology_weight_rate(parity, loop_k)?;
    for w in 1..=m_max.min(loops::MAX_LOOP_WEIGHT) {
        let degree = w * (n - 2);
        let bound = Q::from_integer(2.into()) * &rate * Q::from_integer(degree.into());
        let mut worst = 0usize;
        for k in 0..=loop_k {
            worst = worst.max(loop_space_piece(k, parity, w)?.fi_weight());
        }
        checks.push(RangeCheck::new(
            "loop weight ≤ 2 c1 i",
            format!("H^{degree}(ΩF_k), n = {n}, k ≤ {loop_k}"),
            worst,
            &bound,
            Q::from_integer(worst.into()) <= bound,
        ));
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(ConfigRangeReport {
        parity,
        n,
        m_max,
        k_max,
        checks,
        passed,
    })
}
