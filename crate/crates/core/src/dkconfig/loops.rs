//! Rational (co)homology of the based loop space `ΩF_k(ℝⁿ)`.
//!
//! `H_*(ΩF_k(ℝⁿ); ℚ)` is the enveloping algebra of `ℒ_k(n−2)`, whose weight-`m`
//! piece sits in degree `m(n−2)`. By PBW it is equivariantly the free graded
//! commutative algebra on `ℒ_k`, so each weight is a sum of tensor products of
//! graded powers of Lie pieces. Cohomology has the same (self-dual) characters.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{arnold_character, dk_character, minimal_dimension, MAX_ARNOLD_DEGREE, MAX_DK_WEIGHT, MAX_K};
use crate::error::{Error, Result};
use crate::exact::Q;
use crate::partitions::enumerate_partitions;
use crate::pbw::lie_dims_from_hilbert;
use crate::reps::{graded_power, kronecker, Parity, SymRep};

pub const MAX_LOOP_K: usize = MAX_K;
pub const MAX_LOOP_WEIGHT: usize = MAX_DK_WEIGHT;

/// Weight-`w` piece of `H^*(ΩF_k(ℝⁿ))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopPiece {
    pub k: usize,
    pub parity: Parity,
    pub lie_weight: usize,
    /// Cohomological degree `w(n−2)` at the smallest `n` of the parity.
    pub degree: usize,
    pub action: SymRep,
}

impl LoopPiece {
    pub fn dim(&self) -> u64 {
        self.action.dimension()
    }

    /// FI weight: largest `k − λ₁` over constituents.
    pub fn fi_weight(&self) -> usize {
        rep_weight(&self.action)
    }
}

pub(crate) fn rep_weight(r: &SymRep) -> usize {
    r.iter().map(|(l, _)| r.n - l.first()).max().unwrap_or(0)
}

/// PBW assembly of the weight-`w` piece.
pub fn loop_space_piece(k: usize, parity: Parity, w: usize) -> Result<LoopPiece> {
    if k > MAX_LOOP_K || w > MAX_LOOP_WEIGHT {
        return Err(Error::ScaleExceeded(format!(
            "loop-space pieces need k ≤ {MAX_LOOP_K} and weight ≤ {MAX_LOOP_WEIGHT}, got k = {k}, w = {w}"
        )));
    }
    let lie: Vec<SymRep> = (0..=w)
        .map(|m| if m == 0 { Ok(SymRep::zero(k)) } else { dk_character(k, parity, m) })
        .collect::<Result<_>>()?;
    let mut action = if w == 0 { SymRep::trivial(k) } else { SymRep::zero(k) };
    if w > 0 {
        for shape in enumerate_partitions(w) {
            let mut term = SymRep::trivial(k);
            for (m, &count) in shape.multiplicities().iter().enumerate().skip(1) {
                if count == 0 {
                    continue;
                }
                let power = graded_power(&lie[m], count, parity.times(m))?;
                term = kronecker(&term, &power)?;
                if term.is_zero() {
                    break;
                }
            }
            action = action.direct_sum(&term)?;
        }
    }
    let n = minimal_dimension(parity);
    Ok(LoopPiece {
        k,
        parity,
        lie_weight: w,
        degree: w * (n - 2),
        action,
    })
}

/// Primitive counts recovered from the loop-space Hilbert series by PBW
/// inversion, in weights `1..=w_max` (index 0 unused).
pub fn primitive_dims(k: usize, parity: Parity, w_max: usize) -> Result<Vec<BigInt>> {
    let h = (0..=w_max)
        .map(|w| loop_space_piece(k, parity, w).map(|p| BigInt::from(p.dim())))
        .collect::<Result<Vec<_>>>()?;
    Ok(lie_dims_from_hilbert(&h, |w| parity.times(w)))
}

/// `c₁`: the largest ratio weight / degree over the positive-degree Arnold
/// pieces of `F_k(ℝⁿ)` for `k ≤ k_max`, at the smallest `n` of the parity.
pub fn cohomology_weight_rate(parity: Parity, k_max: usize) -> Result<Q> {
    let n = minimal_dimension(parity);
    let mut rate = Q::from_integer(0.into());
    for j in 1..=MAX_ARNOLD_DEGREE.min(k_max.saturating_sub(1)) {
        let mut w = 0;
        for k in 0..=k_max {
            w = w.max(rep_weight(&arnold_character(k, parity, j)?.action));
        }
        let r = Q::new(w.into(), (j * (n - 1)).into());
        if r > rate {
            rate = r;
        }
    }
    Ok(rate)
}
