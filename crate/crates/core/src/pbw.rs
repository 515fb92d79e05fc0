//! Hilbert-series bookkeeping for graded-commutative algebras.
//!
//! A graded vector space with `a_d` basis elements in degree `d` generates a
//! free graded-commutative algebra with Poincaré series
//! `Π_d (1 - t^d)^{-a_d}` over even `d`-parity and `Π_d (1 + t^d)^{a_d}` over
//! odd parity. [`lie_dims_from_hilbert`] inverts this product degree by
//! degree.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::reps::Parity;

/// Multiplies the truncated series `acc` by `(1 - t^d)^{-a}` or `(1 + t^d)^a`.
fn multiply_factor(acc: &mut [BigInt], d: usize, a: &BigInt, parity: Parity) {
    if a.is_zero() || d == 0 {
        return;
    }
    let top = acc.len();
    // Binomial-type coefficients of the factor in powers of t^d.
    let mut factor = vec![BigInt::zero(); top];
    factor[0] = BigInt::one();
    let mut c = BigInt::one();
    let mut j = 1usize;
    while j * d < top {
        let jb = BigInt::from(j);
        c = match parity {
            // C(a + j - 1, j)
            Parity::Even => c * (a + &jb - 1) / &jb,
            // C(a, j)
            Parity::Odd => c * (a - &jb + 1) / &jb,
        };
        factor[j * d] = c.clone();
        j += 1;
    }
    let old = acc.to_vec();
    for slot in acc.iter_mut() {
        *slot = BigInt::zero();
    }
    for (i, x) in old.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (k, f) in factor.iter().enumerate() {
            if i + k >= top {
                break;
            }
            if !f.is_zero() {
                acc[i + k] += x * f;
            }
        }
    }
}

/// Poincaré series through degree `max_deg` of the free graded-commutative
/// algebra on `dims[d]` generators of degree `d` (index 0 ignored).
pub fn hilbert_from_lie(
    dims: &[BigInt],
    parity_of: impl Fn(usize) -> Parity,
    max_deg: usize,
) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); max_deg + 1];
    acc[0] = BigInt::one();
    for (d, a) in dims.iter().enumerate().skip(1).take(max_deg) {
        multiply_factor(&mut acc, d, a, parity_of(d));
    }
    acc
}

/// Generator counts `a_d` with `hilbert_from_lie(a) = h`, for `h[0] = 1`.
pub fn lie_dims_from_hilbert(h: &[BigInt], parity_of: impl Fn(usize) -> Parity) -> Vec<BigInt> {
    let top = h.len();
    let mut dims = vec![BigInt::zero(); top];
    let mut acc = vec![BigInt::zero(); top];
    if top == 0 {
        return dims;
    }
    acc[0] = BigInt::one();
    for d in 1..top {
        // The degree-d factor contributes exactly a_d·t^d at order d.
        dims[d] = &h[d] - &acc[d];
        multiply_factor(&mut acc, d, &dims[d].clone(), parity_of(d));
    }
    dims
}

/// Coefficients of `Π_{j=1}^{r} (1 - j t)^{-1}` through `t^max_deg`.
pub fn product_geometric(r: usize, max_deg: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); max_deg + 1];
    acc[0] = BigInt::one();
    for j in 1..=r {
        let jb = BigInt::from(j);
        for d in 1..=max_deg {
            let prev = acc[d - 1].clone();
            acc[d] += &jb * prev;
        }
    }
    acc
}

/// Coefficients of `Π_{j=1}^{r} (1 + j t)`.
pub fn product_linear(r: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::one()];
    for j in 1..=r {
        let mut next = vec![BigInt::zero(); acc.len() + 1];
        for (d, c) in acc.iter().enumerate() {
            next[d] += c;
            next[d + 1] += c * BigInt::from(j);
        }
        acc = next;
    }
    acc
}
