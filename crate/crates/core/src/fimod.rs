//! FI-modules over ℚ presented by multiplicity tables.
//!
//! A table stores, for every `0 ≤ n ≤ max_n`, the `S_n`-representation `F_n`.
//! Constituents are read through padded labels: `V_μ` at level `n` is
//! `V(λ)_n` with `λ = (μ_2, μ_3, …)`. A padded multiplicity `c_{n,λ}` is zero
//! whenever `V(λ)_n` is undefined (`n < |λ| + λ_1`).
//!
//! FI♯-modules are sums of free modules `M(μ)` with `M(μ)_n =
//! Ind_{S_m × S_{n-m}}^{S_n}(V_μ ⊠ 1)`, so for tables flagged `fi_sharp` most
//! invariants are exact consequences of the generator multiset `H₀`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Q;
use crate::linalg::{add_entry, Echelon, Matrix, SparseVec};
use crate::partitions::{hook_dimension, Partition};
use crate::reps::{
    decompose_character, induce_rep_with_trivial, induce_with_trivial, kronecker, restrict_to,
    SymRep,
};
use crate::symchar::{conjugacy_classes, CharacterVector};

/// Derived bounds carried alongside a table. Absent fields are unknown.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableMetadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generation_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stability_bound: Option<usize>,
    /// Lie weight `m` of a homotopy table.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie_weight: Option<usize>,
    /// Ambient dimension `n` of `F_k(ℝⁿ)` the table was instantiated for.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient_dim: Option<usize>,
    /// Topological degree `i` the table describes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FIModuleTable {
    pub name: String,
    pub fi_sharp: bool,
    pub max_n: usize,
    pub levels: Vec<SymRep>,
    #[serde(default)]
    pub metadata: TableMetadata,
}

impl FIModuleTable {
    pub fn new(name: impl Into<String>, fi_sharp: bool, levels: Vec<SymRep>) -> Result<Self> {
        let t = Self {
            name: name.into(),
            fi_sharp,
            max_n: levels.len().saturating_sub(1),
            levels,
            metadata: TableMetadata::default(),
        };
        t.validate()?;
        Ok(t)
    }

    /// Checks the shape invariants: level `n` is a representation of `S_n`
    /// and `max_n` matches the level count.
    pub fn validate(&self) -> Result<()> {
        if self.levels.is_empty() {
            return Err(Error::EmptyTable);
        }
        if self.levels.len() != self.max_n + 1 {
            return Err(Error::InvariantViolation {
                path: "max_n".into(),
                reason: format!(
                    "max_n = {} but {} levels are stored",
                    self.max_n,
                    self.levels.len()
                ),
            });
        }
        for (n, level) in self.levels.iter().enumerate() {
            if level.n != n {
                return Err(Error::InvariantViolation {
                    path: format!("levels[{n}].n"),
                    reason: format!("level {n} holds a representation of S_{}", level.n),
                });
            }
        }
        Ok(())
    }

    /// `⊕ M(μ)^{c}` over the given generators, truncated at `max_n`.
    pub fn free(name: impl Into<String>, generators: &[(Partition, u64)], max_n: usize) -> Result<Self> {
        let levels = expand_h0(generators, max_n)?;
        Self::new(name, true, levels)
    }

    pub fn zero(name: impl Into<String>, max_n: usize) -> Self {
        Self {
            name: name.into(),
            fi_sharp: true,
            max_n,
            levels: (0..=max_n).map(SymRep::zero).collect(),
            metadata: TableMetadata::default(),
        }
    }

    pub fn with_metadata(mut self, metadata: TableMetadata) -> Self {
        self.metadata = metadata;
        self
    }

    pub fn level(&self, n: usize) -> Result<&SymRep> {
        self.levels
            .get(n)
            .ok_or_else(|| Error::OutOfRange(format!("level {n} beyond max_n = {}", self.max_n)))
    }

    pub fn dims(&self) -> Vec<u64> {
        self.levels.iter().map(SymRep::dimension).collect()
    }

    /// `c_{n,λ}` with the zero reading for undefined paddings.
    pub fn padded_mult(&self, n: usize, lambda: &Partition) -> u64 {
        self.levels.get(n).map_or(0, |l| l.padded_mult(lambda))
    }

    /// Every unpadded label that occurs somewhere in the table.
    pub fn labels(&self) -> Vec<Partition> {
        let mut all: Vec<Partition> = self
            .levels
            .iter()
            .flat_map(|l| l.iter().map(|(p, _)| p.unpad()).collect::<Vec<_>>())
            .collect();
        all.sort_by(|a, b| a.size().cmp(&b.size()).then(b.cmp(a)));
        all.dedup();
        all
    }
}

/// `M(μ)_n` summed over generators, for every `n ≤ max_n`.
pub fn expand_h0(generators: &[(Partition, u64)], max_n: usize) -> Result<Vec<SymRep>> {
    let mut levels: Vec<SymRep> = (0..=max_n).map(SymRep::zero).collect();
    for (mu, c) in generators {
        for (n, level) in levels.iter_mut().enumerate().skip(mu.size()) {
            let m = induce_with_trivial(mu, n)?;
            *level = level.direct_sum(&m.scaled(*c))?;
        }
    }
    Ok(levels)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightReport {
    pub weight: usize,
    /// First level at which the maximum is attained; `None` for the zero module.
    pub level: Option<usize>,
}

/// Largest `|λ|` over all constituents `V(λ)_n` of all levels.
pub fn weight_of(f: &FIModuleTable) -> Result<WeightReport> {
    if f.levels.is_empty() {
        return Err(Error::EmptyTable);
    }
    let mut best = WeightReport {
        weight: 0,
        level: None,
    };
    for (n, level) in f.levels.iter().enumerate() {
        for (mu, _) in level.iter() {
            let w = n - mu.first();
            if best.level.is_none() || w > best.weight {
                best = WeightReport {
                    weight: w,
                    level: Some(n),
                };
            }
        }
    }
    Ok(best)
}

/// Weight of the module rather than of the stored levels. An FI♯ table
/// only exhibits `V(μ)_n` for a generator `μ` once `n ≥ |μ| + μ_1`, so its
/// module weight is read off `H₀`; other tables report what they show.
pub fn module_weight(f: &FIModuleTable) -> Result<usize> {
    if !f.fi_sharp {
        return Ok(weight_of(f)?.weight);
    }
    Ok(h0_decompose(f)?.iter().map(|(mu, _)| mu.size()).max().unwrap_or(0))
}

/// Trivial multiplicity of `Res^{S_n}_{S_k} V_μ` for all `k ≤ n` at once.
fn coinvariant_dims_by_rank(level: &SymRep) -> Vec<u64> {
    let n = level.n;
    let mut out = vec![0u64; n + 1];
    let mut current = level.clone();
    for k in (0..=n).rev() {
        out[k] = current.mult(&Partition::row(k));
        if k > 0 {
            current = restrict_to(&current, k - 1).expect("restriction to a smaller rank");
        }
    }
    out
}

/// `dim Φ_q(F)_k = dim (F_{k+q})_{S_k}` for `0 ≤ k ≤ max_n - q`.
pub fn phi_dims(f: &FIModuleTable, q: usize) -> Result<Vec<u64>> {
    if f.levels.is_empty() {
        return Err(Error::EmptyTable);
    }
    if q > f.max_n {
        return Err(Error::OutOfRange(format!(
            "q = {q} exceeds max_n = {}",
            f.max_n
        )));
    }
    Ok((0..=f.max_n - q)
        .map(|k| coinvariant_dims_by_rank(&f.levels[k + q])[k])
        .collect())
}

/// All `Φ_q` dimension sequences for `q ≤ q_max`, sharing restrictions.
fn phi_table(f: &FIModuleTable, q_max: usize) -> Vec<Vec<u64>> {
    let by_level: Vec<Vec<u64>> = f.levels.iter().map(coinvariant_dims_by_rank).collect();
    (0..=q_max)
        .map(|q| (0..=f.max_n - q).map(|k| by_level[k + q][k]).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityBounds {
    pub lower: usize,
    pub upper: Option<usize>,
    pub q_max: usize,
}

impl StabilityBounds {
    pub fn is_exact(&self) -> bool {
        self.upper == Some(self.lower)
    }
}

/// Least `r` with `seq[k]` constant for `r ≤ k < len`.
fn constancy_onset(seq: &[u64]) -> usize {
    let Some(last) = seq.last() else {
        return 0;
    };
    let mut r = seq.len() - 1;
    while r > 0 && seq[r - 1] == *last {
        r -= 1;
    }
    r
}

/// Certified bracket on the stability degree.
///
/// The lower bound is the least `r` from which every `Φ_q` dimension sequence
/// (`q ≤ q_max`) is constant; equal dimensions are necessary for `T` to be an
/// isomorphism. The upper bound `max λ_1` over `H₀` is only available for
/// FI♯ tables.
pub fn stability_degree_bounds(f: &FIModuleTable, q_max: Option<usize>) -> Result<StabilityBounds> {
    let q_max = match q_max {
        Some(q) => q,
        None => weight_of(f)?.weight + 2,
    };
    if f.max_n < q_max + 2 {
        return Err(Error::TableTooShallow(format!(
            "Φ_q for q ≤ {q_max} needs max_n ≥ {}, table has {}",
            q_max + 2,
            f.max_n
        )));
    }
    let mut lower = 0;
    for (q, seq) in phi_table(f, q_max).iter().enumerate() {
        let tail = &seq[seq.len() - 3..];
        if tail.iter().any(|x| *x != tail[0]) {
            return Err(Error::TableTooShallow(format!(
                "dim Φ_{q} still moving at the top of the table: {seq:?}"
            )));
        }
        lower = lower.max(constancy_onset(seq));
    }
    let upper = if f.fi_sharp {
        Some(
            h0_decompose(f)?
                .iter()
                .map(|(mu, _)| mu.first())
                .max()
                .unwrap_or(0),
        )
    } else {
        None
    };
    Ok(StabilityBounds {
        lower,
        upper,
        q_max,
    })
}

/// Generators of an FI♯ table: each `(μ, c)` contributes `M(μ)^c`.
///
/// Greedy from degree 0 upward: whatever part of `F_n` is not accounted for by
/// the expansions of lower-degree generators is new generators in degree `n`.
pub fn h0_decompose(f: &FIModuleTable) -> Result<Vec<(Partition, u64)>> {
    if !f.fi_sharp {
        return Err(Error::NotFISharp(f.name.clone()));
    }
    let mut explained: Vec<SymRep> = (0..=f.max_n).map(SymRep::zero).collect();
    let mut generators = Vec::new();
    for n in 0..=f.max_n {
        let residual = f.levels[n].checked_sub(&explained[n]).ok_or_else(|| {
            Error::InconsistentTable {
                level: n,
                reason: format!(
                    "stored level {} does not contain the free part {}",
                    f.levels[n], explained[n]
                ),
            }
        })?;
        for (mu, c) in residual.iter() {
            generators.push((mu.clone(), c));
            for (m, slot) in explained.iter_mut().enumerate().skip(n) {
                let add = induce_with_trivial(mu, m)?.scaled(c);
                *slot = slot.direct_sum(&add)?;
            }
        }
    }
    Ok(generators)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationReport {
    pub degree: usize,
    /// `true` when derived from an exact FI♯ classification; otherwise the
    /// value is a lower bound observed up to `max_n`.
    pub certified: bool,
}

/// Generation degree: exact `max |μ|` over `H₀` for FI♯ tables. For other
/// tables, the largest `n` at which `F_n` has a constituent exceeding its
/// multiplicity in `Ind F_{n-1}`, which any generating set must reach.
pub fn generation_degree(f: &FIModuleTable) -> Result<GenerationReport> {
    if f.levels.is_empty() {
        return Err(Error::EmptyTable);
    }
    if f.fi_sharp {
        let d = h0_decompose(f)?
            .iter()
            .map(|(mu, _)| mu.size())
            .max()
            .unwrap_or(0);
        return Ok(GenerationReport {
            degree: d,
            certified: true,
        });
    }
    let mut degree = 0;
    for n in 0..=f.max_n {
        let induced = if n == 0 {
            SymRep::zero(0)
        } else {
            induce_rep_with_trivial(&f.levels[n - 1], n)?
        };
        if f.levels[n].iter().any(|(mu, c)| c > induced.mult(mu)) {
            degree = n;
        }
    }
    Ok(GenerationReport {
        degree,
        certified: false,
    })
}

/// Levelwise tensor product with the standard bound metadata attached.
pub fn tensor_fimod(f: &FIModuleTable, g: &FIModuleTable) -> Result<FIModuleTable> {
    if f.max_n != g.max_n {
        return Err(Error::RankMismatch(f.max_n, g.max_n));
    }
    let levels = f
        .levels
        .iter()
        .zip(&g.levels)
        .map(|(a, b)| kronecker(a, b))
        .collect::<Result<Vec<_>>>()?;
    let (s1, s2) = (module_weight(f)?, module_weight(g)?);
    let (d1, d2) = (generation_degree(f)?, generation_degree(g)?);
    let stability_bound = match (stability_upper(f)?, stability_upper(g)?) {
        (Some(r1), Some(r2)) => Some((r1 + s1).max(r2 + s2).max(s1 + s2)),
        _ => None,
    };
    let mut notes = Vec::new();
    if !(d1.certified && d2.certified) {
        notes.push("generation bound uses degrees observed up to max_n".to_string());
    }
    let metadata = TableMetadata {
        weight_bound: Some(s1 + s2),
        generation_bound: Some(d1.degree + d2.degree),
        stability_bound,
        notes,
        ..TableMetadata::default()
    };
    Ok(FIModuleTable {
        name: format!("{} ⊗ {}", f.name, g.name),
        fi_sharp: f.fi_sharp && g.fi_sharp,
        max_n: f.max_n,
        levels,
        metadata,
    })
}

/// `max λ_1` over `H₀` for FI♯ tables.
fn stability_upper(f: &FIModuleTable) -> Result<Option<usize>> {
    if !f.fi_sharp {
        return Ok(None);
    }
    Ok(Some(
        h0_decompose(f)?
            .iter()
            .map(|(mu, _)| mu.first())
            .max()
            .unwrap_or(0),
    ))
}

/// `P(n) = Σ_j a_j C(n, j)`, valid for every integer `n ≥ onset`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionPolynomial {
    #[serde(with = "crate::exact::rational_vec")]
    pub coefficients: Vec<Q>,
    pub onset: usize,
}

fn binomial_q(n: &Q, j: usize) -> Q {
    let mut acc = Q::one();
    for i in 0..j {
        acc = acc * (n - Q::from_integer(BigInt::from(i))) / Q::from_integer(BigInt::from(i + 1));
    }
    acc
}

impl DimensionPolynomial {
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval(&self, n: usize) -> Q {
        self.eval_q(&Q::from_integer(BigInt::from(n)))
    }

    pub fn eval_q(&self, n: &Q) -> Q {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(j, a)| a * binomial_q(n, j))
            .sum()
    }

    /// Coefficients in the monomial basis `1, n, n², …`.
    pub fn monomial_coefficients(&self) -> Vec<Q> {
        let len = self.coefficients.len();
        let mut out = vec![Q::zero(); len];
        for (j, a) in self.coefficients.iter().enumerate() {
            // C(n, j) = n(n-1)…(n-j+1) / j!
            let mut poly = vec![Q::one()];
            for i in 0..j {
                let shift = Q::from_integer(BigInt::from(i));
                let mut next = vec![Q::zero(); poly.len() + 1];
                for (d, c) in poly.iter().enumerate() {
                    next[d + 1] += c;
                    next[d] -= c * &shift;
                }
                poly = next;
            }
            let fact: Q = (1..=j).map(|i| Q::from_integer(BigInt::from(i))).product();
            for (d, c) in poly.iter().enumerate() {
                out[d] += a * c / &fact;
            }
        }
        while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        out
    }
}

impl fmt::Display for DimensionPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.monomial_coefficients();
        let mut terms = Vec::new();
        for (d, c) in coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = match d {
                0 => format!("{mag}"),
                _ => {
                    let var = if d == 1 { "n".to_string() } else { format!("n^{d}") };
                    if mag.is_one() {
                        var
                    } else {
                        format!("{mag} {var}")
                    }
                }
            };
            terms.push((sign, body));
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (i, (sign, body)) in terms.iter().enumerate() {
            if i == 0 {
                if *sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            s.push_str(body);
        }
        f.write_str(&s)
    }
}

/// Dimension polynomial. FI♯ tables get the exact closed form
/// `Σ_{μ ∈ H₀} dim V_μ · C(n, |μ|)` with onset 0. Other tables are fitted on
/// their top `weight + 1` levels, and the fit must be confirmed on at least
/// two further levels below the fitting window.
pub fn dimension_polynomial(f: &FIModuleTable) -> Result<DimensionPolynomial> {
    if f.fi_sharp {
        let gens = h0_decompose(f)?;
        let deg = gens.iter().map(|(mu, _)| mu.size()).max().unwrap_or(0);
        let mut coefficients = vec![Q::zero(); deg + 1];
        for (mu, c) in gens {
            coefficients[mu.size()] += Q::from_integer(BigInt::from(c * hook_dimension(&mu)));
        }
        return Ok(DimensionPolynomial {
            coefficients,
            onset: 0,
        });
    }
    let d = weight_of(f)?.weight;
    let dims = f.dims();
    if f.max_n < d + 2 {
        return Err(Error::TableTooShallow(format!(
            "a degree-{d} fit needs {} levels plus two for validation",
            d + 1
        )));
    }
    let start = f.max_n - d;
    let poly = interpolate_binomial(start, &dims[start..]);
    let mut onset = start;
    while onset > 0 && poly.eval(onset - 1) == Q::from_integer(BigInt::from(dims[onset - 1])) {
        onset -= 1;
    }
    if start - onset < 2 {
        return Err(Error::TableTooShallow(format!(
            "fit on levels {start}..={} agrees with only {} earlier level(s)",
            f.max_n,
            start - onset
        )));
    }
    Ok(DimensionPolynomial {
        coefficients: poly.coefficients,
        onset,
    })
}

/// Newton interpolation through `(start + i, values[i])`, re-expressed in the
/// basis `C(n, j)`.
fn interpolate_binomial(start: usize, values: &[u64]) -> DimensionPolynomial {
    let len = values.len();
    // Forward differences Δ^j f(start).
    let mut diffs: Vec<Q> = values.iter().map(|&v| Q::from_integer(BigInt::from(v))).collect();
    let mut newton = Vec::with_capacity(len);
    for _ in 0..len {
        newton.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    // C(n - s, j) = Σ_i C(-s, j - i) C(n, i)  (Vandermonde).
    let minus_s = -Q::from_integer(BigInt::from(start));
    let mut coefficients = vec![Q::zero(); len];
    for (j, a) in newton.iter().enumerate() {
        for (i, slot) in coefficients.iter_mut().enumerate().take(j + 1) {
            *slot += a * binomial_q(&minus_s, j - i);
        }
    }
    DimensionPolynomial {
        coefficients,
        onset: start,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepStabReport {
    pub claimed_range: usize,
    pub passed: bool,
    /// Least `n` from which every padded multiplicity is constant.
    pub onset: usize,
    /// `true` when the onset was read off an FI♯ expansion reaching past
    /// every possible change, not just the stored levels.
    pub onset_certified: bool,
    /// Stable multiplicities by unpadded label, labels ascending.
    pub stable_multiplicities: Vec<(Partition, u64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub injective: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spanning: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

/// Least `n` from which all padded multiplicities of `levels` are constant.
fn multiplicity_onset(levels: &[SymRep]) -> usize {
    let mut labels: Vec<Partition> = levels
        .iter()
        .flat_map(|l| l.iter().map(|(p, _)| p.unpad()).collect::<Vec<_>>())
        .collect();
    labels.sort();
    labels.dedup();
    let mut onset = 0;
    for lambda in labels {
        let seq: Vec<u64> = levels.iter().map(|l| l.padded_mult(&lambda)).collect();
        onset = onset.max(constancy_onset(&seq));
    }
    onset
}

fn stable_mults(level: &SymRep) -> Vec<(Partition, u64)> {
    level.padded_mults().into_iter().collect()
}

/// Multiplicity-stability onset. For FI♯ tables the table is first extended
/// through its `H₀` expansion past `max(|μ| + μ_1) + 1`, beyond which no free
/// module changes, so the onset is exact.
pub fn repstab_onset(f: &FIModuleTable) -> Result<(usize, bool)> {
    if f.levels.is_empty() {
        return Err(Error::EmptyTable);
    }
    if f.fi_sharp {
        let gens = h0_decompose(f)?;
        let reach = gens
            .iter()
            .map(|(mu, _)| mu.size() + mu.first() + 1)
            .max()
            .unwrap_or(0)
            .max(f.max_n);
        let levels = expand_h0(&gens, reach)?;
        return Ok((multiplicity_onset(&levels), true));
    }
    Ok((multiplicity_onset(&f.levels), false))
}

/// Condition (iii) of uniform representation stability on a table: padded
/// multiplicities are constant for `n ≥ range`.
pub fn check_uniform_repstab(f: &FIModuleTable, range: usize) -> Result<RepStabReport> {
    if f.max_n < range + 2 {
        return Err(Error::TableTooShallow(format!(
            "range {range} needs levels up to {}, table stops at {}",
            range + 2,
            f.max_n
        )));
    }
    let (onset, certified) = repstab_onset(f)?;
    let passed = onset <= range;
    let failures = if passed {
        Vec::new()
    } else {
        vec![format!("multiplicities still change at n = {}", onset - 1)]
    };
    Ok(RepStabReport {
        claimed_range: range,
        passed,
        onset,
        onset_certified: certified,
        stable_multiplicities: stable_mults(&f.levels[f.max_n]),
        injective: None,
        spanning: None,
        failures,
    })
}

/// Range predicted from stability degree `r` and weight `s`.
pub fn predicted_range(r: usize, s: usize) -> usize {
    r + s
}

/// One level of a consistent sequence: the `S_n`-action through the adjacent
/// transpositions `s_1, …, s_{n-1}` and the structure map to level `n + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceLevel {
    pub dim: usize,
    pub generators: Vec<Matrix>,
    /// `d_{n+1} × d_n`; absent on the top level.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistentSequence {
    pub name: String,
    pub levels: Vec<SequenceLevel>,
}

/// Adjacent transpositions whose product, applied left to right, sorts
/// `perm`; enough to realise some element of the same conjugacy class.
fn adjacent_word(perm: &[usize]) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut word = Vec::new();
    let mut swapped = true;
    while swapped {
        swapped = false;
        for i in 0..p.len().saturating_sub(1) {
            if p[i] > p[i + 1] {
                p.swap(i, i + 1);
                word.push(i);
                swapped = true;
            }
        }
    }
    word
}

impl ConsistentSequence {
    pub fn max_n(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    /// Checks dimensions, the Coxeter presentation of `S_n` and
    /// `S_n`-equivariance of every structure map.
    pub fn validate(&self) -> Result<()> {
        if self.levels.is_empty() {
            return Err(Error::EmptyTable);
        }
        for (n, level) in self.levels.iter().enumerate() {
            let d = level.dim;
            if level.generators.len() != n.saturating_sub(1) {
                return Err(Error::InvalidSequence(format!(
                    "level {n} has {} generators, expected {}",
                    level.generators.len(),
                    n.saturating_sub(1)
                )));
            }
            for (i, s) in level.generators.iter().enumerate() {
                if s.rows != d || s.cols != d {
                    return Err(Error::InvalidSequence(format!(
                        "level {n}: s_{} is {}×{}, expected {d}×{d}",
                        i + 1,
                        s.rows,
                        s.cols
                    )));
                }
            }
            let gens = &level.generators;
            for i in 0..gens.len() {
                if !gens[i].mul(&gens[i])?.is_identity() {
                    return Err(Error::InvalidSequence(format!(
                        "level {n}: s_{} does not square to 1",
                        i + 1
                    )));
                }
                for j in i + 1..gens.len() {
                    let p = gens[i].mul(&gens[j])?;
                    let order = if j == i + 1 { 3 } else { 2 };
                    let mut acc = p.clone();
                    for _ in 1..order {
                        acc = acc.mul(&p)?;
                    }
                    if !acc.is_identity() {
                        return Err(Error::InvalidSequence(format!(
                            "level {n}: (s_{} s_{})^{order} ≠ 1",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
            if n + 1 < self.levels.len() {
                let next = &self.levels[n + 1];
                let phi = level.phi.as_ref().ok_or_else(|| {
                    Error::InvalidSequence(format!("level {n} is missing its structure map"))
                })?;
                if phi.rows != next.dim || phi.cols != d {
                    return Err(Error::InvalidSequence(format!(
                        "φ_{n} is {}×{}, expected {}×{d}",
                        phi.rows, phi.cols, next.dim
                    )));
                }
                for (i, s) in gens.iter().enumerate() {
                    if phi.mul(s)? != next.generators[i].mul(phi)? {
                        return Err(Error::InvalidSequence(format!(
                            "φ_{n} is not equivariant for s_{}",
                            i + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of some permutation of the given cycle type.
    fn class_matrix(&self, n: usize, perm: &[usize]) -> Result<Matrix> {
        let level = &self.levels[n];
        let mut m = Matrix::identity(level.dim);
        for i in adjacent_word(perm) {
            m = m.mul(&level.generators[i])?;
        }
        Ok(m)
    }

    /// Decomposition of level `n` from exact traces.
    pub fn level_rep(&self, n: usize) -> Result<SymRep> {
        let classes = conjugacy_classes(n)?;
        let mut values = Vec::with_capacity(classes.len());
        for (c, _) in &classes.classes {
            values.push(self.class_matrix(n, &c.representative())?.trace());
        }
        decompose_character(&CharacterVector { n, values })
    }

    pub fn to_table(&self) -> Result<FIModuleTable> {
        let levels = (0..self.levels.len())
            .map(|n| self.level_rep(n))
            .collect::<Result<Vec<_>>>()?;
        FIModuleTable::new(self.name.clone(), false, levels)
    }

    /// `φ_n` has full column rank.
    pub fn is_injective(&self, n: usize) -> bool {
        match &self.levels[n].phi {
            Some(phi) => phi.rank() == phi.cols,
            None => true,
        }
    }

    /// The `S_{n+1}`-orbit of `im φ_n` spans level `n + 1`.
    pub fn is_spanning(&self, n: usize) -> bool {
        let Some(phi) = &self.levels[n].phi else {
            return true;
        };
        let next = &self.levels[n + 1];
        let mut span = Echelon::new();
        let mut frontier: Vec<SparseVec> = (0..phi.cols).map(|j| phi.column(j)).collect();
        while let Some(v) = frontier.pop() {
            if span.insert(v.clone()).is_none() {
                continue;
            }
            for s in &next.generators {
                let mut w = SparseVec::new();
                for (&k, x) in &v {
                    for i in 0..s.rows {
                        add_entry(&mut w, i, &s.data[i][k] * x);
                    }
                }
                frontier.push(w);
            }
        }
        span.rank() == next.dim
    }

    /// The `S_n`-span of `r`-element subsets of `{1..n}`; with `oriented`,
    /// basis vectors carry the sign of the sorting permutation. For `r = 2`
    /// these are the two pairs modules.
    pub fn subsets(r: usize, max_n: usize, oriented: bool) -> Self {
        let mut levels = Vec::new();
        let subsets_of = |n: usize| -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            let mut cur = Vec::new();
            fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                if cur.len() == r {
                    out.push(cur.clone());
                    return;
                }
                for x in start..n {
                    cur.push(x);
                    rec(x + 1, n, r, cur, out);
                    cur.pop();
                }
            }
            rec(0, n, r, &mut cur, &mut out);
            out
        };
        for n in 0..=max_n {
            let basis = subsets_of(n);
            let index: BTreeMap<Vec<usize>, usize> =
                basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
            let d = basis.len();
            let generators = (0..n.saturating_sub(1))
                .map(|i| {
                    let mut m = Matrix::zeros(d, d);
                    for (col, b) in basis.iter().enumerate() {
                        let moved: Vec<usize> = b
                            .iter()
                            .map(|&x| match x {
                                x if x == i => i + 1,
                                x if x == i + 1 => i,
                                x => x,
                            })
                            .collect();
                        let mut sorted = moved.clone();
                        sorted.sort_unstable();
                        let swapped = moved != sorted;
                        let sign = if oriented && swapped { -1 } else { 1 };
                        m.data[index[&sorted]][col] = Q::from_integer(BigInt::from(sign));
                    }
                    m
                })
                .collect();
            let phi = (n < max_n).then(|| {
                let next = subsets_of(n + 1);
                let next_index: BTreeMap<&Vec<usize>, usize> =
                    next.iter().enumerate().map(|(i, b)| (b, i)).collect();
                let mut m = Matrix::zeros(next.len(), d);
                for (col, b) in basis.iter().enumerate() {
                    m.data[next_index[b]][col] = Q::one();
                }
                m
            });
            levels.push(SequenceLevel {
                dim: d,
                generators,
                phi,
            });
        }
        let name = match (r, oriented) {
            (2, false) => "pairs".to_string(),
            (2, true) => "oriented pairs".to_string(),
            _ => format!("{}{r}-subsets", if oriented { "oriented " } else { "" }),
        };
        Self { name, levels }
    }
}

/// Full uniform-representation-stability check on a consistent sequence:
/// injectivity, spanning, and multiplicity constancy computed from traces.
pub fn check_sequence_repstab(seq: &ConsistentSequence, range: usize) -> Result<RepStabReport> {
    seq.validate()?;
    let table = seq.to_table()?;
    let mut report = check_uniform_repstab(&table, range)?;
    let mut failures = report.failures.clone();
    let mut injective = true;
    let mut spanning = true;
    for n in 0..seq.max_n() {
        if !seq.is_injective(n) {
            injective = false;
            failures.push(format!("φ_{n} is not injective"));
        }
        if n >= range && !seq.is_spanning(n) {
            spanning = false;
            failures.push(format!("S_{}-orbit of im φ_{n} does not span", n + 1));
        }
    }
    report.injective = Some(injective);
    report.spanning = Some(spanning);
    report.passed = report.passed && injective && spanning;
    report.failures = failures;
    Ok(report)
}

/// Everything `fimod info` reports about a table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableInfo {
    pub name: String,
    pub fi_sharp: bool,
    pub max_n: usize,
    pub dims: Vec<u64>,
    pub weight: WeightReport,
    pub generation: GenerationReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h0: Option<Vec<(Partition, u64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stability: Option<StabilityBounds>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<DimensionPolynomial>,
    pub repstab_onset: usize,
    pub onset_certified: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// FI♯ table regenerated from `H₀` deep enough that every `Φ_q` with
/// `q ≤ weight + 2` shows a constant tail; `None` past the rank limit.
fn deep_expansion(f: &FIModuleTable, h0: Option<&[(Partition, u64)]>) -> Result<Option<FIModuleTable>> {
    let Some(h0) = h0 else {
        return Ok(None);
    };
    let w = h0.iter().map(|(mu, _)| mu.size()).max().unwrap_or(0);
    let depth = (2 * w + 6).max(f.max_n);
    if depth > MAX_EXPANSION_RANK {
        return Ok(None);
    }
    Ok(Some(FIModuleTable::new(f.name.clone(), true, expand_h0(h0, depth)?)?))
}

/// Largest level [`table_info`] will synthesise from `H₀`.
const MAX_EXPANSION_RANK: usize = 12;

pub fn table_info(f: &FIModuleTable) -> Result<TableInfo> {
    f.validate()?;
    let mut notes = Vec::new();
    let weight = weight_of(f)?;
    let generation = generation_degree(f)?;
    let h0 = if f.fi_sharp { Some(h0_decompose(f)?) } else { None };
    let stability = match stability_degree_bounds(f, None) {
        Ok(b) => Some(b),
        Err(Error::TableTooShallow(why)) => match (&h0, deep_expansion(f, h0.as_deref())?) {
            (Some(_), Some(deep)) => {
                notes.push(format!(
                    "stability bounds read from the H0 expansion to n = {}",
                    deep.max_n
                ));
                Some(stability_degree_bounds(&deep, None)?)
            }
            _ => {
                notes.push(format!("stability bounds unavailable: {why}"));
                None
            }
        },
        Err(e) => return Err(e),
    };
    let polynomial = match dimension_polynomial(f) {
        Ok(p) => Some(p),
        Err(Error::TableTooShallow(why)) => {
            notes.push(format!("dimension polynomial unavailable: {why}"));
            None
        }
        Err(e) => return Err(e),
    };
    let (onset, onset_certified) = repstab_onset(f)?;
    if !f.fi_sharp {
        notes.push(format!(
            "weight, generation degree and onset observed up to max_n = {}",
            f.max_n
        ));
    }
    Ok(TableInfo {
        name: f.name.clone(),
        fi_sharp: f.fi_sharp,
        max_n: f.max_n,
        dims: f.dims(),
        weight,
        generation,
        h0,
        stability,
        polynomial,
        repstab_onset: onset,
        onset_certified,
        notes,
    })
}

/// Levels of a table whose dimension polynomial is `C(n, j)` style closed
/// form; used when checking fitted polynomials.
pub fn polynomial_matches(p: &DimensionPolynomial, dims: &[u64]) -> bool {
    dims.iter()
        .enumerate()
        .skip(p.onset)
        .all(|(n, &d)| p.eval(n) == Q::from_integer(BigInt::from(d)))
}

/// `C(n, j)` as an exact rational.
pub fn binomial(n: usize, j: usize) -> Q {
    binomial_q(&Q::from_integer(BigInt::from(n)), j)
}

/// Non-negative integer value of an exact rational, if it is one.
pub fn as_count(v: &Q) -> Option<u64> {
    if v.is_integer() && !v.is_negative() {
        v.to_integer().to_u64()
    } else {
        None
    }
}
