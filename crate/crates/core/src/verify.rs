//! The acceptance suite: ten exact checks, shared by the integration test
//! and `repstab verify`.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dkconfig::loops::{cohomology_weight_rate, loop_space_piece, primitive_dims};
use crate::dkconfig::{
    cohomology_fi_module, dk_graded_basis, homotopy_degree, homotopy_fi_module, minimal_dimension,
};
use crate::error::{Error, Result};
use crate::exact::Q;
use crate::fimod::{
    check_uniform_repstab, dimension_polynomial, expand_h0, h0_decompose, module_weight, phi_dims, predicted_range,
    repstab_onset, stability_degree_bounds, tensor_fimod, weight_of, FIModuleTable,
};
use crate::liecalc::verify_algebra_weight_bound;
use crate::liecalc::words::{brute_force_lie_dim, super_lyndon_basis};
use crate::partitions::{enumerate_partitions, hook_dimension, pad_label, Partition};
use crate::pbw::{lie_dims_from_hilbert, product_geometric};
use crate::reps::{decompose_character, induce_with_trivial, Parity, SymRep};
use crate::store::Storable;
use crate::symchar::{character_table, factorial, inner_product, CharacterVector};

/// Seed of the randomized tensor-product tables.
pub const TENSOR_SEED: u64 = 0x5eed_f1a5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    PaperExample,
    Ranges,
    Algebra,
    All,
}

impl Suite {
    pub fn criteria(self) -> Vec<u8> {
        match self {
            Suite::PaperExample => vec![1, 2],
            Suite::Ranges => vec![3, 4, 10],
            Suite::Algebra => vec![5, 6, 7, 8, 9],
            Suite::All => (1..=10).collect(),
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-example" => Ok(Suite::PaperExample),
            "ranges" => Ok(Suite::Ranges),
            "algebra" => Ok(Suite::Algebra),
            "all" => Ok(Suite::All),
            other => Err(Error::Parse(format!("unknown suite {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    /// Wall time; left out of JSON so repeated runs serialize identically.
    #[serde(skip)]
    pub elapsed_ms: u64,
    pub budget_ms: u64,
    pub detail: Vec<String>,
    pub failures: Vec<String>,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {}: {} ({:.2} s, budget {} s)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed_ms as f64 / 1000.0,
            self.budget_ms / 1000
        )?;
        for line in &self.failures {
            write!(f, "\n    failure: {line}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub criteria: Vec<CriterionResult>,
    pub passed: bool,
}

impl Storable for VerificationReport {
    const KIND: &'static str = "verification_report";
}

/// Findings of one criterion: informational lines and violated assertions.
#[derive(Default)]
struct Findings {
    detail: Vec<String>,
    failures: Vec<String>,
}

impl Findings {
    fn note(&mut self, s: impl Into<String>) {
        self.detail.push(s.into());
    }

    fn check(&mut self, ok: bool, s: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(s());
        }
    }
}

struct CriterionDef {
    title: &'static str,
    budget: Duration,
    run: fn(&mut Findings) -> Result<()>,
}

fn definition(id: u8) -> Option<CriterionDef> {
    let s = |title, secs, run| Some(CriterionDef { title, budget: Duration::from_secs(secs), run });
    match id {
        1 => s("weight-one configuration tables, k = 4..7", 5, weight_one_rows),
        2 => s("weight-one dimension polynomial k(k-1)/2 from k = 0", 1, pair_count_polynomial),
        3 => s("odd homotopy weight and onset ranges, m ≤ 3, k ≤ 6", 120, homotopy_ranges),
        4 => s("Arnold cohomology weight ≤ i at n = 3, j ≤ 3, k ≤ 6", 60, cohomology_bound),
        5 => s("coinvariants of tensor products and weight additivity", 30, tensor_formula),
        6 => s("stability range and H0 classification of generated tables", 30, repstab_machinery),
        7 => s("character orthogonality, Pieri induction, dimension sums", 120, character_substrate),
        8 => s("free Lie and Gerstenhaber weight bound", 180, lie_weight_bound),
        9 => s("Drinfeld-Kohno and super-Witt dimensions across oracles", 180, cross_oracles),
        10 => s("loop-space PBW weights and primitives", 120, loop_space),
        _ => None,
    }
}

/// Runs one criterion; an error inside the computation counts as a failure.
pub fn run_criterion(id: u8) -> Result<CriterionResult> {
    let sp = definition(id).ok_or_else(|| Error::OutOfRange(format!("criterion {id} (expected 1..=10)")))?;
    let start = Instant::now();
    let mut found = Findings::default();
    if let Err(e) = (sp.run)(&mut found) {
        found.failures.push(format!("computation failed: {e}"));
    }
    let elapsed = start.elapsed();
    if elapsed > sp.budget {
        found.failures.push(format!(
            "took {:.2} s, over the {} s budget",
            elapsed.as_secs_f64(),
            sp.budget.as_secs()
        ));
    }
    Ok(CriterionResult {
        id,
        title: sp.title.to_string(),
        passed: found.failures.is_empty(),
        elapsed_ms: elapsed.as_millis() as u64,
        budget_ms: sp.budget.as_millis() as u64,
        detail: found.detail,
        failures: found.failures,
    })
}

pub fn run_suite(suite: Suite, mut progress: impl FnMut(&CriterionResult)) -> Result<VerificationReport> {
    let mut criteria = Vec::new();
    for id in suite.criteria() {
        let r = run_criterion(id)?;
        progress(&r);
        criteria.push(r);
    }
    let passed = criteria.iter().all(|c| c.passed);
    Ok(VerificationReport { suite, criteria, passed })
}

fn padded(k: usize, labels: &[&[usize]]) -> Result<SymRep> {
    let pairs = labels
        .iter()
        .map(|l| Ok((pad_label(&Partition::new(l.to_vec())?, k)?, 1)))
        .collect::<Result<Vec<_>>>()?;
    SymRep::from_pairs(k, pairs)
}

fn weight_one_rows(f: &mut Findings) -> Result<()> {
    let rows: [(Parity, &[&[usize]], &str); 2] = [
        (Parity::Even, &[&[], &[1], &[2]], "V(0)+V(1)+V(2)"),
        (Parity::Odd, &[&[1], &[1, 1]], "V(1)+V(1,1)"),
    ];
    for (parity, labels, name) in rows {
        let table = homotopy_fi_module(parity, 1, 7)?;
        for k in 4..=7 {
            let got = &table.levels[k];
            let want = padded(k, labels)?;
            f.check(*got == want, || format!("{parity}, k = {k}: got {}, expected {name}", got.padded_string()));
        }
        f.note(format!("{parity}: k = 4..7 rows equal {name}"));
    }
    Ok(())
}

fn pair_count_polynomial(f: &mut Findings) -> Result<()> {
    let half = Q::new(BigInt::one(), BigInt::from(2));
    let expected = vec![Q::zero(), -half.clone(), half];
    for parity in [Parity::Even, Parity::Odd] {
        let table = homotopy_fi_module(parity, 1, 7)?;
        let poly = dimension_polynomial(&table)?;
        let mono = poly.monomial_coefficients();
        let ok = poly.onset == 0 && mono == expected;
        f.check(ok, || format!("{parity}: got {poly} from k = {}", poly.onset));
        f.note(format!("{parity}: dim = {poly} for k ≥ {}", poly.onset));
    }
    Ok(())
}

fn homotopy_ranges(f: &mut Findings) -> Result<()> {
    let parity = Parity::Odd;
    let n = minimal_dimension(parity);
    for m in 1..=3 {
        let i = homotopy_degree(m, n);
        let table = homotopy_fi_module(parity, m, 6)?;
        let w = module_weight(&table)?;
        let (onset, _) = repstab_onset(&table)?;
        f.note(format!(
            "m = {m}, i = {i}: weight {w} (≤ {}), onset {onset} (≤ {} and ≤ {})",
            2 * (i - 1),
            4 * (i - 1),
            2 * (i - 1)
        ));
        f.check(w <= 2 * (i - 1), || format!("m = {m}: weight {w} > 2(i-1) = {}", 2 * (i - 1)));
        f.check(onset <= 4 * (i - 1), || format!("m = {m}: onset {onset} > 4(i-1) = {}", 4 * (i - 1)));
        f.check(onset <= 2 * (i - 1), || format!("m = {m}: onset {onset} > 2(i-1) = {}", 2 * (i - 1)));
    }
    Ok(())
}

fn cohomology_bound(f: &mut Findings) -> Result<()> {
    for j in 1..=3 {
        let table = cohomology_fi_module(Parity::Odd, j, 6)?;
        let w = module_weight(&table)?;
        f.note(format!("H^{}: weight {w} ≤ {}", 2 * j, 2 * j));
        f.check(w <= 2 * j, || format!("j = {j}: weight {w} > {}", 2 * j));
    }
    Ok(())
}

/// Random `H₀` with generators of size ≤ 3, at least one nonzero.
fn random_table(rng: &mut ChaCha8Rng, name: &str, max_n: usize) -> Result<FIModuleTable> {
    let shapes: Vec<Partition> = (0..=3).flat_map(enumerate_partitions).collect();
    loop {
        let gens: Vec<(Partition, u64)> = shapes
            .iter()
            .filter_map(|mu| {
                let c = if rng.gen_bool(0.35) { rng.gen_range(1..=2) } else { 0 };
                (c > 0).then(|| (mu.clone(), c))
            })
            .collect();
        if !gens.is_empty() {
            return FIModuleTable::free(name, &gens, max_n);
        }
    }
}

fn random_pairs() -> Result<Vec<(FIModuleTable, FIModuleTable)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(TENSOR_SEED);
    (0..20)
        .map(|t| Ok((random_table(&mut rng, &format!("F{t}"), 8)?, random_table(&mut rng, &format!("G{t}"), 8)?)))
        .collect()
}

fn tensor_formula(f: &mut Findings) -> Result<()> {
    for (a, b) in random_pairs()? {
        let ab = tensor_fimod(&a, &b)?;
        let phi0 = phi_dims(&ab, 0)?;
        for n in 0..=8 {
            let formula: u64 = a.levels[n].iter().map(|(mu, c)| c * b.levels[n].mult(mu)).sum();
            f.check(phi0[n] == formula, || {
                format!("{} ⊗ {}, n = {n}: Φ0 = {} but Σ c c = {formula}", a.name, b.name, phi0[n])
            });
        }
        let (wa, wb, wab) = (module_weight(&a)?, module_weight(&b)?, module_weight(&ab)?);
        f.check(wab <= wa + wb, || format!("{} ⊗ {}: weight {wab} > {wa} + {wb}", a.name, b.name));
    }
    f.note("20 seeded pairs, N = 8");
    Ok(())
}

fn repstab_machinery(f: &mut Findings) -> Result<()> {
    let mut count = 0;
    for (a, b) in random_pairs()? {
        let ab = tensor_fimod(&a, &b)?;
        for t in [a, b, ab] {
            count += 1;
            let h0 = h0_decompose(&t)?;
            f.check(expand_h0(&h0, t.max_n)? == t.levels, || format!("{}: H0 expansion differs", t.name));
            // Every generator shows its padded label by n = |μ| + μ_1, and
            // Φ_q for q ≤ w + 2 needs 2w + 6 levels to show three constant entries.
            let reach = h0.iter().map(|(mu, _)| mu.size() + mu.first()).max().unwrap_or(0);
            let g = module_weight(&t)?;
            let depth = reach.max(2 * g + 6);
            let deep = FIModuleTable::free(t.name.clone(), &h0, depth)?;
            let w = weight_of(&deep)?.weight;
            f.check(w == g, || format!("{}: weight {w} at depth {depth}, H0 says {g}", t.name));
            let upper = stability_degree_bounds(&deep, None)?
                .upper
                .ok_or_else(|| Error::NotFISharp(t.name.clone()))?;
            let range = predicted_range(upper, w);
            let deep = FIModuleTable::free(t.name.clone(), &h0, depth.max(range + 2))?;
            let report = check_uniform_repstab(&deep, range)?;
            f.check(report.passed && report.onset <= range, || {
                format!("{}: onset {} > predicted range {range}", t.name, report.onset)
            });
        }
    }
    f.note(format!("{count} tables (20 pairs and their tensor products)"));
    Ok(())
}

fn character_substrate(f: &mut Findings) -> Result<()> {
    for n in 0..=10 {
        let table = character_table(n)?;
        let order = BigInt::from(factorial(n));
        let p = table.rows.len();
        for a in 0..p {
            for b in a..p {
                let ip = inner_product(&table.rows[a], &table.rows[b])?;
                let want = if a == b { Q::one() } else { Q::zero() };
                f.check(ip == want, || format!("n = {n}: <χ_{a}, χ_{b}> = {ip}"));
            }
        }
        for (x, (mu, _)) in table.classes.classes.iter().enumerate() {
            for y in x..p {
                let s: Q = table.rows.iter().map(|r| &r.values[x] * &r.values[y]).sum();
                let want = if x == y { Q::from_integer(mu.centralizer_order().into()) } else { Q::zero() };
                f.check(s == want, || format!("n = {n}: column sum ({x}, {y}) = {s}"));
            }
        }
        let dims: BigInt = table.partitions.iter().map(|l| BigInt::from(hook_dimension(l)).pow(2)).sum();
        f.check(dims == order, || format!("n = {n}: Σ dim² = {dims}"));
        for m in 0..=5.min(n) {
            let trivial = CharacterVector::from_fn(n - m, |_| Q::one());
            let sub = character_table(m)?;
            for (lambda, chi) in sub.partitions.iter().zip(&sub.rows) {
                let induced = crate::reps::induce_young_character(chi, &trivial)?;
                let by_chars = decompose_character(&induced)?;
                let by_pieri = induce_with_trivial(lambda, n)?;
                f.check(by_chars == by_pieri, || format!("Ind {lambda} to S_{n}: Pieri disagrees"));
            }
        }
    }
    f.note("n = 0..10");
    Ok(())
}

fn lie_weight_bound(f: &mut Findings) -> Result<()> {
    for d in [2, 3] {
        for m in [1, 2] {
            for l in 1..=8 {
                let r = verify_algebra_weight_bound(d, m, l, 6)?;
                f.check(r.passed, || {
                    format!("d = {d}, m = {m}, l = {l}: weights {:?} / {:?} exceed {}", r.lie.weight, r.gerstenhaber.weight, r.bound)
                });
            }
        }
    }
    f.note("d ∈ {2,3}, m ∈ {1,2}, l ≤ 8, n ≤ 6");
    Ok(())
}

fn cross_oracles(f: &mut Findings) -> Result<()> {
    for parity in [Parity::Even, Parity::Odd] {
        for k in 0..=6usize {
            let pbw = lie_dims_from_hilbert(&product_geometric(k.saturating_sub(1), 4), |w| parity.times(w));
            for m in 1..=4 {
                let dim = dk_graded_basis(k, parity, m)?.dim();
                let semi: usize = (1..k).map(|j| super_lyndon_basis(j as u8, m, parity).len()).sum();
                f.check(BigInt::from(dim) == pbw[m] && dim == semi, || {
                    format!("{parity}, k = {k}, m = {m}: quotient {dim}, PBW {}, semidirect {semi}", pbw[m])
                });
            }
        }
        for gens in 1..=3u8 {
            for l in 1..=5 {
                let lyndon = super_lyndon_basis(gens, l, parity).len();
                let brute = brute_force_lie_dim(gens, l, parity);
                f.check(lyndon == brute, || {
                    format!("{parity}, {gens} generators, l = {l}: Lyndon {lyndon}, brute force {brute}")
                });
            }
        }
    }
    f.note("k ≤ 6, m ≤ 4 and ≤ 3 generators, l ≤ 5, both parities");
    Ok(())
}

fn loop_space(f: &mut Findings) -> Result<()> {
    for parity in [Parity::Even, Parity::Odd] {
        let n = minimal_dimension(parity);
        let rate = cohomology_weight_rate(parity, 5)?;
        f.note(format!("n = {n}: c1 = {rate}"));
        for k in 0..=5usize {
            let series = product_geometric(k.saturating_sub(1), 3);
            for w in 1..=3 {
                let piece = loop_space_piece(k, parity, w)?;
                let degree = piece.degree;
                let bound = Q::from_integer(2.into()) * &rate * Q::from_integer(degree.into());
                let pw = piece.fi_weight();
                f.check(Q::from_integer(pw.into()) <= bound, || {
                    format!("n = {n}, k = {k}, degree {degree}: weight {pw} > {bound}")
                });
                f.check(BigInt::from(piece.dim()) == series[w], || {
                    format!("n = {n}, k = {k}, w = {w}: dim {} vs Poincaré series {}", piece.dim(), series[w])
                });
            }
            let prim = primitive_dims(k, parity, 3)?;
            for w in 1..=3 {
                let lie = dk_graded_basis(k, parity, w)?.dim();
                f.check(prim[w] == BigInt::from(lie), || {
                    format!("n = {n}, k = {k}, w = {w}: {} primitives vs {lie} Lie elements", prim[w])
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_partition_the_criteria() {
        let mut all: Vec<u8> = [Suite::PaperExample, Suite::Ranges, Suite::Algebra]
            .iter()
            .flat_map(|s| s.criteria())
            .collect();
        all.sort();
        assert_eq!(all, Suite::All.criteria());
        assert_eq!("ranges".parse::<Suite>().unwrap(), Suite::Ranges);
        assert!("bogus".parse::<Suite>().is_err());
        assert!(run_criterion(11).is_err());
    }

    #[test]
    fn quick_criteria_pass() {
        for id in [1, 2] {
            let r = run_criterion(id).unwrap();
            assert!(r.passed, "{r}");
        }
    }
}
