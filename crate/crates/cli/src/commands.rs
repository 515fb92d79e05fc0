use std::fs;
use std::path::Path;

use repstab::dkconfig::{cohomology_fi_module, homotopy_fi_module, loop_space_piece, minimal_dimension};
use repstab::exact::{q, Q};
use repstab::fimod::{
    check_sequence_repstab, check_uniform_repstab, table_info, tensor_fimod, ConsistentSequence, FIModuleTable,
    RepStabReport, TableInfo, TableMetadata,
};
use repstab::liecalc::{gerstenhaber_character, lie_character, verify_algebra_weight_bound, GeneratorSet};
use repstab::reps::{decompose_virtual, Parity, SymRep};
use repstab::store::{self, Storable, TableCache};
use repstab::symchar::{character_table, CharacterTable, CharacterVector};
use repstab::verify::{run_suite, Suite};
use repstab::Error;
use serde_json::Value;

use crate::render::{Outcome, Table};
use crate::{CliError, Log};

type CliResult<T> = Result<T, CliError>;

/// Reads an enveloped document, or a bare payload when the file holds no
/// envelope. Returns the envelope kind, if any.
fn read_document(path: &Path) -> CliResult<(Option<String>, Value)> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if value.get("schema_version").is_some() {
        let env = store::decode_envelope(&text)?;
        Ok((Some(env.kind), env.payload))
    } else {
        Ok((None, value))
    }
}

fn load<T: Storable>(path: &Path) -> CliResult<T> {
    let (kind, payload) = read_document(path)?;
    if let Some(kind) = kind.filter(|k| k != T::KIND) {
        return Err(Error::Schema(format!("at kind: expected {:?}, found {kind:?}", T::KIND)).into());
    }
    Ok(store::from_payload(payload)?)
}

fn write_out(path: &Path, json: &str, log: &Log) -> CliResult<()> {
    store::write_atomic(path, json.as_bytes())?;
    log.step(format!("wrote {}", path.display()));
    Ok(())
}

fn level_table(f: &FIModuleTable) -> Table {
    let mut t = Table::new(&f.name, &["k", "decomposition", "dimension"]);
    for (k, level) in f.levels.iter().enumerate() {
        t.row(vec![k.to_string(), level.padded_string(), level.dimension().to_string()]);
    }
    t
}

fn table_outcome(f: &FIModuleTable) -> CliResult<Outcome> {
    let mut out = Outcome::new(store::encode(f)?);
    out.tables.push(level_table(f));
    out.notes.extend(f.metadata.notes.iter().cloned());
    Ok(out)
}

pub fn chartab(n: usize, out_path: Option<&Path>, cache_dir: Option<&Path>, log: &Log) -> CliResult<Outcome> {
    let table = match TableCache::resolve(cache_dir) {
        Some(cache) => {
            let (t, outcome) = cache.get_or_compute(n)?;
            log.step(format!("character table of S_{n}: {outcome:?} in {}", cache.dir().display()));
            t
        }
        None => character_table(n)?,
    };
    let json = store::encode::<CharacterTable>(&table)?;
    if let Some(p) = out_path {
        write_out(p, &json, log)?;
    }
    let mut headers = vec!["λ \\ μ".to_string()];
    headers.extend(table.classes.classes.iter().map(|(c, _)| c.to_string()));
    let mut grid = Table {
        title: format!("character table of S_{n}"),
        headers,
        rows: Vec::new(),
    };
    let mut sizes = vec!["class size".to_string()];
    sizes.extend(table.classes.classes.iter().map(|(_, s)| s.to_string()));
    grid.row(sizes);
    for (lambda, row) in table.partitions.iter().zip(&table.rows) {
        let mut cells = vec![lambda.to_string()];
        cells.extend(row.values.iter().map(|v| v.to_string()));
        grid.row(cells);
    }
    let mut out = Outcome::new(json);
    out.tables.push(grid);
    Ok(out)
}

pub fn decompose(path: &Path, log: &Log) -> CliResult<Outcome> {
    let chi: CharacterVector = load(path)?;
    log.step(format!("decomposing a class function on S_{}", chi.n));
    let v = decompose_virtual(&chi)?;
    let genuine = v.to_genuine();
    let json = match &genuine {
        Some(rep) => store::encode::<SymRep>(rep)?,
        None => {
            let payload = serde_json::to_value(&v).map_err(|e| Error::Schema(e.to_string()))?;
            store::encode_envelope(&store::envelope("virtual_rep", payload))
        }
    };
    let mut t = Table::new(format!("decomposition over S_{}", chi.n), &["λ", "multiplicity"]);
    for (lambda, m) in v.iter() {
        t.row(vec![lambda.to_string(), m.to_string()]);
    }
    let mut out = Outcome::new(json);
    out.tables.push(t);
    out.notes.push(match genuine {
        Some(rep) => format!("genuine character of dimension {}", rep.dimension()),
        None => "virtual character: some multiplicities are negative".into(),
    });
    Ok(out)
}

/// `c_d k^d + … + c_0` in the variable `k`.
pub fn polynomial_string(coefficients: &[Q]) -> String {
    let zero = q(0);
    let mut terms = Vec::new();
    for (d, c) in coefficients.iter().enumerate().rev() {
        if *c == zero {
            continue;
        }
        let negative = *c < zero;
        let abs = if negative { -c.clone() } else { c.clone() };
        let mono = match d {
            0 => String::new(),
            1 => "k".into(),
            _ => format!("k^{d}"),
        };
        let body = match (abs == q(1), d) {
            (true, 0) | (false, 0) => abs.to_string(),
            (true, _) => mono,
            (false, _) => format!("{abs} {mono}"),
        };
        terms.push((negative, body));
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => s.push_str(&format!("-{body}")),
            (0, false) => s.push_str(&body),
            (_, true) => s.push_str(&format!(" - {body}")),
            (_, false) => s.push_str(&format!(" + {body}")),
        }
    }
    s
}

fn info_table(info: &TableInfo) -> Table {
    let mut t = Table::new(format!("{} (k ≤ {})", info.name, info.max_n), &["property", "value"]);
    let certified = |c: bool| if c { "exact" } else { "observed" };
    t.row(vec!["FI#".into(), info.fi_sharp.to_string()]);
    t.row(vec!["weight".into(), info.weight.weight.to_string()]);
    t.row(vec![
        "generation degree".into(),
        format!("{} ({})", info.generation.degree, certified(info.generation.certified)),
    ]);
    if let Some(h0) = &info.h0 {
        let gens: Vec<String> = h0
            .iter()
            .map(|(mu, m)| if *m == 1 { format!("M{mu}") } else { format!("{m} M{mu}") })
            .collect();
        t.row(vec![
            "H0 generators".into(),
            if gens.is_empty() { "0".into() } else { gens.join(" + ") },
        ]);
    }
    if let Some(b) = &info.stability {
        let upper = b.upper.map_or("unbounded".to_string(), |u| u.to_string());
        t.row(vec!["stability degree".into(), format!("{} ≤ s ≤ {upper}", b.lower)]);
    }
    if let Some(p) = &info.polynomial {
        t.row(vec![
            "dimension polynomial".into(),
            format!("{} for k ≥ {}", polynomial_string(&p.monomial_coefficients()), p.onset),
        ]);
    }
    t.row(vec![
        "repstab onset".into(),
        format!("{} ({})", info.repstab_onset, certified(info.onset_certified)),
    ]);
    t
}

pub fn fimod_info(path: &Path, log: &Log) -> CliResult<Outcome> {
    let f: FIModuleTable = load(path)?;
    log.step(format!("table {:?} with levels 0..={}", f.name, f.max_n));
    let info = table_info(&f)?;
    let mut out = Outcome::new(store::encode(&info)?);
    out.tables.push(info_table(&info));
    out.tables.push(level_table(&f));
    out.notes.extend(info.notes.iter().cloned());
    Ok(out)
}

pub fn fimod_tensor(a: &Path, b: &Path, out_path: Option<&Path>, log: &Log) -> CliResult<Outcome> {
    let f: FIModuleTable = load(a)?;
    let g: FIModuleTable = load(b)?;
    log.step(format!("tensoring {:?} with {:?}", f.name, g.name));
    let t = tensor_fimod(&f, &g)?;
    let out = table_outcome(&t)?;
    if let Some(p) = out_path {
        write_out(p, &out.json, log)?;
    }
    let mut out = out;
    let m = &t.metadata;
    let bound = |v: Option<usize>| v.map_or("none".to_string(), |x| x.to_string());
    out.notes.push(format!(
        "bounds: weight ≤ {}, generation ≤ {}, stability ≤ {}",
        bound(m.weight_bound),
        bound(m.generation_bound),
        bound(m.stability_bound)
    ));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Side {
    Homotopy,
    Cohomology,
    Loop,
}

pub fn config(parity: Parity, weight: usize, k_max: usize, side: Side, log: &Log) -> CliResult<Outcome> {
    log.step(format!("{side:?} tables, parity {parity}, weight {weight}, k ≤ {k_max}"));
    let table = match side {
        Side::Homotopy => homotopy_fi_module(parity, weight, k_max)?,
        Side::Cohomology => cohomology_fi_module(parity, weight, k_max)?,
        Side::Loop => {
            let n = minimal_dimension(parity);
            let mut levels = Vec::with_capacity(k_max + 1);
            let mut degree = 0;
            for k in 0..=k_max {
                log.step(format!("loop-space piece k = {k}"));
                let piece = loop_space_piece(k, parity, weight)?;
                degree = piece.degree;
                levels.push(piece.action);
            }
            FIModuleTable::new(format!("H^{degree} ΩF_k(R^{n}) weight {weight}"), false, levels)?.with_metadata(
                TableMetadata {
                    lie_weight: Some(weight),
                    ambient_dim: Some(n),
                    degree: Some(degree),
                    notes: vec![format!("PBW assembly of Lie weight {weight} at n = {n}")],
                    ..TableMetadata::default()
                },
            )
        }
    };
    table_outcome(&table)
}

pub fn freelie(d: usize, m: usize, l: usize, n_max: usize, log: &Log) -> CliResult<Outcome> {
    log.step(format!("free Lie and Gerstenhaber pieces, d = {d}, m = {m}, degree {l}, n ≤ {n_max}"));
    let report = verify_algebra_weight_bound(d, m, l, n_max)?;
    let mut t = Table::new(
        format!("degree {l} pieces, d = {d}, m = {m}"),
        &["n", "Lie", "Lie dimension", "Gerstenhaber", "Gerstenhaber dimension"],
    );
    for n in 0..=n_max {
        let gens = GeneratorSet::new(n, d, m)?;
        let lie = match report.lie_weight {
            Some(w) => lie_character(&gens, w)?.action,
            None => SymRep::zero(n),
        };
        let g = gerstenhaber_character(&gens, l)?;
        t.row(vec![
            n.to_string(),
            lie.padded_string(),
            lie.dimension().to_string(),
            g.padded_string(),
            g.dimension().to_string(),
        ]);
    }
    let mut out = Outcome::new(store::encode(&report)?);
    out.tables.push(t);
    out.notes.push(format!(
        "weight bound (m+2)l/(m+d) = {}: Lie weight {} {}, Gerstenhaber weight {} {}",
        report.bound,
        report.lie.weight,
        verdict(report.lie.passed),
        report.gerstenhaber.weight,
        verdict(report.gerstenhaber.passed)
    ));
    out.failed = !report.passed;
    Ok(out)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn verify(suite: Suite, log: &Log) -> CliResult<Outcome> {
    let report = run_suite(suite, |r| {
        log.step(r.to_string());
        for line in &r.detail {
            log.step(format!("    {line}"));
        }
    })?;
    let mut t = Table::new(
        format!("verification suite {}", suite_name(suite)),
        &["criterion", "result", "title", "seconds", "budget"],
    );
    let mut out = Outcome::new(store::encode(&report)?);
    for c in &report.criteria {
        t.row(vec![
            c.id.to_string(),
            verdict(c.passed).into(),
            c.title.clone(),
            format!("{:.2}", c.elapsed_ms as f64 / 1000.0),
            (c.budget_ms / 1000).to_string(),
        ]);
        out.notes
            .extend(c.failures.iter().map(|f| format!("criterion {}: {f}", c.id)));
    }
    let passed = report.criteria.iter().filter(|c| c.passed).count();
    out.notes
        .push(format!("{passed} of {} criteria passed", report.criteria.len()));
    out.tables.push(t);
    out.failed = !report.passed;
    Ok(out)
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::PaperExample => "paper-example",
        Suite::Ranges => "ranges",
        Suite::Algebra => "algebra",
        Suite::All => "all",
    }
}

pub fn repstab_check(path: &Path, range: usize, log: &Log) -> CliResult<Outcome> {
    let (kind, payload) = read_document(path)?;
    let report: RepStabReport = match kind.as_deref() {
        Some(FIModuleTable::KIND) => check_uniform_repstab(&store::from_payload(payload)?, range)?,
        Some(ConsistentSequence::KIND) => check_sequence_repstab(&store::from_payload(payload)?, range)?,
        Some(other) => {
            return Err(Error::Schema(format!(
                "at kind: expected {:?} or {:?}, found {other:?}",
                FIModuleTable::KIND,
                ConsistentSequence::KIND
            ))
            .into())
        }
        None => match store::from_payload::<FIModuleTable>(payload.clone()) {
            Ok(f) => check_uniform_repstab(&f, range)?,
            Err(table_err) => match store::from_payload::<ConsistentSequence>(payload) {
                Ok(s) => check_sequence_repstab(&s, range)?,
                Err(_) => return Err(table_err.into()),
            },
        },
    };
    log.step(format!("onset {} against range {range}", report.onset));
    let mut t = Table::new(format!("uniform stability from n = {range}"), &["check", "value"]);
    t.row(vec!["result".into(), verdict(report.passed).into()]);
    t.row(vec![
        "onset".into(),
        format!(
            "{} ({})",
            report.onset,
            if report.onset_certified { "exact" } else { "observed" }
        ),
    ]);
    if let Some(i) = report.injective {
        t.row(vec!["injective".into(), i.to_string()]);
    }
    if let Some(s) = report.spanning {
        t.row(vec!["spanning".into(), s.to_string()]);
    }
    let stable: Vec<String> = report
        .stable_multiplicities
        .iter()
        .map(|(l, m)| {
            let name = if l.is_empty() { "V(0)".to_string() } else { format!("V{l}") };
            if *m == 1 {
                name
            } else {
                format!("{m} {name}")
            }
        })
        .collect();
    t.row(vec![
        "stable multiplicities".into(),
        if stable.is_empty() { "0".into() } else { stable.join(" + ") },
    ]);
    let mut out = Outcome::new(store::encode(&report)?);
    out.tables.push(t);
    out.notes.extend(report.failures.iter().cloned());
    out.failed = !report.passed;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use repstab::exact::q_frac;

    #[test]
    fn polynomial_rendering() {
        assert_eq!(polynomial_string(&[q(0), q_frac(-1, 2), q_frac(1, 2)]), "1/2 k^2 - 1/2 k");
        assert_eq!(polynomial_string(&[q(1), q(1)]), "k + 1");
        assert_eq!(polynomial_string(&[q(-3)]), "-3");
        assert_eq!(polynomial_string(&[]), "0");
    }
}
