use std::io::Write;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

/// A titled grid of cells.
pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Self {
        Self {
            title: title.into(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }
}

/// Everything a subcommand produces: one canonical JSON document, tables for
/// the human-facing formats, and whether an assertion failed.
pub struct Outcome {
    pub json: String,
    pub tables: Vec<Table>,
    pub notes: Vec<String>,
    pub failed: bool,
}

impl Outcome {
    pub fn new(json: String) -> Self {
        Self {
            json,
            tables: Vec::new(),
            notes: Vec::new(),
            failed: false,
        }
    }
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

pub fn markdown(out: &Outcome) -> String {
    let mut s = String::new();
    for t in &out.tables {
        s.push_str(&format!("### {}\n\n", t.title));
        s.push_str(&format!("| {} |\n", t.headers.iter().map(|h| md_cell(h)).collect::<Vec<_>>().join(" | ")));
        s.push_str(&format!("|{}\n", "---|".repeat(t.headers.len())));
        for r in &t.rows {
            s.push_str(&format!("| {} |\n", r.iter().map(|c| md_cell(c)).collect::<Vec<_>>().join(" | ")));
        }
        s.push('\n');
    }
    for n in &out.notes {
        s.push_str(&format!("- {n}\n"));
    }
    s
}

/// Tables one after another, separated by a blank line; notes are omitted.
pub fn csv(out: &Outcome) -> std::io::Result<String> {
    let mut buf = Vec::new();
    for (i, t) in out.tables.iter().enumerate() {
        if i > 0 {
            buf.push(b'\n');
        }
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(&t.headers)?;
        for r in &t.rows {
            w.write_record(r)?;
        }
        w.flush()?;
    }
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}

pub fn emit(out: &Outcome, format: Format) -> std::io::Result<()> {
    let text = match format {
        Format::Json => format!("{}\n", out.json),
        Format::Md => markdown(out),
        Format::Csv => csv(out)?,
    };
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(text.as_bytes())?;
    stdout.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Outcome {
        let mut t = Table::new("pairs", &["k", "decomposition", "dimension"]);
        t.row(vec!["2".into(), "V(0) + V(1)".into(), "1".into()]);
        let mut o = Outcome::new("{}".into());
        o.tables.push(t);
        o.notes.push("exact".into());
        o
    }

    #[test]
    fn markdown_layout() {
        let md = markdown(&sample());
        assert_eq!(
            md,
            "### pairs\n\n| k | decomposition | dimension |\n|---|---|---|\n| 2 | V(0) + V(1) | 1 |\n\n- exact\n"
        );
    }

    #[test]
    fn csv_quotes_only_when_needed() {
        let mut o = sample();
        o.tables[0].row(vec!["3".into(), "a, b".into(), "3".into()]);
        assert_eq!(
            csv(&o).unwrap(),
            "k,decomposition,dimension\n2,V(0) + V(1),1\n3,\"a, b\",3\n"
        );
    }
}
