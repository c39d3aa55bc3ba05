use clap::ValueEnum;
use rlr_core::{Report, Verdict};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Rows for text and CSV output, plus the JSON payload.
#[derive(Debug, Clone)]
pub struct Table {
    pub name: String,
    pub seed: u64,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub data: Value,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub enum Output {
    Report(Report),
    Table(Table),
}

fn count(r: &Report, v: Verdict) -> usize {
    r.claims.iter().filter(|c| c.verdict == v).count()
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::NotApplicable => "not-applicable",
    }
}

fn csv_string(header: &[String], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn aligned(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        parts.join("  ").trim_end().to_string()
    };
    let mut out = line(header);
    out.push('\n');
    for r in rows {
        out.push_str(&line(r));
        out.push('\n');
    }
    out
}

impl Output {
    pub fn passed(&self) -> bool {
        match self {
            Output::Report(r) => r.passed(),
            Output::Table(t) => t.ok,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match self {
            Output::Report(r) => render_report(r, format),
            Output::Table(t) => render_table(t, format),
        }
    }
}

fn render_table(t: &Table, format: Format) -> String {
    match format {
        Format::Json => {
            let v = json!({ "command": t.name, "seed": t.seed, "ok": t.ok, "data": t.data });
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        Format::Csv => format!("# {} seed={}\n{}", t.name, t.seed, csv_string(&t.header, t.rows.iter().cloned())),
        Format::Text => format!("{}  seed={}\n{}", t.name, t.seed, aligned(&t.header, &t.rows)),
    }
}

fn render_report(r: &Report, format: Format) -> String {
    let seed = r.seed.map(|s| s.to_string()).unwrap_or_default();
    let (pass, fail, na) = (count(r, Verdict::Pass), count(r, Verdict::Fail), count(r, Verdict::NotApplicable));
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(r).expect("serializable");
            v["passed"] = json!(r.passed());
            v["summary"] = json!({ "pass": pass, "fail": fail, "not-applicable": na });
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        Format::Csv => {
            let header: Vec<String> =
                ["suite", "seed", "id", "case", "verdict", "anchor", "witness"].iter().map(|s| s.to_string()).collect();
            let rows = r.claims.iter().map(|c| {
                vec![
                    r.suite.clone(),
                    seed.clone(),
                    c.id.clone(),
                    c.case.clone().unwrap_or_default(),
                    verdict_str(c.verdict).to_string(),
                    c.anchor.clone(),
                    c.witness.as_ref().map(|w| w.to_string()).unwrap_or_default(),
                ]
            });
            csv_string(&header, rows)
        }
        Format::Text => {
            let mut out = format!("{}  seed={}\n", r.suite, seed);
            for c in &r.claims {
                let tag = match c.verdict {
                    Verdict::Pass => "PASS",
                    Verdict::Fail => "FAIL",
                    Verdict::NotApplicable => "N/A ",
                };
                let case = c.case.as_ref().map(|s| format!(" [{s}]")).unwrap_or_default();
                out.push_str(&format!("{tag}  {}{case}  {}\n", c.id, c.anchor));
                if c.verdict != Verdict::Pass {
                    if let Some(w) = &c.witness {
                        out.push_str(&format!("      witness: {w}\n"));
                    }
                }
            }
            out.push_str(&format!("{pass} pass, {fail} fail, {na} not-applicable\n"));
            out
        }
    }
}
