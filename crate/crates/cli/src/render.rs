//! Output rendering: json (documented schemas), csv, and pretty text.

use anyhow::Result;
use fracseq::json::seq_to_json;
use fracseq::{ClassVerdict, ConditionReport, Scalar, Seq};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

pub fn print_seq<S: Scalar>(seq: &Seq<S>, format: Format) -> Result<()> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&seq_to_json(seq))?),
        Format::Csv => {
            println!("index,value");
            for (k, v) in seq.entries().iter().enumerate() {
                println!("{k},{v}");
            }
        }
        Format::Pretty => {
            let width = seq.len().saturating_sub(1).to_string().len();
            for (k, v) in seq.entries().iter().enumerate() {
                println!("{k:>width$}  {v}");
            }
        }
    }
    Ok(())
}

fn witness_cells(report: &ConditionReport) -> (String, String, String) {
    match &report.evidence.witness {
        Some(w) => (
            w.row.map_or(String::new(), |r| r.to_string()),
            w.col.map_or(String::new(), |c| c.to_string()),
            format!("{}", w.value),
        ),
        None => (String::new(), String::new(), String::new()),
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or(String::new(), |x| format!("{x}"))
}

pub fn print_report(report: &ConditionReport, format: Format) -> Result<()> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report)?),
        Format::Csv => {
            println!("condition,verdict,sup,limit,oscillation,witness_row,witness_col,witness_value,note");
            print_report_csv_row(report);
        }
        Format::Pretty => print_report_pretty(report),
    }
    Ok(())
}

fn print_report_csv_row(report: &ConditionReport) {
    let (wr, wc, wv) = witness_cells(report);
    let note = report.evidence.note.clone().unwrap_or_default();
    println!(
        "{},{},{},{},{},{wr},{wc},{wv},{}",
        report.condition,
        report.verdict.label(),
        opt(report.evidence.sup),
        opt(report.evidence.limit),
        opt(report.evidence.oscillation),
        note.replace(',', ";"),
    );
}

fn print_report_pretty(report: &ConditionReport) {
    println!(
        "condition {}: {}  [window {}, tolerance {:e}, truncation {}x{}]",
        report.condition,
        report.verdict.label(),
        report.window,
        report.tolerance,
        report.truncation.0,
        report.truncation.1
    );
    if let Some(sup) = report.evidence.sup {
        println!("  sup (lower bound): {sup}");
    }
    if let Some(limit) = report.evidence.limit {
        println!("  limit estimate: {limit}");
    }
    if let Some(osc) = report.evidence.oscillation {
        println!("  final-window oscillation: {osc:e}");
    }
    if let Some(w) = &report.evidence.witness {
        let row = w.row.map_or(String::from("-"), |r| r.to_string());
        let col = w.col.map_or(String::from("-"), |c| c.to_string());
        println!("  witness: row {row}, col {col}, value {}", w.value);
    }
    if let Some(note) = &report.evidence.note {
        println!("  note: {note}");
    }
}

pub fn print_class_verdict(verdict: &ClassVerdict, format: Format) -> Result<()> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(verdict)?),
        Format::Csv => {
            println!("condition,verdict,sup,limit,oscillation,witness_row,witness_col,witness_value,note");
            for c in &verdict.conditions {
                print_report_csv_row(c);
            }
        }
        Format::Pretty => {
            let rule = verdict
                .rule
                .as_ref()
                .map_or(String::new(), |r| format!(" [rule {r}]"));
            println!(
                "class ({} : {}){rule}: {}",
                verdict.source,
                verdict.target,
                verdict.verdict.label()
            );
            for c in &verdict.conditions {
                print_report_pretty(c);
            }
        }
    }
    Ok(())
}
