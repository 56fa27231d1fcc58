//! Plain-text rendering of reports. The JSON output is the stable format.

use std::fmt::Write;

use martkit::martingale::{ClassificationReport, Counterexample, KindReport, Status};
use martkit::CondExpResult;

fn outcome_name(labels: Option<&[String]>, w: usize) -> String {
    labels.and_then(|l| l.get(w)).cloned().unwrap_or_else(|| w.to_string())
}

fn event_name(labels: Option<&[String]>, event: &[usize]) -> String {
    let names: Vec<String> = event.iter().map(|&w| outcome_name(labels, w)).collect();
    format!("{{{}}}", names.join(","))
}

fn counterexample(labels: Option<&[String]>, c: &Counterexample) -> String {
    format!(
        "{:?} i={} j={} on {}: {} vs {}",
        c.characterization,
        c.i,
        c.j,
        event_name(labels, &c.event),
        c.lhs,
        c.rhs
    )
}

fn kind(out: &mut String, name: &str, k: &KindReport, labels: Option<&[String]>) {
    let status = match k.status {
        Status::Holds => "yes",
        Status::Fails => "no",
        Status::UnsupportedOrder => "unsupported_order",
        Status::Skipped => "skipped",
    };
    let _ = writeln!(out, "{name:<16} {status}");
    if let Some(c) = &k.counterexample {
        let _ = writeln!(out, "  first failure: {}", counterexample(labels, c));
    }
}

pub fn classification(r: &ClassificationReport, labels: Option<&[String]>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "adapted          {}", if r.adapted { "yes" } else { "no" });
    if let Some(t) = r.first_unadapted_time {
        let _ = writeln!(out, "  not measurable at time {t}");
    }
    kind(&mut out, "martingale", &r.martingale, labels);
    kind(&mut out, "submartingale", &r.submartingale, labels);
    kind(&mut out, "supermartingale", &r.supermartingale, labels);
    let _ = writeln!(out, "kind             {}", serde_json::to_string(&r.kind).unwrap_or_default().trim_matches('"'));
    out
}

pub fn cond_exp(r: &CondExpResult, labels: Option<&[String]>) -> String {
    let null: Vec<usize> = r.null_atoms.iter().flatten().copied().collect();
    let mut out = String::new();
    for (w, v) in r.table.values().iter().enumerate() {
        let note = if null.contains(&w) { "  (null atom)" } else { "" };
        let _ = writeln!(out, "{:<8} {v}{note}", outcome_name(labels, w));
    }
    out
}
