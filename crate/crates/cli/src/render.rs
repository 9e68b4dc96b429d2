//! Text renderings of reports and tables.

use std::fmt::Write;

use seqcm::classify::ClassificationReport;
use seqcm::reference::ReferenceRow;

use crate::survey::SurveySummary;

fn verdict(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown",
    }
}

pub fn report_text(r: &ClassificationReport) -> String {
    let mut out = String::new();
    if let Some(label) = &r.input.label {
        writeln!(out, "input: {label}").unwrap();
    }
    writeln!(out, "ideal: ({})", r.input.ideal.join(", ")).unwrap();
    writeln!(out, "dimension: {}", r.dim).unwrap();
    for step in &r.filtration {
        let dim = step.dim.map_or("-".to_string(), |d| d.to_string());
        writeln!(out, "  step dim {dim}: ({})", step.ideal.join(", ")).unwrap();
    }
    if !r.good_sop.is_empty() {
        writeln!(out, "good sop: {} (degrees {:?})", r.good_sop.join(", "), r.sop_degrees).unwrap();
        writeln!(out, "multiplicities: {:?}", r.multiplicities).unwrap();
    }
    if let (Some(l), Some(e)) = (r.length_sq, r.expected_sq) {
        writeln!(out, "length at squares: {l}, expected {e}").unwrap();
    }
    writeln!(out, "cohen-macaulay: {}", verdict(r.verdicts.cm)).unwrap();
    writeln!(out, "sequentially cohen-macaulay: {}", verdict(r.verdicts.seq_cm)).unwrap();
    writeln!(out, "approximately cohen-macaulay: {}", verdict(r.verdicts.approx_cm)).unwrap();
    if let Some(ledger) = &r.sr_fast_path {
        writeln!(out, "closed form: {} vs length {}", ledger.closed_form, ledger.length_sq).unwrap();
    }
    if let Some(a) = &r.approx_witness {
        writeln!(out, "approximating element: {a}").unwrap();
    }
    if let Some(c) = &r.dd_certificate {
        writeln!(
            out,
            "dd up to {}: colon checks {}, fit {:?} exact {}",
            c.bound, c.colon_checks_passed, c.fit_coefficients, c.fit_residual_zero
        )
        .unwrap();
    }
    for e in &r.i_table {
        writeln!(out, "  I{:?} = {}", e.n, e.value).unwrap();
    }
    for note in &r.notes {
        writeln!(out, "note: {note}").unwrap();
    }
    out
}

pub fn reference_table(rows: &[ReferenceRow], prime: u32) -> String {
    let mut out = String::new();
    for r in rows {
        writeln!(
            out,
            "{} {:9} {:22} expected {} | got {}",
            if r.pass { "PASS" } else { "FAIL" },
            r.id,
            r.check,
            r.expected,
            r.actual
        )
        .unwrap();
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    writeln!(out, "{} of {} rows pass (characteristic {prime})", rows.len() - failed, rows.len()).unwrap();
    if prime < 7 && failed > 0 {
        writeln!(out, "note: small characteristic is untested; failures may be characteristic effects").unwrap();
    }
    out
}

pub fn survey_text(s: &SurveySummary) -> String {
    let mut out = String::new();
    let kind = if s.up_to_isomorphism { "isomorphism classes of complexes" } else { "labeled complexes" };
    writeln!(out, "{} {kind} on {} vertices", s.total, s.vertices).unwrap();
    writeln!(out, "cohen-macaulay: {}", s.cohen_macaulay).unwrap();
    writeln!(out, "sequentially cohen-macaulay: {}", s.sequentially_cm).unwrap();
    writeln!(out, "not sequentially cohen-macaulay: {}", s.not_sequentially_cm).unwrap();
    writeln!(out, "approximately cohen-macaulay: {}", s.approximately_cm).unwrap();
    writeln!(out, "unknown: {}", s.unknown).unwrap();
    for c in &s.non_sequentially_cm_complexes {
        writeln!(out, "  not sequentially cohen-macaulay: facets {:?}", c.facets).unwrap();
    }
    writeln!(out, "cache: {} ({} hits)", s.cache_dir.display(), s.cache_hits).unwrap();
    for note in &s.notes {
        writeln!(out, "note: {note}").unwrap();
    }
    out
}
