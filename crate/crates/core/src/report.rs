//! Rendering of records and verification results as csv, json or markdown.
//! Every renderer is a pure function of its (already sorted) input, so output
//! bytes do not depend on scheduling.

use std::collections::BTreeSet;
use std::fmt::Write;

use serde::Serialize;
use serde_json::json;

use crate::census::{Classification, RowReport, RowVerdict, VerificationReport};
use crate::error::AnalysisError;
use crate::k3inv::K3Record;
use crate::stratum::{Basket, WeightSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    #[default]
    Md,
}

fn spaced(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn set_string(s: &BTreeSet<i64>) -> String {
    let v: Vec<String> = s.iter().map(i64::to_string).collect();
    format!("{{{}}}", v.join(","))
}

fn md_escape(s: &str) -> String {
    s.replace('|', "\\|")
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report values serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ExpandedEntry {
    n: u64,
    multiplicity: u64,
    source: Option<Vec<usize>>,
}

fn expanded(b: &Basket) -> Vec<ExpandedEntry> {
    b.entries
        .iter()
        .map(|e| ExpandedEntry {
            n: e.n,
            multiplicity: e.multiplicity,
            source: e.source.clone(),
        })
        .collect()
}

fn record_json(r: &K3Record) -> serde_json::Value {
    json!({
        "system": r.ws.to_string(),
        "weights": r.ws.weights.as_slice(),
        "degrees": r.ws.degrees,
        "basket": r.basket.canonical_string(),
        "basket_entries": expanded(&r.basket),
        "b2_orbifold": r.b2_orbifold,
        "b2_link": r.b2_link,
        "k": r.k,
        "link": r.link,
        "moduli_dim": r.moduli_dim,
        "moduli_dim_polynomial": r.moduli_dim_polynomial,
        "dolgachev_dim": r.dolgachev_dim,
        "period_quadric": r.period_quadric,
    })
}

const RECORD_CSV_HEADER: &str = "id,codim,weights,degrees,basket,b2,b2_link,link,moduli_dim,moduli_dim_polynomial,dolgachev_dim,period_ambient_dim";

/// Records numbered from 1 in the given order. The csv form is a valid
/// catalog (extra columns are ignored by the loader).
pub fn render_records(records: &[K3Record], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            let rows: Vec<_> = records.iter().map(record_json).collect();
            out = to_json(&json!({ "count": records.len(), "records": rows }));
        }
        Format::Csv => {
            out.push_str(RECORD_CSV_HEADER);
            out.push('\n');
            for (i, r) in records.iter().enumerate() {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{},{}",
                    i + 1,
                    r.ws.codim(),
                    spaced(r.ws.weights.as_slice()),
                    spaced(&r.ws.degrees),
                    r.basket.canonical_string(),
                    r.b2_orbifold,
                    r.b2_link,
                    r.link,
                    r.moduli_dim,
                    opt(r.moduli_dim_polynomial),
                    r.dolgachev_dim,
                    r.period_quadric.ambient_dim,
                )
                .unwrap();
            }
        }
        Format::Md => {
            out.push_str("| # | system | basket | b2(X) | b2(L) | link | moduli | polynomial moduli | polarized moduli |\n");
            out.push_str("|---|---|---|---|---|---|---|---|---|\n");
            for (i, r) in records.iter().enumerate() {
                writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                    i + 1,
                    r.ws,
                    r.basket.canonical_string(),
                    r.b2_orbifold,
                    r.b2_link,
                    r.link,
                    r.moduli_dim,
                    opt(r.moduli_dim_polynomial),
                    r.dolgachev_dim,
                )
                .unwrap();
            }
            if let [r] = records {
                writeln!(
                    out,
                    "\nmoduli space: open subset of CP^{} of complex dimension {}, {}",
                    r.period_quadric.ambient_dim,
                    r.period_quadric.complex_dim,
                    r.period_quadric.condition
                )
                .unwrap();
            }
            writeln!(out, "\ncount: {}", records.len()).unwrap();
        }
    }
    out
}

fn error_kind(e: &AnalysisError) -> String {
    serde_json::to_value(e).ok().and_then(|v| v["kind"].as_str().map(str::to_string)).unwrap_or_default()
}

pub fn render_analysis_error(ws: &WeightSystem, e: &AnalysisError, format: Format) -> String {
    match format {
        Format::Json => to_json(&json!({ "system": ws.to_string(), "error": e, "message": e.to_string() })),
        Format::Csv => format!("system,error,message\n{},{},\"{}\"\n", ws, error_kind(e), e.to_string().replace('"', "\"\"")),
        Format::Md => format!("{ws}: analysis failed ({}): {e}\n", error_kind(e)),
    }
}

fn verdict_name(v: &RowVerdict) -> &'static str {
    match v {
        RowVerdict::Match => "match",
        RowVerdict::B2Diff { documented: true } => "b2_diff_documented",
        RowVerdict::B2Diff { documented: false } => "b2_diff",
        RowVerdict::ResolvedByErratum => "resolved_by_erratum",
        RowVerdict::BasketDiff => "basket_diff",
        RowVerdict::AnalysisFailed { .. } => "analysis_error",
    }
}

fn row_json(r: &RowReport) -> serde_json::Value {
    json!({
        "id": r.id,
        "codim": r.codim,
        "system": r.printed_system.to_string(),
        "analyzed_system": r.analyzed_system.to_string(),
        "printed_basket": r.printed_basket.canonical_string(),
        "computed_basket": r.computed_basket.as_ref().map(Basket::canonical_string),
        "computed_basket_entries": r.computed_basket.as_ref().map(expanded),
        "printed_b2": r.printed_b2,
        "computed_b2": r.computed_b2,
        "verdict": r.verdict,
        "erratum": r.erratum,
        "record": r.record.as_ref().map(record_json),
    })
}

pub fn render_verification(name: &str, rep: &VerificationReport, format: Format) -> String {
    let c = &rep.counts;
    match format {
        Format::Json => to_json(&json!({
            "catalog": name,
            "rows": rep.rows.iter().map(row_json).collect::<Vec<_>>(),
            "counts": c,
            "all_baskets_reproduced": rep.all_baskets_reproduced(),
            "realized_b2_orbifold": rep.realized_b2_orbifold,
            "realized_b2_link": rep.realized_b2_link,
            "discrepancies": rep.discrepancies,
        })),
        Format::Csv => {
            let mut out = String::from("id,codim,weights,degrees,basket,b2,status,computed_basket,computed_b2,analyzed_weights\n");
            for r in &rep.rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.id,
                    r.codim,
                    spaced(r.printed_system.weights.as_slice()),
                    spaced(&r.printed_system.degrees),
                    r.printed_basket.canonical_string(),
                    r.printed_b2,
                    verdict_name(&r.verdict),
                    opt(r.computed_basket.as_ref().map(Basket::canonical_string)),
                    opt(r.computed_b2),
                    spaced(r.analyzed_system.weights.as_slice()),
                )
                .unwrap();
            }
            out
        }
        Format::Md => {
            let mut out = format!("# Verification of {name}\n\n");
            out.push_str("| id | system | printed basket | computed basket | printed b2 | computed b2 | status |\n");
            out.push_str("|---|---|---|---|---|---|---|\n");
            for r in &rep.rows {
                writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} | {} |",
                    r.id,
                    r.printed_system,
                    r.printed_basket.canonical_string(),
                    opt(r.computed_basket.as_ref().map(Basket::canonical_string)),
                    r.printed_b2,
                    opt(r.computed_b2),
                    verdict_name(&r.verdict),
                )
                .unwrap();
            }
            writeln!(
                out,
                "\n{} rows: {} match, {} printed-b2 diffs, {} resolved by erratum, {} basket diffs, {} analysis errors",
                c.total(),
                c.matches,
                c.b2_diffs,
                c.resolved_by_erratum,
                c.basket_diffs,
                c.analysis_errors
            )
            .unwrap();
            writeln!(out, "realized b2(X): {}", set_string(&rep.realized_b2_orbifold)).unwrap();
            writeln!(out, "realized b2(L): {}", set_string(&rep.realized_b2_link)).unwrap();
            if !rep.discrepancies.is_empty() {
                out.push_str("\n## Discrepancies\n\n| id | field | printed | computed | documented | note |\n|---|---|---|---|---|---|\n");
                for d in &rep.discrepancies {
                    writeln!(
                        out,
                        "| {} | {} | {} | {} | {} | {} |",
                        d.id,
                        d.field,
                        md_escape(&d.printed),
                        md_escape(&d.computed),
                        if d.documented { "yes" } else { "no" },
                        md_escape(&d.note)
                    )
                    .unwrap();
                }
            }
            out
        }
    }
}

pub fn render_classification(c: &Classification, format: Format) -> String {
    match format {
        Format::Json => to_json(c),
        Format::Csv => {
            let mut out = String::from("k,b2_orbifold,witnesses\n");
            for (k, w) in &c.witnesses {
                writeln!(out, "{},{},{}", k, k + 1, w.join(" ")).unwrap();
            }
            out
        }
        Format::Md => {
            let mut out = String::from("# Realized links #k(S2xS3)\n\n");
            for s in &c.catalogs {
                writeln!(
                    out,
                    "- {} ({} rows): b2(X) {}, missing {}; k {}",
                    s.name,
                    s.rows,
                    set_string(&s.realized_b2_orbifold),
                    set_string(&s.missing_b2_orbifold),
                    set_string(&s.realized_b2_link)
                )
                .unwrap();
            }
            writeln!(out, "- combined k: {}", set_string(&c.combined_b2_link)).unwrap();
            writeln!(
                out,
                "- every k in 3..=21 realized: {}\n",
                if c.complete { "yes" } else { "no" }
            )
            .unwrap();
            out.push_str("| k | b2(X) | witnesses |\n|---|---|---|\n");
            for (k, w) in &c.witnesses {
                writeln!(out, "| {} | {} | {} |", k, k + 1, w.join(", ")).unwrap();
            }
            out
        }
    }
}

#[derive(Serialize)]
struct ModuliView {
    system: String,
    b2_link: Option<i64>,
    moduli_dim: Option<i64>,
    moduli_dim_polynomial: Option<i64>,
    dolgachev_dim: Option<i64>,
    agree: Option<bool>,
    h0_degree: Option<u64>,
    h0_weights_sum: Option<u64>,
}

/// The three moduli counts of a record, with the ingredients of the
/// polynomial count.
pub fn render_moduli(r: &K3Record, format: Format) -> String {
    let w = &r.ws.weights;
    let (h0_d, h0_w) = if r.ws.codim() == 1 {
        let hw: u64 = w.as_slice().iter().map(|&wi| crate::wps::h0(w, wi)).sum();
        (Some(crate::wps::h0(w, r.ws.degrees[0])), Some(hw))
    } else {
        (None, None)
    };
    let agree = r.moduli_agree();
    let v = ModuliView {
        system: r.ws.to_string(),
        b2_link: Some(r.b2_link),
        moduli_dim: Some(r.moduli_dim),
        moduli_dim_polynomial: r.moduli_dim_polynomial,
        dolgachev_dim: Some(r.dolgachev_dim),
        agree,
        h0_degree: h0_d,
        h0_weights_sum: h0_w,
    };
    let agree_word = match agree {
        Some(true) => "agree",
        Some(false) => "disagree",
        None => "polynomial count undefined",
    };
    match format {
        Format::Json => to_json(&v),
        Format::Csv => format!(
            "system,moduli_dim,moduli_dim_polynomial,dolgachev_dim,agree\n{},{},{},{},{}\n",
            v.system,
            r.moduli_dim,
            opt(r.moduli_dim_polynomial),
            r.dolgachev_dim,
            opt(agree)
        ),
        Format::Md => format!(
            "{} {} ({agree_word})\n{}: 2(b2(L)-2) = {}, 2(h0(d) - sum h0(w_i)) = {} (h0(d) = {}, sum = {}), 2(20 - rank M) = {}\n",
            r.moduli_dim,
            opt(r.moduli_dim_polynomial),
            v.system,
            r.moduli_dim,
            opt(r.moduli_dim_polynomial),
            opt(h0_d),
            opt(h0_w),
            2 * r.dolgachev_dim
        ),
    }
}

pub fn render_h0(weights: &[u64], l: u64, value: u64, format: Format) -> String {
    match format {
        Format::Json => to_json(&json!({ "weights": weights, "l": l, "h0": value })),
        Format::Csv => format!("weights,l,h0\n{},{},{}\n", spaced(weights), l, value),
        Format::Md => format!("{value}\n"),
    }
}
