//! Codimension 1 enumeration from scratch, catalog ingestion and row-by-row
//! verification of printed baskets and Betti numbers.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::Path;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::error::AnalysisError;
use crate::exactgeom;
use crate::k3inv::{self, K3Record};
use crate::stratum::{self, Basket, WeightSystem};
use crate::wps;

pub const DEFAULT_MAX_WEIGHT: u64 = 40;

/// Iano-Fletcher criterion for `X_d ⊂ P(w)`: for every nonempty index set
/// `I`, either some degree-`d` monomial uses only `I`-variables, or there are
/// `|I|` degree-`d` monomials `x_I^{m}·x_e` with pairwise distinct `e ∉ I`.
pub fn quasismooth_codim1(ws: &WeightSystem) -> bool {
    assert_eq!(ws.codim(), 1, "criterion is for hypersurfaces");
    let w = ws.weights.as_slice();
    let d = ws.degrees[0];
    let n = w.len();
    let mut counter = exactgeom::MonomialCounter::default();
    (1u32..1 << n).all(|mask| {
        let inside: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let w_in: Vec<u64> = inside.iter().map(|&i| w[i]).collect();
        if counter.count(&w_in, d) > 0 {
            return true;
        }
        let escapes = (0..n)
            .filter(|e| !inside.contains(e))
            .filter(|&e| w[e] <= d && counter.count(&w_in, d - w[e]) > 0)
            .count();
        escapes >= inside.len()
    })
}

fn enumerate_from(w0: u64, max_weight: u64) -> Vec<WeightSystem> {
    let mut out = Vec::new();
    for w1 in w0..=max_weight {
        for w2 in w1..=max_weight {
            if w0.gcd(&w1).gcd(&w2) != 1 {
                continue;
            }
            for w3 in w2..=max_weight {
                let weights = vec![w0, w1, w2, w3];
                let d: u64 = weights.iter().sum();
                if weights.contains(&d) {
                    continue;
                }
                let ws = WeightSystem::new(weights, vec![d]).expect("positive weights");
                if !wps::is_well_formed(&ws.weights) || !quasismooth_codim1(&ws) {
                    continue;
                }
                if stratum::analyze(&ws).is_ok() {
                    out.push(ws);
                }
            }
        }
    }
    out
}

/// Every well-formed quasismooth K3 hypersurface `X_{Σw} ⊂ P(w)` with
/// `wᵢ ≤ max_weight` that is not a linear cone, in lexicographic order.
pub fn enumerate_codim1(max_weight: u64) -> Vec<WeightSystem> {
    assert!(max_weight >= 1);
    let mut all: Vec<WeightSystem> = (1..=max_weight)
        .into_par_iter()
        .flat_map_iter(|w0| enumerate_from(w0, max_weight))
        .collect();
    all.sort();
    all.dedup();
    all
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogRow {
    pub id: u32,
    pub codim: usize,
    pub ws: WeightSystem,
    pub expected_basket: Basket,
    pub expected_b2: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

pub const CATALOG_HEADER: &str = "id,codim,weights,degrees,basket,b2";

pub const REID_CSV: &str = include_str!("../data/reid.csv");
pub const FLETCHER_CSV: &str = include_str!("../data/fletcher.csv");

fn parse_ints(field: &str) -> Option<Vec<u64>> {
    let v: Result<Vec<u64>, _> = field.split(' ').map(str::parse).collect();
    v.ok().filter(|v| !v.is_empty() && !v.contains(&0))
}

/// Parses a catalog. The header must start with the six catalog columns;
/// further columns (as written by report output) are ignored.
pub fn load_catalog(text: &str) -> Result<Vec<CatalogRow>, CatalogError> {
    let err = |line: usize, column: usize, message: &str| CatalogError::Parse {
        line,
        column,
        message: message.to_string(),
    };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim_end() == CATALOG_HEADER || h.starts_with(&format!("{CATALOG_HEADER},")) => {}
        _ => return Err(err(1, 1, &format!("expected header `{CATALOG_HEADER}`"))),
    }
    let mut rows = Vec::new();
    let mut seen = HashSet::new();
    for (idx, raw) in lines {
        let line = idx + 1;
        let raw = raw.trim_end_matches('\r');
        if raw.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split(',').collect();
        if fields.len() < 6 {
            return Err(err(line, raw.len() + 1, "expected 6 comma-separated fields"));
        }
        let col: Vec<usize> = fields
            .iter()
            .scan(1, |c, f| {
                let start = *c;
                *c += f.len() + 1;
                Some(start)
            })
            .collect();
        let id: u32 = fields[0].parse().map_err(|_| err(line, col[0], "bad id"))?;
        if !seen.insert(id) {
            return Err(err(line, col[0], "duplicate id"));
        }
        let codim: usize = match fields[1] {
            "1" => 1,
            "2" => 2,
            _ => return Err(err(line, col[1], "codim must be 1 or 2")),
        };
        let weights = parse_ints(fields[2]).ok_or_else(|| err(line, col[2], "bad weights"))?;
        if weights.len() != codim + 3 {
            return Err(err(line, col[2], "weight count does not match codim"));
        }
        let degrees = parse_ints(fields[3]).ok_or_else(|| err(line, col[3], "bad degrees"))?;
        if degrees.len() != codim {
            return Err(err(line, col[3], "degree count does not match codim"));
        }
        let expected_basket: Basket = fields[4].parse().map_err(|e: stratum::BasketParseError| {
            err(line, col[4] + e.column - 1, &format!("bad basket: {}", e.message))
        })?;
        let expected_b2: i64 = fields[5].parse().map_err(|_| err(line, col[5], "bad b2"))?;
        let ws = WeightSystem::new(weights, degrees).map_err(|e| err(line, col[2], &e.to_string()))?;
        rows.push(CatalogRow {
            id,
            codim,
            ws,
            expected_basket,
            expected_b2,
        });
    }
    Ok(rows)
}

pub fn load_catalog_file(path: &Path) -> Result<Vec<CatalogRow>, CatalogError> {
    let text = std::fs::read_to_string(path).map_err(|e| CatalogError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    load_catalog(&text)
}

pub fn reid_catalog() -> Vec<CatalogRow> {
    load_catalog(REID_CSV).expect("bundled Reid catalog parses")
}

pub fn fletcher_catalog() -> Vec<CatalogRow> {
    load_catalog(FLETCHER_CSV).expect("bundled Fletcher catalog parses")
}

/// A known misprint in the bundled tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ErratumKind {
    /// The printed weights or degrees are wrong; `corrected` is the system
    /// that reproduces the printed basket and b2.
    System { corrected: String },
    /// The printed basket is wrong; the printed b2 agrees with `corrected`.
    Basket { corrected: String },
    /// The printed b2 contradicts `22 − Σnᵢ` for the printed basket.
    B2 { corrected: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub codim: usize,
    pub id: u32,
    /// Printed system, `"w0 w1 ..;d0 .."`; the erratum only applies to a row
    /// carrying exactly this system.
    pub printed: &'static str,
    #[serde(flatten)]
    pub kind: ErratumKind,
    pub note: &'static str,
}

fn system_key(ws: &WeightSystem) -> String {
    let j = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    format!("{};{}", j(ws.weights.as_slice()), j(&ws.degrees))
}

fn system_from_key(key: &str) -> WeightSystem {
    let (w, d) = key.split_once(';').expect("erratum key");
    WeightSystem::new(parse_ints(w).unwrap(), parse_ints(d).unwrap()).unwrap()
}

/// Misprints found by recomputing every row of the bundled tables.
pub fn known_errata() -> Vec<Erratum> {
    let sys = |codim, id, printed, corrected: &str, note| Erratum {
        codim,
        id,
        printed,
        kind: ErratumKind::System {
            corrected: corrected.into(),
        },
        note,
    };
    let b2 = |codim, id, printed, corrected, note| Erratum {
        codim,
        id,
        printed,
        kind: ErratumKind::B2 { corrected },
        note,
    };
    vec![
        Erratum {
            codim: 1,
            id: 13,
            printed: "1 2 3 5;11",
            kind: ErratumKind::Basket {
                corrected: "A1+A2+A4".into(),
            },
            note: "weight-5 vertex is 1/5(2,3), type A4; printed b2 15 = 22 - 7 agrees",
        },
        sys(1, 66, "5 6 7 8;27", "5 6 7 9;27", "printed weights sum to 26, not 27"),
        sys(2, 18, "1 2 2 3 5;6 8", "1 2 3 3 5;6 8", "printed weights sum to 13, not 14"),
        sys(2, 42, "1 2 5 6 6;10 12", "1 4 5 6 6;10 12", "printed weights sum to 20, not 22"),
        b2(1, 15, "1 2 3 6;12", 16, "2xA1+2xA2 gives 22 - 6"),
        b2(1, 34, "1 2 6 9;18", 17, "3xA1+A2 gives 22 - 5"),
        b2(1, 53, "1 3 8 12;24", 15, "2xA2+A3 gives 22 - 7"),
        b2(1, 72, "2 3 10 15;30", 11, "3xA1+2xA2+A4 gives 22 - 11"),
        b2(1, 74, "3 4 10 13;30", 6, "A3+A1+A12 gives 22 - 16"),
        b2(2, 26, "1 3 4 4 5;8 9", 12, "2xA3+A4 gives 22 - 10"),
        b2(2, 84, "8 9 10 12 15;24 30", 4, "A1+A3+A8+A2+A4 gives 22 - 18"),
    ]
}

fn erratum_for<'a>(errata: &'a [Erratum], row: &CatalogRow) -> Option<&'a Erratum> {
    let key = system_key(&row.ws);
    errata
        .iter()
        .find(|e| e.codim == row.codim && e.id == row.id && e.printed == key)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RowVerdict {
    /// Basket and b2 agree with the print.
    Match,
    /// Basket agrees, printed b2 differs from `22 − Σnᵢ`.
    B2Diff { documented: bool },
    /// The row disagrees as printed, and a documented erratum reproduces it.
    ResolvedByErratum,
    BasketDiff,
    AnalysisFailed { error: AnalysisError },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowReport {
    pub id: u32,
    pub codim: usize,
    pub printed_system: WeightSystem,
    /// The system actually analyzed (differs only under a system erratum).
    pub analyzed_system: WeightSystem,
    pub printed_basket: Basket,
    pub printed_b2: i64,
    pub computed_basket: Option<Basket>,
    pub computed_b2: Option<i64>,
    pub verdict: RowVerdict,
    pub erratum: Option<Erratum>,
    pub record: Option<K3Record>,
}

impl RowReport {
    /// The basket is reproduced, directly or through a documented erratum.
    pub fn basket_reproduced(&self) -> bool {
        matches!(
            self.verdict,
            RowVerdict::Match | RowVerdict::B2Diff { .. } | RowVerdict::ResolvedByErratum
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerdictCounts {
    pub matches: usize,
    pub b2_diffs: usize,
    pub resolved_by_erratum: usize,
    pub basket_diffs: usize,
    pub analysis_errors: usize,
}

impl VerdictCounts {
    pub fn total(&self) -> usize {
        self.matches + self.b2_diffs + self.resolved_by_erratum + self.basket_diffs + self.analysis_errors
    }
}

/// A row whose print and recomputation disagree somewhere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub id: u32,
    pub codim: usize,
    pub field: &'static str,
    pub printed: String,
    pub computed: String,
    pub documented: bool,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub rows: Vec<RowReport>,
    pub counts: VerdictCounts,
    pub realized_b2_orbifold: BTreeSet<i64>,
    pub realized_b2_link: BTreeSet<i64>,
    pub discrepancies: Vec<Discrepancy>,
}

impl VerificationReport {
    /// No basket mismatches and no analysis failures.
    pub fn all_baskets_reproduced(&self) -> bool {
        self.counts.basket_diffs == 0 && self.counts.analysis_errors == 0
    }

    pub fn row(&self, id: u32) -> Option<&RowReport> {
        self.rows.iter().find(|r| r.id == id)
    }

    /// Orbifold b2 values of reproduced rows, each with the rows realizing it.
    pub fn b2_histogram(&self) -> BTreeMap<i64, Vec<u32>> {
        let mut m: BTreeMap<i64, Vec<u32>> = BTreeMap::new();
        for r in self.rows.iter().filter(|r| r.basket_reproduced()) {
            if let Some(b2) = r.computed_b2 {
                m.entry(b2).or_default().push(r.id);
            }
        }
        m
    }
}

/// Union of realized link b2 values across reports.
pub fn realized_link_set<'a>(reports: impl IntoIterator<Item = &'a VerificationReport>) -> BTreeSet<i64> {
    reports
        .into_iter()
        .flat_map(|r| r.realized_b2_link.iter().copied())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogSummary {
    pub name: String,
    pub rows: usize,
    pub realized_b2_orbifold: BTreeSet<i64>,
    /// Values of `4..=22` not realized by this catalog.
    pub missing_b2_orbifold: BTreeSet<i64>,
    pub realized_b2_link: BTreeSet<i64>,
}

/// Which links `#k(S²×S³)` the catalogs realize, with witnesses per `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub catalogs: Vec<CatalogSummary>,
    pub combined_b2_link: BTreeSet<i64>,
    /// Whether the combined set is exactly `{3, …, 21}`.
    pub complete: bool,
    /// `k ↦ ["name:id", …]`.
    pub witnesses: BTreeMap<i64, Vec<String>>,
}

pub fn classify(reports: &[(&str, &VerificationReport)]) -> Classification {
    let mut witnesses: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    let catalogs = reports
        .iter()
        .map(|(name, rep)| {
            for (b2, ids) in rep.b2_histogram() {
                let w = witnesses.entry(b2 - 1).or_default();
                w.extend(ids.iter().map(|id| format!("{name}:{id}")));
            }
            CatalogSummary {
                name: name.to_string(),
                rows: rep.rows.len(),
                realized_b2_orbifold: rep.realized_b2_orbifold.clone(),
                missing_b2_orbifold: (k3inv::MIN_ORBIFOLD_B2..=k3inv::K3_B2)
                    .filter(|b| !rep.realized_b2_orbifold.contains(b))
                    .collect(),
                realized_b2_link: rep.realized_b2_link.clone(),
            }
        })
        .collect();
    let combined_b2_link = realized_link_set(reports.iter().map(|(_, r)| *r));
    let complete = combined_b2_link == (3..=21).collect();
    Classification {
        catalogs,
        combined_b2_link,
        complete,
        witnesses,
    }
}

fn verify_row(row: &CatalogRow, errata: &[Erratum]) -> RowReport {
    let erratum = erratum_for(errata, row).cloned();
    let analyzed_system = match &erratum {
        Some(Erratum {
            kind: ErratumKind::System { corrected },
            ..
        }) => system_from_key(corrected),
        _ => row.ws.clone(),
    };
    let mut report = RowReport {
        id: row.id,
        codim: row.codim,
        printed_system: row.ws.clone(),
        analyzed_system: analyzed_system.clone(),
        printed_basket: row.expected_basket.clone(),
        printed_b2: row.expected_b2,
        computed_basket: None,
        computed_b2: None,
        verdict: RowVerdict::BasketDiff,
        erratum: erratum.clone(),
        record: None,
    };
    let basket = match stratum::analyze(&analyzed_system) {
        Ok(b) => b,
        Err(error) => {
            report.verdict = RowVerdict::AnalysisFailed { error };
            return report;
        }
    };
    let b2 = k3inv::b2_orbifold(&basket).ok();
    report.record = K3Record::from_basket(analyzed_system, basket.clone()).ok();
    report.computed_b2 = b2;
    let basket_matches = basket.same_points(&row.expected_basket);
    let b2_matches = b2 == Some(row.expected_b2);
    report.verdict = match (&erratum, basket_matches, b2_matches) {
        (None, true, true) => RowVerdict::Match,
        (None, true, false) => RowVerdict::B2Diff { documented: false },
        (Some(e), true, false) => match e.kind {
            ErratumKind::B2 { corrected } if Some(corrected) == b2 => RowVerdict::B2Diff { documented: true },
            _ => RowVerdict::B2Diff { documented: false },
        },
        (Some(e), true, true) => match e.kind {
            ErratumKind::System { .. } => RowVerdict::ResolvedByErratum,
            _ => RowVerdict::Match,
        },
        (Some(e), false, true) => match &e.kind {
            ErratumKind::Basket { corrected }
                if corrected.parse::<Basket>().is_ok_and(|c| c.same_points(&basket)) =>
            {
                RowVerdict::ResolvedByErratum
            }
            _ => RowVerdict::BasketDiff,
        },
        _ => RowVerdict::BasketDiff,
    };
    report.computed_basket = Some(basket);
    report
}

fn discrepancies_of(r: &RowReport) -> Vec<Discrepancy> {
    let note = r.erratum.as_ref().map(|e| e.note.to_string()).unwrap_or_default();
    let documented = matches!(
        r.verdict,
        RowVerdict::ResolvedByErratum | RowVerdict::B2Diff { documented: true }
    );
    let mut out = Vec::new();
    let mut push = |field, printed: String, computed: String| {
        out.push(Discrepancy {
            id: r.id,
            codim: r.codim,
            field,
            printed,
            computed,
            documented,
            note: note.clone(),
        })
    };
    if r.printed_system != r.analyzed_system {
        push("system", r.printed_system.to_string(), r.analyzed_system.to_string());
    }
    match (&r.verdict, &r.computed_basket) {
        (RowVerdict::AnalysisFailed { error }, _) => {
            push("basket", r.printed_basket.canonical_string(), format!("error: {error}"))
        }
        (_, Some(b)) => {
            if !b.same_points(&r.printed_basket) {
                push("basket", r.printed_basket.canonical_string(), b.canonical_string());
            }
            if r.computed_b2 != Some(r.printed_b2) {
                let c = r.computed_b2.map_or("-".to_string(), |v| v.to_string());
                push("b2", r.printed_b2.to_string(), c);
            }
        }
        _ => {}
    }
    out
}

/// Recomputes every row; mismatches are recorded, never fatal.
pub fn verify_catalog(rows: &[CatalogRow]) -> VerificationReport {
    verify_catalog_with(rows, &known_errata())
}

pub fn verify_catalog_with(rows: &[CatalogRow], errata: &[Erratum]) -> VerificationReport {
    let mut reports: Vec<RowReport> = rows.par_iter().map(|r| verify_row(r, errata)).collect();
    reports.sort_by_key(|r| (r.codim, r.id));
    let mut counts = VerdictCounts::default();
    let mut realized_b2_orbifold = BTreeSet::new();
    let mut realized_b2_link = BTreeSet::new();
    let mut discrepancies = Vec::new();
    for r in &reports {
        match r.verdict {
            RowVerdict::Match => counts.matches += 1,
            RowVerdict::B2Diff { .. } => counts.b2_diffs += 1,
            RowVerdict::ResolvedByErratum => counts.resolved_by_erratum += 1,
            RowVerdict::BasketDiff => counts.basket_diffs += 1,
            RowVerdict::AnalysisFailed { .. } => counts.analysis_errors += 1,
        }
        if r.basket_reproduced() {
            if let Some(b2) = r.computed_b2 {
                realized_b2_orbifold.insert(b2);
                if let Ok(l) = k3inv::link_invariants(b2) {
                    realized_b2_link.insert(l.b2_link);
                }
            }
        }
        discrepancies.extend(discrepancies_of(r));
    }
    VerificationReport {
        rows: reports,
        counts,
        realized_b2_orbifold,
        realized_b2_link,
        discrepancies,
    }
}
