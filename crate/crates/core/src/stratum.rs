//! Du Val baskets of general members of weighted K3 complete intersections.
//!
//! Every singular point of a quasismooth, well-formed member lies on a
//! coordinate stratum of `P(w)` with stabilizer `μ_h`, and is the quotient
//! singularity `1/h(α, β)` where `(α, β)` are the weights of the transverse
//! coordinates left after eliminating one coordinate per equation. Points are
//! counted on the open torus of each stratum:
//!
//! * vertex: the point itself, unless some degree is a multiple of `h`;
//! * edge: roots of the restricted equation(s) on the 1-dimensional torus,
//!   which is the lattice length of the restricted Newton segment;
//! * face (codimension 2 only): common zeros of both restricted equations on
//!   the 2-dimensional torus, which is the mixed area of the two Newton
//!   polygons for a general member.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::AnalysisError;
use crate::exactgeom::{self, hull_and_area, mixed_volume2, segment_length, ExponentVector};
use crate::wps::{self, Stratum, WeightVector};

/// Upper bound on `Σ nᵢ`: exceptional curves plus a polarization fit in a
/// Néron–Severi lattice of rank at most 20.
pub const MAX_BASKET_TOTAL: u64 = 19;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WeightSystem {
    pub weights: WeightVector,
    pub degrees: Vec<u64>,
}

impl WeightSystem {
    pub fn new(weights: Vec<u64>, mut degrees: Vec<u64>) -> Result<Self, AnalysisError> {
        if weights.is_empty() || weights.contains(&0) || degrees.is_empty() || degrees.contains(&0)
        {
            return Err(AnalysisError::UnsupportedInput(
                "weights and degrees must be nonempty lists of positive integers".into(),
            ));
        }
        degrees.sort_unstable();
        Ok(Self {
            weights: WeightVector::new(weights),
            degrees,
        })
    }

    pub fn codim(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_surface(&self) -> bool {
        self.weights.len() == self.degrees.len() + 3
    }

    pub fn is_k3(&self) -> bool {
        self.degrees.iter().sum::<u64>() == self.weights.sum()
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.degrees.iter().map(u64::to_string).collect();
        write!(f, "X_{{{}}} in {}", d.join(","), self.weights)
    }
}

/// `multiplicity` points of type `A_n` on the stratum `source`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasketEntry {
    pub n: u64,
    pub multiplicity: u64,
    /// Index subset of the source stratum; absent for baskets read from text.
    pub source: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Basket {
    pub entries: Vec<BasketEntry>,
}

impl Basket {
    /// `Σ nᵢ`, counted with multiplicity.
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| e.n * e.multiplicity).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Multiset of types: `n ↦ number of A_n points`.
    pub fn canonical(&self) -> BTreeMap<u64, u64> {
        let mut m = BTreeMap::new();
        for e in &self.entries {
            *m.entry(e.n).or_insert(0) += e.multiplicity;
        }
        m
    }

    /// Same multiset of singularities, ignoring order and sources.
    pub fn same_points(&self, other: &Basket) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn canonical_string(&self) -> String {
        let c = self.canonical();
        if c.is_empty() {
            return "-".into();
        }
        c.iter()
            .map(|(n, m)| if *m == 1 { format!("A{n}") } else { format!("{m}xA{n}") })
            .collect::<Vec<_>>()
            .join("+")
    }
}

impl fmt::Display for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct BasketParseError {
    /// 1-based column within the basket field.
    pub column: usize,
    pub message: String,
}

impl FromStr for Basket {
    type Err = BasketParseError;

    /// Grammar: `-` | entry ("+" entry)*, entry := [m "x"] "A" n.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "-" {
            return Ok(Basket::default());
        }
        let mut entries = Vec::new();
        let mut column = 1;
        for part in s.split('+') {
            let err = |offset: usize, message: &str| BasketParseError {
                column: column + offset,
                message: message.to_string(),
            };
            let (mult, rest, offset) = match part.split_once('x') {
                Some((m, rest)) => {
                    let m: u64 = m.parse().map_err(|_| err(0, "bad multiplicity"))?;
                    if m == 0 {
                        return Err(err(0, "multiplicity must be positive"));
                    }
                    (m, rest, part.len() - rest.len())
                }
                None => (1, part, 0),
            };
            let digits = rest
                .strip_prefix('A')
                .ok_or_else(|| err(offset, "expected 'A'"))?;
            let n: u64 = digits
                .parse()
                .map_err(|_| err(offset + 1, "bad singularity index"))?;
            if n == 0 {
                return Err(err(offset + 1, "A_n needs n >= 1"));
            }
            entries.push(BasketEntry {
                n,
                multiplicity: mult,
                source: None,
            });
            column += part.len() + 1;
        }
        Ok(Basket { entries })
    }
}

fn outside(ws: &WeightSystem, stratum: &[usize]) -> Vec<usize> {
    (0..ws.weights.len())
        .filter(|i| !stratum.contains(i))
        .collect()
}

/// Chooses, for each degree `dₐ` in `degrees`, a distinct coordinate `k`
/// outside the stratum such that some monomial `(stratum monomial)·x_k` has
/// degree `dₐ`. Smallest indices first.
fn eliminated_directions(
    ws: &WeightSystem,
    stratum: &[usize],
    degrees: &[u64],
) -> Option<Vec<usize>> {
    let w_s = ws.weights.select(stratum);
    let candidates = outside(ws, stratum);
    fn search(
        ws: &WeightSystem,
        w_s: &[u64],
        candidates: &[usize],
        degrees: &[u64],
        chosen: &mut Vec<usize>,
    ) -> bool {
        let Some((&d, rest)) = degrees.split_first() else {
            return true;
        };
        for &k in candidates {
            let wk = ws.weights.as_slice()[k];
            if chosen.contains(&k) || wk > d || !exactgeom::has_monomial(w_s, d - wk) {
                continue;
            }
            chosen.push(k);
            if search(ws, w_s, candidates, rest, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    search(ws, &w_s, &candidates, degrees, &mut chosen).then_some(chosen)
}

/// The two transverse weights must be `(α, −α) mod h` with `α` a unit.
fn check_du_val(
    ws: &WeightSystem,
    stratum: &[usize],
    eliminated: &[usize],
    h: u64,
) -> Result<(), AnalysisError> {
    let transverse: Vec<u64> = outside(ws, stratum)
        .into_iter()
        .filter(|k| !eliminated.contains(k))
        .map(|k| ws.weights.as_slice()[k])
        .collect();
    let ok = match transverse.as_slice() {
        [a, b] => (a + b) % h == 0 && a.gcd(&h) == 1 && b.gcd(&h) == 1,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(AnalysisError::NotDuVal {
            stratum: stratum.to_vec(),
            transverse,
            order: h,
        })
    }
}

fn entry(h: u64, multiplicity: u64, stratum: &[usize]) -> BasketEntry {
    BasketEntry {
        n: h - 1,
        multiplicity,
        source: Some(stratum.to_vec()),
    }
}

pub fn vertex_analysis(ws: &WeightSystem, i: usize) -> Result<Option<BasketEntry>, AnalysisError> {
    let h = ws.weights.as_slice()[i];
    if h == 1 || ws.degrees.iter().any(|d| d % h == 0) {
        return Ok(None);
    }
    let eliminated = eliminated_directions(ws, &[i], &ws.degrees)
        .ok_or(AnalysisError::QuasismoothnessFailureAtVertex(i))?;
    check_du_val(ws, &[i], &eliminated, h)?;
    Ok(Some(entry(h, 1, &[i])))
}

/// Newton segment length of the degree-`d` forms restricted to an edge, or
/// `None` when the restriction vanishes identically.
fn restricted_length(w_edge: &[u64], d: u64) -> Option<u64> {
    let monomials = exactgeom::monomials_of_degree(w_edge, d);
    let base = monomials.iter().min()?;
    let basis = exactgeom::null_lattice_basis(w_edge);
    let coords: Vec<i64> = monomials
        .iter()
        .map(|m| {
            basis
                .coordinates(&m.offset_from(base))
                .expect("difference of equal-degree monomials lies in the kernel")[0]
        })
        .collect();
    Some(segment_length(&coords))
}

pub fn edge_analysis(
    ws: &WeightSystem,
    edge: [usize; 2],
) -> Result<Option<BasketEntry>, AnalysisError> {
    let h = ws.weights.gcd_of(&edge);
    if h < 2 {
        return Err(AnalysisError::UnsupportedInput(format!(
            "edge {edge:?} has trivial stabilizer"
        )));
    }
    let w_edge = ws.weights.select(&edge);
    let lengths: Vec<Option<u64>> = ws
        .degrees
        .iter()
        .map(|&d| restricted_length(&w_edge, d))
        .collect();
    let contained = || AnalysisError::ContainedSingularStratum(edge.to_vec());

    let (points, vanishing): (u64, Vec<u64>) = match lengths.as_slice() {
        [len] => (len.ok_or_else(contained)?, Vec::new()),
        [Some(_), Some(_)] => return Ok(None),
        [None, None] => return Err(contained()),
        [None, Some(len)] => (*len, vec![ws.degrees[0]]),
        [Some(len), None] => (*len, vec![ws.degrees[1]]),
        _ => {
            return Err(AnalysisError::UnsupportedInput(
                "codimension above 2".into(),
            ))
        }
    };
    if points == 0 {
        return Ok(None);
    }
    let eliminated = eliminated_directions(ws, &edge, &vanishing)
        .ok_or_else(|| AnalysisError::NonIsolatedSingularLocus(edge.to_vec()))?;
    check_du_val(ws, &edge, &eliminated, h)?;
    Ok(Some(entry(h, points, &edge)))
}

/// Newton polygon of the degree-`d` forms restricted to a face, in
/// coordinates of the face's kernel lattice relative to the smallest
/// exponent vector.
fn restricted_polygon(w_face: &[u64], d: u64) -> Option<exactgeom::LatticePolygon> {
    let monomials = exactgeom::monomials_of_degree(w_face, d);
    let base: &ExponentVector = monomials.iter().min()?;
    let basis = exactgeom::null_lattice_basis(w_face);
    let points: Vec<(i64, i64)> = monomials
        .iter()
        .map(|m| {
            let c = basis
                .coordinates(&m.offset_from(base))
                .expect("difference of equal-degree monomials lies in the kernel");
            (c[0], c[1])
        })
        .collect();
    Some(hull_and_area(&points))
}

pub fn face_analysis(
    ws: &WeightSystem,
    face: [usize; 3],
) -> Result<Option<BasketEntry>, AnalysisError> {
    if ws.codim() != 2 {
        return Err(AnalysisError::UnsupportedInput(
            "face strata only arise in codimension 2".into(),
        ));
    }
    let h = ws.weights.gcd_of(&face);
    if h < 2 {
        return Err(AnalysisError::UnsupportedInput(format!(
            "face {face:?} has trivial stabilizer"
        )));
    }
    let w_face = ws.weights.select(&face);
    let polygons: Option<Vec<_>> = ws
        .degrees
        .iter()
        .map(|&d| restricted_polygon(&w_face, d))
        .collect();
    let polygons = polygons.ok_or_else(|| AnalysisError::NonIsolatedSingularLocus(face.to_vec()))?;
    let points = mixed_volume2(&polygons[0], &polygons[1]);
    if points == 0 {
        return Ok(None);
    }
    check_du_val(ws, &face, &[], h)?;
    Ok(Some(entry(h, points, &face)))
}

/// Contribution of one singular stratum.
pub fn stratum_analysis(
    ws: &WeightSystem,
    stratum: &Stratum,
) -> Result<Option<BasketEntry>, AnalysisError> {
    let result = match *stratum.indices.as_slice() {
        [i] => vertex_analysis(ws, i)?,
        [i, j] => edge_analysis(ws, [i, j])?,
        [i, j, k] => face_analysis(ws, [i, j, k])?,
        _ => {
            return Err(AnalysisError::UnsupportedInput(format!(
                "stratum {:?} of dimension above 2",
                stratum.indices
            )))
        }
    };
    if let Some(e) = &result {
        assert_eq!(e.n + 1, stratum.stabilizer, "A_n type must match the stabilizer");
    }
    Ok(result)
}

/// Du Val basket of the general member of a well-formed K3 surface
/// complete intersection of codimension 1 or 2.
pub fn analyze(ws: &WeightSystem) -> Result<Basket, AnalysisError> {
    if !ws.is_surface() || !(1..=2).contains(&ws.codim()) {
        return Err(AnalysisError::NotSurfaceCodimension {
            weights: ws.weights.len(),
            degrees: ws.degrees.len(),
        });
    }
    if !wps::is_well_formed(&ws.weights) {
        return Err(AnalysisError::NotWellFormed(ws.weights.clone()));
    }
    if !ws.is_k3() {
        return Err(AnalysisError::NotK3 {
            weight_sum: ws.weights.sum(),
            degree_sum: ws.degrees.iter().sum(),
        });
    }
    let mut entries = Vec::new();
    for stratum in wps::singular_strata(&ws.weights)? {
        if let Some(e) = stratum_analysis(ws, &stratum)? {
            entries.push(e);
        }
    }
    let basket = Basket { entries };
    match basket.total() {
        t if t > MAX_BASKET_TOTAL => Err(AnalysisError::BasketRankExceeded(t)),
        MAX_BASKET_TOTAL => Err(AnalysisError::ForbiddenBettiThree),
        _ => Ok(basket),
    }
}
