//! Exact integer kernel: weighted-degree monomial enumeration, kernel lattices
//! of weight covectors, 2D convex hulls with doubled areas, and normalized
//! mixed areas (generic torus root counts of two bivariate Laurent systems).
//!
//! Exponents and lattice coordinates are machine integers; cross products and
//! shoelace sums accumulate in `i128` and are range-checked on the way out.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::One;

use crate::intlin;

/// Exponents `(a₀, …, aₖ)` of a monomial in the participating variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(pub Vec<u64>);

impl ExponentVector {
    pub fn weighted_degree(&self, weights: &[u64]) -> u64 {
        self.0.iter().zip(weights).map(|(a, w)| a * w).sum()
    }

    /// `self − base` as a signed integer vector.
    pub fn offset_from(&self, base: &ExponentVector) -> Vec<i64> {
        self.0
            .iter()
            .zip(&base.0)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect()
    }
}

/// All solutions of `Σ aᵢwᵢ = degree`, `aᵢ ≥ 0`, in lexicographic monomial
/// order (`x₀ > x₁ > …`), i.e. exponent vectors in decreasing order.
pub fn monomials_of_degree(weights: &[u64], degree: u64) -> Vec<ExponentVector> {
    assert!(!weights.is_empty(), "at least one weight is required");
    assert!(weights.iter().all(|&w| w >= 1), "weights must be positive");
    let mut counter = MonomialCounter::default();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(weights.len());
    fill(weights, degree, &mut current, &mut out, &mut counter);
    out
}

fn fill(
    weights: &[u64],
    degree: u64,
    current: &mut Vec<u64>,
    out: &mut Vec<ExponentVector>,
    counter: &mut MonomialCounter,
) {
    let Some((&w, rest)) = weights.split_first() else {
        if degree == 0 {
            out.push(ExponentVector(current.clone()));
        }
        return;
    };
    for a in (0..=degree / w).rev() {
        let remaining = degree - a * w;
        // prune branches with no completions
        if !rest.is_empty() && counter.count(rest, remaining) == 0 {
            continue;
        }
        if rest.is_empty() && remaining != 0 {
            continue;
        }
        current.push(a);
        fill(rest, remaining, current, out, counter);
        current.pop();
    }
}

/// Memoized count of monomials of a given weighted degree.
#[derive(Debug, Default)]
pub struct MonomialCounter {
    memo: HashMap<(Vec<u64>, u64), u64>,
}

impl MonomialCounter {
    pub fn count(&mut self, weights: &[u64], degree: u64) -> u64 {
        match weights {
            [] => u64::from(degree == 0),
            [w] => u64::from(degree.is_multiple_of(*w)),
            [rest @ .., last] => {
                let key = (weights.to_vec(), degree);
                if let Some(&c) = self.memo.get(&key) {
                    return c;
                }
                let mut total = 0;
                let mut e = 0;
                while e * last <= degree {
                    total += self.count(rest, degree - e * last);
                    e += 1;
                }
                self.memo.insert(key, total);
                total
            }
        }
    }
}

/// Number of monomials of weighted degree `degree`.
pub fn count_monomials(weights: &[u64], degree: u64) -> u64 {
    MonomialCounter::default().count(weights, degree)
}

/// True iff some monomial of the given degree exists.
pub fn has_monomial(weights: &[u64], degree: u64) -> bool {
    count_monomials(weights, degree) > 0
}

/// Basis of the full integer kernel `{a ∈ Zᵏ : a · w = 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullLatticeBasis {
    pub basis: Vec<Vec<i64>>,
}

/// Kernel lattice of the weight covector, via unimodular column reduction of
/// the `1 × k` weight matrix. The basis is put in row Hermite form.
pub fn null_lattice_basis(weights: &[u64]) -> NullLatticeBasis {
    assert!(weights.len() >= 2, "kernel of a single weight is trivial");
    let w: Vec<i64> = weights.iter().map(|&x| x as i64).collect();
    let (_, u) = intlin::column_reduce_row(&w);
    let cols: Vec<Vec<i64>> = (1..w.len())
        .map(|c| u.iter().map(|row| row[c]).collect())
        .collect();
    NullLatticeBasis {
        basis: intlin::hermite_rows(&cols),
    }
}

impl NullLatticeBasis {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `v` in this basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        match self.basis.as_slice() {
            [b] => {
                let j = b.iter().position(|&x| x != 0)?;
                if v[j] % b[j] != 0 {
                    return None;
                }
                let c = v[j] / b[j];
                b.iter().zip(v).all(|(&x, &y)| x * c == y).then(|| vec![c])
            }
            [b0, b1] => {
                let n = v.len();
                for i in 0..n {
                    for j in i + 1..n {
                        let det = b0[i] * b1[j] - b0[j] * b1[i];
                        if det == 0 {
                            continue;
                        }
                        let x = v[i] * b1[j] - v[j] * b1[i];
                        let y = b0[i] * v[j] - b0[j] * v[i];
                        if x % det != 0 || y % det != 0 {
                            return None;
                        }
                        let (x, y) = (x / det, y / det);
                        let ok = (0..n).all(|k| x * b0[k] + y * b1[k] == v[k]);
                        return ok.then(|| vec![x, y]);
                    }
                }
                None
            }
            _ => unimplemented!("coordinates only for rank 1 and 2 kernels"),
        }
    }

    /// Every basis vector annihilates `weights` and the basis is saturated
    /// (all Smith invariants equal 1), so it spans the whole kernel.
    pub fn is_full_kernel_of(&self, weights: &[u64]) -> bool {
        let annihilates = self.basis.iter().all(|b| {
            b.iter()
                .zip(weights)
                .map(|(&x, &w)| x * w as i64)
                .sum::<i64>()
                == 0
        });
        let inv = intlin::smith_invariants(&self.basis);
        annihilates
            && self.basis.len() + 1 == weights.len()
            && inv.len() == self.basis.len()
            && inv.iter().all(|d| d.is_one())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point2 {
    pub x: i64,
    pub y: i64,
}

impl Point2 {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }
}

impl From<(i64, i64)> for Point2 {
    fn from((x, y): (i64, i64)) -> Self {
        Self { x, y }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolygon {
    pub points: Vec<Point2>,
    /// Hull vertices, counter-clockwise, starting at the lexicographic minimum.
    pub hull: Vec<Point2>,
    pub doubled_area: u64,
}

fn cross(o: Point2, a: Point2, b: Point2) -> i128 {
    let (ax, ay) = ((a.x - o.x) as i128, (a.y - o.y) as i128);
    let (bx, by) = ((b.x - o.x) as i128, (b.y - o.y) as i128);
    ax * by - ay * bx
}

/// Andrew monotone chain; collinear interior points are dropped, so a
/// collinear set keeps only its two extremes.
fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn shoelace(hull: &[Point2]) -> u64 {
    if hull.len() < 3 {
        return 0;
    }
    let mut s: i128 = 0;
    for (i, a) in hull.iter().enumerate() {
        let b = hull[(i + 1) % hull.len()];
        s += a.x as i128 * b.y as i128 - b.x as i128 * a.y as i128;
    }
    u64::try_from(s.abs()).expect("doubled area exceeds u64")
}

pub fn hull_and_area<P: Into<Point2> + Copy>(points: &[P]) -> LatticePolygon {
    assert!(!points.is_empty(), "hull of an empty point set");
    let mut pts: Vec<Point2> = points.iter().map(|&p| p.into()).collect();
    pts.sort();
    pts.dedup();
    let hull = convex_hull(&pts);
    let doubled_area = shoelace(&hull);
    LatticePolygon {
        points: pts,
        hull,
        doubled_area,
    }
}

/// Minkowski sum of two polygons, from pairwise sums of hull vertices.
pub fn minkowski_sum(p: &LatticePolygon, q: &LatticePolygon) -> LatticePolygon {
    let sums: Vec<Point2> = p
        .hull
        .iter()
        .flat_map(|a| q.hull.iter().map(move |b| Point2::new(a.x + b.x, a.y + b.y)))
        .collect();
    hull_and_area(&sums)
}

/// Normalized mixed area `(A₂(P⊕Q) − A₂(P) − A₂(Q)) / 2` with doubled areas
/// `A₂`; two generic lines give 1.
pub fn mixed_volume2(p: &LatticePolygon, q: &LatticePolygon) -> u64 {
    let sum = minkowski_sum(p, q);
    let twice = sum.doubled_area - p.doubled_area - q.doubled_area;
    assert!(twice.is_even(), "odd doubled mixed area {twice}");
    twice / 2
}

/// Extent `max − min` of points on a rank-1 lattice coordinate.
pub fn segment_length(coords: &[i64]) -> u64 {
    assert!(!coords.is_empty(), "segment of an empty point set");
    let max = coords.iter().max().unwrap();
    let min = coords.iter().min().unwrap();
    (max - min) as u64
}
