//! Weighted projective spaces `P(w₀, …, wₙ)`: well-formedness, dimensions of
//! graded pieces, and the coordinate strata carrying cyclic stabilizers.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::AnalysisError;
use crate::exactgeom;

/// Weights in canonical non-decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<u64>);

impl WeightVector {
    pub fn new(mut weights: Vec<u64>) -> Self {
        assert!(weights.iter().all(|&w| w >= 1), "weights must be positive");
        weights.sort_unstable();
        Self(weights)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn gcd_of(&self, indices: &[usize]) -> u64 {
        indices.iter().fold(0, |g, &i| g.gcd(&self.0[i]))
    }

    pub fn select(&self, indices: &[usize]) -> Vec<u64> {
        indices.iter().map(|&i| self.0[i]).collect()
    }
}

impl From<Vec<u64>> for WeightVector {
    fn from(v: Vec<u64>) -> Self {
        Self::new(v)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// Every `n`-element subset of the `n + 1` weights is coprime.
pub fn is_well_formed(w: &WeightVector) -> bool {
    let n = w.len();
    (0..n).all(|skip| {
        let others: Vec<usize> = (0..n).filter(|&i| i != skip).collect();
        w.gcd_of(&others) == 1
    })
}

/// `h⁰(P(w), O(l))`.
pub fn h0(w: &WeightVector, l: u64) -> u64 {
    exactgeom::count_monomials(w.as_slice(), l)
}

/// A coordinate stratum: points whose nonzero coordinates are exactly
/// `indices`, all sharing the stabilizer `μ_h`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Stratum {
    pub indices: Vec<usize>,
    pub stabilizer: u64,
}

/// All nonempty proper index subsets with stabilizer `h ≥ 2`, ordered by size
/// and then lexicographically.
pub fn singular_strata(w: &WeightVector) -> Result<Vec<Stratum>, AnalysisError> {
    if !is_well_formed(w) {
        return Err(AnalysisError::NotWellFormed(w.clone()));
    }
    let n = w.len();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) - 1 {
        let indices: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let h = w.gcd_of(&indices);
        if h >= 2 {
            out.push(Stratum {
                indices,
                stabilizer: h,
            });
        }
    }
    out.sort_by(|a, b| {
        a.indices
            .len()
            .cmp(&b.indices.len())
            .then_with(|| a.indices.cmp(&b.indices))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wv(v: &[u64]) -> WeightVector {
        WeightVector::new(v.to_vec())
    }

    fn stratum(indices: &[usize], h: u64) -> Stratum {
        Stratum {
            indices: indices.to_vec(),
            stabilizer: h,
        }
    }

    #[test]
    fn well_formedness() {
        assert!(is_well_formed(&wv(&[1, 1, 1, 2])));
        assert!(!is_well_formed(&wv(&[1, 2, 2, 2])));
        assert!(is_well_formed(&wv(&[2, 3, 3, 4])));
        assert!(!is_well_formed(&wv(&[2, 2, 2, 2])));
    }

    #[test]
    fn weights_are_sorted() {
        assert_eq!(wv(&[6, 1, 4, 1]).as_slice(), &[1, 1, 4, 6]);
    }

    #[test]
    fn graded_dimensions() {
        assert_eq!(h0(&wv(&[1, 1, 1, 2]), 5), 34);
        assert_eq!(h0(&wv(&[5, 6, 22, 33]), 0), 1);
        // e ≤ 3 copies of weight 4, f ≤ 2 of weight 6: Σ (13 − 4e − 6f) over valid (e, f)
        assert_eq!(h0(&wv(&[1, 1, 4, 6]), 12), 39);
    }

    #[test]
    fn strata_of_1112() {
        assert_eq!(singular_strata(&wv(&[1, 1, 1, 2])).unwrap(), vec![stratum(&[3], 2)]);
        assert!(singular_strata(&wv(&[1, 1, 1, 1])).unwrap().is_empty());
    }

    #[test]
    fn strata_of_12234() {
        let s = singular_strata(&wv(&[1, 2, 2, 3, 4])).unwrap();
        let expected = vec![
            stratum(&[1], 2),
            stratum(&[2], 2),
            stratum(&[3], 3),
            stratum(&[4], 4),
            stratum(&[1, 2], 2),
            stratum(&[1, 4], 2),
            stratum(&[2, 4], 2),
            stratum(&[1, 2, 4], 2),
        ];
        assert_eq!(s, expected);
    }

    #[test]
    fn strata_reject_non_well_formed() {
        assert!(matches!(
            singular_strata(&wv(&[1, 2, 2, 2])),
            Err(AnalysisError::NotWellFormed(_))
        ));
    }

    #[test]
    fn strata_properties_on_small_spaces() {
        for a in 1..=6u64 {
            for b in a..=6 {
                for c in b..=8 {
                    for d in c..=9 {
                        let w = wv(&[a, b, c, d]);
                        let Ok(strata) = singular_strata(&w) else {
                            continue;
                        };
                        assert!(strata.iter().all(|s| s.indices.len() <= w.len() - 2));
                        for s in &strata {
                            for t in &strata {
                                if s.indices.iter().all(|i| t.indices.contains(i)) {
                                    assert_eq!(s.stabilizer % t.stabilizer, 0);
                                }
                            }
                        }
                        // h⁰ is the monomial count
                        for l in 0..12 {
                            let n = exactgeom::monomials_of_degree(w.as_slice(), l).len();
                            assert_eq!(h0(&w, l), n as u64);
                        }
                    }
                }
            }
        }
    }
}
