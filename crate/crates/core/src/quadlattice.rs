//! Integral symmetric bilinear lattices given by Gram matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::intlin;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("Gram matrix is not square and symmetric")]
    NotSymmetric,
    #[error("generators are linearly dependent over Q")]
    DependentColumns,
    #[error("expected a rank 2 even positive definite lattice")]
    NotEvenPositiveRankTwo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GramLattice {
    pub gram: Vec<Vec<i64>>,
}

/// Inertia counts of a real symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl std::ops::Add for Signature {
    type Output = Signature;
    fn add(self, o: Signature) -> Signature {
        Signature {
            positive: self.positive + o.positive,
            negative: self.negative + o.negative,
            zero: self.zero + o.zero,
        }
    }
}

impl GramLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let l = GramLattice { gram };
        if l.is_symmetric() {
            Ok(l)
        } else {
            Err(LatticeError::NotSymmetric)
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.gram.len();
        self.gram.iter().all(|r| r.len() == n)
            && (0..n).all(|i| (0..i).all(|j| self.gram[i][j] == self.gram[j][i]))
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i] % 2 == 0)
    }

    pub fn determinant(&self) -> BigInt {
        intlin::determinant(&intlin::to_big(&self.gram))
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    pub fn negated(&self) -> GramLattice {
        GramLattice {
            gram: self.gram.iter().map(|r| r.iter().map(|x| -x).collect()).collect(),
        }
    }

    pub fn direct_sum(&self, other: &GramLattice) -> GramLattice {
        let (a, b) = (self.rank(), other.rank());
        let mut gram = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            gram[i][..a].copy_from_slice(&self.gram[i]);
        }
        for i in 0..b {
            gram[a + i][a..].copy_from_slice(&other.gram[i]);
        }
        GramLattice { gram }
    }

    /// `Uᵀ G U`.
    pub fn congruent(&self, u: &[Vec<i64>]) -> GramLattice {
        let n = self.rank();
        let m = u[0].len();
        let mut gram = vec![vec![0; m]; m];
        for (i, row) in gram.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut s = 0;
                for a in 0..n {
                    for b in 0..n {
                        s += u[a][i] * self.gram[a][b] * u[b][j];
                    }
                }
                *cell = s;
            }
        }
        GramLattice { gram }
    }

    /// Pairing of two coordinate vectors.
    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.rank();
        (0..n)
            .map(|a| (0..n).map(|b| x[a] * self.gram[a][b] * y[b]).sum::<i64>())
            .sum()
    }
}

/// Root lattice of the Dynkin diagram E₈: chain 0–1–2–3–4–5–6 with node 7
/// attached to node 4.
pub fn gram_e8() -> GramLattice {
    let mut gram = vec![vec![0i64; 8]; 8];
    for (i, row) in gram.iter_mut().enumerate() {
        row[i] = 2;
    }
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
    for (a, b) in edges {
        gram[a][b] = -1;
        gram[b][a] = -1;
    }
    GramLattice { gram }
}

/// The hyperbolic plane scaled by `m`.
pub fn gram_h(m: i64) -> GramLattice {
    assert!(m >= 1, "H(m) needs m >= 1");
    GramLattice {
        gram: vec![vec![0, m], vec![m, 0]],
    }
}

/// `(−E₈) ⊕ (−E₈) ⊕ H(1)³`.
pub fn k3_gram() -> GramLattice {
    let e8 = gram_e8().negated();
    let h = gram_h(1);
    e8.direct_sum(&e8).direct_sum(&h).direct_sum(&h).direct_sum(&h)
}

/// Inertia by exact congruence diagonalization over Q: a nonzero diagonal
/// pivot splits off a rank-1 block; otherwise a nonzero off-diagonal entry
/// splits off a hyperbolic rank-2 block contributing `(1, 1)`.
pub fn signature(l: &GramLattice) -> Result<Signature, LatticeError> {
    if !l.is_symmetric() {
        return Err(LatticeError::NotSymmetric);
    }
    let mut a: Vec<Vec<BigRational>> = l
        .gram
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut sig = Signature {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    while !a.is_empty() {
        let n = a.len();
        if let Some(p) = (0..n).find(|&i| !a[i][i].is_zero()) {
            if a[p][p].is_positive() {
                sig.positive += 1;
            } else {
                sig.negative += 1;
            }
            let pivot = a[p][p].clone();
            let row = a[p].clone();
            let mut rest = Vec::with_capacity(n - 1);
            for i in (0..n).filter(|&i| i != p) {
                let f = &a[i][p] / &pivot;
                let r: Vec<BigRational> = (0..n)
                    .filter(|&j| j != p)
                    .map(|j| &a[i][j] - &f * &row[j])
                    .collect();
                rest.push(r);
            }
            a = rest;
            continue;
        }
        let Some((p, q)) = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        else {
            sig.zero += n;
            break;
        };
        // block [[0, c], [c, 0]] with inverse [[0, 1/c], [1/c, 0]]
        sig.positive += 1;
        sig.negative += 1;
        let c = a[p][q].clone();
        let others: Vec<usize> = (0..n).filter(|&i| i != p && i != q).collect();
        let mut rest = Vec::with_capacity(others.len());
        for &i in &others {
            let r: Vec<BigRational> = others
                .iter()
                .map(|&j| {
                    // a_ij − [a_ip a_iq] B⁻¹ [a_pj a_qj]ᵀ
                    let corr = (&a[i][p] * &a[q][j] + &a[i][q] * &a[p][j]) / &c;
                    &a[i][j] - corr
                })
                .collect();
            rest.push(r);
        }
        a = rest;
    }
    Ok(sig)
}

/// The sublattice spanned by `columns` (each a vector of ambient coordinates)
/// is primitive iff the quotient is torsion-free, i.e. all Smith invariants
/// of the generator matrix are 1.
pub fn is_primitive(columns: &[Vec<i64>]) -> Result<bool, LatticeError> {
    let inv = intlin::smith_invariants(columns);
    if inv.len() < columns.len() {
        return Err(LatticeError::DependentColumns);
    }
    Ok(inv.iter().all(|d| d.is_one()))
}

/// Image of a rank-2 lattice `T` in `H ⊕ H` with basis `(v₁, w₁, v₂, w₂)`,
/// `(vᵢ, wⱼ) = δᵢⱼ`, under `f(l₁) = v₁ + ½(l₁,l₁)w₁`,
/// `f(l₂) = v₂ + ½(l₂,l₂)w₂ + 2(l₁,l₂)w₁`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingImage {
    /// Coordinates of `f(l₁)` and `f(l₂)` in `(v₁, w₁, v₂, w₂)`.
    pub images: [Vec<i64>; 2],
    pub induced: GramLattice,
    /// `(f(l₁), f(l₂)) = 2(l₁, l₂)`.
    pub off_diagonal_doubles: bool,
    /// `(f(lᵢ), wⱼ) = δᵢⱼ`.
    pub dual_certificate: bool,
    pub primitive: bool,
}

fn h_plus_h() -> GramLattice {
    gram_h(1).direct_sum(&gram_h(1))
}

pub fn hyperbolic_embedding(t: &GramLattice) -> Result<EmbeddingImage, LatticeError> {
    let positive_definite = t.rank() == 2 && t.gram[0][0] > 0 && t.determinant().is_positive();
    if !t.is_symmetric() || !t.is_even() || !positive_definite {
        return Err(LatticeError::NotEvenPositiveRankTwo);
    }
    let (l11, l12, l22) = (t.gram[0][0], t.gram[0][1], t.gram[1][1]);
    let f1 = vec![1, l11 / 2, 0, 0];
    let f2 = vec![0, 2 * l12, 1, l22 / 2];
    let hh = h_plus_h();
    let induced = GramLattice {
        gram: vec![
            vec![hh.pair(&f1, &f1), hh.pair(&f1, &f2)],
            vec![hh.pair(&f2, &f1), hh.pair(&f2, &f2)],
        ],
    };
    let w = [vec![0, 1, 0, 0], vec![0, 0, 0, 1]];
    let dual_certificate = [&f1, &f2]
        .iter()
        .enumerate()
        .all(|(i, f)| (0..2).all(|j| hh.pair(f, &w[j]) == i64::from(i == j)));
    let primitive = is_primitive(&[f1.clone(), f2.clone()])?;
    Ok(EmbeddingImage {
        off_diagonal_doubles: induced.gram[0][1] == 2 * l12,
        images: [f1, f2],
        induced,
        dual_certificate,
        primitive,
    })
}
