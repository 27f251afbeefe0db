//! Independent point counts on coordinate strata, by elimination with random
//! coefficients. Shares no code with the library: monomials are enumerated by
//! brute force, exponent lattices are reduced here, and torus zeros of two
//! bivariate polynomials are counted from a Sylvester resultant obtained by
//! evaluation and interpolation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

/// Dense univariate polynomial, index = degree, no trailing zeros.
pub type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn degree(p: &Poly) -> usize {
    assert!(!p.is_empty(), "degree of zero");
    p.len() - 1
}

/// Divide out the largest power of the variable.
fn strip_zero_roots(p: &Poly) -> Poly {
    let k = p.iter().take_while(|c| c.is_zero()).count();
    p[k..].to_vec()
}

fn derivative(p: &Poly) -> Poly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

fn rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = degree(b);
    let lead = b[db].clone();
    while !r.is_empty() && r.len() > db {
        let shift = r.len() - 1 - db;
        let q = r.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &q * c;
        }
        r = trim(r);
    }
    r
}

fn monic(p: Poly) -> Poly {
    let l = p.last().unwrap().clone();
    p.into_iter().map(|c| c / &l).collect()
}

pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        monic(a)
    }
}

/// Number of distinct roots in `C*`.
pub fn distinct_nonzero_roots(p: &Poly) -> usize {
    let p = strip_zero_roots(&trim(p.clone()));
    if p.len() <= 1 {
        return 0;
    }
    degree(&p) - degree(&gcd(&p, &derivative(&p)))
}

fn is_constant(p: &Poly) -> bool {
    trim(p.clone()).len() == 1
}

/// Every exponent vector of weighted degree `d`, by nested search.
pub fn monomials(weights: &[u64], d: u64) -> Vec<Vec<u64>> {
    fn go(w: &[u64], left: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        match w.split_first() {
            None => {
                if left == 0 {
                    out.push(prefix.clone());
                }
            }
            Some((&first, rest)) => {
                let mut e = 0;
                while e * first <= left {
                    prefix.push(e);
                    go(rest, left - e * first, prefix, out);
                    prefix.pop();
                    e += 1;
                }
            }
        }
    }
    let mut out = Vec::new();
    go(weights, d, &mut Vec::new(), &mut out);
    out
}

fn random_coefficient(rng: &mut impl Rng) -> BigInt {
    let c: i64 = rng.gen_range(1..=60);
    BigInt::from(if rng.gen_bool(0.5) { c } else { -c })
}

fn differences(support: &[Vec<u64>]) -> Vec<Vec<i64>> {
    support[1..]
        .iter()
        .map(|m| m.iter().zip(&support[0]).map(|(&a, &b)| a as i64 - b as i64).collect())
        .collect()
}

/// Row echelon form over Z of integer vectors (nonzero rows only).
pub fn echelon(mut rows: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for col in 0..ncols {
        loop {
            rows.retain(|r| r.iter().any(|&x| x != 0));
            let mut live: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if live.is_empty() {
                break;
            }
            live.sort_by_key(|&i| rows[i][col].abs());
            let p = live[0];
            if live.len() == 1 {
                out.push(rows.remove(p));
                break;
            }
            let pivot = rows[p].clone();
            for &i in &live[1..] {
                let q = Integer::div_floor(&rows[i][col], &pivot[col]);
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= q * y;
                }
            }
        }
    }
    out
}

fn minors2(b: &[Vec<i64>]) -> Vec<i64> {
    let n = b[0].len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(b[0][i] * b[1][j] - b[0][j] * b[1][i]);
        }
    }
    out
}

/// Coordinates of `v` in a rank-2 basis, by Cramer's rule on a nonzero minor.
fn coords2(b: &[Vec<i64>], v: &[i64]) -> (i64, i64) {
    let n = v.len();
    for i in 0..n {
        for j in i + 1..n {
            let det = b[0][i] * b[1][j] - b[0][j] * b[1][i];
            if det != 0 {
                let x = v[i] * b[1][j] - v[j] * b[1][i];
                let y = b[0][i] * v[j] - b[0][j] * v[i];
                assert!(x % det == 0 && y % det == 0, "vector outside the lattice");
                let c = (x / det, y / det);
                for k in 0..n {
                    assert_eq!(c.0 * b[0][k] + c.1 * b[1][k], v[k]);
                }
                return c;
            }
        }
    }
    panic!("degenerate basis");
}

fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Sparse bivariate polynomial: `(s exponent, t exponent, coefficient)`.
type Bivariate = Vec<(usize, usize, BigInt)>;

fn t_coefficient_at(f: &Bivariate, s: &BigInt, j: usize) -> BigInt {
    f.iter().filter(|(_, tj, _)| *tj == j).map(|(si, _, c)| c * s.pow(*si as u32)).sum()
}

fn s_poly_of_t_coefficient(f: &Bivariate, j: usize) -> Poly {
    let deg = f.iter().map(|t| t.0).max().unwrap_or(0);
    let mut p = vec![BigRational::zero(); deg + 1];
    for (si, tj, c) in f {
        if *tj == j {
            p[*si] += BigRational::from_integer(c.clone());
        }
    }
    trim(p)
}

fn sylvester_at(f: &Bivariate, g: &Bivariate, m: usize, n: usize, s: &BigInt) -> BigInt {
    let size = m + n;
    let fc: Vec<BigInt> = (0..=m).rev().map(|j| t_coefficient_at(f, s, j)).collect();
    let gc: Vec<BigInt> = (0..=n).rev().map(|j| t_coefficient_at(g, s, j)).collect();
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![BigInt::zero(); size];
        r[i..i + m + 1].clone_from_slice(&fc);
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![BigInt::zero(); size];
        r[i..i + n + 1].clone_from_slice(&gc);
        rows.push(r);
    }
    bareiss(rows)
}

/// Coefficients of the polynomial through `(x_i, y_i)`, by Newton's divided
/// differences.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Poly {
    let xs: Vec<BigRational> = xs.iter().cloned().map(BigRational::from_integer).collect();
    let mut dd: Vec<BigRational> = ys.iter().cloned().map(BigRational::from_integer).collect();
    let n = xs.len();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut p: Poly = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        let mut next = vec![BigRational::zero(); p.len() + 1];
        for (k, c) in p.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * &xs[i];
        }
        next[0] += &dd[i];
        p = next;
    }
    trim(p)
}

/// `Res_t(f, g)` as a polynomial in `s`, with formal `t`-degrees `m`, `n`.
fn resultant_in_s(f: &Bivariate, g: &Bivariate) -> Poly {
    let deg_t = |h: &Bivariate| h.iter().map(|x| x.1).max().unwrap();
    let deg_s = |h: &Bivariate| h.iter().map(|x| x.0).max().unwrap();
    let (m, n) = (deg_t(f), deg_t(g));
    let bound = m * deg_s(g) + n * deg_s(f);
    let xs: Vec<BigInt> = (1..=bound as i64 + 1).map(BigInt::from).collect();
    let ys: Vec<BigInt> = xs.iter().map(|s| sylvester_at(f, g, m, n, s)).collect();
    interpolate(&xs, &ys)
}

/// Common zeros in `(C*)²` of two general Laurent polynomials with the given
/// exponent sets, or `None` if this draw of coefficients failed a genericity
/// certificate.
fn torus_count_once(p: &[(i64, i64)], q: &[(i64, i64)], sheared: bool, rng: &mut impl Rng) -> Option<usize> {
    let (k, l): (i64, i64) = if sheared { (rng.gen_range(1..=2), rng.gen_range(-1..=1)) } else { (0, 0) };
    let shear = |&(x, y): &(i64, i64)| {
        let x = x + k * y;
        (x, y + l * x)
    };
    let place = |pts: &[(i64, i64)], rng: &mut dyn rand::RngCore| -> Bivariate {
        let pts: Vec<(i64, i64)> = pts.iter().map(shear).collect();
        let mx = pts.iter().map(|p| p.0).min().unwrap();
        let my = pts.iter().map(|p| p.1).min().unwrap();
        pts.iter()
            .map(|&(x, y)| {
                let c: i64 = rng.gen_range(1..=60);
                let c = if rng.gen_bool(0.5) { c } else { -c };
                ((x - mx) as usize, (y - my) as usize, BigInt::from(c))
            })
            .collect()
    };
    let f = place(p, &mut *rng);
    let g = place(q, &mut *rng);
    let deg_t = |h: &Bivariate| h.iter().map(|x| x.1).max().unwrap();
    if deg_t(&f) == 0 && deg_t(&g) == 0 {
        // both supports on a line t = const: no isolated torus zeros
        return Some(0);
    }
    // no common zero with t = 0 or t = ∞ off s = 0
    let lead = gcd(&s_poly_of_t_coefficient(&f, deg_t(&f)), &s_poly_of_t_coefficient(&g, deg_t(&g)));
    let base = gcd(&s_poly_of_t_coefficient(&f, 0), &s_poly_of_t_coefficient(&g, 0));
    if !is_constant(&strip_zero_roots(&lead)) || !is_constant(&strip_zero_roots(&base)) {
        return None;
    }
    let r = resultant_in_s(&f, &g);
    if r.is_empty() {
        return None;
    }
    let r = strip_zero_roots(&r);
    let sqfree = is_constant(&gcd(&r, &derivative(&r))) || r.len() == 1;
    sqfree.then(|| degree(&r))
}

/// Reduces to the lattice spanned by the support differences (so that no
/// torsion translation preserves both supports) and counts there; each zero
/// downstairs lifts to `index` zeros.
pub fn torus_count(p: &[(i64, i64)], q: &[(i64, i64)], rng: &mut impl Rng) -> usize {
    let as_vec = |s: &[(i64, i64)]| -> Vec<Vec<u64>> {
        let mx = s.iter().map(|a| a.0).min().unwrap();
        let my = s.iter().map(|a| a.1).min().unwrap();
        s.iter().map(|&(x, y)| vec![(x - mx) as u64, (y - my) as u64]).collect()
    };
    let (vp, vq) = (as_vec(p), as_vec(q));
    let mut diffs = differences(&vp);
    diffs.extend(differences(&vq));
    let basis = echelon(diffs);
    if basis.len() < 2 {
        return 0;
    }
    let index = minors2(&basis)[0].unsigned_abs() as usize;
    let reduce = |s: &[Vec<u64>]| -> Vec<(i64, i64)> {
        let s: Vec<Vec<i64>> = s.iter().map(|m| m.iter().map(|&x| x as i64).collect()).collect();
        s.iter()
            .map(|m| coords2(&basis, &[m[0] - s[0][0], m[1] - s[0][1]]))
            .collect()
    };
    let (rp, rq) = (reduce(&vp), reduce(&vq));
    for attempt in 0..40 {
        if let Some(c) = torus_count_once(&rp, &rq, attempt > 0, rng) {
            return index * c;
        }
    }
    panic!("no generic draw found for {p:?} / {q:?}");
}

/// Points of the general member on the open torus of a face with weights
/// `w` (three entries) cut out by forms of degrees `d1`, `d2`. `None` when
/// one restriction vanishes identically.
pub fn face_points(w: &[u64], d1: u64, d2: u64, rng: &mut impl Rng) -> Option<usize> {
    let s1 = monomials(w, d1);
    let s2 = monomials(w, d2);
    if s1.is_empty() || s2.is_empty() {
        return None;
    }
    let mut diffs = differences(&s1);
    diffs.extend(differences(&s2));
    let basis = echelon(diffs);
    match basis.len() {
        0 | 1 => return Some(0),
        2 => {}
        r => panic!("difference lattice of rank {r} inside a rank-2 kernel"),
    }
    let index = minors2(&basis).into_iter().fold(0i64, |g, x| g.gcd(&x)) as usize;
    let to_plane = |s: &[Vec<u64>]| -> Vec<(i64, i64)> {
        differences(&[vec![s[0].clone()], s.to_vec()].concat())
            .iter()
            .map(|v| coords2(&basis, v))
            .collect()
    };
    Some(index * torus_count(&to_plane(&s1), &to_plane(&s2), rng))
}

/// `f(t) = Σ cₖ t^{eₖ}` for the general form of degree `d` restricted to an
/// edge, with `t` a primitive character of the edge torus.
fn edge_polynomial(w: &[u64], d: u64, rng: &mut impl Rng) -> Option<Poly> {
    let s = monomials(w, d);
    if s.is_empty() {
        return None;
    }
    let g = w[0].gcd(&w[1]);
    let step = (w[1] / g) as i64;
    let e: Vec<i64> = s
        .iter()
        .map(|m| {
            let diff = m[0] as i64 - s[0][0] as i64;
            assert_eq!(diff % step, 0, "exponent difference off the edge lattice");
            diff / step
        })
        .collect();
    let lo = *e.iter().min().unwrap();
    let hi = *e.iter().max().unwrap();
    let mut p = vec![BigRational::zero(); (hi - lo) as usize + 1];
    for x in e {
        p[(x - lo) as usize] = BigRational::from_integer(random_coefficient(rng));
    }
    Some(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeOracle {
    /// Every form of some degree vanishes on the edge and no other degree
    /// cuts it down to points.
    Contained,
    Points(usize),
}

/// Points of the general member on the open torus of an edge with weights
/// `w` (two entries).
pub fn edge_points(w: &[u64], degrees: &[u64], rng: &mut impl Rng) -> EdgeOracle {
    let polys: Vec<Option<Poly>> = degrees.iter().map(|&d| edge_polynomial(w, d, rng)).collect();
    let live: Vec<&Poly> = polys.iter().flatten().collect();
    if live.is_empty() {
        return EdgeOracle::Contained;
    }
    let common = live[1..].iter().fold(live[0].clone(), |acc, p| gcd(&acc, p));
    EdgeOracle::Points(distinct_nonzero_roots(&common))
}
