//! Integer linear algebra over `BigInt`: Smith invariants, row Hermite form,
//! fraction-free determinants and unimodular column reduction of a row vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_big(m: &[Vec<i64>]) -> IntMatrix {
    m.iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Nonzero invariant factors of an integer matrix, in divisibility order.
pub fn smith_invariants(m: &[Vec<i64>]) -> Vec<BigInt> {
    let mut a = to_big(m);
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block goes to (t, t)
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        let mut dirty = false;
        for i in t + 1..rows {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                for j in t..cols {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
            }
            dirty |= !a[i][t].is_zero();
        }
        for j in t + 1..cols {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for i in t..rows {
                    let v = &a[i][t] * &q;
                    a[i][j] -= v;
                }
            }
            dirty |= !a[t][j].is_zero();
        }
        if dirty {
            continue;
        }
        // pivot must divide the whole trailing block
        let mut offender = None;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !a[i][j].is_multiple_of(&a[t][t]) {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            for j in t..cols {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// Row-style Hermite normal form: upper echelon, positive pivots, entries
/// above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_rows(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let cols = rows[0].len();
    let mut a = to_big(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        // gcd-combine column c of rows r.. into row r
        loop {
            let nz: Vec<usize> = (r..a.len()).filter(|&i| !a[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz
                .iter()
                .min_by(|&&x, &&y| a[x][c].abs().cmp(&a[y][c].abs()))
                .unwrap();
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                for j in 0..cols {
                    let v = &a[r][j] * &q;
                    a[i][j] -= v;
                }
                done &= a[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for v in a[r].iter_mut() {
                *v = -v.clone();
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if !q.is_zero() {
                for j in 0..cols {
                    let v = &a[r][j] * &q;
                    a[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| i64::try_from(x).expect("Hermite entry exceeds i64"))
                .collect()
        })
        .collect()
}

/// Bareiss fraction-free determinant.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Unimodular column reduction of a nonzero row vector `w`: returns `(g, u)`
/// with `w · u = (g, 0, …, 0)`, `g > 0` and `u` unimodular. The trailing
/// columns of `u` are a basis of the integer kernel of `w`.
pub fn column_reduce_row(w: &[i64]) -> (i64, Vec<Vec<i64>>) {
    let n = w.len();
    let mut row = w.to_vec();
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    loop {
        let nz: Vec<usize> = (0..n).filter(|&j| row[j] != 0).collect();
        assert!(!nz.is_empty(), "zero row has no reduction");
        let p = *nz.iter().min_by_key(|&&j| row[j].abs()).unwrap();
        if nz.len() == 1 {
            swap_cols(&mut row, &mut u, 0, p);
            if row[0] < 0 {
                row[0] = -row[0];
                for r in u.iter_mut() {
                    r[0] = -r[0];
                }
            }
            return (row[0], u);
        }
        for &j in &nz {
            if j == p {
                continue;
            }
            let q = row[j].div_euclid(row[p]);
            row[j] -= q * row[p];
            for r in u.iter_mut() {
                r[j] -= q * r[p];
            }
        }
    }
}

fn swap_cols(row: &mut [i64], u: &mut [Vec<i64>], a: usize, b: usize) {
    row.swap(a, b);
    for r in u.iter_mut() {
        r.swap(a, b);
    }
}
