//! Exact rank of integer matrices by fraction-free elimination.
//!
//! Rows are kept primitive (divided by their content) after every update. The
//! fast path runs on checked `i128`; if any intermediate value overflows the
//! whole computation is redone over arbitrary-precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

pub type IntRow = Vec<i128>;

/// Rank over the rationals of the matrix whose rows are `rows`.
pub fn rank(rows: Vec<IntRow>) -> usize {
    match rank_i128(rows.clone()) {
        Some(r) => r,
        None => rank_big(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()),
    }
}

fn content_i128(row: &[i128]) -> i128 {
    row.iter().fold(0i128, |g, &x| g.gcd(&x))
}

fn rank_i128(mut rows: Vec<IntRow>) -> Option<usize> {
    rows.retain(|r| r.iter().any(|&x| x != 0));
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        let p = prow[col];
        for row in tail.iter_mut() {
            let q = row[col];
            if q == 0 {
                continue;
            }
            let g = p.gcd(&q);
            let (pp, qq) = (p / g, q / g);
            for c in col..ncols {
                row[c] = row[c].checked_mul(pp)?.checked_sub(prow[c].checked_mul(qq)?)?;
            }
            let g = content_i128(&row[col..]);
            if g > 1 {
                for x in row[col..].iter_mut() {
                    *x /= g;
                }
            }
        }
        rank += 1;
        rows.retain(|r| r.iter().any(|&x| x != 0));
        if rank >= rows.len() {
            break;
        }
    }
    Some(rank)
}

fn rank_big(mut rows: Vec<Vec<BigInt>>) -> usize {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        let p = prow[col].clone();
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let q = row[col].clone();
            let g = p.gcd(&q);
            let (pp, qq) = (&p / &g, &q / &g);
            for c in col..ncols {
                row[c] = &row[c] * &pp - &prow[c] * &qq;
            }
            let g = row[col..].iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if g > BigInt::from(1) {
                for x in row[col..].iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
        rank += 1;
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        if rank >= rows.len() {
            break;
        }
    }
    rank
}

/// Binomial coefficient for `0 <= k`, exact in `i128`; `None` on overflow.
pub fn binomial(n: i64, k: i64) -> Option<i128> {
    if k < 0 || n < 0 || k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(i128::from(n - i))? / i128::from(i + 1);
    }
    Some(acc)
}

/// An integer solution of `a x = b`, if one exists. Columns of `a` are reduced
/// to lower echelon form by unimodular operations, then the system is solved by
/// forward substitution.
pub fn solve_integer(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<i64>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    let combine = |mat: &mut Vec<Vec<i128>>, c: usize, j: usize, k: [i128; 4]| -> Option<()> {
        for row in mat.iter_mut() {
            let (x, y) = (row[c], row[j]);
            row[c] = k[0].checked_mul(x)?.checked_add(k[1].checked_mul(y)?)?;
            row[j] = k[2].checked_mul(x)?.checked_add(k[3].checked_mul(y)?)?;
        }
        Some(())
    };
    let mut pivots: Vec<Option<usize>> = vec![None; rows];
    let mut c = 0;
    for i in 0..rows {
        if c >= cols {
            break;
        }
        for j in c + 1..cols {
            let (x, y) = (m[i][c], m[i][j]);
            if y == 0 {
                continue;
            }
            let e = x.extended_gcd(&y);
            let k = [e.x, e.y, -y / e.gcd, x / e.gcd];
            combine(&mut m, c, j, k)?;
            combine(&mut u, c, j, k)?;
        }
        if m[i][c] != 0 {
            pivots[i] = Some(c);
            c += 1;
        }
    }
    let mut y = vec![0i128; cols];
    for i in 0..rows {
        let mut rhs = i128::from(b[i]);
        for (col, yv) in y.iter().enumerate() {
            if Some(col) != pivots[i] {
                rhs = rhs.checked_sub(m[i][col].checked_mul(*yv)?)?;
            }
        }
        match pivots[i] {
            Some(pc) => {
                if rhs % m[i][pc] != 0 {
                    return None;
                }
                y[pc] = rhs / m[i][pc];
            }
            None if rhs != 0 => return None,
            None => {}
        }
    }
    let mut x = vec![0i64; cols];
    for (r, slot) in x.iter_mut().enumerate() {
        let mut acc: i128 = 0;
        for (k, yv) in y.iter().enumerate() {
            acc = acc.checked_add(u[r][k].checked_mul(*yv)?)?;
        }
        *slot = i64::try_from(acc).ok()?;
    }
    Some(x)
}
