//! Exact rank and inverse over the rationals, plus a fraction-free integer
//! rank used in the inner loop of ray enumeration.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::Rational;

/// Rank of a rational matrix given by rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in (r + 1)..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] / &pivot;
            for k in c..cols {
                let delta = &factor * &m[r][k];
                m[i][k] -= delta;
            }
        }
        r += 1;
    }
    r
}

/// Inverse of a square rational matrix, `None` when singular.
pub fn inverse(matrix: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = matrix.len();
    let mut m: Vec<Vec<Rational>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let pivot = m[c][c].clone();
        for k in 0..2 * n {
            m[c][k] = &m[c][k] / &pivot;
        }
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let factor = m[i][c].clone();
            for k in 0..2 * n {
                let delta = &factor * &m[c][k];
                m[i][k] -= delta;
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn reduce_row(row: &mut [i128]) {
    let g = row.iter().fold(0i128, |acc, &v| acc.gcd(&v));
    if g > 1 {
        row.iter_mut().for_each(|v| *v /= g);
    }
}

/// Rank of integer rows by fraction-free elimination with row content
/// removal, so intermediate values stay small.
pub(crate) fn integer_rank<'a>(rows: impl IntoIterator<Item = &'a [i64]>, cols: usize) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .into_iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let a = pivot_row[c];
        for row in tail.iter_mut() {
            let b = row[c];
            if b == 0 {
                continue;
            }
            for k in c..cols {
                row[k] = a * row[k] - b * pivot_row[k];
            }
            reduce_row(row);
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn ranks_agree() {
        let rows = vec![vec![1i64, 2, 3], vec![2, 4, 6], vec![0, 1, 1], vec![1, 3, 4]];
        let rat: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        assert_eq!(rank(&rat), 2);
        assert_eq!(integer_rank(rows.iter().map(Vec::as_slice), 3), 2);
        assert_eq!(integer_rank(std::iter::empty(), 3), 0);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = vec![vec![int(2), int(1)], vec![int(1), int(1)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![int(1), int(-1)], vec![int(-1), int(2)]]);
        assert!(inverse(&[vec![int(1), int(2)], vec![int(2), int(4)]]).is_none());
    }
}
