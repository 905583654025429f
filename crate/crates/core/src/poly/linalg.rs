//! Fraction-free linear algebra over polynomial rings.

use super::MPoly;

/// Bareiss elimination in place on an `rows x cols` matrix, pivoting on the
/// first `rows.min(cols)` columns. Returns the sign of the row permutation
/// and the last pivot, or `None` when a pivot column is entirely zero.
fn bareiss(m: &mut [Vec<MPoly>], pivots: usize) -> Option<(bool, MPoly)> {
    let u = m[0][0].universe().clone();
    let cols = m[0].len();
    let mut prev = MPoly::one(&u);
    let mut negated = false;
    for k in 0..pivots {
        if m[k][k].is_zero() {
            // Prefer the sparsest available pivot.
            let swap = (k + 1..m.len())
                .filter(|&r| !m[r][k].is_zero())
                .min_by_key(|&r| m[r][k].len())?;
            m.swap(k, swap);
            negated = !negated;
        }
        for i in k + 1..m.len() {
            for j in k + 1..cols {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.divide_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = MPoly::zero(&u);
        }
        prev = m[k][k].clone();
    }
    Some((negated, prev))
}

/// Determinant of a square polynomial matrix.
pub fn determinant(matrix: &[Vec<MPoly>]) -> MPoly {
    assert!(!matrix.is_empty() && matrix.iter().all(|r| r.len() == matrix.len()));
    let mut m = matrix.to_vec();
    let n = m.len();
    match bareiss(&mut m, n) {
        None => MPoly::zero(matrix[0][0].universe()),
        Some((neg, det)) => {
            if neg {
                -det
            } else {
                det
            }
        }
    }
}

/// Solves `A x = b` over the fraction field: returns `(det, numerators)`
/// with `x_i = numerators[i] / det`, or `None` if `A` is singular.
pub fn solve(a: &[Vec<MPoly>], b: &[MPoly]) -> Option<(MPoly, Vec<MPoly>)> {
    let n = a.len();
    assert!(n > 0 && b.len() == n && a.iter().all(|r| r.len() == n));
    let mut m: Vec<Vec<MPoly>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (_, det) = bareiss(&mut m, n)?;
    let u = det.universe().clone();
    let mut nums = vec![MPoly::zero(&u); n];
    for k in (0..n).rev() {
        let mut acc = &det * &m[k][n];
        for j in k + 1..n {
            acc = &acc - &(&m[k][j] * &nums[j]);
        }
        nums[k] = acc
            .divide_exact(&m[k][k])
            .expect("fraction-free back substitution is exact");
    }
    Some((det, nums))
}

/// Resultant of `f` and `g` with respect to `var` (Sylvester determinant).
pub fn resultant(f: &MPoly, g: &MPoly, var: usize) -> MPoly {
    let u = f.universe().clone();
    let a = f.as_univariate(var);
    let b = g.as_univariate(var);
    if a.is_empty() || b.is_empty() {
        return MPoly::zero(&u);
    }
    let (m, n) = (a.len() - 1, b.len() - 1);
    if m + n == 0 {
        return MPoly::one(&u);
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![MPoly::zero(&u); size];
        for (k, c) in a.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![MPoly::zero(&u); size];
        for (k, c) in b.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    determinant(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, VarUniverse};

    #[test]
    fn symbolic_determinant_and_solve() {
        let u = VarUniverse::new(&["x", "y", "z"]).unwrap();
        let p = |s: &str| parse_poly(s, &u).unwrap();
        let a = vec![vec![p("0"), p("x"), p("1")], vec![p("y"), p("1"), p("0")], vec![p("1"), p("0"), p("z")]];
        let det = determinant(&a);
        // 0*(z) - x*(y*z) + 1*(0 - 1)
        assert_eq!(det, p("-x*y*z - 1"));
        let b = vec![p("1"), p("0"), p("0")];
        let (d, nums) = solve(&a, &b).unwrap();
        for (i, row) in a.iter().enumerate() {
            let mut lhs = MPoly::zero(&u);
            for (aij, nj) in row.iter().zip(&nums) {
                lhs = &lhs + &(aij * nj);
            }
            assert_eq!(lhs, &b[i] * &d);
        }
        let singular = vec![vec![p("x"), p("y")], vec![p("2*x"), p("2*y")]];
        assert!(solve(&singular, &[p("1"), p("1")]).is_none());
        assert!(determinant(&singular).is_zero());
    }

    #[test]
    fn resultant_detects_common_root() {
        let u = VarUniverse::new(&["t", "a"]).unwrap();
        let p = |s: &str| parse_poly(s, &u).unwrap();
        // Discriminant-like: res(t^2 - a, t - 1) = 1 - a.
        assert_eq!(resultant(&p("t^2 - a"), &p("t - 1"), 0), p("1 - a"));
        assert!(resultant(&p("t^2 - 1"), &p("t - 1"), 0).is_zero());
        assert_eq!(resultant(&p("3"), &p("t - 1"), 0), p("3"));
    }
}
