//! Exact rational linear algebra: determinant, rank, nullspace.

use crate::coeff_ring::Rational;
use num_traits::{One, Zero};

pub type Matrix = Vec<Vec<Rational>>;

/// Determinant by fraction-preserving Gaussian elimination.
pub fn det(m: &Matrix) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut a = m.to_vec();
    let mut sign = false;
    let mut acc = Rational::one();
    for k in 0..n {
        let pivot = match (k..n).find(|&i| !a[i][k].is_zero()) {
            Some(p) => p,
            None => return Rational::zero(),
        };
        if pivot != k {
            a.swap(pivot, k);
            sign = !sign;
        }
        let pv = a[k][k].clone();
        acc *= &pv;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &pv;
            for j in k..n {
                let sub = &factor * &a[k][j];
                a[i][j] -= sub;
            }
        }
    }
    if sign {
        -acc
    } else {
        acc
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(a: &mut Matrix) -> Vec<usize> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pv = a[r][c].clone();
        for j in c..cols {
            a[r][j] = &a[r][j] / &pv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let sub = &f * &a[r][j];
                    a[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Rank of a rational matrix.
pub fn rank(m: &Matrix) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Basis of the right nullspace, one vector per free column.
pub fn nullspace(m: &Matrix) -> Vec<Vec<Rational>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Rows spanning the left annihilator of the column span of `basis_cols`
/// (each inner Vec is one column vector of length `dim`).
pub fn left_annihilator(dim: usize, basis_cols: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    // z^T B = 0  <=>  B^T z = 0.
    let bt: Matrix = (0..basis_cols.len())
        .map(|j| (0..dim).map(|i| basis_cols[j][i].clone()).collect())
        .collect();
    if basis_cols.is_empty() {
        // Annihilator is everything: the identity rows.
        return (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
    }
    nullspace(&bt)
}

/// Multiply matrix by column vector.
pub fn mat_vec(m: &Matrix, v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .map(|(a, b)| a * b)
                .fold(Rational::zero(), |acc, x| acc + x)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_ring::rat;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&m(&[&[2]])), rat(2));
        assert_eq!(det(&m(&[&[1, 2], &[3, 4]])), rat(-2));
        assert_eq!(det(&m(&[&[1, 2], &[2, 4]])), rat(0));
        assert_eq!(det(&Vec::new()), rat(1));
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 1);
        for v in &ns {
            let prod = mat_vec(&a, v);
            assert!(prod.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn annihilator_of_full_space_is_empty() {
        let cols = vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]];
        assert!(left_annihilator(2, &cols).is_empty());
        assert_eq!(left_annihilator(2, &[]).len(), 2);
    }
}
