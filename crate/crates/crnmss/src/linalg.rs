//! Exact rational linear algebra: row reduction, rank, nullspace.

use num::{BigInt, BigRational, Signed, Zero};

pub type Vector = Vec<BigRational>;
pub type Matrix = Vec<Vector>;

pub fn zero() -> BigRational {
    BigRational::zero()
}

pub fn from_i64(v: i64) -> BigRational {
    BigRational::from(BigInt::from(v))
}

pub fn vec_from_i64(v: &[i64]) -> Vector {
    v.iter().map(|&x| from_i64(x)).collect()
}

/// Reduces `rows` to reduced row echelon form in place and returns the
/// pivot column of each nonzero row.
pub fn rref(rows: &mut Matrix) -> Vec<usize> {
    if rows.is_empty() {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= rows.len() {
            break;
        }
        let pivot_row = (row..rows.len()).find(|&r| !rows[r][col].is_zero());
        let pivot_row = match pivot_row {
            Some(r) => r,
            None => continue,
        };
        rows.swap(row, pivot_row);
        let inv = rows[row][col].clone();
        for x in rows[row].iter_mut() {
            *x /= &inv;
        }
        for r in 0..rows.len() {
            if r != row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in 0..ncols {
                    let delta = &factor * &rows[row][c];
                    rows[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    rows.truncate(row);
    pivots
}

pub fn rank(mut rows: Matrix) -> usize {
    rref(&mut rows).len()
}

/// Basis of the row space (the rref rows themselves).
pub fn row_space_basis(mut rows: Matrix) -> Matrix {
    rref(&mut rows);
    rows
}

/// Basis of the right nullspace of the matrix with `ncols` columns.
pub fn nullspace(mut rows: Matrix, ncols: usize) -> Matrix {
    let pivots = rref(&mut rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![zero(); ncols];
        v[f] = from_i64(1);
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -rows[r][f].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Scales a rational vector to integer entries with content 1; does not
/// change the sign.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let mut denom_lcm = BigInt::from(1);
    for x in v {
        denom_lcm = num::integer::lcm(denom_lcm, x.denom().clone());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&denom_lcm / x.denom()))
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = num::integer::gcd(g, x.abs());
    }
    if g.is_zero() {
        return ints;
    }
    ints.iter().map(|x| x / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| vec_from_i64(r)).collect()
    }

    #[test]
    fn rank_of_dependent_vectors() {
        // A->B, B->C, A->C reaction vectors span a 2-dimensional space
        let rows = m(&[&[-1, 1, 0], &[0, -1, 1], &[-1, 0, 1]]);
        assert_eq!(rank(rows), 2);
    }

    #[test]
    fn nullspace_of_single_row() {
        let ns = nullspace(m(&[&[1, 1]]), 2);
        assert_eq!(ns.len(), 1);
        assert!(dot(&ns[0], &vec_from_i64(&[1, 1])).is_zero());
    }

    #[test]
    fn nullspace_full_rank_is_empty() {
        let ns = nullspace(m(&[&[1, 0], &[0, 1]]), 2);
        assert!(ns.is_empty());
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-3).into(), 4.into()),
        ];
        let ints = primitive_integer_vector(&v);
        assert_eq!(ints, vec![BigInt::from(2), BigInt::from(-3)]);
    }
}
