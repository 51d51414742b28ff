//! Exact linear algebra: kernel lattices of integer matrices and Gaussian
//! elimination over the rationals.

use crate::rational::{Int, Rat};
use num::{Integer, One, Signed, Zero};

pub fn gcd_tuple(values: &[u64]) -> u64 {
    values.iter().fold(0u64, |g, &v| g.gcd(&v))
}

/// Basis of the integer kernel `{ v : M v = 0 }` of an `rows x cols`
/// integer matrix, as rows of the returned matrix.
///
/// Computed by integer row reduction of the augmented matrix
/// `[M^T | I]`: unimodular row operations carry the identity block along,
/// and the rows whose `M^T` part vanishes record kernel vectors.  The
/// result is then put into a Hermite-style normal form (positive pivots,
/// entries above a pivot reduced), so the basis is canonical.
pub fn integer_kernel_basis(matrix: &[Vec<Int>], cols: usize) -> Vec<Vec<Int>> {
    let rows = matrix.len();
    debug_assert!(matrix.iter().all(|r| r.len() == cols));
    // Augmented working matrix: cols rows, each [M^T row | identity row].
    let width = rows + cols;
    let mut work: Vec<Vec<Int>> = (0..cols)
        .map(|j| {
            let mut row: Vec<Int> = (0..rows).map(|i| matrix[i][j].clone()).collect();
            row.extend((0..cols).map(|k| {
                if k == j {
                    Int::from(1)
                } else {
                    Int::zero()
                }
            }));
            row
        })
        .collect();

    // Eliminate the left block column by column with gcd pivoting.
    let mut pivot_row = 0usize;
    for col in 0..rows {
        // Repeatedly reduce entries in this column against each other until
        // at most one nonzero remains at/below pivot_row.
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..cols {
                if !work[r][col].is_zero() {
                    best = Some(match best {
                        Some(b) if work[b][col].abs() <= work[r][col].abs() => b,
                        _ => r,
                    });
                }
            }
            let Some(p) = best else { break };
            work.swap(pivot_row, p);
            let mut done = true;
            for r in pivot_row + 1..cols {
                if work[r][col].is_zero() {
                    continue;
                }
                let q = div_round(&work[r][col], &work[pivot_row][col]);
                if !q.is_zero() {
                    for k in 0..width {
                        let delta = &q * &work[pivot_row][k];
                        work[r][k] -= delta;
                    }
                }
                if !work[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                pivot_row += 1;
                break;
            }
        }
    }

    // Rows with a vanishing left block span the kernel.
    let mut basis: Vec<Vec<Int>> = work
        .into_iter()
        .filter(|row| row[..rows].iter().all(Int::is_zero))
        .map(|row| row[rows..].to_vec())
        .collect();
    hermite_rows(&mut basis);
    basis
}

/// Round-to-nearest integer quotient, so remainders satisfy |r| <= |b|/2.
fn div_round(a: &Int, b: &Int) -> Int {
    let two = Int::from(2);
    let (q, r) = a.div_rem(b);
    if &r.abs() * &two > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// In-place Hermite-style normalization of a full-rank row basis: row
/// echelon by leftmost nonzero, positive pivots, entries above each pivot
/// reduced into `[0, pivot)`.
fn hermite_rows(rows: &mut Vec<Vec<Int>>) {
    if rows.is_empty() {
        return;
    }
    let width = rows[0].len();
    let n = rows.len();
    let mut rank = 0usize;
    for col in 0..width {
        loop {
            let mut best: Option<usize> = None;
            for r in rank..n {
                if !rows[r][col].is_zero() {
                    best = Some(match best {
                        Some(b) if rows[b][col].abs() <= rows[r][col].abs() => b,
                        _ => r,
                    });
                }
            }
            let Some(p) = best else { break };
            rows.swap(rank, p);
            let mut done = true;
            for r in rank + 1..n {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = div_round(&rows[r][col], &rows[rank][col]);
                if !q.is_zero() {
                    for k in 0..width {
                        let delta = &q * &rows[rank][k];
                        rows[r][k] -= delta;
                    }
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                if rows[rank][col].is_negative() {
                    for k in 0..width {
                        rows[rank][k] = -rows[rank][k].clone();
                    }
                }
                // Reduce entries above the pivot.
                for r in 0..rank {
                    let q = rows[r][col].div_floor(&rows[rank][col]);
                    if !q.is_zero() {
                        for k in 0..width {
                            let delta = &q * &rows[rank][k];
                            rows[r][k] -= delta;
                        }
                    }
                }
                rank += 1;
                break;
            }
        }
        if rank == n {
            break;
        }
    }
}

/// Reduced row echelon form in place; returns the pivot column of each
/// pivot row.
fn rref(matrix: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = matrix.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = matrix[0].len();
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !matrix[r][col].is_zero()) else {
            continue;
        };
        matrix.swap(rank, p);
        let inv = Rat::one() / &matrix[rank][col];
        for k in col..cols {
            matrix[rank][k] *= &inv;
        }
        for r in 0..rows {
            if r != rank && !matrix[r][col].is_zero() {
                let factor = matrix[r][col].clone();
                for k in col..cols {
                    let delta = &factor * &matrix[rank][k];
                    matrix[r][k] -= delta;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    pivots
}

/// One solution of `M x = b` over the rationals, if any.
pub fn solve_rational(matrix: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let cols = matrix.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rat>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None; // pivot in the augmented column: inconsistent
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = aug[row][cols].clone();
    }
    Some(x)
}

/// Basis of the rational kernel `{ v : M v = 0 }`.
pub fn rational_kernel_basis(matrix: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut work: Vec<Vec<Rat>> = matrix.to_vec();
    let pivots = rref(&mut work);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (row, &col) in pivots.iter().enumerate() {
            v[col] = -work[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| Int::from(v)).collect())
            .collect()
    }

    fn check_kernel(matrix: &[Vec<Int>], basis: &[Vec<Int>]) {
        for v in basis {
            for row in matrix {
                let dot: Int = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero(), "basis vector not in kernel");
            }
        }
    }

    #[test]
    fn kernel_of_single_row() {
        let mat = m(&[&[2, 3]]);
        let basis = integer_kernel_basis(&mat, 2);
        assert_eq!(basis, m(&[&[3, -2]]));
        check_kernel(&mat, &basis);
    }

    #[test]
    fn injective_matrix_has_trivial_kernel() {
        let mat = m(&[&[1, 0], &[0, 1], &[5, 7]]);
        assert!(integer_kernel_basis(&mat, 2).is_empty());
    }

    #[test]
    fn rank_one_in_three_columns() {
        let mat = m(&[&[6, 10, 15]]);
        let basis = integer_kernel_basis(&mat, 3);
        assert_eq!(basis.len(), 2);
        check_kernel(&mat, &basis);
        // A primitive kernel vector such as (5, -3, 0) must be an integer
        // combination of the basis; for a Hermite basis of a saturated
        // lattice it suffices that it reduces to zero.
        let target = vec![Int::from(5), Int::from(-3), Int::from(0)];
        assert!(in_span(&basis, &target));
        let target2 = vec![Int::from(0), Int::from(3), Int::from(-2)];
        assert!(in_span(&basis, &target2));
    }

    #[test]
    fn zero_matrix_full_kernel() {
        let mat = m(&[&[0, 0, 0]]);
        let basis = integer_kernel_basis(&mat, 3);
        assert_eq!(basis, m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
    }

    #[test]
    fn degree_matching_kernel() {
        // degrees of x^2 = y^3 = z^5 agree on the kernel of [[2,-3,0],[0,3,-5]]
        let mat = m(&[&[2, -3, 0], &[0, 3, -5]]);
        let basis = integer_kernel_basis(&mat, 3);
        assert_eq!(basis, m(&[&[15, 10, 6]]));
    }

    #[test]
    fn gcd_tuple_brute_force() {
        // maximal common divisor for all tuples with entries <= 12, len <= 4
        for a in 1..=12u64 {
            for b in 1..=12u64 {
                for c in [1u64, 7, 12] {
                    for len in 2..=4usize {
                        let tuple = [a, b, c, a][..len].to_vec();
                        let g = gcd_tuple(&tuple);
                        assert!(tuple.iter().all(|&v| v % g == 0));
                        assert!(
                            (g + 1..=12).all(|h| tuple.iter().any(|&v| v % h != 0)),
                            "gcd not maximal for {tuple:?}"
                        );
                    }
                }
            }
        }
        assert_eq!(gcd_tuple(&[6, 3]), 3);
        assert_eq!(gcd_tuple(&[1, 9]), 1);
        assert_eq!(gcd_tuple(&[4, 6]), 2);
    }

    #[test]
    fn rational_solve_and_kernel() {
        use crate::rational::rat;
        let mat = vec![
            vec![rat(1), rat(2), rat(1)],
            vec![rat(0), rat(1), rat(-1)],
        ];
        let x = solve_rational(&mat, &[rat(4), rat(1)]).unwrap();
        // verify M x = b
        assert_eq!(&x[0] + &(&x[1] * &rat(2)) + &x[2], rat(4));
        assert_eq!(&x[1] - &x[2], rat(1));
        let ker = rational_kernel_basis(&mat, 3);
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0], vec![rat(-3), rat(1), rat(1)]);
        // inconsistent system
        let bad = vec![vec![rat(1), rat(1)], vec![rat(2), rat(2)]];
        assert!(solve_rational(&bad, &[rat(1), rat(3)]).is_none());
    }

    fn in_span(basis: &[Vec<Int>], target: &[Int]) -> bool {
        let mut v = target.to_vec();
        for row in basis {
            let Some(p) = row.iter().position(|x| !x.is_zero()) else {
                continue;
            };
            if v[p].is_zero() {
                continue;
            }
            let (q, r) = v[p].div_rem(&row[p]);
            if !r.is_zero() {
                return false;
            }
            for k in 0..v.len() {
                let delta = &q * &row[k];
                v[k] -= delta;
            }
        }
        v.iter().all(Int::is_zero)
    }
}
