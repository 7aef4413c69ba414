//! Completion procedure for minimal nonnegative solutions of linear
//! Diophantine systems `A·x = b`, `x ∈ N^n`.
//!
//! The search grows vectors one unit at a time and only along coordinates
//! whose column points back towards the solution set (`⟨A·x − b, A·e_j⟩ < 0`).
//! Every minimal solution is reachable this way, and pruning against the
//! solutions already found (together with the minimal solutions of the
//! homogeneous system) makes the search finite by Dickson's lemma.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::matrix::{IntMatrix, IntVector};

pub(crate) type Count = Vec<u64>;

fn dominates(x: &[u64], y: &[u64]) -> bool {
    x.iter().zip(y).all(|(a, b)| a >= b)
}

fn dominated_by_any(x: &[u64], set: &[Count]) -> bool {
    set.iter().any(|s| dominates(x, s))
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn search(columns: &[IntVector], start: Vec<(Count, IntVector)>, prune: &[Count]) -> Vec<Count> {
    let mut solutions: Vec<Count> = Vec::new();
    let mut frontier = start;
    while !frontier.is_empty() {
        let mut open = Vec::with_capacity(frontier.len());
        for (x, r) in frontier {
            if r.iter().all(Zero::is_zero) {
                if !dominated_by_any(&x, &solutions) {
                    solutions.push(x);
                }
            } else {
                open.push((x, r));
            }
        }
        let mut next: BTreeMap<Count, IntVector> = BTreeMap::new();
        for (x, r) in &open {
            for (j, col) in columns.iter().enumerate() {
                if !dot(r, col).is_negative() {
                    continue;
                }
                let mut y = x.clone();
                y[j] += 1;
                if next.contains_key(&y)
                    || dominated_by_any(&y, &solutions)
                    || dominated_by_any(&y, prune)
                {
                    continue;
                }
                let ry: IntVector = r.iter().zip(col).map(|(a, b)| a + b).collect();
                next.insert(y, ry);
            }
        }
        frontier = next.into_iter().collect();
    }
    solutions.sort();
    solutions
}

fn columns_of(a: &IntMatrix) -> Vec<IntVector> {
    (0..a.cols()).map(|j| a.column(j)).collect()
}

/// Minimal nonzero solutions of `A·x = 0` over `N^n` (the Hilbert basis of
/// the solution monoid).
pub(crate) fn hilbert_basis(a: &IntMatrix) -> Vec<Count> {
    let n = a.cols();
    let columns = columns_of(a);
    let start = (0..n)
        .map(|j| {
            let mut x = vec![0; n];
            x[j] = 1;
            (x, columns[j].clone())
        })
        .collect();
    search(&columns, start, &[])
}

/// Minimal solutions of `A·x = b` over `N^n`. `homogeneous` must be the
/// Hilbert basis of `A·x = 0`; it guarantees termination and never removes
/// a minimal solution (a minimal solution cannot dominate a nonzero
/// homogeneous one).
pub(crate) fn minimal_solutions(a: &IntMatrix, b: &[BigInt], homogeneous: &[Count]) -> Vec<Count> {
    let n = a.cols();
    let columns = columns_of(a);
    let r0: IntVector = b.iter().map(|x| -x).collect();
    search(&columns, vec![(vec![0; n], r0)], homogeneous)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ivec;

    /// Oracle: all minimal solutions with entries bounded by `bound`.
    fn brute_force(a: &IntMatrix, b: &[BigInt], bound: u64) -> Vec<Count> {
        let n = a.cols();
        let mut all = Vec::new();
        let mut x = vec![0u64; n];
        loop {
            let xi: IntVector = x.iter().map(|&v| BigInt::from(v)).collect();
            if a.mul_vec(&xi) == b {
                all.push(x.clone());
            }
            let mut k = 0;
            loop {
                if k == n {
                    let mut mins: Vec<Count> = all
                        .iter()
                        .filter(|s| !all.iter().any(|t| t != *s && dominates(s, t)))
                        .cloned()
                        .collect();
                    mins.sort();
                    return mins;
                }
                x[k] += 1;
                if x[k] <= bound {
                    break;
                }
                x[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn hilbert_basis_of_square_relation() {
        // x1 - x2 + x3 - x4 = 0
        let a = IntMatrix::from_i64_rows(&[&[1, -1, 1, -1]], 4);
        let h = hilbert_basis(&a);
        assert_eq!(
            h,
            vec![vec![0, 0, 1, 1], vec![0, 1, 1, 0], vec![1, 0, 0, 1], vec![1, 1, 0, 0]]
        );
    }

    #[test]
    fn oscillating_system_without_solutions_terminates() {
        // 3x - 3y = 1 has no solutions; the homogeneous basis {(1,1)} stops the cycle
        let a = IntMatrix::from_i64_rows(&[&[3, -3]], 2);
        let h = hilbert_basis(&a);
        assert_eq!(h, vec![vec![1, 1]]);
        assert!(minimal_solutions(&a, &ivec(&[1]), &h).is_empty());
    }

    #[test]
    fn matches_brute_force_on_small_systems() {
        let systems: Vec<(IntMatrix, IntVector)> = vec![
            (IntMatrix::from_i64_rows(&[&[1, -1, 1, -1]], 4), ivec(&[2])),
            (IntMatrix::from_i64_rows(&[&[1, -1, 1, -1]], 4), ivec(&[-3])),
            (IntMatrix::from_i64_rows(&[&[2, -3, 1]], 3), ivec(&[1])),
            (IntMatrix::from_i64_rows(&[&[1, 2, -1, 0], &[0, 1, 1, -2]], 4), ivec(&[1, 0])),
        ];
        for (a, b) in systems {
            let h = hilbert_basis(&a);
            assert_eq!(minimal_solutions(&a, &b, &h), brute_force(&a, &b, 6), "system {a:?} = {b:?}");
        }
    }
}
