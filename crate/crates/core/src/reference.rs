//! Slow reference computations used to cross-check the main engines.

use num_rational::BigRational;
use num_traits::One;
use rand::Rng;

use crate::linalg;
use crate::matrix::QMatrix;

/// Cohomology dimensions `H^0..H^max_p` of the order complex of a finite
/// strict order, with rational coefficients. Simplices are enumerated as
/// totally ordered subsets via bitmasks, so this only suits small posets.
pub fn order_complex_cohomology(less: &[Vec<bool>], max_p: usize) -> Vec<usize> {
    let n = less.len();
    assert!(n <= 16, "reference routine is exponential in the poset size");
    let comparable = |i: usize, j: usize| less[i][j] || less[j][i];
    let mut simplices: Vec<Vec<u32>> = vec![Vec::new(); max_p + 2];
    for mask in 1u32..(1u32 << n) {
        let k = mask.count_ones() as usize;
        if k > max_p + 2 {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let chain = members
            .iter()
            .enumerate()
            .all(|(a, &i)| members[a + 1..].iter().all(|&j| comparable(i, j)));
        if chain {
            simplices[k - 1].push(mask);
        }
    }
    // vertices of a simplex listed in the order of the poset
    let ordered = |mask: u32| -> Vec<usize> {
        let mut v: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let below: Vec<usize> = v.iter().map(|&i| v.iter().filter(|&&j| less[j][i]).count()).collect();
        let mut keyed: Vec<(usize, usize)> = below.into_iter().zip(v.drain(..)).collect();
        keyed.sort_unstable();
        keyed.into_iter().map(|(_, i)| i).collect::<Vec<_>>()
    };
    // boundary ∂_p : C_p → C_{p-1}, as a |C_{p-1}| × |C_p| matrix
    let boundary_rank = |p: usize| -> usize {
        if p == 0 || p > max_p + 1 {
            return 0;
        }
        let rows = &simplices[p - 1];
        let cols = &simplices[p];
        let mut b = QMatrix::zeros(rows.len(), cols.len());
        for (j, &s) in cols.iter().enumerate() {
            for (k, v) in ordered(s).into_iter().enumerate() {
                let face = s & !(1 << v);
                let i = rows.iter().position(|&f| f == face).expect("faces of chains are chains");
                b[(i, j)] = if k % 2 == 0 { BigRational::one() } else { -BigRational::one() };
            }
        }
        linalg::rank(&b)
    };
    let ranks: Vec<usize> = (0..=max_p + 1).map(boundary_rank).collect();
    (0..=max_p)
        .map(|p| simplices[p].len() - ranks[p] - ranks[p + 1])
        .collect()
}

/// A random strict order on `n` elements: each pair `i < j` (as indices) is
/// related with probability `density`, then closed transitively.
pub fn random_strict_order<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Vec<Vec<bool>> {
    let mut less = vec![vec![false; n]; n];
    for (i, row) in less.iter_mut().enumerate() {
        for cell in &mut row[i + 1..] {
            *cell = rng.gen_bool(density);
        }
    }
    for k in 0..n {
        let through = less[k].clone();
        for row in less.iter_mut() {
            if row[k] {
                for (cell, &t) in row.iter_mut().zip(&through) {
                    *cell |= t;
                }
            }
        }
    }
    less
}

/// Cover relations of a strict order.
pub fn cover_relations(less: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = less.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if less[i][j] && !(0..n).any(|k| less[i][k] && less[k][j]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Euler characteristic `Σ (−1)^p |C_p|` of the order complex.
pub fn euler_characteristic(less: &[Vec<bool>]) -> i64 {
    let n = less.len();
    let mut total = 0i64;
    for mask in 1u32..(1u32 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let chain = members
            .iter()
            .enumerate()
            .all(|(a, &i)| members[a + 1..].iter().all(|&j| less[i][j] || less[j][i]));
        if chain {
            total += if members.len() % 2 == 1 { 1 } else { -1 };
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn circle_and_point() {
        let mut crown = vec![vec![false; 4]; 4];
        for (i, j) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
            crown[i][j] = true;
        }
        assert_eq!(order_complex_cohomology(&crown, 2), vec![1, 1, 0]);
        let chain = vec![vec![false, true, true], vec![false, false, true], vec![false; 3]];
        assert_eq!(order_complex_cohomology(&chain, 2), vec![1, 0, 0]);
    }

    #[test]
    fn euler_characteristic_matches_betti_numbers() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let less = random_strict_order(&mut rng, 7, 0.4);
            let betti = order_complex_cohomology(&less, 6);
            let chi: i64 = betti
                .iter()
                .enumerate()
                .map(|(p, &b)| if p % 2 == 0 { b as i64 } else { -(b as i64) })
                .sum();
            assert_eq!(chi, euler_characteristic(&less));
        }
    }
}
