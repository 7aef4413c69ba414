//! Exact integer lattice algorithms: Smith normal form, preimages under
//! integer maps, and quotients of `Z^n` by sublattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{IntMatrix, IntVector};

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal with a divisibility
/// chain on its nonnegative diagonal.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// All `min(rows, cols)` diagonal entries of `D`, zeros included.
    pub invariant_factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| !d.is_zero()).count()
    }
}

fn row_axpy(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        let s = &m[(source, j)] * q;
        if !s.is_zero() {
            m[(target, j)] -= s;
        }
    }
}

fn col_axpy(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for i in 0..m.rows() {
        let s = &m[(i, source)] * q;
        if !s.is_zero() {
            m[(i, target)] -= s;
        }
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for j in 0..m.cols() {
        let x = -m[(i, j)].clone();
        m[(i, j)] = x;
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (rows, cols) = a.shape();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &d[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&pivot);
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&pivot);
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut d, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }

    let invariant_factors = (0..rows.min(cols)).map(|i| d[(i, i)].clone()).collect();
    SnfResult {
        u,
        d,
        v,
        invariant_factors,
    }
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let aug = m.to_rational().hstack(&IntMatrix::identity(n).to_rational());
    let r = linalg::rref(&aug);
    assert_eq!(r.rank(), n, "matrix is singular");
    IntMatrix::from_fn(n, n, |i, j| {
        let x: &BigRational = &r.matrix[(i, n + j)];
        assert!(x.is_integer(), "matrix is not unimodular");
        x.to_integer()
    })
}

/// Solves `B·m = v` over the integers.
///
/// Returns `Ok(None)` when `v` is not in the image lattice `B(Z^cols)`.
pub fn lattice_membership(b: &IntMatrix, v: &[BigInt]) -> Result<Option<IntVector>> {
    if v.len() != b.rows() {
        return Err(Error::DimensionMismatch {
            expected: b.rows(),
            found: v.len(),
        });
    }
    Ok(Preimage::new(b).solve(v))
}

/// Reusable SNF data for repeated preimage queries against one matrix.
#[derive(Clone, Debug)]
pub struct Preimage {
    snf: SnfResult,
    rank: usize,
}

impl Preimage {
    pub fn new(b: &IntMatrix) -> Self {
        let snf = smith_normal_form(b);
        let rank = snf.rank();
        Self { snf, rank }
    }

    pub fn solve(&self, v: &[BigInt]) -> Option<IntVector> {
        let uv = self.snf.u.mul_vec(v);
        let cols = self.snf.v.rows();
        let mut y = vec![BigInt::zero(); cols];
        for (i, x) in uv.iter().enumerate() {
            if i < self.rank {
                let (q, r) = x.div_rem(&self.snf.invariant_factors[i]);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !x.is_zero() {
                return None;
            }
        }
        Some(self.snf.v.mul_vec(&y))
    }

    pub fn snf(&self) -> &SnfResult {
        &self.snf
    }
}

/// Basis (as columns) of the saturated lattice `{x ∈ Z^cols : A·x = 0}`.
pub fn kernel_lattice(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let cols: Vec<usize> = (r..a.cols()).collect();
    snf.v.select_cols(&cols)
}

/// Row-style Hermite normal form with zero rows dropped. Used only to give
/// lattice bases a canonical presentation.
pub fn hermite_rows(a: &IntMatrix) -> IntMatrix {
    let mut m = a.clone();
    let (rows, cols) = m.shape();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (r..rows).filter(|&i| !m[(i, c)].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let p = *nonzero
                .iter()
                .min_by_key(|&&i| m[(i, c)].abs())
                .expect("nonempty");
            m.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let q = m[(i, c)].div_floor(&m[(r, c)]);
                row_axpy(&mut m, i, r, &q);
                done &= m[(i, c)].is_zero();
            }
            if done {
                break;
            }
        }
        if m[(r, c)].is_zero() {
            continue;
        }
        if m[(r, c)].is_negative() {
            negate_row(&mut m, r);
        }
        for i in 0..r {
            let q = m[(i, c)].div_floor(&m[(r, c)]);
            row_axpy(&mut m, i, r, &q);
        }
        r += 1;
    }
    m.select_rows(&(0..r).collect::<Vec<_>>())
}

/// `Z^ambient_rank / Λ`, realized as `Z^free ⊕ ⊕ Z/t_i` via SNF.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    pub ambient_rank: usize,
    pub sublattice_basis: IntMatrix,
    /// Rows giving the free coordinates of the projection.
    pub free_projection: IntMatrix,
    /// `(modulus, row)` pairs giving the torsion coordinates.
    pub torsion_projection: Vec<(BigInt, IntVector)>,
    /// `ambient_rank × free` matrix with `free_projection · section = I`.
    pub section: IntMatrix,
}

impl LatticeQuotient {
    pub fn free_rank(&self) -> usize {
        self.free_projection.rows()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.torsion_projection.iter().map(|(d, _)| d.clone()).collect()
    }

    /// Image of `v`: free coordinates followed by torsion residues in `[0, t_i)`.
    pub fn project(&self, v: &[BigInt]) -> IntVector {
        let mut out = self.free_projection.mul_vec(v);
        for (modulus, row) in &self.torsion_projection {
            let x: BigInt = row.iter().zip(v).map(|(a, b)| a * b).sum();
            out.push(x.mod_floor(modulus));
        }
        out
    }

    /// A lift of free coordinates back to the ambient lattice.
    pub fn lift(&self, free: &[BigInt]) -> IntVector {
        self.section.mul_vec(free)
    }
}

/// Quotient of `Z^ambient_rank` by the lattice spanned by the columns of `lambda`.
pub fn reduce_by_sublattice(ambient_rank: usize, lambda: &IntMatrix) -> Result<LatticeQuotient> {
    if lambda.rows() != ambient_rank {
        return Err(Error::DimensionMismatch {
            expected: ambient_rank,
            found: lambda.rows(),
        });
    }
    let k = lambda.cols();
    let (u, factors) = if k == 0 {
        (IntMatrix::identity(ambient_rank), Vec::new())
    } else {
        let snf = smith_normal_form(lambda);
        if snf.rank() < k {
            return Err(Error::DependentGenerators);
        }
        (snf.u, snf.invariant_factors)
    };
    let free_rows: Vec<usize> = (k..ambient_rank).collect();
    let free_projection = u.select_rows(&free_rows);
    let torsion_projection = factors
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_one())
        .map(|(i, d)| {
            let row = u.row(i).iter().map(|x| x.mod_floor(d)).collect();
            (d.clone(), row)
        })
        .collect();
    let section = unimodular_inverse(&u).select_cols(&free_rows);
    Ok(LatticeQuotient {
        ambient_rank,
        sublattice_basis: lambda.clone(),
        free_projection,
        torsion_projection,
        section,
    })
}

pub fn gcd_of(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ivec;

    fn square_cone_rays() -> IntMatrix {
        IntMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0], &[-1, 1, 1], &[0, 0, 1]], 3)
    }

    fn check_snf(a: &IntMatrix, s: &SnfResult) {
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        let n = s.invariant_factors.len();
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        for i in 0..n {
            assert!(!s.invariant_factors[i].is_negative());
            if i + 1 < n && !s.invariant_factors[i].is_zero() {
                assert!(s.invariant_factors[i + 1].is_multiple_of(&s.invariant_factors[i]));
            }
        }
        // unimodularity: inverse exists over Z
        let _ = unimodular_inverse(&s.u);
        let _ = unimodular_inverse(&s.v);
    }

    #[test]
    fn snf_identity_and_scalar() {
        let i2 = IntMatrix::identity(2);
        let s = smith_normal_form(&i2);
        assert_eq!(s.d, i2);
        assert_eq!(s.invariant_factors, ivec(&[1, 1]));
        let two = IntMatrix::from_i64_rows(&[&[2]], 1);
        assert_eq!(smith_normal_form(&two).d, two);
    }

    #[test]
    fn snf_square_cone_has_free_cokernel_of_rank_one() {
        let l = square_cone_rays();
        let s = smith_normal_form(&l);
        check_snf(&l, &s);
        assert_eq!(s.invariant_factors, ivec(&[1, 1, 1]));
        assert_eq!(s.d.rows() - s.rank(), 1);
        // reconstruct A = U^-1 D V^-1
        let back = &(&unimodular_inverse(&s.u) * &s.d) * &unimodular_inverse(&s.v);
        assert_eq!(back, l);
    }

    #[test]
    fn snf_with_torsion() {
        let a = IntMatrix::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]], 3);
        let s = smith_normal_form(&a);
        check_snf(&a, &s);
        assert_eq!(s.invariant_factors, ivec(&[2, 6, 12]));
    }

    #[test]
    fn membership_in_square_cone_image() {
        let l = square_cone_rays();
        assert_eq!(lattice_membership(&l, &ivec(&[1, -1, 0, 0])).unwrap(), None);
        assert_eq!(
            lattice_membership(&l, &ivec(&[1, 0, 0, 1])).unwrap(),
            Some(ivec(&[1, 0, 1]))
        );
        let id = IntMatrix::identity(3);
        assert_eq!(
            lattice_membership(&id, &ivec(&[4, -7, 2])).unwrap(),
            Some(ivec(&[4, -7, 2]))
        );
        assert!(matches!(
            lattice_membership(&l, &ivec(&[1, 2])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn quotients() {
        let q = reduce_by_sublattice(2, &IntMatrix::zeros(2, 0)).unwrap();
        assert_eq!(q.free_projection, IntMatrix::identity(2));

        let q = reduce_by_sublattice(2, &IntMatrix::from_i64_rows(&[&[0], &[1]], 1)).unwrap();
        assert_eq!(q.free_rank(), 1);
        assert!(q.torsion().is_empty());
        let a = q.project(&ivec(&[3, 5]))[0].clone();
        let b = q.project(&ivec(&[3, -2]))[0].clone();
        assert_eq!(a, b);
        assert_eq!(q.project(&ivec(&[1, 0])), q.project(&ivec(&[1, 9])));
        assert_ne!(q.project(&ivec(&[1, 0])), q.project(&ivec(&[2, 0])));
        assert_eq!(q.project(&q.lift(&ivec(&[7]))), ivec(&[7]));

        let q = reduce_by_sublattice(1, &IntMatrix::from_i64_rows(&[&[2]], 1)).unwrap();
        assert_eq!(q.free_rank(), 0);
        assert_eq!(q.torsion(), ivec(&[2]));

        let dep = IntMatrix::from_i64_rows(&[&[1, 2], &[1, 2]], 2);
        assert_eq!(reduce_by_sublattice(2, &dep).unwrap_err(), Error::DependentGenerators);
    }

    #[test]
    fn hermite_normalizes_sign_and_basis() {
        let a = IntMatrix::from_i64_rows(&[&[-1, -1, -1]], 3);
        assert_eq!(hermite_rows(&a), IntMatrix::from_i64_rows(&[&[1, 1, 1]], 3));
        let b = IntMatrix::from_i64_rows(&[&[1, 1, 1, 1], &[0, 0, 1, 1]], 4);
        assert_eq!(
            hermite_rows(&b),
            IntMatrix::from_i64_rows(&[&[1, 1, 0, 0], &[0, 0, 1, 1]], 4)
        );
    }

    #[test]
    fn kernel_of_rank_deficient_map() {
        let a = IntMatrix::from_i64_rows(&[&[1, 0], &[-1, 0]], 2);
        let k = kernel_lattice(&a);
        assert_eq!(k.cols(), 1);
        assert!((&a * &k).is_zero());
        assert_eq!(gcd_of(&k.column(0)), BigInt::one());
    }
}
