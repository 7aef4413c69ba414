//! Exact linear algebra over the rationals: reduced echelon forms, kernels,
//! and subspaces with canonical bases.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::matrix::{QMatrix, QVector};

/// Reduced row echelon form. Only the nonzero rows are kept.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: QMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` modulo the row space; the result vanishes on pivot columns.
    pub fn reduce(&self, v: &[BigRational]) -> QVector {
        let mut out = v.to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (j, x) in self.matrix.row(k).iter().enumerate() {
                if !x.is_zero() {
                    out[j] -= &f * x;
                }
            }
        }
        out
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the row space.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<QVector> {
        let coords: QVector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        if self.reduce(v).iter().all(Zero::is_zero) {
            Some(coords)
        } else {
            None
        }
    }
}

pub fn rref(m: &QMatrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].recip();
        for j in c..cols {
            if !a[(r, j)].is_zero() {
                a[(r, j)] = &a[(r, j)] * &inv;
            }
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                if !a[(r, j)].is_zero() {
                    let delta = &f * &a[(r, j)];
                    a[(i, j)] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let matrix = a.select_rows(&(0..r).collect::<Vec<_>>());
    Rref { matrix, pivots }
}

pub fn rank(m: &QMatrix) -> usize {
    rref(m).rank()
}

/// Basis (as rows, in reduced echelon form) of `{x : m·x = 0}`.
pub fn nullspace(m: &QMatrix) -> QMatrix {
    let cols = m.cols();
    let r = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !r.pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![BigRational::zero(); cols];
        v[f] = BigRational::one();
        for (k, &p) in r.pivots.iter().enumerate() {
            v[p] = -r.matrix[(k, f)].clone();
        }
        basis.push(v);
    }
    rref(&QMatrix::from_rows(basis, cols)).matrix
}

pub fn is_injective(m: &QMatrix) -> bool {
    rank(m) == m.cols()
}

pub fn is_isomorphism(m: &QMatrix) -> bool {
    m.rows() == m.cols() && is_injective(m)
}

/// A subspace of `Q^ambient`, stored by its reduced echelon basis (rows).
///
/// Two subspaces are equal iff their echelon bases are identical, but
/// comparisons go through mutual containment so that callers never depend
/// on that.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Rref,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Rref {
                matrix: QMatrix::zeros(0, ambient),
                pivots: Vec::new(),
            },
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(&QMatrix::identity(ambient))
    }

    /// Row space of `rows`.
    pub fn span(rows: &QMatrix) -> Self {
        Self {
            ambient: rows.cols(),
            basis: rref(rows),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    /// Echelon basis, one vector per row.
    pub fn basis(&self) -> &QMatrix {
        &self.basis.matrix
    }

    pub fn contains_vector(&self, v: &[BigRational]) -> bool {
        self.basis.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains_vector(other.basis().row(i)))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains(other) && other.contains(self)
    }

    /// Coordinates of `v` with respect to the echelon basis.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<QVector> {
        self.basis.coordinates(v)
    }

    /// Linear equations cutting out the subspace: `x ∈ self ⟺ eq·x = 0`.
    pub fn equations(&self) -> QMatrix {
        nullspace(self.basis())
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        if self.dim() == self.ambient {
            return other.clone();
        }
        if other.dim() == other.ambient {
            return self.clone();
        }
        let eqs = self.equations().vstack(&other.equations());
        Subspace::span(&nullspace(&eqs))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(&self.basis().vstack(other.basis()))
    }

    /// Canonical key usable for hashing sets of subspaces.
    pub fn key(&self) -> Vec<Vec<String>> {
        self.basis
            .matrix
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.to_string()).collect())
            .collect()
    }

    /// Matrix expressing the inclusion `self ⊆ target` in echelon bases.
    /// Returns `None` when `self` is not contained in `target`.
    pub fn inclusion_into(&self, target: &Subspace) -> Option<QMatrix> {
        let mut m = QMatrix::zeros(target.dim(), self.dim());
        for j in 0..self.dim() {
            let c = target.coordinates(self.basis().row(j))?;
            for (i, x) in c.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        Some(m)
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.same_as(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::qvec;

    #[test]
    fn nullspace_of_rank_one() {
        let m = QMatrix::from_i64_rows(&[&[1, -1, 1, -1]], 4);
        let k = nullspace(&m);
        assert_eq!(k.rows(), 3);
        assert!((&m * &k.transpose()).is_zero());
    }

    #[test]
    fn coordinates_outside_span_are_none() {
        let s = Subspace::span(&QMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 1, 1]], 3));
        assert_eq!(s.coordinates(&qvec(&[2, 3, 3])), Some(qvec(&[2, 3])));
        assert_eq!(s.coordinates(&qvec(&[0, 1, 0])), None);
    }

    #[test]
    fn intersection_of_planes_is_line() {
        let p = Subspace::span(&QMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0]], 3));
        let q = Subspace::span(&QMatrix::from_i64_rows(&[&[0, 1, 0], &[0, 0, 1]], 3));
        let l = p.intersect(&q);
        assert_eq!(l.dim(), 1);
        assert!(l.contains_vector(&qvec(&[0, 5, 0])));
        assert!(p.contains(&l) && q.contains(&l));
    }
}
