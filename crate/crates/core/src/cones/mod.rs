//! Rational polyhedral cones given by their ray forms, the preorder `≤_σ` on
//! the character lattice, and the minimal elements of the up-sets
//! `P_c = {m ∈ M : L(m) ≥ c}` that drive the lifting algorithm.
//!
//! A [`Cone`] is cheap to clone; clones share a synchronized memo cache of
//! minimal-element sets keyed by Cox degree. Cached values are pure
//! functions of the key, so concurrent fills are harmless.

mod completion;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{fmt_vec, Error, Result};
use crate::lattice::{self, LatticeQuotient, Preimage};
use crate::matrix::{IntMatrix, IntVector};

use completion::Count;

/// A Cox degree `c ∈ Z^{σ(1)}`, one entry per ray.
pub type DegreeCox = IntVector;

/// The `≤_σ`-minimal lattice points of `P_c`, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalElements {
    pub for_degree: DegreeCox,
    pub elements: Vec<IntVector>,
}

/// The coset condition `u + c ∈ L(M)` for `u ∈ N^n` as a linear
/// Diophantine system in `(u, k⁺, k⁻)`: equations from the cokernel rows of
/// the SNF, congruences modulo nontrivial invariant factors via slack pairs.
#[derive(Debug)]
struct CosetSystem {
    matrix: IntMatrix,
    /// Rows of `U` in the order of the system's equations.
    rows: Vec<IntVector>,
    /// Modulus for congruence rows, `None` for equations.
    moduli: Vec<Option<BigInt>>,
}

impl CosetSystem {
    fn new(l: &IntMatrix, preimage: &Preimage) -> Self {
        let snf = preimage.snf();
        let n = l.rows();
        let rank = snf.rank();
        let mut rows = Vec::new();
        let mut moduli = Vec::new();
        for i in 0..n {
            if i < rank {
                let d = &snf.invariant_factors[i];
                if d.is_one() {
                    continue;
                }
                rows.push(snf.u.row(i).iter().map(|x| x.mod_floor(d)).collect());
                moduli.push(Some(d.clone()));
            } else {
                rows.push(snf.u.row(i).to_vec());
                moduli.push(None);
            }
        }
        let slack = moduli.iter().filter(|m| m.is_some()).count();
        let mut matrix = IntMatrix::zeros(rows.len(), n + 2 * slack);
        let mut t = 0;
        for (i, (row, modulus)) in rows.iter().zip(&moduli).enumerate() {
            for (j, x) in row.iter().enumerate() {
                matrix[(i, j)] = x.clone();
            }
            if let Some(d) = modulus {
                matrix[(i, n + t)] = -d.clone();
                matrix[(i, n + slack + t)] = d.clone();
                t += 1;
            }
        }
        Self {
            matrix,
            rows,
            moduli,
        }
    }

    fn rhs(&self, c: &[BigInt]) -> IntVector {
        self.rows
            .iter()
            .zip(&self.moduli)
            .map(|(row, modulus)| {
                let x: BigInt = -row.iter().zip(c).map(|(a, b)| a * b).sum::<BigInt>();
                match modulus {
                    Some(d) => x.mod_floor(d),
                    None => x,
                }
            })
            .collect()
    }
}

#[derive(Debug)]
struct ConeInner {
    lattice_rank: usize,
    rays: IntMatrix,
    rank: usize,
    preimage: Preimage,
    system: CosetSystem,
    homogeneous: OnceLock<Vec<Count>>,
    dual_generators: OnceLock<Vec<IntVector>>,
    cache: RwLock<HashMap<DegreeCox, Arc<MinimalElements>>>,
}

#[derive(Clone, Debug)]
pub struct Cone {
    inner: Arc<ConeInner>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.inner.lattice_rank == other.inner.lattice_rank && self.inner.rays == other.inner.rays
    }
}

impl Eq for Cone {}

impl Cone {
    /// `rays` has one row `l_ρ ∈ N` per ray, each of length `lattice_rank`.
    pub fn new(lattice_rank: usize, rays: IntMatrix) -> Result<Self> {
        if rays.cols() != lattice_rank {
            return Err(Error::DimensionMismatch {
                expected: lattice_rank,
                found: rays.cols(),
            });
        }
        for i in 0..rays.rows() {
            let g = lattice::gcd_of(rays.row(i));
            if !g.is_one() {
                return Err(Error::NotPrimitive {
                    index: i,
                    gcd: g.to_string(),
                });
            }
        }
        if !positive_functional_exists(&rays) {
            return Err(Error::NotStrictlyConvex);
        }
        let preimage = Preimage::new(&rays);
        let rank = preimage.snf().rank();
        let system = CosetSystem::new(&rays, &preimage);
        Ok(Self {
            inner: Arc::new(ConeInner {
                lattice_rank,
                rays,
                rank,
                preimage,
                system,
                homogeneous: OnceLock::new(),
                dual_generators: OnceLock::new(),
                cache: RwLock::new(HashMap::new()),
            }),
        })
    }

    pub fn from_i64(lattice_rank: usize, rays: &[&[i64]]) -> Result<Self> {
        Self::new(lattice_rank, IntMatrix::from_i64_rows(rays, lattice_rank))
    }

    /// The positive orthant: `L` is the identity on `Z^d`.
    /// Rays `(1,0,0), (0,1,0), (−1,1,1), (0,0,1)`: the cone over a square,
    /// with the single relation `v₁ + v₃ = v₂ + v₄`.
    pub fn cone_over_square() -> Self {
        Self::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[-1, 1, 1], &[0, 0, 1]]).expect("valid cone")
    }

    pub fn orthant(d: usize) -> Self {
        Self::new(d, IntMatrix::identity(d)).expect("orthant is a valid cone")
    }

    pub fn lattice_rank(&self) -> usize {
        self.inner.lattice_rank
    }

    pub fn ray_count(&self) -> usize {
        self.inner.rays.rows()
    }

    pub fn rays(&self) -> &IntMatrix {
        &self.inner.rays
    }

    /// Rational rank of the ray forms.
    pub fn rank(&self) -> usize {
        self.inner.rank
    }

    pub fn full_dimensional(&self) -> bool {
        self.inner.rank == self.inner.lattice_rank
    }

    /// The dual cone is pointed, i.e. `≤_σ` is antisymmetric. For cones
    /// given by rays this coincides with full-dimensionality.
    pub fn pointed_dual(&self) -> bool {
        self.full_dimensional()
    }

    pub fn require_full(&self) -> Result<()> {
        if self.full_dimensional() {
            Ok(())
        } else {
            Err(Error::NotFullDimensional {
                rank: self.rank(),
                lattice_rank: self.lattice_rank(),
            })
        }
    }

    fn check_m(&self, m: &[BigInt]) -> Result<()> {
        if m.len() != self.lattice_rank() {
            return Err(Error::DimensionMismatch {
                expected: self.lattice_rank(),
                found: m.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_c(&self, c: &[BigInt]) -> Result<()> {
        if c.len() != self.ray_count() {
            return Err(Error::DimensionMismatch {
                expected: self.ray_count(),
                found: c.len(),
            });
        }
        Ok(())
    }

    /// `L_σ(m)`.
    pub fn degree_of(&self, m: &[BigInt]) -> DegreeCox {
        self.inner.rays.mul_vec(m)
    }

    /// `l_ρ(m)` for a single ray.
    pub fn pairing(&self, ray: usize, m: &[BigInt]) -> BigInt {
        self.inner.rays.row(ray).iter().zip(m).map(|(a, b)| a * b).sum()
    }

    /// The unique `m` with `L(m) = c`, if `c` lies in the image lattice.
    pub fn preimage(&self, c: &[BigInt]) -> Option<IntVector> {
        self.require_full().ok()?;
        self.inner.preimage.solve(c)
    }

    pub fn leq(&self, m: &[BigInt], m2: &[BigInt]) -> Result<bool> {
        self.check_m(m)?;
        self.check_m(m2)?;
        Ok(self.leq_unchecked(m, m2))
    }

    pub(crate) fn leq_unchecked(&self, m: &[BigInt], m2: &[BigInt]) -> bool {
        (0..self.ray_count()).all(|i| {
            let diff: BigInt = self
                .inner
                .rays
                .row(i)
                .iter()
                .zip(m.iter().zip(m2))
                .map(|(a, (x, y))| a * (y - x))
                .sum();
            diff >= BigInt::zero()
        })
    }

    /// Sum of the ray forms; strictly positive on `σ_M ∖ {0}`.
    pub fn interior_functional(&self) -> IntVector {
        (0..self.lattice_rank())
            .map(|j| (0..self.ray_count()).map(|i| self.inner.rays[(i, j)].clone()).sum())
            .collect()
    }

    fn homogeneous(&self) -> &[Count] {
        self.inner
            .homogeneous
            .get_or_init(|| completion::hilbert_basis(&self.inner.system.matrix))
    }

    /// The ≤_σ-minimal lattice points of `P_c`.
    pub fn minimal_elements(&self, c: &[BigInt]) -> Result<Arc<MinimalElements>> {
        self.require_full()?;
        self.check_c(c)?;
        if let Some(hit) = self.inner.cache.read().expect("cache poisoned").get(c) {
            return Ok(Arc::clone(hit));
        }
        let computed = Arc::new(self.compute_minimal_elements(c));
        self.inner
            .cache
            .write()
            .expect("cache poisoned")
            .insert(c.to_vec(), Arc::clone(&computed));
        Ok(computed)
    }

    fn compute_minimal_elements(&self, c: &[BigInt]) -> MinimalElements {
        let n = self.ray_count();
        let system = &self.inner.system;
        let raw = completion::minimal_solutions(&system.matrix, &system.rhs(c), self.homogeneous());
        let mut us: Vec<Count> = raw.into_iter().map(|x| x[..n].to_vec()).collect();
        us.sort();
        us.dedup();
        let us: Vec<&Count> = us
            .iter()
            .filter(|u| !us.iter().any(|v| v != *u && v.iter().zip(u.iter()).all(|(a, b)| a <= b)))
            .collect();
        let mut elements: Vec<IntVector> = us
            .into_iter()
            .map(|u| {
                let target: IntVector = u.iter().zip(c).map(|(a, b)| BigInt::from(*a) + b).collect();
                self.inner
                    .preimage
                    .solve(&target)
                    .expect("completion yields points of the image lattice")
            })
            .collect();
        elements.sort();
        MinimalElements {
            for_degree: c.to_vec(),
            elements,
        }
    }

    /// Minimal elements dominating both `m` and `m2`.
    pub fn minimal_common_upper_bounds(
        &self,
        m: &[BigInt],
        m2: &[BigInt],
    ) -> Result<Arc<MinimalElements>> {
        self.check_m(m)?;
        self.check_m(m2)?;
        let a = self.degree_of(m);
        let b = self.degree_of(m2);
        let join: DegreeCox = a.into_iter().zip(b).map(|(x, y)| x.max(y)).collect();
        self.minimal_elements(&join)
    }

    /// Hilbert basis of the monoid `σ_M = {m : L(m) ≥ 0}`: every relation
    /// `m ≤_σ m'` factors into steps by these generators.
    pub fn dual_generators(&self) -> Result<&[IntVector]> {
        self.require_full()?;
        Ok(self.inner.dual_generators.get_or_init(|| {
            let n = self.ray_count();
            let mut us: Vec<Count> = self
                .homogeneous()
                .iter()
                .map(|x| x[..n].to_vec())
                .filter(|u| u.iter().any(|&a| a > 0))
                .collect();
            us.sort();
            us.dedup();
            let minimal: Vec<&Count> = us
                .iter()
                .filter(|u| !us.iter().any(|v| v != *u && v.iter().zip(u.iter()).all(|(a, b)| a <= b)))
                .collect();
            let mut gens: Vec<IntVector> = minimal
                .into_iter()
                .map(|u| {
                    let target: IntVector = u.iter().map(|&a| BigInt::from(a)).collect();
                    self.inner.preimage.solve(&target).expect("image lattice point")
                })
                .collect();
            gens.sort();
            gens
        }))
    }

    /// A lattice point `w*` with `l_ρ(w*) > 0` for every ray.
    pub fn interior_point(&self) -> Result<IntVector> {
        let ones = vec![BigInt::one(); self.ray_count()];
        let mins = self.minimal_elements(&ones)?;
        Ok(mins.elements[0].clone())
    }

    /// Quotient of `M` by `σ^⊥ ∩ M` and the induced full-dimensional cone.
    pub fn reduce(&self) -> Result<(Cone, LatticeQuotient)> {
        let lambda = lattice::kernel_lattice(&self.inner.rays);
        let quotient = lattice::reduce_by_sublattice(self.lattice_rank(), &lambda)?;
        let rays = &self.inner.rays * &quotient.section;
        let cone = Cone::new(quotient.free_rank(), rays)?;
        Ok((cone, quotient))
    }

    pub fn describe(&self) -> String {
        let rows: Vec<String> = self.inner.rays.to_rows().iter().map(|r| fmt_vec(r)).collect();
        format!("cone in Z^{} with rays {}", self.lattice_rank(), rows.join(" "))
    }
}

/// Whether some integer `y` has `⟨v, y⟩ > 0` for every row `v`. By Gordan's
/// alternative this fails exactly when a nonzero `λ ≥ 0` has `λᵀV = 0`.
pub fn positive_functional_exists(vectors: &IntMatrix) -> bool {
    vectors.rows() == 0 || completion::hilbert_basis(&vectors.transpose()).is_empty()
}

/// Independent oracle: minimal elements of `P_c` among the lattice points of
/// the box `[−radius, radius]^d`, by exhaustive enumeration.
pub fn minimal_elements_by_enumeration(cone: &Cone, c: &[BigInt], radius: i64) -> Vec<IntVector> {
    let points: Vec<IntVector> = box_points(cone.lattice_rank(), -radius, radius)
        .into_iter()
        .filter(|m| cone.degree_of(m).iter().zip(c).all(|(a, b)| a >= b))
        .collect();
    let mut mins: Vec<IntVector> = points
        .iter()
        .filter(|m| !points.iter().any(|p| p != *m && cone.leq_unchecked(p, m)))
        .cloned()
        .collect();
    mins.sort();
    mins
}

/// All integer points of `[lo, hi]^dim`, lexicographically ordered.
pub fn box_points(dim: usize, lo: i64, hi: i64) -> Vec<IntVector> {
    let lo_v = vec![lo; dim];
    let hi_v = vec![hi; dim];
    crate::degree_box::DegreeBox::new(lo_v, hi_v)
        .expect("lo <= hi")
        .points()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ivec;

    pub(crate) fn square() -> Cone {
        Cone::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[-1, 1, 1], &[0, 0, 1]]).unwrap()
    }

    #[test]
    fn leq_examples() {
        let o = Cone::orthant(2);
        assert!(o.leq(&ivec(&[0, 0]), &ivec(&[1, 1])).unwrap());
        let s = square();
        assert!(!s.leq(&ivec(&[-1, 0, 0]), &ivec(&[0, 0, 0])).unwrap());
        assert_eq!(s.degree_of(&ivec(&[0, 0, 0])), ivec(&[0, 0, 0, 0]));
        let m = ivec(&[2, -1, 5]);
        assert!(s.leq(&m, &m).unwrap());
        assert!(matches!(s.leq(&ivec(&[1]), &m), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn minimal_elements_examples() {
        let s = square();
        let m = s.minimal_elements(&ivec(&[-1, 0, -1, 0])).unwrap();
        assert_eq!(m.elements, vec![ivec(&[-1, 0, 0]), ivec(&[0, 0, 0]), ivec(&[1, 0, 0])]);
        let m = s.minimal_elements(&ivec(&[-1, 0, 0, 0])).unwrap();
        assert_eq!(m.elements, vec![ivec(&[-1, 0, 0]), ivec(&[0, 0, 0])]);
        let o = Cone::orthant(2);
        let m = o.minimal_elements(&ivec(&[3, -4])).unwrap();
        assert_eq!(m.elements, vec![ivec(&[3, -4])]);
    }

    #[test]
    fn common_upper_bound_examples() {
        let s = square();
        let u = s.minimal_common_upper_bounds(&ivec(&[0, 0, 0]), &ivec(&[-1, 0, 0])).unwrap();
        assert_eq!(u.elements, vec![ivec(&[0, 0, 1]), ivec(&[0, 1, 0])]);
        let u = s.minimal_common_upper_bounds(&ivec(&[1, 0, 1]), &ivec(&[1, 1, 0])).unwrap();
        assert_eq!(u.elements, vec![ivec(&[1, 1, 1]), ivec(&[2, 1, 1])]);
        let o = Cone::orthant(2);
        let u = o.minimal_common_upper_bounds(&ivec(&[1, -2]), &ivec(&[0, 3])).unwrap();
        assert_eq!(u.elements, vec![ivec(&[1, 3])]);
    }

    #[test]
    fn interior_functional_examples() {
        assert_eq!(Cone::orthant(2).interior_functional(), ivec(&[1, 1]));
        assert_eq!(square().interior_functional(), ivec(&[0, 2, 2]));
        let ray = Cone::from_i64(1, &[&[1]]).unwrap();
        assert_eq!(ray.interior_functional(), ivec(&[1]));
    }

    #[test]
    fn dual_generators_of_square() {
        let g = square().dual_generators().unwrap().to_vec();
        // L-images are (1,1,0,0), (1,0,0,1), (0,1,1,0), (0,0,1,1)
        assert_eq!(g, vec![ivec(&[0, 0, 1]), ivec(&[0, 1, 0]), ivec(&[1, 0, 1]), ivec(&[1, 1, 0])]);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            Cone::from_i64(2, &[&[2, 0], &[0, 1]]),
            Err(Error::NotPrimitive { index: 0, .. })
        ));
        assert_eq!(
            Cone::from_i64(2, &[&[1, 0], &[-1, 0], &[0, 1]]).unwrap_err(),
            Error::NotStrictlyConvex
        );
        let flat = Cone::from_i64(2, &[&[1, 0]]).unwrap();
        assert!(!flat.full_dimensional());
        assert!(matches!(
            flat.minimal_elements(&ivec(&[0])),
            Err(Error::NotFullDimensional { .. })
        ));
        let (reduced, q) = flat.reduce().unwrap();
        assert_eq!(reduced.lattice_rank(), 1);
        assert_eq!(q.free_rank(), 1);
        assert!(reduced.full_dimensional());
    }

    #[test]
    fn non_saturated_image_uses_congruences() {
        // rays (1,0), (1,2): L(M) has index 2 in Z^2
        let c = Cone::from_i64(2, &[&[1, 0], &[1, 2]]).unwrap();
        for deg in [[0i64, 0], [0, 1], [1, 0], [-2, 3], [3, -1]] {
            let d = ivec(&deg);
            let got = c.minimal_elements(&d).unwrap().elements.clone();
            assert_eq!(got, minimal_elements_by_enumeration(&c, &d, 6), "degree {deg:?}");
        }
    }
}
