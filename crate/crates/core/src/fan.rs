//! Fans, class groups and the global intersection formula for reflexive data.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::cones::{positive_functional_exists, Cone, DegreeCox};
use crate::error::{Error, Result};
use crate::graded::FiltrationData;
use crate::lattice::{self, LatticeQuotient};
use crate::linalg::Subspace;
use crate::matrix::{IntMatrix, IntVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanData {
    pub lattice_rank: usize,
    /// One primitive ray generator per row.
    pub rays: IntMatrix,
    pub max_cones: Vec<Vec<usize>>,
}

impl FanData {
    pub fn new(lattice_rank: usize, rays: IntMatrix, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        if rays.cols() != lattice_rank {
            return Err(Error::DimensionMismatch {
                expected: lattice_rank,
                found: rays.cols(),
            });
        }
        let fan = Self {
            lattice_rank,
            rays,
            max_cones: max_cones
                .into_iter()
                .map(|mut c| {
                    c.sort_unstable();
                    c.dedup();
                    c
                })
                .collect(),
        };
        fan.validate()?;
        Ok(fan)
    }

    pub fn from_i64(lattice_rank: usize, rays: &[&[i64]], max_cones: &[&[usize]]) -> Result<Self> {
        Self::new(
            lattice_rank,
            IntMatrix::from_i64_rows(rays, lattice_rank),
            max_cones.iter().map(|c| c.to_vec()).collect(),
        )
    }

    /// Rays `(1,0),(0,1),(−1,−1)`.
    pub fn projective_plane() -> Self {
        Self::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]]).expect("valid fan")
    }

    /// Rays `(1,0),(−1,0),(0,1),(0,−1)`.
    pub fn product_of_lines() -> Self {
        Self::from_i64(
            2,
            &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]],
            &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]],
        )
        .expect("valid fan")
    }

    /// The fan consisting of a single cone and its faces.
    pub fn single_cone(cone: &Cone) -> Self {
        Self {
            lattice_rank: cone.lattice_rank(),
            rays: cone.rays().clone(),
            max_cones: vec![(0..cone.ray_count()).collect()],
        }
    }

    pub fn ray_count(&self) -> usize {
        self.rays.rows()
    }

    fn validate(&self) -> Result<()> {
        let n = self.ray_count();
        for (k, sigma) in self.max_cones.iter().enumerate() {
            if let Some(&i) = sigma.iter().find(|&&i| i >= n) {
                return Err(Error::InvalidFan(format!("cone {k} uses ray {i}, but there are {n} rays")));
            }
            self.cone_of(sigma)
                .map_err(|e| Error::InvalidFan(format!("cone {k}: {e}")))?;
        }
        if let Some(i) = (0..n).find(|i| !self.max_cones.iter().any(|s| s.contains(i))) {
            return Err(Error::InvalidFan(format!("ray {i} lies in no cone")));
        }
        for a in 0..self.max_cones.len() {
            for b in a + 1..self.max_cones.len() {
                let shared: Vec<usize> = self.max_cones[a]
                    .iter()
                    .copied()
                    .filter(|i| self.max_cones[b].contains(i))
                    .collect();
                for sigma in [&self.max_cones[a], &self.max_cones[b]] {
                    if !self.is_face(sigma, &shared) {
                        return Err(Error::InvalidFan(format!(
                            "rays {shared:?} shared by cones {a} and {b} do not span a common face"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn cone_of(&self, sigma: &[usize]) -> Result<Cone> {
        Cone::new(self.lattice_rank, self.rays.select_rows(sigma))
    }

    /// `cone(face)` is a face of `cone(sigma)` iff some `m ∈ face^⊥` is
    /// positive on every other ray of `sigma`.
    fn is_face(&self, sigma: &[usize], face: &[usize]) -> bool {
        let perp = if face.is_empty() {
            IntMatrix::identity(self.lattice_rank)
        } else {
            lattice::kernel_lattice(&self.rays.select_rows(face))
        };
        let others: Vec<usize> = sigma.iter().copied().filter(|i| !face.contains(i)).collect();
        let restricted = &self.rays.select_rows(&others) * &perp;
        positive_functional_exists(&restricted)
    }
}

/// `A_{d−1}(X) = Z^n / L(M) ≅ Z^free ⊕ ⊕ Z/t_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroupData {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    /// `free_rank + torsion.len()` rows; torsion rows are read modulo `t_i`.
    pub degree_map: IntMatrix,
}

impl ClassGroupData {
    /// Class of a Cox degree: free coordinates, then torsion residues.
    pub fn degree(&self, c: &[BigInt]) -> IntVector {
        let mut out = self.degree_map.mul_vec(c);
        for (k, t) in self.torsion.iter().enumerate() {
            let x = &mut out[self.free_rank + k];
            *x = x.mod_floor(t);
        }
        out
    }
}

pub fn class_group(fan: &FanData) -> Result<ClassGroupData> {
    class_group_of_rays(fan.lattice_rank, &fan.rays)
}

/// Cokernel of `L : Z^d → Z^n` for an `n × d` ray matrix.
pub fn class_group_of_rays(lattice_rank: usize, rays: &IntMatrix) -> Result<ClassGroupData> {
    let n = rays.rows();
    let q: LatticeQuotient = lattice::reduce_by_sublattice(n, rays).map_err(|_| Error::RaysDoNotSpan {
        rank: lattice::smith_normal_form(rays).rank(),
        lattice_rank,
    })?;
    // row HNF makes the free coordinates canonical
    let free = lattice::hermite_rows(&q.free_projection);
    let mut degree_map = free;
    for (_, row) in &q.torsion_projection {
        degree_map = degree_map.vstack(&IntMatrix::from_rows(vec![row.clone()], n));
    }
    let data = ClassGroupData {
        free_rank: q.free_rank(),
        torsion: q.torsion(),
        degree_map,
    };
    debug_assert!((0..lattice_rank).all(|j| data.degree(&rays.column(j)).iter().all(Zero::is_zero)));
    Ok(data)
}

/// `∩_{ρ ∈ Δ(1)} E^ρ(c_ρ)`.
pub fn global_reflexive_lift(fan: &FanData, desc: &FiltrationData, c: &[BigInt]) -> Result<Subspace> {
    if desc.ray_count() != fan.ray_count() || c.len() != fan.ray_count() {
        return Err(Error::DimensionMismatch {
            expected: fan.ray_count(),
            found: if desc.ray_count() != fan.ray_count() { desc.ray_count() } else { c.len() },
        });
    }
    Ok(desc.intersection(c))
}

/// Sections over the chart of cone `k` in degree `m`:
/// `∩_{ρ ∈ σ(1)} E^ρ(l_ρ(m))`.
pub fn chart_sections(fan: &FanData, desc: &FiltrationData, k: usize, m: &[BigInt]) -> Result<Subspace> {
    let sigma = fan.max_cones.get(k).ok_or(Error::InvalidIndex {
        index: k,
        len: fan.max_cones.len(),
    })?;
    let mut acc = Subspace::full(desc.ambient_dim);
    for &rho in sigma {
        let level: BigInt = fan.rays.row(rho).iter().zip(m).map(|(a, b)| a * b).sum();
        acc = acc.intersect(&desc.space(rho, &level));
    }
    Ok(acc)
}

/// An affine chart, with the quotient by `σ^⊥ ∩ M` when `σ` is not
/// full-dimensional.
#[derive(Clone, Debug)]
pub struct AffineChart {
    pub rays: Vec<usize>,
    pub cone: Cone,
    pub reduction: Option<(Cone, LatticeQuotient)>,
}

impl AffineChart {
    /// The cone lifting computations run on.
    pub fn working_cone(&self) -> &Cone {
        self.reduction.as_ref().map_or(&self.cone, |(c, _)| c)
    }
}

pub fn affine_chart(fan: &FanData, k: usize) -> Result<AffineChart> {
    let sigma = fan.max_cones.get(k).ok_or(Error::InvalidIndex {
        index: k,
        len: fan.max_cones.len(),
    })?;
    let cone = fan.cone_of(sigma)?;
    let reduction = if cone.full_dimensional() { None } else { Some(cone.reduce()?) };
    Ok(AffineChart {
        rays: sigma.clone(),
        cone,
        reduction,
    })
}

/// Cox degrees `c ∈ [0, bound]^n` with `class(c) = class`, lexicographic.
pub fn cox_degrees_in_class(fan: &FanData, class: &[BigInt], bound: i64) -> Result<Vec<DegreeCox>> {
    let cg = class_group(fan)?;
    if class.len() != cg.degree_map.rows() {
        return Err(Error::DimensionMismatch {
            expected: cg.degree_map.rows(),
            found: class.len(),
        });
    }
    let b = crate::degree_box::DegreeBox::cube(fan.ray_count(), 0, bound)?;
    Ok(b.points().into_iter().filter(|c| cg.degree(c) == class).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree_box::DegreeBox;
    use crate::matrix::ivec;

    fn square() -> Cone {
        Cone::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[-1, 1, 1], &[0, 0, 1]]).unwrap()
    }

    fn assert_kills_rays(fan: &FanData, cg: &ClassGroupData) {
        for j in 0..fan.lattice_rank {
            assert!(cg.degree(&fan.rays.column(j)).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn class_group_examples() {
        let p2 = FanData::projective_plane();
        let cg = class_group(&p2).unwrap();
        assert_eq!((cg.free_rank, cg.torsion.clone()), (1, vec![]));
        assert_eq!(cg.degree_map, IntMatrix::from_i64_rows(&[&[1, 1, 1]], 3));
        assert_kills_rays(&p2, &cg);

        let p1p1 = FanData::product_of_lines();
        let cg = class_group(&p1p1).unwrap();
        assert_eq!((cg.free_rank, cg.torsion.len()), (2, 0));
        assert_kills_rays(&p1p1, &cg);

        let one = FanData::single_cone(&square());
        let cg = class_group(&one).unwrap();
        assert_eq!((cg.free_rank, cg.torsion.len()), (1, 0));
        assert_eq!(cg.degree(&ivec(&[1, 0, 0, 0])).len(), 1);
        assert_eq!(cg.degree(&ivec(&[1, 1, 0, 0])), vec![BigInt::zero()]);
        assert_kills_rays(&one, &cg);
    }

    #[test]
    fn torsion_class_group() {
        // rays (1,0),(1,2): cokernel Z^2 / <(1,1),(0,2)> = Z/2
        let fan = FanData::from_i64(2, &[&[1, 0], &[1, 2]], &[&[0, 1]]).unwrap();
        let cg = class_group(&fan).unwrap();
        assert_eq!(cg.free_rank, 0);
        assert_eq!(cg.torsion, vec![BigInt::from(2)]);
        assert_kills_rays(&fan, &cg);
        assert_ne!(cg.degree(&ivec(&[1, 0])), vec![BigInt::zero()]);
    }

    #[test]
    fn rays_must_span() {
        let fan = FanData::from_i64(2, &[&[1, 0]], &[&[0]]).unwrap();
        assert!(matches!(class_group(&fan), Err(Error::RaysDoNotSpan { rank: 1, lattice_rank: 2 })));
    }

    #[test]
    fn shared_faces_must_be_faces() {
        // e1 + e2 is an interior ray of the first cone, so it spans no face
        let bad = FanData::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1], &[-1, 0]], &[&[0, 1, 2], &[2, 3]]);
        assert!(matches!(bad, Err(Error::InvalidFan(_))));
        let good = FanData::from_i64(2, &[&[1, 0], &[0, 1], &[-1, 0]], &[&[0, 1], &[1, 2]]);
        assert!(good.is_ok());
        assert!(matches!(
            FanData::from_i64(2, &[&[1, 0], &[-1, 0]], &[&[0, 1]]),
            Err(Error::InvalidFan(_))
        ));
    }

    #[test]
    fn rank_one_global_lift_is_shifted_ring() {
        let p2 = FanData::projective_plane();
        let a = [1i64, 0, 2];
        let desc = FiltrationData::new(
            1,
            a.iter().map(|&x| vec![(BigInt::from(-x), Subspace::full(1))]).collect(),
        )
        .unwrap();
        for c in DegreeBox::cube(3, -3, 2).unwrap().points() {
            let expected = usize::from(c.iter().zip(a).all(|(x, ai)| x + ai >= BigInt::zero()));
            assert_eq!(global_reflexive_lift(&p2, &desc, &c).unwrap().dim(), expected);
        }
    }

    #[test]
    fn chart_sections_contain_global_intersection() {
        let p2 = FanData::projective_plane();
        let desc = crate::klyachko::hyperplane_description(&[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        for m in DegreeBox::cube(2, -2, 2).unwrap().points() {
            let global = global_reflexive_lift(&p2, &desc, &p2.rays.mul_vec(&m)).unwrap();
            for k in 0..3 {
                assert!(chart_sections(&p2, &desc, k, &m).unwrap().contains(&global));
            }
        }
    }

    #[test]
    fn charts() {
        let p2 = FanData::projective_plane();
        let chart = affine_chart(&p2, 0).unwrap();
        assert!(chart.reduction.is_none());
        assert_eq!(chart.cone, Cone::orthant(2));
        let one = FanData::single_cone(&square());
        assert_eq!(affine_chart(&one, 0).unwrap().cone, square());
        let ray = FanData::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0], &[1]]).unwrap();
        let chart = affine_chart(&ray, 0).unwrap();
        let (_, q) = chart.reduction.as_ref().unwrap();
        assert_eq!(q.free_rank(), 1);
        assert_eq!(chart.working_cone().lattice_rank(), 1);
        assert!(matches!(affine_chart(&p2, 5), Err(Error::InvalidIndex { .. })));
    }

    #[test]
    fn degree_one_sections_on_the_plane() {
        let p2 = FanData::projective_plane();
        let degs = cox_degrees_in_class(&p2, &[BigInt::from(1)], 2).unwrap();
        assert_eq!(degs.len(), 3);
        assert_eq!(cox_degrees_in_class(&p2, &[BigInt::from(2)], 3).unwrap().len(), 6);
    }
}
