//! Reflexive modules from full filtrations.
//!
//! For a filtration module `E_m = ∩_ρ E^ρ(l_ρ(m))` the lift in Cox degree
//! `c` is `∩_ρ E^ρ(c_ρ)`. This module computes that side directly and
//! compares it, as a subspace of `Q^r`, with the general limit computation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;

use crate::cones::{Cone, DegreeCox};
use crate::degree_box::DegreeBox;
use crate::error::{Error, Result};
use crate::graded::{FiltrationData, GradedModule, GradedMorphism, MorphismRule};
use crate::lifting::{lift_component, lift_morphism, LiftComponent, LiftTable};
use crate::linalg::Subspace;
use crate::matrix::{IntVector, QMatrix};

pub type ReflexiveDescription = FiltrationData;

/// `∩_ρ E^ρ(c_ρ) ⊆ Q^r`.
pub fn filtration_lift_component(desc: &ReflexiveDescription, c: &[BigInt]) -> Subspace {
    desc.intersection(c)
}

/// The image in `Q^r` of a lift component of a filtration module. Every
/// block of a compatible tuple names the same ambient vector; a tuple whose
/// blocks disagree is reported as an error.
pub fn lift_in_ambient(cone: &Cone, desc: &ReflexiveDescription, lc: &LiftComponent) -> Result<Subspace> {
    let r = desc.ambient_dim;
    let spaces: Vec<Subspace> = lc
        .minimal_elements
        .iter()
        .map(|m| desc.component_space(cone, m))
        .collect();
    let offsets = lc.offsets();
    let mut images = QMatrix::zeros(0, r);
    for row in 0..lc.dim() {
        let tuple = lc.basis().row(row);
        let mut vector: Option<Vec<BigRational>> = None;
        for (i, space) in spaces.iter().enumerate() {
            let mut v = vec![BigRational::zero(); r];
            for k in 0..space.dim() {
                let coeff = &tuple[offsets[i] + k];
                if coeff.is_zero() {
                    continue;
                }
                for (x, b) in v.iter_mut().zip(space.basis().row(k)) {
                    *x += coeff * b;
                }
            }
            if space.dim() == 0 {
                continue;
            }
            match &vector {
                None => vector = Some(v),
                Some(w) if *w != v => {
                    return Err(Error::InvalidModule(format!(
                        "lift tuple at {:?} names two ambient vectors",
                        lc.degree
                    )))
                }
                Some(_) => {}
            }
        }
        let v = vector.unwrap_or_else(|| vec![BigRational::zero(); r]);
        images = images.vstack(&QMatrix::from_rows(vec![v], r));
    }
    let image = Subspace::span(&images);
    if image.dim() != lc.dim() {
        return Err(Error::InvalidModule(format!(
            "lift at {:?} does not embed into the ambient space",
            lc.degree
        )));
    }
    Ok(image)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub degrees_checked: usize,
    pub lattice_points_checked: usize,
    /// First Cox degree where the limit and the intersection differ.
    pub mismatch: Option<DegreeCox>,
    /// First lattice point where reading the lift back at `L(m)` does not
    /// return `E_m`.
    pub roundtrip_mismatch: Option<IntVector>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none() && self.roundtrip_mismatch.is_none()
    }
}

/// Compares `lift_component` with `∩_ρ E^ρ(c_ρ)` on the box, and checks the
/// round trip on every `m` with `L(m)` in the box.
pub fn verify_equivalence(cone: &Cone, desc: &ReflexiveDescription, degree_box: &DegreeBox) -> Result<EquivalenceReport> {
    let module = GradedModule::Filtration(desc.clone());
    module.validate(cone)?;
    let degrees = degree_box.points();
    let results: Vec<(bool, Option<bool>)> = degrees
        .par_iter()
        .map(|c| -> Result<(bool, Option<bool>)> {
            let lc = lift_component(cone, &module, c)?;
            let image = lift_in_ambient(cone, desc, &lc)?;
            let agrees = image.same_as(&filtration_lift_component(desc, c));
            let roundtrip = cone
                .preimage(c)
                .map(|m| image.same_as(&desc.component_space(cone, &m)));
            Ok((agrees, roundtrip))
        })
        .collect::<Result<_>>()?;
    let mismatch = degrees
        .iter()
        .zip(&results)
        .find(|(_, (ok, _))| !ok)
        .map(|(c, _)| c.clone());
    let roundtrip_mismatch = degrees
        .iter()
        .zip(&results)
        .find(|(_, (_, rt))| *rt == Some(false))
        .map(|(c, _)| cone.preimage(c).expect("in the image"));
    Ok(EquivalenceReport {
        degrees_checked: degrees.len(),
        lattice_points_checked: results.iter().filter(|(_, rt)| rt.is_some()).count(),
        mismatch,
        roundtrip_mismatch,
    })
}

/// Subspaces realized on the base (`A`) and by the lift (`B`) over a box.
#[derive(Clone, Debug)]
pub struct RealizedReport {
    pub realized_on_base: Vec<Subspace>,
    pub realized_by_lift: Vec<Subspace>,
    /// Spaces in `B ∖ A`, each with the first box degree realizing it.
    pub new_in_lift: Vec<(DegreeCox, Subspace)>,
}

impl RealizedReport {
    pub fn base_contained_in_lift(&self) -> bool {
        self.realized_on_base
            .iter()
            .all(|a| self.realized_by_lift.iter().any(|b| b.same_as(a)))
    }
}

pub fn realized_components(cone: &Cone, desc: &ReflexiveDescription, degree_box: &DegreeBox) -> Result<RealizedReport> {
    if degree_box.dim() != desc.ray_count() {
        return Err(Error::DimensionMismatch {
            expected: desc.ray_count(),
            found: degree_box.dim(),
        });
    }
    let mut base: BTreeMap<Vec<Vec<String>>, Subspace> = BTreeMap::new();
    let mut lifted: BTreeMap<Vec<Vec<String>>, (DegreeCox, Subspace)> = BTreeMap::new();
    for c in degree_box.points() {
        let space = filtration_lift_component(desc, &c);
        if let Some(m) = cone.preimage(&c) {
            let e = desc.component_space(cone, &m);
            base.entry(e.key()).or_insert(e);
        }
        lifted.entry(space.key()).or_insert((c, space));
    }
    let new_in_lift = lifted
        .iter()
        .filter(|(k, _)| !base.contains_key(*k))
        .map(|(_, (c, s))| (c.clone(), s.clone()))
        .collect();
    Ok(RealizedReport {
        realized_on_base: base.into_values().collect(),
        realized_by_lift: lifted.into_values().map(|(_, s)| s).collect(),
        new_in_lift,
    })
}

/// Whether `φ(E^ρ(i)) ⊆ F^ρ(i)` for every ray and every level where either
/// filtration jumps.
pub fn respects_filtrations(e: &ReflexiveDescription, f: &ReflexiveDescription, phi: &QMatrix) -> bool {
    if e.ray_count() != f.ray_count() || phi.shape() != (f.ambient_dim, e.ambient_dim) {
        return false;
    }
    (0..e.ray_count()).all(|rho| {
        e.filtrations[rho]
            .iter()
            .chain(&f.filtrations[rho])
            .all(|(level, _)| f.space(rho, level).contains(&image_of(phi, &e.space(rho, level), f.ambient_dim)))
    })
}

fn image_of(phi: &QMatrix, s: &Subspace, target_dim: usize) -> Subspace {
    let rows: Vec<Vec<BigRational>> = (0..s.dim()).map(|k| phi.mul_vec(s.basis().row(k))).collect();
    Subspace::span(&QMatrix::from_rows(rows, target_dim))
}

/// Checks that `lift(φ)` commutes with every covering restriction inside
/// the box. Returns the first failing degree, if any.
pub fn check_lifted_naturality(
    cone: &Cone,
    e: &ReflexiveDescription,
    f: &ReflexiveDescription,
    phi: &QMatrix,
    degree_box: &DegreeBox,
) -> Result<Option<DegreeCox>> {
    let source = GradedModule::Filtration(e.clone());
    let target = GradedModule::Filtration(f.clone());
    let morphism = GradedMorphism::new(cone, source.clone(), target.clone(), MorphismRule::FiltrationLinear(phi.clone()))?;
    let ts = LiftTable::build(cone, &source, degree_box, true)?;
    let tt = LiftTable::build(cone, &target, degree_box, true)?;
    let maps: Vec<QMatrix> = ts
        .degrees
        .par_iter()
        .map(|c| lift_morphism(cone, &morphism, c))
        .collect::<Result<_>>()?;
    for (i, c) in ts.degrees.iter().enumerate() {
        for k in 0..degree_box.dim() {
            let (Some(a), Some(b)) = (&ts.actions[i][k], &tt.actions[i][k]) else {
                continue;
            };
            let mut up = c.clone();
            up[k] += 1;
            let j = ts.index_of(&up).expect("action implies neighbour in box");
            if b * &maps[i] != &maps[j] * a {
                return Ok(Some(c.clone()));
            }
        }
    }
    Ok(None)
}

/// Hyperplane filtrations: ray `ρ` carries `0 ⊂ {x : ⟨n_ρ, x⟩ = 0} ⊂ Q^r`
/// with jumps at levels `0` and `1`.
pub fn hyperplane_description(normals: &[Vec<i64>]) -> Result<ReflexiveDescription> {
    let r = normals.first().map_or(0, Vec::len);
    let filtrations = normals
        .iter()
        .map(|n| {
            let eq = QMatrix::from_rows(vec![n.iter().map(|&x| BigRational::from_integer(x.into())).collect()], r);
            let plane = Subspace::span(&crate::linalg::nullspace(&eq));
            vec![(BigInt::zero(), plane), (BigInt::from(1), Subspace::full(r))]
        })
        .collect();
    FiltrationData::new(r, filtrations)
}

/// A random full filtration per ray with jump levels in `[lo, hi]`. Each
/// flag is built from random small integer vectors.
pub fn random_description<R: Rng + ?Sized>(
    rng: &mut R,
    ambient_dim: usize,
    rays: usize,
    lo: i64,
    hi: i64,
) -> ReflexiveDescription {
    let filtrations = (0..rays)
        .map(|_| {
            let jumps = rng.gen_range(1..=ambient_dim.min((hi - lo + 1) as usize).max(1));
            let mut levels: Vec<i64> = (lo..=hi).collect();
            while levels.len() > jumps {
                levels.remove(rng.gen_range(0..levels.len()));
            }
            // dims strictly increase and end at ambient_dim
            let mut dims: Vec<usize> = (1..ambient_dim).collect();
            while dims.len() > jumps - 1 {
                dims.remove(rng.gen_range(0..dims.len()));
            }
            dims.push(ambient_dim);
            let mut span = QMatrix::zeros(0, ambient_dim);
            levels
                .into_iter()
                .zip(dims)
                .map(|(level, d)| {
                    while crate::linalg::rank(&span) < d {
                        let v: Vec<BigRational> = (0..ambient_dim)
                            .map(|_| BigRational::from_integer(rng.gen_range(-2i64..=2).into()))
                            .collect();
                        let candidate = span.vstack(&QMatrix::from_rows(vec![v], ambient_dim));
                        if crate::linalg::rank(&candidate) > crate::linalg::rank(&span) {
                            span = candidate;
                        }
                    }
                    (BigInt::from(level), Subspace::span(&span))
                })
                .collect()
        })
        .collect();
    FiltrationData::new(ambient_dim, filtrations).expect("random flags are full and monotone")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ivec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn square() -> Cone {
        Cone::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[-1, 1, 1], &[0, 0, 1]]).unwrap()
    }

    fn line(v: &[i64]) -> Subspace {
        Subspace::span(&QMatrix::from_i64_rows(&[v], v.len()))
    }

    fn flag_example() -> ReflexiveDescription {
        let full0 = vec![(BigInt::zero(), Subspace::full(2))];
        FiltrationData::new(
            2,
            vec![
                vec![(BigInt::zero(), line(&[1, 0])), (BigInt::from(1), Subspace::full(2))],
                full0.clone(),
                full0.clone(),
                full0,
            ],
        )
        .unwrap()
    }

    #[test]
    fn explicit_intersections() {
        let d = flag_example();
        assert_eq!(filtration_lift_component(&d, &ivec(&[0, 0, 0, 0])).dim(), 1);
        assert_eq!(filtration_lift_component(&d, &ivec(&[1, 0, 0, 0])).dim(), 2);
        assert_eq!(filtration_lift_component(&d, &ivec(&[1, 0, -1, 0])).dim(), 0);
        let t = FiltrationData::trivial(3, 4, 0);
        assert_eq!(filtration_lift_component(&t, &ivec(&[0, 1, 2, 0])).dim(), 3);
    }

    #[test]
    fn rank_one_reproduces_shifted_ring() {
        let a = [1i64, 0, 2, -1];
        let d = FiltrationData::new(
            1,
            a.iter().map(|&x| vec![(BigInt::from(-x), Subspace::full(1))]).collect(),
        )
        .unwrap();
        for c in DegreeBox::cube(4, -2, 2).unwrap().points() {
            let expected = usize::from(c.iter().zip(a).all(|(x, ai)| x + ai >= BigInt::zero()));
            assert_eq!(filtration_lift_component(&d, &c).dim(), expected);
        }
        let rep = verify_equivalence(&square(), &d, &DegreeBox::cube(4, -1, 1).unwrap()).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn flag_example_is_equivalent() {
        let rep = verify_equivalence(&square(), &flag_example(), &DegreeBox::cube(4, -1, 2).unwrap()).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.lattice_points_checked > 0);
    }

    #[test]
    fn random_descriptions_are_equivalent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..3 {
            let r = rng.gen_range(1..=3);
            let d = random_description(&mut rng, r, 4, -1, 1);
            let rep = verify_equivalence(&square(), &d, &DegreeBox::cube(4, -1, 1).unwrap()).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
    }

    #[test]
    fn intersection_completion() {
        let d = hyperplane_description(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]]).unwrap();
        let b = DegreeBox::cube(4, 0, 1).unwrap();
        let rep = realized_components(&square(), &d, &b).unwrap();
        assert!(rep.base_contained_in_lift());
        assert!(!rep.new_in_lift.is_empty());
        let o = Cone::orthant(3);
        let d3 = hyperplane_description(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 1]]).unwrap();
        let rep = realized_components(&o, &d3, &DegreeBox::cube(3, -1, 1).unwrap()).unwrap();
        assert!(rep.new_in_lift.is_empty());
    }

    #[test]
    fn filtration_maps_lift_naturally() {
        let e = flag_example();
        let f = FiltrationData::trivial(2, 4, 0);
        let phi = QMatrix::identity(2);
        assert!(respects_filtrations(&e, &f, &phi));
        assert!(!respects_filtrations(&f, &e, &phi));
        let b = DegreeBox::cube(4, -1, 1).unwrap();
        assert_eq!(check_lifted_naturality(&square(), &e, &f, &phi, &b).unwrap(), None);
    }
}
