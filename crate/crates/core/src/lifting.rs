//! The lifting functor, one Cox degree at a time.
//!
//! The lift of `E` in degree `c` is the inverse limit of `E` over
//! `P_c = {m : L(m) ≥ c}`. It is presented as the space of tuples
//! `(e_1, …, e_t) ∈ ⊕ E_{m_i}` over the minimal elements `m_i` of `P_c`
//! whose transports agree at every minimal common upper bound of each pair.
//! Agreement there propagates to every common upper bound because
//! transports compose.

use rayon::prelude::*;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cones::{Cone, DegreeCox};
use crate::degree_box::DegreeBox;
use crate::error::{fmt_vec, Error, Result};
use crate::graded::{GradedModule, GradedMorphism, Representation};
use crate::linalg::{self, Subspace};
use crate::matrix::{IntVector, QMatrix};

#[derive(Clone, Debug)]
pub struct LiftComponent {
    pub degree: DegreeCox,
    pub minimal_elements: Vec<IntVector>,
    pub block_dims: Vec<usize>,
    /// The limit as a subspace of `⊕_i E_{m_i}`, echelon basis.
    pub space: Subspace,
}

impl LiftComponent {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Echelon basis of the limit, one tuple per row.
    pub fn basis(&self) -> &QMatrix {
        self.space.basis()
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.block_dims
            .iter()
            .map(|d| {
                let o = acc;
                acc += d;
                o
            })
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.block_dims.iter().sum()
    }

    /// Index of a minimal element.
    pub fn position(&self, m: &[BigInt]) -> Option<usize> {
        self.minimal_elements.iter().position(|x| x.as_slice() == m)
    }

    /// Coordinates of a tuple in the echelon basis.
    pub fn coordinates(&self, tuple: &[BigRational]) -> Option<Vec<BigRational>> {
        self.space.coordinates(tuple)
    }

    /// Matrix sending echelon coordinates to the block of minimal element `i`.
    pub fn projection(&self, i: usize) -> QMatrix {
        let off = self.offsets()[i];
        let k = self.block_dims[i];
        QMatrix::from_fn(k, self.dim(), |r, j| self.basis()[(j, off + r)].clone())
    }
}

/// Echelon coordinates of the columns of `tuples` (each column a tuple).
fn express(target: &LiftComponent, tuples: &QMatrix) -> QMatrix {
    let mut out = QMatrix::zeros(target.dim(), tuples.cols());
    for j in 0..tuples.cols() {
        let coords = target
            .coordinates(&tuples.column(j))
            .expect("image tuple is compatible, hence lies in the limit");
        for (i, x) in coords.into_iter().enumerate() {
            out[(i, j)] = x;
        }
    }
    out
}

pub fn lift_component<M: Representation + ?Sized>(cone: &Cone, module: &M, c: &[BigInt]) -> Result<LiftComponent> {
    let mins = cone.minimal_elements(c)?;
    let elements = mins.elements.clone();
    let block_dims: Vec<usize> = elements.iter().map(|m| module.dim(cone, m)).collect();
    let total: usize = block_dims.iter().sum();
    let mut offsets = Vec::with_capacity(elements.len());
    let mut acc = 0;
    for d in &block_dims {
        offsets.push(acc);
        acc += d;
    }

    let mut constraint_blocks: Vec<QMatrix> = Vec::new();
    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            if block_dims[i] == 0 && block_dims[j] == 0 {
                continue;
            }
            let bounds = cone.minimal_common_upper_bounds(&elements[i], &elements[j])?;
            for u in &bounds.elements {
                let du = module.dim(cone, u);
                if du == 0 {
                    continue;
                }
                let mut block = QMatrix::zeros(du, total);
                if block_dims[i] > 0 {
                    block.set_block(0, offsets[i], &module.transport(cone, &elements[i], u));
                }
                if block_dims[j] > 0 {
                    block.set_block(0, offsets[j], &-&module.transport(cone, &elements[j], u));
                }
                if !block.is_zero() {
                    constraint_blocks.push(block);
                }
            }
        }
    }
    let space = if constraint_blocks.is_empty() {
        Subspace::full(total)
    } else {
        let mut stacked = constraint_blocks[0].clone();
        for b in &constraint_blocks[1..] {
            stacked = stacked.vstack(b);
        }
        Subspace::span(&linalg::nullspace(&stacked))
    };
    Ok(LiftComponent {
        degree: c.to_vec(),
        minimal_elements: elements,
        block_dims,
        space,
    })
}

fn require_leq(c: &[BigInt], c2: &[BigInt]) -> Result<()> {
    if c.len() != c2.len() || c.iter().zip(c2).any(|(a, b)| a > b) {
        return Err(Error::NotComparable {
            from: fmt_vec(c),
            to: fmt_vec(c2),
        });
    }
    Ok(())
}

/// The transport `⊕ E_{m_i} → ⊕ E_{m'_k}` sending a tuple over `P_c` to
/// its restriction over `P_{c'} ⊆ P_c`.
fn tuple_restriction<M: Representation + ?Sized>(
    cone: &Cone,
    module: &M,
    from: &LiftComponent,
    to: &LiftComponent,
) -> QMatrix {
    let mut t = QMatrix::zeros(to.total_dim(), from.total_dim());
    let from_off = from.offsets();
    let to_off = to.offsets();
    for (k, target) in to.minimal_elements.iter().enumerate() {
        if to.block_dims[k] == 0 {
            continue;
        }
        let i = from
            .minimal_elements
            .iter()
            .position(|m| cone.leq_unchecked(m, target))
            .expect("every point of P_c' dominates a minimal element of P_c");
        if from.block_dims[i] == 0 {
            continue;
        }
        t.set_block(to_off[k], from_off[i], &module.transport(cone, &from.minimal_elements[i], target));
    }
    t
}

/// Restriction between precomputed components (`from.degree ≤ to.degree`).
pub fn restriction_matrix<M: Representation + ?Sized>(
    cone: &Cone,
    module: &M,
    from: &LiftComponent,
    to: &LiftComponent,
) -> Result<QMatrix> {
    require_leq(&from.degree, &to.degree)?;
    let t = tuple_restriction(cone, module, from, to);
    Ok(express(to, &(&t * &from.basis().transpose())))
}

/// Matrix of the restriction `lift(E)_c → lift(E)_{c'}` for `c ≤ c'`.
pub fn lift_action<M: Representation + ?Sized>(cone: &Cone, module: &M, c: &[BigInt], c2: &[BigInt]) -> Result<QMatrix> {
    cone.check_c(c)?;
    cone.check_c(c2)?;
    require_leq(c, c2)?;
    let a = lift_component(cone, module, c)?;
    let b = lift_component(cone, module, c2)?;
    restriction_matrix(cone, module, &a, &b)
}

/// `lift(f)_c : lift(E)_c → lift(F)_c`.
pub fn lift_morphism(cone: &Cone, f: &GradedMorphism, c: &[BigInt]) -> Result<QMatrix> {
    let a = lift_component(cone, &f.source, c)?;
    let b = lift_component(cone, &f.target, c)?;
    let blocks: Vec<QMatrix> = a
        .minimal_elements
        .iter()
        .map(|m| f.matrix_at(cone, m))
        .collect::<Result<_>>()?;
    let t = QMatrix::block_diagonal(&blocks);
    Ok(express(&b, &(&t * &a.basis().transpose())))
}

/// The lift read back on `M`: its component at `L(m)` together with the
/// counit `lift(E)_{L(m)} → E_m`.
#[derive(Clone, Debug)]
pub struct SheafifiedComponent {
    pub dim: usize,
    pub counit: QMatrix,
}

pub fn sheafify_component<M: Representation + ?Sized>(cone: &Cone, module: &M, m: &[BigInt]) -> Result<SheafifiedComponent> {
    let lc = lift_component(cone, module, &cone.degree_of(m))?;
    let i = lc
        .position(m)
        .expect("m is the unique minimal element of P_{L(m)}");
    debug_assert_eq!(lc.minimal_elements.len(), 1);
    Ok(SheafifiedComponent {
        dim: lc.dim(),
        counit: lc.projection(i),
    })
}

/// A `Z^n`-graded module over the Cox ring given degree by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoxModule {
    /// `S(a)`: one-dimensional in degree `c` iff `c + a ≥ 0`.
    Shifted { shift: DegreeCox },
    /// A copy of the residue field placed in a single degree; every
    /// variable acts by zero.
    Spike { degree: DegreeCox },
    DirectSum(Vec<CoxModule>),
}

impl CoxModule {
    pub fn cox_ring(rays: usize) -> Self {
        CoxModule::Shifted {
            shift: vec![BigInt::zero(); rays],
        }
    }

    pub fn dim(&self, c: &[BigInt]) -> usize {
        match self {
            CoxModule::Shifted { shift } => usize::from(c.iter().zip(shift).all(|(x, a)| x + a >= BigInt::zero())),
            CoxModule::Spike { degree } => usize::from(degree.as_slice() == c),
            CoxModule::DirectSum(parts) => parts.iter().map(|p| p.dim(c)).sum(),
        }
    }

    /// Multiplication by the monomial of degree `c' − c`.
    pub fn action(&self, c: &[BigInt], c2: &[BigInt]) -> QMatrix {
        match self {
            CoxModule::Shifted { .. } => {
                let (a, b) = (self.dim(c), self.dim(c2));
                if a == 1 && b == 1 {
                    QMatrix::identity(1)
                } else {
                    QMatrix::zeros(b, a)
                }
            }
            CoxModule::Spike { .. } => {
                let (a, b) = (self.dim(c), self.dim(c2));
                if c == c2 {
                    QMatrix::identity(a)
                } else {
                    QMatrix::zeros(b, a)
                }
            }
            CoxModule::DirectSum(parts) => {
                let blocks: Vec<QMatrix> = parts.iter().map(|p| p.action(c, c2)).collect();
                QMatrix::block_diagonal(&blocks)
            }
        }
    }
}

/// The degree-zero part `F_{L(m)}` of a Cox module as an M-graded module.
pub struct Sheafified<'a>(pub &'a CoxModule);

impl Representation for Sheafified<'_> {
    fn dim(&self, cone: &Cone, m: &[BigInt]) -> usize {
        self.0.dim(&cone.degree_of(m))
    }

    fn transport(&self, cone: &Cone, m: &[BigInt], m2: &[BigInt]) -> QMatrix {
        self.0.action(&cone.degree_of(m), &cone.degree_of(m2))
    }
}

/// The unit `F_c → lift(sheafify F)_c`, `e ↦ (χ(L(m_i) − c)·e)_i`.
pub fn unit_map(cone: &Cone, f: &CoxModule, c: &[BigInt]) -> Result<QMatrix> {
    cone.check_c(c)?;
    let sheaf = Sheafified(f);
    let lc = lift_component(cone, &sheaf, c)?;
    let blocks: Vec<QMatrix> = lc
        .minimal_elements
        .iter()
        .map(|m| f.action(c, &cone.degree_of(m)))
        .collect();
    let mut stacked = QMatrix::zeros(0, f.dim(c));
    for b in &blocks {
        stacked = stacked.vstack(b);
    }
    Ok(express(&lc, &stacked))
}

/// Outcome of a colimit computation along a cofinal ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColimitResult {
    /// `dim` is reached at step `at`: three consecutive components of that
    /// dimension joined by isomorphisms.
    Stabilized { dim: usize, at: i64 },
    DidNotStabilize { horizon: i64 },
}

impl ColimitResult {
    pub fn dim(&self) -> Option<usize> {
        match self {
            ColimitResult::Stabilized { dim, .. } => Some(*dim),
            ColimitResult::DidNotStabilize { .. } => None,
        }
    }
}

fn stabilize(start: i64, horizon: i64, mut step: impl FnMut(i64) -> Result<(usize, QMatrix)>) -> Result<ColimitResult> {
    // window[j] = (dim at k+j, map k+j → k+j+1)
    let mut window: Vec<(usize, QMatrix)> = Vec::new();
    for k in start..start + horizon {
        window.push(step(k)?);
        if window.len() > 2 {
            window.remove(0);
        }
        if window.len() == 2 {
            let (d0, t0) = &window[0];
            let (d1, t1) = &window[1];
            if d0 == d1 && linalg::is_isomorphism(t0) && linalg::is_isomorphism(t1) {
                return Ok(ColimitResult::Stabilized { dim: *d0, at: k - 1 });
            }
        }
    }
    Ok(ColimitResult::DidNotStabilize { horizon })
}

pub const DEFAULT_HORIZON: i64 = 32;

/// `lim→ E_m`, read off along `k·w*` for an interior lattice point `w*`.
pub fn colimit(cone: &Cone, module: &GradedModule, horizon: i64) -> Result<ColimitResult> {
    let w = cone.interior_point()?;
    let start = module.stabilization_hint(cone, &w);
    let at = |k: i64| -> IntVector { w.iter().map(|x| x * k).collect() };
    stabilize(start, horizon, |k| {
        let (a, b) = (at(k), at(k + 1));
        Ok((module.dim(cone, &a), module.transport(cone, &a, &b)))
    })
}

/// `lim→ lift(E)_c` over `(Z^n, ≤)`, read off along `k·(1,…,1)`.
pub fn lift_colimit(cone: &Cone, module: &GradedModule, horizon: i64) -> Result<ColimitResult> {
    let w = cone.interior_point()?;
    let hint = module.stabilization_hint(cone, &w);
    let start = cone
        .degree_of(&w)
        .iter()
        .map(|x| i64::try_from(x * hint).unwrap_or(i64::MAX / 4))
        .max()
        .unwrap_or(0);
    let n = cone.ray_count();
    let at = |k: i64| -> DegreeCox { vec![BigInt::from(k); n] };
    let mut prev: Option<LiftComponent> = None;
    stabilize(start, horizon, |k| {
        let a = match prev.take() {
            Some(p) => p,
            None => lift_component(cone, module, &at(k))?,
        };
        let b = lift_component(cone, module, &at(k + 1))?;
        let t = restriction_matrix(cone, module, &a, &b)?;
        let d = a.dim();
        prev = Some(b);
        Ok((d, t))
    })
}

/// Lift components over a box of Cox degrees, plus the restriction along
/// every covering step `c → c + e_k` inside the box.
#[derive(Clone, Debug)]
pub struct LiftTable {
    pub degree_box: DegreeBox,
    pub degrees: Vec<DegreeCox>,
    pub components: Vec<LiftComponent>,
    /// `actions[i][k]` is the restriction from `degrees[i]` to `degrees[i] + e_k`
    /// when that degree lies in the box.
    pub actions: Vec<Vec<Option<QMatrix>>>,
}

impl LiftTable {
    /// Computes every component in parallel on the current rayon pool; the
    /// result depends only on the inputs.
    pub fn build<M: Representation + ?Sized>(cone: &Cone, module: &M, degree_box: &DegreeBox, with_actions: bool) -> Result<Self> {
        if degree_box.dim() != cone.ray_count() {
            return Err(Error::DimensionMismatch {
                expected: cone.ray_count(),
                found: degree_box.dim(),
            });
        }
        let degrees = degree_box.points();
        let components: Vec<LiftComponent> = degrees
            .par_iter()
            .map(|c| lift_component(cone, module, c))
            .collect::<Result<_>>()?;
        let n = cone.ray_count();
        let index = |c: &DegreeCox| -> Option<usize> { lookup(degree_box, c) };
        let actions = if with_actions {
            (0..degrees.len())
                .into_par_iter()
                .map(|i| {
                    (0..n)
                        .map(|k| {
                            let mut up = degrees[i].clone();
                            up[k] += 1;
                            index(&up)
                                .map(|j| restriction_matrix(cone, module, &components[i], &components[j]))
                                .transpose()
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?
        } else {
            vec![vec![None; n]; degrees.len()]
        };
        Ok(Self {
            degree_box: degree_box.clone(),
            degrees,
            components,
            actions,
        })
    }

    pub fn index_of(&self, c: &DegreeCox) -> Option<usize> {
        lookup(&self.degree_box, c)
    }

    pub fn dim_at(&self, c: &DegreeCox) -> Option<usize> {
        self.index_of(c).map(|i| self.components[i].dim())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(LiftComponent::dim).collect()
    }

    /// Degrees whose component is not spanned by images from the degrees
    /// just below it inside the box.
    pub fn generator_degrees(&self) -> Vec<DegreeCox> {
        let n = self.degree_box.dim();
        let mut out = Vec::new();
        for (j, c) in self.degrees.iter().enumerate() {
            let dim = self.components[j].dim();
            if dim == 0 {
                continue;
            }
            let mut images = QMatrix::zeros(0, dim);
            for k in 0..n {
                let mut down = c.clone();
                down[k] -= 1;
                if let Some(i) = self.index_of(&down) {
                    let t = self.actions[i][k].as_ref().expect("table built with actions");
                    images = images.vstack(&t.transpose());
                }
            }
            if linalg::rank(&images) < dim {
                out.push(c.clone());
            }
        }
        out
    }
}

fn lookup(degree_box: &DegreeBox, c: &DegreeCox) -> Option<usize> {
    if !degree_box.contains(c) {
        return None;
    }
    let mut idx = 0usize;
    for (k, x) in c.iter().enumerate() {
        let lo = degree_box.lo()[k];
        let width = (degree_box.hi()[k] - lo + 1) as usize;
        let off = i64::try_from(x).expect("inside an i64 box") - lo;
        idx = idx * width + off as usize;
    }
    Some(idx)
}

/// Degrees `c` in the box where `lift(E)_c` needs new generators.
pub fn minimal_generators_in_box<M: Representation + ?Sized>(cone: &Cone, module: &M, degree_box: &DegreeBox) -> Result<Vec<DegreeCox>> {
    Ok(LiftTable::build(cone, module, degree_box, true)?.generator_degrees())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ivec;
    use num_traits::One;

    fn square() -> Cone {
        Cone::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[-1, 1, 1], &[0, 0, 1]]).unwrap()
    }

    fn klifting_law(c: &[i64]) -> usize {
        let a = c[0] <= 0 && c[2] <= 0 && c[1] == 0 && c[3] == 0;
        let b = c[0] == 0 && c[2] == 0 && c[1] <= 0 && c[3] <= 0;
        usize::from(a || b)
    }

    #[test]
    fn residue_field_examples() {
        let s = square();
        let k = GradedModule::residue_field(&s);
        assert_eq!(lift_component(&s, &k, &ivec(&[-1, 0, 0, 0])).unwrap().dim(), 1);
        assert_eq!(lift_component(&s, &k, &ivec(&[-1, -1, 0, 0])).unwrap().dim(), 0);
        for c in DegreeBox::cube(4, -2, 1).unwrap().points() {
            let ci: Vec<i64> = c.iter().map(|x| i64::try_from(x).unwrap()).collect();
            assert_eq!(lift_component(&s, &k, &c).unwrap().dim(), klifting_law(&ci), "c = {ci:?}");
        }
    }

    #[test]
    fn codivisorial_example() {
        let s = square();
        let zero = vec![BigInt::zero(); 4];
        let e = GradedModule::codivisorial(&[1, 3], &zero);
        let lc = lift_component(&s, &e, &ivec(&[-1, 0, -1, 0])).unwrap();
        assert_eq!(lc.dim(), 3);
        assert_eq!(lc.minimal_elements, vec![ivec(&[-1, 0, 0]), ivec(&[0, 0, 0]), ivec(&[1, 0, 0])]);
    }

    #[test]
    fn maximal_ideal_examples() {
        let s = square();
        let m = GradedModule::maximal_ideal(&s);
        let lc = lift_component(&s, &m, &ivec(&[1, -1, 0, 0])).unwrap();
        assert_eq!(lc.dim(), 0);
        assert!(lc.minimal_elements.contains(&ivec(&[1, -1, 2])));
        assert_eq!(lift_component(&s, &m, &ivec(&[1, 0, 0, 0])).unwrap().dim(), 1);
    }

    #[test]
    fn lift_action_examples() {
        let s = square();
        let r = GradedModule::ring(&s);
        for c in [ivec(&[0, 0, 0, 0]), ivec(&[2, 0, -1, 0]), ivec(&[1, 1, 0, 0])] {
            let d = lift_component(&s, &r, &c).unwrap().dim();
            assert_eq!(lift_action(&s, &r, &c, &c).unwrap(), QMatrix::identity(d));
        }
        let t = lift_action(&s, &r, &ivec(&[0, 0, 0, 0]), &ivec(&[1, 0, 0, 0])).unwrap();
        assert_eq!(t, QMatrix::identity(1));
        let k = GradedModule::residue_field(&s);
        let t = lift_action(&s, &k, &ivec(&[-2, 0, 0, 0]), &ivec(&[-1, 0, 0, 0])).unwrap();
        assert_eq!(t, QMatrix::identity(1));
        assert!(matches!(
            lift_action(&s, &k, &ivec(&[-2, 0, 0, 0]), &ivec(&[0, 0, -1, 0])),
            Err(Error::NotComparable { .. })
        ));
    }

    #[test]
    fn lift_morphism_examples() {
        let s = square();
        let p = GradedMorphism::residue_map(&s).unwrap();
        assert_eq!(lift_morphism(&s, &p, &ivec(&[0, 0, 0, 0])).unwrap(), QMatrix::identity(1));
        let t = lift_morphism(&s, &p, &ivec(&[-1, 0, 0, 0])).unwrap();
        assert_eq!(t.shape(), (1, 0));
        let id = GradedMorphism::identity(&s, GradedModule::maximal_ideal(&s)).unwrap();
        assert_eq!(lift_morphism(&s, &id, &ivec(&[1, 0, 0, 0])).unwrap(), QMatrix::identity(1));
    }

    #[test]
    fn sheafify_examples() {
        let s = square();
        let r = GradedModule::ring(&s);
        let sc = sheafify_component(&s, &r, &ivec(&[0, 0, 0])).unwrap();
        assert_eq!(sc.dim, 1);
        assert!(linalg::is_isomorphism(&sc.counit));
        let k = GradedModule::residue_field(&s);
        assert_eq!(sheafify_component(&s, &k, &ivec(&[0, 1, 0])).unwrap().dim, 0);
    }

    #[test]
    fn unit_map_examples() {
        let s = square();
        let cox = CoxModule::cox_ring(4);
        for c in [[0i64, 0, 0, 0], [1, 0, 2, 0], [-1, 0, 0, 0], [1, 1, 1, 1]] {
            let u = unit_map(&s, &cox, &ivec(&c)).unwrap();
            assert!(u.rows() == u.cols() && linalg::is_isomorphism(&u), "c = {c:?}");
        }
        let shifted = CoxModule::Shifted { shift: ivec(&[1, 0, 2, 0]) };
        for c in [[-1i64, 0, -2, 0], [0, 0, -2, 0], [-2, 0, 0, 0]] {
            let u = unit_map(&s, &shifted, &ivec(&c)).unwrap();
            assert!(u.rows() == u.cols() && linalg::is_isomorphism(&u), "c = {c:?}");
        }
        // a spike off the image lattice is killed by sheafification
        let spike = ivec(&[1, 0, 0, 0]);
        let f = CoxModule::DirectSum(vec![cox, CoxModule::Spike { degree: spike.clone() }]);
        let u = unit_map(&s, &f, &spike).unwrap();
        assert_eq!(u.shape(), (1, 2));
        assert_eq!(u.cols() - linalg::rank(&u), 1);
    }

    #[test]
    fn colimit_examples() {
        let s = square();
        let k = GradedModule::residue_field(&s);
        assert_eq!(colimit(&s, &k, DEFAULT_HORIZON).unwrap().dim(), Some(0));
        let m = GradedModule::maximal_ideal(&s);
        assert_eq!(colimit(&s, &m, DEFAULT_HORIZON).unwrap().dim(), Some(1));
        let f = GradedModule::Filtration(crate::graded::FiltrationData::trivial(2, 4, 1));
        assert_eq!(colimit(&s, &f, DEFAULT_HORIZON).unwrap().dim(), Some(2));
        assert_eq!(lift_colimit(&s, &f, DEFAULT_HORIZON).unwrap().dim(), Some(2));
    }

    #[test]
    fn generators_of_ring_and_ideal() {
        let s = square();
        let b = DegreeBox::cube(4, -1, 2).unwrap();
        let r = GradedModule::ring(&s);
        assert_eq!(minimal_generators_in_box(&s, &r, &b).unwrap(), vec![ivec(&[0, 0, 0, 0])]);
        let m = GradedModule::maximal_ideal(&s);
        let mut expected: Vec<IntVector> = (0..4)
            .map(|k| {
                let mut e = ivec(&[0, 0, 0, 0]);
                e[k] = BigInt::one();
                e
            })
            .collect();
        expected.sort();
        assert_eq!(minimal_generators_in_box(&s, &m, &b).unwrap(), expected);
    }

    #[test]
    fn table_lookup_roundtrip() {
        let s = square();
        let k = GradedModule::residue_field(&s);
        let b = DegreeBox::new(vec![-1, -1, 0, -2], vec![0, 1, 0, 0]).unwrap();
        let t = LiftTable::build(&s, &k, &b, false).unwrap();
        for (i, c) in t.degrees.iter().enumerate() {
            assert_eq!(t.index_of(c), Some(i));
        }
    }
}
