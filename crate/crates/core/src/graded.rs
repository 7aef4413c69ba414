//! M-graded modules over the semigroup ring of `σ_M`, represented degree
//! by degree: a finite-dimensional component for every `m ∈ M` and a
//! transport matrix for every relation `m ≤_σ m'`.
//!
//! Matrices act on column vectors: the transport `E_m → E_{m'}` has shape
//! `dim E_{m'} × dim E_m`. Bases are deterministic (generator order or
//! reduced echelon form), so every matrix produced here is reproducible.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cones::Cone;
use crate::degree_box::DegreeBox;
use crate::error::{fmt_vec, Error, Result};
use crate::linalg::{self, Rref, Subspace};
use crate::matrix::{IntVector, QMatrix, QVector};

/// Degree-wise data of a functor `(M, ≤_σ) → Vect_Q`.
///
/// Implementors may assume `m ≤_σ m'` in [`Representation::transport`];
/// checked entry points live on the concrete types.
pub trait Representation: Send + Sync {
    fn dim(&self, cone: &Cone, m: &[BigInt]) -> usize;
    fn transport(&self, cone: &Cone, m: &[BigInt], m2: &[BigInt]) -> QMatrix;
}

/// One graded component with an explicit basis, each basis vector written
/// in the module's fixed ambient coordinates.
#[derive(Clone, Debug)]
pub struct Component {
    pub dim: usize,
    pub basis: QMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub degree: IntVector,
    pub coeffs: QVector,
}

/// `coker(⊕ S(−e_j) → ⊕ S(−d_i))` given by generator and relation degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitelyPresentedData {
    pub generators: Vec<IntVector>,
    pub relations: Vec<Relation>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ConstraintOp {
    Leq,
    Geq,
}

/// `l_ray(m) op bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub ray: usize,
    pub op: ConstraintOp,
    pub bound: BigInt,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum IndicatorStyle {
    /// Support is up-closed; the module is a submodule of `K[M]`.
    Submodule,
    /// Support is convex (for instance down-closed, or a single point); the
    /// module is a subquotient of `K[M]`.
    Quotient,
}

/// One-dimensional components on a polyhedral support, transports the
/// identity between supported degrees and zero otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorData {
    pub style: IndicatorStyle,
    pub constraints: Vec<Constraint>,
    pub exclude: Vec<IntVector>,
}

/// Full increasing filtrations `E^ρ(i) ⊆ Q^r`, one per ray, stored as jump
/// lists: level `i` resolves to the last jump at or below `i`, and to `0`
/// below the first jump.
#[derive(Clone, Debug)]
pub struct FiltrationData {
    pub ambient_dim: usize,
    pub filtrations: Vec<Vec<(BigInt, Subspace)>>,
}

#[derive(Clone, Debug)]
pub enum GradedModule {
    FinitelyPresented(FinitelyPresentedData),
    Indicator(IndicatorData),
    Filtration(FiltrationData),
    /// `E(a)_m = E_{m+a}`.
    Shift { base: Box<GradedModule>, by: IntVector },
    DirectSum(Vec<GradedModule>),
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_ceil(b)
}

fn to_i64(x: BigInt) -> i64 {
    i64::try_from(x).unwrap_or(i64::MAX / 4)
}

impl FinitelyPresentedData {
    fn active_generators(&self, cone: &Cone, m: &[BigInt]) -> Vec<usize> {
        (0..self.generators.len())
            .filter(|&i| cone.leq_unchecked(&self.generators[i], m))
            .collect()
    }

    /// Active generators, the echelon form of the active relations on them,
    /// and the positions (within the active list) spanning the quotient.
    fn presentation(&self, cone: &Cone, m: &[BigInt]) -> (Vec<usize>, Rref, Vec<usize>) {
        let active = self.active_generators(cone, m);
        let rows: Vec<QVector> = self
            .relations
            .iter()
            .filter(|r| cone.leq_unchecked(&r.degree, m))
            .map(|r| active.iter().map(|&i| r.coeffs[i].clone()).collect())
            .collect();
        let rref = linalg::rref(&QMatrix::from_rows(rows, active.len()));
        let free = (0..active.len()).filter(|p| !rref.pivots.contains(p)).collect();
        (active, rref, free)
    }

    fn validate(&self, cone: &Cone) -> Result<()> {
        let d = cone.lattice_rank();
        for g in &self.generators {
            if g.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: g.len(),
                });
            }
        }
        for (j, r) in self.relations.iter().enumerate() {
            if r.degree.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: r.degree.len(),
                });
            }
            if r.coeffs.len() != self.generators.len() {
                return Err(Error::InvalidModule(format!(
                    "relation {j} has {} coefficients for {} generators",
                    r.coeffs.len(),
                    self.generators.len()
                )));
            }
            for (i, a) in r.coeffs.iter().enumerate() {
                if !a.is_zero() && !cone.leq_unchecked(&self.generators[i], &r.degree) {
                    return Err(Error::InvalidModule(format!(
                        "relation {j} in degree {} touches generator {i} of degree {} which it does not dominate",
                        fmt_vec(&r.degree),
                        fmt_vec(&self.generators[i])
                    )));
                }
            }
        }
        Ok(())
    }
}

impl IndicatorData {
    pub fn supports(&self, cone: &Cone, m: &[BigInt]) -> bool {
        self.satisfies_constraints(cone, m) && !self.exclude.iter().any(|p| p.as_slice() == m)
    }

    fn satisfies_constraints(&self, cone: &Cone, m: &[BigInt]) -> bool {
        self.constraints.iter().all(|c| {
            let v = cone.pairing(c.ray, m);
            match c.op {
                ConstraintOp::Leq => v <= c.bound,
                ConstraintOp::Geq => v >= c.bound,
            }
        })
    }

    /// Structural check of the style rule. Constraint sets are convex in
    /// `≤_σ`; `≥`-only constraint sets are up-closed. An excluded point keeps
    /// the support up-closed iff it is minimal in the constraint set, and
    /// keeps it convex if it is minimal or maximal there.
    fn validate(&self, cone: &Cone) -> Result<()> {
        let d = cone.lattice_rank();
        for c in &self.constraints {
            if c.ray >= cone.ray_count() {
                return Err(Error::InvalidModule(format!(
                    "constraint names ray {} but the cone has {} rays",
                    c.ray,
                    cone.ray_count()
                )));
            }
        }
        for p in &self.exclude {
            if p.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: p.len(),
                });
            }
        }
        let gens = cone.dual_generators()?;
        let step = |p: &IntVector, g: &IntVector, sign: i64| -> IntVector {
            p.iter().zip(g).map(|(a, b)| a + b * sign).collect()
        };
        let minimal = |p: &IntVector| gens.iter().all(|g| !self.satisfies_constraints(cone, &step(p, g, -1)));
        let maximal = |p: &IntVector| gens.iter().all(|g| !self.satisfies_constraints(cone, &step(p, g, 1)));
        match self.style {
            IndicatorStyle::Submodule => {
                if self.constraints.iter().any(|c| c.op == ConstraintOp::Leq) {
                    return Err(Error::InvalidModule(
                        "submodule-style support must be up-closed: only >= constraints are allowed".into(),
                    ));
                }
                if let Some(p) = self.exclude.iter().find(|p| self.satisfies_constraints(cone, p) && !minimal(p)) {
                    return Err(Error::InvalidModule(format!(
                        "excluding {} breaks up-closedness",
                        fmt_vec(p)
                    )));
                }
            }
            IndicatorStyle::Quotient => {
                if let Some(p) = self
                    .exclude
                    .iter()
                    .find(|p| self.satisfies_constraints(cone, p) && !minimal(p) && !maximal(p))
                {
                    return Err(Error::InvalidModule(format!(
                        "excluding {} breaks convexity of the support",
                        fmt_vec(p)
                    )));
                }
            }
        }
        Ok(())
    }
}

impl FiltrationData {
    /// Builds and checks the data: levels strictly increasing per ray,
    /// spaces increasing, and the last jump equal to the whole space.
    pub fn new(ambient_dim: usize, filtrations: Vec<Vec<(BigInt, Subspace)>>) -> Result<Self> {
        for (rho, jumps) in filtrations.iter().enumerate() {
            if jumps.is_empty() {
                return Err(Error::InvalidModule(format!("filtration {rho} has no jumps")));
            }
            for (level, space) in jumps {
                if space.ambient() != ambient_dim {
                    return Err(Error::InvalidModule(format!(
                        "filtration {rho} at level {level} lives in Q^{} instead of Q^{ambient_dim}",
                        space.ambient()
                    )));
                }
            }
            for w in jumps.windows(2) {
                if w[0].0 >= w[1].0 {
                    return Err(Error::InvalidModule(format!(
                        "filtration {rho}: levels must increase ({} then {})",
                        w[0].0, w[1].0
                    )));
                }
                if !w[1].1.contains(&w[0].1) {
                    return Err(Error::InvalidModule(format!(
                        "filtration {rho} is not monotone at level {}",
                        w[1].0
                    )));
                }
            }
            let top = &jumps.last().expect("nonempty").1;
            if top.dim() != ambient_dim {
                return Err(Error::InvalidModule(format!(
                    "filtration {rho} is not full: top space has dimension {} < {ambient_dim}",
                    top.dim()
                )));
            }
        }
        Ok(Self {
            ambient_dim,
            filtrations,
        })
    }

    /// Every filtration jumps from `0` to `Q^r` at level `level`.
    pub fn trivial(ambient_dim: usize, rays: usize, level: i64) -> Self {
        let jumps = vec![(BigInt::from(level), Subspace::full(ambient_dim))];
        Self::new(ambient_dim, vec![jumps; rays]).expect("trivial filtration is valid")
    }

    pub fn ray_count(&self) -> usize {
        self.filtrations.len()
    }

    /// `E^ρ(level)`.
    pub fn space(&self, rho: usize, level: &BigInt) -> Subspace {
        self.filtrations[rho]
            .iter()
            .rev()
            .find(|(l, _)| l <= level)
            .map(|(_, s)| s.clone())
            .unwrap_or_else(|| Subspace::zero(self.ambient_dim))
    }

    /// `∩_ρ E^ρ(c_ρ)` for a Cox degree `c`.
    pub fn intersection(&self, c: &[BigInt]) -> Subspace {
        let mut acc = Subspace::full(self.ambient_dim);
        for (rho, level) in c.iter().enumerate() {
            acc = acc.intersect(&self.space(rho, level));
            if acc.dim() == 0 {
                break;
            }
        }
        acc
    }

    /// `E_m = ∩_ρ E^ρ(l_ρ(m))`.
    pub fn component_space(&self, cone: &Cone, m: &[BigInt]) -> Subspace {
        self.intersection(&cone.degree_of(m))
    }

    fn validate(&self, cone: &Cone) -> Result<()> {
        if self.ray_count() != cone.ray_count() {
            return Err(Error::InvalidModule(format!(
                "{} filtrations for a cone with {} rays",
                self.ray_count(),
                cone.ray_count()
            )));
        }
        Ok(())
    }

    fn levels(&self) -> impl Iterator<Item = &BigInt> {
        self.filtrations.iter().flat_map(|f| f.iter().map(|(l, _)| l))
    }
}

impl GradedModule {
    /// `K = K[σ_M]/m`, one-dimensional in degree `0`.
    pub fn residue_field(cone: &Cone) -> Self {
        let constraints = (0..cone.ray_count())
            .flat_map(|ray| {
                [ConstraintOp::Geq, ConstraintOp::Leq].map(|op| Constraint {
                    ray,
                    op,
                    bound: BigInt::zero(),
                })
            })
            .collect();
        GradedModule::Indicator(IndicatorData {
            style: IndicatorStyle::Quotient,
            constraints,
            exclude: Vec::new(),
        })
    }

    /// `R = K[σ_M]`.
    pub fn ring(cone: &Cone) -> Self {
        GradedModule::Indicator(IndicatorData {
            style: IndicatorStyle::Submodule,
            constraints: Self::nonnegative(cone),
            exclude: Vec::new(),
        })
    }

    /// The maximal homogeneous ideal, supported on `σ_M ∖ {0}`.
    pub fn maximal_ideal(cone: &Cone) -> Self {
        GradedModule::Indicator(IndicatorData {
            style: IndicatorStyle::Submodule,
            constraints: Self::nonnegative(cone),
            exclude: vec![vec![BigInt::zero(); cone.lattice_rank()]],
        })
    }

    /// Codivisorial quotient module supported on `{m : l_ρ(m) ≤ −c_ρ, ρ ∈ I}`.
    pub fn codivisorial(rays: &[usize], c: &[BigInt]) -> Self {
        GradedModule::Indicator(IndicatorData {
            style: IndicatorStyle::Quotient,
            constraints: rays
                .iter()
                .map(|&ray| Constraint {
                    ray,
                    op: ConstraintOp::Leq,
                    bound: -c[ray].clone(),
                })
                .collect(),
            exclude: Vec::new(),
        })
    }

    fn nonnegative(cone: &Cone) -> Vec<Constraint> {
        (0..cone.ray_count())
            .map(|ray| Constraint {
                ray,
                op: ConstraintOp::Geq,
                bound: BigInt::zero(),
            })
            .collect()
    }

    pub fn validate(&self, cone: &Cone) -> Result<()> {
        match self {
            GradedModule::FinitelyPresented(fp) => fp.validate(cone),
            GradedModule::Indicator(ind) => ind.validate(cone),
            GradedModule::Filtration(f) => f.validate(cone),
            GradedModule::Shift { base, by } => {
                if by.len() != cone.lattice_rank() {
                    return Err(Error::DimensionMismatch {
                        expected: cone.lattice_rank(),
                        found: by.len(),
                    });
                }
                base.validate(cone)
            }
            GradedModule::DirectSum(parts) => parts.iter().try_for_each(|p| p.validate(cone)),
        }
    }

    /// Dimension of the fixed coordinate space the component bases live in.
    pub fn ambient_dim(&self) -> usize {
        match self {
            GradedModule::FinitelyPresented(fp) => fp.generators.len(),
            GradedModule::Indicator(_) => 1,
            GradedModule::Filtration(f) => f.ambient_dim,
            GradedModule::Shift { base, .. } => base.ambient_dim(),
            GradedModule::DirectSum(parts) => parts.iter().map(GradedModule::ambient_dim).sum(),
        }
    }

    /// Torsion-free variants: filtrations and submodule-style indicators
    /// (and shifts and sums of those).
    pub fn is_torsion_free(&self) -> bool {
        match self {
            GradedModule::Filtration(_) => true,
            GradedModule::Indicator(ind) => ind.style == IndicatorStyle::Submodule,
            GradedModule::FinitelyPresented(_) => false,
            GradedModule::Shift { base, .. } => base.is_torsion_free(),
            GradedModule::DirectSum(parts) => parts.iter().all(GradedModule::is_torsion_free),
        }
    }

    pub fn component(&self, cone: &Cone, m: &[BigInt]) -> Result<Component> {
        check_len(cone.lattice_rank(), m)?;
        Ok(self.component_unchecked(cone, m))
    }

    fn component_unchecked(&self, cone: &Cone, m: &[BigInt]) -> Component {
        match self {
            GradedModule::FinitelyPresented(fp) => {
                let (active, _, free) = fp.presentation(cone, m);
                let n = fp.generators.len();
                let mut basis = QMatrix::zeros(free.len(), n);
                for (k, &p) in free.iter().enumerate() {
                    basis[(k, active[p])] = BigRational::one();
                }
                Component {
                    dim: free.len(),
                    basis,
                }
            }
            GradedModule::Indicator(ind) => {
                if ind.supports(cone, m) {
                    Component {
                        dim: 1,
                        basis: QMatrix::identity(1),
                    }
                } else {
                    Component {
                        dim: 0,
                        basis: QMatrix::zeros(0, 1),
                    }
                }
            }
            GradedModule::Filtration(f) => {
                let s = f.component_space(cone, m);
                Component {
                    dim: s.dim(),
                    basis: s.basis().clone(),
                }
            }
            GradedModule::Shift { base, by } => base.component_unchecked(cone, &shifted(m, by)),
            GradedModule::DirectSum(parts) => {
                let comps: Vec<Component> = parts.iter().map(|p| p.component_unchecked(cone, m)).collect();
                let blocks: Vec<QMatrix> = comps.iter().map(|c| c.basis.clone()).collect();
                Component {
                    dim: comps.iter().map(|c| c.dim).sum(),
                    basis: QMatrix::block_diagonal(&blocks),
                }
            }
        }
    }

    /// Transport `E_m → E_{m'}`; errors unless `m ≤_σ m'`.
    pub fn action_matrix(&self, cone: &Cone, m: &[BigInt], m2: &[BigInt]) -> Result<QMatrix> {
        if !cone.leq(m, m2)? {
            return Err(Error::NotComparable {
                from: fmt_vec(m),
                to: fmt_vec(m2),
            });
        }
        Ok(self.transport(cone, m, m2))
    }

    /// Smallest `k ≥ 0` such that every threshold in the module's data lies
    /// below `k·w` (`w` with all `l_ρ(w) > 0`); past it the components
    /// along `k·w` can be trusted to have stabilized.
    pub fn stabilization_hint(&self, cone: &Cone, w: &[BigInt]) -> i64 {
        let lw: Vec<BigInt> = cone.degree_of(w);
        let reach = |d: &IntVector| -> i64 {
            let ld = cone.degree_of(d);
            ld.iter()
                .zip(&lw)
                .map(|(a, b)| to_i64(ceil_div(&a.abs(), b)))
                .max()
                .unwrap_or(0)
        };
        let level_reach = |level: &BigInt| -> i64 {
            lw.iter().map(|b| to_i64(ceil_div(&level.abs(), b))).max().unwrap_or(0)
        };
        let hint = match self {
            GradedModule::FinitelyPresented(fp) => fp
                .generators
                .iter()
                .chain(fp.relations.iter().map(|r| &r.degree))
                .map(reach)
                .max()
                .unwrap_or(0),
            GradedModule::Indicator(ind) => {
                let b = ind
                    .constraints
                    .iter()
                    .map(|c| to_i64(ceil_div(&c.bound.abs(), &lw[c.ray])))
                    .max()
                    .unwrap_or(0);
                let e = ind.exclude.iter().map(reach).max().unwrap_or(0);
                b.max(e)
            }
            GradedModule::Filtration(f) => f.levels().map(level_reach).max().unwrap_or(0),
            GradedModule::Shift { base, by } => base.stabilization_hint(cone, w) + reach(by),
            GradedModule::DirectSum(parts) => {
                parts.iter().map(|p| p.stabilization_hint(cone, w)).max().unwrap_or(0)
            }
        };
        hint.max(0) + 1
    }
}

fn check_len(expected: usize, v: &[BigInt]) -> Result<()> {
    if v.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: v.len(),
        });
    }
    Ok(())
}

fn shifted(m: &[BigInt], by: &[BigInt]) -> IntVector {
    m.iter().zip(by).map(|(a, b)| a + b).collect()
}

impl Representation for GradedModule {
    fn dim(&self, cone: &Cone, m: &[BigInt]) -> usize {
        match self {
            GradedModule::FinitelyPresented(fp) => {
                let (_, _, free) = fp.presentation(cone, m);
                free.len()
            }
            GradedModule::Indicator(ind) => usize::from(ind.supports(cone, m)),
            GradedModule::Filtration(f) => f.component_space(cone, m).dim(),
            GradedModule::Shift { base, by } => base.dim(cone, &shifted(m, by)),
            GradedModule::DirectSum(parts) => parts.iter().map(|p| p.dim(cone, m)).sum(),
        }
    }

    fn transport(&self, cone: &Cone, m: &[BigInt], m2: &[BigInt]) -> QMatrix {
        match self {
            GradedModule::FinitelyPresented(fp) => {
                let (active, _, free) = fp.presentation(cone, m);
                let (active2, rref2, free2) = fp.presentation(cone, m2);
                let mut out = QMatrix::zeros(free2.len(), free.len());
                for (col, &p) in free.iter().enumerate() {
                    let g = active[p];
                    let mut v = vec![BigRational::zero(); active2.len()];
                    let pos = active2.iter().position(|&x| x == g).expect("generator stays active");
                    v[pos] = BigRational::one();
                    let reduced = rref2.reduce(&v);
                    for (row, &p2) in free2.iter().enumerate() {
                        out[(row, col)] = reduced[p2].clone();
                    }
                }
                out
            }
            GradedModule::Indicator(ind) => {
                let a = ind.supports(cone, m);
                let b = ind.supports(cone, m2);
                match (a, b) {
                    (true, true) => QMatrix::identity(1),
                    _ => QMatrix::zeros(usize::from(b), usize::from(a)),
                }
            }
            GradedModule::Filtration(f) => {
                let s = f.component_space(cone, m);
                let t = f.component_space(cone, m2);
                s.inclusion_into(&t).expect("filtration components increase along ≤_σ")
            }
            GradedModule::Shift { base, by } => base.transport(cone, &shifted(m, by), &shifted(m2, by)),
            GradedModule::DirectSum(parts) => {
                let blocks: Vec<QMatrix> = parts.iter().map(|p| p.transport(cone, m, m2)).collect();
                QMatrix::block_diagonal(&blocks)
            }
        }
    }
}

/// Per-degree matrices of a morphism.
pub type MorphismFn = Arc<dyn Fn(&Cone, &[BigInt]) -> QMatrix + Send + Sync>;

#[derive(Clone)]
pub enum MorphismRule {
    Identity,
    /// Identity where both indicator supports contain `m`, zero elsewhere.
    IndicatorMap,
    /// A linear map `Q^r → Q^s` between filtration ambients, restricted to
    /// components.
    FiltrationLinear(QMatrix),
    Custom(MorphismFn),
}

impl fmt::Debug for MorphismRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismRule::Identity => write!(f, "Identity"),
            MorphismRule::IndicatorMap => write!(f, "IndicatorMap"),
            MorphismRule::FiltrationLinear(m) => write!(f, "FiltrationLinear({m:?})"),
            MorphismRule::Custom(_) => write!(f, "Custom"),
        }
    }
}

/// A degree-preserving morphism `E → F`, validated for naturality.
#[derive(Clone, Debug)]
pub struct GradedMorphism {
    pub source: GradedModule,
    pub target: GradedModule,
    rule: MorphismRule,
}

/// Radius of the box in `M` on which naturality is checked.
pub const VALIDATION_RADIUS: i64 = 3;

impl GradedMorphism {
    /// Builds the morphism and checks naturality on `[−r, r]^d` along the
    /// monoid generators of `σ_M`.
    pub fn new(cone: &Cone, source: GradedModule, target: GradedModule, rule: MorphismRule) -> Result<Self> {
        match &rule {
            MorphismRule::IndicatorMap => {
                if !matches!(source, GradedModule::Indicator(_)) || !matches!(target, GradedModule::Indicator(_)) {
                    return Err(Error::InvalidModule("indicator map needs indicator modules".into()));
                }
            }
            MorphismRule::FiltrationLinear(phi) => match (&source, &target) {
                (GradedModule::Filtration(e), GradedModule::Filtration(f)) => {
                    if phi.shape() != (f.ambient_dim, e.ambient_dim) {
                        return Err(Error::DimensionMismatch {
                            expected: f.ambient_dim * e.ambient_dim,
                            found: phi.rows() * phi.cols(),
                        });
                    }
                }
                _ => return Err(Error::InvalidModule("filtration map needs filtration modules".into())),
            },
            _ => {}
        }
        let f = Self { source, target, rule };
        f.validate(cone, VALIDATION_RADIUS)?;
        Ok(f)
    }

    pub fn identity(cone: &Cone, module: GradedModule) -> Result<Self> {
        Self::new(cone, module.clone(), module, MorphismRule::Identity)
    }

    /// The canonical quotient `R → K`.
    pub fn residue_map(cone: &Cone) -> Result<Self> {
        Self::new(
            cone,
            GradedModule::ring(cone),
            GradedModule::residue_field(cone),
            MorphismRule::IndicatorMap,
        )
    }

    /// The inclusion `m → R`.
    pub fn ideal_inclusion(cone: &Cone) -> Result<Self> {
        Self::new(
            cone,
            GradedModule::maximal_ideal(cone),
            GradedModule::ring(cone),
            MorphismRule::IndicatorMap,
        )
    }

    pub fn rule(&self) -> &MorphismRule {
        &self.rule
    }

    /// The map `E_m → F_m`.
    pub fn matrix_at(&self, cone: &Cone, m: &[BigInt]) -> Result<QMatrix> {
        match &self.rule {
            MorphismRule::Identity => {
                let d = self.source.dim(cone, m);
                Ok(QMatrix::identity(d))
            }
            MorphismRule::IndicatorMap => {
                let a = self.source.dim(cone, m);
                let b = self.target.dim(cone, m);
                Ok(if a == 1 && b == 1 {
                    QMatrix::identity(1)
                } else {
                    QMatrix::zeros(b, a)
                })
            }
            MorphismRule::FiltrationLinear(phi) => {
                let (GradedModule::Filtration(e), GradedModule::Filtration(f)) = (&self.source, &self.target) else {
                    unreachable!("checked at construction");
                };
                let s = e.component_space(cone, m);
                let t = f.component_space(cone, m);
                let mut out = QMatrix::zeros(t.dim(), s.dim());
                for j in 0..s.dim() {
                    let image = phi.mul_vec(s.basis().row(j));
                    let coords = t.coordinates(&image).ok_or_else(|| Error::NaturalityViolation {
                        from: fmt_vec(m),
                        to: fmt_vec(m),
                    })?;
                    for (i, x) in coords.into_iter().enumerate() {
                        out[(i, j)] = x;
                    }
                }
                Ok(out)
            }
            MorphismRule::Custom(f) => Ok(f(cone, m)),
        }
    }

    pub fn validate(&self, cone: &Cone, radius: i64) -> Result<()> {
        self.source.validate(cone)?;
        self.target.validate(cone)?;
        let gens = cone.dual_generators()?.to_vec();
        let region = DegreeBox::cube(cone.lattice_rank(), -radius, radius)?;
        for m in region.points() {
            let fm = self.matrix_at(cone, &m)?;
            if fm.shape() != (self.target.dim(cone, &m), self.source.dim(cone, &m)) {
                return Err(Error::NaturalityViolation {
                    from: fmt_vec(&m),
                    to: fmt_vec(&m),
                });
            }
            for g in &gens {
                let m2 = shifted(&m, g);
                let fm2 = self.matrix_at(cone, &m2)?;
                let left = &fm2 * &self.source.transport(cone, &m, &m2);
                let right = &self.target.transport(cone, &m, &m2) * &fm;
                if left != right {
                    return Err(Error::NaturalityViolation {
                        from: fmt_vec(&m),
                        to: fmt_vec(&m2),
                    });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ivec;

    fn square() -> Cone {
        Cone::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[-1, 1, 1], &[0, 0, 1]]).unwrap()
    }

    #[test]
    fn residue_field_lives_in_degree_zero() {
        let s = square();
        let k = GradedModule::residue_field(&s);
        k.validate(&s).unwrap();
        assert_eq!(k.component(&s, &ivec(&[0, 0, 0])).unwrap().dim, 1);
        assert_eq!(k.component(&s, &ivec(&[0, 1, 0])).unwrap().dim, 0);
        assert_eq!(k.component(&s, &ivec(&[-1, 0, 0])).unwrap().dim, 0);
    }

    #[test]
    fn maximal_ideal_components() {
        let s = square();
        let m = GradedModule::maximal_ideal(&s);
        m.validate(&s).unwrap();
        assert_eq!(m.component(&s, &ivec(&[1, 0, 1])).unwrap().dim, 1);
        assert_eq!(m.component(&s, &ivec(&[1, -1, 2])).unwrap().dim, 0);
        assert_eq!(m.component(&s, &ivec(&[0, 0, 0])).unwrap().dim, 0);
        assert_eq!(
            m.action_matrix(&s, &ivec(&[1, 0, 1]), &ivec(&[1, 1, 1])).unwrap(),
            QMatrix::identity(1)
        );
    }

    #[test]
    fn trivial_filtration_is_full_on_dual_cone() {
        let s = square();
        let f = GradedModule::Filtration(FiltrationData::trivial(3, 4, 0));
        assert_eq!(f.component(&s, &ivec(&[1, 1, 0])).unwrap().dim, 3);
        assert_eq!(f.component(&s, &ivec(&[-1, 1, 0])).unwrap().dim, 0);
    }

    #[test]
    fn codivisorial_transport_leaves_support() {
        let s = square();
        let zero = vec![BigInt::zero(); 4];
        let e = GradedModule::codivisorial(&[1, 3], &zero);
        e.validate(&s).unwrap();
        let t = e.action_matrix(&s, &ivec(&[0, 0, 0]), &ivec(&[0, 1, 0])).unwrap();
        assert_eq!(t.shape(), (0, 1));
        let id = e.action_matrix(&s, &ivec(&[1, 0, 0]), &ivec(&[1, 0, 0])).unwrap();
        assert_eq!(id, QMatrix::identity(1));
    }

    #[test]
    fn action_requires_comparable_degrees() {
        let s = square();
        let r = GradedModule::ring(&s);
        assert!(matches!(
            r.action_matrix(&s, &ivec(&[0, 0, 0]), &ivec(&[-1, 0, 0])),
            Err(Error::NotComparable { .. })
        ));
    }

    #[test]
    fn finitely_presented_free_and_quotient() {
        let o = Cone::orthant(2);
        // two generators in degree 0 and (1,0), relation x·g0 - g1 in degree (1,0)
        let fp = FinitelyPresentedData {
            generators: vec![ivec(&[0, 0]), ivec(&[1, 0])],
            relations: vec![Relation {
                degree: ivec(&[1, 0]),
                coeffs: vec![BigRational::one(), -BigRational::one()],
            }],
        };
        let e = GradedModule::FinitelyPresented(fp.clone());
        e.validate(&o).unwrap();
        assert_eq!(e.dim(&o, &ivec(&[0, 0])), 1);
        assert_eq!(e.dim(&o, &ivec(&[1, 0])), 1);
        assert_eq!(e.dim(&o, &ivec(&[2, 3])), 1);
        let t = e.action_matrix(&o, &ivec(&[0, 0]), &ivec(&[1, 0])).unwrap();
        assert_eq!(t, QMatrix::identity(1));

        let free = GradedModule::FinitelyPresented(FinitelyPresentedData {
            generators: fp.generators.clone(),
            relations: vec![],
        });
        assert_eq!(free.dim(&o, &ivec(&[1, 1])), 2);
        assert_eq!(free.dim(&o, &ivec(&[0, 1])), 1);

        let bad = FinitelyPresentedData {
            generators: vec![ivec(&[1, 0])],
            relations: vec![Relation {
                degree: ivec(&[0, 5]),
                coeffs: vec![BigRational::one()],
            }],
        };
        assert!(GradedModule::FinitelyPresented(bad).validate(&o).is_err());
    }

    #[test]
    fn indicator_style_rules() {
        let s = square();
        let down = IndicatorData {
            style: IndicatorStyle::Submodule,
            constraints: vec![Constraint {
                ray: 0,
                op: ConstraintOp::Leq,
                bound: BigInt::zero(),
            }],
            exclude: vec![],
        };
        assert!(GradedModule::Indicator(down).validate(&s).is_err());
        let mut ideal = GradedModule::maximal_ideal(&s);
        if let GradedModule::Indicator(ind) = &mut ideal {
            ind.exclude = vec![ivec(&[1, 1, 0])];
        }
        assert!(ideal.validate(&s).is_err());
    }

    #[test]
    fn canonical_morphisms() {
        let s = square();
        let p = GradedMorphism::residue_map(&s).unwrap();
        assert_eq!(p.matrix_at(&s, &ivec(&[0, 0, 0])).unwrap(), QMatrix::identity(1));
        assert_eq!(p.matrix_at(&s, &ivec(&[1, 0, 1])).unwrap().shape(), (0, 1));
        let i = GradedMorphism::ideal_inclusion(&s).unwrap();
        assert_eq!(i.matrix_at(&s, &ivec(&[1, 0, 1])).unwrap(), QMatrix::identity(1));
        let id = GradedMorphism::identity(&s, GradedModule::ring(&s)).unwrap();
        assert_eq!(id.matrix_at(&s, &ivec(&[0, 1, 0])).unwrap(), QMatrix::identity(1));
        // K → R by the identity in degree 0 is not natural
        let bad = GradedMorphism::new(
            &s,
            GradedModule::residue_field(&s),
            GradedModule::ring(&s),
            MorphismRule::IndicatorMap,
        );
        assert!(matches!(bad, Err(Error::NaturalityViolation { .. })));
    }

    #[test]
    fn shift_and_sum() {
        let o = Cone::orthant(2);
        let r = GradedModule::ring(&o);
        let shifted = GradedModule::Shift {
            base: Box::new(r.clone()),
            by: ivec(&[1, 0]),
        };
        assert_eq!(shifted.dim(&o, &ivec(&[-1, 0])), 1);
        assert_eq!(shifted.dim(&o, &ivec(&[-2, 0])), 0);
        let sum = GradedModule::DirectSum(vec![r, shifted]);
        assert_eq!(sum.dim(&o, &ivec(&[0, 0])), 2);
        assert_eq!(sum.component(&o, &ivec(&[-1, 0])).unwrap().basis.shape(), (1, 2));
    }
}
