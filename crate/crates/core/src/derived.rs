//! Derived limits over finite posets and the truncated view of `P_c`.
//!
//! `lim^i` of a diagram `E : P → Vect` is computed from the cochain complex
//! `C^p = ∏_{m_0 < … < m_p} E(m_p)` with the alternating face differential.
//! Only strict chains are used.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::graded::{Constraint, ConstraintOp, GradedModule, GradedMorphism, IndicatorData, IndicatorStyle, MorphismRule, Representation};
use crate::lifting::{lift_component, lift_morphism};
use crate::linalg;
use crate::matrix::{IntVector, QMatrix};

/// A functor from a finite poset to finite-dimensional vector spaces.
#[derive(Clone, Debug)]
pub struct FinitePosetDiagram {
    ids: Vec<String>,
    dims: Vec<usize>,
    /// Strict order, transitively closed.
    less: Vec<Vec<bool>>,
    /// Transport for every strictly comparable pair, `dims[j] × dims[i]`.
    maps: BTreeMap<(usize, usize), QMatrix>,
}

impl FinitePosetDiagram {
    /// Builds a diagram from generating relations `i ≤ j`, each with an
    /// optional matrix (omitted only when a side is zero-dimensional).
    /// Composites are formed along every path and must agree.
    pub fn new(ids: Vec<String>, dims: Vec<usize>, relations: Vec<(usize, usize, Option<QMatrix>)>) -> Result<Self> {
        let n = ids.len();
        if dims.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: dims.len(),
            });
        }
        let mut edges: BTreeMap<(usize, usize), QMatrix> = BTreeMap::new();
        for (i, j, map) in relations {
            for k in [i, j] {
                if k >= n {
                    return Err(Error::InvalidIndex { index: k, len: n });
                }
            }
            let map = match map {
                Some(t) => t,
                None if dims[i] == 0 || dims[j] == 0 || i == j => {
                    if i == j {
                        QMatrix::identity(dims[i])
                    } else {
                        QMatrix::zeros(dims[j], dims[i])
                    }
                }
                None => {
                    return Err(Error::InvalidDiagram(format!(
                        "relation {} -> {} has no map",
                        ids[i], ids[j]
                    )))
                }
            };
            if map.shape() != (dims[j], dims[i]) {
                return Err(Error::InvalidDiagram(format!(
                    "map {} -> {} has shape {}x{}, expected {}x{}",
                    ids[i],
                    ids[j],
                    map.rows(),
                    map.cols(),
                    dims[j],
                    dims[i]
                )));
            }
            if i == j {
                if map != QMatrix::identity(dims[i]) {
                    return Err(Error::InvalidDiagram(format!("loop at {} is not the identity", ids[i])));
                }
                continue;
            }
            if let Some(old) = edges.get(&(i, j)) {
                if *old != map {
                    return Err(Error::InvalidDiagram(format!(
                        "two different maps given for {} -> {}",
                        ids[i], ids[j]
                    )));
                }
            }
            edges.insert((i, j), map);
        }

        let order = topological_order(n, edges.keys().copied())
            .ok_or_else(|| Error::InvalidDiagram("the relation has a cycle, so it is not antisymmetric".into()))?;
        let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(i, j) in edges.keys() {
            out_edges[i].push(j);
        }
        let mut less = vec![vec![false; n]; n];
        let mut maps: BTreeMap<(usize, usize), QMatrix> = BTreeMap::new();
        for &i in &order {
            // reach[v] = composite i → v along the first path found, checked
            // against every other path as it arrives
            let mut reach: BTreeMap<usize, QMatrix> = BTreeMap::new();
            reach.insert(i, QMatrix::identity(dims[i]));
            for &v in &order {
                let Some(tv) = reach.get(&v).cloned() else {
                    continue;
                };
                for &w in &out_edges[v] {
                    let candidate = &edges[&(v, w)] * &tv;
                    match reach.get(&w) {
                        Some(existing) if *existing != candidate => {
                            return Err(Error::InvalidDiagram(format!(
                                "maps do not compose: two paths {} -> {} disagree",
                                ids[i], ids[w]
                            )));
                        }
                        Some(_) => {}
                        None => {
                            reach.insert(w, candidate);
                        }
                    }
                }
            }
            for (v, t) in reach {
                if v != i {
                    less[i][v] = true;
                    maps.insert((i, v), t);
                }
            }
        }
        Ok(Self { ids, dims, less, maps })
    }

    /// A diagram on an already transitive strict order; `transport(i, j)` is
    /// trusted to compose.
    pub fn from_order(dims: Vec<usize>, less: Vec<Vec<bool>>, transport: impl Fn(usize, usize) -> QMatrix) -> Self {
        let n = dims.len();
        let mut maps = BTreeMap::new();
        for (i, row) in less.iter().enumerate() {
            for (j, _) in row.iter().enumerate().filter(|(_, &l)| l) {
                maps.insert((i, j), transport(i, j));
            }
        }
        Self {
            ids: (0..n).map(|i| i.to_string()).collect(),
            dims,
            less,
            maps,
        }
    }

    /// The constant diagram with value `K^dim` and identity maps.
    pub fn constant(n: usize, relations: &[(usize, usize)], dim: usize) -> Result<Self> {
        Self::new(
            (0..n).map(|i| i.to_string()).collect(),
            vec![dim; n],
            relations
                .iter()
                .map(|&(i, j)| (i, j, Some(QMatrix::identity(dim))))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.less[i][j]
    }

    pub fn strict_order(&self) -> &[Vec<bool>] {
        &self.less
    }

    pub fn transport(&self, i: usize, j: usize) -> QMatrix {
        if i == j {
            return QMatrix::identity(self.dims[i]);
        }
        self.maps[&(i, j)].clone()
    }

    /// Cover relations `i ⋖ j` in index order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.less[i][j] && !(0..n).any(|k| self.less[i][k] && self.less[k][j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Strict chains with `len` elements, in lexicographic order.
    pub fn chains(&self, len: usize) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut out = Vec::new();
        if len == 0 {
            return out;
        }
        let mut stack: Vec<Vec<usize>> = (0..n).rev().map(|i| vec![i]).collect();
        while let Some(chain) = stack.pop() {
            if chain.len() == len {
                out.push(chain);
                continue;
            }
            let top = *chain.last().expect("nonempty");
            for j in (0..n).rev() {
                if self.less[top][j] {
                    let mut next = chain.clone();
                    next.push(j);
                    stack.push(next);
                }
            }
        }
        out
    }
}

fn topological_order(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Option<Vec<usize>> {
    let mut indegree = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, j) in edges {
        out[i].push(j);
        indegree[j] += 1;
    }
    let mut ready: Vec<usize> = (0..n).rev().filter(|&i| indegree[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop() {
        order.push(v);
        for &w in &out[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.push(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}

type SparseRow = BTreeMap<usize, BigRational>;

/// Rank of a sparse rational matrix given by rows.
fn sparse_rank(rows: Vec<SparseRow>) -> usize {
    let mut pivots: HashMap<usize, SparseRow> = HashMap::new();
    for mut row in rows {
        while let Some((&lead, _)) = row.iter().next() {
            match pivots.get(&lead) {
                Some(p) => {
                    let factor = row[&lead].clone();
                    for (&k, v) in p {
                        let entry = row.entry(k).or_insert_with(BigRational::zero);
                        *entry -= &factor * v;
                        if entry.is_zero() {
                            row.remove(&k);
                        }
                    }
                }
                None => {
                    let inv = row[&lead].recip();
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoosResult {
    /// `dim lim^i` for `i = 0..=imax`.
    pub dims: Vec<usize>,
    /// `dim C^p` for `p = 0..=imax + 1`.
    pub cochain_dims: Vec<usize>,
    /// `rank d^p : C^p → C^{p+1}` for `p = 0..=imax`.
    pub ranks: Vec<usize>,
}

/// Rows of `d^p : C^p → C^{p+1}` as sparse vectors over the columns of `C^p`.
fn differential_rows(diagram: &FinitePosetDiagram, lower: &[Vec<usize>], upper: &[Vec<usize>]) -> Vec<SparseRow> {
    let mut offset: HashMap<&[usize], usize> = HashMap::with_capacity(lower.len());
    let mut acc = 0;
    for chain in lower {
        offset.insert(chain.as_slice(), acc);
        acc += diagram.dims[*chain.last().expect("nonempty")];
    }
    upper
        .par_iter()
        .flat_map_iter(|tau| {
            let p1 = tau.len() - 1;
            let top = tau[p1];
            let d_top = diagram.dims[top];
            let mut rows: Vec<SparseRow> = vec![SparseRow::new(); d_top];
            for i in 0..=p1 {
                let mut face = tau.clone();
                face.remove(i);
                let off = offset[face.as_slice()];
                let sign = if i % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                if i < p1 {
                    for (r, row) in rows.iter_mut().enumerate() {
                        add_entry(row, off + r, sign.clone());
                    }
                } else {
                    let t = diagram.transport(tau[p1 - 1], top);
                    for (r, row) in rows.iter_mut().enumerate() {
                        for s in 0..t.cols() {
                            if !t[(r, s)].is_zero() {
                                add_entry(row, off + s, &sign * &t[(r, s)]);
                            }
                        }
                    }
                }
            }
            rows.into_iter()
        })
        .collect()
}

fn add_entry(row: &mut SparseRow, k: usize, v: BigRational) {
    let entry = row.entry(k).or_insert_with(BigRational::zero);
    *entry += v;
    if entry.is_zero() {
        row.remove(&k);
    }
}

/// `lim^0, …, lim^imax` of the diagram.
pub fn roos_limits(diagram: &FinitePosetDiagram, imax: usize) -> RoosResult {
    let chains: Vec<Vec<Vec<usize>>> = (1..=imax + 2).map(|len| diagram.chains(len)).collect();
    let cochain_dims: Vec<usize> = chains
        .iter()
        .map(|level| level.iter().map(|c| diagram.dims[*c.last().expect("nonempty")]).sum())
        .collect();
    let ranks: Vec<usize> = (0..=imax)
        .into_par_iter()
        .map(|p| sparse_rank(differential_rows(diagram, &chains[p], &chains[p + 1])))
        .collect();
    let dims = (0..=imax)
        .map(|p| cochain_dims[p] - ranks[p] - if p > 0 { ranks[p - 1] } else { 0 })
        .collect();
    RoosResult {
        dims,
        cochain_dims: cochain_dims[..=imax + 1].to_vec(),
        ranks,
    }
}

/// `lim^0` as the equalizer of `∏ E(m) ⇉ ∏_{a ⋖ b} E(b)`.
pub fn equalizer_limit(diagram: &FinitePosetDiagram) -> usize {
    let offsets: Vec<usize> = diagram
        .dims
        .iter()
        .scan(0, |acc, d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let total: usize = diagram.dims.iter().sum();
    let mut blocks = QMatrix::zeros(0, total);
    for (a, b) in diagram.covers() {
        let mut block = QMatrix::zeros(diagram.dims[b], total);
        block.set_block(0, offsets[b], &QMatrix::identity(diagram.dims[b]));
        block.set_block(0, offsets[a], &-&diagram.transport(a, b));
        blocks = blocks.vstack(&block);
    }
    total - linalg::rank(&blocks)
}

fn coordinate_sum(v: &[BigInt]) -> BigInt {
    v.iter().sum()
}

/// The smallest truncation bound `B` for which `T_B` contains every minimal
/// element of `P_c` and every minimal common upper bound of a pair of them.
pub fn certified_bound(cone: &Cone, c: &[BigInt]) -> Result<u64> {
    let mins = cone.minimal_elements(c)?;
    let excess = |m: &[BigInt]| -> BigInt {
        let l = cone.degree_of(m);
        coordinate_sum(&l) - coordinate_sum(c)
    };
    let mut best = BigInt::zero();
    for (i, a) in mins.elements.iter().enumerate() {
        best = best.max(excess(a));
        for b in &mins.elements[i + 1..] {
            for u in &cone.minimal_common_upper_bounds(a, b)?.elements {
                best = best.max(excess(u));
            }
        }
    }
    Ok(u64::try_from(best).expect("nonnegative and small"))
}

/// Truncated limits over `T_B = {m ∈ P_c : Σ(L(m) − c) ≤ B}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub bound: u64,
    pub certified_bound: u64,
    pub truncation_size: usize,
    /// `lim^0, …, lim^imax` over `T_B`. Only `lim^0` is certified to agree
    /// with the infinite poset, and only when `bound ≥ certified_bound`;
    /// higher entries are truncation values.
    pub lim: Vec<usize>,
}

impl OracleReport {
    pub fn lim0(&self) -> usize {
        self.lim[0]
    }

    pub fn certified(&self) -> bool {
        self.bound >= self.certified_bound
    }
}

/// Points `u ∈ N^n` with `Σu ≤ bound`, in lexicographic order.
fn bounded_compositions(n: usize, bound: u64) -> Vec<Vec<u64>> {
    fn go(prefix: &mut Vec<u64>, n: usize, left: u64, out: &mut Vec<Vec<u64>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for x in 0..=left {
            prefix.push(x);
            go(prefix, n, left - x, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), n, bound, &mut out);
    out
}

/// Lattice points of `T_B` in lexicographic order of `L(m) − c`.
pub fn truncation(cone: &Cone, c: &[BigInt], bound: u64) -> Result<Vec<IntVector>> {
    cone.check_c(c)?;
    Ok(bounded_compositions(cone.ray_count(), bound)
        .into_iter()
        .filter_map(|u| {
            let target: IntVector = u.iter().zip(c).map(|(x, ci)| ci + BigInt::from(*x)).collect();
            cone.preimage(&target)
        })
        .collect())
}

pub fn truncated_lift_oracle<M: Representation + ?Sized>(
    cone: &Cone,
    module: &M,
    c: &[BigInt],
    bound: u64,
    imax: usize,
) -> Result<OracleReport> {
    cone.require_full()?;
    let points = truncation(cone, c, bound)?;
    let n = points.len();
    let less: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i != j && cone.leq_unchecked(&points[i], &points[j])).collect())
        .collect();
    let dims = points.iter().map(|m| module.dim(cone, m)).collect();
    let diagram = FinitePosetDiagram::from_order(dims, less, |i, j| module.transport(cone, &points[i], &points[j]));
    Ok(OracleReport {
        bound,
        certified_bound: certified_bound(cone, c)?,
        truncation_size: n,
        lim: roos_limits(&diagram, imax).dims,
    })
}

/// `0 → A → B → C → 0` of graded modules.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub name: String,
    pub inclusion: GradedMorphism,
    pub projection: GradedMorphism,
}

impl ShortExactSequence {
    /// `0 → m → R → K → 0`.
    pub fn ideal_residue(cone: &Cone) -> Result<Self> {
        Ok(Self {
            name: "m -> R -> K".into(),
            inclusion: GradedMorphism::ideal_inclusion(cone)?,
            projection: GradedMorphism::residue_map(cone)?,
        })
    }

    /// `0 → {l_ρ ≥ level} → R → R/{l_ρ ≥ level} → 0` for `level ≥ 1`.
    pub fn ray_truncation(cone: &Cone, ray: usize, level: i64) -> Result<Self> {
        if ray >= cone.ray_count() {
            return Err(Error::InvalidIndex {
                index: ray,
                len: cone.ray_count(),
            });
        }
        if level < 1 {
            return Err(Error::InvalidModule(format!("truncation level {level} must be positive")));
        }
        let nonnegative = |extra: Constraint| -> Vec<Constraint> {
            let mut cs: Vec<Constraint> = (0..cone.ray_count())
                .map(|r| Constraint {
                    ray: r,
                    op: ConstraintOp::Geq,
                    bound: BigInt::zero(),
                })
                .collect();
            cs.push(extra);
            cs
        };
        let sub = GradedModule::Indicator(IndicatorData {
            style: IndicatorStyle::Submodule,
            constraints: nonnegative(Constraint {
                ray,
                op: ConstraintOp::Geq,
                bound: BigInt::from(level),
            }),
            exclude: Vec::new(),
        });
        let quotient = GradedModule::Indicator(IndicatorData {
            style: IndicatorStyle::Quotient,
            constraints: nonnegative(Constraint {
                ray,
                op: ConstraintOp::Leq,
                bound: BigInt::from(level - 1),
            }),
            exclude: Vec::new(),
        });
        let ring = GradedModule::ring(cone);
        Ok(Self {
            name: format!("l_{ray} >= {level} -> R -> quotient"),
            inclusion: GradedMorphism::new(cone, sub, ring.clone(), MorphismRule::IndicatorMap)?,
            projection: GradedMorphism::new(cone, ring, quotient, MorphismRule::IndicatorMap)?,
        })
    }

    pub fn sub(&self) -> &GradedModule {
        &self.inclusion.source
    }

    pub fn middle(&self) -> &GradedModule {
        &self.inclusion.target
    }

    pub fn quotient(&self) -> &GradedModule {
        &self.projection.target
    }
}

/// The lifted sequence `0 → Â_c → B̂_c → Ĉ_c → coker → 0` at one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedSequenceAt {
    pub sub_dim: usize,
    pub middle_dim: usize,
    pub quotient_dim: usize,
    pub inclusion_rank: usize,
    pub projection_rank: usize,
    pub composite_zero: bool,
}

impl LiftedSequenceAt {
    pub fn kernel_dim(&self) -> usize {
        self.middle_dim - self.projection_rank
    }

    pub fn cokernel_dim(&self) -> usize {
        self.quotient_dim - self.projection_rank
    }

    /// Exactness at `Â` and `B̂`.
    pub fn left_exact(&self) -> bool {
        self.composite_zero && self.inclusion_rank == self.sub_dim && self.sub_dim == self.kernel_dim()
    }
}

pub fn lifted_sequence_at(cone: &Cone, ses: &ShortExactSequence, c: &[BigInt]) -> Result<LiftedSequenceAt> {
    let a = lift_component(cone, ses.sub(), c)?;
    let b = lift_component(cone, ses.middle(), c)?;
    let q = lift_component(cone, ses.quotient(), c)?;
    let i = lift_morphism(cone, &ses.inclusion, c)?;
    let p = lift_morphism(cone, &ses.projection, c)?;
    Ok(LiftedSequenceAt {
        sub_dim: a.dim(),
        middle_dim: b.dim(),
        quotient_dim: q.dim(),
        inclusion_rank: linalg::rank(&i),
        projection_rank: linalg::rank(&p),
        composite_zero: (&p * &i).is_zero(),
    })
}

/// `dim coker(B̂_c → Ĉ_c)`, which embeds into `Â^(1)_c`.
pub fn connecting_cokernel(cone: &Cone, ses: &ShortExactSequence, c: &[BigInt]) -> Result<usize> {
    Ok(lifted_sequence_at(cone, ses, c)?.cokernel_dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree_box::DegreeBox;
    use crate::matrix::ivec;

    fn square() -> Cone {
        Cone::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[-1, 1, 1], &[0, 0, 1]]).unwrap()
    }

    fn crown() -> FinitePosetDiagram {
        FinitePosetDiagram::constant(4, &[(0, 2), (0, 3), (1, 2), (1, 3)], 1).unwrap()
    }

    #[test]
    fn crown_has_circle_cohomology() {
        let r = roos_limits(&crown(), 2);
        assert_eq!(r.dims, vec![1, 1, 0]);
        assert_eq!(equalizer_limit(&crown()), 1);
    }

    #[test]
    fn minimum_element_is_initial() {
        let d = FinitePosetDiagram::new(
            vec!["0".into(), "a".into(), "b".into()],
            vec![2, 1, 1],
            vec![
                (0, 1, Some(QMatrix::from_i64_rows(&[&[1, 0]], 2))),
                (0, 2, Some(QMatrix::from_i64_rows(&[&[1, 1]], 2))),
            ],
        )
        .unwrap();
        assert_eq!(roos_limits(&d, 3).dims, vec![2, 0, 0, 0]);
    }

    #[test]
    fn discrete_poset_is_a_product() {
        let d = FinitePosetDiagram::constant(2, &[], 1).unwrap();
        assert_eq!(roos_limits(&d, 1).dims, vec![2, 0]);
    }

    #[test]
    fn inconsistent_composition_is_rejected() {
        let two = QMatrix::from_i64_rows(&[&[2]], 1);
        let one = QMatrix::identity(1);
        let err = FinitePosetDiagram::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![1; 4],
            vec![
                (0, 1, Some(one.clone())),
                (0, 2, Some(one.clone())),
                (1, 3, Some(one)),
                (2, 3, Some(two)),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidDiagram(_)));
        let cycle = FinitePosetDiagram::constant(2, &[(0, 1), (1, 0)], 1).unwrap_err();
        assert!(matches!(cycle, Error::InvalidDiagram(_)));
    }

    #[test]
    fn transitive_closure_composes() {
        let d = FinitePosetDiagram::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![1, 1, 1],
            vec![
                (0, 1, Some(QMatrix::from_i64_rows(&[&[2]], 1))),
                (1, 2, Some(QMatrix::from_i64_rows(&[&[3]], 1))),
            ],
        )
        .unwrap();
        assert!(d.less(0, 2));
        assert_eq!(d.transport(0, 2), QMatrix::from_i64_rows(&[&[6]], 1));
        assert_eq!(d.covers(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn oracle_examples() {
        let s = square();
        let k = GradedModule::residue_field(&s);
        let c = ivec(&[-1, 0, 0, 0]);
        let rep = truncated_lift_oracle(&s, &k, &c, 2, 0).unwrap();
        assert_eq!(rep.lim0(), 1);
        let zero = vec![BigInt::zero(); 4];
        let e = GradedModule::codivisorial(&[1, 3], &zero);
        let c = ivec(&[-1, 0, -1, 0]);
        let rep = truncated_lift_oracle(&s, &e, &c, 4, 1).unwrap();
        assert_eq!(rep.lim0(), 3);
        let b = certified_bound(&s, &c).unwrap();
        let rep = truncated_lift_oracle(&s, &e, &c, b, 0).unwrap();
        assert!(rep.certified());
        assert_eq!(rep.lim0(), 3);

        let o = Cone::orthant(3);
        let r = GradedModule::ring(&o);
        let rep = truncated_lift_oracle(&o, &r, &ivec(&[0, 1, 2]), 0, 1).unwrap();
        assert_eq!(rep.truncation_size, 1);
        assert_eq!(rep.lim, vec![1, 0]);
    }

    #[test]
    fn ideal_residue_sequence() {
        let s = square();
        let ses = ShortExactSequence::ideal_residue(&s).unwrap();
        assert_eq!(connecting_cokernel(&s, &ses, &ivec(&[0, 0, 0, 0])).unwrap(), 0);
        assert_eq!(connecting_cokernel(&s, &ses, &ivec(&[-1, 0, 0, 0])).unwrap(), 1);
        assert_eq!(connecting_cokernel(&s, &ses, &ivec(&[1, 0, 0, 0])).unwrap(), 0);
        for c in DegreeBox::cube(4, -1, 1).unwrap().points() {
            assert!(lifted_sequence_at(&s, &ses, &c).unwrap().left_exact(), "c = {c:?}");
        }
    }

    #[test]
    fn ray_truncation_sequence_is_left_exact() {
        let s = square();
        let ses = ShortExactSequence::ray_truncation(&s, 2, 1).unwrap();
        for c in DegreeBox::cube(4, -1, 1).unwrap().points() {
            assert!(lifted_sequence_at(&s, &ses, &c).unwrap().left_exact(), "c = {c:?}");
        }
    }
}
