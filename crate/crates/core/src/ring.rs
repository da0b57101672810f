//! Based rings with involutive duality: validation, Perron dimensions,
//! invertibles, and closed sub-bases.
//!
//! A ring here is a finite label set with index 0 as the unit, a dual
//! permutation, and a dense nonnegative integer tensor `N[i][j][k]` giving
//! the multiplicity of `k` in `i ⊗ j`. Construction checks only shapes, so
//! invalid candidate rings can be built and then examined with
//! [`FusionRing::validate`]; every other operation documents validity as a
//! precondition.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Tolerance for the Perron eigenvector iteration.
pub const POWER_ITERATION_TOL: f64 = 1e-12;
/// Iteration cap for the Perron eigenvector.
pub const POWER_ITERATION_CAP: usize = 100_000;
/// Distance from an integer below which a dimension is tested for exact
/// integrality.
const INTEGRALITY_WINDOW: f64 = 1e-6;

#[derive(Clone, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    dual: Vec<usize>,
    n: Vec<u64>,
    rank: usize,
}

impl std::fmt::Debug for FusionRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FusionRing")
            .field("rank", &self.rank)
            .field("labels", &self.labels)
            .finish_non_exhaustive()
    }
}

impl FusionRing {
    /// Builds a ring from a dense tensor in row-major `[i][j][k]` order.
    /// Rejects malformed shapes; does not check the ring axioms.
    pub fn from_dense(labels: Vec<String>, dual: Vec<usize>, n: Vec<u64>) -> Result<Self> {
        let rank = labels.len();
        if rank == 0 {
            return Err(Error::Input("a ring needs at least the unit label".into()));
        }
        if dual.len() != rank {
            return Err(Error::Input(format!(
                "dual has length {} for rank {rank}",
                dual.len()
            )));
        }
        let mut seen = vec![false; rank];
        for &d in &dual {
            if d >= rank || std::mem::replace(&mut seen[d], true) {
                return Err(Error::Input("dual is not a permutation of the labels".into()));
            }
        }
        if n.len() != rank * rank * rank {
            return Err(Error::Input(format!(
                "tensor has {} entries, expected {}",
                n.len(),
                rank * rank * rank
            )));
        }
        Ok(FusionRing {
            labels,
            dual,
            n,
            rank,
        })
    }

    /// Builds a ring from sparse `(i, j, k, value)` entries; unlisted cells
    /// are zero.
    pub fn from_sparse(
        labels: Vec<String>,
        dual: Vec<usize>,
        entries: &[(usize, usize, usize, u64)],
    ) -> Result<Self> {
        let rank = labels.len();
        let mut n = vec![0u64; rank * rank * rank];
        for &(i, j, k, v) in entries {
            if i >= rank || j >= rank || k >= rank {
                return Err(Error::Input(format!(
                    "entry ({i},{j},{k}) out of range for rank {rank}"
                )));
            }
            let cell = &mut n[(i * rank + j) * rank + k];
            if *cell != 0 {
                return Err(Error::Input(format!("duplicate entry for ({i},{j},{k})")));
            }
            *cell = v;
        }
        FusionRing::from_dense(labels, dual, n)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn dual(&self) -> &[usize] {
        &self.dual
    }

    pub fn dual_of(&self, i: usize) -> usize {
        self.dual[i]
    }

    /// Multiplicity of `k` in `i ⊗ j`.
    #[inline]
    pub fn n(&self, i: usize, j: usize, k: usize) -> u64 {
        self.n[(i * self.rank + j) * self.rank + k]
    }

    /// The row `i ⊗ j` as a slice over `k`.
    #[inline]
    pub fn row(&self, i: usize, j: usize) -> &[u64] {
        let base = (i * self.rank + j) * self.rank;
        &self.n[base..base + self.rank]
    }

    /// The left-fusion matrix of `i` with entries `M[j][k] = N[i][j][k]`.
    pub fn fusion_matrix(&self, i: usize) -> Vec<Vec<u64>> {
        (0..self.rank)
            .map(|j| self.row(i, j).to_vec())
            .collect()
    }

    /// Applies a relabeling `perm[old] = new` (which must fix the unit) to
    /// labels, dual, and tensor.
    pub fn relabel(&self, perm: &[usize]) -> Result<FusionRing> {
        let rank = self.rank;
        if perm.len() != rank {
            return Err(Error::Input("relabeling length mismatch".into()));
        }
        if perm[0] != 0 {
            return Err(Error::Input("relabeling must fix the unit".into()));
        }
        let mut inv = vec![usize::MAX; rank];
        for (old, &new) in perm.iter().enumerate() {
            if new >= rank || inv[new] != usize::MAX {
                return Err(Error::Input("relabeling is not a permutation".into()));
            }
            inv[new] = old;
        }
        let labels = (0..rank).map(|new| self.labels[inv[new]].clone()).collect();
        let dual = (0..rank).map(|new| perm[self.dual[inv[new]]]).collect();
        let mut n = vec![0u64; rank * rank * rank];
        for i in 0..rank {
            for j in 0..rank {
                for k in 0..rank {
                    n[(perm[i] * rank + perm[j]) * rank + perm[k]] = self.n(i, j, k);
                }
            }
        }
        FusionRing::from_dense(labels, dual, n)
    }

    /// Checks all four ring axioms and reports each with a first violation.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::with_capacity(4);
        checks.push(self.check_unit());
        checks.push(self.check_dual());
        checks.push(self.check_frobenius());
        checks.push(self.check_associativity());
        ValidationReport { checks }
    }

    fn check_unit(&self) -> AxiomCheck {
        let n = self.rank;
        for j in 0..n {
            for k in 0..n {
                let want = u64::from(j == k);
                if self.n(0, j, k) != want {
                    return AxiomCheck::failed(
                        Axiom::Unit,
                        vec![0, j, k],
                        format!("N[0][{j}][{k}] = {}, expected {want}", self.n(0, j, k)),
                    );
                }
                if self.n(j, 0, k) != want {
                    return AxiomCheck::failed(
                        Axiom::Unit,
                        vec![j, 0, k],
                        format!("N[{j}][0][{k}] = {}, expected {want}", self.n(j, 0, k)),
                    );
                }
            }
        }
        AxiomCheck::passed(Axiom::Unit)
    }

    fn check_dual(&self) -> AxiomCheck {
        if self.dual[0] != 0 {
            return AxiomCheck::failed(
                Axiom::Dual,
                vec![0],
                format!("dual(0) = {}, expected 0", self.dual[0]),
            );
        }
        for i in 0..self.rank {
            if self.dual[self.dual[i]] != i {
                return AxiomCheck::failed(
                    Axiom::Dual,
                    vec![i],
                    format!("dual is not an involution at {i}"),
                );
            }
        }
        for i in 0..self.rank {
            for j in 0..self.rank {
                let want = u64::from(j == self.dual[i]);
                if self.n(i, j, 0) != want {
                    return AxiomCheck::failed(
                        Axiom::Dual,
                        vec![i, j, 0],
                        format!("N[{i}][{j}][0] = {}, expected {want}", self.n(i, j, 0)),
                    );
                }
            }
        }
        AxiomCheck::passed(Axiom::Dual)
    }

    fn check_frobenius(&self) -> AxiomCheck {
        let n = self.rank;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self.n(i, j, k);
                    let a = self.n(self.dual[i], k, j);
                    let b = self.n(k, self.dual[j], i);
                    if v != a || v != b {
                        return AxiomCheck::failed(
                            Axiom::Frobenius,
                            vec![i, j, k],
                            format!(
                                "N[{i}][{j}][{k}] = {v}, N[dual({i})][{k}][{j}] = {a}, \
                                 N[{k}][dual({j})][{i}] = {b}"
                            ),
                        );
                    }
                }
            }
        }
        AxiomCheck::passed(Axiom::Frobenius)
    }

    fn check_associativity(&self) -> AxiomCheck {
        let n = self.rank;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let lhs: u64 = (0..n).map(|m| self.n(i, j, m) * self.n(m, k, l)).sum();
                        let rhs: u64 = (0..n).map(|m| self.n(j, k, m) * self.n(i, m, l)).sum();
                        if lhs != rhs {
                            return AxiomCheck::failed(
                                Axiom::Associativity,
                                vec![i, j, k, l],
                                format!("((i⊗j)⊗k, l) gives {lhs}, (i⊗(j⊗k), l) gives {rhs}"),
                            );
                        }
                    }
                }
            }
        }
        AxiomCheck::passed(Axiom::Associativity)
    }
}

/// Outcome of checking one ring axiom.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    /// First violating index tuple and a human-readable account, when failed.
    pub violation: Option<AxiomViolation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomViolation {
    pub indices: Vec<usize>,
    pub detail: String,
}

impl AxiomCheck {
    fn passed(axiom: Axiom) -> Self {
        AxiomCheck {
            axiom,
            passed: true,
            violation: None,
        }
    }

    fn failed(axiom: Axiom, indices: Vec<usize>, detail: String) -> Self {
        AxiomCheck {
            axiom,
            passed: false,
            violation: Some(AxiomViolation { indices, detail }),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Axiom {
    Unit,
    Dual,
    Frobenius,
    Associativity,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Axiom::Unit => "unit",
            Axiom::Dual => "dual",
            Axiom::Frobenius => "frobenius-reciprocity",
            Axiom::Associativity => "associativity",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// The first failed axiom, if any.
    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Perron dimensions of the simples, with exact integer verification when
/// every dimension rounds to an integer.
#[derive(Clone, Debug, Serialize)]
pub struct DimensionVector {
    /// Per-simple dimension, unit first (always 1).
    pub dims: Vec<f64>,
    /// Sum of squared dimensions.
    pub global: f64,
    /// Present when the dimensions are verified integers in exact
    /// arithmetic.
    pub integral: Option<IntegralDims>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegralDims {
    pub dims: Vec<u64>,
    pub global: u64,
}

/// Computes the common positive eigenvector of all fusion matrices by power
/// iteration on their sum, normalized so the unit has dimension 1.
///
/// Pre: `ring` is valid. Errors with a numerical failure when the iteration
/// does not converge within the cap or the eigenvector does not satisfy the
/// dimension equations.
pub fn fp_dimensions(ring: &FusionRing) -> Result<DimensionVector> {
    let n = ring.rank();
    // M[j][k] = sum_i N[i][j][k]; its Perron eigenvector is the dimension
    // vector (row 0 forces irreducibility and aperiodicity).
    let mut m = vec![0f64; n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                m[j * n + k] += ring.n(i, j, k) as f64;
            }
        }
    }
    let mut v = vec![1f64; n];
    let mut converged = false;
    for _ in 0..POWER_ITERATION_CAP {
        let mut next = vec![0f64; n];
        for j in 0..n {
            let mut acc = 0.0;
            for k in 0..n {
                acc += m[j * n + k] * v[k];
            }
            next[j] = acc;
        }
        let sup = next.iter().cloned().fold(0.0, f64::max);
        if sup == 0.0 {
            return Err(Error::Numerical("fusion matrices have zero sum".into()));
        }
        for x in next.iter_mut() {
            *x /= sup;
        }
        let delta = next
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        v = next;
        if delta < POWER_ITERATION_TOL {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numerical(format!(
            "dimension iteration did not converge within {POWER_ITERATION_CAP} steps"
        )));
    }
    if v[0] <= 0.0 {
        return Err(Error::Numerical("unit coordinate of the eigenvector vanished".into()));
    }
    let dims: Vec<f64> = v.iter().map(|x| x / v[0]).collect();
    // Consistency: d_i d_j = sum_k N[i][j][k] d_k.
    let mut residual = 0f64;
    for i in 0..n {
        for j in 0..n {
            let lhs = dims[i] * dims[j];
            let rhs: f64 = (0..n).map(|k| ring.n(i, j, k) as f64 * dims[k]).sum();
            residual = residual.max((lhs - rhs).abs() / lhs.max(1.0));
        }
    }
    if residual > 1e-8 {
        return Err(Error::Numerical(format!(
            "dimension equations violated with residual {residual:.3e}"
        )));
    }
    let global = dims.iter().map(|d| d * d).sum();
    let integral = integral_dims(ring, &dims);
    Ok(DimensionVector {
        dims,
        global,
        integral,
    })
}

fn integral_dims(ring: &FusionRing, dims: &[f64]) -> Option<IntegralDims> {
    let n = ring.rank();
    let mut ints = Vec::with_capacity(n);
    for &d in dims {
        let r = d.round();
        if (d - r).abs() > INTEGRALITY_WINDOW * d.max(1.0) || r < 1.0 {
            return None;
        }
        ints.push(r as u64);
    }
    // Exact check of the dimension equations in integer arithmetic.
    for i in 0..n {
        for j in 0..n {
            let lhs = u128::from(ints[i]) * u128::from(ints[j]);
            let rhs: u128 = (0..n)
                .map(|k| u128::from(ring.n(i, j, k)) * u128::from(ints[k]))
                .sum();
            if lhs != rhs {
                return None;
            }
        }
    }
    let global = ints.iter().map(|&d| d * d).sum();
    Some(IntegralDims { dims: ints, global })
}

/// A sub-basis closed under fusion and duals, always containing the unit.
/// Indices are kept sorted, so equality and ordering are structural.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct SubBasis {
    indices: Vec<usize>,
}

impl SubBasis {
    /// Wraps an index set after verifying closure in `ring`.
    pub fn closed(ring: &FusionRing, indices: &[usize]) -> Result<Self> {
        let mut sorted: Vec<usize> = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.iter().any(|&i| i >= ring.rank()) {
            return Err(Error::Input("sub-basis index out of range".into()));
        }
        if !sorted.contains(&0) {
            return Err(Error::Input("sub-basis must contain the unit".into()));
        }
        let member = |k: usize| sorted.binary_search(&k).is_ok();
        for &i in &sorted {
            if !member(ring.dual_of(i)) {
                return Err(Error::Input(format!(
                    "sub-basis is not closed under duals at {i}"
                )));
            }
            for &j in &sorted {
                for k in 0..ring.rank() {
                    if ring.n(i, j, k) > 0 && !member(k) {
                        return Err(Error::Input(format!(
                            "sub-basis is not closed under fusion: {k} occurs in {i}⊗{j}"
                        )));
                    }
                }
            }
        }
        Ok(SubBasis { indices: sorted })
    }

    /// The smallest closed sub-basis containing the seeds.
    pub fn generate(ring: &FusionRing, seeds: &[usize]) -> Result<Self> {
        let n = ring.rank();
        if seeds.iter().any(|&i| i >= n) {
            return Err(Error::Input("seed index out of range".into()));
        }
        let mut member = vec![false; n];
        member[0] = true;
        for &s in seeds {
            member[s] = true;
        }
        loop {
            let mut changed = false;
            let current: Vec<usize> = (0..n).filter(|&i| member[i]).collect();
            for &i in &current {
                if !member[ring.dual_of(i)] {
                    member[ring.dual_of(i)] = true;
                    changed = true;
                }
                for &j in &current {
                    for k in 0..n {
                        if ring.n(i, j, k) > 0 && !member[k] {
                            member[k] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        Ok(SubBasis {
            indices: (0..n).filter(|&i| member[i]).collect(),
        })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &SubBasis) -> bool {
        self.indices.iter().all(|&i| other.contains(i))
    }

    /// Sum of squared dimensions over the members.
    pub fn fp_dim(&self, dims: &DimensionVector) -> f64 {
        self.indices.iter().map(|&i| dims.dims[i] * dims.dims[i]).sum()
    }

    /// The trivial sub-basis `{0}`.
    pub fn unit() -> Self {
        SubBasis { indices: vec![0] }
    }
}

/// The invertible simples (those whose fusion matrix is a permutation)
/// together with their group structure.
#[derive(Clone, Debug)]
pub struct PointedPart {
    pub basis: SubBasis,
    /// Group on the invertibles, indexed by position in `basis`.
    pub group: FiniteGroup,
}

/// Pre: `ring` is valid. Detection is exact (permutation fusion matrices);
/// the group table is validated, and non-closure — impossible for valid
/// rings — surfaces as an internal invariant error.
pub fn invertibles(ring: &FusionRing) -> Result<PointedPart> {
    let n = ring.rank();
    let is_invertible = |i: usize| -> bool {
        let mut col_seen = vec![false; n];
        for j in 0..n {
            let row = ring.row(i, j);
            let mut ones = 0;
            for (k, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => {
                        ones += 1;
                        if std::mem::replace(&mut col_seen[k], true) {
                            return false;
                        }
                    }
                    _ => return false,
                }
            }
            if ones != 1 {
                return false;
            }
        }
        true
    };
    let members: Vec<usize> = (0..n).filter(|&i| is_invertible(i)).collect();
    let pos: std::collections::HashMap<usize, usize> =
        members.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let mut table = vec![vec![0usize; members.len()]; members.len()];
    for (a, &i) in members.iter().enumerate() {
        for (b, &j) in members.iter().enumerate() {
            let k = ring
                .row(i, j)
                .iter()
                .position(|&v| v == 1)
                .ok_or_else(|| Error::Internal("invertible row without a unit entry".into()))?;
            table[a][b] = *pos.get(&k).ok_or_else(|| {
                Error::Internal(format!(
                    "product of invertibles {i}⊗{j} gave non-invertible {k}"
                ))
            })?;
        }
    }
    let group = FiniteGroup::from_table(table)
        .map_err(|e| Error::Internal(format!("invertibles do not form a group: {e}")))?;
    Ok(PointedPart {
        basis: SubBasis { indices: members },
        group,
    })
}

/// Closure of all constituents of `i ⊗ dual(i)`; the trivial component of
/// the universal grading. Pre: `ring` is valid.
pub fn adjoint_subbasis(ring: &FusionRing) -> Result<SubBasis> {
    adjoint_within(ring, None)
}

/// Adjoint sub-basis of the subring spanned by `sub` (which must be closed);
/// used for nilpotency chains and centralizer tests.
pub fn adjoint_of(ring: &FusionRing, sub: &SubBasis) -> Result<SubBasis> {
    adjoint_within(ring, Some(sub))
}

fn adjoint_within(ring: &FusionRing, sub: Option<&SubBasis>) -> Result<SubBasis> {
    let n = ring.rank();
    let members: Vec<usize> = match sub {
        Some(s) => s.indices().to_vec(),
        None => (0..n).collect(),
    };
    let mut seeds = Vec::new();
    for &i in &members {
        for k in 0..n {
            if ring.n(i, ring.dual_of(i), k) > 0 {
                seeds.push(k);
            }
        }
    }
    SubBasis::generate(ring, &seeds)
}

/// The descending adjoint chain and whether it terminates in the unit.
#[derive(Clone, Debug)]
pub struct NilpotencyReport {
    /// `chain[0]` is the full basis; each later entry is the adjoint of the
    /// previous one; the last entry is the fixed point.
    pub chain: Vec<SubBasis>,
    pub nilpotent: bool,
}

/// Pre: `ring` is valid.
pub fn is_nilpotent(ring: &FusionRing) -> Result<NilpotencyReport> {
    let full = SubBasis::generate(ring, &(0..ring.rank()).collect::<Vec<_>>())?;
    let mut chain = vec![full];
    loop {
        let next = adjoint_of(ring, chain.last().expect("chain nonempty"))?;
        if &next == chain.last().unwrap() {
            break;
        }
        chain.push(next);
    }
    let nilpotent = chain.last().unwrap().len() == 1;
    Ok(NilpotencyReport { chain, nilpotent })
}

/// Restriction of the ring to a closed sub-basis, reindexed by position;
/// returns the subring and the embedding back into the ambient ring.
pub fn restrict(ring: &FusionRing, sub: &SubBasis) -> Result<(FusionRing, Vec<usize>)> {
    let members = sub.indices().to_vec();
    let pos: std::collections::HashMap<usize, usize> =
        members.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let labels = members.iter().map(|&i| ring.label(i).to_string()).collect();
    let dual = members.iter().map(|&i| pos[&ring.dual_of(i)]).collect();
    let r = members.len();
    let mut n = vec![0u64; r * r * r];
    for (a, &i) in members.iter().enumerate() {
        for (b, &j) in members.iter().enumerate() {
            for (c, &k) in members.iter().enumerate() {
                n[(a * r + b) * r + c] = ring.n(i, j, k);
            }
        }
    }
    Ok((FusionRing::from_dense(labels, dual, n)?, members))
}

/// On-disk form: labels, dual, and sparse nonzero entries sorted by index.
#[derive(Serialize, Deserialize)]
struct RingFile {
    labels: Vec<String>,
    dual: Vec<usize>,
    #[serde(rename = "N")]
    entries: Vec<(usize, usize, usize, u64)>,
}

impl FusionRing {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: RingFile =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("ring JSON: {e}")))?;
        FusionRing::from_sparse(file.labels, file.dual, &file.entries)
    }

    pub fn to_json(&self) -> String {
        let mut entries = Vec::new();
        for i in 0..self.rank {
            for j in 0..self.rank {
                for k in 0..self.rank {
                    let v = self.n(i, j, k);
                    if v != 0 {
                        entries.push((i, j, k, v));
                    }
                }
            }
        }
        let file = RingFile {
            labels: self.labels.clone(),
            dual: self.dual.clone(),
            entries,
        };
        serde_json::to_string_pretty(&file).expect("ring serializes")
    }
}

/// The group ring of a finite group as a based ring (all dimensions 1).
/// Labels are `e0, e1, ...` in the group's element order.
pub fn pointed_ring(group: &FiniteGroup) -> FusionRing {
    let n = group.order();
    let labels = (0..n).map(|i| format!("e{i}")).collect();
    let dual = (0..n).map(|i| group.inv(i)).collect();
    let mut tensor = vec![0u64; n * n * n];
    for i in 0..n {
        for j in 0..n {
            tensor[(i * n + j) * n + group.mul(i, j)] = 1;
        }
    }
    // The identity may not be element 0; relabel so the unit is index 0.
    let ring = FusionRing::from_dense(labels, dual, tensor).expect("group ring shapes");
    if group.identity() == 0 {
        ring
    } else {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(0, group.identity());
        ring.relabel(&perm).expect("identity swap is a relabeling")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn pointed_z3_is_valid_with_unit_dims() {
        let ring = pointed_ring(&FiniteGroup::cyclic(3));
        assert!(ring.validate().is_valid());
        let dims = fp_dimensions(&ring).unwrap();
        assert_eq!(dims.dims, vec![1.0, 1.0, 1.0]);
        assert_eq!(dims.integral.as_ref().unwrap().global, 3);
    }

    #[test]
    fn broken_associativity_is_reported() {
        // Z3 group ring with one corrupted cell: 1⊗1 = 1 instead of 2.
        let mut entries = vec![
            (0, 0, 0, 1),
            (0, 1, 1, 1),
            (0, 2, 2, 1),
            (1, 0, 1, 1),
            (2, 0, 2, 1),
            (1, 2, 0, 1),
            (2, 1, 0, 1),
            (1, 1, 1, 1), // should be (1,1,2)
            (2, 2, 1, 1),
        ];
        let ring = FusionRing::from_sparse(
            vec!["1".into(), "a".into(), "b".into()],
            vec![0, 2, 1],
            &entries,
        )
        .unwrap();
        let report = ring.validate();
        assert!(!report.is_valid());
        // The corrupted cell breaks several axioms; associativity must be
        // among the reported failures with a concrete witness.
        let assoc = report
            .checks
            .iter()
            .find(|c| c.axiom == Axiom::Associativity)
            .unwrap();
        assert!(!assoc.passed);
        assert!(assoc.violation.is_some());

        // Repairing the cell makes the ring valid.
        entries[7] = (1, 1, 2, 1);
        let ring = FusionRing::from_sparse(
            vec!["1".into(), "a".into(), "b".into()],
            vec![0, 2, 1],
            &entries,
        )
        .unwrap();
        assert!(ring.validate().is_valid());
    }

    #[test]
    fn malformed_input_is_distinct_from_axiom_failure() {
        // Non-permutation dual is an input error at construction.
        let err = FusionRing::from_sparse(
            vec!["1".into(), "x".into()],
            vec![0, 0],
            &[(0, 0, 0, 1)],
        )
        .unwrap_err();
        assert!(err.is_input());
        // Wrong tensor size likewise.
        let err =
            FusionRing::from_dense(vec!["1".into()], vec![0], vec![1, 0]).unwrap_err();
        assert!(err.is_input());
    }

    #[test]
    fn golden_ratio_dimensions() {
        // Rank-2 ring with X⊗X = 1 ⊕ X: the Perron dimension of X is the
        // golden ratio and the ring is not integral.
        let ring = fixtures::fibonacci_ring();
        assert!(ring.validate().is_valid());
        let dims = fp_dimensions(&ring).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((dims.dims[1] - phi).abs() < 1e-9);
        assert!(dims.integral.is_none());
    }

    #[test]
    fn rank10_fixture_dimensions() {
        let ring = fixtures::rank10_ring_i();
        assert!(ring.validate().is_valid());
        let dims = fp_dimensions(&ring).unwrap();
        let ints = dims.integral.as_ref().unwrap();
        assert_eq!(ints.dims, vec![1, 1, 1, 3, 2, 2, 2, 2, 2, 2]);
        assert_eq!(ints.global, 36);
    }

    #[test]
    fn invertibles_of_rank10_fixture() {
        let ring = fixtures::rank10_ring_i();
        let pointed = invertibles(&ring).unwrap();
        assert_eq!(pointed.basis.indices(), &[0, 1, 2]);
        assert_eq!(pointed.group.invariant_factors().unwrap(), vec![3]);
    }

    #[test]
    fn adjoint_and_nilpotency() {
        let ring = fixtures::rank10_ring_i();
        let adj = adjoint_subbasis(&ring).unwrap();
        assert_eq!(adj.indices(), &[0, 1, 2, 3]);
        // The adjoint chain stabilizes at the rank-4 subring, which is its
        // own adjoint, so the ring is not nilpotent.
        let nil = is_nilpotent(&ring).unwrap();
        assert!(!nil.nilpotent);
        assert_eq!(nil.chain.last().unwrap().indices(), &[0, 1, 2, 3]);

        let z3 = pointed_ring(&FiniteGroup::cyclic(3));
        let nil = is_nilpotent(&z3).unwrap();
        assert!(nil.nilpotent);
        assert_eq!(nil.chain.len(), 2);
    }

    #[test]
    fn generated_subbasis_examples() {
        let ring = fixtures::rank10_ring_i();
        // Y generates the adjoint subring.
        let sub = SubBasis::generate(&ring, &[3]).unwrap();
        assert_eq!(sub.indices(), &[0, 1, 2, 3]);
        // X generates everything.
        let sub = SubBasis::generate(&ring, &[4]).unwrap();
        assert_eq!(sub.len(), 10);
        // The invertibles generate themselves.
        let sub = SubBasis::generate(&ring, &[1]).unwrap();
        assert_eq!(sub.indices(), &[0, 1, 2]);
    }

    #[test]
    fn closed_subbasis_rejects_non_closed_sets() {
        let ring = fixtures::rank10_ring_i();
        assert!(SubBasis::closed(&ring, &[0, 1, 2]).is_ok());
        assert!(SubBasis::closed(&ring, &[0, 3]).is_err()); // Y⊗Y leaves {1,Y}
        assert!(SubBasis::closed(&ring, &[1, 2]).is_err()); // missing unit
    }

    #[test]
    fn restriction_gives_valid_subring() {
        let ring = fixtures::rank10_ring_i();
        let adj = adjoint_subbasis(&ring).unwrap();
        let (sub, embed) = restrict(&ring, &adj).unwrap();
        assert!(sub.validate().is_valid());
        assert_eq!(embed, vec![0, 1, 2, 3]);
        let dims = fp_dimensions(&sub).unwrap();
        assert_eq!(dims.integral.unwrap().global, 12);
    }

    #[test]
    fn json_round_trip() {
        let ring = fixtures::rank10_ring_ii();
        let text = ring.to_json();
        let back = FusionRing::from_json(&text).unwrap();
        assert_eq!(back, ring);
    }

    #[test]
    fn relabel_round_trip() {
        let ring = fixtures::rank10_ring_i();
        let perm = vec![0, 2, 1, 3, 5, 6, 4, 8, 9, 7];
        let relabeled = ring.relabel(&perm).unwrap();
        assert!(relabeled.validate().is_valid());
        let mut inv = vec![0usize; perm.len()];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        assert_eq!(relabeled.relabel(&inv).unwrap(), ring);
    }
}
