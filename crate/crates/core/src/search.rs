//! Completion of partially specified fusion rings.
//!
//! A [`SearchSpec`] pins down the skeleton of a ring — labels, an integral
//! dimension vector, (possibly partial) duality, an optional grading, the
//! left-multiplication action of chosen invertibles — together with any
//! known structure constants. [`derive_forced_entries`] closes that data
//! under the ring axioms by constraint propagation, and
//! [`complete_fusion_rings`] enumerates every completion of the remaining
//! free cells by backtracking, deduplicated up to the relabeling policy
//! declared in the spec.
//!
//! Propagation applies, to a fixpoint: the unit rows and columns, the
//! duality column `N[i][j][0] = δ(j, i*)` (in both directions, so a `1` in
//! that column also names a dual), grading support zeros, the declared
//! invertible actions `N[g][x][k] = δ(k, g·x)` and their equivariance
//! `N[g·a][b][g·c] = N[a][b][c]`, the reciprocity orbit
//! `N[i][j][k] = N[i*][k][j] = N[k][j*][i]`, the dimension equations
//! `Σ_k N[i][j][k]·d_k = d_i·d_j` (forcing single unknowns and tightening
//! per-cell bounds), and an associativity check over every quadruple whose
//! terms are all determined.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::canonical::{canonical_form, CanonicalKey};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::ring::FusionRing;

/// Default ceiling on the number of value assignments tried in one search.
pub const SEARCH_NODE_CAP: u64 = 1_000_000;

/// Ceiling on the size of an explicitly declared relabeling subgroup.
const RELABEL_GROUP_CAP: usize = 10_000;

/// How completions are identified with one another before being returned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DedupPolicy {
    /// One ring per isomorphism class (canonical-key deduplication). This
    /// identifies rings under every dimension- and grading-preserving
    /// relabeling that fixes the unit.
    Full,
    /// Every raw completion is returned.
    None,
    /// One ring per orbit of the subgroup generated by the given label
    /// permutations (each fixing the unit).
    Subgroup(Vec<Vec<usize>>),
}

/// A grading constraint: each basis index is assigned an element of a
/// finite group, and `N[i][j][k]` may be nonzero only when the assigned
/// elements satisfy `a_i · a_j = a_k`.
#[derive(Clone, Debug)]
pub struct GradingSpec {
    pub group: FiniteGroup,
    pub assignment: Vec<usize>,
}

/// A partially specified fusion ring plus search policy.
///
/// Cell knowledge is declared in three layers: `fixed` entries are known
/// values; `free` (when present) lists the unknown cells, every other cell
/// defaulting to the value implied by the unit/dual/action structure or to
/// zero; when `free` is absent every cell not structurally implied is
/// unknown. `bounds` lowers the default per-cell ceiling
/// `⌊d_i·d_j / d_k⌋`.
#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub labels: Vec<String>,
    pub dims: Vec<u64>,
    /// Partial duality: `dual[i] = Some(j)` declares `i* = j`.
    pub dual: Vec<Option<usize>>,
    pub grading: Option<GradingSpec>,
    /// Invertible actions `(g, π)` with `π[x] = g ⊗ x`.
    pub pointed_action: Vec<(usize, Vec<usize>)>,
    pub fixed: Vec<(usize, usize, usize, u64)>,
    pub free: Option<Vec<(usize, usize, usize)>>,
    pub bounds: Vec<(usize, usize, usize, u64)>,
    pub dedup: DedupPolicy,
    pub node_cap: u64,
}

/// The result of closing a spec under propagation: every cell is either
/// known or listed in `free` with a (possibly tightened) bound.
#[derive(Clone, Debug)]
pub struct PartialRing {
    rank: usize,
    values: Vec<Option<u64>>,
    bounds: Vec<u64>,
    /// Number of cells propagation determined beyond the declared ones.
    pub forced: usize,
    /// Cells still undetermined, in lexicographic order.
    pub free: Vec<(usize, usize, usize)>,
}

impl PartialRing {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn value(&self, i: usize, j: usize, k: usize) -> Option<u64> {
        self.values[(i * self.rank + j) * self.rank + k]
    }

    pub fn bound(&self, i: usize, j: usize, k: usize) -> u64 {
        self.bounds[(i * self.rank + j) * self.rank + k]
    }
}

/// Everything a completed search reports.
#[derive(Clone, Debug)]
pub struct SearchResult {
    /// Number of completions before deduplication.
    pub raw_count: usize,
    /// Deduplicated completions, sorted by canonical key.
    pub rings: Vec<FusionRing>,
    /// Canonical key of each returned ring, aligned with `rings`.
    pub keys: Vec<CanonicalKey>,
    /// Value assignments tried.
    pub nodes: u64,
    /// Cells determined by the initial propagation pass.
    pub forced: usize,
    /// Cells left to the backtracking search after that pass.
    pub free_cells: usize,
}

// ---------------------------------------------------------------------------
// Propagation state
// ---------------------------------------------------------------------------

#[derive(Clone)]
struct State {
    n: usize,
    dims: Vec<u64>,
    dual: Vec<Option<usize>>,
    /// Grading component of each index, with the group's full table, when a
    /// grading is declared.
    grading: Option<(FiniteGroup, Vec<usize>)>,
    actions: Vec<(usize, Vec<usize>)>,
    values: Vec<Option<u64>>,
    bounds: Vec<u64>,
    changed: bool,
    /// When set, newly determined cells count toward `forced`.
    counting: bool,
    forced: usize,
}

impl State {
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    fn value(&self, i: usize, j: usize, k: usize) -> Option<u64> {
        self.values[self.idx(i, j, k)]
    }

    fn set(&mut self, i: usize, j: usize, k: usize, v: u64, rule: &str) -> Result<()> {
        let idx = self.idx(i, j, k);
        match self.values[idx] {
            Some(w) if w == v => Ok(()),
            Some(w) => Err(Error::Unsatisfiable(format!(
                "{rule} forces N[{i}][{j}][{k}] = {v}, but it is already {w}"
            ))),
            None => {
                if v > self.bounds[idx] {
                    return Err(Error::Unsatisfiable(format!(
                        "{rule} forces N[{i}][{j}][{k}] = {v}, above its bound {}",
                        self.bounds[idx]
                    )));
                }
                self.values[idx] = Some(v);
                self.changed = true;
                if self.counting {
                    self.forced += 1;
                }
                Ok(())
            }
        }
    }

    fn tighten(&mut self, i: usize, j: usize, k: usize, bound: u64) -> Result<()> {
        let idx = self.idx(i, j, k);
        if bound < self.bounds[idx] {
            self.bounds[idx] = bound;
            self.changed = true;
        }
        match self.values[idx] {
            Some(w) if w > bound => Err(Error::Unsatisfiable(format!(
                "N[{i}][{j}][{k}] = {w} exceeds its tightened bound {bound}"
            ))),
            Some(_) => Ok(()),
            None if bound == 0 => self.set(i, j, k, 0, "zero bound"),
            None => Ok(()),
        }
    }

    fn set_dual(&mut self, i: usize, j: usize) -> Result<()> {
        for (a, b) in [(i, j), (j, i)] {
            match self.dual[a] {
                Some(c) if c != b => {
                    return Err(Error::Unsatisfiable(format!(
                        "duality assigns index {a} both {c} and {b} as dual"
                    )));
                }
                Some(_) => {}
                None => {
                    self.dual[a] = Some(b);
                    self.changed = true;
                }
            }
        }
        Ok(())
    }

    // -- propagation passes -------------------------------------------------

    fn pass_unit(&mut self) -> Result<()> {
        for j in 0..self.n {
            for k in 0..self.n {
                let d = u64::from(j == k);
                self.set(0, j, k, d, "unit row")?;
                self.set(j, 0, k, u64::from(j == k), "unit column")?;
                let _ = d;
            }
        }
        Ok(())
    }

    fn pass_duality(&mut self) -> Result<()> {
        // Known duals determine the whole unit-target column.
        for i in 0..self.n {
            if let Some(di) = self.dual[i] {
                for j in 0..self.n {
                    self.set(i, j, 0, u64::from(j == di), "duality")?;
                    self.set(j, i, 0, u64::from(j == di), "duality")?;
                }
            }
        }
        // A determined `1` in that column names a dual; a fully zero row
        // leaves an index with no dual at all.
        for i in 0..self.n {
            if self.dual[i].is_some() {
                continue;
            }
            let mut all_zero = true;
            for j in 0..self.n {
                match self.value(i, j, 0) {
                    Some(0) => {}
                    Some(_) => {
                        self.set_dual(i, j)?;
                        all_zero = false;
                        break;
                    }
                    None => all_zero = false,
                }
            }
            if all_zero {
                return Err(Error::Unsatisfiable(format!(
                    "index {i} has no dual: its unit-target column is zero"
                )));
            }
        }
        Ok(())
    }

    fn pass_equivariance(&mut self) -> Result<()> {
        let actions = self.actions.clone();
        for (_, pi) in &actions {
            for a in 0..self.n {
                for b in 0..self.n {
                    for c in 0..self.n {
                        let src = self.idx(a, b, c);
                        let dst = self.idx(pi[a], b, pi[c]);
                        if src == dst {
                            continue;
                        }
                        let low = self.bounds[src].min(self.bounds[dst]);
                        self.tighten(a, b, c, low)?;
                        self.tighten(pi[a], b, pi[c], low)?;
                        match (self.values[src], self.values[dst]) {
                            (Some(v), None) => {
                                self.set(pi[a], b, pi[c], v, "pointed-action equivariance")?;
                            }
                            (None, Some(v)) => {
                                self.set(a, b, c, v, "pointed-action equivariance")?;
                            }
                            (Some(v), Some(w)) if v != w => {
                                return Err(Error::Unsatisfiable(format!(
                                    "pointed-action equivariance: N[{}][{b}][{}] = {w} \
                                     differs from N[{a}][{b}][{c}] = {v}",
                                    pi[a], pi[c]
                                )));
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn pass_reciprocity(&mut self) -> Result<()> {
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    let mut partners: Vec<(usize, usize, usize)> = Vec::new();
                    if let Some(di) = self.dual[i] {
                        partners.push((di, k, j));
                    }
                    if let Some(dj) = self.dual[j] {
                        partners.push((k, dj, i));
                    }
                    for (a, b, c) in partners {
                        let src = self.idx(i, j, k);
                        let dst = self.idx(a, b, c);
                        if src == dst {
                            continue;
                        }
                        let low = self.bounds[src].min(self.bounds[dst]);
                        self.tighten(i, j, k, low)?;
                        self.tighten(a, b, c, low)?;
                        match (self.values[src], self.values[dst]) {
                            (Some(v), None) => self.set(a, b, c, v, "reciprocity")?,
                            (None, Some(v)) => self.set(i, j, k, v, "reciprocity")?,
                            (Some(v), Some(w)) if v != w => {
                                return Err(Error::Unsatisfiable(format!(
                                    "reciprocity: N[{i}][{j}][{k}] = {v} differs from \
                                     N[{a}][{b}][{c}] = {w}"
                                )));
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn pass_dimension_rows(&mut self) -> Result<()> {
        for i in 0..self.n {
            for j in 0..self.n {
                let target = self.dims[i] * self.dims[j];
                let mut known = 0u64;
                let mut unknown: Vec<usize> = Vec::new();
                for k in 0..self.n {
                    match self.value(i, j, k) {
                        Some(v) => known += v * self.dims[k],
                        None => unknown.push(k),
                    }
                }
                if known > target {
                    return Err(Error::Unsatisfiable(format!(
                        "dimension equation for ({i},{j}): partial sum {known} exceeds \
                         d_{i}·d_{j} = {target}"
                    )));
                }
                let rem = target - known;
                if unknown.is_empty() {
                    if rem != 0 {
                        return Err(Error::Unsatisfiable(format!(
                            "dimension equation for ({i},{j}): row sums to {known}, \
                             not {target}"
                        )));
                    }
                    continue;
                }
                if unknown.len() == 1 {
                    let k = unknown[0];
                    if rem % self.dims[k] != 0 {
                        return Err(Error::Unsatisfiable(format!(
                            "dimension equation for ({i},{j}): remainder {rem} is not a \
                             multiple of d_{k} = {}",
                            self.dims[k]
                        )));
                    }
                    self.set(i, j, k, rem / self.dims[k], "dimension equation")?;
                    continue;
                }
                let mut capacity = 0u64;
                for &k in &unknown {
                    self.tighten(i, j, k, rem / self.dims[k])?;
                    capacity += self.bounds[self.idx(i, j, k)] * self.dims[k];
                }
                if capacity < rem {
                    return Err(Error::Unsatisfiable(format!(
                        "dimension equation for ({i},{j}): remaining cells can reach at \
                         most {capacity} of the required {rem}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks `Σ_k N[i][j][k]·N[k][l][m] = Σ_k N[j][l][k]·N[i][k][m]` for
    /// every `(i,j,l,m)` all of whose terms are determined.
    fn pass_associativity(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    'target: for m in 0..n {
                        let mut lhs = 0u64;
                        let mut rhs = 0u64;
                        for k in 0..n {
                            let (a, b) = match (self.value(i, j, k), self.value(k, l, m)) {
                                (Some(a), Some(b)) => (a, b),
                                _ => continue 'target,
                            };
                            let (c, d) = match (self.value(j, l, k), self.value(i, k, m)) {
                                (Some(c), Some(d)) => (c, d),
                                _ => continue 'target,
                            };
                            lhs += a * b;
                            rhs += c * d;
                        }
                        if lhs != rhs {
                            return Err(Error::Unsatisfiable(format!(
                                "associativity fails on ({i},{j},{l}) at target {m}: \
                                 {lhs} ≠ {rhs}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn propagate(&mut self) -> Result<()> {
        loop {
            self.changed = false;
            self.pass_unit()?;
            self.pass_duality()?;
            self.pass_equivariance()?;
            self.pass_reciprocity()?;
            self.pass_dimension_rows()?;
            self.pass_associativity()?;
            if !self.changed {
                return Ok(());
            }
        }
    }

    // -- search support -----------------------------------------------------

    fn unknown_cells(&self) -> Vec<(usize, usize, usize)> {
        let mut cells = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    if self.value(i, j, k).is_none() {
                        cells.push((i, j, k));
                    }
                }
            }
        }
        cells
    }

    /// The next cell to branch on: smallest remaining dimension budget in
    /// its row, then lexicographic position.
    fn pick_cell(&self) -> Option<(usize, usize, usize)> {
        let mut best: Option<(u64, usize, usize, usize)> = None;
        for i in 0..self.n {
            for j in 0..self.n {
                let mut budget = self.dims[i] * self.dims[j];
                let mut open = Vec::new();
                for k in 0..self.n {
                    match self.value(i, j, k) {
                        Some(v) => budget = budget.saturating_sub(v * self.dims[k]),
                        None => open.push(k),
                    }
                }
                if let Some(&k) = open.first() {
                    let cand = (budget, i, j, k);
                    if best.map_or(true, |b| cand < b) {
                        best = Some(cand);
                    }
                }
            }
        }
        best.map(|(_, i, j, k)| (i, j, k))
    }

    /// Builds the completed ring once every cell is determined. Returns
    /// `None` when the completed tensor is not a valid fusion ring (for
    /// example, a duality that fails to be involutive).
    fn finish(&self, labels: &[String]) -> Option<FusionRing> {
        let n = self.n;
        let mut dual = Vec::with_capacity(n);
        for i in 0..n {
            match self.dual[i] {
                Some(d) => dual.push(d),
                None => {
                    let mut ones =
                        (0..n).filter(|&j| self.value(i, j, 0) == Some(1));
                    let j = ones.next()?;
                    if ones.next().is_some() {
                        return None;
                    }
                    dual.push(j);
                }
            }
        }
        let tensor: Vec<u64> = self.values.iter().map(|v| v.unwrap_or(0)).collect();
        let ring = FusionRing::from_dense(labels.to_vec(), dual, tensor).ok()?;
        ring.validate().is_valid().then_some(ring)
    }
}

// ---------------------------------------------------------------------------
// Spec validation and state construction
// ---------------------------------------------------------------------------

fn validate_spec(spec: &SearchSpec) -> Result<()> {
    let n = spec.labels.len();
    if n == 0 {
        return Err(Error::Input("search spec has no labels".into()));
    }
    if spec.dims.len() != n || spec.dual.len() != n {
        return Err(Error::Input(format!(
            "search spec shape mismatch: {n} labels, {} dims, {} dual entries",
            spec.dims.len(),
            spec.dual.len()
        )));
    }
    if spec.dims[0] != 1 {
        return Err(Error::Input("the unit must have dimension 1".into()));
    }
    if spec.dims.iter().any(|&d| d == 0) {
        return Err(Error::Input("dimensions must be positive".into()));
    }
    match spec.dual[0] {
        Some(0) | None => {}
        Some(x) => {
            return Err(Error::Input(format!(
                "the unit must be self-dual, not dual to {x}"
            )));
        }
    }
    for (i, entry) in spec.dual.iter().enumerate() {
        if let Some(j) = *entry {
            if j >= n {
                return Err(Error::Input(format!("dual[{i}] = {j} is out of range")));
            }
            if spec.dims[i] != spec.dims[j] {
                return Err(Error::Input(format!(
                    "dual must preserve dimension: d_{i} = {} but d_{j} = {}",
                    spec.dims[i], spec.dims[j]
                )));
            }
            if let Some(back) = spec.dual[j] {
                if back != i {
                    return Err(Error::Input(format!(
                        "dual is not involutive: dual[{i}] = {j} but dual[{j}] = {back}"
                    )));
                }
            }
        }
    }
    if let Some(grading) = &spec.grading {
        if grading.assignment.len() != n {
            return Err(Error::Input(format!(
                "grading assignment covers {} indices, expected {n}",
                grading.assignment.len()
            )));
        }
        let order = grading.group.order();
        if grading.assignment.iter().any(|&a| a >= order) {
            return Err(Error::Input("grading assignment is out of range".into()));
        }
        if grading.assignment[0] != grading.group.identity() {
            return Err(Error::Input(
                "the unit must sit in the trivial grading component".into(),
            ));
        }
        for (i, entry) in spec.dual.iter().enumerate() {
            if let Some(j) = *entry {
                let expect = grading.group.inv(grading.assignment[i]);
                if grading.assignment[j] != expect {
                    return Err(Error::Input(format!(
                        "grading must invert under duality: |{j}| ≠ |{i}|⁻¹"
                    )));
                }
            }
        }
    }
    for (g, pi) in &spec.pointed_action {
        if *g >= n {
            return Err(Error::Input(format!("action element {g} is out of range")));
        }
        if spec.dims[*g] != 1 {
            return Err(Error::Input(format!(
                "action element {g} has dimension {}, expected an invertible",
                spec.dims[*g]
            )));
        }
        if pi.len() != n {
            return Err(Error::Input(format!(
                "action of {g} permutes {} indices, expected {n}",
                pi.len()
            )));
        }
        let mut seen = vec![false; n];
        for (x, &y) in pi.iter().enumerate() {
            if y >= n || seen[y] {
                return Err(Error::Input(format!(
                    "action of {g} is not a permutation"
                )));
            }
            seen[y] = true;
            if spec.dims[x] != spec.dims[y] {
                return Err(Error::Input(format!(
                    "action of {g} must preserve dimension: sends {x} (d = {}) to \
                     {y} (d = {})",
                    spec.dims[x], spec.dims[y]
                )));
            }
        }
        if pi[0] != *g {
            return Err(Error::Input(format!(
                "action of {g} must send the unit to {g}, not {}",
                pi[0]
            )));
        }
        if let Some(grading) = &spec.grading {
            for x in 0..n {
                let expect = grading
                    .group
                    .mul(grading.assignment[*g], grading.assignment[x]);
                if grading.assignment[pi[x]] != expect {
                    return Err(Error::Input(format!(
                        "action of {g} moves {x} across grading components"
                    )));
                }
            }
        }
    }
    for &(i, j, k, _) in &spec.fixed {
        if i >= n || j >= n || k >= n {
            return Err(Error::Input(format!(
                "fixed cell ({i},{j},{k}) is out of range"
            )));
        }
    }
    if let Some(free) = &spec.free {
        for &(i, j, k) in free {
            if i >= n || j >= n || k >= n {
                return Err(Error::Input(format!(
                    "free cell ({i},{j},{k}) is out of range"
                )));
            }
        }
    }
    for &(i, j, k, _) in &spec.bounds {
        if i >= n || j >= n || k >= n {
            return Err(Error::Input(format!(
                "bounded cell ({i},{j},{k}) is out of range"
            )));
        }
    }
    if let DedupPolicy::Subgroup(gens) = &spec.dedup {
        for perm in gens {
            if perm.len() != n {
                return Err(Error::Input(format!(
                    "relabeling permutation covers {} indices, expected {n}",
                    perm.len()
                )));
            }
            let mut seen = vec![false; n];
            for &y in perm {
                if y >= n || seen[y] {
                    return Err(Error::Input(
                        "relabeling generator is not a permutation".into(),
                    ));
                }
                seen[y] = true;
            }
            if perm[0] != 0 {
                return Err(Error::Input(
                    "relabeling generators must fix the unit".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Builds the initial cell state: declared bounds, fixed entries, the
/// structural layers (unit, duality column, grading zeros, action rows),
/// and — when `free` is declared — zeros for every cell left implicit.
/// Structural clashes here are spec inconsistencies, reported as input
/// errors.
fn initial_state(spec: &SearchSpec) -> Result<State> {
    let n = spec.labels.len();
    let mut state = State {
        n,
        dims: spec.dims.clone(),
        dual: spec.dual.clone(),
        grading: spec
            .grading
            .as_ref()
            .map(|g| (g.group.clone(), g.assignment.clone())),
        actions: spec.pointed_action.clone(),
        values: vec![None; n * n * n],
        bounds: vec![0; n * n * n],
        changed: false,
        counting: false,
        forced: 0,
    };
    state.dual[0] = Some(0);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let idx = state.idx(i, j, k);
                let mut b = spec.dims[i] * spec.dims[j] / spec.dims[k];
                if k == 0 {
                    b = b.min(1);
                }
                state.bounds[idx] = b;
            }
        }
    }
    for &(i, j, k, b) in &spec.bounds {
        let idx = state.idx(i, j, k);
        state.bounds[idx] = state.bounds[idx].min(b);
    }

    let structural = |state: &mut State| -> Result<()> {
        for &(i, j, k, v) in &spec.fixed {
            state.set(i, j, k, v, "fixed entry")?;
        }
        state.pass_unit()?;
        for i in 0..n {
            if let Some(di) = state.dual[i] {
                for j in 0..n {
                    state.set(i, j, 0, u64::from(j == di), "duality")?;
                }
            }
        }
        if let Some((group, assignment)) = state.grading.clone() {
            for i in 0..n {
                for j in 0..n {
                    let product = group.mul(assignment[i], assignment[j]);
                    for k in 0..n {
                        if assignment[k] != product {
                            state.set(i, j, k, 0, "grading support")?;
                        }
                    }
                }
            }
        }
        for (g, pi) in state.actions.clone() {
            for x in 0..n {
                for y in 0..n {
                    state.set(g, x, y, u64::from(y == pi[x]), "pointed action")?;
                }
            }
        }
        if let Some(free) = &spec.free {
            let declared: BTreeSet<usize> =
                free.iter().map(|&(i, j, k)| state.idx(i, j, k)).collect();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let idx = state.idx(i, j, k);
                        if state.values[idx].is_none() && !declared.contains(&idx) {
                            state.set(i, j, k, 0, "implicit zero")?;
                        }
                    }
                }
            }
        }
        Ok(())
    };
    structural(&mut state).map_err(|e| match e {
        Error::Unsatisfiable(msg) => Error::Input(format!("inconsistent spec: {msg}")),
        other => other,
    })?;
    Ok(state)
}

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

/// Closes a spec under constraint propagation, reporting every cell it
/// determines and the cells still free.
pub fn derive_forced_entries(spec: &SearchSpec) -> Result<PartialRing> {
    validate_spec(spec)?;
    let mut state = initial_state(spec)?;
    state.counting = true;
    state.propagate()?;
    Ok(PartialRing {
        rank: state.n,
        free: state.unknown_cells(),
        forced: state.forced,
        values: state.values,
        bounds: state.bounds,
    })
}

/// Enumerates every completion of the spec by depth-first backtracking,
/// branching on the cell with the tightest remaining dimension budget and
/// trying values in ascending order. Returns the completions deduplicated
/// per the spec's relabeling policy, sorted by canonical key.
pub fn complete_fusion_rings(spec: &SearchSpec) -> Result<SearchResult> {
    validate_spec(spec)?;
    let mut root = initial_state(spec)?;
    root.counting = true;
    match root.propagate() {
        Ok(()) => {}
        // A root-level contradiction means the spec has no completions at
        // all; that is an empty result, not a failure of the search.
        Err(Error::Unsatisfiable(_)) => {
            return Ok(SearchResult {
                raw_count: 0,
                rings: Vec::new(),
                keys: Vec::new(),
                nodes: 0,
                forced: root.forced,
                free_cells: root.unknown_cells().len(),
            });
        }
        Err(other) => return Err(other),
    }
    root.counting = false;
    let forced = root.forced;
    let free_cells = root.unknown_cells().len();

    let mut raw: Vec<FusionRing> = Vec::new();
    let mut nodes: u64 = 0;
    dfs(&root, spec, &mut raw, &mut nodes)?;
    let raw_count = raw.len();

    let mut keyed: Vec<(CanonicalKey, FusionRing)> = Vec::with_capacity(raw.len());
    for ring in raw {
        let key = canonical_form(&ring)?.key;
        keyed.push((key, ring));
    }

    let deduped: Vec<(CanonicalKey, FusionRing)> = match &spec.dedup {
        DedupPolicy::None => {
            keyed.sort_by(|a, b| (&a.0, flat(&a.1)).cmp(&(&b.0, flat(&b.1))));
            keyed
        }
        DedupPolicy::Full => {
            let mut classes: BTreeMap<CanonicalKey, FusionRing> = BTreeMap::new();
            for (key, ring) in keyed {
                classes.entry(key).or_insert(ring);
            }
            classes.into_iter().collect()
        }
        DedupPolicy::Subgroup(gens) => {
            let group = close_permutation_group(gens, spec.labels.len())?;
            let mut reps: BTreeMap<Vec<u64>, (CanonicalKey, FusionRing)> = BTreeMap::new();
            for (key, ring) in keyed {
                let mut orbit_min: Option<(Vec<u64>, FusionRing)> = None;
                for perm in &group {
                    let image = ring.relabel(perm)?;
                    let t = flat(&image);
                    if orbit_min.as_ref().map_or(true, |(m, _)| t < *m) {
                        orbit_min = Some((t, image));
                    }
                }
                let (tensor, rep) = orbit_min.expect("orbit of a nonempty group");
                reps.entry(tensor).or_insert((key, rep));
            }
            let mut list: Vec<(CanonicalKey, FusionRing)> = reps.into_values().collect();
            list.sort_by(|a, b| (&a.0, flat(&a.1)).cmp(&(&b.0, flat(&b.1))));
            list
        }
    };

    let (keys, rings) = deduped.into_iter().map(|(k, r)| (k, r)).unzip();
    Ok(SearchResult {
        raw_count,
        rings,
        keys,
        nodes,
        forced,
        free_cells,
    })
}

fn dfs(
    state: &State,
    spec: &SearchSpec,
    out: &mut Vec<FusionRing>,
    nodes: &mut u64,
) -> Result<()> {
    let Some((i, j, k)) = state.pick_cell() else {
        if let Some(ring) = state.finish(&spec.labels) {
            out.push(ring);
        }
        return Ok(());
    };
    let bound = state.bounds[state.idx(i, j, k)];
    for v in 0..=bound {
        *nodes += 1;
        if *nodes > spec.node_cap {
            return Err(Error::Capacity(format!(
                "search node cap {} exceeded with {} completions found so far",
                spec.node_cap,
                out.len()
            )));
        }
        let mut child = state.clone();
        if child.set(i, j, k, v, "search assignment").is_err() {
            continue;
        }
        match child.propagate() {
            Ok(()) => dfs(&child, spec, out, nodes)?,
            Err(Error::Unsatisfiable(_)) => {}
            Err(other) => return Err(other),
        }
    }
    Ok(())
}

fn flat(ring: &FusionRing) -> Vec<u64> {
    let n = ring.rank();
    let mut t = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                t.push(ring.n(i, j, k));
            }
        }
    }
    t
}

fn close_permutation_group(gens: &[Vec<usize>], n: usize) -> Result<Vec<Vec<usize>>> {
    let identity: Vec<usize> = (0..n).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(identity.clone());
    let mut queue = vec![identity];
    while let Some(p) = queue.pop() {
        for g in gens {
            let q: Vec<usize> = (0..n).map(|x| g[p[x]]).collect();
            if seen.insert(q.clone()) {
                if seen.len() > RELABEL_GROUP_CAP {
                    return Err(Error::Capacity(format!(
                        "relabeling subgroup exceeds {RELABEL_GROUP_CAP} elements"
                    )));
                }
                queue.push(q);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

// ---------------------------------------------------------------------------
// JSON form
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct GradingFile {
    table: Vec<Vec<usize>>,
    assignment: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ActionFile {
    element: usize,
    permutation: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RelabelGroupFile {
    Named(String),
    Generators(Vec<Vec<usize>>),
}

#[derive(Serialize, Deserialize)]
struct SearchSpecFile {
    labels: Vec<String>,
    dims: Vec<u64>,
    dual: Vec<Option<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    grading: Option<GradingFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pointed_action: Vec<ActionFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    fixed: Vec<(usize, usize, usize, u64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    free: Option<Vec<(usize, usize, usize)>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    bounds: Vec<(usize, usize, usize, u64)>,
    relabel_group: RelabelGroupFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    node_cap: Option<u64>,
}

impl SearchSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: SearchSpecFile = serde_json::from_str(text)
            .map_err(|e| Error::Input(format!("unreadable search spec: {e}")))?;
        let grading = match file.grading {
            Some(g) => Some(GradingSpec {
                group: FiniteGroup::from_table(g.table)?,
                assignment: g.assignment,
            }),
            None => None,
        };
        let dedup = match file.relabel_group {
            RelabelGroupFile::Named(name) => match name.as_str() {
                "full" => DedupPolicy::Full,
                "none" => DedupPolicy::None,
                other => {
                    return Err(Error::Input(format!(
                        "unknown relabel group \"{other}\": expected \"full\", \
                         \"none\", or a list of permutations"
                    )));
                }
            },
            RelabelGroupFile::Generators(gens) => DedupPolicy::Subgroup(gens),
        };
        let spec = SearchSpec {
            labels: file.labels,
            dims: file.dims,
            dual: file.dual,
            grading,
            pointed_action: file
                .pointed_action
                .into_iter()
                .map(|a| (a.element, a.permutation))
                .collect(),
            fixed: file.fixed,
            free: file.free,
            bounds: file.bounds,
            dedup,
            node_cap: file.node_cap.unwrap_or(SEARCH_NODE_CAP),
        };
        validate_spec(&spec)?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        let file = SearchSpecFile {
            labels: self.labels.clone(),
            dims: self.dims.clone(),
            dual: self.dual.clone(),
            grading: self.grading.as_ref().map(|g| GradingFile {
                table: g.group.table().to_vec(),
                assignment: g.assignment.clone(),
            }),
            pointed_action: self
                .pointed_action
                .iter()
                .map(|(g, pi)| ActionFile {
                    element: *g,
                    permutation: pi.clone(),
                })
                .collect(),
            fixed: self.fixed.clone(),
            free: self.free.clone(),
            bounds: self.bounds.clone(),
            relabel_group: match &self.dedup {
                DedupPolicy::Full => RelabelGroupFile::Named("full".into()),
                DedupPolicy::None => RelabelGroupFile::Named("none".into()),
                DedupPolicy::Subgroup(gens) => RelabelGroupFile::Generators(gens.clone()),
            },
            node_cap: (self.node_cap != SEARCH_NODE_CAP).then_some(self.node_cap),
        };
        serde_json::to_string_pretty(&file).expect("search spec serializes")
    }
}
