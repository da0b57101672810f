//! Universal gradings of based rings and the graded twist of a ring by a
//! pointed 2-cocycle.
//!
//! The universal grading partitions the simples into components connected
//! through tensoring by the adjoint sub-basis; the group law on components
//! is induced by fusion and is verified, not assumed. Only abelian grading
//! groups are supported — every grading arising from the modular settings
//! this toolkit targets is abelian.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::ring::{adjoint_subbasis, fp_dimensions, invertibles, FusionRing};

/// A faithful grading: component ids are group elements, components are
/// ordered by smallest member (the trivial component is id 0).
#[derive(Clone, Debug)]
pub struct Grading {
    pub group: FiniteGroup,
    /// Component id of each simple.
    pub assignment: Vec<usize>,
    /// Members of each component, ascending.
    pub components: Vec<Vec<usize>>,
    /// Whether the grading group has exactly as many elements as the ring
    /// has invertibles (the expected situation for modular candidates).
    pub matches_pointed_count: bool,
}

/// Pre: `ring` is valid. Errors with a capacity error when the grading
/// group is nonabelian; internal invariant errors signal an invalid ring.
pub fn universal_grading(ring: &FusionRing) -> Result<Grading> {
    let n = ring.rank();
    let adjoint = adjoint_subbasis(ring)?;
    // Connected components under "j occurs in a ⊗ i or i ⊗ a for adjoint a".
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    };
    for &a in adjoint.indices() {
        for i in 0..n {
            for j in 0..n {
                if ring.n(a, i, j) > 0 || ring.n(i, a, j) > 0 {
                    union(&mut parent, i, j);
                }
            }
        }
    }
    let mut roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    let mut distinct: Vec<usize> = roots.clone();
    distinct.sort_unstable();
    distinct.dedup();
    // Component ids ascend with the smallest member; the unit's component
    // (which contains the whole adjoint) is id 0.
    let assignment: Vec<usize> = roots
        .iter_mut()
        .map(|r| distinct.binary_search(r).expect("own root present"))
        .collect();
    let count = distinct.len();
    let mut components = vec![Vec::new(); count];
    for (i, &c) in assignment.iter().enumerate() {
        components[c].push(i);
    }
    // Group law from fusion: all products of members of two components must
    // land in one component.
    let mut table = vec![vec![usize::MAX; count]; count];
    for u in 0..count {
        for v in 0..count {
            for &i in &components[u] {
                for &j in &components[v] {
                    for k in 0..n {
                        if ring.n(i, j, k) == 0 {
                            continue;
                        }
                        let w = assignment[k];
                        let cell = &mut table[u][v];
                        if *cell == usize::MAX {
                            *cell = w;
                        } else if *cell != w {
                            return Err(Error::Internal(format!(
                                "component product {u}·{v} is not well-defined: \
                                 hits both {} and {w}",
                                *cell
                            )));
                        }
                    }
                }
            }
            if table[u][v] == usize::MAX {
                return Err(Error::Internal(format!(
                    "component product {u}·{v} is empty"
                )));
            }
        }
    }
    let group = FiniteGroup::from_table(table)
        .map_err(|e| Error::Internal(format!("graded components do not form a group: {e}")))?;
    if !group.is_abelian() {
        return Err(Error::Capacity(
            "nonabelian grading groups are out of scope".into(),
        ));
    }
    if group.identity() != assignment[0] {
        return Err(Error::Internal(
            "unit component is not the group identity".into(),
        ));
    }
    if components[assignment[0]] != adjoint.indices() {
        return Err(Error::Internal(
            "trivial graded component differs from the adjoint sub-basis".into(),
        ));
    }
    let pointed = invertibles(ring)?;
    let matches_pointed_count = pointed.basis.len() == count;
    Ok(Grading {
        group,
        assignment,
        components,
        matches_pointed_count,
    })
}

/// Sum of squared dimensions per component; verifies they agree (faithful
/// gradings split the global dimension evenly).
pub fn component_dimensions(ring: &FusionRing, grading: &Grading) -> Result<Vec<f64>> {
    let dims = fp_dimensions(ring)?;
    let per: Vec<f64> = grading
        .components
        .iter()
        .map(|c| c.iter().map(|&i| dims.dims[i] * dims.dims[i]).sum())
        .collect();
    let first = per[0];
    for (c, &x) in per.iter().enumerate() {
        if (x - first).abs() > 1e-6 * first.max(1.0) {
            return Err(Error::Numerical(format!(
                "graded component {c} has dimension {x}, component 0 has {first}"
            )));
        }
    }
    Ok(per)
}

/// A 2-cochain on the grading group valued in invertible simples:
/// `values[i][j]` is the ring index of χ(i, j).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointedCochain {
    pub group_order: usize,
    pub values: Vec<Vec<usize>>,
}

impl PointedCochain {
    /// The trivial cochain (identically the unit).
    pub fn trivial(group_order: usize) -> Self {
        PointedCochain {
            group_order,
            values: vec![vec![0; group_order]; group_order],
        }
    }

    /// Pointwise inverse: each value replaced by its dual (the inverse
    /// invertible).
    pub fn pointwise_inverse(&self, ring: &FusionRing) -> Result<PointedCochain> {
        let values = self
            .values
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| {
                        if v < ring.rank() {
                            Ok(ring.dual_of(v))
                        } else {
                            Err(Error::Input(format!("cochain value {v} out of range")))
                        }
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PointedCochain {
            group_order: self.group_order,
            values,
        })
    }
}

/// On-disk form; pairs omitted from `values` mean the unit.
#[derive(Serialize, Deserialize)]
struct CochainFile {
    group_order: usize,
    values: Vec<(usize, usize, usize)>,
}

impl PointedCochain {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: CochainFile =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("cochain JSON: {e}")))?;
        let n = file.group_order;
        if n == 0 {
            return Err(Error::Input("cochain group order must be positive".into()));
        }
        let mut values = vec![vec![0usize; n]; n];
        for (i, j, v) in file.values {
            if i >= n || j >= n {
                return Err(Error::Input(format!(
                    "cochain pair ({i},{j}) out of range for group order {n}"
                )));
            }
            values[i][j] = v;
        }
        Ok(PointedCochain {
            group_order: n,
            values,
        })
    }

    pub fn to_json(&self) -> String {
        let mut values = Vec::new();
        for i in 0..self.group_order {
            for j in 0..self.group_order {
                if self.values[i][j] != 0 {
                    values.push((i, j, self.values[i][j]));
                }
            }
        }
        let file = CochainFile {
            group_order: self.group_order,
            values,
        };
        serde_json::to_string_pretty(&file).expect("cochain serializes")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub passed: bool,
    pub detail: Option<String>,
}

impl CheckOutcome {
    fn pass() -> Self {
        CheckOutcome {
            passed: true,
            detail: None,
        }
    }

    fn fail(detail: String) -> Self {
        CheckOutcome {
            passed: false,
            detail: Some(detail),
        }
    }
}

/// Outcome of cochain validation. Symmetry is reported but informational:
/// it is not required for a twist to be well-defined.
#[derive(Clone, Debug, Serialize)]
pub struct CochainReport {
    pub normalized: CheckOutcome,
    pub cocycle: CheckOutcome,
    pub symmetric: CheckOutcome,
}

impl CochainReport {
    pub fn is_valid(&self) -> bool {
        self.normalized.passed && self.cocycle.passed
    }
}

/// Validates a cochain against a ring: values must be invertibles in the
/// trivial graded component (input error otherwise), the group order must
/// match the universal grading, and the report covers normalization, the
/// 2-cocycle identity, and symmetry.
pub fn validate_cochain(ring: &FusionRing, chi: &PointedCochain) -> Result<CochainReport> {
    let grading = universal_grading(ring)?;
    validate_cochain_with(ring, &grading, chi)
}

pub fn validate_cochain_with(
    ring: &FusionRing,
    grading: &Grading,
    chi: &PointedCochain,
) -> Result<CochainReport> {
    let g = &grading.group;
    if chi.group_order != g.order() {
        return Err(Error::Input(format!(
            "cochain is on a group of order {}, the universal grading has order {}",
            chi.group_order,
            g.order()
        )));
    }
    if chi.values.len() != chi.group_order
        || chi.values.iter().any(|r| r.len() != chi.group_order)
    {
        return Err(Error::Input("cochain value table has wrong shape".into()));
    }
    let pointed = invertibles(ring)?;
    for row in &chi.values {
        for &v in row {
            if !pointed.basis.contains(v) {
                return Err(Error::Input(format!(
                    "cochain value {v} is not an invertible simple"
                )));
            }
            if grading.assignment[v] != g.identity() {
                return Err(Error::Input(format!(
                    "cochain value {v} lies outside the trivial graded component"
                )));
            }
        }
    }
    let e = g.identity();
    let mut normalized = CheckOutcome::pass();
    for a in 0..g.order() {
        if chi.values[e][a] != 0 || chi.values[a][e] != 0 {
            normalized = CheckOutcome::fail(format!(
                "χ(e,{a}) = {} and χ({a},e) = {}, both must be the unit",
                chi.values[e][a], chi.values[a][e]
            ));
            break;
        }
    }
    // Product of invertibles at ring level.
    let mul = |x: usize, y: usize| -> usize {
        ring.row(x, y)
            .iter()
            .position(|&v| v == 1)
            .expect("invertible product")
    };
    let mut cocycle = CheckOutcome::pass();
    'outer: for i in 0..g.order() {
        for j in 0..g.order() {
            for k in 0..g.order() {
                let lhs = mul(chi.values[j][k], chi.values[i][g.mul(j, k)]);
                let rhs = mul(chi.values[i][j], chi.values[g.mul(i, j)][k]);
                if lhs != rhs {
                    cocycle = CheckOutcome::fail(format!(
                        "χ({j},{k})·χ({i},{j}+{k}) = {lhs} but χ({i},{j})·χ({i}+{j},{k}) = {rhs}"
                    ));
                    break 'outer;
                }
            }
        }
    }
    let mut symmetric = CheckOutcome::pass();
    for i in 0..g.order() {
        for j in 0..i {
            if chi.values[i][j] != chi.values[j][i] {
                symmetric = CheckOutcome::fail(format!(
                    "χ({i},{j}) = {} but χ({j},{i}) = {}",
                    chi.values[i][j], chi.values[j][i]
                ));
            }
        }
    }
    Ok(CochainReport {
        normalized,
        cocycle,
        symmetric,
    })
}

/// Twists the product of a graded ring by a cochain: the component-(i,j)
/// part of the product is post-composed with left fusion by χ(i, j). The
/// dual permutation is recomputed from the new tensor, and the result is
/// fully validated — an invalid outcome signals a cochain that is not
/// compatible with this ring.
pub fn graded_twist(ring: &FusionRing, chi: &PointedCochain) -> Result<FusionRing> {
    let grading = universal_grading(ring)?;
    let report = validate_cochain_with(ring, &grading, chi)?;
    if !report.is_valid() {
        let detail = report
            .normalized
            .detail
            .or(report.cocycle.detail)
            .unwrap_or_default();
        return Err(Error::Input(format!("cochain is not valid: {detail}")));
    }
    let n = ring.rank();
    // Left-fusion permutation of each invertible in use.
    let perm_of = |g: usize| -> Vec<usize> {
        (0..n)
            .map(|a| {
                ring.row(g, a)
                    .iter()
                    .position(|&v| v == 1)
                    .expect("invertible row")
            })
            .collect()
    };
    let mut perms: std::collections::HashMap<usize, Vec<usize>> = Default::default();
    for row in &chi.values {
        for &v in row {
            perms.entry(v).or_insert_with(|| perm_of(v));
        }
    }
    let mut tensor = vec![0u64; n * n * n];
    for a in 0..n {
        for b in 0..n {
            let v = chi.values[grading.assignment[a]][grading.assignment[b]];
            let shifted = perms[&v][a];
            for c in 0..n {
                tensor[(a * n + b) * n + c] = ring.n(shifted, b, c);
            }
        }
    }
    // New duals: the unique partner hitting the unit.
    let mut dual = vec![usize::MAX; n];
    for a in 0..n {
        for c in 0..n {
            if tensor[(a * n + c) * n] > 0 {
                if dual[a] != usize::MAX {
                    return Err(Error::Unsatisfiable(format!(
                        "twisted product gives {a} two dual partners"
                    )));
                }
                dual[a] = c;
            }
        }
        if dual[a] == usize::MAX {
            return Err(Error::Unsatisfiable(format!(
                "twisted product gives {a} no dual partner"
            )));
        }
    }
    let twisted = FusionRing::from_dense(
        ring.labels().to_vec(),
        dual,
        tensor,
    )?;
    let validation = twisted.validate();
    if let Some(failure) = validation.first_failure() {
        let detail = failure
            .violation
            .as_ref()
            .map(|v| v.detail.clone())
            .unwrap_or_default();
        return Err(Error::Unsatisfiable(format!(
            "cochain is inconsistent with the grading: {} axiom fails ({detail})",
            failure.axiom
        )));
    }
    Ok(twisted)
}
