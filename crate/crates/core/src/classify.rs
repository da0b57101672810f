//! Type-signature enumeration and the arithmetic case analysis deciding
//! group-theoreticity of integral modular categories whose global dimension
//! is p·q⁴ or p²·q² for distinct primes p, q.
//!
//! The analysis is pure arithmetic over (p, q, candidate pointed dimension):
//! no category objects are built. Rules are tried in a fixed order and the
//! first applicable rule decides; a candidate no rule decides is a survivor
//! and is reported with the label of its known realization family.

use serde::Serialize;

use crate::error::{Error, Result};

/// Exponent pattern of the global dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Shape {
    /// N = p·q⁴ (the two primes play asymmetric roles).
    #[serde(rename = "p*q^4")]
    PQ4,
    /// N = p²·q² (normalized so p < q).
    #[serde(rename = "p^2*q^2")]
    P2Q2,
}

/// A pair of distinct primes with a dimension shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionProfile {
    p: u64,
    q: u64,
    shape: Shape,
    n: u64,
}

impl DimensionProfile {
    /// Validates primality and distinctness; for the p²q² shape the primes
    /// are normalized so that p < q (the dimension is symmetric in them).
    pub fn new(p: u64, q: u64, shape: Shape) -> Result<Self> {
        if !is_prime(p) || !is_prime(q) {
            return Err(Error::Input(format!("{p} and {q} must both be prime")));
        }
        if p == q {
            return Err(Error::Input(format!("the primes must be distinct, got {p} twice")));
        }
        let (p, q) = match shape {
            Shape::PQ4 => (p, q),
            Shape::P2Q2 => (p.min(q), p.max(q)),
        };
        let n = match shape {
            Shape::PQ4 => p * q.pow(4),
            Shape::P2Q2 => p * p * q * q,
        };
        Ok(DimensionProfile { p, q, shape, n })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Possible dimensions of simple objects: all d with d² | N.
    pub fn simple_dims(&self) -> Vec<u64> {
        dims_for(self.n)
    }
}

/// Multiset of simple-object dimensions: sorted `(dimension, multiplicity)`
/// pairs with positive multiplicities, satisfying Σ m·d² = N with at least
/// one invertible and an invertible count dividing N.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TypeSignature {
    pub entries: Vec<(u64, u64)>,
}

impl TypeSignature {
    /// Number of dimension-1 objects (the pointed rank).
    pub fn invertible_count(&self) -> u64 {
        self.entries
            .iter()
            .find(|&&(d, _)| d == 1)
            .map_or(0, |&(_, m)| m)
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|&(d, m)| m * d * d).sum()
    }

    pub fn multiplicity(&self, dim: u64) -> u64 {
        self.entries
            .iter()
            .find(|&&(d, _)| d == dim)
            .map_or(0, |&(_, m)| m)
    }
}

/// All dimensions d ≥ 1 with d² | n, ascending.
fn dims_for(n: u64) -> Vec<u64> {
    (1..).take_while(|d| d * d <= n).filter(|d| n % (d * d) == 0).collect()
}

/// Complete, duplicate-free list of type signatures for global dimension
/// `n`: every assignment of nonnegative multiplicities to the admissible
/// dimensions with Σ m·d² = n, at least one invertible, and an invertible
/// count dividing n. Sorted lexicographically by entry list.
pub fn enumerate_type_signatures(n: u64) -> Vec<TypeSignature> {
    let dims = dims_for(n);
    let mut out = Vec::new();
    let mut partial: Vec<(u64, u64)> = Vec::new();
    // Recurse over dims from the largest so the unit count is decided last.
    fn recurse(
        dims: &[u64],
        idx: usize,
        remaining: u64,
        n: u64,
        partial: &mut Vec<(u64, u64)>,
        out: &mut Vec<TypeSignature>,
    ) {
        if idx == 0 {
            // Everything left must be invertibles.
            let a = remaining;
            if a >= 1 && n % a == 0 {
                let mut entries = vec![(1, a)];
                entries.extend(partial.iter().rev().copied());
                out.push(TypeSignature { entries });
            }
            return;
        }
        let d = dims[idx];
        let sq = d * d;
        for m in 0..=remaining / sq {
            if m > 0 {
                partial.push((d, m));
            }
            recurse(dims, idx - 1, remaining - m * sq, n, partial, out);
            if m > 0 {
                partial.pop();
            }
        }
    }
    recurse(&dims, dims.len() - 1, n, n, &mut partial, &mut out);
    out.sort();
    out
}

/// Signatures for a profile's global dimension.
pub fn enumerate_types(profile: &DimensionProfile) -> Vec<TypeSignature> {
    enumerate_type_signatures(profile.n)
}

/// Per-component refinement of a type signature under a faithful grading
/// with `u` components of equal dimension N/u.
#[derive(Clone, Debug, Serialize)]
pub enum RefinementOutcome {
    Refined {
        component_dim: u64,
        components: u64,
        /// Admissible type assignments for the trivial component.
        trivial: Vec<TypeSignature>,
        /// Admissible assignments for each nontrivial component.
        nontrivial: Vec<TypeSignature>,
    },
    Contradiction(String),
}

/// Splits a signature across the `u` equal-dimension components of a
/// faithful grading. Each component must itself be expressible in the
/// signature's dimensions without exceeding its global multiplicities;
/// when `pointed_in_trivial` is set (the pointed part lies inside the
/// adjoint), all invertibles are pinned to the trivial component.
/// Returns a contradiction when some component admits no assignment or
/// when the invertible totals cannot match the pointed count.
pub fn graded_refinement(
    signature: &TypeSignature,
    u: u64,
    pointed_in_trivial: bool,
) -> Result<RefinementOutcome> {
    let n = signature.total();
    if u == 0 || n % u != 0 {
        return Err(Error::Input(format!("{u} does not divide the global dimension {n}")));
    }
    if signature.invertible_count() != u {
        return Err(Error::Input(format!(
            "the grading has {u} components but the signature has {} invertibles",
            signature.invertible_count()
        )));
    }
    let cdim = n / u;
    let trivial = component_solutions(
        &signature.entries,
        cdim,
        if pointed_in_trivial { Some(u) } else { None },
        1,
    );
    if trivial.is_empty() {
        return Ok(RefinementOutcome::Contradiction(format!(
            "the trivial component of dimension {cdim} admits no type assignment"
        )));
    }
    let nontrivial = if u > 1 {
        component_solutions(
            &signature.entries,
            cdim,
            if pointed_in_trivial { Some(0) } else { None },
            0,
        )
    } else {
        Vec::new()
    };
    if u > 1 && nontrivial.is_empty() {
        return Ok(RefinementOutcome::Contradiction(format!(
            "a nontrivial component of dimension {cdim} admits no type assignment"
        )));
    }
    let a_of = |sols: &[TypeSignature], pick_max: bool| -> u64 {
        let it = sols.iter().map(|s| s.invertible_count());
        if pick_max {
            it.max().unwrap_or(0)
        } else {
            it.min().unwrap_or(0)
        }
    };
    let min_total = a_of(&trivial, false) + (u - 1) * a_of(&nontrivial, false);
    let max_total = a_of(&trivial, true) + (u - 1) * a_of(&nontrivial, true);
    if min_total > u {
        return Ok(RefinementOutcome::Contradiction(format!(
            "the {u} components force at least {min_total} invertible objects, \
             but the pointed part has exactly {u}"
        )));
    }
    if max_total < u {
        return Ok(RefinementOutcome::Contradiction(format!(
            "the {u} components absorb at most {max_total} invertible objects, \
             but the pointed part has {u}"
        )));
    }
    Ok(RefinementOutcome::Refined {
        component_dim: cdim,
        components: u,
        trivial,
        nontrivial,
    })
}

/// All ways to fill one component of dimension `target` using the given
/// `(dim, max multiplicity)` budget. `unit_exact` pins the invertible
/// count; otherwise it must be at least `unit_min`.
fn component_solutions(
    budget: &[(u64, u64)],
    target: u64,
    unit_exact: Option<u64>,
    unit_min: u64,
) -> Vec<TypeSignature> {
    let mut out = Vec::new();
    let mut partial: Vec<(u64, u64)> = Vec::new();
    fn recurse(
        budget: &[(u64, u64)],
        idx: usize,
        remaining: u64,
        unit_exact: Option<u64>,
        unit_min: u64,
        partial: &mut Vec<(u64, u64)>,
        out: &mut Vec<TypeSignature>,
    ) {
        if idx == usize::MAX {
            return;
        }
        let (d, cap) = budget[idx];
        if d == 1 {
            // Budget lists dims ascending, so this is the last one handled.
            let a = remaining;
            let ok = a <= cap
                && unit_exact.map_or(a >= unit_min, |e| a == e);
            if ok {
                let mut entries = vec![(1, a)];
                entries.extend(partial.iter().rev().copied());
                entries.retain(|&(_, m)| m > 0);
                entries.sort();
                out.push(TypeSignature { entries });
            }
            return;
        }
        let sq = d * d;
        for m in 0..=(remaining / sq).min(cap) {
            if m > 0 {
                partial.push((d, m));
            }
            recurse(budget, idx - 1, remaining - m * sq, unit_exact, unit_min, partial, out);
            if m > 0 {
                partial.pop();
            }
        }
    }
    let mut sorted: Vec<(u64, u64)> = budget.to_vec();
    sorted.sort();
    if sorted.first().map(|&(d, _)| d) != Some(1) {
        sorted.insert(0, (1, 0));
    }
    recurse(
        &sorted,
        sorted.len() - 1,
        target,
        unit_exact,
        unit_min,
        &mut partial,
        &mut out,
    );
    out.sort();
    out
}

/// Elimination and classification rules, in their fixed application order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// A fusion category of dimension p^a·q^b > 1 contains a nontrivial
    /// invertible object, so the pointed part is nontrivial.
    NontrivialPointed,
    /// Prime-power adjoint dimension forces nilpotency, hence
    /// group-theoreticity for integral modular categories.
    PrimePowerQuotient,
    /// Counting invertibles across the graded components exceeds (or cannot
    /// reach) the pointed rank.
    InvertibleBudget,
    /// A prime-dimension centralizer of the pointed part is itself pointed
    /// and must embed into the pointed part.
    PointedCentralizer,
    /// Components too small to hold any non-invertible object, although the
    /// category is not pointed.
    ComponentCapacity,
    /// Trivial-component dimension count c·q = (p−1)(p+1) for pointed
    /// dimension q.
    TrivialComponentCount,
    /// Algebraic-integrality of twist sums forces p | q−1 for pointed
    /// dimension p.
    GaussSumDivisibility,
    /// Group-theoreticity established by a de-equivariantization argument;
    /// recorded as cited, no construction is performed.
    CitedEquivariantization,
}

/// Outcome for one candidate pointed dimension.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    /// The candidate admits no category at all.
    Eliminated { rule: Rule, witness: String },
    /// Any category with this pointed dimension is group-theoretical.
    /// `cited` marks verdicts that rest on equivariantization results
    /// rather than arithmetic performed here.
    GroupTheoretical {
        rule: Rule,
        cited: bool,
        witness: String,
    },
    /// A known family of non-group-theoretical categories remains.
    Survives { label: String, witness: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseVerdict {
    pub pt_dim: u64,
    #[serde(flatten)]
    pub verdict: Verdict,
}

/// Verdicts for every candidate pointed dimension of a profile.
#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub profile: DimensionProfile,
    pub cases: Vec<CaseVerdict>,
}

impl CaseReport {
    pub fn survivors(&self) -> Vec<(u64, String)> {
        self.cases
            .iter()
            .filter_map(|c| match &c.verdict {
                Verdict::Survives { label, .. } => Some((c.pt_dim, label.clone())),
                _ => None,
            })
            .collect()
    }
}

/// Aggregated result of a case analysis.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "overall", rename_all = "kebab-case")]
pub enum Overall {
    /// Every candidate is eliminated or group-theoretical.
    GroupTheoretical,
    /// The listed candidate families are not decided group-theoretical.
    Survivors { families: Vec<SurvivorFamily> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurvivorFamily {
    pub pt_dim: u64,
    pub label: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    #[serde(flatten)]
    pub report: CaseReport,
    #[serde(flatten)]
    pub overall: Overall,
}

/// Runs the fixed rule chain over every candidate pointed dimension of the
/// profile. Candidates are the divisors u of N realizable as the invertible
/// count of some type signature; each receives exactly one verdict.
pub fn apply_elimination_rules(profile: &DimensionProfile) -> CaseReport {
    let cases = candidate_pointed_dims(profile)
        .into_iter()
        .map(|u| CaseVerdict {
            pt_dim: u,
            verdict: decide(profile, u),
        })
        .collect();
    CaseReport {
        profile: *profile,
        cases,
    }
}

/// Case analysis plus the aggregate verdict.
pub fn classify(profile: &DimensionProfile) -> Classification {
    let report = apply_elimination_rules(profile);
    let survivors = report.survivors();
    let overall = if survivors.is_empty() {
        Overall::GroupTheoretical
    } else {
        Overall::Survivors {
            families: survivors
                .into_iter()
                .map(|(pt_dim, label)| SurvivorFamily { pt_dim, label })
                .collect(),
        }
    };
    Classification { report, overall }
}

/// Divisors u of N for which some type signature has exactly u invertibles.
fn candidate_pointed_dims(profile: &DimensionProfile) -> Vec<u64> {
    let n = profile.n;
    let dims = profile.simple_dims();
    (1..=n)
        .filter(|u| n % u == 0)
        .filter(|&u| representable(n - u, &dims))
        .collect()
}

/// Whether `target` is a nonnegative combination of the squares of the
/// non-unit dimensions.
fn representable(target: u64, dims: &[u64]) -> bool {
    let squares: Vec<u64> = dims.iter().filter(|&&d| d > 1).map(|&d| d * d).collect();
    let mut reachable = vec![false; target as usize + 1];
    reachable[0] = true;
    for &sq in &squares {
        for v in sq..=target {
            if reachable[(v - sq) as usize] {
                reachable[v as usize] = true;
            }
        }
    }
    reachable[target as usize]
}

fn decide(profile: &DimensionProfile, u: u64) -> Verdict {
    let rules: [fn(&DimensionProfile, u64) -> Option<Verdict>; 8] = [
        rule_nontrivial_pointed,
        rule_prime_power_quotient,
        rule_invertible_budget,
        rule_pointed_centralizer,
        rule_component_capacity,
        rule_trivial_component_count,
        rule_gauss_sum_divisibility,
        rule_cited_equivariantization,
    ];
    for rule in rules {
        if let Some(verdict) = rule(profile, u) {
            return verdict;
        }
    }
    survivor(profile, u)
}

fn rule_nontrivial_pointed(profile: &DimensionProfile, u: u64) -> Option<Verdict> {
    (u == 1).then(|| Verdict::Eliminated {
        rule: Rule::NontrivialPointed,
        witness: format!(
            "a fusion category of dimension {} > 1 with two prime factors contains \
             a nontrivial invertible object, so the pointed part cannot be trivial",
            profile.n
        ),
    })
}

fn rule_prime_power_quotient(profile: &DimensionProfile, u: u64) -> Option<Verdict> {
    let adjoint_dim = profile.n / u;
    if !is_prime_power_or_one(adjoint_dim) {
        return None;
    }
    let witness = if adjoint_dim == 1 {
        "the adjoint subcategory is trivial, so the category is pointed, hence \
         nilpotent and group-theoretical"
            .to_string()
    } else {
        format!(
            "the adjoint subcategory has prime-power dimension {adjoint_dim}, so it is \
             nilpotent; an integral modular category with nilpotent adjoint is nilpotent \
             and therefore group-theoretical"
        )
    };
    Some(Verdict::GroupTheoretical {
        rule: Rule::PrimePowerQuotient,
        cited: false,
        witness,
    })
}

fn rule_invertible_budget(profile: &DimensionProfile, u: u64) -> Option<Verdict> {
    let cdim = profile.n / u;
    let budget: Vec<(u64, u64)> = profile
        .simple_dims()
        .into_iter()
        .map(|d| (d, cdim / (d * d)))
        .collect();
    // The adjoint (trivial component) is a proper fusion category of
    // two-prime dimension > 1 here, so it contains a nontrivial invertible.
    let trivial = component_solutions(&budget, cdim, None, 2);
    if trivial.is_empty() {
        return Some(Verdict::Eliminated {
            rule: Rule::InvertibleBudget,
            witness: format!(
                "the trivial component of dimension {cdim} has no simple-object type \
                 with the required nontrivial invertible"
            ),
        });
    }
    let nontrivial = if u > 1 {
        component_solutions(&budget, cdim, None, 0)
    } else {
        Vec::new()
    };
    let min_a = |sols: &[TypeSignature]| {
        sols.iter().map(|s| s.invertible_count()).min().unwrap_or(0)
    };
    let forced = min_a(&trivial) + (u - 1) * min_a(&nontrivial);
    (forced > u).then(|| Verdict::Eliminated {
        rule: Rule::InvertibleBudget,
        witness: format!(
            "the {u} graded components of dimension {cdim} force at least {forced} \
             invertible objects ({} in the trivial one, {} in each of the others), \
             but the pointed part has exactly {u}",
            min_a(&trivial),
            min_a(&nontrivial)
        ),
    })
}

fn rule_pointed_centralizer(profile: &DimensionProfile, u: u64) -> Option<Verdict> {
    let cdim = profile.n / u;
    (is_prime(cdim) && u % cdim != 0).then(|| Verdict::Eliminated {
        rule: Rule::PointedCentralizer,
        witness: format!(
            "the centralizer of the pointed part has prime dimension {cdim}, hence is \
             pointed and contained in the pointed part, which would force {cdim} | {u}"
        ),
    })
}

fn rule_component_capacity(profile: &DimensionProfile, u: u64) -> Option<Verdict> {
    let cdim = profile.n / u;
    let second = profile.simple_dims().into_iter().find(|&d| d > 1)?;
    (u < profile.n && cdim < second * second).then(|| Verdict::Eliminated {
        rule: Rule::ComponentCapacity,
        witness: format!(
            "each graded component has dimension {cdim} < {second}² and so holds only \
             invertibles, yet the category is not pointed"
        ),
    })
}

fn rule_trivial_component_count(profile: &DimensionProfile, u: u64) -> Option<Verdict> {
    if profile.shape != Shape::P2Q2 || u != profile.q {
        return None;
    }
    let (p, q) = (profile.p, profile.q);
    // All q invertibles lie in the trivial component (of dimension p²q):
    // p²q = q + b·p² + c·q² forces q | b, hence b = 0 and c·q = p² − 1.
    let target = p * p - 1;
    (target % q != 0).then(|| Verdict::Eliminated {
        rule: Rule::TrivialComponentCount,
        witness: format!(
            "all {q} invertibles lie in the trivial component: {}·{q} = {q} + b·{} + c·{q}² \
             forces b = 0, leaving c·{q} = ({p}−1)({p}+1) = {target}, unsolvable since \
             {q} ∤ {target}",
            p * p,
            p * p
        ),
    })
}

fn rule_gauss_sum_divisibility(profile: &DimensionProfile, u: u64) -> Option<Verdict> {
    if profile.shape != Shape::P2Q2 || u != profile.p {
        return None;
    }
    let (p, q) = (profile.p, profile.q);
    // All p invertibles lie in the trivial component (of dimension pq²):
    // pq² = p + b·p² + c·q² forces p | c, hence c = 0 and b = (q² − 1)/p.
    if (q * q - 1) % p != 0 {
        return Some(Verdict::Eliminated {
            rule: Rule::GaussSumDivisibility,
            witness: format!(
                "the trivial component needs {p}·{q}² = {p} + b·{p}² + c·{q}² with c = 0, \
                 so b = ({q}²−1)/{p}, which is not an integer"
            ),
        });
    }
    ((q - 1) % p != 0).then(|| Verdict::Eliminated {
        rule: Rule::GaussSumDivisibility,
        witness: format!(
            "vanishing twist sums over each nontrivial component make ({q}−1)/{p} a sum \
             of roots of unity, hence an algebraic integer, so {p} | {q}−1 must hold; \
             here {p} ∤ {}",
            q - 1
        ),
    })
}

fn rule_cited_equivariantization(profile: &DimensionProfile, u: u64) -> Option<Verdict> {
    let (p, q) = (profile.p, profile.q);
    match profile.shape {
        Shape::PQ4 if u == q * q => Some(Verdict::GroupTheoretical {
            rule: Rule::CitedEquivariantization,
            cited: true,
            witness: format!(
                "the pointed part (dimension {u}) is Tannakian; de-equivariantizing by it \
                 leaves a nilpotent, in fact pointed, category of dimension {p}·{q}², and \
                 an equivariantization of a pointed category is group-theoretical"
            ),
        }),
        Shape::P2Q2 if u == p && p % 2 == 1 => Some(Verdict::GroupTheoretical {
            rule: Rule::CitedEquivariantization,
            cited: true,
            witness: format!(
                "a non-group-theoretical category here would de-equivariantize to a \
                 non-group-theoretical category of dimension {p}·{q}², forcing {p} | {q}+1; \
                 combined with {p} | {q}−1 this gives {p} | 2, contradicting {p} odd"
            ),
        }),
        _ => None,
    }
}

fn survivor(profile: &DimensionProfile, u: u64) -> Verdict {
    let (p, q) = (profile.p, profile.q);
    if profile.shape == Shape::P2Q2 && u == q {
        return Verdict::Survives {
            label: "dimension-36 family".to_string(),
            witness: format!(
                "c = {} solves c·{q} = ({p}−1)({p}+1); the trivial component pairs the \
                 {q} invertibles with dimension-{q} objects and the others hold \
                 dimension-{p} objects",
                (p * p - 1) / q
            ),
        };
    }
    if profile.shape == Shape::P2Q2 && u == p {
        return Verdict::Survives {
            label: "E(ζ,±)".to_string(),
            witness: format!(
                "{p} | {q}−1 holds; two braided equivalence classes arise from elliptic \
                 quadratic forms on ℤ_{q}×ℤ_{q} with τ = ±1/{q}"
            ),
        };
    }
    Verdict::Survives {
        label: "unclassified candidate".to_string(),
        witness: format!("no rule decided pointed dimension {u}"),
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn is_prime_power_or_one(n: u64) -> bool {
    if n == 1 {
        return true;
    }
    let mut m = n;
    let p = (2..).find(|d| m % d == 0).unwrap();
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_signatures(n: u64) -> Vec<TypeSignature> {
        // Direct product scan over all multiplicity vectors.
        let dims = dims_for(n);
        let mut out = Vec::new();
        let mut stack = vec![(Vec::<(u64, u64)>::new(), 0usize, 0u64)];
        while let Some((partial, idx, used)) = stack.pop() {
            if idx == dims.len() {
                if used == n {
                    let sig = TypeSignature {
                        entries: partial.iter().copied().filter(|&(_, m)| m > 0).collect(),
                    };
                    let a = sig.invertible_count();
                    if a >= 1 && n % a == 0 {
                        out.push(sig);
                    }
                }
                continue;
            }
            let d = dims[idx];
            for m in 0..=(n - used) / (d * d) {
                let mut next = partial.clone();
                next.push((d, m));
                stack.push((next, idx + 1, used + m * d * d));
            }
        }
        out.sort();
        out
    }

    #[test]
    fn enumeration_matches_naive_scan_on_small_dimensions() {
        for n in [1, 4, 12, 36, 48, 100, 162] {
            assert_eq!(enumerate_type_signatures(n), naive_signatures(n), "N = {n}");
        }
    }

    #[test]
    fn unit_dimension_has_the_single_trivial_signature() {
        assert_eq!(
            enumerate_type_signatures(1),
            vec![TypeSignature { entries: vec![(1, 1)] }]
        );
    }

    #[test]
    fn dimension_36_signatures_include_the_rank_ten_type() {
        let profile = DimensionProfile::new(2, 3, Shape::P2Q2).unwrap();
        let sigs = enumerate_types(&profile);
        let rank10 = TypeSignature {
            entries: vec![(1, 3), (2, 6), (3, 1)],
        };
        assert!(sigs.contains(&rank10));
        for sig in &sigs {
            assert_eq!(sig.total(), 36);
            assert!(sig.invertible_count() >= 1);
            assert_eq!(36 % sig.invertible_count(), 0);
        }
    }

    #[test]
    fn quartic_signatures_have_invertible_count_divisible_by_q_squared() {
        let profile = DimensionProfile::new(2, 3, Shape::PQ4).unwrap();
        for sig in enumerate_types(&profile) {
            assert_eq!(sig.invertible_count() % 9, 0);
        }
    }

    #[test]
    fn refinement_splits_the_rank_ten_signature() {
        let sig = TypeSignature {
            entries: vec![(1, 3), (2, 6), (3, 1)],
        };
        match graded_refinement(&sig, 3, true).unwrap() {
            RefinementOutcome::Refined {
                component_dim,
                components,
                trivial,
                nontrivial,
            } => {
                assert_eq!((component_dim, components), (12, 3));
                assert_eq!(
                    trivial,
                    vec![TypeSignature { entries: vec![(1, 3), (3, 1)] }]
                );
                assert_eq!(
                    nontrivial,
                    vec![TypeSignature { entries: vec![(2, 3)] }]
                );
            }
            other => panic!("expected refinement, got {other:?}"),
        }
    }

    #[test]
    fn refinement_contradicts_overfull_invertible_budget() {
        // 162 with 27 invertibles: components of dimension 6 are forced to
        // be entirely pointed, demanding 162 invertibles in total.
        let sig = TypeSignature {
            entries: vec![(1, 27), (3, 15)],
        };
        match graded_refinement(&sig, 27, false).unwrap() {
            RefinementOutcome::Contradiction(reason) => {
                assert!(reason.contains("162"), "{reason}");
            }
            other => panic!("expected contradiction, got {other:?}"),
        }
        assert!(graded_refinement(&sig, 28, false).is_err());
        assert!(graded_refinement(&sig, 9, false).is_err());
    }

    #[test]
    fn trivial_grading_refines_to_the_signature_itself() {
        let sig = TypeSignature {
            entries: vec![(1, 1), (2, 2)],
        };
        match graded_refinement(&sig, 1, false).unwrap() {
            RefinementOutcome::Refined { trivial, nontrivial, .. } => {
                assert_eq!(trivial, vec![sig.clone()]);
                assert!(nontrivial.is_empty());
            }
            other => panic!("expected refinement, got {other:?}"),
        }
    }

    #[test]
    fn quartic_shape_is_always_group_theoretical() {
        for (p, q) in [(2, 3), (3, 2), (5, 2), (2, 5), (3, 5), (13, 11)] {
            let profile = DimensionProfile::new(p, q, Shape::PQ4).unwrap();
            let classification = classify(&profile);
            assert!(
                matches!(classification.overall, Overall::GroupTheoretical),
                "({p},{q}): {:?}",
                classification.report.survivors()
            );
            // The six candidate pointed dimensions from the type equation.
            let candidates: Vec<u64> = classification
                .report
                .cases
                .iter()
                .map(|c| c.pt_dim)
                .collect();
            let q4 = q * q * q * q;
            let mut expected =
                vec![q * q, q * q * q, q4, p * q * q, p * q * q * q, p * q4];
            expected.sort_unstable();
            assert_eq!(candidates, expected);
        }
    }

    #[test]
    fn square_square_survivors_match_the_trichotomy() {
        let primes = [2u64, 3, 5, 7, 11, 13];
        for &p in &primes {
            for &q in &primes {
                if p >= q {
                    continue;
                }
                let profile = DimensionProfile::new(p, q, Shape::P2Q2).unwrap();
                let survivors = apply_elimination_rules(&profile).survivors();
                let mut expected: Vec<(u64, String)> = Vec::new();
                if p == 2 {
                    expected.push((2, "E(ζ,±)".to_string()));
                }
                if (p, q) == (2, 3) {
                    expected.push((3, "dimension-36 family".to_string()));
                }
                expected.sort();
                let mut got = survivors.clone();
                got.sort();
                assert_eq!(got, expected, "({p},{q})");
            }
        }
    }

    #[test]
    fn known_case_reports_carry_the_deciding_rules() {
        let profile = DimensionProfile::new(2, 3, Shape::P2Q2).unwrap();
        let report = apply_elimination_rules(&profile);
        let rule_for = |u: u64| {
            report
                .cases
                .iter()
                .find(|c| c.pt_dim == u)
                .map(|c| c.verdict.clone())
                .unwrap()
        };
        assert!(matches!(
            rule_for(1),
            Verdict::Eliminated { rule: Rule::NontrivialPointed, .. }
        ));
        assert!(matches!(
            rule_for(6),
            Verdict::Eliminated { rule: Rule::InvertibleBudget, .. }
        ));
        assert!(matches!(
            rule_for(4),
            Verdict::GroupTheoretical { rule: Rule::PrimePowerQuotient, cited: false, .. }
        ));
        assert!(matches!(rule_for(2), Verdict::Survives { .. }));
        assert!(matches!(rule_for(3), Verdict::Survives { .. }));
        // All nine divisors of 36 admit a signature, so all nine are reported.
        assert_eq!(report.cases.len(), 9);

        // (3,5): the pointed-dimension-3 case dies on 3 ∤ 5−1.
        let profile = DimensionProfile::new(3, 5, Shape::P2Q2).unwrap();
        let report = apply_elimination_rules(&profile);
        let three = report.cases.iter().find(|c| c.pt_dim == 3).unwrap();
        match &three.verdict {
            Verdict::Eliminated { rule, witness } => {
                assert_eq!(*rule, Rule::GaussSumDivisibility);
                assert!(witness.contains("algebraic integer"), "{witness}");
            }
            other => panic!("unexpected verdict {other:?}"),
        }
        assert!(report.survivors().is_empty());

        // (3,7): 3 | 7−1, so the cited equivariantization argument decides.
        let profile = DimensionProfile::new(3, 7, Shape::P2Q2).unwrap();
        let report = apply_elimination_rules(&profile);
        let three = report.cases.iter().find(|c| c.pt_dim == 3).unwrap();
        assert!(matches!(
            &three.verdict,
            Verdict::GroupTheoretical { rule: Rule::CitedEquivariantization, cited: true, .. }
        ));
    }

    #[test]
    fn profiles_validate_and_normalize() {
        assert!(DimensionProfile::new(4, 3, Shape::PQ4).is_err());
        assert!(DimensionProfile::new(3, 3, Shape::P2Q2).is_err());
        let swapped = DimensionProfile::new(5, 2, Shape::P2Q2).unwrap();
        assert_eq!((swapped.p(), swapped.q()), (2, 5));
        let kept = DimensionProfile::new(5, 2, Shape::PQ4).unwrap();
        assert_eq!((kept.p(), kept.q(), kept.n()), (5, 2, 80));
    }

    #[test]
    fn classification_serializes_with_rule_and_witness_fields() {
        let profile = DimensionProfile::new(2, 3, Shape::P2Q2).unwrap();
        let json = serde_json::to_value(classify(&profile)).unwrap();
        assert_eq!(json["profile"]["n"], 36);
        assert_eq!(json["overall"], "survivors");
        let cases = json["cases"].as_array().unwrap();
        assert!(cases.iter().all(|c| c.get("pt_dim").is_some() && c.get("verdict").is_some()));
        assert!(cases
            .iter()
            .any(|c| c["verdict"] == "eliminated" && c["rule"] == "invertible-budget"));
    }
}
