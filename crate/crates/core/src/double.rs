//! Ground-truth group-theoretical modular data: the untwisted Drinfeld
//! double of a small finite group.
//!
//! Simple objects are pairs `(a, χ)` of a conjugacy-class representative
//! and an irreducible character of its centralizer, with dimension
//! `[G : C(a)]·χ(1)`. The twist is `χ(a)/χ(1)` and the unnormalized
//! S-matrix entry for `((a,χ), (b,ψ))` is
//!
//! ```text
//! (|G| / (|C(a)|·|C(b)|)) · Σ conj(χ(g·b·g⁻¹)) · conj(ψ(g⁻¹·a·g))
//! ```
//!
//! summed over the `g ∈ G` for which `a` commutes with `g·b·g⁻¹`, which
//! normalizes the unit entry `S̃₀₀` to 1. The construction is self-checked:
//! every generated datum must pass the full modular verification and
//! reconstruct a nonnegative-integer fusion ring through the Verlinde
//! formula before it is returned.

use num_complex::Complex64 as Complex;

use crate::chartab::{character_table, CharacterTable};
use crate::error::{Error, Result};
use crate::group::{Classes, FiniteGroup};
use crate::modular::{verify_modular, verlinde_fusion, ModularData};
use crate::ring::FusionRing;

/// Largest group order the double generator accepts.
pub const DOUBLE_GROUP_CAP: usize = 24;

/// Tolerance used when assembling and verifying double data: the S-matrix
/// entries are sums of |G| products of roots of unity, so they carry more
/// rounding than hand-entered fixtures.
pub const DOUBLE_TOLERANCE: f64 = 1e-8;

/// Conjugacy classes with fixed smallest-index representatives, plus the
/// centralizer of each representative as an element list.
#[derive(Clone, Debug)]
pub struct GroupAnalysis {
    pub classes: Classes,
    /// `centralizers[c]` lists the elements commuting with
    /// `classes.representative(c)`, ascending.
    pub centralizers: Vec<Vec<usize>>,
}

/// Conjugacy classes and centralizers of every class representative.
pub fn group_analysis(group: &FiniteGroup) -> GroupAnalysis {
    let classes = group.conjugacy_classes();
    let centralizers = (0..classes.len())
        .map(|c| group.centralizer(classes.representative(c)))
        .collect();
    GroupAnalysis {
        classes,
        centralizers,
    }
}

/// A simple object of the double: a class representative paired with an
/// irreducible character of its centralizer (by row index in that
/// centralizer's character table).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoubleLabel {
    /// Class representative, as an element of the underlying group.
    pub representative: usize,
    /// Character row in the centralizer's table.
    pub character: usize,
    /// Dimension `[G : C(a)]·χ(1)` of the simple.
    pub dim: u64,
}

/// The double's modular data together with its Verlinde fusion ring.
#[derive(Clone, Debug)]
pub struct DoubleData {
    pub labels: Vec<DoubleLabel>,
    pub data: ModularData,
    pub ring: FusionRing,
}

/// Builds the modular data of the untwisted double of `group` and its
/// Verlinde fusion ring. The unit is the pair (identity, trivial
/// character), always at index 0.
pub fn double_modular_data(group: &FiniteGroup) -> Result<DoubleData> {
    let n = group.order();
    if n > DOUBLE_GROUP_CAP {
        return Err(Error::Capacity(format!(
            "double of a group of order {n} exceeds the cap {DOUBLE_GROUP_CAP}"
        )));
    }
    let analysis = group_analysis(group);
    let k = analysis.classes.len();

    // Per class: the centralizer subgroup, the position of each parent
    // element inside it, and its character table.
    struct ClassData {
        rep: usize,
        order: usize,
        to_sub: Vec<Option<usize>>,
        table: CharacterTable,
    }
    let mut class_data: Vec<ClassData> = Vec::with_capacity(k);
    for c in 0..k {
        let elements = &analysis.centralizers[c];
        let (sub, embed) = group.subgroup(elements)?;
        let mut to_sub = vec![None; n];
        for (i, &parent) in embed.iter().enumerate() {
            to_sub[parent] = Some(i);
        }
        class_data.push(ClassData {
            rep: analysis.classes.representative(c),
            order: elements.len(),
            to_sub,
            table: character_table(&sub)?,
        });
    }

    // Labels in deterministic order: classes as produced (identity first),
    // characters as ordered by the table (trivial first, degrees
    // ascending).
    let mut labels: Vec<DoubleLabel> = Vec::new();
    for (c, cd) in class_data.iter().enumerate() {
        let index = (n / cd.order) as u64;
        for r in 0..cd.table.len() {
            labels.push(DoubleLabel {
                representative: cd.rep,
                character: r,
                dim: index * cd.table.degree(r),
            });
        }
        let _ = c;
    }
    let rank = labels.len();

    // Class index of each label, for centralizer lookups.
    let label_class: Vec<usize> = labels
        .iter()
        .map(|l| analysis.classes.class_of[l.representative])
        .collect();

    let mut t = Vec::with_capacity(rank);
    for (l, label) in labels.iter().enumerate() {
        let cd = &class_data[label_class[l]];
        let a_in_sub = cd.to_sub[label.representative]
            .expect("a representative centralizes itself");
        let chi_a = cd.table.value(label.character, a_in_sub);
        let chi_e = cd.table.degree(label.character) as f64;
        t.push(chi_a / chi_e);
    }

    let mut s = vec![vec![Complex::new(0.0, 0.0); rank]; rank];
    for (row, row_label) in labels.iter().enumerate() {
        let cd_a = &class_data[label_class[row]];
        let a = row_label.representative;
        for (col, col_label) in labels.iter().enumerate() {
            let cd_b = &class_data[label_class[col]];
            let b = col_label.representative;
            let mut sum = Complex::new(0.0, 0.0);
            for g in 0..n {
                let bg = group.mul(group.mul(g, b), group.inv(g)); // g·b·g⁻¹
                if group.mul(a, bg) != group.mul(bg, a) {
                    continue;
                }
                let ag = group.mul(group.mul(group.inv(g), a), g); // g⁻¹·a·g
                let chi = cd_a
                    .table
                    .value(row_label.character, cd_a.to_sub[bg].expect("bg ∈ C(a)"));
                let psi = cd_b
                    .table
                    .value(col_label.character, cd_b.to_sub[ag].expect("ag ∈ C(b)"));
                sum += chi.conj() * psi.conj();
            }
            let scale = n as f64 / (cd_a.order as f64 * cd_b.order as f64);
            s[row][col] = scale * sum;
        }
    }

    let data = ModularData::new(s, t, DOUBLE_TOLERANCE)?;
    let report = verify_modular(&data);
    if !report.is_valid() {
        let failing: Vec<String> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{:?} (residual {:.3e})", c.kind, c.residual))
            .collect();
        return Err(Error::Internal(format!(
            "double data failed verification: {}",
            failing.join(", ")
        )));
    }
    let raw_ring = verlinde_fusion(&data)?;
    let names: Vec<String> = labels
        .iter()
        .map(|l| format!("({}|{})", l.representative, l.character))
        .collect();
    let mut tensor = Vec::with_capacity(rank * rank * rank);
    for i in 0..rank {
        for j in 0..rank {
            for m in 0..rank {
                tensor.push(raw_ring.n(i, j, m));
            }
        }
    }
    let ring = FusionRing::from_dense(names, raw_ring.dual().to_vec(), tensor)?;

    // Self-checks: the declared dimensions match the ring's and exhaust
    // |G|².
    let total: u64 = labels.iter().map(|l| l.dim * l.dim).sum();
    if total != (n * n) as u64 {
        return Err(Error::Internal(format!(
            "double dimensions square-sum to {total}, expected {}",
            n * n
        )));
    }
    Ok(DoubleData { labels, data, ring })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::modular::gauss_sums;
    use crate::ring::{fp_dimensions, invertibles, pointed_ring};

    #[test]
    fn trivial_group_gives_rank_one_data() {
        let triv = FiniteGroup::cyclic(1);
        let double = double_modular_data(&triv).unwrap();
        assert_eq!(double.labels.len(), 1);
        assert_eq!(double.ring.rank(), 1);
        assert!((double.data.s()[0][0] - 1.0).norm() < 1e-12);
    }

    #[test]
    fn cyclic_two_double_is_the_toric_code() {
        let double = double_modular_data(&fixtures::z2()).unwrap();
        assert_eq!(double.labels.len(), 4);
        assert!(double.labels.iter().all(|l| l.dim == 1));
        // Twists: three bosons and one fermion.
        let minus_ones = double
            .data
            .t()
            .iter()
            .filter(|t| (*t + 1.0).norm() < 1e-9)
            .count();
        assert_eq!(minus_ones, 1);
        // Same canonical class as the hand-entered toric-code fixture's
        // ring.
        let toric = crate::modular::verlinde_fusion(&fixtures::toric_code_data()).unwrap();
        let ours = crate::canonical::canonical_form(&double.ring).unwrap().key;
        let theirs = crate::canonical::canonical_form(&toric).unwrap().key;
        assert_eq!(ours, theirs);
    }

    #[test]
    fn abelian_doubles_are_pointed_on_the_square_of_the_group() {
        for group in [fixtures::z2(), fixtures::z3(), fixtures::z2z2()] {
            let double = double_modular_data(&group).unwrap();
            let pointed = invertibles(&double.ring).unwrap();
            assert_eq!(
                pointed.basis.len(),
                double.ring.rank(),
                "every simple of an abelian double is invertible"
            );
            let expect = FiniteGroup::product(&group, &group);
            assert_eq!(
                pointed.group.invariant_factors().unwrap(),
                expect.invariant_factors().unwrap()
            );
            // And the ring is exactly the group ring of that product, up
            // to relabeling.
            let ours = crate::canonical::canonical_form(&double.ring).unwrap().key;
            let theirs = crate::canonical::canonical_form(&pointed_ring(&expect))
                .unwrap()
                .key;
            assert_eq!(ours, theirs);
        }
    }

    #[test]
    fn symmetric_three_double_has_the_known_shape() {
        let double = double_modular_data(&fixtures::s3()).unwrap();
        let mut dims: Vec<u64> = double.labels.iter().map(|l| l.dim).collect();
        assert_eq!(double.labels[0].dim, 1, "unit first");
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 2, 2, 2, 2, 3, 3]);
        let fp = fp_dimensions(&double.ring).unwrap();
        assert!((fp.global - 36.0).abs() < 1e-9);
        // Gauss sums of an untwisted double: p± = |G|.
        let sums = gauss_sums(&double.data);
        assert!((sums.p_plus - 6.0).norm() < 1e-7, "{}", sums.p_plus);
        assert!((sums.p_minus - 6.0).norm() < 1e-7);
    }

    #[test]
    fn order_eight_doubles_verify_and_have_rank_twenty_two() {
        for group in [fixtures::d4(), fixtures::q8()] {
            let double = double_modular_data(&group).unwrap();
            assert_eq!(double.labels.len(), 22);
            let fp = fp_dimensions(&double.ring).unwrap();
            assert!((fp.global - 64.0).abs() < 1e-7);
        }
    }

    #[test]
    fn oversized_groups_are_rejected() {
        let big = FiniteGroup::cyclic(25);
        assert!(matches!(
            double_modular_data(&big),
            Err(Error::Capacity(_))
        ));
    }
}
