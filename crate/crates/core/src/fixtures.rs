//! Built-in example rings, groups, and modular data used across the test
//! suites and benchmarks.

use num_complex::Complex64 as Complex;

use crate::cyclotomic::root_of_unity;
use crate::grading::PointedCochain;
use crate::group::FiniteGroup;
use crate::modular::{ModularData, DEFAULT_TOLERANCE};
use crate::ring::FusionRing;
use crate::search::{DedupPolicy, GradingSpec, SearchSpec, SEARCH_NODE_CAP};

/// The symmetric 2-cocycle on the ℤ₃ grading of the rank-10 rings, valued
/// in their invertibles: χ(1,1) = χ(1,2) = χ(2,1) = g², χ(2,2) = 1.
pub fn rank10_cochain() -> PointedCochain {
    PointedCochain {
        group_order: 3,
        values: vec![vec![0, 0, 0], vec![0, 2, 2], vec![0, 2, 0]],
    }
}

/// Rank-2 ring with `t ⊗ t = 1 ⊕ t` (golden-ratio dimension; not integral).
pub fn fibonacci_ring() -> FusionRing {
    FusionRing::from_sparse(
        vec!["1".into(), "t".into()],
        vec![0, 1],
        &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 1)],
    )
    .expect("fibonacci shapes")
}

/// Which of the two global-dimension-36 fusion rings with type
/// `(1,1,1,3,2,2,2,2,2,2)` and faithful three-component grading to build.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Rank10Variant {
    /// `X ⊗ X = X* ⊕ gX*`.
    I,
    /// `X ⊗ X = gX* ⊕ g²X*`.
    II,
}

/// Indices: 0..=2 the invertibles `1, g, g²`; 3 the dimension-3 simple `Y`;
/// 4..=6 the simples `X, gX, g²X`; 7..=9 their duals `X*, gX*, g²X*`.
fn rank10_ring(variant: Rank10Variant) -> FusionRing {
    let labels: Vec<String> = ["1", "g", "g2", "Y", "X", "gX", "g2X", "Xs", "gXs", "g2Xs"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let dual = vec![0, 2, 1, 3, 7, 9, 8, 4, 6, 5];
    // Component of each index in the Z3 grading: 0 for {1,g,g²,Y},
    // 1 for the X family, 2 for the X* family.
    let x = |i: usize| 4 + i % 3;
    let xs = |i: usize| 7 + i % 3;
    let (xx, xsxs): (Vec<usize>, Vec<usize>) = match variant {
        Rank10Variant::I => (vec![xs(0), xs(1)], vec![x(0), x(2)]),
        Rank10Variant::II => (vec![xs(1), xs(2)], vec![x(1), x(2)]),
    };
    let mut entries: Vec<(usize, usize, usize, u64)> = Vec::new();
    let mut put = |i: usize, j: usize, k: usize, v: u64| entries.push((i, j, k, v));
    for i in 0..3 {
        for j in 0..3 {
            put(i, j, (i + j) % 3, 1);
        }
        put(i, 3, 3, 1);
        put(3, i, 3, 1);
        for j in 0..3 {
            put(i, x(j), x(i + j), 1);
            put(x(j), i, x(i + j), 1);
            put(i, xs(j), xs(i + j), 1);
            put(xs(j), i, xs(i + j), 1);
        }
    }
    put(3, 3, 0, 1);
    put(3, 3, 1, 1);
    put(3, 3, 2, 1);
    put(3, 3, 3, 2);
    for j in 0..3 {
        for k in 0..3 {
            put(3, x(j), x(k), 1);
            put(x(j), 3, x(k), 1);
            put(3, xs(j), xs(k), 1);
            put(xs(j), 3, xs(k), 1);
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            // (gⁱX)(gʲX) = gⁱ⁺ʲ(X⊗X), and likewise for the dual family.
            for &base in &xx {
                put(x(i), x(j), xs(base - 7 + i + j), 1);
            }
            for &base in &xsxs {
                put(xs(i), xs(j), x(base - 4 + i + j), 1);
            }
            // (gⁱX)(gʲX*) = gⁱ⁺ʲ ⊕ Y.
            put(x(i), xs(j), (i + j) % 3, 1);
            put(x(i), xs(j), 3, 1);
            put(xs(j), x(i), (i + j) % 3, 1);
            put(xs(j), x(i), 3, 1);
        }
    }
    FusionRing::from_sparse(labels, dual, &entries).expect("rank-10 shapes")
}

/// First global-dimension-36 ring: `X ⊗ X = X* ⊕ gX*`.
pub fn rank10_ring_i() -> FusionRing {
    rank10_ring(Rank10Variant::I)
}

/// Second global-dimension-36 ring: `X ⊗ X = gX* ⊕ g²X*`. This is the ring
/// the printed modular data realizes.
pub fn rank10_ring_ii() -> FusionRing {
    rank10_ring(Rank10Variant::II)
}

/// The search skeleton whose completions are exactly the dimension-36
/// rings: dimension vector (1,1,1,3,2,2,2,2,2,2), the ℤ₃ grading with the
/// `X` family in one nontrivial component and its duals in the other, and
/// the invertible `g` cycling each `X` family while fixing `Y`. Only the
/// two-dimensional families' products are left to the search.
pub fn rank10_search_spec() -> SearchSpec {
    let labels: Vec<String> = ["1", "g", "g2", "Y", "X", "gX", "g2X", "Xs", "gXs", "g2Xs"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    SearchSpec {
        labels,
        dims: vec![1, 1, 1, 3, 2, 2, 2, 2, 2, 2],
        dual: vec![0, 2, 1, 3, 7, 9, 8, 4, 6, 5].into_iter().map(Some).collect(),
        grading: Some(GradingSpec {
            group: FiniteGroup::cyclic(3),
            assignment: vec![0, 0, 0, 0, 1, 1, 1, 2, 2, 2],
        }),
        pointed_action: vec![(1, vec![1, 2, 0, 3, 5, 6, 4, 8, 9, 7])],
        fixed: Vec::new(),
        free: None,
        bounds: Vec::new(),
        dedup: DedupPolicy::Full,
        node_cap: SEARCH_NODE_CAP,
    }
}

/// The rank-10 unnormalized S-matrix and twist diagonal over ζ₆ = e^{iπ/3}
/// whose Verlinde ring is one of the two dimension-36 rings. Global
/// dimension 36; the twist diagonal has order 6.
pub fn printed_rank10_data() -> ModularData {
    let q = |e: i64| root_of_unity(6, e);
    // Shorthands for the recurring entries.
    let (a, b, c, d) = (2.0 * q(2), 2.0 * q(-2), 2.0 * q(1), 2.0 * q(-1));
    let one = Complex::new(1.0, 0.0);
    let two = Complex::new(2.0, 0.0);
    let three = Complex::new(3.0, 0.0);
    let zero = Complex::new(0.0, 0.0);
    let s = vec![
        vec![one, one, one, three, two, two, two, two, two, two],
        vec![one, one, one, three, a, b, a, b, a, b],
        vec![one, one, one, three, b, a, b, a, b, a],
        vec![three, three, three, -three, zero, zero, zero, zero, zero, zero],
        vec![two, a, b, zero, d, c, c, d, -two, -two],
        vec![two, b, a, zero, c, d, d, c, -two, -two],
        vec![two, a, b, zero, c, d, -two, -two, d, c],
        vec![two, b, a, zero, d, c, -two, -two, c, d],
        vec![two, a, b, zero, -two, -two, d, c, c, d],
        vec![two, b, a, zero, -two, -two, c, d, d, c],
    ];
    let t = vec![one, one, one, -one, q(2), q(2), one, one, q(-2), q(-2)];
    ModularData::new(s, t, DEFAULT_TOLERANCE).expect("printed data shapes")
}

/// Rank-4 data of the double of ℤ₂: all-±1 character-table pattern S with
/// twists (1,1,1,−1). Its ring is the pointed ℤ₂×ℤ₂ ring.
pub fn toric_code_data() -> ModularData {
    let p = Complex::new(1.0, 0.0);
    let m = -p;
    let s = vec![
        vec![p, p, p, p],
        vec![p, p, m, m],
        vec![p, m, p, m],
        vec![p, m, m, p],
    ];
    let t = vec![p, p, p, m];
    ModularData::new(s, t, DEFAULT_TOLERANCE).expect("toric code shapes")
}

/// Rank-2 data with S̃ = [[1,1],[1,−1]] and twists (1, i).
pub fn semion_data() -> ModularData {
    let one = Complex::new(1.0, 0.0);
    let s = vec![vec![one, one], vec![one, -one]];
    let t = vec![one, Complex::new(0.0, 1.0)];
    ModularData::new(s, t, DEFAULT_TOLERANCE).expect("semion shapes")
}

pub fn z2() -> FiniteGroup {
    FiniteGroup::cyclic(2)
}

pub fn z3() -> FiniteGroup {
    FiniteGroup::cyclic(3)
}

pub fn z2z2() -> FiniteGroup {
    FiniteGroup::abelian(&[2, 2])
}

/// Symmetric group on three points, from a transposition and a 3-cycle.
pub fn s3() -> FiniteGroup {
    FiniteGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]]).expect("S3")
}

/// Dihedral group of order 8: rotation and reflection of a square.
pub fn d4() -> FiniteGroup {
    FiniteGroup::from_permutations(4, &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]]).expect("D4")
}

/// Quaternion group via its regular representation: left multiplication by
/// `i` and `j` on the ordered elements `1, -1, i, -i, j, -j, k, -k`.
pub fn q8() -> FiniteGroup {
    FiniteGroup::from_permutations(
        8,
        &[vec![2, 3, 1, 0, 6, 7, 5, 4], vec![4, 5, 7, 6, 1, 0, 2, 3]],
    )
    .expect("Q8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{fp_dimensions, invertibles};

    #[test]
    fn both_rank10_variants_are_valid_and_distinct() {
        let a = rank10_ring_i();
        let b = rank10_ring_ii();
        assert!(a.validate().is_valid());
        assert!(b.validate().is_valid());
        assert_ne!(a, b);
        for ring in [&a, &b] {
            let dims = fp_dimensions(ring).unwrap();
            assert_eq!(dims.integral.as_ref().unwrap().global, 36);
            assert_eq!(invertibles(ring).unwrap().basis.len(), 3);
        }
    }

    #[test]
    fn group_fixtures_have_expected_structure() {
        assert_eq!(s3().order(), 6);
        assert!(!s3().is_abelian());
        assert_eq!(d4().order(), 8);
        assert_eq!(d4().conjugacy_classes().classes.len(), 5);
        assert_eq!(q8().order(), 8);
        assert_eq!(q8().conjugacy_classes().classes.len(), 5);
        // D4 and Q8 are distinguished by elements of order 4: Q8 has six.
        let order4 = |g: &FiniteGroup| {
            (0..g.order()).filter(|&e| g.element_order(e) == 4).count()
        };
        assert_eq!(order4(&d4()), 2);
        assert_eq!(order4(&q8()), 6);
        assert_eq!(z2z2().invariant_factors().unwrap(), vec![2, 2]);
    }
}
