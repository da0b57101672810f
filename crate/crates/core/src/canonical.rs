//! Canonical labeling of based rings, so that two rings are isomorphic
//! exactly when their canonical keys coincide.
//!
//! The key is the fusion tensor flattened in *block order*: block `t` holds
//! all entries `N[i][j][k]` with `max(i,j,k) = t`, listed lexicographically.
//! This order makes the first `t` blocks depend only on the first `t + 1`
//! labels, so a depth-first search over unit-fixing relabelings can compare
//! and prune block by block while minimizing the key. Labels are first
//! partitioned into classes by iterated invariant refinement (dimension,
//! dual class, fusion multiset per class pair); only class-preserving
//! relabelings can collide, so slots are filled class by class.
//!
//! Pointed rings with abelian invertible group are canonicalized directly:
//! the invariant factors determine the group up to isomorphism, and an
//! explicit isomorphism onto the standard product-of-cyclics group ring is
//! found by generator search. This path has no rank cap, which keeps large
//! pointed rings (for instance those arising from quadratic forms on
//! abelian groups) cheap.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::ring::{fp_dimensions, invertibles, pointed_ring, FusionRing};

/// Largest rank accepted by the general canonical search. The pointed
/// abelian path ignores this cap.
pub const CANONICAL_RANK_CAP: usize = 16;

/// Total order on isomorphism classes: equal keys mean isomorphic rings.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalKey(Vec<u64>);

impl CanonicalKey {
    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    /// Short stable fingerprint (FNV-1a over the key words) for display.
    pub fn digest(&self) -> String {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &w in &self.0 {
            for byte in w.to_le_bytes() {
                h ^= u64::from(byte);
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
        format!("{h:016x}")
    }
}

/// A canonical relabeling: `permutation[old] = new`, the relabeled ring,
/// and its key.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub permutation: Vec<usize>,
    pub key: CanonicalKey,
    pub ring: FusionRing,
}

/// Pre: `ring` is valid. See [`canonical_form_with_cap`].
pub fn canonical_form(ring: &FusionRing) -> Result<CanonicalForm> {
    canonical_form_with_cap(ring, CANONICAL_RANK_CAP)
}

/// Canonical form with an explicit rank cap for the general search path.
pub fn canonical_form_with_cap(ring: &FusionRing, cap: usize) -> Result<CanonicalForm> {
    let pointed = invertibles(ring)?;
    if pointed.basis.len() == ring.rank() && pointed.group.is_abelian() {
        return pointed_abelian_form(ring, &pointed.group);
    }
    if ring.rank() > cap {
        return Err(Error::Capacity(format!(
            "canonical search is capped at rank {cap}, got {}",
            ring.rank()
        )));
    }
    general_form(ring)
}

/// The tensor of `ring` flattened in block order.
fn block_key(ring: &FusionRing) -> Vec<u64> {
    let n = ring.rank();
    let mut key = Vec::with_capacity(n * n * n);
    for t in 0..n {
        for i in 0..=t {
            for j in 0..=t {
                for k in 0..=t {
                    if i == t || j == t || k == t {
                        key.push(ring.n(i, j, k));
                    }
                }
            }
        }
    }
    key
}

fn form_from_permutation(ring: &FusionRing, permutation: Vec<usize>) -> Result<CanonicalForm> {
    let relabeled = ring.relabel(&permutation)?;
    let key = CanonicalKey(block_key(&relabeled));
    Ok(CanonicalForm {
        permutation,
        key,
        ring: relabeled,
    })
}

// ---------------------------------------------------------------------------
// Pointed abelian path.

fn pointed_abelian_form(ring: &FusionRing, group: &FiniteGroup) -> Result<CanonicalForm> {
    let factors = group.invariant_factors()?;
    let standard = FiniteGroup::abelian(&factors);
    let iso = abelian_isomorphism(&standard, group)?;
    // iso[a] is the ring index realizing standard element a; send it to slot a.
    let mut permutation = vec![0usize; ring.rank()];
    for (a, &g) in iso.iter().enumerate() {
        permutation[g] = a;
    }
    let form = form_from_permutation(ring, permutation)?;
    debug_assert_eq!(
        form.key.as_slice(),
        block_key(&pointed_ring(&standard)).as_slice(),
        "pointed abelian canonical form must match the standard group ring"
    );
    Ok(form)
}

/// First (in lex order over generator tuples) isomorphism from the standard
/// abelian group onto `group`, as an index map.
fn abelian_isomorphism(standard: &FiniteGroup, group: &FiniteGroup) -> Result<Vec<usize>> {
    let factors = standard.invariant_factors()?;
    if standard.order() != group.order() {
        return Err(Error::Internal("abelian isomorphism order mismatch".into()));
    }
    let n = group.order();
    // Candidate images for each standard generator: elements of the exact
    // invariant-factor order, ascending.
    let candidates: Vec<Vec<usize>> = factors
        .iter()
        .map(|&d| {
            (0..n)
                .filter(|&g| group.element_order(g) == d as usize)
                .collect()
        })
        .collect();
    // Strides of the standard generators in the lex coordinate enumeration.
    let s = factors.len();
    let mut strides = vec![1usize; s];
    for t in (0..s.saturating_sub(1)).rev() {
        strides[t] = strides[t + 1] * factors[t + 1] as usize;
    }
    let mut choice = vec![0usize; s];
    'outer: loop {
        // Map each standard element through the chosen generator images.
        let gens: Vec<usize> = (0..s).map(|t| candidates[t][choice[t]]).collect();
        let mut image = vec![group.identity(); n];
        let mut ok = vec![false; n];
        let mut bijective = true;
        for a in 0..n {
            let mut acc = group.identity();
            let mut rem = a;
            for t in 0..s {
                let coord = rem / strides[t];
                rem %= strides[t];
                for _ in 0..coord {
                    acc = group.mul(acc, gens[t]);
                }
            }
            image[a] = acc;
            if std::mem::replace(&mut ok[acc], true) {
                bijective = false;
                break;
            }
        }
        // A bijective homomorphic image of the standard group is the
        // isomorphism we want (homomorphy holds by construction since the
        // group is abelian and each generator image has the right order).
        if bijective {
            return Ok(image);
        }
        // Advance the odometer.
        for t in (0..s).rev() {
            choice[t] += 1;
            if choice[t] < candidates[t].len() {
                continue 'outer;
            }
            choice[t] = 0;
        }
        return Err(Error::Internal(
            "no generator tuple realizes the invariant factors".into(),
        ));
    }
}

// ---------------------------------------------------------------------------
// General path: class refinement + lex-min block search.

fn general_form(ring: &FusionRing) -> Result<CanonicalForm> {
    let classes = refine_classes(ring)?;
    let mut slot_class = Vec::with_capacity(ring.rank());
    for (c, members) in classes.iter().enumerate() {
        slot_class.extend(std::iter::repeat(c).take(members.len()));
    }
    let n = ring.rank();
    let mut search = Search {
        ring,
        classes: &classes,
        slot_class: &slot_class,
        used: vec![false; n],
        to_old: Vec::with_capacity(n),
        cur_key: Vec::with_capacity(n * n * n),
        best_key: vec![0; n * n * n],
        best_len: 0,
        best_perm: vec![0; n],
    };
    search.recurse(false);
    debug_assert_eq!(search.best_len, n * n * n);
    let permutation = search.best_perm.clone();
    form_from_permutation(ring, permutation)
}

/// Partition of the labels into relabeling-invariant classes, in a
/// canonical class order (unit class first). Iterates signature refinement
/// to a fixed point.
fn refine_classes(ring: &FusionRing) -> Result<Vec<Vec<usize>>> {
    let n = ring.rank();
    let dims = fp_dimensions(ring)?;
    // Bucket dimensions on a fixed grid so equal dimensions agree exactly.
    let scaled: Vec<i64> = dims.dims.iter().map(|d| (d * 1e9).round() as i64).collect();
    let mut buckets: Vec<i64> = scaled.clone();
    buckets.sort_unstable();
    buckets.dedup();
    let mut class_of: Vec<usize> = (0..n)
        .map(|i| {
            let dim_bucket = buckets.binary_search(&scaled[i]).expect("own dim present");
            if i == 0 {
                0
            } else {
                1 + dim_bucket
            }
        })
        .collect();
    class_of = renumber(&class_of);
    loop {
        let count = 1 + class_of.iter().max().copied().unwrap_or(0);
        let mut sigs: Vec<Vec<u64>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut sig = vec![class_of[i] as u64, class_of[ring.dual_of(i)] as u64];
            for a in 0..count {
                for b in 0..count {
                    let mut first = Vec::new();
                    let mut second = Vec::new();
                    let mut output = Vec::new();
                    for j in 0..n {
                        if class_of[j] != a {
                            continue;
                        }
                        for k in 0..n {
                            if class_of[k] != b {
                                continue;
                            }
                            first.push(ring.n(i, j, k));
                            second.push(ring.n(j, i, k));
                            output.push(ring.n(j, k, i));
                        }
                    }
                    for mut v in [first, second, output] {
                        v.sort_unstable();
                        sig.append(&mut v);
                    }
                }
            }
            sigs.push(sig);
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&x, &y| sigs[x].cmp(&sigs[y]));
        let mut next = vec![0usize; n];
        let mut cls = 0;
        for w in 0..n {
            if w > 0 && sigs[order[w]] != sigs[order[w - 1]] {
                cls += 1;
            }
            next[order[w]] = cls;
        }
        if next == class_of {
            break;
        }
        class_of = next;
    }
    let count = 1 + class_of.iter().max().copied().unwrap_or(0);
    let mut classes = vec![Vec::new(); count];
    for i in 0..n {
        classes[class_of[i]].push(i);
    }
    debug_assert_eq!(classes[0], vec![0], "unit sits alone in the first class");
    Ok(classes)
}

/// Renumbers class ids to 0.. in order of first appearance by value rank.
fn renumber(class_of: &[usize]) -> Vec<usize> {
    let mut values: Vec<usize> = class_of.to_vec();
    values.sort_unstable();
    values.dedup();
    class_of
        .iter()
        .map(|c| values.binary_search(c).expect("own class present"))
        .collect()
}

struct Search<'a> {
    ring: &'a FusionRing,
    classes: &'a [Vec<usize>],
    slot_class: &'a [usize],
    used: Vec<bool>,
    /// Assignment so far: `to_old[new] = old`.
    to_old: Vec<usize>,
    cur_key: Vec<u64>,
    /// Current best key; only `best_len` leading words are meaningful.
    best_key: Vec<u64>,
    best_len: usize,
    best_perm: Vec<usize>,
}

impl Search<'_> {
    /// `dirty` records whether this path already improved on the best key
    /// (everything beyond the shared prefix counts as larger than any
    /// candidate).
    fn recurse(&mut self, dirty: bool) {
        let depth = self.to_old.len();
        if depth == self.ring.rank() {
            if dirty {
                for (new, &old) in self.to_old.iter().enumerate() {
                    self.best_perm[old] = new;
                }
            }
            return;
        }
        let members = &self.classes[self.slot_class[depth]];
        for idx in 0..members.len() {
            let cand = members[idx];
            if self.used[cand] {
                continue;
            }
            self.used[cand] = true;
            self.to_old.push(cand);
            let seg_start = self.cur_key.len();
            self.push_block(depth);
            let seg_end = self.cur_key.len();
            let verdict = if self.best_len >= seg_end {
                self.cur_key[seg_start..seg_end].cmp(&self.best_key[seg_start..seg_end])
            } else {
                // Best is only defined up to a prefix we already match, so
                // any completion improves it.
                Ordering::Less
            };
            match verdict {
                Ordering::Greater => {}
                Ordering::Less => {
                    self.best_key[seg_start..seg_end]
                        .copy_from_slice(&self.cur_key[seg_start..seg_end]);
                    self.best_len = seg_end;
                    self.recurse(true);
                }
                Ordering::Equal => {
                    self.recurse(dirty);
                }
            }
            self.cur_key.truncate(seg_start);
            self.to_old.pop();
            self.used[cand] = false;
        }
    }

    /// Appends block `t = depth` of the relabeled tensor: entries with
    /// maximal new index `t`, lexicographic, computed from the assignment.
    fn push_block(&mut self, t: usize) {
        for i in 0..=t {
            for j in 0..=t {
                for k in 0..=t {
                    if i == t || j == t || k == t {
                        self.cur_key
                            .push(self.ring.n(self.to_old[i], self.to_old[j], self.to_old[k]));
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn random_unit_fixing_perm(n: usize, rng: &mut impl rand::Rng) -> Vec<usize> {
        let mut rest: Vec<usize> = (1..n).collect();
        rest.shuffle(rng);
        let mut perm = vec![0];
        perm.extend(rest);
        perm
    }

    #[test]
    fn key_is_invariant_under_relabeling() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for ring in [
            fixtures::rank10_ring_i(),
            fixtures::rank10_ring_ii(),
            fixtures::fibonacci_ring(),
            pointed_ring(&fixtures::s3()),
        ] {
            let base = canonical_form(&ring).unwrap();
            for _ in 0..40 {
                let perm = random_unit_fixing_perm(ring.rank(), &mut rng);
                let relabeled = ring.relabel(&perm).unwrap();
                let form = canonical_form(&relabeled).unwrap();
                assert_eq!(form.key, base.key);
                assert!(form.ring.validate().is_valid());
            }
        }
    }

    #[test]
    fn the_two_rank10_rings_are_not_isomorphic() {
        let a = canonical_form(&fixtures::rank10_ring_i()).unwrap();
        let b = canonical_form(&fixtures::rank10_ring_ii()).unwrap();
        assert_ne!(a.key, b.key);
        assert_ne!(a.key.digest(), b.key.digest());
    }

    #[test]
    fn abelian_group_rings_canonicalize_to_invariant_factors() {
        // Z6 and Z2 x Z3 are isomorphic, and beat the rank cap exemption
        // path: both must land on the same standard form.
        let z6 = pointed_ring(&FiniteGroup::cyclic(6));
        let z2z3 = pointed_ring(&FiniteGroup::abelian(&[2, 3]));
        let a = canonical_form(&z6).unwrap();
        let b = canonical_form(&z2z3).unwrap();
        assert_eq!(a.key, b.key);
        // Z2 x Z2 differs from Z4.
        let v4 = canonical_form(&pointed_ring(&fixtures::z2z2())).unwrap();
        let z4 = canonical_form(&pointed_ring(&FiniteGroup::cyclic(4))).unwrap();
        assert_ne!(v4.key, z4.key);
    }

    #[test]
    fn large_pointed_abelian_rings_bypass_the_rank_cap() {
        let ring = pointed_ring(&FiniteGroup::cyclic(21));
        assert!(ring.rank() > CANONICAL_RANK_CAP);
        let form = canonical_form(&ring).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let perm = random_unit_fixing_perm(21, &mut rng);
        let other = canonical_form(&ring.relabel(&perm).unwrap()).unwrap();
        assert_eq!(form.key, other.key);
    }

    #[test]
    fn non_pointed_rings_respect_the_rank_cap() {
        let err = canonical_form_with_cap(&fixtures::rank10_ring_i(), 8).unwrap_err();
        assert!(err.is_capacity_or_numerical());
    }

    #[test]
    fn nonabelian_group_rings_use_the_general_path() {
        let s3 = pointed_ring(&fixtures::s3());
        let base = canonical_form(&s3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let perm = random_unit_fixing_perm(6, &mut rng);
            let form = canonical_form(&s3.relabel(&perm).unwrap()).unwrap();
            assert_eq!(form.key, base.key);
        }
        // S3 and Z6 group rings share rank and dimensions but not keys.
        let z6 = canonical_form(&pointed_ring(&FiniteGroup::cyclic(6))).unwrap();
        assert_ne!(base.key, z6.key);
    }
}
