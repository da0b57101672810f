//! Finite groups given by explicit multiplication tables.
//!
//! Groups enter the toolkit in three ways: as the invertible part of a
//! fusion ring, as the component group of a universal grading, and as the
//! input of the double construction. All three share this representation.
//! Tables are validated on construction (Latin square, identity, inverses,
//! associativity), so downstream code can index freely.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group as a full multiplication table: `table[a][b] = a * b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a multiplication table, verifying the axioms.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Input("group table is empty".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Input(format!(
                    "group table row {a} has length {} for order {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::Input(format!(
                        "group table entry {v} out of range for order {n}"
                    )));
                }
            }
        }
        // Latin square: every row and column is a permutation.
        for a in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for b in 0..n {
                if std::mem::replace(&mut seen_row[table[a][b]], true) {
                    return Err(Error::Input(format!("row {a} repeats an element")));
                }
                if std::mem::replace(&mut seen_col[table[b][a]], true) {
                    return Err(Error::Input(format!("column {a} repeats an element")));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::Input("group table has no identity".into()))?;
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::Input(format!("element {a} has no inverse")))?;
            inverse[a] = inv;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Input(format!(
                            "group table is not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            table,
            identity,
            inverse,
        })
    }

    /// Cyclic group of order `n` with elements `0..n` under addition.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(table).expect("cyclic table is a group")
    }

    /// Direct product; element `(a, b)` gets index `a * |H| + b`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (n, m) = (g.order(), h.order());
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| g.table[x / m][y / m] * m + h.table[x % m][y % m])
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(table).expect("product table is a group")
    }

    /// Direct product of cyclic groups `Z_{f_1} x ... x Z_{f_s}`, elements
    /// enumerated lexicographically by coordinate vector.
    pub fn abelian(factors: &[u64]) -> Self {
        let mut g = FiniteGroup::cyclic(1);
        for &f in factors {
            g = FiniteGroup::product(&g, &FiniteGroup::cyclic(f as usize));
        }
        g
    }

    /// Group generated by permutations of `0..degree`, elements discovered
    /// breadth-first from the identity (deterministic enumeration; the
    /// identity gets index 0).
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree {
                return Err(Error::Input(format!(
                    "generator length {} does not match degree {degree}",
                    g.len()
                )));
            }
            for &v in g {
                if v >= degree || std::mem::replace(&mut seen[v], true) {
                    return Err(Error::Input("generator is not a permutation".into()));
                }
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elements = vec![id.clone()];
        let mut index = std::collections::HashMap::new();
        index.insert(id, 0usize);
        let mut head = 0;
        while head < elements.len() {
            let cur = elements[head].clone();
            for g in generators {
                // cur followed by g: (cur * g)(x) = cur[g[x]]
                let next: Vec<usize> = (0..degree).map(|x| cur[g[x]]).collect();
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
            head += 1;
            if elements.len() > 4096 {
                return Err(Error::Capacity(
                    "permutation group has more than 4096 elements".into(),
                ));
            }
        }
        let n = elements.len();
        let mut table = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                let prod: Vec<usize> = (0..degree).map(|x| elements[a][elements[b][x]]).collect();
                table[a][b] = *index
                    .get(&prod)
                    .ok_or_else(|| Error::Internal("permutation product escaped closure".into()))?;
            }
        }
        FiniteGroup::from_table(table)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut o = 1;
        while x != self.identity {
            x = self.mul(x, a);
            o += 1;
        }
        o
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |acc, a| lcm(acc, self.element_order(a)))
    }

    /// Conjugacy classes, identity class first, then ascending by smallest
    /// representative; members sorted ascending.
    pub fn conjugacy_classes(&self) -> Classes {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..n)
                .map(|g| self.mul(self.mul(g, a), self.inv(g)))
                .collect();
            members.sort_unstable();
            members.dedup();
            for &x in &members {
                class_of[x] = classes.len();
            }
            classes.push(members);
        }
        // Reorder: identity class first, then by smallest representative.
        let mut order: Vec<usize> = (0..classes.len()).collect();
        let id_cls = class_of[self.identity];
        order.sort_by_key(|&c| (c != id_cls, classes[c][0]));
        let mut renumber = vec![0usize; classes.len()];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = new;
        }
        let classes: Vec<Vec<usize>> = order.iter().map(|&c| classes[c].clone()).collect();
        for x in class_of.iter_mut() {
            *x = renumber[*x];
        }
        Classes { classes, class_of }
    }

    /// Elements commuting with `a`, ascending.
    pub fn centralizer(&self, a: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&g| self.mul(g, a) == self.mul(a, g))
            .collect()
    }

    /// The subgroup on the given (closed) element set, reindexed by position
    /// in `elements`; returns the group together with the embedding back
    /// into `self`.
    pub fn subgroup(&self, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let pos: std::collections::HashMap<usize, usize> =
            elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        if pos.len() != elements.len() {
            return Err(Error::Input("subgroup element list has duplicates".into()));
        }
        let mut table = vec![vec![0usize; elements.len()]; elements.len()];
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                let p = self.mul(a, b);
                table[i][j] = *pos
                    .get(&p)
                    .ok_or_else(|| Error::Input("element set is not closed under product".into()))?;
            }
        }
        Ok((FiniteGroup::from_table(table)?, elements.to_vec()))
    }

    /// Invariant factors `d_1 | d_2 | ... | d_s` of an abelian group
    /// (ascending, `d_1 >= 2`), computed from the element-order counting
    /// function one prime at a time.
    pub fn invariant_factors(&self) -> Result<Vec<u64>> {
        if !self.is_abelian() {
            return Err(Error::Input("invariant factors require an abelian group".into()));
        }
        let n = self.order() as u64;
        if n == 1 {
            return Ok(Vec::new());
        }
        let orders: Vec<u64> = (0..self.order()).map(|a| self.element_order(a) as u64).collect();
        // For each prime p | n the counts #{x : ord(x) | p^j} = p^{e_j}
        // determine the partition of the p-part: e_j - e_{j-1} parts are >= j.
        let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
        let mut m = n;
        let mut p = 2u64;
        let mut primes = Vec::new();
        while p * p <= m {
            if m % p == 0 {
                primes.push(p);
                while m % p == 0 {
                    m /= p;
                }
            }
            p += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        for p in primes {
            let mut exps: Vec<u32> = Vec::new(); // partition parts, descending
            let mut j = 1u32;
            let mut prev = 0u32;
            loop {
                let pj = p.pow(j);
                let count = orders.iter().filter(|&&o| pj % o == 0).count() as u64;
                let e = count.ilog(p); // count is a power of p
                let parts_ge_j = e - prev;
                if parts_ge_j == 0 {
                    break;
                }
                for t in 0..parts_ge_j {
                    if exps.len() <= t as usize {
                        exps.push(0);
                    }
                    exps[t as usize] = j;
                }
                prev = e;
                j += 1;
            }
            per_prime.push((p, exps));
        }
        let s = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
        // Largest invariant factor collects the largest exponent of each prime.
        let mut factors = vec![1u64; s];
        for (p, exps) in &per_prime {
            for (t, &e) in exps.iter().enumerate() {
                factors[t] *= p.pow(e);
            }
        }
        factors.reverse(); // ascending, d_1 | d_2 | ...
        Ok(factors)
    }
}

/// Conjugacy class data: member lists and the class index of each element.
#[derive(Clone, Debug)]
pub struct Classes {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl Classes {
    pub fn representative(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// On-disk form: either a full table or permutation generators.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GroupFile {
    Table {
        order: usize,
        table: Vec<Vec<usize>>,
    },
    Permutations {
        permutation_generators: Vec<Vec<usize>>,
    },
}

impl FiniteGroup {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GroupFile =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("group JSON: {e}")))?;
        match file {
            GroupFile::Table { order, table } => {
                if table.len() != order {
                    return Err(Error::Input(format!(
                        "declared order {order} does not match table size {}",
                        table.len()
                    )));
                }
                FiniteGroup::from_table(table)
            }
            GroupFile::Permutations {
                permutation_generators,
            } => {
                let degree = permutation_generators
                    .first()
                    .map(|g| g.len())
                    .ok_or_else(|| Error::Input("no permutation generators given".into()))?;
                FiniteGroup::from_permutations(degree, &permutation_generators)
            }
        }
    }

    pub fn to_json(&self) -> String {
        let file = GroupFile::Table {
            order: self.order(),
            table: self.table.clone(),
        };
        serde_json::to_string_pretty(&file).expect("group serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups_validate() {
        for n in 1..=12 {
            let g = FiniteGroup::cyclic(n);
            assert_eq!(g.order(), n);
            assert_eq!(g.identity(), 0);
            assert!(g.is_abelian());
            assert_eq!(g.exponent(), n);
        }
    }

    #[test]
    fn symmetric_group_classes() {
        let s3 = FiniteGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let cls = s3.conjugacy_classes();
        let sizes: Vec<usize> = cls.classes.iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        let cents: Vec<usize> = (0..cls.len())
            .map(|c| s3.centralizer(cls.representative(c)).len())
            .collect();
        assert_eq!(cents, vec![6, 2, 3]);
    }

    #[test]
    fn broken_tables_are_rejected() {
        // Row repeats an element.
        assert!(FiniteGroup::from_table(vec![vec![0, 0], vec![1, 0]]).is_err());
        // Latin square but not associative (no such square of order 2; use a
        // non-identity-bearing square of order 3).
        let t = vec![vec![1, 0, 2], vec![0, 2, 1], vec![2, 1, 0]];
        assert!(FiniteGroup::from_table(t).is_err());
    }

    #[test]
    fn invariant_factors_of_abelian_groups() {
        assert_eq!(FiniteGroup::cyclic(12).invariant_factors().unwrap(), vec![12]);
        let z2z2 = FiniteGroup::abelian(&[2, 2]);
        assert_eq!(z2z2.invariant_factors().unwrap(), vec![2, 2]);
        let g = FiniteGroup::abelian(&[2, 2, 3]); // Z2 x Z6
        assert_eq!(g.invariant_factors().unwrap(), vec![2, 6]);
        let g = FiniteGroup::abelian(&[4, 2, 3]); // Z2 x Z12
        assert_eq!(g.invariant_factors().unwrap(), vec![2, 12]);
        let g = FiniteGroup::abelian(&[5, 5]);
        assert_eq!(g.invariant_factors().unwrap(), vec![5, 5]);
    }

    #[test]
    fn subgroup_extraction() {
        let s3 = FiniteGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        // The centralizer of a 3-cycle is the cyclic group it generates.
        let cls = s3.conjugacy_classes();
        let three_cycle = cls.representative(2);
        let cent = s3.centralizer(three_cycle);
        let (sub, _embed) = s3.subgroup(&cent).unwrap();
        assert_eq!(sub.order(), 3);
        assert_eq!(sub.invariant_factors().unwrap(), vec![3]);
    }

    #[test]
    fn json_round_trip() {
        let d4 = FiniteGroup::from_permutations(4, &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]]).unwrap();
        let text = d4.to_json();
        let back = FiniteGroup::from_json(&text).unwrap();
        assert_eq!(back, d4);
        let gens = r#"{"permutation_generators": [[1,2,3,0],[3,2,1,0]]}"#;
        let from_gens = FiniteGroup::from_json(gens).unwrap();
        assert_eq!(from_gens.order(), 8);
    }
}
