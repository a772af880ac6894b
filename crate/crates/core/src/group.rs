//! Validated multiplication tables of finite groups.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates `table[a][b] = a·b` and returns the group. Reports the first
    /// failing associativity triple if there is one.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if labels.len() != n {
            return Err(Error::NotAGroup(format!(
                "{} labels for {} elements",
                labels.len(),
                n
            )));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!("row {a} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&c| c >= n) {
                return Err(Error::NotAGroup(format!("entry {bad} in row {a} out of range")));
            }
        }
        let flat: Vec<usize> = table.iter().flatten().copied().collect();
        let m = |a: usize, b: usize| flat[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails for ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| m(a, b) == identity && m(b, a) == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {a} has no inverse")))?;
            inverses.push(inv);
        }
        Ok(FiniteGroup {
            labels,
            table: flat,
            identity,
            inverses,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order zero");
        let labels = (0..n).map(|k| format!("g{k}")).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(labels, table).expect("cyclic table is a group")
    }

    /// Symmetric group on `n` letters; elements are permutations in
    /// lexicographic order of their one-line notation, composed as
    /// `(σ·τ)(i) = σ(τ(i))`.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|d| d.to_string()).collect::<String>())
            .collect();
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| index(&t.iter().map(|&i| s[i]).collect()))
                    .collect()
            })
            .collect();
        Self::from_table(labels, table).expect("symmetric table is a group")
    }

    /// Direct product; element `(a, b)` has index `a * |other| + b`.
    pub fn product(&self, other: &FiniteGroup) -> Self {
        let (n, k) = (self.order(), other.order());
        let labels = (0..n * k)
            .map(|i| format!("({},{})", self.labels[i / k], other.labels[i % k]))
            .collect();
        let table = (0..n * k)
            .map(|x| {
                (0..n * k)
                    .map(|y| self.mul(x / k, y / k) * k + other.mul(x % k, y % k))
                    .collect()
            })
            .collect();
        Self::from_table(labels, table).expect("product of groups is a group")
    }

    pub fn order(&self) -> usize {
        self.inverses.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order()).map(|r| r.to_vec()).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted element orders; a cheap isomorphism-class fingerprint.
    pub fn order_sequence(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let members: BTreeSet<usize> = set.iter().copied().collect();
        members.contains(&self.identity)
            && members
                .iter()
                .all(|&a| members.iter().all(|&b| members.contains(&self.mul(a, b))))
    }

    /// Smallest subgroup containing `gens`, as a sorted index list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity]);
        set.extend(gens.iter().copied());
        loop {
            let mut next = set.clone();
            for &a in &set {
                for &b in &set {
                    next.insert(self.mul(a, b));
                }
            }
            if next.len() == set.len() {
                return set.into_iter().collect();
            }
            set = next;
        }
    }

    /// Every subgroup, ordered by size and then lexicographically.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier = vec![vec![self.identity]];
        found.insert(vec![self.identity]);
        while let Some(h) = frontier.pop() {
            for g in 0..self.order() {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let k = self.closure(&gens);
                if found.insert(k.clone()) {
                    frontier.push(k);
                }
            }
        }
        let mut all: Vec<Vec<usize>> = found.into_iter().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all
    }

    pub fn is_normal(&self, subgroup: &[usize]) -> bool {
        let members: BTreeSet<usize> = subgroup.iter().copied().collect();
        (0..self.order()).all(|g| {
            members
                .iter()
                .all(|&h| members.contains(&self.mul(self.mul(g, h), self.inv(g))))
        })
    }

    /// Whether `perm` (image of each element) is a group automorphism.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let n = self.order();
        perm.len() == n
            && perm.iter().collect::<BTreeSet<_>>().len() == n
            && perm.iter().all(|&p| p < n)
            && (0..n).all(|a| (0..n).all(|b| perm[self.mul(a, b)] == self.mul(perm[a], perm[b])))
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in permutations(n - 1) {
            let mut p = vec![first];
            p.extend(rest.into_iter().map(|x| if x >= first { x + 1 } else { x }));
            out.push(p);
        }
    }
    out
}
