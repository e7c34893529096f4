//! Finite groups given by Cayley tables.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group on `0..order` with `0` as the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    generators: Vec<usize>,
    /// For each element, a generator word reaching it: `(parent, generator)`
    /// with `element = parent * generator`; the identity has `None`.
    words: Vec<Option<(usize, usize)>>,
}

impl FiniteGroup {
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotAGroup {
                reason: "empty table",
                a: 0,
                b: 0,
                c: 0,
            });
        }
        if rows.iter().any(|r| r.len() != n) || rows.iter().flatten().any(|&v| v >= n) {
            return Err(Error::NotAGroup {
                reason: "table is not square over its index set",
                a: 0,
                b: 0,
                c: 0,
            });
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        validate_table(n, &table)?;
        Ok(Self::from_valid_table(n, table))
    }

    fn from_valid_table(order: usize, table: Vec<usize>) -> Self {
        let inverses = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| table[a * order + b] == 0)
                    .expect("validated group")
            })
            .collect();
        let mut g = FiniteGroup {
            order,
            table,
            inverses,
            generators: Vec::new(),
            words: Vec::new(),
        };
        g.generators = g.greedy_generators();
        g.words = g.generator_words();
        g
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::from_valid_table(n, table)
    }

    /// Elements `(a, b)` are indexed `a * |other| + b`.
    pub fn direct_product(&self, other: &Self) -> Self {
        let (n, m) = (self.order, other.order);
        let mut table = Vec::with_capacity(n * m * n * m);
        for a1 in 0..n {
            for b1 in 0..m {
                for a2 in 0..n {
                    for b2 in 0..m {
                        table.push(self.mul(a1, a2) * m + other.mul(b1, b2));
                    }
                }
            }
        }
        Self::from_valid_table(n * m, table)
    }

    /// Dihedral group of order `2n`: `r^i` is `i`, `r^i s` is `n + i`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0);
        let elem = |rot: usize, refl: bool| if refl { n + rot } else { rot };
        let split = |x: usize| if x < n { (x, false) } else { (x - n, true) };
        let mut table = Vec::with_capacity(4 * n * n);
        for x in 0..2 * n {
            for y in 0..2 * n {
                let (i, s) = split(x);
                let (j, t) = split(y);
                // r^i s^a r^j s^b = r^(i ± j) s^(a+b)
                let rot = if s { (i + n - j) % n } else { (i + j) % n };
                table.push(elem(rot, s != t));
            }
        }
        Self::from_valid_table(2 * n, table)
    }

    /// The symmetric group on three letters, as the dihedral group of order 6.
    pub fn symmetric3() -> Self {
        Self::dihedral(3)
    }

    /// Quaternion group: `±1, ±i, ±j, ±k` indexed `1, -1, i, -i, j, -j, k, -k`.
    pub fn quaternion() -> Self {
        // unit index 0..4 for 1, i, j, k; products of units with sign
        let unit_mul = |a: usize, b: usize| -> (usize, bool) {
            match (a, b) {
                (0, x) | (x, 0) => (x, false),
                (x, y) if x == y => (0, true),
                (1, 2) => (3, false),
                (2, 1) => (3, true),
                (2, 3) => (1, false),
                (3, 2) => (1, true),
                (3, 1) => (2, false),
                (1, 3) => (2, true),
                _ => unreachable!(),
            }
        };
        let mut table = Vec::with_capacity(64);
        for x in 0..8 {
            for y in 0..8 {
                let (u, neg) = unit_mul(x / 2, y / 2);
                let sign = (x % 2 == 1) ^ (y % 2 == 1) ^ neg;
                table.push(2 * u + usize::from(sign));
            }
        }
        Self::from_valid_table(8, table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// `(parent, generator)` with `element = parent * generator`, or `None`
    /// for the identity. Following parents reaches the identity.
    pub fn word_step(&self, element: usize) -> Option<(usize, usize)> {
        self.words[element]
    }

    /// Elements in the order the generator BFS visits them; parents precede
    /// children, so images can be filled in one pass.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        let mut out = vec![0];
        seen[0] = true;
        let mut i = 0;
        while i < out.len() {
            let g = out[i];
            for &s in &self.generators {
                let h = self.mul(g, s);
                if !seen[h] {
                    seen[h] = true;
                    out.push(h);
                }
            }
            i += 1;
        }
        out
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Closure of `elems` under multiplication, sorted.
    pub fn generated_subgroup(&self, elems: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            for &s in elems {
                let h = self.mul(g, s);
                if !seen[h] {
                    seen[h] = true;
                    queue.push_back(h);
                }
            }
        }
        (0..self.order).filter(|&i| seen[i]).collect()
    }

    /// The subgroup on `elements` (which must contain the identity and be
    /// closed), re-indexed in the given order, identity first.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Self> {
        let mut index = vec![usize::MAX; self.order];
        for (i, &e) in elements.iter().enumerate() {
            index[e] = i;
        }
        if elements.first() != Some(&0) {
            return Err(Error::NotAGroup {
                reason: "subgroup must list the identity first",
                a: 0,
                b: 0,
                c: 0,
            });
        }
        let k = elements.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in elements {
            for &b in elements {
                let p = index[self.mul(a, b)];
                if p == usize::MAX {
                    return Err(Error::NotAGroup {
                        reason: "subset is not closed",
                        a,
                        b,
                        c: self.mul(a, b),
                    });
                }
                table.push(p);
            }
        }
        Ok(Self::from_valid_table(k, table))
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0];
        for g in 1..self.order {
            if span.binary_search(&g).is_err() {
                gens.push(g);
                span = self.generated_subgroup(&gens);
            }
        }
        gens
    }

    fn generator_words(&self) -> Vec<Option<(usize, usize)>> {
        let mut words = vec![None; self.order];
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            for &s in &self.generators {
                let h = self.mul(g, s);
                if !seen[h] {
                    seen[h] = true;
                    words[h] = Some((g, s));
                    queue.push_back(h);
                }
            }
        }
        words
    }

    /// Whether `map` (indexed by element) is a homomorphism into `target`.
    pub fn is_homomorphism(&self, target: &Self, map: &[usize]) -> bool {
        map.len() == self.order
            && map.iter().all(|&v| v < target.order)
            && self.elements().all(|a| {
                self.elements()
                    .all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b]))
            })
    }

    /// Every homomorphism into `target`, in lexicographic order of the
    /// generator images.
    pub fn homomorphisms(&self, target: &Self) -> Vec<Vec<usize>> {
        let gens = &self.generators;
        let order = self.bfs_order();
        let mut out = Vec::new();
        let mut images = vec![0usize; gens.len()];
        loop {
            let mut map = vec![0usize; self.order];
            for &g in order.iter().skip(1) {
                let (parent, s) = self.words[g].expect("non-identity has a word");
                let k = gens.iter().position(|&t| t == s).expect("generator");
                map[g] = target.mul(map[parent], images[k]);
            }
            if self.is_homomorphism(target, &map) {
                out.push(map);
            }
            // odometer over generator images
            let mut i = gens.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                images[i] += 1;
                if images[i] < target.order {
                    break;
                }
                images[i] = 0;
            }
        }
    }
}

/// Checks identity, closure, associativity and inverses of a flat table.
pub fn validate_table(n: usize, table: &[usize]) -> Result<()> {
    let m = |a: usize, b: usize| table[a * n + b];
    for j in 0..n {
        if m(0, j) != j || m(j, 0) != j {
            return Err(Error::NotAGroup {
                reason: "index 0 is not an identity",
                a: 0,
                b: j,
                c: 0,
            });
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if m(m(a, b), c) != m(a, m(b, c)) {
                    return Err(Error::NotAGroup {
                        reason: "associativity fails",
                        a,
                        b,
                        c,
                    });
                }
            }
        }
    }
    for a in 0..n {
        if !(0..n).any(|b| m(a, b) == 0 && m(b, a) == 0) {
            return Err(Error::NotAGroup {
                reason: "element has no inverse",
                a,
                b: 0,
                c: 0,
            });
        }
    }
    Ok(())
}

pub fn validate_group(rows: Vec<Vec<usize>>) -> Result<FiniteGroup> {
    FiniteGroup::from_table(rows)
}

#[derive(Serialize, Deserialize)]
struct GroupWire {
    order: usize,
    table: Vec<Vec<usize>>,
}

impl Serialize for FiniteGroup {
    fn serialize<Se: serde::Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        GroupWire {
            order: self.order,
            table: self.table_rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = GroupWire::deserialize(d)?;
        if w.table.len() != w.order {
            return Err(D::Error::custom("group order disagrees with table size"));
        }
        FiniteGroup::from_table(w.table).map_err(D::Error::custom)
    }
}
