//! Finite abelian groups in primary decomposition, their elements and
//! subgroups.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::{invalid, is_prime, prime_power, Result};

/// `Z_{q_1} ⊕ ... ⊕ Z_{q_r}` with each `q_i` a prime power.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    cyclic_orders: Vec<u64>,
}

/// Coordinates, one residue per cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<u64>);

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl FiniteAbelianGroup {
    pub fn new(cyclic_orders: Vec<u64>) -> Result<Self> {
        for &q in &cyclic_orders {
            if prime_power(q).is_none() {
                return invalid(format!("cyclic order {q} is not a prime power"));
            }
        }
        Ok(FiniteAbelianGroup { cyclic_orders })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { cyclic_orders: Vec::new() }
    }

    /// `Z_p^rank`.
    pub fn elementary(p: u64, rank: usize) -> Result<Self> {
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        Ok(FiniteAbelianGroup { cyclic_orders: vec![p; rank] })
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.cyclic_orders
    }

    pub fn rank(&self) -> usize {
        self.cyclic_orders.len()
    }

    pub fn order(&self) -> u64 {
        self.cyclic_orders.iter().product()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders = self.cyclic_orders.clone();
        orders.extend(&other.cyclic_orders);
        FiniteAbelianGroup { cyclic_orders: orders }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    /// Element with the given coordinates, each reduced.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return invalid(format!("element needs {} coordinates, got {}", self.rank(), coords.len()));
        }
        Ok(GroupElement(coords.iter().zip(&self.cyclic_orders).map(|(&c, &q)| c.rem_euclid(q as i64) as u64).collect()))
    }

    /// `e_k`, the generator of the `k`-th cyclic factor.
    pub fn basis(&self, k: usize) -> GroupElement {
        let mut v = vec![0; self.rank()];
        v[k] = 1 % self.cyclic_orders[k];
        GroupElement(v)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(a.0.iter().zip(&b.0).zip(&self.cyclic_orders).map(|((&x, &y), &q)| (x + y) % q).collect())
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(a.0.iter().zip(&self.cyclic_orders).map(|(&x, &q)| (q - x) % q).collect())
    }

    pub fn scale(&self, m: i64, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.cyclic_orders)
                .map(|(&x, &q)| ((x as i128 * m as i128).rem_euclid(q as i128)) as u64)
                .collect(),
        )
    }

    pub fn element_order(&self, a: &GroupElement) -> u64 {
        a.0.iter().zip(&self.cyclic_orders).map(|(&x, &q)| q / num_integer::gcd(x, q)).fold(1, num_integer::lcm)
    }

    /// Mixed-radix code of an element, first coordinate most significant.
    pub fn encode(&self, a: &GroupElement) -> u64 {
        a.0.iter().zip(&self.cyclic_orders).fold(0, |acc, (&x, &q)| acc * q + x)
    }

    pub fn decode(&self, mut code: u64) -> GroupElement {
        let mut v = vec![0; self.rank()];
        for (k, &q) in self.cyclic_orders.iter().enumerate().rev() {
            v[k] = code % q;
            code /= q;
        }
        GroupElement(v)
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(|c| self.decode(c))
    }

    /// Number of cyclic factors of `p`-power order.
    pub fn rp_count(&self, p: u64) -> usize {
        self.cyclic_orders.iter().filter(|&&q| q % p == 0).count()
    }

    /// Generators of all order-`p` subgroups, one per subgroup, each
    /// normalized so its leading nonzero `p`-torsion coordinate is 1.
    pub fn order_p_generators(&self, p: u64) -> Result<Vec<GroupElement>> {
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        let factors: Vec<usize> = (0..self.rank()).filter(|&k| self.cyclic_orders[k].is_multiple_of(p)).collect();
        let r = factors.len() as u32;
        let mut out = Vec::new();
        // projective points of F_p^r
        for lead in 0..r as usize {
            let free = r as usize - lead - 1;
            for tail in 0..p.pow(free as u32) {
                let mut v = vec![0u64; self.rank()];
                let unit = |k: usize| self.cyclic_orders[factors[k]] / p;
                v[factors[lead]] = unit(lead);
                let mut t = tail;
                for s in (lead + 1..r as usize).rev() {
                    v[factors[s]] = (t % p) * unit(s);
                    t /= p;
                }
                out.push(GroupElement(v));
            }
        }
        Ok(out)
    }

    pub fn subgroups_of_order_p(&self, p: u64) -> Result<Vec<Subgroup>> {
        Ok(self.order_p_generators(p)?.into_iter().map(|g| Subgroup::generated_by(self, vec![g])).collect())
    }
}

/// A subgroup with its element codes cached in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgroup {
    parent: FiniteAbelianGroup,
    generators: Vec<GroupElement>,
    #[serde(skip)]
    codes: Vec<u64>,
}

impl Subgroup {
    pub fn trivial(group: &FiniteAbelianGroup) -> Self {
        Subgroup { parent: group.clone(), generators: Vec::new(), codes: vec![0] }
    }

    pub fn generated_by(group: &FiniteAbelianGroup, generators: Vec<GroupElement>) -> Self {
        let mut seen: HashSet<u64> = HashSet::from([0]);
        let mut members = vec![group.zero()];
        for g in &generators {
            // smallest m > 0 with m g already inside
            let mut step = Vec::new();
            let mut x = g.clone();
            while !seen.contains(&group.encode(&x)) {
                step.push(x.clone());
                x = group.add(&x, g);
            }
            let mut grown = Vec::with_capacity(members.len() * (step.len() + 1));
            for h in &members {
                for s in &step {
                    let y = group.add(h, s);
                    if seen.insert(group.encode(&y)) {
                        grown.push(y);
                    }
                }
            }
            members.extend(grown);
        }
        let mut codes: Vec<u64> = seen.into_iter().collect();
        codes.sort_unstable();
        Subgroup { parent: group.clone(), generators, codes }
    }

    /// Builds a subgroup from a complete element list; `None` when the
    /// list is not closed under addition.
    pub fn from_elements(group: &FiniteAbelianGroup, elements: &[GroupElement]) -> Option<Self> {
        let set: HashSet<u64> = elements.iter().map(|e| group.encode(e)).collect();
        if !set.contains(&0) {
            return None;
        }
        // closure checked against a generating set picked greedily
        let mut gens: Vec<GroupElement> = Vec::new();
        let mut span = Subgroup::trivial(group);
        for e in elements {
            if !span.contains(e) {
                gens.push(e.clone());
                span = Subgroup::generated_by(group, gens.clone());
            }
        }
        (span.codes.len() == set.len() && span.codes.iter().all(|c| set.contains(c))).then_some(span)
    }

    pub fn parent(&self) -> &FiniteAbelianGroup {
        &self.parent
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        self.codes.len() as u64
    }

    pub fn codes(&self) -> &[u64] {
        &self.codes
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.codes.binary_search(&self.parent.encode(x)).is_ok()
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.codes.iter().map(|&c| self.parent.decode(c))
    }

    pub fn intersects_trivially(&self, other: &Subgroup) -> bool {
        let (mut a, mut b) = (self.codes.iter().skip(1).peekable(), other.codes.iter().skip(1).peekable());
        while let (Some(x), Some(y)) = (a.peek(), b.peek()) {
            match x.cmp(y) {
                std::cmp::Ordering::Equal => return false,
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
            }
        }
        true
    }

    /// Multiset of element orders, which pins down a finite abelian group.
    pub fn order_profile(&self) -> Vec<(u64, usize)> {
        let mut counts: HashMap<u64, usize> = HashMap::new();
        for e in self.elements() {
            *counts.entry(self.parent.element_order(&e)).or_default() += 1;
        }
        let mut v: Vec<_> = counts.into_iter().collect();
        v.sort_unstable();
        v
    }

    pub fn is_isomorphic(&self, other: &Subgroup) -> bool {
        self.order() == other.order() && self.order_profile() == other.order_profile()
    }

    /// `self ⊕ other = parent` as an internal direct sum.
    pub fn complements(&self, other: &Subgroup) -> bool {
        self.order() * other.order() == self.parent.order() && self.intersects_trivially(other)
    }

    /// Minimal generators recomputed greedily from the elements, in
    /// code order.
    pub fn reduced_generators(&self) -> Vec<GroupElement> {
        let mut gens = Vec::new();
        let mut span = Subgroup::trivial(&self.parent);
        for e in self.elements() {
            if !span.contains(&e) {
                gens.push(e);
                span = Subgroup::generated_by(&self.parent, gens.clone());
                if span.order() == self.order() {
                    break;
                }
            }
        }
        gens
    }
}

/// All subgroups of `group` of order `target` that lie inside the
/// element set `allowed` (codes) and whose generators pass `compatible`
/// pairwise (including each with itself). Results are sorted by their
/// element codes.
pub fn subgroups_within(
    group: &FiniteAbelianGroup,
    allowed: &HashSet<u64>,
    target: u64,
    compatible: &dyn Fn(&GroupElement, &GroupElement) -> bool,
) -> Vec<Subgroup> {
    let mut candidates: Vec<u64> = allowed.iter().copied().filter(|&c| c != 0).collect();
    candidates.sort_unstable();
    let candidates: Vec<GroupElement> = candidates
        .into_iter()
        .map(|c| group.decode(c))
        .filter(|g| compatible(g, g) && target.is_multiple_of(group.element_order(g)))
        .collect();
    let mut visited: HashSet<Vec<u64>> = HashSet::new();
    let mut found = Vec::new();
    let mut stack = vec![Subgroup::trivial(group)];
    if target == 1 {
        return stack;
    }
    while let Some(h) = stack.pop() {
        for c in &candidates {
            if h.contains(c) || !h.generators.iter().all(|g| compatible(g, c)) {
                continue;
            }
            let mut gens = h.generators.clone();
            gens.push(c.clone());
            let next = Subgroup::generated_by(group, gens);
            if !target.is_multiple_of(next.order()) || !next.codes.iter().all(|x| allowed.contains(x)) {
                continue;
            }
            if !visited.insert(next.codes.clone()) {
                continue;
            }
            if next.order() == target {
                found.push(next);
            } else {
                stack.push(next);
            }
        }
    }
    found.sort_by(|a, b| a.codes.cmp(&b.codes));
    found
}

/// First pair `(G_1, G_2)` from `candidates` with `G_1 ⊕ G_2` the whole
/// group and `G_1 ≅ G_2`.
pub fn complementary_pair(candidates: &[Subgroup]) -> Option<(Subgroup, Subgroup)> {
    for (a, g1) in candidates.iter().enumerate() {
        for g2 in &candidates[a + 1..] {
            if g1.complements(g2) && g1.is_isomorphic(g2) {
                return Some((g1.clone(), g2.clone()));
            }
        }
    }
    candidates.iter().find(|g| g.order() == 1 && g.parent.order() == 1).map(|g| (g.clone(), g.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(v: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_prime_power() {
        assert!(FiniteAbelianGroup::new(vec![6]).is_err());
        assert!(FiniteAbelianGroup::new(vec![8, 9, 5]).is_ok());
    }

    #[test]
    fn encode_decode() {
        let g = grp(&[4, 3, 5]);
        for c in 0..g.order() {
            assert_eq!(g.encode(&g.decode(c)), c);
        }
        assert_eq!(g.element_order(&g.element(&[2, 1, 0]).unwrap()), 6);
    }

    #[test]
    fn order_p_counts() {
        assert_eq!(grp(&[5, 5]).subgroups_of_order_p(5).unwrap().len(), 6);
        assert_eq!(grp(&[5]).subgroups_of_order_p(5).unwrap().len(), 1);
        assert_eq!(grp(&[4, 3]).subgroups_of_order_p(3).unwrap().len(), 1);
        assert_eq!(grp(&[9, 3, 4]).subgroups_of_order_p(3).unwrap().len(), 4);
        assert!(grp(&[5]).subgroups_of_order_p(4).is_err());
        assert_eq!(grp(&[5, 5]).rp_count(5), 2);
        assert_eq!(grp(&[9, 3, 4]).rp_count(3), 2);
        assert_eq!(grp(&[7]).rp_count(5), 0);
    }

    #[test]
    fn order_p_subgroups_cover_torsion() {
        let g = grp(&[9, 3, 2]);
        let subs = g.subgroups_of_order_p(3).unwrap();
        let mut all: Vec<u64> = subs.iter().flat_map(|s| s.codes()[1..].to_vec()).collect();
        let n = all.len();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), n);
        let torsion = g.elements().filter(|e| !e.is_zero() && g.scale(3, e).is_zero()).count();
        assert_eq!(n, torsion);
    }

    #[test]
    fn spans() {
        let g = grp(&[4, 2]);
        let h = Subgroup::generated_by(&g, vec![g.element(&[1, 1]).unwrap()]);
        assert_eq!(h.order(), 4);
        let k = Subgroup::generated_by(&g, vec![g.element(&[2, 0]).unwrap(), g.element(&[0, 1]).unwrap()]);
        assert_eq!(k.order(), 4);
        assert!(!h.is_isomorphic(&k));
        assert!(!h.intersects_trivially(&k));
        let elems: Vec<_> = k.elements().collect();
        assert_eq!(Subgroup::from_elements(&g, &elems).unwrap().codes(), k.codes());
        assert!(Subgroup::from_elements(&g, &elems[..3]).is_none());
    }

    #[test]
    fn search_finds_diagonals() {
        let g = grp(&[5, 5]);
        let allowed: HashSet<u64> =
            g.elements().filter(|e| e.0[0] == e.0[1] || (e.0[0] + e.0[1]) % 5 == 0).map(|e| g.encode(&e)).collect();
        let found = subgroups_within(&g, &allowed, 5, &|_, _| true);
        assert_eq!(found.len(), 2);
        let (a, b) = complementary_pair(&found).unwrap();
        assert!(a.complements(&b));
    }
}
