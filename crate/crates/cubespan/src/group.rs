//! Finite abelian groups presented by invariant factors, their elements,
//! subgroups, and exhaustive subgroup enumeration at desk scale.

use std::collections::BTreeSet;

/// Element of a product of cyclic groups, one residue per factor.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GroupElement {
    pub residues: Vec<u64>,
}

impl GroupElement {
    pub fn new(residues: Vec<u64>) -> Self {
        GroupElement { residues }
    }
}

/// Finite abelian group `Z/r_1 + ... + Z/r_m` with `r_1 | r_2 | ... | r_m`
/// and every factor at least 2; `m = 0` is the trivial group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u64>) -> Self {
        for w in factors.windows(2) {
            assert!(
                w[1] % w[0] == 0,
                "invariant factors must form a divisibility chain"
            );
        }
        assert!(
            factors.iter().all(|&r| r >= 2),
            "invariant factors must be at least 2"
        );
        FiniteAbelianGroup { factors }
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            factors: Vec::new(),
        }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// Number of even invariant factors.
    pub fn even_factor_count(&self) -> u32 {
        self.factors.iter().filter(|&&r| r % 2 == 0).count() as u32
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::new(vec![0; self.factors.len()])
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.residues.len() == self.factors.len()
            && g.residues.iter().zip(&self.factors).all(|(&a, &r)| a < r)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement::new(
            a.residues
                .iter()
                .zip(&b.residues)
                .zip(&self.factors)
                .map(|((&x, &y), &r)| (x + y) % r)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement::new(
            a.residues
                .iter()
                .zip(&self.factors)
                .map(|(&x, &r)| (r - x) % r)
                .collect(),
        )
    }

    pub fn scale(&self, k: u64, a: &GroupElement) -> GroupElement {
        GroupElement::new(
            a.residues
                .iter()
                .zip(&self.factors)
                .map(|(&x, &r)| (x % r * (k % r)) % r)
                .collect(),
        )
    }

    /// All elements in lexicographic order of their residue tuples.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut cur = vec![0u64; self.factors.len()];
        loop {
            out.push(GroupElement::new(cur.clone()));
            let mut i = self.factors.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.factors[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// Lexicographic rank of an element, the inverse of `elements()` ordering.
    pub fn index_of(&self, g: &GroupElement) -> usize {
        debug_assert!(self.contains(g));
        let mut idx = 0usize;
        for (a, r) in g.residues.iter().zip(&self.factors) {
            idx = idx * (*r as usize) + *a as usize;
        }
        idx
    }

    /// Cyclic subgroup generated by one element.
    pub fn cyclic_subgroup(&self, g: &GroupElement) -> Subgroup {
        let mut elems = BTreeSet::new();
        let mut cur = self.zero();
        loop {
            if !elems.insert(cur.clone()) {
                break;
            }
            cur = self.add(&cur, g);
        }
        Subgroup {
            elements: elems.into_iter().collect(),
        }
    }

    /// Closure of a set of generators under addition.
    pub fn closure(&self, gens: &[GroupElement]) -> Subgroup {
        let mut elems: BTreeSet<GroupElement> = BTreeSet::new();
        elems.insert(self.zero());
        let mut frontier: Vec<GroupElement> = vec![self.zero()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add(&x, g);
                if elems.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Subgroup {
            elements: elems.into_iter().collect(),
        }
    }

    /// Every subgroup, found by repeatedly adjoining single generators to
    /// known subgroups until no new subgroup appears.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let elements = self.elements();
        let mut seen: BTreeSet<Vec<GroupElement>> = BTreeSet::new();
        let trivial = Subgroup {
            elements: vec![self.zero()],
        };
        seen.insert(trivial.elements.clone());
        let mut frontier = vec![trivial];
        while let Some(sub) = frontier.pop() {
            for g in &elements {
                if sub.contains(g) {
                    continue;
                }
                let mut gens: Vec<GroupElement> = sub.elements.clone();
                gens.push(g.clone());
                let bigger = self.closure(&gens);
                if seen.insert(bigger.elements.clone()) {
                    frontier.push(bigger);
                }
            }
        }
        let mut out: Vec<Subgroup> = seen
            .into_iter()
            .map(|elements| Subgroup { elements })
            .collect();
        out.sort_by_key(|s| (s.order(), s.elements.clone()));
        out
    }
}

/// Subgroup stored as a sorted element list; the canonical form used for
/// equality tests throughout the crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Subgroup {
    pub elements: Vec<GroupElement>,
}

impl Subgroup {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_subgroup_of(&self, group: &FiniteAbelianGroup) -> bool {
        if !self.contains(&group.zero()) {
            return false;
        }
        for a in &self.elements {
            if !group.contains(a) || !self.contains(&group.neg(a)) {
                return false;
            }
            for b in &self.elements {
                if !self.contains(&group.add(a, b)) {
                    return false;
                }
            }
        }
        true
    }
}

/// All invariant-factor chains with product `n`: one per isomorphism type of
/// abelian group of order `n`.
pub fn abelian_groups_of_order(n: u64) -> Vec<FiniteAbelianGroup> {
    assert!(n >= 1);
    fn rec(rem: u64, max: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rem == 1 {
            out.push(acc.iter().rev().copied().collect());
            return;
        }
        for d in crate::arith::divisors(rem) {
            if d >= 2 && max % d == 0 {
                acc.push(d);
                rec(rem / d, d, acc, out);
                acc.pop();
            }
        }
    }
    let mut chains = Vec::new();
    rec(n, n, &mut Vec::new(), &mut chains);
    chains.sort();
    chains
        .into_iter()
        .map(|factors| {
            if factors.is_empty() {
                FiniteAbelianGroup::trivial()
            } else {
                FiniteAbelianGroup::new(factors)
            }
        })
        .collect()
}

/// All isomorphism types of abelian groups of order between 1 and `n`.
pub fn abelian_groups_up_to(n: u64) -> Vec<FiniteAbelianGroup> {
    (1..=n).flat_map(abelian_groups_of_order).collect()
}
