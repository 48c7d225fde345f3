use std::collections::VecDeque;

use super::{Elem, ElementSet, FiniteGroup, GroupError};
use crate::arith::prime_power;

/// A subgroup as an explicit element set plus the generators it was closed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: ElementSet,
    pub generators: Vec<Elem>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.elements.contains(e)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharacteristicKind {
    Frattini,
    Omega(u32),
    Agemo(u32),
}

impl FiniteGroup {
    /// Extends `set` (already closed under right multiplication by `old`
    /// generators) to the subgroup generated by `gens`.
    fn close_into(&self, set: &mut ElementSet, frontier: Vec<Elem>, gens: &[Elem]) {
        let words: Vec<_> = gens.iter().map(|&g| self.word(g)).collect();
        let mut queue: VecDeque<Elem> = frontier.into();
        while let Some(x) = queue.pop_front() {
            for w in &words {
                let y = self.evaluate_from(x, w);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
    }

    /// Smallest subgroup containing `seeds`.
    ///
    /// Seeds already in the closure so far are skipped, so `generators`
    /// stays short even for large seed lists.
    pub fn subgroup_closure(&self, seeds: &[Elem]) -> Subgroup {
        let mut sub = Subgroup { elements: self.trivial(), generators: Vec::new() };
        for &g in seeds {
            self.adjoin(&mut sub, g);
        }
        sub
    }

    fn adjoin(&self, sub: &mut Subgroup, g: Elem) {
        if sub.elements.contains(g) {
            return;
        }
        sub.generators.push(g);
        let w = self.word(g);
        let mut frontier = Vec::new();
        for x in sub.elements.iter().collect::<Vec<_>>() {
            let y = self.evaluate_from(x, &w);
            if sub.elements.insert(y) {
                frontier.push(y);
            }
        }
        let gens = sub.generators.clone();
        self.close_into(&mut sub.elements, frontier, &gens);
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Elem]) -> Subgroup {
        let mut sub = self.subgroup_closure(seeds);
        let mut i = 0;
        while i < sub.generators.len() {
            let c = sub.generators[i];
            i += 1;
            for s in 0..self.num_generators() {
                for conj in [self.conj_by_gen(c, s), self.conj_by_gen_inv(c, s)] {
                    self.adjoin(&mut sub, conj);
                }
            }
        }
        sub
    }

    /// `[A, G]` for a subgroup `A` given by generators.
    pub fn commutator_with_group(&self, sub: &Subgroup) -> Subgroup {
        let seeds: Vec<Elem> = sub
            .generators
            .iter()
            .flat_map(|&a| self.generators().into_iter().map(move |g| (a, g)))
            .map(|(a, g)| self.commutator(a, g))
            .collect();
        self.normal_closure(&seeds)
    }

    /// `γ_1 = G ⊇ γ_2 ⊇ …`, stopping at the trivial group or where the series stabilizes.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let mut series = vec![Subgroup { elements: self.all(), generators: self.generators() }];
        loop {
            let last = series.last().expect("nonempty");
            if last.is_trivial() {
                break;
            }
            let next = self.commutator_with_group(last);
            if next.order() == last.order() {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        self.commutator_with_group(&Subgroup { elements: self.all(), generators: self.generators() })
    }

    /// The prime `p` with `|G| = p^e`, or an error when `G` is not a p-group.
    pub fn p_group_prime(&self) -> Result<Option<u64>, GroupError> {
        if self.order() == 1 {
            return Ok(None);
        }
        prime_power(self.order() as u64)
            .map(|(p, _)| Some(p))
            .ok_or(GroupError::NotPGroup(self.order()))
    }

    pub fn characteristic_subgroup(&self, kind: CharacteristicKind) -> Result<Subgroup, GroupError> {
        let Some(p) = self.p_group_prime()? else {
            return Ok(self.subgroup_closure(&[]));
        };
        let orders = self.element_orders();
        Ok(match kind {
            CharacteristicKind::Omega(j) => {
                let bound = p.pow(j);
                let seeds: Vec<Elem> = self.elements().filter(|g| bound % orders[g.index()] == 0).collect();
                self.subgroup_closure(&seeds)
            }
            CharacteristicKind::Agemo(j) => self.agemo(p.pow(j)),
            CharacteristicKind::Frattini => {
                let mut seeds = self.agemo(p).generators;
                seeds.extend(self.derived_subgroup().elements.iter());
                self.subgroup_closure(&seeds)
            }
        })
    }

    fn agemo(&self, power: u64) -> Subgroup {
        let mut seen = self.trivial();
        let mut seeds = Vec::new();
        for g in self.elements() {
            let h = self.pow(g, power as i64);
            if seen.insert(h) {
                seeds.push(h);
            }
        }
        self.subgroup_closure(&seeds)
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.element_orders().iter().fold(1, |acc, &o| lcm(acc, o))
    }

    pub fn centralizer(&self, g: Elem) -> Subgroup {
        let members: Vec<Elem> = self.elements().filter(|&h| self.mul(h, g) == self.mul(g, h)).collect();
        let set = ElementSet::from_elems(self.order(), members.iter().copied());
        Subgroup { elements: set, generators: members }
    }

    pub fn center(&self) -> ElementSet {
        ElementSet::from_elems(
            self.order(),
            self.elements().filter(|&h| (0..self.num_generators()).all(|s| self.conj_by_gen(h, s) == h)),
        )
    }

    pub fn is_central(&self, h: Elem) -> bool {
        (0..self.num_generators()).all(|s| self.conj_by_gen(h, s) == h)
    }

    /// `{[t, g] : g ∈ G}`.
    pub fn commutator_set(&self, t: Elem) -> ElementSet {
        let t_inv = self.inv(t);
        let mut out = ElementSet::empty(self.order());
        for g in self.elements() {
            // [t, g] = t⁻¹ · (g⁻¹ t g)
            out.insert(self.mul(t_inv, self.conj(t, g)));
        }
        out
    }

    /// Cyclic subgroup `⟨g⟩`.
    pub fn cyclic(&self, g: Elem) -> ElementSet {
        let mut set = self.trivial();
        let mut cur = g;
        while set.insert(cur) {
            cur = self.mul(g, cur);
        }
        set
    }

    /// Union of the conjugacy classes of the elements of `set`.
    pub fn conjugate_union(&self, set: &ElementSet) -> ElementSet {
        let ids = self.class_ids();
        let mut wanted = vec![false; ids.iter().map(|&c| c as usize + 1).max().unwrap_or(0)];
        for e in set.iter() {
            wanted[ids[e.index()] as usize] = true;
        }
        ElementSet::from_elems(self.order(), self.elements().filter(|e| wanted[ids[e.index()] as usize]))
    }

    pub fn generates(&self, elems: &[Elem]) -> bool {
        self.subgroup_closure(elems).order() == self.order()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Coordinates in `G/Φ(G) ≅ F_p^d` for a p-group whose generator images form a basis.
///
/// A set of elements generates `G` exactly when its coordinate vectors span.
pub struct FrattiniQuotient {
    p: u64,
    d: usize,
    coords: Vec<Vec<u8>>,
    pub frattini: Subgroup,
}

impl FrattiniQuotient {
    pub fn new(g: &FiniteGroup) -> Result<Self, GroupError> {
        let p = g.p_group_prime()?.ok_or(GroupError::NotPGroup(1))?;
        let frattini = g.characteristic_subgroup(CharacteristicKind::Frattini)?;
        let d = g.num_generators();
        if (g.order() / frattini.order()) as u64 != p.pow(d as u32) {
            return Err(GroupError::RedundantGenerators);
        }
        let mut coords = vec![vec![0u8; d]; g.order()];
        for e in 1..g.order() {
            let w = g.word(Elem(e as u32));
            let mut v = vec![0u8; d];
            for l in w.letters() {
                v[l.index()] = ((v[l.index()] as u64 + 1) % p) as u8;
            }
            coords[e] = v;
        }
        Ok(FrattiniQuotient { p, d, coords, frattini })
    }

    pub fn coords(&self, e: Elem) -> &[u8] {
        &self.coords[e.index()]
    }

    pub fn in_frattini(&self, e: Elem) -> bool {
        self.coords[e.index()].iter().all(|&c| c == 0)
    }

    /// Rank over `F_p` of the coordinate vectors of `elems`.
    pub fn rank(&self, elems: &[Elem]) -> usize {
        let p = self.p;
        let mut rows: Vec<Vec<u64>> =
            elems.iter().map(|&e| self.coords[e.index()].iter().map(|&c| c as u64).collect()).collect();
        let mut rank = 0;
        for col in 0..self.d {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
            rows.swap(rank, pivot);
            let inv = crate::arith::pow_mod(rows[rank][col], p - 2, p);
            for r in 0..rows.len() {
                if r != rank && rows[r][col] != 0 {
                    let factor = rows[r][col] * inv % p;
                    for c in 0..self.d {
                        rows[r][c] = (rows[r][c] + p * p - factor * rows[rank][c] % p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn generates(&self, elems: &[Elem]) -> bool {
        self.rank(elems) == self.d
    }

    /// Whether `⟨aΦ⟩ = ⟨bΦ⟩` in the Frattini quotient.
    pub fn same_line(&self, a: Elem, b: Elem) -> bool {
        let ra = self.rank(&[a]);
        ra == self.rank(&[b]) && self.rank(&[a, b]) == ra
    }
}
