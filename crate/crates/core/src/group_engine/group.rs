use std::collections::{HashMap, VecDeque};
use std::hash::Hash;
use std::sync::OnceLock;

use super::{ElementSet, GroupError, Perm};
use crate::coset_enum::CosetTable;
use crate::presentations::{Letter, Presentation, Word};

/// Elements that can be multiplied; used to enumerate a group from generators.
pub trait GroupElement: Clone + Eq + Hash {
    /// The product `self · rhs`.
    fn op(&self, rhs: &Self) -> Self;
    fn identity_like(&self) -> Self;
}

/// Index of an element in a [`FiniteGroup`]. `Elem(0)` is the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite group given by its right and left Cayley tables on the
/// generators.
///
/// Elements are numbered in breadth-first order from the identity over the
/// (positive) generators, so each element's defining word is a shortest
/// positive word, and index order is the shortlex order of those words.
pub struct FiniteGroup {
    names: Vec<String>,
    n: usize,
    ngens: usize,
    right: Vec<u32>,
    right_inv: Vec<u32>,
    left: Vec<u32>,
    left_inv: Vec<u32>,
    // breadth-first tree: element = parent · generator
    parent: Vec<u32>,
    parent_gen: Vec<u32>,
    word_len: Vec<u32>,
    presentation: Option<Presentation>,
    orders: OnceLock<Vec<u64>>,
    classes: OnceLock<Vec<u32>>,
}

/// A group enumerated from concrete generators, with the concrete element
/// behind each index.
pub struct Realized<E> {
    pub group: FiniteGroup,
    pub elements: Vec<E>,
    index: HashMap<E, u32>,
}

impl<E: GroupElement> Realized<E> {
    pub fn find(&self, e: &E) -> Option<Elem> {
        self.index.get(e).map(|&i| Elem(i))
    }

    pub fn element(&self, g: Elem) -> &E {
        &self.elements[g.index()]
    }

    /// Element indices whose concrete elements satisfy `pred`.
    pub fn filter(&self, pred: impl Fn(&E) -> bool) -> ElementSet {
        ElementSet::from_elems(
            self.elements.len(),
            self.elements.iter().enumerate().filter(|(_, e)| pred(e)).map(|(i, _)| Elem(i as u32)),
        )
    }
}

/// Breadth-first enumeration of the group generated by `gens`.
pub fn cayley_elements<E: GroupElement>(
    gens: &[E],
    names: &[String],
    ceiling: usize,
) -> Result<Realized<E>, GroupError> {
    if gens.is_empty() {
        return Err(GroupError::NoGenerators);
    }
    if names.len() != gens.len() {
        return Err(GroupError::NameCount { names: names.len(), generators: gens.len() });
    }
    let ngens = gens.len();
    let identity = gens[0].identity_like();
    let mut index: HashMap<E, u32> = HashMap::new();
    let mut elements = vec![identity.clone()];
    index.insert(identity, 0);
    let mut right: Vec<u32> = Vec::new();
    let mut parent = vec![0u32];
    let mut parent_gen = vec![u32::MAX];
    let mut i = 0;
    while i < elements.len() {
        for (s, g) in gens.iter().enumerate() {
            let prod = elements[i].op(g);
            let j = match index.get(&prod) {
                Some(&j) => j,
                None => {
                    if elements.len() >= ceiling {
                        return Err(GroupError::CeilingExceeded { ceiling });
                    }
                    let j = elements.len() as u32;
                    index.insert(prod.clone(), j);
                    elements.push(prod);
                    parent.push(i as u32);
                    parent_gen.push(s as u32);
                    j
                }
            };
            right.push(j);
        }
        i += 1;
    }
    let group = FiniteGroup::from_tree(names.to_vec(), ngens, right, parent, parent_gen, None)?;
    Ok(Realized { group, elements, index })
}

impl FiniteGroup {
    /// The group acting regularly on a complete coset table of the trivial
    /// subgroup, renumbered breadth-first from coset 0.
    pub fn from_coset_table(table: &CosetTable, pres: &Presentation) -> Result<Self, GroupError> {
        if !table.is_complete() {
            return Err(GroupError::IncompleteTable);
        }
        let n = table.n_cosets();
        let ngens = table.num_generators();
        let mut new_index = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut parent = vec![0u32];
        let mut parent_gen = vec![u32::MAX];
        new_index[0] = 0;
        order.push(0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for s in 0..ngens {
                let d = table.image(c, Letter::gen(s)).expect("complete table");
                if new_index[d] == u32::MAX {
                    new_index[d] = order.len() as u32;
                    parent.push(new_index[c]);
                    parent_gen.push(s as u32);
                    order.push(d);
                    queue.push_back(d);
                }
            }
        }
        if order.len() != n {
            return Err(GroupError::NotTransitive);
        }
        let mut right = Vec::with_capacity(n * ngens);
        for &c in &order {
            for s in 0..ngens {
                right.push(new_index[table.image(c, Letter::gen(s)).expect("complete table")]);
            }
        }
        FiniteGroup::from_tree(pres.generator_names().to_vec(), ngens, right, parent, parent_gen, Some(pres.clone()))
    }

    fn from_tree(
        names: Vec<String>,
        ngens: usize,
        right: Vec<u32>,
        parent: Vec<u32>,
        parent_gen: Vec<u32>,
        presentation: Option<Presentation>,
    ) -> Result<Self, GroupError> {
        let n = parent.len();
        let mut right_inv = vec![u32::MAX; n * ngens];
        for e in 0..n {
            for s in 0..ngens {
                let f = right[e * ngens + s] as usize;
                if right_inv[f * ngens + s] != u32::MAX {
                    return Err(GroupError::NotAPermutation);
                }
                right_inv[f * ngens + s] = e as u32;
            }
        }
        let mut word_len = vec![0u32; n];
        for e in 1..n {
            word_len[e] = word_len[parent[e] as usize] + 1;
        }
        // s·e = s·(parent · t) = (s·parent)·t, filled in breadth-first order
        let mut left = vec![0u32; n * ngens];
        let mut left_inv = vec![0u32; n * ngens];
        for s in 0..ngens {
            left[s] = right[s];
            left_inv[s] = right_inv[s];
        }
        for e in 1..n {
            let par = parent[e] as usize;
            let t = parent_gen[e] as usize;
            for s in 0..ngens {
                left[e * ngens + s] = right[left[par * ngens + s] as usize * ngens + t];
                left_inv[e * ngens + s] = right[left_inv[par * ngens + s] as usize * ngens + t];
            }
        }
        Ok(FiniteGroup {
            names,
            n,
            ngens,
            right,
            right_inv,
            left,
            left_inv,
            parent,
            parent_gen,
            word_len,
            presentation,
            orders: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn num_generators(&self) -> usize {
        self.ngens
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn identity(&self) -> Elem {
        Elem::IDENTITY
    }

    pub fn generator(&self, s: usize) -> Elem {
        Elem(self.right[s])
    }

    pub fn generators(&self) -> Vec<Elem> {
        (0..self.ngens).map(|s| self.generator(s)).collect()
    }

    /// Membership gate for raw indices.
    pub fn element(&self, index: usize) -> Result<Elem, GroupError> {
        if index < self.n {
            Ok(Elem(index as u32))
        } else {
            Err(GroupError::NotMember(index))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.n as u32).map(Elem)
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    pub fn trivial(&self) -> ElementSet {
        ElementSet::from_elems(self.n, [Elem::IDENTITY])
    }

    #[inline]
    pub fn mul_gen(&self, e: Elem, s: usize) -> Elem {
        Elem(self.right[e.index() * self.ngens + s])
    }

    #[inline]
    pub fn mul_gen_inv(&self, e: Elem, s: usize) -> Elem {
        Elem(self.right_inv[e.index() * self.ngens + s])
    }

    #[inline]
    fn left_gen(&self, e: Elem, s: usize) -> Elem {
        Elem(self.left[e.index() * self.ngens + s])
    }

    /// `s⁻¹ · e · s` for a generator `s`.
    #[inline]
    pub fn conj_by_gen(&self, e: Elem, s: usize) -> Elem {
        let es = self.mul_gen(e, s);
        Elem(self.left_inv[es.index() * self.ngens + s])
    }

    /// `s · e · s⁻¹` for a generator `s`.
    #[inline]
    pub fn conj_by_gen_inv(&self, e: Elem, s: usize) -> Elem {
        self.left_gen(self.mul_gen_inv(e, s), s)
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        // a = parent(a) · t, so a·b = parent(a) · (t·b)
        let mut cur = b;
        let mut e = a;
        while e.0 != 0 {
            let idx = e.index();
            cur = self.left_gen(cur, self.parent_gen[idx] as usize);
            e = Elem(self.parent[idx]);
        }
        cur
    }

    pub fn inv(&self, a: Elem) -> Elem {
        let mut cur = Elem::IDENTITY;
        let mut e = a;
        while e.0 != 0 {
            let idx = e.index();
            cur = self.mul_gen_inv(cur, self.parent_gen[idx] as usize);
            e = Elem(self.parent[idx]);
        }
        cur
    }

    pub fn pow(&self, a: Elem, n: i64) -> Elem {
        let mut base = if n < 0 { self.inv(a) } else { a };
        let mut e = n.unsigned_abs();
        let mut acc = Elem::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `g⁻¹ a g`.
    pub fn conj(&self, a: Elem, g: Elem) -> Elem {
        self.mul(self.inv(g), self.mul(a, g))
    }

    /// Value of a word in the generators.
    pub fn evaluate(&self, w: &Word) -> Elem {
        self.evaluate_from(Elem::IDENTITY, w)
    }

    /// `start · w`.
    pub fn evaluate_from(&self, start: Elem, w: &Word) -> Elem {
        w.letters().iter().fold(start, |e, &l| {
            if l.is_inverse() {
                self.mul_gen_inv(e, l.index())
            } else {
                self.mul_gen(e, l.index())
            }
        })
    }

    /// The tree parent and last generator of `e`'s defining word; `e` must not be the identity.
    pub fn tree_parent(&self, e: Elem) -> (Elem, usize) {
        (Elem(self.parent[e.index()]), self.parent_gen[e.index()] as usize)
    }

    pub fn word_len(&self, e: Elem) -> usize {
        self.word_len[e.index()] as usize
    }

    /// Defining word: a shortest positive word, read off the breadth-first tree.
    pub fn word(&self, e: Elem) -> Word {
        let mut letters = Vec::with_capacity(self.word_len(e));
        let mut cur = e;
        while cur.0 != 0 {
            letters.push(Letter::gen(self.parent_gen[cur.index()] as usize));
            cur = Elem(self.parent[cur.index()]);
        }
        letters.reverse();
        Word::new(letters)
    }

    pub fn word_string(&self, e: Elem) -> String {
        self.word(e).display(&self.names).to_string()
    }

    /// Element order (least `m ≥ 1` with `g^m = 1`).
    pub fn element_order(&self, g: Elem) -> u64 {
        self.orders.get().map(|o| o[g.index()]).unwrap_or_else(|| self.order_by_iteration(g))
    }

    fn order_by_iteration(&self, g: Elem) -> u64 {
        let mut m = 1;
        let mut cur = g;
        while cur.0 != 0 {
            cur = self.mul(g, cur);
            m += 1;
        }
        m
    }

    /// Orders of all elements, computed once.
    pub fn element_orders(&self) -> &[u64] {
        self.orders.get_or_init(|| self.elements().map(|g| self.order_by_iteration(g)).collect())
    }

    /// Conjugacy class label of every element (orbits under conjugation by generators).
    pub fn class_ids(&self) -> &[u32] {
        self.classes.get_or_init(|| {
            let mut label = vec![u32::MAX; self.n];
            let mut next = 0;
            let mut stack = Vec::new();
            for start in 0..self.n {
                if label[start] != u32::MAX {
                    continue;
                }
                label[start] = next;
                stack.push(Elem(start as u32));
                while let Some(e) = stack.pop() {
                    for s in 0..self.ngens {
                        let c = self.conj_by_gen(e, s);
                        if label[c.index()] == u32::MAX {
                            label[c.index()] = next;
                            stack.push(c);
                        }
                    }
                }
                next += 1;
            }
            label
        })
    }

    /// Regular permutation representation of the generators (right action on elements).
    pub fn permutations(&self) -> Vec<Perm> {
        (0..self.ngens)
            .map(|s| {
                let images = (0..self.n).map(|e| self.right[e * self.ngens + s] as usize).collect();
                Perm::from_images(images).expect("Cayley columns are bijective")
            })
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup").field("order", &self.n).field("generators", &self.names).finish()
    }
}
