//! Exhaustive checks of the intersection properties used to certify
//! Beauville structures in p-groups.

use crate::group_engine::{Elem, ElementSet, FiniteGroup, FrattiniQuotient, GroupError, Hom};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaReport {
    /// Number of hypotheses that were satisfied and tested.
    pub cases: usize,
    pub counterexamples: Vec<(Elem, Elem)>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn conjugate_unions(g: &FiniteGroup) -> Vec<ElementSet> {
    g.elements().map(|e| g.conjugate_union(&g.cyclic(e))).collect()
}

fn meets_trivially(a: &ElementSet, b: &ElementSet) -> bool {
    a.intersection(b).len() == 1
}

/// For every generating pair `(a, b)` with `o(a) = p`, the conjugates of
/// `⟨a⟩` and of `⟨b⟩` meet only in the identity.
pub fn check_intersection_one(g: &FiniteGroup) -> Result<LemmaReport, GroupError> {
    let frattini = FrattiniQuotient::new(g)?;
    let p = g.p_group_prime()?.unwrap_or(1);
    let unions = conjugate_unions(g);
    let orders = g.element_orders();
    let mut report = LemmaReport::default();
    for a in g.elements().filter(|a| orders[a.index()] == p) {
        for b in g.elements() {
            if !frattini.generates(&[a, b]) {
                continue;
            }
            report.cases += 1;
            if !meets_trivially(&unions[a.index()], &unions[b.index()]) {
                report.counterexamples.push((a, b));
            }
        }
    }
    Ok(report)
}

/// For `x ∉ Φ(G)` of order `p` and `t ∈ Φ(G)` outside `{[x, g]}`, the
/// conjugates of `⟨x⟩` and of `⟨xt⟩` meet only in the identity.
pub fn check_intersection_two(g: &FiniteGroup) -> Result<LemmaReport, GroupError> {
    let frattini = FrattiniQuotient::new(g)?;
    let p = g.p_group_prime()?.unwrap_or(1);
    let unions = conjugate_unions(g);
    let orders = g.element_orders();
    let mut report = LemmaReport::default();
    for x in g.elements().filter(|&x| orders[x.index()] == p && !frattini.in_frattini(x)) {
        let commutators = g.commutator_set(x);
        for t in frattini.frattini.elements.iter().filter(|&t| !commutators.contains(t)) {
            report.cases += 1;
            let xt = g.mul(x, t);
            if !meets_trivially(&unions[x.index()], &unions[xt.index()]) {
                report.counterexamples.push((x, t));
            }
        }
    }
    Ok(report)
}

/// Through `ψ: source → target`: whenever `o(x) = o(ψ(x))` and
/// `⟨ψ(x)⟩ ∩ ⟨ψ(y)⟩ = 1`, also `⟨x⟩ ∩ ⟨y⟩ = 1`.
///
/// Ranging over all pairs covers every conjugate `x^g`, `y^h`.
pub fn check_homomorphism_transfer(source: &FiniteGroup, target: &FiniteGroup, psi: &Hom) -> LemmaReport {
    let cyc_src: Vec<ElementSet> = source.elements().map(|e| source.cyclic(e)).collect();
    let cyc_tgt: Vec<ElementSet> = target.elements().map(|e| target.cyclic(e)).collect();
    let mut report = LemmaReport::default();
    for x in source.elements() {
        let px = psi.apply(x);
        if source.element_order(x) != target.element_order(px) {
            continue;
        }
        for y in source.elements() {
            let py = psi.apply(y);
            if !meets_trivially(&cyc_tgt[px.index()], &cyc_tgt[py.index()]) {
                continue;
            }
            report.cases += 1;
            if !meets_trivially(&cyc_src[x.index()], &cyc_src[y.index()]) {
                report.counterexamples.push((x, y));
            }
        }
    }
    report
}
