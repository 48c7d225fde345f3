use super::{is_beauville_structure, sigma_set, strongly_real_check, BeauvilleStructure};
use crate::group_engine::{automorphism_from_images, cayley_elements, Elem, FiniteGroup, GroupElement, GroupError, Realized};

/// An element `(a, b)` of `C_n × C_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZnPair {
    pub n: u32,
    pub a: u32,
    pub b: u32,
}

impl GroupElement for ZnPair {
    fn op(&self, rhs: &Self) -> Self {
        ZnPair { n: self.n, a: (self.a + rhs.a) % self.n, b: (self.b + rhs.b) % self.n }
    }

    fn identity_like(&self) -> Self {
        ZnPair { n: self.n, a: 0, b: 0 }
    }
}

/// `C_n × C_n` on the generators `(1, 0)` and `(0, 1)`.
pub fn cyclic_square(n: u32) -> Result<Realized<ZnPair>, GroupError> {
    let gens = [ZnPair { n, a: 1 % n, b: 0 }, ZnPair { n, a: 0, b: 1 % n }];
    cayley_elements(&gens, &["x".to_string(), "y".to_string()], (n as usize).pow(2) + 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbelianSearch {
    Found { structure: BeauvilleStructure, pairs: [(ZnPair, ZnPair); 2], strongly_real: bool },
    None,
}

/// Exhaustive search for a Beauville structure on `C_n × C_n`, scanning
/// generating pairs in element order and returning the first hit.
pub fn abelian_beauville_search(n: u32) -> Result<AbelianSearch, GroupError> {
    let realized = cyclic_square(n)?;
    let g = &realized.group;
    let elems: Vec<Elem> = g.elements().collect();
    let mut pairs = Vec::new();
    for &x in &elems {
        for &y in &elems {
            if g.generates(&[x, y]) {
                pairs.push(((x, y), sigma_set(g, x, y)));
            }
        }
    }
    for (i, (p1, s1)) in pairs.iter().enumerate() {
        for (p2, s2) in &pairs[i + 1..] {
            if s1.intersection(s2).len() == 1 {
                let structure = BeauvilleStructure { pair1: *p1, pair2: *p2 };
                debug_assert!(is_beauville_structure(g, &structure).holds());
                let strongly_real = inversion_is_real(g, &structure)?;
                let e = |x: Elem| *realized.element(x);
                return Ok(AbelianSearch::Found {
                    structure,
                    pairs: [(e(p1.0), e(p1.1)), (e(p2.0), e(p2.1))],
                    strongly_real,
                });
            }
        }
    }
    Ok(AbelianSearch::None)
}

fn inversion_is_real(g: &FiniteGroup, s: &BeauvilleStructure) -> Result<bool, GroupError> {
    let images: Vec<Elem> = g.generators().into_iter().map(|x| g.inv(x)).collect();
    let theta = automorphism_from_images(g, &images)?;
    Ok(strongly_real_check(g, s, &theta))
}
