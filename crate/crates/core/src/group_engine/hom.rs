use super::{Elem, ElementSet, FiniteGroup, GroupError};
use crate::presentations::{Presentation, Word};

/// Evaluates `w` in `target` with generator `i` sent to `images[i]`.
pub fn evaluate_with(target: &FiniteGroup, images: &[Elem], w: &Word) -> Elem {
    let inverses: Vec<Elem> = images.iter().map(|&g| target.inv(g)).collect();
    w.letters().iter().fold(Elem::IDENTITY, |acc, l| {
        let g = if l.is_inverse() { inverses[l.index()] } else { images[l.index()] };
        target.mul(acc, g)
    })
}

/// Checks that every relator of `pres` maps to the identity under the
/// assignment `generator i ↦ images[i]`, so the assignment extends to a
/// homomorphism from the presented group.
pub fn check_relators(pres: &Presentation, target: &FiniteGroup, images: &[Elem]) -> Result<(), GroupError> {
    if images.len() != pres.num_generators() {
        return Err(GroupError::ImageCount { expected: pres.num_generators(), got: images.len() });
    }
    for (index, r) in pres.relators().iter().enumerate() {
        if evaluate_with(target, images, r) != Elem::IDENTITY {
            return Err(GroupError::RelatorFails { index, relator: pres.word_to_string(r) });
        }
    }
    Ok(())
}

/// A homomorphism between two enumerated groups, stored as a full table.
#[derive(Clone, Debug)]
pub struct Hom {
    gen_images: Vec<Elem>,
    table: Vec<Elem>,
    image: ElementSet,
}

impl Hom {
    /// The homomorphism `source → target` sending generator `i` of `source`
    /// to `images[i]`, if it exists.
    pub fn from_images(source: &FiniteGroup, target: &FiniteGroup, images: &[Elem]) -> Result<Hom, GroupError> {
        if images.len() != source.num_generators() {
            return Err(GroupError::ImageCount { expected: source.num_generators(), got: images.len() });
        }
        if let Some(pres) = source.presentation() {
            check_relators(pres, target, images)?;
        }
        // Elements are numbered so that each one's tree parent comes first.
        let mut table = vec![Elem::IDENTITY; source.order()];
        for e in source.elements().skip(1) {
            let (parent, s) = source.tree_parent(e);
            table[e.index()] = target.mul(table[parent.index()], images[s]);
        }
        for e in source.elements() {
            for (s, &img) in images.iter().enumerate() {
                let lhs = table[source.mul_gen(e, s).index()];
                if lhs != target.mul(table[e.index()], img) {
                    return Err(GroupError::NotHomomorphism { element: e.index(), generator: s });
                }
            }
        }
        let image = ElementSet::from_elems(target.order(), table.iter().copied());
        Ok(Hom { gen_images: images.to_vec(), table, image })
    }

    pub fn apply(&self, e: Elem) -> Elem {
        self.table[e.index()]
    }

    pub fn generator_images(&self) -> &[Elem] {
        &self.gen_images
    }

    pub fn image(&self) -> &ElementSet {
        &self.image
    }

    pub fn is_surjective(&self) -> bool {
        self.image.len() == self.image.universe()
    }

    pub fn is_injective(&self) -> bool {
        self.image.len() == self.table.len()
    }

    pub fn kernel(&self) -> ElementSet {
        ElementSet::from_elems(
            self.table.len(),
            (0..self.table.len()).filter(|&i| self.table[i] == Elem::IDENTITY).map(|i| Elem(i as u32)),
        )
    }

    /// Image of an element set.
    pub fn apply_set(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_elems(self.image.universe(), set.iter().map(|e| self.apply(e)))
    }
}

/// The automorphism of `g` sending generator `i` to `images[i]`.
pub fn automorphism_from_images(g: &FiniteGroup, images: &[Elem]) -> Result<Hom, GroupError> {
    let hom = Hom::from_images(g, g, images)?;
    if !hom.is_surjective() {
        return Err(GroupError::NotBijective);
    }
    Ok(hom)
}
