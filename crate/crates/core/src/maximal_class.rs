//! Finite p-groups of maximal class `⟨s⟩ ⋉ A`, where `A` is the uniserial
//! quotient `Z[π]/(Φ_p(1+π), π^i)` of the ring of integers of the p-th
//! cyclotomic field and `s` acts as multiplication by `ζ = 1 + π`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::arith::is_prime;
use crate::group_engine::{cayley_elements, Elem, ElementSet, FiniteGroup, GroupElement, GroupError, Hom, Realized};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MaxClassError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("class parameter must be at least 2, got {0}")]
    DepthTooSmall(usize),
    #[error("p^{exponent} does not fit the coefficient arithmetic for p = {p}")]
    ModulusOverflow { p: u64, exponent: u32 },
    #[error("generator count mismatch: expected 2-generator source, got {0}")]
    NotTwoGenerator(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The ring `Z[π]/(Φ_p(1+π), π^i)`, stored as coefficient moduli.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicRing {
    p: u64,
    depth: usize,
    // modulus of the coefficient of π^m
    moduli: Vec<u64>,
    // π^(p-1) = Σ_m reduction[m] π^m
    reduction: Vec<u64>,
}

impl CyclotomicRing {
    pub fn new(p: u64, depth: usize) -> Result<Arc<Self>, MaxClassError> {
        if p < 3 || !is_prime(p) {
            return Err(MaxClassError::NotOddPrime(p));
        }
        if depth < 2 {
            return Err(MaxClassError::DepthTooSmall(depth));
        }
        let top = depth.div_ceil(p as usize - 1) as u32;
        let big = p
            .checked_pow(top)
            .filter(|&m| m < 1 << 31)
            .ok_or(MaxClassError::ModulusOverflow { p, exponent: top })?;
        let dim = depth.min(p as usize - 1);
        let moduli: Vec<u64> = (0..dim).map(|m| p.pow((depth - m).div_ceil(p as usize - 1) as u32)).collect();
        let reduction = (0..p as usize - 1)
            .map(|m| {
                let c = (binomial(p, m as u64 + 1) % big as u128) as u64;
                (big - c) % big
            })
            .collect();
        Ok(Arc::new(CyclotomicRing { p, depth, moduli, reduction }))
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// The exponent `i` with `A = Z[π]/(π^i)`.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Number of stored coefficients, `min(i, p - 1)`.
    pub fn dimension(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// `log_p |A|`.
    pub fn log_order(&self) -> usize {
        self.moduli.iter().map(|&m| log_p(m, self.p)).sum()
    }
}

fn log_p(mut m: u64, p: u64) -> usize {
    let mut e = 0;
    while m > 1 {
        m /= p;
        e += 1;
    }
    e
}

fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, j| acc * (n - j) as u128 / (j + 1) as u128)
}

/// An element `Σ c_m π^m` of a [`CyclotomicRing`].
#[derive(Clone)]
pub struct CyclotomicElt {
    ring: Arc<CyclotomicRing>,
    coeffs: Vec<u64>,
}

impl PartialEq for CyclotomicElt {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicElt {}

impl Hash for CyclotomicElt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CyclotomicElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

impl CyclotomicElt {
    pub fn zero(ring: &Arc<CyclotomicRing>) -> Self {
        CyclotomicElt { ring: ring.clone(), coeffs: vec![0; ring.dimension()] }
    }

    pub fn one(ring: &Arc<CyclotomicRing>) -> Self {
        Self::from_coeffs(ring, &[1])
    }

    /// Reduces integer coefficients of `1, π, π², …`; entries past the
    /// stored dimension must be zero modulo `π^i` or are rejected by omission.
    pub fn from_coeffs(ring: &Arc<CyclotomicRing>, coeffs: &[i64]) -> Self {
        let mut out = Self::zero(ring);
        for (m, &c) in coeffs.iter().enumerate().take(ring.dimension()) {
            let q = ring.moduli[m] as i64;
            out.coeffs[m] = c.rem_euclid(q) as u64;
        }
        out
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .zip(&self.ring.moduli)
            .map(|((a, b), q)| (a + b) % q)
            .collect();
        CyclotomicElt { ring: self.ring.clone(), coeffs }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().zip(&self.ring.moduli).map(|(a, q)| (q - a) % q).collect();
        CyclotomicElt { ring: self.ring.clone(), coeffs }
    }

    /// Multiplication by `π`.
    pub fn shift(&self) -> Self {
        let ring = &self.ring;
        let dim = ring.dimension();
        let mut raw = vec![0u64; dim];
        for m in 1..dim {
            raw[m] = self.coeffs[m - 1];
        }
        if dim == ring.p as usize - 1 {
            let top = self.coeffs[dim - 1];
            let big = ring.moduli[0];
            for (m, r) in raw.iter_mut().enumerate() {
                *r = (*r + top * ring.reduction[m] % big) % big;
            }
        }
        let coeffs = raw.iter().zip(&ring.moduli).map(|(c, q)| c % q).collect();
        CyclotomicElt { ring: ring.clone(), coeffs }
    }

    /// Multiplication by `ζ = 1 + π`.
    pub fn times_zeta(&self) -> Self {
        self.add(&self.shift())
    }

    pub fn times_zeta_pow(&self, e: u64) -> Self {
        (0..e % self.ring.p).fold(self.clone(), |acc, _| acc.times_zeta())
    }

    pub fn mul(&self, other: &Self) -> Self {
        // Horner in π over the coefficients of `other`
        let mut acc = Self::zero(&self.ring);
        for &c in other.coeffs.iter().rev() {
            acc = acc.shift().add(&self.scale(c));
        }
        acc
    }

    fn scale(&self, c: u64) -> Self {
        let coeffs = self.coeffs.iter().zip(&self.ring.moduli).map(|(a, q)| a * (c % q) % q).collect();
        CyclotomicElt { ring: self.ring.clone(), coeffs }
    }

    /// The π-adic valuation, `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        let p = self.ring.p;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| {
                let mut v = 0;
                let mut c = c;
                while c % p == 0 {
                    c /= p;
                    v += 1;
                }
                (p as usize - 1) * v + m
            })
            .min()
    }

    /// Order in the additive group.
    pub fn additive_order(&self) -> u64 {
        match self.valuation() {
            None => 1,
            Some(v) => self.ring.p.pow((self.ring.depth - v).div_ceil(self.ring.p as usize - 1) as u32),
        }
    }
}

/// An element `s^ε a` of `⟨s⟩ ⋉ A`, multiplied as
/// `(ε₁, a₁)(ε₂, a₂) = (ε₁ + ε₂, a₁ ζ^ε₂ + a₂)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MaxClassElt {
    pub exponent: u64,
    pub translation: CyclotomicElt,
}

impl fmt::Debug for MaxClassElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(s^{}, {:?})", self.exponent, self.translation)
    }
}

impl GroupElement for MaxClassElt {
    fn op(&self, rhs: &Self) -> Self {
        let p = self.translation.ring.p;
        MaxClassElt {
            exponent: (self.exponent + rhs.exponent) % p,
            translation: self.translation.times_zeta_pow(rhs.exponent).add(&rhs.translation),
        }
    }

    fn identity_like(&self) -> Self {
        MaxClassElt { exponent: 0, translation: CyclotomicElt::zero(&self.translation.ring) }
    }
}

/// The group `P = ⟨s⟩ ⋉ A` of order `p^(i+1)`, enumerated on the
/// generators `s = (1, 0)` and `s₁ = (0, 1)`.
pub struct MaxClassGroup {
    pub ring: Arc<CyclotomicRing>,
    pub realized: Realized<MaxClassElt>,
}

impl MaxClassGroup {
    pub fn construct(p: u64, depth: usize) -> Result<Self, MaxClassError> {
        let ring = CyclotomicRing::new(p, depth)?;
        let s = MaxClassElt { exponent: 1, translation: CyclotomicElt::zero(&ring) };
        let s1 = MaxClassElt { exponent: 0, translation: CyclotomicElt::one(&ring) };
        let names = ["s".to_string(), "s1".to_string()];
        let ceiling = p.pow(depth as u32 + 1) as usize + 1;
        let realized = cayley_elements(&[s, s1], &names, ceiling)?;
        Ok(MaxClassGroup { ring, realized })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.realized.group
    }

    pub fn s(&self) -> Elem {
        self.group().generator(0)
    }

    pub fn s1(&self) -> Elem {
        self.group().generator(1)
    }

    pub fn element(&self, e: Elem) -> &MaxClassElt {
        self.realized.element(e)
    }

    /// `P_j = {(0, a) : a ∈ π^(j-1) A}` for `j ≥ 1`; `P_0 = P`.
    pub fn layer(&self, j: usize) -> ElementSet {
        if j == 0 {
            return self.group().all();
        }
        self.realized.filter(|x| x.exponent == 0 && x.translation.valuation().is_none_or(|v| v + 1 >= j))
    }

    /// The layer order claimed for `P_j \ P_(j+1)`: `p^⌈(i+1-j)/(p-1)⌉`.
    pub fn expected_layer_order(&self, j: usize) -> u64 {
        let p = self.ring.p;
        p.pow((self.ring.depth + 1 - j).div_ceil(p as usize - 1) as u32)
    }

    pub fn verify_layer_orders(&self) -> LayerReport {
        let g = self.group();
        let p = self.ring.p;
        let orders = g.element_orders();
        let depth = self.ring.depth;
        let mut report = LayerReport::default();
        let mut layers: Vec<ElementSet> = (1..=depth + 1).map(|j| self.layer(j)).collect();
        let outside = g.all().difference(&layers[0]);
        report.outside_count = outside.len();
        for e in outside.iter() {
            if orders[e.index()] != p {
                report.failures.push(format!("{} outside P1 has order {}", g.word_string(e), orders[e.index()]));
            }
        }
        for j in 1..=depth {
            let expected = self.expected_layer_order(j);
            let shell = layers[j - 1].difference(&layers[j]);
            let mut exp = 1;
            for e in layers[j - 1].iter() {
                exp = exp.max(orders[e.index()]);
            }
            for e in shell.iter() {
                if orders[e.index()] != expected {
                    report.failures.push(format!(
                        "{} in P{} \\ P{} has order {}, expected {}",
                        g.word_string(e),
                        j,
                        j + 1,
                        orders[e.index()],
                        expected
                    ));
                }
            }
            if exp != expected {
                report.failures.push(format!("exp P{j} = {exp}, expected {expected}"));
            }
            report.layers.push(LayerSummary { index: j, size: layers[j - 1].len(), shell: shell.len(), exponent: exp });
        }
        layers.clear();
        report
    }

    /// Builds `ψ: H → P`, `u ↦ s⁻¹`, `v ↦ s·s₁`, checking the relators of `H`,
    /// surjectivity and that `γ_(i+1)(P) = 1`.
    pub fn psi_from(&self, h: &FiniteGroup) -> Result<PsiReport, MaxClassError> {
        if h.num_generators() != 2 {
            return Err(MaxClassError::NotTwoGenerator(h.num_generators()));
        }
        let g = self.group();
        let images = [g.inv(self.s()), g.mul(self.s(), self.s1())];
        let hom = Hom::from_images(h, g, &images)?;
        let lcs = g.lower_central_series();
        let class = lcs.len() - usize::from(lcs.last().is_some_and(|t| t.is_trivial()));
        let uv = h.mul(h.generator(0), h.generator(1));
        Ok(PsiReport {
            surjective: hom.is_surjective(),
            nilpotency_class: class,
            order_s1: g.element_order(self.s1()),
            order_uv: h.element_order(uv),
            image_uv: hom.apply(uv),
            hom,
        })
    }
}

#[derive(Debug, Clone)]
pub struct LayerSummary {
    pub index: usize,
    pub size: usize,
    pub shell: usize,
    pub exponent: u64,
}

#[derive(Debug, Clone, Default)]
pub struct LayerReport {
    pub outside_count: usize,
    pub layers: Vec<LayerSummary>,
    pub failures: Vec<String>,
}

impl LayerReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct PsiReport {
    pub hom: Hom,
    pub surjective: bool,
    /// Nilpotency class of `P`.
    pub nilpotency_class: usize,
    pub order_s1: u64,
    pub order_uv: u64,
    pub image_uv: Elem,
}

impl PsiReport {
    /// `o(uv) ≥ o(ψ(uv)) = o(s₁)`.
    pub fn bounds_order_uv(&self) -> bool {
        self.order_uv >= self.order_s1
    }
}
