use std::time::Instant;

use super::{
    is_beauville_structure, noncovering_check, strongly_real_check, witness_search, BeauvilleError,
    BeauvilleStructure, Certificate, CheckRecord, StructureVerdict, Witnesses,
};
use crate::arith::is_prime;
use crate::coset_enum::{enumerate, EnumerationLimits};
use crate::fp_series::{nottingham_generators, TruncSeries};
use crate::group_engine::{
    automorphism_from_images, cayley_elements, CharacteristicKind, Elem, ElementSet, FiniteGroup, Hom, Realized,
};
use crate::maximal_class::{MaxClassGroup, PsiReport};
use crate::presentations::{gamma_quotient_presentation, Presentation, Word};

/// `N/N_m` realized on the images of the standard generators `a`, `b`.
pub fn nottingham_quotient(p: u64, m: usize, ceiling: usize) -> Result<Realized<TruncSeries>, BeauvilleError> {
    let (a, b) = nottingham_generators(p as u32, m)?;
    Ok(cayley_elements(&[a, b], &["a".to_string(), "b".to_string()], ceiling)?)
}

/// Every intermediate object of one verification run, for inspection.
pub struct Pipeline {
    pub p: u64,
    pub k: u32,
    pub i: usize,
    pub presentation: Presentation,
    pub h: FiniteGroup,
    pub last_term: ElementSet,
    pub nottingham: Realized<TruncSeries>,
    pub nottingham_hom: Option<Hom>,
    pub maximal_class: MaxClassGroup,
    pub maximal_class_hom: Option<PsiReport>,
    pub witnesses: Option<Witnesses>,
    pub structure: Option<BeauvilleStructure>,
    pub theta: Option<Hom>,
    pub certificate: Certificate,
}

/// `p^⌈i/(p-1)⌉`, the exponent of the class-`i` quotient.
pub(crate) fn exponent_bound(p: u64, i: usize) -> u64 {
    p.pow(i.div_ceil(p as usize - 1) as u32)
}

pub(crate) fn validate(p: u64, k: u32) -> Result<usize, BeauvilleError> {
    if p < 3 || p > u32::MAX as u64 || !is_prime(p) {
        return Err(BeauvilleError::NotOddPrime(p));
    }
    if k == 0 {
        return Err(BeauvilleError::ZeroK);
    }
    Ok(k as usize * (p as usize - 1) + 1)
}

/// Builds `F/γ_(i+1)(F)` for `F = C_p * C_p`.
pub(crate) fn build_quotient(
    p: u64,
    k: u32,
    i: usize,
    limits: EnumerationLimits,
) -> Result<(Presentation, FiniteGroup), BeauvilleError> {
    // ψ maps onto N/N_(kp+3), which has order p^(kp+2)
    let log_bound = k as u64 * p + 2;
    let too_big = u32::try_from(log_bound)
        .ok()
        .and_then(|e| p.checked_pow(e))
        .is_none_or(|n| n > limits.max_cosets as u64);
    if too_big {
        return Err(BeauvilleError::ExceedsLimit { lower_bound: format!("{p}^{log_bound}"), limit: limits.max_cosets });
    }
    let presentation = gamma_quotient_presentation(p as u32, i)?;
    let table = enumerate(&presentation, limits)?;
    let h = FiniteGroup::from_coset_table(&table, &presentation)?;
    Ok((presentation, h))
}

pub(crate) fn pair2_words(w: &Word, z: &Word) -> (Word, Word) {
    let u = Word::generator(0);
    let v = Word::generator(1);
    (u.mul(w).inverse(), v.mul(z))
}

/// Runs every stage and returns the certificate; failing checks are
/// recorded in the certificate, only resource and input errors are `Err`.
pub fn verify_main_theorem(p: u64, k: u32, limits: EnumerationLimits) -> Result<Certificate, BeauvilleError> {
    Ok(Pipeline::run(p, k, limits)?.certificate)
}

impl Pipeline {
    pub fn run(p: u64, k: u32, limits: EnumerationLimits) -> Result<Pipeline, BeauvilleError> {
        let start = Instant::now();
        let i = validate(p, k)?;
        let (presentation, h) = build_quotient(p, k, i, limits)?;
        let mut checks = Vec::new();
        let mut record = |name: &str, pass: bool, detail: String| {
            checks.push(CheckRecord { name: name.to_string(), pass, detail });
        };
        let (u, v) = (h.generator(0), h.generator(1));

        let failing: Vec<usize> = (0..presentation.relators().len())
            .filter(|&r| h.evaluate(&presentation.relators()[r]) != Elem::IDENTITY)
            .collect();
        record(
            "relators",
            failing.is_empty(),
            format!("{} relators, {} failing", presentation.relators().len(), failing.len()),
        );

        let lcs = h.lower_central_series();
        let sizes: Vec<String> = lcs.iter().map(|t| t.order().to_string()).collect();
        let class_ok = lcs.len() == i + 1 && lcs[i].is_trivial() && !lcs[i - 1].is_trivial();
        let last_term = if lcs.len() >= i { lcs[i - 1].elements.clone() } else { h.trivial() };
        let central = last_term.iter().all(|t| h.is_central(t));
        record(
            "lower_central_series",
            class_ok && central,
            format!("term orders {}; last term central: {central}", sizes.join(" > ")),
        );

        // N/N_(kp+3)
        let m = k as usize * p as usize + 3;
        let nottingham = nottingham_quotient(p, m, limits.max_cosets)?;
        let g = &nottingham.group;
        let nottingham_hom = match Hom::from_images(&h, g, &g.generators()) {
            Ok(hom) => {
                let onto = hom.is_surjective();
                record(
                    "nottingham_epimorphism",
                    onto,
                    format!("|<a,b>| in N/N_{m} = {}, |H| = {}, surjective: {onto}", g.order(), h.order()),
                );
                Some(hom)
            }
            Err(e) => {
                record("nottingham_epimorphism", false, e.to_string());
                None
            }
        };

        let alpha = g.generator(0);
        let deep = nottingham.filter(|f| f.depth().at_least(m) >= m - 1);
        let middle = nottingham.filter(|f| f.depth().at_least(m) >= m - 2);
        let hits = g.commutator_set(alpha).intersection(&deep).len();
        let uncovered = noncovering_check(g, alpha, &middle);
        record(
            "nottingham_noncovering",
            hits == 1 && uncovered.is_some(),
            format!(
                "commutators of a meet N_{} in {hits} element(s); N_{} uncovered witness: {}",
                m - 1,
                m - 2,
                uncovered.map_or("none".to_string(), |e| g.word_string(e))
            ),
        );

        let witnesses = match witness_search(&h, &last_term) {
            Ok(wz) => {
                record(
                    "witnesses",
                    true,
                    format!(
                        "w = {}, z = {}: central of order {p} in the last lower central term",
                        h.word_string(wz.w),
                        h.word_string(wz.z)
                    ),
                );
                Some(wz)
            }
            Err(e) => {
                record("witnesses", false, e.to_string());
                None
            }
        };

        let structure = witnesses.map(|wz| BeauvilleStructure {
            pair1: (u, v),
            pair2: (h.inv(h.mul(u, wz.w)), h.mul(v, wz.z)),
        });
        match &structure {
            Some(s) => {
                let verdict = is_beauville_structure(&h, s);
                let detail = match &verdict {
                    StructureVerdict::Beauville => "Sigma sets meet trivially".to_string(),
                    StructureVerdict::NotGenerating(n) => format!("pair {n} does not generate"),
                    StructureVerdict::SharedElement(e) => format!("shared element {}", h.word_string(*e)),
                };
                record("beauville_structure", verdict.holds(), detail);
            }
            None => record("beauville_structure", false, "no witnesses".to_string()),
        }

        let theta = match automorphism_from_images(&h, &[h.inv(u), h.inv(v)]) {
            Ok(theta) => {
                let involution = h.elements().all(|e| theta.apply(theta.apply(e)) == e);
                record("inversion_automorphism", involution, format!("involution: {involution}"));
                let inverts = last_term.iter().all(|t| theta.apply(t) == h.inv(t));
                record(
                    "inversion_on_last_term",
                    inverts,
                    format!("inverts all {} elements: {inverts}", last_term.len()),
                );
                Some(theta)
            }
            Err(e) => {
                record("inversion_automorphism", false, e.to_string());
                record("inversion_on_last_term", false, "no automorphism".to_string());
                None
            }
        };

        match (&structure, &theta) {
            (Some(s), Some(t)) => {
                let real = strongly_real_check(&h, s, t);
                record("strongly_real", real, format!("theta inverts all four structure elements: {real}"));
            }
            _ => record("strongly_real", false, "missing structure or automorphism".to_string()),
        }

        let maximal_class = MaxClassGroup::construct(p, i)?;
        let maximal_class_hom = match maximal_class.psi_from(&h) {
            Ok(report) => {
                let pass = report.surjective && report.nilpotency_class == i && report.bounds_order_uv();
                record(
                    "maximal_class_epimorphism",
                    pass,
                    format!(
                        "u -> s^-1, v -> s s1 with (e1,a1)(e2,a2) = (e1+e2, a1 zeta^e2 + a2); |P| = {}, class {}, \
                         surjective: {}, o(s1) = {}, o(uv) = {}",
                        maximal_class.group().order(),
                        report.nilpotency_class,
                        report.surjective,
                        report.order_s1,
                        report.order_uv
                    ),
                );
                Some(report)
            }
            Err(e) => {
                record("maximal_class_epimorphism", false, e.to_string());
                None
            }
        };

        let bound = exponent_bound(p, i);
        let exponent = h.exponent();
        let order_uv = h.element_order(h.mul(u, v));
        record("exponent", exponent == bound, format!("exp H = {exponent}, p^ceil(i/(p-1)) = {bound}"));
        record("order_uv", order_uv == bound, format!("o(uv) = {order_uv}, p^ceil(i/(p-1)) = {bound}"));
        let omega = h.characteristic_subgroup(CharacteristicKind::Omega(1))?;
        let omega_exp = omega.elements.iter().map(|e| h.element_order(e)).max().unwrap_or(1);
        record(
            "omega1_exponent",
            omega_exp <= bound,
            format!("|Omega_1(H)| = {}, exp = {omega_exp}, bound {bound}", omega.order()),
        );

        let (witness_w, witness_z, pair2) = match witnesses {
            Some(wz) => {
                let (x2, y2) = pair2_words(&h.word(wz.w), &h.word(wz.z));
                (
                    h.word_string(wz.w),
                    h.word_string(wz.z),
                    [presentation.word_to_string(&x2), presentation.word_to_string(&y2)],
                )
            }
            None => (String::new(), String::new(), [String::new(), String::new()]),
        };
        let names = presentation.generator_names();
        let certificate = Certificate {
            p,
            k,
            i,
            group_order: h.order() as u64,
            exponent,
            order_uv,
            witness_w,
            witness_z,
            pair1: [names[0].clone(), names[1].clone()],
            pair2,
            checks,
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_ms: start.elapsed().as_millis() as u64,
        };
        Ok(Pipeline {
            p,
            k,
            i,
            presentation,
            h,
            last_term,
            nottingham,
            nottingham_hom,
            maximal_class,
            maximal_class_hom,
            witnesses,
            structure,
            theta,
            certificate,
        })
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// `F/γ_4(F)` for `p = 3`.
    pub(crate) fn small_h() -> FiniteGroup {
        let pres = gamma_quotient_presentation(3, 3).unwrap();
        let table = enumerate(&pres, EnumerationLimits::default()).unwrap();
        FiniteGroup::from_coset_table(&table, &pres).unwrap()
    }

    #[test]
    fn rejects_bad_input() {
        let limits = EnumerationLimits::default();
        assert!(matches!(verify_main_theorem(4, 1, limits), Err(BeauvilleError::NotOddPrime(4))));
        assert!(matches!(verify_main_theorem(2, 1, limits), Err(BeauvilleError::NotOddPrime(2))));
        assert!(matches!(verify_main_theorem(3, 0, limits), Err(BeauvilleError::ZeroK)));
    }

    #[test]
    fn large_k_hits_the_limit_before_enumerating() {
        let err = verify_main_theorem(3, 9, EnumerationLimits::default()).unwrap_err();
        assert!(err.is_resource_limit(), "{err}");
    }

    #[test]
    fn exponent_bound_values() {
        assert_eq!(exponent_bound(3, 3), 9);
        assert_eq!(exponent_bound(3, 5), 27);
        assert_eq!(exponent_bound(5, 5), 25);
        assert_eq!(exponent_bound(5, 4), 5);
    }
}
