use serde::{Deserialize, Serialize};

use super::pipeline::{build_quotient, exponent_bound, pair2_words, validate};
use super::{is_beauville_structure, strongly_real_check, BeauvilleError, BeauvilleStructure};
use crate::coset_enum::EnumerationLimits;
use crate::group_engine::{automorphism_from_images, Elem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// The re-checkable record of one verification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub p: u64,
    pub k: u32,
    pub i: usize,
    pub group_order: u64,
    pub exponent: u64,
    pub order_uv: u64,
    pub witness_w: String,
    pub witness_z: String,
    pub pair1: [String; 2],
    pub pair2: [String; 2],
    pub checks: Vec<CheckRecord>,
    pub version: String,
    pub wall_ms: u64,
}

impl Certificate {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, BeauvilleError> {
        serde_json::from_str(text).map_err(|e| BeauvilleError::Certificate(e.to_string()))
    }

    /// Rebuilds the group from `p` and `k` and re-checks the recorded data:
    /// order, exponent, `o(uv)`, the witnesses and both structure pairs.
    /// Returns the list of discrepancies.
    pub fn reverify(&self, limits: EnumerationLimits) -> Result<Vec<String>, BeauvilleError> {
        let i = validate(self.p, self.k)?;
        let mut problems = Vec::new();
        if i != self.i {
            problems.push(format!("i = {} but k(p-1)+1 = {i}", self.i));
        }
        let (pres, h) = build_quotient(self.p, self.k, i, limits)?;
        if h.order() as u64 != self.group_order {
            problems.push(format!("group order {} != recorded {}", h.order(), self.group_order));
        }
        if h.exponent() != self.exponent {
            problems.push(format!("exponent {} != recorded {}", h.exponent(), self.exponent));
        }
        let (u, v) = (h.generator(0), h.generator(1));
        let uv_order = h.element_order(h.mul(u, v));
        if uv_order != self.order_uv {
            problems.push(format!("o(uv) = {uv_order} != recorded {}", self.order_uv));
        }
        if self.order_uv != exponent_bound(self.p, i) {
            problems.push(format!("o(uv) = {} differs from p^ceil(i/(p-1))", self.order_uv));
        }
        let parse = |text: &str| pres.parse_word(text).map(|w| (h.evaluate(&w), w));
        let (w, w_word) = parse(&self.witness_w)?;
        let (z, z_word) = parse(&self.witness_z)?;
        let pair1 = (parse(&self.pair1[0])?.0, parse(&self.pair1[1])?.0);
        let pair2 = (parse(&self.pair2[0])?.0, parse(&self.pair2[1])?.0);
        if pair1 != (u, v) {
            problems.push("first pair is not (u, v)".to_string());
        }
        let (x2, y2) = pair2_words(&w_word, &z_word);
        if pair2 != (h.evaluate(&x2), h.evaluate(&y2)) {
            problems.push("second pair is not ((uw)^-1, vz)".to_string());
        }
        let p = self.p;
        let last = h.lower_central_series()[i - 1].elements.clone();
        for (name, t, s) in [("w", w, 0usize), ("z", z, 1usize)] {
            let ok = t != Elem::IDENTITY
                && last.contains(t)
                && h.is_central(t)
                && h.element_order(t) == p
                && !h.commutator_set(h.generator(s)).contains(t);
            if !ok {
                problems.push(format!("{name} is not a valid witness"));
            }
        }
        let structure = BeauvilleStructure { pair1, pair2 };
        if !is_beauville_structure(&h, &structure).holds() {
            problems.push("pairs do not form a Beauville structure".to_string());
        }
        let theta = automorphism_from_images(&h, &[h.inv(u), h.inv(v)])?;
        if !strongly_real_check(&h, &structure, &theta) {
            problems.push("structure is not strongly real under inversion".to_string());
        }
        Ok(problems)
    }
}
