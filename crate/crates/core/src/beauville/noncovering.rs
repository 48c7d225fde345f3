use super::pipeline::nottingham_quotient;
use super::{noncovering_check, BeauvilleError};
use crate::fp_series::SuiteRow;

fn row(index: &str, expected: impl ToString, observed: impl ToString, pass: bool) -> SuiteRow {
    SuiteRow { index: index.to_string(), expected: expected.to_string(), observed: observed.to_string(), pass }
}

/// Non-covering in `G = N/N_(kp+3)`: the commutators `[α, g]` meet the image
/// of `N_(kp+2)` only in the identity, so they miss part of `N_(kp+1)`.
/// Also reports `|C_G(α)|` as a diagnostic row.
pub fn nottingham_noncovering_suite(p: u64, k: u32, ceiling: usize) -> Result<Vec<SuiteRow>, BeauvilleError> {
    if k == 0 {
        return Err(BeauvilleError::ZeroK);
    }
    let m = k as usize * p as usize + 3;
    let realized = nottingham_quotient(p, m, ceiling)?;
    let g = &realized.group;
    let alpha = g.generator(0);
    let mut rows = Vec::new();
    let order = p.pow(m as u32 - 1);
    rows.push(row("|G|", order, g.order(), g.order() as u64 == order));
    let deep = realized.filter(|f| f.depth().at_least(m) >= m - 1);
    let middle = realized.filter(|f| f.depth().at_least(m) >= m - 2);
    let hits = g.commutator_set(alpha).intersection(&deep).len();
    rows.push(row(&format!("[a,G] meets N_{}", m - 1), 1, hits, hits == 1));
    let uncovered = noncovering_check(g, alpha, &middle);
    rows.push(row(
        &format!("N_{} uncovered by [a,G]", m - 2),
        "some element",
        uncovered.map_or("none".to_string(), |e| realized.element(e).to_string()),
        uncovered.is_some(),
    ));
    let centralizer = g.centralizer(alpha);
    rows.push(row("|C_G(a)|", "reported", centralizer.order(), true));
    Ok(rows)
}
