//! Property suites over `N/N_M` that report one row per observation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_odd_prime, lcs_index, lower_central_filtration, nottingham_generators, SeriesError, TruncSeries};

/// One line of a suite report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteRow {
    pub index: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl SuiteRow {
    fn new(index: impl Into<String>, expected: impl ToString, observed: impl ToString, pass: bool) -> Self {
        SuiteRow { index: index.into(), expected: expected.to_string(), observed: observed.to_string(), pass }
    }
}

/// `a^p = b^p = 1`, `depth(a) = 1`, `depth(b) = 2` at every truncation `3..=precision`.
pub fn order_suite(p: u32, precision: usize) -> Result<Vec<SuiteRow>, SeriesError> {
    let mut rows = Vec::new();
    for m in 3..=precision {
        let (a, b) = nottingham_generators(p, m)?;
        for (name, g, depth) in [("a", &a, 1), ("b", &b, 2)] {
            let id = g.power(p as i64).is_identity();
            let d = g.depth().at_least(m);
            rows.push(SuiteRow::new(
                format!("M={m} {name}"),
                format!("{name}^{p} = 1, depth {depth}"),
                format!("{name}^{p} = 1: {id}, depth {d}"),
                id && d == depth,
            ));
        }
    }
    Ok(rows)
}

/// `γ_j(N/N_M)` against the depth filter `N_{r(j)}`, for all `j ≥ 2` with `r(j+1) ≤ M`.
pub fn lcs_suite(p: u32, precision: usize) -> Result<Vec<SuiteRow>, SeriesError> {
    let series = lower_central_filtration(p, precision)?;
    let mut rows = Vec::new();
    let mut j = 2;
    while lcs_index(j + 1, p)? <= precision {
        let r = lcs_index(j, p)?;
        let expected: Vec<usize> = (r..precision).collect();
        let observed = series.get(j - 1).map(|t| t.depths()).unwrap_or_default();
        rows.push(SuiteRow::new(
            format!("gamma_{j}"),
            format!("depths >= {r} ({} layers)", expected.len()),
            format!("depths {:?}", observed),
            observed == expected,
        ));
        j += 1;
    }
    Ok(rows)
}

/// A random element of `N/N_M` whose depth is drawn uniformly from `1..M`.
pub fn random_series(rng: &mut impl Rng, p: u32, precision: usize) -> TruncSeries {
    let depth = rng.gen_range(1..precision);
    let mut coeffs = vec![0u32; precision];
    coeffs[0] = 1;
    coeffs[depth] = rng.gen_range(1..p);
    for c in coeffs.iter_mut().skip(depth + 1) {
        *c = rng.gen_range(0..p);
    }
    TruncSeries::from_raw(p, coeffs)
}

/// Depth inequalities on random pairs: `depth(fg) ≥ min`, `depth([f,g]) ≥ d_f + d_g`,
/// and `≥ d_f + d_g + 1` when `d_f ≡ d_g (mod p)`. Depths are capped at `M`.
pub fn commutator_suite(p: u32, precision: usize, samples: usize, seed: u64) -> Result<Vec<SuiteRow>, SeriesError> {
    check_odd_prime(p as u64)?;
    if precision < 3 {
        return Err(SeriesError::PrecisionTooSmall { got: precision, min: 3 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(samples);
    for n in 0..samples {
        let f = random_series(&mut rng, p, precision);
        let g = random_series(&mut rng, p, precision);
        let (df, dg) = (f.depth().at_least(precision), g.depth().at_least(precision));
        let strict = df % p as usize == dg % p as usize;
        let bound = (df + dg + usize::from(strict)).min(precision);
        let observed = f.commutator(&g)?.depth().at_least(precision);
        let product = f.compose(&g)?.depth().at_least(precision);
        rows.push(SuiteRow::new(
            format!("{n}: d(f)={df} d(g)={dg}"),
            format!("d([f,g]) >= {bound}, d(fg) >= {}", df.min(dg)),
            format!("d([f,g]) = {observed}, d(fg) = {product}"),
            observed >= bound && product >= df.min(dg),
        ));
    }
    Ok(rows)
}
