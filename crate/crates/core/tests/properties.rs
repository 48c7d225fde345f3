use beauville_core::coset_enum::{enumerate, EnumerationLimits};
use beauville_core::fp_series::{nottingham_generators, random_series, TruncSeries};
use beauville_core::group_engine::{FiniteGroup, Hom};
use beauville_core::presentations::{
    expand_commutator, gamma_quotient_presentation, inversion_images, parse_presentation, Letter, Word,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn letters() -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0usize..3, any::<bool>()).prop_map(|(g, inv)| Letter::new(g, inv)), 0..24)
}

/// Free reduction by a stack, independent of `Word::new`.
fn stack_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for &l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn series(p: u32, m: usize) -> impl Strategy<Value = TruncSeries> {
    prop::collection::vec(0i64..p as i64, m - 1).prop_map(move |tail| {
        let mut c = vec![1i64];
        c.extend(tail);
        TruncSeries::from_coeffs(p, &c).unwrap()
    })
}

fn group_of(text: &str) -> FiniteGroup {
    let pres = parse_presentation(text).unwrap();
    let table = enumerate(&pres, EnumerationLimits::default()).unwrap();
    FiniteGroup::from_coset_table(&table, &pres).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn free_reduction_is_confluent(a in letters(), b in letters()) {
        let u = Word::new(a.clone());
        let v = Word::new(b.clone());
        let whole: Vec<Letter> = a.iter().chain(&b).copied().collect();
        let product = u.mul(&v);
        let expected = stack_reduce(&whole);
        prop_assert_eq!(product.letters(), expected.as_slice());
        let direct = Word::new(whole);
        prop_assert_eq!(direct.letters(), product.letters());
    }

    #[test]
    fn commutator_length_bound(ws in prop::collection::vec(letters(), 2..5)) {
        let words: Vec<Word> = ws.into_iter().map(Word::new).collect();
        let n = words.len();
        let inner = if n == 2 { words[0].clone() } else { expand_commutator(&words[..n - 1]).unwrap() };
        let full = expand_commutator(&words).unwrap();
        prop_assert!(full.len() <= 2 * inner.len() + 2 * words[n - 1].len());
    }

    #[test]
    fn inversion_is_an_involution(a in letters()) {
        let w = Word::new(a);
        prop_assert_eq!(inversion_images(&inversion_images(&w)), w.clone());
        prop_assert_eq!(inversion_images(&w).len(), w.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn series_group_axioms(
        (f, g, h) in (3u32..8).prop_filter("prime", |p| *p != 4 && *p != 6)
            .prop_flat_map(|p| prop_oneof![Just(6usize), Just(12usize)].prop_map(move |m| (p, m)))
            .prop_flat_map(|(p, m)| (series(p, m), series(p, m), series(p, m)))
    ) {
        let fg_h = f.compose(&g).unwrap().compose(&h).unwrap();
        let f_gh = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(fg_h, f_gh);
        let id = TruncSeries::identity(f.modulus(), f.precision()).unwrap();
        prop_assert_eq!(f.compose(&id).unwrap(), f.clone());
        prop_assert_eq!(f.compose(&f.inverse()).unwrap(), id.clone());
        prop_assert_eq!(f.inverse().compose(&f).unwrap(), id);
    }

    #[test]
    fn depth_inequalities(seed in any::<u64>(), p in prop_oneof![Just(3u32), Just(5), Just(7)]) {
        let m = 12;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_series(&mut rng, p, m);
        let g = random_series(&mut rng, p, m);
        let (df, dg) = (f.depth().at_least(m), g.depth().at_least(m));
        prop_assert!(f.compose(&g).unwrap().depth().at_least(m) >= df.min(dg));
        let c = f.commutator(&g).unwrap().depth().at_least(m);
        let strict = usize::from(df % p as usize == dg % p as usize);
        prop_assert!(c >= (df + dg + strict).min(m));
    }
}

#[test]
fn generators_have_order_p_up_to_degree_40() {
    for p in [3, 5, 7] {
        for m in 3..=40 {
            let (a, b) = nottingham_generators(p, m).unwrap();
            assert!(a.power(p as i64).is_identity(), "a, p={p}, M={m}");
            assert!(b.power(p as i64).is_identity(), "b, p={p}, M={m}");
        }
    }
}

#[test]
fn gamma_relators_hold_in_enumerated_groups() {
    for (p, c) in [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2)] {
        let pres = gamma_quotient_presentation(p, c).unwrap();
        let table = enumerate(&pres, EnumerationLimits::default()).unwrap();
        let g = FiniteGroup::from_coset_table(&table, &pres).unwrap();
        for r in pres.relators() {
            assert_eq!(g.evaluate(r), g.identity(), "p={p} c={c}");
        }
        assert!(table.is_consistent_with(&pres));
    }
}

#[test]
fn lower_class_quotient_is_an_image() {
    let big = {
        let pres = gamma_quotient_presentation(3, 3).unwrap();
        let table = enumerate(&pres, EnumerationLimits::default()).unwrap();
        FiniteGroup::from_coset_table(&table, &pres).unwrap()
    };
    let small = group_of("< x, y | x^3, y^3, [x,y] >");
    assert_eq!(small.order(), 9);
    let epi = Hom::from_images(&big, &small, &small.generators()).unwrap();
    assert!(epi.is_surjective());
    assert_eq!(epi.kernel().len(), 27);
}
