use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use heckeposet::hecke::{characteristic_of_poset_module, check_twist, poset_module, poset_module_bar, Twist};
use heckeposet::io::{from_json, to_json};
use heckeposet::posets::random_poset;
use heckeposet::ppart::kp_fundamental;
use heckeposet::tableaux::{build_d, family_posets, tableau_character};
use heckeposet::verify::lower_subposet_coproduct;
use heckeposet::{compositions_of, Basis, Composition, Family, LabeledPoset, Permutation, QsymElement, TableauKind};

fn poset(n: usize, density: f64, seed: u64) -> LabeledPoset {
    random_poset(n, density, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn composition(max: usize) -> impl Strategy<Value = Composition> {
    prop::collection::vec(1..=3usize, 1..=max).prop_map(|v| Composition::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relations_hold_on_random_posets(n in 5..=6usize, d in 0.0..1.0f64, seed in any::<u64>()) {
        let p = poset(n, d, seed);
        prop_assert!(poset_module(&p).check_relations());
        prop_assert!(poset_module_bar(&p).check_relations());
    }

    #[test]
    fn characteristic_is_multiplicative(
        n1 in 1..=4usize, n2 in 1..=3usize, d in 0.0..1.0f64, s1 in any::<u64>(), s2 in any::<u64>()
    ) {
        let (a, b) = (poset(n1, d, s1), poset(n2, d, s2));
        let lhs = characteristic_of_poset_module(&a.disjoint_union(&b)).to_monomial();
        let rhs = characteristic_of_poset_module(&a).product(&characteristic_of_poset_module(&b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coproduct_splits_over_lower_subposets(d in 0.0..1.0f64, seed in any::<u64>()) {
        let p = poset(5, d, seed);
        prop_assert_eq!(kp_fundamental(&p).coproduct(), lower_subposet_coproduct(&p));
    }

    #[test]
    fn twists_intertwine_on_random_posets(d in 0.0..1.0f64, seed in any::<u64>()) {
        let p = poset(5, d, seed);
        for w in [Twist::Phi, Twist::Theta, Twist::Chi] {
            prop_assert_eq!(check_twist(&p, w), Ok(true));
        }
    }

    #[test]
    fn qsym_json_round_trips(terms in prop::collection::vec((composition(4), -20i64..20, 1i64..9), 0..6)) {
        let x = QsymElement::from_terms(
            Basis::Psi,
            terms.into_iter().map(|(a, p, q)| (a, heckeposet::qsym::frac(p, q))),
        );
        let back: QsymElement = from_json(&to_json(&x).unwrap()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn poset_json_round_trips(n in 1..=7usize, d in 0.0..1.0f64, seed in any::<u64>()) {
        let p = poset(n, d, seed);
        let back: LabeledPoset = from_json(&to_json(&p).unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn canonical_posets_of_diagrams_have_sink_reading_on_top(alpha in composition(3)) {
        let sink = Permutation::longest(alpha.size());
        let w0 = Permutation::w0_of(&alpha);
        prop_assume!(w0.leq_left(&sink));
        let d = build_d(&alpha, &sink).unwrap();
        prop_assert_eq!(d.len(), alpha.size());
        prop_assert_eq!(d.read_sink(), sink);
    }
}

#[test]
fn reversed_family_characters_are_involution_images() {
    for n in 1..=5 {
        for alpha in compositions_of(n) {
            let ch = |f: Family| {
                family_posets(f, &alpha)
                    .unwrap()
                    .iter()
                    .fold(QsymElement::zero(Basis::F), |acc, p| acc + kp_fundamental(p))
            };
            assert_eq!(ch(Family::Dimm), tableau_character(TableauKind::Sit, &alpha));
            assert_eq!(ch(Family::Rdimm), ch(Family::Dimm).invol_psi());
            assert_eq!(ch(Family::Qs), tableau_character(TableauKind::Srct, &alpha));
        }
    }
}
