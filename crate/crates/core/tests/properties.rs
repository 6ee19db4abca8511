use std::collections::BTreeSet;

use geoconj::automata::{equivalent, minimal};
use geoconj::conjugates::alpha;
use geoconj::free_subsets::benois_saturate;
use geoconj::oracles::{alpha_oracle, random_nfa};
use geoconj::vfree::{Geometry, Rational, VfStructure, DEFAULT_BUDGET};
use geoconj::words::{conjugate_oracle, cyclic_reduce, free_reduce, invert};
use geoconj::{Alphabet, Cfg, Letter, Nfa, Word};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ab() -> Alphabet {
    Alphabet::new("ab").unwrap()
}

fn word_over(size: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..size, 0..=max_len)
        .prop_map(|v| Word::from_letters(v.into_iter().map(Letter::from_index).collect()))
}

fn nfa_from_seed(seed: u64, states: usize) -> Nfa {
    random_nfa(&mut ChaCha8Rng::seed_from_u64(seed), &ab(), states)
}

fn dinf() -> VfStructure {
    VfStructure::parse(include_str!("../data/dinf.vf")).unwrap()
}

fn swap() -> VfStructure {
    VfStructure::parse(include_str!("../data/swap.vf")).unwrap()
}

proptest! {
    #[test]
    fn reduction_is_idempotent_and_cancels_inverses(w in word_over(4, 12)) {
        let r = free_reduce(&w);
        prop_assert!(r.is_reduced());
        prop_assert_eq!(free_reduce(&r), r.clone());
        prop_assert!(free_reduce(&w.concat(&invert(&w))).is_empty());
    }

    #[test]
    fn cyclic_reduction_recomposes(w in word_over(4, 12)) {
        let (conj, core) = cyclic_reduce(&w);
        let back: Word = invert(&conj).concat(&core).concat(&conj);
        prop_assert_eq!(free_reduce(&back), free_reduce(&w));
        prop_assert!(conjugate_oracle(&w, &core));
    }

    #[test]
    fn minimal_automaton_is_equivalent(seed in any::<u64>(), states in 1usize..5) {
        let n = nfa_from_seed(seed, states);
        let m = minimal(&n);
        prop_assert!(equivalent(&n, &m).unwrap());
        prop_assert_eq!(n.enumerate(6), m.enumerate(6));
    }

    #[test]
    fn automaton_text_round_trips(seed in any::<u64>(), states in 1usize..5) {
        let n = nfa_from_seed(seed, states);
        let back = Nfa::parse(&n.to_text()).unwrap();
        prop_assert_eq!(back.enumerate(6), n.enumerate(6));
    }

    #[test]
    fn saturation_is_sound_reduced_and_idempotent(seed in any::<u64>(), states in 1usize..5) {
        let n = nfa_from_seed(seed, states);
        let sat = benois_saturate(&n);
        for u in n.enumerate(6) {
            prop_assert!(sat.accepts(&free_reduce(&u)));
        }
        let words = sat.enumerate(6);
        prop_assert!(words.iter().all(|w| w.is_reduced()));
        prop_assert_eq!(benois_saturate(&sat).enumerate(6), words);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn alpha_contains_short_conjugates(k_seed in any::<u64>(), l_seed in any::<u64>()) {
        let (k, l) = (nfa_from_seed(k_seed, 2), nfa_from_seed(l_seed, 2));
        let g = alpha(&k, &l).unwrap().grammar.to_cnf();
        for w in alpha_oracle(&k, &l, 3, 3) {
            prop_assert!(g.accepts(&w), "missing {}", ab().render(&w));
        }
    }

    #[test]
    fn alpha_words_are_reduced_and_round_trip(k_seed in any::<u64>(), l_seed in any::<u64>()) {
        let (k, l) = (nfa_from_seed(k_seed, 2), nfa_from_seed(l_seed, 2));
        let g = alpha(&k, &l).unwrap().grammar;
        let words = g.enumerate(6);
        prop_assert!(words.iter().all(|w| w.is_reduced()));
        let back = Cfg::parse(&g.to_text()).unwrap();
        prop_assert_eq!(back.enumerate(6), words);
    }
}

proptest! {
    #[test]
    fn group_laws_hold(u in word_over(4, 6), v in word_over(4, 6), w in word_over(4, 6)) {
        for s in [dinf(), swap()] {
            let (x, y, z) = (s.normal_form(&u).unwrap(), s.normal_form(&v).unwrap(), s.normal_form(&w).unwrap());
            prop_assert_eq!(s.mul(&s.mul(&x, &y), &z), s.mul(&x, &s.mul(&y, &z)));
            prop_assert_eq!(s.mul(&x, &s.inverse(&x)), s.identity());
            prop_assert_eq!(s.normal_form(&u.concat(&v)).unwrap(), s.mul(&x, &y));
            let nf = s.nf_word(&x);
            prop_assert_eq!(s.normal_form(&nf).unwrap(), x);
            prop_assert!(nf.len() <= s.constant_c() * u.len());
        }
    }

    #[test]
    fn metric_axioms(u in word_over(4, 5), v in word_over(4, 5)) {
        let s = swap();
        let geo = Geometry::standard(&s, DEFAULT_BUDGET);
        let (g, h) = (geo.eval(&u).unwrap(), geo.eval(&v).unwrap());
        let one = s.identity();
        prop_assert_eq!(geo.distance(&g, &h).unwrap(), geo.distance(&h, &g).unwrap());
        prop_assert!(geo.distance(&g, &h).unwrap() <= geo.length_of(&g).unwrap() + geo.length_of(&h).unwrap());
        prop_assert!(geo.length_of(&g).unwrap() <= u.len());
        let p = geo.gromov_product(&g, &h, &one).unwrap();
        let bound = geo.length_of(&g).unwrap().min(geo.length_of(&h).unwrap()) as i64;
        prop_assert!(p >= Rational::from_integer(0) && p <= Rational::from_integer(bound));
        let rep = geo.rep_of(&g).unwrap();
        prop_assert!(geo.is_geodesic(&rep).unwrap());
        prop_assert!(geo.quasigeodesic_check(&rep, Rational::from_integer(1), Rational::from_integer(0)).unwrap());
    }
}

#[test]
fn geodesics_of_an_element_all_evaluate_to_it() {
    let s = dinf();
    let geo = Geometry::standard(&s, DEFAULT_BUDGET);
    for (g, len, _) in geo.ball(4).unwrap() {
        let words: BTreeSet<Word> = geo.geodesics_of(&g).unwrap().into_iter().collect();
        assert!(!words.is_empty());
        for w in words {
            assert_eq!(w.len(), len);
            assert_eq!(geo.eval(&w).unwrap(), g);
        }
    }
}
