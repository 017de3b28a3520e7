mod common;

use common::*;
use mealy_groups::builtin::v26;
use mealy_groups::group::*;
use mealy_groups::machine::Letter;
use mealy_groups::recognizer::{recognize_dihedral, DihedralVerdict};
use proptest::prelude::*;

/// All words over `{p, q}` (as 0/1 indices) of length at most `max_len`.
fn pq_words(max_len: usize) -> Vec<Vec<usize>> {
    binary_words(max_len).into_iter().map(|w| w.into_iter().map(usize::from).collect()).collect()
}

fn to_gen_word(w: &[usize]) -> GeneratorWord {
    GeneratorWord::positive(w.iter().map(|&i| ["p", "q"][i]))
}

fn letters(w: &[u8]) -> Vec<Letter> {
    w.iter().map(|&b| Letter(b as usize)).collect()
}

#[test]
fn canonical_equality_matches_exhaustive_action() {
    let m = v26();
    let words = pq_words(6);
    let inputs = binary_words(12);
    let elements: Vec<CanonicalElement> =
        words.iter().map(|w| element_from_word(&m, &to_gen_word(w)).unwrap()).collect();
    // Signature of each word's action on every input of length ≤ 12, from the hand-written oracle.
    let signatures: Vec<Vec<Vec<u8>>> =
        words.iter().map(|w| inputs.iter().map(|x| v26_word_act(w, x)).collect()).collect();
    for i in 0..words.len() {
        for j in 0..words.len() {
            assert_eq!(
                elements_equal(&elements[i], &elements[j]),
                signatures[i] == signatures[j],
                "{:?} vs {:?}",
                words[i],
                words[j]
            );
        }
    }
}

#[test]
fn growth_is_linear() {
    let e = enumerate_elements(&v26(), 8).unwrap();
    let expected: Vec<usize> = (0..=8).map(|l| 2 * l + 1).collect();
    assert_eq!(e.growth.counts, expected);
    assert!(e.growth.counts.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn enumeration_independent_of_pool_size() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| enumerate_elements(&v26(), 5).unwrap())
    };
    let (one, four) = (run(1), run(4));
    assert_eq!(one.growth, four.growth);
    let words = |e: &Enumeration| e.elements.iter().map(|(_, w)| w.clone()).collect::<Vec<_>>();
    assert_eq!(words(&one), words(&four));
}

#[test]
fn inverses_cancel() {
    let m = v26();
    let gens = [Generator::new("p"), Generator::inv("p"), Generator::new("q"), Generator::inv("q")];
    let mut words = vec![GeneratorWord::empty()];
    for _ in 0..5 {
        let next: Vec<GeneratorWord> = words
            .iter()
            .filter(|w| w.len() == words.last().unwrap().len())
            .flat_map(|w| gens.iter().map(move |g| GeneratorWord(w.0.iter().cloned().chain([g.clone()]).collect())))
            .collect();
        words.extend(next);
    }
    for w in &words {
        let e = element_from_word(&m, w).unwrap();
        let e_inv = element_from_word(&m, &w.inverse()).unwrap();
        assert!(element_from_word(&m, &w.concat(&w.inverse())).unwrap().is_identity());
        assert!(e.mul(&e_inv).unwrap().is_identity());
        assert_eq!(e.inverse().unwrap(), e_inv);
    }
}

#[test]
fn order_results_are_exact() {
    let m = v26();
    for w in pq_words(5) {
        let gw = to_gen_word(&w);
        let e = element_from_word(&m, &gw).unwrap();
        if let Order::Finite(k) = order(&e, 16).unwrap() {
            assert!(element_from_word(&m, &gw.pow(k as usize)).unwrap().is_identity());
            for j in 1..k {
                assert!(!e.pow(j).is_identity());
            }
        }
    }
}

#[test]
fn pq_powers_are_distinct() {
    let m = v26();
    let pq = element_from_word(&m, &GeneratorWord::positive(["p", "q"])).unwrap();
    let powers: Vec<CanonicalElement> = (0..=24).map(|j| pq.pow(j)).collect();
    for i in 0..powers.len() {
        for j in i + 1..powers.len() {
            assert_ne!(powers[i], powers[j], "(pq)^{i} = (pq)^{j}");
        }
    }
}

#[test]
fn element_actions_match_oracle() {
    let m = v26();
    for w in pq_words(4) {
        let e = element_from_word(&m, &to_gen_word(&w)).unwrap();
        for x in binary_words(8) {
            let got: Vec<u8> = e.act_prefix(&letters(&x)).unwrap().iter().map(|l| l.0 as u8).collect();
            assert_eq!(got, v26_word_act(&w, &x));
        }
    }
}

fn certified() -> mealy_groups::recognizer::CertifiedDihedral {
    match recognize_dihedral(&v26(), "p", "q", 16).unwrap() {
        DihedralVerdict::Certified(c) => c,
        other => panic!("{other}"),
    }
}

proptest! {
    #[test]
    fn multiplication_associates(a in prop::collection::vec(0usize..2, 0..5),
                                 b in prop::collection::vec(0usize..2, 0..5),
                                 c in prop::collection::vec(0usize..2, 0..5)) {
        let m = v26();
        let el = |w: &[usize]| element_from_word(&m, &to_gen_word(w)).unwrap();
        let (x, y, z) = (el(&a), el(&b), el(&c));
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
    }

    #[test]
    fn coordinates_respect_products(u in prop::collection::vec(0usize..2, 0..8), v in prop::collection::vec(0usize..2, 0..8)) {
        let c = certified();
        let (wu, wv) = (to_gen_word(&u), to_gen_word(&v));
        let lhs = c.coordinates(&wu.concat(&wv)).unwrap();
        let rhs = c.coordinates(&wu).unwrap().mul(&c.coordinates(&wv).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
