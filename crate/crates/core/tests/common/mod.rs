//! Oracles shared by the integration tests. Nothing here calls the
//! library's action, composition, or minimization code.
#![allow(dead_code)]

use mealy_groups::machine::{MachineDraft, MealyMachine};
use rand::seq::SliceRandom;
use rand::Rng;

/// V26 transcribed by hand: state `p` is 0, `q` is 1.
pub fn v26_step(state: usize, letter: u8) -> (usize, u8) {
    match (state, letter) {
        (0, 0) => (1, 0),
        (0, 1) => (0, 1),
        (1, 0) => (0, 1),
        (1, 1) => (0, 0),
        _ => unreachable!(),
    }
}

/// Applies V26 from `state` letter by letter.
pub fn v26_act(state: usize, word: &[u8]) -> (Vec<u8>, usize) {
    let mut q = state;
    let out = word
        .iter()
        .map(|&a| {
            let (next, b) = v26_step(q, a);
            q = next;
            b
        })
        .collect();
    (out, q)
}

/// Applies a generator word over `p = 0`, `q = 1` by repeated single-state
/// runs. Both generators are involutions, so inverse letters are ignored.
pub fn v26_word_act(gens: &[usize], word: &[u8]) -> Vec<u8> {
    gens.iter().fold(word.to_vec(), |w, &g| v26_act(g, &w).0)
}

/// Single-step simulator over the raw draft tables.
pub fn draft_act(draft: &MachineDraft, state: usize, word: &[usize]) -> (Vec<usize>, usize) {
    let mut q = state;
    let mut out = Vec::with_capacity(word.len());
    for &a in word {
        out.push(draft.outputs[q][a].unwrap());
        q = draft.transitions[q][a].unwrap();
    }
    (out, q)
}

/// Every binary word of length at most `max_len`, shortest first.
pub fn binary_words(max_len: usize) -> Vec<Vec<u8>> {
    (0..=max_len)
        .flat_map(|len| {
            (0..1u32 << len).map(move |code| (0..len).map(|i| ((code >> (len - 1 - i)) & 1) as u8).collect())
        })
        .collect()
}

/// A random machine over `{0, 1}` whose output rows are permutations.
pub fn random_invertible(rng: &mut impl Rng, states: usize) -> MealyMachine {
    let mut outputs = Vec::new();
    let mut transitions = Vec::new();
    for _ in 0..states {
        let mut perm = vec![0usize, 1];
        perm.shuffle(rng);
        outputs.push(perm.into_iter().map(Some).collect());
        transitions.push((0..2).map(|_| Some(rng.gen_range(0..states))).collect());
    }
    MealyMachine::from_draft(MachineDraft {
        name: "random".into(),
        alphabet: vec!["0".into(), "1".into()],
        states: (0..states).map(|i| format!("s{i}")).collect(),
        transitions,
        outputs,
    })
    .unwrap()
}

/// Any random machine over `{0, 1}`, invertible or not.
pub fn random_machine(rng: &mut impl Rng, states: usize) -> MealyMachine {
    MealyMachine::from_draft(MachineDraft {
        name: "random".into(),
        alphabet: vec!["0".into(), "1".into()],
        states: (0..states).map(|i| format!("s{i}")).collect(),
        transitions: (0..states).map(|_| (0..2).map(|_| Some(rng.gen_range(0..states))).collect()).collect(),
        outputs: (0..states).map(|_| (0..2).map(|_| Some(rng.gen_range(0..2))).collect()).collect(),
    })
    .unwrap()
}
