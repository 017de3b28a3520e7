//! Elements of the group generated by the states of an invertible machine.
//!
//! Every element is kept in canonical form: the reduced pointed machine
//! produced by [`minimize`]. Two elements are equal exactly when their
//! canonical tables coincide, so equality, identity tests, and
//! deduplication are all exact.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use rayon::prelude::*;

use crate::error::MachineError;
use crate::machine::{compose, invert, minimize, Alphabet, Letter, MealyMachine, PointedMachine, StateId, WordAction};

/// One letter of a generator word: a state or its formal inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub state: String,
    pub inverse: bool,
}

impl Generator {
    pub fn new(state: impl Into<String>) -> Self {
        Generator { state: state.into(), inverse: false }
    }

    pub fn inv(state: impl Into<String>) -> Self {
        Generator { state: state.into(), inverse: true }
    }

    pub fn inverted(&self) -> Self {
        Generator { state: self.state.clone(), inverse: !self.inverse }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.state)?;
        if self.inverse {
            f.write_str("'")?;
        }
        Ok(())
    }
}

/// A word over machine states and their inverses, read left to right:
/// `p q` acts as `p` first, then `q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorWord(pub Vec<Generator>);

impl GeneratorWord {
    pub fn empty() -> Self {
        GeneratorWord(Vec::new())
    }

    /// A word with no inverse letters.
    pub fn positive<I, S>(states: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        GeneratorWord(states.into_iter().map(Generator::new).collect())
    }

    /// Parses `p q p'`. When every state of `machine` has a one-character
    /// name, separators may be omitted (`pqp'`).
    pub fn parse(text: &str, machine: &MealyMachine) -> Result<Self, MachineError> {
        let single_char = machine.states().all(|q| machine.state_name(q).chars().count() == 1);
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if machine.state(token.trim_end_matches('\'')).is_ok() || !single_char {
                letters.push(parse_letter(token, machine)?);
                continue;
            }
            let mut chars = token.chars().peekable();
            while let Some(c) = chars.next() {
                let mut t = c.to_string();
                while chars.peek() == Some(&'\'') {
                    t.push(chars.next().unwrap());
                }
                letters.push(parse_letter(&t, machine)?);
            }
        }
        Ok(GeneratorWord(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn concat(&self, other: &GeneratorWord) -> GeneratorWord {
        GeneratorWord(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// Formal inverse: reversed, each letter inverted.
    pub fn inverse(&self) -> GeneratorWord {
        GeneratorWord(self.0.iter().rev().map(Generator::inverted).collect())
    }

    pub fn pow(&self, n: usize) -> GeneratorWord {
        GeneratorWord(self.0.iter().cloned().cycle().take(self.0.len() * n).collect())
    }
}

fn parse_letter(token: &str, machine: &MealyMachine) -> Result<Generator, MachineError> {
    let base = token.trim_end_matches('\'');
    let primes = token.len() - base.len();
    machine.state(base)?;
    Ok(Generator { state: base.to_owned(), inverse: primes % 2 == 1 })
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// A group element in canonical (reduced, breadth-first numbered) form.
#[derive(Clone, Debug)]
pub struct CanonicalElement {
    pointed: PointedMachine,
    is_identity: bool,
}

impl CanonicalElement {
    /// Canonicalizes an arbitrary pointed machine.
    pub fn from_pointed(pointed: &PointedMachine) -> Self {
        let reduced = minimize(pointed).pointed;
        let m = reduced.machine();
        let is_identity = m.num_states() == 1 && m.output_row(StateId(0)).iter().enumerate().all(|(i, l)| l.0 == i);
        CanonicalElement { pointed: reduced, is_identity }
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        let m = MealyMachine::identity(alphabet);
        CanonicalElement::from_pointed(&PointedMachine::new(m, StateId(0)).expect("one state"))
    }

    pub fn is_identity(&self) -> bool {
        self.is_identity
    }

    pub fn pointed(&self) -> &PointedMachine {
        &self.pointed
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.pointed.alphabet()
    }

    pub fn num_states(&self) -> usize {
        self.pointed.machine().num_states()
    }

    /// `self` followed by `other`.
    pub fn mul(&self, other: &CanonicalElement) -> Result<CanonicalElement, MachineError> {
        if self.is_identity && self.alphabet() == other.alphabet() {
            return Ok(other.clone());
        }
        if other.is_identity && self.alphabet() == other.alphabet() {
            return Ok(self.clone());
        }
        Ok(CanonicalElement::from_pointed(&compose(&self.pointed, &other.pointed)?))
    }

    pub fn inverse(&self) -> Result<CanonicalElement, MachineError> {
        let inv = invert(self.pointed.machine())?;
        Ok(CanonicalElement::from_pointed(&PointedMachine::new(inv, self.pointed.initial())?))
    }

    /// `self` composed with itself `n` times, reducing after every step.
    pub fn pow(&self, n: u64) -> CanonicalElement {
        let mut acc = CanonicalElement::identity(self.alphabet().clone());
        for _ in 0..n {
            acc = acc.mul(self).expect("same alphabet");
        }
        acc
    }

    pub fn act_word(&self, word: &[Letter]) -> Result<WordAction, MachineError> {
        self.pointed.act_word(word)
    }

    pub fn act_prefix(&self, word: &[Letter]) -> Result<Vec<Letter>, MachineError> {
        self.pointed.act_prefix(word)
    }
}

impl PartialEq for CanonicalElement {
    fn eq(&self, other: &Self) -> bool {
        crate::machine::same_tables(self.pointed.machine(), other.pointed.machine())
    }
}

impl Eq for CanonicalElement {}

impl Hash for CanonicalElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let m = self.pointed.machine();
        m.alphabet().hash(state);
        for q in m.states() {
            m.transition_row(q).hash(state);
            m.output_row(q).hash(state);
        }
    }
}

/// Element of the machine group named by a generator word.
pub fn element_from_word(machine: &MealyMachine, word: &GeneratorWord) -> Result<CanonicalElement, MachineError> {
    let inverse = invert(machine)?;
    let mut acc = CanonicalElement::identity(machine.alphabet().clone());
    for g in word.letters() {
        let source = if g.inverse { &inverse } else { machine };
        let pointed = source.pointed(&g.state)?;
        acc = acc.mul(&CanonicalElement::from_pointed(&pointed))?;
    }
    Ok(acc)
}

/// Exact equality of two canonical elements.
pub fn elements_equal(a: &CanonicalElement, b: &CanonicalElement) -> bool {
    a == b
}

/// Outcome of a bounded order search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    /// No power up to the bound is the identity. This does not prove that
    /// the order is infinite.
    ExceedsBound,
}

/// Smallest `n ≤ max_n` with `eⁿ` the identity.
pub fn order(e: &CanonicalElement, max_n: u64) -> Result<Order, MachineError> {
    if max_n == 0 {
        return Err(MachineError::Usage("order bound must be positive".into()));
    }
    let mut power = e.clone();
    for n in 1..=max_n {
        if power.is_identity() {
            return Ok(Order::Finite(n));
        }
        power = power.mul(e)?;
    }
    Ok(Order::ExceedsBound)
}

/// Number of distinct elements reachable by words of length `≤ L`, for
/// each `L` from 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthTable {
    pub counts: Vec<usize>,
}

/// Which generator letters [`enumerate_elements_with`] may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Generators {
    /// States and their inverses.
    #[default]
    Group,
    /// States only (the monoid of positive words).
    Positive,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    /// Distinct elements with a shortest word for each, in discovery order.
    pub elements: Vec<(CanonicalElement, GeneratorWord)>,
    pub growth: GrowthTable,
}

/// Breadth-first enumeration of the ball of radius `max_len`.
pub fn enumerate_elements(machine: &MealyMachine, max_len: usize) -> Result<Enumeration, MachineError> {
    enumerate_elements_with(machine, max_len, Generators::Group)
}

/// Like [`enumerate_elements`], with a choice of generators. Products for
/// one radius are computed in parallel on the current rayon pool; the merge
/// is sequential, so results do not depend on scheduling.
pub fn enumerate_elements_with(
    machine: &MealyMachine,
    max_len: usize,
    generators: Generators,
) -> Result<Enumeration, MachineError> {
    let gens = generator_elements(machine, generators)?;
    let identity = CanonicalElement::identity(machine.alphabet().clone());

    let mut seen: HashSet<CanonicalElement> = HashSet::from([identity.clone()]);
    let mut elements = vec![(identity, GeneratorWord::empty())];
    let mut frontier = 0..1;
    let mut counts = vec![1];

    for _ in 0..max_len {
        let products: Vec<(CanonicalElement, GeneratorWord)> = elements[frontier.clone()]
            .par_iter()
            .flat_map_iter(|(e, w)| {
                gens.iter().map(move |(g, ge)| {
                    let mut word = w.clone();
                    word.0.push(g.clone());
                    (e.mul(ge).expect("same alphabet"), word)
                })
            })
            .collect();
        let start = elements.len();
        for (e, w) in products {
            if seen.insert(e.clone()) {
                elements.push((e, w));
            }
        }
        frontier = start..elements.len();
        counts.push(elements.len());
    }
    Ok(Enumeration { elements, growth: GrowthTable { counts } })
}

fn generator_elements(
    machine: &MealyMachine,
    generators: Generators,
) -> Result<Vec<(Generator, CanonicalElement)>, MachineError> {
    let inverse = invert(machine)?;
    let mut gens = Vec::new();
    for q in machine.states() {
        let name = machine.state_name(q);
        gens.push((Generator::new(name), CanonicalElement::from_pointed(&machine.pointed(name)?)));
        if generators == Generators::Group {
            gens.push((Generator::inv(name), CanonicalElement::from_pointed(&inverse.pointed(name)?)));
        }
    }
    Ok(gens)
}

/// Positive words of length `1..=max_len` that act as the identity and
/// contain no shorter identity factor, shortest first, then in state order.
pub fn find_relations(machine: &MealyMachine, max_len: usize) -> Result<Vec<GeneratorWord>, MachineError> {
    invert(machine)?;
    let gens: Vec<CanonicalElement> = machine
        .states()
        .map(|q| CanonicalElement::from_pointed(&PointedMachine::new(machine.clone(), q).expect("valid state")))
        .collect();
    let to_word =
        |w: &[usize]| GeneratorWord(w.iter().map(|&i| Generator::new(machine.state_name(StateId(i)))).collect());

    let mut relators: HashSet<Vec<usize>> = HashSet::new();
    let mut found = Vec::new();
    let mut level: Vec<(Vec<usize>, CanonicalElement)> =
        vec![(Vec::new(), CanonicalElement::identity(machine.alphabet().clone()))];

    for _ in 0..max_len {
        let mut next_level = Vec::new();
        let mut new_relators = Vec::new();
        for (w, e) in &level {
            for (i, g) in gens.iter().enumerate() {
                let mut word = w.clone();
                word.push(i);
                // Factors ending before the last letter were checked when the
                // prefix was built; only proper suffixes are new.
                if (1..word.len()).any(|start| relators.contains(&word[start..])) {
                    continue;
                }
                let product = e.mul(g)?;
                if product.is_identity() {
                    new_relators.push(word);
                } else {
                    next_level.push((word, product));
                }
            }
        }
        found.extend(new_relators.iter().map(|w| to_word(w)));
        relators.extend(new_relators);
        level = next_level;
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::v26;

    fn el(s: &str) -> CanonicalElement {
        let m = v26();
        element_from_word(&m, &GeneratorWord::parse(s, &m).unwrap()).unwrap()
    }

    #[test]
    fn parse_generator_words() {
        let m = v26();
        let w = GeneratorWord::parse("p q p'", &m).unwrap();
        assert_eq!(w, GeneratorWord(vec![Generator::new("p"), Generator::new("q"), Generator::inv("p")]));
        assert_eq!(GeneratorWord::parse("pqp'", &m).unwrap(), w);
        assert_eq!(w.to_string(), "p q p'");
        assert!(matches!(GeneratorWord::parse("p r", &m), Err(MachineError::UnknownState(_))));
    }

    #[test]
    fn involutions_and_identity() {
        assert!(el("p p").is_identity());
        assert!(el("").is_identity());
        assert!(el("p p'").is_identity());
        assert!(!el("p").is_identity());
        assert!(elements_equal(&el("pp"), &el("qq")));
    }

    #[test]
    fn equality_examples() {
        assert!(!elements_equal(&el("pq"), &el("qp")));
        assert!(elements_equal(&el("pqp"), &el("pqp")));
    }

    #[test]
    fn orders() {
        assert_eq!(order(&el("p"), 8).unwrap(), Order::Finite(2));
        assert_eq!(order(&el(""), 1).unwrap(), Order::Finite(1));
        assert_eq!(order(&el("pq"), 64).unwrap(), Order::ExceedsBound);
        assert!(matches!(order(&el("p"), 0), Err(MachineError::Usage(_))));
    }

    #[test]
    fn non_invertible_machine_rejected() {
        let mut d = v26().to_draft();
        d.outputs[1] = vec![Some(1), Some(1)];
        let m = MealyMachine::from_draft(d).unwrap();
        assert!(matches!(element_from_word(&m, &GeneratorWord::positive(["p"])), Err(MachineError::NotInvertible(_))));
        assert!(find_relations(&m, 2).is_err());
    }

    #[test]
    fn growth_of_v26() {
        let e = enumerate_elements(&v26(), 6).unwrap();
        assert_eq!(e.growth.counts, vec![1, 3, 5, 7, 9, 11, 13]);
        assert_eq!(e.elements.len(), 13);
        assert_eq!(enumerate_elements(&v26(), 0).unwrap().growth.counts, vec![1]);
    }

    #[test]
    fn identity_machine_group_is_trivial() {
        let id = MealyMachine::identity(Alphabet::binary());
        assert_eq!(enumerate_elements(&id, 3).unwrap().growth.counts, vec![1, 1, 1, 1]);
        assert_eq!(find_relations(&id, 2).unwrap(), vec![GeneratorWord::positive(["I"])]);
    }

    #[test]
    fn relations_of_v26() {
        let m = v26();
        assert_eq!(
            find_relations(&m, 4).unwrap(),
            vec![GeneratorWord::positive(["p", "p"]), GeneratorWord::positive(["q", "q"])]
        );
        assert!(find_relations(&m, 1).unwrap().is_empty());
    }

    #[test]
    fn positive_generators_only() {
        let e = enumerate_elements_with(&v26(), 4, Generators::Positive).unwrap();
        assert_eq!(e.growth.counts, vec![1, 3, 5, 7, 9]);
    }
}
