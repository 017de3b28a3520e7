//! Mealy machines over finite alphabets.
//!
//! A [`MealyMachine`] is a finite set of states together with two total
//! tables indexed by `(state, letter)`: the transition table (where the
//! machine goes) and the output table (what it writes). Pointing a machine
//! at one of its states gives a [`PointedMachine`], which acts on words
//! letter by letter.
//!
//! Machines are validated on construction, so every value of
//! [`MealyMachine`] has total tables with in-range references. Raw,
//! possibly broken, tables live in [`MachineDraft`] and are checked with
//! [`validate`].

mod draft;
mod ops;

use std::fmt;

pub use draft::{validate, Defect, MachineDraft};
pub(crate) use ops::same_tables;
pub use ops::{compose, invert, machines_equal, minimize, Minimized};

use crate::error::MachineError;

/// Index of a letter in an [`Alphabet`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub usize);

/// Index of a state in a [`MealyMachine`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub usize);

/// A finite word, stored as letter indices.
pub type Word = Vec<Letter>;

/// An ordered list of distinct letter symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self, MachineError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        let defects = draft::alphabet_defects(&symbols);
        if defects.is_empty() {
            Ok(Alphabet { symbols })
        } else {
            Err(MachineError::Invalid(defects))
        }
    }

    /// The alphabet `{0, 1}`.
    pub fn binary() -> Self {
        Alphabet { symbols: vec!["0".into(), "1".into()] }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.symbols.len()).map(Letter)
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.symbols[letter.0]
    }

    pub fn letter(&self, symbol: &str) -> Option<Letter> {
        self.symbols.iter().position(|s| s == symbol).map(Letter)
    }

    /// Parses a word. Whitespace-separated symbols are accepted always;
    /// when every symbol is a single character the word may also be
    /// written without separators (`0010`).
    pub fn parse_word(&self, text: &str) -> Result<Word, MachineError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::new());
        }
        let tokens: Vec<String> = if text.contains(char::is_whitespace) || !self.single_char() {
            text.split_whitespace().map(str::to_owned).collect()
        } else {
            text.chars().map(String::from).collect()
        };
        tokens.iter().map(|t| self.letter(t).ok_or_else(|| MachineError::UnknownLetter(t.clone()))).collect()
    }

    /// Inverse of [`Alphabet::parse_word`].
    pub fn format_word(&self, word: &[Letter]) -> String {
        let sep = if self.single_char() { "" } else { " " };
        word.iter().map(|&l| self.symbol(l)).collect::<Vec<_>>().join(sep)
    }

    /// All words of length exactly `len`, in lexicographic order.
    pub fn words_of_len(&self, len: usize) -> impl Iterator<Item = Word> + '_ {
        let k = self.len();
        let total = k.checked_pow(len as u32).expect("word space too large");
        (0..total).map(move |mut code| {
            let mut word = vec![Letter(0); len];
            for slot in word.iter_mut().rev() {
                *slot = Letter(code % k);
                code /= k;
            }
            word
        })
    }

    /// All words of length at most `max_len`, shortest first.
    pub fn words_up_to(&self, max_len: usize) -> impl Iterator<Item = Word> + '_ {
        (0..=max_len).flat_map(move |len| self.words_of_len(len))
    }

    fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }
}

/// A Mealy machine with total transition and output tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MealyMachine {
    name: String,
    alphabet: Alphabet,
    states: Vec<String>,
    next: Vec<StateId>,
    output: Vec<Letter>,
}

impl MealyMachine {
    /// Builds a machine from a draft, failing with every defect found.
    pub fn from_draft(draft: MachineDraft) -> Result<Self, MachineError> {
        let defects = validate(&draft);
        if !defects.is_empty() {
            return Err(MachineError::Invalid(defects));
        }
        let next = draft.transitions.iter().flatten().map(|c| StateId(c.unwrap())).collect();
        let output = draft.outputs.iter().flatten().map(|c| Letter(c.unwrap())).collect();
        Ok(MealyMachine {
            name: draft.name,
            alphabet: Alphabet { symbols: draft.alphabet },
            states: draft.states,
            next,
            output,
        })
    }

    /// The one-state machine that copies its input.
    pub fn identity(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        MealyMachine {
            name: "I".into(),
            alphabet,
            states: vec!["I".into()],
            next: vec![StateId(0); k],
            output: (0..k).map(Letter).collect(),
        }
    }

    pub(crate) fn from_tables(
        name: String,
        alphabet: Alphabet,
        states: Vec<String>,
        next: Vec<StateId>,
        output: Vec<Letter>,
    ) -> Self {
        debug_assert_eq!(next.len(), states.len() * alphabet.len());
        debug_assert_eq!(output.len(), next.len());
        MealyMachine { name, alphabet, states, next, output }
    }

    pub fn to_draft(&self) -> MachineDraft {
        let k = self.alphabet.len();
        MachineDraft {
            name: self.name.clone(),
            alphabet: self.alphabet.symbols.clone(),
            states: self.states.clone(),
            transitions: self.next.chunks(k).map(|r| r.iter().map(|s| Some(s.0)).collect()).collect(),
            outputs: self.output.chunks(k).map(|r| r.iter().map(|l| Some(l.0)).collect()).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.states.len()).map(StateId)
    }

    pub fn state_name(&self, state: StateId) -> &str {
        &self.states[state.0]
    }

    pub fn state(&self, name: &str) -> Result<StateId, MachineError> {
        self.states
            .iter()
            .position(|s| s == name)
            .map(StateId)
            .ok_or_else(|| MachineError::UnknownState(name.to_owned()))
    }

    /// One transition: `(q∘a, q∗a)`.
    pub fn step(&self, state: StateId, letter: Letter) -> Result<(StateId, Letter), MachineError> {
        if state.0 >= self.states.len() {
            return Err(MachineError::StateOutOfRange(state.0));
        }
        if letter.0 >= self.alphabet.len() {
            return Err(MachineError::LetterOutOfRange(letter.0));
        }
        Ok(self.step_unchecked(state, letter))
    }

    #[inline]
    pub(crate) fn step_unchecked(&self, state: StateId, letter: Letter) -> (StateId, Letter) {
        let cell = state.0 * self.alphabet.len() + letter.0;
        (self.next[cell], self.output[cell])
    }

    /// Output row of `state`, one letter per alphabet letter.
    pub fn output_row(&self, state: StateId) -> &[Letter] {
        let k = self.alphabet.len();
        &self.output[state.0 * k..(state.0 + 1) * k]
    }

    /// Transition row of `state`, one target per alphabet letter.
    pub fn transition_row(&self, state: StateId) -> &[StateId] {
        let k = self.alphabet.len();
        &self.next[state.0 * k..(state.0 + 1) * k]
    }

    /// True iff every output row is a permutation of the alphabet.
    pub fn is_invertible(&self) -> bool {
        self.non_invertible_state().is_none()
    }

    pub(crate) fn non_invertible_state(&self) -> Option<StateId> {
        let k = self.alphabet.len();
        self.states().find(|&q| {
            let mut seen = vec![false; k];
            self.output_row(q).iter().any(|l| std::mem::replace(&mut seen[l.0], true))
        })
    }

    pub fn pointed(&self, initial: &str) -> Result<PointedMachine, MachineError> {
        let initial = self.state(initial)?;
        Ok(PointedMachine { machine: self.clone(), initial })
    }

    /// `q∗u` and `q∘u` for every state at once is rarely needed; this is
    /// the single-state version without building a [`PointedMachine`].
    pub fn act_from(&self, state: StateId, word: &[Letter]) -> Result<WordAction, MachineError> {
        if state.0 >= self.states.len() {
            return Err(MachineError::StateOutOfRange(state.0));
        }
        let mut q = state;
        let mut output = Word::with_capacity(word.len());
        for &a in word {
            if a.0 >= self.alphabet.len() {
                return Err(MachineError::LetterOutOfRange(a.0));
            }
            let (next, b) = self.step_unchecked(q, a);
            output.push(b);
            q = next;
        }
        Ok(WordAction { output, final_state: q })
    }
}

/// Output of running a pointed machine over a finite word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordAction {
    pub output: Word,
    pub final_state: StateId,
}

/// A machine with a distinguished initial state: one transformation of
/// words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedMachine {
    machine: MealyMachine,
    initial: StateId,
}

impl PointedMachine {
    pub fn new(machine: MealyMachine, initial: StateId) -> Result<Self, MachineError> {
        if initial.0 >= machine.num_states() {
            return Err(MachineError::StateOutOfRange(initial.0));
        }
        Ok(PointedMachine { machine, initial })
    }

    pub fn machine(&self) -> &MealyMachine {
        &self.machine
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.machine.alphabet()
    }

    pub fn into_parts(self) -> (MealyMachine, StateId) {
        (self.machine, self.initial)
    }

    /// Runs the machine over `word` from the initial state.
    pub fn act_word(&self, word: &[Letter]) -> Result<WordAction, MachineError> {
        self.machine.act_from(self.initial, word)
    }

    /// Image of a finite prefix of an infinite word. Position `n` of the
    /// result depends only on positions `0..=n` of the input, so this is
    /// the length-`n` prefix of the image of every extension of `prefix`.
    pub fn act_prefix(&self, prefix: &[Letter]) -> Result<Word, MachineError> {
        self.act_word(prefix).map(|a| a.output)
    }

    /// Replaces `word` by its image, without allocating.
    pub fn act_in_place(&self, word: &mut [Letter]) -> Result<StateId, MachineError> {
        let k = self.machine.alphabet.len();
        if let Some(bad) = word.iter().find(|a| a.0 >= k) {
            return Err(MachineError::LetterOutOfRange(bad.0));
        }
        let mut q = self.initial;
        for a in word.iter_mut() {
            let (next, b) = self.machine.step_unchecked(q, *a);
            *a = b;
            q = next;
        }
        Ok(q)
    }

    /// Lazily transduces a (possibly unbounded) letter stream.
    ///
    /// Letters outside the alphabet end the stream.
    pub fn transduce<I>(&self, input: I) -> Transduce<'_, I::IntoIter>
    where
        I: IntoIterator<Item = Letter>,
    {
        Transduce { machine: &self.machine, state: self.initial, input: input.into_iter() }
    }
}

/// Iterator returned by [`PointedMachine::transduce`].
pub struct Transduce<'m, I> {
    machine: &'m MealyMachine,
    state: StateId,
    input: I,
}

impl<I: Iterator<Item = Letter>> Iterator for Transduce<'_, I> {
    type Item = Letter;

    fn next(&mut self) -> Option<Letter> {
        let a = self.input.next()?;
        let (q, b) = self.machine.step(self.state, a).ok()?;
        self.state = q;
        Some(b)
    }
}

impl fmt::Display for MealyMachine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::render_machine(self))
    }
}
