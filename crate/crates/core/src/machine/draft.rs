use std::collections::HashSet;
use std::fmt;

/// Unchecked machine tables, as read from a file or assembled by hand.
///
/// Cells are `None` when absent. Indices refer to `alphabet` and `states`
/// and may be out of range; [`validate`] reports every such problem.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MachineDraft {
    pub name: String,
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    /// `transitions[state][letter]`, the next-state index.
    pub transitions: Vec<Vec<Option<usize>>>,
    /// `outputs[state][letter]`, the output letter index.
    pub outputs: Vec<Vec<Option<usize>>>,
}

/// One violated machine invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Defect {
    EmptyAlphabet,
    DuplicateLetter(String),
    NoStates,
    DuplicateState(String),
    /// A state has no row in one of the tables.
    MissingRow {
        state: String,
    },
    MissingTransition {
        state: String,
        letter: String,
    },
    MissingOutput {
        state: String,
        letter: String,
    },
    DanglingState {
        state: String,
        letter: String,
        target: usize,
    },
    DanglingLetter {
        state: String,
        letter: String,
        output: usize,
    },
    /// A row has more cells than the alphabet has letters.
    ExtraCells {
        state: String,
    },
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::EmptyAlphabet => write!(f, "empty alphabet"),
            Defect::DuplicateLetter(l) => write!(f, "duplicate letter `{l}`"),
            Defect::NoStates => write!(f, "no states"),
            Defect::DuplicateState(s) => write!(f, "duplicate state `{s}`"),
            Defect::MissingRow { state } => write!(f, "missing row for state `{state}`"),
            Defect::MissingTransition { state, letter } => {
                write!(f, "missing transition at ({state}, {letter})")
            }
            Defect::MissingOutput { state, letter } => {
                write!(f, "missing output at ({state}, {letter})")
            }
            Defect::DanglingState { state, letter, target } => {
                write!(f, "dangling state #{target} at ({state}, {letter})")
            }
            Defect::DanglingLetter { state, letter, output } => {
                write!(f, "dangling letter #{output} at ({state}, {letter})")
            }
            Defect::ExtraCells { state } => write!(f, "extra cells in row of state `{state}`"),
        }
    }
}

pub(crate) fn alphabet_defects(symbols: &[String]) -> Vec<Defect> {
    let mut defects = Vec::new();
    if symbols.is_empty() {
        defects.push(Defect::EmptyAlphabet);
    }
    defects.extend(duplicates(symbols).map(Defect::DuplicateLetter));
    defects
}

fn duplicates(names: &[String]) -> impl Iterator<Item = String> + '_ {
    let mut seen = HashSet::new();
    let mut reported = HashSet::new();
    names.iter().filter(move |n| !seen.insert(n.as_str()) && reported.insert(n.as_str())).cloned()
}

/// Every invariant violated by `draft`. Empty means the draft is a valid
/// machine.
pub fn validate(draft: &MachineDraft) -> Vec<Defect> {
    let mut defects = alphabet_defects(&draft.alphabet);
    if draft.states.is_empty() {
        defects.push(Defect::NoStates);
    }
    defects.extend(duplicates(&draft.states).map(Defect::DuplicateState));

    let k = draft.alphabet.len();
    let n = draft.states.len();
    let letter_name = |a: usize| draft.alphabet.get(a).cloned().unwrap_or_else(|| format!("#{a}"));

    for (q, state) in draft.states.iter().enumerate() {
        let (Some(trow), Some(orow)) = (draft.transitions.get(q), draft.outputs.get(q)) else {
            defects.push(Defect::MissingRow { state: state.clone() });
            continue;
        };
        if trow.len() > k || orow.len() > k {
            defects.push(Defect::ExtraCells { state: state.clone() });
        }
        for a in 0..k {
            match trow.get(a).copied().flatten() {
                None => defects.push(Defect::MissingTransition { state: state.clone(), letter: letter_name(a) }),
                Some(target) if target >= n => {
                    defects.push(Defect::DanglingState { state: state.clone(), letter: letter_name(a), target })
                }
                Some(_) => {}
            }
            match orow.get(a).copied().flatten() {
                None => defects.push(Defect::MissingOutput { state: state.clone(), letter: letter_name(a) }),
                Some(output) if output >= k => {
                    defects.push(Defect::DanglingLetter { state: state.clone(), letter: letter_name(a), output })
                }
                Some(_) => {}
            }
        }
    }
    defects
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_state() -> MachineDraft {
        MachineDraft {
            name: "t".into(),
            alphabet: vec!["0".into(), "1".into()],
            states: vec!["p".into(), "q".into()],
            transitions: vec![vec![Some(1), Some(0)], vec![Some(0), Some(0)]],
            outputs: vec![vec![Some(0), Some(1)], vec![Some(1), Some(0)]],
        }
    }

    #[test]
    fn valid_draft_has_no_defects() {
        assert!(validate(&two_state()).is_empty());
    }

    #[test]
    fn deleted_transition_cell() {
        let mut d = two_state();
        d.transitions[1][0] = None;
        let defects = validate(&d);
        assert_eq!(defects, vec![Defect::MissingTransition { state: "q".into(), letter: "0".into() }]);
        assert!(defects[0].to_string().contains("missing transition"));
    }

    #[test]
    fn unknown_target_is_dangling() {
        let mut d = two_state();
        d.transitions[0][1] = Some(7);
        let defects = validate(&d);
        assert_eq!(defects.len(), 1);
        assert!(defects[0].to_string().contains("dangling state"));
    }

    #[test]
    fn duplicates_and_empties_all_reported() {
        let d = MachineDraft {
            name: String::new(),
            alphabet: vec![],
            states: vec![],
            transitions: vec![],
            outputs: vec![],
        };
        assert_eq!(validate(&d), vec![Defect::EmptyAlphabet, Defect::NoStates]);

        let mut d = two_state();
        d.states[1] = "p".into();
        d.alphabet[1] = "0".into();
        let defects = validate(&d);
        assert!(defects.contains(&Defect::DuplicateLetter("0".into())));
        assert!(defects.contains(&Defect::DuplicateState("p".into())));
    }

    #[test]
    fn missing_row_and_bad_output() {
        let mut d = two_state();
        d.outputs[0][0] = Some(2);
        d.transitions.pop();
        let defects = validate(&d);
        assert!(defects.contains(&Defect::MissingRow { state: "q".into() }));
        assert!(defects.iter().any(|d| matches!(d, Defect::DanglingLetter { output: 2, .. })));
    }
}
