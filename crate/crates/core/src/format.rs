//! Text and DOT representations of machines.
//!
//! The text format has one declaration per line; `#` starts a comment:
//!
//! ```text
//! machine V26
//! alphabet 0 1
//! state p: 0 -> q / 0 ; 1 -> p / 1
//! state q: 0 -> p / 1 ; 1 -> p / 0
//! ```
//!
//! Each `state` row lists, for every alphabet letter exactly once,
//! `input -> next-state / output`. Whitespace around tokens is ignored.
//! When a file describes a pointed machine, the first declared state is the
//! initial one.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{ParseError, ParseErrorKind};
use crate::machine::{MachineDraft, MealyMachine, PointedMachine, StateId};

struct Row<'a> {
    line: usize,
    name: &'a str,
    name_col: usize,
    /// (input, target, output), each with its column.
    entries: Vec<[(&'a str, usize); 3]>,
}

/// Parses the machine text format.
pub fn parse_machine(text: &str) -> Result<MealyMachine, ParseError> {
    let mut name: Option<(&str, usize)> = None;
    let mut alphabet: Option<(Vec<&str>, usize)> = None;
    let mut rows: Vec<Row<'_>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let col = |s: &str| s.as_ptr() as usize - raw.as_ptr() as usize + 1;
        let err = |s: &str, kind| ParseError { line: line_no, column: col(s), kind };

        let trimmed = line.trim_start();
        let Some(keyword) = trimmed.split_whitespace().next() else {
            continue;
        };
        let rest = &trimmed[keyword.len()..];
        match keyword {
            "machine" => {
                if name.is_some() {
                    return Err(err(keyword, ParseErrorKind::Duplicate("machine".into())));
                }
                let tokens: Vec<&str> = rest.split_whitespace().collect();
                match tokens.as_slice() {
                    [n] => name = Some((n, line_no)),
                    _ => return Err(err(keyword, ParseErrorKind::Syntax("expected `machine <name>`".into()))),
                }
            }
            "alphabet" => {
                if name.is_none() {
                    return Err(err(keyword, ParseErrorKind::NoMachine));
                }
                if alphabet.is_some() {
                    return Err(err(keyword, ParseErrorKind::Duplicate("alphabet".into())));
                }
                let letters: Vec<&str> = rest.split_whitespace().collect();
                if letters.is_empty() {
                    return Err(err(keyword, ParseErrorKind::Syntax("empty alphabet".into())));
                }
                for (i, l) in letters.iter().enumerate() {
                    if !is_name(l) {
                        return Err(err(l, ParseErrorKind::Syntax(format!("bad letter `{l}`"))));
                    }
                    if letters[..i].contains(l) {
                        return Err(err(l, ParseErrorKind::DuplicateLetter((*l).to_owned())));
                    }
                }
                alphabet = Some((letters, line_no));
            }
            "state" => {
                if name.is_none() {
                    return Err(err(keyword, ParseErrorKind::NoMachine));
                }
                if alphabet.is_none() {
                    return Err(err(keyword, ParseErrorKind::NoAlphabet));
                }
                let Some((head, body)) = rest.split_once(':') else {
                    return Err(err(keyword, ParseErrorKind::Syntax("expected `:` after state name".into())));
                };
                let state = head.trim();
                if !is_name(state) {
                    return Err(err(keyword, ParseErrorKind::Syntax(format!("bad state name `{state}`"))));
                }
                if rows.iter().any(|r| r.name == state) {
                    return Err(err(state, ParseErrorKind::DuplicateState(state.to_owned())));
                }
                let mut entries = Vec::new();
                for entry in body.split(';') {
                    if entry.trim().is_empty() {
                        continue;
                    }
                    let syntax = || {
                        err(
                            entry.trim_start(),
                            ParseErrorKind::Syntax("expected `<letter> -> <state> / <letter>`".into()),
                        )
                    };
                    let (input, rhs) = entry.split_once("->").ok_or_else(syntax)?;
                    let (target, output) = rhs.split_once('/').ok_or_else(syntax)?;
                    let parts = [input.trim(), target.trim(), output.trim()];
                    if !parts.iter().all(|p| is_name(p)) {
                        return Err(syntax());
                    }
                    entries.push(parts.map(|p| (p, col(p))));
                }
                rows.push(Row { line: line_no, name: state, name_col: col(state), entries });
            }
            other => {
                return Err(err(other, ParseErrorKind::Syntax(format!("unknown declaration `{other}`"))));
            }
        }
    }

    let at_end = |kind| ParseError { line: text.lines().count().max(1), column: 1, kind };
    let (name, _) = name.ok_or_else(|| at_end(ParseErrorKind::NoMachine))?;
    let (letters, _) = alphabet.ok_or_else(|| at_end(ParseErrorKind::NoAlphabet))?;
    if rows.is_empty() {
        return Err(at_end(ParseErrorKind::NoStates));
    }

    let letter_ix: HashMap<&str, usize> = letters.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let state_ix: HashMap<&str, usize> = rows.iter().enumerate().map(|(i, r)| (r.name, i)).collect();
    let k = letters.len();

    let mut draft = MachineDraft {
        name: name.to_owned(),
        alphabet: letters.iter().map(|l| (*l).to_owned()).collect(),
        states: rows.iter().map(|r| r.name.to_owned()).collect(),
        transitions: vec![vec![None; k]; rows.len()],
        outputs: vec![vec![None; k]; rows.len()],
    };
    for (q, row) in rows.iter().enumerate() {
        let at = |column, kind| ParseError { line: row.line, column, kind };
        for [(input, ic), (target, tc), (output, oc)] in &row.entries {
            let a = *letter_ix.get(input).ok_or_else(|| at(*ic, ParseErrorKind::UnknownLetter((*input).to_owned())))?;
            let t = *state_ix.get(target).ok_or_else(|| at(*tc, ParseErrorKind::UnknownState((*target).to_owned())))?;
            let b =
                *letter_ix.get(output).ok_or_else(|| at(*oc, ParseErrorKind::UnknownLetter((*output).to_owned())))?;
            if draft.transitions[q][a].is_some() {
                return Err(at(
                    *ic,
                    ParseErrorKind::RepeatedLetter { state: row.name.to_owned(), letter: (*input).to_owned() },
                ));
            }
            draft.transitions[q][a] = Some(t);
            draft.outputs[q][a] = Some(b);
        }
        if let Some(a) = draft.transitions[q].iter().position(Option::is_none) {
            return Err(at(
                row.name_col,
                ParseErrorKind::IncompleteState { state: row.name.to_owned(), letter: letters[a].to_owned() },
            ));
        }
    }
    Ok(MealyMachine::from_draft(draft).expect("parser output satisfies every machine invariant"))
}

/// Parses a pointed machine: the first declared state is the initial state.
pub fn parse_pointed(text: &str) -> Result<PointedMachine, ParseError> {
    let machine = parse_machine(text)?;
    Ok(PointedMachine::new(machine, StateId(0)).expect("machine has at least one state"))
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && !s.contains(|c: char| c.is_whitespace() || matches!(c, ':' | ';' | '/' | '#')) && !s.contains("->")
}

/// Renders a machine in the text format, states in table order.
pub fn render_machine(machine: &MealyMachine) -> String {
    render_in_order(machine, machine.states().collect())
}

/// Renders a pointed machine with its initial state declared first.
pub fn render_pointed(pointed: &PointedMachine) -> String {
    let m = pointed.machine();
    let mut order = vec![pointed.initial()];
    order.extend(m.states().filter(|&q| q != pointed.initial()));
    render_in_order(m, order)
}

fn render_in_order(m: &MealyMachine, order: Vec<StateId>) -> String {
    let sigma = m.alphabet();
    let mut out = String::new();
    let _ = writeln!(out, "machine {}", m.name());
    let _ = writeln!(out, "alphabet {}", sigma.symbols().join(" "));
    for q in order {
        let entries: Vec<String> = sigma
            .letters()
            .map(|a| {
                let (t, b) = m.step_unchecked(q, a);
                format!("{} -> {} / {}", sigma.symbol(a), m.state_name(t), sigma.symbol(b))
            })
            .collect();
        let _ = writeln!(out, "state {}: {}", m.state_name(q), entries.join(" ; "));
    }
    out
}

/// Graphviz rendering: one node per state, one `a/b` edge per table cell.
/// The initial state, if given, is drawn as a double circle.
pub fn to_dot(machine: &MealyMachine, initial: Option<StateId>) -> String {
    let sigma = machine.alphabet();
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(machine.name()));
    let _ = writeln!(out, "  rankdir=LR;");
    let _ = writeln!(out, "  node [shape=circle];");
    for q in machine.states() {
        if Some(q) == initial {
            let _ = writeln!(out, "  {} [shape=doublecircle];", quote(machine.state_name(q)));
        } else {
            let _ = writeln!(out, "  {};", quote(machine.state_name(q)));
        }
    }
    for q in machine.states() {
        for a in sigma.letters() {
            let (t, b) = machine.step_unchecked(q, a);
            let label = format!("{}/{}", sigma.symbol(a), sigma.symbol(b));
            let _ = writeln!(
                out,
                "  {} -> {} [label={}];",
                quote(machine.state_name(q)),
                quote(machine.state_name(t)),
                quote(&label)
            );
        }
    }
    out.push_str("}\n");
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}
