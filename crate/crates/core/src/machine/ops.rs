use std::collections::{HashMap, VecDeque};

use super::{Letter, MealyMachine, PointedMachine, StateId};
use crate::error::MachineError;

/// Swaps input and output on every arrow: `q₁ --a/b--> q₂` becomes
/// `q₁ --b/a--> q₂`. State names and order are kept.
pub fn invert(machine: &MealyMachine) -> Result<MealyMachine, MachineError> {
    if let Some(q) = machine.non_invertible_state() {
        return Err(MachineError::NotInvertible(machine.state_name(q).to_owned()));
    }
    let k = machine.alphabet().len();
    let mut next = vec![StateId(0); machine.num_states() * k];
    let mut output = vec![Letter(0); machine.num_states() * k];
    for q in machine.states() {
        for a in machine.alphabet().letters() {
            let (target, b) = machine.step_unchecked(q, a);
            next[q.0 * k + b.0] = target;
            output[q.0 * k + b.0] = a;
        }
    }
    Ok(MealyMachine::from_tables(
        machine.name().to_owned(),
        machine.alphabet().clone(),
        machine.states.clone(),
        next,
        output,
    ))
}

/// Product machine that runs `first` and feeds its output into `second`.
///
/// The state `(q₁, q₂)` reads `a`, moves to `(q₁∘a, q₂∘(q₁∗a))` and writes
/// `q₂∗(q₁∗a)`, so the result acts as `first` followed by `second`.
pub fn compose(first: &PointedMachine, second: &PointedMachine) -> Result<PointedMachine, MachineError> {
    let (m1, m2) = (first.machine(), second.machine());
    if m1.alphabet() != m2.alphabet() {
        return Err(MachineError::AlphabetMismatch);
    }
    let k = m1.alphabet().len();
    let n2 = m2.num_states();
    let pair = |q1: StateId, q2: StateId| StateId(q1.0 * n2 + q2.0);

    let mut states = Vec::with_capacity(m1.num_states() * n2);
    let mut next = Vec::with_capacity(states.capacity() * k);
    let mut output = Vec::with_capacity(states.capacity() * k);
    for q1 in m1.states() {
        for q2 in m2.states() {
            states.push(format!("({},{})", m1.state_name(q1), m2.state_name(q2)));
            for a in m1.alphabet().letters() {
                let (t1, b) = m1.step_unchecked(q1, a);
                let (t2, c) = m2.step_unchecked(q2, b);
                next.push(pair(t1, t2));
                output.push(c);
            }
        }
    }
    let machine =
        MealyMachine::from_tables(format!("{}*{}", m1.name(), m2.name()), m1.alphabet().clone(), states, next, output);
    PointedMachine::new(machine, pair(first.initial(), second.initial()))
}

/// Result of [`minimize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minimized {
    /// The reduced machine; its initial state is always `StateId(0)`.
    pub pointed: PointedMachine,
    /// For every state of the input, its class in the reduced machine, or
    /// `None` when unreachable from the initial state.
    pub class_of: Vec<Option<StateId>>,
}

/// Reduced machine of a pointed machine.
///
/// Unreachable states are dropped, then states are merged by Moore-style
/// partition refinement starting from the partition by output row. Classes
/// are numbered breadth-first from the initial class, following letters in
/// alphabet order, so two pointed machines define the same transformation
/// iff their reduced tables are identical. Each class is named after its
/// first-reached member.
pub fn minimize(pointed: &PointedMachine) -> Minimized {
    let m = pointed.machine();
    let k = m.alphabet().len();

    let reachable = bfs_order(pointed.initial(), |q| m.transition_row(q).to_vec(), m.num_states());

    // Moore refinement over reachable states.
    let mut class = vec![usize::MAX; m.num_states()];
    let mut count = renumber(&reachable, &mut class, |q| (0, m.output_row(q).iter().map(|l| l.0).collect()));
    loop {
        let prev = class.clone();
        let refined =
            renumber(&reachable, &mut class, |q| (prev[q.0], m.transition_row(q).iter().map(|t| prev[t.0]).collect()));
        if refined == count {
            break;
        }
        count = refined;
    }

    // Representative per class: first reachable member.
    let mut rep = vec![None; count];
    for &q in &reachable {
        rep[class[q.0]].get_or_insert(q);
    }
    let rep: Vec<StateId> = rep.into_iter().map(Option::unwrap).collect();

    let canonical = bfs_order(
        StateId(class[pointed.initial().0]),
        |c| m.transition_row(rep[c.0]).iter().map(|t| StateId(class[t.0])).collect(),
        count,
    );
    let mut position = vec![0; count];
    for (i, c) in canonical.iter().enumerate() {
        position[c.0] = i;
    }

    let mut states = Vec::with_capacity(count);
    let mut next = Vec::with_capacity(count * k);
    let mut output = Vec::with_capacity(count * k);
    for c in &canonical {
        let q = rep[c.0];
        states.push(m.state_name(q).to_owned());
        next.extend(m.transition_row(q).iter().map(|t| StateId(position[class[t.0]])));
        output.extend_from_slice(m.output_row(q));
    }
    let reduced = MealyMachine::from_tables(m.name().to_owned(), m.alphabet().clone(), states, next, output);

    let class_of = m.states().map(|q| (class[q.0] != usize::MAX).then(|| StateId(position[class[q.0]]))).collect();
    Minimized { pointed: PointedMachine { machine: reduced, initial: StateId(0) }, class_of }
}

/// True iff both pointed machines transform every word identically.
pub fn machines_equal(a: &PointedMachine, b: &PointedMachine) -> Result<bool, MachineError> {
    if a.alphabet() != b.alphabet() {
        return Err(MachineError::AlphabetMismatch);
    }
    let (ra, rb) = (minimize(a).pointed, minimize(b).pointed);
    Ok(same_tables(ra.machine(), rb.machine()))
}

/// Table equality, ignoring machine and state names.
pub(crate) fn same_tables(a: &MealyMachine, b: &MealyMachine) -> bool {
    a.alphabet == b.alphabet && a.next == b.next && a.output == b.output
}

fn bfs_order(start: StateId, successors: impl Fn(StateId) -> Vec<StateId>, n: usize) -> Vec<StateId> {
    let mut seen = vec![false; n];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([start]);
    seen[start.0] = true;
    while let Some(q) = queue.pop_front() {
        order.push(q);
        for t in successors(q) {
            if !std::mem::replace(&mut seen[t.0], true) {
                queue.push_back(t);
            }
        }
    }
    order
}

/// Assigns dense class numbers to `states` by signature, in visiting order.
/// Returns the number of classes.
fn renumber(states: &[StateId], class: &mut [usize], signature: impl Fn(StateId) -> (usize, Vec<usize>)) -> usize {
    let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    let mut assigned = Vec::with_capacity(states.len());
    for &q in states {
        let sig = signature(q);
        let next_id = ids.len();
        assigned.push(*ids.entry(sig).or_insert(next_id));
    }
    for (&q, c) in states.iter().zip(assigned) {
        class[q.0] = c;
    }
    ids.len()
}
