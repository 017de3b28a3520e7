//! Machines shipped with the crate, stored as source text and read through
//! the public parser.

use crate::format::parse_machine;
use crate::machine::MealyMachine;

/// Two-state binary machine whose states generate the infinite dihedral
/// group. Both `p` and `q` are involutions and `pq` has infinite order.
pub const V26_SOURCE: &str = include_str!("../machines/v26.mealy");

pub fn v26() -> MealyMachine {
    parse_machine(V26_SOURCE).expect("builtin V26 source is well formed")
}

/// Looks up a builtin machine by name.
pub fn builtin(name: &str) -> Option<MealyMachine> {
    match name {
        "V26" => Some(v26()),
        _ => None,
    }
}
