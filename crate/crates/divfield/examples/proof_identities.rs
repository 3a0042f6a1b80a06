//! Checks the polynomial identities behind the level-6, level-10 and CM arguments.

use divfield::families::proof_identities;

fn main() {
    for (name, ok) in proof_identities() {
        println!("{:<4} {name}", if ok { "ok" } else { "FAIL" });
    }
}
