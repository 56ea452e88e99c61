//! The knot-expression grammar: atoms, connected sums, satellites and the
//! parse errors.

use cjones::knotlang::parse_knot;

fn main() {
    for text in ["4_1", "T(2, 5)", "3_1 # 4_1 # U", "sat(whitehead, 4_1 # 3_1)", "hopf", "T(2,4)", "sat(", "4_1 #"] {
        match parse_knot(text) {
            Ok(k) => println!("{text:>28} -> {} (knot: {})", k.render(), k.is_knot()),
            Err(e) => println!("{text:>28} -> {e}"),
        }
    }
}
