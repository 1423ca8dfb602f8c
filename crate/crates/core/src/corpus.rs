//! Lead sheets bundled with the library.

use crate::chordsym::{parse_leadsheet, Progression};

pub const BLUES_FOR_ALICE: &str = include_str!("../corpus/blues_for_alice.ls");
pub const CHEROKEE: &str = include_str!("../corpus/cherokee.ls");

/// `(file name, text)` of every bundled sheet.
pub const ALL: [(&str, &str); 2] = [("blues_for_alice.ls", BLUES_FOR_ALICE), ("cherokee.ls", CHEROKEE)];

pub fn blues_for_alice() -> Progression {
    parse_leadsheet(BLUES_FOR_ALICE).expect("bundled sheet parses")
}

pub fn cherokee() -> Progression {
    parse_leadsheet(CHEROKEE).expect("bundled sheet parses")
}
