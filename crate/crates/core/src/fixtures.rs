//! Reference arrays bundled with the crate, in the text format.

use crate::arrays::{parse_array, CodedArray};

macro_rules! fixtures {
    ($($name:ident => $file:literal,)*) => {
        $(pub const $name: &str = include_str!(concat!("../fixtures/", $file));)*

        /// Every bundled fixture as `(file name, text)`.
        pub const ALL: &[(&str, &str)] = &[$(($file, $name),)*];
    };
}

fixtures! {
    A1 => "a1.txt",
    A2 => "a2.txt",
    A3 => "a3.txt",
    P1 => "p1.txt",
    P1_HAT => "p1_hat.txt",
    P2 => "p2.txt",
    P3 => "p3.txt",
    P4 => "p4.txt",
    P5 => "p5.txt",
    D11 => "d11.txt",
    D21 => "d21.txt",
    D1 => "d1.txt",
    D2 => "d2.txt",
    MRA3 => "mra3.txt",
}

/// Parses a bundled fixture.
///
/// # Panics
/// If the fixture text is malformed, which the crate's tests rule out.
pub fn load(text: &str) -> CodedArray {
    parse_array(text).expect("bundled fixture parses")
}

/// Looks a fixture up by file stem, e.g. `"p3"`.
pub fn by_name(name: &str) -> Option<CodedArray> {
    ALL.iter()
        .find(|(file, _)| file.strip_suffix(".txt") == Some(name))
        .map(|(_, text)| load(text))
}
