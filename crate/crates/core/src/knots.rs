//! Named knots as braid words.

use crate::braid::BraidWord;

pub const BUILTIN_KNOTS: [(&str, &str); 5] = [
    ("unknot", "B1:"),
    ("3_1", "B2: 1 1 1"),
    ("4_1", "B3: 1 -2 1 -2"),
    ("5_1", "B2: 1 1 1 1 1"),
    ("7_1", "B2: 1 1 1 1 1 1 1"),
];

pub fn knot_braid(name: &str) -> Option<BraidWord> {
    BUILTIN_KNOTS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, w)| w.parse().expect("built-in braid words parse"))
}

pub fn builtin_knots() -> Vec<(&'static str, BraidWord)> {
    BUILTIN_KNOTS.iter().map(|(n, w)| (*n, w.parse().expect("built-in braid words parse"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_close_to_knots() {
        for (name, b) in builtin_knots() {
            assert_eq!(b.closure_components(), 1, "{name}");
        }
        assert!(knot_braid("8_19").is_none());
    }
}
