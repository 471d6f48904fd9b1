//! Built-in groups.
//!
//! The regression corpus: `C9`, `C3 x C3`, the two extraspecial groups of
//! order 27, `C3 wr C3` (order 81), a metacyclic group of order 243 and the
//! order-2187 group `SmallGroup(3^7, 194)`. A few extra groups (p = 2, p = 5)
//! exercise the non-3 code paths.

use crate::format;
use crate::pc::PcGroup;

/// `(name, file contents)` of every built-in group.
pub const FILES: &[(&str, &str)] = &[
    ("c9", include_str!("../corpus/c9.pc")),
    ("c3xc3", include_str!("../corpus/c3xc3.pc")),
    ("h27", include_str!("../corpus/h27.pc")),
    ("m27", include_str!("../corpus/m27.pc")),
    ("c3wrc3", include_str!("../corpus/c3wrc3.pc")),
    ("mc243", include_str!("../corpus/mc243.pc")),
    ("sg2187_194", include_str!("../corpus/sg2187_194.pc")),
    ("d8", include_str!("../corpus/d8.pc")),
    ("h125", include_str!("../corpus/h125.pc")),
];

/// Names making up the main regression corpus.
pub const CORPUS: &[&str] = &["c9", "c3xc3", "h27", "m27", "c3wrc3", "mc243", "sg2187_194"];

pub const EXAMPLE_GROUP: &str = "sg2187_194";

pub fn source(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

/// Loads a built-in group by corpus name.
pub fn by_name(name: &str) -> Option<PcGroup> {
    source(name).map(|text| {
        format::parse(text)
            .unwrap_or_else(|e| panic!("built-in group {name} is invalid: {e}"))
            .group
    })
}

fn builtin(name: &str) -> PcGroup {
    by_name(name).unwrap()
}

/// `SmallGroup(3^7, 194)`, order 2187, class 4.
pub fn example_group() -> PcGroup {
    builtin(EXAMPLE_GROUP)
}

pub fn cyclic_9() -> PcGroup {
    builtin("c9")
}

pub fn elementary_9() -> PcGroup {
    builtin("c3xc3")
}

/// Extraspecial of order 27 and exponent 3.
pub fn heisenberg_27() -> PcGroup {
    builtin("h27")
}

/// Extraspecial of order 27 and exponent 9.
pub fn extraspecial_27_exp9() -> PcGroup {
    builtin("m27")
}

pub fn wreath_81() -> PcGroup {
    builtin("c3wrc3")
}

/// `C27 x| C9` with `b -> b^4`.
pub fn metacyclic_243() -> PcGroup {
    builtin("mc243")
}

pub fn dihedral_8() -> PcGroup {
    builtin("d8")
}

pub fn heisenberg_125() -> PcGroup {
    builtin("h125")
}

/// The main regression corpus, smallest first.
pub fn all() -> Vec<PcGroup> {
    CORPUS.iter().map(|name| builtin(name)).collect()
}

/// Every built-in group, including the extras.
pub fn everything() -> Vec<PcGroup> {
    FILES.iter().map(|(name, _)| builtin(name)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let orders: Vec<u64> = all().iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![9, 9, 27, 27, 81, 243, 2187]);
        assert_eq!(dihedral_8().order(), 8);
        assert_eq!(heisenberg_125().order(), 125);
    }

    #[test]
    fn serialisation_round_trips() {
        for (name, text) in FILES {
            let p = format::parse_presentation(text).unwrap();
            let again = format::parse_presentation(&format::serialize(&p)).unwrap();
            assert_eq!(again, p, "{name}");
        }
    }
}
