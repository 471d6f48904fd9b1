use std::fmt;

/// Hard cap on the number of pc generators.
pub const MAX_GENERATORS: usize = 16;

/// A group element in collected normal form `f1^e1 f2^e2 ... fn^en`.
///
/// Elements are plain exponent vectors; they only mean something relative to
/// the [`PcGroup`](super::PcGroup) that produced them. The derived ordering is
/// lexicographic on the exponent vector, which is the canonical order used for
/// subgroup element lists and all tie-breaking.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    len: u8,
    exps: [u8; MAX_GENERATORS],
}

impl Element {
    pub fn identity(n: usize) -> Element {
        assert!(n <= MAX_GENERATORS, "too many generators: {n}");
        Element {
            len: n as u8,
            exps: [0; MAX_GENERATORS],
        }
    }

    /// Builds an element from raw exponents. No reduction is performed; the
    /// caller guarantees every entry is below `p`.
    pub fn from_exponents(exps: &[u8]) -> Element {
        let mut e = Element::identity(exps.len());
        e.exps[..exps.len()].copy_from_slice(exps);
        e
    }

    /// The 0-based unit vector, i.e. the pc generator `f_{index+1}`.
    pub(crate) fn unit(n: usize, index: usize) -> Element {
        let mut e = Element::identity(n);
        e.exps[index] = 1;
        e
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn exponents(&self) -> &[u8] {
        &self.exps[..self.len as usize]
    }

    #[inline]
    pub(crate) fn exponents_mut(&mut self) -> &mut [u8] {
        &mut self.exps[..self.len as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.exponents().iter().all(|&e| e == 0)
    }

    /// Index of the first non-zero exponent (0-based), if any.
    pub fn leading(&self) -> Option<usize> {
        self.exponents().iter().position(|&e| e != 0)
    }

    /// The normal-form word spelling this element.
    pub fn to_word(&self) -> Word {
        Word::from_pairs(
            self.exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| (i + 1, e as i64)),
        )
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

/// Prints the element in the word syntax of the group file format,
/// e.g. `g5^2 g6^1 g7^1`, or `1` for the identity.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_word(), f)
    }
}

/// A free word in the pc generators: a sequence of `(generator, exponent)`
/// pairs. Generator numbers are 1-based, matching `f1 ... fn`; exponents may
/// be any integer, including negative ones.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<(usize, i64)>,
}

impl Word {
    pub fn new() -> Word {
        Word::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, i64)>>(pairs: I) -> Word {
        Word {
            letters: pairs.into_iter().collect(),
        }
    }

    /// The single-letter word `f_gen`.
    pub fn generator(gen: usize) -> Word {
        Word::from_pairs([(gen, 1)])
    }

    pub fn push(&mut self, gen: usize, exp: i64) -> &mut Self {
        self.letters.push((gen, exp));
        self
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// True when the word has strictly increasing generators and exponents in
    /// `1..p`, i.e. it already spells a collected element.
    pub fn is_normal_form(&self, p: u32) -> bool {
        self.letters.windows(2).all(|w| w[0].0 < w[1].0) && self.letters.iter().all(|&(_, e)| e >= 1 && e < p as i64)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (k, (g, e)) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "g{g}^{e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_uses_file_syntax() {
        let e = Element::from_exponents(&[0, 0, 0, 0, 2, 1, 1]);
        assert_eq!(e.to_string(), "g5^2 g6^1 g7^1");
        assert_eq!(Element::identity(3).to_string(), "1");
    }

    #[test]
    fn ordering_is_lexicographic() {
        let a = Element::from_exponents(&[0, 2, 0]);
        let b = Element::from_exponents(&[1, 0, 0]);
        assert!(a < b);
        assert_eq!(b.leading(), Some(0));
        assert_eq!(Element::identity(3).leading(), None);
    }

    #[test]
    fn normal_form_words() {
        assert!(Word::from_pairs([(2, 1), (3, 2)]).is_normal_form(3));
        assert!(!Word::from_pairs([(3, 1), (2, 1)]).is_normal_form(3));
        assert!(!Word::from_pairs([(2, 3)]).is_normal_form(3));
        assert!(Word::new().is_normal_form(3));
    }
}
