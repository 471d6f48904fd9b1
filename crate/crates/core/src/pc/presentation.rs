use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::element::{Word, MAX_GENERATORS};
use super::group::PcGroup;

/// Largest prime accepted for a presentation.
pub const MAX_PRIME: u32 = 97;

/// How a non-minimal generator was introduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Definition {
    /// `f_i := f_j^p`
    Power(usize),
    /// `f_i := [f_j, f_k]`
    Commutator(usize, usize),
}

impl fmt::Display for Definition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Definition::Power(j) => write!(f, "pow {j}"),
            Definition::Commutator(j, k) => write!(f, "comm {j} {k}"),
        }
    }
}

/// Names one defining relation of a presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// `f_i^p = w_i`
    Power(usize),
    /// `[f_i, f_j] = w_ij` with `i > j`
    Commutator(usize, usize),
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Power(i) => write!(f, "pow {i}"),
            Relation::Commutator(i, j) => write!(f, "comm {i} {j}"),
        }
    }
}

/// The local consistency test that failed, with 1-based generator numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConsistencyCheck {
    /// `(f_k f_j) f_i` vs `f_k (f_j f_i)`, `k > j > i`
    Associativity(usize, usize, usize),
    /// `f_i (f_i^p)` vs `(f_i^p) f_i`
    PowerSelf(usize),
    /// `(f_j^p) f_i` vs `f_j^(p-1) (f_j f_i)`, `j > i`
    PowerLeft(usize, usize),
    /// `f_j (f_i^p)` vs `(f_j f_i) f_i^(p-1)`, `j > i`
    PowerRight(usize, usize),
}

impl fmt::Display for ConsistencyCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ConsistencyCheck::Associativity(k, j, i) => {
                write!(f, "(f{k} f{j}) f{i} != f{k} (f{j} f{i})")
            }
            ConsistencyCheck::PowerSelf(i) => write!(f, "f{i} (f{i}^p) != (f{i}^p) f{i}"),
            ConsistencyCheck::PowerLeft(j, i) => write!(f, "(f{j}^p) f{i} != f{j}^(p-1) (f{j} f{i})"),
            ConsistencyCheck::PowerRight(j, i) => write!(f, "f{j} (f{i}^p) != (f{j} f{i}) f{i}^(p-1)"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PcError {
    #[error("p = {0} is not a prime")]
    NotPrime(u32),
    #[error("p = {0} exceeds the supported maximum of {MAX_PRIME}")]
    PrimeTooLarge(u32),
    #[error("generator count {0} outside 1..={MAX_GENERATORS}")]
    GeneratorCount(usize),
    #[error("generator f{0} does not exist")]
    GeneratorOutOfRange(usize),
    #[error("relation {0} is not written in collected normal form")]
    NotNormalForm(Relation),
    #[error("relation {0} mentions a generator of too small index")]
    BadWeight(Relation),
    #[error("relation {0} given twice")]
    DuplicateRelation(Relation),
    #[error("bad definition of f{generator}: {reason}")]
    BadDefinition { generator: usize, reason: String },
    #[error("inconsistent presentation: {0}")]
    ConsistencyViolation(ConsistencyCheck),
}

/// A power-commutator presentation as written by a user, before validation.
///
/// Generators are numbered `1..=n`. Relations not given explicitly default to
/// `f_i^p = 1` and `[f_i, f_j] = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    pub name: String,
    pub p: u32,
    pub n: usize,
    pub(crate) powers: BTreeMap<usize, Word>,
    pub(crate) commutators: BTreeMap<(usize, usize), Word>,
    pub(crate) definitions: BTreeMap<usize, Definition>,
}

impl PcPresentation {
    pub fn new(name: impl Into<String>, p: u32, n: usize) -> PcPresentation {
        PcPresentation {
            name: name.into(),
            p,
            n,
            powers: BTreeMap::new(),
            commutators: BTreeMap::new(),
            definitions: BTreeMap::new(),
        }
    }

    /// Sets `f_i^p = word`.
    pub fn power(mut self, i: usize, word: Word) -> Self {
        self.powers.insert(i, word);
        self
    }

    /// Sets `[f_i, f_j] = word` for `i > j`.
    pub fn commutator(mut self, i: usize, j: usize, word: Word) -> Self {
        self.commutators.insert((i, j), word);
        self
    }

    pub fn define(mut self, i: usize, def: Definition) -> Self {
        self.definitions.insert(i, def);
        self
    }

    pub fn power_relation(&self, i: usize) -> Option<&Word> {
        self.powers.get(&i)
    }

    pub fn commutator_relation(&self, i: usize, j: usize) -> Option<&Word> {
        self.commutators.get(&(i, j))
    }

    pub fn definition(&self, i: usize) -> Option<Definition> {
        self.definitions.get(&i).copied()
    }

    pub fn power_relations(&self) -> impl Iterator<Item = (usize, &Word)> {
        self.powers.iter().map(|(&i, w)| (i, w))
    }

    pub fn commutator_relations(&self) -> impl Iterator<Item = ((usize, usize), &Word)> {
        self.commutators.iter().map(|(&k, w)| (k, w))
    }

    pub fn definitions(&self) -> impl Iterator<Item = (usize, Definition)> + '_ {
        self.definitions.iter().map(|(&i, &d)| (i, d))
    }

    /// Number of generators without a definition. When definitions are
    /// present these are exactly `f_1 ... f_d`.
    pub fn minimal_count(&self) -> usize {
        self.n - self.definitions.len()
    }

    /// Runs the structural checks and the full local consistency battery.
    pub fn validate(self) -> Result<PcGroup, PcError> {
        PcGroup::from_presentation(self)
    }

    pub(crate) fn check_structure(&self) -> Result<(), PcError> {
        if !is_prime(self.p) {
            return Err(PcError::NotPrime(self.p));
        }
        if self.p > MAX_PRIME {
            return Err(PcError::PrimeTooLarge(self.p));
        }
        if self.n == 0 || self.n > MAX_GENERATORS {
            return Err(PcError::GeneratorCount(self.n));
        }
        let in_range = |g: usize| {
            if (1..=self.n).contains(&g) {
                Ok(())
            } else {
                Err(PcError::GeneratorOutOfRange(g))
            }
        };
        let check_word = |rel: Relation, lowest: usize, w: &Word| -> Result<(), PcError> {
            for &(g, _) in w.letters() {
                in_range(g)?;
            }
            if !w.is_normal_form(self.p) {
                return Err(PcError::NotNormalForm(rel));
            }
            if w.letters().iter().any(|&(g, _)| g <= lowest) {
                return Err(PcError::BadWeight(rel));
            }
            Ok(())
        };
        for (&i, w) in &self.powers {
            in_range(i)?;
            check_word(Relation::Power(i), i, w)?;
        }
        for (&(i, j), w) in &self.commutators {
            in_range(i)?;
            in_range(j)?;
            if j >= i {
                return Err(PcError::BadWeight(Relation::Commutator(i, j)));
            }
            check_word(Relation::Commutator(i, j), i, w)?;
        }
        for (&i, &def) in &self.definitions {
            in_range(i)?;
            let bad = |reason: &str| PcError::BadDefinition {
                generator: i,
                reason: reason.to_string(),
            };
            match def {
                Definition::Power(j) => {
                    in_range(j)?;
                    if j >= i {
                        return Err(bad("defining generator must precede it"));
                    }
                }
                Definition::Commutator(j, k) => {
                    in_range(j)?;
                    in_range(k)?;
                    if j >= i || k >= i || j == k {
                        return Err(bad("defining generators must be distinct and precede it"));
                    }
                }
            }
            if i < self.n && !self.definitions.contains_key(&(i + 1)) {
                return Err(bad("undefined generators must form a prefix f1..fd"));
            }
        }
        if !self.definitions.is_empty() && self.minimal_count() == 0 {
            return Err(PcError::BadDefinition {
                generator: 1,
                reason: "f1 cannot be defined".into(),
            });
        }
        Ok(())
    }
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}
