//! Brute-force automorphism enumeration.
//!
//! An automorphism is fixed by the images of a minimal generating tuple.
//! The enumerator runs over every tuple of images for `f_1 ... f_d`, derives
//! the images of the remaining pc generators from their definitions, and
//! keeps the tuples whose derived map respects every relation. Inner
//! automorphisms are counted against an independently built set of
//! conjugation maps, so the oracle shares only arithmetic with
//! [`crate::automorphism`]'s inner-ness test.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::automorphism::{
    aut_order, construct_theorem_witness, fixes_elementwise, inner_from, is_inner, verify, AutError, Automorphism,
    GenMap,
};
use crate::pc::{Definition, Element, PcGroup, Relation};
use crate::structure::{center, ensure_enumerable, frattini, FrattiniQuotient, StructureError, Subgroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("generator f{0} has no definition")]
    MissingDefinitions(usize),
    #[error("{undefined} undefined generators but G/Phi(G) has rank {rank}")]
    RankMismatch { undefined: usize, rank: usize },
    #[error("enumeration exceeded its budget of {budget:?}")]
    Timeout { budget: Duration },
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("lift: {0}")]
    BadLift(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Automorphism(#[from] AutError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutCount {
    pub total: u64,
    pub inner: u64,
    pub order_p_noninner_fixing_frattini: u64,
    /// Candidate tuples that reached relation checking.
    pub candidates: u64,
    pub elapsed: Duration,
}

impl AutCount {
    /// Counts only, for comparing runs.
    pub fn tallies(&self) -> (u64, u64, u64) {
        (self.total, self.inner, self.order_p_noninner_fixing_frattini)
    }
}

#[derive(Clone, Debug)]
pub struct OracleOptions {
    /// Skip tuples that are dependent modulo `Phi(G)`.
    pub prune: bool,
    /// Worker threads; `None` uses rayon's default.
    pub jobs: Option<usize>,
    pub budget: Option<Duration>,
    /// Return every automorphism, sorted by image vector.
    pub collect: bool,
    /// Enumerate images of these elements instead of `f_1 ... f_d`. They
    /// must generate `G`; the pc generators are then rebuilt as words in them.
    pub lift: Option<Vec<Element>>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            prune: true,
            jobs: None,
            budget: None,
            collect: false,
            lift: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub count: AutCount,
    /// Present when [`OracleOptions::collect`] was set.
    pub automorphisms: Option<Vec<Automorphism>>,
}

/// How the images of all pc generators follow from the enumerated ones.
enum Derivation {
    /// `f_1 ... f_d` are enumerated; later generators come from definitions.
    Definitions { d: usize, defs: Vec<(usize, Definition)> },
    /// Basis elements are enumerated; `f_i` is the product of the listed
    /// basis elements, in order.
    Words { words: Vec<Vec<usize>> },
}

struct Search<'a> {
    group: &'a PcGroup,
    quotient: FrattiniQuotient,
    derivation: Derivation,
    /// Relations not already forced by the derivation, cheapest first.
    relations: Vec<Relation>,
    inner_set: HashSet<Vec<Element>>,
    frattini: Subgroup,
    prune: bool,
    collect: bool,
    start: Instant,
    budget: Option<Duration>,
    stop: AtomicBool,
    candidates: AtomicU64,
}

#[derive(Default)]
struct Tally {
    total: u64,
    inner: u64,
    special: u64,
    found: Vec<Automorphism>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.total += other.total;
        self.inner += other.inner;
        self.special += other.special;
        self.found.extend(other.found);
        self
    }
}

/// The set of generator-image tuples of all inner automorphisms, built by
/// conjugating with every element.
pub fn inner_image_set(group: &PcGroup) -> HashSet<Vec<Element>> {
    let gens = group.generators();
    group
        .elements()
        .map(|t| gens.iter().map(|f| group.conj(f, &t)).collect())
        .collect()
}

fn definition_derivation(group: &PcGroup, rank: usize) -> Result<Derivation, OracleError> {
    let pres = group.presentation();
    let d = pres.minimal_count();
    let mut defs = Vec::new();
    for i in 1..=group.n() {
        match pres.definition(i) {
            Some(def) => defs.push((i, def)),
            None if i > rank => return Err(OracleError::MissingDefinitions(i)),
            None => {}
        }
    }
    if d != rank {
        return Err(OracleError::RankMismatch { undefined: d, rank });
    }
    Ok(Derivation::Definitions { d, defs })
}

/// Writes each pc generator as a positive word in `basis` by breadth-first
/// search over the Cayley graph.
fn word_derivation(group: &PcGroup, basis: &[Element]) -> Result<Derivation, OracleError> {
    let order = group.order() as usize;
    let mut parent: Vec<Option<(u32, usize)>> = vec![None; order];
    let mut seen = vec![false; order];
    let mut queue = std::collections::VecDeque::new();
    seen[0] = true;
    queue.push_back(group.identity());
    while let Some(x) = queue.pop_front() {
        let kx = group.index_of(&x) as u32;
        for (b, y) in basis.iter().enumerate() {
            let z = group.mul(&x, y);
            let kz = group.index_of(&z) as usize;
            if !seen[kz] {
                seen[kz] = true;
                parent[kz] = Some((kx, b));
                queue.push_back(z);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(OracleError::BadLift("elements do not generate the group".into()));
    }
    let words = group
        .generators()
        .iter()
        .map(|f| {
            let mut word = Vec::new();
            let mut k = group.index_of(f) as usize;
            while let Some((prev, b)) = parent[k] {
                word.push(b);
                k = prev as usize;
            }
            word.reverse();
            word
        })
        .collect();
    Ok(Derivation::Words { words })
}

impl<'a> Search<'a> {
    fn enumerated_count(&self) -> usize {
        match &self.derivation {
            Derivation::Definitions { d, .. } => *d,
            Derivation::Words { words } => words.iter().flatten().copied().max().map_or(0, |m| m + 1),
        }
    }

    /// Images of all pc generators from the enumerated images.
    fn derive(&self, chosen: &[Element]) -> Vec<Element> {
        let group = self.group;
        match &self.derivation {
            Derivation::Definitions { d, defs } => {
                let mut images = Vec::with_capacity(group.n());
                images.extend_from_slice(&chosen[..*d]);
                for &(_, def) in defs {
                    let img = match def {
                        Definition::Power(j) => group.pow(&images[j - 1], group.p() as i64),
                        Definition::Commutator(j, k) => group.comm(&images[j - 1], &images[k - 1]),
                    };
                    images.push(img);
                }
                images
            }
            Derivation::Words { words } => words
                .iter()
                .map(|w| w.iter().fold(group.identity(), |acc, &b| group.mul(&acc, &chosen[b])))
                .collect(),
        }
    }

    fn respects_relations(&self, map: &GenMap) -> bool {
        let group = self.group;
        self.relations.iter().all(|rel| match *rel {
            Relation::Commutator(i, j) => {
                group.comm(map.image(i), map.image(j)) == map.apply(group, &group.commutator_of(i, j))
            }
            Relation::Power(i) => group.pow(map.image(i), group.p() as i64) == map.apply(group, &group.power_of(i)),
        })
    }

    fn tick(&self) -> bool {
        let seen = self.candidates.fetch_add(1, Ordering::Relaxed);
        if seen.is_multiple_of(4096) {
            if let Some(budget) = self.budget {
                if self.start.elapsed() > budget {
                    self.stop.store(true, Ordering::Relaxed);
                }
            }
        }
        !self.stop.load(Ordering::Relaxed)
    }

    fn consider(&self, chosen: &[Element], tally: &mut Tally) {
        let map = GenMap::new(self.derive(chosen));
        if !self.respects_relations(&map) {
            return;
        }
        let Ok(aut) = verify(self.group, map) else {
            return;
        };
        tally.total += 1;
        let inner = self.inner_set.contains(aut.images());
        if inner {
            tally.inner += 1;
        } else if aut_order(self.group, &aut) == self.group.p() as u64
            && fixes_elementwise(self.group, &aut, &self.frattini)
        {
            tally.special += 1;
        }
        if self.collect {
            tally.found.push(aut);
        }
    }

    /// Extends `chosen` by every admissible next image, recursing to depth `k`.
    fn extend(&self, chosen: &mut Vec<Element>, k: usize, tally: &mut Tally) {
        if chosen.len() == k {
            if self.tick() {
                self.consider(chosen, tally);
            }
            return;
        }
        for x in self.group.elements() {
            if self.stop.load(Ordering::Relaxed) {
                return;
            }
            chosen.push(x);
            if !self.prune || self.quotient.independent(self.group, chosen) {
                self.extend(chosen, k, tally);
            }
            chosen.pop();
        }
    }
}

/// Relations in evaluation order: those touching low generators first,
/// skipping relations that hold because they define a generator.
fn relation_order(group: &PcGroup, skip_definitions: bool) -> Vec<Relation> {
    let pres = group.presentation();
    let defined: HashSet<Relation> = if skip_definitions {
        pres.definitions()
            .map(|(_, def)| match def {
                Definition::Power(j) => Relation::Power(j),
                Definition::Commutator(j, k) => Relation::Commutator(j, k),
            })
            .collect()
    } else {
        HashSet::new()
    };
    let n = group.n();
    let mut rels = Vec::new();
    for i in 1..=n {
        for j in 1..i {
            rels.push(Relation::Commutator(i, j));
        }
        rels.push(Relation::Power(i));
    }
    rels.retain(|r| !defined.contains(r));
    rels
}

/// Counts `Aut(G)` by exhaustive search.
pub fn enumerate_automorphisms(group: &PcGroup, options: &OracleOptions) -> Result<Enumeration, OracleError> {
    ensure_enumerable(group)?;
    let start = Instant::now();
    let quotient = FrattiniQuotient::new(group);
    let (derivation, relations) = match &options.lift {
        None => (
            definition_derivation(group, quotient.rank())?,
            relation_order(group, true),
        ),
        Some(basis) => (word_derivation(group, basis)?, relation_order(group, false)),
    };
    if let Some(basis) = &options.lift {
        if options.prune && basis.len() != quotient.rank() {
            return Err(OracleError::BadLift(format!(
                "{} elements given, G/Phi(G) has rank {}",
                basis.len(),
                quotient.rank()
            )));
        }
    }
    let search = Search {
        group,
        frattini: quotient.frattini().clone(),
        quotient,
        derivation,
        relations,
        inner_set: inner_image_set(group),
        prune: options.prune,
        collect: options.collect,
        start,
        budget: options.budget,
        stop: AtomicBool::new(false),
        candidates: AtomicU64::new(0),
    };
    let k = match &options.lift {
        Some(basis) => basis.len(),
        None => search.enumerated_count(),
    };

    let run = || {
        let firsts: Vec<Element> = if k == 0 {
            Vec::new()
        } else {
            group
                .elements()
                .filter(|x| !search.prune || search.quotient.independent(group, &[*x]))
                .collect()
        };
        if k == 0 {
            let mut tally = Tally::default();
            search.extend(&mut Vec::new(), 0, &mut tally);
            return tally;
        }
        firsts
            .into_par_iter()
            .map(|x| {
                let mut tally = Tally::default();
                search.extend(&mut vec![x], k, &mut tally);
                tally
            })
            .reduce(Tally::default, Tally::merge)
    };
    let tally = match options.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    };
    if search.stop.load(Ordering::Relaxed) {
        return Err(OracleError::Timeout {
            budget: options.budget.unwrap_or_default(),
        });
    }
    let mut found = tally.found;
    found.sort_unstable();
    Ok(Enumeration {
        count: AutCount {
            total: tally.total,
            inner: tally.inner,
            order_p_noninner_fixing_frattini: tally.special,
            candidates: search.candidates.load(Ordering::Relaxed),
            elapsed: start.elapsed(),
        },
        automorphisms: options.collect.then_some(found),
    })
}

/// Outcome of [`cross_validate`].
#[derive(Clone, Debug)]
pub struct CrossValidation {
    pub count: AutCount,
    /// Whether the theorem witness was found in the special bucket; `None`
    /// when the construction does not apply.
    pub witness_in_bucket: Option<bool>,
}

/// Compares the oracle with the automorphism module.
///
/// Checks that the inner count is `|G : Z(G)|`, that [`is_inner`] agrees
/// with the oracle on every automorphism (and its witness conjugates
/// correctly), and that the theorem witness, when it exists, is among the
/// non-inner order-`p` automorphisms fixing `Phi(G)`.
pub fn cross_validate(group: &PcGroup, options: &OracleOptions) -> Result<CrossValidation, OracleError> {
    let options = OracleOptions {
        collect: true,
        ..options.clone()
    };
    let enumeration = enumerate_automorphisms(group, &options)?;
    let count = enumeration.count;
    let all = enumeration.automorphisms.expect("collected");
    let z = center(group);
    let expected_inner = group.order() / z.order();
    if count.inner != expected_inner {
        return Err(OracleError::Mismatch(format!(
            "inner count {} but |G : Z(G)| = {expected_inner}",
            count.inner
        )));
    }

    let labelled_inner: Vec<Option<Element>> = all.par_iter().map(|a| is_inner(group, a, &z)).collect();
    let mut inner_seen = 0;
    for (a, witness) in all.iter().zip(&labelled_inner) {
        if let Some(t) = witness {
            if inner_from(group, t) != *a {
                return Err(OracleError::Mismatch(format!(
                    "{a} labelled inner by {t}, which conjugates differently"
                )));
            }
            inner_seen += 1;
        }
    }
    if inner_seen != count.inner {
        return Err(OracleError::Mismatch(format!(
            "oracle counts {} inner automorphisms, is_inner finds {inner_seen}",
            count.inner
        )));
    }

    let witness_in_bucket = match construct_theorem_witness(group) {
        Ok(w) => {
            let present = all.binary_search(&w.automorphism).is_ok();
            let phi = frattini(group);
            let special = witness_is_special(group, &w.automorphism, &z, &phi);
            if !present || !special {
                return Err(OracleError::Mismatch(format!(
                    "theorem witness {} missing from the non-inner order-p bucket",
                    w.automorphism
                )));
            }
            Some(true)
        }
        Err(e) if e.is_internal_contradiction() => return Err(e.into()),
        Err(_) => None,
    };
    Ok(CrossValidation {
        count,
        witness_in_bucket,
    })
}

fn witness_is_special(group: &PcGroup, a: &Automorphism, z: &Subgroup, phi: &Subgroup) -> bool {
    is_inner(group, a, z).is_none() && aut_order(group, a) == group.p() as u64 && fixes_elementwise(group, a, phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn cyclic_nine_has_six() {
        let g = corpus::cyclic_9();
        let e = enumerate_automorphisms(&g, &OracleOptions::default()).unwrap();
        // x -> x^4 and x -> x^7 have order 3 and fix <x^3>.
        assert_eq!(e.count.tallies(), (6, 1, 2));
    }

    #[test]
    fn heisenberg_inner_count() {
        let g = corpus::heisenberg_27();
        let e = enumerate_automorphisms(&g, &OracleOptions::default()).unwrap();
        assert_eq!(e.count.inner, 9);
        // Aut(H27) for p = 3 is (Z/3)^2 x| GL(2, 3), order 9 * 48.
        assert_eq!(e.count.total, 432);
    }

    #[test]
    fn elementary_nine_is_gl2() {
        let g = corpus::elementary_9();
        let e = enumerate_automorphisms(&g, &OracleOptions::default()).unwrap();
        assert_eq!(e.count.total, 48);
    }

    #[test]
    fn pruning_does_not_change_counts() {
        for g in [
            corpus::heisenberg_27(),
            corpus::extraspecial_27_exp9(),
            corpus::wreath_81(),
        ] {
            let pruned = enumerate_automorphisms(&g, &OracleOptions::default()).unwrap();
            let full = enumerate_automorphisms(
                &g,
                &OracleOptions {
                    prune: false,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(pruned.count.tallies(), full.count.tallies(), "{}", g.name());
        }
    }

    #[test]
    fn lift_gives_same_total() {
        let g = corpus::wreath_81();
        let base = enumerate_automorphisms(&g, &OracleOptions::default()).unwrap();
        let lift = vec![g.element(&[1, 1, 0, 0]), g.element(&[1, 2, 1, 0])];
        let other = enumerate_automorphisms(
            &g,
            &OracleOptions {
                lift: Some(lift),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(base.count.tallies(), other.count.tallies());
    }

    #[test]
    fn timeout_is_reported() {
        let g = corpus::example_group();
        let err = enumerate_automorphisms(
            &g,
            &OracleOptions {
                budget: Some(Duration::ZERO),
                ..Default::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, OracleError::Timeout { .. }));
    }

    #[test]
    fn missing_definitions() {
        let text = "name x\np 3\nn 2\npow 1 = g2^1\n";
        let g = crate::format::parse(text).unwrap().group;
        assert_eq!(
            enumerate_automorphisms(&g, &OracleOptions::default()).unwrap_err(),
            OracleError::MissingDefinitions(2)
        );
    }

    #[test]
    fn cross_validation_small() {
        for g in [corpus::cyclic_9(), corpus::heisenberg_27(), corpus::wreath_81()] {
            let cv = cross_validate(&g, &OracleOptions::default()).unwrap();
            assert_eq!(cv.witness_in_bucket, None, "{}", g.name());
        }
    }
}
