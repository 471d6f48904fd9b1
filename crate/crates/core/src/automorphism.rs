//! Automorphisms as generator-image maps.
//!
//! A [`GenMap`] lists candidate images of `f1 ... fn`. If those images
//! satisfy every power and commutator relation, the map extends to an
//! endomorphism; if they also generate `G` it is an automorphism, and
//! [`verify`] hands back an [`Automorphism`] certificate.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::hypothesis::{check_hypotheses, eligible_witness_elements, GroupAnalysis};
use crate::pc::{Element, PcGroup, Relation};
use crate::structure::{center, centralizer_of, closure, StructureError, Subgroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutError {
    #[error("relation {0} is not preserved")]
    RelationViolated(Relation),
    #[error("generator images do not generate the group")]
    NotSurjective,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("hypotheses not satisfied: {0}")]
    HypothesesNotSatisfied(String),
    #[error("no element of order p in Z2(G) outside Z(G)")]
    NoEligibleU,
    #[error("C_G(u) has order {order}, expected index p")]
    CentralizerNotMaximal { order: u64 },
    /// A map built to satisfy every relation was rejected. Indicates a bug.
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    /// The constructed witness turned out inner; would refute the theorem.
    #[error("constructed automorphism is inner, conjugation by {t}: {dump}")]
    InnerWitnessFound { t: String, dump: String },
    #[error(transparent)]
    Structure(#[from] StructureError),
}

impl AutError {
    /// Errors that contradict a proved statement, given correct arithmetic.
    pub fn is_internal_contradiction(&self) -> bool {
        matches!(
            self,
            AutError::CertificationFailed(_) | AutError::InnerWitnessFound { .. }
        )
    }
}

/// Candidate images of the pc generators; not necessarily a homomorphism.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenMap {
    images: Vec<Element>,
}

impl GenMap {
    pub fn new(images: Vec<Element>) -> GenMap {
        GenMap { images }
    }

    pub fn identity(group: &PcGroup) -> GenMap {
        GenMap::new(group.generators())
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    /// Image of `f_i`, 1-based.
    pub fn image(&self, i: usize) -> &Element {
        &self.images[i - 1]
    }

    /// Image of `x` under the multiplicative extension of the map.
    pub fn apply(&self, group: &PcGroup, x: &Element) -> Element {
        x.exponents()
            .iter()
            .zip(&self.images)
            .fold(group.identity(), |acc, (&e, img)| {
                (0..e).fold(acc, |acc, _| group.mul(&acc, img))
            })
    }

    /// First relation the images fail, if any.
    pub fn violated_relation(&self, group: &PcGroup) -> Option<Relation> {
        let n = group.n();
        let p = group.p() as i64;
        for i in (1..=n).rev() {
            for j in 1..i {
                let lhs = group.comm(self.image(i), self.image(j));
                if lhs != self.apply(group, &group.commutator_of(i, j)) {
                    return Some(Relation::Commutator(i, j));
                }
            }
        }
        for i in 1..=n {
            if group.pow(self.image(i), p) != self.apply(group, &group.power_of(i)) {
                return Some(Relation::Power(i));
            }
        }
        None
    }
}

impl fmt::Debug for GenMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.images).finish()
    }
}

/// `f1 -> w1, f2 -> w2, ...`
impl fmt::Display for GenMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, img) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "f{} -> {img}", k + 1)?;
        }
        Ok(())
    }
}

/// A [`GenMap`] certified to be a bijective homomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    map: GenMap,
}

impl Automorphism {
    pub fn identity(group: &PcGroup) -> Automorphism {
        Automorphism {
            map: GenMap::identity(group),
        }
    }

    pub fn map(&self) -> &GenMap {
        &self.map
    }

    pub fn images(&self) -> &[Element] {
        self.map.images()
    }

    pub fn apply(&self, group: &PcGroup, x: &Element) -> Element {
        self.map.apply(group, x)
    }

    pub fn is_identity(&self, group: &PcGroup) -> bool {
        self.map == GenMap::identity(group)
    }

    pub fn into_map(self) -> GenMap {
        self.map
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.map, f)
    }
}

/// Checks every defining relation, then surjectivity by closure.
pub fn verify(group: &PcGroup, map: GenMap) -> Result<Automorphism, AutError> {
    assert_eq!(map.images.len(), group.n(), "map has the wrong number of images");
    if let Some(rel) = map.violated_relation(group) {
        return Err(AutError::RelationViolated(rel));
    }
    if closure(group, &map.images).order() != group.order() {
        return Err(AutError::NotSurjective);
    }
    Ok(Automorphism { map })
}

/// `a ∘ b`: apply `b` first.
pub fn compose(group: &PcGroup, a: &Automorphism, b: &Automorphism) -> Automorphism {
    let images = b.images().iter().map(|x| a.apply(group, x)).collect();
    Automorphism {
        map: GenMap::new(images),
    }
}

/// Least `k >= 1` with `a^k = id`.
pub fn aut_order(group: &PcGroup, a: &Automorphism) -> u64 {
    let mut power = a.clone();
    let mut k = 1;
    while !power.is_identity(group) {
        power = compose(group, a, &power);
        k += 1;
    }
    k
}

pub fn inverse(group: &PcGroup, a: &Automorphism) -> Automorphism {
    let order = aut_order(group, a);
    (1..order).fold(Automorphism::identity(group), |acc, _| compose(group, a, &acc))
}

/// Conjugation `x -> t^-1 x t`.
pub fn inner_from(group: &PcGroup, t: &Element) -> Automorphism {
    let images = group.generators().iter().map(|f| group.conj(f, t)).collect();
    Automorphism {
        map: GenMap::new(images),
    }
}

/// One representative per coset of `Z(G)`, the least element of each.
pub fn center_transversal(group: &PcGroup, center: &Subgroup) -> Vec<Element> {
    let mut covered = vec![false; group.order() as usize];
    let mut reps = Vec::new();
    for x in group.elements() {
        if covered[group.index_of(&x) as usize] {
            continue;
        }
        reps.push(x);
        for z in center.elements() {
            covered[group.index_of(&group.mul(&x, z)) as usize] = true;
        }
    }
    reps
}

/// Searches for `t` with `a = (x -> t^-1 x t)` over a transversal of `Z(G)`.
pub fn is_inner(group: &PcGroup, a: &Automorphism, center: &Subgroup) -> Option<Element> {
    let reps = center_transversal(group, center);
    let gens = group.generators();
    reps.into_par_iter()
        .find_first(|t| gens.iter().zip(a.images()).all(|(f, img)| group.conj(f, t) == *img))
}

/// True when `a` fixes every recorded generator of `h`, hence all of `h`.
pub fn fixes_elementwise(group: &PcGroup, a: &Automorphism, h: &Subgroup) -> bool {
    h.gens().iter().all(|x| a.apply(group, x) == *x)
}

/// Same question as [`fixes_elementwise`], checked on every element.
pub fn fixes_every_element(group: &PcGroup, a: &Automorphism, h: &Subgroup) -> bool {
    h.elements().iter().all(|x| a.apply(group, x) == *x)
}

fn dump(group: &PcGroup, parts: &[(&str, String)]) -> String {
    let mut s = format!("group {} (p = {}, n = {})", group.name(), group.p(), group.n());
    for (k, v) in parts {
        s.push_str(&format!("; {k} = {v}"));
    }
    s
}

/// Extends `g -> g u`, `m -> m` (`m` in `M`) to an automorphism.
///
/// Requires `M` maximal, `g` outside `M`, `u` in `Z(M)` and `(g u)^p = g^p`.
/// The result fixes `M` elementwise. Since it fixes `u`, its `k`-th power
/// sends `g` to `g u^k`, so its order is the order of `u`: `p` when
/// `u^p = 1`, the identity when `u = 1`. For `p = 2` the conditions allow
/// `u` of order 4 (take `D8`, `M` the rotations, `u` a quarter turn).
pub fn extend_to_automorphism(
    group: &PcGroup,
    maximal: &Subgroup,
    g: &Element,
    u: &Element,
) -> Result<Automorphism, AutError> {
    let p = group.p();
    let fail = |what: &str| Err(AutError::PreconditionFailed(what.to_string()));
    if maximal.order() * p as u64 != group.order() || !maximal.is_normal(group) {
        return fail("M is not a maximal subgroup");
    }
    if maximal.contains(g) {
        return fail("g lies in M");
    }
    if !maximal.contains(u) || !maximal.gens().iter().all(|m| group.commute(u, m)) {
        return fail("u is not in Z(M)");
    }
    let gu = group.mul(g, u);
    if group.pow(&gu, p as i64) != group.pow(g, p as i64) {
        return fail("(gu)^p != g^p");
    }

    // f_j = m_j g^i_j with m_j in M; send it to m_j (gu)^i_j.
    let g_inv = group.inv(g);
    let mut images = Vec::with_capacity(group.n());
    for f in group.generators() {
        let mut shifted = f;
        let mut found = None;
        for i in 0..p {
            if maximal.contains(&shifted) {
                debug_assert!(found.is_none(), "coset decomposition is not unique");
                found = Some((i, shifted));
                if !cfg!(debug_assertions) {
                    break;
                }
            }
            shifted = group.mul(&shifted, &g_inv);
        }
        let (i, m) = found.expect("G/M has order p");
        images.push(group.mul(&m, &group.pow(&gu, i as i64)));
    }
    let map = GenMap::new(images);
    let certified = verify(group, map.clone()).map_err(|e| {
        AutError::CertificationFailed(dump(
            group,
            &[
                ("reason", e.to_string()),
                ("M", maximal.to_string()),
                ("g", g.to_string()),
                ("u", u.to_string()),
                ("map", map.to_string()),
            ],
        ))
    })?;
    let order = aut_order(group, &certified);
    let expected = group.element_order(u);
    if order != expected || !fixes_elementwise(group, &certified, maximal) {
        return Err(AutError::CertificationFailed(dump(
            group,
            &[
                ("reason", format!("order {order}, expected {expected}, or M not fixed")),
                ("map", certified.to_string()),
            ],
        )));
    }
    Ok(certified)
}

/// Everything the witness construction produced, plus its verification.
#[derive(Clone, Debug)]
pub struct TheoremWitness {
    pub u: Element,
    /// `C_G(u)`, a maximal subgroup.
    pub maximal: Subgroup,
    pub g: Element,
    pub automorphism: Automorphism,
    pub order: u64,
    pub non_inner: bool,
    pub fixes_frattini: bool,
}

/// Whether to insist on the theorem's hypotheses before constructing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessMode {
    /// Hypotheses must hold; an inner result is a hard error.
    Strict,
    /// Skip the hypothesis check and report non-inner-ness without insisting.
    Unchecked,
}

/// Builds the non-inner automorphism of order `p` fixing `Phi(G)`.
///
/// Takes the least `u` of order `p` in `Z_2(G)` outside `Z(G)`, sets
/// `M = C_G(u)`, picks the least pc generator `g` outside `M`, and extends
/// `g -> g u` across `M`.
pub fn construct_theorem_witness(group: &PcGroup) -> Result<TheoremWitness, AutError> {
    let analysis = GroupAnalysis::new(group)?;
    construct_witness(group, &analysis, WitnessMode::Strict)
}

pub fn construct_witness(
    group: &PcGroup,
    analysis: &GroupAnalysis,
    mode: WitnessMode,
) -> Result<TheoremWitness, AutError> {
    let p = group.p();
    if mode == WitnessMode::Strict {
        let report = check_hypotheses(group, analysis);
        if !report.theorem_applicable {
            let mut failed = Vec::new();
            for (ok, name) in [
                (report.p_odd, "p odd"),
                (report.nonabelian, "non-abelian"),
                (report.monolithic, "monolithic"),
                (report.all_maximals_nonabelian, "all maximal subgroups non-abelian"),
                (report.zm_condition, "[Z(M), g] <= Z(G)"),
            ] {
                if !ok {
                    failed.push(name);
                }
            }
            return Err(AutError::HypothesesNotSatisfied(failed.join(", ")));
        }
    }
    let u = *eligible_witness_elements(group, analysis)
        .first()
        .ok_or(AutError::NoEligibleU)?;
    let maximal = centralizer_of(group, &u);
    if maximal.order() * p as u64 != group.order() {
        return Err(AutError::CentralizerNotMaximal { order: maximal.order() });
    }
    let g = group
        .generators()
        .into_iter()
        .find(|f| !maximal.contains(f))
        .expect("a proper subgroup misses some pc generator");
    let gu = group.mul(&g, &u);
    if group.pow(&gu, p as i64) != group.pow(&g, p as i64) {
        return Err(AutError::CertificationFailed(dump(
            group,
            &[
                ("reason", "(gu)^p != g^p".into()),
                ("g", g.to_string()),
                ("u", u.to_string()),
            ],
        )));
    }
    let automorphism = extend_to_automorphism(group, &maximal, &g, &u)?;
    let order = aut_order(group, &automorphism);
    let inner = is_inner(group, &automorphism, &analysis.center);
    let fixes_frattini = fixes_elementwise(group, &automorphism, analysis.frattini());
    if mode == WitnessMode::Strict {
        if let Some(t) = inner {
            return Err(AutError::InnerWitnessFound {
                t: t.to_string(),
                dump: dump(
                    group,
                    &[
                        ("u", u.to_string()),
                        ("M", maximal.to_string()),
                        ("g", g.to_string()),
                        ("map", automorphism.to_string()),
                    ],
                ),
            });
        }
        if order != p as u64 || !fixes_frattini {
            return Err(AutError::CertificationFailed(dump(
                group,
                &[
                    ("reason", format!("order {order}, fixes Phi(G): {fixes_frattini}")),
                    ("map", automorphism.to_string()),
                ],
            )));
        }
    }
    Ok(TheoremWitness {
        u,
        maximal,
        g,
        automorphism,
        order,
        non_inner: inner.is_none(),
        fixes_frattini,
    })
}

/// All automorphisms `inner_from(t)` for `t` over a transversal of `Z(G)`.
pub fn inner_automorphisms(group: &PcGroup) -> Vec<Automorphism> {
    let z = center(group);
    center_transversal(group, &z)
        .iter()
        .map(|t| inner_from(group, t))
        .collect()
}
