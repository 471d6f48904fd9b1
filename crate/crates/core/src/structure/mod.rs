//! Subgroup-level computations on explicitly enumerated subgroups.
//!
//! Everything here works on full element sets, so it is meant for desk-scale
//! groups (those small enough to carry an action table, see
//! [`ensure_enumerable`]).

mod frattini;
mod series;
mod subgroup;

use thiserror::Error;

use crate::pc::{Element, PcGroup, ACTION_TABLE_CAP};

pub use frattini::{frattini, frattini_of, maximal_subgroups, maximal_subgroups_from, rank, FrattiniQuotient};
pub use series::{lower_central_series, nilpotency_class, upper_central_series, CentralSeries, SeriesKind};
pub use subgroup::{closure, intersection, join, normal_closure, Subgroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("group of order {0} is too large to enumerate")]
    TooLarge(u64),
    #[error("subgroup is not abelian")]
    NotAbelian,
    #[error("subgroup is not normal")]
    NotNormal,
}

/// Fails unless the group is small enough for element enumeration.
pub fn ensure_enumerable(group: &PcGroup) -> Result<(), StructureError> {
    match group.order_u64() {
        Some(order) if order <= ACTION_TABLE_CAP => Ok(()),
        Some(order) => Err(StructureError::TooLarge(order)),
        None => Err(StructureError::TooLarge(u64::MAX)),
    }
}

/// `Z(G)`: elements commuting with every pc generator.
pub fn center(group: &PcGroup) -> Subgroup {
    centralizer(group, &Subgroup::whole(group))
}

/// `C_G(H)`, tested against the recorded generators of `H`.
pub fn centralizer(group: &PcGroup, h: &Subgroup) -> Subgroup {
    centralizer_of_set(group, h.gens())
}

/// `C_G(x)` for a single element.
pub fn centralizer_of(group: &PcGroup, x: &Element) -> Subgroup {
    centralizer_of_set(group, std::slice::from_ref(x))
}

fn centralizer_of_set(group: &PcGroup, xs: &[Element]) -> Subgroup {
    let elements = group
        .elements()
        .filter(|g| xs.iter().all(|x| group.commute(g, x)))
        .collect();
    Subgroup::from_elements(group, elements)
}

/// `C_G(H)` tested against every element of `H`. Slow; exists to cross-check
/// [`centralizer`].
pub fn centralizer_exhaustive(group: &PcGroup, h: &Subgroup) -> Subgroup {
    centralizer_of_set(group, h.elements())
}

/// `Z(H)` computed with `H` as the ambient group.
pub fn center_of(group: &PcGroup, h: &Subgroup) -> Subgroup {
    let elements = h
        .elements()
        .iter()
        .copied()
        .filter(|x| h.gens().iter().all(|g| group.commute(x, g)))
        .collect();
    Subgroup::from_elements(group, elements)
}

/// `[A, B]`, the subgroup generated by all `[a, b]`.
///
/// Computed as the normal closure in `<A, B>` of the commutators of the
/// recorded generators, which generates the same subgroup.
pub fn commutator_subgroup(group: &PcGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let seeds: Vec<Element> = a
        .gens()
        .iter()
        .flat_map(|x| b.gens().iter().map(move |y| (x, y)))
        .map(|(x, y)| group.comm(x, y))
        .collect();
    let conjugators: Vec<Element> = a.gens().iter().chain(b.gens()).copied().collect();
    let h = normal_closure(group, &seeds, &conjugators);
    Subgroup::from_elements(group, h.elements().to_vec())
}

/// `[A, B]` straight from the definition: closure of every `[a, b]`.
pub fn commutator_subgroup_exhaustive(group: &PcGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut comms: Vec<Element> = a
        .elements()
        .iter()
        .flat_map(|x| b.elements().iter().map(move |y| (x, y)))
        .map(|(x, y)| group.comm(x, y))
        .collect();
    comms.sort_unstable();
    comms.dedup();
    let h = closure(group, &comms);
    Subgroup::from_elements(group, h.elements().to_vec())
}

/// `G' = [G, G]`.
pub fn derived(group: &PcGroup) -> Subgroup {
    let g = Subgroup::whole(group);
    commutator_subgroup(group, &g, &g)
}

/// `G^p`: the subgroup generated by all `p`-th powers.
pub fn agemo(group: &PcGroup) -> Subgroup {
    agemo_of(group, &Subgroup::whole(group))
}

/// `H^p` computed inside `H`.
pub fn agemo_of(group: &PcGroup, h: &Subgroup) -> Subgroup {
    let p = group.p() as i64;
    let mut powers: Vec<Element> = h.elements().iter().map(|x| group.pow(x, p)).collect();
    powers.sort_unstable();
    powers.dedup();
    let c = closure(group, &powers);
    Subgroup::from_elements(group, c.elements().to_vec())
}

/// `Omega_1(A) = {a in A : a^p = 1}` for abelian `A`.
pub fn omega1(group: &PcGroup, a: &Subgroup) -> Result<Subgroup, StructureError> {
    if !a.is_abelian(group) {
        return Err(StructureError::NotAbelian);
    }
    let p = group.p() as i64;
    let elements = a
        .elements()
        .iter()
        .copied()
        .filter(|x| group.pow(x, p).is_identity())
        .collect();
    Ok(Subgroup::from_elements(group, elements))
}

/// Order, elementary-abelian-ness and rank of `A/B`, computed on cosets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotientFacts {
    pub order: u64,
    pub elementary_abelian: bool,
    /// Minimal number of generators of `A/B`.
    pub rank: u32,
}

pub fn quotient_facts(group: &PcGroup, a: &Subgroup, b: &Subgroup) -> Result<QuotientFacts, StructureError> {
    if !b.is_subgroup_of(a) || !b.is_normalized_by(group, a.gens()) {
        return Err(StructureError::NotNormal);
    }
    let p = group.p() as i64;
    let order = a.order() / b.order();
    let powers_inside = a.elements().iter().all(|x| b.contains(&group.pow(x, p)));
    let commutators_inside = a
        .gens()
        .iter()
        .all(|x| a.gens().iter().all(|y| b.contains(&group.comm(x, y))));
    // d(A/B) = log_p |A / A^p [A, A] B|
    let mut gens: Vec<Element> = b.gens().to_vec();
    gens.extend(agemo_of(group, a).gens());
    gens.extend(commutator_subgroup(group, a, a).gens());
    let frattini_mod_b = closure(group, &gens);
    Ok(QuotientFacts {
        order,
        elementary_abelian: powers_inside && commutators_inside,
        rank: subgroup::log_p(a.order() / frattini_mod_b.order(), group.p()),
    })
}
