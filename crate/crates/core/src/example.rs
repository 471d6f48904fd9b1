//! Published facts about `SmallGroup(3^7, 194)` and a checker for them.
//!
//! The group ships as the built-in corpus entry `sg2187_194`. Its maximal
//! subgroups, their centres and a non-inner automorphism are known in closed
//! form; [`check`] recomputes each fact from the presentation and compares
//! element sets, never generator lists.

use crate::automorphism::{aut_order, fixes_elementwise, is_inner, verify, Automorphism, GenMap};
use crate::pc::{Element, PcGroup};
use crate::structure::{center, closure, frattini, maximal_subgroups, nilpotency_class, Subgroup};

pub const ORDER: u64 = 2187;
pub const CLASS: usize = 4;
pub const AUT_ORDER: u64 = 4374;
pub const INNER_COUNT: u64 = 729;

type Exps = [u32; 7];

const F1: Exps = [1, 0, 0, 0, 0, 0, 0];
const F2: Exps = [0, 1, 0, 0, 0, 0, 0];
const F3: Exps = [0, 0, 1, 0, 0, 0, 0];
const F4: Exps = [0, 0, 0, 1, 0, 0, 0];
const F5: Exps = [0, 0, 0, 0, 1, 0, 0];
const F6: Exps = [0, 0, 0, 0, 0, 1, 0];
const F7: Exps = [0, 0, 0, 0, 0, 0, 1];

pub const CENTER: &[Exps] = &[F7];
pub const FRATTINI: &[Exps] = &[F3, F4, F5, F6, F7];

/// Generators of `M_1 ... M_4`, in the order the maximal subgroups are listed.
pub const MAXIMALS: [&[Exps]; 4] = [
    &[F1, F3, F4, F5, F6, F7],
    &[F2, F3, F4, F5, F6, F7],
    &[[1, 2, 0, 0, 0, 0, 0], F3, F4, F5, F6, F7],
    &[[1, 1, 0, 0, 0, 0, 0], F3, F4, F5, F6, F7],
];

/// Generators of `Z(M_1) ... Z(M_4)`.
pub const MAXIMAL_CENTERS: [&[Exps]; 4] = [
    &[F6, F7],
    &[F5, F7],
    &[[0, 0, 0, 0, 2, 1, 1], [0, 0, 0, 0, 0, 0, 2]],
    &[[0, 0, 0, 0, 1, 1, 2], F7],
];

/// `alpha(f_2) = f_2 f_6`; every other generator is fixed.
pub const ALPHA_F2: Exps = [0, 1, 0, 0, 0, 1, 0];

pub fn subgroup(group: &PcGroup, gens: &[Exps]) -> Subgroup {
    let gens: Vec<Element> = gens.iter().map(|e| group.element(e)).collect();
    closure(group, &gens)
}

/// The map `alpha`, uncertified.
pub fn alpha_map(group: &PcGroup) -> GenMap {
    let mut images = group.generators();
    images[1] = group.element(&ALPHA_F2);
    GenMap::new(images)
}

/// `alpha`, certified; `None` if it fails [`verify`].
pub fn alpha(group: &PcGroup) -> Option<Automorphism> {
    verify(group, alpha_map(group)).ok()
}

/// One named fact and whether the group satisfies it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fact {
    pub name: &'static str,
    pub holds: bool,
}

/// Recomputes every structural fact and the properties of `alpha`.
///
/// Hypothesis-level facts (monolithic, the `Z(M)` condition) are left to
/// [`crate::hypothesis`].
pub fn check(group: &PcGroup) -> Vec<Fact> {
    let mut facts = Vec::new();
    let mut push = |name, holds| facts.push(Fact { name, holds });
    let shape = group.p() == 3 && group.n() == 7;
    push("order is 2187", group.order() == ORDER);
    if !shape {
        return facts;
    }
    push("nilpotency class is 4", nilpotency_class(group) == CLASS);
    let z = center(group);
    push("Z(G) = <f7>", z == subgroup(group, CENTER));
    let phi = frattini(group);
    push("Phi(G) = <f3, f4, f5, f6, f7>", phi == subgroup(group, FRATTINI));
    push("Phi(G) is non-abelian", !phi.is_abelian(group));

    let maximals = maximal_subgroups(group);
    let expected: Vec<Subgroup> = MAXIMALS.iter().map(|g| subgroup(group, g)).collect();
    push("four maximal subgroups", maximals.len() == 4);
    push("maximal subgroups are M1, M2, M3, M4", maximals == expected);
    let centers_match = expected
        .iter()
        .zip(MAXIMAL_CENTERS)
        .all(|(m, zg)| crate::structure::center_of(group, m) == subgroup(group, zg));
    push("Z(M1) ... Z(M4) as listed", centers_match);
    push(
        "every maximal subgroup is non-abelian",
        maximals.iter().all(|m| !m.is_abelian(group)),
    );

    match alpha(group) {
        Some(a) => {
            push("alpha is an automorphism", true);
            push("alpha has order 3", aut_order(group, &a) == 3);
            push("alpha is non-inner", is_inner(group, &a, &z).is_none());
            push("alpha fixes Phi(G) elementwise", fixes_elementwise(group, &a, &phi));
        }
        None => push("alpha is an automorphism", false),
    }
    facts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn built_in_group_has_every_fact() {
        let facts = check(&corpus::example_group());
        assert_eq!(facts.len(), 13);
        for f in facts {
            assert!(f.holds, "{}", f.name);
        }
    }

    #[test]
    fn other_groups_fail_early() {
        let facts = check(&corpus::heisenberg_27());
        assert_eq!(
            facts,
            vec![Fact {
                name: "order is 2187",
                holds: false
            }]
        );
    }
}
