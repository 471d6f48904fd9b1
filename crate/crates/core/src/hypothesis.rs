//! Hypothesis checks for the non-inner automorphism theorem and its
//! corollary, plus the intermediate facts its proof passes through.
//!
//! The theorem: a finite non-abelian monolithic p-group `G` with `p` odd, all
//! of whose maximal subgroups are non-abelian and which satisfies
//! `[Z(M), g] <= Z(G)` for every maximal `M` and `g` outside `M`, has a
//! non-inner automorphism of order `p` fixing `Phi(G)` elementwise. The
//! corollary swaps the non-abelian-maximals condition for
//! `C_G(Z(Phi(G))) = Phi(G)`.
//!
//! The diagnostics are reported, never required: the proof derives them from
//! an assumption it later contradicts, so a group meeting the hypotheses may
//! still violate some of them.

use rayon::prelude::*;
use serde::Serialize;

use crate::pc::{Element, PcGroup};
use crate::structure::{
    center, center_of, centralizer, ensure_enumerable, maximal_subgroups_from, quotient_facts, upper_central_series,
    FrattiniQuotient, StructureError, Subgroup,
};

/// The subgroups every check needs, computed once.
#[derive(Clone, Debug)]
pub struct GroupAnalysis {
    pub center: Subgroup,
    pub second_center: Subgroup,
    pub quotient: FrattiniQuotient,
    pub maximals: Vec<Subgroup>,
    /// `Z(M)` for each entry of `maximals`, computed inside `M`.
    pub maximal_centers: Vec<Subgroup>,
}

impl GroupAnalysis {
    pub fn new(group: &PcGroup) -> Result<GroupAnalysis, StructureError> {
        ensure_enumerable(group)?;
        let upper = upper_central_series(group);
        let center = upper.term(1).clone();
        let second_center = upper.terms.get(2).unwrap_or(upper.term(1)).clone();
        let quotient = FrattiniQuotient::new(group);
        let maximals = maximal_subgroups_from(group, &quotient);
        let maximal_centers = maximals.par_iter().map(|m| center_of(group, m)).collect();
        Ok(GroupAnalysis {
            center,
            second_center,
            quotient,
            maximals,
            maximal_centers,
        })
    }

    pub fn frattini(&self) -> &Subgroup {
        self.quotient.frattini()
    }

    pub fn rank(&self) -> usize {
        self.quotient.rank()
    }
}

/// A triple `(M, m, g)` with `m` in `Z(M)`, `g` outside `M` and `[m, g]`
/// outside `Z(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZmViolation {
    /// Position of `M` in the maximal subgroup list, 1-based.
    pub maximal: usize,
    pub m: String,
    pub g: String,
    pub commutator: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub z2_abelian: bool,
    pub z2_in_z_phi: bool,
    /// `Z(M) <= Z_2(G)` for each maximal subgroup, in list order.
    pub zm_in_z2: Vec<bool>,
    pub z2_mod_z_elementary: bool,
    pub rank_z2_mod_z: u32,
    pub rank_g: u32,
    /// Some element of order `p` in `Z_2(G)` lies outside `Z(G)`.
    pub omega1_z2_exceeds_center: bool,
    pub has_abelian_maximal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub p_odd: bool,
    pub nonabelian: bool,
    pub monolithic: bool,
    pub all_maximals_nonabelian: bool,
    pub zm_condition: bool,
    pub zm_counterexample: Option<ZmViolation>,
    /// `C_G(Z(Phi(G))) = Phi(G)`
    pub corollary_centralizer_condition: bool,
    pub theorem_applicable: bool,
    pub corollary_applicable: bool,
    pub diagnostics: Diagnostics,
}

/// `|Z(G)| = p`.
pub fn is_monolithic(group: &PcGroup) -> bool {
    center(group).order() == group.p() as u64
}

/// Checks `[m, g] in Z(G)` for every maximal `M`, `m` in `Z(M)` and `g`
/// outside `M`. Returns the first violation in (maximal, m, g) order.
pub fn check_zm_condition(group: &PcGroup, analysis: &GroupAnalysis) -> Option<ZmViolation> {
    let violations: Vec<Option<ZmViolation>> = analysis
        .maximals
        .par_iter()
        .zip(&analysis.maximal_centers)
        .enumerate()
        .map(|(k, (m, zm))| first_zm_violation(group, &analysis.center, k, m, zm))
        .collect();
    violations.into_iter().flatten().next()
}

fn first_zm_violation(
    group: &PcGroup,
    center: &Subgroup,
    index: usize,
    maximal: &Subgroup,
    zm: &Subgroup,
) -> Option<ZmViolation> {
    for m in zm.elements() {
        for g in group.elements().filter(|g| !maximal.contains(g)) {
            let c = group.comm(m, &g);
            if !center.contains(&c) {
                return Some(ZmViolation {
                    maximal: index + 1,
                    m: m.to_string(),
                    g: g.to_string(),
                    commutator: c.to_string(),
                });
            }
        }
    }
    None
}

/// Fills every field of the report, for the theorem and the corollary alike.
pub fn check_hypotheses(group: &PcGroup, analysis: &GroupAnalysis) -> HypothesisReport {
    let p = group.p();
    let whole = Subgroup::whole(group);
    let z = &analysis.center;
    let z2 = &analysis.second_center;
    let phi = analysis.frattini();

    let p_odd = p % 2 == 1;
    let nonabelian = !whole.is_abelian(group);
    let monolithic = z.order() == p as u64;
    let has_abelian_maximal = analysis.maximals.iter().any(|m| m.is_abelian(group));
    let all_maximals_nonabelian = !has_abelian_maximal;
    let zm_counterexample = check_zm_condition(group, analysis);
    let zm_condition = zm_counterexample.is_none();

    let z_phi = center_of(group, phi);
    let corollary_centralizer_condition = centralizer(group, &z_phi) == *phi;

    let z2_mod_z = quotient_facts(group, z2, z).expect("Z(G) is normal in Z_2(G)");
    let exceeds = z2
        .elements()
        .iter()
        .any(|x| !z.contains(x) && group.pow(x, p as i64).is_identity());
    let diagnostics = Diagnostics {
        z2_abelian: z2.is_abelian(group),
        z2_in_z_phi: z2.is_subgroup_of(&z_phi),
        zm_in_z2: analysis
            .maximal_centers
            .iter()
            .map(|zm| zm.is_subgroup_of(z2))
            .collect(),
        z2_mod_z_elementary: z2_mod_z.elementary_abelian,
        rank_z2_mod_z: z2_mod_z.rank,
        rank_g: analysis.rank() as u32,
        omega1_z2_exceeds_center: exceeds,
        has_abelian_maximal,
    };

    let theorem_applicable = p_odd && nonabelian && monolithic && all_maximals_nonabelian && zm_condition;
    let corollary_applicable = p_odd && monolithic && corollary_centralizer_condition && zm_condition;
    HypothesisReport {
        p_odd,
        nonabelian,
        monolithic,
        all_maximals_nonabelian,
        zm_condition,
        zm_counterexample,
        corollary_centralizer_condition,
        theorem_applicable,
        corollary_applicable,
        diagnostics,
    }
}

pub fn check_theorem_hypotheses(group: &PcGroup) -> Result<HypothesisReport, StructureError> {
    let analysis = GroupAnalysis::new(group)?;
    Ok(check_hypotheses(group, &analysis))
}

/// Same report as [`check_theorem_hypotheses`]; read
/// `corollary_applicable` from it.
pub fn check_corollary_hypotheses(group: &PcGroup) -> Result<HypothesisReport, StructureError> {
    check_theorem_hypotheses(group)
}

/// Number of subgroups of order `p` inside `Z(G)`.
pub fn central_subgroups_of_order_p(group: &PcGroup) -> u64 {
    let z = center(group);
    let p = group.p() as u64;
    let order_p = z
        .elements()
        .iter()
        .filter(|x| !x.is_identity() && group.pow(x, p as i64).is_identity())
        .count() as u64;
    order_p / (p - 1)
}

/// Elements of order `p` in `Z_2(G)` outside `Z(G)`, in canonical order.
pub fn eligible_witness_elements(group: &PcGroup, analysis: &GroupAnalysis) -> Vec<Element> {
    let p = group.p() as i64;
    analysis
        .second_center
        .elements()
        .iter()
        .copied()
        .filter(|x| !analysis.center.contains(x) && group.pow(x, p).is_identity())
        .collect()
}
