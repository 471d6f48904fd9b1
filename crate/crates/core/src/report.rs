//! Run reports.
//!
//! A report is a JSON object with exactly six top-level keys: `group`,
//! `hypotheses`, `witness`, `verification`, `oracle` and `timing`. Keys are
//! sorted at every level, subgroups are described by canonical generators,
//! and all numbers are integers. Everything outside `timing` is a function
//! of the input alone.

use std::collections::BTreeMap;
use std::time::Duration;

use serde_json::{json, Value};

use crate::automorphism::TheoremWitness;
use crate::hypothesis::{GroupAnalysis, HypothesisReport};
use crate::oracle::AutCount;
use crate::pc::{Element, PcGroup};
use crate::structure::{closure, nilpotency_class, Subgroup};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunReport {
    pub group: Value,
    pub hypotheses: Value,
    pub witness: Value,
    pub verification: Value,
    pub oracle: Value,
    /// Milliseconds per phase.
    pub timing: BTreeMap<String, u64>,
}

impl RunReport {
    pub fn to_value(&self) -> Value {
        json!({
            "group": self.group,
            "hypotheses": self.hypotheses,
            "witness": self.witness,
            "verification": self.verification,
            "oracle": self.oracle,
            "timing": self.timing,
        })
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serialises");
        s.push('\n');
        s
    }

    /// Same as [`to_json`](Self::to_json) with the timing section emptied,
    /// for comparing runs.
    pub fn to_json_without_timing(&self) -> String {
        RunReport {
            timing: BTreeMap::new(),
            ..self.clone()
        }
        .to_json()
    }

    pub fn record_time(&mut self, phase: &str, elapsed: Duration) {
        self.timing.insert(format!("{phase}_ms"), elapsed.as_millis() as u64);
    }
}

/// A generating set depending only on the element set of `h`: scan elements
/// by leading generator, then canonical order, keeping each one not yet
/// generated.
pub fn canonical_generators(group: &PcGroup, h: &Subgroup) -> Vec<Element> {
    let mut order: Vec<&Element> = h.elements().iter().filter(|x| !x.is_identity()).collect();
    order.sort_by_key(|x| (x.leading(), **x));
    let mut gens = Vec::new();
    let mut span = Subgroup::trivial(group);
    for x in order {
        if span.order() == h.order() {
            break;
        }
        if !span.contains(x) {
            gens.push(*x);
            span = closure(group, &gens);
        }
    }
    gens
}

pub fn subgroup_value(group: &PcGroup, h: &Subgroup) -> Value {
    let gens: Vec<String> = canonical_generators(group, h).iter().map(Element::to_string).collect();
    json!({ "order": h.order(), "generators": gens })
}

/// Identity and structure of the group: order, class, rank, `Z(G)`,
/// `Phi(G)`, and the maximal subgroups with their centres.
pub fn group_section(group: &PcGroup, analysis: &GroupAnalysis) -> Value {
    let maximals: Vec<Value> = analysis
        .maximals
        .iter()
        .zip(&analysis.maximal_centers)
        .map(|(m, zm)| {
            json!({
                "subgroup": subgroup_value(group, m),
                "center": subgroup_value(group, zm),
                "abelian": m.is_abelian(group),
            })
        })
        .collect();
    json!({
        "name": group.name(),
        "p": group.p(),
        "n": group.n(),
        "order": group.order(),
        "class": nilpotency_class(group),
        "rank": analysis.rank(),
        "center": subgroup_value(group, &analysis.center),
        "second_center": subgroup_value(group, &analysis.second_center),
        "frattini": subgroup_value(group, analysis.frattini()),
        "maximals": maximals,
    })
}

pub fn hypotheses_section(report: &HypothesisReport) -> Value {
    serde_json::to_value(report).expect("hypothesis report serialises")
}

pub fn witness_section(group: &PcGroup, w: &TheoremWitness) -> Value {
    let images: Vec<String> = w.automorphism.images().iter().map(Element::to_string).collect();
    json!({
        "u": w.u.to_string(),
        "g": w.g.to_string(),
        "maximal": subgroup_value(group, &w.maximal),
        "images": images,
    })
}

pub fn verification_section(w: &TheoremWitness) -> Value {
    json!({
        "certified": true,
        "order": w.order,
        "non_inner": w.non_inner,
        "fixes_frattini": w.fixes_frattini,
    })
}

pub fn oracle_section(count: &AutCount, expected_inner: u64, witness_in_bucket: Option<bool>) -> Value {
    json!({
        "total": count.total,
        "inner": count.inner,
        "expected_inner": expected_inner,
        "order_p_noninner_fixing_frattini": count.order_p_noninner_fixing_frattini,
        "candidates": count.candidates,
        "witness_in_bucket": witness_in_bucket,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn top_level_keys_are_fixed_and_sorted() {
        let report = RunReport::default();
        let v = report.to_value();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(
            keys,
            ["group", "hypotheses", "oracle", "timing", "verification", "witness"]
        );
    }

    #[test]
    fn timing_is_stripped() {
        let mut report = RunReport::default();
        report.record_time("total", Duration::from_millis(12));
        assert!(report.to_json().contains("total_ms"));
        assert!(!report.to_json_without_timing().contains("total_ms"));
    }

    #[test]
    fn canonical_generators_ignore_recorded_ones() {
        let g = corpus::heisenberg_27();
        let a = crate::structure::closure(&g, &[g.element(&[0, 0, 2])]);
        let b = crate::structure::closure(&g, &[g.generator(3)]);
        assert_eq!(subgroup_value(&g, &a), subgroup_value(&g, &b));
    }
}
