use crate::pc::PcGroup;

use super::{commutator_subgroup, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// `1 = Z_0 < Z_1 < ... < Z_c = G`
    Upper,
    /// `G = gamma_1 > gamma_2 > ... > gamma_{c+1} = 1`
    Lower,
}

#[derive(Clone, Debug)]
pub struct CentralSeries {
    pub kind: SeriesKind,
    pub terms: Vec<Subgroup>,
}

impl CentralSeries {
    /// Number of steps, which is the nilpotency class for either series.
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, i: usize) -> &Subgroup {
        &self.terms[i]
    }
}

/// Upper central series; `Z_{i+1} = {x : [x, f_k] in Z_i for all k}`.
pub fn upper_central_series(group: &PcGroup) -> CentralSeries {
    let gens = group.generators();
    let mut terms = vec![Subgroup::trivial(group)];
    loop {
        let last = terms.last().unwrap();
        if last.order() == group.order() {
            break;
        }
        let elements = group
            .elements()
            .filter(|x| gens.iter().all(|g| last.contains(&group.comm(x, g))))
            .collect();
        let next = Subgroup::from_elements(group, elements);
        assert!(
            next.len() > last.len(),
            "upper central series stalled; group is not nilpotent"
        );
        terms.push(next);
    }
    CentralSeries {
        kind: SeriesKind::Upper,
        terms,
    }
}

/// Lower central series; `gamma_{i+1} = [gamma_i, G]`.
pub fn lower_central_series(group: &PcGroup) -> CentralSeries {
    let whole = Subgroup::whole(group);
    let mut terms = vec![whole.clone()];
    while !terms.last().unwrap().is_trivial() {
        let next = commutator_subgroup(group, terms.last().unwrap(), &whole);
        assert!(next.len() < terms.last().unwrap().len(), "lower central series stalled");
        terms.push(next);
    }
    CentralSeries {
        kind: SeriesKind::Lower,
        terms,
    }
}

pub fn nilpotency_class(group: &PcGroup) -> usize {
    lower_central_series(group).length()
}
