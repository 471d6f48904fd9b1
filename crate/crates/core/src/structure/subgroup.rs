use std::fmt;

use crate::pc::{Element, PcGroup};

/// An explicitly enumerated subgroup.
///
/// `elements` is sorted in canonical (lexicographic exponent-vector) order,
/// and `gens` is a recorded generating set. Two subgroups compare equal when
/// their element sets agree, whatever generators were recorded.
#[derive(Clone)]
pub struct Subgroup {
    elements: Vec<Element>,
    gens: Vec<Element>,
}

impl Subgroup {
    /// The trivial subgroup.
    pub fn trivial(group: &PcGroup) -> Subgroup {
        Subgroup {
            elements: vec![group.identity()],
            gens: Vec::new(),
        }
    }

    /// The whole group, generated by its pc generators.
    pub fn whole(group: &PcGroup) -> Subgroup {
        Subgroup {
            elements: group.elements().collect(),
            gens: group.generators(),
        }
    }

    /// Wraps an element set already known to be a subgroup and picks a small
    /// generating set for it greedily in canonical order.
    pub fn from_elements(group: &PcGroup, mut elements: Vec<Element>) -> Subgroup {
        elements.sort_unstable();
        elements.dedup();
        let mut gens = Vec::new();
        let mut span = Subgroup::trivial(group);
        for x in &elements {
            if span.len() == elements.len() {
                break;
            }
            if !span.contains(x) {
                gens.push(*x);
                span = closure(group, &gens);
            }
        }
        assert_eq!(span.len(), elements.len(), "element set is not a subgroup");
        Subgroup { elements, gens }
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn gens(&self) -> &[Element] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Never true: a subgroup always holds the identity.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.len() <= other.len() && self.elements.iter().all(|x| other.contains(x))
    }

    /// `log_p |H|`.
    pub fn log_order(&self, p: u32) -> u32 {
        log_p(self.order(), p)
    }

    pub fn is_abelian(&self, group: &PcGroup) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(k, a)| self.gens[k + 1..].iter().all(|b| group.commute(a, b)))
    }

    /// Normal in the whole group: closed under conjugation by the pc
    /// generators.
    pub fn is_normal(&self, group: &PcGroup) -> bool {
        let conjugators = group.generators();
        self.is_normalized_by(group, &conjugators)
    }

    pub fn is_normalized_by(&self, group: &PcGroup, conjugators: &[Element]) -> bool {
        self.gens
            .iter()
            .all(|h| conjugators.iter().all(|t| self.contains(&group.conj(h, t))))
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Subgroup) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.elements.len())
            .field("gens", &self.gens)
            .finish()
    }
}

/// Prints `<g1, g2, ...>` using the recorded generators.
impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

pub(crate) fn log_p(mut order: u64, p: u32) -> u32 {
    let mut k = 0;
    while order > 1 {
        debug_assert_eq!(order % p as u64, 0, "not a power of {p}");
        order /= p as u64;
        k += 1;
    }
    k
}

/// Smallest subgroup containing `gens`, by orbit enumeration under right
/// multiplication. An empty generating set gives the trivial subgroup.
pub fn closure(group: &PcGroup, gens: &[Element]) -> Subgroup {
    let mut gens: Vec<Element> = gens.iter().copied().filter(|g| !g.is_identity()).collect();
    gens.sort_unstable();
    gens.dedup();
    let order = group.order() as usize;
    let mut seen = vec![false; order];
    let identity = group.identity();
    seen[group.index_of(&identity) as usize] = true;
    let mut elements = vec![identity];
    let mut next = 0;
    while next < elements.len() {
        let x = elements[next];
        next += 1;
        for g in &gens {
            let y = group.mul(&x, g);
            let k = group.index_of(&y) as usize;
            if !seen[k] {
                seen[k] = true;
                elements.push(y);
            }
        }
        assert!(elements.len() <= order, "closure exceeded the group order");
    }
    elements.sort_unstable();
    Subgroup { elements, gens }
}

/// Smallest subgroup containing `seeds` and normalised by `conjugators`.
pub fn normal_closure(group: &PcGroup, seeds: &[Element], conjugators: &[Element]) -> Subgroup {
    let mut gens: Vec<Element> = seeds.to_vec();
    let mut h = closure(group, &gens);
    loop {
        let fresh: Vec<Element> = h
            .gens
            .iter()
            .flat_map(|x| conjugators.iter().map(move |t| (x, t)))
            .map(|(x, t)| group.conj(x, t))
            .filter(|c| !h.contains(c))
            .collect();
        if fresh.is_empty() {
            return h;
        }
        gens.extend(fresh);
        h = closure(group, &gens);
    }
}

/// Intersection of two subgroups.
pub fn intersection(group: &PcGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let elements = a.elements.iter().copied().filter(|x| b.contains(x)).collect();
    Subgroup::from_elements(group, elements)
}

/// The subgroup `AB` generated by two subgroups.
pub fn join(group: &PcGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let gens: Vec<Element> = a.gens.iter().chain(&b.gens).copied().collect();
    let h = closure(group, &gens);
    Subgroup::from_elements(group, h.elements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn closure_of_nothing_is_trivial() {
        let g = corpus::heisenberg_27();
        let h = closure(&g, &[]);
        assert!(h.is_trivial());
        assert_eq!(h, Subgroup::trivial(&g));
    }

    #[test]
    fn closure_of_central_generator() {
        let g = corpus::heisenberg_27();
        let h = closure(&g, &[g.generator(3)]);
        assert_eq!(h.len(), 3);
        assert!(h.is_normal(&g));
        assert!(h.is_abelian(&g));
    }

    #[test]
    fn comparison_ignores_generators() {
        let g = corpus::example_group();
        let f7 = g.generator(7);
        let a = closure(&g, &[f7]);
        let b = closure(&g, &[g.pow(&f7, 2)]);
        assert_eq!(a, b);
        assert_ne!(a.gens(), b.gens());
    }

    #[test]
    fn greedy_generators_span() {
        let g = corpus::example_group();
        let phi = closure(&g, &(3..=7).map(|i| g.generator(i)).collect::<Vec<_>>());
        assert_eq!(phi.len(), 243);
        let again = Subgroup::from_elements(&g, phi.elements().to_vec());
        assert_eq!(closure(&g, again.gens()), phi);
        assert!(again.gens().len() <= 5);
    }
}
