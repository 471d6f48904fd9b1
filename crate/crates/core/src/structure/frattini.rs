use crate::pc::{Element, PcGroup};

use super::subgroup::log_p;
use super::{agemo_of, closure, commutator_subgroup, Subgroup};

/// `Phi(G) = G^p G'`.
pub fn frattini(group: &PcGroup) -> Subgroup {
    frattini_of(group, &Subgroup::whole(group))
}

/// `Phi(H) = H^p [H, H]`, computed inside `H`.
pub fn frattini_of(group: &PcGroup, h: &Subgroup) -> Subgroup {
    let mut gens = agemo_of(group, h).gens().to_vec();
    gens.extend(commutator_subgroup(group, h, h).gens());
    let c = closure(group, &gens);
    Subgroup::from_elements(group, c.elements().to_vec())
}

/// `d(H) = log_p |H / Phi(H)|`.
pub fn rank(group: &PcGroup, h: &Subgroup) -> u32 {
    log_p(h.order() / frattini_of(group, h).order(), group.p())
}

/// The elementary abelian quotient `G / Phi(G)` as coordinates in `F_p^d`.
#[derive(Clone, Debug)]
pub struct FrattiniQuotient {
    p: u32,
    frattini: Subgroup,
    basis: Vec<Element>,
    /// `coords[index(x) * d ..][..d]` are the coordinates of `x`.
    coords: Vec<u8>,
}

impl FrattiniQuotient {
    pub fn new(group: &PcGroup) -> FrattiniQuotient {
        let frattini = frattini(group);
        let mut basis = Vec::new();
        let mut span = frattini.clone();
        for f in group.generators() {
            if !span.contains(&f) {
                basis.push(f);
                let mut gens = frattini.gens().to_vec();
                gens.extend(&basis);
                span = closure(group, &gens);
            }
        }
        assert_eq!(span.order(), group.order());
        let d = basis.len();
        let p = group.p();
        let mut coords = vec![0u8; group.order() as usize * d];
        let mut c = vec![0u8; d];
        loop {
            let rep = basis.iter().zip(&c).fold(group.identity(), |acc, (b, &e)| {
                group.mul(&acc, &group.pow(b, e as i64))
            });
            for phi in frattini.elements() {
                let k = group.index_of(&group.mul(&rep, phi)) as usize;
                coords[k * d..(k + 1) * d].copy_from_slice(&c);
            }
            if !increment(&mut c, p) {
                break;
            }
        }
        FrattiniQuotient {
            p,
            frattini,
            basis,
            coords,
        }
    }

    pub fn frattini(&self) -> &Subgroup {
        &self.frattini
    }

    /// Lifts of a basis of `G / Phi(G)`, chosen among the pc generators.
    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn coordinates<'a>(&'a self, group: &PcGroup, x: &Element) -> &'a [u8] {
        let d = self.basis.len();
        let k = group.index_of(x) as usize;
        &self.coords[k * d..(k + 1) * d]
    }

    /// True when the images of `xs` in `G / Phi(G)` are linearly independent.
    pub fn independent(&self, group: &PcGroup, xs: &[Element]) -> bool {
        let rows: Vec<Vec<u8>> = xs.iter().map(|x| self.coordinates(group, x).to_vec()).collect();
        rank_mod_p(rows, self.p) == xs.len()
    }

    /// True when `xs` generate `G` (Burnside basis theorem).
    pub fn generates(&self, group: &PcGroup, xs: &[Element]) -> bool {
        let rows: Vec<Vec<u8>> = xs.iter().map(|x| self.coordinates(group, x).to_vec()).collect();
        rank_mod_p(rows, self.p) == self.rank()
    }
}

/// Odometer over `F_p^d`; false once it wraps to zero.
fn increment(c: &mut [u8], p: u32) -> bool {
    for slot in c.iter_mut().rev() {
        *slot += 1;
        if (*slot as u32) < p {
            return true;
        }
        *slot = 0;
    }
    false
}

fn rank_mod_p(mut rows: Vec<Vec<u8>>, p: u32) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inverse_mod(rows[rank][col] as u32, p);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let factor = row[col] as u32 * inv % p;
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    let sub = factor * y as u32 % p;
                    *x = ((*x as u32 + p - sub) % p) as u8;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn inverse_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| a * x % p == 1).expect("zero has no inverse")
}

/// All maximal subgroups, as kernels of the non-zero functionals on
/// `G / Phi(G)`. Functionals are normalised to leading coefficient 1 and
/// taken in lexicographic order, so the output order is deterministic.
pub fn maximal_subgroups(group: &PcGroup) -> Vec<Subgroup> {
    let quotient = FrattiniQuotient::new(group);
    maximal_subgroups_from(group, &quotient)
}

pub fn maximal_subgroups_from(group: &PcGroup, quotient: &FrattiniQuotient) -> Vec<Subgroup> {
    let d = quotient.rank();
    let p = group.p();
    let mut out = Vec::new();
    let mut lambda = vec![0u8; d];
    while increment(&mut lambda, p) {
        if lambda.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let elements = group
            .elements()
            .filter(|x| {
                let c = quotient.coordinates(group, x);
                c.iter().zip(&lambda).map(|(&a, &b)| a as u32 * b as u32).sum::<u32>() % p == 0
            })
            .collect();
        out.push(Subgroup::from_elements(group, elements));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::structure::intersection;

    #[test]
    fn ranks() {
        assert_eq!(rank(&corpus::cyclic_9(), &Subgroup::whole(&corpus::cyclic_9())), 1);
        let h = corpus::heisenberg_27();
        assert_eq!(rank(&h, &Subgroup::whole(&h)), 2);
    }

    #[test]
    fn cyclic_has_one_maximal() {
        let g = corpus::cyclic_9();
        let ms = maximal_subgroups(&g);
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0], closure(&g, &[g.generator(2)]));
    }

    #[test]
    fn heisenberg_maximals_are_abelian() {
        let g = corpus::heisenberg_27();
        let ms = maximal_subgroups(&g);
        assert_eq!(ms.len(), 4);
        for m in &ms {
            assert_eq!(m.len(), 9);
            assert!(m.is_abelian(&g));
            assert!(m.is_normal(&g));
        }
    }

    #[test]
    fn frattini_is_intersection_of_maximals() {
        for g in corpus::all() {
            let ms = maximal_subgroups(&g);
            let meet = ms
                .iter()
                .skip(1)
                .fold(ms[0].clone(), |acc, m| intersection(&g, &acc, m));
            assert_eq!(meet, frattini(&g), "{}", g.name());
        }
    }

    #[test]
    fn generation_test() {
        let g = corpus::heisenberg_27();
        let q = FrattiniQuotient::new(&g);
        assert!(q.generates(&g, &[g.generator(1), g.generator(2)]));
        assert!(!q.generates(&g, &[g.generator(1), g.generator(3)]));
        assert!(q.independent(&g, &[g.element(&[1, 1, 0]), g.element(&[1, 2, 2])]));
        assert!(!q.independent(&g, &[g.element(&[1, 1, 0]), g.element(&[2, 2, 1])]));
    }

    #[test]
    fn rank_mod_p_small() {
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![2, 4]], 5), 1);
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![2, 1]], 3), 1);
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![1, 1]], 3), 2);
    }
}
