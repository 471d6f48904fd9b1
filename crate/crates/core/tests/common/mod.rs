//! Shared helpers: seeded sampling and concrete models of the corpus groups.
//!
//! Each model is a group built without any presentation (matrices, semidirect
//! products of cyclic groups). A corpus presentation is checked by sending
//! its minimal generators into the model, deriving the other generator
//! images from the definitions, and confirming the resulting map is an
//! isomorphism.

#![allow(dead_code)]

use std::collections::HashSet;

use pgw::pc::{Definition, Element, PcGroup};
use pgw::structure::{center_of, maximal_subgroups, Subgroup};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_element(group: &PcGroup, rng: &mut impl Rng) -> Element {
    group.element_at(rng.gen_range(0..group.order()))
}

/// Every `(M, g, u)` with `u` in `Z(M)`, `g` outside `M` and `(gu)^p = g^p`.
pub fn all_triples(g: &PcGroup) -> Vec<(Subgroup, Element, Element)> {
    let p = g.p() as i64;
    let mut out = Vec::new();
    for m in maximal_subgroups(g) {
        let zm = center_of(g, &m);
        for x in g.elements().filter(|x| !m.contains(x)) {
            let xp = g.pow(&x, p);
            for u in zm.elements() {
                if g.pow(&g.mul(&x, u), p) == xp {
                    out.push((m.clone(), x, *u));
                }
            }
        }
    }
    out
}

pub fn sampled_triples(g: &PcGroup, count: usize, seed: u64) -> Vec<(Subgroup, Element, Element)> {
    let p = g.p() as i64;
    let maximals = maximal_subgroups(g);
    let centers: Vec<Subgroup> = maximals.iter().map(|m| center_of(g, m)).collect();
    let mut rng = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let k = Rng::gen_range(&mut rng, 0..maximals.len());
        let x = random_element(g, &mut rng);
        if maximals[k].contains(&x) {
            continue;
        }
        let u = *centers[k].elements().choose(&mut rng).unwrap();
        if g.pow(&g.mul(&x, &u), p) == g.pow(&x, p) {
            out.push((maximals[k].clone(), x, u));
        }
    }
    out
}

type Op<E> = Box<dyn Fn(&E, &E) -> E + Send + Sync>;

/// A finite group given by its operations on plain values.
pub struct Model<E> {
    pub name: &'static str,
    pub order: u64,
    pub identity: E,
    pub mul: Op<E>,
    /// Images of the minimal pc generators `f_1 ... f_d`.
    pub generators: Vec<E>,
}

impl<E: Copy + Eq + std::hash::Hash + std::fmt::Debug> Model<E> {
    pub fn pow(&self, x: &E, mut k: u64) -> E {
        let mut result = self.identity;
        let mut base = *x;
        while k > 0 {
            if k & 1 == 1 {
                result = (self.mul)(&result, &base);
            }
            base = (self.mul)(&base, &base);
            k >>= 1;
        }
        result
    }

    pub fn inv(&self, x: &E) -> E {
        self.pow(x, self.order - 1)
    }

    pub fn comm(&self, x: &E, y: &E) -> E {
        let left = (self.mul)(&self.inv(x), &self.inv(y));
        (self.mul)(&left, &(self.mul)(x, y))
    }

    /// Images of all pc generators, extending `generators` by definitions.
    pub fn generator_images(&self, group: &PcGroup) -> Vec<E> {
        let mut images = self.generators.clone();
        let pres = group.presentation();
        for i in images.len() + 1..=group.n() {
            let img = match pres.definition(i).expect("non-minimal generator has a definition") {
                Definition::Power(j) => self.pow(&images[j - 1], group.p() as u64),
                Definition::Commutator(j, k) => self.comm(&images[j - 1], &images[k - 1]),
            };
            images.push(img);
        }
        images
    }

    pub fn image(&self, images: &[E], x: &Element) -> E {
        x.exponents().iter().zip(images).fold(self.identity, |acc, (&e, img)| {
            (self.mul)(&acc, &self.pow(img, e as u64))
        })
    }

    /// Panics unless the normal-form evaluation map is an isomorphism onto
    /// the model.
    pub fn assert_isomorphic(&self, group: &PcGroup) {
        assert_eq!(group.order(), self.order, "{}: orders differ", self.name);
        let images = self.generator_images(group);
        let mut seen = HashSet::new();
        for x in group.elements() {
            let fx = self.image(&images, &x);
            assert!(seen.insert(fx), "{}: {x} collides with an earlier element", self.name);
            for (i, f) in group.generators().iter().enumerate() {
                let lhs = self.image(&images, &group.mul(&x, f));
                let rhs = (self.mul)(&fx, &images[i]);
                assert_eq!(lhs, rhs, "{}: image of {x} * f{} is wrong", self.name, i + 1);
            }
        }
    }
}

/// `C_n x| C_m` on pairs `(i, j)` meaning `b^i a^j`, with `a^-1 b a = b^r`.
/// `f_1 = a`, `f_2 = b`.
pub fn metacyclic(name: &'static str, n: i64, m: i64, r: i64) -> Model<(i64, i64)> {
    // a^j b^k = b^(k s^j) a^j with s = r^-1 mod n.
    let s = (1..n).find(|s| s * r % n == 1).expect("r is a unit");
    let powers: Vec<i64> = (0..m)
        .scan(1, |acc, _| {
            let v = *acc;
            *acc = *acc * s % n;
            Some(v)
        })
        .collect();
    Model {
        name,
        order: (n * m) as u64,
        identity: (0, 0),
        mul: Box::new(move |&(i, j), &(k, l)| ((i + k * powers[j as usize]) % n, (j + l) % m)),
        generators: vec![(0, 1), (1, 0)],
    }
}

pub fn cyclic_9() -> Model<(i64, i64)> {
    Model {
        name: "c9",
        order: 9,
        identity: (0, 0),
        mul: Box::new(|&(i, _), &(k, _)| ((i + k) % 9, 0)),
        generators: vec![(1, 0)],
    }
}

pub fn elementary_9() -> Model<(i64, i64)> {
    Model {
        name: "c3xc3",
        order: 9,
        identity: (0, 0),
        mul: Box::new(|&(i, j), &(k, l)| ((i + k) % 3, (j + l) % 3)),
        generators: vec![(1, 0), (0, 1)],
    }
}

/// Upper unitriangular 3x3 matrices over `F_p`, as `(a, b, c)` for
/// `[[1, a, c], [0, 1, b], [0, 0, 1]]`.
pub fn heisenberg(name: &'static str, p: i64) -> Model<(i64, i64, i64)> {
    Model {
        name,
        order: (p * p * p) as u64,
        identity: (0, 0, 0),
        mul: Box::new(move |&(a, b, c), &(x, y, z)| ((a + x) % p, (b + y) % p, (c + z + a * y) % p)),
        generators: vec![(1, 0, 0), (0, 1, 0)],
    }
}

/// `C_3 wr C_3`: `(v, j)` with `v` in `F_3^3` and `j` a cyclic shift.
/// `f_1` is the shift, `f_2` a base vector.
pub fn wreath_81() -> Model<([i64; 3], i64)> {
    fn shift(v: [i64; 3], j: i64) -> [i64; 3] {
        let j = j as usize;
        [v[(3 - j) % 3], v[(4 - j) % 3], v[(5 - j) % 3]]
    }
    Model {
        name: "c3wrc3",
        order: 81,
        identity: ([0; 3], 0),
        mul: Box::new(|&(v, j), &(w, l)| {
            let w = shift(w, j);
            ([(v[0] + w[0]) % 3, (v[1] + w[1]) % 3, (v[2] + w[2]) % 3], (j + l) % 3)
        }),
        generators: vec![([0; 3], 1), ([1, 0, 0], 0)],
    }
}

/// `D_8` as `(i, j)` meaning `r^i s^j`. `f_1 = s`, `f_2 = r`.
pub fn dihedral_8() -> Model<(i64, i64)> {
    Model {
        name: "d8",
        order: 8,
        identity: (0, 0),
        mul: Box::new(|&(i, j), &(k, l)| {
            let k = if j == 1 { (4 - k) % 4 } else { k };
            ((i + k) % 4, (j + l) % 2)
        }),
        generators: vec![(0, 1), (1, 0)],
    }
}
