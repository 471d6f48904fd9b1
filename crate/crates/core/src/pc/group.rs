use super::element::{Element, Word};
use super::presentation::{ConsistencyCheck, Definition, PcError, PcPresentation};

/// Groups up to this order get a precomputed right-action table, which
/// turns multiplication into table walks.
pub const ACTION_TABLE_CAP: u64 = 1 << 18;

/// A validated, consistent power-commutator presentation together with its
/// arithmetic.
///
/// The value is immutable after construction and can be shared freely between
/// threads. Multiplication goes through the collector, or through the
/// right-action table when the group is small enough to have one; the
/// `*_collected` methods always use the collector.
#[derive(Clone, Debug)]
pub struct PcGroup {
    presentation: PcPresentation,
    p: u8,
    n: usize,
    /// `powers[i]` is the normal form of `f_i^p`.
    powers: Vec<Element>,
    /// `comms[i * n + j]` is the normal form of `[f_i, f_j]` for `j < i`.
    comms: Vec<Element>,
    /// For every `j` the indices `i > j` whose commutator with `f_j` is not 1.
    noncommuting_above: Vec<Vec<usize>>,
    /// `action[x * n + j]` is the index of `x * f_j`.
    action: Option<Vec<u32>>,
}

impl PcGroup {
    pub(crate) fn from_presentation(presentation: PcPresentation) -> Result<PcGroup, PcError> {
        presentation.check_structure()?;
        let n = presentation.n;
        let p = presentation.p as u8;
        let to_element = |w: &Word| {
            let mut e = Element::identity(n);
            for &(g, x) in w.letters() {
                e.exponents_mut()[g - 1] = x as u8;
            }
            e
        };
        let mut powers = vec![Element::identity(n); n];
        for (i, w) in presentation.power_relations() {
            powers[i - 1] = to_element(w);
        }
        let mut comms = vec![Element::identity(n); n * n];
        for ((i, j), w) in presentation.commutator_relations() {
            comms[(i - 1) * n + (j - 1)] = to_element(w);
        }
        let noncommuting_above = (0..n)
            .map(|j| (j + 1..n).filter(|&i| !comms[i * n + j].is_identity()).collect())
            .collect();
        let mut group = PcGroup {
            presentation,
            p,
            n,
            powers,
            comms,
            noncommuting_above,
            action: None,
        };
        group.check_consistency()?;
        group.check_definitions()?;
        if group.order_u64().is_some_and(|o| o <= ACTION_TABLE_CAP) {
            group.action = Some(group.build_action_table());
        }
        Ok(group)
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.presentation
    }

    pub fn name(&self) -> &str {
        &self.presentation.name
    }

    pub fn p(&self) -> u32 {
        self.p as u32
    }

    /// Number of pc generators.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `p^n` if it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        (self.p as u64).checked_pow(self.n as u32)
    }

    /// Group order as `p^n`. Panics past `u64`; everything enumerative in this
    /// crate lives far below that.
    pub fn order(&self) -> u64 {
        self.order_u64().expect("group order overflows u64")
    }

    pub fn has_action_table(&self) -> bool {
        self.action.is_some()
    }

    pub fn identity(&self) -> Element {
        Element::identity(self.n)
    }

    /// The pc generator `f_i`, 1-based.
    pub fn generator(&self, i: usize) -> Element {
        assert!((1..=self.n).contains(&i), "no generator f{i}");
        Element::unit(self.n, i - 1)
    }

    pub fn generators(&self) -> Vec<Element> {
        (1..=self.n).map(|i| self.generator(i)).collect()
    }

    /// Builds an element from exponents, reducing each mod `p`.
    pub fn element(&self, exps: &[u32]) -> Element {
        assert_eq!(exps.len(), self.n, "exponent vector has wrong length");
        let mut e = self.identity();
        for (slot, &x) in e.exponents_mut().iter_mut().zip(exps) {
            *slot = (x % self.p as u32) as u8;
        }
        e
    }

    /// Normal form of `f_i^p`.
    pub fn power_of(&self, i: usize) -> Element {
        self.powers[i - 1]
    }

    /// Normal form of `[f_i, f_j]` as recorded in the presentation, `i > j`.
    pub fn commutator_of(&self, i: usize, j: usize) -> Element {
        assert!(j < i);
        self.comms[(i - 1) * self.n + (j - 1)]
    }

    /// Position of `x` in the lexicographic enumeration of all elements.
    pub fn index_of(&self, x: &Element) -> u64 {
        x.exponents()
            .iter()
            .fold(0u64, |acc, &e| acc * self.p as u64 + e as u64)
    }

    pub fn element_at(&self, mut index: u64) -> Element {
        let mut e = self.identity();
        let p = self.p as u64;
        for slot in e.exponents_mut().iter_mut().rev() {
            *slot = (index % p) as u8;
            index /= p;
        }
        e
    }

    /// All `p^n` elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order()).map(move |k| self.element_at(k))
    }

    // ---- collection -------------------------------------------------------

    /// Right-multiplies `v` by the letters on `stack`, popping from the top.
    fn run_collector(&self, v: &mut Element, stack: &mut Vec<usize>) {
        let p = self.p;
        while let Some(j) = stack.pop() {
            let exps = v.exponents_mut();
            let tail_clear = exps[j + 1..].iter().all(|&e| e == 0);
            let tail_commutes = tail_clear || self.noncommuting_above[j].iter().all(|&i| exps[i] == 0);
            if tail_commutes && (exps[j] + 1 < p || tail_clear) {
                exps[j] += 1;
                if exps[j] == p {
                    exps[j] = 0;
                    push_letters_rev(stack, &self.powers[j]);
                }
                continue;
            }
            // General step: v * f_j = prefix * f_j^(e_j + 1) * (f_j^-1 tail f_j).
            let mut letters = Vec::new();
            exps[j] += 1;
            if exps[j] == p {
                exps[j] = 0;
                push_letters(&mut letters, &self.powers[j]);
            }
            for (i, slot) in exps.iter_mut().enumerate().skip(j + 1) {
                let e = std::mem::take(slot);
                let c = &self.comms[i * self.n + j];
                for _ in 0..e {
                    letters.push(i);
                    push_letters(&mut letters, c);
                }
            }
            stack.extend(letters.into_iter().rev());
        }
    }

    fn step_collected(&self, v: &mut Element, j: usize) {
        let mut stack = vec![j];
        self.run_collector(v, &mut stack);
    }

    /// `a * b` by collection, ignoring any action table.
    pub fn mul_collected(&self, a: &Element, b: &Element) -> Element {
        let mut v = *a;
        let mut stack = Vec::new();
        for (j, &e) in b.exponents().iter().enumerate() {
            for _ in 0..e {
                stack.push(j);
                self.run_collector(&mut v, &mut stack);
            }
        }
        v
    }

    /// Collects an arbitrary word to normal form. Negative exponents are
    /// handled through inverses; large exponents by repeated squaring.
    pub fn collect(&self, word: &Word) -> Element {
        let mut v = self.identity();
        for &(g, e) in word.letters() {
            assert!((1..=self.n).contains(&g), "no generator f{g}");
            let f = Element::unit(self.n, g - 1);
            let base = if e < 0 {
                self.inv_with(&f, |x, j| self.step_collected(x, j))
            } else {
                f
            };
            let power = self.pow_with(&base, e.unsigned_abs(), &|a, b| self.mul_collected(a, b));
            v = self.mul_collected(&v, &power);
        }
        v
    }

    // ---- arithmetic -------------------------------------------------------

    #[inline]
    fn step(&self, v: &mut Element, j: usize) {
        match &self.action {
            Some(table) => {
                let k = self.index_of(v) as usize;
                *v = self.element_at(table[k * self.n + j] as u64);
            }
            None => self.step_collected(v, j),
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        match &self.action {
            Some(table) => {
                let mut k = self.index_of(a) as usize;
                for (j, &e) in b.exponents().iter().enumerate() {
                    for _ in 0..e {
                        k = table[k * self.n + j] as usize;
                    }
                }
                self.element_at(k as u64)
            }
            None => self.mul_collected(a, b),
        }
    }

    fn inv_with(&self, a: &Element, step: impl Fn(&mut Element, usize)) -> Element {
        // Right-multiply a by generator powers that clear its exponents from
        // the left; the accumulated multiplier is the inverse.
        let mut r = *a;
        let mut y = self.identity();
        for i in 0..self.n {
            let e = r.exponents()[i];
            if e == 0 {
                continue;
            }
            for _ in 0..(self.p - e) {
                step(&mut r, i);
                step(&mut y, i);
            }
        }
        debug_assert!(r.is_identity());
        y
    }

    pub fn inv(&self, a: &Element) -> Element {
        self.inv_with(a, |x, j| self.step(x, j))
    }

    fn pow_with(&self, a: &Element, mut k: u64, mul: &dyn Fn(&Element, &Element) -> Element) -> Element {
        let mut result = self.identity();
        let mut base = *a;
        while k > 0 {
            if k & 1 == 1 {
                result = mul(&result, &base);
            }
            k >>= 1;
            if k > 0 {
                base = mul(&base, &base);
            }
        }
        result
    }

    /// `a^k`; negative `k` goes through the inverse.
    pub fn pow(&self, a: &Element, k: i64) -> Element {
        let base = if k < 0 { self.inv(a) } else { *a };
        self.pow_with(&base, k.unsigned_abs(), &|x, y| self.mul(x, y))
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn comm(&self, a: &Element, b: &Element) -> Element {
        let left = self.mul(&self.inv(a), &self.inv(b));
        self.mul(&left, &self.mul(a, b))
    }

    /// `t^-1 a t`.
    pub fn conj(&self, a: &Element, t: &Element) -> Element {
        self.mul(&self.mul(&self.inv(t), a), t)
    }

    pub fn commute(&self, a: &Element, b: &Element) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Least `k >= 1` with `a^k = 1`; always a power of `p`.
    pub fn element_order(&self, a: &Element) -> u64 {
        let mut order = 1;
        let mut x = *a;
        while !x.is_identity() {
            x = self.pow(&x, self.p as i64);
            order *= self.p as u64;
        }
        order
    }

    /// Exponent of the subgroup generated by the given elements' orders.
    pub fn max_order<'a>(&self, xs: impl IntoIterator<Item = &'a Element>) -> u64 {
        xs.into_iter().map(|x| self.element_order(x)).max().unwrap_or(1)
    }

    // ---- validation -------------------------------------------------------

    fn check_consistency(&self) -> Result<(), PcError> {
        let n = self.n;
        let f = |i: usize| Element::unit(n, i);
        let m = |a: &Element, b: &Element| self.mul_collected(a, b);
        let fail = |c| Err(PcError::ConsistencyViolation(c));
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    if m(&m(&f(k), &f(j)), &f(i)) != m(&f(k), &m(&f(j), &f(i))) {
                        return fail(ConsistencyCheck::Associativity(k + 1, j + 1, i + 1));
                    }
                }
            }
        }
        let below_p = |i: usize| {
            let mut e = Element::identity(n);
            e.exponents_mut()[i] = self.p - 1;
            e
        };
        for j in 0..n {
            if m(&f(j), &self.powers[j]) != m(&self.powers[j], &f(j)) {
                return fail(ConsistencyCheck::PowerSelf(j + 1));
            }
            for i in 0..j {
                let lhs = m(&self.powers[j], &f(i));
                let rhs = m(&below_p(j), &m(&f(j), &f(i)));
                if lhs != rhs {
                    return fail(ConsistencyCheck::PowerLeft(j + 1, i + 1));
                }
            }
            for i in 0..j {
                let lhs = m(&f(j), &self.powers[i]);
                let rhs = m(&m(&f(j), &f(i)), &below_p(i));
                if lhs != rhs {
                    return fail(ConsistencyCheck::PowerRight(j + 1, i + 1));
                }
            }
        }
        Ok(())
    }

    fn check_definitions(&self) -> Result<(), PcError> {
        for (i, def) in self.presentation.definitions() {
            let value = match def {
                Definition::Power(j) => self.collect(&Word::from_pairs([(j, self.p as i64)])),
                Definition::Commutator(j, k) => {
                    let (a, b) = (self.generator(j), self.generator(k));
                    let left = self.mul_collected(
                        &self.inv_with(&a, |x, g| self.step_collected(x, g)),
                        &self.inv_with(&b, |x, g| self.step_collected(x, g)),
                    );
                    self.mul_collected(&left, &self.mul_collected(&a, &b))
                }
            };
            if value != self.generator(i) {
                return Err(PcError::BadDefinition {
                    generator: i,
                    reason: format!("{def} collects to {value}, not f{i}"),
                });
            }
        }
        Ok(())
    }

    fn build_action_table(&self) -> Vec<u32> {
        let order = self.order() as usize;
        let mut table = vec![0u32; order * self.n];
        for k in 0..order {
            let x = self.element_at(k as u64);
            for j in 0..self.n {
                let mut y = x;
                self.step_collected(&mut y, j);
                table[k * self.n + j] = self.index_of(&y) as u32;
            }
        }
        table
    }
}

fn push_letters(out: &mut Vec<usize>, e: &Element) {
    for (k, &x) in e.exponents().iter().enumerate() {
        out.extend(std::iter::repeat_n(k, x as usize));
    }
}

fn push_letters_rev(stack: &mut Vec<usize>, e: &Element) {
    for (k, &x) in e.exponents().iter().enumerate().rev() {
        stack.extend(std::iter::repeat_n(k, x as usize));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(pairs: &[(usize, i64)]) -> Word {
        Word::from_pairs(pairs.iter().copied())
    }

    fn h27() -> PcGroup {
        PcPresentation::new("h27", 3, 3)
            .commutator(2, 1, w(&[(3, 1)]))
            .define(3, Definition::Commutator(2, 1))
            .validate()
            .unwrap()
    }

    fn c9() -> PcGroup {
        PcPresentation::new("c9", 3, 2)
            .power(1, w(&[(2, 1)]))
            .define(2, Definition::Power(1))
            .validate()
            .unwrap()
    }

    #[test]
    fn heisenberg_collects_f2_f1() {
        let g = h27();
        assert_eq!(g.order(), 27);
        assert_eq!(g.collect(&w(&[(2, 1), (1, 1)])), g.element(&[1, 1, 1]));
        assert_eq!(g.comm(&g.generator(2), &g.generator(1)), g.generator(3));
    }

    #[test]
    fn empty_word_is_identity() {
        let g = h27();
        assert!(g.collect(&Word::new()).is_identity());
    }

    #[test]
    fn cyclic_nine() {
        let g = c9();
        assert_eq!(g.collect(&w(&[(1, 4)])), g.element(&[1, 1]));
        assert_eq!(g.element_order(&g.generator(1)), 9);
        assert_eq!(g.element_order(&g.identity()), 1);
        assert_eq!(g.collect(&w(&[(1, -1)])), g.element(&[2, 2]));
    }

    #[test]
    fn inconsistent_presentation_is_rejected() {
        // f1^3 = f2 with f2 of order 3 but [f2, f1] = f3 makes f1 fail to
        // commute with its own power.
        let err = PcPresentation::new("bad", 3, 3)
            .power(1, w(&[(2, 1)]))
            .commutator(2, 1, w(&[(3, 1)]))
            .validate()
            .unwrap_err();
        assert!(matches!(err, PcError::ConsistencyViolation(_)), "{err:?}");
    }

    #[test]
    fn table_and_collector_agree() {
        let g = h27();
        assert!(g.has_action_table());
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(g.mul(&a, &b), g.mul_collected(&a, &b));
            }
        }
    }

    #[test]
    fn index_round_trip() {
        let g = c9();
        for (k, x) in g.elements().enumerate() {
            assert_eq!(g.index_of(&x), k as u64);
        }
    }

    #[test]
    fn negative_powers() {
        let g = h27();
        let x = g.element(&[1, 2, 0]);
        assert_eq!(g.mul(&g.pow(&x, -2), &g.pow(&x, 2)), g.identity());
        assert_eq!(g.pow(&x, 0), g.identity());
    }
}
