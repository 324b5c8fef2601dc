//! The finite Weyl group: elements as integer matrices on X, lengths,
//! canonical reduced words, descent sets and inversion combinatorics.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::root_datum::{RootDatum, Vector};
#[cfg(test)]
use crate::root_datum::dot;

/// Index into [`WeylGroup::elements`].
pub type WeylId = usize;

/// A word in the simple reflections, in action order: the first letter acts
/// first, so `[a, b]` denotes the element `s_b s_a`.
pub type Word = Vec<usize>;

#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub datum: RootDatum,
    /// Matrices on X; columns are images of the basis vectors.
    pub elements: Vec<Vec<Vector>>,
    index: BTreeMap<Vec<Vector>, WeylId>,
    pub lengths: Vec<usize>,
    /// Lexicographically least reduced word per element, in action order.
    pub words: Vec<Word>,
    pub inverse: Vec<WeylId>,
    /// right_mul[w][a] = id of w * s_a (s_a acting first... see `apply`).
    succ: Vec<Vec<WeylId>>,
    pub identity: WeylId,
    pub longest: WeylId,
}

impl WeylGroup {
    pub fn new(datum: &RootDatum) -> Result<Self> {
        let dim = datum.dim;
        let id_mat: Vec<Vector> = (0..dim)
            .map(|j| {
                let mut e = vec![0i64; dim];
                e[j] = 1;
                e
            })
            .collect();
        let gens: Vec<Vec<Vector>> = (0..datum.n_simple)
            .map(|a| datum.reflection_matrix(a))
            .collect();

        let mut elements = vec![id_mat.clone()];
        let mut index = BTreeMap::new();
        index.insert(id_mat, 0usize);
        let mut frontier = vec![0usize];
        while let Some(w) = frontier.pop() {
            let wm = elements[w].clone();
            for g in &gens {
                // s_a acting after w: matrix product g * w on column vectors.
                let prod = mat_mul(g, &wm);
                if !index.contains_key(&prod) {
                    let id = elements.len();
                    index.insert(prod.clone(), id);
                    elements.push(prod);
                    frontier.push(id);
                    if elements.len() > 100_000 {
                        return Err(Error::NotFiniteType("Weyl group does not close".into()));
                    }
                }
            }
        }

        let n = elements.len();
        let mut lengths = vec![0usize; n];
        for (i, m) in elements.iter().enumerate() {
            lengths[i] = inversion_count(datum, m);
        }
        let mut succ = vec![vec![0usize; datum.n_simple]; n];
        for (i, m) in elements.iter().enumerate() {
            for (a, g) in gens.iter().enumerate() {
                let prod = mat_mul(m, g); // w * s_a: s_a acts first
                succ[i][a] = index[&prod];
            }
        }
        let mut inverse = vec![0usize; n];
        for (i, m) in elements.iter().enumerate() {
            let inv = mat_inverse(m);
            inverse[i] = index[&inv];
        }

        let mut group = WeylGroup {
            datum: datum.clone(),
            elements,
            index,
            lengths,
            words: vec![Vec::new(); n],
            inverse,
            succ,
            identity: 0,
            longest: 0,
        };
        for i in 0..n {
            group.words[i] = group.canonical_word(i);
        }
        group.longest = (0..n).max_by_key(|&i| group.lengths[i]).unwrap();
        Ok(group)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.datum.n_simple
    }

    pub fn length(&self, w: WeylId) -> usize {
        self.lengths[w]
    }

    /// w * s_a: appends `a` as the first-acting letter.
    pub fn append_first(&self, w: WeylId, a: usize) -> WeylId {
        self.succ[w][a]
    }

    /// s_a * w: `a` acts last.
    pub fn prepend_last(&self, w: WeylId, a: usize) -> WeylId {
        let inv = self.inverse[w];
        self.inverse[self.succ[inv][a]]
    }

    pub fn compose(&self, later: WeylId, first: WeylId) -> WeylId {
        // Matrix product later * first.
        let m = mat_mul(&self.elements[later], &self.elements[first]);
        self.index[&m]
    }

    pub fn from_word(&self, word: &[usize]) -> WeylId {
        let mut w = self.identity;
        for &a in word {
            w = self.prepend_last(w, a);
        }
        w
    }

    pub fn apply(&self, w: WeylId, x: &Vector) -> Vector {
        mat_apply(&self.elements[w], x)
    }

    /// Action on Y-coordinates: the transpose of the inverse, which for the
    /// perfect dot pairing used here is the transpose of `w^{-1}`.
    pub fn apply_coroot(&self, w: WeylId, y: &Vector) -> Vector {
        let inv = &self.elements[self.inverse[w]];
        // (w y)(x) = y(w^{-1} x): coordinates transform by transpose(inv).
        let dim = self.datum.dim;
        (0..dim)
            .map(|i| (0..dim).map(|j| inv[i][j] * y[j]).sum())
            .collect()
    }

    pub fn is_reduced(&self, word: &[usize]) -> bool {
        self.length(self.from_word(word)) == word.len()
    }

    /// Lexicographically least reduced word, first-acting letter first.
    fn canonical_word(&self, w: WeylId) -> Word {
        let mut out = Vec::new();
        let mut cur = w;
        while self.lengths[cur] > 0 {
            let a = (0..self.rank())
                .find(|&a| {
                    // a is a right descent iff cur(alpha_a) < 0
                    let img = self.apply(cur, &self.datum.simple_roots[a]);
                    self.datum.is_positive_combination(&img).is_none()
                })
                .expect("non-identity element has a right descent");
            out.push(a);
            cur = self.succ[cur][a];
        }
        out
    }

    /// Roots `gamma_i = s_{a_1} ... s_{a_{i-1}} (a_i)` for a word in action
    /// order (composition applies the closer reflections first).
    pub fn prefix_roots(&self, word: &[usize]) -> Vec<Vector> {
        let mut out = Vec::with_capacity(word.len());
        for (i, &a) in word.iter().enumerate() {
            let mut x = self.datum.simple_roots[a].clone();
            for &b in word[..i].iter().rev() {
                x = self.datum.reflect_root(b, &x);
            }
            out.push(x);
        }
        out
    }

    /// Roots `s_{a_n} ... s_{a_{i+1}} (a_i)`.
    pub fn suffix_roots(&self, word: &[usize]) -> Vec<Vector> {
        let mut out = Vec::with_capacity(word.len());
        for (i, &a) in word.iter().enumerate() {
            let mut x = self.datum.simple_roots[a].clone();
            for &b in word[i + 1..].iter() {
                x = self.datum.reflect_root(b, &x);
            }
            out.push(x);
        }
        out
    }

    /// Match the prefix-root sequences of two reduced words for one element.
    pub fn inversion_bijection(&self, w1: &[usize], w2: &[usize]) -> Result<Vec<usize>> {
        if !self.is_reduced(w1) || !self.is_reduced(w2) {
            return Err(Error::BadInput("words must be reduced".into()));
        }
        if self.from_word(w1) != self.from_word(w2) {
            return Err(Error::BadInput("words represent different elements".into()));
        }
        let r1 = self.prefix_roots(w1);
        let r2 = self.prefix_roots(w2);
        let mut p = Vec::with_capacity(r1.len());
        for g in &r1 {
            let j = r2
                .iter()
                .position(|h| h == g)
                .ok_or_else(|| Error::BadInput("root sequences do not match".into()))?;
            p.push(j);
        }
        Ok(p)
    }

    /// Longest element found by greedy length ascent (used as an oracle).
    pub fn longest_by_ascent(&self) -> WeylId {
        let mut w = self.identity;
        loop {
            match (0..self.rank())
                .map(|a| self.prepend_last(w, a))
                .find(|&next| self.lengths[next] > self.lengths[w])
            {
                Some(next) => w = next,
                None => return w,
            }
        }
    }

    /// Subgroup generated by the given simple reflections, as element ids.
    pub fn parabolic_subgroup(&self, gens: &[usize]) -> Vec<WeylId> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut out = vec![self.identity];
        let mut frontier = vec![self.identity];
        while let Some(w) = frontier.pop() {
            for &a in gens {
                let next = self.succ[w][a];
                if !seen[next] {
                    seen[next] = true;
                    out.push(next);
                    frontier.push(next);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

fn mat_mul(a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    // Columns of the product are a applied to columns of b.
    b.iter().map(|col| mat_apply(a, col)).collect()
}

fn mat_apply(m: &[Vector], x: &Vector) -> Vector {
    let dim = x.len();
    let mut out = vec![0i64; dim];
    for (j, col) in m.iter().enumerate() {
        if x[j] != 0 {
            for i in 0..dim {
                out[i] += col[i] * x[j];
            }
        }
    }
    out
}

fn mat_inverse(m: &[Vector]) -> Vec<Vector> {
    // Orthogonal-like integer matrices of finite order: invert by powering.
    let dim = m.len();
    let id: Vec<Vector> = (0..dim)
        .map(|j| {
            let mut e = vec![0i64; dim];
            e[j] = 1;
            e
        })
        .collect();
    let mut prev = id.clone();
    let mut cur = m.to_vec();
    while cur != id {
        let next = mat_mul(&cur, m);
        prev = cur;
        cur = next;
    }
    prev
}

fn inversion_count(datum: &RootDatum, m: &[Vector]) -> usize {
    datum
        .positive_roots
        .iter()
        .filter(|r| datum.is_positive_combination(&mat_apply(m, r)).is_none())
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(name: &str) -> WeylGroup {
        WeylGroup::new(&RootDatum::named(name).unwrap()).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(group("A1").order(), 2);
        assert_eq!(group("A2").order(), 6);
        assert_eq!(group("B2").order(), 8);
        assert_eq!(group("G2").order(), 12);
        assert_eq!(group("A3").order(), 24);
        assert_eq!(group("B3").order(), 48);
    }

    #[test]
    fn longest_element_matches_root_count() {
        for name in ["A1", "A1xA1", "A2", "B2", "G2", "A3", "B3", "C3"] {
            let g = group(name);
            let w0 = g.longest_by_ascent();
            assert_eq!(g.lengths[w0], g.datum.positive_roots.len(), "{name}");
            assert_eq!(w0, g.longest, "{name}");
        }
    }

    #[test]
    fn word_roundtrip_and_reduced() {
        let g = group("A2");
        assert_eq!(g.from_word(&[]), g.identity);
        assert!(g.is_reduced(&[0, 1, 0]));
        assert_eq!(g.length(g.from_word(&[0, 1, 0])), 3);
        assert!(!g.is_reduced(&[0, 0]));
        for w in 0..g.order() {
            assert_eq!(g.from_word(&g.words[w]), w);
            assert!(g.is_reduced(&g.words[w]));
        }
    }

    #[test]
    fn inversion_bijection_a2() {
        let g = group("A2");
        let p = g.inversion_bijection(&[0, 1, 0], &[1, 0, 1]).unwrap();
        assert_eq!(p, vec![2, 1, 0]);
        let idp = g.inversion_bijection(&[0, 1], &[0, 1]).unwrap();
        assert_eq!(idp, vec![0, 1]);
    }

    #[test]
    fn inversion_bijection_b2_reversal() {
        let g = group("B2");
        let p = g.inversion_bijection(&[0, 1, 0, 1], &[1, 0, 1, 0]).unwrap();
        assert_eq!(p, vec![3, 2, 1, 0]);
    }

    #[test]
    fn suffix_roots_exhaust_inversions() {
        for name in ["A2", "B2", "G2", "A3", "B3"] {
            let g = group(name);
            for w in 0..g.order() {
                if g.lengths[w] > 4 {
                    continue;
                }
                let word = &g.words[w];
                // Prefix roots exhaust the inversions of w, suffix roots
                // those of w^{-1}.
                for (roots, elem) in [
                    (g.prefix_roots(word), w),
                    (g.suffix_roots(word), g.inverse[w]),
                ] {
                    let mut set = std::collections::BTreeSet::new();
                    for r in &roots {
                        assert!(g.datum.is_positive_combination(r).is_some());
                        assert!(set.insert(r.clone()), "duplicate inversion root");
                    }
                    assert_eq!(set.len(), g.lengths[w]);
                    for r in &set {
                        let img = g.apply(elem, r);
                        assert!(g.datum.is_positive_combination(&img).is_none());
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_preserved() {
        let g = group("B2");
        for w in 0..g.order() {
            for i in 0..2 {
                for j in 0..2 {
                    let mut x = vec![0i64; 2];
                    x[i] = 1;
                    let mut y = vec![0i64; 2];
                    y[j] = 1;
                    let wx = g.apply(w, &x);
                    let wy = g.apply_coroot(w, &y);
                    assert_eq!(dot(&wx, &wy), dot(&x, &y));
                }
            }
        }
    }

    #[test]
    fn parabolic_subgroups() {
        let g = group("B2");
        assert_eq!(g.parabolic_subgroup(&[]).len(), 1);
        assert_eq!(g.parabolic_subgroup(&[0]).len(), 2);
        assert_eq!(g.parabolic_subgroup(&[0, 1]).len(), 8);
    }
}
