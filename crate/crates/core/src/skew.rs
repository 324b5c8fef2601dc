//! The skew group algebra over the fraction field: finite sums
//! `sum f_w . w` acting on ring elements by `(f . w)(g) = f * w(g)`.
//! Multiplication follows `(f . v)(g . w) = (f * v(g)) . (v w)`.

use std::collections::BTreeMap;

use crate::field::Scalar;
use crate::localized::Frac;
use crate::ring::Ctx;
use crate::weyl::WeylId;

#[derive(Debug, Clone)]
pub struct Skew {
    pub coeffs: BTreeMap<WeylId, Frac>,
}

impl Skew {
    pub fn zero() -> Self {
        Skew {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn identity(ctx: &Ctx) -> Self {
        Skew::term(Frac::from_poly(ctx.one()), ctx.group.identity)
    }

    pub fn term(f: Frac, w: WeylId) -> Self {
        let mut coeffs = BTreeMap::new();
        if !f.is_zero() {
            coeffs.insert(w, f);
        }
        Skew { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> Vec<WeylId> {
        self.coeffs.keys().copied().collect()
    }

    pub fn coeff(&self, ctx: &Ctx, w: WeylId) -> Frac {
        self.coeffs
            .get(&w)
            .cloned()
            .unwrap_or_else(|| Frac::zero(ctx.nvars(), ctx.kind))
    }

    fn insert(&mut self, w: WeylId, f: Frac) {
        if f.is_zero() {
            return;
        }
        match self.coeffs.remove(&w) {
            Some(cur) => {
                let s = cur.add(&f);
                if !s.is_zero() {
                    self.coeffs.insert(w, s);
                }
            }
            None => {
                self.coeffs.insert(w, f);
            }
        }
    }

    pub fn add(&self, other: &Skew) -> Skew {
        let mut out = self.clone();
        for (w, f) in &other.coeffs {
            out.insert(*w, f.clone());
        }
        out
    }

    pub fn sub(&self, other: &Skew) -> Skew {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Skew {
        Skew {
            coeffs: self.coeffs.iter().map(|(w, f)| (*w, f.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Skew {
        if c.is_zero() {
            return Skew::zero();
        }
        Skew {
            coeffs: self.coeffs.iter().map(|(w, f)| (*w, f.scale(c))).collect(),
        }
    }

    /// Left multiplication by a function: `f . (this)`.
    pub fn left_mul(&self, f: &Frac) -> Skew {
        let mut out = Skew::zero();
        for (w, g) in &self.coeffs {
            out.insert(*w, f.mul(g));
        }
        out
    }

    /// Composition: `self` applied after `other`.
    pub fn compose(&self, ctx: &Ctx, other: &Skew) -> Skew {
        let mut out = Skew::zero();
        for (v, f) in &self.coeffs {
            for (w, g) in &other.coeffs {
                let vw = ctx.group.compose(*v, *w);
                out.insert(vw, f.mul(&g.w_act(ctx, *v)));
            }
        }
        out
    }

    /// Apply to a ring-element fraction.
    pub fn apply(&self, ctx: &Ctx, g: &Frac) -> Frac {
        let mut acc = Frac::zero(ctx.nvars(), ctx.kind);
        for (w, f) in &self.coeffs {
            acc = acc.add(&f.mul(&g.w_act(ctx, *w)));
        }
        acc
    }

    /// Coefficient-wise equality through cross-multiplication.
    pub fn equals(&self, ctx: &Ctx, other: &Skew) -> bool {
        let keys: std::collections::BTreeSet<WeylId> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .collect();
        keys.into_iter()
            .all(|w| self.coeff(ctx, w).equals(&other.coeff(ctx, w)))
    }

    pub fn render(&self, ctx: &Ctx) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|(w, f)| {
                let word = &ctx.group.words[*w];
                let wname = if word.is_empty() {
                    "e".to_string()
                } else {
                    word.iter()
                        .map(|a| format!("s{}", a + 1))
                        .collect::<Vec<_>>()
                        .join("")
                };
                format!("[{}] {}", wname, f.render(ctx))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldKind, Scalar};
    use crate::root_datum::RootDatum;
    use crate::weyl::WeylGroup;

    fn ctx() -> Ctx {
        let g = WeylGroup::new(&RootDatum::named("A2").unwrap()).unwrap();
        Ctx::new(g, Scalar::from_int(0, FieldKind::Q))
    }

    #[test]
    fn composition_law() {
        let c = ctx();
        let sa = c.group.prepend_last(c.group.identity, 0);
        let sb = c.group.prepend_last(c.group.identity, 1);
        let f = Frac::from_poly(c.p_of_simple(0));
        let g = Frac::from_poly(c.p_of_simple(1));
        let x = Skew::term(f.clone(), sa);
        let y = Skew::term(g.clone(), sb);
        let xy = x.compose(&c, &y);
        // (f sa)(g sb) = f * sa(g) on sa sb.
        let expect = Skew::term(f.mul(&g.s_act(&c, 0)), c.group.compose(sa, sb));
        assert!(xy.equals(&c, &expect));
        // Associativity on a sample.
        let z = Skew::identity(&c).add(&Skew::term(f, sb));
        let lhs = x.compose(&c, &y).compose(&c, &z);
        let rhs = x.compose(&c, &y.compose(&c, &z));
        assert!(lhs.equals(&c, &rhs));
    }

    #[test]
    fn application_matches_composition() {
        let c = ctx();
        let sa = c.group.prepend_last(c.group.identity, 0);
        let x = Skew::term(Frac::from_poly(c.p_of_simple(1)), sa);
        let g = Frac::from_poly(c.p_of_simple(0).add(&c.one()));
        let applied = x.apply(&c, &g);
        let viamul = x
            .compose(&c, &Skew::term(g, c.group.identity))
            .coeff(&c, sa);
        assert!(applied.equals(&viamul));
    }
}
