//! The interpolating coefficient ring at a fixed parameter: a polynomial
//! algebra on the X-basis in additive mode, the group ring of X (Laurent
//! polynomials) in multiplicative mode. Carries the Weyl action, evaluation
//! at weights, and the divided-difference operators.

use crate::error::{Error, Result};
use crate::field::{FieldKind, Scalar};
use crate::poly::Poly;
use crate::root_datum::{RootDatum, Vector};
use crate::weight::{Mode, Weight};
use crate::weyl::{WeylGroup, WeylId};

/// Ambient context shared by every computation: group, mode, parameter.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub group: WeylGroup,
    pub mode: Mode,
    /// Zero exactly in additive mode.
    pub h0: Scalar,
    pub kind: FieldKind,
}

impl Ctx {
    pub fn new(group: WeylGroup, h0: Scalar) -> Self {
        let kind = h0.kind();
        let mode = if h0.is_zero() {
            Mode::Additive
        } else {
            Mode::Multiplicative
        };
        Ctx {
            group,
            mode,
            h0,
            kind,
        }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.group.datum
    }

    pub fn nvars(&self) -> usize {
        self.datum().dim
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.nvars(), self.kind)
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.nvars(), self.kind)
    }

    pub fn scalar(&self, n: i64) -> Poly {
        Poly::from_int(n, self.nvars(), self.kind)
    }

    pub fn constant(&self, c: &Scalar) -> Poly {
        Poly::constant(c.clone(), self.nvars())
    }

    /// Group-like element of `x` (multiplicative mode only).
    pub fn u_of(&self, x: &Vector) -> Poly {
        assert_eq!(self.mode, Mode::Multiplicative, "U_x needs the group ring");
        let exps: Vec<i32> = x.iter().map(|&v| v as i32).collect();
        Poly::monomial(exps, Scalar::one(self.kind), self.nvars())
    }

    /// `P_x`: the X-linear generator additively, `(U_x - 1)/h0` otherwise.
    pub fn p_of(&self, x: &Vector) -> Poly {
        match self.mode {
            Mode::Additive => {
                let mut p = self.zero();
                for (j, &c) in x.iter().enumerate() {
                    if c != 0 {
                        p = p.add(
                            &Poly::var(j, self.nvars(), self.kind)
                                .scale(&Scalar::from_int(c, self.kind)),
                        );
                    }
                }
                p
            }
            Mode::Multiplicative => {
                let u = self.u_of(x);
                u.sub(&self.one()).scale(&self.h0.inv().expect("h0 nonzero"))
            }
        }
    }

    pub fn p_of_simple(&self, a: usize) -> Poly {
        self.p_of(&self.datum().simple_roots[a].clone())
    }

    /// `-P_{-a}`: equals `P_a` additively and `(1 - U_{-a})/h0`
    /// multiplicatively. This is the divisor of every divided difference.
    pub fn neg_p_neg(&self, a: usize) -> Poly {
        let neg_alpha: Vector = self.datum().simple_roots[a].iter().map(|v| -v).collect();
        self.p_of(&neg_alpha).neg()
    }

    /// Weyl action by ring automorphisms.
    pub fn w_act(&self, w: WeylId, f: &Poly) -> Poly {
        match self.mode {
            Mode::Additive => {
                let images: Vec<Poly> = (0..self.nvars())
                    .map(|j| {
                        let mut e = vec![0i64; self.nvars()];
                        e[j] = 1;
                        self.p_of(&self.group.apply(w, &e))
                    })
                    .collect();
                f.substitute_linear(&images)
            }
            Mode::Multiplicative => {
                let images: Vec<Vec<i32>> = (0..self.nvars())
                    .map(|j| {
                        let mut e = vec![0i64; self.nvars()];
                        e[j] = 1;
                        self.group
                            .apply(w, &e)
                            .iter()
                            .map(|&v| v as i32)
                            .collect()
                    })
                    .collect();
                f.substitute_monomial(&images)
            }
        }
    }

    pub fn s_act(&self, a: usize, f: &Poly) -> Poly {
        let w = self.group.prepend_last(self.group.identity, a);
        self.w_act(w, f)
    }

    /// Evaluation at a weight is a ring map to the field; the weight's mode
    /// must match the ring's.
    pub fn eval(&self, f: &Poly, l: &Weight) -> Result<Scalar> {
        if l.mode != self.mode {
            return Err(Error::ModeMismatch(
                "weight mode differs from ring mode".into(),
            ));
        }
        f.eval(&l.entries)
    }

    /// Pairing value `l(P_x)`.
    pub fn pair(&self, l: &Weight, x: &Vector) -> Result<Scalar> {
        l.eval_p(x, &self.h0)
    }

    pub fn pair_simple(&self, l: &Weight, a: usize) -> Result<Scalar> {
        self.pair(l, &self.datum().simple_roots[a].clone())
    }

    /// Mode-aware exact division; a surviving remainder is an internal error.
    pub fn exact_div(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        match self.mode {
            Mode::Additive => f.exact_div_poly(g),
            Mode::Multiplicative => f.exact_div(g),
        }
    }

    /// Demazure operator `(f - s_a f) / (1 - e^{-a})` (group ring only).
    pub fn demazure_d(&self, a: usize, f: &Poly) -> Result<Poly> {
        if self.mode != Mode::Multiplicative {
            return Err(Error::ModeMismatch("D_a needs the group ring".into()));
        }
        let neg_alpha: Vector = self.datum().simple_roots[a].iter().map(|v| -v).collect();
        let den = self.one().sub(&self.u_of(&neg_alpha));
        self.exact_div(&f.sub(&self.s_act(a, f)), &den)
    }

    /// Divided difference `(f - s_a f) / a` (symmetric algebra only).
    pub fn bgg_delta(&self, a: usize, f: &Poly) -> Result<Poly> {
        if self.mode != Mode::Additive {
            return Err(Error::ModeMismatch(
                "the additive divided difference needs the symmetric algebra".into(),
            ));
        }
        self.exact_div(&f.sub(&self.s_act(a, f)), &self.p_of_simple(a))
    }

    /// The interpolating operator `(f - s_a f) / (-P_{-a})`: the additive
    /// divided difference at parameter zero, `h0 * D_a` otherwise.
    pub fn hd(&self, a: usize, f: &Poly) -> Result<Poly> {
        self.exact_div(&f.sub(&self.s_act(a, f)), &self.neg_p_neg(a))
    }

    /// Classical Demazure operator `(f - e^{-a} s_a f) / (1 - e^{-a})`.
    pub fn classical_demazure(&self, a: usize, f: &Poly) -> Result<Poly> {
        if self.mode != Mode::Multiplicative {
            return Err(Error::ModeMismatch("needs the group ring".into()));
        }
        let neg_alpha: Vector = self.datum().simple_roots[a].iter().map(|v| -v).collect();
        let u = self.u_of(&neg_alpha);
        let den = self.one().sub(&u);
        self.exact_div(&f.sub(&u.mul(&self.s_act(a, f))), &den)
    }

    /// Multiplication operator by the group-like element of rho; conjugation
    /// by it turns `D_a` into the classical Demazure operator.
    pub fn e_rho(&self) -> Poly {
        self.u_of(&self.datum().rho.clone())
    }

    /// Monomials of total degree up to `max_deg` (absolute exponent sum in
    /// multiplicative mode). A spanning set for operator-identity checks.
    pub fn monomials_up_to(&self, max_deg: i32) -> Vec<Poly> {
        let n = self.nvars();
        let mut out = Vec::new();
        let range: Vec<i32> = match self.mode {
            Mode::Additive => (0..=max_deg).collect(),
            Mode::Multiplicative => (-max_deg..=max_deg).collect(),
        };
        let mut stack: Vec<Vec<i32>> = vec![Vec::new()];
        while let Some(partial) = stack.pop() {
            if partial.len() == n {
                let deg: i32 = partial.iter().map(|e| e.abs()).sum();
                if deg <= max_deg {
                    out.push(Poly::monomial(partial.clone(), Scalar::one(self.kind), n));
                }
                continue;
            }
            for &e in &range {
                let mut next = partial.clone();
                next.push(e);
                stack.push(next);
            }
        }
        out.sort();
        out
    }

    /// Variable names for rendering.
    pub fn var_names(&self) -> Vec<String> {
        (1..=self.nvars())
            .map(|i| match self.mode {
                Mode::Additive => format!("P{i}"),
                Mode::Multiplicative => format!("U{i}"),
            })
            .collect()
    }

    pub fn render(&self, f: &Poly) -> String {
        f.render(&self.var_names())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::RootDatum;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n, FieldKind::Q)
    }

    fn additive(name: &str) -> Ctx {
        let g = WeylGroup::new(&RootDatum::named(name).unwrap()).unwrap();
        Ctx::new(g, q(0))
    }

    fn multiplicative(name: &str, h0: i64) -> Ctx {
        let g = WeylGroup::new(&RootDatum::named(name).unwrap()).unwrap();
        Ctx::new(g, q(h0))
    }

    #[test]
    fn group_ring_law() {
        let ctx = multiplicative("A2", 1);
        let alpha = ctx.datum().simple_roots[0].clone();
        let beta = ctx.datum().simple_roots[1].clone();
        let sum: Vector = alpha.iter().zip(&beta).map(|(a, b)| a + b).collect();
        assert_eq!(ctx.u_of(&alpha).mul(&ctx.u_of(&beta)), ctx.u_of(&sum));
        // Formal group law for P.
        let lhs = ctx
            .p_of(&alpha)
            .add(&ctx.p_of(&beta))
            .add(&ctx.p_of(&alpha).mul(&ctx.p_of(&beta)).scale(&ctx.h0));
        assert_eq!(lhs, ctx.p_of(&sum));
    }

    #[test]
    fn additive_law() {
        let ctx = additive("A2");
        let alpha = ctx.datum().simple_roots[0].clone();
        let beta = ctx.datum().simple_roots[1].clone();
        let sum: Vector = alpha.iter().zip(&beta).map(|(a, b)| a + b).collect();
        assert_eq!(ctx.p_of(&alpha).add(&ctx.p_of(&beta)), ctx.p_of(&sum));
    }

    #[test]
    fn eval_is_ring_map() {
        let ctx = additive("A2");
        let l = Weight::from_root_pairings(ctx.datum(), &[q(0), q(1)]).unwrap();
        let pa = ctx.p_of_simple(0);
        let pb = ctx.p_of_simple(1);
        assert_eq!(ctx.eval(&pa, &l).unwrap(), q(0));
        assert_eq!(ctx.eval(&pb, &l).unwrap(), q(1));
        let f = pa.mul(&pb).add(&ctx.scalar(3));
        assert_eq!(ctx.eval(&f, &l).unwrap(), q(3));
    }

    #[test]
    fn action_evaluation_compatibility() {
        // (w f)(l) = f(w^{-1} l)
        for h0 in [0i64, 1] {
            let ctx = if h0 == 0 {
                additive("B2")
            } else {
                multiplicative("B2", h0)
            };
            let l = match ctx.mode {
                Mode::Additive => Weight::additive(vec![q(2), q(3)]),
                Mode::Multiplicative => Weight::multiplicative(vec![q(2), q(3)]).unwrap(),
            };
            let f = ctx
                .p_of_simple(0)
                .mul(&ctx.p_of_simple(1))
                .add(&ctx.p_of_simple(0));
            for w in 0..ctx.group.order() {
                let lhs = ctx.eval(&ctx.w_act(w, &f), &l).unwrap();
                let rhs = ctx
                    .eval(&f, &l.act(&ctx.group, ctx.group.inverse[w]))
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn divided_difference_basics() {
        let ctx = additive("A2");
        // Delta_a(x) = <x, a^> on linear elements.
        let x: Vector = vec![1, 2];
        assert_eq!(ctx.bgg_delta(0, &ctx.p_of(&x)).unwrap(), ctx.scalar(x[0]));
        // Delta_a(alpha) = 2.
        assert_eq!(ctx.bgg_delta(0, &ctx.p_of_simple(0)).unwrap(), ctx.scalar(2));
        // Delta^2 = 0 on cubics.
        for f in ctx.monomials_up_to(3) {
            let once = ctx.bgg_delta(0, &f).unwrap();
            assert!(ctx.bgg_delta(0, &once).unwrap().is_zero());
        }
    }

    #[test]
    fn demazure_quadratic_and_invariants() {
        let ctx = multiplicative("A2", 1);
        // D_a(e^x) = e^x when <x, a^> = 1.
        let omega: Vector = vec![1, 0];
        assert_eq!(
            ctx.demazure_d(0, &ctx.u_of(&omega)).unwrap(),
            ctx.u_of(&omega)
        );
        // D_a^2 = D_a.
        for f in ctx.monomials_up_to(3) {
            let once = ctx.demazure_d(0, &f).unwrap();
            assert_eq!(ctx.demazure_d(0, &once).unwrap(), once);
        }
        // D_a(f) = 0 for s_a-invariant f.
        let v: Vector = vec![1, 1];
        let sym = ctx.u_of(&v).add(&ctx.u_of(&ctx.datum().reflect_root(0, &v)));
        assert!(ctx.demazure_d(0, &sym).unwrap().is_zero());
    }

    #[test]
    fn hd_interpolates() {
        // Additive: hd = Delta. Multiplicative: hd = h0 * D.
        let actx = additive("B2");
        for f in actx.monomials_up_to(3) {
            assert_eq!(actx.hd(0, &f).unwrap(), actx.bgg_delta(0, &f).unwrap());
        }
        let mctx = multiplicative("B2", 3);
        for f in mctx.monomials_up_to(2) {
            assert_eq!(
                mctx.hd(0, &f).unwrap(),
                mctx.demazure_d(0, &f).unwrap().scale(&mctx.h0)
            );
        }
    }

    #[test]
    fn hd_case_formula() {
        // hd_a(P_x) = <x, a^> + h0 (P_x + P_{x-a} + ... + P_{s_a(x)+a}) for
        // positive pairing.
        let ctx = multiplicative("A2", 1);
        let x: Vector = vec![2, 1]; // <x, alpha^> = 2
        let alpha = ctx.datum().simple_roots[0].clone();
        let mut expect = ctx.scalar(2);
        let mut cur = x.clone();
        for _ in 0..2 {
            expect = expect.add(&ctx.p_of(&cur).scale(&ctx.h0));
            cur = cur.iter().zip(&alpha).map(|(a, b)| a - b).collect();
        }
        assert_eq!(ctx.hd(0, &ctx.p_of(&x)).unwrap(), expect);
        // hd(1) = 0 and (hd)^2 = h0 hd.
        assert!(ctx.hd(0, &ctx.one()).unwrap().is_zero());
        for f in ctx.monomials_up_to(2) {
            let once = ctx.hd(0, &f).unwrap();
            assert_eq!(ctx.hd(0, &once).unwrap(), once.scale(&ctx.h0));
        }
    }

    #[test]
    fn classical_demazure_conjugation() {
        let ctx = multiplicative("A2", 1);
        let erho = ctx.e_rho();
        let erho_inv = ctx.one().exact_div(&erho).unwrap();
        for f in ctx.monomials_up_to(2) {
            let direct = ctx.classical_demazure(0, &f).unwrap();
            let conj = ctx.demazure_d(0, &erho.mul(&f)).unwrap().mul(&erho_inv);
            assert_eq!(direct, conj);
        }
        assert_eq!(ctx.classical_demazure(0, &ctx.one()).unwrap(), ctx.one());
    }

    #[test]
    fn braid_relations_for_hd() {
        for (name, h0) in [("A2", 0i64), ("A2", 1), ("B2", 0), ("B2", 1), ("G2", 0)] {
            let g = WeylGroup::new(&RootDatum::named(name).unwrap()).unwrap();
            let ctx = Ctx::new(g, q(h0));
            let m = ctx.datum().coxeter[0][1];
            let deg = if name == "G2" { 2 } else { 3 };
            for f in ctx.monomials_up_to(deg) {
                let mut lhs = f.clone();
                let mut rhs = f.clone();
                for i in 0..m {
                    lhs = ctx.hd(if i % 2 == 0 { 0 } else { 1 }, &lhs).unwrap();
                    rhs = ctx.hd(if i % 2 == 0 { 1 } else { 0 }, &rhs).unwrap();
                }
                assert_eq!(lhs, rhs, "{name} h0={h0}");
            }
        }
    }

    #[test]
    fn classical_demazure_braid_a2() {
        let ctx = multiplicative("A2", 1);
        for f in ctx.monomials_up_to(2) {
            let mut lhs = f.clone();
            let mut rhs = f.clone();
            for i in 0..3 {
                lhs = ctx
                    .classical_demazure(if i % 2 == 0 { 0 } else { 1 }, &lhs)
                    .unwrap();
                rhs = ctx
                    .classical_demazure(if i % 2 == 0 { 1 } else { 0 }, &rhs)
                    .unwrap();
            }
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn twisted_leibniz() {
        let ctx = multiplicative("B2", 2);
        let fs = ctx.monomials_up_to(2);
        for f in fs.iter().step_by(5) {
            for g in fs.iter().step_by(7) {
                let lhs = ctx.hd(0, &f.mul(g)).unwrap();
                let rhs = ctx
                    .hd(0, f)
                    .unwrap()
                    .mul(g)
                    .add(&ctx.s_act(0, f).mul(&ctx.hd(0, g).unwrap()));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn formal_group_law_on_basis_sums() {
        for h0 in [0i64, 2] {
            let g = WeylGroup::new(&RootDatum::named("A2").unwrap()).unwrap();
            let ctx = Ctx::new(g, q(h0));
            for x in [[1i64, 0], [0, 1], [1, 1], [2, -1]] {
                for y in [[1i64, 0], [0, 1], [-1, 2]] {
                    let xv: Vector = x.to_vec();
                    let yv: Vector = y.to_vec();
                    let sum: Vector = xv.iter().zip(&yv).map(|(a, b)| a + b).collect();
                    let lhs = ctx
                        .p_of(&xv)
                        .add(&ctx.p_of(&yv))
                        .add(&ctx.p_of(&xv).mul(&ctx.p_of(&yv)).scale(&ctx.h0));
                    assert_eq!(lhs, ctx.p_of(&sum));
                }
            }
        }
    }
}
