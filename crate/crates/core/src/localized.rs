//! Fractions of ring elements: the fraction field used inside the operator
//! engine, and localizations anchored at a weight.
//!
//! Denominators are kept as factored multisets. Factors are normalized
//! (monic leading coefficient, no monomial content) so that cancellation is
//! a syntactic matter of exact division; no polynomial gcd is ever needed.
//! Equality is decided by cross-multiplication.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::poly::Poly;
use crate::ring::Ctx;
use crate::weight::Weight;
use crate::weyl::WeylId;

/// Element of the fraction field: `num / prod factors^mult`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Frac {
    pub num: Poly,
    pub den: BTreeMap<Poly, u32>,
}

impl Frac {
    pub fn from_poly(num: Poly) -> Self {
        Frac {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn zero(nvars: usize, kind: crate::field::FieldKind) -> Self {
        Frac::from_poly(Poly::zero(nvars, kind))
    }

    pub fn one(nvars: usize, kind: crate::field::FieldKind) -> Self {
        Frac::from_poly(Poly::one(nvars, kind))
    }

    /// Build `num / prod dens` with factor normalization and cancellation.
    pub fn new(num: Poly, dens: Vec<Poly>) -> Result<Self> {
        let mut f = Frac::from_poly(num);
        for d in dens {
            f = f.div_poly(&d)?;
        }
        Ok(f)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn push_factor(&mut self, d: &Poly) -> Result<()> {
        if d.is_zero() {
            return Err(Error::InexactDivision("zero denominator".into()));
        }
        // Clear negative exponents (those monomials are units of the Laurent
        // ring; additively there are none), then make monic. The removed
        // unit divides the numerator instead.
        let mins: Vec<i32> = d.min_exponents().iter().map(|&e| e.min(0)).collect();
        let shifted = d.mul_monomial(&mins.iter().map(|e| -e).collect());
        let (monic, lead) = shifted.monic();
        // num / (unit * lead * monic) = num * unit^{-1} * lead^{-1} / monic
        self.num = self
            .num
            .mul_monomial(&mins.iter().map(|e| -e).collect())
            .scale(&lead.inv()?);
        if !monic.is_constant() {
            *self.den.entry(monic).or_insert(0) += 1;
        } else {
            // A constant factor: fold fully into the numerator.
            let c = monic.constant_term();
            self.num = self.num.scale(&c.inv()?);
        }
        Ok(())
    }

    pub fn div_poly(&self, d: &Poly) -> Result<Frac> {
        let mut out = self.clone();
        out.push_factor(d)?;
        out.reduce();
        Ok(out)
    }

    pub fn mul_poly(&self, p: &Poly) -> Frac {
        let mut out = Frac {
            num: self.num.mul(p),
            den: self.den.clone(),
        };
        out.reduce();
        out
    }

    pub fn scale(&self, c: &Scalar) -> Frac {
        Frac {
            num: self.num.scale(c),
            den: if self.num.is_zero() || c.is_zero() {
                BTreeMap::new()
            } else {
                self.den.clone()
            },
        }
    }

    pub fn neg(&self) -> Frac {
        Frac {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Frac) -> Frac {
        let mut den = self.den.clone();
        for (f, m) in &other.den {
            *den.entry(f.clone()).or_insert(0) += m;
        }
        let mut out = Frac {
            num: self.num.mul(&other.num),
            den,
        };
        out.reduce();
        out
    }

    pub fn add(&self, other: &Frac) -> Frac {
        // Least common multiple of the factored denominators.
        let mut lcm: BTreeMap<Poly, u32> = self.den.clone();
        for (f, m) in &other.den {
            let e = lcm.entry(f.clone()).or_insert(0);
            *e = (*e).max(*m);
        }
        let scale_up = |num: &Poly, den: &BTreeMap<Poly, u32>| -> Poly {
            let mut n = num.clone();
            for (f, m) in &lcm {
                let have = den.get(f).copied().unwrap_or(0);
                for _ in have..*m {
                    n = n.mul(f);
                }
            }
            n
        };
        let num = scale_up(&self.num, &self.den).add(&scale_up(&other.num, &other.den));
        let mut out = Frac { num, den: lcm };
        out.reduce();
        out
    }

    pub fn sub(&self, other: &Frac) -> Frac {
        self.add(&other.neg())
    }

    pub fn inv(&self) -> Result<Frac> {
        if self.is_zero() {
            return Err(Error::InexactDivision("inverting zero fraction".into()));
        }
        let mut out = Frac::from_poly(Poly::one(self.num.nvars, self.num.kind));
        for (f, m) in &self.den {
            for _ in 0..*m {
                out.num = out.num.mul(f);
            }
        }
        out.push_factor(&self.num)?;
        out.reduce();
        Ok(out)
    }

    pub fn div(&self, other: &Frac) -> Result<Frac> {
        Ok(self.mul(&other.inv()?))
    }

    /// Cancel denominator factors that exactly divide the numerator. Uses
    /// polynomial division when no negative exponents are around, Laurent
    /// division otherwise.
    pub fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let laurent = self.num.min_exponents().iter().any(|&e| e < 0)
            || self.den.keys().any(|f| f.min_exponents().iter().any(|&e| e < 0));
        let mut new_den = BTreeMap::new();
        for (f, m) in std::mem::take(&mut self.den) {
            let mut left = m;
            while left > 0 {
                let q = if laurent {
                    self.num.exact_div(&f)
                } else {
                    self.num.exact_div_poly(&f)
                };
                match q {
                    Ok(q) => {
                        self.num = q;
                        left -= 1;
                    }
                    Err(_) => break,
                }
            }
            if left > 0 {
                new_den.insert(f, left);
            }
        }
        self.den = new_den;
    }

    /// Collapse the denominator to a single polynomial.
    pub fn den_poly(&self) -> Poly {
        let mut p = Poly::one(self.num.nvars, self.num.kind);
        for (f, m) in &self.den {
            for _ in 0..*m {
                p = p.mul(f);
            }
        }
        p
    }

    /// Equality via cross-multiplication.
    pub fn equals(&self, other: &Frac) -> bool {
        self.num.mul(&other.den_poly()) == other.num.mul(&self.den_poly())
    }

    /// Is this a polynomial (an element of the unlocalized ring)?
    pub fn as_poly(&self) -> Option<Poly> {
        let mut n = self.num.clone();
        for (f, m) in &self.den {
            for _ in 0..*m {
                match n.exact_div(f) {
                    Ok(q) => n = q,
                    Err(_) => return None,
                }
            }
        }
        Some(n)
    }

    pub fn w_act(&self, ctx: &Ctx, w: WeylId) -> Frac {
        let num = ctx.w_act(w, &self.num);
        let mut out = Frac::from_poly(num);
        for (f, m) in &self.den {
            let img = ctx.w_act(w, f);
            for _ in 0..*m {
                out.push_factor(&img).expect("automorphism keeps factors nonzero");
            }
        }
        out.reduce();
        out
    }

    pub fn s_act(&self, ctx: &Ctx, a: usize) -> Frac {
        let w = ctx.group.prepend_last(ctx.group.identity, a);
        self.w_act(ctx, w)
    }

    /// Evaluate at a weight; errors if a denominator factor vanishes there.
    pub fn eval(&self, ctx: &Ctx, l: &Weight) -> Result<Scalar> {
        let mut acc = ctx.eval(&self.num, l)?;
        for (f, m) in &self.den {
            let v = ctx.eval(f, l)?;
            if v.is_zero() {
                return Err(Error::AnchorViolation(format!(
                    "factor {} vanishes",
                    ctx.render(f)
                )));
            }
            for _ in 0..*m {
                acc = acc.div(&v)?;
            }
        }
        Ok(acc)
    }

    /// All denominator factors nonzero at the weight?
    pub fn regular_at(&self, ctx: &Ctx, l: &Weight) -> bool {
        self.den
            .keys()
            .all(|f| !ctx.eval(f, l).map(|v| v.is_zero()).unwrap_or(true))
    }

    /// Nonzero value at the weight for every factor AND the numerator: a
    /// unit of the local ring.
    pub fn invertible_at(&self, ctx: &Ctx, l: &Weight) -> bool {
        self.regular_at(ctx, l)
            && !ctx.eval(&self.num, l).map(|v| v.is_zero()).unwrap_or(true)
    }

    pub fn render(&self, ctx: &Ctx) -> String {
        if self.den.is_empty() {
            ctx.render(&self.num)
        } else {
            let dens: Vec<String> = self
                .den
                .iter()
                .flat_map(|(f, m)| (0..*m).map(move |_| format!("({})", ctx.render(f))))
                .collect();
            format!("({}) / {}", ctx.render(&self.num), dens.join(""))
        }
    }
}

/// A fraction anchored at a weight where its denominator is invertible.
#[derive(Debug, Clone)]
pub struct Localized {
    pub frac: Frac,
    pub anchor: Weight,
}

impl Localized {
    pub fn new(ctx: &Ctx, frac: Frac, anchor: Weight) -> Result<Self> {
        if !frac.regular_at(ctx, &anchor) {
            return Err(Error::AnchorViolation(frac.render(ctx)));
        }
        Ok(Localized { frac, anchor })
    }

    pub fn value_at_anchor(&self, ctx: &Ctx) -> Result<Scalar> {
        self.frac.eval(ctx, &self.anchor)
    }
}

/// Divided difference extended to a fraction at a reflection-fixed anchor:
/// numerator and denominator are combined over the invariant denominator
/// `d * s_a(d)` and the exact division happens upstairs.
pub fn hd_fixed(ctx: &Ctx, a: usize, f: &Frac) -> Result<Frac> {
    let d = f.den_poly();
    let sd = ctx.s_act(a, &d);
    let sn = ctx.s_act(a, &f.num);
    let top = f.num.mul(&sd).sub(&sn.mul(&d));
    let q = ctx.exact_div(&top, &ctx.neg_p_neg(a))?;
    Frac::new(q, vec![d, sd])
}

/// Divided difference of a fraction anchored at a weight moved by `s_a`:
/// the two components `((-P_{-a})^{-1} f, -(-P_{-a})^{-1} s_a(f))`, living
/// at the weight and its reflection.
pub fn hd_split(ctx: &Ctx, a: usize, f: &Frac) -> Result<(Frac, Frac)> {
    let div = ctx.neg_p_neg(a);
    let first = f.div_poly(&div)?;
    let second = f.s_act(ctx, a).div_poly(&div)?.neg();
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldKind, Scalar};
    use crate::root_datum::RootDatum;
    use crate::weight::Weight;
    use crate::weyl::WeylGroup;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n, FieldKind::Q)
    }

    fn actx() -> Ctx {
        let g = WeylGroup::new(&RootDatum::named("A2").unwrap()).unwrap();
        Ctx::new(g, q(0))
    }

    #[test]
    fn arithmetic_and_reduction() {
        let ctx = actx();
        let pa = ctx.p_of_simple(0);
        let pb = ctx.p_of_simple(1);
        // (pa^2 - pb^2) / (pa - pb) reduces to pa + pb.
        let f = Frac::new(pa.mul(&pa).sub(&pb.mul(&pb)), vec![pa.sub(&pb)]).unwrap();
        assert!(f.den.is_empty());
        assert_eq!(f.num, pa.add(&pb));
        // 1/pa + 1/pb = (pa + pb) / (pa pb)
        let inv_a = Frac::new(ctx.one(), vec![pa.clone()]).unwrap();
        let inv_b = Frac::new(ctx.one(), vec![pb.clone()]).unwrap();
        let s = inv_a.add(&inv_b);
        assert!(s.equals(&Frac::new(pa.add(&pb), vec![pa.clone(), pb.clone()]).unwrap()));
        // Cross-multiplied equality for unreduced representatives.
        let t = Frac::new(pa.mul(&pb), vec![pa.clone(), pb.clone(), pa.clone()]).unwrap();
        let u = Frac::new(ctx.one(), vec![pa.clone()]).unwrap();
        assert!(t.equals(&u));
    }

    #[test]
    fn inverse_roundtrip() {
        let ctx = actx();
        let pa = ctx.p_of_simple(0);
        let f = Frac::new(pa.add(&ctx.one()), vec![ctx.p_of_simple(1)]).unwrap();
        let g = f.inv().unwrap();
        assert!(f.mul(&g).equals(&Frac::from_poly(ctx.one())));
    }

    #[test]
    fn anchored_fraction_rejects_vanishing_denominator() {
        let ctx = actx();
        let l = Weight::from_root_pairings(ctx.datum(), &[q(0), q(1)]).unwrap();
        let bad = Frac::new(ctx.one(), vec![ctx.p_of_simple(0)]).unwrap();
        assert!(Localized::new(&ctx, bad, l.clone()).is_err());
        let good = Frac::new(ctx.one(), vec![ctx.p_of_simple(1)]).unwrap();
        let loc = Localized::new(&ctx, good, l).unwrap();
        assert_eq!(loc.value_at_anchor(&ctx).unwrap(), q(1));
    }

    #[test]
    fn hd_split_recombines() {
        // (-P_{-a}) * hd_a(f) = f - s_a(f), component-wise sum.
        let ctx = actx();
        let f = Frac::new(
            ctx.p_of_simple(1).add(&ctx.scalar(2)),
            vec![ctx.p_of_simple(1).add(&ctx.scalar(7))],
        )
        .unwrap();
        let (c1, c2) = hd_split(&ctx, 0, &f).unwrap();
        let lhs = c1.add(&c2).mul_poly(&ctx.neg_p_neg(0));
        let rhs = f.sub(&f.s_act(&ctx, 0));
        assert!(lhs.equals(&rhs));
        // At f = 1 the two components are +/- (-P_{-a})^{-1}.
        let one = Frac::from_poly(ctx.one());
        let (d1, d2) = hd_split(&ctx, 0, &one).unwrap();
        assert!(d1.equals(&Frac::new(ctx.one(), vec![ctx.neg_p_neg(0)]).unwrap()));
        assert!(d2.equals(&d1.neg()));
    }

    #[test]
    fn hd_fixed_agrees_with_polynomial_hd() {
        let ctx = actx();
        for f in ctx.monomials_up_to(3) {
            let frac = Frac::from_poly(f.clone());
            let viafrac = hd_fixed(&ctx, 0, &frac).unwrap();
            let direct = ctx.hd(0, &f).unwrap();
            assert!(viafrac.equals(&Frac::from_poly(direct)));
        }
        // A genuine fraction: hd of n/d with invariant denominator check.
        let n = ctx.p_of_simple(0).mul(&ctx.p_of_simple(1));
        let d = ctx.p_of_simple(1).add(&ctx.scalar(5));
        let f = Frac::new(n, vec![d]).unwrap();
        let h = hd_fixed(&ctx, 0, &f).unwrap();
        let recomb = h.mul_poly(&ctx.neg_p_neg(0));
        assert!(recomb.equals(&f.sub(&f.s_act(&ctx, 0))));
    }
}
