//! Multivariate Laurent polynomial arithmetic with exact coefficients.
//!
//! Exponents are signed so a single type serves both the symmetric-algebra
//! backend (exponents >= 0) and the group-ring backend (genuine Laurent
//! polynomials). The monomial order is graded lexicographic throughout, which
//! fixes canonical forms and deterministic text rendering.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{scalar_is_negative, FieldKind, Scalar};

pub type Monomial = Vec<i32>;

/// Graded-lexicographic comparison: first by total degree, then lex.
pub fn mono_cmp(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    let da: i64 = a.iter().map(|&e| e as i64).sum();
    let db: i64 = b.iter().map(|&e| e as i64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Poly {
    pub nvars: usize,
    pub kind: FieldKind,
    /// monomial -> nonzero coefficient
    pub terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize, kind: FieldKind) -> Self {
        Poly {
            nvars,
            kind,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        let kind = c.kind();
        let mut p = Poly::zero(nvars, kind);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize, kind: FieldKind) -> Self {
        Poly::constant(Scalar::one(kind), nvars)
    }

    pub fn from_int(n: i64, nvars: usize, kind: FieldKind) -> Self {
        Poly::constant(Scalar::from_int(n, kind), nvars)
    }

    pub fn monomial(exps: Monomial, c: Scalar, nvars: usize) -> Self {
        assert_eq!(exps.len(), nvars);
        let kind = c.kind();
        let mut p = Poly::zero(nvars, kind);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn var(i: usize, nvars: usize, kind: FieldKind) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Poly::monomial(exps, Scalar::one(kind), nvars)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.kind))
    }

    /// Max total degree; 0 on the zero polynomial.
    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as i64).sum())
            .max()
            .unwrap_or(0)
    }

    fn insert_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(cur) => {
                let s = cur.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *cur = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero(self.nvars, self.kind);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut out = Poly::zero(self.nvars, self.kind);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            let s = v.mul(c);
            if !s.is_zero() {
                out.terms.insert(m.clone(), s);
            }
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars, self.kind);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.insert_term(m, ca.mul(cb));
            }
        }
        out
    }

    pub fn mul_monomial(&self, shift: &Monomial) -> Poly {
        let mut out = Poly::zero(self.nvars, self.kind);
        for (m, c) in &self.terms {
            let mm: Monomial = m.iter().zip(shift).map(|(x, y)| x + y).collect();
            out.terms.insert(mm, c.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars, self.kind);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Per-variable minimal exponent over all terms (0 on the zero polynomial).
    pub fn min_exponents(&self) -> Monomial {
        let mut mins = vec![0i32; self.nvars];
        let mut first = true;
        for m in self.terms.keys() {
            for i in 0..self.nvars {
                if first || m[i] < mins[i] {
                    mins[i] = m[i];
                }
            }
            if first {
                first = false;
            }
        }
        if first {
            vec![0; self.nvars]
        } else {
            mins
        }
    }

    /// Leading (graded-lex greatest) term.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().max_by(|a, b| mono_cmp(a.0, b.0))
    }

    /// Exact division in the Laurent ring. Errors when a remainder survives.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        assert_eq!(self.nvars, divisor.nvars);
        if divisor.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Poly::zero(self.nvars, self.kind));
        }
        // Monomials are units: strip per-variable minimal exponents so both
        // operands become honest polynomials, divide, then shift back.
        let sn = self.min_exponents();
        let sd = divisor.min_exponents();
        let f = self.mul_monomial(&sn.iter().map(|e| -e).collect());
        let g = divisor.mul_monomial(&sd.iter().map(|e| -e).collect());
        let mut rem = f;
        let mut quo = Poly::zero(self.nvars, self.kind);
        let (glm, glc) = {
            let (m, c) = g.leading().unwrap();
            (m.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (rlm, rlc) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            let qm: Monomial = rlm.iter().zip(&glm).map(|(a, b)| a - b).collect();
            if qm.iter().any(|&e| e < 0) {
                return Err(Error::InexactDivision(format!(
                    "remainder with leading monomial {rlm:?}"
                )));
            }
            let qc = rlc.div(&glc)?;
            let t = Poly::monomial(qm, qc, self.nvars);
            rem = rem.sub(&t.mul(&g));
            quo = quo.add(&t);
        }
        let shift: Monomial = sn.iter().zip(&sd).map(|(a, b)| a - b).collect();
        Ok(quo.mul_monomial(&shift))
    }

    pub fn divides(&self, dividend: &Poly) -> bool {
        dividend.exact_div(self).is_ok()
    }

    /// Exact division constrained to the polynomial ring: the quotient must
    /// not pick up negative exponents.
    pub fn exact_div_poly(&self, divisor: &Poly) -> Result<Poly> {
        let q = self.exact_div(divisor)?;
        if q.min_exponents().iter().any(|&e| e < 0) {
            return Err(Error::InexactDivision(
                "quotient escapes the polynomial ring".into(),
            ));
        }
        Ok(q)
    }

    /// Evaluate at a point, one scalar per variable. Negative exponents
    /// require the corresponding value to be nonzero.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Scalar::zero(self.kind);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e != 0 {
                    t = t.mul(&point[i].pow(e as i64)?);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Substitute each variable by a polynomial (used by the additive-mode
    /// Weyl action and the shift of variables). All exponents must be >= 0.
    pub fn substitute_linear(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let mut out = Poly::zero(self.nvars, self.kind);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone(), self.nvars);
            for (i, &e) in m.iter().enumerate() {
                assert!(e >= 0, "negative exponent in polynomial substitution");
                t = t.mul(&images[i].pow(e as u32));
            }
            out = out.add(&t);
        }
        out
    }

    /// Substitute each variable by a Laurent monomial given as an exponent
    /// vector (the multiplicative-mode Weyl action).
    pub fn substitute_monomial(&self, images: &[Monomial]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let mut out = Poly::zero(self.nvars, self.kind);
        for (m, c) in &self.terms {
            let mut exps = vec![0i32; self.nvars];
            for (i, &e) in m.iter().enumerate() {
                for j in 0..self.nvars {
                    exps[j] += e * images[i][j];
                }
            }
            out.insert_term(exps, c.clone());
        }
        out
    }

    /// Scale so the graded-lex leading coefficient is 1; returns the factor
    /// removed. Used to normalize denominator factors for syntactic matching.
    pub fn monic(&self) -> (Poly, Scalar) {
        match self.leading() {
            None => (self.clone(), Scalar::one(self.kind)),
            Some((_, c)) => {
                let c = c.clone();
                (self.scale(&c.inv().expect("nonzero leading coefficient")), c)
            }
        }
    }

    /// Render with the given variable names, monomials sorted graded-lex
    /// descending.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut monos: Vec<_> = self.terms.iter().collect();
        monos.sort_by(|a, b| mono_cmp(b.0, a.0));
        let mut s = String::new();
        for (idx, (m, c)) in monos.iter().enumerate() {
            let is_const = m.iter().all(|&e| e == 0);
            let neg = scalar_is_negative(c);
            let mag = if neg { c.neg() } else { (*c).clone() };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else if neg {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || is_const {
                factors.push(format!("{mag}"));
            }
            for (i, &e) in m.iter().enumerate() {
                if e == 1 {
                    factors.push(names[i].clone());
                } else if e != 0 {
                    factors.push(format!("{}^{}", names[i], e));
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("z{i}")).collect();
        write!(f, "{}", self.render(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(i, 2, FieldKind::Q)
    }

    #[test]
    fn ring_ops() {
        let p = x(0).add(&x(1)); // z1 + z2
        let q = x(0).sub(&x(1)); // z1 - z2
        let prod = p.mul(&q);
        let expect = x(0).mul(&x(0)).sub(&x(1).mul(&x(1)));
        assert_eq!(prod, expect);
        assert_eq!(prod.exact_div(&p).unwrap(), q);
    }

    #[test]
    fn division_remainder_detected() {
        let one = Poly::one(2, FieldKind::Q);
        let p = x(0).add(&one);
        // Not divisible even in the Laurent ring.
        assert!(p.exact_div(&x(1).add(&one)).is_err());
        // Divisible by the unit z2 in the Laurent ring, but not in the
        // polynomial ring.
        assert!(p.exact_div(&x(1)).is_ok());
        assert!(p.exact_div_poly(&x(1)).is_err());
        assert!(p.mul(&x(0)).exact_div_poly(&x(0)).is_ok());
    }

    #[test]
    fn laurent_division() {
        // (U - 1) / U = 1 - U^{-1}
        let u = x(0);
        let num = u.sub(&Poly::one(2, FieldKind::Q));
        let q = num.exact_div(&u).unwrap();
        let expect = Poly::one(2, FieldKind::Q).sub(&Poly::monomial(
            vec![-1, 0],
            Scalar::one(FieldKind::Q),
            2,
        ));
        assert_eq!(q, expect);
        assert_eq!(q.mul(&u), num);
    }

    #[test]
    fn eval_and_render() {
        let k = FieldKind::Q;
        let p = x(0).mul(&x(0)).add(&x(1).scale(&Scalar::from_int(-3, k)));
        let v = p
            .eval(&[Scalar::from_int(2, k), Scalar::from_int(1, k)])
            .unwrap();
        assert_eq!(v, Scalar::from_int(1, k));
        assert_eq!(p.to_string(), "z1^2 - 3*z2");
    }
}
