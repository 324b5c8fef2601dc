//! Exact scalar arithmetic: rationals and prime fields.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// The coefficient field of a computation: `Q` or `F_p` for a prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum FieldKind {
    Q,
    Fp(u64),
}

impl FieldKind {
    /// Field characteristic: 0 for the rationals, `p` otherwise.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldKind::Q => 0,
            FieldKind::Fp(p) => *p,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let FieldKind::Fp(p) = self {
            if *p < 2 || !is_prime(*p) {
                return Err(Error::BadParams(format!("{p} is not prime")));
            }
        }
        Ok(())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. All arithmetic panics on `Q`/`F_p` mixing; values
/// of distinct prime fields never meet by construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl Scalar {
    pub fn kind(&self) -> FieldKind {
        match self {
            Scalar::Q(_) => FieldKind::Q,
            Scalar::Fp { p, .. } => FieldKind::Fp(*p),
        }
    }

    pub fn zero(kind: FieldKind) -> Self {
        Scalar::from_int(0, kind)
    }

    pub fn one(kind: FieldKind) -> Self {
        Scalar::from_int(1, kind)
    }

    pub fn from_int(n: i64, kind: FieldKind) -> Self {
        match kind {
            FieldKind::Q => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            FieldKind::Fp(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Fp { v: r % p, p }
            }
        }
    }

    /// Parse "a", "-a" or "a/b". For `F_p` the fraction is resolved in the field.
    pub fn parse(s: &str, kind: FieldKind) -> Result<Self> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim().to_string(), b.trim().to_string()),
            None => (s.to_string(), "1".to_string()),
        };
        let n: i64 = num
            .parse()
            .map_err(|_| Error::BadInput(format!("bad scalar {s:?}")))?;
        let d: i64 = den
            .parse()
            .map_err(|_| Error::BadInput(format!("bad scalar {s:?}")))?;
        if d == 0 {
            return Err(Error::BadInput(format!("zero denominator in {s:?}")));
        }
        let a = Scalar::from_int(n, kind);
        let b = Scalar::from_int(d, kind);
        a.div(&b)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    fn check(&self, other: &Scalar) {
        assert_eq!(self.kind(), other.kind(), "mixed-field arithmetic");
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check(other);
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                v: (a + b) % p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check(other);
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                v: mulmod(*a, *b, *p),
                p: *p,
            },
            _ => unreachable!(),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::BadInput("division by zero scalar".into()));
        }
        Ok(match self {
            Scalar::Q(a) => Scalar::Q(a.recip()),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: powmod(*v, p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one(self.kind());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

/// Total order used only for canonical (deterministic) printing and map keys.
pub fn scalar_cmp(a: &Scalar, b: &Scalar) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

/// True when the rational is negative (used by pretty-printers).
pub fn scalar_is_negative(a: &Scalar) -> bool {
    match a {
        Scalar::Q(r) => r.is_negative(),
        Scalar::Fp { .. } => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_ops() {
        let k = FieldKind::Q;
        let a = Scalar::parse("3/2", k).unwrap();
        let b = Scalar::parse("-1/3", k).unwrap();
        assert_eq!(a.mul(&b), Scalar::parse("-1/2", k).unwrap());
        assert_eq!(a.add(&b), Scalar::parse("7/6", k).unwrap());
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.mul(&a.inv().unwrap()), Scalar::one(k));
    }

    #[test]
    fn prime_field_ops() {
        let k = FieldKind::Fp(13);
        k.validate().unwrap();
        let five = Scalar::from_int(5, k);
        // 5^2 = 25 = -1 mod 13
        assert_eq!(five.mul(&five), Scalar::from_int(-1, k));
        assert_eq!(five.mul(&five.inv().unwrap()), Scalar::one(k));
        assert!(FieldKind::Fp(12).validate().is_err());
    }

    #[test]
    fn parse_fraction_in_fp() {
        let k = FieldKind::Fp(7);
        // 1/2 = 4 mod 7
        assert_eq!(Scalar::parse("1/2", k).unwrap(), Scalar::from_int(4, k));
    }
}
