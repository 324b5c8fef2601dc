//! Torus points (weights), their Weyl orbits, stabilizers, and the
//! parabolic/exceptional classification.
//!
//! A weight is an algebra map from the coefficient ring to the field: a
//! Cartan vector in additive mode (parameter zero) and a torus point in
//! multiplicative mode. Entries are stored against the Y-basis, which is the
//! simple-coroot basis for simply connected data. The Weyl action is the
//! dual one throughout: `(w l)(f) = l(w^{-1} f)`.

use num::rational::BigRational;
use num::{BigInt, One, Zero};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{FieldKind, Scalar};
use crate::root_datum::{RootDatum, Vector};
use crate::weyl::{WeylGroup, WeylId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Mode {
    /// Parameter zero: weights are vectors, rings are symmetric algebras.
    Additive,
    /// Nonzero parameter: weights are torus points, rings are group rings.
    Multiplicative,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Weight {
    pub mode: Mode,
    /// One exact field element per Y-basis vector; nonzero in
    /// multiplicative mode.
    pub entries: Vec<Scalar>,
}

impl Weight {
    pub fn additive(entries: Vec<Scalar>) -> Self {
        Weight {
            mode: Mode::Additive,
            entries,
        }
    }

    pub fn multiplicative(entries: Vec<Scalar>) -> Result<Self> {
        if entries.iter().any(|t| t.is_zero()) {
            return Err(Error::BadInput(
                "multiplicative weight entries must be nonzero".into(),
            ));
        }
        Ok(Weight {
            mode: Mode::Multiplicative,
            entries,
        })
    }

    pub fn kind(&self) -> FieldKind {
        self.entries[0].kind()
    }

    /// Additive pairing `l(x)` for `x` in X-coordinates.
    pub fn pair(&self, x: &Vector) -> Scalar {
        assert_eq!(self.mode, Mode::Additive);
        let kind = self.kind();
        let mut acc = Scalar::zero(kind);
        for (xi, a) in x.iter().zip(&self.entries) {
            acc = acc.add(&Scalar::from_int(*xi, kind).mul(a));
        }
        acc
    }

    /// Multiplicative evaluation of the group-like element of `x`.
    pub fn eval_exp(&self, x: &Vector) -> Result<Scalar> {
        assert_eq!(self.mode, Mode::Multiplicative);
        let kind = self.kind();
        let mut acc = Scalar::one(kind);
        for (xi, t) in x.iter().zip(&self.entries) {
            acc = acc.mul(&t.pow(*xi)?);
        }
        Ok(acc)
    }

    /// Value of `P_x` at the weight: `l(x)` additively, `(e^x(l) - 1)/h0`
    /// multiplicatively.
    pub fn eval_p(&self, x: &Vector, h0: &Scalar) -> Result<Scalar> {
        match self.mode {
            Mode::Additive => Ok(self.pair(x)),
            Mode::Multiplicative => {
                let e = self.eval_exp(x)?;
                e.sub(&Scalar::one(self.kind())).div(h0)
            }
        }
    }

    /// Dual action: entries of `w l` are `l(w^{-1} b_j)` over the X-basis.
    pub fn act(&self, group: &WeylGroup, w: WeylId) -> Weight {
        let dim = group.datum.dim;
        let winv = group.inverse[w];
        let mut entries = Vec::with_capacity(dim);
        for j in 0..dim {
            let mut e = vec![0i64; dim];
            e[j] = 1;
            let pre = group.apply(winv, &e);
            let v = match self.mode {
                Mode::Additive => self.pair(&pre),
                Mode::Multiplicative => self.eval_exp(&pre).expect("nonzero entries"),
            };
            entries.push(v);
        }
        Weight {
            mode: self.mode,
            entries,
        }
    }

    pub fn reflect(&self, group: &WeylGroup, a: usize) -> Weight {
        let id = group.prepend_last(group.identity, a);
        self.act(group, id)
    }

    /// Additive weight with prescribed pairings against the simple roots.
    /// Solves against the Cartan matrix, so entries may be proper fractions.
    pub fn from_root_pairings(datum: &RootDatum, pairings: &[Scalar]) -> Result<Weight> {
        use crate::linalg::Mat;
        if pairings.len() != datum.n_simple || datum.dim != datum.n_simple {
            return Err(Error::BadInput(
                "root pairings need a semisimple datum of matching rank".into(),
            ));
        }
        let kind = pairings[0].kind();
        // <alpha_j, l> = sum_i cartan[i][j] a_i.
        let m = Mat::from_rows(
            (0..datum.n_simple)
                .map(|j| {
                    (0..datum.n_simple)
                        .map(|i| Scalar::from_int(datum.cartan[i][j], kind))
                        .collect()
                })
                .collect(),
            kind,
        );
        let entries = m
            .solve(pairings)
            .ok_or_else(|| Error::BadInput("Cartan matrix singular in this field".into()))?;
        Ok(Weight::additive(entries))
    }
}

/// A full Weyl orbit with the simple-reflection edge structure.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub weights: Vec<Weight>,
    index: BTreeMap<Weight, usize>,
    /// step[i][a] = index of s_a applied to weight i.
    pub step: Vec<Vec<usize>>,
}

impl Orbit {
    pub fn new(group: &WeylGroup, seed: &Weight) -> Self {
        let mut weights = vec![seed.clone()];
        let mut index = BTreeMap::new();
        index.insert(seed.clone(), 0usize);
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for a in 0..group.rank() {
                let img = weights[i].reflect(group, a);
                if !index.contains_key(&img) {
                    let id = weights.len();
                    index.insert(img.clone(), id);
                    weights.push(img);
                    frontier.push(id);
                }
            }
        }
        let step = (0..weights.len())
            .map(|i| {
                (0..group.rank())
                    .map(|a| index[&weights[i].reflect(group, a)])
                    .collect()
            })
            .collect();
        Orbit {
            weights,
            index,
            step,
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn id_of(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn reflect(&self, i: usize, a: usize) -> usize {
        self.step[i][a]
    }

    pub fn apply_word(&self, i: usize, word: &[usize]) -> usize {
        word.iter().fold(i, |acc, &a| self.step[acc][a])
    }

    pub fn apply(&self, group: &WeylGroup, w: WeylId, i: usize) -> usize {
        self.apply_word(i, &group.words[w])
    }

    pub fn stabilizer(&self, group: &WeylGroup, i: usize) -> Vec<WeylId> {
        (0..group.order())
            .filter(|&w| self.apply(group, w, i) == i)
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct WeightClassification {
    pub stabilizer: Vec<WeylId>,
    pub is_standard_parabolic: bool,
    /// Simple roots whose reflection fixes the weight.
    pub fixing_simples: Vec<usize>,
    /// Simple roots for which the weight is exceptional.
    pub exceptional_roots: Vec<usize>,
}

pub fn orbit_and_classify(
    group: &WeylGroup,
    seed: &Weight,
) -> (Orbit, WeightClassification) {
    let orbit = Orbit::new(group, seed);
    let cls = classify(group, &orbit, 0);
    (orbit, cls)
}

pub fn classify(group: &WeylGroup, orbit: &Orbit, i: usize) -> WeightClassification {
    let stabilizer = orbit.stabilizer(group, i);
    let fixing_simples: Vec<usize> = (0..group.rank())
        .filter(|&a| orbit.reflect(i, a) == i)
        .collect();
    let parabolic = group.parabolic_subgroup(&fixing_simples);
    let is_standard_parabolic = parabolic.len() == stabilizer.len();
    let exceptional_roots = exceptional_roots(group, orbit, i);
    WeightClassification {
        stabilizer,
        is_standard_parabolic,
        fixing_simples,
        exceptional_roots,
    }
}

/// Stabilizer of weight `i` inside the dihedral subgroup of `{a, b}`.
fn dihedral_stabilizer(group: &WeylGroup, orbit: &Orbit, i: usize, a: usize, b: usize) -> Vec<WeylId> {
    group
        .parabolic_subgroup(&[a, b])
        .into_iter()
        .filter(|&w| orbit.apply(group, w, i) == i)
        .collect()
}

/// Standard parabolic with respect to the dihedral pair: the stabilizer is
/// one of {e}, <s_a>, <s_b>, or the whole dihedral group, as sets.
fn dihedral_standard_parabolic(
    group: &WeylGroup,
    orbit: &Orbit,
    i: usize,
    a: usize,
    b: usize,
) -> bool {
    let stab = dihedral_stabilizer(group, orbit, i, a, b);
    for gens in [vec![], vec![a], vec![b], vec![a, b]] {
        if group.parabolic_subgroup(&gens) == stab {
            return true;
        }
    }
    false
}

/// Parabolic with respect to the dihedral subgroup: some weight in the
/// dihedral orbit is standard parabolic with respect to it.
pub fn dihedral_parabolic(group: &WeylGroup, orbit: &Orbit, i: usize, a: usize, b: usize) -> bool {
    let mut seen = vec![i];
    let mut frontier = vec![i];
    while let Some(j) = frontier.pop() {
        for &g in &[a, b] {
            let k = orbit.reflect(j, g);
            if !seen.contains(&k) {
                seen.push(k);
                frontier.push(k);
            }
        }
    }
    seen.into_iter()
        .any(|j| dihedral_standard_parabolic(group, orbit, j, a, b))
}

/// Simple roots `a` such that the weight moves under `s_a` and fails to be
/// parabolic with respect to some dihedral pair containing `a`.
pub fn exceptional_roots(group: &WeylGroup, orbit: &Orbit, i: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for a in 0..group.rank() {
        if orbit.reflect(i, a) == i {
            continue;
        }
        let witness = (0..group.rank())
            .filter(|&b| b != a)
            .any(|b| !dihedral_parabolic(group, orbit, i, a, b));
        if witness {
            out.push(a);
        }
    }
    out
}

/// Fundamental weights in X (x) Q coordinates, one row per simple root.
pub fn fundamental_weights_rational(datum: &RootDatum) -> Result<Vec<Vec<BigRational>>> {
    use crate::linalg::Mat;
    let n = datum.n_simple;
    let kind = FieldKind::Q;
    // omega_a = sum_k c_k root_k with sum_k cartan[b][k] c_k = delta_{ab}.
    let cart = Mat::from_rows(
        (0..n)
            .map(|b| {
                (0..n)
                    .map(|k| Scalar::from_int(datum.cartan[b][k], kind))
                    .collect()
            })
            .collect(),
        kind,
    );
    let mut rows = Vec::with_capacity(n);
    for a in 0..n {
        let mut rhs = vec![Scalar::zero(kind); n];
        rhs[a] = Scalar::one(kind);
        let c = cart
            .solve(&rhs)
            .ok_or_else(|| Error::BadInput("Cartan matrix is singular".into()))?;
        let mut coords = vec![BigRational::zero(); datum.dim];
        for (k, ck) in c.iter().enumerate() {
            let Scalar::Q(ck) = ck else { unreachable!() };
            for (j, r) in datum.simple_roots[k].iter().enumerate() {
                coords[j] += ck * BigRational::from_integer(BigInt::from(*r));
            }
        }
        rows.push(coords);
    }
    Ok(rows)
}

fn rational_to_scalar(r: &BigRational, kind: FieldKind) -> Result<Scalar> {
    let num: i64 = r
        .numer()
        .try_into()
        .map_err(|_| Error::BadInput("projection coefficient overflow".into()))?;
    let den: i64 = r
        .denom()
        .try_into()
        .map_err(|_| Error::BadInput("projection coefficient overflow".into()))?;
    let n = Scalar::from_int(num, kind);
    let d = Scalar::from_int(den, kind);
    if d.is_zero() {
        return Err(Error::BadInput(
            "projection denominator vanishes in this field".into(),
        ));
    }
    n.div(&d)
}

/// Project a weight of a (possibly larger) lattice onto the coroot lattice:
/// `p(y) = sum_a omega_a(y) a^`, returned as entries per simple coroot.
pub fn split_projection(datum: &RootDatum, weight: &Weight) -> Result<Weight> {
    let omega = fundamental_weights_rational(datum)?;
    let kind = weight.kind();
    match weight.mode {
        Mode::Additive => {
            let mut entries = Vec::with_capacity(datum.n_simple);
            for row in &omega {
                let mut acc = Scalar::zero(kind);
                for (c, a) in row.iter().zip(&weight.entries) {
                    acc = acc.add(&rational_to_scalar(c, kind)?.mul(a));
                }
                entries.push(acc);
            }
            Ok(Weight::additive(entries))
        }
        Mode::Multiplicative => {
            let mut entries = Vec::with_capacity(datum.n_simple);
            for row in &omega {
                entries.push(rational_power_product(&weight.entries, row)?);
            }
            Weight::multiplicative(entries)
        }
    }
}

/// Embed coroot-lattice entries back into Y-coordinates (the section of the
/// split projection).
pub fn embed_coroot_weight(datum: &RootDatum, weight: &Weight) -> Result<Weight> {
    let kind = weight.kind();
    match weight.mode {
        Mode::Additive => {
            let mut entries = vec![Scalar::zero(kind); datum.dim];
            for (i, a) in weight.entries.iter().enumerate() {
                for (j, c) in datum.simple_coroots[i].iter().enumerate() {
                    entries[j] = entries[j].add(&Scalar::from_int(*c, kind).mul(a));
                }
            }
            Ok(Weight::additive(entries))
        }
        Mode::Multiplicative => {
            let mut entries = vec![Scalar::one(kind); datum.dim];
            for (i, t) in weight.entries.iter().enumerate() {
                for (j, c) in datum.simple_coroots[i].iter().enumerate() {
                    entries[j] = entries[j].mul(&t.pow(*c)?);
                }
            }
            Weight::multiplicative(entries)
        }
    }
}

/// `prod_j t_j^{e_j}` with rational exponents. Integral exponents multiply
/// directly; otherwise a d-th root is searched among small power products of
/// the entries (and, over a prime field, the whole field).
fn rational_power_product(entries: &[Scalar], exps: &[BigRational]) -> Result<Scalar> {
    let kind = entries[0].kind();
    let mut den = BigInt::one();
    for e in exps {
        den = num::integer::lcm(den, e.denom().clone());
    }
    let d: i64 = (&den)
        .try_into()
        .map_err(|_| Error::BadInput("exponent denominator overflow".into()))?;
    let mut target = Scalar::one(kind);
    for (t, e) in entries.iter().zip(exps) {
        let scaled = e * BigRational::from_integer(den.clone());
        debug_assert!(scaled.is_integer());
        let k: i64 = scaled
            .to_integer()
            .try_into()
            .map_err(|_| Error::BadInput("exponent overflow".into()))?;
        target = target.mul(&t.pow(k)?);
    }
    if d == 1 {
        return Ok(target);
    }
    // d-th root needed.
    if target.is_one() {
        return Ok(Scalar::one(kind));
    }
    if let FieldKind::Fp(p) = kind {
        for x in 1..p {
            let cand = Scalar::Fp { v: x, p };
            if cand.pow(d)? == target {
                return Ok(cand);
            }
        }
        return Err(Error::BadInput("no root in the prime field".into()));
    }
    // Over Q: search products of the entries with small exponents.
    let bound = 4i64;
    let n = entries.len();
    let mut stack = vec![(0usize, Scalar::one(kind))];
    while let Some((i, acc)) = stack.pop() {
        if i == n {
            if acc.pow(d)? == target {
                return Ok(acc);
            }
            let neg = acc.neg();
            if neg.pow(d)? == target {
                return Ok(neg);
            }
            continue;
        }
        for k in -bound..=bound {
            stack.push((i + 1, acc.mul(&entries[i].pow(k)?)));
        }
    }
    Err(Error::BadInput(
        "projection requires a root not representable in this field".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n, FieldKind::Q)
    }

    fn a2() -> WeylGroup {
        WeylGroup::new(&RootDatum::named("A2").unwrap()).unwrap()
    }

    #[test]
    fn sl3_parabolic_orbit() {
        let g = a2();
        let l = Weight::from_root_pairings(&g.datum, &[q(0), q(1)]).unwrap();
        assert_eq!(l.pair(&g.datum.simple_roots[0]), q(0));
        assert_eq!(l.pair(&g.datum.simple_roots[1]), q(1));
        let (orbit, cls) = orbit_and_classify(&g, &l);
        assert_eq!(orbit.len(), 3);
        assert_eq!(cls.stabilizer.len(), 2);
        assert!(cls.is_standard_parabolic);
        assert_eq!(cls.fixing_simples, vec![0]);
        assert!(cls.exceptional_roots.is_empty());
    }

    #[test]
    fn regular_orbit_full_size() {
        let g = a2();
        let l = Weight::additive(vec![q(2), q(5)]);
        let (orbit, cls) = orbit_and_classify(&g, &l);
        assert_eq!(orbit.len(), 6);
        assert_eq!(cls.stabilizer.len(), 1);
        assert!(cls.is_standard_parabolic);
    }

    #[test]
    fn orbit_times_stabilizer_is_group_order() {
        for name in ["A2", "B2", "G2"] {
            let g = WeylGroup::new(&RootDatum::named(name).unwrap()).unwrap();
            for entries in [[0i64, 1], [1, 1], [0, 0], [3, 7]] {
                let l = Weight::additive(entries.iter().map(|&n| q(n)).collect());
                let (orbit, cls) = orbit_and_classify(&g, &l);
                assert_eq!(orbit.len() * cls.stabilizer.len(), g.order());
            }
        }
    }

    #[test]
    fn b2_exceptional_weight() {
        // pi = beta^ (x) (-1) over Q, multiplicative entries (1, -1):
        // index 0 is the short root alpha, index 1 the long root beta.
        let g = WeylGroup::new(&RootDatum::named("B2").unwrap()).unwrap();
        let pi = Weight::multiplicative(vec![q(1), q(-1)]).unwrap();
        let (orbit, cls) = orbit_and_classify(&g, &pi);
        assert_eq!(orbit.len(), 2);
        assert_eq!(cls.stabilizer.len(), 4);
        assert!(!cls.is_standard_parabolic);
        // s_beta fixes pi, s_alpha moves it: pi is exceptional for alpha.
        assert_eq!(cls.fixing_simples, vec![1]);
        assert_eq!(cls.exceptional_roots, vec![0]);
        // The partner weight is exceptional for alpha as well.
        let other = classify(&g, &orbit, orbit.reflect(0, 0));
        assert_eq!(other.exceptional_roots, vec![0]);
    }

    #[test]
    fn g2_exceptional_orbit() {
        let g = WeylGroup::new(&RootDatum::named("G2").unwrap()).unwrap();
        // pi = alpha^ (x) (-1): fixed by s_alpha, exceptional for beta.
        let pi = Weight::multiplicative(vec![q(-1), q(1)]).unwrap();
        let (orbit, cls) = orbit_and_classify(&g, &pi);
        assert_eq!(orbit.len(), 3);
        assert_eq!(cls.fixing_simples, vec![0]);
        assert_eq!(cls.exceptional_roots, vec![1]);
        // Middle weight moves under both reflections and is exceptional for
        // both directions.
        let mid = orbit.reflect(0, 1);
        let mid_cls = classify(&g, &orbit, mid);
        assert!(mid_cls.fixing_simples.is_empty());
        assert_eq!(mid_cls.exceptional_roots, vec![0, 1]);
        // Far end: beta^ (x) (-1), exceptional for alpha.
        let far = orbit.reflect(mid, 0);
        let far_cls = classify(&g, &orbit, far);
        assert_eq!(far_cls.exceptional_roots, vec![0]);
        assert_eq!(orbit.weights[far].entries, vec![q(1), q(-1)]);
    }

    #[test]
    fn standard_parabolic_weights_are_never_exceptional() {
        for name in ["A2", "B2", "G2"] {
            let g = WeylGroup::new(&RootDatum::named(name).unwrap()).unwrap();
            let l = Weight::additive(vec![q(0), q(1)]);
            let (orbit, _) = orbit_and_classify(&g, &l);
            for i in 0..orbit.len() {
                assert!(exceptional_roots(&g, &orbit, i).is_empty());
            }
        }
    }

    #[test]
    fn b3_exceptional_over_f13() {
        let k = FieldKind::Fp(13);
        let g = WeylGroup::new(&RootDatum::named("B3").unwrap()).unwrap();
        let pi = Weight::multiplicative(vec![
            Scalar::from_int(5, k),
            Scalar::from_int(1, k),
            Scalar::from_int(-1, k),
        ])
        .unwrap();
        let (orbit, cls) = orbit_and_classify(&g, &pi);
        assert_eq!(orbit.len(), 2);
        assert_eq!(cls.fixing_simples, vec![1, 2]);
        assert_eq!(cls.exceptional_roots, vec![0]);
    }

    #[test]
    fn split_projection_gl2() {
        let d = RootDatum::gl(2).unwrap();
        let t = q(7);
        let diag = Weight::multiplicative(vec![t.clone(), t]).unwrap();
        let p = split_projection(&d, &diag).unwrap();
        assert_eq!(p.entries, vec![q(1)]);
        // Coroot-lattice weight maps to itself.
        let co = Weight::multiplicative(vec![q(5).inv().unwrap(), q(5)]).unwrap();
        let p2 = split_projection(&d, &co).unwrap();
        assert_eq!(p2.entries, vec![q(5)]);
    }

    #[test]
    fn split_projection_equivariance_gl3_additive() {
        let d = RootDatum::gl(3).unwrap();
        let g = WeylGroup::new(&d).unwrap();
        let sc = RootDatum::named("A2").unwrap();
        let gsc = WeylGroup::new(&sc).unwrap();
        for entries in [[1i64, 4, 9], [0, 2, 5], [3, 3, 1]] {
            let l = Weight::additive(entries.iter().map(|&n| q(n)).collect());
            for a in 0..2 {
                let lhs = split_projection(&d, &l.reflect(&g, a)).unwrap();
                let rhs = split_projection(&d, &l).unwrap().reflect(&gsc, a);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn split_section_identity() {
        let d = RootDatum::named("B2").unwrap();
        let l = Weight::additive(vec![q(3), q(-2)]);
        let emb = embed_coroot_weight(&d, &l).unwrap();
        let back = split_projection(&d, &emb).unwrap();
        assert_eq!(back, l);
    }
}
