//! The localized quiver Hecke algebra engine.
//!
//! Elements are computed inside a faithful representation on the fraction
//! field: the generator attached to a weight moved by `s_a` acts as the
//! reflection composed with multiplication by the splitting-family value,
//! and the generator at a fixed weight acts as the divided difference. All
//! products happen in the skew group algebra; relation verification compares
//! operators, and PBW normal forms are recovered by triangular elimination
//! from the longest word down.

use std::cell::RefCell;
use std::collections::BTreeMap;

use crate::datum::{Datum, OrbitCtx, SplitFamily};
use crate::error::{Error, Result};
use crate::localized::{hd_fixed, Frac};
use crate::report::CheckReport;
use crate::ring::Ctx;
use crate::skew::Skew;
use crate::weyl::WeylId;

/// An element of the algebra truncated at a source weight, written in the
/// PBW basis: right coefficients (anchored at the source) against canonical
/// reduced words.
#[derive(Debug, Clone)]
pub struct QHElem {
    pub source: usize,
    pub coeffs: BTreeMap<WeylId, Frac>,
}

impl QHElem {
    pub fn zero(source: usize) -> Self {
        QHElem {
            source,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn unit(ctx: &Ctx, source: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(ctx.group.identity, Frac::from_poly(ctx.one()));
        QHElem { source, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn equals(&self, _ctx: &Ctx, other: &QHElem) -> bool {
        if self.source != other.source {
            return false;
        }
        let keys: std::collections::BTreeSet<WeylId> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .collect();
        keys.into_iter().all(|w| {
            let a = self.coeffs.get(&w);
            let b = other.coeffs.get(&w);
            match (a, b) {
                (None, None) => true,
                (Some(x), None) | (None, Some(x)) => x.is_zero(),
                (Some(x), Some(y)) => x.equals(y),
            }
        })
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
                        .map(|a| format!("r{}", a + 1))
                        .collect::<Vec<_>>()
                        .join("")
                };
                format!("{} . ({})", wname, f.render(ctx))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub struct Engine<'a> {
    pub ctx: &'a Ctx,
    pub oc: &'a OrbitCtx,
    pub datum: Datum,
    pub fam: SplitFamily,
    img_cache: RefCell<BTreeMap<(usize, usize), Skew>>,
    pbw_cache: RefCell<BTreeMap<(usize, WeylId), Skew>>,
}

impl<'a> Engine<'a> {
    pub fn new(ctx: &'a Ctx, oc: &'a OrbitCtx, datum: Datum) -> Result<Self> {
        let fam = crate::datum::splitting_family(ctx, oc, &datum)?;
        Ok(Engine {
            ctx,
            oc,
            datum,
            fam,
            img_cache: RefCell::new(BTreeMap::new()),
            pbw_cache: RefCell::new(BTreeMap::new()),
        })
    }

    pub fn weight_count(&self) -> usize {
        self.oc.len()
    }

    /// Faithful image of the generator at (weight, root).
    pub fn generator_image(&self, i: usize, a: usize) -> Result<Skew> {
        if let Some(s) = self.img_cache.borrow().get(&(i, a)) {
            return Ok(s.clone());
        }
        let ctx = self.ctx;
        let sa = ctx.group.prepend_last(ctx.group.identity, a);
        let img = if self.oc.fixed[i][a] {
            // Divided difference: (-P_{-a})^{-1} e - (-P_{-a})^{-1} s_a.
            let inv = Frac::new(ctx.one(), vec![ctx.neg_p_neg(a)])?;
            Skew::term(inv.clone(), ctx.group.identity).sub(&Skew::term(inv, sa))
        } else {
            let f = self.fam.value(ctx, self.oc, &self.datum, i, a)?;
            Skew::term(f.s_act(ctx, a), sa)
        };
        self.img_cache.borrow_mut().insert((i, a), img.clone());
        Ok(img)
    }

    /// Weight path of a word from a source: length+1 entries.
    pub fn path(&self, source: usize, letters: &[usize]) -> Vec<usize> {
        let mut out = vec![source];
        for &a in letters {
            out.push(self.oc.orbit.reflect(*out.last().unwrap(), a));
        }
        out
    }

    /// Image of a generator word (letters in action order) from a source.
    pub fn chain_image(&self, source: usize, letters: &[usize]) -> Result<Skew> {
        let mut acc = Skew::identity(self.ctx);
        let mut at = source;
        for &a in letters {
            let g = self.generator_image(at, a)?;
            acc = g.compose(self.ctx, &acc);
            at = self.oc.orbit.reflect(at, a);
        }
        Ok(acc)
    }

    /// Image of the PBW basis element for `w` at the source weight.
    pub fn pbw_image(&self, source: usize, w: WeylId) -> Result<Skew> {
        if let Some(s) = self.pbw_cache.borrow().get(&(source, w)) {
            return Ok(s.clone());
        }
        let word = self.ctx.group.words[w].clone();
        let img = self.chain_image(source, &word)?;
        self.pbw_cache
            .borrow_mut()
            .insert((source, w), img.clone());
        Ok(img)
    }

    /// Triangular elimination from the longest word down. Every recovered
    /// coefficient must be regular at the source weight.
    pub fn normal_form(&self, x: &Skew, source: usize) -> Result<QHElem> {
        let ctx = self.ctx;
        let mut rem = x.clone();
        let mut coeffs = BTreeMap::new();
        let mut fuel = ctx.group.order() + rem.coeffs.len() + 4;
        while !rem.is_zero() {
            fuel = fuel
                .checked_sub(1)
                .ok_or_else(|| Error::BadInput("normal form does not terminate".into()))?;
            let &w = rem
                .coeffs
                .keys()
                .max_by_key(|&&w| (ctx.group.length(w), w))
                .unwrap();
            let img = self.pbw_image(source, w)?;
            let lead = img.coeff(ctx, w);
            if lead.is_zero() {
                return Err(Error::BadInput(
                    "PBW image lost its leading coefficient".into(),
                ));
            }
            let c = rem
                .coeff(ctx, w)
                .div(&lead)?
                .w_act(ctx, ctx.group.inverse[w]);
            rem = rem.sub(&img.compose(ctx, &Skew::term(c.clone(), ctx.group.identity)));
            if !rem.coeff(ctx, w).is_zero() {
                return Err(Error::BadInput("triangular elimination is stuck".into()));
            }
            coeffs.insert(w, c);
        }
        for (w, c) in &coeffs {
            if !c.regular_at(ctx, self.oc.weight(source)) {
                return Err(Error::AnchorViolation(format!(
                    "coefficient of word {:?} at weight {}: {}",
                    ctx.group.words[*w],
                    self.oc.label(source),
                    c.render(ctx)
                )));
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(QHElem { source, coeffs })
    }

    pub fn to_skew(&self, x: &QHElem) -> Result<Skew> {
        let ctx = self.ctx;
        let mut acc = Skew::zero();
        for (w, c) in &x.coeffs {
            let img = self.pbw_image(x.source, *w)?;
            acc = acc.add(&img.compose(ctx, &Skew::term(c.clone(), ctx.group.identity)));
        }
        Ok(acc)
    }

    /// Target weight of a PBW word from a source.
    pub fn target_of(&self, source: usize, w: WeylId) -> usize {
        self.oc.orbit.apply(&self.ctx.group, w, source)
    }

    /// Product in the algebra: terms of `b` not landing at `a`'s source are
    /// annihilated by the idempotent bookkeeping.
    pub fn multiply(&self, a: &QHElem, b: &QHElem) -> Result<QHElem> {
        let ctx = self.ctx;
        let kept: BTreeMap<WeylId, Frac> = b
            .coeffs
            .iter()
            .filter(|(w, _)| self.target_of(b.source, **w) == a.source)
            .map(|(w, f)| (*w, f.clone()))
            .collect();
        if !b.coeffs.is_empty() && kept.is_empty() {
            return Err(Error::WeightMismatch(format!(
                "no component of the right factor lands at weight {}",
                self.oc.label(a.source)
            )));
        }
        let bk = QHElem {
            source: b.source,
            coeffs: kept,
        };
        let prod = self.to_skew(a)?.compose(ctx, &self.to_skew(&bk)?);
        self.normal_form(&prod, b.source)
    }

    /// Normal form of a generator word.
    pub fn chain_elem(&self, source: usize, letters: &[usize]) -> Result<QHElem> {
        let img = self.chain_image(source, letters)?;
        self.normal_form(&img, source)
    }

    /// PBW freeness certificate at one weight: the change-of-basis matrix to
    /// the group basis is triangular with nonzero diagonal, so the images are
    /// linearly independent over the fraction field and the determinant is
    /// the product of the leading coefficients.
    pub fn pbw_freeness(&self, source: usize) -> Result<CheckReport> {
        let ctx = self.ctx;
        let mut rep = CheckReport::new();
        let mut det_nonzero = true;
        for w in 0..ctx.group.order() {
            let img = self.pbw_image(source, w)?;
            let lw = ctx.group.length(w);
            let triangular = img
                .support()
                .iter()
                .all(|&v| v == w || ctx.group.length(v) < lw);
            let lead = img.coeff(ctx, w);
            let ctxt = format!(
                "weight {} word {:?}",
                self.oc.label(source),
                ctx.group.words[w]
            );
            if triangular && !lead.is_zero() {
                rep.pass("pbw.triangular", ctxt);
            } else {
                det_nonzero = false;
                rep.fail("pbw.triangular", ctxt, img.render(ctx));
            }
        }
        let ctxt = format!("weight {}", self.oc.label(source));
        if det_nonzero {
            rep.pass("pbw.determinant_nonzero", ctxt);
        } else {
            rep.fail("pbw.determinant_nonzero", ctxt, "see triangularity".into());
        }
        Ok(rep)
    }

    /// Relation sweep with this engine's own generator images.
    pub fn verify_relations(&self) -> Result<CheckReport> {
        let images = |i: usize, a: usize| self.generator_image(i, a);
        verify_relations_with(self.ctx, self.oc, &self.datum, &images, 2)
    }

    /// Demazure-Lusztig operator of `T_a` as a skew element:
    /// `q s_a + c hD_a`, i.e. multiplication plus reflection.
    pub fn dl_t(&self, a: usize) -> Result<Skew> {
        let ctx = self.ctx;
        let sa = ctx.group.prepend_last(ctx.group.identity, a);
        let c = &self.datum.params.c[a];
        let q = &self.datum.params.q[a];
        let inv = Frac::new(ctx.constant(c), vec![ctx.neg_p_neg(a)])?;
        let e_part = inv.clone();
        let s_part = Frac::from_poly(ctx.constant(q)).sub(&inv);
        Ok(Skew::term(e_part, ctx.group.identity).add(&Skew::term(s_part, sa)))
    }

    /// Keep only the components that carry the source block to the target.
    pub fn block_project(&self, x: &Skew, source: usize, target: usize) -> Skew {
        Skew {
            coeffs: x
                .coeffs
                .iter()
                .filter(|(w, _)| self.target_of(source, **w) == target)
                .map(|(w, f)| (*w, f.clone()))
                .collect(),
        }
    }

    /// Generator images inside the Demazure-Lusztig model, per the three
    /// cases: fixed weights use the renormalized `T - q`, exceptional weights
    /// a rational multiple of the cross-block component, and the rest the
    /// bare cross-block component.
    pub fn dl_generator_image(&self, i: usize, a: usize) -> Result<Skew> {
        let ctx = self.ctx;
        let t = self.dl_t(a)?;
        let c = &self.datum.params.c[a];
        let q = &self.datum.params.q[a];
        if self.oc.fixed[i][a] {
            // (c + q P_{-a})^{-1} (T - q).
            let p_neg = ctx.neg_p_neg(a).neg();
            let denom = ctx.constant(c).add(&p_neg.scale(q));
            let shifted = t.sub(&Skew::identity(ctx).left_mul(&Frac::from_poly(ctx.constant(q))));
            let inv = Frac::new(ctx.one(), vec![denom])?;
            Ok(shifted.left_mul(&inv))
        } else {
            let j = self.oc.orbit.reflect(i, a);
            let cross = self.block_project(&t, i, j);
            if self.oc.exceptional[i][a] {
                let p_neg = ctx.neg_p_neg(a).neg();
                let denom = ctx.constant(c).add(&p_neg.scale(q));
                let factor = Frac::new(p_neg, vec![denom])?;
                Ok(cross.left_mul(&factor))
            } else {
                Ok(cross)
            }
        }
    }
}

/// Alternating word of the dihedral pair starting at `a`, with its weight
/// path from the given source.
pub fn alternating_path(
    ctx: &Ctx,
    oc: &OrbitCtx,
    source: usize,
    a: usize,
    b: usize,
) -> (Vec<usize>, Vec<usize>) {
    let m = ctx.datum().coxeter[a][b];
    let letters: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { a } else { b }).collect();
    let mut weights = vec![source];
    for &l in &letters {
        weights.push(oc.orbit.reflect(*weights.last().unwrap(), l));
    }
    (letters, weights)
}

/// Stabilizer of the weight inside the dihedral subgroup, as element ids.
fn dihedral_stab(ctx: &Ctx, oc: &OrbitCtx, i: usize, a: usize, b: usize) -> Vec<WeylId> {
    ctx.group
        .parabolic_subgroup(&[a, b])
        .into_iter()
        .filter(|&w| oc.orbit.apply(&ctx.group, w, i) == i)
        .collect()
}

fn dihedral_standard(ctx: &Ctx, oc: &OrbitCtx, i: usize, a: usize, b: usize) -> bool {
    let stab = dihedral_stab(ctx, oc, i, a, b);
    for gens in [vec![], vec![a], vec![b], vec![a, b]] {
        if ctx.group.parabolic_subgroup(&gens) == stab {
            return true;
        }
    }
    false
}

fn dihedral_parabolic(ctx: &Ctx, oc: &OrbitCtx, i: usize, a: usize, b: usize) -> bool {
    let mut seen = vec![i];
    let mut frontier = vec![i];
    while let Some(j) = frontier.pop() {
        for &g in &[a, b] {
            let k = oc.orbit.reflect(j, g);
            if !seen.contains(&k) {
                seen.push(k);
                frontier.push(k);
            }
        }
    }
    seen.into_iter().any(|j| dihedral_standard(ctx, oc, j, a, b))
}

/// The unique index `t` for the braid correction at a dihedrally parabolic,
/// non-standard weight: the first prefix landing on a weight fixed by the
/// next letter (and standard parabolic for the pair). Swaps the pair when
/// `2t >= m` so that `2t < m` always holds for the returned order.
pub fn braid_t(
    ctx: &Ctx,
    oc: &OrbitCtx,
    i: usize,
    a: usize,
    b: usize,
) -> Result<(usize, usize, usize)> {
    let find = |x: usize, y: usize| -> Option<usize> {
        let m = ctx.datum().coxeter[x][y];
        let (letters, weights) = alternating_path(ctx, oc, i, x, y);
        (1..m).find(|&t| {
            let lam = weights[t];
            oc.orbit.reflect(lam, letters[t]) == lam && dihedral_standard(ctx, oc, lam, x, y)
        })
    };
    let m = ctx.datum().coxeter[a][b];
    let t = find(a, b).ok_or_else(|| {
        Error::BadInput(format!(
            "no braid-correction index at weight {} pair ({a},{b})",
            oc.label(i)
        ))
    })?;
    if 2 * t < m {
        Ok((t, a, b))
    } else {
        let t2 = find(b, a).ok_or_else(|| {
            Error::BadInput("no braid-correction index after swapping".into())
        })?;
        Ok((t2, b, a))
    }
}

/// The right-hand side of the corrected braid relation at a dihedrally
/// parabolic, non-standard weight (with `(a, b)` already normalized so that
/// `2t < m`): the divided-difference coefficient times the truncated word.
pub fn braid_correction(
    ctx: &Ctx,
    oc: &OrbitCtx,
    datum: &Datum,
    images: &dyn Fn(usize, usize) -> Result<Skew>,
    i: usize,
    t: usize,
    a: usize,
    b: usize,
) -> Result<Skew> {
    let m = ctx.datum().coxeter[a][b];
    let (letters, weights) = alternating_path(ctx, oc, i, a, b);
    // P = prod_{k=1}^{t} (s_{a_t} ... s_{a_{k+1}}) (G_{a_k}^{l_{k+1}}),
    // anchored at l_{t+1} (1-based indices).
    let mut p = Frac::from_poly(ctx.one());
    for k in 1..=t {
        let g = datum.value(ctx, oc, weights[k], letters[k - 1])?;
        // Prefix word in action order: letters k+1 .. t (1-based), i.e.
        // indices k..t-1 (0-based).
        let prefix: Vec<usize> = letters[k..t].to_vec();
        let w = ctx.group.from_word(&prefix);
        p = p.mul(&g.w_act(ctx, w));
    }
    // hD at the fixed weight l_{t+1} in the direction of letter t+1.
    let hd = hd_fixed(ctx, letters[t], &p)?;
    // Prefix s_{a_m} ... s_{a_{t+2}}: letters t+2..m (1-based) = t+1..m-1.
    let prefix: Vec<usize> = letters[t + 1..m].to_vec();
    let w = ctx.group.from_word(&prefix);
    let coeff = hd.w_act(ctx, w);
    // Truncated word: letters 2t+2..m (1-based) = 2t+1..m-1 (0-based) from
    // weight l_{2t+2} = weights[2t+1].
    let tail_letters: Vec<usize> = letters[2 * t + 1..m].to_vec();
    let start = weights[2 * t + 1];
    let mut tail = Skew::identity(ctx);
    let mut at = start;
    for &l in &tail_letters {
        tail = images(at, l)?.compose(ctx, &tail);
        at = oc.orbit.reflect(at, l);
    }
    Ok(tail.left_mul(&coeff))
}

/// Verify the defining relations on every weight of the orbit with the
/// given generator images: bookkeeping, quadratic, commutation against a
/// spanning set, and the dihedral braid relations with their corrections.
pub fn verify_relations_with(
    ctx: &Ctx,
    oc: &OrbitCtx,
    datum: &Datum,
    images: &dyn Fn(usize, usize) -> Result<Skew>,
    comm_degree: i32,
) -> Result<CheckReport> {
    let mut rep = CheckReport::new();
    let n = ctx.group.rank();
    let monomials = ctx.monomials_up_to(comm_degree);
    for i in 0..oc.len() {
        for a in 0..n {
            let img = images(i, a)?;
            let j = oc.orbit.reflect(i, a);
            // Weight bookkeeping: every component carries block i to block j.
            let ok = img.support().iter().all(|&w| {
                oc.orbit.apply(&ctx.group, w, i) == j
            });
            let ctxt = format!("weight {} root {a}", oc.label(i));
            if ok {
                rep.pass("relations.bookkeeping", ctxt);
            } else {
                rep.fail("relations.bookkeeping", ctxt, img.render(ctx));
            }

            // Quadratic relation.
            let up = images(j, a)?;
            let prod = up.compose(ctx, &img);
            let expected = if oc.fixed[i][a] {
                img.scale(&ctx.h0)
            } else {
                let g = datum.value(ctx, oc, i, a)?;
                Skew::term(g, ctx.group.identity)
            };
            let ctxt = format!("weight {} root {a}", oc.label(i));
            if prod.equals(ctx, &expected) {
                rep.pass("relations.quadratic", ctxt);
            } else {
                rep.fail("relations.quadratic", ctxt, prod.render(ctx));
            }

            // Commutation: r f - s(f) r = 0, or hD(f) on fixed weights.
            let mut comm_ok = true;
            let mut witness = String::new();
            for f in &monomials {
                let ff = Frac::from_poly(f.clone());
                let lhs = img
                    .compose(ctx, &Skew::term(ff.clone(), ctx.group.identity))
                    .sub(&Skew::term(ff.s_act(ctx, a), ctx.group.identity).compose(ctx, &img));
                let rhs = if oc.fixed[i][a] {
                    Skew::term(Frac::from_poly(ctx.hd(a, f)?), ctx.group.identity)
                } else {
                    Skew::zero()
                };
                if !lhs.equals(ctx, &rhs) {
                    comm_ok = false;
                    witness = format!("f = {}: {}", ctx.render(f), lhs.render(ctx));
                    break;
                }
            }
            let ctxt = format!("weight {} root {a}", oc.label(i));
            if comm_ok {
                rep.pass("relations.commutation", ctxt);
            } else {
                rep.fail("relations.commutation", ctxt, witness);
            }
        }

        // Braid relations per unordered pair.
        for a in 0..n {
            for b in a + 1..n {
                braid_check(ctx, oc, datum, images, i, a, b, &mut rep)?;
            }
        }
    }
    Ok(rep)
}

#[allow(clippy::too_many_arguments)]
fn braid_check(
    ctx: &Ctx,
    oc: &OrbitCtx,
    datum: &Datum,
    images: &dyn Fn(usize, usize) -> Result<Skew>,
    i: usize,
    a: usize,
    b: usize,
    rep: &mut CheckReport,
) -> Result<()> {
    let word_image = |start: usize, x: usize, y: usize| -> Result<Skew> {
        let (letters, _) = alternating_path(ctx, oc, start, x, y);
        let mut acc = Skew::identity(ctx);
        let mut at = start;
        for &l in &letters {
            acc = images(at, l)?.compose(ctx, &acc);
            at = oc.orbit.reflect(at, l);
        }
        Ok(acc)
    };

    let parabolic = dihedral_parabolic(ctx, oc, i, a, b);
    let standard = dihedral_standard(ctx, oc, i, a, b);
    if standard || !parabolic {
        // Plain braid relation: imposed for standard-parabolic weights and
        // for non-parabolic weights fixed by one reflection; derived (zero
        // difference) for the remaining non-parabolic weights.
        let diff = word_image(i, a, b)?.sub(&word_image(i, b, a)?);
        let check = if standard {
            "relations.braid"
        } else {
            "relations.braid_exceptional"
        };
        let ctxt = format!("weight {} roots ({a},{b})", oc.label(i));
        if diff.is_zero() || diff.equals(ctx, &Skew::zero()) {
            rep.pass(check, ctxt);
        } else {
            rep.fail(check, ctxt, diff.render(ctx));
        }
        return Ok(());
    }

    // Parabolic, non-standard: the corrected relation.
    let (t, x, y) = braid_t(ctx, oc, i, a, b)?;
    let diff = word_image(i, x, y)?.sub(&word_image(i, y, x)?);
    let corr = braid_correction(ctx, oc, datum, images, i, t, x, y)?;
    let ctxt = format!("weight {} roots ({x},{y}) t={t}", oc.label(i));
    if diff.equals(ctx, &corr) {
        rep.pass("relations.braid_corrected", ctxt);
    } else {
        rep.fail(
            "relations.braid_corrected",
            ctxt,
            format!("diff {} vs corr {}", diff.render(ctx), corr.render(ctx)),
        );
    }
    Ok(())
}

/// Unit-twisted generator images `tau = r . F(ratio)` realizing the algebra
/// of the datum `h` inside the engine of `g`. Returns the twisted image
/// provider and the splitting family of the ratio.
pub fn unit_twist_images<'e>(
    engine: &'e Engine<'e>,
    h: &'e Datum,
) -> Result<(
    impl Fn(usize, usize) -> Result<Skew> + 'e,
    SplitFamily,
)> {
    let ctx = engine.ctx;
    let oc = engine.oc;
    let g = &engine.datum;
    let ratio = move |i: usize, a: usize| crate::datum::datum_ratio(ctx, oc, g, h, i, a);
    let fam = crate::datum::splitting_family_by(ctx, oc, &ratio)?;
    let fam2 = fam.clone();
    let provider = move |i: usize, a: usize| -> Result<Skew> {
        let base = engine.generator_image(i, a)?;
        let f = fam2.value_by(ctx, oc, &|x, y| {
            crate::datum::datum_ratio(ctx, oc, g, h, x, y)
        }, i, a)?;
        Ok(base.compose(ctx, &Skew::term(f, ctx.group.identity)))
    };
    Ok((provider, fam))
}

/// Checks of the renormalized model: the operator quadratic and braid
/// identities, the commutation formula, the cross-block composite, and the
/// correspondence with the engine's own generator images.
pub fn dl_model_checks(engine: &Engine) -> Result<CheckReport> {
    let ctx = engine.ctx;
    let oc = engine.oc;
    let mut rep = CheckReport::new();
    let n = ctx.group.rank();

    // Operator quadratic: (T + 1)(T - q) = 0.
    for a in 0..n {
        let t = engine.dl_t(a)?;
        let q = &engine.datum.params.q[a];
        let one = Skew::identity(ctx);
        let lhs = t
            .compose(ctx, &t)
            .add(&t.scale(&scalar_one(ctx).sub(q)))
            .sub(&one.scale(q));
        let ctxt = format!("root {a}");
        if lhs.is_zero() || lhs.equals(ctx, &Skew::zero()) {
            rep.pass("dl.quadratic", ctxt);
        } else {
            rep.fail("dl.quadratic", ctxt, lhs.render(ctx));
        }
        // Commutation: T f - s(f) T = c hD(f).
        let mut ok = true;
        let mut witness = String::new();
        for f in ctx.monomials_up_to(2) {
            let ff = Frac::from_poly(f.clone());
            let lhs = t
                .compose(ctx, &Skew::term(ff.clone(), ctx.group.identity))
                .sub(&Skew::term(ff.s_act(ctx, a), ctx.group.identity).compose(ctx, &t));
            let rhs = Skew::term(
                Frac::from_poly(ctx.hd(a, &f)?.scale(&engine.datum.params.c[a])),
                ctx.group.identity,
            );
            if !lhs.equals(ctx, &rhs) {
                ok = false;
                witness = format!("f = {}", ctx.render(&f));
                break;
            }
        }
        let ctxt = format!("root {a}");
        if ok {
            rep.pass("dl.commutation", ctxt);
        } else {
            rep.fail("dl.commutation", ctxt, witness);
        }
    }

    // Operator braid relations.
    for a in 0..n {
        for b in a + 1..n {
            let m = ctx.datum().coxeter[a][b];
            let mut lhs = Skew::identity(ctx);
            let mut rhs = Skew::identity(ctx);
            for k in 0..m {
                let (x, y) = if k % 2 == 0 { (a, b) } else { (b, a) };
                lhs = engine.dl_t(x)?.compose(ctx, &lhs);
                rhs = engine.dl_t(y)?.compose(ctx, &rhs);
            }
            let ctxt = format!("roots ({a},{b})");
            if lhs.equals(ctx, &rhs) {
                rep.pass("dl.braid", ctxt);
            } else {
                rep.fail("dl.braid", ctxt, lhs.sub(&rhs).render(ctx));
            }
        }
    }

    // The model images satisfy the defining relations.
    let images = |i: usize, a: usize| engine.dl_generator_image(i, a);
    let rel = verify_relations_with(ctx, oc, &engine.datum, &images, 2)?;
    let pass = rel.all_pass();
    rep.merge(rel);
    let _ = pass;

    // Cross-block composite at moving weights:
    // 1_l T 1_{s l} T 1_l = (c + q P_{-a})(P_{-a} - c)(-P_{-a})^{-2}.
    for i in 0..oc.len() {
        for a in 0..n {
            if oc.fixed[i][a] {
                continue;
            }
            let j = oc.orbit.reflect(i, a);
            let t = engine.dl_t(a)?;
            let down = engine.block_project(&t, i, j);
            let back = engine.block_project(&t, j, i);
            let composite = back.compose(ctx, &down);
            let c = ctx.constant(&engine.datum.params.c[a]);
            let q = &engine.datum.params.q[a];
            let p_neg = ctx.neg_p_neg(a).neg();
            let num = c.add(&p_neg.scale(q)).mul(&p_neg.sub(&c));
            let expect = Skew::term(
                Frac::new(num, vec![ctx.neg_p_neg(a), ctx.neg_p_neg(a)])?,
                ctx.group.identity,
            );
            let ctxt = format!("weight {} root {a}", oc.label(i));
            if composite.equals(ctx, &expect) {
                rep.pass("dl.composite", ctxt);
            } else {
                rep.fail("dl.composite", ctxt, composite.render(ctx));
            }
        }
    }

    // Correspondence with the engine images: literal on fixed and
    // exceptional directions; elsewhere a single PBW word with a coefficient
    // invertible at the source, consistent across the orbit via one diagonal
    // family of units.
    correspondence_check(engine, &mut rep)?;
    Ok(rep)
}

fn scalar_one(ctx: &Ctx) -> crate::field::Scalar {
    crate::field::Scalar::one(ctx.kind)
}

fn correspondence_check(engine: &Engine, rep: &mut CheckReport) -> Result<()> {
    let ctx = engine.ctx;
    let oc = engine.oc;
    let n = ctx.group.rank();
    for i in 0..oc.len() {
        for a in 0..n {
            let dl = engine.dl_generator_image(i, a)?;
            let eng = engine.generator_image(i, a)?;
            let ctxt = format!("weight {} root {a}", oc.label(i));
            if oc.fixed[i][a] || oc.exceptional[i][a] {
                if dl.equals(ctx, &eng) {
                    rep.pass("dl.match_literal", ctxt);
                } else {
                    rep.fail("dl.match_literal", ctxt, dl.render(ctx));
                }
            } else {
                // A single cross-block term with a nonzero coefficient; the
                // exact correspondence with the engine image is the diagonal
                // unit family checked below.
                let sa = ctx.group.prepend_last(ctx.group.identity, a);
                let ok = dl.coeffs.len() == 1 && !dl.coeff(ctx, sa).is_zero();
                if ok {
                    rep.pass("dl.match_single_term", ctxt);
                } else {
                    rep.fail("dl.match_single_term", ctxt, dl.render(ctx));
                }
            }
        }
    }

    // The model has free PBW images of its own: chains of model generators
    // along canonical words are triangular with nonzero leading term.
    for i in 0..oc.len() {
        let mut ok = true;
        let mut witness = String::new();
        for w in 0..ctx.group.order() {
            let word = ctx.group.words[w].clone();
            let mut acc = Skew::identity(ctx);
            let mut at = i;
            for &l in &word {
                acc = engine.dl_generator_image(at, l)?.compose(ctx, &acc);
                at = oc.orbit.reflect(at, l);
            }
            let lw = ctx.group.length(w);
            let triangular = acc
                .support()
                .iter()
                .all(|&v| v == w || ctx.group.length(v) < lw);
            if !triangular || acc.coeff(ctx, w).is_zero() {
                ok = false;
                witness = format!("word {word:?}");
                break;
            }
        }
        let ctxt = format!("weight {}", oc.label(i));
        if ok {
            rep.pass("dl.pbw_triangular", ctxt);
        } else {
            rep.fail("dl.pbw_triangular", ctxt, witness);
        }
    }

    // Diagonal unit family: u at a base weight is 1; along every moving
    // edge, dl = u_{target} . eng . s_a(u_source)^{-1}.
    let mut u: Vec<Option<Frac>> = vec![None; oc.len()];
    u[0] = Some(Frac::from_poly(ctx.one()));
    let mut frontier = vec![0usize];
    while let Some(i) = frontier.pop() {
        for a in 0..n {
            if oc.fixed[i][a] {
                continue;
            }
            let j = oc.orbit.reflect(i, a);
            if u[j].is_some() {
                continue;
            }
            let dl = engine.dl_generator_image(i, a)?;
            let eng = engine.generator_image(i, a)?;
            let sa = ctx.group.prepend_last(ctx.group.identity, a);
            let dc = dl.coeff(ctx, sa);
            let ec = eng.coeff(ctx, sa);
            let ui = u[i].clone().unwrap();
            // dc = u_j * ec * s_a(u_i)^{-1}  =>  u_j = dc * s_a(u_i) / ec.
            let uj = dc.mul(&ui.s_act(ctx, a)).div(&ec)?;
            u[j] = Some(uj);
            frontier.push(j);
        }
    }
    let mut consistent = true;
    let mut witness = String::new();
    for i in 0..oc.len() {
        for a in 0..n {
            let (Some(ui), Some(uj)) = (u[i].clone(), u[oc.orbit.reflect(i, a)].clone()) else {
                continue;
            };
            if oc.fixed[i][a] {
                // Conjugation must fix the divided difference: u invariant.
                if !ui.s_act(ctx, a).equals(&ui) {
                    consistent = false;
                    witness = format!("unit at weight {} not invariant", oc.label(i));
                }
                continue;
            }
            let dl = engine.dl_generator_image(i, a)?;
            let eng = engine.generator_image(i, a)?;
            let sa = ctx.group.prepend_last(ctx.group.identity, a);
            let lhs = dl.coeff(ctx, sa);
            let rhs = uj.mul(&eng.coeff(ctx, sa)).div(&ui.s_act(ctx, a))?;
            if !lhs.equals(&rhs) {
                consistent = false;
                witness = format!("edge at weight {} root {a}", oc.label(i));
            }
        }
    }
    if consistent {
        rep.pass("dl.match_conjugate", "orbit".into());
    } else {
        rep.fail("dl.match_conjugate", "orbit".into(), witness);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::HeckeParams;
    use crate::field::{FieldKind, Scalar};
    use crate::root_datum::RootDatum;
    use crate::weight::Weight;
    use crate::weyl::WeylGroup;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n, FieldKind::Q)
    }

    fn setup(
        name: &str,
        h0: i64,
        pairings: &[i64],
    ) -> (Ctx, OrbitCtx) {
        let g = WeylGroup::new(&RootDatum::named(name).unwrap()).unwrap();
        let ctx = Ctx::new(g, q(h0));
        let l = Weight::from_root_pairings(
            ctx.datum(),
            &pairings.iter().map(|&n| q(n)).collect::<Vec<_>>(),
        )
        .unwrap();
        let oc = OrbitCtx::new(&ctx, &l);
        (ctx, oc)
    }

    #[test]
    fn sl3_generator_products() {
        let (ctx, oc) = setup("A2", 0, &[0, 1]);
        let params = HeckeParams::uniform(&ctx, q(1)).unwrap();
        let datum = Datum::graded(&ctx, params).unwrap();
        let engine = Engine::new(&ctx, &oc, datum).unwrap();
        let l = oc
            .orbit
            .id_of(&Weight::from_root_pairings(ctx.datum(), &[q(0), q(1)]).unwrap())
            .unwrap();

        // Unit times unit.
        let one = QHElem::unit(&ctx, l);
        assert!(engine.multiply(&one, &one).unwrap().equals(&ctx, &one));

        // Quadratic at the moving direction: r_b^{s_b l} r_b^l = H_b^l . e
        let mu = oc.orbit.reflect(l, 1);
        let down = engine.chain_elem(l, &[1, 1]).unwrap();
        let expect_poly = ctx.one().sub(&ctx.p_of_simple(1)); // c - P_b at <l,b> = c
        assert_eq!(down.coeffs.len(), 1);
        assert!(down.coeffs[&ctx.group.identity].equals(&Frac::from_poly(expect_poly)));
        let _ = mu;

        // Quadratic at the fixed direction: r_a r_a = h0 r_a = 0.
        let sq = engine.chain_elem(l, &[0, 0]).unwrap();
        assert!(sq.is_zero());
    }

    #[test]
    fn pbw_indicator_and_longest_word() {
        let (ctx, oc) = setup("A2", 0, &[2, 5]);
        let params = HeckeParams::uniform(&ctx, q(1)).unwrap();
        let datum = Datum::canonical(params);
        let engine = Engine::new(&ctx, &oc, datum).unwrap();
        let i = 0;
        // Image of a PBW word normal-forms to the indicator coefficient.
        for w in 0..ctx.group.order() {
            let img = engine.pbw_image(i, w).unwrap();
            let nf = engine.normal_form(&img, i).unwrap();
            assert_eq!(nf.coeffs.len(), 1);
            let c = &nf.coeffs[&w];
            assert!(c.equals(&Frac::from_poly(ctx.one())), "word {:?}", ctx.group.words[w]);
        }
        // Product of the generators along the longest word: coefficient 1 on
        // the longest word (regular weight).
        let w0 = ctx.group.longest;
        let word = ctx.group.words[w0].clone();
        let el = engine.chain_elem(i, &word).unwrap();
        assert_eq!(el.coeffs.len(), 1);
        assert!(el.coeffs[&w0].equals(&Frac::from_poly(ctx.one())));
    }

    #[test]
    fn braid_at_fixed_weight_renormalizes() {
        // r_b r_a r_b = r_a r_b r_a at the weight fixed by s_a.
        let (ctx, oc) = setup("A2", 0, &[0, 1]);
        let params = HeckeParams::uniform(&ctx, q(1)).unwrap();
        let datum = Datum::graded(&ctx, params).unwrap();
        let engine = Engine::new(&ctx, &oc, datum).unwrap();
        let l = 0;
        let lhs = engine.chain_image(l, &[0, 1, 0]).unwrap();
        let rhs = engine.chain_image(l, &[1, 0, 1]).unwrap();
        assert!(lhs.equals(&ctx, &rhs));
    }

    #[test]
    fn relation_sweep_sl3_graded() {
        let (ctx, oc) = setup("A2", 0, &[0, 1]);
        let params = HeckeParams::uniform(&ctx, q(1)).unwrap();
        let datum = Datum::graded(&ctx, params).unwrap();
        let engine = Engine::new(&ctx, &oc, datum).unwrap();
        let rep = engine.verify_relations().unwrap();
        assert!(rep.all_pass(), "{}", rep.summary());
    }

    #[test]
    fn relation_sweep_sl3_canonical() {
        let (ctx, oc) = setup("A2", 0, &[0, 1]);
        let params = HeckeParams::uniform(&ctx, q(1)).unwrap();
        let datum = Datum::canonical(params);
        let engine = Engine::new(&ctx, &oc, datum).unwrap();
        let rep = engine.verify_relations().unwrap();
        assert!(rep.all_pass(), "{}", rep.summary());
    }

    #[test]
    fn corrected_braid_constant_sl3() {
        // At the non-standard weight of the parabolic orbit the two braid
        // words differ by the constant -1 for the graded family with c = 1.
        let (ctx, oc) = setup("A2", 0, &[0, 1]);
        let params = HeckeParams::uniform(&ctx, q(1)).unwrap();
        let datum = Datum::graded(&ctx, params).unwrap();
        let engine = Engine::new(&ctx, &oc, datum).unwrap();
        let l = 0;
        let mu = oc.orbit.reflect(l, 1); // s_b l: fixed by neither
        assert!(!oc.fixed[mu][0] && !oc.fixed[mu][1]);
        let lhs = engine.chain_image(mu, &[0, 1, 0]).unwrap();
        let rhs = engine.chain_image(mu, &[1, 0, 1]).unwrap();
        let diff = lhs.sub(&rhs);
        let expect = Skew::term(
            Frac::from_poly(ctx.scalar(-1)),
            ctx.group.identity,
        );
        assert!(diff.equals(&ctx, &expect), "diff = {}", diff.render(&ctx));
    }

    #[test]
    fn exceptional_orbit_relations_b2_g2() {
        for (name, entries) in [("B2", [1i64, -1]), ("G2", [-1, 1])] {
            let g = WeylGroup::new(&RootDatum::named(name).unwrap()).unwrap();
            let ctx = Ctx::new(g, q(1));
            let params = HeckeParams::uniform(&ctx, q(1)).unwrap();
            let datum = Datum::canonical(params);
            let l = Weight::multiplicative(entries.iter().map(|&n| q(n)).collect::<Vec<_>>())
                .unwrap();
            let oc = OrbitCtx::new(&ctx, &l);
            let engine = Engine::new(&ctx, &oc, datum).unwrap();
            let rep = engine.verify_relations().unwrap();
            assert!(rep.all_pass(), "{name}: {}", rep.summary());
        }
    }

    #[test]
    fn associativity_on_generator_products() {
        let (ctx, oc) = setup("A2", 0, &[0, 1]);
        let params = HeckeParams::uniform(&ctx, q(1)).unwrap();
        let datum = Datum::canonical(params);
        let engine = Engine::new(&ctx, &oc, datum).unwrap();
        // Words from the parabolic weight.
        let l = 0;
        let words: Vec<Vec<usize>> = vec![vec![0], vec![1], vec![1, 0], vec![0, 1], vec![1, 0, 1]];
        for wa in &words {
            for wb in &words {
                for wc in &words {
                    let pa = engine.path(l, wc);
                    let at_c = *pa.last().unwrap();
                    let c = engine.chain_elem(l, wc).unwrap();
                    let pb = engine.path(at_c, wb);
                    let at_b = *pb.last().unwrap();
                    let b = engine.chain_elem(at_c, wb).unwrap();
                    let a = engine.chain_elem(at_b, wa).unwrap();
                    let left = engine
                        .multiply(&engine.multiply(&a, &b).unwrap(), &c)
                        .unwrap();
                    let right = engine
                        .multiply(&a, &engine.multiply(&b, &c).unwrap())
                        .unwrap();
                    assert!(left.equals(&ctx, &right));
                }
            }
        }
    }

    #[test]
    fn dl_model_sl2() {
        for h0 in [0i64, 1] {
            let g = WeylGroup::new(&RootDatum::named("A1").unwrap()).unwrap();
            let ctx = Ctx::new(g, q(h0));
            let params = HeckeParams::uniform(&ctx, q(1)).unwrap();
            let datum = Datum::canonical(params);
            let l = if h0 == 0 {
                Weight::additive(vec![q(3)])
            } else {
                Weight::multiplicative(vec![q(3)]).unwrap()
            };
            let oc = OrbitCtx::new(&ctx, &l);
            let engine = Engine::new(&ctx, &oc, datum).unwrap();
            let rep = dl_model_checks(&engine).unwrap();
            assert!(rep.all_pass(), "h0={h0}: {}", rep.summary());
        }
    }

    #[test]
    fn unit_twist_identity_and_graded() {
        let (ctx, oc) = setup("A2", 0, &[0, 1]);
        let params = HeckeParams::uniform(&ctx, q(1)).unwrap();
        let g = Datum::canonical(params.clone());
        let engine = Engine::new(&ctx, &oc, g.clone()).unwrap();
        // Trivial twist: h = g gives back the engine images.
        let (tw, _) = unit_twist_images(&engine, &g).unwrap();
        for i in 0..oc.len() {
            for a in 0..2 {
                assert!(tw(i, a)
                    .unwrap()
                    .equals(&ctx, &engine.generator_image(i, a).unwrap()));
            }
        }
        // Twist from the canonical family to the graded one.
        let h = Datum::graded(&ctx, params).unwrap();
        let (tw, _) = unit_twist_images(&engine, &h).unwrap();
        let rep = verify_relations_with(&ctx, &oc, &h, &|i, a| tw(i, a), 2).unwrap();
        assert!(rep.all_pass(), "{}", rep.summary());
    }
}
