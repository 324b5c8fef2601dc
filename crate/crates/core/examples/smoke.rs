use lqhecke::datum::{Datum, HeckeParams, OrbitCtx};
use lqhecke::field::{FieldKind, Scalar};
use lqhecke::qhecke::{dl_model_checks, Engine};
use lqhecke::ring::Ctx;
use lqhecke::weight::Weight;
use lqhecke::weyl::WeylGroup;
use lqhecke::RootDatum;

fn q(n: i64) -> Scalar { Scalar::from_int(n, FieldKind::Q) }

fn main() {
    // Corrected braid relations on B2 and G2 parabolic orbits (additive).
    for (name, pair) in [("B2", vec![0i64, 1]), ("G2", vec![0, 1]), ("B2", vec![1, 0]), ("G2", vec![1, 0])] {
        let t0 = std::time::Instant::now();
        let g = WeylGroup::new(&RootDatum::named(name).unwrap()).unwrap();
        let ctx = Ctx::new(g, q(0));
        let l = Weight::from_root_pairings(ctx.datum(), &pair.iter().map(|&n| q(n)).collect::<Vec<_>>()).unwrap();
        let oc = OrbitCtx::new(&ctx, &l);
        let params = HeckeParams::uniform(&ctx, q(1)).unwrap();
        for datum in [Datum::canonical(params.clone()), Datum::graded(&ctx, params.clone()).unwrap()] {
            let kindname = format!("{:?}", datum.kind);
            let engine = Engine::new(&ctx, &oc, datum).unwrap();
            let rep = engine.verify_relations().unwrap();
            println!("{name} {pair:?} {kindname}: orbit {} -> {} ({:?})", oc.len(), rep.summary(), t0.elapsed());
            for f in rep.failures() { println!("  FAIL {} {} {:?}", f.check, f.context, f.witness); }
        }
    }
    // DL model on SL3 both parameters.
    for h0 in [0i64, 1] {
        let t0 = std::time::Instant::now();
        let g = WeylGroup::new(&RootDatum::named("A2").unwrap()).unwrap();
        let ctx = Ctx::new(g, q(h0));
        let l = if h0 == 0 {
            Weight::from_root_pairings(ctx.datum(), &[q(0), q(1)]).unwrap()
        } else {
            Weight::multiplicative(vec![q(3), q(5)]).unwrap()
        };
        let oc = OrbitCtx::new(&ctx, &l);
        let params = HeckeParams::uniform(&ctx, q(1)).unwrap();
        let engine = Engine::new(&ctx, &oc, Datum::canonical(params)).unwrap();
        let rep = dl_model_checks(&engine).unwrap();
        println!("A2 DL h0={h0}: {} ({:?})", rep.summary(), t0.elapsed());
        for f in rep.failures() { println!("  FAIL {} {} {:?}", f.check, f.context, f.witness); }
    }
    // A3 PBW freeness on a regular orbit: the timing matters.
    let t0 = std::time::Instant::now();
    let g = WeylGroup::new(&RootDatum::named("A3").unwrap()).unwrap();
    let ctx = Ctx::new(g, q(0));
    let l = Weight::from_root_pairings(ctx.datum(), &[q(2), q(5), q(9)]).unwrap();
    let oc = OrbitCtx::new(&ctx, &l);
    let params = HeckeParams::uniform(&ctx, q(1)).unwrap();
    let engine = Engine::new(&ctx, &oc, Datum::canonical(params)).unwrap();
    let rep = engine.pbw_freeness(0).unwrap();
    println!("A3 PBW: {} ({:?})", rep.summary(), t0.elapsed());
}
