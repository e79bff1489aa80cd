//! Pointwise Iwasawa sums: evaluate every factor on actual matrices over
//! all units mod p^K and compare each (i, v(a)) shell with the character
//! convolution.

use std::sync::Arc;

use equidist::cyclo::{euler_phi, rat_int, Rational};
use equidist::kirillov::mock_supercuspidal_in;
use equidist::local_integrals::*;
use equidist::matrix_coeff::*;
use equidist::padic::LocalCtx;
use equidist::whittaker::*;
use equidist::CycloNumber;
use num_traits::{One, Zero};

fn factor(slot: &Slot, g: &Mat2, p: u64) -> CycloNumber {
    match slot {
        Slot::Steinberg { rep, n_old } => phi_steinberg(rep, &g.old_conjugate(p, *n_old)).unwrap(),
        Slot::Newform { prov, n_old } => phi_general(prov.as_ref(), &g.old_conjugate(p, *n_old)).unwrap(),
    }
}

fn brute_shell(cfg: &TripleConfig, ctx: &LocalCtx, i: u32, va: i64, tmax: i64, k: u32) -> CycloNumber {
    let p = ctx.p;
    let pk = p.pow(k);
    let s2 = Slot::Newform { prov: cfg.second.clone(), n_old: 0 };
    let s3 = Slot::Newform { prov: cfg.third.clone(), n_old: 0 };
    let mut acc = ctx.zero();
    for vm in std::iter::once(None).chain((1..=tmax).map(|t| Some(-t))) {
        let m = vm.map(|v| p_pow(p, v)).unwrap_or_else(Rational::zero);
        let mass = match vm {
            None => Rational::one(),
            Some(v) => p_pow(p, -v) * (Rational::one() - p_pow(p, -1)),
        };
        let mut s = ctx.zero();
        for r in 1..pk {
            if r % p == 0 {
                continue;
            }
            let a = rat_int(r as i64) * p_pow(p, va);
            let g = Mat2::borel_lower(&a, &m, p, i as i64);
            let v2 = factor(&s2, &g, p);
            if v2.is_zero() {
                continue;
            }
            let v3 = factor(&s3, &g, p);
            if v3.is_zero() {
                continue;
            }
            let v1 = factor(&cfg.first, &g, p).lift_modulus(ctx.m).unwrap();
            s = &s + &(&(&v1 * &v2) * &v3);
        }
        let w = &mass / rat_int(euler_phi(pk) as i64);
        acc = &acc + &s.scale(&w);
    }
    acc.scale(&p_pow(p, va))
}

fn check(cfg: &TripleConfig, k: u32, va_max: i64) {
    let ctx = cfg.second.ctx();
    let c = cfg.second.conductor() as i64;
    let tmax = c + cfg.first.n_old() + 1;
    for i in 0..=c as u32 {
        for va in -c - 1..=va_max {
            let fast = triple_shell(cfg, ctx, i, va, tmax).unwrap();
            let slow = brute_shell(cfg, ctx, i, va, tmax, k);
            assert_eq!(fast, slow, "i = {} va = {}", i, va);
        }
    }
}

fn providers(p: u64, c: u32) -> (LocalCtx, Vec<Arc<dyn NewformProvider>>) {
    let ctx = LocalCtx::new(p, c, 4).unwrap();
    let mut v: Vec<Arc<dyn NewformProvider>> = Vec::new();
    for seed in [1, 2] {
        let d = mock_supercuspidal_in(ctx.clone(), c, seed).unwrap();
        v.push(Arc::new(ScProvider::new(d).unwrap()));
    }
    let rep = PrincipalSeriesRamified::trivial_central(p, c / 2, 1, 4, 1).unwrap();
    let eng = PsEngine::in_ctx(&rep, DuConvention::Additive, ctx.clone()).unwrap();
    v.push(Arc::new(PsProvider::new(eng)));
    (ctx, v)
}

#[test]
fn steinberg_first_slot_c2() {
    let (_, prov) = providers(3, 2);
    for chi in [1i64, -1] {
        let st = Slot::Steinberg { rep: SteinbergRep::new(3, CycloNumber::from_int(1, chi)).unwrap(), n_old: 0 };
        for (a, b) in [(0, 1), (2, 2), (0, 2)] {
            let cfg = TripleConfig { first: st.clone(), second: prov[a].clone(), third: prov[b].clone(), seed: None };
            check(&cfg, 5, 3);
        }
    }
}

#[test]
fn level_two_and_old_first_slots_c4() {
    let (ctx, prov) = providers(3, 4);
    let rep = PrincipalSeriesRamified::trivial_central(3, 1, 1, 1, 0).unwrap();
    let ps2: Arc<dyn NewformProvider> =
        Arc::new(PsProvider::new(PsEngine::in_ctx(&rep, DuConvention::Additive, ctx).unwrap()));
    let cfg = TripleConfig { first: Slot::Newform { prov: ps2, n_old: 0 }, second: prov[0].clone(), third: prov[1].clone(), seed: None };
    check(&cfg, 5, 1);
    let st = Slot::Steinberg { rep: SteinbergRep::trivial(3), n_old: 1 };
    let cfg = TripleConfig { first: st, second: prov[0].clone(), third: prov[1].clone(), seed: None };
    check(&cfg, 6, 1);
}
