//! Local triple-product integrals, their normalization and the local
//! Rankin-Selberg integral, evaluated exactly over the Iwasawa cells.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::cyclo::{euler_phi, lcm_u64, rat_int, rat_to_f64, CycloNumber, CycloSum, Rational};
use crate::error::{Error, Result};
use crate::matrix_coeff::{
    p_pow, phi_cell, phi_general, steinberg_cell, CellFn, Mat2, NewformProvider, SteinbergRep,
};
use crate::padic::{LocalCtx, MultCharExtended};

#[derive(Clone, Debug, PartialEq)]
pub struct IwasawaWeights {
    pub p: u64,
    pub c: u32,
    pub weights: Vec<Rational>,
}

impl IwasawaWeights {
    pub fn sum(&self) -> Rational {
        self.weights.iter().fold(Rational::zero(), |a, b| a + b)
    }
}

/// Measure of `B (1 0; p^i 1) K1(p^c)` inside K, for `i = 0..=c`.
pub fn iwasawa_weights(p: u64, c: u32) -> Result<IwasawaWeights> {
    if c < 1 {
        return Err(Error::InvalidArgument("c must be >= 1".into()));
    }
    let pr = rat_int(p as i64);
    let p1 = &pr + Rational::one();
    let weights = (0..=c)
        .map(|i| {
            if i == 0 {
                &pr / &p1
            } else if i == c {
                Rational::one() / (&p1 * p_pow(p, c as i64 - 1))
            } else {
                (&pr - Rational::one()) / (&p1 * p_pow(p, i as i64))
            }
        })
        .collect();
    Ok(IwasawaWeights { p, c, weights })
}

/// One factor of the triple product: the Steinberg coefficient or a
/// ramified newform coefficient, optionally translated by
/// `diag(p^-n, 1)`.
#[derive(Clone)]
pub enum Slot {
    Steinberg { rep: SteinbergRep, n_old: i64 },
    Newform { prov: Arc<dyn NewformProvider>, n_old: i64 },
}

impl Slot {
    pub fn n_old(&self) -> i64 {
        match self {
            Slot::Steinberg { n_old, .. } | Slot::Newform { n_old, .. } => *n_old,
        }
    }

    pub fn conductor(&self) -> u32 {
        match self {
            Slot::Steinberg { .. } => 1,
            Slot::Newform { prov, .. } => prov.conductor(),
        }
    }

    fn trivial_central(&self) -> bool {
        match self {
            Slot::Steinberg { rep, .. } => (&rep.chi_at_p * &rep.chi_at_p) == CycloNumber::one(1),
            Slot::Newform { prov, .. } => prov.trivial_central(),
        }
    }

    /// Whether the cells at `i` can be nonzero for arbitrarily large `v(a)`.
    fn unbounded(&self, i: u32) -> bool {
        match self {
            Slot::Steinberg { .. } => true,
            Slot::Newform { prov, n_old } => {
                let ie = (i as i64 - n_old).max(0) as u32;
                *n_old > 0 && (i as i64) < *n_old
                    || prov.support(ie.min(prov.conductor())).1.is_none()
            }
        }
    }

    fn period(&self) -> u64 {
        match self {
            Slot::Steinberg { rep, .. } => rep.chi_at_p.root_of_unity().map(|x| x.0).unwrap_or(1),
            Slot::Newform { prov, .. } => prov.period(),
        }
    }

    pub fn describe(&self) -> Value {
        match self {
            Slot::Steinberg { rep, n_old } => json!({"rep": rep.to_json(), "n_old": n_old}),
            Slot::Newform { prov, n_old } => json!({"rep": prov.describe(), "n_old": n_old}),
        }
    }

    pub fn cell(&self, ctx: &LocalCtx, i: u32, va: i64, vm: Option<i64>) -> Result<CellFn> {
        match self {
            Slot::Steinberg { rep, n_old } => Ok(steinberg_cell(rep, ctx, *n_old, i, va, vm)),
            Slot::Newform { prov, n_old } => {
                let n = *n_old;
                if i as i64 >= n {
                    let vm2 = vm.map(|v| v + n);
                    phi_cell(prov.as_ref(), (i as i64 - n) as u32, va, vm2)
                } else {
                    oldform_cell_pointwise(prov.as_ref(), n, i, va, vm)
                }
            }
        }
    }
}

/// Fourier expansion in `r` of `Phi~((r p^va, p^vm; 0 1)(1 0; p^i 1))` by
/// direct evaluation over units mod `p^kmax`.
fn oldform_cell_pointwise(
    prov: &dyn NewformProvider,
    n: i64,
    i: u32,
    va: i64,
    vm: Option<i64>,
) -> Result<CellFn> {
    let ctx = prov.ctx();
    let p = ctx.p;
    let k = ctx.kmax;
    let pk = ctx.pk();
    let m = vm.map(|v| p_pow(p, v)).unwrap_or_else(Rational::zero);
    let mut vals = Vec::new();
    for r in 1..pk {
        if r % p == 0 {
            continue;
        }
        let a = rat_int(r as i64) * p_pow(p, va);
        let g = Mat2::borel_lower(&a, &m, p, i as i64).old_conjugate(p, n);
        vals.push((r, phi_general(prov, &g)?));
    }
    let scale = Rational::new(BigInt::one(), BigInt::from(euler_phi(pk)));
    let mut coeffs = BTreeMap::new();
    for t in ctx.chars_up_to(k) {
        let mut sum = CycloSum::new(ctx.m);
        for (r, v) in &vals {
            sum.add(&v.mul_root(-(ctx.char_exp(t, *r) as i64)));
        }
        let acc = sum.finish();
        if !acc.is_zero() {
            coeffs.insert(t, acc.scale(&scale));
        }
    }
    Ok(CellFn { coeffs })
}

/// `int_{O*} f1 f2 f3 d*r` from character expansions.
pub fn convolve3(ctx: &LocalCtx, f: [&CellFn; 3]) -> CycloNumber {
    let mut idx = [0usize, 1, 2];
    idx.sort_by_key(|&j| f[j].coeffs.len());
    let (a, b, c) = (f[idx[0]], f[idx[1]], f[idx[2]]);
    let mut acc = CycloSum::new(ctx.m);
    for (t1, x) in &a.coeffs {
        for (t2, y) in &b.coeffs {
            let t3 = ctx.inv(ctx.mul(*t1, *t2));
            if let Some(z) = c.coeffs.get(&t3) {
                acc.add(&(&(x * y) * z));
            }
        }
    }
    acc.finish()
}

/// Exact `sum_{n >= n0} f(n)` for `f(n) = p^-n Q(n)` with `Q` quasi-
/// polynomial (cyclotomic coefficients) of the given period and degree,
/// certified on two extra samples per residue class.
pub fn geometric_tail_cyclo<F>(f: F, n0: i64, period: u64, p: u64, deg: usize) -> Result<CycloNumber>
where
    F: Fn(i64) -> Result<CycloNumber>,
{
    let per = period as i64;
    let y = p_pow(p, -per);
    let one_minus_y = Rational::one() - &y;
    let mut total: Option<CycloNumber> = None;
    for rho in 0..per {
        let start = n0 + rho;
        let samples: Vec<CycloNumber> = (0..deg as i64 + 3)
            .map(|m| {
                let n = start + per * m;
                f(n).map(|v| v.scale(&p_pow(p, n)))
            })
            .collect::<Result<_>>()?;
        let mut diffs = vec![samples];
        for d in 1..deg + 3 {
            let prev = &diffs[d - 1];
            diffs.push((1..prev.len()).map(|j| &prev[j] - &prev[j - 1]).collect());
        }
        for d in deg + 1..diffs.len() {
            if diffs[d].iter().any(|x| !x.is_zero()) {
                return Err(Error::TruncationUnstable(format!(
                    "tail from {} is not quasi-polynomial of degree {}",
                    n0, deg
                )));
            }
        }
        let mut s = diffs[0][0].scale(&Rational::zero());
        let mut yd = Rational::one();
        let mut den = one_minus_y.clone();
        for d in diffs.iter().take(deg + 1) {
            s = &s + &d[0].scale(&(&yd / &den));
            yd *= &y;
            den *= &one_minus_y;
        }
        let s = s.scale(&p_pow(p, -start));
        total = Some(match total {
            None => s,
            Some(t) => &t + &s,
        });
    }
    Ok(total.expect("period >= 1"))
}

/// Squared modulus of a value, exact when rational.
#[derive(Clone, Debug, PartialEq)]
pub enum NormSq {
    Exact(Rational),
    Float(f64),
}

impl NormSq {
    pub fn to_json(&self) -> Value {
        match self {
            NormSq::Exact(q) => json!([q.numer().to_string(), q.denom().to_string()]),
            NormSq::Float(x) => json!(x),
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            NormSq::Exact(q) => rat_to_f64(q),
            NormSq::Float(x) => *x,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub check: String,
    pub p: u64,
    pub c: u32,
    pub config: Value,
    pub value: Option<CycloNumber>,
    pub norm_squared: NormSq,
    pub bound: Rational,
    pub pass: bool,
    pub window: Value,
    pub seed: Option<u64>,
    pub anchor: &'static str,
}

impl BoundReport {
    /// `|value|^2 <= bound^2`.  Exact when the value is rational or small;
    /// dense values are first compared through a certified interval and
    /// multiplied out only when the interval cannot decide.
    fn assess(value: &CycloNumber, bound: &Rational) -> Result<(NormSq, bool)> {
        let b2 = bound * bound;
        if let Some(q) = value.as_rational() {
            let n = &q * &q;
            let pass = n <= b2;
            return Ok((NormSq::Exact(n), pass));
        }
        if value.num_terms() > EXACT_NORM_TERMS {
            let (z, err) = value.to_complex_with_error();
            let r = z.norm();
            let (lo, hi) = ((r - err).max(0.0).powi(2), (r + err).powi(2));
            let bf = rat_to_f64(&b2);
            let slack = bf * 1e-12;
            if hi + slack < bf {
                return Ok((NormSq::Float(r * r), true));
            }
            if lo - slack > bf {
                return Ok((NormSq::Float(r * r), false));
            }
        }
        let n = value * &value.conj();
        if let Some(q) = n.as_rational() {
            let pass = q <= b2;
            return Ok((NormSq::Exact(q), pass));
        }
        let x = n.to_complex().re;
        let pass = n.certified_le(&b2).ok_or_else(|| {
            Error::TruncationInsufficient(format!("|value|^2 = {} too close to bound", x))
        })?;
        Ok((NormSq::Float(x), pass))
    }

    pub fn ratio(&self) -> f64 {
        self.norm_squared.as_f64().sqrt() / rat_to_f64(&self.bound)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "anchor": self.anchor,
            "p": self.p,
            "c": self.c,
            "config": self.config,
            "value": {
                "exact": matches!(self.norm_squared, NormSq::Exact(_)),
                "norm_squared": self.norm_squared.to_json(),
                "numeric": self.value.as_ref().map(|v| {
                    let z = v.to_complex();
                    json!([z.re, z.im])
                }),
            },
            "bound": [self.bound.numer().to_string(), self.bound.denom().to_string()],
            "pass": self.pass,
            "window": self.window,
            "seed": self.seed,
        })
    }
}

#[derive(Clone)]
pub struct TripleConfig {
    pub first: Slot,
    pub second: Arc<dyn NewformProvider>,
    pub third: Arc<dyn NewformProvider>,
    pub seed: Option<u64>,
}

impl TripleConfig {
    pub fn describe(&self) -> Value {
        json!({
            "first": self.first.describe(),
            "second": self.second.describe(),
            "third": self.third.describe(),
        })
    }

    /// Conductor `c` and the bound claimed for this configuration.
    pub fn claimed_bound(&self) -> Result<(u32, Rational)> {
        let c = self.second.conductor();
        if self.third.conductor() != c {
            return Err(Error::LevelMismatch(format!(
                "second and third slots have levels {} and {}",
                c,
                self.third.conductor()
            )));
        }
        let p = self.second.ctx().p;
        if self.third.ctx().p != p || self.third.ctx().m != self.second.ctx().m {
            return Err(Error::InvalidArgument("slots must share one ambient".into()));
        }
        if let Slot::Newform { prov, .. } = &self.first {
            if prov.ctx().m != self.second.ctx().m || prov.ctx().p != p {
                return Err(Error::InvalidArgument("slots must share one ambient".into()));
            }
        }
        if !(self.first.trivial_central() && self.second.trivial_central() && self.third.trivial_central())
        {
            return Err(Error::HypothesisViolated("central characters must be trivial".into()));
        }
        let n = self.first.n_old();
        if n < 0 {
            return Err(Error::InvalidArgument("n must be >= 0".into()));
        }
        let base = rat_int(4) * p_pow(p, -(c as i64));
        match &self.first {
            Slot::Steinberg { .. } => {
                if c <= 1 {
                    return Err(Error::HypothesisViolated("need c > 1".into()));
                }
                if n > 0 && 1 + 2 * n >= c as i64 {
                    return Err(Error::HypothesisViolated(format!("1 + 2n < c fails for n = {}", n)));
                }
                Ok((c, base * p_pow(p, 2 * n)))
            }
            Slot::Newform { prov, .. } => {
                let c1 = prov.conductor();
                if c1 <= 1 || c1 >= c {
                    return Err(Error::HypothesisViolated(format!("need 1 < c1 < c, got c1 = {}", c1)));
                }
                if n > 0 && c1 as i64 + 2 * n >= c as i64 {
                    return Err(Error::HypothesisViolated(format!("c1 + 2n < c fails for n = {}", n)));
                }
                Ok((c, base * p_pow(p, n)))
            }
        }
    }
}

/// Contribution of Iwasawa cell `i`, shell `v(a) = va`, summed over the
/// m-shells `v(m) >= 0` and `v(m) = -1..=-tmax`.
pub fn triple_shell(cfg: &TripleConfig, ctx: &LocalCtx, i: u32, va: i64, tmax: i64) -> Result<CycloNumber> {
    let p = ctx.p;
    let s2 = Slot::Newform { prov: cfg.second.clone(), n_old: 0 };
    let s3 = Slot::Newform { prov: cfg.third.clone(), n_old: 0 };
    let mut acc = ctx.zero();
    let vms = std::iter::once(None).chain((1..=tmax).map(|t| Some(-t)));
    for vm in vms {
        let f2 = s2.cell(ctx, i, va, vm)?;
        if f2.is_zero() {
            continue;
        }
        let f3 = s3.cell(ctx, i, va, vm)?;
        if f3.is_zero() {
            continue;
        }
        let f1 = cfg.first.cell(ctx, i, va, vm)?;
        let v = convolve3(ctx, [&f1, &f2, &f3]);
        if v.is_zero() {
            continue;
        }
        let mass = match vm {
            None => Rational::one(),
            Some(v) => p_pow(p, -v) * (Rational::one() - p_pow(p, -1)),
        };
        acc = &acc + &v.scale(&mass);
    }
    Ok(acc.scale(&p_pow(p, va)))
}

/// Per-cell breakdown of an evaluation.
#[derive(Clone, Debug)]
pub struct TripleValue {
    pub total: CycloNumber,
    pub per_i: Vec<CycloNumber>,
    pub window: Value,
}

fn triple_eval(cfg: &TripleConfig, margin: i64) -> Result<TripleValue> {
    let ctx = cfg.second.ctx();
    let p = ctx.p;
    let c = cfg.second.conductor();
    let ci = c as i64;
    let weights = iwasawa_weights(p, c)?;
    let tmax = ci + cfg.first.n_old() + margin;
    let mut per_i = Vec::new();
    let mut total = ctx.zero();
    let mut win = Vec::new();
    for i in 0..=c {
        let (lo2, hi2) = cfg.second.support(i);
        let (lo3, hi3) = cfg.third.support(i);
        let lo = lo2.min(lo3) - margin;
        let hi = match (hi2, hi3) {
            (Some(a), Some(b)) => Some(a.max(b) + margin),
            (Some(a), None) | (None, Some(a)) => Some(a + margin),
            (None, None) if cfg.first.unbounded(i) => None,
            (None, None) => Some(2 * ci + 2 + margin),
        };
        let mut s = ctx.zero();
        match hi {
            Some(hi) => {
                for va in lo..=hi {
                    s = &s + &triple_shell(cfg, ctx, i, va, tmax)?;
                }
                win.push(json!({"i": i, "va": [lo, hi], "vm_min": -tmax}));
            }
            None => {
                let n0 = 2 * ci + 2 + margin;
                for va in lo..n0 {
                    s = &s + &triple_shell(cfg, ctx, i, va, tmax)?;
                }
                let period = lcm_u64(
                    lcm_u64(cfg.first.period(), cfg.second.period()),
                    lcm_u64(cfg.third.period(), 2),
                );
                let tail = geometric_tail_cyclo(|va| triple_shell(cfg, ctx, i, va, tmax), n0, period, p, 2)?;
                s = &s + &tail;
                win.push(json!({"i": i, "va": [lo, "tail"], "tail_from": n0, "vm_min": -tmax}));
            }
        }
        let s = s.scale(&weights.weights[i as usize]);
        total = &total + &s;
        per_i.push(s);
    }
    Ok(TripleValue {
        total,
        per_i,
        window: json!({"margin": margin, "cells": win}),
    })
}

pub const DEFAULT_MARGIN: i64 = 2;

/// Above this many basis terms norms are decided by certified intervals.
pub const EXACT_NORM_TERMS: usize = 2000;

/// Evaluate `I_v` exactly with the given shell margin, recompute with the
/// margin doubled, and compare against the bound for the configuration.
pub fn triple_product_iv(cfg: &TripleConfig, margin: i64) -> Result<(BoundReport, TripleValue)> {
    let (c, bound) = cfg.claimed_bound()?;
    let p = cfg.second.ctx().p;
    let v = triple_eval(cfg, margin)?;
    let v2 = triple_eval(cfg, 2 * margin)?;
    if v.total != v2.total {
        return Err(Error::WindowUnstable(format!(
            "margin {} and {} disagree",
            margin,
            2 * margin
        )));
    }
    let (norm_squared, pass) = BoundReport::assess(&v.total, &bound)?;
    let anchor = match (&cfg.first, cfg.first.n_old()) {
        (Slot::Steinberg { .. }, 0) => "triple product bound, unramified special first slot",
        (Slot::Steinberg { .. }, _) => "triple product bound, translated unramified special first slot",
        (Slot::Newform { .. }, 0) => "triple product bound, level c1 first slot",
        (Slot::Newform { .. }, _) => "triple product bound, translated level c1 first slot",
    };
    let window = json!({"base": v.window, "doubled_margin": 2 * margin, "stable": true});
    Ok((
        BoundReport {
            check: "triple_product".into(),
            p,
            c,
            config: cfg.describe(),
            value: Some(v.total.clone()),
            norm_squared,
            bound,
            pass,
            window,
            seed: cfg.seed,
            anchor,
        },
        v,
    ))
}

/// Local L-data entering the normalized integral.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalLInputs {
    /// `L(Pi, Ad, 1)`
    pub adjoint: Rational,
    /// `L(Pi, 1/2)`
    pub central: Rational,
    /// `zeta_p(2)`; `None` means `(1 - p^-2)^-1`.
    pub zeta2: Option<Rational>,
}

impl Default for LocalLInputs {
    fn default() -> Self {
        LocalLInputs {
            adjoint: Rational::one(),
            central: Rational::one(),
            zeta2: None,
        }
    }
}

pub fn normalized_iv0(iv: &BoundReport, inputs: &LocalLInputs) -> Result<BoundReport> {
    let p = iv.p;
    let value = iv
        .value
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("I_v has no exact value".into()))?;
    let z = inputs
        .zeta2
        .clone()
        .unwrap_or_else(|| (Rational::one() - p_pow(p, -2)).recip());
    if inputs.central.is_zero() || z.is_zero() {
        return Err(Error::InvalidArgument("vanishing normalizing factor".into()));
    }
    let factor = &inputs.adjoint / (&z * &z * &inputs.central);
    let v = value.scale(&factor);
    let bound = rat_int(100_000) * p_pow(p, -(iv.c as i64));
    let (norm_squared, pass) = BoundReport::assess(&v, &bound)?;
    Ok(BoundReport {
        check: "normalized_triple_product".into(),
        p,
        c: iv.c,
        config: json!({"base": iv.config, "factor": [factor.numer().to_string(), factor.denom().to_string()]}),
        value: Some(v),
        norm_squared,
        bound,
        pass,
        window: iv.window.clone(),
        seed: iv.seed,
        anchor: "normalized local integral bound",
    })
}

/// Section of the induced representation: supported on
/// `B (1 0; p^i 1) K0(p^e_p)`, inducing character `chi`, at `s = 1/2 + i t`.
#[derive(Clone, Debug, PartialEq)]
pub struct EisSpec {
    pub i: u32,
    pub chi: MultCharExtended,
    pub t: f64,
}

/// Local Rankin-Selberg integral for two newforms of the same level `c`,
/// the second taken against `psi^-`.  The exact part of the value omits the
/// unimodular factor `p^(i t (c - 2i))`, reported separately.
pub fn rankin_selberg_jp(
    w1: &dyn NewformProvider,
    w2: &dyn NewformProvider,
    eis: &EisSpec,
    e_p: u32,
) -> Result<(BoundReport, f64)> {
    let ctx = w1.ctx();
    let p = ctx.p;
    let c = w1.conductor();
    if w2.conductor() != c {
        return Err(Error::LevelMismatch(format!("levels {} and {}", c, w2.conductor())));
    }
    if w2.ctx().m != ctx.m || w2.ctx().p != p {
        return Err(Error::InvalidArgument("forms must share one ambient".into()));
    }
    if !(w1.trivial_central() && w2.trivial_central()) {
        return Err(Error::HypothesisViolated("central characters must be trivial".into()));
    }
    if c <= 2 * e_p {
        return Err(Error::HypothesisViolated(format!("c = {} <= 2 e_p = {}", c, 2 * e_p)));
    }
    let i = eis.i;
    if i >= e_p {
        return Err(Error::HypothesisViolated(format!("i = {} >= e_p = {}", i, e_p)));
    }
    let chi_level = eis.chi.unit_part.level();
    if chi_level > i.min(e_p - i) {
        return Err(Error::HypothesisViolated(format!(
            "level(chi) = {} > min(i, e_p - i) = {}",
            chi_level,
            i.min(e_p - i)
        )));
    }
    let chi_t = ctx.ambient(&eis.chi.unit_part).t;
    let chi_p = ctx.lift(&eis.chi.value_at_p)?;
    let n = 2 * i as i64 - c as i64;
    let mut sum = CycloSum::new(ctx.m);
    let r1 = w1.row(i, n)?;
    let r2 = w2.row(i, n)?;
    // W2 against psi^-: b'_nu = nu(-1) b_nu
    for (t1, a) in r1.iter() {
        let t2 = ctx.inv(ctx.mul(*t1, chi_t));
        if let Some(b) = r2.get(&t2) {
            sum.add(&(a * &b.mul_root(ctx.sign_exp(t2) as i64)));
        }
    }
    let s = sum.finish();
    let a_i = (rat_int(p as i64) - Rational::one()) / ((rat_int(p as i64) + Rational::one()) * p_pow(p, i as i64));
    // |alpha|^(s - 1) on v(alpha) = 2i - c at Re s = 1/2 has modulus p^(i - c/2)
    if c % 2 != 0 {
        return Err(Error::Unsupported("odd c: modulus p^(i - c/2) is irrational".into()));
    }
    let modulus = p_pow(p, i as i64 - c as i64 / 2);
    let value = s.scale(&(&a_i * &modulus));
    let value = &value * &chi_p.powi(n)?;
    let phase = eis.t * (c as f64 - 2.0 * i as f64) * (p as f64).ln();
    let bound = (rat_int(p as i64) - Rational::one()) / (rat_int(p as i64) + Rational::one())
        * p_pow(p, -(c as i64) / 2);
    let (norm_squared, pass) = BoundReport::assess(&value, &bound)?;
    Ok((
        BoundReport {
            check: "rankin_selberg".into(),
            p,
            c,
            config: json!({
                "first": w1.describe(),
                "second": w2.describe(),
                "i": i,
                "e_p": e_p,
                "chi_exponent": chi_t,
                "t": eis.t,
            }),
            value: Some(value),
            norm_squared,
            bound,
            pass,
            window: json!({"va": [n, n]}),
            seed: None,
            anchor: "local Rankin-Selberg bound",
        },
        phase,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat;

    #[test]
    fn weights_examples() {
        let w = iwasawa_weights(3, 2).unwrap();
        assert_eq!(w.weights, vec![rat(3, 4), rat(1, 6), rat(1, 12)]);
        let w = iwasawa_weights(5, 1).unwrap();
        assert_eq!(w.weights, vec![rat(5, 6), rat(1, 6)]);
        for p in [3u64, 5, 7, 11, 13] {
            for c in 1..=6 {
                assert_eq!(iwasawa_weights(p, c).unwrap().sum(), Rational::one());
            }
        }
    }
}
