//! Whittaker newforms of ramified principal series `pi(mu1, mu2)` with both
//! characters of level k, c = 2k, evaluated shell by shell through Gauss
//! integrals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::cyclo::{lcm_u64, rat, rat_to_f64, CycloNumber, Rational};
use crate::error::{Error, Result};
use crate::kirillov::{KirillovVector, WhittakerTable};
use crate::padic::{pow_u64, LocalCtx, MultChar, MultCharExtended};

/// How `du` on `O^*` and on the shells `v(u) = -t` is normalised.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DuConvention {
    /// additive Haar, vol(O) = 1: shell `v(u) = -t` has mass `p^t (1 - 1/p)`
    Additive,
    /// multiplicative Haar, every shell of mass 1
    Multiplicative,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalSeriesRamified {
    pub p: u64,
    pub k: u32,
    pub mu1: MultCharExtended,
    pub mu2: MultCharExtended,
}

impl PrincipalSeriesRamified {
    pub fn new(p: u64, k: u32, mu1: MultCharExtended, mu2: MultCharExtended) -> Result<Self> {
        if k == 0 || mu1.unit_part.level() != k || mu2.unit_part.level() != k {
            return Err(Error::HypothesisViolated(format!(
                "both characters must have level {}",
                k
            )));
        }
        for z in [&mu1.value_at_p, &mu2.value_at_p] {
            if z.root_of_unity().is_none() {
                return Err(Error::Unsupported(
                    "exact mode needs roots of unity at p".into(),
                ));
            }
        }
        Ok(PrincipalSeriesRamified { p, k, mu1, mu2 })
    }

    /// `pi(mu, mu^-1)` with `mu` of exponent `t` on `(Z/p^k)^*` and
    /// `mu(p) = zeta_d^e`.
    pub fn trivial_central(p: u64, k: u32, t: u64, d: u64, e: i64) -> Result<Self> {
        let u = MultChar::new(p, k, t);
        let z = CycloNumber::root(d.max(1), e);
        let mu1 = MultCharExtended::new(u, z)?;
        Self::new(p, k, mu1.clone(), mu1.inv())
    }

    pub fn c(&self) -> u32 {
        2 * self.k
    }

    pub fn has_trivial_central_character(&self) -> bool {
        self.mu1.unit_part.mul(&self.mu2.unit_part).is_trivial()
            && &self.mu1.value_at_p * &self.mu2.value_at_p == CycloNumber::one(1)
    }

    pub fn to_json(&self) -> Value {
        let z = |c: &CycloNumber| {
            let (d, e) = c.root_of_unity().unwrap_or((0, 0));
            json!({"order": d, "exponent": e})
        };
        json!({
            "kind": "principal_series",
            "p": self.p,
            "k": self.k,
            "mu1": {"k": self.mu1.unit_part.k, "t": self.mu1.unit_part.t, "at_p": z(&self.mu1.value_at_p)},
            "mu2": {"k": self.mu2.unit_part.k, "t": self.mu2.unit_part.t, "at_p": z(&self.mu2.value_at_p)},
        })
    }

    /// Order of the roots of unity `mu1(p)`, `mu2(p)`.
    pub fn period(&self) -> u64 {
        let d1 = self.mu1.value_at_p.root_of_unity().map(|x| x.0).unwrap_or(1);
        let d2 = self.mu2.value_at_p.root_of_unity().map(|x| x.0).unwrap_or(1);
        lcm_u64(d1, d2)
    }
}

/// Precomputed ambient data for one principal series.
#[derive(Clone, Debug)]
pub struct PsEngine {
    pub rep: PrincipalSeriesRamified,
    pub ctx: LocalCtx,
    pub du: DuConvention,
    k: u32,
    t1: u64,
    t2: u64,
    z1: i64,
    z2: i64,
    s1: u64,
    s2: u64,
    inv_c0: CycloNumber,
}

impl PsEngine {
    pub fn new(rep: &PrincipalSeriesRamified, du: DuConvention) -> Result<Self> {
        Self::with_extra(rep, du, 1)
    }

    /// `extra` adds roots of unity of that order to the ambient field.
    pub fn with_extra(rep: &PrincipalSeriesRamified, du: DuConvention, extra: u64) -> Result<Self> {
        let ctx = LocalCtx::new(rep.p, rep.c(), lcm_u64(rep.period(), extra))?;
        Self::in_ctx(rep, du, ctx)
    }

    /// Build inside a given ambient; `ctx` must see level `c` characters and
    /// the values of `mu1`, `mu2` at p.
    pub fn in_ctx(rep: &PrincipalSeriesRamified, du: DuConvention, ctx: LocalCtx) -> Result<Self> {
        if ctx.p != rep.p || ctx.kmax < rep.c() || ctx.m % rep.period() != 0 {
            return Err(Error::BadModulus { from: rep.period(), to: ctx.m });
        }
        let (d1, e1) = rep.mu1.value_at_p.root_of_unity().expect("checked");
        let (d2, e2) = rep.mu2.value_at_p.root_of_unity().expect("checked");
        let t1 = ctx.ambient(&rep.mu1.unit_part).t;
        let t2 = ctx.ambient(&rep.mu2.unit_part).t;
        let mut eng = PsEngine {
            rep: rep.clone(),
            du,
            k: rep.k,
            t1,
            t2,
            z1: (e1 * (ctx.m / d1)) as i64,
            z2: (e2 * (ctx.m / d2)) as i64,
            s1: ctx.sign_exp(t1),
            s2: ctx.sign_exp(t2),
            inv_c0: ctx.one(),
            ctx,
        };
        let c0 = eng.c0();
        if c0.is_zero() {
            return Err(Error::ZeroNormalizer);
        }
        eng.inv_c0 = c0.inv()?;
        Ok(eng)
    }

    fn vol_units(&self) -> Rational {
        match self.du {
            DuConvention::Additive => rat(self.ctx.p as i64 - 1, self.ctx.p as i64),
            DuConvention::Multiplicative => Rational::one(),
        }
    }

    /// `C0 = int_{O^*} mu1(-p^k) mu2(-p^-k u) psi(-p^-k u) du`.
    pub fn c0(&self) -> CycloNumber {
        let k = self.k as i64;
        let phase = self.s1 as i64 + self.s2 as i64 + k * self.z1 - k * self.z2;
        let g = self.ctx.gauss(k, -1, self.ctx.inv(self.t2));
        g.mul_root(phase).scale(&self.vol_units())
    }

    /// Character of `nu mu2^-1` restricted to units.
    fn twist(&self, t: u64) -> u64 {
        self.ctx.mul(t, self.ctx.inv(self.t2))
    }

    fn pow_p(&self, e: i64) -> Rational {
        let p = BigInt::from(self.ctx.p);
        if e >= 0 {
            Rational::from_integer(p.pow(e as u32))
        } else {
            Rational::new(BigInt::one(), p.pow((-e) as u32))
        }
    }

    /// Characters that can carry a nonzero coefficient for `W^(i)`.
    fn candidates(&self, i: u32) -> Vec<u64> {
        let c = self.rep.c();
        let k = self.k;
        let ctx = &self.ctx;
        if i > k {
            ctx.chars_up_to(2 * k - i)
        } else if i < k {
            ctx.chars_up_to(c - i)
                .into_iter()
                .filter(|t| ctx.level(*t) == c - i)
                .collect()
        } else {
            ctx.chars_up_to(k)
        }
    }

    /// `U(nu) = int mu1^-1(1 + u p^(i-k)) nu(u) d*u`, `k < i <= c`.
    fn u_above(&self, i: u32, t: u64) -> CycloNumber {
        let ctx = &self.ctx;
        let k = self.k;
        let r = ctx.level(t).max(2 * k - i).max(1);
        let shift = pow_u64(ctx.p, i - k) % ctx.pk();
        let inv1 = ctx.inv(self.t1);
        ctx.unit_sum(r, |u| {
            let x = (1 + shift * u) % ctx.pk();
            Some(ctx.char_exp(inv1, x) + ctx.char_exp(t, u))
        })
    }

    /// `U(nu) = int mu1^-1(u) nu(1 - p^(k-i) u) d*u`, `i < k`.
    fn u_below(&self, i: u32, t: u64) -> CycloNumber {
        let ctx = &self.ctx;
        let k = self.k;
        let lvl = ctx.level(t);
        let r = k.max(lvl.saturating_sub(k - i)).max(1);
        let pk = ctx.pk();
        let shift = pow_u64(ctx.p, k - i) % pk;
        let inv1 = ctx.inv(self.t1);
        ctx.unit_sum(r, |u| {
            let x = (pk + 1 - (shift * u) % pk) % pk;
            Some(ctx.char_exp(inv1, u) + ctx.char_exp(t, x))
        })
    }

    /// `S_t(nu) = int mu1^-1(w + p^(t-k)) nu(w) d*w`, the residue class
    /// `w = -1 mod p` excluded when `t = k`.
    fn s_shift(&self, tt: u32, t: u64) -> CycloNumber {
        let ctx = &self.ctx;
        let k = self.k;
        if tt >= 2 * k {
            return if t == self.t1 { ctx.one() } else { ctx.zero() };
        }
        let r = k.max(ctx.level(t)).max(1);
        let pk = ctx.pk();
        let shift = pow_u64(ctx.p, tt - k) % pk;
        let inv1 = ctx.inv(self.t1);
        let p = ctx.p;
        ctx.unit_sum(r, |w| {
            let x = (w + shift) % pk;
            if x % p == 0 {
                return None;
            }
            Some(ctx.char_exp(inv1, x) + ctx.char_exp(t, w))
        })
    }

    /// Exact `W^(i)` on the shells `lo..=hi`.
    pub fn table(&self, i: u32, lo: i64, hi: i64) -> Result<WhittakerTable> {
        let c = self.rep.c();
        if i > c {
            return Err(Error::InvalidArgument(format!("i = {} > c = {}", i, c)));
        }
        let mut v = KirillovVector::new();
        let k = self.k as i64;
        let ii = i as i64;
        let vol = self.vol_units();
        for t in self.candidates(i) {
            let tw = self.twist(t);
            if i as i64 > k {
                let u = self.u_above(i, t);
                if u.is_zero() {
                    continue;
                }
                let base = (&self.inv_c0 * &u).scale(&vol);
                for n in lo..=hi {
                    let g = self.ctx.gauss(k - n, -1, tw);
                    if g.is_zero() {
                        continue;
                    }
                    let phase = self.s1 as i64 + self.s2 as i64 + k * self.z1 + (n - k) * self.z2;
                    let a = &(&base * &g).mul_root(phase) * &self.ctx.p_half_pow(-n);
                    v.add_term(t, n, a);
                }
            } else if (i as i64) < k {
                let u = self.u_below(i, t);
                if u.is_zero() {
                    continue;
                }
                let base = (&self.inv_c0 * &u).scale(&(&vol * self.pow_p(ii - k)));
                for n in lo..=hi {
                    let g = self.ctx.gauss(ii - n, 1, tw);
                    if g.is_zero() {
                        continue;
                    }
                    let phase = self.s1 as i64 + ii * self.z1 + (n - ii) * self.z2;
                    let a = &(&base * &g).mul_root(phase) * &self.ctx.p_half_pow(-n);
                    v.add_term(t, n, a);
                }
            } else {
                let mut s_cache: BTreeMap<u32, CycloNumber> = BTreeMap::new();
                for n in lo..=hi {
                    let top = n + 2 * k + 2;
                    let mut acc = self.ctx.zero();
                    for tt in k..=top {
                        let g = self.ctx.gauss(tt - n, -1, tw);
                        if g.is_zero() {
                            continue;
                        }
                        let s = s_cache
                            .entry(tt as u32)
                            .or_insert_with(|| self.s_shift(tt as u32, t))
                            .clone();
                        if s.is_zero() {
                            continue;
                        }
                        if tt > top - 2 {
                            return Err(Error::TruncationUnstable(format!(
                                "W^({}) shell {} term v(u) = -{} nonzero",
                                i, n, tt
                            )));
                        }
                        let w = match self.du {
                            DuConvention::Additive => &self.pow_p(tt) * &vol,
                            DuConvention::Multiplicative => Rational::one(),
                        };
                        let phase = tt * self.z1 + (n - tt) * self.z2;
                        let term = (&g * &s).mul_root(phase).scale(&(w * self.pow_p(-tt)));
                        acc = &acc + &term;
                    }
                    if acc.is_zero() {
                        continue;
                    }
                    let phase = self.s1 as i64 + self.s2 as i64;
                    let a = &(&self.inv_c0 * &acc).mul_root(phase) * &self.ctx.p_half_pow(-n);
                    v.add_term(t, n, a);
                }
            }
        }
        let norm = match self.du {
            DuConvention::Additive => "C0^-1, du additive",
            DuConvention::Multiplicative => "C0^-1, du multiplicative",
        };
        Ok(WhittakerTable::from_vector(
            &v,
            &self.ctx,
            c,
            i,
            self.rep.to_json(),
            norm,
        ))
    }

    /// Shells on which `W^(i)` can be nonzero, as a finite window for
    /// `i != k` and a starting window for `i = k`.
    pub fn natural_window(&self, i: u32) -> (i64, i64) {
        let c = self.rep.c() as i64;
        let s = (2 * i as i64 - c).min(0);
        if i == self.k {
            (s - 2, 2 * self.k as i64 + 2)
        } else {
            (s - 2, 2)
        }
    }

    /// `sum_n sum_nu |a_{nu,n}|^2` including the infinite tail for `i = k`.
    pub fn total_mass(&self, i: u32) -> Result<Rational> {
        let (lo, hi) = self.natural_window(i);
        let head = self.table(i, lo, hi)?;
        let mut total = head.total_norm_squared()?;
        if i == self.k {
            let period = self.rep.period();
            let n0 = hi + 1;
            let tail_hi = n0 + period as i64 * 6;
            let tail = self.table(i, n0, tail_hi)?;
            let shell = |n: i64| -> Result<Rational> {
                let mut s = Rational::zero();
                if let Some(row) = tail.entries.get(&n) {
                    for a in row.values() {
                        s += a.norm_squared()?;
                    }
                }
                Ok(s)
            };
            total += geometric_tail(shell, n0, period, self.ctx.p, 2)?;
        }
        Ok(total)
    }
}

/// Exact `sum_{n >= n0} f(n)` for `f(n) = p^-n Q(n)` with `Q` a
/// quasi-polynomial of period `period` and degree at most `deg`.  The form
/// is certified on two extra samples per residue class.
pub fn geometric_tail<F>(f: F, n0: i64, period: u64, p: u64, deg: usize) -> Result<Rational>
where
    F: Fn(i64) -> Result<Rational>,
{
    let per = period as i64;
    let pb = BigInt::from(p);
    let y = Rational::new(BigInt::one(), pb.pow(period as u32));
    let one_minus_y = Rational::one() - &y;
    let mut total = Rational::zero();
    for rho in 0..per {
        let start = n0 + rho;
        let samples: Vec<Rational> = (0..deg as i64 + 3)
            .map(|m| {
                let n = start + per * m;
                f(n).map(|v| v * Rational::from_integer(pb.pow(n as u32)))
            })
            .collect::<Result<_>>()?;
        let mut diffs = vec![samples.clone()];
        for d in 1..samples.len() {
            let prev = &diffs[d - 1];
            diffs.push((1..prev.len()).map(|j| &prev[j] - &prev[j - 1]).collect());
        }
        for d in deg + 1..samples.len() {
            if diffs[d].iter().any(|x| !x.is_zero()) {
                return Err(Error::TruncationUnstable(format!(
                    "tail from {} is not quasi-polynomial of degree {}",
                    n0, deg
                )));
            }
        }
        // sum_m y^m q(m) = sum_d Delta^d q(0) y^d / (1 - y)^(d+1)
        let mut s = Rational::zero();
        let mut yd = Rational::one();
        let mut den = one_minus_y.clone();
        for d in diffs.iter().take(deg + 1) {
            s += &d[0] * &yd / &den;
            yd *= &y;
            den *= &one_minus_y;
        }
        total += s / Rational::from_integer(pb.pow(start as u32));
    }
    Ok(total)
}

/// Per-shell and per-level sums of `|a_{nu,n}|^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentReport {
    pub per_shell: BTreeMap<i64, BTreeMap<u32, Rational>>,
    pub totals: BTreeMap<u32, Rational>,
}

impl ComponentReport {
    pub fn total(&self) -> Rational {
        self.totals.values().fold(Rational::zero(), |a, b| a + b)
    }

    pub fn levels(&self) -> Vec<u32> {
        self.totals
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(l, _)| *l)
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let q = |r: &Rational| json!([r.numer().to_string(), r.denom().to_string()]);
        json!({
            "per_shell": self.per_shell.iter().map(|(n, m)| json!({
                "n": n,
                "levels": m.iter().map(|(l, v)| json!({"level": l, "norm_squared": q(v)})).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "totals": self.totals.iter().map(|(l, v)| json!({"level": l, "norm_squared": q(v)})).collect::<Vec<_>>(),
        })
    }
}

pub fn decompose_components(table: &WhittakerTable) -> Result<ComponentReport> {
    let mut per_shell: BTreeMap<i64, BTreeMap<u32, Rational>> = BTreeMap::new();
    let mut totals: BTreeMap<u32, Rational> = BTreeMap::new();
    for (n, row) in &table.entries {
        for (t, a) in row {
            let lvl = table.char_of(*t).level();
            let ns = a.norm_squared()?;
            *per_shell.entry(*n).or_default().entry(lvl).or_insert_with(Rational::zero) += &ns;
            *totals.entry(lvl).or_insert_with(Rational::zero) += ns;
        }
    }
    Ok(ComponentReport { per_shell, totals })
}

pub fn c0_constant(rep: &PrincipalSeriesRamified) -> Result<CycloNumber> {
    Ok(PsEngine::new(rep, DuConvention::Additive)?.c0())
}

pub fn wi_principal_series(
    rep: &PrincipalSeriesRamified,
    i: u32,
    window: (i64, i64),
) -> Result<WhittakerTable> {
    PsEngine::new(rep, DuConvention::Additive)?.table(i, window.0, window.1)
}

/// Outcome of checking one `du` convention against the normalisation
/// `W^(c) = 1_{1,0}` and unit total mass of `W^(k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConventionCheck {
    pub convention: DuConvention,
    pub newform_ok: bool,
    /// `None` when the series fails its tail certificate
    pub mass_k: Option<Rational>,
    pub pass: bool,
}

pub fn check_du_convention(rep: &PrincipalSeriesRamified, du: DuConvention) -> Result<ConventionCheck> {
    let eng = PsEngine::new(rep, du)?;
    let c = rep.c();
    let wc = eng.table(c, -2, 2)?;
    let newform_ok = wc.to_vector() == KirillovVector::basis(0, 0, &eng.ctx);
    let mass_k = eng.total_mass(rep.k).ok();
    Ok(ConventionCheck {
        convention: du,
        newform_ok,
        pass: newform_ok && mass_k == Some(Rational::one()),
        mass_k,
    })
}

/// Shell norms of `W^(k)` against `p^((alpha - 1/2) n) max(n, 1)`.
#[derive(Clone, Debug)]
pub struct GrowthReport {
    pub shell_norms: Vec<(i64, f64)>,
    pub ratios: Vec<(i64, f64)>,
    pub fitted_constant: f64,
    pub alpha: f64,
    pub pass: bool,
}

impl GrowthReport {
    pub fn to_json(&self) -> Value {
        json!({
            "shell_norms": self.shell_norms,
            "ratios": self.ratios,
            "fitted_constant": self.fitted_constant,
            "alpha": self.alpha,
            "pass": self.pass,
        })
    }
}

/// Pass when the normalised ratio on the upper half of the range never
/// exceeds its maximum on the lower half.
pub fn growth_check_midlevel(rep: &PrincipalSeriesRamified, a_max: i64) -> Result<GrowthReport> {
    let eng = PsEngine::new(rep, DuConvention::Additive)?;
    let alpha = 7.0 / 64.0;
    let table = eng.table(rep.k, 0, a_max)?;
    let p = rep.p as f64;
    let mut shell_norms = Vec::new();
    let mut ratios = Vec::new();
    for n in 0..=a_max {
        let mut s = Rational::zero();
        if let Some(row) = table.entries.get(&n) {
            for a in row.values() {
                s += a.norm_squared()?;
            }
        }
        let norm = rat_to_f64(&s).sqrt();
        shell_norms.push((n, norm));
        let env = p.powf((alpha - 0.5) * n as f64) * (n.max(1) as f64);
        ratios.push((n, norm / env));
    }
    let half = ratios.len() / 2;
    let head = ratios[..half.max(1)].iter().map(|r| r.1).fold(0.0, f64::max);
    let fitted = ratios.iter().map(|r| r.1).fold(0.0, f64::max);
    let tail = ratios[half..].iter().map(|r| r.1).fold(0.0, f64::max);
    Ok(GrowthReport {
        shell_norms,
        ratios,
        fitted_constant: fitted,
        alpha,
        pass: tail <= head * (1.0 + 1e-12),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::enumerate_chars;

    fn reps(p: u64, k: u32) -> Vec<PrincipalSeriesRamified> {
        let mut out = Vec::new();
        for mu in enumerate_chars(p, k, k).into_iter().take(3) {
            for (d, e) in [(1, 0), (3, 1), (4, 1)] {
                out.push(PrincipalSeriesRamified::trivial_central(p, k, mu.t, d, e).unwrap());
            }
        }
        out
    }

    #[test]
    fn newform_and_mass() {
        for (p, k) in [(3, 1), (5, 1), (3, 2)] {
            for rep in reps(p, k) {
                let eng = PsEngine::new(&rep, DuConvention::Additive).unwrap();
                let wc = eng.table(rep.c(), -3, 3).unwrap();
                assert_eq!(wc.to_vector(), KirillovVector::basis(0, 0, &eng.ctx));
                for i in 0..=rep.c() {
                    assert_eq!(eng.total_mass(i).unwrap(), Rational::one(), "{:?} i={}", rep.to_json(), i);
                }
            }
        }
    }

    #[test]
    fn tail_series() {
        // sum_{n>=0} n^2 / 3^n = 3/2
        let f = |n: i64| Ok(rat(n * n, 1) / Rational::from_integer(BigInt::from(3).pow(n as u32)));
        assert_eq!(geometric_tail(f, 0, 1, 3, 2).unwrap(), rat(3, 2));
    }

    #[test]
    fn multiplicative_du_fails() {
        let rep = PrincipalSeriesRamified::trivial_central(5, 1, 1, 1, 0).unwrap();
        let add = check_du_convention(&rep, DuConvention::Additive).unwrap();
        let mul = check_du_convention(&rep, DuConvention::Multiplicative).unwrap();
        assert!(add.pass);
        assert!(!mul.pass);
    }
}
