//! Kirillov-model calculus for GL2(Q_p) with trivial central character.
//!
//! Vectors are finite combinations of `1_{nu,n}`, the function supported on
//! `v(x) = n` with value `nu(u)` at `x = u p^n`.  Characters are ambient
//! exponents of a [`LocalCtx`].

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cyclo::{CycloNumber, Rational};
use crate::error::{Error, Result};
use crate::padic::{LocalCtx, MultChar, PAdicShell};

pub const DEFAULT_TERM_GUARD: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Default)]
pub struct KirillovVector {
    /// `(character exponent, shell) -> coefficient`
    pub terms: BTreeMap<(u64, i64), CycloNumber>,
}

impl KirillovVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(t: u64, n: i64, ctx: &LocalCtx) -> Self {
        let mut v = Self::new();
        v.terms.insert((t, n), ctx.one());
        v
    }

    pub fn add_term(&mut self, t: u64, n: i64, c: CycloNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&(t, n)) {
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert((t, n), s);
                }
            }
            None => {
                self.terms.insert((t, n), c);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &CycloNumber) -> Self {
        let mut out = Self::new();
        for (k, v) in &self.terms {
            out.add_term(k.0, k.1, v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.0, k.1, v.clone());
        }
        out
    }

    /// `<v, w> = sum a_{nu,n} conj(b_{nu,n})`.
    pub fn pairing(&self, other: &Self) -> CycloNumber {
        let mut acc: Option<CycloNumber> = None;
        for (k, a) in &self.terms {
            if let Some(b) = other.terms.get(k) {
                let x = a * &b.conj();
                acc = Some(match acc {
                    Some(s) => &s + &x,
                    None => x,
                });
            }
        }
        acc.unwrap_or_else(|| CycloNumber::zero(1))
    }

    pub fn norm_squared(&self) -> Result<Rational> {
        let mut s = Rational::from_integer(0.into());
        for a in self.terms.values() {
            s += a.norm_squared()?;
        }
        Ok(s)
    }

    fn guard(self, limit: usize) -> Result<Self> {
        if self.terms.len() > limit {
            Err(Error::TermGuard(limit))
        } else {
            Ok(self)
        }
    }
}

/// Action of `diag(a, 1)` where `a = u p^d`: `1_{nu,n} -> nu(u) 1_{nu,n-d}`.
pub fn act_diag_unit(ctx: &LocalCtx, v: &KirillovVector, d: i64, u: u64) -> KirillovVector {
    let mut out = KirillovVector::new();
    for ((t, n), c) in &v.terms {
        let e = ctx.char_exp(*t, u);
        out.add_term(*t, n - d, c.mul_root(e as i64));
    }
    out
}

/// Action of `diag(a1, a2)` with trivial central character.
pub fn act_diag(
    ctx: &LocalCtx,
    v: &KirillovVector,
    a1: &PAdicShell,
    a2: &PAdicShell,
) -> Result<KirillovVector> {
    let need = v.terms.keys().map(|(t, _)| ctx.level(*t)).max().unwrap_or(0);
    let have = a1.precision.min(a2.precision);
    if have < need {
        return Err(Error::InsufficientPrecision { needed: need, have });
    }
    let p = ctx.p;
    let pk = ctx.pk();
    let a2u = a2.unit_residue % pk;
    if a2u % p == 0 {
        // precision 0: only level-0 components present, any unit works
        return Ok(act_diag_unit(ctx, v, a1.valuation - a2.valuation, 1));
    }
    let u = if a1.unit_residue % p == 0 {
        1
    } else {
        (a1.unit_residue % pk) as u128 * crate::padic::inv_mod(a2u, pk) as u128 % pk as u128
    } as u64;
    Ok(act_diag_unit(ctx, v, a1.valuation - a2.valuation, u))
}

/// Multiplication by `psi(m x)` with `m = w p^vm`.
pub fn act_upper_parts(
    ctx: &LocalCtx,
    v: &KirillovVector,
    vm: i64,
    w: i64,
    guard: usize,
) -> Result<KirillovVector> {
    let mut out = KirillovVector::new();
    for ((t, n), c) in &v.terms {
        let j = -(vm + n);
        if j <= 0 {
            out.add_term(*t, *n, c.clone());
            continue;
        }
        if j as u32 > ctx.kmax {
            return Err(Error::InsufficientPrecision {
                needed: j as u32,
                have: ctx.kmax,
            });
        }
        // psi(w p^-j u) = sum_chi gauss(j, w, chi) chi(u)
        for s in ctx.chars_up_to(j as u32) {
            let g = ctx.gauss(j, w, s);
            if g.is_zero() {
                continue;
            }
            let t2 = (t + s) % ctx.group_order();
            out.add_term(t2, *n, c * &g);
        }
        if out.len() > guard {
            return Err(Error::TermGuard(guard));
        }
    }
    Ok(out)
}

pub fn act_upper(ctx: &LocalCtx, v: &KirillovVector, m: &PAdicShell) -> Result<KirillovVector> {
    let maxj = v
        .terms
        .keys()
        .map(|(_, n)| -(m.valuation + n))
        .max()
        .unwrap_or(0);
    if maxj > m.precision as i64 {
        return Err(Error::InsufficientPrecision {
            needed: maxj as u32,
            have: m.precision,
        });
    }
    act_upper_parts(ctx, v, m.valuation, m.unit_residue as i64, DEFAULT_TERM_GUARD)
}

/// Abstract supercuspidal data: the omega action
/// `1_{nu,n} -> C_nu 1_{nu^-1, -n + n_nu}`.
#[derive(Clone, Debug)]
pub struct SupercuspidalData {
    pub p: u64,
    pub c: u32,
    pub seed: u64,
    pub ctx: LocalCtx,
    pub omega_table: BTreeMap<u64, (i64, CycloNumber)>,
}

pub fn n_nu(c: u32, level: u32) -> i64 {
    (-(c as i64)).min(-2 * level as i64)
}

/// Synthesize admissible omega data: `n_nu = min(-c, -2 level)`,
/// `C_nu C_{nu^-1} = 1`, `C_nu = +-1` when `nu^2 = 1`, all `C_nu` roots of
/// unity, deterministic in `seed`.
pub fn mock_supercuspidal(p: u64, c: u32, seed: u64) -> Result<SupercuspidalData> {
    if c < 2 {
        return Err(Error::InvalidArgument("supercuspidal level must be >= 2".into()));
    }
    let ctx = LocalCtx::new(p, c, 1)?;
    mock_supercuspidal_in(ctx, c, seed)
}

/// Same as [`mock_supercuspidal`] inside a caller-supplied ambient.
pub fn mock_supercuspidal_in(ctx: LocalCtx, c: u32, seed: u64) -> Result<SupercuspidalData> {
    if ctx.kmax < c {
        return Err(Error::InvalidArgument("ambient too small".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ord = ctx.group_order();
    let m = ctx.m;
    let mut table = BTreeMap::new();
    for t in ctx.chars_up_to(c) {
        if table.contains_key(&t) {
            continue;
        }
        let n = n_nu(c, ctx.level(t));
        let ti = (ord - t) % ord;
        if ti == t {
            let sign = if rng.gen::<bool>() { 1 } else { -1 };
            table.insert(t, (n, CycloNumber::from_int(m, sign)));
        } else {
            let e = rng.gen_range(0..m) as i64;
            table.insert(t, (n, CycloNumber::root(m, e)));
            table.insert(ti, (n, CycloNumber::root(m, -e)));
        }
    }
    Ok(SupercuspidalData {
        p: ctx.p,
        c,
        seed,
        ctx,
        omega_table: table,
    })
}

impl SupercuspidalData {
    /// Check every stated constraint on the table.
    pub fn check_invariants(&self) -> Result<()> {
        let ord = self.ctx.group_order();
        for (&t, (n, cnu)) in &self.omega_table {
            if *n != n_nu(self.c, self.ctx.level(t)) {
                return Err(Error::HypothesisViolated(format!("n_nu at {}", t)));
            }
            let ti = (ord - t) % ord;
            let (ni, ci) = self
                .omega_table
                .get(&ti)
                .ok_or(Error::MissingOmegaEntry(ti))?;
            if ni != n || (cnu * ci) != self.ctx.one() {
                return Err(Error::HypothesisViolated(format!("C_nu C_nu^-1 at {}", t)));
            }
            if cnu.norm_squared()? != Rational::from_integer(1.into()) {
                return Err(Error::HypothesisViolated(format!("|C_nu| at {}", t)));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({"kind": "supercuspidal", "p": self.p, "c": self.c, "seed": self.seed})
    }
}

pub fn act_omega(v: &KirillovVector, data: &SupercuspidalData) -> Result<KirillovVector> {
    let ord = data.ctx.group_order();
    let mut out = KirillovVector::new();
    for ((t, n), c) in &v.terms {
        let (nn, cnu) = data
            .omega_table
            .get(t)
            .ok_or(Error::MissingOmegaEntry(*t))?;
        let ti = (ord - t) % ord;
        out.add_term(ti, -n + nn, c * cnu);
    }
    Ok(out)
}

/// Generators of a group word.
#[derive(Clone, Debug)]
pub enum Generator {
    /// `diag(u p^d, 1)`
    Diag { d: i64, u: u64 },
    /// `(1 w p^vm; 0 1)`
    Upper { vm: i64, w: i64 },
    Omega,
}

#[derive(Clone, Debug, Default)]
pub struct GroupWord(pub Vec<Generator>);

impl GroupWord {
    /// `(1 0; x 1) = omega (1 -x; 0 1) omega (-1)` with `x = w p^vx`.
    pub fn lower(vx: i64, w: i64) -> Self {
        GroupWord(vec![
            Generator::Omega,
            Generator::Upper { vm: vx, w: -w },
            Generator::Omega,
        ])
    }

    /// Apply `pi(g_1 g_2 ... g_r) v`, acting with the rightmost factor first.
    pub fn apply(&self, v: &KirillovVector, data: &SupercuspidalData) -> Result<KirillovVector> {
        let mut cur = v.clone();
        for g in self.0.iter().rev() {
            cur = match g {
                Generator::Diag { d, u } => act_diag_unit(&data.ctx, &cur, *d, *u),
                Generator::Upper { vm, w } => {
                    act_upper_parts(&data.ctx, &cur, *vm, *w, DEFAULT_TERM_GUARD)?
                }
                Generator::Omega => act_omega(&cur, data)?,
            }
            .guard(DEFAULT_TERM_GUARD)?;
        }
        Ok(cur)
    }
}

/// `alpha -> W(alpha)` as per-shell character decompositions:
/// `W(u p^n) = sum_nu a_{nu,n} nu(u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WhittakerTable {
    pub p: u64,
    pub i: u32,
    pub c: u32,
    /// ambient `(Z/p^kmax)^*` on which character exponents live
    pub kmax: u32,
    pub rep: Value,
    pub normalization: String,
    pub entries: BTreeMap<i64, BTreeMap<u64, CycloNumber>>,
}

impl WhittakerTable {
    pub fn from_vector(
        v: &KirillovVector,
        ctx: &LocalCtx,
        c: u32,
        i: u32,
        rep: Value,
        normalization: &str,
    ) -> Self {
        let mut entries: BTreeMap<i64, BTreeMap<u64, CycloNumber>> = BTreeMap::new();
        for ((t, n), a) in &v.terms {
            entries.entry(*n).or_default().insert(*t, a.clone());
        }
        WhittakerTable {
            p: ctx.p,
            i,
            c,
            kmax: ctx.kmax,
            rep,
            normalization: normalization.to_string(),
            entries,
        }
    }

    pub fn to_vector(&self) -> KirillovVector {
        let mut v = KirillovVector::new();
        for (n, row) in &self.entries {
            for (t, a) in row {
                v.add_term(*t, *n, a.clone());
            }
        }
        v
    }

    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        let mut out = self.clone();
        out.entries.retain(|n, _| *n >= lo && *n <= hi);
        out
    }

    pub fn char_of(&self, t: u64) -> MultChar {
        MultChar::new(self.p, self.kmax, t)
    }

    pub fn support(&self) -> Vec<i64> {
        self.entries
            .iter()
            .filter(|(_, r)| !r.is_empty())
            .map(|(n, _)| *n)
            .collect()
    }

    pub fn total_norm_squared(&self) -> Result<Rational> {
        self.to_vector().norm_squared()
    }

    /// `{ rep, i, entries: [ {n, terms: [{char_exponent, coeff_modulus_M,
    /// coeff: [[j, num, den]...]}] } ] }`
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|(n, row)| {
                let terms: Vec<Value> = row
                    .iter()
                    .map(|(t, a)| {
                        json!({
                            "char_exponent": t,
                            "char_ambient_k": self.kmax,
                            "char_level": self.char_of(*t).level(),
                            "coeff_modulus_M": a.modulus(),
                            "coeff": cyclo_to_json(a),
                        })
                    })
                    .collect();
                json!({"n": n, "terms": terms})
            })
            .collect();
        json!({
            "rep": self.rep,
            "p": self.p,
            "c": self.c,
            "i": self.i,
            "normalization": self.normalization,
            "entries": entries,
        })
    }
}

/// One row per `(n, ν)`: shell, character exponent and level, the exact
/// coefficient as `j:num/den` terms of `ζ_M^j`, and its complex value.
pub fn write_whittaker_csv<W: std::io::Write>(t: &WhittakerTable, out: W) -> Result<()> {
    let io = |e: csv::Error| Error::Io(e.to_string());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "char_exponent", "char_level", "modulus", "coeff", "re", "im"])
        .map_err(io)?;
    for (n, row) in &t.entries {
        for (tt, a) in row {
            let exact: Vec<String> = a
                .coeffs()
                .into_iter()
                .map(|(j, q)| format!("{}:{}", j, q))
                .collect();
            let z = a.to_complex();
            w.write_record([
                n.to_string(),
                tt.to_string(),
                t.char_of(*tt).level().to_string(),
                a.modulus().to_string(),
                exact.join(" "),
                format!("{:.17e}", z.re),
                format!("{:.17e}", z.im),
            ])
            .map_err(io)?;
        }
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

pub fn cyclo_to_json(z: &CycloNumber) -> Value {
    Value::Array(
        z.coeffs()
            .into_iter()
            .map(|(j, q)| json!([j, q.numer().to_string(), q.denom().to_string()]))
            .collect(),
    )
}

/// `W^(i)(alpha) = W(diag(alpha,1) (1 0; p^i 1))` for the newform `1_{1,0}`.
pub fn whittaker_supercuspidal(data: &SupercuspidalData, i: u32) -> Result<WhittakerTable> {
    if i > data.c {
        return Err(Error::InvalidArgument(format!("i = {} > c = {}", i, data.c)));
    }
    let v = KirillovVector::basis(0, 0, &data.ctx);
    let w = GroupWord::lower(i as i64, 1).apply(&v, data)?;
    Ok(WhittakerTable::from_vector(
        &w,
        &data.ctx,
        data.c,
        i,
        data.to_json(),
        "newform 1_{1,0}",
    ))
}

/// Serialisable summary of a table row used by reports.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LevelNorm {
    pub n: i64,
    pub level: u32,
    pub norm_squared: (String, String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat;

    #[test]
    fn diag_examples() {
        let ctx = LocalCtx::new(5, 2, 1).unwrap();
        let v = KirillovVector::basis(0, 0, &ctx);
        let w = act_diag_unit(&ctx, &v, 1, 1);
        assert_eq!(w, KirillovVector::basis(0, -1, &ctx));
        assert_eq!(act_diag_unit(&ctx, &v, 0, 1), v);
        let nu = 3u64;
        let v = KirillovVector::basis(nu, 0, &ctx);
        let w = act_diag_unit(&ctx, &v, 0, 2);
        let expect = ctx.one().mul_root(ctx.char_exp(nu, 2) as i64);
        assert_eq!(w.terms[&(nu, 0)], expect);
    }

    #[test]
    fn upper_p3() {
        let ctx = LocalCtx::new(3, 2, 1).unwrap();
        let v = KirillovVector::basis(0, 0, &ctx);
        let w = act_upper_parts(&ctx, &v, -1, 1, 100).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w.terms[&(0, 0)].as_rational(), Some(rat(-1, 2)));
        assert_eq!(w.norm_squared().unwrap(), rat(1, 1));
        let id = act_upper_parts(&ctx, &v, 0, 1, 100).unwrap();
        assert_eq!(id, v);
    }

    #[test]
    fn omega_involution_and_levels() {
        let data = mock_supercuspidal(3, 2, 1).unwrap();
        data.check_invariants().unwrap();
        assert_eq!(data.omega_table[&0].0, -2);
        let v = KirillovVector::basis(0, 0, &data.ctx);
        let w = act_omega(&v, &data).unwrap();
        assert_eq!(w.len(), 1);
        assert!(w.terms.contains_key(&(0, -2)));
        assert_eq!(act_omega(&w, &data).unwrap(), v);
        let top = data.ctx.chars_up_to(2).into_iter().find(|t| data.ctx.level(*t) == 2).unwrap();
        assert_eq!(data.omega_table[&top].0, -4);
    }

    #[test]
    fn wc_is_newform() {
        for c in 2..=4 {
            let data = mock_supercuspidal(5, c, 3).unwrap();
            let t = whittaker_supercuspidal(&data, c).unwrap();
            assert_eq!(t.to_vector(), KirillovVector::basis(0, 0, &data.ctx));
        }
    }
}
