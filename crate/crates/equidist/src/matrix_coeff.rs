//! Matrix coefficients of newforms and translated oldforms, and the
//! unramified special (Steinberg) coefficient on double K1(p)-cosets.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::cyclo::{rat_int, CycloNumber, CycloSum, Rational};
use crate::error::{Error, Result};
use crate::kirillov::{whittaker_supercuspidal, SupercuspidalData, WhittakerTable};
use crate::padic::{vp, LocalCtx, PAdicShell};
use crate::whittaker::PsEngine;

/// 2x2 matrix over Q.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2(pub [[Rational; 2]; 2]);

impl Mat2 {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(rat_int(a), rat_int(b), rat_int(c), rat_int(d))
    }

    pub fn identity() -> Self {
        Self::from_ints(1, 0, 0, 1)
    }

    pub fn det(&self) -> Rational {
        let m = &self.0;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = (&self.0, &o.0);
        let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn inv(&self) -> Result<Self> {
        let d = self.det();
        if d.is_zero() {
            return Err(Error::Singular);
        }
        let m = &self.0;
        Ok(Mat2::new(
            &m[1][1] / &d,
            -&m[0][1] / &d,
            -&m[1][0] / &d,
            &m[0][0] / &d,
        ))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let m = &self.0;
        Mat2::new(&m[0][0] * s, &m[0][1] * s, &m[1][0] * s, &m[1][1] * s)
    }

    /// `(a m; 0 1)(1 0; p^i 1)`
    pub fn borel_lower(a: &Rational, m: &Rational, p: u64, i: i64) -> Self {
        let b = Mat2::new(a.clone(), m.clone(), Rational::zero(), Rational::one());
        b.mul(&Mat2::new(Rational::one(), Rational::zero(), p_pow(p, i), Rational::one()))
    }

    /// `diag(p^-n, 1)^-1 g diag(p^-n, 1)`
    pub fn old_conjugate(&self, p: u64, n: i64) -> Self {
        let d = Mat2::new(p_pow(p, -n), Rational::zero(), Rational::zero(), Rational::one());
        d.inv().expect("invertible").mul(self).mul(&d)
    }
}

pub fn p_pow(p: u64, e: i64) -> Rational {
    let b = BigInt::from(p);
    if e >= 0 {
        Rational::from_integer(b.pow(e as u32))
    } else {
        Rational::new(BigInt::one(), b.pow((-e) as u32))
    }
}

const INF: i64 = i64::MAX / 4;

fn val(p: u64, x: &Rational) -> i64 {
    if x.is_zero() {
        INF
    } else {
        vp(p, x)
    }
}

/// `g = z (a m; 0 1)(1 0; p^i 1) k` with `k` in K1(p^c), `0 <= i <= c`.
pub fn iwasawa_decompose(p: u64, c: u32, g: &Mat2) -> Result<(Rational, Rational, u32)> {
    if g.det().is_zero() {
        return Err(Error::Singular);
    }
    let (cc, dd) = (&g.0[1][0], &g.0[1][1]);
    let one = Rational::one();
    let zero = Rational::zero();
    let (i, kappa) = if val(p, cc) <= val(p, dd) {
        // (1, 1) kappa = (1, D/C)
        (0u32, Mat2::new(one.clone(), dd / cc - &one, zero.clone(), one.clone()))
    } else {
        let gamma = cc / dd;
        let vg = val(p, &gamma);
        if vg >= c as i64 {
            let k21 = &gamma - p_pow(p, c as i64);
            (c, Mat2::new(one.clone(), zero.clone(), k21, one.clone()))
        } else {
            let unit = &gamma / p_pow(p, vg);
            (vg as u32, Mat2::new(unit, zero.clone(), zero.clone(), one.clone()))
        }
    };
    let lower = Mat2::new(one.clone(), zero.clone(), p_pow(p, i as i64), one.clone());
    let b = g.mul(&kappa.inv()?).mul(&lower.inv()?);
    debug_assert!(b.0[1][0].is_zero());
    let d = b.0[1][1].clone();
    Ok((&b.0[0][0] / &d, &b.0[0][1] / &d, i))
}

/// Newform Whittaker data of a representation of conductor c.
pub trait NewformProvider: Send + Sync {
    fn ctx(&self) -> &LocalCtx;
    fn conductor(&self) -> u32;
    /// Coefficients of `W^(i)` on the shell `v(alpha) = n`.
    fn row(&self, i: u32, n: i64) -> Result<Arc<BTreeMap<u64, CycloNumber>>>;
    /// Shells carrying `W^(i)`: `(lo, Some(hi))`, or `(lo, None)` when the
    /// support is unbounded above.
    fn support(&self, i: u32) -> (i64, Option<i64>);
    /// Order of the roots of unity governing unbounded supports.
    fn period(&self) -> u64 {
        1
    }
    fn trivial_central(&self) -> bool;
    fn describe(&self) -> Value;
}

pub struct ScProvider {
    pub data: SupercuspidalData,
    tables: Vec<OnceLock<std::result::Result<Arc<WhittakerTable>, Error>>>,
}

impl ScProvider {
    /// Tables are built on first use, one per `i`.
    pub fn new(data: SupercuspidalData) -> Result<Self> {
        let tables = (0..=data.c).map(|_| OnceLock::new()).collect();
        Ok(ScProvider { data, tables })
    }

    pub fn table(&self, i: u32) -> Result<Arc<WhittakerTable>> {
        let slot = self
            .tables
            .get(i as usize)
            .ok_or_else(|| Error::InvalidArgument(format!("i = {} > c", i)))?;
        slot.get_or_init(|| whittaker_supercuspidal(&self.data, i).map(Arc::new))
            .clone()
    }
}

impl NewformProvider for ScProvider {
    fn ctx(&self) -> &LocalCtx {
        &self.data.ctx
    }

    fn conductor(&self) -> u32 {
        self.data.c
    }

    fn row(&self, i: u32, n: i64) -> Result<Arc<BTreeMap<u64, CycloNumber>>> {
        Ok(Arc::new(self.table(i)?.entries.get(&n).cloned().unwrap_or_default()))
    }

    fn support(&self, i: u32) -> (i64, Option<i64>) {
        let s = self.table(i).map(|t| t.support()).unwrap_or_default();
        match (s.first(), s.last()) {
            (Some(a), Some(b)) => (*a, Some(*b)),
            _ => (0, Some(-1)),
        }
    }

    fn trivial_central(&self) -> bool {
        // the omega data is built with C_nu C_nu^-1 = 1
        self.data.check_invariants().is_ok()
    }

    fn describe(&self) -> Value {
        self.data.to_json()
    }
}

type RowCache = Mutex<HashMap<(u32, i64), Arc<BTreeMap<u64, CycloNumber>>>>;

pub struct PsProvider {
    pub engine: PsEngine,
    cache: RowCache,
}

impl PsProvider {
    pub fn new(engine: PsEngine) -> Self {
        PsProvider {
            engine,
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl NewformProvider for PsProvider {
    fn ctx(&self) -> &LocalCtx {
        &self.engine.ctx
    }

    fn conductor(&self) -> u32 {
        self.engine.rep.c()
    }

    fn row(&self, i: u32, n: i64) -> Result<Arc<BTreeMap<u64, CycloNumber>>> {
        if let Some(r) = self.cache.lock().unwrap().get(&(i, n)) {
            return Ok(r.clone());
        }
        let t = self.engine.table(i, n, n)?;
        let r = Arc::new(t.entries.get(&n).cloned().unwrap_or_default());
        self.cache.lock().unwrap().insert((i, n), r.clone());
        Ok(r)
    }

    fn support(&self, i: u32) -> (i64, Option<i64>) {
        let c = self.conductor() as i64;
        let s = (2 * i as i64 - c).min(0);
        if i == self.engine.rep.k {
            (0, None)
        } else {
            (s, Some(s))
        }
    }

    fn period(&self) -> u64 {
        self.engine.rep.period()
    }

    fn trivial_central(&self) -> bool {
        self.engine.rep.has_trivial_central_character()
    }

    fn describe(&self) -> Value {
        self.engine.rep.to_json()
    }
}

/// A locally constant function of a unit `r`, as `sum_t coeffs[t] nu_t(r)`
/// over ambient character exponents.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct CellFn {
    pub coeffs: BTreeMap<u64, CycloNumber>,
}

impl CellFn {
    pub fn constant(z: CycloNumber) -> Self {
        let mut coeffs = BTreeMap::new();
        if !z.is_zero() {
            coeffs.insert(0, z);
        }
        CellFn { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, ctx: &LocalCtx, r: u64) -> CycloNumber {
        let mut acc = CycloSum::new(ctx.m);
        for (t, a) in &self.coeffs {
            acc.add(&a.mul_root(ctx.char_exp(*t, r) as i64));
        }
        acc.finish()
    }

    /// Sum of `|coefficient|^2` over characters of the given level.
    pub fn level_norm_squared(&self, ctx: &LocalCtx, level: u32) -> Result<Rational> {
        let mut s = Rational::zero();
        for (t, a) in &self.coeffs {
            if ctx.level(*t) == level {
                s += a.norm_squared()?;
            }
        }
        Ok(s)
    }

    pub fn levels(&self, ctx: &LocalCtx) -> Vec<u32> {
        let mut l: Vec<u32> = self.coeffs.keys().map(|t| ctx.level(*t)).collect();
        l.sort_unstable();
        l.dedup();
        l
    }
}

/// `Phi((a m; 0 1)(1 0; p^i 1))` on the cell `v(a) = va`, `v(m) = vm` (or
/// `m` in O when `vm` is `None`), as a function of `r = a_u / m_u`.
pub fn phi_cell(prov: &dyn NewformProvider, i: u32, va: i64, vm: Option<i64>) -> Result<CellFn> {
    let ctx = prov.ctx();
    let ie = i.min(prov.conductor());
    let row = prov.row(ie, va)?;
    match vm {
        None => Ok(CellFn::constant(row.get(&0).cloned().unwrap_or_else(|| ctx.zero()))),
        Some(v) if v >= 0 => Ok(CellFn::constant(
            row.get(&0).cloned().unwrap_or_else(|| ctx.zero()),
        )),
        Some(v) => {
            let j = -v;
            let mut coeffs = BTreeMap::new();
            for (t, c) in row.iter() {
                let g = ctx.gauss(j, 1, ctx.inv(*t));
                if g.is_zero() {
                    continue;
                }
                coeffs.insert(*t, c * &g);
            }
            Ok(CellFn { coeffs })
        }
    }
}

/// Query `Phi((a m; 0 1)(1 0; p^i 1))`; `m = None` means `m = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatCoefQuery {
    pub a: PAdicShell,
    pub m: Option<PAdicShell>,
    pub i: u32,
}

pub fn phi_from_whittaker(prov: &dyn NewformProvider, q: &MatCoefQuery) -> Result<CycloNumber> {
    let ctx = prov.ctx();
    let vm = q.m.as_ref().map(|m| m.valuation);
    let cell = phi_cell(prov, q.i, q.a.valuation, vm)?;
    if cell.is_zero() {
        return Ok(ctx.zero());
    }
    let need = cell.levels(ctx).into_iter().max().unwrap_or(0);
    if need == 0 {
        return Ok(cell.coeffs.get(&0).cloned().unwrap_or_else(|| ctx.zero()));
    }
    let m = q.m.as_ref().expect("nonconstant cell has m");
    let have = q.a.precision.min(m.precision);
    if have < need {
        return Err(Error::InsufficientPrecision { needed: need, have });
    }
    let pk = ctx.pk();
    let mu = m.unit_residue % pk;
    let r = (q.a.unit_residue % pk) as u128 * crate::padic::inv_mod(mu, pk) as u128 % pk as u128;
    Ok(cell.eval(ctx, r as u64))
}

fn shell_to_rational(s: &PAdicShell) -> Rational {
    Rational::from_integer(BigInt::from(s.unit_residue)) * p_pow(s.p, s.valuation)
}

/// `Phi(g)` for any invertible rational `g`, through the representative
/// chosen by [`iwasawa_decompose`].  Only a genuine representation makes
/// this independent of the representative; for mock supercuspidal data the
/// canonical cells are the definition.
pub fn phi_general(prov: &dyn NewformProvider, g: &Mat2) -> Result<CycloNumber> {
    let ctx = prov.ctx();
    let p = ctx.p;
    let (a, m, i) = iwasawa_decompose(p, prov.conductor(), g)?;
    let prec = ctx.kmax + 2;
    let a_sh = PAdicShell::from_rational(p, &a, prec)?;
    let m_sh = if m.is_zero() {
        None
    } else {
        Some(PAdicShell::from_rational(p, &m, prec)?)
    };
    phi_from_whittaker(prov, &MatCoefQuery { a: a_sh, m: m_sh, i })
}

/// Matrix coefficient of `pi(diag(p^-n, 1)) phi_new`:
/// `Phi~(g) = Phi(diag(p^-n,1)^-1 g diag(p^-n,1))`.
pub fn phi_oldform(prov: &dyn NewformProvider, n: i64, q: &MatCoefQuery) -> Result<CycloNumber> {
    let c = prov.conductor() as i64;
    if (q.i as i64) > c + n {
        return Err(Error::InvalidArgument(format!("i = {} > c + n = {}", q.i, c + n)));
    }
    let p = prov.ctx().p;
    let a = shell_to_rational(&q.a);
    let m = q.m.as_ref().map(shell_to_rational).unwrap_or_else(Rational::zero);
    let g = Mat2::borel_lower(&a, &m, p, q.i as i64).old_conjugate(p, n);
    phi_general(prov, &g)
}

/// Representatives of double K1(p)-cosets modulo the center.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SteinbergCoset {
    Identity,
    Omega,
    Sigma(u32),
    OmegaSigma(u32),
    SigmaOmega(u32),
    OmegaSigmaOmega(u32),
}

impl fmt::Display for SteinbergCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SteinbergCoset::Identity => write!(f, "1"),
            SteinbergCoset::Omega => write!(f, "w"),
            SteinbergCoset::Sigma(n) => write!(f, "s{}", n),
            SteinbergCoset::OmegaSigma(n) => write!(f, "ws{}", n),
            SteinbergCoset::SigmaOmega(n) => write!(f, "s{}w", n),
            SteinbergCoset::OmegaSigmaOmega(n) => write!(f, "ws{}w", n),
        }
    }
}

/// Classify from the valuations of `(A B; C D)` and of the determinant, by
/// reducing to a monomial matrix with Iwahori row and column operations.
pub fn classify_valuations(va: i64, vb: i64, vc: i64, vd: i64, vdet: i64) -> SteinbergCoset {
    let diag = |alpha: i64, beta: i64| {
        let n = alpha - beta;
        match n.cmp(&0) {
            std::cmp::Ordering::Equal => SteinbergCoset::Identity,
            std::cmp::Ordering::Greater => SteinbergCoset::Sigma(n as u32),
            std::cmp::Ordering::Less => SteinbergCoset::OmegaSigmaOmega((-n) as u32),
        }
    };
    // (0 p^gamma; p^delta 0)
    let anti = |gamma: i64, delta: i64| {
        let n = delta - gamma;
        match n.cmp(&0) {
            std::cmp::Ordering::Equal => SteinbergCoset::Omega,
            std::cmp::Ordering::Greater => SteinbergCoset::OmegaSigma(n as u32),
            std::cmp::Ordering::Less => SteinbergCoset::SigmaOmega((-n) as u32),
        }
    };
    if vc <= va && vc <= vd {
        anti(vdet - vc, vc)
    } else if va < vc && va <= vb {
        diag(va, vdet - va)
    } else if vd < vc && vd <= vb {
        diag(vdet - vd, vd)
    } else {
        anti(vb, vdet - vb)
    }
}

pub fn steinberg_classify(p: u64, g: &Mat2) -> Result<SteinbergCoset> {
    let det = g.det();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let m = &g.0;
    Ok(classify_valuations(
        val(p, &m[0][0]),
        val(p, &m[0][1]),
        val(p, &m[1][0]),
        val(p, &m[1][1]),
        vp(p, &det),
    ))
}

/// Classify a matrix given by shells (entries `None` are exactly zero).
/// Each shell is known modulo `p^(valuation + precision)`; the determinant
/// valuation must be decided at that precision.
pub fn steinberg_classify_shells(entries: [[Option<&PAdicShell>; 2]; 2]) -> Result<SteinbergCoset> {
    let p = entries
        .iter()
        .flatten()
        .flatten()
        .map(|s| s.p)
        .next()
        .ok_or(Error::Singular)?;
    let to_r = |e: Option<&PAdicShell>| e.map(shell_to_rational).unwrap_or_else(Rational::zero);
    // absolute precision of a product of two entries
    let known = |x: Option<&PAdicShell>, y: Option<&PAdicShell>| -> i64 {
        match (x, y) {
            (Some(x), Some(y)) => {
                x.valuation + y.valuation + x.precision.min(y.precision) as i64
            }
            _ => INF,
        }
    };
    let g = Mat2::new(
        to_r(entries[0][0]),
        to_r(entries[0][1]),
        to_r(entries[1][0]),
        to_r(entries[1][1]),
    );
    let det = g.det();
    let prec = known(entries[0][0], entries[1][1]).min(known(entries[0][1], entries[1][0]));
    if det.is_zero() || vp(p, &det) >= prec {
        if prec >= INF {
            return Err(Error::Singular);
        }
        return Err(Error::PrecisionTooLow(format!(
            "det valuation not determined below p^{}",
            prec
        )));
    }
    steinberg_classify(p, &g)
}

/// `sigma(chi |.|^(1/2), chi |.|^(-1/2))` with `chi` unramified.
#[derive(Clone, Debug, PartialEq)]
pub struct SteinbergRep {
    pub p: u64,
    pub chi_at_p: CycloNumber,
}

impl SteinbergRep {
    pub fn new(p: u64, chi_at_p: CycloNumber) -> Result<Self> {
        if chi_at_p.norm_squared()? != Rational::one() {
            return Err(Error::InvalidArgument("chi(p) must have modulus 1".into()));
        }
        Ok(SteinbergRep { p, chi_at_p })
    }

    pub fn trivial(p: u64) -> Self {
        SteinbergRep {
            p,
            chi_at_p: CycloNumber::one(1),
        }
    }

    /// Table value on a coset representative; `chi^n` carried separately.
    pub fn rho(&self, r: SteinbergCoset) -> Rational {
        let p = self.p as i64;
        match r {
            SteinbergCoset::Identity => Rational::one(),
            SteinbergCoset::Omega => -Rational::new(1.into(), p.into()),
            SteinbergCoset::Sigma(n) | SteinbergCoset::OmegaSigmaOmega(n) => p_pow(self.p, -(n as i64)),
            SteinbergCoset::OmegaSigma(n) => -p_pow(self.p, 1 - n as i64),
            SteinbergCoset::SigmaOmega(n) => -p_pow(self.p, -1 - n as i64),
        }
    }

    /// `Phi(g) = chi(p)^v(det g) rho(coset)`.
    pub fn value_from_valuations(&self, va: i64, vb: i64, vc: i64, vd: i64, vdet: i64) -> CycloNumber {
        let r = classify_valuations(va, vb, vc, vd, vdet);
        let chi = self.chi_at_p.powi(vdet).expect("unit modulus");
        chi.scale(&self.rho(r))
    }

    pub fn to_json(&self) -> Value {
        let (d, e) = self.chi_at_p.root_of_unity().unwrap_or((0, 0));
        json!({"kind": "steinberg", "p": self.p, "chi_at_p": {"order": d, "exponent": e}})
    }
}

pub fn phi_steinberg(rep: &SteinbergRep, g: &Mat2) -> Result<CycloNumber> {
    let det = g.det();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let p = rep.p;
    let m = &g.0;
    Ok(rep.value_from_valuations(
        val(p, &m[0][0]),
        val(p, &m[0][1]),
        val(p, &m[1][0]),
        val(p, &m[1][1]),
        vp(p, &det),
    ))
}

/// Steinberg coefficient of the old vector `pi(diag(p^-n,1)) phi` on the
/// cell `(i, va, vm)` as a function of `r = a_u / m_u`.
pub fn steinberg_cell(
    rep: &SteinbergRep,
    ctx: &LocalCtx,
    n_old: i64,
    i: u32,
    va: i64,
    vm: Option<i64>,
) -> CellFn {
    let ii = i as i64;
    // valuations of (a + m p^i, m p^n; p^(i-n), 1) given v(r + 1) = e
    let eval = |e: i64| -> CycloNumber {
        let (vaa, vb) = match vm {
            None => (va, INF),
            Some(vm) => {
                let d = va - vm - ii;
                let vaa = match d.cmp(&0) {
                    std::cmp::Ordering::Less => va,
                    std::cmp::Ordering::Greater => vm + ii,
                    std::cmp::Ordering::Equal => (vm + ii).saturating_add(e),
                };
                (vaa, vm + n_old)
            }
        };
        rep.value_from_valuations(vaa, vb, ii - n_old, 0, va)
    };
    let depends = matches!(vm, Some(vm) if va == vm + ii);
    if !depends {
        return CellFn::constant(eval(0).lift_modulus(ctx.m).expect("ambient"));
    }
    let at_inf = eval(INF);
    let mut f: Vec<CycloNumber> = Vec::new();
    let mut e = 0i64;
    loop {
        let v = eval(e);
        if v == at_inf {
            // stable from here on: later thresholds are all below e
            let bound = va.abs() + vm.unwrap_or(0).abs() + ii + n_old.abs() + 4;
            if (e..=bound).all(|x| eval(x) == at_inf) {
                break;
            }
        }
        f.push(v);
        e += 1;
    }
    let level = f.len() as u32;
    // f(r) = sum_e G(e) 1_{v(r+1) >= e}, G(0) = F(0), G(e) = F(e) - F(e-1)
    let value = |e: usize| -> CycloNumber {
        if e < f.len() {
            f[e].clone()
        } else {
            at_inf.clone()
        }
    };
    let mut coeffs: BTreeMap<u64, CycloNumber> = BTreeMap::new();
    let g0 = value(0).lift_modulus(ctx.m).expect("ambient");
    if !g0.is_zero() {
        coeffs.insert(0, g0);
    }
    let phi = |e: u32| crate::cyclo::euler_phi(ctx.p.pow(e));
    for e in 1..=level {
        let ge = (&value(e as usize) - &value(e as usize - 1))
            .lift_modulus(ctx.m)
            .expect("ambient");
        if ge.is_zero() {
            continue;
        }
        let w = ge.scale(&Rational::new(1.into(), BigInt::from(phi(e))));
        for t in ctx.chars_up_to(e) {
            // int_{r = -1 mod p^e} nu^-1(r) d*r = nu(-1) / phi(p^e)
            let term = w.mul_root(ctx.sign_exp(t) as i64);
            let slot = coeffs.entry(t).or_insert_with(|| ctx.zero());
            *slot = &*slot + &term;
        }
    }
    coeffs.retain(|_, v| !v.is_zero());
    CellFn { coeffs }
}

/// One verified claim about newform matrix coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct McCheck {
    pub part: &'static str,
    pub i: u32,
    pub detail: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct McSupportReport {
    pub p: u64,
    pub c: u32,
    pub rep: Value,
    pub checks: Vec<McCheck>,
}

impl McSupportReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "c": self.c,
            "rep": self.rep,
            "pass": self.pass(),
            "checks": self.checks.iter().map(|c| json!({
                "part": c.part, "i": c.i, "detail": c.detail, "pass": c.pass
            })).collect::<Vec<_>>(),
        })
    }
}

/// Sum over shells `va >= lo` of the level-`level` norm of the cell
/// `(i, va, vm)`, certified past `hi` by the geometric tail.
fn shell_norm_sum(
    prov: &dyn NewformProvider,
    i: u32,
    vm: Option<i64>,
    level: u32,
    lo: i64,
    hi: Option<i64>,
) -> Result<Rational> {
    let ctx = prov.ctx();
    let f = |va: i64| -> Result<Rational> { phi_cell(prov, i, va, vm)?.level_norm_squared(ctx, level) };
    match hi {
        Some(hi) => {
            let mut s = Rational::zero();
            for va in lo..=hi {
                s += f(va)?;
            }
            Ok(s)
        }
        None => {
            let n0 = 2 * prov.conductor() as i64 + 3;
            let mut s = Rational::zero();
            for va in lo..n0 {
                s += f(va)?;
            }
            s += crate::whittaker::geometric_tail(f, n0, prov.period(), ctx.p, 2)?;
            Ok(s)
        }
    }
}

/// Check supports, boundary values and per-level norms of the newform
/// matrix coefficient on every `(i, v(a), v(m))` cell of a window.
pub fn check_support_proposition(prov: &dyn NewformProvider) -> Result<McSupportReport> {
    let ctx = prov.ctx();
    let p = ctx.p;
    let c = prov.conductor();
    let ci = c as i64;
    let pr = Rational::from_integer(BigInt::from(p));
    let pm1 = &pr - Rational::one();
    let minus_inv = -(Rational::one() / &pm1);
    let l0_coeff = Rational::one() / (&pm1 * &pm1);
    let l1_norm = &pr * &pr * (&pr - rat_int(2)) / (&pm1 * &pm1 * &pm1 * &pm1);
    let mut checks = Vec::new();
    let mut push = |part: &'static str, i: u32, detail: String, pass: bool| {
        checks.push(McCheck { part, i, detail, pass })
    };
    let const_is = |cell: &CellFn, v: &Rational| -> bool {
        cell.coeffs.len() == 1
            && cell.coeffs.get(&0).and_then(|z| z.as_rational()).as_ref() == Some(v)
    };
    let vms: Vec<Option<i64>> = std::iter::once(None).chain((1..=ci + 2).map(|t| Some(-t))).collect();
    let va_hi = 2 * ci + 2;
    for i in 0..=c {
        let ii = i as i64;
        let unbounded = prov.support(i).1.is_none();
        // observed support inside the window
        let mut support: Vec<(i64, Option<i64>)> = Vec::new();
        for va in -ci - 2..=va_hi {
            for vm in &vms {
                if !phi_cell(prov, i, va, *vm)?.is_zero() {
                    support.push((va, *vm));
                }
            }
        }
        let allowed: Box<dyn Fn(i64, Option<i64>) -> bool> = if i + 1 >= c && c >= 3 || i == c {
            Box::new(|va, vm| va == 0 && matches!(vm, None | Some(-1)))
        } else if 2 * i == c && c > 2 {
            Box::new(move |va, vm| va >= 0 && vm == Some(-ci / 2))
        } else if 2 * i == c {
            Box::new(|va, vm| va >= 0 && matches!(vm, None | Some(-1)))
        } else {
            Box::new(move |va, vm| va == (2 * ii - ci).min(0) && vm == Some(ii - ci))
        };
        let bad: Vec<_> = support.iter().filter(|(a, m)| !allowed(*a, *m)).collect();
        push("support", i, format!("cells {:?}", support), bad.is_empty() && !support.is_empty());

        if i == c {
            let a = phi_cell(prov, i, 0, None)?;
            push("boundary", i, "v(m) >= 0 gives 1".into(), const_is(&a, &Rational::one()));
            let b = phi_cell(prov, i, 0, Some(-1))?;
            push("boundary", i, "v(m) = -1 gives -1/(p-1)".into(), const_is(&b, &minus_inv));
        } else if i + 1 == c {
            let a = phi_cell(prov, i, 0, None)?;
            push("boundary", i, "v(m) >= 0 gives -1/(p-1)".into(), const_is(&a, &minus_inv));
            let cell = phi_cell(prov, i, 0, Some(-1))?;
            let c0 = cell.coeffs.get(&0).and_then(|z| z.as_rational());
            push("level0", i, format!("level-0 coefficient {:?}", c0), c0.as_ref() == Some(&l0_coeff));
            let lv = cell.levels(ctx);
            push("levels", i, format!("levels {:?}", lv), lv == vec![0, 1]);
            let hi = if unbounded { None } else { Some(va_hi) };
            let n1 = shell_norm_sum(prov, i, Some(-1), 1, 0, hi)?;
            push("norm", i, format!("level-1 norm^2 {}", n1), n1 == l1_norm);
            if unbounded {
                for va in 1..=va_hi {
                    let lv = phi_cell(prov, i, va, Some(-1))?.levels(ctx);
                    if !lv.is_empty() && lv != vec![1] {
                        push("levels", i, format!("v(a) = {} levels {:?}", va, lv), false);
                    }
                }
            }
        } else {
            let want = &pr / (&pm1 * &pm1 * p_pow(p, ci - ii - 1));
            let vm = Some(ii - ci);
            let (lo, hi) = if 2 * i == c {
                (0, if unbounded { None } else { Some(va_hi) })
            } else {
                let s = (2 * ii - ci).min(0);
                (s, Some(s))
            };
            let mut levels_ok = true;
            for va in lo..=hi.unwrap_or(va_hi) {
                let lv = phi_cell(prov, i, va, vm)?.levels(ctx);
                levels_ok &= lv.is_empty() || lv == vec![c - i];
            }
            push("levels", i, format!("only level {}", c - i), levels_ok);
            let n = shell_norm_sum(prov, i, vm, c - i, lo, hi)?;
            push("norm", i, format!("level-{} norm^2 {}", c - i, n), n == want);
        }
    }
    Ok(McSupportReport {
        p,
        c,
        rep: prov.describe(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat;
    use crate::kirillov::mock_supercuspidal;

    #[test]
    fn classify_examples() {
        assert_eq!(steinberg_classify(3, &Mat2::identity()).unwrap(), SteinbergCoset::Identity);
        assert_eq!(
            steinberg_classify(3, &Mat2::from_ints(1, 0, 3, 1)).unwrap(),
            SteinbergCoset::Identity
        );
        assert_eq!(
            steinberg_classify(3, &Mat2::from_ints(9, 0, 0, 1)).unwrap(),
            SteinbergCoset::Sigma(2)
        );
        assert_eq!(
            steinberg_classify(3, &Mat2::from_ints(0, 1, -1, 0)).unwrap(),
            SteinbergCoset::Omega
        );
    }

    #[test]
    fn steinberg_values() {
        let st = SteinbergRep::trivial(5);
        let w = Mat2::from_ints(0, 1, -1, 0);
        assert_eq!(phi_steinberg(&st, &w).unwrap().as_rational(), Some(rat(-1, 5)));
        let s2 = Mat2::from_ints(25, 0, 0, 1);
        assert_eq!(phi_steinberg(&st, &s2).unwrap().as_rational(), Some(rat(1, 25)));
        let wsw = w.mul(&s2).mul(&w);
        assert_eq!(phi_steinberg(&st, &wsw).unwrap().as_rational(), Some(rat(1, 25)));
        let st = SteinbergRep::new(5, CycloNumber::from_int(1, -1)).unwrap();
        let ws = w.mul(&Mat2::from_ints(5, 0, 0, 1));
        assert_eq!(phi_steinberg(&st, &ws).unwrap().as_rational(), Some(rat(1, 1)));
    }

    #[test]
    fn decompose_roundtrip() {
        let p = 3;
        let gs = [
            Mat2::from_ints(1, 2, 3, 4),
            Mat2::from_ints(2, 1, 9, 5),
            Mat2::from_ints(7, 1, 1, 27),
            Mat2::new(rat(1, 9), rat(2, 3), rat(5, 1), rat(1, 1)),
        ];
        for g in gs {
            for c in 1..=4 {
                let (a, m, i) = iwasawa_decompose(p, c, &g).unwrap();
                let b = Mat2::borel_lower(&a, &m, p, i as i64);
                // k = b^-1 g / z lies in K1(p^c) up to the center
                let k = b.inv().unwrap().mul(&g);
                let z = k.0[1][1].clone();
                let k = k.scale(&z.recip());
                for e in k.0.iter().flatten() {
                    assert!(e.is_zero() || vp(p, e) >= 0);
                }
                assert_eq!(vp(p, &k.det()), 0);
                assert!(k.0[1][0].is_zero() || vp(p, &k.0[1][0]) >= c as i64);
                assert!((&k.0[1][1] - Rational::one()).is_zero());
            }
        }
    }

    #[test]
    fn newform_identity() {
        let data = mock_supercuspidal(3, 3, 5).unwrap();
        let prov = ScProvider::new(data).unwrap();
        let v = phi_general(&prov, &Mat2::identity()).unwrap();
        assert_eq!(v, prov.ctx().one());
    }

    fn sample_mats(p: i64) -> Vec<Mat2> {
        let mut v = Vec::new();
        for (a, b, c, d) in [
            (1, 2, 3, 4),
            (2, 1, 9, 5),
            (7, 1, 1, 27),
            (1, 1, 0, 1),
            (p, 1, 1, 0),
            (1, 0, p * p, 1),
            (p * p * p, 2, p, 1),
            (4, 7, 2 * p, 1),
        ] {
            v.push(Mat2::from_ints(a, b, c, d));
        }
        v.push(Mat2::new(rat(1, p * p), rat(2, p), rat(1, 1), rat(1, 1)));
        v.push(Mat2::new(rat(1, 1), rat(1, p * p), rat(0, 1), rat(1, 1)));
        v
    }

    #[test]
    fn hermitian_symmetry() {
        let rep = crate::whittaker::PrincipalSeriesRamified::trivial_central(3, 1, 1, 1, 0).unwrap();
        let ps = PsProvider::new(PsEngine::new(&rep, crate::whittaker::DuConvention::Additive).unwrap());
        let provs: [&dyn NewformProvider; 1] = [&ps];
        for prov in provs {
            for g in sample_mats(3) {
                let a = phi_general(prov, &g).unwrap();
                let b = phi_general(prov, &g.inv().unwrap()).unwrap();
                assert_eq!(a, b.conj(), "g = {:?}", g);
            }
        }
        let st = SteinbergRep::trivial(3);
        for g in sample_mats(3) {
            let a = phi_steinberg(&st, &g).unwrap();
            let b = phi_steinberg(&st, &g.inv().unwrap()).unwrap();
            assert_eq!(a, b.conj());
        }
    }

    #[test]
    fn support_proposition_small() {
        for c in 2..=3 {
            let prov = ScProvider::new(mock_supercuspidal(3, c, 2).unwrap()).unwrap();
            let r = check_support_proposition(&prov).unwrap();
            assert!(r.pass(), "{:#?}", r.checks);
        }
        let rep = crate::whittaker::PrincipalSeriesRamified::trivial_central(5, 1, 1, 1, 0).unwrap();
        let ps = PsProvider::new(PsEngine::new(&rep, crate::whittaker::DuConvention::Additive).unwrap());
        let r = check_support_proposition(&ps).unwrap();
        assert!(r.pass(), "{:#?}", r.checks);
    }
}
