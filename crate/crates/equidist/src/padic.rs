//! Units of Z/p^k, their characters, the additive character psi and the
//! finite sums that realise integrals over valuation shells.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::{euler_phi, lcm_u64, rat, CycloNumber, DenseSum, Rational, RawSum};
use crate::error::{Error, Result};

pub(crate) fn pow_u64(p: u64, k: u32) -> u64 {
    p.pow(k)
}

pub(crate) fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// p-adic valuation of a nonzero integer.
pub fn vp_int(p: u64, n: &BigInt) -> i64 {
    assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut n = n.clone();
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn vp(p: u64, q: &Rational) -> i64 {
    vp_int(p, q.numer()) - vp_int(p, q.denom())
}

pub(crate) fn vp_u64(p: u64, mut n: u64) -> u32 {
    if n == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub(crate) fn inv_mod(a: u64, m: u64) -> u64 {
    let (g, x, _) = ext_gcd(a as i128, m as i128);
    assert_eq!(g, 1, "{} not invertible mod {}", a, m);
    x.rem_euclid(m as i128) as u64
}

pub(crate) fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// The cyclic group (Z/p^k)^* with a fixed generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitGroup {
    pub p: u64,
    pub k: u32,
    pub generator: u64,
    pub order: u64,
}

/// Smallest positive integer that generates (Z/p^k)^* for every k.
fn primitive_root(p: u64) -> u64 {
    let m = p * p;
    let ord = p * (p - 1);
    let mut qs = Vec::new();
    let mut n = ord;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            qs.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        qs.push(n);
    }
    (2..m)
        .find(|&g| g % p != 0 && qs.iter().all(|q| powmod(g, ord / q, m) != 1))
        .expect("primitive root exists")
}

pub fn unit_group(p: u64, k: u32) -> Result<UnitGroup> {
    if p == 2 {
        return Err(Error::UnsupportedPrime(p));
    }
    if !is_prime(p) || k == 0 {
        return Err(Error::InvalidArgument(format!("p = {}, k = {}", p, k)));
    }
    let g = primitive_root(p);
    let pk = pow_u64(p, k);
    Ok(UnitGroup {
        p,
        k,
        generator: g % pk,
        order: euler_phi(pk),
    })
}

type DlogCache = OnceLock<RwLock<HashMap<(u64, u32), Arc<Vec<u32>>>>>;
static DLOGS: DlogCache = OnceLock::new();

/// Discrete logarithms base the fixed generator, indexed by residue mod p^k;
/// `u32::MAX` marks non-units.
pub(crate) fn dlog_table(p: u64, k: u32) -> Arc<Vec<u32>> {
    let lock = DLOGS.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = lock.read().unwrap().get(&(p, k)) {
        return t.clone();
    }
    let pk = pow_u64(p, k);
    let g = primitive_root(p) % pk;
    let ord = euler_phi(pk);
    let mut table = vec![u32::MAX; pk as usize];
    let mut x = 1u64;
    for e in 0..ord {
        table[x as usize] = e as u32;
        x = x * g % pk;
    }
    let t = Arc::new(table);
    lock.write().unwrap().entry((p, k)).or_insert(t).clone()
}

/// Character of (Z/p^k)^*: `nu(g^e) = zeta_{phi(p^k)}^(t e)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultChar {
    pub p: u64,
    pub k: u32,
    pub t: u64,
}

impl MultChar {
    pub fn new(p: u64, k: u32, t: u64) -> Self {
        let ord = euler_phi(pow_u64(p, k));
        MultChar { p, k, t: t % ord }
    }

    pub fn trivial(p: u64, k: u32) -> Self {
        MultChar { p, k, t: 0 }
    }

    pub fn order_of_group(&self) -> u64 {
        euler_phi(pow_u64(self.p, self.k))
    }

    pub fn level(&self) -> u32 {
        if self.t == 0 {
            return 0;
        }
        let v = vp_u64(self.p, self.t).min(self.k);
        (self.k - v).max(1)
    }

    pub fn inv(&self) -> Self {
        let ord = self.order_of_group();
        MultChar {
            t: (ord - self.t) % ord,
            ..*self
        }
    }

    /// Same character seen on (Z/p^k2)^*, k2 >= k.
    pub fn lift(&self, k2: u32) -> Self {
        assert!(k2 >= self.k);
        MultChar {
            p: self.p,
            k: k2,
            t: self.t * pow_u64(self.p, k2 - self.k),
        }
    }

    /// Lift both operands to the larger ambient and multiply.
    pub fn mul(&self, other: &Self) -> Self {
        let k = self.k.max(other.k);
        let (a, b) = (self.lift(k), other.lift(k));
        MultChar::new(self.p, k, a.t + b.t)
    }

    pub fn pow(&self, n: i64) -> Self {
        let ord = self.order_of_group() as i128;
        let t = (self.t as i128 * n as i128).rem_euclid(ord);
        MultChar { t: t as u64, ..*self }
    }

    /// Exponent `a` with `nu(x) = zeta_{phi(p^k)}^a`.
    pub fn exponent_at(&self, x: u64) -> u64 {
        let pk = pow_u64(self.p, self.k);
        let table = dlog_table(self.p, self.k);
        let d = table[(x % pk) as usize];
        assert!(d != u32::MAX, "{} is not a unit mod {}^{}", x, self.p, self.k);
        let ord = self.order_of_group();
        ((self.t as u128 * d as u128) % ord as u128) as u64
    }

    /// Value at a unit, in its natural modulus phi(p^k).
    pub fn eval(&self, x: u64) -> CycloNumber {
        CycloNumber::root(self.order_of_group(), self.exponent_at(x) as i64)
    }

    /// Exponent of `nu(x)` as a power of `zeta_m`, where phi(p^k) | m.
    pub fn exponent_in(&self, x: u64, m: u64) -> u64 {
        let ord = self.order_of_group();
        debug_assert!(m % ord == 0);
        self.exponent_at(x) * (m / ord)
    }

    pub fn is_trivial(&self) -> bool {
        self.t == 0
    }

    /// Whether the character is its own inverse.
    pub fn is_quadratic_or_trivial(&self) -> bool {
        (2 * self.t) % self.order_of_group() == 0
    }
}

/// Character of F^*: unit part plus value at the uniformizer.
#[derive(Clone, Debug, PartialEq)]
pub struct MultCharExtended {
    pub unit_part: MultChar,
    pub value_at_p: CycloNumber,
}

impl MultCharExtended {
    pub fn new(unit_part: MultChar, value_at_p: CycloNumber) -> Result<Self> {
        if value_at_p.norm_squared()? != Rational::one() {
            return Err(Error::InvalidArgument(
                "value at p must have modulus 1".into(),
            ));
        }
        Ok(MultCharExtended {
            unit_part,
            value_at_p,
        })
    }

    pub fn unramified_twist_free(unit_part: MultChar) -> Self {
        MultCharExtended {
            unit_part,
            value_at_p: CycloNumber::one(1),
        }
    }

    pub fn inv(&self) -> Self {
        MultCharExtended {
            unit_part: self.unit_part.inv(),
            value_at_p: self.value_at_p.conj(),
        }
    }
}

/// `x = u p^n` with the unit part known modulo `p^precision`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PAdicShell {
    pub p: u64,
    pub valuation: i64,
    pub unit_residue: u64,
    pub precision: u32,
}

impl PAdicShell {
    pub fn new(p: u64, valuation: i64, unit_residue: u64, precision: u32) -> Result<Self> {
        let pk = pow_u64(p, precision);
        let u = unit_residue % pk;
        if precision > 0 && u % p == 0 {
            return Err(Error::InvalidArgument(format!(
                "{} is not a unit mod {}",
                unit_residue, p
            )));
        }
        Ok(PAdicShell {
            p,
            valuation,
            unit_residue: u,
            precision,
        })
    }

    pub fn from_rational(p: u64, q: &Rational, precision: u32) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::InvalidArgument("zero has no shell".into()));
        }
        let v = vp(p, q);
        let pv = BigInt::from(p).pow(v.unsigned_abs() as u32);
        let unit = if v >= 0 {
            q / Rational::from_integer(pv)
        } else {
            q * Rational::from_integer(pv)
        };
        let pk = pow_u64(p, precision);
        let pkb = BigInt::from(pk);
        let dinv = inv_mod(
            (unit.denom() % &pkb).try_into().unwrap_or(0u64),
            pk,
        );
        let n: BigInt = (unit.numer() % &pkb + &pkb) % &pkb;
        let n: u64 = n.try_into().unwrap();
        let u = (n as u128 * dinv as u128 % pk as u128) as u64;
        Self::new(p, v, u, precision)
    }
}

/// `psi(x) = exp(2 pi i frac(x))`.
pub fn psi_eval(x: &PAdicShell) -> Result<CycloNumber> {
    if x.valuation >= 0 {
        return Ok(CycloNumber::one(1));
    }
    let j = (-x.valuation) as u32;
    if x.precision < j {
        return Err(Error::InsufficientPrecision {
            needed: j,
            have: x.precision,
        });
    }
    let pj = pow_u64(x.p, j);
    Ok(CycloNumber::root(pj, (x.unit_residue % pj) as i64))
}

/// Brute-force `int_{v(x)=0} psi(m x) nu^{-1}(x) d*x` as the normalised sum
/// over units modulo `p^max(j, k)`.
pub fn gauss_integral(m: &PAdicShell, nu: &MultChar) -> Result<CycloNumber> {
    let p = nu.p;
    if m.valuation >= 0 {
        return Err(Error::InvalidArgument("need v(m) < 0".into()));
    }
    let j = (-m.valuation) as u32;
    if m.precision < j {
        return Err(Error::InsufficientPrecision {
            needed: j,
            have: m.precision,
        });
    }
    let kk = j.max(nu.k);
    let nu = nu.lift(kk);
    let pk = pow_u64(p, kk);
    let pj = pow_u64(p, j);
    let ord = nu.order_of_group();
    let modulus = lcm_u64(pj, ord);
    let inv = nu.inv();
    let mut raw = DenseSum::new(modulus);
    let w = m.unit_residue % pj;
    let table = dlog_table(p, kk);
    for u in 1..pk {
        if u % p == 0 {
            continue;
        }
        let e_psi = (w * (u % pj)) % pj * (modulus / pj);
        let e_chi = (inv.t * table[u as usize] as u64) % ord * (modulus / ord);
        raw.add_root(e_psi + e_chi, 1);
    }
    Ok(raw.reduce(&BigInt::from(euler_phi(pk))))
}

/// Regimes of the shifted character integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShiftRegime {
    /// `int mu(1 + p^j x) nu(x) d*x` with `0 < j < level(mu)`.
    Interior,
    /// `int_{x not in -1 + pO} mu(1 + x) nu(x) d*x`.
    Boundary,
    /// `int mu(1 + p^j x) nu(x) d*x` with `j < 0`; `mu(p)` taken to be 1.
    Negative,
}

pub fn char_integral_shifted(
    mu: &MultChar,
    nu: &MultChar,
    j: i64,
    regime: ShiftRegime,
) -> Result<CycloNumber> {
    let p = mu.p;
    let i = mu.level() as i64;
    if i == 0 {
        return Err(Error::RegimeMismatch("mu must be ramified"));
    }
    let ok = match regime {
        ShiftRegime::Interior => j > 0 && j < i,
        ShiftRegime::Boundary => true,
        ShiftRegime::Negative => j < 0,
    };
    if !ok {
        return Err(Error::RegimeMismatch(match regime {
            ShiftRegime::Interior => "interior",
            ShiftRegime::Boundary => "boundary",
            ShiftRegime::Negative => "negative",
        }));
    }
    let kk = mu.k.max(nu.k).max(1);
    let (mu, nu) = (mu.lift(kk), nu.lift(kk));
    let pk = pow_u64(p, kk);
    let ord = mu.order_of_group();
    let mut raw = DenseSum::new(ord);
    let table = dlog_table(p, kk);
    for x in 1..pk {
        if x % p == 0 {
            continue;
        }
        let arg = match regime {
            ShiftRegime::Interior => (1 + pow_u64(p, j as u32) % pk * x) % pk,
            ShiftRegime::Boundary => {
                if (x + 1) % p == 0 {
                    continue;
                }
                (1 + x) % pk
            }
            // 1 + p^j x = p^j (x + p^{-j}); mu(p) = 1
            ShiftRegime::Negative => (x + pow_u64(p, (-j) as u32) % pk) % pk,
        };
        let (da, dx) = (table[arg as usize] as u64, table[x as usize] as u64);
        debug_assert!(da != u32::MAX as u64);
        raw.add_root((mu.t * da + nu.t * dx) % ord, 1);
    }
    Ok(raw.reduce(&BigInt::from(euler_phi(pk))))
}

/// `(1/phi(p^L)) sum_u f(u)` for a table listed over the units mod p^L in
/// increasing order.
pub fn unit_integral(p: u64, level: u32, table: &[CycloNumber]) -> Result<CycloNumber> {
    let n = euler_phi(pow_u64(p, level));
    if table.len() as u64 != n {
        return Err(Error::InvalidArgument(format!(
            "table has {} entries, expected {}",
            table.len(),
            n
        )));
    }
    let mut acc = CycloNumber::zero(1);
    for v in table {
        acc = &acc + v;
    }
    Ok(acc.scale(&rat(1, n as i64)))
}

/// Characters of (Z/p^k)^* of exact level `level`.
pub fn enumerate_chars(p: u64, k: u32, level: u32) -> Vec<MultChar> {
    let ord = euler_phi(pow_u64(p, k));
    (0..ord)
        .map(|t| MultChar { p, k, t })
        .filter(|c| c.level() == level)
        .collect()
}

/// Characters of (Z/p^k)^* of level at most `level`.
pub fn chars_up_to_level(p: u64, k: u32, level: u32) -> Vec<MultChar> {
    let ord = euler_phi(pow_u64(p, k));
    if level == 0 {
        return vec![MultChar::trivial(p, k)];
    }
    // level <= L  <=>  p^{k-L} | t
    let step = pow_u64(p, k.saturating_sub(level));
    (0..ord / step)
        .map(|s| MultChar { p, k, t: s * step })
        .collect()
}

/// Ambient data for exact local computations: characters live on
/// (Z/p^kmax)^* and every value is expressed in Q(zeta_m).
#[derive(Clone, Debug)]
pub struct LocalCtx {
    pub p: u64,
    pub kmax: u32,
    pub m: u64,
    pk: u64,
    ord: u64,
    dlog: Arc<Vec<u32>>,
}

impl LocalCtx {
    /// `extra` is the order of any additional roots of unity that must be
    /// representable (values at p, random phases).
    pub fn new(p: u64, kmax: u32, extra: u64) -> Result<Self> {
        unit_group(p, kmax.max(1))?;
        let pk = pow_u64(p, kmax);
        let ord = euler_phi(pk);
        let m = lcm_u64(lcm_u64(4, lcm_u64(ord, pk)), extra.max(1));
        let cap = crate::cyclo::modulus_cap();
        if m > cap {
            return Err(Error::ModulusCap { modulus: m, cap });
        }
        Ok(LocalCtx {
            p,
            kmax,
            m,
            pk,
            ord,
            dlog: dlog_table(p, kmax),
        })
    }

    pub fn pk(&self) -> u64 {
        self.pk
    }

    pub fn group_order(&self) -> u64 {
        self.ord
    }

    pub fn char(&self, t: u64) -> MultChar {
        MultChar::new(self.p, self.kmax, t)
    }

    pub fn ambient(&self, c: &MultChar) -> MultChar {
        assert!(c.k <= self.kmax);
        c.lift(self.kmax)
    }

    pub fn dlog(&self, x: u64) -> u64 {
        let d = self.dlog[(x % self.pk) as usize];
        assert!(d != u32::MAX, "non-unit {}", x);
        d as u64
    }

    /// Exponent of `nu(x)` in zeta_m for an ambient character exponent t.
    pub fn char_exp(&self, t: u64, x: u64) -> u64 {
        (t as u128 * self.dlog(x) as u128 % self.ord as u128) as u64 * (self.m / self.ord)
    }

    /// Exponent of `psi(w / p^j)` in zeta_m.
    pub fn psi_exp(&self, w: i64, j: u32) -> u64 {
        let pj = pow_u64(self.p, j);
        assert!(self.m % pj == 0, "psi level {} exceeds ambient", j);
        (w.rem_euclid(pj as i64) as u64) * (self.m / pj)
    }

    pub fn level(&self, t: u64) -> u32 {
        MultChar::new(self.p, self.kmax, t).level()
    }

    pub fn zero(&self) -> CycloNumber {
        CycloNumber::zero(self.m)
    }

    pub fn one(&self) -> CycloNumber {
        CycloNumber::one(self.m)
    }

    pub fn lift(&self, z: &CycloNumber) -> Result<CycloNumber> {
        z.lift_modulus(self.m)
    }

    /// `(1/phi(p^r)) sum_{u in (Z/p^r)^*} zeta_m^f(u)`, terms with `None`
    /// contributing zero.
    pub fn unit_sum<F: Fn(u64) -> Option<u64>>(&self, r: u32, f: F) -> CycloNumber {
        let pr = pow_u64(self.p, r);
        let mut raw = RawSum::new(self.m);
        for u in 1..pr {
            if u % self.p == 0 {
                continue;
            }
            if let Some(e) = f(u) {
                raw.add_root(e, 1);
            }
        }
        raw.reduce(&BigInt::from(euler_phi(pr)))
    }

    /// Exponent of `nu(-1)`, i.e. 0 or m/2.
    pub fn sign_exp(&self, t: u64) -> u64 {
        self.char_exp(t, self.pk - 1)
    }

    pub fn mul(&self, t1: u64, t2: u64) -> u64 {
        (t1 + t2) % self.ord
    }

    pub fn inv(&self, t: u64) -> u64 {
        (self.ord - t) % self.ord
    }

    /// `p^(h/2)` exactly.
    pub fn p_half_pow(&self, h: i64) -> CycloNumber {
        let p = BigInt::from(self.p);
        let e = h.div_euclid(2);
        let base = if e >= 0 {
            Rational::from_integer(p.pow(e as u32))
        } else {
            Rational::new(BigInt::one(), p.pow((-e) as u32))
        };
        if h.rem_euclid(2) == 0 {
            CycloNumber::from_rational(self.m, &base)
        } else {
            crate::cyclo::sqrt_prime(self.p)
                .and_then(|s| s.lift_modulus(self.m))
                .expect("sqrt p lies in the ambient")
                .scale(&base)
        }
    }

    /// Ambient exponents of characters of level at most `level`.
    pub fn chars_up_to(&self, level: u32) -> Vec<u64> {
        chars_up_to_level(self.p, self.kmax, level)
            .into_iter()
            .map(|c| c.t)
            .collect()
    }

    /// `int_{O^*} psi(w p^{-j} x) chi^{-1}(x) d*x` for the ambient character
    /// with exponent t.  Uses orthogonality for j <= 1, and for j >= 2 the
    /// factorisation `x = x0 (1 + p^s y)`, `2s >= j`, on which chi is an
    /// additive character of y.  For j >= 2 the value vanishes unless
    /// level(chi) = j; for j = 1 unless level(chi) <= 1.
    pub fn gauss(&self, j: i64, w: i64, t: u64) -> CycloNumber {
        let p = self.p;
        let lvl = self.level(t) as i64;
        let inv_t = (self.ord - t) % self.ord;
        if j <= 0 {
            return if t == 0 { self.one() } else { self.zero() };
        }
        if lvl > j || (j >= 2 && lvl != j) {
            return self.zero();
        }
        let ju = j as u32;
        assert!(ju <= self.kmax, "gauss level {} beyond ambient {}", j, self.kmax);
        if ju == 1 {
            let mut raw = RawSum::new(self.m);
            for x in 1..p {
                raw.add_root(self.psi_exp(w * x as i64, 1) + self.char_exp(inv_t, x), 1);
            }
            return raw.reduce(&BigInt::from(p - 1));
        }
        let l = ju;
        let s = l.div_ceil(2);
        let ps = pow_u64(p, s);
        let pls = pow_u64(p, l - s);
        // chi^{-1}(1 + p^s y) = zeta_{p^{l-s}}^{b y}
        let e1 = self.char_exp(inv_t, 1 + ps);
        let unit = self.m / pls;
        debug_assert!(e1 % unit == 0);
        let b = (e1 / unit) % pls;
        let w_mod = w.rem_euclid(pls as i64) as u64;
        if w_mod % p == 0 {
            panic!("gauss: w must be a unit");
        }
        let target = (pls - b % pls) % pls * inv_mod(w_mod, pls) % pls;
        if target % p == 0 {
            return self.zero();
        }
        let mut raw = RawSum::new(self.m);
        let mut x0 = target;
        while x0 < ps {
            raw.add_root(self.psi_exp(w * x0 as i64, l) + self.char_exp(inv_t, x0), 1);
            x0 += pls;
        }
        let pl = pow_u64(p, l);
        let scale = Rational::new(BigInt::from(pls), BigInt::from(euler_phi(pl)));
        raw.to_cyclo().scale(&scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat_int;

    #[test]
    fn unit_group_examples() {
        let g = unit_group(3, 1).unwrap();
        assert_eq!((g.order, g.generator), (2, 2));
        let g = unit_group(5, 2).unwrap();
        assert_eq!((g.order, g.generator), (20, 2));
        assert_eq!(powmod(2, 20, 25), 1);
        assert_ne!(powmod(2, 10, 25), 1);
        assert_ne!(powmod(2, 4, 25), 1);
        assert_eq!(unit_group(2, 3), Err(Error::UnsupportedPrime(2)));
    }

    #[test]
    fn psi_examples() {
        let x = PAdicShell::from_rational(3, &rat(1, 3), 2).unwrap();
        assert_eq!(psi_eval(&x).unwrap(), CycloNumber::root(3, 1));
        let x = PAdicShell::from_rational(5, &rat_int(5), 2).unwrap();
        assert_eq!(psi_eval(&x).unwrap(), CycloNumber::one(1));
        let x = PAdicShell::from_rational(5, &rat(7, 25), 2).unwrap();
        assert_eq!(psi_eval(&x).unwrap(), CycloNumber::root(25, 7));
        let x = PAdicShell::new(5, -3, 7, 2).unwrap();
        assert!(psi_eval(&x).is_err());
    }

    #[test]
    fn gauss_examples() {
        let quad = MultChar::new(3, 1, 1);
        let m = PAdicShell::new(3, -1, 1, 1).unwrap();
        assert_eq!(gauss_integral(&m, &quad).unwrap().norm_squared().unwrap(), rat(3, 4));
        let nu = enumerate_chars(5, 2, 2)[0];
        let m = PAdicShell::new(5, -1, 1, 1).unwrap();
        assert!(gauss_integral(&m, &nu).unwrap().is_zero());
        let triv = MultChar::trivial(3, 1);
        let m = PAdicShell::new(3, -1, 1, 1).unwrap();
        assert_eq!(gauss_integral(&m, &triv).unwrap(), CycloNumber::from_rational(1, &rat(-1, 2)));
    }

    #[test]
    fn shifted_examples() {
        let mu = enumerate_chars(5, 2, 2)[0];
        let v = char_integral_shifted(&mu, &MultChar::trivial(5, 2), 1, ShiftRegime::Interior).unwrap();
        assert_eq!(v.as_rational(), Some(rat(-1, 4)));
        let mu = enumerate_chars(5, 3, 3)[0];
        let nu = enumerate_chars(5, 3, 1)[0];
        let v = char_integral_shifted(&mu, &nu, 1, ShiftRegime::Interior).unwrap();
        assert!(v.is_zero());
        let mu = enumerate_chars(3, 1, 1)[0];
        let v = char_integral_shifted(&mu, &MultChar::trivial(3, 1), 0, ShiftRegime::Boundary).unwrap();
        assert_eq!(v.as_rational(), Some(rat(-1, 2)));
        assert!(char_integral_shifted(&mu, &mu, 2, ShiftRegime::Interior).is_err());
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate_chars(3, 1, 1).len(), 1);
        assert_eq!(enumerate_chars(5, 1, 1).len(), 3);
        assert_eq!(enumerate_chars(3, 2, 2).len(), 4);
        assert_eq!(chars_up_to_level(5, 3, 2).len(), 20);
    }

    #[test]
    fn unit_integral_examples() {
        let ones = vec![CycloNumber::one(1); 4];
        assert_eq!(unit_integral(5, 1, &ones).unwrap(), CycloNumber::one(1));
        let nu = enumerate_chars(5, 1, 1)[0];
        let vals: Vec<_> = (1..5).map(|x| nu.eval(x)).collect();
        assert!(unit_integral(5, 1, &vals).unwrap().is_zero());
        let nu = enumerate_chars(5, 2, 2)[0];
        let vals: Vec<_> = (1..25u64)
            .filter(|x| x % 5 != 0)
            .map(|x| &nu.eval(x) * &nu.inv().eval(x))
            .collect();
        assert_eq!(unit_integral(5, 2, &vals).unwrap(), CycloNumber::one(1));
    }

    #[test]
    fn fast_gauss_matches_brute() {
        for p in [3u64, 5] {
            let ctx = LocalCtx::new(p, 3, 1).unwrap();
            for j in 1..=3i64 {
                for t in 0..ctx.group_order() {
                    for w in [1i64, 2] {
                        let fast = ctx.gauss(j, w, t);
                        let m = PAdicShell::new(p, -j, w as u64, j as u32).unwrap();
                        let brute = gauss_integral(&m, &ctx.char(t)).unwrap();
                        assert_eq!(fast, brute, "p={} j={} t={} w={}", p, j, t, w);
                    }
                }
            }
        }
    }
}
