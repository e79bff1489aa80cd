//! Exact arithmetic in cyclotomic fields Q(zeta_M).
//!
//! Elements are kept in the power basis `1, z, ..., z^(phi(M)-1)` as integer
//! numerators over one positive common denominator.  Reduction modulo the
//! cyclotomic polynomial uses `Phi_M(x) = Phi_r(x^(M/r))` with `r = rad(M)`, so
//! only a tiny table of `y^q mod Phi_r(y)` is ever needed.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ArithError;

pub type Rational = BigRational;

static MODULUS_CAP: AtomicU64 = AtomicU64::new(1_000_000);

/// Largest modulus any operation may create.  Exceeding it is an error.
pub fn modulus_cap() -> u64 {
    MODULUS_CAP.load(Ordering::Relaxed)
}

pub fn set_modulus_cap(cap: u64) {
    MODULUS_CAP.store(cap, Ordering::Relaxed);
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub(crate) fn lcm_u64(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    let mut r = n;
    for p in prime_factors(n) {
        r = r / p * (p - 1);
    }
    r
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

type Cache<V> = OnceLock<RwLock<HashMap<u64, Arc<V>>>>;

fn cached<V, F: FnOnce() -> V>(cache: &'static Cache<V>, key: u64, make: F) -> Arc<V> {
    let lock = cache.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = lock.read().unwrap().get(&key) {
        return v.clone();
    }
    let v = Arc::new(make());
    lock.write().unwrap().entry(key).or_insert(v).clone()
}

static POLYS: Cache<Vec<i64>> = OnceLock::new();

/// Coefficients (constant term first) of the n-th cyclotomic polynomial,
/// obtained by dividing `x^n - 1` by `Phi_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    assert!(n >= 1);
    cached(&POLYS, n, || {
        let mut num = vec![0i64; n as usize + 1];
        num[0] = -1;
        num[n as usize] = 1;
        for d in divisors(n) {
            if d == n {
                continue;
            }
            let q = cyclotomic_polynomial(d);
            num = exact_div(&num, &q);
        }
        num
    })
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let nn = rem.len() - 1;
    let mut quot = vec![0i64; nn - dn + 1];
    for k in (0..=nn - dn).rev() {
        let c = rem[k + dn] / den[dn];
        quot[k] = c;
        for (j, &dc) in den.iter().enumerate() {
            rem[k + j] -= c * dc;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

struct ModInfo {
    m: u64,
    s: u64,
    phi_r: u64,
    // rows[q] = y^q mod Phi_r(y) for q in [0, r)
    rows: Vec<Vec<(u64, i64)>>,
}

static INFOS: Cache<ModInfo> = OnceLock::new();

fn mod_info(m: u64) -> Arc<ModInfo> {
    cached(&INFOS, m, || {
        let r: u64 = prime_factors(m).iter().product();
        let r = r.max(1);
        let s = m / r;
        let phi_r = euler_phi(r);
        let poly = cyclotomic_polynomial(r);
        let d = phi_r as usize;
        let mut rows = Vec::with_capacity(r as usize);
        let mut cur = vec![0i64; d];
        cur[0] = 1;
        if d == 1 && r == 1 {
            // Phi_1 = y - 1, y == 1
            rows.push(vec![(0, 1)]);
        } else {
            for _ in 0..r {
                rows.push(
                    cur.iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(j, &c)| (j as u64, c))
                        .collect(),
                );
                // multiply by y and reduce by the monic poly
                let top = cur[d - 1];
                for j in (1..d).rev() {
                    cur[j] = cur[j - 1];
                }
                cur[0] = 0;
                if top != 0 {
                    for j in 0..d {
                        cur[j] -= top * poly[j];
                    }
                }
            }
        }
        ModInfo {
            m,
            s,
            phi_r,
            rows,
        }
    })
}

/// Formal integer combination of powers of `zeta_M`, not yet reduced.
#[derive(Clone, Debug)]
pub struct RawSum {
    m: u64,
    acc: HashMap<u64, BigInt>,
}

impl RawSum {
    pub fn new(m: u64) -> Self {
        RawSum {
            m,
            acc: HashMap::new(),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn add_root(&mut self, e: u64, c: i64) {
        if c != 0 {
            *self.acc.entry(e % self.m).or_default() += c;
        }
    }

    pub fn add_root_big(&mut self, e: u64, c: &BigInt) {
        if !c.is_zero() {
            *self.acc.entry(e % self.m).or_default() += c;
        }
    }

    pub fn len(&self) -> usize {
        self.acc.len()
    }

    pub fn is_empty(&self) -> bool {
        self.acc.is_empty()
    }

    /// Canonical element `(sum) / den`.
    pub fn reduce(&self, den: &BigInt) -> CycloNumber {
        reduce_iter(
            self.m,
            self.acc.iter().map(|(e, c)| (*e, c.clone())),
            den.clone(),
        )
    }

    pub fn to_cyclo(&self) -> CycloNumber {
        self.reduce(&BigInt::one())
    }
}

/// Dense small-coefficient variant of [`RawSum`] for character sums over
/// finite rings, where every coefficient is a point count.
#[derive(Clone, Debug)]
pub struct DenseSum {
    m: u64,
    acc: Vec<i64>,
}

impl DenseSum {
    pub fn new(m: u64) -> Self {
        DenseSum {
            m,
            acc: vec![0; m as usize],
        }
    }

    #[inline]
    pub fn add_root(&mut self, e: u64, c: i64) {
        self.acc[(e % self.m) as usize] += c;
    }

    pub fn reduce(&self, den: &BigInt) -> CycloNumber {
        let info = mod_info(self.m);
        let mut out = vec![0i128; self.m as usize];
        for (e, &c) in self.acc.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = e as u64;
            let q = e / info.s;
            let rem = e % info.s;
            if q < info.phi_r {
                out[e as usize] += c as i128;
            } else {
                for &(j, t) in &info.rows[q as usize] {
                    out[(rem + info.s * j) as usize] += c as i128 * t as i128;
                }
            }
        }
        let terms: Vec<(u32, BigInt)> = out
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c != 0)
            .map(|(e, c)| (e as u32, BigInt::from(c)))
            .collect();
        CycloNumber::normalized(self.m, terms, den.clone())
    }
}

/// Accumulator for long sums of canonical elements; avoids re-merging the
/// running total on every addition.
#[derive(Clone, Debug)]
pub struct CycloSum {
    m: u64,
    acc: HashMap<u32, Rational>,
}

impl CycloSum {
    pub fn new(m: u64) -> Self {
        CycloSum {
            m,
            acc: HashMap::new(),
        }
    }

    pub fn add(&mut self, z: &CycloNumber) {
        if z.is_zero() {
            return;
        }
        let lifted;
        let z = if z.m == self.m {
            z
        } else {
            lifted = z.lift_modulus(self.m).expect("summand modulus divides accumulator");
            &lifted
        };
        for (e, c) in &z.terms {
            let q = Rational::new(c.clone(), z.den.clone());
            *self.acc.entry(*e).or_insert_with(Rational::zero) += q;
        }
    }

    pub fn finish(&self) -> CycloNumber {
        let mut den = BigInt::one();
        for q in self.acc.values() {
            if !q.is_zero() {
                den = den.lcm(q.denom());
            }
        }
        let mut terms: Vec<(u32, BigInt)> = self
            .acc
            .iter()
            .filter(|(_, q)| !q.is_zero())
            .map(|(e, q)| (*e, q.numer() * (&den / q.denom())))
            .collect();
        terms.sort_unstable_by_key(|t| t.0);
        CycloNumber::normalized(self.m, terms, den)
    }
}

fn reduce_iter<I: Iterator<Item = (u64, BigInt)>>(m: u64, raw: I, den: BigInt) -> CycloNumber {
    let info = mod_info(m);
    let mut out: HashMap<u64, BigInt> = HashMap::new();
    for (e, c) in raw {
        if c.is_zero() {
            continue;
        }
        let e = e % info.m;
        let q = e / info.s;
        let rem = e % info.s;
        if q < info.phi_r {
            *out.entry(e).or_default() += c;
        } else {
            for &(j, t) in &info.rows[q as usize] {
                *out.entry(rem + info.s * j).or_default() += &c * t;
            }
        }
    }
    let mut terms: Vec<(u32, BigInt)> = out
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (e as u32, c))
        .collect();
    terms.sort_unstable_by_key(|t| t.0);
    CycloNumber::normalized(m, terms, den)
}

/// Element of Q(zeta_M) in canonical reduced form.
#[derive(Clone)]
pub struct CycloNumber {
    m: u64,
    terms: Vec<(u32, BigInt)>,
    den: BigInt,
}

impl CycloNumber {
    fn normalized(m: u64, mut terms: Vec<(u32, BigInt)>, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if terms.is_empty() {
            return CycloNumber {
                m,
                terms,
                den: BigInt::one(),
            };
        }
        if den.is_negative() {
            den = -den;
            for t in terms.iter_mut() {
                t.1 = -&t.1;
            }
        }
        let mut g = den.clone();
        for (_, c) in &terms {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            den /= &g;
            for t in terms.iter_mut() {
                t.1 /= &g;
            }
        }
        CycloNumber { m, terms, den }
    }

    fn check_cap(m: u64) -> Result<(), ArithError> {
        let cap = modulus_cap();
        if m > cap {
            Err(ArithError::ModulusCap { modulus: m, cap })
        } else {
            Ok(())
        }
    }

    pub fn zero(m: u64) -> Self {
        CycloNumber {
            m,
            terms: Vec::new(),
            den: BigInt::one(),
        }
    }

    pub fn one(m: u64) -> Self {
        Self::from_rational(m, &Rational::one())
    }

    pub fn from_int(m: u64, n: i64) -> Self {
        Self::from_rational(m, &rat_int(n))
    }

    pub fn from_rational(m: u64, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero(m);
        }
        CycloNumber::normalized(m, vec![(0, q.numer().clone())], q.denom().clone())
    }

    /// `zeta_m^e`.
    pub fn root(m: u64, e: i64) -> Self {
        let e = e.rem_euclid(m as i64) as u64;
        reduce_iter(m, std::iter::once((e, BigInt::one())), BigInt::one())
    }

    /// Reduce a formal sum `sum c_j zeta_m^(e_j)`.
    pub fn from_raw(m: u64, raw: &[(u64, i64)]) -> Self {
        reduce_iter(
            m,
            raw.iter().map(|&(e, c)| (e, BigInt::from(c))),
            BigInt::one(),
        )
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Power-basis coefficients, zero entries omitted.
    pub fn coeffs(&self) -> Vec<(u32, Rational)> {
        self.terms
            .iter()
            .map(|(e, c)| (*e, Rational::new(c.clone(), self.den.clone())))
            .collect()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(0, c)] => Some(Rational::new(c.clone(), self.den.clone())),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn lift_modulus(&self, m2: u64) -> Result<Self, ArithError> {
        if m2 % self.m != 0 {
            return Err(ArithError::BadModulus {
                from: self.m,
                to: m2,
            });
        }
        Self::check_cap(m2)?;
        if m2 == self.m {
            return Ok(self.clone());
        }
        let f = m2 / self.m;
        Ok(reduce_iter(
            m2,
            self.terms.iter().map(|(e, c)| (*e as u64 * f, c.clone())),
            self.den.clone(),
        ))
    }

    fn common(a: &Self, b: &Self) -> Result<(Self, Self), ArithError> {
        if a.m == b.m {
            return Ok((a.clone(), b.clone()));
        }
        let l = lcm_u64(a.m, b.m);
        Ok((a.lift_modulus(l)?, b.lift_modulus(l)?))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        if self.m != other.m {
            let (a, b) = Self::common(self, other)?;
            return a.checked_add(&b);
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let den = self.den.lcm(&other.den);
        let fa = &den / &self.den;
        let fb = &den / &other.den;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ea = self.terms.get(i).map(|t| t.0).unwrap_or(u32::MAX);
            let eb = other.terms.get(j).map(|t| t.0).unwrap_or(u32::MAX);
            if ea < eb {
                out.push((ea, &self.terms[i].1 * &fa));
                i += 1;
            } else if eb < ea {
                out.push((eb, &other.terms[j].1 * &fb));
                j += 1;
            } else {
                let c = &self.terms[i].1 * &fa + &other.terms[j].1 * &fb;
                if !c.is_zero() {
                    out.push((ea, c));
                }
                i += 1;
                j += 1;
            }
        }
        Ok(CycloNumber::normalized(self.m, out, den))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        if self.m != other.m {
            let (a, b) = Self::common(self, other)?;
            return a.checked_mul(&b);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.m));
        }
        if let Some(q) = self.as_rational() {
            return Ok(other.scale(&q));
        }
        if let Some(q) = other.as_rational() {
            return Ok(self.scale(&q));
        }
        let m = self.m;
        let mut acc: HashMap<u64, BigInt> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = (*ea as u64 + *eb as u64) % m;
                *acc.entry(e).or_default() += ca * cb;
            }
        }
        Ok(reduce_iter(m, acc.into_iter(), &self.den * &other.den))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero(self.m);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (*e, c * q.numer()))
            .collect();
        CycloNumber::normalized(self.m, terms, &self.den * q.denom())
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&rat_int(n))
    }

    /// Multiply by `zeta_M^e`.
    pub fn mul_root(&self, e: i64) -> Self {
        let m = self.m as i64;
        let e = e.rem_euclid(m) as u64;
        if e == 0 {
            return self.clone();
        }
        reduce_iter(
            self.m,
            self.terms
                .iter()
                .map(|(j, c)| ((*j as u64 + e) % self.m, c.clone())),
            self.den.clone(),
        )
    }

    /// Complex conjugation `zeta^j -> zeta^(M-j)`.
    pub fn conj(&self) -> Self {
        reduce_iter(
            self.m,
            self.terms
                .iter()
                .map(|(j, c)| ((self.m - *j as u64) % self.m, c.clone())),
            self.den.clone(),
        )
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// `z * conj(z)` as a rational number.
    pub fn norm_squared(&self) -> Result<Rational, ArithError> {
        let n = self * &self.conj();
        n.as_rational().ok_or(ArithError::NonRationalNorm)
    }

    /// Image under the automorphism `zeta_M -> zeta_M^k`, `gcd(k, M) = 1`.
    pub fn galois(&self, k: u64) -> Self {
        debug_assert_eq!(gcd_u64(k, self.m), 1);
        reduce_iter(
            self.m,
            self.terms
                .iter()
                .map(|(j, c)| ((*j as u64 * k) % self.m, c.clone())),
            self.den.clone(),
        )
    }

    /// Multiplicative inverse.  Elements with rational `|z|^2` (roots of
    /// unity, Gauss sums) use `conj(z)/|z|^2`; others the product of the
    /// nontrivial Galois conjugates over the field norm.
    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::NotInvertible);
        }
        if let Ok(n) = self.norm_squared() {
            return Ok(self.conj().scale(&n.recip()));
        }
        let mut acc = Self::one(self.m);
        for k in 2..self.m {
            if gcd_u64(k, self.m) == 1 {
                acc = &acc * &self.galois(k);
            }
        }
        let n = (&acc * self)
            .as_rational()
            .ok_or(ArithError::NotInvertible)?;
        Ok(acc.scale(&n.recip()))
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.m);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents require an invertible element.
    pub fn powi(&self, n: i64) -> Result<Self, ArithError> {
        if n >= 0 {
            Ok(self.pow(n as u64))
        } else {
            Ok(self.inv()?.pow(n.unsigned_abs()))
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        self.to_complex_with_error().0
    }

    /// Numeric embedding `zeta_M -> exp(2 pi i / M)` together with a
    /// conservative bound on the floating-point error.
    pub fn to_complex_with_error(&self) -> (Complex64, f64) {
        let den = big_to_f64(&self.den);
        let mut z = Complex64::new(0.0, 0.0);
        let mut mass = 0.0;
        for (e, c) in &self.terms {
            let w = big_to_f64(c) / den;
            let ang = 2.0 * std::f64::consts::PI * (*e as f64) / (self.m as f64);
            z += Complex64::new(ang.cos(), ang.sin()) * w;
            mass += w.abs();
        }
        let err = mass * 1e-13 * (1.0 + self.terms.len() as f64).sqrt() + f64::MIN_POSITIVE;
        (z, err)
    }

    /// Decide `self <= b` for a real element, exactly when `self` is
    /// rational and by a certified interval otherwise.  `None` if the
    /// interval straddles `b`.
    pub fn certified_le(&self, b: &Rational) -> Option<bool> {
        if let Some(q) = self.as_rational() {
            return Some(&q <= b);
        }
        let (z, err) = self.to_complex_with_error();
        let bf = rat_to_f64(b);
        let slack = err + bf.abs() * 1e-15;
        if z.re + slack <= bf {
            Some(true)
        } else if z.re - slack > bf {
            Some(false)
        } else {
            None
        }
    }

    /// `(d, e)` with `self = zeta_d^e`, `gcd(d, e) = 1`, if `self` is a root
    /// of unity.
    pub fn root_of_unity(&self) -> Option<(u64, u64)> {
        let l = lcm_u64(self.m, 2);
        if self.norm_squared().ok()? != Rational::one() {
            return None;
        }
        let z = self.lift_modulus(l).ok()?;
        (0..l).find(|&e| z == Self::root(l, e as i64)).map(|e| {
            let g = gcd_u64(e, l);
            (l / g, e / g)
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_add(&other.neg())
    }
}

pub(crate) fn big_to_f64(b: &BigInt) -> f64 {
    b.to_f64().unwrap_or_else(|| {
        if b.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn rat_to_f64(q: &Rational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale down huge numerators and denominators together
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
            let n: BigInt = q.numer() >> shift;
            let d: BigInt = q.denom() >> shift;
            big_to_f64(&n) / big_to_f64(&d)
        }
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            return self.terms == other.terms && self.den == other.den;
        }
        match Self::common(self, other) {
            Ok((a, b)) => a.terms == b.terms && a.den == b.den,
            Err(_) => false,
        }
    }
}

impl Eq for CycloNumber {}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo[{}](", self.m)?;
        fmt::Display::fmt(self, f)?;
        write!(f, ")")
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.den.is_one() {
            write!(f, "(")?;
        }
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "{}*z", c)?,
                _ => write!(f, "{}*z^{}", c, e)?,
            }
        }
        if !self.den.is_one() {
            write!(f, ")/{}", self.den)?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        self.checked_add(rhs).expect("cyclotomic addition")
    }
}

impl<'a> Sub<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        self.checked_sub(rhs).expect("cyclotomic subtraction")
    }
}

impl<'a> Mul<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        self.checked_mul(rhs).expect("cyclotomic multiplication")
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber {
            m: self.m,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
            den: self.den.clone(),
        }
    }
}

impl Add for CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: CycloNumber) -> CycloNumber {
        &self + &rhs
    }
}

impl Sub for CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: CycloNumber) -> CycloNumber {
        &self - &rhs
    }
}

impl Mul for CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: CycloNumber) -> CycloNumber {
        &self * &rhs
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -&self
    }
}

/// Legendre symbol (a/p) for an odd prime p.
pub fn legendre(a: i64, p: i64) -> i64 {
    let a = a.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    let mut r: i64 = 1;
    let mut b = a;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// Positive square root of an odd prime p, built from the quadratic Gauss
/// sum; lives in modulus `lcm(p, 4)`.
pub fn sqrt_prime(p: u64) -> Result<CycloNumber, ArithError> {
    if p < 3 || p % 2 == 0 {
        return Err(ArithError::Unsupported(format!("sqrt of {}", p)));
    }
    let m = 4 * p;
    let mut raw = RawSum::new(m);
    for x in 1..p {
        raw.add_root(4 * x, legendre(x as i64, p as i64));
    }
    let g = raw.to_cyclo();
    if p % 4 == 1 {
        Ok(g)
    } else {
        // g = i sqrt(p)
        Ok(g.mul_root(-(p as i64)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_small() {
        assert_eq!(*cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(CycloNumber::root(4, 2), CycloNumber::from_int(4, -1));
        let z3sq = CycloNumber::root(3, 2);
        let expect = CycloNumber::from_raw(3, &[(0, -1), (1, -1)]);
        assert_eq!(z3sq, expect);
        let full = CycloNumber::from_raw(5, &[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)]);
        assert!(full.is_zero());
    }

    #[test]
    fn mul_examples() {
        let a = CycloNumber::root(3, 1);
        let b = CycloNumber::root(3, 2);
        assert_eq!(&a * &b, CycloNumber::one(3));
        let g = &a - &b;
        assert_eq!(&g * &g, CycloNumber::from_int(3, -3));
        assert_eq!(g.norm_squared().unwrap(), rat_int(3));
    }

    #[test]
    fn lift_examples() {
        let z = CycloNumber::root(3, 1).lift_modulus(12).unwrap();
        assert_eq!(z, CycloNumber::root(12, 4));
        assert_eq!(
            CycloNumber::root(6, 1).lift_modulus(12).unwrap(),
            CycloNumber::root(12, 2)
        );
        assert!(CycloNumber::root(5, 1).lift_modulus(12).is_err());
    }

    #[test]
    fn sqrt_primes() {
        for p in [3u64, 5, 7, 11, 13] {
            let s = sqrt_prime(p).unwrap();
            assert_eq!(&s * &s, CycloNumber::from_int(4 * p, p as i64));
            let c = s.to_complex();
            assert!((c.re - (p as f64).sqrt()).abs() < 1e-10 && c.im.abs() < 1e-10);
        }
    }

    #[test]
    fn complex_embedding() {
        let z = CycloNumber::root(4, 1).to_complex();
        assert!((z.re).abs() < 1e-12 && (z.im - 1.0).abs() < 1e-12);
        let z = CycloNumber::root(3, 1).to_complex();
        assert!((z.re + 0.5).abs() < 1e-12 && (z.im - 0.866_025_403_784_438_6).abs() < 1e-12);
    }

    #[test]
    fn general_inverse() {
        for m in [5u64, 12, 30, 63] {
            let z = CycloNumber::from_raw(m, &[(0, 1), (1, 2), (7, -1), (m - 2, 3)]);
            assert!(z.norm_squared().is_err() || m == 5);
            assert_eq!(&z * &z.inv().unwrap(), CycloNumber::one(m));
        }
        assert!(CycloNumber::zero(30).inv().is_err());
    }
}
