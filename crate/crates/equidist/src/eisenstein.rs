//! Numeric level-1 Eisenstein series E(z, s) through its Fourier expansion,
//! with the special functions it needs: complex Γ, ζ, completed ζ and the
//! K-Bessel function of complex order.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modular_curve::divisor_lambda;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// log Γ(z), principal branch away from the poles.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z)Γ(1−z) = π / sin(πz)
        let s = (z * PI).sin();
        return Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma(Complex64::new(1.0, 0.0) - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

// B_{2k} for k = 1..15.
const BERNOULLI: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// Riemann ζ(s) by Euler–Maclaurin summation, `s ≠ 1`.  Accurate to about
/// 1e−13 relative for |s| ≤ 70.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    if (s - 1.0).norm() < 1e-12 {
        return Err(Error::InvalidArgument("zeta pole at s = 1".into()));
    }
    let n = 48.0f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..48 {
        sum += (-s * (k as f64).ln()).exp();
    }
    let n_s = (-s * n.ln()).exp();
    sum += n_s * n / (s - 1.0) + 0.5 * n_s;
    // Σ B_{2k}/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut npow = n_s / n;
    for (k, &b) in BERNOULLI.iter().enumerate() {
        let k = k + 1;
        sum += b / fact * rising * npow;
        let m = 2 * k as u32;
        rising *= (s + (m - 1) as f64) * (s + m as f64);
        fact *= ((m + 1) * (m + 2)) as f64;
        npow /= n * n;
    }
    Ok(sum)
}

/// Completed zeta `ξ(s) = π^{−s/2} Γ(s/2) ζ(s)`, using `ξ(s) = ξ(1−s)` left
/// of the critical line.
pub fn xi(s: Complex64) -> Result<Complex64> {
    if s.re < 0.5 {
        return xi(Complex64::new(1.0, 0.0) - s);
    }
    if s.norm() < 1e-12 {
        return Err(Error::InvalidArgument("xi pole at s = 0".into()));
    }
    Ok((-s / 2.0 * PI.ln() + ln_gamma(s / 2.0)).exp() * zeta(s)?)
}

/// `K_ν(x)` for complex `ν` and `x > 0`, by the trapezoid rule on
/// `½∫_ℝ exp(−x cosh u + νu) du` along `Im u = α`.  Moving the contour toward
/// `±π/2` turns the `e^{−π|Im ν|/2}` cancellation into an explicit factor.
pub fn bessel_k(nu: Complex64, x: f64) -> Result<Complex64> {
    if x <= 0.0 || !x.is_finite() {
        return Err(Error::InvalidArgument(format!("K-Bessel argument {}", x)));
    }
    let alpha = if nu.im.abs() > 0.5 {
        nu.im.signum() * (PI / 2.0 - 0.25)
    } else {
        0.0
    };
    let (ca, sa) = (alpha.cos(), alpha.sin());
    let ia = Complex64::new(0.0, alpha);
    let h = 0.006;
    let term = |u: f64| {
        let ch = Complex64::new(u.cosh() * ca, u.sinh() * sa);
        (-x * ch + nu * (u + ia)).exp()
    };
    let mut sum = term(0.0);
    let mut k = 1;
    loop {
        let u = k as f64 * h;
        let a = term(u);
        let b = term(-u);
        sum += a + b;
        // Tail of the decaying envelope exp(−x cos α cosh u + |Re ν| u).
        if x * ca * u.cosh() - nu.re.abs() * u > 60.0 + (x * ca).max(1.0).ln() {
            break;
        }
        k += 1;
        if k > 2_000_000 {
            return Err(Error::TruncationInsufficient(
                "K-Bessel quadrature did not converge".into(),
            ));
        }
    }
    Ok(0.5 * h * sum)
}

/// `κ_w(y) = 2|y|^{1/2} K_w(2π|y|)`.
pub fn kappa(w: Complex64, y: f64) -> Result<Complex64> {
    Ok(2.0 * y.abs().sqrt() * bessel_k(w, 2.0 * PI * y.abs())?)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct EisensteinValue {
    pub re: f64,
    pub im: f64,
    pub m_trunc: usize,
    /// Certified bound on the discarded Fourier terms.
    pub tail_bound: f64,
}

impl EisensteinValue {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

pub const EIS_TAIL: f64 = 1e-10;

/// Bound on `Σ_{|n|>M}` of the nonconstant terms divided by `|ξ(2s)|`
/// omitted, using `|λ(n)|/√n ≤ τ(n) n^{|σ−1/2|−1/2} ≤ 2 n^{|σ−1/2|}` and
/// `|κ_w(ny)| ≤ e^{−2πny}` for `|Re w| ≤ 1/2`.
fn raw_tail(m: usize, y: f64, sigma_off: f64) -> f64 {
    let mut tail = 0.0;
    let mut n = m + 1;
    loop {
        let nf = n as f64;
        let t = 4.0 * nf.powf(sigma_off) * (-2.0 * PI * nf * y).exp();
        tail += t;
        if t < 1e-30 * tail.max(1e-300) || (n > m + 10 && t < 1e-40) {
            break;
        }
        n += 1;
    }
    tail
}

/// `E(z, s) = y^s + M(s) y^{1−s} + ξ(2s)^{−1} Σ_{n≠0} λ_{s−1/2}(|n|) |n|^{−1/2} κ_{s−1/2}(ny) e(nx)`
/// with `M(s) = ξ(2s−1)/ξ(2s)`.  `m_trunc = None` picks the least `M` whose
/// certified tail is below 1e−10.
pub fn eisenstein_eval(z: Complex64, s: Complex64, m_trunc: Option<usize>) -> Result<EisensteinValue> {
    let (x, y) = (z.re, z.im);
    if y < 0.3 {
        return Err(Error::InvalidArgument(format!("need Im z >= 0.3, got {}", y)));
    }
    if s.im.abs() > 30.0 || !(0.0..=1.0).contains(&s.re) {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= Re s <= 1 and |Im s| <= 30, got {}",
            s
        )));
    }
    if (2.0 * s - 1.0).norm() < 1e-8 {
        return Err(Error::InvalidArgument("E(z, s) degenerates at s = 1/2".into()));
    }
    let xi2s = xi(2.0 * s)?;
    let scale = 1.0 / xi2s.norm();
    let off = (s.re - 0.5).abs();
    let m = match m_trunc {
        Some(m) => {
            let t = raw_tail(m, y, off) * scale;
            if t > EIS_TAIL {
                return Err(Error::TruncationInsufficient(format!(
                    "M = {} leaves tail bound {:e}",
                    m, t
                )));
            }
            m
        }
        None => {
            let mut m = 1;
            while raw_tail(m, y, off) * scale > EIS_TAIL {
                m += 1;
            }
            m
        }
    };
    let w = s - 0.5;
    let one = Complex64::new(1.0, 0.0);
    let ms = xi(2.0 * s - 1.0)? / xi2s;
    let mut val = (s * y.ln()).exp() + ms * ((one - s) * y.ln()).exp();
    let mut series = Complex64::new(0.0, 0.0);
    for n in 1..=m {
        let nf = n as f64;
        let coef = divisor_lambda(n as u64, w) / nf.sqrt() * kappa(w, nf * y)?;
        // e(nx) + e(−nx) = 2 cos(2πnx)
        series += coef * (2.0 * (2.0 * PI * nf * x).cos());
    }
    val += series / xi2s;
    Ok(EisensteinValue {
        re: val.re,
        im: val.im,
        m_trunc: m,
        tail_bound: raw_tail(m, y, off) * scale,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceSample {
    pub z: [f64; 2],
    pub s: [f64; 2],
    pub diff: f64,
    pub m_trunc: usize,
}

/// `|E(−1/z, s) − E(z, s)|` at one sample.
pub fn invariance_defect(z: Complex64, s: Complex64) -> Result<InvarianceSample> {
    let a = eisenstein_eval(z, s, None)?;
    let zr = -z.inv();
    let b = eisenstein_eval(zr, s, None)?;
    Ok(InvarianceSample {
        z: [z.re, z.im],
        s: [s.re, s.im],
        diff: (a.value() - b.value()).norm(),
        m_trunc: a.m_trunc.max(b.m_trunc),
    })
}
