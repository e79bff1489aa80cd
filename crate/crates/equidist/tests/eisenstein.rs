use equidist::eisenstein::*;
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn bessel_reference_values() {
    // Reference values from an independent arbitrary-precision library.
    let refs = [
        (c(0.0, 2.0), 0.7, c(0.059_690_994_164_931_288, 0.0)),
        (c(0.0, 5.5), 3.0, c(6.435_442_582_975_084_3e-5, 0.0)),
        (c(0.25, 1.0), 1.2, c(0.232_690_713_151_523_62, 0.038_546_260_050_048_874)),
        (c(0.0, 9.0), 12.0, c(7.403_400_497_818_197_1e-8, 0.0)),
        (c(0.0, 20.0), 4.0, c(1.216_632_455_216_149_4e-14, 0.0)),
        (c(0.0, 30.0), 6.0, c(9.942_054_968_729_059_7e-22, 0.0)),
    ];
    for (nu, x, want) in refs {
        let got = bessel_k(nu, x).unwrap();
        assert!(
            (got - want).norm() <= 1e-10 * want.norm(),
            "K_{}({}) = {} vs {}",
            nu,
            x,
            got,
            want
        );
    }
}

#[test]
fn kappa_bounded_on_imaginary_orders() {
    for ri in 0..=40 {
        let r = ri as f64 * 0.25;
        for yi in 0..=60 {
            let y = 0.1 * (200f64).powf(yi as f64 / 60.0);
            let k = kappa(c(0.0, r), y).unwrap();
            assert!(k.norm() <= 1.0 + 1e-12, "r={} y={} |kappa|={}", r, y, k.norm());
        }
    }
}

fn samples() -> Vec<(Complex64, Complex64)> {
    let mut out = Vec::new();
    for k in 0..20 {
        let t = k as f64;
        let x = -0.5 + ((t * 0.37).fract());
        // y in [0.55, 1.2] keeps both z and -1/z above height 0.3.
        let y = 0.55 + 0.65 * ((t * 0.61).fract());
        let s = c(0.5 + 0.3 * ((t * 0.29).fract() - 0.5), -10.0 + t);
        out.push((c(x, y), s));
    }
    out
}

#[test]
fn modular_invariance() {
    for (z, s) in samples() {
        if (-z.inv()).im < 0.3 {
            continue;
        }
        let d = invariance_defect(z, s).unwrap();
        assert!(d.diff < 1e-6, "{:?}", d);
    }
    let d = invariance_defect(c(0.3, 1.1), c(0.5, 3.0)).unwrap();
    assert!(d.diff < 1e-6);
}

#[test]
fn periodic_and_truncation() {
    let z = c(0.21, 0.7);
    let s = c(0.5, 4.0);
    let a = eisenstein_eval(z, s, None).unwrap();
    let b = eisenstein_eval(z + 1.0, s, None).unwrap();
    assert!((a.value() - b.value()).norm() < 1e-12);
    assert!(a.tail_bound < 1e-10);
    // One more term changes the value by less than the certified tail.
    let c2 = eisenstein_eval(z, s, Some(a.m_trunc + 5)).unwrap();
    assert!((a.value() - c2.value()).norm() <= a.tail_bound + 1e-13);
    assert!(matches!(
        eisenstein_eval(z, s, Some(1)),
        Err(equidist::Error::TruncationInsufficient(_))
    ));
    assert!(eisenstein_eval(c(0.0, 0.2), s, None).is_err());
}

#[test]
fn completed_zeta_symmetric() {
    for t in [1.0, 6.0, 19.5] {
        let s = c(0.3, t);
        let a = xi(s).unwrap();
        let b = xi(c(1.0, 0.0) - s).unwrap();
        assert!((a - b).norm() < 1e-15);
        // Check the continuation through the functional equation against
        // the direct Euler–Maclaurin value of zeta left of the line.
        let direct = (-s / 2.0 * std::f64::consts::PI.ln() + ln_gamma(s / 2.0)).exp()
            * zeta(s).unwrap();
        assert!((direct - a).norm() < 1e-10 * a.norm().max(1e-12), "t={}", t);
    }
}
