use equidist::modular_curve::*;
use num_complex::Complex64;
use proptest::prelude::*;

mod common;

use common::oracle;

#[test]
fn cusps_match_orbit_oracle() {
    for n in 1..=60u64 {
        let (points, mut sizes) = oracle(n);
        let cs = cusps(n);
        assert_eq!(cs.len(), sizes.len(), "N={}", n);
        assert_eq!(points, gamma0_index(n), "N={}", n);
        let mut widths: Vec<u64> = cs.iter().map(|c| c.width(n).unwrap()).collect();
        widths.sort();
        sizes.sort();
        assert_eq!(widths, sizes, "N={}", n);
        let chk = check_cusps(n, &[n, 2 * n, 4 * n]).unwrap();
        assert!(chk.pass, "{:?}", chk);
    }
}

#[test]
fn width_examples() {
    let c = cusps(4);
    assert_eq!(c[0].width(4).unwrap(), 4);
    assert_eq!(c[1].width(4).unwrap(), 1);
    assert_eq!(c[1].width(8).unwrap(), 2);
    assert!(matches!(
        c[0].width(6),
        Err(equidist::Error::LevelMismatch(_))
    ));
}

#[test]
fn p1_orbit_is_everything() {
    // [0:1] generates ℙ¹(ℤ/N) under S and T.
    for n in [4u64, 6, 9, 12, 25] {
        let gens: [IMat; 2] = [[[0, -1], [1, 0]], [[1, 1], [0, 1]]];
        let start = P1Point::new(0, 1, n);
        let mut seen = std::collections::BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(p) = stack.pop() {
            for g in &gens {
                let q = p1_action(&p, g, n).unwrap();
                if seen.insert(q) {
                    stack.push(q);
                }
            }
        }
        assert_eq!(seen.len(), p1_points(n).len());
    }
}

#[test]
fn lambda_identities() {
    let exact = [RootGrid { m: 8, j: 1 }, RootGrid { m: 12, j: 5 }];
    let r = check_lambda(2000, &exact, &[0.0, 1.0, 2.5, 14.134725], 1e-9).unwrap();
    assert!(r.pass, "{:?}", r.failures);
    let one = divisor_lambda(12, Complex64::new(0.0, 0.0));
    assert!((one.re - 6.0).abs() < 1e-12);
}

fn complete(c: i64, d: i64) -> Option<IMat> {
    use num_integer::Integer;
    let e = d.extended_gcd(&c);
    if e.gcd.abs() != 1 {
        return None;
    }
    // x·d + y·c = ±1, so (x, -y; c, d) has determinant ±1.
    let s = e.gcd.signum();
    let m = [[e.x * s, -e.y * s], [c, d]];
    (imat_det(&m) == 1).then_some(m)
}

fn mat() -> impl Strategy<Value = IMat> {
    (-20i64..20, -20i64..20).prop_filter_map("coprime", |(c, d)| complete(c, d))
}

proptest! {
    #[test]
    fn action_associative(n in 2u64..40, g in mat(), h in mat(), x in 0i64..40, y in 0i64..40) {
        let p = P1Point::new(x, y, n);
        prop_assume!(p.is_valid());
        let lhs = p1_action(&p1_action(&p, &g, n).unwrap(), &h, n).unwrap();
        let rhs = p1_action(&p, &imat_mul(&g, &h), n).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gamma0_fixes_origin(n in 2u64..40, k in -5i64..5, d in -30i64..30) {
        let m = complete(k * n as i64, d);
        prop_assume!(m.is_some());
        let p = p1_action(&P1Point::new(0, 1, n), &m.unwrap(), n).unwrap();
        prop_assert_eq!(p, P1Point::new(0, 1, n));
    }

    #[test]
    fn gamma_nc_partition(n in 1u64..60, g in mat()) {
        let hits = divisors(n).iter().filter(|&&c| gamma_nc_member(&g, n, c)).count();
        prop_assert_eq!(hits, 1);
    }
}
