use equidist::newform::*;
use equidist::Error;

const LABELS: [&str; 9] = [
    "1.12.a.a", "11.2.a.a", "14.2.a.a", "15.2.a.a", "20.2.a.a", "24.2.a.a", "27.2.a.a",
    "32.2.a.a", "36.2.a.a",
];

fn client() -> (tempfile::TempDir, NewformClient) {
    let dir = tempfile::tempdir().unwrap();
    let c = NewformClient::offline(dir.path());
    (dir, c)
}

/// Weierstrass coefficients [a1, a2, a3, a4, a6] of a curve in the isogeny
/// class attached to each weight-2 label.
fn curve(label: &str) -> [i64; 5] {
    match label {
        "11.2.a.a" => [0, -1, 1, -10, -20],
        "14.2.a.a" => [1, 0, 1, 4, -6],
        "15.2.a.a" => [1, 1, 1, -10, -10],
        "20.2.a.a" => [0, 1, 0, 4, 4],
        "24.2.a.a" => [0, -1, 0, -4, 4],
        "27.2.a.a" => [0, 0, 1, 0, -7],
        "32.2.a.a" => [0, 0, 0, 4, 0],
        "36.2.a.a" => [0, 0, 0, 0, 1],
        _ => unreachable!(),
    }
}

/// `p + 1 − #E(F_p)` by counting affine points.
fn trace_of_frobenius(e: [i64; 5], p: i64) -> i64 {
    let [a1, a2, a3, a4, a6] = e;
    let mut count = 1;
    for x in 0..p {
        for y in 0..p {
            let lhs = y * y + a1 * x * y + a3 * y;
            let rhs = x * x * x + a2 * x * x + a4 * x + a6;
            if (lhs - rhs).rem_euclid(p) == 0 {
                count += 1;
            }
        }
    }
    p + 1 - count
}

#[test]
fn fixture_values_and_errors() {
    let (_d, c) = client();
    let (r, src) = c.fetch("11.2.a.a").unwrap();
    assert_eq!(src, Source::Fixture);
    assert_eq!((r.weight, r.level, r.a(2)), (2, 11, -2));
    assert!((r.lambdas()[2].abs() - 2f64.sqrt()).abs() < 1e-12);
    assert!(deligne_check(&r).pass);
    assert!(matches!(c.fetch("999.2.a.zz"), Err(Error::NotFound(_))));
    assert!(matches!(c.fetch("../etc"), Err(Error::InvalidArgument(_))));
}

#[test]
fn cache_is_byte_identical_and_deterministic() {
    let (_d, c) = client();
    for label in LABELS {
        let (a, s1) = c.fetch(label).unwrap();
        let (b, s2) = c.fetch(label).unwrap();
        assert_eq!((s1, s2), (Source::Fixture, Source::Cache));
        assert_eq!(a, b);
        let cached = std::fs::read(c.cache_path(label).unwrap()).unwrap();
        let fixture = std::fs::read(default_fixture_dir().join(format!("{}.json", label))).unwrap();
        assert_eq!(cached, fixture);
    }
}

#[test]
fn weight_two_traces_match_point_counts() {
    let (_d, c) = client();
    for label in &LABELS[1..] {
        let (r, _) = c.fetch(label).unwrap();
        for p in equidist::newform::primes_upto(150) {
            if r.level % p as u64 == 0 {
                continue;
            }
            assert_eq!(
                r.a(p),
                trace_of_frobenius(curve(label), p as i64),
                "{} at p = {}",
                label,
                p
            );
        }
    }
}

#[test]
fn delta_ramanujan_congruence() {
    let (_d, c) = client();
    let (r, _) = c.fetch("1.12.a.a").unwrap();
    for n in 1..=r.n_max() {
        let sigma: i128 = (1..=n)
            .filter(|d| n % d == 0)
            .map(|d| (d as i128).pow(11).rem_euclid(691))
            .sum();
        assert_eq!((r.a(n) as i128 - sigma).rem_euclid(691), 0, "n = {}", n);
    }
}

#[test]
fn suite_on_fixtures() {
    let (_d, c) = client();
    for label in LABELS {
        let (r, _) = c.fetch(label).unwrap();
        assert!(deligne_check(&r).pass, "{}", label);
        let h = hecke_check(&r);
        assert!(h.pass, "{:?}", h);
        for l in 0..=10 {
            let s = shifted_convolution(&r, l, 1000, 0.1).unwrap();
            // CM forms vanish off a residue class, so some shifts give 0.
            assert!(s.sum.is_finite() && s.ratio.is_finite() && s.sum >= 0.0);
        }
        let g = growth_check(&r, &default_growth_samples()).unwrap();
        assert!(g.pass, "{:?}", g);
        assert!(g.max_ratio < 10.0);
    }
}

#[test]
fn negative_controls() {
    let (_d, c) = client();
    let (mut r, _) = c.fetch("11.2.a.a").unwrap();
    assert!(matches!(
        shifted_convolution(&r, 200, 1000, 0.1),
        Err(Error::RangeExceeded(_))
    ));
    let good = r.clone();
    r.an[2] = 5; // a_3 = 5 > 2 sqrt 3
    assert!(!deligne_check(&r).pass);
    assert!(!hecke_check(&r).pass);
    let mut g = good.clone();
    g.constant_term = 1;
    let rep = growth_check(&g, &default_growth_samples()).unwrap();
    assert!(!rep.pass);
    // x-translation invariance of the q-expansion.
    for &(x, y) in &[(0.1, 0.6), (0.37, 1.5)] {
        let a = eval_q_expansion(&good, x, y, 200);
        let b = eval_q_expansion(&good, x + 1.0, y, 200);
        assert!((a - b).norm() < 1e-10);
    }
    // τ(n)-bounded synthetic input: λ ≡ 1 gives sum = x exactly.
    let flat = NewformRecord {
        label: "synthetic".into(),
        weight: 1,
        level: 1,
        is_cm: false,
        an: vec![1; 1100],
        constant_term: 0,
    };
    let s = shifted_convolution(&flat, 3, 1000, 0.1).unwrap();
    assert!((s.sum - 1000.0).abs() < 1e-9);
}
