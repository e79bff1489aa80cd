//! Test oracles shared between integration targets.

#![allow(dead_code)]

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn find(parent: &mut Vec<usize>, x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// Orbits of ⟨units, T⟩ on primitive pairs mod N, by union-find on raw
/// pairs.  Returns (number of ℙ¹ points, orbit sizes in ℙ¹ points).
pub fn oracle(n: u64) -> (u64, Vec<u64>) {
    let idx = |x: u64, y: u64| (x * n + y) as usize;
    let mut parent: Vec<usize> = (0..(n * n) as usize).collect();
    let prim = |x: u64, y: u64| n == 1 || gcd(gcd(x, y), n) == 1;
    for x in 0..n {
        for y in 0..n {
            if !prim(x, y) {
                continue;
            }
            let a = find(&mut parent, idx(x, y));
            // [x:y]·T = [x : x + y]
            let b = find(&mut parent, idx(x, (x + y) % n));
            parent[a] = b;
            for u in 2..n {
                if gcd(u, n) == 1 {
                    let a = find(&mut parent, idx(x, y));
                    let b = find(&mut parent, idx(u * x % n, u * y % n));
                    parent[a] = b;
                }
            }
        }
    }
    let units = (1..=n).filter(|&u| gcd(u, n) == 1).count() as u64;
    let mut counts = std::collections::BTreeMap::new();
    let mut total = 0;
    for x in 0..n {
        for y in 0..n {
            if prim(x, y) {
                total += 1;
                *counts.entry(find(&mut parent, idx(x, y))).or_insert(0u64) += 1;
            }
        }
    }
    let mut sizes: Vec<u64> = counts.values().map(|c| c / units).collect();
    sizes.sort();
    (total / units, sizes)
}
