#![allow(dead_code)]

use std::collections::BTreeSet;

/// Every `n`-input table realizable as `Σ wⱼxⱼ >= T` with `|wⱼ| <= bound`,
/// found by enumerating weights directly. Independent of the LP solver.
pub fn bounded_threshold_tables(n: usize, bound: i64) -> BTreeSet<u64> {
    let rows = 1usize << n;
    let mut found = BTreeSet::new();
    let mut w = vec![-bound; n];
    loop {
        let sums: Vec<i64> = (0..rows)
            .map(|r| (0..n).filter(|j| r >> j & 1 == 1).map(|j| w[j]).sum())
            .collect();
        let mut cuts: Vec<i64> = sums.clone();
        cuts.push(i64::MAX);
        cuts.sort_unstable();
        cuts.dedup();
        // thresholds at each distinct sum, plus one above everything
        for &t in &cuts {
            let table = (0..rows).fold(0u64, |acc, r| acc | ((sums[r] >= t) as u64) << r);
            found.insert(table);
        }
        // odometer over [-bound, bound]^n
        let mut k = 0;
        loop {
            if k == n {
                return found;
            }
            if w[k] < bound {
                w[k] += 1;
                break;
            }
            w[k] = -bound;
            k += 1;
        }
    }
}

/// Brute-force integer addition of two `n`-bit words plus carry-in; returns
/// `sum` bits then `cout`, from an `a..., b..., cin` bit vector.
pub fn add_bits(n: usize, bits: &[bool]) -> Vec<bool> {
    let mut a = 0u128;
    let mut b = 0u128;
    for i in 0..n {
        a |= (bits[i] as u128) << i;
        b |= (bits[n + i] as u128) << i;
    }
    let total = a + b + bits[2 * n] as u128;
    (0..=n).map(|i| total >> i & 1 == 1).collect()
}
