//! Input generators for the benchmarks.

use daestruct::sigma::SignatureMatrix;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

/// `m` pendula in a chain; pendulum `k + 1` feels the multiplier of pendulum `k`.
/// Variables per pendulum are `x, y, lam`; the system has size `3m`.
pub fn pendulum_chain(m: usize) -> SignatureMatrix {
    let mut entries = Vec::new();
    for k in 0..m {
        let (x, y, lam) = (3 * k, 3 * k + 1, 3 * k + 2);
        entries.extend([(x, x, 2), (x, lam, 0), (y, y, 2), (y, lam, 0), (lam, x, 0), (lam, y, 0)]);
        if k > 0 {
            entries.push((x, lam - 3, 0));
        }
    }
    SignatureMatrix::new(3 * m, entries).expect("distinct in-range entries")
}

/// A structurally well-posed matrix with about `per_row` finite entries per row,
/// values in `0..=max_sigma`.
pub fn random_well_posed(n: usize, per_row: usize, max_sigma: i64, seed: u64) -> SignatureMatrix {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut entries = std::collections::BTreeMap::new();
    for (i, &j) in perm.iter().enumerate() {
        entries.insert((i, j), rng.gen_range(0..=max_sigma));
        for _ in 1..per_row {
            entries.entry((i, rng.gen_range(0..n))).or_insert_with(|| rng.gen_range(0..=max_sigma));
        }
    }
    SignatureMatrix::new(n, entries.into_iter().map(|((i, j), s)| (i, j, s))).expect("in range")
}
