#![allow(dead_code)]

use daestruct::sigma::SignatureMatrix;
use proptest::prelude::*;

/// Structurally well-posed matrices: a random permutation is forced finite,
/// every other position is finite with probability about 0.4.
pub fn well_posed(max_n: usize) -> impl Strategy<Value = SignatureMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        let cells = proptest::collection::vec(
            prop_oneof![3 => Just(None), 2 => (0i64..=4).prop_map(Some)],
            n * n,
        );
        let forced = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
        let diag = proptest::collection::vec(0i64..=4, n);
        (Just(n), cells, forced, diag).prop_map(|(n, cells, forced, diag)| {
            let mut entries = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let v = if forced[i] == j { Some(diag[i]) } else { cells[i * n + j] };
                    if let Some(s) = v {
                        entries.push((i, j, s));
                    }
                }
            }
            SignatureMatrix::new(n, entries).unwrap()
        })
    })
}

pub fn pendulum() -> SignatureMatrix {
    SignatureMatrix::from_dense(&[
        vec![Some(2), None, Some(0)],
        vec![None, Some(2), Some(0)],
        vec![Some(0), Some(0), None],
    ])
    .unwrap()
}

/// Longest closed walk weight through each vertex under max-plus
/// Floyd-Warshall; `None` where no cycle passes.
pub fn max_cycle_through(p: usize, edges: &[(usize, usize, i64)]) -> Vec<Option<i64>> {
    let mut best = vec![vec![None::<i64>; p]; p];
    for &(a, b, w) in edges {
        best[a][b] = Some(best[a][b].map_or(w, |x: i64| x.max(w)));
    }
    for m in 0..p {
        let via_m = best[m].clone();
        for row in best.iter_mut() {
            let Some(am) = row[m] else { continue };
            for (cell, mb) in row.iter_mut().zip(&via_m) {
                if let Some(mb) = mb {
                    let via = am + mb;
                    if cell.is_none_or(|x| via > x) {
                        *cell = Some(via);
                    }
                }
            }
        }
    }
    (0..p).map(|k| best[k][k]).collect()
}
