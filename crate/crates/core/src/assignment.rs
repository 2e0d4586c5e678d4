//! Highest-value transversals and their dual offset vectors.
//!
//! The assignment problem is solved exactly on the finite entries only:
//! minus-infinity positions are absent edges of the bipartite graph, never
//! large negative weights.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{AnalysisError, SigmaError};
use crate::matching::maximum_matching;
use crate::sigma::{OffsetPair, SignatureMatrix, SparsityPattern, Transversal};

const NIL: usize = usize::MAX;

/// An optimal transversal together with its value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hvt {
    pub transversal: Transversal,
    pub value: i64,
}

/// Finds a highest-value transversal by successive shortest augmenting paths
/// (Dijkstra with row and column potentials) over the finite entries.
pub fn solve_hvt(sigma: &SignatureMatrix) -> Result<Hvt, AnalysisError> {
    let n = sigma.n();
    // Minimise cost = -sigma. Reduced cost cost - u[i] - v[j] stays >= 0 and is
    // 0 on matched edges.
    let mut u = vec![0i64; n];
    let mut v = vec![0i64; n];
    for (i, ui) in u.iter_mut().enumerate() {
        *ui = sigma
            .row(i)
            .iter()
            .map(|&(_, s)| -s)
            .min()
            .ok_or(AnalysisError::StructurallyIllPosed)?;
    }

    let mut col_of_row = vec![NIL; n];
    let mut row_of_col = vec![NIL; n];
    let mut dist = vec![i64::MAX; n];
    let mut pred = vec![NIL; n];
    let mut done = vec![false; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut settled: Vec<usize> = Vec::new();

    for root in 0..n {
        for &j in &touched {
            dist[j] = i64::MAX;
            pred[j] = NIL;
            done[j] = false;
        }
        touched.clear();
        settled.clear();

        let mut heap = BinaryHeap::new();
        for &(j, s) in sigma.row(root) {
            let rc = -s - u[root] - v[j];
            if rc < dist[j] {
                if dist[j] == i64::MAX {
                    touched.push(j);
                }
                dist[j] = rc;
                pred[j] = root;
                heap.push(Reverse((rc, j)));
            }
        }

        let mut end = NIL;
        while let Some(Reverse((d, j))) = heap.pop() {
            if done[j] || d > dist[j] {
                continue;
            }
            done[j] = true;
            settled.push(j);
            let i = row_of_col[j];
            if i == NIL {
                end = j;
                break;
            }
            for &(k, s) in sigma.row(i) {
                if done[k] {
                    continue;
                }
                let nd = d + (-s - u[i] - v[k]);
                if nd < dist[k] {
                    if dist[k] == i64::MAX {
                        touched.push(k);
                    }
                    dist[k] = nd;
                    pred[k] = i;
                    heap.push(Reverse((nd, k)));
                }
            }
        }
        if end == NIL {
            return Err(AnalysisError::StructurallyIllPosed);
        }

        let reach = dist[end];
        u[root] += reach;
        for &j in &settled {
            let dj = dist[j];
            v[j] += dj - reach;
            let i = row_of_col[j];
            if i != NIL {
                u[i] += reach - dj;
            }
        }

        let mut j = end;
        loop {
            let i = pred[j];
            let next = col_of_row[i];
            col_of_row[i] = j;
            row_of_col[j] = i;
            if i == root {
                break;
            }
            j = next;
        }
    }

    let transversal = Transversal::from_col_of_row(col_of_row).map_err(AnalysisError::from)?;
    let value = crate::sigma::transversal_value(sigma, &transversal)?;
    Ok(Hvt { transversal, value })
}

/// The elementwise-smallest valid offsets.
///
/// Fixpoint on a fixed HVT: `d_j = max_i (sigma_ij + c_i)`, then
/// `c_i = d_{T(i)} - sigma_{i,T(i)}`, starting from `c = 0`.
pub fn canonical_offsets(sigma: &SignatureMatrix) -> Result<OffsetPair, AnalysisError> {
    let hvt = solve_hvt(sigma)?;
    canonical_offsets_with(sigma, &hvt.transversal)
}

/// As [`canonical_offsets`], reusing a known HVT.
pub fn canonical_offsets_with(
    sigma: &SignatureMatrix,
    hvt: &Transversal,
) -> Result<OffsetPair, AnalysisError> {
    let n = sigma.n();
    let on_t: Vec<i64> = hvt
        .positions()
        .map(|(i, j)| sigma.get(i, j).ok_or(SigmaError::InfinitePosition { i, j }))
        .collect::<Result<_, _>>()?;
    let max_sigma = sigma.max_entry().unwrap_or(0).max(0) as usize;
    let cap = n * (max_sigma + 1) + 1;

    let mut c = vec![0i64; n];
    for _ in 0..cap {
        let d = column_maxima(sigma, &c);
        let next: Vec<i64> = (0..n).map(|i| d[hvt.col_of(i)] - on_t[i]).collect();
        if next == c {
            return Ok(OffsetPair { c, d });
        }
        c = next;
    }
    Err(AnalysisError::InternalNonConvergence(cap))
}

fn column_maxima(sigma: &SignatureMatrix, c: &[i64]) -> Vec<i64> {
    let mut d = vec![i64::MIN; sigma.n()];
    for (i, j, s) in sigma.entries() {
        d[j] = d[j].max(s + c[i]);
    }
    d
}

/// How an offset pair relates to a signature matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffsetClassification {
    pub is_general: bool,
    pub is_valid: bool,
    pub is_normalised: bool,
    /// A transversal on which `d_j - c_i = sigma_ij` holds; any such one is an HVT.
    pub witness_hvt: Option<Transversal>,
}

impl OffsetClassification {
    /// Space-separated list of the properties that hold, e.g. `"general valid"`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if self.is_general {
            parts.push("general");
        }
        if self.is_valid {
            parts.push("valid");
        }
        if self.is_normalised {
            parts.push("normalised");
        }
        parts.join(" ")
    }
}

/// Positions where `d_j - c_i = sigma_ij`; no validity check.
pub fn equality_pattern(sigma: &SignatureMatrix, off: &OffsetPair) -> SparsityPattern {
    SparsityPattern::new(
        sigma.n(),
        sigma
            .entries()
            .filter(|&(i, j, s)| off.d[j] - off.c[i] == s)
            .map(|(i, j, _)| (i, j)),
    )
    .expect("entries are in range")
}

pub fn check_offsets(
    sigma: &SignatureMatrix,
    off: &OffsetPair,
) -> Result<OffsetClassification, AnalysisError> {
    let n = sigma.n();
    for len in [off.c.len(), off.d.len()] {
        if len != n {
            return Err(AnalysisError::SizeMismatch { expected: n, found: len });
        }
    }
    let dominates = sigma.entries().all(|(i, j, s)| off.d[j] - off.c[i] >= s);
    let witness_hvt = if dominates {
        maximum_matching(&equality_pattern(sigma, off)).into_transversal()
    } else {
        None
    };
    let is_general = witness_hvt.is_some();
    let is_valid = is_general && off.c.iter().all(|&x| x >= 0);
    let is_normalised = is_valid && off.c.iter().min() == Some(&0);
    Ok(OffsetClassification {
        is_general,
        is_valid,
        is_normalised,
        witness_hvt,
    })
}

/// The system Jacobian pattern for valid offsets.
pub fn jacobian_pattern(
    sigma: &SignatureMatrix,
    off: &OffsetPair,
) -> Result<SparsityPattern, AnalysisError> {
    if !check_offsets(sigma, off)?.is_valid {
        return Err(AnalysisError::InvalidOffsets);
    }
    Ok(equality_pattern(sigma, off))
}

/// `d_j = c_i + sigma_ij` along the transversal.
pub fn d_from_c(
    sigma: &SignatureMatrix,
    hvt: &Transversal,
    c: &[i64],
) -> Result<Vec<i64>, AnalysisError> {
    if c.len() != sigma.n() || hvt.n() != sigma.n() {
        return Err(AnalysisError::SizeMismatch { expected: sigma.n(), found: c.len() });
    }
    let mut d = vec![0; sigma.n()];
    for (i, j) in hvt.positions() {
        d[j] = c[i] + sigma.get(i, j).ok_or(SigmaError::InfinitePosition { i, j })?;
    }
    Ok(d)
}

/// Shifts the pair so that `min c = 0`.
pub fn normalise(off: &OffsetPair) -> OffsetPair {
    match off.c.iter().min() {
        Some(&m) => off.shifted(-m),
        None => off.clone(),
    }
}
