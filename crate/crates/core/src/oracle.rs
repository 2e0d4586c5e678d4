//! Exhaustive reference implementations for small instances.
//!
//! Nothing here calls the matching, assignment or block-triangularisation
//! code; each function works straight from the definitions so it can be used
//! to check those algorithms. Every function refuses inputs above a hard size
//! limit instead of attempting exponential work.

use crate::error::OracleError;
use crate::fineblock::{FineBlockGraph, LeadTimeVector};
use crate::sigma::{OffsetPair, SignatureMatrix, SparsityPattern, Transversal};

pub const MAX_TRANSVERSAL_N: usize = 10;
pub const MAX_HALL_N: usize = 6;
pub const MAX_OFFSET_N: usize = 7;
pub const MAX_OFFSET_BOUND: i64 = 8;
pub const MAX_LEAD_TIME_P: usize = 6;
pub const MAX_LEAD_TIME_BOUND: i64 = 10;

fn guard(what: &'static str, value: usize, limit: usize) -> Result<(), OracleError> {
    if value > limit {
        return Err(OracleError::TooLarge { what, value, limit });
    }
    Ok(())
}

/// Every transversal contained in `a`, by backtracking over rows.
pub fn all_transversals(a: &SparsityPattern) -> Result<Vec<Transversal>, OracleError> {
    guard("n", a.n(), MAX_TRANSVERSAL_N)?;
    let n = a.n();
    let mut out = Vec::new();
    let mut cols = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(
        a: &SparsityPattern,
        cols: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Transversal>,
    ) {
        let i = cols.len();
        if i == a.n() {
            out.push(Transversal::from_col_of_row(cols.clone()).expect("distinct columns"));
            return;
        }
        for j in 0..a.n() {
            if !used[j] && a.contains(i, j) {
                used[j] = true;
                cols.push(j);
                rec(a, cols, used, out);
                cols.pop();
                used[j] = false;
            }
        }
    }
    rec(a, &mut cols, &mut used, &mut out);
    Ok(out)
}

fn finite_pattern(sigma: &SignatureMatrix) -> SparsityPattern {
    SparsityPattern::new(sigma.n(), sigma.entries().map(|(i, j, _)| (i, j))).expect("in range")
}

fn value(sigma: &SignatureMatrix, t: &Transversal) -> i64 {
    t.positions().map(|(i, j)| sigma.get(i, j).expect("finite transversal")).sum()
}

/// All transversals of maximal value.
pub fn all_hvts(sigma: &SignatureMatrix) -> Result<Vec<Transversal>, OracleError> {
    let all = all_transversals(&finite_pattern(sigma))?;
    let best = all
        .iter()
        .map(|t| value(sigma, t))
        .max()
        .ok_or(OracleError::StructurallyIllPosed)?;
    Ok(all.into_iter().filter(|t| value(sigma, t) == best).collect())
}

/// The value of the HVTs.
pub fn best_value(sigma: &SignatureMatrix) -> Result<i64, OracleError> {
    let hvts = all_hvts(sigma)?;
    Ok(value(sigma, &hvts[0]))
}

/// The union of all HVTs.
pub fn sess_bruteforce(sigma: &SignatureMatrix) -> Result<SparsityPattern, OracleError> {
    let hvts = all_hvts(sigma)?;
    Ok(SparsityPattern::new(sigma.n(), hvts.iter().flat_map(|t| t.positions().collect::<Vec<_>>()))
        .expect("in range"))
}

fn rows_touched(a: &SparsityPattern, col_mask: u32) -> usize {
    let mut rows = 0u32;
    for (i, j) in a.iter() {
        if col_mask >> j & 1 == 1 {
            rows |= 1 << i;
        }
    }
    rows.count_ones() as usize
}

/// Any `r` columns, `1 <= r <= n`, have entries in at least `r` rows.
pub fn hall_property(a: &SparsityPattern) -> Result<bool, OracleError> {
    guard("n", a.n(), MAX_HALL_N)?;
    let n = a.n();
    Ok((1u32..1 << n).all(|mask| rows_touched(a, mask) >= mask.count_ones() as usize))
}

/// Any `r` columns, `1 <= r <= n - 1`, have entries in at least `r + 1` rows.
pub fn strong_hall_property(a: &SparsityPattern) -> Result<bool, OracleError> {
    guard("n", a.n(), MAX_HALL_N)?;
    let n = a.n();
    Ok((1u32..1 << n)
        .filter(|mask| (mask.count_ones() as usize) < n)
        .all(|mask| rows_touched(a, mask) > mask.count_ones() as usize))
}

/// All normalised offset pairs with `max c <= bound`.
///
/// `c` ranges over `{0..bound}^n`; `d` follows from `c` along one HVT, and
/// the pair is kept when every inequality `d_j - c_i >= sigma_ij` holds and
/// `min c = 0`. Rows are assigned one at a time, and an inequality is tested
/// as soon as both rows it involves are assigned.
pub fn normalized_offsets_bruteforce(
    sigma: &SignatureMatrix,
    bound: i64,
) -> Result<Vec<OffsetPair>, OracleError> {
    guard("n", sigma.n(), MAX_OFFSET_N)?;
    guard("bound", bound.max(0) as usize, MAX_OFFSET_BOUND as usize)?;
    let n = sigma.n();
    let hvt = all_hvts(sigma)?.swap_remove(0);
    let row_of_col = hvt.row_of_col();
    let on_t: Vec<i64> = (0..n).map(|j| sigma.get(row_of_col[j], j).expect("finite")).collect();

    // Constraint (a, b, s): c_b + on_t[j] - c_a >= s, where b is matched to column j.
    let mut checks: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); n];
    for (a, j, s) in sigma.entries() {
        let b = row_of_col[j];
        checks[a.max(b)].push((a, b, s - on_t[j]));
    }

    let mut out = Vec::new();
    if bound < 0 {
        return Ok(out);
    }
    let mut c = vec![0i64; n];
    fn rec(
        i: usize,
        bound: i64,
        c: &mut Vec<i64>,
        checks: &[Vec<(usize, usize, i64)>],
        finish: &mut dyn FnMut(&[i64]),
    ) {
        if i == c.len() {
            finish(c);
            return;
        }
        for x in 0..=bound {
            c[i] = x;
            if checks[i].iter().all(|&(a, b, need)| c[b] - c[a] >= need) {
                rec(i + 1, bound, c, checks, finish);
            }
        }
        c[i] = 0;
    }
    let mut finish = |c: &[i64]| {
        if c.iter().min() == Some(&0) {
            let mut d = vec![0; n];
            for (j, dj) in d.iter_mut().enumerate() {
                *dj = c[row_of_col[j]] + on_t[j];
            }
            out.push(OffsetPair::new(c.to_vec(), d));
        }
    };
    rec(0, bound, &mut c, &checks, &mut finish);
    out.sort();
    Ok(out)
}

/// Full grid `{0..bound}^p` filtered by every block inequality and `min K = 0`.
pub fn normalized_lead_times_bruteforce(
    fbg: &FineBlockGraph,
    bound: i64,
) -> Result<Vec<LeadTimeVector>, OracleError> {
    guard("p", fbg.p(), MAX_LEAD_TIME_P)?;
    guard("bound", bound.max(0) as usize, MAX_LEAD_TIME_BOUND as usize)?;
    let p = fbg.p();
    let edges = fbg.edges();
    let mut out = Vec::new();
    if bound < 0 {
        return Ok(out);
    }
    let mut k = vec![0i64; p];
    loop {
        if k.iter().min() == Some(&0) && edges.iter().all(|&(a, b, w)| k[b] - k[a] >= w) {
            out.push(LeadTimeVector(k.clone()));
        }
        // Odometer increment, last position fastest.
        let mut pos = p;
        loop {
            if pos == 0 {
                out.sort();
                return Ok(out);
            }
            pos -= 1;
            if k[pos] < bound {
                k[pos] += 1;
                break;
            }
            k[pos] = 0;
        }
    }
}
