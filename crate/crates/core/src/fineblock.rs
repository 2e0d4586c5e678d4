//! Local offsets, lead times and the weighted fine-block graph.
//!
//! Every general offset pair differs from the canonical local offsets of each
//! fine block by a constant on that block, its lead time `K_l`. The lead times
//! of all general offsets are exactly the solutions of the block inequalities
//! `K_l - K_k >= W_kl`, one per edge `k -> l` of the fine-block graph.

use std::collections::BTreeSet;
use std::thread;

use crate::assignment::canonical_offsets;
use crate::blocktri::{fine_blocks, strong_components, topological_order, BtfResult, Digraph};
use crate::error::AnalysisError;
use crate::sigma::{Emblem, OffsetPair, SignatureMatrix};

/// Lead times, one per fine block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeadTimeVector(pub Vec<i64>);

impl LeadTimeVector {
    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FineBlockGraph {
    fine: BtfResult,
    blocks: Vec<(Vec<usize>, Vec<usize>)>,
    row_block: Vec<usize>,
    col_block: Vec<usize>,
    local_c: Vec<i64>,
    local_d: Vec<i64>,
    anchors: Vec<usize>,
    graph: Digraph,
}

impl FineBlockGraph {
    /// Number of fine blocks.
    pub fn p(&self) -> usize {
        self.blocks.len()
    }

    pub fn n(&self) -> usize {
        self.row_block.len()
    }

    pub fn fine(&self) -> &BtfResult {
        &self.fine
    }

    /// `(rows, cols)` of each block, in block order.
    pub fn blocks(&self) -> &[(Vec<usize>, Vec<usize>)] {
        &self.blocks
    }

    pub fn row_block(&self) -> &[usize] {
        &self.row_block
    }

    pub fn col_block(&self) -> &[usize] {
        &self.col_block
    }

    /// Canonical local equation offsets, indexed by original row.
    pub fn local_c(&self) -> &[i64] {
        &self.local_c
    }

    /// Canonical local variable offsets, indexed by original column.
    pub fn local_d(&self) -> &[i64] {
        &self.local_d
    }

    /// Per block, the smallest row with local offset 0.
    pub fn anchors(&self) -> &[usize] {
        &self.anchors
    }

    /// The weighted edges `k -> l` carrying `W_kl`.
    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn edges(&self) -> Vec<(usize, usize, i64)> {
        self.graph
            .weighted_edges()
            .map(|(k, l, w)| (k, l, w.expect("fbg edges are weighted")))
            .collect()
    }

    pub fn max_weight(&self) -> Option<i64> {
        self.edges().iter().map(|e| e.2).max()
    }

    fn check_len(&self, k: &LeadTimeVector) -> Result<(), AnalysisError> {
        if k.0.len() != self.p() {
            return Err(AnalysisError::SizeMismatch { expected: self.p(), found: k.0.len() });
        }
        Ok(())
    }

    fn first_violation(&self, k: &LeadTimeVector) -> Option<(usize, usize)> {
        self.edges()
            .into_iter()
            .find(|&(a, b, w)| k.0[b] - k.0[a] < w)
            .map(|(a, b, _)| (a, b))
    }
}

/// Canonical offsets of each fine diagonal block taken as a matrix of its
/// own, assembled into vectors indexed by original row and column.
pub fn local_offsets(
    sigma: &SignatureMatrix,
    fine: &BtfResult,
) -> Result<(Vec<i64>, Vec<i64>), AnalysisError> {
    local_offsets_threaded(sigma, fine, 1)
}

/// As [`local_offsets`], solving the blocks on up to `threads` worker threads.
/// The result does not depend on `threads`.
pub fn local_offsets_threaded(
    sigma: &SignatureMatrix,
    fine: &BtfResult,
    threads: usize,
) -> Result<(Vec<i64>, Vec<i64>), AnalysisError> {
    let blocks = fine.blocks();
    let solve = |(rows, cols): &(Vec<usize>, Vec<usize>)| -> Result<OffsetPair, AnalysisError> {
        canonical_offsets(&sigma.submatrix(rows, cols)?)
    };

    let per_block: Vec<Result<OffsetPair, AnalysisError>> = if threads <= 1 || blocks.len() <= 1 {
        blocks.iter().map(solve).collect()
    } else {
        let chunk = blocks.len().div_ceil(threads);
        thread::scope(|s| {
            let handles: Vec<_> = blocks
                .chunks(chunk)
                .map(|part| s.spawn(move || part.iter().map(solve).collect::<Vec<_>>()))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("local offset worker panicked"))
                .collect()
        })
    };

    let n = sigma.n();
    let mut local_c = vec![0; n];
    let mut local_d = vec![0; n];
    for ((rows, cols), off) in blocks.iter().zip(per_block) {
        let off = off?;
        for (k, &i) in rows.iter().enumerate() {
            local_c[i] = off.c[k];
        }
        for (k, &j) in cols.iter().enumerate() {
            local_d[j] = off.d[k];
        }
    }
    Ok((local_c, local_d))
}

/// Builds the fine-block graph from the canonical fine BTF.
pub fn build_fbg(sigma: &SignatureMatrix) -> Result<FineBlockGraph, AnalysisError> {
    let fine = fine_blocks(sigma, None)?;
    let (local_c, local_d) = local_offsets(sigma, &fine)?;
    Ok(assemble(sigma, fine, local_c, local_d))
}

/// As [`build_fbg`], computing local offsets on several threads.
pub fn build_fbg_threaded(
    sigma: &SignatureMatrix,
    threads: usize,
) -> Result<FineBlockGraph, AnalysisError> {
    let fine = fine_blocks(sigma, None)?;
    let (local_c, local_d) = local_offsets_threaded(sigma, &fine, threads)?;
    Ok(assemble(sigma, fine, local_c, local_d))
}

fn assemble(
    sigma: &SignatureMatrix,
    fine: BtfResult,
    local_c: Vec<i64>,
    local_d: Vec<i64>,
) -> FineBlockGraph {
    let blocks = fine.blocks();
    let row_block = fine.row_block_of();
    let col_block = fine.col_block_of();
    let anchors = blocks
        .iter()
        .map(|(rows, _)| {
            *rows
                .iter()
                .filter(|&&i| local_c[i] == 0)
                .min()
                .expect("canonical local offsets have a zero in every block")
        })
        .collect();

    // Only entries outside the diagonal blocks contribute; the max keeps the
    // single non-redundant inequality per block pair.
    let mut graph = Digraph::new(blocks.len());
    for (i, j, s) in sigma.entries() {
        let (k, l) = (row_block[i], col_block[j]);
        if k != l {
            graph.add_weighted_edge(k, l, s - local_d[j] + local_c[i]);
        }
    }

    FineBlockGraph {
        fine,
        blocks,
        row_block,
        col_block,
        local_c,
        local_d,
        anchors,
        graph,
    }
}

/// `K_l = c` at the anchor of block `l`, after checking that `c_i - local_c_i`
/// is constant on every block.
pub fn lead_times(fbg: &FineBlockGraph, c: &[i64]) -> Result<LeadTimeVector, AnalysisError> {
    if c.len() != fbg.n() {
        return Err(AnalysisError::SizeMismatch { expected: fbg.n(), found: c.len() });
    }
    let mut k = Vec::with_capacity(fbg.p());
    for (block, (rows, _)) in fbg.blocks.iter().enumerate() {
        let lead = c[fbg.anchors[block]] - fbg.local_c[fbg.anchors[block]];
        if rows.iter().any(|&i| c[i] - fbg.local_c[i] != lead) {
            return Err(AnalysisError::NotBlockConstant { block });
        }
        k.push(lead);
    }
    Ok(LeadTimeVector(k))
}

/// `c_i = K_l + local_c_i`, `d_j = K_l + local_d_j` for a solution `K`.
pub fn offsets_from_lead_times(
    fbg: &FineBlockGraph,
    k: &LeadTimeVector,
) -> Result<OffsetPair, AnalysisError> {
    fbg.check_len(k)?;
    if let Some((from, to)) = fbg.first_violation(k) {
        return Err(AnalysisError::NotASolution { from, to });
    }
    let c = (0..fbg.n()).map(|i| k.0[fbg.row_block[i]] + fbg.local_c[i]).collect();
    let d = (0..fbg.n()).map(|j| k.0[fbg.col_block[j]] + fbg.local_d[j]).collect();
    Ok(OffsetPair { c, d })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeadTimeCheck {
    pub solution: bool,
    pub valid: bool,
    pub normalised: bool,
}

pub fn check_lead_times(
    fbg: &FineBlockGraph,
    k: &LeadTimeVector,
) -> Result<LeadTimeCheck, AnalysisError> {
    fbg.check_len(k)?;
    let solution = fbg.first_violation(k).is_none();
    let valid = solution && k.0.iter().all(|&x| x >= 0);
    let normalised = valid && k.0.iter().min() == Some(&0);
    Ok(LeadTimeCheck { solution, valid, normalised })
}

/// The elementwise-smallest valid solution, by relaxing
/// `K_l := max(K_l, K_k + W_kl)` from `K = 0` until stable.
pub fn canonical_lead_times(fbg: &FineBlockGraph) -> Result<LeadTimeVector, AnalysisError> {
    let p = fbg.p();
    let edges = fbg.edges();
    let max_w = fbg.max_weight().unwrap_or(0).max(0) as usize;
    let cap = p * (p * max_w + 1);
    let mut k = vec![0i64; p];
    for _ in 0..cap.max(1) {
        let mut changed = false;
        for &(a, b, w) in &edges {
            if k[a] + w > k[b] {
                k[b] = k[a] + w;
                changed = true;
            }
        }
        if !changed {
            return Ok(LeadTimeVector(k));
        }
    }
    Err(AnalysisError::InternalNonConvergence(cap))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OffsetSetClass {
    /// Only the canonical offsets are normalised.
    Unique,
    /// More than one, but finitely many, normalised offset vectors.
    FiniteMultiple,
    /// Infinitely many normalised offset vectors.
    Infinite,
}

impl OffsetSetClass {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Unique => "unique",
            Self::FiniteMultiple => "finite_multiple",
            Self::Infinite => "infinite",
        }
    }
}

pub fn classify_offset_set(fbg: &FineBlockGraph) -> OffsetSetClass {
    if fbg.p() == 1 {
        OffsetSetClass::Unique
    } else if strong_components(&fbg.graph).count() > 1 {
        OffsetSetClass::Infinite
    } else {
        OffsetSetClass::FiniteMultiple
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadTimeEnumeration {
    /// Normalised solutions with every entry at most the bound, sorted.
    pub vectors: Vec<LeadTimeVector>,
    /// Set when the full set is infinite, so the list is necessarily cut off.
    pub truncated: bool,
}

/// All normalised solutions with `max K <= bound`.
///
/// Depth-first over blocks in condensation order; each block's range is cut
/// down by the edges to and from blocks already assigned.
pub fn enumerate_normalised_lead_times(fbg: &FineBlockGraph, bound: i64) -> LeadTimeEnumeration {
    let p = fbg.p();
    let comps = strong_components(&fbg.graph);
    let key: Vec<usize> = (0..comps.count()).collect();
    let comp_order = topological_order(&comps.condensation, &key).expect("condensation is acyclic");
    let order: Vec<usize> = comp_order.iter().flat_map(|&c| comps.members[c].iter().copied()).collect();

    let mut incoming = vec![Vec::new(); p];
    let mut outgoing = vec![Vec::new(); p];
    for (a, b, w) in fbg.edges() {
        incoming[b].push((a, w));
        outgoing[a].push((b, w));
    }

    let mut out = Vec::new();
    if bound >= 0 {
        let mut k = vec![0i64; p];
        let mut assigned = vec![false; p];
        descend(0, &order, &incoming, &outgoing, bound, &mut k, &mut assigned, &mut out);
    }
    out.sort();
    LeadTimeEnumeration {
        vectors: out,
        truncated: classify_offset_set(fbg) == OffsetSetClass::Infinite,
    }
}

#[allow(clippy::too_many_arguments)]
fn descend(
    depth: usize,
    order: &[usize],
    incoming: &[Vec<(usize, i64)>],
    outgoing: &[Vec<(usize, i64)>],
    bound: i64,
    k: &mut Vec<i64>,
    assigned: &mut Vec<bool>,
    out: &mut Vec<LeadTimeVector>,
) {
    if depth == order.len() {
        if k.iter().min() == Some(&0) {
            out.push(LeadTimeVector(k.clone()));
        }
        return;
    }
    let v = order[depth];
    let mut lo = 0;
    let mut hi = bound;
    for &(a, w) in &incoming[v] {
        if assigned[a] {
            lo = lo.max(k[a] + w);
        }
    }
    for &(b, w) in &outgoing[v] {
        if assigned[b] {
            hi = hi.min(k[b] - w);
        }
    }
    assigned[v] = true;
    for x in lo..=hi {
        k[v] = x;
        descend(depth + 1, order, incoming, outgoing, bound, k, assigned, out);
    }
    assigned[v] = false;
    k[v] = 0;
}

/// Edges satisfied with equality by the solution `k`.
pub fn critical_subgraph(fbg: &FineBlockGraph, k: &LeadTimeVector) -> Result<Digraph, AnalysisError> {
    fbg.check_len(k)?;
    if let Some((from, to)) = fbg.first_violation(k) {
        return Err(AnalysisError::NotASolution { from, to });
    }
    let mut g = Digraph::new(fbg.p());
    for (a, b, w) in fbg.edges() {
        if k.0[b] - k.0[a] == w {
            g.add_weighted_edge(a, b, w);
        }
    }
    if !g.is_acyclic() {
        return Err(AnalysisError::InternalCycle);
    }
    Ok(g)
}

fn block_keys(fbg: &FineBlockGraph) -> Vec<usize> {
    fbg.blocks.iter().map(|(rows, _)| rows[0]).collect()
}

/// A block order that puts the Jacobian pattern of `k` into BTF, choosing
/// blocks with the smallest row first when free.
pub fn btf_block_order(fbg: &FineBlockGraph, k: &LeadTimeVector) -> Result<Vec<usize>, AnalysisError> {
    let g = critical_subgraph(fbg, k)?;
    topological_order(&g, &block_keys(fbg)).ok_or(AnalysisError::InternalCycle)
}

/// True iff `order` lists every block once and respects every `k`-critical edge.
pub fn is_btf_order(
    fbg: &FineBlockGraph,
    k: &LeadTimeVector,
    order: &[usize],
) -> Result<bool, AnalysisError> {
    let g = critical_subgraph(fbg, k)?;
    let p = fbg.p();
    if order.len() != p {
        return Ok(false);
    }
    let mut pos = vec![usize::MAX; p];
    for (at, &b) in order.iter().enumerate() {
        if b >= p || pos[b] != usize::MAX {
            return Ok(false);
        }
        pos[b] = at;
    }
    let respects = g.edges().all(|(a, b)| pos[a] < pos[b]);
    Ok(respects)
}

/// A map from the vertices of a digraph onto `0..target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    map: Vec<usize>,
    target: usize,
}

impl QuotientMap {
    pub fn new(map: Vec<usize>, target: usize) -> Result<Self, AnalysisError> {
        let mut hit = vec![false; target];
        for &w in &map {
            if w >= target {
                return Err(AnalysisError::SizeMismatch { expected: target, found: w + 1 });
            }
            hit[w] = true;
        }
        if hit.contains(&false) {
            return Err(AnalysisError::NotSurjective);
        }
        Ok(Self { map, target })
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn image(&self, v: usize) -> usize {
        self.map[v]
    }

    /// Preimage of `w`.
    pub fn class(&self, w: usize) -> Vec<usize> {
        (0..self.map.len()).filter(|&v| self.map[v] == w).collect()
    }
}

/// `phi(u) -> phi(v)` for every edge `u -> v` with `phi(u) != phi(v)`.
pub fn quotient_graph(g: &Digraph, phi: &QuotientMap) -> Result<Digraph, AnalysisError> {
    if phi.map.len() != g.n() {
        return Err(AnalysisError::SizeMismatch { expected: g.n(), found: phi.map.len() });
    }
    Ok(Digraph::from_edges(phi.target, g.edges().map(|(u, v)| (phi.map[u], phi.map[v]))))
}

/// Coarse blocks as unions of the fine blocks in each strong component of the FBG.
pub fn coarse_via_fbg(fbg: &FineBlockGraph) -> Emblem {
    let comps = strong_components(&fbg.graph);
    let pairs = comps.members.iter().map(|members| {
        let mut rows = BTreeSet::new();
        let mut cols = BTreeSet::new();
        for &b in members {
            rows.extend(fbg.blocks[b].0.iter().copied());
            cols.extend(fbg.blocks[b].1.iter().copied());
        }
        (rows, cols)
    });
    Emblem::from_pairs(fbg.n(), pairs).expect("fine blocks partition rows and columns")
}

/// Whether the lead times of the canonical offsets are the canonical lead times.
pub fn canonical_correspondence_holds(
    sigma: &SignatureMatrix,
    fbg: &FineBlockGraph,
) -> Result<bool, AnalysisError> {
    let canon = canonical_offsets(sigma)?;
    Ok(lead_times(fbg, &canon.c)? == canonical_lead_times(fbg)?)
}
