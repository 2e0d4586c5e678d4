//! Digraphs of patterns relative to a transversal, strong components, and
//! irreducible block-triangular forms.
//!
//! Forms are upper block-triangular: a position `(i, j)` with row `i` in block
//! `k` and column `j` in block `l` requires `k <= l`. Among the admissible
//! block orders the one chosen is the lexicographically smallest by each
//! block's minimum original row index, so results do not depend on which
//! transversal the matching happened to return.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use crate::assignment::{canonical_offsets, jacobian_pattern};
use crate::error::AnalysisError;
use crate::matching::maximum_matching;
use crate::sigma::{
    emblem_of, is_transversal, pattern_of, BlockForm, Emblem, OffsetPair, Permutation,
    SignatureMatrix, SparsityPattern, Transversal,
};

/// A directed graph on `0..n` without self-edges, optionally weighted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Digraph {
    n: usize,
    edges: BTreeMap<(usize, usize), Option<i64>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Self { n, edges: BTreeMap::new() }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Inserts `u -> v`; self-edges are not inserted and return `false`.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n, "vertex out of range");
        if u == v {
            return false;
        }
        self.edges.entry((u, v)).or_insert(None);
        true
    }

    /// Inserts `u -> v` with weight `w`, keeping the larger weight on repeats.
    pub fn add_weighted_edge(&mut self, u: usize, v: usize, w: i64) -> bool {
        assert!(u < self.n && v < self.n, "vertex out of range");
        if u == v {
            return false;
        }
        let slot = self.edges.entry((u, v)).or_insert(Some(w));
        *slot = Some(slot.map_or(w, |old| old.max(w)));
        true
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains_key(&(u, v))
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<i64> {
        self.edges.get(&(u, v)).copied().flatten()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.keys().copied()
    }

    pub fn weighted_edges(&self) -> impl Iterator<Item = (usize, usize, Option<i64>)> + '_ {
        self.edges.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (u, v) in self.edges() {
            adj[u].push(v);
        }
        adj
    }

    /// Same vertices, edges reduced to their endpoints.
    pub fn unweighted(&self) -> Digraph {
        Digraph::from_edges(self.n, self.edges())
    }

    /// Vertices reachable from `start` (including `start`).
    pub fn reachable_from(&self, start: usize) -> Vec<bool> {
        let adj = self.successors();
        let mut seen = vec![false; self.n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    pub fn is_acyclic(&self) -> bool {
        topological_order(self, &(0..self.n).collect::<Vec<_>>()).is_some()
    }
}

/// Kahn's algorithm, always taking the ready vertex with the smallest `key`
/// (ties by index). `None` if the graph has a cycle.
pub fn topological_order(g: &Digraph, key: &[usize]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; g.n()];
    for (_, v) in g.edges() {
        indeg[v] += 1;
    }
    let adj = g.successors();
    let mut ready: BinaryHeap<Reverse<(usize, usize)>> = (0..g.n())
        .filter(|&v| indeg[v] == 0)
        .map(|v| Reverse((key[v], v)))
        .collect();
    let mut order = Vec::with_capacity(g.n());
    while let Some(Reverse((_, u))) = ready.pop() {
        order.push(u);
        for &v in &adj[u] {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                ready.push(Reverse((key[v], v)));
            }
        }
    }
    (order.len() == g.n()).then_some(order)
}

/// Strong components, numbered in increasing order of their smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub comp_of: Vec<usize>,
    /// Sorted members of each component.
    pub members: Vec<Vec<usize>>,
    pub condensation: Digraph,
}

impl Components {
    pub fn count(&self) -> usize {
        self.members.len()
    }
}

/// Tarjan's algorithm, iterative.
pub fn strong_components(g: &Digraph) -> Components {
    let n = g.n();
    let adj = g.successors();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut raw: Vec<Vec<usize>> = Vec::new();

    for start in 0..n {
        if index[start] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(start, 0)];
        index[start] = next_index;
        low[start] = next_index;
        next_index += 1;
        stack.push(start);
        on_stack[start] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < adj[v].len() {
                let w = adj[v][*pos];
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                raw.push(comp);
            }
        }
    }

    raw.sort_unstable_by_key(|c| c[0]);
    let mut comp_of = vec![0; n];
    for (k, comp) in raw.iter().enumerate() {
        for &v in comp {
            comp_of[v] = k;
        }
    }
    let mut condensation = Digraph::new(raw.len());
    for (u, v) in g.edges() {
        condensation.add_edge(comp_of[u], comp_of[v]);
    }
    Components { comp_of, members: raw, condensation }
}

/// The digraph of `a` relative to `t`: vertex `k` stands for row `k` and its
/// matched column `t(k)`; `i -> k` iff `(i, t(k))` is in `a`, `i != k`.
pub fn digraph_of(a: &SparsityPattern, t: &Transversal) -> Result<Digraph, AnalysisError> {
    if !is_transversal(a, t) {
        return Err(AnalysisError::TransversalNotInPattern);
    }
    let row_of_col = t.row_of_col();
    Ok(Digraph::from_edges(a.n(), a.iter().map(|(i, j)| (i, row_of_col[j]))))
}

/// An irreducible upper block-triangular form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BtfResult {
    pub block_form: BlockForm,
    pub emblem: Emblem,
    pub transversal_used: Transversal,
    /// Strong-component ids (numbered by smallest row) in block order.
    pub block_order: Vec<usize>,
}

impl BtfResult {
    pub fn sizes(&self) -> &[usize] {
        self.block_form.sizes()
    }

    pub fn block_count(&self) -> usize {
        self.block_form.block_count()
    }

    /// `(rows, cols)` per block in block order; rows ascending, `cols[k]`
    /// matched to `rows[k]` by the transversal used.
    pub fn blocks(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        self.block_form.blocks()
    }

    pub fn row_block_of(&self) -> Vec<usize> {
        self.block_form.row_block_of()
    }

    pub fn col_block_of(&self) -> Vec<usize> {
        self.block_form.col_block_of()
    }
}

pub fn irreducible_btf(a: &SparsityPattern) -> Result<BtfResult, AnalysisError> {
    let t = maximum_matching(a)
        .into_transversal()
        .ok_or(AnalysisError::StructurallySingular)?;
    btf_with_transversal(a, t)
}

fn btf_with_transversal(a: &SparsityPattern, t: Transversal) -> Result<BtfResult, AnalysisError> {
    let g = digraph_of(a, &t)?;
    let comps = strong_components(&g);
    let key: Vec<usize> = comps.members.iter().map(|m| m[0]).collect();
    let order = topological_order(&comps.condensation, &key).ok_or(AnalysisError::InternalCycle)?;

    let mut rows = Vec::with_capacity(a.n());
    let mut sizes = Vec::with_capacity(order.len());
    for &k in &order {
        rows.extend_from_slice(&comps.members[k]);
        sizes.push(comps.members[k].len());
    }
    let cols: Vec<usize> = rows.iter().map(|&i| t.col_of(i)).collect();
    let block_form = BlockForm::new(Permutation::new(rows)?, Permutation::new(cols)?, sizes)?;
    Ok(BtfResult {
        emblem: emblem_of(&block_form),
        block_form,
        transversal_used: t,
        block_order: order,
    })
}

fn map_singular(e: AnalysisError) -> AnalysisError {
    match e {
        AnalysisError::StructurallySingular => AnalysisError::StructurallyIllPosed,
        other => other,
    }
}

/// Irreducible BTF of the pattern of `sigma`.
pub fn coarse_blocks(sigma: &SignatureMatrix) -> Result<BtfResult, AnalysisError> {
    irreducible_btf(&pattern_of(sigma)).map_err(map_singular)
}

/// Irreducible BTF of the Jacobian pattern, using canonical offsets when none are given.
pub fn fine_blocks(
    sigma: &SignatureMatrix,
    off: Option<&OffsetPair>,
) -> Result<BtfResult, AnalysisError> {
    let s0 = jacobian_pattern_for(sigma, off)?;
    irreducible_btf(&s0).map_err(map_singular)
}

pub(crate) fn jacobian_pattern_for(
    sigma: &SignatureMatrix,
    off: Option<&OffsetPair>,
) -> Result<SparsityPattern, AnalysisError> {
    match off {
        Some(off) => jacobian_pattern(sigma, off),
        None => jacobian_pattern(sigma, &canonical_offsets(sigma)?),
    }
}

/// Union of the diagonal blocks of the fine BTF, in original indices.
pub fn essential_pattern(
    sigma: &SignatureMatrix,
    off: Option<&OffsetPair>,
) -> Result<SparsityPattern, AnalysisError> {
    let s0 = jacobian_pattern_for(sigma, off)?;
    let fine = irreducible_btf(&s0).map_err(map_singular)?;
    Ok(diagonal_part(&s0, &fine))
}

/// Positions of `a` lying inside the diagonal blocks of `btf`.
pub fn diagonal_part(a: &SparsityPattern, btf: &BtfResult) -> SparsityPattern {
    let rb = btf.row_block_of();
    let cb = btf.col_block_of();
    SparsityPattern::new(a.n(), a.iter().filter(|&(i, j)| rb[i] == cb[j])).expect("subset of a")
}

pub fn is_irreducible(a: &SparsityPattern) -> Result<bool, AnalysisError> {
    Ok(irreducible_btf(a)?.block_count() == 1)
}

/// Fine-block irreducibility; independent of the valid offsets used.
pub fn classify_fine_irreducible(sigma: &SignatureMatrix) -> Result<bool, AnalysisError> {
    Ok(fine_blocks(sigma, None)?.block_count() == 1)
}
