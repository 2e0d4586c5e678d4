//! Maximum-cardinality bipartite matching (Hopcroft-Karp) between rows and
//! columns of a sparsity pattern.

use std::collections::VecDeque;

use crate::sigma::{SparsityPattern, Transversal};

const NIL: usize = usize::MAX;

/// A matching as `col_of_row[i]`, `usize::MAX` for unmatched rows.
#[derive(Clone, Debug)]
pub struct Matching {
    pub col_of_row: Vec<usize>,
    pub row_of_col: Vec<usize>,
    pub size: usize,
}

impl Matching {
    pub fn is_perfect(&self) -> bool {
        self.size == self.col_of_row.len()
    }

    pub fn into_transversal(self) -> Option<Transversal> {
        if self.is_perfect() {
            Transversal::from_col_of_row(self.col_of_row).ok()
        } else {
            None
        }
    }
}

pub fn maximum_matching(pattern: &SparsityPattern) -> Matching {
    hopcroft_karp(pattern.n(), &pattern.row_lists())
}

/// Hopcroft-Karp on adjacency lists `adj[row] = columns`.
pub fn hopcroft_karp(n: usize, adj: &[Vec<usize>]) -> Matching {
    let mut col_of_row = vec![NIL; n];
    let mut row_of_col = vec![NIL; n];
    let mut dist = vec![0usize; n];
    let mut size = 0;

    // Greedy warm start.
    for (i, cols) in adj.iter().enumerate() {
        if let Some(&j) = cols.iter().find(|&&j| row_of_col[j] == NIL) {
            col_of_row[i] = j;
            row_of_col[j] = i;
            size += 1;
        }
    }

    loop {
        // BFS layering from free rows.
        let mut queue = VecDeque::new();
        for i in 0..n {
            if col_of_row[i] == NIL {
                dist[i] = 0;
                queue.push_back(i);
            } else {
                dist[i] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                let r = row_of_col[j];
                if r == NIL {
                    found = true;
                } else if dist[r] == usize::MAX {
                    dist[r] = dist[i] + 1;
                    queue.push_back(r);
                }
            }
        }
        if !found {
            break;
        }

        let mut next = vec![0usize; n];
        for i in 0..n {
            if col_of_row[i] == NIL && augment(i, adj, &mut col_of_row, &mut row_of_col, &mut dist, &mut next) {
                size += 1;
            }
        }
    }

    Matching { col_of_row, row_of_col, size }
}

// Iterative DFS along the BFS layers.
fn augment(
    root: usize,
    adj: &[Vec<usize>],
    col_of_row: &mut [usize],
    row_of_col: &mut [usize],
    dist: &mut [usize],
    next: &mut [usize],
) -> bool {
    let mut stack = vec![root];
    while let Some(&i) = stack.last() {
        if next[i] == adj[i].len() {
            dist[i] = usize::MAX;
            stack.pop();
            continue;
        }
        let j = adj[i][next[i]];
        next[i] += 1;
        let r = row_of_col[j];
        if r == NIL {
            // Flip the path: each stacked row takes the column it last tried.
            for &row in stack.iter().rev() {
                let col = adj[row][next[row] - 1];
                col_of_row[row] = col;
                row_of_col[col] = row;
            }
            return true;
        }
        if dist[r] != usize::MAX && dist[r] == dist[i] + 1 {
            stack.push(r);
        }
    }
    false
}
