//! Plain-text views for `analyze --print`.

use std::fmt::Write;

use daestruct::fineblock::{enumerate_normalised_lead_times, offsets_from_lead_times};

use crate::analysis::{tuple, Analysis};

/// Sigma restricted to `rows` x `cols` in that order, with `c` on the
/// right and `d` underneath. Entries of the HVT are starred.
fn table(a: &Analysis, rows: &[usize], cols: &[usize]) -> String {
    let sigma = &a.sigma;
    let on_hvt = |i: usize, j: usize| a.hvt.transversal.col_of(i) == j;
    let cell = |i: usize, j: usize| match sigma.get(i, j) {
        Some(s) if on_hvt(i, j) => format!("{s}*"),
        Some(s) => s.to_string(),
        None => "-".into(),
    };
    let mut width = 2;
    for &i in rows {
        width = width.max(sigma.row_labels()[i].len());
        width = width.max(a.offsets.c[i].to_string().len());
        for &j in cols {
            width = width.max(cell(i, j).len());
        }
    }
    for &j in cols {
        width = width.max(sigma.col_labels()[j].len()).max(a.offsets.d[j].to_string().len());
    }
    let w = width;
    let mut out = format!("{:w$}", "");
    for &j in cols {
        write!(out, " {:>w$}", sigma.col_labels()[j]).unwrap();
    }
    writeln!(out, " | {:>w$}", "c").unwrap();
    for &i in rows {
        write!(out, "{:w$}", sigma.row_labels()[i]).unwrap();
        for &j in cols {
            write!(out, " {:>w$}", cell(i, j)).unwrap();
        }
        writeln!(out, " | {:>w$}", a.offsets.c[i]).unwrap();
    }
    write!(out, "{:w$}", "d").unwrap();
    for &j in cols {
        write!(out, " {:>w$}", a.offsets.d[j]).unwrap();
    }
    out.push('\n');
    out
}

fn block_list(a: &Analysis, blocks: &[(Vec<usize>, Vec<usize>)]) -> String {
    let mut out = String::new();
    for (k, (rows, cols)) in blocks.iter().enumerate() {
        let (r, c) = a.block_labels(rows, cols);
        writeln!(out, "  block {}: {}x{} rows {{{r}}} cols {{{c}}}", k + 1, rows.len(), cols.len()).unwrap();
    }
    out
}

fn block_form(a: &Analysis, title: &str, blocks: &[(Vec<usize>, Vec<usize>)]) -> String {
    let rows: Vec<usize> = blocks.iter().flat_map(|b| b.0.iter().copied()).collect();
    let cols: Vec<usize> = blocks.iter().flat_map(|b| b.1.iter().copied()).collect();
    let sizes: Vec<String> = blocks.iter().map(|b| b.0.len().to_string()).collect();
    let mut out = format!("{title}: {} block(s), sizes {}\n", blocks.len(), sizes.join(" "));
    out.push_str(&block_list(a, blocks));
    out.push_str(&table(a, &rows, &cols));
    out
}

pub fn summary(a: &Analysis) -> String {
    let mut out = String::new();
    let hvt: Vec<String> = a
        .hvt
        .transversal
        .positions()
        .map(|(i, j)| format!("({},{})", a.sigma.row_labels()[i], a.sigma.col_labels()[j]))
        .collect();
    let sizes = |v: Vec<usize>| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    writeln!(out, "n = {}", a.sigma.n()).unwrap();
    writeln!(out, "val = {}", a.hvt.value).unwrap();
    writeln!(out, "hvt: {}", hvt.join(" ")).unwrap();
    writeln!(out, "offsets: c = {} d = {}", tuple(&a.offsets.c), tuple(&a.offsets.d)).unwrap();
    writeln!(out, "coarse blocks: {} (sizes {})", a.coarse.block_count(), sizes(a.coarse.sizes().to_vec())).unwrap();
    let fine_sizes = a.fine_order.iter().map(|&b| a.fbg.blocks()[b].0.len()).collect();
    writeln!(out, "fine blocks: {} (sizes {})", a.fbg.p(), sizes(fine_sizes)).unwrap();
    writeln!(out, "lead times: K = {}", tuple(&a.lead_times.0)).unwrap();
    writeln!(out, "offset set: {}", a.class.as_str()).unwrap();
    out
}

pub fn sigma(a: &Analysis) -> String {
    let all: Vec<usize> = (0..a.sigma.n()).collect();
    format!("signature matrix (n = {}, val = {}):\n{}", a.sigma.n(), a.hvt.value, table(a, &all, &all))
}

pub fn coarse(a: &Analysis) -> String {
    block_form(a, "coarse BTF", &a.coarse.blocks())
}

pub fn fine(a: &Analysis) -> String {
    let blocks: Vec<_> = a.fine_order.iter().map(|&b| a.fbg.blocks()[b].clone()).collect();
    let mut out = block_form(a, "fine BTF", &blocks);
    writeln!(out, "offsets: c = {} d = {}", tuple(&a.offsets.c), tuple(&a.offsets.d)).unwrap();
    out
}

pub fn sess(a: &Analysis) -> String {
    let mut out = format!("essential pattern: {} position(s)\n", a.sess.len());
    for (i, j) in a.sess.iter() {
        let s = a.sigma.get(i, j).expect("finite");
        writeln!(out, "  ({},{}) = {s}", a.sigma.row_labels()[i], a.sigma.col_labels()[j]).unwrap();
    }
    out
}

pub fn fbg(a: &Analysis) -> String {
    let g = &a.fbg;
    let mut out = format!("fine-block graph: p = {}\n", g.p());
    out.push_str(&block_list(a, g.blocks()));
    for (k, l, w) in g.edges() {
        writeln!(out, "  B{} -> B{}  W = {w}", k + 1, l + 1).unwrap();
    }
    writeln!(out, "local c = {}", tuple(g.local_c())).unwrap();
    writeln!(out, "local d = {}", tuple(g.local_d())).unwrap();
    let anchors: Vec<i64> = g.anchors().iter().map(|&i| i as i64 + 1).collect();
    writeln!(out, "anchors = {}", tuple(&anchors)).unwrap();
    writeln!(out, "canonical K = {}", tuple(&a.canonical_k.0)).unwrap();
    writeln!(out, "classification: {}", a.class.as_str()).unwrap();
    out
}

/// Normalised lead-time vectors up to `bound`, with their offsets.
pub fn enumeration(a: &Analysis, bound: i64) -> String {
    let listed = enumerate_normalised_lead_times(&a.fbg, bound);
    let mut out = format!("normalised lead-time vectors with max K <= {bound}: {}\n", listed.vectors.len());
    if listed.truncated {
        out.push_str("truncated (set is infinite)\n");
    }
    for k in &listed.vectors {
        let off = offsets_from_lead_times(&a.fbg, k).expect("enumerated vectors are solutions");
        writeln!(out, "  K = {}  c = {}  d = {}", tuple(&k.0), tuple(&off.c), tuple(&off.d)).unwrap();
    }
    out
}
