//! The JSON report. Row, column and block numbers are 1-based.

use serde::Serialize;

use crate::analysis::Analysis;

#[derive(Serialize)]
pub struct Report {
    pub n: usize,
    pub labels: Labels,
    pub sigma: Vec<[i64; 3]>,
    pub hvt: Vec<[usize; 2]>,
    pub val: i64,
    pub offsets: Offsets,
    pub coarse: Coarse,
    pub fine: Fine,
    pub sess: Vec<[i64; 3]>,
    pub fbg: Fbg,
}

#[derive(Serialize)]
pub struct Labels {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
}

#[derive(Serialize)]
pub struct Offsets {
    pub c: Vec<i64>,
    pub d: Vec<i64>,
}

#[derive(Serialize)]
pub struct Block {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
}

#[derive(Serialize)]
pub struct Coarse {
    pub sizes: Vec<usize>,
    pub blocks: Vec<Block>,
}

#[derive(Serialize)]
pub struct Fine {
    pub sizes: Vec<usize>,
    pub blocks: Vec<Block>,
    pub order: Vec<usize>,
}

#[derive(Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub w: i64,
}

#[derive(Serialize)]
pub struct Fbg {
    pub p: usize,
    pub edges: Vec<Edge>,
    pub local_c: Vec<i64>,
    pub local_d: Vec<i64>,
    pub anchors: Vec<usize>,
    #[serde(rename = "canonical_K")]
    pub canonical_k: Vec<i64>,
    pub classification: String,
}

fn block(a: &Analysis, rows: &[usize], cols: &[usize]) -> Block {
    Block {
        rows: rows.iter().map(|&i| a.sigma.row_labels()[i].clone()).collect(),
        cols: cols.iter().map(|&j| a.sigma.col_labels()[j].clone()).collect(),
    }
}

impl Report {
    pub fn new(a: &Analysis) -> Self {
        let sigma = &a.sigma;
        let triplet = |i: usize, j: usize| [i as i64 + 1, j as i64 + 1, sigma.get(i, j).expect("finite")];
        let fbg = &a.fbg;
        Report {
            n: sigma.n(),
            labels: Labels { rows: sigma.row_labels().to_vec(), cols: sigma.col_labels().to_vec() },
            sigma: sigma.entries().map(|(i, j, _)| triplet(i, j)).collect(),
            hvt: a.hvt.transversal.positions().map(|(i, j)| [i + 1, j + 1]).collect(),
            val: a.hvt.value,
            offsets: Offsets { c: a.offsets.c.clone(), d: a.offsets.d.clone() },
            coarse: Coarse {
                sizes: a.coarse.sizes().to_vec(),
                blocks: a.coarse.blocks().iter().map(|(r, c)| block(a, r, c)).collect(),
            },
            fine: Fine {
                sizes: fbg.blocks().iter().map(|(r, _)| r.len()).collect(),
                blocks: fbg.blocks().iter().map(|(r, c)| block(a, r, c)).collect(),
                order: a.fine_order.iter().map(|&b| b + 1).collect(),
            },
            sess: a.sess.iter().map(|(i, j)| triplet(i, j)).collect(),
            fbg: Fbg {
                p: fbg.p(),
                edges: fbg.edges().into_iter().map(|(k, l, w)| Edge { from: k + 1, to: l + 1, w }).collect(),
                local_c: fbg.local_c().to_vec(),
                local_d: fbg.local_d().to_vec(),
                anchors: fbg.anchors().iter().map(|&i| i + 1).collect(),
                canonical_k: a.canonical_k.0.clone(),
                classification: a.class.as_str().to_string(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }
}
