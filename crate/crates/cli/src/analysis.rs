use std::fs;
use std::path::Path;

use daestruct::assignment::{canonical_offsets_with, check_offsets, d_from_c, equality_pattern, solve_hvt, Hvt};
use daestruct::blocktri::{coarse_blocks, essential_pattern, BtfResult};
use daestruct::dae::{parse_dae, signature_of};
use daestruct::fineblock::{
    btf_block_order, build_fbg, canonical_lead_times, check_lead_times, classify_offset_set, lead_times,
    offsets_from_lead_times, FineBlockGraph, LeadTimeVector, OffsetSetClass,
};
use daestruct::sigfile::parse_sig;
use daestruct::sigma::{is_structurally_well_posed, OffsetPair, SignatureMatrix, SparsityPattern};

use crate::error::CliError;

/// Reads a `.dae` file (by extension) or a `.sig` file.
pub fn load(path: &Path) -> Result<SignatureMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    if path.extension().is_some_and(|e| e == "dae") {
        let src = parse_dae(&text).map_err(|source| CliError::Dae { path: path.into(), source })?;
        Ok(signature_of(&src))
    } else {
        parse_sig(&text).map_err(|source| CliError::Sig { path: path.into(), source })
    }
}

/// Which offsets to analyse with.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum OffsetChoice {
    #[default]
    Canonical,
    /// `c` given; `d` follows along the HVT.
    C(Vec<i64>),
    /// Lead times; offsets follow from the fine-block graph.
    K(Vec<i64>),
}

/// Everything `analyze` reports about one signature matrix.
pub struct Analysis {
    pub sigma: SignatureMatrix,
    pub hvt: Hvt,
    pub canonical: OffsetPair,
    pub offsets: OffsetPair,
    pub lead_times: LeadTimeVector,
    pub jacobian: SparsityPattern,
    pub coarse: BtfResult,
    pub sess: SparsityPattern,
    pub fbg: FineBlockGraph,
    pub canonical_k: LeadTimeVector,
    pub class: OffsetSetClass,
    /// Fine blocks in an order that puts the Jacobian pattern into BTF.
    pub fine_order: Vec<usize>,
}

impl Analysis {
    pub fn run(sigma: SignatureMatrix, choice: &OffsetChoice) -> Result<Self, CliError> {
        if !is_structurally_well_posed(&sigma) {
            return Err(CliError::IllPosed);
        }
        let n = sigma.n();
        let hvt = solve_hvt(&sigma)?;
        let canonical = canonical_offsets_with(&sigma, &hvt.transversal)?;
        let fbg = build_fbg(&sigma)?;
        let canonical_k = canonical_lead_times(&fbg)?;

        let offsets = match choice {
            OffsetChoice::Canonical => canonical.clone(),
            OffsetChoice::C(c) => {
                if c.len() != n {
                    return Err(CliError::Usage(format!("--offsets needs {n} values, got {}", c.len())));
                }
                let off = OffsetPair::new(c.clone(), d_from_c(&sigma, &hvt.transversal, c)?);
                let class = check_offsets(&sigma, &off)?;
                if !class.is_general {
                    return Err(CliError::NotGeneral);
                }
                if !class.is_valid {
                    return Err(CliError::Rejected("offsets are not valid: c has a negative entry".into()));
                }
                off
            }
            OffsetChoice::K(k) => {
                if k.len() != fbg.p() {
                    return Err(CliError::Usage(format!("--k needs {} values, got {}", fbg.p(), k.len())));
                }
                let k = LeadTimeVector(k.clone());
                let check = check_lead_times(&fbg, &k)?;
                if !check.valid {
                    return Err(CliError::Rejected(format!(
                        "K = {} is not a valid solution of the block inequalities",
                        tuple(&k.0)
                    )));
                }
                offsets_from_lead_times(&fbg, &k)?
            }
        };
        let lead = lead_times(&fbg, &offsets.c)?;
        let fine_order = btf_block_order(&fbg, &lead)?;
        Ok(Self {
            jacobian: equality_pattern(&sigma, &offsets),
            coarse: coarse_blocks(&sigma)?,
            sess: essential_pattern(&sigma, Some(&offsets))?,
            class: classify_offset_set(&fbg),
            sigma,
            hvt,
            canonical,
            offsets,
            lead_times: lead,
            fbg,
            canonical_k,
            fine_order,
        })
    }

    /// Row labels of `rows` and column labels of `cols`, comma-separated.
    pub fn block_labels(&self, rows: &[usize], cols: &[usize]) -> (String, String) {
        let r: Vec<&str> = rows.iter().map(|&i| self.sigma.row_labels()[i].as_str()).collect();
        let c: Vec<&str> = cols.iter().map(|&j| self.sigma.col_labels()[j].as_str()).collect();
        (r.join(","), c.join(","))
    }
}

/// `(a,b,c)`.
pub fn tuple(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

/// Parses `1,2,3`.
pub fn parse_list(flag: &str, text: &str) -> Result<Vec<i64>, CliError> {
    text.split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("{flag}: expected comma-separated integers, got {text:?}")))
}
