//! End-to-end analysis of the pendulum, the modified pendulum and the
//! two-pendula system, starting from the model files.

mod common;

use daestruct::assignment::{canonical_offsets, check_offsets, jacobian_pattern, solve_hvt};
use daestruct::blocktri::{coarse_blocks, essential_pattern, fine_blocks};
use daestruct::dae::{parse_dae, signature_of};
use daestruct::fineblock::{
    build_fbg, canonical_correspondence_holds, canonical_lead_times, classify_offset_set, coarse_via_fbg,
    critical_subgraph, enumerate_normalised_lead_times, is_btf_order, lead_times, offsets_from_lead_times,
    LeadTimeVector, OffsetSetClass,
};
use daestruct::oracle;
use daestruct::sigfile::{parse_sig, write_sig};
use daestruct::sigma::{pattern_of, OffsetPair, SignatureMatrix, SparsityPattern};

const PENDULUM_DAE: &str = include_str!("../../../models/pendulum.dae");
const PENDULUM_SIG: &str = include_str!("../../../models/pendulum.sig");
const MODPENDULUM_SIG: &str = include_str!("../../../models/modpendulum.sig");
const TWOPENDULA_DAE: &str = include_str!("../../../models/twopendula.dae");

fn two_pendula() -> SignatureMatrix {
    signature_of(&parse_dae(TWOPENDULA_DAE).unwrap())
}

/// Block labels, each side sorted.
fn labelled(sigma: &SignatureMatrix, rows: &[usize], cols: &[usize]) -> (String, String) {
    let mut r: Vec<&str> = rows.iter().map(|&i| sigma.row_labels()[i].as_str()).collect();
    let mut c: Vec<&str> = cols.iter().map(|&j| sigma.col_labels()[j].as_str()).collect();
    r.sort();
    c.sort();
    (r.join(","), c.join(","))
}

#[test]
fn pendulum_model_files_agree() {
    let from_dae = signature_of(&parse_dae(PENDULUM_DAE).unwrap());
    assert_eq!(from_dae, parse_sig(PENDULUM_SIG).unwrap());
    assert_eq!(write_sig(&from_dae), PENDULUM_SIG);
}

#[test]
fn pendulum() {
    let sigma = parse_sig(PENDULUM_SIG).unwrap();
    assert_eq!(solve_hvt(&sigma).unwrap().value, 2);
    assert_eq!(canonical_offsets(&sigma).unwrap(), OffsetPair::new(vec![0, 0, 2], vec![2, 2, 0]));
    assert_eq!(fine_blocks(&sigma, None).unwrap().sizes(), [3]);
    assert_eq!(coarse_blocks(&sigma).unwrap().sizes(), [3]);
    assert_eq!(oracle::all_hvts(&sigma).unwrap().len(), 2);
    assert_eq!(classify_offset_set(&build_fbg(&sigma).unwrap()), OffsetSetClass::Unique);
}

#[test]
fn modified_pendulum() {
    let sigma = parse_sig(MODPENDULUM_SIG).unwrap();
    let canon = canonical_offsets(&sigma).unwrap();
    assert_eq!(canon, OffsetPair::new(vec![0, 0, 1], vec![2, 2, 0]));

    let s = pattern_of(&sigma);
    let s0 = jacobian_pattern(&sigma, &canon).unwrap();
    let mut expect = s.positions().clone();
    expect.remove(&(2, 1));
    assert_eq!(s0.positions(), &expect);

    let fine = fine_blocks(&sigma, None).unwrap();
    let blocks: Vec<_> = fine.blocks().iter().map(|(r, c)| labelled(&sigma, r, c)).collect();
    let names: Vec<(&str, &str)> = blocks.iter().map(|(r, c)| (r.as_str(), c.as_str())).collect();
    assert_eq!(names, [("B", "y"), ("A", "lam"), ("C", "x")]);
    assert_eq!(coarse_blocks(&sigma).unwrap().sizes(), [3]);

    // One HVT, so the essential pattern is that transversal alone.
    assert_eq!(oracle::all_hvts(&sigma).unwrap().len(), 1);
    assert_eq!(essential_pattern(&sigma, None).unwrap().len(), 3);

    let fbg = build_fbg(&sigma).unwrap();
    assert_eq!(classify_offset_set(&fbg), OffsetSetClass::FiniteMultiple);
    assert_eq!(coarse_via_fbg(&fbg), coarse_blocks(&sigma).unwrap().emblem);
}

#[test]
fn two_pendula_signature() {
    let sigma = two_pendula();
    let triplets: Vec<(usize, usize, i64)> = sigma.entries().map(|(i, j, s)| (i + 1, j + 1, s)).collect();
    assert_eq!(
        triplets,
        [
            (1, 1, 2),
            (1, 3, 0),
            (2, 1, 1),
            (2, 2, 2),
            (2, 3, 0),
            (3, 1, 0),
            (3, 2, 0),
            (4, 4, 2),
            (4, 6, 0),
            (5, 5, 3),
            (5, 6, 0),
            (6, 3, 2),
            (6, 4, 0),
            (6, 5, 0),
        ]
    );
}

#[test]
fn two_pendula_offsets_and_blocks() {
    let sigma = two_pendula();
    let canon = canonical_offsets(&sigma).unwrap();
    assert_eq!(canon, OffsetPair::new(vec![4, 4, 6, 0, 0, 2], vec![6, 6, 4, 2, 3, 0]));
    let val = solve_hvt(&sigma).unwrap().value;
    assert_eq!(val, canon.d.iter().sum::<i64>() - canon.c.iter().sum::<i64>());

    let fine = fine_blocks(&sigma, None).unwrap();
    let names: Vec<_> = fine.blocks().iter().map(|(r, c)| labelled(&sigma, r, c)).collect();
    assert_eq!(
        names,
        [
            ("E".into(), "v".into()),
            ("D".into(), "mu".into()),
            ("F".into(), "u".into()),
            ("A,B,C".into(), "lam,x,y".into()),
        ]
    );
    let mut coarse = coarse_blocks(&sigma).unwrap().sizes().to_vec();
    coarse.sort();
    assert_eq!(coarse, [3, 3]);
}

#[test]
fn two_pendula_fine_block_graph() {
    let sigma = two_pendula();
    let fbg = build_fbg(&sigma).unwrap();
    assert_eq!(fbg.local_c(), [0, 0, 2, 0, 0, 0]);
    assert_eq!(fbg.local_d(), [2, 2, 0, 0, 3, 0]);
    assert_eq!(fbg.edges(), [(0, 1, 0), (1, 2, 2), (2, 0, -3), (2, 3, 2)]);

    let canon_k = canonical_lead_times(&fbg).unwrap();
    assert_eq!(canon_k, LeadTimeVector(vec![0, 0, 2, 4]));
    assert!(canonical_correspondence_holds(&sigma, &fbg).unwrap());
    let cycle: i64 = [(0, 1), (1, 2), (2, 0)].iter().map(|&(a, b)| fbg.graph().weight(a, b).unwrap()).sum();
    assert_eq!(cycle, -1);
    assert_eq!(classify_offset_set(&fbg), OffsetSetClass::Infinite);
    assert_eq!(coarse_via_fbg(&fbg), coarse_blocks(&sigma).unwrap().emblem);
}

fn type_x(a: i64) -> LeadTimeVector {
    LeadTimeVector(vec![0, 0, 2, 4 + a])
}
fn type_y(a: i64) -> LeadTimeVector {
    LeadTimeVector(vec![0, 0, 3, 5 + a])
}
fn type_z(a: i64) -> LeadTimeVector {
    LeadTimeVector(vec![0, 1, 3, 5 + a])
}

#[test]
fn two_pendula_lead_time_set() {
    let fbg = build_fbg(&two_pendula()).unwrap();
    let listed = enumerate_normalised_lead_times(&fbg, 6);
    assert!(listed.truncated);
    let mut expect = vec![type_x(0), type_x(1), type_x(2), type_y(0), type_y(1), type_z(0), type_z(1)];
    expect.sort();
    assert_eq!(listed.vectors, expect);
    assert_eq!(oracle::normalized_lead_times_bruteforce(&fbg, 6).unwrap(), expect);
}

#[test]
fn two_pendula_offsets_from_lead_times() {
    let sigma = two_pendula();
    let fbg = build_fbg(&sigma).unwrap();
    let y = offsets_from_lead_times(&fbg, &type_y(0)).unwrap();
    assert_eq!(y, OffsetPair::new(vec![5, 5, 7, 0, 0, 3], vec![7, 7, 5, 3, 3, 0]));
    let z = offsets_from_lead_times(&fbg, &type_z(0)).unwrap();
    assert_eq!(z.c, [5, 5, 7, 1, 0, 3]);
    for k in [type_x(0), type_y(0), type_z(0), type_x(3), type_z(2)] {
        let off = offsets_from_lead_times(&fbg, &k).unwrap();
        assert!(check_offsets(&sigma, &off).unwrap().is_normalised);
        assert_eq!(lead_times(&fbg, &off.c).unwrap(), k);
    }
}

#[test]
fn two_pendula_block_orders() {
    let sigma = two_pendula();
    let fbg = build_fbg(&sigma).unwrap();
    let all = [type_x(0), type_x(1), type_y(0), type_y(1), type_z(0), type_z(1)];
    let patterns: Vec<SparsityPattern> = all
        .iter()
        .map(|k| jacobian_pattern(&sigma, &offsets_from_lead_times(&fbg, k).unwrap()).unwrap())
        .collect();
    for (a, pa) in patterns.iter().enumerate() {
        for pb in &patterns[a + 1..] {
            assert_ne!(pa, pb);
        }
    }

    for k in &all {
        assert!(!is_btf_order(&fbg, k, &[2, 1, 0, 3]).unwrap(), "{k:?}");
        assert!(critical_subgraph(&fbg, k).unwrap().is_acyclic());
    }
    assert!(is_btf_order(&fbg, &type_x(0), &[0, 1, 2, 3]).unwrap());
    assert!(is_btf_order(&fbg, &type_y(0), &[2, 0, 1, 3]).unwrap());
    assert!(!is_btf_order(&fbg, &type_y(0), &[0, 1, 2, 3]).unwrap());
    assert!(is_btf_order(&fbg, &type_z(0), &[1, 2, 0, 3]).unwrap());
    // Block 4 must follow block 3 only when a = 0.
    assert!(!is_btf_order(&fbg, &type_y(0), &[3, 2, 0, 1]).unwrap());
    assert!(is_btf_order(&fbg, &type_y(1), &[3, 2, 0, 1]).unwrap());
}
