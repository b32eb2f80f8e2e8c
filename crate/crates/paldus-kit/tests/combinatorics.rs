use num_bigint::BigUint;
use num_traits::ToPrimitive;
use paldus_kit::combinatorics::*;

#[test]
fn step_vector_parsing_and_display() {
    let s = StepVector::parse("10,01").unwrap();
    assert_eq!(s.d(), 2);
    assert_eq!(s.digits(), vec![1, 2]);
    assert_eq!(s.to_string(), "10,01");
    let t = StepVector::parse("1001").unwrap();
    assert_eq!(s, t);
    assert!(StepVector::parse("10,0").is_err());
    assert!(StepVector::parse("10,0x").is_err());
}

#[test]
fn invalid_prefix_rejected() {
    // Starting with a down step drives the intermediate spin negative.
    assert!(StepVector::parse("01").is_err());
    assert!(StepVector::parse("00,01,10").is_err());
    assert!(validate_step_vector(&[false, true]).unwrap() == false);
    assert!(validate_step_vector(&[true, false]).unwrap());
}

#[test]
fn step_quantum_numbers() {
    let s = StepVector::parse("10,10,01").unwrap();
    assert_eq!(s.n_particles(), 3);
    assert_eq!(s.two_s(), 1);
    assert_eq!(s.prefix_two_s(), vec![1, 2, 1]);
    let walk = s.walk();
    assert_eq!(walk[3].n_particles(), 3);
    assert_eq!(walk[3].two_s(), 1);
}

#[test]
fn triple_branching_rules() {
    let t = AbcTriple::zero();
    let t = apply_step(t, 1).unwrap();
    assert_eq!((t.a, t.b, t.c), (0, 1, 0));
    let t = apply_step(t, 2).unwrap();
    assert_eq!((t.a, t.b, t.c), (1, 0, 1));
    assert_eq!(apply_step(t, 2), Err(CombinatoricsError::InvalidBranch));
    let t = apply_step(t, 3).unwrap();
    assert_eq!((t.a, t.b, t.c), (2, 0, 1));
    assert_eq!(t.n_particles(), 4);
}

#[test]
fn label_validation() {
    let s = StepVector::parse("10,10").unwrap();
    assert!(UgaLabel::new(s.clone(), 2).is_ok());
    assert!(UgaLabel::new(s.clone(), 1).is_err()); // wrong parity
    assert!(UgaLabel::new(s, 4).is_err()); // out of range
}

#[test]
fn enumeration_counts_match_catalan_like_totals() {
    // C(2d+1, d) valid step vectors.
    for (d, expected) in [(1usize, 3u64), (2, 10), (3, 35), (4, 126), (5, 462)] {
        assert_eq!(enumerate_step_vectors(d, None).len() as u64, expected);
        assert_eq!(total_step_vectors(d).to_u64().unwrap(), expected);
    }
}

#[test]
fn enumeration_is_sorted_and_filterable() {
    let all = enumerate_step_vectors(3, None);
    let mut sorted = all.clone();
    sorted.sort();
    assert_eq!(all, sorted);
    let sector = enumerate_step_vectors(3, Some((3, 1)));
    assert!(sector.iter().all(|v| v.n_particles() == 3 && v.two_s() == 1));
    assert_eq!(sector.len() as u64, dim_irrep(3, 1, 3).to_u64().unwrap());
}

#[test]
fn frozen_sector_dimensions() {
    // d=2, N=2, 2S=0: three singlet configurations.
    assert_eq!(dim_irrep(2, 0, 2).to_u64().unwrap(), 3);
    // d=2, N=2, 2S=2: one triplet configuration.
    assert_eq!(dim_irrep(2, 2, 2).to_u64().unwrap(), 1);
    // d=3, N=3, 2S=1: the eight doublets.
    assert_eq!(dim_irrep(3, 1, 3).to_u64().unwrap(), 8);
    // Off the grid.
    assert_eq!(dim_irrep(2, 1, 2).to_u64().unwrap(), 0);
    assert_eq!(dim_irrep(2, 3, 2).to_u64().unwrap(), 0);
}

#[test]
fn both_closed_forms_agree_on_a_grid() {
    for d in 1..=12usize {
        for two_s in 0..=d {
            for n in (two_s..=2 * d - two_s).step_by(2) {
                assert_eq!(dim_irrep(d, two_s, n), dim_irrep_weyl(d, two_s, n));
            }
        }
    }
}

#[test]
fn spin_sector_totals_telescope() {
    for d in 1..=10usize {
        let total: BigUint = (0..=d).map(|s| dim_spin_sector(d, s)).sum();
        assert_eq!(total, total_step_vectors(d));
    }
}

#[test]
fn identity_report_holds_through_d8() {
    for d in 1..=8 {
        let report = dimension_identities(d).unwrap();
        assert_eq!(report.d, d);
        let weighted: u64 = report
            .sectors
            .iter()
            .map(|&(_, two_s, dim)| (two_s as u64 + 1) * dim)
            .sum();
        assert_eq!(weighted, 4u64.pow(d as u32));
    }
}

#[test]
fn binomial_edge_cases() {
    assert_eq!(binomial(5, -1).to_u64().unwrap(), 0);
    assert_eq!(binomial(5, 6).to_u64().unwrap(), 0);
    assert_eq!(binomial(0, 0).to_u64().unwrap(), 1);
    assert_eq!(binomial(52, 5).to_u64().unwrap(), 2598960);
}
