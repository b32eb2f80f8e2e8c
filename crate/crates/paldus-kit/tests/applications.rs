use num_complex::Complex64;
use paldus_kit::applications::*;
use paldus_kit::combinatorics::enumerate_step_vectors;
use paldus_kit::dense::C_ZERO;
use paldus_kit::gtstates::{build_gt_state, gt_basis_oracle};
use paldus_kit::operators::{hubbard, random_spinfree, U2Params};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[test]
fn spin_projection_of_a_pure_singlet_is_certain() {
    let singlet = {
        let mut v = vec![C_ZERO; 16];
        v[0b1001] = c(1.0 / 2f64.sqrt());
        v[0b0110] = c(-1.0 / 2f64.sqrt());
        v
    };
    let (p, post) = project_spin(&singlet, 2, 0).unwrap();
    assert!((p - 1.0).abs() < 1e-10);
    let overlap: Complex64 = post
        .iter()
        .zip(&singlet)
        .map(|(a, b)| b.conj() * a)
        .sum();
    assert!((overlap.norm() - 1.0).abs() < 1e-10);
}

#[test]
fn open_shell_determinant_is_half_singlet() {
    let mut det = vec![C_ZERO; 16];
    det[0b1001] = c(1.0);
    let (p, post) = project_spin(&det, 2, 0).unwrap();
    assert!((p - 0.5).abs() < 1e-10);
    // The projected state is the singlet.
    assert!((post[0b1001].re - 1.0 / 2f64.sqrt()).abs() < 1e-9);
    assert!((post[0b0110].re + 1.0 / 2f64.sqrt()).abs() < 1e-9);
    // Projecting again changes nothing.
    let (p2, post2) = project_spin(&post, 2, 0).unwrap();
    assert!((p2 - 1.0).abs() < 1e-10);
    let overlap: Complex64 = post2.iter().zip(&post).map(|(a, b)| b.conj() * a).sum();
    assert!((overlap.norm() - 1.0).abs() < 1e-10);
}

#[test]
fn spin_sector_probabilities_are_complete() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let d = 2;
    let mut state: Vec<Complex64> = (0..16)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm: f64 = state.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut state {
        *a /= norm;
    }
    let mut total = 0.0;
    for two_s in 0..=d {
        match project_spin(&state, d, two_s) {
            Ok((p, _)) => total += p,
            Err(ApplicationError::ZeroNorm(p)) => total += p,
            Err(e) => panic!("{e}"),
        }
    }
    assert!((total - 1.0).abs() < 1e-10);
}

#[test]
fn csf_preparation_probabilities_and_state() {
    for (d, expected) in [(1usize, 0.75f64), (2, 0.625)] {
        let result = prepare_uniform_csf(d, 99);
        assert!(
            (result.success_probability - expected).abs() < 1e-12,
            "d={d}: {}",
            result.success_probability
        );
        let target = uniform_csf_state(d);
        let overlap = result.state.inner(&target).norm();
        assert!(overlap > 1.0 - 1e-9, "d={d}: overlap {overlap}");
    }
}

#[test]
fn csf_acceptance_statistics_within_three_sigma() {
    for d in [1usize, 2] {
        let trials = 10_000;
        let accepted = csf_prep_trials(d, trials, 1234);
        let p = prepare_uniform_csf(d, 0).success_probability;
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        let rate = accepted as f64 / trials as f64;
        assert!(
            (rate - p).abs() <= 3.0 * sigma,
            "d={d}: rate {rate} expected {p} sigma {sigma}"
        );
    }
}

#[test]
fn dfs_roundtrip_protects_random_payloads() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let d = 2;
    let (n, two_s) = (2usize, 0usize);
    let dim = enumerate_step_vectors(d, Some((n, two_s))).len();
    assert_eq!(dim, 3);
    for _ in 0..10 {
        let payload: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let noise = U2Params {
            alpha_x: rng.gen_range(-3.0..3.0),
            alpha_y: rng.gen_range(-3.0..3.0),
            alpha_z: rng.gen_range(-3.0..3.0),
            alpha_n: rng.gen_range(-3.0..3.0),
        };
        let result = dfs_roundtrip(d, n, two_s, &payload, noise).unwrap();
        assert!(result.fidelity > 1.0 - 1e-9, "fidelity {}", result.fidelity);
    }
    // Zero noise round-trips exactly.
    let payload = vec![c(1.0), c(0.0), c(0.0)];
    let result = dfs_roundtrip(d, n, two_s, &payload, U2Params::default()).unwrap();
    assert!(result.fidelity > 1.0 - 1e-11);
}

#[test]
fn dfs_number_noise_is_a_sector_phase() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let d = 2;
    let (n, two_s) = (2usize, 0usize);
    let payload: Vec<Complex64> = (0..3)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let base = U2Params {
        alpha_x: 0.4,
        alpha_y: -0.9,
        alpha_z: 1.3,
        alpha_n: 0.0,
    };
    let noisy = U2Params { alpha_n: 1.7, ..base };
    let a = dfs_roundtrip(d, n, two_s, &payload, base).unwrap();
    let b = dfs_roundtrip(d, n, two_s, &payload, noisy).unwrap();
    let phase = a.output.inner(&b.output);
    let expected = Complex64::from_polar(1.0, n as f64 * noisy.alpha_n / 2.0);
    assert!((phase - expected).norm() < 1e-9, "{phase} vs {expected}");
}

#[test]
fn dfs_rejects_bad_payloads() {
    assert!(matches!(
        dfs_roundtrip(2, 2, 0, &[c(1.0)], U2Params::default()),
        Err(ApplicationError::InvalidPayload)
    ));
}

#[test]
fn ladder_matrix_elements_respect_structure() {
    for (i, j) in [(1usize, 1usize), (1, 2), (2, 1)] {
        let result = uga_matrix_elements(2, i, j);
        assert!(result.max_selection_violation < 1e-10, "E_{i}{j}");
        assert!(result.max_locality_violation < 1e-10, "E_{i}{j}");
    }
}

#[test]
fn diagonal_elements_count_orbital_occupation() {
    let result = uga_matrix_elements(2, 1, 1);
    for (idx, label) in result.labels.iter().enumerate() {
        let occ = match label.step.digit(1) {
            0 => 0.0,
            3 => 2.0,
            _ => 1.0,
        };
        assert!((result.matrix[(idx, idx)].re - occ).abs() < 1e-10);
    }
}

#[test]
fn hopping_couples_singlet_configurations() {
    // E_12 connects the closed-shell and open-shell two-electron singlets.
    let result = uga_matrix_elements(2, 1, 2);
    let basis = gt_basis_oracle(2);
    let from = basis
        .iter()
        .position(|(l, _)| l.step.to_string() == "00,11" && l.two_m == 0)
        .unwrap();
    let to = basis
        .iter()
        .position(|(l, _)| l.step.to_string() == "10,01" && l.two_m == 0)
        .unwrap();
    assert!(result.matrix[(to, from)].norm() > 0.1);
}

#[test]
fn evolution_of_symmetric_hamiltonians_is_block_diagonal() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let d = 2;
    for _ in 0..3 {
        let h = random_spinfree(d, &mut rng);
        let (labels, m) = evolution_in_gt_basis(d, &h, 1.0);
        let (cross, cross_m, spread) = block_structure_residuals(&labels, &m);
        assert!(cross < 1e-9, "cross-sector {cross}");
        assert!(cross_m < 1e-9);
        assert!(spread < 1e-9);
    }
    let h = hubbard(2, 1.0, 4.0, false);
    let (labels, m) = evolution_in_gt_basis(2, &h, 0.7);
    let (cross, cross_m, spread) = block_structure_residuals(&labels, &m);
    assert!(cross < 1e-9 && cross_m < 1e-9 && spread < 1e-9);
}

#[test]
fn register_statistics_match_direct_occupation_statistics() {
    // The N-register distribution after the transform equals the
    // Hamming-weight distribution of the input.
    use paldus_kit::circuit::{apply_circuit, paldus_circuit, RegisterLayout, StateVector};
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let d = 2;
    let layout = RegisterLayout::new(d);
    let mut occ: Vec<Complex64> = (0..16)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm: f64 = occ.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut occ {
        *a /= norm;
    }
    let mut direct = vec![0.0f64; 2 * d + 1];
    for (bits, a) in occ.iter().enumerate() {
        direct[bits.count_ones() as usize] += a.norm_sqr();
    }
    let mut state = StateVector {
        width: layout.width(),
        amps: vec![C_ZERO; 1 << layout.width()],
    };
    state.amps[..16].copy_from_slice(&occ);
    apply_circuit(&paldus_circuit(d, true, false), &mut state).unwrap();
    let shift = layout.n_s + layout.n_m + 2 * d;
    let mut from_register = vec![0.0f64; 1 << layout.n_n];
    for (idx, a) in state.amps.iter().enumerate() {
        from_register[idx >> shift] += a.norm_sqr();
    }
    for n in 0..=2 * d {
        assert!((direct[n] - from_register[n]).abs() < 1e-10, "N={n}");
    }
}

#[test]
fn oracle_and_labels_agree_on_state_identity() {
    // The encoded singlet decodes to the oracle singlet through the label API.
    let basis = gt_basis_oracle(2);
    let (label, state) = basis
        .iter()
        .find(|(l, _)| l.step.to_string() == "10,01")
        .unwrap();
    let rebuilt = build_gt_state(label).unwrap();
    assert!((state.overlap(&rebuilt) - 1.0).abs() < 1e-12);
}
