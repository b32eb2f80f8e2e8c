use num_complex::Complex64;
use paldus_kit::dense::{expm_i_hermitian, CMatrix, C_ONE};
use paldus_kit::operators::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[test]
fn canonical_anticommutation_relations() {
    let d = 2;
    let modes: Vec<(usize, Spin)> = (1..=d)
        .flat_map(|i| [(i, Spin::Up), (i, Spin::Down)])
        .collect();
    for &(i, mu) in &modes {
        for &(j, nu) in &modes {
            let a_i = jw_op(i, mu, false, d);
            let adag_j = jw_op(j, nu, true, d);
            let a_j = jw_op(j, nu, false, d);
            // {a_i, a_j} = 0
            assert!(a_i.anticommutator(&a_j).max_abs() < 1e-14);
            // {a_i, a+_j} = delta_ij
            let mut expect = SparseOperator::zero(2 * d);
            if (i, mu) == (j, nu) {
                expect = SparseOperator::identity(2 * d);
            }
            assert!(a_i.anticommutator(&adag_j).sub(&expect).max_abs() < 1e-14);
        }
    }
}

#[test]
fn creation_operator_matrix_on_one_orbital() {
    // a+_{1 up} at d=1 maps |00> -> |10> and |01> -> |11> with plus signs.
    let m = jw_op(1, Spin::Up, true, 1).to_dense();
    assert!((m[(0b10, 0b00)] - C_ONE).norm() < 1e-15);
    assert!((m[(0b11, 0b01)] - C_ONE).norm() < 1e-15);
    // a+_{1 down} picks up the Jordan-Wigner sign past an occupied up mode.
    let m = jw_op(1, Spin::Down, true, 1).to_dense();
    assert!((m[(0b01, 0b00)] - C_ONE).norm() < 1e-15);
    assert!((m[(0b11, 0b10)] + C_ONE).norm() < 1e-15);
}

#[test]
fn ladder_commutators_close_the_algebra() {
    for d in [2usize, 3] {
        for i in 1..=d {
            for j in 1..=d {
                for k in 1..=d {
                    for l in 1..=d {
                        let lhs = ladder_e(i, j, d).commutator(&ladder_e(k, l, d));
                        let mut rhs = SparseOperator::zero(2 * d);
                        if j == k {
                            rhs = rhs.add(&ladder_e(i, l, d));
                        }
                        if i == l {
                            rhs = rhs.sub(&ladder_e(k, j, d));
                        }
                        assert!(
                            lhs.sub(&rhs).max_abs() < 1e-12,
                            "[E{i}{j}, E{k}{l}] at d={d}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn spin_and_orbital_ladders_commute() {
    let d = 2;
    for i in 1..=d {
        for j in 1..=d {
            for mu in [Spin::Up, Spin::Down] {
                for nu in [Spin::Up, Spin::Down] {
                    let comm = ladder_e(i, j, d).commutator(&ladder_e_spin(mu, nu, d));
                    assert!(comm.max_abs() < 1e-13);
                }
            }
        }
    }
}

#[test]
fn observables_commute_and_have_correct_spectra() {
    let d = 2;
    let (n_hat, m_hat, s2) = observables(d);
    assert!(n_hat.commutator(&m_hat).max_abs() < 1e-13);
    assert!(n_hat.commutator(&s2).max_abs() < 1e-13);
    assert!(m_hat.commutator(&s2).max_abs() < 1e-13);
    // N is diagonal with Hamming-weight eigenvalues.
    let nd = n_hat.to_dense();
    for b in 0..16usize {
        assert!((nd[(b, b)] - c(b.count_ones() as f64)).norm() < 1e-13);
    }
    // S^2 on the two-electron antisymmetric combination vanishes.
    let s2d = s2.to_dense();
    let mut singlet = vec![Complex64::new(0.0, 0.0); 16];
    singlet[0b1001] = c(1.0 / 2f64.sqrt());
    singlet[0b0110] = c(-1.0 / 2f64.sqrt());
    let image = s2d.matvec(&singlet);
    assert!(image.iter().map(|x| x.norm()).fold(0.0, f64::max) < 1e-13);
}

#[test]
fn hubbard_is_hermitian_and_counts_double_occupancy() {
    let h = hubbard(2, 1.0, 4.0, false);
    assert!(h.is_hermitian(1e-13));
    let hd = h.to_dense();
    // |1100>: one doubly occupied site -> interaction energy U.
    assert!((hd[(0b1100, 0b1100)] - c(4.0)).norm() < 1e-12);
    // |1010>: no double occupancy.
    assert!(hd[(0b1010, 0b1010)].norm() < 1e-12);
    // Hopping element between |1000> and |0010> is -t.
    assert!((hd[(0b0010, 0b1000)] - c(-1.0)).norm() < 1e-12);
}

#[test]
fn random_spinfree_hamiltonians_conserve_spin_and_number() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let d = 2;
    let (n_hat, _, s2) = observables(d);
    for _ in 0..20 {
        let h = random_spinfree(d, &mut rng);
        assert!(h.is_hermitian(1e-10));
        assert!(h.commutator(&n_hat).max_abs() < 1e-10);
        assert!(h.commutator(&s2).max_abs() < 1e-10);
    }
}

#[test]
fn spinfree_rejects_non_hermitian_input() {
    let mut h1 = CMatrix::zeros(2, 2);
    h1[(0, 1)] = c(1.0);
    assert!(matches!(
        spinfree_hamiltonian(2, &h1, &[]),
        Err(OperatorError::NonHermitianInput(_))
    ));
}

#[test]
fn wv_gate_is_a_matchgate_and_generates_the_collective_evolution() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..5 {
        let p = U2Params {
            alpha_x: rng.gen_range(-2.0..2.0),
            alpha_y: rng.gen_range(-2.0..2.0),
            alpha_z: rng.gen_range(-2.0..2.0),
            alpha_n: rng.gen_range(-2.0..2.0),
        };
        let wv = wv_gate(p);
        assert!(matchgate_residual(&wv) < 1e-10);
        // Unitary.
        let gram = wv.adjoint().mul(&wv);
        assert!(gram.sub(&CMatrix::identity(4)).max_abs() < 1e-10);
        for d in [2usize, 3] {
            let lhs = u2_evolution(d, p);
            let rhs = expm_i_hermitian(&u2_hamiltonian(d, p).to_dense(), 1.0);
            assert!(lhs.sub(&rhs).max_abs() < 1e-9, "d={d}");
        }
    }
}

#[test]
fn fswap_reordering_is_unitary_and_blocks_the_cut() {
    for d in [2usize, 3] {
        let sigma = fswap_reorder(d);
        let dim = 1usize << (2 * d);
        let gram = sigma.adjoint().mul(&sigma);
        assert!(gram.sub(&CMatrix::identity(dim)).max_abs() < 1e-12);
        // Each column is a signed basis vector (a signed permutation).
        for col in 0..dim {
            let hits: Vec<f64> = (0..dim).map(|r| sigma[(r, col)].norm()).filter(|&x| x > 1e-12).collect();
            assert_eq!(hits.len(), 1);
        }
    }
}

#[test]
fn orbital_rotations_factor_across_the_spin_cut() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for d in [2usize, 3] {
        for _ in 0..10 {
            let beta = random_ud(&mut rng, d);
            let residual = ud_factor_check(d, &beta);
            assert!(residual < 1e-9, "d={d}: residual {residual}");
        }
    }
}

fn random_ud(rng: &mut ChaCha8Rng, d: usize) -> UdCoefficients {
    let diag = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut sym = vec![vec![0.0; d]; d];
    let mut antisym = vec![vec![0.0; d]; d];
    for i in 0..d {
        for j in (i + 1)..d {
            sym[i][j] = rng.gen_range(-1.0..1.0);
            antisym[i][j] = rng.gen_range(-1.0..1.0);
        }
    }
    UdCoefficients { diag, sym, antisym }
}

#[test]
fn operator_schmidt_residual_detects_entangling_gates() {
    // CNOT written across the cut is not a product operator.
    let mut cnot = CMatrix::zeros(4, 4);
    cnot[(0, 0)] = C_ONE;
    cnot[(1, 1)] = C_ONE;
    cnot[(2, 3)] = C_ONE;
    cnot[(3, 2)] = C_ONE;
    assert!(operator_schmidt_residual(&cnot, 1) > 0.5);
    // A tensor product has residual zero.
    let mut z = CMatrix::identity(2);
    z[(1, 1)] = c(-1.0);
    let zz = z.kron(&z);
    assert!(operator_schmidt_residual(&zz, 1) < 1e-12);
}

#[test]
fn apply_matches_dense_materialization() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let d = 2;
    let h = random_spinfree(d, &mut rng);
    let dense = h.to_dense();
    let v: Vec<Complex64> = (0..16)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let a = h.apply(&v);
    let b = dense.matvec(&v);
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).norm() < 1e-12);
    }
}
