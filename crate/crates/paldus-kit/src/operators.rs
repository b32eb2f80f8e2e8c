//! Sparse Pauli-string operator algebra on 2d qubits: Jordan-Wigner fermionic
//! operators, orbital/spin ladder operators, spin observables, Hamiltonian
//! builders, and the matchgate-structure checks.
//!
//! Qubit layout is interleaved (1up, 1down, 2up, 2down, ...). Bit 0 of a
//! basis-state integer is the leftmost label x_{1up}, i.e. the most
//! significant bit, so printed kets match the state tables digit for digit.

use crate::dense::{expm_i_hermitian, CMatrix, C_ONE, C_ZERO};
use num_complex::Complex64;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OperatorError {
    #[error("input matrix is not Hermitian (residual {0:.3e})")]
    NonHermitianInput(f64),
    #[error("qubit counts differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
}

pub const PRUNE_THRESHOLD: f64 = 1e-14;

/// One Pauli letter per qubit: 0=I, 1=X, 2=Y, 3=Z.
pub type PauliWord = Vec<u8>;

/// Complex linear combination of Pauli words on a fixed qubit count.
#[derive(Debug, Clone)]
pub struct SparseOperator {
    pub n_qubits: usize,
    pub terms: HashMap<PauliWord, Complex64>,
}

impl SparseOperator {
    pub fn zero(n_qubits: usize) -> Self {
        SparseOperator { n_qubits, terms: HashMap::new() }
    }

    pub fn identity(n_qubits: usize) -> Self {
        let mut terms = HashMap::new();
        terms.insert(vec![0u8; n_qubits], C_ONE);
        SparseOperator { n_qubits, terms }
    }

    pub fn from_terms(n_qubits: usize, list: Vec<(PauliWord, Complex64)>) -> Self {
        let mut op = SparseOperator::zero(n_qubits);
        for (w, c) in list {
            assert_eq!(w.len(), n_qubits);
            *op.terms.entry(w).or_insert(C_ZERO) += c;
        }
        op.prune();
        op
    }

    pub fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() > PRUNE_THRESHOLD);
    }

    pub fn add(&self, other: &SparseOperator) -> SparseOperator {
        assert_eq!(self.n_qubits, other.n_qubits);
        let mut out = self.clone();
        for (w, c) in &other.terms {
            *out.terms.entry(w.clone()).or_insert(C_ZERO) += c;
        }
        out.prune();
        out
    }

    pub fn sub(&self, other: &SparseOperator) -> SparseOperator {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> SparseOperator {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= s;
        }
        out.prune();
        out
    }

    pub fn mul(&self, other: &SparseOperator) -> SparseOperator {
        assert_eq!(self.n_qubits, other.n_qubits);
        let mut out = SparseOperator::zero(self.n_qubits);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let (word, phase) = pauli_word_product(wa, wb);
                *out.terms.entry(word).or_insert(C_ZERO) += ca * cb * phase;
            }
        }
        out.prune();
        out
    }

    pub fn adjoint(&self) -> SparseOperator {
        // Pauli words are Hermitian; conjugate the coefficients.
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.conj();
        }
        out
    }

    pub fn commutator(&self, other: &SparseOperator) -> SparseOperator {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn anticommutator(&self, other: &SparseOperator) -> SparseOperator {
        self.mul(other).add(&other.mul(self))
    }

    /// Largest coefficient magnitude; zero operator gives 0.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.sub(&self.adjoint()).max_abs() <= tol
    }

    /// Apply to a dense 2^n amplitude vector (bit 0 of the index = qubit 0 =
    /// most significant bit).
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let dim = 1usize << self.n_qubits;
        assert_eq!(v.len(), dim);
        let mut out = vec![C_ZERO; dim];
        for (word, coeff) in &self.terms {
            let mut flip = 0usize;
            for (q, &p) in word.iter().enumerate() {
                if p == 1 || p == 2 {
                    flip |= 1 << (self.n_qubits - 1 - q);
                }
            }
            for (idx, &amp) in v.iter().enumerate() {
                if amp == C_ZERO {
                    continue;
                }
                let mut phase = *coeff;
                for (q, &p) in word.iter().enumerate() {
                    let bit = (idx >> (self.n_qubits - 1 - q)) & 1;
                    match p {
                        2 => {
                            // Y|0> = i|1>, Y|1> = -i|0>
                            phase *= if bit == 0 {
                                Complex64::new(0.0, 1.0)
                            } else {
                                Complex64::new(0.0, -1.0)
                            };
                        }
                        3 => {
                            if bit == 1 {
                                phase = -phase;
                            }
                        }
                        _ => {}
                    }
                }
                out[idx ^ flip] += phase * amp;
            }
        }
        out
    }

    /// Dense matrix; guarded to d <= 5 worth of qubits.
    pub fn to_dense(&self) -> CMatrix {
        assert!(self.n_qubits <= 10, "dense materialization capped at 10 qubits");
        let dim = 1usize << self.n_qubits;
        let mut m = CMatrix::zeros(dim, dim);
        for col in 0..dim {
            let mut v = vec![C_ZERO; dim];
            v[col] = C_ONE;
            let w = self.apply(&v);
            for row in 0..dim {
                m[(row, col)] = w[row];
            }
        }
        m
    }
}

/// Single-qubit Pauli product table: returns (letter, phase) for a*b.
fn pauli_mul(a: u8, b: u8) -> (u8, Complex64) {
    const I: Complex64 = Complex64::new(0.0, 1.0);
    match (a, b) {
        (0, x) => (x, C_ONE),
        (x, 0) => (x, C_ONE),
        (x, y) if x == y => (0, C_ONE),
        (1, 2) => (3, I),
        (2, 1) => (3, -I),
        (2, 3) => (1, I),
        (3, 2) => (1, -I),
        (3, 1) => (2, I),
        (1, 3) => (2, -I),
        _ => unreachable!(),
    }
}

fn pauli_word_product(a: &[u8], b: &[u8]) -> (PauliWord, Complex64) {
    let mut word = Vec::with_capacity(a.len());
    let mut phase = C_ONE;
    for (&x, &y) in a.iter().zip(b) {
        let (l, p) = pauli_mul(x, y);
        word.push(l);
        phase *= p;
    }
    (word, phase)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Up,
    Down,
}

/// Qubit index of mode (i, mu) in the interleaved layout, 1-based orbital.
pub fn mode_qubit(i: usize, mu: Spin) -> usize {
    2 * (i - 1) + if mu == Spin::Up { 0 } else { 1 }
}

/// Jordan-Wigner creation/annihilation operator for mode (i, mu) on 2d qubits:
/// a Z string on all earlier modes followed by (X -+ iY)/2.
pub fn jw_op(i: usize, mu: Spin, dagger: bool, d: usize) -> SparseOperator {
    assert!((1..=d).contains(&i));
    let n = 2 * d;
    let q = mode_qubit(i, mu);
    let mut wx = vec![0u8; n];
    let mut wy = vec![0u8; n];
    for k in 0..q {
        wx[k] = 3;
        wy[k] = 3;
    }
    wx[q] = 1;
    wy[q] = 2;
    let ycoeff = if dagger {
        Complex64::new(0.0, -0.5)
    } else {
        Complex64::new(0.0, 0.5)
    };
    SparseOperator::from_terms(n, vec![(wx, Complex64::new(0.5, 0.0)), (wy, ycoeff)])
}

/// Orbital ladder operator E_ij = sum over spin of a+_{i mu} a_{j mu}.
pub fn ladder_e(i: usize, j: usize, d: usize) -> SparseOperator {
    let mut out = SparseOperator::zero(2 * d);
    for mu in [Spin::Up, Spin::Down] {
        out = out.add(&jw_op(i, mu, true, d).mul(&jw_op(j, mu, false, d)));
    }
    out
}

/// Spin ladder operator curly-E_{mu nu} = sum over orbitals of a+_{i mu} a_{i nu}.
pub fn ladder_e_spin(mu: Spin, nu: Spin, d: usize) -> SparseOperator {
    let mut out = SparseOperator::zero(2 * d);
    for i in 1..=d {
        out = out.add(&jw_op(i, mu, true, d).mul(&jw_op(i, nu, false, d)));
    }
    out
}

/// The commuting observables (N, 2M is not used here: M itself), with
/// S^2 = M(M + I) + curly-E_{down,up} curly-E_{up,down}.
pub fn observables(d: usize) -> (SparseOperator, SparseOperator, SparseOperator) {
    let mut n_hat = SparseOperator::zero(2 * d);
    for i in 1..=d {
        n_hat = n_hat.add(&ladder_e(i, i, d));
    }
    let m_hat = ladder_e_spin(Spin::Up, Spin::Up, d)
        .sub(&ladder_e_spin(Spin::Down, Spin::Down, d))
        .scale(Complex64::new(0.5, 0.0));
    let s2 = m_hat
        .mul(&m_hat.add(&SparseOperator::identity(2 * d)))
        .add(&ladder_e_spin(Spin::Down, Spin::Up, d).mul(&ladder_e_spin(Spin::Up, Spin::Down, d)));
    (n_hat, m_hat, s2)
}

/// Fermi-Hubbard chain in ladder-operator form:
/// -t sum (E_{i,i+1} + E_{i+1,i}) + U/2 sum (E_ii^2 - E_ii).
pub fn hubbard(d: usize, t: f64, u: f64, periodic: bool) -> SparseOperator {
    assert!(d >= 2);
    let mut h = SparseOperator::zero(2 * d);
    let mut bonds: Vec<(usize, usize)> = (1..d).map(|i| (i, i + 1)).collect();
    if periodic && d > 2 {
        bonds.push((d, 1));
    }
    for (i, j) in bonds {
        h = h.add(
            &ladder_e(i, j, d)
                .add(&ladder_e(j, i, d))
                .scale(Complex64::new(-t, 0.0)),
        );
    }
    for i in 1..=d {
        let eii = ladder_e(i, i, d);
        h = h.add(&eii.mul(&eii).sub(&eii).scale(Complex64::new(u / 2.0, 0.0)));
    }
    h
}

/// Spin-free Hamiltonian
/// sum h_ij E_ij + 1/2 sum v_{ij,kl} (E_ik E_jl - delta_jk E_il).
/// h is d x d (row-major complex), v is indexed v[i][j][k][l].
pub fn spinfree_hamiltonian(
    d: usize,
    h: &CMatrix,
    v: &[Vec<Vec<Vec<f64>>>],
) -> Result<SparseOperator, OperatorError> {
    assert_eq!(h.rows, d);
    assert_eq!(h.cols, d);
    let herm = h.hermiticity_residual();
    if herm > 1e-10 {
        return Err(OperatorError::NonHermitianInput(herm));
    }
    let mut out = SparseOperator::zero(2 * d);
    let e: Vec<Vec<SparseOperator>> = (1..=d)
        .map(|i| (1..=d).map(|j| ladder_e(i, j, d)).collect())
        .collect();
    for i in 0..d {
        for j in 0..d {
            out = out.add(&e[i][j].scale(h[(i, j)]));
        }
    }
    if !v.is_empty() {
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let coeff = v[i][j][k][l];
                        if coeff == 0.0 {
                            continue;
                        }
                        let mut term = e[i][k].mul(&e[j][l]);
                        if j == k {
                            term = term.sub(&e[i][l]);
                        }
                        out = out.add(&term.scale(Complex64::new(coeff / 2.0, 0.0)));
                    }
                }
            }
        }
    }
    let res = out.sub(&out.adjoint()).max_abs();
    if res > 1e-10 {
        return Err(OperatorError::NonHermitianInput(res));
    }
    Ok(out)
}

/// Draw a random spin-free Hamiltonian with real symmetric h and two-electron
/// coefficients with the chemists' symmetry v_{ij,kl} = v_{ji,lk} = v_{kj,il}
/// (real), which makes H Hermitian.
pub fn random_spinfree(d: usize, rng: &mut impl rand::Rng) -> SparseOperator {
    let mut h = CMatrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let x = rng.gen_range(-1.0..1.0);
            h[(i, j)] = Complex64::new(x, 0.0);
            h[(j, i)] = Complex64::new(x, 0.0);
        }
    }
    let mut v = vec![vec![vec![vec![0.0; d]; d]; d]; d];
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    if v[i][j][k][l] != 0.0 {
                        continue;
                    }
                    let x: f64 = rng.gen_range(-1.0..1.0);
                    // v_{ij,kl} multiplies a+_i a+_j a_l a_k; Hermiticity needs
                    // v_{ij,kl} = conj(v_{kl,ij}), and the label symmetry of the
                    // integral gives v_{ij,kl} = v_{ji,lk}.
                    v[i][j][k][l] = x;
                    v[j][i][l][k] = x;
                    v[k][l][i][j] = x;
                    v[l][k][j][i] = x;
                }
            }
        }
    }
    spinfree_hamiltonian(d, &h, &v).expect("symmetrized input is Hermitian")
}

/// Single-orbital number-conserving spin Hamiltonian parameters.
#[derive(Debug, Clone, Copy, Default)]
pub struct U2Params {
    pub alpha_x: f64,
    pub alpha_y: f64,
    pub alpha_z: f64,
    pub alpha_n: f64,
}

/// The 4x4 two-qubit gate W V: V is the SU(2) rotation embedded in the
/// {|01>,|10>} block and W = diag(1, e^{i aN/2}, e^{i aN/2}, e^{i aN}).
pub fn wv_gate(p: U2Params) -> CMatrix {
    // Single-orbital spin + number Hamiltonian on the modes (up, down).
    let h1 = single_orbital_hamiltonian(p);
    let spin_only = single_orbital_hamiltonian(U2Params { alpha_n: 0.0, ..p });
    let v = expm_i_hermitian(&spin_only, 1.0);
    let mut w = CMatrix::zeros(4, 4);
    w[(0, 0)] = C_ONE;
    w[(1, 1)] = Complex64::from_polar(1.0, p.alpha_n / 2.0);
    w[(2, 2)] = Complex64::from_polar(1.0, p.alpha_n / 2.0);
    w[(3, 3)] = Complex64::from_polar(1.0, p.alpha_n);
    let wv = w.mul(&v);
    // The two factors commute, so WV = exp(i h1); keep that as a debug check.
    debug_assert!(wv.sub(&expm_i_hermitian(&h1, 1.0)).max_abs() < 1e-9);
    wv
}

fn single_orbital_hamiltonian(p: U2Params) -> CMatrix {
    let (n_hat, m_hat, _) = observables(1);
    let sx = ladder_e_spin(Spin::Up, Spin::Down, 1)
        .add(&ladder_e_spin(Spin::Down, Spin::Up, 1))
        .scale(Complex64::new(0.5, 0.0));
    let sy = ladder_e_spin(Spin::Down, Spin::Up, 1)
        .sub(&ladder_e_spin(Spin::Up, Spin::Down, 1))
        .scale(Complex64::new(0.0, 0.5));
    let h = sx
        .scale(Complex64::new(p.alpha_x, 0.0))
        .add(&sy.scale(Complex64::new(p.alpha_y, 0.0)))
        .add(&m_hat.scale(Complex64::new(p.alpha_z, 0.0)))
        .add(&n_hat.scale(Complex64::new(p.alpha_n / 2.0, 0.0)));
    h.to_dense()
}

/// Collective spin + number Hamiltonian aX Sx + aY Sy + aZ Sz + aN N/2 on 2d qubits.
pub fn u2_hamiltonian(d: usize, p: U2Params) -> SparseOperator {
    let (n_hat, m_hat, _) = observables(d);
    let sx = ladder_e_spin(Spin::Up, Spin::Down, d)
        .add(&ladder_e_spin(Spin::Down, Spin::Up, d))
        .scale(Complex64::new(0.5, 0.0));
    let sy = ladder_e_spin(Spin::Down, Spin::Up, d)
        .sub(&ladder_e_spin(Spin::Up, Spin::Down, d))
        .scale(Complex64::new(0.0, 0.5));
    sx.scale(Complex64::new(p.alpha_x, 0.0))
        .add(&sy.scale(Complex64::new(p.alpha_y, 0.0)))
        .add(&m_hat.scale(Complex64::new(p.alpha_z, 0.0)))
        .add(&n_hat.scale(Complex64::new(p.alpha_n / 2.0, 0.0)))
}

/// (WV)^{tensor d}: the collective u(2) evolution as a dense 4^d matrix.
pub fn u2_evolution(d: usize, p: U2Params) -> CMatrix {
    let wv = wv_gate(p);
    let mut out = CMatrix::identity(1);
    for _ in 0..d {
        out = out.kron(&wv);
    }
    out
}

/// Determinant condition det(A) = det(B) for a parity-preserving 4x4 gate,
/// where A is the even block {|00>,|11>} and B the odd block {|01>,|10>}.
pub fn matchgate_residual(g: &CMatrix) -> f64 {
    let det_a = g[(0, 0)] * g[(3, 3)] - g[(0, 3)] * g[(3, 0)];
    let det_b = g[(1, 1)] * g[(2, 2)] - g[(1, 2)] * g[(2, 1)];
    let mut parity_leak = 0.0f64;
    for &(r, c) in &[(0, 1), (0, 2), (1, 0), (2, 0), (3, 1), (3, 2), (1, 3), (2, 3)] {
        parity_leak = parity_leak.max(g[(r, c)].norm());
    }
    (det_a - det_b).norm().max(parity_leak)
}

/// Mode-reordering permutation with fermionic signs taking the interleaved
/// layout (1up,1down,...,dup,ddown) to (1up..dup, 1down..ddown), built as a
/// product of adjacent fSWAP gates.
pub fn fswap_reorder(d: usize) -> CMatrix {
    let n = 2 * d;
    let dim = 1usize << n;
    // Current wire content, as mode ids in the interleaved order; bubble-sort
    // into the blocked order, applying an fSWAP for each adjacent transposition.
    let target: Vec<usize> = (0..d)
        .map(|i| 2 * i)
        .chain((0..d).map(|i| 2 * i + 1))
        .collect();
    let mut wires: Vec<usize> = (0..n).collect();
    let mut out = CMatrix::identity(dim);
    let pos_in_target: Vec<usize> = {
        let mut p = vec![0; n];
        for (slot, &m) in target.iter().enumerate() {
            p[m] = slot;
        }
        p
    };
    let mut swapped = true;
    while swapped {
        swapped = false;
        for w in 0..n - 1 {
            if pos_in_target[wires[w]] > pos_in_target[wires[w + 1]] {
                wires.swap(w, w + 1);
                out = apply_fswap(&out, n, w);
                swapped = true;
            }
        }
    }
    out
}

/// Left-multiply by the fSWAP on adjacent qubits (q, q+1): swap with a minus
/// sign on |11>.
fn apply_fswap(m: &CMatrix, n_qubits: usize, q: usize) -> CMatrix {
    let dim = m.rows;
    let b_hi = n_qubits - 1 - q;
    let b_lo = n_qubits - 2 - q;
    let mut out = CMatrix::zeros(dim, dim);
    for row in 0..dim {
        let hi = (row >> b_hi) & 1;
        let lo = (row >> b_lo) & 1;
        let (src, sign) = if hi != lo {
            (row ^ (1 << b_hi) ^ (1 << b_lo), 1.0)
        } else if hi == 1 {
            (row, -1.0)
        } else {
            (row, 1.0)
        };
        for col in 0..dim {
            out[(row, col)] = m[(src, col)].scale(sign);
        }
    }
    out
}

/// Coefficients of a Hermitian element of the orbital rotation algebra:
/// H = sum_{i<j} (b_ij (E_ij+E_ji)/2 + c_ij i(E_ij-E_ji)/2) + sum_i a_i E_ii.
#[derive(Debug, Clone)]
pub struct UdCoefficients {
    pub diag: Vec<f64>,
    pub sym: Vec<Vec<f64>>,
    pub antisym: Vec<Vec<f64>>,
}

pub fn ud_hamiltonian(d: usize, beta: &UdCoefficients) -> SparseOperator {
    let mut h = SparseOperator::zero(2 * d);
    for i in 1..=d {
        h = h.add(&ladder_e(i, i, d).scale(Complex64::new(beta.diag[i - 1], 0.0)));
    }
    for i in 1..=d {
        for j in (i + 1)..=d {
            let eij = ladder_e(i, j, d);
            let eji = ladder_e(j, i, d);
            let f_sym = eij.add(&eji).scale(Complex64::new(0.5, 0.0));
            let f_anti = eij.sub(&eji).scale(Complex64::new(0.0, 0.5));
            h = h
                .add(&f_sym.scale(Complex64::new(beta.sym[i - 1][j - 1], 0.0)))
                .add(&f_anti.scale(Complex64::new(beta.antisym[i - 1][j - 1], 0.0)));
        }
    }
    h
}

/// Operator-Schmidt residual of sigma exp(iH) sigma^dagger across the cut
/// (first d qubits | last d qubits) after the fSWAP reordering: the relative
/// weight outside the leading product term. Near zero certifies a G (x) G
/// factorization.
pub fn ud_factor_check(d: usize, beta: &UdCoefficients) -> f64 {
    let h = ud_hamiltonian(d, beta);
    let u = expm_i_hermitian(&h.to_dense(), 1.0);
    let sigma = fswap_reorder(d);
    let m = sigma.mul(&u).mul(&sigma.adjoint());
    operator_schmidt_residual(&m, d)
}

/// Residual sqrt(1 - s1^2 / |M|_F^2) of the reshuffled operator across the
/// (first half | second half) qubit cut.
pub fn operator_schmidt_residual(m: &CMatrix, d_cut: usize) -> f64 {
    let d1 = 1usize << d_cut;
    let d2 = m.rows / d1;
    let mut r = CMatrix::zeros(d1 * d1, d2 * d2);
    for a in 0..d1 {
        for b in 0..d2 {
            for c in 0..d1 {
                for e in 0..d2 {
                    r[(a * d1 + c, b * d2 + e)] = m[(a * d2 + b, c * d2 + e)];
                }
            }
        }
    }
    let norm = r.frobenius_norm();
    if norm == 0.0 {
        return 0.0;
    }
    // Deflate the dominant singular triple and measure what is left. Working
    // with the remainder matrix directly avoids the catastrophic cancellation
    // of 1 - s1^2/|R|^2 when R is (numerically) rank one.
    let (sigma, u, v) = dominant_singular_triple(&r);
    let mut remainder = 0.0f64;
    for i in 0..r.rows {
        for j in 0..r.cols {
            let predicted = u[i] * Complex64::new(sigma, 0.0) * v[j].conj();
            remainder += (r[(i, j)] - predicted).norm_sqr();
        }
    }
    remainder.sqrt() / norm
}

/// Largest singular value and its left/right singular vectors, by power
/// iteration on R^dag R.
fn dominant_singular_triple(r: &CMatrix) -> (f64, Vec<Complex64>, Vec<Complex64>) {
    let rt = r.adjoint();
    // Deterministic, dense start vector.
    let mut v: Vec<Complex64> = (0..r.cols)
        .map(|j| Complex64::new(1.0, (j as f64 + 1.0).sin()))
        .collect();
    let mut last = 0.0f64;
    for _ in 0..10_000 {
        let w = rt.matvec(&r.matvec(&v));
        let norm: f64 = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            break;
        }
        v = w.iter().map(|x| x / norm).collect();
        if (norm - last).abs() <= 1e-30 + 1e-16 * norm {
            break;
        }
        last = norm;
    }
    let rv = r.matvec(&v);
    let sigma: f64 = rv.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if sigma == 0.0 {
        return (0.0, vec![Complex64::new(0.0, 0.0); r.rows], v);
    }
    let u: Vec<Complex64> = rv.iter().map(|x| x / sigma).collect();
    (sigma, u, v)
}
