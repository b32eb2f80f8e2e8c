//! Protocols built on the transform: spin projection, uniform CSF
//! preparation, the decoherence-free round trip, and ladder-operator matrix
//! elements in the spin-adapted basis.

use crate::circuit::{
    apply_circuit, apply_gate, inc_m, inc_n, inc_s, paldus_circuit, Gate, GateKind,
    RegisterLayout, StateVector,
};
use crate::combinatorics::{enumerate_step_vectors, StepVector, UgaLabel};
use crate::dense::{expm_i_hermitian, CMatrix, C_ZERO};
use crate::gtstates::gt_basis_oracle;
use crate::operators::{ladder_e, wv_gate, SparseOperator, U2Params};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ApplicationError {
    #[error("projection has vanishing norm (probability {0:.3e})")]
    ZeroNorm(f64),
    #[error("payload support crosses (N, 2S) sectors")]
    InvalidPayload,
    #[error(transparent)]
    Circuit(#[from] crate::circuit::CircuitError),
}

/// Embed a 2d-qubit occupation state into the full circuit width with the
/// registers cleared.
fn embed(layout: &RegisterLayout, occ: &[Complex64]) -> StateVector {
    let mut state = StateVector {
        width: layout.width(),
        amps: vec![C_ZERO; 1 << layout.width()],
    };
    state.amps[..occ.len()].copy_from_slice(occ);
    state
}

/// Extract the occupation factor, assuming all registers returned to zero;
/// the discarded weight is returned alongside.
fn extract(layout: &RegisterLayout, state: &StateVector) -> (Vec<Complex64>, f64) {
    let occ_dim = 1usize << (2 * layout.d);
    let kept = state.amps[..occ_dim].to_vec();
    let leak: f64 = state.amps[occ_dim..].iter().map(|a| a.norm_sqr()).sum();
    (kept, leak.sqrt())
}

/// Measure the total spin: transform, project the S register onto 2S,
/// transform back. Returns the outcome probability and the normalized
/// post-measurement occupation state.
pub fn project_spin(
    occ: &[Complex64],
    d: usize,
    two_s: usize,
) -> Result<(f64, Vec<Complex64>), ApplicationError> {
    let layout = RegisterLayout::new(d);
    let circuit = paldus_circuit(d, true, false);
    let mut state = embed(&layout, occ);
    apply_circuit(&circuit, &mut state)?;
    // Keep only amplitudes whose S register reads 2S.
    let shift = layout.n_m + 2 * d;
    let smask = ((1usize << layout.n_s) - 1) << shift;
    let sval = two_s << shift;
    for (idx, a) in state.amps.iter_mut().enumerate() {
        if idx & smask != sval {
            *a = C_ZERO;
        }
    }
    let prob = state.norm().powi(2);
    if prob < 1e-14 {
        return Err(ApplicationError::ZeroNorm(prob));
    }
    apply_circuit(&circuit.inverse(), &mut state)?;
    state.normalize();
    let (post, leak) = extract(&layout, &state);
    debug_assert!(leak < 1e-9);
    Ok((prob, post))
}

#[derive(Debug, Clone)]
pub struct CsfPrepResult {
    pub state: StateVector,
    pub attempts: usize,
    pub success_probability: f64,
}

fn hadamard(q: usize) -> Gate {
    Gate { kind: GateKind::Hadamard, targets: vec![q], controls: Vec::new() }
}

/// Probability of the M-register sign qubit reading 0, and the projected
/// (unnormalized) state.
fn project_sign_zero(layout: &RegisterLayout, state: &mut StateVector) -> f64 {
    let bit = 1usize << (layout.width() - 1 - layout.m_sign_qubit());
    let mut p0 = 0.0;
    for (idx, a) in state.amps.iter_mut().enumerate() {
        if idx & bit != 0 {
            *a = C_ZERO;
        } else {
            p0 += a.norm_sqr();
        }
    }
    p0
}

/// One pass of the preparation loop: Hadamard both qubits of each step pair,
/// accumulate the projection into the M register, and post-select its sign
/// qubit on 0 after every orbital. Returns the final unnormalized state and
/// the chain of conditional success probabilities; the product of the chain
/// is the exact per-run acceptance probability.
fn csf_attempt(
    layout: &RegisterLayout,
    rng: &mut Option<&mut ChaCha8Rng>,
) -> (StateVector, Vec<f64>, bool) {
    let mut state = StateVector::zero_state(layout.width());
    let mut chain = Vec::new();
    for i in 1..=layout.d {
        apply_gate(&hadamard(layout.step_hi(i)), &mut state).unwrap();
        apply_gate(&hadamard(layout.step_lo(i)), &mut state).unwrap();
        let norm_before = state.norm().powi(2);
        for g in inc_m(layout, i) {
            apply_gate(&g, &mut state).unwrap();
        }
        let mut probe = state.clone();
        let p0_raw = project_sign_zero(layout, &mut probe);
        let p0 = p0_raw / norm_before;
        chain.push(p0);
        if let Some(r) = rng {
            if r.gen_range(0.0..1.0) >= p0 {
                return (state, chain, false);
            }
        }
        state = probe;
        state.normalize();
    }
    (state, chain, true)
}

/// Run the preparation with restarts until a full pass succeeds, then fix up
/// the S and N registers from the surviving step vectors.
pub fn prepare_uniform_csf(d: usize, seed: u64) -> CsfPrepResult {
    let layout = RegisterLayout::new(d);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Exact acceptance probability from projector norms alone.
    let (_, chain, _) = csf_attempt(&layout, &mut None);
    let success_probability: f64 = chain.iter().product();
    let mut attempts = 0;
    loop {
        attempts += 1;
        let (mut state, _, ok) = csf_attempt(&layout, &mut Some(&mut rng));
        if !ok {
            continue;
        }
        for i in 1..=d {
            for g in inc_s(&layout, i).into_iter().chain(inc_n(&layout, i)) {
                apply_gate(&g, &mut state).unwrap();
            }
        }
        return CsfPrepResult { state, attempts, success_probability };
    }
}

/// Count accepted runs out of `trials` single passes (no restart).
pub fn csf_prep_trials(d: usize, trials: usize, seed: u64) -> usize {
    let layout = RegisterLayout::new(d);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut accepted = 0;
    for _ in 0..trials {
        let (_, _, ok) = csf_attempt(&layout, &mut Some(&mut rng));
        if ok {
            accepted += 1;
        }
    }
    accepted
}

/// The analytic target: the uniform superposition over all valid step
/// vectors, each carrying its (N, 2S, 2M = 2S) registers.
pub fn uniform_csf_state(d: usize) -> StateVector {
    let layout = RegisterLayout::new(d);
    let vectors = enumerate_step_vectors(d, None);
    let mut state = StateVector {
        width: layout.width(),
        amps: vec![C_ZERO; 1 << layout.width()],
    };
    let amp = Complex64::new(1.0 / (vectors.len() as f64).sqrt(), 0.0);
    for v in vectors {
        let two_s = v.two_s();
        let label = UgaLabel::new(v, two_s as i64).unwrap();
        state.amps[layout.encode_label(&label)] = amp;
    }
    state
}

#[derive(Debug, Clone)]
pub struct DfsResult {
    pub fidelity: f64,
    pub output: StateVector,
}

fn sector_vectors(d: usize, n: usize, two_s: usize) -> Vec<StepVector> {
    enumerate_step_vectors(d, Some((n, two_s)))
}

/// Encode a payload over one (N, 2S) sector into the step register, expose it
/// to a collective spin/number rotation in the occupation picture, decode,
/// and report the fidelity of the step-register reduced state with the
/// payload.
pub fn dfs_roundtrip(
    d: usize,
    n: usize,
    two_s: usize,
    payload: &[Complex64],
    noise: U2Params,
) -> Result<DfsResult, ApplicationError> {
    let layout = RegisterLayout::new(d);
    let vectors = sector_vectors(d, n, two_s);
    if vectors.is_empty() || payload.len() != vectors.len() {
        return Err(ApplicationError::InvalidPayload);
    }
    let circuit = paldus_circuit(d, true, false);
    let mut state = StateVector {
        width: layout.width(),
        amps: vec![C_ZERO; 1 << layout.width()],
    };
    let norm: f64 = payload.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for (v, &a) in vectors.iter().zip(payload) {
        let label = UgaLabel::new(v.clone(), two_s as i64).unwrap();
        state.amps[layout.encode_label(&label)] = a / norm;
    }
    apply_circuit(&circuit.inverse(), &mut state)?;
    let wv = wv_gate(noise);
    for i in 1..=d {
        let g = Gate {
            kind: GateKind::GenericUnitary(wv.clone()),
            targets: vec![layout.step_hi(i), layout.step_lo(i)],
            controls: Vec::new(),
        };
        apply_gate(&g, &mut state)?;
    }
    apply_circuit(&circuit, &mut state)?;
    // Fidelity of the step-register reduced state with the payload: sum of
    // |<payload|phi_r>|^2 over register branches r.
    let occ_dim = 1usize << (2 * d);
    let regs = 1usize << (layout.width() - 2 * d);
    let mut target = vec![C_ZERO; occ_dim];
    for (v, &a) in vectors.iter().zip(payload) {
        let mut bits = 0usize;
        for &b in v.bits() {
            bits = (bits << 1) | b as usize;
        }
        target[bits] = a / norm;
    }
    let mut fidelity = 0.0;
    for r in 0..regs {
        let mut ov = C_ZERO;
        for b in 0..occ_dim {
            ov += target[b].conj() * state.amps[r * occ_dim + b];
        }
        fidelity += ov.norm_sqr();
    }
    Ok(DfsResult { fidelity, output: state })
}

/// Matrix elements of the transform-basis states under E_ij, in oracle basis
/// order, together with the worst violations of the selection rules
/// (N, 2S, 2M all conserved) and of locality (entries vanish when the step
/// vectors differ outside the orbital window [min(i,j), max(i,j)]).
#[derive(Debug, Clone)]
pub struct UgaElements {
    pub labels: Vec<UgaLabel>,
    pub matrix: CMatrix,
    pub max_selection_violation: f64,
    pub max_locality_violation: f64,
}

pub fn uga_matrix_elements(d: usize, i: usize, j: usize) -> UgaElements {
    let basis = gt_basis_oracle(d);
    let op = ladder_e(i, j, d);
    let dim = basis.len();
    let images: Vec<Vec<Complex64>> = basis
        .iter()
        .map(|(_, s)| op.apply(&s.to_dense()))
        .collect();
    let mut matrix = CMatrix::zeros(dim, dim);
    let mut sel = 0.0f64;
    let mut loc = 0.0f64;
    let (lo, hi) = (i.min(j), i.max(j));
    for (col, image) in images.iter().enumerate() {
        for (row, (_, bra)) in basis.iter().enumerate() {
            let mut v = C_ZERO;
            for (&bits, &a) in &bra.amplitudes {
                v += Complex64::new(a, 0.0) * image[bits as usize];
            }
            matrix[(row, col)] = v;
            let la = &basis[row].0;
            let lb = &basis[col].0;
            if la.n_particles != lb.n_particles || la.two_s != lb.two_s || la.two_m != lb.two_m {
                sel = sel.max(v.norm());
            }
            let differs_outside = (1..=d).any(|orb| {
                (orb < lo || orb > hi) && la.step.digit(orb) != lb.step.digit(orb)
            });
            if differs_outside {
                loc = loc.max(v.norm());
            }
        }
    }
    UgaElements {
        labels: basis.into_iter().map(|(l, _)| l).collect(),
        matrix,
        max_selection_violation: sel,
        max_locality_violation: loc,
    }
}

/// Matrix of exp(iHt) between the spin-adapted basis states, in oracle order.
pub fn evolution_in_gt_basis(d: usize, h: &SparseOperator, t: f64) -> (Vec<UgaLabel>, CMatrix) {
    let basis = gt_basis_oracle(d);
    let u = expm_i_hermitian(&h.to_dense(), t);
    let dim = basis.len();
    let dense: Vec<Vec<Complex64>> = basis.iter().map(|(_, s)| s.to_dense()).collect();
    let mut m = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let image = u.matvec(&dense[col]);
        for row in 0..dim {
            let mut v = C_ZERO;
            for (&bits, &a) in &basis[row].1.amplitudes {
                v += Complex64::new(a, 0.0) * image[bits as usize];
            }
            m[(row, col)] = v;
        }
    }
    (basis.into_iter().map(|(l, _)| l).collect(), m)
}

/// Residuals of the block structure of a basis-conjugated operator:
/// largest entry crossing an (N, 2S) sector, largest entry changing 2M, and
/// the largest spread of corresponding entries across 2M values (the matrix
/// should act as identity on the projection factor).
pub fn block_structure_residuals(labels: &[UgaLabel], m: &CMatrix) -> (f64, f64, f64) {
    let dim = labels.len();
    let mut cross_sector = 0.0f64;
    let mut cross_m = 0.0f64;
    let mut m_spread = 0.0f64;
    for a in 0..dim {
        for b in 0..dim {
            let la = &labels[a];
            let lb = &labels[b];
            let v = m[(a, b)].norm();
            if la.n_particles != lb.n_particles || la.two_s != lb.two_s {
                cross_sector = cross_sector.max(v);
                continue;
            }
            if la.two_m != lb.two_m {
                cross_m = cross_m.max(v);
                continue;
            }
            // Compare against the same step-vector pair at every other 2M.
            for a2 in 0..dim {
                if labels[a2].step != la.step || labels[a2].two_m == la.two_m {
                    continue;
                }
                for b2 in 0..dim {
                    if labels[b2].step == lb.step && labels[b2].two_m == labels[a2].two_m {
                        m_spread = m_spread.max((m[(a, b)] - m[(a2, b2)]).norm());
                    }
                }
            }
        }
    }
    (cross_sector, cross_m, m_spread)
}
