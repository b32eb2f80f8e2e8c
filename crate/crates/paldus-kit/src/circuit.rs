//! Dense statevector simulator and the transform circuit builder: register
//! layout, controlled incrementers, multiplexed controlled Givens rotations,
//! and their cascade.
//!
//! Qubit 0 is the most significant bit of a basis index. Registers are laid
//! out [N | S | M | step bits], with M stored in two's complement.

use crate::combinatorics::UgaLabel;
use crate::dense::{CMatrix, C_ZERO};
use crate::gtstates::{cg_angle, gt_basis_oracle};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::FRAC_1_SQRT_2;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CircuitError {
    #[error("state has {0} amplitudes but the circuit width implies {1}")]
    WidthMismatch(usize, usize),
    #[error("state norm {0} is not 1 within 1e-9")]
    NotNormalized(f64),
    #[error("{failures} of {labels} labels fail the isometry check (worst overlap deviation {worst:.3e})")]
    IsometryViolation { labels: usize, failures: usize, worst: f64 },
}

/// Qubit bookkeeping for the [N | S | M | step] register order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegisterLayout {
    pub d: usize,
    pub n_n: usize,
    pub n_s: usize,
    pub n_m: usize,
}

fn ceil_log2(x: usize) -> usize {
    (usize::BITS - (x - 1).leading_zeros()) as usize
}

impl RegisterLayout {
    pub fn new(d: usize) -> Self {
        RegisterLayout {
            d,
            n_n: ceil_log2(2 * d + 1),
            n_s: ceil_log2(d + 1),
            n_m: ceil_log2(2 * d + 1),
        }
    }

    pub fn width(&self) -> usize {
        self.n_n + self.n_s + self.n_m + 2 * self.d
    }

    pub fn n_qubits(&self) -> Vec<usize> {
        (0..self.n_n).collect()
    }

    pub fn s_qubits(&self) -> Vec<usize> {
        (self.n_n..self.n_n + self.n_s).collect()
    }

    pub fn m_qubits(&self) -> Vec<usize> {
        (self.n_n + self.n_s..self.n_n + self.n_s + self.n_m).collect()
    }

    /// Sign qubit of the two's-complement M register.
    pub fn m_sign_qubit(&self) -> usize {
        self.n_n + self.n_s
    }

    /// First (up) qubit of the step pair for orbital i (1-based).
    pub fn step_hi(&self, i: usize) -> usize {
        self.n_n + self.n_s + self.n_m + 2 * (i - 1)
    }

    pub fn step_lo(&self, i: usize) -> usize {
        self.step_hi(i) + 1
    }

    pub fn two_m_encode(&self, two_m: i64) -> usize {
        (two_m.rem_euclid(1 << self.n_m)) as usize
    }

    pub fn two_m_decode(&self, raw: usize) -> i64 {
        let half = 1i64 << (self.n_m - 1);
        let v = raw as i64;
        if v >= half { v - (1 << self.n_m) } else { v }
    }

    /// Basis index of the fully encoded label: registers set, step bits last.
    pub fn encode_label(&self, label: &UgaLabel) -> usize {
        let mut idx = label.n_particles;
        idx = (idx << self.n_s) | label.two_s;
        idx = (idx << self.n_m) | self.two_m_encode(label.two_m);
        for &b in label.step.bits() {
            idx = (idx << 1) | b as usize;
        }
        idx
    }

    /// Basis index with all registers zero and the given step-qubit bits.
    pub fn embed_step_bits(&self, occ: usize) -> usize {
        occ
    }
}

#[derive(Debug, Clone)]
pub enum GateKind {
    /// v -> v + 1 mod 2^len on the target register.
    ControlledIncrement,
    /// v -> v - 1 mod 2^len on the target register.
    ControlledDecrement,
    /// The 4x4 sequential-coupling rotation on a step pair, acting on the
    /// {|01>, |10>} block; parameters are the pre-update 2S and post-update 2M.
    ControlledGivens { two_s: usize, two_m: i64, inverse: bool },
    Hadamard,
    Cnot,
    /// Arbitrary small unitary on the target qubits (row-major, dimension
    /// 2^targets).
    GenericUnitary(CMatrix),
}

#[derive(Debug, Clone)]
pub struct Gate {
    pub kind: GateKind,
    /// Most significant target first (register order).
    pub targets: Vec<usize>,
    pub controls: Vec<(usize, bool)>,
}

impl Gate {
    pub fn inverse(&self) -> Gate {
        let kind = match &self.kind {
            GateKind::ControlledIncrement => GateKind::ControlledDecrement,
            GateKind::ControlledDecrement => GateKind::ControlledIncrement,
            GateKind::ControlledGivens { two_s, two_m, inverse } => GateKind::ControlledGivens {
                two_s: *two_s,
                two_m: *two_m,
                inverse: !inverse,
            },
            GateKind::Hadamard => GateKind::Hadamard,
            GateKind::Cnot => GateKind::Cnot,
            GateKind::GenericUnitary(u) => GateKind::GenericUnitary(u.adjoint()),
        };
        Gate { kind, targets: self.targets.clone(), controls: self.controls.clone() }
    }
}

#[derive(Debug, Clone)]
pub struct Circuit {
    pub width: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn inverse(&self) -> Circuit {
        Circuit {
            width: self.width,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    pub fn givens_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g.kind, GateKind::ControlledGivens { .. }))
            .count()
    }
}

#[derive(Debug, Clone)]
pub struct StateVector {
    pub width: usize,
    pub amps: Vec<Complex64>,
}

impl StateVector {
    pub fn zero_state(width: usize) -> Self {
        let mut amps = vec![C_ZERO; 1usize << width];
        amps[0] = Complex64::new(1.0, 0.0);
        StateVector { width, amps }
    }

    pub fn basis_state(width: usize, index: usize) -> Self {
        let mut amps = vec![C_ZERO; 1usize << width];
        amps[index] = Complex64::new(1.0, 0.0);
        StateVector { width, amps }
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            for a in &mut self.amps {
                *a /= n;
            }
        }
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    fn bitpos(&self, qubit: usize) -> usize {
        self.width - 1 - qubit
    }
}

fn control_mask(state_width: usize, controls: &[(usize, bool)]) -> (usize, usize) {
    let mut mask = 0usize;
    let mut val = 0usize;
    for &(q, b) in controls {
        let bit = 1usize << (state_width - 1 - q);
        mask |= bit;
        if b {
            val |= bit;
        }
    }
    (mask, val)
}

/// Apply one gate in place.
pub fn apply_gate(gate: &Gate, state: &mut StateVector) -> Result<(), CircuitError> {
    let w = state.width;
    let dim = 1usize << w;
    if state.amps.len() != dim {
        return Err(CircuitError::WidthMismatch(state.amps.len(), dim));
    }
    let (cmask, cval) = control_mask(w, &gate.controls);
    match &gate.kind {
        GateKind::ControlledIncrement | GateKind::ControlledDecrement => {
            let delta: i64 = if matches!(gate.kind, GateKind::ControlledIncrement) { 1 } else { -1 };
            let bits: Vec<usize> = gate.targets.iter().map(|&q| state.bitpos(q)).collect();
            let len = bits.len();
            let modulus = 1i64 << len;
            let mut out = vec![C_ZERO; dim];
            for (idx, &amp) in state.amps.iter().enumerate() {
                if amp == C_ZERO {
                    continue;
                }
                if idx & cmask != cval {
                    out[idx] += amp;
                    continue;
                }
                let mut v = 0i64;
                for &b in &bits {
                    v = (v << 1) | ((idx >> b) & 1) as i64;
                }
                let v2 = (v + delta).rem_euclid(modulus) as usize;
                let mut new_idx = idx;
                for (pos, &b) in bits.iter().enumerate() {
                    let bit = (v2 >> (len - 1 - pos)) & 1;
                    new_idx = (new_idx & !(1 << b)) | (bit << b);
                }
                out[new_idx] += amp;
            }
            state.amps = out;
        }
        GateKind::ControlledGivens { two_s, two_m, inverse } => {
            let ang = cg_angle(*two_s, *two_m).expect("in-range Givens parameters");
            let (c, s) = (ang.cos, ang.sin);
            let hi = 1usize << state.bitpos(gate.targets[0]);
            let lo = 1usize << state.bitpos(gate.targets[1]);
            for idx in 0..dim {
                // Visit the |01> member of each pair once.
                if idx & hi != 0 || idx & lo == 0 || idx & cmask != cval {
                    continue;
                }
                let i01 = idx;
                let i10 = (idx | hi) & !lo;
                let a01 = state.amps[i01];
                let a10 = state.amps[i10];
                if *inverse {
                    state.amps[i01] = a01 * c + a10 * s;
                    state.amps[i10] = -a01 * s + a10 * c;
                } else {
                    state.amps[i01] = a01 * c - a10 * s;
                    state.amps[i10] = a01 * s + a10 * c;
                }
            }
        }
        GateKind::Hadamard => {
            let bit = 1usize << state.bitpos(gate.targets[0]);
            for idx in 0..dim {
                if idx & bit != 0 || idx & cmask != cval {
                    continue;
                }
                let a0 = state.amps[idx];
                let a1 = state.amps[idx | bit];
                state.amps[idx] = (a0 + a1) * FRAC_1_SQRT_2;
                state.amps[idx | bit] = (a0 - a1) * FRAC_1_SQRT_2;
            }
        }
        GateKind::Cnot => {
            let bit = 1usize << state.bitpos(gate.targets[0]);
            for idx in 0..dim {
                if idx & bit != 0 || idx & cmask != cval {
                    continue;
                }
                state.amps.swap(idx, idx | bit);
            }
        }
        GateKind::GenericUnitary(u) => {
            let t = gate.targets.len();
            let sub = 1usize << t;
            assert_eq!(u.rows, sub);
            let bits: Vec<usize> = gate.targets.iter().map(|&q| state.bitpos(q)).collect();
            let tmask: usize = bits.iter().map(|&b| 1usize << b).sum();
            for idx in 0..dim {
                if idx & tmask != 0 || idx & cmask != cval {
                    continue;
                }
                let members: Vec<usize> = (0..sub)
                    .map(|v| {
                        let mut m = idx;
                        for (pos, &b) in bits.iter().enumerate() {
                            m |= (((v >> (t - 1 - pos)) & 1) as usize) << b;
                        }
                        m
                    })
                    .collect();
                let old: Vec<Complex64> = members.iter().map(|&m| state.amps[m]).collect();
                for (r, &m) in members.iter().enumerate() {
                    let mut acc = C_ZERO;
                    for (col, &a) in old.iter().enumerate() {
                        acc += u[(r, col)] * a;
                    }
                    state.amps[m] = acc;
                }
            }
        }
    }
    Ok(())
}

pub fn apply_circuit(circuit: &Circuit, state: &mut StateVector) -> Result<(), CircuitError> {
    if state.width != circuit.width {
        return Err(CircuitError::WidthMismatch(1 << state.width, 1 << circuit.width));
    }
    for g in &circuit.gates {
        apply_gate(g, state)?;
    }
    Ok(())
}

/// M register update |2M> -> |2M + x_up - x_down> controlled on the pair of
/// orbital i.
pub fn inc_m(layout: &RegisterLayout, i: usize) -> Vec<Gate> {
    vec![
        Gate {
            kind: GateKind::ControlledIncrement,
            targets: layout.m_qubits(),
            controls: vec![(layout.step_hi(i), true)],
        },
        Gate {
            kind: GateKind::ControlledDecrement,
            targets: layout.m_qubits(),
            controls: vec![(layout.step_lo(i), true)],
        },
    ]
}

/// S register update: +1 on step pair |10>, -1 on |01>.
pub fn inc_s(layout: &RegisterLayout, i: usize) -> Vec<Gate> {
    vec![
        Gate {
            kind: GateKind::ControlledIncrement,
            targets: layout.s_qubits(),
            controls: vec![(layout.step_hi(i), true), (layout.step_lo(i), false)],
        },
        Gate {
            kind: GateKind::ControlledDecrement,
            targets: layout.s_qubits(),
            controls: vec![(layout.step_hi(i), false), (layout.step_lo(i), true)],
        },
    ]
}

/// N register update |N> -> |N + d_hi + d_lo>.
pub fn inc_n(layout: &RegisterLayout, i: usize) -> Vec<Gate> {
    vec![
        Gate {
            kind: GateKind::ControlledIncrement,
            targets: layout.n_qubits(),
            controls: vec![(layout.step_hi(i), true)],
        },
        Gate {
            kind: GateKind::ControlledIncrement,
            targets: layout.n_qubits(),
            controls: vec![(layout.step_lo(i), true)],
        },
    ]
}

/// The multiplexed Givens block at orbital i: one rotation per reachable
/// (2S before update, 2M after update) pair, skipping the trivial rotation at
/// 2M = 2S + 1. The count is i(i+1)/2.
pub fn givens_block(layout: &RegisterLayout, i: usize) -> Vec<Gate> {
    let mut gates = Vec::new();
    for two_s in 0..i {
        let mut two_m = -(two_s as i64) - 1;
        while two_m <= two_s as i64 - 1 {
            let mut controls = Vec::new();
            for (pos, &q) in layout.s_qubits().iter().enumerate() {
                controls.push((q, (two_s >> (layout.n_s - 1 - pos)) & 1 == 1));
            }
            let raw = layout.two_m_encode(two_m);
            for (pos, &q) in layout.m_qubits().iter().enumerate() {
                controls.push((q, (raw >> (layout.n_m - 1 - pos)) & 1 == 1));
            }
            gates.push(Gate {
                kind: GateKind::ControlledGivens { two_s, two_m, inverse: false },
                targets: vec![layout.step_hi(i), layout.step_lo(i)],
                controls,
            });
            two_m += 2;
        }
    }
    gates
}

/// One coupling stage: inc_m, then the multiplexed Givens, then inc_s and
/// (optionally) inc_n.
pub fn cg_transform(layout: &RegisterLayout, i: usize, include_n: bool) -> Vec<Gate> {
    let mut gates = inc_m(layout, i);
    gates.extend(givens_block(layout, i));
    gates.extend(inc_s(layout, i));
    if include_n {
        gates.extend(inc_n(layout, i));
    }
    gates
}

/// The full transform: a cascade of coupling stages over all d orbitals.
/// With decouple_s the S register is returned to zero at the end by undoing
/// every S-register update.
pub fn paldus_circuit(d: usize, include_n: bool, decouple_s: bool) -> Circuit {
    let layout = RegisterLayout::new(d);
    let mut gates = Vec::new();
    for i in 1..=d {
        gates.extend(cg_transform(&layout, i, include_n));
    }
    if decouple_s {
        let mut undo = Vec::new();
        for i in 1..=d {
            undo.extend(inc_s(&layout, i));
        }
        gates.extend(undo.iter().rev().map(Gate::inverse));
    }
    Circuit { width: layout.width(), gates }
}

#[derive(Debug, Clone, Serialize)]
pub struct IsometryReport {
    pub d: usize,
    pub labels: usize,
    pub worst_deviation: f64,
    pub failures: Vec<(String, f64)>,
}

/// For every basis label, feed the oracle state (registers cleared) through
/// the transform and demand unit-modulus overlap with the encoded label
/// string.
pub fn run_isometry_check(d: usize) -> Result<IsometryReport, CircuitError> {
    let layout = RegisterLayout::new(d);
    let circuit = paldus_circuit(d, true, false);
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    let basis = gt_basis_oracle(d);
    let labels = basis.len();
    for (label, oracle) in basis {
        let mut state = StateVector {
            width: layout.width(),
            amps: vec![C_ZERO; 1 << layout.width()],
        };
        for (&bits, &a) in &oracle.amplitudes {
            state.amps[layout.embed_step_bits(bits as usize)] = Complex64::new(a, 0.0);
        }
        apply_circuit(&circuit, &mut state)?;
        let overlap = state.amps[layout.encode_label(&label)].norm();
        let dev = (overlap - 1.0).abs();
        worst = worst.max(dev);
        if dev > 1e-9 {
            failures.push((format!("N={} 2S={} 2M={} {}", label.n_particles, label.two_s, label.two_m, label.step), dev));
        }
    }
    if failures.is_empty() {
        Ok(IsometryReport { d, labels, worst_deviation: worst, failures })
    } else {
        let n = failures.len();
        let _report = IsometryReport { d, labels, worst_deviation: worst, failures };
        Err(CircuitError::IsometryViolation { labels, failures: n, worst })
    }
}
