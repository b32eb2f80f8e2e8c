//! Clebsch-Gordan angles and explicit spin-adapted (Gelfand-Tsetlin) states in
//! the occupation basis. These states are built by a direct sequential-coupling
//! recursion and serve as the independent oracle for the circuit simulation.

use crate::combinatorics::{enumerate_step_vectors, StepVector, UgaLabel};
use crate::dense::{C_ZERO};
use num_complex::Complex64;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GtError {
    #[error("|2M| = {two_m} out of range for 2S = {two_s}")]
    DomainError { two_s: usize, two_m: i64 },
    #[error("label inconsistent with its step vector")]
    InvalidLabel,
}

/// The pair of sequential-coupling coefficients for attaching one spin-1/2 to
/// total spin S with outgoing projection M.
#[derive(Debug, Clone, Copy)]
pub struct CgAngle {
    pub two_s: usize,
    pub two_m: i64,
    pub cos: f64,
    pub sin: f64,
}

/// cos = sqrt((S + M + 1/2)/(2S + 1)), sin = sqrt((S - M + 1/2)/(2S + 1)),
/// in the outgoing-M convention; |2M| <= 2S + 1.
pub fn cg_angle(two_s: usize, two_m: i64) -> Result<CgAngle, GtError> {
    if two_m.unsigned_abs() as usize > two_s + 1 {
        return Err(GtError::DomainError { two_s, two_m });
    }
    let denom = 2.0 * (two_s as f64 + 1.0);
    let cos = ((two_s as f64 + two_m as f64 + 1.0) / denom).sqrt();
    let sin = ((two_s as f64 - two_m as f64 + 1.0) / denom).sqrt();
    Ok(CgAngle { two_s, two_m, cos, sin })
}

/// Sparse real-amplitude state on 2d qubits, keyed by the basis integer with
/// qubit 0 (mode 1-up) as the most significant bit.
#[derive(Debug, Clone)]
pub struct SparseState {
    pub d: usize,
    pub amplitudes: HashMap<u64, f64>,
}

impl SparseState {
    pub fn to_dense(&self) -> Vec<Complex64> {
        let mut v = vec![C_ZERO; 1usize << (2 * self.d)];
        for (&b, &a) in &self.amplitudes {
            v[b as usize] = Complex64::new(a, 0.0);
        }
        v
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.values().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn overlap(&self, other: &SparseState) -> f64 {
        self.amplitudes
            .iter()
            .filter_map(|(b, a)| other.amplitudes.get(b).map(|x| a * x))
            .sum()
    }
}

/// Doubled spin projection of a basis bitstring: up modes sit at even printed
/// positions, down modes at odd ones.
fn two_m_of_bits(bits: u64, d: usize) -> i64 {
    let mut t = 0i64;
    for i in 0..d {
        let up = (bits >> (2 * d - 1 - 2 * i)) & 1;
        let down = (bits >> (2 * d - 2 - 2 * i)) & 1;
        t += up as i64 - down as i64;
    }
    t
}

/// Run the sequential-coupling recursion for one step vector, producing the
/// occupation-basis expansion of every projection 2M simultaneously. The map
/// is keyed by bitstring; each bitstring determines its own 2M.
fn expand_step_vector(step: &StepVector) -> HashMap<u64, f64> {
    let mut amps: HashMap<u64, f64> = HashMap::new();
    amps.insert(0, 1.0);
    let mut two_s_old = 0usize;
    for i in 1..=step.d() {
        let digit = step.digit(i);
        let mut next: HashMap<u64, f64> = HashMap::new();
        for (&bits, &amp) in &amps {
            let two_m_old = two_m_of_bits(bits, i - 1);
            let base = bits << 2;
            match digit {
                0 => {
                    *next.entry(base).or_insert(0.0) += amp;
                }
                3 => {
                    *next.entry(base | 0b11).or_insert(0.0) += amp;
                }
                1 => {
                    // Up-coupling S -> S + 1/2: coefficient for the new spin
                    // pointing up uses the outgoing projection 2M_old + 1.
                    let up = cg_angle(two_s_old, two_m_old + 1).unwrap().cos;
                    let down = cg_angle(two_s_old, two_m_old - 1).unwrap().sin;
                    *next.entry(base | 0b10).or_insert(0.0) += amp * up;
                    *next.entry(base | 0b01).or_insert(0.0) += amp * down;
                }
                2 => {
                    // Down-coupling S -> S - 1/2; the orthogonal complement
                    // picks up a minus sign on the spin-up branch.
                    let up = -cg_angle(two_s_old, two_m_old + 1).unwrap().sin;
                    let down = cg_angle(two_s_old, two_m_old - 1).unwrap().cos;
                    *next.entry(base | 0b10).or_insert(0.0) += amp * up;
                    *next.entry(base | 0b01).or_insert(0.0) += amp * down;
                }
                _ => unreachable!(),
            }
        }
        next.retain(|_, a| a.abs() > 1e-15);
        amps = next;
        two_s_old = match digit {
            1 => two_s_old + 1,
            2 => two_s_old - 1,
            _ => two_s_old,
        };
    }
    amps
}

/// Occupation-basis expansion of the state addressed by a label.
pub fn build_gt_state(label: &UgaLabel) -> Result<SparseState, GtError> {
    let d = label.step.d();
    if label.step.n_particles() != label.n_particles || label.step.two_s() != label.two_s {
        return Err(GtError::InvalidLabel);
    }
    if label.two_m.unsigned_abs() as usize > label.two_s {
        return Err(GtError::DomainError { two_s: label.two_s, two_m: label.two_m });
    }
    let all = expand_step_vector(&label.step);
    let amplitudes: HashMap<u64, f64> = all
        .into_iter()
        .filter(|&(b, _)| two_m_of_bits(b, d) == label.two_m)
        .collect();
    Ok(SparseState { d, amplitudes })
}

/// The full orthonormal basis: 4^d (label, state) pairs ordered by
/// (N asc, 2S asc, 2M desc, step vector lexicographic).
pub fn gt_basis_oracle(d: usize) -> Vec<(UgaLabel, SparseState)> {
    assert!(d <= 6, "oracle basis capped at d = 6");
    let mut out = Vec::new();
    for step in enumerate_step_vectors(d, None) {
        let expansion = expand_step_vector(&step);
        let two_s = step.two_s() as i64;
        let mut two_m = two_s;
        while two_m >= -two_s {
            let amplitudes: HashMap<u64, f64> = expansion
                .iter()
                .filter(|&(&b, _)| two_m_of_bits(b, d) == two_m)
                .map(|(&b, &a)| (b, a))
                .collect();
            let label = UgaLabel::new(step.clone(), two_m).expect("valid projection");
            out.push((label, SparseState { d, amplitudes }));
            two_m -= 2;
        }
    }
    out.sort_by(|(la, _), (lb, _)| {
        (la.n_particles, la.two_s, -la.two_m, &la.step).cmp(&(
            lb.n_particles,
            lb.two_s,
            -lb.two_m,
            &lb.step,
        ))
    });
    out
}
