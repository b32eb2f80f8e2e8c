//! Step vectors, (a,b,c) triples, branching enumeration, and dimension formulas.
//!
//! A step vector encodes a walk on the Shavitt graph: each of the d orbitals
//! contributes one of four steps {0,1,2,3}, stored as the bit pair
//! 0->00, 1->10, 2->01, 3->11. Bit pairs are kept most-significant step first
//! (orbital 1 leftmost) so that printed strings read the same way as kets.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CombinatoricsError {
    #[error("step 2 requires b >= 1 (would drive intermediate spin negative)")]
    InvalidBranch,
    #[error("step vectors need an even number of bits, got {0}")]
    OddLength(usize),
    #[error("malformed step vector string: {0}")]
    ParseError(String),
    #[error("step vector violates the nonnegative prefix-spin constraint")]
    InvalidStepVector,
    #[error("dimension identity violated at d={d}, twoS={two_s}, n={n}")]
    IdentityViolation { d: usize, two_s: usize, n: usize },
}

/// Row counts of the two-column pattern at some level: a rows of 2, b rows of 1,
/// c rows of 0. N = 2a + b and 2S = b.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AbcTriple {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl AbcTriple {
    pub fn zero() -> Self {
        AbcTriple { a: 0, b: 0, c: 0 }
    }

    pub fn level(&self) -> usize {
        self.a + self.b + self.c
    }

    pub fn n_particles(&self) -> usize {
        2 * self.a + self.b
    }

    pub fn two_s(&self) -> usize {
        self.b
    }
}

/// Apply one step digit to a triple, following the four branching rows:
/// 0: c+1, 1: b+1, 2: (a+1, b-1, c+1), 3: a+1.
pub fn apply_step(t: AbcTriple, step: u8) -> Result<AbcTriple, CombinatoricsError> {
    match step {
        0 => Ok(AbcTriple { a: t.a, b: t.b, c: t.c + 1 }),
        1 => Ok(AbcTriple { a: t.a, b: t.b + 1, c: t.c }),
        2 => {
            if t.b == 0 {
                return Err(CombinatoricsError::InvalidBranch);
            }
            Ok(AbcTriple { a: t.a + 1, b: t.b - 1, c: t.c + 1 })
        }
        3 => Ok(AbcTriple { a: t.a + 1, b: t.b, c: t.c }),
        _ => panic!("step digit out of range: {step}"),
    }
}

/// A node of the Shavitt graph: an (a,b,c) triple at a given level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShavittNode {
    pub level: usize,
    pub triple: AbcTriple,
}

/// 2d-bit step vector. `bits[0]` is the leftmost printed bit, i.e. the first
/// bit of the orbital-1 step pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StepVector {
    bits: Vec<bool>,
}

impl StepVector {
    /// Validates the prefix-spin constraint on construction.
    pub fn new(bits: Vec<bool>) -> Result<Self, CombinatoricsError> {
        if bits.len() % 2 != 0 {
            return Err(CombinatoricsError::OddLength(bits.len()));
        }
        if !prefix_valid(&bits) {
            return Err(CombinatoricsError::InvalidStepVector);
        }
        Ok(StepVector { bits })
    }

    pub fn from_digits(digits: &[u8]) -> Result<Self, CombinatoricsError> {
        let mut bits = Vec::with_capacity(2 * digits.len());
        for &s in digits {
            let (hi, lo) = match s {
                0 => (false, false),
                1 => (true, false),
                2 => (false, true),
                3 => (true, true),
                _ => return Err(CombinatoricsError::ParseError(format!("digit {s}"))),
            };
            bits.push(hi);
            bits.push(lo);
        }
        StepVector::new(bits)
    }

    /// Parse "10,01"-style strings (bit pairs, comma separated). Plain bit
    /// strings without commas are accepted too.
    pub fn parse(s: &str) -> Result<Self, CombinatoricsError> {
        let mut bits = Vec::new();
        for ch in s.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                ',' | ' ' => {}
                _ => return Err(CombinatoricsError::ParseError(s.to_string())),
            }
        }
        StepVector::new(bits)
    }

    pub fn d(&self) -> usize {
        self.bits.len() / 2
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Step digit for orbital i (1-based).
    pub fn digit(&self, i: usize) -> u8 {
        let hi = self.bits[2 * (i - 1)];
        let lo = self.bits[2 * (i - 1) + 1];
        match (hi, lo) {
            (false, false) => 0,
            (true, false) => 1,
            (false, true) => 2,
            (true, true) => 3,
        }
    }

    pub fn digits(&self) -> Vec<u8> {
        (1..=self.d()).map(|i| self.digit(i)).collect()
    }

    /// Total particle number: Hamming weight of the bits.
    pub fn n_particles(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Total doubled spin 2S = sum over steps of (d_{2i-1} - d_{2i}).
    pub fn two_s(&self) -> usize {
        let mut t = 0i64;
        for i in 0..self.d() {
            t += self.bits[2 * i] as i64 - self.bits[2 * i + 1] as i64;
        }
        t as usize
    }

    /// Intermediate doubled spins after each orbital (length d, starting after
    /// orbital 1).
    pub fn prefix_two_s(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.d());
        let mut t = 0i64;
        for i in 0..self.d() {
            t += self.bits[2 * i] as i64 - self.bits[2 * i + 1] as i64;
            out.push(t as usize);
        }
        out
    }

    /// Reconstruct the (a,b,c) walk; the constructor guarantees it stays valid.
    pub fn walk(&self) -> Vec<AbcTriple> {
        let mut t = AbcTriple::zero();
        let mut out = vec![t];
        for i in 1..=self.d() {
            t = apply_step(t, self.digit(i)).expect("validated step vector");
            out.push(t);
        }
        out
    }
}

impl fmt::Display for StepVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.d() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(
                f,
                "{}{}",
                self.bits[2 * i] as u8,
                self.bits[2 * i + 1] as u8
            )?;
        }
        Ok(())
    }
}

fn prefix_valid(bits: &[bool]) -> bool {
    let mut t = 0i64;
    for i in 0..bits.len() / 2 {
        t += bits[2 * i] as i64 - bits[2 * i + 1] as i64;
        if t < 0 {
            return false;
        }
    }
    true
}

/// Check the nonnegative prefix-spin constraint on a raw bit sequence.
pub fn validate_step_vector(bits: &[bool]) -> Result<bool, CombinatoricsError> {
    if bits.len() % 2 != 0 {
        return Err(CombinatoricsError::OddLength(bits.len()));
    }
    Ok(prefix_valid(bits))
}

/// (N, 2S) labels of a step vector.
pub fn step_vector_labels(s: &StepVector) -> (usize, usize) {
    (s.n_particles(), s.two_s())
}

/// Quantum numbers addressing one basis state: (N, 2S, 2M) plus a step vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UgaLabel {
    pub n_particles: usize,
    pub two_s: usize,
    pub two_m: i64,
    pub step: StepVector,
}

impl UgaLabel {
    pub fn new(step: StepVector, two_m: i64) -> Result<Self, CombinatoricsError> {
        let (n, two_s) = step_vector_labels(&step);
        if two_m.unsigned_abs() as usize > two_s || (two_m.rem_euclid(2)) as usize != two_s % 2 {
            return Err(CombinatoricsError::InvalidStepVector);
        }
        Ok(UgaLabel { n_particles: n, two_s, two_m, step })
    }
}

/// All valid step vectors for d orbitals, in lexicographic bit order,
/// optionally restricted to one (N, 2S) sector.
pub fn enumerate_step_vectors(d: usize, filter: Option<(usize, usize)>) -> Vec<StepVector> {
    let mut out = Vec::new();
    let mut bits = Vec::with_capacity(2 * d);
    // Steps in bit-lex order of their pairs: 00 < 01 < 10 < 11 -> digits 0,2,1,3.
    fn rec(bits: &mut Vec<bool>, d: usize, two_s: i64, out: &mut Vec<StepVector>) {
        if bits.len() == 2 * d {
            out.push(StepVector { bits: bits.clone() });
            return;
        }
        for (hi, lo) in [(false, false), (false, true), (true, false), (true, true)] {
            let t = two_s + hi as i64 - lo as i64;
            if t < 0 {
                continue;
            }
            bits.push(hi);
            bits.push(lo);
            rec(bits, d, t, out);
            bits.pop();
            bits.pop();
        }
    }
    rec(&mut bits, d, 0, &mut out);
    if let Some((n, two_s)) = filter {
        out.retain(|s| s.n_particles() == n && s.two_s() == two_s);
    }
    out
}

/// Exact binomial coefficient.
pub fn binomial(n: usize, k: i64) -> BigUint {
    if k < 0 || k as usize > n {
        return BigUint::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= BigUint::from(n - i);
        den *= BigUint::from(i + 1);
    }
    num / den
}

/// Number of step vectors in the (N, 2S) sector of d orbitals:
/// (2S+1)/(d+1) * C(d+1, N/2 - S) * C(d+1, N/2 + S + 1).
/// Returns 0 off the allowed grid (N not in {2S, 2S+2, ..., 2d-2S}).
pub fn dim_irrep(d: usize, two_s: usize, n: usize) -> BigUint {
    if !on_grid(d, two_s, n) {
        return BigUint::zero();
    }
    let lo = ((n as i64) - (two_s as i64)) / 2;
    let hi = ((n as i64) + (two_s as i64)) / 2 + 1;
    let prod = BigUint::from(two_s + 1) * binomial(d + 1, lo) * binomial(d + 1, hi);
    prod / BigUint::from(d + 1)
}

/// Alternative closed form with denominator d+1:
/// (2S+1)/(d+1) * C(d+1, N/2 - S) * C(d+1, d - N/2 - S).
pub fn dim_irrep_weyl(d: usize, two_s: usize, n: usize) -> BigUint {
    if !on_grid(d, two_s, n) {
        return BigUint::zero();
    }
    let lo = ((n as i64) - (two_s as i64)) / 2;
    let hi = (d as i64) - (n as i64 + two_s as i64) / 2;
    let prod = BigUint::from(two_s + 1) * binomial(d + 1, lo) * binomial(d + 1, hi);
    prod / BigUint::from(d + 1)
}

fn on_grid(d: usize, two_s: usize, n: usize) -> bool {
    two_s <= d && n >= two_s && n <= 2 * d - two_s && (n - two_s) % 2 == 0
}

/// Number of step vectors with a common 2S, summed over N:
/// C(2d+1, d-2S) - C(2d+1, d-2S-1).
pub fn dim_spin_sector(d: usize, two_s: usize) -> BigUint {
    if two_s > d {
        return BigUint::zero();
    }
    let a = binomial(2 * d + 1, d as i64 - two_s as i64);
    let b = binomial(2 * d + 1, d as i64 - two_s as i64 - 1);
    a - b
}

/// Total number of step vectors, C(2d+1, d).
pub fn total_step_vectors(d: usize) -> BigUint {
    binomial(2 * d + 1, d as i64)
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct DimensionReport {
    pub d: usize,
    /// Rows (N, 2S, dim) over the allowed grid.
    pub sectors: Vec<(usize, usize, u64)>,
    pub total_step_vectors: u64,
    pub weighted_total: u64,
}

/// Check sum_S T^d_S = C(2d+1,d) and sum_{S,N} (2S+1) T^d_{S,N} = 4^d,
/// by formula always and by exhaustive enumeration for d <= 8.
pub fn dimension_identities(d: usize) -> Result<DimensionReport, CombinatoricsError> {
    let mut sectors = Vec::new();
    let mut by_formula = BigUint::zero();
    let mut weighted = BigUint::zero();
    for two_s in 0..=d {
        let mut spin_total = BigUint::zero();
        for n in (two_s..=2 * d - two_s).step_by(2) {
            let dim = dim_irrep(d, two_s, n);
            if dim != dim_irrep_weyl(d, two_s, n) {
                return Err(CombinatoricsError::IdentityViolation { d, two_s, n });
            }
            weighted += BigUint::from(two_s + 1) * &dim;
            spin_total += &dim;
            sectors.push((n, two_s, dim.to_u64().unwrap_or(u64::MAX)));
        }
        if spin_total != dim_spin_sector(d, two_s) {
            return Err(CombinatoricsError::IdentityViolation { d, two_s, n: 0 });
        }
        by_formula += spin_total;
    }
    if by_formula != total_step_vectors(d) {
        return Err(CombinatoricsError::IdentityViolation { d, two_s: 0, n: 0 });
    }
    if weighted != BigUint::from(4u32).pow(d as u32) {
        return Err(CombinatoricsError::IdentityViolation { d, two_s: 0, n: 0 });
    }
    if d <= 8 {
        let all = enumerate_step_vectors(d, None);
        if BigUint::from(all.len()) != total_step_vectors(d) {
            return Err(CombinatoricsError::IdentityViolation { d, two_s: 0, n: 0 });
        }
        for &(n, two_s, dim) in &sectors {
            let count = all
                .iter()
                .filter(|s| s.n_particles() == n && s.two_s() == two_s)
                .count() as u64;
            if count != dim {
                return Err(CombinatoricsError::IdentityViolation { d, two_s, n });
            }
        }
    }
    Ok(DimensionReport {
        d,
        sectors,
        total_step_vectors: total_step_vectors(d).to_u64().unwrap_or(u64::MAX),
        weighted_total: BigUint::from(4u32)
            .pow(d as u32)
            .to_u64()
            .unwrap_or(u64::MAX),
    })
}
