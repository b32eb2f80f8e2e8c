//! Schur polynomials via semistandard tableaux, the bialternant determinant
//! ratio, and numeric checks of the product/branching identities
//! (dual Cauchy, dual Pieri, interleaving restriction).

use crate::dense::det_real;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SymfuncError {
    #[error("variables {0} and {1} coincide within 1e-12; Vandermonde is singular")]
    DegenerateVariables(usize, usize),
}

/// Weakly decreasing nonnegative parts, trailing zeros stripped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Conjugate (transposed Young diagram).
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        let parts = (0..cols)
            .map(|c| self.parts.iter().filter(|&&p| p > c).count())
            .collect();
        Partition { parts }
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A filling of a Young diagram: rows weakly increase, columns strictly
/// increase. Only used for enumeration; entries come from {1..n}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    pub shape: Partition,
    pub entries: Vec<Vec<usize>>,
}

/// Enumerate all semistandard tableaux of the given shape with entries in 1..=n.
pub fn enumerate_ssyt(shape: &Partition, n: usize) -> Vec<Tableau> {
    let mut out = Vec::new();
    let rows = shape.len();
    if rows == 0 {
        out.push(Tableau { shape: shape.clone(), entries: Vec::new() });
        return out;
    }
    if rows > n {
        return out; // first column needs strictly increasing entries
    }
    let mut entries: Vec<Vec<usize>> = (0..rows).map(|r| vec![0; shape.part(r)]).collect();
    fill(shape, n, &mut entries, 0, 0, &mut out);
    out
}

fn fill(
    shape: &Partition,
    n: usize,
    entries: &mut Vec<Vec<usize>>,
    r: usize,
    c: usize,
    out: &mut Vec<Tableau>,
) {
    if r == shape.len() {
        out.push(Tableau { shape: shape.clone(), entries: entries.clone() });
        return;
    }
    let (nr, nc) = if c + 1 < shape.part(r) { (r, c + 1) } else { (r + 1, 0) };
    let mut lo = 1;
    if c > 0 {
        lo = lo.max(entries[r][c - 1]); // weakly increasing along the row
    }
    if r > 0 {
        lo = lo.max(entries[r - 1][c] + 1); // strictly increasing down the column
    }
    for v in lo..=n {
        entries[r][c] = v;
        fill(shape, n, entries, nr, nc, out);
    }
    entries[r][c] = 0;
}

/// Schur polynomial as the tableau generating function: sum over SSYT of the
/// content monomial x^T.
pub fn schur_ssyt(shape: &Partition, x: &[f64]) -> f64 {
    enumerate_ssyt(shape, x.len())
        .iter()
        .map(|t| {
            t.entries
                .iter()
                .flatten()
                .map(|&v| x[v - 1])
                .product::<f64>()
        })
        .sum()
}

/// Schur polynomial as the ratio of alternants
/// det(x_i^{lambda_j + n - j}) / det(x_i^{n - j}).
pub fn schur_bialternant(shape: &Partition, x: &[f64]) -> Result<f64, SymfuncError> {
    let n = x.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if (x[i] - x[j]).abs() < 1e-12 {
                return Err(SymfuncError::DegenerateVariables(i, j));
            }
        }
    }
    if shape.len() > n {
        return Ok(0.0);
    }
    let num: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| x[i].powi((shape.part(j) + n - 1 - j) as i32))
                .collect()
        })
        .collect();
    let den: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| x[i].powi((n - 1 - j) as i32)).collect())
        .collect();
    Ok(det_real(&num) / det_real(&den))
}

/// Enumerate partitions fitting inside a maxRows x maxCols box.
pub fn partitions_in_box(max_rows: usize, max_cols: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut parts = Vec::new();
    fn rec(parts: &mut Vec<usize>, rows_left: usize, max_part: usize, out: &mut Vec<Partition>) {
        out.push(Partition::new(parts.clone()));
        if rows_left == 0 {
            return;
        }
        let cap = parts.last().copied().unwrap_or(max_part);
        for p in (1..=cap).rev() {
            parts.push(p);
            rec(parts, rows_left - 1, max_part, out);
            parts.pop();
        }
    }
    rec(&mut parts, max_rows, max_cols, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Residual of prod(1 + x_i y_j) = sum over partitions of s_{conj(lambda)}(x) s_lambda(y),
/// where the sum runs over lambda with at most n=len(y) rows and m=len(x) columns.
pub fn check_dual_cauchy(x: &[f64], y: &[f64]) -> f64 {
    let mut lhs = 1.0;
    for &xi in x {
        for &yj in y {
            lhs *= 1.0 + xi * yj;
        }
    }
    let mut rhs = 0.0;
    for lambda in partitions_in_box(y.len(), x.len()) {
        rhs += schur_ssyt(&lambda.conjugate(), x) * schur_ssyt(&lambda, y);
    }
    (lhs - rhs).abs()
}

/// All mu with mu/lambda a vertical strip of exactly k boxes (no two added
/// boxes in the same row).
pub fn dual_pieri_expand(lambda: &Partition, k: usize) -> Vec<Partition> {
    // Choose a 0/1 increment per row of the extended diagram (lambda plus k
    // empty rows), keeping mu weakly decreasing.
    let rows = lambda.len() + k;
    let mut out = Vec::new();
    let mut incr = vec![0usize; rows];
    fn rec(
        lambda: &Partition,
        incr: &mut Vec<usize>,
        row: usize,
        left: usize,
        out: &mut Vec<Partition>,
    ) {
        if left == 0 || row == incr.len() {
            if left == 0 {
                let mu: Vec<usize> = (0..incr.len()).map(|r| lambda.part(r) + incr[r]).collect();
                let mu = Partition::new(mu);
                // weakly decreasing and contains lambda by construction; check
                // column condition mu_i <= lambda_{i-1} is automatic for 0/1
                // strips when mu stays a partition.
                let ok = mu
                    .parts()
                    .iter()
                    .enumerate()
                    .all(|(i, &p)| i == 0 || p <= mu.part(i - 1));
                if ok {
                    out.push(mu);
                }
            }
            return;
        }
        rec(lambda, incr, row + 1, left, out);
        // Adding a box in this row keeps mu a partition only if the row above
        // is strictly longer after its own increment, checked at the end.
        incr[row] = 1;
        let valid = row == 0 || lambda.part(row) + 1 <= lambda.part(row - 1) + incr[row - 1];
        if valid {
            rec(lambda, incr, row + 1, left - 1, out);
        }
        incr[row] = 0;
    }
    rec(lambda, &mut incr, 0, k, &mut out);
    out.sort();
    out.dedup();
    out
}

/// All mu with mu/lambda a horizontal strip of exactly k boxes (no two added
/// boxes in the same column): the classical one-row Pieri product.
pub fn pieri_expand(lambda: &Partition, k: usize) -> Vec<Partition> {
    let mut out: Vec<Partition> = dual_pieri_expand(&lambda.conjugate(), k)
        .into_iter()
        .map(|m| m.conjugate())
        .collect();
    out.sort();
    out
}

/// All mu interleaving lambda: lambda_1 >= mu_1 >= lambda_2 >= mu_2 >= ...,
/// the one-variable restriction branching.
pub fn branching_interleave(lambda: &Partition) -> Vec<Partition> {
    let n = lambda.len();
    let mut out = Vec::new();
    let mut mu = Vec::new();
    fn rec(lambda: &Partition, mu: &mut Vec<usize>, row: usize, n: usize, out: &mut Vec<Partition>) {
        if row == n {
            out.push(Partition::new(mu.clone()));
            return;
        }
        let hi = lambda.part(row);
        let lo = lambda.part(row + 1);
        for v in lo..=hi {
            mu.push(v);
            rec(lambda, mu, row + 1, n, out);
            mu.pop();
        }
    }
    if n == 0 {
        return vec![Partition::empty()];
    }
    rec(lambda, &mut mu, 0, n, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Elementary symmetric polynomial e_k(x).
pub fn elementary(k: usize, x: &[f64]) -> f64 {
    // e_k via the Newton-Girard-free direct recurrence on prefixes.
    let mut e = vec![0.0; k + 1];
    e[0] = 1.0;
    for &xi in x {
        for j in (1..=k).rev() {
            e[j] += xi * e[j - 1];
        }
    }
    e[k]
}
