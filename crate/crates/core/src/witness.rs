//! Matrix witnesses for the gauge `Z/k`-action on a single-sink component.
//!
//! A single-sink out-split component with `n` vertices presents `M_n`; the
//! gauge action is conjugation by the diagonal unitary `u` with entry
//! `omega^len` on the basis vector of a path of length `len`. Elements of
//! the `omega` spectral subspace map the `omega^i` eigenspace of `u` into
//! the `omega^(i+1)` eigenspace.
//!
//! The weak witness uses `quot` partial permutations built from cyclic
//! windows of width `m = min_i #_i` over each eigenspace basis; the
//! obstruction test samples normal spectral-subspace elements and checks
//! that fewer than `quot` of them never give an invertible sum `sum x x^*`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::census::{quot, ExtNat};
use crate::error::{check_modulus, Error, Result};
use crate::exec::Exec;
use crate::graph::Graph;
use crate::linalg::{min_eigenvalue, ComplexMatrix};

/// Bound on every algebraic defect (normality, equivariance, projection).
pub const DEFECT_TOL: f64 = 1e-10;
/// `sum x x^*` counts as invertible when its smallest eigenvalue reaches this.
pub const INVERTIBILITY_TOL: f64 = 1e-8;

pub fn root_of_unity(k: usize, power: usize) -> Complex64 {
    let r = power % k;
    if !(4 * r).is_multiple_of(k) {
        return Complex64::from_polar(1.0, 2.0 * PI * r as f64 / k as f64);
    }
    match (4 * r) / k {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Path length to the sink for every vertex of a single-sink component.
/// Each non-sink vertex must have exactly one outgoing edge.
pub fn component_lengths(component: &Graph) -> Result<Vec<usize>> {
    let order = component.require_acyclic()?;
    let sinks = component.sink_indices();
    if sinks.len() != 1 {
        return Err(Error::MultipleSinks(sinks.len()));
    }
    let mut next = vec![None; component.vertex_count()];
    for e in component.edges() {
        if next[e.source].replace(e.range).is_some() {
            return Err(Error::NotOutSplit(component.label(e.source).to_string()));
        }
    }
    let mut lengths = vec![0usize; component.vertex_count()];
    for &v in order.iter().rev() {
        if let Some(w) = next[v] {
            lengths[v] = lengths[w] + 1;
        }
    }
    Ok(lengths)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaugeUnitary {
    pub k: usize,
    pub lengths: Vec<usize>,
    pub matrix: ComplexMatrix,
}

impl GaugeUnitary {
    pub fn from_lengths(lengths: Vec<usize>, k: usize) -> Result<Self> {
        check_modulus(k)?;
        if lengths.is_empty() {
            return Err(Error::PreconditionViolated("empty basis".into()));
        }
        let diag: Vec<Complex64> = lengths.iter().map(|&l| root_of_unity(k, l)).collect();
        Ok(GaugeUnitary {
            k,
            matrix: ComplexMatrix::diagonal(&diag),
            lengths,
        })
    }

    pub fn dim(&self) -> usize {
        self.lengths.len()
    }

    pub fn omega(&self) -> Complex64 {
        root_of_unity(self.k, 1)
    }

    pub fn residue(&self, basis_index: usize) -> usize {
        self.lengths[basis_index] % self.k
    }

    /// Basis indices of the `omega^i` eigenspace, for each residue `i`.
    pub fn eigenspaces(&self) -> Vec<Vec<usize>> {
        let mut spaces = vec![Vec::new(); self.k];
        for idx in 0..self.dim() {
            spaces[self.residue(idx)].push(idx);
        }
        spaces
    }

    pub fn eigenspace_dims(&self) -> Vec<u64> {
        self.eigenspaces().iter().map(|s| s.len() as u64).collect()
    }

    pub fn quot(&self) -> ExtNat {
        quot(&self.eigenspace_dims())
    }
}

pub fn build_gauge_unitary(component: &Graph, k: usize) -> Result<GaugeUnitary> {
    check_modulus(k)?;
    GaugeUnitary::from_lengths(component_lengths(component)?, k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessMode {
    Weak,
    Plain,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessSet {
    pub k: usize,
    pub mode: WitnessMode,
    pub matrices: Vec<ComplexMatrix>,
    /// `windows[j][i]`: basis indices spanning `V_{i,j}`, in matching order.
    pub windows: Vec<Vec<Vec<usize>>>,
}

fn sink_label(component: &Graph) -> String {
    component
        .sinks()
        .first()
        .map(|s| s.to_string())
        .unwrap_or_default()
}

/// `quot` partial permutations; `x_j` sends the `t`-th vector of `V_{i,j}`
/// to the `t`-th vector of `V_{i+1,j}` and vanishes elsewhere.
pub fn build_weak_witness(component: &Graph, k: usize) -> Result<WitnessSet> {
    let u = build_gauge_unitary(component, k)?;
    weak_witness_for(&u).map_err(|e| match e {
        Error::InfiniteQuot { length, .. } => Error::InfiniteQuot {
            sink: sink_label(component),
            length,
        },
        other => other,
    })
}

pub fn weak_witness_for(u: &GaugeUnitary) -> Result<WitnessSet> {
    let k = u.k;
    let spaces = u.eigenspaces();
    let m = spaces.iter().map(Vec::len).min().unwrap_or(0);
    if m == 0 {
        return Err(Error::InfiniteQuot {
            sink: String::new(),
            length: k - 1,
        });
    }
    let max = spaces.iter().map(Vec::len).max().unwrap_or(0);
    let count = max.div_ceil(m);
    let one = Complex64::new(1.0, 0.0);
    let mut matrices = Vec::with_capacity(count);
    let mut windows = Vec::with_capacity(count);
    for j in 0..count {
        let window: Vec<Vec<usize>> = spaces
            .iter()
            .map(|basis| (0..m).map(|t| basis[(j * m + t) % basis.len()]).collect())
            .collect();
        let mut x = ComplexMatrix::zeros(u.dim());
        for i in 0..k {
            let target = &window[(i + 1) % k];
            for (t, &src) in window[i].iter().enumerate() {
                x[(target[t], src)] = one;
            }
        }
        matrices.push(x);
        windows.push(window);
    }
    Ok(WitnessSet {
        k,
        mode: WitnessMode::Weak,
        matrices,
        windows,
    })
}

/// Single unitary `x_0` with `x_0^k = 1`; requires equal residue counts.
pub fn build_plain_witness(component: &Graph, k: usize) -> Result<WitnessSet> {
    let u = build_gauge_unitary(component, k)?;
    let dims = u.eigenspace_dims();
    if dims.iter().any(|&d| d != dims[0]) {
        return Err(Error::UnequalCounts {
            sink: sink_label(component),
            counts: dims,
        });
    }
    let mut w = weak_witness_for(&u)?;
    w.mode = WitnessMode::Plain;
    Ok(w)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub mode: WitnessMode,
    pub matrix_count: usize,
    pub dim: usize,
    /// Every nonzero entry of every `x_j` sits in a residue `i -> i+1` block.
    pub structural_ok: bool,
    pub normality_defect: f64,
    pub equivariance_defect: f64,
    pub projection_selfadjoint_defect: f64,
    pub projection_idempotent_defect: f64,
    pub support_defect: f64,
    pub lambda_min: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity_defect: Option<f64>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn max_defect(&self) -> f64 {
        [
            self.normality_defect,
            self.equivariance_defect,
            self.projection_selfadjoint_defect,
            self.projection_idempotent_defect,
            self.support_defect,
            self.identity_defect.unwrap_or(0.0),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

pub fn is_structurally_equivariant(x: &ComplexMatrix, u: &GaugeUnitary) -> bool {
    x.nonzero_entries()
        .all(|(row, col, _)| u.residue(row) == (u.residue(col) + 1) % u.k)
}

pub fn verify_witness(w: &WitnessSet, u: &GaugeUnitary) -> Result<VerificationReport> {
    if w.k != u.k {
        return Err(Error::PreconditionViolated(format!(
            "witness is for k = {} but the unitary has k = {}",
            w.k, u.k
        )));
    }
    if w.matrices.is_empty() {
        return Err(Error::PreconditionViolated("witness has no matrices".into()));
    }
    for x in &w.matrices {
        if x.dim() != u.dim() {
            return Err(Error::DimensionMismatch {
                expected: u.dim(),
                found: x.dim(),
            });
        }
    }
    let n = u.dim();
    let omega = u.omega();
    let u_adj = u.matrix.adjoint();
    let structural_ok = w.matrices.iter().all(|x| x.is_finite() && is_structurally_equivariant(x, u));

    let mut normality = 0.0f64;
    let mut equivariance = 0.0f64;
    let mut p_selfadjoint = 0.0f64;
    let mut p_idempotent = 0.0f64;
    let mut support = 0.0f64;
    let mut sum = ComplexMatrix::zeros(n);
    for x in &w.matrices {
        let x_adj = x.adjoint();
        let outer = x * &x_adj;
        let inner = &x_adj * x;
        normality = normality.max((&outer - &inner).operator_norm());
        let conj = &(&u.matrix * x) * &u_adj;
        equivariance = equivariance.max((&conj - &x.scale(omega)).operator_norm());
        let p = x.pow(w.k);
        p_selfadjoint = p_selfadjoint.max((&p - &p.adjoint()).operator_norm());
        p_idempotent = p_idempotent.max((&p - &(&p * &p)).operator_norm());
        support = support.max((&(x * &p) - x).operator_norm());
        sum = &sum + &outer;
    }
    let lambda_min = min_eigenvalue(&sum);
    let identity_defect = (w.mode == WitnessMode::Plain)
        .then(|| (&sum - &ComplexMatrix::identity(n)).operator_norm());

    let defects_ok = [normality, equivariance, p_selfadjoint, p_idempotent, support]
        .into_iter()
        .chain(identity_defect)
        .all(|d| d <= DEFECT_TOL);
    let passed = structural_ok && defects_ok && lambda_min >= INVERTIBILITY_TOL;
    Ok(VerificationReport {
        mode: w.mode,
        matrix_count: w.matrices.len(),
        dim: n,
        structural_ok,
        normality_defect: normality,
        equivariance_defect: equivariance,
        projection_selfadjoint_defect: p_selfadjoint,
        projection_idempotent_defect: p_idempotent,
        support_defect: support,
        lambda_min,
        identity_defect,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObstructionReport {
    /// Number of elements per trial is `d + 1`.
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
    pub lambda_min: Vec<f64>,
    pub all_singular: bool,
}

fn complex_gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Columns of a `rows x cols` complex Gaussian matrix, orthonormalized by
/// modified Gram-Schmidt (applied twice).
fn random_isometry(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<Complex64>> {
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(cols);
    while columns.len() < cols {
        let mut v: Vec<Complex64> = (0..rows).map(|_| complex_gaussian(rng)).collect();
        for _ in 0..2 {
            for q in &columns {
                let dot: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= dot * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            columns.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    columns
}

/// A random normal element of the `omega` spectral subspace with spectrum
/// in the star of `k`-th roots of unity: `x = sum_i K_{i+1} L K_i^*` for
/// random isometries `K_i: C^r -> V_i` and a diagonal `L` with entries in
/// `(0, 1]`, where `r` is the smallest eigenspace dimension.
pub fn sample_spectral_element(u: &GaugeUnitary, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let spaces = u.eigenspaces();
    let rank = spaces.iter().map(Vec::len).min().unwrap_or(0);
    let mut x = ComplexMatrix::zeros(u.dim());
    if rank == 0 {
        return x;
    }
    let scales: Vec<f64> = (0..rank).map(|_| 1.0 - rng.gen::<f64>()).collect();
    let frames: Vec<Vec<Vec<Complex64>>> = spaces
        .iter()
        .map(|basis| random_isometry(rng, basis.len(), rank))
        .collect();
    for i in 0..u.k {
        let next = (i + 1) % u.k;
        for (a, &row) in spaces[next].iter().enumerate() {
            for (b, &col) in spaces[i].iter().enumerate() {
                let mut z = Complex64::new(0.0, 0.0);
                for t in 0..rank {
                    z += frames[next][t][a] * scales[t] * frames[i][t][b].conj();
                }
                x[(row, col)] = z;
            }
        }
    }
    x
}

/// Smallest eigenvalue of a Hermitian matrix that is block diagonal with
/// respect to the given partition of the basis.
fn block_min_eigenvalue(m: &ComplexMatrix, blocks: &[Vec<usize>]) -> f64 {
    blocks
        .iter()
        .filter(|b| !b.is_empty())
        .map(|b| {
            let rows: Vec<Vec<Complex64>> = b.iter().map(|&i| b.iter().map(|&j| m[(i, j)]).collect()).collect();
            min_eigenvalue(&ComplexMatrix::from_rows(&rows))
        })
        .fold(f64::INFINITY, f64::min)
}

/// Checks that `d + 1` random normal spectral-subspace elements never give
/// an invertible `sum x x^*` when `d + 1 < quot`. Trial `t` is seeded with
/// `seed ^ t`, so the outcome does not depend on the execution strategy.
pub fn rank_obstruction_test(u: &GaugeUnitary, d: usize, trials: usize, seed: u64) -> Result<ObstructionReport> {
    rank_obstruction_test_with(u, d, trials, seed, Exec::default())
}

pub fn rank_obstruction_test_with(
    u: &GaugeUnitary,
    d: usize,
    trials: usize,
    seed: u64,
    exec: Exec,
) -> Result<ObstructionReport> {
    let q = u.quot();
    if ExtNat::Finite(d as u64 + 1) >= q {
        return Err(Error::PreconditionViolated(format!(
            "obstruction needs d + 1 < quot, got d + 1 = {} and quot = {q}",
            d + 1
        )));
    }
    let spaces = u.eigenspaces();
    let lambda_min = exec.map_range(trials, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ t as u64);
        let mut sum = ComplexMatrix::zeros(u.dim());
        for _ in 0..=d {
            sum = &sum + &sample_spectral_element(u, &mut rng).gram_outer();
        }
        block_min_eigenvalue(&sum, &spaces)
    });
    let all_singular = lambda_min.iter().all(|&l| l <= INVERTIBILITY_TOL);
    Ok(ObstructionReport {
        d,
        trials,
        seed,
        lambda_min,
        all_singular,
    })
}

/// Witness file: `{"k", "mode", "matrices", "u"}`; complex entries are
/// `[re, im]` pairs, matrices nested as rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub k: usize,
    pub mode: WitnessMode,
    pub matrices: Vec<Vec<Vec<[f64; 2]>>>,
    pub u: Vec<Vec<[f64; 2]>>,
}

fn encode(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    m.rows()
        .into_iter()
        .map(|r| r.into_iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

fn decode(rows: &[Vec<[f64; 2]>]) -> Result<ComplexMatrix> {
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
        return Err(Error::Parse("witness matrices must be square and nonempty".into()));
    }
    let rows: Vec<Vec<Complex64>> = rows
        .iter()
        .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
        .collect();
    Ok(ComplexMatrix::from_rows(&rows))
}

impl WitnessFile {
    pub fn new(w: &WitnessSet, u: &GaugeUnitary) -> Self {
        WitnessFile {
            k: w.k,
            mode: w.mode,
            matrices: w.matrices.iter().map(encode).collect(),
            u: encode(&u.matrix),
        }
    }

    /// The witness (without its window log) and the stored unitary matrix.
    pub fn decode(&self) -> Result<(WitnessSet, ComplexMatrix)> {
        check_modulus(self.k)?;
        let matrices = self
            .matrices
            .iter()
            .map(|m| decode(m))
            .collect::<Result<Vec<_>>>()?;
        Ok((
            WitnessSet {
                k: self.k,
                mode: self.mode,
                matrices,
                windows: Vec::new(),
            },
            decode(&self.u)?,
        ))
    }
}
