//! Principal component analysis of sparse supertag vectors.
//!
//! The covariance is accumulated in two streaming passes: the first finds
//! the per-dimension mean and the set of dimensions that are ever non-zero,
//! the second accumulates the scatter restricted to those dimensions.
//! Dimensions that never occur have zero variance and only contribute zero
//! rows to the components, so the eigenproblem is solved on the compact
//! matrix and embedded back.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::treebank::Sentence;

const FORMAT: &str = "stagparse-pca";
const VERSION: u32 = 1;

/// Orthonormality tolerance for stored components.
const ORTHONORMAL_TOLERANCE: f64 = 1e-8;

/// Eigenvalues below `RANK_TOLERANCE * largest` count as zero.
const RANK_TOLERANCE: f64 = 1e-10;

const POWER_TOLERANCE: f64 = 1e-9;
const POWER_MAX_ITERATIONS: usize = 1000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum EigenSolver {
    /// Householder tridiagonalization with implicit QR.
    #[default]
    Dense,
    /// Deflated power iteration.
    PowerIteration,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PcaOptions {
    pub k: usize,
    pub center: bool,
    pub seed: u64,
    pub solver: EigenSolver,
}

impl PcaOptions {
    pub fn new(k: usize) -> Self {
        PcaOptions {
            k,
            center: true,
            seed: 0,
            solver: EigenSolver::Dense,
        }
    }
}

/// Mean vector and `n x k` projection matrix with orthonormal columns.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PcaFile", into = "PcaFile")]
pub struct PcaModel {
    n: usize,
    k: usize,
    center: bool,
    mean: Vec<f64>,
    /// Row-major: entry `j * k + i` is coordinate `j` of component `i`.
    components: Vec<f64>,
    explained_variance: Vec<f64>,
    total_variance: f64,
    /// `P^T mean`, subtracted from projections when centering.
    projected_mean: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct PcaFile {
    format: String,
    version: u32,
    n: usize,
    k: usize,
    center: bool,
    total_variance: f64,
    explained_variance: Vec<f64>,
    mean: Vec<f64>,
    components: Vec<f64>,
}

impl From<PcaModel> for PcaFile {
    fn from(m: PcaModel) -> Self {
        PcaFile {
            format: FORMAT.into(),
            version: VERSION,
            n: m.n,
            k: m.k,
            center: m.center,
            total_variance: m.total_variance,
            explained_variance: m.explained_variance,
            mean: m.mean,
            components: m.components,
        }
    }
}

impl TryFrom<PcaFile> for PcaModel {
    type Error = Error;

    fn try_from(f: PcaFile) -> Result<Self> {
        if f.format != FORMAT || f.version != VERSION {
            return Err(Error::Model(format!(
                "unsupported PCA model '{}' version {} (expected '{FORMAT}' version {VERSION})",
                f.format, f.version
            )));
        }
        PcaModel::from_parts(
            f.n,
            f.k,
            f.center,
            f.mean,
            f.components,
            f.explained_variance,
            f.total_variance,
        )
    }
}

impl PcaModel {
    /// Assembles a model from raw parts, checking shapes and orthonormality.
    pub fn from_parts(
        n: usize,
        k: usize,
        center: bool,
        mean: Vec<f64>,
        components: Vec<f64>,
        explained_variance: Vec<f64>,
        total_variance: f64,
    ) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::Pca(format!(
                "need 1 <= k <= n, got k = {k}, n = {n}"
            )));
        }
        if mean.len() != n || components.len() != n * k || explained_variance.len() != k {
            return Err(Error::Pca("inconsistent model dimensions".into()));
        }
        if explained_variance.windows(2).any(|w| w[1] > w[0])
            || explained_variance.iter().any(|&v| v < 0.0)
        {
            return Err(Error::Pca(
                "explained variance must be non-negative and non-increasing".into(),
            ));
        }
        let mut model = PcaModel {
            n,
            k,
            center,
            mean,
            components,
            explained_variance,
            total_variance,
            projected_mean: Vec::new(),
        };
        let deviation = model.orthonormality_error();
        if deviation > ORTHONORMAL_TOLERANCE {
            return Err(Error::Pca(format!(
                "components are not orthonormal (deviation {deviation:e})"
            )));
        }
        model.projected_mean = model.project_raw(model.mean.iter().copied().enumerate());
        Ok(model)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn centered(&self) -> bool {
        self.center
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    pub fn explained_variance(&self) -> &[f64] {
        &self.explained_variance
    }

    pub fn total_variance(&self) -> f64 {
        self.total_variance
    }

    /// Coordinate `j` of component `i`.
    pub fn component(&self, i: usize, j: usize) -> f64 {
        self.components[j * self.k + i]
    }

    pub fn component_vector(&self, i: usize) -> Vec<f64> {
        (0..self.n).map(|j| self.component(i, j)).collect()
    }

    /// Largest deviation of `P^T P` from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        let mut gram = vec![0.0; self.k * self.k];
        for row in self.components.chunks_exact(self.k) {
            for a in 0..self.k {
                if row[a] == 0.0 {
                    continue;
                }
                for b in 0..self.k {
                    gram[a * self.k + b] += row[a] * row[b];
                }
            }
        }
        let mut worst: f64 = 0.0;
        for a in 0..self.k {
            for b in 0..self.k {
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((gram[a * self.k + b] - target).abs());
            }
        }
        worst
    }

    fn project_raw(&self, entries: impl Iterator<Item = (usize, f64)>) -> Vec<f64> {
        let mut y = vec![0.0; self.k];
        for (j, x) in entries {
            if x == 0.0 {
                continue;
            }
            let row = &self.components[j * self.k..(j + 1) * self.k];
            for (yi, p) in y.iter_mut().zip(row) {
                *yi += x * p;
            }
        }
        y
    }

    /// Projects a sparse vector of dimension `dim`: `P^T (x - mean)` when
    /// centered, `P^T x` otherwise. Cost is `O(nnz * k)`.
    pub fn project(&self, dim: usize, entries: &[(u32, f64)]) -> Result<Vec<f64>> {
        if dim != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: dim,
            });
        }
        if let Some(&(j, _)) = entries.iter().find(|&&(j, _)| j as usize >= self.n) {
            return Err(Error::Dimension {
                expected: self.n,
                actual: j as usize + 1,
            });
        }
        let mut y = self.project_raw(entries.iter().map(|&(j, x)| (j as usize, x)));
        if self.center {
            for (yi, m) in y.iter_mut().zip(&self.projected_mean) {
                *yi -= m;
            }
        }
        Ok(y)
    }

    pub fn project_dense(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: x.len(),
            });
        }
        let mut y = self.project_raw(x.iter().copied().enumerate());
        if self.center {
            for (yi, m) in y.iter_mut().zip(&self.projected_mean) {
                *yi -= m;
            }
        }
        Ok(y)
    }

    /// Keeps the first `k` components.
    pub fn truncate(&self, k: usize) -> Result<PcaModel> {
        if k == 0 || k > self.k {
            return Err(Error::Pca(format!(
                "cannot truncate {} components to {k}",
                self.k
            )));
        }
        let components = self
            .components
            .chunks_exact(self.k)
            .flat_map(|row| row[..k].iter().copied())
            .collect();
        PcaModel::from_parts(
            self.n,
            k,
            self.center,
            self.mean.clone(),
            components,
            self.explained_variance[..k].to_vec(),
            self.total_variance,
        )
    }

    /// Fraction of the total variance captured by the components.
    pub fn captured_variance(&self) -> f64 {
        if self.total_variance > 0.0 {
            self.explained_variance.iter().sum::<f64>() / self.total_variance
        } else {
            0.0
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// One row of [`explained_variance_report`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VarianceRow {
    /// 1-based component number.
    pub component: usize,
    pub variance: f64,
    pub cumulative_fraction: f64,
}

pub fn explained_variance_report(model: &PcaModel) -> Vec<VarianceRow> {
    let mut cumulative = 0.0;
    model
        .explained_variance
        .iter()
        .enumerate()
        .map(|(i, &variance)| {
            cumulative += variance;
            VarianceRow {
                component: i + 1,
                variance,
                cumulative_fraction: if model.total_variance > 0.0 {
                    cumulative / model.total_variance
                } else {
                    0.0
                },
            }
        })
        .collect()
}

/// Tab-separated rendering of the variance report.
pub fn format_variance_report(model: &PcaModel) -> String {
    let mut out = String::from("component\tvariance\tcumulative_fraction\n");
    for row in explained_variance_report(model) {
        writeln!(
            out,
            "{}\t{:.6e}\t{:.6}",
            row.component, row.variance, row.cumulative_fraction
        )
        .unwrap();
    }
    out
}

/// Fits the top `options.k` principal components of sparse `n`-vectors.
///
/// `vectors` is iterated twice. The covariance is normalized by `m - 1`
/// when centering and by `m` otherwise (second-moment matrix).
pub fn fit<'a, I>(vectors: I, n: usize, options: &PcaOptions) -> Result<PcaModel>
where
    I: IntoIterator<Item = &'a [(u32, f64)]> + Clone,
{
    let k = options.k;
    if k == 0 {
        return Err(Error::Pca("k must be at least 1".into()));
    }
    if k > n {
        return Err(Error::Pca(format!(
            "k = {k} exceeds the input dimension n = {n}"
        )));
    }

    // Pass 1: mean and active dimensions.
    let mut sum = vec![0.0; n];
    let mut count = 0usize;
    for v in vectors.clone() {
        for &(j, x) in v {
            let j = j as usize;
            if j >= n {
                return Err(Error::Dimension {
                    expected: n,
                    actual: j + 1,
                });
            }
            sum[j] += x;
        }
        count += 1;
    }
    if count < 2 && options.center {
        return Err(Error::Pca(format!("need at least 2 vectors, got {count}")));
    }
    if count == 0 {
        return Err(Error::Pca("no input vectors".into()));
    }
    let mean: Vec<f64> = sum.iter().map(|s| s / count as f64).collect();

    let mut active = vec![false; n];
    for v in vectors.clone() {
        for &(j, x) in v {
            if x != 0.0 {
                active[j as usize] = true;
            }
        }
    }
    let active_dims: Vec<usize> = (0..n).filter(|&j| active[j]).collect();
    let mut compact = vec![usize::MAX; n];
    for (c, &j) in active_dims.iter().enumerate() {
        compact[j] = c;
    }
    let m = active_dims.len();
    if m < k {
        return Err(Error::Rank {
            requested: k,
            rank: m,
        });
    }

    // Pass 2: scatter of raw vectors over active dimensions.
    let mut scatter = DMatrix::<f64>::zeros(m, m);
    let mut idx: Vec<(usize, f64)> = Vec::new();
    for v in vectors {
        idx.clear();
        idx.extend(
            v.iter()
                .filter(|e| e.1 != 0.0)
                .map(|&(j, x)| (compact[j as usize], x)),
        );
        for &(a, xa) in &idx {
            for &(b, xb) in &idx {
                if b >= a {
                    scatter[(a, b)] += xa * xb;
                }
            }
        }
    }
    let denom = if options.center {
        (count - 1) as f64
    } else {
        count as f64
    };
    for a in 0..m {
        for b in a..m {
            let mut value = scatter[(a, b)];
            if options.center {
                value -= count as f64 * mean[active_dims[a]] * mean[active_dims[b]];
            }
            value /= denom;
            scatter[(a, b)] = value;
            scatter[(b, a)] = value;
        }
    }
    let total_variance: f64 = (0..m).map(|a| scatter[(a, a)]).sum();

    let (values, vectors) = match options.solver {
        EigenSolver::Dense => dense_eigen(scatter, k),
        EigenSolver::PowerIteration => power_iteration(&scatter, k, options.seed),
    };

    let largest = values.first().copied().unwrap_or(0.0).max(0.0);
    let rank = values
        .iter()
        .filter(|&&v| largest > 0.0 && v > RANK_TOLERANCE * largest)
        .count();
    if rank < k {
        return Err(Error::Rank { requested: k, rank });
    }

    let mut components = vec![0.0; n * k];
    for (i, v) in vectors.iter().enumerate() {
        for (c, &j) in active_dims.iter().enumerate() {
            components[j * k + i] = v[c];
        }
    }
    let explained: Vec<f64> = values.iter().take(k).map(|&v| v.max(0.0)).collect();

    PcaModel::from_parts(
        n,
        k,
        options.center,
        if options.center { mean } else { vec![0.0; n] },
        components,
        explained,
        total_variance,
    )
}

/// Flips `v` so that its largest-magnitude entry (first on ties) is positive.
fn normalize_sign(v: &mut [f64]) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v[best] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// Eigenpairs of a symmetric matrix; all eigenvalues are returned (for the
/// rank check), eigenvectors only for the top `k`.
fn dense_eigen(matrix: DMatrix<f64>, k: usize) -> (Vec<f64>, Vec<Vec<f64>>) {
    let eigen = SymmetricEigen::new(matrix);
    let mut order: Vec<usize> = (0..eigen.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| {
        eigen.eigenvalues[b]
            .partial_cmp(&eigen.eigenvalues[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let values = order.iter().map(|&i| eigen.eigenvalues[i]).collect();
    let vectors = order
        .iter()
        .take(k)
        .map(|&i| {
            let mut v: Vec<f64> = eigen.eigenvectors.column(i).iter().copied().collect();
            normalize_sign(&mut v);
            v
        })
        .collect();
    (values, vectors)
}

/// Top-`k` eigenpairs by power iteration, deflating by orthogonalizing
/// against the components already found.
fn power_iteration(matrix: &DMatrix<f64>, k: usize, seed: u64) -> (Vec<f64>, Vec<Vec<f64>>) {
    let m = matrix.nrows();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::with_capacity(k);
    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(k);

    let orthogonalize = |v: &mut Vec<f64>, basis: &[Vec<f64>]| {
        for b in basis {
            let dot: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            for (x, y) in v.iter_mut().zip(b) {
                *x -= dot * y;
            }
        }
    };
    let normalize = |v: &mut Vec<f64>| -> f64 {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            for x in v.iter_mut() {
                *x /= norm;
            }
        }
        norm
    };

    for _ in 0..k {
        let mut v: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        orthogonalize(&mut v, &vectors);
        normalize(&mut v);
        let mut lambda = 0.0;
        for iteration in 0..POWER_MAX_ITERATIONS {
            let mut w: Vec<f64> = (0..m)
                .map(|r| (0..m).map(|c| matrix[(r, c)] * v[c]).sum())
                .collect();
            // Deflation: project out converged directions twice for stability.
            orthogonalize(&mut w, &vectors);
            orthogonalize(&mut w, &vectors);
            let next_lambda: f64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
            if normalize(&mut w) == 0.0 {
                lambda = 0.0;
                break;
            }
            let converged = iteration > 0
                && (next_lambda - lambda).abs()
                    <= POWER_TOLERANCE * next_lambda.abs().max(f64::MIN_POSITIVE)
                && w.iter()
                    .zip(&v)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
                    < 1e-7;
            lambda = next_lambda;
            v = w;
            if converged {
                break;
            }
            if iteration + 1 == POWER_MAX_ITERATIONS {
                log::warn!(
                    "power iteration did not converge for component {}",
                    vectors.len() + 1
                );
            }
        }
        normalize_sign(&mut v);
        values.push(lambda);
        vectors.push(v);
    }

    // Keep the non-increasing order even when near-degenerate pairs swap.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| {
        values[b]
            .partial_cmp(&values[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    (
        order.iter().map(|&i| values[i]).collect(),
        order.iter().map(|&i| vectors[i].clone()).collect(),
    )
}

/// What each PCA training vector stands for.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum PcaSampling {
    /// One vector per training token.
    #[default]
    Tokens,
    /// One vector per word form: the mean distribution over its tokens.
    Types,
}

/// Collects the sparse supertag vectors used to fit PCA. `fraction < 1`
/// keeps a uniform random subset (seeded).
pub fn training_vectors(
    sentences: &[Sentence],
    sampling: PcaSampling,
    fraction: f64,
    seed: u64,
) -> Vec<Vec<(u32, f64)>> {
    let mut vectors: Vec<Vec<(u32, f64)>> = match sampling {
        PcaSampling::Tokens => sentences
            .iter()
            .flat_map(|s| s.tokens())
            .filter_map(|t| t.supertag_dist.as_ref())
            .map(|d| d.entries().to_vec())
            .collect(),
        PcaSampling::Types => {
            let mut by_form: BTreeMap<&str, (HashMap<u32, f64>, usize)> = BTreeMap::new();
            for token in sentences.iter().flat_map(|s| s.tokens()) {
                if let Some(dist) = &token.supertag_dist {
                    let entry = by_form.entry(token.form.as_str()).or_default();
                    for &(tag, p) in dist.entries() {
                        *entry.0.entry(tag).or_default() += p;
                    }
                    entry.1 += 1;
                }
            }
            by_form
                .into_values()
                .map(|(sums, count)| {
                    let mut v: Vec<(u32, f64)> = sums
                        .into_iter()
                        .map(|(t, s)| (t, s / count as f64))
                        .collect();
                    v.sort_by_key(|e| e.0);
                    v
                })
                .collect()
        }
    };
    if fraction < 1.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        vectors.retain(|_| rng.gen_bool(fraction.max(0.0)));
    }
    vectors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fit_dense(rows: &[Vec<f64>], options: &PcaOptions) -> Result<PcaModel> {
        let sparse: Vec<Vec<(u32, f64)>> = rows
            .iter()
            .map(|r| r.iter().enumerate().map(|(j, &x)| (j as u32, x)).collect())
            .collect();
        fit(sparse.iter().map(Vec::as_slice), rows[0].len(), options)
    }

    #[test]
    fn rank_one_data() {
        let rows: Vec<Vec<f64>> = [-2.0, -1.0, 1.0, 2.0]
            .iter()
            .map(|&a| vec![a, 0.0, 0.0])
            .collect();
        let model = fit_dense(&rows, &PcaOptions::new(1)).unwrap();
        assert!((model.component(0, 0) - 1.0).abs() < 1e-12);
        assert!(model.component(0, 1).abs() < 1e-12);
        // sample variance of {-2,-1,1,2}: 10/3
        assert!((model.explained_variance()[0] - 10.0 / 3.0).abs() < 1e-12);
        let report = explained_variance_report(&model);
        assert!((report[0].cumulative_fraction - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rank_deficiency_is_reported() {
        let rows: Vec<Vec<f64>> = [-2.0, -1.0, 1.0, 2.0]
            .iter()
            .map(|&a| vec![a, 0.5 * a, 0.0])
            .collect();
        match fit_dense(&rows, &PcaOptions::new(2)).unwrap_err() {
            Error::Rank { requested, rank } => assert_eq!((requested, rank), (2, 1)),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn k_bounds() {
        let rows = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]];
        assert!(fit_dense(&rows, &PcaOptions::new(0)).is_err());
        assert!(fit_dense(&rows, &PcaOptions::new(3)).is_err());
    }

    #[test]
    fn projecting_the_mean_gives_zero() {
        let rows = vec![
            vec![1.0, 0.0, 2.0],
            vec![0.0, 1.0, 1.0],
            vec![3.0, 1.0, 0.0],
            vec![1.0, 2.0, 2.0],
        ];
        let model = fit_dense(&rows, &PcaOptions::new(2)).unwrap();
        let y = model.project_dense(model.mean()).unwrap();
        assert!(y.iter().all(|v| v.abs() < 1e-12), "{y:?}");
    }

    #[test]
    fn selector_projection() {
        let n = 5;
        let k = 3;
        let mut components = vec![0.0; n * k];
        for i in 0..k {
            components[i * k + i] = 1.0;
        }
        let model = PcaModel::from_parts(
            n,
            k,
            false,
            vec![0.0; n],
            components,
            vec![3.0, 2.0, 1.0],
            6.0,
        )
        .unwrap();
        assert_eq!(model.project(n, &[(1, 1.0)]).unwrap(), vec![0.0, 1.0, 0.0]);
        assert!(model.project(4, &[(1, 1.0)]).is_err());
    }

    #[test]
    fn non_orthonormal_parts_rejected() {
        assert!(
            PcaModel::from_parts(2, 1, false, vec![0.0; 2], vec![1.0, 1.0], vec![1.0], 1.0)
                .is_err()
        );
    }

    #[test]
    fn isotropic_two_d_splits_variance() {
        let rows = vec![
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, -1.0],
        ];
        let model = fit_dense(&rows, &PcaOptions::new(2)).unwrap();
        let report = explained_variance_report(&model);
        assert!((report[0].cumulative_fraction - 0.5).abs() < 1e-9);
        assert!((report[1].cumulative_fraction - 1.0).abs() < 1e-9);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let rows = vec![
            vec![0.1, 0.7, 0.2],
            vec![0.3, 0.3, 0.4],
            vec![0.9, 0.05, 0.05],
            vec![0.25, 0.25, 0.5],
        ];
        let model = fit_dense(&rows, &PcaOptions::new(2)).unwrap();
        let loaded = PcaModel::from_json(&model.to_json().unwrap()).unwrap();
        assert_eq!(loaded, model);
        let x = [(0, 0.3), (2, 0.7)];
        let a = model.project(3, &x).unwrap();
        let b = loaded.project(3, &x).unwrap();
        assert_eq!(
            a.iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
            b.iter().map(|v| v.to_bits()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn version_mismatch_is_rejected() {
        let rows = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![2.0, 1.0]];
        let json = fit_dense(&rows, &PcaOptions::new(1))
            .unwrap()
            .to_json()
            .unwrap();
        let bumped = json.replace("\"version\":1", "\"version\":99");
        assert!(PcaModel::from_json(&bumped).is_err());
    }

    #[test]
    fn power_iteration_matches_dense() {
        let rows: Vec<Vec<f64>> = (0..30)
            .map(|i| {
                let t = i as f64;
                vec![
                    (t * 0.37).sin() * 3.0,
                    (t * 1.3).cos(),
                    (t * 0.11).sin() + 0.2 * (t * 2.1).cos(),
                    (t * 0.7).cos() * 0.5,
                ]
            })
            .collect();
        let dense = fit_dense(&rows, &PcaOptions::new(4)).unwrap();
        let power = fit_dense(
            &rows,
            &PcaOptions {
                solver: EigenSolver::PowerIteration,
                ..PcaOptions::new(4)
            },
        )
        .unwrap();
        for i in 0..4 {
            let (a, b) = (dense.explained_variance()[i], power.explained_variance()[i]);
            assert!((a - b).abs() <= 1e-8 * a.abs().max(1.0), "{a} vs {b}");
            for j in 0..4 {
                assert!((dense.component(i, j) - power.component(i, j)).abs() < 1e-5);
            }
        }
    }

    #[test]
    fn unused_dimensions_get_zero_loadings() {
        let vectors: Vec<Vec<(u32, f64)>> = vec![
            vec![(1, 0.5), (3, 0.5)],
            vec![(1, 1.0)],
            vec![(3, 1.0)],
            vec![(1, 0.2), (3, 0.8)],
        ];
        let model = fit(vectors.iter().map(Vec::as_slice), 6, &PcaOptions::new(1)).unwrap();
        for j in [0, 2, 4, 5] {
            assert_eq!(model.component(0, j), 0.0);
        }
        assert!(model.orthonormality_error() < 1e-12);
    }

    #[test]
    fn truncation_keeps_leading_components() {
        let rows = vec![
            vec![1.0, 0.0, 2.0],
            vec![0.0, 1.0, 1.0],
            vec![3.0, 1.0, 0.0],
            vec![1.0, 2.0, 2.0],
        ];
        let full = fit_dense(&rows, &PcaOptions::new(3)).unwrap();
        let two = full.truncate(2).unwrap();
        assert_eq!(two.k(), 2);
        assert_eq!(two.component(1, 2), full.component(1, 2));
        assert!(two.captured_variance() <= full.captured_variance() + 1e-12);
    }
}
