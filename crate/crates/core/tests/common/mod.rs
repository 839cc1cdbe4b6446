//! Helpers shared by the integration tests: random projective trees and a
//! Jacobi eigensolver used as an independent PCA reference.

#![allow(dead_code)]

use rand::Rng;
use stagparse::treebank::{Sentence, Token};

pub const LABELS: &[&str] = &["nsubj", "dobj", "det", "amod", "prep", "pobj", "punct"];
pub const TAGS: &[&str] = &["NN", "VB", "DT", "JJ", "IN", "."];

fn attach_span<R: Rng>(rng: &mut R, lo: usize, hi: usize, parent: usize, heads: &mut [usize]) {
    if lo > hi {
        return;
    }
    let h = rng.gen_range(lo..=hi);
    heads[h] = parent;
    split_span(rng, lo, h.wrapping_sub(1), h, heads, h == lo);
    split_span(rng, h + 1, hi, h, heads, h == hi);
}

// Cuts [lo, hi] into consecutive pieces, each a subtree under `head`.
fn split_span<R: Rng>(
    rng: &mut R,
    lo: usize,
    hi: usize,
    head: usize,
    heads: &mut [usize],
    empty: bool,
) {
    if empty || lo > hi {
        return;
    }
    let mut start = lo;
    while start <= hi {
        let end = rng.gen_range(start..=hi);
        attach_span(rng, start, end, head, heads);
        start = end + 1;
    }
}

/// Random projective tree over `n` tokens with a single root dependent.
pub fn random_projective_heads<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut heads = vec![0; n + 1];
    attach_span(rng, 1, n, 0, &mut heads);
    heads[1..].to_vec()
}

/// Random labelled sentence built on `heads` (1-based head indices).
pub fn sentence_from_heads<R: Rng>(rng: &mut R, heads: &[usize]) -> Sentence {
    let tokens = heads
        .iter()
        .enumerate()
        .map(|(i, &h)| {
            let label = if h == 0 {
                "root"
            } else {
                LABELS[rng.gen_range(0..LABELS.len())]
            };
            Token::new(format!("w{}", i + 1), TAGS[rng.gen_range(0..TAGS.len())])
                .with_head(h, label)
        })
        .collect();
    Sentence::new(tokens).expect("valid tree")
}

pub fn random_projective_sentence<R: Rng>(rng: &mut R, n: usize) -> Sentence {
    let heads = random_projective_heads(rng, n);
    sentence_from_heads(rng, &heads)
}

/// Arc crossing test by pairwise comparison, including arcs from the root.
pub fn crosses(heads: &[usize]) -> bool {
    let arcs: Vec<(usize, usize)> = heads
        .iter()
        .enumerate()
        .map(|(i, &h)| (h.min(i + 1), h.max(i + 1)))
        .collect();
    arcs.iter()
        .any(|&(a, b)| arcs.iter().any(|&(c, d)| a < c && c < b && b < d))
}

/// Sample covariance of dense rows: divides by m - 1 when centered, by m
/// otherwise (second moment about the origin).
pub fn covariance(rows: &[Vec<f64>], center: bool) -> Vec<Vec<f64>> {
    let m = rows.len();
    let n = rows[0].len();
    let mut mean = vec![0.0; n];
    if center {
        for r in rows {
            for j in 0..n {
                mean[j] += r[j] / m as f64;
            }
        }
    }
    let denom = if center { (m - 1) as f64 } else { m as f64 };
    let mut c = vec![vec![0.0; n]; n];
    for r in rows {
        for a in 0..n {
            for b in 0..n {
                c[a][b] += (r[a] - mean[a]) * (r[b] - mean[b]) / denom;
            }
        }
    }
    c
}

/// Cyclic Jacobi rotations. Returns eigenvalues in decreasing order and the
/// matching unit eigenvectors.
pub fn jacobi_eigen(matrix: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = matrix.len();
    let mut a = matrix.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as u8 as f64).collect())
        .collect();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].partial_cmp(&a[i][i]).unwrap());
    let values = order.iter().map(|&i| a[i][i]).collect();
    let vectors = order
        .iter()
        .map(|&i| {
            let col: Vec<f64> = (0..n).map(|r| v[r][i]).collect();
            normalize_sign(col)
        })
        .collect();
    (values, vectors)
}

/// Flips `v` so its largest-magnitude entry is positive.
pub fn normalize_sign(mut v: Vec<f64>) -> Vec<f64> {
    let pivot = v.iter().copied().fold(
        0.0f64,
        |best, x| if x.abs() > best.abs() { x } else { best },
    );
    if pivot < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}

/// Dense rows to the sparse (index, value) form taken by `pca::fit`.
pub fn to_sparse(rows: &[Vec<f64>]) -> Vec<Vec<(u32, f64)>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, &x)| x != 0.0)
                .map(|(j, &x)| (j as u32, x))
                .collect()
        })
        .collect()
}
