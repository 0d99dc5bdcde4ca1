use crate::error::{NtmError, Result};

use super::matrix::Matrix;
use super::TensorSet;

/// Probabilities are clamped to this floor before any logarithm.
pub const PROB_FLOOR: f64 = 1e-12;

/// Numerically safe softmax with max-subtraction.
///
/// Errors on non-finite input; output sums to 1 within 1e-12.
pub fn softmax(logits: &[f64]) -> Result<Vec<f64>> {
    if logits.iter().any(|x| !x.is_finite()) {
        return Err(NtmError::Numeric("softmax input is not finite".into()));
    }
    let mut out = logits.to_vec();
    softmax_in_place(&mut out);
    Ok(out)
}

/// In-place softmax over a slice of finite logits (hot path, unvalidated).
pub(crate) fn softmax_in_place(v: &mut [f64]) {
    let max = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut sum = 0.0;
    for x in v.iter_mut() {
        *x = (*x - max).exp();
        sum += *x;
    }
    let inv = 1.0 / sum;
    for x in v.iter_mut() {
        *x *= inv;
    }
}

/// Softmax applied independently to every row.
pub(crate) fn softmax_rows(m: &mut Matrix) {
    for r in 0..m.rows() {
        softmax_in_place(m.row_mut(r));
    }
}

/// -sum_n target_n * ln(predicted_n), iterating target's nonzeros only.
/// `predicted` entries are clamped to [`PROB_FLOOR`] before the log.
pub fn cross_entropy(target: &[(u32, f64)], predicted: &[f64]) -> f64 {
    let mut acc = 0.0;
    for &(n, t) in target {
        let p = predicted[n as usize].max(PROB_FLOOR);
        acc -= t * p.ln();
    }
    acc
}

/// Elementwise max(0, x).
pub fn relu(x: &[f64]) -> Vec<f64> {
    x.iter().map(|&v| v.max(0.0)).collect()
}

pub(crate) fn relu_in_place(x: &mut [f64]) {
    for v in x.iter_mut() {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
}

/// Central-difference gradient oracle: (L(p + h e_j) - L(p - h e_j)) / 2h
/// per coordinate, one Vec per tensor. The loss closure must be
/// deterministic. Parameters are restored exactly after probing.
pub fn finite_diff_grad<P: TensorSet>(
    mut loss: impl FnMut(&P) -> f64,
    params: &mut P,
    h: f64,
) -> Vec<Vec<f64>> {
    assert!(h > 0.0, "finite difference step must be positive");
    let mut grads = Vec::with_capacity(params.num_tensors());
    for t in 0..params.num_tensors() {
        let len = params.tensor(t).len();
        let mut g = vec![0.0; len];
        for j in 0..len {
            let orig = params.tensor(t)[j];
            params.tensor_mut(t)[j] = orig + h;
            let up = loss(params);
            params.tensor_mut(t)[j] = orig - h;
            let down = loss(params);
            params.tensor_mut(t)[j] = orig;
            g[j] = (up - down) / (2.0 * h);
        }
        grads.push(g);
    }
    grads
}

/// Max over coordinates of |a - b| / max(floor, |b|).
pub fn max_rel_err(analytic: &[Vec<f64>], reference: &[Vec<f64>], floor: f64) -> f64 {
    let mut worst = 0.0f64;
    for (ga, gr) in analytic.iter().zip(reference) {
        for (&a, &r) in ga.iter().zip(gr) {
            let rel = (a - r).abs() / r.abs().max(floor);
            worst = worst.max(rel);
        }
    }
    worst
}
