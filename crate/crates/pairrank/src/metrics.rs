//! Ranking quality measures: threshold error indicator, Kendall tau
//! distance, and shift-aligned mean square error.

use crate::error::{Error, Result};

/// True iff some pair whose true quality gap exceeds `eps` appears
/// swapped in `order` (best first).
///
/// Gaps within one part in 1e9 of `eps` count as equal, so thresholds
/// like `2/N` stay exempt under the rounding of externally supplied
/// qualities.
pub fn epsilon_error(q_true: &[f64], order: &[usize], eps: f64) -> Result<bool> {
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(Error::Config(format!(
            "threshold must be a non-negative real, got {eps}"
        )));
    }
    check_permutation(q_true.len(), order)?;
    let thresh = eps * (1.0 + 1e-9);
    // A swap of a wide pair exists iff some later object beats the
    // running minimum quality by more than the threshold.
    let mut min_so_far = f64::INFINITY;
    for &obj in order {
        if q_true[obj] > min_so_far + thresh {
            return Ok(true);
        }
        min_so_far = min_so_far.min(q_true[obj]);
    }
    Ok(false)
}

fn check_permutation(n: usize, order: &[usize]) -> Result<()> {
    if order.len() != n {
        return Err(Error::Data(format!(
            "order has {} entries for {n} objects",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || seen[v] {
            return Err(Error::Data("order is not a permutation".into()));
        }
        seen[v] = true;
    }
    Ok(())
}

/// Kendall tau distance: the number of object pairs ranked in opposite
/// relative order by the two permutations. Counted in O(N log N) by
/// merge-sorting one ranking expressed in the other's positions.
pub fn kendall_tau(order_a: &[usize], order_b: &[usize]) -> Result<u64> {
    let n = order_a.len();
    if order_b.len() != n {
        return Err(Error::Data(format!(
            "rankings have different lengths: {} vs {}",
            n,
            order_b.len()
        )));
    }
    check_permutation(n, order_a)?;
    check_permutation(n, order_b)?;
    let mut pos_b = vec![0usize; n];
    for (rank, &obj) in order_b.iter().enumerate() {
        pos_b[obj] = rank;
    }
    let mut seq: Vec<usize> = order_a.iter().map(|&obj| pos_b[obj]).collect();
    let mut buf = vec![0usize; n];
    Ok(count_inversions(&mut seq, &mut buf))
}

fn count_inversions(seq: &mut [usize], buf: &mut [usize]) -> u64 {
    let n = seq.len();
    if n <= 1 {
        return 0;
    }
    let mid = n / 2;
    let (left, right) = seq.split_at_mut(mid);
    let mut inv = count_inversions(left, buf) + count_inversions(right, buf);
    let (mut i, mut j, mut k) = (0, 0, 0);
    while i < left.len() && j < right.len() {
        if left[i] <= right[j] {
            buf[k] = left[i];
            i += 1;
        } else {
            buf[k] = right[j];
            j += 1;
            inv += (left.len() - i) as u64;
        }
        k += 1;
    }
    while i < left.len() {
        buf[k] = left[i];
        i += 1;
        k += 1;
    }
    while j < right.len() {
        buf[k] = right[j];
        j += 1;
        k += 1;
    }
    seq.copy_from_slice(&buf[..n]);
    inv
}

/// Squared error minimized over a common additive shift:
/// `min_c || q_hat + c 1 - q_true ||^2`, attained at `c = mean(q_true - q_hat)`.
pub fn aligned_mse(q_hat: &[f64], q_true: &[f64]) -> Result<f64> {
    if q_hat.len() != q_true.len() {
        return Err(Error::Data(format!(
            "length mismatch: {} vs {}",
            q_hat.len(),
            q_true.len()
        )));
    }
    let n = q_hat.len() as f64;
    let shift: f64 = q_true.iter().zip(q_hat).map(|(t, h)| t - h).sum::<f64>() / n;
    Ok(q_hat
        .iter()
        .zip(q_true)
        .map(|(h, t)| {
            let e = h + shift - t;
            e * e
        })
        .sum())
}

/// Squared error in the reference gauge: compares `q_hat` (which pins the
/// reference to zero) against `q_true - q_true[reference]`.
pub fn raw_mse(q_hat: &[f64], q_true: &[f64], reference: usize) -> Result<f64> {
    if q_hat.len() != q_true.len() {
        return Err(Error::Data(format!(
            "length mismatch: {} vs {}",
            q_hat.len(),
            q_true.len()
        )));
    }
    if reference >= q_true.len() {
        return Err(Error::Config(format!(
            "reference object {} out of range",
            reference + 1
        )));
    }
    let base = q_true[reference];
    Ok(q_hat
        .iter()
        .zip(q_true)
        .map(|(h, t)| {
            let e = h - (t - base);
            e * e
        })
        .sum())
}
