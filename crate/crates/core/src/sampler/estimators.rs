//! Rank-based dependence estimators and the uniform KS statistic.

use std::cmp::Ordering;

use crate::error::{Error, Result};

fn check_pair(xs: &[f64], ys: &[f64]) -> Result<usize> {
    assert_eq!(xs.len(), ys.len(), "coordinate slices differ in length");
    if xs.len() < 2 {
        return Err(Error::TooFewSamples(xs.len()));
    }
    Ok(xs.len())
}

/// 1-based ranks, ties share the average rank.
fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1..=end
        let avg = (start + end + 1) as f64 / 2.0;
        for &k in &order[start..end] {
            ranks[k] = avg;
        }
        start = end;
    }
    ranks
}

/// Spearman's rho: Pearson correlation of the average ranks.
pub fn spearman_rho(xs: &[f64], ys: &[f64]) -> Result<f64> {
    let n = check_pair(xs, ys)?;
    let rx = average_ranks(xs);
    let ry = average_ranks(ys);
    let mean = (n as f64 + 1.0) / 2.0;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in rx.iter().zip(&ry) {
        let (dx, dy) = (x - mean, y - mean);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ConstantSample);
    }
    Ok(sxy / (sxx * syy).sqrt())
}

/// `tau_b = S / sqrt((n0 - n1)(n0 - n2))` from integer pair counts, where `S` is
/// concordant minus discordant pairs, `n0` all pairs, `n1`/`n2` pairs tied in x/y.
pub(crate) fn tau_b_from_counts(score: i64, total: i64, ties_x: i64, ties_y: i64) -> Result<f64> {
    let dx = total - ties_x;
    let dy = total - ties_y;
    if dx == 0 || dy == 0 {
        return Err(Error::ConstantSample);
    }
    Ok(score as f64 / ((dx as f64) * (dy as f64)).sqrt())
}

/// `Σ t(t-1)/2` over runs of equal keys in an already sorted sequence.
fn tied_pairs<T, F: Fn(&T, &T) -> bool>(sorted: &[T], eq: F) -> i64 {
    let mut total = 0i64;
    let mut run = 1i64;
    for w in sorted.windows(2) {
        if eq(&w[0], &w[1]) {
            run += 1;
        } else {
            total += run * (run - 1) / 2;
            run = 1;
        }
    }
    total + run * (run - 1) / 2
}

/// Kendall's tau-b in `O(n log n)`: sort by `(x, y)`, then count the inversions
/// of `y` with a merge sort.
pub fn kendall_tau(xs: &[f64], ys: &[f64]) -> Result<f64> {
    let n = check_pair(xs, ys)?;
    let mut pairs: Vec<(f64, f64)> = xs.iter().copied().zip(ys.iter().copied()).collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));

    let ties_x = tied_pairs(&pairs, |p, q| p.0.total_cmp(&q.0) == Ordering::Equal);
    let ties_xy = tied_pairs(&pairs, |p, q| {
        p.0.total_cmp(&q.0) == Ordering::Equal && p.1.total_cmp(&q.1) == Ordering::Equal
    });

    let mut y: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let mut scratch = vec![0.0; n];
    let swaps = merge_count(&mut y, &mut scratch);
    let ties_y = tied_pairs(&y, |a, b| a.total_cmp(b) == Ordering::Equal);

    let total = (n as i64) * (n as i64 - 1) / 2;
    // P + Q = n0 - n1 - n2 + n3 and Q = swaps
    let score = total - ties_x - ties_y + ties_xy - 2 * swaps;
    tau_b_from_counts(score, total, ties_x, ties_y)
}

/// Stable merge sort of `v`, returning the number of strict inversions.
fn merge_count(v: &mut [f64], scratch: &mut [f64]) -> i64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut swaps = {
        let (left, right) = v.split_at_mut(mid);
        let (sl, sr) = scratch.split_at_mut(mid);
        merge_count(left, sl) + merge_count(right, sr)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if v[j].total_cmp(&v[i]) == Ordering::Less {
            scratch[k] = v[j];
            swaps += (mid - i) as i64;
            j += 1;
        } else {
            scratch[k] = v[i];
            i += 1;
        }
        k += 1;
    }
    scratch[k..k + (mid - i)].copy_from_slice(&v[i..mid]);
    k += mid - i;
    scratch[k..k + (n - j)].copy_from_slice(&v[j..n]);
    v.copy_from_slice(&scratch[..n]);
    swaps
}

/// One-sample Kolmogorov–Smirnov distance to the uniform distribution on `[0, 1]`.
pub fn ks_uniform_statistic(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let x = x.clamp(0.0, 1.0);
            ((i as f64 + 1.0) / n - x).max(x - i as f64 / n)
        })
        .fold(0.0, f64::max)
}
